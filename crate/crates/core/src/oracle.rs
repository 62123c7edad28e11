//! Slow, independent reference implementations used to cross-check the fast
//! paths in tests.

use std::collections::BTreeSet;

use crate::linalg::kernel_vectors;
use crate::matrix::{dot, Matrix};
use crate::scalar::{Scalar, Sign};
use crate::signcells::SignPattern;
use crate::subspace::Subspace;

/// Decides whether `{c : sign(a_i · c) = s_i for all i}` is nonempty.
///
/// The cone is homogeneous, so strict inequalities can be replaced by
/// `a_i · c ≥ 1`. Equalities are solved first; the remaining inequalities go
/// through Fourier–Motzkin elimination.
pub fn sign_system_feasible<S: Scalar>(rows: &[(Vec<S>, Sign)], vars: usize) -> bool {
    let eqs: Vec<Vec<S>> = rows
        .iter()
        .filter(|(_, s)| *s == Sign::Zero)
        .map(|(a, _)| a.clone())
        .collect();
    // Parametrize the solution space of the equalities: c = K t.
    let k: Vec<Vec<S>> = if eqs.is_empty() {
        Matrix::<S>::identity(vars).row_vecs()
    } else {
        kernel_vectors(&Matrix::from_rows(vars, eqs))
    };
    let mut ineqs: Vec<(Vec<S>, S)> = rows
        .iter()
        .filter(|(_, s)| *s != Sign::Zero)
        .map(|(a, s)| {
            let g: Vec<S> = k.iter().map(|kv| dot(a, kv)).collect();
            let g = if *s == Sign::Negative {
                g.into_iter().map(|x| -x).collect()
            } else {
                g
            };
            (g, S::one())
        })
        .collect();
    for var in 0..k.len() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (g, h) in ineqs {
            match g[var].sign() {
                Sign::Positive => pos.push((g, h)),
                Sign::Negative => neg.push((g, h)),
                Sign::Zero => rest.push((g, h)),
            }
        }
        for (gp, hp) in &pos {
            for (gn, hn) in &neg {
                let a = gp[var].clone();
                let b = -gn[var].clone();
                let g: Vec<S> = gp
                    .iter()
                    .zip(gn)
                    .map(|(x, y)| x.clone() * b.clone() + y.clone() * a.clone())
                    .collect();
                let h = hp.clone() * b.clone() + hn.clone() * a.clone();
                rest.push((g, h));
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|(_, h)| h.sign() != Sign::Positive)
}

/// Every realizable sign pattern of `L`, by depth-first search over patterns
/// with feasibility pruning on prefixes.
pub fn cells_brute_force<S: Scalar>(l: &Subspace<S>) -> BTreeSet<SignPattern> {
    let n = l.ambient_dim();
    let d = l.dim();
    // Coordinate i of the vector with coefficients c is column_i(B) · c.
    let cols: Vec<Vec<S>> = (0..n)
        .map(|i| l.basis().iter().map(|b| b[i].clone()).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut rows: Vec<(Vec<S>, Sign)> = Vec::new();
    search(&cols, d, &mut rows, &mut out);
    out
}

fn search<S: Scalar>(cols: &[Vec<S>], d: usize, rows: &mut Vec<(Vec<S>, Sign)>, out: &mut BTreeSet<SignPattern>) {
    if rows.len() == cols.len() {
        let signs: Vec<Sign> = rows.iter().map(|(_, s)| *s).collect();
        out.insert(SignPattern::from_signs(&signs));
        return;
    }
    let col = cols[rows.len()].clone();
    for s in [Sign::Negative, Sign::Zero, Sign::Positive] {
        rows.push((col.clone(), s));
        if sign_system_feasible(rows, d) {
            search(cols, d, rows, out);
        }
        rows.pop();
    }
}

/// Rank by plain Gaussian elimination with division, independent of the
/// fraction-free routine.
pub fn naive_rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut a = m.row_vecs();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone() / piv.clone();
                let pivot_row = a[r].clone();
                for (x, t) in a[i].iter_mut().zip(pivot_row).skip(c) {
                    *x = x.clone() - f.clone() * t;
                }
            }
        }
        r += 1;
    }
    r
}
