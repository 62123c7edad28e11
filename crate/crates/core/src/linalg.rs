//! Exact elimination: rank, reduced echelon forms, kernels and inertia.

use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::{Scalar, Sign};
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NonSymmetric,
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination. Every update divides by the previous pivot, which
/// keeps integral inputs integral.
pub fn echelon<S: Scalar>(m: &Matrix<S>) -> Echelon<S> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = S::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let piv = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = piv.clone() * a[(i, j)].clone() - lead.clone() * a[(r, j)].clone();
                a[(i, j)] = v / prev.clone();
            }
            a[(i, c)] = S::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    echelon(m).rank()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> (Vec<Vec<S>>, Vec<usize>) {
    let ech = echelon(m);
    let mut rows: Vec<Vec<S>> = (0..ech.rank()).map(|i| ech.matrix.row(i).to_vec()).collect();
    let pivots = ech.pivots;
    for (r, &c) in pivots.iter().enumerate() {
        let inv = S::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
    }
    for r in (0..pivots.len()).rev() {
        let c = pivots[r];
        let (above, rest) = rows.split_at_mut(r);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
    }
    (rows, pivots)
}

/// Basis of `{x : Mx = 0}` with one vector per free column.
pub fn kernel_vectors<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let (rows, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !rows[r][f].is_zero() {
                    v[p] = -rows[r][f].clone();
                }
            }
            v
        })
        .collect()
}

pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    Subspace::span(m.cols(), kernel_vectors(m))
}

/// Counts of negative, zero and positive eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.negative + self.zero + self.positive
    }
}

/// Inertia by symmetric congruence. Diagonal pivots are used when one is
/// nonzero; otherwise a nonzero off-diagonal entry gives a 2x2 block
/// contributing one negative and one positive eigenvalue.
pub fn inertia<S: Scalar>(m: &Matrix<S>) -> Result<Inertia, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NonSymmetric);
    }
    let mut a: Vec<Vec<S>> = m.row_vecs();
    let mut out = Inertia {
        negative: 0,
        zero: 0,
        positive: 0,
    };
    while !a.is_empty() {
        let n = a.len();
        if let Some(k) = (0..n).find(|&k| !a[k][k].is_zero()) {
            let piv = a[k][k].clone();
            match piv.sign() {
                Sign::Negative => out.negative += 1,
                _ => out.positive += 1,
            }
            let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
            a = keep
                .iter()
                .map(|&i| {
                    keep.iter()
                        .map(|&j| {
                            if a[i][k].is_zero() || a[k][j].is_zero() {
                                a[i][j].clone()
                            } else {
                                a[i][j].clone() - a[i][k].clone() * a[k][j].clone() / piv.clone()
                            }
                        })
                        .collect()
                })
                .collect();
            continue;
        }
        let off = (0..n).find_map(|i| (i + 1..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
        let Some((k, l)) = off else {
            out.zero += n;
            break;
        };
        out.negative += 1;
        out.positive += 1;
        let b = a[k][l].clone();
        let keep: Vec<usize> = (0..n).filter(|&i| i != k && i != l).collect();
        a = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| {
                        let corr = a[i][k].clone() * a[l][j].clone() + a[i][l].clone() * a[k][j].clone();
                        if corr.is_zero() {
                            a[i][j].clone()
                        } else {
                            a[i][j].clone() - corr / b.clone()
                        }
                    })
                    .collect()
            })
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadSurd, Rational};
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
    }

    fn minus_j(n: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| Rational::from_i64(-1))
    }

    fn star_adjacency() -> Matrix<Rational> {
        int_matrix(&[&[0, 1, 1, 1], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::from_fn(5, 5, |_, _| Rational::from_i64(1))), 1);
        assert_eq!(rank(&Matrix::<Rational>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Rational>::zeros(0, 16)), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&star_adjacency());
        assert_eq!(k.dim(), 2);
        // Hand solution: x_center = 0 and the leaves sum to zero.
        for v in k.basis() {
            assert!(v[0].is_zero());
            assert!((v[1].clone() + v[2].clone() + v[3].clone()).is_zero());
        }
        assert_eq!(kernel_basis(&Matrix::<Rational>::identity(4)).dim(), 0);
        assert_eq!(kernel_basis(&minus_j(4)).dim(), 3);
    }

    #[test]
    fn inertia_examples() {
        let i = inertia(&minus_j(5)).unwrap();
        assert_eq!((i.negative, i.zero, i.positive), (1, 4, 0));
        let d = int_matrix(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        let i = inertia(&d).unwrap();
        assert_eq!((i.negative, i.zero, i.positive), (1, 1, 1));
        // Eigenvalues of -A(K_{1,3}) are -sqrt(3), 0, 0, sqrt(3).
        let i = inertia(&star_adjacency().scale(&Rational::from_i64(-1))).unwrap();
        assert_eq!((i.negative, i.zero, i.positive), (1, 2, 1));
        assert_eq!(
            inertia(&int_matrix(&[&[0, 1], &[2, 0]])),
            Err(LinalgError::NonSymmetric)
        );
    }

    #[test]
    fn surd_kernel() {
        // sqrt(2) I - A(P_3) has kernel spanned by (1, sqrt 2, 1).
        let s2 = QuadSurd::sqrt(2).unwrap();
        let m = Matrix::from_fn(3, 3, |i, j| {
            if i == j {
                s2.clone()
            } else if i.abs_diff(j) == 1 {
                QuadSurd::integer(-1)
            } else {
                QuadSurd::zero()
            }
        });
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        let v = &k.basis()[0];
        assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        // Spectrum of A(P_3) is {-sqrt 2, 0, sqrt 2}.
        let i = inertia(&m).unwrap();
        assert_eq!((i.negative, i.zero, i.positive), (0, 1, 2));
    }

    fn random_symmetric(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        // Force some rank deficiency now and then.
        if n > 2 && rng.gen_bool(0.5) {
            for j in 0..n {
                let v = m[(0, j)].clone() + m[(1, j)].clone();
                m[(n - 1, j)] = v.clone();
            }
            for i in 0..n {
                let v = m[(i, 0)].clone() + m[(i, 1)].clone();
                m[(i, n - 1)] = v;
            }
        }
        m
    }

    #[test]
    fn inertia_matches_float_eigensolver() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let m = random_symmetric(&mut rng, n);
            let exact = inertia(&m).unwrap();
            assert_eq!(exact.zero, kernel_basis(&m).dim());
            let f = nalgebra::DMatrix::from_fn(n, n, |i, j| Scalar::to_f64(&m[(i, j)]));
            let eig = nalgebra::SymmetricEigen::new(f).eigenvalues;
            // Advisory float cross-check: skip matrices with eigenvalues too
            // close to zero for the float side to classify.
            if eig.iter().any(|&l| l.abs() > 1e-12 && l.abs() < 1e-9) {
                continue;
            }
            let neg = eig.iter().filter(|&&l| l < -1e-9).count();
            let pos = eig.iter().filter(|&&l| l > 1e-9).count();
            assert_eq!((exact.negative, exact.positive), (neg, pos), "{m:?}");
        }
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..7) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(rows, cols, |_, _| Rational::from_i64(rng.gen_range(-2..=2)));
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim(), cols - rank(&m));
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            // The RREF basis is a fixed point.
            let again = Subspace::span(cols, k.basis().to_vec());
            prop_assert_eq!(&again, &k);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            let mut shuffled = m.clone();
            if rows > 1 {
                shuffled.swap_rows(0, rows - 1);
            }
            prop_assert_eq!(rank(&shuffled), rank(&m));
        }
    }
}
