//! Linear subspaces of `S^n` kept in reduced row echelon form.

use crate::linalg::{kernel_vectors, rank, rref};
use crate::matrix::Matrix;
use crate::scalar::{QuadSurd, Scalar};

/// Subspace spanned by the rows of an RREF basis. Equal subspaces have equal
/// bases, so `==` compares subspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Matrix::<S>::identity(ambient).row_vecs())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<S>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(ambient, vectors);
        let (basis, pivots) = rref(&m);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_rows(self.ambient, self.basis.clone())
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[S]) -> Vec<S> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![S::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    /// Membership test. With an RREF basis the only candidate coefficients
    /// are the pivot entries of `v`.
    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.combine(&coeffs) == v
    }

    /// `{y in self : f(y) = 0 for every functional f}`.
    pub fn constrain(&self, functionals: &[Vec<S>]) -> Subspace<S> {
        if functionals.is_empty() || self.dim() == 0 {
            return self.clone();
        }
        let d = self.dim();
        // C[i][j] = f_i(b_j); kernel vectors of C are coefficient vectors.
        let c = Matrix::from_fn(functionals.len(), d, |i, j| {
            crate::matrix::dot(&functionals[i], &self.basis[j])
        });
        let coeffs = kernel_vectors(&c);
        Subspace::span(self.ambient, coeffs.iter().map(|k| self.combine(k)).collect())
    }

    /// Dimension of `{x in self : x_i = 0 for i in zeros}`.
    pub fn dim_vanishing_on(&self, zeros: &[usize]) -> usize {
        if zeros.is_empty() {
            return self.dim();
        }
        self.dim() - rank(&self.basis_matrix().select_columns(zeros))
    }

    /// Subspace where the given coordinates vanish.
    pub fn vanishing_on(&self, zeros: &[usize]) -> Subspace<S> {
        let functionals: Vec<Vec<S>> = zeros
            .iter()
            .map(|&i| {
                let mut f = vec![S::zero(); self.ambient];
                f[i] = S::one();
                f
            })
            .collect();
        self.constrain(&functionals)
    }
}

impl Subspace<QuadSurd> {
    pub fn radicand(&self) -> Option<u64> {
        self.basis.iter().flatten().find_map(|x| x.radicand())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kernel_basis;
    use crate::scalar::Rational;

    fn minus_j(n: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| Rational::from_i64(-1))
    }

    #[test]
    fn constrain_examples() {
        let l = kernel_basis(&minus_j(4));
        let mut f = vec![Rational::from_i64(0); 4];
        f[0] = Rational::from_i64(1);
        f[1] = Rational::from_i64(1);
        let c = l.constrain(&[f]);
        assert_eq!(c.dim(), 2);
        for v in c.basis() {
            assert!(l.contains(v));
            assert_eq!(v[0].clone() + v[1].clone(), Rational::from_i64(0));
        }
        assert_eq!(l.constrain(&[]), l);
    }

    #[test]
    fn membership() {
        let l = kernel_basis(&minus_j(3));
        let yes: Vec<Rational> = [1, -3, 2].iter().map(|&v| Rational::from_i64(v)).collect();
        let no: Vec<Rational> = [1, 1, 1].iter().map(|&v| Rational::from_i64(v)).collect();
        assert!(l.contains(&yes));
        assert!(!l.contains(&no));
        assert_eq!(l.dim_vanishing_on(&[0]), 1);
        assert_eq!(l.dim_vanishing_on(&[0, 1]), 0);
        assert_eq!(Subspace::<Rational>::full(3).dim(), 3);
    }
}
