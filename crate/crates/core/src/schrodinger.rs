//! The matrix class M(G), the Strong Arnold Hypothesis and bounds on μ.

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{inertia, kernel_basis, rank, Inertia};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Sign};
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchrodingerError {
    #[error("matrix is {rows}x{cols} but the graph has {n} vertices")]
    Shape { rows: usize, cols: usize, n: usize },
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("entry ({0},{1}) breaks the sign pattern of the graph")]
    PatternViolation(usize, usize),
    #[error("matrix has {0} negative eigenvalues, expected exactly one")]
    InertiaViolation(usize),
}

/// A matrix checked to lie in M(G).
#[derive(Clone, Debug)]
pub struct SchrodingerMatrix<S> {
    graph: Graph,
    matrix: Matrix<S>,
    inertia: Inertia,
}

impl<S: Scalar> SchrodingerMatrix<S> {
    /// Checks the off-diagonal sign pattern first, then the inertia.
    pub fn validate(graph: &Graph, matrix: Matrix<S>) -> Result<Self, SchrodingerError> {
        let n = graph.n();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(SchrodingerError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                n,
            });
        }
        if !matrix.is_symmetric() {
            return Err(SchrodingerError::NonSymmetric);
        }
        for u in 0..n {
            for v in u + 1..n {
                let want = if graph.has_edge(u, v) {
                    Sign::Negative
                } else {
                    Sign::Zero
                };
                if matrix[(u, v)].sign() != want {
                    return Err(SchrodingerError::PatternViolation(u, v));
                }
            }
        }
        let inertia = inertia(&matrix).expect("symmetry checked above");
        if inertia.negative != 1 {
            return Err(SchrodingerError::InertiaViolation(inertia.negative));
        }
        Ok(SchrodingerMatrix {
            graph: graph.clone(),
            matrix,
            inertia,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    pub fn corank(&self) -> usize {
        self.inertia.zero
    }

    pub fn kernel(&self) -> Subspace<S> {
        kernel_basis(&self.matrix)
    }

    pub fn n_matrix(&self) -> Matrix<S> {
        n_matrix(&self.graph, &self.matrix)
    }

    pub fn sah_check(&self) -> SahReport<S> {
        let n_mat = self.n_matrix();
        let p = n_mat.rows();
        let rank = rank(&n_mat);
        SahReport {
            p,
            n_matrix: n_mat,
            rank,
            sah_holds: rank == p,
        }
    }

    /// `μ(G) ≥ corank(M)` whenever M satisfies SAH.
    pub fn mu_lower_certificate(&self) -> Option<usize> {
        self.sah_check().sah_holds.then(|| self.corank())
    }
}

#[derive(Clone, Debug)]
pub struct SahReport<S> {
    pub p: usize,
    pub n_matrix: Matrix<S>,
    pub rank: usize,
    pub sah_holds: bool,
}

/// The `p x n²` matrix whose column `(i, j)` is `M E_ij + E_ij^T M` restricted
/// to the non-edges. Rows follow [`Graph::non_edges`]; columns are ordered
/// lexicographically in `(i, j)`.
pub fn n_matrix<S: Scalar>(g: &Graph, m: &Matrix<S>) -> Matrix<S> {
    let n = g.n();
    let non_edges = g.non_edges();
    let mut out = Matrix::<S>::zeros(non_edges.len(), n * n);
    for (r, &(u, v)) in non_edges.iter().enumerate() {
        // (M E_ij)_{uv} = M_{ui} [v = j] and (E_ji M)_{uv} = [u = j] M_{iv}.
        for i in 0..n {
            let c = i * n + v;
            out[(r, c)] = out[(r, c)].clone() + m[(u, i)].clone();
            let c = i * n + u;
            out[(r, c)] = out[(r, c)].clone() + m[(i, v)].clone();
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum EdgeBound {
    Bound(usize),
    /// `K_{3,3}` is the one connected graph the edge bound does not cover.
    K33Exception,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgeBoundError {
    #[error("graph is disconnected")]
    Disconnected,
}

/// Largest `k` with `k(k+1)/2 ≤ |E|`.
pub fn mu_edge_upper_bound(g: &Graph) -> Result<EdgeBound, EdgeBoundError> {
    if !g.is_connected() {
        return Err(EdgeBoundError::Disconnected);
    }
    if is_k33(g) {
        return Ok(EdgeBound::K33Exception);
    }
    let e = g.edge_count() as u64;
    let k = ((1 + 8 * e).sqrt() - 1) / 2;
    Ok(EdgeBound::Bound(k as usize))
}

fn is_k33(g: &Graph) -> bool {
    g.n() == 6 && g.edge_count() == 9 && (0..6).all(|v| g.degree(v) == 3) && g.is_bipartite()
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphSummary {
    fn from(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SahSummary {
    pub p: usize,
    pub rank: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MuReport {
    pub graph: GraphSummary,
    pub corank: Option<usize>,
    pub sah: Option<SahSummary>,
    pub mu_lower: Option<usize>,
    pub mu_upper: Option<usize>,
    pub exceptions: Vec<String>,
}

/// Combines the matrix certificate (if a matrix is given) with the edge bound.
pub fn mu_report<S: Scalar>(g: &Graph, m: Option<&SchrodingerMatrix<S>>) -> MuReport {
    let mut exceptions = Vec::new();
    let mu_upper = match mu_edge_upper_bound(g) {
        Ok(EdgeBound::Bound(k)) => Some(k),
        Ok(EdgeBound::K33Exception) => {
            exceptions.push("K33: edge bound does not apply".to_string());
            None
        }
        Err(e) => {
            exceptions.push(e.to_string());
            None
        }
    };
    let (corank, sah, mu_lower) = match m {
        Some(m) => {
            let rep = m.sah_check();
            let corank = m.corank();
            (
                Some(corank),
                Some(SahSummary {
                    p: rep.p,
                    rank: rep.rank,
                    holds: rep.sah_holds,
                }),
                rep.sah_holds.then_some(corank),
            )
        }
        None => (None, None, None),
    };
    MuReport {
        graph: g.into(),
        corank,
        sah,
        mu_lower,
        mu_upper,
        exceptions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;
    use crate::scalar::Rational;
    use num_traits::Zero;

    fn neg<S: Scalar>(m: Matrix<S>) -> Matrix<S> {
        m.map(|x| S::zero() - x.clone())
    }

    fn minus_j(n: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| Rational::from_i64(-1))
    }

    /// `M E_ij + E_ij^T M` formed with explicit unit matrices.
    fn naive_n_matrix(g: &Graph, m: &Matrix<Rational>) -> Matrix<Rational> {
        let n = g.n();
        let non_edges = g.non_edges();
        let mut out = Matrix::zeros(non_edges.len(), n * n);
        for i in 0..n {
            for j in 0..n {
                let e = Matrix::from_fn(n, n, |a, b| {
                    if (a, b) == (i, j) {
                        Rational::from_i64(1)
                    } else {
                        Rational::zero()
                    }
                });
                let col = m.matmul(&e).add(&e.transpose().matmul(m));
                for (r, &(u, v)) in non_edges.iter().enumerate() {
                    out[(r, i * n + j)] = col[(u, v)].clone();
                }
            }
        }
        out
    }

    #[test]
    fn complete_graphs() {
        for n in 2..6 {
            let g = NamedGraph::Complete(n).build().unwrap();
            let s = SchrodingerMatrix::validate(&g, minus_j(n)).unwrap();
            assert_eq!(s.corank(), n - 1);
            let sah = s.sah_check();
            assert_eq!((sah.p, sah.n_matrix.cols()), (0, n * n));
            assert!(sah.sah_holds);
            assert_eq!(s.mu_lower_certificate(), Some(n - 1));
        }
    }

    #[test]
    fn star_matches_naive_n_matrix() {
        let g = NamedGraph::Star(3).build().unwrap();
        let s = SchrodingerMatrix::validate(&g, neg(g.adjacency::<Rational>())).unwrap();
        assert_eq!(s.inertia(), Inertia { negative: 1, zero: 2, positive: 1 });
        let rep = s.sah_check();
        let naive = naive_n_matrix(&g, s.matrix());
        assert_eq!(rep.n_matrix, naive);
        assert_eq!((rep.p, rep.rank), (3, rank(&naive)));
        assert_eq!(rep.sah_holds, rep.rank == 3);
    }

    #[test]
    fn rejections_name_the_clause() {
        let g = NamedGraph::Path(3).build().unwrap();
        assert_eq!(
            SchrodingerMatrix::validate(&g, minus_j(3)).unwrap_err(),
            SchrodingerError::PatternViolation(0, 2)
        );
        let shifted = neg(g.adjacency::<Rational>()).add(&Matrix::identity(3).scale(&Rational::from_i64(-5)));
        assert_eq!(
            SchrodingerMatrix::validate(&g, shifted).unwrap_err(),
            SchrodingerError::InertiaViolation(3)
        );
    }

    #[test]
    fn edge_bounds() {
        let bound = |g: NamedGraph| mu_edge_upper_bound(&g.build().unwrap()).unwrap();
        assert_eq!(bound(NamedGraph::CompleteBipartite(3, 3)), EdgeBound::K33Exception);
        assert_eq!(bound(NamedGraph::Complete(5)), EdgeBound::Bound(4));
        assert_eq!(bound(NamedGraph::Petersen), EdgeBound::Bound(5));
        assert_eq!(bound(NamedGraph::Path(2)), EdgeBound::Bound(1));
        let disjoint = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(mu_edge_upper_bound(&disjoint), Err(EdgeBoundError::Disconnected));
    }

    #[test]
    fn kernel_vectors_have_both_signs() {
        for g in [
            NamedGraph::Star(3),
            NamedGraph::Complete(4),
            NamedGraph::Cycle(4),
            NamedGraph::Path(4),
        ] {
            let g = g.build().unwrap();
            let Ok(s) = SchrodingerMatrix::validate(&g, neg(g.adjacency::<Rational>())) else {
                continue;
            };
            for v in s.kernel().basis() {
                assert!(v.iter().any(|x| x.sign() == Sign::Positive));
                assert!(v.iter().any(|x| x.sign() == Sign::Negative));
            }
        }
    }
}
