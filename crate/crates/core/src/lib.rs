//! Exact computations around the Colin de Verdière graph parameter μ and the
//! related parameters σ, λ and η.
//!
//! Everything that decides a sign is exact: scalars live in ℚ or in a
//! quadratic field ℚ(√q). Numerical types implement [`Scalar`] too, but only
//! for cross-checks.

pub mod esr;
pub mod gf2;
pub mod graph;
pub mod linalg;
pub mod matrix;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod polytopal;
pub mod projplane;
pub mod scalar;
pub mod schrodinger;
pub mod sigma5;
pub mod signcells;
pub mod subspace;

pub use graph::{Graph, GraphError, NamedGraph};
pub use linalg::{inertia, kernel_basis, rank, Inertia};
pub use matrix::Matrix;
pub use polytopal::{CellularMap, PolytopeComplex};
pub use projplane::ProjectivePlane;
pub use schrodinger::SchrodingerMatrix;
pub use signcells::{Fan, SignCell, SignPattern};
pub use scalar::{QuadSurd, Rational, Scalar, Sign};
pub use sigma5::{ObstructionCertificate, TwoClosure};
pub use subspace::Subspace;

/// Exact scalar used by the high-level operations.
pub type FieldScalar = QuadSurd;
pub type ExactMatrix = Matrix<FieldScalar>;
pub type ExactSubspace = Subspace<FieldScalar>;
pub type RationalMatrix = Matrix<Rational>;
pub type FloatMatrix = Matrix<f64>;
pub type ExactPolytope = PolytopeComplex<FieldScalar>;
