use crate::linalg::kernel_vectors;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar, Sign};

use super::Sigma5Error;

pub type Triangle = [usize; 3];

/// Whether the images of two vertex-disjoint triangles cross when vertex `v`
/// goes to `(t, t², t³, t⁴)` with `t = params[v]`.
///
/// The six image points have a one-dimensional space of affine dependences;
/// the triangles meet exactly when a dependence is positive on one triangle
/// and negative on the other. A zero coefficient means the meeting point lies
/// on a boundary, which is reported as degenerate.
pub fn triangles_cross(a: &Triangle, b: &Triangle, params: &[i64]) -> Result<bool, Sigma5Error> {
    let ts: Vec<i64> = a.iter().chain(b).map(|&v| params[v]).collect();
    let m = Matrix::from_fn(5, 6, |i, j| Rational::from_i64(ts[j].pow(i as u32)));
    let dep = kernel_vectors(&m);
    if dep.len() != 1 {
        return Err(Sigma5Error::DegeneratePosition(format!(
            "points {a:?} and {b:?} have {} affine dependences",
            dep.len()
        )));
    }
    let signs: Vec<Sign> = dep[0].iter().map(|x| x.sign()).collect();
    if signs.contains(&Sign::Zero) {
        return Err(Sigma5Error::DegeneratePosition(format!(
            "triangles {a:?} and {b:?} meet on a boundary"
        )));
    }
    let s = signs[0];
    Ok(signs[..3].iter().all(|&x| x == s) && signs[3..].iter().all(|&x| x != s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Vec<i64> {
        (1..=6).collect()
    }

    #[test]
    fn interleaved_triangles_cross() {
        assert!(triangles_cross(&[0, 2, 4], &[1, 3, 5], &params()).unwrap());
        assert!(!triangles_cross(&[0, 1, 2], &[3, 4, 5], &params()).unwrap());
        assert!(!triangles_cross(&[0, 1, 4], &[2, 3, 5], &params()).unwrap());
    }

    #[test]
    fn repeated_parameters_are_degenerate() {
        let p = vec![1, 1, 2, 3, 4, 5];
        assert!(matches!(
            triangles_cross(&[0, 2, 4], &[1, 3, 5], &p),
            Err(Sigma5Error::DegeneratePosition(_))
        ));
    }
}
