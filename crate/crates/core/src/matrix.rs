//! Dense row-major matrices over a [`Scalar`].

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{common_radicand, QuadSurd, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn matmul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                if self[(i, k)].is_zero() || other[(k, j)].is_zero() {
                    continue;
                }
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Submatrix on the given columns, all rows kept.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<S> {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + x.clone() * y.clone();
    }
    acc
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Debug, Error)]
pub enum MatrixJsonError {
    #[error("malformed matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("declared {declared} {what} but found {found}")]
    Shape {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("entry ({row},{col}): {source}")]
    Entry {
        row: usize,
        col: usize,
        source: ScalarError,
    },
    #[error("entry ({row},{col}) uses sqrt({found}) but the matrix declares q = {declared:?}")]
    Radicand {
        row: usize,
        col: usize,
        found: u64,
        declared: Option<u64>,
    },
}

/// On-disk form: `{"rows":r,"cols":c,"q":q-or-null,"entries":[["a/b", ...], ...]}`.
#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    q: Option<u64>,
    entries: Vec<Vec<String>>,
}

impl Matrix<QuadSurd> {
    /// Radicand shared by the entries, if any entry is irrational.
    pub fn radicand(&self) -> Option<u64> {
        common_radicand(self.data.iter())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = MatrixJson {
            rows: self.rows,
            cols: self.cols,
            q: self.radicand(),
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        serde_json::to_value(doc).expect("matrix serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixJsonError> {
        let doc: MatrixJson = serde_json::from_str(text)?;
        if doc.entries.len() != doc.rows {
            return Err(MatrixJsonError::Shape {
                what: "rows",
                declared: doc.rows,
                found: doc.entries.len(),
            });
        }
        let mut data = Vec::with_capacity(doc.rows * doc.cols);
        for (i, row) in doc.entries.iter().enumerate() {
            if row.len() != doc.cols {
                return Err(MatrixJsonError::Shape {
                    what: "columns",
                    declared: doc.cols,
                    found: row.len(),
                });
            }
            for (j, s) in row.iter().enumerate() {
                let x: QuadSurd = s.parse().map_err(|source| MatrixJsonError::Entry {
                    row: i,
                    col: j,
                    source,
                })?;
                if let Some(found) = x.radicand() {
                    if doc.q != Some(found) {
                        return Err(MatrixJsonError::Radicand {
                            row: i,
                            col: j,
                            found,
                            declared: doc.q,
                        });
                    }
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: doc.rows,
            cols: doc.cols,
            data,
        })
    }
}
