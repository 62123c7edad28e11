//! Dense linear algebra over GF(2) with bitset rows.

use fixedbitset::FixedBitSet;

/// A matrix over GF(2) stored as bitset rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<FixedBitSet>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![FixedBitSet::with_capacity(cols); rows],
        }
    }

    /// Builds a matrix from the sets of rows holding a one in each column.
    pub fn from_columns(rows: usize, columns: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for &r in col {
                m.toggle(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.rows[r].toggle(c);
    }

    /// `M x` for `x` given by its support.
    pub fn apply(&self, support: &[usize]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if support.iter().filter(|&&c| row.contains(c)).count() % 2 == 1 {
                out.insert(r);
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Vec<FixedBitSet>, Vec<usize>) {
        let mut rows: Vec<FixedBitSet> = self.rows.iter().filter(|r| !r.is_clear()).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].contains(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.contains(c) {
                    row.symmetric_difference_with(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, each vector given by its sorted support.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v: Vec<usize> = rows
                    .iter()
                    .zip(&pivots)
                    .filter(|(row, _)| row.contains(f))
                    .map(|(_, &p)| p)
                    .collect();
                v.push(f);
                v.sort_unstable();
                v
            })
            .collect()
    }
}
