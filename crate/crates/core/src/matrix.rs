//! Column-major sparse integer matrices.

use serde::Serialize;

/// Sparse integer matrix stored by column; each column holds `(row, value)`
/// pairs sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, i64)>>) -> Self {
        for col in &mut columns {
            col.retain(|&(_, v)| v != 0);
            col.sort_unstable_by_key(|&(r, _)| r);
            debug_assert!(col.iter().all(|&(r, _)| r < rows));
            debug_assert!(col.windows(2).all(|w| w[0].0 != w[1].0), "duplicate row");
        }
        Self {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| dense[r][c] != 0)
                    .map(|r| (r, dense[r][c]))
                    .collect()
            })
            .collect();
        Self {
            rows,
            cols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            dense[r][c] = v;
        }
        dense
    }

    /// Product `self * rhs`; panics on overflow.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for col in &rhs.columns {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] = acc[r]
                        .checked_add(a.checked_mul(b).expect("overflow"))
                        .expect("overflow");
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let out: Vec<(usize, i64)> = touched
                .iter()
                .filter(|&&r| acc[r] != 0)
                .map(|&r| (r, acc[r]))
                .collect();
            for &r in &touched {
                acc[r] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Applies the given row and column permutations: entry (r, c) moves to
    /// (row_perm[r], col_perm[c]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            columns[col_perm[c]].push((row_perm[r], v));
        }
        SparseMatrix::from_columns(self.rows, columns)
    }
}
