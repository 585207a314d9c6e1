//! Dense matrices over Q(i) with exact Gauss-Jordan elimination.
//!
//! Pivoting is deterministic: within each column the first row with a
//! nonzero entry is chosen, so rank, reduced form and kernel bases are
//! reproducible across runs.

use super::{FieldError, GaussianRational};

/// A rows x cols matrix over Q(i), stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for k in 0..n {
            m.set(k, k, GaussianRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, FieldError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * vec({})",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form together with the list of pivot columns.
    ///
    /// Elimination scans columns left to right and picks the first row
    /// (top to bottom, among the unused ones) with a nonzero entry.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, pr);
            let inv = m
                .get(next_row, col)
                .inverse()
                .expect("pivot entry is nonzero");
            m.scale_row(next_row, &inv);
            for r in 0..m.rows {
                if r != next_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    /// The rank of the matrix over Q(i).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel {v : A v = 0}.
    ///
    /// One basis vector per free column, in increasing column order; the
    /// free coordinate itself is set to 1. Together with `rank` this
    /// satisfies rank + kernel.len() = cols exactly.
    pub fn kernel(&self) -> Vec<Vec<GaussianRational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[free] = GaussianRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                // Row i reads x_pc + ... + r[i][free] * x_free + ... = 0.
                v[pc] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &GaussianRational) {
        for c in 0..self.cols {
            let v = self.get(r, c) * f;
            self.set(r, c, v);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, f: &GaussianRational) {
        for c in 0..self.cols {
            let v = self.get(target, c) - &(self.get(source, c) * f);
            self.set(target, c, v);
        }
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let entries: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", entries.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn m(rows: Vec<Vec<i64>>) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(GaussianRational::from_int).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_identity_and_singular() {
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::zero(3, 5).rank(), 0);
    }

    #[test]
    fn kernel_is_exact_and_complements_rank() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]);
        let k = a.kernel();
        assert_eq!(a.rank() + k.len(), a.cols());
        for v in &k {
            let image = a.mul_vec(v).unwrap();
            assert!(image.iter().all(GaussianRational::is_zero));
        }
    }

    #[test]
    fn kernel_vector_known() {
        // x + 2y + 3z = 0, x + y + z = 0  =>  kernel spanned by (1, -2, 1).
        let a = m(vec![vec![1, 2, 3], vec![1, 1, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let ratio0 = (&v[0] / &v[2]).clone();
        let ratio1 = (&v[1] / &v[2]).clone();
        assert_eq!(ratio0, GaussianRational::from_int(1));
        assert_eq!(ratio1, GaussianRational::from_int(-2));
    }

    #[test]
    fn complex_elimination() {
        // (1, i; i, -1) has rank 1 since row2 = i * row1.
        let i = GaussianRational::i();
        let a = ExactMatrix::from_rows(vec![
            vec![GaussianRational::one(), i.clone()],
            vec![i.clone(), GaussianRational::from_int(-1)],
        ])
        .unwrap();
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        let image = a.mul_vec(&k[0]).unwrap();
        assert!(image.iter().all(GaussianRational::is_zero));
    }

    #[test]
    fn mul_and_add_shapes() {
        let a = m(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let b = m(vec![vec![2, 1], vec![1, 2]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.rows(), 3);
        assert_eq!(ab.get(2, 0), &GaussianRational::from_int(3));
        assert!(a.add(&b).is_err());
        assert_eq!(a.get(0, 0), &GaussianRational::from_rational(rat(1)));
    }
}
