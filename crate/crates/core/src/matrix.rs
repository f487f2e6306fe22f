//! Dense matrices over F_q and Gauss-Jordan elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

/// Output of [`FqMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(spec: &FieldSpec, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if cols == 0 {
            return Err(Error::DimensionMismatch("matrix needs at least one column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|a| a.index() >= spec.q()) {
            return Err(Error::DimensionMismatch("entry outside the field".into()));
        }
        Ok(Self { spec: spec.clone(), rows, cols, entries })
    }

    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Self {
        assert!(cols >= 1, "matrix needs at least one column");
        Self { spec: spec.clone(), rows, cols, entries: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    /// Builds a matrix from packed element indices, e.g. `[[1, 0], [0, 1]]`.
    pub fn from_rows(spec: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for &v in rows.iter().flatten() {
            entries.push(
                spec.element(v)
                    .ok_or_else(|| Error::DimensionMismatch(format!("{v} is not an element of F_{}", spec.q())))?,
            );
        }
        Self::new(spec, rows.len(), cols, entries)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Panics on a matrix with no rows, which has no column-bearing transpose.
    pub fn transpose(&self) -> FqMatrix {
        assert!(self.rows >= 1, "cannot transpose a matrix with no rows");
        let mut t = FqMatrix::zeros(&self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        self.check_compatible(other)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FqMatrix { spec: self.spec.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.spec != other.spec || self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.spec;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &FqMatrix) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::DimensionMismatch("matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("column counts differ: {} vs {}", self.cols, other.cols)));
        }
        Ok(())
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.eliminate();
        let rank = pivots.len();
        m.entries.truncate(rank * m.cols);
        m.rows = rank;
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().len()
    }

    /// In-place Gauss-Jordan elimination; returns pivot columns. Nonzero
    /// rows end up on top in echelon order.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.spec.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.entries.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// True when this matrix is in reduced row echelon form with no zero rows.
    pub fn is_rref(&self) -> bool {
        let f = &self.spec;
        let mut last_pivot: Option<usize> = None;
        for r in 0..self.rows {
            let Some(c) = (0..self.cols).find(|&c| !self.get(r, c).is_zero()) else {
                return false;
            };
            if self.get(r, c) != f.one() || last_pivot.is_some_and(|lp| c <= lp) {
                return false;
            }
            if (0..self.rows).any(|i| i != r && !self.get(i, c).is_zero()) {
                return false;
            }
            last_pivot = Some(c);
        }
        true
    }

    /// Basis (as rows, in RREF) of `{ v : M v^t = 0 }`.
    pub fn null_space(&self) -> FqMatrix {
        let f = &self.spec;
        let Rref { matrix: r, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FqMatrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        basis.rref().matrix
    }

    /// Rows rendered as digit strings (base 36 element indices).
    pub fn digit_rows(&self) -> Vec<String> {
        (0..self.rows).map(|r| self.row(r).iter().map(|a| render_digit(a.index())).collect()).collect()
    }
}

fn render_digit(v: u32) -> char {
    char::from_digit(v, 36).unwrap_or('?')
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix[{}x{}]({})", self.rows, self.cols, self.digit_rows().join("/"))
    }
}

/// Rank of the vertical concatenation of `x` and `y`.
pub fn stack_rank(x: &FqMatrix, y: &FqMatrix) -> Result<usize> {
    Ok(x.stack(y)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn m(spec: &FieldSpec, rows: &[&[u32]]) -> FqMatrix {
        FqMatrix::from_rows(spec, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_reduced() {
        let f2 = make_field(2, 1).unwrap();
        let i = FqMatrix::identity(&f2, 2);
        let r = i.rref();
        assert_eq!(r.matrix, i);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn equal_rows_collapse() {
        let f2 = make_field(2, 1).unwrap();
        let r = m(&f2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(&f2, &[&[1, 1]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn stack_rank_mismatch() {
        let f2 = make_field(2, 1).unwrap();
        let a = FqMatrix::identity(&f2, 2);
        let b = FqMatrix::identity(&f2, 3);
        assert!(matches!(stack_rank(&a, &b), Err(Error::DimensionMismatch(_))));
        assert_eq!(stack_rank(&a, &a).unwrap(), 2);
    }

    #[test]
    fn null_space_is_orthogonal() {
        let f3 = make_field(3, 1).unwrap();
        let a = m(&f3, &[&[1, 2, 0, 1], &[0, 1, 1, 2]]);
        let n = a.null_space();
        assert_eq!(n.rows(), 2);
        let prod = a.mul(&n.transpose()).unwrap();
        assert!(prod.entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rejects_zero_columns_and_bad_entries() {
        let f2 = make_field(2, 1).unwrap();
        assert!(FqMatrix::new(&f2, 1, 0, vec![]).is_err());
        assert!(FqMatrix::from_rows(&f2, &[vec![2]]).is_err());
    }
}
