//! Subspaces of F_q^n held as canonical RREF basis matrices.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cyclotomic::gaussian_binomial_at;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FqMatrix;

/// Default cap on the number of subspaces a single enumeration may produce.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

/// A subspace of F_q^n. The basis is the unique RREF matrix of its row space,
/// so equality of subspaces is equality of bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    pub fn zero(spec: &FieldSpec, n: usize) -> Self {
        Subspace { basis: FqMatrix::zeros(spec, 0, n) }
    }

    pub fn full(spec: &FieldSpec, n: usize) -> Self {
        Subspace { basis: FqMatrix::identity(spec, n) }
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn spec(&self) -> &FieldSpec {
        self.basis.spec()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| (0..self.ambient()).find(|&c| !self.basis.get(r, c).is_zero()).expect("rref row is nonzero"))
            .collect()
    }

    /// Entries off the pivot columns to the right of each pivot, row-major.
    pub fn free_entries(&self) -> Vec<FieldElement> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..self.ambient() {
                if !pivots.contains(&c) {
                    out.push(self.basis.get(r, c));
                }
            }
        }
        out
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.spec() != other.spec() || self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.basis.stack(&other.basis)?.rank() == self.dim())
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(canonicalize(&self.basis.stack(&other.basis)?))
    }

    /// Intersection via the left kernel of the stacked bases: every relation
    /// `a S + b T = 0` yields the common vector `a S`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (k, n) = (self.dim(), self.ambient());
        if k == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.spec(), n));
        }
        let relations = self.basis.stack(&other.basis)?.transpose().null_space();
        if relations.rows() == 0 {
            return Ok(Subspace::zero(self.spec(), n));
        }
        let f = self.spec();
        let mut left = FqMatrix::zeros(f, relations.rows(), k);
        for r in 0..relations.rows() {
            for c in 0..k {
                left.set(r, c, relations.get(r, c));
            }
        }
        Ok(canonicalize(&left.mul(&self.basis)?))
    }

    /// `dim(S ∩ T)` as the nullity of the transposed stack.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(0);
        }
        let stacked = self.basis.stack(&other.basis)?;
        Ok(stacked.rows() - stacked.transpose().rank())
    }

    /// `W^⊥ = { v : w v^t = 0 for all w in W }` under the standard bilinear form.
    pub fn dual_complement(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.spec(), self.ambient());
        }
        Subspace { basis: self.basis.null_space() }
    }

    /// Sort key: pivot columns, then free entries in canonical field order.
    pub fn order_key(&self) -> (usize, Vec<usize>, Vec<u32>) {
        let f = self.spec();
        (self.dim(), self.pivots(), self.free_entries().into_iter().map(|a| f.rank(a)).collect())
    }

    pub fn digit_rows(&self) -> Vec<String> {
        self.basis.digit_rows()
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient().cmp(&other.ambient()).then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({})", self.digit_rows().join("/"))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        write!(f, "{}", self.digit_rows().join("/"))
    }
}

/// Row space of `m` in canonical form; rank-deficient input is fine.
pub fn canonicalize(m: &FqMatrix) -> Subspace {
    Subspace { basis: m.rref().matrix }
}

/// Number of `k`-dimensional subspaces of F_q^n.
pub fn subspace_count(q: u64, n: usize, k: usize) -> BigInt {
    gaussian_binomial_at(n as u32, k as u32, q)
}

/// Every `k`-dimensional subspace of F_q^n, in canonical order: pivot sets in
/// lexicographic order, then free entries as an odometer (first entry most
/// significant).
pub fn enumerate_subspaces(spec: &FieldSpec, n: usize, k: usize, bound: u64) -> Result<Vec<Subspace>> {
    if k > n || n == 0 {
        return Err(Error::InvalidParameters(format!("need 0 <= k <= n and n >= 1, got n={n}, k={k}")));
    }
    let count = subspace_count(spec.q() as u64, n, k);
    let small = count.to_u64().filter(|&c| c <= bound);
    let Some(count) = small else {
        return Err(Error::EnumerationTooLarge { count: count.to_string(), bound });
    };

    let elements = spec.elements();
    let mut out = Vec::with_capacity(count as usize);
    for pivots in k_subsets(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut template = FqMatrix::zeros(spec, k, n);
        for (r, &pc) in pivots.iter().enumerate() {
            template.set(r, pc, spec.one());
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut m = template.clone();
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m.set(r, c, elements[d]);
            }
            out.push(Subspace { basis: m });
            // advance odometer, last position fastest
            let mut pos = free.len();
            let exhausted = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < elements.len() {
                    break false;
                }
                digits[pos] = 0;
            };
            if exhausted {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u64, count);
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-dimensional `S` with `lower ⊆ S ⊆ upper`, in canonical order.
pub fn subspaces_between(lower: &Subspace, upper: &Subspace, k: usize) -> Result<Vec<Subspace>> {
    if !upper.contains(lower)? {
        return Err(Error::NotContained);
    }
    if k < lower.dim() || k > upper.dim() {
        return Err(Error::InvalidParameters(format!("k = {k} outside [{}, {}]", lower.dim(), upper.dim())));
    }
    let spec = lower.spec();
    let n = lower.ambient();
    // Extend the basis of `lower` to one of `upper`.
    let mut span = lower.basis().clone();
    let mut complement: Vec<Vec<FieldElement>> = Vec::new();
    for r in 0..upper.dim() {
        let row = FqMatrix::new(spec, 1, n, upper.basis().row(r).to_vec())?;
        let candidate = span.stack(&row)?;
        if candidate.rank() > span.rank() {
            span = candidate;
            complement.push(upper.basis().row(r).to_vec());
        }
    }
    let extra = complement.len();
    let need = k - lower.dim();
    if extra == 0 || need == 0 {
        return Ok(vec![lower.clone()]);
    }
    let complement = FqMatrix::new(spec, extra, n, complement.concat())?;
    let mut out: Vec<Subspace> = enumerate_subspaces(spec, extra, need, u64::MAX)?
        .into_iter()
        .map(|coeffs| {
            let rows = coeffs.basis().mul(&complement).expect("shapes agree");
            canonicalize(&rows.stack(lower.basis()).expect("same ambient"))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f2() -> FieldSpec {
        make_field(2, 1).unwrap()
    }

    fn sub(spec: &FieldSpec, rows: &[&[u32]]) -> Subspace {
        canonicalize(&FqMatrix::from_rows(spec, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
    }

    #[test]
    fn counts() {
        let f = f2();
        assert_eq!(enumerate_subspaces(&f, 4, 2, DEFAULT_ENUMERATION_BOUND).unwrap().len(), 35);
        assert_eq!(enumerate_subspaces(&f, 5, 2, DEFAULT_ENUMERATION_BOUND).unwrap().len(), 155);
        let full = enumerate_subspaces(&f, 3, 3, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(full, vec![Subspace::full(&f, 3)]);
        let zero = enumerate_subspaces(&f, 3, 0, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(zero, vec![Subspace::zero(&f, 3)]);
    }

    #[test]
    fn enumeration_too_large() {
        let err = enumerate_subspaces(&f2(), 10, 5, DEFAULT_ENUMERATION_BOUND).unwrap_err();
        assert!(err.to_string().contains("enumeration too large"));
        assert!(err.to_string().contains("109221651"));
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        let f3 = make_field(3, 1).unwrap();
        let all = enumerate_subspaces(&f3, 4, 2, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| s.basis().is_rref() && s.dim() == 2));
    }

    #[test]
    fn join_and_intersect_small_cases() {
        let f = f2();
        let a = sub(&f, &[&[1, 0]]);
        let b = sub(&f, &[&[0, 1]]);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.join(&b).unwrap(), Subspace::full(&f, 2));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(&f, 2));
        let c = sub(&f, &[&[1, 0, 0]]);
        assert!(matches!(a.join(&c), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.intersect(&c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dual_of_full_is_zero() {
        let f = f2();
        assert_eq!(Subspace::full(&f, 4).dual_complement(), Subspace::zero(&f, 4));
        assert_eq!(Subspace::zero(&f, 4).dual_complement(), Subspace::full(&f, 4));
    }

    #[test]
    fn between_counts() {
        let f = f2();
        let l = sub(&f, &[&[1, 0, 0, 0]]);
        let u = sub(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(subspaces_between(&l, &u, 2).unwrap().len(), 3);
        assert_eq!(subspaces_between(&l, &l, 1).unwrap(), vec![l.clone()]);
        let all = subspaces_between(&Subspace::zero(&f, 4), &Subspace::full(&f, 4), 2).unwrap();
        assert_eq!(all, enumerate_subspaces(&f, 4, 2, DEFAULT_ENUMERATION_BOUND).unwrap());
        let outside = sub(&f, &[&[0, 0, 0, 1]]);
        assert_eq!(subspaces_between(&outside, &u, 2).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn rank_deficient_canonicalize() {
        let f = f2();
        let s = sub(&f, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(s.dim(), 1);
    }
}
