//! Arithmetic in F_q, q = p^e, using a polynomial basis over Z_p.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` is the coefficient of `x^i`. The modulus is the lexicographically
//! smallest monic irreducible of degree `e` (coefficients compared from the
//! constant term upwards), so `make_field(p, e)` is a pure function of `(p, e)`.
//! Small fields get precomputed operation tables; the polynomial routines are
//! kept as the reference path.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get full add/mul tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Packed coefficient index in `[0, q)`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Debug)]
struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    order: Vec<FieldElement>,
    tables: Option<Tables>,
}

/// A finite field F_q. Cheap to clone; all clones share one table set.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("e", &self.inner.e)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.e.hash(state);
        self.inner.modulus.hash(state);
    }
}

/// Builds F_{p^e}.
pub fn make_field(p: u64, e: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = p.checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge {
        p,
        e,
        bound: MAX_FIELD_ORDER,
    })?;
    let p = p as u32;
    let q = q as u32;
    let modulus = smallest_irreducible(p, e);

    let mut inner = FieldInner { p, e, q, modulus, order: Vec::new(), tables: None };
    inner.order = (0..q).map(FieldElement).collect();
    inner.order.sort_by(|a, b| cmp_low_first(p, e, *a, *b));
    if q <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    Ok(FieldSpec { inner: Arc::new(inner) })
}

/// Builds the field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, e) = crate::numtheory::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, e)
}

fn cmp_low_first(p: u32, e: u32, a: FieldElement, b: FieldElement) -> Ordering {
    let (mut x, mut y) = (a.0, b.0);
    for _ in 0..e {
        match (x % p).cmp(&(y % p)) {
            Ordering::Equal => {}
            other => return other,
        }
        x /= p;
        y /= p;
    }
    Ordering::Equal
}

fn build_tables(f: &FieldInner) -> Tables {
    let q = f.q as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    let mut neg = vec![0u32; q];
    let mut inv = vec![0u32; q];
    for a in 0..f.q {
        neg[a as usize] = slow_neg(f, a);
        for b in 0..f.q {
            add[a as usize * q + b as usize] = slow_add(f, a, b);
            mul[a as usize * q + b as usize] = slow_mul(f, a, b);
        }
    }
    for a in 1..q {
        inv[a] = (1..q as u32).find(|&b| mul[a * q + b as usize] == 1).unwrap_or(0);
    }
    Tables { add, mul, neg, inv }
}

fn to_coeffs(f: &FieldInner, mut a: u32) -> Vec<u32> {
    let mut c = vec![0; f.e as usize];
    for slot in c.iter_mut() {
        *slot = a % f.p;
        a /= f.p;
    }
    c
}

fn from_coeffs(f: &FieldInner, c: &[u32]) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * f.p + x)
}

fn slow_add(f: &FieldInner, a: u32, b: u32) -> u32 {
    let (x, y) = (to_coeffs(f, a), to_coeffs(f, b));
    let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % f.p).collect();
    from_coeffs(f, &s)
}

fn slow_neg(f: &FieldInner, a: u32) -> u32 {
    let s: Vec<u32> = to_coeffs(f, a).iter().map(|&u| (f.p - u) % f.p).collect();
    from_coeffs(f, &s)
}

fn slow_mul(f: &FieldInner, a: u32, b: u32) -> u32 {
    let prod = zp::mul(&to_coeffs(f, a), &to_coeffs(f, b), f.p);
    let mut r = zp::rem(&prod, &f.modulus, f.p);
    r.resize(f.e as usize, 0);
    from_coeffs(f, &r)
}

fn slow_pow(f: &FieldInner, a: u32, mut k: u64) -> u32 {
    let mut base = a;
    let mut acc = from_coeffs(f, &[1]);
    while k > 0 {
        if k & 1 == 1 {
            acc = slow_mul(f, acc, base);
        }
        base = slow_mul(f, base, base);
        k >>= 1;
    }
    acc
}

/// Lexicographically smallest monic irreducible of degree `e` over Z_p,
/// comparing the constant coefficient first.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for k in 0..count {
        // c_0 is the most significant digit of k.
        let mut poly = vec![0u32; e as usize + 1];
        let mut rest = k;
        for i in (0..e as usize).rev() {
            poly[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        poly[e as usize] = 1;
        if zp::is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// All elements in canonical order (coefficient vectors, constant term first).
    pub fn elements(&self) -> &[FieldElement] {
        &self.inner.order
    }

    pub fn cmp_elements(&self, a: FieldElement, b: FieldElement) -> Ordering {
        if self.inner.e == 1 {
            return a.0.cmp(&b.0);
        }
        cmp_low_first(self.inner.p, self.inner.e, a, b)
    }

    /// Position of `a` in [`FieldSpec::elements`].
    pub fn rank(&self, a: FieldElement) -> u32 {
        let (p, e) = (self.inner.p, self.inner.e);
        let mut x = a.0;
        let mut r = 0;
        for _ in 0..e {
            r = r * p + x % p;
            x /= p;
        }
        r
    }

    /// Element from its packed index; `None` when out of range.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.inner.q).then_some(FieldElement(index))
    }

    /// The constant polynomial `c mod p`.
    pub fn constant(&self, c: u64) -> FieldElement {
        FieldElement((c % self.inner.p as u64) as u32)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        to_coeffs(&self.inner, a.0)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Option<FieldElement> {
        if c.len() != self.inner.e as usize || c.iter().any(|&x| x >= self.inner.p) {
            return None;
        }
        Some(FieldElement(from_coeffs(&self.inner, c)))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.inner;
        if f.e == 1 {
            return FieldElement((a.0 + b.0) % f.p);
        }
        match &f.tables {
            Some(t) => FieldElement(t.add[(a.0 * f.q + b.0) as usize]),
            None => FieldElement(slow_add(f, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let f = &*self.inner;
        match &f.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(slow_neg(f, a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.inner;
        if f.e == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % f.p as u64) as u32);
        }
        match &f.tables {
            Some(t) => FieldElement(t.mul[(a.0 * f.q + b.0) as usize]),
            None => FieldElement(slow_mul(f, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let f = &*self.inner;
        Ok(match &f.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            None => FieldElement(slow_pow(f, a.0, f.q as u64 - 2)),
        })
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Polynomial-arithmetic product, bypassing the tables.
    pub fn mul_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(slow_mul(&self.inner, a.0, b.0))
    }

    /// Coefficientwise sum, bypassing the tables.
    pub fn add_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(slow_add(&self.inner, a.0, b.0))
    }
}

/// Dense polynomials over Z_p, low degree first.
mod zp {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2) is the inverse.
        let (mut base, mut acc, mut k) = (a as u64 % p as u64, 1u64, p as u64 - 2);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            k >>= 1;
        }
        acc as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * mi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    fn powmod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            k >>= 1;
        }
        acc
    }

    /// Ben-Or test: `f` of degree `d` is irreducible iff
    /// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= d/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        let mut xp = x.clone();
        for _ in 1..=d / 2 {
            xp = powmod(&xp, p as u64, f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn irreducibility_matches_root_check_for_small_degrees() {
            for p in [2u32, 3, 5] {
                for d in 2..=3usize {
                    let count = (p as usize).pow(d as u32);
                    for k in 0..count {
                        let mut f = vec![0u32; d + 1];
                        let mut r = k;
                        for c in f.iter_mut().take(d) {
                            *c = (r % p as usize) as u32;
                            r /= p as usize;
                        }
                        f[d] = 1;
                        let has_root = (0..p)
                            .any(|x| f.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) == 0);
                        assert_eq!(is_irreducible(&f, p), !has_root, "{f:?} over Z_{p}");
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.add(f2.one(), f2.one()), f2.zero());
        let f3 = make_field(3, 1).unwrap();
        let two = f3.constant(2);
        assert_eq!(f3.inv(two).unwrap(), two);
    }

    #[test]
    fn f4_modulus_and_product() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(x, x), x_plus_1);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::ZeroDegree);
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), Error::ZeroInverse);
        assert_eq!(Error::ZeroInverse.to_string(), "zero has no inverse");
        assert!(Error::NotPrime(4).to_string().contains("not prime"));
    }

    #[test]
    fn deterministic() {
        let a = make_field(3, 3).unwrap();
        let b = make_field(3, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn element_order_is_low_degree_first() {
        let f9 = make_field(3, 2).unwrap();
        let coeffs: Vec<Vec<u32>> = f9.elements().iter().map(|&a| f9.coeffs(a)).collect();
        assert_eq!(coeffs[0], vec![0, 0]);
        assert_eq!(coeffs[1], vec![0, 1]);
        assert_eq!(coeffs[3], vec![1, 0]);
        assert!(coeffs.windows(2).all(|w| w[0] < w[1]));
        for (i, &a) in f9.elements().iter().enumerate() {
            assert_eq!(f9.rank(a), i as u32);
        }
    }

    #[test]
    fn untabled_field_inverse() {
        let f = make_field(2, 10).unwrap();
        for i in [1u32, 2, 3, 500, 1023] {
            let a = f.element(i).unwrap();
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }
}
