//! Cyclotomic polynomials, Gaussian binomials as polynomials in q, their
//! Knuth–Wilf factorization, and the clique-ratio polynomial
//! `h(q) = [n choose m]_q / [n-m+1 choose 1]_q`.
//!
//! `h` is carried two ways: as a map `t -> exponent of Phi_t` and as a
//! numerator/denominator pair `f / g` of monic polynomials. The two are
//! cross-checked by multiplying back against the Gaussian binomial.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, prime_power, prime_powers_up_to};
use crate::poly::IntPolynomial;

/// Memo table for `Phi_t`, built by exact division of `x^t - 1`.
#[derive(Debug, Default)]
pub struct Cyclotomics {
    cache: HashMap<u32, IntPolynomial>,
}

impl Cyclotomics {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Phi_t = (x^t - 1) / prod_{d | t, d < t} Phi_d`.
    pub fn get(&mut self, t: u32) -> Result<IntPolynomial> {
        if t < 1 {
            return Err(Error::InvalidParameters("cyclotomic index must be at least 1".into()));
        }
        if let Some(p) = self.cache.get(&t) {
            return Ok(p.clone());
        }
        let mut denom = IntPolynomial::one();
        for d in divisors(t as u64) {
            if d < t as u64 {
                denom = &denom * &self.get(d as u32)?;
            }
        }
        let phi = IntPolynomial::x_pow_minus_one(t as usize).exact_div(&denom)?;
        self.cache.insert(t, phi.clone());
        Ok(phi)
    }
}

pub fn cyclotomic(t: u32) -> Result<IntPolynomial> {
    Cyclotomics::new().get(t)
}

/// `prod_{i=1}^m (q^(n+1-i) - 1) / (q^i - 1)` as a polynomial in q.
pub fn gaussian_binomial_poly(n: u32, m: u32) -> Result<IntPolynomial> {
    if m > n {
        return Err(Error::InvalidParameters(format!("need 0 <= m <= n, got n={n}, m={m}")));
    }
    // After step i the running value is [n choose i], so each division is exact.
    let mut acc = IntPolynomial::one();
    for i in 1..=m {
        let num = IntPolynomial::x_pow_minus_one((n + 1 - i) as usize);
        let den = IntPolynomial::x_pow_minus_one(i as usize);
        acc = (&acc * &num).exact_div(&den)?;
    }
    Ok(acc)
}

/// `[n choose m]_q` evaluated exactly at an integer `q`; zero when `m > n`.
pub fn gaussian_binomial_at(n: u32, m: u32, q: u64) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=m {
        num *= q.pow(n + 1 - i) - 1u32;
        den *= q.pow(i) - 1u32;
    }
    num / den
}

/// Exponents of cyclotomic factors; zero exponents are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CycloFactorization {
    exponents: BTreeMap<u32, i32>,
}

impl CycloFactorization {
    pub fn from_exponents(it: impl IntoIterator<Item = (u32, i32)>) -> Self {
        Self { exponents: it.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    pub fn exponent(&self, t: u32) -> i32 {
        self.exponents.get(&t).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u32, i32> {
        &self.exponents
    }

    /// `(numerator, denominator)`: products of `Phi_t^|e|` over positive and
    /// negative exponents respectively.
    pub fn split(&self, cyc: &mut Cyclotomics) -> Result<(IntPolynomial, IntPolynomial)> {
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for (&t, &e) in &self.exponents {
            let phi = cyc.get(t)?.pow(e.unsigned_abs());
            if e > 0 {
                num = &num * &phi;
            } else {
                den = &den * &phi;
            }
        }
        Ok((num, den))
    }

    /// Human-readable product, e.g. `Phi_3 * Phi_4 / Phi_2`.
    pub fn render(&self) -> String {
        let term = |t: u32, e: i32| {
            if e.abs() == 1 {
                format!("Phi_{t}")
            } else {
                format!("Phi_{t}^{}", e.abs())
            }
        };
        let num: Vec<String> = self.exponents.iter().filter(|(_, &e)| e > 0).map(|(&t, &e)| term(t, e)).collect();
        let den: Vec<String> = self.exponents.iter().filter(|(_, &e)| e < 0).map(|(&t, &e)| term(t, e)).collect();
        let num = if num.is_empty() { "1".to_string() } else { num.join(" * ") };
        if den.is_empty() {
            num
        } else {
            format!("{num} / ({})", den.join(" * "))
        }
    }
}

fn floor_sum(n: u32, a: u32, b: u32, j: u32) -> i32 {
    (n / j) as i32 - (a / j) as i32 - (b / j) as i32
}

/// Exponent of `Phi_i` in `[n choose m]_q` is `floor(n/i) - floor(m/i) - floor((n-m)/i)`.
pub fn knuth_wilf_exponents(n: u32, m: u32) -> Result<CycloFactorization> {
    if m > n {
        return Err(Error::InvalidParameters(format!("need 0 <= m <= n, got n={n}, m={m}")));
    }
    Ok(CycloFactorization::from_exponents((1..=n).map(|i| (i, floor_sum(n, m, n - m, i)))))
}

/// Clique number of `J_q(n, m)` as a polynomial in q.
pub fn omega_poly(n: u32, m: u32) -> Result<IntPolynomial> {
    if m < 1 || m >= n {
        return Err(Error::InvalidParameters(format!("need 1 <= m < n, got n={n}, m={m}")));
    }
    let k = if n >= 2 * m { n - m + 1 } else { m + 1 };
    IntPolynomial::x_pow_minus_one(k as usize).exact_div(&IntPolynomial::from_i64(&[-1, 1]))
}

/// Clique number of `J_q(n, m)` evaluated at `q`.
pub fn omega_at(n: u32, m: u32, q: u64) -> BigInt {
    let k = if n >= 2 * m { n - m + 1 } else { m + 1 };
    gaussian_binomial_at(k, 1, q)
}

fn check_h_params(n: u32, m: u32) -> Result<()> {
    if !(4 <= 2 * m && 2 * m <= n) {
        return Err(Error::InvalidParameters(format!("need 4 <= 2m <= n, got n={n}, m={m}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct HReport {
    pub n: u32,
    pub m: u32,
    /// `gcd(m, n - m + 1)`
    pub gcd_value: u32,
    pub exponent_map: CycloFactorization,
    pub h: String,
    pub f: IntPolynomial,
    pub g: IntPolynomial,
    pub f1: IntPolynomial,
    pub r: IntPolynomial,
    pub applicable: bool,
    /// Exponent of `Phi_gcd` in h when applicable.
    pub gcd_exponent: Option<i32>,
    pub remainder_nonzero: bool,
    /// `f * omega == g * [n choose m]` holds as polynomials.
    pub cross_check: bool,
}

impl HReport {
    /// All properties the theory guarantees in the applicable case hold.
    pub fn consistent(&self) -> bool {
        self.cross_check && (!self.applicable || (self.gcd_exponent == Some(-1) && self.remainder_nonzero))
    }
}

/// Exponent-wise `h(q)`, its `f / g` split, and the division `f = g f1 + r`.
pub fn h_report(n: u32, m: u32) -> Result<HReport> {
    check_h_params(n, m)?;
    let top = n - m + 1;
    let exps = (2..=n).map(|j| {
        let e = if j <= top { floor_sum(n, m, top, j) } else { floor_sum(n, m, n - m, j) };
        (j, e)
    });
    let exponent_map = CycloFactorization::from_exponents(exps);
    let mut cyc = Cyclotomics::new();
    let (f, g) = exponent_map.split(&mut cyc)?;
    let (f1, r) = f.div_rem(&g)?;

    let binom = gaussian_binomial_poly(n, m)?;
    let omega = omega_poly(n, m)?;
    let cross_check = &f * &omega == &g * &binom;

    let gcd_value = gcd(m as u64, top as u64) as u32;
    let applicable = gcd_value >= 2;
    let gcd_exponent = applicable.then(|| exponent_map.exponent(gcd_value));
    Ok(HReport {
        n,
        m,
        gcd_value,
        h: exponent_map.render(),
        exponent_map,
        remainder_nonzero: !r.is_zero(),
        f,
        g,
        f1,
        r,
        applicable,
        gcd_exponent,
        cross_check,
    })
}

/// An exact rational value, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HValue {
    Integer(BigInt),
    Fraction { num: BigInt, den: BigInt },
}

impl HValue {
    pub fn ratio(num: &BigInt, den: &BigInt) -> Self {
        let g = num.gcd(den);
        let (mut a, mut b) = (num / &g, den / &g);
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        if b.is_one() {
            HValue::Integer(a)
        } else {
            HValue::Fraction { num: a, den: b }
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, HValue::Integer(_))
    }
}

impl std::fmt::Display for HValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HValue::Integer(v) => write!(f, "{v}"),
            HValue::Fraction { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl Serialize for HValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact `|V(J_q(n,m))| / omega(J_q(n,m))` with its unreduced parts.
#[derive(Debug, Clone, Serialize)]
pub struct Integrality {
    pub q: u64,
    pub vertices: String,
    pub omega: String,
    pub value: HValue,
}

pub fn h_integrality(n: u32, m: u32, q: u64) -> Result<Integrality> {
    check_h_params(n, m)?;
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let vertices = gaussian_binomial_at(n, m, q);
    let omega = omega_at(n, m, q);
    Ok(Integrality {
        q,
        value: HValue::ratio(&vertices, &omega),
        vertices: vertices.to_string(),
        omega: omega.to_string(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub q: u64,
    pub integer: bool,
    pub value: HValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub n: u32,
    pub m: u32,
    pub q_max: u64,
    pub applicable: bool,
    pub entries: Vec<ScanEntry>,
    /// Largest prime power tested where h(q) is an integer.
    pub largest_integer_q: Option<u64>,
}

impl ScanReport {
    pub fn all_non_integer(&self) -> bool {
        self.entries.iter().all(|e| !e.integer)
    }
}

/// Evaluates `h(q)` at every prime power `q <= q_max`. Evidence only: a clean
/// scan says nothing about larger q.
pub fn scan_core_threshold(n: u32, m: u32, q_max: u64) -> Result<ScanReport> {
    check_h_params(n, m)?;
    let mut entries: Vec<ScanEntry> = prime_powers_up_to(q_max)
        .into_par_iter()
        .map(|q| {
            let v = HValue::ratio(&gaussian_binomial_at(n, m, q), &omega_at(n, m, q));
            ScanEntry { q, integer: v.is_integer(), value: v }
        })
        .collect();
    entries.sort_by_key(|e| e.q);
    let largest_integer_q = entries.iter().rev().find(|e| e.integer).map(|e| e.q);
    Ok(ScanReport { n, m, q_max, applicable: gcd(m as u64, (n - m + 1) as u64) >= 2, entries, largest_integer_q })
}
