//! Dense integer polynomials and full expansions of Φₙ and Ψₙ.
//!
//! [`cyclotomic_poly`] and [`inverse_cyclotomic_poly`] expand the Möbius
//! product Φₙ = Π_{d|n} (1 − x^d)^μ(n/d) as a truncated power series: each
//! factor costs one linear pass, so Φₙ takes O(2^ω(n)·φ(n)) word operations.
//! Only half of each polynomial is expanded; the rest follows from
//! palindromy (Φₙ) or antipalindromy (Ψₙ), and non-squarefree n reduce to
//! their radical via Φₙ(x) = Φ_rad(n)(x^(n/rad n)).
//!
//! [`DivisionOracle`] builds the same polynomials the classical way, dividing
//! xⁿ − 1 by every Φ_d with d a proper divisor of n. It shares no code with
//! the product route and is what the tests check that route against.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::arith::{euler_phi, factorize};
use crate::{Error, Result};

/// Default bound on the degree of any expanded polynomial.
pub const DEFAULT_CAP: u64 = 1 << 22;

/// Integer coefficients indexed by degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffVector {
    /// Index of the polynomial (n for Φₙ or Ψₙ), 0 when anonymous.
    label: u64,
    coeffs: Vec<i64>,
}

impl CoeffVector {
    pub fn new(label: u64, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { label, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    /// xⁿ − 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Self::new(0, coeffs)
    }

    pub fn with_label(mut self, label: u64) -> Self {
        self.label = label;
        self
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of xᵏ; zero past the degree.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn max_abs(&self) -> u64 {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    /// Exact product. Falls back to checked arithmetic when the coefficient
    /// bound cannot rule out overflow.
    pub fn mul(&self, other: &CoeffVector) -> Result<CoeffVector> {
        if self.is_zero() || other.is_zero() {
            return Ok(CoeffVector::zero());
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = vec![0i64; a.len() + b.len() - 1];
        let bound = (self.max_abs() as u128) * (other.max_abs() as u128) * (a.len().min(b.len()) as u128);
        if bound <= i64::MAX as u128 {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out[i..].iter_mut().zip(b) {
                    *o += x * y;
                }
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    let t = x.checked_mul(y).ok_or(Error::Overflow)?;
                    out[i + j] = out[i + j].checked_add(t).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(CoeffVector::new(0, out))
    }
}

/// Multiplies the series in place by (1 − x^d).
fn mul_one_minus(c: &mut [i64], d: usize) -> Result<()> {
    for k in (d..c.len()).rev() {
        c[k] = c[k].checked_sub(c[k - d]).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Divides the series in place by (1 − x^d), i.e. multiplies by Σ x^(jd).
fn div_one_minus(c: &mut [i64], d: usize) -> Result<()> {
    for k in d..c.len() {
        c[k] = c[k].checked_add(c[k - d]).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// First `len` coefficients of Π (1 − x^d)^e over `factors`, e = ±1.
/// Multiplications and divisions are interleaved so partial products stay
/// close to the size of the final coefficients.
fn binomial_series(factors: &[(u64, i8)], len: usize) -> Result<Vec<i64>> {
    let mut c = vec![0i64; len];
    if len == 0 {
        return Ok(c);
    }
    c[0] = 1;
    let (mut up, mut down): (Vec<u64>, Vec<u64>) = (Vec::new(), Vec::new());
    for &(d, e) in factors {
        if e > 0 {
            up.push(d)
        } else {
            down.push(d)
        }
    }
    let mut up = up.into_iter();
    let mut down = down.into_iter();
    loop {
        let (u, v) = (up.next(), down.next());
        if u.is_none() && v.is_none() {
            break;
        }
        for (d, is_mul) in [(u, true), (v, false)] {
            let Some(d) = d else { continue };
            let d = d as usize;
            if d >= len {
                continue;
            }
            if is_mul {
                mul_one_minus(&mut c, d)?;
            } else {
                div_one_minus(&mut c, d)?;
            }
        }
    }
    Ok(c)
}

/// Expands half of a (anti)palindromic polynomial of the given degree and
/// mirrors it. `sign` is +1 for palindromic, −1 for antipalindromic.
fn mirrored(factors: &[(u64, i8)], degree: usize, sign: i64, scale: i64) -> Result<Vec<i64>> {
    let half = degree / 2;
    let mut c = binomial_series(factors, half + 1)?;
    if scale != 1 {
        for x in &mut c {
            *x *= scale;
        }
    }
    c.resize(degree + 1, 0);
    for k in half + 1..=degree {
        c[k] = sign * c[degree - k];
    }
    if sign < 0 && degree.is_multiple_of(2) {
        debug_assert_eq!(c[half], 0, "antipalindromic middle coefficient");
    }
    Ok(c)
}

/// Replaces x by x^e.
fn stretch(c: Vec<i64>, e: usize) -> Vec<i64> {
    if e == 1 || c.is_empty() {
        return c;
    }
    let mut out = vec![0i64; (c.len() - 1) * e + 1];
    for (k, v) in c.into_iter().enumerate() {
        out[k * e] = v;
    }
    out
}

/// Φₙ with the default degree cap.
pub fn cyclotomic_poly(n: u64) -> Result<CoeffVector> {
    cyclotomic_poly_capped(n, DEFAULT_CAP)
}

/// Φₙ, refusing when φ(n) exceeds `cap`.
pub fn cyclotomic_poly_capped(n: u64, cap: u64) -> Result<CoeffVector> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n == 1 {
        return Ok(CoeffVector::new(1, vec![-1, 1]));
    }
    let f = factorize(n);
    let degree = euler_phi(&f);
    if degree > cap {
        return Err(Error::TooLarge { degree, cap });
    }
    let rad = f.radical();
    let rf = factorize(rad);
    let mu_rad: i8 = if rf.distinct().is_multiple_of(2) { 1 } else { -1 };
    // μ(rad/d) = μ(rad)·μ(d) for squarefree rad
    let factors: Vec<(u64, i8)> = rf
        .squarefree_divisors()
        .into_iter()
        .map(|(d, mu)| (d, mu * mu_rad))
        .collect();
    let base = mirrored(&factors, euler_phi(&rf) as usize, 1, 1)?;
    Ok(CoeffVector::new(n, stretch(base, (n / rad) as usize)))
}

/// Ψₙ = (xⁿ − 1)/Φₙ with the default degree cap.
pub fn inverse_cyclotomic_poly(n: u64) -> Result<CoeffVector> {
    inverse_cyclotomic_poly_capped(n, DEFAULT_CAP)
}

/// Ψₙ, refusing when n − φ(n) exceeds `cap`.
pub fn inverse_cyclotomic_poly_capped(n: u64, cap: u64) -> Result<CoeffVector> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n == 1 {
        return Ok(CoeffVector::new(1, vec![1]));
    }
    let f = factorize(n);
    let degree = n - euler_phi(&f);
    if degree > cap {
        return Err(Error::TooLarge { degree, cap });
    }
    let rad = f.radical();
    let rf = factorize(rad);
    let mu_rad: i8 = if rf.distinct().is_multiple_of(2) { 1 } else { -1 };
    // Ψ = −Π_{d|n, d<n} (1 − x^d)^(−μ(n/d))
    let factors: Vec<(u64, i8)> = rf
        .squarefree_divisors()
        .into_iter()
        .filter(|&(d, _)| d != rad)
        .map(|(d, mu)| (d, -mu * mu_rad))
        .collect();
    let base = mirrored(&factors, (rad - euler_phi(&rf)) as usize, -1, -1)?;
    Ok(CoeffVector::new(n, stretch(base, (n / rad) as usize)))
}

/// f(−x): coefficient j is multiplied by (−1)ʲ.
pub fn negate_variable(f: &CoeffVector) -> CoeffVector {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| if j % 2 == 1 { -c } else { c })
        .collect();
    CoeffVector::new(f.label, coeffs)
}

/// Quotient of an exact division by a polynomial with leading coefficient ±1.
pub fn exact_div(num: &CoeffVector, den: &CoeffVector) -> Result<CoeffVector> {
    let dd = den
        .degree()
        .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
    let lead = den.coeffs[dd];
    if lead.abs() != 1 {
        return Err(Error::InvalidInput(format!("leading coefficient {lead} is not ±1")));
    }
    let Some(nd) = num.degree() else {
        return Ok(CoeffVector::zero());
    };
    if nd < dd {
        return Err(Error::InexactDivision);
    }
    let mut rem = num.coeffs.clone();
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let t = rem[i + dd] * lead;
        if t == 0 {
            continue;
        }
        quot[i] = t;
        for (j, &d) in den.coeffs.iter().enumerate() {
            let v = t.checked_mul(d).ok_or(Error::Overflow)?;
            rem[i + j] = rem[i + j].checked_sub(v).ok_or(Error::Overflow)?;
        }
    }
    if rem.iter().any(|&r| r != 0) {
        return Err(Error::InexactDivision);
    }
    Ok(CoeffVector::new(0, quot))
}

/// Memoized Φₙ by repeated exact division of xⁿ − 1. Safe to share across
/// threads; the memo stops growing once it holds `budget` coefficients.
#[derive(Debug)]
pub struct DivisionOracle {
    memo: RwLock<HashMap<u64, Arc<CoeffVector>>>,
    stored: RwLock<u64>,
    budget: u64,
    cap: u64,
}

impl Default for DivisionOracle {
    fn default() -> Self {
        Self::new(DEFAULT_CAP, 1 << 24)
    }
}

impl DivisionOracle {
    pub fn new(cap: u64, budget: u64) -> Self {
        Self {
            memo: RwLock::new(HashMap::new()),
            stored: RwLock::new(0),
            budget,
            cap,
        }
    }

    pub fn cyclotomic(&self, n: u64) -> Result<Arc<CoeffVector>> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if let Some(hit) = self.memo.read().unwrap().get(&n) {
            return Ok(Arc::clone(hit));
        }
        let degree = euler_phi(&factorize(n));
        if degree > self.cap {
            return Err(Error::TooLarge { degree, cap: self.cap });
        }
        let mut quot = CoeffVector::x_pow_minus_one(n as usize);
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            quot = exact_div(&quot, self.cyclotomic(d)?.as_ref())?;
        }
        let value = Arc::new(quot.with_label(n));
        let len = value.coeffs().len() as u64;
        let mut stored = self.stored.write().unwrap();
        if *stored + len <= self.budget {
            let mut memo = self.memo.write().unwrap();
            if memo.insert(n, Arc::clone(&value)).is_none() {
                *stored += len;
            }
        }
        Ok(value)
    }

    /// Ψₙ as (xⁿ − 1)/Φₙ.
    pub fn inverse_cyclotomic(&self, n: u64) -> Result<CoeffVector> {
        let phi = self.cyclotomic(n)?;
        Ok(exact_div(&CoeffVector::x_pow_minus_one(n as usize), &phi)?.with_label(n))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }
}
