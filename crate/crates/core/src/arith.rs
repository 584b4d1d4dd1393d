//! Exact 64-bit integer utilities: primality, factorization, totient,
//! modular inverses and two-modulus CRT.

use crate::{Error, Result};

/// Miller-Rabin witnesses that make the test deterministic for every u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test valid on the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `> after` in the progression `residue (mod modulus)`,
/// looking no further than `limit`.
pub fn prime_in_progression(residue: u64, modulus: u64, after: u64, limit: u64) -> Option<u64> {
    debug_assert!(modulus > 0);
    let residue = residue % modulus;
    let mut cand = if after < residue {
        residue
    } else {
        let base = after - after % modulus + residue;
        if base > after {
            base
        } else {
            base.checked_add(modulus)?
        }
    };
    while cand <= limit {
        if is_prime(cand) {
            return Some(cand);
        }
        cand = cand.checked_add(modulus)?;
    }
    None
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// primes are strictly increasing and that the product fits in 64 bits.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut prev = 1;
        for &(p, e) in &factors {
            if p <= prev || !is_prime(p) || e == 0 {
                return Err(Error::InvalidInput(format!("bad factor list {factors:?}")));
            }
            prev = p;
            let pe = p.checked_pow(e).ok_or(Error::Overflow)?;
            n = n.checked_mul(pe).ok_or(Error::Overflow)?;
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn with_multiplicity(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn distinct_odd(&self) -> usize {
        self.factors.iter().filter(|&&(p, _)| p != 2).count()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Squarefree divisors `d` of `n` with their Möbius sign μ(d).
    pub fn squarefree_divisors(&self) -> Vec<(u64, i8)> {
        let mut out = vec![(1u64, 1i8)];
        for p in self.primes() {
            let len = out.len();
            for i in 0..len {
                let (d, mu) = out[i];
                out.push((d * p, -mu));
            }
        }
        out
    }
}

/// Trial division; fine for everything up to ~10¹², slow beyond.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let original = n;
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    let mut d = 5u64;
    let mut last = 0;
    while n > 1 && d.saturating_mul(d) <= n {
        if n != last {
            if is_prime(n) {
                break;
            }
            last = n;
        }
        push(&mut n, d);
        push(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { n: original, factors }
}

/// Euler's totient from a factorization: Π p^(e−1)·(p−1).
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

/// Extended Euclid on signed 128-bit values: returns (g, x) with a·x ≡ g (mod m).
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

/// Inverse of `a` modulo `m`, as a residue in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("modulus {m} must be at least 2")));
    }
    let mi = m as i128;
    let a_red = (a as i128).rem_euclid(mi);
    let (g, x) = ext_gcd(a_red, mi);
    if g != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(x.rem_euclid(mi) as u64)
}

/// The unique residue modulo `m1·m2` congruent to `r1 (mod m1)` and
/// `r2 (mod m2)`.
pub fn crt2(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<u64> {
    if m1 == 0 || m2 == 0 || gcd(m1, m2) != 1 {
        return Err(Error::NotCoprime { m1, m2 });
    }
    let m = (m1 as u128)
        .checked_mul(m2 as u128)
        .filter(|&m| m <= u64::MAX as u128)
        .ok_or(Error::Overflow)?;
    if m1 == 1 {
        return Ok(r2 % m2);
    }
    let (r1, r2) = ((r1 % m1) as u128, (r2 % m2) as u128);
    let inv = mod_inverse((m1 % m2) as i64, m2).unwrap_or(0) as u128;
    // x = r1 + m1·t with t ≡ (r2 − r1)/m1 (mod m2)
    let diff = (r2 + m2 as u128 - r1 % m2 as u128) % m2 as u128;
    let t = diff * inv % m2 as u128;
    Ok(((r1 + m1 as u128 * t) % m) as u64)
}
