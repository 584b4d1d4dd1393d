//! Ternary coefficients a_pqr(k) through Kaplan's lemma:
//!
//! a_pqr(k) = Σ_{m=0}^{p−1} (b_f(m) − b_f(m+q)),  f(m) ≡ r⁻¹(k − m) (mod pq),
//!
//! where bᵢ is the binary coefficient a_pq(i) truncated to r·i ≤ k.
//! Each coefficient costs O(p) additions, independent of the degree.

use serde::Serialize;

use crate::arith::{euler_phi, factorize, is_prime, mod_inverse, prime_in_progression};
use crate::binary::{BinaryContext, PartPair};
use crate::{Error, Result};

/// Odd primes 2 < p < q < r whose product fits in 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeTriple {
    p: u64,
    q: u64,
    r: u64,
}

impl PrimeTriple {
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self> {
        if !(2 < p && p < q && q < r) {
            return Err(Error::InvalidPrimes(format!("need 2 < p < q < r, got ({p}, {q}, {r})")));
        }
        if let Some(x) = [p, q, r].into_iter().find(|&x| !is_prime(x)) {
            return Err(Error::InvalidPrimes(format!("{x} is not prime")));
        }
        p.checked_mul(q)
            .and_then(|pq| pq.checked_mul(r))
            .ok_or_else(|| Error::InvalidPrimes(format!("{p}·{q}·{r} overflows 64 bits")))?;
        Ok(Self { p, q, r })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn n(&self) -> u64 {
        self.p * self.q * self.r
    }

    /// φ(pqr) = (p−1)(q−1)(r−1), the degree of Φ_pqr.
    pub fn degree(&self) -> u64 {
        (self.p - 1) * (self.q - 1) * (self.r - 1)
    }
}

/// Everything needed to evaluate coefficients of one Φ_pqr.
#[derive(Debug, Clone, Copy)]
pub struct KaplanContext {
    triple: PrimeTriple,
    binary: BinaryContext,
    r_inv: u64,
    /// Parts of r⁻¹ mod pq; stepping m by one subtracts these from the parts
    /// of f(m).
    r_inv_parts: PartPair,
    /// q-part of q·r⁻¹; the p-part of q·r⁻¹ is zero, so f(m + q) shares the
    /// p-part of f(m).
    q_shift: u64,
}

impl KaplanContext {
    pub fn new(triple: PrimeTriple) -> Result<Self> {
        let binary = BinaryContext::new(triple.p, triple.q)?;
        let pq = binary.pq();
        let r_inv = mod_inverse((triple.r % pq) as i64, pq)?;
        let r_inv_parts = binary.parts_unchecked(r_inv);
        let shifted = binary.parts_unchecked(((triple.q as u128 * r_inv as u128) % pq as u128) as u64);
        debug_assert_eq!(shifted.p_part, 0);
        Ok(Self {
            triple,
            binary,
            r_inv,
            r_inv_parts,
            q_shift: shifted.q_part,
        })
    }

    pub fn from_primes(p: u64, q: u64, r: u64) -> Result<Self> {
        Self::new(PrimeTriple::new(p, q, r)?)
    }

    pub fn triple(&self) -> PrimeTriple {
        self.triple
    }

    pub fn binary(&self) -> &BinaryContext {
        &self.binary
    }

    pub fn r_inv(&self) -> u64 {
        self.r_inv
    }

    /// f(m): the representative of r⁻¹(k − m) in [0, pq).
    pub fn f_index(&self, m: u64, k: u64) -> u64 {
        let pq = self.binary.pq() as i128;
        let diff = (k as i128 - m as i128).rem_euclid(pq);
        (diff * self.r_inv as i128 % pq) as u64
    }

    /// a_pqr(k). Indices past the degree give 0.
    pub fn coeff(&self, k: u64) -> i64 {
        if k > self.triple.degree() {
            return 0;
        }
        self.kaplan_sum(k)
    }

    /// The Kaplan sum itself, walking the parts of f(m) and f(m + q)
    /// incrementally: only additions and comparisons in the loop.
    fn kaplan_sum(&self, k: u64) -> i64 {
        let b = &self.binary;
        let (p, q, pq) = (b.p(), b.q(), b.pq());
        let (rho, sigma) = (b.rho(), b.sigma());
        // r·i ≤ k  ⇔  i ≤ ⌊k/r⌋ for non-negative integers
        let limit = k / self.triple.r;

        let f0 = ((k % pq) as u128 * self.r_inv as u128 % pq as u128) as u64;
        let PartPair {
            p_part: mut alpha,
            q_part: mut beta,
        } = b.parts_unchecked(f0);
        let (da, db) = (self.r_inv_parts.p_part, self.r_inv_parts.q_part);
        let mut beta_q = (beta + p - self.q_shift) % p;

        let value = |alpha: u64, beta: u64| -> i64 {
            let s = alpha * p + beta * q;
            if alpha <= rho && beta <= sigma {
                i64::from(s <= limit)
            } else if alpha > rho && beta > sigma {
                -i64::from(s - pq <= limit)
            } else {
                0
            }
        };

        let mut total = 0i64;
        for _ in 0..p {
            total += value(alpha, beta) - value(alpha, beta_q);
            alpha = if alpha >= da { alpha - da } else { alpha + q - da };
            beta = if beta >= db { beta - db } else { beta + p - db };
            beta_q = if beta_q >= db { beta_q - db } else { beta_q + p - db };
        }
        total
    }

    /// a_pqr(k) for k in `lo..=hi`.
    pub fn coeff_range(&self, lo: u64, hi: u64) -> Vec<i64> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    /// The mirror index for the prime `t ≡ −r (mod pq)`, `t > pq`: writing
    /// `idx = ⌊idx/r⌋·r + n₀`, returns `⌊idx/r⌋·t + n₁` with
    /// `n₁ ≡ q + p − 1 − n₀ (mod pq)`, where a_pqt takes the value −a_pqr(idx).
    pub fn mirror_index(&self, idx: u64, t: u64) -> Result<u64> {
        let pq = self.binary.pq();
        if !is_prime(t) {
            return Err(Error::BadMirrorPrime { t, reason: "not prime" });
        }
        if t <= pq {
            return Err(Error::BadMirrorPrime {
                t,
                reason: "must exceed pq",
            });
        }
        if !(t + self.triple.r).is_multiple_of(pq) {
            return Err(Error::BadMirrorPrime {
                t,
                reason: "must be congruent to -r mod pq",
            });
        }
        PrimeTriple::new(self.triple.p, self.triple.q, t).map_err(|_| Error::BadMirrorPrime {
            t,
            reason: "p·q·t overflows",
        })?;
        let r = self.triple.r;
        let (blocks, n0) = (idx / r, idx % r);
        let shift = (self.triple.q + self.triple.p - 1) as i128;
        let n1 = (shift - n0 as i128).rem_euclid(pq as i128) as u64;
        blocks
            .checked_mul(t)
            .and_then(|x| x.checked_add(n1))
            .ok_or(Error::Overflow)
    }

    /// Smallest admissible mirror prime t ≤ `limit`.
    pub fn find_mirror_prime(&self, limit: u64) -> Result<u64> {
        let pq = self.binary.pq();
        let residue = (pq - self.triple.r % pq) % pq;
        prime_in_progression(residue, pq, pq, limit).ok_or(Error::SearchExhausted { limit })
    }
}

/// a_pqr(k) for a validated context.
pub fn ternary_coeff(k: u64, ctx: &KaplanContext) -> i64 {
    ctx.coeff(k)
}

/// The Kaplan sum evaluated literally: f(m) by modular arithmetic and bᵢ as
/// a truncated binary coefficient. Independent of the incremental walk in
/// [`KaplanContext::coeff`]; also valid past the degree.
pub fn ternary_coeff_direct(k: u64, ctx: &KaplanContext) -> i64 {
    let (b, r, p, q) = (ctx.binary(), ctx.triple.r, ctx.triple.p, ctx.triple.q);
    (0..p)
        .map(|m| {
            let i = ctx.f_index(m, k);
            let j = ctx.f_index(m + q, k);
            (b.b_truncated(i, k, r).unwrap() - b.b_truncated(j, k, r).unwrap()) as i64
        })
        .sum()
}

/// φ(pqr) computed from the factorization, for cross-checks.
pub fn ternary_degree(triple: &PrimeTriple) -> u64 {
    euler_phi(&factorize(triple.n()))
}
