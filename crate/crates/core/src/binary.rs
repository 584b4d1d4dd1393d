//! Closed-form binary cyclotomic coefficients a_pq(m).
//!
//! Every `0 ≤ m < pq` has a p-part α ∈ [0, q) with αp ≡ m (mod q) and a
//! q-part β ∈ [0, p) with βq ≡ m (mod p); then m = αp + βq − δpq with
//! δ ∈ {0, 1}. With ρ, σ defined by 1 + pq = (ρ+1)p + (σ+1)q the coefficient
//! is +1 when α ≤ ρ and β ≤ σ, −1 when α > ρ and β > σ, and 0 otherwise.

use crate::arith::{is_prime, mod_inverse};
use crate::{Error, Result};

/// p-part and q-part of an index below pq.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartPair {
    /// α ∈ [0, q−1] with α·p ≡ m (mod q).
    pub p_part: u64,
    /// β ∈ [0, p−1] with β·q ≡ m (mod p).
    pub q_part: u64,
}

/// Precomputed data for evaluating coefficients of Φ_pq.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryContext {
    p: u64,
    q: u64,
    pq: u64,
    rho: u64,
    sigma: u64,
    p_inv_mod_q: u64,
    q_inv_mod_p: u64,
}

impl BinaryContext {
    /// Context for odd primes `2 < p < q`.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if !(2 < p && p < q && is_prime(p) && is_prime(q)) {
            return Err(Error::InvalidPrimes(format!("need odd primes p < q, got ({p}, {q})")));
        }
        let pq = p.checked_mul(q).ok_or(Error::Overflow)?;
        let p_inv_mod_q = mod_inverse(p as i64, q)?;
        let q_inv_mod_p = mod_inverse(q as i64, p)?;

        // Solve 1 + pq = (ρ+1)p + (σ+1)q directly: (ρ+1)p ≡ 1 (mod q) pins ρ+1.
        let rho_plus_one = p_inv_mod_q;
        let rest = 1 + pq - rho_plus_one * p;
        debug_assert_eq!(rest % q, 0);
        let sigma_plus_one = rest / q;
        let (rho, sigma) = (rho_plus_one - 1, sigma_plus_one - 1);

        let ctx = Self {
            p,
            q,
            pq,
            rho,
            sigma,
            p_inv_mod_q,
            q_inv_mod_p,
        };
        // ρ and σ are also the p- and q-parts of (p−1)(q−1).
        let check = ctx.parts_unchecked((p - 1) * (q - 1));
        if check.p_part != rho || check.q_part != sigma || rho > q - 2 || sigma > p - 2 {
            return Err(Error::InvalidPrimes(format!(
                "inconsistent (rho, sigma) for ({p}, {q})"
            )));
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn pq(&self) -> u64 {
        self.pq
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    #[inline]
    pub(crate) fn parts_unchecked(&self, m: u64) -> PartPair {
        let p_part = ((m % self.q) as u128 * self.p_inv_mod_q as u128 % self.q as u128) as u64;
        let q_part = ((m % self.p) as u128 * self.q_inv_mod_p as u128 % self.p as u128) as u64;
        PartPair { p_part, q_part }
    }

    fn check_index(&self, m: u64) -> Result<()> {
        if m >= self.pq {
            return Err(Error::OutOfRange {
                index: m,
                bound: self.pq,
            });
        }
        Ok(())
    }

    pub fn parts(&self, m: u64) -> Result<PartPair> {
        self.check_index(m)?;
        Ok(self.parts_unchecked(m))
    }

    /// Sign class of an index from its parts: +1 if both parts are at most
    /// (ρ, σ), −1 if both exceed them, 0 for mixed parts.
    #[inline]
    pub fn sign_class(&self, parts: PartPair) -> i8 {
        match (parts.p_part <= self.rho, parts.q_part <= self.sigma) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        }
    }

    /// The index reconstructed from its parts: αp + βq, minus pq when that
    /// sum reaches pq.
    #[inline]
    pub fn reconstruct(&self, parts: PartPair) -> u64 {
        let s = parts.p_part * self.p + parts.q_part * self.q;
        if s >= self.pq {
            s - self.pq
        } else {
            s
        }
    }

    /// Coefficient of xᵐ in Φ_pq.
    pub fn coeff(&self, m: u64) -> Result<i8> {
        self.check_index(m)?;
        let PartPair { p_part, q_part } = self.parts_unchecked(m);
        let sum = p_part * self.p + q_part * self.q;
        Ok(if p_part <= self.rho && q_part <= self.sigma && sum == m {
            1
        } else if p_part > self.rho && q_part > self.sigma && sum == m + self.pq {
            -1
        } else {
            0
        })
    }

    /// Kaplan's truncated coefficient bᵢ for the ternary index `k` and the
    /// third prime `r`, evaluated from the parts of `i`:
    /// +1 if both parts are small and αp + βq ≤ k/r, −1 if both are large and
    /// αp + βq − pq ≤ k/r, else 0.
    pub fn b_value(&self, i: u64, k: u64, r: u64) -> Result<i8> {
        self.check_index(i)?;
        let PartPair { p_part, q_part } = self.parts_unchecked(i);
        let sum = (p_part * self.p + q_part * self.q) as u128;
        let (k, r) = (k as u128, r as u128);
        Ok(if p_part <= self.rho && q_part <= self.sigma && r * sum <= k {
            1
        } else if p_part > self.rho && q_part > self.sigma && r * (sum - self.pq as u128) <= k {
            -1
        } else {
            0
        })
    }

    /// bᵢ in its truncation form: a_pq(i) when r·i ≤ k, else 0.
    pub fn b_truncated(&self, i: u64, k: u64, r: u64) -> Result<i8> {
        let c = self.coeff(i)?;
        Ok(if (r as u128) * (i as u128) <= k as u128 { c } else { 0 })
    }
}

/// Coefficient of xᵐ in Φ_pq for odd primes p < q.
pub fn binary_coeff(m: u64, ctx: &BinaryContext) -> Result<i8> {
    ctx.coeff(m)
}
