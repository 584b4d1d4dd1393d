//! Explicit coefficient-optimal ternary families.
//!
//! Möller's family: p > 3, q ≡ 2 (mod p), r ≡ (p−1)/2 (mod p) and
//! r ≡ (q−1)/2 (mod q). With k = (p−1)(qr+1)/2 one has a(k) = (p+1)/2 and
//! a(k−r) = −(p−1)/2, and 𝒞(pqr) is exactly [−(p−1)/2, (p+1)/2].
//!
//! The mirror family swaps the residues of r to (p+1)/2 and (q+1)/2 and moves
//! k up by q; both distinguished values flip sign.

use serde::Serialize;

use crate::arith::{crt2, is_prime, prime_in_progression};
use crate::kaplan::KaplanContext;
use crate::poly::cyclotomic_poly_capped;
use crate::props::{check_jump_one, coeff_set, is_coefficient_optimal, CoeffSummary};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Möller's family, maximum coefficient (p+1)/2.
    #[value(name = "lemma4")]
    #[serde(rename = "lemma4")]
    Moller,
    /// The sign-flipped family, minimum coefficient −(p+1)/2.
    #[value(name = "lemma6")]
    #[serde(rename = "lemma6")]
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub n: u64,
    /// The distinguished index.
    pub k: u64,
    /// Expected a(k).
    pub expected_hi: i64,
    /// Expected a(lo_index).
    pub expected_lo: i64,
    /// k − r.
    pub lo_index: u64,
}

impl FamilyInstance {
    /// Builds the instance for given primes, checking every congruence.
    pub fn new(kind: FamilyKind, p: u64, q: u64, r: u64) -> Result<Self> {
        let half_down = (p - 1) / 2;
        let half_up = p.div_ceil(2);
        let ok = p > 3
            && q % p == 2
            && r > q
            && [p, q, r].iter().all(|&x| is_prime(x))
            && match kind {
                FamilyKind::Moller => r % p == half_down && r % q == (q - 1) / 2,
                FamilyKind::Mirror => r % p == half_up && r % q == q.div_ceil(2),
            };
        if !ok {
            return Err(Error::InvalidPrimes(format!(
                "({p}, {q}, {r}) does not satisfy the {kind:?} family congruences"
            )));
        }
        let base = (p - 1)
            .checked_mul(q.checked_mul(r).ok_or(Error::Overflow)? + 1)
            .ok_or(Error::Overflow)?
            / 2;
        let (k, expected_hi, expected_lo) = match kind {
            FamilyKind::Moller => (base, half_up as i64, -(half_down as i64)),
            FamilyKind::Mirror => (base + q, -(half_up as i64), half_down as i64),
        };
        Ok(Self {
            kind,
            p,
            q,
            r,
            n: p * q * r,
            k,
            expected_hi,
            expected_lo,
            lo_index: k - r,
        })
    }

    /// The predicted coefficient set as an inclusive integer range.
    pub fn predicted_range(&self) -> (i64, i64) {
        let (lo, hi) = ((self.p as i64 - 1) / 2, (self.p as i64 + 1) / 2);
        match self.kind {
            FamilyKind::Moller => (-lo, hi),
            FamilyKind::Mirror => (-hi, lo),
        }
    }
}

/// Smallest q, then smallest r, completing a family instance for `p`.
pub fn find_family_instance(kind: FamilyKind, p: u64, search_limit: u64) -> Result<FamilyInstance> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::InvalidPrimes(format!("p must be a prime > 3, got {p}")));
    }
    let exhausted = Error::SearchExhausted { limit: search_limit };
    let q = prime_in_progression(2, p, p, search_limit).ok_or(exhausted.clone())?;
    let (rp, rq) = match kind {
        FamilyKind::Moller => ((p - 1) / 2, (q - 1) / 2),
        FamilyKind::Mirror => (p.div_ceil(2), q.div_ceil(2)),
    };
    let residue = crt2(rp, p, rq, q)?;
    let r = prime_in_progression(residue, p * q, q, search_limit).ok_or(exhausted)?;
    FamilyInstance::new(kind, p, q, r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub instance: FamilyInstance,
    pub kaplan_hi: i64,
    pub kaplan_lo: i64,
    /// Oracle values, when φ(n) is within the cap.
    pub oracle_hi: Option<i64>,
    pub oracle_lo: Option<i64>,
    /// Möller family only: (index (p−3)(qr+1)/2, Kaplan value there).
    pub lehmer: Option<(u64, i64)>,
    pub matches: bool,
}

/// Evaluates both distinguished coefficients by Kaplan's sum and, when
/// φ(n) ≤ `cap`, by full expansion.
pub fn verify_family(inst: &FamilyInstance, cap: u64) -> Result<FamilyReport> {
    let ctx = KaplanContext::from_primes(inst.p, inst.q, inst.r)?;
    let kaplan_hi = ctx.coeff(inst.k);
    let kaplan_lo = ctx.coeff(inst.lo_index);
    let (oracle_hi, oracle_lo) = match cyclotomic_poly_capped(inst.n, cap) {
        Ok(f) => (Some(f.coeff(inst.k as usize)), Some(f.coeff(inst.lo_index as usize))),
        Err(Error::TooLarge { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    let lehmer = match inst.kind {
        FamilyKind::Moller => {
            let idx = (inst.p - 3) * (inst.q * inst.r + 1) / 2;
            Some((idx, ctx.coeff(idx)))
        }
        FamilyKind::Mirror => None,
    };
    let p = inst.p as i64;
    let matches = kaplan_hi == inst.expected_hi
        && kaplan_lo == inst.expected_lo
        && oracle_hi.is_none_or(|v| v == kaplan_hi)
        && oracle_lo.is_none_or(|v| v == kaplan_lo)
        && lehmer.is_none_or(|(_, v)| v == (p - 1) / 2)
        && kaplan_hi.abs() <= p
        && kaplan_lo.abs() <= p;
    Ok(FamilyReport {
        instance: *inst,
        kaplan_hi,
        kaplan_lo,
        oracle_hi,
        oracle_lo,
        lehmer,
        matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalRangeReport {
    pub summary: CoeffSummary,
    pub predicted: (i64, i64),
    /// 𝒞(n) equals the predicted range.
    pub set_matches: bool,
    /// Every value of the range occurs among a(k−r), …, a(k).
    pub window_covers: bool,
    /// Neighbouring coefficients in the window differ by at most one.
    pub window_jump_one: bool,
    pub optimal: bool,
}

/// Full coefficient set of Φₙ checked against the predicted range.
pub fn verify_optimal_range(inst: &FamilyInstance, cap: u64) -> Result<OptimalRangeReport> {
    let f = cyclotomic_poly_capped(inst.n, cap)?;
    let summary = coeff_set(&f);
    let predicted = inst.predicted_range();
    let range: Vec<i64> = (predicted.0..=predicted.1).collect();
    let window = &f.coeffs()[inst.lo_index as usize..=inst.k as usize];
    let window_covers = range.iter().all(|v| window.contains(v));
    Ok(OptimalRangeReport {
        set_matches: summary.present == range,
        window_covers,
        window_jump_one: check_jump_one(window).holds,
        optimal: is_coefficient_optimal(inst.p, &summary),
        summary,
        predicted,
    })
}
