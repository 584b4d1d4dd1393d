//! Structural analysis of coefficient sequences.
//!
//! Two coefficient sets matter: 𝒞(f), the values c_k for 0 ≤ k ≤ deg f, and
//! 𝒞₀(f) = 𝒞(f) ∪ {0}. A polynomial is coefficient convex when 𝒞₀ is a run
//! of consecutive integers and strongly coefficient convex when 𝒞 is.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, Factorization};
use crate::kaplan::KaplanContext;
use crate::poly::CoeffVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffSummary {
    pub min: i64,
    pub max: i64,
    /// Sorted values of 𝒞.
    pub present: Vec<i64>,
    /// Sorted values of [min, max] missing from 𝒞.
    pub gaps: Vec<i64>,
    pub zero_included: bool,
    pub flat: bool,
    pub jump_one: bool,
    pub convex: bool,
    pub strongly_convex: bool,
}

/// Summary of a nonempty coefficient sequence.
pub fn coeff_set(f: &CoeffVector) -> CoeffSummary {
    summarize(f.coeffs())
}

/// Summary of a raw nonempty coefficient slice.
pub fn summarize(coeffs: &[i64]) -> CoeffSummary {
    assert!(!coeffs.is_empty(), "coefficient set of the zero polynomial");
    let min = *coeffs.iter().min().unwrap();
    let max = *coeffs.iter().max().unwrap();
    let width = (max - min) as usize + 1;
    let mut seen = vec![false; width];
    for &c in coeffs {
        seen[(c - min) as usize] = true;
    }
    let (mut present, mut gaps) = (Vec::new(), Vec::new());
    for (i, &s) in seen.iter().enumerate() {
        let v = min + i as i64;
        if s {
            present.push(v)
        } else {
            gaps.push(v)
        }
    }
    let zero_included = min <= 0 && 0 <= max && seen[(-min) as usize];
    // 𝒞₀ spans [min(min, 0), max(max, 0)]; the only gap it may fill is 0
    let convex = if min > 1 || max < -1 {
        false
    } else {
        gaps.iter().all(|&g| g == 0)
    };
    let flat = min >= -1 && max <= 1;
    CoeffSummary {
        min,
        max,
        zero_included,
        flat,
        jump_one: check_jump_one(coeffs).holds,
        convex,
        strongly_convex: gaps.is_empty(),
        present,
        gaps,
    }
}

/// Flat: 𝒞₀ ⊆ {−1, 0, 1}.
pub fn is_flat(s: &CoeffSummary) -> bool {
    s.min >= -1 && s.max <= 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JumpCheck {
    pub holds: bool,
    /// Smallest k ≥ 1 with |c_k − c_{k−1}| > 1.
    pub first_violation: Option<usize>,
}

/// Checks |c_k − c_{k−1}| ≤ 1 for 1 ≤ k ≤ deg.
pub fn check_jump_one(coeffs: &[i64]) -> JumpCheck {
    let first_violation = coeffs.windows(2).position(|w| (w[1] - w[0]).abs() > 1).map(|i| i + 1);
    JumpCheck {
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// Index k ≥ 1 maximizing |c_k − c_{k−1}|, with that jump (smallest k on ties).
pub fn largest_jump(coeffs: &[i64]) -> Option<(usize, u64)> {
    coeffs
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i + 1, (w[1] - w[0]).unsigned_abs()))
        .fold(None, |best, cur| match best {
            Some((_, j)) if j >= cur.1 => best,
            _ => Some(cur),
        })
}

/// Φ_pqr is coefficient optimal when max − min equals p.
pub fn is_coefficient_optimal(p: u64, s: &CoeffSummary) -> bool {
    (s.max - s.min) as u64 == p
}

/// At most three prime factors counted with multiplicity.
pub fn at_most_three_prime_factors(f: &Factorization) -> bool {
    f.with_multiplicity() <= 3
}

/// At most three distinct odd prime factors.
pub fn at_most_three_distinct_odd(f: &Factorization) -> bool {
    f.distinct_odd() <= 3
}

/// Largest |a_pqr(k)| found in a scan, with the lexicographically smallest
/// (q, r, k) attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeightWitness {
    pub height: u64,
    pub q: u64,
    pub r: u64,
    pub k: u64,
    pub value: i64,
}

impl HeightWitness {
    pub fn better_than(&self, other: &HeightWitness) -> bool {
        (self.height, std::cmp::Reverse((self.q, self.r, self.k)))
            > (other.height, std::cmp::Reverse((other.q, other.r, other.k)))
    }
}

/// Largest |a_pqr(k)| of one Φ_pqr with its smallest index. k runs over
/// [0, φ/2] only; the coefficient sequence is palindromic, so every value,
/// and its smallest index, occurs there.
pub fn height_for(ctx: &KaplanContext) -> HeightWitness {
    let t = ctx.triple();
    let half = t.degree() / 2;
    let mut best = HeightWitness {
        height: 0,
        q: t.q(),
        r: t.r(),
        k: 0,
        value: 0,
    };
    for k in 0..=half {
        let v = ctx.coeff(k);
        if v.unsigned_abs() > best.height {
            best.height = v.unsigned_abs();
            best.k = k;
            best.value = v;
        }
    }
    best
}

/// M(p) truncated to the primes p < q ≤ `q_max`, q < r ≤ `r_max`. `None`
/// when the grid holds no admissible (q, r).
pub fn height_scan(p: u64, q_max: u64, r_max: u64) -> Option<HeightWitness> {
    let primes: Vec<u64> = (p + 1..=r_max.max(q_max)).filter(|&x| is_prime(x)).collect();
    let pairs: Vec<(u64, u64)> = primes
        .iter()
        .filter(|&&q| q <= q_max)
        .flat_map(|&q| {
            primes
                .iter()
                .filter(move |&&r| r > q && r <= r_max)
                .map(move |&r| (q, r))
        })
        .collect();
    pairs
        .par_iter()
        .filter_map(|&(q, r)| KaplanContext::from_primes(p, q, r).ok())
        .map(|ctx| height_for(&ctx))
        .reduce_with(|a, b| if b.better_than(&a) { b } else { a })
}
