//! Numerical semigroups S(a₁, …, a_m) of non-negative integer combinations,
//! their Frobenius numbers and semigroup polynomials P_S = (1 − x)·Σ_{s∈S} xˢ.
//!
//! For coprime p, q the semigroup polynomial of S(p, q) is Φ_pq, so the
//! binary coefficient a_pq(k) is member(k) − member(k − 1).

use serde::Serialize;

use crate::arith::gcd;
use crate::poly::{cyclotomic_poly_capped, exact_div, CoeffVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupTable {
    generators: Vec<u64>,
    /// membership[k] for 0 ≤ k ≤ bound.
    #[serde(skip)]
    membership: Vec<bool>,
    /// gcd of the generators; non-members beyond `bound` are exactly the
    /// non-multiples of it.
    gcd: u64,
    /// Largest non-member; −1 for the full semigroup, `None` when the
    /// generators share a factor.
    frobenius: Option<i64>,
    bound: u64,
}

/// Additive closure of the generators, extended until `min_gen` consecutive
/// members certify that everything beyond is a member.
fn closure(gens: &[u64]) -> (Vec<bool>, i64) {
    let min_gen = gens[0] as usize;
    let mut member = vec![true];
    let mut run = 1usize;
    let mut frobenius = -1i64;
    while run < min_gen {
        let k = member.len();
        let m = gens.iter().any(|&g| g as usize <= k && member[k - g as usize]);
        member.push(m);
        if m {
            run += 1;
        } else {
            run = 0;
            frobenius = k as i64;
        }
    }
    (member, frobenius)
}

/// Membership table of S(generators).
pub fn build_table(generators: &[u64]) -> Result<SemigroupTable> {
    if generators.is_empty() || generators.contains(&0) {
        return Err(Error::InvalidInput(
            "generators must be a nonempty list of positive integers".into(),
        ));
    }
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
    let reduced: Vec<u64> = gens.iter().map(|&x| x / g).collect();
    let (reduced_member, reduced_frob) = closure(&reduced);
    let (membership, frobenius) = if g == 1 {
        (reduced_member, Some(reduced_frob))
    } else {
        // S = g·S(gens/g): spread the reduced table over multiples of g
        let len = (reduced_member.len() - 1) * g as usize + 1;
        let mut m = vec![false; len];
        for (j, &b) in reduced_member.iter().enumerate() {
            m[j * g as usize] = b;
        }
        (m, None)
    };
    let bound = membership.len() as u64 - 1;
    Ok(SemigroupTable {
        generators: gens,
        membership,
        gcd: g,
        frobenius,
        bound,
    })
}

impl SemigroupTable {
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn frobenius(&self) -> Option<i64> {
        self.frobenius
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn is_numerical(&self) -> bool {
        self.frobenius.is_some()
    }

    pub fn is_member(&self, k: i64) -> bool {
        if k < 0 {
            return false;
        }
        match self.membership.get(k as usize) {
            Some(&b) => b,
            None => (k as u64).is_multiple_of(self.gcd),
        }
    }

    /// Non-members in [0, bound]; for a numerical semigroup this is the
    /// whole (finite) complement.
    pub fn gaps(&self) -> Vec<u64> {
        (0..=self.bound).filter(|&k| !self.is_member(k as i64)).collect()
    }

    /// P_S = (1 − x)·H_S, of degree F(S) + 1.
    pub fn semigroup_polynomial(&self) -> Result<CoeffVector> {
        let frob = self
            .frobenius
            .ok_or_else(|| Error::NotNumerical(self.generators.clone()))?;
        let coeffs = (0..=frob + 1)
            .map(|k| i64::from(self.is_member(k)) - i64::from(self.is_member(k - 1)))
            .collect();
        Ok(CoeffVector::from_coeffs(coeffs))
    }

    /// member(k) − member(k − 1): +1 entering S, −1 leaving it.
    pub fn boundary_coefficient(&self, k: i64) -> i8 {
        self.is_member(k) as i8 - self.is_member(k - 1) as i8
    }

    /// Smallest m ≤ `m_max` for which H_S divides xᵐ − 1 as a power series,
    /// i.e. P_S divides (1 − x)(xᵐ − 1) exactly.
    pub fn divides_x_m_minus_one(&self, m_max: u64) -> Result<Option<u64>> {
        let ps = self.semigroup_polynomial()?;
        let one_minus_x = CoeffVector::from_coeffs(vec![1, -1]);
        for m in 1..=m_max {
            let target = one_minus_x.mul(&CoeffVector::x_pow_minus_one(m as usize))?;
            match exact_div(&target, &ps) {
                Ok(_) => return Ok(Some(m)),
                Err(Error::InexactDivision) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }
}

/// a_pq(k) from membership in S(p, q), for any coprime p, q ≥ 2.
pub fn binary_via_semigroup(p: u64, q: u64, k: i64) -> Result<i8> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::InvalidInput(format!("need coprime p, q ≥ 2, got ({p}, {q})")));
    }
    Ok(build_table(&[p, q])?.boundary_coefficient(k))
}

/// Outcome of testing whether Φₙ = (1 − x)·Σ_{s∈Sₙ} xˢ for some set Sₙ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicatorReport {
    pub n: u64,
    pub holds: bool,
    /// σ(k) = Σ_{i≤k} aₙ(i) for 0 ≤ k ≤ deg Φₙ.
    pub prefix_sums: Vec<i64>,
    /// Exponents k ≤ deg Φₙ in Sₙ (where σ(k) = 1), when Sₙ exists.
    pub exponents: Vec<u64>,
    /// Whether every k > deg Φₙ also belongs to Sₙ.
    pub contains_tail: bool,
}

/// Φₙ/(1 − x) has coefficient σ(k) at xᵏ, so Sₙ exists exactly when every
/// prefix sum is 0 or 1.
pub fn indicator_check(n: u64, cap: u64) -> Result<IndicatorReport> {
    let phi = cyclotomic_poly_capped(n, cap)?;
    let prefix_sums: Vec<i64> = phi
        .coeffs()
        .iter()
        .scan(0i64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let holds = prefix_sums.iter().all(|&s| s == 0 || s == 1);
    let (exponents, contains_tail) = if holds {
        let e = prefix_sums
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == 1)
            .map(|(k, _)| k as u64)
            .collect();
        (e, prefix_sums.last() == Some(&1))
    } else {
        (Vec::new(), false)
    };
    Ok(IndicatorReport {
        n,
        holds,
        prefix_sums,
        exponents,
        contains_tail,
    })
}
