//! Cross-checks between independent computation routes.

use cyclo_core::arith::{euler_phi, factorize, is_prime};
use cyclo_core::binary::{binary_coeff, BinaryContext};
use cyclo_core::kaplan::KaplanContext;
use cyclo_core::poly::{
    cyclotomic_poly, cyclotomic_poly_capped, inverse_cyclotomic_poly, negate_variable, CoeffVector, DivisionOracle,
};
use cyclo_core::props::{coeff_set, is_coefficient_optimal};
use cyclo_core::semigroup::build_table;

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&x| is_prime(x)).collect()
}

#[test]
fn phi_times_psi_is_x_n_minus_one() {
    for n in 1..=5000u64 {
        let prod = cyclotomic_poly(n)
            .unwrap()
            .mul(&inverse_cyclotomic_poly(n).unwrap())
            .unwrap();
        assert_eq!(
            prod.coeffs(),
            CoeffVector::x_pow_minus_one(n as usize).coeffs(),
            "n={n}"
        );
    }
}

#[test]
fn degrees_over_divisors_sum_to_n() {
    for n in 1..=5000u64 {
        let total: usize = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| cyclotomic_poly(d).unwrap().degree().unwrap())
            .sum();
        assert_eq!(total as u64, n);
    }
}

#[test]
fn phi_2n_is_phi_n_at_minus_x() {
    for n in (3..=5001u64).step_by(2) {
        assert_eq!(
            cyclotomic_poly(2 * n).unwrap().coeffs(),
            negate_variable(&cyclotomic_poly(n).unwrap()).coeffs(),
            "n={n}"
        );
    }
}

#[test]
fn symmetry_of_both_families() {
    for n in 2..=3000u64 {
        let phi = cyclotomic_poly(n).unwrap();
        let c = phi.coeffs();
        assert!(c.iter().eq(c.iter().rev()), "Φ{n} not palindromic");
        assert_eq!(phi.degree().unwrap() as u64, euler_phi(&factorize(n)));
        let psi = inverse_cyclotomic_poly(n).unwrap();
        let c = psi.coeffs();
        assert!(
            c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -*b),
            "Ψ{n} not antipalindromic"
        );
    }
}

#[test]
fn product_route_matches_division_route() {
    let oracle = DivisionOracle::default();
    let mut ns: Vec<u64> = (1..=1500).collect();
    ns.extend([3 * 5 * 7 * 11, 2 * 3 * 5 * 7 * 11, 17 * 29 * 41, 5 * 7 * 17 * 2]);
    for n in ns {
        assert_eq!(
            cyclotomic_poly(n).unwrap().coeffs(),
            oracle.cyclotomic(n).unwrap().coeffs(),
            "n={n}"
        );
    }
}

#[test]
fn kaplan_matches_expansion_for_all_small_ternary() {
    let primes: Vec<u64> = primes_upto(30_000 / 15).into_iter().filter(|&p| p > 2).collect();
    let mut count = 0;
    for (i, &p) in primes.iter().enumerate() {
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            for &r in &primes[j + 1..] {
                if p * q * r > 30_000 {
                    break;
                }
                let ctx = KaplanContext::from_primes(p, q, r).unwrap();
                let f = cyclotomic_poly(p * q * r).unwrap();
                for (k, &c) in f.coeffs().iter().enumerate() {
                    assert_eq!(ctx.coeff(k as u64), c, "({p},{q},{r}) k={k}");
                }
                // past the degree everything vanishes
                assert_eq!(ctx.coeff(f.coeffs().len() as u64), 0);
                count += 1;
            }
        }
    }
    assert_eq!(count, 2831);
}

#[test]
fn binary_closed_form_semigroup_and_expansion_agree() {
    let primes = primes_upto(50);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let f = cyclotomic_poly(p * q).unwrap();
            let ps = build_table(&[p, q]).unwrap().semigroup_polynomial().unwrap();
            assert_eq!(ps.coeffs(), f.coeffs(), "P_S({p},{q})");
            if p == 2 {
                continue;
            }
            let ctx = BinaryContext::new(p, q).unwrap();
            for m in 0..p * q {
                assert_eq!(
                    binary_coeff(m, &ctx).unwrap() as i64,
                    f.coeff(m as usize),
                    "({p},{q}) m={m}"
                );
            }
        }
    }
}

/// Ψₙ as the plain product of Φ_d over proper divisors, each Φ_d obtained by
/// long division.
fn psi_by_division_product(n: u64) -> CoeffVector {
    let oracle = DivisionOracle::default();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .fold(CoeffVector::from_coeffs(vec![1]), |acc, d| {
            acc.mul(&oracle.cyclotomic(d).unwrap()).unwrap()
        })
}

#[test]
fn inverse_sets_match_independent_product() {
    for n in [60095u64, 207805, 335257] {
        let fast = inverse_cyclotomic_poly(n).unwrap();
        let slow = psi_by_division_product(n);
        assert_eq!(fast.coeffs(), slow.coeffs(), "Ψ{n}");
    }
    let s = coeff_set(&inverse_cyclotomic_poly(335257).unwrap());
    assert_eq!((s.min, s.max), (-40, 40));
    // symmetric, as antipalindromy forces
    assert_eq!(s.gaps, vec![-39, -37, -36, 36, 37, 39]);
}

#[test]
fn large_quaternary_counterexample() {
    let f = cyclotomic_poly(530689).unwrap();
    assert_eq!(f.degree(), Some(449_280));
    let s = coeff_set(&f);
    assert_eq!((s.min, s.max), (-50, 52));
    assert_eq!(s.gaps, vec![-48, 47, 48, 49, 50, 51]);
    assert!(!s.convex);
}

#[test]
fn cap_applies_to_large_ternary() {
    // φ(191·193·197) ≈ 7.1e6 > 2²²
    assert!(cyclotomic_poly(191 * 193 * 197).is_err());
    let f = cyclotomic_poly_capped(191 * 193 * 197, 1 << 23).unwrap();
    assert_eq!(f.degree(), Some(190 * 192 * 196));
}

/// For every ternary n ≤ 3·10⁴: no gaps in 𝒞(n), |a| ≤ p, a spread of p
/// forces the full range, and doubling a non-flat n breaks jump-one at the
/// extremal index by at least 2|m| − 1.
#[test]
fn ternary_structure_up_to_30000() {
    let primes: Vec<u64> = primes_upto(30_000 / 15).into_iter().filter(|&p| p > 2).collect();
    let (mut optimal, mut non_flat) = (0, 0);
    for (i, &p) in primes.iter().enumerate() {
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            for &r in &primes[j + 1..] {
                let n = p * q * r;
                if n > 30_000 {
                    break;
                }
                let f = cyclotomic_poly(n).unwrap();
                let s = coeff_set(&f);
                assert!(s.gaps.is_empty(), "gaps in 𝒞({n}): {:?}", s.gaps);
                assert!(f.max_abs() <= p && (s.max - s.min) as u64 <= p, "n={n}");
                if is_coefficient_optimal(p, &s) {
                    assert_eq!(s.present, (s.min..=s.max).collect::<Vec<_>>());
                    optimal += 1;
                }
                if !s.flat {
                    let c = f.coeffs();
                    let m = f.max_abs() as i64;
                    let k = c.iter().position(|v| v.abs() == m).unwrap();
                    let d = cyclotomic_poly(2 * n).unwrap();
                    let jump = (d.coeff(k) - d.coeff(k - 1)).abs();
                    assert!(jump >= 2 * m - 1, "n={n} k={k} jump={jump} m={m}");
                    non_flat += 1;
                }
            }
        }
    }
    assert!(optimal > 0 && non_flat > 0);
}
