//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All tolerances are exact (zero) and all time limits are pinned below.
//! Criteria listed in `KNOWN_DISCREPANCIES` still print FAIL, but do not fail
//! the process; each entry says why the printed target cannot be reproduced.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cyclo_core::arith::{crt2, euler_phi, factorize, gcd, is_prime, mod_inverse};
use cyclo_core::binary::{binary_coeff, BinaryContext};
use cyclo_core::cli::ternary_triples;
use cyclo_core::families::{find_family_instance, verify_family, verify_optimal_range, FamilyKind};
use cyclo_core::kaplan::KaplanContext;
use cyclo_core::poly::{
    cyclotomic_poly, cyclotomic_poly_capped, inverse_cyclotomic_poly, negate_variable, CoeffVector, DivisionOracle,
};
use cyclo_core::props::{check_jump_one, coeff_set, largest_jump, summarize};
use cyclo_core::semigroup::build_table;

const SEED: u64 = 0x5eed_c1c1_0001;
/// Large enough for φ(pqr) with r ≤ 200.
const GRID_CAP: u64 = 1 << 24;
const RANDOM_CASES: usize = 1000;

const KNOWN_DISCREPANCIES: &[(u32, &str)] = &[(
    7,
    "the printed gap set of Ψ335257 omits 36; Ψn is antipalindromic for odd n, so its \
     coefficient set is symmetric and 36 must be a gap whenever −36 is. The computed \
     set {−39,−37,−36,36,37,39} is confirmed by an independent long-division product.",
)];

type Check = Result<String, String>;

struct Outcome {
    id: u32,
    pass: bool,
}

fn criterion(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let (pass, detail) = match res {
        Ok(d) if took <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took {took:.2?}, limit {limit:?}")),
        Err(e) => (false, e),
    };
    println!(
        "{} [{id:>2}] {name}: {detail} ({took:.2?})",
        if pass { "PASS" } else { "FAIL" }
    );
    Outcome { id, pass }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:.2?}, limit {limit:?}"))?;
    Ok(v)
}

fn odd_primes_upto(n: u64) -> Vec<u64> {
    (3..=n).filter(|&x| is_prime(x)).collect()
}

fn c1_lehmer() -> Check {
    let ctx = KaplanContext::from_primes(17, 29, 41).map_err(|e| e.to_string())?;
    let v = timed(Duration::from_millis(100), "Kaplan path", || ctx.coeff(4801))?;
    ensure(v == -10, || format!("Kaplan gave {v}"))?;
    let f = timed(Duration::from_secs(5), "expansion", || cyclotomic_poly(20213))
        .and_then(|r| r.map_err(|e| e.to_string()))?;
    ensure(f.degree() == Some(17920), || format!("degree {:?}", f.degree()))?;
    ensure(f.coeff(4801) == -10, || format!("expansion gave {}", f.coeff(4801)))?;
    let div = DivisionOracle::default().cyclotomic(20213).map_err(|e| e.to_string())?;
    ensure(div.coeffs() == f.coeffs(), || "division oracle disagrees".into())?;
    Ok("a(4801) = −10 by Kaplan, by product expansion and by long division; degree 17920".into())
}

fn c2_jump_one() -> Check {
    let triples = ternary_triples(30_000);
    let violations: Vec<(u64, usize)> = triples
        .par_iter()
        .filter_map(|&(p, q, r)| {
            let f = cyclotomic_poly(p * q * r).expect("within cap");
            check_jump_one(f.coeffs()).first_violation.map(|k| (p * q * r, k))
        })
        .collect();
    ensure(violations.is_empty(), || format!("violations: {violations:?}"))?;
    Ok(format!("{} ternary n ≤ 30000, 0 violations", triples.len()))
}

/// Random (p, q, r, k) with 3 ≤ p < q < r ≤ 200 and 0 ≤ k ≤ φ(pqr).
fn random_grid() -> Vec<(u64, u64, u64, u64)> {
    let primes = odd_primes_upto(200);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_CASES)
        .map(|_| {
            let mut t: Vec<u64> = primes.choose_multiple(&mut rng, 3).copied().collect();
            t.sort_unstable();
            let deg = (t[0] - 1) * (t[1] - 1) * (t[2] - 1);
            (t[0], t[1], t[2], rng.gen_range(0..=deg))
        })
        .collect()
}

struct GridRow {
    kaplan: i64,
    oracle: i64,
    spread: i64,
    height: u64,
}

fn evaluate_grid(grid: &[(u64, u64, u64, u64)]) -> Vec<GridRow> {
    grid.par_iter()
        .map(|&(p, q, r, k)| {
            let ctx = KaplanContext::from_primes(p, q, r).expect("valid triple");
            let f = cyclotomic_poly_capped(p * q * r, GRID_CAP).expect("within grid cap");
            let s = summarize(f.coeffs());
            GridRow {
                kaplan: ctx.coeff(k),
                oracle: f.coeff(k as usize),
                spread: s.max - s.min,
                height: f.max_abs(),
            }
        })
        .collect()
}

fn c3_kaplan_vs_oracle(grid: &[(u64, u64, u64, u64)], out: &mut Vec<GridRow>) -> Check {
    *out = evaluate_grid(grid);
    let rows = &out[..];
    let bad: Vec<_> = grid
        .iter()
        .zip(rows)
        .filter(|(_, r)| r.kaplan != r.oracle)
        .map(|(g, _)| *g)
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} mismatches, first {:?}", bad.len(), bad.first())
    })?;
    let distinct: std::collections::BTreeSet<_> = grid.iter().map(|&(p, q, r, _)| (p, q, r)).collect();
    Ok(format!(
        "{} tuples ({} distinct triples), exact agreement",
        grid.len(),
        distinct.len()
    ))
}

fn c4_binary() -> Check {
    let primes: Vec<u64> = (2..=50).filter(|&x| is_prime(x)).collect();
    let mut pairs = 0;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let f = cyclotomic_poly(p * q).map_err(|e| e.to_string())?;
            let ps = build_table(&[p, q])
                .and_then(|t| t.semigroup_polynomial())
                .map_err(|e| e.to_string())?;
            ensure(ps.coeffs() == f.coeffs(), || format!("P_S({p},{q}) ≠ Φ{}", p * q))?;
            if p > 2 {
                let ctx = BinaryContext::new(p, q).map_err(|e| e.to_string())?;
                for m in 0..p * q {
                    let b = binary_coeff(m, &ctx).map_err(|e| e.to_string())? as i64;
                    ensure(b == f.coeff(m as usize) && b == ps.coeff(m as usize), || {
                        format!("binary_coeff({m}) for ({p},{q})")
                    })?;
                }
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} prime pairs ≤ 50: P_S = Φpq; closed form agrees on odd pairs"
    ))
}

fn c5_moller() -> Check {
    let a = find_family_instance(FamilyKind::Moller, 5, 1 << 20).map_err(|e| e.to_string())?;
    ensure((a.q, a.r, a.k, a.lo_index) == (7, 17, 240, 223), || {
        format!("instance {a:?}")
    })?;
    let rep = verify_family(&a, GRID_CAP).map_err(|e| e.to_string())?;
    ensure((rep.kaplan_hi, rep.kaplan_lo) == (3, -2), || format!("values {rep:?}"))?;
    ensure((rep.oracle_hi, rep.oracle_lo) == (Some(3), Some(-2)), || {
        format!("oracle {rep:?}")
    })?;
    ensure(rep.lehmer == Some((120, 2)), || format!("a(120): {:?}", rep.lehmer))?;
    let range = verify_optimal_range(&a, GRID_CAP).map_err(|e| e.to_string())?;
    ensure(range.summary.present == vec![-2, -1, 0, 1, 2, 3], || {
        format!("𝒞(595) = {:?}", range.summary.present)
    })?;
    ensure(range.window_covers && range.window_jump_one, || {
        "window [223, 240]".into()
    })?;
    Ok("(5,7,17): a(240)=3, a(223)=−2, a(120)=2, 𝒞(595)={−2,…,3}".into())
}

fn c6_mirror() -> Check {
    let b = find_family_instance(FamilyKind::Mirror, 5, 1 << 20).map_err(|e| e.to_string())?;
    ensure((b.q, b.r, b.k, b.lo_index) == (7, 53, 751, 698), || {
        format!("instance {b:?}")
    })?;
    let rep = verify_family(&b, GRID_CAP).map_err(|e| e.to_string())?;
    ensure((rep.kaplan_hi, rep.kaplan_lo) == (-3, 2), || format!("values {rep:?}"))?;
    ensure((rep.oracle_hi, rep.oracle_lo) == (Some(-3), Some(2)), || {
        format!("oracle {rep:?}")
    })?;
    let range = verify_optimal_range(&b, GRID_CAP).map_err(|e| e.to_string())?;
    ensure(range.summary.present == vec![-3, -2, -1, 0, 1, 2], || {
        format!("𝒞(1855) = {:?}", range.summary.present)
    })?;
    Ok("(5,7,53): a(751)=−3, a(698)=2, 𝒞(1855)={−3,…,2}".into())
}

fn c7_inverse_sets() -> Check {
    let targets: [(u64, i64, &[i64]); 3] = [
        (60095, 12, &[-11, 11]),
        (207805, 16, &[-15, -13, 13, 15]),
        (335257, 40, &[-39, -37, -36, 37, 39]),
    ];
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for (n, bound, gaps) in targets {
        let s = coeff_set(&inverse_cyclotomic_poly(n).map_err(|e| e.to_string())?);
        if (s.min, s.max) == (-bound, bound) && s.gaps == gaps {
            notes.push(format!("Ψ{n} ok"));
        } else {
            failed.push(format!(
                "Ψ{n}: expected [{},{}] minus {gaps:?}, computed [{},{}] minus {:?}",
                -bound, bound, s.min, s.max, s.gaps
            ));
        }
    }
    ensure(failed.is_empty(), || {
        format!("{}; {}", notes.join(", "), failed.join("; "))
    })?;
    Ok(notes.join(", "))
}

fn c8_quaternary() -> Check {
    let s = coeff_set(&cyclotomic_poly(7735).map_err(|e| e.to_string())?);
    ensure(!s.convex, || "Φ7735 reported convex".into())?;
    let f = cyclotomic_poly(530689).map_err(|e| e.to_string())?;
    ensure(f.degree() == Some(449_280), || format!("degree {:?}", f.degree()))?;
    let t = coeff_set(&f);
    ensure((t.min, t.max) == (-50, 52), || format!("range [{}, {}]", t.min, t.max))?;
    ensure(t.gaps == [-48, 47, 48, 49, 50, 51], || format!("gaps {:?}", t.gaps))?;
    Ok(format!(
        "Φ7735 non-convex (computed [{},{}] minus {:?}); Φ530689 [−50,52] minus {{−48,47,…,51}}",
        s.min, s.max, s.gaps
    ))
}

fn c9_doubling() -> Check {
    let n = 17 * 29 * 41;
    let f = cyclotomic_poly(2 * n).map_err(|e| e.to_string())?;
    let g = negate_variable(&cyclotomic_poly(n).map_err(|e| e.to_string())?);
    ensure(f.coeffs() == g.coeffs(), || "Φ2n ≠ Φn(−x)".into())?;
    ensure(!check_jump_one(f.coeffs()).holds, || "jump-one holds for Φ2n".into())?;
    let (k, jump) = largest_jump(f.coeffs()).ok_or("no coefficients")?;
    ensure(jump >= 19, || format!("largest jump {jump} at {k}"))?;
    Ok(format!("Φ{}: |a({k}) − a({})| = {jump} ≥ 19", 2 * n, k - 1))
}

fn c10_bound(grid: &[(u64, u64, u64, u64)], rows: &[GridRow]) -> Check {
    let bad: Vec<_> = grid
        .iter()
        .zip(rows)
        .filter(|((p, ..), r)| r.spread as u64 > *p || r.height > *p)
        .map(|(g, _)| *g)
        .collect();
    ensure(bad.is_empty(), || {
        format!("{} violations, first {:?}", bad.len(), bad.first())
    })?;
    let tight = grid
        .iter()
        .zip(rows)
        .filter(|((p, ..), r)| r.spread as u64 == *p)
        .count();
    Ok(format!(
        "{} sets with max − min ≤ p and |a| ≤ p ({tight} attain p)",
        grid.len()
    ))
}

fn c11_convex_sweep() -> Check {
    let ns: Vec<(u64, bool, bool)> = (1..=100_000u64)
        .map(|n| {
            let f = factorize(n);
            (n, f.with_multiplicity() <= 3, f.distinct_odd() <= 3)
        })
        .collect();
    let phi: Vec<u64> = ns
        .par_iter()
        .filter(|t| t.1)
        .filter(|t| !coeff_set(&cyclotomic_poly(t.0).expect("within cap")).convex)
        .map(|t| t.0)
        .collect();
    let psi: Vec<u64> = ns
        .par_iter()
        .filter(|t| t.2)
        .filter(|t| !coeff_set(&inverse_cyclotomic_poly(t.0).expect("within cap")).convex)
        .map(|t| t.0)
        .collect();
    ensure(phi.is_empty() && psi.is_empty(), || {
        format!("Φ violations {phi:?}, Ψ violations {psi:?}")
    })?;
    let (a, b) = (ns.iter().filter(|t| t.1).count(), ns.iter().filter(|t| t.2).count());
    Ok(format!("{a} Φn and {b} Ψn with n ≤ 100000, all convex"))
}

fn c12_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 12);
    let cases = RANDOM_CASES;
    for _ in 0..cases {
        let n = rng.gen_range(2..20_000u64);
        let phi = cyclotomic_poly(n).map_err(|e| e.to_string())?;
        let psi = inverse_cyclotomic_poly(n).map_err(|e| e.to_string())?;
        let (c, d) = (phi.coeffs(), psi.coeffs());
        ensure(c.iter().eq(c.iter().rev()), || format!("Φ{n} palindromy"))?;
        ensure(d.iter().zip(d.iter().rev()).all(|(a, b)| *a == -*b), || {
            format!("Ψ{n} antipalindromy")
        })?;
        ensure(phi.degree() == Some(euler_phi(&factorize(n)) as usize), || {
            format!("deg Φ{n}")
        })?;
        let prod = phi.mul(&psi).map_err(|e| e.to_string())?;
        ensure(prod == CoeffVector::x_pow_minus_one(n as usize), || {
            format!("Φ{n}·Ψ{n}")
        })?;
    }
    for _ in 0..cases {
        let n = 2 * rng.gen_range(1..10_000u64) + 1;
        let lhs = cyclotomic_poly(2 * n).map_err(|e| e.to_string())?;
        let rhs = negate_variable(&cyclotomic_poly(n).map_err(|e| e.to_string())?);
        ensure(lhs.coeffs() == rhs.coeffs(), || format!("Φ{}(x) ≠ Φ{n}(−x)", 2 * n))?;
    }
    let mut frob = 0;
    while frob < cases {
        let (a, b) = (rng.gen_range(2..300u64), rng.gen_range(2..300u64));
        if a == b || gcd(a, b) != 1 {
            continue;
        }
        let t = build_table(&[a, b]).map_err(|e| e.to_string())?;
        ensure(t.frobenius() == Some((a * b - a - b) as i64), || format!("F({a},{b})"))?;
        frob += 1;
    }
    for _ in 0..cases {
        let m1 = rng.gen_range(2..1_000_000u64);
        let m2 = rng.gen_range(2..1_000_000u64);
        let a = rng.gen_range(-1_000_000_000i64..1_000_000_000);
        match mod_inverse(a, m1) {
            Ok(inv) => ensure(
                (a.rem_euclid(m1 as i64) as u128 * inv as u128) % m1 as u128 == 1,
                || format!("inverse of {a} mod {m1}"),
            )?,
            Err(_) => ensure(gcd(a.unsigned_abs(), m1) != 1, || format!("{a} mod {m1} should invert"))?,
        }
        let (r1, r2) = (rng.gen_range(0..m1), rng.gen_range(0..m2));
        match crt2(r1, m1, r2, m2) {
            Ok(x) => ensure(x % m1 == r1 && x % m2 == r2 && x < m1 * m2, || {
                format!("crt {r1} {m1} {r2} {m2}")
            })?,
            Err(_) => ensure(gcd(m1, m2) != 1, || format!("crt failed on coprime {m1}, {m2}"))?,
        }
    }
    Ok(format!(
        "{cases} cases each: palindromy/Φ·Ψ, Φ2n(x)=Φn(−x), Frobenius = ab−a−b, inverse and CRT round trips"
    ))
}

fn main() {
    // `cargo test` passes harness flags such as --nocapture; nothing to parse
    let start = Instant::now();
    let secs = Duration::from_secs;
    let mut outcomes = vec![
        criterion(1, "Lehmer counterexample", secs(6), c1_lehmer),
        criterion(2, "jump-one for ternary n ≤ 3·10⁴", secs(120), c2_jump_one),
    ];
    let grid = random_grid();
    let mut rows = Vec::new();
    outcomes.push(criterion(3, "Kaplan vs expansion, random grid", secs(300), || {
        c3_kaplan_vs_oracle(&grid, &mut rows)
    }));
    outcomes.extend([
        criterion(4, "binary closed form and semigroup identity", secs(60), c4_binary),
        criterion(5, "Möller family p = 5", secs(1), c5_moller),
        criterion(6, "sign-flipped family p = 5", secs(1), c6_mirror),
        criterion(7, "inverse cyclotomic coefficient sets", secs(60), c7_inverse_sets),
        criterion(8, "quaternary non-convex examples", secs(120), c8_quaternary),
        criterion(9, "doubling breaks jump-one", secs(10), c9_doubling),
        criterion(10, "spread and height bounded by p", secs(1), || {
            ensure(rows.len() == grid.len(), || "grid not evaluated".into())?;
            c10_bound(&grid, &rows)
        }),
        criterion(11, "convexity sweep n ≤ 10⁵", secs(600), c11_convex_sweep),
        criterion(12, "randomized property suites", secs(300), c12_properties),
    ]);
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    let unexpected: Vec<u32> = failed
        .iter()
        .copied()
        .filter(|id| !KNOWN_DISCREPANCIES.iter().any(|(k, _)| k == id))
        .collect();
    for (id, why) in KNOWN_DISCREPANCIES {
        if failed.contains(id) {
            println!("NOTE [{id:>2}] known discrepancy: {why}");
        }
    }
    println!(
        "acceptance: {}/{} pass, {} known discrepancies, {} unexpected failures ({:.1?})",
        outcomes.len() - failed.len(),
        outcomes.len(),
        failed.len() - unexpected.len(),
        unexpected.len(),
        start.elapsed()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
