//! Acceptance gate. Runs each criterion in order, prints one result line per
//! criterion, and exits nonzero if any fails.
//!
//! All tolerances are exact; runtime limits are wall-clock.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use zetacheck::catalog;
use zetacheck::congruence::{
    full_report, verify_newton_above_hodge, verify_zeta_ring_membership, ReportOptions, VerificationReport,
};
use zetacheck::counting::{cone_count_oracle, count_points, count_tower, projective_space_size, CountConfig};
use zetacheck::ff::build_field;
use zetacheck::hodge::{hodge_numbers, verify_12a, CompleteIntersectionSpec};
use zetacheck::poly::PolynomialSystem;
use zetacheck::zeta::intpoly::{render, small, trivial_factors};
use zetacheck::zeta::{
    complete_intersection_zeta, divisibility_check, extract_middle_factor, pade_reconstruct, series_from_counts,
    weil_symmetry_check, ZetaSeries,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn config() -> CountConfig {
    CountConfig::default()
}

fn system(entry: &str) -> PolynomialSystem {
    catalog::lookup(entry).unwrap().default_input().system().unwrap()
}

fn report(entry: &str, s: Option<usize>) -> VerificationReport {
    let input = catalog::lookup(entry).unwrap().to_input(None, None, s);
    full_report(&input, &ReportOptions::default(), &config()).unwrap()
}

fn projective_identity() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 0..=4usize {
        let sys = PolynomialSystem::parse(n, &[] as &[&str]).unwrap();
        for (p, d) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let field = build_field(p, d).unwrap();
            let q = field.order();
            let closed: u64 = (0..=n as u32).map(|i| q.pow(i)).sum();
            let formula = projective_space_size(n, &BigUint::from(q));
            let by_enum = count_points(&sys, &field, &config()).map_err(|e| e.to_string())?;
            let by_cone = cone_count_oracle(&sys, &field, &config()).map_err(|e| e.to_string())?;
            ensure(
                formula == BigUint::from(closed) && by_enum == closed && by_cone == closed,
                || format!("n={n} q={q}: formula {formula}, enumeration {by_enum}, cone {by_cone}, expected {closed}"),
            )?;
            checked += 1;
        }
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("{checked} (n, q) pairs exact by enumeration and cone, {took:.2?}"))
}

fn ax_katz_suite() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("conic", 1),
        ("elliptic-5", 0),
        ("cubic-surface-f2", 1),
        ("quadric-surface", 1),
        ("quadric-surface-nonsplit", 1),
        ("quadric4fold-f3", 2),
    ];
    let mut levels = 0;
    for (name, kappa) in cases {
        let r = report(name, None);
        ensure(r.kappa_axkatz == Some(kappa), || {
            format!("{name}: κ = {:?}, expected {kappa}", r.kappa_axkatz)
        })?;
        ensure(r.ax_katz.pass, || format!("{name}: {:?}", r.ax_katz.levels))?;
        levels += r.ax_katz.levels.len();
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("{} varieties, {levels} levels divisible by (q^s)^κ, {took:.2?}", cases.len()))
}

fn sharpness_witness() -> Outcome {
    let counts = count_tower(&system("quadric4fold-f3"), 3, 1, 1, &config()).map_err(|e| e.to_string())?;
    let u = &counts.complement_counts[0];
    ensure(*u == BigInt::from(3i64.pow(5) - 3i64.pow(2)), || format!("|U(F_3)| = {u}"))?;
    let series = series_from_counts(&counts, true);
    let at2 = verify_zeta_ring_membership(&series, 3, 1, 2, 5).map_err(|e| e.to_string())?;
    let at3 = verify_zeta_ring_membership(&series, 3, 1, 3, 5).map_err(|e| e.to_string())?;
    ensure(at2.pass && !at3.pass, || format!("κ=2 pass {}, κ=3 pass {}", at2.pass, at3.pass))?;
    Ok(format!("|U(F_3)| = {u} = 3^5 - 3^2; ring membership holds at κ=2, fails at κ=3"))
}

fn zeta_reconstruction() -> Outcome {
    let start = Instant::now();
    // (a) projective line and plane
    for n in [1usize, 2] {
        let sys = PolynomialSystem::parse(n, &[] as &[&str]).unwrap();
        let counts = count_tower(&sys, 2, 1, n + 1, &config()).map_err(|e| e.to_string())?;
        let z = pade_reconstruct(&series_from_counts(&counts, false), 0, n + 1).map_err(|e| e.to_string())?;
        let expect = trivial_factors(&BigInt::from(2), 0..=n as u32);
        ensure(z.numerator == small(&[1]) && z.denominator == expect, || {
            format!("P^{n}: got {:?}/{:?}", z.numerator, z.denominator)
        })?;
    }
    // (b) elliptic curve over F_5: P_1 from S = 2 predicts N_3, N_4
    let ell = system("elliptic-5");
    let brute = count_tower(&ell, 5, 1, 4, &config()).map_err(|e| e.to_string())?;
    let series = ZetaSeries::from_counts(BigInt::from(5), &brute.counts[..2]);
    let p1 = extract_middle_factor(&series, 1, 2).map_err(|e| e.to_string())?;
    ensure(p1 == small(&[1, 2, 5]), || format!("P_1 = {p1:?}"))?;
    let predicted = complete_intersection_zeta(&p1, &BigInt::from(5), 1).counts(4);
    ensure(predicted == brute.counts, || {
        format!("predicted {predicted:?}, brute force {:?}", brute.counts)
    })?;
    // (c) cubic surface over F_2 with S = 6
    let cubic = count_tower(&system("cubic-surface-f2"), 2, 1, 6, &config()).map_err(|e| e.to_string())?;
    let p2 = extract_middle_factor(&series_from_counts(&cubic, false), 2, 6).map_err(|e| e.to_string())?;
    ensure(p2.len() == 7, || format!("P_2 has degree {}", p2.len() - 1))?;
    ensure(divisibility_check(&p2, 2, 1, 1), || format!("P_2 = {p2:?} not divisible at κ=1"))?;
    ensure(weil_symmetry_check(&p2, &BigInt::from(2), 2), || format!("P_2 = {p2:?} not symmetric"))?;
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!(
        "P^1, P^2 exact; elliptic N_3, N_4 = {}, {} predicted; cubic P_2 = {} ({took:.2?})",
        brute.counts[2],
        brute.counts[3],
        render(&p2)
    ))
}

fn newton_above_hodge() -> Outcome {
    let curve = hodge_numbers(&CompleteIntersectionSpec::new(2, vec![3]).unwrap()).unwrap();
    let ord_counts = count_tower(&system("elliptic-5"), 5, 1, 2, &config()).map_err(|e| e.to_string())?;
    let ord = extract_middle_factor(&series_from_counts(&ord_counts, false), 1, 2).map_err(|e| e.to_string())?;
    let ord_nh = verify_newton_above_hodge(&ord, &curve, 5, 1).map_err(|e| e.to_string())?;
    ensure(ord_nh.pass && ord_nh.coincide, || format!("ordinary: {ord_nh:?}"))?;

    let ss_counts = count_tower(&system("elliptic-7-ss"), 7, 1, 2, &config()).map_err(|e| e.to_string())?;
    ensure(ss_counts.counts[0] == BigInt::from(8), || format!("N_1 = {}", ss_counts.counts[0]))?;
    let ss = extract_middle_factor(&series_from_counts(&ss_counts, false), 1, 2).map_err(|e| e.to_string())?;
    let ss_nh = verify_newton_above_hodge(&ss, &curve, 7, 1).map_err(|e| e.to_string())?;
    let half = Rational64::new(1, 2);
    ensure(ss_nh.newton.slope_multiset() == vec![half, half], || format!("slopes {:?}", ss_nh.newton.slopes))?;
    ensure(ss_nh.pass && !ss_nh.coincide, || format!("supersingular: {ss_nh:?}"))?;
    // strictly above at the interior abscissa
    ensure(ss_nh.newton.ordinate_at(1) > ss_nh.hodge.ordinate_at(1), || "not strictly above".into())?;
    Ok("ordinary F_5: Newton = Hodge {0, 1}; supersingular F_7: {1/2, 1/2} strictly above {0, 1}".into())
}

/// Non-increasing vectors of length `r` with entries in `1..=max`.
fn degree_vectors(r: usize, max: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in degree_vectors(r - 1, max) {
        let top = tail.first().copied().unwrap_or(1);
        for d in top..=max {
            let mut v = vec![d];
            v.extend(&tail);
            out.push(v);
        }
    }
    out
}

/// Fermat hypersurface primitive numbers from the Jacobian ring
/// `C[x_0..x_n]/(x_i^{d-1})`.
fn jacobian_ring(n: u32, d: u32) -> Vec<u64> {
    let m = n - 1;
    let monomials = |target: i64| -> u64 {
        if target < 0 {
            return 0;
        }
        let mut ways = vec![0u64; target as usize + 1];
        ways[0] = 1;
        for _ in 0..=n {
            let mut next = vec![0u64; ways.len()];
            for (s, &w) in ways.iter().enumerate() {
                for e in 0..=(d as usize - 2) {
                    if s + e < next.len() {
                        next[s + e] += w;
                    }
                }
            }
            ways = next;
        }
        ways[target as usize]
    };
    (0..=m).map(|a| monomials(i64::from((m - a + 1) * d) - i64::from(n) - 1)).collect()
}

fn hodge_diamonds() -> Outcome {
    let start = Instant::now();
    for d in 1..=6u64 {
        let h = hodge_numbers(&CompleteIntersectionSpec::new(2, vec![d as u32]).unwrap()).unwrap();
        let genus = (d - 1) * d.saturating_sub(2) / 2;
        ensure(h.get(1, 0) == genus, || format!("plane curve of degree {d}: h^{{1,0}} = {}", h.get(1, 0)))?;
    }
    let k3 = hodge_numbers(&CompleteIntersectionSpec::new(3, vec![4]).unwrap()).unwrap();
    let oracle = jacobian_ring(3, 4);
    ensure(
        (k3.get(2, 0), k3.get(1, 1), k3.get(0, 2)) == (1, 20, 1) && k3.h_prim == oracle,
        || format!("quartic surface {:?}, oracle {oracle:?}", k3.h),
    )?;
    let mut specs = 0;
    for n in 1..=8u32 {
        for r in 1..=3u32.min(n) {
            for degs in degree_vectors(r as usize, 6) {
                let spec = CompleteIntersectionSpec::new(n, degs).unwrap();
                let h = hodge_numbers(&spec).map_err(|e| e.to_string())?;
                ensure(h.is_symmetric() && h.has_lefschetz_shape(), || format!("{spec:?}: {:?}", h.h))?;
                specs += 1;
            }
        }
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!("genus d <= 6, quartic surface (1, 20, 1) = Jacobian ring, {specs} specs symmetric ({took:.2?})"))
}

fn smooth_reports() -> Vec<VerificationReport> {
    catalog::entries()
        .iter()
        .filter(|e| e.smooth)
        .map(|e| full_report(&e.default_input(), &ReportOptions::default(), &config()).unwrap())
        .collect()
}

fn kappa_agreement() -> Outcome {
    let mut compared = Vec::new();
    let mut skipped = Vec::new();
    for r in smooth_reports() {
        let Some(ht) = r.kappa_hodge else { continue };
        if ht.no_primitive || r.degrees.is_empty() {
            continue;
        }
        let Some(ev) = &r.eigenvalue else {
            skipped.push(r.variety.clone());
            continue;
        };
        ensure(r.kappa_axkatz == Some(ht.value) && ht.value == ev.max_kappa, || {
            format!(
                "{}: ax-katz {:?}, hodge {}, eigenvalue {}",
                r.variety, r.kappa_axkatz, ht.value, ev.max_kappa
            )
        })?;
        compared.push(format!("{}={}", r.variety, ht.value));
    }
    Ok(format!(
        "agree on {}; reconstruction infeasible for {}",
        compared.join(", "),
        skipped.join(", ")
    ))
}

fn blowup_grid() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for kappa in 1..=3u32 {
        for d in 1..=5u32 {
            for n in kappa..=8u32 {
                let v = verify_12a(kappa, d, n).map_err(|e| e.to_string())?;
                total += 1;
                if !v.holds {
                    failures.push(v);
                }
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    if failures.is_empty() {
        return Ok(format!("all {total} grid points hold"));
    }
    let low = failures.iter().filter(|v| !v.low_rows_vanish).count();
    let eqv = failures.iter().filter(|v| !v.equivalence_holds).count();
    let sample: Vec<String> = failures
        .iter()
        .take(4)
        .map(|v| format!("({},{},{})", v.kappa, v.d, v.n))
        .collect();
    Err(format!(
        "{} of {total} grid points fail ({low} low-row, {eqv} equivalence), e.g. {}",
        failures.len(),
        sample.join(" ")
    ))
}

fn hodge_type_implication() -> Outcome {
    // the smooth catalog at its default primes, plus the quadrics at other
    // good primes
    let mut inputs: Vec<_> = catalog::entries().iter().filter(|e| e.smooth).map(|e| e.default_input()).collect();
    for (name, primes) in [
        ("quadric-surface", &[3u64, 5, 7][..]),
        ("quadric-surface-nonsplit", &[5, 7][..]),
        ("quadric4fold-f3", &[5][..]),
        ("conic", &[2, 5, 7][..]),
        ("quadric-threefold", &[2, 5][..]),
    ] {
        for &p in primes {
            inputs.push(catalog::lookup(name).unwrap().to_input(Some(p), None, None));
        }
    }
    let mut applicable = 0;
    for input in &inputs {
        let r = full_report(input, &ReportOptions::default(), &config()).map_err(|e| e.to_string())?;
        if let Some(prop) = &r.slopes {
            if prop.applicable {
                applicable += 1;
            }
            ensure(prop.pass, || format!("{} over F_{}: {prop:?}", r.variety, input.p))?;
        }
    }
    Ok(format!("{} smooth inputs, {applicable} with Hodge type >= 1, no counterexample", inputs.len()))
}

fn performance() -> Outcome {
    let sys = system("cubic-surface-f2");
    let field = build_field(2, 7).unwrap();
    let start = Instant::now();
    let four = count_points(&sys, &field, &config().with_workers(4)).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(5), start)?;
    let one = count_points(&sys, &field, &config().with_workers(1)).map_err(|e| e.to_string())?;
    ensure(four == one, || format!("4 workers {four}, 1 worker {one}"))?;
    ensure(four % 2 == 1, || format!("|X(F_128)| = {four} is not 1 mod 2"))?;
    Ok(format!(
        "|X(F_128)| = {four} over {} points in {took:.2?} on 4 workers ({} cores available), same at 1 worker",
        projective_space_size(3, &BigUint::from(128u32)),
        std::thread::available_parallelism().map_or(1, |n| n.get())
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("projective-space identity", projective_identity),
        ("Ax-Katz congruence suite", ax_katz_suite),
        ("sharpness witness", sharpness_witness),
        ("zeta reconstruction", zeta_reconstruction),
        ("Newton above Hodge", newton_above_hodge),
        ("Hodge diamonds", hodge_diamonds),
        ("kappa agreement", kappa_agreement),
        ("blow-up grid", blowup_grid),
        ("Hodge type implication", hodge_type_implication),
        ("counting performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
