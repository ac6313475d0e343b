use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use zetacheck::catalog;
use zetacheck::congruence::{verify_eigenvalue_divisibility, verify_zeta_ring_membership};
use zetacheck::counting::{
    cone_count_oracle, count_points, count_tower, largest_feasible_height, Arithmetic, CountConfig,
};
use zetacheck::ff::kernel::{KernelArith, PackedArith, TableArith};
use zetacheck::ff::{build_field, FieldDescriptor, FieldElement};
use zetacheck::poly::{parse_poly, MultiPoly, PolynomialSystem, Term};
use zetacheck::zeta::intpoly::{inverse_unit_series, small, trivial_factors};
use zetacheck::zeta::{divisibility_check, pade_reconstruct, RationalZeta, ZetaSeries};

fn arb_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (-20i64..=20, prop::collection::vec(0u32..4, nvars)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MultiPoly::from_terms(
            nvars,
            terms.into_iter().map(|(c, exps)| Term {
                coeff: BigInt::from(c),
                exps,
            }),
        )
    })
}

/// A homogeneous polynomial of degree `d`: random coefficients on random
/// monomials built by distributing `d` over the variables.
fn arb_form(nvars: usize, d: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0usize..nvars, d as usize)), 1..=4).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                nvars,
                terms.into_iter().map(|(c, vars)| {
                    let mut exps = vec![0u32; nvars];
                    for v in vars {
                        exps[v] += 1;
                    }
                    Term {
                        coeff: BigInt::from(c),
                        exps,
                    }
                }),
            )
        },
    )
}

fn arb_field() -> impl Strategy<Value = Arc<FieldDescriptor>> {
    prop::sample::select(vec![(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)])
        .prop_map(|(p, m)| build_field(p, m).unwrap())
}

fn point(field: &Arc<FieldDescriptor>, seeds: &[u64]) -> Vec<FieldElement> {
    seeds.iter().map(|s| field.element_at(s % field.order())).collect()
}

fn ratio(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parses_back(f in (1usize..=4).prop_flat_map(|n| arb_poly(n, 6))) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, f.nvars()).unwrap(), f, "{}", text);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in arb_poly(3, 5),
        g in arb_poly(3, 5),
        field in arb_field(),
        seeds in prop::collection::vec(any::<u64>(), 3),
    ) {
        let x = point(&field, &seeds);
        let (fx, gx) = (f.evaluate(&x).unwrap(), g.evaluate(&x).unwrap());
        prop_assert_eq!(f.add(&g).evaluate(&x).unwrap(), fx.add(&gx).unwrap());
        prop_assert_eq!(f.mul(&g).evaluate(&x).unwrap(), fx.mul(&gx).unwrap());
    }

    #[test]
    fn compiled_kernels_match_reference(
        f in arb_poly(4, 6),
        field in arb_field(),
        seeds in prop::collection::vec(any::<u64>(), 4),
    ) {
        let x = point(&field, &seeds);
        let reference = f.evaluate(&x).unwrap().index();
        let packed = PackedArith::new(&field).unwrap();
        let px: Vec<_> = x.iter().map(|e| packed.from_index(e.index())).collect();
        prop_assert_eq!(packed.to_index(f.compile(&packed).eval(&packed, &px)), reference);
        let tables = TableArith::new(&field).unwrap();
        let tx: Vec<_> = x.iter().map(|e| tables.from_index(e.index())).collect();
        prop_assert_eq!(tables.to_index(f.compile(&tables).eval(&tables, &tx)), reference);
    }

    #[test]
    fn forms_scale_by_degree(
        (d, f) in (1u32..=4).prop_flat_map(|d| (Just(d), arb_form(3, d))),
        field in arb_field(),
        seeds in prop::collection::vec(any::<u64>(), 3),
        lambda in any::<u64>(),
    ) {
        let x = point(&field, &seeds);
        let l = field.element_at(lambda % field.order());
        let scaled: Vec<_> = x.iter().map(|e| e.mul(&l).unwrap()).collect();
        let lhs = f.evaluate(&scaled).unwrap();
        let rhs = l.pow(u64::from(d)).mul(&f.evaluate(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_agree_across_workers_arithmetic_and_cone(
        (n, forms) in (1usize..=3).prop_flat_map(|n| {
            (Just(n), prop::collection::vec((1u32..=3).prop_flat_map(move |d| arb_form(n + 1, d)), 1..=2))
        }),
        field in arb_field(),
    ) {
        let forms: Vec<_> = forms.into_iter().filter(|f| !f.is_zero()).collect();
        prop_assume!(!forms.is_empty());
        let sys = PolynomialSystem::new(n, forms).unwrap();
        let base = CountConfig::default().with_workers(1);
        let reference = count_points(&sys, &field, &base).unwrap();
        for workers in [2, 8] {
            prop_assert_eq!(count_points(&sys, &field, &base.clone().with_workers(workers)).unwrap(), reference);
        }
        let tables = base.clone().with_arithmetic(Arithmetic::Tables);
        prop_assert_eq!(count_points(&sys, &field, &tables).unwrap(), reference);
        prop_assert_eq!(cone_count_oracle(&sys, &field, &base).unwrap(), reference);
    }

    #[test]
    fn feasible_height_is_monotone_in_budget(
        n in 1usize..=5,
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        budget in 1u64..=1_000_000_000,
        extra in 0u64..=1_000_000_000,
    ) {
        let low = largest_feasible_height(n, p, 1, 8, budget);
        let high = largest_feasible_height(n, p, 1, 8, budget + extra);
        prop_assert!(low <= high);
    }

    #[test]
    fn zeta_counts_round_trip(
        numerator in prop::collection::vec(-30i64..=30, 0..=3),
        q in prop::sample::select(vec![2i64, 3, 5]),
        poles in 0u32..=2,
    ) {
        let mut num = vec![1i64];
        num.extend(numerator);
        let den = trivial_factors(&BigInt::from(q), 0..=poles);
        let zeta = RationalZeta::new(small(&num), den);
        let counts = zeta.counts(10);
        let series = ZetaSeries::from_counts(BigInt::from(q), &counts);
        prop_assert_eq!(series.coeffs, ratio(&zeta.expand(10)));
    }

    #[test]
    fn coefficient_and_series_divisibility_agree(
        digits in prop::collection::vec(-4i64..=4, 1..=4),
        p in prop::sample::select(vec![2u64, 3, 5]),
        shift in prop::collection::vec(0u32..=3, 4),
        kappa in 0u32..=3,
    ) {
        // c_j = digit_j * p^{shift_j}, so every divisibility pattern occurs
        let mut poly = vec![BigInt::from(1)];
        for (j, &c) in digits.iter().enumerate() {
            poly.push(BigInt::from(c) * BigInt::from(p).pow(shift[j] * (j as u32 + 1)));
        }
        let order = poly.len() + 2;
        let inverse = inverse_unit_series(&poly, order);
        let series = ZetaSeries { q: BigInt::from(p), coeffs: ratio(&inverse) };
        let by_coeffs = divisibility_check(&poly, p, 1, kappa);
        let by_series = verify_zeta_ring_membership(&series, p, 1, kappa, 4).unwrap().pass;
        prop_assert_eq!(by_coeffs, by_series);
        prop_assert_eq!(by_coeffs, verify_eigenvalue_divisibility(&poly, p, 1, kappa, 4).pass);
    }
}

#[test]
fn projective_space_zeta_reconstructs() {
    for n in 1..=3usize {
        let sys = PolynomialSystem::parse(n, &[] as &[&str]).unwrap();
        for p in [2u64, 3, 5] {
            let levels = largest_feasible_height(n, p, 1, n + 1, 50_000_000);
            if levels < n + 1 {
                continue;
            }
            let counts = count_tower(&sys, p, 1, n + 1, &CountConfig::default()).unwrap();
            let series = ZetaSeries::from_counts(BigInt::from(p), &counts.counts);
            let z = pade_reconstruct(&series, 0, n + 1).unwrap();
            assert_eq!(z.numerator, small(&[1]), "P^{n} over F_{p}");
            assert_eq!(z.denominator, trivial_factors(&BigInt::from(p), 0..=n as u32));
        }
    }
}

#[test]
fn ring_membership_is_monotone_in_kappa() {
    for entry in catalog::entries() {
        let input = entry.default_input();
        let sys = input.system().unwrap();
        let counts = count_tower(&sys, input.p, 1, input.s, &CountConfig::default()).unwrap();
        let series = zetacheck::zeta::series_from_counts(&counts, true);
        let verdicts: Vec<bool> = (0..=4)
            .map(|k| verify_zeta_ring_membership(&series, input.p, 1, k, 5).unwrap().pass)
            .collect();
        assert!(verdicts.windows(2).all(|w| w[0] || !w[1]), "{}: {verdicts:?}", entry.name);
    }
}
