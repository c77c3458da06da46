use std::f64::consts::PI;

use hsign_core::dirichlet::{
    completed_lambda, gamma_arguments, landau_positivity_check, real_zero_scan, rs_coefficients,
    rs_convolution_check, DirichletPolynomial, Lambda, ZeroScan,
};
use hsign_core::forms::{build_eigen_system, CoefficientSystem, WeightData};
use hsign_core::oracle::synthetic_table;
use hsign_core::satotate::{
    angle_of, beta_power_closed, beta_powers_recurrence, classify_exact, exact_zero_indices, simultaneous_density,
    AngleClass, AngleKind,
};
use hsign_core::{Field, Ideal, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn closed_form_matches_recurrence(alpha in 0.01f64..(PI - 0.01)) {
        let rec = beta_powers_recurrence(2.0 * alpha.cos(), 2000);
        for (m, r) in rec.iter().enumerate() {
            let c = beta_power_closed(alpha, m as u64);
            prop_assert!((c - r).abs() <= 1e-6 * (m as f64 + 1.0) / alpha.sin());
        }
    }

    #[test]
    fn angle_inverts_cosine(alpha in 0.0f64..=PI) {
        prop_assert!((angle_of(2.0 * alpha.cos()).unwrap() - alpha).abs() <= 1e-12 / alpha.sin().max(1e-4));
    }

    #[test]
    fn single_term_polynomial_has_no_zero(n in 1u64..1_000_000, a in -1e6f64..1e6) {
        prop_assume!(a != 0.0);
        let p = DirichletPolynomial::new([(n, a)]).unwrap();
        prop_assert_eq!(real_zero_scan(&p, -50.0, 50.0, 500, 1e-10).unwrap(), ZeroScan::Zeros(vec![]));
    }

    #[test]
    fn landau_sums_are_monotone(coeffs in prop::collection::vec(0.0f64..10.0, 1..60), alpha in -2.0f64..4.0) {
        let r = landau_positivity_check(&coeffs, alpha).unwrap();
        prop_assert!(r.monotone);
        prop_assert_eq!(r.identically_zero, coeffs.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn pole_predicate_matches_lattice(k in prop::collection::vec(1u32..20, 2), l in prop::collection::vec(1u32..20, 2), twice_s in -60i32..60) {
        let wf = WeightData::new(k.clone()).unwrap();
        let wg = WeightData::new(l.clone()).unwrap();
        let s = twice_s as f64 / 2.0;
        let (k0, l0) = (*k.iter().max().unwrap() as i32, *l.iter().max().unwrap() as i32);
        // twice each argument, as integers
        let expected = (0..2).any(|j| {
            let a = twice_s + 2 + (k[j] as i32 - l[j] as i32 - k0 - l0);
            let b = twice_s - ((k0 - k[j] as i32) + (l0 - l[j] as i32));
            (a <= 0 && a % 2 == 0) || (b <= 0 && b % 2 == 0)
        });
        let field = Field::from_disc(5).unwrap();
        let one = field.unit_ideal();
        let unit = CoefficientSystem::from_table(field, wf.clone(), one.clone(), 4, [(one.clone(), q(1))]).unwrap();
        let unit_g = CoefficientSystem::from_table(field, wg.clone(), one.clone(), 4, [(one.clone(), q(1))]).unwrap();
        let series = rs_coefficients(&unit, &unit_g, &one, &one, 4).unwrap();
        let got = completed_lambda(&wf, &wg, &series, s).unwrap();
        prop_assert_eq!(matches!(got, Lambda::PoleAt { .. }), expected, "s = {}, args {:?}", s, gamma_arguments(&wf, &wg, s).unwrap());
    }
}

#[test]
fn exact_zero_sets_up_to_twelve() {
    for s in 2..=12u32 {
        for r in (1..s).filter(|r| r.gcd(&s) == 1) {
            let expected: Vec<u64> = (1..=300).filter(|m| (m + 1) % s as u64 == 0).collect();
            assert_eq!(exact_zero_indices(r, s, 300), expected, "r/s = {r}/{s}");
        }
    }
}

#[test]
fn boundary_powers_are_exact_integers() {
    for m in 0..=2000u64 {
        assert_eq!(beta_power_closed(0.0, m), (m + 1) as f64);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(beta_power_closed(PI, m), sign * (m + 1) as f64);
    }
}

#[test]
fn densities_approach_their_limits() {
    let classes: Vec<AngleClass> = [2, -2, 0, 1, -1]
        .iter()
        .map(|&b| classify_exact(&q(b)).unwrap())
        .chain([classify_exact(&Rational::new(1.into(), 3.into())).unwrap()])
        .collect();
    let x = 1_000_000u64;
    for f in &classes {
        for g in &classes {
            let r = simultaneous_density(f, g, x);
            assert!(r.consistent(), "{:?} {:?}: {r:?}", f.kind, g.kind);
            let limit = *r.exact_density.numer() as f64 / *r.exact_density.denom() as f64;
            assert!((r.nonzero_count as f64 / x as f64 - limit).abs() < 1e-5, "{:?} {:?}", f.kind, g.kind);
            let lower = *r.lower_bound_density.numer() as f64 / *r.lower_bound_density.denom() as f64;
            assert!(lower > 0.0);
        }
    }
}

#[test]
fn density_cases_follow_the_angles() {
    let zero = classify_exact(&q(2)).unwrap();
    let third = classify_exact(&q(1)).unwrap();
    let irr = classify_exact(&Rational::new(1.into(), 2.into())).unwrap();
    assert_eq!(irr.kind, AngleKind::IrrationalMultiple);
    assert_eq!(simultaneous_density(&zero, &zero, 10).case_id, 1);
    assert_eq!(simultaneous_density(&zero, &irr, 10).case_id, 2);
    assert_eq!(simultaneous_density(&irr, &irr, 10).case_id, 3);
    assert_eq!(simultaneous_density(&third, &irr, 10).case_id, 4);
}

fn nonneg_pair(field: Field, seed: u64, bound: u64) -> (CoefficientSystem, CoefficientSystem) {
    // g has the same signs as f, so every product C(m, f) C(m, g) is >= 0
    let level = field.unit_ideal();
    let f = build_eigen_system(
        &synthetic_table(field, WeightData::parallel(2, field.degree()).unwrap(), level.clone(), bound, seed).unwrap(),
        bound,
    )
    .unwrap();
    let entries: Vec<(Ideal, Rational)> = f.nonzero().map(|(m, c)| (m.clone(), c * q(3))).collect();
    let g = CoefficientSystem::from_table(field, WeightData::parallel(4, field.degree()).unwrap(), level, bound, entries)
        .unwrap();
    (f, g)
}

#[test]
fn rankin_coefficients_nonnegative_under_nonnegative_products() {
    for (disc, seed) in [(1i64, 1u64), (5, 2), (8, 3), (13, 4)] {
        let field = if disc == 1 { Field::rational() } else { Field::from_disc(disc).unwrap() };
        let (f, g) = nonneg_pair(field, seed, 2000);
        let c = field.unit_ideal();
        let series = rs_coefficients(&f, &g, &c, &c, 2000).unwrap();
        assert!(series.coeffs().iter().all(|b| !b.is_negative()));
        assert_eq!(series.coeff(1).unwrap(), &q(3));
    }
}

#[test]
fn convolution_paths_agree_on_random_truncations() {
    use rand::{Rng, SeedableRng};
    let field = Field::from_disc(5).unwrap();
    let bound = 3000;
    let level = Ideal::parse(&field, "11.0").unwrap();
    let f = build_eigen_system(
        &synthetic_table(field, WeightData::parallel(2, 2).unwrap(), level.clone(), bound, 5).unwrap(),
        bound,
    )
    .unwrap();
    let g = build_eigen_system(
        &synthetic_table(field, WeightData::parallel(4, 2).unwrap(), level.clone(), bound, 6).unwrap(),
        bound,
    )
    .unwrap();
    let c = level.pow(2).unwrap();
    let full = rs_coefficients(&f, &g, &c, &level, bound).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let m = rng.random_range(1..=bound);
        let s = rng.random_range(4.5..12.0);
        let check = rs_convolution_check(&full.truncate(m), &f, &g, s).unwrap();
        assert!(check.pass, "M = {m}, s = {s}: {check:?}");
        assert!(!check.residual.is_nan());
    }
    assert!(full.coeffs()[2..].iter().any(|b| !b.is_zero()));
}
