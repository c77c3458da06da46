use hsign_core::forms::{
    beta, build_eigen_system, hecke_product_check, kill_multiples, prime_power_coeffs, shift_by, u_operator,
    CoefficientSystem, WeightData,
};
use hsign_core::oracle::synthetic_table;
use hsign_core::quadfield::{Field, Ideal};
use hsign_core::satotate::{angle_of, beta_power_closed};
use hsign_core::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn synthetic_system(disc: i64, k: u32, level: &str, bound: u64, seed: u64) -> CoefficientSystem {
    let field = if disc == 1 { Field::rational() } else { Field::from_disc(disc).unwrap() };
    let weight = WeightData::parallel(k, field.degree()).unwrap();
    let level = Ideal::parse(&field, level).unwrap();
    let table = synthetic_table(field, weight, level, bound, seed).unwrap();
    build_eigen_system(&table, bound).unwrap()
}

fn system_params() -> impl Strategy<Value = (i64, u32, &'static str, u64)> {
    (
        prop::sample::select(vec![(1i64, "1"), (1, "7"), (5, "1"), (5, "11.0"), (8, "7.0"), (13, "3.1")]),
        prop::sample::select(vec![2u32, 4, 6, 12]),
        any::<u64>(),
    )
        .prop_map(|((d, lvl), k, seed)| (d, k, lvl, seed))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn hecke_relations_close((disc, k, level, seed) in system_params()) {
        let sys = synthetic_system(disc, k, level, 100, seed);
        let good: Vec<Ideal> = sys.field().ideals_up_to(100)
            .into_iter()
            .filter(|m| sys.is_covered(m))
            .collect();
        for m in &good {
            for n in &good {
                if m.norm() * n.norm() > 100 {
                    break;
                }
                prop_assert!(hecke_product_check(&sys, m, n).unwrap().is_zero(), "m={} n={}", m, n);
            }
        }
    }

    #[test]
    fn shift_then_u_is_identity((disc, k, level, seed) in system_params(), qi in 0usize..4) {
        let sys = synthetic_system(disc, k, level, 300, seed);
        let q = sys.field().ideals_up_to(12).into_iter()
            .filter(|q| !q.is_unit() && sys.is_covered(q))
            .nth(qi);
        if let Some(q) = q {
            let back = u_operator(&shift_by(&sys, &q).unwrap(), &q).unwrap();
            prop_assert_eq!(back.bound(), sys.bound());
            for m in sys.field().ideals_up_to(300).iter().filter(|m| sys.is_covered(m)) {
                prop_assert_eq!(back.coeff(m).unwrap(), sys.coeff(m).unwrap());
            }
        }
    }

    #[test]
    fn kill_zeroes_multiples_only((disc, k, level, seed) in system_params(), qi in 0usize..3) {
        let sys = synthetic_system(disc, k, level, 400, seed);
        let primes: Vec<_> = sys.field().primes_up_to(30).into_iter()
            .map(|p| sys.field().prime_ideal(p))
            .filter(|q| sys.is_covered(q))
            .collect();
        let q = &primes[qi];
        let g = kill_multiples(&sys, q).unwrap();
        prop_assert_eq!(g.level(), &sys.level().mul(&q.pow(2).unwrap()).unwrap());
        for m in sys.field().ideals_up_to(400).iter().filter(|m| sys.is_covered(m)) {
            let after = g.coeff(m).unwrap();
            if q.divides(m) {
                prop_assert!(after.is_zero(), "C({}) = {}", m, after);
            } else if m.coprime(q).unwrap() {
                prop_assert_eq!(after, sys.coeff(m).unwrap());
            }
        }
    }

    #[test]
    fn normalized_prime_powers_follow_the_angle((disc, k, level, seed) in system_params(), pi in 0usize..6) {
        let sys = synthetic_system(disc, k, level, 50, seed);
        let p = sys.field().primes_up_to(50).into_iter()
            .filter(|p| sys.is_covered(&sys.field().prime_ideal(*p)))
            .nth(pi).unwrap();
        let c_p = sys.coeff(&sys.field().prime_ideal(p)).unwrap();
        let b = beta(&sys, &sys.field().prime_ideal(p)).unwrap();
        let alpha = angle_of(b).unwrap();
        let k0 = sys.weight().k0();
        let powers = prime_power_coeffs(&c_p, p.norm, k0, 100);
        for (m, c) in powers.iter().enumerate() {
            let scale = num_traits::pow(BigInt::from(p.norm), m * (k0 as usize - 1));
            let sq = (c * c / Rational::from_integer(scale)).to_f64().unwrap();
            let normalized = if c.is_negative() { -sq.sqrt() } else { sq.sqrt() };
            let expected = beta_power_closed(alpha, m as u64);
            let tol = 1e-6 * (m as f64 + 1.0) / alpha.sin().max(1e-3);
            prop_assert!((normalized - expected).abs() <= tol, "m={} {} vs {}", m, normalized, expected);
        }
    }
}

#[test]
fn kill_with_unit_ideal_is_zero() {
    let sys = synthetic_system(5, 2, "1", 200, 3);
    let g = kill_multiples(&sys, &sys.field().unit_ideal()).unwrap();
    assert_eq!(g.nonzero().count(), 0);
}

#[test]
fn multiplicativity_on_coprime_pairs() {
    let sys = synthetic_system(8, 4, "7.0", 500, 11);
    let ideals: Vec<Ideal> = sys.field().ideals_up_to(500).into_iter().filter(|m| sys.is_covered(m)).collect();
    for m in &ideals {
        for n in &ideals {
            if m.norm() * n.norm() > 500 {
                break;
            }
            if m.coprime(n).unwrap() {
                let mn = m.mul(n).unwrap();
                let lhs: Rational = sys.coeff(m).unwrap() * sys.coeff(n).unwrap();
                assert_eq!(lhs, sys.coeff(&mn).unwrap());
            }
        }
    }
}
