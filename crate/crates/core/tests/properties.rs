//! Randomized properties of the wave algebra, the co-number engine, and the
//! modular image. Exhaustive counterparts live in invariants.rs.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use wavenum_core::conumber::{self, CoProduct};
use wavenum_core::modular::ModularCoProduct;
use wavenum_core::oracle;
use wavenum_core::wave::{
    elementwise_product_term, four_term_expansion, sum_terms, term_at, translate,
    DecompositionKind, WaveNumber,
};

fn prime_pool() -> Vec<u64> {
    vec![2, 3, 5, 7, 11, 13]
}

/// Strategy: a non-empty subset of the small prime pool.
fn prime_subset() -> impl Strategy<Value = Vec<u64>> {
    proptest::sample::subsequence(prime_pool(), 1..=6)
}

proptest! {
    #[test]
    fn product_is_isomorphic_to_multiplication(
        m in 1u64..=10_000,
        n in 1u64..=10_000,
        phases in proptest::collection::vec(-50_000i64..=50_000, 8),
    ) {
        let wm = WaveNumber::from_natural(m).unwrap();
        let wn = WaveNumber::from_natural(n).unwrap();
        let product = wm.circular_product(&wn);
        prop_assert_eq!(product.to_natural(), BigUint::from(m) * BigUint::from(n));
        prop_assert_eq!(&product, &WaveNumber::from_natural(m * n).unwrap());
        for k in phases {
            let built = elementwise_product_term(
                m, n, k, DecompositionKind::Plain, DecompositionKind::Plain,
            ).unwrap();
            prop_assert_eq!(&built, &product.term_at(k));
        }
    }

    #[test]
    fn product_commutes_and_associates(
        a in 1u64..=500,
        b in 1u64..=500,
        c in 1u64..=500,
    ) {
        let wa = WaveNumber::from_natural(a).unwrap();
        let wb = WaveNumber::from_natural(b).unwrap();
        let wc = WaveNumber::from_natural(c).unwrap();
        let left = wa.circular_product(&wb).circular_product(&wc);
        let right = wa.circular_product(&wb.circular_product(&wc));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&wa.circular_product(&wb), &wb.circular_product(&wa));
        let many = WaveNumber::circular_product_many(&[wc, wb, wa]).unwrap();
        prop_assert_eq!(&many, &left);
    }

    #[test]
    fn star_plus_circle_partitions_the_wave(
        n in 1u64..=1_000,
        k in -1_000i64..=1_000,
    ) {
        let plain = term_at(n, k, DecompositionKind::Plain).unwrap();
        let star = term_at(n, k, DecompositionKind::Star).unwrap();
        let circle = term_at(n, k, DecompositionKind::Circle).unwrap();
        prop_assert_eq!(sum_terms(&[star.clone(), circle.clone()]).unwrap(), plain);
        // and the two annihilate element-wise
        prop_assert!(star.mul(&circle).is_zero());
    }

    #[test]
    fn translation_has_period_n_over_gcd(
        n in 1u64..=300,
        j in 1u64..=600,
        k in -500i64..=500,
    ) {
        let q = n / n.gcd(&j);
        let t0 = translate(n, j as i64, k).unwrap();
        let t1 = translate(n, j as i64, k + q as i64).unwrap();
        prop_assert_eq!(t0, t1);
        // q is minimal: any proper divisor shift lands on a different root
        for d in 1..q {
            if q % d == 0 {
                prop_assert_ne!(
                    translate(n, j as i64, k).unwrap(),
                    translate(n, j as i64, k + d as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn four_term_expansion_sums_to_the_plain_product(
        m in 1u64..=60,
        n in 1u64..=60,
        k in -5_000i64..=5_000,
    ) {
        let x = four_term_expansion(m, n, k).unwrap();
        let nonzero = x.as_array().iter().filter(|t| !t.is_zero()).count();
        prop_assert!(nonzero <= 1);
        let plain = elementwise_product_term(
            m, n, k, DecompositionKind::Plain, DecompositionKind::Plain,
        ).unwrap();
        prop_assert_eq!(x.sum().unwrap(), plain);
    }

    #[test]
    fn coproduct_zero_iff_shared_factor(
        n in 1usize..=8,
        k in 1u64..=1_000_000,
    ) {
        let cp = CoProduct::first_n(n).unwrap();
        let period = cp.period().to_u64().expect("first eight primorials fit u64");
        let expect_zero = k.gcd(&period) > 1;
        prop_assert_eq!(cp.value(k).is_zero(), expect_zero);
    }

    #[test]
    fn scan_agrees_with_sequential_reference(
        n in 1usize..=6,
        lo in 1u64..=500_000,
        len in 0u64..=150_000,
    ) {
        let primes = oracle::first_primes(n);
        let hi = lo + len;
        prop_assert_eq!(
            conumber::surviving_in_range(&primes, lo, hi),
            conumber::surviving_in_range_seq(&primes, lo, hi)
        );
    }

    #[test]
    fn weighted_sum_tracks_each_component(
        primes in prime_subset(),
        k in 1u64..=100_000,
    ) {
        let mcp = ModularCoProduct::new(&primes).unwrap();
        // each weight times its own residue is the whole sum mod that prime,
        // so the sum vanishes mod p_i exactly when p_i divides k
        match mcp.value(k) {
            wavenum_core::modular::ModularFrequency::Blank => {
                prop_assert!(primes.iter().any(|&p| k % p == 0));
            }
            wavenum_core::modular::ModularFrequency::Residue { value, .. } => {
                for (&p, w) in mcp.primes().iter().zip(mcp.weights()) {
                    let p_big = BigUint::from(p);
                    let lhs = &value % &p_big;
                    let rhs = (w * BigUint::from(k % p)) % &p_big;
                    prop_assert_eq!(lhs, rhs);
                    prop_assert!(k % p != 0);
                }
            }
        }
    }

    #[test]
    fn modular_blank_agrees_with_wave_zero(
        primes in prime_subset(),
        k in 1u64..=100_000,
    ) {
        let mcp = ModularCoProduct::new(&primes).unwrap();
        let cp = CoProduct::new(&primes).unwrap();
        prop_assert_eq!(mcp.value(k).is_blank(), cp.value(k).is_zero());
    }

    #[test]
    fn term_equality_is_an_equivalence_on_samples(
        num_a in -300i64..=300, den_a in 1u64..=60,
        shift in -5i64..=5,
    ) {
        let a = term_at(den_a, num_a, DecompositionKind::Plain).unwrap();
        let b = term_at(den_a, num_a + shift * den_a as i64, DecompositionKind::Plain).unwrap();
        prop_assert_eq!(a.clone(), a.clone());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn window_report_round_trips_through_json() {
    let report = conumber::window_primes(&conumber::SieveState::initial()).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back: conumber::WindowReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert!(!json.contains("elapsed"));
}

#[test]
fn schedule_outcome_round_trips_through_json() {
    let out = conumber::run_schedule(
        2,
        conumber::ScheduleMode::Maximal,
        conumber::DEFAULT_PHASE_BUDGET,
    )
    .unwrap();
    let json = serde_json::to_string(&out).unwrap();
    let back: conumber::ScheduleOutcome = serde_json::from_str(&json).unwrap();
    assert_eq!(back, out);
}

#[test]
fn sieve_state_round_trips_through_json() {
    let (_, state) = conumber::recursion_step(&conumber::SieveState::initial()).unwrap();
    let json = serde_json::to_string(&state).unwrap();
    let back: conumber::SieveState = serde_json::from_str(&json).unwrap();
    assert_eq!(back, state);
}
