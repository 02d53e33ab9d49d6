use std::time::Instant;

use hurwitz_core::ksmap::{quadratic_map, Side, MAP_DIMS};
use hurwitz_core::laplace::*;
use hurwitz_core::random::random_x_poly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn factorization_holds_for_every_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in MAP_DIMS {
        for side in Side::BOTH {
            let start = Instant::now();
            let map = quadratic_map(n, side).unwrap();
            let mut checker = FactorizationChecker::new(map);
            let harmonics = harmonic_monomial_suite(n, 3).unwrap();
            for f in &harmonics {
                let r = checker.check(f).unwrap();
                assert!(r.passed, "n={n} {side} f={f}");
                // Harmonic f pulls back to a harmonic polynomial.
                assert_eq!(r.lhs.num_terms(), 0);
            }
            for _ in 0..20 {
                let f = random_x_poly(&mut rng, n, 3, 6);
                assert!(checker.check(&f).unwrap().passed, "n={n} {side} f={f}");
            }
            let jac = jacobian_identities(map).unwrap();
            assert!(jac.all_hold(), "{jac:?}");
            eprintln!("n={n} {side}: {} harmonics in {:?}", harmonics.len(), start.elapsed());
        }
    }
}

#[test]
fn checker_agrees_with_direct_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in [3, 5] {
        let map = quadratic_map(n, Side::Left).unwrap();
        let mut checker = FactorizationChecker::new(map);
        for _ in 0..5 {
            let f = random_x_poly(&mut rng, n, 3, 4);
            assert_eq!(checker.check(&f).unwrap(), verify_along(map, &f).unwrap());
        }
    }
}

#[test]
fn corrupted_map_is_caught() {
    let bad = corrupted_map().unwrap();
    let mut checker = FactorizationChecker::new(&bad);
    let failures = harmonic_monomial_suite(3, 3)
        .unwrap()
        .iter()
        .filter(|f| !checker.check(f).unwrap().passed)
        .count();
    assert!(failures > 0);
    assert!(!jacobian_identities(&bad).unwrap().all_hold());
}
