use hurwitz_core::ksmap::Side;
use hurwitz_core::param::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn r8_round_trip_with_conjugated_phases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rep = verify_r8(&mut rng, 200, Phases::Conjugated).unwrap();
    assert!(rep.max_component_residual < 1e-10, "{rep:?}");
    assert!(rep.max_norm_residual < 1e-12, "{rep:?}");
    assert!(rep.max_overlap_residual.unwrap() < 1e-12, "{rep:?}");
}

#[test]
fn direct_phases_miss_the_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rep = verify_r8(&mut rng, 200, Phases::Direct).unwrap();
    assert!(rep.max_component_residual > 0.1, "{rep:?}");
    // Unimodular t_i keep the norm either way.
    assert!(rep.max_norm_residual < 1e-12);
}

#[test]
fn cayley_klein_round_trip_both_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for side in Side::BOTH {
        let rep = verify_cayley_klein(&mut rng, 200, side).unwrap();
        assert!(rep.max_component_residual < 1e-10, "{side}: {rep:?}");
        assert!(rep.max_norm_residual < 1e-12);
    }
}

#[test]
fn left_side_product_entries() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let a = R8Angles::random(&mut rng);
        let w = w_values(&a, Phases::Conjugated);
        let [w1, w2, w3, w4] = w;
        let p = left_side_product(&w);
        let reference = [
            [w1.conj() * w3 + w2 * w4.conj(), w1.conj() * w4 - w2 * w3.conj()],
            [w2.conj() * w3 - w1 * w4.conj(), w2.conj() * w4 + w1 * w3.conj()],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert!((p[i][j] - reference[i][j]).norm() < 1e-14);
            }
        }
        let _ = right_side_product(&w);
    }
}

#[test]
fn double_sphere_is_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..8 {
        let angles: Vec<f64> = (0..2 * n - 3).map(|_| rng.gen_range(0.0..6.3)).collect();
        let x = hyperspherical(n, &angles, Variant::Double).unwrap();
        assert_eq!(x.len(), 2 * (n - 1));
        assert!((x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        let y = hyperspherical(n, &angles[..n - 1], Variant::Left).unwrap();
        assert!((y.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
