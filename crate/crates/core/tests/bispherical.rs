use hurwitz_core::bispherical::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn product_rule_all_small_l() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for l1 in 0..=2 {
        for l2 in 0..=2 {
            let r = verify_bispherical_product(l1, l2, &mut rng, 25).unwrap();
            assert!(r.max_residual < 1e-10, "l1 = {l1}, l2 = {l2}: {}", r.max_residual);
            assert!(r.max_unitarity_residual < 1e-12);
        }
    }
    assert_eq!(verify_bispherical_product(0, 0, &mut rng, 3).unwrap().max_residual, 0.0);
    assert!(verify_bispherical_product(3, 0, &mut rng, 1).is_err());
}

#[test]
fn trivial_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a = EulerAngles::random(&mut rng);
        let d0 = wigner_D(WignerIndex::new(0, 0, 0).unwrap(), a).unwrap();
        assert!((d0.re - 1.0).abs() < 1e-15 && d0.im.abs() < 1e-15);
        let d = wigner_D(WignerIndex::new(1, 0, 0).unwrap(), EulerAngles::new(0.0, a.beta, 0.0)).unwrap();
        assert!((d.re - a.beta.cos()).abs() < 1e-13 && d.im.abs() < 1e-15);
    }
    assert!(WignerIndex::new(3, 0, 0).is_err());
    assert!(WignerIndex::new(1, 2, 0).is_err());
}

#[test]
fn clebsch_gordan_orthogonality() {
    for l1 in 0..=2 {
        for l2 in 0..=2 {
            assert!(cg_orthogonality_residual(l1, l2).unwrap() < 1e-12);
        }
    }
    for l in 0..=2 {
        assert!((clebsch_gordan(l, 0, 0, 0, l, 0).unwrap() - 1.0).abs() < 1e-14);
    }
    // Column normalization for <1 0; 1 0 | l 0>.
    let s: f64 = (0..=2).map(|l| clebsch_gordan(1, 0, 1, 0, l, 0).unwrap().powi(2)).sum();
    assert!((s - 1.0).abs() < 1e-14);
}

#[test]
fn small_d_is_orthogonal() {
    for l in 0..=2 {
        let d = small_d(l, 1.234).unwrap();
        let p = &d * d.transpose();
        assert!((p - nalgebra::DMatrix::identity(d.nrows(), d.ncols())).abs().max() < 1e-13);
    }
}
