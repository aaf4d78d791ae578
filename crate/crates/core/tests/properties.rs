#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use dirac_hydro::guidance::momentum_long_form;
use dirac_hydro::metric::dot;
use dirac_hydro::{
    build_chiral_basis, check_fierz, check_spinor_constraints, compute_bilinears, kinematic_velocity, lorentz_exp,
    momentum_from_velocity, polar_decompose, polar_reconstruct, velocity_from_momentum, CliffordBasis64,
    LorentzParams, Spinor,
};
use num_complex::Complex;
use proptest::prelude::*;
use std::f64::consts::PI;

fn basis() -> CliffordBasis64 {
    build_chiral_basis()
}

fn spinor() -> impl Strategy<Value = Spinor<f64>> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(Spinor::from_interleaved)
}

fn regular(psi: &Spinor<f64>) -> bool {
    let b = compute_bilinears(psi, &basis());
    b.chiral_invariant() > 1e-6 * psi.norm_sqr().powi(2)
}

fn wrap(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fierz_identities_hold(psi in spinor()) {
        let b = basis();
        let bl = compute_bilinears(&psi, &b);
        prop_assert!(check_fierz(&bl).all_below(1e-10), "{}", check_fierz(&bl));
        prop_assert!(check_spinor_constraints(&psi, &bl, &b).all_below(1e-10));
        prop_assert!(bl.imag_residue < 1e-14);
    }

    #[test]
    fn bilinears_ignore_global_phase(psi in spinor(), theta in -PI..PI) {
        let b = basis();
        let a = compute_bilinears(&psi, &b);
        let c = compute_bilinears(&psi.scale(Complex::from_polar(1.0, theta)), &b);
        prop_assert!(a.max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn bilinears_are_lorentz_covariant(psi in spinor(), lam in prop::array::uniform6(-2.0f64..2.0)) {
        let b = basis();
        let pair = lorentz_exp(&LorentzParams(lam), &b);
        let moved = compute_bilinears(&(pair.spin_rep * psi), &b);
        // psibar' gamma^a psi' = psibar spin^-1 gamma^a spin psi = Lambda^a_b U^b
        let expect = compute_bilinears(&psi, &b).transformed(&pair.vec_rep);
        let scale = expect.u[0].abs().max(1.0);
        prop_assert!(moved.max_abs_diff(&expect) < 1e-12 * scale, "{}", moved.max_abs_diff(&expect));
    }

    #[test]
    fn lorentz_conjugation_invariant(lam in prop::array::uniform6(-2.0f64..2.0)) {
        let b = basis();
        let pair = lorentz_exp(&LorentzParams(lam), &b);
        prop_assert!(pair.conjugation_residual(&b) < 1e-10);
        prop_assert!(pair.orthogonality_residual() < 1e-10);
    }

    #[test]
    fn polar_round_trip(psi in spinor().prop_filter("regular", regular)) {
        let b = basis();
        let pd = polar_decompose(&psi, &b).unwrap();
        let back = polar_reconstruct(&pd, &b);
        prop_assert!((back - psi).max_abs() < 1e-10 * psi.max_abs());
        prop_assert!(max_diff4(&kinematic_velocity(&pd), &pd.u) < 1e-10);
        prop_assert!((dot(&pd.u, &pd.u) - 1.0).abs() < 1e-10);
        prop_assert!((dot(&pd.s, &pd.s) + 1.0).abs() < 1e-10);
        prop_assert!(dot(&pd.u, &pd.s).abs() < 1e-10);
        prop_assert!(pd.phi > 0.0 && pd.u[0] > 0.0);
        prop_assert!(pd.beta > -PI && pd.beta <= PI);
    }

    #[test]
    fn global_phase_moves_only_the_residual_phase(
        psi in spinor().prop_filter("regular", regular),
        theta in -3.0f64..3.0,
    ) {
        let b = basis();
        let a = polar_decompose(&psi, &b).unwrap();
        let c = polar_decompose(&psi.scale(Complex::from_polar(1.0, theta)), &b).unwrap();
        prop_assert!((a.phi - c.phi).abs() < 1e-12);
        prop_assert!((a.beta - c.beta).abs() < 1e-10);
        prop_assert!(max_diff4(&a.u, &c.u) < 1e-10 && max_diff4(&a.s, &c.s) < 1e-10);
        prop_assert!(wrap(c.residual_phase - a.residual_phase + theta).abs() < 1e-10);
    }

    #[test]
    fn real_rescaling_scales_the_module(psi in spinor().prop_filter("regular", regular), k in 0.1f64..10.0) {
        let b = basis();
        let a = polar_decompose(&psi, &b).unwrap();
        let c = polar_decompose(&psi.scale_real(k), &b).unwrap();
        prop_assert!((c.phi - k * a.phi).abs() < 1e-12 * c.phi);
        prop_assert!(max_diff4(&a.u, &c.u) < 1e-10);
    }

    #[test]
    fn guidance_inversion_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, s) = random_frame(&mut r, 1.5);
        let (cf, [y, z], m, beta) = random_forms(&mut r, &s, 0.1);
        let p = momentum_from_velocity(&u, &s, &cf);
        let long = momentum_long_form(&u, &s, &y, &z, m, beta);
        prop_assert!(max_diff4(&p, &long) < 1e-12, "{}", max_diff4(&p, &long));
        let back = velocity_from_momentum(&p, &s, &cf).unwrap();
        prop_assert!(max_diff4(&back.u, &u) < 1e-10);
        prop_assert!((back.norm - 1.0).abs() < 1e-10);
    }
}
