//! The same pipeline in single precision, with tolerances scaled to f32.

use dirac_hydro::{
    build_chiral_basis, check_fierz, compute_bilinears, extract_tensorial_connection, kinematic_velocity,
    polar_decompose, polar_reconstruct, verify_basis, Background, CliffordBasis, PlaneWave, Spinor,
};
use num_complex::Complex;

#[test]
fn basis_is_exact_in_f32() {
    let b: CliffordBasis<f32> = build_chiral_basis();
    assert_eq!(verify_basis(&b).max(), 0.0);
}

#[test]
fn polar_round_trip_in_f32() {
    let b: CliffordBasis<f32> = build_chiral_basis();
    let psi = Spinor::<f32>::from_interleaved([0.3, -0.1, 0.7, 0.2, -0.4, 0.5, 0.1, 0.9]);
    let bl = compute_bilinears(&psi, &b);
    assert!(check_fierz(&bl).all_below(1e-5));
    let pd = polar_decompose(&psi, &b).unwrap();
    let back = polar_reconstruct(&pd, &b);
    assert!((back - psi).max_abs() < 1e-5);
    let ku = kinematic_velocity(&pd);
    for (a, b) in ku.iter().zip(&pd.u) {
        assert!((a - b).abs() < 1e-5);
    }
}

#[test]
fn plane_wave_momentum_in_f32() {
    let b: CliffordBasis<f32> = build_chiral_basis();
    let p = [1.13f32.sqrt(), 0.3, 0.0, 0.2];
    let w = PlaneWave::<f32>::off_shell(p, [0.0, 0.0, 1.0], Complex::new(1.0, 0.0)).unwrap();
    let tc = extract_tensorial_connection(&w, &[0.1, 0.2, 0.0, -0.1], &Background::free(1.0f32), &b, 1e-2).unwrap();
    let pl = [p[0], -p[1], -p[2], -p[3]];
    for (mu, (a, b)) in tc.p.iter().zip(&pl).enumerate() {
        assert!((a - b).abs() < 1e-3, "{mu}: {a}");
    }
}
