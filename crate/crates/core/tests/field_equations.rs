#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use dirac_hydro::fieldconn::{covariant_derivative, transport_residuals, polar_derivative_residual};
use dirac_hydro::gordon::{polar_groups_at, DEFAULT_KAPPA};
use dirac_hydro::{
    all_residuals, build_chiral_basis, compute_bilinears, equivalence_probe, evaluate_point, AffineField, Background,
    CliffordBasis64, Equation, FourVector, GaussianProfile, Result, Spinor, SpinorField,
};
use num_complex::Complex;
use rand::Rng;

/// psi multiplied by exp(-i q chi) with chi = c . x, the gauge partner of A + c.
struct Regauged<F> {
    inner: F,
    q: f64,
    c: FourVector<f64>,
}

impl<F: SpinorField<f64>> Regauged<F> {
    fn phase(&self, x: &FourVector<f64>) -> Complex<f64> {
        let chi: f64 = (0..4).map(|k| self.c[k] * x[k]).sum();
        Complex::from_polar(1.0, -self.q * chi)
    }
}

impl<F: SpinorField<f64>> SpinorField<f64> for Regauged<F> {
    fn value(&self, x: &FourVector<f64>) -> Result<Spinor<f64>> {
        Ok(self.inner.value(x)?.scale(self.phase(x)))
    }
    fn gradient(&self, x: &FourVector<f64>) -> Result<[Spinor<f64>; 4]> {
        let g = self.inner.gradient(x)?;
        let psi = self.inner.value(x)?;
        let e = self.phase(x);
        Ok(std::array::from_fn(|mu| {
            (g[mu] + psi.scale(Complex::new(0.0, -self.q * self.c[mu]))).scale(e)
        }))
    }
}

/// Jets solve the field equation at x0 exactly; the bilinear equations
/// then hold to rounding, and the polar groups (which see the connection
/// through a stencil) vanish at second order in h.
#[test]
fn dirac_jets_satisfy_every_group() {
    let b: CliffordBasis64 = build_chiral_basis();
    let mut r = rng(5);
    for trial in 0..25 {
        let bg = busy_background(&mut r);
        let x0 = std::array::from_fn(|_| r.random_range(-1.0..1.0));
        let jet = dirac_jet(&mut r, x0, &bg, &b);
        let coarse = all_residuals(&jet, &x0, &bg, &b, 2e-4).unwrap();
        let fine = all_residuals(&jet, &x0, &bg, &b, 1e-4).unwrap();
        assert!(fine.get(Equation::Dirac).unwrap() < 1e-13, "trial {trial}");
        for eq in Equation::BILINEAR {
            assert!(fine.get(eq).unwrap() < 1e-12, "trial {trial} {}: {}", eq.label(), fine.get(eq).unwrap());
        }
        let worst = |g: &dirac_hydro::GroupResiduals| Equation::POLAR.iter().map(|e| g.get(*e).unwrap()).fold(0.0, f64::max);
        let (c, f) = (worst(&coarse), worst(&fine));
        assert!(f < 1e-4, "trial {trial}: {f}");
        let ratio = c / f;
        assert!((3.5..4.5).contains(&ratio), "trial {trial}: {c} -> {f}");
    }
}

#[test]
fn jets_violating_the_field_equation_break_the_groups() {
    let b: CliffordBasis64 = build_chiral_basis();
    let mut r = rng(6);
    let bg = busy_background(&mut r);
    let x0 = [0.0; 4];
    let mut jet = dirac_jet(&mut r, x0, &bg, &b);
    jet.jet[0] = jet.jet[0] + Spinor::seed().scale_real(0.2);
    let res = all_residuals(&jet, &x0, &bg, &b, 1e-4).unwrap();
    assert!(res.get(Equation::Dirac).unwrap() > 1e-2);
    for g in ["A", "B", "C", "D"] {
        assert!(res.group_max(g).unwrap() > 1e-3, "group {g}");
    }
}

#[test]
fn gauge_transformation_leaves_hydrodynamics_unchanged() {
    let b: CliffordBasis64 = build_chiral_basis();
    let mut r = rng(8);
    let bg = busy_background(&mut r);
    let x0 = [0.1, -0.2, 0.3, 0.05];
    let jet = dirac_jet(&mut r, x0, &bg, &b);
    let c = [0.7, -0.4, 0.2, 0.9];
    let mut bg2 = bg;
    bg2.a = AffineField {
        constant: std::array::from_fn(|k| bg.a.constant[k] + c[k]),
        gradient: bg.a.gradient,
    };
    let moved = Regauged { inner: jet, q: bg.charge, c };

    // nabla psi is covariant: it picks up the same phase as psi
    let d1 = covariant_derivative(&jet, &x0, &bg).unwrap();
    let d2 = covariant_derivative(&moved, &x0, &bg2).unwrap();
    let e = moved.phase(&x0);
    for mu in 0..4 {
        assert!((d2[mu] - d1[mu].scale(e)).max_abs() < 1e-14);
    }

    let p1 = evaluate_point(&jet, &x0, &bg, &b, 1e-4).unwrap();
    let p2 = evaluate_point(&moved, &x0, &bg2, &b, 1e-4).unwrap();
    assert!(p1.state.bilinears.max_abs_diff(&p2.state.bilinears) < 1e-14);
    for mu in 0..4 {
        assert!((p1.connection.p[mu] - p2.connection.p[mu]).abs() < 1e-8, "P_{mu}");
        for n in 0..6 {
            assert!((p1.connection.r[mu].0[n] - p2.connection.r[mu].0[n]).abs() < 1e-8);
        }
    }
    let g1 = all_residuals(&jet, &x0, &bg, &b, 1e-4).unwrap();
    let g2 = all_residuals(&moved, &x0, &bg2, &b, 1e-4).unwrap();
    for (eq, v) in &g1.entries {
        assert!((v - g2.get(*eq).unwrap()).abs() < 1e-8, "{}", eq.label());
    }
}

#[test]
fn identities_hold_off_shell_too() {
    // polar derivative and transport are identities, valid for any regular field
    let b: CliffordBasis64 = build_chiral_basis();
    let f = GaussianProfile {
        inner: two_waves(),
        center: [0.0, 0.1, 0.0],
        width: 0.6,
    };
    let mut bg = Background::free(1.0);
    bg.charge = 0.4;
    bg.a = AffineField::constant([0.3, 0.1, 0.0, -0.2]);
    let x = [0.2, 0.3, -0.1, 0.2];
    let pt = evaluate_point(&f, &x, &bg, &b, 1e-3).unwrap();
    assert!(polar_derivative_residual(&pt, &b) < 1e-6);
    assert!(transport_residuals(&pt).max() < 1e-6);
    let groups = polar_groups_at(&pt, &bg);
    assert!(groups.max() > 1e-2, "a non-solution must violate the groups");
}

#[test]
fn probe_separates_solution_from_non_solution() {
    let b: CliffordBasis64 = build_chiral_basis();
    let bg = Background::free(1.0);
    let mut r = rng(9);
    let pts: Vec<FourVector<f64>> = (0..20).map(|_| std::array::from_fn(|_| r.random_range(-1.0..1.0))).collect();

    let sol = equivalence_probe(&two_waves(), &bg, &pts, 1e-6, DEFAULT_KAPPA, &b, 1e-3);
    assert!(sol.consistent() && !sol.degenerate);
    assert_eq!(sol.dirac_passes(), 20);

    let non = GaussianProfile {
        inner: two_waves(),
        center: [0.0; 3],
        width: 0.7,
    };
    let rep = equivalence_probe(&non, &bg, &pts, 1e-6, DEFAULT_KAPPA, &b, 1e-3);
    assert!(rep.consistent(), "{:?}", rep.points.iter().filter(|p| !p.one_sided.is_empty()).collect::<Vec<_>>());
    assert_eq!(rep.dirac_passes(), 0);
}

#[test]
fn bilinears_of_a_field_match_the_point_state() {
    let b: CliffordBasis64 = build_chiral_basis();
    let f = two_waves();
    let x = [0.5, 0.0, 0.2, -0.4];
    let pt = evaluate_point(&f, &x, &Background::free(1.0), &b, 1e-3).unwrap();
    let direct = compute_bilinears(&f.value(&x).unwrap(), &b);
    assert_eq!(pt.state.bilinears, direct);
}
