//! Polar form of a regular spinor:
//! psi = phi exp(-i beta pi / 2) L^-1 (1, 0, 1, 0).
//!
//! `L` is fixed canonically as exp(i rho) times the inverse of the frame
//! Boost(u) Rot(z -> s_rest), where the rotation is the minimal-angle one.
//! The leftover abelian phase rho is `residual_phase`.

use num_complex::Complex;

use crate::algebra::{to_f64, CliffordBasis, LorentzPair};
use crate::bilinears::{compute_bilinears, BilinearSet};
use crate::error::{Error, Result};
use crate::linalg::{CMat4, RMat4};
use crate::metric::{eps_upper, FourVector};
use crate::scalar::{lit, wrap_angle, Real};
use crate::spinor::Spinor;

/// Relative regularity threshold on (Theta^2 + Phi^2) / |psi|^4.
pub const REGULARITY_EPS: f64 = 1e-10;

/// Hydrodynamic variables of one spinor.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarData<T> {
    pub phi: T,
    pub beta: T,
    pub u: FourVector<T>,
    pub s: FourVector<T>,
    /// exp(i rho) times the inverse frame spin matrix.
    pub l_spin: CMat4<T>,
    /// Vector representation of `l_spin`; its inverse maps the rest frame to (u, s).
    pub l_vec: RMat4<T>,
    pub residual_phase: T,
    /// The phase-free frame Boost(u) Rot(z -> s_rest), i.e. L^-1 up to exp(-i rho).
    pub frame: LorentzPair<T>,
}

/// exp(-i beta pi / 2) for diagonal pi.
pub fn chiral_factor<T: Real>(beta: T, basis: &CliffordBasis<T>) -> CMat4<T> {
    let half = beta * lit(0.5);
    basis.identity.scale_real(half.cos()) - basis.pi.scale(Complex::new(T::zero(), half.sin()))
}

/// Checks Theta^2 + Phi^2 against the relative regularity threshold.
pub fn check_regular<T: Real>(psi: &Spinor<T>, b: &BilinearSet<T>) -> Result<()> {
    let n2 = psi.norm_sqr();
    let inv = b.chiral_invariant();
    let threshold = lit::<T>(REGULARITY_EPS) * n2 * n2;
    if !(inv > threshold) || !inv.is_finite() {
        return Err(Error::SingularSpinor {
            invariant: to_f64(inv),
            threshold: to_f64(threshold),
        });
    }
    Ok(())
}

/// The canonical frame for a unit velocity and unit spin.
pub fn canonical_frame<T: Real>(u: &FourVector<T>, s: &FourVector<T>) -> LorentzPair<T> {
    let boost = LorentzPair::boost_to(u);
    let s_rest = boost.vec_rep.lorentz_inverse().apply(s);
    let rot = LorentzPair::rotation_z_to(&[s_rest[1], s_rest[2], s_rest[3]]);
    boost.compose(&rot)
}

impl<T: Real> PolarData<T> {
    /// Assembles polar data from a frame (any Lorentz pair mapping the rest
    /// frame to (u, s)), module, chiral angle and abelian phase.
    pub fn from_frame(phi: T, beta: T, frame: LorentzPair<T>, residual_phase: T) -> Self {
        let u = frame.vec_rep.column(0);
        let s = frame.vec_rep.column(3);
        let inv = frame.inverse();
        let phase = Complex::from_polar(T::one(), residual_phase);
        Self {
            phi,
            beta,
            u,
            s,
            l_spin: inv.spin_rep.scale(phase),
            l_vec: inv.vec_rep,
            residual_phase,
            frame,
        }
    }
}

/// Polar decomposition of a regular spinor.
pub fn polar_decompose<T: Real>(psi: &Spinor<T>, basis: &CliffordBasis<T>) -> Result<PolarData<T>> {
    let b = compute_bilinears(psi, basis);
    polar_from_bilinears(psi, &b, basis)
}

/// Polar decomposition reusing already computed bilinears.
pub fn polar_from_bilinears<T: Real>(
    psi: &Spinor<T>,
    b: &BilinearSet<T>,
    basis: &CliffordBasis<T>,
) -> Result<PolarData<T>> {
    check_regular(psi, b)?;
    let r2 = b.chiral_invariant().sqrt();
    let phi = (r2 * lit(0.5)).sqrt();
    let beta = b.theta.atan2(b.phi);
    let u = b.u.map(|v| v / r2);
    let s = b.s.map(|v| v / r2);
    let frame = canonical_frame(&u, &s);

    let phase_free = (chiral_factor(beta, basis) * frame.spin_rep * Spinor::seed()).scale_real(phi);
    let k = psi.dominant_component();
    let rho = wrap_angle(-(psi.0[k] / phase_free.0[k]).arg());

    let mut pd = PolarData::from_frame(phi, beta, frame, rho);
    // keep the bilinear u, s rather than the frame columns (identical up to rounding)
    pd.u = u;
    pd.s = s;
    Ok(pd)
}

/// psi = phi exp(-i beta pi/2) L_spin^-1 (1, 0, 1, 0).
pub fn polar_reconstruct<T: Real>(pd: &PolarData<T>, basis: &CliffordBasis<T>) -> Spinor<T> {
    let phase = Complex::from_polar(T::one(), -pd.residual_phase);
    (chiral_factor(pd.beta, basis) * pd.frame.spin_rep * Spinor::seed()).scale(phase.scale(pd.phi))
}

/// Column 0 of L_vec^-1: the velocity as pure boost data of the polar frame.
pub fn kinematic_velocity<T: Real>(pd: &PolarData<T>) -> FourVector<T> {
    pd.l_vec.lorentz_inverse().column(0)
}

/// Largest deviation of M^{ab} from 2 phi^2 (cos beta u_j s_k eps^{jkab} + sin beta (u^a s^b - u^b s^a)),
/// relative to 2 phi^2.
pub fn polar_tensor_residual<T: Real>(b: &BilinearSet<T>, pd: &PolarData<T>) -> T {
    let ul = crate::metric::lower(&pd.u);
    let sl = crate::metric::lower(&pd.s);
    let (cb, sb) = (pd.beta.cos(), pd.beta.sin());
    let two_phi2 = lit::<T>(2.0) * pd.phi * pd.phi;
    let mut worst = T::zero();
    for a in 0..4 {
        for c in (a + 1)..4 {
            let mut e = T::zero();
            for j in 0..4 {
                for k in 0..4 {
                    e += ul[j] * sl[k] * eps_upper::<T>(j, k, a, c);
                }
            }
            let model = two_phi2 * (cb * e + sb * (pd.u[a] * pd.s[c] - pd.u[c] * pd.s[a]));
            worst = worst.max((b.m.get(a, c) - model).abs());
        }
    }
    worst / two_phi2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_chiral_basis, lorentz_exp, LorentzParams};
    use crate::metric::dot;

    fn basis() -> CliffordBasis<f64> {
        build_chiral_basis()
    }

    #[test]
    fn seed_is_the_identity_case() {
        let b = basis();
        let pd = polar_decompose(&Spinor::seed(), &b).unwrap();
        assert!((pd.phi - 1.0).abs() < 1e-15);
        assert_eq!(pd.beta, 0.0);
        assert_eq!(pd.u, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(pd.s, [0.0, 0.0, 0.0, 1.0]);
        assert!(pd.l_spin.max_abs_diff(&CMat4::identity()) < 1e-15);
        assert_eq!(pd.residual_phase, 0.0);
        assert_eq!(kinematic_velocity(&pd), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn global_phase_goes_to_residual_phase() {
        let b = basis();
        let psi = Spinor::seed().scale(Complex::from_polar(1.0, 0.7));
        let pd = polar_decompose(&psi, &b).unwrap();
        assert!((pd.phi - 1.0).abs() < 1e-15);
        assert!(pd.beta.abs() < 1e-15);
        assert!((pd.residual_phase + 0.7).abs() < 1e-15);
        assert!((polar_reconstruct(&pd, &b) - psi).max_abs() < 1e-15);
    }

    #[test]
    fn known_ground_truth_round_trip() {
        let b = basis();
        let params = LorentzParams([0.3, -0.8, 0.5, 1.1, -0.4, 0.9]);
        let pair = lorentz_exp(&params, &b);
        let psi = (pair.spin_rep * chiral_factor(0.4, &b) * Spinor::seed()).scale_real(1.3);
        let pd = polar_decompose(&psi, &b).unwrap();
        assert!((pd.phi - 1.3).abs() < 1e-12);
        assert!((pd.beta - 0.4).abs() < 1e-12);
        assert!((polar_reconstruct(&pd, &b) - psi).max_abs() < 1e-12);
    }

    #[test]
    fn z_boosted_seed_velocity() {
        let b = basis();
        let u = [1f64.cosh(), 0.0, 0.0, 1f64.sinh()];
        let psi = LorentzPair::boost_to(&u).spin_rep * Spinor::seed();
        let pd = polar_decompose(&psi, &b).unwrap();
        let v = kinematic_velocity(&pd);
        for k in 0..4 {
            assert!((v[k] - u[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_spinor_is_singular() {
        let b = basis();
        assert!(matches!(
            polar_decompose(&Spinor::<f64>::zero(), &b),
            Err(Error::SingularSpinor { .. })
        ));
        // a pure Weyl spinor has Theta = Phi = 0
        let weyl = Spinor::new([Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)]);
        assert!(polar_decompose(&weyl, &b).is_err());
    }

    #[test]
    fn chiral_angle_branch() {
        let b = basis();
        for &beta in &[-3.1, -1.5, -0.2, 0.0, 0.9, 2.0, 3.1] {
            let psi = chiral_factor(beta, &b) * Spinor::seed();
            let pd = polar_decompose(&psi, &b).unwrap();
            assert!((pd.beta - beta).abs() < 1e-14, "beta {beta} -> {}", pd.beta);
        }
    }

    #[test]
    fn spin_antiparallel_to_z_uses_x_axis() {
        let b = basis();
        let flip = LorentzPair::rotation([0.0, 1.0, 0.0, 0.0]);
        let psi = flip.spin_rep * Spinor::seed();
        let pd = polar_decompose(&psi, &b).unwrap();
        assert!((pd.s[3] + 1.0).abs() < 1e-14);
        assert!((polar_reconstruct(&pd, &b) - psi).max_abs() < 1e-14);
    }

    #[test]
    fn little_group_rotation_only_changes_phase() {
        let b = basis();
        let psi = Spinor::new([
            Complex::new(0.3, 0.1),
            Complex::new(-1.0, 0.4),
            Complex::new(0.2, -0.7),
            Complex::new(0.5, 0.5),
        ]);
        let pd = polar_decompose(&psi, &b).unwrap();
        let extra = LorentzPair::rotation([0.8f64.cos(), 0.0, 0.0, 0.8f64.sin()]);
        let alt_frame = pd.frame.compose(&extra);
        // the extra rotation about z acts on the seed as a phase exp(-0.8 i)
        let alt = PolarData::from_frame(pd.phi, pd.beta, alt_frame, pd.residual_phase - 0.8);
        assert!((polar_reconstruct(&alt, &b) - psi).max_abs() < 1e-14);
        assert!((dot(&alt.u, &alt.u) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn polar_tensor_identity_on_sample() {
        let b = basis();
        let psi = Spinor::new([
            Complex::new(0.3, 0.1),
            Complex::new(-1.0, 0.4),
            Complex::new(0.2, -0.7),
            Complex::new(0.5, 0.5),
        ]);
        let bl = compute_bilinears(&psi, &b);
        let pd = polar_from_bilinears(&psi, &bl, &b).unwrap();
        assert!(polar_tensor_residual(&bl, &pd) < 1e-13);
    }
}
