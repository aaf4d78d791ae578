//! Real bilinear covariants of a spinor and the identities among them.

use num_complex::Complex;
use num_traits::Zero;

use crate::algebra::{to_f64, CliffordBasis};
use crate::linalg::{CMat4, RMat4};
use crate::metric::{dot, eps, eps_upper, lower, FourVector};
use crate::report::IdentityReport;
use crate::scalar::{lit, Real};
use crate::spinor::{RowSpinor, Spinor};
use crate::tensor::Antisym;

/// Scalar, pseudoscalar, vector, axial vector and antisymmetric tensor
/// built from one spinor. Vector and tensor components are contravariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearSet<T> {
    pub phi: T,
    pub theta: T,
    pub u: FourVector<T>,
    pub s: FourVector<T>,
    pub m: Antisym<T>,
    /// Largest imaginary part discarded while forming the real tensors.
    pub imag_residue: T,
}

/// psi^dagger gamma^0.
pub fn adjoint<T: Real>(psi: &Spinor<T>, basis: &CliffordBasis<T>) -> RowSpinor<T> {
    let g0 = &basis.gamma[0];
    RowSpinor(std::array::from_fn(|j| {
        (0..4).fold(Complex::zero(), |s, i| s + psi.0[i].conj() * g0.0[i][j])
    }))
}

struct RawBilinears<T> {
    phi: Complex<T>,
    theta: Complex<T>,
    u: [Complex<T>; 4],
    s: [Complex<T>; 4],
    m: [Complex<T>; 6],
}

/// The complex contractions abar Gamma b for every Gamma of the set.
fn raw<T: Real>(a: &Spinor<T>, b: &Spinor<T>, basis: &CliffordBasis<T>) -> RawBilinears<T> {
    let abar = adjoint(a, basis);
    let i = Complex::new(T::zero(), T::one());
    let two_i = i.scale(lit(2.0));
    let pb = basis.pi * *b;
    RawBilinears {
        phi: abar.dot(b),
        theta: i * abar.dot(&pb),
        u: std::array::from_fn(|k| abar.sandwich(&basis.gamma[k], b)),
        s: std::array::from_fn(|k| abar.sandwich(&basis.gamma[k], &pb)),
        m: crate::algebra::PAIRS.map(|(p, q)| two_i * abar.sandwich(&basis.sigma[p][q], b)),
    }
}

fn realify<T: Real>(r: RawBilinears<T>) -> BilinearSet<T> {
    let mut imag = r.phi.im.abs().max(r.theta.im.abs());
    for z in r.u.iter().chain(r.s.iter()).chain(r.m.iter()) {
        imag = imag.max(z.im.abs());
    }
    BilinearSet {
        phi: r.phi.re,
        theta: r.theta.re,
        u: r.u.map(|z| z.re),
        s: r.s.map(|z| z.re),
        m: Antisym(r.m.map(|z| z.re)),
        imag_residue: imag,
    }
}

/// Phi = psibar psi, Theta = i psibar pi psi, U^a = psibar gamma^a psi,
/// S^a = psibar gamma^a pi psi, M^{ab} = 2i psibar sigma^{ab} psi.
pub fn compute_bilinears<T: Real>(psi: &Spinor<T>, basis: &CliffordBasis<T>) -> BilinearSet<T> {
    realify(raw(psi, psi, basis))
}

/// Derivative of every bilinear along one direction, given the spinor and
/// its (covariant) derivative: d(psibar Gamma psi) = dpsibar Gamma psi + psibar Gamma dpsi.
/// Gauge phases cancel, so covariant and partial derivatives give the same result.
pub fn bilinear_derivative<T: Real>(
    psi: &Spinor<T>,
    dpsi: &Spinor<T>,
    basis: &CliffordBasis<T>,
) -> BilinearSet<T> {
    let a = raw(dpsi, psi, basis);
    let b = raw(psi, dpsi, basis);
    realify(RawBilinears {
        phi: a.phi + b.phi,
        theta: a.theta + b.theta,
        u: std::array::from_fn(|k| a.u[k] + b.u[k]),
        s: std::array::from_fn(|k| a.s[k] + b.s[k]),
        m: std::array::from_fn(|k| a.m[k] + b.m[k]),
    })
}

impl<T: Real> BilinearSet<T> {
    /// Theta^2 + Phi^2.
    pub fn chiral_invariant(&self) -> T {
        self.theta * self.theta + self.phi * self.phi
    }

    /// Bilinears after the vector representation acts on every index;
    /// Phi and Theta are invariant under the connected group.
    pub fn transformed(&self, lambda: &RMat4<T>) -> Self {
        let m = self.m.to_matrix();
        let mut out = [[T::zero(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = T::zero();
                for c in 0..4 {
                    for d in 0..4 {
                        acc += lambda.0[a][c] * lambda.0[b][d] * m[c][d];
                    }
                }
                out[a][b] = acc;
            }
        }
        Self {
            phi: self.phi,
            theta: self.theta,
            u: lambda.apply(&self.u),
            s: lambda.apply(&self.s),
            m: Antisym::from_upper_triangle(&out),
            imag_residue: self.imag_residue,
        }
    }

    /// Largest componentwise difference to another set.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = (self.phi - other.phi).abs().max((self.theta - other.theta).abs());
        for k in 0..4 {
            d = d.max((self.u[k] - other.u[k]).abs());
            d = d.max((self.s[k] - other.s[k]).abs());
        }
        for k in 0..6 {
            d = d.max((self.m.0[k] - other.m.0[k]).abs());
        }
        d
    }
}

fn relative<T: Real>(abs: T, scale: T) -> f64 {
    if scale > T::zero() {
        to_f64(abs / scale)
    } else {
        to_f64(abs)
    }
}

/// Residuals of the Fierz identities for bilinears of a single spinor.
///
/// Each residual is divided by |psi|^(2k), k being the homogeneous degree of
/// the identity in the bilinears; |psi|^2 = U^0 for a single spinor.
pub fn check_fierz<T: Real>(b: &BilinearSet<T>) -> IdentityReport {
    let n2 = b.u[0].abs();
    let n4 = n2 * n2;
    let n6 = n4 * n2;
    let inv = b.chiral_invariant();
    let ul = lower(&b.u);
    let sl = lower(&b.s);
    let m_up = b.m.to_matrix();
    let m_lo = b.m.lowered().to_matrix();
    let half: T = lit(0.5);
    let quarter: T = lit(0.25);
    let two: T = lit(2.0);

    let mut report = IdentityReport::new();
    report.push("uu_norm", relative((dot(&b.u, &b.u) - inv).abs(), n4));
    report.push("ss_norm", relative((dot(&b.s, &b.s) + inv).abs(), n4));
    report.push("us_orthogonal", relative(dot(&b.u, &b.s).abs(), n4));

    let mut mm = T::zero();
    for a in 0..4 {
        for c in 0..4 {
            mm += m_lo[a][c] * m_up[a][c];
        }
    }
    report.push(
        "mm_norm",
        relative((half * mm - (b.phi * b.phi - b.theta * b.theta)).abs(), n4),
    );

    let mut dual = T::zero();
    for a in 0..4 {
        for c in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let e = eps_upper::<T>(a, c, i, j);
                    if e != T::zero() {
                        dual += m_lo[a][c] * m_lo[i][j] * e;
                    }
                }
            }
        }
    }
    report.push(
        "mm_dual",
        relative((quarter * dual - two * b.theta * b.phi).abs(), n4),
    );

    let (mut mu, mut ms) = (T::zero(), T::zero());
    for k in 0..4 {
        let (mut cu, mut cs) = (T::zero(), T::zero());
        for i in 0..4 {
            cu += m_lo[i][k] * b.u[i];
            cs += m_lo[i][k] * b.s[i];
        }
        mu = mu.max((cu - b.theta * sl[k]).abs());
        ms = ms.max((cs - b.theta * ul[k]).abs());
    }
    report.push("mu_contraction", relative(mu, n4));
    report.push("ms_contraction", relative(ms, n4));

    let mut recon = T::zero();
    for a in 0..4 {
        for c in 0..4 {
            let mut e_term = T::zero();
            for j in 0..4 {
                for k in 0..4 {
                    let e = eps::<T>(j, k, a, c);
                    if e != T::zero() {
                        e_term += b.u[j] * b.s[k] * e;
                    }
                }
            }
            let rhs = b.phi * e_term + b.theta * (ul[a] * sl[c] - ul[c] * sl[a]);
            recon = recon.max((m_lo[a][c] * inv - rhs).abs());
        }
    }
    report.push("m_reconstruction", relative(recon, n6));
    report
}

/// Residuals of the two spinor-level constraints
/// 2 sigma^{mu nu} U_mu S_nu pi psi + U^2 psi = 0 and
/// i Theta S_mu gamma^mu psi + Phi S_mu gamma^mu pi psi + U^2 psi = 0,
/// divided by |psi|^5.
pub fn check_spinor_constraints<T: Real>(
    psi: &Spinor<T>,
    b: &BilinearSet<T>,
    basis: &CliffordBasis<T>,
) -> IdentityReport {
    let ul = lower(&b.u);
    let sl = lower(&b.s);
    let u2 = dot(&b.u, &b.u);
    let two: T = lit(2.0);

    let mut sig_us = CMat4::zero();
    for m in 0..4 {
        for n in 0..4 {
            sig_us = sig_us + basis.sigma[m][n].scale_real(two * ul[m] * sl[n]);
        }
    }
    let pipsi = basis.pi * *psi;
    let c1 = sig_us * pipsi + psi.scale_real(u2);

    let mut slash_s = CMat4::zero();
    for m in 0..4 {
        slash_s = slash_s + basis.gamma[m].scale_real(sl[m]);
    }
    let i_theta = Complex::new(T::zero(), b.theta);
    let c2 = (slash_s * *psi).scale(i_theta) + (slash_s * pipsi).scale_real(b.phi) + psi.scale_real(u2);

    let n = psi.norm();
    let n5 = n * n * n * n * n;
    let mut report = IdentityReport::new();
    report.push("sigma_us_constraint", relative(c1.max_abs(), n5));
    report.push("slash_s_constraint", relative(c2.max_abs(), n5));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_chiral_basis;

    fn cz(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn adjoint_of_seed() {
        let b = build_chiral_basis::<f64>();
        let row = adjoint(&Spinor::seed(), &b);
        assert_eq!(row.0, [cz(1.0, 0.0), cz(0.0, 0.0), cz(1.0, 0.0), cz(0.0, 0.0)]);
        assert_eq!(adjoint(&Spinor::<f64>::zero(), &b).0, [cz(0.0, 0.0); 4]);
    }

    #[test]
    fn adjoint_is_antilinear() {
        let b = build_chiral_basis::<f64>();
        let psi = Spinor([cz(0.3, 0.1), cz(-1.0, 0.4), cz(0.2, -0.7), cz(0.5, 0.5)]);
        let a = adjoint(&psi, &b);
        let ai = adjoint(&psi.scale(cz(0.0, 1.0)), &b);
        for k in 0..4 {
            assert!((ai.0[k] - a.0[k] * cz(0.0, -1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn seed_bilinears() {
        let b = build_chiral_basis::<f64>();
        let bl = compute_bilinears(&Spinor::seed(), &b);
        assert_eq!(bl.phi, 2.0);
        assert_eq!(bl.theta, 0.0);
        assert_eq!(bl.u, [2.0, 0.0, 0.0, 0.0]);
        assert_eq!(bl.s, [0.0, 0.0, 0.0, 2.0]);
        assert_eq!(bl.imag_residue, 0.0);
        let f = check_fierz(&bl);
        assert_eq!(dot(&bl.u, &bl.u), 4.0);
        assert!(f.max() < 1e-15);
    }

    #[test]
    fn zero_spinor() {
        let b = build_chiral_basis::<f64>();
        let z = Spinor::<f64>::zero();
        let bl = compute_bilinears(&z, &b);
        assert_eq!(bl.phi, 0.0);
        assert_eq!(bl.u, [0.0; 4]);
        assert_eq!(bl.m.max_abs(), 0.0);
        assert_eq!(check_fierz(&bl).max(), 0.0);
        assert_eq!(check_spinor_constraints(&z, &bl, &b).max(), 0.0);
    }

    #[test]
    fn seed_constraints_vanish() {
        let b = build_chiral_basis::<f64>();
        let psi = Spinor::seed();
        let bl = compute_bilinears(&psi, &b);
        assert!(check_spinor_constraints(&psi, &bl, &b).max() < 1e-12);
    }

    #[test]
    fn time_component_is_density() {
        let b = build_chiral_basis::<f64>();
        let psi = Spinor([cz(0.3, 0.1), cz(-1.0, 0.4), cz(0.2, -0.7), cz(0.5, 0.5)]);
        let bl = compute_bilinears(&psi, &b);
        assert!((bl.u[0] - psi.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn transformed_by_identity_is_unchanged() {
        let b = build_chiral_basis::<f64>();
        let psi = Spinor([cz(0.3, 0.1), cz(-1.0, 0.4), cz(0.2, -0.7), cz(0.5, 0.5)]);
        let bl = compute_bilinears(&psi, &b);
        assert_eq!(bl.transformed(&RMat4::identity()).max_abs_diff(&bl), 0.0);
    }
}
