//! Chiral-representation Clifford basis and Lorentz transformations.
//!
//! Conventions: eta = diag(+1, -1, -1, -1), eps_{0123} = +1 with lowered
//! indices, sigma_{ab} = [gamma_a, gamma_b] / 4 and pi = diag(-1, -1, +1, +1),
//! which equals i gamma^0 gamma^1 gamma^2 gamma^3 in this basis. With these
//! choices the reference column (1, 0, 1, 0) has Phi > 0, Theta = 0 and spin
//! along +z.

use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::linalg::{CMat4, RMat4};
use crate::metric::{eps, eta, eta_matrix, levi_civita};
use crate::report::IdentityReport;
use crate::scalar::{lit, Real};

/// Clifford matrices together with the derived sigma and pi matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordBasis<T> {
    /// gamma^a, upper index.
    pub gamma: [CMat4<T>; 4],
    /// gamma_a, lower index.
    pub gamma_lower: [CMat4<T>; 4],
    /// sigma^{ab}, upper indices.
    pub sigma: [[CMat4<T>; 4]; 4],
    /// sigma_{ab}, lower indices.
    pub sigma_lower: [[CMat4<T>; 4]; 4],
    pub pi: CMat4<T>,
    pub identity: CMat4<T>,
}

impl<T: Real> CliffordBasis<T> {
    /// Builds a basis from explicit gamma^a and pi; sigma follows from gamma.
    pub fn from_gammas(gamma: [CMat4<T>; 4], pi: CMat4<T>) -> Self {
        let gamma_lower: [CMat4<T>; 4] = std::array::from_fn(|a| gamma[a].scale_real(eta(a)));
        let quarter = lit::<T>(0.25);
        let sigma = std::array::from_fn(|a| {
            std::array::from_fn(|b| gamma[a].commutator(&gamma[b]).scale_real(quarter))
        });
        let sigma_lower = std::array::from_fn(|a| {
            std::array::from_fn(|b| gamma_lower[a].commutator(&gamma_lower[b]).scale_real(quarter))
        });
        Self {
            gamma,
            gamma_lower,
            sigma,
            sigma_lower,
            pi,
            identity: CMat4::identity(),
        }
    }

    /// gamma^a pi.
    pub fn gamma_pi(&self, a: usize) -> CMat4<T> {
        self.gamma[a] * self.pi
    }

    /// Metric as a 4x4 array.
    pub fn eta(&self) -> [[T; 4]; 4] {
        eta_matrix()
    }

    /// Totally antisymmetric symbol with lowered indices.
    pub fn epsilon(&self, a: usize, b: usize, c: usize, d: usize) -> T {
        eps(a, b, c, d)
    }
}

fn pauli<T: Real>() -> [[[Complex<T>; 2]; 2]; 3] {
    let o = Complex::zero();
    let l = Complex::one();
    let i = Complex::new(T::zero(), T::one());
    [[[o, l], [l, o]], [[o, -i], [i, o]], [[l, o], [o, -l]]]
}

fn neg2<T: Real>(m: [[Complex<T>; 2]; 2]) -> [[Complex<T>; 2]; 2] {
    m.map(|r| r.map(|z| -z))
}

/// The fixed chiral basis.
///
/// gamma^0 has off-diagonal identity blocks, gamma^k has off-diagonal
/// (+sigma_k, -sigma_k) blocks, and pi = diag(-1, -1, +1, +1).
pub fn build_chiral_basis<T: Real>() -> CliffordBasis<T> {
    let o = Complex::zero();
    let l = Complex::one();
    let z2 = [[o, o], [o, o]];
    let i2 = [[l, o], [o, l]];
    let p = pauli::<T>();
    let gamma = [
        CMat4::from_blocks(z2, i2, i2, z2),
        CMat4::from_blocks(z2, p[0], neg2(p[0]), z2),
        CMat4::from_blocks(z2, p[1], neg2(p[1]), z2),
        CMat4::from_blocks(z2, p[2], neg2(p[2]), z2),
    ];
    let pi = CMat4::from_diag([-l, -l, l, l]);
    CliffordBasis::from_gammas(gamma, pi)
}

/// Residual of every algebraic identity of the basis; all are exactly zero
/// for the built-in basis.
pub fn verify_basis<T: Real>(basis: &CliffordBasis<T>) -> IdentityReport {
    let id = CMat4::<T>::identity();
    let two = lit::<T>(2.0);
    let g = &basis.gamma_lower;

    let mut clifford = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            let target = id.scale_real(two * if a == b { eta::<T>(a) } else { T::zero() });
            clifford = clifford.max(g[a].anticommutator(&g[b]).max_abs_diff(&target));
        }
    }

    let quarter = lit::<T>(0.25);
    let mut commutator = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            let s = g[a].commutator(&g[b]).scale_real(quarter);
            commutator = commutator.max(s.max_abs_diff(&basis.sigma_lower[a][b]));
        }
    }

    // 2i sigma_{ab} = eps_{abcd} pi sigma^{cd}
    let two_i = Complex::new(T::zero(), two);
    let mut duality = T::zero();
    for a in 0..4 {
        for b in 0..4 {
            let lhs = basis.sigma_lower[a][b].scale(two_i);
            let mut rhs = CMat4::zero();
            for c in 0..4 {
                for d in 0..4 {
                    let e = levi_civita(a, b, c, d);
                    if e != 0 {
                        rhs = rhs + (basis.pi * basis.sigma[c][d]).scale_real(eps(a, b, c, d));
                    }
                }
            }
            duality = duality.max(lhs.max_abs_diff(&rhs));
        }
    }

    // gamma_i gamma_j gamma_k = gamma_i eta_jk - gamma_j eta_ik + gamma_k eta_ij + i eps_ijkq pi gamma^q
    let i_unit = Complex::new(T::zero(), T::one());
    let mut triple = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let lhs = g[i] * g[j] * g[k];
                let d = |a: usize, b: usize| if a == b { eta::<T>(a) } else { T::zero() };
                let mut rhs = g[i].scale_real(d(j, k)) - g[j].scale_real(d(i, k))
                    + g[k].scale_real(d(i, j));
                for q in 0..4 {
                    if levi_civita(i, j, k, q) != 0 {
                        rhs = rhs + (basis.pi * basis.gamma[q]).scale(i_unit.scale(eps(i, j, k, q)));
                    }
                }
                triple = triple.max(lhs.max_abs_diff(&rhs));
            }
        }
    }

    let pi_anti = (0..4).fold(T::zero(), |m, a| {
        m.max(basis.pi.anticommutator(&basis.gamma[a]).max_abs())
    });
    let pi_square = (basis.pi * basis.pi).max_abs_diff(&id);

    let mut report = IdentityReport::new();
    report.push("clifford_anticommutator", to_f64(clifford));
    report.push("sigma_commutator", to_f64(commutator));
    report.push("sigma_duality", to_f64(duality));
    report.push("triple_product", to_f64(triple));
    report.push("pi_anticommutator", to_f64(pi_anti));
    report.push("pi_square", to_f64(pi_square));
    report
}

pub(crate) fn to_f64<T: Real>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Antisymmetric transformation parameters lambda^{ab} (rapidities in the
/// 0k slots, rotation angles in the jk slots), stored as six independent
/// entries in the order 01, 02, 03, 12, 13, 23.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LorentzParams<T>(pub [T; 6]);

pub(crate) const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn pair_index(a: usize, b: usize) -> Option<(usize, bool)> {
    PAIRS.iter().enumerate().find_map(|(n, &(i, j))| {
        if (i, j) == (a, b) {
            Some((n, false))
        } else if (j, i) == (a, b) {
            Some((n, true))
        } else {
            None
        }
    })
}

impl<T: Real> LorentzParams<T> {
    pub fn zero() -> Self {
        Self([T::zero(); 6])
    }

    /// lambda^{ab} with the antisymmetric sign applied.
    pub fn get(&self, a: usize, b: usize) -> T {
        match pair_index(a, b) {
            Some((n, false)) => self.0[n],
            Some((n, true)) => -self.0[n],
            None => T::zero(),
        }
    }

    pub fn set(&mut self, a: usize, b: usize, v: T) {
        if let Some((n, flipped)) = pair_index(a, b) {
            self.0[n] = if flipped { -v } else { v };
        }
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|v| -v))
    }

    pub fn to_matrix(&self) -> [[T; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.get(a, b)))
    }
}

/// Spin and vector representations of the same Lorentz transformation,
/// related by spin^-1 gamma^a spin = Lambda^a_b gamma^b.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzPair<T> {
    pub params: Option<LorentzParams<T>>,
    pub spin_rep: CMat4<T>,
    pub vec_rep: RMat4<T>,
}

/// exp(lambda^{ab} sigma_ab / 2) and exp(lambda eta) by scaling and squaring.
pub fn lorentz_exp<T: Real>(params: &LorentzParams<T>, basis: &CliffordBasis<T>) -> LorentzPair<T> {
    let half = lit::<T>(0.5);
    let mut gen_spin = CMat4::zero();
    let mut gen_vec = RMat4::zero();
    for a in 0..4 {
        for b in 0..4 {
            let l = params.get(a, b);
            if l != T::zero() {
                gen_spin = gen_spin + basis.sigma_lower[a][b].scale_real(half * l);
                gen_vec.0[a][b] = l * eta::<T>(b);
            }
        }
    }
    LorentzPair {
        params: Some(*params),
        spin_rep: gen_spin.exp(),
        vec_rep: gen_vec.exp(),
    }
}

impl<T: Real> LorentzPair<T> {
    pub fn identity() -> Self {
        Self {
            params: Some(LorentzParams::zero()),
            spin_rep: CMat4::identity(),
            vec_rep: RMat4::identity(),
        }
    }

    /// Closed-form pure boost taking the rest vector (1, 0, 0, 0) to `u`.
    pub fn boost_to(u: &[T; 4]) -> Self {
        let v = [u[1], u[2], u[3]];
        let sh = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if sh == T::zero() {
            return Self::identity();
        }
        let n = [v[0] / sh, v[1] / sh, v[2] / sh];
        let gamma = (T::one() + sh * sh).sqrt();
        let mut vec_rep = RMat4::identity();
        vec_rep.0[0][0] = gamma;
        for k in 0..3 {
            vec_rep.0[0][k + 1] = v[k];
            vec_rep.0[k + 1][0] = v[k];
            for l in 0..3 {
                vec_rep.0[k + 1][l + 1] += (gamma - T::one()) * n[k] * n[l];
            }
        }
        // cosh(chi/2), sinh(chi/2) from cosh chi = gamma, without forming chi
        let two = lit::<T>(2.0);
        let ch = ((gamma + T::one()) / two).sqrt();
        let sh_half = sh / (two * ch);
        let p = pauli::<T>();
        let ns = std::array::from_fn::<_, 2, _>(|i| {
            std::array::from_fn::<_, 2, _>(|j| {
                (0..3).fold(Complex::zero(), |s, k| s + p[k][i][j].scale(n[k]))
            })
        });
        let block = |sign: T| {
            std::array::from_fn::<_, 2, _>(|i| {
                std::array::from_fn::<_, 2, _>(|j| {
                    let d = if i == j { Complex::new(ch, T::zero()) } else { Complex::zero() };
                    d + ns[i][j].scale(sign * sh_half)
                })
            })
        };
        let z2 = [[Complex::zero(); 2]; 2];
        let spin_rep = CMat4::from_blocks(block(-T::one()), z2, z2, block(T::one()));
        let chi = sh.asinh();
        let mut params = LorentzParams::zero();
        for k in 0..3 {
            params.set(k + 1, 0, chi * n[k]);
        }
        Self {
            params: Some(params),
            spin_rep,
            vec_rep,
        }
    }

    /// Closed-form rotation from a unit quaternion (w, x, y, z).
    pub fn rotation(q: [T; 4]) -> Self {
        let [w, x, y, z] = q;
        let one = T::one();
        let two = lit::<T>(2.0);
        let r = [
            [one - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
            [two * (x * y + w * z), one - two * (x * x + z * z), two * (y * z - w * x)],
            [two * (x * z - w * y), two * (y * z + w * x), one - two * (x * x + y * y)],
        ];
        let mut vec_rep = RMat4::identity();
        for i in 0..3 {
            for j in 0..3 {
                vec_rep.0[i + 1][j + 1] = r[i][j];
            }
        }
        let p = pauli::<T>();
        let s2: [[Complex<T>; 2]; 2] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let d = if i == j { Complex::new(w, T::zero()) } else { Complex::zero() };
                let axis = [x, y, z];
                d - (0..3).fold(Complex::zero(), |s, k| {
                    s + p[k][i][j] * Complex::new(T::zero(), axis[k])
                })
            })
        });
        let z2 = [[Complex::zero(); 2]; 2];
        Self {
            params: None,
            spin_rep: CMat4::from_blocks(s2, z2, z2, s2),
            vec_rep,
        }
    }

    /// Minimal-angle rotation taking +z to the unit 3-vector `n`; the axis
    /// is z x n, or x when `n` is (anti)parallel to -z.
    pub fn rotation_z_to(n: &[T; 3]) -> Self {
        Self::rotation(quaternion_z_to(n))
    }

    /// Group product: self applied after other.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            params: None,
            spin_rep: self.spin_rep * other.spin_rep,
            vec_rep: self.vec_rep * other.vec_rep,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            params: self.params.map(|p| p.neg()),
            spin_rep: self.spin_rep.inverse().expect("Lorentz spin matrices are invertible"),
            vec_rep: self.vec_rep.lorentz_inverse(),
        }
    }

    /// max_a |spin^-1 gamma^a spin - Lambda^a_b gamma^b|.
    pub fn conjugation_residual(&self, basis: &CliffordBasis<T>) -> T {
        let inv = match self.spin_rep.inverse() {
            Some(m) => m,
            None => return T::infinity(),
        };
        (0..4).fold(T::zero(), |m, a| {
            let lhs = inv * basis.gamma[a] * self.spin_rep;
            let rhs = (0..4).fold(CMat4::zero(), |s, b| {
                s + basis.gamma[b].scale_real(self.vec_rep.0[a][b])
            });
            m.max(lhs.max_abs_diff(&rhs))
        })
    }

    /// max |Lambda^T eta Lambda - eta|.
    pub fn orthogonality_residual(&self) -> T {
        let mut m = T::zero();
        for a in 0..4 {
            for b in 0..4 {
                let v = (0..4).fold(T::zero(), |s, k| {
                    s + self.vec_rep.0[k][a] * eta::<T>(k) * self.vec_rep.0[k][b]
                });
                let target = if a == b { eta::<T>(a) } else { T::zero() };
                m = m.max((v - target).abs());
            }
        }
        m
    }
}

pub(crate) fn quaternion_z_to<T: Real>(n: &[T; 3]) -> [T; 4] {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let (nx, ny, nz) = (n[0] / norm, n[1] / norm, n[2] / norm);
    let w = T::one() + nz;
    if w <= lit(1e-14) {
        return [T::zero(), T::one(), T::zero(), T::zero()];
    }
    // half-way quaternion (1 + z.n, z x n), normalized
    let q = [w, -ny, nx, T::zero()];
    let qn = q.iter().fold(T::zero(), |s, v| s + *v * *v).sqrt();
    q.map(|v| v / qn)
}

/// Human-readable sheet of every matrix and sign convention in use.
pub fn conventions_sheet() -> String {
    let basis = build_chiral_basis::<f64>();
    let mut out = String::new();
    let _ = writeln!(out, "# conventions");
    let _ = writeln!(out, "metric                  diag(+1,-1,-1,-1)");
    let _ = writeln!(out, "levi_civita             eps_0123 = +1 (lowered), eps^0123 = -1");
    let _ = writeln!(out, "sigma                   sigma_ab = [gamma_a, gamma_b]/4");
    let _ = writeln!(out, "pi                      diag(-1,-1,+1,+1) = i gamma^0 gamma^1 gamma^2 gamma^3");
    let _ = writeln!(out, "seed                    (1,0,1,0): Phi=2 Theta=0 U=(2,0,0,0) S=(0,0,0,2)");
    let _ = writeln!(out, "antisymmetrization      X_[a Y_b] = X_a Y_b - X_b Y_a (no 1/2)");
    let _ = writeln!(out, "fierz sign              M_ik S^i = +Theta U_k");
    let _ = writeln!(out, "lorentz pair            spin = exp(lambda^ab sigma_ab/2), Lambda = exp(lambda eta), spin^-1 gamma^a spin = Lambda^a_b gamma^b");
    let _ = writeln!(out, "z boost                 lambda^03 = chi -> Lambda^0_0 = cosh chi, Lambda^0_3 = -sinh chi");
    let _ = writeln!(out, "polar form              psi = phi exp(-i beta pi/2) L^-1 (1,0,1,0), L = exp(i rho) (frame spin)^-1");
    let _ = writeln!(out, "residual phase          rho of exp(i theta) psi shifts by -theta; P_mu = d_mu rho - q A_mu");
    let _ = writeln!(out, "covariant derivative    nabla_mu = d_mu + i q A_mu; A and W given with lower indices");
    let _ = writeln!(out, "connection              R_ij mu = coefficient of sigma^ij in L^-1 d_mu L");
    let _ = writeln!(out, "frame canonicalization  L^-1 = Boost(u) Rot(z -> s_rest), minimal angle, axis x when s_rest = -z");
    let _ = writeln!(out, "nonrelativistic limit   P = m v + grad ln phi x s with grad = contravariant spatial gradient");
    for (a, g) in basis.gamma.iter().enumerate() {
        let _ = writeln!(out, "\ngamma^{a}");
        write_matrix(&mut out, g);
    }
    let _ = writeln!(out, "\npi");
    write_matrix(&mut out, &basis.pi);
    out
}

fn write_matrix(out: &mut String, m: &CMat4<f64>) {
    for row in &m.0 {
        let cells: Vec<String> = row.iter().map(|z| format_entry(*z)).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn format_entry(z: Complex<f64>) -> String {
    let s = match (z.re, z.im) {
        (r, i) if i == 0.0 && r == 0.0 => "0".to_string(),
        (r, 0.0) => format!("{r:+}"),
        (0.0, i) => format!("{}i", if i > 0.0 { "+" } else { "-" }),
        (r, i) => format!("{r:+}{i:+}i"),
    };
    format!("{s:>3}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_basis_is_exact() {
        let b = build_chiral_basis::<f64>();
        let r = verify_basis(&b);
        assert_eq!(r.entries.len(), 6);
        for e in &r.entries {
            assert_eq!(e.value, 0.0, "{}", e.name);
        }
    }

    #[test]
    fn gamma1_squares_to_minus_identity() {
        let b = build_chiral_basis::<f64>();
        let anti = b.gamma[1].anticommutator(&b.gamma[1]);
        assert_eq!(anti, CMat4::identity().scale_real(-2.0));
    }

    #[test]
    fn duality_instance_01_23() {
        // 2i sigma_01 = eps_01cd pi sigma^cd = 2 eps_0123 pi sigma^23
        let b = build_chiral_basis::<f64>();
        let lhs = b.sigma_lower[0][1].scale(Complex::new(0.0, 2.0));
        let rhs = (b.pi * b.sigma[2][3]).scale_real(2.0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triple_product_instance() {
        // gamma^0 gamma^1 gamma^2 evaluated by explicit multiplication against
        // i eps_{012q} pi gamma^q with indices of the left side lowered:
        // gamma_0 gamma_1 gamma_2 = gamma^0 gamma^1 gamma^2 and
        // i eps_{0123} pi gamma^3 = i pi gamma^3.
        let b = build_chiral_basis::<f64>();
        let lhs = b.gamma[0] * b.gamma[1] * b.gamma[2];
        let rhs = (b.pi * b.gamma[3]).scale(Complex::new(0.0, 1.0));
        assert_eq!(lhs, rhs);
        // frozen from an independent dense multiplication
        assert_eq!(lhs.0[0][2], Complex::new(0.0, -1.0));
        assert_eq!(lhs.0[1][3], Complex::new(0.0, 1.0));
        assert_eq!(lhs.0[2][0], Complex::new(0.0, -1.0));
        assert_eq!(lhs.0[3][1], Complex::new(0.0, 1.0));
    }

    #[test]
    fn negated_gamma3_breaks_only_triple_type_identities() {
        let b = build_chiral_basis::<f64>();
        let mut g = b.gamma;
        g[3] = -g[3];
        let bad = CliffordBasis::from_gammas(g, b.pi);
        let r = verify_basis(&bad);
        assert_eq!(r.get("clifford_anticommutator"), Some(0.0));
        assert_eq!(r.get("pi_anticommutator"), Some(0.0));
        assert!(r.get("triple_product").unwrap() > 0.5);
    }

    #[test]
    fn pi_replaced_by_identity() {
        let b = build_chiral_basis::<f64>();
        let bad = CliffordBasis::from_gammas(b.gamma, CMat4::identity());
        let r = verify_basis(&bad);
        // {I, gamma_a} = 2 gamma_a whose largest entry has modulus 1
        assert_eq!(r.get("pi_anticommutator"), Some(2.0));
        assert_eq!(r.get("pi_square"), Some(0.0));
    }

    #[test]
    fn zero_params_give_identity() {
        let b = build_chiral_basis::<f64>();
        let p = lorentz_exp(&LorentzParams::zero(), &b);
        assert_eq!(p.spin_rep, CMat4::identity());
        assert_eq!(p.vec_rep, RMat4::identity());
    }

    #[test]
    fn z_boost_matches_closed_form() {
        let b = build_chiral_basis::<f64>();
        let chi = 1.0f64;
        let mut lam = LorentzParams::zero();
        lam.set(0, 3, chi);
        let p = lorentz_exp(&lam, &b);
        assert!((p.vec_rep.0[0][0] - chi.cosh()).abs() < 1e-14);
        assert!((p.vec_rep.0[0][3] + chi.sinh()).abs() < 1e-14);
        assert!((p.vec_rep.0[3][3] - chi.cosh()).abs() < 1e-14);
        assert!(p.conjugation_residual(&b) < 1e-14);
        // same boost from the closed form: it maps rest to (cosh, 0, 0, -sinh)
        let closed = LorentzPair::boost_to(&[chi.cosh(), 0.0, 0.0, -chi.sinh()]);
        assert!(closed.vec_rep.max_abs_diff(&p.vec_rep) < 1e-14);
        assert!(closed.spin_rep.max_abs_diff(&p.spin_rep) < 1e-14);
    }

    #[test]
    fn full_turn_is_minus_identity_on_spinors() {
        let b = build_chiral_basis::<f64>();
        let mut lam = LorentzParams::zero();
        lam.set(1, 2, 2.0 * std::f64::consts::PI);
        let p = lorentz_exp(&lam, &b);
        assert!(p.spin_rep.max_abs_diff(&CMat4::identity().scale_real(-1.0)) < 1e-13);
        assert!(p.vec_rep.max_abs_diff(&RMat4::identity()) < 1e-13);
    }

    #[test]
    fn closed_forms_satisfy_conjugation() {
        let b = build_chiral_basis::<f64>();
        let u = [(1.0f64 + 0.09 + 0.25 + 0.49).sqrt(), 0.3, -0.5, 0.7];
        let boost = LorentzPair::boost_to(&u);
        assert!(boost.conjugation_residual(&b) < 1e-14);
        let col = boost.vec_rep.column(0);
        assert!((0..4).all(|k| (col[k] - u[k]).abs() < 1e-14));
        let rot = LorentzPair::<f64>::rotation_z_to(&[0.2, -0.4, 0.5]);
        assert!(rot.conjugation_residual(&b) < 1e-14);
        let n = (0.04f64 + 0.16 + 0.25).sqrt();
        let z = rot.vec_rep.column(3);
        assert!((z[1] - 0.2 / n).abs() < 1e-14 && (z[3] - 0.5 / n).abs() < 1e-14);
        let flip = LorentzPair::<f64>::rotation_z_to(&[0.0, 0.0, -1.0]);
        assert!((flip.vec_rep.column(3)[3] + 1.0).abs() < 1e-14);
        // closed-form boost agrees with the exponential of its own parameters
        let e = lorentz_exp(&boost.params.unwrap(), &b);
        assert!(e.spin_rep.max_abs_diff(&boost.spin_rep) < 1e-13);
    }

    #[test]
    fn f32_basis_is_exact_too() {
        let b = build_chiral_basis::<f32>();
        assert_eq!(verify_basis(&b).max(), 0.0);
    }
}
