//! Residuals of the field equation, its ten real bilinear (Gordon)
//! decompositions, and the four polar groups A-D built from the quantum
//! potentials E and F.
//!
//! Brackets are unnormalized: X^[a Y^b] = X^a Y^b - X^b Y^a.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::algebra::{to_f64, CliffordBasis};
use crate::bilinears::adjoint;
use crate::error::Result;
use crate::fieldconn::{covariant_derivative, evaluate_point, Background, HydroPoint, LocalState, SpinorField, TensorialConnection};
use crate::linalg::CMat4;
use crate::metric::{contract, eps, eps_upper, eta, lower, FourVector};
use crate::scalar::{lit, Real};
use crate::spinor::Spinor;

/// Relativistic quantum potentials, lower index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumPotentials<T> {
    pub e: FourVector<T>,
    pub f: FourVector<T>,
}

/// (1/4) eps_{mu rho alpha nu} R^{rho alpha nu}.
pub fn connection_dual<T: Real>(tc: &TensorialConnection<T>) -> FourVector<T> {
    let quarter: T = lit(0.25);
    std::array::from_fn(|mu| {
        let mut acc = T::zero();
        for r in 0..4 {
            for a in 0..4 {
                for n in 0..4 {
                    let e = eps::<T>(mu, r, a, n);
                    if e != T::zero() {
                        // raising three indices multiplies by eta(r) eta(a) eta(n)
                        acc += e * eta::<T>(r) * eta::<T>(a) * eta::<T>(n) * tc.get(r, a, n);
                    }
                }
            }
        }
        quarter * acc
    })
}

/// (1/2) R_{mu rho alpha} eta^{rho alpha}.
pub fn connection_trace<T: Real>(tc: &TensorialConnection<T>) -> FourVector<T> {
    let half: T = lit(0.5);
    std::array::from_fn(|mu| half * (0..4).fold(T::zero(), |acc, r| acc + eta::<T>(r) * tc.get(mu, r, r)))
}

/// E_mu = dual(R)_mu - kappa W_mu + d_mu beta / 2 + m s_mu cos beta,
/// F_mu = trace(R)_mu + d_mu ln phi + m s_mu sin beta.
pub fn compute_ef<T: Real>(pt: &HydroPoint<T>, bg: &Background<T>) -> QuantumPotentials<T> {
    let st = &pt.state;
    let dual = connection_dual(&pt.connection);
    let trace = connection_trace(&pt.connection);
    let sl = lower(&st.polar.s);
    let (cb, sb) = (st.polar.beta.cos(), st.polar.beta.sin());
    let half: T = lit(0.5);
    QuantumPotentials {
        e: std::array::from_fn(|mu| {
            dual[mu] - bg.kappa_w * st.w[mu] + half * st.grad_beta[mu] + bg.mass * sl[mu] * cb
        }),
        f: std::array::from_fn(|mu| trace[mu] + st.grad_ln_phi[mu] + bg.mass * sl[mu] * sb),
    }
}

/// Every equation label a residual can be reported under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Equation {
    DivU,
    Lodd,
    CurlU,
    DivS,
    Leven,
    CurlS,
    Vr,
    Ai,
    Vi,
    Ar,
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    C1,
    C2,
    D1,
    D2,
    Dirac,
}

impl Equation {
    pub const BILINEAR: [Equation; 10] = [
        Equation::DivU,
        Equation::Lodd,
        Equation::CurlU,
        Equation::DivS,
        Equation::Leven,
        Equation::CurlS,
        Equation::Vr,
        Equation::Ai,
        Equation::Vi,
        Equation::Ar,
    ];

    pub const POLAR: [Equation; 10] = [
        Equation::A1,
        Equation::A2,
        Equation::A3,
        Equation::B1,
        Equation::B2,
        Equation::B3,
        Equation::C1,
        Equation::C2,
        Equation::D1,
        Equation::D2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Equation::DivU => "divU",
            Equation::Lodd => "Lodd",
            Equation::CurlU => "curlU",
            Equation::DivS => "divS",
            Equation::Leven => "Leven",
            Equation::CurlS => "curlS",
            Equation::Vr => "vr",
            Equation::Ai => "ai",
            Equation::Vi => "vi",
            Equation::Ar => "ar",
            Equation::A1 => "A1",
            Equation::A2 => "A2",
            Equation::A3 => "A3",
            Equation::B1 => "B1",
            Equation::B2 => "B2",
            Equation::B3 => "B3",
            Equation::C1 => "C1",
            Equation::C2 => "C2",
            Equation::D1 => "D1",
            Equation::D2 => "D2",
            Equation::Dirac => "dirac",
        }
    }

    /// Group letter for polar equations, "gordon" for bilinear ones.
    pub fn group(&self) -> &'static str {
        match self {
            Equation::A1 | Equation::A2 | Equation::A3 => "A",
            Equation::B1 | Equation::B2 | Equation::B3 => "B",
            Equation::C1 | Equation::C2 => "C",
            Equation::D1 | Equation::D2 => "D",
            Equation::Dirac => "dirac",
            _ => "gordon",
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Residual magnitudes keyed by equation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupResiduals {
    pub entries: BTreeMap<Equation, f64>,
}

impl GroupResiduals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, eq: Equation, value: f64) {
        self.entries.insert(eq, value);
    }

    pub fn get(&self, eq: Equation) -> Option<f64> {
        self.entries.get(&eq).copied()
    }

    pub fn extend(&mut self, other: &GroupResiduals) {
        self.entries.extend(other.entries.iter().map(|(k, v)| (*k, *v)));
    }

    pub fn max(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(*v))
    }

    /// Worst entry, if any.
    pub fn worst(&self) -> Option<(Equation, f64)> {
        self.entries
            .iter()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, v)| (*k, *v))
    }

    /// Largest residual among equations of one group.
    pub fn group_max(&self, group: &str) -> Option<f64> {
        self.entries
            .iter()
            .filter(|(k, _)| k.group() == group)
            .map(|(_, v)| *v)
            .reduce(f64::max)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|(e, v)| (*e, v * k)).collect(),
        }
    }
}

fn max_abs<T: Real, const N: usize>(v: &[T; N]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

fn max_abs_mat<T: Real>(m: &[[T; 4]; 4]) -> T {
    m.iter().fold(T::zero(), |acc, r| acc.max(max_abs(r)))
}

/// Residuals of the four polar groups at one point. E, F, P carry lower
/// indices; u, s upper.
pub fn residual_polar_groups<T: Real>(
    e: &FourVector<T>,
    f: &FourVector<T>,
    p: &FourVector<T>,
    u: &FourVector<T>,
    s: &FourVector<T>,
) -> GroupResiduals {
    let ul = lower(u);
    let sl = lower(s);
    let fu = lower(f);
    let pu = lower(p);
    let mut out = GroupResiduals::new();

    // eps^{a n m r} X_m Y_r + (F^a V^n - F^n V^a) + eps^{a n m r} P_m Z_r
    let curl = |v: &FourVector<T>, vl: &FourVector<T>, zl: &FourVector<T>| {
        let mut m = [[T::zero(); 4]; 4];
        for a in 0..4 {
            for n in 0..4 {
                let mut acc = fu[a] * v[n] - fu[n] * v[a];
                for mu in 0..4 {
                    for r in 0..4 {
                        let ep = eps_upper::<T>(a, n, mu, r);
                        if ep != T::zero() {
                            acc += ep * (e[mu] * vl[r] + p[mu] * zl[r]);
                        }
                    }
                }
                m[a][n] = acc;
            }
        }
        max_abs_mat(&m)
    };

    out.insert(Equation::A1, to_f64(contract(f, u).abs()));
    out.insert(Equation::A2, to_f64((contract(e, u) + contract(p, s)).abs()));
    out.insert(Equation::A3, to_f64(curl(u, &ul, &sl)));
    out.insert(Equation::B1, to_f64(contract(f, s).abs()));
    out.insert(Equation::B2, to_f64((contract(e, s) + contract(p, u)).abs()));
    out.insert(Equation::B3, to_f64(curl(s, &sl, &ul)));

    // eps-contraction X_m u_j s_k eps^{j k m a}
    let dual_us = |x: &FourVector<T>| -> FourVector<T> {
        std::array::from_fn(|a| {
            let mut acc = T::zero();
            for j in 0..4 {
                for k in 0..4 {
                    for m in 0..4 {
                        let ep = eps_upper::<T>(j, k, m, a);
                        if ep != T::zero() {
                            acc += ep * x[m] * ul[j] * sl[k];
                        }
                    }
                }
            }
            acc
        })
    };
    // X_m (u^m s^a - s^m u^a)
    let wedge_us = |x: &FourVector<T>| -> FourVector<T> {
        let xu = contract(x, u);
        let xs = contract(x, s);
        std::array::from_fn(|a| xu * s[a] - xs * u[a])
    };
    let (fd, ed) = (dual_us(f), dual_us(e));
    let (fw, ew) = (wedge_us(f), wedge_us(e));
    let c1: FourVector<T> = std::array::from_fn(|a| fd[a] + ew[a] - pu[a]);
    let c2: FourVector<T> = std::array::from_fn(|a| fw[a] - ed[a]);
    out.insert(Equation::C1, to_f64(max_abs(&c1)));
    out.insert(Equation::C2, to_f64(max_abs(&c2)));

    let d1: FourVector<T> = std::array::from_fn(|mu| {
        let mut acc = T::zero();
        for r in 0..4 {
            for n in 0..4 {
                for a in 0..4 {
                    let ep = eps::<T>(mu, r, n, a);
                    if ep != T::zero() {
                        acc += ep * pu[r] * u[n] * s[a];
                    }
                }
            }
        }
        f[mu] - acc
    });
    let pu_ = contract(p, u);
    let ps_ = contract(p, s);
    // P^i (u_i s_mu - u_mu s_i)
    let d2: FourVector<T> = std::array::from_fn(|mu| e[mu] - (pu_ * sl[mu] - ul[mu] * ps_));
    out.insert(Equation::D1, to_f64(max_abs(&d1)));
    out.insert(Equation::D2, to_f64(max_abs(&d2)));
    out
}

/// Polar-group residuals at a point evaluated from the field.
pub fn polar_groups_at<T: Real>(pt: &HydroPoint<T>, bg: &Background<T>) -> GroupResiduals {
    let qp = compute_ef(pt, bg);
    residual_polar_groups(&qp.e, &qp.f, &pt.connection.p, &pt.state.polar.u, &pt.state.polar.s)
}

/// psibar(a) G b.
fn sand<T: Real>(a: &Spinor<T>, g: &CMat4<T>, b: &Spinor<T>, basis: &CliffordBasis<T>) -> Complex<T> {
    adjoint(a, basis).sandwich(g, b)
}

/// The ten bilinear equations evaluated from psi, nabla psi and the bilinears.
pub fn bilinear_gordon_from_state<T: Real>(
    st: &LocalState<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
) -> GroupResiduals {
    let psi = &st.psi;
    let d = &st.nabla;
    let b = &st.bilinears;
    let db = &st.d_bilinears;
    let m = bg.mass;
    let kw = bg.kappa_w;
    let w = &st.w;
    let wu = lower(w);
    let ul = lower(&b.u);
    let sl = lower(&b.s);
    let m_up = b.m.to_matrix();
    let m_lo = b.m.lowered().to_matrix();
    let i = Complex::new(T::zero(), T::one());
    let half: T = lit(0.5);
    let two: T = lit(2.0);
    // nabla^mu psi
    let dup: [Spinor<T>; 4] = std::array::from_fn(|mu| d[mu].scale_real(eta(mu)));
    let mut out = GroupResiduals::new();

    let div_u = (0..4).fold(T::zero(), |acc, mu| acc + db[mu].u[mu]);
    out.insert(Equation::DivU, to_f64(div_u.abs()));

    let gp: [CMat4<T>; 4] = std::array::from_fn(|mu| basis.gamma[mu] * basis.pi);
    let gp_lo: [CMat4<T>; 4] = std::array::from_fn(|mu| basis.gamma_lower[mu] * basis.pi);

    let mut lodd = Complex::new(T::zero(), T::zero());
    let mut leven = Complex::new(T::zero(), T::zero());
    for mu in 0..4 {
        lodd = lodd + sand(psi, &gp[mu], &d[mu], basis) - sand(&d[mu], &gp[mu], psi, basis);
        leven = leven + sand(psi, &basis.gamma[mu], &d[mu], basis) - sand(&d[mu], &basis.gamma[mu], psi, basis);
    }
    let lodd = (i * lodd).re * half - kw * contract(w, &b.u);
    let leven = (i * leven).re * half - kw * contract(w, &b.s) - m * b.phi;
    out.insert(Equation::Lodd, to_f64(lodd.abs()));
    out.insert(Equation::Leven, to_f64(leven.abs()));

    // K_{mu rho} = psibar gamma_rho pi nabla_mu psi - nabla_mu psibar gamma_rho pi psi
    let k: [[Complex<T>; 4]; 4] = std::array::from_fn(|mu| {
        std::array::from_fn(|r| sand(psi, &gp_lo[r], &d[mu], basis) - sand(&d[mu], &gp_lo[r], psi, basis))
    });
    let mut curl_u = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for n in 0..4 {
            let mut acc = eta::<T>(a) * db[a].u[n] - eta::<T>(n) * db[n].u[a] - two * m * m_up[a][n];
            for mu in 0..4 {
                for r in 0..4 {
                    let ep = eps_upper::<T>(a, n, mu, r);
                    if ep != T::zero() {
                        acc += ep * ((i * k[mu][r]).re - two * kw * w[mu] * ul[r]);
                    }
                }
            }
            curl_u[a][n] = acc;
        }
    }
    out.insert(Equation::CurlU, to_f64(max_abs_mat(&curl_u)));

    let div_s = (0..4).fold(T::zero(), |acc, mu| acc + db[mu].s[mu]) - two * m * b.theta;
    out.insert(Equation::DivS, to_f64(div_s.abs()));

    // J_{a n} = psibar gamma_a nabla_n psi - nabla_n psibar gamma_a psi
    let j: [[Complex<T>; 4]; 4] = std::array::from_fn(|a| {
        std::array::from_fn(|n| {
            sand(psi, &basis.gamma_lower[a], &d[n], basis) - sand(&d[n], &basis.gamma_lower[a], psi, basis)
        })
    });
    let mut curl_s = [[T::zero(); 4]; 4];
    for a in 0..4 {
        for n in 0..4 {
            let mut acc = (i * (j[a][n] - j[n][a])).re + two * kw * (w[a] * sl[n] - w[n] * sl[a]);
            for mu in 0..4 {
                for r in 0..4 {
                    let ep = eps::<T>(mu, r, a, n);
                    if ep != T::zero() {
                        acc += ep * eta::<T>(mu) * db[mu].s[r];
                    }
                }
            }
            curl_s[a][n] = acc;
        }
    }
    out.insert(Equation::CurlS, to_f64(max_abs_mat(&curl_s)));

    let vr: FourVector<T> = std::array::from_fn(|a| {
        let cur = (i * (sand(psi, &basis.identity, &dup[a], basis) - sand(&dup[a], &basis.identity, psi, basis))).re;
        let div_m = (0..4).fold(T::zero(), |acc, mu| acc + db[mu].m.get(mu, a));
        let mut tor = T::zero();
        for mu in 0..4 {
            for n in 0..4 {
                for sg in 0..4 {
                    let ep = eps_upper::<T>(mu, n, sg, a);
                    if ep != T::zero() {
                        tor += ep * w[sg] * m_lo[mu][n];
                    }
                }
            }
        }
        cur - div_m - kw * tor - two * m * b.u[a]
    });
    out.insert(Equation::Vr, to_f64(max_abs(&vr)));

    let ai: FourVector<T> = std::array::from_fn(|a| {
        let cur = (sand(&d[a], &basis.pi, psi, basis) - sand(psi, &basis.pi, &d[a], basis)).re;
        let mut dual = T::zero();
        for mu in 0..4 {
            for r in 0..4 {
                for sg in 0..4 {
                    let ep = eps::<T>(r, sg, mu, a);
                    if ep != T::zero() {
                        dual += ep * eta::<T>(mu) * db[mu].m.get(r, sg);
                    }
                }
            }
        }
        let tor = (0..4).fold(T::zero(), |acc, mu| acc + wu[mu] * m_lo[mu][a]);
        cur - half * dual + two * kw * tor
    });
    out.insert(Equation::Ai, to_f64(max_abs(&ai)));

    let vi: FourVector<T> = std::array::from_fn(|a| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for mu in 0..4 {
            let sg = &basis.sigma_lower[mu][a];
            acc = acc + sand(psi, sg, &dup[mu], basis) - sand(&dup[mu], sg, psi, basis);
        }
        db[a].phi - two * acc.re + two * kw * b.theta * w[a]
    });
    out.insert(Equation::Vi, to_f64(max_abs(&vi)));

    let ar: FourVector<T> = std::array::from_fn(|n| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for mu in 0..4 {
            let sg = basis.sigma_lower[mu][n] * basis.pi;
            acc = acc + sand(psi, &sg, &dup[mu], basis) - sand(&dup[mu], &sg, psi, basis);
        }
        db[n].theta - two * (i * acc).re - two * kw * b.phi * w[n] + two * m * sl[n]
    });
    out.insert(Equation::Ar, to_f64(max_abs(&ar)));
    out
}

/// The ten bilinear Gordon residuals at x.
pub fn residual_bilinear_gordon<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
) -> Result<GroupResiduals> {
    let st = LocalState::evaluate(field, x, bg, basis)?;
    Ok(bilinear_gordon_from_state(&st, bg, basis))
}

/// i gamma^mu nabla_mu psi - kappa W_mu gamma^mu pi psi - m psi.
pub fn dirac_operator<T: Real>(
    psi: &Spinor<T>,
    nabla: &[Spinor<T>; 4],
    w: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
) -> Spinor<T> {
    let i = Complex::new(T::zero(), T::one());
    let mut acc = psi.scale_real(-bg.mass);
    let pipsi = basis.pi * *psi;
    for mu in 0..4 {
        acc = acc + (basis.gamma[mu] * nabla[mu]).scale(i) - (basis.gamma[mu] * pipsi).scale_real(bg.kappa_w * w[mu]);
    }
    acc
}

/// Euclidean norm of the field-equation residual at x.
pub fn dirac_residual<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
) -> Result<T> {
    let psi = field.value(x)?;
    let nabla = covariant_derivative(field, x, bg)?;
    Ok(dirac_operator(&psi, &nabla, &bg.w.at(x), bg, basis).norm())
}

/// All residuals at a point: Dirac, the ten bilinear equations and the polar groups.
pub fn all_residuals<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<GroupResiduals> {
    let pt = evaluate_point(field, x, bg, basis, h)?;
    let mut out = bilinear_gordon_from_state(&pt.state, bg, basis);
    out.extend(&polar_groups_at(&pt, bg));
    let dirac = dirac_operator(&pt.state.psi, &pt.state.nabla, &pt.state.w, bg, basis).norm();
    out.insert(Equation::Dirac, to_f64(dirac));
    Ok(out)
}

/// Default ratio between the group tolerance and the Dirac tolerance.
pub const DEFAULT_KAPPA: f64 = 10.0;

/// Groups compared against the Dirac verdict.
pub const PROBE_GROUPS: [&str; 5] = ["A", "B", "C", "D", "gordon"];

/// Verdicts at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbePoint {
    pub x: [f64; 4],
    /// Dirac residual divided by |psi|.
    pub dirac: f64,
    /// Per-group maxima; the bilinear group is divided by |psi|^2.
    pub groups: BTreeMap<&'static str, f64>,
    /// Set when the point could not be evaluated (e.g. a node).
    pub error: Option<String>,
    /// Groups whose verdict contradicts the Dirac verdict.
    pub one_sided: Vec<&'static str>,
}

/// Outcome of the bidirectional equivalence test.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub tol: f64,
    pub kappa: f64,
    pub points: Vec<ProbePoint>,
    /// Every point was singular (e.g. the zero field): consistent vacuously.
    pub degenerate: bool,
    /// max over evaluated points of dirac / max(D1, D2); the constant C of
    /// the implication "group D below eps implies Dirac below C eps".
    pub measured_c: f64,
}

impl ProbeReport {
    pub fn consistent(&self) -> bool {
        self.points.iter().all(|p| p.one_sided.is_empty())
    }

    pub fn evaluated(&self) -> usize {
        self.points.iter().filter(|p| p.error.is_none()).count()
    }

    /// Points where the Dirac residual is below tol.
    pub fn dirac_passes(&self) -> usize {
        self.points.iter().filter(|p| p.error.is_none() && p.dirac < self.tol).count()
    }
}

fn probe_point<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
    tol: f64,
    kappa: f64,
) -> ProbePoint {
    let xf = x.map(to_f64);
    let res = match all_residuals(field, x, bg, basis, h) {
        Ok(r) => r,
        Err(e) => {
            return ProbePoint {
                x: xf,
                dirac: f64::NAN,
                groups: BTreeMap::new(),
                error: Some(e.to_string()),
                one_sided: Vec::new(),
            }
        }
    };
    let n = to_f64(field.value(x).map(|p| p.norm()).unwrap_or(T::one()));
    let dirac = res.get(Equation::Dirac).unwrap_or(f64::NAN) / n;
    let mut groups = BTreeMap::new();
    for g in PROBE_GROUPS {
        let v = res.group_max(g).unwrap_or(0.0);
        groups.insert(g, if g == "gordon" { v / (n * n) } else { v });
    }
    let dirac_pass = dirac < tol;
    // failures inside the band [tol, 10 tol kappa] are not judged
    let dirac_clear_fail = dirac > 10.0 * tol * kappa;
    let one_sided = groups
        .iter()
        .filter(|(_, v)| {
            let pass = **v < tol * kappa;
            (dirac_pass && !pass) || (dirac_clear_fail && pass)
        })
        .map(|(g, _)| *g)
        .collect();
    ProbePoint {
        x: xf,
        dirac,
        groups,
        error: None,
        one_sided,
    }
}

/// Checks, point by point, that the Dirac residual and every group residual
/// pass or fail together. Points are evaluated in parallel; the output keeps
/// the input order.
pub fn equivalence_probe<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    bg: &Background<T>,
    points: &[FourVector<T>],
    tol: f64,
    kappa: f64,
    basis: &CliffordBasis<T>,
    h: T,
) -> ProbeReport {
    let results: Vec<ProbePoint> = points
        .par_iter()
        .map(|x| probe_point(field, x, bg, basis, h, tol, kappa))
        .collect();
    let degenerate = !results.is_empty() && results.iter().all(|p| p.error.is_some());
    let measured_c = results
        .iter()
        .filter(|p| p.error.is_none())
        .filter_map(|p| {
            let d = p.groups.get("D").copied().unwrap_or(0.0);
            (d > 0.0).then(|| p.dirac / d)
        })
        .fold(0.0, f64::max);
    ProbeReport {
        tol,
        kappa,
        points: results,
        degenerate,
        measured_c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_chiral_basis;
    use crate::fieldconn::{plane_wave, AffineField, ConstantField, PlaneWave, WaveSuperposition};

    fn cz(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rest_wave() -> PlaneWave<f64> {
        plane_wave([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0], cz(1.0, 0.0), 1.0).unwrap()
    }

    #[test]
    fn rest_wave_potentials() {
        let b = build_chiral_basis();
        let mut bg = Background::free(1.0);
        let pt = evaluate_point(&rest_wave(), &[0.2, 0.1, 0.0, -0.3], &bg, &b, 1e-3).unwrap();
        let qp = compute_ef(&pt, &bg);
        let expect_e = [0.0, 0.0, 0.0, -1.0];
        for mu in 0..4 {
            assert!((qp.e[mu] - expect_e[mu]).abs() < 1e-9);
            assert!(qp.f[mu].abs() < 1e-9);
        }
        bg.kappa_w = 0.5;
        bg.w = AffineField::constant([0.2, 0.0, 0.4, 0.0]);
        let pt = evaluate_point(&rest_wave(), &[0.0; 4], &bg, &b, 1e-3).unwrap();
        let qp = compute_ef(&pt, &bg);
        assert!((qp.e[0] + 0.1).abs() < 1e-9 && (qp.e[2] + 0.2).abs() < 1e-9 && (qp.e[3] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn trivial_point_has_zero_residuals() {
        let z = [0.0; 4];
        let r = residual_polar_groups(&z, &z, &z, &[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn rest_wave_closed_form_groups() {
        let m = 1.0;
        let u = [1.0, 0.0, 0.0, 0.0];
        let s = [0.0, 0.0, 0.0, 1.0];
        let e = [0.0, 0.0, 0.0, -m];
        let p = [m, 0.0, 0.0, 0.0];
        let r = residual_polar_groups(&e, &[0.0; 4], &p, &u, &s);
        assert!(r.max() < 1e-15, "{r:?}");
        // a momentum perturbation shows up linearly in group D
        let r = residual_polar_groups(&e, &[0.0; 4], &[m, 1e-3, 0.0, 0.0], &u, &s);
        let d = r.group_max("D").unwrap();
        assert!((d - 1e-3).abs() < 1e-12, "{d}");
    }

    #[test]
    fn plane_wave_all_residuals() {
        let b = build_chiral_basis();
        let w = plane_wave([2f64.sqrt(), 0.0, 0.0, 1.0], [0.0, 1.0, 0.0], cz(0.8, -0.3), 1.0).unwrap();
        let r = all_residuals(&w, &[0.1, 0.4, -0.2, 0.3], &Background::free(1.0), &b, 1e-3).unwrap();
        assert!(r.max() < 1e-7, "{r:?}");
        assert!(r.get(Equation::Dirac).unwrap() < 1e-12);
    }

    #[test]
    fn constant_current_is_divergence_free() {
        let b = build_chiral_basis();
        let f = ConstantField(Spinor::new([cz(0.3, 0.1), cz(-1.0, 0.4), cz(0.2, -0.7), cz(0.5, 0.5)]));
        let r = residual_bilinear_gordon(&f, &[0.0; 4], &Background::free(0.0), &b).unwrap();
        assert_eq!(r.get(Equation::DivU), Some(0.0));
    }

    #[test]
    fn zero_spinor_dirac_residual() {
        let b = build_chiral_basis();
        let f = ConstantField(Spinor::<f64>::zero());
        assert_eq!(dirac_residual(&f, &[0.0; 4], &Background::free(1.0), &b).unwrap(), 0.0);
    }

    #[test]
    fn off_shell_dirac_residual_closed_form() {
        // for a rest-frame column with energy E and mass m the residual is |E - m| |psi|
        let b = build_chiral_basis();
        let w = PlaneWave::off_shell([1.2, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0], cz(1.0, 0.0)).unwrap();
        let r = dirac_residual(&w, &[0.0; 4], &Background::free(1.0), &b).unwrap();
        assert!((r - 0.2 * 2f64.sqrt()).abs() < 1e-14, "{r}");
    }

    #[test]
    fn two_wave_groups_vanish() {
        let b = build_chiral_basis();
        let f = WaveSuperposition::new(vec![
            plane_wave([1.13f64.sqrt(), 0.3, 0.0, 0.2], [0.0, 0.0, 1.0], cz(1.0, 0.0), 1.0).unwrap(),
            plane_wave([1.18f64.sqrt(), -0.1, 0.4, 0.1], [1.0, 0.0, 0.0], Complex::from_polar(0.5, 0.3), 1.0).unwrap(),
        ]);
        let r = all_residuals(&f, &[0.3, 0.1, -0.2, 0.4], &Background::free(1.0), &b, 1e-3).unwrap();
        assert!(r.max() < 1e-6, "{r:?}");
    }

    #[test]
    fn zero_field_probe_is_degenerate() {
        let b = build_chiral_basis();
        let f = ConstantField(Spinor::<f64>::zero());
        let pts: Vec<[f64; 4]> = (0..20).map(|k| [k as f64 * 0.1, 0.0, 0.0, 0.0]).collect();
        let rep = equivalence_probe(&f, &Background::free(1.0), &pts, 1e-6, DEFAULT_KAPPA, &b, 1e-3);
        assert!(rep.degenerate);
        assert!(rep.consistent());
        assert_eq!(rep.evaluated(), 0);
    }
}
