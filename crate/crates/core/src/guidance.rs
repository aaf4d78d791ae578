//! Momentum as a function of velocity and its explicit inverse.
//!
//! Y_mu = d_mu beta / 2 - kappa W_mu + (1/4) eps_{mu r s n} R^{r s n},
//! Z_mu = -d_mu ln phi - (1/2) R_{mu r s} eta^{r s},
//! X = m cos beta - Y.s, zeta = Z / X.
//! Y, Z and zeta carry lower indices; momenta passed in or out are contravariant.

use crate::algebra::to_f64;
use crate::error::{Error, Result};
use crate::fieldconn::{Background, HydroPoint};
use crate::gordon::{connection_dual, connection_trace};
use crate::metric::{contract, eps_upper, eta, lower, FourVector};
use crate::scalar::{lit, Real};

/// Relative floor on |X| / m below which the inversion is refused.
pub const DEGENERATE_X_EPS: f64 = 1e-12;
/// Floor on |1 + zeta^2 + (zeta.s)^2|.
pub const DEGENERATE_DEN_EPS: f64 = 1e-10;

/// Compact forms Y, Z, X and zeta = Z / X.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompactForms<T> {
    pub y: FourVector<T>,
    pub z: FourVector<T>,
    pub xs: T,
    pub zeta: FourVector<T>,
}

impl<T: Real> CompactForms<T> {
    /// Builds the forms from Y, Z and the point data m, beta, s (upper).
    pub fn from_parts(y: FourVector<T>, z: FourVector<T>, mass: T, beta: T, s: &FourVector<T>) -> Result<Self> {
        let xs = mass * beta.cos() - contract(&y, s);
        let floor = lit::<T>(DEGENERATE_X_EPS) * mass.abs();
        if !(xs.abs() > floor) || xs == T::zero() {
            return Err(Error::DegenerateX { value: to_f64(xs) });
        }
        Ok(Self {
            y,
            z,
            xs,
            zeta: z.map(|v| v / xs),
        })
    }
}

/// Compact forms from a hydrodynamic point.
pub fn compact_forms<T: Real>(pt: &HydroPoint<T>, bg: &Background<T>) -> Result<CompactForms<T>> {
    let st = &pt.state;
    let dual = connection_dual(&pt.connection);
    let trace = connection_trace(&pt.connection);
    let half: T = lit(0.5);
    let y = std::array::from_fn(|mu| half * st.grad_beta[mu] - bg.kappa_w * st.w[mu] + dual[mu]);
    let z = std::array::from_fn(|mu| -st.grad_ln_phi[mu] - trace[mu]);
    CompactForms::from_parts(y, z, bg.mass, st.polar.beta, &st.polar.s)
}

/// X_i Y_j Z_k eps^{i j k a}.
fn triple<T: Real>(x: &FourVector<T>, y: &FourVector<T>, z: &FourVector<T>) -> FourVector<T> {
    std::array::from_fn(|a| {
        let mut acc = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let e = eps_upper::<T>(i, j, k, a);
                    if e != T::zero() {
                        acc += e * x[i] * y[j] * z[k];
                    }
                }
            }
        }
        acc
    })
}

/// P^a = (X eta^{ak} + Y^k s^a + Z_i s_j eps^{ijka}) u_k.
pub fn momentum_from_velocity<T: Real>(u: &FourVector<T>, s: &FourVector<T>, cf: &CompactForms<T>) -> FourVector<T> {
    let yu = contract(&cf.y, u);
    let t = triple(&cf.z, &lower(s), &lower(u));
    std::array::from_fn(|a| cf.xs * u[a] + yu * s[a] + t[a])
}

/// P^a = m cos beta u^a + Y_m (u^m s^a - s^m u^a) - Z_m u_j s_k eps^{j k m a}.
pub fn momentum_long_form<T: Real>(
    u: &FourVector<T>,
    s: &FourVector<T>,
    y: &FourVector<T>,
    z: &FourVector<T>,
    mass: T,
    beta: T,
) -> FourVector<T> {
    let (yu, ys) = (contract(y, u), contract(y, s));
    let ul = lower(u);
    let sl = lower(s);
    let mc = mass * beta.cos();
    std::array::from_fn(|a| {
        let mut e = T::zero();
        for j in 0..4 {
            for k in 0..4 {
                for m in 0..4 {
                    let ep = eps_upper::<T>(j, k, m, a);
                    if ep != T::zero() {
                        e += ep * z[m] * ul[j] * sl[k];
                    }
                }
            }
        }
        mc * u[a] + yu * s[a] - ys * u[a] - e
    })
}

/// Velocity from the inversion, with u.u reported rather than enforced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvertedVelocity<T> {
    pub u: FourVector<T>,
    pub norm: T,
}

/// u^k = [eta^{ka} + s^k s^a (1 + (zeta.s)^2) + zeta^k zeta^a + (s^k zeta^a + zeta^k s^a)(zeta.s)
///        + zeta_i s_j eps^{ijka}] P_a / (X (1 + zeta^2 + (zeta.s)^2)).
pub fn velocity_from_momentum<T: Real>(
    p: &FourVector<T>,
    s: &FourVector<T>,
    cf: &CompactForms<T>,
) -> Result<InvertedVelocity<T>> {
    if !(cf.xs.abs() > T::zero()) {
        return Err(Error::DegenerateX { value: to_f64(cf.xs) });
    }
    let pl = lower(p);
    let zu = lower(&cf.zeta);
    let z2 = contract(&cf.zeta, &zu);
    let zs = contract(&cf.zeta, s);
    let den = T::one() + z2 + zs * zs;
    if den.abs() < lit(DEGENERATE_DEN_EPS) {
        return Err(Error::DegenerateInversion { value: to_f64(den) });
    }
    let sp = contract(&pl, s);
    let zp = contract(&pl, &zu);
    // zeta_i s_j eps^{ijka} P_a = -zeta_i s_j P_a eps^{ijak}
    let t = triple(&cf.zeta, &lower(s), &pl);
    let scale = T::one() / (cf.xs * den);
    let u: FourVector<T> = std::array::from_fn(|k| {
        let v = eta::<T>(k) * pl[k]
            + s[k] * sp * (T::one() + zs * zs)
            + zu[k] * zp
            + (s[k] * zp + zu[k] * sp) * zs
            - t[k];
        v * scale
    });
    Ok(InvertedVelocity {
        u,
        norm: contract(&lower(&u), &u),
    })
}

/// P = m v + grad ln phi x s, with grad the contravariant spatial gradient.
pub fn nonrel_limit_momentum<T: Real>(v: &[T; 3], s3: &[T; 3], grad_ln_phi: &[T; 3], mass: T) -> [T; 3] {
    let g = grad_ln_phi;
    [
        mass * v[0] + g[1] * s3[2] - g[2] * s3[1],
        mass * v[1] + g[2] * s3[0] - g[0] * s3[2],
        mass * v[2] + g[0] * s3[1] - g[1] * s3[0],
    ]
}

/// Guidance-mode data at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GuidanceSample<T> {
    pub forms: CompactForms<T>,
    /// Contravariant momentum from the connection.
    pub momentum: FourVector<T>,
    pub kinematic_u: FourVector<T>,
    pub guidance_u: InvertedVelocity<T>,
}

pub fn guidance_at<T: Real>(pt: &HydroPoint<T>, bg: &Background<T>) -> Result<GuidanceSample<T>> {
    let forms = compact_forms(pt, bg)?;
    // raising and lowering are the same sign flip
    let momentum = lower(&pt.connection.p);
    let guidance_u = velocity_from_momentum(&momentum, &pt.state.polar.s, &forms)?;
    Ok(GuidanceSample {
        forms,
        momentum,
        kinematic_u: pt.state.polar.u,
        guidance_u,
    })
}
