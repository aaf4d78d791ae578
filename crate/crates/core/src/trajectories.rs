//! Integral curves of the velocity field, dx/dtau = u(x), by classical RK4.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{to_f64, CliffordBasis};
use crate::error::{Error, Result};
use crate::fieldconn::{evaluate_point, Background, SpinorField};
use crate::guidance::guidance_at;
use crate::metric::{dot, FourVector};
use crate::polar::polar_decompose;
use crate::scalar::{lit, Real};

/// How the velocity is obtained at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VelocityMode {
    /// U / (2 phi^2) from the bilinears.
    Kinematic,
    /// Inversion of the momentum relation with the extracted P, Y, Z.
    Guidance,
}

impl VelocityMode {
    pub fn other(self) -> Self {
        match self {
            VelocityMode::Kinematic => VelocityMode::Guidance,
            VelocityMode::Guidance => VelocityMode::Kinematic,
        }
    }
}

impl fmt::Display for VelocityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VelocityMode::Kinematic => "kinematic",
            VelocityMode::Guidance => "guidance",
        })
    }
}

impl FromStr for VelocityMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kinematic" => Ok(VelocityMode::Kinematic),
            "guidance" => Ok(VelocityMode::Guidance),
            other => Err(Error::InvalidArgument(format!(
                "unknown velocity mode `{other}` (expected kinematic or guidance)"
            ))),
        }
    }
}

/// Velocity at x in the requested mode.
pub fn velocity_field<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    bg: &Background<T>,
    x: &FourVector<T>,
    mode: VelocityMode,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<FourVector<T>> {
    match mode {
        VelocityMode::Kinematic => Ok(polar_decompose(&field.value(x)?, basis)?.u),
        VelocityMode::Guidance => {
            let pt = evaluate_point(field, x, bg, basis, h)?;
            Ok(guidance_at(&pt, bg)?.guidance_u.u)
        }
    }
}

/// Step controls for one integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationSettings<T> {
    pub mode: VelocityMode,
    pub h_tau: T,
    pub n_steps: usize,
    /// Stencil spacing used by the guidance mode.
    pub stencil_h: T,
    /// Also evaluate the other mode at every sample to fill `mode_discrepancy`.
    pub compare_modes: bool,
}

impl<T: Real> IntegrationSettings<T> {
    pub fn new(mode: VelocityMode, h_tau: T, n_steps: usize) -> Self {
        Self {
            mode,
            h_tau,
            n_steps,
            stencil_h: lit(crate::fieldconn::DEFAULT_H),
            compare_modes: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectorySample<T> {
    pub tau: T,
    pub x: FourVector<T>,
    pub u: FourVector<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub mode: VelocityMode,
    pub h_tau: T,
    pub samples: Vec<TrajectorySample<T>>,
    /// Why integration ended early, if it did.
    pub stopped: Option<Error>,
    /// max |u.u - 1| over the samples.
    pub max_norm_defect: f64,
    /// max |u_kinematic - u_guidance| over the samples, when compared.
    pub mode_discrepancy: Option<f64>,
}

impl<T: Real> Trajectory<T> {
    pub fn completed(&self) -> bool {
        self.stopped.is_none()
    }

    pub fn last(&self) -> &TrajectorySample<T> {
        self.samples.last().expect("a trajectory holds at least its seed")
    }
}

/// Sup-norm distance between positions of two trajectories over their common samples.
pub fn trajectory_divergence<T: Real>(a: &Trajectory<T>, b: &Trajectory<T>) -> f64 {
    a.samples
        .iter()
        .zip(&b.samples)
        .flat_map(|(p, q)| (0..4).map(move |k| to_f64((p.x[k] - q.x[k]).abs())))
        .fold(0.0, f64::max)
}

fn axpy<T: Real>(x: &FourVector<T>, k: T, v: &FourVector<T>) -> FourVector<T> {
    std::array::from_fn(|i| x[i] + k * v[i])
}

/// Integrates from x0 for `n_steps` RK4 steps. A singular or degenerate
/// point met along the way ends the trajectory early (recorded in
/// `stopped`); a singular seed is an error.
pub fn integrate<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    x0: &FourVector<T>,
    settings: &IntegrationSettings<T>,
) -> Result<Trajectory<T>> {
    let mode = settings.mode;
    let hs = settings.stencil_h;
    let vel = |x: &FourVector<T>| velocity_field(field, bg, x, mode, basis, hs);
    let u0 = vel(x0).map_err(|e| Error::ImmediateSingularity(Box::new(e)))?;

    let h = settings.h_tau;
    let half = h * lit(0.5);
    let sixth = h / lit(6.0);
    let two: T = lit(2.0);
    let mut samples = vec![TrajectorySample { tau: T::zero(), x: *x0, u: u0 }];
    let mut stopped = None;
    for step in 0..settings.n_steps {
        let TrajectorySample { x, u: k1, .. } = *samples.last().unwrap();
        let next = (|| -> Result<(FourVector<T>, FourVector<T>)> {
            let k2 = vel(&axpy(&x, half, &k1))?;
            let k3 = vel(&axpy(&x, half, &k2))?;
            let k4 = vel(&axpy(&x, h, &k3))?;
            let xn = std::array::from_fn(|i| x[i] + sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]));
            let un = vel(&xn)?;
            Ok((xn, un))
        })();
        match next {
            Ok((xn, un)) => samples.push(TrajectorySample {
                tau: h * T::from_usize(step + 1).unwrap(),
                x: xn,
                u: un,
            }),
            Err(e) => {
                stopped = Some(e);
                break;
            }
        }
    }

    let max_norm_defect = samples
        .iter()
        .map(|s| to_f64((dot(&s.u, &s.u) - T::one()).abs()))
        .fold(0.0, f64::max);
    let mode_discrepancy = if settings.compare_modes {
        let mut worst = 0.0f64;
        for s in &samples {
            match velocity_field(field, bg, &s.x, mode.other(), basis, hs) {
                Ok(v) => {
                    for k in 0..4 {
                        worst = worst.max(to_f64((v[k] - s.u[k]).abs()));
                    }
                }
                Err(_) => worst = f64::INFINITY,
            }
        }
        Some(worst)
    } else {
        None
    };
    Ok(Trajectory {
        mode,
        h_tau: h,
        samples,
        stopped,
        max_norm_defect,
        mode_discrepancy,
    })
}

/// Independent integrations from several seeds, in parallel; the output
/// order matches the seeds and a failing seed does not affect the others.
pub fn batch_integrate<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    seeds: &[FourVector<T>],
    settings: &IntegrationSettings<T>,
) -> Vec<Result<Trajectory<T>>> {
    seeds
        .par_iter()
        .map(|x0| integrate(field, bg, basis, x0, settings))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_chiral_basis;
    use crate::fieldconn::{plane_wave, ConstantField};
    use crate::spinor::Spinor;
    use num_complex::Complex;

    #[test]
    fn zero_steps_returns_seed() {
        let b = build_chiral_basis();
        let f = ConstantField(Spinor::seed());
        let s = IntegrationSettings::new(VelocityMode::Kinematic, 0.1, 0);
        let t = integrate(&f, &Background::free(1.0), &b, &[0.5, 0.0, 1.0, 0.0], &s).unwrap();
        assert_eq!(t.samples.len(), 1);
        assert_eq!(t.samples[0].x, [0.5, 0.0, 1.0, 0.0]);
        assert!(t.completed());
    }

    #[test]
    fn plane_wave_is_a_straight_line() {
        let b = build_chiral_basis();
        let p = [2f64.sqrt(), 0.0, 0.0, 1.0];
        let w = plane_wave(p, [0.0, 0.0, 1.0], Complex::new(1.0, 0.0), 1.0).unwrap();
        for mode in [VelocityMode::Kinematic, VelocityMode::Guidance] {
            let s = IntegrationSettings::new(mode, 0.1, 100);
            let t = integrate(&w, &Background::free(1.0), &b, &[0.0; 4], &s).unwrap();
            assert_eq!(t.samples.len(), 101);
            let tol = if mode == VelocityMode::Kinematic { 1e-10 } else { 1e-6 };
            for smp in &t.samples {
                for k in 0..4 {
                    assert!((smp.x[k] - smp.tau * p[k]).abs() < tol, "{mode}: {:?}", smp);
                }
            }
        }
    }

    #[test]
    fn singular_seed_is_an_error() {
        let b = build_chiral_basis();
        let f = ConstantField(Spinor::<f64>::zero());
        let s = IntegrationSettings::new(VelocityMode::Kinematic, 0.1, 10);
        let r = integrate(&f, &Background::free(1.0), &b, &[0.0; 4], &s);
        assert!(matches!(r, Err(Error::ImmediateSingularity(_))));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("guidance".parse::<VelocityMode>().unwrap(), VelocityMode::Guidance);
        assert!("bohm".parse::<VelocityMode>().is_err());
        assert_eq!(VelocityMode::Kinematic.to_string(), "kinematic");
    }
}
