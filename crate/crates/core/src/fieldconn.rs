//! Spinor fields on flat space-time, their covariant derivatives, and the
//! tensorial connections R_{ij mu}, P_mu extracted from the polar frame.
//!
//! Covariant derivative: nabla_mu = d_mu + i q A_mu (Cartesian frames carry
//! no spin connection). A and W are given with lower indices.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::algebra::{to_f64, CliffordBasis, LorentzPair, PAIRS};
use crate::bilinears::{bilinear_derivative, compute_bilinears, BilinearSet};
use crate::error::{Error, Result};
use crate::linalg::CMat4;
use crate::metric::{dot, lower, FourVector};
use crate::polar::{polar_decompose, polar_from_bilinears, PolarData};
use crate::scalar::{lit, wrap_angle, Real};
use crate::spinor::Spinor;
use crate::tensor::Antisym;

/// Default stencil spacing.
pub const DEFAULT_H: f64 = 1e-3;

/// Affine covector field: value_mu(x) = constant_mu + sum_nu gradient[mu][nu] x^nu.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AffineField<T> {
    pub constant: FourVector<T>,
    pub gradient: [[T; 4]; 4],
}

impl<T: Real> AffineField<T> {
    pub fn zero() -> Self {
        Self {
            constant: [T::zero(); 4],
            gradient: [[T::zero(); 4]; 4],
        }
    }

    pub fn constant(c: FourVector<T>) -> Self {
        Self {
            constant: c,
            gradient: [[T::zero(); 4]; 4],
        }
    }

    pub fn at(&self, x: &FourVector<T>) -> FourVector<T> {
        std::array::from_fn(|mu| {
            (0..4).fold(self.constant[mu], |acc, nu| acc + self.gradient[mu][nu] * x[nu])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.constant.iter().chain(self.gradient.iter().flatten()).all(|v| *v == T::zero())
    }
}

/// External data the spinor couples to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Background<T> {
    pub mass: T,
    pub charge: T,
    /// Coupling of the axial torsion vector W.
    pub kappa_w: T,
    pub a: AffineField<T>,
    pub w: AffineField<T>,
}

impl<T: Real> Background<T> {
    /// m, with q = 1 and vanishing A, W.
    pub fn free(mass: T) -> Self {
        Self {
            mass,
            charge: T::one(),
            kappa_w: T::zero(),
            a: AffineField::zero(),
            w: AffineField::zero(),
        }
    }
}

/// A spinor-valued function of space-time with partial derivatives.
pub trait SpinorField<T: Real>: Send + Sync {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>>;

    /// d_mu psi for mu = 0..3.
    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]>;

    /// Natural stencil spacing (grid spacing for sampled fields).
    fn stencil_hint(&self) -> Option<T> {
        None
    }
}

impl<T: Real, F: SpinorField<T> + ?Sized> SpinorField<T> for Box<F> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        (**self).value(x)
    }
    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        (**self).gradient(x)
    }
    fn stencil_hint(&self) -> Option<T> {
        (**self).stencil_hint()
    }
}

/// amplitude exp(-i p.x) w with w the boosted, rotated reference column.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave<T> {
    /// Contravariant momentum.
    pub p: FourVector<T>,
    pub amplitude: Complex<T>,
    /// Constant spinor factor.
    pub w: Spinor<T>,
}

fn timelike_check<T: Real>(p: &FourVector<T>, index: usize) -> Result<T> {
    let p2 = dot(p, p);
    if !(p[0] > T::zero()) || !(p2 > T::zero()) {
        return Err(Error::NotTimelike { index });
    }
    Ok(p2)
}

fn polarized_column<T: Real>(p: &FourVector<T>, p2: T, axis: &[T; 3]) -> Result<Spinor<T>> {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if !(n > T::zero()) {
        return Err(Error::InvalidArgument("spin axis must be a nonzero 3-vector".into()));
    }
    let m = p2.sqrt();
    let u = p.map(|v| v / m);
    let frame = LorentzPair::boost_to(&u).compose(&LorentzPair::rotation_z_to(axis));
    Ok(frame.spin_rep * Spinor::seed())
}

/// Plane-wave solution of the free equation with mass `mass`, spin along
/// `axis` in the rest frame of p.
pub fn plane_wave<T: Real>(p: FourVector<T>, axis: [T; 3], amplitude: Complex<T>, mass: T) -> Result<PlaneWave<T>> {
    plane_wave_indexed(p, axis, amplitude, mass, 0)
}

/// As [`plane_wave`], naming the wave by `index` in errors.
pub fn plane_wave_indexed<T: Real>(
    p: FourVector<T>,
    axis: [T; 3],
    amplitude: Complex<T>,
    mass: T,
    index: usize,
) -> Result<PlaneWave<T>> {
    let p2 = timelike_check(&p, index)?;
    let m2 = mass * mass;
    if (p2 - m2).abs() > lit::<T>(1e-10) * m2.max(T::one()) {
        return Err(Error::OffShell {
            index,
            p_squared: to_f64(p2),
            mass_squared: to_f64(m2),
        });
    }
    Ok(PlaneWave {
        p,
        amplitude,
        w: polarized_column(&p, p2, &axis)?,
    })
}

impl<T: Real> PlaneWave<T> {
    /// sqrt(p.p), the mass the wave is on shell for.
    pub fn mass(&self) -> T {
        dot(&self.p, &self.p).sqrt()
    }

    /// Same construction without the mass-shell check; solves the free
    /// equation only for mass sqrt(p.p).
    pub fn off_shell(p: FourVector<T>, axis: [T; 3], amplitude: Complex<T>) -> Result<Self> {
        let p2 = timelike_check(&p, 0)?;
        Ok(Self {
            p,
            amplitude,
            w: polarized_column(&p, p2, &axis)?,
        })
    }

    fn phase(&self, x: &FourVector<T>) -> Complex<T> {
        Complex::from_polar(T::one(), -dot(&self.p, x)) * self.amplitude
    }
}

impl<T: Real> SpinorField<T> for PlaneWave<T> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        Ok(self.w.scale(self.phase(x)))
    }

    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        let psi = self.w.scale(self.phase(x));
        let pl = lower(&self.p);
        Ok(pl.map(|p| psi.scale(Complex::new(T::zero(), -p))))
    }
}

/// Finite sum of plane waves.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WaveSuperposition<T> {
    pub waves: Vec<PlaneWave<T>>,
}

impl<T: Real> WaveSuperposition<T> {
    pub fn new(waves: Vec<PlaneWave<T>>) -> Self {
        Self { waves }
    }
}

impl<T: Real> SpinorField<T> for WaveSuperposition<T> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        let mut acc = Spinor::zero();
        for w in &self.waves {
            acc = acc + w.value(x)?;
        }
        Ok(acc)
    }

    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        let mut acc = [Spinor::zero(); 4];
        for w in &self.waves {
            let g = w.gradient(x)?;
            for mu in 0..4 {
                acc[mu] = acc[mu] + g[mu];
            }
        }
        Ok(acc)
    }
}

/// Spatially and temporally constant spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantField<T>(pub Spinor<T>);

impl<T: Real> SpinorField<T> for ConstantField<T> {
    fn value(&self, _x: &FourVector<T>) -> Result<Spinor<T>> {
        Ok(self.0)
    }
    fn gradient(&self, _x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        Ok([Spinor::zero(); 4])
    }
}

/// Affine spinor field psi0 + (x - x0)^mu J_mu; a first-order jet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JetField<T> {
    pub x0: FourVector<T>,
    pub psi0: Spinor<T>,
    pub jet: [Spinor<T>; 4],
}

impl<T: Real> SpinorField<T> for JetField<T> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        let mut acc = self.psi0;
        for mu in 0..4 {
            acc = acc + self.jet[mu].scale_real(x[mu] - self.x0[mu]);
        }
        Ok(acc)
    }
    fn gradient(&self, _x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        Ok(self.jet)
    }
}

/// An inner field multiplied by the spatial Gaussian exp(-|x - center|^2 / (2 width^2)).
/// Not a solution of the field equation even when the inner field is.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianProfile<F, T> {
    pub inner: F,
    pub center: [T; 3],
    pub width: T,
}

impl<T: Real, F: SpinorField<T>> SpinorField<T> for GaussianProfile<F, T> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        Ok(self.inner.value(x)?.scale_real(self.envelope(x).0))
    }

    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        let (g, dg) = self.envelope(x);
        let psi = self.inner.value(x)?;
        let inner = self.inner.gradient(x)?;
        Ok(std::array::from_fn(|mu| inner[mu].scale_real(g) + psi.scale_real(dg[mu])))
    }
}

impl<F, T: Real> GaussianProfile<F, T> {
    fn envelope(&self, x: &FourVector<T>) -> (T, FourVector<T>) {
        let w2 = self.width * self.width;
        let d = [x[1] - self.center[0], x[2] - self.center[1], x[3] - self.center[2]];
        let r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let g = (-r2 / (lit::<T>(2.0) * w2)).exp();
        (g, [T::zero(), -g * d[0] / w2, -g * d[1] / w2, -g * d[2] / w2])
    }
}

/// Samples on a uniform 4D Cartesian grid; values by multilinear
/// interpolation, derivatives by central differences at the grid spacing.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField<T> {
    pub dims: [usize; 4],
    pub origin: FourVector<T>,
    pub spacing: FourVector<T>,
    /// Row-major, last axis fastest.
    pub samples: Vec<Spinor<T>>,
}

impl<T: Real> GridField<T> {
    /// Samples another field on the grid.
    pub fn sample<F: SpinorField<T> + ?Sized>(
        field: &F,
        origin: FourVector<T>,
        spacing: FourVector<T>,
        dims: [usize; 4],
    ) -> Result<Self> {
        let n: usize = dims.iter().product();
        let mut samples = Vec::with_capacity(n);
        for flat in 0..n {
            let idx = unflatten(flat, &dims);
            let x = std::array::from_fn(|k| origin[k] + spacing[k] * T::from_usize(idx[k]).unwrap());
            samples.push(field.value(&x)?);
        }
        Self::new(dims, origin, spacing, samples)
    }

    pub fn new(dims: [usize; 4], origin: FourVector<T>, spacing: FourVector<T>, samples: Vec<Spinor<T>>) -> Result<Self> {
        if dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument("every grid axis needs at least 2 points".into()));
        }
        if spacing.iter().any(|h| !(*h > T::zero())) {
            return Err(Error::InvalidArgument("grid spacing must be positive".into()));
        }
        let n: usize = dims.iter().product();
        if samples.len() != n {
            return Err(Error::InvalidArgument(format!(
                "grid declares {n} samples but {} were given",
                samples.len()
            )));
        }
        Ok(Self { dims, origin, spacing, samples })
    }

    fn at_index(&self, idx: &[usize; 4]) -> Spinor<T> {
        let mut flat = 0;
        for k in 0..4 {
            flat = flat * self.dims[k] + idx[k];
        }
        self.samples[flat]
    }

    /// Plain-text serialization: a header followed by one line of eight
    /// numbers (re, im per component) per sample.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# dirac-hydro grid v1");
        let _ = writeln!(out, "dims {} {} {} {}", self.dims[0], self.dims[1], self.dims[2], self.dims[3]);
        let row = |v: &[T]| v.iter().map(|x| format!("{:.16e}", x)).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "origin {}", row(&self.origin));
        let _ = writeln!(out, "spacing {}", row(&self.spacing));
        for s in &self.samples {
            let _ = writeln!(out, "{}", row(&s.to_interleaved()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::InvalidArgument(format!("grid line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<(usize, Vec<String>)> {
            let (n, l) = lines.next().ok_or_else(|| bad(0, &format!("missing `{key}` header")))?;
            let mut parts = l.split_whitespace();
            if parts.next() != Some(key) {
                return Err(bad(n, &format!("expected `{key}`")));
            }
            let vals: Vec<String> = parts.map(str::to_owned).collect();
            if vals.len() != 4 {
                return Err(bad(n, &format!("`{key}` needs 4 values")));
            }
            Ok((n, vals))
        };
        let (n, d) = header("dims")?;
        let mut dims = [0usize; 4];
        for k in 0..4 {
            dims[k] = d[k].parse().map_err(|_| bad(n, "dims must be integers"))?;
        }
        let parse4 = |n: usize, v: Vec<String>| -> Result<FourVector<T>> {
            let mut out = [T::zero(); 4];
            for k in 0..4 {
                let f: f64 = v[k].parse().map_err(|_| bad(n, "expected a number"))?;
                out[k] = lit(f);
            }
            Ok(out)
        };
        let (n, o) = header("origin")?;
        let origin = parse4(n, o)?;
        let (n, h) = header("spacing")?;
        let spacing = parse4(n, h)?;
        let mut samples = Vec::new();
        for (n, l) in lines {
            let vals: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(n, "expected a number"))?;
            if vals.len() != 8 {
                return Err(bad(n, "a sample line needs 8 numbers"));
            }
            samples.push(Spinor::from_interleaved(std::array::from_fn(|k| lit(vals[k]))));
        }
        Self::new(dims, origin, spacing, samples)
    }
}

fn unflatten(mut flat: usize, dims: &[usize; 4]) -> [usize; 4] {
    let mut idx = [0; 4];
    for k in (0..4).rev() {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    idx
}

impl<T: Real> SpinorField<T> for GridField<T> {
    fn value(&self, x: &FourVector<T>) -> Result<Spinor<T>> {
        let out = || Error::OutOfDomain { point: x.map(to_f64) };
        let mut base = [0usize; 4];
        let mut frac = [T::zero(); 4];
        for k in 0..4 {
            let t = (x[k] - self.origin[k]) / self.spacing[k];
            let last = T::from_usize(self.dims[k] - 1).unwrap();
            let slack = lit::<T>(1e-9);
            if !(t >= -slack && t <= last + slack) {
                return Err(out());
            }
            let t = t.max(T::zero()).min(last);
            let i = t.floor().to_usize().unwrap_or(0).min(self.dims[k] - 2);
            base[k] = i;
            frac[k] = t - T::from_usize(i).unwrap();
        }
        let mut acc = Spinor::zero();
        for corner in 0..16usize {
            let mut weight = T::one();
            let mut idx = base;
            for k in 0..4 {
                if corner >> k & 1 == 1 {
                    idx[k] += 1;
                    weight *= frac[k];
                } else {
                    weight *= T::one() - frac[k];
                }
            }
            if weight != T::zero() {
                acc = acc + self.at_index(&idx).scale_real(weight);
            }
        }
        Ok(acc)
    }

    fn gradient(&self, x: &FourVector<T>) -> Result<[Spinor<T>; 4]> {
        let mut g = [Spinor::zero(); 4];
        for mu in 0..4 {
            let h = self.spacing[mu];
            let mut xp = *x;
            let mut xm = *x;
            xp[mu] += h;
            xm[mu] -= h;
            g[mu] = (self.value(&xp)? - self.value(&xm)?).scale_real(T::one() / (lit::<T>(2.0) * h));
        }
        Ok(g)
    }

    fn stencil_hint(&self) -> Option<T> {
        Some(self.spacing.iter().fold(T::infinity(), |m, h| m.min(*h)))
    }
}

/// nabla_mu psi = d_mu psi + i q A_mu psi.
pub fn covariant_derivative<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
) -> Result<[Spinor<T>; 4]> {
    let psi = field.value(x)?;
    let grad = field.gradient(x)?;
    let a = bg.a.at(x);
    Ok(std::array::from_fn(|mu| {
        grad[mu] + psi.scale(Complex::new(T::zero(), bg.charge * a[mu]))
    }))
}

/// R_{ij mu} (all indices lowered, antisymmetric in ij) and P_mu.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorialConnection<T> {
    /// r[mu] holds R_{ij mu} for i < j.
    pub r: [Antisym<T>; 4],
    pub p: FourVector<T>,
    /// Largest part of L^-1 dL not spanned by the sigma^{ij}.
    pub projection_residual: T,
}

impl<T: Real> TensorialConnection<T> {
    pub fn zero() -> Self {
        Self {
            r: [Antisym::zero(); 4],
            p: [T::zero(); 4],
            projection_residual: T::zero(),
        }
    }

    pub fn get(&self, i: usize, j: usize, mu: usize) -> T {
        self.r[mu].get(i, j)
    }
}

/// Coefficients of X on sigma^{ij} (i < j) by trace inner products, and the unprojected remainder.
fn project_sigma<T: Real>(x: &CMat4<T>, basis: &CliffordBasis<T>) -> (Antisym<T>, T) {
    let mut coeffs = [T::zero(); 6];
    let mut rebuilt = CMat4::zero();
    for (n, (i, j)) in PAIRS.iter().enumerate() {
        let b = &basis.sigma[*i][*j];
        let bd = b.adjoint();
        let c = (bd * *x).trace() / (bd * *b).trace();
        coeffs[n] = c.re;
        rebuilt = rebuilt + b.scale_real(c.re);
    }
    (Antisym(coeffs), (*x - rebuilt).max_abs())
}

/// Frame jumps larger than this across one stencil are treated as a seam.
const FRAME_JUMP_LIMIT: f64 = 0.5;

/// Extracts R and P by central differences of the canonical polar frame
/// and the residual phase at x +- h e_mu.
pub fn extract_tensorial_connection<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<TensorialConnection<T>> {
    let centre = polar_decompose(&field.value(x)?, basis)?;
    let frame_inv = centre
        .frame
        .spin_rep
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("singular polar frame".into()))?;
    let a = bg.a.at(x);
    let two_h = lit::<T>(2.0) * h;
    let half_pi = T::FRAC_PI_2();
    let mut tc = TensorialConnection::zero();
    for mu in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[mu] += h;
        xm[mu] -= h;
        let plus = polar_decompose(&field.value(&xp)?, basis)?;
        let minus = polar_decompose(&field.value(&xm)?, basis)?;

        let jump = wrap_angle(plus.residual_phase - minus.residual_phase);
        if jump.abs() > half_pi {
            return Err(Error::PhaseJump {
                quantity: "residual_phase",
                axis: mu,
                jump: to_f64(jump),
            });
        }
        let d_frame = plus.frame.spin_rep - minus.frame.spin_rep;
        if d_frame.max_abs() > lit(FRAME_JUMP_LIMIT) {
            return Err(Error::PhaseJump {
                quantity: "polar frame",
                axis: mu,
                jump: to_f64(d_frame.max_abs()),
            });
        }
        // L^-1 dL with L^-1 = frame: -d(frame) frame^-1
        let xmat = -(d_frame.scale_real(T::one() / two_h) * frame_inv);
        let (r, rest) = project_sigma(&xmat, basis);
        tc.r[mu] = r;
        tc.projection_residual = tc.projection_residual.max(rest);
        tc.p[mu] = jump / two_h - bg.charge * a[mu];
    }
    Ok(tc)
}

/// Pointwise state with exact (derivative-based) gradients of the polar scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalState<T> {
    pub x: FourVector<T>,
    pub psi: Spinor<T>,
    pub nabla: [Spinor<T>; 4],
    pub bilinears: BilinearSet<T>,
    /// d_mu of every bilinear.
    pub d_bilinears: [BilinearSet<T>; 4],
    pub polar: PolarData<T>,
    pub grad_beta: FourVector<T>,
    pub grad_ln_phi: FourVector<T>,
    /// du[mu][i] = d_mu u^i.
    pub du: [FourVector<T>; 4],
    /// ds[mu][i] = d_mu s^i.
    pub ds: [FourVector<T>; 4],
    /// A_mu and W_mu at x.
    pub a: FourVector<T>,
    pub w: FourVector<T>,
}

impl<T: Real> LocalState<T> {
    pub fn evaluate<F: SpinorField<T> + ?Sized>(
        field: &F,
        x: &FourVector<T>,
        bg: &Background<T>,
        basis: &CliffordBasis<T>,
    ) -> Result<Self> {
        let psi = field.value(x)?;
        let bilinears = compute_bilinears(&psi, basis);
        let polar = polar_from_bilinears(&psi, &bilinears, basis)?;
        let nabla = covariant_derivative(field, x, bg)?;
        let d_bilinears: [BilinearSet<T>; 4] =
            std::array::from_fn(|mu| bilinear_derivative(&psi, &nabla[mu], basis));
        let (phi, theta) = (bilinears.phi, bilinears.theta);
        let inv = bilinears.chiral_invariant();
        let r2 = inv.sqrt();
        let mut grad_beta = [T::zero(); 4];
        let mut grad_ln_phi = [T::zero(); 4];
        let mut du = [[T::zero(); 4]; 4];
        let mut ds = [[T::zero(); 4]; 4];
        for mu in 0..4 {
            let d = &d_bilinears[mu];
            let dr2 = (phi * d.phi + theta * d.theta) / r2;
            grad_beta[mu] = (phi * d.theta - theta * d.phi) / inv;
            grad_ln_phi[mu] = dr2 / (lit::<T>(2.0) * r2);
            for i in 0..4 {
                du[mu][i] = d.u[i] / r2 - polar.u[i] * dr2 / r2;
                ds[mu][i] = d.s[i] / r2 - polar.s[i] * dr2 / r2;
            }
        }
        Ok(Self {
            x: *x,
            psi,
            nabla,
            bilinears,
            d_bilinears,
            polar,
            grad_beta,
            grad_ln_phi,
            du,
            ds,
            a: bg.a.at(x),
            w: bg.w.at(x),
        })
    }
}

/// Local state plus the stencil-extracted connection.
#[derive(Clone, Debug, PartialEq)]
pub struct HydroPoint<T> {
    pub state: LocalState<T>,
    pub connection: TensorialConnection<T>,
}

pub fn evaluate_point<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<HydroPoint<T>> {
    Ok(HydroPoint {
        state: LocalState::evaluate(field, x, bg, basis)?,
        connection: extract_tensorial_connection(field, x, bg, basis, h)?,
    })
}

/// max_mu |nabla_mu psi - (-(i/2) d beta pi + d ln phi - i P - R_{ij mu} sigma^{ij}/2) psi| / |psi|.
pub fn verify_polar_derivative<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<T> {
    let pt = evaluate_point(field, x, bg, basis, h)?;
    Ok(polar_derivative_residual(&pt, basis))
}

pub fn polar_derivative_residual<T: Real>(pt: &HydroPoint<T>, basis: &CliffordBasis<T>) -> T {
    let st = &pt.state;
    let half = lit::<T>(0.5);
    let mut worst = T::zero();
    for mu in 0..4 {
        let mut op = basis.pi.scale(Complex::new(T::zero(), -half * st.grad_beta[mu]))
            + basis.identity.scale(Complex::new(st.grad_ln_phi[mu], -pt.connection.p[mu]));
        for (n, (i, j)) in PAIRS.iter().enumerate() {
            op = op - basis.sigma[*i][*j].scale_real(pt.connection.r[mu].0[n]);
        }
        // sum over all ordered pairs of R_ij sigma^ij / 2 equals the sum over i < j
        let model = op * st.psi;
        worst = worst.max((st.nabla[mu] - model).max_abs());
    }
    worst / st.psi.norm()
}

/// Residuals of d_mu s_i = R_{j i mu} s^j and d_mu u_i = R_{j i mu} u^j.
pub fn verify_transport<T: Real, F: SpinorField<T> + ?Sized>(
    field: &F,
    x: &FourVector<T>,
    bg: &Background<T>,
    basis: &CliffordBasis<T>,
    h: T,
) -> Result<crate::report::IdentityReport> {
    let pt = evaluate_point(field, x, bg, basis, h)?;
    Ok(transport_residuals(&pt))
}

pub fn transport_residuals<T: Real>(pt: &HydroPoint<T>) -> crate::report::IdentityReport {
    let st = &pt.state;
    let mut ws = T::zero();
    let mut wu = T::zero();
    for mu in 0..4 {
        let dsl = lower(&st.ds[mu]);
        let dul = lower(&st.du[mu]);
        for i in 0..4 {
            let (mut rs, mut ru) = (T::zero(), T::zero());
            for j in 0..4 {
                let r = pt.connection.get(j, i, mu);
                rs += r * st.polar.s[j];
                ru += r * st.polar.u[j];
            }
            ws = ws.max((dsl[i] - rs).abs());
            wu = wu.max((dul[i] - ru).abs());
        }
    }
    let mut rep = crate::report::IdentityReport::new();
    rep.push("transport_s", to_f64(ws));
    rep.push("transport_u", to_f64(wu));
    rep
}
