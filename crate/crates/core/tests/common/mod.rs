#![allow(dead_code)]

use dirac_hydro::fieldconn::plane_wave_indexed;
use dirac_hydro::guidance::CompactForms;
use dirac_hydro::linalg::CMat4;
use dirac_hydro::{
    plane_wave, AffineField, Background, CliffordBasis, FourVector, JetField, LorentzPair, PlaneWave, Spinor,
    WaveSuperposition,
};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cz(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor<f64> {
    Spinor::from_interleaved(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// A spinor whose chiral invariant is at least 1e-6 |psi|^4.
pub fn random_regular_spinor(rng: &mut ChaCha8Rng, basis: &CliffordBasis<f64>) -> Spinor<f64> {
    loop {
        let psi = random_spinor(rng);
        let b = dirac_hydro::compute_bilinears(&psi, basis);
        if b.chiral_invariant() > 1e-6 * psi.norm_sqr().powi(2) {
            return psi;
        }
    }
}

pub fn two_waves() -> WaveSuperposition<f64> {
    WaveSuperposition::new(vec![
        plane_wave([1.13f64.sqrt(), 0.3, 0.0, 0.2], [0.0, 0.0, 1.0], cz(1.0, 0.0), 1.0).unwrap(),
        plane_wave([1.18f64.sqrt(), -0.1, 0.4, 0.1], [1.0, 0.0, 0.0], Complex::from_polar(0.5, 0.3), 1.0).unwrap(),
    ])
}

/// On-shell wave with spatial momentum k.
pub fn wave(k: [f64; 3], axis: [f64; 3], amp: Complex<f64>, m: f64, index: usize) -> PlaneWave<f64> {
    let e = (m * m + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    plane_wave_indexed([e, k[0], k[1], k[2]], axis, amp, m, index).unwrap()
}

/// Three slow waves with |k| components below kmax, spins along z.
pub fn slow_packet(rng: &mut ChaCha8Rng, kmax: f64, m: f64) -> WaveSuperposition<f64> {
    WaveSuperposition::new(
        (0..3)
            .map(|i| {
                let k = std::array::from_fn(|_| rng.random_range(-kmax..kmax));
                let amp = Complex::from_polar(rng.random_range(0.5..1.0), rng.random_range(0.0..6.0));
                wave(k, [0.0, 0.0, 1.0], amp, m, i)
            })
            .collect(),
    )
}

/// A background with every coupling switched on.
pub fn busy_background(rng: &mut ChaCha8Rng) -> Background<f64> {
    let mut bg = Background::free(rng.random_range(0.5..2.0));
    bg.charge = rng.random_range(-1.0..1.0);
    bg.kappa_w = rng.random_range(-1.0..1.0);
    bg.a = AffineField {
        constant: std::array::from_fn(|_| rng.random_range(-0.5..0.5)),
        gradient: std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-0.3..0.3))),
    };
    bg.w = AffineField {
        constant: std::array::from_fn(|_| rng.random_range(-0.5..0.5)),
        gradient: [[0.0; 4]; 4],
    };
    bg
}

/// First-order jet satisfying the field equation at x0: the spatial
/// derivatives are random and the time derivative is solved for.
pub fn dirac_jet(rng: &mut ChaCha8Rng, x0: FourVector<f64>, bg: &Background<f64>, basis: &CliffordBasis<f64>) -> JetField<f64> {
    let i = cz(0.0, 1.0);
    let psi = random_regular_spinor(rng, basis);
    let mut jet = [Spinor::zero(); 4];
    for j in jet.iter_mut().skip(1) {
        *j = random_spinor(rng).scale_real(0.3);
    }
    let a = bg.a.at(&x0);
    let w = bg.w.at(&x0);
    let mut rhs = psi.scale_real(bg.mass);
    for k in 1..4 {
        let dk = jet[k] + psi.scale(i * bg.charge * a[k]);
        rhs = rhs - (basis.gamma[k] * dk).scale(i);
    }
    let pipsi = basis.pi * psi;
    for mu in 0..4 {
        rhs = rhs + (basis.gamma[mu] * pipsi).scale_real(bg.kappa_w * w[mu]);
    }
    let d0 = (basis.gamma[0] * rhs).scale(-i);
    jet[0] = d0 - psi.scale(i * bg.charge * a[0]);
    JetField { x0, psi0: psi, jet }
}

/// Unit timelike u with rapidity below `max_rapidity`, and a unit spin
/// orthogonal to it.
pub fn random_frame(rng: &mut ChaCha8Rng, max_rapidity: f64) -> (FourVector<f64>, FourVector<f64>) {
    let dir = random_unit3(rng);
    let chi = rng.random_range(0.0..max_rapidity);
    let u = [chi.cosh(), chi.sinh() * dir[0], chi.sinh() * dir[1], chi.sinh() * dir[2]];
    let n = random_unit3(rng);
    let l = LorentzPair::<f64>::boost_to(&u).vec_rep;
    let rest = [0.0, n[0], n[1], n[2]];
    let s = std::array::from_fn(|a| (0..4).map(|b| l.0[a][b] * rest[b]).sum());
    (u, s)
}

pub fn random_unit3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

/// Random Y, Z, m, beta compatible with (u, s), rejecting |Xs| <= min_x.
pub fn random_forms(rng: &mut ChaCha8Rng, s: &FourVector<f64>, min_x: f64) -> (CompactForms<f64>, [FourVector<f64>; 2], f64, f64) {
    loop {
        let y: FourVector<f64> = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let z: FourVector<f64> = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let m = rng.random_range(0.5..2.0);
        let beta = rng.random_range(-3.0..3.0);
        if let Ok(cf) = CompactForms::from_parts(y, z, m, beta, s) {
            if cf.xs.abs() > min_x {
                return (cf, [y, z], m, beta);
            }
        }
    }
}

pub fn max_diff4(a: &FourVector<f64>, b: &FourVector<f64>) -> f64 {
    (0..4).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max)
}

pub fn max_abs_mat(m: &CMat4<f64>) -> f64 {
    m.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}
