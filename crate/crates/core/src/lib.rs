//! Hydrodynamic (polar) formulation of the Dirac theory.
//!
//! Everything numerical is generic over the scalar type (`f32` or `f64`)
//! through [`Real`]; the `*64` aliases below fix it to `f64`.

// Index loops mirror the tensor notation; `!(x > t)` is used on purpose so NaN fails checks.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod bilinears;
pub mod config;
pub mod error;
pub mod fieldconn;
pub mod gordon;
pub mod guidance;
pub mod linalg;
pub mod metric;
pub mod polar;
pub mod report;
pub mod scalar;
pub mod spinor;
pub mod tensor;
pub mod trajectories;

pub use algebra::{build_chiral_basis, lorentz_exp, verify_basis, CliffordBasis, LorentzPair, LorentzParams};
pub use bilinears::{adjoint, check_fierz, check_spinor_constraints, compute_bilinears, BilinearSet};
pub use config::{parse_config, ConfigError, ConfigErrors, FieldSpec, OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use fieldconn::{
    evaluate_point, extract_tensorial_connection, plane_wave, AffineField, Background, ConstantField, GaussianProfile,
    GridField, HydroPoint, JetField, LocalState, PlaneWave, SpinorField, TensorialConnection, WaveSuperposition,
};
pub use gordon::{
    all_residuals, compute_ef, dirac_residual, equivalence_probe, residual_bilinear_gordon, residual_polar_groups,
    Equation, GroupResiduals, ProbeReport, QuantumPotentials,
};
pub use guidance::{
    compact_forms, guidance_at, momentum_from_velocity, nonrel_limit_momentum, velocity_from_momentum, CompactForms,
    GuidanceSample,
};
pub use metric::FourVector;
pub use polar::{kinematic_velocity, polar_decompose, polar_reconstruct, PolarData};
pub use report::{IdentityReport, Residual};
pub use scalar::Real;
pub use spinor::Spinor;
pub use tensor::Antisym;
pub use trajectories::{batch_integrate, integrate, IntegrationSettings, Trajectory, VelocityMode};

pub type Spinor64 = Spinor<f64>;
pub type CliffordBasis64 = CliffordBasis<f64>;
pub type LorentzPair64 = LorentzPair<f64>;
pub type BilinearSet64 = BilinearSet<f64>;
pub type PolarData64 = PolarData<f64>;
pub type Background64 = Background<f64>;
pub type PlaneWave64 = PlaneWave<f64>;
pub type WaveSuperposition64 = WaveSuperposition<f64>;
pub type GridField64 = GridField<f64>;
pub type TensorialConnection64 = TensorialConnection<f64>;
pub type HydroPoint64 = HydroPoint<f64>;
pub type CompactForms64 = CompactForms<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type IntegrationSettings64 = IntegrationSettings<f64>;
