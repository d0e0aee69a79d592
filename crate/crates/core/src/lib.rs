//! Exact Riemann solver for the Aw-Rascle traffic model with Chaplygin
//! pressure P = -A/ρ and a Coulomb-like friction source βρ.
//!
//! The solver produces closed-form wave patterns (contact discontinuities
//! and delta shock waves on parabolic paths) and cross-checks them four
//! independent ways:
//!
//! * [`grh_ode`] integrates the generalized Rankine-Hugoniot ODE system
//!   and compares against the closed forms;
//! * [`weak_residual`] evaluates the distributional form of the equations
//!   against smooth compactly supported test functions;
//! * [`fv_reference`] runs a shock-capturing finite-volume scheme and
//!   locates the predicted waves;
//! * [`pressure_limits`] sweeps the pressure coefficient toward the
//!   delta-formation threshold and toward zero and checks the analytic
//!   limits.

pub mod error;
pub mod exact_riemann;
pub mod fv_reference;
pub mod grh_ode;
pub mod model;
pub mod phase_plane;
pub mod pressure_limits;
pub mod quadrature;
pub mod weak_residual;

pub use error::{Error, Result};
pub use exact_riemann::{
    entropy_check, solve, solve_transport, DeltaPathPoint, DeltaShockPattern, EntropyReport,
    SamplePoint, TransportPattern, TwoContactsPattern, WavePattern, WaveSolution,
};
pub use model::{
    eigenvalues, frame_convert, pressure, Frame, ModelParams, RiemannSetup, State, DENSITY_FLOOR,
};
pub use phase_plane::{classify, classify_with_tol, j1_curve, thresholds, Region, Thresholds};
