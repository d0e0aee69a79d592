//! Core state types for the Chaplygin-pressure Aw-Rascle model with
//! Coulomb-like friction.
//!
//! The model evolves a traffic density ρ > 0 and velocity u under
//!
//! ```text
//! ρ_t + (ρu)_x             = 0,
//! (ρ(u+P))_t + (ρu(u+P))_x = βρ,        P = -A/ρ,  A ≥ 0.
//! ```
//!
//! Substituting v = u - βt absorbs the friction source and leaves a
//! conservative system whose flux depends explicitly on t.  Its two
//! characteristic fields,
//!
//! ```text
//! λ₁ = v + βt - A/ρ,    λ₂ = v + βt,
//! ```
//!
//! are both linearly degenerate, so the only classical waves are contact
//! discontinuities.  A = 0 is the transport (zero-pressure) limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Densities at or below this floor are rejected; keeps A/ρ finite.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Pressure coefficient A ≥ 0 and frictional acceleration β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Chaplygin pressure coefficient A in P = -A/ρ; A = 0 is the
    /// transport limit.
    pub pressure_coeff: f64,
    /// Coulomb-like friction constant β; any sign.
    pub friction: f64,
}

impl ModelParams {
    pub fn new(pressure_coeff: f64, friction: f64) -> Result<Self> {
        if !pressure_coeff.is_finite() || pressure_coeff < 0.0 {
            return Err(Error::InvalidPressureCoefficient(pressure_coeff));
        }
        if !friction.is_finite() {
            return Err(Error::NonFinite {
                name: "friction",
                value: friction,
            });
        }
        Ok(Self {
            pressure_coeff,
            friction,
        })
    }

    /// True when A = 0 and the system degenerates to the transport
    /// equations.
    pub fn is_transport_limit(&self) -> bool {
        self.pressure_coeff == 0.0
    }

    /// Chaplygin pressure P(ρ) = -A/ρ.
    pub fn pressure(&self, rho: f64) -> Result<f64> {
        check_density(rho)?;
        Ok(-self.pressure_coeff / rho)
    }
}

/// Velocity frame tag: `Fixed` carries u, `Moving` carries v = u - βt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    Fixed,
    Moving,
}

/// A constant hydrodynamic state (ρ, velocity) in one of the two frames.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub vel: f64,
    pub frame: Frame,
}

impl State {
    pub fn new(rho: f64, vel: f64, frame: Frame) -> Result<Self> {
        check_density(rho)?;
        if !vel.is_finite() {
            return Err(Error::NonFinite {
                name: "velocity",
                value: vel,
            });
        }
        Ok(Self { rho, vel, frame })
    }

    pub fn moving(rho: f64, v: f64) -> Result<Self> {
        Self::new(rho, v, Frame::Moving)
    }

    pub fn fixed(rho: f64, u: f64) -> Result<Self> {
        Self::new(rho, u, Frame::Fixed)
    }

    /// Fixed-frame velocity u at time t.
    pub fn fixed_velocity(&self, t: f64, params: &ModelParams) -> f64 {
        match self.frame {
            Frame::Fixed => self.vel,
            Frame::Moving => self.vel + params.friction * t,
        }
    }

    /// Moving-frame velocity v = u - βt at time t.
    pub fn moving_velocity(&self, t: f64, params: &ModelParams) -> f64 {
        match self.frame {
            Frame::Fixed => self.vel - params.friction * t,
            Frame::Moving => self.vel,
        }
    }
}

/// Riemann data: left/right states given in the moving frame at t = 0,
/// where u and v coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannSetup {
    pub left: State,
    pub right: State,
    pub params: ModelParams,
}

impl RiemannSetup {
    pub fn new(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64, params: ModelParams) -> Result<Self> {
        Ok(Self {
            left: State::moving(rho_l, u_l)?,
            right: State::moving(rho_r, u_r)?,
            params,
        })
    }

    /// Diagnostic flag: the model's traffic interpretation assumes
    /// u₊ ≥ 0.  The solver computes for any real velocities but reports
    /// data outside that assumption.
    pub fn negative_right_velocity(&self) -> bool {
        self.right.vel < 0.0
    }

    /// Speed of the slow asymptote S through the left state,
    /// u₋ - A/ρ₋.  Separates two-contact data from delta-shock data.
    pub fn s_curve_speed(&self) -> f64 {
        self.left.vel - self.params.pressure_coeff / self.left.rho
    }
}

/// Chaplygin pressure P = -A/ρ.
pub fn pressure(rho: f64, params: &ModelParams) -> Result<f64> {
    params.pressure(rho)
}

/// Characteristic speeds (λ₁, λ₂) of a state at time t.
///
/// λ₂ is defined first and λ₁ = λ₂ - A/ρ, so the gap λ₂ - λ₁ equals the
/// rounded A/ρ; the fields coincide exactly when A = 0.
pub fn eigenvalues(state: &State, t: f64, params: &ModelParams) -> Result<(f64, f64)> {
    check_density(state.rho)?;
    let lambda2 = state.fixed_velocity(t, params);
    let lambda1 = lambda2 - params.pressure_coeff / state.rho;
    Ok((lambda1, lambda2))
}

/// Right eigenvector of the i-th field (i ∈ {1, 2}) in (ρ, v) variables:
/// r₁ = (ρ, -A/ρ), r₂ = (1, 0).  Both satisfy ∇λᵢ·rᵢ = 0.
pub fn right_eigenvector(field: usize, rho: f64, params: &ModelParams) -> Result<(f64, f64)> {
    check_density(rho)?;
    match field {
        1 => Ok((rho, -params.pressure_coeff / rho)),
        2 => Ok((1.0, 0.0)),
        _ => Err(Error::InvalidArgument(format!(
            "characteristic field index must be 1 or 2, got {field}"
        ))),
    }
}

/// Exact frame change u = v + βt (and its inverse).  Converting to the
/// frame a state is already in returns it unchanged.
pub fn frame_convert(state: &State, t: f64, params: &ModelParams, target: Frame) -> State {
    if state.frame == target {
        return *state;
    }
    let vel = match target {
        Frame::Fixed => state.vel + params.friction * t,
        Frame::Moving => state.vel - params.friction * t,
    };
    State {
        rho: state.rho,
        vel,
        frame: target,
    }
}

pub(crate) fn check_density(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho <= DENSITY_FLOOR {
        return Err(Error::NonPositiveDensity(rho));
    }
    Ok(())
}
