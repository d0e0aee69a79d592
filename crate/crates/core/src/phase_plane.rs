//! Classification of Riemann data in the (ρ, v) phase plane.
//!
//! For a left state (ρ₋, u₋) the 2-contact curve J₂ is the horizontal
//! line v = u₋ and the 1-contact curve J₁ through it satisfies
//! v - A/ρ = u₋ - A/ρ₋, with asymptotes ρ = 0 and S: v = u₋ - A/ρ₋.
//! The curves split the half plane ρ > 0 into
//!
//! ```text
//! I   : u₊ ≥ u₋            (two contacts; J₂ alone on the equality)
//! II  : S < u₊ < u₋        (two contacts)
//! III : u₊ ≤ S             (delta shock; S itself is the boundary case)
//! ```
//!
//! For u₊ < u₋ the pressure thresholds A₀ = ρ₋(u₋-u₊) and A₁ = ρ₋u₋
//! locate region II exactly as A₀ < A < A₁.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_density, ModelParams, RiemannSetup, State};

/// Phase-plane location of the right state relative to the left one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// u₊ > u₋: two contacts with a rarefied intermediate state.
    #[serde(rename = "I")]
    I,
    /// u₊ = u₋: the right state sits on J₂; J₁ carries no jump.
    #[serde(rename = "J2")]
    OnJ2,
    /// u₋ - A/ρ₋ < u₊ < u₋: two contacts with a compressed intermediate
    /// state.
    #[serde(rename = "II")]
    II,
    /// u₊ = u₋ - A/ρ₋: boundary-S delta shock.
    #[serde(rename = "S")]
    BoundaryS,
    /// u₊ < u₋ - A/ρ₋: interior delta shock.
    #[serde(rename = "III")]
    IIIInterior,
}

impl Region {
    /// True for the delta-shock regimes (the closed region III).
    pub fn is_delta(&self) -> bool {
        matches!(self, Region::BoundaryS | Region::IIIInterior)
    }

    /// Short label used in reports: I, II, III, S, J2.
    pub fn label(&self) -> &'static str {
        match self {
            Region::I => "I",
            Region::OnJ2 => "J2",
            Region::II => "II",
            Region::BoundaryS => "S",
            Region::IIIInterior => "III",
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Classify with exact floating-point comparisons (tolerance 0).
pub fn classify(setup: &RiemannSetup) -> Region {
    classify_with_tol(setup, 0.0)
}

/// Classify with an absolute velocity tolerance for boundary detection.
/// Sweep drivers pass a small fuzz; analysis uses the exact default.
pub fn classify_with_tol(setup: &RiemannSetup, tol: f64) -> Region {
    let u_l = setup.left.vel;
    let u_r = setup.right.vel;
    if (u_r - u_l).abs() <= tol {
        return Region::OnJ2;
    }
    if u_r > u_l {
        return Region::I;
    }
    let s = setup.s_curve_speed();
    if (u_r - s).abs() <= tol {
        Region::BoundaryS
    } else if u_r > s {
        Region::II
    } else {
        Region::IIIInterior
    }
}

/// Velocity on the 1-contact curve J₁ through `left` at density ρ:
/// v(ρ) = u₋ - A/ρ₋ + A/ρ.
pub fn j1_curve(rho: f64, left: &State, params: &ModelParams) -> Result<f64> {
    if params.is_transport_limit() {
        return Err(Error::TransportLimit);
    }
    check_density(rho)?;
    check_density(left.rho)?;
    let a = params.pressure_coeff;
    Ok(left.vel - a / left.rho + a / rho)
}

/// Pressure thresholds of the vanishing-pressure analysis for u₊ < u₋.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// A₀ = ρ₋(u₋ - u₊): region III (closed) for A ≤ A₀.
    pub a0: f64,
    /// A₁ = ρ₋u₋: region II for A₀ < A < A₁.
    pub a1: f64,
    /// A₀ ≥ A₁ (u₊ ≤ 0): region II is empty and the interval collapses.
    pub degenerate: bool,
}

/// Compute (A₀, A₁) for a setup with u₊ < u₋ and u₋ > 0.
pub fn thresholds(setup: &RiemannSetup) -> Result<Thresholds> {
    let u_l = setup.left.vel;
    let u_r = setup.right.vel;
    if u_r >= u_l {
        return Err(Error::NotApplicable(format!(
            "thresholds require u_r < u_l, got u_l = {u_l}, u_r = {u_r}"
        )));
    }
    if u_l <= 0.0 {
        return Err(Error::NotApplicable(format!(
            "thresholds require u_l > 0 so that A1 > 0, got u_l = {u_l}"
        )));
    }
    let a0 = setup.left.rho * (u_l - u_r);
    let a1 = setup.left.rho * u_l;
    Ok(Thresholds {
        a0,
        a1,
        degenerate: a0 >= a1,
    })
}
