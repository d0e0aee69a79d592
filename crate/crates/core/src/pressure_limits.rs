//! Vanishing-pressure sweeps.
//!
//! For u₊ < u₋ the thresholds A₀ = ρ₋(u₋-u₊) < A₁ = ρ₋u₋ organize the
//! limit behaviour:
//!
//! * A ↓ A₀ (from region II): the two contacts coalesce, the
//!   intermediate density ρ* = Aρ₋/(A-A₀) blows up while the enclosed
//!   mass ρ*(x₂-x₁) = A·t stays finite, and the limit objects
//!   w(t) = A₀t, u_δ = u₊ + βt, x(t) = u₊t + βt²/2 coincide with the
//!   delta-shock solution evaluated directly at A = A₀.
//! * A ↓ 0 (inside region III): the delta shock converges to the
//!   sticky-particle delta of the transport equations, with
//!   σ = (√ρ₋u₋ + √ρ₊u₊)/(√ρ₋+√ρ₊) and weight slope √(ρ₊ρ₋)(u₋-u₊);
//!   both deviations are O(A).
//! * For u₋ < u₊, A ↓ 0 empties the intermediate wedge (ρ* → 0) and the
//!   contact speeds converge to the vacuum-fan edges u₋ and u₊.
//!
//! Limits are asserted against the closed forms, never extrapolated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_riemann::{solve, solve_transport, TransportPattern, WavePattern};
use crate::model::{ModelParams, RiemannSetup};
use crate::phase_plane::{thresholds, Region};
use crate::weak_residual::least_squares_slope;

/// Per-coefficient record of a sweep step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub a: f64,
    pub region: Region,
    pub rho_star: Option<f64>,
    pub sigma1_0: Option<f64>,
    pub sigma2_0: Option<f64>,
    pub v_delta: Option<f64>,
    pub w0: Option<f64>,
}

/// Per-coefficient deviations from the analytic limit targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepErrors {
    pub a: f64,
    /// |v_δ(A) - limit| for delta sweeps.
    pub err_v_delta: Option<f64>,
    /// |w₀(A) - limit| for delta sweeps.
    pub err_w0: Option<f64>,
    /// |σ₁(0) - limit|.
    pub err_sigma1: Option<f64>,
    /// |σ₂(0) - limit|.
    pub err_sigma2: Option<f64>,
    /// ρ*(A) itself for vacuum sweeps (its limit is 0).
    pub err_rho_star: Option<f64>,
    /// Relative defect of ρ*(x₂(t)-x₁(t)) = A·t at t = 1.
    pub err_mass_identity: Option<f64>,
    /// Relative defect of ∫ρ*(v*+βt)dx = (u₊+βt)·A·t at t = 1.
    pub err_momentum_identity: Option<f64>,
}

/// Analytic limit values a sweep is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitTargets {
    pub v_delta: Option<f64>,
    pub w0: Option<f64>,
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub rho_star: Option<f64>,
}

/// Delta solution computed directly at A = A₀, compared against the
/// assembled limit objects (w₀ → A₀, v_δ → u₊).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaAtA0 {
    pub v_delta: f64,
    pub w0: f64,
    pub err_v_delta: f64,
    pub err_w0: f64,
}

/// Empirical log-log convergence slopes of the recorded deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub v_delta: Option<f64>,
    pub w0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSweepReport {
    pub a_values: Vec<f64>,
    pub records: Vec<SweepRecord>,
    pub limit_targets: LimitTargets,
    pub observed_errors: Vec<SweepErrors>,
    /// Present for the A ↓ A₀ sweep.
    pub delta_at_a0: Option<DeltaAtA0>,
    /// Present for the A ↓ 0 delta sweep.
    pub slopes: Option<SlopeFit>,
}

/// Geometric sequence A₀ + (A₁-A₀)·2⁻ʲ, j = 1..n, approaching A₀.
pub fn geometric_sequence_to_a0(a0: f64, a1: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|j| a0 + (a1 - a0) * 0.5_f64.powi(j as i32))
        .collect()
}

/// Geometric sequence A₀·2⁻ʲ, j = 1..n, approaching zero.
pub fn geometric_sequence_to_zero(a0: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|j| a0 * 0.5_f64.powi(j as i32)).collect()
}

fn relative(defect: f64, reference: f64) -> f64 {
    defect.abs() / (1.0 + reference.abs())
}

/// Sweep A ↓ A₀ through region II and verify the concentration limits.
///
/// Speed convergence is recorded through the t = 0 coefficients; the
/// frictional drift βt shifts both σ₁(t) and σ₂(t) equally, so their
/// difference (and every recorded error) is the same at any probe time.
/// The momentum identity is evaluated at the positive probe t = 1 where
/// the drift does enter.
pub fn sweep_to_a0(setup: &RiemannSetup, a_values: &[f64]) -> Result<LimitSweepReport> {
    let th = thresholds(setup)?;
    if a_values.is_empty() {
        return Err(Error::InvalidArgument("empty sweep sequence".into()));
    }
    for &a in a_values {
        if !(a > th.a0 && a < th.a1) {
            return Err(Error::InvalidArgument(format!(
                "sweep value A = {a} outside (A0, A1) = ({}, {})",
                th.a0, th.a1
            )));
        }
    }
    let u_r = setup.right.vel;
    let beta = setup.params.friction;
    let mut records = Vec::with_capacity(a_values.len());
    let mut errors = Vec::with_capacity(a_values.len());
    for &a in a_values {
        let s = with_pressure(setup, a)?;
        let sol = solve(&s)?;
        let p = match sol.pattern {
            WavePattern::TwoContacts(p) => p,
            ref other => {
                return Err(Error::Inconsistency(format!(
                    "expected two contacts inside (A0, A1), got {other:?}"
                )))
            }
        };
        records.push(SweepRecord {
            a,
            region: sol.region,
            rho_star: Some(p.intermediate.rho),
            sigma1_0: Some(p.j1_speed0),
            sigma2_0: Some(p.j2_speed0),
            v_delta: None,
            w0: None,
        });
        // mass between the contacts at t = 1 against A·t, and its
        // momentum-type counterpart against (u₊+βt)·A·t
        let mass = p.intermediate.rho * p.contact_gap(1.0);
        let momentum = p.intermediate.rho * (p.intermediate.vel + beta) * p.contact_gap(1.0);
        errors.push(SweepErrors {
            a,
            err_v_delta: None,
            err_w0: None,
            err_sigma1: Some((p.j1_speed0 - u_r).abs()),
            err_sigma2: Some((p.j2_speed0 - u_r).abs()),
            err_rho_star: None,
            err_mass_identity: Some((mass - a).abs() / a),
            err_momentum_identity: Some(relative(momentum - (u_r + beta) * a, (u_r + beta) * a)),
        });
    }
    // the assembled limit objects against the delta solution at A = A0
    let at_a0 = solve(&with_pressure(setup, th.a0)?)?;
    let delta_at_a0 = match at_a0.pattern {
        WavePattern::DeltaShock(p) => DeltaAtA0 {
            v_delta: p.v_delta,
            w0: p.w0,
            err_v_delta: (p.v_delta - u_r).abs() / (1.0 + u_r.abs()),
            err_w0: (p.w0 - th.a0).abs() / th.a0,
        },
        ref other => {
            return Err(Error::Inconsistency(format!(
                "expected a delta shock at A = A0, got {other:?}"
            )))
        }
    };
    Ok(LimitSweepReport {
        a_values: a_values.to_vec(),
        records,
        limit_targets: LimitTargets {
            v_delta: Some(u_r),
            w0: Some(th.a0),
            sigma1: Some(u_r),
            sigma2: Some(u_r),
            rho_star: None,
        },
        observed_errors: errors,
        delta_at_a0: Some(delta_at_a0),
        slopes: None,
    })
}

/// Sweep A ↓ 0 through region III toward the transport-equation delta.
pub fn sweep_to_zero(setup: &RiemannSetup, a_values: &[f64]) -> Result<LimitSweepReport> {
    let th = thresholds(setup)?;
    if a_values.is_empty() {
        return Err(Error::InvalidArgument("empty sweep sequence".into()));
    }
    for &a in a_values {
        if !(a > 0.0 && a <= th.a0) {
            return Err(Error::InvalidArgument(format!(
                "sweep value A = {a} outside (0, A0] with A0 = {}",
                th.a0
            )));
        }
    }
    let transport = solve_transport(&with_pressure(setup, 0.0)?)?;
    let (sigma_target, w_target) = match transport {
        TransportPattern::TransportDelta { sigma0, w_slope } => (sigma0, w_slope),
        other => {
            return Err(Error::Inconsistency(format!(
                "u_r < u_l should give a transport delta, got {other:?}"
            )))
        }
    };
    let mut records = Vec::with_capacity(a_values.len());
    let mut errors = Vec::with_capacity(a_values.len());
    for &a in a_values {
        let sol = solve(&with_pressure(setup, a)?)?;
        let p = match sol.pattern {
            WavePattern::DeltaShock(p) => p,
            ref other => {
                return Err(Error::Inconsistency(format!(
                    "expected a delta shock for A <= A0, got {other:?}"
                )))
            }
        };
        records.push(SweepRecord {
            a,
            region: sol.region,
            rho_star: None,
            sigma1_0: None,
            sigma2_0: None,
            v_delta: Some(p.v_delta),
            w0: Some(p.w0),
        });
        errors.push(SweepErrors {
            a,
            err_v_delta: Some((p.v_delta - sigma_target).abs()),
            err_w0: Some((p.w0 - w_target).abs()),
            err_sigma1: None,
            err_sigma2: None,
            err_rho_star: None,
            err_mass_identity: None,
            err_momentum_identity: None,
        });
    }
    let slope_of = |pick: fn(&SweepErrors) -> Option<f64>, scale: f64| -> Option<f64> {
        let pts: Vec<(f64, f64)> = errors
            .iter()
            .filter_map(|e| pick(e).map(|v| (e.a, v)))
            .filter(|&(_, v)| v > 1e-14 * scale)
            .map(|(a, v)| (a.ln(), v.ln()))
            .collect();
        if pts.len() >= 3 {
            Some(least_squares_slope(&pts))
        } else {
            None
        }
    };
    let slopes = SlopeFit {
        v_delta: slope_of(|e| e.err_v_delta, 1.0 + sigma_target.abs()),
        w0: slope_of(|e| e.err_w0, 1.0 + w_target.abs()),
    };
    Ok(LimitSweepReport {
        a_values: a_values.to_vec(),
        records,
        limit_targets: LimitTargets {
            v_delta: Some(sigma_target),
            w0: Some(w_target),
            sigma1: None,
            sigma2: None,
            rho_star: None,
        },
        observed_errors: errors,
        delta_at_a0: None,
        slopes: Some(slopes),
    })
}

/// Sweep A ↓ 0 for u₋ ≤ u₊: the intermediate density empties and the
/// contact speeds converge to the vacuum-fan edges (for u₋ = u₊ the
/// pattern is a single contact at every A).
pub fn vacuum_limit(setup: &RiemannSetup, a_values: &[f64]) -> Result<LimitSweepReport> {
    let u_l = setup.left.vel;
    let u_r = setup.right.vel;
    if u_l > u_r {
        return Err(Error::NotApplicable(format!(
            "vacuum sweep requires u_l <= u_r, got u_l = {u_l}, u_r = {u_r}"
        )));
    }
    if a_values.is_empty() {
        return Err(Error::InvalidArgument("empty sweep sequence".into()));
    }
    let mut records = Vec::with_capacity(a_values.len());
    let mut errors = Vec::with_capacity(a_values.len());
    for &a in a_values {
        if a.is_nan() || a <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sweep value A = {a} must be positive"
            )));
        }
        let sol = solve(&with_pressure(setup, a)?)?;
        let p = match sol.pattern {
            WavePattern::TwoContacts(p) => p,
            ref other => {
                return Err(Error::Inconsistency(format!(
                    "expected two contacts for u_l <= u_r, got {other:?}"
                )))
            }
        };
        records.push(SweepRecord {
            a,
            region: sol.region,
            rho_star: Some(p.intermediate.rho),
            sigma1_0: Some(p.j1_speed0),
            sigma2_0: Some(p.j2_speed0),
            v_delta: None,
            w0: None,
        });
        errors.push(SweepErrors {
            a,
            err_v_delta: None,
            err_w0: None,
            err_sigma1: Some((p.j1_speed0 - u_l).abs()),
            err_sigma2: Some((p.j2_speed0 - u_r).abs()),
            err_rho_star: Some(if u_l < u_r { p.intermediate.rho } else { 0.0 }),
            err_mass_identity: None,
            err_momentum_identity: None,
        });
    }
    Ok(LimitSweepReport {
        a_values: a_values.to_vec(),
        records,
        limit_targets: LimitTargets {
            v_delta: None,
            w0: None,
            sigma1: Some(u_l),
            sigma2: Some(u_r),
            rho_star: Some(0.0),
        },
        observed_errors: errors,
        delta_at_a0: None,
        slopes: None,
    })
}

fn with_pressure(setup: &RiemannSetup, a: f64) -> Result<RiemannSetup> {
    Ok(RiemannSetup {
        params: ModelParams::new(a, setup.params.friction)?,
        ..*setup
    })
}
