//! Closed-form Riemann solutions.
//!
//! Three wave patterns occur.  For u₊ > u₋ - A/ρ₋ (regions I and II) the
//! solution is a pair of contact discontinuities J₁, J₂ enclosing the
//! intermediate state
//!
//! ```text
//! v* = u₊,    A/ρ* = u₊ - u₋ + A/ρ₋,
//! ```
//!
//! travelling on the parabolas x₁(t) = (u₋-A/ρ₋)t + βt²/2 and
//! x₂(t) = u₊t + βt²/2.  For u₊ ≤ u₋ - A/ρ₋ the characteristics overlap
//! and the solution is a delta shock carrying weight w(t) = w₀t along
//! x(t) = v_δ t + βt²/2, where v_δ is the over-compressive root of the
//! jump quadratic
//!
//! ```text
//! (ρ₊-ρ₋)v_δ² - 2(ρ₊u₊-ρ₋u₋)v_δ + (ρ₊u₊²-ρ₋u₋²) - A(u₊-u₋) = 0
//! ```
//!
//! and w₀ = √(ρ₊ρ₋(u₊-u₋)((u₊-u₋) - A/ρ₊ + A/ρ₋)).  At A = 0 the system
//! is the transport model: a vacuum fan, a single contact, or a
//! sticky-particle delta shock depending on the sign of u₋ - u₊.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{frame_convert, Frame, ModelParams, RiemannSetup, State};
use crate::phase_plane::{classify, Region};

/// Relative density gap below which the equal-density branch of the
/// delta speed is used; the general formula is 0/0 at equality.
pub const EQUAL_DENSITY_REL: f64 = 1e-9;

/// Roundoff allowance when clamping the strength radicand at the
/// region-III boundary, where its exact value is A².
const RADICAND_CLAMP_REL: f64 = 1e-12;

/// Two contact discontinuities with an intermediate constant state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoContactsPattern {
    /// Intermediate state (ρ*, v*) in the moving frame.
    pub intermediate: State,
    /// J₁ speed at t = 0: u₋ - A/ρ₋.
    pub j1_speed0: f64,
    /// J₂ speed at t = 0: u₊.
    pub j2_speed0: f64,
    pub params: ModelParams,
}

impl TwoContactsPattern {
    pub fn x1(&self, t: f64) -> f64 {
        self.j1_speed0 * t + 0.5 * self.params.friction * t * t
    }

    pub fn x2(&self, t: f64) -> f64 {
        self.j2_speed0 * t + 0.5 * self.params.friction * t * t
    }

    pub fn sigma1(&self, t: f64) -> f64 {
        self.j1_speed0 + self.params.friction * t
    }

    pub fn sigma2(&self, t: f64) -> f64 {
        self.j2_speed0 + self.params.friction * t
    }

    /// Width of the intermediate wedge, x₂(t) - x₁(t); the friction
    /// terms cancel algebraically so the difference of the t = 0 speeds
    /// is used directly.
    pub fn contact_gap(&self, t: f64) -> f64 {
        (self.j2_speed0 - self.j1_speed0) * t
    }
}

/// A delta shock on a parabolic path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaShockPattern {
    /// Moving-frame delta velocity; the fixed-frame assignment is
    /// u_δ(t) = v_δ + βt.
    pub v_delta: f64,
    /// Strength slope: w(t) = w₀t.
    pub w0: f64,
    pub params: ModelParams,
    /// Over-compressivity margins (v_δ - u₊, (u₋ - A/ρ₋) - v_δ); both
    /// nonnegative, strictly positive in the interior of region III.
    pub entropy_margins: (f64, f64),
}

/// Kinematics of the delta shock at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaPathPoint {
    pub x: f64,
    pub sigma: f64,
    pub w: f64,
    pub u_delta: f64,
}

impl DeltaShockPattern {
    pub fn x(&self, t: f64) -> f64 {
        self.v_delta * t + 0.5 * self.params.friction * t * t
    }

    pub fn sigma(&self, t: f64) -> f64 {
        self.v_delta + self.params.friction * t
    }

    pub fn weight(&self, t: f64) -> f64 {
        self.w0 * t
    }

    pub fn u_delta(&self, t: f64) -> f64 {
        self.v_delta + self.params.friction * t
    }

    /// Position, speed, weight and velocity assignment at t ≥ 0.
    pub fn path_point(&self, t: f64) -> Result<DeltaPathPoint> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(DeltaPathPoint {
            x: self.x(t),
            sigma: self.sigma(t),
            w: self.weight(t),
            u_delta: self.u_delta(t),
        })
    }

    /// Arclength density of the weighted measure, p(t) = w(t)/√(1+x'(t)²).
    pub fn arclength_weight(&self, t: f64) -> f64 {
        let slope = self.sigma(t);
        self.weight(t) / (1.0 + slope * slope).sqrt()
    }

    /// For β < 0 the path turns around at t = -v_δ/β; None otherwise.
    pub fn turning_time(&self) -> Option<f64> {
        let beta = self.params.friction;
        if beta < 0.0 && self.v_delta > 0.0 {
            Some(-self.v_delta / beta)
        } else {
            None
        }
    }

    /// Residual of the jump quadratic at the stored v_δ, and the sum of
    /// the magnitudes of its terms (for relative comparisons).
    pub fn quadratic_residual(&self, setup: &RiemannSetup) -> (f64, f64) {
        let (rl, ul) = (setup.left.rho, setup.left.vel);
        let (rr, ur) = (setup.right.rho, setup.right.vel);
        let a = self.params.pressure_coeff;
        let v = self.v_delta;
        let t1 = (rr - rl) * v * v;
        let t2 = -2.0 * (rr * ur - rl * ul) * v;
        let t3 = rr * ur * ur - rl * ul * ul;
        let t4 = -a * (ur - ul);
        let residual = t1 + t2 + t3 + t4;
        let scale = t1.abs() + t2.abs() + t3.abs() + t4.abs();
        (residual, scale)
    }
}

/// Riemann patterns of the transport (A = 0) limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransportPattern {
    /// u₋ < u₊: vacuum fan between the parabolas with slopes u₋ and u₊.
    Vacuum,
    /// u₋ = u₊: one contact carrying the density jump.
    SingleContact,
    /// u₋ > u₊: sticky-particle delta shock.
    TransportDelta {
        /// Moving-frame speed (√ρ₋u₋ + √ρ₊u₊)/(√ρ₋ + √ρ₊), the
        /// arithmetic mean at equal densities.
        sigma0: f64,
        /// Weight slope √(ρ₊ρ₋)(u₋ - u₊); w(t) = w_slope·t.
        w_slope: f64,
    },
}

/// Wave structure of a solved Riemann problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WavePattern {
    TwoContacts(TwoContactsPattern),
    DeltaShock(DeltaShockPattern),
    Transport(TransportPattern),
}

/// A solved Riemann problem: the data, its phase-plane region and the
/// wave pattern.  Immutable and freely shareable across threads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSolution {
    pub setup: RiemannSetup,
    pub region: Region,
    pub pattern: WavePattern,
}

/// Pointwise value of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplePoint {
    /// A smooth constant state; the frame tag records which velocity is
    /// carried.
    Smooth(State),
    /// Exactly on the delta path: weight w(t) and velocity assignment.
    OnDelta { weight: f64, u_delta: f64 },
    /// Inside a transport-limit vacuum fan.
    InVacuum,
}

impl WaveSolution {
    /// Linear coefficients of the wave paths x(t) = c·t + βt²/2, ordered
    /// left to right; labels are "J1"/"J2"/"delta"/"vacuum_l"/"vacuum_r".
    pub fn wave_path_coeffs(&self) -> Vec<(&'static str, f64)> {
        match &self.pattern {
            WavePattern::TwoContacts(p) => vec![("J1", p.j1_speed0), ("J2", p.j2_speed0)],
            WavePattern::DeltaShock(p) => vec![("delta", p.v_delta)],
            WavePattern::Transport(t) => match t {
                TransportPattern::Vacuum => vec![
                    ("vacuum_l", self.setup.left.vel),
                    ("vacuum_r", self.setup.right.vel),
                ],
                TransportPattern::SingleContact => vec![("J2", self.setup.left.vel)],
                TransportPattern::TransportDelta { sigma0, .. } => vec![("delta", *sigma0)],
            },
        }
    }

    /// Sample in the fixed frame (velocities are u = v + βt).
    pub fn sample(&self, x: f64, t: f64) -> Result<SamplePoint> {
        self.sample_in_frame(x, t, Frame::Fixed)
    }

    /// Sample in either frame.  Positions are compared against the exact
    /// parabolic wave paths; a point exactly on a contact returns the
    /// right-limit state, a point exactly on a delta path returns the
    /// delta data.
    pub fn sample_in_frame(&self, x: f64, t: f64, frame: Frame) -> Result<SamplePoint> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        let params = &self.setup.params;
        let beta_half_t2 = 0.5 * params.friction * t * t;
        let path = |c: f64| c * t + beta_half_t2;
        let smooth = |s: &State| SamplePoint::Smooth(frame_convert(s, t, params, frame));
        let point = match &self.pattern {
            WavePattern::TwoContacts(p) => {
                if x < path(p.j1_speed0) {
                    smooth(&self.setup.left)
                } else if x < path(p.j2_speed0) {
                    smooth(&p.intermediate)
                } else {
                    smooth(&self.setup.right)
                }
            }
            WavePattern::DeltaShock(p) => {
                let xd = path(p.v_delta);
                if x < xd {
                    smooth(&self.setup.left)
                } else if x == xd {
                    SamplePoint::OnDelta {
                        weight: p.weight(t),
                        u_delta: p.u_delta(t),
                    }
                } else {
                    smooth(&self.setup.right)
                }
            }
            WavePattern::Transport(tp) => match tp {
                TransportPattern::Vacuum => {
                    if x < path(self.setup.left.vel) {
                        smooth(&self.setup.left)
                    } else if x < path(self.setup.right.vel) {
                        SamplePoint::InVacuum
                    } else {
                        smooth(&self.setup.right)
                    }
                }
                TransportPattern::SingleContact => {
                    if x < path(self.setup.left.vel) {
                        smooth(&self.setup.left)
                    } else {
                        smooth(&self.setup.right)
                    }
                }
                TransportPattern::TransportDelta { sigma0, w_slope } => {
                    let xd = path(*sigma0);
                    if x < xd {
                        smooth(&self.setup.left)
                    } else if x == xd {
                        SamplePoint::OnDelta {
                            weight: w_slope * t,
                            u_delta: sigma0 + params.friction * t,
                        }
                    } else {
                        smooth(&self.setup.right)
                    }
                }
            },
        };
        Ok(point)
    }
}

/// Construct the exact Riemann solution for the given data.
pub fn solve(setup: &RiemannSetup) -> Result<WaveSolution> {
    let region = classify(setup);
    if setup.params.is_transport_limit() {
        let pattern = WavePattern::Transport(solve_transport(setup)?);
        return Ok(WaveSolution {
            setup: *setup,
            region,
            pattern,
        });
    }
    let pattern = if region.is_delta() {
        WavePattern::DeltaShock(solve_delta(setup)?)
    } else {
        WavePattern::TwoContacts(solve_two_contacts(setup, region)?)
    };
    Ok(WaveSolution {
        setup: *setup,
        region,
        pattern,
    })
}

fn solve_two_contacts(setup: &RiemannSetup, region: Region) -> Result<TwoContactsPattern> {
    let a = setup.params.pressure_coeff;
    let u_r = setup.right.vel;
    let j1_speed0 = setup.s_curve_speed();
    // rho* from the gap of the t = 0 speeds keeps rho*·(x2-x1) = A·t
    // consistent to a couple of ulps for every admissible A.
    let rho_star = if region == Region::OnJ2 {
        setup.left.rho
    } else {
        let gap = u_r - j1_speed0;
        let rho_star = a / gap;
        if !rho_star.is_finite() || rho_star <= 0.0 {
            return Err(Error::Inconsistency(format!(
                "intermediate density {rho_star} from speed gap {gap}"
            )));
        }
        rho_star
    };
    Ok(TwoContactsPattern {
        intermediate: State::moving(rho_star, u_r)?,
        j1_speed0,
        j2_speed0: u_r,
        params: setup.params,
    })
}

fn solve_delta(setup: &RiemannSetup) -> Result<DeltaShockPattern> {
    let (rl, ul) = (setup.left.rho, setup.left.vel);
    let (rr, ur) = (setup.right.rho, setup.right.vel);
    let a = setup.params.pressure_coeff;
    let w0 = delta_strength_slope(setup)?;
    let v_delta = if (rr - rl).abs() > EQUAL_DENSITY_REL * rr.max(rl) {
        (rr * ur - rl * ul + w0) / (rr - rl)
    } else {
        0.5 * (ur + ul - a / rl)
    };
    if !v_delta.is_finite() {
        return Err(Error::Inconsistency(format!(
            "non-finite delta velocity for data ({rl},{ul})/({rr},{ur}), A = {a}"
        )));
    }
    let s = setup.s_curve_speed();
    Ok(DeltaShockPattern {
        v_delta,
        w0,
        params: setup.params,
        entropy_margins: (v_delta - ur, s - v_delta),
    })
}

/// Strength slope w₀ from the jump data.  The radicand equals A² on the
/// boundary S and exceeds it in the interior of region III; small
/// negative roundoff there is clamped to zero, anything worse is an
/// internal error.
fn delta_strength_slope(setup: &RiemannSetup) -> Result<f64> {
    let (rl, ul) = (setup.left.rho, setup.left.vel);
    let (rr, ur) = (setup.right.rho, setup.right.vel);
    let a = setup.params.pressure_coeff;
    let du = ur - ul;
    let radicand = rr * rl * du * (du - (a / rr - a / rl));
    if radicand >= 0.0 {
        return Ok(radicand.sqrt());
    }
    let scale = rr * rl * (du.abs() + a / rr + a / rl).powi(2);
    if radicand >= -RADICAND_CLAMP_REL * scale {
        Ok(0.0)
    } else {
        Err(Error::Inconsistency(format!(
            "negative strength radicand {radicand} (scale {scale}) outside roundoff"
        )))
    }
}

/// Riemann solution of the transport limit A = 0 with the same friction.
pub fn solve_transport(setup: &RiemannSetup) -> Result<TransportPattern> {
    if !setup.params.is_transport_limit() {
        return Err(Error::NotApplicable(format!(
            "transport solution requires A = 0, got A = {}",
            setup.params.pressure_coeff
        )));
    }
    let (rl, ul) = (setup.left.rho, setup.left.vel);
    let (rr, ur) = (setup.right.rho, setup.right.vel);
    Ok(if ul < ur {
        TransportPattern::Vacuum
    } else if ul == ur {
        TransportPattern::SingleContact
    } else if rl == rr {
        TransportPattern::TransportDelta {
            sigma0: 0.5 * (ur + ul),
            w_slope: rr * (ul - ur),
        }
    } else {
        let (sl, sr) = (rl.sqrt(), rr.sqrt());
        TransportPattern::TransportDelta {
            sigma0: (sl * ul + sr * ur) / (sl + sr),
            w_slope: (rr * rl).sqrt() * (ul - ur),
        }
    })
}

/// Over-compressivity report for a delta-shock solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// (v_δ - u₊, (u₋ - A/ρ₋) - v_δ).
    pub margins: (f64, f64),
    /// Margins nonnegative up to roundoff; a clear negative means a
    /// solver bug.
    pub consistent: bool,
    /// Full speed ordering λ₁₊ ≤ λ₂₊ ≤ σ ≤ λ₁₋ ≤ λ₂₋ at t = 0 (weak
    /// form; equalities occur only on the boundary S).
    pub ordering_ok: bool,
    /// Strict version of the ordering; holds in the interior of III.
    pub ordering_strict: bool,
}

/// Check the over-compressive entropy condition of a delta solution.
pub fn entropy_check(pattern: &DeltaShockPattern, setup: &RiemannSetup) -> EntropyReport {
    let (m_left, m_right) = pattern.entropy_margins;
    let a = setup.params.pressure_coeff;
    let scale = setup.left.vel.abs()
        + setup.right.vel.abs()
        + a / setup.left.rho
        + a / setup.right.rho
        + pattern.v_delta.abs();
    let consistent = m_left >= -1e-12 * scale && m_right >= -1e-12 * scale;
    let sigma0 = pattern.v_delta;
    let l1p = setup.right.vel - a / setup.right.rho;
    let l2p = setup.right.vel;
    let l1m = setup.left.vel - a / setup.left.rho;
    let l2m = setup.left.vel;
    let ordering_ok = l1p <= l2p && l2p <= sigma0 && sigma0 <= l1m && l1m <= l2m;
    let ordering_strict = l1p < l2p && l2p < sigma0 && sigma0 < l1m && l1m < l2m;
    EntropyReport {
        margins: pattern.entropy_margins,
        consistent,
        ordering_ok,
        ordering_strict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;

    fn setup(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64, a: f64, beta: f64) -> RiemannSetup {
        RiemannSetup::new(rho_l, u_l, rho_r, u_r, ModelParams::new(a, beta).unwrap()).unwrap()
    }

    fn delta(sol: &WaveSolution) -> DeltaShockPattern {
        match sol.pattern {
            WavePattern::DeltaShock(p) => p,
            ref other => panic!("expected delta shock, got {other:?}"),
        }
    }

    fn two_contacts(sol: &WaveSolution) -> TwoContactsPattern {
        match sol.pattern {
            WavePattern::TwoContacts(p) => p,
            ref other => panic!("expected two contacts, got {other:?}"),
        }
    }

    #[test]
    fn two_contact_intermediate_state() {
        for beta in [-2.0, 0.0, 2.0] {
            let sol = solve(&setup(1.0, 2.0, 1.0, 3.0, 1.0, beta)).unwrap();
            assert_eq!(sol.region, Region::I);
            let p = two_contacts(&sol);
            assert_eq!(p.intermediate.rho, 0.5);
            assert_eq!(p.intermediate.vel, 3.0);
            assert_eq!(p.j1_speed0, 1.0);
            assert_eq!(p.j2_speed0, 3.0);
        }
    }

    #[test]
    fn delta_shock_hand_values() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
        assert_eq!(sol.region, Region::IIIInterior);
        let p = delta(&sol);
        assert_eq!(p.w0, 6.0);
        assert_eq!(p.v_delta, 2.0);
        assert_eq!(p.entropy_margins, (2.0, 1.5));
        let (res, scale) = p.quadratic_residual(&sol.setup);
        assert!(res.abs() <= 1e-12 * scale);
    }

    #[test]
    fn delta_shock_equal_densities() {
        let sol = solve(&setup(1.0, 3.0, 1.0, 0.0, 1.0, 0.0)).unwrap();
        let p = delta(&sol);
        assert_eq!(p.v_delta, 1.0);
        assert_eq!(p.w0, 3.0);
        assert_eq!(p.weight(2.0), 6.0);
        assert_eq!(p.entropy_margins, (1.0, 1.0));
    }

    #[test]
    fn boundary_s_strength_equals_pressure_coefficient() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 3.5, 1.0, 0.0)).unwrap();
        assert_eq!(sol.region, Region::BoundaryS);
        let p = delta(&sol);
        assert_eq!(p.w0, 1.0);
        assert_eq!(p.v_delta, 3.5);
        assert_eq!(p.entropy_margins.1, 0.0);
        let report = entropy_check(&p, &sol.setup);
        assert!(report.consistent);
        assert!(report.ordering_ok);
        assert!(!report.ordering_strict);
    }

    #[test]
    fn entropy_report_interior() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
        let report = entropy_check(&delta(&sol), &sol.setup);
        assert_eq!(report.margins, (2.0, 1.5));
        assert!(report.consistent && report.ordering_ok && report.ordering_strict);
    }

    #[test]
    fn on_j2_zero_strength_j1() {
        let sol = solve(&setup(2.0, 4.0, 3.0, 4.0, 1.0, 1.0)).unwrap();
        assert_eq!(sol.region, Region::OnJ2);
        let p = two_contacts(&sol);
        assert_eq!(p.intermediate.rho, 2.0);
        assert_eq!(p.intermediate.vel, 4.0);
    }

    #[test]
    fn sample_two_contacts() {
        let sol = solve(&setup(1.0, 2.0, 1.0, 3.0, 1.0, 0.0)).unwrap();
        // x1(1) = 1, x2(1) = 3; 2.5 lies between
        match sol.sample(2.5, 1.0).unwrap() {
            SamplePoint::Smooth(s) => {
                assert_eq!(s.rho, 0.5);
                assert_eq!(s.vel, 3.0);
                assert_eq!(s.frame, Frame::Fixed);
            }
            other => panic!("unexpected {other:?}"),
        }
        // far left recovers the left state
        match sol.sample(-100.0, 1.0).unwrap() {
            SamplePoint::Smooth(s) => assert_eq!((s.rho, s.vel), (1.0, 2.0)),
            other => panic!("unexpected {other:?}"),
        }
        // tie-break on a contact returns the right-limit state
        match sol.sample(1.0, 1.0).unwrap() {
            SamplePoint::Smooth(s) => assert_eq!(s.rho, 0.5),
            other => panic!("unexpected {other:?}"),
        }
        match sol.sample(3.0, 1.0).unwrap() {
            SamplePoint::Smooth(s) => assert_eq!(s.rho, 1.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(sol.sample(0.0, 0.0).is_err());
    }

    #[test]
    fn sample_on_delta_path() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
        match sol.sample(3.0, 1.0).unwrap() {
            SamplePoint::OnDelta { weight, u_delta } => {
                assert_eq!(weight, 6.0);
                assert_eq!(u_delta, 4.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        // left constant state with the frictional drift applied
        match sol.sample(-5.0, 1.0).unwrap() {
            SamplePoint::Smooth(s) => assert_eq!((s.rho, s.vel), (2.0, 6.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn delta_path_points() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
        let p = delta(&sol);
        assert_eq!(
            p.path_point(0.0).unwrap(),
            DeltaPathPoint {
                x: 0.0,
                sigma: 2.0,
                w: 0.0,
                u_delta: 2.0
            }
        );
        assert_eq!(
            p.path_point(1.0).unwrap(),
            DeltaPathPoint {
                x: 3.0,
                sigma: 4.0,
                w: 6.0,
                u_delta: 4.0
            }
        );
        assert!(p.path_point(-0.1).is_err());
        // arclength density times the path speed factor recovers w(t)
        let pw = p.arclength_weight(1.0);
        assert_eq!(pw * (1.0_f64 + 16.0).sqrt(), 6.0);
    }

    #[test]
    fn delta_path_turning_point_for_negative_friction() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, -2.0)).unwrap();
        let p = delta(&sol);
        assert_eq!(p.turning_time(), Some(1.0));
        let at_turn = p.path_point(1.0).unwrap();
        assert_eq!(at_turn.sigma, 0.0);
        assert_eq!(at_turn.x, 1.0);
        // past the turning point the path moves left again
        assert!(p.x(1.5) < at_turn.x);
    }

    #[test]
    fn transport_patterns() {
        let vac = solve_transport(&setup(1.0, 1.0, 1.0, 2.0, 0.0, 1.0)).unwrap();
        assert_eq!(vac, TransportPattern::Vacuum);

        let single = solve_transport(&setup(1.0, 2.0, 3.0, 2.0, 0.0, 1.0)).unwrap();
        assert_eq!(single, TransportPattern::SingleContact);

        let d = solve_transport(&setup(4.0, 3.0, 1.0, 1.0, 0.0, 1.0)).unwrap();
        match d {
            TransportPattern::TransportDelta { sigma0, w_slope } => {
                assert!((sigma0 - 7.0 / 3.0).abs() < 1e-15);
                assert_eq!(w_slope, 4.0);
            }
            other => panic!("unexpected {other:?}"),
        }

        let d = solve_transport(&setup(1.0, 3.0, 1.0, 1.0, 0.0, 1.0)).unwrap();
        assert_eq!(
            d,
            TransportPattern::TransportDelta {
                sigma0: 2.0,
                w_slope: 2.0
            }
        );

        assert!(solve_transport(&setup(1.0, 1.0, 1.0, 2.0, 0.5, 1.0)).is_err());
    }

    #[test]
    fn transport_vacuum_sampling() {
        let sol = solve(&setup(1.0, 1.0, 1.0, 2.0, 0.0, 0.0)).unwrap();
        assert!(matches!(
            sol.sample(1.5, 1.0).unwrap(),
            SamplePoint::InVacuum
        ));
        assert!(matches!(
            sol.sample(0.5, 1.0).unwrap(),
            SamplePoint::Smooth(s) if s.vel == 1.0
        ));
        assert!(matches!(
            sol.sample(2.5, 1.0).unwrap(),
            SamplePoint::Smooth(s) if s.vel == 2.0
        ));
    }

    #[test]
    fn moving_frame_samples_remove_drift() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
        match sol.sample_in_frame(-5.0, 1.0, Frame::Moving).unwrap() {
            SamplePoint::Smooth(s) => {
                assert_eq!(s.vel, 4.0);
                assert_eq!(s.frame, Frame::Moving);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn j1_relation_holds_for_intermediate_state() {
        let sol = solve(&setup(2.0, 4.0, 1.0, 3.75, 1.0, 0.5)).unwrap();
        let p = two_contacts(&sol);
        let lhs = p.intermediate.vel - 1.0 / p.intermediate.rho;
        let rhs = 4.0 - 1.0 / 2.0;
        assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
    }
}
