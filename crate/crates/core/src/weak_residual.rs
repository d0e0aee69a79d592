//! Distributional verification of constructed solutions.
//!
//! A pair (ρ, u) with ρ = ρ̂ + w(t)δ along x(t) solves the fixed-frame
//! system weakly iff for every smooth ψ compactly supported in t > 0
//!
//! ```text
//! R1 = ∬ (ρ̂ψ_t + ρ̂uψ_x) dxdt + ∫ w(t) d/dt[ψ(x(t),t)] dt = 0,
//! R2 = ∬ (ρ̂(u+P)ψ_t + ρ̂u(u+P)ψ_x + βρ̂ψ) dxdt
//!      + ∫ (w(t)u_δ(t) d/dt[ψ(x(t),t)] + βw(t)ψ(x(t),t)) dt = 0,
//! ```
//!
//! and analogously for the conservative moving-frame system with fluxes
//! ρ̂(v+P), ρ̂(v+P)(v+βt), no source term and the constant assignment
//! v_δ on the delta line.  The delta line integrals use the time
//! parameterization; they equal the arclength pairing of the weighted
//! measure through w(t) = √(1+x'(t)²)·p(t).
//!
//! The area integrals are split along the exact wave paths so that every
//! quadrature panel sees a smooth integrand: the time interval is cut
//! where a path crosses the support edges, and the x-interval at each
//! time node is cut at the path positions.  With polynomial bump test
//! functions every panel integrand is a polynomial, so moderate
//! Gauss-Legendre levels integrate it to roundoff.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_riemann::{SamplePoint, TransportPattern, WavePattern, WaveSolution};
use crate::model::Frame;
use crate::quadrature::GaussLegendre;

/// Smooth compactly supported polynomial bump
/// ψ(x,t) = ((1-s_x²)(1-s_t²))^k with s_x = (x-x₀)/r_x,
/// s_t = (t-t₀)/r_t, zero outside the support rectangle; ψ ∈ C^(k-1).
/// Partial derivatives are exact closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub center: (f64, f64),
    pub radii: (f64, f64),
    pub order: u32,
}

impl TestFunction {
    /// `center`/`radii` are (x, t) pairs; the support must satisfy
    /// t₀ - r_t > 0 and the smoothness exponent k ≥ 4.
    pub fn new(
        center_x: f64,
        center_t: f64,
        radius_x: f64,
        radius_t: f64,
        order: u32,
    ) -> Result<Self> {
        for (name, v) in [
            ("center_x", center_x),
            ("center_t", center_t),
            ("radius_x", radius_x),
            ("radius_t", radius_t),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite { name, value: v });
            }
        }
        if radius_x <= 0.0 || radius_t <= 0.0 {
            return Err(Error::InvalidArgument(
                "test function radii must be positive".into(),
            ));
        }
        if center_t - radius_t <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "test function support must lie in t > 0; t0 - rt = {}",
                center_t - radius_t
            )));
        }
        if order < 4 {
            return Err(Error::InvalidArgument(format!(
                "smoothness exponent must be at least 4, got {order}"
            )));
        }
        Ok(Self {
            center: (center_x, center_t),
            radii: (radius_x, radius_t),
            order,
        })
    }

    pub fn support_x(&self) -> (f64, f64) {
        (self.center.0 - self.radii.0, self.center.0 + self.radii.0)
    }

    pub fn support_t(&self) -> (f64, f64) {
        (self.center.1 - self.radii.1, self.center.1 + self.radii.1)
    }

    fn scaled(&self, x: f64, t: f64) -> Option<(f64, f64)> {
        let sx = (x - self.center.0) / self.radii.0;
        let st = (t - self.center.1) / self.radii.1;
        if sx.abs() >= 1.0 || st.abs() >= 1.0 {
            None
        } else {
            Some((sx, st))
        }
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        match self.scaled(x, t) {
            None => 0.0,
            Some((sx, st)) => {
                let k = self.order as i32;
                ((1.0 - sx * sx) * (1.0 - st * st)).powi(k)
            }
        }
    }

    /// ∂ψ/∂x.
    pub fn dx(&self, x: f64, t: f64) -> f64 {
        match self.scaled(x, t) {
            None => 0.0,
            Some((sx, st)) => {
                let k = self.order as i32;
                let px = (1.0 - sx * sx).powi(k - 1);
                let pt = (1.0 - st * st).powi(k);
                -2.0 * self.order as f64 * sx / self.radii.0 * px * pt
            }
        }
    }

    /// ∂ψ/∂t.
    pub fn dt(&self, x: f64, t: f64) -> f64 {
        match self.scaled(x, t) {
            None => 0.0,
            Some((sx, st)) => {
                let k = self.order as i32;
                let pt = (1.0 - st * st).powi(k - 1);
                let px = (1.0 - sx * sx).powi(k);
                -2.0 * self.order as f64 * st / self.radii.1 * pt * px
            }
        }
    }
}

/// Residuals of the two weak identities against one test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Mass-equation residual.
    pub r1: f64,
    /// Momentum-type residual.
    pub r2: f64,
    /// Sum of the absolute values of all quadrature contributions; the
    /// normalization for relative comparisons.
    pub scale: f64,
    pub quad_level: usize,
}

impl ResidualReport {
    /// max(|R1|, |R2|)/scale, or 0 when the test function sees nothing.
    pub fn normalized(&self) -> f64 {
        if self.scale > 0.0 {
            self.r1.abs().max(self.r2.abs()) / self.scale
        } else {
            0.0
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum FormKind {
    /// Fixed-frame system with the friction source; the delta part of
    /// ⟨βρ, ψ⟩ contributes β∫w(t)ψ dt unless disabled.
    Fixed { include_delta_source: bool },
    /// Conservative moving-frame system; no source anywhere.
    Moving,
}

/// Fixed-frame weak residual of a constructed solution.
pub fn residual(
    solution: &WaveSolution,
    psi: &TestFunction,
    quad_level: usize,
) -> Result<ResidualReport> {
    evaluate(
        solution,
        psi,
        quad_level,
        FormKind::Fixed {
            include_delta_source: true,
        },
    )
}

/// Fixed-frame residual with the delta part of the friction pairing
/// deliberately omitted; used to demonstrate that the βw(t) term is
/// required, not optional.
pub fn residual_without_delta_source(
    solution: &WaveSolution,
    psi: &TestFunction,
    quad_level: usize,
) -> Result<ResidualReport> {
    evaluate(
        solution,
        psi,
        quad_level,
        FormKind::Fixed {
            include_delta_source: false,
        },
    )
}

/// Moving-frame (conservative) weak residual.
pub fn residual_moving(
    solution: &WaveSolution,
    psi: &TestFunction,
    quad_level: usize,
) -> Result<ResidualReport> {
    evaluate(solution, psi, quad_level, FormKind::Moving)
}

fn evaluate(
    solution: &WaveSolution,
    psi: &TestFunction,
    quad_level: usize,
    form: FormKind,
) -> Result<ResidualReport> {
    if quad_level < 2 {
        return Err(Error::InvalidArgument(format!(
            "quadrature level must be at least 2, got {quad_level}"
        )));
    }
    let (t_lo, _) = psi.support_t();
    if t_lo <= 0.0 {
        return Err(Error::InvalidArgument(
            "test function support touches t <= 0".into(),
        ));
    }
    let rule = GaussLegendre::new(quad_level)?;
    let params = solution.setup.params;
    let beta = params.friction;
    let a = params.pressure_coeff;

    let paths = solution.wave_path_coeffs();
    let t_cuts = time_breakpoints(solution, psi);
    let (x_lo, x_hi) = psi.support_x();

    let mut r1 = 0.0;
    let mut r2 = 0.0;
    let mut scale1 = 0.0;
    let mut scale2 = 0.0;

    // area integrals, panelized in x at every time node
    for pair in t_cuts.windows(2) {
        let (ta, tb) = (pair[0], pair[1]);
        if tb - ta <= 0.0 {
            continue;
        }
        for (t, wt) in rule.mapped(ta, tb) {
            let mut cuts = vec![x_lo, x_hi];
            for (_, c) in &paths {
                let x = c * t + 0.5 * beta * t * t;
                if x > x_lo && x < x_hi {
                    cuts.push(x);
                }
            }
            cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
            for panel in cuts.windows(2) {
                let (xa, xb) = (panel[0], panel[1]);
                if xb - xa <= 0.0 {
                    continue;
                }
                let (rho, v) = match solution.sample_in_frame(0.5 * (xa + xb), t, Frame::Moving)? {
                    SamplePoint::Smooth(s) => (s.rho, s.vel),
                    SamplePoint::InVacuum => continue,
                    SamplePoint::OnDelta { .. } => continue,
                };
                let u_t = v + beta * t;
                let (f1, g1) = (rho, rho * u_t);
                let (f2, g2, src2) = match form {
                    FormKind::Fixed { .. } => {
                        (rho * u_t - a, rho * u_t * u_t - a * u_t, beta * rho)
                    }
                    FormKind::Moving => (rho * v - a, (rho * v - a) * u_t, 0.0),
                };
                for (x, wx) in rule.mapped(xa, xb) {
                    let w = wt * wx;
                    let pt = psi.dt(x, t);
                    let px = psi.dx(x, t);
                    let pv = psi.value(x, t);
                    r1 += w * (f1 * pt + g1 * px);
                    scale1 += w.abs() * ((f1 * pt).abs() + (g1 * px).abs());
                    r2 += w * (f2 * pt + g2 * px + src2 * pv);
                    scale2 += w.abs() * ((f2 * pt).abs() + (g2 * px).abs() + (src2 * pv).abs());
                }
            }
        }
    }

    // delta line integrals in the time parameterization
    if let Some((c, w0)) = delta_line(solution) {
        for pair in t_cuts.windows(2) {
            let (ta, tb) = (pair[0], pair[1]);
            if tb - ta <= 0.0 {
                continue;
            }
            for (t, wt) in rule.mapped(ta, tb) {
                let xd = c * t + 0.5 * beta * t * t;
                let sigma = c + beta * t;
                let w = w0 * t;
                let along = psi.dt(xd, t) + sigma * psi.dx(xd, t);
                let line1 = w * along;
                r1 += wt * line1;
                scale1 += wt.abs() * line1.abs();
                match form {
                    FormKind::Fixed {
                        include_delta_source,
                    } => {
                        let u_delta = c + beta * t;
                        let source = if include_delta_source {
                            beta * w * psi.value(xd, t)
                        } else {
                            0.0
                        };
                        r2 += wt * (w * u_delta * along + source);
                        scale2 += wt.abs() * ((w * u_delta * along).abs() + source.abs());
                    }
                    FormKind::Moving => {
                        r2 += wt * (w * c * along);
                        scale2 += wt.abs() * (w * c * along).abs();
                    }
                }
            }
        }
    }

    Ok(ResidualReport {
        r1,
        r2,
        scale: scale1.max(scale2),
        quad_level,
    })
}

/// Moving-frame path coefficient and weight slope of the delta line, if
/// the solution carries one.
fn delta_line(solution: &WaveSolution) -> Option<(f64, f64)> {
    match &solution.pattern {
        WavePattern::DeltaShock(p) => Some((p.v_delta, p.w0)),
        WavePattern::Transport(TransportPattern::TransportDelta { sigma0, w_slope }) => {
            Some((*sigma0, *w_slope))
        }
        _ => None,
    }
}

/// Support endpoints plus every time at which a wave path crosses a
/// vertical support edge, so the time integrand is smooth per interval.
fn time_breakpoints(solution: &WaveSolution, psi: &TestFunction) -> Vec<f64> {
    let (t_lo, t_hi) = psi.support_t();
    let (x_lo, x_hi) = psi.support_x();
    let q = 0.5 * solution.setup.params.friction;
    let mut cuts = vec![t_lo, t_hi];
    for (_, c) in solution.wave_path_coeffs() {
        for edge in [x_lo, x_hi] {
            for root in parabola_crossings(c, q, edge) {
                if root > t_lo && root < t_hi {
                    cuts.push(root);
                }
            }
        }
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    cuts
}

/// Real solutions of q·t² + c·t = target.
fn parabola_crossings(c: f64, q: f64, target: f64) -> Vec<f64> {
    if q == 0.0 {
        if c == 0.0 {
            return Vec::new();
        }
        return vec![target / c];
    }
    let disc = c * c + 4.0 * q * target;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    vec![(-c + s) / (2.0 * q), (-c - s) / (2.0 * q)]
}

/// One drawn test function together with its residual report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub psi: TestFunction,
    pub report: ResidualReport,
}

/// Result of a randomized residual suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
    /// Worst normalized residual max(|R1|, |R2|)/scale over the suite.
    pub worst: f64,
}

/// Evaluate the residual against `n` test functions whose centers cycle
/// through straddling, left, right and in-between placements at varied
/// scales.  Deterministic for a fixed seed.
pub fn residual_suite(
    solution: &WaveSolution,
    n: usize,
    rng_seed: u64,
    quad_level: usize,
) -> Result<SuiteReport> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "suite needs at least one test function".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let paths = solution.wave_path_coeffs();
    let beta = solution.setup.params.friction;
    let path_x = |c: f64, t: f64| c * t + 0.5 * beta * t * t;

    let mut items = Vec::with_capacity(n);
    let mut worst = 0.0_f64;
    for i in 0..n {
        let t0: f64 = rng.random_range(0.4..1.2);
        let rt = (t0 * rng.random_range(0.15..0.35)).min(t0 - 0.05);
        let rx: f64 = rng.random_range(0.3..1.5);
        let kind = i % (paths.len() + 3);
        let positions: Vec<f64> = paths.iter().map(|(_, c)| path_x(*c, t0)).collect();
        let min_p = positions.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_p = positions.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let x0 = if kind < positions.len() {
            positions[kind] + rng.random_range(-0.2..0.2) * rx
        } else if kind == positions.len() {
            min_p - 1.5 * rx - rng.random_range(0.0..1.0)
        } else if kind == positions.len() + 1 {
            max_p + 1.5 * rx + rng.random_range(0.0..1.0)
        } else {
            0.5 * (min_p + max_p)
        };
        let psi = TestFunction::new(x0, t0, rx, rt, 4)?;
        let report = residual(solution, &psi, quad_level)?;
        worst = worst.max(report.normalized());
        items.push(SuiteItem { psi, report });
    }
    Ok(SuiteReport { items, worst })
}

/// Normalized residuals across quadrature levels and a least-squares
/// slope of log(residual) against log(level).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub levels: Vec<usize>,
    pub residuals: Vec<f64>,
    /// Fitted slope over the points above the roundoff floor; None when
    /// the data start at the floor or too few points remain.
    pub slope: Option<f64>,
    /// The finest level already sits at the roundoff floor.
    pub at_floor: bool,
}

/// Roundoff floor for normalized residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-13;

pub fn convergence_order(
    solution: &WaveSolution,
    psi: &TestFunction,
    levels: &[usize],
) -> Result<ConvergenceReport> {
    if levels.len() < 3 {
        return Err(Error::InvalidArgument(
            "convergence estimate needs at least three levels".into(),
        ));
    }
    let mut residuals = Vec::with_capacity(levels.len());
    for &level in levels {
        residuals.push(residual(solution, psi, level)?.normalized());
    }
    let at_floor = *residuals.last().unwrap() <= RESIDUAL_FLOOR;
    let pts: Vec<(f64, f64)> = levels
        .iter()
        .zip(&residuals)
        .filter(|(_, &r)| r > RESIDUAL_FLOOR)
        .map(|(&l, &r)| ((l as f64).ln(), r.ln()))
        .collect();
    let slope = if residuals[0] <= RESIDUAL_FLOOR || pts.len() < 2 {
        None
    } else {
        Some(least_squares_slope(&pts))
    };
    Ok(ConvergenceReport {
        levels: levels.to_vec(),
        residuals,
        slope,
        at_floor,
    })
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
