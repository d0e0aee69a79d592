//! Shock-capturing finite-volume reference scheme.
//!
//! The fixed-frame system is advanced in the conserved variables
//! m = ρ and q = ρ(u+P) = ρu - A, for which both equations transport
//! with the recovered velocity u = (q+A)/m:
//!
//! ```text
//! m_t + (m·u)_x = 0,      q_t + (q·u)_x = βm.
//! ```
//!
//! Each step splits: a local Lax-Friedrichs update of the homogeneous
//! part, then the exactly integrable source q ← q + βm·dt.  The flux is
//! deliberately not built from the exact Riemann solver — the scheme
//! must corroborate it independently.  It is first order and smears
//! contacts, but it conserves mass to roundoff and concentrates
//! region-III mass along the predicted parabola, which is what the
//! comparisons probe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_riemann::{TransportPattern, WavePattern, WaveSolution};
use crate::model::RiemannSetup;

/// Density floor; cells are clamped here and the event is counted.
pub const M_FLOOR: f64 = 1e-12;

/// Hard cap on steps so a collapsing time step surfaces as an error
/// instead of a hang.
const MAX_STEPS: usize = 5_000_000;

/// Spatial grid and run controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FvGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    /// CFL number in (0, 0.9].
    pub cfl: f64,
    pub t_end: f64,
}

impl FvGrid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, cfl: f64, t_end: f64) -> Result<Self> {
        if x_min.partial_cmp(&x_max) != Some(std::cmp::Ordering::Less)
            || !x_min.is_finite()
            || !x_max.is_finite()
        {
            return Err(Error::InvalidArgument(format!(
                "bad domain [{x_min}, {x_max}]"
            )));
        }
        if n_cells < 100 {
            return Err(Error::InvalidArgument(format!(
                "need at least 100 cells, got {n_cells}"
            )));
        }
        if !(cfl > 0.0 && cfl <= 0.9) {
            return Err(Error::InvalidArgument(format!(
                "CFL must lie in (0, 0.9], got {cfl}"
            )));
        }
        if t_end.is_nan() || t_end < 0.0 || !t_end.is_finite() {
            return Err(Error::InvalidArgument(format!("bad end time {t_end}")));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            cfl,
            t_end,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }
}

/// Cell averages of (m, q) at one time level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvField {
    pub time: f64,
    pub x_min: f64,
    pub dx: f64,
    pub m: Vec<f64>,
    pub q: Vec<f64>,
}

impl FvField {
    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn x_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    /// Recovered velocity u = (q+A)/m, uncapped.
    pub fn velocity(&self, i: usize, pressure_coeff: f64) -> f64 {
        (self.q[i] + pressure_coeff) / self.m[i]
    }
}

/// Per-run conservation and robustness diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FvDiagnostics {
    pub steps: usize,
    /// Worst per-step defect of ∑mΔx accounting for boundary fluxes,
    /// relative to ∑mΔx.
    pub max_mass_balance_rel: f64,
    /// Worst per-step defect of ∑qΔx accounting for boundary fluxes and
    /// the βm source, relative to ∑|q|Δx + 1.
    pub max_q_balance_rel: f64,
    pub velocity_cap_events: u64,
    pub positivity_floor_events: u64,
    pub rejected_steps: u64,
}

/// A finished run: final field, requested snapshots, diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FvRun {
    pub field: FvField,
    pub snapshots: Vec<FvField>,
    pub diagnostics: FvDiagnostics,
}

/// Advance Riemann data to `grid.t_end`.
pub fn run_fv(setup: &RiemannSetup, grid: &FvGrid) -> Result<FvRun> {
    run_fv_snapshots(setup, grid, &[])
}

/// Advance Riemann data, recording the field at each requested time.
pub fn run_fv_snapshots(
    setup: &RiemannSetup,
    grid: &FvGrid,
    snapshot_times: &[f64],
) -> Result<FvRun> {
    for &t in snapshot_times {
        if !(t >= 0.0 && t <= grid.t_end) {
            return Err(Error::InvalidArgument(format!(
                "snapshot time {t} outside [0, {}]",
                grid.t_end
            )));
        }
    }
    let mut snaps: Vec<f64> = snapshot_times.to_vec();
    snaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    snaps.dedup();

    let a = setup.params.pressure_coeff;
    let beta = setup.params.friction;
    let n = grid.n_cells;
    let dx = grid.dx();
    let u_cap =
        10.0 * setup.left.vel.abs().max(setup.right.vel.abs()) + 10.0 * beta.abs() * grid.t_end;

    let mut field = FvField {
        time: 0.0,
        x_min: grid.x_min,
        dx,
        m: vec![0.0; n],
        q: vec![0.0; n],
    };
    for i in 0..n {
        let (rho, u) = if field.x_center(i) < 0.0 {
            (setup.left.rho, setup.left.vel)
        } else {
            (setup.right.rho, setup.right.vel)
        };
        field.m[i] = rho;
        field.q[i] = rho * u - a;
    }

    let mut diag = FvDiagnostics::default();
    let mut snapshots = Vec::new();
    let mut snap_iter = snaps.into_iter().peekable();
    if let Some(&t0) = snap_iter.peek() {
        if t0 == 0.0 {
            snapshots.push(field.clone());
            snap_iter.next();
        }
    }

    let mut velocities = vec![0.0_f64; n];
    let cap = |u: f64, events: &mut u64| -> f64 {
        if u.abs() > u_cap && u_cap > 0.0 {
            *events += 1;
            u_cap.copysign(u)
        } else {
            u
        }
    };

    while field.time < grid.t_end {
        if diag.steps >= MAX_STEPS {
            return Err(Error::IntegrationFailure {
                t: field.time,
                reason: format!("step budget of {MAX_STEPS} exhausted"),
            });
        }
        for (i, v) in velocities.iter_mut().enumerate() {
            *v = cap(field.velocity(i, a), &mut diag.velocity_cap_events);
        }
        let lambda_max = (0..n)
            .map(|i| velocities[i].abs() + (velocities[i] - a / field.m[i]).abs())
            .fold(0.0_f64, f64::max);
        let mut dt = if lambda_max > 0.0 {
            grid.cfl * dx / lambda_max
        } else {
            grid.t_end - field.time
        };
        dt = dt.min(grid.t_end - field.time);
        if let Some(&t_snap) = snap_iter.peek() {
            dt = dt.min(t_snap - field.time);
        }
        if dt.is_nan() || dt <= 0.0 {
            return Err(Error::IntegrationFailure {
                t: field.time,
                reason: format!("time step collapsed to {dt}"),
            });
        }

        // attempt the step; reject and halve if the new state violates
        // the CFL safety bound
        let mut accepted = None;
        for _ in 0..45 {
            let trial = advance(&field, &velocities, dt, a, beta, dx, &mut diag)?;
            let lam_new = (0..n)
                .map(|i| {
                    let u = trial.0.velocity(i, a);
                    let u = u.clamp(-u_cap.max(1.0), u_cap.max(1.0));
                    u.abs() + (u - a / trial.0.m[i]).abs()
                })
                .fold(0.0_f64, f64::max);
            if dt * lam_new / dx <= 0.9 {
                accepted = Some(trial);
                break;
            }
            diag.rejected_steps += 1;
            dt *= 0.5;
        }
        let (new_field, mass_defect, q_defect) = accepted.ok_or(Error::IntegrationFailure {
            t: field.time,
            reason: "step rejected 45 times".into(),
        })?;
        diag.max_mass_balance_rel = diag.max_mass_balance_rel.max(mass_defect);
        diag.max_q_balance_rel = diag.max_q_balance_rel.max(q_defect);
        field = new_field;
        diag.steps += 1;

        if let Some(&t_snap) = snap_iter.peek() {
            if field.time >= t_snap - 1e-14 * (1.0 + t_snap) {
                snapshots.push(field.clone());
                snap_iter.next();
            }
        }
    }

    Ok(FvRun {
        field,
        snapshots,
        diagnostics: diag,
    })
}

/// One split step: LLF hyperbolic update, then the exact source.
/// Returns the new field and the relative balance defects of the step.
#[allow(clippy::too_many_arguments)]
fn advance(
    field: &FvField,
    velocities: &[f64],
    dt: f64,
    a: f64,
    beta: f64,
    dx: f64,
    diag: &mut FvDiagnostics,
) -> Result<(FvField, f64, f64)> {
    let n = field.n();
    let lam = |i: usize| -> f64 {
        let u = velocities[i];
        u.abs().max((u - a / field.m[i]).abs())
    };
    let flux =
        |i: usize| -> (f64, f64) { (field.m[i] * velocities[i], field.q[i] * velocities[i]) };

    // interface fluxes including the transmissive boundaries
    let mut fm = vec![0.0_f64; n + 1];
    let mut fq = vec![0.0_f64; n + 1];
    for k in 0..=n {
        let (il, ir) = (k.saturating_sub(1).min(n - 1), k.min(n - 1));
        let (il, ir) = if k == 0 { (0, 0) } else { (il, ir) };
        let (fml, fql) = flux(il);
        let (fmr, fqr) = flux(ir);
        let alpha = lam(il).max(lam(ir));
        fm[k] = 0.5 * (fml + fmr) - 0.5 * alpha * (field.m[ir] - field.m[il]);
        fq[k] = 0.5 * (fql + fqr) - 0.5 * alpha * (field.q[ir] - field.q[il]);
    }

    let mass_before = kahan_sum(&field.m) * dx;
    let q_before = kahan_sum(&field.q) * dx;

    let mut out = FvField {
        time: field.time + dt,
        x_min: field.x_min,
        dx,
        m: vec![0.0; n],
        q: vec![0.0; n],
    };
    let r = dt / dx;
    for i in 0..n {
        let mut m = field.m[i] - r * (fm[i + 1] - fm[i]);
        let q = field.q[i] - r * (fq[i + 1] - fq[i]);
        if m <= M_FLOOR {
            m = M_FLOOR;
            diag.positivity_floor_events += 1;
        }
        out.m[i] = m;
        out.q[i] = q;
    }
    let mass_after_hyp = kahan_sum(&out.m) * dx;

    // exact source sub-step: m unchanged, q picks up beta*m*dt
    for i in 0..n {
        out.q[i] += beta * out.m[i] * dt;
    }
    let q_after = kahan_sum(&out.q) * dx;

    // discrete balances: the hyperbolic update telescopes to the
    // boundary fluxes, the source adds beta * mass * dt
    let mass_defect = (mass_after_hyp - mass_before + dt * (fm[n] - fm[0])).abs()
        / mass_before.abs().max(f64::MIN_POSITIVE);
    let q_scale = field.q.iter().map(|q| q.abs()).sum::<f64>() * dx + 1.0;
    let q_defect =
        (q_after - q_before + dt * (fq[n] - fq[0]) - beta * mass_after_hyp * dt).abs() / q_scale;
    Ok((out, mass_defect, q_defect))
}

fn kahan_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0_f64;
    let mut c = 0.0_f64;
    for &v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Excess mass (above the exact side backgrounds) within ±`window_cells`
/// of the predicted delta position, against the predicted weight w(t).
pub fn measure_concentration(
    field: &FvField,
    solution: &WaveSolution,
    window_cells: usize,
) -> Result<(f64, f64)> {
    let (c, w_slope) = match &solution.pattern {
        WavePattern::DeltaShock(p) => (p.v_delta, p.w0),
        WavePattern::Transport(TransportPattern::TransportDelta { sigma0, w_slope }) => {
            (*sigma0, *w_slope)
        }
        _ => {
            return Err(Error::NotApplicable(
                "concentration measurement requires a delta-shock solution".into(),
            ))
        }
    };
    let t = field.time;
    let beta = solution.setup.params.friction;
    let x_delta = c * t + 0.5 * beta * t * t;
    let n = field.n();
    let idx = ((x_delta - field.x_min) / field.dx).floor();
    if !(idx >= 0.0 && idx < n as f64) {
        return Err(Error::InvalidArgument(format!(
            "delta position {x_delta} outside the grid"
        )));
    }
    let idx = idx as usize;
    if idx < window_cells || idx + window_cells >= n {
        return Err(Error::InvalidArgument(format!(
            "window of {window_cells} cells around cell {idx} exceeds the domain"
        )));
    }
    let mut excess = 0.0;
    for i in idx - window_cells..=idx + window_cells {
        let background = if field.x_center(i) < x_delta {
            solution.setup.left.rho
        } else {
            solution.setup.right.rho
        };
        excess += (field.m[i] - background) * field.dx;
    }
    Ok((excess, w_slope * t))
}

/// Which wave a location report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveId {
    J1,
    J2,
    Delta,
}

/// Numeric-versus-exact wave location at one snapshot time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedCheck {
    pub time: f64,
    pub wave: WaveId,
    pub x_exact: f64,
    /// None when the field is locally flat and no wave is detectable.
    pub x_numeric: Option<f64>,
    /// |x_numeric - x_exact| in cell widths.
    pub error_cells: Option<f64>,
}

/// Locate each wave in every snapshot: contacts by the steepest density
/// gradient, deltas by the density maximum, both searched in a window
/// around the exact path so neighbouring waves do not capture each
/// other.
pub fn compare_speeds(history: &[FvField], solution: &WaveSolution) -> Result<Vec<SpeedCheck>> {
    if history.len() < 2 {
        return Err(Error::InvalidArgument(
            "need snapshots at two or more times".into(),
        ));
    }
    let beta = solution.setup.params.friction;
    let waves: Vec<(WaveId, f64)> = match &solution.pattern {
        WavePattern::TwoContacts(p) => vec![(WaveId::J1, p.j1_speed0), (WaveId::J2, p.j2_speed0)],
        WavePattern::DeltaShock(p) => vec![(WaveId::Delta, p.v_delta)],
        WavePattern::Transport(TransportPattern::SingleContact) => {
            vec![(WaveId::J2, solution.setup.left.vel)]
        }
        WavePattern::Transport(TransportPattern::TransportDelta { sigma0, .. }) => {
            vec![(WaveId::Delta, *sigma0)]
        }
        WavePattern::Transport(TransportPattern::Vacuum) => {
            return Err(Error::NotApplicable(
                "vacuum fans have no sharp wave to locate".into(),
            ))
        }
    };
    let mut checks = Vec::new();
    for field in history {
        let t = field.time;
        let n = field.n();
        let window = (n / 10).max(20);
        for (k, &(wave, c)) in waves.iter().enumerate() {
            let x_exact = c * t + 0.5 * beta * t * t;
            let center = (((x_exact - field.x_min) / field.dx).floor() as isize)
                .clamp(1, n as isize - 2) as usize;
            let mut lo = center.saturating_sub(window).max(1);
            let mut hi = (center + window).min(n - 2);
            // keep each wave's search region on its own side of the
            // midpoint toward any neighbouring wave
            if k > 0 {
                let x_prev = waves[k - 1].1 * t + 0.5 * beta * t * t;
                let mid = (((0.5 * (x_exact + x_prev) - field.x_min) / field.dx).ceil() as isize)
                    .clamp(1, n as isize - 2) as usize;
                lo = lo.max(mid);
            }
            if k + 1 < waves.len() {
                let x_next = waves[k + 1].1 * t + 0.5 * beta * t * t;
                let mid = (((0.5 * (x_exact + x_next) - field.x_min) / field.dx).floor() as isize)
                    .clamp(1, n as isize - 2) as usize;
                hi = hi.min(mid);
            }
            if lo > hi {
                checks.push(SpeedCheck {
                    time: t,
                    wave,
                    x_exact,
                    x_numeric: None,
                    error_cells: None,
                });
                continue;
            }
            let x_numeric = match wave {
                WaveId::Delta => {
                    let (mut best_i, mut best) = (lo, f64::NEG_INFINITY);
                    for i in lo..=hi {
                        if field.m[i] > best {
                            best = field.m[i];
                            best_i = i;
                        }
                    }
                    let flat = best
                        - field.m[lo..=hi]
                            .iter()
                            .cloned()
                            .fold(f64::INFINITY, f64::min);
                    if flat.abs() < 1e-9 * (solution.setup.left.rho + solution.setup.right.rho) {
                        None
                    } else {
                        Some(field.x_center(best_i))
                    }
                }
                WaveId::J1 | WaveId::J2 => {
                    let (mut best_i, mut best) = (lo, 0.0_f64);
                    for i in lo..=hi {
                        let g = (field.m[i + 1] - field.m[i - 1]).abs();
                        if g > best {
                            best = g;
                            best_i = i;
                        }
                    }
                    if best < 1e-9 * (solution.setup.left.rho + solution.setup.right.rho) {
                        None
                    } else {
                        Some(field.x_center(best_i))
                    }
                }
            };
            checks.push(SpeedCheck {
                time: t,
                wave,
                x_exact,
                x_numeric,
                error_cells: x_numeric.map(|x| (x - x_exact).abs() / field.dx),
            });
        }
    }
    Ok(checks)
}
