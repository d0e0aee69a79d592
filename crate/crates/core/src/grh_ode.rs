//! Generalized Rankine-Hugoniot ODE integration for delta shocks.
//!
//! Along a delta shock at x(t) with weight w(t) and velocity assignment
//! u_δ(t), the fixed-frame system reads
//!
//! ```text
//! dx/dt        = σ(t) = u_δ(t),
//! dw/dt        = σ[ρ] - [ρu],
//! d(w u_δ)/dt  = σ[ρ(u - A/ρ)] - [ρu(u - A/ρ)] + βw,
//! ```
//!
//! with jumps taken between the instantaneous side states
//! (ρ±, u± + βt).  The moving-frame variant drops the βw term, carries
//! the constant assignment v_δ and uses σ(t) = v_δ + βt.  Both are
//! integrated with the classical 4th-order one-step scheme at a fixed
//! step; the right-hand sides are affine in t so there is no stiffness
//! and fixed steps keep error tables reproducible.
//!
//! The conserved product w·u_δ is integrated rather than u_δ itself;
//! u_δ is recovered as (w u_δ)/w once w has grown past a floor, and is
//! seeded with the algebraic root v_δ + βt inside the start-up window
//! where w ≈ 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_riemann::{solve, DeltaShockPattern, TransportPattern, WavePattern};
use crate::model::RiemannSetup;

/// Integrated delta-shock trajectory on a uniform time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrhTrajectory {
    pub times: Vec<f64>,
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    /// Samples of the conserved product w·u_δ.
    pub wu: Vec<f64>,
    /// Recovered velocity assignment u_δ (seeded near t = 0).
    pub u_delta: Vec<f64>,
}

impl GrhTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn step(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            self.times[1] - self.times[0]
        }
    }
}

/// Worst relative deviations of a trajectory from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrhComparison {
    pub max_rel_x: f64,
    pub max_rel_w: f64,
    pub max_rel_u_delta: f64,
}

impl GrhComparison {
    pub fn max(&self) -> f64 {
        self.max_rel_x.max(self.max_rel_w).max(self.max_rel_u_delta)
    }
}

struct JumpData {
    rho_l: f64,
    u_l: f64,
    rho_r: f64,
    u_r: f64,
    a: f64,
    beta: f64,
}

impl JumpData {
    fn new(setup: &RiemannSetup) -> Self {
        Self {
            rho_l: setup.left.rho,
            u_l: setup.left.vel,
            rho_r: setup.right.rho,
            u_r: setup.right.vel,
            a: setup.params.pressure_coeff,
            beta: setup.params.friction,
        }
    }

    fn jump_rho(&self) -> f64 {
        self.rho_r - self.rho_l
    }

    /// [ρu] with the instantaneous side velocities u± + βt.
    fn jump_rho_u(&self, t: f64) -> f64 {
        self.rho_r * (self.u_r + self.beta * t) - self.rho_l * (self.u_l + self.beta * t)
    }

    /// [ρ(u - A/ρ)].
    fn jump_flux1(&self, t: f64) -> f64 {
        self.rho_r * (self.u_r + self.beta * t - self.a / self.rho_r)
            - self.rho_l * (self.u_l + self.beta * t - self.a / self.rho_l)
    }

    /// [ρu(u - A/ρ)].
    fn jump_flux2(&self, t: f64) -> f64 {
        let ur = self.u_r + self.beta * t;
        let ul = self.u_l + self.beta * t;
        self.rho_r * ur * (ur - self.a / self.rho_r) - self.rho_l * ul * (ul - self.a / self.rho_l)
    }

    /// Moving frame: [ρ(v - A/ρ)] is time independent.
    fn jump_mov1(&self) -> f64 {
        self.rho_r * (self.u_r - self.a / self.rho_r)
            - self.rho_l * (self.u_l - self.a / self.rho_l)
    }

    /// Moving frame: [ρ(v - A/ρ)(v + βt)].
    fn jump_mov2(&self, t: f64) -> f64 {
        self.rho_r * (self.u_r - self.a / self.rho_r) * (self.u_r + self.beta * t)
            - self.rho_l * (self.u_l - self.a / self.rho_l) * (self.u_l + self.beta * t)
    }
}

/// Delta-shock speed and strength data of a solved setup, accepting both
/// the Chaplygin delta and the transport-limit delta.
fn delta_coefficients(setup: &RiemannSetup) -> Result<(f64, f64)> {
    let sol = solve(setup)?;
    match sol.pattern {
        WavePattern::DeltaShock(DeltaShockPattern { v_delta, w0, .. }) => Ok((v_delta, w0)),
        WavePattern::Transport(TransportPattern::TransportDelta { sigma0, w_slope }) => {
            Ok((sigma0, w_slope))
        }
        _ => Err(Error::NotApplicable(format!(
            "generalized Rankine-Hugoniot integration requires delta-shock data, region is {}",
            sol.region
        ))),
    }
}

fn validate_grid(t_end: f64, dt: f64) -> Result<usize> {
    if t_end.is_nan() || t_end <= 0.0 {
        return Err(Error::NonPositiveTime(t_end));
    }
    if dt.is_nan() || dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step size must be positive, got {dt}"
        )));
    }
    Ok(((t_end / dt).round() as usize).max(1))
}

/// Integrate the fixed-frame system.  `dt` is a target step; the actual
/// uniform step is t_end divided by the nearest whole step count.
pub fn integrate_grh(setup: &RiemannSetup, t_end: f64, dt: f64) -> Result<GrhTrajectory> {
    integrate(setup, t_end, dt, FrameSystem::Fixed)
}

/// Integrate the moving-frame system and map u_δ(t) = v_δ(t) + βt.
pub fn integrate_grh_moving(setup: &RiemannSetup, t_end: f64, dt: f64) -> Result<GrhTrajectory> {
    integrate(setup, t_end, dt, FrameSystem::Moving)
}

#[derive(Clone, Copy, PartialEq)]
enum FrameSystem {
    Fixed,
    Moving,
}

fn integrate(
    setup: &RiemannSetup,
    t_end: f64,
    dt: f64,
    system: FrameSystem,
) -> Result<GrhTrajectory> {
    let (v_delta, w0) = delta_coefficients(setup)?;
    let n = validate_grid(t_end, dt)?;
    let h = t_end / n as f64;
    let jumps = JumpData::new(setup);
    let beta = jumps.beta;
    let w_floor = 1e-12 * (1.0 + w0 * t_end);

    // recovered velocity variable: u_delta (fixed) or v_delta (moving)
    let recover = |w: f64, prod: f64, t: f64| -> f64 {
        if w < w_floor {
            match system {
                FrameSystem::Fixed => v_delta + beta * t,
                FrameSystem::Moving => v_delta,
            }
        } else {
            prod / w
        }
    };

    let rhs = |t: f64, y: [f64; 3]| -> [f64; 3] {
        let vel = recover(y[1], y[2], t);
        match system {
            FrameSystem::Fixed => {
                let sigma = vel;
                [
                    vel,
                    sigma * jumps.jump_rho() - jumps.jump_rho_u(t),
                    sigma * jumps.jump_flux1(t) - jumps.jump_flux2(t) + beta * y[1],
                ]
            }
            FrameSystem::Moving => {
                let sigma = vel + beta * t;
                [
                    sigma,
                    sigma * jumps.jump_rho() - jumps.jump_rho_u(t),
                    sigma * jumps.jump_mov1() - jumps.jump_mov2(t),
                ]
            }
        }
    };

    let mut times = Vec::with_capacity(n + 1);
    let mut xs = Vec::with_capacity(n + 1);
    let mut ws = Vec::with_capacity(n + 1);
    let mut wus = Vec::with_capacity(n + 1);
    let mut uds = Vec::with_capacity(n + 1);

    let mut y = [0.0_f64; 3];
    let push = |times: &mut Vec<f64>,
                xs: &mut Vec<f64>,
                ws: &mut Vec<f64>,
                wus: &mut Vec<f64>,
                uds: &mut Vec<f64>,
                t: f64,
                y: [f64; 3]| {
        let vel = recover(y[1], y[2], t);
        let u_delta = match system {
            FrameSystem::Fixed => vel,
            FrameSystem::Moving => vel + beta * t,
        };
        times.push(t);
        xs.push(y[0]);
        ws.push(y[1]);
        wus.push(y[2]);
        uds.push(u_delta);
    };
    push(&mut times, &mut xs, &mut ws, &mut wus, &mut uds, 0.0, y);

    for i in 0..n {
        let t = i as f64 * h;
        let k1 = rhs(t, y);
        let k2 = rhs(t + 0.5 * h, add(y, scale(k1, 0.5 * h)));
        let k3 = rhs(t + 0.5 * h, add(y, scale(k2, 0.5 * h)));
        let k4 = rhs(t + h, add(y, scale(k3, h)));
        for j in 0..3 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let t_next = (i + 1) as f64 * h;
        if y[1] <= 0.0 {
            return Err(Error::IntegrationFailure {
                t: t_next,
                reason: format!("delta strength w = {} is not positive", y[1]),
            });
        }
        push(&mut times, &mut xs, &mut ws, &mut wus, &mut uds, t_next, y);
    }

    Ok(GrhTrajectory {
        times,
        x: xs,
        w: ws,
        wu: wus,
        u_delta: uds,
    })
}

/// Sup-norm relative deviation of a trajectory from the closed forms of
/// its delta pattern.  Each quantity is normalized by its own sup
/// magnitude over the grid; u_δ skips the start-up window t < 10·dt
/// where the 0/0 recovery is seeded.
pub fn compare_to_closed_form(
    trajectory: &GrhTrajectory,
    pattern: &DeltaShockPattern,
) -> Result<GrhComparison> {
    if trajectory.times.len() < 2 {
        return Err(Error::InvalidArgument(
            "trajectory needs at least two nodes".into(),
        ));
    }
    let h = trajectory.step();
    for (i, pair) in trajectory.times.windows(2).enumerate() {
        if (pair[1] - pair[0] - h).abs() > 1e-9 * h {
            return Err(Error::InvalidArgument(format!(
                "time grid is not uniform at index {i}"
            )));
        }
    }
    let n = trajectory.times.len();
    if trajectory.x.len() != n || trajectory.w.len() != n || trajectory.u_delta.len() != n {
        return Err(Error::InvalidArgument(
            "trajectory column lengths disagree".into(),
        ));
    }

    let mut sup = [0.0_f64; 3];
    let mut dev = [0.0_f64; 3];
    for (i, &t) in trajectory.times.iter().enumerate() {
        let exact = [pattern.x(t), pattern.weight(t), pattern.u_delta(t)];
        let num = [trajectory.x[i], trajectory.w[i], trajectory.u_delta[i]];
        for j in 0..3 {
            if j == 2 && t < 10.0 * h {
                continue;
            }
            sup[j] = sup[j].max(exact[j].abs());
            dev[j] = dev[j].max((num[j] - exact[j]).abs());
        }
    }
    let rel = |d: f64, s: f64| if s > 0.0 { d / s } else { d };
    Ok(GrhComparison {
        max_rel_x: rel(dev[0], sup[0]),
        max_rel_w: rel(dev[1], sup[1]),
        max_rel_u_delta: rel(dev[2], sup[2]),
    })
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}
