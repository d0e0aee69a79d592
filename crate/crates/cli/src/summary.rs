//! JSON summary schemas.  Field order is the serialization order; every
//! summary echoes the resolved physical inputs so runs are reproducible
//! from their outputs alone.

use riemann_awr::exact_riemann::{TransportPattern, WavePattern, WaveSolution};
use riemann_awr::grh_ode::GrhComparison;
use riemann_awr::pressure_limits::LimitSweepReport;
use serde::{Deserialize, Serialize};

use crate::config::Resolved;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetupEcho {
    pub rho_l: f64,
    pub u_l: f64,
    pub rho_r: f64,
    pub u_r: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub beta: f64,
}

impl SetupEcho {
    pub fn new(r: &Resolved) -> Self {
        Self {
            rho_l: r.rho_l,
            u_l: r.u_l,
            rho_r: r.rho_r,
            u_r: r.u_r,
            a: r.a,
            beta: r.beta,
        }
    }
}

/// One wave path x(t) = linear·t + quadratic·t².
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathCoeffs {
    pub label: String,
    pub linear: f64,
    pub quadratic: f64,
}

/// Solution descriptor written by `solve` (and embedded by the other
/// commands).  The `solution` field carries the full wave structure, so
/// reading the file back reconstructs a sampleable solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveSummary {
    pub setup: SetupEcho,
    pub region: String,
    pub negative_right_velocity: bool,
    pub rho_star: Option<f64>,
    pub v_star: Option<f64>,
    pub v_delta: Option<f64>,
    pub w0: Option<f64>,
    pub entropy_margins: Option<(f64, f64)>,
    pub transport_kind: Option<String>,
    pub wave_paths: Vec<PathCoeffs>,
    pub solution: WaveSolution,
}

impl SolveSummary {
    pub fn new(resolved: &Resolved, solution: &WaveSolution) -> Self {
        let mut rho_star = None;
        let mut v_star = None;
        let mut v_delta = None;
        let mut w0 = None;
        let mut entropy_margins = None;
        let mut transport_kind = None;
        match &solution.pattern {
            WavePattern::TwoContacts(p) => {
                rho_star = Some(p.intermediate.rho);
                v_star = Some(p.intermediate.vel);
            }
            WavePattern::DeltaShock(p) => {
                v_delta = Some(p.v_delta);
                w0 = Some(p.w0);
                entropy_margins = Some(p.entropy_margins);
            }
            WavePattern::Transport(t) => {
                transport_kind = Some(
                    match t {
                        TransportPattern::Vacuum => "vacuum",
                        TransportPattern::SingleContact => "single_contact",
                        TransportPattern::TransportDelta { .. } => "transport_delta",
                    }
                    .to_string(),
                );
                if let TransportPattern::TransportDelta { sigma0, w_slope } = t {
                    v_delta = Some(*sigma0);
                    w0 = Some(*w_slope);
                }
            }
        }
        let quadratic = 0.5 * solution.setup.params.friction;
        let wave_paths = solution
            .wave_path_coeffs()
            .into_iter()
            .map(|(label, linear)| PathCoeffs {
                label: label.to_string(),
                linear,
                quadratic,
            })
            .collect();
        Self {
            setup: SetupEcho::new(resolved),
            region: solution.region.label().to_string(),
            negative_right_velocity: solution.setup.negative_right_velocity(),
            rho_star,
            v_star,
            v_delta,
            w0,
            entropy_margins,
            transport_kind,
            wave_paths,
            solution: *solution,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifySummary {
    pub setup: SetupEcho,
    pub region: String,
    pub quad_level: usize,
    pub n_psi: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub worst_fixed_frame: f64,
    pub worst_moving_frame: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrhSummary {
    pub setup: SetupEcho,
    pub region: String,
    pub t_end: f64,
    pub dt: f64,
    pub tolerance: f64,
    pub comparison: GrhComparison,
    pub moving_frame_comparison: GrhComparison,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSummary {
    pub setup: SetupEcho,
    pub sweep: String,
    pub steps: usize,
    pub report: LimitSweepReport,
    pub pass: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FvWaveError {
    pub time: f64,
    pub wave: String,
    pub x_exact: f64,
    pub x_numeric: Option<f64>,
    pub error_cells: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FvSummary {
    pub setup: SetupEcho,
    pub region: String,
    pub x_min: f64,
    pub x_max: f64,
    pub cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
    pub steps: usize,
    pub max_mass_balance_rel: f64,
    pub max_q_balance_rel: f64,
    pub velocity_cap_events: u64,
    pub positivity_floor_events: u64,
    pub wave_errors: Vec<FvWaveError>,
    pub concentration_window_cells: Option<usize>,
    pub concentration_measured: Option<f64>,
    pub concentration_predicted: Option<f64>,
    pub pass: bool,
    pub notes: Vec<String>,
}
