use std::path::Path;

use riemann_awr::exact_riemann::{SamplePoint, WavePattern, WaveSolution};
use riemann_awr::fv_reference::{compare_speeds, measure_concentration, run_fv_snapshots, FvGrid};
use riemann_awr::grh_ode::{compare_to_closed_form, integrate_grh, integrate_grh_moving};
use riemann_awr::pressure_limits::{
    geometric_sequence_to_a0, geometric_sequence_to_zero, sweep_to_a0, sweep_to_zero, vacuum_limit,
    LimitSweepReport,
};
use riemann_awr::weak_residual::residual_moving;
use riemann_awr::{solve, thresholds, Error};

use crate::config::Resolved;
use crate::errors::{CliError, CliResult};
use crate::output::{fmt_float, fmt_opt, write_csv, write_json};
use crate::summary::{
    FvSummary, FvWaveError, GrhSummary, SetupEcho, SolveSummary, SweepSummary, VerifySummary,
};

fn input_err(e: Error) -> CliError {
    CliError::Input(e.to_string())
}

fn solve_resolved(r: &Resolved) -> CliResult<WaveSolution> {
    solve(&r.setup).map_err(input_err)
}

fn ensure_out_dir(r: &Resolved) -> CliResult<&Path> {
    std::fs::create_dir_all(&r.out_dir)?;
    Ok(r.out_dir.as_path())
}

pub fn run_solve(r: &Resolved) -> CliResult<()> {
    let solution = solve_resolved(r)?;
    let summary = SolveSummary::new(r, &solution);
    let dir = ensure_out_dir(r)?;
    write_json(dir, "solution.json", &summary)?;
    println!(
        "region={} v_delta={} w0={} rho_star={}",
        summary.region,
        fmt_opt(summary.v_delta),
        fmt_opt(summary.w0),
        fmt_opt(summary.rho_star),
    );
    Ok(())
}

fn parse_time_list(text: &str, name: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let value: f64 = piece
            .parse()
            .map_err(|_| CliError::Input(format!("invalid value for {name}: {piece}")))?;
        if value.is_nan() || value <= 0.0 || !value.is_finite() {
            return Err(CliError::Input(format!(
                "invalid value for {name}: times must be positive, got {value}"
            )));
        }
        out.push(value);
    }
    if out.is_empty() {
        return Err(CliError::Input(format!(
            "{name} must list at least one time"
        )));
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

pub fn run_sample(
    r: &Resolved,
    t_list: &str,
    x_min: Option<f64>,
    x_max: Option<f64>,
    nx: usize,
) -> CliResult<()> {
    if nx < 2 {
        return Err(CliError::Input(format!(
            "invalid value for nx: need at least 2 points, got {nx}"
        )));
    }
    let times = parse_time_list(t_list, "t-list")?;
    let solution = solve_resolved(r)?;
    let dir = ensure_out_dir(r)?;
    write_json(dir, "solution.json", &SolveSummary::new(r, &solution))?;

    // default grid: wave positions at the latest time, padded
    let t_max = *times.last().unwrap();
    let beta = r.beta;
    let positions: Vec<f64> = solution
        .wave_path_coeffs()
        .iter()
        .map(|(_, c)| c * t_max + 0.5 * beta * t_max * t_max)
        .collect();
    let lo_default = positions.iter().cloned().fold(0.0_f64, f64::min) - 1.0;
    let hi_default = positions.iter().cloned().fold(0.0_f64, f64::max) + 1.0;
    let x_lo = x_min.unwrap_or(lo_default);
    let x_hi = x_max.unwrap_or(hi_default);
    if x_lo.partial_cmp(&x_hi) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Input(format!(
            "invalid value for x-min/x-max: need x_min < x_max, got [{x_lo}, {x_hi}]"
        )));
    }

    // field samples; on_delta rows carry the weight in the rho column
    let mut rows = Vec::with_capacity(times.len() * nx);
    for &t in &times {
        for i in 0..nx {
            let x = x_lo + (x_hi - x_lo) * i as f64 / (nx - 1) as f64;
            let row = match solution.sample(x, t).map_err(input_err)? {
                SamplePoint::Smooth(s) => {
                    format!(
                        "{},{},{},{}",
                        fmt_float(t),
                        fmt_float(x),
                        fmt_float(s.rho),
                        fmt_float(s.vel)
                    ) + ",0"
                }
                SamplePoint::OnDelta { weight, u_delta } => {
                    format!(
                        "{},{},{},{}",
                        fmt_float(t),
                        fmt_float(x),
                        fmt_float(weight),
                        fmt_float(u_delta)
                    ) + ",1"
                }
                SamplePoint::InVacuum => {
                    format!("{},{},{},NaN", fmt_float(t), fmt_float(x), fmt_float(0.0)) + ",0"
                }
            };
            rows.push(row);
        }
    }
    write_csv(dir, "samples.csv", "t,x,rho,u,on_delta", rows)?;

    // wave-path polylines on a dense time grid from 0 to t_max
    let coeffs = solution.wave_path_coeffs();
    let column = |label: &str| -> String {
        match label {
            "J1" | "vacuum_l" => "x1".into(),
            "J2" | "vacuum_r" => "x2".into(),
            _ => "x_delta".into(),
        }
    };
    let header = std::iter::once("t".to_string())
        .chain(coeffs.iter().map(|(label, _)| column(label)))
        .collect::<Vec<_>>()
        .join(",");
    let n_path = 101;
    let path_rows = (0..n_path).map(|i| {
        let t = t_max * i as f64 / (n_path - 1) as f64;
        let mut cells = vec![fmt_float(t)];
        for (_, c) in &coeffs {
            cells.push(fmt_float(c * t + 0.5 * beta * t * t));
        }
        cells.join(",")
    });
    write_csv(dir, "wave_paths.csv", &header, path_rows)?;

    // phase-plane samples of the 1-contact curve through the left state
    // (rendering is external); undefined in the transport limit
    if r.a > 0.0 {
        let n_curve = 200;
        let lo = r.rho_l / 50.0;
        let ratio = (r.rho_l * 50.0 / lo).powf(1.0 / (n_curve - 1) as f64);
        let curve_rows = (0..n_curve).map(|i| {
            let rho = lo * ratio.powi(i as i32);
            let v = riemann_awr::j1_curve(rho, &r.setup.left, &r.setup.params)
                .expect("positive density on the sampled curve");
            format!("{},{}", fmt_float(rho), fmt_float(v))
        });
        write_csv(dir, "j1_curve.csv", "rho,v", curve_rows)?;
    }
    println!(
        "sampled {} times x {} points over [{}, {}]",
        times.len(),
        nx,
        fmt_float(x_lo),
        fmt_float(x_hi)
    );
    Ok(())
}

pub fn run_verify(r: &Resolved, n_psi: usize, tol: f64) -> CliResult<()> {
    let solution = solve_resolved(r)?;
    let suite = riemann_awr::weak_residual::residual_suite(&solution, n_psi, r.seed, r.quad_level)
        .map_err(input_err)?;
    // the same test functions against the conservative moving-frame form
    let mut worst_moving = 0.0_f64;
    for item in &suite.items {
        let rep = residual_moving(&solution, &item.psi, r.quad_level).map_err(input_err)?;
        worst_moving = worst_moving.max(rep.normalized());
    }
    let dir = ensure_out_dir(r)?;
    let rows = suite.items.iter().enumerate().map(|(i, item)| {
        format!(
            "{},{},{},{},{}",
            i,
            item.report.quad_level,
            fmt_float(item.report.r1),
            fmt_float(item.report.r2),
            fmt_float(item.report.scale)
        )
    });
    write_csv(dir, "residuals.csv", "psi_id,level,R1,R2,scale", rows)?;
    let pass = suite.worst <= tol && worst_moving <= tol;
    let summary = VerifySummary {
        setup: SetupEcho::new(r),
        region: solution.region.label().to_string(),
        quad_level: r.quad_level,
        n_psi,
        seed: r.seed,
        tolerance: tol,
        worst_fixed_frame: suite.worst,
        worst_moving_frame: worst_moving,
        pass,
    };
    write_json(dir, "verify.json", &summary)?;
    println!(
        "worst normalized residual: fixed={} moving={}",
        fmt_float(suite.worst),
        fmt_float(worst_moving)
    );
    if !pass {
        return Err(CliError::Verification(format!(
            "normalized residual exceeds {tol}: fixed {}, moving {}",
            fmt_float(suite.worst),
            fmt_float(worst_moving)
        )));
    }
    Ok(())
}

pub fn run_grh(r: &Resolved, dt: f64, tol: f64) -> CliResult<()> {
    let t_end = r.t_end.unwrap_or(1.0);
    let solution = solve_resolved(r)?;
    let pattern = match solution.pattern {
        WavePattern::DeltaShock(p) => p,
        _ => {
            return Err(CliError::Input(format!(
                "grh requires delta-shock data; region is {}",
                solution.region
            )))
        }
    };
    let traj = integrate_grh(&r.setup, t_end, dt).map_err(input_err)?;
    let moving = integrate_grh_moving(&r.setup, t_end, dt).map_err(input_err)?;
    let comparison = compare_to_closed_form(&traj, &pattern).map_err(input_err)?;
    let moving_cmp = compare_to_closed_form(&moving, &pattern).map_err(input_err)?;
    let dir = ensure_out_dir(r)?;
    let rows = (0..traj.len()).map(|i| {
        format!(
            "{},{},{},{}",
            fmt_float(traj.times[i]),
            fmt_float(traj.x[i]),
            fmt_float(traj.w[i]),
            fmt_float(traj.u_delta[i])
        )
    });
    write_csv(dir, "grh_trajectory.csv", "t,x,w,u_delta", rows)?;
    let pass = comparison.max() <= tol && moving_cmp.max() <= tol;
    let summary = GrhSummary {
        setup: SetupEcho::new(r),
        region: solution.region.label().to_string(),
        t_end,
        dt,
        tolerance: tol,
        comparison,
        moving_frame_comparison: moving_cmp,
        pass,
    };
    write_json(dir, "grh.json", &summary)?;
    println!(
        "max relative deviation from closed form: fixed={} moving={}",
        fmt_float(comparison.max()),
        fmt_float(moving_cmp.max())
    );
    if !pass {
        return Err(CliError::Verification(format!(
            "trajectory deviates from the closed form beyond {tol}: {}",
            fmt_float(comparison.max().max(moving_cmp.max()))
        )));
    }
    Ok(())
}

fn sweep_csv(dir: &Path, name: &str, report: &LimitSweepReport) -> CliResult<()> {
    let rows = report
        .records
        .iter()
        .zip(&report.observed_errors)
        .map(|(rec, err)| {
            [
                fmt_float(rec.a),
                rec.region.label().to_string(),
                fmt_opt(rec.rho_star),
                fmt_opt(rec.sigma1_0),
                fmt_opt(rec.sigma2_0),
                fmt_opt(rec.v_delta),
                fmt_opt(rec.w0),
                fmt_opt(err.err_v_delta),
                fmt_opt(err.err_w0),
                fmt_opt(err.err_sigma1),
                fmt_opt(err.err_sigma2),
                fmt_opt(err.err_rho_star),
                fmt_opt(err.err_mass_identity),
                fmt_opt(err.err_momentum_identity),
            ]
            .join(",")
        });
    write_csv(
        dir,
        name,
        "A,region,rho_star,sigma1_0,sigma2_0,v_delta,w0,err_v_delta,err_w0,err_sigma1,err_sigma2,err_rho_star,err_mass_identity,err_momentum_identity",
        rows,
    )?;
    Ok(())
}

pub fn run_sweep_a0(r: &Resolved, steps: usize) -> CliResult<()> {
    if steps == 0 {
        return Err(CliError::Input(
            "invalid value for steps: must be >= 1".into(),
        ));
    }
    let th = thresholds(&r.setup).map_err(input_err)?;
    if th.degenerate {
        return Err(CliError::Input(format!(
            "thresholds are degenerate (A0 = A1 = {}); the sweep interval is empty",
            th.a0
        )));
    }
    let report =
        sweep_to_a0(&r.setup, &geometric_sequence_to_a0(th.a0, th.a1, steps)).map_err(input_err)?;
    let mut notes = vec![
        format!("A0={}", fmt_float(th.a0)),
        format!("A1={}", fmt_float(th.a1)),
    ];
    let mut pass = true;
    for err in &report.observed_errors {
        if err.err_mass_identity.unwrap_or(0.0) > 1e-12
            || err.err_momentum_identity.unwrap_or(0.0) > 1e-12
        {
            pass = false;
            notes.push(format!("identity defect at A={}", fmt_float(err.a)));
        }
    }
    let limit = report.delta_at_a0.unwrap();
    if limit.err_v_delta > 1e-12 || limit.err_w0 > 1e-12 {
        pass = false;
        notes.push("limit objects disagree with the delta solution at A0".into());
    }
    let dir = ensure_out_dir(r)?;
    sweep_csv(dir, "sweep_a0.csv", &report)?;
    let summary = SweepSummary {
        setup: SetupEcho::new(r),
        sweep: "a0".into(),
        steps,
        report,
        pass,
        notes,
    };
    write_json(dir, "sweep_a0.json", &summary)?;
    println!(
        "A->A0 sweep: limit v_delta err={} w0 err={}",
        fmt_float(limit.err_v_delta),
        fmt_float(limit.err_w0)
    );
    if !pass {
        return Err(CliError::Verification(
            "A->A0 sweep identities or limits out of tolerance".into(),
        ));
    }
    Ok(())
}

pub fn run_sweep_zero(r: &Resolved, steps: usize) -> CliResult<()> {
    if steps == 0 {
        return Err(CliError::Input(
            "invalid value for steps: must be >= 1".into(),
        ));
    }
    let dir = ensure_out_dir(r)?;
    let mut notes = Vec::new();
    let (report, pass, label) = if r.u_r < r.u_l {
        let th = thresholds(&r.setup).map_err(input_err)?;
        let report = sweep_to_zero(&r.setup, &geometric_sequence_to_zero(th.a0, steps))
            .map_err(input_err)?;
        let mut pass = true;
        // deviations must shrink and the fitted slopes sit near first order
        for pick in [
            |e: &riemann_awr::pressure_limits::SweepErrors| e.err_v_delta,
            |e: &riemann_awr::pressure_limits::SweepErrors| e.err_w0,
        ] {
            let errs: Vec<f64> = report.observed_errors.iter().filter_map(pick).collect();
            if let (Some(first), Some(last)) = (errs.first(), errs.last()) {
                if *last > *first * 1.000001 + 1e-13 {
                    pass = false;
                    notes.push("deviations did not shrink toward A = 0".into());
                }
            }
        }
        if let Some(slopes) = &report.slopes {
            for (name, slope) in [("v_delta", slopes.v_delta), ("w0", slopes.w0)] {
                if let Some(s) = slope {
                    notes.push(format!("{name} slope {}", fmt_float(s)));
                    if !(0.9..=1.1).contains(&s) {
                        pass = false;
                        notes.push(format!("{name} slope outside [0.9, 1.1]"));
                    }
                }
            }
        }
        (report, pass, "zero")
    } else {
        let report = vacuum_limit(
            &r.setup,
            &(1..=steps)
                .map(|j| r.a.max(1.0) * 0.5_f64.powi(j as i32))
                .collect::<Vec<_>>(),
        )
        .map_err(input_err)?;
        let rho: Vec<f64> = report
            .observed_errors
            .iter()
            .filter_map(|e| e.err_rho_star)
            .collect();
        let mut pass = true;
        if r.u_r > r.u_l {
            if let (Some(first), Some(last)) = (rho.first(), rho.last()) {
                if last >= first {
                    pass = false;
                    notes.push("intermediate density did not empty toward A = 0".into());
                }
            }
        }
        (report, pass, "vacuum")
    };
    sweep_csv(dir, "sweep_zero.csv", &report)?;
    let summary = SweepSummary {
        setup: SetupEcho::new(r),
        sweep: label.into(),
        steps,
        report,
        pass,
        notes,
    };
    write_json(dir, "sweep_zero.json", &summary)?;
    println!("A->0 sweep ({label}): pass={pass}");
    if !pass {
        return Err(CliError::Verification(
            "A->0 sweep deviations out of tolerance".into(),
        ));
    }
    Ok(())
}

pub fn run_fv(
    r: &Resolved,
    x_min: f64,
    x_max: f64,
    snap_times: Option<&str>,
    window: usize,
) -> CliResult<()> {
    let t_end = r.t_end.unwrap_or(0.5);
    let grid = FvGrid::new(x_min, x_max, r.cells, r.cfl, t_end)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let times = match snap_times {
        Some(text) => {
            let times = parse_time_list(text, "snap-times")?;
            for &t in &times {
                if t > t_end {
                    return Err(CliError::Input(format!(
                        "invalid value for snap-times: {t} exceeds t_end = {t_end}"
                    )));
                }
            }
            times
        }
        None => vec![0.5 * t_end, t_end],
    };
    let solution = solve_resolved(r)?;
    let run = run_fv_snapshots(&r.setup, &grid, &times).map_err(input_err)?;
    let dir = ensure_out_dir(r)?;
    for (k, snap) in run.snapshots.iter().enumerate() {
        let rows = (0..snap.n()).map(|i| {
            format!(
                "{},{},{},{}",
                fmt_float(snap.x_center(i)),
                fmt_float(snap.m[i]),
                fmt_float(snap.q[i]),
                fmt_float(snap.velocity(i, r.a))
            )
        });
        write_csv(dir, &format!("fv_snapshot_{k}.csv"), "x_center,m,q,u", rows)?;
    }

    let mut notes = Vec::new();
    let mut pass =
        run.diagnostics.max_mass_balance_rel <= 1e-12 && run.diagnostics.max_q_balance_rel <= 1e-10;
    if !pass {
        notes.push("conservation balance out of tolerance".into());
    }

    let mut wave_errors = Vec::new();
    match compare_speeds(&run.snapshots, &solution) {
        Ok(checks) => {
            for c in checks {
                if let Some(err) = c.error_cells {
                    if c.time > 0.0 && err > 5.0 {
                        pass = false;
                        notes.push(format!(
                            "{:?} off by {err:.1} cells at t={}",
                            c.wave, c.time
                        ));
                    }
                }
                wave_errors.push(FvWaveError {
                    time: c.time,
                    wave: format!("{:?}", c.wave),
                    x_exact: c.x_exact,
                    x_numeric: c.x_numeric,
                    error_cells: c.error_cells,
                });
            }
        }
        Err(Error::NotApplicable(msg)) => notes.push(msg),
        Err(e) => return Err(input_err(e)),
    }

    let delta_like = matches!(
        solution.pattern,
        WavePattern::DeltaShock(_)
            | WavePattern::Transport(riemann_awr::TransportPattern::TransportDelta { .. })
    );
    let (mut measured, mut predicted) = (None, None);
    if delta_like {
        let (m, p) = measure_concentration(&run.field, &solution, window).map_err(input_err)?;
        if p > 0.0 && (m - p).abs() / p > 0.20 {
            pass = false;
            notes.push(format!(
                "window mass {} deviates more than 20% from predicted {}",
                fmt_float(m),
                fmt_float(p)
            ));
        }
        measured = Some(m);
        predicted = Some(p);
    }

    let summary = FvSummary {
        setup: SetupEcho::new(r),
        region: solution.region.label().to_string(),
        x_min,
        x_max,
        cells: r.cells,
        cfl: r.cfl,
        t_end,
        snapshot_times: times,
        steps: run.diagnostics.steps,
        max_mass_balance_rel: run.diagnostics.max_mass_balance_rel,
        max_q_balance_rel: run.diagnostics.max_q_balance_rel,
        velocity_cap_events: run.diagnostics.velocity_cap_events,
        positivity_floor_events: run.diagnostics.positivity_floor_events,
        wave_errors,
        concentration_window_cells: delta_like.then_some(window),
        concentration_measured: measured,
        concentration_predicted: predicted,
        pass,
        notes: notes.clone(),
    };
    write_json(dir, "fv.json", &summary)?;
    println!(
        "fv: steps={} mass_balance={} pass={pass}",
        summary.steps,
        fmt_float(summary.max_mass_balance_rel)
    );
    if !pass {
        return Err(CliError::Verification(format!(
            "finite-volume comparison failed: {}",
            notes.join("; ")
        )));
    }
    Ok(())
}
