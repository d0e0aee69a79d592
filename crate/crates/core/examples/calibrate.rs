//! One-off calibration runs used to pin the acceptance tolerances.
use std::time::Instant;

use riemann_awr::fv_reference::{compare_speeds, measure_concentration, run_fv_snapshots, FvGrid};
use riemann_awr::weak_residual::{
    convergence_order, residual, residual_suite, residual_without_delta_source, TestFunction,
};
use riemann_awr::*;

fn setup(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64, a: f64, beta: f64) -> RiemannSetup {
    RiemannSetup::new(rho_l, u_l, rho_r, u_r, ModelParams::new(a, beta).unwrap()).unwrap()
}

fn main() {
    println!("== residual suites, level 24, n = 10 ==");
    let cases: Vec<(&str, RiemannSetup)> = [-2.0, 0.0, 2.0]
        .iter()
        .flat_map(|&b| {
            vec![
                ("two-contact", setup(1.0, 2.0, 1.0, 3.0, 1.0, b)),
                ("boundary-S ", setup(2.0, 4.0, 1.0, 3.5, 1.0, b)),
                ("interior-d ", setup(2.0, 4.0, 1.0, 0.0, 1.0, b)),
            ]
        })
        .collect();
    let t0 = Instant::now();
    for (name, s) in &cases {
        let sol = solve(s).unwrap();
        let rep = residual_suite(&sol, 10, 1234, 24).unwrap();
        println!(
            "  {name} beta={:+.0}: worst = {:.3e}",
            s.params.friction, rep.worst
        );
    }
    println!("  elapsed: {:?}", t0.elapsed());

    println!("== corrupted v_delta (+0.1), level 24 ==");
    for b in [-2.0, 0.0, 2.0] {
        let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, b)).unwrap();
        let mut bad = sol;
        if let WavePattern::DeltaShock(ref mut p) = bad.pattern {
            p.v_delta += 0.1;
        }
        let rep = residual_suite(&bad, 10, 1234, 24).unwrap();
        println!("  beta={b:+.0}: worst = {:.3e}", rep.worst);
    }

    println!("== omitted delta source, beta = 2 ==");
    let sol = solve(&setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0)).unwrap();
    let psi = TestFunction::new(3.0, 1.0, 1.5, 0.4, 4).unwrap();
    let intact = residual(&sol, &psi, 24).unwrap().normalized();
    let gutted = residual_without_delta_source(&sol, &psi, 24)
        .unwrap()
        .normalized();
    println!(
        "  intact = {intact:.3e}, omitted = {gutted:.3e}, ratio = {:.1e}",
        gutted / intact.max(1e-300)
    );

    println!("== convergence, delta case, levels 8/12/16/20 ==");
    let rep = convergence_order(&sol, &psi, &[8, 12, 16, 20]).unwrap();
    println!("  residuals = {:?}", rep.residuals);

    println!("== FV: contacts, 2000 cells, t = 0.5 ==");
    for b in [0.0, 2.0] {
        let s = setup(1.0, 2.0, 1.0, 3.0, 1.0, b);
        let sol = solve(&s).unwrap();
        let grid = FvGrid::new(-2.0, 4.0, 2000, 0.45, 0.5).unwrap();
        let t0 = Instant::now();
        let run = run_fv_snapshots(&s, &grid, &[0.25, 0.5]).unwrap();
        let checks = compare_speeds(&run.snapshots, &sol).unwrap();
        for c in &checks {
            println!(
                "  beta={b:+.0} t={:.2} {:?}: err = {:?} cells",
                c.time, c.wave, c.error_cells
            );
        }
        // intermediate plateau at t=0.5
        let f = &run.field;
        let (x1, x2) = match sol.pattern {
            WavePattern::TwoContacts(p) => (p.x1(0.5), p.x2(0.5)),
            _ => unreachable!(),
        };
        let third = (x2 - x1) / 3.0;
        let mut worst: f64 = 0.0;
        for i in 0..f.n() {
            let x = f.x_center(i);
            if x > x1 + third && x < x2 - third {
                worst = worst.max((f.m[i] - 0.5).abs() / 0.5);
                let u = f.velocity(i, 1.0);
                worst = worst.max((u - (3.0 + b * 0.5)).abs() / (3.0 + b * 0.5));
            }
        }
        println!("  beta={b:+.0}: plateau worst rel dev = {:.3e}, steps = {}, mass_bal = {:.2e}, q_bal = {:.2e}, elapsed = {:?}",
            worst, run.diagnostics.steps, run.diagnostics.max_mass_balance_rel, run.diagnostics.max_q_balance_rel, t0.elapsed());
    }

    println!("== FV: delta concentration, 2000/4000 cells, t = 0.5, beta = 2 ==");
    let s = setup(2.0, 4.0, 1.0, 0.0, 1.0, 2.0);
    let sol = solve(&s).unwrap();
    for cells in [2000usize, 4000] {
        let grid = FvGrid::new(-2.0, 4.0, cells, 0.45, 0.5).unwrap();
        let t0 = Instant::now();
        let run = run_fv_snapshots(&s, &grid, &[0.25, 0.5]).unwrap();
        for w in [10usize, 15, 25, 40] {
            let (measured, predicted) = measure_concentration(&run.field, &sol, w).unwrap();
            println!(
                "  cells={cells} window=±{w}: measured = {measured:.4}, predicted = {predicted:.4}, rel err = {:.3}",
                (measured - predicted).abs() / predicted
            );
        }
        let checks = compare_speeds(&run.snapshots, &sol).unwrap();
        for c in &checks {
            println!(
                "  cells={cells} t={:.2} delta pos err = {:?} cells",
                c.time, c.error_cells
            );
        }
        let maxm = run.field.m.iter().cloned().fold(0.0_f64, f64::max);
        println!(
            "  cells={cells}: max density = {maxm:.1}, steps = {}, elapsed = {:?}",
            run.diagnostics.steps,
            t0.elapsed()
        );
    }
}
