//! Cross-module property tests: algebraic identities the closed forms
//! must satisfy for arbitrary admissible data.

use proptest::prelude::*;

use riemann_awr::exact_riemann::{entropy_check, solve, SamplePoint, WavePattern};
use riemann_awr::model::{eigenvalues, frame_convert, Frame, ModelParams, RiemannSetup, State};
use riemann_awr::phase_plane::{classify, j1_curve, thresholds, Region};

fn params(a: f64, beta: f64) -> ModelParams {
    ModelParams::new(a, beta).unwrap()
}

fn setup(rho_l: f64, u_l: f64, rho_r: f64, u_r: f64, a: f64, beta: f64) -> RiemannSetup {
    RiemannSetup::new(rho_l, u_l, rho_r, u_r, params(a, beta)).unwrap()
}

/// Interior region-III data: u₊ < u₋ - A/ρ₋ by a definite margin.
fn delta_data() -> impl Strategy<Value = RiemannSetup> {
    (
        0.1..10.0_f64,  // rho_l
        0.1..10.0_f64,  // rho_r
        0.0..5.0_f64,   // u_r
        0.01..5.0_f64,  // pressure coefficient
        0.001..5.0_f64, // entropy gap
        -3.0..3.0_f64,  // friction
    )
        .prop_map(|(rho_l, rho_r, u_r, a, gap, beta)| {
            let u_l = u_r + a / rho_l + gap;
            setup(rho_l, u_l, rho_r, u_r, a, beta)
        })
}

/// Region I∪II data: u₊ above the S curve.
fn two_contact_data() -> impl Strategy<Value = RiemannSetup> {
    (
        0.1..10.0_f64,
        0.1..10.0_f64,
        0.1..5.0_f64,     // u_l
        0.01..5.0_f64,    // pressure coefficient
        0.001..0.999_f64, // fraction of the way up from S
        -3.0..3.0_f64,
    )
        .prop_map(|(rho_l, rho_r, u_l, a, frac, beta)| {
            // u_r between the S curve and u_l + 2 (covers II and I)
            let s = u_l - a / rho_l;
            let u_r = s + frac * (u_l + 2.0 - s);
            setup(rho_l, u_l, rho_r, u_r, a, beta)
        })
}

proptest! {
    #[test]
    fn eigenvalue_gap_matches_pressure_term(
        rho in 0.01..100.0_f64,
        v in -10.0..10.0_f64,
        t in 0.0..10.0_f64,
        a in 0.0..10.0_f64,
        beta in -5.0..5.0_f64,
    ) {
        let st = State::moving(rho, v).unwrap();
        let (l1, l2) = eigenvalues(&st, t, &params(a, beta)).unwrap();
        let expected = a / rho;
        let ulp = f64::EPSILON * l1.abs().max(l2.abs()).max(expected).max(1e-300);
        prop_assert!((l2 - l1 - expected).abs() <= ulp);
        prop_assert!(l1 <= l2);
    }

    #[test]
    fn frame_conversion_is_an_involution(
        rho in 0.1..10.0_f64,
        v in -10.0..10.0_f64,
        t in 0.0..10.0_f64,
        beta in -5.0..5.0_f64,
    ) {
        let p = params(1.0, beta);
        let s = State::moving(rho, v).unwrap();
        let fixed = frame_convert(&s, t, &p, Frame::Fixed);
        let back = frame_convert(&fixed, t, &p, Frame::Moving);
        prop_assert_eq!(back.rho, rho);
        // exact when v + beta t carries no rounding; otherwise within
        // one ulp of the fixed-frame magnitude
        let ulp = f64::EPSILON * v.abs().max(fixed.vel.abs()).max(1e-300);
        prop_assert!((back.vel - v).abs() <= ulp);
    }

    #[test]
    fn linear_degeneracy_along_eigenvectors(
        rho in 0.1..10.0_f64,
        v in -5.0..5.0_f64,
        a in 0.1..5.0_f64,
    ) {
        // directional finite difference of each eigenvalue along its own
        // eigenvector direction
        let p = params(a, 0.0);
        let h = 1e-6;
        for field in [1usize, 2] {
            let (dr, dv) = riemann_awr::model::right_eigenvector(field, rho, &p).unwrap();
            let norm = (dr * dr + dv * dv).sqrt();
            let lam = |r: f64, vv: f64| {
                let st = State::moving(r, vv).unwrap();
                let (l1, l2) = eigenvalues(&st, 0.0, &p).unwrap();
                if field == 1 { l1 } else { l2 }
            };
            let d = (lam(rho + h * dr / norm, v + h * dv / norm)
                - lam(rho - h * dr / norm, v - h * dv / norm)) / (2.0 * h);
            prop_assert!(d.abs() <= 1e-6, "field {} derivative {}", field, d);
        }
    }

    #[test]
    fn classification_matches_thresholds(
        rho_l in 0.1..10.0_f64,
        rho_r in 0.1..10.0_f64,
        u_l in 0.2..8.0_f64,
        frac in 0.01..0.99_f64,
        a_frac in 0.01..2.0_f64,
    ) {
        // 0 < u_r < u_l so both thresholds are meaningful
        let u_r = frac * u_l;
        let probe = setup(rho_l, u_l, rho_r, u_r, 1.0, 0.0);
        let th = thresholds(&probe).unwrap();
        prop_assert!(th.a0 < th.a1);
        let a = a_frac * th.a1;
        prop_assume!(a > 0.0 && (a - th.a0).abs() > 1e-12 * th.a0);
        let s = setup(rho_l, u_l, rho_r, u_r, a, 0.0);
        let region = classify(&s);
        if a > th.a0 && a < th.a1 {
            prop_assert_eq!(region, Region::II);
        } else if a < th.a0 {
            prop_assert_eq!(region, Region::IIIInterior);
        }
    }

    #[test]
    fn classification_scale_invariant(
        rho_l in 0.1..10.0_f64,
        rho_r in 0.1..10.0_f64,
        u_l in -5.0..5.0_f64,
        u_r in -5.0..5.0_f64,
        a in 0.01..5.0_f64,
        k in 0.001..1000.0_f64,
    ) {
        // all defining inequalities depend on A/rho_l only
        let base = setup(rho_l, u_l, rho_r, u_r, a, 0.0);
        let scaled = setup(k * rho_l, u_l, k * rho_r, u_r, k * a, 0.0);
        prop_assert_eq!(classify(&base), classify(&scaled));
    }

    #[test]
    fn j1_curve_satisfies_its_relation_and_decreases(
        rho_l in 0.1..10.0_f64,
        u_l in -5.0..5.0_f64,
        a in 0.01..5.0_f64,
        rho in 0.1..10.0_f64,
    ) {
        let p = params(a, 0.0);
        let left = State::moving(rho_l, u_l).unwrap();
        let v = j1_curve(rho, &left, &p).unwrap();
        let lhs = v - a / rho;
        let rhs = u_l - a / rho_l;
        let scale = v.abs() + a / rho + u_l.abs() + a / rho_l;
        prop_assert!((lhs - rhs).abs() <= 1e-14 * scale.max(1.0));
        let v2 = j1_curve(rho * 1.5, &left, &p).unwrap();
        prop_assert!(v2 < v);
    }

    #[test]
    fn delta_speed_solves_the_jump_quadratic(s in delta_data()) {
        let sol = solve(&s).unwrap();
        let p = match sol.pattern {
            WavePattern::DeltaShock(p) => p,
            ref other => return Err(TestCaseError::fail(format!("not delta: {other:?}"))),
        };
        let (res, scale) = p.quadratic_residual(&s);
        prop_assert!(res.abs() <= 1e-12 * scale.max(1e-30), "residual {} scale {}", res, scale);
        prop_assert!(p.w0 >= 0.0);
    }

    #[test]
    fn delta_is_over_compressive(s in delta_data(), t in 0.0..10.0_f64) {
        let sol = solve(&s).unwrap();
        let p = match sol.pattern {
            WavePattern::DeltaShock(p) => p,
            ref other => return Err(TestCaseError::fail(format!("not delta: {other:?}"))),
        };
        let report = entropy_check(&p, &s);
        prop_assert!(report.consistent);
        prop_assert!(report.ordering_ok);
        prop_assert!(report.ordering_strict);
        // the same ordering holds at any positive time: the drift beta*t
        // shifts every speed equally
        let beta = s.params.friction;
        let sigma = p.sigma(t);
        let (l1m, l2m) = eigenvalues(&s.left, t, &s.params).unwrap();
        let (l1p, l2p) = eigenvalues(&s.right, t, &s.params).unwrap();
        let tol = 1e-12 * (1.0 + sigma.abs() + beta.abs() * t);
        prop_assert!(l1p <= l2p + tol && l2p <= sigma + tol);
        prop_assert!(sigma <= l1m + tol && l1m <= l2m + tol);
    }

    #[test]
    fn equal_density_strength_reduces_to_momentum_jump(
        rho in 0.1..10.0_f64,
        u_r in 0.0..5.0_f64,
        a in 0.01..5.0_f64,
        gap in 0.001..5.0_f64,
    ) {
        let u_l = u_r + a / rho + gap;
        let s = setup(rho, u_l, rho, u_r, a, 0.0);
        let sol = solve(&s).unwrap();
        if let WavePattern::DeltaShock(p) = sol.pattern {
            let expected = rho * u_l - rho * u_r;
            prop_assert!((p.w0 - expected).abs() <= 1e-12 * expected.abs());
        } else {
            return Err(TestCaseError::fail("not delta"));
        }
    }

    #[test]
    fn mass_between_contacts_is_linear_in_time(s in two_contact_data(), t in 0.01..10.0_f64) {
        let sol = solve(&s).unwrap();
        let p = match sol.pattern {
            WavePattern::TwoContacts(p) => p,
            ref other => return Err(TestCaseError::fail(format!("not two contacts: {other:?}"))),
        };
        let mass = p.intermediate.rho * p.contact_gap(t);
        let expected = s.params.pressure_coeff * t;
        prop_assert!(
            (mass - expected).abs() <= 1e-12 * expected,
            "mass {} vs {}", mass, expected
        );
        // and the J1 relation pins the intermediate state
        let lhs = p.intermediate.vel - s.params.pressure_coeff / p.intermediate.rho;
        let rhs = p.j1_speed0;
        let scale = lhs.abs() + rhs.abs() + s.left.vel.abs() + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-13 * scale);
    }

    #[test]
    fn sampling_is_frame_consistent(
        s in delta_data(),
        x in -20.0..20.0_f64,
        t in 0.01..5.0_f64,
    ) {
        let sol = solve(&s).unwrap();
        let beta = s.params.friction;
        let fixed = sol.sample_in_frame(x, t, Frame::Fixed).unwrap();
        let moving = sol.sample_in_frame(x, t, Frame::Moving).unwrap();
        match (fixed, moving) {
            (SamplePoint::Smooth(f), SamplePoint::Smooth(m)) => {
                prop_assert_eq!(f.rho, m.rho);
                let mapped = m.vel + beta * t;
                prop_assert!((f.vel - mapped).abs() <= 1e-13 * (1.0 + f.vel.abs()));
            }
            (SamplePoint::OnDelta { u_delta: a, .. }, SamplePoint::OnDelta { u_delta: b, .. }) => {
                prop_assert_eq!(a, b);
            }
            (f, m) => return Err(TestCaseError::fail(format!("kind mismatch {f:?} vs {m:?}"))),
        }
    }

    #[test]
    fn friction_free_solutions_are_self_similar(
        s in two_contact_data(),
        x in -20.0..20.0_f64,
        t in 0.01..5.0_f64,
        k in 0.01..100.0_f64,
    ) {
        let s = setup(s.left.rho, s.left.vel, s.right.rho, s.right.vel,
                      s.params.pressure_coeff, 0.0);
        let sol = solve(&s).unwrap();
        let a = sol.sample(x, t).unwrap();
        let b = sol.sample(k * x, k * t).unwrap();
        match (a, b) {
            (SamplePoint::Smooth(p), SamplePoint::Smooth(q)) => {
                prop_assert_eq!(p.rho, q.rho);
                prop_assert_eq!(p.vel, q.vel);
            }
            (SamplePoint::OnDelta { u_delta: p, .. }, SamplePoint::OnDelta { u_delta: q, .. }) => {
                prop_assert_eq!(p, q);
            }
            (p, q) => return Err(TestCaseError::fail(format!("kind mismatch {p:?} vs {q:?}"))),
        }
    }
}

#[test]
fn delta_speed_is_continuous_across_the_density_branch() {
    // approach the equal-density formula from both sides; the deviation
    // shrinks monotonically through eps = 1e-4, 1e-6, 1e-8
    let v_at = |rho_r: f64| -> f64 {
        let s = setup(1.0, 3.0, rho_r, 0.0, 1.0, 0.0);
        match solve(&s).unwrap().pattern {
            WavePattern::DeltaShock(p) => p.v_delta,
            ref other => panic!("not delta: {other:?}"),
        }
    };
    let base = v_at(1.0);
    assert_eq!(base, 1.0);
    for sign in [1.0, -1.0] {
        let errs: Vec<f64> = [1e-4, 1e-6, 1e-8]
            .iter()
            .map(|eps| (v_at(1.0 + sign * eps) - base).abs())
            .collect();
        assert!(
            errs[1] < errs[0] && errs[2] <= errs[1],
            "sign {sign}: errors not monotone: {errs:?}"
        );
        assert!(errs[2] <= 1e-7);
    }
}

#[test]
fn transport_delta_agrees_with_vanishing_pressure_formulas() {
    // the A -> 0 limits of the delta speed and strength coincide with
    // the transport-equation delta for unequal and equal densities
    let s = setup(4.0, 3.0, 1.0, 1.0, 1e-10, 0.0);
    if let WavePattern::DeltaShock(p) = solve(&s).unwrap().pattern {
        assert!((p.v_delta - 7.0 / 3.0).abs() < 1e-9);
        assert!((p.w0 - 4.0).abs() < 1e-9);
    } else {
        panic!("expected delta");
    }
}
