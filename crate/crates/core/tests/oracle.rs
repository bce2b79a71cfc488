use osc_identity::landau::{closed_form, solve_hierarchy, solve_tau_hierarchy, SolveConfig};
use osc_identity::oracle::*;
use osc_identity::quad::QuadConfig;
use std::f64::consts::{FRAC_PI_2, PI};

fn cfg() -> QuadConfig {
    QuadConfig::default().with_rel_tol(1e-8)
}

#[test]
fn i1_from_damped_quadrature() {
    let r = direct_i1(&DampingSchedule::default(), &cfg()).unwrap();
    assert!((r.value - FRAC_PI_2).abs() < 1e-3, "{r:?}");
    // Extrapolants form a contracting sequence.
    let steps: Vec<f64> = r.extrapolants.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    assert!(steps.windows(2).all(|w| w[1] < w[0]), "{steps:?}");
}

#[test]
fn damped_i1_closed_form_over_schedule() {
    for &eps in &DampingSchedule::default().eps_list {
        let (v, _) = damped_i1(eps, &cfg()).unwrap();
        assert!((v - PI / (2.0 * (1.0 + eps * eps).sqrt())).abs() < 1e-7);
    }
}

#[test]
fn tau1_against_hierarchy() {
    let oracle = direct_tau1(0.0, &DampingSchedule::default(), &cfg()).unwrap();
    let h = solve_hierarchy(1, &SolveConfig::default()).unwrap();
    assert!((oracle.value - h.tau(1, 0.0).unwrap()).abs() < 1e-3);
    let far_left = direct_tau1(-10.0, &DampingSchedule::default(), &cfg()).unwrap();
    assert!(far_left.value.abs() <= 0.05);
    assert!((far_left.value - h.tau(1, -10.0).unwrap()).abs() < 1e-5);
}

#[test]
fn tau1_near_the_right_edge() {
    let r = direct_tau1(8.0, &DampingSchedule::halving(0.05, 4, 2), &cfg()).unwrap();
    assert!((r.value - (FRAC_PI_2 - tau1_tail_estimate(8.0))).abs() < 1e-2, "{r:?}");
}

#[test]
fn i2_from_damped_quadrature() {
    let r = direct_i2(&DampingSchedule::default(), &cfg()).unwrap();
    assert!((r.value - PI * PI / 16.0).abs() < 1e-2);
    let h = solve_tau_hierarchy(2, &SolveConfig::default()).unwrap();
    assert!((r.value - h.values[1]).abs() <= r.abs_error_estimate + h.errors[1] + 1e-6);
    assert!((h.values[1] - closed_form(2)).abs() < 1e-6);
}

#[test]
fn damped_i2_regression_baseline() {
    let (v, _) = damped_i2(0.05, &QuadConfig::default()).unwrap();
    assert!((v - 0.595_839_025_883_578).abs() < 1e-9, "{v}");
}

#[test]
fn unordered_plane_doubles_the_ordered_triangle() {
    for &eps in &[0.2, 0.05] {
        let (half, _) = damped_i1(eps, &cfg()).unwrap();
        let (full, _) = damped_full_plane(eps, &cfg()).unwrap();
        assert!((full - 2.0 * half).abs() < 1e-6);
    }
}
