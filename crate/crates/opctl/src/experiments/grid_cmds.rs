//! Grid-function experiments: the commutator residual, jump blow-up,
//! generator-domain diagnostics, the cumulative integral, extension
//! skewness, and running averages.

use num_complex::Complex64 as C64;
use opspectra::waveline::{
    averaging_convergence, d3_skewness_check, difference_quotient_diagnostic, heisenberg_residual,
    jump_blowup_profile, volterra_apply, GridFunction, MomentumMode,
};
use opspectra::{OpError, Result};
use serde_json::json;

use crate::output::{fmt_float, CsvTable, Report};
use crate::rng::rng_for;
use rand::Rng;

/// Named test functions shared by the grid subcommands.
pub fn named_function(name: &str, left: f64, right: f64, n: usize) -> Result<GridFunction> {
    match name {
        "gaussian" => GridFunction::from_real_fn(left, right, n, |s| (-s * s).exp()),
        // Unit step down at 0: constant on the left, zero on the right.
        "step" => GridFunction::from_real_fn(left, right, n, |s| if s < 0.0 { 1.0 } else { 0.0 }),
        other => Err(OpError::InvalidInput(format!(
            "unknown function '{other}' (expected gaussian or step)"
        ))),
    }
}

/// `|(QP - PQ)f + i f| / |f|` for a window Gaussian.
pub fn grid_heisenberg(n: usize, mode: MomentumMode) -> Result<(Report, Option<CsvTable>)> {
    let gaussian = |n: usize| named_function("gaussian", -10.0, 10.0, n);
    let residual = heisenberg_residual(&gaussian(n)?, mode)?;
    let (results, tolerances, verdict, mode_name) = match mode {
        MomentumMode::Spectral => (
            json!({"residual": residual}),
            json!({"residual": 1e-8}),
            residual <= 1e-8,
            "spectral",
        ),
        MomentumMode::CentralDifference => {
            let doubled = heisenberg_residual(&gaussian(2 * n)?, mode)?;
            let ratio = residual / doubled;
            (
                json!({
                    "residual": residual,
                    "residual_doubled_grid": doubled,
                    "halving_ratio": ratio,
                }),
                json!({"halving_ratio": [3.6, 4.4]}),
                (3.6..=4.4).contains(&ratio),
                "central_difference",
            )
        }
    };
    let report = Report {
        experiment: "grid-heisenberg",
        config: json!({"n": n, "mode": mode_name, "window": [-10.0, 10.0]}),
        results,
        tolerances,
        verdict,
    };
    Ok((report, None))
}

/// Difference-quotient blow-up along `t_n = 1/(n-1)` for a unit step.
pub fn jump_profile(grid_n: usize, half_window: f64) -> Result<(Report, Option<CsvTable>)> {
    let f = named_function("step", -half_window, half_window, grid_n)?;
    let rows = jump_blowup_profile(&f, 0.0)?;
    let mut table = CsvTable::new(&["n", "t_n", "squared_norm", "bound"]);
    let mut verdict = !rows.is_empty();
    for row in &rows {
        verdict &= row.squared_norm >= row.bound;
        table.push(vec![
            row.n.to_string(),
            fmt_float(row.t_n),
            fmt_float(row.squared_norm),
            fmt_float(row.bound),
        ]);
    }
    let last = rows.last();
    let report = Report {
        experiment: "jump-profile",
        config: json!({"grid_n": grid_n, "window": [-half_window, half_window]}),
        results: json!({
            "rows": rows.len(),
            "final_n": last.map(|r| r.n),
            "final_squared_norm": last.map(|r| r.squared_norm),
        }),
        tolerances: json!({"lower_bound": "n - 2 + 1/n per row"}),
        verdict,
    };
    Ok((report, Some(table)))
}

/// Convergence/blow-up diagnostic of the translation difference quotients.
pub fn domain_diagnostic(function: &str, n: usize) -> Result<(Report, Option<CsvTable>)> {
    let f = named_function(function, -10.0, 10.0, n)?;
    let diag = difference_quotient_diagnostic(&f, None)?;
    let expected = match function {
        "gaussian" => "converging",
        "step" => "blowing_up",
        _ => unreachable!("named_function guards"),
    };
    let mut table = CsvTable::new(&["t", "residual", "quotient_norm"]);
    for ((t, r), q) in diag
        .t_samples
        .iter()
        .zip(&diag.residuals)
        .zip(&diag.quotient_norms)
    {
        table.push(vec![fmt_float(*t), fmt_float(*r), fmt_float(*q)]);
    }
    let report = Report {
        experiment: "domain-diagnostic",
        config: json!({"function": function, "n": n, "window": [-10.0, 10.0]}),
        results: json!({
            "verdict": diag.verdict.as_str(),
            "blowup_exponent": diag.blowup_exponent,
            "t_samples": diag.t_samples,
            "residuals": diag.residuals,
            "quotient_norms": diag.quotient_norms,
        }),
        tolerances: json!({
            "monotonicity_slack_rel": 0.05,
            "blowup_exponent_cut": -0.4,
        }),
        verdict: diag.verdict.as_str() == expected,
    };
    Ok((report, Some(table)))
}

/// Cumulative integral of a seeded sample, with the contraction check.
pub fn volterra(n: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "volterra");
    let f = GridFunction::from_fn(0.0, 1.0, n, |_| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })?;
    let kf = volterra_apply(&f)?;
    let h = f.spacing();
    let bound = f.norm() * (1.0 + 5.0 * h);
    let mut table = CsvTable::new(&["s", "re", "im"]);
    for (j, v) in kf.values().iter().enumerate() {
        table.push(vec![
            fmt_float(kf.sample_point(j)),
            fmt_float(v.re),
            fmt_float(v.im),
        ]);
    }
    let report = Report {
        experiment: "volterra",
        config: json!({"n": n, "seed": seed}),
        results: json!({
            "input_norm": f.norm(),
            "image_norm": kf.norm(),
            "image_at_zero": kf.values()[0].norm(),
        }),
        tolerances: json!({"contraction_bound": bound}),
        verdict: kf.norm() <= bound && kf.values()[0].norm() == 0.0,
    };
    Ok((report, Some(table)))
}

/// Skewness probe of the extension `D(Kf + au) = f` on seeded
/// trigonometric polynomials.
pub fn d3_skew(n: usize, trials: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "d3-skew");
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let coeffs: Vec<(f64, f64, f64)> = (0..6)
            .map(|_| {
                (
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(1..=8) as f64,
                )
            })
            .collect();
        let trig = |phase: f64| {
            let coeffs = coeffs.clone();
            move |s: f64| -> f64 {
                coeffs
                    .iter()
                    .map(|(a, b, k)| {
                        a * (two_pi * k * s + phase).sin() + b * (two_pi * k * s + phase).cos()
                    })
                    .sum()
            }
        };
        let f1 = GridFunction::from_real_fn(0.0, 1.0, n, trig(0.0))?.project_out_constant();
        let f2 = GridFunction::from_real_fn(0.0, 1.0, n, trig(1.1))?.project_out_constant();
        let a1 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let a2 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let value = d3_skewness_check(&f1, &f2, a1, a2)?;
        let u = GridFunction::from_real_fn(0.0, 1.0, n, |_| 1.0)?;
        let g1 = volterra_apply(&f1)?.add(&u.scale(a1))?;
        let g2 = volterra_apply(&f2)?.add(&u.scale(a2))?;
        let scale = g1.norm() * f2.norm() + f1.norm() * g2.norm();
        worst = worst.max(value.norm() / scale.max(1e-300));
    }
    let report = Report {
        experiment: "d3-skew",
        config: json!({"n": n, "trials": trials, "seed": seed}),
        results: json!({"worst_relative_skewness": worst}),
        tolerances: json!({"relative_skewness": 1e-6}),
        verdict: worst <= 1e-6,
    };
    Ok((report, None))
}

/// Running-average residuals `|A_t f - f|` along a halving sequence.
pub fn averaging(function: &str, n: usize) -> Result<(Report, Option<CsvTable>)> {
    let (left, right) = (-2.0, 2.0);
    let f = named_function(function, left, right, n)?;
    let h = f.spacing();
    let mut k = 1usize.max((n / 16).next_power_of_two() / 2);
    let mut ts = Vec::new();
    while k >= 1 {
        ts.push(k as f64 * h);
        if k == 1 {
            break;
        }
        k /= 2;
    }
    let residuals = averaging_convergence(&f, &ts)?;
    let verdict = match function {
        // Smooth case: residuals decrease down the scale list.
        "gaussian" => residuals.windows(2).all(|w| w[1] <= w[0] * 1.01),
        // Step: the leading residual follows sqrt(t/3) within 5%.
        "step" => {
            let expect = (ts[0] / 3.0).sqrt();
            (residuals[0] - expect).abs() <= 0.05 * expect
        }
        _ => unreachable!("named_function guards"),
    };
    let mut table = CsvTable::new(&["t", "residual"]);
    for (t, r) in ts.iter().zip(&residuals) {
        table.push(vec![fmt_float(*t), fmt_float(*r)]);
    }
    let report = Report {
        experiment: "averaging",
        config: json!({"function": function, "n": n, "window": [left, right]}),
        results: json!({"ts": ts, "residuals": residuals}),
        tolerances: json!({
            "gaussian_monotonicity_slack_rel": 0.01,
            "step_scaling_rel": 0.05,
        }),
        verdict,
    };
    Ok((report, Some(table)))
}
