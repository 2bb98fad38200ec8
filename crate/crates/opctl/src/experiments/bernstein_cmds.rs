//! Polynomial-approximation experiments.

use opspectra::bernstein::{
    basis_row, bernstein_derivative_eval, bernstein_eval, moment_identities_check, uniform_error,
    BernsteinModel, MomentReport,
};
use opspectra::{OpError, Result};
use serde_json::json;

use crate::output::{fmt_float, CsvTable, Report};

type RealFn = fn(f64) -> f64;

fn named_pair(name: &str) -> Result<(RealFn, RealFn)> {
    match name {
        "x2" => Ok((|x| x * x, |x| 2.0 * x)),
        "x3" => Ok((|x| x * x * x, |x| 3.0 * x * x)),
        "sinpi" => Ok((
            |x| (std::f64::consts::PI * x).sin() / std::f64::consts::PI,
            |x| (std::f64::consts::PI * x).cos(),
        )),
        other => Err(OpError::InvalidInput(format!(
            "unknown function '{other}' (expected x2, x3 or sinpi)"
        ))),
    }
}

/// Approximant table and sup errors for a named function at degree `n`.
pub fn bernstein_approx(n: usize, function: &str, points: usize) -> Result<(Report, Option<CsvTable>)> {
    let (f, f_prime) = named_pair(function)?;
    if points < 2 {
        return Err(OpError::InvalidInput("need at least 2 table points".into()));
    }
    let model = BernsteinModel::from_fn(n, f)?;
    let mut table = CsvTable::new(&["x", "f", "bn", "f_prime", "bn_prime"]);
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        table.push(vec![
            fmt_float(x),
            fmt_float(f(x)),
            fmt_float(bernstein_eval(&model, x)?),
            fmt_float(f_prime(x)),
            fmt_float(bernstein_derivative_eval(&model, x)?),
        ]);
    }
    let (sup_err, sup_deriv_err) = uniform_error(f, f_prime, n)?;
    let (verdict, tolerances) = if function == "x2" {
        // Closed form: the sup error is exactly 1/(4n).
        let exact = 1.0 / (4.0 * n as f64);
        (
            (sup_err - exact).abs() <= 1e-10,
            json!({"sup_error_exact": exact, "sup_error_slack": 1e-10}),
        )
    } else {
        // Refinement: halving the degree must not give a smaller error.
        let coarse = uniform_error(f, f_prime, (n / 2).max(1))?;
        (
            sup_err < coarse.0 && sup_deriv_err < coarse.1,
            json!({"strict_decay_from_degree": (n / 2).max(1)}),
        )
    };
    let report = Report {
        experiment: "bernstein-approx",
        config: json!({"n": n, "function": function, "points": points}),
        results: json!({"sup_error": sup_err, "sup_derivative_error": sup_deriv_err}),
        tolerances,
        verdict,
    };
    Ok((report, Some(table)))
}

/// Both sides of the six moment identities at a probe point.
pub fn bernstein_identities(n: usize, x: f64) -> Result<(Report, Option<CsvTable>)> {
    let report_data = moment_identities_check(n, &[x])?;
    let nf = n as f64;
    let b = basis_row(n, x);
    let moment = |power: i32| -> f64 {
        b.iter()
            .enumerate()
            .map(|(k, w)| w * (k as f64 / nf).powi(power))
            .sum()
    };
    let central = |power: i32| -> f64 {
        b.iter()
            .enumerate()
            .map(|(k, w)| w * (k as f64 / nf - x).powi(power))
            .sum()
    };
    let closed = [
        x,
        ((nf - 1.0) * x * x + x) / nf,
        ((nf - 1.0) * (nf - 2.0) * x.powi(3) + 3.0 * (nf - 1.0) * x * x + x) / (nf * nf),
        ((nf - 1.0) * (nf - 2.0) * (nf - 3.0) * x.powi(4)
            + 6.0 * (nf - 1.0) * (nf - 2.0) * x.powi(3)
            + 7.0 * (nf - 1.0) * x * x
            + x)
            / nf.powi(3),
        x * (1.0 - x) / nf,
        x * (1.0 - x) * ((3.0 * nf - 6.0) * x * (1.0 - x) + 1.0) / nf.powi(3),
    ];
    let direct = [
        moment(1),
        moment(2),
        moment(3),
        moment(4),
        central(2),
        central(4),
    ];
    let mut identities = serde_json::Map::new();
    for ((label, d), c) in MomentReport::labels().iter().zip(direct).zip(closed) {
        identities.insert(
            label.to_string(),
            json!({"direct_sum": d, "closed_form": c}),
        );
    }
    let bound = 1e-10 * nf;
    let report = Report {
        experiment: "bernstein-identities",
        config: json!({"n": n, "x": x}),
        results: json!({
            "identities": identities,
            "worst_gap": report_data.worst(),
        }),
        tolerances: json!({"gap": bound}),
        verdict: report_data.worst() <= bound,
    };
    Ok((report, None))
}
