//! Matrix-level experiments: commutator obstructions, spectral symmetry,
//! the explicit inverse construction, ladder truncations, spectral
//! compressions, the non-preclosable product, eigendecompositions, and
//! polar factors.

use num_complex::Complex64 as C64;
use opspectra::ccr::{
    preclosed_failure_demo, spectrum_symmetry_check, trace_obstruction, truncated_canonical_pair,
    truncation_identity_check, wielandt_inverse,
};
use opspectra::numkernel::CMat;
use opspectra::quanta::Constants;
use opspectra::spectral::{hermitian_eigen, polar_decompose, range_projection, spectral_resolution};
use opspectra::waveline::{momentum_matrix_central, position_matrix, GridFunction};
use opspectra::Result;
use serde_json::json;

use crate::output::{fmt_float, CsvTable, Report};
use crate::rng::{random_cmat, random_hermitian, rng_for};

fn complex_json(z: C64) -> serde_json::Value {
    json!({"re": z.re, "im": z.im})
}

/// Trace and defect of `[A, B]` against `+/- i hbar I` for a seeded
/// random pair or the ladder truncation.
pub fn ccr_obstruction(
    n: usize,
    seed: u64,
    oscillator: bool,
    hbar: f64,
    physical: bool,
) -> Result<(Report, Option<CsvTable>)> {
    let hbar = if physical {
        Constants::reference().hbar()
    } else {
        hbar
    };
    let (a, b, source) = if oscillator {
        let pair = truncated_canonical_pair(n, hbar)?;
        (pair.q, pair.p, "oscillator")
    } else {
        let mut rng = rng_for(seed, "ccr-obstruction");
        (random_cmat(&mut rng, n), random_cmat(&mut rng, n), "random")
    };
    let report_data = trace_obstruction(&a, &b, hbar)?;
    let trace_bound = 1e-9 * n as f64 * a.operator_norm() * b.operator_norm();
    let verdict = report_data.commutator_trace.norm() <= trace_bound
        && report_data.defect_norm >= hbar * (1.0 - 1e-12);
    let report = Report {
        experiment: "ccr-obstruction",
        config: json!({
            "n": n,
            "seed": seed,
            "source": source,
            "hbar": hbar,
            "physical": physical,
        }),
        results: json!({
            "commutator_trace": complex_json(report_data.commutator_trace),
            "defect_norm": report_data.defect_norm,
            "defect_norm_opposite_sign": report_data.defect_norm_opposite_sign,
            "defect_location": [report_data.defect_location.0, report_data.defect_location.1],
        }),
        tolerances: json!({"trace_bound": trace_bound, "defect_floor": hbar}),
        verdict,
    };
    Ok((report, None))
}

/// Characteristic polynomial comparison of `AB` against `BA`.
pub fn spectrum_symmetry(n: usize, seed: u64, tolerance: f64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "spectrum-symmetry");
    let a = random_cmat(&mut rng, n);
    let b = random_cmat(&mut rng, n);
    let sym = spectrum_symmetry_check(&a, &b, tolerance)?;
    let report = Report {
        experiment: "spectrum-symmetry",
        config: json!({"n": n, "seed": seed}),
        results: json!({
            "max_coeff_gap_rel": sym.max_coeff_gap,
            "max_root_gap": sym.max_root_gap,
        }),
        tolerances: json!({"coeff_gap_rel": tolerance}),
        verdict: sym.pass,
    };
    Ok((report, None))
}

/// The inverse of `I - BA` assembled from `(I - AB)^{-1}`.
pub fn wielandt(n: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "wielandt");
    let scale = |m: CMat| {
        let norm = m.operator_norm();
        m.scale(C64::new(0.45 / norm, 0.0))
    };
    let a = scale(random_cmat(&mut rng, n));
    let b = scale(random_cmat(&mut rng, n));
    let c = wielandt_inverse(&a, &b)?;
    let m = CMat::identity(n).sub(&a.matmul(&b)?)?;
    let eig = hermitian_eigen(&m.adjoint().matmul(&m)?)?;
    let cond = (eig.eigenvalues.last().unwrap() / eig.eigenvalues.first().unwrap()).sqrt();
    let i_ba = CMat::identity(n).sub(&b.matmul(&a)?)?;
    let left = i_ba.matmul(&c)?.sub(&CMat::identity(n))?.operator_norm();
    let right = c.matmul(&i_ba)?.sub(&CMat::identity(n))?.operator_norm();
    let bound = 1e-9 * cond;
    let report = Report {
        experiment: "wielandt",
        config: json!({"n": n, "seed": seed}),
        results: json!({
            "condition_number": cond,
            "left_residual": left,
            "right_residual": right,
        }),
        tolerances: json!({"residual": bound}),
        verdict: left <= bound && right <= bound,
    };
    Ok((report, None))
}

/// Ladder truncation: the commutator defect is a single corner entry.
pub fn oscillator_truncation(n: usize, hbar: f64, physical: bool) -> Result<(Report, Option<CsvTable>)> {
    let hbar = if physical {
        Constants::reference().hbar()
    } else {
        hbar
    };
    let pair = truncated_canonical_pair(n, hbar)?;
    let defect = pair
        .commutator()
        .sub(&CMat::identity(n).scale(C64::new(0.0, hbar)))?;
    let mut off_corner: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            if (r, c) != (n - 1, n - 1) {
                off_corner = off_corner.max(defect.at(r, c).norm());
            }
        }
    }
    let corner = defect.at(n - 1, n - 1);
    let corner_gap = (corner - C64::new(0.0, -hbar * n as f64)).norm();
    let trace = pair.commutator().trace()?.norm();
    let obstruction = pair.obstruction();
    let verdict = off_corner <= 1e-12 * hbar.max(1.0)
        && corner_gap <= 1e-12 * n as f64 * hbar.max(1.0)
        && trace <= 1e-12 * hbar.max(1.0);
    let report = Report {
        experiment: "oscillator-truncation",
        config: json!({"n": n, "hbar": hbar, "physical": physical}),
        results: json!({
            "defect_norm": obstruction.defect_norm,
            "defect_location": [obstruction.defect_location.0, obstruction.defect_location.1],
            "corner_value": complex_json(corner),
            "off_corner_max": off_corner,
            "commutator_trace_abs": trace,
        }),
        tolerances: json!({"entrywise": 1e-12, "trace": 1e-12}),
        verdict,
    };
    Ok((report, None))
}

/// Compression identity for the grid momentum/position pair.
pub fn truncation_identity(grid_n: usize, cutoffs: &[f64]) -> Result<(Report, Option<CsvTable>)> {
    let grid = GridFunction::zero(0.0, 1.0, grid_n)?;
    let p = momentum_matrix_central(&grid);
    let q = position_matrix(&grid);
    let check = truncation_identity_check(&p, &q, cutoffs)?;
    let mut rows = Vec::new();
    let mut verdict = true;
    for r in &check.reports {
        verdict &= r.residual <= 1e-8 * check.scale;
        verdict &= r.truncated_trace.norm() <= 1e-9 * check.scale;
        rows.push(json!({
            "cutoff": r.cutoff,
            "rank": r.rank,
            "residual": r.residual,
            "compressed_trace": complex_json(r.truncated_trace),
        }));
    }
    let report = Report {
        experiment: "truncation-identity",
        config: json!({"grid_n": grid_n, "cutoffs": cutoffs}),
        results: json!({
            "scale": check.scale,
            "commutator_trace": complex_json(check.commutator_trace),
            "per_cutoff": rows,
        }),
        tolerances: json!({
            "identity_residual": 1e-8 * check.scale,
            "compressed_trace": 1e-9 * check.scale,
        }),
        verdict,
    };
    Ok((report, None))
}

/// Shrinking inputs with a constant image under `BT`.
pub fn preclosed_demo(m_max: usize, dim: usize) -> Result<(Report, Option<CsvTable>)> {
    let rows = preclosed_failure_demo(m_max, dim)?;
    let mut table = CsvTable::new(&["m", "u_norm", "image_distance"]);
    let mut verdict = true;
    let mut json_rows = Vec::new();
    for row in &rows {
        verdict &= row.image_distance == 0.0;
        table.push(vec![
            row.m.to_string(),
            fmt_float(row.u_norm),
            fmt_float(row.image_distance),
        ]);
        json_rows.push(json!({
            "m": row.m,
            "u_norm": row.u_norm,
            "image_distance": row.image_distance,
        }));
    }
    let report = Report {
        experiment: "preclosed-demo",
        config: json!({"m_max": m_max, "dim": dim}),
        results: json!({"rows": json_rows}),
        tolerances: json!({"image_distance": 0.0}),
        verdict,
    };
    Ok((report, Some(table)))
}

/// Eigensystem and spectral resolution of a seeded Hermitian matrix.
pub fn spectral_decompose(n: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "spectral-decompose");
    let a = random_hermitian(&mut rng, n);
    let norm = a.operator_norm();
    let eig = hermitian_eigen(&a)?;
    let res = spectral_resolution(&a)?;
    let recon = res.reconstruct().sub(&a)?.operator_norm();
    let mut product_gap: f64 = 0.0;
    for (i, p) in res.projections.iter().enumerate() {
        for (j, q) in res.projections.iter().enumerate() {
            let prod = p.matmul(q)?;
            let diff = prod.sub(&res.projections[i.min(j)])?.max_abs();
            product_gap = product_gap.max(diff);
        }
    }
    let verdict = recon <= 1e-9 * norm.max(1.0) && product_gap <= 1e-9;
    let report = Report {
        experiment: "spectral-decompose",
        config: json!({"n": n, "seed": seed}),
        results: json!({
            "eigenvalues": eig.eigenvalues,
            "thresholds": res.thresholds,
            "reconstruction_residual": recon,
            "projection_product_gap": product_gap,
        }),
        tolerances: json!({
            "reconstruction": 1e-9 * norm.max(1.0),
            "projection_product": 1e-9,
        }),
        verdict,
    };
    Ok((report, None))
}

/// Polar factors of a seeded matrix with the witness identities.
pub fn polar(n: usize, seed: u64) -> Result<(Report, Option<CsvTable>)> {
    let mut rng = rng_for(seed, "polar");
    let t = random_cmat(&mut rng, n);
    let norm = t.operator_norm();
    let parts = polar_decompose(&t)?;
    let v = &parts.isometry;
    let h = &parts.modulus;
    let rebuild = v.matmul(h)?.sub(&t)?.operator_norm();
    let r_h = range_projection(h)?;
    let r_t = range_projection(&t)?;
    let initial = v.adjoint().matmul(v)?.sub(&r_h)?.max_abs();
    let final_ = v.matmul(&v.adjoint())?.sub(&r_t)?.max_abs();
    let bound = 1e-9 * norm.max(1.0);
    let verdict = rebuild <= bound && initial <= bound && final_ <= bound;
    let report = Report {
        experiment: "polar",
        config: json!({"n": n, "seed": seed}),
        results: json!({
            "rebuild_residual": rebuild,
            "initial_projection_gap": initial,
            "final_projection_gap": final_,
        }),
        tolerances: json!({"residual": bound}),
        verdict,
    };
    Ok((report, None))
}
