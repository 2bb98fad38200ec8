//! Obstructions to the commutation relation `QP - PQ = i hbar I` in
//! bounded settings, exercised at matrix scale.
//!
//! The trace functional kills every commutator, so no pair of matrices
//! satisfies the relation; [`trace_obstruction`] quantifies how far a
//! given pair falls short. [`spectrum_symmetry_check`] verifies the
//! underlying spectral identity `sp(AB) u {0} = sp(BA) u {0}` through
//! characteristic polynomials, and [`wielandt_inverse`] builds the
//! explicit inverse of `I - BA` from an inverse of `I - AB`.
//!
//! [`truncated_canonical_pair`] produces the standard ladder-operator
//! truncation, whose commutator equals `i hbar I` except for a single
//! compensating entry. [`truncation_identity_check`] verifies the
//! compression identity `E PE E AE - E AE E PE = E [P,A] E` for spectral
//! projections `E` of `P`, and [`preclosed_failure_demo`] exhibits a
//! bounded `B` and closed diagonal `T` with `B T u_m` constant while
//! `u_m -> 0`.

use num_complex::Complex64 as C64;

use crate::numkernel::CMat;
use crate::spectral::{right_singular_basis, spectral_resolution};
use crate::{tol, OpError, Result};

/// Finite truncation of a canonical position/momentum pair built from
/// ladder matrices on `levels` basis states.
#[derive(Debug, Clone)]
pub struct CanonicalPair {
    pub q: CMat,
    pub p: CMat,
    pub levels: usize,
    pub hbar: f64,
}

/// How far a matrix pair is from satisfying `[A, B] = i hbar I`.
///
/// `defect_norm` measures against `+i hbar I` and
/// `defect_norm_opposite_sign` against `-i hbar I`; the sign of the
/// relation is convention-dependent, so both are reported.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub commutator_trace: C64,
    pub defect_norm: f64,
    pub defect_norm_opposite_sign: f64,
    /// Row/column of the largest-magnitude entry of `[A,B] - i hbar I`.
    pub defect_location: (usize, usize),
}

/// Outcome of comparing `char_poly(AB)` against `char_poly(BA)`.
#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub pass: bool,
    /// Largest coefficient gap, relative to the coefficient scale.
    pub max_coeff_gap: f64,
    /// Largest distance in the greedy pairing of nonzero roots.
    pub max_root_gap: f64,
}

/// Per-cutoff outcome of the compression identity check.
#[derive(Debug, Clone)]
pub struct CutoffReport {
    pub cutoff: f64,
    /// Operator-norm residual of `EPE EAE - EAE EPE - E[P,A]E`.
    pub residual: f64,
    /// Trace of the compressed commutator `E [P,A] E`.
    pub truncated_trace: C64,
    /// Rank of the spectral projection `E`.
    pub rank: usize,
}

/// Full outcome of [`truncation_identity_check`].
#[derive(Debug, Clone)]
pub struct TruncationCheck {
    pub reports: Vec<CutoffReport>,
    /// Trace of the uncompressed commutator `[P, A]`.
    pub commutator_trace: C64,
    /// The residual scale `(|P| + 1)(|A| + 1)`.
    pub scale: f64,
}

/// One row of the non-preclosable-product table.
#[derive(Debug, Clone)]
pub struct PreclosedRow {
    pub m: usize,
    pub u_norm: f64,
    /// `|B T u_m - z|`; stays exactly zero while `|u_m|` shrinks.
    pub image_distance: f64,
}

/// Trace and defect of `[A, B]` against `+/- i hbar I`.
pub fn trace_obstruction(a: &CMat, b: &CMat, hbar: f64) -> Result<ObstructionReport> {
    let comm = a.commutator(b)?;
    let n = comm.rows();
    let i_hbar = CMat::identity(n).scale(C64::new(0.0, hbar));
    let defect_plus = comm.sub(&i_hbar)?;
    let defect_minus = comm.add(&i_hbar)?;
    let mut loc = (0, 0);
    let mut best = -1.0;
    for r in 0..n {
        for c in 0..n {
            let mag = defect_plus.at(r, c).norm();
            if mag > best {
                best = mag;
                loc = (r, c);
            }
        }
    }
    Ok(ObstructionReport {
        commutator_trace: comm.trace()?,
        defect_norm: defect_plus.operator_norm(),
        defect_norm_opposite_sign: defect_minus.operator_norm(),
        defect_location: loc,
    })
}

/// Compare the characteristic polynomials of `AB` and `BA`
/// coefficientwise (they agree exactly for square matrices, which gives
/// the spectral identity up to `{0}`), and match their nonzero root
/// multisets by greedy nearest pairing as a secondary diagnostic.
pub fn spectrum_symmetry_check(a: &CMat, b: &CMat, tolerance: f64) -> Result<SymmetryReport> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(OpError::ShapeMismatch(format!(
            "spectrum symmetry needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.rows() > 16 {
        return Err(OpError::SizeGuard {
            size: a.rows(),
            guard: 16,
        });
    }
    let p_ab = a.matmul(b)?.char_poly()?;
    let p_ba = b.matmul(a)?.char_poly()?;
    let coeff_scale = p_ab
        .coeffs()
        .iter()
        .chain(p_ba.coeffs())
        .map(|c| c.norm())
        .fold(1.0, f64::max);
    let max_coeff_gap = p_ab
        .coeffs()
        .iter()
        .zip(p_ba.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / coeff_scale;

    let roots_ab = p_ab.roots()?;
    let roots_ba = p_ba.roots()?;
    let root_scale = roots_ab
        .iter()
        .chain(&roots_ba)
        .map(|r| r.norm())
        .fold(1.0, f64::max);
    let zero_cut = 1e-8 * root_scale;
    let nonzero =
        |rs: &[C64]| -> Vec<C64> { rs.iter().copied().filter(|r| r.norm() > zero_cut).collect() };
    let left = nonzero(&roots_ab);
    let mut right = nonzero(&roots_ba);
    let mut max_root_gap = 0.0_f64;
    for r in &left {
        if right.is_empty() {
            max_root_gap = f64::MAX;
            break;
        }
        let (idx, dist) = right
            .iter()
            .enumerate()
            .map(|(i, s)| (i, (r - s).norm()))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        max_root_gap = max_root_gap.max(dist);
        right.swap_remove(idx);
    }

    Ok(SymmetryReport {
        pass: max_coeff_gap <= tolerance,
        max_coeff_gap,
        max_root_gap,
    })
}

/// The inverse of `I - BA` assembled from an inverse of `I - AB`:
/// `C = B (I - AB)^{-1} A + I`.
///
/// Requires `I - AB` numerically invertible: its smallest singular value
/// must exceed [`tol::INVERTIBILITY_CUT`] times its norm.
pub fn wielandt_inverse(a: &CMat, b: &CMat) -> Result<CMat> {
    let n = if a.is_square() && b.is_square() && a.rows() == b.rows() {
        a.rows()
    } else {
        return Err(OpError::ShapeMismatch(format!(
            "inverse construction needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    };
    let identity = CMat::identity(n);
    let m = identity.sub(&a.matmul(b)?)?;
    let sv = right_singular_basis(&m)?;
    let sigma_min = sv.sigmas.iter().cloned().fold(f64::INFINITY, f64::min);
    let sigma_max = sv.sigmas.iter().cloned().fold(0.0, f64::max);
    let threshold = tol::INVERTIBILITY_CUT * sigma_max.max(1.0);
    if sigma_min <= threshold {
        return Err(OpError::Singular {
            sigma_min,
            threshold,
        });
    }
    b.matmul(&m.inverse()?)?.matmul(a)?.add(&identity)
}

/// Standard ladder truncation on `n` levels: `Q = sqrt(hbar/2)(a + a*)`,
/// `P = i sqrt(hbar/2)(a* - a)` with `a` the lowering matrix. The
/// commutator is `i hbar (I - n E_{n-1,n-1})`: the relation holds
/// everywhere except the single entry that restores trace zero.
pub fn truncated_canonical_pair(n: usize, hbar: f64) -> Result<CanonicalPair> {
    if n < 2 {
        return Err(OpError::InvalidInput(format!(
            "canonical truncation needs at least 2 levels, got {n}"
        )));
    }
    if hbar <= 0.0 {
        return Err(OpError::InvalidInput("hbar must be positive".into()));
    }
    let mut lower = CMat::zeros(n, n);
    for k in 1..n {
        lower.set(k - 1, k, C64::new((k as f64).sqrt(), 0.0));
    }
    let raise = lower.adjoint();
    let coef = (hbar / 2.0).sqrt();
    let q = lower.add(&raise)?.scale(C64::new(coef, 0.0));
    let p = raise.sub(&lower)?.scale(C64::new(0.0, coef));
    Ok(CanonicalPair {
        q,
        p,
        levels: n,
        hbar,
    })
}

impl CanonicalPair {
    /// `[Q, P]`.
    pub fn commutator(&self) -> CMat {
        self.q.commutator(&self.p).expect("equal square factors")
    }

    /// Obstruction report for this pair at its own `hbar`.
    pub fn obstruction(&self) -> ObstructionReport {
        trace_obstruction(&self.q, &self.p, self.hbar).expect("equal square factors")
    }
}

/// Verify `E PE E AE - E AE E PE = E [P,A] E` where `E` is the spectral
/// projection of the self-adjoint `P` for `[-cutoff, cutoff]`, and report
/// the trace of each compressed commutator (a genuine commutator trace,
/// hence zero).
pub fn truncation_identity_check(p: &CMat, a: &CMat, cutoffs: &[f64]) -> Result<TruncationCheck> {
    if !a.is_square() || a.rows() != p.rows() {
        return Err(OpError::ShapeMismatch(format!(
            "compression check needs equal square matrices, got {}x{} and {}x{}",
            p.rows(),
            p.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let resolution = spectral_resolution(p)?; // checks self-adjointness
    let b = p.commutator(a)?;
    let scale = (p.operator_norm() + 1.0) * (a.operator_norm() + 1.0);
    let mut reports = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let e = resolution.interval_projection(-cutoff, cutoff);
        let epe = e.matmul(p)?.matmul(&e)?;
        let eae = e.matmul(a)?.matmul(&e)?;
        let ebe = e.matmul(&b)?.matmul(&e)?;
        let lhs = epe.matmul(&eae)?.sub(&eae.matmul(&epe)?)?;
        let residual = lhs.sub(&ebe)?.operator_norm();
        let rank = e.trace()?.re.round() as usize;
        reports.push(CutoffReport {
            cutoff,
            residual,
            truncated_trace: ebe.trace()?,
            rank,
        });
    }
    Ok(TruncationCheck {
        reports,
        commutator_trace: b.trace()?,
        scale,
    })
}

/// Demonstrate a product `BT` that cannot be preclosed: `T` is the
/// diagonal `diag(1, 4, 9, ...)`, `B` the rank-one map `x -> <x, z> z`
/// with `z = sum n^{-1} e_n`, and `u_m = m^{-1} e_m`. Then `u_m -> 0`
/// while `B T u_m = z` for every `m`, so the table's image-distance
/// column stays identically zero against a shrinking input column.
pub fn preclosed_failure_demo(m_max: usize, dim: usize) -> Result<Vec<PreclosedRow>> {
    if m_max < 2 || dim < m_max {
        return Err(OpError::InvalidInput(format!(
            "need dim >= m_max >= 2, got m_max = {m_max}, dim = {dim}"
        )));
    }
    let t = CMat::diag_real(&(1..=dim).map(|k| (k * k) as f64).collect::<Vec<_>>());
    let z: Vec<C64> = (1..=dim).map(|k| C64::new(1.0 / k as f64, 0.0)).collect();
    let apply_b = |x: &[C64]| -> Vec<C64> {
        let inner: C64 = x.iter().zip(&z).map(|(xi, zi)| xi * zi.conj()).sum();
        z.iter().map(|zi| inner * zi).collect()
    };
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut u = vec![C64::new(0.0, 0.0); dim];
        u[m - 1] = C64::new(1.0 / m as f64, 0.0);
        let u_norm = u.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let tu = t.apply(&u)?;
        let btu = apply_b(&tu);
        let image_distance = btu
            .iter()
            .zip(&z)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        rows.push(PreclosedRow {
            m,
            u_norm,
            image_distance,
        });
    }
    Ok(rows)
}
