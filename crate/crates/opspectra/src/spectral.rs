//! Finite-dimensional spectral theory for Hermitian matrices.
//!
//! The eigensolver is a cyclic Jacobi iteration on complex Hermitian
//! input: each rotation is a real Jacobi rotation composed with a phase
//! that makes the pivot entry real, which annihilates the pivot exactly
//! and drives the off-diagonal Frobenius mass to zero quadratically.
//!
//! On top of the eigensolver sit the operations the rest of the crate
//! consumes: spectral resolutions (the increasing projection family
//! `E_lambda` of a self-adjoint matrix), pointwise functional calculus
//! `f(A)`, the one-parameter unitary group `exp(itH)`, polar
//! decomposition `T = VH`, and range/null projections.

use num_complex::Complex64 as C64;

use crate::numkernel::CMat;
use crate::{tol, OpError, Result};

/// Full eigensystem of a Hermitian matrix.
///
/// `basis` is unitary with eigenvector columns; `eigenvalues` ascend and
/// `basis * diag(eigenvalues) * basis^*` reconstructs the input.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub basis: CMat,
}

impl HermitianEigen {
    /// `basis * diag(f(lambda)) * basis^*`.
    pub fn assemble(&self, f: impl Fn(f64) -> C64) -> CMat {
        let d: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.basis
            .matmul(&CMat::diag(&d))
            .and_then(|m| m.matmul(&self.basis.adjoint()))
            .expect("square factors of equal size")
    }

    /// Rank-one projection onto the `idx`-th eigenvector.
    pub fn eigenprojection(&self, idx: usize) -> CMat {
        let n = self.basis.rows();
        CMat::from_fn(n, n, |r, c| {
            self.basis.at(r, idx) * self.basis.at(c, idx).conj()
        })
    }
}

/// Ascending eigenvalue thresholds paired with cumulative spectral
/// projections of a Hermitian matrix.
///
/// `projections[i]` projects onto the span of all eigenvectors with
/// eigenvalue at most `thresholds[i]`; the family increases and the last
/// projection is the identity.
#[derive(Debug, Clone)]
pub struct SpectralResolution {
    pub thresholds: Vec<f64>,
    pub projections: Vec<CMat>,
    dim: usize,
}

impl SpectralResolution {
    /// The projection `E_lambda`: the largest stored projection whose
    /// threshold does not exceed `lambda`, or zero below the spectrum.
    pub fn evaluate(&self, lambda: f64) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (t, p) in self.thresholds.iter().zip(&self.projections) {
            if *t <= lambda {
                out = p.clone();
            }
        }
        out
    }

    /// Spectral projection for the closed interval `[a, b]`.
    pub fn interval_projection(&self, a: f64, b: f64) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (t, jump) in self.thresholds.iter().zip(self.jumps()) {
            if *t >= a && *t <= b {
                out = out.add(&jump).expect("equal sizes");
            }
        }
        out
    }

    /// The jump projections `E_i - E_{i-1}`, one per threshold.
    pub fn jumps(&self) -> Vec<CMat> {
        let mut out = Vec::with_capacity(self.projections.len());
        let mut prev = CMat::zeros(self.dim, self.dim);
        for p in &self.projections {
            out.push(p.sub(&prev).expect("equal sizes"));
            prev = p.clone();
        }
        out
    }

    /// `sum_i lambda_i (E_i - E_{i-1})`.
    pub fn reconstruct(&self) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (t, jump) in self.thresholds.iter().zip(self.jumps()) {
            out = out
                .add(&jump.scale(C64::new(*t, 0.0)))
                .expect("equal sizes");
        }
        out
    }
}

/// Polar factors of a square matrix: `T = isometry * modulus` with
/// `modulus = (T^*T)^{1/2}` positive and `isometry` a partial isometry
/// from the range of the modulus onto the range of `T`.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub isometry: CMat,
    pub modulus: CMat,
}

fn check_hermitian(a: &CMat) -> Result<CMat> {
    let dev = a.hermitian_deviation()?;
    let scale = a.max_abs().max(1.0);
    if dev > tol::HERMITIAN_CHECK * scale {
        return Err(OpError::NotHermitian {
            deviation: dev,
            tolerance: tol::HERMITIAN_CHECK * scale,
        });
    }
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    Ok(a.add(&a.adjoint())?.scale(C64::new(0.5, 0.0)))
}

fn offdiag_frobenius(a: &CMat) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a.at(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

#[inline]
fn scale_re(z: C64, s: f64) -> C64 {
    C64::new(z.re * s, z.im * s)
}

/// Eigenvalues and eigenvectors of a self-adjoint matrix by cyclic
/// Jacobi rotations. Input is checked for self-adjointness; iteration
/// stops when the off-diagonal Frobenius mass falls below
/// [`tol::JACOBI_OFFDIAG`] times the matrix norm.
pub fn hermitian_eigen(a: &CMat) -> Result<HermitianEigen> {
    let mut m = check_hermitian(a)?;
    let n = m.rows();
    let mut v = CMat::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let target = tol::JACOBI_OFFDIAG * scale;

    let mut converged = offdiag_frobenius(&m) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < tol::JACOBI_MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in p + 1..n {
                let gamma = m.at(p, q);
                let mag = gamma.norm();
                if mag <= target / (n as f64 * n as f64) {
                    continue;
                }
                let alpha = m.at(p, p).re;
                let beta = m.at(q, q).re;
                let phase = gamma / mag; // e^{i phi}
                // Real Jacobi angle for the phased 2x2 pivot block.
                let tau = (alpha - beta) / (2.0 * mag);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column update on M and V:
                //   col_p <- c col_p + s e^{-i phi} col_q
                //   col_q <- c col_q - s e^{+i phi} col_p
                let se_m = scale_re(phase.conj(), s);
                let se_p = scale_re(phase, s);
                for r in 0..n {
                    let mp = m.at(r, p);
                    let mq = m.at(r, q);
                    m.set(r, p, scale_re(mp, c) + se_m * mq);
                    m.set(r, q, scale_re(mq, c) - se_p * mp);
                    let vp = v.at(r, p);
                    let vq = v.at(r, q);
                    v.set(r, p, scale_re(vp, c) + se_m * vq);
                    v.set(r, q, scale_re(vq, c) - se_p * vp);
                }
                // Row update with the adjoint factors.
                for col in 0..n {
                    let mp = m.at(p, col);
                    let mq = m.at(q, col);
                    m.set(p, col, scale_re(mp, c) + se_p * mq);
                    m.set(q, col, scale_re(mq, c) - se_m * mp);
                }
                // The pivot is annihilated exactly; pin the rounding.
                m.set(p, q, C64::new(0.0, 0.0));
                m.set(q, p, C64::new(0.0, 0.0));
                let dp = m.at(p, p);
                let dq = m.at(q, q);
                m.set(p, p, C64::new(dp.re, 0.0));
                m.set(q, q, C64::new(dq.re, 0.0));
            }
        }
        sweeps += 1;
        converged = offdiag_frobenius(&m) <= target;
    }
    if !converged {
        let res = offdiag_frobenius(&m);
        return Err(OpError::NoConvergence {
            context: "cyclic jacobi eigensolver".into(),
            sweeps,
            max_residual: res,
            residuals: vec![res],
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.at(i, i).re.partial_cmp(&m.at(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.at(i, i).re).collect();
    let basis = CMat::from_fn(n, n, |r, c| v.at(r, order[c]));
    Ok(HermitianEigen { eigenvalues, basis })
}

/// Spectral resolution of a self-adjoint matrix: ascending distinct
/// eigenvalue thresholds (merged when closer than [`tol::THRESHOLD_MERGE`]
/// times the norm) with cumulative spectral projections.
pub fn spectral_resolution(a: &CMat) -> Result<SpectralResolution> {
    let eig = hermitian_eigen(a)?;
    let n = a.rows();
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |m, &l| m.max(l.abs()))
        .max(1.0);
    let merge = tol::THRESHOLD_MERGE * scale;

    let mut thresholds: Vec<f64> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (idx, &l) in eig.eigenvalues.iter().enumerate() {
        match thresholds.last() {
            Some(&t) if (l - t).abs() <= merge => groups.last_mut().unwrap().push(idx),
            _ => {
                thresholds.push(l);
                groups.push(vec![idx]);
            }
        }
    }

    let mut projections = Vec::with_capacity(groups.len());
    let mut acc = CMat::zeros(n, n);
    for group in &groups {
        for &idx in group {
            acc = acc.add(&eig.eigenprojection(idx))?;
        }
        projections.push(acc.clone());
    }
    // The cumulative family ends at the identity; pin it exactly.
    if let Some(last) = projections.last_mut() {
        *last = CMat::identity(n);
    }
    Ok(SpectralResolution {
        thresholds,
        projections,
        dim: n,
    })
}

/// Pointwise functional calculus: `f` applied to the eigenvalues of a
/// self-adjoint matrix, assembled back in the eigenbasis.
pub fn fun_calculus(a: &CMat, f: impl Fn(f64) -> C64) -> Result<CMat> {
    Ok(hermitian_eigen(a)?.assemble(f))
}

/// `exp(itH)` for self-adjoint `H`.
pub fn unitary_group(h: &CMat, t: f64) -> Result<CMat> {
    fun_calculus(h, |l| C64::new(0.0, t * l).exp())
}

/// Right singular directions of `T` with refined singular values.
///
/// The basis diagonalizes `T^*T`; each singular value is then re-measured
/// as `|T v_i|`, which is accurate to machine precision in the norm of
/// `T`, whereas the square root of a Gram eigenvalue bottoms out at
/// `sqrt(eps) |T|` and would misclassify exact null directions against a
/// `1e-10 |T|` rank cut.
#[derive(Debug, Clone)]
pub struct SingularBasis {
    /// Refined singular values, one per basis column (ascending Gram order).
    pub sigmas: Vec<f64>,
    /// Unitary basis of right singular directions.
    pub basis: HermitianEigen,
}

/// Compute the right singular basis of a square matrix.
pub fn right_singular_basis(t: &CMat) -> Result<SingularBasis> {
    if !t.is_square() {
        return Err(OpError::NotSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let n = t.rows();
    let gram = t.adjoint().matmul(t)?;
    let eig = hermitian_eigen(&gram)?;
    let mut sigmas = Vec::with_capacity(n);
    for idx in 0..n {
        let v: Vec<C64> = (0..n).map(|r| eig.basis.at(r, idx)).collect();
        let tv = t.apply(&v)?;
        sigmas.push(tv.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt());
    }
    Ok(SingularBasis { sigmas, basis: eig })
}

/// Polar decomposition `T = V H` with `H = (T^*T)^{1/2}` and `V = T H^+`,
/// where `H^+` inverts `H` on singular values above [`tol::NULL_SPACE_CUT`]
/// times the norm and annihilates the rest. Rank-deficient input is
/// handled by the pseudo-inverse rule.
pub fn polar_decompose(t: &CMat) -> Result<PolarParts> {
    let sv = right_singular_basis(t)?;
    let sigma_max = sv.sigmas.iter().cloned().fold(0.0, f64::max);
    let cut = tol::NULL_SPACE_CUT * sigma_max;
    let n = t.rows();
    let mut modulus = CMat::zeros(n, n);
    let mut pseudo = CMat::zeros(n, n);
    for (idx, &s) in sv.sigmas.iter().enumerate() {
        let proj = sv.basis.eigenprojection(idx);
        modulus = modulus.add(&proj.scale(C64::new(s, 0.0)))?;
        if s > cut {
            pseudo = pseudo.add(&proj.scale(C64::new(1.0 / s, 0.0)))?;
        }
    }
    let isometry = t.matmul(&pseudo)?;
    Ok(PolarParts { isometry, modulus })
}

/// Projection onto the numerical null space of `T`: the span of right
/// singular directions whose refined singular value falls below
/// [`tol::NULL_SPACE_CUT`] times the norm of `T`.
pub fn null_projection(t: &CMat) -> Result<CMat> {
    null_projection_with_floor(t, 0.0)
}

/// Null projection with an absolute floor under the rank cut.
///
/// When `T` arises as a product or difference that is exactly zero in
/// exact arithmetic, the computed matrix is pure rounding noise and a
/// relative cut sees full rank; callers that know the input scale pass
/// `floor ~ n * eps * scale` so that noise-level singular values count
/// as zero.
pub fn null_projection_with_floor(t: &CMat, floor: f64) -> Result<CMat> {
    let sv = right_singular_basis(t)?;
    let sigma_max = sv.sigmas.iter().cloned().fold(0.0, f64::max);
    let cut = (tol::NULL_SPACE_CUT * sigma_max).max(floor);
    let n = t.rows();
    let mut acc = CMat::zeros(n, n);
    for (idx, &s) in sv.sigmas.iter().enumerate() {
        if s <= cut {
            acc = acc.add(&sv.basis.eigenprojection(idx))?;
        }
    }
    Ok(acc)
}

/// Range and null projections `(R(T), N(T))` of a square matrix, with
/// `R(T)` recovered through `I - N(T^*)`.
pub fn range_null_projections(t: &CMat) -> Result<(CMat, CMat)> {
    let null = null_projection(t)?;
    let null_adj = null_projection(&t.adjoint())?;
    let range = CMat::identity(t.rows()).sub(&null_adj)?;
    Ok((range, null))
}

/// Projection onto the closure of the range of `T`.
pub fn range_projection(t: &CMat) -> Result<CMat> {
    Ok(range_null_projections(t)?.0)
}

/// Range projection with an absolute floor under the rank cut; see
/// [`null_projection_with_floor`].
pub fn range_projection_with_floor(t: &CMat, floor: f64) -> Result<CMat> {
    let null_adj = null_projection_with_floor(&t.adjoint(), floor)?;
    CMat::identity(t.rows()).sub(&null_adj)
}

/// Smallest eigenvalue of a self-adjoint matrix; the Hermitian order
/// check `X >= 0` is `min_eigenvalue(X) >= -tolerance`.
pub fn min_eigenvalue(a: &CMat) -> Result<f64> {
    let eig = hermitian_eigen(a)?;
    Ok(*eig.eigenvalues.first().expect("positive dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_cmat(rng: &mut ChaCha12Rng, n: usize) -> CMat {
        CMat::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha12Rng, n: usize) -> CMat {
        let a = random_cmat(rng, n);
        a.add(&a.adjoint()).unwrap().scale(c(0.5, 0.0))
    }

    fn random_unitary(rng: &mut ChaCha12Rng, n: usize) -> CMat {
        hermitian_eigen(&random_hermitian(rng, n)).unwrap().basis
    }

    #[test]
    fn eigen_diagonal_permutation() {
        let a = CMat::diag_real(&[3.0, 1.0, 2.0]);
        let eig = hermitian_eigen(&a).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-12);
        assert!((eig.eigenvalues[2] - 3.0).abs() < 1e-12);
        assert!(eig.assemble(|l| c(l, 0.0)).approx_eq(&a, 1e-12));
    }

    #[test]
    fn eigen_pauli_x() {
        let a = CMat::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let eig = hermitian_eigen(&a).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_construct_then_decompose() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in [2usize, 5, 8] {
            let u = random_unitary(&mut rng, n);
            let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let a = u
                .matmul(&CMat::diag_real(&d))
                .unwrap()
                .matmul(&u.adjoint())
                .unwrap();
            let eig = hermitian_eigen(&a).unwrap();
            let mut sorted = d.clone();
            sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (got, want) in eig.eigenvalues.iter().zip(sorted.iter()) {
                assert!((got - want).abs() < 1e-9 * a.operator_norm().max(1.0));
            }
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let a = CMat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigen(&a),
            Err(OpError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigen_residual_invariant() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for n in [4usize, 16, 32] {
            let a = random_hermitian(&mut rng, n);
            let eig = hermitian_eigen(&a).unwrap();
            let norm = a.operator_norm();
            for (idx, &l) in eig.eigenvalues.iter().enumerate() {
                let v: Vec<C64> = (0..n).map(|r| eig.basis.at(r, idx)).collect();
                let av = a.apply(&v).unwrap();
                let max_dev = av
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - y * l).norm())
                    .fold(0.0, f64::max);
                assert!(max_dev <= 1e-9 * norm.max(1.0));
            }
            let b = &eig.basis;
            assert!(b
                .adjoint()
                .matmul(b)
                .unwrap()
                .approx_eq(&CMat::identity(n), 1e-10));
        }
    }

    #[test]
    fn resolution_simple_cases() {
        let res = spectral_resolution(&CMat::diag_real(&[1.0, 1.0, 2.0])).unwrap();
        assert_eq!(res.thresholds.len(), 2);
        assert!((res.thresholds[0] - 1.0).abs() < 1e-12);
        assert!((res.thresholds[1] - 2.0).abs() < 1e-12);
        assert!(res.projections[0].approx_eq(&CMat::diag_real(&[1.0, 1.0, 0.0]), 1e-10));
        assert!(res.projections[1].approx_eq(&CMat::identity(3), 1e-12));

        let res = spectral_resolution(&CMat::identity(4).scale(c(2.5, 0.0))).unwrap();
        assert_eq!(res.thresholds.len(), 1);
        assert!(res.projections[0].approx_eq(&CMat::identity(4), 1e-12));
    }

    #[test]
    fn resolution_properties_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let a = random_hermitian(&mut rng, 8);
        let norm = a.operator_norm();
        let res = spectral_resolution(&a).unwrap();

        // (v) reconstruction
        assert!(res.reconstruct().approx_eq(&a, 1e-9));

        // (i) zero below -|A|, identity at |A|
        assert!(res
            .evaluate(-norm - 1e-6)
            .approx_eq(&CMat::zeros(8, 8), 1e-12));
        assert!(res.evaluate(norm).approx_eq(&CMat::identity(8), 1e-12));

        // (ii)/(iii): E_a E_b = E_min(a,b); steps idempotent self-adjoint
        for (i, p) in res.projections.iter().enumerate() {
            assert!(p.matmul(p).unwrap().approx_eq(p, 1e-10));
            assert!(p.adjoint().approx_eq(p, 1e-10));
            for (j, q) in res.projections.iter().enumerate() {
                let prod = p.matmul(q).unwrap();
                assert!(prod.approx_eq(&res.projections[i.min(j)], 1e-9));
            }
        }

        // (iv) Hermitian order: A E <= lambda E and lambda (I-E) <= A (I-E)
        for (t, e) in res.thresholds.iter().zip(&res.projections) {
            let ae = a.matmul(e).unwrap();
            let lhs = e.scale(c(*t, 0.0)).sub(&ae).unwrap();
            let lhs = lhs.add(&lhs.adjoint()).unwrap().scale(c(0.5, 0.0));
            assert!(min_eigenvalue(&lhs).unwrap() >= -1e-9 * norm.max(1.0));

            let ic = CMat::identity(8).sub(e).unwrap();
            let rhs = a.matmul(&ic).unwrap().sub(&ic.scale(c(*t, 0.0))).unwrap();
            let rhs = rhs.add(&rhs.adjoint()).unwrap().scale(c(0.5, 0.0));
            assert!(min_eigenvalue(&rhs).unwrap() >= -1e-9 * norm.max(1.0));
        }
    }

    #[test]
    fn fun_calculus_cases() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let a = random_hermitian(&mut rng, 6);
        assert!(fun_calculus(&a, |l| c(l, 0.0)).unwrap().approx_eq(&a, 1e-9));
        assert!(fun_calculus(&a, |_| c(1.0, 0.0))
            .unwrap()
            .approx_eq(&CMat::identity(6), 1e-10));
        let sq = fun_calculus(&a, |l| c(l * l, 0.0)).unwrap();
        assert!(sq.approx_eq(&a.matmul(&a).unwrap(), 1e-9));
    }

    #[test]
    fn unitary_group_cases() {
        let h = CMat::diag_real(&[std::f64::consts::PI]);
        let u = unitary_group(&h, 1.0).unwrap();
        assert!((u.at(0, 0) - c(-1.0, 0.0)).norm() < 1e-12);

        let x = CMat::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(unitary_group(&x, 0.0)
            .unwrap()
            .approx_eq(&CMat::identity(2), 1e-12));
        // exp(i pi/2 X) = i X
        let u = unitary_group(&x, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(u.approx_eq(&x.scale(c(0.0, 1.0)), 1e-12));
    }

    #[test]
    fn unitary_group_law_and_generator() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let h = random_hermitian(&mut rng, 5);
        let (s, t) = (0.37, -0.81);
        let u_st = unitary_group(&h, s + t).unwrap();
        let prod = unitary_group(&h, s)
            .unwrap()
            .matmul(&unitary_group(&h, t).unwrap())
            .unwrap();
        assert!(u_st.approx_eq(&prod, 1e-9));

        for k in 0..5 {
            let u = unitary_group(&h, 2.0 * k as f64).unwrap();
            assert!(u
                .adjoint()
                .matmul(&u)
                .unwrap()
                .approx_eq(&CMat::identity(5), 1e-9));
        }

        // Generator recovery: |(U_t x - x)/t - iHx| <= |H|^2 |x| |t|.
        let norm_h = h.operator_norm();
        let t_small = 0.5 / norm_h.max(1.0);
        let u = unitary_group(&h, t_small).unwrap();
        let x: Vec<C64> = (0..5).map(|j| c(1.0 / (j as f64 + 1.0), 0.3)).collect();
        let ux = u.apply(&x).unwrap();
        let hx = h.apply(&x).unwrap();
        let x_norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let dev = ux
            .iter()
            .zip(&x)
            .zip(&hx)
            .map(|((uxj, xj), hxj)| ((uxj - xj) / t_small - c(0.0, 1.0) * hxj).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(dev <= norm_h * norm_h * x_norm * t_small);
    }

    #[test]
    fn polar_hand_cases() {
        let mut rng = ChaCha12Rng::seed_from_u64(53);
        let u = random_unitary(&mut rng, 4);
        let parts = polar_decompose(&u).unwrap();
        assert!(parts.modulus.approx_eq(&CMat::identity(4), 1e-9));
        assert!(parts.isometry.approx_eq(&u, 1e-9));

        let parts = polar_decompose(&CMat::zeros(3, 3)).unwrap();
        assert!(parts.modulus.approx_eq(&CMat::zeros(3, 3), 1e-12));
        assert!(parts.isometry.approx_eq(&CMat::zeros(3, 3), 1e-12));

        // T = E12: H = E22, V = E12, V*V = E22, VV* = E11.
        let t = CMat::unit(2, 0, 1);
        let parts = polar_decompose(&t).unwrap();
        assert!(parts.modulus.approx_eq(&CMat::unit(2, 1, 1), 1e-12));
        assert!(parts.isometry.approx_eq(&t, 1e-12));
        let v = &parts.isometry;
        assert!(v
            .adjoint()
            .matmul(v)
            .unwrap()
            .approx_eq(&CMat::unit(2, 1, 1), 1e-12));
        assert!(v
            .matmul(&v.adjoint())
            .unwrap()
            .approx_eq(&CMat::unit(2, 0, 0), 1e-12));
    }

    #[test]
    fn polar_invariants_and_uniqueness() {
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        for n in [3usize, 6] {
            let t = random_cmat(&mut rng, n);
            let parts = polar_decompose(&t).unwrap();
            let v = &parts.isometry;
            let h = &parts.modulus;

            let rebuilt = v.matmul(h).unwrap();
            assert!(rebuilt.approx_eq(&t, 1e-9));

            let r_h = range_projection(h).unwrap();
            let r_t = range_projection(&t).unwrap();
            assert!(v.adjoint().matmul(v).unwrap().approx_eq(&r_h, 1e-9));
            assert!(v.matmul(&v.adjoint()).unwrap().approx_eq(&r_t, 1e-9));

            // Uniqueness: decomposing V H reproduces the same parts.
            let again = polar_decompose(&rebuilt).unwrap();
            assert!(again.modulus.approx_eq(h, 1e-9));
            assert!(again.isometry.approx_eq(v, 1e-9));

            // R(T) ~ R(T*) witnessed by V.
            let r_tstar = range_projection(&t.adjoint()).unwrap();
            assert!(v.adjoint().matmul(v).unwrap().approx_eq(&r_tstar, 1e-9));
        }
    }

    #[test]
    fn range_null_cases() {
        let a = CMat::from_real(2, 2, &[2.0, 1.0, 0.5, 3.0]).unwrap();
        let (r, n) = range_null_projections(&a).unwrap();
        assert!(r.approx_eq(&CMat::identity(2), 1e-10));
        assert!(n.approx_eq(&CMat::zeros(2, 2), 1e-10));

        let (r, n) = range_null_projections(&CMat::zeros(2, 2)).unwrap();
        assert!(r.approx_eq(&CMat::zeros(2, 2), 1e-12));
        assert!(n.approx_eq(&CMat::identity(2), 1e-12));

        // T = E12: R = E11, N = E11; N(T*) = E22 so R(T) = I - N(T*).
        let t = CMat::unit(2, 0, 1);
        let (r, n) = range_null_projections(&t).unwrap();
        assert!(r.approx_eq(&CMat::unit(2, 0, 0), 1e-12));
        assert!(n.approx_eq(&CMat::unit(2, 0, 0), 1e-12));
        let n_adj = null_projection(&t.adjoint()).unwrap();
        assert!(n_adj.approx_eq(&CMat::unit(2, 1, 1), 1e-12));
    }

    #[test]
    fn range_null_identities_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(71);
        for _ in 0..5 {
            let t = random_cmat(&mut rng, 5);
            let (r, n) = range_null_projections(&t).unwrap();
            let (r_star, n_star) = range_null_projections(&t.adjoint()).unwrap();
            let gram = t.adjoint().matmul(&t).unwrap();
            let (r_gram, n_gram) = range_null_projections(&gram).unwrap();
            let i5 = CMat::identity(5);

            assert!(r.approx_eq(&i5.sub(&n_star).unwrap(), 1e-9));
            assert!(n.approx_eq(&i5.sub(&r_star).unwrap(), 1e-9));
            assert!(r_gram.approx_eq(&r_star, 1e-9));
            assert!(n_gram.approx_eq(&n, 1e-9));
        }
    }
}
