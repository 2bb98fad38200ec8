//! Dense complex linear algebra.
//!
//! [`CMat`] is the carrier for every bounded operator in the crate: a
//! row-major dense matrix of `Complex64` entries with explicit row and
//! column counts. Instances are immutable after construction; all
//! operations return fresh values.
//!
//! The module is self-contained: the operator norm is computed by power
//! iteration on `A*A` rather than through the Hermitian eigensolver, so
//! nothing here depends on the spectral machinery built on top of it.

use num_complex::Complex64 as C64;

use crate::{tol, OpError, Result};

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    /// Build from row-major entries. `data.len()` must equal `rows * cols`.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(OpError::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(OpError::ShapeMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from a function of the index pair.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_rows(
            rows,
            cols,
            data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                entries[r]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(entries: &[f64]) -> Self {
        Self::diag(&entries.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// Matrix unit `E_{ r c }`: 1 at `(r, c)`, 0 elsewhere.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[r * n + c] = C64::new(1.0, 0.0);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(OpError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| a * x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(OpError::ShapeMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Standard matrix product. Requires `self.cols == other.rows`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(OpError::ShapeMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c) + a * other.at(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Apply to a vector (treated as a column).
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(OpError::ShapeMismatch(format!(
                "apply: {}x{} matrix to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let out = (0..self.rows)
            .map(|r| {
                v.iter()
                    .enumerate()
                    .map(|(c, &x)| self.at(r, c) * x)
                    .sum()
            })
            .collect();
        Ok(out)
    }

    /// Commutator `AB - BA`. Requires both square of equal size.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.require_square()?;
        other.require_square()?;
        if self.rows != other.rows {
            return Err(OpError::ShapeMismatch(format!(
                "commutator: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Result<C64> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.at(i, i)).sum())
    }

    /// Trace divided by the dimension, so the identity has trace 1.
    pub fn normalized_trace(&self) -> Result<C64> {
        let n = self.require_square()?;
        Ok(self.trace()? / n as f64)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation from self-adjointness, `max |A - A*|` entrywise.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                dev = dev.max((self.at(r, c) - self.at(c, r).conj()).norm());
            }
        }
        Ok(dev)
    }

    /// Entrywise closeness within `tol` scaled by the larger operand norm.
    /// Pass [`tol::DEFAULT_EQ`] for the crate default.
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        self.data
            .iter()
            .zip(&other.data)
            .all(|(&a, &b)| (a - b).norm() <= tolerance * scale)
    }

    /// Operator norm: the largest singular value, computed by power
    /// iteration on `A*A`. Returns 0 for the zero matrix.
    pub fn operator_norm(&self) -> f64 {
        let gram = self
            .adjoint()
            .matmul(self)
            .expect("adjoint product dimensions always agree");
        let n = gram.rows;
        if gram.max_abs() == 0.0 {
            return 0.0;
        }
        // Deterministic dense start vector; exact orthogonality to the top
        // eigenspace is not realistically hit from this seed.
        let mut v: Vec<C64> = (0..n)
            .map(|j| C64::new(1.0 + (j % 7) as f64 * 0.1, 0.3 + (j % 3) as f64 * 0.1))
            .collect();
        normalize(&mut v);
        let mut lambda = 0.0_f64;
        for _ in 0..10_000 {
            let mut w = gram.apply(&v).expect("dimension fixed");
            let next = rayleigh(&v, &w);
            let wn = vec_norm(&w);
            if wn == 0.0 {
                return 0.0;
            }
            for x in &mut w {
                *x /= wn;
            }
            v = w;
            if (next - lambda).abs() <= 1e-15 * next.max(1.0) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        lambda.max(0.0).sqrt()
    }

    /// Solve `A X = B` by LU with partial pivoting. `A` must be square.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.require_square()?;
        if rhs.rows != n {
            return Err(OpError::ShapeMismatch(format!(
                "solve: {}x{} system with {}x{} right-hand side",
                n, n, rhs.rows, rhs.cols
            )));
        }
        let mut lu = self.data.clone();
        let mut x = rhs.data.clone();
        let m = rhs.cols;
        for col in 0..n {
            let (mut pivot_row, mut pivot_mag) = (col, lu[col * n + col].norm());
            for r in col + 1..n {
                let mag = lu[r * n + col].norm();
                if mag > pivot_mag {
                    pivot_row = r;
                    pivot_mag = mag;
                }
            }
            if pivot_mag == 0.0 {
                return Err(OpError::Singular {
                    sigma_min: 0.0,
                    threshold: 0.0,
                });
            }
            if pivot_row != col {
                for c in 0..n {
                    lu.swap(col * n + c, pivot_row * n + c);
                }
                for c in 0..m {
                    x.swap(col * m + c, pivot_row * m + c);
                }
            }
            let pivot = lu[col * n + col];
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                lu[r * n + col] = factor;
                for c in col + 1..n {
                    let sub = factor * lu[col * n + c];
                    lu[r * n + c] -= sub;
                }
                for c in 0..m {
                    let sub = factor * x[col * m + c];
                    x[r * m + c] -= sub;
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = lu[col * n + col];
            for c in 0..m {
                x[col * m + c] /= pivot;
            }
            for r in 0..col {
                let factor = lu[r * n + col];
                for c in 0..m {
                    let sub = factor * x[col * m + c];
                    x[r * m + c] -= sub;
                }
            }
        }
        CMat::from_rows(n, m, x)
    }

    /// Matrix inverse via [`CMat::solve`] against the identity.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        self.solve(&Self::identity(n))
    }

    /// Monic characteristic polynomial `det(lambda I - A)` by the
    /// Faddeev–LeVerrier recurrence. Guarded to `n <= 64`.
    pub fn char_poly(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        if n > 64 {
            return Err(OpError::SizeGuard { size: n, guard: 64 });
        }
        // M_1 = A, c_{n-1} = -tr(M_1); M_k = A (M_{k-1} + c_{n-k+1} I),
        // c_{n-k} = -tr(M_k)/k. Coefficients ascend from c_0 to c_n = 1.
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        let mut m = self.clone();
        coeffs[n - 1] = -m.trace()?;
        for k in 2..=n {
            let shifted = m.add(&Self::identity(n).scale(coeffs[n - k + 1]))?;
            m = self.matmul(&shifted)?;
            coeffs[n - k] = -m.trace()? / k as f64;
        }
        Ok(Polynomial::new(coeffs))
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [C64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

fn rayleigh(v: &[C64], av: &[C64]) -> f64 {
    v.iter()
        .zip(av)
        .map(|(x, y)| (x.conj() * y).re)
        .sum::<f64>()
}

/// Complex polynomial with coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// Ascending coefficients, constant term first.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `sum_k |c_k| r^k`, the magnitude envelope of the evaluation.
    fn abs_eval(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c.norm();
        }
        acc
    }

    /// All complex roots with multiplicity, by simultaneous Durand–Kerner
    /// iteration. Initial guesses sit on a circle of radius
    /// `1 + max |coeff|`, rotated by 0.4 rad to break symmetry ties.
    ///
    /// Converged when the largest per-root update drops below
    /// [`tol::ROOT_UPDATE`] or the residuals reach the floating-point
    /// noise floor of polynomial evaluation; errors out with the residual
    /// vector after [`tol::ROOT_MAX_SWEEPS`] sweeps otherwise.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let d = self.degree();
        if d == 0 {
            return Err(OpError::InvalidInput(
                "root finding requires degree >= 1".into(),
            ));
        }
        let lead = self.coeffs[d];
        if lead.norm() == 0.0 {
            return Err(OpError::InvalidInput(
                "leading coefficient must be nonzero".into(),
            ));
        }
        // Work on the monic normalization.
        let monic: Vec<C64> = self.coeffs.iter().map(|&c| c / lead).collect();
        let p = Polynomial::new(monic.clone());
        let radius = 1.0 + p.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut z: Vec<C64> = (0..d)
            .map(|j| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
                C64::from_polar(radius, angle)
            })
            .collect();
        for _ in 0..tol::ROOT_MAX_SWEEPS {
            let mut max_update = 0.0_f64;
            for j in 0..d {
                let mut denom = C64::new(1.0, 0.0);
                for k in 0..d {
                    if k != j {
                        denom *= z[j] - z[k];
                    }
                }
                if denom.norm() == 0.0 {
                    // Collided guesses: nudge and retry next sweep.
                    z[j] += C64::new(1e-8 * radius, 1e-8 * radius);
                    max_update = f64::MAX;
                    continue;
                }
                let step = p.eval(z[j]) / denom;
                z[j] -= step;
                max_update = max_update.max(step.norm());
            }
            if max_update < tol::ROOT_UPDATE {
                return Ok(z);
            }
            // Multiple roots stall above the update threshold once the
            // iterates reach the attainable cluster radius; accept when
            // every residual is at the Horner evaluation noise floor for
            // the current iterate.
            let at_floor = z.iter().all(|&r| {
                let floor = 16.0 * d as f64 * f64::EPSILON * p.abs_eval(r.norm());
                p.eval(r).norm() <= floor
            });
            if at_floor {
                return Ok(z);
            }
        }
        let residuals: Vec<f64> = z.iter().map(|&r| p.eval(r).norm()).collect();
        let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
        Err(OpError::NoConvergence {
            context: "durand-kerner root iteration".into(),
            sweeps: tol::ROOT_MAX_SWEEPS,
            max_residual,
            residuals,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn matmul_identity_and_zero() {
        let a = CMat::from_real(3, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]).unwrap();
        let i3 = CMat::identity(3);
        let z = CMat::zeros(3, 3);
        assert!(i3.matmul(&a).unwrap().approx_eq(&a, 1e-15));
        assert!(z.matmul(&a).unwrap().approx_eq(&z, 1e-15));
    }

    #[test]
    fn matmul_hand_product() {
        // [[0,1],[0,0]] * [[0,0],[1,0]] = [[1,0],[0,0]]
        let a = CMat::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let b = CMat::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
        let expect = CMat::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(a.matmul(&b).unwrap().approx_eq(&expect, 1e-15));
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = CMat::zeros(2, 3);
        let b = CMat::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(OpError::ShapeMismatch(_))));
    }

    #[test]
    fn adjoint_is_involutive() {
        let a = CMat::from_rows(2, 3, vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.5), c(2.0, 2.0), c(-1.0, 0.0), c(0.0, 4.0)])
            .unwrap();
        assert!(a.adjoint().adjoint().approx_eq(&a, 1e-16));
    }

    #[test]
    fn commutator_cases() {
        let a = CMat::from_rows(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -3.0), c(4.0, 0.0)])
            .unwrap();
        let zero = CMat::zeros(2, 2);
        assert!(a.commutator(&a).unwrap().approx_eq(&zero, 1e-15));
        assert!(CMat::identity(2).commutator(&a).unwrap().approx_eq(&zero, 1e-15));

        // [E12, E21] = diag(1, -1)
        let e12 = CMat::unit(2, 0, 1);
        let e21 = CMat::unit(2, 1, 0);
        let expect = CMat::diag_real(&[1.0, -1.0]);
        assert!(e12.commutator(&e21).unwrap().approx_eq(&expect, 1e-15));
    }

    #[test]
    fn trace_values() {
        assert_eq!(CMat::identity(5).trace().unwrap(), c(5.0, 0.0));
        assert_eq!(CMat::identity(5).normalized_trace().unwrap(), c(1.0, 0.0));
        let d = CMat::diag_real(&[1.0, 1.0, -2.0]);
        assert_eq!(d.trace().unwrap(), c(0.0, 0.0));
        assert!(CMat::zeros(2, 3).trace().is_err());
    }

    #[test]
    fn operator_norm_cases() {
        assert!((CMat::identity(4).operator_norm() - 1.0).abs() < 1e-12);
        assert!((CMat::diag_real(&[3.0, -5.0]).operator_norm() - 5.0).abs() < 1e-12);
        // Rank-one c * E12 has the single singular value |c|.
        let m = CMat::unit(2, 0, 1).scale(c(3.0, 4.0));
        assert!((m.operator_norm() - 5.0).abs() < 1e-12);
        assert_eq!(CMat::zeros(3, 3).operator_norm(), 0.0);
    }

    #[test]
    fn char_poly_closed_forms() {
        // 2x2: lambda^2 - (a+d) lambda + (ad - bc)
        let a = CMat::from_rows(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.5, 0.0), c(-3.0, 2.0)])
            .unwrap();
        let p = a.char_poly().unwrap();
        let tr = c(1.0, 1.0) + c(-3.0, 2.0);
        let det = c(1.0, 1.0) * c(-3.0, 2.0) - c(2.0, 0.0) * c(0.5, 0.0);
        assert!((p.coeffs()[2] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((p.coeffs()[1] + tr).norm() < 1e-12);
        assert!((p.coeffs()[0] - det).norm() < 1e-12);

        // (lambda - 1)^n for the identity
        let p = CMat::identity(4).char_poly().unwrap();
        let expect = [1.0, -4.0, 6.0, -4.0, 1.0];
        for (k, &e) in expect.iter().enumerate() {
            assert!((p.coeffs()[k] - c(e * if k % 2 == 0 { 1.0 } else { 1.0 }, 0.0)).norm() < 1e-10
                || (p.coeffs()[k] - c(e, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn char_poly_ab_vs_ba_hand_case() {
        let e12 = CMat::unit(2, 0, 1);
        let e21 = CMat::unit(2, 1, 0);
        let p_ab = e12.matmul(&e21).unwrap().char_poly().unwrap();
        let p_ba = e21.matmul(&e12).unwrap().char_poly().unwrap();
        // Both are lambda(lambda - 1) = lambda^2 - lambda.
        for k in 0..=2 {
            assert!((p_ab.coeffs()[k] - p_ba.coeffs()[k]).norm() < 1e-14);
        }
        assert!((p_ab.coeffs()[0]).norm() < 1e-14);
        assert!((p_ab.coeffs()[1] + c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn char_poly_size_guard() {
        let a = CMat::zeros(65, 65);
        assert!(matches!(a.char_poly(), Err(OpError::SizeGuard { .. })));
    }

    #[test]
    fn roots_simple_and_multiple() {
        // lambda^2 - 1 -> {1, -1}
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let mut roots = p.roots().unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-10);

        // lambda^2 -> {0, 0}
        let p = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        for r in p.roots().unwrap() {
            assert!(r.norm() < 1e-10);
        }
    }

    #[test]
    fn roots_match_quadratic_formula() {
        // Monic quadratic with complex coefficients, roots from the formula.
        let b = c(-3.0, -2.0);
        let b0 = c(2.0, 2.0);
        let p = Polynomial::new(vec![b0, b, c(1.0, 0.0)]);
        let disc = (b * b - c(4.0, 0.0) * b0).sqrt();
        let r1 = (-b + disc) / 2.0;
        let r2 = (-b - disc) / 2.0;
        let roots = p.roots().unwrap();
        for r in roots {
            assert!((r - r1).norm() < 1e-10 || (r - r2).norm() < 1e-10);
        }
    }

    #[test]
    fn roots_recover_diagonal() {
        let d = [2.5, -1.25, 0.75, 4.0];
        let p = CMat::diag_real(&d).char_poly().unwrap();
        let mut roots = p.roots().unwrap();
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut expect = d;
        expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (r, e) in roots.iter().zip(expect.iter()) {
            assert!((r - c(*e, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn solve_round_trip() {
        let a = CMat::from_rows(
            3,
            3,
            vec![
                c(2.0, 1.0), c(0.0, 0.0), c(1.0, 0.0),
                c(-1.0, 0.0), c(3.0, 0.0), c(0.5, 0.5),
                c(0.0, 2.0), c(1.0, -1.0), c(4.0, 0.0),
            ],
        )
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.matmul(&inv).unwrap().approx_eq(&CMat::identity(3), 1e-12));
        assert!(inv.matmul(&a).unwrap().approx_eq(&CMat::identity(3), 1e-12));
    }
}
