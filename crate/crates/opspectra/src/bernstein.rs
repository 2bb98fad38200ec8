//! Bernstein polynomial approximation on `[0, 1]`, with affine
//! transport to symmetric intervals `[-N, N]`.
//!
//! The degree-`n` approximant of `f` is
//! `B_n(f)(x) = sum_k C(n,k) x^k (1-x)^{n-k} f(k/n)`; it converges
//! uniformly to `f` for continuous `f`, and its derivative `B_n'(f)`
//! converges uniformly to `f'` for continuously differentiable `f`.
//!
//! Basis values are computed by the in-place degree-raising recurrence
//! rather than explicit binomial coefficients, which stay finite and
//! accurate well past the degrees where `C(n, n/2)` degrades in double
//! precision. The derivative is evaluated in the forward-difference form
//! `n sum_k (f((k+1)/n) - f(k/n)) b_{k,n-1}(x)`; the algebraically equal
//! direct kernel form is kept as an independent route
//! ([`derivative_kernel_eval`]) for interior points, where its removable
//! endpoint singularities stay out of the way.

use crate::{OpError, Result};

/// Degree-`n` Bernstein data: the `n + 1` samples `f(k/n)`, plus the
/// source interval when the function was transported from `[-N, N]`.
#[derive(Debug, Clone)]
pub struct BernsteinModel {
    degree: usize,
    samples: Vec<f64>,
    source_interval: (f64, f64),
}

/// All basis values `b_{k,n}(x) = C(n,k) x^k (1-x)^{n-k}` for `k = 0..=n`,
/// by the degree-raising recurrence. Nonnegative, summing to 1.
pub fn basis_row(n: usize, x: f64) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    let y = 1.0 - x;
    for j in 1..=n {
        b[j] = x * b[j - 1];
        for i in (1..j).rev() {
            b[i] = x * b[i - 1] + y * b[i];
        }
        b[0] *= y;
    }
    b
}

impl BernsteinModel {
    /// Model from explicit samples `f(k/n)`, `k = 0..=n`, on `[0, 1]`.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(OpError::InvalidInput(
                "a Bernstein model needs degree >= 1, i.e. at least 2 samples".into(),
            ));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(OpError::InvalidInput(
                "Bernstein samples must be finite".into(),
            ));
        }
        Ok(Self {
            degree: samples.len() - 1,
            samples,
            source_interval: (0.0, 1.0),
        })
    }

    /// Model of `f` on `[0, 1]` at degree `n`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(OpError::InvalidInput("degree must be >= 1".into()));
        }
        let samples = (0..=n).map(|k| f(k as f64 / n as f64)).collect();
        Self::from_samples(samples)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn source_interval(&self) -> (f64, f64) {
        self.source_interval
    }

    /// Forward transport map; the identity for `[0, 1]` models, and
    /// `phi(x) = 2Nx - N` after [`transport_interval`].
    pub fn transport_map(&self, x: f64) -> f64 {
        let (lo, hi) = self.source_interval;
        lo + (hi - lo) * x
    }

    /// Inverse transport, `phi^{-1}(y) = (y + N) / 2N` for `[-N, N]`.
    pub fn transport_inverse(&self, y: f64) -> f64 {
        let (lo, hi) = self.source_interval;
        (y - lo) / (hi - lo)
    }

    /// `B_n(f)(x)` for `x` in `[0, 1]`.
    pub fn eval_unit(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        let b = basis_row(self.degree, x);
        Ok(b.iter().zip(&self.samples).map(|(w, s)| w * s).sum())
    }

    /// `B_n'(f)(x)` for `x` in `[0, 1]`, in the forward-difference form.
    pub fn derivative_eval_unit(&self, x: f64) -> Result<f64> {
        check_unit(x)?;
        let n = self.degree;
        let b = basis_row(n - 1, x);
        Ok(n as f64
            * b.iter()
                .zip(self.samples.windows(2))
                .map(|(w, pair)| w * (pair[1] - pair[0]))
                .sum::<f64>())
    }

    /// Value at `y` in the source interval, routing through the
    /// transport when one is recorded.
    pub fn eval(&self, y: f64) -> Result<f64> {
        let (lo, hi) = self.source_interval;
        if !(lo..=hi).contains(&y) {
            return Err(OpError::InvalidInput(format!(
                "{y} is outside the source interval [{lo}, {hi}]"
            )));
        }
        self.eval_unit(self.transport_inverse(y).clamp(0.0, 1.0))
    }

    /// Derivative at `y` in the source interval, with the chain-rule
    /// factor `1/(2N)` of the transport.
    pub fn derivative_eval(&self, y: f64) -> Result<f64> {
        let (lo, hi) = self.source_interval;
        if !(lo..=hi).contains(&y) {
            return Err(OpError::InvalidInput(format!(
                "{y} is outside the source interval [{lo}, {hi}]"
            )));
        }
        Ok(self
            .derivative_eval_unit(self.transport_inverse(y).clamp(0.0, 1.0))?
            / (hi - lo))
    }
}

fn check_unit(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(OpError::InvalidInput(format!("{x} is outside [0, 1]")));
    }
    Ok(())
}

/// `B_n(f)(x)`, the evaluation entry point.
pub fn bernstein_eval(model: &BernsteinModel, x: f64) -> Result<f64> {
    model.eval_unit(x)
}

/// `B_n'(f)(x)` in the forward-difference form.
pub fn bernstein_derivative_eval(model: &BernsteinModel, x: f64) -> Result<f64> {
    model.derivative_eval_unit(x)
}

/// The derivative in its direct kernel form
/// `n sum_k C(n,k) (k/n - x) x^{k-1} (1-x)^{n-k-1} f(k/n)`,
/// valid on the open interval; the `k = 0` and `k = n` endpoint terms
/// are removable singularities of the expression. Kept as an independent
/// second route for the forward-difference evaluation.
pub fn derivative_kernel_eval(model: &BernsteinModel, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(OpError::InvalidInput(format!(
            "kernel form needs interior x, got {x}"
        )));
    }
    let n = model.degree;
    let b = basis_row(n, x);
    let weight = 1.0 / (x * (1.0 - x));
    Ok(n as f64
        * b.iter()
            .enumerate()
            .zip(model.samples())
            .map(|((k, w), s)| w * (k as f64 / n as f64 - x) * weight * s)
            .sum::<f64>())
}

/// Largest gap between direct summation and closed form for each of the
/// six moment identities, over the probe points.
#[derive(Debug, Clone)]
pub struct MomentReport {
    /// Gaps for `B_n(x)`, `B_n(x^2)`, `B_n(x^3)`, `B_n(x^4)`, and the
    /// second and fourth central moments, in that order.
    pub max_gaps: [f64; 6],
}

impl MomentReport {
    pub fn worst(&self) -> f64 {
        self.max_gaps.iter().cloned().fold(0.0, f64::max)
    }

    pub fn labels() -> [&'static str; 6] {
        [
            "first_moment",
            "second_moment",
            "third_moment",
            "fourth_moment",
            "central_second",
            "central_fourth",
        ]
    }
}

/// Evaluate both sides of the six moment identities at every probe
/// point: direct summation against the closed forms
/// `x`, `((n-1)x^2 + x)/n`, `((n-1)(n-2)x^3 + 3(n-1)x^2 + x)/n^2`,
/// `((n-1)(n-2)(n-3)x^4 + 6(n-1)(n-2)x^3 + 7(n-1)x^2 + x)/n^3`,
/// `x(1-x)/n`, and `x(1-x)((3n-6)x(1-x) + 1)/n^3`.
pub fn moment_identities_check(n: usize, xs: &[f64]) -> Result<MomentReport> {
    if n == 0 {
        return Err(OpError::InvalidInput("degree must be >= 1".into()));
    }
    let nf = n as f64;
    let mut max_gaps = [0.0_f64; 6];
    for &x in xs {
        check_unit(x)?;
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
        for i in 0..6 {
            max_gaps[i] = max_gaps[i].max((direct[i] - closed[i]).abs());
        }
    }
    Ok(MomentReport { max_gaps })
}

/// Sample `f` on `[-N, N]` through the affine map `phi(x) = 2Nx - N`;
/// evaluation and differentiation of the result route back through
/// `phi^{-1}` with the `1/(2N)` chain-rule factor.
pub fn transport_interval(
    f: impl Fn(f64) -> f64,
    n: usize,
    half_width: f64,
) -> Result<BernsteinModel> {
    if n == 0 {
        return Err(OpError::InvalidInput("degree must be >= 1".into()));
    }
    if !half_width.is_finite() || half_width <= 0.0 {
        return Err(OpError::InvalidInput(
            "transport half-width must be positive".into(),
        ));
    }
    let phi = |x: f64| 2.0 * half_width * x - half_width;
    let samples: Vec<f64> = (0..=n).map(|k| f(phi(k as f64 / n as f64))).collect();
    let mut model = BernsteinModel::from_samples(samples)?;
    model.source_interval = (-half_width, half_width);
    Ok(model)
}

/// Sup of `|B_n(f) - f|` and `|B_n'(f) - f'|` over a 1001-point grid on
/// `[0, 1]`.
pub fn uniform_error(
    f: impl Fn(f64) -> f64,
    f_prime: impl Fn(f64) -> f64,
    n: usize,
) -> Result<(f64, f64)> {
    let model = BernsteinModel::from_fn(n, &f)?;
    let mut sup_err = 0.0_f64;
    let mut sup_deriv_err = 0.0_f64;
    for i in 0..=1000 {
        let x = i as f64 / 1000.0;
        sup_err = sup_err.max((model.eval_unit(x)? - f(x)).abs());
        sup_deriv_err = sup_deriv_err.max((model.derivative_eval_unit(x)? - f_prime(x)).abs());
    }
    Ok((sup_err, sup_deriv_err))
}
