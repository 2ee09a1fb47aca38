//! Logarithmic coefficients `d_n` from `log(f(z)/z) = 2 sum d_n z^{n m}` and
//! the three weighted sums that the bounds control.
//!
//! Indices are the abstract `n` (coefficient of `z^{n m}`), so the weights
//! `n²` and `(n+1)^t` use `n`, never the raw exponent.

use num_complex::Complex64;

use crate::class::{ClassMember, ClassParams};
use crate::Error;

/// Off-support coefficients of `log(f/z)` must vanish identically; anything
/// above this is a pipeline bug, not rounding.
pub const SUPPORT_TOL: f64 = 1e-12;

/// `d_1..d_{N_d}` with `N_d = floor(N / m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogCoeffVector {
    d: Vec<Complex64>,
    m: usize,
}

impl LogCoeffVector {
    pub fn new(d: Vec<Complex64>, m: usize) -> Self {
        Self { d, m }
    }

    /// Convenience constructor for tests and lemma inputs.
    pub fn from_real(d: &[f64], m: usize) -> Self {
        Self::new(d.iter().map(|&x| Complex64::new(x, 0.0)).collect(), m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_terms(&self) -> usize {
        self.d.len()
    }

    /// `d_n` for `1 <= n <= N_d`.
    pub fn get(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(1).and_then(|i| self.d.get(i).copied())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.d
    }

    /// Mutable access for fault injection in verification runs.
    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.d
    }

    /// Keeps only `d_1..d_n`.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            d: self.d[..n.min(self.d.len())].to_vec(),
            m: self.m,
        }
    }

    /// `(n, |d_n|²)` pairs.
    fn squares(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.d
            .iter()
            .enumerate()
            .map(|(i, z)| ((i + 1) as f64, z.norm_sqr()))
    }

    /// `sum |d_n|²`.
    pub fn sum_sq(&self) -> f64 {
        self.squares().map(|(_, s)| s).sum()
    }

    /// `sum n² |d_n|²`.
    pub fn sum_n2(&self) -> f64 {
        self.squares().map(|(n, s)| n * n * s).sum()
    }

    /// `sum (n+1)^t |d_n|²` for `t <= 2`; negative `t` is allowed.
    pub fn sum_weighted(&self, t: f64) -> Result<f64, Error> {
        if t > 2.0 || t.is_nan() {
            return Err(Error::WeightOutOfRange(t));
        }
        Ok(self.squares().map(|(n, s)| (n + 1.0).powf(t) * s).sum())
    }
}

/// Extracts `d_n = [z^{n m}] log(f/z) / 2`, rejecting any nonzero
/// coefficient off the multiples of `m`.
pub fn log_coefficients(member: &ClassMember) -> Result<LogCoeffVector, Error> {
    let m = member.params.m();
    let log = member.log_quotient()?;
    let mut d = Vec::with_capacity(log.order() / m);
    for (exponent, &c) in log.coeffs().iter().enumerate().skip(1) {
        if exponent % m == 0 {
            d.push(c * 0.5);
        } else if c.norm() > SUPPORT_TOL {
            return Err(Error::SupportViolation {
                exponent,
                modulus: c.norm(),
            });
        }
    }
    Ok(LogCoeffVector::new(d, m))
}

/// Closed-form `d_n` of the extremal function:
/// `(1/2) (-1)^{n-1} ((A-B)/(m B)) B^n / n` for `B != 0`, and `A/(2m)` at
/// `n = 1` (zero beyond) for `B = 0`.
pub fn extremal_log_coefficient(params: &ClassParams, n: usize) -> Complex64 {
    assert!(n >= 1, "logarithmic coefficients start at n = 1");
    let m = params.m() as f64;
    let b = params.b();
    if b == 0.0 {
        return if n == 1 {
            params.a() / (2.0 * m)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    // B^n / B = B^{n-1}, avoiding the division
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    (params.a() - b) * (0.5 * sign * b.powi(n as i32 - 1) / (m * n as f64))
}
