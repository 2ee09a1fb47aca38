//! Truncated complex power series on the unit disk.
//!
//! A [`TruncatedSeries`] holds the Taylor coefficients `c_0..c_N` of an
//! analytic function, where `N` is the truncation order. Binary operations
//! truncate to the smaller of the two operand orders; nothing is ever padded
//! with implicit zeros past an operand's order.
//!
//! `log`, `exp` and `powc` use the first-order coefficient recursions
//! `L' = a'/a` and `E' = a' E`, which are `O(N^2)` and preserve the
//! support of the input exactly: a series supported on multiples of `m`
//! maps to one supported on multiples of `m`, with off-support coefficients
//! exactly zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Taylor coefficients `c_0..c_N` of a function analytic at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// If `coeffs` is empty. A series always has at least the constant term.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    /// The constant `c` truncated at `order`.
    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c z^power`, truncated at `order`.
    pub fn monomial(c: Complex64, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<Complex64> {
        self.coeffs.get(n).copied()
    }

    /// Re-truncates at `order`. Requests above the current order are clamped,
    /// never zero-padded.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Multiplies by `z`. The order grows by one since the top coefficient
    /// of `z * a` is determined by `a`.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Divides by `z`, dropping the constant term, which must be exactly zero.
    pub fn div_z(&self) -> Result<Self, Error> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::TruncationTooSmall {
                order: 0,
                needed: 1,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Coefficientwise sum up to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self { coeffs }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=order)
            .map(|n| (0..=n).fold(ZERO, |acc, i| acc + a[i] * b[n - i]))
            .collect();
        Self { coeffs }
    }

    /// Power-series quotient `self / other`, by forward substitution.
    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        let b0 = other.coeffs[0];
        if b0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(other.order());
        let b = &other.coeffs;
        let mut q: Vec<Complex64> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let acc = (1..=n).fold(self.coeffs[n], |acc, i| acc - b[i] * q[n - i]);
            q.push(acc / b0);
        }
        Ok(Self { coeffs: q })
    }

    /// Principal logarithm of a series with constant term exactly one.
    ///
    /// Uses `n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}`.
    pub fn log(&self) -> Result<Self, Error> {
        if self.coeffs[0] != ONE {
            return Err(Error::NotUnitConstantTerm);
        }
        let a = &self.coeffs;
        let order = self.order();
        let mut l = vec![ZERO; order + 1];
        for n in 1..=order {
            let mut acc = ZERO;
            for k in 1..n {
                acc += l[k] * a[n - k] * k as f64;
            }
            l[n] = a[n] - acc / n as f64;
        }
        Ok(Self { coeffs: l })
    }

    /// Exponential of a series with constant term exactly zero.
    ///
    /// Uses `n E_n = sum_{k=1}^{n} k a_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self, Error> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroConstantTerm);
        }
        let a = &self.coeffs;
        let order = self.order();
        let mut e = vec![ZERO; order + 1];
        e[0] = ONE;
        for n in 1..=order {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += a[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Ok(Self { coeffs: e })
    }

    /// Principal branch of `self^p` for a unit constant term.
    pub fn powc(&self, p: Complex64) -> Result<Self, Error> {
        self.log()?.scale(p).exp()
    }

    /// `int_0^z a(t)/t dt`, i.e. `c_n -> c_n / n`.
    ///
    /// The constant term must vanish, otherwise the integrand has a `1/t`
    /// pole at the origin.
    pub fn integrate_over_t(&self) -> Result<Self, Error> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroConstantTerm);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| if n == 0 { ZERO } else { c / n as f64 })
            .collect();
        Ok(Self { coeffs })
    }

    /// `a(z^m)` truncated at `order`: `b_{m i} = a_i`, all else zero.
    ///
    /// # Panics
    ///
    /// If `m == 0`.
    pub fn compose_power(&self, m: usize, order: usize) -> Self {
        assert!(m >= 1, "compose_power needs m >= 1");
        let mut out = Self::zero(order);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let idx = i * m;
            if idx > order {
                break;
            }
            out.coeffs[idx] = c;
        }
        out
    }

    /// Evaluates the truncated polynomial at `z` (Horner).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Largest coefficient modulus of `self - other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(-ONE)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
