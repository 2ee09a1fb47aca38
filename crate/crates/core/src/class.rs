//! Members of `ST[j,k](A,B)`.
//!
//! Every member is produced through the defining subordination: pick a
//! Schwarz function `v`, set `V(z) = v(z^m)` and
//!
//! ```text
//! z f'(z)/f(z) - 1 = P(z) = (A - B) V(z) / (1 + B V(z)),
//! f(z) = z exp( int_0^z P(t)/t dt ).
//! ```
//!
//! `v(w) = w` gives the extremal function `K`. The other seed variants carry
//! an elementary certificate of `|v(w)| <= |w|` on the disk, so every
//! generated function satisfies the subordination by construction.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cnum::{format_complex, parse_complex};
use crate::series::TruncatedSeries;
use crate::Error;

/// Slack allowed on `sum |p_i| <= 1` for polynomial seeds, to absorb
/// rounding in normalized coefficient vectors.
pub const POLY_SEED_SLACK: f64 = 1e-12;

/// `(j, k, A, B)` with `m = j + k - 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    j: usize,
    k: usize,
    a: Complex64,
    b: f64,
}

impl ClassParams {
    /// Validates `-1 <= B <= 0`, `A != B`, `m >= 1` and `0 <= j <= k-1`
    /// (or `(j, k) = (1, 1)`).
    pub fn new(j: usize, k: usize, a: Complex64, b: f64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be positive".into()));
        }
        if !(j < k || (j, k) == (1, 1)) {
            return Err(Error::InvalidParams(format!(
                "(j, k) = ({j}, {k}) needs 0 <= j <= k-1"
            )));
        }
        if j + k < 2 {
            return Err(Error::InvalidParams("j + k - 1 must be at least 1".into()));
        }
        if !(b.is_finite() && (-1.0..=0.0).contains(&b)) {
            return Err(Error::InvalidParams(format!("B = {b} is outside [-1, 0]")));
        }
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidParams(format!("A = {a} is not finite")));
        }
        if a == Complex64::new(b, 0.0) {
            return Err(Error::InvalidParams("A must differ from B".into()));
        }
        // normalize -0.0 so reports and keys are stable
        Ok(Self {
            j,
            k,
            a,
            b: if b == 0.0 { 0.0 } else { b },
        })
    }

    /// Shorthand for real `A`.
    pub fn real(j: usize, k: usize, a: f64, b: f64) -> Result<Self, Error> {
        Self::new(j, k, Complex64::new(a, 0.0), b)
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `m = j + k - 1`, the step of the logarithmic expansion.
    pub fn m(&self) -> usize {
        self.j + self.k - 1
    }

    /// `|A - B|`.
    pub fn gap(&self) -> f64 {
        (self.a - self.b).norm()
    }

    /// Exponent `(A - B)/(m B)` of the extremal function for `B != 0`.
    fn extremal_exponent(&self) -> Complex64 {
        (self.a - self.b) / (self.m() as f64 * self.b)
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(j={}, k={}, A={}, B={})",
            self.j,
            self.k,
            format_complex(self.a),
            self.b
        )
    }
}

/// A Schwarz function `v` with `v(0) = 0` and `|v(w)| <= |w|`.
#[derive(Clone, Debug, PartialEq)]
pub enum SchwarzSeed {
    /// `v(w) = w`.
    Identity,
    /// `v(w) = e^{iθ} w`.
    Rotation { theta: f64 },
    /// `v(w) = e^{iθ} w e^{c(w-1)}`, `c >= 0`.
    ExpDamp { theta: f64, c: f64 },
    /// `v(w) = sum_{i>=1} p_i w^i` with `sum |p_i| <= 1`; holds `p_1, p_2, ...`.
    Polynomial(Vec<Complex64>),
}

impl SchwarzSeed {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            Self::Identity => Ok(()),
            Self::Rotation { theta } if theta.is_finite() => Ok(()),
            Self::ExpDamp { theta, c } if theta.is_finite() && c.is_finite() && *c >= 0.0 => Ok(()),
            Self::Polynomial(p) => {
                if p.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                    return Err(Error::InvalidSeed(
                        "non-finite polynomial coefficient".into(),
                    ));
                }
                let l1: f64 = p.iter().map(|z| z.norm()).sum();
                if l1 > 1.0 + POLY_SEED_SLACK {
                    return Err(Error::InvalidSeed(format!("sum |p_i| = {l1} exceeds 1")));
                }
                Ok(())
            }
            other => Err(Error::InvalidSeed(format!(
                "{other}: parameters out of range"
            ))),
        }
    }

    /// Closed-form value `v(w)`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        match self {
            Self::Identity => w,
            Self::Rotation { theta } => Complex64::from_polar(1.0, *theta) * w,
            Self::ExpDamp { theta, c } => {
                Complex64::from_polar(1.0, *theta) * w * ((w - 1.0) * *c).exp()
            }
            Self::Polynomial(p) => p
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &pi| (acc + pi) * w),
        }
    }

    /// Parameters used to break ties deterministically: variant rank, then
    /// the numeric parameters in order.
    pub fn sort_key(&self) -> (u8, Vec<f64>) {
        match self {
            Self::Identity => (0, vec![]),
            Self::Rotation { theta } => (1, vec![*theta]),
            Self::ExpDamp { theta, c } => (2, vec![*theta, *c]),
            Self::Polynomial(p) => (3, p.iter().flat_map(|z| [z.re, z.im]).collect()),
        }
    }
}

impl fmt::Display for SchwarzSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => write!(f, "identity"),
            Self::Rotation { theta } => write!(f, "rotation:{theta}"),
            Self::ExpDamp { theta, c } => write!(f, "expdamp:{theta}:{c}"),
            Self::Polynomial(p) => {
                write!(f, "poly")?;
                for z in p {
                    write!(f, ":{}", format_complex(*z))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SchwarzSeed {
    type Err = Error;

    /// `identity`, `rotation:θ`, `expdamp:θ:c`, `poly:p1:p2:...`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let rest: Vec<&str> = parts.collect();
        let real = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::InvalidSeed(format!("bad number {t:?} in seed {s:?}")))
        };
        let seed = match (kind.as_str(), rest.as_slice()) {
            ("identity", []) => Self::Identity,
            ("rotation", [theta]) => Self::Rotation {
                theta: real(theta)?,
            },
            ("expdamp", [theta, c]) => Self::ExpDamp {
                theta: real(theta)?,
                c: real(c)?,
            },
            ("poly", coeffs) if !coeffs.is_empty() => Self::Polynomial(
                coeffs
                    .iter()
                    .map(|t| {
                        parse_complex(t)
                            .ok_or_else(|| Error::InvalidSeed(format!("bad coefficient {t:?}")))
                    })
                    .collect::<Result<_, _>>()?,
            ),
            _ => return Err(Error::InvalidSeed(format!("unrecognized seed {s:?}"))),
        };
        seed.validate()?;
        Ok(seed)
    }
}

/// Taylor coefficients of `v(w)` up to `order`.
pub fn seed_series(seed: &SchwarzSeed, order: usize) -> Result<TruncatedSeries, Error> {
    seed.validate()?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    match seed {
        SchwarzSeed::Identity => {
            if order >= 1 {
                coeffs[1] = Complex64::new(1.0, 0.0);
            }
        }
        SchwarzSeed::Rotation { theta } => {
            if order >= 1 {
                coeffs[1] = Complex64::from_polar(1.0, *theta);
            }
        }
        SchwarzSeed::ExpDamp { theta, c } => {
            // e^{iθ} e^{-c} c^{n-1}/(n-1)!
            let mut term = Complex64::from_polar((-c).exp(), *theta);
            for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
                *slot = term;
                term *= *c / n as f64;
            }
        }
        SchwarzSeed::Polynomial(p) => {
            for (i, &pi) in p.iter().enumerate() {
                if i < order {
                    coeffs[i + 1] = pi;
                }
            }
        }
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// A function of the class, truncated at `order`.
#[derive(Clone, Debug)]
pub struct ClassMember {
    /// `f(z) = z + ...`, coefficients `0..=order`.
    pub series: TruncatedSeries,
    /// `f(z)/z`, also carried to `order` so that exponents up to `order`
    /// of `log(f/z)` are available.
    pub quotient: TruncatedSeries,
    pub params: ClassParams,
    pub seed: SchwarzSeed,
    pub order: usize,
}

impl ClassMember {
    fn from_quotient(
        quotient: TruncatedSeries,
        params: ClassParams,
        seed: SchwarzSeed,
        order: usize,
    ) -> Self {
        let series = quotient.mul_z().truncate(order);
        Self {
            series,
            quotient,
            params,
            seed,
            order,
        }
    }

    /// `log(f/z)`.
    pub fn log_quotient(&self) -> Result<TruncatedSeries, Error> {
        self.quotient.log()
    }

    /// `z f'(z)/f(z) - 1 = z (log(f/z))'`.
    pub fn starlike_excess(&self) -> Result<TruncatedSeries, Error> {
        let log = self.log_quotient()?;
        let coeffs = log
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, &c)| c * n as f64)
            .collect();
        Ok(TruncatedSeries::new(coeffs))
    }
}

fn check_order(params: &ClassParams, order: usize) -> Result<(), Error> {
    if order < params.m() {
        return Err(Error::TruncationTooSmall {
            order,
            needed: params.m(),
        });
    }
    Ok(())
}

/// The extremal function `K(z) = z exp(A z^m / m)` for `B = 0`, and
/// `K(z) = z (1 + B z^m)^{(A-B)/(m B)}` otherwise.
pub fn extremal_function(params: &ClassParams, order: usize) -> Result<ClassMember, Error> {
    check_order(params, order)?;
    let m = params.m();
    let quotient = if params.b() == 0.0 {
        let inner = TruncatedSeries::new(vec![Complex64::new(0.0, 0.0), params.a() / m as f64]);
        inner.compose_power(m, order).exp()?
    } else {
        let base = TruncatedSeries::from_real(&[1.0, params.b()]);
        base.compose_power(m, order)
            .powc(params.extremal_exponent())?
    };
    Ok(ClassMember::from_quotient(
        quotient,
        *params,
        SchwarzSeed::Identity,
        order,
    ))
}

/// The member whose subordination witness is `seed` at the level `w = z^m`.
pub fn member_from_seed(
    params: &ClassParams,
    seed: &SchwarzSeed,
    order: usize,
) -> Result<ClassMember, Error> {
    check_order(params, order)?;
    let m = params.m();
    let v = seed_series(seed, order / m)?.compose_power(m, order);
    let one = TruncatedSeries::constant(Complex64::new(1.0, 0.0), order);
    let denom = &one + &v.scale(Complex64::new(params.b(), 0.0));
    let p = v.scale(params.a() - params.b()).div(&denom)?;
    let quotient = p.integrate_over_t()?.exp()?;
    Ok(ClassMember::from_quotient(
        quotient,
        *params,
        seed.clone(),
        order,
    ))
}

/// `Q(z) = z / K(z)`: `exp(-A z^m/m)` for `B = 0`, `(1 + B z^m)^{-(A-B)/(m B)}`
/// otherwise.
pub fn q_function(params: &ClassParams, order: usize) -> TruncatedSeries {
    let m = params.m();
    let result = if params.b() == 0.0 {
        let inner = TruncatedSeries::new(vec![Complex64::new(0.0, 0.0), -params.a() / m as f64]);
        inner.compose_power(m, order).exp()
    } else {
        let base = TruncatedSeries::from_real(&[1.0, params.b()]);
        base.compose_power(m, order)
            .powc(-params.extremal_exponent())
    };
    result.expect("constant terms are fixed by construction")
}

/// Uniform angles `2π i / count`, used for boundary and grid probes.
pub fn circle_points(radius: f64, count: usize) -> impl Iterator<Item = Complex64> {
    (0..count).map(move |i| Complex64::from_polar(radius, TAU * i as f64 / count as f64))
}
