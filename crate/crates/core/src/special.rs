//! Polylogarithm `Li_v(x) = sum_{n>=1} x^n / n^v` on `x ∈ [0, 1]`, plus the
//! Hurwitz zeta function used for slowly converging tails.
//!
//! | Region | Method |
//! |--------|--------|
//! | `x <= 1/2` | direct series, geometric tail bound |
//! | `v = 2`, `1/2 < x < 1` | reflection `Li2(x) + Li2(1-x) = π²/6 - ln(x) ln(1-x)` |
//! | `v != 2`, `1/2 < x < 1` | duplication `Li_v(x) = 2^{1-v} Li_v(x²) - Li_v(-x)`, alternating terms accelerated |
//! | `x = 1` | `π²/6` for `v = 2`, otherwise `ζ(v)` by Euler–Maclaurin |
//!
//! Target accuracy is `1e-12` absolute on the whole interval.

use std::f64::consts::PI;

use crate::Error;

/// `π²/6 = Li2(1) = ζ(2)`.
pub const ZETA2: f64 = PI * PI / 6.0;

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_20`.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// A validated polylogarithm argument pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolylogQuery {
    pub v: f64,
    pub x: f64,
}

impl PolylogQuery {
    /// Accepts `x ∈ [0, 1]` with `v >= 2`, or `v > 1` when `x < 1`.
    pub fn new(v: f64, x: f64) -> Result<Self, Error> {
        if !(x.is_finite() && (0.0..=1.0).contains(&x)) {
            return Err(Error::DomainError(format!("x = {x} is outside [0, 1]")));
        }
        if !v.is_finite() || v <= 1.0 || (v < 2.0 && x >= 1.0) {
            return Err(Error::DomainError(format!(
                "order v = {v} unsupported at x = {x} (need v >= 2, or v > 1 with x < 1)"
            )));
        }
        Ok(Self { v, x })
    }

    pub fn eval(self) -> f64 {
        let Self { v, x } = self;
        if x == 0.0 {
            0.0
        } else if x <= 0.5 {
            direct_series(v, x)
        } else if v == 2.0 {
            if x == 1.0 {
                ZETA2
            } else {
                ZETA2 - x.ln() * (-x).ln_1p() - direct_series(2.0, 1.0 - x)
            }
        } else if x == 1.0 {
            hurwitz_zeta(v, 1.0)
        } else {
            duplication(v, x)
        }
    }
}

/// `Li_v(x)` for real `x ∈ [0, 1]`.
pub fn li(v: f64, x: f64) -> Result<f64, Error> {
    Ok(PolylogQuery::new(v, x)?.eval())
}

/// `Li2(x)/x`, with the value `1` at `x = 0`.
pub fn li_ratio(x: f64) -> Result<f64, Error> {
    if x == 0.0 {
        return Ok(1.0);
    }
    let q = PolylogQuery::new(2.0, x)?;
    if x <= 0.5 {
        // sum x^{n-1}/n^2 directly: no cancellation and no underflow for tiny x
        Ok(series_sum(2.0, x, 0))
    } else {
        Ok(q.eval() / x)
    }
}

/// `sum_{n>=1} x^{n-1+extra} / n^v`.
fn series_sum(v: f64, x: f64, extra: i32) -> f64 {
    let mut sum = 0.0;
    let mut xp = x.powi(extra);
    let mut n = 1.0f64;
    loop {
        let term = xp / n.powf(v);
        sum += term;
        // remaining terms are bounded by a geometric series
        let tail = xp * x / (n + 1.0).powf(v) / (1.0 - x);
        if tail <= 1e-18 * sum || tail < f64::MIN_POSITIVE {
            break;
        }
        xp *= x;
        n += 1.0;
    }
    sum
}

fn direct_series(v: f64, x: f64) -> f64 {
    series_sum(v, x, 1)
}

/// `Li_v(x)` for `1/2 < x < 1` by repeated duplication until the argument
/// falls to `1/2` or below.
fn duplication(v: f64, x: f64) -> f64 {
    let factor = 2f64.powf(1.0 - v);
    let mut scale = 1.0;
    let mut acc = 0.0;
    let mut y = x;
    while y > 0.5 {
        acc -= scale * li_negative(v, y);
        scale *= factor;
        y *= y;
    }
    acc + scale * direct_series(v, y)
}

/// `Li_v(-y)` for `y ∈ [0, 1]`.
///
/// The terms `y^{k+1}/(k+1)^v` form a moment sequence of a positive measure
/// on `[0, 1]`, so the Cohen–Rodriguez Villegas–Zagier alternating-series
/// acceleration converges like `(3 + √8)^{-n}`.
fn li_negative(v: f64, y: f64) -> f64 {
    const N: i32 = 36;
    let mut d = (3.0 + 8f64.sqrt()).powi(N);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    let mut yk = y;
    for k in 0..N {
        c = b - c;
        s += c * yk / ((k + 1) as f64).powf(v);
        yk *= y;
        let kf = k as f64;
        let nf = N as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    // s/d approximates sum_k (-1)^k a_k; Li_v(-y) = -that
    -s / d
}

/// Hurwitz zeta `ζ(s, a) = sum_{n>=0} (n + a)^{-s}` for `s > 1`, `a > 0`,
/// by Euler–Maclaurin summation after a short direct head.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1 and a > 0");
    const HEAD: usize = 12;
    let head: f64 = (0..HEAD).rev().map(|n| (a + n as f64).powf(-s)).sum();
    let b = a + HEAD as f64;
    let mut tail = b.powf(1.0 - s) / (s - 1.0) + 0.5 * b.powf(-s);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * b^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut bpow = b.powf(-s - 1.0);
    for (i, &b2k) in BERNOULLI_EVEN.iter().enumerate() {
        let k = i + 1;
        let term = b2k / fact * rising * bpow;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let two_k = 2.0 * k as f64;
        rising *= (s + two_k - 1.0) * (s + two_k);
        fact *= (two_k + 1.0) * (two_k + 2.0);
        bpow /= b * b;
    }
    head + tail
}
