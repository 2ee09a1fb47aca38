//! Closed-form coefficient bounds and their verification on class members.
//!
//! With `P = (|A-B| / (2m))²`, `x = B²` and `H = P / B²`:
//!
//! | Tag | Left side | Bound |
//! |-----|-----------|-------|
//! | `ThmA` | `sum |d_n|²` | `H Li2(x) = P Li2(x)/x` |
//! | `Thm2` | `sum n² |d_n|²` | `|A-B|² / (4 m² (1 - x))`, `B != -1` |
//! | `Thm3(t)` | `sum (n+1)^t |d_n|²` | `H sum (n+1)^t x^n / n² = P sum (n+1)^t x^{n-1} / n²`, `t <= 2` |
//!
//! Writing every bound through `P` makes `B = 0` the continuous limit rather
//! than a special case: `Li2(x)/x -> 1` and the weighted series tends to `2^t`.
//! All three are attained by the extremal function, term by term.

use std::fmt;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::class::{extremal_function, ClassMember, ClassParams, SchwarzSeed};
use crate::logcoef::{log_coefficients, LogCoeffVector};
use crate::special::{hurwitz_zeta, li_ratio};
use crate::Error;

/// A left side may exceed its bound by at most this ratio slack.
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Relative tolerance for equality at the extremal function.
pub const SHARPNESS_TOL: f64 = 1e-8;
/// Term-by-term tolerance on `|d_n(K)|²`.
pub const TERM_TOL: f64 = 1e-11;
/// Largest `|B|` at which equality is certified without slow mode.
pub const FAST_SHARPNESS_MAX_B: f64 = 0.9;
/// Minimum `N_d` for equality checks at `B = -1`.
pub const SLOW_MIN_TERMS: usize = 10_000;

/// Which inequality a bound belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Theorem {
    ThmA,
    Thm2,
    Thm3(f64),
}

impl Theorem {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::ThmA => "ThmA",
            Self::Thm2 => "Thm2",
            Self::Thm3(_) => "Thm3",
        }
    }

    pub fn t(&self) -> Option<f64> {
        match self {
            Self::Thm3(t) => Some(*t),
            _ => None,
        }
    }

    /// The corresponding partial sum of `d`.
    pub fn partial_sum(&self, d: &LogCoeffVector) -> Result<f64, Error> {
        match self {
            Self::ThmA => Ok(d.sum_sq()),
            Self::Thm2 => Ok(d.sum_n2()),
            Self::Thm3(t) => d.sum_weighted(*t),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Thm3(t) => write!(f, "Thm3(t={t})"),
            other => f.write_str(other.tag()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub bound: f64,
    pub theorem: Theorem,
    pub params: ClassParams,
    /// `H = (|A-B|/(2mB))²`; at `B = 0` the rescaled limit `(|A|/(2m))²`.
    pub h_factor: f64,
}

/// `P = (|A-B|/(2m))²`.
pub fn prefactor(params: &ClassParams) -> f64 {
    let r = params.gap() / (2.0 * params.m() as f64);
    r * r
}

pub fn h_factor(params: &ClassParams) -> f64 {
    let b = params.b();
    if b == 0.0 {
        prefactor(params)
    } else {
        prefactor(params) / (b * b)
    }
}

fn result(params: &ClassParams, theorem: Theorem, bound: f64) -> BoundResult {
    BoundResult {
        bound,
        theorem,
        params: *params,
        h_factor: h_factor(params),
    }
}

/// `sum |d_n|² <= (|A-B|/(2m))² Li2(B²)/B²`.
pub fn thm_a_bound(params: &ClassParams) -> BoundResult {
    let x = params.b() * params.b();
    let ratio = li_ratio(x).expect("B² lies in [0, 1]");
    result(params, Theorem::ThmA, prefactor(params) * ratio)
}

/// `sum n² |d_n|² <= |A-B|² / (4 m² (1 - B²))`, for `B != -1`.
pub fn thm2_bound(params: &ClassParams) -> Result<BoundResult, Error> {
    let b = params.b();
    if b <= -1.0 {
        return Err(Error::BExcluded);
    }
    Ok(result(
        params,
        Theorem::Thm2,
        prefactor(params) / (1.0 - b * b),
    ))
}

/// `sum (n+1)^t |d_n|² <= H sum (n+1)^t B^{2n} / n²`, for `t <= 2`.
///
/// At `B = -1` the series only converges for `t < 1`.
pub fn thm3_bound(params: &ClassParams, t: f64) -> Result<BoundResult, Error> {
    let x = params.b() * params.b();
    let s = weighted_series(t, x)?;
    Ok(result(params, Theorem::Thm3(t), prefactor(params) * s))
}

pub fn bound_for(params: &ClassParams, theorem: Theorem) -> Result<BoundResult, Error> {
    match theorem {
        Theorem::ThmA => Ok(thm_a_bound(params)),
        Theorem::Thm2 => thm2_bound(params),
        Theorem::Thm3(t) => thm3_bound(params, t),
    }
}

/// `(n+1)^t / n²`, nonincreasing in `n` whenever `t <= 2`.
pub fn weight(n: f64, t: f64) -> f64 {
    (n + 1.0).powf(t) / (n * n)
}

/// `S(t, x) = sum_{n>=1} (n+1)^t x^{n-1} / n²` for `x ∈ [0, 1]`.
pub fn weighted_series(t: f64, x: f64) -> Result<f64, Error> {
    if t > 2.0 || t.is_nan() {
        return Err(Error::WeightOutOfRange(t));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::DomainError(format!("B² = {x} is outside [0, 1]")));
    }
    if x == 0.0 {
        return Ok(2f64.powf(t));
    }
    if x == 1.0 {
        if t >= 1.0 {
            return Err(Error::DivergentSeries(t));
        }
        const HEAD: usize = 64;
        let head: f64 = (1..=HEAD).rev().map(|n| weight(n as f64, t)).sum();
        return Ok(head + zeta_weighted_tail(t, HEAD));
    }
    let mut sum = 0.0;
    let mut xp = 1.0;
    let mut n = 1.0;
    loop {
        sum += weight(n, t) * xp;
        // weights are nonincreasing, so the rest is below a geometric series
        let tail = weight(n + 1.0, t) * xp * x / (1.0 - x);
        if tail <= 1e-17 * sum || tail < f64::MIN_POSITIVE {
            return Ok(sum);
        }
        xp *= x;
        n += 1.0;
    }
}

/// `sum_{n > from} (n+1)^t / n²` for `t < 1`, `from >= 2`, by expanding
/// `(n+1)^t = sum_j C(t, j) n^{t-j}` into Hurwitz zeta values.
pub fn zeta_weighted_tail(t: f64, from: usize) -> f64 {
    assert!(t < 1.0 && from >= 2, "tail needs t < 1 and from >= 2");
    let a = from as f64 + 1.0;
    let mut binom = 1.0;
    let mut total = 0.0;
    for j in 0..80 {
        let jf = j as f64;
        let term = binom * hurwitz_zeta(2.0 + jf - t, a);
        total += term;
        if term.abs() <= 1e-18 * total.abs() {
            break;
        }
        binom *= (t - jf) / (jf + 1.0);
        if binom == 0.0 {
            break;
        }
    }
    total
}

/// Upper bound on the extremal's remaining mass past `n_d` terms
/// (geometric bound for `|B| < 1`, exact zeta tail at `B = -1`).
///
/// `None` when the theorem does not apply (`Thm2` at `B = -1`).
pub fn extremal_tail(
    params: &ClassParams,
    theorem: Theorem,
    n_d: usize,
) -> Result<Option<f64>, Error> {
    let b = params.b();
    let p = prefactor(params);
    if b == 0.0 {
        return Ok(Some(if n_d >= 1 {
            0.0
        } else {
            bound_for(params, theorem)?.bound
        }));
    }
    let x = b * b;
    let next = n_d as f64 + 1.0;
    if x < 1.0 {
        let geo = p * x.powi(n_d as i32) / (1.0 - x);
        return Ok(Some(match theorem {
            Theorem::ThmA => geo / (next * next),
            Theorem::Thm2 => geo,
            Theorem::Thm3(t) => geo * weight(next, t),
        }));
    }
    match theorem {
        Theorem::ThmA => Ok(Some(p * hurwitz_zeta(2.0, next))),
        Theorem::Thm2 => Ok(None),
        Theorem::Thm3(t) if t >= 1.0 => Err(Error::DivergentSeries(t)),
        Theorem::Thm3(t) => {
            // split off terms below the zeta expansion's starting index
            let head: f64 = (n_d + 1..=n_d.max(2)).map(|n| weight(n as f64, t)).sum();
            Ok(Some(p * (head + zeta_weighted_tail(t, n_d.max(2)))))
        }
    }
}

/// Truncation order `N` whose extremal tail is negligible:
/// `B^{2 N_d} / (1 - B²) < 1e-12`, at least 8 terms; at `B = -1`, `10⁴`
/// terms in slow mode and 2000 otherwise.
pub fn auto_order(params: &ClassParams, slow: bool) -> usize {
    let x = params.b() * params.b();
    let n_d = if x == 0.0 {
        8
    } else if x >= 1.0 {
        if slow {
            SLOW_MIN_TERMS
        } else {
            2000
        }
    } else {
        let needed = ((1e-12 * (1.0 - x)).ln() / x.ln()).ceil() as usize + 1;
        needed.max(8)
    };
    n_d * params.m()
}

/// Inequality check versus equality check at the extremal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Bound,
    Sharp,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Bound => "bound",
            Self::Sharp => "sharp",
        }
    }
}

/// One checked (or documented-skipped) inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub theorem: Theorem,
    pub kind: CheckKind,
    /// For `Sharp` rows this already includes the tail bound.
    pub partial_sum: f64,
    pub bound: Option<f64>,
    pub ratio: Option<f64>,
    pub pass: bool,
    pub skipped: bool,
    pub tail_bound: Option<f64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub params: ClassParams,
    pub seed: SchwarzSeed,
    pub t_values: Vec<f64>,
    pub order: usize,
    pub n_d: usize,
    pub checks: Vec<CheckOutcome>,
    /// Seconds since the Unix epoch.
    pub timestamp: Option<u64>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, theorem: Theorem, kind: CheckKind) -> Option<&CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.theorem == theorem && c.kind == kind)
    }
}

/// Checks ThmA, Thm2 and Thm3 for each `t` on a member. Identity-seed
/// members with `|B| <= 0.9` also get equality rows.
pub fn verify_member(
    member: &ClassMember,
    t_values: &[f64],
    tol: f64,
) -> Result<VerificationReport, Error> {
    let d = log_coefficients(member)?;
    verify_coefficients(
        &d,
        &member.params,
        &member.seed,
        member.order,
        t_values,
        tol,
    )
}

/// [`verify_member`] on precomputed coefficients.
pub fn verify_coefficients(
    d: &LogCoeffVector,
    params: &ClassParams,
    seed: &SchwarzSeed,
    order: usize,
    t_values: &[f64],
    tol: f64,
) -> Result<VerificationReport, Error> {
    if let Some(&t) = t_values.iter().find(|&&t| t > 2.0 || t.is_nan()) {
        return Err(Error::WeightOutOfRange(t));
    }
    let extremal = *seed == SchwarzSeed::Identity;
    let sharp = extremal && params.b().abs() <= FAST_SHARPNESS_MAX_B;
    let theorems = std::iter::once(Theorem::ThmA)
        .chain(std::iter::once(Theorem::Thm2))
        .chain(t_values.iter().map(|&t| Theorem::Thm3(t)));

    let mut checks = Vec::new();
    for theorem in theorems {
        if theorem == Theorem::Thm2 && params.b() <= -1.0 {
            checks.push(CheckOutcome {
                theorem,
                kind: CheckKind::Bound,
                partial_sum: d.sum_n2(),
                bound: None,
                ratio: None,
                pass: true,
                skipped: true,
                tail_bound: None,
                note: Some("Thm2 excludes B = -1".into()),
            });
            continue;
        }
        let bound = match bound_for(params, theorem) {
            Ok(b) => b.bound,
            Err(Error::DivergentSeries(t)) => {
                checks.push(CheckOutcome {
                    theorem,
                    kind: CheckKind::Bound,
                    partial_sum: theorem.partial_sum(d)?,
                    bound: None,
                    ratio: None,
                    pass: true,
                    skipped: true,
                    tail_bound: None,
                    note: Some(format!("bound is infinite at B = -1 for t = {t}")),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let sum = theorem.partial_sum(d)?;
        let tail = if extremal {
            extremal_tail(params, theorem, d.n_terms())?
        } else {
            None
        };
        let ratio = sum / bound;
        checks.push(CheckOutcome {
            theorem,
            kind: CheckKind::Bound,
            partial_sum: sum,
            bound: Some(bound),
            ratio: Some(ratio),
            pass: ratio <= 1.0 + tol,
            skipped: false,
            tail_bound: tail,
            note: None,
        });
        if sharp {
            let tail = tail.unwrap_or(0.0);
            let ratio = (sum + tail) / bound;
            checks.push(CheckOutcome {
                theorem,
                kind: CheckKind::Sharp,
                partial_sum: sum + tail,
                bound: Some(bound),
                ratio: Some(ratio),
                pass: (ratio - 1.0).abs() <= SHARPNESS_TOL,
                skipped: false,
                tail_bound: Some(tail),
                note: None,
            });
        }
    }
    Ok(VerificationReport {
        params: *params,
        seed: seed.clone(),
        t_values: t_values.to_vec(),
        order,
        n_d: d.n_terms(),
        checks,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs()),
    })
}

/// Outcome of the equality certification for the extremal function.
#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessRow {
    pub params: ClassParams,
    pub order: usize,
    pub n_d: usize,
    pub partial_sum: f64,
    pub tail_bound: f64,
    pub bound: f64,
    /// `|sum + tail - bound| / bound`.
    pub rel_gap: f64,
    pub pass: bool,
}

/// Certifies equality in the ThmA bound at the extremal function: each
/// `|d_n(K)|²` must equal `H B^{2n}/n²`, and partial sum plus tail must
/// meet the bound within `tol` (relative).
///
/// `|B| > 0.9` needs `slow`; `B = -1` additionally needs `N_d >= 10⁴`.
pub fn check_sharpness(
    params: &ClassParams,
    order: usize,
    tol: f64,
    slow: bool,
) -> Result<SharpnessRow, Error> {
    let b = params.b();
    if b.abs() > FAST_SHARPNESS_MAX_B && !slow {
        return Err(Error::DomainError(format!(
            "equality at |B| = {} > {FAST_SHARPNESS_MAX_B} is only certified in slow mode",
            b.abs()
        )));
    }
    let n_d = order / params.m();
    if b <= -1.0 && n_d < SLOW_MIN_TERMS {
        return Err(Error::TruncationTooSmall {
            order,
            needed: SLOW_MIN_TERMS * params.m(),
        });
    }
    let d = log_coefficients(&extremal_function(params, order)?)?;
    let p = prefactor(params);
    let x = b * b;
    for (i, z) in d.as_slice().iter().enumerate() {
        let n = (i + 1) as f64;
        let expected = if b == 0.0 {
            if i == 0 {
                p
            } else {
                0.0
            }
        } else {
            p * x.powi(i as i32) / (n * n)
        };
        let got = z.norm_sqr();
        if (got - expected).abs() > TERM_TOL * expected.max(1.0) {
            return Err(Error::SharpnessFailure {
                n: i + 1,
                detail: format!("|d_n|² = {got:e}, closed form {expected:e}"),
            });
        }
    }
    let sum = d.sum_sq();
    let tail = extremal_tail(params, Theorem::ThmA, d.n_terms())?.unwrap_or(0.0);
    let bound = thm_a_bound(params).bound;
    let rel_gap = (sum + tail - bound).abs() / bound;
    Ok(SharpnessRow {
        params: *params,
        order,
        n_d: d.n_terms(),
        partial_sum: sum,
        tail_bound: tail,
        bound,
        rel_gap,
        pass: rel_gap <= tol,
    })
}
