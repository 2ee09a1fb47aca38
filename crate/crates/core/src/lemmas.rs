//! The two coefficient lemmas behind the bounds, as numerical checkers.
//!
//! - ℓ² dominance under subordination: if `F = G ∘ ω` with a Schwarz `ω`,
//!   every partial sum `sum_{n<=K} |b_n|²` is at most `sum_{n<=K} |c_n|²`.
//! - Weight transfer: if `sum_{n<=K} x_n <= C sum_{n<=K} y_n` for every `K`
//!   and the weights `w_n = (n+1)^t / n²` are nonincreasing (`t <= 2`), then
//!   `sum w_n x_n <= C sum w_n y_n`, by summation by parts with the positive
//!   factors `w_k - w_{k+1}`.

use crate::bounds::weight;
use crate::series::TruncatedSeries;
use crate::Error;

/// Additive slack for the ℓ² partial-sum comparison.
pub const L2_SLACK: f64 = 1e-10;
/// Relative slack for partial-sum comparisons in the weight transfer.
const TRANSFER_REL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct L2Outcome {
    pub holds: bool,
    /// `min_K (sum |c_n|² - sum |b_n|²)`.
    pub min_slack: f64,
    /// The `K` attaining the minimum slack.
    pub worst_k: usize,
}

/// Compares `sum_{1<=n<=K} |b_n|²` with `sum_{1<=n<=K} |c_n|²` for all
/// `K <= upto` (clamped to the common order), `b` from `subordinate`, `c`
/// from `superordinate`.
pub fn rogosinski_l2_check(
    subordinate: &TruncatedSeries,
    superordinate: &TruncatedSeries,
    upto: usize,
) -> L2Outcome {
    let upto = upto.min(subordinate.order()).min(superordinate.order());
    let mut sub = 0.0;
    let mut sup = 0.0;
    let mut min_slack = f64::INFINITY;
    let mut worst_k = 0;
    for k in 1..=upto {
        sub += subordinate.coeffs()[k].norm_sqr();
        sup += superordinate.coeffs()[k].norm_sqr();
        let slack = sup - sub;
        if slack < min_slack {
            min_slack = slack;
            worst_k = k;
        }
    }
    if upto == 0 {
        min_slack = 0.0;
    }
    L2Outcome {
        holds: min_slack >= -L2_SLACK,
        min_slack,
        worst_k,
    }
}

/// `(k+1)^t/k² - (k+2)^t/(k+1)²`, the factor multiplying the `k`-th
/// partial-sum inequality.
pub fn weight_factor(k: usize, t: f64) -> f64 {
    weight(k as f64, t) - weight(k as f64 + 1.0, t)
}

/// The first `k <= k_max` whose weight factor is not positive.
pub fn first_nonpositive_weight_factor(t: f64, k_max: usize) -> Option<usize> {
    (1..=k_max).find(|&k| weight_factor(k, t) <= 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferOutcome {
    pub holds: bool,
    /// `rhs - lhs`.
    pub margin: f64,
    /// `sum w_n x_n`.
    pub lhs: f64,
    /// `C sum w_n y_n`.
    pub rhs: f64,
    /// `sum_{k<N} (w_k - w_{k+1}) X_k + w_N X_N`; equals `lhs` up to rounding.
    pub telescoped_lhs: f64,
}

/// Re-verifies the partial-sum hypothesis and the weight positivity, then
/// compares the weighted sums over `n = 1..=len`.
pub fn abel_weight_transfer(
    x: &[f64],
    y: &[f64],
    c: f64,
    t: f64,
    len: usize,
) -> Result<TransferOutcome, Error> {
    if t > 2.0 || t.is_nan() {
        return Err(Error::WeightOutOfRange(t));
    }
    if len > x.len() || len > y.len() {
        return Err(Error::DomainError(format!(
            "length {len} exceeds the sequences ({}, {})",
            x.len(),
            y.len()
        )));
    }
    if x[..len]
        .iter()
        .chain(&y[..len])
        .any(|v| v.is_nan() || *v < 0.0)
        || c.is_nan()
        || c < 0.0
    {
        return Err(Error::DomainError(
            "sequences and C must be nonnegative".into(),
        ));
    }

    let mut px = 0.0;
    let mut py = 0.0;
    let mut partial_x = Vec::with_capacity(len);
    for k in 0..len {
        px += x[k];
        py += y[k];
        if px > c * py + TRANSFER_REL_TOL * (c * py).max(1.0) {
            return Err(Error::HypothesisViolated { k: k + 1 });
        }
        partial_x.push(px);
    }
    if let Some(k) = first_nonpositive_weight_factor(t, len.saturating_sub(1)) {
        return Err(Error::DomainError(format!(
            "weight factor at k = {k} is not positive"
        )));
    }

    let w = |n: usize| weight(n as f64, t);
    let lhs: f64 = (1..=len).map(|n| w(n) * x[n - 1]).sum();
    let rhs: f64 = c * (1..=len).map(|n| w(n) * y[n - 1]).sum::<f64>();
    let telescoped_lhs = if len == 0 {
        0.0
    } else {
        (1..len)
            .map(|k| weight_factor(k, t) * partial_x[k - 1])
            .sum::<f64>()
            + w(len) * partial_x[len - 1]
    };
    let margin = rhs - lhs;
    Ok(TransferOutcome {
        holds: margin >= -TRANSFER_REL_TOL * rhs.max(1.0),
        margin,
        lhs,
        rhs,
        telescoped_lhs,
    })
}
