//! Adversarial search for class members that come close to (or break) a
//! bound.
//!
//! The objective is `partial_sum(member) / bound` over a certified seed
//! family. A coarse grid is evaluated first (in parallel, merged in grid
//! order), then a bounded Nelder–Mead simplex refines the best grid point.
//! Identical inputs and `rng_seed` always give an identical report.

use std::cell::Cell;
use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{auto_order, bound_for, Theorem};
use crate::class::{member_from_seed, ClassParams, SchwarzSeed};
use crate::logcoef::log_coefficients;
use crate::Error;

/// Upper end of the damping parameter range.
pub const C_MAX: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedFamily {
    /// `(θ, c) ∈ [0, 2π) × [0, 5]`.
    ExpDamp,
    /// Coefficients `p_1..p_degree` on `sum |p_i| <= 1`.
    Polynomial { degree: usize },
}

impl SeedFamily {
    /// Maps an unconstrained point into the family: `θ` wraps, `c` clamps,
    /// polynomial coefficients are scaled back onto the unit ℓ¹ ball.
    fn seed_at(&self, x: &[f64]) -> SchwarzSeed {
        match self {
            Self::ExpDamp => SchwarzSeed::ExpDamp {
                theta: x[0].rem_euclid(TAU),
                c: x[1].clamp(0.0, C_MAX),
            },
            Self::Polynomial { .. } => {
                let p: Vec<Complex64> = x
                    .chunks(2)
                    .map(|pair| Complex64::new(pair[0], pair[1]))
                    .collect();
                let l1: f64 = p.iter().map(|z| z.norm()).sum();
                if l1 > 1.0 {
                    SchwarzSeed::Polynomial(p.iter().map(|z| z / l1).collect())
                } else {
                    SchwarzSeed::Polynomial(p)
                }
            }
        }
    }

    fn initial_steps(&self) -> Vec<f64> {
        match self {
            Self::ExpDamp => vec![TAU / 16.0, 0.5],
            Self::Polynomial { degree } => vec![0.1; 2 * degree],
        }
    }

    fn grid(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        match self {
            Self::ExpDamp => {
                const N_THETA: usize = 8;
                const N_C: usize = 6;
                let offset = rng.gen_range(0.0..TAU / N_THETA as f64);
                // c-major so that a tiny budget still probes c = 0 first
                (0..N_C)
                    .flat_map(|ic| {
                        (0..N_THETA).map(move |it| {
                            vec![
                                offset + TAU * it as f64 / N_THETA as f64,
                                C_MAX * ic as f64 / (N_C - 1) as f64,
                            ]
                        })
                    })
                    .collect()
            }
            Self::Polynomial { degree } => {
                const SAMPLES: usize = 64;
                (0..SAMPLES)
                    .map(|i| {
                        // alternate boundary (ℓ¹ mass 1) and interior samples
                        let mass = if i % 2 == 0 {
                            1.0
                        } else {
                            rng.gen_range(0.0..1.0)
                        };
                        let weights: Vec<f64> = (0..*degree)
                            .map(|_| -rng.gen_range(1e-12f64..1.0).ln())
                            .collect();
                        let total: f64 = weights.iter().sum();
                        weights
                            .iter()
                            .flat_map(|w| {
                                let z = Complex64::from_polar(
                                    mass * w / total,
                                    rng.gen_range(0.0..TAU),
                                );
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for SeedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ExpDamp => write!(f, "expdamp"),
            Self::Polynomial { degree } => write!(f, "poly{degree}"),
        }
    }
}

impl FromStr for SeedFamily {
    type Err = Error;

    /// `expdamp`, `poly` (degree 4) or `polyN` with `1 <= N <= 4`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().to_ascii_lowercase();
        if s == "expdamp" {
            return Ok(Self::ExpDamp);
        }
        if let Some(rest) = s.strip_prefix("poly") {
            let degree = if rest.is_empty() {
                4
            } else {
                rest.parse().unwrap_or(0)
            };
            if (1..=4).contains(&degree) {
                return Ok(Self::Polynomial { degree });
            }
        }
        Err(Error::InvalidSeed(format!(
            "unknown seed family {s:?} (expdamp, poly, poly1..poly4)"
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub params: ClassParams,
    pub objective: Theorem,
    pub family: SeedFamily,
    pub order: usize,
    pub max_ratio: f64,
    pub argmax: SchwarzSeed,
    pub evaluations: usize,
    pub budget: usize,
    /// False when the budget ran out before the simplex collapsed.
    pub converged: bool,
}

/// Truncation used by the search: the automatic order, capped at
/// `512 m` so that endpoint cases stay affordable.
pub fn search_order(params: &ClassParams) -> usize {
    auto_order(params, false).min(512 * params.m())
}

struct Objective<'a> {
    params: &'a ClassParams,
    theorem: Theorem,
    family: SeedFamily,
    order: usize,
    bound: f64,
}

impl Objective<'_> {
    fn ratio(&self, x: &[f64]) -> (f64, SchwarzSeed) {
        let seed = self.family.seed_at(x);
        let value = member_from_seed(self.params, &seed, self.order)
            .and_then(|m| log_coefficients(&m))
            .and_then(|d| self.theorem.partial_sum(&d))
            .map(|s| s / self.bound)
            .unwrap_or(f64::NEG_INFINITY);
        (value, seed)
    }
}

/// Deterministic "better than": larger ratio, ties to the lexicographically
/// smaller seed parameters.
fn better(a: &(f64, SchwarzSeed), b: &(f64, SchwarzSeed)) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let (ka, kb) = (a.1.sort_key(), b.1.sort_key());
            ka.0.cmp(&kb.0)
                .then_with(|| {
                    ka.1.iter()
                        .zip(&kb.1)
                        .map(|(x, y)| x.total_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                })
                .is_lt()
        }
    }
}

/// Maximizes `partial_sum / bound` for `objective` over `family`, spending
/// at most `budget` member evaluations.
pub fn adversarial_search(
    params: &ClassParams,
    objective: Theorem,
    family: SeedFamily,
    budget: usize,
    rng_seed: u64,
    order: Option<usize>,
) -> Result<SearchReport, Error> {
    if budget == 0 {
        return Err(Error::DomainError(
            "search budget must be at least 1".into(),
        ));
    }
    let order = order.unwrap_or_else(|| search_order(params));
    let bound = bound_for(params, objective)?.bound;
    let obj = Objective {
        params,
        theorem: objective,
        family,
        order,
        bound,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let mut grid = family.grid(&mut rng);
    grid.truncate(budget);
    let scored: Vec<(Vec<f64>, (f64, SchwarzSeed))> = grid
        .into_par_iter()
        .map(|x| {
            let r = obj.ratio(&x);
            (x, r)
        })
        .collect();
    let mut evaluations = scored.len();
    let (mut best_x, mut best) = scored[0].clone();
    for (x, r) in &scored[1..] {
        if better(r, &best) {
            best = r.clone();
            best_x = x.clone();
        }
    }

    let (simplex_best, converged) = nelder_mead_max(
        &obj,
        &best_x,
        &family.initial_steps(),
        budget - evaluations,
        &mut evaluations,
    );
    if let Some(candidate) = simplex_best {
        if better(&candidate, &best) {
            best = candidate;
        }
    }

    Ok(SearchReport {
        params: *params,
        objective,
        family,
        order,
        max_ratio: best.0,
        argmax: best.1,
        evaluations,
        budget,
        converged,
    })
}

/// Nelder–Mead maximization from `start`. Returns the best vertex seen and
/// whether the simplex met the stopping rule within `budget` evaluations.
fn nelder_mead_max(
    obj: &Objective<'_>,
    start: &[f64],
    steps: &[f64],
    budget: usize,
    evaluations: &mut usize,
) -> (Option<(f64, SchwarzSeed)>, bool) {
    const F_TOL: f64 = 1e-14;
    const X_TOL: f64 = 1e-10;
    let n = start.len();
    if budget < n + 1 {
        return (None, false);
    }
    let spent = Cell::new(0usize);
    let eval = |x: &[f64]| {
        spent.set(spent.get() + 1);
        obj.ratio(x)
    };

    let mut vertices: Vec<Vec<f64>> = vec![start.to_vec()];
    for (i, &s) in steps.iter().enumerate() {
        let mut v = start.to_vec();
        v[i] += s;
        vertices.push(v);
    }
    let mut values: Vec<(f64, SchwarzSeed)> = vertices.iter().map(|v| eval(v)).collect();
    let mut converged = false;

    loop {
        // best first
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| {
            if better(&values[a], &values[b]) {
                Ordering::Less
            } else if better(&values[b], &values[a]) {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        vertices = order.iter().map(|&i| vertices[i].clone()).collect();
        values = order.iter().map(|&i| values[i].clone()).collect();

        let spread = values[0].0 - values[n].0;
        let size = vertices[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&vertices[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread.abs() <= F_TOL * values[0].0.abs().max(1.0) || size <= X_TOL {
            converged = true;
            break;
        }
        if spent.get() + 2 > budget {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| vertices[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&vertices[n])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = eval(&reflected);
        if better(&fr, &values[0]) {
            let expanded = along(2.0);
            let fe = eval(&expanded);
            if better(&fe, &fr) {
                vertices[n] = expanded;
                values[n] = fe;
            } else {
                vertices[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if better(&fr, &values[n - 1]) {
            vertices[n] = reflected;
            values[n] = fr;
            continue;
        }
        let contracted = along(-0.5);
        let fc = eval(&contracted);
        if better(&fc, &values[n]) {
            vertices[n] = contracted;
            values[n] = fc;
            continue;
        }
        if spent.get() + n > budget {
            break;
        }
        for i in 1..=n {
            let shrunk: Vec<f64> = vertices[0]
                .iter()
                .zip(&vertices[i])
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            values[i] = eval(&shrunk);
            vertices[i] = shrunk;
        }
    }
    *evaluations += spent.get();
    let best = values
        .into_iter()
        .reduce(|a, b| if better(&b, &a) { b } else { a });
    (best, converged)
}
