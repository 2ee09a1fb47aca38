//! Sweep configuration and machine-readable reports for the CLI.
//!
//! A sweep is the cross product of `(j,k)` pairs, `A` values, `B` values and
//! seeds; each grid point yields one row per check. Rows are identical in
//! JSON and CSV. Floating-point fields carry 17 significant digits
//! (`{:.16e}`); missing or non-finite values are `null` (empty in CSV).

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::bounds::{
    auto_order, check_sharpness, verify_coefficients, CheckKind, Theorem, INEQUALITY_TOL,
    SHARPNESS_TOL,
};
use crate::class::{member_from_seed, ClassParams, SchwarzSeed};
use crate::cnum::{format_complex, parse_complex};
use crate::logcoef::log_coefficients;
use crate::search::{adversarial_search, SearchReport, SeedFamily};
use crate::Error;

/// Failures surfaced by the CLI, each with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl From<Error> for ReportError {
    fn from(e: Error) -> Self {
        Self::Config(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(ReportError::Config(format!(
                "unknown format {other:?} (json, csv)"
            ))),
        }
    }
}

/// Grid and run options. `Default` is the acceptance grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub pairs: Vec<(usize, usize)>,
    pub a_values: Vec<Complex64>,
    pub b_values: Vec<f64>,
    pub t_values: Vec<f64>,
    /// Truncation order `N`; `None` picks it per grid point.
    pub terms: Option<usize>,
    pub seeds: Vec<SchwarzSeed>,
    pub tol: Option<f64>,
    pub rng_seed: u64,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
    pub no_timestamp: bool,
    pub slow: bool,
    /// Fault hook: added to `d_1` of every Identity-seed member.
    pub perturb_d1: Option<f64>,
    pub family: SeedFamily,
    pub budget: usize,
}

pub const DEFAULT_PAIRS: [(usize, usize); 7] =
    [(1, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (1, 4)];
pub const DEFAULT_B: [f64; 5] = [0.0, -0.25, -0.5, -0.75, -0.9];
pub const DEFAULT_T: [f64; 4] = [-1.0, 0.0, 1.0, 2.0];
pub const DEFAULT_SEEDS: &str =
    "identity,rotation:0.7,expdamp:0.3:0.5,expdamp:2:1.5,poly:0.4:-0.3i:0.2";
pub const DEFAULT_BUDGET: usize = 2000;

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            pairs: DEFAULT_PAIRS.to_vec(),
            a_values: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.8, 0.3),
            ],
            b_values: DEFAULT_B.to_vec(),
            t_values: DEFAULT_T.to_vec(),
            terms: None,
            seeds: parse_list(DEFAULT_SEEDS, "seeds").expect("default seeds parse"),
            tol: None,
            rng_seed: 0,
            out: None,
            format: ReportFormat::Json,
            no_timestamp: false,
            slow: false,
            perturb_d1: None,
            family: SeedFamily::ExpDamp,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn parse_list<T: FromStr>(value: &str, key: &str) -> Result<Vec<T>, ReportError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| ReportError::Config(format!("{key}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(value: &str, key: &str) -> Result<T, ReportError> {
    value
        .trim()
        .parse()
        .map_err(|_| ReportError::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_bool(value: &str, key: &str) -> Result<bool, ReportError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "" | "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(ReportError::Config(format!(
            "{key}: expected a boolean, got {value:?}"
        ))),
    }
}

impl SweepConfig {
    /// Sets one option from its textual form. Keys are the long flag names
    /// without dashes; `j`/`k` replace the pair list by their cross product.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ReportError> {
        match key.trim().trim_start_matches("--") {
            "j" => {
                let js: Vec<usize> = parse_list(value, "j")?;
                let ks = self.distinct(|p| p.1);
                self.pairs = cross(&js, &ks);
            }
            "k" => {
                let ks: Vec<usize> = parse_list(value, "k")?;
                let js = self.distinct(|p| p.0);
                self.pairs = cross(&js, &ks);
            }
            "pairs" => {
                self.pairs = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.split_once(':')
                            .and_then(|(j, k)| {
                                Some((j.trim().parse().ok()?, k.trim().parse().ok()?))
                            })
                            .ok_or_else(|| {
                                ReportError::Config(format!("pairs: expected j:k, got {s:?}"))
                            })
                    })
                    .collect::<Result<_, _>>()?;
            }
            "A" | "a" => {
                self.a_values = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        parse_complex(s)
                            .ok_or_else(|| ReportError::Config(format!("A: cannot parse {s:?}")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            "B" | "b" => self.b_values = parse_list(value, "B")?,
            "t" => {
                let ts: Vec<f64> = parse_list(value, "t")?;
                if let Some(t) = ts.iter().find(|t| t.is_nan() || **t > 2.0) {
                    return Err(Error::WeightOutOfRange(*t).into());
                }
                self.t_values = ts;
            }
            "terms" => self.terms = Some(parse_one(value, "terms")?),
            "seeds" => {
                let seeds: Vec<SchwarzSeed> = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<SchwarzSeed>())
                    .collect::<Result<_, _>>()?;
                for s in &seeds {
                    s.validate()?;
                }
                self.seeds = seeds;
            }
            "tol" => self.tol = Some(parse_one(value, "tol")?),
            "rng-seed" | "rng_seed" => self.rng_seed = parse_one(value, "rng-seed")?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            "no-timestamp" | "no_timestamp" => self.no_timestamp = parse_bool(value, key)?,
            "slow" => self.slow = parse_bool(value, key)?,
            "perturb-d1" | "perturb_d1" => self.perturb_d1 = Some(parse_one(value, "perturb-d1")?),
            "family" => self.family = value.parse()?,
            "budget" => self.budget = parse_one(value, "budget")?,
            other => return Err(ReportError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Flat `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, ReportError> {
        let mut config = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ReportError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            config.apply(key, value)?;
        }
        Ok(config)
    }

    fn distinct(&self, pick: impl Fn(&(usize, usize)) -> usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().map(pick).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Valid grid points in deterministic order; invalid combinations are
    /// logged and skipped.
    pub fn grid(&self) -> Vec<ClassParams> {
        let mut points = Vec::new();
        for &(j, k) in &self.pairs {
            for &a in &self.a_values {
                for &b in &self.b_values {
                    match ClassParams::new(j, k, a, b) {
                        Ok(p) => points.push(p),
                        Err(e) => log::warn!("skipping (j={j}, k={k}, A={a}, B={b}): {e}"),
                    }
                }
            }
        }
        points.sort_by(cmp_params);
        points.dedup();
        points
    }

    fn order_for(&self, params: &ClassParams) -> usize {
        self.terms.unwrap_or_else(|| auto_order(params, self.slow))
    }
}

fn cross(js: &[usize], ks: &[usize]) -> Vec<(usize, usize)> {
    js.iter()
        .flat_map(|&j| ks.iter().map(move |&k| (j, k)))
        .collect()
}

fn cmp_f64s(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

fn cmp_params(p: &ClassParams, q: &ClassParams) -> Ordering {
    (p.j(), p.k())
        .cmp(&(q.j(), q.k()))
        .then_with(|| cmp_f64s(&[p.a().re, p.a().im, p.b()], &[q.a().re, q.a().im, q.b()]))
}

fn cmp_seeds(s: &SchwarzSeed, r: &SchwarzSeed) -> Ordering {
    let (ks, kr) = (s.sort_key(), r.sort_key());
    ks.0.cmp(&kr.0).then_with(|| cmp_f64s(&ks.1, &kr.1))
}

/// Serializes a finite float with 17 significant digits, otherwise `null`.
fn sci<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match fmt_sci(*v) {
        Some(text) => RawValue::from_string(text)
            .map_err(S::Error::custom)?
            .serialize(s),
        None => s.serialize_none(),
    }
}

fn fmt_sci(v: Option<f64>) -> Option<String> {
    v.filter(|x| x.is_finite()).map(|x| format!("{x:.16e}"))
}

/// One check as written to the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub theorem: String,
    pub check: String,
    #[serde(serialize_with = "sci")]
    pub t: Option<f64>,
    pub j: usize,
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "sci")]
    pub a_re: Option<f64>,
    #[serde(serialize_with = "sci")]
    pub a_im: Option<f64>,
    #[serde(serialize_with = "sci")]
    pub b: Option<f64>,
    pub seed: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_d")]
    pub n_d: usize,
    #[serde(serialize_with = "sci")]
    pub partial_sum: Option<f64>,
    #[serde(serialize_with = "sci")]
    pub bound: Option<f64>,
    #[serde(serialize_with = "sci")]
    pub ratio: Option<f64>,
    pub pass: bool,
    pub skipped: bool,
    #[serde(serialize_with = "sci")]
    pub tail_bound: Option<f64>,
    #[serde(serialize_with = "sci")]
    pub elapsed: Option<f64>,
    pub note: Option<String>,
}

pub const COLUMNS: [&str; 20] = [
    "theorem",
    "check",
    "t",
    "j",
    "k",
    "m",
    "a_re",
    "a_im",
    "b",
    "seed",
    "N",
    "N_d",
    "partial_sum",
    "bound",
    "ratio",
    "pass",
    "skipped",
    "tail_bound",
    "elapsed",
    "note",
];

impl ReportRow {
    fn base(params: &ClassParams, seed: &str, theorem: Theorem, kind: CheckKind, n: usize) -> Self {
        Self {
            theorem: theorem.tag().to_string(),
            check: kind.as_str().to_string(),
            t: theorem.t(),
            j: params.j(),
            k: params.k(),
            m: params.m(),
            a_re: Some(params.a().re),
            a_im: Some(params.a().im),
            b: Some(params.b()),
            seed: seed.to_string(),
            n,
            n_d: n / params.m(),
            partial_sum: None,
            bound: None,
            ratio: None,
            pass: false,
            skipped: false,
            tail_bound: None,
            elapsed: None,
            note: None,
        }
    }

    fn csv_record(&self) -> Vec<String> {
        let f = |v: Option<f64>| fmt_sci(v).unwrap_or_default();
        vec![
            self.theorem.clone(),
            self.check.clone(),
            f(self.t),
            self.j.to_string(),
            self.k.to_string(),
            self.m.to_string(),
            f(self.a_re),
            f(self.a_im),
            f(self.b),
            self.seed.clone(),
            self.n.to_string(),
            self.n_d.to_string(),
            f(self.partial_sum),
            f(self.bound),
            f(self.ratio),
            self.pass.to_string(),
            self.skipped.to_string(),
            f(self.tail_bound),
            f(self.elapsed),
            self.note.clone().unwrap_or_default(),
        ]
    }
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.theorem, self.check)?;
        if let Some(t) = self.t {
            write!(f, "(t={t})")?;
        }
        write!(
            f,
            " j={} k={} A={} B={} seed={} N={}",
            self.j,
            self.k,
            format_complex(Complex64::new(
                self.a_re.unwrap_or(f64::NAN),
                self.a_im.unwrap_or(f64::NAN)
            )),
            self.b.unwrap_or(f64::NAN),
            self.seed,
            self.n
        )?;
        if let Some(r) = self.ratio {
            write!(f, " ratio={r:.17}")?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// Rows plus the run metadata written alongside them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub timestamp: Option<u64>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn write_to(&self, mut w: impl Write, format: ReportFormat) -> Result<(), ReportError> {
        match format {
            ReportFormat::Json => {
                serde_json::to_writer_pretty(&mut w, self).map_err(std::io::Error::from)?;
                writeln!(w)?;
            }
            ReportFormat::Csv => {
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record(COLUMNS).map_err(std::io::Error::from)?;
                for row in &self.rows {
                    csv.write_record(row.csv_record())
                        .map_err(std::io::Error::from)?;
                }
                csv.flush()?;
            }
        }
        Ok(())
    }

    /// Writes to `config.out`, or stdout when unset.
    pub fn emit(&self, config: &SweepConfig) -> Result<(), ReportError> {
        match &config.out {
            Some(path) => {
                let file = std::fs::File::create(path)?;
                let mut w = std::io::BufWriter::new(file);
                self.write_to(&mut w, config.format)?;
                w.flush()?;
            }
            None => self.write_to(std::io::stdout().lock(), config.format)?,
        }
        Ok(())
    }
}

fn timestamp(config: &SweepConfig) -> Option<u64> {
    if config.no_timestamp {
        None
    } else {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs())
    }
}

/// Verifies every `(params, seed)` grid point. Grid points run in parallel;
/// the row order depends only on the configuration.
pub fn run_verify(config: &SweepConfig) -> Result<Report, ReportError> {
    if let Some(t) = config.t_values.iter().find(|t| t.is_nan() || **t > 2.0) {
        return Err(Error::WeightOutOfRange(*t).into());
    }
    let mut seeds = config.seeds.clone();
    seeds.sort_by(cmp_seeds);
    let jobs: Vec<(ClassParams, SchwarzSeed)> = config
        .grid()
        .into_iter()
        .flat_map(|p| seeds.iter().map(move |s| (p, s.clone())))
        .collect();
    if jobs.is_empty() {
        log::warn!("empty grid: nothing to verify");
    }
    let tol = config.tol.unwrap_or(INEQUALITY_TOL);
    let rows: Vec<Vec<ReportRow>> = jobs
        .par_iter()
        .map(|(p, s)| verify_point(config, p, s, tol))
        .collect();
    Ok(Report {
        command: "verify".into(),
        timestamp: timestamp(config),
        rows: rows.concat(),
    })
}

fn verify_point(
    config: &SweepConfig,
    params: &ClassParams,
    seed: &SchwarzSeed,
    tol: f64,
) -> Vec<ReportRow> {
    let start = Instant::now();
    let order = config.order_for(params);
    let seed_text = seed.to_string();
    let result = member_from_seed(params, seed, order).and_then(|member| {
        let mut d = log_coefficients(&member)?;
        if let (Some(delta), SchwarzSeed::Identity) = (config.perturb_d1, seed) {
            if let Some(d1) = d.as_mut_slice().first_mut() {
                *d1 += delta;
            }
        }
        verify_coefficients(&d, params, seed, order, &config.t_values, tol)
    });
    let elapsed = (!config.no_timestamp).then(|| start.elapsed().as_secs_f64());
    match result {
        Ok(report) => report
            .checks
            .iter()
            .map(|c| ReportRow {
                partial_sum: Some(c.partial_sum),
                bound: c.bound,
                ratio: c.ratio,
                pass: c.pass,
                skipped: c.skipped,
                tail_bound: c.tail_bound,
                elapsed,
                note: c.note.clone(),
                ..ReportRow::base(params, &seed_text, c.theorem, c.kind, order)
            })
            .collect(),
        Err(e) => vec![ReportRow {
            elapsed,
            note: Some(e.to_string()),
            ..ReportRow::base(params, &seed_text, Theorem::ThmA, CheckKind::Bound, order)
        }],
    }
}

/// Equality certification at the extremal function for every grid point.
/// `|B| > 0.9` without slow mode is a configuration error.
pub fn run_sharpness(config: &SweepConfig) -> Result<Report, ReportError> {
    let grid = config.grid();
    if let Some(p) = grid.iter().find(|p| p.b().abs() > 0.9 && !config.slow) {
        return Err(ReportError::Config(format!(
            "sharpness at {p} needs --slow: equality for |B| > 0.9 is only certified with the \
             analytic tail and N_d >= 10^4"
        )));
    }
    if grid.is_empty() {
        log::warn!("empty grid: nothing to certify");
    }
    let tol = config.tol.unwrap_or(SHARPNESS_TOL);
    let rows = grid
        .par_iter()
        .map(|p| {
            let start = Instant::now();
            let order = config.order_for(p);
            let outcome = check_sharpness(p, order, tol, config.slow);
            let elapsed = (!config.no_timestamp).then(|| start.elapsed().as_secs_f64());
            let base = ReportRow::base(p, "identity", Theorem::ThmA, CheckKind::Sharp, order);
            match outcome {
                Ok(s) => ReportRow {
                    partial_sum: Some(s.partial_sum),
                    bound: Some(s.bound),
                    ratio: Some((s.partial_sum + s.tail_bound) / s.bound),
                    pass: s.pass,
                    tail_bound: Some(s.tail_bound),
                    elapsed,
                    ..base
                },
                Err(e) => ReportRow {
                    elapsed,
                    note: Some(e.to_string()),
                    ..base
                },
            }
        })
        .collect();
    Ok(Report {
        command: "sharpness".into(),
        timestamp: timestamp(config),
        rows,
    })
}

/// Runs the extremal search once per grid point. The objective is ThmA,
/// or Thm3 when exactly one `t` is configured.
pub fn run_search(config: &SweepConfig) -> Result<Vec<SearchReport>, ReportError> {
    let objective = match config.t_values.as_slice() {
        [t] => Theorem::Thm3(*t),
        _ => Theorem::ThmA,
    };
    let grid = config.grid();
    if grid.is_empty() {
        log::warn!("empty grid: nothing to search");
    }
    grid.iter()
        .map(|p| {
            adversarial_search(
                p,
                objective,
                config.family,
                config.budget,
                config.rng_seed,
                config.terms,
            )
            .map_err(ReportError::from)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig::from_text("pairs = 1:2\nA = 1\nB = -0.5\nt = 0, 2\nseeds = identity, expdamp:1:0.5\nno-timestamp = true\n")
            .unwrap()
    }

    #[test]
    fn config_file_and_overrides() {
        let mut c =
            SweepConfig::from_text("# comment\nj = 0,1\nk = 2,3\nA = 0.8+0.3i\nB = -0.25\n")
                .unwrap();
        assert_eq!(c.pairs, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(c.a_values, vec![Complex64::new(0.8, 0.3)]);
        c.apply("B", "0,-0.9").unwrap();
        assert_eq!(c.b_values, vec![0.0, -0.9]);
        assert!(SweepConfig::from_text("nonsense").is_err());
        assert!(SweepConfig::from_text("t = 3").is_err());
        assert!(SweepConfig::from_text("seeds = poly:0.9:0.9").is_err());
        assert_eq!(
            SweepConfig::from_text("bogus = 1").unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn invalid_pairs_are_skipped() {
        let c = SweepConfig::from_text("j = 0,1,2\nk = 1,2").unwrap();
        let pairs: Vec<_> = c
            .grid()
            .iter()
            .map(|p| (p.j(), p.k()))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(pairs, vec![(0, 2), (1, 1), (1, 2)]);
    }

    #[test]
    fn default_grid_size() {
        assert_eq!(SweepConfig::default().grid().len(), 7 * 3 * 5);
    }

    #[test]
    fn verify_rows_and_fault_hook() {
        let c = small();
        let report = run_verify(&c).unwrap();
        // identity: 4 bound + 4 sharp rows; expdamp: 4 bound rows
        assert_eq!(report.rows.len(), 12);
        assert_eq!(report.failure_count(), 0);
        assert!(report.rows.iter().all(|r| r.elapsed.is_none()));

        let mut faulty = c.clone();
        faulty.perturb_d1 = Some(1e-3);
        let report = run_verify(&faulty).unwrap();
        assert!(report
            .failures()
            .any(|r| r.theorem == "ThmA" && r.check == "sharp"));
    }

    #[test]
    fn json_and_csv_share_columns() {
        let report = run_verify(&small()).unwrap();
        let mut json = Vec::new();
        report.write_to(&mut json, ReportFormat::Json).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&json).unwrap();
        let row = value["rows"][0].as_object().unwrap();
        let keys: Vec<&str> = row.keys().map(String::as_str).collect();
        let mut sorted_cols = COLUMNS.to_vec();
        sorted_cols.sort_unstable();
        let mut sorted_keys = keys.clone();
        sorted_keys.sort_unstable();
        assert_eq!(sorted_keys, sorted_cols);
        assert!(String::from_utf8(json)
            .unwrap()
            .contains("\"partial_sum\": 2."));

        let mut csv = Vec::new();
        report.write_to(&mut csv, ReportFormat::Csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
        assert_eq!(text.lines().count(), report.rows.len() + 1);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_sci(Some(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(fmt_sci(Some(f64::NAN)), None);
    }

    #[test]
    fn empty_grid_is_vacuous() {
        let c = SweepConfig::from_text("B =\n").unwrap();
        let report = run_verify(&c).unwrap();
        assert!(report.rows.is_empty());
    }

    #[test]
    fn sharpness_guard() {
        let c = SweepConfig::from_text("pairs = 1:1\nA = 1\nB = -1").unwrap();
        assert_eq!(run_sharpness(&c).unwrap_err().exit_code(), 2);
        let ok = SweepConfig::from_text("pairs = 1:1\nA = 1\nB = -0.5,0").unwrap();
        let report = run_sharpness(&ok).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.failure_count(), 0);
    }
}
