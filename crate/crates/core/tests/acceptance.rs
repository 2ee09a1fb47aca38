//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs under `cargo test` with its own harness.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use logcoef::bounds::{
    auto_order, check_sharpness, extremal_tail, thm2_bound, thm3_bound, thm_a_bound, verify_member,
    CheckKind, Theorem, INEQUALITY_TOL,
};
use logcoef::class::{extremal_function, member_from_seed, ClassParams, SchwarzSeed};
use logcoef::lemmas::{abel_weight_transfer, first_nonpositive_weight_factor, rogosinski_l2_check};
use logcoef::logcoef::{extremal_log_coefficient, log_coefficients};
use logcoef::report::{COLUMNS, DEFAULT_B, DEFAULT_PAIRS, DEFAULT_T};
use logcoef::search::{adversarial_search, SeedFamily};
use logcoef::series::TruncatedSeries;
use logcoef::special::li;
use logcoef::{bounds, Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a_values() -> [Complex64; 3] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.8, 0.3),
    ]
}

fn grid() -> Vec<ClassParams> {
    let mut out = Vec::new();
    for (j, k) in DEFAULT_PAIRS {
        for a in a_values() {
            for b in DEFAULT_B {
                out.push(ClassParams::new(j, k, a, b).expect("grid point is valid"));
            }
        }
    }
    out
}

/// `sum_{n<=terms} x^n/n²`, summed smallest terms first.
fn dilog_direct(x: f64, terms: usize) -> f64 {
    let mut powers = Vec::with_capacity(terms);
    let mut p = 1.0;
    for _ in 0..terms {
        p *= x;
        if p == 0.0 {
            break;
        }
        powers.push(p);
    }
    powers
        .iter()
        .enumerate()
        .rev()
        .map(|(i, p)| p / ((i + 1) as f64).powi(2))
        .sum()
}

fn criterion_1() -> Outcome {
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let at_one = li(2.0, 1.0).map_err(|e| e.to_string())?;
    ensure((at_one - zeta2).abs() <= 1e-12, || {
        format!("li(2,1) = {at_one}")
    })?;
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.25, 0.5, 0.81, 0.9025] {
        let oracle = dilog_direct(x, 10_000_000);
        let got = li(2.0, x).map_err(|e| e.to_string())?;
        worst = worst.max((got - oracle).abs());
        ensure((got - oracle).abs() <= 1e-12, || {
            format!("li(2,{x}) = {got}, oracle {oracle}")
        })?;
    }
    Ok(format!("max |li - oracle| = {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for p in grid() {
        let d = log_coefficients(&extremal_function(&p, 512).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for n in 1..=d.n_terms() {
            let err = (d.get(n).unwrap() - extremal_log_coefficient(&p, n)).norm();
            worst = worst.max(err);
            count += 1;
            ensure(err <= 1e-11, || format!("{p}: d_{n} off by {err:e}"))?;
        }
    }
    Ok(format!("{count} coefficients, max error {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in grid() {
        let row = check_sharpness(&p, auto_order(&p, false), 1e-8, false)
            .map_err(|e| format!("{p}: {e}"))?;
        worst = worst.max(row.rel_gap);
        ensure(row.pass, || format!("{p}: relative gap {:e}", row.rel_gap))?;
    }
    let koebe = ClassParams::real(1, 1, 1.0, -1.0).unwrap();
    let row =
        check_sharpness(&koebe, auto_order(&koebe, true), 1e-9, true).map_err(|e| e.to_string())?;
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    ensure(row.n_d == 10_000, || format!("Koebe N_d = {}", row.n_d))?;
    let bare = (row.partial_sum - zeta2).abs();
    let with_tail = (row.partial_sum + row.tail_bound - zeta2).abs();
    ensure(bare <= 1e-4, || {
        format!("Koebe partial sum off by {bare:e}")
    })?;
    ensure(with_tail <= 1e-9, || {
        format!("Koebe with tail off by {with_tail:e}")
    })?;
    Ok(format!(
        "grid max gap {worst:.2e}; Koebe {bare:.3e} bare, {with_tail:.1e} with tail"
    ))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in grid() {
        let d = log_coefficients(&extremal_function(&p, auto_order(&p, false)).unwrap()).unwrap();
        let expected = p.gap().powi(2) / (4.0 * (p.m() as f64).powi(2) * (1.0 - p.b() * p.b()));
        let bound = thm2_bound(&p).unwrap().bound;
        ensure((bound - expected).abs() <= 1e-14 * expected, || {
            format!("{p}: bound {bound} vs {expected}")
        })?;
        let rel = (d.sum_n2() - expected).abs() / expected;
        worst = worst.max(rel);
        ensure(rel <= 1e-8, || format!("{p}: sum_n2 relative gap {rel:e}"))?;
    }
    let p = ClassParams::real(1, 1, 1.0, -0.5).unwrap();
    let s = log_coefficients(&extremal_function(&p, auto_order(&p, false)).unwrap())
        .unwrap()
        .sum_n2();
    ensure((s - 0.75).abs() <= 1e-10, || format!("(1,1,1,-1/2): {s}"))?;
    Ok(format!("grid max gap {worst:.2e}; (1,1,1,-1/2) -> {s:.15}"))
}

fn criterion_5() -> Outcome {
    let mut worst_consistency: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for p in grid() {
        let a = thm_a_bound(&p).bound;
        let t0 = thm3_bound(&p, 0.0).unwrap().bound;
        worst_consistency = worst_consistency.max((a - t0).abs());
        ensure((a - t0).abs() <= 1e-12, || {
            format!("{p}: thm3(0) = {t0}, thmA = {a}")
        })?;
        let d = log_coefficients(&extremal_function(&p, auto_order(&p, false)).unwrap()).unwrap();
        for t in DEFAULT_T {
            let bound = thm3_bound(&p, t).unwrap().bound;
            let rel = (d.sum_weighted(t).unwrap() - bound).abs() / bound;
            worst_gap = worst_gap.max(rel);
            ensure(rel <= 1e-8, || {
                format!("{p}, t = {t}: relative gap {rel:e}")
            })?;
        }
    }
    Ok(format!(
        "max |thm3(0) - thmA| = {worst_consistency:.1e}; max weighted gap {worst_gap:.2e}"
    ))
}

fn random_seed(rng: &mut ChaCha8Rng, i: usize) -> SchwarzSeed {
    if i.is_multiple_of(2) {
        SchwarzSeed::ExpDamp {
            theta: rng.gen_range(0.0..std::f64::consts::TAU),
            c: rng.gen_range(0.0..5.0),
        }
    } else {
        let degree = rng.gen_range(1..=4);
        let mass = rng.gen_range(0.0..=1.0);
        let raw: Vec<Complex64> = (0..degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let l1: f64 = raw.iter().map(|z| z.norm()).sum();
        SchwarzSeed::Polynomial(raw.iter().map(|z| z * (mass / l1)).collect())
    }
}

fn criterion_6() -> Outcome {
    let grid = grid();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for i in 0..200 {
        let p = grid[rng.gen_range(0..grid.len())];
        let seed = random_seed(&mut rng, i);
        let member =
            member_from_seed(&p, &seed, auto_order(&p, false)).map_err(|e| e.to_string())?;
        let report =
            verify_member(&member, &DEFAULT_T, INEQUALITY_TOL).map_err(|e| e.to_string())?;
        for c in report.checks.iter().filter(|c| c.kind == CheckKind::Bound) {
            let ratio = c.ratio.unwrap();
            worst = worst.max(ratio);
            checks += 1;
            ensure(ratio <= 1.0 + 1e-9, || {
                format!("{p} seed {seed}: {} ratio {ratio}", c.theorem)
            })?;
        }
    }
    Ok(format!(
        "200 members, {checks} checks, max ratio {worst:.12}"
    ))
}

/// `(A-B) V/(1+B V)` for a series `V` with `V(0) = 0`.
fn janowski_p(a: Complex64, b: f64, v: &TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::constant(Complex64::new(1.0, 0.0), v.order());
    v.scale(a - b)
        .div(&(&one + &v.scale(Complex64::new(b, 0.0))))
        .unwrap()
}

/// `log((1 + A V)/(1 + B V))`.
fn janowski_log(a: Complex64, b: f64, v: &TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::constant(Complex64::new(1.0, 0.0), v.order());
    let num = (&one + &v.scale(a)).log().unwrap();
    let den = (&one + &v.scale(Complex64::new(b, 0.0))).log().unwrap();
    &num - &den
}

fn subordinate_pairs(
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(TruncatedSeries, TruncatedSeries, &'static str)> {
    const ORDER: usize = 40;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
        let b = rng.gen_range(-0.95..=0.0);
        let identity = TruncatedSeries::monomial(Complex64::new(1.0, 0.0), 1, ORDER);
        let (seed, kind) = match i % 5 {
            0 => (SchwarzSeed::Identity, "identity"),
            1 => (
                SchwarzSeed::Rotation {
                    theta: rng.gen_range(0.0..std::f64::consts::TAU),
                },
                "rotation",
            ),
            2 | 3 => (random_seed(rng, i - 2), "seed"),
            _ => (SchwarzSeed::Identity, "power"),
        };
        let v = if kind == "power" {
            identity.compose_power(rng.gen_range(2..=4), ORDER)
        } else {
            logcoef::seed_series(&seed, ORDER).unwrap()
        };
        let (sub, sup) = if i % 2 == 0 {
            (janowski_p(a, b, &v), janowski_p(a, b, &identity))
        } else {
            (janowski_log(a, b, &v), janowski_log(a, b, &identity))
        };
        out.push((sub, sup, kind));
    }
    out
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = subordinate_pairs(200, &mut rng);
    for (i, (sub, sup, kind)) in pairs.iter().enumerate() {
        let out = rogosinski_l2_check(sub, sup, sub.order());
        ensure(out.holds, || {
            format!(
                "pair {i} ({kind}): slack {:e} at K = {}",
                out.min_slack, out.worst_k
            )
        })?;
        if matches!(*kind, "identity" | "rotation") {
            ensure(out.min_slack.abs() <= 1e-10, || {
                format!("pair {i} ({kind}) is not an equality case")
            })?;
        }
    }

    for trial in 0..500 {
        let len = rng.gen_range(1..=60);
        let c = if trial % 3 == 0 {
            1.0
        } else {
            rng.gen_range(0.1..5.0)
        };
        let t = [-1.0, 0.0, 1.0, 2.0, rng.gen_range(-3.0..=2.0)][trial % 5];
        let y: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
        let x: Vec<f64> = y.iter().map(|v| c * v * rng.gen_range(0.0..=1.0)).collect();
        let out =
            abel_weight_transfer(&x, &y, c, t, len).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(out.holds, || {
            format!("trial {trial}: margin {:e}", out.margin)
        })?;
        ensure(
            (out.telescoped_lhs - out.lhs).abs() <= 1e-12 * out.lhs.max(1.0),
            || format!("trial {trial}: telescoping mismatch"),
        )?;
    }

    for trial in 0..50 {
        let len = rng.gen_range(2..=40);
        let y: Vec<f64> = (0..len).map(|_| rng.gen_range(0.1..1.0)).collect();
        let mut x = y.clone();
        let k = rng.gen_range(0..len);
        x[k] += rng.gen_range(0.01..1.0);
        let got = abel_weight_transfer(&x, &y, 1.0, 1.0, len);
        ensure(got == Err(Error::HypothesisViolated { k: k + 1 }), || {
            format!("violation {trial}: {got:?}")
        })?;
    }

    // the extremal instance reproduces the weighted bound
    let p = ClassParams::real(1, 2, 1.0, -0.5).unwrap();
    let d = log_coefficients(&extremal_function(&p, auto_order(&p, false)).unwrap()).unwrap();
    let x: Vec<f64> = (1..=d.n_terms())
        .map(|n| (n * n) as f64 * d.get(n).unwrap().norm_sqr())
        .collect();
    let y: Vec<f64> = (1..=d.n_terms()).map(|n| 0.25f64.powi(n as i32)).collect();
    let h = bounds::h_factor(&p);
    let out = abel_weight_transfer(&x, &y, h, 1.0, d.n_terms()).map_err(|e| e.to_string())?;
    let bound = thm3_bound(&p, 1.0).unwrap().bound;
    ensure(
        (out.rhs - bound).abs() <= 1e-10 * bound && out.margin.abs() <= 1e-10 * bound,
        || {
            format!(
                "extremal transfer: rhs {} lhs {} bound {bound}",
                out.rhs, out.lhs
            )
        },
    )?;

    for t in DEFAULT_T {
        ensure(first_nonpositive_weight_factor(t, 10_000).is_none(), || {
            format!("weight factor fails for t = {t}")
        })?;
    }
    let k = first_nonpositive_weight_factor(2.5, 10_000).ok_or("no counterexample for t = 2.5")?;
    // x puts mass late, y early: partial sums x <= y, yet sum w x > sum w y
    let w = |n: usize| bounds::weight(n as f64, 2.5);
    let late = (2..=10_000)
        .find(|&n| w(n) > w(1))
        .ok_or("weights never exceed w_1")?;
    let mut x = vec![0.0; late];
    let mut y = vec![0.0; late];
    x[late - 1] = 1.0;
    y[0] = 1.0;
    let (mut px, mut py) = (0.0, 0.0);
    for n in 0..late {
        px += x[n];
        py += y[n];
        ensure(px <= py, || "counterexample violates the hypothesis".into())?;
    }
    let lhs: f64 = (1..=late).map(|n| w(n) * x[n - 1]).sum();
    let rhs: f64 = (1..=late).map(|n| w(n) * y[n - 1]).sum();
    ensure(lhs > rhs, || format!("t = 2.5: {lhs} <= {rhs}"))?;
    ensure(
        abel_weight_transfer(&[1.0], &[1.0], 1.0, 2.5, 1) == Err(Error::WeightOutOfRange(2.5)),
        || "t = 2.5 accepted".into(),
    )?;
    Ok(format!(
        "200 pairs, 500 transfers, 50 rejections; t = 2.5 factor <= 0 at k = {k}, x = e_{late}, y = e_1 gives {lhs:.4} > {rhs:.4}"
    ))
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for p in [
        ClassParams::real(1, 1, 1.0, -0.5).unwrap(),
        ClassParams::real(1, 2, 1.0, -0.75).unwrap(),
    ] {
        let r = adversarial_search(&p, Theorem::ThmA, SeedFamily::ExpDamp, 2000, 2024, None)
            .map_err(|e| e.to_string())?;
        ensure((1.0 - 1e-6..=1.0 + 1e-9).contains(&r.max_ratio), || {
            format!("{p}: max ratio {}", r.max_ratio)
        })?;
        let SchwarzSeed::ExpDamp { c, .. } = r.argmax else {
            return Err(format!("{p}: argmax {} is not ExpDamp", r.argmax));
        };
        ensure(c <= 1e-3, || format!("{p}: argmax c = {c}"))?;
        lines.push(format!(
            "{p} ratio {:.15} c {c:.1e} ({} evals)",
            r.max_ratio, r.evaluations
        ));
    }
    Ok(lines.join("; "))
}

fn criterion_9() -> Outcome {
    let p = ClassParams::real(1, 2, 1.0, 0.0).unwrap();
    let bound = thm_a_bound(&p).bound;
    ensure((bound - 1.0 / 16.0).abs() <= 1e-12, || {
        format!("bound {bound}")
    })?;
    let d = log_coefficients(&extremal_function(&p, 64).unwrap()).unwrap();
    ensure((d.sum_sq() - 1.0 / 16.0).abs() <= 1e-12, || {
        format!("sum_sq {}", d.sum_sq())
    })?;
    ensure(
        extremal_tail(&p, Theorem::ThmA, d.n_terms()) == Ok(Some(0.0)),
        || "nonzero tail".into(),
    )?;

    let q = ClassParams::real(1, 1, 0.5, -0.5).unwrap();
    let bound = thm_a_bound(&q).bound;
    let oracle = dilog_direct(0.25, 10_000_000);
    ensure((bound - oracle).abs() <= 1e-10, || {
        format!("bound {bound}, Li2(1/4) oracle {oracle}")
    })?;
    let row = check_sharpness(&q, auto_order(&q, false), 1e-8, false).map_err(|e| e.to_string())?;
    ensure(row.pass, || format!("sharpness gap {:e}", row.rel_gap))?;
    Ok(format!(
        "1/16 attained; Li2(1/4) bound {bound:.16}, gap {:.1e}",
        row.rel_gap
    ))
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_logcoef"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn check_schema(report: &serde_json::Value) -> Result<usize, String> {
    let rows = report["rows"].as_array().ok_or("rows missing")?;
    ensure(!rows.is_empty(), || "no rows".into())?;
    let numeric = [
        "t",
        "a_re",
        "a_im",
        "b",
        "partial_sum",
        "bound",
        "ratio",
        "tail_bound",
        "elapsed",
    ];
    for (i, row) in rows.iter().enumerate() {
        let obj = row.as_object().ok_or("row is not an object")?;
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        let mut cols = COLUMNS.to_vec();
        cols.sort_unstable();
        ensure(keys == cols, || format!("row {i}: keys {keys:?}"))?;
        ensure(
            matches!(obj["theorem"].as_str(), Some("ThmA" | "Thm2" | "Thm3")),
            || format!("row {i}: theorem"),
        )?;
        ensure(
            matches!(obj["check"].as_str(), Some("bound" | "sharp")),
            || format!("row {i}: check"),
        )?;
        for key in ["j", "k", "m", "N", "N_d"] {
            ensure(obj[key].is_u64(), || {
                format!("row {i}: {key} not an integer")
            })?;
        }
        for key in numeric {
            ensure(obj[key].is_null() || obj[key].is_f64(), || {
                format!("row {i}: {key} not a number")
            })?;
        }
        ensure(
            obj["pass"].is_boolean() && obj["skipped"].is_boolean(),
            || format!("row {i}: flags"),
        )?;
        ensure(obj["seed"].is_string(), || format!("row {i}: seed"))?;
        ensure(obj["note"].is_null() || obj["note"].is_string(), || {
            format!("row {i}: note")
        })?;
    }
    Ok(rows.len())
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();

    let (code, _) = run_cli(&["verify", "--out", &path("default.json")])?;
    ensure(code == 0, || format!("default verify exited {code}"))?;
    let text = std::fs::read_to_string(path("default.json")).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let rows = check_schema(&value)?;
    ensure(value["timestamp"].is_u64(), || "timestamp missing".into())?;

    let (code, _) = run_cli(&[
        "verify",
        "--perturb-d1",
        "1e-3",
        "--out",
        &path("fault.json"),
    ])?;
    ensure(code == 1, || format!("fault run exited {code}"))?;
    let fault: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path("fault.json")).unwrap())
            .map_err(|e| e.to_string())?;
    let sharp_fail = fault["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["theorem"] == "ThmA" && r["check"] == "sharp" && r["pass"] == false);
    ensure(sharp_fail, || {
        "no failing ThmA sharp row under the fault hook".into()
    })?;

    let args = |name: &str| {
        vec![
            "verify".to_string(),
            "--rng-seed".into(),
            "11".into(),
            "--no-timestamp".into(),
            "--out".into(),
            path(name),
        ]
    };
    for name in ["a.json", "b.json"] {
        let a = args(name);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let (code, _) = run_cli(&refs)?;
        ensure(code == 0, || format!("rerun exited {code}"))?;
    }
    let a = std::fs::read(path("a.json")).map_err(|e| e.to_string())?;
    let b = std::fs::read(path("b.json")).map_err(|e| e.to_string())?;
    ensure(a == b, || "reports differ".into())?;
    Ok(format!(
        "{rows} schema-valid rows; fault exit 1; reruns byte-identical ({} bytes)",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 dilogarithm oracle", criterion_1),
        ("2 extremal coefficients", criterion_2),
        ("3 ThmA sharpness", criterion_3),
        ("4 Thm2 sharpness", criterion_4),
        ("5 Thm3 consistency and sharpness", criterion_5),
        ("6 soundness fuzzing", criterion_6),
        ("7 lemma suites", criterion_7),
        ("8 adversarial search", criterion_8),
        ("9 closed-form instances", criterion_9),
        ("10 CLI", criterion_10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} [{secs:.2}s]: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
