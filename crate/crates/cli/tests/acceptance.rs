//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so every criterion is
//! reported even after an earlier one fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mzv_core::series::{self, stirling1, TruncationOptions};
use mzv_core::symbolic::{canonicalize, closed_form, expr_eval, ConstantExpr, Counterpart, FamilyTag};
use mzv_core::verify::{run_suite, run_suite_with, RunConfig};
use mzv_core::{Precision, SignedIndex};

type Check = Result<String, String>;

fn prec() -> Precision {
    Precision::DEFAULT
}

fn opts() -> TruncationOptions {
    TruncationOptions::default()
}

/// The ten closed forms printed next to their results, as printed.
fn golden() -> Vec<(&'static str, FamilyTag, &'static str)> {
    vec![
        ("zetastar(-1,-1)", FamilyTag::StarBar1Ones1Bar(0), "1/2*z2 + 1/2*ln2^2"),
        ("zetastar(2,-1)", FamilyTag::Star2Ones1Bar(0), "1/4*z3 - 3/2*z2*ln2"),
        ("zetastar(-1,1,-1)", FamilyTag::StarBar1Ones1Bar(1), "1/8*z3 + 1/2*z2*ln2 - 1/6*ln2^3"),
        ("zetastar(2,1,-1)", FamilyTag::Star2Ones1Bar(1), "1/8*ln2^4 + 3*li4 - 3*z4 - 3/2*z2*ln2^2 + 7/8*z3*ln2"),
        ("zeta(-1,1,-1)", FamilyTag::MzvBar1OnesBar1(1), "1/8*z3 - 1/6*ln2^3"),
        ("zeta(-1,-1,-1)", FamilyTag::ThreeBar(0, 0), "-1/4*z3 + 1/2*z2*ln2 - 1/6*ln2^3"),
        ("zeta(-1,1,1,-1)", FamilyTag::MzvBar1OnesBar1(2), "li4 + 1/12*ln2^4 + 7/8*z3*ln2 - 1/2*z2*ln2^2 - z4"),
        ("zeta(-1,-1,-1,1)", FamilyTag::ThreeBar(0, 1), "3*li4 + 1/6*ln2^4 + 23/8*z3*ln2 - z2*ln2^2 - 3*z4"),
        ("zeta(-1,1,-1,-1)", FamilyTag::ThreeBar(1, 0), "-3*li4 - 1/12*ln2^4 - 11/4*z3*ln2 - 3/4*z2*ln2^2 + 3*z4"),
        ("zeta(-1,1,2)", FamilyTag::Bar1OnesTwo(1, 0), "3*li4 + 1/8*ln2^4 + 23/8*z3*ln2 - z2*ln2^2 - 3*z4"),
    ]
}

fn canonical(tag: FamilyTag) -> Result<ConstantExpr, String> {
    let built = closed_form(tag).map_err(|e| format!("{tag}: {e}"))?;
    canonicalize(&built, true).map_err(|e| format!("{tag}: {e}"))
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

fn golden_exact() -> Check {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for (name, tag, printed) in golden() {
        let ours = canonical(tag)?;
        let theirs: ConstantExpr = printed.parse().map_err(|e| format!("{name}: {e}"))?;
        if ours != theirs {
            wrong.push(format!("{name} differs by {}", ours - theirs));
        }
    }
    within(start.elapsed(), Duration::from_secs(5), "golden comparison")?;
    if wrong.is_empty() {
        Ok("10 of 10 printed forms match".into())
    } else {
        Err(format!("{} of 10 printed forms differ: {}", wrong.len(), wrong.join("; ")))
    }
}

fn golden_numeric() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (name, tag, _) in golden() {
        let closed = expr_eval(&canonical(tag)?, prec()).map_err(|e| format!("{name}: {e}"))?;
        let Counterpart::Series(ix) = tag.counterpart() else {
            return Err(format!("{name}: no series counterpart"));
        };
        let numeric = series::eval(&ix, &opts(), prec()).map_err(|e| format!("{name}: {e}"))?;
        let d = (&closed.value - &numeric.value).abs().to_f64();
        if !(d <= 1e-10) {
            return Err(format!("{name}: closed form and series differ by {d:.3e}"));
        }
        worst = worst.max(d);
    }
    within(start.elapsed(), Duration::from_secs(30), "numeric cross-check")?;
    Ok(format!("10 cases, max diff {worst:.3e}"))
}

/// Every case of `suite` whose id starts with `prefix` passes with
/// `diff <= bound`.
fn suite_within(suite: &str, prefix: &str, bound: f64) -> Check {
    let rep = run_suite(suite, &opts(), prec()).map_err(|e| e.to_string())?;
    let mut n = 0;
    let mut worst = 0.0f64;
    for r in rep.records.iter().filter(|r| r.id.starts_with(prefix)) {
        n += 1;
        let d = r.diff.as_ref().map(|d| d.to_f64()).ok_or_else(|| format!("{}: {}", r.id, r.error.as_deref().unwrap_or("no diff")))?;
        if !r.pass || !(d <= bound) {
            return Err(format!("{}: diff {d:.3e} (bound {bound:.0e})", r.id));
        }
        worst = worst.max(d);
    }
    if n == 0 {
        return Err(format!("no cases matching {prefix}"));
    }
    Ok(format!("{n} cases, max diff {worst:.3e}"))
}

fn euler() -> Check {
    let summary = suite_within("euler", "euler/", 1e-10)?;
    let k2 = canonical(FamilyTag::EulerStar(2))?;
    if k2.to_string() != "2*z3" {
        return Err(format!("EulerStar(2) is {k2}, expected 2*z3"));
    }
    Ok(format!("{summary}; zetastar(2,1) = 2*z3"))
}

fn stirling() -> Check {
    let rep = run_suite("stirling", &opts(), prec()).map_err(|e| e.to_string())?;
    for r in &rep.records {
        if !r.pass || !r.diff.as_ref().is_some_and(|d| d.is_zero()) {
            return Err(format!("{}: difference is not identically zero", r.id));
        }
    }
    let s53 = stirling1(5, 3);
    if s53.to_string() != "35" {
        return Err(format!("s(5,3) = {s53}"));
    }
    Ok(format!("{} rows exact; s(5,3) = 35", rep.records.len()))
}

fn lemmas() -> Check {
    let summary = suite_within("lemmas", "lemmas/", 1e-8)?;
    let i0 = canonical(FamilyTag::IntegralI(0))?;
    let expected: ConstantExpr = "1/2*ln2^2 - 1/2*z2".parse().map_err(|e| format!("{e}"))?;
    if i0 != expected {
        return Err(format!("I(0) = {i0}"));
    }
    let Counterpart::Integral(spec) = FamilyTag::IntegralI(0).counterpart() else {
        return Err("I(0) has no integral counterpart".into());
    };
    let quad = mzv_core::quadrature::integrate(&spec, prec()).map_err(|e| e.to_string())?;
    let value = expr_eval(&expected, prec()).map_err(|e| e.to_string())?;
    let d = (&quad.value - &value.value).abs().to_f64();
    if !(d <= 1e-8) {
        return Err(format!("I(0) quadrature misses (ln^2 2 - z2)/2 by {d:.3e}"));
    }
    Ok(format!("{summary}; I(0) = (ln^2 2 - z2)/2, quadrature diff {d:.3e}"))
}

fn mzv(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_PREC")
        .env_remove("MZV_CACHE")
        .output()
        .expect("binary runs")
}

fn value_lines(out: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(out)
        .lines()
        .filter(|l| l.starts_with("value") || l.starts_with("err") || l.starts_with("method"))
        .map(str::to_owned)
        .collect()
}

fn properties() -> Check {
    let genfun = suite_within("genfun", "genfun/", 1e-30)?;

    for signed in [vec![2i64, 1], vec![3, 1, 1], vec![2, 2], vec![2, 1, 2]] {
        let strict = series::eval(&SignedIndex::strict(&signed), &opts(), prec()).map_err(|e| e.to_string())?;
        let star = series::eval(&SignedIndex::star(&signed), &opts(), prec()).map_err(|e| e.to_string())?;
        if star.value <= strict.value {
            return Err(format!("{signed:?}: star value does not dominate"));
        }
        for n in [5u64, 17, 40] {
            let a = series::partial_sum_exact(&SignedIndex::strict(&signed), n).map_err(|e| e.to_string())?;
            let b = series::partial_sum_exact(&SignedIndex::star(&signed), n).map_err(|e| e.to_string())?;
            if b < a {
                return Err(format!("{signed:?}: star partial sum below strict at n={n}"));
            }
        }
    }

    let one = RunConfig { jobs: 1, ..RunConfig::new(opts(), prec()) };
    let many = RunConfig { jobs: 0, ..RunConfig::new(opts(), prec()) };
    let a = run_suite_with("thm3_2", &one).map_err(|e| e.to_string())?;
    let b = run_suite_with("thm3_2", &many).map_err(|e| e.to_string())?;
    let strip = |rows: Vec<mzv_core::verify::CaseRow>| {
        rows.into_iter().map(|r| (r.id, r.lhs, r.lhs_err, r.rhs, r.rhs_err, r.diff, r.pass)).collect::<Vec<_>>()
    };
    if strip(a.rows()) != strip(b.rows()) {
        return Err("reports differ between 1 and automatic worker counts".into());
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache.jsonl");
    let cache = cache.to_str().ok_or("temp path is not UTF-8")?;
    let first = mzv(&["--cache", cache, "eval", "zetastar(2,1,-1)"]);
    let second = mzv(&["--cache", cache, "eval", "zetastar(2,1,-1)"]);
    let hit = String::from_utf8_lossy(&second.stdout).contains("cache  hit");
    if !first.status.success() || !second.status.success() || !hit || value_lines(&first.stdout) != value_lines(&second.stdout) {
        return Err("cached evaluation is not bit-identical".into());
    }

    let contract: [(&[&str], i32); 5] = [
        (&["eval", "zeta(2,1)"], 0),
        (&["eval", "zeta(1,2)"], 2),
        (&["verify", "--suite", "nosuch"], 2),
        (&["closed-form", "bogus"], 2),
        (&["--cutoff", "16", "verify", "--suite", "euler"], 1),
    ];
    for (args, code) in contract {
        let got = mzv(args).status.code();
        if got != Some(code) {
            return Err(format!("`mzv {}` exited {got:?}, expected {code}", args.join(" ")));
        }
    }
    Ok(format!("genfun {genfun}; domination, determinism, cache identity and exit codes hold"))
}

fn full_run() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("report.json");
    let start = Instant::now();
    let o = mzv(&["verify", "--suite", "all", "--out", out.to_str().ok_or("temp path is not UTF-8")?]);
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "verify --suite all")?;
    if !o.status.success() {
        return Err(format!("exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr).trim()));
    }
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let (cases, summary) = mzv_core::verify::parse_json_report(&text).map_err(|e| e.to_string())?;
    if summary.failed != 0 || cases.len() < 150 {
        return Err(format!("{} cases, {} failed", cases.len(), summary.failed));
    }
    Ok(format!("{} cases passed in {:.1} s", cases.len(), elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("golden closed forms, exact", Box::new(golden_exact)),
        ("golden closed forms, numeric", Box::new(golden_numeric)),
        ("star sums with ones vs Li(1/2)", Box::new(|| suite_within("eq2_8", "eq2_8/", 1e-10))),
        ("Euler's sum formula", Box::new(euler)),
        ("MZVs vs polylogarithms at 1/2", Box::new(|| suite_within("thm3_2", "thm3_2/", 1e-9))),
        ("integral representation grid", Box::new(|| suite_within("thm3_3", "thm3_3/", 1e-6))),
        ("barred-ones-barred closed forms", Box::new(|| suite_within("cor3_4", "cor3_4/", 1e-10))),
        ("three-bar recurrence", Box::new(|| suite_within("thm3_5", "thm3_5/m", 1e-9))),
        ("weighted sum grids", Box::new(|| {
            let a = suite_within("thm4_1", "thm4_1/", 1e-6)?;
            let b = suite_within("cor4_2", "cor4_2/", 1e-6)?;
            let c = suite_within("thm4_3", "thm4_3/", 1e-6)?;
            Ok(format!("{a}; {b}; {c}"))
        })),
        ("final series equalities", Box::new(|| suite_within("eq4_11_14", "eq4_1", 1e-9))),
        ("Stirling rows", Box::new(stirling)),
        ("lemma corpus", Box::new(lemmas)),
        ("property suites", Box::new(properties)),
        ("full verification run", Box::new(full_run)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
