//! The thirteen acceptance criteria, run in order with their time budgets.
//! Prints one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines are never captured.

use std::process::Command;
use std::time::{Duration, Instant};

use brown_cli::suite::{self, Check, LieWhich, Models};
use brown_core::liealg::JacobiMode;

const SEED: u64 = 0;
const TRIALS: usize = 200;

/// Criterion 4's component table is checked verbatim as printed. Its ξ5 row
/// carries the wrong sign on four entries; that subcheck is reported as a
/// failure, and nothing else in the suite may fail.
const KNOWN_TABLE_DEFECT: &str = "model-a-component-table";

struct Outcome {
    n: usize,
    name: &'static str,
    elapsed: Duration,
    budget: Duration,
    checks: Vec<Check>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.elapsed <= self.budget && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {} ({:.2}s, budget {}s, {} checks)",
            self.n,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.checks.len()
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            println!("    failed {}: {}", c.id, c.detail.as_deref().unwrap_or(""));
        }
        if self.elapsed > self.budget {
            println!("    over budget");
        }
    }
}

fn run(n: usize, name: &'static str, budget_s: u64, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    run_after(Duration::ZERO, n, name, budget_s, f)
}

/// Like `run`, with `spent` of shared setup charged to this criterion.
fn run_after(spent: Duration, n: usize, name: &'static str, budget_s: u64, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let t = Instant::now();
    let checks = f();
    let o = Outcome { n, name, elapsed: spent + t.elapsed(), budget: Duration::from_secs(budget_s), checks };
    o.print();
    o
}

fn brown(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_brown")).args(args).output().expect("run brown");
    assert!(out.status.success(), "brown {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn determinism() -> Vec<Check> {
    let runs: [&[&str]; 3] = [
        &["build", "B"],
        &["grade", "A", "--seed", "7"],
        &["lie", "str", "--jacobi", "sampled:2000", "--seed", "3"],
    ];
    runs.iter()
        .map(|args| {
            let (a, b) = (brown(args), brown(args));
            let ok = a == b && serde_json::from_slice::<serde_json::Value>(&a).is_ok();
            Check::new(format!("determinism {}", args.join(" ")), if ok { Ok(()) } else { Err("outputs differ".into()) })
        })
        .collect()
}

fn main() {
    let mut out = Vec::new();
    out.push(run(1, "cocycle tables", 1, suite::cocycle_tables));
    out.push(run(2, "basis lemma", 1, suite::basis_lemma));

    out.push(run(3, "model B", 10, || {
        let b = brown_core::brown::model_b::build_model_b().expect("model B");
        suite::model_b(&b)
    }));
    out.push(run(4, "model A", 60, || {
        let a = brown_core::brown::model_a::build_model_a().expect("model A");
        suite::model_a(&a, SEED)
    }));
    let t = Instant::now();
    let m: &Models = &suite::build_models().expect("models");
    let build = t.elapsed();
    println!("(models and isomorphism chain built in {:.2}s)", build.as_secs_f64());
    out.push(run(5, "structurable axioms", 120, || suite::structurable(m, TRIALS, SEED)));
    out.push(run(6, "isomorphism chain", 30, || suite::iso(m, SEED)));
    out.push(run(7, "trace form", 10, || suite::trace_form_checks(m, SEED)));
    out.push(run(8, "rank and orbit suite", 60, || suite::rank_suite(TRIALS, SEED)));

    let t = Instant::now();
    let (b, tower) = suite::tower().expect("tower");
    let tower_time = t.elapsed();
    println!("(Lie tower built in {:.2}s, charged to each of criteria 9 to 11)", tower_time.as_secs_f64());
    for (n, name, which, budget) in [
        (9, "E6 derivations", LieWhich::Der, 600),
        (10, "E7 structure algebra", LieWhich::Str, 600),
        (11, "E8 Kantor algebra", LieWhich::Kan, 1800),
    ] {
        out.push(run_after(tower_time, n, name, budget, || suite::lie(which, JacobiMode::Full, &b, &tower).1));
    }
    out.push(run(12, "recognition invariants", 30, || suite::recognition(m)));
    out.push(run(13, "determinism", 300, determinism));

    let passed = out.iter().filter(|o| o.passed()).count();
    println!("{passed} of {} criteria pass", out.len());

    // Every criterion must pass except the known defect in criterion 4,
    // which must be the only failing check there.
    for o in &out {
        if o.n == 4 {
            let failing: Vec<&str> = o.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
            assert!(failing.iter().all(|id| *id == KNOWN_TABLE_DEFECT), "criterion 4: unexpected failures {failing:?}");
            assert!(o.elapsed <= o.budget, "criterion 4 over budget");
            let table = o.checks.iter().find(|c| c.id == KNOWN_TABLE_DEFECT).expect("table check");
            if let Some(d) = &table.detail {
                assert_eq!(d.matches(" at (").count(), 4, "{d}");
                assert!(d.split("; ").all(|e| e.contains("ξ5")), "{d}");
            }
        } else {
            assert!(o.passed(), "criterion {} failed", o.n);
        }
    }
}
