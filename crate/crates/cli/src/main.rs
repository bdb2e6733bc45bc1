use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use brown_core::brown::recognition::skew_degree;
use brown_core::composition::{build_split_octonions, gamma_matrix, sigma11, sigma_matrix};
use brown_core::gradings::Grading;
use brown_core::jordan::build_albert;
use brown_core::liealg::JacobiMode;
use brown_core::{Field, GaussRat};


use brown_cli::suite::{self, Check, LieWhich};

#[derive(Parser, Debug)]
#[command(name = "brown", version, about = "Exact models of the split Brown algebra, its Z4^3-grading and E6/E7/E8")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    /// `full` or `sampled:N`
    #[arg(long, global = true, default_value = "sampled:5000")]
    jacobi: JacobiMode,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Signs,
    Octonions,
    Albert,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a model; writes the algebra and its grading.
    Build { model: Model },
    /// Run the identity suite on both models.
    Verify,
    /// Component dimensions, support and fingerprint of a model's grading.
    Grade { model: Model },
    /// Build and certify a Lie algebra.
    Lie { which: LieWhich },
    /// Classify an Albert element given as JSON: {"alpha":[..3], "a":[..3]},
    /// each `a` entry 0 or 8 coordinates.
    Orbit { element: String },
    /// Export tables as JSON.
    Export { what: ExportWhat },
    /// Summarize artifacts, or run every suite when none are given.
    Report { artifacts: Vec<PathBuf> },
}

#[derive(Debug)]
enum Failure {
    /// I/O or parse error: exit 2.
    Input(String),
    /// Construction failed: exit 1.
    Build(String),
}

#[derive(Serialize)]
struct Artifact {
    schema: String,
    tool: &'static str,
    version: &'static str,
    command: String,
    seed: u64,
    trials: usize,
    passed: bool,
    checks: Vec<Check>,
    body: Value,
}

fn artifact(cli: &Cli, schema: &str, command: String, checks: Vec<Check>, body: Value) -> Artifact {
    Artifact {
        schema: schema.into(),
        tool: "brown",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed: cli.seed,
        trials: cli.trials,
        passed: checks.iter().all(|c| c.passed),
        checks,
        body,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn render_text(a: &Artifact) -> String {
    let mut s = format!("{} ({})\n", a.command, a.schema);
    for c in &a.checks {
        match &c.detail {
            Some(d) => s.push_str(&format!("FAIL {}: {d}\n", c.id)),
            None => s.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id)),
        }
    }
    if let Some(summary) = a.body.get("summary") {
        for (k, v) in summary.as_object().into_iter().flatten() {
            s.push_str(&format!("{k}: {v}\n"));
        }
    }
    s.push_str(if a.passed { "all checks passed\n" } else { "some checks failed\n" });
    s
}

fn emit(cli: &Cli, a: &Artifact) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(a).expect("serializable") + "\n",
        Format::Text => render_text(a),
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn grading_body(g: &Grading, g0: Option<&brown_core::grading_groups::GroupElt>) -> Value {
    let dims: Vec<(String, usize)> = g.component_dims().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    json!({
        "grading": g.to_json(g0),
        "component_dims": dims,
        "summary": {
            "components": g.support().len(),
            "max_dim": dims.iter().map(|d| d.1).max().unwrap_or(0),
            "fine_dim1": g.is_fine_dim1(),
        }
    })
}

fn build(cli: &Cli, model: Model) -> Result<Artifact, Failure> {
    let m = suite::build_models().map_err(Failure::Build)?;
    let (alg, grading) = match model {
        Model::A => (&m.a.graded, &m.a.grading),
        Model::B => (&m.b.graded, &m.b.grading),
    };
    let (_, g0) = skew_degree(alg, grading);
    let checks = vec![
        Check::new("grading-verified", if grading.verified { Ok(()) } else { Err("not verified".into()) }),
        Check::expect("components-dim1", (grading.support().len(), grading.is_fine_dim1()), (56, true)),
    ];
    let mut body = grading_body(grading, g0.as_ref());
    body["algebra"] = to_value(&alg.to_json());
    Ok(artifact(cli, "build/v1", format!("build {model:?}"), checks, body))
}

fn grade(cli: &Cli, model: Model) -> Result<Artifact, Failure> {
    let m = suite::build_models().map_err(Failure::Build)?;
    let (alg, grading) = match model {
        Model::A => (&m.a.graded, &m.a.grading),
        Model::B => (&m.b.graded, &m.b.grading),
    };
    let (_, g0) = skew_degree(alg, grading);
    let r = brown_core::brown::recognition::recognition_invariants(&format!("{model:?}"), alg, grading, false);
    let checks = vec![Check::new("recognition", if r.passed() { Ok(()) } else { Err(format!("{r:?}")) })];
    Ok(artifact(cli, "grading/v1", format!("grade {model:?}"), checks, grading_body(grading, g0.as_ref())))
}

fn lie(cli: &Cli, which: LieWhich) -> Result<Artifact, Failure> {
    let (b, t) = suite::tower().map_err(Failure::Build)?;
    let (table, checks) = suite::lie(which, cli.jacobi.with_seed(cli.seed), &b, &t);
    let mut body = to_value(&table.to_json());
    if which == LieWhich::Der {
        let g = table.grading.as_ref().expect("degrees");
        body["component_dims"] = to_value(&g.fingerprint(None));
    }
    body["summary"] = json!({
        "dim": table.dim(),
        "killing_rank": table.certificates.killing_rank,
        "center_dim": table.certificates.center_dim,
    });
    Ok(artifact(cli, "lie/v1", format!("lie {which:?}").to_lowercase(), checks, body))
}

fn parse_scalar(v: &Value) -> Result<Field, String> {
    match v {
        Value::Number(n) => n.as_i64().map(GaussRat::from_int).ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s.parse().map_err(|e| format!("{s:?}: {e}")),
        _ => Err(format!("expected a number or string, got {v}")),
    }
}

fn parse_albert(s: &str) -> Result<Vec<Field>, String> {
    let v: Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let list = |key: &str| -> Result<Vec<Value>, String> {
        match v.get(key) {
            Some(Value::Array(a)) if a.len() == 3 => Ok(a.clone()),
            _ => Err(format!("{key:?} must be an array of three entries")),
        }
    };
    let mut x = Vec::with_capacity(27);
    for a in list("alpha")? {
        x.push(parse_scalar(&a)?);
    }
    for a in list("a")? {
        match a {
            Value::Array(c) if c.len() == 8 => {
                for t in &c {
                    x.push(parse_scalar(t)?);
                }
            }
            ref z if parse_scalar(z).is_ok_and(|f| f == GaussRat::default()) => x.extend(vec![GaussRat::default(); 8]),
            _ => return Err("each \"a\" entry is 0 or an array of 8 coordinates".into()),
        }
    }
    Ok(x)
}

fn orbit(cli: &Cli, element: &str) -> Result<Artifact, Failure> {
    let x = parse_albert(element).map_err(Failure::Input)?;
    let alb = build_albert::<Field>();
    let label = alb.classify_orbit(&x);
    let rank = alb.rank(&x);
    let checks = vec![Check::expect("classifier-agrees-with-rank", label.rank(), rank)];
    let body = json!({ "orbit": label.name(), "label": label, "rank": rank, "summary": { "orbit": label.name(), "rank": rank } });
    Ok(artifact(cli, "orbit/v1", "orbit".into(), checks, body))
}

fn export(cli: &Cli, what: ExportWhat) -> Result<Artifact, Failure> {
    let body = match what {
        ExportWhat::Signs => json!({ "gamma": gamma_matrix(), "sigma": sigma_matrix(), "sigma11": sigma11() }),
        ExportWhat::Octonions => to_value(&build_split_octonions::<Field>().to_json()),
        ExportWhat::Albert => to_value(&build_albert::<Field>().alg().to_json()),
        ExportWhat::A | ExportWhat::B => {
            let m = suite::build_models().map_err(Failure::Build)?;
            let alg = if what == ExportWhat::A { &m.a.graded } else { &m.b.graded };
            to_value(&alg.to_json())
        }
    };
    let schema = if what == ExportWhat::Signs { "signs/v1" } else { "involutive-algebra/v1" };
    Ok(artifact(cli, schema, format!("export {what:?}").to_lowercase(), Vec::new(), body))
}

fn verify(cli: &Cli) -> Result<Artifact, Failure> {
    let checks = suite::verify_all(cli.trials, cli.seed).map_err(Failure::Build)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let body = json!({ "summary": { "checks": checks.len(), "failed": failed } });
    Ok(artifact(cli, "verify/v1", "verify".into(), checks, body))
}

#[derive(serde::Deserialize)]
struct ArtifactIn {
    schema: String,
    command: String,
    seed: u64,
    passed: bool,
    checks: Vec<CheckIn>,
}

#[derive(serde::Deserialize)]
struct CheckIn {
    id: String,
    passed: bool,
    detail: Option<String>,
}

fn report(cli: &Cli, paths: &[PathBuf]) -> Result<Artifact, Failure> {
    let mut checks = Vec::new();
    let mut sources = Vec::new();
    if paths.is_empty() {
        checks.extend(suite::verify_all(cli.trials, cli.seed).map_err(Failure::Build)?);
        let (b, t) = suite::tower().map_err(Failure::Build)?;
        for which in [LieWhich::Der, LieWhich::Str, LieWhich::Kan] {
            checks.extend(suite::lie(which, cli.jacobi.with_seed(cli.seed), &b, &t).1);
        }
    } else {
        for p in paths {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            let a: ArtifactIn =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            sources.push(json!({ "path": p.display().to_string(), "schema": a.schema, "command": a.command, "seed": a.seed, "passed": a.passed }));
            checks.extend(a.checks.into_iter().map(|c| Check {
                id: format!("{}/{}", a.command, c.id),
                passed: c.passed,
                detail: c.detail,
            }));
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let body = json!({ "sources": sources, "summary": { "checks": checks.len(), "failed": failed } });
    Ok(artifact(cli, "report/v1", "report".into(), checks, body))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BROWN_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Input(format!("BROWN_THREADS={v:?} is not a number")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let a = match &cli.command {
        Command::Build { model } => build(cli, *model)?,
        Command::Verify => verify(cli)?,
        Command::Grade { model } => grade(cli, *model)?,
        Command::Lie { which } => lie(cli, *which)?,
        Command::Orbit { element } => orbit(cli, element)?,
        Command::Export { what } => export(cli, *what)?,
        Command::Report { artifacts } => report(cli, artifacts)?,
    };
    emit(cli, &a)?;
    if !a.passed {
        for c in a.checks.iter().filter(|c| !c.passed) {
            eprintln!("FAIL {}: {}", c.id, c.detail.as_deref().unwrap_or(""));
        }
    }
    Ok(a.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Build(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_orbit_input() {
        let x = parse_albert(r#"{"alpha":[1,0,0],"a":[0,0,0]}"#).unwrap();
        assert_eq!(x.len(), 27);
        assert_eq!(x[0], GaussRat::from_int(1));
        let y = parse_albert(r#"{"alpha":["1/2","i",0],"a":[[1,0,0,0,0,0,0,0],0,0]}"#).unwrap();
        assert_eq!(y[1], GaussRat::i());
        assert!(parse_albert(r#"{"alpha":[1,0],"a":[0,0,0]}"#).is_err());
        assert!(parse_albert("not json").is_err());
    }

    #[test]
    fn cli_defaults() {
        let cli = Cli::try_parse_from(["brown", "verify"]).unwrap();
        assert_eq!(cli.seed, 0);
        assert_eq!(cli.trials, 200);
        assert_eq!(cli.jacobi, JacobiMode::Sampled { n: 5000, seed: 0 });
        assert_eq!(cli.format, Format::Json);
        assert!(Cli::try_parse_from(["brown", "lie", "kan", "--jacobi", "sampled"]).is_err());
    }
}
