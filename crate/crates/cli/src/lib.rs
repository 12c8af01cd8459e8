//! Command dispatch for the `solvqi` binary. `run` is pure apart from
//! reading the input files, so tests drive it directly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use solvqi::exactlin::Subspace;
use solvqi::geometry::{
    conformal_dimension, detect_diagonal_heintze, identify_rank_one_iwasawa, strong_pointed_sphere, NotHeintze,
};
use solvqi::lang::{parse, Diagnostic};
use solvqi::liealg::{triangularize, LieAlgebra};
use solvqi::qiengine::{
    compare, family_report, summarize_image, table1_report, QiError, RowStatus, VerdictKind,
};
use solvqi::reduction::{cone_dimension, exponential_radical, rho1, rho_infinity, ReductionError};
use solvqi::structure::{
    builtin_extended, fingerprint, load_extended_dir, match_catalog, split_factors, ExtendedEntry, StructureError,
};

/// Overrides the extended-catalog directory when `--extended` is absent.
pub const EXTENDED_DIR_ENV: &str = "SOLVQI_EXTENDED_DIR";

#[derive(Parser, Debug)]
#[command(name = "solvqi", version, about = "Exact reductions and quasi-isometry invariants of solvable Lie algebras")]
struct Cli {
    /// Machine-readable report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Only the one-line summary.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check the Jacobi identity.
    Validate { file: PathBuf },
    /// Lower central and derived series.
    Series { file: PathBuf },
    /// Exponential radical.
    Exprad { file: PathBuf },
    /// Cone dimension.
    Conedim { file: PathBuf },
    /// The ρ₁ reduction, split and matched.
    Rho1 { file: PathBuf },
    /// The ρ∞ reduction, split and matched.
    Rhoinf { file: PathBuf },
    /// Diagonal Heintze data and boundary invariants.
    Heintze { file: PathBuf },
    /// Conformal dimension of the boundary of a diagonal Heintze algebra.
    Cdim { file: PathBuf },
    /// Euclidean factor and direct factors.
    Split { file: PathBuf },
    /// Catalog normal form.
    Match { file: PathBuf },
    /// Quasi-isometry verdict for two algebras.
    Compare { a: PathBuf, b: PathBuf },
    /// Recompute the reduction column of the decomposable-image table.
    Table1 {
        #[arg(long)]
        extended: Option<PathBuf>,
    },
    /// Pairwise comparisons across the five-dimensional families.
    Families {
        #[arg(long)]
        extended: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Diagnostic = 1,
    Unsupported = 2,
    Internal = 3,
}

#[derive(Debug)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Vec<String>,
    results: Value,
    citations: Vec<String>,
}

#[derive(Serialize)]
struct ErrorReport {
    command: String,
    inputs: Vec<String>,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<Diagnostic>,
}

#[derive(Debug)]
enum CliError {
    Diagnostic { file: String, diag: Diagnostic },
    Input(String),
    Unsupported(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Diagnostic { .. } | CliError::Input(_) => ExitCode::Diagnostic,
            CliError::Unsupported(_) => ExitCode::Unsupported,
            CliError::Internal(_) => ExitCode::Internal,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Diagnostic { .. } | CliError::Input(_) => "input",
            CliError::Unsupported(_) => "unsupported",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Diagnostic { file, diag } => format!("{file}: {diag}"),
            CliError::Input(m) | CliError::Unsupported(m) | CliError::Internal(m) => m.clone(),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        if e.is_unsupported() {
            CliError::Unsupported(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Reduction(r) => r.into(),
            StructureError::Extended { .. } | StructureError::Inadmissible { .. } | StructureError::UnknownEntry(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<QiError> for CliError {
    fn from(e: QiError) -> Self {
        match e {
            QiError::Reduction(r) => r.into(),
            QiError::Structure(s) => s.into(),
            e @ QiError::NotCompletelySolvable { .. } => CliError::Unsupported(e.to_string()),
        }
    }
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

fn load(path: &Path) -> Result<LieAlgebra, CliError> {
    let file = display_path(path);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
    let doc = parse(&text).map_err(|diag| CliError::Diagnostic {
        file: file.clone(),
        diag,
    })?;
    let g = doc.to_algebra().map_err(|diag| CliError::Diagnostic {
        file: file.clone(),
        diag,
    })?;
    g.validate()
        .map_err(|v| CliError::Input(format!("{file}: not a Lie algebra: {v}")))?;
    Ok(g)
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().to_string_rows() })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn extended_entries(dir: &Option<PathBuf>) -> Result<(Vec<ExtendedEntry>, String), CliError> {
    let dir = dir
        .clone()
        .or_else(|| std::env::var_os(EXTENDED_DIR_ENV).map(PathBuf::from));
    match dir {
        Some(d) => Ok((load_extended_dir(&d)?, display_path(&d))),
        None => Ok((builtin_extended()?, "builtin".into())),
    }
}

fn not_heintze(e: NotHeintze) -> CliError {
    if let NotHeintze::Reduction(r) = e {
        return r.into();
    }
    CliError::Unsupported(format!("not a diagonal Heintze algebra: {e}"))
}

/// `(report, human summary, detail lines)`.
type Done = (Report, String, Vec<String>);

fn report(command: &str, inputs: Vec<String>, results: Value) -> Report {
    Report {
        command: command.into(),
        inputs,
        results,
        citations: vec![],
    }
}

fn execute(cmd: &Command) -> Result<Done, CliError> {
    let one = |f: &PathBuf| -> Result<(LieAlgebra, Vec<String>), CliError> {
        let g = load(f)?;
        let name = g.name().to_string();
        Ok((g, vec![name]))
    };
    Ok(match cmd {
        Command::Validate { file } => {
            let (g, inputs) = one(file)?;
            let headline = format!("{}: valid Lie algebra of dimension {}", g.name(), g.dim());
            let r = report("validate", inputs, json!({ "valid": true, "algebra": to_value(&g) }));
            (r, headline, vec![])
        }
        Command::Series { file } => {
            let (g, inputs) = one(file)?;
            let lcs = g.lower_central_series();
            let der = g.derived_series();
            let f = fingerprint(&g);
            let headline = format!("lower central {:?}, derived {:?}", lcs.dims, der.dims);
            let details = vec![
                format!("nilpotent: {}", f.nilpotent),
                format!("solvable: {}", der.reaches_zero()),
            ];
            let r = report(
                "series",
                inputs,
                json!({
                    "lower_central": { "dims": lcs.dims, "terms": lcs.terms.iter().map(subspace_json).collect::<Vec<_>>() },
                    "derived": { "dims": der.dims, "terms": der.terms.iter().map(subspace_json).collect::<Vec<_>>() },
                    "nilpotent": f.nilpotent,
                    "solvable": der.reaches_zero(),
                }),
            );
            (r, headline, details)
        }
        Command::Exprad { file } => {
            let (g, inputs) = one(file)?;
            let r_exp = exponential_radical(&g)?;
            let headline = format!("exponential radical of dimension {}", r_exp.dim());
            let details = r_exp.basis().to_string_rows().iter().map(|row| format!("[{}]", row.join(", "))).collect();
            (report("exprad", inputs, json!({ "exprad": subspace_json(&r_exp) })), headline, details)
        }
        Command::Conedim { file } => {
            let (g, inputs) = one(file)?;
            let c = cone_dimension(&g)?;
            (report("conedim", inputs, json!({ "cone_dim": c })), c.to_string(), vec![])
        }
        Command::Rho1 { file } | Command::Rhoinf { file } => {
            let (g, inputs) = one(file)?;
            let (name, red) = match cmd {
                Command::Rho1 { .. } => ("rho1", rho1(&g)?),
                _ => ("rhoinf", rho_infinity(&g)?),
            };
            let img = summarize_image(&red.output)?;
            let headline = format!("{name}({}) = {}", g.name(), img.display);
            let mut details = red.construction_log.clone();
            details.push(format!("split certified: {}", img.complete));
            let r = report(name, inputs, json!({ "reduction": to_value(&red), "image": to_value(&img) }));
            (r, headline, details)
        }
        Command::Heintze { file } => {
            let (g, inputs) = one(file)?;
            match detect_diagonal_heintze(&g) {
                Ok(h) => {
                    let cd = conformal_dimension(&h);
                    let tag = identify_rank_one_iwasawa(&h);
                    let spsp = strong_pointed_sphere(&h);
                    let spec: Vec<String> = h.spectrum.iter().map(|(l, m)| format!("{l}^{m}")).collect();
                    let headline = format!("diagonal Heintze, spectrum {{{}}}, Cdim {cd}", spec.join(", "));
                    let details = vec![
                        format!("nilradical: {:?}", h.nilradical_kind),
                        format!("rank-one symmetric: {tag}"),
                        format!("strong pointed sphere: {:?} ({})", spsp.value, spsp.rule),
                    ];
                    let r = report(
                        "heintze",
                        inputs,
                        json!({
                            "heintze": true,
                            "data": to_value(&h),
                            "conformal_dimension": cd.to_string(),
                            "iwasawa": to_value(&tag),
                            "spsp": to_value(&spsp),
                        }),
                    );
                    (r, headline, details)
                }
                Err(e) if e.is_unsupported() => return Err(not_heintze(e)),
                Err(e) => {
                    let r = report("heintze", inputs, json!({ "heintze": false, "reason": e.to_string() }));
                    (r, format!("not a diagonal Heintze algebra: {e}"), vec![])
                }
            }
        }
        Command::Cdim { file } => {
            let (g, inputs) = one(file)?;
            let h = detect_diagonal_heintze(&g).map_err(not_heintze)?;
            let cd = conformal_dimension(&h);
            (report("cdim", inputs, json!({ "conformal_dimension": cd.to_string() })), cd.to_string(), vec![])
        }
        Command::Split { file } => {
            let (g, inputs) = one(file)?;
            triangularize(&g).map_err(|f| CliError::Unsupported(format!("not completely solvable: {}", f.reason())))?;
            let s = split_factors(&g)?;
            let img = summarize_image(&g)?;
            let headline = format!("{} (certified: {})", img.display, s.complete);
            let r = report("split", inputs, json!({ "split": to_value(&s), "matches": to_value(&img.matches) }));
            (r, headline, vec![])
        }
        Command::Match { file } => {
            let (g, inputs) = one(file)?;
            let m = match_catalog(&g);
            let headline = m.as_ref().map_or_else(|| "no catalog match".to_string(), ToString::to_string);
            (report("match", inputs, json!({ "match": to_value(&m) })), headline, vec![])
        }
        Command::Compare { a, b } => {
            let (ga, gb) = (load(a)?, load(b)?);
            let v = compare(&ga, &gb)?;
            let headline = match v.separating_rule() {
                Some(r) => format!("{:?} ({}: {})", v.kind, r.rule_id, r.conclusion),
                None => format!("{:?}", v.kind),
            };
            let details = v
                .certificate
                .iter()
                .map(|r| format!("{} {:?}: {}", r.rule_id, r.outcome, r.conclusion))
                .collect();
            let citations = v.certificate.iter().map(|r| format!("{}: {}", r.rule_id, r.citation)).collect();
            let mut r = report("compare", vec![ga.name().into(), gb.name().into()], to_value(&v));
            r.citations = citations;
            (r, headline, details)
        }
        Command::Table1 { extended } => {
            let (ext, source) = extended_entries(extended)?;
            let t = table1_report(&ext);
            let headline = format!("{} passed, {} failed, {} skipped", t.passed, t.failed, t.skipped);
            let details = t
                .rows
                .iter()
                .map(|r| {
                    let tag = match r.status {
                        RowStatus::Pass => "PASS",
                        RowStatus::Fail => "FAIL",
                        RowStatus::Skipped => "SKIP",
                    };
                    format!("{tag} {}: {} [dehn {} not checked]", r.row, r.reason, r.dehn)
                })
                .collect();
            (report("table1", vec![source], to_value(&t)), headline, details)
        }
        Command::Families { extended } => {
            let (ext, source) = extended_entries(extended)?;
            let f = family_report(&ext);
            let headline = format!("{} pairs agree, {} disagree", f.passed, f.failed);
            let mut details: Vec<String> = f
                .pairs
                .iter()
                .map(|p| {
                    format!(
                        "{} {} vs {}: {:?} via {} ({})",
                        if p.pass { "ok  " } else { "FAIL" },
                        p.a,
                        p.b,
                        p.verdict.unwrap_or(VerdictKind::Inconclusive),
                        p.rule.as_deref().unwrap_or("-"),
                        p.note
                    )
                })
                .collect();
            details.extend(f.skipped.iter().map(|(w, why)| format!("skipped {w}: {why}")));
            (report("families", vec![source], to_value(&f)), headline, details)
        }
    })
}

fn inputs_of(cmd: &Command) -> (&'static str, Vec<String>) {
    match cmd {
        Command::Validate { file } => ("validate", vec![display_path(file)]),
        Command::Series { file } => ("series", vec![display_path(file)]),
        Command::Exprad { file } => ("exprad", vec![display_path(file)]),
        Command::Conedim { file } => ("conedim", vec![display_path(file)]),
        Command::Rho1 { file } => ("rho1", vec![display_path(file)]),
        Command::Rhoinf { file } => ("rhoinf", vec![display_path(file)]),
        Command::Heintze { file } => ("heintze", vec![display_path(file)]),
        Command::Cdim { file } => ("cdim", vec![display_path(file)]),
        Command::Split { file } => ("split", vec![display_path(file)]),
        Command::Match { file } => ("match", vec![display_path(file)]),
        Command::Compare { a, b } => ("compare", vec![display_path(a), display_path(b)]),
        Command::Table1 { .. } => ("table1", vec![]),
        Command::Families { .. } => ("families", vec![]),
    }
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Diagnostic } else { ExitCode::Ok };
            let text = e.render().to_string();
            return if code == ExitCode::Ok {
                RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            } else {
                RunOutput {
                    stdout: String::new(),
                    stderr: text,
                    code: code as i32,
                }
            };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match execute(&cli.command) {
        Ok((r, headline, details)) => {
            // A table row that fails to reproduce is reported in full but
            // still signals a broken invariant.
            let failed_rows = r.command == "table1" && r.results["failed"].as_u64().is_some_and(|n| n > 0);
            if cli.json {
                stdout = serde_json::to_string_pretty(&r).expect("json") + "\n";
            } else {
                let _ = writeln!(stdout, "{headline}");
                if !cli.quiet {
                    for d in details {
                        let _ = writeln!(stdout, "  {d}");
                    }
                }
            }
            if failed_rows {
                ExitCode::Internal
            } else {
                ExitCode::Ok
            }
        }
        Err(e) => {
            let (command, inputs) = inputs_of(&cli.command);
            if cli.json {
                let body = ErrorReport {
                    command: command.into(),
                    inputs,
                    error: ErrorBody {
                        kind: e.kind(),
                        message: e.message(),
                        diagnostic: match &e {
                            CliError::Diagnostic { diag, .. } => Some(diag.clone()),
                            _ => None,
                        },
                    },
                };
                stdout = serde_json::to_string_pretty(&body).expect("json") + "\n";
            }
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    };
    RunOutput {
        stdout,
        stderr,
        code: code as i32,
    }
}
