//! The `kernelflow` command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kernelflow_core::forms::{field_of_form, OneForm};
use kernelflow_core::portrait::{self, PolyField, PortraitSpec, Window};
use kernelflow_core::unfolding::UnfoldingFamily;
use kernelflow_core::{parse_expr, GeometryError, Jet, Monomial, ParseError};
use serde_json::json;

use crate::report::{self, InputEcho, SCHEMA_VERSION, TOOL_VERSION};
use crate::{json, svg, trace, verify};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSTABLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "kernelflow", version, about = "Normal forms, codimension and unfoldings of vector fields f·X_a in the kernel of a planar 1-form")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify f·X_a and print a JSON report.
    ///
    /// Contact orders start at 0: a curve transverse to the leaves of X_a is
    /// RegularCurve(0).
    Classify(InputArgs),
    /// Classify and print the transversal unfolding family.
    Unfold(InputArgs),
    /// Render phase portraits of family members as SVG and CSV.
    Portrait(PortraitArgs),
    /// Run the built-in identity suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct FormArgs {
    /// The 1-form P dx + Q dy, as "P,Q".
    #[arg(long, value_name = "P,Q", conflicts_with = "dg")]
    form: Option<String>,
    /// Use the closed form dg.
    #[arg(long, value_name = "G")]
    dg: Option<String>,
    /// Truncation order of all jets.
    #[arg(long, env = "KERNELFLOW_ORDER", default_value_t = 12,
          value_parser = clap::value_parser!(u32).range(2..=64))]
    order: u32,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[command(flatten)]
    form: FormArgs,
    /// The multiplier f.
    #[arg(long, value_name = "EXPR")]
    f: String,
}

#[derive(Debug, Args)]
struct PortraitArgs {
    /// Read the family from a classify/unfold report.
    #[arg(long, value_name = "REPORT", conflicts_with_all = ["form", "dg", "f"])]
    family_from: Option<PathBuf>,
    #[command(flatten)]
    form: FormArgs,
    #[arg(long, value_name = "EXPR")]
    f: Option<String>,
    /// Parameter vector "c0,c1,..."; repeat for one panel each.
    #[arg(long = "c", value_name = "C0,C1,...", allow_hyphen_values = true)]
    c: Vec<String>,
    /// Half-width of the square window.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    window: f64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Integration step.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = portrait::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Seeds per axis.
    #[arg(long, default_value_t = 9)]
    seeds: usize,
    /// Contour cells per axis.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
    /// Keep every N-th trajectory sample in the CSV dump.
    #[arg(long, default_value_t = 10)]
    csv_every: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Print the check names and exit.
    #[arg(long)]
    list: bool,
    /// Run the suite with the opposite field sign (self-test of the suite).
    #[arg(long, hide = true)]
    flip_convention: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot parse {what}: {source}")]
    Parse {
        what: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Decode(#[from] json::DecodeError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn parse(what: &'static str, text: &str, order: u32) -> Result<Jet, CliError> {
    parse_expr(text, order).map_err(|source| CliError::Parse { what, source })
}

/// Splits "P,Q" at the single top-level comma.
fn split_pair(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut at = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if at.is_some() {
                    return None;
                }
                at = Some(i);
            }
            _ => {}
        }
    }
    at.map(|i| (text[..i].trim(), text[i + 1..].trim()))
}

struct FormInput {
    form: OneForm,
    echo_form: Option<[String; 2]>,
    echo_dg: Option<String>,
}

fn read_form(args: &FormArgs) -> Result<FormInput, CliError> {
    let n = args.order;
    match (&args.form, &args.dg) {
        (Some(pq), None) => {
            let (p, q) = split_pair(pq)
                .ok_or_else(|| CliError::Usage(format!("--form expects \"P,Q\", got {pq:?}")))?;
            Ok(FormInput {
                form: OneForm::new(parse("P", p, n)?, parse("Q", q, n)?),
                echo_form: Some([p.to_string(), q.to_string()]),
                echo_dg: None,
            })
        }
        (None, Some(g)) => Ok(FormInput {
            form: OneForm::exact(&parse("g", g, n + 1)?),
            echo_form: None,
            echo_dg: Some(g.clone()),
        }),
        _ => Err(CliError::Usage("one of --form or --dg is required".into())),
    }
}

fn analyse(command: &'static str, form: &FormArgs, f: &str) -> Result<report::Analysis, CliError> {
    let input = read_form(form)?;
    let fj = parse("f", f, form.order)?;
    let echo = InputEcho {
        form: input.echo_form,
        dg: input.echo_dg,
        f: f.to_string(),
        order: form.order,
    };
    Ok(report::analyse(command, echo, &input.form, &fj))
}

fn cmd_report(command: &'static str, args: &InputArgs) -> Result<u8, CliError> {
    let analysis = analyse(command, &args.form, &args.f)?;
    for w in &analysis.report.warnings {
        eprintln!("warning: {w}");
    }
    emit(&report::to_json(&analysis.report));
    Ok(if analysis.is_unstable() { EXIT_UNSTABLE } else { 0 })
}

fn parse_parameters(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let j = parse("parameter", item.trim(), 1)?;
            if j.terms().any(|(m, _)| m != Monomial::ONE) {
                return Err(CliError::Usage(format!("parameter {item:?} is not a constant")));
            }
            Ok(j.to_f64_terms().first().map_or(0.0, |t| t.2))
        })
        .collect()
}

fn load_family(args: &PortraitArgs) -> Result<UnfoldingFamily, CliError> {
    if let Some(path) = &args.family_from {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        if value["family"].is_null() {
            return Err(CliError::Usage(format!("{} has no unfolding family", path.display())));
        }
        return Ok(json::decode_family(&value["family"])?);
    }
    let f = args
        .f
        .as_deref()
        .ok_or_else(|| CliError::Usage("portrait needs --family-from or --f with --form/--dg".into()))?;
    let analysis = analyse("classify", &args.form, f)?;
    analysis
        .family
        .ok_or_else(|| CliError::Usage("codimension is not finite; no family to draw".into()))
}

fn cmd_portrait(args: &PortraitArgs) -> Result<u8, CliError> {
    let window = Window::square(args.window)
        .ok_or_else(|| CliError::Usage(format!("--window must be positive, got {}", args.window)))?;
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(CliError::Usage(format!("--step must be positive, got {}", args.step)));
    }
    let family = load_family(args)?;
    let mut vectors = args
        .c
        .iter()
        .map(|c| parse_parameters(c))
        .collect::<Result<Vec<_>, _>>()?;
    if vectors.is_empty() {
        vectors.push(vec![0.0; family.len()]);
    }
    let spec = PortraitSpec {
        window,
        seeds: (args.seeds, args.seeds),
        step: args.step,
        max_steps: args.max_steps,
        resolution: args.resolution.max(16),
    };
    std::fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    let xa = PolyField::from_field(&field_of_form(&family.form));
    let mut panels = Vec::new();
    for (i, c) in vectors.iter().enumerate() {
        let (f, _) = family.member_f64(c)?;
        let scene = portrait::scene(&f, &xa, &spec);
        let svg_path = args.out.join(format!("panel_{i}.svg"));
        let csv_path = args.out.join(format!("panel_{i}.csv"));
        let title = format!("c = {c:?}");
        svg::write(&scene, &title, &svg_path).map_err(|source| CliError::Io {
            path: svg_path.clone(),
            source,
        })?;
        trace::write(&scene, args.csv_every, &csv_path)?;
        panels.push(json!({
            "c": c,
            "svg": display(&svg_path),
            "csv": display(&csv_path),
            "trajectories": scene.trajectories.len(),
            "equilibrium_components": scene.equilibrium_components(spec.cell_diagonal()),
        }));
    }
    let mut warnings = Vec::new();
    if family.rectified {
        warnings.push("portraits are drawn in flow-box coordinates".to_string());
    }
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": "portrait",
        "family": json::family(&family),
        "window": args.window,
        "panels": panels,
        "warnings": warnings,
    });
    emit(&format!("{}\n", serde_json::to_string_pretty(&summary)?));
    Ok(0)
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    if args.list {
        for c in verify::checks() {
            emit(&format!("{}\n", c.name));
        }
        return 0;
    }
    let convention = if args.flip_convention {
        verify::flipped_convention()
    } else {
        verify::standard_convention()
    };
    let mut failed = 0;
    for (name, result) in verify::run_all(convention) {
        match result {
            Ok(()) => emit(&format!("pass  {name}\n")),
            Err(why) => {
                failed += 1;
                emit(&format!("FAIL  {name}\n"));
                eprintln!("{name}: {why}");
            }
        }
    }
    if failed == 0 {
        0
    } else {
        EXIT_FAILURE
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_report("classify", a),
        Command::Unfold(a) => cmd_report("unfold", a),
        Command::Portrait(a) => cmd_portrait(a),
        Command::Verify(a) => Ok(cmd_verify(a)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
