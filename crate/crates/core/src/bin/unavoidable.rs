use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use unavoidable::certificates::{falsify, load_certificate_file, verify_file, Color, Grid};
use unavoidable::lemmas::fcurve::eval_f;
use unavoidable::numerics::expr::{exact_constant, make_constant};
use unavoidable::numerics::{Exact, Interval, Verdict};
use unavoidable::packing::{load_packing, trivial_packing, validate_packing};
use unavoidable::proofs::{bounds_table, load_script, run_proof, Mutation};
use unavoidable::render::{certificate_svg, regions_svg};
use unavoidable::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Parser)]
#[command(name = "unavoidable", version, about = "Checks unavoidable-set certificates and square-packing lower-bound proofs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every certificate in a certificate file.
    Verify {
        path: PathBuf,
        #[arg(long, value_parser = parse_color)]
        color: Option<Color>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Replay a proof script.
    Prove {
        path: PathBuf,
        /// `name=value`, `step.row<k>.y=value` or `step.point.<id>.<x|y>=value`.
        #[arg(long = "mutate", value_name = "K=V")]
        mutate: Vec<String>,
        /// Draw the midpoint regions of the replay.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Grid search for a box avoiding one colour of a certificate file.
    Falsify {
        path: PathBuf,
        #[arg(long, value_parser = parse_color)]
        color: Option<Color>,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        /// Degrees.
        #[arg(long = "angle-step", default_value_t = 1.0)]
        angle_step: f64,
        #[arg(long, default_value_t = 1.001)]
        side: f64,
    },
    /// Validate a packing file.
    CheckPacking { path: PathBuf },
    /// Certified values of the f-curve.
    Fcurve {
        /// Constant expressions in (2 sqrt(2) - 2, 1).
        #[arg(long = "a", value_name = "A")]
        a: Vec<String>,
    },
    /// Draw a certificate file or the regions of a proof script as SVG.
    Render {
        path: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_parser = parse_color)]
        color: Option<Color>,
    },
}

fn parse_color(s: &str) -> std::result::Result<Color, String> {
    match s {
        "red" => Ok(Color::Red),
        "blue" => Ok(Color::Blue),
        _ => Err(format!("expected red or blue, got {s:?}")),
    }
}

fn exit(v: Verdict) -> ExitCode {
    ExitCode::from(v.exit_code() as u8)
}

fn emit(format: Format, text: String, structured: serde_json::Value) {
    let out = match format {
        Format::Text => text,
        Format::Structured => serde_json::to_string_pretty(&structured).expect("serialisable") + "\n",
    };
    // A closed pipe (`| head`) is not an error of the check.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn cmd_verify(format: Format, path: PathBuf, color: Option<Color>, svg: Option<PathBuf>) -> Result<ExitCode> {
    let mut file = load_certificate_file(&path)?;
    if let Some(c) = color {
        file.certificates.retain(|x| x.color == c);
        if file.certificates.is_empty() {
            return Err(Error::Parse(format!("{} has no {c} certificate", path.display())));
        }
    }
    let (verdict, reports) = verify_file(&file)?;
    let mut text = String::new();
    for r in &reports {
        let failing = r.regions.iter().flat_map(|g| g.checks.iter()).filter(|c| !c.verdict.is_true()).count();
        text += &format!(
            "{} certificate: {} points, {} regions, coverage {} -> {}\n",
            r.color,
            r.points,
            r.regions.len(),
            r.coverage.verdict,
            r.verdict
        );
        if let Some(f) = &r.failure {
            text += &format!("  first failure: {f} ({failing} failing region checks)\n");
        }
        if let Some(c) = &r.conclusion {
            text += &format!("  {c}\n");
        }
    }
    text += &format!("verdict: {verdict}\n");
    if let Some(out) = svg {
        std::fs::write(out, certificate_svg(&file, color))?;
    }
    emit(format, text, json!({ "file": file.name, "verdict": verdict, "certificates": reports }));
    Ok(exit(verdict))
}

fn cmd_prove(format: Format, path: PathBuf, mutate: Vec<String>, svg: Option<PathBuf>) -> Result<ExitCode> {
    let mut script = load_script(&path)?;
    let muts = mutate.iter().map(|m| Mutation::parse(m)).collect::<Result<Vec<_>>>()?;
    script.apply_mutations(&muts)?;
    let report = run_proof(&script)?;
    let mut text = report.to_text();
    let mut bounds = None;
    if report.verdict.is_true() {
        let exact = exact_constant(&script.theorem.side)?;
        let n = script.theorem.n;
        text += &format!("s({n}) \u{2265} {}\n", exact.to_expr_string());
        let m = exact.to_f64().round().max(1.0) as usize;
        if Exact::from_int(m as i64) == exact && n <= m * m {
            let packing = validate_packing(&trivial_packing(n, m)?);
            if packing.verdict.is_true() {
                let table = bounds_table(&[(n, exact)]);
                if let Some(e) = table.get(n) {
                    text += &format!("{n} unit squares fit in [0,{m}]^2 (validated chessboard packing): {e}\n");
                    bounds = Some(e.clone());
                }
            }
        }
    }
    if let Some(out) = svg {
        std::fs::write(out, regions_svg(&report)?)?;
    }
    let verdict = report.verdict;
    emit(format, text, json!({ "report": report, "bound": bounds }));
    Ok(exit(verdict))
}

fn cmd_falsify(format: Format, path: PathBuf, color: Option<Color>, grid: Grid) -> Result<ExitCode> {
    if !(grid.step > 0.0 && grid.angle_step > 0.0 && grid.side > 0.0) {
        return Err(Error::Parse("grid steps and box side must be positive".into()));
    }
    let file = load_certificate_file(&path)?;
    let colors: Vec<Color> = match color {
        Some(c) => vec![c],
        None => file.certificates.iter().map(|c| c.color).collect(),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    let mut found = false;
    for c in colors {
        let r = falsify(&file.config, c, grid);
        found |= r.found;
        match &r.witness {
            Some(w) => {
                text += &format!(
                    "{c}: empty box found: centre ({:.4}, {:.4}), angle {:.2} deg, side {}\n",
                    w.center.0, w.center.1, w.angle_degrees, w.side
                )
            }
            None => text += &format!("{c}: no empty box on the grid ({} boxes scanned); {}\n", r.boxes_scanned, r.note),
        }
        results.push(json!({ "color": c, "result": r }));
    }
    emit(format, text, json!({ "file": file.name, "found": found, "results": results }));
    // A certified empty box refutes unavoidability; a clean grid proves nothing.
    Ok(if found { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_check_packing(format: Format, path: PathBuf) -> Result<ExitCode> {
    let p = load_packing(&path)?;
    let r = validate_packing(&p);
    let mut text = format!(
        "{} squares ({:?} regime) in a square of side {}: {} pairs checked\n",
        r.count,
        r.regime,
        p.container.side.to_expr_string(),
        r.pairs_checked
    );
    for i in &r.issues {
        text += &format!("  {} {:?}: {}\n", i.kind, i.indices, i.verdict);
    }
    text += &format!("verdict: {}\n", r.verdict);
    let v = r.verdict;
    emit(format, text, json!(r));
    Ok(exit(v))
}

fn cmd_fcurve(format: Format, a: Vec<String>) -> Result<ExitCode> {
    let args = if a.is_empty() {
        ["0.83", "0.85", "sqrt(3)/2", "0.9", "0.95"].iter().map(|s| s.to_string()).collect()
    } else {
        a
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &args {
        let a = make_constant(s)?;
        let p = eval_f(a)?;
        let above = p.f_value.gt(&Interval::ratio(1, 2));
        text += &format!(
            "a = {s}: f(a) in {} (width {:.1e}), cos(theta*) in {}, cubic residual {}, f(a) > 1/2: {above}\n",
            p.f_value,
            p.f_value.width(),
            p.cos_star,
            p.residual
        );
        rows.push(json!({ "a": s, "point": p, "exceeds_half": above }));
    }
    emit(format, text, json!(rows));
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(path: PathBuf, svg: PathBuf, color: Option<Color>) -> Result<ExitCode> {
    let doc = if path.extension().is_some_and(|e| e == "proof") {
        regions_svg(&run_proof(&load_script(&path)?)?)?
    } else {
        certificate_svg(&load_certificate_file(&path)?, color)
    };
    std::fs::write(&svg, doc)?;
    println!("wrote {}", svg.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(3);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Some(n) = std::env::var("UNAVOIDABLE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let f = cli.format;
    let result = match cli.command {
        Command::Verify { path, color, svg } => cmd_verify(f, path, color, svg),
        Command::Prove { path, mutate, svg } => cmd_prove(f, path, mutate, svg),
        Command::Falsify { path, color, step, angle_step, side } => cmd_falsify(f, path, color, Grid { step, angle_step, side }),
        Command::CheckPacking { path } => cmd_check_packing(f, path),
        Command::Fcurve { a } => cmd_fcurve(f, a),
        Command::Render { path, svg, color } => cmd_render(path, svg, color),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
