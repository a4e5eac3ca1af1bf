use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adjugate_core::detrep::BasisChange;
use adjugate_core::exactalg::{parse_poly, parse_rat, Poly};
use adjugate_core::io::{
    basis_change_from_json, counterexample, ldr_from_json, parse_json, poly_from_json, polycon_from_str, Chart,
    LdrJson, MatrixJson, PolyJson,
};
use adjugate_core::polycon::Polycon;
use adjugate_service::geometry::{scene, svg, LayerKind, RenderSpec, Viewport};
use adjugate_service::report::{self, Report};
use adjugate_service::Store;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "adjugate", version, about = "Exact adjoints, contact curves and determinantal representations of polycons")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Chart for printed forms and points.
    #[arg(long, global = true, default_value = "affine", value_parser = parse_chart)]
    chart: Chart,
    /// Accept non-transverse vertices and non-nodal residual points.
    #[arg(long, global = true)]
    permissive: bool,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the bundled counterexample and certify the sign change of its adjoint.
    VerifyCounterexample {
        /// Another polycon to run the same pipeline on.
        polycon: Option<PathBuf>,
    },
    /// The adjoint curve.
    Adjoint { polycon: PathBuf },
    /// Replace a conic by the line through its two vertices.
    Reduce {
        polycon: PathBuf,
        #[arg(long, value_name = "I")]
        component: usize,
    },
    /// Contact of the adjoint with the adjoint of a reduction.
    Contact {
        polycon: PathBuf,
        #[arg(long, value_name = "I")]
        component: usize,
    },
    /// A symmetric determinantal representation of a cubic from a contact conic.
    Dixon { cubic: PathBuf, conic: PathBuf },
    /// The determinantal representation of the adjoint of a three-conic polycon.
    Ldr { polycon: PathBuf },
    /// Read a polycon off a symmetric determinantal representation.
    PolyconFromLdr { ldr: PathBuf },
    /// Move a polycon in its fiber by a basis change.
    Deform {
        polycon: PathBuf,
        #[arg(long, value_name = "P/Q", conflicts_with = "matrix", required_unless_present = "matrix")]
        gamma: Option<String>,
        #[arg(long, value_name = "T.json")]
        matrix: Option<PathBuf>,
        /// Also check the objects a shear preserves.
        #[arg(long)]
        check_fiber: bool,
    },
    /// Draw the polycon and its adjoint as SVG.
    Render {
        polycon: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// x0,y0,x1,y1 with rational entries.
        #[arg(long)]
        viewport: Option<String>,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Comma-separated layer names.
        #[arg(long)]
        layers: Option<String>,
        /// Component replaced by a line in the reduced layers.
        #[arg(long, default_value_t = 1)]
        reduce: usize,
        #[arg(long, default_value_t = 640)]
        size: usize,
    },
    /// Serve the /v1 scenario endpoints on localhost.
    Serve {
        #[arg(long, default_value_t = 8765)]
        port: u16,
        /// Persist scenarios to this JSON file and restore them on start.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

fn parse_chart(s: &str) -> Result<Chart, String> {
    s.parse().map_err(|e: adjugate_core::Error| e.to_string())
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_polycon(path: &Path) -> Result<Polycon, Failure> {
    polycon_from_str(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// A form given as a JSON term list (two exponents per term for the affine chart, three
/// for the projective one) or as a JSON string such as `"x^2 + y^2 - 1"`.
fn load_form(path: &Path) -> Result<Poly, Failure> {
    let text = read(path)?;
    let loc = path.display().to_string();
    if let Ok(s) = serde_json::from_str::<String>(&text) {
        let p = parse_poly(&s)?;
        return Ok(if p.is_homogeneous() && p.involves(2) { p } else { p.homogenize(p.degree()) });
    }
    let j: PolyJson = parse_json(&text).map_err(|e| Failure(format!("{loc}: {e}")))?;
    let chart = if j.terms.first().is_some_and(|t| t.exponents.len() == 3) { Chart::Projective } else { Chart::Affine };
    Ok(poly_from_json(&j, chart, &loc)?)
}

fn component(i: usize, p: &Polycon) -> Result<usize, Failure> {
    if i == 0 || i > p.n() {
        return Err(Failure(format!("--component must be between 1 and {}", p.n())));
    }
    Ok(i - 1)
}

/// Prints a line; a closed pipe on the reading side is not an error.
fn say(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn emit(report: &Report, g: &Global) -> Result<(), Failure> {
    let text = report.to_pretty();
    match &g.json_out {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            say(&format!("verified: {} (report written to {})", report.verified, path.display()));
        }
        None => say(&text),
    }
    Ok(())
}

fn render(p: &Polycon, out: &Path, viewport: Option<&str>, resolution: usize, layers: Option<&str>, reduce: usize, size: usize) -> Result<(), Failure> {
    let viewport = match viewport {
        Some(v) => Viewport::parse(v)?,
        None => Viewport::around(p),
    };
    let layers = match layers {
        Some(l) => l.split(',').map(|s| LayerKind::parse(s.trim())).collect::<Result<_, _>>()?,
        None => RenderSpec::default_for(p).layers,
    };
    let mut spec = RenderSpec::new(viewport, resolution, layers)?;
    spec.reduce = component(reduce, p)?;
    let s = scene(p, &spec)?;
    std::fs::write(out, svg(&s, size)).map_err(|e| Failure(format!("{}: {e}", out.display())))?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let g = &cli.global;
    let report = match cli.command {
        Command::VerifyCounterexample { polycon } => {
            let p = match polycon {
                Some(path) => load_polycon(&path)?,
                None => counterexample(),
            };
            report::verify_counterexample(&p, g.chart)?
        }
        Command::Adjoint { polycon } => report::adjoint(&load_polycon(&polycon)?, g.chart, g.permissive)?,
        Command::Reduce { polycon, component: i } => {
            let p = load_polycon(&polycon)?;
            report::reduce(&p, component(i, &p)?, g.chart, g.permissive)?
        }
        Command::Contact { polycon, component: i } => {
            let p = load_polycon(&polycon)?;
            report::contact(&p, component(i, &p)?, g.chart, g.permissive)?
        }
        Command::Dixon { cubic, conic } => report::dixon_report(&load_form(&cubic)?, &load_form(&conic)?, g.chart)?,
        Command::Ldr { polycon } => report::ldr(&load_polycon(&polycon)?, g.chart)?,
        Command::PolyconFromLdr { ldr } => {
            let j: LdrJson = parse_json(&read(&ldr)?)?;
            report::polycon_from_ldr_report(&ldr_from_json(&j)?, g.chart)?
        }
        Command::Deform { polycon, gamma, matrix, check_fiber } => {
            let p = load_polycon(&polycon)?;
            let t = match (gamma, matrix) {
                (Some(g), _) => BasisChange::t_gamma(parse_rat(&g).map_err(|e| Failure(format!("--gamma: {e}")))?),
                (None, Some(path)) => {
                    let j: MatrixJson = parse_json(&read(&path)?)?;
                    basis_change_from_json(&j)?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            report::deform(&p, &t, check_fiber, g.chart)?
        }
        Command::Render { polycon, out, viewport, resolution, layers, reduce, size } => {
            let p = load_polycon(&polycon)?;
            render(&p, &out, viewport.as_deref(), resolution, layers.as_deref(), reduce, size)?;
            eprintln!("wrote {}", out.display());
            return Ok(true);
        }
        Command::Serve { port, snapshot } => {
            let store = match snapshot {
                Some(path) => Store::with_snapshot(path)?,
                None => Store::new(),
            };
            adjugate_service::serve(port, store)?;
            return Ok(true);
        }
    };
    emit(&report, g)?;
    Ok(report.verified)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
