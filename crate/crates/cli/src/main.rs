use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc as Shared;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infgon::arcs::{crosses, is_admissible, Arc, ArcError, Context};
use infgon::diagram::{ArcDiagram, DiagramError};
use infgon::mutation::{enumerate_mutations, mutate, p_sequence, MutationError, MutationOption};
use infgon::polygon::{count_angulations, enumerate_angulations, PolygonAngulation, PolygonError};
use infgon::presets::{t_ell_diagram, try_canonical_fountain, try_zigzag, PresetError};
use infgon::quiver::{ext_profile, hom_dim, QuiverObject};
use serde::Serialize;

mod render;

#[derive(Parser)]
#[command(name = "infgon", version, about = "Arc model of the d-cluster category of type A-infinity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Whether (T,U) is d-admissible.
    #[command(allow_negative_numbers = true)]
    Admissible {
        #[arg(long)]
        d: i64,
        t: i64,
        u: i64,
    },
    /// Whether the arcs (R,S) and (T,U) cross.
    #[command(allow_negative_numbers = true)]
    Cross { r: i64, s: i64, t: i64, u: i64 },
    /// dim Hom(x, y).
    Hom(PairArgs),
    /// Degrees l in 1..=d with Hom(x, Σ^l y) ≠ 0.
    Ext(PairArgs),
    /// Print a named diagram as JSON.
    Preset {
        #[arg(value_enum)]
        kind: PresetKind,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 0)]
        ell: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        anchor: i64,
    },
    /// Validate a diagram; exit 0 iff weakly cluster tilting on the window.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Replacement options for an arc.
    Mutations {
        file: PathBuf,
        #[arg(long, value_parser = parse_arc, allow_hyphen_values = true)]
        arc: Arc,
    },
    /// Replace an arc by one of its options.
    Mutate {
        file: PathBuf,
        #[arg(long, value_parser = parse_arc, allow_hyphen_values = true)]
        arc: Arc,
        #[arg(long = "with", value_parser = parse_arc, allow_hyphen_values = true)]
        with: Arc,
    },
    /// The p-sequence from a vertex.
    Psequence {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 64)]
        max_steps: i64,
    },
    /// Angulations of a finite polygon.
    Polygon {
        #[command(subcommand)]
        command: PolygonCommand,
    },
    /// Draw the arcs over a window as SVG.
    Render {
        file: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 960)]
        width: u32,
        #[arg(long, default_value_t = 480)]
        height: u32,
    },
    /// Run the session service over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    d: i64,
    #[arg(long, value_parser = parse_arc, allow_hyphen_values = true)]
    x: Arc,
    #[arg(long, value_parser = parse_arc, allow_hyphen_values = true)]
    y: Arc,
}

#[derive(Args)]
struct WindowArgs {
    /// LO HI; defaults to the diagram's minimum window padded by 2(d+1).
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum PolygonCommand {
    /// Every (d+2)-angulation of the n-gon, as JSON.
    Enumerate {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: i64,
    },
    /// Number of (d+2)-angulations of the n-gon.
    Count {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: i64,
    },
    /// The d+1 choices for a diagonal, including itself.
    Mutate {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        n: i64,
        #[arg(long = "diagonal", value_parser = parse_arc)]
        diagonals: Vec<Arc>,
        #[arg(long, value_parser = parse_arc)]
        arc: Arc,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetKind {
    Fountain,
    Zigzag,
    #[value(name = "theoremB", alias = "theorem-b")]
    TEll,
}

fn parse_arc(s: &str) -> Result<Arc, String> {
    s.parse::<Arc>().map_err(|e| e.to_string())
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn bad_input(message: impl ToString) -> Self {
        Failure { exit: 3, code: "bad_input", message: message.to_string() }
    }

    fn invalid_diagram(message: impl ToString) -> Self {
        Failure { exit: 2, code: "invalid_diagram", message: message.to_string() }
    }
}

impl From<ArcError> for Failure {
    fn from(e: ArcError) -> Self {
        Failure::bad_input(e)
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::WindowTooSmall { .. } => Failure { exit: 4, code: "window_too_small", message: e.to_string() },
            DiagramError::EmptyWindow { .. }
            | DiagramError::WindowOutOfRange { .. }
            | DiagramError::NotPresent(_) | DiagramError::AlreadyPresent(_) => {
                Failure::bad_input(e)
            }
            _ => Failure::invalid_diagram(e),
        }
    }
}

impl From<MutationError> for Failure {
    fn from(e: MutationError) -> Self {
        match e {
            MutationError::Diagram(d) => d.into(),
            MutationError::NotVerified { .. } => Failure::invalid_diagram(e),
            _ => Failure::bad_input(e),
        }
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        Failure::bad_input(e)
    }
}

impl From<PresetError> for Failure {
    fn from(e: PresetError) -> Self {
        Failure::bad_input(e)
    }
}

/// What a successful command prints, and its exit status.
struct Output {
    text: String,
    exit: u8,
}

impl Output {
    fn line(text: impl ToString) -> Self {
        Output { text: text.to_string(), exit: 0 }
    }

    fn json<T: Serialize>(value: &T) -> Self {
        Output::line(serde_json::to_string(value).expect("serializable output"))
    }
}

fn context(d: i64) -> Result<Context, Failure> {
    Ok(Context::new(d)?)
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::bad_input)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))
    }
}

fn load_diagram(path: &PathBuf) -> Result<ArcDiagram, Failure> {
    Ok(ArcDiagram::from_json(&read_input(path)?)?)
}

fn window_of(diagram: &ArcDiagram, args: &WindowArgs) -> (i64, i64) {
    match args.window.as_deref() {
        Some([lo, hi]) => (*lo, *hi),
        _ => {
            let (lo, hi) = diagram.min_window();
            let pad = 2 * (diagram.d() + 1);
            (lo - pad, hi + pad)
        }
    }
}

fn objects(args: &PairArgs) -> Result<(Context, QuiverObject, QuiverObject), Failure> {
    let ctx = context(args.d)?;
    Ok((ctx, QuiverObject::new(ctx, args.x)?, QuiverObject::new(ctx, args.y)?))
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Admissible { d, t, u } => {
            let ctx = context(d)?;
            Ok(Output::line(Arc::new(t, u).map(|a| is_admissible(ctx, a)).unwrap_or(false)))
        }
        Command::Cross { r, s, t, u } => Ok(Output::line(crosses(Arc::new(r, s)?, Arc::new(t, u)?))),
        Command::Hom(args) => {
            let (ctx, x, y) = objects(&args)?;
            Ok(Output::line(hom_dim(ctx, x, y)))
        }
        Command::Ext(args) => {
            let (ctx, x, y) = objects(&args)?;
            Ok(Output::json(&ext_profile(ctx, x, y)))
        }
        Command::Preset { kind, d, ell, anchor } => {
            let diagram = match kind {
                PresetKind::Fountain => try_canonical_fountain(d, anchor)?,
                PresetKind::Zigzag => try_zigzag(d)?,
                PresetKind::TEll => t_ell_diagram(d, ell)?,
            };
            Ok(Output::line(diagram.to_json()))
        }
        Command::Validate { file, window } => {
            let diagram = load_diagram(&file)?;
            let (lo, hi) = window_of(&diagram, &window);
            let report = diagram.validate(lo, hi)?;
            let exit = if report.weakly_cluster_tilting { 0 } else { 2 };
            Ok(Output { exit, ..Output::json(&report) })
        }
        Command::Mutations { file, arc } => {
            let diagram = load_diagram(&file)?;
            Ok(Output::json(&enumerate_mutations(&diagram, arc)?))
        }
        Command::Mutate { file, arc, with } => {
            let diagram = load_diagram(&file)?;
            let next = mutate(&diagram, MutationOption { removed: arc, added: with })?;
            Ok(Output::line(next.to_json()))
        }
        Command::Psequence { file, from, max_steps } => {
            let diagram = load_diagram(&file)?;
            Ok(Output::json(&p_sequence(&diagram, from, max_steps)?))
        }
        Command::Polygon { command } => match command {
            PolygonCommand::Enumerate { d, n } => Ok(Output::json(&enumerate_angulations(d, n)?)),
            PolygonCommand::Count { d, n } => Ok(Output::line(count_angulations(d, n)?)),
            PolygonCommand::Mutate { d, n, diagonals, arc } => {
                let polygon = PolygonAngulation::new(d, n, diagonals)?;
                Ok(Output::json(&polygon.polygon_mutations(arc)?))
            }
        },
        Command::Render { file, window, out, width, height } => {
            let diagram = load_diagram(&file)?;
            let (lo, hi) = window_of(&diagram, &window);
            if lo >= hi {
                return Err(Failure::bad_input(format!("empty window [{lo},{hi}]")));
            }
            let svg = render::svg(&diagram, lo, hi, width, height);
            match out {
                Some(path) => {
                    fs::write(&path, svg).map_err(|e| Failure::bad_input(format!("{}: {e}", path.display())))?;
                    Ok(Output::line(path.display()))
                }
                None => Ok(Output::line(svg)),
            }
        }
        Command::Serve { port, host } => serve(&host, port).map(|()| Output::line("")),
    }
}

fn serve(host: &str, port: u16) -> Result<(), Failure> {
    let runtime = tokio::runtime::Runtime::new().map_err(Failure::bad_input)?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Failure::bad_input(format!("bind {host}:{port}: {e}")))?;
        eprintln!("listening on {}", listener.local_addr().map_err(Failure::bad_input)?);
        let app = infgon_service::router(Shared::new(infgon_service::SessionStore::new()));
        axum::serve(listener, app).await.map_err(Failure::bad_input)
    })
}

fn report_failure(f: &Failure) -> ExitCode {
    let line = serde_json::json!({ "error": { "code": f.code, "message": f.message } });
    eprintln!("{line}");
    ExitCode::from(f.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return report_failure(&Failure::bad_input(first));
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.text);
            ExitCode::from(out.exit)
        }
        Err(f) => report_failure(&f),
    }
}
