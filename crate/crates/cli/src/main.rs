use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perigid_core::document::{InputDocument, Parsed, RationalValue};
use perigid_core::framework::DEFAULT_TRIALS;
use perigid_core::*;
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Rigidity analysis of periodic frameworks on a fixed lattice.
#[derive(Parser)]
#[command(name = "perigid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input document (JSON).
    file: PathBuf,
    /// Random frameworks per rank evaluation.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON file holding a d x k lattice matrix; overrides the document's.
    #[arg(long)]
    lattice_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generic periodic rigidity.
    Rigid(Common),
    /// Vertex-redundant rigidity.
    Vrr(Common),
    /// Global rigidity decision.
    Global(Common),
    /// Body-bar frameworks.
    Bodybar {
        #[command(subcommand)]
        action: BodyBar,
    },
    /// Straight-line motion between two equivalent placements `placement` and `q`.
    Flexpath {
        #[command(flatten)]
        common: Common,
        /// Sample count for the trajectory CSV.
        #[arg(long, default_value_t = 11)]
        samples: usize,
        /// Covering window radius for the trajectory CSV.
        #[arg(long, default_value_t = 0)]
        window: u32,
        /// Write the sampled trajectory here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a finite window of the covering graph.
    Covering {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        window: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum BodyBar {
    /// Global rigidity of a generic body-bar realisation.
    Global(Common),
    /// Count-matroid rigidity test.
    Counts {
        file: PathBuf,
        /// Refuse graphs with more bars than this.
        #[arg(long, default_value_t = body_bar::DEFAULT_EDGE_CAP)]
        edge_cap: usize,
    },
    /// Emit the expanded bar-joint gain graph as an input document.
    Build {
        file: PathBuf,
        #[arg(long)]
        lattice_file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

type Outcome<T> = std::result::Result<T, InputError>;

/// Failures caused by the input; these exit with status 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn load(file: &Path, lattice_file: Option<&Path>) -> Outcome<Parsed> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut parsed = parse_document(&text)?;
    if let Some(path) = lattice_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let rows: Vec<Vec<RationalValue>> =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let rows: Vec<Point> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        parsed.lattice = Some(Lattice::from_matrix_rows(parsed.d, parsed.k, &rows)?);
    }
    Ok(parsed)
}

fn settings(p: &Parsed, c: &Common) -> Settings {
    Settings::new(p.d, p.k)
        .with_lattice(p.lattice.clone())
        .with_trials(c.trials)
        .with_seed(c.seed)
}

fn json<T: Serialize>(value: &T) -> Outcome<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

#[derive(Serialize)]
struct FlexReport {
    equivalent: bool,
    congruent: bool,
    #[serde(flatten)]
    certificate: PathCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    trajectory: Option<String>,
}

/// Runs the analysis and returns what goes to stdout. Nothing is printed
/// until the whole analysis has succeeded.
fn run(cli: Cli) -> Outcome<String> {
    match cli.command {
        Command::Rigid(c) => {
            let p = load(&c.file, c.lattice_file.as_deref())?;
            json(&is_rigid(&p.graph, &settings(&p, &c))?)
        }
        Command::Vrr(c) => {
            let p = load(&c.file, c.lattice_file.as_deref())?;
            json(&is_vertex_redundantly_rigid(&p.graph, &settings(&p, &c))?)
        }
        Command::Global(c) => {
            let p = load(&c.file, c.lattice_file.as_deref())?;
            json(&decide_global_rigidity(&p.graph, &settings(&p, &c))?)
        }
        Command::Bodybar { action } => match action {
            BodyBar::Global(c) => {
                let p = load(&c.file, c.lattice_file.as_deref())?;
                json(&decide_body_bar_global(&p.graph, &settings(&p, &c))?)
            }
            BodyBar::Counts { file, edge_cap } => {
                let p = load(&file, None)?;
                json(&body_bar::count_rank_capped(&p.graph, p.d, p.k, edge_cap)?)
            }
            BodyBar::Build { file, lattice_file } => {
                let p = load(&file, lattice_file.as_deref())?;
                let built = build_body_bar_gain_graph(&p.graph, p.d)?;
                Ok(InputDocument::from_graph(&built.graph, p.d, p.lattice.as_ref()).to_json())
            }
        },
        Command::Flexpath {
            common,
            samples,
            window,
            out,
        } => {
            let p = load(&common.file, common.lattice_file.as_deref())?;
            let placement = p.placement.as_ref().ok_or_else(|| anyhow!("document has no `placement`"))?;
            let q = p.q.as_ref().ok_or_else(|| anyhow!("document has no `q`"))?;
            let lattice = match &p.lattice {
                Some(l) => l.clone(),
                None => Lattice::standard(p.d, p.k)?,
            };
            let f = Framework::new(p.graph.clone(), lattice, placement)?;
            let path = build_flex_path(&f, q)?;
            let certificate = verify_path(&path, &f, q)?;
            let trajectory = sample_path(&path, samples, window)?;
            let report = FlexReport {
                equivalent: are_equivalent(&f, q)?,
                congruent: are_congruent(&f, q)?,
                certificate,
                trajectory: out.as_ref().map(|o| o.display().to_string()),
            };
            let text = json(&report)?;
            if let Some(out) = out {
                let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
                trajectory.write_csv(file).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(text)
        }
        Command::Covering { file, window, format } => {
            let p = load(&file, None)?;
            let w = p.graph.covering_window(window);
            Ok(match format {
                Format::Dot => w.to_dot(),
                Format::Json => w.to_json(),
            })
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("PERIGID_THREADS") {
        let n: usize = v.parse().with_context(|| format!("PERIGID_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("perigid: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", text.trim_end()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(InputError(e)) => {
            eprintln!("perigid: {e:#}");
            ExitCode::from(2)
        }
    }
}
