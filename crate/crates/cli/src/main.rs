mod bench;
mod io;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use packsc::cluster::{decide, ClusterQuery, Mode};
use packsc::fixtures::{lawnmower, spiral, walk};
use packsc::freespace::{build_diagram, FreeSpaceConfig};
use packsc::geom::packedness_lower_bound;
use packsc::reachability::extract_boundary_critical_points;
use packsc::Trajectory;

use report::{Answer, RunReport};

/// Approximate subtrajectory clustering on c-packed trajectories.
#[derive(Parser)]
#[command(name = "packsc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a cluster query; prints YES (exit 0) or NO (exit 1).
    Decide(DecideArgs),
    /// Smallest distance with a YES answer, by bisection.
    Bisect(BisectArgs),
    /// Render the simplified free space diagram of two curves as SVG.
    Freespace(FreespaceArgs),
    /// Write a test curve as CSV.
    Gen(GenArgs),
    /// Print a lower-bound estimate of the packedness of a curve.
    Packedness(PackednessArgs),
    /// Time each phase of `decide` on growing fixtures; CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vertex,
    Arbitrary,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Vertex => Mode::Vertex,
            ModeArg::Arbitrary => Mode::Arbitrary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Spiral,
    Lawnmower,
    Walk,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    l: f64,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Write the witness ranges as JSON.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Write the full run report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Sample count for the packedness estimate in the report; 0 skips it.
    #[arg(long, default_value_t = 8)]
    packedness_samples: usize,
}

#[derive(Args)]
struct BisectArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    l: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Lower end of the search; defaults to a tiny fraction of the upper end.
    #[arg(long)]
    lo: Option<f64>,
    /// Upper end; defaults to the bounding-box diagonal.
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long, default_value_t = 30)]
    iters: usize,
}

#[derive(Args)]
struct FreespaceArgs {
    #[arg(long)]
    p: PathBuf,
    #[arg(long)]
    q: PathBuf,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    svg: PathBuf,
}

#[derive(Args)]
struct FixtureArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Spiral: arc length between vertices.
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    /// Lawnmower: row length.
    #[arg(long, default_value_t = 16.0)]
    width: f64,
    /// Lawnmower: distance between rows.
    #[arg(long, default_value_t = 2.0)]
    gap: f64,
}

impl FixtureArgs {
    fn build(&self, n: usize) -> Result<Trajectory> {
        Ok(match self.kind {
            Kind::Spiral => spiral(n, self.spacing, self.seed)?,
            Kind::Lawnmower => lawnmower(n, self.width, self.gap, self.seed)?,
            Kind::Walk => walk(n, self.seed)?,
        })
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    fixture: FixtureArgs,
    #[arg(long)]
    n: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PackednessArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 16)]
    samples: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    fixture: FixtureArgs,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    l: f64,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    reps: usize,
}

fn write_json<T: serde::Serialize>(path: &PathBuf, v: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    std::fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
}

fn cmd_decide(a: &DecideArgs) -> Result<Answer> {
    let q = ClusterQuery::new(a.m, a.l, a.d, a.eps, a.mode.into())?;
    let t = io::read_csv(&a.input)?;
    let dec = decide(&t, &q)?;
    let answer = if dec.answer { Answer::Yes } else { Answer::No };
    if dec.perturbed {
        eprintln!("note: degenerate input, reference length perturbed to {}", dec.l_used);
    }
    if let Some(p) = &a.witness {
        write_json(p, &dec.witness)?;
    }
    if let Some(p) = &a.report {
        let c = (a.packedness_samples > 0).then(|| packedness_lower_bound(&t, a.packedness_samples)).transpose()?;
        write_json(p, &RunReport::new(q, t.len(), t.total_length(), &dec, c))?;
    }
    println!("{}", answer.as_str());
    Ok(answer)
}

fn cmd_bisect(a: &BisectArgs) -> Result<Answer> {
    let t = io::read_csv(&a.input)?;
    let hi = match a.hi {
        Some(h) => h,
        None => {
            let v = t.vertices();
            let (mut lo, mut hi) = (v[0], v[0]);
            for p in v {
                lo = packsc::Point::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = packsc::Point::new(hi.x.max(p.x), hi.y.max(p.y));
            }
            lo.dist(hi).max(1e-9)
        }
    };
    let mut q = ClusterQuery::new(a.m, a.l, hi, a.eps, a.mode.into())?;
    let lo = a.lo.unwrap_or(hi * 1e-9);
    if !(lo > 0.0 && lo < hi) {
        bail!("need 0 < lo < hi, got lo {lo}, hi {hi}");
    }
    if !decide(&t, &q)?.answer {
        println!("NO");
        return Ok(Answer::No);
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..a.iters {
        q.d = 0.5 * (lo + hi);
        if decide(&t, &q)?.answer {
            hi = q.d;
        } else {
            lo = q.d;
        }
    }
    println!("{hi}");
    Ok(Answer::Yes)
}

fn cmd_freespace(a: &FreespaceArgs) -> Result<()> {
    let cfg = FreeSpaceConfig::new(a.d, a.eps)?;
    let p = io::read_csv(&a.p)?;
    let q = io::read_csv(&a.q)?;
    let fsd = build_diagram(&p, &q, cfg)?;
    let text = svg::render(&fsd, &extract_boundary_critical_points(&fsd));
    io::write_text(Some(&a.svg), &text)
}

fn run(cli: Cli) -> Result<Answer> {
    match cli.cmd {
        Cmd::Decide(a) => return cmd_decide(&a),
        Cmd::Bisect(a) => return cmd_bisect(&a),
        Cmd::Freespace(a) => cmd_freespace(&a)?,
        Cmd::Gen(a) => io::write_text(a.out.as_deref(), &io::format_csv(&a.fixture.build(a.n)?))?,
        Cmd::Packedness(a) => println!("{}", packedness_lower_bound(&io::read_csv(&a.input)?, a.samples)?),
        Cmd::Bench(a) => {
            let q = ClusterQuery::new(a.m, a.l, a.d, a.eps, a.mode.into())?;
            println!("{}", bench::HEADER);
            for &n in &a.sizes {
                println!("{}", bench::row(&a.fixture.build(n)?, &q, a.reps)?);
            }
        }
    }
    Ok(Answer::Yes)
}

fn main() -> ExitCode {
    // clap reports usage errors itself, with exit code 2
    let cli = Cli::parse();
    match run(cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
