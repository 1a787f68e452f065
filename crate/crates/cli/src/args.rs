use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "oddcut",
    version,
    about = "Enumerate, count, construct, sample and certify odd cutsets in Z^d"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Count cache (CSV).
    #[arg(
        long,
        global = true,
        env = "ODDCUT_CACHE",
        default_value = "oddcut-cache.csv"
    )]
    pub cache: PathBuf,
    /// Allow searches beyond the desk-scale envelope.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count regular odd cutsets with n boundary edges (cached).
    Count(CountArgs),
    /// Stream the enumerated cutsets as JSON lines.
    Enumerate(EnumerateArgs),
    /// Run a property suite over every enumerated cutset.
    Verify(VerifyArgs),
    /// Build cutsets: slab families and peak operations.
    Construct(ConstructArgs),
    /// Run the approximation pipeline and check its outputs.
    Approximate(ApproximateArgs),
    /// Report the asymptotic bracket, growth estimate and supermultiplicativity checks.
    Bounds(BoundsArgs),
    /// Draw cutsets exactly (small n) or by Markov chain.
    Sample(SampleArgs),
    /// Render 2D sets from a JSON-lines file as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// S contains the origin.
    Contains,
    /// dist(0, S) <= r.
    Within,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Connectivity radius of the cutset condition.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Contains)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Recompute a cached count and require agreement.
    #[arg(long)]
    pub rederive: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Write the stream here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every suite below.
    Lemmas,
    /// Boundary identities, cutset predicates, symmetry and search invariants.
    Structure,
    /// Approximations, D-map, reconstruction, cover sums and separators.
    Pipeline,
    /// Slab families and peak operations.
    Constructions,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Lemmas)]
    pub suite: Suite,
    #[arg(long)]
    pub d: usize,
    /// Largest boundary size checked; every multiple of 2d from 2d(2d-1) up is used.
    #[arg(long)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// The slab family built on [0,m)^{d-1} × {0}.
    Slab {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Write every member as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse to materialize families larger than this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
    /// Add a peak to a regular odd cutset.
    Peak {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Recentre a peaked set and add r diagonal and s straight bumps.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Glue the reflected, recentred `--with` set above the peak of `--in`.
    Merge {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with")]
        other: PathBuf,
    },
    /// Map a pair of cutsets to one with |∂| = n + m + k.
    Compose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with")]
        other: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Args)]
pub struct ApproximateArgs {
    #[arg(long)]
    pub d: usize,
    /// Boundary size of the enumerated family; ignored with --in.
    #[arg(long, required_unless_present = "input")]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: u32,
    /// Approximate the single set in this file instead of a family.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Dump every intermediate set as JSON lines.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = oddcut_core::approxbuild::DEFAULT_SEPARATOR_CONSTANT)]
    pub c_sep: f64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: usize,
    /// start:stop:step, inclusive.
    #[arg(long, value_parser = parse_grid)]
    pub n_grid: Grid,
    /// Constant of the upper bound.
    #[arg(long = "C", default_value_t = 1.0)]
    pub c_upper: f64,
    /// Check OCC(n+m+k) against OCC(n)·OCC(m); repeatable.
    #[arg(long, value_parser = parse_triple)]
    pub supermult: Vec<(usize, usize, usize)>,
    /// Also write the bracket as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl Grid {
    pub fn values(&self) -> impl Iterator<Item = usize> {
        (self.start..=self.stop).step_by(self.step)
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err("expected start:stop:step".into());
    };
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x}: {e}"));
    let g = Grid {
        start: num(a)?,
        stop: num(b)?,
        step: num(c)?,
    };
    if g.step == 0 || g.start > g.stop {
        return Err("need step > 0 and start <= stop".into());
    }
    Ok(g)
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x}: {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [n, m, k] => Ok((*n, *m, *k)),
        _ => Err("expected n,m,k".into()),
    }
}

/// Accepts plain integers and float notation such as 1e6.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if f < 0.0 || f.fract() != 0.0 || f > u64::MAX as f64 {
        return Err(format!("not a non-negative integer: {s}"));
    }
    Ok(f as u64)
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("method").required(true).args(["exact", "mcmc"])))]
pub struct SampleArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Required: all randomness comes from this seed.
    #[arg(long)]
    pub seed: u64,
    /// Uniform draws from the enumerated family.
    #[arg(long)]
    pub exact: bool,
    /// Metropolis chain on even cores.
    #[arg(long)]
    pub mcmc: bool,
    /// Number of draws.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Chain steps (after tuning); with one draw, the chain runs this long and
    /// returns the next state at n.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    pub steps: u64,
    /// Fixed fugacity; tuned when absent.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    #[arg(long, value_parser = parse_count, default_value = "200")]
    pub thin: u64,
    #[arg(long)]
    pub max_boundary: Option<usize>,
    /// Write the samples as JSON lines here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Render the first sample (d = 2).
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Chain diagnostics CSV.
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// JSON-lines file of sets.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}
