use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "mrdft", version, about = "Fast multiresolution DFT")]
pub struct Cli {
    /// Worker threads for frame-parallel stages. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub threads: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a signal file and write every level's spectrum.
    Transform(TransformArgs),
    /// Compare the fast transform with the direct definition on seeded signals.
    Verify(VerifyArgs),
    /// Print the analytic operation counts.
    Count(CountArgs),
    /// Time the fast transform against the reference methods.
    Bench(BenchArgs),
    /// Render one level's magnitudes as a binary PGM image.
    Spectrogram(SpectrogramArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Csv,
    Raw64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LayoutArg {
    Natural,
    Bitrev,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScaleArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CountFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fast,
    Plf,
    Direct,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Fast => "fast",
            Method::Plf => "plf",
            Method::Direct => "direct",
        }
    }
}

#[derive(Debug, Args)]
pub struct SignalInput {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value_t = InputFormat::Csv)]
    pub format: InputFormat,

    /// Zero-pad to the next power of two instead of rejecting the input.
    #[arg(long)]
    pub pad_zeros: bool,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub signal: SignalInput,

    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub out_format: OutputFormat,

    #[arg(long, value_enum, default_value_t = LayoutArg::Natural)]
    pub layout: LayoutArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub m: usize,

    #[arg(long, default_value_t = 100)]
    pub trials: u64,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Negate one twiddle of the top level before running.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("size").required(true).args(["m", "max_m"])))]
pub struct CountArgs {
    /// One report with a row per iteration.
    #[arg(long)]
    pub m: Option<usize>,

    /// One totals row for every m up to this value.
    #[arg(long)]
    pub max_m: Option<usize>,

    #[arg(long, value_enum, default_value_t = CountFormat::Table)]
    pub format: CountFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub m: usize,

    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub reps: u32,

    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "fast,plf,direct"
    )]
    pub methods: Vec<Method>,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SpectrogramArgs {
    #[command(flatten)]
    pub signal: SignalInput,

    #[arg(long)]
    pub level: usize,

    #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
    pub scale: ScaleArg,

    #[arg(long)]
    pub output: PathBuf,
}
