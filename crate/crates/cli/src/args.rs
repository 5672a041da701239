use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "oxtoby-lab", version, about = "Toeplitz and generalized Oxtoby subshift workbench")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Spec file (.json or .toml).
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    #[arg(long)]
    pub level: usize,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Write the resulting spec here (TOML when the name ends in .toml) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a spec and report its tower.
    Validate(SpecArg),
    /// Render a window of a level word.
    Show {
        #[command(flatten)]
        at: LevelArgs,
        /// Half-open window `[lo, hi)`; one period from 0 when omitted.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        range: Option<Vec<i64>>,
    },
    /// Per-residue blank certificate of a level word.
    SkeletonCert(LevelArgs),
    /// Decide the generalized Oxtoby condition on the schedule.
    CheckOxtoby(SpecArg),
    /// Decide whether `[start, start + p_t)` is a piece.
    Pieces {
        #[command(flatten)]
        at: LevelArgs,
        #[arg(long, allow_negative_numbers = true)]
        start: i64,
    },
    /// Offsets whose aligned intervals are all pieces.
    Offsets(LevelArgs),
    /// The parts of a level, or only those starting a filled block.
    Parts {
        #[command(flatten)]
        at: LevelArgs,
        #[arg(long)]
        star: bool,
    },
    /// Parts recentered on filled blocks longer than `p_{t-1}`.
    Chi(LevelArgs),
    /// Check the gap dichotomy at a level.
    GapCheck {
        #[command(flatten)]
        at: LevelArgs,
        #[arg(long)]
        c: usize,
    },
    /// Apply a residue-wise alphabet permutation.
    Relabel {
        #[command(flatten)]
        at: LevelArgs,
        /// JSON object residue -> {symbol: image}, inline or `@file`.
        #[arg(long)]
        rho: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Shift every level word: the result reads `x(i + by)`.
    Shift {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_negative_numbers = true)]
        by: i64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Search for conjugacy evidence between two specs.
    Conjugacy {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 1)]
        tmin: usize,
        /// Last level searched; the horizon when omitted.
        #[arg(long)]
        tmax: Option<usize>,
    },
    /// Decide the shift-pair relation at one level.
    Ft {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        level: usize,
    },
    /// Frequencies and distances to a measure.
    #[command(subcommand)]
    Measures(MeasureCommand),
    /// Build the classic Oxtoby schedule from ratios and level symbols.
    BuildOxtoby {
        /// Comma-separated ratios p_t / p_{t-1}.
        #[arg(long, value_delimiter = ',', required = true)]
        ratios: Vec<usize>,
        /// Comma-separated symbol per level.
        #[arg(long, value_delimiter = ',', required = true)]
        symbols: Vec<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build the Downarowicz schedule from b-words or from a forbidden-word language.
    BuildDownarowicz {
        /// Comma-separated binary words b_1, b_2, ...
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["forbidden", "levels"])]
        words: Option<Vec<String>>,
        /// Comma-separated forbidden words; empty for the full shift.
        #[arg(long, value_delimiter = ',')]
        forbidden: Option<Vec<String>>,
        #[arg(long)]
        levels: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Words b_1..b_T scheduled from a forbidden-word language.
    LanguageWords {
        #[arg(long, value_delimiter = ',')]
        forbidden: Vec<String>,
        #[arg(long)]
        levels: usize,
    },
}

#[derive(Debug, Args)]
pub struct MeasureSource {
    /// Cyclic word whose factor frequencies define the measure.
    #[arg(long, conflicts_with = "measure_spec")]
    pub measure_word: Option<String>,
    /// Spec whose level word (read cyclically, blanks skipped) defines the measure.
    #[arg(long, requires = "measure_level")]
    pub measure_spec: Option<PathBuf>,
    #[arg(long)]
    pub measure_level: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    /// Frequency of `word` in `base`, optionally restricted to starts `m ≡ j (mod k)`.
    Freq {
        #[arg(long)]
        base: String,
        #[arg(long)]
        word: String,
        #[arg(long, requires = "j")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        j: Option<usize>,
        /// Comma-separated alphabet tokens.
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        alphabet: Vec<String>,
    },
    /// Truncated distance between a base word and a measure.
    DStar {
        #[arg(long)]
        base: String,
        #[command(flatten)]
        measure: MeasureSource,
        #[arg(long)]
        len: usize,
    },
    /// Truncated congruence-weighted distance.
    DDoubleStar {
        #[arg(long)]
        base: String,
        #[command(flatten)]
        measure: MeasureSource,
        #[arg(long)]
        len: usize,
        /// `unit`, `geometric:K`, or `k=c,...` with rational weights.
        #[arg(long, default_value = "geometric:5")]
        weights: String,
    },
    /// Density of a symbol among the defined cells of each level word.
    Profile {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        symbol: String,
        /// Comma-separated levels; all levels when omitted.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
    },
}
