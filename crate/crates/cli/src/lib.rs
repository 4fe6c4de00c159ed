//! The `wvg` command line. [`run`] does all the work and returns the exit
//! code with the text for stdout and stderr, so tests can drive it without a
//! subprocess.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use wvg_core::format::{
    parse_game, render_game, render_indices, render_rational, render_report, ExactRational,
    IndexSummary, OutputFormat, DEFAULT_DIGITS,
};
use wvg_core::indices::DEFAULT_ENUMERATION_LIMIT;
use wvg_core::instances::{
    dictator_family, partition_reduction, random_game, tight_split_family, unanimity_game,
    PartitionInstance, ReductionVariant,
};
use wvg_core::manipulation::{
    annexation_advisor, annexation_payoffs, best_split, evaluate_annexation, evaluate_merge,
    evaluate_split, scan_annexation_nonmonotonicity, SplitAction,
};
use wvg_core::{
    compute_banzhaf, compute_shapley, Coalition, Error, IndexKind, Method, PlayerId,
    WeightedVotingGame,
};

pub const ENUM_LIMIT_VAR: &str = "WVG_ENUM_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "wvg",
    version,
    about = "Exact power indices and false-name manipulation in weighted voting games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Game as `[q; w1, w2, ...]` or JSON; `@path` reads a file.
    #[arg(long, short)]
    game: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Significant digits in decimal approximations.
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
}

#[derive(Args)]
struct IndexChoice {
    #[arg(long = "index", value_enum, default_value_t = Index::Bz)]
    index: Index,
}

#[derive(Subcommand)]
enum Command {
    /// Swing counts and power indices of every player.
    Index {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Evaluate one split (--parts) or search for the best (--max-parts).
    Split {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        index: IndexChoice,
        #[arg(long)]
        player: usize,
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "max_parts",
            required_unless_present = "max_parts"
        )]
        parts: Vec<BigUint>,
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Merge the listed players into one bloc.
    Merge {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        index: IndexChoice,
        #[arg(long, value_delimiter = ',', required = true)]
        members: Vec<usize>,
    },
    /// One player absorbs the listed players.
    Annex {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        index: IndexChoice,
        #[arg(long)]
        player: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
    },
    /// Pairs where annexing a lighter player pays more than a heavier one.
    Paradox {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        index: IndexChoice,
        #[arg(long)]
        player: usize,
    },
    /// Suggest players to annex within a weight budget.
    Advise {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        index: IndexChoice,
        #[arg(long)]
        player: usize,
        #[arg(long)]
        budget: BigUint,
    },
    /// Generate games.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
        format: Format,
    },
    /// Time enumeration against DP on seeded random games.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 12, 16, 20])]
        players: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        max_weight: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Family {
    /// `[n; 2, 1, ..., 1]`.
    Tight {
        #[arg(long)]
        n: u64,
    },
    /// `[3n/2; 2n, 1, ..., 1]`.
    Dictator {
        #[arg(long)]
        n: u64,
    },
    /// Quota equal to the total weight.
    Unanimity {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
    },
    /// Game encoding a PARTITION instance.
    Reduction {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
    },
    /// Seeded random game.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only quotas above half the total weight.
        #[arg(long)]
        proper: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
    Table,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Human => OutputFormat::Human,
            Format::Json => OutputFormat::Structured,
            Format::Table => OutputFormat::Tabular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Index {
    /// Normalized Banzhaf.
    Bz,
    /// Probabilistic Banzhaf.
    BzProb,
    /// Shapley-Shubik.
    Ss,
}

impl From<Index> for IndexKind {
    fn from(i: Index) -> Self {
        match i {
            Index::Bz => IndexKind::BanzhafNormalized,
            Index::BzProb => IndexKind::BanzhafProbabilistic,
            Index::Ss => IndexKind::ShapleyShubik,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Enum,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Split,
    Merge,
    Annex,
    SsMerge,
}

impl From<Variant> for ReductionVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Split => ReductionVariant::Split,
            Variant::Merge => ReductionVariant::Merge,
            Variant::Annex => ReductionVariant::Annex,
            Variant::SsMerge => ReductionVariant::ShapleyMerge,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs `wvg` with `args` (program name first). Exit codes: 0 success, 1
/// invalid game or failed computation, 2 bad usage.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(2, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let limit = match enumeration_limit() {
        Ok(limit) => limit,
        Err(msg) => return Outcome::fail(2, format!("error: {msg}\n")),
    };
    match execute(cli.command, limit) {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(msg)) => Outcome::fail(2, format!("error: {msg}\n")),
        Err(Failure::Domain(e)) => Outcome::fail(1, format!("error: {e}\n")),
    }
}

fn enumeration_limit() -> std::result::Result<usize, String> {
    match std::env::var(ENUM_LIMIT_VAR) {
        Err(_) => Ok(DEFAULT_ENUMERATION_LIMIT),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{ENUM_LIMIT_VAR} must be a non-negative integer (got {v:?})")),
    }
}

fn load_game(arg: &str) -> CliResult<WeightedVotingGame> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    Ok(parse_game(&text)?)
}

fn player(game: &WeightedVotingGame, id: usize) -> CliResult<PlayerId> {
    if id == 0 {
        return Err(Failure::Domain(Error::InvalidPlayerId {
            id,
            players: game.players(),
        }));
    }
    let p = PlayerId::new(id);
    game.check_player(p)?;
    Ok(p)
}

fn execute(command: Command, limit: usize) -> CliResult<String> {
    match command {
        Command::Index { common, method } => {
            let game = load_game(&common.game)?;
            let method = match method {
                MethodArg::Auto if game.players() <= limit.min(16) => Method::Enumeration { limit },
                MethodArg::Auto | MethodArg::Dp => Method::DynamicProgramming,
                MethodArg::Enum => Method::Enumeration { limit },
            };
            let banzhaf = compute_banzhaf(&game, method)?;
            let shapley = compute_shapley(&game, method)?;
            Ok(render_indices(
                &IndexSummary {
                    game: &game,
                    banzhaf: &banzhaf,
                    shapley: Some(&shapley),
                },
                common.format.into(),
                common.digits,
            ))
        }
        Command::Split {
            common,
            index,
            player: id,
            parts,
            max_parts,
        } => {
            let game = load_game(&common.game)?;
            let p = player(&game, id)?;
            let kind = index.index.into();
            let report = match max_parts {
                Some(k) => match best_split(&game, p, k, kind)? {
                    Some(report) => report,
                    None => {
                        return Ok(no_beneficial_split(p, k, common.format));
                    }
                },
                None => evaluate_split(&game, &SplitAction::new(p, parts)?, kind)?,
            };
            Ok(render_report(&report, common.format.into(), common.digits))
        }
        Command::Merge {
            common,
            index,
            members,
        } => {
            let game = load_game(&common.game)?;
            let bloc = Coalition::new(game.players(), members)?;
            let report = evaluate_merge(&game, &bloc, index.index.into())?;
            Ok(render_report(&report, common.format.into(), common.digits))
        }
        Command::Annex {
            common,
            index,
            player: id,
            targets,
        } => {
            let game = load_game(&common.game)?;
            let p = player(&game, id)?;
            let annexed = Coalition::new(game.players(), targets)?;
            let report = evaluate_annexation(&game, p, &annexed, index.index.into())?;
            Ok(render_report(&report, common.format.into(), common.digits))
        }
        Command::Paradox {
            common,
            index,
            player: id,
        } => {
            let game = load_game(&common.game)?;
            let p = player(&game, id)?;
            paradox(&game, p, index.index.into(), common.format, common.digits)
        }
        Command::Advise {
            common,
            index,
            player: id,
            budget,
        } => {
            let game = load_game(&common.game)?;
            let p = player(&game, id)?;
            let pick = annexation_advisor(&game, p, &budget)?;
            if pick.is_empty() {
                return Ok(match common.format {
                    Format::Json => "{\n  \"annex\": []\n}\n".into(),
                    _ => format!("no player fits in budget {budget}\n"),
                });
            }
            let report = evaluate_annexation(&game, p, &pick, index.index.into())?;
            Ok(render_report(&report, common.format.into(), common.digits))
        }
        Command::Gen { family, format } => {
            let game = match family {
                Family::Tight { n } => tight_split_family(n)?,
                Family::Dictator { n } => dictator_family(n)?,
                Family::Unanimity { weights } => unanimity_game(&weights)?,
                Family::Reduction { variant, values } => {
                    let instance = PartitionInstance::new(values)?;
                    let out = partition_reduction(&instance, variant.into())?;
                    return Ok(match format {
                        Format::Human => format!("{}\nfocus: {}\n", out.game, out.focus),
                        _ => render_game(&out.game, format.into()),
                    });
                }
                Family::Random {
                    n,
                    max_weight,
                    seed,
                    proper,
                } => random_game(n, max_weight, seed, proper)?,
            };
            Ok(render_game(&game, format.into()))
        }
        Command::Bench {
            players,
            max_weight,
            seed,
        } => bench(&players, max_weight, seed, limit),
    }
}

fn no_beneficial_split(p: PlayerId, k: usize, format: Format) -> String {
    match format {
        Format::Json => "{\n  \"beneficial\": false\n}\n".into(),
        _ => format!("no split of player {p} into at most {k} parts is beneficial\n"),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    heavier: usize,
    lighter: usize,
    heavier_payoff: ExactRational,
    lighter_payoff: ExactRational,
}

fn paradox(
    game: &WeightedVotingGame,
    annexer: PlayerId,
    kind: IndexKind,
    format: Format,
    digits: usize,
) -> CliResult<String> {
    let witnesses = scan_annexation_nonmonotonicity(game, annexer, kind)?;
    let payoffs = annexation_payoffs(game, annexer, kind)?;
    let payoff =
        |id: PlayerId| -> &BigRational { payoffs[id.index()].as_ref().expect("not annexer") };
    let w = |id: PlayerId| &game.weights()[id.index()];
    let mut out = String::new();
    match format {
        Format::Human => {
            if witnesses.is_empty() {
                let _ = writeln!(out, "no annexation paradox for player {annexer} ({kind})");
            }
            for &(j, k) in &witnesses {
                let _ = writeln!(
                    out,
                    "annexing player {k} (weight {}) pays {}, more than player {j} (weight {}) at {}",
                    w(k),
                    render_rational(payoff(k), digits),
                    w(j),
                    render_rational(payoff(j), digits)
                );
            }
        }
        Format::Json => {
            let items: Vec<WitnessJson> = witnesses
                .iter()
                .map(|&(j, k)| WitnessJson {
                    heavier: j.get(),
                    lighter: k.get(),
                    heavier_payoff: payoff(j).into(),
                    lighter_payoff: payoff(k).into(),
                })
                .collect();
            out = serde_json::to_string_pretty(&items).expect("plain data");
            out.push('\n');
        }
        Format::Table => {
            out.push_str("heavier\tlighter\theavier_weight\tlighter_weight\theavier_payoff\tlighter_payoff\n");
            for &(j, k) in &witnesses {
                let _ = writeln!(
                    out,
                    "{j}\t{k}\t{}\t{}\t{}\t{}",
                    w(j),
                    w(k),
                    payoff(j),
                    payoff(k)
                );
            }
        }
    }
    Ok(out)
}

fn bench(players: &[usize], max_weight: u64, seed: u64, limit: usize) -> CliResult<String> {
    let mut out = String::from("players\tquota\tenum_ms\tdp_ms\n");
    for &n in players {
        let game = random_game(n, max_weight, seed, true)?;
        let enum_ms = if n <= limit {
            let start = Instant::now();
            let a = compute_banzhaf(&game, Method::Enumeration { limit })?;
            let t = start.elapsed().as_secs_f64() * 1e3;
            let b = compute_banzhaf(&game, Method::DynamicProgramming)?;
            if a.counts != b.counts {
                return Err(Failure::Usage(format!("methods disagree on {game}")));
            }
            format!("{t:.3}")
        } else {
            "-".into()
        };
        let start = Instant::now();
        compute_banzhaf(&game, Method::DynamicProgramming)?;
        let dp_ms = start.elapsed().as_secs_f64() * 1e3;
        let _ = writeln!(out, "{n}\t{}\t{enum_ms}\t{dp_ms:.3}", game.quota());
    }
    Ok(out)
}
