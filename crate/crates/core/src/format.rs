//! Game documents and report rendering.
//!
//! Games are read either in bracket notation, `[q; w1, w2, ..., wn]` (commas
//! or whitespace between weights), or as a JSON object
//! `{"quota": .., "weights": [..], "labels": [..]}` whose integers may be
//! JSON numbers or decimal strings. Structured output always writes integers
//! as strings so no consumer loses precision.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::WeightedVotingGame;
use crate::indices::{BanzhafIndices, ShapleyIndices};
use crate::manipulation::ManipulationReport;

pub const DEFAULT_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Structured,
    Tabular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDocument {
    pub game: WeightedVotingGame,
    pub labels: Option<Vec<String>>,
}

pub fn parse_game(text: &str) -> Result<WeightedVotingGame> {
    parse_document(text).map(|doc| doc.game)
}

pub fn parse_document(text: &str) -> Result<GameDocument> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        parse_structured(text)
    } else {
        let (quota, weights) = BracketParser::new(text).parse()?;
        Ok(GameDocument {
            game: WeightedVotingGame::new(quota, weights)?,
            labels: None,
        })
    }
}

struct BracketParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> BracketParser<'a> {
    fn new(text: &'a str) -> Self {
        BracketParser { text, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().unwrap().len_utf8();
        }
        self.pos > start
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => self.error(format!("expected '{c}', found '{found}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let token = &self.text[start..self.pos];
        match token.parse::<BigInt>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                match self.peek() {
                    Some(c) => self.error(format!("expected an integer, found '{c}'")),
                    None => self.error("expected an integer, found end of input"),
                }
            }
        }
    }

    fn parse(mut self) -> Result<(BigInt, Vec<BigInt>)> {
        self.expect('[')?;
        let quota = self.integer()?;
        self.expect(';')?;
        let mut weights = Vec::new();
        self.skip_ws();
        if self.peek() != Some(']') {
            weights.push(self.integer()?);
            loop {
                let spaced = self.skip_ws();
                match self.peek() {
                    Some(']') => break,
                    Some(',') => {
                        self.pos += 1;
                        weights.push(self.integer()?);
                    }
                    Some(_) if spaced => weights.push(self.integer()?),
                    Some(c) => return self.error(format!("expected ',' or ']', found '{c}'")),
                    None => return self.error("expected ']', found end of input"),
                }
            }
        }
        self.expect(']')?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return self.error(format!("unexpected trailing '{c}'"));
        }
        Ok((quota, weights))
    }
}

fn json_integer(value: &Value, what: &str) -> Result<BigInt> {
    let parsed = match value {
        Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
        Value::String(s) => s.trim().parse::<BigInt>().ok(),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Syntax {
        position: 0,
        message: format!("{what} must be an integer or a decimal string"),
    })
}

fn parse_structured(text: &str) -> Result<GameDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        position: e.column(),
        message: e.to_string(),
    })?;
    let missing = |field: &str| Error::Syntax {
        position: 0,
        message: format!("missing field '{field}'"),
    };
    let quota = json_integer(value.get("quota").ok_or_else(|| missing("quota"))?, "quota")?;
    let weights = value
        .get("weights")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("weights"))?
        .iter()
        .map(|w| json_integer(w, "weight"))
        .collect::<Result<Vec<_>>>()?;
    let labels = match value.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .map(|l| match l {
                    Value::String(s) => Ok(s.clone()),
                    other => Ok(other.to_string()),
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => {
            return Err(Error::Syntax {
                position: 0,
                message: "labels must be an array".into(),
            })
        }
    };
    let game = WeightedVotingGame::new(quota, weights)?;
    if let Some(labels) = &labels {
        if labels.len() != game.players() {
            return Err(Error::Syntax {
                position: 0,
                message: format!(
                    "{} labels given for {} players",
                    labels.len(),
                    game.players()
                ),
            });
        }
    }
    Ok(GameDocument { game, labels })
}

#[derive(Serialize, Deserialize)]
struct GameJson {
    quota: String,
    weights: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<&GameDocument> for GameJson {
    fn from(doc: &GameDocument) -> Self {
        GameJson {
            quota: doc.game.quota().to_string(),
            weights: doc.game.weights().iter().map(ToString::to_string).collect(),
            labels: doc.labels.clone(),
        }
    }
}

fn game_json(game: &WeightedVotingGame) -> GameJson {
    GameJson::from(&GameDocument {
        game: game.clone(),
        labels: None,
    })
}

pub fn render_document(doc: &GameDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Human => format!("{}\n", doc.game),
        OutputFormat::Structured => to_json(&GameJson::from(doc)),
        OutputFormat::Tabular => {
            let mut out = String::from("player\tweight\tlabel\n");
            for id in doc.game.player_ids() {
                let label = doc
                    .labels
                    .as_ref()
                    .map(|l| l[id.index()].as_str())
                    .unwrap_or("");
                let _ = writeln!(out, "{id}\t{}\t{label}", doc.game.weights()[id.index()]);
            }
            out
        }
    }
}

pub fn render_game(game: &WeightedVotingGame, format: OutputFormat) -> String {
    render_document(
        &GameDocument {
            game: game.clone(),
            labels: None,
        },
        format,
    )
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// An exact rational as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub numerator: String,
    pub denominator: String,
}

impl From<&BigRational> for ExactRational {
    fn from(r: &BigRational) -> Self {
        ExactRational {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }
}

impl TryFrom<&ExactRational> for BigRational {
    type Error = Error;

    fn try_from(r: &ExactRational) -> Result<Self> {
        let bad = || Error::Syntax {
            position: 0,
            message: format!("invalid rational {}/{}", r.numerator, r.denominator),
        };
        let num: BigInt = r.numerator.parse().map_err(|_| bad())?;
        let den: BigInt = r.denominator.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
}

/// `digits` significant decimal digits, rounding half away from zero.
pub fn format_decimal(value: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".into();
    }
    let negative = value.is_negative();
    let num = value.numer().abs().to_biguint().expect("abs");
    let den = value.denom().abs().to_biguint().expect("abs");
    let ten = BigUint::from(10u32);

    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let scaled_cmp = |e: i64| -> std::cmp::Ordering {
        if e >= 0 {
            num.cmp(&(&den * ten.pow(e as u32)))
        } else {
            (&num * ten.pow((-e) as u32)).cmp(&den)
        }
    };
    if scaled_cmp(e) == std::cmp::Ordering::Less {
        e -= 1;
    }

    let shift = digits as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    let mut q = &n / &d;
    let r = &n % &d;
    if r * 2u32 >= d {
        q += 1u32;
    }
    if q == ten.pow(digits as u32) {
        q /= 10u32;
        e += 1;
    }
    let mantissa = q.to_string();
    let body = if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= mantissa.len() {
            format!("{mantissa}{}", "0".repeat(int_len - mantissa.len()))
        } else {
            format!("{}.{}", &mantissa[..int_len], &mantissa[int_len..])
        }
    } else {
        format!("0.{}{mantissa}", "0".repeat((-e - 1) as usize))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// `7/17 (0.411765)`.
pub fn render_rational(value: &BigRational, digits: usize) -> String {
    format!("{value} ({})", format_decimal(value, digits))
}

/// All indices of one game, as produced by the `index` command.
pub struct IndexSummary<'a> {
    pub game: &'a WeightedVotingGame,
    pub banzhaf: &'a BanzhafIndices,
    pub shapley: Option<&'a ShapleyIndices>,
}

#[derive(Serialize)]
struct PlayerIndicesJson {
    player: usize,
    weight: String,
    eta: String,
    banzhaf: ExactRational,
    banzhaf_probabilistic: ExactRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shapley_shubik: Option<ExactRational>,
}

#[derive(Serialize)]
struct IndicesJson {
    game: GameJson,
    eta_total: String,
    players: Vec<PlayerIndicesJson>,
}

pub fn render_indices(summary: &IndexSummary<'_>, format: OutputFormat, digits: usize) -> String {
    let game = summary.game;
    let bz = summary.banzhaf;
    let ss = summary.shapley;
    match format {
        OutputFormat::Human => {
            let mut out = format!("game: {game}\n");
            let _ = writeln!(out, "total swings: {}", bz.counts.total());
            for id in game.player_ids() {
                let _ = writeln!(out, "player {id} (weight {}):", game.weights()[id.index()]);
                let _ = writeln!(out, "  eta = {}", bz.counts.get(id));
                let _ = writeln!(
                    out,
                    "  banzhaf = {}",
                    render_rational(bz.normalized.get(id), digits)
                );
                let _ = writeln!(
                    out,
                    "  banzhaf (probabilistic) = {}",
                    render_rational(bz.probabilistic.get(id), digits)
                );
                if let Some(ss) = ss {
                    let _ = writeln!(out, "  kappa = {}", ss.counts.get(id));
                    let _ = writeln!(
                        out,
                        "  shapley-shubik = {}",
                        render_rational(ss.index.get(id), digits)
                    );
                }
            }
            out
        }
        OutputFormat::Structured => {
            let players = game
                .player_ids()
                .map(|id| PlayerIndicesJson {
                    player: id.get(),
                    weight: game.weights()[id.index()].to_string(),
                    eta: bz.counts.get(id).to_string(),
                    banzhaf: bz.normalized.get(id).into(),
                    banzhaf_probabilistic: bz.probabilistic.get(id).into(),
                    kappa: ss.map(|s| s.counts.get(id).to_string()),
                    shapley_shubik: ss.map(|s| s.index.get(id).into()),
                })
                .collect();
            to_json(&IndicesJson {
                game: game_json(game),
                eta_total: bz.counts.total().to_string(),
                players,
            })
        }
        OutputFormat::Tabular => {
            let mut out = String::from("player\tweight\teta\tbanzhaf\tbanzhaf_probabilistic");
            if ss.is_some() {
                out.push_str("\tkappa\tshapley_shubik");
            }
            out.push('\n');
            for id in game.player_ids() {
                let _ = write!(
                    out,
                    "{id}\t{}\t{}\t{}\t{}",
                    game.weights()[id.index()],
                    bz.counts.get(id),
                    bz.normalized.get(id),
                    bz.probabilistic.get(id)
                );
                if let Some(ss) = ss {
                    let _ = write!(out, "\t{}\t{}", ss.counts.get(id), ss.index.get(id));
                }
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
struct RemapJson {
    player: usize,
    origins: Vec<usize>,
}

#[derive(Serialize)]
struct ReportJson {
    action: String,
    index: String,
    cross_game_comparable: bool,
    game_after: GameJson,
    before: ExactRational,
    after: ExactRational,
    delta: ExactRational,
    beneficial: bool,
    verdict: String,
    remap: Vec<RemapJson>,
}

pub fn render_report(report: &ManipulationReport, format: OutputFormat, digits: usize) -> String {
    match format {
        OutputFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "action: {}", report.action);
            let _ = writeln!(out, "index: {}", report.index_kind);
            if !report.index_kind.is_cross_game_comparable() {
                let _ = writeln!(
                    out,
                    "warning: probabilistic Banzhaf values are not comparable across games of different size"
                );
            }
            let _ = writeln!(out, "resulting game: {}", report.game_after);
            let _ = writeln!(out, "before: {}", render_rational(&report.before, digits));
            let _ = writeln!(out, "after: {}", render_rational(&report.after, digits));
            let _ = writeln!(out, "delta: {}", render_rational(&report.delta, digits));
            let _ = writeln!(out, "verdict: {}", report.verdict());
            let mut remap = String::new();
            for (new, from) in report.remap.iter() {
                let from: Vec<String> = from.iter().map(ToString::to_string).collect();
                let _ = write!(remap, " {}<-{}", new, from.join("+"));
            }
            let _ = writeln!(out, "players:{remap}");
            out
        }
        OutputFormat::Structured => to_json(&ReportJson {
            action: report.action.to_string(),
            index: report.index_kind.to_string(),
            cross_game_comparable: report.index_kind.is_cross_game_comparable(),
            game_after: game_json(&report.game_after),
            before: (&report.before).into(),
            after: (&report.after).into(),
            delta: (&report.delta).into(),
            beneficial: report.beneficial,
            verdict: report.verdict().to_string(),
            remap: report
                .remap
                .iter()
                .map(|(new, from)| RemapJson {
                    player: new.get(),
                    origins: from.iter().map(|id| id.get()).collect(),
                })
                .collect(),
        }),
        OutputFormat::Tabular => {
            let mut out = String::from("player\torigins\tweight\n");
            for (new, from) in report.remap.iter() {
                let from: Vec<String> = from.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "{new}\t{}\t{}",
                    from.join("+"),
                    report.game_after.weights()[new.index()]
                );
            }
            let _ = writeln!(
                out,
                "# before={} after={} delta={} beneficial={}",
                report.before, report.after, report.delta, report.beneficial
            );
            out
        }
    }
}
