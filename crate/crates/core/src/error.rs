use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong when building or analysing a game.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quota must be at least 1 (got {0})")]
    ZeroOrNegativeQuota(String),
    #[error("quota {quota} exceeds the total weight {total}")]
    QuotaExceedsTotalWeight { quota: BigUint, total: BigUint },
    #[error("player {player} has negative weight {weight}")]
    NegativeWeight { player: usize, weight: String },
    #[error("a game needs at least one player")]
    EmptyPlayerList,
    #[error("player id {id} is out of range 1..={players}")]
    InvalidPlayerId { id: usize, players: usize },
    #[error("player {0} appears more than once")]
    DuplicatePlayer(usize),
    #[error("enumeration is limited to {limit} players, game has {players}")]
    TooManyPlayersForEnumeration { players: usize, limit: usize },
    #[error("quota {0} is too large for the counting table")]
    QuotaTooLargeForTable(BigUint),
    #[error("split parts sum to {parts} but player weight is {weight}")]
    PartsDoNotSumToWeight { parts: BigUint, weight: BigUint },
    #[error("split parts must be positive")]
    ZeroPart,
    #[error("a split needs at least two parts")]
    TooFewParts,
    #[error("a merge needs at least two distinct players")]
    SingletonOrEmptyMerge,
    #[error("annexed players must be non-empty and must not include the annexer")]
    InvalidAnnexation,
    #[error("player weight {0} is too small to split")]
    WeightTooSmallToSplit(BigUint),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
