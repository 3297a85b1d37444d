use crate::qseries::Var;

/// Errors produced by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("pole at evaluation point")]
    Pole,
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("non-unit series")]
    NonUnitSeries,
    #[error("non-formal Pochhammer argument {0}")]
    NonFormalPochhammer(String),
    #[error("vanishing Pochhammer factor {0} in denominator")]
    VanishingDenominator(String),
    #[error("bilateral sum does not truncate for substitution: {0}")]
    NonTruncatingSum(String),
    #[error("p must satisfy 0 <= p <= level, got p={p}, level={level}")]
    InvalidP { p: i64, level: i64 },
    #[error("level-0 Hall-Littlewood not supported; use ct/specialization routes")]
    LevelZeroHallLittlewood,
    #[error("weight is not dominant: level={level}, p={p}")]
    NotDominant { level: i64, p: i64 },
    #[error("mu is not in Max(lambda): offset ({0},{1})")]
    NotInMax(i64, i64),
    #[error("Freudenthal degeneracy at offset ({0},{1})")]
    FreudenthalDegeneracy(i64, i64),
    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
    #[error("series only known to order {have}, need {want} (doubled exponents)")]
    InsufficientOrder { have: i64, want: i64 },
    #[error("constant term requires a delta-aligned base, got level={0}, p={1}")]
    BaseNotDeltaAligned(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;
