use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid orbifold point ({b},{r}): need r >= 2, 1 <= b <= r/2, gcd(b,r) = 1")]
    InvalidPoint { b: i64, r: i64 },

    #[error("residue {residue} out of range for index {r}")]
    ResidueOutOfRange { residue: i64, r: i64 },

    #[error("residue vector has {got} entries, basket has {expected} points")]
    ResidueMisaligned { expected: usize, got: usize },

    #[error("inadmissible (chi, i(X)) = ({chi}, {index})")]
    Inadmissible { chi: u32, index: u32 },

    #[error("inadmissible local index i(X) = {0}")]
    InadmissibleIndex(u32),

    #[error("multiple m = {0} is not allowed here (need m >= 1)")]
    BadMultiple(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid weighted variety: {0}")]
    InvalidVariety(String),

    #[error("no consistent lambda: {0}")]
    Inconsistent(String),

    #[error("certification failed: {0}")]
    Uncertified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
