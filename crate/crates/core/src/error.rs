use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("monoid is not finite within enumeration bound {bound}")]
    InfiniteMonoid { bound: u32 },
    #[error("undeclared generator `{name}` at {position}")]
    UndeclaredGenerator { name: String, position: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("ring tables are not commutative: {a}*{b} != {b}*{a}")]
    NonCommutative { a: usize, b: usize },
    #[error("{k} is not coprime to {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("ideal status undecided for candidates {candidates:?}")]
    Undecided { candidates: Vec<Vec<usize>> },
    #[error("integer overflow in exact linear algebra")]
    Overflow,
    #[error("regime error: {0}")]
    Regime(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
    #[error("zero has no divisor")]
    ZeroRational,
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("space is empty")]
    EmptySpace,
}
