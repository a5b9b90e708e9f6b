use thiserror::Error;

/// Errors shared by the stream kernel, the coefficient fields, the tower and
/// series algebra, and the expression front end.
///
/// Most of these surface lazily: an operation returns a perfectly good stream
/// and the error only shows up when the offending element is forced.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A self-referential definition demanded its own value while it was
    /// being computed (a "black hole").
    #[error("non-productive definition: element demands itself")]
    NonProductive,
    /// `fold_tower` ran out of budget before reaching a `Constant` variant.
    #[error("no constant tail found within {0} elements")]
    Unbounded(usize),
    /// Exact division by something with a zero head.
    #[error("singular division: divisor has zero leading element")]
    SingularDivision,
    /// `rational(p, 0)`.
    #[error("zero denominator")]
    ZeroDenominator,
    /// A restricted elementary function (exp0/log1/sqrt1) was applied to a
    /// series whose head is not the required constant.
    #[error("bad head for {func}: expected {expected}")]
    BadHead {
        func: &'static str,
        expected: &'static str,
    },
    /// Series reversion requires a zero constant term and a nonzero linear one.
    #[error("series reversion needs u0 = 0 and u1 != 0")]
    BadLinearTerm,
    /// `scompose` with an inner series whose constant term is nonzero.
    #[error("composition: inner series has nonzero constant term")]
    NonzeroInnerConstant,
    /// Hermite recurrence with n < 0.
    #[error("negative order: {0}")]
    NegativeOrder(i64),
    /// A transcendental call reached the exact-rational field where no
    /// restricted variant applies.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    /// Unknown function name in an expression.
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    /// Parse failure, with the byte offset and the tokens that were expected.
    #[error("syntax error at offset {offset}: expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
