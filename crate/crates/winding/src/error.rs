use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error in word at byte {pos}: unexpected {found:?}")]
    WordSyntax { pos: usize, found: char },
    #[error("exponent does not fit in a machine integer")]
    ExponentOverflow,
    #[error("syntax error in polynomial: {0}")]
    PolySyntax(String),
    #[error("word is not in the derived subgroup: exponent sums ({exp_x}, {exp_y})")]
    NonZeroExponents { exp_x: i64, exp_y: i64 },
    #[error("word has an odd exponent sum")]
    OddExponents,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("substitution matrix is not unimodular")]
    NonUnimodular,
    #[error("divisor has a non-unit leading coefficient")]
    NonUnitLeadingCoefficient,
    #[error("test not applicable: {0}")]
    InapplicableTest(String),
    #[error("word is not a product of squares: exponent sums must be even")]
    NotProductOfSquares,
    #[error("syntax error in region: {0}")]
    RegionSyntax(String),
    #[error("region is empty")]
    EmptyRegion,
    #[error("region is not edge-connected")]
    NotConnected,
    #[error("region is not simply connected")]
    NotSimplyConnected,
    #[error("base vertex is not on the region boundary")]
    BaseNotOnBoundary,
    #[error("region has an odd number of cells")]
    OddCellCount,
    #[error("bisection does not use a pure translation")]
    NotTranslateBisection,
    #[error("resource cap exceeded: {0}")]
    ResourceExceeded(String),
}
