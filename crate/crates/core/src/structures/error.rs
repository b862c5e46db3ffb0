use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("group order must be at least 1")]
    EmptyGroup,
    #[error("{what} {value} outside supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("Cayley table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("Cayley entry {value} at cell ({row},{col}) is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("NotLatinSquare at cell ({row},{col})")]
    NotLatinSquare { row: usize, col: usize },
    #[error("NotAssociative at triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("NoIdentity")]
    NoIdentity,
    #[error("NoIdentity: declared identity {0} is not a two-sided identity")]
    WrongIdentity(usize),
    #[error("NoInverse for element {0}")]
    NoInverse(usize),
    #[error("index size must be ≥ 1")]
    EmptyIndexSet,
    #[error("structure table has {got} products, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("product of basis {p} and {q} has an entry outside dimension {dim}")]
    ProductOutOfRange { p: usize, q: usize, dim: usize },
    #[error("declared unit fails on basis element {0}")]
    BadUnit(usize),
    #[error("Cayley file line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
