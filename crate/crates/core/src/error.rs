use thiserror::Error;

use crate::ring::RingAxiom;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table must have at least one element")]
    EmptyTable,
    #[error("table has {rows} rows but {n} elements were declared")]
    RowCount { n: usize, rows: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    RowLength { row: usize, len: usize, n: usize },
    #[error("element {element} out of range for order {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("tables have different orders ({left} and {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("parenthesization does not match sequence: {0}")]
    LeafMismatch(String),
    #[error("{what} needs {requested}, above the limit of {limit}")]
    Budget {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("table is not a Latin square")]
    NotQuasigroup,
    #[error("table is not associative")]
    NotAssociative,
    #[error("table is not a group")]
    NotGroup,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a ring: {0}")]
    Ring(RingAxiom),
}

pub type Result<T> = std::result::Result<T, Error>;
