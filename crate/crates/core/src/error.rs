use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("unknown built-in groupoid `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid size {n} for `{family}`: {reason}")]
    InvalidSize {
        family: String,
        n: usize,
        reason: String,
    },

    #[error("malformed groupoid document: {0}")]
    MalformedDocument(String),

    #[error("table is not square: expected {expected} entries in row {row}, found {found}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("`{0}` is not a declared element name")]
    UnknownElement(String),

    #[error("index {index} out of range for carrier of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },

    #[error("carrier size mismatch: {0} vs {1}")]
    CarrierMismatch(usize, usize),

    #[error("base of a hyperspace must be non-empty")]
    EmptyBase,

    #[error("the empty set cannot belong to an inclusion hyperspace")]
    EmptySetInBase,

    #[error("carrier size {n} exceeds the limit {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("unsupported class `{class}` on a carrier of size {n}")]
    UnsupportedClass { class: String, n: usize },

    #[error("invalid class identifier `{0}`")]
    InvalidClass(String),

    #[error("duplicate element at positions {0} and {1}")]
    Duplicate(usize, usize),

    #[error("semigroup view is not closed: element {left} times element {right} escapes")]
    NotClosed { left: usize, right: usize },

    #[error("groupoid `{0}` is not a group")]
    NotAGroup(String),

    #[error("set is not closed under right shifts: element {element} shifted by {shift} escapes")]
    NotShiftClosed { element: usize, shift: usize },

    #[error("quotient is ill-defined between orbits {left} and {right}")]
    QuotientIllDefined { left: usize, right: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}
