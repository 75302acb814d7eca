use alloc::string::String;
use core::fmt;

/// Errors raised by poset construction and pattern-setup computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The reflexive-transitive closure of the input relation is not antisymmetric.
    CycleDetected { a: String, b: String },
    UnknownElement(String),
    DuplicateElement(String),
    /// A description does not belong to the space it is used with.
    SpaceMismatch { space: &'static str, description: String },
    InvalidDescription(String),
    /// The principal ideal of this description is infinite.
    InfiniteIdeal(String),
    UnsupportedCapability(&'static str),
    UndefinedForSpace(String),
    CapExceeded { what: &'static str, limit: usize, actual: usize },
    /// An operation requiring a pattern structure was called on a setup that is not one.
    NotAStructure { witness: String },
    AlreadyAugmented,
    EmptyObjects,
    DuplicateObject(String),
    UnknownObject(String),
    InvariantViolated(String),
    UnknownFixture(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CycleDetected { a, b } => {
                write!(f, "cycle detected: {a} <= {b} and {b} <= {a}")
            }
            Error::UnknownElement(id) => write!(f, "unknown element `{id}`"),
            Error::DuplicateElement(id) => write!(f, "duplicate element `{id}`"),
            Error::SpaceMismatch { space, description } => {
                write!(f, "description `{description}` does not belong to the {space} space")
            }
            Error::InvalidDescription(msg) => write!(f, "invalid description: {msg}"),
            Error::InfiniteIdeal(d) => write!(f, "principal ideal of `{d}` is infinite"),
            Error::UnsupportedCapability(cap) => write!(f, "space does not support {cap}"),
            Error::UndefinedForSpace(msg) => write!(f, "undefined for this space: {msg}"),
            Error::CapExceeded { what, limit, actual } => {
                write!(f, "{what} cap exceeded: {actual} > {limit}")
            }
            Error::NotAStructure { witness } => {
                write!(f, "not a pattern structure (witness {witness})")
            }
            Error::AlreadyAugmented => f.write_str("space already has a synthetic top"),
            Error::EmptyObjects => f.write_str("a pattern setup needs at least one object"),
            Error::DuplicateObject(id) => write!(f, "duplicate object `{id}`"),
            Error::UnknownObject(id) => write!(f, "unknown object `{id}`"),
            Error::InvariantViolated(msg) => write!(f, "invariant violated: {msg}"),
            Error::UnknownFixture(name) => write!(f, "unknown fixture `{name}`"),
        }
    }
}

impl core::error::Error for Error {}
