use thiserror::Error;

/// Everything that can go wrong while building or querying a structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier mismatch: sets over {left} and {right} elements")]
    CarrierMismatch { left: usize, right: usize },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("carrier of size {size} exceeds the configured bound {max}")]
    CarrierTooLarge { size: usize, max: usize },

    #[error("not an ideal: {0}")]
    InvalidIdeal(String),

    #[error("congruence is not transitive: {x} ~ {y} and {y} ~ {z} but not {x} ~ {z}")]
    NotTransitive { x: String, y: String, z: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unsupported field order {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedOrder(u32),

    #[error("{0} is not a superfield")]
    NotSuperfield(String),

    #[error("{0} is not a superdomain")]
    NotSuperdomain(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("expected a polynomial of degree at least 1")]
    ConstantPolynomial,

    #[error("modulus {0} is reducible")]
    Reducible(String),

    #[error("the zero class has no inverse")]
    ZeroClass,

    #[error("map is not injective: {0} and {1} have the same image")]
    NotInjective(String, String),

    #[error("map is not a morphism: {0}")]
    NotMorphism(String),

    #[error("map does not fit: {0}")]
    MapShape(String),

    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("missing table entry `{op} {a} {b}`")]
    MissingPair { op: String, a: String, b: String },

    #[error("duplicate table entry `{op} {a} {b}` at line {line}")]
    DuplicateEntry { op: String, a: String, b: String, line: usize },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
