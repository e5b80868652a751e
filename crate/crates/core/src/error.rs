use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two graphs or polynomials were combined over different vertex sets.
    VertexSetMismatch,
    /// Operands belong to different settings.
    SettingMismatch,
    /// A graph violates the rules of its setting.
    InvalidGraph(String),
    /// The input exceeds a hard size limit of an algorithm.
    SizeLimit { what: &'static str, limit: usize, got: usize },
    /// An enumeration would exceed its configured budget.
    Budget(String),
    /// Evaluation hit a zero of the denominator.
    Pole { factor: String, at: String },
    DivisionByZero,
    /// A partition is not an element of the poset it was queried in.
    NotInPoset,
    /// An operation restricted to maximum degree 2 per graph got a larger degree.
    DegreePrecondition,
    /// A linear system had no unique solution.
    Singular(String),
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexSetMismatch => f.write_str("vertex sets differ"),
            Error::SettingMismatch => f.write_str("settings differ"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::SizeLimit { what, limit, got } => {
                write!(f, "{what} limit exceeded: {got} > {limit}")
            }
            Error::Budget(msg) => write!(f, "budget exceeded: {msg}"),
            Error::Pole { factor, at } => {
                write!(f, "pole: denominator factor {factor} vanishes at n = {at}")
            }
            Error::DivisionByZero => f.write_str("division by the zero function"),
            Error::NotInPoset => f.write_str("partition is not in the poset"),
            Error::DegreePrecondition => {
                f.write_str("operation requires maximum degree 2 in each graph")
            }
            Error::Singular(msg) => write!(f, "singular system: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
