//! Error type shared by every module of the kernel.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by kernel operations.
///
/// Mathematically meaningful degenerate inputs (empty ideals, empty singular
/// loci) are not errors; only contract violations, resource exhaustion and
/// failed searches are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller violated an operation contract (mismatched variable counts,
    /// indices out of range, malformed input).
    Usage(String),
    /// The zero polynomial was passed where a nonzero one is required.
    ZeroPolynomial,
    /// The zero operator has no order or initial form.
    ZeroOperator,
    /// A computation exceeded its step or wall-clock budget.
    Resource { what: String },
    /// No rational point of bounded height was found on a component.
    NoRationalPoint { component: String },
    /// A line restriction hit a denominator vanishing identically on the line.
    LineInPolarLocus,
    /// The ideal is not of finite rank over the rational function field.
    NotFiniteRank,
    /// Cyclic vector search exhausted its budget.
    CyclicVectorBudget,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::ZeroOperator => write!(f, "zero operator has no order"),
            Error::Resource { what } => write!(f, "resource budget exceeded: {what}"),
            Error::NoRationalPoint { component } => {
                write!(f, "NO_RATIONAL_POINT on component {component}")
            }
            Error::LineInPolarLocus => write!(f, "LINE_IN_POLAR_LOCUS"),
            Error::NotFiniteRank => write!(f, "not of finite rank over C(x)"),
            Error::CyclicVectorBudget => write!(f, "cyclic vector search budget exhausted"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
