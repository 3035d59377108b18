use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Wrong edge count, a cycle, or a disconnected edge list.
    NotATree(&'static str),
    /// A vertex label outside `1..=n`.
    BadLabel {
        label: usize,
        n: usize,
    },
    BadParam(&'static str),
    NotALeaf(usize),
    TooSmall {
        n: usize,
        min: usize,
    },
    ConvergenceFailure {
        sweeps: usize,
    },
    /// Fiedler sign structure does not match type I / type II.
    StructureViolation(&'static str),
    DomainError(&'static str),
    NoRoot,
    DegenerateEigenspace {
        multiplicity: usize,
    },
    BadSequence(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotATree(why) => write!(f, "not a tree: {why}"),
            Error::BadLabel { label, n } => write!(f, "vertex label {label} out of range 1..={n}"),
            Error::BadParam(why) => write!(f, "bad parameter: {why}"),
            Error::NotALeaf(v) => write!(f, "vertex {v} is not a leaf"),
            Error::TooSmall { n, min } => write!(f, "tree has {n} vertices, need at least {min}"),
            Error::ConvergenceFailure { sweeps } => {
                write!(f, "Jacobi iteration did not converge in {sweeps} sweeps")
            }
            Error::StructureViolation(why) => write!(f, "Fiedler structure violation: {why}"),
            Error::DomainError(why) => write!(f, "argument outside domain: {why}"),
            Error::NoRoot => f.write_str("no root found in the search interval"),
            Error::DegenerateEigenspace { multiplicity } => {
                write!(f, "lambda_2 has multiplicity {multiplicity}")
            }
            Error::BadSequence(why) => write!(f, "invalid level sequence: {why}"),
        }
    }
}

impl core::error::Error for Error {}
