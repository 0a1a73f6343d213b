use thiserror::Error;

use crate::pseries::Variable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable mismatch: cannot combine a series in {0} with a series in {1}")]
    VariableMismatch(Variable, Variable),

    #[error("series division: divisor has zero constant term")]
    NonUnit,

    #[error("{op}: constant term must be {expected}, found {found}")]
    ConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: String,
    },

    #[error("series reversion: {0}")]
    NonInvertible(&'static str),

    #[error("series composition: inner series has nonzero constant term {0}")]
    Composition(String),

    #[error("{op}: requires {requirement}")]
    Domain {
        op: &'static str,
        requirement: String,
    },

    #[error("extract_n1: constant term of G must be 25/6, found {0}")]
    Normalization(String),

    #[error("genus-0 pipeline: instanton number n_{degree} = {value} is not an integer")]
    NonIntegralInstanton { degree: usize, value: String },

    #[error("l2 pairing: c(kappa, kappa, kappa) vanishes")]
    DegenerateKahler,

    #[error("fhsv lattice: det A must be -1024, found {0}")]
    LatticeType(String),

    #[error("fhsv lattice: <H,H> = h^T A h must be positive, found {0}")]
    NonKahler(String),

    #[error("family data: {0}")]
    IllPosedFamily(String),

    #[error("green potential: psi coincides with a divisor point carrying exponent {exponent}")]
    OnDivisor { exponent: String },

    #[error("parse error: {0}")]
    Parse(String),
}
