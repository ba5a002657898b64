use alloc::string::String;
use core::fmt;

use crate::poly::Var;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// Division by an expression that is identically zero.
    DivisionByZero,
    /// A denominator vanished at a concrete point.
    SingularPoint,
    /// The root `R` has an irrational value at the point.
    IrrationalRoot,
    /// A substitution would leave `R` with a radicand that is not a square.
    RootNotRepresentable(Var),
    /// The point does not bind a parameter symbol the expression uses.
    UnboundParameter(Var),
    /// Expression contains something the operation does not accept.
    Unsupported(String),
    /// The constraint matrix is singular.
    NotSecondClass,
    /// The BFT structure matrix `X` is not invertible.
    SingularStructureMatrix,
    /// Operator word with more than two free index labels.
    TooManyFreeIndices(usize),
    /// Operator still carries free indices where none are allowed.
    FreeIndicesRemain,
    /// Graded bracket input mixes even and odd terms.
    InhomogeneousParity,
    /// The two energy formulas cannot be matched by any c^2.
    NoSolution(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DivisionByZero => write!(f, "division by a zero expression"),
            AlgebraError::SingularPoint => write!(f, "denominator vanishes at the point"),
            AlgebraError::IrrationalRoot => write!(f, "R is irrational at the point"),
            AlgebraError::RootNotRepresentable(v) => {
                write!(f, "substituting {} leaves R without a rational form", v)
            }
            AlgebraError::UnboundParameter(v) => write!(f, "parameter {} is not bound", v),
            AlgebraError::Unsupported(what) => write!(f, "unsupported: {}", what),
            AlgebraError::NotSecondClass => write!(f, "constraint matrix is singular"),
            AlgebraError::SingularStructureMatrix => write!(f, "structure matrix X is singular"),
            AlgebraError::TooManyFreeIndices(n) => {
                write!(f, "operator has {} free indices (at most 2 allowed)", n)
            }
            AlgebraError::FreeIndicesRemain => write!(f, "operator is not fully contracted"),
            AlgebraError::InhomogeneousParity => write!(f, "graded input is not parity-homogeneous"),
            AlgebraError::NoSolution(why) => write!(f, "no solution: {}", why),
        }
    }
}

impl core::error::Error for AlgebraError {}

pub type Result<T> = core::result::Result<T, AlgebraError>;
