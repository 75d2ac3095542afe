//! Belief functions over binary-atom frames.
//!
//! A frame is a list of named feature atoms; its worlds are the `2^n` truth
//! assignments. Focal elements are literal cubes (conjunctions of possibly
//! negated atoms), which are closed under intersection, so Dempster's rule
//! never needs to materialise world sets. Knowledge-side clauses may also be
//! disjunctions of positive atoms.

mod clause;
mod frame;
pub(crate) mod mass;

pub use clause::{Clause, ClauseKind, Literal, Polarity};
pub use frame::{Frame, MAX_ATOMS};
pub use mass::{
    belief, clause_intersect, clause_subset, combine, combine_all, simple_support, validate,
    CombineOutcome, MassFunction, Violation, CONFLICT_LIMIT, SUM_TOLERANCE,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    #[error("atom `{0}` appears twice in the frame")]
    DuplicateAtom(String),
    #[error("frame has {0} atoms, at most {max} are supported", max = MAX_ATOMS)]
    TooManyAtoms(usize),
    #[error("a frame needs at least one atom")]
    EmptyFrame,
    #[error("atom names must be non-empty")]
    EmptyName,
    #[error("atom `{0}` is not part of the frame")]
    UnknownAtom(String),
    #[error("operands are defined over different frames")]
    FrameMismatch,
    #[error("clause `{0}` is contradictory and denotes the empty set")]
    Contradiction(String),
    #[error("empty disjunction denotes the empty set")]
    EmptyDisjunction,
    #[error("disjunctions may only contain positive atoms")]
    NegatedDisjunct,
    #[error("expected a conjunction, got disjunction `{0}`")]
    NotAConjunction(String),
    #[error("mass {0} is outside [0, 1]")]
    MassOutOfRange(f64),
    #[error("invalid mass function: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("total conflict between the combined mass functions (K = {0})")]
    TotalConflict(f64),
    #[error("`{0}` is not a single positive atom")]
    NotSingleAtom(String),
    #[error("nothing to combine")]
    EmptyCombination,
    #[error("masses sum to {0}, expected 1")]
    Normalization(f64),
    #[error("knowledge focal `{0}` contains a negative literal")]
    NegativeLiteralInKnowledge(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
