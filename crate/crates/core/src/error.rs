use thiserror::Error;

use crate::semigroup::ElementId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry ({row}, {col}) = {value} is outside 0..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative {
        i: ElementId,
        j: ElementId,
        k: ElementId,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no x with {a}*x = {b}")]
    NoSolution { a: ElementId, b: ElementId },
    #[error("more than one x with {a}*x = {b}")]
    NotUnique { a: ElementId, b: ElementId },
    #[error("operands live on different semigroups")]
    MismatchedCarrier,
    #[error("partition is not compatible with multiplication: {a} ~ {b} but {c} !~ {d}")]
    NotACongruence {
        a: ElementId,
        b: ElementId,
        c: ElementId,
        d: ElementId,
    },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("subset is not closed: {a}*{b} = {product} lies outside it")]
    NotASubsemigroup {
        a: ElementId,
        b: ElementId,
        product: ElementId,
    },
    #[error("the empty semigroup is not a right group")]
    EmptySemigroup,
    #[error("not a right group")]
    NotARightGroup,
    #[error("not a group")]
    NotAGroup,
    #[error("element {0} is not an idempotent")]
    NotAnIdempotent(ElementId),
    #[error("map is not a morphism: f({a}*{b}) != f({a})*f({b})")]
    NotAMorphism { a: ElementId, b: ElementId },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("search space of {candidates} candidate maps exceeds budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("order {n} exceeds the cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("no prekernel: idempotents {e1} and {e2} have distinct images")]
    NoPrekernel { e1: ElementId, e2: ElementId },
    #[error("the acted-on set is empty")]
    EmptySet,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not an action morphism: compatibility fails at g={g}, x={x}")]
    InvalidActionMorphism { g: ElementId, x: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
