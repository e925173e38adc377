use thiserror::Error;

use crate::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported extension degree {0} (expected 1..=16)")]
    UnsupportedDegree(u32),
    #[error("no default modulus for degree {0}; supply one")]
    MissingModulus(u32),
    #[error("modulus {modulus} does not have degree {degree}")]
    ModulusDegree { modulus: String, degree: u32 },
    #[error("modulus {0} is reducible over F_2")]
    Reducible(String),
    #[error("{value} is not an element of a field of degree {degree}")]
    NotInField { value: String, degree: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("malformed bit string {0:?}")]
    BadBitString(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("duplicate component id {0:?}")]
    DuplicateComponent(String),
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("component index {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("letter {letter} out of range for component {component:?} of rank {rank}")]
    LetterOutOfRange { component: String, letter: i32, rank: u32 },
    #[error("group elements over different free products")]
    SpecMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown generator {0:?}")]
    UnknownChord(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("label {0} is not a copy label of this DGA")]
    UnknownLabel(Label),
    #[error("the label subset is empty")]
    EmptySubset,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not an augmentation: {0}")]
    NotAugmentation(String),
    #[error("constant term survives in the twisted differential of {0:?}")]
    ConstantTerm(String),
    #[error("twisted differential does not square to zero on {0:?}")]
    TwistNotDifferential(String),
    #[error("chain map check failed: {0}")]
    ChainMap(String),
    #[error("the system has no DGA for copy subset {0:?}")]
    MissingSubset(Vec<Label>),
    #[error("insufficient copies: {0}")]
    InsufficientCopies(String),
    #[error("w-class is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("complex is not a differential: {0}")]
    NotDifferential(String),
    #[error("augmentation index {index} out of range ({count} augmentations)")]
    AugmentationIndex { index: usize, count: usize },
    #[error("{0}")]
    Contract(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
