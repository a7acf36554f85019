use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("root system closure failed: {0}")]
    Closure(String),

    #[error("elements belong to different root systems ({left} vs {right} positive roots)")]
    MismatchedRootSystems { left: usize, right: usize },

    #[error("group of order {order} exceeds the size guard {guard}")]
    GuardExceeded { order: u128, guard: u128 },

    #[error("operation requires an irreducible root system, got {0}")]
    Reducible(String),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("element is not in the parabolic subgroup W_J for J = {0:?}")]
    NotInParabolic(Vec<usize>),

    #[error("malformed cycle notation at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: i64, degree: usize },

    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(u32),

    #[error("signed permutation not in the {ambient} group: {element}")]
    NotInAmbient { ambient: String, element: String },

    #[error("root system {0} has no signed-permutation model (needs a single A, B or D component)")]
    NoPermutationModel(String),

    #[error("degree mismatch: element has degree {element}, model has degree {model}")]
    DegreeMismatch { element: usize, model: usize },

    #[error("root permutation does not come from a signed permutation")]
    NotSignedPermutation,

    #[error("root-system document: {0}")]
    Document(String),

    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),

    #[error("invalid suite configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown example {0:?}")]
    UnknownExample(String),

    #[error("no inverting involution found; the involution set is incomplete")]
    EmptyInvolutionSet,
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;
