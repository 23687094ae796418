use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("unsupported field of order {0}: only GF(p) and GF(2^e) with q <= 65536 are supported")]
    UnsupportedField(u64),
    #[error("{value} is not an element of GF({order})")]
    InvalidElement { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate abscissa {0} in interpolation points")]
    DuplicateAbscissa(u32),
    #[error("interpolation needs at least one point")]
    NoPoints,

    #[error("GF({order}) has no multiplicative or additive subgroup of size {size}")]
    NoSubgroup { order: u32, size: usize },
    #[error("requested {requested} cosets but only {available} are available")]
    TooManyBlocks { requested: usize, available: usize },
    #[error("polynomial is not constant on block {block} (element {element})")]
    NotConstantOnBlocks { block: usize, element: u32 },

    #[error("s = 1 not supported: n mod (r+1) must not equal 1")]
    SEqualsOne,
    #[error("field too small: need {needed} evaluation points, GF({order}) provides {available}")]
    FieldTooSmall {
        order: u32,
        needed: usize,
        available: usize,
    },
    #[error("rate bound violated: k = {k} exceeds n - ceil(n/(r+1)) = {max}")]
    RateBoundViolated { k: usize, max: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("received word is not consistent with any codeword")]
    InconsistentWord,
    #[error("erasure pattern {erased:?} is not recoverable")]
    Unrecoverable { erased: Vec<usize> },

    #[error("budget exceeded: {required} enumerations required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("invalid code spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
