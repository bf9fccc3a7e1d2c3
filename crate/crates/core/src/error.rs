use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("cover `{0}` -> `{1}` is implied by transitivity")]
    NotHasse(String, String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset is not an upper semilattice")]
    NotSemilattice,
    #[error("distributivity is only defined for upper semilattices")]
    DistributivityRequiresSemilattice,
    #[error("search budget exceeded: {size} candidates, budget {budget}")]
    SearchBudgetExceeded { size: usize, budget: usize },
    #[error("map is not monotone: `{0}` <= `{1}` but images are unrelated")]
    NotMonotone(String, String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate {value} at parent `{parent}` is outside (-1, 0]")]
    ValueOutOfRange { parent: String, value: String },
    #[error("`{0}` is not a parent of `{1}`")]
    NotAParent(String, String),
    #[error("support of the point at `{0}` has no ancestor")]
    SupportNoAncestor(String),
    #[error("`{0}` is not below `{1}`")]
    NotRelated(String, String),
    #[error("`{0}` is not a sup of the bases")]
    NotASup(String),
    #[error("translated coordinate at `{0}` reaches -1")]
    CoordinateHitMinusOne(String),
    #[error("grid would have {size} elements, cap is {cap}")]
    GridTooLarge { size: usize, cap: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("matrix for `{0}` -> `{1}` has the wrong shape")]
    ShapeMismatch(String, String),
    #[error("functor is not functorial along `{0}` <= `{1}`")]
    NotFunctorial(String, String),
    #[error("transformation is not natural along `{0}` -> `{1}`")]
    NotNatural(String, String),
    #[error("Koszul homology in degree {degree} at `{element}` is not certified to equal the Betti number")]
    KoszulValidityUnknown { element: String, degree: usize },
    #[error("sequence is not exact at `{0}`")]
    NotExact(String),
    #[error("functor is not free")]
    NotFree,
    #[error("subset functor is empty at `{0}`")]
    EmptyValue(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
