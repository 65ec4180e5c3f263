use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relations are cyclic: `{0}` <= `{1}` and `{1}` <= `{0}` violate antisymmetry")]
    Antisymmetry(String, String),
    #[error("poset has no elements")]
    EmptyPoset,
    #[error("subset is empty")]
    EmptySubset,
    #[error("index {index} out of range for a poset with {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("composite of consecutive differentials is nonzero: {0}")]
    NonzeroComposite(String),
    #[error("map does not commute with the differentials at degree {0}")]
    NotChainMap(usize),
    #[error(
        "diagram is not functorial: {top} -> {left} -> {bottom} and {top} -> {right} -> {bottom} disagree"
    )]
    NotFunctorial {
        top: String,
        left: String,
        right: String,
        bottom: String,
    },
    #[error("subset {0} is not open (not downward closed)")]
    NotOpen(String),
    #[error("missing {0}")]
    Missing(String),
    #[error("invalid total order: {0}")]
    InvalidOrder(String),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
