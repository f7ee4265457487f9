use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {u} lists {v} as a neighbour but not vice versa")]
    AsymmetricAdjacency { u: usize, v: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} has a loop or a repeated neighbour")]
    LoopOrMultiEdge(usize),
    #[error("rotation system is not a plane embedding (Euler residual {residual})")]
    EmbeddingInconsistent { residual: i64 },
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexIndexOutOfRange { index: usize, n: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed record: {0}")]
    MalformedRecord(String),
    #[error("truncated record")]
    TruncatedRecord,
    #[error("operation needs a verified embedding")]
    UnverifiedEmbedding,
    #[error("face {face} admits no new chord")]
    CannotTriangulate { face: usize },
    #[error("input graph is not triangle-free")]
    NotTriangleFree,
    #[error("graph contains a triangle")]
    ContainsTriangle,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not a triangulation")]
    NotTriangulation,
    #[error("girth {found} is below the required {required}")]
    GirthTooSmall { found: usize, required: usize },
    #[error("protected {requested} vertices with a budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("vertex {0} is burning or already protected")]
    ProtectBurningVertex(usize),
    #[error("strategy violated the round budget: {0}")]
    StrategyBudgetViolation(String),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree { vertex: usize, degree: usize, expected: String },
    #[error("wrong context: {0}")]
    WrongContext(String),
    #[error("operation requires an exact-mode classification")]
    RequiresExactClassification,
    #[error("strategy not applicable: {0}")]
    NotApplicable(String),
    #[error("separator of size {size} is farther than distance {distance}")]
    SeparatorTooLarge { size: usize, distance: usize },
    #[error("vertex {0} has no escape path")]
    NoEscapePath(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("plan integrity check failed: {0}")]
    PlanIntegrity(String),
    #[error("search exceeded its node limit")]
    Timeout,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AsymmetricAdjacency { .. } => "AsymmetricAdjacency",
            Error::Disconnected => "Disconnected",
            Error::LoopOrMultiEdge(_) => "LoopOrMultiEdge",
            Error::EmbeddingInconsistent { .. } => "EmbeddingInconsistent",
            Error::VertexIndexOutOfRange { .. } => "VertexIndexOutOfRange",
            Error::BadParameter(_) => "BadParameter",
            Error::MalformedHeader(_) => "MalformedHeader",
            Error::MalformedRecord(_) => "MalformedRecord",
            Error::TruncatedRecord => "TruncatedRecord",
            Error::UnverifiedEmbedding => "UnverifiedEmbedding",
            Error::CannotTriangulate { .. } => "CannotTriangulate",
            Error::NotTriangleFree => "NotTriangleFree",
            Error::ContainsTriangle => "ContainsTriangle",
            Error::NotTwoConnected => "NotTwoConnected",
            Error::NotTriangulation => "NotTriangulation",
            Error::GirthTooSmall { .. } => "GirthTooSmall",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::ProtectBurningVertex(_) => "ProtectBurningVertex",
            Error::StrategyBudgetViolation(_) => "StrategyBudgetViolation",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::WrongContext(_) => "WrongContext",
            Error::RequiresExactClassification => "RequiresExactClassification",
            Error::NotApplicable(_) => "NotApplicable",
            Error::SeparatorTooLarge { .. } => "SeparatorTooLarge",
            Error::NoEscapePath(_) => "NoEscapePath",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::PlanIntegrity(_) => "PlanIntegrity",
            Error::Timeout => "Timeout",
            Error::Json(_) => "Json",
        }
    }
}
