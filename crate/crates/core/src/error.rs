use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({x}, {y}) is outside the mesh")]
    PointOutsideMesh { x: f64, y: f64 },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("singular mass matrix on element {element}")]
    SingularMassMatrix { element: usize },
    #[error("invalid B-spline order {order} (need at least {min})")]
    InvalidOrder { order: usize, min: usize },
    #[error("singular moment matrix for k={k}, spline order {order}")]
    SingularMomentMatrix { k: usize, order: usize },
    #[error("filter support leaves the domain at ({x}, {y})")]
    SupportExitsDomain { x: f64, y: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("mesh mismatch: {0}")]
    MeshMismatch(String),
    #[error("field is constant; cannot normalize")]
    ConstantField,
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("domain is not simply connected: {0}")]
    NotSimplyConnected(String),
    #[error("simplification did not converge after {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid demo mesh parameters: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}
