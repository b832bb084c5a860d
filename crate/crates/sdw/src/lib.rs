//! Solvers for the max-min separation measure between coordinated traversals
//! ("flipped Fréchet") and the social distance width of polygons, trees, and
//! graphs, together with adversarial instance generators and independent
//! brute-force oracles used by the test suites.

pub mod discrete;
pub mod ff1d;
pub mod freespace;
pub mod generators;
pub mod geom;
pub mod graph;
pub mod oracles;
pub mod polygon;
pub mod report;
pub mod tree;

pub use geom::{ClosedCurve, PolylineCurve, Schedule, SeparationMetric};

/// Absolute tolerance for geometric comparisons.
pub const EPS_GEOM: f64 = 1e-9;

/// Bisection tolerance for optimized separation values.
pub const EPS_VAL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parameter {0} out of range [{1}, {2}]")]
    ParamOutOfRange(f64, f64, f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("point ({0}, {1}) outside polygon")]
    OutsidePolygon(f64, f64),
    #[error("red path is not geodesic: length {len} vs shortest {shortest}")]
    NotGeodesic { len: f64, shortest: f64 },
    #[error("blue start must lie on the polygon boundary")]
    BlueStartNotOnBoundary,
    #[error("state space cap exceeded: {0} states")]
    StateCapExceeded(usize),
    #[error("schedule and domain do not match: {0}")]
    ScheduleMismatch(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
