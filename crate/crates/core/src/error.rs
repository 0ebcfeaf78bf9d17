use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("raster too small: {0}")]
    RasterSize(String),

    #[error("pixel ({x}, {y}) too close to the raster border (need {margin}px margin)")]
    Margin { x: usize, y: usize, margin: usize },

    #[error("point ({x:.4}, {y:.4}) outside raster extent")]
    OutOfBounds { x: f64, y: f64 },

    #[error("camera pose error: {0}")]
    Pose(String),

    #[error("shape error: expected {expected}, got {got}")]
    Shape { expected: String, got: String },

    #[error("training error: {0}")]
    Training(String),

    #[error("no grip candidates: {0}")]
    EmptyPlan(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
