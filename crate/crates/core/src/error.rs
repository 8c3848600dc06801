use thiserror::Error;

use crate::quadrature::QuadratureError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A field or operator was evaluated where it is not defined, e.g. a
    /// derivative of the gauge distance at its center.
    #[error("outside field domain: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The horizontal normal vanishes (or is below tolerance) at this point.
    #[error("characteristic point at (x, y, t) = ({x}, {y}, {t})")]
    Characteristic { x: f64, y: f64, t: f64 },

    #[error("defining function has vanishing gradient at (x, y, t) = ({x}, {y}, {t})")]
    DegenerateDefiningFunction { x: f64, y: f64, t: f64 },

    /// G' < 0 somewhere on the sampled interval.
    #[error("graph function is decreasing at t = {t} (G'(t) = {derivative})")]
    NonMonotoneGraph { t: f64, derivative: f64 },

    #[error("parameter t = {t} lies outside the graph interval [{lo}, {hi}]")]
    OutsideInterval { t: f64, lo: f64, hi: f64 },

    /// The gauge ball's t-extent [t0 - r^2/4, t0 + r^2/4] is not contained in I.
    #[error("ball of radius {r} about t0 = {t0} exits the strip domain [{lo}, {hi}]")]
    BallExitsDomain { t0: f64, r: f64, lo: f64, hi: f64 },

    #[error("center ({x0}, {y0}, {t0}) is off the t-axis; monotonicity only covers centers (0, 0, t0)")]
    OffAxisCenter { x0: f64, y0: f64, t0: f64 },

    #[error("test function support touches the boundary of the chart domain: {0}")]
    SupportTouchesBoundary(String),

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}
