//! Oracles shared by the integration tests.

#![allow(dead_code)]

use hstrip_core::heis::{FrameDir, Point1};
use statrs::function::gamma::gamma;

/// `∫₀¹(1−τ²)^{1/4}dτ = ½Γ(½)Γ(5/4)/Γ(7/4)`.
pub fn omega_oracle() -> f64 {
    0.5 * gamma(0.5) * gamma(1.25) / gamma(1.75)
}

/// `∫₋₁¹(1−τ²)^{3/4}dτ = B(½, 7/4)`.
pub fn beta_three_quarters() -> f64 {
    statrs::function::beta::beta(0.5, 1.75)
}

/// `p · exp(s V)`: the point reached after time `s` along the flow of the
/// left-invariant field `V`.
pub fn flow(p: &Point1, dir: FrameDir, s: f64) -> Point1 {
    let step = match dir {
        FrameDir::X(_) => Point1::xyt(s, 0.0, 0.0),
        FrameDir::Y(_) => Point1::xyt(0.0, s, 0.0),
        FrameDir::T => Point1::xyt(0.0, 0.0, s),
    };
    p.multiply(&step)
}

/// Central difference of `f` along the flow of `dir` at `p`.
pub fn frame_fd(f: &dyn Fn(&Point1) -> f64, p: &Point1, dir: FrameDir, h: f64) -> f64 {
    (f(&flow(p, dir, h)) - f(&flow(p, dir, -h))) / (2.0 * h)
}

/// Ratio `E(h)/E(h/2)` where `E` is the largest finite-difference error over
/// the points. About 4 for a correct derivative.
pub fn order_ratio(
    f: &dyn Fn(&Point1) -> f64,
    df: &dyn Fn(&Point1) -> f64,
    points: &[Point1],
    dir: FrameDir,
    h: f64,
) -> f64 {
    let err = |h: f64| {
        points
            .iter()
            .map(|p| (frame_fd(f, p, dir, h) - df(p)).abs())
            .fold(0.0, f64::max)
    };
    err(h) / err(h / 2.0)
}

pub const FRAME: [FrameDir; 3] = [FrameDir::X(0), FrameDir::Y(0), FrameDir::T];

pub fn frame_name(d: FrameDir) -> &'static str {
    match d {
        FrameDir::X(_) => "X1",
        FrameDir::Y(_) => "X2",
        FrameDir::T => "T",
    }
}
