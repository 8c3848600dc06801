//! Finite-difference oracles and sample generators for unit tests.

use crate::heis::frame::{Coord, ScalarField};
use crate::heis::point::{Point, Point1};
use crate::rng::SplitMix64;

pub fn shifted<const N: usize>(p: &Point<N>, c: Coord, h: f64) -> Point<N> {
    let mut q = *p;
    match c {
        Coord::X(i) => q.x[i] += h,
        Coord::Y(i) => q.y[i] += h,
        Coord::T => q.t += h,
    }
    q
}

pub fn central_partial<const N: usize, F: ScalarField<N>>(f: &F, p: &Point<N>, c: Coord, h: f64) -> f64 {
    let plus = f.value(&shifted(p, c, h)).unwrap();
    let minus = f.value(&shifted(p, c, -h)).unwrap();
    (plus - minus) / (2.0 * h)
}

/// `|err(h)| / |err(h/2)|`; close to 4 for a second-order scheme.
pub fn fd_order_ratio(err: impl Fn(f64) -> f64, h: f64) -> f64 {
    err(h).abs() / err(h / 2.0).abs()
}

pub fn grid_points(count: usize, seed: u64) -> Vec<Point1> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| Point1::xyt(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)))
        .collect()
}
