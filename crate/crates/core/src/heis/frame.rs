//! Scalar fields with analytic partials and the left-invariant frame
//! `X_i = ∂x_i − (y_i/2)∂t`, `X_{n+i} = ∂y_i + (x_i/2)∂t`, `T = ∂t`
//! acting on them as differential operators.

use std::ops::{Add, Mul, Sub};

use crate::error::Result;
use crate::heis::point::Point;

/// Cartesian coordinate of H^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    X(usize),
    Y(usize),
    T,
}

/// Direction of the left-invariant frame: `X(i)` is `X_i`, `Y(i)` is
/// `X_{n+i}`, `T` is the vertical field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameDir {
    X(usize),
    Y(usize),
    T,
}

impl FrameDir {
    /// Horizontal frame element by flat index `k ∈ 0..2n` (`X_{k+1}`).
    pub fn horizontal<const N: usize>(k: usize) -> Self {
        assert!(k < 2 * N, "horizontal frame index {k} out of range for n = {N}");
        if k < N {
            FrameDir::X(k)
        } else {
            FrameDir::Y(k - N)
        }
    }
}

/// A scalar function on (a domain of) H^n with analytic partial derivatives
/// through second order.
///
/// Implementations return [`crate::Error::Domain`] where the field or one
/// of its derivatives is undefined.
pub trait ScalarField<const N: usize> {
    fn value(&self, p: &Point<N>) -> Result<f64>;
    fn partial(&self, p: &Point<N>, c: Coord) -> Result<f64>;
    fn partial2(&self, p: &Point<N>, a: Coord, b: Coord) -> Result<f64>;
}

impl<const N: usize, F: ScalarField<N> + ?Sized> ScalarField<N> for &F {
    fn value(&self, p: &Point<N>) -> Result<f64> {
        (**self).value(p)
    }
    fn partial(&self, p: &Point<N>, c: Coord) -> Result<f64> {
        (**self).partial(p, c)
    }
    fn partial2(&self, p: &Point<N>, a: Coord, b: Coord) -> Result<f64> {
        (**self).partial2(p, a, b)
    }
}

impl<const N: usize, F: ScalarField<N> + ?Sized> ScalarField<N> for Box<F> {
    fn value(&self, p: &Point<N>) -> Result<f64> {
        (**self).value(p)
    }
    fn partial(&self, p: &Point<N>, c: Coord) -> Result<f64> {
        (**self).partial(p, c)
    }
    fn partial2(&self, p: &Point<N>, a: Coord, b: Coord) -> Result<f64> {
        (**self).partial2(p, a, b)
    }
}

/// Coefficients of a horizontal vector in the orthonormal frame
/// `(X_1, …, X_n, X_{n+1}, …, X_{2n})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizontalVector<const N: usize> {
    pub x: [f64; N],
    pub y: [f64; N],
}

impl<const N: usize> HorizontalVector<N> {
    pub const fn new(x: [f64; N], y: [f64; N]) -> Self {
        Self { x, y }
    }

    pub const fn zero() -> Self {
        Self {
            x: [0.0; N],
            y: [0.0; N],
        }
    }

    /// Coefficient on `X_{k+1}`.
    pub fn component(&self, k: usize) -> f64 {
        if k < N {
            self.x[k]
        } else {
            self.y[k - N]
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            s += self.x[i] * other.x[i] + self.y[i] * other.y[i];
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            x: self.x.map(|v| s * v),
            y: self.y.map(|v| s * v),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(self.y.iter()).all(|v| v.is_finite())
    }
}

impl HorizontalVector<1> {
    pub const fn pair(a: f64, b: f64) -> Self {
        Self { x: [a], y: [b] }
    }

    pub fn as_pair(&self) -> (f64, f64) {
        (self.x[0], self.y[0])
    }
}

impl<const N: usize> Add for HorizontalVector<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            out.x[i] += rhs.x[i];
            out.y[i] += rhs.y[i];
        }
        out
    }
}

impl<const N: usize> Sub for HorizontalVector<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

impl<const N: usize> Mul<HorizontalVector<N>> for f64 {
    type Output = HorizontalVector<N>;
    fn mul(self, rhs: HorizontalVector<N>) -> HorizontalVector<N> {
        rhs.scale(self)
    }
}

/// `(Coord, coefficient)` such that `dir = ∂_coord + coefficient · ∂t`.
fn frame_split<const N: usize>(dir: FrameDir, p: &Point<N>) -> Option<(Coord, f64)> {
    match dir {
        FrameDir::X(i) => Some((Coord::X(i), -0.5 * p.y[i])),
        FrameDir::Y(i) => Some((Coord::Y(i), 0.5 * p.x[i])),
        FrameDir::T => None,
    }
}

/// `∂_c` of the t-coefficient of `dir` (the coefficients are linear).
fn coefficient_slope(dir: FrameDir, c: Coord) -> f64 {
    match (dir, c) {
        (FrameDir::X(i), Coord::Y(j)) if i == j => -0.5,
        (FrameDir::Y(i), Coord::X(j)) if i == j => 0.5,
        _ => 0.0,
    }
}

/// Applies one frame element to a field at `p`.
pub fn frame_derivative<const N: usize, F: ScalarField<N> + ?Sized>(
    field: &F,
    dir: FrameDir,
    p: &Point<N>,
) -> Result<f64> {
    match frame_split(dir, p) {
        Some((c, k)) => Ok(field.partial(p, c)? + k * field.partial(p, Coord::T)?),
        None => field.partial(p, Coord::T),
    }
}

/// Second frame derivative `outer(inner F)` at `p`, from the analytic
/// second partials of the field.
pub fn frame_derivative2<const N: usize, F: ScalarField<N> + ?Sized>(
    field: &F,
    outer: FrameDir,
    inner: FrameDir,
    p: &Point<N>,
) -> Result<f64> {
    // inner F = ∂_b F + k_b ∂_t F with k_b linear in the coordinates.
    // Apply outer = ∂_a + k_a ∂_t (or ∂_t alone).
    let d_inner = |c: Coord| -> Result<f64> {
        match frame_split(inner, p) {
            Some((b, kb)) => Ok(field.partial2(p, c, b)?
                + coefficient_slope(inner, c) * field.partial(p, Coord::T)?
                + kb * field.partial2(p, c, Coord::T)?),
            None => field.partial2(p, c, Coord::T),
        }
    };
    match frame_split(outer, p) {
        Some((a, ka)) => Ok(d_inner(a)? + ka * d_inner(Coord::T)?),
        None => d_inner(Coord::T),
    }
}

/// Ambient horizontal gradient `∇^H F = Σ (X_k F) X_k`.
pub fn horizontal_gradient<const N: usize, F: ScalarField<N> + ?Sized>(
    field: &F,
    p: &Point<N>,
) -> Result<HorizontalVector<N>> {
    let mut out = HorizontalVector::zero();
    for i in 0..N {
        out.x[i] = frame_derivative(field, FrameDir::X(i), p)?;
        out.y[i] = frame_derivative(field, FrameDir::Y(i), p)?;
    }
    Ok(out)
}

/// A field given by closures, handy for one-off polynomial fields.
pub struct FnField<V, D, D2> {
    pub value: V,
    pub partial: D,
    pub partial2: D2,
}

impl<const N: usize, V, D, D2> ScalarField<N> for FnField<V, D, D2>
where
    V: Fn(&Point<N>) -> f64,
    D: Fn(&Point<N>, Coord) -> f64,
    D2: Fn(&Point<N>, Coord, Coord) -> f64,
{
    fn value(&self, p: &Point<N>) -> Result<f64> {
        Ok((self.value)(p))
    }
    fn partial(&self, p: &Point<N>, c: Coord) -> Result<f64> {
        Ok((self.partial)(p, c))
    }
    fn partial2(&self, p: &Point<N>, a: Coord, b: Coord) -> Result<f64> {
        Ok((self.partial2)(p, a, b))
    }
}

/// The coordinate function `p ↦ p[c]`.
#[derive(Debug, Clone, Copy)]
pub struct CoordinateField(pub Coord);

impl<const N: usize> ScalarField<N> for CoordinateField {
    fn value(&self, p: &Point<N>) -> Result<f64> {
        Ok(match self.0 {
            Coord::X(i) => p.x[i],
            Coord::Y(i) => p.y[i],
            Coord::T => p.t,
        })
    }
    fn partial(&self, _p: &Point<N>, c: Coord) -> Result<f64> {
        Ok(if c == self.0 { 1.0 } else { 0.0 })
    }
    fn partial2(&self, _p: &Point<N>, _a: Coord, _b: Coord) -> Result<f64> {
        Ok(0.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantField(pub f64);

impl<const N: usize> ScalarField<N> for ConstantField {
    fn value(&self, _p: &Point<N>) -> Result<f64> {
        Ok(self.0)
    }
    fn partial(&self, _p: &Point<N>, _c: Coord) -> Result<f64> {
        Ok(0.0)
    }
    fn partial2(&self, _p: &Point<N>, _a: Coord, _b: Coord) -> Result<f64> {
        Ok(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::point::Point1;
    use crate::testing::{central_partial, grid_points};

    /// f = x·y·t on H^1.
    fn xyt_field() -> impl ScalarField<1> {
        FnField {
            value: |p: &Point1| p.x[0] * p.y[0] * p.t,
            partial: |p: &Point1, c| match c {
                Coord::X(_) => p.y[0] * p.t,
                Coord::Y(_) => p.x[0] * p.t,
                Coord::T => p.x[0] * p.y[0],
            },
            partial2: |p: &Point1, a, b| match (a, b) {
                (Coord::X(_), Coord::Y(_)) | (Coord::Y(_), Coord::X(_)) => p.t,
                (Coord::X(_), Coord::T) | (Coord::T, Coord::X(_)) => p.y[0],
                (Coord::Y(_), Coord::T) | (Coord::T, Coord::Y(_)) => p.x[0],
                _ => 0.0,
            },
        }
    }

    #[test]
    fn frame_on_coordinates() {
        let p = Point1::xyt(0.7, -1.3, 2.0);
        let x = CoordinateField(Coord::X(0));
        let t = CoordinateField(Coord::T);
        assert_eq!(frame_derivative(&x, FrameDir::X(0), &p).unwrap(), 1.0);
        assert_eq!(frame_derivative(&t, FrameDir::X(0), &p).unwrap(), 1.3 / 2.0);
        assert_eq!(horizontal_gradient(&x, &p).unwrap(), HorizontalVector::pair(1.0, 0.0));
        assert_eq!(
            horizontal_gradient(&t, &p).unwrap(),
            HorizontalVector::pair(1.3 / 2.0, 0.7 / 2.0)
        );
    }

    #[test]
    fn commutator_is_t() {
        let f = xyt_field();
        for p in grid_points(20, 7) {
            let x1x2 = frame_derivative2(&f, FrameDir::X(0), FrameDir::Y(0), &p).unwrap();
            let x2x1 = frame_derivative2(&f, FrameDir::Y(0), FrameDir::X(0), &p).unwrap();
            let tf = frame_derivative(&f, FrameDir::T, &p).unwrap();
            assert!((x1x2 - x2x1 - tf).abs() < 1e-12, "at {p:?}");
        }
    }

    #[test]
    fn commutator_general_n() {
        // f = x_2 y_2 t on H^2: [X_2, X_4] = T
        let f = FnField {
            value: |p: &Point<2>| p.x[1] * p.y[1] * p.t,
            partial: |p: &Point<2>, c| match c {
                Coord::X(1) => p.y[1] * p.t,
                Coord::Y(1) => p.x[1] * p.t,
                Coord::T => p.x[1] * p.y[1],
                _ => 0.0,
            },
            partial2: |p: &Point<2>, a, b| match (a, b) {
                (Coord::X(1), Coord::Y(1)) | (Coord::Y(1), Coord::X(1)) => p.t,
                (Coord::X(1), Coord::T) | (Coord::T, Coord::X(1)) => p.y[1],
                (Coord::Y(1), Coord::T) | (Coord::T, Coord::Y(1)) => p.x[1],
                _ => 0.0,
            },
        };
        let p = Point::new([0.3, 1.1], [-0.4, 2.5], 0.9);
        let a = frame_derivative2(&f, FrameDir::X(1), FrameDir::Y(1), &p).unwrap();
        let b = frame_derivative2(&f, FrameDir::Y(1), FrameDir::X(1), &p).unwrap();
        let t = frame_derivative(&f, FrameDir::T, &p).unwrap();
        assert!((a - b - t).abs() < 1e-13);
        // mixed-index frame elements commute
        let c = frame_derivative2(&f, FrameDir::X(0), FrameDir::Y(1), &p).unwrap();
        let d = frame_derivative2(&f, FrameDir::Y(1), FrameDir::X(0), &p).unwrap();
        assert!((c - d).abs() < 1e-13);
        assert_eq!(FrameDir::horizontal::<2>(3), FrameDir::Y(1));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let f = xyt_field();
        for p in grid_points(15, 3) {
            let g = horizontal_gradient(&f, &p).unwrap();
            let dx = central_partial(&f, &p, Coord::X(0), 1e-5);
            let dy = central_partial(&f, &p, Coord::Y(0), 1e-5);
            let dt = central_partial(&f, &p, Coord::T, 1e-5);
            let fd = HorizontalVector::pair(dx - 0.5 * p.y[0] * dt, dy + 0.5 * p.x[0] * dt);
            assert!((g - fd).norm() < 1e-7 * (1.0 + g.norm()));
        }
    }

    #[test]
    fn vector_algebra() {
        let a = HorizontalVector::pair(3.0, 4.0);
        assert_eq!(a.norm(), 5.0);
        assert_eq!(a.dot(&HorizontalVector::pair(-4.0, 3.0)), 0.0);
        assert_eq!((a - a), HorizontalVector::zero());
        assert_eq!(2.0 * a, HorizontalVector::pair(6.0, 8.0));
        assert_eq!(a.component(1), 4.0);
    }
}
