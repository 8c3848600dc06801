//! Points of the Heisenberg group H^n, the group law, non-isotropic dilations
//! and the Korányi–Folland gauge.

use std::ops::Mul;

use crate::error::{Error, Result};

/// A point `(x, y, t)` of H^n with `x, y ∈ R^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<const N: usize> {
    pub x: [f64; N],
    pub y: [f64; N],
    pub t: f64,
}

/// The first Heisenberg group, where all surface machinery lives.
pub type Point1 = Point<1>;

/// Homogeneous structure of H^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupParams {
    n: usize,
}

impl GroupParams {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Homogeneous dimension `Q = 2n + 2`.
    pub fn homogeneous_dimension(&self) -> usize {
        2 * self.n + 2
    }
}

impl<const N: usize> Point<N> {
    pub const fn new(x: [f64; N], y: [f64; N], t: f64) -> Self {
        Self { x, y, t }
    }

    /// Like [`Point::new`] but rejects non-finite coordinates.
    pub fn try_new(x: [f64; N], y: [f64; N], t: f64) -> Result<Self> {
        let p = Self { x, y, t };
        if !p.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite point {p:?}")));
        }
        Ok(p)
    }

    pub const fn origin() -> Self {
        Self {
            x: [0.0; N],
            y: [0.0; N],
            t: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.iter().chain(self.y.iter()).all(|v| v.is_finite())
    }

    pub fn params() -> GroupParams {
        GroupParams { n: N }
    }

    /// Group law `(x,y,t)·(x',y',t') = (x+x', y+y', t+t' + ½(<x,y'> − <x',y>))`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut x = [0.0; N];
        let mut y = [0.0; N];
        let mut symplectic = 0.0;
        for i in 0..N {
            x[i] = self.x[i] + other.x[i];
            y[i] = self.y[i] + other.y[i];
            symplectic += self.x[i] * other.y[i] - other.x[i] * self.y[i];
        }
        Self {
            x,
            y,
            t: self.t + other.t + 0.5 * symplectic,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            x: self.x.map(|v| -v),
            y: self.y.map(|v| -v),
            t: -self.t,
        }
    }

    /// `δ_λ(x, y, t) = (λx, λy, λ²t)`.
    pub fn dilate(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dilation factor must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self {
            x: self.x.map(|v| lambda * v),
            y: self.y.map(|v| lambda * v),
            t: lambda * lambda * self.t,
        })
    }

    /// Squared Euclidean norm of the horizontal part `z = (x, y)`.
    pub fn horizontal_norm_sq(&self) -> f64 {
        self.x.iter().chain(self.y.iter()).map(|v| v * v).sum()
    }

    /// Korányi–Folland gauge `N(z, t) = (|z|⁴ + 16t²)^{1/4}`.
    pub fn gauge_norm(&self) -> f64 {
        let z2 = self.horizontal_norm_sq();
        // hypot keeps the fourth power from overflowing for large coordinates
        z2.hypot(4.0 * self.t).sqrt()
    }

    /// Gauge distance `d(self, center) = N(center⁻¹ · self)`.
    pub fn gauge_distance(&self, center: &Self) -> f64 {
        center.inverse().multiply(self).gauge_norm()
    }
}

impl Point1 {
    pub const fn xyt(x: f64, y: f64, t: f64) -> Self {
        Self {
            x: [x],
            y: [y],
            t,
        }
    }

    pub fn x1(&self) -> f64 {
        self.x[0]
    }

    pub fn y1(&self) -> f64 {
        self.y[0]
    }
}

impl<const N: usize> Default for Point<N> {
    fn default() -> Self {
        Self::origin()
    }
}

impl<const N: usize> Mul for Point<N> {
    type Output = Point<N>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.multiply(&rhs)
    }
}

impl<const N: usize> Mul for &Point<N> {
    type Output = Point<N>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.multiply(rhs)
    }
}

pub fn group_multiply<const N: usize>(p: &Point<N>, q: &Point<N>) -> Point<N> {
    p.multiply(q)
}

pub fn group_inverse<const N: usize>(p: &Point<N>) -> Point<N> {
    p.inverse()
}

pub fn dilate<const N: usize>(lambda: f64, p: &Point<N>) -> Result<Point<N>> {
    p.dilate(lambda)
}

pub fn gauge_norm<const N: usize>(p: &Point<N>) -> f64 {
    p.gauge_norm()
}

pub fn gauge_distance<const N: usize>(p: &Point<N>, p0: &Point<N>) -> f64 {
    p.gauge_distance(p0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn pt_close<const N: usize>(p: &Point<N>, q: &Point<N>, tol: f64) -> bool {
        close(p.t, q.t, tol)
            && p.x.iter().zip(q.x.iter()).all(|(a, b)| close(*a, *b, tol))
            && p.y.iter().zip(q.y.iter()).all(|(a, b)| close(*a, *b, tol))
    }

    #[test]
    fn multiply_examples() {
        let p = Point1::xyt(1.0, 0.0, 0.0);
        let q = Point1::xyt(0.0, 1.0, 0.0);
        assert_eq!(p * q, Point1::xyt(1.0, 1.0, 0.5));
        let r = Point1::xyt(0.3, -2.0, 5.0);
        assert_eq!(r * Point1::origin(), r);
        assert!(pt_close(&(r * r.inverse()), &Point1::origin(), 0.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            Point1::xyt(1.0, 2.0, 3.0).inverse(),
            Point1::xyt(-1.0, -2.0, -3.0)
        );
        assert_eq!(Point1::origin().inverse(), Point1::origin());
    }

    #[test]
    fn dilation_examples() {
        let p = Point1::xyt(1.0, 1.0, 1.0);
        assert_eq!(p.dilate(2.0).unwrap(), Point1::xyt(2.0, 2.0, 4.0));
        assert_eq!(p.dilate(1.0).unwrap(), p);
        assert!(p.dilate(0.0).is_err());
        assert!(p.dilate(-1.0).is_err());
        assert!(p.dilate(f64::NAN).is_err());
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(Point1::xyt(1.0, 0.0, 0.0).gauge_norm(), 1.0);
        assert!(close(Point1::xyt(0.0, 0.0, 1.0).gauge_norm(), 2.0, 1e-15));
        assert!(close(
            Point1::xyt(1.0, 0.0, 1.0).gauge_norm(),
            17f64.powf(0.25),
            1e-15
        ));
        assert!(close(17f64.powf(0.25), 2.030543, 1e-6));
        let p = Point1::xyt(0.4, -1.2, 3.3);
        assert_eq!(p.gauge_distance(&p), 0.0);
        assert_eq!(
            Point1::xyt(1.0, 0.0, 0.0).gauge_distance(&Point1::origin()),
            1.0
        );
    }

    #[test]
    fn params_q() {
        assert_eq!(Point1::params().homogeneous_dimension(), 4);
        assert_eq!(Point::<3>::params().homogeneous_dimension(), 8);
        assert!(GroupParams::new(0).is_err());
    }

    #[test]
    fn try_new_rejects_nan() {
        assert!(Point1::try_new([f64::NAN], [0.0], 0.0).is_err());
        assert!(Point1::try_new([0.0], [0.0], f64::INFINITY).is_err());
        assert!(Point1::try_new([0.0], [1.0], 2.0).is_ok());
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn point2() -> impl Strategy<Value = Point<2>> {
        (coord(), coord(), coord(), coord(), coord())
            .prop_map(|(a, b, c, d, t)| Point::new([a, b], [c, d], t))
    }

    proptest! {
        #[test]
        fn associativity(p in point2(), q in point2(), r in point2()) {
            let lhs = (p * q) * r;
            let rhs = p * (q * r);
            // relative to the magnitude of the summands entering each coordinate
            let zn = |a: &Point<2>| a.horizontal_norm_sq().sqrt();
            let scale = 1.0 + p.t.abs() + q.t.abs() + r.t.abs()
                + zn(&p) * zn(&q) + zn(&p) * zn(&r) + zn(&q) * zn(&r);
            prop_assert!(pt_close(&lhs, &rhs, 1e-14 * scale));
        }

        #[test]
        fn inverse_is_two_sided(p in point2()) {
            prop_assert!(pt_close(&(p * p.inverse()), &Point::origin(), 1e-12));
            prop_assert!(pt_close(&(p.inverse() * p), &Point::origin(), 1e-12));
            prop_assert_eq!(p.inverse().inverse(), p);
        }

        #[test]
        fn dilations_compose(p in point2(), a in 1e-2..1e2f64, b in 1e-2..1e2f64) {
            let lhs = p.dilate(a).unwrap().dilate(b).unwrap();
            let rhs = p.dilate(a * b).unwrap();
            prop_assert!(pt_close(&lhs, &rhs, 1e-12 * (1.0 + rhs.t.abs())));
            let back = p.dilate(a).unwrap().dilate(1.0 / a).unwrap();
            prop_assert!(pt_close(&back, &p, 1e-12));
        }

        #[test]
        fn gauge_homogeneity(p in point2(), lam in 1e-3..1e3f64) {
            let lhs = p.dilate(lam).unwrap().gauge_norm();
            let rhs = lam * p.gauge_norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn gauge_distance_left_invariant_and_symmetric(g in point2(), p in point2(), q in point2()) {
            let d = p.gauge_distance(&q);
            let dg = (g * p).gauge_distance(&(g * q));
            prop_assert!((d - dg).abs() <= 1e-12 * d.max(1.0));
            prop_assert!((d - q.gauge_distance(&p)).abs() <= 1e-12 * d.max(1.0));
        }
    }
}
