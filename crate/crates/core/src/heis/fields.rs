//! The fields built around a center `p0`: the horizontal part `ζ` and the
//! vertical coefficient `f` of the dilation generator, and the gauge
//! distance `ρ = d(·, p0)`.

use crate::error::{Error, Result};
use crate::heis::frame::{frame_derivative, horizontal_gradient, Coord, FrameDir, HorizontalVector, ScalarField};
use crate::heis::point::Point;

/// A horizontal vector field `Σ ζ_k X_k` with analytic frame derivatives of
/// its components.
pub trait HorizontalField<const N: usize> {
    fn value(&self, p: &Point<N>) -> Result<HorizontalVector<N>>;

    /// `dir(ζ_k)` where `k ∈ 0..2n` indexes `X_{k+1}`.
    fn component_derivative(&self, k: usize, dir: FrameDir, p: &Point<N>) -> Result<f64>;

    /// `∇^H ζ_k`.
    fn component_gradient(&self, k: usize, p: &Point<N>) -> Result<HorizontalVector<N>> {
        let mut out = HorizontalVector::zero();
        for i in 0..N {
            out.x[i] = self.component_derivative(k, FrameDir::X(i), p)?;
            out.y[i] = self.component_derivative(k, FrameDir::Y(i), p)?;
        }
        Ok(out)
    }
}

impl<const N: usize, Z: HorizontalField<N> + ?Sized> HorizontalField<N> for &Z {
    fn value(&self, p: &Point<N>) -> Result<HorizontalVector<N>> {
        (**self).value(p)
    }
    fn component_derivative(&self, k: usize, dir: FrameDir, p: &Point<N>) -> Result<f64> {
        (**self).component_derivative(k, dir, p)
    }
}

/// `ζ(p) = Σ (x_i − x_{0,i}) X_i + (y_i − y_{0,i}) X_{n+i}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaField<const N: usize> {
    pub center: Point<N>,
}

impl<const N: usize> ZetaField<N> {
    pub fn new(center: Point<N>) -> Self {
        Self { center }
    }
}

impl<const N: usize> HorizontalField<N> for ZetaField<N> {
    fn value(&self, p: &Point<N>) -> Result<HorizontalVector<N>> {
        let mut v = HorizontalVector::zero();
        for i in 0..N {
            v.x[i] = p.x[i] - self.center.x[i];
            v.y[i] = p.y[i] - self.center.y[i];
        }
        Ok(v)
    }

    fn component_derivative(&self, k: usize, dir: FrameDir, _p: &Point<N>) -> Result<f64> {
        // ζ_k is a coordinate minus a constant: X_j ζ_k = δ_jk, T ζ_k = 0.
        Ok(match dir {
            FrameDir::X(i) if k == i => 1.0,
            FrameDir::Y(i) if k == N + i => 1.0,
            _ => 0.0,
        })
    }
}

/// `f(p) = 2(t − t0) + <x, y0> − <x0, y>`, the T-coefficient of the
/// dilation generator centered at `p0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FField<const N: usize> {
    pub center: Point<N>,
}

impl<const N: usize> FField<N> {
    pub fn new(center: Point<N>) -> Self {
        Self { center }
    }
}

impl<const N: usize> ScalarField<N> for FField<N> {
    fn value(&self, p: &Point<N>) -> Result<f64> {
        let c = &self.center;
        let mut s = 2.0 * (p.t - c.t);
        for i in 0..N {
            s += p.x[i] * c.y[i] - c.x[i] * p.y[i];
        }
        Ok(s)
    }

    fn partial(&self, _p: &Point<N>, coord: Coord) -> Result<f64> {
        Ok(match coord {
            Coord::X(i) => self.center.y[i],
            Coord::Y(i) => -self.center.x[i],
            Coord::T => 2.0,
        })
    }

    fn partial2(&self, _p: &Point<N>, _a: Coord, _b: Coord) -> Result<f64> {
        Ok(0.0)
    }
}

/// Gauge distance to a fixed center, `ρ(p) = N(p0⁻¹ p)`, written as
/// `ρ⁴ = A² + 4B²` with `A = |z − z0|²` and `B = f(p)`.
///
/// Value is defined everywhere; derivatives are undefined at `p = p0` and
/// return [`Error::Domain`] there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoField<const N: usize> {
    pub center: Point<N>,
}

impl<const N: usize> RhoField<N> {
    pub fn new(center: Point<N>) -> Self {
        Self { center }
    }

    fn parts(&self, p: &Point<N>) -> (f64, f64) {
        let c = &self.center;
        let mut a = 0.0;
        let mut b = 2.0 * (p.t - c.t);
        for i in 0..N {
            let dx = p.x[i] - c.x[i];
            let dy = p.y[i] - c.y[i];
            a += dx * dx + dy * dy;
            b += p.x[i] * c.y[i] - c.x[i] * p.y[i];
        }
        (a, b)
    }

    fn rho_of(a: f64, b: f64) -> f64 {
        a.hypot(2.0 * b).sqrt()
    }

    fn nonsingular(&self, p: &Point<N>) -> Result<(f64, f64, f64)> {
        let (a, b) = self.parts(p);
        let rho = Self::rho_of(a, b);
        if rho == 0.0 {
            return Err(Error::Domain(
                "gauge distance is not differentiable at its center".into(),
            ));
        }
        Ok((a, b, rho))
    }

    fn d_a(&self, p: &Point<N>, c: Coord) -> f64 {
        match c {
            Coord::X(i) => 2.0 * (p.x[i] - self.center.x[i]),
            Coord::Y(i) => 2.0 * (p.y[i] - self.center.y[i]),
            Coord::T => 0.0,
        }
    }

    fn d_b(&self, c: Coord) -> f64 {
        match c {
            Coord::X(i) => self.center.y[i],
            Coord::Y(i) => -self.center.x[i],
            Coord::T => 2.0,
        }
    }

    /// `X_1ρ, X_2ρ, Tρ` in the closed form used on H^1:
    /// `X_1ρ = ρ⁻³[(x−x0)|z−z0|² − 2(y−y0)B]`, `X_2ρ = ρ⁻³[(y−y0)|z−z0|² + 2(x−x0)B]`,
    /// `Tρ = 4Bρ⁻³`.
    pub fn frame_closed_form(&self, p: &Point<N>) -> Result<(HorizontalVector<N>, f64)> {
        let (a, b, rho) = self.nonsingular(p)?;
        let inv3 = 1.0 / (rho * rho * rho);
        let mut g = HorizontalVector::zero();
        for i in 0..N {
            let dx = p.x[i] - self.center.x[i];
            let dy = p.y[i] - self.center.y[i];
            g.x[i] = inv3 * (dx * a - 2.0 * dy * b);
            g.y[i] = inv3 * (dy * a + 2.0 * dx * b);
        }
        Ok((g, 4.0 * b * inv3))
    }
}

impl<const N: usize> ScalarField<N> for RhoField<N> {
    fn value(&self, p: &Point<N>) -> Result<f64> {
        let (a, b) = self.parts(p);
        Ok(Self::rho_of(a, b))
    }

    fn partial(&self, p: &Point<N>, c: Coord) -> Result<f64> {
        // ∂ρ = (A ∂A/2 + 2B ∂B) / ρ³
        let (a, b, rho) = self.nonsingular(p)?;
        Ok((0.5 * a * self.d_a(p, c) + 2.0 * b * self.d_b(c)) / (rho * rho * rho))
    }

    fn partial2(&self, p: &Point<N>, c1: Coord, c2: Coord) -> Result<f64> {
        // S = ρ⁴ = A² + 4B²; ∂ρ = ∂S/(4ρ³); ∂²ρ = ∂²S/(4ρ³) − 3 ∂S ∂S/(16ρ⁷)
        let (a, b, rho) = self.nonsingular(p)?;
        let (da1, da2) = (self.d_a(p, c1), self.d_a(p, c2));
        let (db1, db2) = (self.d_b(c1), self.d_b(c2));
        let d2a = match (c1, c2) {
            (Coord::X(i), Coord::X(j)) | (Coord::Y(i), Coord::Y(j)) if i == j => 2.0,
            _ => 0.0,
        };
        let ds1 = 2.0 * a * da1 + 8.0 * b * db1;
        let ds2 = 2.0 * a * da2 + 8.0 * b * db2;
        let d2s = 2.0 * da1 * da2 + 2.0 * a * d2a + 8.0 * db1 * db2;
        let r3 = rho * rho * rho;
        Ok(d2s / (4.0 * r3) - 3.0 * ds1 * ds2 / (16.0 * r3 * r3 * rho))
    }
}

/// Dilation generator centered at `p0` applied to `F` at `p`:
/// `Z_{p0}F(p) = <ζ(p), ∇^H F(p)> + f(p) TF(p)`.
pub fn generator_apply<const N: usize, F: ScalarField<N> + ?Sized>(
    center: &Point<N>,
    field: &F,
    p: &Point<N>,
) -> Result<f64> {
    let zeta = ZetaField::new(*center).value(p)?;
    let f = FField::new(*center).value(p)?;
    let grad = horizontal_gradient(field, p)?;
    Ok(zeta.dot(&grad) + f * frame_derivative(field, FrameDir::T, p)?)
}

/// The Korányi–Folland gauge as a field (the gauge distance to the origin).
pub fn gauge_field<const N: usize>() -> RhoField<N> {
    RhoField::new(Point::origin())
}
