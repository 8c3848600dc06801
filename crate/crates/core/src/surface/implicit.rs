//! Level-set surfaces `{φ = 0}` in H^1 and their horizontal Gauss map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heis::{frame_derivative, frame_derivative2, Coord, FrameDir, HorizontalVector, Point1, ScalarField};

/// Default relative tolerance for the characteristic test.
pub const CHARACTERISTIC_TOL: f64 = 1e-10;

/// Frame derivatives of the defining function: `p = X₁φ`, `q = X₂φ`, `ω = Tφ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalComponents {
    pub p: f64,
    pub q: f64,
    pub w: f64,
}

/// Horizontal Gauss map data at a non-characteristic point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameData {
    pub pbar: f64,
    pub qbar: f64,
    /// `ω̄ = Tφ / |∇_Hφ|`.
    pub wbar: f64,
    /// `|∇_Hφ|`; the H-perimeter density in a chart where `|∂φ/∂x| = 1`.
    pub w_density: f64,
    /// Non-unit horizontal normal `pX₁ + qX₂`.
    #[serde(skip)]
    pub n_h: HorizontalVector<1>,
}

impl FrameData {
    /// Unit horizontal normal `ν^H = p̄X₁ + q̄X₂`.
    pub fn nu(&self) -> HorizontalVector<1> {
        HorizontalVector::pair(self.pbar, self.qbar)
    }
}

/// `(ν^H)^⊥ = q̄X₁ − p̄X₂`.
pub fn nu_perp(fd: &FrameData) -> HorizontalVector<1> {
    HorizontalVector::pair(fd.qbar, -fd.pbar)
}

/// The zero set of `phi`, oriented by `∇φ`.
#[derive(Debug, Clone, Copy)]
pub struct ImplicitSurface<F> {
    phi: F,
}

impl<F: ScalarField<1>> ImplicitSurface<F> {
    pub fn new(phi: F) -> Self {
        Self { phi }
    }

    pub fn phi(&self) -> &F {
        &self.phi
    }

    pub fn normal_components(&self, p: &Point1) -> Result<NormalComponents> {
        Ok(NormalComponents {
            p: frame_derivative(&self.phi, FrameDir::X(0), p)?,
            q: frame_derivative(&self.phi, FrameDir::Y(0), p)?,
            w: frame_derivative(&self.phi, FrameDir::T, p)?,
        })
    }

    /// `W = |∇_Hφ|`.
    pub fn angle_function(&self, p: &Point1) -> Result<f64> {
        let n = self.normal_components(p)?;
        Ok(n.p.hypot(n.q))
    }

    /// `|∇_Hφ| < tol·|∇φ|`.
    pub fn is_characteristic(&self, p: &Point1, tol: f64) -> Result<bool> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        let w = self.angle_function(p)?;
        let g = [Coord::X(0), Coord::Y(0), Coord::T]
            .iter()
            .map(|&c| self.phi.partial(p, c))
            .collect::<Result<Vec<_>>>()?;
        let full = g[0].hypot(g[1]).hypot(g[2]);
        if full == 0.0 {
            return Err(Error::DegenerateDefiningFunction {
                x: p.x1(),
                y: p.y1(),
                t: p.t,
            });
        }
        Ok(w < tol * full)
    }

    pub fn horizontal_gauss_map(&self, p: &Point1) -> Result<FrameData> {
        if self.is_characteristic(p, CHARACTERISTIC_TOL)? {
            return Err(Error::Characteristic {
                x: p.x1(),
                y: p.y1(),
                t: p.t,
            });
        }
        let n = self.normal_components(p)?;
        let w = n.p.hypot(n.q);
        Ok(FrameData {
            pbar: n.p / w,
            qbar: n.q / w,
            wbar: n.w / w,
            w_density: w,
            n_h: HorizontalVector::pair(n.p, n.q),
        })
    }

    /// `H = X₁p̄ + X₂q̄` with `p̄, q̄` extended off the surface as functions of `∇_Hφ`.
    pub fn h_mean_curvature(&self, p: &Point1) -> Result<f64> {
        let fd = self.horizontal_gauss_map(p)?;
        let (a, b) = fd.n_h.as_pair();
        let w = fd.w_density;
        let (x, y) = (FrameDir::X(0), FrameDir::Y(0));
        let d = |outer, inner| frame_derivative2(&self.phi, outer, inner, p);
        let (x1p, x2q) = (d(x, x)?, d(y, y)?);
        let (x1q, x2p) = (d(x, y)?, d(y, x)?);
        let x1w = (a * x1p + b * x1q) / w;
        let x2w = (a * x2p + b * x2q) / w;
        Ok((x1p + x2q) / w - (a * x1w + b * x2w) / (w * w))
    }
}

/// `φ = a·x + b·y − c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerticalPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl VerticalPlane {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if a == 0.0 && b == 0.0 {
            return Err(Error::InvalidParameter("vertical plane needs (a, b) ≠ 0".into()));
        }
        Ok(Self { a, b, c })
    }

    /// Point with in-plane coordinate `u` and height `t`.
    pub fn chart(&self, u: f64, t: f64) -> Point1 {
        let n2 = self.a * self.a + self.b * self.b;
        let (x0, y0) = (self.a * self.c / n2, self.b * self.c / n2);
        let s = n2.sqrt();
        Point1::xyt(x0 - u * self.b / s, y0 + u * self.a / s, t)
    }
}

impl ScalarField<1> for VerticalPlane {
    fn value(&self, p: &Point1) -> Result<f64> {
        Ok(self.a * p.x1() + self.b * p.y1() - self.c)
    }
    fn partial(&self, _p: &Point1, c: Coord) -> Result<f64> {
        Ok(match c {
            Coord::X(_) => self.a,
            Coord::Y(_) => self.b,
            Coord::T => 0.0,
        })
    }
    fn partial2(&self, _p: &Point1, _a: Coord, _b: Coord) -> Result<f64> {
        Ok(0.0)
    }
}

/// `φ = x² + y² − R²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    pub radius: f64,
}

impl Cylinder {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { radius })
    }

    pub fn chart(&self, theta: f64, t: f64) -> Point1 {
        Point1::xyt(self.radius * theta.cos(), self.radius * theta.sin(), t)
    }
}

impl ScalarField<1> for Cylinder {
    fn value(&self, p: &Point1) -> Result<f64> {
        Ok(p.x1() * p.x1() + p.y1() * p.y1() - self.radius * self.radius)
    }
    fn partial(&self, p: &Point1, c: Coord) -> Result<f64> {
        Ok(match c {
            Coord::X(_) => 2.0 * p.x1(),
            Coord::Y(_) => 2.0 * p.y1(),
            Coord::T => 0.0,
        })
    }
    fn partial2(&self, _p: &Point1, a: Coord, b: Coord) -> Result<f64> {
        Ok(match (a, b) {
            (Coord::X(_), Coord::X(_)) | (Coord::Y(_), Coord::Y(_)) => 2.0,
            _ => 0.0,
        })
    }
}
