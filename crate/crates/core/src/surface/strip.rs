//! Graphical strips `S = {x = yG(t)}` with `G' ≥ 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heis::{Coord, HorizontalVector, Point1, ScalarField};
use crate::surface::graph::{validate_graphical_strip, GraphFunction, StripCertificate};
use crate::surface::implicit::{FrameData, ImplicitSurface};

/// Grid size used by [`GraphicalStrip::new`].
pub const DEFAULT_VALIDATION_SAMPLES: usize = 4097;

/// Defining function `φ = x − yG(t)`, defined for `t ∈ I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripDefiningFunction {
    g: GraphFunction,
}

impl StripDefiningFunction {
    fn jet(&self, p: &Point1) -> Result<[f64; 3]> {
        self.g.jet(p.t)
    }
}

impl ScalarField<1> for StripDefiningFunction {
    fn value(&self, p: &Point1) -> Result<f64> {
        let [g, _, _] = self.jet(p)?;
        Ok(p.x1() - p.y1() * g)
    }

    fn partial(&self, p: &Point1, c: Coord) -> Result<f64> {
        let [g, dg, _] = self.jet(p)?;
        Ok(match c {
            Coord::X(_) => 1.0,
            Coord::Y(_) => -g,
            Coord::T => -p.y1() * dg,
        })
    }

    fn partial2(&self, p: &Point1, a: Coord, b: Coord) -> Result<f64> {
        let [_, dg, d2g] = self.jet(p)?;
        Ok(match (a, b) {
            (Coord::Y(_), Coord::T) | (Coord::T, Coord::Y(_)) => -dg,
            (Coord::T, Coord::T) => -p.y1() * d2g,
            _ => 0.0,
        })
    }
}

/// A validated graphical strip.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphicalStrip {
    g: GraphFunction,
    certificate: StripCertificate,
}

impl GraphicalStrip {
    pub fn new(g: GraphFunction) -> Result<Self> {
        Self::with_samples(g, DEFAULT_VALIDATION_SAMPLES)
    }

    pub fn with_samples(g: GraphFunction, samples: usize) -> Result<Self> {
        let certificate = validate_graphical_strip(&g, samples)?;
        Ok(Self { g, certificate })
    }

    pub fn graph(&self) -> &GraphFunction {
        &self.g
    }

    pub fn certificate(&self) -> &StripCertificate {
        &self.certificate
    }

    pub fn is_strict(&self) -> bool {
        self.certificate.is_strict()
    }

    pub fn defining_function(&self) -> StripDefiningFunction {
        StripDefiningFunction { g: self.g }
    }

    pub fn implicit(&self) -> ImplicitSurface<StripDefiningFunction> {
        ImplicitSurface::new(self.defining_function())
    }

    /// `(y, t) ↦ (yG(t), y, t)`.
    pub fn chart(&self, y: f64, t: f64) -> Result<Point1> {
        let g = self.g.value(t)?;
        Ok(Point1::xyt(y * g, y, t))
    }

    /// `W = (1 + y²G'/2)·√(1+G²)`, the H-perimeter density in `dy dt`.
    pub fn perimeter_density(&self, y: f64, t: f64) -> Result<f64> {
        let [g, dg, _] = self.g.jet(t)?;
        Ok(density(y, g, dg))
    }

    /// Gauss map at the chart point `(y, t)` from the closed forms
    /// `p̄ = 1/√(1+G²)`, `q̄ = −G/√(1+G²)`, `ω̄ = −yG'/(√(1+G²)(1 + y²G'/2))`.
    pub fn frame_data(&self, y: f64, t: f64) -> Result<FrameData> {
        let [g, dg, _] = self.g.jet(t)?;
        let s = g.hypot(1.0);
        let stretch = 1.0 + 0.5 * y * y * dg;
        let x = y * g;
        Ok(FrameData {
            pbar: 1.0 / s,
            qbar: -g / s,
            wbar: -y * dg / (s * stretch),
            w_density: s * stretch,
            n_h: HorizontalVector::pair(stretch, -g - 0.5 * x * y * dg),
        })
    }

    /// The strip `δ_λ(S)`, with profile `G(t/λ²)`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        Self::with_samples(self.g.dilated(lambda)?, self.certificate.samples)
    }
}

#[inline]
pub(crate) fn density(y: f64, g: f64, dg: f64) -> f64 {
    (1.0 + 0.5 * y * y * dg) * g.hypot(1.0)
}

/// Built-in surfaces used by the identity suites.
#[derive(Debug, Clone, PartialEq)]
pub enum TestSurface {
    Strip(GraphicalStrip),
    Plane(crate::surface::VerticalPlane),
    Cylinder(crate::surface::Cylinder),
}

/// Defining function of a [`TestSurface`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestSurfaceField {
    Strip(StripDefiningFunction),
    Plane(crate::surface::VerticalPlane),
    Cylinder(crate::surface::Cylinder),
}

impl ScalarField<1> for TestSurfaceField {
    fn value(&self, p: &Point1) -> Result<f64> {
        match self {
            Self::Strip(f) => f.value(p),
            Self::Plane(f) => f.value(p),
            Self::Cylinder(f) => f.value(p),
        }
    }
    fn partial(&self, p: &Point1, c: Coord) -> Result<f64> {
        match self {
            Self::Strip(f) => f.partial(p, c),
            Self::Plane(f) => f.partial(p, c),
            Self::Cylinder(f) => f.partial(p, c),
        }
    }
    fn partial2(&self, p: &Point1, a: Coord, b: Coord) -> Result<f64> {
        match self {
            Self::Strip(f) => f.partial2(p, a, b),
            Self::Plane(f) => f.partial2(p, a, b),
            Self::Cylinder(f) => f.partial2(p, a, b),
        }
    }
}

impl TestSurface {
    pub fn name(&self) -> String {
        match self {
            Self::Strip(s) => format!("strip[{}]", s.graph()),
            Self::Plane(p) => format!("plane[{}x+{}y={}]", p.a, p.b, p.c),
            Self::Cylinder(c) => format!("cylinder[R={}]", c.radius),
        }
    }

    pub fn field(&self) -> TestSurfaceField {
        match self {
            Self::Strip(s) => TestSurfaceField::Strip(s.defining_function()),
            Self::Plane(p) => TestSurfaceField::Plane(*p),
            Self::Cylinder(c) => TestSurfaceField::Cylinder(*c),
        }
    }

    pub fn implicit(&self) -> ImplicitSurface<TestSurfaceField> {
        ImplicitSurface::new(self.field())
    }

    pub fn is_minimal(&self) -> bool {
        !matches!(self, Self::Cylinder(_))
    }

    /// Surface point for chart parameters `(u, v) ∈ [−1, 1]²` scaled by `extent`;
    /// `v` always maps to height `t` (clamped into the strip interval).
    pub fn sample(&self, u: f64, v: f64, extent: f64) -> Result<Point1> {
        if !(u.abs() <= 1.0 && v.abs() <= 1.0) {
            return Err(Error::InvalidParameter(format!("chart parameters ({u}, {v}) outside [-1, 1]²")));
        }
        match self {
            Self::Strip(s) => {
                let i = s.graph().interval();
                let (lo, hi) = (i.lo.max(-extent), i.hi.min(extent));
                let t = lo + 0.5 * (v + 1.0) * (hi - lo);
                s.chart(u * extent, t)
            }
            Self::Plane(p) => Ok(p.chart(u * extent, v * extent)),
            Self::Cylinder(c) => Ok(c.chart(u * std::f64::consts::PI, v * extent)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::surface::graph::Interval;

    fn families() -> Vec<GraphFunction> {
        vec![
            GraphFunction::zero(),
            GraphFunction::linear(1.0, 0.0),
            GraphFunction::linear(0.5, -0.3),
            GraphFunction::arctan(1.0),
            GraphFunction::cubic(0.4),
            GraphFunction::tanh(2.0),
        ]
    }

    #[test]
    fn strip_t_examples() {
        let s = GraphicalStrip::new(GraphFunction::linear(1.0, 0.0)).unwrap();
        let p = s.chart(2.0, 1.0).unwrap();
        assert_eq!(p, Point1::xyt(2.0, 2.0, 1.0));
        assert_eq!(s.chart(0.0, -4.0).unwrap(), Point1::xyt(0.0, 0.0, -4.0));
        let imp = s.implicit();
        let n = imp.normal_components(&p).unwrap();
        assert_eq!((n.p, n.q, n.w), (3.0, -3.0, -2.0));
        let w = imp.angle_function(&p).unwrap();
        assert!((w - 3.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!((w - 4.242641).abs() < 1e-6);
        assert!((s.perimeter_density(2.0, 1.0).unwrap() - w).abs() < 1e-14);
        let fd = imp.horizontal_gauss_map(&p).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((fd.pbar - h).abs() < 1e-15 && (fd.qbar + h).abs() < 1e-15);
        assert!((fd.wbar + 0.471405).abs() < 1e-6);
        assert!(!imp.is_characteristic(&p, 1e-10).unwrap());
    }

    #[test]
    fn zero_strip_density_is_one() {
        let s = GraphicalStrip::new(GraphFunction::zero()).unwrap();
        assert!(!s.is_strict());
        for &(y, t) in &[(0.0, 0.0), (3.0, -2.0), (-1.5, 7.0)] {
            assert_eq!(s.perimeter_density(y, t).unwrap(), 1.0);
        }
    }

    #[test]
    fn outside_interval_is_rejected() {
        let g = GraphFunction::arctan(1.0).with_interval(Interval::new(-1.0, 1.0).unwrap());
        let s = GraphicalStrip::new(g).unwrap();
        assert!(matches!(s.chart(0.0, 2.0), Err(Error::OutsideInterval { .. })));
        assert!(s.perimeter_density(0.0, -1.5).is_err());
        assert!(s.implicit().normal_components(&Point1::xyt(0.0, 0.0, 3.0)).is_err());
        assert!(GraphicalStrip::new(GraphFunction::linear(-1.0, 0.0)).is_err());
    }

    #[test]
    fn implicit_and_closed_form_agree() {
        let mut rng = SplitMix64::new(99);
        for g in families() {
            let s = GraphicalStrip::new(g).unwrap();
            let imp = s.implicit();
            for _ in 0..1000 {
                let (y, t) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
                let p = s.chart(y, t).unwrap();
                assert!(s.defining_function().value(&p).unwrap().abs() == 0.0);
                let a = imp.horizontal_gauss_map(&p).unwrap();
                let b = s.frame_data(y, t).unwrap();
                let tol = 1e-12 * (1.0 + b.w_density);
                assert!((a.pbar - b.pbar).abs() < 1e-12, "{g}");
                assert!((a.qbar - b.qbar).abs() < 1e-12, "{g}");
                assert!((a.wbar - b.wbar).abs() < 1e-12, "{g}");
                assert!((a.w_density - b.w_density).abs() < tol, "{g}");
                assert!((a.n_h - b.n_h).norm() < tol, "{g}");
                assert!((a.pbar.powi(2) + a.qbar.powi(2) - 1.0).abs() < 1e-14);
                assert!(imp.normal_components(&p).unwrap().p >= 1.0);
                assert!(b.w_density >= 1.0);
                // x q̄ − y p̄ = −y√(1+G²) and x p̄ + y q̄ = 0
                let gt = g.value(t).unwrap();
                assert!((p.x1() * b.qbar - y * b.pbar + y * gt.hypot(1.0)).abs() < 1e-12 * (1.0 + y.abs() * gt.abs()));
                assert!((p.x1() * b.pbar + y * b.qbar).abs() < 1e-12 * (1.0 + y.abs() * gt.abs()));
            }
        }
    }

    #[test]
    fn strips_are_h_minimal() {
        let mut rng = SplitMix64::new(5);
        for g in families() {
            let s = GraphicalStrip::new(g).unwrap();
            let imp = s.implicit();
            let mut worst: f64 = 0.0;
            for _ in 0..10_000 {
                let p = s.chart(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)).unwrap();
                worst = worst.max(imp.h_mean_curvature(&p).unwrap().abs());
            }
            assert!(worst < 1e-10, "{g}: max |H| = {worst}");
        }
    }

    #[test]
    fn dilated_strip_is_image_of_strip() {
        let s = GraphicalStrip::new(GraphFunction::tanh(1.0)).unwrap();
        let d = s.dilated(1.7).unwrap();
        let mut rng = SplitMix64::new(8);
        for _ in 0..100 {
            let p = s.chart(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)).unwrap();
            let q = p.dilate(1.7).unwrap();
            assert!(d.defining_function().value(&q).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn test_surfaces_sample_on_surface() {
        let surfaces = [
            TestSurface::Strip(GraphicalStrip::new(GraphFunction::cubic(1.0)).unwrap()),
            TestSurface::Plane(crate::surface::VerticalPlane::new(0.6, 0.8, 0.5).unwrap()),
            TestSurface::Cylinder(crate::surface::Cylinder::new(1.5).unwrap()),
        ];
        let mut rng = SplitMix64::new(1);
        for s in &surfaces {
            for _ in 0..100 {
                let p = s.sample(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 2.0).unwrap();
                assert!(s.field().value(&p).unwrap().abs() < 1e-13, "{}", s.name());
            }
        }
        assert!(surfaces[0].sample(1.5, 0.0, 1.0).is_err());
    }
}
