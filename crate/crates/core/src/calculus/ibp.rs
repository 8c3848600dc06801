//! Integration by parts on strips, checked by quadrature in the `(y, t)`
//! chart, and the cutoff inequality behind the monotonicity argument.

use serde::Serialize;

use crate::calculus::identities::{crucial_quantity, IdentityReport};
use crate::calculus::tangential::{c_from_frame, ty_with_frame, TangentialGradient};
use crate::error::{Error, Result};
use crate::heis::{horizontal_gradient, Coord, Point1, RhoField, ScalarField};
use crate::perimeter::ball_region_integral;
use crate::quadrature::{try_integrate, CompositeRule, Estimate, QuadratureConfig};
use crate::surface::GraphicalStrip;

/// Shape of the monotone bridge of a [`CutoffSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bridge {
    /// `3u² − 2u³`, C¹.
    Cubic,
    /// `6u⁵ − 15u⁴ + 10u³`, C².
    Quintic,
}

/// Non-decreasing cutoff `λ` with `λ = 0` on `s ≤ 0` and `λ = 1` on `s ≥ ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffSpec {
    epsilon: f64,
    bridge: Bridge,
}

impl CutoffSpec {
    pub fn new(epsilon: f64, bridge: Bridge) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("cutoff width must be positive, got {epsilon}")));
        }
        Ok(Self { epsilon, bridge })
    }

    pub fn quintic(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, Bridge::Quintic)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn bridge(&self) -> Bridge {
        self.bridge
    }

    pub fn lambda(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= self.epsilon {
            return 1.0;
        }
        let u = s / self.epsilon;
        match self.bridge {
            Bridge::Cubic => u * u * (3.0 - 2.0 * u),
            Bridge::Quintic => u * u * u * (10.0 + u * (-15.0 + 6.0 * u)),
        }
    }

    pub fn lambda_prime(&self, s: f64) -> f64 {
        if s <= 0.0 || s >= self.epsilon {
            return 0.0;
        }
        let u = s / self.epsilon;
        let d = match self.bridge {
            Bridge::Cubic => 6.0 * u * (1.0 - u),
            Bridge::Quintic => 30.0 * u * u * (1.0 - u) * (1.0 - u),
        };
        d / self.epsilon
    }
}

/// Axis-aligned rectangle `[y_lo, y_hi] × [t_lo, t_hi]` in the strip chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartRect {
    pub y: (f64, f64),
    pub t: (f64, f64),
}

/// `b(u) = (1 − u²)³` on `|u| < 1`, 0 elsewhere; value and two derivatives.
fn bump1(u: f64) -> [f64; 3] {
    if u.abs() >= 1.0 {
        return [0.0; 3];
    }
    let w = 1.0 - u * u;
    [w * w * w, -6.0 * u * w * w, -6.0 * w * w + 24.0 * u * u * w]
}

/// Tensor bump `b((y − yc)/ay)·b((t − tc)/at)`, extended to H^1 independently of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bump {
    pub yc: f64,
    pub tc: f64,
    pub ay: f64,
    pub at: f64,
}

impl Bump {
    pub fn new(yc: f64, tc: f64, ay: f64, at: f64) -> Result<Self> {
        if !(ay > 0.0 && at > 0.0) {
            return Err(Error::InvalidParameter(format!("bump half-widths must be positive ({ay}, {at})")));
        }
        Ok(Self { yc, tc, ay, at })
    }

    pub fn support(&self) -> ChartRect {
        ChartRect {
            y: (self.yc - self.ay, self.yc + self.ay),
            t: (self.tc - self.at, self.tc + self.at),
        }
    }

    fn factors(&self, p: &Point1) -> ([f64; 3], [f64; 3]) {
        let by = bump1((p.y1() - self.yc) / self.ay);
        let bt = bump1((p.t - self.tc) / self.at);
        (
            [by[0], by[1] / self.ay, by[2] / (self.ay * self.ay)],
            [bt[0], bt[1] / self.at, bt[2] / (self.at * self.at)],
        )
    }
}

impl ScalarField<1> for Bump {
    fn value(&self, p: &Point1) -> Result<f64> {
        let (by, bt) = self.factors(p);
        Ok(by[0] * bt[0])
    }

    fn partial(&self, p: &Point1, c: Coord) -> Result<f64> {
        let (by, bt) = self.factors(p);
        Ok(match c {
            Coord::X(_) => 0.0,
            Coord::Y(_) => by[1] * bt[0],
            Coord::T => by[0] * bt[1],
        })
    }

    fn partial2(&self, p: &Point1, a: Coord, b: Coord) -> Result<f64> {
        let (by, bt) = self.factors(p);
        Ok(match (a, b) {
            (Coord::Y(_), Coord::Y(_)) => by[2] * bt[0],
            (Coord::T, Coord::T) => by[0] * bt[2],
            (Coord::Y(_), Coord::T) | (Coord::T, Coord::Y(_)) => by[1] * bt[1],
            _ => 0.0,
        })
    }
}

/// `u + φ·k` with `k = 1 + xt − y²`: the same function on `{φ = 0}`, a
/// different extension off it.
#[derive(Debug, Clone, Copy)]
pub struct NormalShift<U, F> {
    pub base: U,
    pub phi: F,
}

fn shift_k(p: &Point1) -> [f64; 4] {
    let (x, y, t) = (p.x1(), p.y1(), p.t);
    [1.0 + x * t - y * y, t, -2.0 * y, x]
}

impl<U: ScalarField<1>, F: ScalarField<1>> ScalarField<1> for NormalShift<U, F> {
    fn value(&self, p: &Point1) -> Result<f64> {
        Ok(self.base.value(p)? + self.phi.value(p)? * shift_k(p)[0])
    }

    fn partial(&self, p: &Point1, c: Coord) -> Result<f64> {
        let k = shift_k(p);
        let dk = match c {
            Coord::X(_) => k[1],
            Coord::Y(_) => k[2],
            Coord::T => k[3],
        };
        Ok(self.base.partial(p, c)? + self.phi.partial(p, c)? * k[0] + self.phi.value(p)? * dk)
    }

    fn partial2(&self, p: &Point1, a: Coord, b: Coord) -> Result<f64> {
        let k = shift_k(p);
        let dk = |c: Coord| match c {
            Coord::X(_) => k[1],
            Coord::Y(_) => k[2],
            Coord::T => k[3],
        };
        let d2k = match (a, b) {
            (Coord::X(_), Coord::T) | (Coord::T, Coord::X(_)) => 1.0,
            (Coord::Y(_), Coord::Y(_)) => -2.0,
            _ => 0.0,
        };
        Ok(self.base.partial2(p, a, b)?
            + self.phi.partial2(p, a, b)? * k[0]
            + self.phi.partial(p, a)? * dk(b)
            + self.phi.partial(p, b)? * dk(a)
            + self.phi.value(p)? * d2k)
    }
}

/// How chart integrals are discretized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ChartRule {
    Adaptive(QuadratureConfig),
    /// Tensor composite Gauss–Legendre with `cells` cells per direction.
    Mesh { cells: usize, order: usize },
}

impl ChartRule {
    /// The same mesh with cells halved in size; adaptive rules are unchanged.
    pub fn refined(&self) -> Self {
        match *self {
            ChartRule::Mesh { cells, order } => ChartRule::Mesh { cells: 2 * cells, order },
            other => other,
        }
    }
}

/// `∫∫_rect f(y, t) dy dt`.
pub fn chart_integral<F>(rule: &ChartRule, rect: &ChartRect, f: F) -> Result<Estimate>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    match rule {
        ChartRule::Adaptive(cfg) => {
            let mut inner_err: f64 = 0.0;
            let mut evaluations = 0;
            let outer = try_integrate(
                |t: f64| -> Result<f64> {
                    let e = try_integrate(|y: f64| f(y, t), rect.y.0, rect.y.1, cfg)?;
                    inner_err = inner_err.max(e.error);
                    evaluations += e.evaluations;
                    Ok(e.value)
                },
                rect.t.0,
                rect.t.1,
                cfg,
            )?;
            Ok(Estimate {
                value: outer.value,
                error: outer.error + inner_err * (rect.t.1 - rect.t.0),
                evaluations: outer.evaluations + evaluations,
            })
        }
        ChartRule::Mesh { cells, order } => {
            if *cells == 0 || *order == 0 {
                return Err(Error::InvalidParameter("mesh needs at least one cell and one node".into()));
            }
            let rule = CompositeRule::new(*cells, *order);
            let ys = rule.points(rect.y.0, rect.y.1);
            let ts = rule.points(rect.t.0, rect.t.1);
            let mut sum = 0.0;
            for &(t, wt) in &ts {
                for &(y, wy) in &ys {
                    sum += wt * wy * f(y, t)?;
                }
            }
            Ok(Estimate {
                value: sum,
                error: f64::NAN,
                evaluations: ys.len() * ts.len(),
            })
        }
    }
}

fn check_support(strip: &GraphicalStrip, support: &ChartRect) -> Result<()> {
    let i = strip.graph().interval();
    let ok = support.y.0 < support.y.1
        && support.t.0 < support.t.1
        && support.t.0 > i.lo
        && support.t.1 < i.hi
        && support.y.0.is_finite()
        && support.y.1.is_finite();
    if !ok {
        return Err(Error::SupportTouchesBoundary(format!(
            "support {support:?} is not strictly inside the chart domain ℝ × ({}, {})",
            i.lo, i.hi
        )));
    }
    Ok(())
}

/// Both sides of an integration-by-parts identity and their relative residual
/// `|L − R| / (|L| + |R| + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IbpOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IbpOutcome {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / (lhs.abs() + rhs.abs() + 1.0),
        }
    }
}

/// `∫ ∇_i^{H,S}u dσ_H = ∫ u(Hν_i^H − c_i^{H,S}) dσ_H` for `u` supported in
/// `support`; `i ∈ {1, 2}`.
pub fn verify_horizontal_ibp<U: ScalarField<1>>(
    strip: &GraphicalStrip,
    u: &U,
    support: &ChartRect,
    i: usize,
    rule: &ChartRule,
) -> Result<IbpOutcome> {
    if !(i == 1 || i == 2) {
        return Err(Error::InvalidParameter(format!("component index must be 1 or 2, got {i}")));
    }
    check_support(strip, support)?;
    let s = strip.implicit();
    let k = i - 1;
    let lhs = chart_integral(rule, support, |y, t| {
        let p = strip.chart(y, t)?;
        let fd = s.horizontal_gauss_map(&p)?;
        let g = TangentialGradient::project(horizontal_gradient(u, &p)?, &fd);
        Ok(g.0.component(k) * fd.w_density)
    })?;
    let rhs = chart_integral(rule, support, |y, t| {
        let p = strip.chart(y, t)?;
        let fd = s.horizontal_gauss_map(&p)?;
        let h = s.h_mean_curvature(&p)?;
        let c = c_from_frame(&fd).component(k);
        Ok(u.value(&p)? * (h * fd.nu().component(k) - c) * fd.w_density)
    })?;
    Ok(IbpOutcome::new(lhs.value, rhs.value))
}

/// `∫ f(T − ω̄Y)g dσ_H = −∫ g(T − ω̄Y)f dσ_H + ∫ fgω̄H dσ_H` for `g`
/// supported in `support`.
pub fn verify_vertical_ibp<F: ScalarField<1>, G: ScalarField<1>>(
    strip: &GraphicalStrip,
    f: &F,
    g: &G,
    support: &ChartRect,
    rule: &ChartRule,
) -> Result<IbpOutcome> {
    check_support(strip, support)?;
    let s = strip.implicit();
    let lhs = chart_integral(rule, support, |y, t| {
        let p = strip.chart(y, t)?;
        let fd = s.horizontal_gauss_map(&p)?;
        Ok(f.value(&p)? * ty_with_frame(&fd, g, &p)? * fd.w_density)
    })?;
    let rhs = chart_integral(rule, support, |y, t| {
        let p = strip.chart(y, t)?;
        let fd = s.horizontal_gauss_map(&p)?;
        let (fv, gv) = (f.value(&p)?, g.value(&p)?);
        let h = s.h_mean_curvature(&p)?;
        Ok((-gv * ty_with_frame(&fd, f, &p)? + fv * gv * fd.wbar * h) * fd.w_density)
    })?;
    Ok(IbpOutcome::new(lhs.value, rhs.value))
}

/// Result of the cutoff inequality
/// `(Q−1)∫λ(r−ρ)dσ_H − ∫λ'(r−ρ){<ζ,∇^{H,S}ρ> + f(T−ω̄Y)ρ}dσ_H ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinsurfOutcome {
    pub lhs: f64,
    /// `(Q−1)∫λ(r−ρ)dσ_H`, the natural size of the terms.
    pub scale: f64,
    pub error: f64,
}

pub fn verify_minsurf_inequality(
    strip: &GraphicalStrip,
    t0: f64,
    r: f64,
    cutoff: &CutoffSpec,
    quad: &QuadratureConfig,
) -> Result<MinsurfOutcome> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let eps = cutoff.epsilon();
    if !(eps < r) {
        return Err(Error::InvalidParameter(format!("cutoff width {eps} must be smaller than r = {r}")));
    }
    let q1 = (Point1::params().homogeneous_dimension() - 1) as f64;
    let p0 = Point1::xyt(0.0, 0.0, t0);
    let rho = RhoField::new(p0);
    let first = ball_region_integral(strip, t0, r, Some(r - eps), quad, |y, t| {
        let p = strip.chart(y, t)?;
        Ok(q1 * cutoff.lambda(r - rho.value(&p)?) * strip.perimeter_density(y, t)?)
    })?;
    let second = ball_region_integral(strip, t0, r, Some(r - eps), quad, |y, t| {
        let p = strip.chart(y, t)?;
        let lp = cutoff.lambda_prime(r - rho.value(&p)?);
        if lp == 0.0 {
            return Ok(0.0);
        }
        Ok(lp * crucial_quantity(strip, &p0, &p)? * strip.perimeter_density(y, t)?)
    })?;
    Ok(MinsurfOutcome {
        lhs: first.value - second.value,
        scale: first.value,
        error: first.error + second.error,
    })
}

/// The three bumps used by [`ibp_suite`], placed around height `tc`.
pub fn standard_bumps(tc: f64) -> [Bump; 3] {
    [
        Bump { yc: 0.0, tc, ay: 1.0, at: 1.0 },
        Bump { yc: 0.5, tc: tc + 0.3, ay: 1.5, at: 0.7 },
        Bump { yc: -1.0, tc: tc - 0.5, ay: 0.8, at: 1.2 },
    ]
}

/// Mesh used for the refinement check in [`ibp_suite`]: coarse enough that
/// the residual sits well above rounding.
pub const REFINEMENT_BASE: ChartRule = ChartRule::Mesh { cells: 1, order: 3 };

/// Horizontal (`i = 1, 2`) and vertical integration by parts with the standard
/// bumps: one report with the adaptive residuals and one with the mesh
/// refinement ratios `residual(h/2) − residual(h)/2`.
pub fn ibp_suite(strip: &GraphicalStrip, tc: f64, quad: &QuadratureConfig, tol: f64) -> Result<Vec<IdentityReport>> {
    let adaptive = ChartRule::Adaptive(*quad);
    let coarse = REFINEMENT_BASE;
    let fine = coarse.refined();
    let f = RhoField::new(Point1::xyt(0.3, -0.2, tc + 5.0));
    let mut residuals = Vec::new();
    let mut refinement = Vec::new();
    let mut at = |b: &Bump, run: &dyn Fn(&ChartRule) -> Result<IbpOutcome>| -> Result<()> {
        let p = Point1::xyt(0.0, b.yc, b.tc);
        residuals.push((p, run(&adaptive)?.residual));
        let (rc, rf) = (run(&coarse)?.residual, run(&fine)?.residual);
        refinement.push((p, (rf - 0.5 * rc).max(0.0)));
        Ok(())
    };
    for b in standard_bumps(tc) {
        let support = b.support();
        for i in [1, 2] {
            at(&b, &|rule| verify_horizontal_ibp(strip, &b, &support, i, rule))?;
        }
        at(&b, &|rule| verify_vertical_ibp(strip, &f, &b, &support, rule))?;
    }
    Ok(vec![
        IdentityReport::from_residuals(format!("strip[{}]/ibp-relative", strip.graph()), tol, 0, residuals),
        IdentityReport::from_residuals(format!("strip[{}]/ibp-refinement", strip.graph()), 1e-12, 0, refinement),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::{ConstantField, CoordinateField};
    use crate::surface::GraphFunction;
    use crate::testing::central_partial;

    fn strip(g: GraphFunction) -> GraphicalStrip {
        GraphicalStrip::new(g).unwrap()
    }

    fn adaptive() -> ChartRule {
        ChartRule::Adaptive(QuadratureConfig::with_tolerances(1e-11, 1e-14))
    }

    #[test]
    fn cutoff_shapes() {
        for bridge in [Bridge::Cubic, Bridge::Quintic] {
            let c = CutoffSpec::new(0.5, bridge).unwrap();
            assert_eq!(c.lambda(-1.0), 0.0);
            assert_eq!(c.lambda(0.0), 0.0);
            assert_eq!(c.lambda(0.5), 1.0);
            assert_eq!(c.lambda(3.0), 1.0);
            assert!((c.lambda(0.25) - 0.5).abs() < 1e-15);
            let mut prev = 0.0;
            for k in 0..=1000 {
                let s = -0.1 + 0.7 * k as f64 / 1000.0;
                assert!(c.lambda(s) >= prev);
                prev = c.lambda(s);
                let lp = c.lambda_prime(s);
                assert!(lp >= 0.0);
                if s <= 0.0 || s >= 0.5 {
                    assert_eq!(lp, 0.0);
                } else {
                    let h = 1e-6;
                    let fd = (c.lambda(s + h) - c.lambda(s - h)) / (2.0 * h);
                    assert!((fd - lp).abs() < 1e-6);
                }
            }
        }
        assert!(CutoffSpec::quintic(0.0).is_err());
    }

    #[test]
    fn bump_partials() {
        let b = Bump::new(0.2, -0.1, 0.9, 1.3).unwrap();
        let h = 1e-5;
        for p in [Point1::xyt(0.4, 0.1, 0.3), Point1::xyt(-1.0, 0.8, -0.9)] {
            for c in [Coord::X(0), Coord::Y(0), Coord::T] {
                let fd = central_partial(&b, &p, c, h);
                assert!((b.partial(&p, c).unwrap() - fd).abs() < 1e-8);
                let d = |q: &Point1| b.partial(q, Coord::T).unwrap();
                let fd2 = (d(&crate::testing::shifted(&p, c, h)) - d(&crate::testing::shifted(&p, c, -h))) / (2.0 * h);
                assert!((b.partial2(&p, c, Coord::T).unwrap() - fd2).abs() < 1e-7);
            }
        }
        assert_eq!(b.value(&Point1::xyt(0.0, 5.0, 0.0)).unwrap(), 0.0);
        assert!(Bump::new(0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn zero_test_function() {
        let s = strip(GraphFunction::linear(1.0, 0.0));
        let rect = ChartRect { y: (-1.0, 1.0), t: (-1.0, 1.0) };
        let o = verify_horizontal_ibp(&s, &ConstantField(0.0), &rect, 1, &adaptive()).unwrap();
        assert_eq!((o.lhs, o.rhs, o.residual), (0.0, 0.0, 0.0));
    }

    #[test]
    fn horizontal_ibp_on_linear_strip() {
        let s = strip(GraphFunction::linear(1.0, 0.0));
        let b = Bump::new(0.2, 0.1, 1.0, 1.0).unwrap();
        for i in [1, 2] {
            let o = verify_horizontal_ibp(&s, &b, &b.support(), i, &adaptive()).unwrap();
            assert!(o.residual < 1e-9, "i={i}: {o:?}");
            assert!(o.lhs.abs() > 1e-3);
        }
    }

    #[test]
    fn horizontal_ibp_on_plane() {
        let s = strip(GraphFunction::zero());
        let b = Bump::new(0.3, 0.2, 1.0, 0.5).unwrap();
        let o = verify_horizontal_ibp(&s, &b, &b.support(), 2, &adaptive()).unwrap();
        assert_eq!(o.rhs, 0.0);
        assert!(o.lhs.abs() < 1e-8);
    }

    #[test]
    fn extension_independence() {
        let s = strip(GraphFunction::arctan(1.0));
        let b = Bump::new(0.0, 0.5, 1.2, 0.8).unwrap();
        let shifted = NormalShift { base: b, phi: s.defining_function() };
        let imp = s.implicit();
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..200 {
            let p = s.chart(rng.uniform(-1.2, 1.2), rng.uniform(-0.3, 1.3)).unwrap();
            let a = crate::calculus::tangential_gradient(&imp, &b, &p).unwrap();
            let c = crate::calculus::tangential_gradient(&imp, &shifted, &p).unwrap();
            assert!((a.0 - c.0).norm() < 1e-12);
            let ta = crate::calculus::ty_operator(&imp, &b, &p).unwrap();
            let tc = crate::calculus::ty_operator(&imp, &shifted, &p).unwrap();
            assert!((ta - tc).abs() < 1e-12);
            // the ambient gradients do differ
            assert!((horizontal_gradient(&b, &p).unwrap() - horizontal_gradient(&shifted, &p).unwrap()).norm() > 1e-6);
        }
        let o1 = verify_horizontal_ibp(&s, &b, &b.support(), 1, &adaptive()).unwrap();
        let o2 = verify_horizontal_ibp(&s, &shifted, &b.support(), 1, &adaptive()).unwrap();
        assert!((o1.lhs - o2.lhs).abs() < 1e-9 * (1.0 + o1.lhs.abs()));
    }

    #[test]
    fn vertical_ibp_cases() {
        let s = strip(GraphFunction::arctan(1.0));
        let b = Bump::new(0.2, 0.1, 1.0, 1.0).unwrap();
        let one = verify_vertical_ibp(&s, &ConstantField(1.0), &b, &b.support(), &adaptive()).unwrap();
        assert!(one.lhs.abs() < 1e-9 && one.rhs.abs() < 1e-12);
        let t = CoordinateField(Coord::T);
        let o = verify_vertical_ibp(&s, &t, &b, &b.support(), &adaptive()).unwrap();
        assert!(o.residual < 1e-9, "{o:?}");
        assert!(o.lhs.abs() > 1e-3);
        // both compactly supported: antisymmetry. The product lives on the
        // overlap of the supports, where both factors are smooth.
        let b2 = Bump::new(-0.3, 0.4, 0.7, 0.6).unwrap();
        let (s1, s2) = (b.support(), b2.support());
        let overlap = ChartRect {
            y: (s1.y.0.max(s2.y.0), s1.y.1.min(s2.y.1)),
            t: (s1.t.0.max(s2.t.0), s1.t.1.min(s2.t.1)),
        };
        let o = verify_vertical_ibp(&s, &b2, &b, &overlap, &adaptive()).unwrap();
        let swapped = verify_vertical_ibp(&s, &b, &b2, &overlap, &adaptive()).unwrap();
        assert!(o.lhs.abs() > 1e-4);
        assert!((o.lhs + swapped.lhs).abs() < 1e-9);
    }

    #[test]
    fn support_must_be_inside() {
        let g = GraphFunction::tanh(1.0).with_interval(crate::surface::Interval::new(-1.0, 1.0).unwrap());
        let s = strip(g);
        let b = Bump::new(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            verify_horizontal_ibp(&s, &b, &b.support(), 1, &adaptive()),
            Err(Error::SupportTouchesBoundary(_))
        ));
        let small = Bump::new(0.0, 0.0, 1.0, 0.5).unwrap();
        assert!(verify_horizontal_ibp(&s, &small, &small.support(), 3, &adaptive()).is_err());
        assert!(verify_horizontal_ibp(&s, &small, &small.support(), 1, &adaptive()).is_ok());
    }

    #[test]
    fn mesh_refinement_reduces_residual() {
        let s = strip(GraphFunction::cubic(1.0));
        let b = Bump::new(0.5, 0.3, 1.5, 0.7).unwrap();
        let run = |rule: &ChartRule| verify_horizontal_ibp(&s, &b, &b.support(), 1, rule).unwrap().residual;
        let mut rule = REFINEMENT_BASE;
        let mut prev = run(&rule);
        assert!(prev > 1e-10);
        for _ in 0..3 {
            rule = rule.refined();
            let r = run(&rule);
            assert!(r <= 0.5 * prev + 1e-12, "{r} vs {prev}");
            prev = r;
        }
    }

    #[test]
    fn suite_on_arctan() {
        let s = strip(GraphFunction::arctan(1.0));
        let reports = ibp_suite(&s, 0.0, &QuadratureConfig::with_tolerances(1e-11, 1e-14), 1e-6).unwrap();
        for r in reports {
            assert!(r.pass, "{r:?}");
            assert_eq!(r.samples, 9);
        }
    }

    #[test]
    fn minsurf_plane_and_linear() {
        let quad = QuadratureConfig::with_tolerances(1e-11, 1e-14);
        for g in [GraphFunction::zero(), GraphFunction::linear(1.0, 0.0)] {
            let s = strip(g);
            for r in [0.5, 2.0] {
                let cut = CutoffSpec::quintic(r / 10.0).unwrap();
                let o = verify_minsurf_inequality(&s, 0.0, r, &cut, &quad).unwrap();
                assert!(o.lhs <= 1e-8 * o.scale, "{g} r={r}: {o:?}");
                assert!(o.scale > 0.0);
            }
        }
        let s = strip(GraphFunction::zero());
        let cut = CutoffSpec::quintic(1.0).unwrap();
        assert!(verify_minsurf_inequality(&s, 0.0, 0.5, &cut, &quad).is_err());
        assert!(verify_minsurf_inequality(&s, 0.0, -1.0, &cut, &quad).is_err());
    }
}
