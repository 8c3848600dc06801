//! Pointwise identities of the tangential calculus, evaluated on sample
//! points, and the crucial quantity on graphical strips.

use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::tangential::{c_from_frame, ty_with_frame, TangentialGradient};
use crate::error::{Error, Result};
use crate::heis::{horizontal_gradient, frame_derivative, FField, FrameDir, HorizontalField, Point1, RhoField, ScalarField, ZetaField};
use crate::rng::SplitMix64;
use crate::surface::{GraphicalStrip, ImplicitSurface, TestSurface};

/// Default absolute tolerance of the pointwise suites.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Samples closer than this (in gauge distance) to their center are skipped:
/// derivatives of `ρ` carry `ρ⁻³`.
pub const CENTER_EXCLUSION: f64 = 1e-6;

/// Summary of residuals over a batch of samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub samples: usize,
    /// Samples dropped because they were characteristic or hit a singularity.
    pub skipped: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub worst_point: Option<[f64; 3]>,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityReport {
    /// Reduces `(point, |residual|)` pairs in order. A NaN residual makes the
    /// report fail.
    pub fn from_residuals(
        name: impl Into<String>,
        tolerance: f64,
        skipped: usize,
        residuals: impl IntoIterator<Item = (Point1, f64)>,
    ) -> Self {
        let mut samples = 0usize;
        let mut sum = 0.0;
        let mut max = 0.0f64;
        let mut worst = None;
        let mut nan = false;
        for (p, r) in residuals {
            let r = r.abs();
            samples += 1;
            if r.is_nan() {
                nan = true;
                worst.get_or_insert([p.x1(), p.y1(), p.t]);
                continue;
            }
            sum += r;
            if r > max || worst.is_none() {
                max = max.max(r);
                worst = Some([p.x1(), p.y1(), p.t]);
            }
        }
        let max_residual = if nan { f64::NAN } else { max };
        Self {
            name: name.into(),
            samples,
            skipped,
            max_residual,
            mean_residual: if samples > 0 { sum / samples as f64 } else { 0.0 },
            worst_point: worst,
            tolerance,
            pass: samples > 0 && !nan && max <= tolerance,
        }
    }

    /// Same report with a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.samples > 0 && self.max_residual <= tolerance;
        self
    }
}

/// A sample surface point `p` and the center `p0` the fields are built around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePair {
    pub p0: Point1,
    pub p: Point1,
}

fn skippable(e: &Error) -> bool {
    matches!(e, Error::Characteristic { .. } | Error::Domain(_))
}

/// Evaluates `residual` on every sample (in parallel) and reduces in sample
/// order, so the report does not depend on the worker count. Samples within
/// [`CENTER_EXCLUSION`] of their center are skipped.
pub fn evaluate_pointwise<R>(name: &str, tolerance: f64, samples: &[SamplePair], residual: R) -> Result<IdentityReport>
where
    R: Fn(&SamplePair) -> Result<f64> + Sync,
{
    let values: Vec<Option<Result<f64>>> = samples
        .par_iter()
        .map(|sp| (sp.p.gauge_distance(&sp.p0) >= CENTER_EXCLUSION).then(|| residual(sp)))
        .collect();
    let mut kept = Vec::with_capacity(values.len());
    let mut skipped = 0;
    for (s, v) in samples.iter().zip(values) {
        let Some(v) = v else {
            skipped += 1;
            continue;
        };
        match v {
            Ok(r) => kept.push((s.p, r)),
            Err(e) if skippable(&e) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(IdentityReport::from_residuals(name, tolerance, skipped, kept))
}

fn q_minus(k: usize) -> f64 {
    (Point1::params().homogeneous_dimension() - k) as f64
}

/// `div_{H,S}ζ`, `<c^{H,S}, ζ>` and `(T − ω̄Y)f` at `p`.
pub fn generator_parts<F: ScalarField<1>>(s: &ImplicitSurface<F>, p0: &Point1, p: &Point1) -> Result<[f64; 3]> {
    let fd = s.horizontal_gauss_map(p)?;
    let zeta = ZetaField::new(*p0);
    let mut div = 0.0;
    for k in 0..2 {
        div += TangentialGradient::project(zeta.component_gradient(k, p)?, &fd).0.component(k);
    }
    let cz = c_from_frame(&fd).dot(&zeta.value(p)?);
    let tyf = ty_with_frame(&fd, &FField::new(*p0), p)?;
    Ok([div, cz, tyf])
}

/// `div_{H,S}ζ + <c^{H,S},ζ> + (T − ω̄Y)f − (Q − 1)`.
pub fn remid_residual<F: ScalarField<1>>(s: &ImplicitSurface<F>, p0: &Point1, p: &Point1) -> Result<f64> {
    let [d, c, t] = generator_parts(s, p0, p)?;
    Ok(d + c + t - q_minus(1))
}

/// `div_{H,S}ζ − (Q − 3)`.
pub fn divergence_residual<F: ScalarField<1>>(s: &ImplicitSurface<F>, p0: &Point1, p: &Point1) -> Result<f64> {
    let [d, _, _] = generator_parts(s, p0, p)?;
    Ok(d - q_minus(3))
}

/// `<c^{H,S},ζ> + (T − ω̄Y)f − 2`.
pub fn vertical_part_residual<F: ScalarField<1>>(s: &ImplicitSurface<F>, p0: &Point1, p: &Point1) -> Result<f64> {
    let [_, c, t] = generator_parts(s, p0, p)?;
    Ok(c + t - 2.0)
}

/// `(<ζ,∇^Hρ> + fTρ − ρ) / max(ρ, 1)`.
pub fn gauge_generator_residual(p0: &Point1, p: &Point1) -> Result<f64> {
    let rho = RhoField::new(*p0);
    let r = rho.value(p)?;
    let lhs = ZetaField::new(*p0).value(p)?.dot(&horizontal_gradient(&rho, p)?)
        + FField::new(*p0).value(p)? * frame_derivative(&rho, FrameDir::T, p)?;
    Ok((lhs - r) / r.max(1.0))
}

/// `<c^{H,S}, ν^H>`.
pub fn torsion_orthogonality_residual<F: ScalarField<1>>(s: &ImplicitSurface<F>, p: &Point1) -> Result<f64> {
    let fd = s.horizontal_gauss_map(p)?;
    Ok(c_from_frame(&fd).dot(&fd.nu()))
}

/// `<∇^{H,S}ρ, ν^H>`.
pub fn projection_residual<F: ScalarField<1>>(s: &ImplicitSurface<F>, p0: &Point1, p: &Point1) -> Result<f64> {
    let fd = s.horizontal_gauss_map(p)?;
    let g = TangentialGradient::project(horizontal_gradient(&RhoField::new(*p0), p)?, &fd);
    Ok(g.0.dot(&fd.nu()))
}

pub fn verify_remid<F: ScalarField<1> + Sync>(s: &ImplicitSurface<F>, samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("remid", tol, samples, |sp| remid_residual(s, &sp.p0, &sp.p))
}

pub fn verify_divergence<F: ScalarField<1> + Sync>(s: &ImplicitSurface<F>, samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("div-zeta", tol, samples, |sp| divergence_residual(s, &sp.p0, &sp.p))
}

pub fn verify_vertical_part<F: ScalarField<1> + Sync>(s: &ImplicitSurface<F>, samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("torsion-plus-vertical", tol, samples, |sp| vertical_part_residual(s, &sp.p0, &sp.p))
}

pub fn verify_gauge_generator(samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("gauge-generator", tol, samples, |sp| gauge_generator_residual(&sp.p0, &sp.p))
}

pub fn verify_torsion_orthogonality<F: ScalarField<1> + Sync>(s: &ImplicitSurface<F>, samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("torsion-orthogonality", tol, samples, |sp| torsion_orthogonality_residual(s, &sp.p))
}

pub fn verify_projection<F: ScalarField<1> + Sync>(s: &ImplicitSurface<F>, samples: &[SamplePair], tol: f64) -> Result<IdentityReport> {
    evaluate_pointwise("tangential-projection", tol, samples, |sp| projection_residual(s, &sp.p0, &sp.p))
}

fn require_on_axis(p0: &Point1) -> Result<()> {
    if p0.x1() != 0.0 || p0.y1() != 0.0 {
        return Err(Error::OffAxisCenter {
            x0: p0.x1(),
            y0: p0.y1(),
            t0: p0.t,
        });
    }
    Ok(())
}

/// `<ζ, ∇^{H,S}ρ> + f(T − ω̄Y)ρ` at a strip point, from the general
/// tangential machinery. Requires `p0 = (0, 0, t0)` and `p ≠ p0`.
pub fn crucial_quantity(strip: &GraphicalStrip, p0: &Point1, p: &Point1) -> Result<f64> {
    require_on_axis(p0)?;
    let s = strip.implicit();
    let fd = s.horizontal_gauss_map(p)?;
    let rho = RhoField::new(*p0);
    let grad = TangentialGradient::project(horizontal_gradient(&rho, p)?, &fd);
    let zeta = ZetaField::new(*p0).value(p)?;
    let f = FField::new(*p0).value(p)?;
    Ok(zeta.dot(&grad.0) + f * ty_with_frame(&fd, &rho, p)?)
}

/// Closed form of the crucial quantity at the chart point `(y, t)`:
/// `ρ − 8y²Δ²G'/(ρ³(1 + y²G'/2))` with `Δ = t − t0`.
pub fn crucial_quantity_closed_form(strip: &GraphicalStrip, t0: f64, y: f64, t: f64) -> Result<f64> {
    let [g, dg, _] = strip.graph().jet(t)?;
    let d = t - t0;
    let a = y * y * (1.0 + g * g);
    let rho = a.hypot(4.0 * d).sqrt();
    if rho == 0.0 {
        return Err(Error::Domain("crucial quantity is undefined at the center".into()));
    }
    Ok(rho - 8.0 * y * y * d * d * dg / (rho.powi(3) * (1.0 + 0.5 * y * y * dg)))
}

/// Chart parameters and configuration of the pointwise suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    /// Half-width of the sampling box in the surface chart.
    pub extent: f64,
    /// Half-width of the box the centers `p0` are drawn from.
    pub center_extent: f64,
    pub tolerance: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 42,
            extent: 5.0,
            center_extent: 2.0,
            tolerance: IDENTITY_TOL,
        }
    }
}

/// Surface points with arbitrary centers drawn from a box.
pub fn sample_pairs(surface: &TestSurface, cfg: &SuiteConfig) -> Result<Vec<SamplePair>> {
    let mut rng = SplitMix64::new(cfg.seed);
    let c = cfg.center_extent;
    (0..cfg.samples)
        .map(|_| {
            let p = surface.sample(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), cfg.extent)?;
            let p0 = Point1::xyt(rng.uniform(-c, c), rng.uniform(-c, c), rng.uniform(-c, c));
            Ok(SamplePair { p0, p })
        })
        .collect()
}

/// Strip points with centers `(0, 0, t0)` on the t-axis.
pub fn axis_sample_pairs(strip: &GraphicalStrip, cfg: &SuiteConfig) -> Result<Vec<SamplePair>> {
    let surface = TestSurface::Strip(strip.clone());
    let mut rng = SplitMix64::new(cfg.seed ^ 0x5DEE_CE66_D1CE_4E5B);
    let i = strip.graph().interval();
    let (lo, hi) = (i.lo.max(-cfg.center_extent), i.hi.min(cfg.center_extent));
    (0..cfg.samples)
        .map(|_| {
            let p = surface.sample(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), cfg.extent)?;
            Ok(SamplePair {
                p0: Point1::xyt(0.0, 0.0, rng.uniform(lo, hi)),
                p,
            })
        })
        .collect()
}

/// All pointwise identities on one surface. Strips additionally get the
/// crucial-quantity checks with centers on the t-axis.
pub fn identity_suite(surface: &TestSurface, cfg: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    let s = surface.implicit();
    let pairs = sample_pairs(surface, cfg)?;
    let tol = cfg.tolerance;
    let mut out = vec![
        verify_remid(&s, &pairs, tol)?,
        verify_divergence(&s, &pairs, tol)?,
        verify_vertical_part(&s, &pairs, tol)?,
        verify_gauge_generator(&pairs, tol)?,
        verify_torsion_orthogonality(&s, &pairs, tol)?,
        verify_projection(&s, &pairs, tol)?,
    ];
    if let TestSurface::Strip(strip) = surface {
        let axis = axis_sample_pairs(strip, cfg)?;
        out.push(evaluate_pointwise("crucial-closed-form", tol, &axis, |sp| {
            let general = crucial_quantity(strip, &sp.p0, &sp.p)?;
            let closed = crucial_quantity_closed_form(strip, sp.p0.t, sp.p.y1(), sp.p.t)?;
            Ok((general - closed) / closed.abs().max(1.0))
        })?);
        out.push(evaluate_pointwise("crucial-range", tol, &axis, |sp| {
            let c = crucial_quantity(strip, &sp.p0, &sp.p)?;
            let rho = RhoField::new(sp.p0).value(&sp.p)?;
            // distance of c from [0, ρ], relative to ρ
            Ok(((-c).max(0.0) + (c - rho).max(0.0)) / rho.max(1.0))
        })?);
    }
    for r in &mut out {
        r.name = format!("{}/{}", surface.name(), r.name);
    }
    Ok(out)
}
