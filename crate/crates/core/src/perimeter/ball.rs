//! H-perimeter of `S ∩ B(p0, r)` for a strip and an on-axis center
//! `p0 = (0, 0, t0)`.
//!
//! In the chart `(y, t)` the ball is `y⁴(1+G²)² + 16(t−t0)² < r⁴` and the
//! perimeter density is `(1 + y²G'/2)√(1+G²)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{try_integrate, try_integrate_breaks, Estimate, QuadratureConfig};
use crate::surface::GraphicalStrip;

/// `r⁴ − 16Δ²`, factored to avoid cancellation near the slice ends.
fn slice_power(r: f64, d: f64) -> f64 {
    let r2 = r * r;
    let d4 = 4.0 * d.abs();
    ((r2 - d4) * (r2 + d4)).max(0.0)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("radius must be positive and finite, got {r}")));
    }
    Ok(())
}

/// Fails unless `[t0 − r²/4, t0 + r²/4] ⊆ I`.
pub fn check_ball(strip: &GraphicalStrip, t0: f64, r: f64) -> Result<()> {
    check_radius(r)?;
    if !t0.is_finite() {
        return Err(Error::InvalidParameter(format!("t0 must be finite, got {t0}")));
    }
    let i = strip.graph().interval();
    let h = 0.25 * r * r;
    if t0 - h < i.lo || t0 + h > i.hi {
        return Err(Error::BallExitsDomain {
            t0,
            r,
            lo: i.lo,
            hi: i.hi,
        });
    }
    Ok(())
}

/// Half-width `y_max(t) = (r⁴ − 16(t−t0)²)^{1/4} / √(1+G(t)²)` of the ball's
/// slice at height `t`; 0 when `|t − t0| ≥ r²/4`.
pub fn ball_slice_bounds(strip: &GraphicalStrip, t0: f64, r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    let d = t - t0;
    if 4.0 * d.abs() >= r * r {
        return Ok(0.0);
    }
    let g = strip.graph().value(t)?;
    Ok(slice_power(r, d).sqrt().sqrt() / g.hypot(1.0))
}

/// `∫ W dy` over the slice at height `t`:
/// `2[R^{1/4} + (G'/6)R^{3/4}/(1+G²)]`, `R = r⁴ − 16(t−t0)²`.
pub fn inner_integral(strip: &GraphicalStrip, t0: f64, r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    let d = t - t0;
    if 4.0 * d.abs() > r * r {
        return Err(Error::InvalidParameter(format!(
            "t = {t} is outside the ball slice range |t − t0| ≤ r²/4 (t0 = {t0}, r = {r})"
        )));
    }
    let [g, dg, _] = strip.graph().jet(t)?;
    let q = slice_power(r, d).sqrt().sqrt();
    Ok(2.0 * (q + dg / 6.0 * q * q * q / (1.0 + g * g)))
}

/// `ω = ∫₀¹ (1−τ²)^{1/4} dτ`.
pub fn omega_constant(quad: &QuadratureConfig) -> Result<Estimate> {
    try_integrate(|x: f64| Ok::<_, Error>(((1.0 - x) * (1.0 + x)).powf(0.25)), 0.0, 1.0, quad)
}

/// Breakpoints in `τ ∈ [−1, 1]` for integrands of the form `h(t0 + r²τ/4)`.
fn tau_breaks(strip: &GraphicalStrip, t0: f64, r: f64) -> Vec<f64> {
    let scale = 4.0 / (r * r);
    let mut b = vec![-1.0, 1.0];
    b.extend(
        strip
            .graph()
            .feature_points()
            .into_iter()
            .map(|t| (t - t0) * scale)
            .filter(|tau| tau.abs() < 1.0),
    );
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// `(r²/12) ∫_{−1}^{1} G'/(1+G²)(t0 + r²τ/4) (1−τ²)^{3/4} dτ`, the amount by
/// which `P(r)/r³` exceeds `ω`.
pub fn large_r_correction(strip: &GraphicalStrip, t0: f64, r: f64, quad: &QuadratureConfig) -> Result<Estimate> {
    check_ball(strip, t0, r)?;
    let g = strip.graph();
    let q = 0.25 * r * r;
    let est = try_integrate_breaks(
        |tau: f64| -> Result<f64> {
            let [gv, dg, _] = g.jet(t0 + q * tau)?;
            Ok(dg / (1.0 + gv * gv) * ((1.0 - tau) * (1.0 + tau)).powf(0.75))
        },
        &tau_breaks(strip, t0, r),
        quad,
    )?;
    let k = r * r / 12.0;
    Ok(Estimate {
        value: k * est.value,
        error: k * est.error,
        evaluations: est.evaluations,
    })
}

/// Both quadrature paths for `σ_H(S ∩ B(p0, r))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallPerimeter {
    pub r: f64,
    /// `r³[ω + correction]` from the one-dimensional reduced formula.
    pub reduced: Estimate,
    /// Outer quadrature in `t` of the closed-form slice integral.
    pub direct: Estimate,
}

impl BallPerimeter {
    pub fn value(&self) -> f64 {
        self.reduced.value
    }

    /// Larger of the reduced-path error estimate and the path discrepancy.
    pub fn error_estimate(&self) -> f64 {
        self.reduced.error.max((self.reduced.value - self.direct.value).abs())
    }

    pub fn relative_discrepancy(&self) -> f64 {
        (self.reduced.value - self.direct.value).abs() / self.reduced.value.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn perimeter_in_ball(strip: &GraphicalStrip, t0: f64, r: f64, quad: &QuadratureConfig) -> Result<BallPerimeter> {
    check_ball(strip, t0, r)?;
    let omega = omega_constant(quad)?;
    let corr = large_r_correction(strip, t0, r, quad)?;
    let r3 = r * r * r;
    let reduced = Estimate {
        value: r3 * (omega.value + corr.value),
        error: r3 * (omega.error + corr.error),
        evaluations: omega.evaluations + corr.evaluations,
    };
    let q = 0.25 * r * r;
    let mut breaks: Vec<f64> = tau_breaks(strip, t0, r).into_iter().map(|tau| t0 + q * tau).collect();
    breaks.push(t0);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let direct = try_integrate_breaks(|t: f64| inner_integral(strip, t0, r, t), &breaks, quad)?;
    Ok(BallPerimeter { r, reduced, direct })
}

/// `∫∫ f(y, t) dy dt` over the chart image of `S ∩ B(p0, r)`. When
/// `inner_radius` is given, the level set `ρ = inner_radius` is used as a
/// breakpoint curve.
pub fn ball_region_integral<F>(
    strip: &GraphicalStrip,
    t0: f64,
    r: f64,
    inner_radius: Option<f64>,
    quad: &QuadratureConfig,
    f: F,
) -> Result<Estimate>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    check_ball(strip, t0, r)?;
    if let Some(ri) = inner_radius {
        if !(ri > 0.0 && ri < r) {
            return Err(Error::InvalidParameter(format!("inner radius {ri} must lie in (0, {r})")));
        }
    }
    let mut inner_err: f64 = 0.0;
    let mut evaluations = 0usize;
    let mut slice = |t: f64| -> Result<f64> {
        let ym = ball_slice_bounds(strip, t0, r, t)?;
        if ym == 0.0 {
            return Ok(0.0);
        }
        let mut yb = vec![-ym, 0.0, ym];
        if let Some(ri) = inner_radius {
            let yi = ball_slice_bounds(strip, t0, ri, t)?;
            if yi > 0.0 && yi < ym {
                yb = vec![-ym, -yi, 0.0, yi, ym];
            }
        }
        let e = try_integrate_breaks(|y: f64| f(y, t), &yb, quad)?;
        inner_err = inner_err.max(e.error);
        evaluations += e.evaluations;
        Ok(e.value)
    };
    let q = 0.25 * r * r;
    let mut breaks = vec![t0 - q, t0, t0 + q];
    if let Some(ri) = inner_radius {
        let qi = 0.25 * ri * ri;
        breaks.extend([t0 - qi, t0 + qi]);
    }
    breaks.extend(
        tau_breaks(strip, t0, r)
            .into_iter()
            .map(|tau| t0 + q * tau),
    );
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let outer = try_integrate_breaks(&mut slice, &breaks, quad)?;
    Ok(Estimate {
        value: outer.value,
        error: outer.error + inner_err * 2.0 * q,
        evaluations: outer.evaluations + evaluations,
    })
}
