//! Rescaled perimeter profiles `r ↦ P(r)/r³`, their monotonicity, and the
//! small- and large-radius limits.

use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::CutoffSpec;
use crate::error::{Error, Result};
use crate::heis::{Point1, RhoField, ScalarField};
use crate::perimeter::ball::{ball_region_integral, check_ball, omega_constant, perimeter_in_ball};
use crate::quadrature::{try_integrate_breaks, Estimate, QuadratureConfig};
use crate::surface::GraphicalStrip;

/// Exponent `Q − 1` of the rescaling in H^1.
pub const RESCALING_EXPONENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub r: f64,
    pub perimeter: f64,
    pub ratio: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileTable {
    pub graph: String,
    pub center: [f64; 3],
    pub q: usize,
    /// Set for off-axis centers, where no monotonicity is claimed.
    pub experimental: bool,
    pub rows: Vec<ProfileRow>,
}

impl ProfileTable {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Radius grid: `count` points from `min` to `max`, evenly spaced in `r` or in `log r`.
pub fn radius_grid(min: f64, max: f64, count: usize, log: bool) -> Result<Vec<f64>> {
    if !(min > 0.0) || !(max > min) || !max.is_finite() || count < 2 {
        return Err(Error::InvalidParameter(format!(
            "radius grid needs 0 < min < max and count ≥ 2 (got {min}, {max}, {count})"
        )));
    }
    let n = (count - 1) as f64;
    let mut g: Vec<f64> = (0..count)
        .map(|i| {
            let u = i as f64 / n;
            if log {
                (min.ln() + u * (max.ln() - min.ln())).exp()
            } else {
                min + u * (max - min)
            }
        })
        .collect();
    g[0] = min;
    g[count - 1] = max;
    Ok(g)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty radius grid".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] > 0.0) {
        return Err(Error::InvalidParameter("radius grid must be positive and strictly increasing".into()));
    }
    Ok(())
}

/// `P(r)/r³` on `grid` for the center `(0, 0, t0)`. Rows are computed in
/// parallel and assembled in grid order.
pub fn profile(strip: &GraphicalStrip, t0: f64, grid: &[f64], quad: &QuadratureConfig) -> Result<ProfileTable> {
    check_grid(grid)?;
    for &r in grid {
        check_ball(strip, t0, r)?;
    }
    let rows = grid
        .par_iter()
        .map(|&r| {
            let p = perimeter_in_ball(strip, t0, r, quad)?;
            let r3 = r.powi(RESCALING_EXPONENT);
            Ok(ProfileRow {
                r,
                perimeter: p.value(),
                ratio: p.value() / r3,
                err_estimate: p.error_estimate(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileTable {
        graph: strip.graph().label(),
        center: [0.0, 0.0, t0],
        q: Point1::params().homogeneous_dimension(),
        experimental: false,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityCertificate {
    pub pass: bool,
    pub slack: f64,
    /// Index `k` of the first row with `ratio[k] < ratio[k−1] − slack`.
    pub first_violation: Option<usize>,
    /// Largest observed decrease between consecutive rows (0 if none).
    pub max_drop: f64,
}

/// Checks `ratio[k+1] ≥ ratio[k] − slack` for every consecutive pair.
pub fn monotonicity_check(table: &ProfileTable, slack: f64) -> MonotonicityCertificate {
    let mut first_violation = None;
    let mut max_drop: f64 = 0.0;
    for (k, w) in table.rows.windows(2).enumerate() {
        let drop = w[0].ratio - w[1].ratio;
        max_drop = max_drop.max(drop);
        if !(w[1].ratio >= w[0].ratio - slack) && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }
    MonotonicityCertificate {
        pass: first_violation.is_none(),
        slack,
        first_violation,
        max_drop,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitEstimate {
    pub value: f64,
    pub error: f64,
}

/// Levels used by [`small_r_limit`].
const RICHARDSON_LEVELS: usize = 5;

/// `lim_{r→0} P(r)/r³` by Richardson extrapolation in `r²` from radii
/// `r0·2^{−k}`.
pub fn small_r_limit(strip: &GraphicalStrip, t0: f64, quad: &QuadratureConfig) -> Result<LimitEstimate> {
    let i = strip.graph().interval();
    let room = (i.hi - t0).min(t0 - i.lo);
    if !(room > 0.0) {
        return Err(Error::BallExitsDomain {
            t0,
            r: 0.0,
            lo: i.lo,
            hi: i.hi,
        });
    }
    let r0 = 0.2f64.min((4.0 * room).sqrt());
    let values = (0..RICHARDSON_LEVELS)
        .map(|k| {
            let r = r0 / 2f64.powi(k as i32);
            Ok(perimeter_in_ball(strip, t0, r, quad)?.value() / r.powi(RESCALING_EXPONENT))
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut prev = values.clone();
    let mut err = f64::INFINITY;
    for j in 1..RICHARDSON_LEVELS {
        let f = 4f64.powi(j as i32) - 1.0;
        let next: Vec<f64> = prev.windows(2).map(|w| w[1] + (w[1] - w[0]) / f).collect();
        err = (next[next.len() - 1] - prev[prev.len() - 1]).abs();
        prev = next;
    }
    Ok(LimitEstimate {
        value: prev[0],
        error: err,
    })
}

/// `∫_S λ(r − ρ) dσ_H`, which lies between `σ_H(S ∩ B(p0, r − ε))` and
/// `σ_H(S ∩ B(p0, r))`.
pub fn mollified_perimeter(
    strip: &GraphicalStrip,
    t0: f64,
    r: f64,
    cutoff: &CutoffSpec,
    quad: &QuadratureConfig,
) -> Result<Estimate> {
    let eps = cutoff.epsilon();
    if !(eps < r) {
        return Err(Error::InvalidParameter(format!("cutoff width {eps} must be smaller than r = {r}")));
    }
    let rho = RhoField::new(Point1::xyt(0.0, 0.0, t0));
    ball_region_integral(strip, t0, r, Some(r - eps), quad, |y, t| {
        let p = strip.chart(y, t)?;
        let lam = cutoff.lambda(r - rho.value(&p)?);
        Ok(lam * strip.perimeter_density(y, t)?)
    })
}

/// Convex `y ↦ ρ⁴` on one horizontal slice of the strip, for a center on
/// the strip but off the t-axis.
struct OffAxisSlice {
    g: f64,
    dg: f64,
    x0: f64,
    y0: f64,
    delta: f64,
}

impl OffAxisSlice {
    fn rho4(&self, y: f64) -> f64 {
        let a = (y * self.g - self.x0).powi(2) + (y - self.y0).powi(2);
        let b = 2.0 * self.delta + y * (self.g * self.y0 - self.x0);
        a * a + 4.0 * b * b
    }

    /// `[y1, y2]` with `ρ < r`, if nonempty. `ρ⁴` is convex in `y` and
    /// `|y − y0| < r` on the slice.
    fn interval(&self, r: f64) -> Option<(f64, f64)> {
        let r4 = r.powi(4);
        let (mut lo, mut hi) = (self.y0 - r, self.y0 + r);
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if self.rho4(m1) < self.rho4(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
            if hi - lo <= 1e-15 * (1.0 + lo.abs()) {
                break;
            }
        }
        let ym = 0.5 * (lo + hi);
        if self.rho4(ym) >= r4 {
            return None;
        }
        let root = |mut inside: f64, mut outside: f64| {
            for _ in 0..200 {
                let mid = 0.5 * (inside + outside);
                if mid == inside || mid == outside {
                    break;
                }
                if self.rho4(mid) < r4 {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            inside
        };
        Some((root(ym, self.y0 - r), root(ym, self.y0 + r)))
    }

    fn integral(&self, r: f64) -> f64 {
        match self.interval(r) {
            Some((y1, y2)) => self.g.hypot(1.0) * ((y2 - y1) + self.dg * (y2.powi(3) - y1.powi(3)) / 6.0),
            None => 0.0,
        }
    }
}

/// Experimental: `σ_H(S ∩ B(p0, r))` for a center `p0 = (y0G(t0), y0, t0)`
/// on the strip but off the t-axis. The t-extent of the ball is found by
/// scanning, so thin disconnected pieces could be missed. No monotonicity
/// is claimed for such centers.
pub fn off_axis_perimeter(strip: &GraphicalStrip, y0: f64, t0: f64, r: f64, quad: &QuadratureConfig) -> Result<Estimate> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let graph = *strip.graph();
    let x0 = y0 * graph.value(t0)?;
    let interval = graph.interval();
    let slice = |t: f64| -> Result<OffAxisSlice> {
        let [g, dg, _] = graph.jet(t)?;
        Ok(OffAxisSlice { g, dg, x0, y0, delta: t - t0 })
    };
    let nonempty = |t: f64| -> Result<bool> { Ok(slice(t)?.interval(r).is_some()) };
    let step = r * r / 64.0;
    let exits = || Error::BallExitsDomain {
        t0,
        r,
        lo: interval.lo,
        hi: interval.hi,
    };
    // scan outward until 16 consecutive empty slices, then refine the edge
    let edge = |dir: f64| -> Result<f64> {
        let mut last = t0;
        let mut empty_run = 0;
        let mut k = 1;
        while empty_run < 16 {
            let t = t0 + dir * step * k as f64;
            if !interval.contains(t) {
                return Err(exits());
            }
            if nonempty(t)? {
                last = t;
                empty_run = 0;
            } else {
                empty_run += 1;
            }
            k += 1;
        }
        let (mut inside, mut outside) = (last, last + dir * step);
        for _ in 0..80 {
            let mid = 0.5 * (inside + outside);
            if nonempty(mid)? {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(outside)
    };
    let (lo, hi) = (edge(-1.0)?, edge(1.0)?);
    try_integrate_breaks(|t: f64| Ok::<_, Error>(slice(t)?.integral(r)), &[lo, t0, hi], quad)
}

/// Experimental profile for an off-axis center; requires `allow_off_axis`.
pub fn off_axis_profile(
    strip: &GraphicalStrip,
    y0: f64,
    t0: f64,
    grid: &[f64],
    quad: &QuadratureConfig,
    allow_off_axis: bool,
) -> Result<ProfileTable> {
    let x0 = y0 * strip.graph().value(t0)?;
    if y0 == 0.0 {
        return profile(strip, t0, grid, quad);
    }
    if !allow_off_axis {
        return Err(Error::OffAxisCenter { x0, y0, t0 });
    }
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&r| {
            let p = off_axis_perimeter(strip, y0, t0, r, quad)?;
            Ok(ProfileRow {
                r,
                perimeter: p.value,
                ratio: p.value / r.powi(RESCALING_EXPONENT),
                err_estimate: p.error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileTable {
        graph: strip.graph().label(),
        center: [x0, y0, t0],
        q: Point1::params().homogeneous_dimension(),
        experimental: true,
        rows,
    })
}

/// `ω` as a limit estimate, for symmetry with [`small_r_limit`].
pub fn omega_limit(quad: &QuadratureConfig) -> Result<LimitEstimate> {
    let w = omega_constant(quad)?;
    Ok(LimitEstimate {
        value: w.value,
        error: w.error,
    })
}
