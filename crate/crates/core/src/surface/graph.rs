//! Profile functions `G` of graphical strips `{x = yG(t)}`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance below which a sampled `G'` counts as a violation of `G' ≥ 0`.
pub const MONOTONICITY_SLACK: f64 = 1e-12;

/// Built-in families of non-decreasing profile functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GraphKind {
    /// `G ≡ 0` (the vertical plane `x = 0`).
    Zero,
    /// `G(t) = a t + b`.
    Linear { a: f64, b: f64 },
    /// `G(t) = arctan(k t)`.
    Arctan { k: f64 },
    /// `G(t) = a t³`.
    Cubic { a: f64 },
    /// `G(t) = tanh(k t)`.
    Tanh { k: f64 },
}

impl GraphKind {
    /// `(G, G', G'')` at `s`.
    pub fn jet(&self, s: f64) -> [f64; 3] {
        match *self {
            GraphKind::Zero => [0.0, 0.0, 0.0],
            GraphKind::Linear { a, b } => [a * s + b, a, 0.0],
            GraphKind::Arctan { k } => {
                let ks = k * s;
                let d = 1.0 / (1.0 + ks * ks);
                [ks.atan(), k * d, -2.0 * k * k * ks * d * d]
            }
            GraphKind::Cubic { a } => [a * s * s * s, 3.0 * a * s * s, 6.0 * a * s],
            GraphKind::Tanh { k } => {
                let th = (k * s).tanh();
                let sech2 = 1.0 - th * th;
                [th, k * sech2, -2.0 * k * k * th * sech2]
            }
        }
    }

    fn params_finite(&self) -> bool {
        match *self {
            GraphKind::Zero => true,
            GraphKind::Linear { a, b } => a.is_finite() && b.is_finite(),
            GraphKind::Arctan { k } | GraphKind::Tanh { k } => k.is_finite(),
            GraphKind::Cubic { a } => a.is_finite(),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Zero => write!(f, "zero"),
            GraphKind::Linear { a, b } => write!(f, "linear:{a},{b}"),
            GraphKind::Arctan { k } => write!(f, "arctan:{k}"),
            GraphKind::Cubic { a } => write!(f, "cubic:{a}"),
            GraphKind::Tanh { k } => write!(f, "tanh:{k}"),
        }
    }
}

/// Closed interval `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidParameter(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }
}

/// A profile function `G` on an interval `I`, possibly rescaled in time:
/// `G(t) = kind(s·t)` with `s = time_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphFunction {
    kind: GraphKind,
    time_scale: f64,
    interval: Interval,
}

impl GraphFunction {
    pub fn new(kind: GraphKind) -> Self {
        Self {
            kind,
            time_scale: 1.0,
            interval: Interval::REAL_LINE,
        }
    }

    pub fn zero() -> Self {
        Self::new(GraphKind::Zero)
    }

    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(GraphKind::Linear { a, b })
    }

    pub fn arctan(k: f64) -> Self {
        Self::new(GraphKind::Arctan { k })
    }

    pub fn cubic(a: f64) -> Self {
        Self::new(GraphKind::Cubic { a })
    }

    pub fn tanh(k: f64) -> Self {
        Self::new(GraphKind::Tanh { k })
    }

    pub fn with_interval(mut self, interval: Interval) -> Self {
        self.interval = interval;
        self
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn time_scale(&self) -> f64 {
        self.time_scale
    }

    /// Identifier such as `linear:1,0` or `arctan:1@s=0.25` for rescaled profiles.
    pub fn label(&self) -> String {
        if self.time_scale == 1.0 {
            self.kind.to_string()
        } else {
            format!("{}@s={}", self.kind, self.time_scale)
        }
    }

    /// `G_λ(t) = G(t/λ²)`, the profile of the dilated strip `δ_λ(S)`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        let l2 = lambda * lambda;
        Ok(Self {
            kind: self.kind,
            time_scale: self.time_scale / l2,
            interval: Interval {
                lo: self.interval.lo * l2,
                hi: self.interval.hi * l2,
            },
        })
    }

    fn check(&self, t: f64) -> Result<()> {
        if self.interval.contains(t) {
            Ok(())
        } else {
            Err(Error::OutsideInterval {
                t,
                lo: self.interval.lo,
                hi: self.interval.hi,
            })
        }
    }

    /// Unchecked `(G, G', G'')`; callers guarantee `t ∈ I`.
    #[inline]
    pub fn jet_unchecked(&self, t: f64) -> [f64; 3] {
        let s = self.time_scale;
        let [g, dg, d2g] = self.kind.jet(s * t);
        [g, s * dg, s * s * d2g]
    }

    pub fn jet(&self, t: f64) -> Result<[f64; 3]> {
        self.check(t)?;
        Ok(self.jet_unchecked(t))
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t)?[0])
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t)?[1])
    }

    pub fn second_derivative(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t)?[2])
    }

    /// Points of `I` around which `G'/(1+G²)` varies: the center of the
    /// profile's transition and geometric offsets at its natural scale.
    /// Useful as quadrature breakpoints.
    pub fn feature_points(&self) -> Vec<f64> {
        let (center, width) = match self.kind {
            GraphKind::Zero => return Vec::new(),
            GraphKind::Linear { a, b } if a != 0.0 => (-b / a, 1.0 / a.abs()),
            GraphKind::Linear { .. } => return Vec::new(),
            GraphKind::Arctan { k } | GraphKind::Tanh { k } if k != 0.0 => (0.0, 1.0 / k.abs()),
            GraphKind::Cubic { a } if a != 0.0 => (0.0, a.abs().powf(-1.0 / 3.0)),
            _ => return Vec::new(),
        };
        let s = self.time_scale;
        let (c, w) = (center / s, width / s.abs());
        let mut pts = vec![c];
        for j in -1..=4 {
            let d = w * 4f64.powi(j);
            pts.push(c - d);
            pts.push(c + d);
        }
        pts.retain(|t| t.is_finite() && self.interval.contains(*t));
        pts.sort_by(f64::total_cmp);
        pts
    }

    /// `samples` points covering `I`; unbounded ends are reached through a
    /// `tan` map so every scale is visited.
    fn sample_grid(&self, samples: usize) -> Vec<f64> {
        let Interval { lo, hi } = self.interval;
        let n = samples.max(2);
        let u = |i: usize| i as f64 / (n - 1) as f64;
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (0..n).map(|i| lo + (hi - lo) * u(i)).collect(),
            (false, false) => (0..n)
                .map(|i| ((u(i) - 0.5) * 2.0 * FRAC_PI_2 * (1.0 - 1e-9)).tan())
                .collect(),
            (true, false) => (0..n)
                .map(|i| lo + (u(i) * FRAC_PI_2 * (1.0 - 1e-9)).tan())
                .collect(),
            (false, true) => (0..n)
                .map(|i| hi - ((1.0 - u(i)) * FRAC_PI_2 * (1.0 - 1e-9)).tan())
                .collect(),
        }
    }
}

impl fmt::Display for GraphFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Outcome of checking `G' ≥ 0` on a dense grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripCertificate {
    pub samples: usize,
    pub min_derivative: f64,
    /// Maximal runs of consecutive samples with `G' > 0`, as `(t_first, t_last)`.
    pub strict_intervals: Vec<(f64, f64)>,
}

impl StripCertificate {
    /// Strict strip: `G' > 0` somewhere.
    pub fn is_strict(&self) -> bool {
        !self.strict_intervals.is_empty()
    }

    /// `G' > 0` at every sample.
    pub fn strict_everywhere(&self) -> bool {
        self.strict_intervals.len() == 1 && self.min_derivative > MONOTONICITY_SLACK
    }
}

/// Checks `G' ≥ −1e−12` on `samples` grid points of `I` and records where
/// `G'` is strictly positive. Fails with the first offending `t`.
pub fn validate_graphical_strip(g: &GraphFunction, samples: usize) -> Result<StripCertificate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    if !g.kind.params_finite() || !g.time_scale.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite parameters in {g}")));
    }
    let mut min_derivative = f64::INFINITY;
    let mut strict_intervals = Vec::new();
    let mut run: Option<(f64, f64)> = None;
    for t in g.sample_grid(samples) {
        let d = g.jet_unchecked(t)[1];
        if d.is_nan() || d < -MONOTONICITY_SLACK {
            return Err(Error::NonMonotoneGraph { t, derivative: d });
        }
        min_derivative = min_derivative.min(d);
        if d > MONOTONICITY_SLACK {
            run = Some(match run {
                Some((a, _)) => (a, t),
                None => (t, t),
            });
        } else if let Some(r) = run.take() {
            strict_intervals.push(r);
        }
    }
    if let Some(r) = run {
        strict_intervals.push(r);
    }
    Ok(StripCertificate {
        samples,
        min_derivative,
        strict_intervals,
    })
}
