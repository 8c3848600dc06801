//! One-dimensional adaptive quadrature.
//!
//! Two panel rules share one globally adaptive driver: the double-exponential
//! (tanh-sinh) rule, which tolerates algebraic endpoint singularities such as
//! `(1 − τ²)^{1/4}`, and a 7/15-point Gauss–Kronrod pair. The driver keeps the
//! panel with the largest error estimate at the top of a heap and bisects it
//! until the summed error meets `max(abs_tol, rel_tol·|I|)`.
//!
//! Fixed composite Gauss–Legendre rules for mesh-refinement studies live at
//! the bottom of this module.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Double-exponential panels; default for endpoint-singular integrands.
    TanhSinh,
    /// Gauss–Kronrod 7/15 panels with bisection.
    GaussKronrod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of bisections applied to any initial panel.
    pub max_depth: u32,
    pub scheme: Scheme,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_depth: 40,
            scheme: Scheme::TanhSinh,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(QuadratureError::InvalidConfig(format!(
                "tolerances must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(QuadratureError::InvalidConfig("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature did not converge: estimate {value} with error {error:e} > tolerance {tolerance:e}")]
    NonConvergence { value: f64, error: f64, tolerance: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate, QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    integrate_breaks(f, &[a, b], cfg)
}

/// Integrates `f` over `[breaks[0], breaks.last()]`, starting from the given
/// panels. Interior breakpoints should sit on kinks or endpoint-like features.
pub fn integrate_breaks<F>(mut f: F, breaks: &[f64], cfg: &QuadratureConfig) -> Result<Estimate, QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_breaks(|x| Ok::<f64, QuadratureError>(f(x)), breaks, cfg)
}

/// Fallible-integrand variant of [`integrate`]; the first integrand error
/// aborts the integration and is returned unchanged.
pub fn try_integrate<F, E>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    try_integrate_breaks(f, &[a, b], cfg)
}

pub fn try_integrate_breaks<F, E>(mut f: F, breaks: &[f64], cfg: &QuadratureConfig) -> Result<Estimate, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    cfg.validate()?;
    if breaks.len() < 2 {
        return Err(QuadratureError::InvalidConfig("need at least two breakpoints".into()).into());
    }
    if breaks.iter().any(|b| !b.is_finite()) {
        return Err(QuadratureError::InvalidConfig("breakpoints must be finite".into()).into());
    }

    let mut evaluations = 0usize;
    let mut heap = BinaryHeap::new();
    // panels that cannot be refined further (max depth or rounding floor)
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;

    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        let (value, error, n) = apply_rule(&mut f, a, b, cfg)?;
        evaluations += n;
        heap.push(Panel { a, b, value, error, depth: 0 });
    }

    let mut sum_value: f64 = heap.iter().map(|p| p.value).sum();
    let mut sum_error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        let value = frozen_value + sum_value;
        let error = frozen_error + sum_error;
        let tolerance = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= tolerance {
            // resum to shed the drift of the running totals
            let value = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
            return Ok(Estimate { value, error, evaluations });
        }
        let Some(worst) = heap.pop() else {
            return Err(QuadratureError::NonConvergence { value, error, tolerance }.into());
        };
        sum_value -= worst.value;
        sum_error -= worst.error;
        let mid = worst.a + 0.5 * (worst.b - worst.a);
        let splittable = worst.depth < cfg.max_depth
            && mid > worst.a
            && mid < worst.b
            && worst.error > 64.0 * f64::EPSILON * worst.value.abs();
        if !splittable {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        if evaluations > MAX_EVALUATIONS {
            return Err(QuadratureError::NonConvergence { value, error, tolerance }.into());
        }
        let (lv, le, ln) = apply_rule(&mut f, worst.a, mid, cfg)?;
        let (rv, re, rn) = apply_rule(&mut f, mid, worst.b, cfg)?;
        evaluations += ln + rn;
        sum_value += lv + rv;
        sum_error += le + re;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re, depth: worst.depth + 1 });
    }
}

const MAX_EVALUATIONS: usize = 20_000_000;

fn apply_rule<F, E>(f: &mut F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(f64, f64, usize), E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    match cfg.scheme {
        Scheme::TanhSinh => tanh_sinh_panel(f, a, b, cfg),
        Scheme::GaussKronrod => gauss_kronrod_panel(f, a, b),
    }
}

fn checked<F, E>(f: &mut F, x: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadratureError::NonFinite { x }.into())
    }
}

const TS_MAX_LEVEL: u32 = 7;
const TS_T_MAX: f64 = 4.0;

/// Tanh-sinh on one panel. Level `L` uses step `2^-L` and reuses the nodes
/// of all coarser levels; the error estimate is the difference between the
/// last two levels.
fn tanh_sinh_panel<F, E>(f: &mut F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(f64, f64, usize), E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let scale = a.abs().max(b.abs()).max(hw.abs());
    let mut evals = 0usize;

    // Weighted sum over nodes ±t (t > 0), excluding nodes that collapse onto
    // an endpoint in floating point.
    let side_sum = |t: f64, f: &mut F, evals: &mut usize| -> Result<f64, E> {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let weight = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        // distance from each endpoint: hw·(1 − tanh u) = hw·2/(e^{2u}+1)
        let dist = hw * 2.0 / ((2.0 * u).exp() + 1.0);
        if dist.abs() <= 4.0 * f64::EPSILON * scale || weight == 0.0 {
            return Ok(0.0);
        }
        let left = a + dist;
        let right = b - dist;
        let fl = checked(f, left)?;
        let fr = checked(f, right)?;
        *evals += 2;
        Ok(weight * (fl + fr))
    };

    let f0 = checked(f, c)?;
    evals += 1;
    // level 0: h = 1
    let mut sum = FRAC_PI_2 * f0;
    let mut k = 1;
    while (k as f64) <= TS_T_MAX {
        sum += side_sum(k as f64, f, &mut evals)?;
        k += 1;
    }
    let mut h = 1.0;
    let mut prev = hw * h * sum;
    let mut diff = f64::INFINITY;
    let target = 0.1 * cfg.abs_tol.max(cfg.rel_tol * prev.abs());
    let mut current = prev;
    for _level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let mut k = 1usize;
        loop {
            let t = k as f64 * h;
            if t > TS_T_MAX {
                break;
            }
            sum += side_sum(t, f, &mut evals)?;
            k += 2;
        }
        current = hw * h * sum;
        diff = (current - prev).abs();
        let target = target.max(0.1 * cfg.rel_tol * current.abs());
        if diff <= target {
            break;
        }
        prev = current;
    }
    Ok((current, diff, evals))
}

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod_panel<F, E>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64, usize), E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let fc = checked(f, c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = hw * XGK[j];
        let s = checked(f, c - dx)? + checked(f, c + dx)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    let value = kronrod * hw;
    let error = ((kronrod - gauss) * hw).abs();
    Ok((value, error, 15))
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule: `cells` equal cells of `order` points each.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cells: usize,
}

impl CompositeRule {
    pub fn new(cells: usize, order: usize) -> Self {
        assert!(cells >= 1 && order >= 1);
        let (nodes, weights) = gauss_legendre(order);
        Self { nodes, weights, cells }
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// `(x_j, w_j)` pairs covering `[a, b]`.
    pub fn points(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let h = (b - a) / self.cells as f64;
        let mut out = Vec::with_capacity(self.cells * self.nodes.len());
        for c in 0..self.cells {
            let lo = a + c as f64 * h;
            let mid = lo + 0.5 * h;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + 0.5 * h * x, 0.5 * h * w));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both() -> [QuadratureConfig; 2] {
        [
            QuadratureConfig::default(),
            QuadratureConfig::default().with_scheme(Scheme::GaussKronrod),
        ]
    }

    #[test]
    fn polynomials_and_smooth() {
        for cfg in both() {
            let e = integrate(|x| 3.0 * x * x, 0.0, 2.0, &cfg).unwrap();
            assert!((e.value - 8.0).abs() < 1e-12);
            let e = integrate(f64::exp, -1.0, 1.0, &cfg).unwrap();
            assert!((e.value - (1f64.exp() - (-1f64).exp())).abs() < 1e-12);
            let e = integrate(f64::sin, 0.0, std::f64::consts::PI, &cfg).unwrap();
            assert!((e.value - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 sqrt(x) dx = 2/3; ∫_{-1}^{1} sqrt(1-x²) = π/2
        for cfg in both() {
            let e = integrate(f64::sqrt, 0.0, 1.0, &cfg).unwrap();
            assert!((e.value - 2.0 / 3.0).abs() < 1e-11, "{cfg:?} {e:?}");
            let e = integrate(|x| (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, &cfg).unwrap();
            assert!((e.value - FRAC_PI_2).abs() < 1e-11, "{cfg:?} {e:?}");
        }
    }

    #[test]
    fn narrow_interior_peak() {
        // ∫ 1/(1 + (x/δ)²) over [-1, 1] = 2δ atan(1/δ)
        let d = 1e-4f64;
        let exact = 2.0 * d * (1.0 / d).atan();
        for cfg in both() {
            let e = integrate(|x| 1.0 / (1.0 + (x - 3e-4) * (x - 3e-4) / (d * d)), -1.0, 1.0, &cfg).unwrap();
            let exact_shifted = d * (((1.0 - 3e-4) / d).atan() + ((1.0 + 3e-4) / d).atan());
            assert!((e.value - exact_shifted).abs() < 1e-12 * exact, "{cfg:?} {e:?}");
        }
    }

    #[test]
    fn breaks_and_kinks() {
        let cfg = QuadratureConfig::default();
        let e = integrate_breaks(|x: f64| x.abs(), &[-1.0, 0.0, 2.0], &cfg).unwrap();
        assert!((e.value - 2.5).abs() < 1e-13);
    }

    #[test]
    fn errors() {
        let bad = QuadratureConfig { rel_tol: 0.0, ..Default::default() };
        assert!(matches!(integrate(|x| x, 0.0, 1.0, &bad), Err(QuadratureError::InvalidConfig(_))));
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            integrate(|x| if x > 0.5 { f64::NAN } else { 1.0 }, 0.0, 1.0, &cfg),
            Err(QuadratureError::NonFinite { .. })
        ));
        // a jump cannot be resolved to 1e-300 absolute with rel tolerance at the floor
        let strict = QuadratureConfig { rel_tol: 1e-300, abs_tol: 1e-300, max_depth: 5, ..Default::default() };
        assert!(matches!(
            integrate(|x| if x > 0.3 { 1.0 } else { 0.0 }, 0.0, 1.0, &strict),
            Err(QuadratureError::NonConvergence { .. })
        ));
    }

    #[test]
    fn fallible_integrand() {
        #[derive(Debug)]
        enum E {
            Q,
            Custom,
        }
        impl From<QuadratureError> for E {
            fn from(_: QuadratureError) -> Self {
                E::Q
            }
        }
        let r: Result<Estimate, E> =
            try_integrate(|x| if x > 0.9 { Err(E::Custom) } else { Ok(x) }, 0.0, 1.0, &QuadratureConfig::default());
        assert!(matches!(r, Err(E::Custom)));
        let r: Result<Estimate, E> = try_integrate(Ok, 0.0, 1.0, &QuadratureConfig::default());
        assert!(matches!(r, Ok(e) if (e.value - 0.5).abs() < 1e-13));
    }

    #[test]
    fn gauss_legendre_exactness() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            // exact up to degree 2n-1
            let deg = 2 * n - 1;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((s - exact).abs() < 1e-13, "n={n}");
        }
        let rule = CompositeRule::new(4, 3);
        let s: f64 = rule.points(0.0, 2.0).iter().map(|(x, w)| w * x * x).sum();
        assert!((s - 8.0 / 3.0).abs() < 1e-14);
    }
}
