//! The subcommands, run on fully resolved settings.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use hstrip_core::calculus::{identity_suite, ibp_suite, verify_minsurf_inequality, CutoffSpec, IdentityReport, SuiteConfig};
use hstrip_core::heis::Point1;
use hstrip_core::perimeter::{
    check_ball, large_r_correction, monotonicity_check, off_axis_profile, omega_constant, perimeter_in_ball, radius_grid,
    small_r_limit, MonotonicityCertificate, ProfileTable,
};
use hstrip_core::quadrature::QuadratureConfig;
use hstrip_core::surface::{GraphicalStrip, TestSurface};

use crate::error::CliError;

pub const CSV_HEADER: &str = "r,perimeter,ratio,err_estimate";

/// Radii used for the cutoff inequality in `verify`.
const MINSURF_RADII: [f64; 3] = [0.5, 2.0, 10.0];
const MINSURF_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (csv or json)")),
        }
    }
}

/// Where the primary output goes: a file or standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct Sink(pub Option<PathBuf>);

impl Sink {
    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.0 {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn check(&self) -> Result<(), CliError> {
        if !(self.min > 0.0 && self.min < self.max && self.max.is_finite()) {
            return Err(CliError::Usage(format!(
                "radius grid needs 0 < rmin < rmax, got rmin = {}, rmax = {}",
                self.min, self.max
            )));
        }
        if self.count < 2 {
            return Err(CliError::Usage(format!("need at least 2 points, got {}", self.count)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSettings {
    pub g: String,
    pub interval: Option<String>,
    pub t0: f64,
    pub grid: GridSpec,
    /// Monotonicity slack relative to the largest ratio.
    pub slack: f64,
    pub y0: f64,
    pub off_axis: bool,
    pub quad: QuadratureConfig,
    pub format: Format,
    #[serde(skip)]
    pub out: Sink,
    #[serde(skip)]
    pub strip: GraphicalStrip,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySettings {
    pub g: String,
    pub interval: Option<String>,
    pub t0: f64,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub ibp_tol: f64,
    pub quad: QuadratureConfig,
    #[serde(skip)]
    pub timing: bool,
    #[serde(skip)]
    pub out: Sink,
    #[serde(skip)]
    pub strip: GraphicalStrip,
}

#[derive(Debug, Clone)]
pub struct LimitsSettings {
    pub t0: f64,
    pub r: f64,
    pub quad: QuadratureConfig,
    pub strip: GraphicalStrip,
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn table_to_csv(table: &ProfileTable) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in &table.rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt17(r.r),
            fmt17(r.perimeter),
            fmt17(r.ratio),
            fmt17(r.err_estimate)
        ));
    }
    s
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    config: &'a ProfileSettings,
    table: &'a ProfileTable,
    monotonicity: &'a MonotonicityCertificate,
}

/// Exit 0 iff the profile is nondecreasing within the slack.
pub fn cmd_profile(s: &ProfileSettings) -> Result<i32, CliError> {
    s.grid.check()?;
    let grid = radius_grid(s.grid.min, s.grid.max, s.grid.count, s.grid.log)?;
    if !s.y0.is_finite() {
        return Err(CliError::Usage(format!("y0 must be finite, got {}", s.y0)));
    }
    let table = off_axis_profile(&s.strip, s.y0, s.t0, &grid, &s.quad, s.off_axis)?;
    let cert = monotonicity_check(&table, s.slack * table.max_ratio().abs());
    let text = match s.format {
        Format::Csv => table_to_csv(&table),
        Format::Json => {
            let mut j = serde_json::to_string_pretty(&ProfileJson { config: s, table: &table, monotonicity: &cert })
                .expect("profile serializes");
            j.push('\n');
            j
        }
    };
    s.out.write(&text)?;
    if table.experimental {
        eprintln!(
            "experimental off-axis center: monotonicity is not claimed here (observed: {})",
            if cert.pass { "nondecreasing" } else { "decreasing somewhere" }
        );
        return Ok(0);
    }
    if cert.pass {
        eprintln!("monotone: yes ({} rows, largest drop {:.3e})", table.rows.len(), cert.max_drop);
        Ok(0)
    } else {
        eprintln!(
            "monotone: NO, first violation at row {} (largest drop {:.3e}, slack {:.3e})",
            cert.first_violation.unwrap_or(0),
            cert.max_drop,
            cert.slack
        );
        Ok(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl From<&IdentityReport> for ResultEntry {
    fn from(r: &IdentityReport) -> Self {
        Self {
            name: r.name.clone(),
            samples: r.samples,
            max_residual: r.max_residual,
            mean_residual: r.mean_residual,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    config: &'a VerifySettings,
    results: Vec<ResultEntry>,
    wall_time_seconds: Option<f64>,
}

/// `max(0, LHS/scale)` of the cutoff inequality for every admissible radius.
fn minsurf_report(s: &VerifySettings) -> Result<IdentityReport, CliError> {
    let mut residuals = Vec::new();
    for r in MINSURF_RADII {
        if check_ball(&s.strip, s.t0, r).is_err() {
            continue;
        }
        let cut = CutoffSpec::quintic(r / 10.0)?;
        let o = verify_minsurf_inequality(&s.strip, s.t0, r, &cut, &s.quad)?;
        residuals.push((Point1::xyt(0.0, 0.0, s.t0), (o.lhs / o.scale).max(0.0)));
    }
    if residuals.is_empty() {
        check_ball(&s.strip, s.t0, MINSURF_RADII[0])?;
    }
    Ok(IdentityReport::from_residuals(
        format!("strip[{}]/minsurf", s.strip.graph()),
        MINSURF_TOL,
        0,
        residuals,
    ))
}

/// Exit 0 iff every identity passes.
pub fn cmd_verify(s: &VerifySettings) -> Result<i32, CliError> {
    if s.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(s.tol > 0.0 && s.ibp_tol > 0.0) {
        return Err(CliError::Usage("tolerances must be positive".into()));
    }
    let started = Instant::now();
    let suite = SuiteConfig {
        samples: s.samples,
        seed: s.seed,
        tolerance: s.tol,
        ..SuiteConfig::default()
    };
    let mut reports = identity_suite(&TestSurface::Strip(s.strip.clone()), &suite)?;
    reports.extend(ibp_suite(&s.strip, s.t0, &s.quad, s.ibp_tol)?);
    reports.push(minsurf_report(s)?);
    let results: Vec<ResultEntry> = reports.iter().map(ResultEntry::from).collect();
    let all_pass = results.iter().all(|r| r.pass);
    let json = VerifyJson {
        config: s,
        results,
        wall_time_seconds: s.timing.then(|| started.elapsed().as_secs_f64()),
    };
    let mut text = serde_json::to_string_pretty(&json).expect("report serializes");
    text.push('\n');
    s.out.write(&text)?;
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("FAIL {}: max residual {:e} > tolerance {:e}", r.name, r.max_residual, r.tolerance);
    }
    Ok(if all_pass { 0 } else { 1 })
}

pub fn cmd_omega(quad: &QuadratureConfig) -> Result<i32, CliError> {
    let e = omega_constant(quad)?;
    println!("{:.15} ± {:.1e}", e.value, e.error);
    Ok(0)
}

pub fn cmd_limits(s: &LimitsSettings) -> Result<i32, CliError> {
    let small = small_r_limit(&s.strip, s.t0, &s.quad)?;
    let omega = omega_constant(&s.quad)?;
    println!("graph = {}", s.strip.graph());
    println!("t0 = {}", s.t0);
    println!("omega = {:.15}", omega.value);
    println!("small_r_limit = {:.15} ± {:.1e}", small.value, small.error);
    let radii = [s.r, 2.0 * s.r, 4.0 * s.r];
    let mut corrections = Vec::new();
    for (k, &r) in radii.iter().enumerate() {
        let c = large_r_correction(&s.strip, s.t0, r, &s.quad)?;
        let total = perimeter_in_ball(&s.strip, s.t0, r, &s.quad)?.value() / r.powi(3);
        if k == 0 {
            println!("large_r_correction(r={r}) = {:.12} ± {:.1e}", c.value, c.error);
            println!("total(r={r}) = {total:.12}");
        }
        corrections.push((r, c.value, total));
    }
    for &(r, c, total) in &corrections {
        println!("trend r={r}: correction = {c:.12}, total = {total:.12}");
    }
    let d1 = corrections[1].1 - corrections[0].1;
    let d2 = corrections[2].1 - corrections[1].1;
    let verdict = if d2.abs() <= 0.5 * d1.abs() || d2.abs() < 1e-12 {
        "increments shrink: correction appears finite"
    } else {
        "increments do not shrink: correction may diverge"
    };
    println!("trend: increments {d1:.3e}, {d2:.3e}; {verdict}");
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hstrip_core::perimeter::{profile, ProfileRow};
    use hstrip_core::surface::GraphFunction;

    pub fn csv_to_rows(text: &str) -> Result<Vec<ProfileRow>, String> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err("missing or wrong header".into());
        }
        lines
            .map(|line| {
                let v = line
                    .split(',')
                    .map(|f| f.parse::<f64>().map_err(|e| format!("`{f}`: {e}")))
                    .collect::<Result<Vec<f64>, String>>()?;
                match v[..] {
                    [r, perimeter, ratio, err_estimate] => Ok(ProfileRow { r, perimeter, ratio, err_estimate }),
                    _ => Err(format!("expected 4 fields in `{line}`")),
                }
            })
            .collect()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let s = GraphicalStrip::new(GraphFunction::arctan(1.0)).unwrap();
        let grid = radius_grid(0.01, 100.0, 9, true).unwrap();
        let table = profile(&s, 0.3, &grid, &QuadratureConfig::default()).unwrap();
        let csv = table_to_csv(&table);
        assert!(csv.starts_with("r,perimeter,ratio,err_estimate\n"));
        assert!(!csv.contains('\r'));
        assert_eq!(csv_to_rows(&csv).unwrap(), table.rows);
    }

    #[test]
    fn awkward_values_survive() {
        for v in [0.1, 1.0 / 3.0, f64::MIN_POSITIVE, 1e300, 0.874_019_184_764_04, 5e-324] {
            assert_eq!(fmt17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn grid_checks() {
        let g = |min, max, count| GridSpec { min, max, count, log: false }.check();
        assert!(g(0.1, 10.0, 8).is_ok());
        assert_eq!(g(10.0, 0.1, 8).unwrap_err().exit_code(), 64);
        assert_eq!(g(1.0, 1.0, 8).unwrap_err().exit_code(), 64);
        assert_eq!(g(0.0, 1.0, 8).unwrap_err().exit_code(), 64);
        assert_eq!(g(0.1, 1.0, 1).unwrap_err().exit_code(), 64);
    }

    #[test]
    fn bad_csv() {
        assert!(csv_to_rows("r,p\n").is_err());
        assert!(csv_to_rows("r,perimeter,ratio,err_estimate\n1,2,3\n").is_err());
        assert!(csv_to_rows("r,perimeter,ratio,err_estimate\n1,2,x,4\n").is_err());
    }
}
