//! Parsing of graph-function specs: `zero | linear:a,b | arctan:k | cubic:a | tanh:k`.

use hstrip_core::surface::{
    validate_graphical_strip, GraphFunction, GraphicalStrip, Interval, DEFAULT_VALIDATION_SAMPLES,
};

use crate::error::CliError;

fn params(name: &str, body: Option<&str>, count: usize) -> Result<Vec<f64>, CliError> {
    let body = body.ok_or_else(|| CliError::InvalidGraph(format!("`{name}` takes {count} parameter(s), e.g. {name}:{}", vec!["1"; count].join(","))))?;
    let values = body
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::InvalidGraph(format!("`{s}` is not a number in `{name}:{body}`")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if values.len() != count {
        return Err(CliError::InvalidGraph(format!(
            "`{name}` takes {count} parameter(s), got {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::InvalidGraph(format!("parameter {v} of `{name}` is not finite")));
    }
    Ok(values)
}

/// Parses a spec and checks `G' ≥ 0` on a dense sample of its interval.
pub fn parse_g_spec(spec: &str) -> Result<GraphFunction, CliError> {
    let spec = spec.trim();
    let (name, body) = match spec.split_once(':') {
        Some((n, b)) => (n.trim(), Some(b)),
        None => (spec, None),
    };
    let g = match name {
        "zero" => {
            if body.is_some() {
                return Err(CliError::InvalidGraph("`zero` takes no parameters".into()));
            }
            GraphFunction::zero()
        }
        "linear" => {
            let p = params(name, body, 2)?;
            GraphFunction::linear(p[0], p[1])
        }
        "arctan" => GraphFunction::arctan(params(name, body, 1)?[0]),
        "cubic" => GraphFunction::cubic(params(name, body, 1)?[0]),
        "tanh" => GraphFunction::tanh(params(name, body, 1)?[0]),
        other => {
            return Err(CliError::InvalidGraph(format!(
                "unknown family `{other}`; expected zero | linear:a,b | arctan:k | cubic:a | tanh:k"
            )))
        }
    };
    validate_graphical_strip(&g, DEFAULT_VALIDATION_SAMPLES).map_err(|e| CliError::InvalidGraph(e.to_string()))?;
    Ok(g)
}

/// `lo,hi` with `lo < hi`; either end may be `-inf`/`inf`.
pub fn parse_interval(s: &str) -> Result<Interval, CliError> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("interval `{s}` should look like lo,hi")))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("`{v}` is not a number in interval `{s}`")))
    };
    Interval::new(parse(lo)?, parse(hi)?).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn build_strip(spec: &str, interval: Option<Interval>) -> Result<GraphicalStrip, CliError> {
    let mut g = parse_g_spec(spec)?;
    if let Some(i) = interval {
        g = g.with_interval(i);
    }
    GraphicalStrip::new(g).map_err(|e| CliError::InvalidGraph(e.to_string()))
}
