//! Run configuration: field descriptions from `--config` files and inline
//! flags (flags override file values), point coordinates, and grid specs.

use clap::ArgMatches;
use jetfinsler::error::{Error, Result};
use jetfinsler::inputs::{build_fields, parse_config_pairs, ConfigPair, ScalarField, TemporalMetric};

const FIELD_FLAGS: [&str; 5] = [
    "sigma.kind",
    "sigma.coeffs",
    "sigma.terms",
    "h.kind",
    "h.params",
];

/// Assembles σ and h from the optional config file plus any inline flags;
/// inline flags are appended after the file pairs, so they win.
pub fn field_setup(matches: &ArgMatches) -> Result<(ScalarField, TemporalMetric)> {
    let mut pairs: Vec<ConfigPair> = Vec::new();
    if let Some(path) = matches.get_one::<String>("config") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            key: "config".into(),
            msg: format!("cannot read `{path}`: {e}"),
        })?;
        pairs.extend(parse_config_pairs(&text)?);
    }
    for key in FIELD_FLAGS {
        if let Some(value) = matches.get_one::<String>(key) {
            pairs.push(ConfigPair {
                line: 0,
                key: key.to_string(),
                value: value.clone(),
            });
        }
    }
    build_fields(&pairs)
}

/// Parses a comma-separated list of exactly four reals.
pub fn parse_list4(s: &str, what: &str) -> Result<[f64; 4]> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|v| {
            v.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: 0,
                key: what.to_string(),
                msg: format!("`{}` is not a real number", v.trim()),
            })
        })
        .collect::<Result<_>>()?;
    if vals.len() != 4 {
        return Err(Error::Parse {
            line: 0,
            key: what.to_string(),
            msg: format!("expected 4 values, got {}", vals.len()),
        });
    }
    Ok([vals[0], vals[1], vals[2], vals[3]])
}

/// One scanned axis: 0-based coordinate index and its sample values.
pub struct GridAxis {
    pub axis: usize,
    pub values: Vec<f64>,
}

/// Parses repeated `--grid xI=START:STOP:COUNT` specs (I in 1..4).
pub fn parse_grid(specs: &[String]) -> Result<Vec<GridAxis>> {
    let mut axes: Vec<GridAxis> = Vec::new();
    for spec in specs {
        let bad = |msg: String| Error::Parse {
            line: 0,
            key: "grid".into(),
            msg,
        };
        let (name, range) = spec
            .split_once('=')
            .ok_or_else(|| bad(format!("`{spec}` is not xI=START:STOP:COUNT")))?;
        let axis = match name.trim() {
            "x1" => 0,
            "x2" => 1,
            "x3" => 2,
            "x4" => 3,
            other => return Err(bad(format!("unknown axis `{other}` (x1..x4)"))),
        };
        if axes.iter().any(|a| a.axis == axis) {
            return Err(bad(format!("axis `{name}` given twice")));
        }
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("`{range}` is not START:STOP:COUNT")));
        }
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad stop `{}`", parts[1])))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad count `{}`", parts[2])))?;
        if count < 1 {
            return Err(bad("count must be >= 1".into()));
        }
        let values = if count == 1 {
            vec![start]
        } else {
            (0..count)
                .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
                .collect()
        };
        axes.push(GridAxis { axis, values });
    }
    axes.sort_by_key(|a| a.axis);
    Ok(axes)
}
