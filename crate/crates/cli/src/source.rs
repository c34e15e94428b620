//! Resolving model and metric arguments: either a JSON file or a builtin.

use std::fs;

use anyhow::{bail, Context, Result};
use curvlab::exact::MultiPoly;
use curvlab::metrics::{coords_3s, metric_g_3s, metric_g_big_f, metric_g_f, MetricFile, PolynomialMetric};
use curvlab::modelspace::{model_v3s, ModelFile, ModelSpace};

fn parse_s(arg: &str, raw: &str) -> Result<usize> {
    raw.trim()
        .parse()
        .with_context(|| format!("`{arg}`: expected an integer after the colon"))
}

/// `v3s:S` or a path to a model file.
pub fn load_model(arg: &str) -> Result<ModelSpace> {
    if let Some(s) = arg.strip_prefix("v3s:") {
        return Ok(model_v3s(parse_s(arg, s)?)?);
    }
    let src = fs::read_to_string(arg).with_context(|| format!("reading model file `{arg}`"))?;
    let model = ModelFile::from_json(&src)?.into_model()?;
    if let Err(v) = model.validate() {
        bail!("`{arg}` is not an algebraic curvature tensor: {v}");
    }
    Ok(model)
}

/// Largest `N` among identifiers `xN` in the source.
fn max_x_index(src: &str) -> usize {
    let bytes = src.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        let boundary = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
        if bytes[i] == b'x' && boundary {
            let digits: String = src[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(n) = digits.parse::<usize>() {
                best = best.max(n);
            }
        }
        i += 1;
    }
    best
}

/// `g3s:S`, `gf:<poly in x1..xp>`, `gF:<f1>,<f2>,...` or a path to a metric
/// file. For `gf` the dimension `p` is the largest `xN` index (at least 2).
pub fn load_metric(arg: &str) -> Result<PolynomialMetric> {
    if let Some(s) = arg.strip_prefix("g3s:") {
        return Ok(metric_g_3s(parse_s(arg, s)?)?);
    }
    if let Some(f) = arg.strip_prefix("gf:") {
        let p = max_x_index(f).max(2);
        let vars: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
        let poly = MultiPoly::parse(f, &vars).with_context(|| format!("parsing `{f}` over x1..x{p}"))?;
        return Ok(metric_g_f(p, &poly)?);
    }
    if let Some(list) = arg.strip_prefix("gF:") {
        let parts: Vec<&str> = list.split(',').collect();
        let coords = coords_3s(parts.len());
        let fs = parts
            .iter()
            .map(|f| MultiPoly::parse(f, &coords).with_context(|| format!("parsing `{f}`")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(metric_g_big_f(parts.len(), &fs)?);
    }
    let src = fs::read_to_string(arg).with_context(|| format!("reading metric file `{arg}`"))?;
    Ok(MetricFile::from_json(&src)?.into_metric()?)
}
