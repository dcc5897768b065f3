//! Input parsing: graphs and spaces from family strings or JSON files,
//! fields, sets, and distributions keyed by point labels.

use anyhow::{anyhow, bail, Context, Result};
use concurve::field::ScalarField;
use concurve::iso::VertexSet;
use concurve::space::{parse_family, FiniteMetricSpace, Graph};
use concurve::transport::Distribution;
use concurve::{BigRational, Rational};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// A space argument is either a named family like `tripod:4` or a path to
/// a graph JSON file `{"n": .., "edges": [[i,j], ..]}`.
pub fn load_space(arg: &str) -> Result<FiniteMetricSpace> {
    if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        let gf: GraphFile = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
        let g = Graph::build(gf.n, &gf.edges)?;
        return Ok(FiniteMetricSpace::from_graph(g));
    }
    Ok(parse_family(arg)?)
}

pub fn load_graph(arg: &str) -> Result<Graph> {
    let space = load_space(arg)?;
    match space.graph() {
        Some(g) => Ok(g.clone()),
        None => Ok(space.unit_distance_graph()?),
    }
}

pub fn resolve_label(space: &FiniteMetricSpace, label: &str) -> Result<usize> {
    space
        .index_of(label)
        .ok_or_else(|| anyhow!("unknown point label {label:?}"))
}

/// Parses `p/q` or a plain integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().context("numerator")?;
        let q: i64 = q.trim().parse().context("denominator")?;
        if q == 0 {
            bail!("zero denominator");
        }
        return Ok(Rational::new(p, q));
    }
    Ok(Rational::from_integer(text.parse::<i64>().context("integer")?))
}

pub fn parse_big_rational(text: &str) -> Result<BigRational> {
    let r = parse_rational(text)?;
    Ok(BigRational::new((*r.numer()).into(), (*r.denom()).into()))
}

/// Field file: `{"anchor": label, "values": {label: "p/q"}}`.
#[derive(Deserialize)]
struct FieldFile {
    anchor: String,
    values: BTreeMap<String, String>,
}

pub fn load_field(space: &FiniteMetricSpace, path: &str) -> Result<ScalarField> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let ff: FieldFile = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let anchor = resolve_label(space, &ff.anchor)?;
    let mut values = vec![None; space.n()];
    for (label, v) in &ff.values {
        values[resolve_label(space, label)?] = Some(parse_rational(v)?);
    }
    let values: Option<Vec<Rational>> = values.into_iter().collect();
    let values = values.ok_or_else(|| anyhow!("field file misses some points"))?;
    Ok(ScalarField::anchored(values, anchor))
}

/// Set file: a JSON array of point labels.
pub fn load_set(space: &FiniteMetricSpace, path: &str) -> Result<VertexSet> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let labels: Vec<String> = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let mut set = VertexSet::new();
    for l in &labels {
        set.insert(resolve_label(space, l)?);
    }
    Ok(set)
}

/// Distribution file: `{label: "p/q"}` with positive masses summing to 1.
pub fn load_distribution(space: &FiniteMetricSpace, path: &str) -> Result<Distribution> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let masses: BTreeMap<String, String> =
        serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let mut out = Vec::new();
    for (label, m) in &masses {
        out.push((resolve_label(space, label)?, parse_big_rational(m)?));
    }
    let dist = Distribution::from_points(out)?;
    let total = dist.total();
    if total != BigRational::from_integer(1.into()) {
        bail!("masses sum to {total}, expected 1");
    }
    Ok(dist)
}

/// Sorted label list of a vertex set, the canonical set serialization.
pub fn set_labels(space: &FiniteMetricSpace, set: &VertexSet) -> Vec<String> {
    set.iter().map(|i| space.label(i).to_string()).collect()
}
