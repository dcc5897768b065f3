//! Lipschitz scalar fields and exhaustive enumeration of extremal fields.
//!
//! An extremal field is an integer-valued anchored 1-Lipschitz function
//! whose tight edge set `E_f = {uv : |f(u)-f(v)| = 1}` contains a spanning
//! tree. Every extreme point of the anchored Lipschitz polytope is of this
//! form, so maximizing a convex functional (variance, log-moment) over the
//! enumerated set maximizes it over all Lipschitz functions.

use crate::space::{FiniteMetricSpace, Graph};
use crate::{Error, Rational, Result};
use num_traits::{Signed, Zero};

/// A real-valued function on the points of a space, with a designated
/// anchor point whose value is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    values: Vec<Rational>,
    anchor: usize,
}

impl ScalarField {
    /// Builds an anchored field by translating so the anchor value is zero.
    pub fn anchored(values: Vec<Rational>, anchor: usize) -> ScalarField {
        let shift = values[anchor];
        let values = values.into_iter().map(|v| v - shift).collect();
        ScalarField { values, anchor }
    }

    pub fn from_integers(values: &[i64], anchor: usize) -> ScalarField {
        Self::anchored(values.iter().map(|&v| Rational::from_integer(v)).collect(), anchor)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Rational {
        self.values[i]
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> ScalarField {
        ScalarField { values: self.values.iter().map(|v| -v).collect(), anchor: self.anchor }
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| *v.numer() as f64 / *v.denom() as f64).collect()
    }

    /// Integer values, if every value is an integer.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }

    pub fn mean(&self) -> Rational {
        let sum: Rational = self.values.iter().cloned().sum();
        sum / Rational::from_integer(self.values.len() as i64)
    }

    /// Variance under the uniform distribution on points, exact.
    pub fn variance(&self) -> Rational {
        let n = Rational::from_integer(self.values.len() as i64);
        let mean = self.mean();
        let ss: Rational = self.values.iter().map(|v| (*v - mean) * (*v - mean)).sum();
        ss / n
    }

    /// Median value (lower-middle average for even counts).
    pub fn median(&self) -> Rational {
        let mut v = self.values.clone();
        v.sort();
        let n = v.len();
        if n % 2 == 1 {
            v[n / 2]
        } else {
            (v[n / 2 - 1] + v[n / 2]) / Rational::from_integer(2)
        }
    }
}

/// Lipschitz check over a metric space; on failure returns the pair with
/// the largest violation of `|f(u)-f(v)| <= L d(u,v)`.
pub fn is_lipschitz(f: &ScalarField, space: &FiniteMetricSpace, l: Rational) -> (bool, Option<(usize, usize)>) {
    let n = space.n();
    assert_eq!(f.len(), n);
    let mut worst: Option<(Rational, (usize, usize))> = None;
    for u in 0..n {
        for v in u + 1..n {
            let gap = (f.value(u) - f.value(v)).abs() - l * space.dist_rational(u, v);
            if gap > Rational::zero() && worst.as_ref().map_or(true, |(w, _)| gap > *w) {
                worst = Some((gap, (u, v)));
            }
        }
    }
    match worst {
        None => (true, None),
        Some((_, pair)) => (false, Some(pair)),
    }
}

/// Default vertex cap for exhaustive extremal enumeration on general
/// (non-tree) graphs.
pub const ENUMERATION_CAP: usize = 16;

fn is_tree(g: &Graph) -> bool {
    g.edge_count() == g.n() - 1
}

/// Streams every extremal field of `g` anchored at vertex 0, as integer
/// value vectors with running `(sum, sum of squares)`.
///
/// On trees the tight-edge condition forces every edge difference to be
/// exactly one, so enumeration walks the 2^(n-1) sign choices along edges.
/// On general graphs a DFS in BFS order assigns each vertex an integer
/// compatible with all pairwise distances and filters for spanning tight
/// edges at the leaves.
pub fn for_each_extremal_field<F: FnMut(&[i64], i64, i64)>(g: &Graph, mut visit: F) -> Result<()> {
    if is_tree(g) {
        for_each_tree_field(g, &mut visit);
        return Ok(());
    }
    if g.n() > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("enumeration cap {ENUMERATION_CAP} exceeded: n = {}", g.n())));
    }
    let n = g.n();
    let dist = g.dist_matrix();
    // BFS order from the anchor keeps each new vertex adjacent to an
    // assigned one, so candidate ranges stay small.
    let order: Vec<usize> = {
        let d0 = g.bfs(0);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&v| (d0[v], v));
        idx
    };
    let mut values = vec![0i64; n];
    let mut assigned = vec![false; n];
    assigned[0] = true;
    rec_general(g, &dist, &order, 1, &mut values, &mut assigned, 0, 0, &mut visit);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rec_general<F: FnMut(&[i64], i64, i64)>(
    g: &Graph,
    dist: &[Vec<u32>],
    order: &[usize],
    depth: usize,
    values: &mut [i64],
    assigned: &mut [bool],
    sum: i64,
    sumsq: i64,
    visit: &mut F,
) {
    let n = g.n();
    if depth == n {
        if tight_edges_span(g, values) {
            visit(values, sum, sumsq);
        }
        return;
    }
    let v = order[depth];
    let mut lo = -(dist[0][v] as i64);
    let mut hi = dist[0][v] as i64;
    for u in 0..n {
        if assigned[u] {
            let d = dist[u][v] as i64;
            lo = lo.max(values[u] - d);
            hi = hi.min(values[u] + d);
        }
    }
    assigned[v] = true;
    for x in lo..=hi {
        values[v] = x;
        rec_general(g, dist, order, depth + 1, values, assigned, sum + x, sumsq + x * x, visit);
    }
    assigned[v] = false;
}

pub(crate) fn tight_edges_span(g: &Graph, values: &[i64]) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut comps = n;
    for (a, b) in g.edges() {
        if (values[a] - values[b]).abs() == 1 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn for_each_tree_field<F: FnMut(&[i64], i64, i64)>(g: &Graph, visit: &mut F) {
    let n = g.n();
    let d0 = g.bfs(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (d0[v], v));
    let mut parent = vec![0usize; n];
    for &v in &order[1..] {
        parent[v] = *g.neighbors(v).iter().find(|&&u| d0[u] + 1 == d0[v]).unwrap();
    }
    let mut values = vec![0i64; n];
    rec_tree(&order, &parent, 1, &mut values, 0, 0, visit);
}

fn rec_tree<F: FnMut(&[i64], i64, i64)>(
    order: &[usize],
    parent: &[usize],
    depth: usize,
    values: &mut [i64],
    sum: i64,
    sumsq: i64,
    visit: &mut F,
) {
    if depth == order.len() {
        visit(values, sum, sumsq);
        return;
    }
    let v = order[depth];
    let base = values[parent[v]];
    for x in [base - 1, base + 1] {
        values[v] = x;
        rec_tree(order, parent, depth + 1, values, sum + x, sumsq + x * x, visit);
    }
}

/// Collects all extremal fields (use the streaming form for large trees).
pub fn enumerate_extremal_fields(g: &Graph) -> Result<Vec<ScalarField>> {
    if is_tree(g) && g.n() > 24 {
        return Err(Error::TooLarge(format!("materializing 2^{} tree fields", g.n() - 1)));
    }
    let mut out = Vec::new();
    for_each_extremal_field(g, |values, _, _| out.push(ScalarField::from_integers(values, 0)))?;
    Ok(out)
}

/// Maximum variance over Lipschitz fields together with every extremal
/// witness attaining it. Exact: variance ordering uses the integer
/// functional `n*sumsq - sum^2`.
pub fn max_variance(g: &Graph) -> Result<(Rational, Vec<ScalarField>)> {
    let n = g.n() as i64;
    let mut best: i64 = -1;
    let mut witnesses: Vec<Vec<i64>> = Vec::new();
    for_each_extremal_field(g, |values, sum, sumsq| {
        let m = n * sumsq - sum * sum;
        if m > best {
            best = m;
            witnesses.clear();
            witnesses.push(values.to_vec());
        } else if m == best && witnesses.len() < 100_000 {
            witnesses.push(values.to_vec());
        }
    })?;
    let c2 = Rational::new(best, n * n);
    Ok((c2, witnesses.into_iter().map(|v| ScalarField::from_integers(&v, 0)).collect()))
}

/// Exact maximum variance on a tree in polynomial time.
///
/// Tight-edge fields on a tree change by exactly one along every edge, so a
/// subtree rooted at value `x` is summarized by a table
/// `subtree sum -> max sum of squares`; tables combine over children by
/// convolution.
pub fn tree_max_variance(g: &Graph) -> Result<Rational> {
    use std::collections::HashMap;
    if !is_tree(g) {
        return Err(Error::BadInput("tree_max_variance requires a tree".into()));
    }
    let n = g.n();
    let d0 = g.bfs(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (d0[v], v));
    let maxdepth = *d0.iter().max().unwrap() as i64;
    let offset = |x: i64| (x + maxdepth) as usize;
    let width = (2 * maxdepth + 1) as usize;
    let mut tables: Vec<Vec<Option<HashMap<i64, i64>>>> = vec![vec![None; width]; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &order[1..] {
        let p = *g.neighbors(v).iter().find(|&&u| d0[u] + 1 == d0[v]).unwrap();
        children[p].push(v);
    }
    for &v in order.iter().rev() {
        let depth = d0[v] as i64;
        for x in -depth..=depth {
            if (x - depth) % 2 != 0 {
                continue; // value parity matches depth parity
            }
            let mut acc: HashMap<i64, i64> = HashMap::new();
            acc.insert(x, x * x);
            for &c in &children[v] {
                let mut next: HashMap<i64, i64> = HashMap::new();
                for dx in [-1i64, 1] {
                    let cx = x + dx;
                    if cx.abs() > maxdepth {
                        continue;
                    }
                    if let Some(ct) = &tables[c][offset(cx)] {
                        for (&s0, &q0) in &acc {
                            for (&s1, &q1) in ct {
                                let e = next.entry(s0 + s1).or_insert(i64::MIN);
                                *e = (*e).max(q0 + q1);
                            }
                        }
                    }
                }
                acc = next;
            }
            tables[v][offset(x)] = Some(acc);
        }
    }
    let root = tables[0][offset(0)].as_ref().unwrap();
    let nn = n as i64;
    let best = root.iter().map(|(&s, &q)| nn * q - s * s).max().unwrap();
    Ok(Rational::new(best, nn * nn))
}
