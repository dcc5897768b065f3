//! Balls, level sets, isoperimetric minima, and the ball-growth
//! constructions on tripods and caterpillars.

use crate::field::ScalarField;
use crate::space::{family, FiniteMetricSpace, Graph};
use crate::{Error, Rational, Result};
use itertools::Itertools;
use std::collections::BTreeSet;

/// A set of points of a space, kept sorted for deterministic iteration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VertexSet {
    members: BTreeSet<usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_iter(it: impl IntoIterator<Item = usize>) -> Self {
        VertexSet { members: it.into_iter().collect() }
    }

    pub fn insert(&mut self, v: usize) {
        self.members.insert(v);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.members.union(&other.members).copied().collect() }
    }

    /// Image under a permutation of the point indices.
    pub fn map(&self, perm: &[usize]) -> VertexSet {
        VertexSet::from_iter(self.iter().map(|v| perm[v]))
    }
}

/// The `d`-neighborhood `{u : d(u, S) <= d}`.
pub fn ball(space: &FiniteMetricSpace, s: &VertexSet, d: i64) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    assert!(d >= 0);
    if let Some(g) = space.graph() {
        let sources: Vec<usize> = s.iter().collect();
        let dist = g.bfs_multi(&sources);
        return Ok(VertexSet::from_iter((0..space.n()).filter(|&u| (dist[u] as i64) <= d)));
    }
    let members: Vec<usize> = s.iter().collect();
    Ok(VertexSet::from_iter(
        (0..space.n()).filter(|&u| members.iter().any(|&v| space.dist(u, v) <= d)),
    ))
}

/// Ball in an explicit graph (avoids rebuilding the metric space).
pub fn graph_ball(g: &Graph, s: &VertexSet, d: i64) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let sources: Vec<usize> = s.iter().collect();
    let dist = g.bfs_multi(&sources);
    Ok(VertexSet::from_iter((0..g.n()).filter(|&u| (dist[u] as i64) <= d)))
}

/// Sub-level set `{a : sum_i f(a_i) <= r}` of a field or its tensor power.
///
/// `space` is either the base space of `f` or an L1 power of it; product
/// points are decoded coordinate-wise.
pub fn level_set(space: &FiniteMetricSpace, f: &ScalarField, r: Rational) -> VertexSet {
    VertexSet::from_iter((0..space.n()).filter(|&a| {
        let coords = space.decode(a);
        let sum: Rational = coords.iter().map(|&c| f.value(c)).sum();
        sum <= r
    }))
}

/// Level set over a graph power whose vertices encode base-graph tuples.
pub fn level_set_power(power: &Graph, base_n: usize, f: &ScalarField, r: Rational) -> VertexSet {
    let mut n_coords = 0;
    let mut m = power.n();
    while m > 1 {
        m /= base_n;
        n_coords += 1;
    }
    VertexSet::from_iter((0..power.n()).filter(|&a| {
        let mut rem = a;
        let mut sum = Rational::from_integer(0);
        for _ in 0..n_coords {
            sum += f.value(rem % base_n);
            rem /= base_n;
        }
        sum <= r
    }))
}

/// Exact isoperimetric minimum `min |B_d(S)|` over sets with at least half
/// the vertices. Only subsets of size exactly `ceil(n/2)` are scanned:
/// enlarging `S` never shrinks its ball, so some minimizer has minimum
/// size. Ties break to the lexicographically first subset.
pub fn iso_function(g: &Graph, d: i64) -> Result<(usize, VertexSet)> {
    if g.n() > 20 {
        return Err(Error::TooLarge(format!("iso_function cap 20 exceeded: n = {}", g.n())));
    }
    let half = g.n().div_ceil(2);
    let mut best: Option<(usize, VertexSet)> = None;
    for subset in (0..g.n()).combinations(half) {
        let s = VertexSet::from_iter(subset);
        let b = graph_ball(g, &s, d)?.len();
        if best.as_ref().map_or(true, |(v, _)| b < *v) {
            best = Some((b, s));
        }
    }
    Ok(best.unwrap())
}

/// One `(d, r)` cell of a ball-growth comparison table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BallCell {
    pub d: i64,
    pub r: i64,
    pub x_ball: usize,
    pub y_ball: usize,
    /// The stated containment direction holds at this cell.
    pub containment: bool,
    pub strict: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CaterpillarReport {
    pub k: usize,
    pub n: u32,
    pub cells: Vec<BallCell>,
    /// Cells where `psi^n(B_d(S_{r,X}))` fails to contain `B_d(S_{r,Y})`.
    pub containment_failures: Vec<(i64, i64)>,
    pub strict_cells: Vec<(i64, i64)>,
    /// Twice the median of the tensored field: `n(2k+1)`.
    pub median_times_2: i64,
    /// A cell `(d, r)` with `|S_{r,X}| >= |V|/2` whose Y-side ball is
    /// strictly smaller than the X-side ball: a direct counterexample to
    /// minimality of the variance-optimal sublevel family.
    pub refutation_cell: Option<(i64, i64)>,
    /// X is variance-optimal on the base caterpillar (when the base tree is
    /// within the exhaustive cap).
    pub x_variance_optimal: Option<bool>,
}

/// X and Y orderings of the caterpillar, as value vectors over the base
/// graph built by [`family::caterpillar`].
pub fn caterpillar_fields(k: usize) -> (Vec<i64>, Vec<i64>) {
    let nk = 2 * k;
    let mut x = vec![0i64; 4 * k];
    let mut y = vec![0i64; 4 * k];
    for i in 1..=nk {
        let (u, w) = (i - 1, nk + i - 1);
        x[u] = i as i64;
        x[w] = if i <= k { i as i64 - 1 } else { i as i64 + 1 };
        y[u] = if i <= k { i as i64 } else { i as i64 + 1 };
        y[w] = if i <= k { i as i64 - 1 } else { i as i64 };
    }
    (x, y)
}

/// Level-preserving permutation with `X(v) = Y(psi(v))`: each X-level maps
/// onto the Y-level of the same value, leaves to leaves and path vertices
/// to path vertices wherever the levels allow it.
pub fn caterpillar_psi(k: usize) -> Vec<usize> {
    let nk = 2 * k;
    let u = |i: usize| i - 1;
    let w = |i: usize| nk + i - 1;
    let mut psi: Vec<usize> = (0..4 * k).collect();
    psi[u(k + 1)] = w(k + 1);
    for j in k + 2..=nk {
        psi[w(j - 1)] = w(j);
        psi[u(j)] = u(j - 1);
    }
    psi[w(nk)] = u(nk);
    psi
}

/// Tabulates `psi^n(B_d(S_{r,X})) ⊇ B_d(S_{r,Y})` over every achievable
/// level sum `r` and every radius `d` up to saturation.
pub fn caterpillar_counterexample(k: usize, n: u32) -> Result<CaterpillarReport> {
    assert!(k >= 2 && n >= 1);
    let base = family::caterpillar(k);
    let total = (base.n() as u64).pow(n);
    if total > 100_000 {
        return Err(Error::TooLarge(format!("caterpillar power has {total} points")));
    }
    let (xv, yv) = caterpillar_fields(k);
    let psi = caterpillar_psi(k);
    for v in 0..base.n() {
        assert_eq!(xv[v], yv[psi[v]], "psi must relevel X onto Y");
    }
    let x_variance_optimal = if base.n() <= 24 {
        let x_field = ScalarField::from_integers(&xv, 0);
        let c2 = crate::field::tree_max_variance(&base)?;
        Some(x_field.variance() == c2)
    } else {
        None
    };

    let g = base.power(n);
    let base_n = base.n();
    let ncoords = n as usize;
    let decode = |mut a: usize| -> Vec<usize> {
        let mut c = vec![0usize; ncoords];
        for slot in c.iter_mut().rev() {
            *slot = a % base_n;
            a /= base_n;
        }
        c
    };
    let encode = |c: &[usize]| c.iter().fold(0usize, |acc, &x| acc * base_n + x);
    let mut psi_n = vec![0usize; g.n()];
    let mut xsum = vec![0i64; g.n()];
    let mut ysum = vec![0i64; g.n()];
    for a in 0..g.n() {
        let c = decode(a);
        psi_n[a] = encode(&c.iter().map(|&v| psi[v]).collect::<Vec<_>>());
        xsum[a] = c.iter().map(|&v| xv[v]).sum();
        ysum[a] = c.iter().map(|&v| yv[v]).sum();
    }

    let r_max = (2 * k as i64 + 1) * n as i64;
    let diam = g.diameter() as i64;
    let half = g.n().div_ceil(2);
    let mut cells = Vec::new();
    let mut containment_failures = Vec::new();
    let mut strict_cells = Vec::new();
    let mut refutation_cell = None;
    for r in 0..=r_max {
        let sx = VertexSet::from_iter((0..g.n()).filter(|&a| xsum[a] <= r));
        let sy = VertexSet::from_iter((0..g.n()).filter(|&a| ysum[a] <= r));
        if sx.is_empty() {
            continue;
        }
        for d in 0..=diam {
            let bx = graph_ball(&g, &sx, d)?;
            let by = graph_ball(&g, &sy, d)?;
            let image = bx.map(&psi_n);
            let containment = by.is_subset(&image);
            let strict = containment && by.len() < image.len();
            if !containment {
                containment_failures.push((d, r));
            }
            if strict {
                strict_cells.push((d, r));
            }
            if refutation_cell.is_none() && sx.len() >= half && bx.len() > by.len() {
                refutation_cell = Some((d, r));
            }
            cells.push(BallCell { d, r, x_ball: bx.len(), y_ball: by.len(), containment, strict });
        }
    }
    Ok(CaterpillarReport {
        k,
        n,
        cells,
        containment_failures,
        strict_cells,
        median_times_2: (2 * k as i64 + 1) * n as i64,
        refutation_cell,
        x_variance_optimal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TripodVariant {
    Plain,
    Star,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TripodReport {
    pub k: usize,
    pub variant: TripodVariant,
    /// Median of X is zero while its mean is positive.
    pub median_zero_mean_positive: bool,
    /// X attains the exact tree maximum variance.
    pub x_variance_optimal: bool,
    /// The optimality check ran below the pinned size threshold.
    pub exhaustive_only: bool,
    pub set_sizes: (usize, usize),
    /// psi maps the X sublevel set onto the stated opposite sublevel set.
    pub psi_maps_levels: bool,
    pub cells: Vec<BallCell>,
    pub all_contained: bool,
    /// `|B_d(S_{0,X})| = 2k+1+d` and `|B_d(S_{0,-X})| = 2k+1+2d` for
    /// `1 <= d <= k` (plain variant only).
    pub growth_formulas: Option<bool>,
}

/// The stated extremal field of the plain tripod: `x_i = y_i = -i`,
/// `z_i = i`.
pub fn tripod_field(k: usize) -> Vec<i64> {
    let mut vals = vec![0i64];
    vals.extend((1..=k as i64).map(|i| -i));
    vals.extend((1..=k as i64).map(|i| -i));
    vals.extend(1..=2 * k as i64);
    vals
}

/// Ball-growth comparison on the tripod and tripod-with-star examples.
///
/// Plain: `psi(B_d(S_{0,X}))` sits strictly inside `B_d(S_{0,-X})`.
/// Star: `psi(B_d(S_{-2,X}))` strictly contains `B_d(S_{-(k+3)/2,-X})`.
pub fn tripod_examples(k: usize, variant: TripodVariant) -> Result<TripodReport> {
    match variant {
        TripodVariant::Plain => tripod_plain(k),
        TripodVariant::Star => tripod_star_example(k),
    }
}

fn tripod_plain(k: usize) -> Result<TripodReport> {
    assert!(k >= 2);
    let g = family::tripod(k);
    let xv = tripod_field(k);
    let f = ScalarField::from_integers(&xv, 0);
    let median_zero_mean_positive =
        f.median() == Rational::from_integer(0) && f.mean() > Rational::from_integer(0);
    let c2 = crate::field::tree_max_variance(&g)?;
    let x_variance_optimal = f.variance() == c2;

    // involution folding the two short hairs into the long one
    let x = |i: usize| i;
    let y = |i: usize| k + i;
    let z = |i: usize| 2 * k + i;
    let mut psi: Vec<usize> = (0..g.n()).collect();
    for i in 1..=k {
        psi.swap(x(i), z(2 * i - 1));
        psi.swap(y(i), z(2 * i));
    }
    let s_x = VertexSet::from_iter((0..g.n()).filter(|&v| xv[v] <= 0));
    let s_negx = VertexSet::from_iter((0..g.n()).filter(|&v| -xv[v] <= 0));
    let psi_maps_levels = s_x.map(&psi) == s_negx;

    let diam = g.diameter() as i64;
    let mut cells = Vec::new();
    let mut all_contained = true;
    let mut growth_ok = true;
    for d in 0..=diam {
        let bx = graph_ball(&g, &s_x, d)?;
        let bneg = graph_ball(&g, &s_negx, d)?;
        let image = bx.map(&psi);
        let containment = image.is_subset(&bneg);
        let strict = containment && image.len() < bneg.len();
        if !containment {
            all_contained = false;
        }
        if d >= 1 && d <= k as i64 {
            growth_ok &= bx.len() == 2 * k + 1 + d as usize;
            growth_ok &= bneg.len() == 2 * k + 1 + 2 * d as usize;
        }
        cells.push(BallCell { d, r: 0, x_ball: image.len(), y_ball: bneg.len(), containment, strict });
    }
    Ok(TripodReport {
        k,
        variant: TripodVariant::Plain,
        median_zero_mean_positive,
        x_variance_optimal,
        exhaustive_only: k < 6,
        set_sizes: (s_x.len(), s_negx.len()),
        psi_maps_levels,
        cells,
        all_contained,
        growth_formulas: Some(growth_ok),
    })
}

/// The spider tree underlying the star variant (tripod_star without the
/// three extra edges).
fn star_spider(k: usize) -> Graph {
    let x = |i: usize| i;
    let y = |i: usize| k + i;
    let z = |i: usize| 2 * k + i;
    let w = |i: usize| 3 * k + i;
    let mut edges = vec![(0, x(1)), (0, y(1)), (0, z(1))];
    for i in 1..k {
        edges.push((x(i), x(i + 1)));
        edges.push((y(i), y(i + 1)));
        edges.push((z(i), z(i + 1)));
    }
    for i in 1..=k {
        edges.push((0, w(i)));
    }
    Graph::build(4 * k + 1, &edges).unwrap()
}

fn tripod_star_example(k: usize) -> Result<TripodReport> {
    assert!(k % 2 == 1 && k >= 5, "star variant needs odd k >= 5");
    let g = family::tripod_star(k);
    let x = |i: usize| i;
    let y = |i: usize| k + i;
    let z = |i: usize| 2 * k + i;
    let w = |i: usize| 3 * k + i;
    let mut xv = vec![0i64; g.n()];
    for i in 1..=k {
        xv[x(i)] = i as i64;
        xv[y(i)] = i as i64;
        xv[z(i)] = -(i as i64);
        xv[w(i)] = -1;
    }
    let f = ScalarField::from_integers(&xv, 0);
    let median_zero_mean_positive =
        f.median() == Rational::from_integer(0) && f.mean() > Rational::from_integer(0);

    // optimality over the spider plus Lipschitz over g pins it for g
    let spider = star_spider(k);
    let c2 = crate::field::tree_max_variance(&spider)?;
    let lip =
        crate::field::is_lipschitz(&f, &FiniteMetricSpace::from_graph(g.clone()), Rational::from_integer(1)).0;
    let x_variance_optimal = f.variance() == c2 && lip;

    // involution pairing the stated levels
    let mut psi: Vec<usize> = (0..g.n()).collect();
    for i in 0..=(k - 1) / 2 {
        if k - i >= (k + 1) / 2 {
            psi.swap(x(k - i), z(k - 2 * i));
        }
    }
    for i in 0..=(k - 3) / 2 {
        if k - i >= (k + 3) / 2 {
            psi.swap(y(k - i), z(k - 2 * i - 1));
        }
    }
    psi.swap(y((k + 1) / 2), w(1));
    psi.swap(x((k - 1) / 2), w(2));
    psi.swap(y((k - 1) / 2), w(3));
    for i in 1..=(k - 3) / 2 {
        psi.swap(x(i), w(3 + i));
        psi.swap(y(i), w((k + 3) / 2 + i));
    }

    let s_x = VertexSet::from_iter((0..g.n()).filter(|&v| xv[v] <= -2));
    let thr = -((k as i64 + 3) / 2);
    let s_negx = VertexSet::from_iter((0..g.n()).filter(|&v| -xv[v] <= thr));
    let psi_maps_levels = s_x.map(&psi) == s_negx;

    let diam = g.diameter() as i64;
    let mut cells = Vec::new();
    let mut all_contained = true;
    for d in 0..=diam {
        let bx = graph_ball(&g, &s_x, d)?;
        let bneg = graph_ball(&g, &s_negx, d)?;
        let image = bx.map(&psi);
        // star variant: the image strictly contains the other ball
        let containment = bneg.is_subset(&image);
        let strict = containment && bneg.len() < image.len();
        if !containment {
            all_contained = false;
        }
        cells.push(BallCell { d, r: 0, x_ball: image.len(), y_ball: bneg.len(), containment, strict });
    }
    Ok(TripodReport {
        k,
        variant: TripodVariant::Star,
        median_zero_mean_positive,
        x_variance_optimal,
        exhaustive_only: k < 7,
        set_sizes: (s_x.len(), s_negx.len()),
        psi_maps_levels,
        cells,
        all_contained,
        growth_formulas: None,
    })
}
