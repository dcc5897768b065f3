//! Finite metric spaces and the graph families used throughout the crate.
//!
//! A [`Graph`] is a simple connected undirected graph; a
//! [`FiniteMetricSpace`] is an ordered point list with an exact rational
//! distance function. Graphs specialize metric spaces through BFS shortest
//! paths. Hamming-type spaces (hypercubes, Boolean levels, symmetric groups)
//! and product spaces compute distances lazily from their point encodings,
//! so large spaces never materialize an n-squared matrix.

use crate::{Error, Rational, Result};
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

/// Simple undirected connected graph over vertex indices `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are deduplicated;
    /// self-loops and disconnected inputs are rejected.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = BTreeSet::new();
        for &(a, b) in edge_list {
            if a >= n || b >= n {
                return Err(Error::BadIndex { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            edges.insert((a.min(b), a.max(b)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let g = Graph { n, adj, edges, labels: None };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// BFS distances from `src`; unreachable vertices get `u32::MAX`.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Multi-source BFS distances.
    pub fn bfs_multi(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn dist_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|v| self.bfs(v)).collect()
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        *self.bfs(v).iter().max().unwrap()
    }

    pub fn diameter(&self) -> u32 {
        (0..self.n).map(|v| self.eccentricity(v)).max().unwrap()
    }

    /// Cartesian product: vertices are pairs, edges step in one coordinate.
    pub fn cartesian(&self, other: &Graph) -> Graph {
        let n = self.n * other.n;
        let idx = |a: usize, b: usize| a * other.n + b;
        let mut edges = Vec::new();
        for a in 0..self.n {
            for &(b1, b2) in &other.edges {
                edges.push((idx(a, b1), idx(a, b2)));
            }
        }
        for b in 0..other.n {
            for &(a1, a2) in &self.edges {
                edges.push((idx(a1, b), idx(a2, b)));
            }
        }
        let labels = (0..self.n)
            .flat_map(|a| (0..other.n).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.label(a), other.label(b)))
            .collect();
        Graph::build(n, &edges).expect("product of connected graphs is connected").with_labels(labels)
    }

    /// n-fold Cartesian power; vertex `i` encodes the tuple of base-`n`
    /// digits of `i`, most significant coordinate first.
    pub fn power(&self, n: u32) -> Graph {
        let mut g = self.clone();
        for _ in 1..n {
            g = g.cartesian(self);
        }
        g
    }

    /// All maximal hairs: sequences `w_0..w_k` whose interior vertices have
    /// degree two and whose terminal vertex is a leaf. One sequence per
    /// (start, leaf) orientation, sorted by `(w_0, w_k)`.
    pub fn find_hairs(&self) -> Vec<Vec<usize>> {
        let mut hairs = Vec::new();
        for leaf in 0..self.n {
            if self.degree(leaf) != 1 {
                continue;
            }
            let mut seq = vec![leaf];
            let mut prev = leaf;
            let mut cur = self.adj[leaf][0];
            while self.degree(cur) == 2 && cur != leaf {
                seq.push(cur);
                let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
                prev = cur;
                cur = next;
            }
            seq.push(cur);
            seq.reverse();
            hairs.push(seq);
        }
        hairs.sort();
        hairs.dedup();
        hairs
    }
}

/// Named graph families.
pub mod family {
    use super::*;

    pub fn complete(k: usize) -> Graph {
        assert!(k >= 2);
        let edges: Vec<_> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        Graph::build(k, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|a| (a, (a + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        assert!(n >= 2);
        let edges: Vec<_> = (0..n - 1).map(|a| (a, a + 1)).collect();
        Graph::build(n, &edges).unwrap()
    }

    /// Hypercube graph on `2^d` vertices; vertex index is the subset bitmask.
    pub fn hypercube(d: u32) -> Graph {
        assert!(d >= 1 && d <= 20);
        let n = 1usize << d;
        let mut edges = Vec::new();
        for v in 0..n {
            for bit in 0..d {
                let u = v ^ (1 << bit);
                if u > v {
                    edges.push((v, u));
                }
            }
        }
        let labels = (0..n as u64).map(subset_label).collect();
        Graph::build(n, &edges).unwrap().with_labels(labels)
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::build(leaves + 1, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::build(10, &edges).unwrap()
    }

    /// Unbalanced tripod: a root with three hairs of `k`, `k`, `2k`
    /// vertices beyond the root (4k + 1 vertices total).
    ///
    /// Vertex layout: root = 0, x-hair = 1..=k, y-hair = k+1..=2k,
    /// z-hair = 2k+1..=4k.
    pub fn tripod(k: usize) -> Graph {
        assert!(k >= 1);
        let mut edges = Vec::new();
        let mut labels = vec!["r".to_string()];
        let x = |i: usize| i; // 1-based
        let y = |i: usize| k + i;
        let z = |i: usize| 2 * k + i;
        edges.push((0, x(1)));
        edges.push((0, y(1)));
        edges.push((0, z(1)));
        for i in 1..k {
            edges.push((x(i), x(i + 1)));
            edges.push((y(i), y(i + 1)));
        }
        for i in 1..2 * k {
            edges.push((z(i), z(i + 1)));
        }
        for i in 1..=k {
            labels.push(format!("x{i}"));
        }
        for i in 1..=k {
            labels.push(format!("y{i}"));
        }
        for i in 1..=2 * k {
            labels.push(format!("z{i}"));
        }
        Graph::build(4 * k + 1, &edges).unwrap().with_labels(labels)
    }

    /// Tripod-with-star: a root with three hairs of `k` vertices each and
    /// `k` single-vertex hairs `w_1..w_k`, plus edges `w1z2`, `w1w2`,
    /// `w1w3`. Vertex layout: root = 0, x = 1..=k, y = k+1..=2k,
    /// z = 2k+1..=3k, w = 3k+1..=4k.
    pub fn tripod_star(k: usize) -> Graph {
        assert!(k >= 3);
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
        edges.push((w(1), z(2)));
        edges.push((w(1), w(2)));
        edges.push((w(1), w(3)));
        let mut labels = vec!["r".to_string()];
        for (prefix, count) in [("x", k), ("y", k), ("z", k), ("w", k)] {
            for i in 1..=count {
                labels.push(format!("{prefix}{i}"));
            }
        }
        Graph::build(4 * k + 1, &edges).unwrap().with_labels(labels)
    }

    /// Even caterpillar with one leg per body segment: path `u_1..u_{2k}`
    /// plus leaves `w_1..w_{2k}` with `N(w_i) = {u_i}` (4k vertices).
    /// Vertex layout: u_i = i - 1, w_i = 2k + i - 1.
    pub fn caterpillar(k: usize) -> Graph {
        assert!(k >= 1);
        let u = |i: usize| i - 1;
        let w = |i: usize| 2 * k + i - 1;
        let mut edges = Vec::new();
        for i in 1..2 * k {
            edges.push((u(i), u(i + 1)));
        }
        for i in 1..=2 * k {
            edges.push((u(i), w(i)));
        }
        let mut labels: Vec<String> = (1..=2 * k).map(|i| format!("u{i}")).collect();
        labels.extend((1..=2 * k).map(|i| format!("w{i}")));
        Graph::build(4 * k, &edges).unwrap().with_labels(labels)
    }
}

pub(crate) fn subset_label(mask: u64) -> String {
    if mask == 0 {
        return "{}".to_string();
    }
    let elems: Vec<String> = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

/// Parses a `{1,3}`-style subset label back into a bitmask.
pub fn parse_subset_label(s: &str) -> Option<u64> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    let mut mask = 0u64;
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let e: u64 = part.parse().ok()?;
        if e == 0 || e > 64 {
            return None;
        }
        mask |= 1 << (e - 1);
    }
    Some(mask)
}

/// Which product metric combines per-coordinate distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ProductMetric {
    /// Sum of coordinate distances.
    L1,
    /// Number of differing coordinates.
    L0,
    /// Maximum coordinate distance.
    Linf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    GraphShortestPath,
    Hamming,
    Explicit,
}

enum Backing {
    /// Dense integer matrix (graph shortest paths).
    DenseInt { dist: Vec<u32>, graph: Graph },
    /// Dense rational matrix (explicit spaces).
    DenseRat { dist: Vec<Rational> },
    /// Subsets of {1..n} with symmetric-difference distance.
    Masks { masks: Vec<u64>, bits: u32 },
    /// Permutations with Hamming distance.
    Perms { perms: Vec<Vec<u8>> },
    /// Two points at integer distance r.
    ScaledEdge { r: i64 },
    /// Product of factor spaces; point index is mixed-radix over factors.
    Product { factors: Vec<Arc<FiniteMetricSpace>>, metric: ProductMetric },
}

/// A finite metric space: an ordered point list with exact distances.
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    backing: Backing,
    kind: SpaceKind,
}

/// Default cap on materialized product sizes.
pub const PRODUCT_POINT_CAP: usize = 1_000_000;

impl FiniteMetricSpace {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Integer distance. All built-in constructions are integer-valued;
    /// panics on a non-integer explicit distance.
    pub fn dist(&self, i: usize, j: usize) -> i64 {
        match &self.backing {
            Backing::DenseInt { dist, .. } => dist[i * self.n() + j] as i64,
            Backing::DenseRat { dist } => {
                let d = dist[i * self.n() + j];
                assert!(d.is_integer(), "non-integer distance");
                d.to_integer()
            }
            Backing::Masks { masks, .. } => (masks[i] ^ masks[j]).count_ones() as i64,
            Backing::Perms { perms } => {
                perms[i].iter().zip(&perms[j]).filter(|(a, b)| a != b).count() as i64
            }
            Backing::ScaledEdge { r } => {
                if i == j {
                    0
                } else {
                    *r
                }
            }
            Backing::Product { factors, metric } => {
                let a = self.decode(i);
                let b = self.decode(j);
                let per: Vec<i64> =
                    factors.iter().zip(a.iter().zip(&b)).map(|(f, (&x, &y))| f.dist(x, y)).collect();
                match metric {
                    ProductMetric::L1 => per.iter().sum(),
                    ProductMetric::L0 => per.iter().filter(|&&d| d != 0).count() as i64,
                    ProductMetric::Linf => per.into_iter().max().unwrap_or(0),
                }
            }
        }
    }

    pub fn dist_rational(&self, i: usize, j: usize) -> Rational {
        match &self.backing {
            Backing::DenseRat { dist } => dist[i * self.n() + j],
            _ => Rational::from_integer(self.dist(i, j)),
        }
    }

    /// The underlying graph, when this space is a graph shortest-path metric.
    pub fn graph(&self) -> Option<&Graph> {
        match &self.backing {
            Backing::DenseInt { graph, .. } => Some(graph),
            _ => None,
        }
    }

    /// Subset bitmask of a point in a mask-backed (Boolean lattice) space.
    pub fn mask(&self, i: usize) -> Option<u64> {
        match &self.backing {
            Backing::Masks { masks, .. } => Some(masks[i]),
            _ => None,
        }
    }

    /// Ambient bit width of a mask-backed space.
    pub fn mask_bits(&self) -> Option<u32> {
        match &self.backing {
            Backing::Masks { bits, .. } => Some(*bits),
            _ => None,
        }
    }

    /// One-line permutation of a point in a symmetric-group space.
    pub fn perm(&self, i: usize) -> Option<&[u8]> {
        match &self.backing {
            Backing::Perms { perms } => Some(&perms[i]),
            _ => None,
        }
    }

    pub fn is_hypercube(&self) -> Option<u32> {
        match &self.backing {
            Backing::Masks { masks, .. } if masks.len().is_power_of_two() => {
                let d = masks.len().trailing_zeros();
                // Full cube: masks are exactly 0..2^d in order.
                if masks.iter().enumerate().all(|(i, &m)| m == i as u64) {
                    Some(d)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Decodes a product-space index into per-factor indices. For
    /// non-product spaces returns the singleton index.
    pub fn decode(&self, mut i: usize) -> Vec<usize> {
        match &self.backing {
            Backing::Product { factors, .. } => {
                let mut out = vec![0; factors.len()];
                for (slot, f) in out.iter_mut().zip(factors).rev() {
                    *slot = i % f.n();
                    i /= f.n();
                }
                out
            }
            _ => vec![i],
        }
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        match &self.backing {
            Backing::Product { factors, .. } => {
                coords.iter().zip(factors).fold(0, |acc, (&c, f)| acc * f.n() + c)
            }
            _ => coords[0],
        }
    }

    pub fn product_factors(&self) -> Option<&[Arc<FiniteMetricSpace>]> {
        match &self.backing {
            Backing::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Shortest-path metric of a connected graph.
    pub fn from_graph(g: Graph) -> FiniteMetricSpace {
        let n = g.n();
        let mut dist = vec![0u32; n * n];
        for v in 0..n {
            let row = g.bfs(v);
            dist[v * n..(v + 1) * n].copy_from_slice(&row);
        }
        let labels = (0..n).map(|v| g.label(v)).collect();
        FiniteMetricSpace { labels, backing: Backing::DenseInt { dist, graph: g }, kind: SpaceKind::GraphShortestPath }
    }

    /// Explicit space from a rational distance matrix. Validates the metric
    /// axioms exhaustively up to 1000 points, by sampling above.
    pub fn explicit(labels: Vec<String>, dist: Vec<Rational>) -> Result<FiniteMetricSpace> {
        let n = labels.len();
        if dist.len() != n * n {
            return Err(Error::BadInput("distance matrix size mismatch".into()));
        }
        let s = FiniteMetricSpace { labels, backing: Backing::DenseRat { dist }, kind: SpaceKind::Explicit };
        s.validate_metric()?;
        Ok(s)
    }

    /// Full hypercube (Boolean lattice) on `2^d` points; point index is the
    /// subset bitmask.
    pub fn hypercube(d: u32) -> FiniteMetricSpace {
        assert!(d >= 1 && d <= 20);
        let masks: Vec<u64> = (0..1u64 << d).collect();
        let labels = masks.iter().map(|&m| subset_label(m)).collect();
        FiniteMetricSpace { labels, backing: Backing::Masks { masks, bits: d }, kind: SpaceKind::Hamming }
    }

    /// Union of Boolean-lattice levels `C_{r_1} ∪ ... ∪ C_{r_k}` in
    /// `{0,1}^n`, with symmetric-difference distance.
    pub fn boolean_levels(n: u32, rs: &[u32]) -> Result<FiniteMetricSpace> {
        if n > 30 {
            return Err(Error::TooLarge(format!("boolean_levels n = {n}")));
        }
        let mut levels: Vec<u32> = rs.to_vec();
        levels.sort_unstable();
        levels.dedup();
        if levels.iter().any(|&r| r > n) {
            return Err(Error::BadInput("level exceeds dimension".into()));
        }
        let mut masks = Vec::new();
        for m in 0..1u64 << n {
            if levels.contains(&m.count_ones()) {
                masks.push(m);
            }
        }
        if masks.is_empty() {
            return Err(Error::EmptySet);
        }
        let labels = masks.iter().map(|&m| subset_label(m)).collect();
        Ok(FiniteMetricSpace { labels, backing: Backing::Masks { masks, bits: n }, kind: SpaceKind::Hamming })
    }

    /// Symmetric group S_n under the Hamming distance, n! points.
    pub fn symmetric_group(n: u32) -> Result<FiniteMetricSpace> {
        if n == 0 || n > 8 {
            return Err(Error::TooLarge(format!("symmetric_group n = {n}")));
        }
        let mut perms = vec![(1..=n as u8).collect::<Vec<u8>>()];
        // Lexicographic successor enumeration.
        loop {
            let last = perms.last().unwrap().clone();
            match next_permutation(last) {
                Some(p) => perms.push(p),
                None => break,
            }
        }
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Ok(FiniteMetricSpace { labels, backing: Backing::Perms { perms }, kind: SpaceKind::Hamming })
    }

    /// Two points at distance `r`.
    pub fn scaled_edge(r: i64) -> FiniteMetricSpace {
        assert!(r >= 1);
        FiniteMetricSpace {
            labels: vec!["0".into(), "r".into()],
            backing: Backing::ScaledEdge { r },
            kind: SpaceKind::Explicit,
        }
    }

    /// Product of spaces under the chosen metric. Point labels are tuples in
    /// factor order; the total point count is capped.
    pub fn product(factors: Vec<Arc<FiniteMetricSpace>>, metric: ProductMetric) -> Result<FiniteMetricSpace> {
        Self::product_capped(factors, metric, PRODUCT_POINT_CAP)
    }

    pub fn product_capped(
        factors: Vec<Arc<FiniteMetricSpace>>,
        metric: ProductMetric,
        cap: usize,
    ) -> Result<FiniteMetricSpace> {
        assert!(!factors.is_empty());
        let mut total: usize = 1;
        for f in &factors {
            total = total
                .checked_mul(f.n())
                .filter(|&t| t <= cap)
                .ok_or_else(|| Error::TooLarge(format!("product exceeds cap {cap}")))?;
        }
        let mut labels = Vec::with_capacity(total);
        let mut counters = vec![0usize; factors.len()];
        loop {
            let parts: Vec<&str> = counters.iter().zip(&factors).map(|(&c, f)| f.label(c)).collect();
            labels.push(format!("({})", parts.join(",")));
            // mixed-radix increment, last coordinate fastest
            let mut k = factors.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                counters[k] += 1;
                if counters[k] < factors[k].n() {
                    break;
                }
                counters[k] = 0;
                if k == 0 {
                    // wrapped fully
                    break;
                }
            }
            if counters.iter().all(|&c| c == 0) {
                break;
            }
        }
        debug_assert_eq!(labels.len(), total);
        Ok(FiniteMetricSpace { labels, backing: Backing::Product { factors, metric }, kind: SpaceKind::Explicit })
    }

    /// Checks symmetry, identity and the triangle inequality. Exhaustive up
    /// to 1000 points; 100_000 sampled triples above.
    pub fn validate_metric(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.dist_rational(i, i) != Rational::from_integer(0) {
                return Err(Error::BadInput(format!("d({i},{i}) != 0")));
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let dij = self.dist_rational(i, j);
            if dij != self.dist_rational(j, i) {
                return Err(Error::BadInput(format!("asymmetric at ({i},{j})")));
            }
            if dij > self.dist_rational(i, k) + self.dist_rational(k, j) {
                return Err(Error::BadInput(format!("triangle violated at ({i},{j},{k})")));
            }
            Ok(())
        };
        if n <= 1000 {
            for i in 0..n {
                for j in 0..n {
                    if i != j && self.dist_rational(i, j) <= Rational::from_integer(0) {
                        return Err(Error::BadInput(format!("non-positive d({i},{j})")));
                    }
                    for k in 0..n {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..100_000 {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                check(i, j, k)?;
            }
        }
        Ok(())
    }

    /// Reconstructs the unit-distance graph of this space, when connected.
    pub fn unit_distance_graph(&self) -> Result<Graph> {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.dist(i, j) == 1 {
                    edges.push((i, j));
                }
            }
        }
        Ok(Graph::build(n, &edges)?.with_labels(self.labels.clone()))
    }
}

fn next_permutation(mut p: Vec<u8>) -> Option<Vec<u8>> {
    let n = p.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    Some(p)
}

/// Parses a named family string such as `tripod:4`, `complete:3`,
/// `boolean_levels:6:2,4`, or `petersen`.
pub fn parse_family(name: &str) -> Result<FiniteMetricSpace> {
    let parts: Vec<&str> = name.split(':').collect();
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::BadInput(format!("bad family argument in {name:?}")))
    };
    let g = match parts[0] {
        "complete" => family::complete(arg(1)?),
        "cycle" => family::cycle(arg(1)?),
        "path" => family::path(arg(1)?),
        "hypercube" => return Ok(FiniteMetricSpace::hypercube(arg(1)? as u32)),
        "tripod" => family::tripod(arg(1)?),
        "tripod_star" => family::tripod_star(arg(1)?),
        "caterpillar" => family::caterpillar(arg(1)?),
        "star" => family::star(arg(1)?),
        "petersen" => family::petersen(),
        "symmetric_group" => return FiniteMetricSpace::symmetric_group(arg(1)? as u32),
        "scaled_edge" => return Ok(FiniteMetricSpace::scaled_edge(arg(1)? as i64)),
        "boolean_levels" => {
            let n = arg(1)? as u32;
            let rs: Vec<u32> = parts
                .get(2)
                .ok_or_else(|| Error::BadInput("boolean_levels needs levels".into()))?
                .split(',')
                .map(|s| s.parse().map_err(|_| Error::BadInput(format!("bad level in {name:?}"))))
                .collect::<Result<_>>()?;
            return FiniteMetricSpace::boolean_levels(n, &rs);
        }
        other => return Err(Error::BadInput(format!("unknown family {other:?}"))),
    };
    Ok(FiniteMetricSpace::from_graph(g))
}
