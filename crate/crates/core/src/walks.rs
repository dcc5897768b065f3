//! Degree-weighted geodesic enumeration and the random-walk midpoint
//! sampler.
//!
//! The exact law enumerates every even-length shortest path, weights it by
//! the chosen variant, and reads off the marginal of the middle vertex in
//! exact rational arithmetic. The Monte Carlo sampler runs the
//! walk-with-edge-teleportation token process and tallies the midpoints of
//! accepted segments.

use crate::space::Graph;
use crate::{BigRational, Error, Result};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WeightVariant {
    /// `w(P) = prod over interior vertices of 1/deg(u)`.
    Interior,
    /// `w(P) = (deg(x) + deg(y)) prod over all path vertices of
    /// 1/(deg(u)+1)`.
    EndpointPlus,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MidpointLawReport {
    pub variant: WeightVariant,
    /// Normalized law of the middle vertex over even geodesics; empty when
    /// no even geodesic exists.
    #[serde(serialize_with = "ser_rationals")]
    pub law: Vec<BigRational>,
    /// Vertices attaining at least one even-geodesic midpoint.
    pub attaining: Vec<bool>,
    /// `law(z)/deg(z)` is one constant across attaining vertices (exact).
    pub degree_proportional: bool,
    pub even_geodesics: u64,
    /// Weight mass carried by odd-length geodesics, which the midpoint law
    /// excludes.
    #[serde(serialize_with = "ser_rational")]
    pub excluded_odd_mass: BigRational,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rationals<S: serde::Serializer>(rs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rs.len()))?;
    for r in rs {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

const GEODESIC_CAP: u64 = 10_000_000;

/// Exact midpoint law of degree-weighted random even geodesics.
pub fn exact_midpoint_law(g: &Graph, variant: WeightVariant) -> Result<MidpointLawReport> {
    if g.n() > 60 {
        return Err(Error::TooLarge(format!("geodesic enumeration cap 60 exceeded: n = {}", g.n())));
    }
    let dist = g.dist_matrix();
    let mut law = vec![BigRational::zero(); g.n()];
    let mut odd_mass = BigRational::zero();
    let mut count: u64 = 0;
    let mut path = Vec::new();
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            let d = dist[x][y] as usize;
            if d == 0 {
                continue;
            }
            path.clear();
            path.push(x);
            enumerate_paths(g, &dist, y, &mut path, &mut |p: &[usize]| {
                count += 1;
                let w = weight(g, p, variant);
                if (p.len() - 1) % 2 == 0 {
                    law[p[(p.len() - 1) / 2]] += w;
                } else {
                    odd_mass += w;
                }
            })?;
        }
    }
    let total: BigRational = law.iter().cloned().sum();
    let even_exists = !total.is_zero();
    if even_exists {
        for l in law.iter_mut() {
            *l /= &total;
        }
        let denom = total.clone() + &odd_mass;
        odd_mass /= denom;
    }
    let attaining: Vec<bool> = law.iter().map(|l| !l.is_zero()).collect();
    let mut kappa: Option<BigRational> = None;
    let mut degree_proportional = even_exists;
    for v in 0..g.n() {
        if !attaining[v] {
            continue;
        }
        let ratio = law[v].clone() / BigRational::from_integer((g.degree(v) as i64).into());
        match &kappa {
            None => kappa = Some(ratio),
            Some(k) => {
                if *k != ratio {
                    degree_proportional = false;
                }
            }
        }
    }
    Ok(MidpointLawReport {
        variant,
        law,
        attaining,
        degree_proportional,
        even_geodesics: count,
        excluded_odd_mass: odd_mass,
    })
}

fn enumerate_paths(
    g: &Graph,
    dist: &[Vec<u32>],
    target: usize,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) -> Result<()> {
    let cur = *path.last().unwrap();
    if cur == target {
        visit(path);
        return Ok(());
    }
    if path.len() as u64 > GEODESIC_CAP {
        return Err(Error::TooLarge("geodesic count cap exceeded".into()));
    }
    for &next in g.neighbors(cur) {
        if dist[next][target] + 1 == dist[cur][target] {
            path.push(next);
            enumerate_paths(g, dist, target, path, visit)?;
            path.pop();
        }
    }
    Ok(())
}

fn weight(g: &Graph, path: &[usize], variant: WeightVariant) -> BigRational {
    let br = |v: i64| BigRational::from_integer(v.into());
    match variant {
        WeightVariant::Interior => {
            let mut w = BigRational::from_integer(1.into());
            for &u in &path[1..path.len() - 1] {
                w /= br(g.degree(u) as i64);
            }
            w
        }
        WeightVariant::EndpointPlus => {
            let ends = g.degree(path[0]) + g.degree(*path.last().unwrap());
            let mut w = br(ends as i64);
            for &u in path {
                w /= br(g.degree(u) as i64 + 1);
            }
            w
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct McReport {
    pub steps: u64,
    pub accepted_segments: u64,
    /// Midpoint tallies per vertex over accepted even geodesic segments.
    pub midpoint_counts: Vec<u64>,
    /// Token occupancy per vertex across all steps.
    pub occupancy: Vec<u64>,
    /// Occupancy within three binomial sigmas of degree proportionality at
    /// every vertex.
    pub occupancy_proportional: bool,
    /// Midpoint tallies within three binomial sigmas of the exact law at
    /// every attaining vertex.
    pub matches_exact_law: bool,
    /// Chi-square distance between the empirical midpoint law and the
    /// exact one.
    pub chi_square: f64,
}

/// Runs the token process: from a degree-stationary start, walk with
/// probability `c` (variant 1) or teleport with per-vertex probability
/// `1/(deg+1)` (variant 2); teleports land on a uniform endpoint of a
/// uniform edge. Segments between teleports that are even-length geodesics
/// contribute their midpoints.
pub fn mc_teleport_walk(
    g: &Graph,
    c: f64,
    steps: u64,
    seed: u64,
    variant: WeightVariant,
) -> Result<McReport> {
    if !(0.0 < c && c < 1.0) {
        return Err(Error::Domain(format!("c = {c} outside (0,1)")));
    }
    let exact = exact_midpoint_law(g, variant)?;
    let dist = g.dist_matrix();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // degree-stationary start
    let two_e = 2 * edges.len();
    let mut token = {
        let mut pick = rng.gen_range(0..two_e);
        let mut v = 0;
        for u in 0..g.n() {
            if pick < g.degree(u) {
                v = u;
                break;
            }
            pick -= g.degree(u);
        }
        v
    };

    let mut occupancy = vec![0u64; g.n()];
    let mut midpoint_counts = vec![0u64; g.n()];
    let mut accepted = 0u64;
    let mut segment: Vec<usize> = vec![token];
    for _ in 0..steps {
        occupancy[token] += 1;
        let teleport = match variant {
            WeightVariant::Interior => rng.gen_bool(1.0 - c),
            WeightVariant::EndpointPlus => rng.gen_bool(1.0 / (g.degree(token) as f64 + 1.0)),
        };
        if teleport {
            // close the current segment
            let (first, last) = (segment[0], *segment.last().unwrap());
            let len = segment.len() - 1;
            if len >= 2 && len % 2 == 0 && dist[first][last] as usize == len && is_path_simple(&segment)
            {
                midpoint_counts[segment[len / 2]] += 1;
                accepted += 1;
            }
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            token = if rng.gen_bool(0.5) { a } else { b };
            segment.clear();
            segment.push(token);
        } else {
            let nb = g.neighbors(token);
            token = nb[rng.gen_range(0..nb.len())];
            segment.push(token);
        }
    }

    // occupancy check against degree proportionality; successive token
    // positions are correlated over the inter-teleport time, so the
    // binomial deviation is inflated by the renewal length
    let renewal = match variant {
        WeightVariant::Interior => (1.0 + c) / (1.0 - c),
        WeightVariant::EndpointPlus => {
            let dmax = (0..g.n()).map(|v| g.degree(v)).max().unwrap() as f64;
            2.0 * (dmax + 1.0)
        }
    };
    let mut occupancy_proportional = true;
    for v in 0..g.n() {
        let p = g.degree(v) as f64 / two_e as f64;
        let mean = steps as f64 * p;
        let sd = (steps as f64 * p * (1.0 - p) * renewal).sqrt();
        if (occupancy[v] as f64 - mean).abs() > 3.0 * sd + 1.0 {
            occupancy_proportional = false;
        }
    }

    // midpoint law check against the exact law
    let mut matches_exact_law = true;
    let mut chi_square = 0.0;
    if accepted > 0 && !exact.law.is_empty() {
        for v in 0..g.n() {
            let p = exact.law[v].to_f64().unwrap();
            let mean = accepted as f64 * p;
            if p > 0.0 {
                let sd = (accepted as f64 * p * (1.0 - p)).sqrt();
                if (midpoint_counts[v] as f64 - mean).abs() > 3.0 * sd + 1.0 {
                    matches_exact_law = false;
                }
                chi_square += (midpoint_counts[v] as f64 - mean).powi(2) / mean.max(1e-12);
            } else if midpoint_counts[v] > 0 {
                matches_exact_law = false;
            }
        }
    }
    Ok(McReport {
        steps,
        accepted_segments: accepted,
        midpoint_counts,
        occupancy,
        occupancy_proportional,
        matches_exact_law,
        chi_square,
    })
}

fn is_path_simple(path: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    path.iter().all(|v| seen.insert(*v))
}

/// Configuration-model sample with degree law `P(k) ~ k^{-exponent}` on
/// `k in 1..=sqrt(n)`, simplified and restricted to its largest component.
pub fn power_law_graph(n: usize, exponent: f64, seed: u64) -> Result<Graph> {
    if exponent <= 1.0 {
        return Err(Error::Domain(format!("exponent {exponent} must exceed 1")));
    }
    if n < 4 {
        return Err(Error::Domain("need at least 4 vertices".into()));
    }
    let kmax = (n as f64).sqrt().ceil() as usize;
    let weights: Vec<f64> = (1..=kmax).map(|k| (k as f64).powf(-exponent)).collect();
    let total: f64 = weights.iter().sum();
    for attempt in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut degrees: Vec<usize> = (0..n)
            .map(|_| {
                let mut u = rng.gen_range(0.0..total);
                for (k, w) in weights.iter().enumerate() {
                    if u < *w {
                        return k + 1;
                    }
                    u -= w;
                }
                kmax
            })
            .collect();
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        // configuration pairing
        let mut stubs: Vec<usize> = degrees
            .iter()
            .enumerate()
            .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
            .collect();
        for i in (1..stubs.len()).rev() {
            let j = rng.gen_range(0..=i);
            stubs.swap(i, j);
        }
        let mut edges = Vec::new();
        for pair in stubs.chunks(2) {
            if pair.len() == 2 && pair[0] != pair[1] {
                edges.push((pair[0], pair[1]));
            }
        }
        edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
        edges.dedup_by_key(|&mut (a, b)| (a.min(b), a.max(b)));
        // largest component
        let mut comp = vec![usize::MAX; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut best: (usize, Vec<usize>) = (usize::MAX, Vec::new());
        let mut cid = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut members = vec![start];
            comp[start] = cid;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = cid;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            if best.1.len() < members.len() {
                best = (cid, members);
            }
            cid += 1;
        }
        let (best_cid, mut members) = best;
        members.sort_unstable();
        if members.len() < 4 {
            continue;
        }
        let relabel: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let sub_edges: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(a, b)| comp[a] == best_cid && comp[b] == best_cid)
            .map(|&(a, b)| (relabel[&a], relabel[&b]))
            .collect();
        if let Ok(g) = Graph::build(members.len(), &sub_edges) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(50))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::family;
    use crate::Rational;

    fn to_rat(b: &BigRational) -> Rational {
        Rational::new(
            b.numer().to_i64().expect("small numerator"),
            b.denom().to_i64().expect("small denominator"),
        )
    }

    #[test]
    fn k3_has_no_even_geodesics() {
        let rep = exact_midpoint_law(&family::complete(3), WeightVariant::Interior).unwrap();
        assert!(rep.law.iter().all(|l| l.is_zero()));
        assert!(rep.attaining.iter().all(|&a| !a));
    }

    #[test]
    fn c6_law_is_uniform() {
        let rep = exact_midpoint_law(&family::cycle(6), WeightVariant::Interior).unwrap();
        assert!(rep.degree_proportional);
        for l in &rep.law {
            assert_eq!(to_rat(l), Rational::new(1, 6));
        }
        let rep2 = exact_midpoint_law(&family::cycle(6), WeightVariant::EndpointPlus).unwrap();
        assert!(rep2.degree_proportional);
    }

    #[test]
    fn star_law_concentrates_on_center() {
        let rep = exact_midpoint_law(&family::star(4), WeightVariant::Interior).unwrap();
        assert_eq!(to_rat(&rep.law[0]), Rational::new(1, 1));
        assert!(rep.degree_proportional); // single attaining vertex
    }

    #[test]
    fn k4_minus_edge_proportional_both_variants() {
        // complete graph on 4 vertices minus the (0,1) edge
        let g = Graph::build(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for variant in [WeightVariant::Interior, WeightVariant::EndpointPlus] {
            let rep = exact_midpoint_law(&g, variant).unwrap();
            assert!(rep.degree_proportional, "{variant:?}");
        }
    }

    #[test]
    fn path_five_interior_law_is_not_proportional() {
        // the long geodesic loads the center beyond its degree share
        let rep = exact_midpoint_law(&family::path(5), WeightVariant::Interior).unwrap();
        assert!(!rep.degree_proportional);
        assert_eq!(to_rat(&rep.law[2]), Rational::new(5, 13));
        assert_eq!(to_rat(&rep.law[1]), Rational::new(4, 13));
    }

    #[test]
    fn mc_matches_exact_on_c6() {
        let g = family::cycle(6);
        let rep = mc_teleport_walk(&g, 0.9, 120_000, 11, WeightVariant::Interior).unwrap();
        assert!(rep.accepted_segments > 500);
        assert!(rep.occupancy_proportional);
        assert!(rep.matches_exact_law);
    }

    #[test]
    fn mc_variant2_on_regular_graph() {
        let g = family::cycle(6);
        let rep = mc_teleport_walk(&g, 0.9, 120_000, 13, WeightVariant::EndpointPlus).unwrap();
        assert!(rep.occupancy_proportional);
        assert!(rep.matches_exact_law);
    }

    #[test]
    fn mc_law_distance_shrinks_with_steps() {
        // chi-square distance between the normalized empirical law and the
        // exact law (the statistic over the accepted count) drops as the
        // walk runs ten times longer, in median over five seeds
        let g = family::cycle(6);
        let mut medians = Vec::new();
        for steps in [30_000u64, 300_000] {
            let mut stats: Vec<f64> = (0..5)
                .map(|s| {
                    let rep =
                        mc_teleport_walk(&g, 0.9, steps, 100 + s, WeightVariant::Interior).unwrap();
                    rep.chi_square / rep.accepted_segments as f64
                })
                .collect();
            stats.sort_by(|a, b| a.partial_cmp(b).unwrap());
            medians.push(stats[2]);
        }
        assert!(medians[1] < medians[0], "distances {medians:?}");
    }

    #[test]
    fn power_law_generation() {
        assert!(power_law_graph(100, 0.9, 1).is_err());
        let g = power_law_graph(100, 2.5, 42).unwrap();
        assert!(g.n() >= 10);
        let g2 = power_law_graph(100, 2.5, 42).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), g2.edges().collect::<Vec<_>>());
        // large exponent degenerates towards fewer high-degree vertices
        let g3 = power_law_graph(60, 8.0, 7).unwrap();
        let dmax = (0..g3.n()).map(|v| g3.degree(v)).max().unwrap();
        assert!(dmax <= 4);
    }
}
