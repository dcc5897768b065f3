//! Closed-form tail bounds, permutation and lattice-level concentration,
//! and expander midpoint counts.

use crate::cube::{d_star, midpoints_hat};
use crate::field::ScalarField;
use crate::iso::VertexSet;
use crate::sigma::{distance_field, sigma2_candidate_estimate, GridSpec, SubgaussianEstimate};
use crate::space::{FiniteMetricSpace, Graph};
use crate::{Error, Rational, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TailVariant {
    /// `exp(-h^2 / (2 sigma^2))`, `h >= 0`.
    Plain,
    /// `exp(-(h/sigma - 1)^2 / 2)` for deviations above the median,
    /// `h >= sigma`.
    Skewed,
}

/// Closed-form subgaussian tail value.
pub fn tail_bound(sigma2: f64, h: f64, variant: TailVariant) -> Result<f64> {
    if sigma2 <= 0.0 {
        return Err(Error::Domain(format!("sigma2 = {sigma2} must be positive")));
    }
    match variant {
        TailVariant::Plain => {
            if h < 0.0 {
                return Err(Error::Domain(format!("h = {h} must be nonnegative")));
            }
            Ok((-h * h / (2.0 * sigma2)).exp())
        }
        TailVariant::Skewed => {
            let sigma = sigma2.sqrt();
            if h < sigma {
                return Err(Error::Domain(format!("h = {h} below sigma = {sigma}")));
            }
            let z = h / sigma - 1.0;
            Ok((-z * z / 2.0).exp())
        }
    }
}

/// Exact upper-tail mass `P(f - Ef >= h)` under the uniform measure.
pub fn empirical_tail(f: &ScalarField, h: Rational) -> Rational {
    let mean = f.mean();
    let count = f.values().iter().filter(|&&v| v - mean >= h).count();
    Rational::new(count as i64, f.len() as i64)
}

/// Exact upper-tail mass around the median, `P(f - m(f) >= h)`, the
/// quantity controlled by the skewed bound.
pub fn empirical_median_tail(f: &ScalarField, h: Rational) -> Rational {
    let med = f.median();
    let count = f.values().iter().filter(|&&v| v - med >= h).count();
    Rational::new(count as i64, f.len() as i64)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PermutationVarianceReport {
    pub n: u32,
    /// Exhaustive variance over all n! permutations.
    #[serde(serialize_with = "ser_rat")]
    pub exact: Rational,
    /// The odd-n closed form `n/4 + ((n-1)^2 - 2)/(8n^2)` as commonly
    /// stated; its pairwise covariance count misses a factor of two, so it
    /// undershoots the exhaustive value.
    #[serde(serialize_with = "ser_rat_opt")]
    pub stated_formula: Option<Rational>,
    /// Closed form matching the exhaustive count for odd n:
    /// `(n-1)(n+1)^2 / (4 n^2)`.
    #[serde(serialize_with = "ser_rat_opt")]
    pub corrected_formula: Option<Rational>,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rat_opt<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Exhaustive variance of the balanced indicator-sum field
/// `X = sum_{i <= n/2} [pi(i) > n/2] + sum_{i > n/2} (1 - [pi(i) > n/2])`
/// over all permutations, with the odd-n closed forms.
pub fn permutation_variance(n: u32) -> Result<PermutationVarianceReport> {
    if n < 2 || n > 8 {
        return Err(Error::TooLarge(format!("permutation_variance needs 2 <= n <= 8, got {n}")));
    }
    let space = FiniteMetricSpace::symmetric_group(n)?;
    let f = permutation_indicator_field(&space, n);
    let exact = f.variance();
    let (stated_formula, corrected_formula) = if n % 2 == 1 {
        let ni = n as i64;
        (
            Some(Rational::new(ni, 4) + Rational::new((ni - 1) * (ni - 1) - 2, 8 * ni * ni)),
            Some(Rational::new((ni - 1) * (ni + 1) * (ni + 1), 4 * ni * ni)),
        )
    } else {
        (None, None)
    };
    Ok(PermutationVarianceReport { n, exact, stated_formula, corrected_formula })
}

/// The balanced indicator-sum field on a symmetric-group space.
pub fn permutation_indicator_field(space: &FiniteMetricSpace, n: u32) -> ScalarField {
    let half = n / 2;
    let vals: Vec<i64> = (0..space.n())
        .map(|i| {
            let pi = space.perm(i).expect("symmetric-group space");
            let mut x = 0i64;
            for (pos, &val) in pi.iter().enumerate() {
                let high = 2 * (val as u32) > n;
                if pos < half as usize {
                    x += high as i64;
                } else {
                    x += 1 - high as i64;
                }
            }
            x
        })
        .collect();
    ScalarField::from_integers(&vals, 0)
}

/// Candidate Lipschitz fields for a Boolean-level space: distance fields
/// from one point per level plus the cardinality field.
pub fn level_space_candidates(space: &FiniteMetricSpace) -> Vec<ScalarField> {
    let mut seen_levels = std::collections::BTreeSet::new();
    let mut cands = Vec::new();
    for i in 0..space.n() {
        let level = space.mask(i).unwrap().count_ones();
        if seen_levels.insert(level) {
            cands.push(distance_field(space, i));
        }
    }
    let card: Vec<i64> = (0..space.n()).map(|i| space.mask(i).unwrap().count_ones() as i64).collect();
    cands.push(ScalarField::from_integers(&card, 0));
    cands
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LevelBoundReport {
    pub n: u32,
    pub r: u32,
    /// `n - 1 + r^2/4`
    pub bound: f64,
    /// Grid lower estimate of the level-space subgaussian constant; `None`
    /// above the materialization cap.
    pub sigma2_estimate: Option<f64>,
    pub estimate_below_bound: bool,
}

/// Evaluates the two-level subgaussian bound and, for `n <= 14`, checks a
/// grid estimate of the actual constant against it.
pub fn level_set_bounds(n: u32, r: u32, grid: &GridSpec) -> Result<LevelBoundReport> {
    if n < 3 {
        return Err(Error::Domain("level bound needs n >= 3".into()));
    }
    if (n - r) % 2 != 0 || r > n {
        return Err(Error::Domain(format!("levels (n-r)/2, (n+r)/2 need n - r even, got n={n} r={r}")));
    }
    let bound = (n - 1) as f64 + (r * r) as f64 / 4.0;
    let sigma2_estimate = if n <= 14 {
        let lo = (n - r) / 2;
        let hi = (n + r) / 2;
        let levels: Vec<u32> = if lo == hi { vec![lo] } else { vec![lo, hi] };
        let space = FiniteMetricSpace::boolean_levels(n, &levels)?;
        let cands = level_space_candidates(&space);
        Some(sigma2_candidate_estimate(&space, &cands, grid).sigma2_lower)
    } else {
        None
    };
    let estimate_below_bound = sigma2_estimate.map_or(true, |s| s <= bound);
    Ok(LevelBoundReport { n, r, bound, sigma2_estimate, estimate_below_bound })
}

/// Tail bound for functions induced on levels linearly far from the
/// center: `exp((R+3) ln c - ln k - h^2 / (2(n-1)))`.
pub fn linear_far_bound(c: f64, n: u32, big_r: f64, k: u32, h: f64) -> Result<f64> {
    if c < 2.0 {
        return Err(Error::Domain(format!("c = {c} must be at least 2")));
    }
    let nf = n as f64;
    let upper = (c - 1.0) / (2.0 * (c + 1.0)) * nf;
    let lower = (nf * (c / (c - 1.0)).ln()).sqrt();
    if !(big_r < upper && big_r > lower) {
        return Err(Error::Domain(format!(
            "R = {big_r} outside ({lower:.4}, {upper:.4}) for c = {c}, n = {n}"
        )));
    }
    if h < 0.0 {
        return Err(Error::Domain("h must be nonnegative".into()));
    }
    Ok(((big_r + 3.0) * c.ln() - (k as f64).ln() - h * h / (2.0 * (nf - 1.0))).exp())
}

/// `exp(-t^2 / (8k - 8 + 2 r^2))`: the far-set cardinality factor on a
/// two-level space.
pub fn concentration_on_levels_bound(k: u32, r: u32, t: f64) -> f64 {
    (-t * t / (8.0 * k as f64 - 8.0 + 2.0 * (r * r) as f64)).exp()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LevelAdversaryReport {
    pub k: u32,
    pub r: u32,
    pub candidates_checked: usize,
    pub violations: usize,
}

/// Adversarial search for a violation of
/// `|A| <= |C| exp(-t^2/(8k - 8 + 2r^2))` over small and ball-shaped `A`
/// on the two-level space inside `{0,1}^k`, with `B` the maximal set at
/// distance `t` and `|B| >= |A|`.
pub fn concentration_on_levels_search(k: u32, r: u32) -> Result<LevelAdversaryReport> {
    if k > 10 {
        return Err(Error::TooLarge(format!("adversary cap k <= 10, got {k}")));
    }
    let lo = (k - r) / 2;
    let hi = (k + r) / 2;
    let levels: Vec<u32> = if lo == hi { vec![lo] } else { vec![lo, hi] };
    let space = FiniteMetricSpace::boolean_levels(k, &levels)?;
    let n = space.n();
    let csize = n as f64;

    // candidate A families: all singletons, all pairs, balls of every
    // radius around every point
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        candidates.push(vec![i]);
        for j in i + 1..n {
            candidates.push(vec![i, j]);
        }
    }
    let diam = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| space.dist(i, j)).max().unwrap();
    for center in 0..n {
        for rad in 0..=diam {
            let ball: Vec<usize> = (0..n).filter(|&u| space.dist(center, u) <= rad).collect();
            candidates.push(ball);
        }
    }
    candidates.sort();
    candidates.dedup();

    let violations: usize = candidates
        .par_iter()
        .map(|a| {
            // histogram of distances to A gives |B_t| for every t at once
            let mut hist = vec![0usize; diam as usize + 2];
            for x in 0..n {
                let dmin = a.iter().map(|&y| space.dist(x, y)).min().unwrap();
                hist[dmin as usize] += 1;
            }
            let mut bad = 0;
            let mut b_count: usize = 0;
            for t in (1..=diam as usize).rev() {
                b_count += hist.get(t).copied().unwrap_or(0) + if t == diam as usize { hist[t + 1] } else { 0 };
                if b_count >= a.len() {
                    let bound = csize * concentration_on_levels_bound(k, r, t as f64);
                    if (a.len() as f64) > bound {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    Ok(LevelAdversaryReport { k, r, candidates_checked: candidates.len(), violations })
}

/// Closed-form subgaussian constant of the complete graph `K_m`.
pub fn sigma2_complete(m: u32) -> f64 {
    assert!(m >= 2);
    if m % 2 == 0 {
        0.25
    } else {
        let mf = m as f64;
        1.0 / (2.0 * mf * ((mf + 1.0) / (mf - 1.0)).ln())
    }
}

/// Closed-form constant of the nested complete product
/// `J_n = K_n x K_{n-1} x ... x K_2` (tensoring additivity).
pub fn sigma2_j(n: u32) -> f64 {
    (2..=n).map(sigma2_complete).sum()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SnReport {
    pub n: u32,
    /// Grid lower estimate over the candidate family.
    pub sigma2_estimate: f64,
    /// Exact closed form, available at n = 2 where `S_2` is two points at
    /// distance two.
    pub sigma2_exact: Option<f64>,
    pub above_quarter_n: bool,
    pub below_n_minus_1: bool,
    pub sigma2_j: f64,
    /// `n/4 > sigma2(J_n) + 1/4` for n >= 3.
    pub j_gap: bool,
}

/// Subgaussian bracket report for the symmetric group under Hamming
/// distance.
pub fn sn_bounds_report(n: u32, grid: &GridSpec) -> Result<SnReport> {
    if n < 2 || n > 6 {
        return Err(Error::TooLarge(format!("sn report needs 2 <= n <= 6, got {n}")));
    }
    let space = FiniteMetricSpace::symmetric_group(n)?;
    let mut cands = vec![distance_field(&space, 0), permutation_indicator_field(&space, n)];
    // distance from a second reference permutation for coverage
    if space.n() > 2 {
        cands.push(distance_field(&space, space.n() - 1));
    }
    let est: SubgaussianEstimate = sigma2_candidate_estimate(&space, &cands, grid);
    let sigma2_exact = (n == 2).then(|| 4.0 * 0.25);
    let nf = n as f64;
    let j = sigma2_j(n);
    Ok(SnReport {
        n,
        sigma2_estimate: est.sigma2_lower,
        sigma2_exact,
        above_quarter_n: n < 3 || est.sigma2_lower > nf / 4.0,
        below_n_minus_1: est.sigma2_lower <= nf - 1.0 + 1e-9,
        sigma2_j: j,
        j_gap: n < 3 || nf / 4.0 > j + 0.25,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ExpanderReport {
    pub degree: usize,
    /// Second-largest eigenvalue of the normalized adjacency.
    pub lambda2: f64,
    /// Largest non-principal eigenvalue magnitude (the mixing constant).
    pub lambda_mix: f64,
    pub d_star: i64,
    pub degenerate: bool,
    /// `|e(S', T') - deg |S'||T'| / n| <= lambda_mix deg sqrt(|S'||T'|)`
    pub mixing_holds: bool,
    pub midpoint_count: usize,
    /// `e(S', T') / deg`: the edge-based midpoint lower-bound proxy.
    pub edge_bound: f64,
}

/// Spectral data of a regular graph: `(lambda_2, lambda_mix)`.
pub fn normalized_spectrum_gap(g: &Graph) -> Result<(f64, f64)> {
    let n = g.n();
    let deg = g.degree(0);
    if (0..n).any(|v| g.degree(v) != deg) {
        return Err(Error::Irregular);
    }
    if n <= 500 {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (a, b) in g.edges() {
            m[(a, b)] = 1.0 / deg as f64;
            m[(b, a)] = 1.0 / deg as f64;
        }
        let eig = SymmetricEigen::new(m);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let lambda2 = vals[1];
        let lambda_mix = vals[1..].iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
        Ok((lambda2, lambda_mix))
    } else {
        // power iteration on the component orthogonal to the constant
        // vector gives the mixing constant of A/deg
        let mut v: Vec<f64> = (0..n).map(|i| ((i * 2654435761) % 1000) as f64 / 1000.0 - 0.5).collect();
        let mut lambda = 0.0;
        for _ in 0..10_000 {
            let mean = v.iter().sum::<f64>() / n as f64;
            for x in v.iter_mut() {
                *x -= mean;
            }
            let mut next = vec![0.0; n];
            for (a, b) in g.edges() {
                next[a] += v[b];
                next[b] += v[a];
            }
            for x in next.iter_mut() {
                *x /= deg as f64;
            }
            let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            let new_lambda = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let done = (new_lambda - lambda).abs() < 1e-8;
            lambda = new_lambda;
            v = next.iter().map(|x| x / norm).collect();
            if done {
                break;
            }
        }
        Ok((lambda, lambda))
    }
}

/// Ordered-pair edge count between two vertex sets.
pub fn ordered_edge_count(g: &Graph, x: &VertexSet, y: &VertexSet) -> usize {
    x.iter().map(|u| g.neighbors(u).iter().filter(|&&v| y.contains(v)).count()).sum()
}

/// Expander midpoint report: grows half-distance balls around the sets,
/// checks the mixing inequality on them, and compares the exact midpoint
/// count against the edge-count proxy.
pub fn expander_midpoints(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<ExpanderReport> {
    if g.n() > 2000 {
        return Err(Error::TooLarge(format!("expander cap 2000 exceeded: n = {}", g.n())));
    }
    let (lambda2, lambda_mix) = normalized_spectrum_gap(g)?;
    let deg = g.degree(0);
    let space = FiniteMetricSpace::from_graph(g.clone());
    let ds = d_star(&space, s, t);
    let degenerate = ds == 0;
    let sp = crate::iso::graph_ball(g, s, ds / 2)?;
    let tp = crate::iso::graph_ball(g, t, ds / 2)?;
    let e = ordered_edge_count(g, &sp, &tp);
    let n = g.n() as f64;
    let expected = deg as f64 * sp.len() as f64 * tp.len() as f64 / n;
    let slack = lambda_mix * deg as f64 * ((sp.len() * tp.len()) as f64).sqrt();
    let mixing_holds = (e as f64 - expected).abs() <= slack + 1e-9;
    let midpoint_count = midpoints_hat(&space, s, t, Rational::new(1, 2)).len();
    Ok(ExpanderReport {
        degree: deg,
        lambda2,
        lambda_mix,
        d_star: ds,
        degenerate,
        mixing_holds,
        midpoint_count,
        edge_bound: e as f64 / deg as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::family;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(tail_bound(1.0, 0.0, TailVariant::Plain).unwrap(), 1.0);
        let v = tail_bound(1.0, 2.0, TailVariant::Plain).unwrap();
        assert!((v - (-2.0f64).exp()).abs() < 1e-12);
        assert_eq!(tail_bound(1.0, 1.0, TailVariant::Skewed).unwrap(), 1.0);
        assert!(tail_bound(0.0, 1.0, TailVariant::Plain).is_err());
        assert!(tail_bound(1.0, 0.5, TailVariant::Skewed).is_err());
    }

    #[test]
    fn tail_bounds_monotone_and_bounded() {
        for variant in [TailVariant::Plain, TailVariant::Skewed] {
            let mut prev = 1.0 + 1e-12;
            for step in 0..60 {
                let h = 1.0 + step as f64 * 0.25;
                let v = tail_bound(1.0, h, variant).unwrap();
                assert!(v <= 1.0 && v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn empirical_tail_examples() {
        let constant = ScalarField::from_integers(&[2, 2, 2], 0);
        assert_eq!(empirical_tail(&constant, rat(1, 2)), rat(0, 1));
        // K_2: P(f - 1/2 >= 1/2) = 1/2 <= exp(-0.5)
        let f = ScalarField::from_integers(&[0, 1], 0);
        let p = empirical_tail(&f, rat(1, 2));
        assert_eq!(p, rat(1, 2));
        let bound = tail_bound(0.25, 0.5, TailVariant::Plain).unwrap();
        assert!(0.5 <= bound);
        // C_5 distance field at h = 1: the mean tail is empty (max
        // deviation is 4/5) while the median tail carries the two far
        // vertices; both sit below their closed-form bounds
        let c5 = ScalarField::from_integers(&[0, 1, 2, 2, 1], 0);
        assert_eq!(empirical_tail(&c5, rat(1, 1)), rat(0, 1));
        let p = empirical_median_tail(&c5, rat(1, 1));
        assert_eq!(p, rat(2, 5));
        assert!(0.4 <= tail_bound(0.56, 1.0, TailVariant::Plain).unwrap());
        assert!(0.4 <= tail_bound(0.56, 1.0, TailVariant::Skewed).unwrap());
    }

    #[test]
    fn permutation_variance_odd_matches_corrected_formula() {
        for n in [3u32, 5, 7] {
            let rep = permutation_variance(n).unwrap();
            assert_eq!(rep.exact, rep.corrected_formula.unwrap(), "n = {n}");
            // the stated form undershoots by the doubled covariance sum
            assert!(rep.exact > rep.stated_formula.unwrap(), "n = {n}");
        }
        let rep = permutation_variance(5).unwrap();
        assert_eq!(rep.exact, rat(36, 25));
        assert_eq!(rep.stated_formula.unwrap(), rat(5, 4) + rat(14, 200));
        let rep4 = permutation_variance(4).unwrap();
        assert!(rep4.stated_formula.is_none());
        assert!(rep4.exact > rat(0, 1));
    }

    #[test]
    fn level_bounds_small() {
        let grid = GridSpec { t_min: 1e-3, t_max: 50.0, points: 120 };
        let rep = level_set_bounds(4, 0, &grid).unwrap();
        assert_eq!(rep.bound, 3.0);
        assert!(rep.estimate_below_bound);
        let rep = level_set_bounds(3, 1, &grid).unwrap();
        assert_eq!(rep.bound, 2.25);
        assert!(rep.estimate_below_bound);
        assert!(level_set_bounds(4, 1, &grid).is_err()); // parity
    }

    #[test]
    fn concentration_levels_bound_value() {
        let v = concentration_on_levels_bound(8, 0, 4.0);
        assert!((v - (-16.0f64 / 56.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn level_adversary_finds_no_violation() {
        for (k, r) in [(6u32, 0u32), (7, 1), (6, 2)] {
            let rep = concentration_on_levels_search(k, r).unwrap();
            assert_eq!(rep.violations, 0, "k={k} r={r}");
        }
    }

    #[test]
    fn linear_far_domain() {
        // c = 2, n = 100: R must lie in (sqrt(100 ln 2), 100/6)
        assert!(linear_far_bound(2.0, 100, 10.0, 1, 0.0).is_ok());
        assert!(linear_far_bound(2.0, 100, 30.0, 1, 0.0).is_err());
        assert!(linear_far_bound(1.5, 100, 10.0, 1, 0.0).is_err());
    }

    #[test]
    fn sn_reports() {
        let grid = GridSpec { t_min: 1e-3, t_max: 50.0, points: 150 };
        let r2 = sn_bounds_report(2, &grid).unwrap();
        assert_eq!(r2.sigma2_exact, Some(1.0));
        assert!((r2.sigma2_estimate - 1.0).abs() < 1e-6);
        for n in [3u32, 4, 5] {
            let rep = sn_bounds_report(n, &grid).unwrap();
            assert!(rep.above_quarter_n, "n = {n}: est {}", rep.sigma2_estimate);
            assert!(rep.below_n_minus_1);
            assert!(rep.j_gap);
        }
        // J_3 = K_3 x K_2
        assert!((sigma2_j(3) - (sigma2_complete(3) + 0.25)).abs() < 1e-15);
        assert!((sigma2_complete(3) - 1.0 / (6.0 * 2.0f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn petersen_spectrum() {
        let g = family::petersen();
        let (l2, lmix) = normalized_spectrum_gap(&g).unwrap();
        assert!((l2 - 1.0 / 3.0).abs() < 1e-9);
        assert!((lmix - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn complete_graph_spectrum() {
        let g = family::complete(6);
        let (l2, lmix) = normalized_spectrum_gap(&g).unwrap();
        assert!((l2 + 0.2).abs() < 1e-9); // -1/(n-1)
        assert!((lmix - 0.2).abs() < 1e-9);
    }

    #[test]
    fn expander_report_on_petersen() {
        let g = family::petersen();
        let s = VertexSet::from_iter([0]);
        let t = VertexSet::from_iter([7]);
        let rep = expander_midpoints(&g, &s, &t).unwrap();
        assert!(!rep.degenerate);
        assert!(rep.mixing_holds);
        assert!(rep.midpoint_count > 0);
        // S = T flags degenerate
        let rep = expander_midpoints(&g, &s, &s).unwrap();
        assert!(rep.degenerate);
        assert!(expander_midpoints(&family::star(3), &s, &t).is_err());
    }

    #[test]
    fn mixing_lemma_sampled_pairs() {
        use rand::{Rng, SeedableRng};
        let g = family::petersen();
        let (_, lmix) = normalized_spectrum_gap(&g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let x = VertexSet::from_iter((0..10).filter(|_| rng.gen_bool(0.5)));
            let y = VertexSet::from_iter((0..10).filter(|_| rng.gen_bool(0.5)));
            if x.is_empty() || y.is_empty() {
                continue;
            }
            let e = ordered_edge_count(&g, &x, &y) as f64;
            let expected = 3.0 * (x.len() * y.len()) as f64 / 10.0;
            assert!((e - expected).abs() <= lmix * 3.0 * ((x.len() * y.len()) as f64).sqrt() + 1e-9);
        }
    }
}
