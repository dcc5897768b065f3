//! Symmetric discrete midpoints, convexity on the Boolean lattice, and
//! Brunn-Minkowski curvature estimation.
//!
//! Point-level midpoints generalize to sets by pairwise union. Hypercube
//! (mask-backed) spaces get a bit-twiddling fast path; everything else
//! falls back to scanning the point list against the exact metric.

use crate::iso::VertexSet;
use crate::space::FiniteMetricSpace;
use crate::{Error, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A midpoint of an even-distance pair is a point; an odd-distance pair
/// yields the edges crossing its middle layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MidpointAtom {
    Point(usize),
    Edge(usize, usize),
}

impl MidpointAtom {
    pub fn edge(a: usize, b: usize) -> MidpointAtom {
        MidpointAtom::Edge(a.min(b), a.max(b))
    }
}

fn floor_ratio(r: Rational, d: i64) -> i64 {
    (r * Rational::from_integer(d)).floor().to_integer()
}

fn ceil_ratio(r: Rational, d: i64) -> i64 {
    (r * Rational::from_integer(d)).ceil().to_integer()
}

/// Symmetric discrete midpoints of a pair: the on-geodesic points at the
/// two rounded fractions `floor(rho d)` and `ceil(rho d)` of the distance,
/// measured from `a`. The roundings coincide with the half-distance layers
/// at `rho = 1/2` and make `m_rho(a,b) = m_{1-rho}(b,a)` an identity.
pub fn midpoints_hat_pair(space: &FiniteMetricSpace, a: usize, b: usize, rho: Rational) -> VertexSet {
    let ctx = MidpointCtx::new(space);
    let mut out = VertexSet::new();
    ctx.pair_into(space, a, b, rho, &mut out);
    out
}

/// Precomputed lookup for mask-backed spaces, so set-level unions do not
/// rescan the point list per midpoint.
struct MidpointCtx {
    is_cube: bool,
    lookup: Option<std::collections::HashMap<u64, usize>>,
}

impl MidpointCtx {
    fn new(space: &FiniteMetricSpace) -> MidpointCtx {
        let is_cube = space.is_hypercube().is_some();
        let lookup = if !is_cube && space.mask(0).is_some() {
            Some((0..space.n()).map(|i| (space.mask(i).unwrap(), i)).collect())
        } else {
            None
        };
        MidpointCtx { is_cube, lookup }
    }

    /// Midpoints of one pair accumulated into a word bitset.
    fn pair_bits(&self, space: &FiniteMetricSpace, a: usize, b: usize, rho: Rational, out: &mut [u64]) {
        let d = space.dist(a, b);
        if d == 0 {
            out[a / 64] |= 1 << (a % 64);
            return;
        }
        let l1 = floor_ratio(rho, d);
        let l2 = ceil_ratio(rho, d);
        if let (Some(ma), Some(mb)) = (space.mask(a), space.mask(b)) {
            for l in if l1 == l2 { l1..=l1 } else { l1..=l2 } {
                mask_layer(ma, mb, l as u32, &mut |m| {
                    if self.is_cube {
                        out[m as usize / 64] |= 1 << (m % 64);
                    } else if let Some(&idx) = self.lookup.as_ref().unwrap().get(&m) {
                        out[idx / 64] |= 1 << (idx % 64);
                    }
                });
            }
            return;
        }
        for u in 0..space.n() {
            let da = space.dist(a, u);
            if (da == l1 || da == l2) && da + space.dist(u, b) == d {
                out[u / 64] |= 1 << (u % 64);
            }
        }
    }

    fn pair_into(&self, space: &FiniteMetricSpace, a: usize, b: usize, rho: Rational, out: &mut VertexSet) {
        let d = space.dist(a, b);
        if d == 0 {
            out.insert(a);
            return;
        }
        let l1 = floor_ratio(rho, d);
        let l2 = ceil_ratio(rho, d);
        if let (Some(ma), Some(mb)) = (space.mask(a), space.mask(b)) {
            for l in if l1 == l2 { l1..=l1 } else { l1..=l2 } {
                mask_layer(ma, mb, l as u32, &mut |m| {
                    if self.is_cube {
                        out.insert(m as usize);
                    } else if let Some(&idx) = self.lookup.as_ref().unwrap().get(&m) {
                        out.insert(idx);
                    }
                });
            }
            return;
        }
        for u in 0..space.n() {
            let da = space.dist(a, u);
            if (da == l1 || da == l2) && da + space.dist(u, b) == d {
                out.insert(u);
            }
        }
    }
}

/// Visits every mask on the geodesic from `ma` to `mb` at distance `l`
/// from `ma`.
fn mask_layer(ma: u64, mb: u64, l: u32, visit: &mut impl FnMut(u64)) {
    let diff = ma ^ mb;
    let bits: Vec<u64> = (0..64).filter(|&i| diff >> i & 1 == 1).map(|i| 1u64 << i).collect();
    let k = l as usize;
    if k > bits.len() {
        return;
    }
    let mut pick = vec![0usize; k];
    subsets_rec(&bits, 0, 0, &mut pick, &mut |chosen: &[usize]| {
        let flip = chosen.iter().fold(0u64, |acc, &i| acc | bits[i]);
        visit(ma ^ flip);
    });
}

fn subsets_rec(bits: &[u64], start: usize, depth: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if depth == pick.len() {
        f(pick);
        return;
    }
    for i in start..bits.len() {
        pick[depth] = i;
        subsets_rec(bits, i + 1, depth + 1, pick, f);
    }
}

fn mask_index(space: &FiniteMetricSpace, m: u64) -> Option<usize> {
    // full hypercube: index is the mask itself
    if space.is_hypercube().is_some() {
        return Some(m as usize);
    }
    (0..space.n()).find(|&i| space.mask(i) == Some(m))
}

/// Midpoints at the displayed two-branch layers `floor(rho d)` and
/// `ceil((1-rho) d)` from the first argument; identical to taking the
/// rho-midpoints of the pair in both orientations.
pub fn midpoints_two_branch(space: &FiniteMetricSpace, s: &VertexSet, t: &VertexSet, rho: Rational) -> VertexSet {
    let one = Rational::from_integer(1);
    midpoints_hat(space, s, t, rho).union(&midpoints_hat(space, t, s, rho)).union(&midpoints_hat(space, s, t, one - rho))
}

/// Pairwise-union midpoints of two sets.
pub fn midpoints_hat(space: &FiniteMetricSpace, s: &VertexSet, t: &VertexSet, rho: Rational) -> VertexSet {
    let ctx = MidpointCtx::new(space);
    let mut out = VertexSet::new();
    for a in s.iter() {
        for b in t.iter() {
            ctx.pair_into(space, a, b, rho, &mut out);
        }
    }
    out
}

/// Midpoint atoms of a pair: middle vertices for even distance, middle
/// edges for odd distance.
pub fn midpoints_tilde(space: &FiniteMetricSpace, a: usize, b: usize) -> Result<Vec<MidpointAtom>> {
    let d = space.dist(a, b);
    if d == 0 {
        return Ok(vec![MidpointAtom::Point(a)]);
    }
    if d % 2 == 0 {
        let h = d / 2;
        return Ok((0..space.n())
            .filter(|&u| space.dist(a, u) == h && space.dist(u, b) == h)
            .map(MidpointAtom::Point)
            .collect());
    }
    if space.graph().is_none() && space.mask(a).is_none() {
        return Err(Error::NoEdgeAtoms);
    }
    let h = (d - 1) / 2;
    let lo: Vec<usize> =
        (0..space.n()).filter(|&u| space.dist(a, u) == h && space.dist(u, b) == h + 1).collect();
    let hi: Vec<usize> =
        (0..space.n()).filter(|&v| space.dist(a, v) == h + 1 && space.dist(v, b) == h).collect();
    let mut out = Vec::new();
    for &u in &lo {
        for &v in &hi {
            if space.dist(u, v) == 1 {
                out.push(MidpointAtom::edge(u, v));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Discrete convexity: the midpoints of the set with itself stay inside.
pub fn is_convex(space: &FiniteMetricSpace, s: &VertexSet) -> bool {
    midpoints_hat(space, s, s, Rational::new(1, 2)).is_subset(s)
}

/// Least fixpoint of `S -> S ∪ m(S,S)`. On a full hypercube the closure is
/// checked against the lattice interval spanned by the set.
pub fn convex_closure(space: &FiniteMetricSpace, s: &VertexSet) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut cur = s.clone();
    loop {
        let next = cur.union(&midpoints_hat(space, &cur, &cur, Rational::new(1, 2)));
        if next == cur {
            break;
        }
        cur = next;
    }
    if space.is_hypercube().is_some() {
        let meet = s.iter().map(|i| space.mask(i).unwrap()).fold(u64::MAX, |a, m| a & m);
        let join = s.iter().map(|i| space.mask(i).unwrap()).fold(0u64, |a, m| a | m);
        let interval = VertexSet::from_iter((0..space.n()).filter(|&i| {
            let m = space.mask(i).unwrap();
            meet & m == meet && m & join == m
        }));
        assert_eq!(cur, interval, "hypercube closure must be a lattice interval");
    }
    Ok(cur)
}

/// Is `s` exactly a lattice interval `[meet, join]` of the cube?
pub fn is_lattice_interval(space: &FiniteMetricSpace, s: &VertexSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let meet = s.iter().map(|i| space.mask(i).unwrap()).fold(u64::MAX, |a, m| a & m);
    let join = s.iter().map(|i| space.mask(i).unwrap()).fold(0u64, |a, m| a | m);
    let inside = (0..space.n())
        .filter(|&i| {
            let m = space.mask(i).unwrap();
            meet & m == meet && m & join == m
        })
        .count();
    inside == s.len()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct IteratedMidpointReport {
    pub a_convex: bool,
    pub b_convex: bool,
    /// every gamma in m(A,B) has 4 <= |gamma| <= 8
    pub half_levels_ok: bool,
    /// every gamma in m_{1/4}(A,B) has 2 <= |gamma| <= 6
    pub quarter_levels_ok: bool,
    pub phi_in_half: bool,
    pub zeta_in_iterated: bool,
    pub zeta_size: u32,
    pub zeta_outside_quarter: bool,
    /// m(m(A,B),B) strictly contains the quarter-midpoints measured from
    /// the B side (the three-quarter fraction from A).
    pub iterated_superset_of_quarter: bool,
}

/// The fixed 12-dimensional instance: two convex subcubes whose iterated
/// midpoints escape the quarter-midpoint set.
pub fn iterated_midpoint_counterexample() -> IteratedMidpointReport {
    let space = FiniteMetricSpace::hypercube(12);
    let a = VertexSet::from_iter((0..space.n()).filter(|&i| i as u64 & !0xF == 0));
    let b = VertexSet::from_iter((0..space.n()).filter(|&i| i as u64 & 0xFF == 0xFF));
    assert_eq!((a.len(), b.len()), (16, 16));
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);

    let m_ab = midpoints_hat(&space, &a, &b, half);
    let m_quarter = midpoints_hat(&space, &a, &b, quarter);
    let level = |i: usize| (i as u64).count_ones();
    let half_levels_ok = m_ab.iter().all(|i| (4..=8).contains(&level(i)));
    let quarter_levels_ok = m_quarter.iter().all(|i| (2..=6).contains(&level(i)));

    let phi: usize = 0xFC0; // {7,...,12}
    let zeta: usize = 0xF8F; // {1,2,3,4,8,...,12}
    let m_a_mab = midpoints_hat(&space, &a, &m_ab, half);
    let m_mab_b = midpoints_hat(&space, &m_ab, &b, half);
    let m_34 = midpoints_hat(&space, &a, &b, Rational::new(3, 4));

    IteratedMidpointReport {
        a_convex: is_convex(&space, &a),
        b_convex: is_convex(&space, &b),
        half_levels_ok,
        quarter_levels_ok,
        phi_in_half: m_ab.contains(phi),
        zeta_in_iterated: m_a_mab.contains(zeta),
        zeta_size: level(zeta),
        zeta_outside_quarter: !m_quarter.contains(zeta) && !m_ab.contains(zeta),
        iterated_superset_of_quarter: m_34.is_subset(&m_mab_b) && m_34.len() < m_mab_b.len(),
    }
}

/// Brunn-Minkowski curvature estimate for a pair of sets.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CurvatureEstimate {
    pub s_size: usize,
    pub t_size: usize,
    pub d_star: i64,
    pub midpoint_count: usize,
    /// `8 ln(|m|/sqrt(|S||T|)) / d_star^2`; `None` when the sets touch.
    pub k_hat: Option<f64>,
}

/// Minimum pairwise distance between two nonempty sets.
pub fn d_star(space: &FiniteMetricSpace, s: &VertexSet, t: &VertexSet) -> i64 {
    s.iter().flat_map(|a| t.iter().map(move |b| space.dist(a, b))).min().expect("nonempty sets")
}

pub fn bm_curvature(space: &FiniteMetricSpace, s: &VertexSet, t: &VertexSet, rho: Rational) -> CurvatureEstimate {
    let ds = d_star(space, s, t);
    let m = midpoints_hat(space, s, t, rho);
    let k_hat = if ds > 0 {
        let ratio = m.len() as f64 / ((s.len() * t.len()) as f64).sqrt();
        Some(8.0 * ratio.ln() / (ds * ds) as f64)
    } else {
        None
    };
    CurvatureEstimate { s_size: s.len(), t_size: t.len(), d_star: ds, midpoint_count: m.len(), k_hat }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BmScanReport {
    pub samples: usize,
    pub dimension: u32,
    pub threshold: f64,
    pub min_k_hat: f64,
    /// Samples with `k_hat` below `1/(2 dimension)`.
    pub violations: usize,
    pub seed: u64,
}

/// Randomized falsification scan of `k_hat >= 1/(2 dimension)` over seeded
/// `(S, T)` pairs with `d_* >= d_star_min`; sizes are uniform in
/// `1..=size_max`, rejection-sampled on the distance condition.
pub fn bm_scan(
    space: &FiniteMetricSpace,
    dimension: u32,
    samples: usize,
    size_max: usize,
    d_star_min: i64,
    seed: u64,
) -> BmScanReport {
    let threshold = 1.0 / (2.0 * dimension as f64);
    let words = space.n().div_ceil(64);
    let results: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15));
            let mut union = vec![0u64; words];
            loop {
                let (s, t) = sample_pair_vec(space, size_max, &mut rng);
                let ds = s
                    .iter()
                    .flat_map(|&a| t.iter().map(move |&b| space.dist(a, b)))
                    .min()
                    .unwrap();
                if ds < d_star_min {
                    continue;
                }
                union.iter_mut().for_each(|w| *w = 0);
                let half = Rational::new(1, 2);
                let ctx = MidpointCtx::new(space);
                for &a in &s {
                    for &b in &t {
                        ctx.pair_bits(space, a, b, half, &mut union);
                    }
                }
                let count: u32 = union.iter().map(|w| w.count_ones()).sum();
                let ratio = count as f64 / ((s.len() * t.len()) as f64).sqrt();
                return 8.0 * ratio.ln() / (ds * ds) as f64;
            }
        })
        .collect();
    let min_k_hat = results.iter().copied().fold(f64::INFINITY, f64::min);
    let violations = results.iter().filter(|&&k| k < threshold).count();
    BmScanReport { samples, dimension, threshold, min_k_hat, violations, seed }
}

fn sample_pair_vec(space: &FiniteMetricSpace, size_max: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, Vec<usize>) {
    let pick = |rng: &mut ChaCha8Rng| {
        let size = rng.gen_range(1..=size_max);
        let mut set = std::collections::BTreeSet::new();
        while set.len() < size {
            set.insert(rng.gen_range(0..space.n()));
        }
        set.into_iter().collect::<Vec<usize>>()
    };
    (pick(rng), pick(rng))
}

/// Coordinates of a point in an L0 product or Boolean-lattice space.
fn coords(space: &FiniteMetricSpace, i: usize) -> Vec<usize> {
    if let Some(bits) = space.mask_bits() {
        let m = space.mask(i).unwrap();
        return (0..bits).map(|b| (m >> b & 1) as usize).collect();
    }
    space.decode(i)
}

fn coords_to_index(space: &FiniteMetricSpace, c: &[usize]) -> usize {
    if space.mask_bits().is_some() {
        let m = c.iter().enumerate().fold(0u64, |acc, (b, &v)| acc | ((v as u64) << b));
        return mask_index(space, m).expect("coordinate vector addresses a point");
    }
    space.encode(c)
}

/// The coordinate-switching map behind the midpoint counting argument:
/// given a pair at distance `r` and a subset `pi` of its differing
/// coordinates, produce the two opposite mixtures.
pub fn phi_map(space: &FiniteMetricSpace, s: usize, t: usize, pi: &[bool]) -> (usize, usize) {
    let cs = coords(space, s);
    let ct = coords(space, t);
    let diff: Vec<usize> = (0..cs.len()).filter(|&j| cs[j] != ct[j]).collect();
    assert_eq!(diff.len(), pi.len());
    let mut m1 = cs.clone();
    let mut m2 = cs.clone();
    for (k, &j) in diff.iter().enumerate() {
        if pi[k] {
            m2[j] = ct[j]; // m1 keeps s here
        } else {
            m1[j] = ct[j]; // m2 keeps s here
        }
    }
    (coords_to_index(space, &m1), coords_to_index(space, &m2))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PhiReport {
    pub pairs_at_r: usize,
    pub classes: usize,
    /// images land at the two rounded layers from `s`
    pub layer_ok: bool,
    /// `d(m1, m2) = r` for every image
    pub image_distance_ok: bool,
    /// applying the map again with the same class recovers `(s, t)`
    pub inversion_ok: bool,
    /// for each fixed class the map is injective on pairs
    pub injective_per_class: bool,
    /// every image lies in the rho-midpoint set of `(S, T)`
    pub images_in_midpoints: bool,
}

/// Materializes the coordinate-switching map on `(S,T)_r` against every
/// subset class of size `floor(rho r)` or `ceil((1-rho) r)` and verifies
/// its stated properties.
pub fn phi_injection_check(
    space: &FiniteMetricSpace,
    s: &VertexSet,
    t: &VertexSet,
    rho: Rational,
    r: i64,
) -> PhiReport {
    let pairs: Vec<(usize, usize)> = s
        .iter()
        .flat_map(|a| t.iter().map(move |b| (a, b)))
        .filter(|&(a, b)| space.dist(a, b) == r)
        .collect();
    let l1 = floor_ratio(rho, r);
    let l2 = ceil_ratio(Rational::from_integer(1) - rho, r);
    let classes: Vec<Vec<bool>> = subset_classes(r as usize, &[l1 as usize, l2 as usize]);
    let one = Rational::from_integer(1);
    let m_st = midpoints_hat(space, s, t, rho).union(&midpoints_hat(space, t, s, one - rho));

    let mut layer_ok = true;
    let mut image_distance_ok = true;
    let mut inversion_ok = true;
    let mut injective_per_class = true;
    let mut images_in_midpoints = true;
    for pi in &classes {
        let mut seen = std::collections::HashMap::new();
        for &(a, b) in &pairs {
            let (m1, m2) = phi_map(space, a, b, pi);
            let (da1, da2) = (space.dist(a, m1), space.dist(a, m2));
            layer_ok &= (da1 == l1 || da1 == l2) && (da2 == l1 || da2 == l2) && da1 + da2 == r;
            image_distance_ok &= space.dist(m1, m2) == r;
            let (back1, back2) = phi_map(space, m1, m2, pi);
            inversion_ok &= (back1, back2) == (a, b);
            if let Some(prev) = seen.insert((m1, m2), (a, b)) {
                injective_per_class &= prev == (a, b);
            }
            images_in_midpoints &= m_st.contains(m1) && m_st.contains(m2);
        }
    }
    PhiReport {
        pairs_at_r: pairs.len(),
        classes: classes.len(),
        layer_ok,
        image_distance_ok,
        inversion_ok,
        injective_per_class,
        images_in_midpoints,
    }
}

fn subset_classes(r: usize, sizes: &[usize]) -> Vec<Vec<bool>> {
    let mut sizes: Vec<usize> = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = Vec::new();
    for &k in &sizes {
        let idx: Vec<u64> = (0..r as u64).collect();
        let mut pick = vec![0usize; k];
        subsets_rec(&idx, 0, 0, &mut pick, &mut |chosen: &[usize]| {
            let mut v = vec![false; r];
            for &c in chosen {
                v[c] = true;
            }
            out.push(v);
        });
    }
    out
}

/// The midpoint-atom count `|C_R| = |m(0, {1..R})|` in a hypercube of
/// dimension at least `R`: a binomial for even `R`, an edge count for odd.
pub fn c_r_count(r: u32) -> f64 {
    if r == 0 {
        return 1.0;
    }
    if r % 2 == 0 {
        binomial(r as u64, (r / 2) as u64)
    } else {
        binomial(r as u64, ((r - 1) / 2) as u64) * ((r + 1) / 2) as f64
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Global injectivity of the tilde-variant switching map across the
/// support pairs of a transportation at constant distance `r`: distinct
/// support pairs never produce the same image under any class.
pub fn phi_tilde_injection_check(space: &FiniteMetricSpace, pairs: &[(usize, usize)], r: i64) -> bool {
    assert!(pairs.iter().all(|&(a, b)| space.dist(a, b) == r));
    let mut seen: std::collections::HashMap<(usize, usize, usize, usize), (usize, usize)> =
        std::collections::HashMap::new();
    if r % 2 == 0 {
        let half = (r / 2) as usize;
        let classes = subset_classes(r as usize, &[half]);
        for &(a, b) in pairs {
            for pi in &classes {
                let (m1, m2) = phi_map(space, a, b, pi);
                if let Some(prev) = seen.insert((m1, m2, usize::MAX, usize::MAX), (a, b)) {
                    if prev != (a, b) {
                        return false;
                    }
                }
            }
        }
    } else {
        // odd r: classes are nested pairs (x, y) with |x| = (r-1)/2 and
        // |y| = |x| + 1; the image is a pair of middle edges
        let lo = ((r - 1) / 2) as usize;
        let lo_classes = subset_classes(r as usize, &[lo]);
        for &(a, b) in pairs {
            for x in &lo_classes {
                for extra in 0..r as usize {
                    if x[extra] {
                        continue;
                    }
                    let mut y = x.clone();
                    y[extra] = true;
                    let comp_y: Vec<bool> = y.iter().map(|&v| !v).collect();
                    let comp_x: Vec<bool> = x.iter().map(|&v| !v).collect();
                    let (e1a, _) = phi_map(space, a, b, x);
                    let (e1b, _) = phi_map(space, a, b, &y);
                    let (e2a, _) = phi_map(space, a, b, &comp_y);
                    let (e2b, _) = phi_map(space, a, b, &comp_x);
                    if let Some(prev) = seen.insert((e1a, e1b, e2a, e2b), (a, b)) {
                        if prev != (a, b) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn pair_midpoints_h2() {
        let h2 = FiniteMetricSpace::hypercube(2);
        let m = midpoints_hat_pair(&h2, 0b00, 0b11, half());
        assert_eq!(m, VertexSet::from_iter([0b01, 0b10]));
    }

    #[test]
    fn generic_path_matches_mask_path() {
        let h4 = FiniteMetricSpace::hypercube(4);
        let k2 = std::sync::Arc::new(FiniteMetricSpace::from_graph(crate::space::family::complete(2)));
        let prod = FiniteMetricSpace::product(
            vec![k2.clone(), k2.clone(), k2.clone(), k2.clone()],
            crate::space::ProductMetric::L0,
        )
        .unwrap();
        // product coordinates are most-significant-first
        let relabel =
            |i: usize| -> usize { (0..4).fold(0, |acc, b| if i >> b & 1 == 1 { acc | 1 << (3 - b) } else { acc }) };
        for (a, b) in [(0usize, 15usize), (3, 12), (5, 9)] {
            let fast = midpoints_hat_pair(&h4, a, b, half());
            let slow = midpoints_hat_pair(&prod, relabel(a), relabel(b), half());
            let slow_back = VertexSet::from_iter(slow.iter().map(|i| {
                let c = prod.decode(i);
                c.iter().enumerate().fold(0usize, |acc, (j, &v)| acc | (v << j))
            }));
            assert_eq!(fast, slow_back);
        }
    }

    #[test]
    fn rho_quarter_midpoints() {
        // distance 4 at rho = 1/4: the single layer 1 from the source
        let h4 = FiniteMetricSpace::hypercube(4);
        let m = midpoints_hat_pair(&h4, 0b0000, 0b1111, Rational::new(1, 4));
        let levels: std::collections::BTreeSet<u32> = m.iter().map(|i| (i as u64).count_ones()).collect();
        assert_eq!(levels.into_iter().collect::<Vec<_>>(), vec![1]);
        // distance 5: both roundings of 5/4
        let h5 = FiniteMetricSpace::hypercube(5);
        let m = midpoints_hat_pair(&h5, 0b00000, 0b11111, Rational::new(1, 4));
        let levels: std::collections::BTreeSet<u32> = m.iter().map(|i| (i as u64).count_ones()).collect();
        assert_eq!(levels.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn rho_symmetry() {
        let h5 = FiniteMetricSpace::hypercube(5);
        let rho = Rational::new(1, 3);
        let one = Rational::from_integer(1);
        for a in 0..32usize {
            for b in 0..32usize {
                let lhs = midpoints_hat_pair(&h5, a, b, rho);
                let rhs = midpoints_hat_pair(&h5, b, a, one - rho);
                assert_eq!(lhs, rhs, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn midpoints_all_on_geodesics() {
        let h5 = FiniteMetricSpace::hypercube(5);
        for a in [0usize, 7, 19] {
            for b in [31usize, 5, 12] {
                let d = h5.dist(a, b);
                for u in midpoints_hat_pair(&h5, a, b, half()).iter() {
                    assert_eq!(h5.dist(a, u) + h5.dist(u, b), d);
                }
            }
        }
    }

    #[test]
    fn tilde_midpoints() {
        let k2 = FiniteMetricSpace::from_graph(crate::space::family::complete(2));
        assert_eq!(midpoints_tilde(&k2, 0, 1).unwrap(), vec![MidpointAtom::edge(0, 1)]);
        let h3 = FiniteMetricSpace::hypercube(3);
        assert_eq!(midpoints_tilde(&h3, 0, 0).unwrap(), vec![MidpointAtom::Point(0)]);
        let atoms = midpoints_tilde(&h3, 0b000, 0b111).unwrap();
        assert_eq!(atoms.len(), 6);
        for a in &atoms {
            match a {
                MidpointAtom::Edge(u, v) => {
                    assert_eq!((*u as u64).count_ones(), 1);
                    assert_eq!((*v as u64).count_ones(), 2);
                }
                _ => panic!("odd distance must give edges"),
            }
        }
        // no edge atoms on a metric with no unit distances
        let se = FiniteMetricSpace::scaled_edge(3);
        assert!(matches!(midpoints_tilde(&se, 0, 1), Err(Error::NoEdgeAtoms)));
    }

    #[test]
    fn convexity_examples() {
        let h3 = FiniteMetricSpace::hypercube(3);
        assert!(is_convex(&h3, &VertexSet::from_iter([5])));
        // subcube {gamma : {1} inside gamma inside {1,2}}
        let sub = VertexSet::from_iter([0b001, 0b011]);
        assert!(is_convex(&h3, &sub));
        // radius-1 ball around the empty set is not convex
        let ball1 = VertexSet::from_iter([0b000, 0b001, 0b010, 0b100]);
        assert!(!is_convex(&h3, &ball1));
    }

    #[test]
    fn closure_examples() {
        let h3 = FiniteMetricSpace::hypercube(3);
        let c = convex_closure(&h3, &VertexSet::from_iter([0b001, 0b010])).unwrap();
        assert_eq!(c, VertexSet::from_iter([0b000, 0b001, 0b010, 0b011]));
        // closure of a nontrivial ball is everything
        for d in [3u32, 4, 5] {
            let hd = FiniteMetricSpace::hypercube(d);
            let mut ball1 = VertexSet::from_iter([0]);
            for b in 0..d {
                ball1.insert(1 << b);
            }
            let c = convex_closure(&hd, &ball1).unwrap();
            assert_eq!(c.len(), hd.n());
        }
    }

    #[test]
    fn closure_idempotent_and_contains_endpoints() {
        let h6 = FiniteMetricSpace::hypercube(6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = VertexSet::from_iter((0..3).map(|_| rng.gen_range(0..64)));
            let b = VertexSet::from_iter((0..3).map(|_| rng.gen_range(0..64)));
            let m = midpoints_hat(&h6, &a, &b, half());
            let c = convex_closure(&h6, &m).unwrap();
            assert!(is_convex(&h6, &c));
            assert_eq!(convex_closure(&h6, &c).unwrap(), c);
            for v in a.iter().chain(b.iter()) {
                assert!(c.contains(v), "endpoints must lie in the closure of the midpoints");
            }
        }
    }

    #[test]
    fn iterated_counterexample() {
        let rep = iterated_midpoint_counterexample();
        assert!(rep.a_convex && rep.b_convex);
        assert!(rep.half_levels_ok && rep.quarter_levels_ok);
        assert!(rep.phi_in_half);
        assert!(rep.zeta_in_iterated);
        assert_eq!(rep.zeta_size, 9);
        assert!(rep.zeta_outside_quarter);
        assert!(rep.iterated_superset_of_quarter);
    }

    #[test]
    fn singleton_curvature() {
        let h6 = FiniteMetricSpace::hypercube(6);
        for r in [2i64, 4, 6] {
            let b = (0..r).fold(0usize, |acc, i| acc | 1 << i);
            let est = bm_curvature(&h6, &VertexSet::from_iter([0]), &VertexSet::from_iter([b]), half());
            let want = binomial(r as u64, (r / 2) as u64) as usize;
            assert_eq!(est.midpoint_count, want);
            assert_eq!(est.d_star, r);
        }
        // touching sets have undefined curvature
        let est = bm_curvature(&h6, &VertexSet::from_iter([0]), &VertexSet::from_iter([0]), half());
        assert!(est.k_hat.is_none());
    }

    #[test]
    fn small_bm_scan_h6() {
        let h6 = FiniteMetricSpace::hypercube(6);
        let rep = bm_scan(&h6, 6, 200, 8, 2, 99);
        assert_eq!(rep.violations, 0, "min k_hat = {}", rep.min_k_hat);
        assert!(rep.min_k_hat >= 1.0 / 12.0);
    }

    #[test]
    fn c_r_counts() {
        assert_eq!(c_r_count(2) as u64, 2);
        assert_eq!(c_r_count(3) as u64, 6);
        assert_eq!(c_r_count(4) as u64, 6);
        // cross-check the odd case against atom enumeration in H_5
        let h5 = FiniteMetricSpace::hypercube(5);
        let atoms = midpoints_tilde(&h5, 0, 0b11111).unwrap();
        assert_eq!(atoms.len() as u64, c_r_count(5) as u64);
    }

    #[test]
    fn phi_checks_on_h6() {
        let h6 = FiniteMetricSpace::hypercube(6);
        let s = VertexSet::from_iter([0b000000, 0b000011]);
        let t = VertexSet::from_iter([0b111100, 0b111111]);
        for r in [4i64, 6] {
            let rep = phi_injection_check(&h6, &s, &t, half(), r);
            if rep.pairs_at_r == 0 {
                continue;
            }
            assert!(rep.layer_ok);
            assert!(rep.image_distance_ok);
            assert!(rep.inversion_ok);
            assert!(rep.injective_per_class);
            assert!(rep.images_in_midpoints);
        }
    }

    #[test]
    fn phi_tilde_injectivity_on_constant_distance_support() {
        let h6 = FiniteMetricSpace::hypercube(6);
        let even_pairs = vec![(0b000001usize, 0b000010usize), (0b000100, 0b001000)];
        assert!(phi_tilde_injection_check(&h6, &even_pairs, 2));
        let odd_pairs: Vec<(usize, usize)> = vec![(0b000000, 0b000111), (0b111000, 0b001111)]
            .into_iter()
            .filter(|&(a, b)| h6.dist(a, b) == 3)
            .collect();
        assert!(!odd_pairs.is_empty());
        assert!(phi_tilde_injection_check(&h6, &odd_pairs, 3));
    }
}
