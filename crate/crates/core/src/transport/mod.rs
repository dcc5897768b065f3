//! Exact optimal transport on finite metric spaces: Wasserstein costs,
//! cyclical monotonicity, maximum-entropy optimal plans, transport
//! partitions, distance interpolation and entropy.
//!
//! Plan masses and marginals are big rationals; the simplex phase is exact.
//! Maximum-entropy plans come out of floating-point proportional fitting
//! and are stored as exact dyadic rationals of their float values.

pub mod convexity;
mod lp;

pub use convexity::{
    displacement_convexity_slack, strong_convexity_characterization, weak_curvature_bounds,
    ConvexityFlavor, StrongConvexityReport, WeakCurvatureReport,
};
pub use lp::enumerate_basic_plans;

/// Exact minimum-cost transportation for arbitrary rational costs; returns
/// the optimal mass matrix.
pub fn solve_transport_costs(
    costs: &[Vec<BigRational>],
    a: &[BigRational],
    b: &[BigRational],
) -> Vec<Vec<BigRational>> {
    lp::transport_simplex(costs, a, b).0
}

use crate::cube::{midpoints_tilde, MidpointAtom};
use crate::space::FiniteMetricSpace;
use crate::{BigRational, Error, Rational, Result};
use lp::{br_int, br_zero};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Probability mass over midpoint atoms (points, or edges produced by
/// odd-distance interpolation).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    atoms: Vec<(MidpointAtom, BigRational)>,
}

impl Distribution {
    pub fn new(masses: impl IntoIterator<Item = (MidpointAtom, BigRational)>) -> Result<Distribution> {
        let mut map: BTreeMap<MidpointAtom, BigRational> = BTreeMap::new();
        for (atom, m) in masses {
            if m.is_negative() {
                return Err(Error::BadInput("negative mass".into()));
            }
            if !m.is_zero() {
                *map.entry(atom).or_insert_with(br_zero) += m;
            }
        }
        if map.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Distribution { atoms: map.into_iter().collect() })
    }

    pub fn from_points(masses: impl IntoIterator<Item = (usize, BigRational)>) -> Result<Distribution> {
        Distribution::new(masses.into_iter().map(|(p, m)| (MidpointAtom::Point(p), m)))
    }

    pub fn uniform_points(points: &[usize]) -> Distribution {
        let w = BigRational::one() / br_int(points.len() as i64);
        Distribution::from_points(points.iter().map(|&p| (p, w.clone()))).expect("nonempty support")
    }

    pub fn point_mass(p: usize) -> Distribution {
        Distribution::uniform_points(&[p])
    }

    pub fn atoms(&self) -> &[(MidpointAtom, BigRational)] {
        &self.atoms
    }

    pub fn total(&self) -> BigRational {
        self.atoms.iter().map(|(_, m)| m.clone()).sum()
    }

    pub fn mass_of(&self, atom: &MidpointAtom) -> BigRational {
        self.atoms
            .iter()
            .find(|(a, _)| a == atom)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(br_zero)
    }

    /// Point support, failing if any atom is an edge.
    pub fn point_support(&self) -> Result<Vec<(usize, BigRational)>> {
        self.atoms
            .iter()
            .map(|(a, m)| match a {
                MidpointAtom::Point(p) => Ok((*p, m.clone())),
                MidpointAtom::Edge(..) => Err(Error::BadInput("edge atom where a point was required".into())),
            })
            .collect()
    }

    /// Shannon entropy in nats; each atom (point or edge) is one outcome.
    pub fn entropy(&self) -> f64 {
        entropy_of(self.atoms.iter().map(|(_, m)| m.to_f64().unwrap()))
    }
}

pub(crate) fn entropy_of(masses: impl Iterator<Item = f64>) -> f64 {
    masses.filter(|&p| p > 0.0).map(|p| -p * p.ln()).sum()
}

/// Shannon entropy of a distribution, in nats.
pub fn entropy(dist: &Distribution) -> f64 {
    dist.entropy()
}

/// A nonnegative coupling with prescribed marginals, on explicit supports.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub mass: Vec<Vec<BigRational>>,
}

impl TransportPlan {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>, mass: Vec<Vec<BigRational>>) -> TransportPlan {
        assert_eq!(mass.len(), rows.len());
        assert!(mass.iter().all(|r| r.len() == cols.len()));
        TransportPlan { rows, cols, mass }
    }

    /// The identity plan between two equal distributions.
    pub fn identity(mu: &Distribution) -> Result<TransportPlan> {
        let support = mu.point_support()?;
        let k = support.len();
        let mut mass = vec![vec![br_zero(); k]; k];
        for (i, (_, m)) in support.iter().enumerate() {
            mass[i][i] = m.clone();
        }
        let points: Vec<usize> = support.iter().map(|&(p, _)| p).collect();
        Ok(TransportPlan::new(points.clone(), points, mass))
    }

    /// The product (independent) coupling.
    pub fn product(mu_a: &Distribution, mu_b: &Distribution) -> Result<TransportPlan> {
        let sa = mu_a.point_support()?;
        let sb = mu_b.point_support()?;
        let mass = sa
            .iter()
            .map(|(_, ma)| sb.iter().map(|(_, mb)| ma.clone() * mb).collect())
            .collect();
        Ok(TransportPlan::new(
            sa.iter().map(|&(p, _)| p).collect(),
            sb.iter().map(|&(p, _)| p).collect(),
            mass,
        ))
    }

    pub fn row_marginal(&self) -> Distribution {
        Distribution::from_points(
            self.rows.iter().enumerate().map(|(i, &p)| (p, self.mass[i].iter().sum())),
        )
        .expect("plan has positive mass")
    }

    pub fn col_marginal(&self) -> Distribution {
        Distribution::from_points(self.cols.iter().enumerate().map(|(j, &p)| {
            (p, (0..self.rows.len()).map(|i| self.mass[i][j].clone()).sum())
        }))
        .expect("plan has positive mass")
    }

    /// Positive-mass cells as `(source point, target point, mass)`.
    pub fn support_pairs(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for (i, &a) in self.rows.iter().enumerate() {
            for (j, &b) in self.cols.iter().enumerate() {
                if !self.mass[i][j].is_zero() {
                    out.push((a, b, self.mass[i][j].clone()));
                }
            }
        }
        out
    }

    /// Exact transport cost under `d^order`.
    pub fn cost(&self, space: &FiniteMetricSpace, order: u32) -> BigRational {
        self.support_pairs()
            .into_iter()
            .map(|(a, b, m)| m * br_int(space.dist(a, b).pow(order)))
            .sum()
    }

    /// Entropy of the plan itself as a measure on pairs.
    pub fn entropy(&self) -> f64 {
        entropy_of(self.mass.iter().flatten().map(|m| m.to_f64().unwrap()))
    }

    /// Exact marginal equality against two distributions.
    pub fn marginals_match(&self, mu_a: &Distribution, mu_b: &Distribution) -> bool {
        let row = self.row_marginal();
        let col = self.col_marginal();
        row.atoms() == mu_a.atoms() && col.atoms() == mu_b.atoms()
    }
}

/// Exact optimal transport under `d^order`, `order` in `{1, 2}`. Returns
/// the optimal cost and a basic optimal plan.
pub fn wasserstein(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
    order: u32,
) -> Result<(BigRational, TransportPlan)> {
    let (plan, _, _) = solve_lp(space, mu_a, mu_b, order)?;
    let cost = plan.cost(space, order);
    Ok((cost, plan))
}

fn solve_lp(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
    order: u32,
) -> Result<(TransportPlan, Vec<BigRational>, Vec<BigRational>)> {
    assert!(order == 1 || order == 2);
    let sa = mu_a.point_support()?;
    let sb = mu_b.point_support()?;
    if sa.iter().chain(&sb).any(|&(p, _)| p >= space.n()) {
        return Err(Error::MismatchedSpaces);
    }
    let costs: Vec<Vec<BigRational>> = sa
        .iter()
        .map(|&(a, _)| sb.iter().map(|&(b, _)| br_int(space.dist(a, b).pow(order))).collect())
        .collect();
    let a: Vec<BigRational> = sa.iter().map(|(_, m)| m.clone()).collect();
    let b: Vec<BigRational> = sb.iter().map(|(_, m)| m.clone()).collect();
    let (x, u, v) = lp::transport_simplex(&costs, &a, &b);
    let plan = TransportPlan::new(
        sa.iter().map(|&(p, _)| p).collect(),
        sb.iter().map(|&(p, _)| p).collect(),
        x,
    );
    Ok((plan, u, v))
}

/// Checks cyclical monotonicity of the squared-distance cost over all
/// sequences of up to `cap` distinct support pairs; returns the first
/// violating sequence if any.
pub fn is_cyclically_monotone(
    space: &FiniteMetricSpace,
    plan: &TransportPlan,
    cap: usize,
) -> (bool, Option<Vec<(usize, usize)>>) {
    let pairs: Vec<(usize, usize)> =
        plan.support_pairs().into_iter().map(|(a, b, _)| (a, b)).collect();
    let d2 = |a: usize, b: usize| br_int(space.dist(a, b).pow(2));
    let maxlen = cap.min(pairs.len());
    // sequences starting at every pair; the start index is the smallest in
    // the sequence, which kills rotations of the same cycle
    let mut chosen: Vec<usize> = Vec::new();
    let mut violation: Option<Vec<(usize, usize)>> = None;
    fn rec(
        pairs: &[(usize, usize)],
        d2: &dyn Fn(usize, usize) -> BigRational,
        chosen: &mut Vec<usize>,
        maxlen: usize,
        violation: &mut Option<Vec<(usize, usize)>>,
    ) {
        if violation.is_some() {
            return;
        }
        let k = chosen.len();
        if k >= 2 {
            // closing cost: direct sum vs shifted sum
            let direct: BigRational = chosen.iter().map(|&i| d2(pairs[i].0, pairs[i].1)).sum();
            let mut shifted = d2(pairs[chosen[0]].0, pairs[chosen[k - 1]].1);
            for w in 0..k - 1 {
                shifted += d2(pairs[chosen[w + 1]].0, pairs[chosen[w]].1);
            }
            if direct > shifted {
                *violation = Some(chosen.iter().map(|&i| pairs[i]).collect());
                return;
            }
        }
        if k == maxlen {
            return;
        }
        let start = chosen.first().map_or(0, |&f| f + 1);
        for i in start..pairs.len() {
            if chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            rec(pairs, d2, chosen, maxlen, violation);
            chosen.pop();
        }
    }
    rec(&pairs, &d2, &mut chosen, maxlen, &mut violation);
    (violation.is_none(), violation)
}

/// Diagnostics of a maximum-entropy plan.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MaxEntropyInfo {
    pub marginal_residual: f64,
    pub cost_gap: f64,
    pub face_cells: usize,
}

/// The entropy maximizer among optimal (order-2) transportations.
///
/// The optimal face is identified exactly by zero reduced costs of one
/// optimal dual; entropy is then maximized over the face by proportional
/// fitting, and the result is stored as exact dyadic rationals.
pub fn max_entropy_optimal_plan(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
) -> Result<(TransportPlan, MaxEntropyInfo)> {
    let (base, u, v) = solve_lp(space, mu_a, mu_b, 2)?;
    let optimum = base.cost(space, 2);
    let costs: Vec<Vec<BigRational>> = base
        .rows
        .iter()
        .map(|&a| base.cols.iter().map(|&b| br_int(space.dist(a, b).pow(2))).collect())
        .collect();
    let mut allowed = lp::optimal_face(&costs, &u, &v);
    lp::prune_face_to_supportable(&mut allowed, &base.mass);
    let af: Vec<f64> = mu_a.point_support()?.iter().map(|(_, m)| m.to_f64().unwrap()).collect();
    let bf: Vec<f64> = mu_b.point_support()?.iter().map(|(_, m)| m.to_f64().unwrap()).collect();
    let xf = lp::ipf(&allowed, &af, &bf, 1e-12, 200_000)?;
    let mass: Vec<Vec<BigRational>> = xf
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| BigRational::from_float(c).unwrap_or_else(br_zero))
                .collect()
        })
        .collect();
    let plan = TransportPlan::new(base.rows.clone(), base.cols.clone(), mass);
    let cost_gap = (plan.cost(space, 2) - &optimum).to_f64().unwrap().abs();
    if cost_gap > 1e-9 {
        return Err(Error::IpfDiverged(cost_gap));
    }
    let resid = marginal_residual(&plan, mu_a, mu_b);
    if resid > 1e-10 {
        return Err(Error::IpfDiverged(resid));
    }
    let face_cells = allowed.iter().flatten().filter(|&&c| c).count();
    Ok((plan, MaxEntropyInfo { marginal_residual: resid, cost_gap, face_cells }))
}

fn marginal_residual(plan: &TransportPlan, mu_a: &Distribution, mu_b: &Distribution) -> f64 {
    let mut worst: f64 = 0.0;
    let row = plan.row_marginal();
    let col = plan.col_marginal();
    for (marg, mu) in [(&row, mu_a), (&col, mu_b)] {
        for (atom, m) in marg.atoms() {
            let want = mu.mass_of(atom).to_f64().unwrap();
            worst = worst.max((m.to_f64().unwrap() - want).abs());
        }
    }
    worst
}

/// Product structure of a max-entropy plan at every shared midpoint atom:
/// within the pairs through an atom, masses factor as `tau_X(a) tau_X(b)`.
pub fn midpoint_product_structure(space: &FiniteMetricSpace, plan: &TransportPlan, tol: f64) -> bool {
    let pairs = plan.support_pairs();
    let mut by_atom: HashMap<MidpointAtom, Vec<usize>> = HashMap::new();
    for (idx, &(a, b, _)) in pairs.iter().enumerate() {
        if let Ok(atoms) = midpoints_tilde(space, a, b) {
            for atom in atoms {
                by_atom.entry(atom).or_default().push(idx);
            }
        }
    }
    for idxs in by_atom.values() {
        let rows: Vec<usize> = idxs.iter().map(|&i| pairs[i].0).collect();
        let cols: Vec<usize> = idxs.iter().map(|&i| pairs[i].1).collect();
        let lookup = |a: usize, b: usize| -> Option<f64> {
            pairs
                .iter()
                .find(|&&(x, y, _)| x == a && y == b)
                .map(|(_, _, m)| m.to_f64().unwrap())
        };
        // cross-ratio test on every quadruple present in the class
        for (k1, &i1) in idxs.iter().enumerate() {
            for &_i2 in &idxs[k1 + 1..] {
                let (a1, b1, _) = pairs[i1];
                for (&a2, &b2) in rows.iter().zip(&cols) {
                    if let (Some(x11), Some(x12), Some(x21), Some(x22)) =
                        (lookup(a1, b1), lookup(a1, b2), lookup(a2, b1), lookup(a2, b2))
                    {
                        if (x11 * x22 - x12 * x21).abs() > tol {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// One class of a transport partition.
#[derive(Debug, Clone)]
pub struct PlanComponent {
    pub eta: BigRational,
    pub plan: TransportPlan,
    /// Common support distance of the class, when constant.
    pub distance: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct PartitionResult {
    pub components: Vec<PlanComponent>,
    /// Component id per support pair (in `support_pairs` order).
    pub pair_component: Vec<usize>,
}

/// Splits a plan into the connected classes of the relation "tilde-midpoint
/// sets intersect" on its support pairs.
pub fn partition(space: &FiniteMetricSpace, plan: &TransportPlan) -> Result<PartitionResult> {
    let pairs = plan.support_pairs();
    let k = pairs.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut atom_owner: HashMap<MidpointAtom, usize> = HashMap::new();
    for (idx, &(a, b, _)) in pairs.iter().enumerate() {
        for atom in midpoints_tilde(space, a, b)? {
            match atom_owner.get(&atom) {
                Some(&first) => {
                    let (ra, rb) = (find(&mut parent, first), find(&mut parent, idx));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
                None => {
                    atom_owner.insert(atom, idx);
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut pair_component = vec![0usize; k];
    for idx in 0..k {
        let r = find(&mut parent, idx);
        let cid = match roots.iter().position(|&x| x == r) {
            Some(c) => c,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        pair_component[idx] = cid;
    }
    let mut components = Vec::new();
    for cid in 0..roots.len() {
        let members: Vec<&(usize, usize, BigRational)> =
            pairs.iter().enumerate().filter(|(i, _)| pair_component[*i] == cid).map(|(_, p)| p).collect();
        let eta: BigRational = members.iter().map(|(_, _, m)| m.clone()).sum();
        let mut rows: Vec<usize> = members.iter().map(|&&(a, _, _)| a).collect();
        let mut cols: Vec<usize> = members.iter().map(|&&(_, b, _)| b).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        let mut mass = vec![vec![br_zero(); cols.len()]; rows.len()];
        for &&(a, b, ref m) in &members {
            let i = rows.iter().position(|&r| r == a).unwrap();
            let j = cols.iter().position(|&c| c == b).unwrap();
            mass[i][j] = m.clone() / &eta;
        }
        let dists: HashSet<i64> = members.iter().map(|&&(a, b, _)| space.dist(a, b)).collect();
        let distance = if dists.len() == 1 { dists.into_iter().next() } else { None };
        components.push(PlanComponent { eta, plan: TransportPlan::new(rows, cols, mass), distance });
    }
    Ok(PartitionResult { components, pair_component })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LargeSupportReport {
    pub d: i64,
    pub constant_on_support: bool,
    pub cross_distances_at_least_d: bool,
    pub w1_equals_d: bool,
    pub w2_equals_d2: bool,
}

/// For a partitionless optimal plan: the support distance is constant,
/// every cross pair is at least that far, and both Wasserstein costs are
/// powers of it.
pub fn everybody_is_large_check(
    space: &FiniteMetricSpace,
    plan: &TransportPlan,
) -> Result<LargeSupportReport> {
    let part = partition(space, plan)?;
    if part.components.len() != 1 {
        return Err(Error::HasPartition(part.components.len()));
    }
    let pairs = plan.support_pairs();
    let d = space.dist(pairs[0].0, pairs[0].1);
    let constant_on_support = pairs.iter().all(|&(a, b, _)| space.dist(a, b) == d);
    let mu_a = plan.row_marginal();
    let mu_b = plan.col_marginal();
    let sa = mu_a.point_support()?;
    let sb = mu_b.point_support()?;
    let cross_distances_at_least_d =
        sa.iter().all(|&(a, _)| sb.iter().all(|&(b, _)| space.dist(a, b) >= d));
    let (w1, _) = wasserstein(space, &mu_a, &mu_b, 1)?;
    let (w2, _) = wasserstein(space, &mu_a, &mu_b, 2)?;
    // max-entropy plans carry dyadic masses, so the cost identities are
    // checked to fitting precision rather than bit-exactly
    let close = |x: &BigRational, want: i64| (x.clone() - br_int(want)).to_f64().unwrap().abs() < 1e-9;
    Ok(LargeSupportReport {
        d,
        constant_on_support,
        cross_distances_at_least_d,
        w1_equals_d: close(&w1, d),
        w2_equals_d2: close(&w2, d * d),
    })
}

/// Distance interpolation of a plan at time `t` with the uniform geodesic
/// measure. At `t = 1/2` odd-distance pairs put their mass on the middle
/// edges; otherwise mass splits evenly between the two rounded layers and,
/// within a layer, proportionally to the number of geodesics through each
/// point.
pub fn interpolate(space: &FiniteMetricSpace, plan: &TransportPlan, t: Rational) -> Result<Distribution> {
    if t < Rational::from_integer(0) || t > Rational::from_integer(1) {
        return Err(Error::Domain(format!("t = {t} outside [0,1]")));
    }
    let half = Rational::new(1, 2);
    let mut acc: BTreeMap<MidpointAtom, BigRational> = BTreeMap::new();
    let mut add = |atom: MidpointAtom, m: BigRational| {
        *acc.entry(atom).or_insert_with(br_zero) += m;
    };
    for (a, b, mass) in plan.support_pairs() {
        let d = space.dist(a, b);
        if d == 0 {
            add(MidpointAtom::Point(a), mass);
            continue;
        }
        let geo = GeodesicCounts::new(space, a, b)?;
        if t == half && d % 2 == 1 {
            // mass over middle edges, weighted by path counts
            let l = (d - 1) / 2;
            for &u in &geo.layer(l) {
                for &v in &geo.layer(l + 1) {
                    if space.dist(u, v) == 1 {
                        let w = geo.through_edge(u, v);
                        if !w.is_zero() {
                            add(MidpointAtom::edge(u, v), mass.clone() * w);
                        }
                    }
                }
            }
            continue;
        }
        let pos = t * Rational::from_integer(d);
        let lo = pos.floor().to_integer();
        let hi = pos.ceil().to_integer();
        let layers: Vec<i64> = if lo == hi { vec![lo] } else { vec![lo, hi] };
        let frac = BigRational::one() / br_int(layers.len() as i64);
        for l in layers {
            for &u in &geo.layer(l) {
                let w = geo.through_point(u);
                if !w.is_zero() {
                    add(MidpointAtom::Point(u), mass.clone() * w * &frac);
                }
            }
        }
    }
    Distribution::new(acc)
}

/// Geodesic counting between a fixed pair via unit-step layer dynamics.
struct GeodesicCounts {
    points: Vec<usize>,
    layer_of: HashMap<usize, i64>,
    forward: HashMap<usize, u128>,
    backward: HashMap<usize, u128>,
    total: u128,
}

impl GeodesicCounts {
    fn new(space: &FiniteMetricSpace, a: usize, b: usize) -> Result<GeodesicCounts> {
        let d = space.dist(a, b);
        let points: Vec<usize> =
            (0..space.n()).filter(|&u| space.dist(a, u) + space.dist(u, b) == d).collect();
        let layer_of: HashMap<usize, i64> = points.iter().map(|&u| (u, space.dist(a, u))).collect();
        let mut forward: HashMap<usize, u128> = HashMap::new();
        forward.insert(a, 1);
        for l in 1..=d {
            for &u in points.iter().filter(|&&u| layer_of[&u] == l) {
                let c: u128 = points
                    .iter()
                    .filter(|&&w| layer_of[&w] == l - 1 && space.dist(w, u) == 1)
                    .map(|w| forward.get(w).copied().unwrap_or(0))
                    .sum();
                forward.insert(u, c);
            }
        }
        let mut backward: HashMap<usize, u128> = HashMap::new();
        backward.insert(b, 1);
        for l in (0..d).rev() {
            for &u in points.iter().filter(|&&u| layer_of[&u] == l) {
                let c: u128 = points
                    .iter()
                    .filter(|&&w| layer_of[&w] == l + 1 && space.dist(w, u) == 1)
                    .map(|w| backward.get(w).copied().unwrap_or(0))
                    .sum();
                backward.insert(u, c);
            }
        }
        let total = forward.get(&b).copied().unwrap_or(0);
        if total == 0 {
            return Err(Error::Domain("no unit-step geodesic between support points".into()));
        }
        Ok(GeodesicCounts { points, layer_of, forward, backward, total })
    }

    fn layer(&self, l: i64) -> Vec<usize> {
        self.points.iter().copied().filter(|u| self.layer_of[u] == l).collect()
    }

    fn through_point(&self, u: usize) -> BigRational {
        let num = self.forward[&u] * self.backward[&u];
        big_ratio(num, self.total)
    }

    fn through_edge(&self, u: usize, v: usize) -> BigRational {
        let num = self.forward[&u] * self.backward[&v];
        big_ratio(num, self.total)
    }
}

fn big_ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Cancels support cycles of an optimal plan until the bipartite support
/// graph is a forest; the cost is unchanged.
pub fn acyclic_optimal_transport(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
) -> Result<(BigRational, TransportPlan)> {
    let (cost, plan) = wasserstein(space, mu_a, mu_b, 2)?;
    let costs: Vec<Vec<BigRational>> = plan
        .rows
        .iter()
        .map(|&a| plan.cols.iter().map(|&b| br_int(space.dist(a, b).pow(2))).collect())
        .collect();
    let mut mass = plan.mass.clone();
    lp::cancel_cycles_to_forest(&mut mass, &costs);
    let out = TransportPlan::new(plan.rows.clone(), plan.cols.clone(), mass);
    assert_eq!(out.cost(space, 2), cost);
    Ok((cost, out))
}

/// Does the bipartite support graph of a plan contain no cycle?
pub fn support_is_forest(plan: &TransportPlan) -> bool {
    let pairs = plan.support_pairs();
    let m = plan.rows.len();
    let mut parent: Vec<usize> = (0..m + plan.cols.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b, _) in pairs {
        let i = plan.rows.iter().position(|&r| r == a).unwrap();
        let j = plan.cols.iter().position(|&c| c == b).unwrap();
        let (ra, rb) = (find(&mut parent, i), find(&mut parent, m + j));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
