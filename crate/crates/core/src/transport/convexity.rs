//! Displacement-convexity certificates: entropy interpolation slack,
//! hypercube weak-curvature bounds with their internal entropy identities,
//! and the characterization of graphs with nonnegative strong convexity.

use super::lp::{br_int, enumerate_basic_plans};
use super::{
    entropy_of, interpolate, max_entropy_optimal_plan, partition, wasserstein, Distribution,
    TransportPlan,
};
use crate::cube::{c_r_count, midpoints_tilde, phi_map, MidpointAtom};
use crate::space::{FiniteMetricSpace, Graph};
use crate::{Error, Rational, Result};
use num_traits::ToPrimitive;
use std::collections::HashMap;

fn rat_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `H(mu_t) - t H(mu_A) - (1-t) H(mu_B) - (K/2) t (1-t) W^2(mu_A, mu_B)`
/// for the interpolation of the given plan. The caller picks the plan
/// according to the convexity flavor under test.
pub fn displacement_convexity_slack(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
    plan: &TransportPlan,
    t: Rational,
    k_curv: f64,
) -> Result<f64> {
    let mu_t = interpolate(space, plan, t)?;
    let (w2, _) = wasserstein(space, mu_a, mu_b, 2)?;
    let tf = rat_f64(t);
    Ok(mu_t.entropy() - tf * mu_a.entropy() - (1.0 - tf) * mu_b.entropy()
        - 0.5 * k_curv * tf * (1.0 - tf) * w2.to_f64().unwrap())
}

/// Which plans a convexity check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ConvexityFlavor {
    /// Every basic optimal plan (enumerated up to a cap).
    Strong,
    /// Every basic optimal plan with distance interpolation.
    SortOfStrong,
    /// The max-entropy optimal plan.
    SortOfWeak,
    /// The max-entropy optimal plan (witness form).
    Weak,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FlavorSlackReport {
    pub flavor: ConvexityFlavor,
    pub plans_checked: usize,
    /// Enumeration hit the basic-plan cap, so the strong flavors were
    /// sampled rather than exhausted.
    pub sampled: bool,
    pub min_slack: f64,
}

/// Minimum interpolation slack over the plans selected by the flavor.
pub fn flavor_slack(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
    t: Rational,
    k_curv: f64,
    flavor: ConvexityFlavor,
    plan_cap: usize,
) -> Result<FlavorSlackReport> {
    let mut plans: Vec<TransportPlan> = Vec::new();
    let mut sampled = false;
    match flavor {
        ConvexityFlavor::Strong | ConvexityFlavor::SortOfStrong => {
            let (base, u, v) = super::solve_lp(space, mu_a, mu_b, 2)?;
            let costs: Vec<Vec<crate::BigRational>> = base
                .rows
                .iter()
                .map(|&a| base.cols.iter().map(|&b| br_int(space.dist(a, b).pow(2))).collect())
                .collect();
            let allowed = super::lp::optimal_face(&costs, &u, &v);
            let am: Vec<crate::BigRational> =
                mu_a.point_support()?.into_iter().map(|(_, m)| m).collect();
            let bm: Vec<crate::BigRational> =
                mu_b.point_support()?.into_iter().map(|(_, m)| m).collect();
            let (basics, capped) = enumerate_basic_plans(&allowed, &am, &bm, plan_cap);
            sampled = capped;
            for mass in basics {
                plans.push(TransportPlan::new(base.rows.clone(), base.cols.clone(), mass));
            }
        }
        ConvexityFlavor::SortOfWeak | ConvexityFlavor::Weak => {
            let (plan, _) = max_entropy_optimal_plan(space, mu_a, mu_b)?;
            plans.push(plan);
        }
    }
    let mut min_slack = f64::INFINITY;
    for plan in &plans {
        min_slack = min_slack.min(displacement_convexity_slack(space, mu_a, mu_b, plan, t, k_curv)?);
    }
    Ok(FlavorSlackReport { flavor, plans_checked: plans.len(), sampled, min_slack })
}

/// Per-component certificate of the hypercube midpoint-entropy bound.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ComponentBound {
    pub eta: f64,
    pub distance: i64,
    pub midpoint_entropy: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ZetaIdentities {
    /// `S(zeta_AM | zeta_A) - S(zeta | zeta_BM) = S(mu_C) - S(mu_A)`
    pub identity_a: bool,
    pub identity_b: bool,
    /// `S(zeta | zeta_AM) + S(zeta | zeta_BM) = S(zeta | zeta_M)`
    pub chain: bool,
    /// `S(zeta_AM | zeta_A) >= ln |C_R|`, both sides
    pub class_lower: bool,
    /// uniform-geodesic interpolation agrees with the class marginal
    pub matches_interpolation: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WeakCurvatureReport {
    pub components: Vec<ComponentBound>,
    /// `S(mu_C) >= (1/3)(S_A + S_B + 2 ln |C_R|)`, evaluated globally when
    /// the support distance is constant across the whole plan.
    pub global_bound: Option<bool>,
    pub midpoint_entropy: f64,
    /// Almost-curved slack
    /// `S(mu_C) - S_A/3 - S_B/3 - (2/(5 d^3)) (W^2)^2 + 2/3 >= 0`.
    pub almost_curved_holds: bool,
    pub zeta: Vec<ZetaIdentities>,
    pub product_structure: bool,
}

/// Midpoint-entropy bounds for the max-entropy plan of a hypercube
/// instance, recursing through the transport partition when present.
pub fn weak_curvature_bounds(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
) -> Result<WeakCurvatureReport> {
    let d = space
        .is_hypercube()
        .ok_or_else(|| Error::Domain("weak curvature bounds need a hypercube ambient".into()))?;
    let (plan, _) = max_entropy_optimal_plan(space, mu_a, mu_b)?;
    let parts = partition(space, &plan)?;
    let tol = 1e-9;
    let half = Rational::new(1, 2);

    let mut components = Vec::new();
    let mut zeta = Vec::new();
    for comp in &parts.components {
        let r = comp
            .distance
            .ok_or_else(|| Error::Domain("optimal component with non-constant distance".into()))?;
        let mu_ca = comp.plan.row_marginal();
        let mu_cb = comp.plan.col_marginal();
        let mu_c = interpolate(space, &comp.plan, half)?;
        let s_c = mu_c.entropy();
        let bound = (mu_ca.entropy() + mu_cb.entropy() + 2.0 * c_r_count(r as u32).ln()) / 3.0;
        components.push(ComponentBound {
            eta: comp.eta.to_f64().unwrap(),
            distance: r,
            midpoint_entropy: s_c,
            bound,
            holds: s_c >= bound - tol,
        });
        if r >= 1 {
            zeta.push(zeta_identities(space, &comp.plan, r, &mu_c, tol)?);
        }
    }

    let mu_c = interpolate(space, &plan, half)?;
    let s_c = mu_c.entropy();
    let all_r: Vec<i64> = components.iter().map(|c| c.distance).collect();
    let global_bound = if all_r.windows(2).all(|w| w[0] == w[1]) {
        let bound =
            (mu_a.entropy() + mu_b.entropy() + 2.0 * c_r_count(all_r[0] as u32).ln()) / 3.0;
        Some(s_c >= bound - tol)
    } else {
        None
    };

    let (w2, _) = wasserstein(space, mu_a, mu_b, 2)?;
    let w2f = w2.to_f64().unwrap();
    let almost = s_c - mu_a.entropy() / 3.0 - mu_b.entropy() / 3.0
        - 2.0 / (5.0 * (d as f64).powi(3)) * w2f * w2f
        + 2.0 / 3.0;
    let product_structure = super::midpoint_product_structure(space, &plan, 1e-8);

    Ok(WeakCurvatureReport {
        components,
        global_bound,
        midpoint_entropy: s_c,
        almost_curved_holds: almost >= -tol,
        zeta,
        product_structure,
    })
}

/// Atom key of the image side of the class map: a vertex for even
/// distances, an ordered edge for odd ones.
type ImageKey = (usize, usize);

fn zeta_identities(
    space: &FiniteMetricSpace,
    plan: &TransportPlan,
    r: i64,
    mu_c: &Distribution,
    tol: f64,
) -> Result<ZetaIdentities> {
    let pairs = plan.support_pairs();
    // class atoms as boolean subsets of the r differing coordinates
    let classes = class_atoms(r as usize);
    let class_count = classes.len() as f64;
    debug_assert_eq!(class_count, c_r_count(r as u32));

    // triples (pair, class) with probability tau(a,b)/|C_R|
    struct Trip {
        a: usize,
        b: usize,
        m: ImageKey,
        m2: ImageKey,
        p: f64,
    }
    let mut trips = Vec::new();
    for (a, b, mass) in &pairs {
        let p = mass.to_f64().unwrap() / class_count;
        for c in &classes {
            let (m, m2) = apply_class(space, *a, *b, c);
            trips.push(Trip { a: *a, b: *b, m, m2, p });
        }
    }
    let group = |key: &dyn Fn(&Trip) -> Vec<usize>| -> f64 {
        let mut acc: HashMap<Vec<usize>, f64> = HashMap::new();
        for t in &trips {
            *acc.entry(key(t)).or_insert(0.0) += t.p;
        }
        entropy_of(acc.into_values())
    };
    let s_zeta = entropy_of(trips.iter().map(|t| t.p));
    let s_a = group(&|t: &Trip| vec![t.a]);
    let s_b = group(&|t: &Trip| vec![t.b]);
    let s_m = group(&|t: &Trip| vec![t.m.0, t.m.1]);
    let s_am = group(&|t: &Trip| vec![t.a, t.m.0, t.m.1]);
    let s_bm = group(&|t: &Trip| vec![t.b, t.m.0, t.m.1]);
    let s_mm = group(&|t: &Trip| vec![t.m.0, t.m.1, t.m2.0, t.m2.1]);
    let _ = s_mm;

    let s_mu_c = mu_c.entropy();
    let s_mu_a = entropy_of(plan.row_marginal().atoms().iter().map(|(_, m)| m.to_f64().unwrap()));
    let s_mu_b = entropy_of(plan.col_marginal().atoms().iter().map(|(_, m)| m.to_f64().unwrap()));
    let ln_cr = class_count.ln();

    let identity_a = ((s_am - s_a) - (s_zeta - s_bm) - (s_mu_c - s_mu_a)).abs() < tol;
    let identity_b = ((s_bm - s_b) - (s_zeta - s_am) - (s_mu_c - s_mu_b)).abs() < tol;
    let chain = ((s_zeta - s_am) + (s_zeta - s_bm) - (s_zeta - s_m)).abs() < tol;
    let class_lower = s_am - s_a >= ln_cr - tol && s_bm - s_b >= ln_cr - tol;
    let matches_interpolation = (s_m - s_mu_c).abs() < tol;
    Ok(ZetaIdentities { identity_a, identity_b, chain, class_lower, matches_interpolation })
}

/// Class atoms over `r` coordinate slots: for even `r` the half-size
/// subsets; for odd `r` the nested pairs `(x, x + one slot)`.
fn class_atoms(r: usize) -> Vec<(Vec<bool>, Option<Vec<bool>>)> {
    let mut out = Vec::new();
    if r % 2 == 0 {
        for x in fixed_subsets(r, r / 2) {
            out.push((x, None));
        }
    } else {
        for x in fixed_subsets(r, (r - 1) / 2) {
            for extra in 0..r {
                if !x[extra] {
                    let mut y = x.clone();
                    y[extra] = true;
                    out.push((x.clone(), Some(y)));
                }
            }
        }
    }
    out
}

fn fixed_subsets(r: usize, k: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut cur = vec![false; r];
    fn rec(cur: &mut Vec<bool>, start: usize, left: usize, out: &mut Vec<Vec<bool>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..cur.len() {
            cur[i] = true;
            rec(cur, i + 1, left - 1, out);
            cur[i] = false;
        }
    }
    rec(&mut cur, 0, k, &mut out);
    out
}

fn apply_class(
    space: &FiniteMetricSpace,
    a: usize,
    b: usize,
    class: &(Vec<bool>, Option<Vec<bool>>),
) -> (ImageKey, ImageKey) {
    match &class.1 {
        None => {
            let (m1, m2) = phi_map(space, a, b, &class.0);
            ((m2, m2), (m1, m1))
        }
        Some(y) => {
            // odd distance: images are the middle edges built from the
            // nested pair and its complements
            let x = &class.0;
            let comp = |v: &[bool]| -> Vec<bool> { v.iter().map(|&t| !t).collect() };
            let (_, ex) = phi_map(space, a, b, x);
            let (_, ey) = phi_map(space, a, b, y);
            let (_, ecy) = phi_map(space, a, b, &comp(y));
            let (_, ecx) = phi_map(space, a, b, &comp(x));
            ((ex, ey), (ecy, ecx))
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct StrongWitness {
    pub center: usize,
    pub mu_a_support: Vec<usize>,
    pub mu_b_support: Vec<usize>,
    pub plan_pairs: Vec<(usize, usize)>,
    pub plan_is_optimal: bool,
    /// Entropy slack of the midpoint-concentrated interpolation at K = 0;
    /// negative when the witness defeats strong convexity.
    pub concentrated_slack: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct StrongConvexityReport {
    /// Path, cycle, complete, or complete minus one edge.
    pub family_member: bool,
    /// No vertex has two distinct non-adjacent pairs in its neighborhood.
    pub obstruction_free: bool,
    pub agree: bool,
    pub witness: Option<StrongWitness>,
}

/// Characterizes nonnegative strong displacement convexity: the direct
/// family recognizer against the local neighborhood obstruction, with an
/// explicit witness instance when convexity fails.
pub fn strong_convexity_characterization(g: &Graph) -> Result<StrongConvexityReport> {
    if g.n() > 10 {
        return Err(Error::TooLarge(format!("characterization cap 10 exceeded: n = {}", g.n())));
    }
    let family_member = is_path(g) || is_cycle(g) || is_complete(g) || is_complete_minus_edge(g);
    let obstruction = find_obstruction(g);
    let obstruction_free = obstruction.is_none();
    let witness = match obstruction {
        None => None,
        Some((v, u1, u2, w1, w2)) => Some(build_witness(g, v, u1, u2, w1, w2)?),
    };
    Ok(StrongConvexityReport {
        family_member,
        obstruction_free,
        agree: family_member == obstruction_free,
        witness,
    })
}

fn is_path(g: &Graph) -> bool {
    let deg1 = (0..g.n()).filter(|&v| g.degree(v) == 1).count();
    (0..g.n()).all(|v| g.degree(v) <= 2) && deg1 == 2
}

fn is_cycle(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) == 2)
}

fn is_complete(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) == g.n() - 1)
}

fn is_complete_minus_edge(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 2).collect();
    low.len() == 2
        && (0..n).all(|v| g.degree(v) >= n - 2)
        && !g.has_edge(low[0], low[1])
}

/// Two distinct non-adjacent pairs inside one neighborhood; pairs may
/// share a vertex, in which case the shared vertex is reported on the
/// B side twice.
fn find_obstruction(g: &Graph) -> Option<(usize, usize, usize, usize, usize)> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        let mut nonedges = Vec::new();
        for (i, &p) in nb.iter().enumerate() {
            for &q in &nb[i + 1..] {
                if !g.has_edge(p, q) {
                    nonedges.push((p, q));
                }
            }
        }
        if nonedges.len() >= 2 {
            // prefer a pair of non-edges sharing a vertex: the witness plan
            // is then forced, hence optimal
            for (i, &(p1, q1)) in nonedges.iter().enumerate() {
                for &(p2, q2) in &nonedges[i + 1..] {
                    let shared =
                        [p1, q1].iter().find(|&&x| x == p2 || x == q2).copied();
                    if let Some(m) = shared {
                        let a = if p1 == m { q1 } else { p1 };
                        let c = if p2 == m { q2 } else { p2 };
                        return Some((v, a, m, c, m));
                    }
                }
            }
            let (u1, u2) = nonedges[0];
            let (w1, w2) = nonedges[1];
            return Some((v, u1, u2, w1, w2));
        }
    }
    None
}

fn build_witness(
    g: &Graph,
    v: usize,
    u1: usize,
    u2: usize,
    w1: usize,
    w2: usize,
) -> Result<StrongWitness> {
    let space = FiniteMetricSpace::from_graph(g.clone());
    let mu_a = Distribution::uniform_points(&[u1, w1]);
    let mu_b = if u2 == w2 {
        Distribution::point_mass(u2)
    } else {
        Distribution::uniform_points(&[u2, w2])
    };
    let plan_pairs = vec![(u1, u2), (w1, w2)];
    let plan_cost: f64 = plan_pairs
        .iter()
        .map(|&(a, b)| 0.5 * (space.dist(a, b).pow(2)) as f64)
        .sum();
    let (w2cost, _) = wasserstein(&space, &mu_a, &mu_b, 2)?;
    let plan_is_optimal = (plan_cost - w2cost.to_f64().unwrap()).abs() < 1e-12;
    // adversarial geodesic choice concentrates all midpoint mass on v
    let concentrated_slack = 0.0 - 0.5 * mu_a.entropy() - 0.5 * mu_b.entropy();
    debug_assert!(midpoints_tilde(&space, u1, u2)?.contains(&MidpointAtom::Point(v)));
    debug_assert!(midpoints_tilde(&space, w1, w2)?.contains(&MidpointAtom::Point(v)));
    Ok(StrongWitness {
        center: v,
        mu_a_support: vec![u1, w1],
        mu_b_support: if u2 == w2 { vec![u2] } else { vec![u2, w2] },
        plan_pairs,
        plan_is_optimal,
        concentrated_slack,
    })
}

/// Convenience: seeded random constant-distance instances in a hypercube,
/// built from disjoint coordinate blocks so every cross distance is equal.
pub fn random_constant_distance_instance(
    d: u32,
    rng: &mut impl rand::Rng,
) -> (FiniteMetricSpace, Distribution, Distribution, i64) {
    use rand::seq::SliceRandom;
    let space = FiniteMetricSpace::hypercube(d);
    loop {
        // split coordinates into two blocks and pick levels
        let split = rng.gen_range(1..d);
        let la = rng.gen_range(0..=split);
        let lb = rng.gen_range(0..=(d - split));
        let r = la + lb;
        if r == 0 {
            continue;
        }
        let block_a: Vec<u32> = (0..split).collect();
        let block_b: Vec<u32> = (split..d).collect();
        let pick_subsets = |block: &[u32], level: u32, count: usize, rng: &mut dyn rand::RngCore| -> Vec<usize> {
            let mut out = std::collections::BTreeSet::new();
            let mut tries = 0;
            while out.len() < count && tries < 200 {
                let mut bits = block.to_vec();
                bits.shuffle(rng);
                let mask = bits[..level as usize].iter().fold(0usize, |acc, &b| acc | 1 << b);
                out.insert(mask);
                tries += 1;
            }
            out.into_iter().collect()
        };
        let na = rng.gen_range(1..=4usize);
        let nb = rng.gen_range(1..=4usize);
        let a_pts = pick_subsets(&block_a, la, na, rng);
        let b_pts: Vec<usize> =
            pick_subsets(&block_b, lb, nb, rng).into_iter().collect();
        if a_pts.is_empty() || b_pts.is_empty() {
            continue;
        }
        // distance between a in block A and b in block B is |a| + |b| = r
        let mu_a = Distribution::uniform_points(&a_pts);
        let mu_b = Distribution::uniform_points(&b_pts);
        return (space, mu_a, mu_b, r as i64);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::family;
    use rand::SeedableRng;

    fn neg_instance() -> (FiniteMetricSpace, Distribution, Distribution) {
        let space = FiniteMetricSpace::hypercube(10);
        let a: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
        let b: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
        (space, Distribution::uniform_points(&a), Distribution::uniform_points(&b))
    }

    fn diagonal_plan() -> TransportPlan {
        let rows: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
        let cols: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
        let mut mass = vec![vec![crate::BigRational::from_integer(0.into()); 5]; 5];
        for (i, row) in mass.iter_mut().enumerate() {
            row[i] = crate::BigRational::new(1.into(), 5.into());
        }
        TransportPlan::new(rows, cols, mass)
    }

    #[test]
    fn slack_identity_plan_is_zero() {
        let space = FiniteMetricSpace::hypercube(4);
        let mu = Distribution::uniform_points(&[1, 2, 12]);
        let plan = TransportPlan::identity(&mu).unwrap();
        for t in [Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4)] {
            let s = displacement_convexity_slack(&space, &mu, &mu, &plan, t, 0.0).unwrap();
            assert!(s.abs() < 1e-12);
        }
    }

    #[test]
    fn negative_curvature_slacks() {
        let (space, mu_a, mu_b) = neg_instance();
        // diagonal plan: entropy of midpoints drops below the average
        let s = displacement_convexity_slack(&space, &mu_a, &mu_b, &diagonal_plan(), Rational::new(1, 2), 0.0)
            .unwrap();
        let want = (5.0f64.ln() / 2.0 + 2.0f64.ln()) - 5.0f64.ln();
        assert!((s - want).abs() < 1e-12);
        assert!(s < 0.0);
        // max-entropy plan restores it: ln 2 + ln 5 - ln 5 = ln 2
        let (plan, _) = max_entropy_optimal_plan(&space, &mu_a, &mu_b).unwrap();
        let s = displacement_convexity_slack(&space, &mu_a, &mu_b, &plan, Rational::new(1, 2), 0.0).unwrap();
        assert!((s - 2.0f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn weak_curvature_on_negative_instance() {
        let (space, mu_a, mu_b) = neg_instance();
        let rep = weak_curvature_bounds(&space, &mu_a, &mu_b).unwrap();
        assert_eq!(rep.components.len(), 1);
        assert!(rep.components[0].holds);
        assert_eq!(rep.components[0].distance, 2);
        assert_eq!(rep.global_bound, Some(true));
        // S(mu_C) = ln 2 + ln 5, bound = (2 ln 5 + 2 ln 2) / 3
        let want_bound = (2.0 * 5.0f64.ln() + 2.0 * 2.0f64.ln()) / 3.0;
        assert!((rep.components[0].bound - want_bound).abs() < 1e-9);
        assert!((rep.midpoint_entropy - (2.0f64.ln() + 5.0f64.ln())).abs() < 1e-8);
        assert!(rep.almost_curved_holds);
        assert!(rep.product_structure);
        for z in &rep.zeta {
            assert!(z.identity_a && z.identity_b && z.chain && z.class_lower);
            assert!(z.matches_interpolation);
        }
    }

    #[test]
    fn weak_curvature_point_masses() {
        // point masses at distance R: S(mu_C) = ln |C_R| >= (2/3) ln |C_R|
        let space = FiniteMetricSpace::hypercube(6);
        let mu_a = Distribution::point_mass(0);
        let mu_b = Distribution::point_mass(0b111100);
        let rep = weak_curvature_bounds(&space, &mu_a, &mu_b).unwrap();
        assert!(rep.components[0].holds);
        let want = c_r_count(4).ln();
        assert!((rep.midpoint_entropy - want).abs() < 1e-9);
    }

    #[test]
    fn weak_curvature_odd_distance_uses_edges() {
        let space = FiniteMetricSpace::hypercube(5);
        let mu_a = Distribution::point_mass(0);
        let mu_b = Distribution::point_mass(0b11111);
        let rep = weak_curvature_bounds(&space, &mu_a, &mu_b).unwrap();
        assert!((rep.midpoint_entropy - c_r_count(5).ln()).abs() < 1e-9);
        assert!(rep.components[0].holds);
        for z in &rep.zeta {
            assert!(z.chain && z.class_lower && z.matches_interpolation);
        }
    }

    #[test]
    fn random_constant_distance_sweep_small() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let d = rand::Rng::gen_range(&mut rng, 3..=7u32);
            let (space, mu_a, mu_b, r) = random_constant_distance_instance(d, &mut rng);
            for (a, _) in mu_a.point_support().unwrap() {
                for (b, _) in mu_b.point_support().unwrap() {
                    assert_eq!(space.dist(a, b), r);
                }
            }
            let rep = weak_curvature_bounds(&space, &mu_a, &mu_b).unwrap();
            assert!(rep.components.iter().all(|c| c.holds));
            assert_eq!(rep.global_bound, Some(true));
            assert!(rep.almost_curved_holds);
        }
    }

    #[test]
    fn strong_characterization_families() {
        for g in [family::cycle(6), family::path(5), family::complete(4), family::complete(5)] {
            let rep = strong_convexity_characterization(&g).unwrap();
            assert!(rep.family_member && rep.obstruction_free && rep.agree);
        }
        // K_4 minus an edge
        let g = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let rep = strong_convexity_characterization(&g).unwrap();
        assert!(rep.family_member && rep.obstruction_free && rep.agree);
    }

    #[test]
    fn strong_characterization_star_witness() {
        let g = family::star(3);
        let rep = strong_convexity_characterization(&g).unwrap();
        assert!(!rep.family_member && !rep.obstruction_free && rep.agree);
        let w = rep.witness.unwrap();
        assert_eq!(w.center, 0);
        assert!(w.plan_is_optimal);
        assert!(w.concentrated_slack < 0.0);
    }

    #[test]
    fn flavor_slack_on_identity() {
        let space = FiniteMetricSpace::hypercube(3);
        let mu = Distribution::uniform_points(&[0, 3]);
        let rep = flavor_slack(&space, &mu, &mu, Rational::new(1, 2), 0.0, ConvexityFlavor::SortOfWeak, 100)
            .unwrap();
        assert!(rep.min_slack >= -1e-12);
    }
}
