//! Acceptance battery: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them all).
//!
//! Three criteria assert target values that exhaustive computation
//! contradicts; those tests fail deliberately with the computed truth in
//! their messages rather than weakening the assertion. The companion
//! `*_verified` tests pin the corrected statements.

use concurve::bounds::{self, TailVariant};
use concurve::cube;
use concurve::field::{self, ScalarField};
use concurve::iso::{self, VertexSet};
use concurve::sigma::{self, GridSpec};
use concurve::space::{family, FiniteMetricSpace, Graph, ProductMetric};
use concurve::transport::{self, Distribution, TransportPlan};
use concurve::{BigRational, Rational};
use num_traits::{ToPrimitive, Zero};
use std::sync::Arc;
use std::time::Instant;

fn verdict(criterion: &str, pass: bool, detail: &str) -> bool {
    println!("[{}] criterion {criterion}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn grid400() -> GridSpec {
    GridSpec { t_min: 1e-3, t_max: 50.0, points: 400 }
}

fn br(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[test]
fn criterion_01_subgaussian_closed_forms() {
    let grid = grid400();
    let mut ok = true;

    let t0 = Instant::now();
    let k2 = sigma::subgaussian_constant(&family::complete(2), &grid).unwrap();
    ok &= (k2.sigma2_lower - 0.25).abs() < 1e-6 && t0.elapsed().as_secs() < 5;

    let t0 = Instant::now();
    let k3 = sigma::subgaussian_constant(&family::complete(3), &grid).unwrap();
    let k3_want = 1.0 / (6.0 * 2f64.ln());
    ok &= (k3.sigma2_lower - k3_want).abs() < 1e-4 && t0.elapsed().as_secs() < 5;

    let t0 = Instant::now();
    let sq = sigma::subgaussian_constant(&family::complete(2).cartesian(&family::complete(2)), &grid).unwrap();
    ok &= (sq.sigma2_lower - 0.5).abs() < 1e-4 && t0.elapsed().as_secs() < 5;

    let t0 = Instant::now();
    let s2 = bounds::sn_bounds_report(2, &grid).unwrap();
    ok &= s2.sigma2_exact == Some(1.0) && (s2.sigma2_estimate - 1.0).abs() < 1e-9;
    ok &= t0.elapsed().as_secs() < 5;

    assert!(verdict(
        "01 subgaussian closed forms",
        ok,
        &format!("K2 {:.6}, K3 {:.6}, K2xK2 {:.6}, S2 {:?}", k2.sigma2_lower, k3.sigma2_lower, sq.sigma2_lower, s2.sigma2_exact)
    ));
}

#[test]
fn criterion_02_variance_below_sigma() {
    let grid = grid400();
    let mut suite: Vec<(String, Graph)> = Vec::new();
    for n in 2..=5 {
        suite.push((format!("K{n}"), family::complete(n)));
    }
    for n in 3..=8 {
        suite.push((format!("C{n}"), family::cycle(n)));
    }
    for n in 2..=8 {
        suite.push((format!("P{n}"), family::path(n)));
    }
    for k in 1..=4 {
        suite.push((format!("tripod{k}"), family::tripod(k)));
    }
    for k in 1..=3 {
        suite.push((format!("caterpillar{k}"), family::caterpillar(k)));
    }
    for d in 1..=4 {
        suite.push((format!("H{d}"), family::hypercube(d)));
    }
    let mut violations = Vec::new();
    for (name, g) in &suite {
        let (c2, _) = field::max_variance(g).unwrap();
        let est = sigma::subgaussian_constant(g, &grid).unwrap();
        if c2.to_f64().unwrap() > est.sigma2_lower + 1e-3 {
            violations.push(name.clone());
        }
    }
    assert!(verdict(
        "02 c^2 <= sigma^2 on the suite",
        violations.is_empty(),
        &format!("{} graphs, violations: {violations:?}", suite.len())
    ));
}

#[test]
fn criterion_03_odd_cycle_optimality() {
    let t0 = Instant::now();
    let c5 = sigma::odd_cycle_optimality(5, &grid400()).unwrap();
    let c7 = sigma::odd_cycle_optimality(7, &grid400()).unwrap();
    let ok = c5.holds && c7.holds && t0.elapsed().as_secs() < 60;
    assert!(verdict(
        "03 odd-cycle envelope witnesses",
        ok,
        &format!("C5 {} grid points, C7 {} grid points, {:?}", c5.grid_points_checked, c7.grid_points_checked, t0.elapsed())
    ));
}

#[test]
fn criterion_04_tripod_witnesses_and_growth() {
    let k = 6usize;
    let (c2, wits) = field::max_variance(&family::tripod(k)).unwrap();
    let stated = ScalarField::from_integers(&iso::tripod_field(k), 0);
    let mut ok = c2 == stated.variance();
    // up to symmetry the witnesses are the stated field and its negation
    let mut wit_vals: Vec<Vec<i64>> = wits.iter().map(|w| w.as_integers().unwrap()).collect();
    wit_vals.sort();
    let mut want = vec![
        stated.as_integers().unwrap(),
        stated.negated().as_integers().unwrap(),
    ];
    want.sort();
    ok &= wit_vals == want;

    let rep = iso::tripod_examples(k, iso::TripodVariant::Plain).unwrap();
    ok &= rep.growth_formulas == Some(true) && rep.x_variance_optimal;
    assert!(verdict(
        "04 tripod witness and ball growth",
        ok,
        &format!("c2 = {c2}, witnesses = {}", wits.len())
    ));
}

/// The stated criterion: containment at every `(d, r)` and strictness
/// exactly on `{d > 0, r >= k+2}`. Exhaustive tabulation contradicts both
/// parts (see `criterion_05_caterpillar_verified` for what does hold), so
/// this test fails by design and reports the first offending cells.
#[test]
fn criterion_05_caterpillar_containment_as_stated() {
    let t0 = Instant::now();
    let mut literal_ok = true;
    let mut detail = String::new();
    for n in [1u32, 2] {
        let rep = iso::caterpillar_counterexample(4, n).unwrap();
        let predicted: Vec<(i64, i64)> = rep
            .cells
            .iter()
            .filter(|c| c.d > 0 && c.r >= 6)
            .map(|c| (c.d, c.r))
            .collect();
        let containment_everywhere = rep.containment_failures.is_empty();
        let strict_exact = rep.strict_cells == predicted;
        literal_ok &= containment_everywhere && strict_exact;
        detail.push_str(&format!(
            "n={n}: containment failures {:?}.., strict {} cells vs predicted {}; ",
            rep.containment_failures.iter().take(3).collect::<Vec<_>>(),
            rep.strict_cells.len(),
            predicted.len(),
        ));
    }
    detail.push_str(&format!("{:?}", t0.elapsed()));
    assert!(
        verdict("05 caterpillar containment as stated", literal_ok, &detail),
        "stated region is contradicted by exhaustive tabulation: the \
         level-preserving permutation cannot absorb balls of minority \
         sublevel sets, and strictness already occurs at r = k+1; see the \
         verified companion test"
    );
}

/// What the exhaustive tabulation does support: a majority-size strict
/// cell refuting sublevel minimality for n in {1, 2}, containment on
/// every majority cell at n = 1, and the closed-form strict region there.
#[test]
fn criterion_05_caterpillar_verified() {
    let t0 = Instant::now();
    let k = 4i64;
    let mut ok = true;
    let r1 = iso::caterpillar_counterexample(4, 1).unwrap();
    ok &= r1.refutation_cell.is_some();
    ok &= r1.x_variance_optimal == Some(true);
    ok &= r1.containment_failures.iter().all(|&(_, r)| r <= k);
    let want: Vec<(i64, i64)> = r1
        .cells
        .iter()
        .filter(|c| c.d >= 1 && c.r >= k + 1 && c.r <= 2 * k - 1 && c.r + c.d <= 2 * k + 1)
        .map(|c| (c.d, c.r))
        .collect();
    ok &= r1.strict_cells == want;

    let r2 = iso::caterpillar_counterexample(4, 2).unwrap();
    let refut2 = r2.refutation_cell;
    ok &= refut2.is_some_and(|(_, r)| 2 * r >= r2.median_times_2);
    let elapsed = t0.elapsed();
    ok &= elapsed.as_secs() < 120;
    assert!(verdict(
        "05v caterpillar verified regions",
        ok,
        &format!("n=1 strict cells {}, n=2 refutation {refut2:?}, {elapsed:?}", r1.strict_cells.len())
    ));
}

#[test]
fn criterion_06_six_vertex_log_moment() {
    let x1 = ScalarField::from_integers(&[1, 2, 3, 4, 1, 4], 0);
    let x2 = ScalarField::from_integers(&[1, 2, 3, 4, 1, 2], 0);
    let mut ok = true;
    let mut margins = Vec::new();
    for t in [3.0, 4.0, 5.0] {
        let m = sigma::log_moment(&x2, t) - sigma::log_moment(&x1, t);
        margins.push(m);
        ok &= m > 1e-12;
    }
    assert!(verdict("06 six-vertex log-moment margins", ok, &format!("margins {margins:?}")));
}

#[test]
fn criterion_07_convexity_characterization() {
    let h4 = FiniteMetricSpace::hypercube(4);
    // precompute pairwise midpoint masks for the 16-point cube
    let mut mid = [[0u16; 16]; 16];
    for a in 0..16 {
        for b in 0..16 {
            for u in cube::midpoints_hat_pair(&h4, a, b, Rational::new(1, 2)).iter() {
                mid[a][b] |= 1 << u;
            }
        }
    }
    let mut ok = true;
    for s in 1u32..1 << 16 {
        let members: Vec<usize> = (0..16).filter(|&i| s >> i & 1 == 1).collect();
        let mut convex = true;
        'pairs: for &a in &members {
            for &b in &members {
                if mid[a][b] & !(s as u16) != 0 {
                    convex = false;
                    break 'pairs;
                }
            }
        }
        let set = VertexSet::from_iter(members);
        if convex != cube::is_lattice_interval(&h4, &set) {
            ok = false;
            break;
        }
    }
    for d in [3u32, 4, 5] {
        let hd = FiniteMetricSpace::hypercube(d);
        let mut ball = VertexSet::from_iter([0]);
        for b in 0..d {
            ball.insert(1 << b);
        }
        ok &= cube::convex_closure(&hd, &ball).unwrap().len() == hd.n();
    }
    assert!(verdict("07 convex sets are lattice intervals", ok, "exhaustive over H4 subsets"));
}

#[test]
fn criterion_08_iterated_midpoint_counterexample() {
    let t0 = Instant::now();
    let rep = cube::iterated_midpoint_counterexample();
    let ok = rep.a_convex
        && rep.b_convex
        && rep.half_levels_ok
        && rep.quarter_levels_ok
        && rep.phi_in_half
        && rep.zeta_in_iterated
        && rep.zeta_size == 9
        && rep.zeta_outside_quarter
        && t0.elapsed().as_secs() < 30;
    assert!(verdict("08 iterated midpoints in H12", ok, &format!("{:?}", t0.elapsed())));
}

fn negative_instance() -> (FiniteMetricSpace, Distribution, Distribution) {
    let space = FiniteMetricSpace::hypercube(10);
    let a: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
    let b: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
    (space, Distribution::uniform_points(&a), Distribution::uniform_points(&b))
}

fn diagonal_plan() -> TransportPlan {
    let rows: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
    let cols: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
    let mut mass = vec![vec![BigRational::zero(); 5]; 5];
    for (i, row) in mass.iter_mut().enumerate() {
        row[i] = br(1, 5);
    }
    TransportPlan::new(rows, cols, mass)
}

#[test]
fn criterion_09_negative_curvature_example() {
    let (space, mu_a, mu_b) = negative_instance();
    let mu_c = transport::interpolate(&space, &diagonal_plan(), Rational::new(1, 2)).unwrap();
    let want = 5f64.ln() / 2.0 + 2f64.ln();
    let mut ok = (mu_c.entropy() - want).abs() < 1e-12;
    ok &= mu_c.entropy() < 5f64.ln();
    let slack = transport::displacement_convexity_slack(
        &space,
        &mu_a,
        &mu_b,
        &diagonal_plan(),
        Rational::new(1, 2),
        0.0,
    )
    .unwrap();
    ok &= slack < 0.0;
    assert!(verdict(
        "09 negative-curvature entropies",
        ok,
        &format!("S(mu_C) = {:.6}, slack = {:.6}", mu_c.entropy(), slack)
    ));
}

#[test]
fn criterion_10_max_entropy_restoration_and_sweep() {
    use rand::SeedableRng;
    let (space, mu_a, mu_b) = negative_instance();
    let (plan, _) = transport::max_entropy_optimal_plan(&space, &mu_a, &mu_b).unwrap();
    let mut ok = true;
    for (_, _, m) in plan.support_pairs() {
        ok &= (m.to_f64().unwrap() - 1.0 / 25.0).abs() < 1e-9;
    }
    let mu_c = transport::interpolate(&space, &plan, Rational::new(1, 2)).unwrap();
    ok &= (mu_c.entropy() - (2f64.ln() + 5f64.ln())).abs() < 1e-8;
    let weak = transport::weak_curvature_bounds(&space, &mu_a, &mu_b).unwrap();
    ok &= weak.global_bound == Some(true) && weak.components.iter().all(|c| c.holds);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut sweep_violations = 0usize;
    for i in 0..500 {
        let d = 3 + (i % 6) as u32; // dimensions 3..=8
        let (sp, da, db, _) = transport::convexity::random_constant_distance_instance(d, &mut rng);
        let out = transport::weak_curvature_bounds(&sp, &da, &db).unwrap();
        if !(out.components.iter().all(|c| c.holds) && out.global_bound == Some(true)) {
            sweep_violations += 1;
        }
    }
    ok &= sweep_violations == 0;
    assert!(verdict(
        "10 max-entropy restoration and sweep",
        ok,
        &format!("sweep violations {sweep_violations}/500")
    ));
}

#[test]
fn criterion_11_almost_curved_slack() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut violations = 0usize;
    for i in 0..500 {
        let d = 3 + (i % 6) as u32;
        let (sp, da, db, _) = transport::convexity::random_constant_distance_instance(d, &mut rng);
        let out = transport::weak_curvature_bounds(&sp, &da, &db).unwrap();
        if !out.almost_curved_holds {
            violations += 1;
        }
    }
    let mut intermediate = true;
    for r in 1u32..=60 {
        let lhs = cube::c_r_count(r).ln();
        if lhs < 0.6 * r as f64 - 1.0 {
            intermediate = false;
        }
    }
    let ok = violations == 0 && intermediate;
    assert!(verdict(
        "11 almost-curved slack and class counts",
        ok,
        &format!("sweep violations {violations}/500, ln|C_R| >= 0.6R - 1 up to 60: {intermediate}")
    ));
}

#[test]
fn criterion_12_transport_core() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let spaces: Vec<FiniteMetricSpace> = vec![
        FiniteMetricSpace::hypercube(5),
        FiniteMetricSpace::from_graph(family::cycle(7)),
        FiniteMetricSpace::from_graph(family::tripod(2)),
        FiniteMetricSpace::from_graph(family::petersen()),
    ];
    let mut ok = true;
    for trial in 0..200 {
        let space = &spaces[trial % spaces.len()];
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let size = rng.gen_range(1..=6usize);
            let mut pts = std::collections::BTreeSet::new();
            while pts.len() < size {
                pts.insert(rng.gen_range(0..space.n()));
            }
            Distribution::uniform_points(&pts.into_iter().collect::<Vec<_>>())
        };
        let mu_a = pick(&mut rng);
        let mu_b = pick(&mut rng);
        let (w2, plan) = transport::wasserstein(space, &mu_a, &mu_b, 2).unwrap();
        // simple exchange cycles alternate distinct sources and targets, so
        // the support-size cap is the smaller marginal support
        let cap = plan.rows.len().min(plan.cols.len());
        let (mono, _) = transport::is_cyclically_monotone(space, &plan, cap);
        ok &= mono;
        // a basic plan optimized for a random objective is monotone for the
        // squared distance exactly when it already attains the optimum
        let rplan = random_basic_plan(space, &mu_a, &mu_b, &mut rng);
        let rcap = rplan.rows.len().min(rplan.cols.len());
        let (rmono, _) = transport::is_cyclically_monotone(space, &rplan, rcap);
        let ropt = rplan.cost(space, 2) == w2;
        ok &= rmono == ropt;
        // forest transport preserves cost
        let (fcost, fplan) = transport::acyclic_optimal_transport(space, &mu_a, &mu_b).unwrap();
        ok &= fcost == w2 && transport::support_is_forest(&fplan);
        ok &= fplan.marginals_match(&mu_a, &mu_b);
    }
    assert!(verdict("12 transport core equivalences", ok, "200 seeded instances"));
}

/// A basic feasible plan optimal for a random integer objective.
fn random_basic_plan(
    space: &FiniteMetricSpace,
    mu_a: &Distribution,
    mu_b: &Distribution,
    rng: &mut impl rand::Rng,
) -> TransportPlan {
    let sa = mu_a.point_support().unwrap();
    let sb = mu_b.point_support().unwrap();
    let _ = space;
    let perturbed: Vec<Vec<BigRational>> = sa
        .iter()
        .map(|_| sb.iter().map(|_| br(rng.gen_range(0..100), 1)).collect())
        .collect();
    let a: Vec<BigRational> = sa.iter().map(|(_, m)| m.clone()).collect();
    let b: Vec<BigRational> = sb.iter().map(|(_, m)| m.clone()).collect();
    let mass = transport::solve_transport_costs(&perturbed, &a, &b);
    TransportPlan::new(
        sa.iter().map(|&(p, _)| p).collect(),
        sb.iter().map(|&(p, _)| p).collect(),
        mass,
    )
}

#[test]
fn criterion_13_strong_convexity_recognizers_agree() {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    let mut graphs = 0usize;
    let mut disagreements = 0usize;
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let Ok(g) = Graph::build(6, &edges) else { continue };
        graphs += 1;
        let rep = transport::strong_convexity_characterization(&g).unwrap();
        if !rep.agree {
            disagreements += 1;
        }
    }
    assert!(verdict(
        "13 strong-convexity recognizer agreement",
        disagreements == 0,
        &format!("{graphs} connected labeled graphs on 6 vertices")
    ));
}

/// The stated criterion pins the closed form `n/4 + ((n-1)^2-2)/(8n^2)`;
/// exhaustive enumeration over all n! permutations gives
/// `(n-1)(n+1)^2/(4n^2)` instead (the stated form halves the covariance
/// cross terms). This test asserts the stated
/// value and fails by design; the companion test pins the verified form.
#[test]
fn criterion_14_permutation_variance_as_stated() {
    let r5 = bounds::permutation_variance(5).unwrap();
    let stated5 = Rational::new(5, 4) + Rational::new(14, 200);
    let ok5 = r5.exact == stated5;
    let r7 = bounds::permutation_variance(7).unwrap();
    let ok7 = Some(&r7.exact) == r7.stated_formula.as_ref();
    assert!(
        verdict(
            "14 permutation variance as stated",
            ok5 && ok7,
            &format!("n=5 exhaustive {} vs stated {stated5}; n=7 exhaustive {} vs stated {:?}",
                r5.exact, r7.exact, r7.stated_formula)
        ),
        "exhaustive enumeration contradicts the stated closed form; see \
         criterion_14_permutation_variance_verified"
    );
}

#[test]
fn criterion_14_permutation_variance_verified() {
    let mut ok = true;
    for n in [3u32, 5, 7] {
        let rep = bounds::permutation_variance(n).unwrap();
        ok &= Some(&rep.exact) == rep.corrected_formula.as_ref();
        ok &= rep.exact > rep.stated_formula.clone().unwrap();
        // the lower-bound purpose survives: variance exceeds n/4
        ok &= rep.exact > Rational::new(n as i64, 4);
    }
    let r5 = bounds::permutation_variance(5).unwrap();
    assert!(verdict(
        "14v permutation variance verified form",
        ok,
        &format!("n=5 exhaustive = {} = (n-1)(n+1)^2/(4n^2)", r5.exact)
    ));
}

#[test]
fn criterion_15_level_set_bounds() {
    let grid = grid400();
    let mut ok = true;
    for n in 3..=12u32 {
        for r in 0..=2u32 {
            if r > n || (n - r) % 2 != 0 {
                continue;
            }
            let rep = bounds::level_set_bounds(n, r, &grid).unwrap();
            ok &= rep.estimate_below_bound;
        }
    }
    let mut adversary_ok = true;
    for (k, r) in [(4u32, 0u32), (6, 0), (8, 0), (10, 0), (5, 1), (7, 1), (9, 1), (6, 2), (8, 2), (10, 2)] {
        let rep = bounds::concentration_on_levels_search(k, r).unwrap();
        adversary_ok &= rep.violations == 0;
    }
    assert!(verdict(
        "15 level-set bounds",
        ok && adversary_ok,
        "grid estimates below bounds; adversary found no violation"
    ));
}

#[test]
fn criterion_16_bm_scans() {
    let t0 = Instant::now();
    let h10 = FiniteMetricSpace::hypercube(10);
    let scan = cube::bm_scan(&h10, 10, 10_000, 12, 2, 31337);
    let mut ok = scan.violations == 0;

    let k3 = Arc::new(FiniteMetricSpace::from_graph(family::complete(3)));
    let k4 = Arc::new(FiniteMetricSpace::from_graph(family::complete(4)));
    let k2 = Arc::new(FiniteMetricSpace::from_graph(family::complete(2)));
    let mixed = FiniteMetricSpace::product(vec![k3, k4, k2], ProductMetric::L0).unwrap();
    let scan_mixed = cube::bm_scan(&mixed, 3, 10_000, 6, 2, 31337);
    ok &= scan_mixed.violations == 0;
    assert!(verdict(
        "16 Brunn-Minkowski curvature scans",
        ok,
        &format!(
            "H10 min k_hat {:.4} (>= {:.4}), mixed min {:.4} (>= {:.4}), {:?}",
            scan.min_k_hat, scan.threshold, scan_mixed.min_k_hat, scan_mixed.threshold, t0.elapsed()
        )
    ));
}

#[test]
fn criterion_17_expander() {
    use rand::{Rng, SeedableRng};
    let g = family::petersen();
    let (l2, lmix) = bounds::normalized_spectrum_gap(&g).unwrap();
    let mut ok = (l2 - 1.0 / 3.0).abs() < 1e-9;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..1000 {
        let x = VertexSet::from_iter((0..10).filter(|_| rng.gen_bool(0.5)));
        let y = VertexSet::from_iter((0..10).filter(|_| rng.gen_bool(0.5)));
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let e = bounds::ordered_edge_count(&g, &x, &y) as f64;
        let expected = 3.0 * (x.len() * y.len()) as f64 / 10.0;
        if (e - expected).abs() > lmix * 3.0 * ((x.len() * y.len()) as f64).sqrt() + 1e-9 {
            ok = false;
        }
    }
    assert!(verdict("17 expander spectrum and mixing", ok, &format!("lambda2 = {l2:.9}")));
}

/// The stated criterion also asserts exact degree proportionality on a
/// power-law sample; the defined law is not degree-proportional on
/// irregular trees (a five-path already refutes it), so that clause fails
/// by design. The companion test pins the verified clauses.
#[test]
fn criterion_18_geodesic_laws_as_stated() {
    use concurve::walks::{self, WeightVariant};
    let t0 = Instant::now();
    let k4e = Graph::build(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let sample = walks::power_law_graph(100, 2.5, 4242).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for (name, g) in [("C6", family::cycle(6)), ("K4-e", k4e), ("power-law", sample)] {
        for variant in [WeightVariant::Interior, WeightVariant::EndpointPlus] {
            let law = walks::exact_midpoint_law(&g, variant).unwrap();
            if !law.degree_proportional {
                ok = false;
                detail.push_str(&format!("{name}/{variant:?} not proportional; "));
            }
        }
    }
    detail.push_str(&format!("{:?}", t0.elapsed()));
    assert!(
        verdict("18 geodesic laws as stated", ok && t0.elapsed().as_secs() < 120, &detail),
        "the even-geodesic midpoint law is not degree-proportional on \
         irregular graphs; see criterion_18_geodesic_laws_verified"
    );
}

#[test]
fn criterion_18_geodesic_laws_verified() {
    use concurve::walks::{self, WeightVariant};
    let t0 = Instant::now();
    let k4e = Graph::build(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let mut ok = true;
    for (_name, g) in [("C6", family::cycle(6)), ("K4-e", k4e)] {
        for variant in [WeightVariant::Interior, WeightVariant::EndpointPlus] {
            let law = walks::exact_midpoint_law(&g, variant).unwrap();
            ok &= law.degree_proportional;
        }
    }
    // the law exists and the sampler reproduces it on a power-law sample,
    // even though it is not degree-proportional there
    let sample = walks::power_law_graph(100, 2.5, 4242).unwrap();
    let law = walks::exact_midpoint_law(&sample, WeightVariant::Interior).unwrap();
    ok &= law.even_geodesics > 0;
    let mc = walks::mc_teleport_walk(&sample, 0.99, 1_000_000, 7, WeightVariant::Interior).unwrap();
    ok &= mc.matches_exact_law && mc.occupancy_proportional;
    let mc6 = walks::mc_teleport_walk(&family::cycle(6), 0.99, 1_000_000, 7, WeightVariant::Interior).unwrap();
    ok &= mc6.matches_exact_law && mc6.occupancy_proportional;
    let elapsed = t0.elapsed();
    ok &= elapsed.as_secs() < 120;
    assert!(verdict(
        "18v geodesic laws verified",
        ok,
        &format!("power-law sample n = {}, mc segments {}, {:?}", sample.n(), mc.accepted_segments, elapsed)
    ));
}
