//! Certificate batteries: the worked-example battery re-runs every desk
//! construction against its known value; the invariants battery runs the
//! property checks that hold across the whole library.

use crate::report::ExperimentReport;
use crate::SuiteName;
use anyhow::Result;
use concurve::bounds;
use concurve::cube;
use concurve::field;
use concurve::iso;
use concurve::sigma::{self, GridSpec};
use concurve::space::{family, FiniteMetricSpace};
use concurve::transport::{self, Distribution, TransportPlan};
use concurve::walks::{self, WeightVariant};
use concurve::{BigRational, Rational};
use num_traits::ToPrimitive;

pub fn run_suite(name: SuiteName, seed: u64, rep: &mut ExperimentReport) -> Result<()> {
    match name {
        SuiteName::Examples => worked_examples(rep)?,
        SuiteName::Invariants => invariants(seed, rep)?,
        SuiteName::All => {
            worked_examples(rep)?;
            invariants(seed, rep)?;
        }
    }
    Ok(())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn worked_examples(rep: &mut ExperimentReport) -> Result<()> {
    let grid = GridSpec::default();

    // closed-form subgaussian constants
    let k2 = sigma::subgaussian_constant(&family::complete(2), &grid)?;
    rep.certificate("sigma.k2", "sigma-even-complete", close(k2.sigma2_lower, 0.25, 1e-6));
    let k3 = sigma::subgaussian_constant(&family::complete(3), &grid)?;
    rep.certificate(
        "sigma.k3",
        "sigma-odd-complete",
        close(k3.sigma2_lower, 1.0 / (6.0 * 2f64.ln()), 1e-4),
    );
    let k2sq = sigma::subgaussian_constant(&family::complete(2).cartesian(&family::complete(2)), &grid)?;
    rep.certificate("sigma.k2_square", "sigma-tensoring", close(k2sq.sigma2_lower, 0.5, 1e-4));
    let s2 = bounds::sn_bounds_report(2, &grid)?;
    rep.certificate("sigma.s2", "sigma-doubled-edge", s2.sigma2_exact == Some(1.0));

    // six-vertex log-moment comparison
    let x1 = field::ScalarField::from_integers(&[1, 2, 3, 4, 1, 4], 0);
    let x2 = field::ScalarField::from_integers(&[1, 2, 3, 4, 1, 2], 0);
    let dominated = [3.0, 4.0, 5.0]
        .iter()
        .all(|&t| sigma::log_moment(&x1, t) < sigma::log_moment(&x2, t) - 1e-12);
    rep.certificate("six_vertex.log_moment_order", "six-vertex-log-moment", dominated);

    // odd-cycle envelope witnesses
    for n in [5usize, 7] {
        let oc = sigma::odd_cycle_optimality(n, &grid)?;
        rep.certificate(
            &format!("odd_cycle.c{n}"),
            "odd-cycle-distance-form",
            oc.holds && !oc.even_mode,
        );
    }

    // tripod and caterpillar ball growth
    let tri = iso::tripod_examples(6, iso::TripodVariant::Plain)?;
    rep.certificate(
        "tripod.plain",
        "tripod-ball-growth",
        tri.median_zero_mean_positive
            && tri.x_variance_optimal
            && tri.all_contained
            && tri.growth_formulas == Some(true),
    );
    let star = iso::tripod_examples(7, iso::TripodVariant::Star)?;
    rep.certificate(
        "tripod.star",
        "tripod-star-containment",
        star.set_sizes == (6, 6) && star.x_variance_optimal && star.all_contained,
    );
    let cat = iso::caterpillar_counterexample(4, 1)?;
    rep.certificate(
        "caterpillar.refutation",
        "variance-optimal-not-isoperimetric",
        cat.refutation_cell.is_some() && cat.x_variance_optimal == Some(true),
    );

    // iterated midpoints in dimension 12
    let im = cube::iterated_midpoint_counterexample();
    rep.certificate(
        "cube.iterated_midpoints",
        "iterated-midpoint-escape",
        im.a_convex
            && im.b_convex
            && im.half_levels_ok
            && im.quarter_levels_ok
            && im.phi_in_half
            && im.zeta_in_iterated
            && im.zeta_outside_quarter,
    );

    // negative-curvature instance
    let space = FiniteMetricSpace::hypercube(10);
    let a: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
    let b: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
    let mu_a = Distribution::uniform_points(&a);
    let mu_b = Distribution::uniform_points(&b);
    let (w2, _) = transport::wasserstein(&space, &mu_a, &mu_b, 2)?;
    rep.certificate("transport.w2", "negative-curvature-cost", w2 == BigRational::from_integer(4.into()));
    let diag = diagonal_plan();
    let mu_c = transport::interpolate(&space, &diag, Rational::new(1, 2))?;
    let want = 5f64.ln() / 2.0 + 2f64.ln();
    rep.certificate(
        "transport.diagonal_entropy",
        "negative-curvature-entropy",
        close(mu_c.entropy(), want, 1e-12) && mu_c.entropy() < 5f64.ln(),
    );
    let weak = transport::weak_curvature_bounds(&space, &mu_a, &mu_b)?;
    rep.certificate(
        "transport.weak_bound",
        "weak-curvature-bound",
        weak.components.iter().all(|c| c.holds)
            && weak.global_bound == Some(true)
            && close(weak.midpoint_entropy, 2f64.ln() + 5f64.ln(), 1e-8),
    );

    // permutation variance
    let pv = bounds::permutation_variance(5)?;
    rep.quantity("bounds.permutation_variance_5", pv.exact.to_string(), "exhaustive");
    rep.certificate(
        "bounds.permutation_variance",
        "permutation-variance-form",
        Some(&pv.exact) == pv.corrected_formula.as_ref(),
    );

    // level bounds
    let lv = bounds::level_set_bounds(3, 1, &grid)?;
    rep.certificate("bounds.levels_3_1", "level-set-bound", close(lv.bound, 2.25, 1e-12));
    let factor = bounds::concentration_on_levels_bound(8, 0, 4.0);
    rep.certificate(
        "bounds.levels_factor",
        "levels-concentration",
        close(factor, (-16f64 / 56.0).exp(), 1e-12),
    );

    // expander spectrum
    let (l2, _) = bounds::normalized_spectrum_gap(&family::petersen())?;
    rep.certificate("expander.petersen_lambda", "petersen-spectrum", close(l2, 1.0 / 3.0, 1e-9));

    // geodesic midpoint laws on the symmetric cases
    let c6 = walks::exact_midpoint_law(&family::cycle(6), WeightVariant::Interior)?;
    rep.certificate("walks.c6", "midpoint-degree-proportionality", c6.degree_proportional);
    Ok(())
}

fn diagonal_plan() -> TransportPlan {
    let rows: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
    let cols: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
    let mut mass = vec![vec![BigRational::from_integer(0.into()); 5]; 5];
    for (i, row) in mass.iter_mut().enumerate() {
        row[i] = BigRational::new(1.into(), 5.into());
    }
    TransportPlan::new(rows, cols, mass)
}

fn invariants(seed: u64, rep: &mut ExperimentReport) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let grid = GridSpec::default();

    // metric axioms on the constructed families
    for (name, space) in [
        ("tripod4", FiniteMetricSpace::from_graph(family::tripod(4))),
        ("hypercube4", FiniteMetricSpace::hypercube(4)),
        ("s4", FiniteMetricSpace::symmetric_group(4)?),
        ("levels", FiniteMetricSpace::boolean_levels(6, &[2, 4])?),
    ] {
        rep.certificate(
            &format!("metric.{name}"),
            "metric-axioms",
            space.validate_metric().is_ok(),
        );
    }

    // variance below the subgaussian estimate across the suite
    let mut suite: Vec<(String, concurve::space::Graph)> = Vec::new();
    for n in 2..=5 {
        suite.push((format!("k{n}"), family::complete(n)));
    }
    for n in 3..=8 {
        suite.push((format!("c{n}"), family::cycle(n)));
    }
    for n in 2..=8 {
        suite.push((format!("p{n}"), family::path(n)));
    }
    for k in 1..=4 {
        suite.push((format!("tripod{k}"), family::tripod(k)));
    }
    for k in 1..=3 {
        suite.push((format!("caterpillar{k}"), family::caterpillar(k)));
    }
    for d in 1..=4 {
        suite.push((format!("hypercube{d}"), family::hypercube(d)));
    }
    let mut all_ok = true;
    for (_, g) in &suite {
        let (c2, _) = field::max_variance(g)?;
        let est = sigma::subgaussian_constant(g, &grid)?;
        if c2.to_f64().unwrap() > est.sigma2_lower + 1e-3 {
            all_ok = false;
        }
    }
    rep.certificate("variance_below_sigma", "variance-below-subgaussian", all_ok);

    // subgraph monotonicity on nested pairs over the same vertex set
    let nested = [
        (family::path(5), family::cycle(5)),
        (family::cycle(5), family::complete(5)),
    ];
    let mut mono_ok = true;
    for (g, h) in &nested {
        let (c2g, _) = field::max_variance(g)?;
        let (c2h, _) = field::max_variance(h)?;
        let sg = sigma::subgaussian_constant(g, &grid)?.sigma2_lower;
        let sh = sigma::subgaussian_constant(h, &grid)?.sigma2_lower;
        if c2g < c2h || sg < sh - 1e-9 {
            mono_ok = false;
        }
    }
    rep.certificate("subgraph_monotonicity", "subgraph-monotonicity", mono_ok);

    // permutation-invariance of the log-moment function
    let g = family::cycle(5);
    let f = field::ScalarField::from_integers(&[0, 1, 2, 2, 1], 0);
    let pi = [1usize, 2, 3, 4, 0];
    let fp = field::ScalarField::from_integers(
        &pi.iter().map(|&v| f.as_integers().unwrap()[v]).collect::<Vec<_>>(),
        0,
    );
    let perm_ok = [0.5, 1.0, 2.0]
        .iter()
        .all(|&t| close(sigma::log_moment(&f, t), sigma::log_moment(&fp, t), 1e-14));
    rep.certificate("log_moment_permutation", "log-moment-symmetry", perm_ok);
    let _ = g;

    // envelope small-t limit matches the maximum variance
    let mut env_ok = true;
    for g in [family::cycle(5), family::path(4)] {
        let (c2, _) = field::max_variance(&g)?;
        let curve = sigma::log_moment_envelope(&g, &grid)?;
        for ti in 0..2 {
            let v = 2.0 * curve.values[ti] / (curve.ts[ti] * curve.ts[ti]);
            if !close(v, c2.to_f64().unwrap(), 1e-3) {
                env_ok = false;
            }
        }
    }
    rep.certificate("envelope_small_t", "envelope-variance-limit", env_ok);

    // ball composition on a tripod
    let sp = FiniteMetricSpace::from_graph(family::tripod(3));
    let s = iso::VertexSet::from_iter([2, 5]);
    let mut ball_ok = true;
    for a in 0..3i64 {
        let ba = iso::ball(&sp, &s, a)?;
        for b in 0..3i64 {
            if iso::ball(&sp, &ba, b)? != iso::ball(&sp, &s, a + b)? {
                ball_ok = false;
            }
        }
    }
    rep.certificate("ball_composition", "ball-composition", ball_ok);

    // transport marginals, interpolation mass, partition reconstruction
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let space = FiniteMetricSpace::hypercube(5);
    let mut transport_ok = true;
    let mut monotone_ok = true;
    for _ in 0..20 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let size = rng.gen_range(1..=4usize);
            let mut pts = std::collections::BTreeSet::new();
            while pts.len() < size {
                pts.insert(rng.gen_range(0..32usize));
            }
            Distribution::uniform_points(&pts.into_iter().collect::<Vec<_>>())
        };
        let mu_a = pick(&mut rng);
        let mu_b = pick(&mut rng);
        let (_, plan) = transport::wasserstein(&space, &mu_a, &mu_b, 2)?;
        if !plan.marginals_match(&mu_a, &mu_b) {
            transport_ok = false;
        }
        let mu_t = transport::interpolate(&space, &plan, Rational::new(1, 2))?;
        if mu_t.total() != BigRational::from_integer(1.into()) {
            transport_ok = false;
        }
        let (mono, _) = transport::is_cyclically_monotone(&space, &plan, 6);
        if !mono {
            monotone_ok = false;
        }
    }
    rep.certificate("transport_marginals", "plan-marginals", transport_ok);
    rep.certificate("optimal_monotone", "cyclical-monotonicity", monotone_ok);

    // small curvature scans
    let h6 = FiniteMetricSpace::hypercube(6);
    let scan = cube::bm_scan(&h6, 6, 300, 8, 2, seed);
    rep.certificate("bm_scan_h6", "bm-curvature-floor", scan.violations == 0);

    // weak curvature sweep on seeded constant-distance instances
    let mut sweep_ok = true;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x77);
    for _ in 0..50 {
        let d = rng.gen_range(3..=8u32);
        let (sp, mu_a, mu_b, _) =
            transport::convexity::random_constant_distance_instance(d, &mut rng);
        let out = transport::weak_curvature_bounds(&sp, &mu_a, &mu_b)?;
        if !(out.components.iter().all(|c| c.holds) && out.almost_curved_holds) {
            sweep_ok = false;
        }
    }
    rep.certificate("weak_curvature_sweep", "weak-curvature-bound", sweep_ok);

    // coordinate-switching map on a hypercube instance
    let h6 = FiniteMetricSpace::hypercube(6);
    let s_set = iso::VertexSet::from_iter([0b000000usize, 0b000011]);
    let t_set = iso::VertexSet::from_iter([0b111100usize, 0b111111]);
    let phi = cube::phi_injection_check(&h6, &s_set, &t_set, Rational::new(1, 2), 4);
    rep.certificate(
        "phi_injection",
        "switching-map-injectivity",
        phi.layer_ok && phi.image_distance_ok && phi.inversion_ok && phi.injective_per_class,
    );

    // partitionless support structure on the negative-curvature instance
    let (space10, mu_a10, mu_b10) = {
        let space = FiniteMetricSpace::hypercube(10);
        let a: Vec<usize> = (0..5).map(|i| 1usize << i).collect();
        let b: Vec<usize> = (0..5).map(|i| 1usize << (5 + i)).collect();
        (space, Distribution::uniform_points(&a), Distribution::uniform_points(&b))
    };
    let (me_plan, _) = transport::max_entropy_optimal_plan(&space10, &mu_a10, &mu_b10)?;
    let large = transport::everybody_is_large_check(&space10, &me_plan)?;
    rep.certificate(
        "everybody_is_large",
        "constant-distance-support",
        large.constant_on_support && large.cross_distances_at_least_d && large.w1_equals_d && large.w2_equals_d2,
    );

    // tail chain: exhaustive tails below the closed form on one graph
    let g5 = family::cycle(5);
    let est5 = sigma::subgaussian_constant(&g5, &grid)?;
    let mut tails_ok = true;
    for f in field::enumerate_extremal_fields(&g5)? {
        for h in [Rational::new(1, 2), Rational::new(1, 1)] {
            let p = bounds::empirical_tail(&f, h).to_f64().unwrap();
            let bound = bounds::tail_bound(est5.sigma2_lower, h.to_f64().unwrap(), bounds::TailVariant::Plain)
                .unwrap();
            tails_ok &= p <= bound + 1e-9;
        }
    }
    rep.certificate("tails_below_bounds", "tail-chain", tails_ok);

    // deterministic power-law sampling feeds the geodesic laws
    let sample = walks::power_law_graph(100, 2.5, seed.wrapping_add(1))?;
    let law = walks::exact_midpoint_law(&sample, WeightVariant::Interior)?;
    rep.certificate("power_law_law_exists", "power-law-sample", law.even_geodesics > 0);

    // strong-convexity recognizer agreement on all labeled graphs with 5
    // vertices (the full check lives in the acceptance suite)
    let mut agree = true;
    let pairs: Vec<(usize, usize)> =
        (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let Ok(g) = concurve::space::Graph::build(5, &edges) else {
            continue;
        };
        let out = transport::strong_convexity_characterization(&g)?;
        if !out.agree {
            agree = false;
        }
    }
    rep.certificate("strong_convexity_agreement", "strong-convexity-characterization", agree);

    Ok(())
}
