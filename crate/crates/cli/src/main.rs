//! Command-line entry point: every library operation is reachable from a
//! subcommand, runs deterministically under a single seed, and emits a
//! JSON experiment report with pass/fail certificates.

mod io;
mod report;
mod suite;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use concurve::bounds::{self, TailVariant};
use concurve::cube;
use concurve::field;
use concurve::iso;
use concurve::sigma::{self, GridSpec};
use concurve::space::FiniteMetricSpace;
use concurve::transport::{self, ConvexityFlavor};
use concurve::walks::{self, WeightVariant};
use concurve::Rational;
use num_traits::ToPrimitive;
use report::{digest, ExperimentReport};

/// Concentration and curvature certificates on finite metric spaces.
#[derive(Parser)]
#[command(name = "concurve", version, about)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Root seed for every randomized certificate.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Report format (json only).
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subgaussian constant of a graph from the extremal-field envelope.
    Sigma {
        graph: String,
        #[arg(long, default_value_t = 1e-3)]
        tmin: f64,
        #[arg(long, default_value_t = 50.0)]
        tmax: f64,
        #[arg(long, default_value_t = 400)]
        tpoints: usize,
    },
    /// Maximum variance over Lipschitz fields, with witnesses.
    Cvar { graph: String },
    /// Structural checks of a field on a graph.
    Structure { graph: String, field: String },
    /// Exact isoperimetric minimum over majority-size sets.
    Iso {
        graph: String,
        #[arg(long)]
        d: i64,
    },
    /// Ball-growth counterexample constructions.
    #[command(subcommand)]
    Counterexample(Counterexample),
    /// Midpoints of a pair of points.
    Midpoints {
        space: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "1/2")]
        rho: String,
    },
    /// Convex closure of a point set.
    Closure {
        space: String,
        #[arg(long)]
        set: String,
    },
    /// Randomized Brunn-Minkowski curvature scan.
    BmScan {
        space: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        size_max: usize,
        #[arg(long, default_value_t = 2)]
        d_star_min: i64,
        /// Product dimension; defaults to the hypercube dimension or the
        /// factor count.
        #[arg(long)]
        dimension: Option<u32>,
    },
    /// Optimal transport between two distributions.
    Ot {
        space: String,
        #[arg(long)]
        mu_a: String,
        #[arg(long)]
        mu_b: String,
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Also compute the entropy-maximizing optimal plan.
        #[arg(long)]
        max_entropy: bool,
        /// Also cancel support cycles down to a forest.
        #[arg(long)]
        forest: bool,
    },
    /// Displacement-convexity slack for a flavor of plans.
    ConvexityCheck {
        space: String,
        #[arg(long)]
        mu_a: String,
        #[arg(long)]
        mu_b: String,
        #[arg(long, default_value = "1/2")]
        t: String,
        #[arg(long, default_value_t = 0.0)]
        k: f64,
        #[arg(long, value_enum, default_value_t = FlavorArg::Sow)]
        flavor: FlavorArg,
    },
    /// Closed-form and empirical concentration bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Spectral expander midpoint report.
    Expander {
        graph: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Exact and Monte Carlo degree-weighted midpoint laws.
    GeodesicLaw {
        graph: String,
        #[arg(long, default_value_t = 1)]
        variant: u8,
        /// Run the teleport-walk sampler as well.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 0.9)]
        c: f64,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
    },
    /// Certificate batteries.
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
    },
    /// Random-tree search for the root-distance form of variance-optimal
    /// fields.
    TreeSearch {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum Counterexample {
    Caterpillar {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    Tripod {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        star: bool,
    },
    /// The fixed 12-dimensional iterated-midpoint instance.
    IteratedMidpoint,
}

#[derive(Subcommand)]
enum BoundsCmd {
    Tail {
        #[arg(long)]
        sigma2: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, value_enum, default_value_t = TailArg::Plain)]
        variant: TailArg,
    },
    Sn {
        #[arg(long)]
        n: u32,
    },
    Levels {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Also run the adversarial two-level search at this k.
        #[arg(long)]
        adversary_k: Option<u32>,
    },
    /// Exhaustive permutation variance with closed forms.
    Permutation {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TailArg {
    Plain,
    Skewed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Strong,
    Sos,
    Sow,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteName {
    /// The desk-scale worked examples with their known values.
    Examples,
    /// Randomized and exhaustive structural properties.
    Invariants,
    All,
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    if cli.format != "json" {
        eprintln!("unsupported format {:?}", cli.format);
        std::process::exit(2);
    }
    let argv: Vec<String> = std::env::args().collect();
    let started = std::time::Instant::now();
    let mut rep = ExperimentReport::new(argv, cli.seed);
    let outcome = run(&cli, &mut rep);
    rep.wall_time_ms = started.elapsed().as_millis() as u64;
    match outcome {
        Ok(()) => {
            let text = serde_json::to_string_pretty(&rep).expect("report serializes");
            match &cli.out {
                Some(path) => std::fs::write(path, text).expect("write report"),
                None => println!("{text}"),
            }
            std::process::exit(if rep.all_pass() { 0 } else { 1 });
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn grid(tmin: f64, tmax: f64, tpoints: usize) -> GridSpec {
    GridSpec { t_min: tmin, t_max: tmax, points: tpoints }
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn run(cli: &Cli, rep: &mut ExperimentReport) -> Result<()> {
    match &cli.command {
        Command::Sigma { graph, tmin, tmax, tpoints } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let est = sigma::subgaussian_constant(&g, &grid(*tmin, *tmax, *tpoints))?;
            rep.quantity("sigma2_lower", est.sigma2_lower, "grid-estimate");
            rep.quantity("sigma2_grid_sup", est.sigma2_grid_sup, "grid-estimate");
            rep.quantity("t_star", est.t_star, "grid-estimate");
            rep.quantity(
                "witness",
                est.witness.as_integers().unwrap_or_default(),
                "exhaustive",
            );
            let var = est.witness.variance();
            rep.certificate(
                "witness_variance_below_sigma2",
                "variance-below-subgaussian",
                var.to_f64().unwrap_or(f64::NAN) <= est.sigma2_lower + 1e-9,
            );
            rep.certificate(
                "lower_at_most_sup",
                "grid-sup-ordering",
                est.sigma2_lower <= est.sigma2_grid_sup,
            );
        }
        Command::Cvar { graph } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let (c2, witnesses) = field::max_variance(&g)?;
            rep.quantity("c2", rat_str(&c2), "exhaustive");
            rep.quantity("witness_count", witnesses.len(), "exhaustive");
            rep.quantity(
                "witnesses",
                witnesses.iter().take(8).map(|w| w.as_integers().unwrap_or_default()).collect::<Vec<_>>(),
                "exhaustive",
            );
            let space = FiniteMetricSpace::from_graph(g.clone());
            let all_lip = witnesses
                .iter()
                .all(|w| field::is_lipschitz(w, &space, Rational::from_integer(1)).0);
            rep.certificate("witnesses_lipschitz", "extremal-fields-lipschitz", all_lip);
        }
        Command::Structure { graph, field: field_path } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let space = FiniteMetricSpace::from_graph(g.clone());
            let text = std::fs::read_to_string(field_path).context("reading field file")?;
            rep.input("field", digest(text.as_bytes()));
            let f = io::load_field(&space, field_path)?;
            let (lip, _) = field::is_lipschitz(&f, &space, Rational::from_integer(1));
            rep.certificate("field_lipschitz", "lipschitz-precondition", lip);
            let s = sigma::structure_checks(&f, &g);
            rep.certificate_with("hairs_unimodular", "hair-unimodularity", s.hairs_unimodular.pass, s.hairs_unimodular.witness);
            rep.certificate_with("origin_full", "origin-distance-form", s.origin_full.pass, s.origin_full.witness);
            rep.certificate_with("origin_below", "origin-below-mean-half", s.origin_below.pass, s.origin_below.witness);
            rep.certificate_with("descent", "descent-above-mean", s.descent.pass, s.descent.witness);
            rep.quantity("report", &s, "exhaustive");
        }
        Command::Iso { graph, d } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let (value, argmin) = iso::iso_function(&g, *d)?;
            let space = FiniteMetricSpace::from_graph(g.clone());
            rep.quantity("iso_value", value, "exhaustive");
            rep.quantity("argmin", io::set_labels(&space, &argmin), "exhaustive");
            rep.certificate("argmin_is_majority", "majority-size-domain", argmin.len() >= g.n().div_ceil(2));
        }
        Command::Counterexample(sub) => run_counterexample(sub, rep)?,
        Command::Midpoints { space, a, b, rho } => {
            rep.input("space", digest(space.as_bytes()));
            let sp = io::load_space(space)?;
            let a = io::resolve_label(&sp, a)?;
            let b = io::resolve_label(&sp, b)?;
            let rho = io::parse_rational(rho)?;
            let hat = cube::midpoints_hat_pair(&sp, a, b, rho);
            rep.quantity("midpoints_hat", io::set_labels(&sp, &hat), "exact");
            match cube::midpoints_tilde(&sp, a, b) {
                Ok(atoms) => {
                    let labels: Vec<String> = atoms
                        .iter()
                        .map(|at| match at {
                            cube::MidpointAtom::Point(p) => sp.label(*p).to_string(),
                            cube::MidpointAtom::Edge(u, v) => {
                                format!("{{{},{}}}", sp.label(*u), sp.label(*v))
                            }
                        })
                        .collect();
                    rep.quantity("midpoints_tilde", labels, "exact");
                }
                Err(e) => rep.quantity("midpoints_tilde_error", e.to_string(), "exact"),
            }
            let on_geo = hat.iter().all(|u| sp.dist(a, u) + sp.dist(u, b) == sp.dist(a, b));
            rep.certificate("midpoints_on_geodesics", "geodesic-membership", on_geo);
        }
        Command::Closure { space, set } => {
            rep.input("space", digest(space.as_bytes()));
            let sp = io::load_space(space)?;
            let text = std::fs::read_to_string(set).context("reading set file")?;
            rep.input("set", digest(text.as_bytes()));
            let s = io::load_set(&sp, set)?;
            let closure = cube::convex_closure(&sp, &s)?;
            rep.quantity("closure", io::set_labels(&sp, &closure), "exact");
            rep.quantity("closure_size", closure.len(), "exact");
            rep.certificate("closure_convex", "closure-fixpoint", cube::is_convex(&sp, &closure));
            rep.certificate(
                "closure_idempotent",
                "closure-idempotence",
                cube::convex_closure(&sp, &closure)? == closure,
            );
        }
        Command::BmScan { space, samples, size_max, d_star_min, dimension } => {
            rep.input("space", digest(space.as_bytes()));
            let sp = io::load_space(space)?;
            let dim = dimension
                .or_else(|| sp.is_hypercube())
                .or_else(|| sp.product_factors().map(|f| f.len() as u32))
                .context("pass --dimension for this space")?;
            let scan = cube::bm_scan(&sp, dim, *samples, *size_max, *d_star_min, cli.seed);
            rep.quantity("min_k_hat", scan.min_k_hat, "sampled");
            rep.quantity("threshold", scan.threshold, "closed-form");
            rep.quantity("samples", scan.samples, "sampled");
            rep.certificate("curvature_at_least_half_inverse_dim", "bm-curvature-floor", scan.violations == 0);
        }
        Command::Ot { space, mu_a, mu_b, order, max_entropy, forest } => {
            rep.input("space", digest(space.as_bytes()));
            let sp = io::load_space(space)?;
            let da = io::load_distribution(&sp, mu_a)?;
            let db = io::load_distribution(&sp, mu_b)?;
            let (cost, plan) = transport::wasserstein(&sp, &da, &db, *order)?;
            rep.quantity(format!("w{order}").as_str(), cost.to_string(), "exact");
            rep.quantity("support_pairs", plan.support_pairs().len(), "exact");
            rep.certificate("marginals_exact", "plan-marginals", plan.marginals_match(&da, &db));
            let (mono, _) = transport::is_cyclically_monotone(&sp, &plan, 6);
            rep.certificate("optimal_plan_monotone", "cyclical-monotonicity", mono);
            if *max_entropy {
                let (me, info) = transport::max_entropy_optimal_plan(&sp, &da, &db)?;
                rep.quantity("max_entropy_plan_entropy", me.entropy(), "fitted");
                rep.quantity("max_entropy_residual", info.marginal_residual, "fitted");
                rep.certificate(
                    "max_entropy_product_structure",
                    "midpoint-product-structure",
                    transport::midpoint_product_structure(&sp, &me, 1e-8),
                );
            }
            if *forest {
                let (fcost, fplan) = transport::acyclic_optimal_transport(&sp, &da, &db)?;
                rep.quantity("forest_support_pairs", fplan.support_pairs().len(), "exact");
                rep.certificate("forest_cost_unchanged", "forest-transport-cost", fcost == cost || *order != 2);
                rep.certificate("forest_support", "forest-support", transport::support_is_forest(&fplan));
            }
        }
        Command::ConvexityCheck { space, mu_a, mu_b, t, k, flavor } => {
            rep.input("space", digest(space.as_bytes()));
            let sp = io::load_space(space)?;
            let da = io::load_distribution(&sp, mu_a)?;
            let db = io::load_distribution(&sp, mu_b)?;
            let t = io::parse_rational(t)?;
            let flavor = match flavor {
                FlavorArg::Strong => ConvexityFlavor::Strong,
                FlavorArg::Sos => ConvexityFlavor::SortOfStrong,
                FlavorArg::Sow => ConvexityFlavor::SortOfWeak,
                FlavorArg::Weak => ConvexityFlavor::Weak,
            };
            let out = transport::convexity::flavor_slack(&sp, &da, &db, t, *k, flavor, 1000)?;
            rep.quantity("min_slack", out.min_slack, "exact");
            rep.quantity("plans_checked", out.plans_checked, "exact");
            rep.quantity("sampled", out.sampled, "exact");
            rep.certificate("entropy_interpolation", "displacement-convexity", out.min_slack >= -1e-9);
        }
        Command::Bounds(sub) => run_bounds(sub, rep)?,
        Command::Expander { graph, s, t } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let sp = FiniteMetricSpace::from_graph(g.clone());
            let s = io::load_set(&sp, s)?;
            let t = io::load_set(&sp, t)?;
            let out = bounds::expander_midpoints(&g, &s, &t)?;
            rep.quantity("lambda2", out.lambda2, "eigensolve");
            rep.quantity("lambda_mix", out.lambda_mix, "eigensolve");
            rep.quantity("d_star", out.d_star, "exact");
            rep.quantity("midpoint_count", out.midpoint_count, "exact");
            rep.quantity("edge_bound", out.edge_bound, "exact");
            rep.quantity("degenerate", out.degenerate, "exact");
            rep.certificate("mixing_lemma", "expander-mixing", out.mixing_holds);
        }
        Command::GeodesicLaw { graph, variant, mc, c, steps } => {
            rep.input("graph", digest(graph.as_bytes()));
            let g = io::load_graph(graph)?;
            let variant = match variant {
                1 => WeightVariant::Interior,
                2 => WeightVariant::EndpointPlus,
                other => anyhow::bail!("variant must be 1 or 2, got {other}"),
            };
            let law = walks::exact_midpoint_law(&g, variant)?;
            rep.quantity("even_geodesics", law.even_geodesics, "exhaustive");
            rep.quantity(
                "law",
                law.law.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "exhaustive",
            );
            rep.quantity("excluded_odd_mass", law.excluded_odd_mass.to_string(), "exhaustive");
            rep.certificate("degree_proportional", "midpoint-degree-proportionality", law.degree_proportional);
            if *mc {
                let mcrep = walks::mc_teleport_walk(&g, *c, *steps, cli.seed, variant)?;
                rep.quantity("accepted_segments", mcrep.accepted_segments, "sampled");
                rep.quantity("chi_square", mcrep.chi_square, "sampled");
                rep.certificate("occupancy_degree_proportional", "token-occupancy", mcrep.occupancy_proportional);
                rep.certificate("mc_matches_exact_law", "mc-law-agreement", mcrep.matches_exact_law);
            }
        }
        Command::Suite { name } => {
            suite::run_suite(*name, cli.seed, rep)?;
        }
        Command::TreeSearch { trials, max_n } => {
            let out = sigma::tree_conjecture_search(*trials, *max_n, cli.seed)?;
            rep.quantity("trials", out.trials, "sampled");
            rep.quantity(
                "counterexamples",
                out.cases.iter().filter(|c| !c.holds).count(),
                "exhaustive",
            );
            rep.certificate("root_distance_form", "tree-root-distance-form", out.all_hold);
        }
    }
    Ok(())
}

fn run_counterexample(sub: &Counterexample, rep: &mut ExperimentReport) -> Result<()> {
    match sub {
        Counterexample::Caterpillar { k, n } => {
            let out = iso::caterpillar_counterexample(*k, *n)?;
            rep.quantity("containment_failures", &out.containment_failures, "exhaustive");
            rep.quantity("strict_cells", &out.strict_cells, "exhaustive");
            rep.quantity("median_times_2", out.median_times_2, "exact");
            rep.quantity("refutation_cell", out.refutation_cell, "exhaustive");
            if let Some(x_opt) = out.x_variance_optimal {
                rep.certificate("x_variance_optimal", "caterpillar-x-optimal", x_opt);
            }
            rep.certificate(
                "majority_refutation_exists",
                "variance-optimal-not-isoperimetric",
                out.refutation_cell.is_some(),
            );
            rep.certificate("strictness_nonempty", "caterpillar-strict-cells", !out.strict_cells.is_empty());
        }
        Counterexample::Tripod { k, star } => {
            let variant = if *star { iso::TripodVariant::Star } else { iso::TripodVariant::Plain };
            let out = iso::tripod_examples(*k, variant)?;
            rep.quantity("set_sizes", out.set_sizes, "exact");
            rep.quantity("cells", &out.cells, "exhaustive");
            rep.quantity("exhaustive_only", out.exhaustive_only, "exact");
            rep.certificate("median_zero_mean_positive", "tripod-median-mean", out.median_zero_mean_positive);
            rep.certificate("x_variance_optimal", "tripod-x-optimal", out.x_variance_optimal);
            rep.certificate("psi_maps_levels", "tripod-psi-levels", out.psi_maps_levels);
            rep.certificate("containment", "tripod-ball-containment", out.all_contained);
            if let Some(growth) = out.growth_formulas {
                rep.certificate("growth_formulas", "tripod-ball-growth", growth);
            }
        }
        Counterexample::IteratedMidpoint => {
            let out = cube::iterated_midpoint_counterexample();
            rep.certificate("a_convex", "iterated-midpoint-convexity", out.a_convex);
            rep.certificate("b_convex", "iterated-midpoint-convexity", out.b_convex);
            rep.certificate("half_levels", "iterated-midpoint-half-levels", out.half_levels_ok);
            rep.certificate("quarter_levels", "iterated-midpoint-quarter-levels", out.quarter_levels_ok);
            rep.certificate("phi_in_half", "iterated-midpoint-phi", out.phi_in_half);
            rep.certificate("zeta_escapes", "iterated-midpoint-zeta", out.zeta_in_iterated && out.zeta_outside_quarter);
            rep.certificate(
                "iterated_superset",
                "iterated-midpoint-superset",
                out.iterated_superset_of_quarter,
            );
            rep.quantity("zeta_size", out.zeta_size, "exact");
        }
    }
    Ok(())
}

fn run_bounds(sub: &BoundsCmd, rep: &mut ExperimentReport) -> Result<()> {
    match sub {
        BoundsCmd::Tail { sigma2, h, variant } => {
            let variant = match variant {
                TailArg::Plain => TailVariant::Plain,
                TailArg::Skewed => TailVariant::Skewed,
            };
            let v = bounds::tail_bound(*sigma2, *h, variant)?;
            rep.quantity("bound", v, "closed-form");
            rep.certificate("bound_in_unit_interval", "tail-bound-range", (0.0..=1.0).contains(&v));
        }
        BoundsCmd::Sn { n } => {
            let out = bounds::sn_bounds_report(*n, &GridSpec::default())?;
            rep.quantity("sigma2_estimate", out.sigma2_estimate, "grid-estimate");
            rep.quantity("sigma2_exact", out.sigma2_exact, "closed-form");
            rep.quantity("sigma2_j", out.sigma2_j, "closed-form");
            rep.certificate("above_quarter_n", "permutation-lower-bound", out.above_quarter_n);
            rep.certificate("below_n_minus_1", "permutation-upper-bound", out.below_n_minus_1);
            rep.certificate("j_gap", "nested-complete-gap", out.j_gap);
        }
        BoundsCmd::Levels { n, r, adversary_k } => {
            let out = bounds::level_set_bounds(*n, *r, &GridSpec::default())?;
            rep.quantity("bound", out.bound, "closed-form");
            rep.quantity("sigma2_estimate", out.sigma2_estimate, "grid-estimate");
            rep.certificate("estimate_below_bound", "level-set-bound", out.estimate_below_bound);
            if let Some(k) = adversary_k {
                let adv = bounds::concentration_on_levels_search(*k, *r)?;
                rep.quantity("adversary_candidates", adv.candidates_checked, "exhaustive");
                rep.certificate("no_adversarial_violation", "levels-concentration", adv.violations == 0);
            }
        }
        BoundsCmd::Permutation { n } => {
            let out = bounds::permutation_variance(*n)?;
            rep.quantity("exact", rat_str(&out.exact), "exhaustive");
            if let Some(f) = &out.stated_formula {
                rep.quantity("stated_formula", rat_str(f), "closed-form");
            }
            if let Some(f) = &out.corrected_formula {
                rep.quantity("corrected_formula", rat_str(f), "closed-form");
                rep.certificate("exact_matches_corrected_form", "permutation-variance-form", out.exact == *f);
            }
            let nf = *n as f64;
            rep.certificate(
                "exceeds_quarter_n",
                "permutation-variance-floor",
                out.exact.to_f64().unwrap() > nf / 4.0 || *n < 3,
            );
        }
    }
    Ok(())
}
