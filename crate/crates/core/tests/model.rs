#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use improvelearn::graph::Graph;
use improvelearn::model::{
    enabling_loss, improvement_loss, population_loss_exact, population_loss_mc, strategic_loss, uniform_line_loss,
    EvalOptions, InstanceSpace, LossKind, ReactionCase, Region,
};
use improvelearn::{DistributionSpec, Error, Hypothesis, ImprovementMap, Interval, Point};
use proptest::prelude::*;

fn p(x: f64) -> Point {
    Point::scalar(x)
}

fn ball(r: f64) -> ImprovementMap {
    ImprovementMap::interval_ball(r)
}

#[test]
fn improvement_loss_threshold_cases() {
    let h = Hypothesis::threshold(0.5);
    let out = improvement_loss(&p(0.7), &h, &h, &ball(0.1)).unwrap();
    assert_eq!(out.case, ReactionCase::PositiveStays);
    assert!(!out.loss_bit && !out.moved);

    let h = Hypothesis::threshold(0.55);
    let f = Hypothesis::threshold(0.5);
    let out = improvement_loss(&p(0.5), &h, &f, &ball(0.1)).unwrap();
    assert!(out.moved && !out.loss_bit && out.witness.is_none());

    // far below: nothing reachable, and f* negative there
    let out = improvement_loss(&p(0.2), &h, &f, &ball(0.1)).unwrap();
    assert_eq!(out.case, ReactionCase::NegativeStays);
    assert!(!out.loss_bit);
    // between t* and t_h - r: stays negative although truly positive
    let out = improvement_loss(&p(0.51), &Hypothesis::threshold(0.7), &f, &ball(0.1)).unwrap();
    assert_eq!(out.case, ReactionCase::NegativeStays);
    assert!(out.loss_bit);
}

#[test]
fn moving_to_a_false_positive_has_a_witness() {
    // positive region [0.1, 0.3) U (0.3, 0.9] but f* negative on [0, 0.5)
    let h = Hypothesis::intervals(vec![Interval::closed_open(0.1, 0.3), Interval::open_closed(0.3, 0.9)]).unwrap();
    let f = Hypothesis::threshold(0.5);
    let grid: Vec<Point> = (0..=100).map(|i| p(i as f64 / 100.0)).collect();
    let whole = ImprovementMap::WholeSpace(InstanceSpace::Finite(grid.clone()));
    let out = improvement_loss(&p(0.95), &h, &f, &whole).unwrap();
    assert!(out.moved && out.loss_bit);
    let w = out.witness.unwrap();
    assert!(h.predict(&w) && !f.predict(&w));
    // brute force over the grid agrees that such a point exists
    assert!(grid.iter().any(|q| h.predict(q) && !f.predict(q)));

    // continuous whole space on [0, 1] through the interval path
    let cont = ImprovementMap::WholeSpace(InstanceSpace::Interval { lo: 0.0, hi: 1.0 });
    let out = improvement_loss(&p(0.95), &h, &f, &cont).unwrap();
    assert!(out.loss_bit);
    let w = out.witness.unwrap();
    assert!(h.predict(&w) && !f.predict(&w));
}

#[test]
fn strategic_loss_examples() {
    let h = Hypothesis::threshold(0.55);
    let f = Hypothesis::threshold(0.5);
    assert!(!strategic_loss(&p(0.5), &h, &f, &ball(0.1)).unwrap());
    assert!(strategic_loss(&p(0.48), &h, &f, &ball(0.1)).unwrap());
    for x in [0.0, 0.3, 0.7] {
        assert!(!strategic_loss(&p(x), &Hypothesis::ConstantZero, &Hypothesis::ConstantZero, &ball(0.3)).unwrap());
    }
    // h = f*: agents that stay keep their label, but a negative agent that
    // reaches the positive region games h under the strategic semantics
    assert!(!strategic_loss(&p(0.0), &f, &f, &ball(0.3)).unwrap());
    assert!(!strategic_loss(&p(0.7), &f, &f, &ball(0.3)).unwrap());
    assert!(strategic_loss(&p(0.3), &f, &f, &ball(0.3)).unwrap());
    assert!(!improvement_loss(&p(0.3), &f, &f, &ball(0.3)).unwrap().loss_bit);
}

fn path3() -> Arc<Graph> {
    // 0 - 1 - 2 with node 1 the agent under test
    Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap())
}

#[test]
fn enabling_loss_examples() {
    let g = path3();
    let delta = ImprovementMap::graph(g, 1);
    let f = Hypothesis::positive_on(3, [0]);
    assert!(!enabling_loss(&Point::from_id(0), &Hypothesis::ConstantZero, &f, &delta).unwrap());
    let h = Hypothesis::positive_on(3, [2]);
    assert!(!enabling_loss(&Point::from_id(1), &h, &f, &delta).unwrap());
    assert!(enabling_loss(&Point::from_id(1), &Hypothesis::ConstantZero, &f, &delta).unwrap());
    // h offers a path that f* does not
    let f_none = Hypothesis::positive_on(3, []);
    assert!(enabling_loss(&Point::from_id(1), &h, &f_none, &delta).unwrap());
}

#[test]
fn enabling_loss_rejects_continuous_maps() {
    let r = enabling_loss(&p(0.2), &Hypothesis::threshold(0.5), &Hypothesis::threshold(0.5), &ball(0.1));
    assert!(matches!(r, Err(Error::EvaluationUnsupported { .. })));
}

#[test]
fn unsupported_pairs_name_both_variants() {
    let h = Hypothesis::affine(&[1.0, 1.0], 0.5).unwrap();
    let x = Point::from_vec(vec![0.1, 0.1]);
    let err = improvement_loss(&x, &h, &h, &ImprovementMap::LinfBall { r: 0.1 }).unwrap_err();
    match err {
        Error::EvaluationUnsupported { hypothesis, map } => {
            assert_eq!(hypothesis, "AffineHalfspace");
            assert_eq!(map, "LinfBall");
        }
        e => panic!("unexpected {e}"),
    }
    // the grid fallback resolves it approximately
    let opts = EvalOptions::with_grid(64);
    let out =
        improvelearn::model::improvement_loss_with(&x, &h, &h, &ImprovementMap::LinfBall { r: 0.1 }, &opts).unwrap();
    assert!(!out.loss_bit);
}

#[test]
fn population_mc_examples() {
    let f = Hypothesis::threshold(0.3);
    let dist = DistributionSpec::unit_interval();
    let e = population_loss_mc(&f, &f, &ball(0.05), &dist, 5000, LossKind::Improvement, 1).unwrap();
    assert_eq!(e.mean, 0.0);

    // t_h - t* = 0.08, r = 0.03: error region [t*, t_h - r]
    let h = Hypothesis::threshold(0.38);
    let exact = uniform_line_loss(&h, &f, &ball(0.03), 0.0, 1.0, LossKind::Improvement).unwrap();
    assert!((exact - 0.05).abs() < 1e-12);
    let e = population_loss_mc(&h, &f, &ball(0.03), &dist, 20_000, LossKind::Improvement, 2).unwrap();
    assert!((e.mean - 0.05).abs() <= 4.0 * e.stderr, "{e:?}");
}

#[test]
fn mc_matches_exact_on_ten_points() {
    let pts: Vec<Point> = (0..10).map(Point::from_id).collect();
    let w: Vec<f64> = (1..=10).map(|i| i as f64 / 55.0).collect();
    let dist = DistributionSpec::finite_discrete(pts, w).unwrap();
    let table: Vec<Vec<usize>> = (0..10).map(|i| vec![(i + 3) % 10, (i + 7) % 10]).collect();
    let delta = ImprovementMap::FiniteTable(table);
    let h = Hypothesis::positive_on(10, [1, 4, 8]);
    let f = Hypothesis::positive_on(10, [1, 2, 4, 5, 9]);
    let exact = population_loss_exact(&h, &f, &delta, &dist, LossKind::Improvement).unwrap();
    assert!(exact > 0.0 && exact < 1.0);
    let mut within = 0;
    for seed in 0..100 {
        let e = population_loss_mc(&h, &f, &delta, &dist, 4000, LossKind::Improvement, seed).unwrap();
        if (e.mean - exact).abs() <= 4.0 * e.stderr {
            within += 1;
        }
        if seed < 5 {
            assert!((e.mean - exact).abs() <= 3.0 * e.stderr);
        }
    }
    assert!(within >= 99, "{within}/100 seeded runs within 4 stderr");
}

#[test]
fn population_exact_graph_examples() {
    let g4 = Arc::new(Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap());
    let all = Hypothesis::ConstantOne;
    let d4 = DistributionSpec::UniformNodes { n: 4 };
    let l = population_loss_exact(&all, &all, &ImprovementMap::graph(g4, 1), &d4, LossKind::Improvement).unwrap();
    assert_eq!(l, 0.0);

    let k3 = Arc::new(Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap());
    let h = Hypothesis::positive_on(3, [0]);
    let d3 = DistributionSpec::UniformNodes { n: 3 };
    let l = population_loss_exact(&h, &all, &ImprovementMap::graph(k3, 1), &d3, LossKind::Improvement).unwrap();
    assert_eq!(l, 0.0);

    let two = Arc::new(Graph::new(4, [(0, 1), (2, 3)]).unwrap());
    let l = population_loss_exact(&h, &all, &ImprovementMap::graph(two, 1), &d4, LossKind::Improvement).unwrap();
    assert_eq!(l, 0.5);

    let err = population_loss_exact(&h, &all, &ball(0.1), &DistributionSpec::unit_interval(), LossKind::Improvement);
    assert!(matches!(err, Err(Error::EvaluationUnsupported { .. })));
}

/// Mixed map used by the strategic-versus-improvement contrast on the line.
fn left_ball_right_stay() -> ImprovementMap {
    ImprovementMap::PiecewiseRegion(vec![
        (
            Region::Interval { coord: 0, interval: Interval::closed_open(0.0, 0.75) },
            ImprovementMap::IntervalBall { r: 0.25, clip: Some((0.0, 1.0)) },
        ),
        (Region::All, ImprovementMap::Stay),
    ])
}

#[test]
fn strategic_zero_improvement_one() {
    let f = Hypothesis::intervals(vec![Interval::closed_open(0.5, 0.8), Interval::open_closed(0.8, 1.0)]).unwrap();
    let h = Hypothesis::intervals(vec![Interval::closed(0.76, 1.0)]).unwrap();
    let delta = left_ball_right_stay();
    let x = p(0.6);
    assert!(improvement_loss(&x, &h, &f, &delta).unwrap().loss_bit);
    assert!(!strategic_loss(&x, &h, &f, &delta).unwrap());
    // agents at or beyond 3/4 never move
    assert_eq!(improvement_loss(&p(0.7999), &h, &f, &delta).unwrap().case, ReactionCase::PositiveStays);
    assert_eq!(improvement_loss(&p(0.755), &h, &f, &delta).unwrap().case, ReactionCase::NegativeStays);
}

#[test]
fn strategic_one_improvement_zero() {
    let pts: Vec<Point> = (0..6).map(Point::from_id).collect();
    let f = Hypothesis::positive_on(6, [0, 1, 2]);
    let h = Hypothesis::positive_on(6, [1]);
    let delta = ImprovementMap::WholeSpace(InstanceSpace::Finite(pts));
    let x = Point::from_id(4);
    assert!(!improvement_loss(&x, &h, &f, &delta).unwrap().loss_bit);
    assert!(strategic_loss(&x, &h, &f, &delta).unwrap());
}

#[test]
fn sphere_disagreement_mass() {
    let w = Hypothesis::homogeneous(&[0.0, 0.0, 1.0]).unwrap();
    let ws = Hypothesis::homogeneous(&[0.0, 0.6, 0.8]).unwrap();
    let exact = 0.8f64.acos() / std::f64::consts::PI;
    let dist = DistributionSpec::UniformSphere { d: 3 };
    let e = population_loss_mc(&w, &ws, &ImprovementMap::Stay, &dist, 40_000, LossKind::Improvement, 9).unwrap();
    assert!((e.mean - exact).abs() <= 4.0 * e.stderr, "{e:?} vs {exact}");
}

#[test]
fn shifted_halfspace_under_angular_ball() {
    let r = 0.3f64;
    let ws = Hypothesis::homogeneous(&[0.0, 0.0, 1.0]).unwrap();
    let tilt = 0.1f64;
    let h = Hypothesis::affine(&[tilt.sin(), 0.0, tilt.cos()], (r / 2.0).sin()).unwrap();
    let delta = ImprovementMap::AngularBall { r };
    let dist = DistributionSpec::UniformSphere { d: 3 };
    let e = population_loss_mc(&h, &ws, &delta, &dist, 20_000, LossKind::Improvement, 4).unwrap();
    assert_eq!(e.mean, 0.0);
    // a tilt beyond r/2 makes false positives reachable
    let bad = Hypothesis::affine(&[0.5f64.sin(), 0.0, 0.5f64.cos()], (r / 2.0).sin()).unwrap();
    let e = population_loss_mc(&bad, &ws, &delta, &dist, 20_000, LossKind::Improvement, 4).unwrap();
    assert!(e.mean > 0.0);
}

/// Literal reaction set for a finite instance: `{x}` if `h(x) = 1` or no
/// reachable positive, else the reachable positives.
fn reaction_set(x: usize, h: &[bool], table: &[Vec<usize>]) -> Vec<usize> {
    if h[x] {
        return vec![x];
    }
    let r: Vec<usize> = table[x].iter().copied().filter(|&j| h[j]).collect();
    if r.is_empty() {
        vec![x]
    } else {
        r
    }
}

fn finite_instance() -> impl Strategy<Value = (Vec<bool>, Vec<bool>, Vec<Vec<usize>>)> {
    (1usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(proptest::collection::vec(0..n, 0..=n), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn finite_losses_match_literal_reaction_sets((hl, fl, table) in finite_instance()) {
        let n = hl.len();
        let h = Hypothesis::FiniteLabeling(hl.clone());
        let f = Hypothesis::FiniteLabeling(fl.clone());
        let delta = ImprovementMap::FiniteTable(table.clone());
        for x in 0..n {
            let set = reaction_set(x, &hl, &table);
            let want_imp = set.iter().any(|&j| hl[j] != fl[j]);
            let want_str = set.iter().any(|&j| hl[j] != fl[x]);
            let out = improvement_loss(&Point::from_id(x), &h, &f, &delta).unwrap();
            prop_assert_eq!(out.loss_bit, want_imp);
            prop_assert_eq!(strategic_loss(&Point::from_id(x), &h, &f, &delta).unwrap(), want_str);
            // exactly one case applies
            let case = match (hl[x], set != vec![x] || (!hl[x] && table[x].iter().any(|&j| hl[j]))) {
                (true, _) => ReactionCase::PositiveStays,
                (false, false) => ReactionCase::NegativeStays,
                (false, true) => ReactionCase::Moves,
            };
            prop_assert_eq!(out.case, case);
            prop_assert_eq!(out.moved, case == ReactionCase::Moves);
            if !out.moved {
                prop_assert!(out.witness.is_none());
            }
        }
    }

    #[test]
    fn conservative_hypotheses_never_create_false_positives((hl, fl, table) in finite_instance()) {
        let hl: Vec<bool> = hl.iter().zip(&fl).map(|(&a, &b)| a && b).collect();
        let h = Hypothesis::FiniteLabeling(hl.clone());
        let f = Hypothesis::FiniteLabeling(fl.clone());
        let delta = ImprovementMap::FiniteTable(table);
        for x in 0..hl.len() {
            let out = improvement_loss(&Point::from_id(x), &h, &f, &delta).unwrap();
            if out.loss_bit {
                prop_assert_eq!(out.case, ReactionCase::NegativeStays);
                prop_assert!(fl[x]);
            }
        }
    }

    #[test]
    fn line_reach_matches_dense_scan(t_h in 0.0f64..1.0, t_f in 0.0f64..1.0, r in 0.0f64..0.3, x in 0.0f64..1.0) {
        let h = Hypothesis::threshold(t_h);
        let f = Hypothesis::threshold(t_f);
        let out = improvement_loss(&p(x), &h, &f, &ball(r)).unwrap();
        let want = if x >= t_h {
            x < t_f
        } else if x + r < t_h {
            x >= t_f
        } else {
            // reachable positive window [t_h, x + r]
            t_h < t_f
        };
        prop_assert_eq!(out.loss_bit, want);
    }
}
