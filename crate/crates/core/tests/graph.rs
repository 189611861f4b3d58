#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use improvelearn::graph::*;
use improvelearn::model::{population_loss_exact, LossKind};
use improvelearn::{Error, Hypothesis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn path3() -> Graph {
    Graph::new(3, [(0, 1), (1, 2)]).unwrap()
}

fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> GraphInstance {
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.0..0.5);
    let g = random_graph(rng, n, p);
    let pos = rng.random_range(0.0..1.0);
    let f = (0..n).map(|_| rng.random_bool(pos)).collect();
    GraphInstance::new(Arc::new(g), f).unwrap()
}

fn loss(inst: &GraphInstance, h: &Hypothesis, kind: LossKind) -> f64 {
    population_loss_exact(h, &inst.target(), &inst.delta(1), &inst.uniform(), kind).unwrap()
}

fn labels(h: &Hypothesis) -> Vec<bool> {
    match h {
        Hypothesis::FiniteLabeling(l) => l.clone(),
        other => panic!("expected labeling, got {}", other.name()),
    }
}

#[test]
fn power_examples() {
    let g2 = graph_power(&path3(), 2).unwrap();
    assert!(g2.has_edge(0, 2));
    assert_eq!(graph_power(&path3(), 1).unwrap(), path3());
    let c = graph_power(&cycle(6), 2).unwrap();
    assert!((0..6).all(|u| c.degree(u) == 4));
    assert!(matches!(graph_power(&path3(), 0), Err(Error::Argument(_))));
}

#[test]
fn power_matches_floyd_warshall() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.random_range(1..=64);
        let p = rng.random_range(0.0..0.15);
        let g = random_graph(&mut rng, n, p);
        let rho = rng.random_range(1..=4);
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for &v in g.neighbors(u) {
                d[u][v] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        let gp = graph_power(&g, rho).unwrap();
        for u in 0..n {
            for v in 0..n {
                assert_eq!(gp.has_edge(u, v), d[u][v] >= 1 && d[u][v] <= rho);
            }
        }
    }
}

#[test]
fn conservative_learner_examples() {
    let inst = GraphInstance::new(Arc::new(path3()), vec![true, false, true]).unwrap();
    let h: Hypothesis = learn_graph_conservative(&inst, &[]);
    assert_eq!(labels(&h), vec![false; 3]);
    let h: Hypothesis = learn_graph_conservative(&inst, &[0, 1, 2]);
    assert_eq!(labels(&h), inst.f_star);

    let k3 = GraphInstance::all_positive(make_clique_lower_bound(3, 1).unwrap());
    let h: Hypothesis = learn_graph_conservative(&k3, &[0]);
    assert_eq!(labels(&h), vec![true, false, false]);
    assert_eq!(loss(&k3, &h, LossKind::Improvement), 0.0);
}

#[test]
fn coverage_examples() {
    let g = Graph::new(4, [(0, 1)]).unwrap();
    let inst = GraphInstance::new(Arc::new(g), vec![true, true, false, true]).unwrap();
    assert!(is_covered(&inst, 0, &[0]).unwrap());
    assert!(!is_covered(&inst, 3, &[0, 1]).unwrap());
    assert!(is_covered(&inst, 1, &[0]).unwrap());
    assert!(matches!(is_covered(&inst, 2, &[0]), Err(Error::Precondition(_))));
}

#[test]
fn sample_size_formulas() {
    assert_eq!(zero_error_sample_size(1, 0, 0.5, 1.0), 1);
    assert_eq!(zero_error_sample_size(200, 9, 0.05, 1.0), 166);
    let raw = |d: usize| 200.0 * (200f64.ln() + 20f64.ln()) / (d + 1) as f64;
    assert!((raw(3) / raw(7) - 2.0).abs() < 1e-12);
    assert_eq!(enabling_sample_size(120, None, 0.1, 1.0), 0);
    assert_eq!(enabling_sample_size(120, Some(5), 0.05, 1.0), 187);
    assert_eq!(joint_sample_size(120, 4, None, 0.1, 1.0), Some(enabling_sample_size(120, Some(4), 0.1, 1.0)));
    assert_eq!(joint_sample_size(120, 9, Some(5), 0.05, 1.0), Some(187));
    assert_eq!(joint_sample_size(120, 0, Some(5), 0.1, 1.0), None);
}

#[test]
fn dominating_set_examples() {
    assert_eq!(greedy_dominating_set(&path3()), vec![1]);
    assert_eq!(greedy_dominating_set(&Graph::empty(4)), vec![0, 1, 2, 3]);
    assert!(greedy_dominating_set(&Graph::empty(0)).is_empty());
    let g = make_clique_lower_bound(30, 6).unwrap();
    let d = greedy_dominating_set(&g);
    assert_eq!(d.len(), 6);
    let mut per_clique: Vec<usize> = d.iter().map(|u| u / 5).collect();
    per_clique.dedup();
    assert_eq!(per_clique, (0..6).collect::<Vec<_>>());
}

#[test]
fn teaching_examples() {
    let neg = GraphInstance::new(Arc::new(path3()), vec![false; 3]).unwrap();
    let (t, h) = teach_risk_averse_student(&neg).unwrap();
    assert!(t.is_empty());
    assert_eq!(labels(&h), vec![false; 3]);

    let star = GraphInstance::all_positive(Graph::new(5, (1..5).map(|i| (0, i))).unwrap());
    assert_eq!(teach_risk_averse_student(&star).unwrap().0, vec![0]);

    let two = GraphInstance::all_positive(make_clique_lower_bound(8, 2).unwrap());
    let (t, h) = teach_risk_averse_student(&two).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(loss(&two, &h, LossKind::Improvement), 0.0);
}

#[test]
fn teaching_never_fails_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let inst = random_instance(&mut rng, 50);
        let (t, h) = teach_risk_averse_student(&inst).unwrap();
        assert!(t.iter().all(|&u| inst.f_star[u]));
        assert_eq!(loss(&inst, &h, LossKind::Improvement), 0.0);
    }
}

#[test]
fn clique_construction() {
    let g = make_clique_lower_bound(6, 3).unwrap();
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3), (4, 5)]);
    let k4 = make_clique_lower_bound(4, 1).unwrap();
    assert_eq!(k4.n_edges(), 6);
    assert!(matches!(make_clique_lower_bound(7, 3), Err(Error::Argument(_))));
    let inst = GraphInstance::all_positive(make_clique_lower_bound(100, 20).unwrap());
    assert_eq!(inst.stats().d_min_plus, 4);
}

#[test]
fn star_partition_construction() {
    let inst = make_star_partition_lower_bound(6, 2, GroupWiring::Clique).unwrap();
    assert_eq!(inst.f_star, vec![false, false, true, true, true, true]);
    assert_eq!(inst.graph.neighbors(0), &[2, 3]);
    assert_eq!(inst.graph.neighbors(1), &[4, 5]);
    assert_eq!(inst.stats().d_min_n, Some(2));
    assert!(matches!(make_star_partition_lower_bound(4, 4, GroupWiring::Clique), Err(Error::Argument(_))));
    assert!(matches!(make_star_partition_lower_bound(7, 2, GroupWiring::Clique), Err(Error::Argument(_))));
    for (n, k) in [(120, 20), (30, 5), (9, 3)] {
        for w in [GroupWiring::Clique, GroupWiring::Independent] {
            let inst = make_star_partition_lower_bound(n, k, w).unwrap();
            assert_eq!(inst.stats().d_min_n, Some((n - k) / k));
        }
    }
    let iso = GraphInstance::all_positive(Graph::empty(3));
    assert_eq!(iso.stats().d_min_n, None);
}

/// P(some of k equal groups is missed by m uniform draws), by
/// inclusion-exclusion.
fn coupon_failure(k: usize, m: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for j in 1..=k {
        binom *= (k - j + 1) as f64 / j as f64;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * binom * (1.0 - j as f64 / k as f64).powi(m as i32);
    }
    total
}

#[test]
fn coverage_failure_examples() {
    let inst = GraphInstance::all_positive(make_clique_lower_bound(100, 20).unwrap());
    assert_eq!(coverage_failure_probability(&inst, 0, 10, 1), 1.0);
    let big = (50.0 * 100.0 * 100f64.ln()).ceil() as usize;
    assert_eq!(coverage_failure_probability(&inst, big, 500, 2), 0.0);

    let m = (20.0 * 20f64.ln()).ceil() as usize;
    assert_eq!(m, 60);
    let rate = coverage_failure_probability(&inst, m, 2000, 3);
    assert!((0.50..=0.75).contains(&rate), "rate {rate}");
    let exact = coupon_failure(20, 60);
    let se = (exact * (1.0 - exact) / 2000.0).sqrt();
    assert!((rate - exact).abs() < 4.0 * se, "rate {rate} exact {exact}");
}

#[test]
fn coverage_implies_zero_losses() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut covered_seen = 0;
    let mut joint_seen = 0;
    for _ in 0..10_000 {
        let inst = random_instance(&mut rng, 14);
        let n = inst.n();
        let m = rng.random_range(0..=2 * n);
        let s = sample_nodes(&mut rng, n, m);
        let h: Hypothesis = learn_graph_conservative(&inst, &s);
        let li = loss(&inst, &h, LossKind::Improvement);
        if all_covered(&inst, &s) {
            covered_seen += 1;
            assert_eq!(li, 0.0);
            if n_has_sampled_positive_neighbor(&inst, &s) {
                joint_seen += 1;
                assert_eq!(loss(&inst, &h, LossKind::Enabling), 0.0);
            }
        }
        // Enlarging the sample never hurts.
        let extra = sample_nodes(&mut rng, n, 3);
        let bigger: Vec<usize> = s.iter().chain(&extra).copied().collect();
        let h2: Hypothesis = learn_graph_conservative(&inst, &bigger);
        assert!(loss(&inst, &h2, LossKind::Improvement) <= li);
        assert!(loss(&inst, &h2, LossKind::Enabling) <= loss(&inst, &h, LossKind::Enabling));
    }
    assert!(covered_seen > 1000 && joint_seen > 500, "{covered_seen} {joint_seen}");
}

#[test]
fn edge_list_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.random_range(0..30);
        let g = random_graph(&mut rng, n, 0.2);
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_edge_list(&back), text);
        let l: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let lt = write_labeling(&l);
        assert_eq!(parse_labeling(&lt, Some(n)).unwrap(), l);
    }
    assert_eq!(write_edge_list(&path3()), "3 2\n0 1\n1 2\n");
    assert_eq!(write_labeling(&[true, false]), "1 0\n");
}

#[test]
fn malformed_files_are_rejected() {
    for bad in ["", "3 2\n0 1\n", "3 1\n0 3\n", "3 1\n1 1\n", "3 2\n0 1\n1 0\n", "3 1\n0 x\n", "3 1\n0 1 2\n"] {
        assert!(matches!(parse_edge_list(bad), Err(Error::Parse { .. })), "{bad:?}");
    }
    assert!(matches!(parse_labeling("0 1 2", None), Err(Error::Parse { .. })));
    assert!(matches!(parse_labeling("0 1", Some(3)), Err(Error::Parse { .. })));
}
