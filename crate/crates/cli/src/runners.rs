//! One runner per registry scenario. Trials run on the rayon pool of the
//! caller and are collected in trial order, so output does not depend on
//! the number of threads.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use improvelearn::geometry::vector::angle;
use improvelearn::geometry::AaBox;
use improvelearn::graph::{
    all_covered, enabling_sample_size, joint_sample_size, learn_graph_conservative, make_clique_lower_bound,
    make_star_partition_lower_bound, sample_nodes, teach_risk_averse_student, zero_error_sample_size, Graph,
    GraphInstance, GroupWiring,
};
use improvelearn::learners::{
    closure_learn, consistent_direction, improvement_region_mass, learn_halfspace_shifted,
    learn_threshold_conservative, ClosureOperator, FiniteClass, PERCEPTRON_UPDATE_CAP,
};
use improvelearn::model::{
    improvement_loss, population_loss_exact, population_loss_mc, sample_sphere, uniform_line_loss, LossKind,
};
use improvelearn::rng::{derive_seed, trial_rng};
use improvelearn::stats::fraction;
use improvelearn::theory::{
    quarter_ball_svc_problem, singleton_sample_size, svc_shattering_coefficient, vc_labelings, Counterexample,
    OuterMoves, ScenarioId,
};
use improvelearn::trainer::{
    generate_synthetic, gradient_check, sweep_budget, sweep_csv, Arch, Model, SweepRow, SynthParams, TrainSpec,
};
use improvelearn::{DistributionSpec, Error, Estimate, Hypothesis, ImprovementMap, LabeledExample, Point};
use rand::Rng;
use rayon::prelude::*;

use crate::config::RunConfig;

/// What a scenario produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// `results.csv`, header included.
    pub csv: String,
    /// Scalar results checked against the registry.
    pub metrics: BTreeMap<String, f64>,
    /// Means with standard errors.
    pub estimates: BTreeMap<String, Estimate>,
}

pub fn run_scenario(cfg: &RunConfig) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    pool.install(|| match cfg.scenario.as_str() {
        "thresholds_thm4_1" => thresholds(cfg),
        "rectangles_thm4_2" => rectangles(cfg),
        "intersection_closed_thm4_5" => intersection_closed(cfg),
        "halfspace_thm4_8" => halfspace(cfg),
        "graph_upper_thm5_1" => graph_upper(cfg),
        "graph_lower_cliques" => graph_lower(cfg),
        "graph_enabling_thmC1" => graph_enabling(cfg),
        "teaching_thm5_3" => teaching(cfg),
        "svc_thm3_5" => svc(cfg),
        "riskaverse_sweep" => riskaverse_sweep(cfg),
        other => counterexample(cfg, other.parse::<ScenarioId>()?),
    })
}

/// Runs `f` for trials `0..n` in parallel, keeping trial order.
fn trials<R: Send>(n: usize, f: impl Fn(usize) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    (0..n).into_par_iter().map(f).collect()
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn bit(b: bool) -> String {
    u8::from(b).to_string()
}

fn table(columns: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for r in rows {
        debug_assert_eq!(r.len(), columns.len());
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

fn unit_interval(key: &str, v: f64) -> Result<f64> {
    if !(v > 0.0 && v < 1.0) {
        bail!("`{key}` must lie in (0, 1), got {v}");
    }
    Ok(v)
}

fn nonneg(key: &str, v: f64) -> Result<f64> {
    if !(v >= 0.0) {
        bail!("`{key}` must be >= 0, got {v}");
    }
    Ok(v)
}

fn positive_count(key: &str, v: usize) -> Result<usize> {
    if v == 0 {
        bail!("`{key}` must be >= 1");
    }
    Ok(v)
}

#[derive(Default)]
struct Summary {
    metrics: BTreeMap<String, f64>,
    estimates: BTreeMap<String, Estimate>,
}

impl Summary {
    fn metric(&mut self, k: &str, v: f64) -> &mut Self {
        self.metrics.insert(k.into(), v);
        self
    }

    fn estimate(&mut self, k: &str, xs: impl IntoIterator<Item = f64>) -> &mut Self {
        let e = Estimate::from_samples(xs);
        self.metrics.insert(format!("mean_{k}"), e.mean);
        self.estimates.insert(k.into(), e);
        self
    }

    fn finish(self, csv: String) -> Outcome {
        Outcome { csv, metrics: self.metrics, estimates: self.estimates }
    }
}

fn thresholds(cfg: &RunConfig) -> Result<Outcome> {
    let eps = unit_interval("eps", cfg.f64("eps")?)?;
    let delta = unit_interval("delta", cfg.f64("delta")?)?;
    let r = nonneg("r", cfg.f64("r")?)?;
    let m = cfg.usize_or("m", singleton_sample_size(eps, delta))?;
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let bound = (eps - r).max(0.0);
    let delta_map = ImprovementMap::interval_ball(r);

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let t_star: f64 = rng.random();
        let f = Hypothesis::threshold(t_star);
        let sample: Vec<LabeledExample> =
            (0..m).map(|_| LabeledExample::labeled_by(Point::scalar(rng.random()), &f)).collect();
        let h = learn_threshold_conservative(&sample)?;
        let Hypothesis::Threshold { t: th } = h else { unreachable!("threshold learner") };
        let loss = uniform_line_loss(&h, &f, &delta_map, 0.0, 1.0, LossKind::Improvement)?;
        Ok((t_star, th, loss))
    })?;

    let within = |l: f64| l <= bound + 1e-12;
    let rows = out
        .iter()
        .enumerate()
        .map(|(t, &(ts, th, l))| vec![t.to_string(), num(ts), num(th), num(l), bit(within(l))])
        .collect();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("loss_bound", bound)
        .metric("within_bound_fraction", fraction(out.iter().map(|o| within(o.2))))
        .metric("zero_loss_fraction", fraction(out.iter().map(|o| o.2 == 0.0)))
        .estimate("loss", out.iter().map(|o| o.2));
    Ok(s.finish(table(&["trial", "t_star", "threshold", "loss", "within_bound"], rows)))
}

fn rectangles(cfg: &RunConfig) -> Result<Outcome> {
    let d = positive_count("d", cfg.usize("d")?)?;
    let eps = unit_interval("eps", cfg.f64("eps")?)?;
    let delta = unit_interval("delta", cfg.f64("delta")?)?;
    let r = nonneg("r", cfg.f64("r")?)?;
    let m = cfg.usize_or("m", ((d as f64 + (1.0 / delta).ln()) / eps).ceil() as usize)?;
    let mc = positive_count("mc_samples", cfg.usize("mc_samples")?)?;
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let dist = DistributionSpec::UniformBox { d };
    let delta_map = ImprovementMap::LinfBall { r };

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let (mut lo, mut hi) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for _ in 0..d {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            lo.push(a.min(b));
            hi.push(a.max(b));
        }
        let target_box = AaBox::new(lo.clone(), hi.clone());
        let f = Hypothesis::rectangle(lo, hi)?;
        let sample: Vec<LabeledExample> = (0..m)
            .map(|_| LabeledExample::labeled_by(Point::from_vec((0..d).map(|_| rng.random()).collect()), &f))
            .collect();
        let h = closure_learn(&sample, &ClosureOperator::Rectangles)?;
        let (fp_pre, fp_post) = match h.positive_box(d) {
            Some(b) if !b.is_empty() => (!b.is_subset_of(&target_box), b.witness_outside(&target_box).is_some()),
            _ => (false, false),
        };
        let rep = improvement_region_mass(&h, &f, &delta_map, &dist, mc, rng.random())?;
        // Empty hypothesis: nothing to move to.
        let cf = rep.closed_form.unwrap_or(0.0);
        let null_se = (cf * (1.0 - cf) / mc as f64).sqrt();
        let matched = (rep.mass - cf).abs() <= 4.0 * rep.mc_stderr.max(null_se);
        Ok((fp_pre, fp_post, rep.mass, rep.mc_stderr, cf, matched))
    })?;

    let rows = out
        .iter()
        .enumerate()
        .map(|(t, o)| vec![t.to_string(), bit(o.0), bit(o.1), num(o.2), num(o.3), num(o.4), bit(o.5)])
        .collect();
    let violations = out.iter().filter(|o| o.0 || o.1).count();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("false_positive_violations", violations as f64)
        .metric("region_match_fraction", fraction(out.iter().map(|o| o.5)))
        .estimate("region_mass", out.iter().map(|o| o.2));
    let cols = ["trial", "fp_pre", "fp_post", "region_mc", "region_stderr", "region_closed_form", "region_match"];
    Ok(s.finish(table(&cols, rows)))
}

/// Random intersection-closed family: a few random sets closed under `&`.
fn random_closed_class(rng: &mut impl Rng, n: usize) -> Result<FiniteClass> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut members: BTreeSet<u64> = (0..rng.random_range(1..=6)).map(|_| rng.random::<u64>() & full).collect();
    loop {
        let grown: BTreeSet<u64> = members.iter().flat_map(|&a| members.iter().map(move |&b| a & b)).collect();
        let grown: BTreeSet<u64> = grown.union(&members).copied().collect();
        if grown.len() == members.len() {
            break;
        }
        members = grown;
    }
    Ok(FiniteClass::intersection_closed(n, members.into_iter().collect())?)
}

fn intersection_closed(cfg: &RunConfig) -> Result<Outcome> {
    let n_inst = positive_count("instances", cfg.usize("instances")?)?;
    let max_points = positive_count("max_points", cfg.usize("max_points")?)?;
    if max_points > 16 {
        bail!("`max_points` must be at most 16");
    }

    let out = trials(n_inst, |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let n = rng.random_range(1..=max_points);
        let class = random_closed_class(&mut rng, n)?;
        let n_members = class.members().len();
        let target = class.members()[rng.random_range(0..n_members)];
        let f = Hypothesis::FiniteLabeling((0..n).map(|j| target >> j & 1 == 1).collect());
        let sample: Vec<LabeledExample> = (0..rng.random_range(0..=2 * n))
            .map(|_| LabeledExample::labeled_by(Point::from_id(rng.random_range(0..n)), &f))
            .collect();
        let h = closure_learn(&sample, &ClosureOperator::FiniteClass(class))?;
        let table: Vec<Vec<usize>> =
            (0..n).map(|_| (0..rng.random_range(0..=n)).map(|_| rng.random_range(0..n)).collect()).collect();
        let delta = ImprovementMap::FiniteTable(table);
        let (mut violations, mut imp, mut std) = (0usize, 0usize, 0usize);
        for j in 0..n {
            let x = Point::from_id(j);
            let a = improvement_loss(&x, &h, &f, &delta)?.loss_bit;
            let b = h.predict(&x) != f.predict(&x);
            violations += usize::from(a && !b);
            imp += usize::from(a);
            std += usize::from(b);
        }
        Ok((n, n_members, violations, imp as f64 / n as f64, std as f64 / n as f64))
    })?;

    let rows = out
        .iter()
        .enumerate()
        .map(|(i, o)| vec![i.to_string(), o.0.to_string(), o.1.to_string(), o.2.to_string(), num(o.3), num(o.4)])
        .collect();
    let mut s = Summary::default();
    s.metric("pointwise_violations", out.iter().map(|o| o.2).sum::<usize>() as f64)
        .estimate("improvement_loss", out.iter().map(|o| o.3))
        .estimate("standard_loss", out.iter().map(|o| o.4));
    let cols = ["instance", "n_points", "n_members", "violations", "improvement_loss", "standard_loss"];
    Ok(s.finish(table(&cols, rows)))
}

fn halfspace(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.usize("d")?;
    if d < 2 {
        bail!("`d` must be at least 2");
    }
    let r = cfg.f64("r")?;
    let delta = unit_interval("delta", cfg.f64("delta")?)?;
    let c = cfg.f64("c")?;
    if !(c > 0.0) {
        bail!("`c` must be positive");
    }
    let m = cfg.usize_or("m", (c * (d as f64 + (1.0 / delta).ln()) / r).ceil() as usize)?;
    let n_eval = positive_count("eval_samples", cfg.usize("eval_samples")?)?;
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let dist = DistributionSpec::UniformSphere { d };
    let delta_map = ImprovementMap::AngularBall { r };

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let w_star: Vec<f64> = sample_sphere(&mut rng, d);
        let f = Hypothesis::homogeneous(&w_star)?;
        let sample: Vec<LabeledExample> =
            (0..m).map(|_| LabeledExample::labeled_by(Point::from_vec(sample_sphere(&mut rng, d)), &f)).collect();
        let fit = consistent_direction(&sample, PERCEPTRON_UPDATE_CAP)?;
        let h = learn_halfspace_shifted(&sample, r)?;
        let loss = population_loss_mc(&h, &f, &delta_map, &dist, n_eval, LossKind::Improvement, rng.random())?;
        Ok((angle(&fit.w, &w_star), fit.updates, loss))
    })?;

    let rows = out
        .iter()
        .enumerate()
        .map(|(t, o)| vec![t.to_string(), m.to_string(), num(o.0), o.1.to_string(), num(o.2.mean), num(o.2.stderr)])
        .collect();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("zero_loss_fraction", fraction(out.iter().map(|o| o.2.mean == 0.0)))
        .metric("max_angle_to_target", out.iter().map(|o| o.0).fold(0.0, f64::max))
        .estimate("loss", out.iter().map(|o| o.2.mean));
    Ok(s.finish(table(&["trial", "m", "angle_to_target", "updates", "loss", "loss_stderr"], rows)))
}

fn graph_upper(cfg: &RunConfig) -> Result<Outcome> {
    let (nodes, k) = (cfg.usize("n")?, cfg.usize("k")?);
    let delta = unit_interval("delta", cfg.f64("delta")?)?;
    let c = cfg.f64("c")?;
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let inst = GraphInstance::all_positive(make_clique_lower_bound(nodes, k)?);
    let d_plus = inst.stats().d_min_plus;
    let m = zero_error_sample_size(nodes, d_plus, delta, c);
    let (f, dmap, dist) = (inst.target::<f64>(), inst.delta::<f64>(1), inst.uniform::<f64>());

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let sample = sample_nodes(&mut rng, nodes, m);
        let h = learn_graph_conservative::<f64>(&inst, &sample);
        let loss = population_loss_exact(&h, &f, &dmap, &dist, LossKind::Improvement)?;
        Ok((all_covered(&inst, &sample), loss))
    })?;

    let rows = out.iter().enumerate().map(|(t, o)| vec![t.to_string(), m.to_string(), bit(o.0), num(o.1)]).collect();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("d_min_plus", d_plus as f64)
        .metric("zero_loss_fraction", fraction(out.iter().map(|o| o.1 == 0.0)))
        .metric("all_covered_fraction", fraction(out.iter().map(|o| o.0)))
        .estimate("loss", out.iter().map(|o| o.1));
    Ok(s.finish(table(&["trial", "m", "all_covered", "loss"], rows)))
}

fn graph_lower(cfg: &RunConfig) -> Result<Outcome> {
    let (nodes, k) = (cfg.usize("n")?, cfg.usize("k")?);
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let m = cfg.usize_or("m", (k as f64 * (k as f64).ln()).ceil() as usize)?;
    let inst = GraphInstance::all_positive(make_clique_lower_bound(nodes, k)?);

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        Ok(!all_covered(&inst, &sample_nodes(&mut rng, nodes, m)))
    })?;

    let rows = out.iter().enumerate().map(|(t, &failed)| vec![t.to_string(), m.to_string(), bit(failed)]).collect();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("coverage_failure_fraction", fraction(out.iter().copied()))
        .metric("asymptotic_failure", 1.0 - (-1f64).exp());
    Ok(s.finish(table(&["trial", "m", "failed"], rows)))
}

fn graph_enabling(cfg: &RunConfig) -> Result<Outcome> {
    let (nodes, k) = (cfg.usize("n")?, cfg.usize("k")?);
    let delta = unit_interval("delta", cfg.f64("delta")?)?;
    let c = cfg.f64("c")?;
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let inst = make_star_partition_lower_bound(nodes, k, GroupWiring::default())?;
    let stats = inst.stats();
    let m = enabling_sample_size(nodes, stats.d_min_n, delta, c);
    let joint = joint_sample_size(nodes, stats.d_min_plus, stats.d_min_n, delta, c)
        .context("instance has a node of degree 0, so no finite sample size applies")?;
    let (f, dmap, dist) = (inst.target::<f64>(), inst.delta::<f64>(1), inst.uniform::<f64>());

    let out = trials(n, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let sample = sample_nodes(&mut rng, nodes, m);
        let h = learn_graph_conservative::<f64>(&inst, &sample);
        let loss = population_loss_exact(&h, &f, &dmap, &dist, LossKind::Improvement)?;
        let enabling = population_loss_exact(&h, &f, &dmap, &dist, LossKind::Enabling)?;
        Ok((loss, enabling))
    })?;

    let rows = out.iter().enumerate().map(|(t, o)| vec![t.to_string(), m.to_string(), num(o.0), num(o.1)]).collect();
    let mut s = Summary::default();
    s.metric("m", m as f64)
        .metric("d_min_plus", stats.d_min_plus as f64)
        .metric("d_min_n", stats.d_min_n.map_or(f64::INFINITY, |v| v as f64))
        .metric("joint_m", joint as f64)
        .metric("joint_zero_fraction", fraction(out.iter().map(|o| o.0 == 0.0 && o.1 == 0.0)))
        .estimate("loss", out.iter().map(|o| o.0))
        .estimate("enabling_loss", out.iter().map(|o| o.1));
    Ok(s.finish(table(&["trial", "m", "loss", "enabling_loss"], rows)))
}

fn teaching(cfg: &RunConfig) -> Result<Outcome> {
    let n_inst = positive_count("instances", cfg.usize("instances")?)?;
    let max_nodes = positive_count("max_nodes", cfg.usize("max_nodes")?)?;

    let out = trials(n_inst, |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let n = rng.random_range(1..=max_nodes);
        let p_edge: f64 = rng.random_range(0.0..0.5);
        let p_pos: f64 = rng.random();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p_edge) {
                    edges.push((u, v));
                }
            }
        }
        let labels: Vec<bool> = (0..n).map(|_| rng.random_bool(p_pos)).collect();
        let n_pos = labels.iter().filter(|&&b| b).count();
        let inst = GraphInstance::new(Arc::new(Graph::new(n, edges)?), labels)?;
        match teach_risk_averse_student(&inst) {
            Ok((set, h)) => {
                let loss =
                    population_loss_exact(&h, &inst.target(), &inst.delta(1), &inst.uniform(), LossKind::Improvement)?;
                Ok((n, n_pos, Some(set.len()), loss))
            }
            Err(Error::InvariantViolation(_)) => Ok((n, n_pos, None, f64::NAN)),
            Err(e) => Err(e.into()),
        }
    })?;

    let rows = out
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let size = o.2.map_or_else(String::new, |s| s.to_string());
            vec![i.to_string(), o.0.to_string(), o.1.to_string(), size, num(o.3)]
        })
        .collect();
    let mut s = Summary::default();
    s.metric("verified_fraction", fraction(out.iter().map(|o| o.2.is_some() && o.3 == 0.0)))
        .estimate("teaching_size", out.iter().filter_map(|o| o.2.map(|v| v as f64)));
    Ok(s.finish(table(&["instance", "n", "n_positive", "teaching_size", "loss"], rows)))
}

fn svc(_cfg: &RunConfig) -> Result<Outcome> {
    let (problem, tuple) = quarter_ball_svc_problem()?;
    let achieved = svc_shattering_coefficient(&problem, &tuple)?;
    let plain = vc_labelings(&problem.hypotheses, &tuple);
    let k = tuple.len();
    let pattern = |mask: usize| -> Vec<bool> { (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect() };
    let rows = (0..1usize << k)
        .map(|mask| {
            let p = pattern(mask);
            let text: String = p.iter().map(|&b| if b { '1' } else { '0' }).collect();
            vec![text, bit(achieved.contains(&p))]
        })
        .collect();
    let target = vec![true, false, true, false, true];
    let mut s = Summary::default();
    s.metric("achievable_labelings", achieved.len() as f64)
        .metric("plain_labelings", plain.len() as f64)
        .metric("n_hypotheses", problem.hypotheses.len() as f64)
        .metric("pattern_10101_achievable", f64::from(u8::from(achieved.contains(&target))));
    Ok(s.finish(table(&["labeling", "achievable"], rows)))
}

fn counterexample(cfg: &RunConfig, id: ScenarioId) -> Result<Outcome> {
    let has = |k: &str| cfg.params.contains_key(k);
    let m = match id {
        ScenarioId::Ex3_1 => {
            let eps = unit_interval("eps", cfg.f64("eps")?)?;
            let delta = unit_interval("delta", cfg.f64("delta")?)?;
            cfg.usize_or("m", singleton_sample_size(eps, delta))?
        }
        _ => cfg.usize("m")?,
    };
    let variant: OuterMoves = if has("variant") { cfg.str("variant")?.parse()? } else { OuterMoves::default() };
    let n_points = if has("n_points") { cfg.usize("n_points")? } else { 10 };
    let max_intervals = if has("max_intervals") { cfg.usize("max_intervals")? } else { 2 };
    let n = positive_count("trials", cfg.usize("trials")?)?;
    let scenario = Counterexample::with_options(id, m, variant, n_points, max_intervals)?;

    let outcomes = trials(n, |t| Ok(scenario.run_trial(cfg.seed, t)?))?;
    let report = scenario.aggregate(outcomes, cfg.seed)?;

    let opt = |v: Option<f64>| v.map_or_else(String::new, num);
    let rows = report
        .trials
        .iter()
        .map(|t| {
            vec![
                t.trial.to_string(),
                num(t.target_param),
                num(t.improvement_loss),
                opt(t.strategic_loss),
                opt(t.standard_loss),
            ]
        })
        .collect();
    let mut s = Summary::default();
    s.metric("m", m as f64).metric("zero_loss_fraction", report.zero_loss_fraction);
    s.estimate("improvement_loss", report.trials.iter().map(|t| t.improvement_loss));
    if report.strategic.is_some() {
        s.estimate("strategic_loss", report.trials.iter().filter_map(|t| t.strategic_loss));
    }
    if report.standard.is_some() {
        s.estimate("standard_loss", report.trials.iter().filter_map(|t| t.standard_loss));
    }
    for (k, &v) in &report.constants {
        s.metric(k, v);
    }
    let cols = ["trial", "target_param", "improvement_loss", "strategic_loss", "standard_loss"];
    Ok(s.finish(table(&cols, rows)))
}

/// Largest rise of `errs` above its running minimum.
fn monotonicity_violation(errs: &[f64]) -> f64 {
    let mut low = f64::INFINITY;
    let mut worst: f64 = 0.0;
    for &e in errs {
        worst = worst.max(e - low);
        low = low.min(e);
    }
    worst
}

fn riskaverse_sweep(cfg: &RunConfig) -> Result<Outcome> {
    let params = SynthParams::new(cfg.usize("d")?, cfg.f64("separation")?, cfg.usize("n")?);
    let arch: Arch = cfg.str("arch")?.parse()?;
    let mut ratios: Vec<f64> = cfg.list("weight_ratios")?;
    if ratios.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        bail!("`weight_ratios` must be positive");
    }
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    let taus: Vec<f64> = cfg.list("taus")?;
    let seeds: Vec<u64> = cfg.list("seeds")?;
    let r_max = nonneg("r_max", cfg.f64("r_max")?)?;
    let r_steps = cfg.usize("r_steps")?;
    if r_steps < 2 {
        bail!("`r_steps` must be at least 2");
    }
    let r_grid: Vec<f64> = (0..r_steps).map(|i| r_max * i as f64 / (r_steps - 1) as f64).collect();
    let steps = positive_count("pgd_steps", cfg.usize("pgd_steps")?)?;
    let specs: Vec<TrainSpec> = ratios
        .iter()
        .map(|&ratio| -> Result<TrainSpec> {
            Ok(TrainSpec {
                arch,
                w_fp: 1.0,
                w_fn: 1.0 / ratio,
                lr: cfg.f64("lr")?,
                epochs: cfg.usize("epochs")?,
                batch: cfg.usize("batch")?,
            })
        })
        .collect::<Result<_>>()?;

    let per_seed: Vec<Vec<SweepRow>> = seeds
        .par_iter()
        .map(|&seed| -> Result<Vec<SweepRow>> {
            let data = generate_synthetic::<f64>(params, seed)?;
            Ok(sweep_budget(&data, &specs, &taus, &r_grid, &[seed], steps)?)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<SweepRow> = per_seed.into_iter().flatten().collect();

    // Trends are read at the first listed threshold.
    let tau = taus[0];
    let curve = |spec: &TrainSpec, seed: u64| -> Vec<f64> {
        rows.iter()
            .filter(|r| r.tau == tau && r.trial_seed == seed && r.w_fn == spec.w_fn)
            .map(|r| r.report.err_after)
            .collect()
    };
    let (plain, weighted) = (&specs[0], &specs[specs.len() - 1]);
    let at_max = |spec: &TrainSpec, seed: u64| *curve(spec, seed).last().expect("nonempty r grid");
    let max_weighted = seeds.iter().map(|&s| at_max(weighted, s)).fold(0.0, f64::max);
    let not_worse = seeds.iter().filter(|&&s| at_max(weighted, s) <= at_max(plain, s)).count();
    let violation_of = |spec: &TrainSpec| -> f64 {
        seeds.iter().map(|&s| monotonicity_violation(&curve(spec, s))).fold(0.0, f64::max)
    };
    let max_violation = specs.iter().map(violation_of).fold(0.0, f64::max);

    // Finite-difference check on random weights and batches.
    let draws = positive_count("grad_draws", cfg.usize("grad_draws")?)?;
    let data = generate_synthetic::<f64>(params, seeds[0])?;
    let mut rng = trial_rng(derive_seed(seeds[0], "gradcheck"), 0);
    let mut grad_err: f64 = 0.0;
    for _ in 0..draws {
        let mut model = Model::zeros(arch, data.d(), 0.5);
        for p in &mut model.params {
            *p = rng.random_range(-0.5..0.5);
        }
        let idx: Vec<usize> = (0..16).map(|_| rng.random_range(0..data.n())).collect();
        let spec = &specs[rng.random_range(0..specs.len())];
        grad_err = grad_err.max(gradient_check(&model, &data, &idx, spec.w_fp, spec.w_fn, 1e-5));
    }

    let mut s = Summary::default();
    s.metric("metric_tau", tau)
        .metric("max_weighted_error_at_rmax", max_weighted)
        .metric("seeds_weighted_not_worse", not_worse as f64)
        .metric("max_monotonicity_violation", max_violation)
        .metric("weighted_monotonicity_violation", violation_of(weighted))
        .metric("plain_monotonicity_violation", violation_of(plain))
        .metric("plain_error_at_rmax", seeds.iter().map(|&s| at_max(plain, s)).fold(0.0, f64::max))
        .metric("gradient_rel_error", grad_err);
    s.estimate("weighted_error_at_rmax", seeds.iter().map(|&sd| at_max(weighted, sd)));
    Ok(s.finish(sweep_csv(&rows)))
}
