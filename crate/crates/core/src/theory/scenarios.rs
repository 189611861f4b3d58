//! Runnable versions of the separation constructions. Each scenario fixes the
//! instance space, class, improvement map, distribution, target rule and the
//! learner under test. Floors for impossibility results are demonstrated for
//! the implemented learner only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hardness::{demo_class, find_hardness_construction};
use super::svc::{two_interval_family, FiniteProblem};
use crate::error::{Error, Result};
use crate::geometry::Interval;
use crate::learners::{learn_singleton_positive, to_mask};
use crate::model::{
    population_loss_exact, uniform_line_loss, DistributionSpec, Hypothesis, ImprovementMap, InstanceSpace,
    LabeledExample, LossKind, Point, Region,
};
use crate::rng::trial_rng;
use crate::stats::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioId {
    #[serde(rename = "ex3_1")]
    Ex3_1,
    #[serde(rename = "ex3_2")]
    Ex3_2,
    #[serde(rename = "thm3_5")]
    Thm3_5,
    #[serde(rename = "ex3_6")]
    Ex3_6,
    #[serde(rename = "exB_1")]
    ExB1,
    #[serde(rename = "thm4_6_demo")]
    Thm4_6Demo,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 6] = [
        ScenarioId::Ex3_1,
        ScenarioId::Ex3_2,
        ScenarioId::Thm3_5,
        ScenarioId::Ex3_6,
        ScenarioId::ExB1,
        ScenarioId::Thm4_6Demo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioId::Ex3_1 => "ex3_1",
            ScenarioId::Ex3_2 => "ex3_2",
            ScenarioId::Thm3_5 => "thm3_5",
            ScenarioId::Ex3_6 => "ex3_6",
            ScenarioId::ExB1 => "exB_1",
            ScenarioId::Thm4_6Demo => "thm4_6_demo",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// Improvement map used by the finite-VC-not-sufficient scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterMoves {
    /// Agents in the outer quarters may move anywhere, inner agents stay.
    #[default]
    Anywhere,
    /// Nobody moves; the plain learning problem for comparison.
    Nowhere,
}

impl FromStr for OuterMoves {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anywhere" => Ok(OuterMoves::Anywhere),
            "nowhere" => Ok(OuterMoves::Nowhere),
            other => Err(Error::Argument(format!("unknown variant `{other}` (anywhere|nowhere)"))),
        }
    }
}

/// One trial of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    /// The randomised part of the target (cut point, positive mass, or
    /// which of two candidate targets); NaN when the target is fixed.
    pub target_param: f64,
    pub improvement_loss: f64,
    pub strategic_loss: Option<f64>,
    /// 0/1 disagreement with the target when nobody moves.
    pub standard_loss: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub scenario: ScenarioId,
    pub m: usize,
    pub n_trials: usize,
    pub seed: u64,
    pub improvement: Estimate,
    pub improvement_ci95: (f64, f64),
    pub zero_loss_fraction: f64,
    pub strategic: Option<Estimate>,
    pub standard: Option<Estimate>,
    /// Deterministic quantities computed by exhaustive enumeration.
    pub constants: BTreeMap<String, f64>,
    pub trials: Vec<TrialOutcome>,
}

enum Setup {
    Line,
    Ex3_6 { n: usize, labelings: Vec<Hypothesis<f64>> },
    ExB1(Box<ExB1>),
    Demo(Box<super::hardness::HardnessConstruction>),
}

struct ExB1 {
    /// Ids `0..n_rational` are rational grid points, the rest irrational.
    n_rational: usize,
    coords: Vec<f64>,
    target: Hypothesis<f64>,
    family: Vec<Vec<bool>>,
    reference: Vec<bool>,
    delta: ImprovementMap<f64>,
    dist: DistributionSpec<f64>,
}

/// A configured scenario, ready to run trials.
pub struct Counterexample {
    pub id: ScenarioId,
    pub m: usize,
    pub variant: OuterMoves,
    /// Domain size for the finite constructions that take one.
    pub n_points: usize,
    /// Interval budget of the restricted class.
    pub max_intervals: usize,
    setup: Setup,
}

fn unit_space() -> ImprovementMap<f64> {
    ImprovementMap::WholeSpace(InstanceSpace::Interval { lo: 0.0, hi: 1.0 })
}

fn region(iv: Interval<f64>) -> Region<f64> {
    Region::Interval { coord: 0, interval: iv }
}

/// `Delta` of the two-interval construction where only the outer quarters move.
pub fn outer_quarters_map() -> ImprovementMap<f64> {
    ImprovementMap::PiecewiseRegion(vec![
        (region(Interval::closed_open(0.0, 0.25)), unit_space()),
        (region(Interval::open_closed(0.75, 1.0)), unit_space()),
        (Region::All, ImprovementMap::Stay),
    ])
}

/// `Delta` of the strategic-separation construction: quarter-radius balls
/// left of 3/4, no movement from 3/4 on.
pub fn quarter_ball_map() -> ImprovementMap<f64> {
    ImprovementMap::PiecewiseRegion(vec![
        (region(Interval::closed_open(0.0, 0.75)), ImprovementMap::IntervalBall { r: 0.25, clip: Some((0.0, 1.0)) }),
        (Region::All, ImprovementMap::Stay),
    ])
}

/// The five-point tuple and the two-interval family on a 1/16 grid.
pub fn quarter_ball_svc_problem() -> Result<(FiniteProblem<f64>, Vec<Point<f64>>)> {
    let tuple: Vec<Point<f64>> = [0.0, 0.25, 0.5, 0.75, 1.0].into_iter().map(Point::scalar).collect();
    let grid: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
    let problem = FiniteProblem::new(tuple.clone(), two_interval_family(&grid), quarter_ball_map())?;
    Ok((problem, tuple))
}

/// `[lo, b) u (b, hi]`.
fn punctured(lo: f64, b: f64, hi: f64) -> Hypothesis<f64> {
    Hypothesis::intervals(vec![Interval::closed_open(lo, b), Interval::open_closed(b, hi)]).expect("b strictly inside")
}

/// Smallest closed interval containing the positive examples.
fn hull_learner(sample: &[LabeledExample<f64>]) -> Hypothesis<f64> {
    let pos: Vec<f64> = sample.iter().filter(|e| e.label).map(|e| e.point.x()).collect();
    if pos.is_empty() {
        return Hypothesis::ConstantZero;
    }
    let lo = pos.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = pos.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Hypothesis::intervals(vec![Interval::closed(lo, hi)]).expect("lo <= hi")
}

fn uniform_sample<R: Rng>(rng: &mut R, m: usize, f: &Hypothesis<f64>) -> Vec<LabeledExample<f64>> {
    (0..m).map(|_| LabeledExample::labeled_by(Point::scalar(rng.random::<f64>()), f)).collect()
}

/// Three disjoint closed intervals of total length `mass`, randomly placed.
fn random_three_intervals<R: Rng>(rng: &mut R, mass: f64) -> Hypothesis<f64> {
    let lens: Vec<f64> = (0..3).map(|_| rng.random_range(0.2..1.0)).collect();
    let gaps: Vec<f64> = (0..4).map(|_| rng.random_range(0.2..1.0)).collect();
    let (sl, sg): (f64, f64) = (lens.iter().sum(), gaps.iter().sum());
    let mut at = 0.0;
    let mut parts = Vec::new();
    for i in 0..3 {
        at += gaps[i] / sg * (1.0 - mass);
        let len = lens[i] / sl * mass;
        parts.push(Interval::closed(at, at + len));
        at += len;
    }
    Hypothesis::intervals(parts).expect("gaps are positive")
}

fn finite_space(n: usize) -> ImprovementMap<f64> {
    ImprovementMap::WholeSpace(InstanceSpace::Finite((0..n).map(Point::from_id).collect()))
}

fn exact(
    h: &Hypothesis<f64>,
    f: &Hypothesis<f64>,
    m: &ImprovementMap<f64>,
    d: &DistributionSpec<f64>,
    k: LossKind,
) -> Result<f64> {
    population_loss_exact(h, f, m, d, k)
}

/// Unions of at most `k` open intervals with endpoints on `grid`.
fn open_interval_unions(grid: &[f64], k: usize) -> Vec<Vec<Interval<f64>>> {
    fn go(grid: &[f64], from: usize, k: usize, cur: &mut Vec<Interval<f64>>, out: &mut Vec<Vec<Interval<f64>>>) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for a in from..grid.len() {
            for b in a + 1..grid.len() {
                cur.push(Interval::open(grid[a], grid[b]));
                go(grid, b, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(grid, 0, k, &mut Vec::new(), &mut out);
    out
}

impl ExB1 {
    fn build(n_irrational: usize, k: usize) -> Result<Self> {
        let rational: Vec<f64> = (-8..=8).map(|j| j as f64 / 8.0).collect();
        // Midpoints of an even grid, nudged by an irrational amount so none
        // coincides with a rational grid point.
        let nudge = 2f64.sqrt() * 1e-4;
        let irrational: Vec<f64> =
            (0..n_irrational).map(|i| -1.0 + (i as f64 + 0.5) * 2.0 / n_irrational as f64 + nudge).collect();
        let n_rational = rational.len();
        let coords: Vec<f64> = rational.iter().chain(&irrational).copied().collect();
        let n = coords.len();
        let target_labels: Vec<bool> = (0..n).map(|i| i >= n_rational && coords[i] >= 0.0).collect();
        let label_by = |parts: &[Interval<f64>]| -> Vec<bool> {
            coords.iter().map(|&c| parts.iter().any(|iv| iv.contains(c))).collect()
        };
        let endpoints: Vec<f64> = (-4..=4).map(|j| j as f64 / 4.0).collect();
        let family: Vec<Vec<bool>> = open_interval_unions(&endpoints, k).iter().map(|p| label_by(p)).collect();
        let reference = label_by(&[Interval::open(0.0, 1.0)]);
        let delta = ImprovementMap::WholeSpace(InstanceSpace::Finite((0..n_rational).map(Point::from_id).collect()));
        let support: Vec<Point<f64>> = (n_rational..n).map(Point::from_id).collect();
        let dist = DistributionSpec::uniform_over(support)?;
        Ok(ExB1 {
            n_rational,
            coords,
            target: Hypothesis::FiniteLabeling(target_labels),
            family,
            reference,
            delta,
            dist,
        })
    }

    fn loss(&self, labels: &[bool], kind_moves: bool) -> Result<f64> {
        let h = Hypothesis::FiniteLabeling(labels.to_vec());
        let m = if kind_moves { &self.delta } else { &ImprovementMap::Stay };
        exact(&h, &self.target, m, &self.dist, LossKind::Improvement)
    }
}

impl Counterexample {
    /// Scenario with its default secondary parameters.
    pub fn new(id: ScenarioId, m: usize) -> Result<Self> {
        Self::with_options(id, m, OuterMoves::default(), 10, 2)
    }

    pub fn with_options(
        id: ScenarioId,
        m: usize,
        variant: OuterMoves,
        n_points: usize,
        max_intervals: usize,
    ) -> Result<Self> {
        let setup = match id {
            ScenarioId::Ex3_1 | ScenarioId::Ex3_2 | ScenarioId::Thm3_5 => Setup::Line,
            ScenarioId::Ex3_6 => {
                if n_points < 2 || !n_points.is_multiple_of(2) || n_points > 16 {
                    return Err(Error::Argument("n_points must be even and in 2..=16".into()));
                }
                let labelings = (0u64..1 << n_points)
                    .map(|mask| Hypothesis::FiniteLabeling((0..n_points).map(|i| mask >> i & 1 == 1).collect()))
                    .collect();
                Setup::Ex3_6 { n: n_points, labelings }
            }
            ScenarioId::ExB1 => {
                if n_points < 2 || !n_points.is_multiple_of(2) {
                    return Err(Error::Argument("n_points must be even and at least 2".into()));
                }
                if max_intervals == 0 || max_intervals > 3 {
                    return Err(Error::Argument("max_intervals must be in 1..=3".into()));
                }
                Setup::ExB1(Box::new(ExB1::build(n_points, max_intervals)?))
            }
            ScenarioId::Thm4_6Demo => {
                let c = find_hardness_construction(&demo_class(), 3)?
                    .ok_or_else(|| Error::InvariantViolation("demo class should admit the construction".into()))?;
                Setup::Demo(Box::new(c))
            }
        };
        Ok(Counterexample { id, m, variant, n_points, max_intervals, setup })
    }

    /// Deterministic, exhaustively computed quantities of the construction.
    pub fn constants(&self) -> Result<BTreeMap<String, f64>> {
        let mut out = BTreeMap::new();
        match &self.setup {
            Setup::Line => {
                if self.id == ScenarioId::Thm3_5 {
                    let (problem, tuple) = quarter_ball_svc_problem()?;
                    let set = super::svc::svc_shattering_coefficient(&problem, &tuple)?;
                    out.insert("achievable_labelings".into(), set.len() as f64);
                    let hit = set.contains(&vec![true, false, true, false, true]);
                    out.insert("pattern_10101_achievable".into(), f64::from(u8::from(hit)));
                }
            }
            Setup::Ex3_6 { n, labelings } => {
                let f = self.ex3_6_target(*n);
                let (space, dist) = (finite_space(*n), DistributionSpec::UniformNodes { n: *n });
                let mut best_str = f64::INFINITY;
                let mut best_imp = f64::INFINITY;
                for h in labelings {
                    best_str = best_str.min(exact(h, &f, &space, &dist, LossKind::Strategic)?);
                    best_imp = best_imp.min(exact(h, &f, &space, &dist, LossKind::Improvement)?);
                }
                out.insert("best_strategic_loss".into(), best_str);
                out.insert("best_improvement_loss".into(), best_imp);
                out.insert("class_size".into(), labelings.len() as f64);
            }
            Setup::ExB1(e) => {
                let mut best = f64::INFINITY;
                for h in &e.family {
                    best = best.min(e.loss(h, true)?);
                }
                out.insert("best_improvement_loss".into(), best);
                out.insert("reference_standard_loss".into(), e.loss(&e.reference, false)?);
                out.insert("reference_improvement_loss".into(), e.loss(&e.reference, true)?);
                out.insert("class_size".into(), e.family.len() as f64);
            }
            Setup::Demo(c) => {
                let table = c.min_max(&demo_class())?;
                out.insert("min_max_loss".into(), table.min_max);
                out.insert("guaranteed_floor".into(), c.floor());
                out.insert("class_size".into(), table.rows.len() as f64);
            }
        }
        Ok(out)
    }

    fn ex3_6_target(&self, n: usize) -> Hypothesis<f64> {
        Hypothesis::positive_on(n, 0..n / 2)
    }

    /// Trial `trial` under root seed `seed`; depends on nothing else.
    pub fn run_trial(&self, seed: u64, trial: usize) -> Result<TrialOutcome> {
        let mut rng = trial_rng(seed, trial as u64);
        let rng = &mut rng;
        let mut out = TrialOutcome {
            trial,
            target_param: f64::NAN,
            improvement_loss: 0.0,
            strategic_loss: None,
            standard_loss: None,
        };
        let line = |h: &Hypothesis<f64>, f: &Hypothesis<f64>, m: &ImprovementMap<f64>, k| {
            uniform_line_loss(h, f, m, 0.0, 1.0, k)
        };
        match (&self.setup, self.id) {
            (Setup::Line, ScenarioId::Ex3_1) => {
                let mass = rng.random_range(0.1..0.5);
                let f = random_three_intervals(rng, mass);
                let h = learn_singleton_positive(&uniform_sample(rng, self.m, &f));
                out.target_param = mass;
                out.improvement_loss = line(&h, &f, &unit_space(), LossKind::Improvement)?;
                out.standard_loss = Some(line(&h, &f, &ImprovementMap::Stay, LossKind::Improvement)?);
            }
            (Setup::Line, ScenarioId::Ex3_2) => {
                let b = rng.random_range(0.25..0.75);
                let f = punctured(0.25, b, 0.75);
                let h = hull_learner(&uniform_sample(rng, self.m, &f));
                let delta = match self.variant {
                    OuterMoves::Anywhere => outer_quarters_map(),
                    OuterMoves::Nowhere => ImprovementMap::Stay,
                };
                out.target_param = b;
                out.improvement_loss = line(&h, &f, &delta, LossKind::Improvement)?;
                out.standard_loss = Some(line(&h, &f, &ImprovementMap::Stay, LossKind::Improvement)?);
            }
            (Setup::Line, _) => {
                let b = rng.random_range(0.75..1.0);
                let f = punctured(0.5, b, 1.0);
                let h = hull_learner(&uniform_sample(rng, self.m, &f));
                out.target_param = b;
                out.improvement_loss = line(&h, &f, &quarter_ball_map(), LossKind::Improvement)?;
                out.strategic_loss = Some(line(&h, &f, &quarter_ball_map(), LossKind::Strategic)?);
                out.standard_loss = Some(line(&h, &f, &ImprovementMap::Stay, LossKind::Improvement)?);
            }
            (Setup::Ex3_6 { n, .. }, _) => {
                let f = self.ex3_6_target(*n);
                let dist = DistributionSpec::UniformNodes { n: *n };
                let sample: Vec<LabeledExample<f64>> =
                    (0..self.m).map(|_| LabeledExample::labeled_by(dist.sample(rng), &f)).collect();
                let h = learn_singleton_positive(&sample);
                let space = finite_space(*n);
                out.improvement_loss = exact(&h, &f, &space, &dist, LossKind::Improvement)?;
                out.strategic_loss = Some(exact(&h, &f, &space, &dist, LossKind::Strategic)?);
                out.standard_loss = Some(exact(&h, &f, &ImprovementMap::Stay, &dist, LossKind::Improvement)?);
            }
            (Setup::ExB1(e), _) => {
                let labels = match &e.target {
                    Hypothesis::FiniteLabeling(l) => l,
                    _ => unreachable!("target is a labeling"),
                };
                let n_irr = e.coords.len() - e.n_rational;
                let sample: Vec<usize> = (0..self.m).map(|_| e.n_rational + rng.random_range(0..n_irr)).collect();
                // Empirical risk minimiser over the class, first in order on ties.
                let h = e
                    .family
                    .iter()
                    .min_by_key(|h| sample.iter().filter(|&&i| h[i] != labels[i]).count())
                    .expect("nonempty class");
                out.improvement_loss = e.loss(h, true)?;
                out.standard_loss = Some(e.loss(h, false)?);
            }
            (Setup::Demo(c), _) => {
                let first = rng.random_bool(0.5);
                let target = if first { c.h1 } else { c.h2 };
                let sample: Vec<LabeledExample<f64>> = (0..self.m)
                    .map(|_| LabeledExample::labeled_by(c.dist.sample(rng), &c.hypothesis(target)))
                    .collect();
                // Proper learner: the first minimally consistent member.
                let pos = to_mask(
                    &(0..c.n).map(|i| sample.iter().any(|e| e.label && e.point.as_id() == Some(i))).collect::<Vec<_>>(),
                );
                let members = demo_class();
                let cons: Vec<u64> = members.members().iter().copied().filter(|&h| h & pos == pos).collect();
                let h = cons
                    .iter()
                    .copied()
                    .find(|&h| !cons.iter().any(|&g| g != h && g & h == g))
                    .ok_or_else(|| Error::InvariantViolation("no consistent member".into()))?;
                out.target_param = if first { 1.0 } else { 2.0 };
                out.improvement_loss = c.loss(h, target)?;
                out.standard_loss = Some(exact(
                    &c.hypothesis(h),
                    &c.hypothesis(target),
                    &ImprovementMap::Stay,
                    &c.dist,
                    LossKind::Improvement,
                )?);
            }
        }
        Ok(out)
    }

    /// Runs `n_trials` trials sequentially and aggregates.
    pub fn run(&self, n_trials: usize, seed: u64) -> Result<CounterexampleReport> {
        let trials = (0..n_trials).map(|t| self.run_trial(seed, t)).collect::<Result<Vec<_>>>()?;
        self.aggregate(trials, seed)
    }

    /// Aggregates trials, which must be sorted by trial index.
    pub fn aggregate(&self, trials: Vec<TrialOutcome>, seed: u64) -> Result<CounterexampleReport> {
        let improvement = Estimate::from_samples(trials.iter().map(|t| t.improvement_loss));
        let opt = |f: fn(&TrialOutcome) -> Option<f64>| -> Option<Estimate> {
            let v: Option<Vec<f64>> = trials.iter().map(f).collect();
            v.filter(|v| !v.is_empty()).map(Estimate::from_samples)
        };
        let zero = trials.iter().filter(|t| t.improvement_loss == 0.0).count();
        Ok(CounterexampleReport {
            scenario: self.id,
            m: self.m,
            n_trials: trials.len(),
            seed,
            improvement_ci95: improvement.ci95(),
            improvement,
            zero_loss_fraction: zero as f64 / trials.len().max(1) as f64,
            strategic: opt(|t| t.strategic_loss),
            standard: opt(|t| t.standard_loss),
            constants: self.constants()?,
            trials,
        })
    }
}

/// Runs scenario `scenario_id` with sample size `m`.
pub fn run_counterexample(scenario_id: &str, m: usize, n_trials: usize, rng_seed: u64) -> Result<CounterexampleReport> {
    Counterexample::new(scenario_id.parse()?, m)?.run(n_trials, rng_seed)
}

/// `ceil((1 / eps) ln(1 / delta))`.
pub fn singleton_sample_size(eps: f64, delta: f64) -> usize {
    ((1.0 / delta).ln() / eps).ceil() as usize
}
