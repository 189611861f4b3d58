use super::{Graph, GraphInstance};
use crate::error::{Error, Result};
use crate::model::{population_loss_exact, Hypothesis, LossKind};

pub fn is_dominating_set(g: &Graph, set: &[usize]) -> bool {
    let mut dom = vec![false; g.n()];
    for &u in set {
        dom[u] = true;
        for &v in g.neighbors(u) {
            dom[v] = true;
        }
    }
    dom.into_iter().all(|b| b)
}

/// Greedy dominating set: repeatedly take the node whose closed
/// neighbourhood covers the most undominated nodes, lowest id on ties.
pub fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let gain = |u: usize| usize::from(!dominated[u]) + g.neighbors(u).iter().filter(|&&v| !dominated[v]).count();
        let mut best = 0;
        let mut best_gain = 0;
        for u in 0..n {
            let k = gain(u);
            if k > best_gain {
                best = u;
                best_gain = k;
            }
        }
        chosen.push(best);
        for v in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !dominated[v] {
                dominated[v] = true;
                left -= 1;
            }
        }
    }
    chosen.sort_unstable();
    assert!(is_dominating_set(g, &chosen), "greedy output must dominate");
    chosen
}

/// Teaching set for a student that labels positive only what it was shown
/// as positive: a dominating set of the positive subgraph. Returns the set
/// and the student's hypothesis after checking its exact loss is zero.
pub fn teach_risk_averse_student(instance: &GraphInstance) -> Result<(Vec<usize>, Hypothesis<f64>)> {
    let pos = instance.positives();
    let (g_plus, back) = instance.graph.induced(&pos);
    let mut teach: Vec<usize> = greedy_dominating_set(&g_plus).into_iter().map(|i| back[i]).collect();
    teach.sort_unstable();
    let h = Hypothesis::positive_on(instance.n(), teach.iter().copied());
    let loss =
        population_loss_exact(&h, &instance.target(), &instance.delta(1), &instance.uniform(), LossKind::Improvement)?;
    if loss != 0.0 {
        return Err(Error::InvariantViolation(format!("teaching set leaves exact loss {loss}")));
    }
    Ok((teach, h))
}
