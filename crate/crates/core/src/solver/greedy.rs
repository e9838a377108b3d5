use serde::Serialize;

use super::SolverError;
use crate::instance::CoverInstance;

/// Output of the greedy hitting-set heuristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    /// Universe positions in selection order.
    pub chosen: Vec<usize>,
    /// Edges first hit at each step; non-increasing, sums to the edge count.
    pub newly_covered: Vec<usize>,
}

impl GreedyTrace {
    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

/// Repeatedly takes the position hitting the most unhit edges, lowest
/// position on ties.
pub fn greedy_cover(instance: &CoverInstance) -> Result<GreedyTrace, SolverError> {
    if let Some(e) = instance.first_empty_edge() {
        return Err(SolverError::EmptyEdge(e));
    }
    let n = instance.universe_size();
    let mut count = instance.degrees();
    let mut hit = vec![false; instance.num_edges()];
    let mut remaining = instance.num_edges();
    let mut trace = GreedyTrace {
        chosen: Vec::new(),
        newly_covered: Vec::new(),
    };
    while remaining > 0 {
        let best = (0..n)
            .max_by_key(|&v| (count[v], std::cmp::Reverse(v)))
            .expect("nonempty universe when edges remain");
        let mut newly = 0;
        for (e, edge) in instance.edges.iter().enumerate() {
            if !hit[e] && edge.members.contains(best) {
                hit[e] = true;
                newly += 1;
                for u in edge.members.iter() {
                    count[u] -= 1;
                }
            }
        }
        debug_assert!(newly > 0);
        remaining -= newly;
        trace.chosen.push(best);
        trace.newly_covered.push(newly);
    }
    Ok(trace)
}

/// The greedy guarantee `τ*·(1 + ln d)`.
pub fn greedy_guarantee(tau_star: f64, max_degree: usize) -> f64 {
    tau_star * (1.0 + (max_degree as f64).ln())
}
