//! The exact solver on a hand-written hypergraph, with node budgets.
//!
//! cargo run --example hitting_sets

use mobius_metric::bitset::BitSet;
use mobius_metric::instance::CoverInstance;
use mobius_metric::solver::{
    disjoint_edge_lower_bound, exact_min_hitting_set, greedy_cover, Budget,
};

fn main() -> anyhow::Result<()> {
    // Every 3-subset of nine points: a hitting set must leave at most two
    // points out, so the optimum is seven.
    let mut triples = Vec::new();
    for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                triples.push(vec![a, b, c]);
            }
        }
    }
    let inst = CoverInstance::from_sets(9, &triples)?;
    let none = BitSet::new(inst.num_edges());
    println!("packing bound {}", disjoint_edge_lower_bound(&inst, &none));
    println!("greedy {:?}", greedy_cover(&inst)?.chosen);

    for budget in [Budget::nodes(1), Budget::nodes(20), Budget::unlimited()] {
        let out = exact_min_hitting_set(&inst, budget, None)?;
        println!(
            "{:?}: {}..{} witness {:?} ({} nodes)",
            out.status, out.lower, out.upper, out.witness, out.nodes
        );
    }
    Ok(())
}
