//! Uniform fractional hitting sets, checked in exact rational arithmetic.
//!
//! cargo run --example fractional_bounds -- 5

use mobius_metric::instance::{blocking_instance, circle_pair_edge_minima, circle_pair_instance};
use mobius_metric::solver::{greedy_guarantee, uniform_fractional_check};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(5), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;
    let q64 = u64::from(q);

    let blocking = blocking_instance(&plane);
    let fa = uniform_fractional_check(&blocking, 1, q64 + 1);
    println!(
        "blocking, 1/(q+1) everywhere: feasible {} tight {} objective {}",
        fa.feasible, fa.tight, fa.objective
    );
    println!(
        "  greedy guarantee {:.2}",
        greedy_guarantee(fa.objective.to_f64(), blocking.max_degree())
    );

    let pairs = circle_pair_instance(&plane);
    let minima = circle_pair_edge_minima(&plane);
    println!("circle-pair edge minima by distance class: {minima:?}");
    let smallest = pairs
        .edges
        .iter()
        .map(|e| e.members.count())
        .min()
        .unwrap_or(1) as u64;
    let fa = uniform_fractional_check(&pairs, 1, smallest);
    println!(
        "circle pairs, 1/{smallest} everywhere: feasible {} objective {} ({:.2})",
        fa.feasible,
        fa.objective,
        fa.objective.to_f64()
    );
    Ok(())
}
