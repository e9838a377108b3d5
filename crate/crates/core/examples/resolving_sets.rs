//! Metric dimension of a small plane by exact hitting-set search.
//!
//! cargo run --release --example resolving_sets -- 3

use mobius_metric::instance::resolve_all_instance;
use mobius_metric::metric::{all_vertices, is_resolving};
use mobius_metric::solver::{exact_min_hitting_set, greedy_cover, Budget};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;
    let instance = resolve_all_instance(&plane);
    println!(
        "{} positions, {} distinguishing edges, largest degree {}",
        instance.universe_size(),
        instance.num_edges(),
        instance.max_degree()
    );
    println!("greedy finds {}", greedy_cover(&instance)?.len());

    let out = exact_min_hitting_set(&instance, Budget::seconds(60), None)?;
    let set = instance.vertices_of(&out.witness);
    let names: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    println!(
        "{:?}: {} <= dim <= {} after {} nodes in {:.2?}",
        out.status, out.lower, out.upper, out.nodes, out.elapsed
    );
    println!("witness {{{}}}", names.join(", "));
    println!(
        "independent check: {}",
        is_resolving(&plane, &set, &all_vertices(&plane)).is_ok()
    );
    Ok(())
}
