//! Smallest sets whose points separate the circles and whose circles
//! separate the points.
//!
//! cargo run --release --example split_resolving -- 4

use mobius_metric::instance::split_instances;
use mobius_metric::metric::is_split_resolving;
use mobius_metric::solver::{exact_min_hitting_set, Budget};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;
    let (points_for_circles, circles_for_points) = split_instances(&plane);

    let mut set = Vec::new();
    for (name, inst) in [
        ("points", &points_for_circles),
        ("circles", &circles_for_points),
    ] {
        let out = exact_min_hitting_set(inst, Budget::seconds(60), None)?;
        println!(
            "{name}: {} ({:?}, {} nodes)",
            out.upper, out.status, out.nodes
        );
        set.extend(inst.vertices_of(&out.witness));
    }
    let verdict = is_split_resolving(&plane, &set);
    println!("total {}; verified: {}", set.len(), verdict.is_ok());
    Ok(())
}
