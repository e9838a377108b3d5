//! The two-pencil circle set and its greedy completion to a resolving set.
//!
//! cargo run --release --example constructions -- 7

use mobius_metric::constructions::{
    build_s1, build_s2_greedy, diagnostics_counters, s1_resolves_points,
};
use mobius_metric::metric::{all_vertices, is_resolving};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(7), |s| s.parse())?;
    let plane = MobiusPlane::miquelian(q)?;

    let s1 = build_s1(&plane, 0, None, None)?;
    println!(
        "S1: {} circles from classes {:?}, dropping {:?}",
        s1.circles.len(),
        s1.classes,
        s1.removed
    );
    println!(
        "  pencils separate outer points: {}",
        s1.pencils_separate(&plane)
    );
    println!("  resolves all points: {}", s1_resolves_points(&plane, &s1));

    let full = build_s2_greedy(&plane, &s1)?;
    let set = full.vertices();
    println!("S2: {} vertices chosen greedily", full.s2.len());
    println!("  gains per step {:?}", full.trace.newly_covered);

    let c = diagnostics_counters(&plane, &set);
    println!(
        "S1+S2: {} vertices ({} points, {} circles), resolving: {}",
        set.len(),
        c.points_in_set,
        c.circles_in_set,
        is_resolving(&plane, &set, &all_vertices(&plane)).is_ok()
    );
    println!(
        "  t={} t0={} t1={} t2={}; split necessary conditions: point side {}, circle side {}",
        c.t,
        c.t0,
        c.t1,
        c.t2,
        c.point_side_holds(),
        c.circle_side_holds()
    );
    Ok(())
}
