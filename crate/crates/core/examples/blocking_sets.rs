//! Point sets meeting every circle: greedy against exact.
//!
//! cargo run --release --example blocking_sets

use mobius_metric::constructions::{blocking_bound, greedy_blocking_set, LogBase};
use mobius_metric::instance::blocking_instance;
use mobius_metric::metric::first_unblocked_circle;
use mobius_metric::solver::{exact_min_hitting_set, Budget};
use mobius_metric::MobiusPlane;

fn main() -> anyhow::Result<()> {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let plane = MobiusPlane::miquelian(q)?;
        let greedy = greedy_blocking_set(&plane)?;
        assert!(first_unblocked_circle(&plane, &greedy).is_none());
        let exact = if q <= 5 {
            let out = exact_min_hitting_set(&blocking_instance(&plane), Budget::seconds(10), None)?;
            format!("{}..{}", out.lower, out.upper)
        } else {
            "-".into()
        };
        println!(
            "q={q}: greedy {:>3}  exact {exact:>6}  greedy bound {:.1}",
            greedy.len(),
            blocking_bound(q, LogBase::Natural)
        );
    }
    Ok(())
}
