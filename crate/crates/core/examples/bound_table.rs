//! Closed-form bounds over a range of orders, as CSV.
//!
//! cargo run --example bound_table -- 2 16

use mobius_metric::constructions::{evaluate_bounds, BoundTable, LogBase, Quantity};
use mobius_metric::field::prime_power;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u32>());
    let lo = args.next().unwrap_or(Ok(2))?;
    let hi = args.next().unwrap_or(Ok(16))?;

    println!("{}", BoundTable::csv_header());
    let mut summary = Vec::new();
    for q in (lo..=hi).filter(|&q| prime_power(q).is_some()) {
        let table = evaluate_bounds(q);
        for row in table.csv_rows() {
            println!("{row}");
        }
        let bad = table.inconsistencies();
        summary.push(format!(
            "q={q}: dim >= {:.1}, dim <= {:.1} (ln) / {:.1} (log2), inconsistent {bad:?}",
            table.lower(Quantity::MetricDimension).unwrap_or(f64::NAN),
            table
                .upper(Quantity::MetricDimension, LogBase::Natural)
                .unwrap_or(f64::NAN),
            table
                .upper(Quantity::MetricDimension, LogBase::Binary)
                .unwrap_or(f64::NAN),
        ));
    }
    for line in summary {
        eprintln!("{line}");
    }
    Ok(())
}
