//! End-to-end checks of planes, metric, solvers and constructions. Prints
//! one PASS/FAIL line per check and exits nonzero if any fails.
//!
//! Exact solves on orders 4 and 5 use `cli::default_budget`, so
//! `MOBIUS_BUDGET_SECS` shortens (or lengthens) them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use mobius_metric::cli::default_budget;
use mobius_metric::constructions::{
    blocking_bound, build_s1, build_s1_s2, evaluate_bounds, greedy_blocking_set,
    s1_resolves_points, LogBase, Quantity,
};
use mobius_metric::instance::{
    blocking_instance, circle_pair_edge_minima, circle_pair_instance, resolve_all_instance,
    split_instances, CoverInstance,
};
use mobius_metric::metric::{
    self, bfs_distances, distance, first_unblocked_circle, is_resolving, Vertex,
};
use mobius_metric::solver::{
    exact_min_hitting_set, greedy_cover, uniform_fractional_check, Budget, SolveOutcome,
};
use mobius_metric::MobiusPlane;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn plane(q: u32) -> MobiusPlane {
    MobiusPlane::miquelian(q).expect("supported order")
}

fn solve(inst: &CoverInstance, budget: Budget) -> Result<SolveOutcome, String> {
    let out = exact_min_hitting_set(inst, budget, None).map_err(|e| e.to_string())?;
    ensure(inst.is_hit_by(&out.witness), || {
        format!("{} witness misses an edge", inst.kind.tag())
    })?;
    Ok(out)
}

fn budget(q: u32) -> Budget {
    Budget {
        time: Some(default_budget(q).expect("valid budget")),
        nodes: None,
    }
}

fn planes_verify() -> Check {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let p = plane(q);
        let axioms = p.verify_axioms();
        ensure(axioms.all_passed(), || {
            format!("q={q} axioms: {:?}", axioms.results)
        })?;
        let counts = p.verify_counts();
        ensure(counts.all_passed(), || {
            format!("q={q} counts: {:?}", counts.items)
        })?;
    }
    Ok("q in {2,3,4,5,7,8,9}: four axioms and six counts hold".into())
}

fn distances_match_bfs() -> Check {
    let mut pairs = 0;
    for q in [2, 3, 4] {
        let p = plane(q);
        let all = metric::all_vertices(&p);
        for &u in &all {
            let bfs = bfs_distances(&p, u);
            for &v in &all {
                let closed = distance(&p, u, v).map_err(|e| e.to_string())?;
                ensure(bfs[v.index(&p)] == Some(u32::from(closed)), || {
                    format!("q={q} d({u},{v}) = {closed}, bfs {:?}", bfs[v.index(&p)])
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs agree"))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn m2_metric_dimension() -> Check {
    let p = plane(2);
    let inst = resolve_all_instance(&p);
    let out = solve(&inst, Budget::seconds(60))?;
    ensure(out.is_optimal() && out.upper == 4, || {
        format!("got {out:?}")
    })?;
    let all = metric::all_vertices(&p);
    ensure(
        is_resolving(&p, &inst.vertices_of(&out.witness), &all).is_ok(),
        || "witness fails".into(),
    )?;
    for s in subsets(5, 4) {
        let s: Vec<Vertex> = s.into_iter().map(Vertex::Point).collect();
        ensure(is_resolving(&p, &s, &all).is_ok(), || {
            format!("{s:?} does not resolve")
        })?;
    }
    let triples = subsets(all.len(), 3);
    for t in &triples {
        let s: Vec<Vertex> = t.iter().map(|&i| all[i]).collect();
        ensure(!is_resolving(&p, &s, &all).is_ok(), || {
            format!("{s:?} resolves")
        })?;
    }
    Ok(format!(
        "optimum 4; all 5 point 4-sets resolve; none of {} triples do",
        triples.len()
    ))
}

fn m2_split() -> Check {
    for p in [plane(2), MobiusPlane::order2_subsets()] {
        let (a, b) = split_instances(&p);
        let oa = solve(&a, Budget::seconds(60))?;
        let ob = solve(&b, Budget::seconds(60))?;
        ensure(oa.is_optimal() && ob.is_optimal(), || "not optimal".into())?;
        ensure((ob.upper, oa.upper) == (4, 3), || {
            format!("sides points {} circles {}", ob.upper, oa.upper)
        })?;
        let mut w = a.vertices_of(&oa.witness);
        w.extend(b.vertices_of(&ob.witness));
        ensure(metric::is_split_resolving(&p, &w).is_ok(), || {
            "split witness fails".into()
        })?;
    }
    let p = MobiusPlane::order2_subsets();
    // labels 1..5 are ids 0..4
    let circles: Vec<Vertex> = [[0, 1, 2], [0, 1, 3], [0, 2, 3]]
        .iter()
        .map(|c| Vertex::Circle(p.find_circle(c).expect("3-subset")))
        .collect();
    let pts: Vec<Vertex> = metric::points(&p).collect();
    ensure(is_resolving(&p, &circles, &pts).is_ok(), || {
        "{123},{124},{134} fail".into()
    })?;
    Ok("points 4 + circles 3 = 7; {123},{124},{134} resolve the points".into())
}

fn order3_table() -> Check {
    let p = plane(3);
    let budget = Budget::seconds(600);
    let r = solve(&resolve_all_instance(&p), budget)?;
    let (a, b) = split_instances(&p);
    let (oa, ob) = (solve(&a, budget)?, solve(&b, budget)?);
    ensure(r.is_optimal() && r.upper == 8, || {
        format!("resolving {}..{}", r.lower, r.upper)
    })?;
    ensure(
        oa.is_optimal() && ob.is_optimal() && oa.upper + ob.upper == 11,
        || format!("split {}+{}", oa.upper, ob.upper),
    )?;
    let all = metric::all_vertices(&p);
    let inst = resolve_all_instance(&p);
    ensure(
        is_resolving(&p, &inst.vertices_of(&r.witness), &all).is_ok(),
        || "witness fails".into(),
    )?;
    let mut w = a.vertices_of(&oa.witness);
    w.extend(b.vertices_of(&ob.witness));
    ensure(metric::is_split_resolving(&p, &w).is_ok(), || {
        "split witness fails".into()
    })?;
    Ok(format!(
        "resolving 8, split {} + {} = 11",
        ob.upper, oa.upper
    ))
}

/// Optimal and equal to `expected`, or bounded with `expected` inside the
/// certified interval.
fn matches_or_brackets(
    label: &str,
    lower: usize,
    upper: usize,
    optimal: bool,
    expected: usize,
) -> Check {
    if optimal {
        ensure(upper == expected, || {
            format!("{label}: optimum {upper}, expected {expected}")
        })?;
        Ok(format!("{label} = {upper}"))
    } else {
        ensure(lower <= expected && expected <= upper, || {
            format!("{label}: interval {lower}..{upper} misses {expected}")
        })?;
        Ok(format!("{label} in {lower}..{upper} (budget hit)"))
    }
}

fn orders_4_and_5() -> Check {
    let mut notes = Vec::new();
    let p4 = plane(4);
    let inst = resolve_all_instance(&p4);
    let r = solve(&inst, budget(4))?;
    if !r.is_optimal() {
        let g = greedy_cover(&inst).map_err(|e| e.to_string())?;
        ensure(g.len() >= 11, || format!("greedy {} below 11", g.len()))?;
    }
    notes.push(matches_or_brackets(
        "mu(4)",
        r.lower,
        r.upper,
        r.is_optimal(),
        11,
    )?);
    let (a, b) = split_instances(&p4);
    let (oa, ob) = (solve(&a, budget(4))?, solve(&b, budget(4))?);
    notes.push(matches_or_brackets(
        "split(4)",
        oa.lower + ob.lower,
        oa.upper + ob.upper,
        oa.is_optimal() && ob.is_optimal(),
        15,
    )?);

    let p5 = plane(5);
    let (a, b) = split_instances(&p5);
    let (oa, ob) = (solve(&a, budget(5))?, solve(&b, budget(5))?);
    ensure(
        oa.is_optimal() && ob.is_optimal() && oa.upper + ob.upper == 21,
        || {
            format!(
                "split(5) {}..{} + {}..{}",
                oa.lower, oa.upper, ob.lower, ob.upper
            )
        },
    )?;
    notes.push("split(5) = 21".into());
    let r = solve(&resolve_all_instance(&p5), budget(5))?;
    ensure(
        r.lower <= 13 && r.upper >= 9 && r.lower >= 8 && r.upper <= 13,
        || {
            format!(
                "mu(5) interval {}..{} inconsistent with 9..13",
                r.lower, r.upper
            )
        },
    )?;
    notes.push(format!("mu(5) in {}..{}", r.lower, r.upper));
    Ok(notes.join("; "))
}

fn s1_construction() -> Check {
    for q in [3, 4, 5, 7, 8, 9] {
        let p = plane(q);
        let s1 = build_s1(&p, 0, None, None).map_err(|e| e.to_string())?;
        ensure(s1.circles.len() == 2 * q as usize - 2, || {
            format!("q={q} size {}", s1.circles.len())
        })?;
        ensure(s1_resolves_points(&p, &s1), || {
            format!("q={q} does not resolve points")
        })?;
    }
    Ok("q in {3,4,5,7,8,9}: 2q-2 circles resolving all points".into())
}

fn greedy_bounds() -> Check {
    let mut sizes = Vec::new();
    for q in [4, 5, 7, 8, 9] {
        let p = plane(q);
        let table = evaluate_bounds(q);
        let c = build_s1_s2(&p).map_err(|e| e.to_string())?;
        let all = c.vertices();
        ensure(
            is_resolving(&p, &all, &metric::all_vertices(&p)).is_ok(),
            || format!("q={q} S1+S2 fails"),
        )?;
        let mu_upper = table
            .upper(Quantity::MetricDimension, LogBase::Natural)
            .expect("q >= 4");
        ensure((all.len() as f64) < mu_upper, || {
            format!("q={q} |S1+S2| {} vs {mu_upper}", all.len())
        })?;
        let b = greedy_blocking_set(&p).map_err(|e| e.to_string())?;
        ensure(first_unblocked_circle(&p, &b).is_none(), || {
            format!("q={q} blocking fails")
        })?;
        let bound = blocking_bound(q, LogBase::Natural);
        ensure((b.len() as f64) < bound, || {
            format!("q={q} blocking {} vs {bound}", b.len())
        })?;
        if q == 9 {
            ensure(b.len() >= 18, || format!("blocking {} below 2q", b.len()))?;
        }
        sizes.push(format!("q={q}: {}/{}", all.len(), b.len()));
    }
    Ok(format!("S1+S2 / blocking sizes {}", sizes.join(", ")))
}

fn edge_size_bound() -> Check {
    let mut mins = Vec::new();
    for q in [4u32, 5, 7] {
        let p = plane(q);
        let inst = circle_pair_instance(&p);
        let min = inst
            .edges
            .iter()
            .map(|e| e.members.count())
            .min()
            .expect("edges") as i64;
        let q = i64::from(q);
        // min ≥ q³/2 − 3q² + 11q/2 − 1, doubled to stay in integers
        ensure(2 * min >= q * q * q - 6 * q * q + 11 * q - 2, || {
            format!("q={q} min edge {min}")
        })?;
        let minima = circle_pair_edge_minima(&p);
        let secant = minima[2].expect("secant pairs exist");
        ensure(minima.iter().flatten().all(|&m| secant <= m), || {
            format!("q={q} minima {minima:?}")
        })?;
        mins.push(format!("q={q}: {min}"));
    }
    Ok(format!("smallest circle-pair edges {}", mins.join(", ")))
}

fn fractional_assignments() -> Check {
    for q in [4u64, 5, 7] {
        let p = plane(q as u32);
        let block = uniform_fractional_check(&blocking_instance(&p), 1, q + 1);
        ensure(block.feasible && block.tight, || {
            format!("q={q} blocking {block:?}")
        })?;
        let (_, points_side) = split_instances(&p);
        let split = uniform_fractional_check(&points_side, 1, 2 * q - 2);
        ensure(split.feasible, || format!("q={q} split {split:?}"))?;
        let den = q * q * q + 11 * q - 6 * q * q - 2;
        let pairs = uniform_fractional_check(&circle_pair_instance(&p), 2, den);
        ensure(pairs.feasible, || format!("q={q} circle pairs {pairs:?}"))?;
    }
    Ok("1/(q+1) tight, 1/(2q-2) and 2/(q^3-6q^2+11q-2) feasible for q in {4,5,7}".into())
}

fn bound_tables() -> Check {
    for q in 3..=1000 {
        let bad = evaluate_bounds(q).inconsistencies();
        ensure(bad.is_empty(), || format!("q={q}: {bad:?}"))?;
    }
    Ok("lower <= upper for every applicable pair, 3 <= q <= 1000".into())
}

fn main() {
    let checks: [(&str, fn() -> Check); 11] = [
        ("1 plane construction", planes_verify),
        ("2 distance oracle", distances_match_bfs),
        ("3 metric dimension of M(2)", m2_metric_dimension),
        ("4 split structure of M(2)", m2_split),
        ("5 order 3 optima", order3_table),
        ("6 order 4 and 5 optima", orders_4_and_5),
        ("7 S1 construction", s1_construction),
        ("8 greedy bounds", greedy_bounds),
        ("9 circle-pair edge sizes", edge_size_bound),
        ("10 uniform fractional solutions", fractional_assignments),
        ("11 bound table consistency", bound_tables),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check) in checks {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} check(s) failed");
        std::process::exit(1);
    }
}
