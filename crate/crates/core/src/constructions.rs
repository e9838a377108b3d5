//! Explicit resolving and blocking constructions, closed-form bounds, and
//! counters that sanity-check verified sets.

use serde::Serialize;
use thiserror::Error;

use crate::instance::{blocking_instance, circle_pair_instance};
use crate::metric::{self, Vertex};
use crate::plane::{CircleId, MobiusPlane, PlaneError, PointId};
use crate::solver::{greedy_cover, GreedyTrace, SolverError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("construction needs order at least {min}, got {q}")]
    OrderTooSmall { q: u32, min: u32 },
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("parallel class {0} does not exist")]
    InvalidClass(usize),
    #[error("parallel classes must differ")]
    SameClass,
    #[error("circle {circle} is not in parallel class {class}")]
    InvalidRemoval { circle: CircleId, class: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Two tangent pencils at a base point, each missing one circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S1Construction {
    pub base_point: PointId,
    pub classes: [usize; 2],
    pub pencils: [Vec<CircleId>; 2],
    pub removed: [CircleId; 2],
    /// Sorted circle ids.
    pub circles: Vec<CircleId>,
}

impl S1Construction {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.circles.iter().map(|&c| Vertex::Circle(c)).collect()
    }

    /// Any two points other than the base point lie on different circles
    /// of the first pencil or of the second one.
    pub fn pencils_separate(&self, plane: &MobiusPlane) -> bool {
        let line_of =
            |pencil: &[CircleId], p: PointId| pencil.iter().position(|&z| plane.incident(p, z));
        let outer: Vec<PointId> = plane.points().filter(|&p| p != self.base_point).collect();
        outer.iter().enumerate().all(|(i, &a)| {
            outer[i + 1..].iter().all(|&b| {
                self.pencils
                    .iter()
                    .any(|pen| line_of(pen, a) != line_of(pen, b))
            })
        })
    }
}

/// Builds S₁ at `base_point`. Classes default to the first two parallel
/// classes of the residue and removals to the first circle of each.
pub fn build_s1(
    plane: &MobiusPlane,
    base_point: PointId,
    class_pair: Option<(usize, usize)>,
    removal: Option<(CircleId, CircleId)>,
) -> Result<S1Construction, ConstructionError> {
    let q = plane.order();
    if q < 3 {
        return Err(ConstructionError::OrderTooSmall { q, min: 3 });
    }
    let residue = plane.affine_residue(base_point)?;
    let (i, j) = class_pair.unwrap_or((0, 1));
    for c in [i, j] {
        if c >= residue.parallel_classes.len() {
            return Err(ConstructionError::InvalidClass(c));
        }
    }
    if i == j {
        return Err(ConstructionError::SameClass);
    }
    let pencils = [
        residue.parallel_classes[i].clone(),
        residue.parallel_classes[j].clone(),
    ];
    let removed = match removal {
        Some((a, b)) => [a, b],
        None => [pencils[0][0], pencils[1][0]],
    };
    for (k, (&r, pen)) in removed.iter().zip(&pencils).enumerate() {
        if !pen.contains(&r) {
            return Err(ConstructionError::InvalidRemoval {
                circle: r,
                class: [i, j][k],
            });
        }
    }
    let mut circles: Vec<CircleId> = pencils
        .iter()
        .flatten()
        .copied()
        .filter(|c| !removed.contains(c))
        .collect();
    circles.sort_unstable();
    Ok(S1Construction {
        base_point,
        classes: [i, j],
        pencils,
        removed,
        circles,
    })
}

/// S₁ followed by a greedy hitting set of the circle pairs S₁ leaves
/// unresolved.
#[derive(Debug, Clone, Serialize)]
pub struct S1S2Construction {
    pub s1: S1Construction,
    pub s2: Vec<Vertex>,
    pub trace: GreedyTrace,
}

impl S1S2Construction {
    /// `S₁ ∪ S₂`, sorted.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut all = self.s1.vertices();
        all.extend(&self.s2);
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn build_s2_greedy(
    plane: &MobiusPlane,
    s1: &S1Construction,
) -> Result<S1S2Construction, ConstructionError> {
    let full = circle_pair_instance(plane);
    let seed = full
        .positions_of(&s1.vertices())
        .expect("circles belong to the vertex universe");
    let residual = full.residual(&seed);
    let trace = greedy_cover(&residual)?;
    Ok(S1S2Construction {
        s1: s1.clone(),
        s2: residual.vertices_of(&trace.chosen),
        trace,
    })
}

/// Default S₁ at the point at infinity, then S₂.
pub fn build_s1_s2(plane: &MobiusPlane) -> Result<S1S2Construction, ConstructionError> {
    let s1 = build_s1(plane, 0, None, None)?;
    build_s2_greedy(plane, &s1)
}

/// Greedy blocking set, as sorted point ids.
pub fn greedy_blocking_set(plane: &MobiusPlane) -> Result<Vec<PointId>, ConstructionError> {
    let trace = greedy_cover(&blocking_instance(plane))?;
    let mut pts = trace.chosen;
    pts.sort_unstable();
    Ok(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    Natural,
    Binary,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Binary => x.log2(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
    Exact,
}

/// What a bound is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    MetricDimension,
    /// Circles of an optimal resolving set.
    ResolvingCircles,
    /// The greedy second stage of the S₁ ∪ S₂ construction.
    S2Size,
    SplitCircles,
    SplitPoints,
    SplitTotal,
    Blocking,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::MetricDimension => "metric-dimension",
            Quantity::ResolvingCircles => "resolving-circles",
            Quantity::S2Size => "s2-size",
            Quantity::SplitCircles => "split-circles",
            Quantity::SplitPoints => "split-points",
            Quantity::SplitTotal => "split-total",
            Quantity::Blocking => "blocking",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub quantity: Quantity,
    pub side: BoundSide,
    /// Short formula identifier, unique per quantity and side.
    pub formula: &'static str,
    /// `None` for formulas without a logarithm.
    pub log: Option<LogBase>,
    pub value: f64,
    /// Smallest order the bound is stated for.
    pub min_q: u32,
    /// Largest order the bound is stated for, if limited.
    pub max_q: Option<u32>,
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub q: u32,
    pub entries: Vec<BoundEntry>,
}

impl BoundTable {
    pub fn find(
        &self,
        quantity: Quantity,
        side: BoundSide,
        log: Option<LogBase>,
    ) -> Option<&BoundEntry> {
        self.entries
            .iter()
            .find(|e| e.quantity == quantity && e.side == side && e.log == log && e.applicable)
    }

    /// The strongest applicable lower bound (an exact value counts as one).
    pub fn lower(&self, quantity: Quantity) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.quantity == quantity && e.applicable && e.side != BoundSide::Upper)
            .map(|e| e.value)
            .reduce(f64::max)
    }

    /// The strongest applicable upper bound under `log`.
    pub fn upper(&self, quantity: Quantity, log: LogBase) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.quantity == quantity && e.applicable && e.side != BoundSide::Lower)
            .filter(|e| e.log.is_none_or(|l| l == log))
            .map(|e| e.value)
            .reduce(f64::min)
    }

    /// Quantities whose applicable lower bound exceeds an applicable upper
    /// bound under either logarithm.
    pub fn inconsistencies(&self) -> Vec<Quantity> {
        let mut bad: Vec<Quantity> = Vec::new();
        for e in &self.entries {
            let qty = e.quantity;
            if bad.contains(&qty) {
                continue;
            }
            for log in [LogBase::Natural, LogBase::Binary] {
                if let (Some(lo), Some(hi)) = (self.lower(qty), self.upper(qty, log)) {
                    if lo > hi + 1e-9 {
                        bad.push(qty);
                        break;
                    }
                }
            }
        }
        bad
    }

    pub fn csv_header() -> &'static str {
        "q,quantity,side,formula,log,value,applicable"
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                let side = match e.side {
                    BoundSide::Lower => "lower",
                    BoundSide::Upper => "upper",
                    BoundSide::Exact => "exact",
                };
                let log = match e.log {
                    None => "",
                    Some(LogBase::Natural) => "ln",
                    Some(LogBase::Binary) => "log2",
                };
                format!(
                    "{},{},{},{},{},{:.6},{}",
                    self.q,
                    e.quantity.name(),
                    side,
                    e.formula,
                    log,
                    e.value,
                    e.applicable
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::csv_header());
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// The greedy bound on S₂, `(2 + (14q²−20q+6)/(q³−6q²+11q−2))(1 + log(q⁶/4))`.
pub fn s2_bound(q: u32, log: LogBase) -> f64 {
    let q = f64::from(q);
    let frac = (14.0 * q * q - 20.0 * q + 6.0) / (q * q * q - 6.0 * q * q + 11.0 * q - 2.0);
    (2.0 + frac) * (1.0 + log.log(q.powi(6) / 4.0))
}

/// `(q²+1)/(q+1) · (1 + log(q(q+1)))`.
pub fn blocking_bound(q: u32, log: LogBase) -> f64 {
    let q = f64::from(q);
    (q * q + 1.0) / (q + 1.0) * (1.0 + log.log(q * (q + 1.0)))
}

fn split_points_bound(q: u32, log: LogBase) -> f64 {
    let qf = f64::from(q);
    (qf + 2.0) / 2.0 * (1.0 + log.log(qf.powi(5)))
}

pub fn evaluate_bounds(q: u32) -> BoundTable {
    let qf = f64::from(q);
    let mut entries = Vec::new();
    let mut push = |quantity, side, formula, log, value: f64, min_q: u32, max_q: Option<u32>| {
        entries.push(BoundEntry {
            quantity,
            side,
            formula,
            log,
            value,
            min_q,
            max_q,
            applicable: q >= min_q && max_q.is_none_or(|m| q <= m),
        });
    };
    use BoundSide::*;
    use Quantity::*;
    for log in [LogBase::Natural, LogBase::Binary] {
        let l = Some(log);
        push(
            MetricDimension,
            Upper,
            "2q-2+s2",
            l,
            2.0 * qf - 2.0 + s2_bound(q, log),
            4,
            None,
        );
        push(
            MetricDimension,
            Upper,
            "2q+12log(q)",
            l,
            2.0 * qf + 12.0 * log.log(qf),
            156,
            None,
        );
        push(S2Size, Upper, "s2", l, s2_bound(q, log), 4, None);
        push(
            SplitPoints,
            Upper,
            "(q+2)/2(1+log(q^5))",
            l,
            split_points_bound(q, log),
            3,
            None,
        );
        push(
            SplitTotal,
            Upper,
            "(q+2)/2(1+log(q^5))+2q-2",
            l,
            split_points_bound(q, log) + 2.0 * qf - 2.0,
            3,
            None,
        );
        push(
            Blocking,
            Upper,
            "(q^2+1)/(q+1)(1+log(q(q+1)))",
            l,
            blocking_bound(q, log),
            2,
            None,
        );
    }
    // ⌈2q²/(q+2)⌉, computed in integers.
    let two_q2 = 2 * u64::from(q) * u64::from(q);
    let mu_lower = two_q2.div_ceil(u64::from(q) + 2) as f64;
    push(
        MetricDimension,
        Lower,
        "ceil(2q-4+8/(q+2))",
        None,
        mu_lower,
        2,
        None,
    );
    push(
        MetricDimension,
        Lower,
        "2q-3",
        None,
        2.0 * qf - 3.0,
        2,
        None,
    );
    push(
        ResolvingCircles,
        Lower,
        "2q-4",
        None,
        2.0 * qf - 4.0,
        156,
        None,
    );
    push(SplitCircles, Upper, "2q-2", None, 2.0 * qf - 2.0, 3, None);
    push(SplitCircles, Lower, "2q-3", None, 2.0 * qf - 3.0, 6, None);
    push(
        SplitCircles,
        Exact,
        "2q-2",
        None,
        2.0 * qf - 2.0,
        3,
        Some(5),
    );
    push(SplitPoints, Lower, "3q-7", None, 3.0 * qf - 7.0, 3, None);
    push(SplitPoints, Lower, "2q-1", None, 2.0 * qf - 1.0, 9, None);
    push(SplitTotal, Lower, "5q-10", None, 5.0 * qf - 10.0, 3, None);
    push(Blocking, Lower, "2q", None, 2.0 * qf, 9, None);
    BoundTable { q, entries }
}

/// Counters over a vertex set `S`, split into its points `P_S` and circles
/// `Z_S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountersOut {
    pub points_in_set: usize,
    pub circles_in_set: usize,
    /// Points outside `S` on exactly one circle of `Z_S`.
    pub t: usize,
    /// Circles meeting `P_S` in no point.
    pub t0: usize,
    /// Circles meeting `P_S` in exactly one point.
    pub t1: usize,
    /// Circles meeting `P_S` in exactly two points.
    pub t2: usize,
}

impl CountersOut {
    /// `t ≤ |Z_S|`: two outer points on the same single circle would be
    /// confused. Must hold when `S` resolves the points.
    pub fn point_side_holds(&self) -> bool {
        self.t <= self.circles_in_set
    }

    /// `t₀ ≤ 1`, `t₁ ≤ |P_S|`, `t₂ ≤ C(|P_S|, 2)`. Must hold when `P_S`
    /// resolves the circles.
    pub fn circle_side_holds(&self) -> bool {
        let k = self.points_in_set;
        self.t0 <= 1 && self.t1 <= k && self.t2 <= k * k.saturating_sub(1) / 2
    }
}

pub fn diagnostics_counters(plane: &MobiusPlane, set: &[Vertex]) -> CountersOut {
    let mut in_points = vec![false; plane.num_points()];
    let mut in_circles = vec![false; plane.num_circles()];
    for &v in set {
        match v {
            Vertex::Point(p) => in_points[p] = true,
            Vertex::Circle(c) => in_circles[c] = true,
        }
    }
    let t = plane
        .points()
        .filter(|&p| {
            !in_points[p] && plane.through(p).iter().filter(|&&c| in_circles[c]).count() == 1
        })
        .count();
    let mut blocked = [0usize; 3];
    for c in 0..plane.num_circles() {
        let k = plane.circle(c).iter().filter(|&&p| in_points[p]).count();
        if k < 3 {
            blocked[k] += 1;
        }
    }
    CountersOut {
        points_in_set: in_points.iter().filter(|&&b| b).count(),
        circles_in_set: in_circles.iter().filter(|&&b| b).count(),
        t,
        t0: blocked[0],
        t1: blocked[1],
        t2: blocked[2],
    }
}

/// Checks `S₁` resolves every point.
pub fn s1_resolves_points(plane: &MobiusPlane, s1: &S1Construction) -> bool {
    let pts: Vec<Vertex> = metric::points(plane).collect();
    metric::is_resolving(plane, &s1.vertices(), &pts).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{is_resolving, is_split_resolving};

    fn plane(q: u32) -> MobiusPlane {
        MobiusPlane::miquelian(q).unwrap()
    }

    #[test]
    fn s1_small_orders() {
        for q in [3, 4, 5] {
            let p = plane(q);
            let s1 = build_s1(&p, 0, None, None).unwrap();
            assert_eq!(s1.circles.len(), 2 * q as usize - 2);
            assert!(s1.circles.iter().all(|&c| p.incident(0, c)));
            assert!(s1.pencils_separate(&p));
            assert!(s1_resolves_points(&p, &s1));
        }
    }

    #[test]
    fn s1_other_choices() {
        let p = plane(4);
        let s1 = build_s1(&p, 7, Some((2, 4)), None).unwrap();
        assert!(s1_resolves_points(&p, &s1));
        let pen = &s1.pencils;
        let s1 = build_s1(&p, 7, Some((2, 4)), Some((pen[0][3], pen[1][1]))).unwrap();
        assert!(s1_resolves_points(&p, &s1));
    }

    #[test]
    fn s1_errors() {
        assert!(matches!(
            build_s1(&plane(2), 0, None, None),
            Err(ConstructionError::OrderTooSmall { q: 2, min: 3 })
        ));
        let p = plane(3);
        assert!(matches!(
            build_s1(&p, 0, Some((0, 4)), None),
            Err(ConstructionError::InvalidClass(4))
        ));
        assert!(matches!(
            build_s1(&p, 0, Some((1, 1)), None),
            Err(ConstructionError::SameClass)
        ));
        assert!(matches!(
            build_s1(&p, 99, None, None),
            Err(ConstructionError::Plane(_))
        ));
        let other = p.affine_residue(0).unwrap().parallel_classes[2][0];
        assert!(matches!(
            build_s1(&p, 0, None, Some((other, other))),
            Err(ConstructionError::InvalidRemoval { .. })
        ));
    }

    #[test]
    fn s1_leaves_tangent_circles_unresolved() {
        let p = plane(4);
        let s1 = build_s1(&p, 0, None, None).unwrap();
        let third = &p.affine_residue(0).unwrap().parallel_classes[2];
        let (z1, z2) = (Vertex::Circle(third[0]), Vertex::Circle(third[1]));
        assert!(!is_resolving(&p, &s1.vertices(), &[z1, z2]).is_ok());
    }

    #[test]
    fn s1_s2_resolves() {
        for q in [3, 4] {
            let p = plane(q);
            let c = build_s1_s2(&p).unwrap();
            let all = metric::all_vertices(&p);
            assert!(is_resolving(&p, &c.vertices(), &all).is_ok());
        }
        let c = build_s1_s2(&plane(4)).unwrap();
        assert!((c.s2.len() as f64) < s2_bound(4, LogBase::Natural));
    }

    #[test]
    fn blocking_greedy_meets_every_circle() {
        for q in [2, 3, 4] {
            let p = plane(q);
            let b = greedy_blocking_set(&p).unwrap();
            assert_eq!(metric::first_unblocked_circle(&p, &b), None);
            assert!((b.len() as f64) < blocking_bound(q, LogBase::Natural));
        }
    }

    #[test]
    fn bound_values() {
        let t5 = evaluate_bounds(5);
        assert_eq!(
            t5.find(Quantity::SplitCircles, BoundSide::Exact, None)
                .unwrap()
                .value,
            8.0
        );
        assert_eq!(
            evaluate_bounds(3).lower(Quantity::MetricDimension),
            Some(4.0)
        );
        let t = evaluate_bounds(156);
        let v = t
            .entries
            .iter()
            .find(|e| e.formula == "2q+12log(q)" && e.log == Some(LogBase::Natural))
            .unwrap();
        assert!(v.applicable);
        assert!((v.value - (312.0 + 12.0 * 156f64.ln())).abs() < 1e-9);
        assert!((v.value - 372.6).abs() < 0.05);
        assert!(!evaluate_bounds(155)
            .entries
            .iter()
            .any(|e| e.formula == "2q+12log(q)" && e.applicable));
        assert!((s2_bound(4, LogBase::Natural) - 17.0 * (1.0 + 1024f64.ln())).abs() < 1e-9);
        assert!((blocking_bound(9, LogBase::Natural) - 45.1).abs() < 0.05);
    }

    #[test]
    fn bound_tables_consistent() {
        for q in 3..=1000 {
            assert!(evaluate_bounds(q).inconsistencies().is_empty(), "q = {q}");
        }
    }

    #[test]
    fn csv_shape() {
        let t = evaluate_bounds(4);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], BoundTable::csv_header());
        assert_eq!(lines.len(), t.entries.len() + 1);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn counters() {
        let p = plane(3);
        let empty = diagnostics_counters(&p, &[]);
        assert_eq!(
            (empty.t, empty.t0, empty.t1, empty.t2),
            (0, p.num_circles(), 0, 0)
        );
        let all = metric::all_vertices(&p);
        let full = diagnostics_counters(&p, &all);
        assert_eq!((full.t, full.t0, full.t1, full.t2), (0, 0, 0, 0));

        let m2 = MobiusPlane::order2_subsets();
        let circle =
            |a: usize, b: usize, c: usize| Vertex::Circle(m2.find_circle(&[a, b, c]).unwrap());
        let mut s: Vec<_> = (0..4).map(Vertex::Point).collect();
        s.extend([circle(0, 1, 2), circle(0, 1, 3), circle(0, 2, 3)]);
        assert!(is_split_resolving(&m2, &s).is_ok());
        let c = diagnostics_counters(&m2, &s);
        assert!(c.point_side_holds() && c.circle_side_holds());
        assert_eq!(c.t0, 0);
    }
}
