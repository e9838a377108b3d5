//! Hitting-set instances whose solutions are resolving, split-resolving or
//! blocking sets of a plane.
//!
//! Edge members are bit sets over positions in the instance universe. The
//! universe is always listed in unified vertex order (points, then circles),
//! so positions and vertices translate monotonically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::metric::{self, Vertex};
use crate::plane::{CircleId, MobiusPlane};

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    ResolveAll,
    CirclesResolvePoints,
    PointsResolveCircles,
    Blocking,
    /// Only the circle-pair edges over the whole vertex set.
    CirclePairs,
    Custom,
}

impl InstanceKind {
    pub fn tag(self) -> &'static str {
        match self {
            InstanceKind::ResolveAll => "resolve-all",
            InstanceKind::CirclesResolvePoints => "circles-resolve-points",
            InstanceKind::PointsResolveCircles => "points-resolve-circles",
            InstanceKind::Blocking => "blocking",
            InstanceKind::CirclePairs => "circle-pairs",
            InstanceKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    /// Two vertices that must be told apart.
    Pair(Vertex, Vertex),
    /// A circle that must be met.
    Circle(CircleId),
    Index(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: EdgeLabel,
    /// Positions in the instance universe.
    pub members: BitSet,
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("edge {0} mentions a position outside the universe")]
    OutOfUniverse(usize),
    #[error("universe must be strictly increasing")]
    UnsortedUniverse,
    #[error("unsupported instance schema version {0}")]
    SchemaVersion(u32),
    #[error("vertex {0} listed in an edge is not in the universe")]
    UnknownVertex(Vertex),
}

#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub kind: InstanceKind,
    pub order: u32,
    pub universe: Vec<Vertex>,
    pub edges: Vec<Hyperedge>,
    /// Present when the edges are exactly the same-family item pairs that
    /// some position's distance labels tell apart.
    pub separation: Option<Separation>,
    /// Generators of a group of position permutations mapping edges to
    /// edges, for symmetry breaking. May be empty.
    pub symmetry: Vec<Vec<usize>>,
}

/// Items that must end up with pairwise distinct label vectors. Position
/// `v` gives item `x` the label `letters[v * items + x]`; the edge for items
/// `x, y` is hit exactly by the positions labelling them differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationFamily {
    pub items: usize,
    pub letters: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub families: Vec<SeparationFamily>,
}

impl Separation {
    fn by_distance(plane: &MobiusPlane, universe: &[Vertex], families: &[Vec<Vertex>]) -> Self {
        Separation {
            families: families
                .iter()
                .map(|items| SeparationFamily {
                    items: items.len(),
                    letters: universe
                        .iter()
                        .flat_map(|&v| {
                            items
                                .iter()
                                .map(move |&x| metric::distance_unchecked(plane, v, x))
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl CoverInstance {
    /// An instance from explicit member lists over universe positions.
    pub fn from_sets(universe_size: usize, sets: &[Vec<usize>]) -> Result<Self, InstanceError> {
        let mut edges = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            if s.iter().any(|&x| x >= universe_size) {
                return Err(InstanceError::OutOfUniverse(i));
            }
            edges.push(Hyperedge {
                label: EdgeLabel::Index(i),
                members: BitSet::from_indices(universe_size, s.iter().copied()),
            });
        }
        Ok(CoverInstance {
            kind: InstanceKind::Custom,
            order: 0,
            universe: (0..universe_size).map(Vertex::Point).collect(),
            edges,
            separation: None,
            symmetry: Vec::new(),
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.universe.binary_search(&v).ok()
    }

    /// Edge-incidence counts per universe position.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.universe_size()];
        for e in &self.edges {
            for i in e.members.iter() {
                deg[i] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn first_empty_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.members.is_empty())
    }

    /// Does the set of universe positions hit every edge?
    pub fn is_hit_by(&self, positions: &[usize]) -> bool {
        let set = BitSet::from_indices(self.universe_size(), positions.iter().copied());
        self.edges.iter().all(|e| e.members.intersects(&set))
    }

    pub fn first_missed_edge(&self, positions: &[usize]) -> Option<usize> {
        let set = BitSet::from_indices(self.universe_size(), positions.iter().copied());
        self.edges.iter().position(|e| !e.members.intersects(&set))
    }

    pub fn vertices_of(&self, positions: &[usize]) -> Vec<Vertex> {
        positions.iter().map(|&i| self.universe[i]).collect()
    }

    pub fn positions_of(&self, vertices: &[Vertex]) -> Option<Vec<usize>> {
        vertices.iter().map(|&v| self.position(v)).collect()
    }

    /// Keeps only the edges not hit by `positions`.
    pub fn residual(&self, positions: &[usize]) -> CoverInstance {
        let set = BitSet::from_indices(self.universe_size(), positions.iter().copied());
        CoverInstance {
            kind: self.kind,
            order: self.order,
            universe: self.universe.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !e.members.intersects(&set))
                .cloned()
                .collect(),
            separation: None,
            symmetry: Vec::new(),
        }
    }

    pub fn to_document(&self) -> InstanceDocument {
        InstanceDocument {
            schema_version: INSTANCE_SCHEMA_VERSION,
            kind: self.kind,
            order: self.order,
            universe: self.universe.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    label: e.label,
                    members: e.members.iter().map(|i| self.universe[i]).collect(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &InstanceDocument) -> Result<Self, InstanceError> {
        if doc.schema_version != INSTANCE_SCHEMA_VERSION {
            return Err(InstanceError::SchemaVersion(doc.schema_version));
        }
        if doc.universe.windows(2).any(|w| w[0] >= w[1]) {
            return Err(InstanceError::UnsortedUniverse);
        }
        let mut inst = CoverInstance {
            kind: doc.kind,
            order: doc.order,
            universe: doc.universe.clone(),
            edges: Vec::with_capacity(doc.edges.len()),
            separation: None,
            symmetry: Vec::new(),
        };
        for e in &doc.edges {
            let mut members = BitSet::new(inst.universe_size());
            for &v in &e.members {
                members.insert(inst.position(v).ok_or(InstanceError::UnknownVertex(v))?);
            }
            inst.edges.push(Hyperedge {
                label: e.label,
                members,
            });
        }
        Ok(inst)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub label: EdgeLabel,
    pub members: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub kind: InstanceKind,
    pub order: u32,
    pub universe: Vec<Vertex>,
    pub edges: Vec<EdgeDocument>,
}

/// Plane automorphisms as permutations of `universe` positions. The
/// universe must be closed under them (all points, all circles, or both).
fn restricted_symmetry(plane: &MobiusPlane, universe: &[Vertex]) -> Vec<Vec<usize>> {
    let mut pos = vec![usize::MAX; plane.num_points() + plane.num_circles()];
    for (i, v) in universe.iter().enumerate() {
        pos[v.index(plane)] = i;
    }
    plane
        .automorphism_generators()
        .iter()
        .map(|g| universe.iter().map(|v| pos[g[v.index(plane)]]).collect())
        .collect()
}

/// For each circle, the other circles it meets, as a mask over circle ids.
fn meeting_masks(plane: &MobiusPlane) -> Vec<BitSet> {
    let m = plane.num_circles();
    (0..m)
        .map(|a| {
            let mut mask = BitSet::new(m);
            for &p in plane.circle(a) {
                for &b in plane.through(p) {
                    mask.insert(b);
                }
            }
            mask.remove(a);
            mask
        })
        .collect()
}

/// Circles through each point, as masks over circle ids.
fn through_masks(plane: &MobiusPlane) -> Vec<BitSet> {
    plane
        .points()
        .map(|p| BitSet::from_indices(plane.num_circles(), plane.through(p).iter().copied()))
        .collect()
}

/// Members of the edge separating circles `a` and `b` over all of V:
/// points on exactly one of them, circles meeting exactly one of them, and
/// `a`, `b` themselves.
fn circle_pair_members(plane: &MobiusPlane, meets: &[BitSet], a: CircleId, b: CircleId) -> BitSet {
    let n = plane.num_points();
    let m = plane.num_circles();
    let mut members = BitSet::new(n + m);
    let (ma, mb) = (plane.circle_mask(a), plane.circle_mask(b));
    for p in ma.iter().chain(mb.iter()) {
        if ma.contains(p) != mb.contains(p) {
            members.insert(p);
        }
    }
    let mut cm = meets[a].clone();
    cm.symmetric_difference_with(&meets[b]);
    for c in cm.iter() {
        members.insert(n + c);
    }
    members.insert(n + a);
    members.insert(n + b);
    members
}

fn circle_pair_edges(plane: &MobiusPlane) -> Vec<Hyperedge> {
    let meets = meeting_masks(plane);
    let m = plane.num_circles();
    let mut edges = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            edges.push(Hyperedge {
                label: EdgeLabel::Pair(Vertex::Circle(a), Vertex::Circle(b)),
                members: circle_pair_members(plane, &meets, a, b),
            });
        }
    }
    edges
}

/// All pairs of distinct vertices of one kind; a hitting set is a resolving
/// set of the incidence graph (cross-kind pairs are resolved by parity as
/// soon as the set is nonempty).
pub fn resolve_all_instance(plane: &MobiusPlane) -> CoverInstance {
    let n = plane.num_points();
    let m = plane.num_circles();
    let thr = through_masks(plane);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2 + m * (m - 1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            let mut members = BitSet::new(n + m);
            members.insert(p);
            members.insert(q);
            let mut cs = thr[p].clone();
            cs.symmetric_difference_with(&thr[q]);
            for c in cs.iter() {
                members.insert(n + c);
            }
            edges.push(Hyperedge {
                label: EdgeLabel::Pair(Vertex::Point(p), Vertex::Point(q)),
                members,
            });
        }
    }
    edges.extend(circle_pair_edges(plane));
    let universe = metric::all_vertices(plane);
    let families = [
        metric::points(plane).collect(),
        metric::circles(plane).collect(),
    ];
    CoverInstance {
        kind: InstanceKind::ResolveAll,
        order: plane.order(),
        separation: Some(Separation::by_distance(plane, &universe, &families)),
        symmetry: restricted_symmetry(plane, &universe),
        universe,
        edges,
    }
}

/// Only the circle pairs, over all vertices: hitting sets resolve the circles.
pub fn circle_pair_instance(plane: &MobiusPlane) -> CoverInstance {
    let universe = metric::all_vertices(plane);
    let families = [metric::circles(plane).collect()];
    CoverInstance {
        kind: InstanceKind::CirclePairs,
        order: plane.order(),
        separation: Some(Separation::by_distance(plane, &universe, &families)),
        symmetry: restricted_symmetry(plane, &universe),
        universe,
        edges: circle_pair_edges(plane),
    }
}

/// The two independent halves of the split-resolving problem: circles that
/// resolve the points, and points that resolve the circles.
pub fn split_instances(plane: &MobiusPlane) -> (CoverInstance, CoverInstance) {
    let n = plane.num_points();
    let m = plane.num_circles();
    let thr = through_masks(plane);
    let mut by_circles = Vec::with_capacity(n * (n - 1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            let mut members = thr[p].clone();
            members.symmetric_difference_with(&thr[q]);
            by_circles.push(Hyperedge {
                label: EdgeLabel::Pair(Vertex::Point(p), Vertex::Point(q)),
                members,
            });
        }
    }
    let mut by_points = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            let mut members = plane.circle_mask(a).clone();
            members.symmetric_difference_with(plane.circle_mask(b));
            by_points.push(Hyperedge {
                label: EdgeLabel::Pair(Vertex::Circle(a), Vertex::Circle(b)),
                members,
            });
        }
    }
    let point_items: Vec<Vertex> = metric::points(plane).collect();
    let circle_items: Vec<Vertex> = metric::circles(plane).collect();
    (
        CoverInstance {
            kind: InstanceKind::CirclesResolvePoints,
            order: plane.order(),
            separation: Some(Separation::by_distance(
                plane,
                &circle_items,
                std::slice::from_ref(&point_items),
            )),
            symmetry: restricted_symmetry(plane, &circle_items),
            universe: circle_items.clone(),
            edges: by_circles,
        },
        CoverInstance {
            kind: InstanceKind::PointsResolveCircles,
            order: plane.order(),
            symmetry: restricted_symmetry(plane, &point_items),
            separation: Some(Separation::by_distance(
                plane,
                &point_items,
                &[circle_items],
            )),
            universe: point_items,
            edges: by_points,
        },
    )
}

pub fn blocking_instance(plane: &MobiusPlane) -> CoverInstance {
    let universe: Vec<Vertex> = metric::points(plane).collect();
    CoverInstance {
        kind: InstanceKind::Blocking,
        order: plane.order(),
        symmetry: restricted_symmetry(plane, &universe),
        universe,
        edges: (0..plane.num_circles())
            .map(|c| Hyperedge {
                label: EdgeLabel::Circle(c),
                members: plane.circle_mask(c).clone(),
            })
            .collect(),
        separation: None,
    }
}

/// Smallest circle-pair edge size, split by how many points the two circles
/// share (index 0, 1, 2). `None` where no pair of that type exists.
pub fn circle_pair_edge_minima(plane: &MobiusPlane) -> [Option<usize>; 3] {
    let meets = meeting_masks(plane);
    let mut minima = [None::<usize>; 3];
    for a in 0..plane.num_circles() {
        for b in a + 1..plane.num_circles() {
            let k = plane.intersection_size(a, b);
            let size = circle_pair_members(plane, &meets, a, b).count();
            let slot = &mut minima[k];
            *slot = Some(slot.map_or(size, |s| s.min(size)));
        }
    }
    minima
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{distance, is_resolving};

    #[test]
    fn m3_resolve_all_shape() {
        let plane = MobiusPlane::miquelian(3).unwrap();
        let inst = resolve_all_instance(&plane);
        assert_eq!(inst.universe_size(), 40);
        let point_pairs = inst
            .edges
            .iter()
            .filter(|e| matches!(e.label, EdgeLabel::Pair(Vertex::Point(_), _)))
            .count();
        assert_eq!(point_pairs, 45);
        assert_eq!(inst.num_edges() - point_pairs, 435);
        for e in &inst.edges {
            if let EdgeLabel::Pair(a, b) = e.label {
                assert!(e.members.contains(inst.position(a).unwrap()));
                assert!(e.members.contains(inst.position(b).unwrap()));
            }
        }
        assert!(inst.edges.windows(2).all(|w| w[0].label < w[1].label));
    }

    #[test]
    fn edges_match_distance_definition() {
        let plane = MobiusPlane::miquelian(3).unwrap();
        let inst = resolve_all_instance(&plane);
        for e in &inst.edges {
            let EdgeLabel::Pair(a, b) = e.label else {
                unreachable!()
            };
            for (i, &v) in inst.universe.iter().enumerate() {
                let differs = distance(&plane, v, a).unwrap() != distance(&plane, v, b).unwrap();
                assert_eq!(e.members.contains(i), differs, "{a} {b} {v}");
            }
        }
    }

    #[test]
    fn reduction_matches_verifier_small_sets() {
        // Every subset of size <= 4 of M(2)'s 15 vertices.
        let plane = MobiusPlane::miquelian(2).unwrap();
        let inst = resolve_all_instance(&plane);
        let all = metric::all_vertices(&plane);
        let n = all.len();
        let mut checked = 0;
        for mask in 1u32..(1 << n) {
            if mask.count_ones() > 4 {
                continue;
            }
            let pos: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let set = inst.vertices_of(&pos);
            assert_eq!(
                inst.is_hit_by(&pos),
                is_resolving(&plane, &set, &all).is_ok()
            );
            checked += 1;
        }
        assert_eq!(checked, 15 + 105 + 455 + 1365);
    }

    #[test]
    fn split_instance_shapes() {
        let plane = MobiusPlane::miquelian(5).unwrap();
        let (a, b) = split_instances(&plane);
        assert_eq!(a.num_edges(), 325);
        assert_eq!(b.num_edges(), 8385);
        for e in &b.edges {
            let EdgeLabel::Pair(Vertex::Circle(x), Vertex::Circle(y)) = e.label else {
                unreachable!()
            };
            let size = e.members.count();
            assert!(size >= 2 * 5 - 2);
            if plane.intersection_size(x, y) == 2 {
                assert_eq!(size, 2 * (5 - 1));
            }
        }
    }

    #[test]
    fn blocking_shape() {
        let plane = MobiusPlane::miquelian(2).unwrap();
        let inst = blocking_instance(&plane);
        assert_eq!((inst.universe_size(), inst.num_edges()), (5, 10));
        let plane = MobiusPlane::miquelian(4).unwrap();
        let inst = blocking_instance(&plane);
        assert!(inst.edges.iter().all(|e| e.members.count() == 5));
        assert!(inst.degrees().iter().all(|&d| d == 20));
    }

    #[test]
    fn circle_pair_degrees() {
        for q in [4usize, 5] {
            let plane = MobiusPlane::miquelian(q as u32).unwrap();
            let inst = circle_pair_instance(&plane);
            let deg = inst.degrees();
            let n = plane.num_points();
            let point_degree = (q * q + q) * (q * q * q - q * q);
            let circle_degree = (q.pow(3) - 3 * q * q + 2 * q) / 2
                * ((q.pow(3) + 3 * q * q - 2) / 2)
                + q.pow(3)
                + q
                - 1;
            assert!(deg[..n].iter().all(|&d| d == point_degree));
            assert!(deg[n..].iter().all(|&d| d == circle_degree));
            assert!(4 * circle_degree < q.pow(6));
            assert!(4 * point_degree < q.pow(6));
            // circles dominate from q = 5 on; at q = 4 points do (960 > 727)
            assert_eq!(circle_degree > point_degree, q >= 5);
        }
    }

    #[test]
    fn lemma_case_order() {
        for q in [4usize, 5] {
            let plane = MobiusPlane::miquelian(q as u32).unwrap();
            let [skew, tangent, secant] = circle_pair_edge_minima(&plane);
            let secant = secant.unwrap();
            assert!(secant <= tangent.unwrap() && secant <= skew.unwrap());
            // 2|e| >= q^3 - 6q^2 + 11q - 2
            assert!(2 * secant + 6 * q * q >= q.pow(3) + 11 * q - 2);
        }
    }

    #[test]
    fn separation_agrees_with_edges() {
        let plane = MobiusPlane::miquelian(3).unwrap();
        let (a, b) = split_instances(&plane);
        for inst in [
            resolve_all_instance(&plane),
            circle_pair_instance(&plane),
            a,
            b,
        ] {
            let sep = inst.separation.as_ref().unwrap();
            let mut pairs = 0;
            for fam in &sep.families {
                let k = fam.items;
                pairs += k * (k - 1) / 2;
            }
            assert_eq!(pairs, inst.num_edges(), "{:?}", inst.kind);
            // edges are listed family by family, pairs in lexicographic order
            let mut e = 0;
            for fam in &sep.families {
                for x in 0..fam.items {
                    for y in x + 1..fam.items {
                        for v in 0..inst.universe_size() {
                            let differs =
                                fam.letters[v * fam.items + x] != fam.letters[v * fam.items + y];
                            assert_eq!(inst.edges[e].members.contains(v), differs);
                        }
                        e += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn document_round_trip() {
        let plane = MobiusPlane::miquelian(2).unwrap();
        let inst = resolve_all_instance(&plane);
        let json = serde_json::to_string(&inst.to_document()).unwrap();
        let doc: InstanceDocument = serde_json::from_str(&json).unwrap();
        let back = CoverInstance::from_document(&doc).unwrap();
        assert_eq!(back.edges, inst.edges);
        assert_eq!(back.universe, inst.universe);
        assert!(json.contains("\"point\":0"));
    }

    #[test]
    fn from_sets_validation() {
        assert!(CoverInstance::from_sets(3, &[vec![0, 3]]).is_err());
        let inst = CoverInstance::from_sets(3, &[vec![0, 2], vec![]]).unwrap();
        assert_eq!(inst.first_empty_edge(), Some(1));
    }
}
