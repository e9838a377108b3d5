//! The metric of the point-circle incidence graph and resolving-set checks.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{CircleId, MobiusPlane, PointId};

/// A vertex of the incidence graph. Vertices order by kind (points first),
/// then id, which is also the unified index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    Point(PointId),
    Circle(CircleId),
}

impl Vertex {
    pub fn is_point(self) -> bool {
        matches!(self, Vertex::Point(_))
    }

    /// Index in the unified numbering: points `0..n`, then circles.
    pub fn index(self, plane: &MobiusPlane) -> usize {
        match self {
            Vertex::Point(p) => p,
            Vertex::Circle(c) => plane.num_points() + c,
        }
    }

    pub fn from_index(plane: &MobiusPlane, i: usize) -> Vertex {
        if i < plane.num_points() {
            Vertex::Point(i)
        } else {
            Vertex::Circle(i - plane.num_points())
        }
    }

    pub fn belongs_to(self, plane: &MobiusPlane) -> bool {
        match self {
            Vertex::Point(p) => p < plane.num_points(),
            Vertex::Circle(c) => c < plane.num_circles(),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Point(p) => write!(f, "P{p}"),
            Vertex::Circle(c) => write!(f, "Z{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("vertex {0} is not in the plane")]
    ForeignVertex(Vertex),
}

pub fn all_vertices(plane: &MobiusPlane) -> Vec<Vertex> {
    points(plane).chain(circles(plane)).collect()
}

pub fn points(plane: &MobiusPlane) -> impl Iterator<Item = Vertex> {
    (0..plane.num_points()).map(Vertex::Point)
}

pub fn circles(plane: &MobiusPlane) -> impl Iterator<Item = Vertex> {
    (0..plane.num_circles()).map(Vertex::Circle)
}

/// Closed-form distance in the incidence graph.
pub fn distance(plane: &MobiusPlane, u: Vertex, v: Vertex) -> Result<u8, MetricError> {
    for w in [u, v] {
        if !w.belongs_to(plane) {
            return Err(MetricError::ForeignVertex(w));
        }
    }
    Ok(distance_unchecked(plane, u, v))
}

#[inline]
pub(crate) fn distance_unchecked(plane: &MobiusPlane, u: Vertex, v: Vertex) -> u8 {
    match (u, v) {
        (Vertex::Point(p), Vertex::Point(q)) => {
            if p == q {
                0
            } else {
                2
            }
        }
        (Vertex::Circle(a), Vertex::Circle(b)) => {
            if a == b {
                0
            } else if plane.circle_mask(a).intersects(plane.circle_mask(b)) {
                2
            } else {
                4
            }
        }
        (Vertex::Point(p), Vertex::Circle(c)) | (Vertex::Circle(c), Vertex::Point(p)) => {
            if plane.incident(p, c) {
                1
            } else {
                3
            }
        }
    }
}

/// Breadth-first distances from `source` to every vertex, by unified index.
pub fn bfs_distances(plane: &MobiusPlane, source: Vertex) -> Vec<Option<u32>> {
    let n = plane.num_points();
    let total = n + plane.num_circles();
    let mut dist = vec![None; total];
    let mut queue = VecDeque::new();
    dist[source.index(plane)] = Some(0);
    queue.push_back(source.index(plane));
    while let Some(i) = queue.pop_front() {
        let d = dist[i].expect("queued vertices have a distance");
        let neighbours: Vec<usize> = if i < n {
            plane.through(i).iter().map(|&c| n + c).collect()
        } else {
            plane.circle(i - n).to_vec()
        };
        for j in neighbours {
            if dist[j].is_none() {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

pub fn bfs_distance(plane: &MobiusPlane, u: Vertex, v: Vertex) -> Option<u32> {
    bfs_distances(plane, u)[v.index(plane)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Violation { first: Vertex, second: Vertex },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// Whether `set` resolves `targets`. On failure reports the lexicographically
/// first pair of targets with identical distance vectors.
pub fn is_resolving(plane: &MobiusPlane, set: &[Vertex], targets: &[Vertex]) -> Verdict {
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();

    // With a nonempty set, a point and a circle always differ in parity of
    // their distances, so only same-kind pairs can collide.
    let mut groups: HashMap<(bool, Vec<u8>), Vec<Vertex>> = HashMap::new();
    for &t in &targets {
        let signature: Vec<u8> = set
            .iter()
            .map(|&s| distance_unchecked(plane, t, s))
            .collect();
        let kind = !set.is_empty() && t.is_point();
        groups.entry((kind, signature)).or_default().push(t);
    }
    groups
        .values()
        .filter(|g| g.len() > 1)
        .map(|g| (g[0], g[1]))
        .min()
        .map_or(Verdict::Ok, |(first, second)| Verdict::Violation {
            first,
            second,
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitVerdict {
    /// Do the circles of the set resolve all points?
    pub points: Verdict,
    /// Do the points of the set resolve all circles?
    pub circles: Verdict,
}

impl SplitVerdict {
    pub fn is_ok(&self) -> bool {
        self.points.is_ok() && self.circles.is_ok()
    }
}

pub fn is_split_resolving(plane: &MobiusPlane, set: &[Vertex]) -> SplitVerdict {
    let (point_part, circle_part): (Vec<Vertex>, Vec<Vertex>) =
        set.iter().partition(|v| v.is_point());
    SplitVerdict {
        points: is_resolving(plane, &circle_part, &points(plane).collect::<Vec<_>>()),
        circles: is_resolving(plane, &point_part, &circles(plane).collect::<Vec<_>>()),
    }
}

/// Whether a point set meets every circle; returns the first missed circle.
pub fn first_unblocked_circle(plane: &MobiusPlane, set: &[PointId]) -> Option<CircleId> {
    (0..plane.num_circles()).find(|&c| !set.iter().any(|&p| plane.incident(p, c)))
}
