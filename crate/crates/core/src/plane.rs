//! Finite Möbius planes.
//!
//! The Miquelian plane of order `q` has the projective line PG(1, q²) as its
//! point set and the Baer sublines (images of GF(q) ∪ {∞} under fractional
//! linear maps) as circles. Point `0` is ∞ and point `1 + e` is the field
//! element with encoding `e`. Circles are numbered in lexicographic order of
//! their sorted member lists.

mod symmetry;
mod verify;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::field::{prime_power, Element, Field, FieldError};

pub use verify::{AxiomReport, AxiomResult, AxiomWitness, CountItem, CountReport};

pub type PointId = usize;
pub type CircleId = usize;

pub const PLANE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("unsupported plane order {0}: not a prime power")]
    NotPrimePower(u32),
    #[error("unsupported plane order {0}")]
    UnsupportedOrder(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("points {0:?} are not pairwise distinct")]
    NotDistinct(Vec<PointId>),
    #[error("no circle through points {0:?}")]
    NoCircle(Vec<PointId>),
    #[error("invalid point id {0}")]
    InvalidPoint(PointId),
    #[error("malformed plane: {0}")]
    Malformed(String),
    #[error("unsupported plane schema version {0}")]
    SchemaVersion(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaneModel {
    Miquelian,
    Order2Subsets,
    /// Loaded from a document or assembled from explicit circles.
    Explicit,
}

/// A point of PG(1, F).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectivePoint {
    Infinity,
    Finite(Element),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
    pub order: u32,
    /// Coefficients `c0..c_k` of the monic reduction polynomial.
    pub coefficients: Vec<u32>,
    pub polynomial: String,
}

impl FieldInfo {
    fn of(field: &Field) -> Self {
        FieldInfo {
            p: field.characteristic(),
            k: field.degree(),
            order: field.order(),
            coefficients: field.reduction_polynomial(),
            polynomial: field.reduction_polynomial_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MobiusPlane {
    order: u32,
    model: PlaneModel,
    num_points: usize,
    field: Option<Field>,
    /// The subfield GF(q) inside GF(q²), for the Miquelian model.
    subfield: Vec<Element>,
    circles: Vec<Vec<PointId>>,
    masks: Vec<BitSet>,
    through: Vec<Vec<CircleId>>,
    index: HashMap<Vec<PointId>, CircleId>,
}

impl MobiusPlane {
    /// The Miquelian plane of order `q` over GF(q²).
    pub fn miquelian(q: u32) -> Result<Self, PlaneError> {
        if prime_power(q).is_none() {
            return Err(PlaneError::NotPrimePower(q));
        }
        let square = q.checked_mul(q).ok_or(PlaneError::UnsupportedOrder(q))?;
        let field = Field::with_order(square).map_err(|e| match e {
            FieldError::Unsupported { .. } => PlaneError::UnsupportedOrder(q),
            other => other.into(),
        })?;
        let subfield = field.subfield(q);
        debug_assert_eq!(subfield.len(), q as usize);

        let n = (square + 1) as usize;
        let mut found: BTreeSet<Vec<PointId>> = BTreeSet::new();
        // For a fixed pair (a, b) the circles through both partition the
        // remaining points, so each third point c is only expanded once.
        let mut covered = vec![false; n];
        for a in 0..n {
            for b in a + 1..n {
                covered.iter_mut().for_each(|x| *x = false);
                for c in b + 1..n {
                    if covered[c] {
                        continue;
                    }
                    let members = subline_through(&field, &subfield, [a, b, c]);
                    for &x in &members {
                        covered[x] = true;
                    }
                    found.insert(members);
                }
            }
        }
        let circles: Vec<_> = found.into_iter().collect();
        Self::assemble(q, PlaneModel::Miquelian, n, Some(field), subfield, circles)
    }

    /// The order-2 plane on five points whose circles are all 3-subsets.
    pub fn order2_subsets() -> Self {
        let mut circles = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    circles.push(vec![a, b, c]);
                }
            }
        }
        Self::assemble(2, PlaneModel::Order2Subsets, 5, None, Vec::new(), circles)
            .expect("3-subsets of five points form a well-formed plane")
    }

    /// Structure from an explicit circle list. Circles are canonicalized
    /// (sorted internally and in lexicographic order); the order is taken
    /// from the common circle size.
    pub fn from_circles(num_points: usize, circles: Vec<Vec<PointId>>) -> Result<Self, PlaneError> {
        let mut set = BTreeSet::new();
        for mut c in circles {
            c.sort_unstable();
            c.dedup();
            set.insert(c);
        }
        let circles: Vec<_> = set.into_iter().collect();
        let size = circles
            .first()
            .map(|c| c.len())
            .ok_or_else(|| PlaneError::Malformed("no circles".into()))?;
        if size < 2 {
            return Err(PlaneError::Malformed(
                "circles need at least two points".into(),
            ));
        }
        Self::assemble(
            (size - 1) as u32,
            PlaneModel::Explicit,
            num_points,
            None,
            Vec::new(),
            circles,
        )
    }

    fn assemble(
        order: u32,
        model: PlaneModel,
        num_points: usize,
        field: Option<Field>,
        subfield: Vec<Element>,
        circles: Vec<Vec<PointId>>,
    ) -> Result<Self, PlaneError> {
        let mut through = vec![Vec::new(); num_points];
        let mut masks = Vec::with_capacity(circles.len());
        let mut index = HashMap::with_capacity(circles.len());
        for (id, c) in circles.iter().enumerate() {
            if c.len() != order as usize + 1 {
                return Err(PlaneError::Malformed(format!(
                    "circle {id} has {} points, expected {}",
                    c.len(),
                    order + 1
                )));
            }
            if c.windows(2).any(|w| w[0] >= w[1]) {
                return Err(PlaneError::Malformed(format!(
                    "circle {id} is not strictly sorted"
                )));
            }
            if let Some(&bad) = c.iter().find(|&&p| p >= num_points) {
                return Err(PlaneError::InvalidPoint(bad));
            }
            for &p in c {
                through[p].push(id);
            }
            masks.push(BitSet::from_indices(num_points, c.iter().copied()));
            index.insert(c.clone(), id);
        }
        Ok(MobiusPlane {
            order,
            model,
            num_points,
            field,
            subfield,
            circles,
            masks,
            through,
            index,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn model(&self) -> PlaneModel {
        self.model
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn points(&self) -> std::ops::Range<PointId> {
        0..self.num_points
    }

    pub fn circles(&self) -> &[Vec<PointId>] {
        &self.circles
    }

    pub fn circle(&self, id: CircleId) -> &[PointId] {
        &self.circles[id]
    }

    pub fn circle_mask(&self, id: CircleId) -> &BitSet {
        &self.masks[id]
    }

    /// Circles through `p`, sorted by id.
    pub fn through(&self, p: PointId) -> &[CircleId] {
        &self.through[p]
    }

    pub fn incident(&self, p: PointId, c: CircleId) -> bool {
        self.masks[c].contains(p)
    }

    pub fn intersection_size(&self, a: CircleId, b: CircleId) -> usize {
        self.masks[a].intersection_count(&self.masks[b])
    }

    pub fn field(&self) -> Option<&Field> {
        self.field.as_ref()
    }

    pub fn field_info(&self) -> Vec<FieldInfo> {
        self.field.iter().map(FieldInfo::of).collect()
    }

    pub fn find_circle(&self, members: &[PointId]) -> Option<CircleId> {
        let mut key = members.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn projective_point(&self, p: PointId) -> Option<ProjectivePoint> {
        self.field.as_ref()?;
        match p {
            0 => Some(ProjectivePoint::Infinity),
            _ if p < self.num_points => Some(ProjectivePoint::Finite((p - 1) as Element)),
            _ => None,
        }
    }

    /// Display label: `inf` / field encoding for the Miquelian model, the
    /// labels `1..=5` for the order-2 subset model, the raw id otherwise.
    pub fn point_label(&self, p: PointId) -> String {
        match self.model {
            PlaneModel::Miquelian if p == 0 => "inf".to_string(),
            PlaneModel::Miquelian => (p - 1).to_string(),
            PlaneModel::Order2Subsets => (p + 1).to_string(),
            PlaneModel::Explicit => p.to_string(),
        }
    }

    /// The unique circle through three pairwise distinct points.
    pub fn circle_through(
        &self,
        a: PointId,
        b: PointId,
        c: PointId,
    ) -> Result<CircleId, PlaneError> {
        for &x in &[a, b, c] {
            if x >= self.num_points {
                return Err(PlaneError::InvalidPoint(x));
            }
        }
        if a == b || b == c || a == c {
            return Err(PlaneError::NotDistinct(vec![a, b, c]));
        }
        if let Some(field) = &self.field {
            let members = subline_through(field, &self.subfield, [a, b, c]);
            return self
                .find_circle(&members)
                .ok_or(PlaneError::NoCircle(vec![a, b, c]));
        }
        self.through[a]
            .iter()
            .copied()
            .find(|&z| self.masks[z].contains(b) && self.masks[z].contains(c))
            .ok_or(PlaneError::NoCircle(vec![a, b, c]))
    }

    /// Circles through both `a` and `b`.
    pub fn circles_through_pair(&self, a: PointId, b: PointId) -> Vec<CircleId> {
        self.through[a]
            .iter()
            .copied()
            .filter(|&z| self.masks[z].contains(b))
            .collect()
    }

    pub fn affine_residue(&self, p: PointId) -> Result<AffineResidue, PlaneError> {
        if p >= self.num_points {
            return Err(PlaneError::InvalidPoint(p));
        }
        let residue_points = self.points().filter(|&x| x != p).collect();
        let lines = self.through[p]
            .iter()
            .map(|&z| Line {
                circle: z,
                points: self.circles[z]
                    .iter()
                    .copied()
                    .filter(|&x| x != p)
                    .collect(),
            })
            .collect();
        // Circles through p that meet only in p are parallel residue lines.
        let mut classes: Vec<Vec<CircleId>> = Vec::new();
        for &z in &self.through[p] {
            match classes
                .iter_mut()
                .find(|cls| self.intersection_size(cls[0], z) == 1)
            {
                Some(cls) => cls.push(z),
                None => classes.push(vec![z]),
            }
        }
        Ok(AffineResidue {
            base_point: p,
            residue_points,
            lines,
            parallel_classes: classes,
        })
    }

    pub fn to_document(&self) -> PlaneDocument {
        PlaneDocument {
            schema_version: PLANE_SCHEMA_VERSION,
            order: self.order,
            model: self.model,
            reduction_polynomials: self.field_info(),
            points: self.points().map(|p| self.point_label(p)).collect(),
            circles: self.circles.clone(),
        }
    }

    /// Rebuilds a plane from an exported document. The result always uses the
    /// incidence structure only (no field coordinates).
    pub fn from_document(doc: &PlaneDocument) -> Result<Self, PlaneError> {
        if doc.schema_version != PLANE_SCHEMA_VERSION {
            return Err(PlaneError::SchemaVersion(doc.schema_version));
        }
        let mut plane = Self::from_circles(doc.points.len(), doc.circles.clone())?;
        if plane.circles != doc.circles {
            return Err(PlaneError::Malformed(
                "circles are not in canonical order".into(),
            ));
        }
        if plane.order != doc.order {
            return Err(PlaneError::Malformed(format!(
                "declared order {} but circles have {} points",
                doc.order,
                plane.order + 1
            )));
        }
        if doc.model == PlaneModel::Order2Subsets {
            plane.model = PlaneModel::Order2Subsets;
        }
        Ok(plane)
    }
}

/// Members of the Baer subline through three distinct points of PG(1, F):
/// with homogeneous vectors `u, v, w` and `w = λu + μv`, the subline is
/// `{λt·u + μ·v : t ∈ GF(q)} ∪ {u}`.
fn subline_through(field: &Field, subfield: &[Element], pts: [PointId; 3]) -> Vec<PointId> {
    let hom = |p: PointId| -> (Element, Element) {
        if p == 0 {
            (1, 0)
        } else {
            ((p - 1) as Element, 1)
        }
    };
    let (u, v, w) = (hom(pts[0]), hom(pts[1]), hom(pts[2]));
    let det = field.sub(field.mul(u.0, v.1), field.mul(u.1, v.0));
    let det_inv = field.inv(det).expect("distinct points are independent");
    let lambda = field.mul(field.sub(field.mul(w.0, v.1), field.mul(w.1, v.0)), det_inv);
    let mu = field.mul(field.sub(field.mul(u.0, w.1), field.mul(u.1, w.0)), det_inv);
    let su = (field.mul(lambda, u.0), field.mul(lambda, u.1));
    let sv = (field.mul(mu, v.0), field.mul(mu, v.1));

    let mut members = Vec::with_capacity(subfield.len() + 1);
    members.push(pts[0]);
    for &t in subfield {
        let x = field.add(field.mul(t, su.0), sv.0);
        let y = field.add(field.mul(t, su.1), sv.1);
        let id = if y == 0 {
            0
        } else {
            1 + field.mul(x, field.inv(y).expect("nonzero")) as usize
        };
        members.push(id);
    }
    members.sort_unstable();
    members
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub circle: CircleId,
    pub points: Vec<PointId>,
}

/// The affine plane left after deleting a point and keeping the circles
/// through it.
#[derive(Debug, Clone)]
pub struct AffineResidue {
    pub base_point: PointId,
    pub residue_points: Vec<PointId>,
    pub lines: Vec<Line>,
    /// Circles through the base point grouped by mutual tangency there.
    pub parallel_classes: Vec<Vec<CircleId>>,
}

impl AffineResidue {
    /// Checks the affine-plane parameters of order `q`: `q²` points,
    /// `q(q+1)` lines of `q` points, `q+1` classes of `q` disjoint lines
    /// each partitioning the points.
    pub fn is_affine_plane(&self, q: usize) -> bool {
        let n = self.residue_points.len();
        if n != q * q || self.lines.len() != q * (q + 1) {
            return false;
        }
        if self.lines.iter().any(|l| l.points.len() != q) {
            return false;
        }
        if self.parallel_classes.len() != q + 1 {
            return false;
        }
        let line_of: HashMap<CircleId, &Line> = self.lines.iter().map(|l| (l.circle, l)).collect();
        self.parallel_classes.iter().all(|cls| {
            if cls.len() != q {
                return false;
            }
            let mut seen = BTreeSet::new();
            cls.iter()
                .all(|z| line_of[z].points.iter().all(|&p| seen.insert(p)))
                && seen.len() == n
        })
    }
}

/// Versioned JSON form of a plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDocument {
    pub schema_version: u32,
    pub order: u32,
    pub model: PlaneModel,
    pub reduction_polynomials: Vec<FieldInfo>,
    pub points: Vec<String>,
    pub circles: Vec<Vec<PointId>>,
}
