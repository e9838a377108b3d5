//! Machine-checkable records of solver and construction results.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::CoverInstance;
use crate::metric::{self, Verdict, Vertex};
use crate::plane::{CircleId, FieldInfo, MobiusPlane, PlaneModel};
use crate::solver::{SolveOutcome, SolveStatus};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;
pub const SOLVER_VERSION: &str = concat!("mobius-metric ", env!("CARGO_PKG_VERSION"));

/// The property the witness is claimed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Resolves every vertex.
    Resolving,
    /// Its points resolve the circles and its circles resolve the points.
    SplitResolving,
    /// A point set meeting every circle.
    Blocking,
    /// A circle set resolving every point.
    PointResolving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Bounded,
    /// Produced by a construction; no optimality claim.
    Constructed,
}

impl From<SolveStatus> for Status {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Optimal => Status::Optimal,
            SolveStatus::Bounded => Status::Bounded,
        }
    }
}

/// One exact solve feeding a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub instance: String,
    pub status: Status,
    pub upper: usize,
    pub lower: usize,
    pub witness: Vec<Vertex>,
    pub nodes: u64,
    pub elapsed: f64,
}

impl SolveRecord {
    pub fn new(instance: &CoverInstance, outcome: &SolveOutcome) -> Self {
        SolveRecord {
            instance: instance.kind.tag().to_string(),
            status: outcome.status.into(),
            upper: outcome.upper,
            lower: outcome.lower,
            witness: instance.vertices_of(&outcome.witness),
            nodes: outcome.nodes,
            elapsed: outcome.elapsed.as_secs_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub claim: Claim,
    /// Instance tag, or the construction name.
    pub instance: String,
    pub q: u32,
    pub model: PlaneModel,
    pub reduction_polynomials: Vec<FieldInfo>,
    pub status: Status,
    pub upper: usize,
    pub lower: usize,
    /// Sorted.
    pub witness: Vec<Vertex>,
    /// Component solves: one per side for split problems.
    pub parts: Vec<SolveRecord>,
    pub nodes: u64,
    pub elapsed: f64,
    pub solver_version: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("unsupported certificate schema version {0}")]
    SchemaVersion(u32),
    #[error("certificate is for order {certificate}, plane has order {plane}")]
    OrderMismatch { certificate: u32, plane: u32 },
    #[error("witness vertex {0} is not in the plane")]
    ForeignVertex(Vertex),
    #[error("witness has {witness} vertices, certificate claims {upper}")]
    SizeMismatch { witness: usize, upper: usize },
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    BoundsInverted { lower: usize, upper: usize },
    #[error("optimal status with lower {lower} < upper {upper}")]
    NotClosed { lower: usize, upper: usize },
    #[error("{first} and {second} are not resolved")]
    Unresolved { first: Vertex, second: Vertex },
    #[error("circle {0} is not blocked")]
    Unblocked(CircleId),
    #[error("witness has vertices of the wrong kind for this claim")]
    WrongKind,
}

impl Certificate {
    /// Fills in metadata for a witness of `claim` on `plane`.
    pub fn new(
        plane: &MobiusPlane,
        claim: Claim,
        instance: &str,
        status: Status,
        lower: usize,
        mut witness: Vec<Vertex>,
        parts: Vec<SolveRecord>,
    ) -> Self {
        witness.sort_unstable();
        let nodes = parts.iter().map(|p| p.nodes).sum();
        let elapsed = parts.iter().map(|p| p.elapsed).fold(0.0, |a, b| a + b);
        Certificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            claim,
            instance: instance.to_string(),
            q: plane.order(),
            model: plane.model(),
            reduction_polynomials: plane.field_info(),
            status,
            upper: witness.len(),
            lower,
            witness,
            parts,
            nodes,
            elapsed,
            solver_version: SOLVER_VERSION.to_string(),
        }
    }

    /// Re-checks the claim on `plane` with the metric verifiers only.
    pub fn verify(&self, plane: &MobiusPlane) -> Result<(), CertificateError> {
        if self.schema_version != CERTIFICATE_SCHEMA_VERSION {
            return Err(CertificateError::SchemaVersion(self.schema_version));
        }
        if self.q != plane.order() {
            return Err(CertificateError::OrderMismatch {
                certificate: self.q,
                plane: plane.order(),
            });
        }
        if let Some(&v) = self.witness.iter().find(|v| !v.belongs_to(plane)) {
            return Err(CertificateError::ForeignVertex(v));
        }
        let mut distinct = self.witness.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != self.upper {
            return Err(CertificateError::SizeMismatch {
                witness: distinct.len(),
                upper: self.upper,
            });
        }
        if self.lower > self.upper {
            return Err(CertificateError::BoundsInverted {
                lower: self.lower,
                upper: self.upper,
            });
        }
        if self.status == Status::Optimal && self.lower != self.upper {
            return Err(CertificateError::NotClosed {
                lower: self.lower,
                upper: self.upper,
            });
        }
        let unresolved = |v: Verdict| match v {
            Verdict::Ok => Ok(()),
            Verdict::Violation { first, second } => {
                Err(CertificateError::Unresolved { first, second })
            }
        };
        match self.claim {
            Claim::Resolving => unresolved(metric::is_resolving(
                plane,
                &distinct,
                &metric::all_vertices(plane),
            )),
            Claim::SplitResolving => {
                let v = metric::is_split_resolving(plane, &distinct);
                unresolved(v.points)?;
                unresolved(v.circles)
            }
            Claim::PointResolving => {
                if distinct.iter().any(|v| v.is_point()) {
                    return Err(CertificateError::WrongKind);
                }
                let pts: Vec<Vertex> = metric::points(plane).collect();
                unresolved(metric::is_resolving(plane, &distinct, &pts))
            }
            Claim::Blocking => {
                let pts: Vec<usize> = distinct
                    .iter()
                    .map(|v| match v {
                        Vertex::Point(p) => Ok(*p),
                        Vertex::Circle(_) => Err(CertificateError::WrongKind),
                    })
                    .collect::<Result<_, _>>()?;
                match metric::first_unblocked_circle(plane, &pts) {
                    None => Ok(()),
                    Some(c) => Err(CertificateError::Unblocked(c)),
                }
            }
        }
    }
}
