//! Weyl-hull reconstruction and the reflective-vertex test.

use std::fmt;

use num::Signed;

use super::{HamiltonianModel, ModelError};
use crate::geometry::{contains, convex_hull, cut, GeometryError, Polytope, QVector};
use crate::lie::{RootSystem, WeylElement, WeylGroup};

/// `P ∩ closed dominant chamber`, or `None` when empty.
pub fn dominant_slice(p: &Polytope, rs: &RootSystem) -> Result<Option<Polytope>, ModelError> {
    let mut current = p.clone();
    for h in rs.dominant_chamber() {
        match cut(&current, &h)? {
            Some(next) => current = next,
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

/// Convex hull of the Weyl orbit of the vertices of `delta`.
pub fn mu_t_from_kirwan(delta: &Polytope, w: &WeylGroup) -> Result<Polytope, ModelError> {
    let dim = delta.ambient_dim();
    if let Some(g) = w.elements().first() {
        if g.matrix().size() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: g.matrix().size(),
            }
            .into());
        }
    }
    let points: Vec<QVector> = delta.vertices().iter().flat_map(|v| w.orbit(v)).collect();
    Ok(convex_hull(&points)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflectiveFailure {
    /// `element` of the stabilizer moves the span of `face` off every
    /// incident face span.
    NotInvariant {
        face: Vec<QVector>,
        element: WeylElement,
    },
    /// The open `face` meets the wall of `simple_root` or lies outside the
    /// chamber.
    LeavesOpenChamber {
        face: Vec<QVector>,
        simple_root: QVector,
    },
}

impl fmt::Display for ReflectiveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |face: &[QVector]| {
            face.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" -- ")
        };
        match self {
            ReflectiveFailure::NotInvariant { face, .. } => write!(
                f,
                "condition 1 fails: face [{}] is not mapped to an incident face by the stabilizer",
                list(face)
            ),
            ReflectiveFailure::LeavesOpenChamber { face, simple_root } => write!(
                f,
                "condition 2 fails: face [{}] is not in the open chamber (simple root {simple_root})",
                list(face)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectiveReport {
    pub reflective: bool,
    pub stabilizer_order: usize,
    /// Vertex lists of the codimension-one faces whose closure holds `q`.
    pub faces: Vec<Vec<QVector>>,
    pub failure: Option<ReflectiveFailure>,
}

fn same_span(a: &[QVector], b: &[QVector]) -> bool {
    let (Ok(ha), Ok(hb)) = (convex_hull(a), convex_hull(b)) else {
        return false;
    };
    ha.affine_rank() == hb.affine_rank() && b.iter().all(|x| ha.affine_hull_contains(x))
}

/// Faces of codimension one (relative to the affine hull of `delta`) whose
/// closure contains `q`.
fn incident_faces(delta: &Polytope, q: &QVector) -> Vec<Vec<QVector>> {
    match delta.affine_rank() {
        0 => Vec::new(),
        1 => delta
            .vertices()
            .iter()
            .filter(|v| *v == q)
            .map(|v| vec![v.clone()])
            .collect(),
        _ => delta
            .facets_containing(q)
            .into_iter()
            .map(|f| {
                f.vertices
                    .iter()
                    .map(|&i| delta.vertices()[i].clone())
                    .collect()
            })
            .collect(),
    }
}

/// A point `q` of `delta` is reflective when the spans of the incident
/// codimension-one faces are permuted by the stabilizer `W_q`, and each
/// such open face lies in the open dominant chamber.
pub fn reflective(
    delta: &Polytope,
    q: &QVector,
    rs: &RootSystem,
    w: &WeylGroup,
) -> Result<ReflectiveReport, ModelError> {
    if !contains(delta, q)? {
        return Err(ModelError::NotInPolytope(q.clone()));
    }
    let faces = incident_faces(delta, q);
    let stabilizer = w.stabilizer(q);
    let mut failure = None;
    'outer: for g in stabilizer.elements() {
        for face in &faces {
            let moved: Vec<QVector> = face.iter().map(|v| g.apply(v)).collect();
            if !faces.iter().any(|other| same_span(&moved, other)) {
                failure = Some(ReflectiveFailure::NotInvariant {
                    face: face.clone(),
                    element: g.clone(),
                });
                break 'outer;
            }
        }
    }
    if failure.is_none() {
        'outer: for face in &faces {
            for alpha in rs.simple_roots() {
                let pairings: Vec<_> = face.iter().map(|v| v.dot(alpha)).collect();
                let inside = pairings.iter().all(|p| !p.is_negative())
                    && pairings.iter().any(|p| p.is_positive());
                if !inside {
                    failure = Some(ReflectiveFailure::LeavesOpenChamber {
                        face: face.clone(),
                        simple_root: alpha.clone(),
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(ReflectiveReport {
        reflective: failure.is_none(),
        stabilizer_order: stabilizer.order(),
        faces,
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub vertex: QVector,
    pub on_wall: bool,
    pub in_open_chamber: bool,
    pub reflective: bool,
    /// Non-reflective vertices and vertices in the open chamber must be
    /// images of fixed points.
    pub certified: bool,
    pub matched: Vec<String>,
    /// Certified but no fixed point of the model maps there.
    pub discrepancy: bool,
}

pub fn classify_vertices(
    delta: &Polytope,
    m: &HamiltonianModel,
    rs: &RootSystem,
    w: &WeylGroup,
) -> Result<Vec<VertexClass>, ModelError> {
    delta
        .vertices()
        .iter()
        .map(|v| {
            let report = reflective(delta, v, rs, w)?;
            let in_open_chamber = rs.in_open_chamber(v);
            let certified = !report.reflective || in_open_chamber;
            let matched: Vec<String> = m.preimages(v).into_iter().map(String::from).collect();
            Ok(VertexClass {
                vertex: v.clone(),
                on_wall: !rs.walls_through(v).is_empty(),
                in_open_chamber,
                reflective: report.reflective,
                certified,
                discrepancy: certified && matched.is_empty(),
                matched,
            })
        })
        .collect()
}
