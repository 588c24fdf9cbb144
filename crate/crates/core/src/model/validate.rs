use std::fmt;

use num::Signed;

use super::deform::ray_parameter;
use super::{ray_hits, HamiltonianModel};
use crate::geometry::{contains, QVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WeightCount {
        id: String,
        expected: usize,
        found: usize,
    },
    /// No other fixed image on the ray along this weight.
    EmptyRay {
        id: String,
        weight_index: usize,
        weight: QVector,
    },
    TargetIndexOutOfRange {
        id: String,
        weight_index: usize,
    },
    UnknownTarget {
        id: String,
        weight_index: usize,
        target: String,
    },
    TargetOffRay {
        id: String,
        weight_index: usize,
        target: String,
    },
    ImageOutsideHull {
        id: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeightCount {
                id,
                expected,
                found,
            } => write!(f, "{id}: {found} weights, expected {expected}"),
            Violation::EmptyRay {
                id,
                weight_index,
                weight,
            } => write!(
                f,
                "{id}: no fixed image on the ray along weight {weight_index} {weight}"
            ),
            Violation::TargetIndexOutOfRange { id, weight_index } => {
                write!(f, "{id}: target for nonexistent weight {weight_index}")
            }
            Violation::UnknownTarget {
                id,
                weight_index,
                target,
            } => write!(
                f,
                "{id}: weight {weight_index} targets unknown point {target}"
            ),
            Violation::TargetOffRay {
                id,
                weight_index,
                target,
            } => write!(
                f,
                "{id}: target {target} of weight {weight_index} is not on its ray"
            ),
            Violation::ImageOutsideHull { id } => {
                write!(f, "{id}: image outside the hull of images")
            }
        }
    }
}

/// Every consistency check on a model; an empty list means valid.
pub fn validate_model(m: &HamiltonianModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let hull = m.image_hull().ok();
    for p in m.fixed_points() {
        let id = p.id().to_string();
        if p.weights().len() != m.half_dim() {
            out.push(Violation::WeightCount {
                id: id.clone(),
                expected: m.half_dim(),
                found: p.weights().len(),
            });
        }
        for (weight_index, w) in p.weights().iter().enumerate() {
            if ray_hits(m, p.image(), w).is_empty() {
                out.push(Violation::EmptyRay {
                    id: id.clone(),
                    weight_index,
                    weight: w.clone(),
                });
            }
        }
        for (&weight_index, target) in p.targets() {
            let Some(w) = p.weights().get(weight_index) else {
                out.push(Violation::TargetIndexOutOfRange {
                    id: id.clone(),
                    weight_index,
                });
                continue;
            };
            let Some(t) = m.point(target) else {
                out.push(Violation::UnknownTarget {
                    id: id.clone(),
                    weight_index,
                    target: target.clone(),
                });
                continue;
            };
            let on_ray =
                ray_parameter(&(t.image() - p.image()), w).is_some_and(|u| u.is_positive());
            if !on_ray || t.id() == p.id() {
                out.push(Violation::TargetOffRay {
                    id: id.clone(),
                    weight_index,
                    target: target.clone(),
                });
            }
        }
        // Skipped when the images span more than the supported hull rank.
        let outside = hull
            .as_ref()
            .is_some_and(|h| !contains(h, p.image()).unwrap_or(false));
        if outside {
            out.push(Violation::ImageOutsideHull { id });
        }
    }
    out
}
