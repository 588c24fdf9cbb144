use num::{Signed, Zero};

use super::{sigma, Generator, HamiltonianModel, ModelError};
use crate::geometry::QVector;
use crate::rational::{to_f64, Rational};

/// A fixed-point image on the ray `q + u·α`, `u > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayHit {
    pub parameter: Rational,
    pub target: String,
}

/// `u` with `d = u·α`, if any.
pub(crate) fn ray_parameter(d: &QVector, alpha: &QVector) -> Option<Rational> {
    let i = alpha.coords().iter().position(|c| !c.is_zero())?;
    let u = &d[i] / &alpha[i];
    (alpha.scale(&u) == *d).then_some(u)
}

/// Every fixed point whose image lies on the open ray from `from` along
/// `alpha`, ordered by parameter, then model order.
pub fn ray_hits(m: &HamiltonianModel, from: &QVector, alpha: &QVector) -> Vec<RayHit> {
    let mut hits: Vec<RayHit> = m
        .fixed_points()
        .iter()
        .filter_map(|p| {
            let u = ray_parameter(&(p.image() - from), alpha)?;
            u.is_positive().then(|| RayHit {
                parameter: u,
                target: p.id().to_string(),
            })
        })
        .collect();
    hits.sort_by(|a, b| a.parameter.cmp(&b.parameter));
    hits
}

/// One deformation coordinate, attached to an index-1 fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationRow {
    pub id: String,
    pub image: QVector,
    pub weight_index: usize,
    pub weight: QVector,
    pub hits: Vec<RayHit>,
    /// The hit named by the model's target annotation; absent when the
    /// model does not say which sphere the weight is tangent to.
    pub designated: Option<RayHit>,
    pub squared_distance: Option<Rational>,
    pub distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport {
    pub xi: Generator,
    pub rows: Vec<DeformationRow>,
}

impl DeformationReport {
    pub fn row(&self, id: &str) -> Option<&DeformationRow> {
        self.rows.iter().find(|r| r.id == id)
    }
}

pub fn deformation_report(
    m: &HamiltonianModel,
    xi: &Generator,
) -> Result<DeformationReport, ModelError> {
    xi.certify(m)?;
    let mut rows = Vec::new();
    for p in m.fixed_points() {
        if sigma(p, xi)? != 1 {
            continue;
        }
        let (weight_index, weight) = p
            .weights()
            .iter()
            .enumerate()
            .find(|(_, w)| w.dot(xi.xi()).is_negative())
            .expect("sigma = 1");
        let hits = ray_hits(m, p.image(), weight);
        if hits.is_empty() {
            return Err(ModelError::EmptyRay {
                id: p.id().to_string(),
                weight: weight.clone(),
            });
        }
        let designated = match p.targets().get(&weight_index) {
            Some(target) => Some(
                hits.iter()
                    .find(|h| &h.target == target)
                    .cloned()
                    .ok_or_else(|| ModelError::TargetOffRay {
                        id: p.id().to_string(),
                        target: target.clone(),
                    })?,
            ),
            None => None,
        };
        let squared_distance = designated
            .as_ref()
            .map(|h| &h.parameter * &h.parameter * weight.norm_squared());
        let distance = squared_distance.as_ref().map(|d| to_f64(d).sqrt());
        rows.push(DeformationRow {
            id: p.id().to_string(),
            image: p.image().clone(),
            weight_index,
            weight: weight.clone(),
            hits,
            designated,
            squared_distance,
            distance,
        });
    }
    Ok(DeformationReport {
        xi: xi.clone(),
        rows,
    })
}
