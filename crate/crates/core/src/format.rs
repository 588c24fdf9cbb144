//! JSON files for models and point sets. Rationals are always strings such
//! as `"-2/3"`; JSON numbers are rejected so no value passes through a
//! float.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, Polytope, QVector};
use crate::lie::{Family, LieError, RootSystem};
use crate::model::{FixedPointDatum, HamiltonianModel, ModelError};
use crate::rational::{parse_rational, ParseRationalError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {0}")]
    SchemaVersion(u32),
    #[error("{context}: {source}")]
    Rational {
        context: String,
        source: ParseRationalError,
    },
    #[error("invalid target key {0:?}")]
    TargetKey(String),
    #[error("empty vector")]
    EmptyVector,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    schema_version: u32,
    torus_rank: usize,
    ambient_dim: usize,
    half_dim: usize,
    root_system: Option<RootSystemFile>,
    fixed_points: Vec<PointFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
enum RootSystemFile {
    A {
        rank: usize,
    },
    B {
        rank: usize,
    },
    #[serde(rename = "explicit")]
    Explicit {
        roots: Vec<Vec<String>>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    id: String,
    image: Vec<String>,
    weights: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    targets: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetFile {
    schema_version: u32,
    points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    facets: Vec<FacetFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetFile {
    normal: Vec<String>,
    offset: String,
    vertices: Vec<usize>,
}

fn strings(v: &QVector) -> Vec<String> {
    v.coords().iter().map(|c| c.to_string()).collect()
}

fn vector(coords: &[String], context: &str) -> Result<QVector, FormatError> {
    coords
        .iter()
        .map(|c| {
            parse_rational(c).map_err(|source| FormatError::Rational {
                context: context.to_string(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(QVector::new)
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(FormatError::SchemaVersion(v))
    }
}

pub fn parse_model(text: &str) -> Result<HamiltonianModel, FormatError> {
    let file: ModelFile = serde_json::from_str(text)?;
    check_version(file.schema_version)?;
    let root_system = match file.root_system {
        None => None,
        Some(RootSystemFile::A { rank }) => Some(RootSystem::build(Family::A, rank)?),
        Some(RootSystemFile::B { rank }) => Some(RootSystem::build(Family::B, rank)?),
        Some(RootSystemFile::Explicit { roots }) => Some(RootSystem::from_roots(
            roots
                .iter()
                .map(|r| vector(r, "root"))
                .collect::<Result<_, _>>()?,
        )?),
    };
    let mut points = Vec::with_capacity(file.fixed_points.len());
    for p in file.fixed_points {
        let image = vector(&p.image, &format!("image of {:?}", p.id))?;
        let weights = p
            .weights
            .iter()
            .map(|w| vector(w, &format!("weight of {:?}", p.id)))
            .collect::<Result<_, _>>()?;
        let targets = p
            .targets
            .into_iter()
            .map(|(k, v)| {
                // Canonical decimal only, so that keys round-trip.
                match k.parse::<usize>() {
                    Ok(i) if i.to_string() == k => Ok((i, v)),
                    _ => Err(FormatError::TargetKey(k)),
                }
            })
            .collect::<Result<_, _>>()?;
        points.push(FixedPointDatum::new(p.id, image, weights)?.with_targets(targets));
    }
    Ok(HamiltonianModel::new(
        file.torus_rank,
        file.ambient_dim,
        file.half_dim,
        points,
        root_system,
    )?)
}

pub fn model_to_json(m: &HamiltonianModel) -> String {
    let root_system = m.root_system().map(|rs| match rs.family() {
        Family::A => RootSystemFile::A { rank: rs.rank() },
        Family::B => RootSystemFile::B { rank: rs.rank() },
        Family::Explicit => RootSystemFile::Explicit {
            roots: rs.roots().iter().map(strings).collect(),
        },
    });
    let file = ModelFile {
        schema_version: SCHEMA_VERSION,
        torus_rank: m.torus_rank(),
        ambient_dim: m.ambient_dim(),
        half_dim: m.half_dim(),
        root_system,
        fixed_points: m
            .fixed_points()
            .iter()
            .map(|p| PointFile {
                id: p.id().to_string(),
                image: strings(p.image()),
                weights: p.weights().iter().map(strings).collect(),
                targets: p
                    .targets()
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Points of a point-set file. A `facets` list, as written by
/// [`polytope_to_json`], is accepted and ignored.
pub fn parse_point_set(text: &str) -> Result<Vec<QVector>, FormatError> {
    let file: PointSetFile = serde_json::from_str(text)?;
    check_version(file.schema_version)?;
    file.points.iter().map(|p| vector(p, "point")).collect()
}

pub fn point_set_to_json(points: &[QVector]) -> String {
    let file = PointSetFile {
        schema_version: SCHEMA_VERSION,
        points: points.iter().map(strings).collect(),
        facets: Vec::new(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Vertices plus facet inequalities `<normal, x> <= offset`.
pub fn polytope_to_json(p: &Polytope) -> String {
    let file = PointSetFile {
        schema_version: SCHEMA_VERSION,
        points: p.vertices().iter().map(strings).collect(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetFile {
                normal: strings(f.halfspace.normal()),
                offset: f.halfspace.offset().to_string(),
                vertices: f.vertices.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

/// Comma-separated rationals, e.g. `1,0,-1` or `1/2,-1/2`.
pub fn parse_vector(text: &str) -> Result<QVector, FormatError> {
    if text.trim().is_empty() {
        return Err(FormatError::EmptyVector);
    }
    let parts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    vector(&parts, "vector")
}
