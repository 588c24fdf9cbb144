//! Fixed-point models of Hamiltonian torus actions.
//!
//! A model records, for every isolated fixed point `p` of the torus, the
//! moment image `q = μ(p)` and the multiset of isotropy weights on `T_p M`.
//! Everything downstream (Morse indices, Betti numbers, edge rays,
//! deformation coordinates, Weyl hulls) is computed from this data alone.

mod deform;
mod kirwan;
mod morse;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{convex_hull, GeometryError, Polytope, QVector};
use crate::lie::{LieError, RootSystem};

pub use deform::{deformation_report, ray_hits, DeformationReport, DeformationRow, RayHit};
pub use kirwan::{
    classify_vertices, dominant_slice, mu_t_from_kirwan, reflective, ReflectiveFailure,
    ReflectiveReport, VertexClass,
};
pub use morse::{
    betti_invariance, choose_generator, morse_report, sigma, trial_generators, Generator,
    InvarianceReport, MorseReport, GENERATOR_SEARCH_BOUND,
};
pub use validate::{validate_model, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs at least one fixed point")]
    NoFixedPoints,
    #[error("duplicate fixed point id {0:?}")]
    DuplicateId(String),
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("fixed point {id:?} has a zero weight at index {index}")]
    ZeroWeight { id: String, index: usize },
    #[error("torus rank {torus_rank} does not fit ambient dimension {ambient_dim}")]
    BadTorusRank {
        torus_rank: usize,
        ambient_dim: usize,
    },
    #[error("generator pairs to zero with weight {index} of {id:?}")]
    InvalidGenerator { id: String, index: usize },
    #[error("no valid generator with max-norm <= {0}")]
    GeneratorSearchExhausted(i64),
    #[error("index-1 point {id:?}: no fixed image on the ray along weight {weight}")]
    EmptyRay { id: String, weight: QVector },
    #[error("target {target:?} of {id:?} is not on the ray of its weight")]
    TargetOffRay { id: String, target: String },
    #[error("point {0} is not in the polytope")]
    NotInPolytope(QVector),
    #[error("model has no root system")]
    NoRootSystem,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// One isolated torus-fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    id: String,
    image: QVector,
    weights: Vec<QVector>,
    targets: BTreeMap<usize, String>,
}

impl FixedPointDatum {
    pub fn new(
        id: impl Into<String>,
        image: QVector,
        weights: Vec<QVector>,
    ) -> Result<Self, ModelError> {
        let id = id.into();
        for (index, w) in weights.iter().enumerate() {
            if w.dim() != image.dim() {
                return Err(ModelError::DimensionMismatch {
                    context: format!("weight {index} of {id:?}"),
                    expected: image.dim(),
                    found: w.dim(),
                });
            }
            if w.is_zero() {
                return Err(ModelError::ZeroWeight { id, index });
            }
        }
        Ok(FixedPointDatum {
            id,
            image,
            weights,
            targets: BTreeMap::new(),
        })
    }

    /// Attaches weight-index → fixed-point-id annotations naming the other
    /// endpoint of the invariant sphere tangent to each weight.
    pub fn with_targets(mut self, targets: BTreeMap<usize, String>) -> Self {
        self.targets = targets;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn image(&self) -> &QVector {
        &self.image
    }

    pub fn weights(&self) -> &[QVector] {
        &self.weights
    }

    pub fn targets(&self) -> &BTreeMap<usize, String> {
        &self.targets
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianModel {
    torus_rank: usize,
    ambient_dim: usize,
    half_dim: usize,
    fixed_points: Vec<FixedPointDatum>,
    root_system: Option<RootSystem>,
}

impl HamiltonianModel {
    /// Checks the structural invariants. Weight counts and edge-ray closure
    /// are not enforced here; [`validate_model`] reports them.
    ///
    /// The torus rank must equal the ambient dimension, or be one less, in
    /// which case torus coordinates are the sum-zero hyperplane.
    pub fn new(
        torus_rank: usize,
        ambient_dim: usize,
        half_dim: usize,
        fixed_points: Vec<FixedPointDatum>,
        root_system: Option<RootSystem>,
    ) -> Result<Self, ModelError> {
        if fixed_points.is_empty() {
            return Err(ModelError::NoFixedPoints);
        }
        if ambient_dim == 0 || !(torus_rank == ambient_dim || torus_rank + 1 == ambient_dim) {
            return Err(ModelError::BadTorusRank {
                torus_rank,
                ambient_dim,
            });
        }
        let mut ids = BTreeSet::new();
        for p in &fixed_points {
            if !ids.insert(p.id.as_str()) {
                return Err(ModelError::DuplicateId(p.id.clone()));
            }
            if p.image.dim() != ambient_dim {
                return Err(ModelError::DimensionMismatch {
                    context: format!("image of {:?}", p.id),
                    expected: ambient_dim,
                    found: p.image.dim(),
                });
            }
            // Weight dims were checked against the image in FixedPointDatum::new.
        }
        if let Some(rs) = &root_system {
            if rs.ambient_dim() != ambient_dim {
                return Err(ModelError::DimensionMismatch {
                    context: "root system".into(),
                    expected: ambient_dim,
                    found: rs.ambient_dim(),
                });
            }
        }
        Ok(HamiltonianModel {
            torus_rank,
            ambient_dim,
            half_dim,
            fixed_points,
            root_system,
        })
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn fixed_points(&self) -> &[FixedPointDatum] {
        &self.fixed_points
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.root_system.as_ref()
    }

    pub fn point(&self, id: &str) -> Option<&FixedPointDatum> {
        self.fixed_points.iter().find(|p| p.id == id)
    }

    /// Whether torus coordinates are the sum-zero hyperplane of the ambient.
    pub fn sum_zero_torus(&self) -> bool {
        self.torus_rank + 1 == self.ambient_dim
    }

    /// Ids of the fixed points sent to `q`.
    pub fn preimages(&self, q: &QVector) -> Vec<&str> {
        self.fixed_points
            .iter()
            .filter(|p| &p.image == q)
            .map(|p| p.id.as_str())
            .collect()
    }

    /// Convex hull of the fixed-point images, which is the torus moment
    /// polytope.
    pub fn image_hull(&self) -> Result<Polytope, ModelError> {
        let images: Vec<QVector> = self.fixed_points.iter().map(|p| p.image.clone()).collect();
        Ok(convex_hull(&images)?)
    }
}
