use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FixedPointDatum, HamiltonianModel, ModelError};
use crate::geometry::QVector;

/// Largest max-norm searched by [`choose_generator`].
pub const GENERATOR_SEARCH_BOUND: i64 = 50;

/// An element `ξ` of the torus Lie algebra pairing nonzero with every
/// isotropy weight, so that `<μ, ξ>` is a Morse function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator(QVector);

impl Generator {
    pub fn new(xi: QVector) -> Self {
        Generator(xi)
    }

    pub fn xi(&self) -> &QVector {
        &self.0
    }

    pub fn certify(&self, m: &HamiltonianModel) -> Result<(), ModelError> {
        if self.0.dim() != m.ambient_dim() {
            return Err(ModelError::DimensionMismatch {
                context: "generator".into(),
                expected: m.ambient_dim(),
                found: self.0.dim(),
            });
        }
        for p in m.fixed_points() {
            sigma(p, self)?;
        }
        Ok(())
    }
}

fn is_valid(m: &HamiltonianModel, xi: &QVector) -> bool {
    m.fixed_points()
        .iter()
        .all(|p| p.weights().iter().all(|w| !w.dot(xi).is_zero()))
}

/// First valid integer generator by increasing max-norm, then
/// lexicographic order. For sum-zero tori only sum-zero vectors are
/// enumerated.
pub fn choose_generator(m: &HamiltonianModel) -> Result<Generator, ModelError> {
    let sum_zero = m.sum_zero_torus();
    crate::lattice::by_max_norm(m.ambient_dim(), GENERATOR_SEARCH_BOUND)
        .filter(|c| !sum_zero || c.iter().sum::<i64>() == 0)
        .map(|c| QVector::from_ints(&c))
        .find(|xi| is_valid(m, xi))
        .map(Generator)
        .ok_or(ModelError::GeneratorSearchExhausted(GENERATOR_SEARCH_BOUND))
}

/// Number of weights at `p` pairing strictly negatively with `ξ`.
pub fn sigma(p: &FixedPointDatum, xi: &Generator) -> Result<usize, ModelError> {
    let mut count = 0;
    for (index, w) in p.weights().iter().enumerate() {
        if w.dim() != xi.0.dim() {
            return Err(ModelError::DimensionMismatch {
                context: format!("generator against {:?}", p.id()),
                expected: w.dim(),
                found: xi.0.dim(),
            });
        }
        let pairing = w.dot(&xi.0);
        if pairing.is_zero() {
            return Err(ModelError::InvalidGenerator {
                id: p.id().to_string(),
                index,
            });
        }
        if pairing.is_negative() {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub xi: Generator,
    /// `(fixed point id, σ)` in model order.
    pub sigma: Vec<(String, usize)>,
    /// `b_0, b_2, …, b_{2n}`; odd Betti numbers vanish.
    pub betti: Vec<usize>,
    pub warnings: Vec<String>,
}

impl MorseReport {
    pub fn sigma_of(&self, id: &str) -> Option<usize> {
        self.sigma.iter().find(|(p, _)| p == id).map(|(_, s)| *s)
    }

    /// Ids with `σ = k`, in model order.
    pub fn index(&self, k: usize) -> Vec<&str> {
        self.sigma
            .iter()
            .filter(|(_, s)| *s == k)
            .map(|(p, _)| p.as_str())
            .collect()
    }
}

/// Perfect Morse function: `b_{2k}` counts the fixed points with `σ = k`.
pub fn morse_report(m: &HamiltonianModel, xi: &Generator) -> Result<MorseReport, ModelError> {
    xi.certify(m)?;
    let sigma: Vec<(String, usize)> = m
        .fixed_points()
        .iter()
        .map(|p| Ok((p.id().to_string(), sigma(p, xi)?)))
        .collect::<Result<_, ModelError>>()?;
    let top = sigma
        .iter()
        .map(|(_, s)| *s)
        .max()
        .unwrap_or(0)
        .max(m.half_dim());
    let mut betti = vec![0; top + 1];
    for (_, s) in &sigma {
        betti[*s] += 1;
    }
    let mut warnings = Vec::new();
    if betti[0] != 1 {
        warnings.push(format!("b_0 = {} (expected 1 for connected M)", betti[0]));
    }
    let n = m.half_dim();
    for k in 0..=n / 2 {
        let (lo, hi) = (betti.get(k).copied(), betti.get(n - k).copied());
        if lo != hi {
            warnings.push(format!(
                "Poincaré duality fails: b_{} = {} but b_{} = {}",
                2 * k,
                lo.unwrap_or(0),
                2 * (n - k),
                hi.unwrap_or(0)
            ));
        }
    }
    if betti.len() > n + 1 {
        warnings.push(format!("indices exceed half-dimension {n}"));
    }
    Ok(MorseReport {
        xi: xi.clone(),
        sigma,
        betti,
        warnings,
    })
}

/// `count` pairwise non-proportional valid generators: the enumerated one
/// first, then one per seed `1, 2, …` drawn from a seeded stream.
pub fn trial_generators(m: &HamiltonianModel, count: usize) -> Result<Vec<Generator>, ModelError> {
    let mut found: Vec<Generator> = Vec::new();
    if count == 0 {
        return Ok(found);
    }
    found.push(choose_generator(m)?);
    let dim = m.ambient_dim();
    let sum_zero = m.sum_zero_torus();
    let mut seed = 0u64;
    while found.len() < count {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut accepted = false;
        for _ in 0..1000 {
            let mut coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(-12..=12)).collect();
            if sum_zero {
                let rest: i64 = coords[..dim - 1].iter().sum();
                coords[dim - 1] = -rest;
            }
            let xi = QVector::from_ints(&coords);
            if xi.is_zero() || !is_valid(m, &xi) {
                continue;
            }
            let dir = xi.direction();
            if found.iter().any(|g| g.0.direction() == dir) {
                continue;
            }
            found.push(Generator(xi));
            accepted = true;
            break;
        }
        if !accepted && seed > 10 * count as u64 + 100 {
            return Err(ModelError::GeneratorSearchExhausted(12));
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub witnesses: Vec<(Generator, Vec<usize>)>,
}

/// Betti vectors across `trials` distinct generators agree.
pub fn betti_invariance(
    m: &HamiltonianModel,
    trials: usize,
) -> Result<InvarianceReport, ModelError> {
    let witnesses = trial_generators(m, trials)?
        .into_iter()
        .map(|g| {
            let betti = morse_report(m, &g)?.betti;
            Ok((g, betti))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    let invariant = witnesses.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(InvarianceReport {
        invariant,
        witnesses,
    })
}
