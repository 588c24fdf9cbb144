//! Exact models of the worked examples: projective spaces under the maximal
//! torus of `SU(n+1)`, products and conjugates of those, coadjoint orbits,
//! and the two `SU(3)` actions on `P² × P²` together with a blow-up.

mod blowup;
mod hermitian;

use std::collections::BTreeMap;

use num::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{convex_hull, GeometryError, Polytope, QVector};
use crate::lie::{to_dominant, weyl_group, Family, LieError, RootSystem, WeylElement};
use crate::model::{FixedPointDatum, HamiltonianModel, ModelError};
use crate::rational::{int, rat, Rational};

pub use blowup::{blowup_cut, primitive_direction, su3_natural_blowup};
pub use hermitian::{su_moment_hat, ComplexRational, HermitianMatrix, OMITTED_SCALE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the zero vector has no moment image")]
    ZeroVector,
    #[error("{0} is not a vertex")]
    NotAVertex(QVector),
    #[error("vertex {vertex} has {edges} incident edges but the polytope has rank {rank}")]
    NonSimpleVertex {
        vertex: QVector,
        edges: usize,
        rank: usize,
    },
    #[error("epsilon {0} is too large for the vertex star")]
    EpsilonTooLarge(Rational),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn require(condition: bool, message: impl FnOnce() -> String) -> Result<(), BuildError> {
    if condition {
        Ok(())
    } else {
        Err(BuildError::InvalidParameter(message()))
    }
}

fn positive(name: &str, value: &Rational) -> Result<(), BuildError> {
    require(value.is_positive(), || {
        format!("{name} must be positive, got {value}")
    })
}

/// `ε_j − ε_i` in `R^d`.
pub(crate) fn root(d: usize, j: usize, i: usize) -> QVector {
    &QVector::unit(d, j) - &QVector::unit(d, i)
}

fn type_a(n: usize) -> Option<RootSystem> {
    RootSystem::build(Family::A, n).ok()
}

/// `P^n` with the maximal torus of `SU(n+1)` acting, moment map scaled by
/// `t`. Fixed points are the coordinate lines `e1, …, e{n+1}`.
pub fn cpn_model(n: usize, t: &Rational) -> Result<HamiltonianModel, BuildError> {
    require(n >= 1, || "n must be at least 1".into())?;
    require(!t.is_zero(), || "scale must be nonzero".into())?;
    let d = n + 1;
    let mut points = Vec::with_capacity(d);
    for i in 0..d {
        let mut x = vec![ComplexRational::zero(); d];
        x[i] = ComplexRational::new(int(1), int(0));
        let image = su_moment_hat(&x)?.diagonal().scale(t);
        let others: Vec<usize> = (0..d).filter(|&j| j != i).collect();
        let weights = others.iter().map(|&j| root(d, j, i)).collect();
        let targets = others
            .iter()
            .enumerate()
            .map(|(k, &j)| (k, format!("e{}", j + 1)))
            .collect();
        points.push(
            FixedPointDatum::new(format!("e{}", i + 1), image, weights)?.with_targets(targets),
        );
    }
    Ok(HamiltonianModel::new(n, d, n, points, type_a(n))?)
}

/// The conjugate action: images and weights change sign.
pub fn negated_model(m: &HamiltonianModel) -> HamiltonianModel {
    let points = m
        .fixed_points()
        .iter()
        .map(|p| {
            FixedPointDatum::new(p.id(), -p.image(), p.weights().iter().map(|w| -w).collect())
                .expect("negation keeps weights nonzero")
                .with_targets(p.targets().clone())
        })
        .collect();
    HamiltonianModel::new(
        m.torus_rank(),
        m.ambient_dim(),
        m.half_dim(),
        points,
        m.root_system().cloned(),
    )
    .expect("negation keeps the model well formed")
}

fn pair_id(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Diagonal torus action on `M1 × M2`.
pub fn product_model(
    m1: &HamiltonianModel,
    m2: &HamiltonianModel,
) -> Result<HamiltonianModel, BuildError> {
    if m1.ambient_dim() != m2.ambient_dim() || m1.torus_rank() != m2.torus_rank() {
        return Err(ModelError::DimensionMismatch {
            context: "product factors".into(),
            expected: m1.ambient_dim(),
            found: m2.ambient_dim(),
        }
        .into());
    }
    let offset = m1.half_dim();
    let mut points = Vec::new();
    for a in m1.fixed_points() {
        for b in m2.fixed_points() {
            let image = a.image() + b.image();
            let weights = a.weights().iter().chain(b.weights()).cloned().collect();
            let mut targets: BTreeMap<usize, String> = a
                .targets()
                .iter()
                .map(|(&k, t)| (k, pair_id(t, b.id())))
                .collect();
            targets.extend(
                b.targets()
                    .iter()
                    .map(|(&k, t)| (k + offset, pair_id(a.id(), t))),
            );
            points.push(
                FixedPointDatum::new(pair_id(a.id(), b.id()), image, weights)?
                    .with_targets(targets),
            );
        }
    }
    let root_system = match (m1.root_system(), m2.root_system()) {
        (Some(r1), Some(r2)) if r1 == r2 => Some(r1.clone()),
        _ => None,
    };
    Ok(HamiltonianModel::new(
        m1.torus_rank(),
        m1.ambient_dim(),
        m1.half_dim() + m2.half_dim(),
        points,
        root_system,
    )?)
}

fn orbit_id(v: &QVector) -> String {
    let coords: Vec<String> = v.coords().iter().map(|c| c.to_string()).collect();
    format!("[{}]", coords.join(","))
}

/// Coadjoint orbit through the dominant `lambda`, moment map scaled by
/// `scale`. Fixed points are the Weyl orbit of `lambda`, identified by
/// their unscaled coordinates; the weights at `ν` are the roots pairing
/// negatively with `ν`.
pub fn coadjoint_orbit_model(
    rs: &RootSystem,
    lambda: &QVector,
    scale: &Rational,
) -> Result<HamiltonianModel, BuildError> {
    require(lambda.dim() == rs.ambient_dim(), || {
        "lambda has the wrong dimension".into()
    })?;
    require(!lambda.is_zero(), || "lambda must be nonzero".into())?;
    require(rs.is_dominant(lambda), || {
        format!("{lambda} is not dominant")
    })?;
    positive("scale", scale)?;
    let w = weyl_group(rs)?;
    let orbit = w.orbit(lambda);
    let mut points = Vec::with_capacity(orbit.len());
    let mut half_dim = 0;
    for nu in &orbit {
        let mut weights = Vec::new();
        let mut targets = BTreeMap::new();
        for beta in rs.roots() {
            if nu.dot(beta).is_negative() {
                targets.insert(
                    weights.len(),
                    orbit_id(&WeylElement::reflection(beta).apply(nu)),
                );
                weights.push(beta.clone());
            }
        }
        half_dim = weights.len();
        points.push(
            FixedPointDatum::new(orbit_id(nu), nu.scale(scale), weights)?.with_targets(targets),
        );
    }
    let torus_rank = match rs.family() {
        Family::A => rs.ambient_dim() - 1,
        _ => rs.ambient_dim(),
    };
    Ok(HamiltonianModel::new(
        torus_rank,
        rs.ambient_dim(),
        half_dim,
        points,
        Some(rs.clone()),
    )?)
}

/// Diagonal `T²` action on the product of the `SO(5)` coadjoint orbits
/// through `(γ,γ)` and `(δ,0)`.
pub fn so5_example(gamma: &Rational, delta: &Rational) -> Result<HamiltonianModel, BuildError> {
    positive("gamma", gamma)?;
    positive("delta", delta)?;
    let rs = RootSystem::build(Family::B, 2)?;
    let a = coadjoint_orbit_model(&rs, &QVector::from_ints(&[1, 1]), gamma)?;
    let b = coadjoint_orbit_model(&rs, &QVector::from_ints(&[1, 0]), delta)?;
    product_model(&a, &b)
}

/// `SU(3)` acting diagonally on `P² × P²` with moment map `tμ(x) + sμ(y)`.
pub fn su3_natural(t: &Rational, s: &Rational) -> Result<HamiltonianModel, BuildError> {
    positive("t", t)?;
    positive("s", s)?;
    product_model(&cpn_model(2, t)?, &cpn_model(2, s)?)
}

/// `SU(3)` acting by `([x],[y]) ↦ ([Ax],[Āy])` with moment map
/// `tμ(x) − sμ(ȳ)`.
pub fn su3_skew(t: &Rational, s: &Rational) -> Result<HamiltonianModel, BuildError> {
    positive("t", t)?;
    positive("s", s)?;
    product_model(&cpn_model(2, t)?, &negated_model(&cpn_model(2, s)?))
}

/// `t·q̂_i` with `q̂_i = ε_i − (1,1,1)/3`, the scaled image of `e_i` in `P²`.
fn qhat(i: usize, t: &Rational) -> QVector {
    let third = rat(1, 3);
    let ones = QVector::new(vec![third; 3]);
    (&QVector::unit(3, i) - &ones).scale(t)
}

/// The invariant part `μ(M) ∩ t*₊` of the natural action. The action has
/// cohomogeneity one (orbits are labelled by `|⟨x,y⟩|²`), so it is the
/// segment between the dominant images of the two singular orbits
/// `x = y` and `x ⊥ y`.
pub fn su3_natural_kirwan(t: &Rational, s: &Rational) -> Result<Polytope, BuildError> {
    positive("t", t)?;
    positive("s", s)?;
    let rs = RootSystem::build(Family::A, 2)?;
    let diagonal = qhat(0, &(t + s));
    let orthogonal = &qhat(0, t) + &qhat(1, s);
    let ends = [
        to_dominant(&rs, &diagonal).1,
        to_dominant(&rs, &orthogonal).1,
    ];
    Ok(convex_hull(&ends)?)
}

/// Same for the skew action, whose moment values at `x = y` and `x ⊥ ȳ`
/// bound the segment.
pub fn su3_skew_kirwan(t: &Rational, s: &Rational) -> Result<Polytope, BuildError> {
    positive("t", t)?;
    positive("s", s)?;
    let rs = RootSystem::build(Family::A, 2)?;
    let diagonal = &qhat(0, t) - &qhat(0, s);
    let orthogonal = &qhat(0, t) - &qhat(1, s);
    let ends = [
        to_dominant(&rs, &diagonal).1,
        to_dominant(&rs, &orthogonal).1,
    ];
    Ok(convex_hull(&ends)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{morse_report, validate_model, Generator};
    use crate::rational::rat;

    fn q(c: &[Rational]) -> QVector {
        QVector::new(c.to_vec())
    }

    #[test]
    fn cp2_images_and_weights() {
        let m = cpn_model(2, &int(1)).unwrap();
        let e1 = m.point("e1").unwrap();
        assert_eq!(e1.image(), &q(&[rat(2, 3), rat(-1, 3), rat(-1, 3)]));
        assert_eq!(
            e1.weights(),
            &[
                QVector::from_ints(&[-1, 1, 0]),
                QVector::from_ints(&[-1, 0, 1])
            ]
        );
        assert!(validate_model(&m).is_empty());
        let doubled = cpn_model(2, &int(2)).unwrap();
        for (a, b) in m.fixed_points().iter().zip(doubled.fixed_points()) {
            assert_eq!(a.image().scale(&int(2)), *b.image());
            assert_eq!(a.weights(), b.weights());
        }
    }

    #[test]
    fn cp1_is_valid_with_betti_one_one() {
        let m = cpn_model(1, &int(1)).unwrap();
        assert_eq!(m.fixed_points().len(), 2);
        assert_eq!(m.point("e1").unwrap().image(), &q(&[rat(1, 2), rat(-1, 2)]));
        assert!(validate_model(&m).is_empty());
        let r = morse_report(&m, &crate::model::choose_generator(&m).unwrap()).unwrap();
        assert_eq!(r.betti, vec![1, 1]);
        assert!(cpn_model(0, &int(1)).is_err());
        assert!(cpn_model(2, &int(0)).is_err());
    }

    #[test]
    fn negation() {
        let s = rat(3, 2);
        let m = cpn_model(2, &s).unwrap();
        let n = negated_model(&m);
        assert_eq!(
            n.point("e1").unwrap().image(),
            &q(&[rat(-2, 3), rat(1, 3), rat(1, 3)]).scale(&s)
        );
        assert_eq!(
            n.point("e1").unwrap().weights()[0],
            QVector::from_ints(&[1, -1, 0])
        );
        assert_eq!(negated_model(&n), m);
        assert!(validate_model(&n).is_empty());
    }

    #[test]
    fn a1_orbit_matches_cp1() {
        let rs = RootSystem::build(Family::A, 1).unwrap();
        let m = coadjoint_orbit_model(&rs, &q(&[rat(1, 2), rat(-1, 2)]), &int(1)).unwrap();
        let cp1 = cpn_model(1, &int(1)).unwrap();
        let key = |m: &HamiltonianModel| {
            let mut v: Vec<(QVector, Vec<QVector>)> = m
                .fixed_points()
                .iter()
                .map(|p| (p.image().clone(), p.weights().to_vec()))
                .collect();
            v.sort();
            v
        };
        assert_eq!(key(&m), key(&cp1));
    }

    #[test]
    fn b2_orbits() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        let g = rat(5, 4);
        let m = coadjoint_orbit_model(&rs, &QVector::from_ints(&[1, 1]), &g).unwrap();
        assert_eq!(m.fixed_points().len(), 4);
        assert_eq!(m.half_dim(), 3);
        let top = m.point("[1,1]").unwrap();
        let mut w = top.weights().to_vec();
        w.sort();
        let mut expected = vec![
            QVector::from_ints(&[-1, 0]),
            QVector::from_ints(&[0, -1]),
            QVector::from_ints(&[-1, -1]),
        ];
        expected.sort();
        assert_eq!(w, expected);
        assert!(validate_model(&m).is_empty());
        let xi = crate::model::choose_generator(&m).unwrap();
        assert_eq!(morse_report(&m, &xi).unwrap().betti, vec![1, 1, 1, 1]);
        let d = coadjoint_orbit_model(&rs, &QVector::from_ints(&[1, 0]), &g).unwrap();
        assert_eq!(d.fixed_points().len(), 4);
        assert!(d.fixed_points().iter().all(|p| p.weights().len() == 3));
        assert!(validate_model(&d).is_empty());
        assert!(coadjoint_orbit_model(&rs, &QVector::from_ints(&[0, 1]), &g).is_err());
        assert!(coadjoint_orbit_model(&rs, &QVector::zeros(2), &g).is_err());
    }

    #[test]
    fn su3_natural_images() {
        let (t, s) = (rat(7, 5), rat(2, 3));
        let m = su3_natural(&t, &s).unwrap();
        let three = int(3);
        assert_eq!(
            m.point("(e1,e1)").unwrap().image(),
            &QVector::from_ints(&[2, -1, -1]).scale(&((&t + &s) / &three))
        );
        assert_eq!(
            m.point("(e1,e2)").unwrap().image(),
            &q(&[
                (int(2) * &t - &s) / &three,
                (int(2) * &s - &t) / &three,
                -(&t + &s) / &three
            ])
        );
        assert!(validate_model(&m).is_empty());
    }

    #[test]
    fn su3_sigma_values_for_a_fixed_generator() {
        let m = su3_natural(&int(1), &int(1)).unwrap();
        let xi = Generator::new(QVector::from_ints(&[1, 0, -1]));
        let r = morse_report(&m, &xi).unwrap();
        assert_eq!(r.sigma_of("(e3,e3)"), Some(0));
        assert_eq!(r.sigma_of("(e1,e1)"), Some(4));
        assert_eq!(r.sigma_of("(e2,e3)"), Some(1));
        assert_eq!(r.betti, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn skew_diagonal_goes_to_zero() {
        let t = rat(3, 2);
        let m = su3_skew(&t, &t).unwrap();
        for i in 1..=3 {
            let p = m.point(&format!("(e{i},e{i})")).unwrap();
            assert!(p.image().is_zero());
            for w in p.weights() {
                assert!(p.weights().contains(&-w));
            }
        }
        assert!(validate_model(&m).is_empty());
    }

    #[test]
    fn kirwan_segments_are_dominant() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        for (t, s) in [(int(2), int(1)), (int(1), int(2)), (int(1), int(1))] {
            for seg in [
                su3_natural_kirwan(&t, &s).unwrap(),
                su3_skew_kirwan(&t, &s).unwrap(),
            ] {
                assert!(seg.vertices().iter().all(|v| rs.is_dominant(v)));
            }
        }
        // t = s: the orthogonal orbit maps onto the wall.
        let seg = su3_natural_kirwan(&int(1), &int(1)).unwrap();
        assert_eq!(seg.affine_rank(), 1);
    }
}
