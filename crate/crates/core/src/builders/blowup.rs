use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};

use super::{positive, qhat, root, BuildError};
use crate::geometry::{cut, Halfspace, Polytope, QVector};
use crate::lie::{Family, RootSystem};
use crate::model::{FixedPointDatum, HamiltonianModel};
use crate::rational::Rational;

/// Positive multiple of `v` with coprime integer coordinates.
pub fn primitive_direction(v: &QVector) -> Option<QVector> {
    if v.is_zero() {
        return None;
    }
    let lcm = v
        .coords()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .coords()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Some(QVector::new(
        ints.into_iter()
            .map(|c| Rational::from_integer(c / &gcd))
            .collect(),
    ))
}

/// Truncates a simple vertex: the new facet passes through the points at
/// lattice distance `epsilon` from `vertex` along each incident edge, so
/// the new vertices are `vertex + epsilon·w_k` with `w_k` the primitive
/// edge directions.
pub fn blowup_cut(
    delta: &Polytope,
    vertex: &QVector,
    epsilon: &Rational,
) -> Result<Polytope, BuildError> {
    positive("epsilon", epsilon)?;
    let index = delta
        .vertex_index(vertex)
        .ok_or_else(|| BuildError::NotAVertex(vertex.clone()))?;
    let rank = delta.affine_rank();
    let neighbours: Vec<&QVector> = delta
        .edges()
        .into_iter()
        .filter_map(|(a, b)| match (a == index, b == index) {
            (true, _) => Some(&delta.vertices()[b]),
            (_, true) => Some(&delta.vertices()[a]),
            _ => None,
        })
        .collect();
    if rank == 0 || neighbours.len() != rank {
        return Err(BuildError::NonSimpleVertex {
            vertex: vertex.clone(),
            edges: neighbours.len(),
            rank,
        });
    }
    let mut points = Vec::with_capacity(rank);
    for n in &neighbours {
        let edge = *n - vertex;
        let w = primitive_direction(&edge).expect("distinct vertices");
        // edge = lambda·w with lambda > 0; the new point must stay inside.
        let lambda = edge.dot(&w) / w.norm_squared();
        if epsilon >= &lambda {
            return Err(BuildError::EpsilonTooLarge(epsilon.clone()));
        }
        points.push(vertex + &w.scale(epsilon));
    }
    let normal = hyperplane_normal(delta.direction_basis(), &points);
    let mut offset = normal.dot(&points[0]);
    let mut normal = normal;
    if normal.dot(vertex) < offset {
        normal = -&normal;
        offset = -offset;
    }
    let halfspace = Halfspace::new(normal, offset)?;
    for (i, v) in delta.vertices().iter().enumerate() {
        if i != index && !halfspace.slack(v).is_positive() {
            return Err(BuildError::EpsilonTooLarge(epsilon.clone()));
        }
    }
    Ok(cut(delta, &halfspace)?.expect("the kept vertices are nonempty"))
}

/// A nonzero vector in the span of the orthogonal `basis` that is
/// orthogonal to the differences of `points`, which span a hyperplane of
/// that space.
fn hyperplane_normal(basis: &[QVector], points: &[QVector]) -> QVector {
    let local = |d: &QVector| -> Vec<Rational> {
        basis.iter().map(|b| d.dot(b) / b.norm_squared()).collect()
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| local(&(p - &points[0])))
        .collect();
    let m: Vec<Rational> = match basis.len() {
        1 => vec![Rational::one()],
        2 => vec![diffs[0][1].clone(), -diffs[0][0].clone()],
        _ => {
            let (a, b) = (&diffs[0], &diffs[1]);
            vec![
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ]
        }
    };
    // Lift: with an orthogonal basis, <Σ m_i b_i/|b_i|², d> = Σ m_i c_i.
    basis
        .iter()
        .zip(&m)
        .fold(QVector::zeros(basis[0].dim()), |acc, (b, mi)| {
            &acc + &b.scale(&(mi / b.norm_squared()))
        })
}

fn cell(i: usize, j: usize) -> String {
    format!("(e{},e{})", i + 1, j + 1)
}

fn exceptional(i: usize, j: usize) -> String {
    format!("(e{},e{})>e{}", i + 1, i + 1, j + 1)
}

/// The natural `SU(3)` action on `P² × P²` blown up along the diagonal
/// with exceptional size `epsilon`. The diagonal fixed point `(e_i,e_i)` is
/// replaced by two points `(e_i,e_i)>e_j`, one per normal line, with image
/// `(t+s)q̂_i + ε(ε_j − ε_i)`.
pub fn su3_natural_blowup(
    t: &Rational,
    s: &Rational,
    epsilon: &Rational,
) -> Result<HamiltonianModel, BuildError> {
    positive("t", t)?;
    positive("s", s)?;
    positive("epsilon", epsilon)?;
    if epsilon >= t.min(s) {
        return Err(BuildError::InvalidParameter(format!(
            "epsilon {epsilon} must be below min(t, s)"
        )));
    }
    let third = |i: usize, j: usize| 3 - i - j;
    let ts = t + s;
    let mut points = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = third(i, j);
            let image = &qhat(i, t) + &qhat(j, s);
            let weights = vec![root(3, j, i), root(3, k, i), root(3, i, j), root(3, k, j)];
            let targets = BTreeMap::from([
                (0, exceptional(j, i)),
                (1, cell(k, j)),
                (2, exceptional(i, j)),
                (3, cell(i, k)),
            ]);
            points.push(FixedPointDatum::new(cell(i, j), image, weights)?.with_targets(targets));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = third(i, j);
            let image = &qhat(i, &ts) + &root(3, j, i).scale(epsilon);
            let weights = vec![root(3, j, i), root(3, j, i), root(3, k, i), root(3, k, j)];
            let targets = BTreeMap::from([
                (0, exceptional(j, i)),
                (1, cell(i, j)),
                (2, exceptional(k, j)),
                (3, exceptional(i, k)),
            ]);
            points.push(
                FixedPointDatum::new(exceptional(i, j), image, weights)?.with_targets(targets),
            );
        }
    }
    Ok(HamiltonianModel::new(
        2,
        3,
        4,
        points,
        RootSystem::build(Family::A, 2).ok(),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::model::{choose_generator, deformation_report, morse_report, validate_model};
    use crate::rational::{int, rat};

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    #[test]
    fn primitive_directions() {
        let q = QVector::new(vec![rat(2, 3), rat(-4, 3), rat(2, 3)]);
        assert_eq!(primitive_direction(&q), Some(v(&[1, -2, 1])));
        assert_eq!(primitive_direction(&v(&[0, -6])), Some(v(&[0, -1])));
        assert_eq!(primitive_direction(&QVector::zeros(2)), None);
    }

    #[test]
    fn square_corner_becomes_pentagon() {
        let square = convex_hull(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        let cut = blowup_cut(&square, &v(&[0, 0]), &rat(1, 4)).unwrap();
        assert_eq!(cut.vertices().len(), 5);
        assert_eq!(cut.facets().len(), 5);
        assert!(cut
            .vertex_index(&QVector::new(vec![rat(1, 4), int(0)]))
            .is_some());
        assert!(cut
            .vertex_index(&QVector::new(vec![int(0), rat(1, 4)]))
            .is_some());
        assert!(matches!(
            blowup_cut(&square, &v(&[0, 0]), &int(1)),
            Err(BuildError::EpsilonTooLarge(_))
        ));
        assert!(blowup_cut(&square, &v(&[0, 0]), &int(0)).is_err());
        assert!(matches!(
            blowup_cut(&square, &v(&[5, 5]), &rat(1, 4)),
            Err(BuildError::NotAVertex(_))
        ));
    }

    #[test]
    fn cube_corner_becomes_triangle() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(v(&[x, y, z]));
                }
            }
        }
        let cube = convex_hull(&pts).unwrap();
        let cut = blowup_cut(&cube, &v(&[1, 1, 1]), &rat(1, 2)).unwrap();
        assert_eq!(cut.vertices().len(), 10);
        assert_eq!(cut.facets().len(), 7);
        // Octahedron vertices have four edges.
        let oct: Vec<QVector> = [
            [1, 0, 0],
            [-1, 0, 0],
            [0, 1, 0],
            [0, -1, 0],
            [0, 0, 1],
            [0, 0, -1],
        ]
        .iter()
        .map(|c| v(c))
        .collect();
        let oct = convex_hull(&oct).unwrap();
        assert!(matches!(
            blowup_cut(&oct, &v(&[0, 0, 1]), &rat(1, 4)),
            Err(BuildError::NonSimpleVertex { edges: 4, .. })
        ));
    }

    #[test]
    fn blowup_model() {
        let (t, s, e) = (int(1), int(1), rat(1, 4));
        let m = su3_natural_blowup(&t, &s, &e).unwrap();
        assert_eq!(m.fixed_points().len(), 12);
        assert!(validate_model(&m).is_empty(), "{:?}", validate_model(&m));
        let xi = choose_generator(&m).unwrap();
        assert_eq!(morse_report(&m, &xi).unwrap().betti, vec![1, 3, 4, 3, 1]);
        assert_eq!(deformation_report(&m, &xi).unwrap().rows.len(), 3);
        assert!(su3_natural_blowup(&t, &s, &int(1)).is_err());
    }
}
