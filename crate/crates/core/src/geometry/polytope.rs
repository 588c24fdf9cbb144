use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::{GeometryError, QVector};
use crate::rational::Rational;

/// The closed set `{x : <normal, x> <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    normal: QVector,
    offset: Rational,
}

impl Halfspace {
    pub fn new(normal: QVector, offset: Rational) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn normal(&self) -> &QVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `offset - <normal, x>`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &QVector) -> Rational {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &QVector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &QVector) -> bool {
        self.slack(x).is_zero()
    }

    /// Same halfspace with the normal rescaled so its leading coordinate is ±1.
    fn canonical(self) -> Self {
        let lead = self
            .normal
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero normal")
            .abs();
        Halfspace {
            normal: self.normal.scale(&lead.recip()),
            offset: self.offset / lead,
        }
    }
}

/// A codimension-one face of a polytope, relative to its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub halfspace: Halfspace,
    /// Indices into [`Polytope::vertices`], ascending.
    pub vertices: Vec<usize>,
}

/// Origin plus an orthogonal (not normalized) basis of an affine hull.
#[derive(Clone, Debug)]
struct AffineFrame {
    origin: QVector,
    basis: Vec<QVector>,
    norms: Vec<Rational>,
}

impl AffineFrame {
    fn from_points(points: &[QVector]) -> Self {
        let origin = points[0].clone();
        let mut basis: Vec<QVector> = Vec::new();
        let mut norms: Vec<Rational> = Vec::new();
        for p in &points[1..] {
            let w = reject(&(p - &origin), &basis, &norms);
            if let Some(dir) = w.direction() {
                norms.push(dir.norm_squared());
                basis.push(dir);
            }
        }
        AffineFrame {
            origin,
            basis,
            norms,
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn local(&self, x: &QVector) -> Vec<Rational> {
        let d = x - &self.origin;
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, n)| d.dot(b) / n)
            .collect()
    }

    fn spans(&self, x: &QVector) -> bool {
        reject(&(x - &self.origin), &self.basis, &self.norms).is_zero()
    }

    /// Ambient halfspace agreeing with the local one `<m, c> <= offset` on
    /// the affine hull.
    fn lift(&self, m: &[Rational], offset: Rational) -> Halfspace {
        let mut normal = QVector::zeros(self.origin.dim());
        for ((mi, b), n) in m.iter().zip(&self.basis).zip(&self.norms) {
            normal = &normal + &b.scale(&(mi / n));
        }
        let offset = offset + normal.dot(&self.origin);
        Halfspace { normal, offset }.canonical()
    }
}

/// Component of `v` orthogonal to the span of an orthogonal basis.
fn reject(v: &QVector, basis: &[QVector], norms: &[Rational]) -> QVector {
    let mut w = v.clone();
    for (b, n) in basis.iter().zip(norms) {
        let c = w.dot(b) / n;
        if !c.is_zero() {
            w = &w - &b.scale(&c);
        }
    }
    w
}

/// Exact convex polytope of affine rank at most 3, stored as its minimal
/// vertex list (lexicographically sorted) plus derived facets.
///
/// Rank-0 and rank-1 polytopes carry no facet records.
#[derive(Clone, Debug)]
pub struct Polytope {
    vertices: Vec<QVector>,
    frame: AffineFrame,
    facets: Vec<Facet>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn affine_rank(&self) -> usize {
        self.frame.rank()
    }

    /// Orthogonal basis of the direction space of the affine hull.
    pub fn direction_basis(&self) -> &[QVector] {
        &self.frame.basis
    }

    /// Whether `x` lies in the affine hull.
    pub fn affine_hull_contains(&self, x: &QVector) -> bool {
        x.dim() == self.ambient_dim() && self.frame.spans(x)
    }

    pub fn vertex_index(&self, v: &QVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Vertex index pairs spanning the one-dimensional faces.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.affine_rank() {
            0 => Vec::new(),
            1 => vec![(0, 1)],
            2 => self
                .facets
                .iter()
                .map(|f| (f.vertices[0], f.vertices[1]))
                .collect(),
            _ => {
                let n = self.vertices.len();
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let shared = self
                            .facets
                            .iter()
                            .filter(|f| f.vertices.contains(&i) && f.vertices.contains(&j))
                            .count();
                        if shared >= 2 {
                            edges.push((i, j));
                        }
                    }
                }
                edges
            }
        }
    }

    /// Facets whose closure contains `x`.
    pub fn facets_containing(&self, x: &QVector) -> Vec<&Facet> {
        self.facets
            .iter()
            .filter(|f| f.halfspace.is_tight(x))
            .collect()
    }

    pub fn diameter_squared(&self) -> Rational {
        let mut best = Rational::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d = (a - b).norm_squared();
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Smallest convex polytope containing `points`.
pub fn convex_hull(points: &[QVector]) -> Result<Polytope, GeometryError> {
    let first = points.first().ok_or(GeometryError::EmptyInput)?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let unique: Vec<QVector> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let frame = AffineFrame::from_points(&unique);
    let local: Vec<Vec<Rational>> = unique.iter().map(|p| frame.local(p)).collect();

    let (extreme, local_facets) = match frame.rank() {
        0 => (vec![0], Vec::new()),
        1 => {
            let lo = (0..unique.len())
                .min_by(|&a, &b| local[a].cmp(&local[b]))
                .unwrap();
            let hi = (0..unique.len())
                .max_by(|&a, &b| local[a].cmp(&local[b]))
                .unwrap();
            (vec![lo, hi], Vec::new())
        }
        2 => polygon(&local),
        3 => polyhedron(&local)?,
        r => return Err(GeometryError::UnsupportedRank(r)),
    };

    let mut vertices: Vec<QVector> = extreme.iter().map(|&i| unique[i].clone()).collect();
    vertices.sort();
    let mut facets: Vec<Facet> = local_facets
        .into_iter()
        .map(|(m, offset)| {
            let halfspace = frame.lift(&m, offset);
            let incident = (0..vertices.len())
                .filter(|&i| halfspace.is_tight(&vertices[i]))
                .collect();
            Facet {
                halfspace,
                vertices: incident,
            }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(Polytope {
        vertices,
        frame,
        facets,
    })
}

type LocalFacet = (Vec<Rational>, Rational);

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Andrew's monotone chain with collinear points dropped. Returns the
/// counter-clockwise vertex indices and outward edge halfspaces.
fn polygon(points: &[Vec<Rational>]) -> (Vec<usize>, Vec<LocalFacet>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && !cross(
                    &points[hull[hull.len() - 2]],
                    &points[hull[hull.len() - 1]],
                    &points[i],
                )
                .is_positive()
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    let facets = (0..hull.len())
        .map(|k| {
            let a = &points[hull[k]];
            let b = &points[hull[(k + 1) % hull.len()]];
            let m = vec![&b[1] - &a[1], &a[0] - &b[0]];
            let offset = &m[0] * &a[0] + &m[1] * &a[1];
            (m, offset)
        })
        .collect();
    (hull, facets)
}

/// Facet enumeration by exhaustive supporting-plane search. Quartic in the
/// point count, which is fine for the few dozen points moment data produce.
fn polyhedron(points: &[Vec<Rational>]) -> Result<(Vec<usize>, Vec<LocalFacet>), GeometryError> {
    let n = points.len();
    let sub = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter()
            .zip(b)
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    };
    let mut planes: BTreeSet<(Vec<Rational>, Rational)> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let u = sub(&points[j], &points[i]);
            for k in j + 1..n {
                let v = sub(&points[k], &points[i]);
                let m = vec![
                    &u[1] * &v[2] - &u[2] * &v[1],
                    &u[2] * &v[0] - &u[0] * &v[2],
                    &u[0] * &v[1] - &u[1] * &v[0],
                ];
                if m.iter().all(Zero::is_zero) {
                    continue;
                }
                let offset = dot(&m, &points[i]);
                let mut above = false;
                let mut below = false;
                for p in points {
                    let s = dot(&m, p) - &offset;
                    above |= s.is_positive();
                    below |= s.is_negative();
                    if above && below {
                        break;
                    }
                }
                let (m, offset) = match (above, below) {
                    (false, _) => (m, offset),
                    (true, false) => (m.iter().map(|c| -c).collect(), -offset),
                    (true, true) => continue,
                };
                let lead = m.iter().find(|c| !c.is_zero()).unwrap().abs();
                planes.insert((m.iter().map(|c| c / &lead).collect(), offset / lead));
            }
        }
    }
    let mut extreme: BTreeSet<usize> = BTreeSet::new();
    for (m, offset) in &planes {
        let on_plane: Vec<usize> = (0..n).filter(|&p| dot(m, &points[p]) == *offset).collect();
        let lifted: Vec<QVector> = on_plane
            .iter()
            .map(|&p| QVector::new(points[p].clone()))
            .collect();
        let face = convex_hull(&lifted)?;
        for v in face.vertices() {
            let idx = lifted.iter().position(|p| p == v).unwrap();
            extreme.insert(on_plane[idx]);
        }
    }
    Ok((extreme.into_iter().collect(), planes.into_iter().collect()))
}

/// Exact closed-set membership.
pub fn contains(polytope: &Polytope, x: &QVector) -> Result<bool, GeometryError> {
    if x.dim() != polytope.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: polytope.ambient_dim(),
            found: x.dim(),
        });
    }
    if !polytope.frame.spans(x) {
        return Ok(false);
    }
    Ok(match polytope.affine_rank() {
        0 => *x == polytope.vertices[0],
        1 => {
            let c = &polytope.frame.local(x)[0];
            let a = &polytope.frame.local(&polytope.vertices[0])[0];
            let b = &polytope.frame.local(&polytope.vertices[1])[0];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            lo <= c && c <= hi
        }
        _ => polytope.facets.iter().all(|f| f.halfspace.contains(x)),
    })
}

/// `polytope ∩ halfspace`, or `None` when the intersection is empty.
pub fn cut(polytope: &Polytope, halfspace: &Halfspace) -> Result<Option<Polytope>, GeometryError> {
    if halfspace.normal().dim() != polytope.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: polytope.ambient_dim(),
            found: halfspace.normal().dim(),
        });
    }
    let slacks: Vec<Rational> = polytope
        .vertices
        .iter()
        .map(|v| halfspace.slack(v))
        .collect();
    let mut kept: Vec<QVector> = Vec::new();
    for (v, s) in polytope.vertices.iter().zip(&slacks) {
        if !s.is_negative() {
            kept.push(v.clone());
        }
    }
    // New vertices are where edges cross the boundary.
    for (a, b) in polytope.edges() {
        let (sa, sb) = (&slacks[a], &slacks[b]);
        let (u, su, v, sv) = match (
            sa.is_positive() && sb.is_negative(),
            sb.is_positive() && sa.is_negative(),
        ) {
            (true, _) => (&polytope.vertices[a], sa, &polytope.vertices[b], sb),
            (_, true) => (&polytope.vertices[b], sb, &polytope.vertices[a], sa),
            _ => continue,
        };
        let lambda = su / (su - sv);
        kept.push(u + &(v - u).scale(&lambda));
    }
    if kept.is_empty() {
        return Ok(None);
    }
    convex_hull(&kept).map(Some)
}

pub fn squared_distance(a: &QVector, b: &QVector) -> Result<Rational, GeometryError> {
    if a.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok((a - b).norm_squared())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pts(coords: &[&[i64]]) -> Vec<QVector> {
        coords.iter().map(|c| QVector::from_ints(c)).collect()
    }

    fn unit_square() -> Polytope {
        convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap()
    }

    fn half(num: i64, den: i64) -> Rational {
        rat(num, den)
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&pts(&[&[0, 0]])).unwrap();
        assert_eq!(p.vertices(), pts(&[&[0, 0]]).as_slice());
        assert!(p.facets().is_empty());
        assert_eq!(p.affine_rank(), 0);
    }

    #[test]
    fn square_with_center_drops_interior() {
        let mut input = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        input.push(QVector::new(vec![half(1, 2), half(1, 2)]));
        let p = convex_hull(&input).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        for f in p.facets() {
            assert_eq!(f.vertices.len(), 2);
        }
    }

    #[test]
    fn collinear_points_give_a_segment() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 2], &[1, 1], &[3, 3]])).unwrap();
        assert_eq!(p.affine_rank(), 1);
        assert_eq!(p.vertices(), pts(&[&[0, 0], &[3, 3]]).as_slice());
        assert!(p.facets().is_empty());
        assert!(contains(&p, &QVector::from_ints(&[2, 2])).unwrap());
        assert!(!contains(&p, &QVector::from_ints(&[4, 4])).unwrap());
        assert!(!contains(&p, &QVector::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(convex_hull(&[]).unwrap_err(), GeometryError::EmptyInput);
        let simplex = pts(&[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(
            convex_hull(&simplex).unwrap_err(),
            GeometryError::UnsupportedRank(4)
        );
        assert!(matches!(
            convex_hull(&pts(&[&[0, 0], &[0, 0, 0]])),
            Err(GeometryError::DimensionMismatch { .. })
        ));
        assert!(contains(&unit_square(), &QVector::zeros(3)).is_err());
        assert!(squared_distance(&QVector::zeros(2), &QVector::zeros(3)).is_err());
        assert_eq!(
            Halfspace::new(QVector::zeros(2), int(1)).unwrap_err(),
            GeometryError::ZeroNormal
        );
    }

    #[test]
    fn square_membership() {
        let sq = unit_square();
        assert!(contains(&sq, &QVector::new(vec![half(1, 2), half(1, 2)])).unwrap());
        assert!(!contains(&sq, &QVector::from_ints(&[2, 0])).unwrap());
        assert!(contains(&sq, &QVector::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn planar_polygon_in_three_space() {
        // Hexagon in the sum-zero plane of R^3.
        let hex = pts(&[
            &[1, -1, 0],
            &[-1, 1, 0],
            &[1, 0, -1],
            &[-1, 0, 1],
            &[0, 1, -1],
            &[0, -1, 1],
            &[0, 0, 0],
        ]);
        let p = convex_hull(&hex).unwrap();
        assert_eq!(p.affine_rank(), 2);
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 6);
        assert!(contains(&p, &QVector::zeros(3)).unwrap());
        // Off the plane.
        assert!(!contains(&p, &QVector::new(vec![half(1, 10), int(0), int(0)])).unwrap());
        for f in p.facets() {
            assert_eq!(f.halfspace.normal().sum(), int(0));
        }
    }

    #[test]
    fn cube_and_tetrahedron() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(QVector::from_ints(&[x, y, z]));
                }
            }
        }
        cube.push(QVector::new(vec![half(1, 2), half(1, 2), half(1, 2)]));
        cube.push(QVector::new(vec![half(1, 2), half(1, 2), int(0)]));
        let p = convex_hull(&cube).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
        assert!(p.facets().iter().all(|f| f.vertices.len() == 4));
        assert_eq!(p.edges().len(), 12);

        let tet = convex_hull(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(tet.facets().len(), 4);
        assert_eq!(tet.edges().len(), 6);
        assert!(!contains(&tet, &QVector::from_ints(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn cut_square() {
        let h = Halfspace::new(QVector::from_ints(&[1, 0]), half(1, 2)).unwrap();
        let r = cut(&unit_square(), &h).unwrap().unwrap();
        let expected = convex_hull(&[
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[0, 1]),
            QVector::new(vec![half(1, 2), int(0)]),
            QVector::new(vec![half(1, 2), int(1)]),
        ])
        .unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn cut_triangle_by_scaling() {
        let tri = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        let h = Halfspace::new(QVector::from_ints(&[1, 1]), int(1)).unwrap();
        let r = cut(&tri, &h).unwrap().unwrap();
        assert_eq!(r.vertices(), pts(&[&[0, 0], &[0, 1], &[1, 0]]).as_slice());
    }

    #[test]
    fn cut_can_be_empty_or_degenerate() {
        let sq = unit_square();
        let miss = Halfspace::new(QVector::from_ints(&[1, 0]), int(-1)).unwrap();
        assert!(cut(&sq, &miss).unwrap().is_none());
        let touch = Halfspace::new(QVector::from_ints(&[1, 0]), int(0)).unwrap();
        let edge = cut(&sq, &touch).unwrap().unwrap();
        assert_eq!(edge.affine_rank(), 1);
        let all = Halfspace::new(QVector::from_ints(&[1, 1]), int(5)).unwrap();
        assert_eq!(cut(&sq, &all).unwrap().unwrap(), sq);
    }

    #[test]
    fn distances() {
        let a = QVector::from_ints(&[0, 0]);
        assert_eq!(squared_distance(&a, &a).unwrap(), int(0));
        assert_eq!(
            squared_distance(&a, &QVector::from_ints(&[3, 4])).unwrap(),
            int(25)
        );
    }
}
