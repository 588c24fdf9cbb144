use std::collections::{BTreeSet, HashSet, VecDeque};

use num::Signed;

use super::{LieError, RootSystem};
use crate::geometry::{QMatrix, QVector};

/// Upper bound on enumerated group elements.
pub const WEYL_ORDER_BOUND: usize = 10_000;

/// An element of the Weyl group acting on ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement(QMatrix);

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement(QMatrix::identity(dim))
    }

    pub fn reflection(root: &QVector) -> Self {
        WeylElement(QMatrix::reflection(root))
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn apply(&self, v: &QVector) -> QVector {
        self.0.apply(v)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement(self.0.transpose())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Whether the element maps `roots` onto itself.
    pub fn permutes(&self, roots: &[QVector]) -> bool {
        let set: BTreeSet<&QVector> = roots.iter().collect();
        let image: BTreeSet<QVector> = roots.iter().map(|r| self.apply(r)).collect();
        image.len() == set.len() && image.iter().all(|r| set.contains(r))
    }
}

/// A finite reflection group, or a subgroup of one.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    generators: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements.contains(w)
    }

    /// Distinct images of `v`, sorted.
    pub fn orbit(&self, v: &QVector) -> Vec<QVector> {
        self.elements
            .iter()
            .map(|w| w.apply(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Subgroup fixing `q` exactly. It is generated by the reflections it
    /// contains.
    pub fn stabilizer(&self, q: &QVector) -> WeylGroup {
        let elements: Vec<WeylElement> = self
            .elements
            .iter()
            .filter(|w| w.apply(q) == *q)
            .cloned()
            .collect();
        let dim = q.dim();
        let generators = elements
            .iter()
            .filter(|w| is_reflection(w, dim))
            .cloned()
            .collect();
        WeylGroup {
            elements,
            generators,
        }
    }
}

fn is_reflection(w: &WeylElement, dim: usize) -> bool {
    if w.is_identity() || !w.compose(w).is_identity() {
        return false;
    }
    // An involution is a reflection iff its -1 eigenspace is a line, i.e.
    // (I - w) has rank one.
    let id = QMatrix::identity(dim);
    let mut rows: Vec<QVector> = Vec::new();
    for i in 0..dim {
        rows.push(QVector::new(
            (0..dim)
                .map(|j| id.get(i, j) - w.matrix().get(i, j))
                .collect(),
        ));
    }
    let nonzero: Vec<&QVector> = rows.iter().filter(|r| !r.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return false;
    };
    let dir = first.direction();
    nonzero
        .iter()
        .all(|r| r.direction() == dir || (-*r).direction() == dir)
}

/// Closure of the simple reflections under composition.
pub fn weyl_group(rs: &RootSystem) -> Result<WeylGroup, LieError> {
    let dim = rs.ambient_dim();
    let generators: Vec<WeylElement> = rs
        .simple_roots()
        .iter()
        .map(WeylElement::reflection)
        .collect();
    for g in &generators {
        if !g.permutes(rs.roots()) {
            return Err(LieError::InvalidRoots(
                "a simple reflection does not permute the roots".into(),
            ));
        }
    }
    let identity = WeylElement::identity(dim);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::from([identity.clone()]);
    seen.insert(identity);
    while let Some(w) = queue.pop_front() {
        for g in &generators {
            let next = w.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > WEYL_ORDER_BOUND {
                    return Err(LieError::GroupTooLarge(WEYL_ORDER_BOUND));
                }
                queue.push_back(next);
            }
        }
        elements.push(w);
    }
    Ok(WeylGroup {
        elements,
        generators,
    })
}

/// Moves `v` into the closed dominant chamber by simple reflections.
/// Returns the accumulated element `w` and `w·v`.
pub fn to_dominant(rs: &RootSystem, v: &QVector) -> (WeylElement, QVector) {
    let mut element = WeylElement::identity(v.dim());
    let mut current = v.clone();
    while let Some(alpha) = rs
        .simple_roots()
        .iter()
        .find(|a| current.dot(a).is_negative())
    {
        let s = WeylElement::reflection(alpha);
        current = s.apply(&current);
        element = s.compose(&element);
    }
    (element, current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Family;
    use crate::rational::{int, rat};

    fn b2() -> RootSystem {
        RootSystem::build(Family::B, 2).unwrap()
    }

    fn v(c: &[i64]) -> QVector {
        QVector::from_ints(c)
    }

    #[test]
    fn group_orders() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(weyl_group(&a2).unwrap().order(), 6);
        assert_eq!(weyl_group(&b2()).unwrap().order(), 8);
        let a3 = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(weyl_group(&a3).unwrap().order(), 24);
        let b3 = RootSystem::build(Family::B, 3).unwrap();
        assert_eq!(weyl_group(&b3).unwrap().order(), 48);
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        assert_eq!(weyl_group(&a1).unwrap().order(), 2);
    }

    #[test]
    fn every_element_permutes_the_roots() {
        for rs in [
            RootSystem::build(Family::A, 2).unwrap(),
            b2(),
            RootSystem::build(Family::B, 3).unwrap(),
        ] {
            let w = weyl_group(&rs).unwrap();
            for e in w.elements() {
                assert!(e.permutes(rs.roots()));
                assert!(e.matrix().is_orthogonal());
                assert!(w.contains(&e.inverse()));
            }
        }
    }

    #[test]
    fn b2_orbits() {
        let w = weyl_group(&b2()).unwrap();
        let g = rat(3, 2);
        let q = QVector::new(vec![g.clone(), g.clone()]);
        let orbit = w.orbit(&q);
        assert_eq!(orbit.len(), 4);
        for p in &orbit {
            assert_eq!(p[0].clone() * &p[0], &g * &g);
            assert_eq!(p[1].clone() * &p[1], &g * &g);
        }
        let d = QVector::new(vec![int(2), int(0)]);
        let orbit: BTreeSet<QVector> = w.orbit(&d).into_iter().collect();
        let expected: BTreeSet<QVector> = [[2, 0], [-2, 0], [0, 2], [0, -2]]
            .iter()
            .map(|c| v(c))
            .collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn dominant_representatives() {
        let rs = b2();
        let (w, d) = to_dominant(&rs, &v(&[1, 2]));
        assert_eq!(d, v(&[2, 1]));
        assert_eq!(w, WeylElement::reflection(&v(&[1, -1])));
        assert_eq!(to_dominant(&rs, &v(&[-2, 1])).1, v(&[2, 1]));
        let (w, d) = to_dominant(&rs, &v(&[-3, -5]));
        assert_eq!(w.apply(&v(&[-3, -5])), d);
        assert_eq!(d, v(&[5, 3]));
    }

    #[test]
    fn a2_dominant_swaps_first_two_coordinates() {
        // ((2t-s)/3, (2s-t)/3, -(t+s)/3) with t=1 < s=2.
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let (t, s) = (int(1), int(2));
        let three = int(3);
        let p = QVector::new(vec![
            (int(2) * &t - &s) / &three,
            (int(2) * &s - &t) / &three,
            -(&t + &s) / &three,
        ]);
        let (w, d) = to_dominant(&rs, &p);
        assert_eq!(
            d,
            QVector::new(vec![p[1].clone(), p[0].clone(), p[2].clone()])
        );
        assert_eq!(w, WeylElement::reflection(&v(&[1, -1, 0])));
    }

    #[test]
    fn stabilizers() {
        let rs = b2();
        let w = weyl_group(&rs).unwrap();
        assert_eq!(w.stabilizer(&v(&[2, 1])).order(), 1);
        let diag = w.stabilizer(&v(&[1, 1]));
        assert_eq!(diag.order(), 2);
        assert_eq!(diag.generators().len(), 1);
        assert_eq!(w.stabilizer(&QVector::zeros(2)).order(), 8);
        assert_eq!(w.stabilizer(&QVector::zeros(2)).generators().len(), 4);
    }

    #[test]
    fn explicit_non_closed_roots_are_rejected() {
        // Two roots at 72 degrees generate a non-crystallographic, infinite
        // rational orbit structure; here simply non-permuting.
        let roots = vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 3]), v(&[-1, -3])];
        let rs = RootSystem::from_roots(roots).unwrap();
        assert!(weyl_group(&rs).is_err());
    }
}
