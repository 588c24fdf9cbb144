use std::collections::BTreeSet;
use std::fmt;

use num::{Signed, Zero};

use super::LieError;
use crate::geometry::{convex_hull, Halfspace, QVector};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    Explicit,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::Explicit => write!(f, "explicit"),
        }
    }
}

/// A finite reduced root system in fixed ambient coordinates.
///
/// Type `A_l` lives in the sum-zero hyperplane of `R^{l+1}` so traceless
/// diagonal matrices are coordinates verbatim; type `B_l` lives in `R^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    roots: Vec<QVector>,
    positive: Vec<QVector>,
    simple: Vec<QVector>,
}

impl RootSystem {
    /// Named families `A_l` and `B_l` for `1 <= l <= 3`.
    pub fn build(family: Family, rank: usize) -> Result<Self, LieError> {
        if !(1..=3).contains(&rank) {
            return Err(LieError::Unsupported { family, rank });
        }
        let (ambient_dim, positive, simple) = match family {
            Family::A => {
                let d = rank + 1;
                let e = |i| QVector::unit(d, i);
                let mut positive = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        positive.push(&e(i) - &e(j));
                    }
                }
                let simple = (0..rank).map(|i| &e(i) - &e(i + 1)).collect();
                (d, positive, simple)
            }
            Family::B => {
                let d = rank;
                let e = |i| QVector::unit(d, i);
                let mut positive: Vec<QVector> = (0..d).map(e).collect();
                for i in 0..d {
                    for j in i + 1..d {
                        positive.push(&e(i) - &e(j));
                        positive.push(&e(i) + &e(j));
                    }
                }
                let mut simple: Vec<QVector> = (0..d - 1).map(|i| &e(i) - &e(i + 1)).collect();
                simple.push(e(d - 1));
                (d, positive, simple)
            }
            Family::Explicit => return Err(LieError::Unsupported { family, rank }),
        };
        let mut roots: Vec<QVector> = positive.iter().flat_map(|r| [r.clone(), -r]).collect();
        roots.sort();
        Ok(RootSystem {
            family,
            rank,
            ambient_dim,
            roots,
            positive,
            simple,
        })
    }

    /// Arbitrary finite reduced root list. Positive roots are those pairing
    /// positively with the first integer vector (by max-norm, then
    /// lexicographic order) that pairs nonzero with every root; simple roots
    /// are the extreme rays of the positive cone.
    pub fn from_roots(mut roots: Vec<QVector>) -> Result<Self, LieError> {
        roots.sort();
        let first = roots
            .first()
            .ok_or_else(|| LieError::InvalidRoots("empty root list".into()))?;
        let ambient_dim = first.dim();
        if ambient_dim == 0 || roots.iter().any(|r| r.dim() != ambient_dim) {
            return Err(LieError::InvalidRoots(
                "roots must share a positive dimension".into(),
            ));
        }
        let set: BTreeSet<QVector> = roots.iter().cloned().collect();
        if set.len() != roots.len() {
            return Err(LieError::InvalidRoots("duplicate roots".into()));
        }
        for r in &roots {
            if r.is_zero() {
                return Err(LieError::InvalidRoots("zero root".into()));
            }
            if !set.contains(&-r) {
                return Err(LieError::InvalidRoots(format!("{r} has no negative")));
            }
            for s in &roots {
                if s != r && s != &-r && r.direction() == s.direction() {
                    return Err(LieError::InvalidRoots(format!(
                        "{r} and {s} are proportional"
                    )));
                }
                if (-r).direction() == s.direction() && s != &-r {
                    return Err(LieError::InvalidRoots(format!(
                        "{r} and {s} are proportional"
                    )));
                }
            }
        }
        let rank = span_rank(&roots);
        if rank > 3 {
            return Err(LieError::Unsupported {
                family: Family::Explicit,
                rank,
            });
        }
        let functional = first_generic_vector(ambient_dim, &roots)
            .ok_or_else(|| LieError::InvalidRoots("no regular element found".into()))?;
        let positive: Vec<QVector> = roots
            .iter()
            .filter(|r| r.dot(&functional).is_positive())
            .cloned()
            .collect();
        // Extreme rays of the positive cone: vertices of the slice at height 1.
        let slice: Vec<QVector> = positive
            .iter()
            .map(|r| r.scale(&r.dot(&functional).recip()))
            .collect();
        let hull = convex_hull(&slice).map_err(|e| LieError::InvalidRoots(e.to_string()))?;
        let simple: Vec<QVector> = positive
            .iter()
            .zip(&slice)
            .filter(|(_, s)| hull.vertex_index(s).is_some())
            .map(|(r, _)| r.clone())
            .collect();
        if simple.len() != rank {
            return Err(LieError::InvalidRoots(format!(
                "found {} simple roots for rank {rank}",
                simple.len()
            )));
        }
        Ok(RootSystem {
            family: Family::Explicit,
            rank,
            ambient_dim,
            roots,
            positive,
            simple,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &[QVector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[QVector] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple
    }

    /// `<v, alpha> >= 0` for every simple root.
    pub fn is_dominant(&self, v: &QVector) -> bool {
        self.simple.iter().all(|a| !v.dot(a).is_negative())
    }

    /// Strictly inside the dominant chamber.
    pub fn in_open_chamber(&self, v: &QVector) -> bool {
        self.simple.iter().all(|a| v.dot(a).is_positive())
    }

    /// One hyperplane per positive root, as the halfspace `<beta, x> <= 0`
    /// whose boundary is the wall.
    pub fn walls(&self) -> Vec<Halfspace> {
        self.positive
            .iter()
            .map(|b| Halfspace::new(b.clone(), Rational::zero()).expect("roots are nonzero"))
            .collect()
    }

    /// Indices (into [`Self::positive_roots`]) of the walls through `v`.
    pub fn walls_through(&self, v: &QVector) -> Vec<usize> {
        self.positive
            .iter()
            .enumerate()
            .filter(|(_, b)| v.dot(b).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Halfspaces `<-alpha, x> <= 0` cutting out the closed dominant chamber.
    pub fn dominant_chamber(&self) -> Vec<Halfspace> {
        self.simple
            .iter()
            .map(|a| Halfspace::new(-a, Rational::zero()).expect("roots are nonzero"))
            .collect()
    }
}

fn span_rank(vectors: &[QVector]) -> usize {
    let mut basis: Vec<QVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let c = w.dot(b) / b.norm_squared();
            w = &w - &b.scale(&c);
        }
        if !w.is_zero() {
            basis.push(w);
        }
    }
    basis.len()
}

fn first_generic_vector(dim: usize, roots: &[QVector]) -> Option<QVector> {
    crate::lattice::by_max_norm(dim, 50)
        .map(|c| QVector::from_ints(&c))
        .find(|v| roots.iter().all(|r| !r.dot(v).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_has_six_roots_in_the_sum_zero_plane() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(rs.ambient_dim(), 3);
        assert_eq!(rs.roots().len(), 6);
        assert_eq!(rs.positive_roots().len(), 3);
        assert!(rs.roots().iter().all(|r| r.sum().is_zero()));
        assert_eq!(rs.walls().len(), 3);
    }

    #[test]
    fn b2_chamber_is_the_paper_octant() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        assert_eq!(rs.roots().len(), 8);
        assert!(rs.is_dominant(&QVector::from_ints(&[2, 1])));
        assert!(!rs.is_dominant(&QVector::from_ints(&[1, 2])));
        assert!(rs.is_dominant(&QVector::from_ints(&[1, 0])));
        assert!(rs.is_dominant(&QVector::from_ints(&[1, 1])));
        assert!(rs.in_open_chamber(&QVector::from_ints(&[2, 1])));
        assert!(!rs.in_open_chamber(&QVector::from_ints(&[1, 1])));
    }

    #[test]
    fn b2_walls() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        let walls = rs.walls();
        assert_eq!(walls.len(), 4);
        // x=0, y=0, y=x, y=-x
        let normals: BTreeSet<QVector> = walls.iter().map(|h| h.normal().clone()).collect();
        let expected: BTreeSet<QVector> = [[1, 0], [0, 1], [1, -1], [1, 1]]
            .iter()
            .map(|c| QVector::from_ints(c))
            .collect();
        assert_eq!(normals, expected);
        let on = rs.walls_through(&QVector::from_ints(&[3, 3]));
        assert_eq!(on.len(), 1);
        assert_eq!(rs.positive_roots()[on[0]], QVector::from_ints(&[1, -1]));
    }

    #[test]
    fn unsupported() {
        assert!(RootSystem::build(Family::A, 0).is_err());
        assert!(RootSystem::build(Family::B, 4).is_err());
        assert!(RootSystem::build(Family::Explicit, 2).is_err());
    }

    #[test]
    fn explicit_reproduces_b2() {
        let named = RootSystem::build(Family::B, 2).unwrap();
        let rs = RootSystem::from_roots(named.roots().to_vec()).unwrap();
        assert_eq!(rs.rank(), 2);
        assert_eq!(rs.positive_roots().len(), 4);
        assert_eq!(rs.simple_roots().len(), 2);
    }

    #[test]
    fn explicit_rejects_bad_input() {
        assert!(RootSystem::from_roots(vec![]).is_err());
        assert!(RootSystem::from_roots(vec![QVector::from_ints(&[1, 0])]).is_err());
        assert!(RootSystem::from_roots(vec![
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[-1, 0]),
            QVector::from_ints(&[2, 0]),
            QVector::from_ints(&[-2, 0]),
        ])
        .is_err());
    }
}
