use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num::{Signed, Zero};

use crate::rational::{int, to_f64, Rational};

/// Exact point of t* (or t) in fixed ambient coordinates.
///
/// Ordering is lexicographic on coordinates; canonical vertex lists are
/// sorted with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    /// Standard basis vector `e_index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = int(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, factor: &Rational) -> QVector {
        QVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Positive rescaling whose first nonzero coordinate has absolute value 1.
    /// Two nonzero vectors span the same ray iff their directions agree.
    pub fn direction(&self) -> Option<QVector> {
        let lead = self.0.iter().find(|c| !c.is_zero())?.abs();
        Some(self.scale(&(int(1) / lead)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl<'a> Add<&'a QVector> for &'a QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a QVector> for &'a QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic() {
        let a = QVector::from_ints(&[1, 2, -3]);
        let b = QVector::new(vec![rat(1, 2), int(0), int(1)]);
        assert_eq!(&a + &b, QVector::new(vec![rat(3, 2), int(2), int(-2)]));
        assert_eq!(&a - &a, QVector::zeros(3));
        assert_eq!(a.dot(&b), rat(-5, 2));
        assert_eq!(a.norm_squared(), int(14));
        assert_eq!(a.sum(), int(0));
    }

    #[test]
    fn direction_is_positive_rescaling() {
        let v = QVector::from_ints(&[0, -3, 6]);
        assert_eq!(v.direction().unwrap(), QVector::from_ints(&[0, -1, 2]));
        assert_eq!(v.scale(&rat(7, 5)).direction(), v.direction());
        assert!(QVector::zeros(2).direction().is_none());
    }

    #[test]
    fn display() {
        let v = QVector::new(vec![rat(2, 3), int(-1)]);
        assert_eq!(v.to_string(), "(2/3, -1)");
    }
}
