use std::ops::Mul;

use num::{One, Zero};

use super::QVector;
use crate::rational::Rational;

/// Dense square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![Rational::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = Rational::one();
        }
        QMatrix { size, entries }
    }

    /// Builds a matrix from its rows. Panics if the rows are not square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        QMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Orthogonal reflection through the hyperplane normal to `root`.
    pub fn reflection(root: &QVector) -> Self {
        let size = root.dim();
        let scale = Rational::from_integer(2.into()) / root.norm_squared();
        let mut m = Self::identity(size);
        for i in 0..size {
            for j in 0..size {
                m.entries[i * size + j] -= &scale * &root[i] * &root[j];
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.size + col]
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        QMatrix { size: n, entries }
    }

    pub fn apply(&self, v: &QVector) -> QVector {
        assert_eq!(v.dim(), self.size, "dimension mismatch in matrix action");
        let n = self.size;
        QVector::new(
            (0..n)
                .map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    pub fn is_orthogonal(&self) -> bool {
        (self * &self.transpose()).is_identity()
    }
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.size, rhs.size, "dimension mismatch in matrix product");
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((0..n).fold(Rational::zero(), |acc, k| {
                    acc + self.get(i, k) * rhs.get(k, j)
                }));
            }
        }
        QMatrix { size: n, entries }
    }
}
