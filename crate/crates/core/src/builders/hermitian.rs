use num::{Complex, Zero};

use super::BuildError;
use crate::geometry::QVector;
use crate::rational::{int, Rational};

pub type ComplexRational = Complex<Rational>;

/// Factor omitted from every stored moment value. The `SU(n+1)` moment map
/// on `P^n` is `(1/(2πi‖x‖²))(xx* − Tr(xx*)/(n+1)·I)`; identifying
/// anti-Hermitian with Hermitian matrices absorbs the `i`, and this real
/// constant is what remains.
pub const OMITTED_SCALE: f64 = 1.0 / (2.0 * std::f64::consts::PI);

/// Square Hermitian matrix with complex-rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMatrix {
    size: usize,
    entries: Vec<ComplexRational>,
}

impl HermitianMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &ComplexRational {
        &self.entries[i * self.size + j]
    }

    pub fn trace(&self) -> ComplexRational {
        (0..self.size).fold(ComplexRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    /// Real diagonal, i.e. the projection to the torus.
    pub fn diagonal(&self) -> QVector {
        QVector::new((0..self.size).map(|i| self.get(i, i).re.clone()).collect())
    }
}

/// `xx*/‖x‖² − I/(n+1)` for `x ∈ C^{n+1}`, invariant under rescaling `x`.
pub fn su_moment_hat(x: &[ComplexRational]) -> Result<HermitianMatrix, BuildError> {
    let norm: Rational = x.iter().map(|c| c.norm_sqr()).sum();
    if norm.is_zero() {
        return Err(BuildError::ZeroVector);
    }
    let size = x.len();
    let shift = int(1) / int(size as i64);
    let mut entries = Vec::with_capacity(size * size);
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let mut e = (xi * xj.conj()).unscale(norm.clone());
            if i == j {
                e.re -= &shift;
            }
            entries.push(e);
        }
    }
    Ok(HermitianMatrix { size, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(re: i64, im: i64) -> ComplexRational {
        Complex::new(int(re), int(im))
    }

    #[test]
    fn coordinate_lines() {
        let m = su_moment_hat(&[c(1, 0), c(0, 0), c(0, 0)]).unwrap();
        assert_eq!(
            m.diagonal(),
            QVector::new(vec![rat(2, 3), rat(-1, 3), rat(-1, 3)])
        );
        let m = su_moment_hat(&[c(0, 0), c(0, 5), c(0, 0)]).unwrap();
        assert_eq!(
            m.diagonal(),
            QVector::new(vec![rat(-1, 3), rat(2, 3), rat(-1, 3)])
        );
    }

    #[test]
    fn balanced_vector_has_zero_diagonal() {
        let m = su_moment_hat(&[c(2, 0), c(2, 0), c(2, 0)]).unwrap();
        assert!(m.diagonal().is_zero());
        assert_eq!(*m.get(0, 1), Complex::new(rat(1, 3), int(0)));
    }

    #[test]
    fn hermitian_traceless_and_scale_invariant() {
        let x = [c(1, 2), c(-3, 1), c(0, 4)];
        let m = su_moment_hat(&x).unwrap();
        assert!(m.is_hermitian());
        assert!(m.trace().is_zero());
        let lambda = c(2, -7);
        let y: Vec<ComplexRational> = x.iter().map(|v| v * &lambda).collect();
        assert_eq!(su_moment_hat(&y).unwrap(), m);
        assert!(matches!(
            su_moment_hat(&[c(0, 0), c(0, 0)]),
            Err(BuildError::ZeroVector)
        ));
    }
}
