use num::complex::Complex64;

use super::NumericError;

pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &[Vec<Complex64>]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                sum += x.norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted descending.
pub fn jacobi_eigenvalues(matrix: &[Vec<Complex64>]) -> Result<Vec<f64>, NumericError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(NumericError::NotSquare);
    }
    // NaN never meets the tolerance; report it the same way.
    if matrix
        .iter()
        .flatten()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(NumericError::NoConvergence);
    }
    let mut a: Vec<Vec<Complex64>> = matrix.to_vec();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOLERANCE {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let off = off_diagonal_norm(&a);
    if !converged && (off.is_nan() || off > JACOBI_TOLERANCE) {
        return Err(NumericError::NoConvergence);
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// `A ← J* A J` with `J` the unitary zeroing `A[p][q]`.
fn rotate(a: &mut [Vec<Complex64>], p: usize, q: usize) {
    let g = a[p][q].norm();
    if g < 1e-300 {
        return;
    }
    let e = a[p][q] / g;
    let tau = (a[q][q].re - a[p][p].re) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ec = e.conj();
    for row in a.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = kp * c - kq * s * ec;
        row[q] = kp * s + kq * c * ec;
    }
    // Callers pass p < q.
    let (low, high) = a.split_at_mut(q);
    for (xp, xq) in low[p].iter_mut().zip(high[0].iter_mut()) {
        let (pk, qk) = (*xp, *xq);
        *xp = pk * c - qk * s * e;
        *xq = pk * s + qk * c * e;
    }
    a[p][q] = Complex64::new(0.0, 0.0);
    a[q][p] = Complex64::new(0.0, 0.0);
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;
}
