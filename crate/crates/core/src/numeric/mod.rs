//! Floating-point sampling oracle for the two `SU(3)` actions on `P² × P²`.
//!
//! Points are drawn from the unitarily invariant measure, pushed through the
//! moment map, and compared with the exact polytopes: torus values must lie
//! in the hull of the fixed images, and sample hulls must approach it.

mod jacobi;
mod planar;

use std::fmt;
use std::str::FromStr;

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::builders::{su3_natural, su3_natural_kirwan, su3_skew, su3_skew_kirwan, BuildError};
use crate::geometry::Polytope;
use crate::model::ModelError;
use crate::rational::{to_f64, Rational};

pub use jacobi::{jacobi_eigenvalues, JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE};
pub use planar::{
    approx_hull_2d, diameter_2d, distance_to_polygon, exact_polygon_2d, hausdorff_2d, hull_points,
    project_2d, Point2,
};

/// Samples per independent random stream. Fixed so that results do not
/// depend on how many workers run.
pub const CHUNK_SIZE: usize = 4096;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")]
    NoConvergence,
    #[error("matrix is not square")]
    NotSquare,
    #[error("sample hull is degenerate")]
    Degenerate,
    #[error("cannot project dimension {0} to the plane")]
    UnsupportedDimension(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// `([x],[y]) ↦ ([Ax],[Ay])`, moment `tμ(x) + sμ(y)`.
    Natural,
    /// `([x],[y]) ↦ ([Ax],[Āy])`, moment `tμ(x) − sμ(ȳ)`.
    Skew,
}

impl FromStr for Action {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "natural" => Ok(Action::Natural),
            "skew" => Ok(Action::Skew),
            other => Err(NumericError::InvalidParameter(format!(
                "unknown action {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Natural => "natural",
            Action::Skew => "skew",
        })
    }
}

fn gaussian_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// Unit vectors in `C^{n+1}` from the unitarily invariant distribution.
pub fn sample_projective(n: usize, seed: u64) -> impl Iterator<Item = Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || gaussian_unit(&mut rng, n + 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

/// `count` points of `P² × P²`; stream `c` of the seed produces samples
/// `c·CHUNK_SIZE ..`.
pub fn sample_pairs(seed: u64, count: usize) -> Vec<SamplePoint> {
    let chunks = count.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK_SIZE.min(count - c * CHUNK_SIZE);
            (0..len)
                .map(|_| {
                    let x = gaussian_unit(&mut rng, 3);
                    let y = gaussian_unit(&mut rng, 3);
                    SamplePoint { x, y }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSample {
    pub mu_hat: Vec<Vec<Complex64>>,
    /// Torus component.
    pub diag: Vec<f64>,
    /// Eigenvalues in decreasing order: the point of the dominant chamber
    /// on the same coadjoint orbit.
    pub dominant: Vec<f64>,
}

fn moment_hat(x: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = x.len();
    let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let shift = if i == j { 1.0 / n as f64 } else { 0.0 };
                    x[i] * x[j].conj() / norm - shift
                })
                .collect()
        })
        .collect()
}

pub fn moment_sample(
    action: Action,
    t: f64,
    s: f64,
    x: &[Complex64],
    y: &[Complex64],
) -> Result<MomentSample, NumericError> {
    if x.len() != y.len() || x.is_empty() {
        return Err(NumericError::InvalidParameter(
            "x and y must share a length".into(),
        ));
    }
    let (second, sign) = match action {
        Action::Natural => (moment_hat(y), 1.0),
        Action::Skew => {
            let conj: Vec<Complex64> = y.iter().map(|c| c.conj()).collect();
            (moment_hat(&conj), -1.0)
        }
    };
    let first = moment_hat(x);
    let mu_hat: Vec<Vec<Complex64>> = first
        .iter()
        .zip(&second)
        .map(|(r1, r2)| {
            r1.iter()
                .zip(r2)
                .map(|(a, b)| a * t + b * (sign * s))
                .collect()
        })
        .collect();
    let diag = (0..mu_hat.len()).map(|i| mu_hat[i][i].re).collect();
    let dominant = jacobi_eigenvalues(&mu_hat)?;
    Ok(MomentSample {
        mu_hat,
        diag,
        dominant,
    })
}

pub fn sample_moments(
    action: Action,
    t: f64,
    s: f64,
    seed: u64,
    count: usize,
) -> Result<Vec<MomentSample>, NumericError> {
    sample_pairs(seed, count)
        .par_iter()
        .map(|p| moment_sample(action, t, s, &p.x, &p.y))
        .collect()
}

/// Floating copy of an exact polytope for tolerance-based membership.
#[derive(Clone, Debug)]
pub struct FloatHull {
    origin: Vec<f64>,
    /// Orthonormal basis of the direction space.
    basis: Vec<Vec<f64>>,
    /// Unit outward normals and offsets.
    facets: Vec<(Vec<f64>, f64)>,
    segment: Option<(Vec<f64>, Vec<f64>)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FloatHull {
    pub fn new(p: &Polytope) -> Self {
        let origin = p.vertices()[0].to_f64();
        let basis = p
            .direction_basis()
            .iter()
            .map(|b| {
                let v = b.to_f64();
                let n = dot(&v, &v).sqrt();
                v.into_iter().map(|c| c / n).collect()
            })
            .collect();
        let facets = p
            .facets()
            .iter()
            .map(|f| {
                let n = f.halfspace.normal().to_f64();
                let len = dot(&n, &n).sqrt();
                (
                    n.into_iter().map(|c| c / len).collect(),
                    to_f64(f.halfspace.offset()) / len,
                )
            })
            .collect();
        let segment =
            (p.affine_rank() == 1).then(|| (p.vertices()[0].to_f64(), p.vertices()[1].to_f64()));
        FloatHull {
            origin,
            basis,
            facets,
            segment,
        }
    }

    /// Closed membership with additive slack `tol` on every constraint.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.origin.len() {
            return false;
        }
        let mut r: Vec<f64> = x.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        for b in &self.basis {
            let c = dot(&r, b);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri -= c * bi;
            }
        }
        if dot(&r, &r).sqrt() > tol {
            return false;
        }
        if let Some((a, b)) = &self.segment {
            let d: Vec<f64> = b.iter().zip(a).map(|(p, q)| p - q).collect();
            let len = dot(&d, &d).sqrt();
            let along = x
                .iter()
                .zip(a)
                .map(|(p, q)| p - q)
                .zip(&d)
                .map(|(u, v)| u * v)
                .sum::<f64>()
                / len;
            return along >= -tol && along <= len + tol;
        }
        self.facets.iter().all(|(n, o)| dot(n, x) - o <= tol)
    }
}

/// Fraction of `points` inside `hull` up to `tol`.
pub fn membership_fraction<P: AsRef<[f64]> + Sync>(hull: &Polytope, points: &[P], tol: f64) -> f64 {
    if points.is_empty() {
        return 1.0;
    }
    let float = FloatHull::new(hull);
    let inside = points
        .par_iter()
        .filter(|p| float.contains(p.as_ref(), tol))
        .count();
    inside as f64 / points.len() as f64
}

fn project_all<'a>(
    points: impl Iterator<Item = &'a Vec<f64>>,
) -> Result<Vec<Point2>, NumericError> {
    points.map(|p| project_2d(p)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingReport {
    pub action: Action,
    pub t: String,
    pub s: String,
    pub seed: u64,
    pub count: usize,
    pub tol: f64,
    pub fraction_inside: f64,
    /// Between the hull of torus values and the hull of fixed images.
    pub hausdorff: f64,
    pub diameter: f64,
    /// Between the hull of dominant values and the exact invariant segment.
    pub kirwan_hausdorff: f64,
    pub kirwan_diameter: f64,
}

impl SamplingReport {
    pub fn relative_hausdorff(&self) -> f64 {
        self.hausdorff / self.diameter
    }
}

/// Samples one action at `(t, s)` and compares with the exact polytopes.
pub fn run_sampling(
    action: Action,
    t: &Rational,
    s: &Rational,
    seed: u64,
    count: usize,
    tol: f64,
) -> Result<SamplingReport, NumericError> {
    if count == 0 {
        return Err(NumericError::InvalidParameter(
            "count must be positive".into(),
        ));
    }
    let (model, kirwan) = match action {
        Action::Natural => (su3_natural(t, s)?, su3_natural_kirwan(t, s)?),
        Action::Skew => (su3_skew(t, s)?, su3_skew_kirwan(t, s)?),
    };
    let hull = model.image_hull()?;
    let samples = sample_moments(action, to_f64(t), to_f64(s), seed, count)?;
    let diags: Vec<Vec<f64>> = samples.iter().map(|m| m.diag.clone()).collect();
    let fraction_inside = membership_fraction(&hull, &diags, tol);
    let exact = exact_polygon_2d(&hull)?;
    let sampled = approx_hull_2d(&project_all(diags.iter())?)?;
    let kirwan_exact = exact_polygon_2d(&kirwan)?;
    let dominant = hull_points(&project_all(samples.iter().map(|m| &m.dominant))?);
    Ok(SamplingReport {
        action,
        t: t.to_string(),
        s: s.to_string(),
        seed,
        count,
        tol,
        fraction_inside,
        hausdorff: hausdorff_2d(&sampled, &exact),
        diameter: diameter_2d(&exact),
        kirwan_hausdorff: hausdorff_2d(&dominant, &kirwan_exact),
        kirwan_diameter: diameter_2d(&kirwan_exact),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e(i: usize) -> Vec<Complex64> {
        (0..3)
            .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
            .collect()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn fixed_point_values() {
        let m = moment_sample(Action::Natural, 1.0, 1.0, &e(0), &e(0)).unwrap();
        let expected = [4.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0];
        assert!(close(&m.diag, &expected, 1e-15));
        assert!(close(&m.dominant, &expected, 1e-12));
        let m = moment_sample(Action::Skew, 0.7, 0.7, &e(0), &e(0)).unwrap();
        assert!(m.mu_hat.iter().flatten().all(|c| c.norm() == 0.0));
        let m = moment_sample(Action::Natural, 2.0, 1.0, &e(0), &e(1)).unwrap();
        assert!(close(&m.diag, &[1.0, 0.0, -1.0], 1e-15));
    }

    #[test]
    fn sampling_is_deterministic_and_unit() {
        let a: Vec<_> = sample_projective(2, 9).take(50).collect();
        let b: Vec<_> = sample_projective(2, 9).take(50).collect();
        assert_eq!(a, b);
        for v in &a {
            let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            assert!((n.sqrt() - 1.0).abs() < 1e-12);
        }
        assert_eq!(sample_pairs(3, 5000), sample_pairs(3, 5000));
        assert_eq!(sample_pairs(3, 5000)[..100], sample_pairs(3, 100)[..]);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    run_sampling(Action::Skew, &int(1), &int(2), 5, 3 * CHUNK_SIZE + 17, 1e-9)
                        .unwrap()
                })
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn membership_controls() {
        let m = su3_natural(&int(1), &int(1)).unwrap();
        let hull = m.image_hull().unwrap();
        let fixed: Vec<Vec<f64>> = m
            .fixed_points()
            .iter()
            .map(|p| p.image().to_f64())
            .collect();
        assert_eq!(membership_fraction(&hull, &fixed, 1e-9), 1.0);
        let shrunk = crate::geometry::convex_hull(
            &hull
                .vertices()
                .iter()
                .map(|v| v.scale(&crate::rational::rat(9, 10)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(membership_fraction(&shrunk, &fixed, 1e-9) < 1.0);
        // Off the sum-zero plane.
        assert_eq!(
            membership_fraction(&hull, &[vec![0.0, 0.0, 1e-6]], 1e-9),
            0.0
        );
    }

    #[test]
    fn exact_vertices_have_zero_hausdorff() {
        let hull = su3_natural(&int(1), &int(1)).unwrap().image_hull().unwrap();
        let exact = exact_polygon_2d(&hull).unwrap();
        let pts: Vec<Vec<f64>> = hull.vertices().iter().map(|v| v.to_f64()).collect();
        let approx = approx_hull_2d(&project_all(pts.iter()).unwrap()).unwrap();
        assert!(hausdorff_2d(&approx, &exact) < 1e-12);
    }

    #[test]
    fn action_names() {
        assert_eq!("skew".parse::<Action>().unwrap(), Action::Skew);
        assert!("other".parse::<Action>().is_err());
        assert_eq!(Action::Natural.to_string(), "natural");
    }
}
