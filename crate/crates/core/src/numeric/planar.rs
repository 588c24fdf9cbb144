//! Floating-point plane geometry for comparing sampled and exact polygons.

use super::NumericError;
use crate::geometry::Polytope;

pub type Point2 = [f64; 2];

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Sum-zero `R³` to the plane by the orthonormal pair
/// `(1,−1,0)/√2, (1,1,−2)/√6`; `R²` is kept as is.
pub fn project_2d(v: &[f64]) -> Result<Point2, NumericError> {
    match v.len() {
        2 => Ok([v[0], v[1]]),
        3 => {
            let sqrt6 = 6f64.sqrt();
            Ok([(v[0] - v[1]) / SQRT2, (v[0] + v[1] - 2.0 * v[2]) / sqrt6])
        }
        d => Err(NumericError::UnsupportedDimension(d)),
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull by monotone chain; collinear points dropped.
/// Degenerate inputs give one or two points.
pub fn hull_points(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 2 {
        // Every point collinear: the two extremes.
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

/// Hull of a sample cloud, required to enclose area.
pub fn approx_hull_2d(points: &[Point2]) -> Result<Vec<Point2>, NumericError> {
    let hull = hull_points(points);
    if hull.len() < 3 {
        return Err(NumericError::Degenerate);
    }
    Ok(hull)
}

/// Projected vertex polygon of an exact polytope; may be a segment or point.
pub fn exact_polygon_2d(p: &Polytope) -> Result<Vec<Point2>, NumericError> {
    let projected = p
        .vertices()
        .iter()
        .map(|v| project_2d(&v.to_f64()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(hull_points(&projected))
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    };
    let q = [a[0] + t * d[0], a[1] + t * d[1]];
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Distance from `p` to the convex polygon with CCW vertices `poly`.
pub fn distance_to_polygon(p: Point2, poly: &[Point2]) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => segment_distance(p, poly[0], poly[0]),
        _ => {
            let n = poly.len();
            if n >= 3 && (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0.0) {
                return 0.0;
            }
            (0..n)
                .map(|i| segment_distance(p, poly[i], poly[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Symmetric Hausdorff distance between convex polygons. For convex sets
/// the distance to the other set is convex, so vertices attain it.
pub fn hausdorff_2d(a: &[Point2], b: &[Point2]) -> f64 {
    let one = |x: &[Point2], y: &[Point2]| {
        x.iter()
            .map(|&p| distance_to_polygon(p, y))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

pub fn diameter_2d(poly: &[Point2]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, a) in poly.iter().enumerate() {
        for b in &poly[i + 1..] {
            best = best.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
        }
    }
    best
}
