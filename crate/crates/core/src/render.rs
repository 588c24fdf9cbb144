//! SVG figures of planar moment polytopes.
//!
//! Sum-zero `R³` data is drawn through the same orthonormal projection as
//! the numeric module. Output is byte-stable: coordinates are printed with
//! six decimals and elements follow input order.

use std::fmt::Write;

use thiserror::Error;

use crate::geometry::{Polytope, QVector};
use crate::numeric::{hull_points, project_2d, NumericError, Point2};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 32.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cannot draw {0}-dimensional data in the plane")]
    NotPlanar(usize),
    #[error("nothing to draw")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub polytope: Polytope,
    pub stroke: Stroke,
}

#[derive(Clone, Debug)]
pub struct Marker {
    pub point: QVector,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Figure {
    pub title: Option<String>,
    pub layers: Vec<Layer>,
    pub markers: Vec<Marker>,
    /// Roots whose walls are drawn as lines through the origin.
    pub walls: Vec<QVector>,
}

fn project(v: &QVector) -> Result<Point2, RenderError> {
    project_2d(&v.to_f64()).map_err(|e| match e {
        NumericError::UnsupportedDimension(d) => RenderError::NotPlanar(d),
        _ => RenderError::Empty,
    })
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    center: Point2,
    scale: f64,
    half_extent: f64,
}

impl Frame {
    fn fit(points: &[Point2]) -> Frame {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let half_extent = ((hi[0] - lo[0]).max(hi[1] - lo[1]) / 2.0).max(1e-9);
        Frame {
            center: [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0],
            scale: (SIZE / 2.0 - MARGIN) / half_extent,
            half_extent,
        }
    }

    /// Viewport coordinates, y pointing down.
    fn map(&self, p: Point2) -> Point2 {
        [
            SIZE / 2.0 + (p[0] - self.center[0]) * self.scale,
            SIZE / 2.0 - (p[1] - self.center[1]) * self.scale,
        ]
    }
}

fn coords(frame: &Frame, points: &[Point2]) -> String {
    points
        .iter()
        .map(|&p| {
            let q = frame.map(p);
            format!("{:.6},{:.6}", q[0], q[1])
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG 1.1 document for `figure`.
pub fn render_svg(figure: &Figure) -> Result<String, RenderError> {
    let mut polygons = Vec::with_capacity(figure.layers.len());
    for layer in &figure.layers {
        let pts = layer
            .polytope
            .vertices()
            .iter()
            .map(project)
            .collect::<Result<Vec<_>, _>>()?;
        polygons.push(hull_points(&pts));
    }
    let markers = figure
        .markers
        .iter()
        .map(|m| project(&m.point))
        .collect::<Result<Vec<_>, _>>()?;
    let walls = figure
        .walls
        .iter()
        .map(project)
        .collect::<Result<Vec<_>, _>>()?;
    let all: Vec<Point2> = polygons.iter().flatten().chain(&markers).copied().collect();
    if all.is_empty() {
        return Err(RenderError::Empty);
    }
    let frame = Frame::fit(&all);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    if let Some(title) = &figure.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(
        out,
        r##"<rect x="0.5" y="0.5" width="{:.6}" height="{:.6}" fill="white" stroke="#cccccc"/>"##,
        SIZE - 1.0,
        SIZE - 1.0
    );
    if !walls.is_empty() {
        let _ = writeln!(
            out,
            r##"<g id="walls" stroke="#888888" stroke-width="0.5">"##
        );
        let reach = frame.half_extent * 4.0;
        for beta in &walls {
            let len = (beta[0] * beta[0] + beta[1] * beta[1]).sqrt();
            if len == 0.0 {
                continue;
            }
            // The wall is orthogonal to the root.
            let d = [-beta[1] / len * reach, beta[0] / len * reach];
            let (a, b) = (frame.map([-d[0], -d[1]]), frame.map(d));
            let _ = writeln!(
                out,
                r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
                a[0], a[1], b[0], b[1]
            );
        }
        let _ = writeln!(out, "</g>");
    }
    for (i, (layer, poly)) in figure.layers.iter().zip(&polygons).enumerate() {
        let dash = match layer.stroke {
            Stroke::Solid => "",
            Stroke::Dashed => r#" stroke-dasharray="6,4""#,
        };
        let _ = writeln!(
            out,
            r#"<g id="layer-{i}" fill="none" stroke="black" stroke-width="1.5"{dash}>"#
        );
        match poly.len() {
            0 | 1 => {}
            2 => {
                let _ = writeln!(out, r#"<polyline points="{}"/>"#, coords(&frame, poly));
            }
            _ => {
                let _ = writeln!(out, r#"<polygon points="{}"/>"#, coords(&frame, poly));
            }
        }
        let _ = writeln!(out, "</g>");
    }
    if !markers.is_empty() {
        let _ = writeln!(
            out,
            r#"<g id="fixed-points" fill="black" font-family="sans-serif" font-size="10">"#
        );
        for (m, p) in figure.markers.iter().zip(&markers) {
            let q = frame.map(*p);
            let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="3"/>"#, q[0], q[1]);
            if let Some(label) = &m.label {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.6}" y="{:.6}">{}</text>"#,
                    q[0] + 5.0,
                    q[1] - 5.0,
                    escape(label)
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
