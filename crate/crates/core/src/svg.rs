//! Static SVG drawings of constructions. Coordinates are mapped exactly and
//! converted to decimals only when written.

use std::fmt::Write;

use crate::construction::{ConstructionOutput, GroupKind};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

pub const DIGITS: usize = 30;
const CANVAS: i64 = 1000;
const MARGIN: i64 = 40;

#[derive(Clone, Copy, Debug)]
pub struct RenderConfig {
    pub stroke_scale: f64,
    pub labels: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig { stroke_scale: 1.0, labels: true }
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_svg(out: &ConstructionOutput, cfg: &RenderConfig) -> Result<String> {
    let ps = &out.points;
    let size = CANVAS + 2 * MARGIN;
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .expect("write to string");
    if ps.is_empty() {
        svg.push_str("</svg>\n");
        return Ok(svg);
    }
    let mut coords = Vec::with_capacity(ps.len());
    for (i, p) in ps.points().iter().enumerate() {
        let (x, y) = p.xy().map_err(|_| Error::NotAffine(ps.label(i).to_string()))?;
        coords.push((x.clone(), y.clone()));
    }
    let min = |f: fn(&(Scalar, Scalar)) -> &Scalar| coords.iter().map(f).min().expect("non-empty").clone();
    let max = |f: fn(&(Scalar, Scalar)) -> &Scalar| coords.iter().map(f).max().expect("non-empty").clone();
    let (x0, x1) = (min(|c| &c.0), max(|c| &c.0));
    let (y0, y1) = (min(|c| &c.1), max(|c| &c.1));
    let span = std::cmp::max(&x1 - &x0, &y1 - &y0);
    let scale = if span.is_zero() { Scalar::one() } else { &Scalar::from_int(CANVAS) / &span };
    let m = Scalar::from_int(MARGIN);
    let top = &m + &Scalar::from_int(CANVAS);
    let screen: Vec<(String, String)> = coords
        .iter()
        .map(|(x, y)| {
            let sx = &m + &(&(x - &x0) * &scale);
            let sy = &top - &(&(y - &y0) * &scale);
            (sx.to_decimal(DIGITS), sy.to_decimal(DIGITS))
        })
        .collect();
    let w = |base: f64| format!("{}", base * cfg.stroke_scale);

    let mut groups: Vec<_> = out.provenance.groups.iter().collect();
    groups.sort_by_key(|g| (std::cmp::Reverse(g.kind), g.name.clone()));
    for g in groups {
        let mut idx: Vec<usize> = g.members.iter().filter_map(|l| ps.index_of(l).ok()).collect();
        idx.sort_by(|&a, &b| coords[a].cmp(&coords[b]));
        let pts: Vec<String> = idx.iter().map(|&i| format!("{},{}", screen[i].0, screen[i].1)).collect();
        let style = match g.kind {
            GroupKind::Segment | GroupKind::Line => format!("stroke=\"#1f4e79\" stroke-width=\"{}\"", w(1.5)),
            GroupKind::Ray => format!("stroke=\"#7f7f7f\" stroke-width=\"{}\" stroke-dasharray=\"6 4\"", w(1.0)),
            GroupKind::BundleRay => format!("stroke=\"#c55a11\" stroke-width=\"{}\" stroke-opacity=\"0.35\"", w(4.0)),
            GroupKind::Extension => format!("stroke=\"#548235\" stroke-width=\"{}\" stroke-opacity=\"0.35\"", w(3.0)),
        };
        writeln!(
            svg,
            "  <polyline data-group=\"{}\" fill=\"none\" {style} points=\"{}\"/>",
            esc(&g.name),
            pts.join(" ")
        )
        .expect("write to string");
    }
    for (i, (sx, sy)) in screen.iter().enumerate() {
        writeln!(
            svg,
            "  <circle data-label=\"{}\" cx=\"{sx}\" cy=\"{sy}\" r=\"{}\" fill=\"#000000\"/>",
            esc(ps.label(i)),
            w(3.0)
        )
        .expect("write to string");
    }
    if cfg.labels {
        for (i, (sx, sy)) in screen.iter().enumerate() {
            writeln!(
                svg,
                "  <text x=\"{sx}\" y=\"{sy}\" dx=\"4\" dy=\"-4\" font-size=\"10\">{}</text>",
                esc(ps.label(i))
            )
            .expect("write to string");
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
