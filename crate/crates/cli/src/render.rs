use branchloci_core::disc::{geodesic_through, Geodesic};
use branchloci_core::fnpipe::{branch_locus_point, FixedPoint, SeamTarget};
use branchloci_core::{DiscPoint, EmbeddedPolygon, PantsDecomposition};
use std::fmt::Write;

pub const MIN_SIZE: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Polygon,
    #[value(name = "polygon+pants")]
    PolygonPants,
    #[value(name = "locus-plot")]
    LocusPlot,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub what: What,
    pub size: u32,
    pub labels: bool,
    pub stroke: f64,
}

impl RenderSpec {
    pub fn check(&self) -> Result<(), String> {
        if self.size < MIN_SIZE {
            return Err(format!(
                "image size {} is below the minimum {MIN_SIZE}",
                self.size
            ));
        }
        if !(self.stroke.is_finite() && self.stroke > 0.0) {
            return Err(format!("stroke width {} must be positive", self.stroke));
        }
        Ok(())
    }
}

struct Canvas {
    size: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(size: u32) -> Self {
        let size = size as f64;
        Canvas {
            size,
            scale: size / 2.0 * 0.95,
            body: String::new(),
        }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.size / 2.0 + x * self.scale,
            self.size / 2.0 - y * self.scale,
        )
    }

    /// Geodesic segment as a true circular arc, or a line when it lies on a
    /// diameter or is shorter than a pixel.
    fn segment_path(&self, p: DiscPoint, q: DiscPoint) -> String {
        let (x1, y1) = self.px(p.x, p.y);
        let (x2, y2) = self.px(q.x, q.y);
        let short = p.euclidean_distance(q) * self.scale < 1.0;
        match geodesic_through(p, q) {
            Ok(Geodesic::Arc { a, b, rho }) if !short => {
                let cross = (p.x - a) * (q.y - b) - (p.y - b) * (q.x - a);
                let sweep = if cross > 0.0 { 0 } else { 1 };
                format!(
                    "M {x1:.3} {y1:.3} A {r:.3} {r:.3} 0 0 {sweep} {x2:.3} {y2:.3}",
                    r = rho * self.scale
                )
            }
            _ => format!("M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}"),
        }
    }

    fn label(&mut self, p: DiscPoint, text: &str, class: &str) {
        let (x, y) = self.px(p.x, p.y);
        let _ = writeln!(
            self.body,
            r#"<text class="label {class}" x="{:.3}" y="{:.3}">{text}</text>"#,
            x + 3.0,
            y - 3.0
        );
    }

    fn finish(self, stroke: f64) -> String {
        let s = self.size;
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
                "\n<style>path {{ fill: none; stroke-width: {w}; }} .side {{ stroke: black; }} ",
                ".pants-curve path {{ stroke: #c03; }} .seam {{ stroke: #36c; stroke-dasharray: 4 3; }} ",
                ".boundary {{ fill: none; stroke: #888; }} .label {{ font: 10px sans-serif; }}</style>\n",
                "{body}</svg>\n"
            ),
            s = s,
            w = stroke,
            body = self.body
        )
    }
}

fn draw_polygon(c: &mut Canvas, e: &EmbeddedPolygon, labels: bool) {
    let (cx, cy) = c.px(0.0, 0.0);
    let _ = writeln!(
        c.body,
        r#"<circle class="boundary" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}"/>"#,
        c.scale
    );
    for i in 0..e.k() {
        let (a, b) = e.side(i);
        let d = c.segment_path(a, b);
        let _ = writeln!(c.body, r#"<path class="side" data-side="{i}" d="{d}"/>"#);
    }
    if labels {
        for (j, m) in e.midpoints.iter().enumerate() {
            c.label(*m, &format!("M{}", j + 1), "midpoint");
        }
    }
}

fn draw_pants(c: &mut Canvas, e: &EmbeddedPolygon, pd: &PantsDecomposition, labels: bool) {
    for (i, curve) in pd.curves.iter().enumerate() {
        let _ = writeln!(c.body, r#"<g class="pants-curve" data-curve="{}">"#, i + 1);
        for (p, q) in curve.points(e) {
            let d = c.segment_path(p, q);
            let _ = writeln!(c.body, r#"<path d="{d}"/>"#);
        }
        c.body.push_str("</g>\n");
    }
    // perpendicular feet of the seams: Q on the pants curve, P on the target
    let mut index = 0;
    for seam in &pd.seams {
        let curve = &pd.curves[seam.curve];
        for foot in &seam.feet {
            let Some(seg) = curve.segments.get(foot.segment) else {
                continue;
            };
            let target = match foot.target {
                SeamTarget::Segment { curve, segment } => pd
                    .curves
                    .get(curve)
                    .and_then(|c| c.segments.get(segment))
                    .map(|s| (s.from.point(e), s.to.point(e))),
                SeamTarget::Through { from, to } => Some((from.point(e), to.point(e))),
            };
            let Some((ta, tb)) = target else { continue };
            let (Ok(g1), Ok(g2)) = (
                geodesic_through(seg.from.point(e), seg.to.point(e)),
                geodesic_through(ta, tb),
            ) else {
                continue;
            };
            if let Ok((_, q, p)) = branchloci_core::disc::common_perpendicular(&g1, &g2) {
                index += 1;
                let d = c.segment_path(q, p);
                let _ = writeln!(c.body, r#"<path class="seam" d="{d}"/>"#);
                if labels {
                    c.label(q, &format!("Q{index}"), "foot");
                    c.label(p, &format!("P{index}"), "foot");
                }
            }
        }
    }
}

pub fn polygon_svg(spec: &RenderSpec, e: &EmbeddedPolygon) -> String {
    let mut c = Canvas::new(spec.size);
    draw_polygon(&mut c, e, spec.labels);
    c.finish(spec.stroke)
}

pub fn pants_svg(spec: &RenderSpec, fp: &FixedPoint) -> String {
    let mut c = Canvas::new(spec.size);
    draw_polygon(&mut c, &fp.polygon, spec.labels);
    draw_pants(&mut c, &fp.polygon, &fp.pants, spec.labels);
    c.finish(spec.stroke)
}

/// `γ1`, `γ2` and `t` against `s` at each sampled `α`, one polyline per
/// quantity and angle.
pub fn locus_svg(
    spec: &RenderSpec,
    alphas: &[f64],
    s_range: (f64, f64),
    steps: usize,
) -> Option<String> {
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for &alpha in alphas {
        let mut curves: [Vec<(f64, f64)>; 3] = Default::default();
        for j in 0..steps.max(2) {
            let s = s_range.0 + (s_range.1 - s_range.0) * j as f64 / (steps.max(2) - 1) as f64;
            if let Ok(p) = branch_locus_point(alpha, s) {
                curves[0].push((s, p.gamma1()));
                curves[1].push((s, p.gamma2()));
                curves[2].push((s, p.t()));
            }
        }
        for (name, pts) in ["gamma1", "gamma2", "t"].into_iter().zip(curves) {
            if pts.len() > 1 {
                series.push((format!("{name} alpha={alpha:.4}"), pts));
            }
        }
    }
    if series.is_empty() {
        return None;
    }
    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let size = spec.size as f64;
    let margin = size * 0.08;
    let sx = |x: f64| margin + (x - x0) / (x1 - x0).max(1e-12) * (size - 2.0 * margin);
    let sy = |y: f64| size - margin - (y - y0) / (y1 - y0).max(1e-12) * (size - 2.0 * margin);
    let mut body = String::new();
    let _ = writeln!(
        body,
        r#"<rect class="axes" x="{margin:.3}" y="{margin:.3}" width="{w:.3}" height="{w:.3}" fill="none" stroke="black"/>"#,
        w = size - 2.0 * margin
    );
    for (name, pts) in &series {
        let d: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            body,
            r#"<polyline class="locus" data-series="{name}" fill="none" stroke="black" stroke-width="{}" points="{}"/>"#,
            spec.stroke,
            d.join(" ")
        );
    }
    if spec.labels {
        let _ = writeln!(
            body,
            r#"<text class="label" x="{margin:.3}" y="{:.3}">s from {x0:.3} to {x1:.3}; values from {y0:.3} to {y1:.3}</text>"#,
            size - margin / 3.0
        );
    }
    Some(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n{body}</svg>\n"
    ))
}
