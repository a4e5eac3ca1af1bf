//! Presentation geometry in floating point: curve tracing by marching squares with
//! interval pruning, side polylines, point markers, and SVG output. Nothing here feeds a
//! certificate.

use std::collections::HashMap;

use adjugate_core::adjoint::compute_adjoint;
use adjugate_core::exactalg::sturm::isolate_real_roots;
use adjugate_core::exactalg::{parse_rat, Poly, Rat, UPoly};
use adjugate_core::plane::RatPoint;
use adjugate_core::polycon::{reduce_component, residual_arrangement, select_sides, Locus, Polycon, Side, SideParam};
use adjugate_core::{Error, Result};
use num_traits::ToPrimitive;
use serde::Serialize;

pub type Pt = [f64; 2];

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A rectangle of the affine chart with rational corners.
#[derive(Clone, Debug, PartialEq)]
pub struct Viewport {
    pub x0: Rat,
    pub y0: Rat,
    pub x1: Rat,
    pub y1: Rat,
}

impl Viewport {
    pub fn new(x0: Rat, y0: Rat, x1: Rat, y1: Rat) -> Result<Self> {
        if x1 <= x0 || y1 <= y0 {
            return Err(Error::parse("viewport", "viewport must have positive area"));
        }
        Ok(Viewport { x0, y0, x1, y1 })
    }

    /// `"x0,y0,x1,y1"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::parse("viewport", "expected x0,y0,x1,y1"));
        }
        let v: Vec<Rat> = parts
            .iter()
            .map(|p| parse_rat(p).map_err(|e| Error::parse("viewport", e.to_string())))
            .collect::<Result<_>>()?;
        Viewport::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    /// The bounding box of the vertices, the real residual points and the sides, widened
    /// by a quarter on each side and rounded outwards to eighths.
    pub fn around(p: &Polycon) -> Self {
        let mut pts: Vec<Pt> = p.vertices.iter().filter_map(RatPoint::xy).map(|(x, y)| [f(&x), f(&y)]).collect();
        if let Ok(arr) = residual_arrangement(p) {
            pts.extend(arr.rational_points().iter().filter_map(RatPoint::xy).map(|(x, y)| [f(&x), f(&y)]));
            if let Ok(sel) = select_sides(p, &arr) {
                for s in &sel.sides {
                    pts.extend(sample_side(s, 64).into_iter().flatten());
                }
            }
        }
        // Sides through infinity would make the box unbounded; keep the bulk of the picture.
        let far = 64.0 * pts.iter().take(p.n()).map(|q| q[0].abs().max(q[1].abs())).fold(1.0, f64::max);
        pts.retain(|q| q[0].is_finite() && q[1].is_finite() && q[0].abs().max(q[1].abs()) <= far);
        if pts.is_empty() {
            pts = vec![[-1.0, -1.0], [1.0, 1.0]];
        }
        let lo = |k: usize| pts.iter().map(|q| q[k]).fold(f64::INFINITY, f64::min);
        let hi = |k: usize| pts.iter().map(|q| q[k]).fold(f64::NEG_INFINITY, f64::max);
        let (mx, my) = (((hi(0) - lo(0)) / 4.0).max(0.5), ((hi(1) - lo(1)) / 4.0).max(0.5));
        let eighths = |v: f64, up: bool| {
            let k = if up { (v * 8.0).ceil() } else { (v * 8.0).floor() };
            Rat::new((k as i64).into(), 8.into())
        };
        Viewport {
            x0: eighths(lo(0) - mx, false),
            y0: eighths(lo(1) - my, false),
            x1: eighths(hi(0) + mx, true),
            y1: eighths(hi(1) + my, true),
        }
    }

    pub fn bounds(&self) -> [f64; 4] {
        [f(&self.x0), f(&self.y0), f(&self.x1), f(&self.y1)]
    }

    pub fn describe(&self) -> String {
        use adjugate_core::exactalg::fmt_rat;
        format!("{},{},{},{}", fmt_rat(&self.x0), fmt_rat(&self.y0), fmt_rat(&self.x1), fmt_rat(&self.y1))
    }
}

#[derive(Clone, Copy, Debug)]
struct Iv(f64, f64);

impl Iv {
    fn add(self, o: Iv) -> Iv {
        Iv(self.0 + o.0, self.1 + o.1)
    }
    fn mul(self, o: Iv) -> Iv {
        let c = [self.0 * o.0, self.0 * o.1, self.1 * o.0, self.1 * o.1];
        Iv(c.iter().cloned().fold(f64::INFINITY, f64::min), c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
    }
    fn scale(self, k: f64) -> Iv {
        if k >= 0.0 {
            Iv(self.0 * k, self.1 * k)
        } else {
            Iv(self.1 * k, self.0 * k)
        }
    }
    fn pow(self, n: u32) -> Iv {
        if n == 0 {
            return Iv(1.0, 1.0);
        }
        let (a, b) = (self.0.powi(n as i32), self.1.powi(n as i32));
        if n % 2 == 1 {
            Iv(a, b)
        } else if self.0 <= 0.0 && self.1 >= 0.0 {
            Iv(0.0, a.max(b))
        } else {
            Iv(a.min(b), a.max(b))
        }
    }
    fn has_zero(self) -> bool {
        // Slack for rounding; a false positive only costs a subdivision.
        let eps = 1e-12 * (self.0.abs() + self.1.abs());
        self.0 <= eps && self.1 >= -eps
    }
}

/// A curve in the chart `z = 1`, with float coefficients.
#[derive(Clone, Debug)]
pub struct FloatCurve {
    terms: Vec<(u32, u32, f64)>,
}

impl FloatCurve {
    pub fn new(p: &Poly) -> Self {
        let mut terms: Vec<(u32, u32, f64)> = p.terms().map(|(e, c)| (e[0], e[1], f(c))).collect();
        let scale = terms.iter().map(|t| t.2.abs()).fold(0.0, f64::max);
        if scale > 0.0 {
            for t in &mut terms {
                t.2 /= scale;
            }
        }
        FloatCurve { terms }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|(i, j, c)| c * x.powi(*i as i32) * y.powi(*j as i32)).sum()
    }

    fn eval_box(&self, x: Iv, y: Iv) -> Iv {
        self.terms.iter().fold(Iv(0.0, 0.0), |acc, (i, j, c)| acc.add(x.pow(*i).mul(y.pow(*j)).scale(*c)))
    }
}

const EXTRA_DEPTH: u32 = 3;

/// Cells whose enclosure may contain a zero are split down to `EXTRA_DEPTH`, so that every
/// emitting cell has the same size and neighbours agree on their shared edges.
fn cell_segments(c: &FloatCurve, x0: f64, y0: f64, x1: f64, y1: f64, depth: u32, out: &mut Vec<[Pt; 2]>) {
    if !c.eval_box(Iv(x0, x1), Iv(y0, y1)).has_zero() {
        return;
    }
    if depth < EXTRA_DEPTH {
        let (xm, ym) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        for (a, b, cc, d) in [(x0, y0, xm, ym), (xm, y0, x1, ym), (xm, ym, x1, y1), (x0, ym, xm, y1)] {
            cell_segments(c, a, b, cc, d, depth + 1, out);
        }
        return;
    }
    let v = [c.eval(x0, y0), c.eval(x1, y0), c.eval(x1, y1), c.eval(x0, y1)];
    let pos: Vec<bool> = v.iter().map(|t| *t >= 0.0).collect();
    let corners = [[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
    let cross = |k: usize| -> Pt {
        let (a, b) = (k, (k + 1) % 4);
        let t = v[a] / (v[a] - v[b]);
        [corners[a][0] + t * (corners[b][0] - corners[a][0]), corners[a][1] + t * (corners[b][1] - corners[a][1])]
    };
    let edges: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
    match edges.len() {
        2 => out.push([cross(edges[0]), cross(edges[1])]),
        4 => {
            // Saddle: pair the crossings according to the sign at the centre.
            let centre = c.eval((x0 + x1) / 2.0, (y0 + y1) / 2.0) > 0.0;
            if centre == pos[0] {
                out.push([cross(0), cross(1)]);
                out.push([cross(2), cross(3)]);
            } else {
                out.push([cross(3), cross(0)]);
                out.push([cross(1), cross(2)]);
            }
        }
        _ => {}
    }
}

fn key(p: &Pt) -> (i64, i64) {
    ((p[0] * 1e9).round() as i64, (p[1] * 1e9).round() as i64)
}

/// Joins segments sharing endpoints into polylines.
pub fn chain(segments: &[[Pt; 2]]) -> Vec<Vec<Pt>> {
    let mut at: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, s) in segments.iter().enumerate() {
        at.entry(key(&s[0])).or_default().push(i);
        at.entry(key(&s[1])).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut out = vec![];
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line: std::collections::VecDeque<Pt> = segments[start].iter().cloned().collect();
        for forward in [true, false] {
            loop {
                let end = if forward { *line.back().unwrap() } else { *line.front().unwrap() };
                let next = at.get(&key(&end)).and_then(|v| v.iter().find(|&&i| !used[i]).cloned());
                let Some(i) = next else { break };
                used[i] = true;
                let s = segments[i];
                let other = if key(&s[0]) == key(&end) { s[1] } else { s[0] };
                if forward {
                    line.push_back(other);
                } else {
                    line.push_front(other);
                }
            }
        }
        out.push(line.into_iter().collect());
    }
    out
}

/// Polylines of `V(p)` inside the viewport on a `res x res` grid, cells refined where the
/// interval enclosure cannot exclude a zero but the corner signs agree.
pub fn trace(p: &Poly, vp: &Viewport, res: usize) -> Vec<Vec<Pt>> {
    if p.degree() == 0 {
        return vec![];
    }
    let c = FloatCurve::new(p);
    let [x0, y0, x1, y1] = vp.bounds();
    let (dx, dy) = ((x1 - x0) / res as f64, (y1 - y0) / res as f64);
    let mut segs = vec![];
    for i in 0..res {
        for j in 0..res {
            let (a, b) = (x0 + i as f64 * dx, y0 + j as f64 * dy);
            cell_segments(&c, a, b, a + dx, b + dy, 0, &mut segs);
        }
    }
    chain(&segs)
}

fn upoly_f64(p: &UPoly, t: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * t + f(c))
}

fn backward_f64(param: &SideParam, s: [f64; 2]) -> [f64; 3] {
    match param {
        SideParam::Conic(pi) => {
            let d = [-s[1], s[0], 0.0];
            let cd = pi.conic.eval_f64(d);
            let b: Vec<f64> = pi.base.coords().iter().map(f).collect();
            let g: Vec<f64> = pi.conic.gradient().iter().map(|gi| f(&gi.eval(pi.base.coords()))).collect();
            let gd: f64 = (0..3).map(|i| g[i] * d[i]).sum();
            std::array::from_fn(|i| cd * b[i] - gd * d[i])
        }
        SideParam::Line { a, b } => std::array::from_fn(|i| s[0] * f(&a[i]) + s[1] * f(&b[i])),
    }
}

/// Samples of the open arc of a side, split where it passes through infinity.
pub fn sample_side(side: &Side, n: usize) -> Vec<Vec<Pt>> {
    let p1 = [f(&side.p1[0]), f(&side.p1[1])];
    let p2 = [f(&side.p2[0]), f(&side.p2[1])];
    let dir = -(side.sigma as f64);
    let mut out: Vec<Vec<Pt>> = vec![];
    let mut cur: Vec<Pt> = vec![];
    for k in 0..=n {
        // lambda runs over (0, +-inf) through tan; the two ends are the vertices.
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / n as f64;
        let (s, c) = theta.sin_cos();
        let s2 = [c * p1[0] + dir * s * p2[0], c * p1[1] + dir * s * p2[1]];
        let q = backward_f64(&side.param, s2);
        let scale = q.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if scale == 0.0 || q[2].abs() < 1e-9 * scale {
            if cur.len() > 1 {
                out.push(std::mem::take(&mut cur));
            }
            cur.clear();
            continue;
        }
        cur.push([q[0] / q[2], q[1] / q[2]]);
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Marker {
    pub label: String,
    /// Exact coordinates when rational, otherwise a description of the block.
    pub exact: String,
    pub render: Pt,
}

fn rational_marker(label: String, p: &RatPoint) -> Option<Marker> {
    let (x, y) = p.xy()?;
    Some(Marker { label, exact: p.to_string(), render: [f(&x), f(&y)] })
}

#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub name: String,
    pub polylines: Vec<Vec<Pt>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub markers: Vec<Marker>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerKind {
    Boundary,
    Sides,
    Adjoint,
    ResidualPoints,
    Vertices,
    ReducedLine,
    ReducedAdjoint,
}

impl LayerKind {
    pub const ALL: [LayerKind; 7] = [
        LayerKind::Boundary,
        LayerKind::Sides,
        LayerKind::Adjoint,
        LayerKind::ResidualPoints,
        LayerKind::Vertices,
        LayerKind::ReducedLine,
        LayerKind::ReducedAdjoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LayerKind::Boundary => "boundary",
            LayerKind::Sides => "sides",
            LayerKind::Adjoint => "adjoint",
            LayerKind::ResidualPoints => "residual-points",
            LayerKind::Vertices => "vertices",
            LayerKind::ReducedLine => "reduced-line",
            LayerKind::ReducedAdjoint => "reduced-adjoint",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        LayerKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse("layers", format!("unknown layer {s:?}")))
    }
}

/// What to draw: a viewport, a grid resolution, and layers. `reduce` selects the
/// component replaced by a line for the reduced layers.
#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub viewport: Viewport,
    pub resolution: usize,
    pub layers: Vec<LayerKind>,
    pub reduce: usize,
}

impl RenderSpec {
    pub fn new(viewport: Viewport, resolution: usize, layers: Vec<LayerKind>) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::parse("resolution", "resolution must be at least 16"));
        }
        Ok(RenderSpec { viewport, resolution, layers, reduce: 0 })
    }

    pub fn default_for(p: &Polycon) -> Self {
        RenderSpec {
            viewport: Viewport::around(p),
            resolution: 64,
            layers: vec![
                LayerKind::Boundary,
                LayerKind::Sides,
                LayerKind::Adjoint,
                LayerKind::ResidualPoints,
                LayerKind::Vertices,
            ],
            reduce: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Scene {
    pub precision: &'static str,
    pub certified: bool,
    pub viewport: [f64; 4],
    pub layers: Vec<Layer>,
    /// The adjoint is the line at infinity, a constant, or otherwise not drawable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint_note: Option<String>,
}

fn block_markers(label: &str, b: &adjugate_core::plane::Block) -> Vec<Marker> {
    isolate_real_roots(&b.shape)
        .iter()
        .filter_map(|r| {
            let t = r.to_f64();
            let c: Vec<f64> = b.coords.iter().map(|u| upoly_f64(u, t)).collect();
            (c[2].abs() > 1e-12).then(|| Marker {
                label: label.to_string(),
                exact: b.describe(),
                render: [c[0] / c[2], c[1] / c[2]],
            })
        })
        .collect()
}

pub fn scene(p: &Polycon, spec: &RenderSpec) -> Result<Scene> {
    let vp = &spec.viewport;
    let mut layers = vec![];
    let mut adjoint_note = None;
    for &kind in &spec.layers {
        let mut layer = Layer { name: kind.name().into(), polylines: vec![], markers: vec![] };
        match kind {
            LayerKind::Boundary => {
                for c in &p.components {
                    layer.polylines.extend(trace(c, vp, spec.resolution));
                }
            }
            LayerKind::Sides => {
                let arr = residual_arrangement(p)?;
                if let Ok(sel) = select_sides(p, &arr) {
                    for s in &sel.sides {
                        layer.polylines.extend(sample_side(s, 256));
                    }
                }
            }
            LayerKind::Adjoint => {
                let a = compute_adjoint(p, true)?.poly;
                if a.degree() == 0 {
                    adjoint_note = Some("adjoint is a nonzero constant".into());
                } else if a.dehomogenize().degree() == 0 {
                    adjoint_note = Some("adjoint is supported on the line at infinity".into());
                }
                layer.polylines = trace(&a, vp, spec.resolution);
            }
            LayerKind::ResidualPoints => {
                let arr = residual_arrangement(p)?;
                for (k, rp) in arr.points.iter().enumerate() {
                    let label = format!("R{}", k + 1);
                    match &rp.locus {
                        Locus::Rational(q) => layer.markers.extend(rational_marker(label, q)),
                        Locus::Block(b) => layer.markers.extend(block_markers(&label, b)),
                    }
                }
            }
            LayerKind::Vertices => {
                for (i, v) in p.vertices.iter().enumerate() {
                    let label = format!("v{}{}", i + 1, p.next(i) + 1);
                    layer.markers.extend(rational_marker(label, v));
                }
            }
            LayerKind::ReducedLine | LayerKind::ReducedAdjoint => {
                let red = reduce_component(p, spec.reduce)?;
                let curve = if kind == LayerKind::ReducedLine {
                    red.components[spec.reduce].clone()
                } else {
                    compute_adjoint(&red, true)?.poly
                };
                layer.polylines = trace(&curve, vp, spec.resolution);
            }
        }
        layers.push(layer);
    }
    Ok(Scene { precision: "render", certified: false, viewport: vp.bounds(), layers, adjoint_note })
}

fn colour(name: &str) -> &'static str {
    match name {
        "boundary" => "#9a9a9a",
        "sides" => "#1f4e9c",
        "adjoint" => "#c0392b",
        "residual-points" => "#2e8b57",
        "vertices" => "#111111",
        "reduced-line" => "#8e44ad",
        _ => "#d68910",
    }
}

/// The scene as an SVG document of `size x size` pixels, y pointing up.
pub fn svg(scene: &Scene, size: usize) -> String {
    let [x0, y0, x1, y1] = scene.viewport;
    let s = size as f64;
    let tx = |p: &Pt| ((p[0] - x0) / (x1 - x0) * s, (y1 - p[1]) / (y1 - y0) * s);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for layer in &scene.layers {
        let col = colour(&layer.name);
        let width = if layer.name == "sides" { 2.5 } else { 1.2 };
        out.push_str(&format!("<g id=\"{}\" fill=\"none\" stroke=\"{col}\" stroke-width=\"{width}\">\n", layer.name));
        for line in &layer.polylines {
            let pts: Vec<String> = line
                .iter()
                .map(|p| {
                    let (a, b) = tx(p);
                    format!("{a:.2},{b:.2}")
                })
                .collect();
            out.push_str(&format!("<polyline points=\"{}\"/>\n", pts.join(" ")));
        }
        for m in &layer.markers {
            let (a, b) = tx(&m.render);
            out.push_str(&format!(
                "<circle cx=\"{a:.2}\" cy=\"{b:.2}\" r=\"3\" fill=\"{col}\"><title>{} {}</title></circle>\n",
                m.label, m.exact
            ));
        }
        out.push_str("</g>\n");
    }
    if let Some(n) = &scene.adjoint_note {
        out.push_str(&format!("<text x=\"6\" y=\"16\" font-size=\"12\" fill=\"#c0392b\">{n}</text>\n"));
    }
    out.push_str("</svg>\n");
    out
}
