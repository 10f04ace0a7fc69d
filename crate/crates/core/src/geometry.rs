//! The actual curve of a Tangle.
//!
//! A dual graph is turned into its Fleron polyomino, whose cells have side
//! `√2·r`. The corners of each cell lie on the circle of radius `r` about its
//! centre, at the intercardinal points. Walking the polyomino boundary
//! counterclockwise, every unit side becomes one quarter circle through its two
//! corners: about the cell's own centre for a vertex cell (convex), about the
//! centre of the empty cell across the side for an edge cell (concave).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;

use thiserror::Error;

use crate::dualgraph::{DualGraph, GraphError};
use crate::grid::{GridPoint, LatticeEdge};
use crate::polyomino::fleron_polyomino;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("arc radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("invalid dual graph: {0}")]
    InvalidGraph(#[from] GraphError),
    #[error("curve is not closed (gap {0:e} after arc {1})")]
    OpenCurve(f64, usize),
}

/// Absolute tolerance, per unit of radius, for positions and tangent angles.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    /// Arc radius; curvature is `1/r` and adjacent dual vertices sit `2√2·r` apart.
    pub radius: f64,
    /// Stroke width as a multiple of `r`.
    pub stroke: f64,
    /// Blank border around the drawing as a multiple of `r`.
    pub margin: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { radius: 1.0, stroke: 0.2, margin: 0.5 }
    }
}

impl GeometryConfig {
    pub fn with_radius(radius: f64) -> Result<Self, GeometryError> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        Ok(GeometryConfig { radius, ..Default::default() })
    }

    /// Side of a Fleron cell in world units.
    pub fn cell_side(&self) -> f64 {
        SQRT_2 * self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Turns left (counterclockwise about its centre); centre inside the curve.
    Convex,
    /// Turns right; centre outside the curve.
    Concave,
}

/// One link: a quarter circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    /// Centre on the doubled lattice: even/even for vertex circles, odd/odd otherwise.
    pub center_cell: GridPoint,
    pub center: (f64, f64),
    pub radius: f64,
    /// Degrees, one of 45, 135, 225, 315.
    pub start_angle: f64,
    /// `start_angle ± 90` (not reduced mod 360).
    pub end_angle: f64,
    pub orientation: Orientation,
}

impl Arc {
    fn point_at(&self, deg: f64) -> (f64, f64) {
        let t = deg.to_radians();
        (self.center.0 + self.radius * t.cos(), self.center.1 + self.radius * t.sin())
    }

    pub fn start_point(&self) -> (f64, f64) {
        self.point_at(self.start_angle)
    }

    pub fn end_point(&self) -> (f64, f64) {
        self.point_at(self.end_angle)
    }

    /// Signed sweep in radians.
    pub fn sweep(&self) -> f64 {
        (self.end_angle - self.start_angle).to_radians()
    }

    pub fn length(&self) -> f64 {
        self.sweep().abs() * self.radius
    }

    /// Unit tangent in the direction of travel.
    fn tangent_at(&self, deg: f64) -> (f64, f64) {
        let t = deg.to_radians();
        let s = self.sweep().signum();
        (-s * t.sin(), s * t.cos())
    }

    pub fn start_tangent(&self) -> (f64, f64) {
        self.tangent_at(self.start_angle)
    }

    pub fn end_tangent(&self) -> (f64, f64) {
        self.tangent_at(self.end_angle)
    }

    /// Whether the direction at `deg` (degrees) lies on the arc, within `tol` degrees.
    fn covers_angle(&self, deg: f64, tol: f64) -> bool {
        let (lo, hi) = if self.end_angle >= self.start_angle {
            (self.start_angle, self.end_angle)
        } else {
            (self.end_angle, self.start_angle)
        };
        let d = (deg - lo).rem_euclid(360.0);
        d <= hi - lo + tol || d >= 360.0 - tol
    }

    /// `∫ (x dy − y dx)` along the arc.
    fn green_integral(&self) -> f64 {
        let (a, b) = (self.start_angle.to_radians(), self.end_angle.to_radians());
        let (cx, cy) = self.center;
        let r = self.radius;
        r * cx * (b.sin() - a.sin()) - r * cy * (b.cos() - a.cos()) + r * r * (b - a)
    }
}

/// Closed curve of quarter arcs, in travel order (counterclockwise overall).
#[derive(Debug, Clone, PartialEq)]
pub struct TangleCurve {
    pub arcs: Vec<Arc>,
    pub graph: DualGraph,
}

impl TangleCurve {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn convex_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.orientation == Orientation::Convex).count()
    }

    pub fn concave_count(&self) -> usize {
        self.arcs.len() - self.convex_count()
    }

    pub fn length(&self) -> f64 {
        self.arcs.iter().map(Arc::length).sum()
    }

    pub fn radius(&self) -> f64 {
        self.arcs.first().map_or(0.0, |a| a.radius)
    }
}

/// Corner of doubled-lattice cells: corner `(i, j)` is the lower-left corner of cell `(i, j)`.
type Corner = (i32, i32);

/// Traces the Tangle whose dual graph is `g`.
pub fn trace(g: &DualGraph, cfg: &GeometryConfig) -> Result<TangleCurve, GeometryError> {
    if !cfg.radius.is_finite() || cfg.radius <= 0.0 {
        return Err(GeometryError::NonPositiveRadius(cfg.radius));
    }
    let poly = fleron_polyomino(g);
    // boundary sides keyed by start corner, each with its cell and end corner
    let mut sides: BTreeMap<Corner, (GridPoint, Corner)> = BTreeMap::new();
    for c in poly.cells() {
        let (x, y) = (c.x, c.y);
        let candidates = [
            ((0, -1), (x, y), (x + 1, y)),
            ((1, 0), (x + 1, y), (x + 1, y + 1)),
            ((0, 1), (x + 1, y + 1), (x, y + 1)),
            ((-1, 0), (x, y + 1), (x, y)),
        ];
        for ((dx, dy), from, to) in candidates {
            if !poly.contains(c.offset(dx, dy)) {
                let clash = sides.insert(from, (c, to));
                debug_assert!(clash.is_none(), "Fleron polyominoes have no pinch points");
            }
        }
    }

    let side = cfg.cell_side();
    let world = |p: GridPoint| (p.x as f64 * side, p.y as f64 * side);
    let (&start, _) = sides.iter().next().expect("a polyomino has a boundary");
    let mut arcs = Vec::with_capacity(sides.len());
    let mut at = start;
    loop {
        let (cell, to) = sides[&at];
        let across = GridPoint::new(cell.x + (to.1 - at.1), cell.y - (to.0 - at.0));
        let (center_cell, orientation) = match (cell.x & 1, cell.y & 1) {
            (0, 0) => (cell, Orientation::Convex),
            (1, 1) => unreachable!("square cells are interior"),
            _ => (across, Orientation::Concave),
        };
        // corner (i, j) sits at cell coordinates (i - 1/2, j - 1/2)
        let quadrant = |p: Corner| {
            let (sx, sy) = (2 * p.0 - 1 - 2 * center_cell.x, 2 * p.1 - 1 - 2 * center_cell.y);
            match (sx > 0, sy > 0) {
                (true, true) => 45.0_f64,
                (false, true) => 135.0,
                (false, false) => 225.0,
                (true, false) => 315.0,
            }
        };
        let start_angle = quadrant(at);
        let sweep = match orientation {
            Orientation::Convex => 90.0,
            Orientation::Concave => -90.0,
        };
        debug_assert_eq!((start_angle + sweep).rem_euclid(360.0), quadrant(to));
        arcs.push(Arc {
            center_cell,
            center: world(center_cell),
            radius: cfg.radius,
            start_angle,
            end_angle: start_angle + sweep,
            orientation,
        });
        at = to;
        if at == start {
            break;
        }
    }
    debug_assert_eq!(arcs.len(), sides.len(), "boundary is a single cycle");
    Ok(TangleCurve { arcs, graph: g.clone() })
}

/// Validates the edges, then traces.
pub fn trace_edges(edges: &[LatticeEdge], cfg: &GeometryConfig) -> Result<TangleCurve, GeometryError> {
    let g = DualGraph::new(edges.iter().copied())?;
    trace(&g, cfg)
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Largest gap between the end of one arc and the start of the next, with its index.
fn closure_gap(curve: &TangleCurve) -> (f64, usize) {
    let n = curve.arcs.len();
    (0..n)
        .map(|i| (dist(curve.arcs[i].end_point(), curve.arcs[(i + 1) % n].start_point()), i))
        .fold((0.0, 0), |best, x| if x.0 > best.0 { x } else { best })
}

/// Enclosed signed area by Green's theorem, integrated exactly over each arc;
/// positive for counterclockwise curves.
pub fn numeric_area(curve: &TangleCurve) -> Result<f64, GeometryError> {
    let tol = TOLERANCE * curve.radius().max(1.0);
    let (gap, at) = closure_gap(curve);
    if curve.arcs.is_empty() || gap > tol {
        return Err(GeometryError::OpenCurve(gap, at));
    }
    Ok(0.5 * curve.arcs.iter().map(Arc::green_integral).sum::<f64>())
}

/// Outcome of [`check_smooth_simple`].
#[derive(Debug, Clone, PartialEq)]
pub struct CurveReport {
    pub arcs: usize,
    pub convex: usize,
    pub concave: usize,
    pub max_gap: f64,
    /// Largest angle (radians) between the tangents meeting at a joint.
    pub max_tangent_error: f64,
    /// Pairs of arcs that meet somewhere other than their shared joint.
    pub crossings: Vec<(usize, usize)>,
    /// Joints not at an intercardinal point of their circles.
    pub off_grid_joints: usize,
}

impl CurveReport {
    pub fn closed(&self) -> bool {
        self.max_gap <= TOLERANCE
    }

    pub fn smooth(&self) -> bool {
        self.max_tangent_error < TOLERANCE
    }

    pub fn simple(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Total turning is one full turn.
    pub fn turning_ok(&self) -> bool {
        self.convex == self.concave + 4
    }

    pub fn passes(&self) -> bool {
        self.closed() && self.smooth() && self.simple() && self.turning_ok() && self.off_grid_joints == 0
    }
}

/// Intersection points of two circles of equal radius `r`.
fn circle_hits(a: (f64, f64), b: (f64, f64), r: f64, tol: f64) -> Vec<(f64, f64)> {
    let d = dist(a, b);
    if d < tol || d > 2.0 * r + tol {
        return Vec::new();
    }
    let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    let h2 = r * r - d * d / 4.0;
    if h2 <= tol * r {
        return vec![mid];
    }
    let h = h2.sqrt();
    let (ux, uy) = ((b.0 - a.0) / d, (b.1 - a.1) / d);
    vec![(mid.0 - uy * h, mid.1 + ux * h), (mid.0 + uy * h, mid.1 - ux * h)]
}

fn angle_deg(center: (f64, f64), p: (f64, f64)) -> f64 {
    (p.1 - center.1).atan2(p.0 - center.0).to_degrees()
}

/// Checks closure, tangent continuity at every joint and that no two arcs meet
/// except consecutive arcs at their joint. Positions are compared with a
/// tolerance of `1e-9·r`; normalised distances are reported.
pub fn check_smooth_simple(curve: &TangleCurve) -> CurveReport {
    let n = curve.arcs.len();
    let r = curve.radius().max(f64::MIN_POSITIVE);
    let tol = TOLERANCE * r;
    let (gap, _) = if n == 0 { (f64::INFINITY, 0) } else { closure_gap(curve) };

    let mut max_tangent_error: f64 = 0.0;
    let mut off_grid_joints = 0;
    for i in 0..n {
        let (a, b) = (&curve.arcs[i], &curve.arcs[(i + 1) % n]);
        let (t0, t1) = (a.end_tangent(), b.start_tangent());
        let cross = t0.0 * t1.1 - t0.1 * t1.0;
        let dot = t0.0 * t1.0 + t0.1 * t1.1;
        max_tangent_error = max_tangent_error.max(cross.atan2(dot).abs());
        for ang in [a.start_angle, a.end_angle] {
            if ((ang - 45.0).rem_euclid(90.0)).min(90.0 - (ang - 45.0).rem_euclid(90.0)) > 1e-9 {
                off_grid_joints += 1;
            }
        }
    }

    let mut crossings = Vec::new();
    let deg_tol = 1e-6;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&curve.arcs[i], &curve.arcs[j]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            // the joint two consecutive arcs legitimately share
            let joint = if j == i + 1 { Some(a.end_point()) } else if adjacent { Some(b.end_point()) } else { None };
            let allowed = |p: (f64, f64)| joint.is_some_and(|q| dist(p, q) <= tol * 1e3);
            if dist(a.center, b.center) < tol {
                // same circle: quarter arcs may only share endpoints
                let mids = [a.point_at((a.start_angle + a.end_angle) / 2.0), b.point_at((b.start_angle + b.end_angle) / 2.0)];
                let overlap = b.covers_angle(angle_deg(b.center, mids[0]), deg_tol)
                    || a.covers_angle(angle_deg(a.center, mids[1]), deg_tol);
                let shared: Vec<(f64, f64)> = [a.start_point(), a.end_point()]
                    .into_iter()
                    .filter(|&p| b.covers_angle(angle_deg(b.center, p), deg_tol))
                    .collect();
                if overlap || shared.iter().any(|&p| !allowed(p)) {
                    crossings.push((i, j));
                }
                continue;
            }
            let hits = circle_hits(a.center, b.center, r, tol);
            if hits.iter().any(|&p| {
                a.covers_angle(angle_deg(a.center, p), deg_tol)
                    && b.covers_angle(angle_deg(b.center, p), deg_tol)
                    && !allowed(p)
            }) {
                crossings.push((i, j));
            }
        }
    }

    let convex = curve.convex_count();
    CurveReport {
        arcs: n,
        convex,
        concave: n - convex,
        max_gap: gap / r,
        max_tangent_error,
        crossings,
        off_grid_joints,
    }
}

/// Overlays for [`render_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    pub show_dual: bool,
    pub show_packing: bool,
}

fn num(v: f64) -> String {
    let v = (v * 1e4).round() / 1e4;
    if v == 0.0 {
        "0".to_string()
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// SVG 1.1 drawing of the curve as one path of elliptical-arc commands. The y
/// axis is flipped so counterclockwise stays counterclockwise on screen.
pub fn render_svg(curve: &TangleCurve, cfg: &GeometryConfig, opts: RenderOptions) -> String {
    let r = curve.radius();
    let side = SQRT_2 * r;
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for a in &curve.arcs {
        lo = (lo.0.min(a.center.0 - r), lo.1.min(a.center.1 - r));
        hi = (hi.0.max(a.center.0 + r), hi.1.max(a.center.1 + r));
    }
    let pad = cfg.margin * r + cfg.stroke * r;
    let (x0, y0) = (lo.0 - pad, -hi.1 - pad);
    let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        num(x0),
        num(y0),
        num(w),
        num(h),
        num(w / r * 40.0),
        num(h / r * 40.0)
    );

    if opts.show_packing {
        let _ = writeln!(out, "  <g id=\"packing\" fill=\"none\" stroke=\"#999999\" stroke-width=\"{}\">", num(0.03 * r));
        let vertex_cells: Vec<GridPoint> = curve.graph.vertices().iter().map(|v| GridPoint::new(2 * v.x, 2 * v.y)).collect();
        let (cx0, cx1) = ((lo.0 / side).floor() as i32 - 1, (hi.0 / side).ceil() as i32 + 1);
        let (cy0, cy1) = ((lo.1 / side).floor() as i32 - 1, (hi.1 / side).ceil() as i32 + 1);
        for cx in cx0..=cx1 {
            for cy in cy0..=cy1 {
                if (cx - cy).rem_euclid(2) != 0 {
                    continue;
                }
                let inner = vertex_cells.contains(&GridPoint::new(cx, cy));
                let fill = if inner { " fill=\"#cccccc\"" } else { "" };
                let _ = writeln!(
                    out,
                    "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"{fill}/>",
                    num(cx as f64 * side),
                    num(-(cy as f64) * side),
                    num(r)
                );
            }
        }
        out.push_str("  </g>\n");
    }

    if let (Some(first), false) = (curve.arcs.first(), curve.arcs.is_empty()) {
        let p = first.start_point();
        let mut d = format!("M {} {}", num(p.0), num(-p.1));
        for a in &curve.arcs {
            let q = a.end_point();
            let sweep_flag = match a.orientation {
                Orientation::Convex => 0,
                Orientation::Concave => 1,
            };
            let _ = write!(d, " A {} {} 0 0 {} {} {}", num(r), num(r), sweep_flag, num(q.0), num(-q.1));
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            "  <path id=\"tangle\" d=\"{d}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
            num(cfg.stroke * r)
        );
    }

    if opts.show_dual {
        let spacing = 2.0 * side;
        let _ = writeln!(out, "  <g id=\"dual\" stroke=\"#c0392b\" fill=\"#c0392b\" stroke-width=\"{}\">", num(0.05 * r));
        for e in curve.graph.edges() {
            let (a, b) = (e.origin, e.far_end());
            let _ = writeln!(
                out,
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.x as f64 * spacing),
                num(-(a.y as f64) * spacing),
                num(b.x as f64 * spacing),
                num(-(b.y as f64) * spacing)
            );
        }
        for v in curve.graph.vertices() {
            let _ = writeln!(
                out,
                "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                num(v.x as f64 * spacing),
                num(-(v.y as f64) * spacing),
                num(0.15 * r)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// `(4m + π)·r²` restated for curve checks.
pub fn expected_area(size: usize, radius: f64) -> f64 {
    (4.0 * size as f64 + PI) * radius * radius
}

/// Quarter-turn sweep in radians, for callers building arcs by hand.
pub const QUARTER_TURN: f64 = FRAC_PI_2;
