//! Geometric realizations of homology cycles as leg chains.
//!
//! Cycles around a branch cut are realized as offset loops at clearance
//! distance (never touching the cut), cycles threading between cuts as
//! retraced paths through the two ramification points. On curves with the
//! even symmetry, quotient cycles are lifted through a fixed branch of
//! √u, and passages through the regular points over x = 0 or through the
//! points at infinity are perturbed into small arcs of prescribed radius,
//! which leaves the homology class unchanged since those points are
//! regular for the y-cover.

use crate::continuation::continue_sqrt;
use crate::curve::Curve;
use crate::error::Error;
use crate::geometry::{arc_points, point_segment_distance, stadium_loop};
use crate::quadrature::{check_closure, trace_path, Chart, Leg, LegTrace, PathStart, TracedPath};
use num_complex::Complex64;

/// A closed path on the surface with its per-leg crossing data.
#[derive(Debug)]
pub struct Cycle {
    pub path: TracedPath,
    pub traces: Vec<LegTrace>,
}

impl Cycle {
    /// Validates closure and records leg traces.
    pub fn new(curve: &Curve, path: TracedPath) -> Result<Cycle, Error> {
        check_closure(curve, &path)?;
        let (traces, _) = trace_path(curve, &path)?;
        Ok(Cycle { path, traces })
    }

    /// Builds a cycle from a closed finite-chart polyline (first vertex
    /// repeated last) and a starting branch value.
    pub fn from_loop(curve: &Curve, vertices: &[Complex64], y0: Complex64) -> Result<Cycle, Error> {
        Cycle::new(curve, TracedPath::from_polyline(vertices, y0))
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self, curve: &Curve) -> Result<Cycle, Error> {
        let mut legs: Vec<Leg> = Vec::with_capacity(self.path.legs.len());
        for leg in self.path.legs.iter().rev() {
            legs.push(match *leg {
                Leg::Seg { chart, a, b } => Leg::Seg { chart, a: b, b: a },
                Leg::IntoRoot { chart, from, root } => Leg::OutOfRoot { chart, root, to: from },
                Leg::OutOfRoot { chart, root, to } => Leg::IntoRoot { chart, from: to, root },
            });
        }
        let start = match (&self.path.start, self.path.legs.last()) {
            (PathStart::Regular { .. }, Some(_)) => {
                // A closed loop ends where it starts with the same value.
                self.path.start
            }
            _ => self.path.start,
        };
        Cycle::new(curve, TracedPath { start, legs })
    }

    /// Translates a root-free cycle by `delta` (used to break degenerate
    /// crossing configurations).
    pub fn translated(&self, curve: &Curve, delta: Complex64) -> Result<Cycle, Error> {
        let mut legs = Vec::with_capacity(self.path.legs.len());
        for leg in &self.path.legs {
            match *leg {
                Leg::Seg { chart: Chart::Finite, a, b } => {
                    legs.push(Leg::Seg { chart: Chart::Finite, a: a + delta, b: b + delta })
                }
                _ => return Err(Error::DegeneratePosition),
            }
        }
        let (x0, y0) = match self.path.start {
            PathStart::Regular { x, y } => (x, y),
            _ => return Err(Error::DegeneratePosition),
        };
        let y_new = continue_sqrt(curve.f(), x0, y0, x0 + delta)?;
        Cycle::new(
            curve,
            TracedPath { start: PathStart::Regular { x: x0 + delta, y: y_new }, legs },
        )
    }

    /// Rotates a root-free cycle by a small angle around the origin; legs
    /// in the chart at infinity rotate oppositely (t = 1/x).
    pub fn rotated(&self, curve: &Curve, theta: f64) -> Result<Cycle, Error> {
        let rot = Complex64::from_polar(1.0, theta);
        let rot_inf = Complex64::from_polar(1.0, -theta);
        let mut legs = Vec::with_capacity(self.path.legs.len());
        for leg in &self.path.legs {
            match *leg {
                Leg::Seg { chart: Chart::Finite, a, b } => {
                    legs.push(Leg::Seg { chart: Chart::Finite, a: a * rot, b: b * rot })
                }
                Leg::Seg { chart: Chart::Infinity, a, b } => {
                    legs.push(Leg::Seg { chart: Chart::Infinity, a: a * rot_inf, b: b * rot_inf })
                }
                _ => return Err(Error::DegeneratePosition),
            }
        }
        let (x0, y0) = match self.path.start {
            PathStart::Regular { x, y } => (x, y),
            _ => return Err(Error::DegeneratePosition),
        };
        let y_new = continue_sqrt(curve.f(), x0, y0, x0 * rot)?;
        Cycle::new(
            curve,
            TracedPath { start: PathStart::Regular { x: x0 * rot, y: y_new }, legs },
        )
    }

    pub fn has_infinity_legs(&self) -> bool {
        self.path
            .legs
            .iter()
            .any(|l| l.chart() == Chart::Infinity)
    }

    pub fn has_root_legs(&self) -> bool {
        self.path
            .legs
            .iter()
            .any(|l| !matches!(l, Leg::Seg { .. }))
    }
}

/// Number of polyline points used for full circles.
pub const CIRCLE_SEGS: usize = 28;
/// Number of polyline points per stadium cap (odd, so no cap vertex
/// falls exactly on the cut's extension line).
pub const CAP_SEGS: usize = 9;

/// Counterclockwise offset loop around a polyline at clearance `radius`.
///
/// Corners are chord-joined, which keeps at least radius·cos(θ/2) of
/// clearance for gentle turns; end caps are semicircular.
pub fn offset_loop(poly: &[Complex64], radius: f64) -> Vec<Complex64> {
    if poly.len() == 2 {
        return stadium_loop(poly[0], poly[1], radius, CAP_SEGS);
    }
    let i = Complex64::new(0.0, 1.0);
    let dirs: Vec<Complex64> = poly
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            d / d.norm()
        })
        .collect();
    let mut v = Vec::new();
    // Right side (below), forward.
    for (k, w) in poly.windows(2).enumerate() {
        let n = i * dirs[k];
        v.push(w[0] - n * radius);
        v.push(w[1] - n * radius);
    }
    // Cap around the last vertex: from −n through +dir to +n.
    let last = *poly.last().unwrap();
    let dl = dirs[dirs.len() - 1];
    for k in 1..CAP_SEGS {
        let ang = std::f64::consts::PI * k as f64 / CAP_SEGS as f64;
        v.push(last + dl * radius * (-i * ang.cos() + ang.sin()));
    }
    // Left side (above), backward.
    for (k, w) in poly.windows(2).enumerate().rev() {
        let n = i * dirs[k];
        v.push(w[1] + n * radius);
        v.push(w[0] + n * radius);
    }
    // Cap around the first vertex.
    let first = poly[0];
    let d0 = dirs[0];
    for k in 1..CAP_SEGS {
        let ang = std::f64::consts::PI * k as f64 / CAP_SEGS as f64;
        v.push(first + d0 * radius * (i * ang.cos() - ang.sin()));
    }
    v.push(v[0]);
    v
}

/// Validates that a loop keeps `clearance` from every listed point.
pub fn validate_loop_clearance(
    loop_vertices: &[Complex64],
    points: &[Complex64],
    clearance: f64,
) -> Result<(), Error> {
    for w in loop_vertices.windows(2) {
        for &p in points {
            if point_segment_distance(p, w[0], w[1]) < clearance {
                return Err(Error::PathingFailed(
                    "cycle realization too close to a branch point".into(),
                ));
            }
        }
    }
    Ok(())
}

/// A retraced through-cycle over an open chain from one ramification point
/// to another (both roots of f): out on one sheet, back on the other.
///
/// `route` runs from exit point to entry point; `root_a` is reached by
/// extending backwards from `route[0]`, `root_b` forwards from the last
/// vertex. The cycle starts at `route[0]`.
pub fn through_cycle(
    curve: &Curve,
    root_a: Complex64,
    route: &[Complex64],
    root_b: Complex64,
    y0: Complex64,
) -> Result<Cycle, Error> {
    let e0 = route[0];
    let e1 = *route.last().unwrap();
    let mut legs: Vec<Leg> = Vec::new();
    for w in route.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    legs.push(Leg::IntoRoot { chart: Chart::Finite, from: e1, root: root_b });
    legs.push(Leg::OutOfRoot { chart: Chart::Finite, root: root_b, to: e1 });
    for w in route.windows(2).rev() {
        legs.push(Leg::seg(w[1], w[0]));
    }
    legs.push(Leg::IntoRoot { chart: Chart::Finite, from: e0, root: root_a });
    legs.push(Leg::OutOfRoot { chart: Chart::Finite, root: root_a, to: e0 });
    Cycle::new(curve, TracedPath { start: PathStart::Regular { x: e0, y: y0 }, legs })
}

/// Branch of √u cut along the ray from the origin in direction `cut_angle`.
pub fn sqrt_branch(u: Complex64, cut_angle: f64) -> Complex64 {
    let r = u.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut phi = u.arg();
    while phi <= cut_angle {
        phi += 2.0 * std::f64::consts::PI;
    }
    while phi > cut_angle + 2.0 * std::f64::consts::PI {
        phi -= 2.0 * std::f64::consts::PI;
    }
    Complex64::from_polar(r.sqrt(), phi / 2.0)
}

/// Lifts a u-plane polyline through the chosen √-branch.
pub fn lift_polyline(poly: &[Complex64], cut_angle: f64, negate: bool) -> Vec<Complex64> {
    poly.iter()
        .map(|&u| {
            let w = sqrt_branch(u, cut_angle);
            if negate {
                -w
            } else {
                w
            }
        })
        .collect()
}

/// Closed figure-eight through the region over x = 0: the two √-lifts of a
/// based u-loop, joined by arcs of radius `delta` around x = 0.
///
/// `u_loop` starts and ends at the same point u_δ = delta²·direction near
/// the origin (the basepoint is already pushed off 0). `y_near_zero` is the
/// branch value carried at the start.
pub fn figure_eight_cycle(
    curve: &Curve,
    u_loop: &[Complex64],
    cut_angle: f64,
    y_start: Complex64,
) -> Result<Cycle, Error> {
    let right: Vec<Complex64> = lift_polyline(u_loop, cut_angle, false);
    let left: Vec<Complex64> = right.iter().rev().map(|&x| -x).collect();
    let x0 = right[0];
    let x1 = *right.last().unwrap();
    // u_loop is closed, so x1 == x0 up to rounding.
    let r0 = x0.norm();
    let mut vertices: Vec<Complex64> = Vec::new();
    vertices.extend_from_slice(&right);
    // Lower bridge: clockwise half-turn from x1 to −x1.
    vertices.extend(
        arc_points(Complex64::new(0.0, 0.0), r0, x1.arg(), x1.arg() - std::f64::consts::PI, 7)
            .into_iter()
            .skip(1),
    );
    // Mirrored lift traversed backwards: from −x1 around to −x0.
    vertices.extend(left.iter().skip(1));
    // Upper bridge: clockwise half-turn from −x0 back to x0.
    let start_neg = -x0;
    vertices.extend(
        arc_points(
            Complex64::new(0.0, 0.0),
            r0,
            start_neg.arg(),
            start_neg.arg() - std::f64::consts::PI,
            7,
        )
        .into_iter()
        .skip(1),
    );
    let n = vertices.len();
    vertices[n - 1] = vertices[0];
    Cycle::from_loop(curve, &vertices, y_start)
}

/// Closed cycle from near x = 0 out to infinity and back through the
/// mirrored copy of the outbound path: out along `outbound` (from a point at
/// distance δ from the origin to a point of modulus R), through the chart at
/// infinity, back along the negated outbound path reversed, and closed by a
/// clockwise half-turn around x = 0 of radius δ.
///
/// The passage at infinity is a straight t-line, or an arc of t-radius
/// `inf_arc` to keep crossings with other cycles through infinity generic.
/// Only meaningful on even-degree curves, where t = 0 is regular.
pub fn mirror_pass_cycle(
    curve: &Curve,
    outbound: &[Complex64],
    y_near_zero: Complex64,
    inf_arc: Option<f64>,
) -> Result<Cycle, Error> {
    let x_in = outbound[0];
    let x_out = *outbound.last().unwrap();
    let t_out = 1.0 / x_out;
    let mut legs: Vec<Leg> = Vec::new();
    for w in outbound.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    push_infinity_pass(&mut legs, t_out, inf_arc);
    let mirrored: Vec<Complex64> = outbound.iter().rev().map(|&x| -x).collect();
    for w in mirrored.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    // Close with a clockwise half-turn around x = 0.
    let arc = arc_points(
        Complex64::new(0.0, 0.0),
        x_in.norm(),
        (-x_in).arg(),
        (-x_in).arg() - std::f64::consts::PI,
        7,
    );
    for w in arc.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    let y0 = continue_sqrt(curve.f(), Complex64::new(0.0, 0.0), y_near_zero, x_in)?;
    Cycle::new(curve, TracedPath { start: PathStart::Regular { x: x_in, y: y0 }, legs })
}

/// [`mirror_pass_cycle`] with a straight outbound ray along `dir`.
pub fn axis_cycle(
    curve: &Curve,
    dir: Complex64,
    delta: f64,
    radius: f64,
    y_near_zero: Complex64,
    inf_arc: Option<f64>,
) -> Result<Cycle, Error> {
    let d = dir / dir.norm();
    mirror_pass_cycle(curve, &[d * delta, d * radius], y_near_zero, inf_arc)
}

/// Closed cycle coming in from infinity along `dir`, looping once around the
/// x-plane loop `finite_loop` (open polyline from entry to exit point, both
/// equal), and returning mirrored; passages at infinity are straight or
/// arced as in [`axis_cycle`].
///
/// `finite_loop` must start and end at radius·dir̂.
pub fn lasso_cycle(
    curve: &Curve,
    dir: Complex64,
    radius: f64,
    finite_loop: &[Complex64],
    y_at_entry: Complex64,
    inf_arc: Option<f64>,
) -> Result<Cycle, Error> {
    let d = dir / dir.norm();
    let x_r = d * radius;
    let t_r = 1.0 / x_r;
    let mut legs: Vec<Leg> = Vec::new();
    for w in finite_loop.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    // Through infinity to the mirrored copy.
    push_infinity_pass(&mut legs, t_r, inf_arc);
    // Mirrored loop traversed backwards.
    let mirrored: Vec<Complex64> = finite_loop.iter().rev().map(|&x| -x).collect();
    for w in mirrored.windows(2) {
        legs.push(Leg::seg(w[0], w[1]));
    }
    // Back through infinity to the start.
    push_infinity_pass(&mut legs, -t_r, inf_arc.map(|r| r * 1.5));
    let _ = x_r;
    Cycle::new(
        curve,
        TracedPath { start: PathStart::Regular { x: finite_loop[0], y: y_at_entry }, legs },
    )
}

fn push_infinity_pass(legs: &mut Vec<Leg>, t_from: Complex64, inf_arc: Option<f64>) {
    match inf_arc {
        None => legs.push(Leg::Seg { chart: Chart::Infinity, a: t_from, b: -t_from }),
        Some(rt) => {
            let t_dir = t_from / t_from.norm();
            let t_near = t_dir * rt;
            legs.push(Leg::Seg { chart: Chart::Infinity, a: t_from, b: t_near });
            let arc = arc_points(
                Complex64::new(0.0, 0.0),
                rt,
                t_near.arg(),
                t_near.arg() - std::f64::consts::PI,
                7,
            );
            for w in arc.windows(2) {
                legs.push(Leg::Seg { chart: Chart::Infinity, a: w[0], b: w[1] });
            }
            legs.push(Leg::Seg { chart: Chart::Infinity, a: -t_near, b: -t_from });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sqrt_branch_respects_cut() {
        let cut = std::f64::consts::PI; // cut along the negative real axis
        let w = sqrt_branch(c(4.0, 0.0), cut);
        // φ normalized into (π, 3π]: for u = 4, φ = 2π, so √ = 2·e^{iπ} = −2.
        assert!((w - c(-2.0, 0.0)).norm() < 1e-12);
        let w2 = sqrt_branch(c(0.0, 4.0), cut);
        assert!((w2 * w2 - c(0.0, 4.0)).norm() < 1e-12);
    }

    #[test]
    fn offset_loop_of_segment_is_stadium() {
        let poly = [c(-1.0, 0.0), c(1.0, 0.0)];
        let loop_ = offset_loop(&poly, 0.25);
        assert!((loop_[0] - loop_[loop_.len() - 1]).norm() < 1e-12);
        validate_loop_clearance(&loop_, &poly, 0.24).unwrap();
    }

    #[test]
    fn through_cycle_is_closed_on_the_surface() {
        // Thread between the cuts of y² = x³ − x: ramification points 0 and 1.
        let curve = Curve::new(Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0])).unwrap();
        let route = [c(0.2, 0.15), c(0.8, 0.15)];
        let y0 = curve.f().eval(route[0]).sqrt();
        let cycle = through_cycle(&curve, c(0.0, 0.0), &route, c(1.0, 0.0), y0).unwrap();
        assert!(cycle.has_root_legs());
        assert_eq!(cycle.traces.len(), cycle.path.legs.len());
    }
}
