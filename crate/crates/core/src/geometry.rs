//! Planar path construction: obstacle-avoiding polylines, stadium loops,
//! and segment crossing detection.
//!
//! All cycle realizations project to polylines in the x-plane (or in the
//! chart t = 1/x). Paths keep a prescribed clearance from branch points
//! except at designated endpoints; blocked straight segments are repaired
//! with circular-arc detours around the offending obstacle.

use crate::error::Error;
use num_complex::Complex64;

/// 2D cross product of direction vectors, Im(conj(a)·b).
pub fn cross(a: Complex64, b: Complex64) -> f64 {
    (a.conj() * b).im
}

/// Distance from point `p` to the segment [a, b].
pub fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).conj() * ab).re / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Intersection of open segments (a1,b1) and (a2,b2).
///
/// Returns the parameters (t1, t2) in (0,1) when the segments cross
/// transversally; `None` for disjoint, touching or parallel pairs.
pub fn segment_intersection(
    a1: Complex64,
    b1: Complex64,
    a2: Complex64,
    b2: Complex64,
    eps: f64,
) -> Option<(f64, f64)> {
    let d1 = b1 - a1;
    let d2 = b2 - a2;
    let denom = cross(d1, d2);
    if denom.abs() <= eps * d1.norm() * d2.norm() {
        return None;
    }
    let r = a2 - a1;
    let t1 = cross(r, d2) / denom;
    let t2 = cross(r, d1) / denom;
    if t1 > eps && t1 < 1.0 - eps && t2 > eps && t2 < 1.0 - eps {
        Some((t1, t2))
    } else {
        None
    }
}

/// Whether two polylines share a transversal crossing.
pub fn polylines_cross(a: &[Complex64], b: &[Complex64]) -> bool {
    for w in a.windows(2) {
        for v in b.windows(2) {
            if segment_intersection(w[0], w[1], v[0], v[1], 1e-12).is_some() {
                return true;
            }
        }
    }
    false
}

/// Point obstacles with a clearance radius.
#[derive(Clone, Debug, Default)]
pub struct Obstacles {
    pub points: Vec<(Complex64, f64)>,
    /// Capsule obstacles: segments fattened by a radius.
    pub capsules: Vec<(Complex64, Complex64, f64)>,
}

impl Obstacles {
    pub fn new() -> Self {
        Obstacles::default()
    }

    pub fn add_point(&mut self, p: Complex64, radius: f64) {
        self.points.push((p, radius));
    }

    pub fn add_capsule(&mut self, a: Complex64, b: Complex64, radius: f64) {
        self.capsules.push((a, b, radius));
    }

    pub fn add_polyline_capsule(&mut self, poly: &[Complex64], radius: f64) {
        for w in poly.windows(2) {
            self.add_capsule(w[0], w[1], radius);
        }
    }

    /// First point obstacle blocking the segment [a, b], by parameter order.
    fn first_blocking_point(
        &self,
        a: Complex64,
        b: Complex64,
        skip: &[Complex64],
    ) -> Option<(Complex64, f64)> {
        let ab = b - a;
        let len2 = ab.norm_sqr();
        let mut best: Option<(f64, Complex64, f64)> = None;
        for &(p, r) in &self.points {
            if skip.iter().any(|s| (s - p).norm() < 1e-12 * (1.0 + p.norm())) {
                continue;
            }
            if point_segment_distance(p, a, b) < r {
                let t = if len2 > 0.0 {
                    (((p - a).conj() * ab).re / len2).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                if best.map_or(true, |(tb, _, _)| t < tb) {
                    best = Some((t, p, r));
                }
            }
        }
        best.map(|(_, p, r)| (p, r))
    }

    /// First capsule blocking the segment [a, b]: returns a detour center,
    /// the direction pointing away from the blockage, and the detour radius.
    /// Transversal crossings and end proximity detour around the nearest
    /// capsule end; near-collinear overlap detours around the whole capsule.
    /// Violations at exempt points are ignored.
    fn first_blocking_capsule(
        &self,
        a: Complex64,
        b: Complex64,
        exempt: &[Complex64],
    ) -> Option<CapsuleBlock> {
        let seg_param = |p: Complex64, s0: Complex64, s1: Complex64| -> f64 {
            let d = s1 - s0;
            if d.norm_sqr() == 0.0 {
                0.0
            } else {
                (((p - s0).conj() * d).re / d.norm_sqr()).clamp(0.0, 1.0)
            }
        };
        let dir_ab = b - a;
        let mut best: Option<(f64, CapsuleBlock)> = None;
        for &(c1, c2, r) in &self.capsules {
            let mut cand: Option<(f64, f64)> = None;
            if let Some((t1, t2)) = segment_intersection(a, b, c1, c2, 1e-12) {
                cand = Some((t1, t2));
            } else {
                let checks = [
                    (seg_param(c1, a, b), 0.0, point_segment_distance(c1, a, b)),
                    (seg_param(c2, a, b), 1.0, point_segment_distance(c2, a, b)),
                    (0.0, seg_param(a, c1, c2), point_segment_distance(a, c1, c2)),
                    (1.0, seg_param(b, c1, c2), point_segment_distance(b, c1, c2)),
                ];
                for (t_ab, t_c, d) in checks {
                    if d < r {
                        let p_on_ab = a + (b - a) * t_ab;
                        if exempt.iter().any(|e| (e - p_on_ab).norm() <= 1.5 * r) {
                            continue;
                        }
                        if cand.map_or(true, |(t, _)| t_ab < t) {
                            cand = Some((t_ab, t_c));
                        }
                    }
                }
            }
            if let Some((t_ab, t_c)) = cand {
                let cap_dir = c2 - c1;
                let sin = if dir_ab.norm() > 0.0 && cap_dir.norm() > 0.0 {
                    (cross(dir_ab, cap_dir) / (dir_ab.norm() * cap_dir.norm())).abs()
                } else {
                    1.0
                };
                let blocking = if sin < 0.26 {
                    // Near-collinear: side-step over the whole capsule.
                    let perp = if cap_dir.norm() > 0.0 {
                        cap_dir / cap_dir.norm() * Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, 1.0)
                    };
                    CapsuleBlock::SideStep { perp, height: 3.2 * r }
                } else {
                    let (e, other) = if t_c < 0.5 { (c1, c2) } else { (c2, c1) };
                    let away = if (e - other).norm() > 1e-12 {
                        (e - other) / (e - other).norm()
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    CapsuleBlock::EndDetour { end: e, away, radius: 2.4 * r }
                };
                if best.as_ref().map_or(true, |(t, _)| t_ab < *t) {
                    best = Some((t_ab, blocking));
                }
            }
        }
        best.map(|(_, blocking)| blocking)
    }
}

/// How a segment is blocked by a capsule and how to repair it.
#[derive(Clone, Copy, Debug)]
enum CapsuleBlock {
    EndDetour { end: Complex64, away: Complex64, radius: f64 },
    SideStep { perp: Complex64, height: f64 },
}

/// Builds a polyline from `from` to `to` that avoids the obstacles.
///
/// Straight segments blocked by a point obstacle are replaced by an arc
/// around it. Segments crossing a capsule detour around the capsule end
/// nearest to the crossing, on the side facing away from the capsule body.
/// Endpoints are exempt from the clearance requirement.
pub fn route(
    from: Complex64,
    to: Complex64,
    obstacles: &Obstacles,
    detour_radius: f64,
) -> Result<Vec<Complex64>, Error> {
    let mut path = vec![from, to];
    for _ in 0..96 {
        let mut modified = false;
        let mut i = 0;
        while i + 1 < path.len() {
            let (a, b) = (path[i], path[i + 1]);
            // Capsules first: their repairs subsume point obstacles sitting
            // at capsule ends, while the reverse strands waypoints inside
            // collinear corridors.
            match obstacles.first_blocking_capsule(a, b, &[from, to]) {
                Some(CapsuleBlock::EndDetour { end, away, radius }) => {
                    let arc = capsule_detour_arc(a, b, end, away, radius)?;
                    path.splice(i + 1..i + 1, arc);
                    modified = true;
                    break;
                }
                Some(CapsuleBlock::SideStep { perp, height }) => {
                    path.splice(i + 1..i + 1, vec![a + perp * height, b + perp * height]);
                    modified = true;
                    break;
                }
                None => {}
            }
            if let Some((p, r)) = obstacles.first_blocking_point(a, b, &[a, b]) {
                let radius = (1.25 * r)
                    .max(detour_radius.min(0.45 * ((a - p).norm().min((b - p).norm()))));
                let arc = detour_arc(a, b, p, radius)?;
                path.splice(i + 1..i + 1, arc);
                modified = true;
                break;
            }
            i += 1;
        }
        if !modified {
            break;
        }
    }
    for w in path.windows(2) {
        if obstacles
            .first_blocking_point(w[0], w[1], &[from, to])
            .is_some()
            || obstacles.first_blocking_capsule(w[0], w[1], &[from, to]).is_some()
        {
            return Err(Error::PathingFailed("detour search exhausted".into()));
        }
    }
    Ok(path)
}

/// Arc waypoints around capsule end `e` for the segment [a, b], passing
/// through the direction `away` (pointing off the capsule body).
fn capsule_detour_arc(
    a: Complex64,
    b: Complex64,
    e: Complex64,
    away: Complex64,
    radius: f64,
) -> Result<Vec<Complex64>, Error> {
    let u0 = a - e;
    let u1 = b - e;
    if u0.norm() < 1e-12 || u1.norm() < 1e-12 {
        return Err(Error::PathingFailed("degenerate capsule detour".into()));
    }
    let a0 = u0.arg();
    let a1 = u1.arg();
    let aw = away.arg();
    // Choose the sweep from a0 to a1 that passes through `aw`.
    let norm = |x: f64| {
        let mut v = x;
        while v <= -std::f64::consts::PI {
            v += 2.0 * std::f64::consts::PI;
        }
        while v > std::f64::consts::PI {
            v -= 2.0 * std::f64::consts::PI;
        }
        v
    };
    let ccw_span = {
        let mut d = norm(a1 - a0);
        if d < 0.0 {
            d += 2.0 * std::f64::consts::PI;
        }
        d
    };
    let ccw_hits_away = {
        let mut d = norm(aw - a0);
        if d < 0.0 {
            d += 2.0 * std::f64::consts::PI;
        }
        d <= ccw_span
    };
    let (start, end) = if ccw_hits_away {
        (a0, a0 + ccw_span)
    } else {
        (a0, a0 + ccw_span - 2.0 * std::f64::consts::PI)
    };
    let pts = arc_points(e, radius, start, end, 8);
    Ok(pts)
}

/// Arc waypoints around obstacle `p` for the segment [a, b].
fn detour_arc(
    a: Complex64,
    b: Complex64,
    p: Complex64,
    radius: f64,
) -> Result<Vec<Complex64>, Error> {
    let ab = b - a;
    if ab.norm() == 0.0 {
        return Err(Error::PathingFailed("degenerate segment".into()));
    }
    let dir = ab / ab.norm();
    let t = ((p - a).conj() * ab).re / ab.norm_sqr();
    let foot = a + ab * t.clamp(0.05, 0.95);
    let side = if cross(dir, p - a) <= 0.0 { 1.0 } else { -1.0 };
    let normal = dir * Complex64::new(0.0, side);
    // Entry and exit points straddle the obstacle along the segment.
    let along = radius;
    let entry = foot - dir * along;
    let exit = foot + dir * along;
    let mid = p + normal * radius;
    let quarter1 = p + (normal * 0.7071 - dir * 0.7071) * radius;
    let quarter2 = p + (normal * 0.7071 + dir * 0.7071) * radius;
    Ok(vec![entry, quarter1, mid, quarter2, exit])
}

/// Closed stadium-shaped loop around the segment [a, b] at the given
/// clearance, traversed counterclockwise; the first vertex is repeated at
/// the end.
pub fn stadium_loop(a: Complex64, b: Complex64, radius: f64, arc_segments: usize) -> Vec<Complex64> {
    let ab = b - a;
    let dir = if ab.norm() > 0.0 {
        ab / ab.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let i = Complex64::new(0.0, 1.0);
    let mut v = Vec::with_capacity(2 * arc_segments + 4);
    // Bottom side in the +dir direction, cap around b, top side back, cap
    // around a.
    v.push(a - i * dir * radius);
    v.push(b - i * dir * radius);
    for k in 1..arc_segments {
        let ang = std::f64::consts::PI * k as f64 / arc_segments as f64;
        v.push(b + dir * radius * (-i * ang.cos() + ang.sin()));
    }
    v.push(b + i * dir * radius);
    v.push(a + i * dir * radius);
    for k in 1..arc_segments {
        let ang = std::f64::consts::PI * k as f64 / arc_segments as f64;
        v.push(a + dir * radius * (i * ang.cos() - ang.sin()));
    }
    v.push(a - i * dir * radius);
    v
}

/// Closed circular loop (counterclockwise), first vertex repeated at the end.
pub fn circle_loop(center: Complex64, radius: f64, segments: usize) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(segments + 1);
    for k in 0..=segments {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / segments as f64;
        v.push(center + Complex64::from_polar(radius, ang));
    }
    v
}

/// Open circular arc from angle `a0` to `a1` (radians) around `center`.
pub fn arc_points(
    center: Complex64,
    radius: f64,
    a0: f64,
    a1: f64,
    segments: usize,
) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(segments + 1);
    for k in 0..=segments {
        let ang = a0 + (a1 - a0) * k as f64 / segments as f64;
        v.push(center + Complex64::from_polar(radius, ang));
    }
    v
}

/// A transversal crossing between the segments of two polylines.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub seg_a: usize,
    pub t_a: f64,
    pub seg_b: usize,
    pub t_b: f64,
    pub point: Complex64,
    /// Sign of cross(dir_a, dir_b) at the crossing.
    pub sign: i64,
}

/// All transversal crossings between two polylines; returns an error when a
/// crossing is too close to a vertex or to tangency to classify safely.
pub fn polyline_crossings(a: &[Complex64], b: &[Complex64]) -> Result<Vec<Crossing>, Error> {
    let mut out = Vec::new();
    let guard = 1e-9;
    for (i, w) in a.windows(2).enumerate() {
        for (j, v) in b.windows(2).enumerate() {
            let d1 = w[1] - w[0];
            let d2 = v[1] - v[0];
            let denom = cross(d1, d2);
            if d1.norm() == 0.0 || d2.norm() == 0.0 {
                continue;
            }
            let r = v[0] - w[0];
            if denom.abs() <= 1e-12 * d1.norm() * d2.norm() {
                // Parallel segments: reject only when they genuinely overlap.
                if cross(r, d1).abs() <= 1e-12 * d1.norm() * r.norm().max(d1.norm()) {
                    let t0 = (r.conj() * d1).re / d1.norm_sqr();
                    let t1 = ((v[1] - w[0]).conj() * d1).re / d1.norm_sqr();
                    let (lo, hi) = (t0.min(t1), t0.max(t1));
                    if hi > guard && lo < 1.0 - guard {
                        return Err(Error::DegeneratePosition);
                    }
                }
                continue;
            }
            let t1 = cross(r, d2) / denom;
            let t2 = cross(r, d1) / denom;
            if t1 <= -guard || t1 >= 1.0 + guard || t2 <= -guard || t2 >= 1.0 + guard {
                continue;
            }
            if t1 < guard || t1 > 1.0 - guard || t2 < guard || t2 > 1.0 - guard {
                return Err(Error::DegeneratePosition);
            }
            out.push(Crossing {
                seg_a: i,
                t_a: t1,
                seg_b: j,
                t_b: t2,
                point: w[0] + d1 * t1,
                sign: if denom > 0.0 { 1 } else { -1 },
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn straight_route_when_clear() {
        let mut obs = Obstacles::new();
        obs.add_point(c(0.0, 5.0), 0.5);
        let path = route(c(-1.0, 0.0), c(1.0, 0.0), &obs, 0.3).unwrap();
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn detour_around_point() {
        let mut obs = Obstacles::new();
        obs.add_point(c(0.0, 0.0), 0.2);
        let path = route(c(-1.0, 0.0), c(1.0, 0.0), &obs, 0.3).unwrap();
        assert!(path.len() > 2);
        for w in path.windows(2) {
            assert!(point_segment_distance(c(0.0, 0.0), w[0], w[1]) >= 0.2 - 1e-12);
        }
    }

    #[test]
    fn stadium_is_closed_and_clears_endpoints() {
        let loop_ = stadium_loop(c(-1.0, 0.0), c(1.0, 0.0), 0.25, 8);
        assert!((loop_[0] - loop_[loop_.len() - 1]).norm() < 1e-14);
        // interior of the loop contains both foci
        let min_a = loop_
            .iter()
            .map(|p| (p - c(-1.0, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(min_a >= 0.25 - 1e-9);
    }

    #[test]
    fn crossing_detection_and_sign() {
        let a = [c(-1.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.3, -1.0), c(0.3, 1.0)];
        let crossings = polyline_crossings(&a, &b).unwrap();
        assert_eq!(crossings.len(), 1);
        assert_eq!(crossings[0].sign, 1);
        let back = polyline_crossings(&b, &a).unwrap();
        assert_eq!(back[0].sign, -1);
    }

    #[test]
    fn degenerate_crossing_reported() {
        let a = [c(-1.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.0), c(0.0, 1.0)]; // endpoint on the other segment
        assert!(matches!(
            polyline_crossings(&a, &b),
            Err(Error::DegeneratePosition)
        ));
    }
}
