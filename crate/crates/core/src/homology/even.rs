//! Adapted basis construction for the even symmetry (x, y) ↦ (−x, y).
//!
//! The quotient is the curve y² = h(u) with u = x². A symplectic basis of
//! the quotient is realized by offset loops around consecutive pairs of
//! roots of h and lifted through a fixed branch of √u whose cut runs along
//! the widest angular gap seen from u = 0; the second lift is the σ-image.
//! Pair cycles and connectors pass through the regular fiber over x = 0
//! and, when a pair involves the points at infinity, through the regular
//! points t = 0 of the chart at infinity, with small-arc perturbations that
//! keep all crossings generic.

use super::{widest_gap_direction, BasisParams, Chain, CycleLabel, Pairing, RawBasis};
use crate::curve::{Curve, InfSheet, Involution, QuotientModel, SurfacePoint};
use crate::cycles::{
    figure_eight_cycle, lasso_cycle, lift_polyline, mirror_pass_cycle, offset_loop, sqrt_branch,
    validate_loop_clearance, Cycle, CIRCLE_SEGS,
};
use crate::error::Error;
use crate::geometry::{arc_points, point_segment_distance, route, Obstacles};
use crate::quadrature::Chart;
use num_complex::Complex64;
use std::rc::Rc;

struct Frame<'a> {
    curve: &'a Curve,
    quotient: &'a Curve,
    /// Branch-cut angle of the √u lift, along the widest root gap from 0.
    cut_angle: f64,
    /// Clearance in the quotient plane.
    rho_q: f64,
    /// Clearance floor in the x-plane after lifting.
    rho_x: f64,
    /// Bridge-arc radius near x = 0 for pair cycles.
    delta_c: f64,
    /// Bridge-arc radius for connectors (kept distinct for genericity).
    delta_d: f64,
    /// Truncation radius in the x-plane.
    radius_x: f64,
    /// y over x = 0 with positive principal root.
    y0: Complex64,
}

impl<'a> Frame<'a> {
    fn new(curve: &'a Curve, inv: &'a Involution, params: &BasisParams) -> Result<Self, Error> {
        let quotient = match &inv.quotient {
            QuotientModel::Curve(q) => q,
            QuotientModel::Sphere => return Err(Error::NotEvenSymmetric),
        };
        let roots = quotient.branch_x();
        let mut min_sep = quotient.min_branch_separation();
        for r in roots {
            min_sep = min_sep.min(r.norm());
        }
        let rho_q = params.clearance_factor * min_sep;
        let min_sqrt = roots.iter().map(|r| r.norm().sqrt()).fold(f64::INFINITY, f64::min);
        let max_sqrt = roots.iter().map(|r| r.norm().sqrt()).fold(0.0, f64::max);
        let rho_x = 0.25 * rho_q / max_sqrt.max(1.0);
        let delta_c = 0.30 * min_sqrt;
        let cut_angle = widest_gap_direction(Complex64::new(0.0, 0.0), roots);
        Ok(Frame {
            curve,
            quotient,
            cut_angle,
            rho_q,
            rho_x,
            delta_c,
            delta_d: 0.55 * delta_c,
            radius_x: params.truncation_factor * curve.scale(),
            y0: quotient.f().coeff(0).sqrt(),
        })
    }

    /// The ray used as the √-branch cut (and as the connector escape path).
    fn cut_ray(&self) -> (Complex64, Complex64) {
        let far = Complex64::from_polar(4.0 * self.radius_x * self.radius_x, self.cut_angle);
        (Complex64::new(0.0, 0.0), far)
    }

    fn lift(&self, poly: &[Complex64]) -> Vec<Complex64> {
        lift_polyline(poly, self.cut_angle, false)
    }

    /// y at the fiber over x = 0 belonging to a finite fixed point.
    fn y_of(&self, p: &SurfacePoint) -> Result<Complex64, Error> {
        match p {
            SurfacePoint::Finite { y, .. } => Ok(*y),
            _ => Err(Error::NotFixedPoints),
        }
    }
}

/// Quotient A/B loops around consecutive pairs of the given chain of roots,
/// lifted to the surface. Returns (a, b_tilde).
fn lifted_quotient_basis(
    frame: &Frame,
    chain: &[Complex64],
    g_sigma: usize,
    extra_obstacles: &[(Complex64, Complex64)],
) -> Result<(Vec<Chain>, Vec<Chain>), Error> {
    let rho = frame.rho_q;
    let (ray_a, ray_b) = frame.cut_ray();
    let mut a = Vec::with_capacity(g_sigma);
    let mut b_tilde = Vec::with_capacity(g_sigma);
    let mut build = |idx: usize, lo: usize, hi: usize, is_a: bool| -> Result<Chain, Error> {
        let nudge = 1.0 - 0.10 * (idx as f64 + if is_a { 0.0 } else { 0.5 }) / g_sigma as f64;
        let loop_u = offset_loop(&[chain[lo], chain[hi]], rho * nudge);
        // The loop must avoid the lift cut, the origin, and foreign roots.
        for w in loop_u.windows(2) {
            if point_segment_distance(Complex64::new(0.0, 0.0), w[0], w[1]) < 0.8 * rho {
                return Err(Error::PathingFailed("quotient loop too close to u = 0".into()));
            }
            for &(oa, ob) in
                std::iter::once(&(ray_a, ray_b)).chain(extra_obstacles.iter())
            {
                if crate::geometry::segment_intersection(w[0], w[1], oa, ob, 1e-12).is_some() {
                    return Err(Error::PathingFailed(
                        "quotient loop crosses a forbidden path".into(),
                    ));
                }
            }
        }
        let foreign: Vec<Complex64> = frame
            .quotient
            .branch_x()
            .iter()
            .copied()
            .filter(|z| (z - chain[lo]).norm() > 1e-12 && (z - chain[hi]).norm() > 1e-12)
            .collect();
        validate_loop_clearance(&loop_u, &foreign, 0.7 * rho)?;
        let lifted = frame.lift(&loop_u);
        let x_roots: Vec<Complex64> = frame
            .quotient
            .branch_x()
            .iter()
            .flat_map(|&e| {
                let w = sqrt_branch(e, frame.cut_angle);
                [w, -w]
            })
            .collect();
        validate_loop_clearance(&lifted, &x_roots, frame.rho_x)?;
        let y_start = frame.quotient.f().eval(loop_u[0]).sqrt();
        let cycle = Cycle::from_loop(frame.curve, &lifted, y_start)?;
        let label = if is_a { CycleLabel::A(idx) } else { CycleLabel::B(idx) };
        Ok(Chain::single(label, Rc::new(cycle)))
    };
    for i in 0..g_sigma {
        a.push(build(i, 2 * i, 2 * i + 1, true)?);
    }
    for i in 0..g_sigma {
        b_tilde.push(build(i, 2 * i + 1, 2 * i + 2, false)?);
    }
    Ok((a, b_tilde))
}

/// Infinity sheet reached by a cycle on its first passage through t = 0.
fn landing_sheet(curve: &Curve, cycle: &Cycle) -> Result<InfSheet, Error> {
    for trace in &cycle.traces {
        if trace.chart == Chart::Infinity {
            let s0 = crate::continuation::continue_sqrt(
                curve.f_infinity(),
                trace.ref_x,
                trace.ref_y,
                Complex64::new(0.0, 0.0),
            )?;
            return Ok(curve.infinity_sheet_of(s0));
        }
    }
    Err(Error::LiftFailed)
}

pub(super) fn build(
    curve: &Curve,
    inv: &Involution,
    pairing: &Pairing,
    params: &BasisParams,
) -> Result<RawBasis, Error> {
    let frame = Frame::new(curve, inv, params)?;
    let g_sigma = inv.g_sigma;
    let roots = frame.quotient.branch_x().to_vec();

    if inv.n == 1 {
        // No pair or connector cycles; the basis is entirely lifted from the
        // quotient. The single pair cycle is null-homologous and is kept only
        // for consistency checks.
        let (a, b_tilde) = lifted_quotient_basis(&frame, &roots, g_sigma, &[])?;
        let mut c_all = Vec::new();
        if let Ok((u_loop, _)) = based_loop_around(&frame, &roots, &[]) {
            let y_start = crate::continuation::continue_sqrt(
                curve.f(),
                Complex64::new(0.0, 0.0),
                frame.y0,
                sqrt_branch(u_loop[0], frame.cut_angle),
            )?;
            if let Ok(cy) = figure_eight_cycle(curve, &u_loop, frame.cut_angle, y_start) {
                c_all.push(Chain::single(CycleLabel::C(0), Rc::new(cy)));
            }
        }
        let s_proj = based_loop_around(&frame, &roots, &[]).ok().map(|(l, _)| l);
        return Ok(RawBasis {
            a,
            b_tilde,
            c: Vec::new(),
            d_tilde: Vec::new(),
            c_all,
            t_paths: Vec::new(),
            s_paths: Some(vec![s_proj]),
        });
    }

    // n = 2: one root is excluded from the quotient chain so that escape
    // paths and arrival-sheet detours can wind it without touching the
    // quotient basis loops.
    let opposite = Complex64::from_polar(1.0, frame.cut_angle + std::f64::consts::PI);
    let excl = roots
        .iter()
        .copied()
        .max_by(|a, b| {
            let pa = (a * opposite.conj()).re;
            let pb = (b * opposite.conj()).re;
            pa.partial_cmp(&pb).unwrap()
        })
        .ok_or(Error::LiftFailed)?;
    let chain: Vec<Complex64> = roots
        .iter()
        .copied()
        .filter(|z| (z - excl).norm() > 1e-12)
        .collect();

    let kind1 = pair_kind(&pairing.pairs[0]);
    let kind2 = pair_kind(&pairing.pairs[1]);

    // Extra forbidden paths for the quotient loops: the joining-path
    // projections that liv in the finite plane.
    let mut extra: Vec<(Complex64, Complex64)> = Vec::new();
    let excl_spur_dir = excl / excl.norm();
    extra.push((excl - excl_spur_dir * (3.0 * frame.rho_q), excl * 1.0e3));
    let (a, b_tilde) = lifted_quotient_basis(&frame, &chain, g_sigma, &extra)?;

    let y_plus = frame.y0;
    let mut t_paths: Vec<Vec<Complex64>> = Vec::new();
    let mut s_paths: Vec<Option<Vec<Complex64>>> = vec![None, None];

    let (c1, d1, c2) = match (kind1, kind2) {
        (PairKind::Finite, PairKind::Infinite) => {
            // C₁: figure-eight over the based loop around the chain.
            let (u_loop, _circle) = based_loop_around(&frame, &chain, &[(excl, 2.0 * frame.rho_q)])?;
            s_paths[0] = Some(u_loop.clone());
            let y_start = crate::continuation::continue_sqrt(
                curve.f(),
                Complex64::new(0.0, 0.0),
                y_plus,
                sqrt_branch(u_loop[0], frame.cut_angle),
            )?;
            let c1 = figure_eight_cycle(curve, &u_loop, frame.cut_angle, y_start)?;
            // D̃₁: axis cycle along the lifted escape ray, through the fiber
            // point of b₁².
            let y_b12 = frame.y_of(&pairing.pairs[0].1)?;
            let dir_x = Complex64::from_polar(1.0, frame.cut_angle / 2.0);
            let d1 = crate::cycles::axis_cycle(
                curve,
                dir_x,
                frame.delta_d,
                frame.radius_x,
                y_b12,
                None,
            )?;
            t_paths.push(vec![Complex64::new(0.0, 0.0), frame.cut_ray().1 * 1e-3]);
            // C₂ (consistency only): lasso around the excluded root.
            let c2 = excl_lasso(&frame, excl, None).ok();
            s_paths[1] = Some(vec![excl]);
            (c1, d1, c2)
        }
        (PairKind::Infinite, PairKind::Finite) => {
            // C₁: lasso around the excluded root, with arced passages at
            // infinity so crossings with the connector stay generic.
            let c1 = excl_lasso(&frame, excl, Some(0.25 / frame.radius_x))?;
            s_paths[0] = Some(vec![excl]);
            // D̃₁: axis cycle from infinity into the fiber over x = 0 at b₂¹.
            let y_b21 = frame.y_of(&pairing.pairs[1].0)?;
            let dir_x = Complex64::from_polar(1.0, frame.cut_angle / 2.0);
            let d1 = crate::cycles::axis_cycle(
                curve,
                dir_x,
                frame.delta_d,
                frame.radius_x,
                y_b21,
                None,
            )?;
            t_paths.push(vec![Complex64::new(0.0, 0.0), frame.cut_ray().1 * 1e-3]);
            let (u_loop, _) = based_loop_around(&frame, &chain, &[(excl, 2.0 * frame.rho_q)])?;
            s_paths[1] = Some(u_loop.clone());
            let y_start = crate::continuation::continue_sqrt(
                curve.f(),
                Complex64::new(0.0, 0.0),
                y_plus,
                sqrt_branch(u_loop[0], frame.cut_angle),
            )?;
            let c2 = figure_eight_cycle(curve, &u_loop, frame.cut_angle, y_start).ok();
            (c1, d1, c2)
        }
        (PairKind::Mixed, PairKind::Mixed) => {
            // C₁: axis cycle through the finite member of pair 1, landing at
            // its infinite member; a tight detour around the excluded root
            // flips the landing sheet when needed.
            let y_b1 = frame.y_of(&pairing.pairs[0].1)?;
            let want = match pairing.pairs[0].0 {
                SurfacePoint::Infinity(s) => s,
                _ => return Err(Error::NotFixedPoints),
            };
            let dir_x = Complex64::from_polar(1.0, frame.cut_angle / 2.0);
            let plain = crate::cycles::axis_cycle(
                curve,
                dir_x,
                frame.delta_c,
                frame.radius_x,
                y_b1,
                None,
            )?;
            let c1 = if landing_sheet(curve, &plain)? == want {
                plain
            } else {
                detoured_axis_cycle(&frame, dir_x, excl, y_b1)?
            };
            s_paths[0] = Some(vec![Complex64::new(0.0, 0.0), frame.cut_ray().1 * 1e-3]);
            // D̃₁: figure-eight winding the excluded root, connecting the two
            // finite fixed points.
            let y_b12 = frame.y_of(&pairing.pairs[0].1)?;
            let u_loop = excl_based_loop(&frame, excl)?;
            let y_start = crate::continuation::continue_sqrt(
                curve.f(),
                Complex64::new(0.0, 0.0),
                y_b12,
                sqrt_branch(u_loop[0], frame.cut_angle),
            )?;
            let d1 = figure_eight_cycle(curve, &u_loop, frame.cut_angle, y_start)?;
            t_paths.push(u_loop);
            (c1, d1, None)
        }
        _ => return Err(Error::NotFixedPoints),
    };

    let mut c_all = vec![Chain::single(CycleLabel::C(0), Rc::new(c1))];
    let c = vec![Chain { label: CycleLabel::C(0), terms: c_all[0].terms.clone() }];
    if let Some(c2) = c2 {
        c_all.push(Chain::single(CycleLabel::C(1), Rc::new(c2)));
    }
    let d_tilde = vec![Chain::single(CycleLabel::DTilde(0), Rc::new(d1))];

    Ok(RawBasis { a, b_tilde, c, d_tilde, c_all, t_paths, s_paths: Some(s_paths) })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Finite,
    Infinite,
    Mixed,
}

fn pair_kind(pair: &(SurfacePoint, SurfacePoint)) -> PairKind {
    match (pair.0.is_infinite(), pair.1.is_infinite()) {
        (false, false) => PairKind::Finite,
        (true, true) => PairKind::Infinite,
        _ => PairKind::Mixed,
    }
}

/// A u-plane loop based near 0 that encircles all of `enclosed` once: a spur
/// from δ·direction to the circle entry, the full circle, and the spur back.
/// Returns the loop (first vertex = last vertex = the based point) .
fn based_loop_around(
    frame: &Frame,
    enclosed: &[Complex64],
    keep_out: &[(Complex64, f64)],
) -> Result<(Vec<Complex64>, (Complex64, f64)), Error> {
    let min = |f: fn(&Complex64) -> f64| enclosed.iter().map(f).fold(f64::INFINITY, f64::min);
    let max = |f: fn(&Complex64) -> f64| enclosed.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let mc = Complex64::new(
        0.5 * (min(|z| z.re) + max(|z| z.re)),
        0.5 * (min(|z| z.im) + max(|z| z.im)),
    );
    let r_in = enclosed.iter().map(|z| (z - mc).norm()).fold(0.0, f64::max);
    let rc = r_in + 3.0 * frame.rho_q;
    if mc.norm() < rc + 2.0 * frame.rho_q {
        return Err(Error::PathingFailed("u = 0 has no clearance from the root cluster".into()));
    }
    for &(p, r) in keep_out {
        if (p - mc).norm() < rc + r {
            return Err(Error::PathingFailed("excluded point inside the cluster loop".into()));
        }
    }
    let m_hat = mc / mc.norm();
    let entry = mc - m_hat * rc;
    // Spur clearance from the enclosed roots and the cut ray.
    let (ray_a, ray_b) = frame.cut_ray();
    let u_delta = entry / entry.norm() * (frame.delta_c * frame.delta_c);
    for &z in enclosed {
        if point_segment_distance(z, u_delta, entry) < 0.8 * frame.rho_q {
            return Err(Error::PathingFailed("spur grazes a branch point".into()));
        }
    }
    if crate::geometry::segment_intersection(u_delta, entry, ray_a, ray_b, 1e-12).is_some() {
        return Err(Error::PathingFailed("spur crosses the branch cut".into()));
    }
    let mut loop_u = vec![u_delta, entry];
    let a0 = (entry - mc).arg();
    loop_u.extend(
        arc_points(mc, rc, a0, a0 + 2.0 * std::f64::consts::PI, CIRCLE_SEGS)
            .into_iter()
            .skip(1),
    );
    loop_u.push(u_delta);
    Ok((loop_u, (mc, rc)))
}

/// A u-plane loop based near 0 that winds only the excluded root, routing
/// around the chain cluster when the straight spur is blocked.
fn excl_based_loop(frame: &Frame, excl: Complex64) -> Result<Vec<Complex64>, Error> {
    let r_l = 2.5 * frame.rho_q;
    let e_hat = excl / excl.norm();
    let spur_target = excl - e_hat * r_l;
    let u_delta = e_hat * (frame.delta_d * frame.delta_d);
    let mut obs = Obstacles::new();
    for &z in frame.quotient.branch_x() {
        if (z - excl).norm() > 1e-12 {
            obs.add_point(z, 2.2 * frame.rho_q);
        }
    }
    let (ray_a, ray_b) = frame.cut_ray();
    obs.add_capsule(ray_a, ray_b, 0.8 * frame.rho_q);
    let spur = route(u_delta, spur_target, &obs, 3.0 * frame.rho_q)?;
    let a0 = (spur_target - excl).arg();
    let mut loop_u = spur.clone();
    loop_u.extend(
        arc_points(excl, r_l, a0, a0 + 2.0 * std::f64::consts::PI, CIRCLE_SEGS)
            .into_iter()
            .skip(1),
    );
    loop_u.extend(spur.iter().rev().skip(1));
    Ok(loop_u)
}

/// Lasso around the excluded root's lift: in from infinity, once around
/// √excl, back out, mirrored through the second passage at infinity.
fn excl_lasso(frame: &Frame, excl: Complex64, inf_arc: Option<f64>) -> Result<Cycle, Error> {
    let w = sqrt_branch(excl, frame.cut_angle);
    let w_hat = w / w.norm();
    let x_far = w_hat * frame.radius_x;
    let r_l = 1.2 * frame.rho_x.max(0.08 * w.norm());
    let approach = w + w_hat * r_l;
    let a0 = (approach - w).arg();
    let mut finite_loop = vec![x_far, approach];
    finite_loop.extend(
        arc_points(w, r_l, a0, a0 + 2.0 * std::f64::consts::PI, CIRCLE_SEGS)
            .into_iter()
            .skip(1),
    );
    finite_loop.push(x_far);
    let y_entry = frame.curve.f().eval(x_far).sqrt();
    lasso_cycle(frame.curve, w_hat, frame.radius_x, &finite_loop, y_entry, inf_arc)
}

/// Axis cycle whose outbound ray makes a tight detour once around the lift
/// of the excluded root, flipping the arrival sheet at infinity.
fn detoured_axis_cycle(
    frame: &Frame,
    dir_x: Complex64,
    excl: Complex64,
    y_near_zero: Complex64,
) -> Result<Cycle, Error> {
    let w = sqrt_branch(excl, frame.cut_angle);
    let r_l = 1.2 * frame.rho_x.max(0.08 * w.norm());
    let branch_x: Vec<Complex64> = frame
        .quotient
        .branch_x()
        .iter()
        .flat_map(|&e| {
            let v = sqrt_branch(e, frame.cut_angle);
            [v, -v]
        })
        .collect();
    // Leave the axis at the radius of w, route to the detour circle, wind it,
    // come back, and continue outward.
    let x_a = dir_x * w.norm();
    let mut obs = Obstacles::new();
    for &z in &branch_x {
        if (z - w).norm() > 1e-12 {
            obs.add_point(z, 2.0 * frame.rho_x);
        }
    }
    let approach = w + (x_a - w) / (x_a - w).norm() * r_l;
    let spur = route(x_a, approach, &obs, 4.0 * frame.rho_x)?;
    let a0 = (approach - w).arg();
    let mut outbound = vec![dir_x * frame.delta_c, x_a];
    outbound.extend(spur.iter().skip(1));
    outbound.extend(
        arc_points(w, r_l, a0, a0 + 2.0 * std::f64::consts::PI, CIRCLE_SEGS)
            .into_iter()
            .skip(1),
    );
    outbound.extend(spur.iter().rev().skip(1));
    outbound.push(dir_x * frame.radius_x);
    mirror_pass_cycle(frame.curve, &outbound, y_near_zero, None)
}
