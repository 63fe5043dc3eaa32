//! The involution-adapted symplectic homology basis.
//!
//! Branch points of the covering are sorted into pairs joined by disjoint
//! paths. Each pair carries a cycle C_j realized as an offset loop around
//! the pair (equivalently, the retraced lift of the joining path), and
//! consecutive pairs are threaded by retraced connector cycles D̃_j with
//! C_j ⋆ D̃_j = 1 and C_{j+1} ⋆ D̃_j = −1; the partial sums
//! D_j = Σ_{i≥j} D̃_i then satisfy C_k ⋆ D_j = δ_{kj}. When the quotient
//! has positive genus, a symplectic quotient basis is built away from all
//! joining paths and lifted to the two sheets, contributing the A- and
//! B-cycles and their σ-images.
//!
//! Intersection numbers are computed from signed planar crossings of the
//! cycle projections, keeping only crossings where the two branch values
//! agree.

use crate::continuation::continue_sqrt;
use crate::curve::{Curve, Involution, InvolutionKind, SurfacePoint};
use crate::cycles::{offset_loop, through_cycle, validate_loop_clearance, Cycle, CIRCLE_SEGS};
use crate::error::Error;
use crate::geometry::{arc_points, point_segment_distance, route, Obstacles};
use crate::poly::Polynomial;
use crate::quadrature::{Chart, Leg, PathStart, TracedPath};
use num_complex::Complex64;
use std::rc::Rc;

/// Sheet tag for plane paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Plus,
    Minus,
}

/// A polyline in the x-plane (or quotient u-plane) with a starting sheet.
#[derive(Clone, Debug)]
pub struct PlanePath {
    pub vertices: Vec<Complex64>,
    pub start_sheet: Sheet,
}

/// Labels of the adapted basis cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleLabel {
    A(usize),
    SigmaA(usize),
    B(usize),
    SigmaB(usize),
    C(usize),
    DTilde(usize),
    D(usize),
}

impl std::fmt::Display for CycleLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CycleLabel::A(i) => write!(f, "A{}", i + 1),
            CycleLabel::SigmaA(i) => write!(f, "sA{}", i + 1),
            CycleLabel::B(i) => write!(f, "B{}", i + 1),
            CycleLabel::SigmaB(i) => write!(f, "sB{}", i + 1),
            CycleLabel::C(i) => write!(f, "C{}", i + 1),
            CycleLabel::DTilde(i) => write!(f, "Dt{}", i + 1),
            CycleLabel::D(i) => write!(f, "D{}", i + 1),
        }
    }
}

/// An integer combination of realized cycles.
#[derive(Clone, Debug)]
pub struct Chain {
    pub label: CycleLabel,
    pub terms: Vec<(i64, Rc<Cycle>)>,
}

impl Chain {
    pub fn single(label: CycleLabel, cycle: Rc<Cycle>) -> Chain {
        Chain { label, terms: vec![(1, cycle)] }
    }

    pub fn negated(&self) -> Chain {
        Chain {
            label: self.label,
            terms: self.terms.iter().map(|(c, r)| (-c, r.clone())).collect(),
        }
    }

    pub fn sum(label: CycleLabel, parts: &[&Chain]) -> Chain {
        let mut terms = Vec::new();
        for p in parts {
            terms.extend(p.terms.iter().cloned());
        }
        Chain { label, terms }
    }
}

/// Tunable construction parameters.
#[derive(Clone, Copy, Debug)]
pub struct BasisParams {
    /// Path clearance as a fraction of the minimal branch separation.
    pub clearance_factor: f64,
    /// Detour arc radius as a fraction of the minimal branch separation.
    pub detour_factor: f64,
    /// Truncation radius for paths to infinity, in units of the curve scale.
    pub truncation_factor: f64,
    /// Attempt budget for the pairing search.
    pub pairing_attempts: usize,
}

impl Default for BasisParams {
    fn default() -> Self {
        BasisParams {
            clearance_factor: 0.1,
            detour_factor: 0.25,
            truncation_factor: 10.0,
            pairing_attempts: 50,
        }
    }
}

/// A branch-point pairing with the joining-path projections.
#[derive(Clone, Debug)]
pub struct Pairing {
    /// The n pairs (b_j¹, b_j²); the forced pair, when given, is last.
    pub pairs: Vec<(SurfacePoint, SurfacePoint)>,
    /// Quotient-plane projections of the joining paths, where materialized.
    pub s_paths: Vec<Option<Vec<Complex64>>>,
    pub forced: bool,
}

/// The full adapted basis.
#[derive(Debug)]
pub struct CycleBasis {
    /// 2g cycles ordered (A, σA, C₁..C_{n−1}, B, σB, D₁..D_{n−1}).
    pub cycles: Vec<Chain>,
    /// All n pair cycles C₁..C_n (when realizable), for homology checks.
    pub c_all: Vec<Chain>,
    /// Integer intersection matrix of `cycles`.
    pub intersection: Vec<Vec<i64>>,
    pub pairing: Pairing,
    /// Quotient-plane projections of the connector paths t_j.
    pub t_paths: Vec<Vec<Complex64>>,
    pub g: usize,
    pub g_sigma: usize,
    pub n: usize,
}

impl CycleBasis {
    /// The standard symplectic matrix in the basis ordering.
    pub fn standard_symplectic(g: usize) -> Vec<Vec<i64>> {
        let mut j = vec![vec![0i64; 2 * g]; 2 * g];
        for i in 0..g {
            j[i][g + i] = 1;
            j[g + i][i] = -1;
        }
        j
    }

    pub fn is_standard_symplectic(&self) -> bool {
        self.intersection == Self::standard_symplectic(self.g)
    }

    pub fn chain(&self, label: CycleLabel) -> Option<&Chain> {
        self.cycles.iter().find(|c| c.label == label)
    }
}

// ---------------------------------------------------------------------------
// Intersection numbers
// ---------------------------------------------------------------------------

fn chart_poly<'a>(curve: &'a Curve, chart: Chart) -> &'a Polynomial {
    match chart {
        Chart::Finite => curve.f(),
        Chart::Infinity => curve.f_infinity(),
    }
}

fn cycle_intersection(curve: &Curve, a: &Cycle, b: &Cycle) -> Result<i64, Error> {
    let guard = 1e-7;
    let mut total = 0i64;
    for ta in &a.traces {
        for tb in &b.traces {
            if ta.chart != tb.chart {
                continue;
            }
            let (a0, a1) = ta.seg;
            let (b0, b1) = tb.seg;
            let d1 = a1 - a0;
            let d2 = b1 - b0;
            if d1.norm() == 0.0 || d2.norm() == 0.0 {
                continue;
            }
            let denom = crate::geometry::cross(d1, d2);
            let r = b0 - a0;
            if denom.abs() <= 1e-12 * d1.norm() * d2.norm() {
                // Parallel: degenerate only when genuinely collinear and
                // overlapping.
                if crate::geometry::cross(r, d1).abs()
                    <= 1e-10 * d1.norm() * (r.norm() + d2.norm())
                {
                    let t0 = (r.conj() * d1).re / d1.norm_sqr();
                    let t1 = ((b1 - a0).conj() * d1).re / d1.norm_sqr();
                    let (lo, hi) = (t0.min(t1), t0.max(t1));
                    if hi > guard && lo < 1.0 - guard {
                        return Err(Error::DegeneratePosition);
                    }
                }
                continue;
            }
            let t1 = crate::geometry::cross(r, d2) / denom;
            let t2 = crate::geometry::cross(r, d1) / denom;
            if t1 <= -guard || t1 >= 1.0 + guard || t2 <= -guard || t2 >= 1.0 + guard {
                continue;
            }
            if t1 < guard || t1 > 1.0 - guard || t2 < guard || t2 > 1.0 - guard {
                return Err(Error::DegeneratePosition);
            }
            let point = a0 + d1 * t1;
            let fp = chart_poly(curve, ta.chart);
            let ya = continue_sqrt(fp, ta.ref_x, ta.ref_y, point)?;
            let yb = continue_sqrt(fp, tb.ref_x, tb.ref_y, point)?;
            let same = (ya - yb).norm();
            let opp = (ya + yb).norm();
            if same <= 0.3 * opp {
                total += if denom > 0.0 { 1 } else { -1 };
            } else if opp <= 0.3 * same {
                // opposite sheets: no contribution
            } else {
                return Err(Error::DegeneratePosition);
            }
        }
    }
    Ok(total)
}

fn cycle_pair_intersection(curve: &Curve, a: &Rc<Cycle>, b: &Rc<Cycle>) -> Result<i64, Error> {
    match cycle_intersection(curve, a, b) {
        Ok(v) => Ok(v),
        Err(Error::DegeneratePosition) => {
            let scale = curve.scale();
            let perturb = |cy: &Cycle, k: usize| -> Result<Cycle, Error> {
                if cy.has_root_legs() {
                    Err(Error::DegeneratePosition)
                } else if cy.has_infinity_legs() {
                    cy.rotated(curve, 3e-4 * (k as f64 + 1.0))
                } else {
                    let ang = 2.399963 * (k as f64 + 1.0);
                    cy.translated(curve, Complex64::from_polar(1e-6 * scale * (k as f64 + 1.0), ang))
                }
            };
            for attempt in 0..8 {
                let jittered = perturb(b, attempt)
                    .map(|j| (a.clone(), Rc::new(j)))
                    .or_else(|_| perturb(a, attempt).map(|j| (Rc::new(j), b.clone())));
                if let Ok((ja, jb)) = jittered {
                    if let Ok(v) = cycle_intersection(curve, &ja, &jb) {
                        return Ok(v);
                    }
                }
            }
            Err(Error::DegeneratePosition)
        }
        Err(e) => Err(e),
    }
}

/// Intersection number of two chains, extended bilinearly over their terms.
pub fn intersection_number(curve: &Curve, a: &Chain, b: &Chain) -> Result<i64, Error> {
    let mut total = 0i64;
    for (ca, ra) in &a.terms {
        for (cb, rb) in &b.terms {
            if Rc::ptr_eq(ra, rb) {
                continue; // a cycle does not intersect itself
            }
            total += ca * cb * cycle_pair_intersection(curve, ra, rb)?;
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// σ action on cycles
// ---------------------------------------------------------------------------

fn sigma_push_cycle(curve: &Curve, inv: &Involution, cy: &Cycle) -> Result<Cycle, Error> {
    let map = |z: Complex64| inv.apply_x(z);
    let legs: Vec<Leg> = cy
        .path
        .legs
        .iter()
        .map(|leg| match *leg {
            // Both involutions act on the chart at infinity by the same
            // coordinate map as on x (t = 1/x).
            Leg::Seg { chart, a, b } => Leg::Seg { chart, a: map(a), b: map(b) },
            Leg::IntoRoot { chart, from, root } => {
                Leg::IntoRoot { chart, from: map(from), root: map(root) }
            }
            Leg::OutOfRoot { chart, root, to } => {
                Leg::OutOfRoot { chart, root: map(root), to: map(to) }
            }
        })
        .collect();
    let start = match cy.path.start {
        PathStart::Regular { x, y } => PathStart::Regular { x: map(x), y: inv.apply_y(y) },
        other => other,
    };
    Cycle::new(curve, TracedPath { start, legs })
}

/// Image of a chain under the induced map on homology.
pub fn sigma_push(curve: &Curve, inv: &Involution, chain: &Chain) -> Result<Chain, Error> {
    let mut terms = Vec::with_capacity(chain.terms.len());
    for (c, r) in &chain.terms {
        terms.push((*c, Rc::new(sigma_push_cycle(curve, inv, r)?)));
    }
    Ok(Chain { label: chain.label, terms })
}

// ---------------------------------------------------------------------------
// Branch pairing
// ---------------------------------------------------------------------------

fn sorted_points(points: &[SurfacePoint]) -> Vec<SurfacePoint> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    v
}

fn finite_x(p: &SurfacePoint) -> Option<Complex64> {
    match p {
        SurfacePoint::Finite { x, .. } => Some(*x),
        _ => None,
    }
}

/// Enumerates perfect matchings of `points` in lexicographic order, calling
/// `check` on each until it accepts or the budget runs out.
fn search_pairings(
    points: &[SurfacePoint],
    budget: usize,
    check: &mut dyn FnMut(&[(SurfacePoint, SurfacePoint)]) -> bool,
) -> Option<Vec<(SurfacePoint, SurfacePoint)>> {
    fn recurse(
        remaining: &mut Vec<SurfacePoint>,
        current: &mut Vec<(SurfacePoint, SurfacePoint)>,
        tried: &mut usize,
        budget: usize,
        check: &mut dyn FnMut(&[(SurfacePoint, SurfacePoint)]) -> bool,
    ) -> Option<Vec<(SurfacePoint, SurfacePoint)>> {
        if remaining.is_empty() {
            *tried += 1;
            if check(current) {
                return Some(current.clone());
            }
            return None;
        }
        let first = remaining.remove(0);
        for k in 0..remaining.len() {
            if *tried >= budget {
                break;
            }
            let partner = remaining.remove(k);
            current.push((first, partner));
            if let Some(found) = recurse(remaining, current, tried, budget, check) {
                return Some(found);
            }
            current.pop();
            remaining.insert(k, partner);
        }
        remaining.insert(0, first);
        None
    }
    let mut rem = points.to_vec();
    let mut cur = Vec::new();
    let mut tried = 0usize;
    recurse(&mut rem, &mut cur, &mut tried, budget, check)
}

/// Clearance test for a candidate set of finite joining segments: segments
/// keep `sep` away from foreign branch points and from each other.
fn segments_admissible(
    pairs: &[(SurfacePoint, SurfacePoint)],
    all_branch: &[Complex64],
    sep: f64,
) -> bool {
    let segs: Vec<(Complex64, Complex64)> = pairs
        .iter()
        .filter_map(|(a, b)| Some((finite_x(a)?, finite_x(b)?)))
        .collect();
    for (a, b) in &segs {
        for &p in all_branch {
            if (p - a).norm() < 1e-12 || (p - b).norm() < 1e-12 {
                continue;
            }
            if point_segment_distance(p, *a, *b) < sep {
                return false;
            }
        }
    }
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (a1, b1) = segs[i];
            let (a2, b2) = segs[j];
            if crate::geometry::segment_intersection(a1, b1, a2, b2, 1e-12).is_some() {
                return false;
            }
            let d = point_segment_distance(a2, a1, b1)
                .min(point_segment_distance(b2, a1, b1))
                .min(point_segment_distance(a1, a2, b2))
                .min(point_segment_distance(b1, a2, b2));
            if d < sep {
                return false;
            }
        }
    }
    true
}

/// Pairs the branch points of the covering and materializes the joining
/// paths. A forced pair is placed last; on the hyperelliptic quotient the
/// pairing is chosen so every finite joining segment has clearance, retrying
/// lexicographically within the attempt budget.
pub fn pair_branch_points(
    curve: &Curve,
    inv: &Involution,
    forced: Option<(SurfacePoint, SurfacePoint)>,
    params: &BasisParams,
) -> Result<Pairing, Error> {
    let tol = 1e-7 * curve.scale();
    if let Some((p1, p2)) = &forced {
        if !inv.is_fixed_point(p1, tol) || !inv.is_fixed_point(p2, tol) || p1.approx_eq(p2, tol) {
            return Err(Error::NotFixedPoints);
        }
    }
    match inv.kind {
        InvolutionKind::Hyperelliptic => {
            let mut rest: Vec<SurfacePoint> = inv.fixed_points.clone();
            let forced_pair = forced.map(|(p1, p2)| {
                rest.retain(|q| !q.approx_eq(&p1, tol) && !q.approx_eq(&p2, tol));
                (p1, p2)
            });
            let rest = sorted_points(&rest);
            let sep = 2.5 * params.clearance_factor * curve.min_branch_separation();
            let branch: Vec<Complex64> = curve.branch_x().to_vec();
            let mut check = |cand: &[(SurfacePoint, SurfacePoint)]| -> bool {
                let mut all: Vec<(SurfacePoint, SurfacePoint)> = cand.to_vec();
                if let Some(fp) = &forced_pair {
                    all.push(*fp);
                }
                segments_admissible(&all, &branch, sep)
            };
            let found = search_pairings(&rest, params.pairing_attempts, &mut check)
                .ok_or_else(|| Error::PathingFailed("no admissible branch pairing".into()))?;

            // Order: a pair containing infinity goes last by default, first
            // when a forced pair must be last; infinity sits second in a
            // trailing pair and first in a leading pair so the connector
            // endpoints stay finite.
            let mut finite_pairs: Vec<(SurfacePoint, SurfacePoint)> = Vec::new();
            let mut inf_pair: Option<(SurfacePoint, SurfacePoint)> = None;
            for (a, b) in found {
                match (a.is_infinite(), b.is_infinite()) {
                    (false, false) => finite_pairs.push((a, b)),
                    (false, true) => inf_pair = Some((a, b)),
                    (true, false) => inf_pair = Some((b, a)),
                    (true, true) => unreachable!("one point at infinity"),
                }
            }
            let mut pairs: Vec<(SurfacePoint, SurfacePoint)> = Vec::new();
            match (&forced_pair, inf_pair) {
                (None, Some((fin, inf))) => {
                    pairs.extend(finite_pairs);
                    pairs.push((fin, inf));
                }
                (None, None) => pairs.extend(finite_pairs),
                (Some(fp), Some((fin, inf))) => {
                    if fp.0.is_infinite() || fp.1.is_infinite() {
                        pairs.extend(finite_pairs);
                        // forced pair carries infinity: keep the finite
                        // member first.
                        let fp = if fp.0.is_infinite() { (fp.1, fp.0) } else { *fp };
                        pairs.push(fp);
                        let s_paths = vec![None; pairs.len()];
                        return Ok(Pairing { pairs, s_paths, forced: true });
                    }
                    // infinity pair leads, with the point at infinity first
                    pairs.push((inf, fin));
                    pairs.extend(finite_pairs);
                    pairs.push(*fp);
                }
                (Some(fp), None) => {
                    pairs.extend(finite_pairs);
                    pairs.push(*fp);
                }
            }
            let s_paths = pairs
                .iter()
                .map(|(a, b)| Some(vec![finite_x(a)?, finite_x(b)?]))
                .collect();
            Ok(Pairing { pairs, s_paths, forced: forced.is_some() })
        }
        InvolutionKind::EvenSymmetry => {
            let fixed = &inv.fixed_points;
            if inv.n == 1 {
                let sorted = sorted_points(fixed);
                return Ok(Pairing {
                    pairs: vec![(sorted[1], sorted[0])],
                    s_paths: vec![None],
                    forced: forced.is_some(),
                });
            }
            // n = 2: split the four fixed points into the forced pair (or
            // the finite pair by default) and its complement.
            let (p1, p2) = match forced {
                Some(fp) => fp,
                None => {
                    let finite: Vec<SurfacePoint> =
                        fixed.iter().copied().filter(|p| !p.is_infinite()).collect();
                    (finite[0], finite[1])
                }
            };
            let mut rest: Vec<SurfacePoint> = fixed
                .iter()
                .copied()
                .filter(|q| !q.approx_eq(&p1, tol) && !q.approx_eq(&p2, tol))
                .collect();
            if rest.len() != 2 {
                return Err(Error::NotFixedPoints);
            }
            rest = sorted_points(&rest);
            // Connector endpoints should be finite when possible: the first
            // pair exposes a finite second member, the last a finite first
            // member.
            let pair1 = match (rest[0].is_infinite(), rest[1].is_infinite()) {
                (true, false) => (rest[0], rest[1]),
                (false, true) => (rest[1], rest[0]),
                _ => (rest[0], rest[1]),
            };
            let pair2 = match (p1.is_infinite(), p2.is_infinite()) {
                (true, false) => (p2, p1),
                _ => (p1, p2),
            };
            Ok(Pairing {
                pairs: vec![pair1, pair2],
                s_paths: vec![None, None],
                forced: forced.is_some(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Basis assembly
// ---------------------------------------------------------------------------

struct RawBasis {
    a: Vec<Chain>,
    b_tilde: Vec<Chain>,
    c: Vec<Chain>,
    d_tilde: Vec<Chain>,
    c_all: Vec<Chain>,
    t_paths: Vec<Vec<Complex64>>,
    /// Quotient-plane joining paths, when the builder materializes them.
    s_paths: Option<Vec<Option<Vec<Complex64>>>>,
}

/// Builds the adapted symplectic basis for the given pairing.
pub fn build_adapted_basis(
    curve: &Curve,
    inv: &Involution,
    pairing: &Pairing,
    params: &BasisParams,
) -> Result<CycleBasis, Error> {
    let raw = match inv.kind {
        InvolutionKind::Hyperelliptic => build_hyperelliptic(curve, inv, pairing, params)?,
        InvolutionKind::EvenSymmetry => build_even(curve, inv, pairing, params)?,
    };
    assemble(curve, inv, pairing, raw)
}

fn assemble(
    curve: &Curve,
    inv: &Involution,
    pairing: &Pairing,
    raw: RawBasis,
) -> Result<CycleBasis, Error> {
    let g = curve.genus();
    let g_sigma = inv.g_sigma;
    let n = inv.n;
    let mut pairing = pairing.clone();
    if let Some(sp) = &raw.s_paths {
        pairing.s_paths = sp.clone();
    }
    let pairing = &pairing;
    let mut c = raw.c;
    let mut d_tilde = raw.d_tilde;
    let mut a = raw.a;
    let mut b_tilde = raw.b_tilde;

    // Orient the connectors against the pair cycles; the C orientations come
    // from the construction and stay fixed.
    for j in 0..d_tilde.len() {
        let v = intersection_number(curve, &c[j], &d_tilde[j])?;
        if v.abs() != 1 {
            if std::env::var("PRYM_DEBUG_BASIS").is_ok() {
                eprintln!("chain-fix: C{} * Dt{} = {v}", j + 1, j + 1);
            }
            return Err(Error::BasisDegenerate);
        }
        if v == -1 {
            d_tilde[j] = d_tilde[j].negated();
        }
        if j + 1 < c.len() {
            let w = intersection_number(curve, &c[j + 1], &d_tilde[j])?;
            if w != -1 {
                if std::env::var("PRYM_DEBUG_BASIS").is_ok() {
                    eprintln!("chain-fix: C{} * Dt{} = {w} (want -1)", j + 2, j + 1);
                }
                return Err(Error::BasisDegenerate);
            }
        }
    }
    // Orient the quotient chain: B̃_i against A_i, then A_{i+1} against B̃_i.
    for i in 0..b_tilde.len() {
        let v = intersection_number(curve, &a[i], &b_tilde[i])?;
        if v.abs() != 1 {
            return Err(Error::BasisDegenerate);
        }
        if v == -1 {
            b_tilde[i] = b_tilde[i].negated();
        }
        if i + 1 < a.len() {
            let w = intersection_number(curve, &a[i + 1], &b_tilde[i])?;
            if w.abs() != 1 {
                return Err(Error::BasisDegenerate);
            }
            if w == 1 {
                a[i + 1] = a[i + 1].negated();
                // the flipped A must re-pair with its own connector later,
                // which the sign fixing above handles in order; re-check the
                // current relation.
                let w2 = intersection_number(curve, &a[i + 1], &b_tilde[i])?;
                if w2 != -1 {
                    return Err(Error::BasisDegenerate);
                }
            }
        }
    }

    // σ-images of the final A and B̃ representatives.
    let sigma_a: Vec<Chain> = a
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            sigma_push(curve, inv, ch).map(|mut s| {
                s.label = CycleLabel::SigmaA(i);
                s
            })
        })
        .collect::<Result<_, _>>()?;
    let sigma_b_tilde: Vec<Chain> = b_tilde
        .iter()
        .map(|ch| sigma_push(curve, inv, ch))
        .collect::<Result<_, _>>()?;

    // Telescoped partial sums make the pairing diagonal.
    let b: Vec<Chain> = (0..b_tilde.len())
        .map(|i| {
            let parts: Vec<&Chain> = b_tilde[i..].iter().collect();
            Chain::sum(CycleLabel::B(i), &parts)
        })
        .collect();
    let sigma_b: Vec<Chain> = (0..sigma_b_tilde.len())
        .map(|i| {
            let parts: Vec<&Chain> = sigma_b_tilde[i..].iter().collect();
            Chain::sum(CycleLabel::SigmaB(i), &parts)
        })
        .collect();
    let d: Vec<Chain> = (0..d_tilde.len())
        .map(|j| {
            let parts: Vec<&Chain> = d_tilde[j..].iter().collect();
            Chain::sum(CycleLabel::D(j), &parts)
        })
        .collect();

    let mut cycles: Vec<Chain> = Vec::with_capacity(2 * g);
    cycles.extend(a);
    cycles.extend(sigma_a);
    cycles.extend(c.drain(..));
    cycles.extend(b);
    cycles.extend(sigma_b);
    cycles.extend(d);
    if cycles.len() != 2 * g {
        return Err(Error::BasisDegenerate);
    }

    let mut matrix = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..2 * g {
        for j in (i + 1)..2 * g {
            let v = intersection_number(curve, &cycles[i], &cycles[j])?;
            matrix[i][j] = v;
            matrix[j][i] = -v;
        }
    }
    let basis = CycleBasis {
        cycles,
        c_all: raw.c_all,
        intersection: matrix,
        pairing: pairing.clone(),
        t_paths: raw.t_paths,
        g,
        g_sigma,
        n,
    };
    if !basis.is_standard_symplectic() {
        if std::env::var("PRYM_DEBUG_BASIS").is_ok() {
            eprintln!("labels: {:?}", basis.cycles.iter().map(|c| c.label.to_string()).collect::<Vec<_>>());
            for row in &basis.intersection {
                eprintln!("{row:?}");
            }
        }
        return Err(Error::BasisDegenerate);
    }
    Ok(basis)
}

// ---------------------------------------------------------------------------
// Hyperelliptic construction
// ---------------------------------------------------------------------------

/// Direction of the widest angular gap of `targets` as seen from `origin`.
fn widest_gap_direction(origin: Complex64, targets: &[Complex64]) -> f64 {
    let mut angles: Vec<f64> = targets
        .iter()
        .filter(|&&t| (t - origin).norm() > 1e-12)
        .map(|&t| (t - origin).arg())
        .collect();
    if angles.is_empty() {
        return 0.5;
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = (0.0, angles[0]);
    for k in 0..angles.len() {
        let next = if k + 1 < angles.len() {
            angles[k + 1]
        } else {
            angles[0] + 2.0 * std::f64::consts::PI
        };
        let gap = next - angles[k];
        if gap > best.0 {
            best = (gap, angles[k] + gap * 0.5);
        }
    }
    best.1
}

/// Joining-path geometry of one pair: a finite segment, or a ray to infinity.
#[derive(Clone)]
enum Cut {
    Segment(Complex64, Complex64),
    Ray { base: Complex64, dir: Complex64 },
}

impl Cut {
    /// Finite anchor point of the cut and the outward direction along which
    /// a connector leaves it. Connectors exit a cut beyond its second point
    /// and enter the next one before its first point; for a ray cut the
    /// anchor is its finite base and the outward direction opposes the ray.
    fn anchor(&self, entry: bool) -> (Complex64, Complex64) {
        match self {
            Cut::Segment(a, b) => {
                if entry {
                    let d = (a - b) / (a - b).norm();
                    (*a, d)
                } else {
                    let d = (b - a) / (b - a).norm();
                    (*b, d)
                }
            }
            Cut::Ray { base, dir } => (*base, -dir),
        }
    }
}

fn build_hyperelliptic(
    curve: &Curve,
    inv: &Involution,
    pairing: &Pairing,
    params: &BasisParams,
) -> Result<RawBasis, Error> {
    let n = inv.n;
    let min_sep = curve.min_branch_separation();
    let rho = params.clearance_factor * min_sep;
    let scale = curve.scale();

    let mut cuts: Vec<Cut> = Vec::with_capacity(n);
    for (a, b) in &pairing.pairs {
        match (finite_x(a), finite_x(b)) {
            (Some(xa), Some(xb)) => cuts.push(Cut::Segment(xa, xb)),
            (Some(xa), None) | (None, Some(xa)) => {
                let others: Vec<Complex64> = curve
                    .branch_x()
                    .iter()
                    .copied()
                    .filter(|&z| (z - xa).norm() > 1e-12)
                    .collect();
                let theta = widest_gap_direction(xa, &others);
                cuts.push(Cut::Ray { base: xa, dir: Complex64::from_polar(1.0, theta) });
            }
            (None, None) => return Err(Error::PathingFailed("two points at infinity".into())),
        }
    }

    // Reference sheet: continue the principal branch from a far basepoint to
    // any target along cut-avoiding routes.
    let x_ref = Complex64::new(2.4, 1.7) * (1.35 * scale);
    let y_ref = curve.f().eval(x_ref).sqrt();
    let ray_len = 2.0 * params.truncation_factor * scale;
    let mut cut_obstacles = Obstacles::new();
    for cut in &cuts {
        match cut {
            Cut::Segment(a, b) => cut_obstacles.add_capsule(*a, *b, 0.45 * rho),
            Cut::Ray { base, dir } => {
                cut_obstacles.add_capsule(*base, base + dir * ray_len, 0.45 * rho)
            }
        }
    }
    let sheet_at = |target: Complex64| -> Result<Complex64, Error> {
        let path = route(x_ref, target, &cut_obstacles, params.detour_factor * min_sep)?;
        let values = crate::continuation::continue_along(curve.f(), &path, y_ref)?;
        Ok(*values.last().unwrap())
    };

    // Pair cycles: clockwise offset loops around finite cuts, a
    // counterclockwise circle enclosing the complement for a cut to infinity.
    let mut c_all: Vec<Chain> = Vec::with_capacity(n);
    for (j, cut) in cuts.iter().enumerate() {
        let rho_j = rho * (1.0 - 0.15 * j as f64 / n.max(1) as f64);
        let vertices: Vec<Complex64> = match cut {
            Cut::Segment(a, b) => {
                let mut v = offset_loop(&[*a, *b], rho_j);
                v.reverse(); // clockwise
                v
            }
            Cut::Ray { base, .. } => {
                let included: Vec<Complex64> = curve
                    .branch_x()
                    .iter()
                    .copied()
                    .filter(|&z| (z - base).norm() > 1e-12)
                    .collect();
                let centroid = included.iter().sum::<Complex64>() / included.len() as f64;
                // Slide the center away from the excluded point until the
                // enclosing circle separates it with enough clearance.
                let away = {
                    let d = centroid - base;
                    if d.norm() > 1e-12 { d / d.norm() } else { Complex64::new(-1.0, 0.0) }
                };
                let mut best: Option<(f64, Complex64, f64)> = None;
                for k in 0..40 {
                    let center = centroid + away * (0.15 * k as f64 * scale);
                    let r_in = included.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
                    let gap = (base - center).norm() - r_in;
                    if best.map_or(true, |(b, _, _)| gap > b) {
                        best = Some((gap, center, r_in));
                    }
                }
                let (gap, center, r_in) = best.unwrap();
                if gap < 4.0 * rho {
                    return Err(Error::PathingFailed(
                        "no room to separate the pair at infinity".into(),
                    ));
                }
                let radius = r_in + 0.5 * gap.min(scale);
                // counterclockwise
                arc_points(center, radius, 0.07, 0.07 + 2.0 * std::f64::consts::PI, CIRCLE_SEGS)
            }
        };
        let y0 = sheet_at(vertices[0])?;
        let cycle = Cycle::from_loop(curve, &vertices, y0)?;
        let others: Vec<Complex64> = curve
            .branch_x()
            .iter()
            .copied()
            .filter(|z| match cut {
                Cut::Segment(a, b) => (z - a).norm() > 1e-12 && (z - b).norm() > 1e-12,
                Cut::Ray { base, .. } => (z - base).norm() > 1e-12,
            })
            .collect();
        match cut {
            Cut::Segment(..) => validate_loop_clearance(&vertices, &others, 0.8 * rho_j)?,
            Cut::Ray { base, .. } => validate_loop_clearance(&vertices, &[*base], 0.8 * rho_j)?,
        }
        c_all.push(Chain::single(CycleLabel::C(j), Rc::new(cycle)));
    }

    // Connector cycles D̃_j between pair j and pair j+1.
    let mut d_tilde: Vec<Chain> = Vec::new();
    let mut t_paths: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n.saturating_sub(1) {
        let (from_pt, exit_dir) = cuts[j].anchor(false);
        let (to_pt, entry_dir) = cuts[j + 1].anchor(true);
        let e0 = from_pt + exit_dir * (1.6 * rho);
        let e1 = to_pt + entry_dir * (1.6 * rho);
        let mut obs = Obstacles::new();
        for &z in curve.branch_x() {
            if (z - from_pt).norm() > 1e-12 && (z - to_pt).norm() > 1e-12 {
                obs.add_point(z, 0.8 * rho);
            }
        }
        for (k, cut) in cuts.iter().enumerate() {
            let r = if k == j || k == j + 1 { 0.4 * rho } else { 1.35 * rho };
            match cut {
                Cut::Segment(a, b) => obs.add_capsule(*a, *b, r),
                Cut::Ray { base, dir } => obs.add_capsule(*base, base + dir * ray_len, r),
            }
        }
        for prev in &t_paths {
            obs.add_polyline_capsule(prev, 0.6 * rho);
        }
        let route_mid = route(e0, e1, &obs, params.detour_factor * min_sep)?;
        let y0 = sheet_at(route_mid[0])?;
        let cycle = through_cycle(curve, from_pt, &route_mid, to_pt, y0)?;
        let mut t_proj = vec![from_pt];
        t_proj.extend(route_mid.iter().copied());
        t_proj.push(to_pt);
        t_paths.push(t_proj);
        d_tilde.push(Chain::single(CycleLabel::DTilde(j), Rc::new(cycle)));
    }

    let c = c_all[..n - 1]
        .iter()
        .map(|ch| Chain { label: ch.label, terms: ch.terms.clone() })
        .collect();
    Ok(RawBasis { a: Vec::new(), b_tilde: Vec::new(), c, d_tilde, c_all, t_paths, s_paths: None })
}

// ---------------------------------------------------------------------------
// Even-symmetry construction
// ---------------------------------------------------------------------------

fn build_even(
    curve: &Curve,
    inv: &Involution,
    pairing: &Pairing,
    params: &BasisParams,
) -> Result<RawBasis, Error> {
    even::build(curve, inv, pairing, params)
}

mod even;

#[cfg(test)]
mod tests;
