//! Sheet-tracked quadrature of holomorphic differentials along legs.
//!
//! A path on the surface is a chain of legs, each one either a straight
//! segment in the finite chart (coordinate x) or in the chart at infinity
//! (t = 1/x, s = y t^(g+1)), or a segment with one endpoint at a root of
//! the chart's defining polynomial. Root legs substitute ξ = b + τ²(p − b),
//! which removes the inverse-square-root endpoint singularity exactly: with
//! y = τ·u·γ(ξ), u² = p − b and γ² = F/(ξ − b), the integrand N/y dξ
//! becomes 2u·N/γ dτ with γ analytic along the leg. Retracing a root leg
//! continues straight through the ramification point in the local
//! coordinate √(ξ−b), which exits on the opposite sheet: u ↦ −u.
//!
//! Away from roots the per-panel rule is Gauss–Legendre; the branch of √F
//! is carried from node to node by adaptive continuation.

use crate::continuation::continue_sqrt;
use crate::curve::{Curve, DifferentialForm};
use crate::error::Error;
use crate::poly::Polynomial;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let legendre = |x: f64| -> (f64, f64) {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                (p1, dp)
            };
            let mut nodes = vec![0.0; n];
            let mut weights = vec![0.0; n];
            for i in 0..n {
                let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                for _ in 0..100 {
                    let (p, dp) = legendre(x);
                    let dx = p / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                let (_, dp) = legendre(x);
                nodes[i] = x;
                weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
            }
            (nodes, weights)
        })
        .clone()
}

/// Which coordinate chart a leg lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Finite,
    Infinity,
}

/// One leg of a path.
#[derive(Clone, Debug)]
pub enum Leg {
    /// Straight segment between two regular points.
    Seg { chart: Chart, a: Complex64, b: Complex64 },
    /// Straight segment running into a root of the chart polynomial.
    IntoRoot { chart: Chart, from: Complex64, root: Complex64 },
    /// Straight segment leaving a root of the chart polynomial.
    OutOfRoot { chart: Chart, root: Complex64, to: Complex64 },
}

impl Leg {
    pub fn chart(&self) -> Chart {
        match self {
            Leg::Seg { chart, .. } | Leg::IntoRoot { chart, .. } | Leg::OutOfRoot { chart, .. } => {
                *chart
            }
        }
    }

    /// Planar segment for crossing detection (root legs project onto their
    /// straight segment).
    pub fn planar_segment(&self) -> (Complex64, Complex64) {
        match self {
            Leg::Seg { a, b, .. } => (*a, *b),
            Leg::IntoRoot { from, root, .. } => (*from, *root),
            Leg::OutOfRoot { root, to, .. } => (*root, *to),
        }
    }

    pub fn seg(a: Complex64, b: Complex64) -> Leg {
        Leg::Seg { chart: Chart::Finite, a, b }
    }
}

/// How a path begins.
#[derive(Clone, Copy, Debug)]
pub enum PathStart {
    /// At a regular finite point with a chosen branch value.
    Regular { x: Complex64, y: Complex64 },
    /// At a regular point t = 0 of the chart at infinity (even degree).
    InfinityRegular { s: Complex64 },
    /// At the branch point t = 0 at infinity (odd degree); the first leg
    /// must leave that root.
    InfinityBranch,
}

/// A chain of legs with a starting branch state.
#[derive(Clone, Debug)]
pub struct TracedPath {
    pub start: PathStart,
    pub legs: Vec<Leg>,
}

impl TracedPath {
    /// Builds a finite-chart path from consecutive polyline vertices.
    pub fn from_polyline(vertices: &[Complex64], y0: Complex64) -> TracedPath {
        let legs = vertices
            .windows(2)
            .map(|w| Leg::seg(w[0], w[1]))
            .collect();
        TracedPath {
            start: PathStart::Regular { x: vertices[0], y: y0 },
            legs,
        }
    }
}

/// Differential forms prepared for integration in both charts.
///
/// A form Σ c_k x^(k−1) dx/y reads −(Σ c_k t^(g−k)) dt/s at infinity.
pub struct FormSet {
    finite: Vec<Polynomial>,
    infinity: Vec<Polynomial>,
}

impl FormSet {
    pub fn new(curve: &Curve, forms: &[DifferentialForm]) -> Self {
        let g = curve.genus();
        let finite: Vec<Polynomial> = forms.iter().map(|f| f.numerator()).collect();
        let infinity = forms
            .iter()
            .map(|f| {
                let mut coeffs = vec![Complex64::new(0.0, 0.0); g.max(1)];
                for (k, &c) in f.coeffs.iter().enumerate() {
                    assert!(k < g, "only holomorphic numerators integrate");
                    coeffs[g - 1 - k] = -c;
                }
                Polynomial::new(coeffs)
            })
            .collect();
        FormSet { finite, infinity }
    }

    /// All g monomial forms of the curve.
    pub fn monomials(curve: &Curve) -> Self {
        let g = curve.genus();
        let forms: Vec<DifferentialForm> =
            (1..=g).map(|k| DifferentialForm::monomial(g, k)).collect();
        FormSet::new(curve, &forms)
    }

    pub fn len(&self) -> usize {
        self.finite.len()
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty()
    }

    fn numerators(&self, chart: Chart) -> &[Polynomial] {
        match chart {
            Chart::Finite => &self.finite,
            Chart::Infinity => &self.infinity,
        }
    }
}

/// End state of a path walk.
#[derive(Clone, Copy, Debug)]
pub enum EndState {
    Regular { chart: Chart, x: Complex64, y: Complex64 },
    AtRoot { chart: Chart, root: Complex64 },
}

/// Result of integrating a set of forms over a path.
#[derive(Clone, Debug)]
pub struct PathIntegral {
    /// One value per form.
    pub values: Vec<Complex64>,
    pub end: EndState,
}

impl PathIntegral {
    /// Final branch value in the finite chart, when applicable.
    pub fn end_y(&self) -> Option<Complex64> {
        match self.end {
            EndState::Regular { chart: Chart::Finite, y, .. } => Some(y),
            _ => None,
        }
    }
}

/// Per-leg data used by crossing classification: a planar segment in its
/// chart plus a regular reference point with branch value on that segment.
#[derive(Clone, Debug)]
pub struct LegTrace {
    pub chart: Chart,
    pub seg: (Complex64, Complex64),
    pub ref_x: Complex64,
    pub ref_y: Complex64,
}

#[derive(Clone, Copy, Debug)]
enum State {
    Regular { chart: Chart, x: Complex64, y: Complex64 },
    AtRoot { chart: Chart, root: Complex64, from: Complex64, u: Complex64, gamma: Complex64 },
}

fn defining_poly(curve: &Curve, chart: Chart) -> &Polynomial {
    match chart {
        Chart::Finite => curve.f(),
        Chart::Infinity => curve.f_infinity(),
    }
}

fn transfer(curve: &Curve, state: State, target: Chart) -> Result<State, Error> {
    let gp1 = (curve.genus() + 1) as i32;
    match state {
        State::Regular { chart, .. } if chart == target => Ok(state),
        State::Regular { chart: Chart::Finite, x, y } => {
            if x.norm() == 0.0 {
                return Err(Error::SheetLost);
            }
            let t = Complex64::new(1.0, 0.0) / x;
            Ok(State::Regular { chart: Chart::Infinity, x: t, y: y * t.powi(gp1) })
        }
        State::Regular { chart: Chart::Infinity, x: t, y: s } => {
            if t.norm() == 0.0 {
                return Err(Error::SheetLost);
            }
            let x = Complex64::new(1.0, 0.0) / t;
            Ok(State::Regular { chart: Chart::Finite, x, y: s * x.powi(gp1) })
        }
        State::AtRoot { .. } => Err(Error::SheetLost),
    }
}

fn panels_for(chart: Chart, len: f64, curve: &Curve) -> usize {
    let unit = match chart {
        Chart::Finite => 0.5 * curve.scale(),
        Chart::Infinity => 0.05 / curve.scale().max(1e-12),
    };
    ((len / unit).ceil() as usize).clamp(1, 64)
}

/// Integrates Σ w·N(x(τ))/γ(x(τ)) over τ ∈ [0, 1], x(τ) = root + τ²(p − root).
///
/// When `forward` the continuation sweeps τ: 0 → 1 starting from γ at the
/// root; otherwise it sweeps 1 → 0 starting from γ at p. Returns the
/// per-form sums and γ at the far end of the sweep.
fn tau_leg(
    gpoly: &Polynomial,
    root: Complex64,
    p: Complex64,
    gamma_start: Complex64,
    forward: bool,
    nums: &[Polynomial],
    gl: &(Vec<f64>, Vec<f64>),
) -> Result<(Vec<Complex64>, Complex64), Error> {
    let mut sums = vec![Complex64::new(0.0, 0.0); nums.len()];
    let panels = 2usize;
    let mut taus: Vec<(f64, f64)> = Vec::new();
    for pan in 0..panels {
        let ta = pan as f64 / panels as f64;
        let tb = (pan + 1) as f64 / panels as f64;
        let half = (tb - ta) * 0.5;
        let mid = (ta + tb) * 0.5;
        for (i, &xi) in gl.0.iter().enumerate() {
            taus.push((mid + half * xi, gl.1[i] * half));
        }
    }
    if !forward {
        taus.reverse();
    }
    let mut gamma = gamma_start;
    let mut prev = if forward { root } else { p };
    for &(tau, w) in &taus {
        let x = root + (p - root) * (tau * tau);
        gamma = continue_sqrt(gpoly, prev, gamma, x)?;
        prev = x;
        for (k, num) in nums.iter().enumerate() {
            sums[k] += num.eval(x) / gamma * w;
        }
    }
    let endpoint = if forward { p } else { root };
    gamma = continue_sqrt(gpoly, prev, gamma, endpoint)?;
    Ok((sums, gamma))
}

fn walk(
    curve: &Curve,
    path: &TracedPath,
    forms: &FormSet,
    nodes: usize,
    mut traces: Option<&mut Vec<LegTrace>>,
) -> Result<PathIntegral, Error> {
    let gl = gauss_legendre(nodes);
    let mut totals = vec![Complex64::new(0.0, 0.0); forms.len()];
    let coord_tol = 1e-6 * (1.0 + curve.scale());

    let mut state = match path.start {
        PathStart::Regular { x, y } => State::Regular { chart: Chart::Finite, x, y },
        PathStart::InfinityRegular { s } => State::Regular {
            chart: Chart::Infinity,
            x: Complex64::new(0.0, 0.0),
            y: s,
        },
        PathStart::InfinityBranch => {
            let zero = Complex64::new(0.0, 0.0);
            let g_inf = curve.f_infinity().deflate(zero);
            State::AtRoot {
                chart: Chart::Infinity,
                root: zero,
                from: Complex64::new(f64::NAN, 0.0),
                u: zero,
                gamma: g_inf.eval(zero).sqrt(),
            }
        }
    };

    for leg in &path.legs {
        let chart = leg.chart();
        let fpoly = defining_poly(curve, chart);
        let nums = forms.numerators(chart);
        match *leg {
            Leg::Seg { a, b, .. } => {
                state = transfer(curve, state, chart)?;
                let (x0, y0) = match state {
                    State::Regular { x, y, .. } => (x, y),
                    _ => return Err(Error::SheetLost),
                };
                if (x0 - a).norm() > coord_tol {
                    return Err(Error::LiftFailed);
                }
                let mut y = continue_sqrt(fpoly, x0, y0, a)?;
                if let Some(t) = traces.as_deref_mut() {
                    t.push(LegTrace { chart, seg: (a, b), ref_x: a, ref_y: y });
                }
                let mut x = a;
                let panels = panels_for(chart, (b - a).norm(), curve);
                for p in 0..panels {
                    let pa = a + (b - a) * (p as f64 / panels as f64);
                    let pb = a + (b - a) * ((p + 1) as f64 / panels as f64);
                    let half = (pb - pa) * 0.5;
                    let mid = (pa + pb) * 0.5;
                    for (i, &xi) in gl.0.iter().enumerate() {
                        let node = mid + half * xi;
                        y = continue_sqrt(fpoly, x, y, node)?;
                        x = node;
                        for (k, num) in nums.iter().enumerate() {
                            totals[k] += num.eval(node) / y * half * gl.1[i];
                        }
                    }
                    y = continue_sqrt(fpoly, x, y, pb)?;
                    x = pb;
                }
                state = State::Regular { chart, x: b, y };
            }
            Leg::IntoRoot { from, root, .. } => {
                state = transfer(curve, state, chart)?;
                let (x0, y0) = match state {
                    State::Regular { x, y, .. } => (x, y),
                    _ => return Err(Error::SheetLost),
                };
                if (x0 - from).norm() > coord_tol {
                    return Err(Error::LiftFailed);
                }
                let y_from = continue_sqrt(fpoly, x0, y0, from)?;
                if let Some(t) = traces.as_deref_mut() {
                    t.push(LegTrace { chart, seg: (from, root), ref_x: from, ref_y: y_from });
                }
                let gpoly = fpoly.deflate(root);
                let u = (from - root).sqrt();
                let gamma_from = y_from / u;
                let (sums, gamma_root) =
                    tau_leg(&gpoly, root, from, gamma_from, false, nums, &gl)?;
                for (k, v) in sums.iter().enumerate() {
                    // ∫_from^root = −(2u)·∫₀¹ … dτ
                    totals[k] -= 2.0 * u * v;
                }
                state = State::AtRoot { chart, root, from, u, gamma: gamma_root };
            }
            Leg::OutOfRoot { root, to, .. } => {
                let (u, gamma0) = match state {
                    State::AtRoot { chart: rc, root: r, from, u, gamma }
                        if rc == chart && (r - root).norm() <= coord_tol =>
                    {
                        if from.re.is_nan() {
                            // Fresh departure from a branch point: fix the
                            // branch deterministically.
                            ((to - root).sqrt(), gamma)
                        } else {
                            // U-turn: exit on the opposite sheet.
                            if (to - from).norm() > coord_tol {
                                return Err(Error::SheetLost);
                            }
                            (-u, gamma)
                        }
                    }
                    _ => return Err(Error::SheetLost),
                };
                let gpoly = fpoly.deflate(root);
                let (sums, gamma_to) = tau_leg(&gpoly, root, to, gamma0, true, nums, &gl)?;
                for (k, v) in sums.iter().enumerate() {
                    totals[k] += 2.0 * u * v;
                }
                let y_to = u * gamma_to;
                if let Some(t) = traces.as_deref_mut() {
                    t.push(LegTrace { chart, seg: (root, to), ref_x: to, ref_y: y_to });
                }
                state = State::Regular { chart, x: to, y: y_to };
            }
        }
    }

    let end = match state {
        State::Regular { chart, x, y } => EndState::Regular { chart, x, y },
        State::AtRoot { chart, root, .. } => EndState::AtRoot { chart, root },
    };
    Ok(PathIntegral { values: totals, end })
}

/// Integrates `forms` along `path` with `nodes` Gauss–Legendre nodes per
/// panel.
pub fn integrate_path(
    curve: &Curve,
    path: &TracedPath,
    forms: &FormSet,
    nodes: usize,
) -> Result<PathIntegral, Error> {
    walk(curve, path, forms, nodes, None)
}

/// Integrates with `nodes` and `2·nodes`; errors out unless the values are
/// stable under doubling, and returns the refined values.
pub fn integrate_path_checked(
    curve: &Curve,
    path: &TracedPath,
    forms: &FormSet,
    nodes: usize,
    quad_tol: f64,
) -> Result<PathIntegral, Error> {
    let coarse = walk(curve, path, forms, nodes, None)?;
    let fine = walk(curve, path, forms, 2 * nodes, None)?;
    for (a, b) in coarse.values.iter().zip(fine.values.iter()) {
        if (a - b).norm() > quad_tol * (1.0 + b.norm()) {
            return Err(Error::QuadratureNotConverged);
        }
    }
    Ok(fine)
}

/// Walks the path without integrating, recording a reference branch value
/// on every leg for crossing classification.
pub fn trace_path(curve: &Curve, path: &TracedPath) -> Result<(Vec<LegTrace>, EndState), Error> {
    let empty = FormSet { finite: Vec::new(), infinity: Vec::new() };
    let mut traces = Vec::with_capacity(path.legs.len());
    let out = walk(curve, path, &empty, 6, Some(&mut traces))?;
    Ok((traces, out.end))
}

/// Verifies that a cycle closes up on the surface: the end state must be a
/// regular finite point matching the start within tolerance.
pub fn check_closure(curve: &Curve, path: &TracedPath) -> Result<(), Error> {
    let (x0, y0) = match path.start {
        PathStart::Regular { x, y } => (x, y),
        _ => return Err(Error::LiftFailed),
    };
    let empty = FormSet { finite: Vec::new(), infinity: Vec::new() };
    let out = walk(curve, path, &empty, 6, None)?;
    let gp1 = (curve.genus() + 1) as i32;
    let (x, y) = match out.end {
        EndState::Regular { chart: Chart::Finite, x, y } => (x, y),
        EndState::Regular { chart: Chart::Infinity, x: t, y: s } if t.norm() > 0.0 => {
            let x = Complex64::new(1.0, 0.0) / t;
            (x, s * x.powi(gp1))
        }
        _ => return Err(Error::LiftFailed),
    };
    let tol = 1e-7 * (1.0 + curve.scale());
    if (x - x0).norm() <= tol && (y - y0).norm() <= tol * (1.0 + y0.norm()) {
        Ok(())
    } else {
        Err(Error::LiftFailed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::DifferentialForm;
    use crate::poly::Polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g1() -> Curve {
        Curve::new(Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0])).unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        let val: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powi(8)).sum();
        assert!((val - 2.0 / 9.0).abs() < 1e-14);
        let total: f64 = weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn loop_off_branch_locus_integrates_to_zero() {
        let curve = g1();
        let forms = FormSet::monomials(&curve);
        let vs = [c(2.0, 1.0), c(3.0, 1.0), c(3.0, 2.0), c(2.0, 2.0), c(2.0, 1.0)];
        let y0 = curve.f().eval(vs[0]).sqrt();
        let path = TracedPath::from_polyline(&vs, y0);
        let out = integrate_path(&curve, &path, &forms, 24).unwrap();
        assert!(out.values[0].norm() < 1e-12);
        assert!((out.end_y().unwrap() - y0).norm() < 1e-10);
        assert!(check_closure(&curve, &path).is_ok());
    }

    #[test]
    fn u_turn_doubles_open_integral_and_flips_sheet() {
        let curve = g1();
        let forms = FormSet::monomials(&curve);
        let p = c(0.5, 0.4);
        let y0 = curve.f().eval(p).sqrt();
        let one_way = TracedPath {
            start: PathStart::Regular { x: p, y: y0 },
            legs: vec![Leg::IntoRoot { chart: Chart::Finite, from: p, root: c(1.0, 0.0) }],
        };
        let round = TracedPath {
            start: PathStart::Regular { x: p, y: y0 },
            legs: vec![
                Leg::IntoRoot { chart: Chart::Finite, from: p, root: c(1.0, 0.0) },
                Leg::OutOfRoot { chart: Chart::Finite, root: c(1.0, 0.0), to: p },
            ],
        };
        let a = integrate_path(&curve, &one_way, &forms, 32).unwrap();
        let b = integrate_path(&curve, &round, &forms, 32).unwrap();
        assert!((b.values[0] - 2.0 * a.values[0]).norm() < 1e-10);
        assert!((b.end_y().unwrap() + y0).norm() < 1e-9);
    }

    #[test]
    fn tau_substitution_matches_plain_quadrature_near_root() {
        // Integrate dx/y from 0.5 to within ε of the root x = 1 by plain
        // panels, and compare against the substituted leg all the way in.
        let curve = g1();
        let forms = FormSet::monomials(&curve);
        let p = c(0.5, 0.0);
        let y0 = curve.f().eval(p).sqrt();
        let into = TracedPath {
            start: PathStart::Regular { x: p, y: y0 },
            legs: vec![Leg::IntoRoot { chart: Chart::Finite, from: p, root: c(1.0, 0.0) }],
        };
        let refv = integrate_path(&curve, &into, &forms, 48).unwrap().values[0];
        // Plain quadrature with geometric panel refinement toward the root,
        // plus the analytic tail 2(b−a)/y(a) for the last stretch.
        let mut total = Complex64::new(0.0, 0.0);
        let mut a = p;
        let mut y = y0;
        let (gn, gw) = gauss_legendre(64);
        let target = c(1.0, 0.0);
        while (a - target).norm() > 1e-10 {
            let b = target + (a - target) * 0.5;
            let half = (b - a) * 0.5;
            let mid = (a + b) * 0.5;
            let mut x = a;
            for (i, &xi) in gn.iter().enumerate() {
                let node = mid + half * xi;
                y = continue_sqrt(curve.f(), x, y, node).unwrap();
                x = node;
                total += Complex64::new(1.0, 0.0) / y * half * gw[i];
            }
            y = continue_sqrt(curve.f(), x, y, b).unwrap();
            a = b;
        }
        total += 2.0 * (target - a) / y;
        assert!(
            (total - refv).norm() < 1e-9,
            "plain {total} vs substituted {refv}"
        );
    }

    #[test]
    fn infinity_chart_round_trip() {
        // Even-degree curve: pass through t = 0 and come back; the integral
        // over the closed loop around nothing is zero.
        let curve = Curve::new(Polynomial::from_real(&[1.0, 0.0, 0.0, 0.0, -1.0]))
            .unwrap_or_else(|_| panic!());
        // f = 1 - x^4? leading coefficient negative is fine.
        let forms = FormSet::monomials(&curve);
        let r = 8.0;
        let y0 = curve.f().eval(c(r, 0.0)).sqrt();
        // Out along +real to r, through infinity via the t-chart to −r, and
        // return through the upper half plane.
        let half_circle: Vec<Complex64> = (0..=24)
            .map(|k| {
                let ang = std::f64::consts::PI * (1.0 - k as f64 / 24.0);
                Complex64::from_polar(r, ang)
            })
            .collect();
        let mut legs = vec![Leg::Seg {
            chart: Chart::Infinity,
            a: c(1.0 / r, 0.0),
            b: c(-1.0 / r, 0.0),
        }];
        for w in half_circle.windows(2) {
            legs.push(Leg::seg(w[0], w[1]));
        }
        let path = TracedPath { start: PathStart::Regular { x: c(r, 0.0), y: y0 }, legs };
        // The first leg is in the infinity chart; the walker transfers the
        // regular start automatically.
        let out = integrate_path(&curve, &path, &forms, 32).unwrap();
        // Closed loop on the sphere around all four branch points: y is
        // single-valued outside, so the contour integral picks up the
        // residue-free value 0.
        assert!(out.values[0].norm() < 1e-9, "got {}", out.values[0]);
        assert!((out.end_y().unwrap() - y0).norm() < 1e-8);
    }
}
