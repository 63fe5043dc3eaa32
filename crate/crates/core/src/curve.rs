//! Curves y² = f(x), their points, and the two supported involutions.
//!
//! A curve of genus g is cut out by a squarefree polynomial f of degree
//! 2g+1 or 2g+2. Odd degree places one branch point at infinity and the
//! surface has a single point there; even degree gives two points at
//! infinity, distinguished by the sign of s = y/x^(g+1) as x → ∞.
//!
//! Two involutions are supported:
//! * the hyperelliptic involution (x, y) ↦ (x, −y), with quotient the sphere;
//! * the even symmetry (x, y) ↦ (−x, y), available when f(x) = h(x²), with
//!   quotient the curve y² = h(u).

use crate::error::Error;
use crate::poly::{find_roots, require_squarefree, Polynomial};
use num_complex::Complex64;

/// Tag for points at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InfSheet {
    /// The single point at infinity of an odd-degree curve.
    Single,
    /// s = y/x^(g+1) → +√(leading coefficient).
    Plus,
    /// s = y/x^(g+1) → −√(leading coefficient).
    Minus,
}

/// A point of the surface: finite (x, y) with y² = f(x), or at infinity.
#[derive(Clone, Copy, Debug)]
pub enum SurfacePoint {
    Finite { x: Complex64, y: Complex64 },
    Infinity(InfSheet),
}

impl SurfacePoint {
    pub fn finite(x: Complex64, y: Complex64) -> Self {
        SurfacePoint::Finite { x, y }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SurfacePoint::Infinity(_))
    }

    /// Deterministic ordering key; infinities sort after finite points.
    pub fn sort_key(&self) -> (u8, f64, f64, f64, f64) {
        match self {
            SurfacePoint::Finite { x, y } => (0, x.re, x.im, y.re, y.im),
            SurfacePoint::Infinity(InfSheet::Single) => (1, 0.0, 0.0, 0.0, 0.0),
            SurfacePoint::Infinity(InfSheet::Plus) => (1, 1.0, 0.0, 0.0, 0.0),
            SurfacePoint::Infinity(InfSheet::Minus) => (1, 2.0, 0.0, 0.0, 0.0),
        }
    }

    /// Equality of surface points up to numerical tolerance.
    pub fn approx_eq(&self, other: &SurfacePoint, tol: f64) -> bool {
        match (self, other) {
            (SurfacePoint::Finite { x: x1, y: y1 }, SurfacePoint::Finite { x: x2, y: y2 }) => {
                (x1 - x2).norm() <= tol && (y1 - y2).norm() <= tol
            }
            (SurfacePoint::Infinity(a), SurfacePoint::Infinity(b)) => a == b,
            _ => false,
        }
    }
}

/// A hyperelliptic curve y² = f(x).
#[derive(Clone, Debug)]
pub struct Curve {
    f: Polynomial,
    f_infinity: Polynomial,
    genus: usize,
    branch_x: Vec<Complex64>,
}

impl Curve {
    /// Builds a curve from a squarefree defining polynomial of degree ≥ 2.
    ///
    /// Degree 2 yields genus 0 and is accepted so that the trivially solvable
    /// degenerate case remains expressible end to end.
    pub fn new(f: Polynomial) -> Result<Self, Error> {
        let d = f.degree();
        if d < 2 {
            return Err(Error::DegreeTooSmall(d));
        }
        let roots = find_roots(&f)?;
        require_squarefree(&roots)?;
        let genus = (d + 1) / 2 - 1;
        // s² = t^(2g+2) f(1/t) in the chart t = 1/x, s = y t^(g+1).
        let f_infinity = f.reversed_into_degree(2 * genus + 2);
        Ok(Curve {
            f,
            f_infinity,
            genus,
            branch_x: roots,
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    /// Defining polynomial of the chart at infinity, s² = f_infinity(t).
    pub fn f_infinity(&self) -> &Polynomial {
        &self.f_infinity
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn is_odd_degree(&self) -> bool {
        self.f.degree() % 2 == 1
    }

    /// Finite branch points, sorted by (re, im).
    pub fn branch_x(&self) -> &[Complex64] {
        &self.branch_x
    }

    /// Count of hyperelliptic branch points, infinity included for odd degree.
    pub fn branch_count(&self) -> usize {
        self.branch_x.len() + if self.is_odd_degree() { 1 } else { 0 }
    }

    pub fn infinity_points(&self) -> Vec<SurfacePoint> {
        if self.is_odd_degree() {
            vec![SurfacePoint::Infinity(InfSheet::Single)]
        } else {
            vec![
                SurfacePoint::Infinity(InfSheet::Plus),
                SurfacePoint::Infinity(InfSheet::Minus),
            ]
        }
    }

    /// Length scale of the branch configuration, 1 + max |branch point|.
    pub fn scale(&self) -> f64 {
        1.0 + self
            .branch_x
            .iter()
            .map(|b| b.norm())
            .fold(0.0, f64::max)
    }

    /// Smallest distance between two finite branch points.
    pub fn min_branch_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.branch_x.len() {
            for j in (i + 1)..self.branch_x.len() {
                best = best.min((self.branch_x[i] - self.branch_x[j]).norm());
            }
        }
        if best.is_finite() {
            best
        } else {
            self.scale()
        }
    }

    /// Checks |y² − f(x)| ≤ tol · (1 + |f(x)|).
    pub fn validate_point(&self, p: &SurfacePoint, tol: f64) -> bool {
        match p {
            SurfacePoint::Finite { x, y } => {
                let fx = self.f.eval(*x);
                (y * y - fx).norm() <= tol * (1.0 + fx.norm())
            }
            SurfacePoint::Infinity(InfSheet::Single) => self.is_odd_degree(),
            SurfacePoint::Infinity(_) => !self.is_odd_degree(),
        }
    }

    /// The s-value identifying a point at infinity on an even-degree curve.
    pub fn infinity_s_value(&self, sheet: InfSheet) -> Complex64 {
        let s0 = self.f.leading().sqrt();
        match sheet {
            InfSheet::Plus | InfSheet::Single => s0,
            InfSheet::Minus => -s0,
        }
    }

    /// Classifies an s-value at t = 0 into an infinity sheet tag.
    pub fn infinity_sheet_of(&self, s: Complex64) -> InfSheet {
        if self.is_odd_degree() {
            return InfSheet::Single;
        }
        let s0 = self.f.leading().sqrt();
        if (s - s0).norm() <= (s + s0).norm() {
            InfSheet::Plus
        } else {
            InfSheet::Minus
        }
    }
}

/// Which involution of the curve is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    /// (x, y) ↦ (x, −y); quotient is the sphere.
    Hyperelliptic,
    /// (x, y) ↦ (−x, y); requires f(x) = h(x²), quotient is y² = h(u).
    EvenSymmetry,
}

/// Quotient surface of an involution.
#[derive(Clone, Debug)]
pub enum QuotientModel {
    /// The Riemann sphere with coordinate u = x.
    Sphere,
    /// The curve y² = h(u) with u = x².
    Curve(Curve),
}

/// An involution together with its ramification data.
///
/// 2n is the number of fixed points, g_sigma the quotient genus, and the
/// Hurwitz identity g = 2 g_sigma + n − 1 holds exactly.
#[derive(Clone, Debug)]
pub struct Involution {
    pub kind: InvolutionKind,
    pub quotient: QuotientModel,
    pub g_sigma: usize,
    pub n: usize,
    pub fixed_points: Vec<SurfacePoint>,
    curve_degree: usize,
    curve_genus: usize,
}

/// Builds the involution data for the requested kind.
pub fn involution_data(curve: &Curve, kind: InvolutionKind) -> Result<Involution, Error> {
    let g = curve.genus();
    let (quotient, g_sigma, fixed_points) = match kind {
        InvolutionKind::Hyperelliptic => {
            let mut fixed: Vec<SurfacePoint> = curve
                .branch_x()
                .iter()
                .map(|&b| SurfacePoint::finite(b, Complex64::new(0.0, 0.0)))
                .collect();
            if curve.is_odd_degree() {
                fixed.push(SurfacePoint::Infinity(InfSheet::Single));
            }
            (QuotientModel::Sphere, 0usize, fixed)
        }
        InvolutionKind::EvenSymmetry => {
            if !curve.f().is_even_symmetric(1e-12) {
                return Err(Error::NotEvenSymmetric);
            }
            let h = curve.f().even_part_in_square();
            if h.degree() < 2 {
                return Err(Error::DegreeTooSmall(h.degree()));
            }
            // Squarefree f forces f(0) = h(0) ≠ 0, so the fiber over x = 0
            // consists of two regular points, both fixed.
            let y0 = h.coeff(0).sqrt();
            let mut fixed = vec![
                SurfacePoint::finite(Complex64::new(0.0, 0.0), y0),
                SurfacePoint::finite(Complex64::new(0.0, 0.0), -y0),
            ];
            // At infinity, s ↦ (−1)^(deg h) s: both points are fixed when
            // deg h is even, swapped when odd.
            if h.degree() % 2 == 0 {
                fixed.push(SurfacePoint::Infinity(InfSheet::Plus));
                fixed.push(SurfacePoint::Infinity(InfSheet::Minus));
            }
            let quotient_curve = Curve::new(h)?;
            let g_sigma = quotient_curve.genus();
            (QuotientModel::Curve(quotient_curve), g_sigma, fixed)
        }
    };

    if fixed_points.len() % 2 != 0 {
        return Err(Error::HurwitzMismatch {
            g,
            g_sigma,
            n: fixed_points.len(),
        });
    }
    let n = fixed_points.len() / 2;
    if g + 1 != 2 * g_sigma + n {
        return Err(Error::HurwitzMismatch { g, g_sigma, n });
    }

    Ok(Involution {
        kind,
        quotient,
        g_sigma,
        n,
        fixed_points,
        curve_degree: curve.degree(),
        curve_genus: g,
    })
}

impl Involution {
    /// Action on the x-coordinate (and on the chart coordinate t = 1/x).
    pub fn apply_x(&self, x: Complex64) -> Complex64 {
        match self.kind {
            InvolutionKind::Hyperelliptic => x,
            InvolutionKind::EvenSymmetry => -x,
        }
    }

    /// Action on the y-coordinate at a fixed x-fiber.
    pub fn apply_y(&self, y: Complex64) -> Complex64 {
        match self.kind {
            InvolutionKind::Hyperelliptic => -y,
            InvolutionKind::EvenSymmetry => y,
        }
    }

    /// Action on surface points.
    pub fn apply_point(&self, p: &SurfacePoint) -> SurfacePoint {
        match p {
            SurfacePoint::Finite { x, y } => SurfacePoint::Finite {
                x: self.apply_x(*x),
                y: self.apply_y(*y),
            },
            SurfacePoint::Infinity(sheet) => SurfacePoint::Infinity(self.apply_infinity(*sheet)),
        }
    }

    fn apply_infinity(&self, sheet: InfSheet) -> InfSheet {
        match self.kind {
            InvolutionKind::Hyperelliptic => match sheet {
                InfSheet::Single => InfSheet::Single,
                InfSheet::Plus => InfSheet::Minus,
                InfSheet::Minus => InfSheet::Plus,
            },
            InvolutionKind::EvenSymmetry => {
                // s = y t^(g+1), t ↦ −t: s ↦ (−1)^(g+1) s with 2(g+1) = deg f.
                let m = self.curve_degree / 2;
                match (sheet, m % 2) {
                    (InfSheet::Single, _) => InfSheet::Single,
                    (s, 0) => s,
                    (InfSheet::Plus, _) => InfSheet::Minus,
                    (InfSheet::Minus, _) => InfSheet::Plus,
                }
            }
        }
    }

    pub fn is_fixed_point(&self, p: &SurfacePoint, tol: f64) -> bool {
        self.fixed_points.iter().any(|q| q.approx_eq(p, tol))
    }

    pub fn curve_genus(&self) -> usize {
        self.curve_genus
    }

    /// Pullback sign of the monomial differential x^(k−1) dx / y, k = 1..g.
    pub fn monomial_pullback_sign(&self, k: usize) -> f64 {
        match self.kind {
            InvolutionKind::Hyperelliptic => -1.0,
            InvolutionKind::EvenSymmetry => {
                if k % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// A holomorphic differential Σ c_k x^(k−1) dx / y in the monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialForm {
    pub coeffs: Vec<Complex64>,
}

impl DifferentialForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        DifferentialForm { coeffs }
    }

    /// The k-th monomial basis form x^(k−1) dx / y, 1 ≤ k ≤ g.
    pub fn monomial(g: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= g);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); g];
        coeffs[k - 1] = Complex64::new(1.0, 0.0);
        DifferentialForm { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Numerator polynomial N(x) with ω = N(x) dx / y.
    pub fn numerator(&self) -> Polynomial {
        Polynomial::new(self.coeffs.clone())
    }

    /// Pullback under the involution, acting linearly on coefficients.
    pub fn pullback(&self, inv: &Involution) -> DifferentialForm {
        DifferentialForm {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * inv.monomial_pullback_sign(i + 1))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn curve(coeffs: &[f64]) -> Curve {
        Curve::new(Polynomial::from_real(coeffs)).unwrap()
    }

    #[test]
    fn genus_and_branch_counts() {
        let c = curve(&[0.0, -1.0, 0.0, 1.0]); // x^3 - x
        assert_eq!(c.genus(), 1);
        assert_eq!(c.branch_count(), 4);
        assert!(c.is_odd_degree());

        let c6 = curve(&[-6.0, 0.0, 11.0, 0.0, -6.0, 0.0, 1.0]); // deg 6
        assert_eq!(c6.genus(), 2);
        assert_eq!(c6.branch_count(), 6);

        let c8 = curve(&[24.0, 0.0, -50.0, 0.0, 35.0, 0.0, -10.0, 0.0, 1.0]);
        assert_eq!(c8.genus(), 3);
    }

    #[test]
    fn rejects_non_squarefree_and_tiny_degree() {
        let bad = Polynomial::from_real(&[-2.0, 5.0, -4.0, 1.0]); // (x-1)^2 (x-2)
        assert!(matches!(Curve::new(bad), Err(Error::NonSquarefree)));
        let tiny = Polynomial::from_real(&[1.0, 1.0]);
        assert!(matches!(Curve::new(tiny), Err(Error::DegreeTooSmall(1))));
    }

    #[test]
    fn hyperelliptic_involution_data() {
        let c = curve(&[0.0, -1.0, 0.0, 1.0]);
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        assert_eq!(inv.g_sigma, 0);
        assert_eq!(inv.n, 2);
        assert_eq!(inv.fixed_points.len(), 4);
        assert!(inv
            .fixed_points
            .iter()
            .any(|p| matches!(p, SurfacePoint::Infinity(InfSheet::Single))));
    }

    #[test]
    fn even_symmetry_odd_h() {
        // f = (x²-1)(x²-2)(x²-3), h = (u-1)(u-2)(u-3)
        let c = curve(&[-6.0, 0.0, 11.0, 0.0, -6.0, 0.0, 1.0]);
        let inv = involution_data(&c, InvolutionKind::EvenSymmetry).unwrap();
        assert_eq!(inv.g_sigma, 1);
        assert_eq!(inv.n, 1);
        assert_eq!(inv.fixed_points.len(), 2);
        for p in &inv.fixed_points {
            match p {
                SurfacePoint::Finite { x, y } => {
                    assert!(x.norm() < 1e-14);
                    assert!((y * y - Complex64::new(-6.0, 0.0)).norm() < 1e-12);
                }
                _ => panic!("expected finite fixed points"),
            }
        }
        // infinity points swap
        let inf = SurfacePoint::Infinity(InfSheet::Plus);
        assert!(matches!(
            inv.apply_point(&inf),
            SurfacePoint::Infinity(InfSheet::Minus)
        ));
    }

    #[test]
    fn even_symmetry_even_h() {
        // h = (u-1)(u-2)(u-3)(u-4), f = h(x²), deg 8, g = 3
        let h = Polynomial::from_roots(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(4.0, 0.0),
        ]);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 9];
        for (k, &c) in h.coeffs().iter().enumerate() {
            coeffs[2 * k] = c;
        }
        let c8 = Curve::new(Polynomial::new(coeffs)).unwrap();
        assert_eq!(c8.genus(), 3);
        let inv = involution_data(&c8, InvolutionKind::EvenSymmetry).unwrap();
        assert_eq!(inv.g_sigma, 1);
        assert_eq!(inv.n, 2);
        assert_eq!(inv.fixed_points.len(), 4);
        // two of the fixed points are at infinity
        assert_eq!(inv.fixed_points.iter().filter(|p| p.is_infinite()).count(), 2);
    }

    #[test]
    fn not_even_symmetric_rejected() {
        let c = curve(&[0.0, -1.0, 0.0, 1.0]);
        assert!(matches!(
            involution_data(&c, InvolutionKind::EvenSymmetry),
            Err(Error::NotEvenSymmetric)
        ));
    }

    #[test]
    fn involution_squares_to_identity_on_samples() {
        let c = curve(&[-6.0, 0.0, 11.0, 0.0, -6.0, 0.0, 1.0]);
        for kind in [InvolutionKind::Hyperelliptic, InvolutionKind::EvenSymmetry] {
            let inv = involution_data(&c, kind).unwrap();
            let mut state = 0x2545f4914f6cdd1du64;
            for _ in 0..100 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let re = ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 6.0;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let im = ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 6.0;
                let x = Complex64::new(re, im);
                let y = c.f().eval(x).sqrt();
                let p = SurfacePoint::finite(x, y);
                let q = inv.apply_point(&inv.apply_point(&p));
                assert!(p.approx_eq(&q, 1e-10));
            }
        }
    }
}
