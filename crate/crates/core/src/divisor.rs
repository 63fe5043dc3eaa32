//! Formal divisors and the divisor calculus of the double covering.
//!
//! Orders at infinity and at branch points are always computed symbolically
//! from degrees in the chart t = 1/x, s = y t^(g+1); only the location of
//! finite zeros goes through the numerical root finder.

use crate::curve::{Curve, InfSheet, Involution, InvolutionKind, QuotientModel, SurfacePoint};
use crate::curve::DifferentialForm;
use crate::error::Error;
use crate::poly::{find_roots, root_coincidence_tol, Polynomial};
use num_complex::Complex64;

/// A formal sum of surface points with integer multiplicities.
#[derive(Clone, Debug, Default)]
pub struct Divisor {
    points: Vec<(SurfacePoint, i64)>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor { points: Vec::new() }
    }

    pub fn single(p: SurfacePoint, mult: i64) -> Self {
        let mut d = Divisor::empty();
        d.add_point(p, mult, 0.0);
        d
    }

    /// Adds `mult · p`, merging with an existing point within `tol`.
    pub fn add_point(&mut self, p: SurfacePoint, mult: i64, tol: f64) {
        if mult == 0 {
            return;
        }
        for (q, m) in self.points.iter_mut() {
            if q.approx_eq(&p, tol) {
                *m += mult;
                if *m == 0 {
                    let key = q.sort_key();
                    self.points.retain(|(r, _)| r.sort_key() != key);
                }
                return;
            }
        }
        self.points.push((p, mult));
        self.points
            .sort_by(|a, b| a.0.sort_key().partial_cmp(&b.0.sort_key()).unwrap());
    }

    pub fn add(&mut self, other: &Divisor, tol: f64) {
        for (p, m) in &other.points {
            self.add_point(*p, *m, tol);
        }
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            points: self.points.iter().map(|(p, m)| (*p, -m)).collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &(SurfacePoint, i64)> {
        self.points.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Equality as formal sums, matching points within `tol`.
    pub fn approx_eq(&self, other: &Divisor, tol: f64) -> bool {
        let mut diff = self.clone();
        diff.add(&other.neg(), tol);
        diff.is_empty()
    }
}

/// Image of a divisor under the involution; degree is preserved.
pub fn sigma_divisor(inv: &Involution, d: &Divisor, tol: f64) -> Divisor {
    let mut out = Divisor::empty();
    for (p, m) in d.support() {
        out.add_point(inv.apply_point(p), *m, tol);
    }
    out
}

/// A point of the quotient surface.
#[derive(Clone, Copy, Debug)]
pub enum QuotientPoint {
    /// Finite point u of the sphere quotient.
    SphereFinite(Complex64),
    /// The point u = ∞ of the sphere quotient.
    SphereInfinity,
    /// A point of the quotient curve y² = h(u).
    OnCurve(SurfacePoint),
}

/// A formal sum of quotient points.
#[derive(Clone, Debug, Default)]
pub struct QuotientDivisor {
    pub points: Vec<(QuotientPoint, i64)>,
}

impl QuotientDivisor {
    pub fn degree(&self) -> i64 {
        self.points.iter().map(|(_, m)| m).sum()
    }
}

/// A meromorphic 1-form on the quotient: P(u) du, or P(u) du / y on a
/// quotient curve.
#[derive(Clone, Debug)]
pub struct QuotientForm {
    pub numerator: Polynomial,
    pub over_y: bool,
}

impl QuotientForm {
    pub fn du() -> Self {
        QuotientForm {
            numerator: Polynomial::one(),
            over_y: false,
        }
    }

    pub fn poly_du(p: Polynomial) -> Self {
        QuotientForm {
            numerator: p,
            over_y: false,
        }
    }

    pub fn poly_du_over_y(p: Polynomial) -> Self {
        QuotientForm {
            numerator: p,
            over_y: true,
        }
    }
}

/// Clusters the roots of `p` into (root, multiplicity) pairs.
fn clustered_roots(p: &Polynomial) -> Result<Vec<(Complex64, usize)>, Error> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let roots = find_roots(p)?;
    let tol = root_coincidence_tol(&roots);
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|(c, _)| (*c - r).norm() < tol) {
            Some((_, m)) => *m += 1,
            None => out.push((r, 1)),
        }
    }
    Ok(out)
}

fn is_branch_x(c: &Curve, x: Complex64) -> bool {
    let tol = root_coincidence_tol(c.branch_x());
    c.branch_x().iter().any(|b| (b - x).norm() < tol)
}

fn merge_tol(c: &Curve) -> f64 {
    1e-7 * c.scale()
}

/// Divisor of the form N(x) dx / y for an arbitrary polynomial numerator.
///
/// A simple zero of N over a regular fiber contributes both preimages; over
/// a branch point the local coordinate is √(x−b), doubling the order. At
/// infinity the order is 2(g−1−deg N) (odd degree) or g−1−deg N at each of
/// the two points (even degree).
pub fn divisor_of_numerator_form(c: &Curve, numerator: &Polynomial) -> Result<Divisor, Error> {
    if numerator.is_zero() {
        return Err(Error::ZeroForm);
    }
    let g = c.genus() as i64;
    let tol = merge_tol(c);
    let mut d = Divisor::empty();
    for (x0, e) in clustered_roots(numerator)? {
        if is_branch_x(c, x0) {
            d.add_point(
                SurfacePoint::finite(x0, Complex64::new(0.0, 0.0)),
                2 * e as i64,
                tol,
            );
        } else {
            let y0 = c.f().eval(x0).sqrt();
            d.add_point(SurfacePoint::finite(x0, y0), e as i64, tol);
            d.add_point(SurfacePoint::finite(x0, -y0), e as i64, tol);
        }
    }
    let v = g - 1 - numerator.degree() as i64;
    if c.is_odd_degree() {
        d.add_point(SurfacePoint::Infinity(InfSheet::Single), 2 * v, tol);
    } else {
        d.add_point(SurfacePoint::Infinity(InfSheet::Plus), v, tol);
        d.add_point(SurfacePoint::Infinity(InfSheet::Minus), v, tol);
    }
    Ok(d)
}

/// Divisor of a holomorphic differential; always of degree 2g − 2.
pub fn divisor_of_form(c: &Curve, form: &DifferentialForm) -> Result<Divisor, Error> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    divisor_of_numerator_form(c, &form.numerator())
}

/// Divisor of dx as a meromorphic form on the curve.
pub fn divisor_of_dx(c: &Curve) -> Divisor {
    let tol = merge_tol(c);
    let mut d = Divisor::empty();
    for &b in c.branch_x() {
        d.add_point(SurfacePoint::finite(b, Complex64::new(0.0, 0.0)), 1, tol);
    }
    if c.is_odd_degree() {
        d.add_point(SurfacePoint::Infinity(InfSheet::Single), -3, tol);
    } else {
        d.add_point(SurfacePoint::Infinity(InfSheet::Plus), -2, tol);
        d.add_point(SurfacePoint::Infinity(InfSheet::Minus), -2, tol);
    }
    d
}

/// Divisor of the coordinate function y.
pub fn divisor_of_y(c: &Curve) -> Divisor {
    let tol = merge_tol(c);
    let g = c.genus() as i64;
    let mut d = Divisor::empty();
    for &b in c.branch_x() {
        d.add_point(SurfacePoint::finite(b, Complex64::new(0.0, 0.0)), 1, tol);
    }
    if c.is_odd_degree() {
        d.add_point(SurfacePoint::Infinity(InfSheet::Single), -(2 * g + 1), tol);
    } else {
        d.add_point(SurfacePoint::Infinity(InfSheet::Plus), -(g + 1), tol);
        d.add_point(SurfacePoint::Infinity(InfSheet::Minus), -(g + 1), tol);
    }
    d
}

/// Divisor of a polynomial in x viewed as a function on the curve.
pub fn divisor_of_poly(c: &Curve, p: &Polynomial) -> Result<Divisor, Error> {
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let tol = merge_tol(c);
    let mut d = Divisor::empty();
    for (x0, e) in clustered_roots(p)? {
        if is_branch_x(c, x0) {
            d.add_point(
                SurfacePoint::finite(x0, Complex64::new(0.0, 0.0)),
                2 * e as i64,
                tol,
            );
        } else {
            let y0 = c.f().eval(x0).sqrt();
            d.add_point(SurfacePoint::finite(x0, y0), e as i64, tol);
            d.add_point(SurfacePoint::finite(x0, -y0), e as i64, tol);
        }
    }
    let deg = p.degree() as i64;
    if c.is_odd_degree() {
        d.add_point(SurfacePoint::Infinity(InfSheet::Single), -2 * deg, tol);
    } else {
        d.add_point(SurfacePoint::Infinity(InfSheet::Plus), -deg, tol);
        d.add_point(SurfacePoint::Infinity(InfSheet::Minus), -deg, tol);
    }
    Ok(d)
}

/// Divisor of a quotient form on the quotient surface.
pub fn quotient_form_divisor(
    inv: &Involution,
    form: &QuotientForm,
) -> Result<QuotientDivisor, Error> {
    if form.numerator.is_zero() {
        return Err(Error::ZeroForm);
    }
    match &inv.quotient {
        QuotientModel::Sphere => {
            if form.over_y {
                return Err(Error::Parse(
                    "forms on the sphere quotient are P(u) du".into(),
                ));
            }
            let mut points = Vec::new();
            for (u0, e) in clustered_roots(&form.numerator)? {
                points.push((QuotientPoint::SphereFinite(u0), e as i64));
            }
            points.push((
                QuotientPoint::SphereInfinity,
                -(form.numerator.degree() as i64 + 2),
            ));
            Ok(QuotientDivisor { points })
        }
        QuotientModel::Curve(q) => {
            let d = if form.over_y {
                divisor_of_numerator_form(q, &form.numerator)?
            } else {
                let mut d = divisor_of_poly(q, &form.numerator)?;
                d.add(&divisor_of_dx(q), merge_tol(q));
                d
            };
            Ok(QuotientDivisor {
                points: d
                    .support()
                    .map(|(p, m)| (QuotientPoint::OnCurve(*p), *m))
                    .collect(),
            })
        }
    }
}

/// Preimages of a quotient point, with covering multiplicities.
///
/// Branch points of the covering pull back to twice their single ramification
/// preimage; regular points pull back to the two points of their fiber.
pub fn pullback_point(
    c: &Curve,
    inv: &Involution,
    qp: &QuotientPoint,
) -> Result<Vec<(SurfacePoint, i64)>, Error> {
    let tol = merge_tol(c);
    match (inv.kind, qp) {
        (InvolutionKind::Hyperelliptic, QuotientPoint::SphereFinite(u0)) => {
            if is_branch_x(c, *u0) {
                Ok(vec![(
                    SurfacePoint::finite(*u0, Complex64::new(0.0, 0.0)),
                    2,
                )])
            } else {
                let y0 = c.f().eval(*u0).sqrt();
                if y0.norm() <= tol {
                    return Err(Error::PreimageResolutionFailed);
                }
                Ok(vec![
                    (SurfacePoint::finite(*u0, y0), 1),
                    (SurfacePoint::finite(*u0, -y0), 1),
                ])
            }
        }
        (InvolutionKind::Hyperelliptic, QuotientPoint::SphereInfinity) => {
            if c.is_odd_degree() {
                Ok(vec![(SurfacePoint::Infinity(InfSheet::Single), 2)])
            } else {
                Ok(vec![
                    (SurfacePoint::Infinity(InfSheet::Plus), 1),
                    (SurfacePoint::Infinity(InfSheet::Minus), 1),
                ])
            }
        }
        (InvolutionKind::EvenSymmetry, QuotientPoint::OnCurve(p)) => match p {
            SurfacePoint::Finite { x: u0, y: y0 } => {
                if u0.norm() <= tol {
                    Ok(vec![(SurfacePoint::finite(Complex64::new(0.0, 0.0), *y0), 2)])
                } else {
                    let w = u0.sqrt();
                    Ok(vec![
                        (SurfacePoint::finite(w, *y0), 1),
                        (SurfacePoint::finite(-w, *y0), 1),
                    ])
                }
            }
            SurfacePoint::Infinity(InfSheet::Single) => Ok(vec![
                (SurfacePoint::Infinity(InfSheet::Plus), 1),
                (SurfacePoint::Infinity(InfSheet::Minus), 1),
            ]),
            SurfacePoint::Infinity(sheet) => Ok(vec![(SurfacePoint::Infinity(*sheet), 2)]),
        },
        _ => Err(Error::PreimageResolutionFailed),
    }
}

/// Pullback of a quotient divisor; doubles the degree.
pub fn pullback_divisor(
    c: &Curve,
    inv: &Involution,
    qd: &QuotientDivisor,
) -> Result<Divisor, Error> {
    let tol = merge_tol(c);
    let mut d = Divisor::empty();
    for (qp, mult) in &qd.points {
        for (p, m) in pullback_point(c, inv, qp)? {
            d.add_point(p, m * mult, tol);
        }
    }
    Ok(d)
}

/// Divisor of the pulled-back form π*ω_σ on the covering curve.
pub fn divisor_of_pullback_form(
    c: &Curve,
    inv: &Involution,
    form: &QuotientForm,
) -> Result<Divisor, Error> {
    match inv.kind {
        InvolutionKind::Hyperelliptic => {
            // π*(P(u) du) = P(x) dx.
            let mut d = divisor_of_poly(c, &form.numerator)?;
            d.add(&divisor_of_dx(c), merge_tol(c));
            Ok(d)
        }
        InvolutionKind::EvenSymmetry => {
            // u = x², du = 2x dx.
            let p = &form.numerator;
            let mut spread = vec![Complex64::new(0.0, 0.0); 2 * p.degree() + 2];
            for (k, &cv) in p.coeffs().iter().enumerate() {
                spread[2 * k + 1] = cv * 2.0;
            }
            let n = Polynomial::new(spread); // 2x · P(x²)
            if form.over_y {
                divisor_of_numerator_form(c, &n)
            } else {
                let mut d = divisor_of_poly(c, &n)?;
                d.add(&divisor_of_dx(c), merge_tol(c));
                Ok(d)
            }
        }
    }
}

/// The ramification divisor Σ_p p over the fixed points of the involution.
pub fn ramification_divisor(c: &Curve, inv: &Involution) -> Divisor {
    let tol = merge_tol(c);
    let mut d = Divisor::empty();
    for p in &inv.fixed_points {
        d.add_point(*p, 1, tol);
    }
    d
}

/// Outcome of the canonical splitting of a pulled-back form divisor.
#[derive(Clone, Debug)]
pub struct SplitReport {
    /// (π*ω_σ) = π*((ω_σ)) + R_π as formal sums.
    pub pullback_identity_ok: bool,
    /// (π*ω_σ) = K̃ + σ(K̃) + R_π as formal sums.
    pub split_identity_ok: bool,
    pub pulled_form_divisor: Divisor,
    pub ktilde_degree: i64,
}

/// Splits (π*ω_σ) as K̃ + σ(K̃) + R_π with deg K̃ = 2 g_σ − 2.
///
/// Over each regular quotient point one of the two preimages is chosen for
/// K̃ (deterministically, by coordinate ordering); over a branch point the
/// ramification preimage enters K̃ with multiplicity one per quotient
/// multiplicity. The split is not unique; only the identity is contractual.
pub fn split_pullback_canonical(
    c: &Curve,
    inv: &Involution,
    form: &QuotientForm,
) -> Result<(Divisor, SplitReport), Error> {
    let tol = merge_tol(c);
    let qd = quotient_form_divisor(inv, form)?;
    let pulled = divisor_of_pullback_form(c, inv, form)?;
    let r_pi = ramification_divisor(c, inv);

    let mut pulled_qd = pullback_divisor(c, inv, &qd)?;
    pulled_qd.add(&r_pi, tol);
    let pullback_identity_ok = pulled.approx_eq(&pulled_qd, tol);

    let mut ktilde = Divisor::empty();
    for (qp, mult) in &qd.points {
        let pre = pullback_point(c, inv, qp)?;
        if pre.len() == 1 {
            // Ramified fiber: the preimage carries multiplicity one in K̃.
            ktilde.add_point(pre[0].0, *mult, tol);
        } else {
            let chosen = pre
                .iter()
                .map(|(p, _)| *p)
                .max_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap())
                .ok_or(Error::SplitFailed)?;
            ktilde.add_point(chosen, *mult, tol);
        }
    }

    let mut rhs = ktilde.clone();
    rhs.add(&sigma_divisor(inv, &ktilde, tol), tol);
    rhs.add(&r_pi, tol);
    let split_identity_ok = pulled.approx_eq(&rhs, tol);
    if !split_identity_ok {
        return Err(Error::SplitFailed);
    }

    let report = SplitReport {
        pullback_identity_ok,
        split_identity_ok,
        pulled_form_divisor: pulled,
        ktilde_degree: ktilde.degree(),
    };
    Ok((ktilde, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{involution_data, InvolutionKind};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g1_curve() -> Curve {
        Curve::new(Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0])).unwrap()
    }

    fn even_g2_curve() -> Curve {
        // f = (x²-1)(x²-2)(x²-3)
        Curve::new(Polynomial::from_real(&[-6.0, 0.0, 11.0, 0.0, -6.0, 0.0, 1.0])).unwrap()
    }

    #[test]
    fn sigma_preserves_degree_and_is_involutive() {
        let c = g1_curve();
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        let mut d = Divisor::empty();
        d.add_point(SurfacePoint::finite(c64(2.0, 0.0), c64(6.0f64.sqrt(), 0.0)), 3, 1e-9);
        d.add_point(SurfacePoint::Infinity(InfSheet::Single), -2, 1e-9);
        let sd = sigma_divisor(&inv, &d, 1e-9);
        assert_eq!(sd.degree(), d.degree());
        let back = sigma_divisor(&inv, &sd, 1e-9);
        assert!(back.approx_eq(&d, 1e-9));
    }

    #[test]
    fn sigma_fixes_fixed_points() {
        let c = g1_curve();
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        for p in &inv.fixed_points {
            let d = Divisor::single(*p, 1);
            assert!(sigma_divisor(&inv, &d, 1e-9).approx_eq(&d, 1e-9));
        }
    }

    #[test]
    fn form_divisor_degree_is_2g_minus_2() {
        // g = 2, deg f = 5: (dx/y) = 2·∞
        let c5 = Curve::new(Polynomial::from_real(&[0.0, -1.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(c5.genus(), 2);
        let d = divisor_of_form(&c5, &DifferentialForm::monomial(2, 1)).unwrap();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.len(), 1);
        assert!(d
            .support()
            .all(|(p, m)| matches!(p, SurfacePoint::Infinity(InfSheet::Single)) && *m == 2));

        // g = 2, deg f = 6: (dx/y) = ∞₊ + ∞₋
        let c6 = even_g2_curve();
        let d6 = divisor_of_form(&c6, &DifferentialForm::monomial(2, 1)).unwrap();
        assert_eq!(d6.degree(), 2);
        assert_eq!(d6.len(), 2);

        // (2x dx/y) on the even curve hits exactly the two points over x = 0.
        let form = DifferentialForm::new(vec![c64(0.0, 0.0), c64(2.0, 0.0)]);
        let dx2 = divisor_of_form(&c6, &form).unwrap();
        assert_eq!(dx2.degree(), 2);
        let y0 = c64(-6.0, 0.0).sqrt();
        assert!(dx2
            .support()
            .any(|(p, m)| p.approx_eq(&SurfacePoint::finite(c64(0.0, 0.0), y0), 1e-9) && *m == 1));
        assert!(dx2.support().any(
            |(p, m)| p.approx_eq(&SurfacePoint::finite(c64(0.0, 0.0), -y0), 1e-9) && *m == 1
        ));
    }

    #[test]
    fn pullback_doubles_degree() {
        let c = g1_curve();
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        // branch point: 2p
        let qd = QuotientDivisor {
            points: vec![(QuotientPoint::SphereFinite(c64(0.0, 0.0)), 1)],
        };
        let d = pullback_divisor(&c, &inv, &qd).unwrap();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.len(), 1);
        // generic point: p + σ(p)
        let qd2 = QuotientDivisor {
            points: vec![(QuotientPoint::SphereFinite(c64(2.0, 0.0)), 1)],
        };
        let d2 = pullback_divisor(&c, &inv, &qd2).unwrap();
        assert_eq!(d2.degree(), 2);
        assert_eq!(d2.len(), 2);
        // empty divisor
        let d3 = pullback_divisor(&c, &inv, &QuotientDivisor::default()).unwrap();
        assert!(d3.is_empty());
    }

    #[test]
    fn split_even_symmetry_holomorphic_quotient_form() {
        // ω_σ = du/y on the genus-1 quotient has empty divisor, so K̃ = 0.
        let c = even_g2_curve();
        let inv = involution_data(&c, InvolutionKind::EvenSymmetry).unwrap();
        let (ktilde, report) = split_pullback_canonical(&c, &inv, &QuotientForm {
            numerator: Polynomial::one(),
            over_y: true,
        })
        .unwrap();
        assert!(ktilde.is_empty());
        assert_eq!(report.ktilde_degree, 0);
        assert!(report.pullback_identity_ok);
        assert!(report.split_identity_ok);
        assert_eq!(report.pulled_form_divisor.degree(), 2);
    }

    #[test]
    fn split_hyperelliptic_du_on_sphere() {
        // (dx) = w₁+w₂+w₃ − 3∞ on y² = x³ − x; K̃ has degree −2.
        let c = g1_curve();
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        let (ktilde, report) =
            split_pullback_canonical(&c, &inv, &QuotientForm::du()).unwrap();
        assert_eq!(ktilde.degree(), -2);
        assert!(report.pullback_identity_ok);
        assert!(report.split_identity_ok);
        let dx = report.pulled_form_divisor;
        assert_eq!(dx.degree(), 0);
        assert!(dx
            .support()
            .any(|(p, m)| matches!(p, SurfacePoint::Infinity(InfSheet::Single)) && *m == -3));
    }

    #[test]
    fn pullback_degree_bookkeeping_for_quotient_forms() {
        // deg (π*ω_σ) = 2(2g_σ−2) + 2n for several quotient forms.
        let c = even_g2_curve();
        let inv = involution_data(&c, InvolutionKind::EvenSymmetry).unwrap();
        for form in [
            QuotientForm::poly_du_over_y(Polynomial::one()),
            QuotientForm::poly_du_over_y(Polynomial::from_real(&[0.0, 1.0])),
            QuotientForm::du(),
            QuotientForm::poly_du(Polynomial::from_real(&[1.0, 2.0])),
        ] {
            let d = divisor_of_pullback_form(&c, &inv, &form).unwrap();
            let expected = 2 * (2 * inv.g_sigma as i64 - 2) + 2 * inv.n as i64;
            assert_eq!(d.degree(), expected);
            let (_, report) = split_pullback_canonical(&c, &inv, &form).unwrap();
            assert!(report.pullback_identity_ok, "lemma (a) failed for {form:?}");
        }
    }

    #[test]
    fn lemma_a_for_hyperelliptic_forms() {
        let c = g1_curve();
        let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
        for form in [
            QuotientForm::du(),
            QuotientForm::poly_du(Polynomial::from_real(&[0.0, 1.0])),
            QuotientForm::poly_du(Polynomial::from_real(&[3.0, 0.0, 1.0])),
        ] {
            let (_, report) = split_pullback_canonical(&c, &inv, &form).unwrap();
            assert!(report.pullback_identity_ok);
            assert!(report.split_identity_ok);
        }
    }
}
