//! Reference curves used throughout the tests and the guide.

use crate::curve::{Curve, InvolutionKind};
use crate::poly::Polynomial;
use num_complex::Complex64;

/// A named curve together with the involution it is meant to exercise.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub curve: Curve,
    pub kind: InvolutionKind,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn curve_from_real(coeffs: &[f64]) -> Curve {
    Curve::new(Polynomial::from_real(coeffs)).expect("fixture curve must be valid")
}

fn curve_from_roots(roots: &[Complex64]) -> Curve {
    Curve::new(Polynomial::from_roots(roots)).expect("fixture curve must be valid")
}

/// y² = h(x²) for h with the given roots.
pub fn even_curve_from_h_roots(h_roots: &[Complex64]) -> Curve {
    let h = Polynomial::from_roots(h_roots);
    let mut coeffs = vec![c(0.0, 0.0); 2 * h.degree() + 1];
    for (k, &v) in h.coeffs().iter().enumerate() {
        coeffs[2 * k] = v;
    }
    Curve::new(Polynomial::new(coeffs)).expect("even fixture curve must be valid")
}

/// Curves exercised with the hyperelliptic involution, genus 1 through 5.
pub fn hyperelliptic_fixtures() -> Vec<Fixture> {
    let k = InvolutionKind::Hyperelliptic;
    vec![
        Fixture { name: "g1 lemniscatic x^3-x", curve: curve_from_real(&[0.0, -1.0, 0.0, 1.0]), kind: k },
        Fixture { name: "g1 scaled 4x^3-4x", curve: curve_from_real(&[0.0, -4.0, 0.0, 4.0]), kind: k },
        Fixture { name: "g1 quartic x^4-1", curve: curve_from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]), kind: k },
        Fixture { name: "g2 odd x^5-x", curve: curve_from_real(&[0.0, -1.0, 0.0, 0.0, 0.0, 1.0]), kind: k },
        Fixture { name: "g2 even x^6-1", curve: curve_from_real(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), kind: k },
        Fixture {
            name: "g2 asymmetric real",
            curve: curve_from_roots(&[c(-3.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(1.5, 0.0), c(2.5, 0.0)]),
            kind: k,
        },
        Fixture { name: "g3 odd x^7-x", curve: curve_from_real(&[0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]), kind: k },
        Fixture {
            name: "g3 even squares",
            curve: even_curve_from_h_roots(&[c(1.0, 0.0), c(4.0, 0.0), c(9.0, 0.0), c(16.0, 0.0)]),
            kind: k,
        },
        Fixture {
            name: "g4 odd x^9-x",
            curve: curve_from_real(&[0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            kind: k,
        },
        Fixture {
            name: "g5 even squares",
            curve: even_curve_from_h_roots(&[
                c(1.0, 0.0), c(4.0, 0.0), c(9.0, 0.0), c(16.0, 0.0), c(25.0, 0.0), c(36.0, 0.0),
            ]),
            kind: k,
        },
    ]
}

/// Curves exercised with the even symmetry, genus 1 through 5.
pub fn even_symmetry_fixtures() -> Vec<Fixture> {
    let k = InvolutionKind::EvenSymmetry;
    vec![
        Fixture { name: "g1 even x^4-1", curve: curve_from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]), kind: k },
        Fixture {
            name: "g2 even n1",
            curve: even_curve_from_h_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]),
            kind: k,
        },
        Fixture {
            name: "g3 even n2",
            curve: even_curve_from_h_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]),
            kind: k,
        },
        Fixture {
            name: "g4 even n1",
            curve: even_curve_from_h_roots(&[
                c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0), c(5.0, 0.0),
            ]),
            kind: k,
        },
        Fixture {
            name: "g5 even n2",
            curve: even_curve_from_h_roots(&[
                c(1.0, 0.0), c(4.0, 0.0), c(9.0, 0.0), c(16.0, 0.0), c(25.0, 0.0), c(36.0, 0.0),
            ]),
            kind: k,
        },
    ]
}

/// Every fixture with its involution.
pub fn all_fixtures() -> Vec<Fixture> {
    let mut v = hyperelliptic_fixtures();
    v.extend(even_symmetry_fixtures());
    v
}
