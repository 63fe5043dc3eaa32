//! Dense complex polynomials and simultaneous root finding.
//!
//! Coefficients are stored in ascending degree order. The root finder is an
//! Aberth–Ehrlich simultaneous iteration with an explicit iteration cap and a
//! residual-based convergence test; it is accurate for the moderate degrees
//! (≤ 20) that arise from curve equations here.

use crate::error::Error;
use num_complex::Complex64;

/// A polynomial with complex coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::new(vec![Complex64::new(0.0, 0.0)])
    }

    pub fn one() -> Self {
        Polynomial::new(vec![Complex64::new(1.0, 0.0)])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Polynomial::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of x^k, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| c * ((k + 1) as f64))
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            out[k] = self.coeff(k) + other.coeff(k);
        }
        Polynomial::new(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Synthetic division by (x - root); the remainder is discarded.
    pub fn deflate(&self, root: Complex64) -> Polynomial {
        let n = self.degree();
        if n == 0 {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let mut carry = self.coeffs[n];
        for k in (0..n).rev() {
            out[k] = carry;
            carry = self.coeffs[k] + carry * root;
        }
        Polynomial::new(out)
    }

    /// The polynomial Σ_i a_i t^(target_deg - i), i.e. the coefficient
    /// reversal used in the chart at infinity. Requires target_deg ≥ deg.
    pub fn reversed_into_degree(&self, target_deg: usize) -> Polynomial {
        assert!(target_deg >= self.degree());
        let mut out = vec![Complex64::new(0.0, 0.0); target_deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[target_deg - i] = c;
        }
        Polynomial::new(out)
    }

    /// True when all odd-degree coefficients are negligible against the
    /// largest coefficient.
    pub fn is_even_symmetric(&self, rel_tol: f64) -> bool {
        let scale = self.max_coeff_norm();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 1)
            .all(|(_, c)| c.norm() <= rel_tol * scale)
    }

    /// For f(x) = h(x²) returns h (odd coefficients dropped).
    pub fn even_part_in_square(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().step_by(2).copied().collect())
    }
}

/// Tolerance under which two roots count as equal: 1e-8 · (1 + max |root|).
pub fn root_coincidence_tol(roots: &[Complex64]) -> f64 {
    let scale = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    1e-8 * (1.0 + scale)
}

/// Finds all complex roots of `p` by Aberth–Ehrlich iteration.
///
/// The iteration cap is 200; convergence is declared when every correction
/// falls below 1e-13 relative to the root magnitude, or when every residual
/// |p(z)| is small against the evaluation scale at z.
pub fn find_roots(p: &Polynomial) -> Result<Vec<Complex64>, Error> {
    let n = p.degree();
    if n == 0 || p.leading().norm() == 0.0 {
        return Err(Error::DegreeTooSmall(n));
    }
    if n == 1 {
        return Ok(vec![-p.coeff(0) / p.coeff(1)]);
    }

    let lead = p.leading();
    let monic = Polynomial::new(p.coeffs().iter().map(|&c| c / lead).collect());
    let dmonic = monic.derivative();

    // Fujiwara bound on root magnitudes gives the initial circle.
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let c = monic.coeff(n - k).norm();
        if c > 0.0 {
            bound = bound.max(2.0 * c.powf(1.0 / k as f64));
        }
    }
    if bound == 0.0 {
        bound = 1.0;
    }
    let radius = 0.65 * bound + 0.1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let max_iter = 200;
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = monic.eval(z[i]);
            let dv = dmonic.eval(z[i]);
            if !pv.is_finite() || !dv.is_finite() {
                return Err(Error::DidNotConverge);
            }
            let newton = if dv.norm() > 0.0 { pv / dv } else { pv };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 1e-300 {
                        repulsion += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-13 {
            converged = true;
            break;
        }
    }

    // A stalled iteration is still acceptable when the residuals are small
    // (clustered roots stall at ~sqrt(eps) step sizes).
    if !converged {
        for &zi in &z {
            let eval_scale: f64 = monic
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c.norm() * zi.norm().powi(k as i32))
                .sum::<f64>()
                .max(1.0);
            if monic.eval(zi).norm() > 1e-9 * eval_scale {
                return Err(Error::DidNotConverge);
            }
        }
    }

    // Polish. Isolated roots take plain Newton; clustered roots use Newton
    // on p/p', whose zeros are simple even at multiple roots, so genuine
    // multiplicities collapse below the coincidence tolerance.
    let d2monic = dmonic.derivative();
    let scale = 1.0 + z.iter().map(|r| r.norm()).fold(0.0, f64::max);
    for i in 0..n {
        let nearest = (0..n)
            .filter(|&j| j != i)
            .map(|j| (z[i] - z[j]).norm())
            .fold(f64::INFINITY, f64::min);
        let zi = &mut z[i];
        if nearest > 1e-4 * scale {
            for _ in 0..3 {
                let dv = dmonic.eval(*zi);
                if dv.norm() > 1e-300 {
                    *zi -= monic.eval(*zi) / dv;
                }
            }
        } else {
            for _ in 0..8 {
                let pv = monic.eval(*zi);
                let dv = dmonic.eval(*zi);
                let ddv = d2monic.eval(*zi);
                let denom = dv * dv - pv * ddv;
                if denom.norm() > 1e-300 {
                    *zi -= pv * dv / denom;
                }
            }
        }
    }

    z.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(z)
}

/// Errors out when two roots coincide within the coincidence tolerance.
pub fn require_squarefree(roots: &[Complex64]) -> Result<(), Error> {
    let tol = root_coincidence_tol(roots);
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if (roots[i] - roots[j]).norm() < tol {
                return Err(Error::NonSquarefree);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_factored_cubic() {
        // x^3 - x = x(x-1)(x+1)
        let p = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]);
        let roots = find_roots(&p).unwrap();
        let expected = [c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        for e in expected {
            assert!(roots.iter().any(|r| (r - e).norm() < 1e-10));
        }
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let roots = find_roots(&p).unwrap();
        assert!(roots.iter().any(|r| (r - c(0.0, 1.0)).norm() < 1e-10));
        assert!(roots.iter().any(|r| (r - c(0.0, -1.0)).norm() < 1e-10));
    }

    #[test]
    fn roots_of_expanded_quartic() {
        // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
        let p = Polynomial::from_real(&[24.0, -50.0, 35.0, -10.0, 1.0]);
        let roots = find_roots(&p).unwrap();
        for e in [1.0, 2.0, 3.0, 4.0] {
            assert!(roots.iter().any(|r| (r - c(e, 0.0)).norm() < 1e-9));
        }
    }

    #[test]
    fn product_reconstructs_polynomial() {
        let p = Polynomial::from_real(&[2.0, -3.5, 0.0, 1.25, 4.0, 1.0]);
        let roots = find_roots(&p).unwrap();
        let rebuilt = Polynomial::from_roots(&roots).scale(p.leading());
        let scale = p.max_coeff_norm();
        for k in 0..=p.degree() {
            assert!(
                (rebuilt.coeff(k) - p.coeff(k)).norm() <= 1e-10 * scale,
                "coefficient {k} off: {} vs {}",
                rebuilt.coeff(k),
                p.coeff(k)
            );
        }
    }

    #[test]
    fn repeated_root_detected() {
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
        let p = Polynomial::from_real(&[-2.0, 5.0, -4.0, 1.0]);
        let roots = find_roots(&p).unwrap();
        assert!(require_squarefree(&roots).is_err());
    }

    #[test]
    fn deflation_removes_root() {
        let roots = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -0.25)];
        let p = Polynomial::from_roots(&roots);
        let q = p.deflate(roots[1]);
        assert_eq!(q.degree(), 2);
        assert!(q.eval(roots[0]).norm() < 1e-12);
        assert!(q.eval(roots[2]).norm() < 1e-12);
    }

    #[test]
    fn even_symmetry_detection() {
        let f = Polynomial::from_real(&[-6.0, 0.0, 11.0, 0.0, -6.0, 0.0, 1.0]);
        assert!(f.is_even_symmetric(1e-12));
        let h = f.even_part_in_square();
        assert_eq!(h.degree(), 3);
        // h(u) = u^3 - 6u^2 + 11u - 6 = (u-1)(u-2)(u-3)
        assert!(h.eval(c(2.0, 0.0)).norm() < 1e-12);
        let g = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]);
        assert!(!g.is_even_symmetric(1e-12));
    }
}
