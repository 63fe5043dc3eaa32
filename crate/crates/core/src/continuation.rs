//! Analytic continuation of y = √F(x) along polylines.
//!
//! The branch is tracked by nearest-value matching, which is sound as long
//! as the argument of F changes by less than π/4 per step; steps violating
//! that bound are bisected adaptively.

use crate::error::Error;
use crate::poly::Polynomial;
use num_complex::Complex64;

const MAX_DEPTH: u32 = 48;

/// Continues the branch of √F from (x0, y0) to x1 along the straight
/// segment. `y0` must satisfy y0² ≈ F(x0).
pub fn continue_sqrt(
    f: &Polynomial,
    x0: Complex64,
    y0: Complex64,
    x1: Complex64,
) -> Result<Complex64, Error> {
    continue_impl(f, x0, y0, x1, 0)
}

fn continue_impl(
    f: &Polynomial,
    x0: Complex64,
    y0: Complex64,
    x1: Complex64,
    depth: u32,
) -> Result<Complex64, Error> {
    let f0 = f.eval(x0);
    let f1 = f.eval(x1);
    if f0.norm() == 0.0 || f1.norm() == 0.0 {
        return Err(Error::SheetLost);
    }
    let ratio = f1 / f0;
    if ratio.arg().abs() < std::f64::consts::FRAC_PI_4 && ratio.norm() > 0.2 && ratio.norm() < 5.0 {
        let root = f1.sqrt();
        return Ok(if (root - y0).norm() <= (root + y0).norm() {
            root
        } else {
            -root
        });
    }
    if depth >= MAX_DEPTH {
        return Err(Error::SheetLost);
    }
    let mid = (x0 + x1) * 0.5;
    let ym = continue_impl(f, x0, y0, mid, depth + 1)?;
    continue_impl(f, mid, ym, x1, depth + 1)
}

/// Continues √F along all vertices of a polyline; returns the branch value
/// at every vertex.
pub fn continue_along(
    f: &Polynomial,
    vertices: &[Complex64],
    y0: Complex64,
) -> Result<Vec<Complex64>, Error> {
    let mut out = Vec::with_capacity(vertices.len());
    let mut y = y0;
    out.push(y);
    for w in vertices.windows(2) {
        y = continue_sqrt(f, w[0], y, w[1])?;
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
        (0..=n)
            .map(|k| {
                center
                    + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
            })
            .collect()
    }

    #[test]
    fn constant_path_keeps_value() {
        let f = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]);
        let x = c(2.0, 0.0);
        let y = f.eval(x).sqrt();
        assert_eq!(continue_sqrt(&f, x, y, x).unwrap(), y);
    }

    #[test]
    fn loop_around_one_branch_point_flips_sign() {
        let f = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]); // roots -1, 0, 1
        let path = circle(c(1.0, 0.0), 0.4, 16);
        let y0 = f.eval(path[0]).sqrt();
        let values = continue_along(&f, &path, y0).unwrap();
        let end = values[values.len() - 1];
        assert!((end + y0).norm() < 1e-10 * (1.0 + y0.norm()));
    }

    #[test]
    fn loop_around_two_branch_points_is_trivial() {
        let f = Polynomial::from_real(&[0.0, -1.0, 0.0, 1.0]);
        let path = circle(c(0.5, 0.0), 0.75, 32); // encircles 0 and 1
        let y0 = f.eval(path[0]).sqrt();
        let values = continue_along(&f, &path, y0).unwrap();
        let end = values[values.len() - 1];
        assert!((end - y0).norm() < 1e-10 * (1.0 + y0.norm()));
    }
}
