use super::*;
use crate::curve::{involution_data, InvolutionKind};
use crate::poly::Polynomial;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn curve(coeffs: &[f64]) -> Curve {
    Curve::new(Polynomial::from_real(coeffs)).unwrap()
}

fn even_coeffs(h_roots: &[f64]) -> Vec<f64> {
    let h = Polynomial::from_roots(
        &h_roots.iter().map(|&r| c64(r, 0.0)).collect::<Vec<_>>(),
    );
    let mut f = vec![0.0; 2 * h.degree() + 1];
    for (k, &c) in h.coeffs().iter().enumerate() {
        f[2 * k] = c.re;
    }
    f
}

fn basis_for(
    c: &Curve,
    kind: InvolutionKind,
) -> (crate::curve::Involution, CycleBasis) {
    let inv = involution_data(c, kind).unwrap();
    let params = BasisParams::default();
    let pairing = pair_branch_points(c, &inv, None, &params).unwrap();
    let basis = build_adapted_basis(c, &inv, &pairing, &params).unwrap();
    (inv, basis)
}

#[test]
fn genus1_hyperelliptic_basis() {
    let c = curve(&[0.0, -1.0, 0.0, 1.0]);
    let (_, basis) = basis_for(&c, InvolutionKind::Hyperelliptic);
    assert_eq!(basis.cycles.len(), 2);
    assert!(basis.is_standard_symplectic());
    assert_eq!(basis.cycles[0].label, CycleLabel::C(0));
    assert_eq!(basis.cycles[1].label, CycleLabel::D(0));
    // C₁ ⋆ D₁ = 1
    assert_eq!(basis.intersection[0][1], 1);
}

#[test]
fn genus2_hyperelliptic_basis() {
    // y² = x⁵ − x: five finite branch points and one at infinity.
    let c = curve(&[0.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
    let (inv, basis) = basis_for(&c, InvolutionKind::Hyperelliptic);
    assert_eq!(inv.n, 3);
    assert_eq!(basis.cycles.len(), 4);
    assert!(basis.is_standard_symplectic());
    // C₁ ⋆ D₂ = 0 in particular.
    assert_eq!(basis.intersection[0][3], 0);
}

#[test]
fn genus2_even_degree_basis() {
    // y² = x⁶ − 1
    let c = curve(&[-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let (_, basis) = basis_for(&c, InvolutionKind::Hyperelliptic);
    assert_eq!(basis.cycles.len(), 4);
    assert!(basis.is_standard_symplectic());
}

#[test]
fn even_symmetry_n1_basis_is_lifted_quotient() {
    // f = (x²−1)(x²−2)(x²−3): n = 1, g_σ = 1, basis = {A₁, σA₁, B₁, σB₁}.
    let c = curve(&even_coeffs(&[1.0, 2.0, 3.0]));
    let (inv, basis) = basis_for(&c, InvolutionKind::EvenSymmetry);
    assert_eq!(inv.n, 1);
    assert_eq!(basis.cycles.len(), 4);
    assert!(basis.is_standard_symplectic());
    assert_eq!(basis.cycles[0].label, CycleLabel::A(0));
    assert_eq!(basis.cycles[1].label, CycleLabel::SigmaA(0));
    assert_eq!(basis.cycles[2].label, CycleLabel::B(0));
    assert_eq!(basis.cycles[3].label, CycleLabel::SigmaB(0));
}

#[test]
fn even_symmetry_n2_basis() {
    // f = (x²−1)(x²−2)(x²−3)(x²−4): n = 2, g_σ = 1, g = 3.
    let c = curve(&even_coeffs(&[1.0, 2.0, 3.0, 4.0]));
    let (inv, basis) = basis_for(&c, InvolutionKind::EvenSymmetry);
    assert_eq!(inv.n, 2);
    assert_eq!(basis.cycles.len(), 6);
    assert!(basis.is_standard_symplectic());
}

#[test]
fn pairing_respects_forced_pair() {
    let c = curve(&[0.0, -1.0, 0.0, 1.0]);
    let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
    let params = BasisParams::default();
    let p1 = SurfacePoint::finite(c64(-1.0, 0.0), c64(0.0, 0.0));
    let p2 = SurfacePoint::finite(c64(0.0, 0.0), c64(0.0, 0.0));
    let pairing = pair_branch_points(&c, &inv, Some((p1, p2)), &params).unwrap();
    let last = pairing.pairs.last().unwrap();
    assert!(last.0.approx_eq(&p1, 1e-9) && last.1.approx_eq(&p2, 1e-9));
    // the remaining pair carries infinity first
    assert!(pairing.pairs[0].0.is_infinite());
    let basis = build_adapted_basis(&c, &inv, &pairing, &params).unwrap();
    assert!(basis.is_standard_symplectic());
}

#[test]
fn forced_pair_must_be_fixed_points() {
    let c = curve(&[0.0, -1.0, 0.0, 1.0]);
    let inv = involution_data(&c, InvolutionKind::Hyperelliptic).unwrap();
    let params = BasisParams::default();
    let bogus = SurfacePoint::finite(c64(2.0, 0.0), c64(6.0f64.sqrt(), 0.0));
    let p2 = SurfacePoint::finite(c64(0.0, 0.0), c64(0.0, 0.0));
    assert!(matches!(
        pair_branch_points(&c, &inv, Some((bogus, p2)), &params),
        Err(Error::NotFixedPoints)
    ));
}

#[test]
fn intersection_antisymmetry_on_basis_cycles() {
    let c = curve(&[0.0, -1.0, 0.0, 0.0, 0.0, 1.0]);
    let (_, basis) = basis_for(&c, InvolutionKind::Hyperelliptic);
    for i in 0..basis.cycles.len() {
        for j in 0..basis.cycles.len() {
            if i == j {
                continue;
            }
            let ab = intersection_number(&c, &basis.cycles[i], &basis.cycles[j]).unwrap();
            let ba = intersection_number(&c, &basis.cycles[j], &basis.cycles[i]).unwrap();
            assert_eq!(ab, -ba);
        }
    }
}

#[test]
fn sigma_push_is_an_involution_on_cycles() {
    let c = curve(&even_coeffs(&[1.0, 2.0, 3.0]));
    let inv = involution_data(&c, InvolutionKind::EvenSymmetry).unwrap();
    let (_, basis) = basis_for(&c, InvolutionKind::EvenSymmetry);
    let a1 = basis.chain(CycleLabel::A(0)).unwrap();
    let pushed = sigma_push(&c, &inv, a1).unwrap();
    let back = sigma_push(&c, &inv, &pushed).unwrap();
    // structurally the same loop: same intersections against the basis
    for other in &basis.cycles {
        let v1 = intersection_number(&c, a1, other).unwrap();
        let v2 = intersection_number(&c, &back, other).unwrap();
        assert_eq!(v1, v2);
    }
}
