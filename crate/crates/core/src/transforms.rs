//! Spatial rotations ψ′ = U*ψU and Lorentz boosts ψ′ = SψS.

use serde::{Deserialize, Serialize};

use crate::algebra::{antisymmetric_product, dot3, Octon, Vec3, C64, XI};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::repr::matrix_waveform;

const AXIS_TOL: f64 = 1e-12;

fn check_axis(n: [f64; 3]) -> Result<[f64; 3]> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > AXIS_TOL {
        return Err(Error::BadAxis { norm });
    }
    Ok(n)
}

fn normalize(n: [f64; 3]) -> Result<[f64; 3]> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::BadAxis { norm });
    }
    Ok([n[0] / norm, n[1] / norm, n[2] / norm])
}

fn cvec(n: [f64; 3]) -> Vec3 {
    n.map(|x| C64::new(x, 0.0))
}

/// Rotation by `angle` about a unit axis given on the pseudovector basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotor {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl Rotor {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Rotor> {
        Ok(Rotor { axis: check_axis(axis)?, angle })
    }

    /// Like `new` but scales a nonzero axis to unit length.
    pub fn normalized(axis: [f64; 3], angle: f64) -> Result<Rotor> {
        Ok(Rotor { axis: normalize(axis)?, angle })
    }

    pub fn identity() -> Rotor {
        Rotor { axis: [0.0, 0.0, 1.0], angle: 0.0 }
    }

    /// U = cos(θ/2) + ξ sin(θ/2) n.
    pub fn octon(&self) -> Octon {
        let (s, c) = (self.angle / 2.0).sin_cos();
        Octon::scalar(C64::new(c, 0.0)) + Octon::axial(cvec(self.axis)).scale(XI * s)
    }
}

/// Boost with rapidity `rapidity` along a unit axis given on the polar basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boost {
    pub axis: [f64; 3],
    pub rapidity: f64,
}

impl Boost {
    pub fn new(axis: [f64; 3], rapidity: f64) -> Result<Boost> {
        Ok(Boost { axis: check_axis(axis)?, rapidity })
    }

    pub fn normalized(axis: [f64; 3], rapidity: f64) -> Result<Boost> {
        Ok(Boost { axis: normalize(axis)?, rapidity })
    }

    /// Boost with velocity ratio v/c = `beta`.
    pub fn from_velocity(axis: [f64; 3], beta: f64) -> Result<Boost> {
        if !(beta.abs() < 1.0) {
            return Err(Error::InvalidArgument(format!("|v/c| must be below 1, got {beta}")));
        }
        Boost::new(axis, beta.atanh())
    }

    /// S = ch(u/2) − sh(u/2) n.
    pub fn octon(&self) -> Octon {
        let h = self.rapidity / 2.0;
        Octon::scalar(C64::new(h.cosh(), 0.0)) - Octon::polar(cvec(self.axis)).scale(C64::new(h.sinh(), 0.0))
    }
}

pub fn rotate(psi: &Octon, r: &Rotor) -> Result<Octon> {
    check_axis(r.axis)?;
    let u = r.octon();
    Ok(u.conj() * *psi * u)
}

pub fn boost(psi: &Octon, b: &Boost) -> Result<Octon> {
    check_axis(b.axis)?;
    let s = b.octon();
    Ok(s * *psi * s)
}

/// ψ₀ + ψ⃗cosθ + (1−cosθ)(n,ψ⃗)n − ξ sinθ [n,ψ⃗], and the same for the pseudo parts.
pub fn rotate_closed_form(psi: &Octon, r: &Rotor) -> Result<Octon> {
    let n = cvec(check_axis(r.axis)?);
    let (s, c) = r.angle.sin_cos();
    let n_axial = Octon::axial(n);
    let v = psi.vector_part();
    let a = psi.pseudovector_part();
    let polar = Octon::polar(v).scale(c.into()) + Octon::polar(n).scale(dot3(&n, &v) * (1.0 - c))
        - antisymmetric_product(&n_axial, &Octon::polar(v)).scale(XI * s);
    let axial = Octon::axial(a).scale(c.into()) + Octon::axial(n).scale(dot3(&n, &a) * (1.0 - c))
        - antisymmetric_product(&n_axial, &Octon::axial(a)).scale(XI * s);
    Ok(Octon::scalar(psi.scalar_part()) + Octon::pseudoscalar(psi.pseudoscalar_part()) + polar + axial)
}

/// ψ₀ch u + ψ⃗ − ψ₀n sh u − (n,ψ⃗)sh u − (1 − ch u)(n,ψ⃗)n, and the same for the pseudo parts.
pub fn boost_closed_form(psi: &Octon, b: &Boost) -> Result<Octon> {
    let n = cvec(check_axis(b.axis)?);
    let (ch, sh) = (b.rapidity.cosh(), b.rapidity.sinh());
    let (p0, v) = (psi.scalar_part(), psi.vector_part());
    let (f0, a) = (psi.pseudoscalar_part(), psi.pseudovector_part());
    let nv = dot3(&n, &v);
    let na = dot3(&n, &a);
    let true_part = Octon::scalar(p0 * ch - nv * sh) + Octon::polar(v) - Octon::polar(n).scale(p0 * sh)
        - Octon::polar(n).scale(nv * (1.0 - ch));
    let pseudo_part = Octon::pseudoscalar(f0 * ch - na * sh) + Octon::axial(a) - Octon::axial(n).scale(f0 * sh)
        - Octon::axial(n).scale(na * (1.0 - ch));
    Ok(true_part + pseudo_part)
}

/// M(U)⁻¹ · W(ψ) · M(U) with W the bispinor waveform matrix.
pub fn rotate_matrix_form(psi: &Octon, r: &Rotor) -> Result<CMatrix> {
    check_axis(r.axis)?;
    let mu = matrix_waveform(&r.octon());
    let inv = mu.clone().try_inverse().ok_or_else(|| Error::InvalidArgument("rotor matrix is singular".into()))?;
    Ok(inv * matrix_waveform(psi) * mu)
}

/// The real bilinear forms ψ₀² − (n,ψ⃗)² and φ₀² − (n,φ⃗)² along the boost axis.
pub fn boost_invariants(psi: &Octon, axis: [f64; 3]) -> (f64, f64) {
    let n = cvec(axis);
    let nv = dot3(&n, &psi.vector_part()).re;
    let na = dot3(&n, &psi.pseudovector_part()).re;
    let p0 = psi.scalar_part().re;
    let f0 = psi.pseudoscalar_part().re;
    (p0 * p0 - nv * nv, f0 * f0 - na * na)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Basis;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::PI;

    fn sample() -> Octon {
        Octon::new(std::array::from_fn(|k| C64::new(0.3 * k as f64 - 1.0, 0.1 * (k * k) as f64)))
    }

    #[test]
    fn quarter_turn_about_z_maps_i_to_j() {
        let r = Rotor::new([0.0, 0.0, 1.0], PI / 2.0).unwrap();
        let out = rotate(&Octon::basis(Basis::PolarI), &r).unwrap();
        assert!(out.dist(&Octon::basis(Basis::PolarJ)) < 1e-15);
        let cf = rotate_closed_form(&Octon::basis(Basis::PolarI), &r).unwrap();
        assert!(cf.dist(&out) < 1e-15);
    }

    #[test]
    fn full_turn_is_identity_on_octons_but_minus_one_on_bispinors() {
        let r = Rotor::new([0.6, 0.0, 0.8], 2.0 * PI).unwrap();
        let psi = sample();
        assert!(rotate(&psi, &r).unwrap().dist(&psi) < 1e-14);
        let m = matrix_waveform(&r.octon());
        assert!(max_abs_diff(&m, &(-CMatrix::identity(4, 4))) < 1e-14);
    }

    #[test]
    fn scalar_and_pseudoscalar_are_fixed() {
        let x = Octon::one() + Octon::basis(Basis::Pseudoscalar) * 3.0;
        let r = Rotor::normalized([1.0, 2.0, -0.5], 0.7).unwrap();
        assert!(rotate(&x, &r).unwrap().dist(&x) < 1e-14);
    }

    #[test]
    fn rotor_is_unitary() {
        let u = Rotor::normalized([1.0, -1.0, 2.0], 1.3).unwrap().octon();
        assert!((u.conj() * u).dist(&Octon::one()) < 1e-15);
    }

    #[test]
    fn bad_axis_is_rejected() {
        assert!(matches!(Rotor::new([1.0, 1.0, 0.0], 1.0), Err(Error::BadAxis { .. })));
        assert!(matches!(Boost::normalized([0.0, 0.0, 0.0], 1.0), Err(Error::BadAxis { .. })));
        let r = Rotor { axis: [2.0, 0.0, 0.0], angle: 0.1 };
        assert!(rotate(&sample(), &r).is_err());
    }

    #[test]
    fn boost_examples() {
        let b = Boost::from_velocity([1.0, 0.0, 0.0], 0.6).unwrap();
        let out = boost(&Octon::one(), &b).unwrap();
        let expected = Octon::one() * 1.25 - Octon::basis(Basis::PolarI) * 0.75;
        assert!(out.dist(&expected) < 1e-14);
        assert!(boost_closed_form(&Octon::one(), &b).unwrap().dist(&expected) < 1e-14);
        let j = Octon::basis(Basis::PolarJ);
        assert!(boost(&j, &b).unwrap().dist(&j) < 1e-15);
        let zero = Boost::new([0.0, 1.0, 0.0], 0.0).unwrap();
        assert_eq!(boost(&sample(), &zero).unwrap(), sample());
    }

    #[test]
    fn closed_forms_match_sandwiches() {
        let psi = sample();
        let r = Rotor::normalized([0.2, -0.7, 0.4], 2.1).unwrap();
        assert!(rotate(&psi, &r).unwrap().dist(&rotate_closed_form(&psi, &r).unwrap()) < 1e-13);
        let b = Boost::normalized([-0.3, 0.5, 0.9], 0.8).unwrap();
        assert!(boost(&psi, &b).unwrap().dist(&boost_closed_form(&psi, &b).unwrap()) < 1e-13);
    }

    #[test]
    fn matrix_form_agrees() {
        let psi = sample();
        let r = Rotor::normalized([0.1, 0.9, -0.3], 0.9).unwrap();
        let lhs = matrix_waveform(&rotate(&psi, &r).unwrap());
        assert!(max_abs_diff(&lhs, &rotate_matrix_form(&psi, &r).unwrap()) < 1e-12);
        let id = rotate_matrix_form(&psi, &Rotor::identity()).unwrap();
        assert!(max_abs_diff(&id, &matrix_waveform(&psi)) < 1e-14);
    }
}
