//! Octons: eight complex components over the basis {1, i, j, k, E, I, J, K}.
//!
//! The product is the associative, non-commutative one given by the printed
//! multiplication table (row element on the left). The coefficient field is
//! ordinary complex numbers; its imaginary unit ξ commutes with every basis
//! element.

mod table;
mod text;

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use table::{Cell, ProductTable, PRINTED_ORDER, PRINTED_TABLE};
pub use text::ParseOctonError;

pub type C64 = num_complex::Complex64;

/// The commuting imaginary unit of the coefficient field.
pub const XI: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

/// Octon basis elements in canonical component order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    One,
    PolarI,
    PolarJ,
    PolarK,
    Pseudoscalar,
    AxialI,
    AxialJ,
    AxialK,
}

impl Basis {
    pub const ALL: [Basis; 8] = [
        Basis::One,
        Basis::PolarI,
        Basis::PolarJ,
        Basis::PolarK,
        Basis::Pseudoscalar,
        Basis::AxialI,
        Basis::AxialJ,
        Basis::AxialK,
    ];
    pub const POLAR: [Basis; 3] = [Basis::PolarI, Basis::PolarJ, Basis::PolarK];
    pub const AXIAL: [Basis; 3] = [Basis::AxialI, Basis::AxialJ, Basis::AxialK];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Basis {
        Basis::ALL[i]
    }

    pub fn label(self) -> &'static str {
        ["1", "i", "j", "k", "E", "I", "J", "K"][self.index()]
    }

    pub fn from_label(s: &str) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.label() == s)
    }

    pub fn grade(self) -> Grade {
        match self {
            Basis::One => Grade::Scalar,
            Basis::PolarI | Basis::PolarJ | Basis::PolarK => Grade::Vector,
            Basis::Pseudoscalar => Grade::Pseudoscalar,
            Basis::AxialI | Basis::AxialJ | Basis::AxialK => Grade::Pseudovector,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grade {
    Scalar,
    Vector,
    Pseudoscalar,
    Pseudovector,
}

impl Grade {
    pub const ALL: [Grade; 4] = [Grade::Scalar, Grade::Vector, Grade::Pseudoscalar, Grade::Pseudovector];
}

fn product_table() -> &'static ProductTable {
    static TABLE: OnceLock<ProductTable> = OnceLock::new();
    TABLE.get_or_init(ProductTable::printed)
}

/// Complex 3-vector of component coefficients.
pub type Vec3 = [C64; 3];

/// An eight-component octon in canonical order (ψ₀, ψ₁, ψ₂, ψ₃, φ₀, φ₁, φ₂, φ₃).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Octon {
    c: [C64; 8],
}

impl Octon {
    pub const fn new(c: [C64; 8]) -> Octon {
        Octon { c }
    }

    pub fn zero() -> Octon {
        Octon { c: [ZERO; 8] }
    }

    pub fn one() -> Octon {
        Octon::basis(Basis::One)
    }

    pub fn basis(b: Basis) -> Octon {
        let mut c = [ZERO; 8];
        c[b.index()] = ONE;
        Octon { c }
    }

    pub fn from_real(r: [f64; 8]) -> Octon {
        Octon { c: r.map(|x| C64::new(x, 0.0)) }
    }

    pub fn scalar(z: C64) -> Octon {
        Octon::zero().with(Basis::One, z)
    }

    pub fn pseudoscalar(z: C64) -> Octon {
        Octon::zero().with(Basis::Pseudoscalar, z)
    }

    pub fn polar(v: Vec3) -> Octon {
        Octon::from_grades(ZERO, v, ZERO, [ZERO; 3])
    }

    pub fn axial(v: Vec3) -> Octon {
        Octon::from_grades(ZERO, [ZERO; 3], ZERO, v)
    }

    pub fn polar_real(v: [f64; 3]) -> Octon {
        Octon::polar(v.map(|x| C64::new(x, 0.0)))
    }

    pub fn axial_real(v: [f64; 3]) -> Octon {
        Octon::axial(v.map(|x| C64::new(x, 0.0)))
    }

    /// Assemble from scalar, polar vector, pseudoscalar and axial vector coefficients.
    pub fn from_grades(s: C64, v: Vec3, p: C64, a: Vec3) -> Octon {
        Octon { c: [s, v[0], v[1], v[2], p, a[0], a[1], a[2]] }
    }

    pub fn with(mut self, b: Basis, z: C64) -> Octon {
        self.c[b.index()] = z;
        self
    }

    pub fn components(&self) -> &[C64; 8] {
        &self.c
    }

    pub fn get(&self, b: Basis) -> C64 {
        self.c[b.index()]
    }

    pub fn scalar_part(&self) -> C64 {
        self.c[0]
    }

    pub fn vector_part(&self) -> Vec3 {
        [self.c[1], self.c[2], self.c[3]]
    }

    pub fn pseudoscalar_part(&self) -> C64 {
        self.c[4]
    }

    pub fn pseudovector_part(&self) -> Vec3 {
        [self.c[5], self.c[6], self.c[7]]
    }

    pub fn grade_project(&self, g: Grade) -> Octon {
        let mut out = Octon::zero();
        for b in Basis::ALL.into_iter().filter(|b| b.grade() == g) {
            out.c[b.index()] = self.c[b.index()];
        }
        out
    }

    /// Conjugates every coefficient (ξ → −ξ); basis elements are unchanged.
    pub fn conj(&self) -> Octon {
        Octon { c: self.c.map(|z| z.conj()) }
    }

    pub fn scale(&self, z: C64) -> Octon {
        Octon { c: self.c.map(|x| x * z) }
    }

    pub fn symmetric_product(&self, other: &Octon) -> Octon {
        (*self * *other + *other * *self).scale(C64::new(0.5, 0.0))
    }

    pub fn antisymmetric_product(&self, other: &Octon) -> Octon {
        (*self * *other - *other * *self).scale(C64::new(0.5, 0.0))
    }

    /// Largest component modulus.
    pub fn max_norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Octon) -> f64 {
        (*self - *other).max_norm()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|z| *z == ZERO)
    }

    /// Product under an explicit table (used for verification of alternate tables).
    pub fn mul_with(&self, other: &Octon, table: &ProductTable) -> Octon {
        let mut out = [ZERO; 8];
        for (l, a) in self.c.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (r, b) in other.c.iter().enumerate() {
                if *b == ZERO {
                    continue;
                }
                let cell = table.cell(Basis::from_index(l), Basis::from_index(r));
                out[cell.basis.index()] += *a * *b * cell.phase;
            }
        }
        Octon { c: out }
    }
}

pub fn multiply(a: &Octon, b: &Octon) -> Octon {
    a.mul_with(b, product_table())
}

pub fn grade_project(a: &Octon, g: Grade) -> Octon {
    a.grade_project(g)
}

pub fn complex_conjugate(a: &Octon) -> Octon {
    a.conj()
}

pub fn symmetric_product(a: &Octon, b: &Octon) -> Octon {
    a.symmetric_product(b)
}

pub fn antisymmetric_product(a: &Octon, b: &Octon) -> Octon {
    a.antisymmetric_product(b)
}

pub fn linear_combine<'a, I>(terms: I) -> Octon
where
    I: IntoIterator<Item = (C64, &'a Octon)>,
{
    terms.into_iter().fold(Octon::zero(), |acc, (z, o)| acc + o.scale(z))
}

pub fn dot3(a: &Vec3, b: &Vec3) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn real3(v: [f64; 3]) -> Vec3 {
    v.map(|x| C64::new(x, 0.0))
}

impl Index<Basis> for Octon {
    type Output = C64;
    fn index(&self, b: Basis) -> &C64 {
        &self.c[b.index()]
    }
}

impl Add for Octon {
    type Output = Octon;
    fn add(self, rhs: Octon) -> Octon {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c) {
            *x += y;
        }
        Octon { c }
    }
}

impl AddAssign for Octon {
    fn add_assign(&mut self, rhs: Octon) {
        *self = *self + rhs;
    }
}

impl Sub for Octon {
    type Output = Octon;
    fn sub(self, rhs: Octon) -> Octon {
        self + (-rhs)
    }
}

impl Neg for Octon {
    type Output = Octon;
    fn neg(self) -> Octon {
        Octon { c: self.c.map(|z| -z) }
    }
}

impl Mul for Octon {
    type Output = Octon;
    fn mul(self, rhs: Octon) -> Octon {
        multiply(&self, &rhs)
    }
}

impl Mul<C64> for Octon {
    type Output = Octon;
    fn mul(self, z: C64) -> Octon {
        self.scale(z)
    }
}

impl Mul<Octon> for C64 {
    type Output = Octon;
    fn mul(self, o: Octon) -> Octon {
        o.scale(self)
    }
}

impl Mul<f64> for Octon {
    type Output = Octon;
    fn mul(self, x: f64) -> Octon {
        self.scale(C64::new(x, 0.0))
    }
}

impl Mul<Octon> for f64 {
    type Output = Octon;
    fn mul(self, o: Octon) -> Octon {
        o.scale(C64::new(self, 0.0))
    }
}

impl From<Basis> for Octon {
    fn from(b: Basis) -> Octon {
        Octon::basis(b)
    }
}

impl Serialize for Octon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: [[f64; 2]; 8] = self.c.map(|z| [z.re, z.im]);
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Octon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Octon, D::Error> {
        let pairs = <[[f64; 2]; 8]>::deserialize(d)?;
        Ok(Octon { c: pairs.map(|[re, im]| C64::new(re, im)) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: Basis) -> Octon {
        Octon::basis(x)
    }

    #[test]
    fn i_times_j_is_xi_k() {
        assert_eq!(b(Basis::PolarI) * b(Basis::PolarJ), b(Basis::AxialK) * XI);
    }

    #[test]
    fn one_is_identity() {
        for x in Basis::ALL {
            assert_eq!(b(Basis::One) * b(x), b(x));
            assert_eq!(b(x) * b(Basis::One), b(x));
        }
    }

    #[test]
    fn pseudoscalar_from_triple_product() {
        let ijk = b(Basis::PolarI) * b(Basis::PolarJ) * b(Basis::PolarK);
        assert_eq!(ijk * (-XI), b(Basis::Pseudoscalar));
        let e = b(Basis::Pseudoscalar);
        assert_eq!(e * e, Octon::one());
    }

    #[test]
    fn grade_projection_examples() {
        let x = Octon::from_real([1.0, 2.0, 0.0, 0.0, 3.0, 0.0, 0.0, 4.0]);
        assert_eq!(x.grade_project(Grade::Vector), b(Basis::PolarI) * 2.0);
        let sum = Grade::ALL.iter().fold(Octon::zero(), |acc, g| acc + x.grade_project(*g));
        assert_eq!(sum, x);
        let ii = b(Basis::PolarI) * b(Basis::AxialI);
        assert_eq!(ii.grade_project(Grade::Pseudoscalar), b(Basis::Pseudoscalar));
    }

    #[test]
    fn linear_combine_examples() {
        let i = b(Basis::PolarI);
        let j = b(Basis::PolarJ);
        assert_eq!(linear_combine([(ONE, &i), (ONE, &j)]), i + j);
        let one_k = Octon::one() + b(Basis::AxialK);
        let half = linear_combine([(C64::new(0.5, 0.0), &one_k)]);
        assert_eq!(half, Octon::from_real([0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]));
        assert!(linear_combine(std::iter::empty()).is_zero());
    }

    #[test]
    fn symmetric_antisymmetric_examples() {
        let k = b(Basis::AxialK);
        let i = b(Basis::PolarI);
        let j = b(Basis::PolarJ);
        assert_eq!(k.antisymmetric_product(&i), j * XI);
        assert!(i.symmetric_product(&j).is_zero());
        let a = Octon::from_real([1.0, -2.0, 0.5, 3.0, 0.0, 1.0, 2.0, -1.0]);
        assert!(a.antisymmetric_product(&a).is_zero());
        assert_eq!(a.symmetric_product(&k) + a.antisymmetric_product(&k), a * k);
    }

    #[test]
    fn conjugation_examples() {
        let t: f64 = 0.7;
        let u = Octon::scalar(ONE * (t / 2.0).cos()) + b(Basis::AxialK) * (XI * (t / 2.0).sin());
        let expected = Octon::scalar(ONE * (t / 2.0).cos()) - b(Basis::AxialK) * (XI * (t / 2.0).sin());
        assert_eq!(u.conj(), expected);
        assert_eq!(u.conj().conj(), u);
        assert_eq!(Octon::scalar(XI).conj(), Octon::scalar(-XI));
    }

    #[test]
    fn pseudoscalar_commutes_with_everything() {
        let e = b(Basis::Pseudoscalar);
        for x in Basis::ALL {
            assert_eq!(e * b(x), b(x) * e);
        }
    }

    #[test]
    fn json_is_pairs_in_canonical_order() {
        let x = Octon::basis(Basis::AxialK) * XI + Octon::one() * 2.0;
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "[[2.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,1.0]]");
        let back: Octon = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
