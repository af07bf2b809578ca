//! The lattice `ℤ ⊕ Num(X) ⊕ ℤ ≅ ℤ⁴` of a bielliptic surface in the basis
//! `(r, s₁, s₂, t)`, where `r` is the rank, `s₁` and `s₂` are the
//! coefficients of `(1/λ₁)F₁` and `(1/λ₂)F₂` in the divisor part, and `t`
//! is the degree component.
//!
//! The Mukai pairing in this basis is
//! `⟨v, w⟩ = s₁s₂′ + s₂s₁′ − rt′ − tr′`; the Euler form is its negative
//! (the surface has `K_X ≡ 0` and `χ(O_X) = 0`, so the form is symmetric).

use crate::arith::gcd4;
use crate::surface::SurfaceType;
use crate::Int;

/// Integer quadruple `(r, s₁, s₂, t)` encoding a numerical Chow class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub r: Int,
    pub s1: Int,
    pub s2: Int,
    pub t: Int,
}

impl MukaiVector {
    /// The point class `(0, 0, 0, 1)` of a skyscraper sheaf.
    pub const POINT: MukaiVector = MukaiVector {
        r: 0,
        s1: 0,
        s2: 0,
        t: 1,
    };

    pub const fn new(r: Int, s1: Int, s2: Int, t: Int) -> Self {
        MukaiVector { r, s1, s2, t }
    }

    pub const fn as_array(&self) -> [Int; 4] {
        [self.r, self.s1, self.s2, self.t]
    }

    pub const fn from_array(v: [Int; 4]) -> Self {
        MukaiVector {
            r: v[0],
            s1: v[1],
            s2: v[2],
            t: v[3],
        }
    }

    pub fn neg(&self) -> Self {
        MukaiVector {
            r: -self.r,
            s1: -self.s1,
            s2: -self.s2,
            t: -self.t,
        }
    }
}

impl std::fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.s1, self.s2, self.t)
    }
}

/// Index of one of the two elliptic fibrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fibration {
    One,
    Two,
}

impl Fibration {
    pub fn index(&self) -> u8 {
        match self {
            Fibration::One => 1,
            Fibration::Two => 2,
        }
    }
}

impl std::fmt::Display for Fibration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Mukai pairing `s₁s₂′ + s₂s₁′ − rt′ − tr′`. Symmetric and bilinear.
pub fn pairing(v: &MukaiVector, w: &MukaiVector) -> Int {
    v.s1 * w.s2 + v.s2 * w.s1 - v.r * w.t - v.t * w.r
}

/// Euler form `χ(E, F) = −⟨v(E), v(F)⟩`.
pub fn euler_chi(v: &MukaiVector, w: &MukaiVector) -> Int {
    -pairing(v, w)
}

/// Self-intersection `D² = 2·s₁·s₂` of the divisor with coordinates
/// `(s₁, s₂)`. Always even; non-negative whenever `s₁, s₂ ≥ 0`.
pub fn divisor_square(s1: Int, s2: Int) -> Int {
    2 * s1 * s2
}

/// `χ(O(D)) = (1/2)·D² = s₁·s₂` for the divisor with coordinates `(s₁, s₂)`.
pub fn divisor_chi(s1: Int, s2: Int) -> Int {
    s1 * s2
}

/// Fiber degree `dᵢ(v) = c₁(v)·Fᵢ`. In the fixed basis these are the closed
/// forms `d₁ = λ₁·s₂` and `d₂ = λ₂·s₁`, forced by
/// `(1/λ₂)F₂·F₁ = λ₁` and `(1/λ₁)F₁·F₂ = λ₂`.
pub fn fiber_degree(v: &MukaiVector, fibration: Fibration, st: &SurfaceType) -> Int {
    match fibration {
        Fibration::One => st.lambda1 * v.s2,
        Fibration::Two => st.lambda2 * v.s1,
    }
}

/// True iff `⟨v, v⟩ = 0`, equivalently `r·t = s₁·s₂`.
pub fn is_isotropic(v: &MukaiVector) -> bool {
    v.r * v.t == v.s1 * v.s2
}

/// True iff `gcd(r, s₁, s₂, t) = 1`.
pub fn is_primitive(v: &MukaiVector) -> bool {
    gcd4(v.r, v.s1, v.s2, v.t) == 1
}

/// gcd of the four entries (0 for the zero vector).
pub fn content(v: &MukaiVector) -> Int {
    gcd4(v.r, v.s1, v.s2, v.t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{lookup_type, TypeLabel};
    use proptest::prelude::*;

    fn v(r: Int, s1: Int, s2: Int, t: Int) -> MukaiVector {
        MukaiVector::new(r, s1, s2, t)
    }

    /// Independent oracle: expand the bilinear form term by term from its
    /// defining Gram data ⟨e₁,e₄⟩ = −1, ⟨e₂,e₃⟩ = 1, all other pairs 0.
    #[allow(clippy::needless_range_loop)]
    fn pairing_oracle(a: &MukaiVector, b: &MukaiVector) -> Int {
        let x = a.as_array();
        let y = b.as_array();
        let mut total = 0;
        for i in 0..4 {
            for j in 0..4 {
                let g = match (i, j) {
                    (0, 3) | (3, 0) => -1,
                    (1, 2) | (2, 1) => 1,
                    _ => 0,
                };
                total += x[i] * g * y[j];
            }
        }
        total
    }

    #[test]
    fn pairing_matches_basis_values() {
        assert_eq!(pairing(&v(0, 0, 0, 1), &v(1, 0, 0, 0)), -1);
        assert_eq!(pairing(&v(0, 0, 1, 0), &v(0, 1, 0, 0)), 1);
        assert_eq!(pairing(&v(0, 0, 0, 1), &v(0, 0, 0, 1)), 0);
        // 2·2·3 − 2·1·4 = 4, cross-checked against the expansion oracle.
        let w = v(1, 2, 3, 4);
        assert_eq!(pairing(&w, &w), 4);
        assert_eq!(pairing(&w, &w), pairing_oracle(&w, &w));
    }

    #[test]
    fn euler_chi_is_negative_pairing() {
        assert_eq!(euler_chi(&v(0, 0, 0, 1), &v(0, 0, 0, 1)), 0);
        assert_eq!(euler_chi(&v(1, 0, 0, 0), &v(0, 0, 0, 1)), 1);
        assert_eq!(euler_chi(&v(0, 1, 0, 0), &v(0, 0, 1, 0)), -1);
    }

    #[test]
    fn divisor_arithmetic() {
        assert_eq!(divisor_square(1, 1), 2);
        assert_eq!(divisor_square(0, 5), 0);
        assert_eq!(divisor_square(3, 2), 12);
        assert_eq!(divisor_chi(1, 1), 1);
        assert_eq!(divisor_chi(0, 7), 0);
        assert_eq!(divisor_chi(2, 3), 6);
        assert_eq!(divisor_chi(2, 3) * 2, divisor_square(2, 3));
    }

    #[test]
    fn fiber_degrees_from_table() {
        let t61 = lookup_type(TypeLabel::T6x1, 0).unwrap();
        assert_eq!(fiber_degree(&v(0, 0, 0, 1), Fibration::One, t61), 0);
        assert_eq!(fiber_degree(&v(0, 0, 0, 1), Fibration::Two, t61), 0);
        // (1/λ₂)F₂·F₁ = F₁F₂/μ = λ₁ = 1 on a (6,1) surface.
        assert_eq!(fiber_degree(&v(0, 0, 1, 0), Fibration::One, t61), 1);

        let mu2 = lookup_type(TypeLabel::T2Mu2, 2).unwrap();
        for s in -5..=5 {
            assert_eq!(fiber_degree(&v(3, s, 0, 0), Fibration::Two, mu2), 2 * s);
        }
    }

    #[test]
    fn isotropy_and_primitivity() {
        assert!(is_isotropic(&v(0, 0, 0, 1)));
        assert!(is_primitive(&v(0, 0, 0, 1)));
        assert!(is_isotropic(&v(2, 4, 6, 12)));
        assert!(!is_primitive(&v(2, 4, 6, 12)));
        assert!(!is_isotropic(&v(1, 1, 1, 0)));
        assert!(!is_primitive(&v(0, 0, 0, 0)));
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric(a in any::<[i32; 4]>(), b in any::<[i32; 4]>()) {
            let x = MukaiVector::from_array(a.map(Int::from));
            let y = MukaiVector::from_array(b.map(Int::from));
            prop_assert_eq!(pairing(&x, &y), pairing(&y, &x));
            prop_assert_eq!(euler_chi(&x, &y), euler_chi(&y, &x));
        }

        #[test]
        fn pairing_is_bilinear(
            a in any::<[i16; 4]>(),
            b in any::<[i16; 4]>(),
            c in any::<[i16; 4]>(),
            m in -7i64..=7,
            n in -7i64..=7,
        ) {
            let x = MukaiVector::from_array(a.map(Int::from));
            let y = MukaiVector::from_array(b.map(Int::from));
            let z = MukaiVector::from_array(c.map(Int::from));
            let m = Int::from(m);
            let n = Int::from(n);
            let combo = MukaiVector::new(
                m * x.r + n * y.r,
                m * x.s1 + n * y.s1,
                m * x.s2 + n * y.s2,
                m * x.t + n * y.t,
            );
            prop_assert_eq!(pairing(&combo, &z), m * pairing(&x, &z) + n * pairing(&y, &z));
        }

        #[test]
        fn self_pairing_is_even(a in any::<[i32; 4]>()) {
            let x = MukaiVector::from_array(a.map(Int::from));
            let p = pairing(&x, &x);
            prop_assert_eq!(p % 2, 0);
            prop_assert_eq!(p, 2 * (x.s1 * x.s2 - x.r * x.t));
        }

        #[test]
        fn pairing_agrees_with_expansion_oracle(a in any::<[i32; 4]>(), b in any::<[i32; 4]>()) {
            let x = MukaiVector::from_array(a.map(Int::from));
            let y = MukaiVector::from_array(b.map(Int::from));
            prop_assert_eq!(pairing(&x, &y), pairing_oracle(&x, &y));
        }
    }
}
