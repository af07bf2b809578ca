//! Exact 2×2 / 4×4 integer matrix algebra for the generator
//! autoequivalences.
//!
//! A 4×4 matrix acts on Mukai vectors in the fixed basis order
//! `(r, s₁, s₂, t)`, with the Kronecker-block grouping `((r, s₁), (s₂, t))`:
//! `kron(A, B)` sends the vector identified with the 2×2 array
//! `[[r, s₁], [s₂, t]]` to `A·[[r, s₁], [s₂, t]]·Bᵀ`. Under this grouping
//! the twist by `O((u₁/λ₁)F₁ + (u₂/λ₂)F₂)` is exactly
//! `[[1,0],[u₂,1]] ⊗ [[1,0],[u₁,1]]`, and a relative Fourier–Mukai
//! transform along the first (second) fibration has the Γ-factor on the
//! left (right).

use crate::arith::gcd;
use crate::lattice::{Fibration, MukaiVector};
use crate::surface::SurfaceType;
use crate::{Error, Int};

/// 2×2 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2(pub [Int; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    /// Build from entries `[[e00, e01], [e10, e11]]`.
    pub const fn new(e00: Int, e01: Int, e10: Int, e11: Int) -> Self {
        Mat2([e00, e01, e10, e11])
    }

    pub fn entry(&self, row: usize, col: usize) -> Int {
        self.0[2 * row + col]
    }

    pub fn det(&self) -> Int {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    pub fn neg(&self) -> Mat2 {
        Mat2([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    /// Inverse of a matrix with `det = ±1` (adjugate divided by the
    /// determinant). Returns `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<Mat2> {
        let det = self.det();
        if det != 1 && det != -1 {
            return None;
        }
        let adj = Mat2([self.0[3], -self.0[1], -self.0[2], self.0[0]]);
        Some(if det == 1 { adj } else { adj.neg() })
    }

    pub fn apply(&self, x: Int, y: Int) -> (Int, Int) {
        (self.0[0] * x + self.0[1] * y, self.0[2] * x + self.0[3] * y)
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// 4×4 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat4(pub [Int; 16]);

impl Mat4 {
    pub const IDENTITY: Mat4 = {
        let mut e = [0; 16];
        e[0] = 1;
        e[5] = 1;
        e[10] = 1;
        e[15] = 1;
        Mat4(e)
    };

    pub fn entry(&self, row: usize, col: usize) -> Int {
        self.0[4 * row + col]
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = [0; 16];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0;
                for k in 0..4 {
                    acc += self.0[4 * i + k] * rhs.0[4 * k + j];
                }
                out[4 * i + j] = acc;
            }
        }
        Mat4(out)
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = [0; 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * j + i] = self.0[4 * i + j];
            }
        }
        Mat4(out)
    }

    pub fn neg(&self) -> Mat4 {
        let mut out = self.0;
        for e in &mut out {
            *e = -*e;
        }
        Mat4(out)
    }

    /// Matrix-vector product in the basis order `(r, s₁, s₂, t)`.
    pub fn apply(&self, v: &MukaiVector) -> MukaiVector {
        let x = v.as_array();
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[4 * i + j] * x[j]).sum();
        }
        MukaiVector::from_array(out)
    }
}

impl std::fmt::Display for Mat4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..4 {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "[{:>6} {:>6} {:>6} {:>6}]",
                self.entry(i, 0),
                self.entry(i, 1),
                self.entry(i, 2),
                self.entry(i, 3)
            )?;
        }
        Ok(())
    }
}

/// Gram matrix of the Mukai pairing: `G[0][3] = G[3][0] = −1`,
/// `G[1][2] = G[2][1] = 1`, all other entries 0, so that
/// `vᵀ G w = ⟨v, w⟩`.
pub fn gram() -> Mat4 {
    let mut e = [0; 16];
    e[3] = -1;
    e[12] = -1;
    e[6] = 1;
    e[9] = 1;
    Mat4(e)
}

/// Kronecker product `[[a₀₀B, a₀₁B], [a₁₀B, a₁₁B]]`. Acts on Mukai vectors
/// grouped as `((r, s₁), (s₂, t))`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [0; 16];
    for bi in 0..2 {
        for bj in 0..2 {
            let coeff = a.entry(bi, bj);
            for i in 0..2 {
                for j in 0..2 {
                    out[4 * (2 * bi + i) + (2 * bj + j)] = coeff * b.entry(i, j);
                }
            }
        }
    }
    Mat4(out)
}

/// Matrix of tensoring with `O((u₁/λ₁)F₁ + (u₂/λ₂)F₂)`:
/// `[[1,0],[u₂,1]] ⊗ [[1,0],[u₁,1]]`, unipotent lower-triangular.
pub fn twist_matrix(u1: Int, u2: Int) -> Mat4 {
    kron(&Mat2::new(1, 0, u2, 1), &Mat2::new(1, 0, u1, 1))
}

/// Matrix of the n-fold shift: `(−1)ⁿ · I`. The double shift acts
/// trivially on the lattice; automorphism pullbacks act trivially as well
/// and are represented by `Shift(0)`.
pub fn shift_matrix(n: Int) -> Mat4 {
    if n.rem_euclid(2) == 0 {
        Mat4::IDENTITY
    } else {
        Mat4::IDENTITY.neg()
    }
}

/// Tagged description of one generator autoequivalence's lattice action.
///
/// `Rfm1`/`Rfm2` describe a relative Fourier–Mukai transform along the
/// first/second fibration with fiber matrix `[[c, a], [d, b]] ∈ SL₂(ℤ)`
/// subject to `λᵢ | d` and `a > 0`, plus the shear parameter `s` of its
/// off-fibration factor (`s = 0` is the twist-normalized form).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorSpec {
    Twist {
        u1: Int,
        u2: Int,
    },
    Shift {
        n: Int,
    },
    Rfm1 {
        c: Int,
        a: Int,
        d: Int,
        b: Int,
        s: Int,
    },
    Rfm2 {
        c: Int,
        a: Int,
        d: Int,
        b: Int,
        s: Int,
    },
}

impl GeneratorSpec {
    /// Validity of the description for the given surface type.
    pub fn validate(&self, st: &SurfaceType) -> Result<(), Error> {
        match *self {
            GeneratorSpec::Twist { .. } | GeneratorSpec::Shift { .. } => Ok(()),
            GeneratorSpec::Rfm1 { c, a, d, b, .. } => validate_rfm(c, a, d, b, st.lambda1),
            GeneratorSpec::Rfm2 { c, a, d, b, .. } => validate_rfm(c, a, d, b, st.lambda2),
        }
    }

    /// The 4×4 lattice action. Fails with [`Error::InvalidGenerator`] when
    /// an `Rfm` description violates its constraints.
    pub fn matrix(&self, st: &SurfaceType) -> Result<Mat4, Error> {
        match *self {
            GeneratorSpec::Twist { u1, u2 } => Ok(twist_matrix(u1, u2)),
            GeneratorSpec::Shift { n } => Ok(shift_matrix(n)),
            GeneratorSpec::Rfm1 { .. } | GeneratorSpec::Rfm2 { .. } => rfm_matrix(self, st),
        }
    }

    /// Inverse of [`GeneratorSpec::matrix`], computed factor-wise:
    /// `(A ⊗ B)⁻¹ = A⁻¹ ⊗ B⁻¹`.
    pub fn inverse_matrix(&self, st: &SurfaceType) -> Result<Mat4, Error> {
        match *self {
            GeneratorSpec::Twist { u1, u2 } => Ok(twist_matrix(-u1, -u2)),
            GeneratorSpec::Shift { n } => Ok(shift_matrix(n)),
            GeneratorSpec::Rfm1 { c, a, d, b, s } => {
                validate_rfm(c, a, d, b, st.lambda1)?;
                let gamma_inv = Mat2::new(b, -a * st.lambda1, -d / st.lambda1, c);
                Ok(kron(&gamma_inv, &Mat2::new(1, 0, -s, 1)))
            }
            GeneratorSpec::Rfm2 { c, a, d, b, s } => {
                validate_rfm(c, a, d, b, st.lambda2)?;
                let gamma_inv = Mat2::new(b, -a * st.lambda2, -d / st.lambda2, c);
                Ok(kron(&Mat2::new(1, 0, -s, 1), &gamma_inv))
            }
        }
    }
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            GeneratorSpec::Twist { u1, u2 } => write!(f, "twist:{u1},{u2}"),
            GeneratorSpec::Shift { n } => write!(f, "shift:{n}"),
            GeneratorSpec::Rfm1 { c, a, d, b, s } => write!(f, "rfm1:{c},{a},{d},{b},{s}"),
            GeneratorSpec::Rfm2 { c, a, d, b, s } => write!(f, "rfm2:{c},{a},{d},{b},{s}"),
        }
    }
}

fn validate_rfm(c: Int, a: Int, d: Int, b: Int, lambda: Int) -> Result<(), Error> {
    if c * b - a * d != 1 {
        return Err(Error::InvalidGenerator("determinant cb − ad must be 1"));
    }
    if d % lambda != 0 {
        return Err(Error::InvalidGenerator("λ must divide d"));
    }
    if a <= 0 {
        return Err(Error::InvalidGenerator("a must be positive"));
    }
    Ok(())
}

/// 4×4 action of a relative Fourier–Mukai generator:
/// `Rfm1 → [[c, aλ₁], [d/λ₁, b]] ⊗ [[1,0],[s,1]]` and
/// `Rfm2 → [[1,0],[s,1]] ⊗ [[c, aλ₂], [d/λ₂, b]]`.
/// Sends the point class to `(0, aλ₁, 0, b)` resp. `(0, 0, aλ₂, b)`.
pub fn rfm_matrix(spec: &GeneratorSpec, st: &SurfaceType) -> Result<Mat4, Error> {
    match *spec {
        GeneratorSpec::Rfm1 { c, a, d, b, s } => {
            validate_rfm(c, a, d, b, st.lambda1)?;
            let gamma = Mat2::new(c, a * st.lambda1, d / st.lambda1, b);
            Ok(kron(&gamma, &Mat2::new(1, 0, s, 1)))
        }
        GeneratorSpec::Rfm2 { c, a, d, b, s } => {
            validate_rfm(c, a, d, b, st.lambda2)?;
            let gamma = Mat2::new(c, a * st.lambda2, d / st.lambda2, b);
            Ok(kron(&Mat2::new(1, 0, s, 1), &gamma))
        }
        _ => Err(Error::InvalidGenerator("expected an rfm description")),
    }
}

/// Shear-free relative Fourier–Mukai matrix: the Γ-factor tensored with
/// the identity (fibration 1) or the identity tensored with the Γ-factor
/// (fibration 2).
pub fn normalized_rfm_matrix(
    c: Int,
    a: Int,
    d: Int,
    b: Int,
    st: &SurfaceType,
    fibration: Fibration,
) -> Result<Mat4, Error> {
    let spec = match fibration {
        Fibration::One => GeneratorSpec::Rfm1 { c, a, d, b, s: 0 },
        Fibration::Two => GeneratorSpec::Rfm2 { c, a, d, b, s: 0 },
    };
    rfm_matrix(&spec, st)
}

/// Membership in `Γ(λ) = {M ∈ SL₂(ℤ) | upper-right entry ∈ λℤ}`.
pub fn is_in_gamma(m: &Mat2, lambda: Int) -> bool {
    m.det() == 1 && m.entry(0, 1) % lambda == 0
}

/// True iff `Mᵀ G M = G` exactly, i.e. `M` is an isometry of the Mukai
/// pairing.
pub fn preserves_pairing(m: &Mat4) -> bool {
    let g = gram();
    m.transpose().mul(&g).mul(m) == g
}

/// Factor `M = A ⊗ B` with both factors of determinant ±1, if possible.
///
/// The pair is unique up to `(A, B) → (−A, −B)`; the returned `B` is
/// normalized so its first non-zero entry in row-major order is positive,
/// which makes the function deterministic and round-trips
/// `kron_factor(kron(A, B)) ∈ {(A, B), (−A, −B)}`.
pub fn kron_factor(m: &Mat4) -> Option<(Mat2, Mat2)> {
    // Rearrange into the 4×4 array R[(block i,j)][(inner k,l)], which is a
    // rank-1 outer product vec(A)·vec(B)ᵀ exactly when M = A ⊗ B.
    let mut r = [[0 as Int; 4]; 4];
    for bi in 0..2 {
        for bj in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    r[2 * bi + bj][2 * k + l] = m.entry(2 * bi + k, 2 * bj + l);
                }
            }
        }
    }

    let pivot_row = r.iter().position(|row| row.iter().any(|&e| e != 0))?;
    let row = r[pivot_row];
    let g = row.iter().fold(0, |acc, &e| gcd(acc, e));
    // Primitive B-pattern, sign-normalized on the first non-zero entry.
    let mut beta = row.map(|e| e / g);
    let lead = beta.iter().find(|&&e| e != 0).copied()?;
    if lead < 0 {
        beta = beta.map(|e| -e);
    }
    let j0 = beta.iter().position(|&e| e != 0)?;

    let mut alpha = [0 as Int; 4];
    for (i, row) in r.iter().enumerate() {
        if row[j0] % beta[j0] != 0 {
            return None;
        }
        let coeff = row[j0] / beta[j0];
        if row.iter().zip(beta.iter()).any(|(&e, &be)| e != coeff * be) {
            return None;
        }
        alpha[i] = coeff;
    }

    let a = Mat2(alpha);
    let b = Mat2(beta);
    if a.det().abs() != 1 || b.det().abs() != 1 {
        return None;
    }
    debug_assert_eq!(kron(&a, &b), *m);
    Some((a, b))
}

/// True iff `M = A₁ ⊗ A₂` with, after the sign normalization of
/// [`kron_factor`] or its global flip, `A₁ ∈ Γ(λ₁)` and `A₂ ∈ Γ(λ₂)`.
pub fn tensor_group_member(m: &Mat4, st: &SurfaceType) -> bool {
    match kron_factor(m) {
        None => false,
        Some((a1, a2)) => {
            (is_in_gamma(&a1, st.lambda1) && is_in_gamma(&a2, st.lambda2))
                || (is_in_gamma(&a1.neg(), st.lambda1) && is_in_gamma(&a2.neg(), st.lambda2))
        }
    }
}

/// Matrix-vector product in the fixed basis order.
pub fn apply(m: &Mat4, v: &MukaiVector) -> MukaiVector {
    m.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pairing, MukaiVector};
    use crate::surface::{lookup_type, TypeLabel};
    use proptest::prelude::*;

    fn mat2(e: [i64; 4]) -> Mat2 {
        Mat2(e.map(Int::from))
    }

    #[test]
    fn gram_reproduces_pairing() {
        let g = gram();
        assert_eq!(g.entry(0, 3), -1);
        assert_eq!(g.entry(3, 0), -1);
        assert_eq!(g.entry(1, 2), 1);
        assert_eq!(g.entry(2, 1), 1);
        let zero_entries = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !matches!((i, j), (0, 3) | (3, 0) | (1, 2) | (2, 1)));
        for (i, j) in zero_entries {
            assert_eq!(g.entry(i, j), 0);
        }
        let v = MukaiVector::new(0, 0, 0, 1);
        let w = MukaiVector::new(1, 0, 0, 0);
        // vᵀGw for v = e₄, w = e₁.
        let gw = g.apply(&w);
        let vt_gw = v.r * gw.r + v.s1 * gw.s1 + v.s2 * gw.s2 + v.t * gw.t;
        assert_eq!(vt_gw, -1);
        assert_eq!(vt_gw, pairing(&v, &w));
    }

    #[test]
    fn kron_identity_blocks() {
        assert_eq!(kron(&Mat2::IDENTITY, &Mat2::IDENTITY), Mat4::IDENTITY);
        let m = kron(&mat2([1, 0, 1, 1]), &mat2([1, 0, 1, 1]));
        assert_eq!(m, twist_matrix(1, 1));
    }

    #[test]
    fn twist_matches_displayed_matrix() {
        // Rows (1,0,0,0), (u₁,1,0,0), (u₂,0,1,0), (u₁u₂,u₂,u₁,1).
        let (u1, u2): (Int, Int) = (3, 5);
        let m = twist_matrix(u1, u2);
        let expected = Mat4([
            1,
            0,
            0,
            0, //
            u1,
            1,
            0,
            0, //
            u2,
            0,
            1,
            0, //
            u1 * u2,
            u2,
            u1,
            1,
        ]);
        assert_eq!(m, expected);
        assert_eq!(twist_matrix(0, 0), Mat4::IDENTITY);
        let ones = twist_matrix(1, 1);
        assert_eq!(ones, Mat4([1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1]));
    }

    #[test]
    fn twists_compose_additively() {
        for (u1, u2, w1, w2) in [(1, 2, 3, 4), (-5, 0, 2, -7), (9, -9, -9, 9)] {
            let lhs = twist_matrix(u1, u2).mul(&twist_matrix(w1, w2));
            assert_eq!(lhs, twist_matrix(u1 + w1, u2 + w2));
        }
    }

    #[test]
    fn shift_parity() {
        assert_eq!(shift_matrix(0), Mat4::IDENTITY);
        assert_eq!(shift_matrix(2), Mat4::IDENTITY);
        assert_eq!(shift_matrix(-4), Mat4::IDENTITY);
        assert_eq!(shift_matrix(1), Mat4::IDENTITY.neg());
        assert_eq!(shift_matrix(-3), Mat4::IDENTITY.neg());
        let p = MukaiVector::POINT;
        assert_eq!(shift_matrix(1).apply(&p), MukaiVector::new(0, 0, 0, -1));
    }

    #[test]
    fn rfm_point_class_images() {
        let t61 = lookup_type(TypeLabel::T6x1, 0).unwrap(); // λ₁ = 1
        let m = rfm_matrix(
            &GeneratorSpec::Rfm1 {
                c: 1,
                a: 1,
                d: 0,
                b: 1,
                s: 0,
            },
            t61,
        )
        .unwrap();
        assert_eq!(m.apply(&MukaiVector::POINT), MukaiVector::new(0, 1, 0, 1));

        let t21 = lookup_type(TypeLabel::T2x1, 0).unwrap(); // λ₂ = 2
        let m = rfm_matrix(
            &GeneratorSpec::Rfm2 {
                c: 1,
                a: 1,
                d: 0,
                b: 1,
                s: 0,
            },
            t21,
        )
        .unwrap();
        assert_eq!(m.apply(&MukaiVector::POINT), MukaiVector::new(0, 0, 2, 1));

        // The shear never shows in the image of the point class.
        let t22 = lookup_type(TypeLabel::T2x2, 0).unwrap();
        for s in -4..=4 {
            let m = rfm_matrix(
                &GeneratorSpec::Rfm1 {
                    c: 3,
                    a: 1,
                    d: 2,
                    b: 1,
                    s,
                },
                t22,
            )
            .unwrap();
            assert_eq!(
                m.apply(&MukaiVector::POINT),
                MukaiVector::new(0, t22.lambda1, 0, 1)
            );
        }
    }

    #[test]
    fn rfm_rejects_invalid_descriptions() {
        let t22 = lookup_type(TypeLabel::T2x2, 0).unwrap(); // λ₁ = 2
        let bad_div = GeneratorSpec::Rfm1 {
            c: 1,
            a: 1,
            d: 1,
            b: 2,
            s: 0,
        };
        assert!(matches!(
            rfm_matrix(&bad_div, t22),
            Err(Error::InvalidGenerator(_))
        ));
        let bad_det = GeneratorSpec::Rfm1 {
            c: 1,
            a: 1,
            d: 0,
            b: 2,
            s: 0,
        };
        assert!(matches!(
            rfm_matrix(&bad_det, t22),
            Err(Error::InvalidGenerator(_))
        ));
        let bad_sign = GeneratorSpec::Rfm1 {
            c: 1,
            a: -1,
            d: 0,
            b: -1,
            s: 0,
        };
        assert!(matches!(
            rfm_matrix(&bad_sign, t22),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn normalized_rfm_is_one_sided() {
        let t21 = lookup_type(TypeLabel::T2x1, 0).unwrap(); // λ₁ = 1, λ₂ = 2
        let m1 = normalized_rfm_matrix(1, 1, 0, 1, t21, Fibration::One).unwrap();
        assert_eq!(m1, kron(&mat2([1, 1, 0, 1]), &Mat2::IDENTITY));
        let m2 = normalized_rfm_matrix(1, 1, 0, 1, t21, Fibration::Two).unwrap();
        assert_eq!(m2, kron(&Mat2::IDENTITY, &mat2([1, 2, 0, 1])));
        let id = normalized_rfm_matrix(1, 1, 0, 1, t21, Fibration::One).unwrap();
        assert_eq!(id.apply(&MukaiVector::POINT), MukaiVector::new(0, 1, 0, 1));
    }

    #[test]
    fn gamma_membership() {
        assert!(is_in_gamma(&mat2([1, 2, 0, 1]), 2));
        assert!(!is_in_gamma(&mat2([1, 1, 0, 1]), 2));
        assert!(!is_in_gamma(&mat2([2, 2, 1, 1]), 2)); // det 0
        assert!(is_in_gamma(&mat2([1, 0, 7, 1]), 6));
        // Γ(λ) is closed under global negation.
        assert!(is_in_gamma(&mat2([-1, -2, 0, -1]), 2));
    }

    #[test]
    fn pairing_preservation_checks() {
        assert!(preserves_pairing(&twist_matrix(4, -7)));
        assert!(preserves_pairing(&shift_matrix(1)));
        let mut diag = Mat4::IDENTITY;
        diag.0[0] = 2;
        assert!(!preserves_pairing(&diag));
    }

    #[test]
    fn kron_factor_examples() {
        assert_eq!(
            kron_factor(&Mat4::IDENTITY),
            Some((Mat2::IDENTITY, Mat2::IDENTITY))
        );
        let a = mat2([1, 2, 0, 1]);
        let b = mat2([1, 0, 3, 1]);
        assert_eq!(kron_factor(&kron(&a, &b)), Some((a, b)));

        // Swapping only coordinates s₁ and s₂ is not a Kronecker product.
        let swap = Mat4([
            1, 0, 0, 0, //
            0, 0, 1, 0, //
            0, 1, 0, 0, //
            0, 0, 0, 1,
        ]);
        assert_eq!(kron_factor(&swap), None);

        // Zero matrix and non-unimodular scalings are rejected.
        assert_eq!(kron_factor(&Mat4([0; 16])), None);
        let doubled = kron(&mat2([2, 0, 0, 2]), &b);
        assert_eq!(kron_factor(&doubled), None);
    }

    #[test]
    fn kron_factor_sign_normalization() {
        let a = mat2([1, 2, 0, 1]);
        let b = mat2([1, 0, 3, 1]);
        let m = kron(&a.neg(), &b.neg());
        // (−A) ⊗ (−B) = A ⊗ B, so the normalized answer is (A, B) again.
        assert_eq!(kron_factor(&m), Some((a, b)));
        // A factor pair whose B has a negative leading entry flips globally.
        let m = kron(&a, &b.neg());
        assert_eq!(kron_factor(&m), Some((a.neg(), b)));
    }

    #[test]
    fn tensor_membership_examples() {
        let t33 = lookup_type(TypeLabel::T3x3, 0).unwrap();
        assert!(tensor_group_member(&twist_matrix(3, 5), t33));
        let m = normalized_rfm_matrix(2, 1, 3, 2, t33, Fibration::One).unwrap();
        assert!(tensor_group_member(&m, t33));

        let t22 = lookup_type(TypeLabel::T2x2, 0).unwrap(); // λ₁ = 2
        let not_member = kron(&mat2([1, 1, 0, 1]), &Mat2::IDENTITY);
        assert!(!tensor_group_member(&not_member, t22));
    }

    #[test]
    fn rfm_acts_on_rank_and_fiber_degree_by_its_fiber_matrix() {
        use crate::lattice::{fiber_degree, Fibration};
        let t42 = lookup_type(TypeLabel::T4x2, 0).unwrap(); // λ₁ = 2, λ₂ = 4
        let vectors = [
            MukaiVector::new(1, 2, 3, 4),
            MukaiVector::new(-5, 0, 7, 1),
            MukaiVector::new(0, -2, 0, 9),
        ];
        // (c, a, d, b) with cb − ad = 1, λᵢ | d, a > 0, per fibration.
        let along_f1 = [(1, 1, 0, 1), (3, 1, 2, 1), (1, 2, -2, -3)];
        let along_f2 = [(1, 1, 0, 1), (5, 1, 4, 1), (3, 1, -4, -1)];
        for ((c1, a1, d1, b1), (c2, a2, d2, b2)) in along_f1.into_iter().zip(along_f2) {
            for s in [-2, 0, 5] {
                let m1 = rfm_matrix(
                    &GeneratorSpec::Rfm1 {
                        c: c1,
                        a: a1,
                        d: d1,
                        b: b1,
                        s,
                    },
                    t42,
                )
                .unwrap();
                let w1 = Mat2::new(c1, a1, d1, b1);
                let m2 = rfm_matrix(
                    &GeneratorSpec::Rfm2 {
                        c: c2,
                        a: a2,
                        d: d2,
                        b: b2,
                        s,
                    },
                    t42,
                )
                .unwrap();
                let w2 = Mat2::new(c2, a2, d2, b2);
                for v in &vectors {
                    let image1 = m1.apply(v);
                    assert_eq!(
                        (image1.r, fiber_degree(&image1, Fibration::One, t42)),
                        w1.apply(v.r, fiber_degree(v, Fibration::One, t42)),
                    );
                    let image2 = m2.apply(v);
                    assert_eq!(
                        (image2.r, fiber_degree(&image2, Fibration::Two, t42)),
                        w2.apply(v.r, fiber_degree(v, Fibration::Two, t42)),
                    );
                }
                // Generator matrices are isometries inside the tensor group.
                assert!(preserves_pairing(&m1) && preserves_pairing(&m2));
                assert!(tensor_group_member(&m1, t42) && tensor_group_member(&m2, t42));
            }
        }
    }

    #[test]
    fn apply_basics() {
        let v = MukaiVector::new(2, -3, 5, 7);
        assert_eq!(Mat4::IDENTITY.apply(&v), v);
        let m = twist_matrix(4, 9);
        assert_eq!(
            m.apply(&MukaiVector::new(1, 0, 0, 0)),
            MukaiVector::new(1, 4, 9, 36)
        );
    }

    prop_compose! {
        fn small_mat2()(e in any::<[i8; 4]>()) -> Mat2 {
            Mat2(e.map(Int::from))
        }
    }

    prop_compose! {
        /// det ±1 matrices built from unipotent factors, an optional swap
        /// (det −1) and an optional global sign.
        fn unimodular_mat2()(
            x in -5i64..=5,
            y in -5i64..=5,
            z in -5i64..=5,
            swap in any::<bool>(),
            negate in any::<bool>(),
        ) -> Mat2 {
            let mut m = Mat2::new(1, x.into(), 0, 1)
                .mul(&Mat2::new(1, 0, y.into(), 1))
                .mul(&Mat2::new(1, z.into(), 0, 1));
            if swap {
                m = m.mul(&Mat2::new(0, 1, 1, 0));
            }
            if negate {
                m = m.neg();
            }
            m
        }
    }

    proptest! {
        #[test]
        fn mixed_product_identity(
            a in small_mat2(),
            b in small_mat2(),
            c in small_mat2(),
            d in small_mat2(),
        ) {
            // (A ⊗ C)(B ⊗ D) = AB ⊗ CD for arbitrary integer factors.
            prop_assert_eq!(kron(&a, &c).mul(&kron(&b, &d)), kron(&a.mul(&b), &c.mul(&d)));
        }

        #[test]
        fn kron_apply_matches_sandwich(a in small_mat2(), b in small_mat2(), v in any::<[i8; 4]>()) {
            // kron(A, B)·vec([[r,s₁],[s₂,t]]) = vec(A·[[r,s₁],[s₂,t]]·Bᵀ)
            let v = MukaiVector::from_array(v.map(Int::from));
            let image = kron(&a, &b).apply(&v);
            let (r, s1) = (v.r, v.s1);
            let (s2, t) = (v.s2, v.t);
            // A acts on the columns (r,s₂), (s₁,t); Bᵀ on the rows.
            let row1 = (
                a.entry(0,0) * r + a.entry(0,1) * s2,
                a.entry(0,0) * s1 + a.entry(0,1) * t,
            );
            let row2 = (
                a.entry(1,0) * r + a.entry(1,1) * s2,
                a.entry(1,0) * s1 + a.entry(1,1) * t,
            );
            let expected = MukaiVector::new(
                row1.0 * b.entry(0,0) + row1.1 * b.entry(0,1),
                row1.0 * b.entry(1,0) + row1.1 * b.entry(1,1),
                row2.0 * b.entry(0,0) + row2.1 * b.entry(0,1),
                row2.0 * b.entry(1,0) + row2.1 * b.entry(1,1),
            );
            prop_assert_eq!(image, expected);
        }

        #[test]
        fn twists_preserve_pairing(u1 in -50i64..=50, u2 in -50i64..=50) {
            prop_assert!(preserves_pairing(&twist_matrix(u1.into(), u2.into())));
        }

        #[test]
        fn unimodular_kron_round_trips(a in unimodular_mat2(), b in unimodular_mat2()) {
            let m = kron(&a, &b);
            let (fa, fb) = kron_factor(&m).expect("unimodular pairs factor");
            prop_assert!((fa, fb) == (a, b) || (fa, fb) == (a.neg(), b.neg()));
            prop_assert_eq!(kron(&fa, &fb), m);
        }
    }
}
