//! Registry of the 13 classification rows of bielliptic surfaces and their
//! numerical invariants.
//!
//! A bielliptic surface is a quotient `(A × B)/G` of two elliptic curves by
//! a finite group scheme `G = G₀ × H`. Its type is named by a pair `(s, t)`
//! together with a constraint on the base-field characteristic; rows with
//! the same label in different characteristics carry different invariants.
//! The invariants recorded per row:
//!
//! * `g0_order` — order of the cyclic group `G₀`;
//! * `h_rank` — rank of `H` as a finite group scheme (1 for `H = e`,
//!   2 for `ℤ/2ℤ` and for `μ₂`, 3 for `ℤ/3ℤ`);
//! * `ord_omega` — order of the canonical bundle `ω_X`;
//! * `lambda1`, `lambda2` — minimal fiber intersection numbers of the two
//!   elliptic fibrations, with `λ₁ = (F₁·F₂)/μ` and `λ₂ = μ`;
//! * `f1_dot_f2` — intersection number of the two fiber classes, which
//!   equals `rank(G) = g0_order · h_rank`;
//! * `multiplicities` — the multiple-fiber multiplicities of the second
//!   fibration (two alternative multisets for the rows where either can
//!   occur), and `mu` — their least common multiple.

use crate::{Error, Int};

/// Label `(s, t)` of a classification row. `Mu2` stands for the
/// non-reduced group scheme `μ₂` occurring only in characteristic 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeLabel {
    /// (2,1)
    T2x1,
    /// (2,2)
    T2x2,
    /// (2,μ₂)
    T2Mu2,
    /// (3,1)
    T3x1,
    /// (3,3)
    T3x3,
    /// (4,1)
    T4x1,
    /// (4,2)
    T4x2,
    /// (6,1)
    T6x1,
}

impl TypeLabel {
    /// All 8 distinct labels, in table order.
    pub const ALL: [TypeLabel; 8] = [
        TypeLabel::T2x1,
        TypeLabel::T2x2,
        TypeLabel::T2Mu2,
        TypeLabel::T3x1,
        TypeLabel::T3x3,
        TypeLabel::T4x1,
        TypeLabel::T4x2,
        TypeLabel::T6x1,
    ];

    /// Canonical text form, identical to the CLI input syntax.
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeLabel::T2x1 => "2,1",
            TypeLabel::T2x2 => "2,2",
            TypeLabel::T2Mu2 => "2,mu2",
            TypeLabel::T3x1 => "3,1",
            TypeLabel::T3x3 => "3,3",
            TypeLabel::T4x1 => "4,1",
            TypeLabel::T4x2 => "4,2",
            TypeLabel::T6x1 => "6,1",
        }
    }
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constraint on the base-field characteristic, kept as a predicate so
/// characteristic 0 and arbitrary primes are handled uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharConstraint {
    /// char(k) = p
    Equal(u64),
    /// char(k) ≠ p
    NotEqual(u64),
    /// char(k) ∉ {p, q}
    NotEqualEither(u64, u64),
}

impl CharConstraint {
    /// Evaluate the predicate at a characteristic (0 or a prime).
    pub fn admits(&self, characteristic: u64) -> bool {
        match *self {
            CharConstraint::Equal(p) => characteristic == p,
            CharConstraint::NotEqual(p) => characteristic != p,
            CharConstraint::NotEqualEither(p, q) => characteristic != p && characteristic != q,
        }
    }
}

impl std::fmt::Display for CharConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CharConstraint::Equal(p) => write!(f, "= {p}"),
            CharConstraint::NotEqual(p) => write!(f, "≠ {p}"),
            CharConstraint::NotEqualEither(p, q) => write!(f, "≠ {p},{q}"),
        }
    }
}

/// One classification row with all of its numerical invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceType {
    pub label: TypeLabel,
    pub char_constraint: CharConstraint,
    pub g0_order: Int,
    pub h_rank: Int,
    pub ord_omega: Int,
    pub lambda1: Int,
    pub lambda2: Int,
    pub f1_dot_f2: Int,
    /// Alternative multisets of multiple-fiber multiplicities of the second
    /// fibration. Most rows have exactly one; two char = 2 rows admit either
    /// of two multisets, and both yield the same `μ`.
    pub multiplicities: &'static [&'static [Int]],
    pub mu: Int,
}

impl SurfaceType {
    /// True for the (2,μ₂) row, which needs special handling in the
    /// reduction pipeline.
    pub fn is_mu2(&self) -> bool {
        self.label == TypeLabel::T2Mu2
    }
}

const TABLE: [SurfaceType; 13] = [
    SurfaceType {
        label: TypeLabel::T2x1,
        char_constraint: CharConstraint::NotEqual(2),
        g0_order: 2,
        h_rank: 1,
        ord_omega: 2,
        lambda1: 1,
        lambda2: 2,
        f1_dot_f2: 2,
        multiplicities: &[&[2, 2, 2, 2]],
        mu: 2,
    },
    SurfaceType {
        label: TypeLabel::T2x1,
        char_constraint: CharConstraint::Equal(2),
        g0_order: 2,
        h_rank: 1,
        ord_omega: 1,
        lambda1: 1,
        lambda2: 2,
        f1_dot_f2: 2,
        multiplicities: &[&[2], &[2, 2]],
        mu: 2,
    },
    SurfaceType {
        label: TypeLabel::T2x2,
        char_constraint: CharConstraint::NotEqual(2),
        g0_order: 2,
        h_rank: 2,
        ord_omega: 2,
        lambda1: 2,
        lambda2: 2,
        f1_dot_f2: 4,
        multiplicities: &[&[2, 2, 2, 2]],
        mu: 2,
    },
    SurfaceType {
        label: TypeLabel::T2Mu2,
        char_constraint: CharConstraint::Equal(2),
        g0_order: 2,
        h_rank: 2,
        ord_omega: 1,
        lambda1: 2,
        lambda2: 2,
        f1_dot_f2: 4,
        multiplicities: &[&[2], &[2, 2]],
        mu: 2,
    },
    SurfaceType {
        label: TypeLabel::T3x1,
        char_constraint: CharConstraint::NotEqual(3),
        g0_order: 3,
        h_rank: 1,
        ord_omega: 3,
        lambda1: 1,
        lambda2: 3,
        f1_dot_f2: 3,
        multiplicities: &[&[3, 3, 3]],
        mu: 3,
    },
    SurfaceType {
        label: TypeLabel::T3x1,
        char_constraint: CharConstraint::Equal(3),
        g0_order: 3,
        h_rank: 1,
        ord_omega: 1,
        lambda1: 1,
        lambda2: 3,
        f1_dot_f2: 3,
        multiplicities: &[&[3]],
        mu: 3,
    },
    SurfaceType {
        label: TypeLabel::T3x3,
        char_constraint: CharConstraint::NotEqual(3),
        g0_order: 3,
        h_rank: 3,
        ord_omega: 3,
        lambda1: 3,
        lambda2: 3,
        f1_dot_f2: 9,
        multiplicities: &[&[3, 3, 3]],
        mu: 3,
    },
    SurfaceType {
        label: TypeLabel::T4x1,
        char_constraint: CharConstraint::NotEqual(2),
        g0_order: 4,
        h_rank: 1,
        ord_omega: 4,
        lambda1: 1,
        lambda2: 4,
        f1_dot_f2: 4,
        multiplicities: &[&[2, 4, 4]],
        mu: 4,
    },
    SurfaceType {
        label: TypeLabel::T4x1,
        char_constraint: CharConstraint::Equal(2),
        g0_order: 4,
        h_rank: 1,
        ord_omega: 1,
        lambda1: 1,
        lambda2: 4,
        f1_dot_f2: 4,
        multiplicities: &[&[4]],
        mu: 4,
    },
    SurfaceType {
        label: TypeLabel::T4x2,
        char_constraint: CharConstraint::NotEqual(2),
        g0_order: 4,
        h_rank: 2,
        ord_omega: 4,
        lambda1: 2,
        lambda2: 4,
        f1_dot_f2: 8,
        multiplicities: &[&[2, 4, 4]],
        mu: 4,
    },
    SurfaceType {
        label: TypeLabel::T6x1,
        char_constraint: CharConstraint::NotEqualEither(2, 3),
        g0_order: 6,
        h_rank: 1,
        ord_omega: 6,
        lambda1: 1,
        lambda2: 6,
        f1_dot_f2: 6,
        multiplicities: &[&[2, 3, 6]],
        mu: 6,
    },
    SurfaceType {
        label: TypeLabel::T6x1,
        char_constraint: CharConstraint::Equal(2),
        g0_order: 6,
        h_rank: 1,
        ord_omega: 3,
        lambda1: 1,
        lambda2: 6,
        f1_dot_f2: 6,
        multiplicities: &[&[6, 3]],
        mu: 6,
    },
    SurfaceType {
        label: TypeLabel::T6x1,
        char_constraint: CharConstraint::Equal(3),
        g0_order: 6,
        h_rank: 1,
        ord_omega: 2,
        lambda1: 1,
        lambda2: 6,
        f1_dot_f2: 6,
        multiplicities: &[&[6, 2]],
        mu: 6,
    },
];

/// All 13 classification rows, in table order.
pub fn all_types() -> &'static [SurfaceType] {
    &TABLE
}

/// Look up the unique row matching a label and a base-field characteristic
/// (0 or a prime). Fails with [`Error::UnknownType`] when no row matches,
/// e.g. label (4,2) in characteristic 2.
pub fn lookup_type(label: TypeLabel, characteristic: u64) -> Result<&'static SurfaceType, Error> {
    TABLE
        .iter()
        .find(|row| row.label == label && row.char_constraint.admits(characteristic))
        .ok_or(Error::UnknownType)
}

/// `rank(G) = g0_order · h_rank`, which equals `F₁·F₂`.
pub fn rank_of_g(st: &SurfaceType) -> Int {
    st.g0_order * st.h_rank
}
