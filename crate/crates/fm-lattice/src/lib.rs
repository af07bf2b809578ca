//! Exact-integer engine for the numerical action of derived-category
//! autoequivalences on bielliptic surfaces.
//!
//! A bielliptic surface `X` carries two elliptic fibrations and a rank-4
//! numerical Chow lattice `ℤ ⊕ Num(X) ⊕ ℤ ≅ ℤ⁴`. Autoequivalences of `D(X)`
//! act on this lattice through the group
//! `{A₁ ⊗ A₂ ∈ GL₄(ℤ) | Aᵢ ∈ Γ(λᵢ)}`, where `Γ(λ)` is the subgroup of
//! `SL₂(ℤ)` whose upper-right entry is divisible by `λ` and the `λᵢ` are
//! invariants of the surface's classification type.
//!
//! The crate provides:
//!
//! * [`surface`] — the registry of the 13 classification rows and their
//!   numerical invariants (`λ₁`, `λ₂`, `μ`, `F₁·F₂`, `ord(ω_X)`, …);
//! * [`lattice`] — Mukai vectors `(r, s₁, s₂, t)`, the Mukai pairing, the
//!   Euler form, divisor arithmetic and fiber degrees;
//! * [`transform`] — exact 2×2/4×4 integer matrices, twist/shift/relative
//!   Fourier–Mukai generator matrices, Kronecker products and their
//!   factorization, Gram-form and tensor-group membership checks;
//! * [`reduction`] — the constructive algorithm factoring an admissible
//!   Mukai vector into a word of generators, plus an independent
//!   breadth-first orbit oracle used for cross-validation;
//! * [`parse`] — strict text parsers for the CLI payload formats.
//!
//! All arithmetic is exact over `i128` and every cargo profile of this
//! workspace enables `overflow-checks`, so an overflow aborts instead of
//! wrapping. No floating point is used anywhere.
//!
//! ```
//! use fm_lattice::lattice::MukaiVector;
//! use fm_lattice::parse::parse_type_label;
//! use fm_lattice::reduction::reduce_vector;
//! use fm_lattice::surface::lookup_type;
//!
//! let st = lookup_type(parse_type_label("2,2")?, 0)?;
//! let target = MukaiVector::new(4, 6, 2, 3);
//! let report = reduce_vector(&target, st)?;
//! assert!(report.verified);
//! assert_eq!(report.word.matrix().apply(&MukaiVector::POINT), target);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod lattice;
pub mod parse;
pub mod reduction;
pub mod surface;
pub mod transform;

mod arith;

pub use lattice::{Fibration, MukaiVector};
pub use reduction::{GeneratorWord, ReductionReport};
pub use surface::{CharConstraint, SurfaceType, TypeLabel};
pub use transform::{GeneratorSpec, Mat2, Mat4};

/// The integer type used throughout the crate.
pub type Int = i128;

/// Domain errors. Each variant names the precondition that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// No classification row matches the requested label and characteristic.
    UnknownType,
    /// A generator description violates its validity constraints
    /// (determinant 1, λ | d, a > 0 for relative FM transforms).
    InvalidGenerator(&'static str),
    /// Bezout data requested for the pair (0, 0).
    BothZero,
    /// A kill matrix was requested for a vector of rank 0.
    ZeroRank,
    /// The gcd hypothesis of the requested kill matrix does not hold.
    HypothesisFailed(&'static str),
    /// `gcd(aλ, b) ≠ 1`, so no SL₂(ℤ) completion with λ | d exists.
    NotCoprime,
    /// The leading moduli parameter must be positive.
    NonpositiveA,
    /// The vector has non-zero Mukai self-pairing.
    NotIsotropic,
    /// The vector's entries have a common divisor greater than 1.
    NotPrimitive,
    /// A rank-0 vector's fiber-class coordinate is not divisible by λᵢ.
    FractionalFiberClass,
    /// The vector is not in the generator orbit of the point class.
    NotInOrbit,
}

impl Error {
    /// Stable machine-readable code for CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownType => "unknown_type",
            Error::InvalidGenerator(_) => "invalid_generator",
            Error::BothZero => "both_zero",
            Error::ZeroRank => "zero_rank",
            Error::HypothesisFailed(_) => "hypothesis_failed",
            Error::NotCoprime => "not_coprime",
            Error::NonpositiveA => "nonpositive_a",
            Error::NotIsotropic => "not_isotropic",
            Error::NotPrimitive => "not_primitive",
            Error::FractionalFiberClass => "fractional_fiber_class",
            Error::NotInOrbit => "not_in_orbit",
        }
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::UnknownType => {
                write!(
                    f,
                    "no surface type matches the given label and characteristic"
                )
            }
            Error::InvalidGenerator(why) => write!(f, "invalid generator: {why}"),
            Error::BothZero => write!(f, "extended gcd of (0, 0) is undefined"),
            Error::ZeroRank => write!(f, "kill matrix requires a non-zero rank"),
            Error::HypothesisFailed(why) => write!(f, "gcd hypothesis failed: {why}"),
            Error::NotCoprime => write!(f, "aλ and b are not coprime"),
            Error::NonpositiveA => write!(f, "parameter a must be positive"),
            Error::NotIsotropic => write!(f, "vector is not isotropic (r·t ≠ s₁·s₂)"),
            Error::NotPrimitive => write!(f, "vector entries are not coprime"),
            Error::FractionalFiberClass => {
                write!(f, "fiber-class coordinate is not divisible by λ")
            }
            Error::NotInOrbit => write!(f, "vector is not in the orbit of the point class"),
        }
    }
}

impl std::error::Error for Error {}
