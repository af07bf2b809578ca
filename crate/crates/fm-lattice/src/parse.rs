//! Strict text parsers for the CLI payload grammar.
//!
//! Integers are parsed exactly with no silent truncation; a value outside
//! `i128` is a parse error, never a wrapped number. Grammar:
//!
//! * vector — `r,s1,s2,t` (4 comma-separated integers);
//! * 2×2 matrix — 4 comma-separated integers, row-major;
//! * 4×4 matrix — 16 comma-separated integers, row-major;
//! * type label — `2,1`, `2,2`, `2,mu2`, `3,1`, `3,3`, `4,1`, `4,2`, `6,1`;
//! * generator — `twist:U1,U2`, `shift:N`, `rfm1:C,A,D,B[,S]`,
//!   `rfm2:C,A,D,B[,S]`;
//! * fibration — `1` or `2`.
//!
//! ASCII whitespace around components is tolerated.

use crate::lattice::{Fibration, MukaiVector};
use crate::surface::TypeLabel;
use crate::transform::{GeneratorSpec, Mat2, Mat4};
use crate::Int;

/// Failure to parse a CLI payload. Carries a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn err(message: impl Into<String>) -> ParseError {
    ParseError(message.into())
}

/// Exact integer, rejecting anything `i128` cannot represent.
pub fn parse_int(text: &str) -> Result<Int, ParseError> {
    let trimmed = text.trim();
    trimmed
        .parse::<Int>()
        .map_err(|e| err(format!("invalid integer {trimmed:?}: {e}")))
}

fn parse_ints(text: &str, arity: usize, what: &str) -> Result<Vec<Int>, ParseError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != arity {
        return Err(err(format!(
            "{what} needs {arity} comma-separated integers, got {}",
            parts.len()
        )));
    }
    parts.iter().map(|p| parse_int(p)).collect()
}

/// `r,s1,s2,t`
pub fn parse_vector(text: &str) -> Result<MukaiVector, ParseError> {
    let v = parse_ints(text, 4, "a Mukai vector")?;
    Ok(MukaiVector::new(v[0], v[1], v[2], v[3]))
}

/// 4 comma-separated integers, row-major.
pub fn parse_mat2(text: &str) -> Result<Mat2, ParseError> {
    let v = parse_ints(text, 4, "a 2x2 matrix")?;
    Ok(Mat2([v[0], v[1], v[2], v[3]]))
}

/// 16 comma-separated integers, row-major.
pub fn parse_mat4(text: &str) -> Result<Mat4, ParseError> {
    let v = parse_ints(text, 16, "a 4x4 matrix")?;
    let mut entries = [0; 16];
    entries.copy_from_slice(&v);
    Ok(Mat4(entries))
}

/// Surface-type label. `mu2` may also be written `μ2` or `μ₂`.
pub fn parse_type_label(text: &str) -> Result<TypeLabel, ParseError> {
    let normalized: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase()
        .replace("μ₂", "mu2")
        .replace("μ2", "mu2");
    match normalized.as_str() {
        "2,1" => Ok(TypeLabel::T2x1),
        "2,2" => Ok(TypeLabel::T2x2),
        "2,mu2" => Ok(TypeLabel::T2Mu2),
        "3,1" => Ok(TypeLabel::T3x1),
        "3,3" => Ok(TypeLabel::T3x3),
        "4,1" => Ok(TypeLabel::T4x1),
        "4,2" => Ok(TypeLabel::T4x2),
        "6,1" => Ok(TypeLabel::T6x1),
        other => Err(err(format!(
            "unknown type label {other:?}; expected one of 2,1 2,2 2,mu2 3,1 3,3 4,1 4,2 6,1"
        ))),
    }
}

/// Tagged generator description, e.g. `twist:3,5` or `rfm1:1,1,0,1,0`.
/// The shear of an rfm defaults to 0 when omitted.
pub fn parse_generator_spec(text: &str) -> Result<GeneratorSpec, ParseError> {
    let (tag, payload) = text
        .split_once(':')
        .ok_or_else(|| err("generator spec needs the form tag:params"))?;
    match tag.trim().to_lowercase().as_str() {
        "twist" => {
            let v = parse_ints(payload, 2, "twist")?;
            Ok(GeneratorSpec::Twist { u1: v[0], u2: v[1] })
        }
        "shift" => {
            let v = parse_ints(payload, 1, "shift")?;
            Ok(GeneratorSpec::Shift { n: v[0] })
        }
        tag @ ("rfm1" | "rfm2") => {
            let parts: Vec<&str> = payload.split(',').collect();
            if parts.len() != 4 && parts.len() != 5 {
                return Err(err("rfm needs c,a,d,b with optional ,s"));
            }
            let v: Vec<Int> = parts
                .iter()
                .map(|p| parse_int(p))
                .collect::<Result<_, _>>()?;
            let s = v.get(4).copied().unwrap_or(0);
            Ok(if tag == "rfm1" {
                GeneratorSpec::Rfm1 {
                    c: v[0],
                    a: v[1],
                    d: v[2],
                    b: v[3],
                    s,
                }
            } else {
                GeneratorSpec::Rfm2 {
                    c: v[0],
                    a: v[1],
                    d: v[2],
                    b: v[3],
                    s,
                }
            })
        }
        other => Err(err(format!(
            "unknown generator tag {other:?}; expected twist, shift, rfm1 or rfm2"
        ))),
    }
}

/// `1` or `2`.
pub fn parse_fibration(text: &str) -> Result<Fibration, ParseError> {
    match text.trim() {
        "1" => Ok(Fibration::One),
        "2" => Ok(Fibration::Two),
        other => Err(err(format!("fibration must be 1 or 2, got {other:?}"))),
    }
}
