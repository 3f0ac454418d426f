//! Text grammars for the command-line surface: exact rationals, spectral
//! parameters λ = a + b·i with rational a and b, and compact-group irreducible
//! representations. These parsers are the designated fuzzing entry points, so
//! they must never panic on malformed input — every failure is a typed error.
//!
//! The λ grammar accepts `R`, `Ri`, `R+Ri`, `R-Ri`, and the bare units `i`,
//! `+i`, `-i`, where `R` is a rational literal `p` or `p/q`. The split between
//! real and imaginary parts happens at the first `+` or `-` that is neither
//! the leading sign nor immediately preceded by `/` (so `1/-2i` keeps its
//! negative denominator).
//!
//! The representation grammar names the cases that occur for the compact
//! groups in this crate: `triv`, `sh:<m>` (degree-m spherical harmonics),
//! `circ:<s>` (circle character of winding s), and an explicit
//! `hw:[a,b,...]` highest weight.

use crate::exactnum::{ComplexQuad, QuadExt, Rational};
use crate::reps::{CompactGroupData, GroupKind, IrrepSpec, RepsError};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Errors from the text grammars. Kept apart from [`crate::exactnum::ExactError`]
/// so callers can map syntax problems to usage errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational literal {0:?}: expected `p` or `p/q` with integer p, q")]
    Rational(String),
    #[error("invalid spectral parameter {0:?}: expected `R`, `Ri`, `R+Ri`, or `R-Ri`")]
    Lambda(String),
    #[error("invalid representation literal {0:?}: expected `triv`, `sh:<m>`, `circ:<s>`, or `hw:[a,b,...]`")]
    Irrep(String),
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational, ParseError> {
    Rational::from_str(input.trim()).map_err(|_| ParseError::Rational(input.to_string()))
}

/// Parses the λ grammar into an exact complex number with rational parts.
pub fn parse_lambda(input: &str) -> Result<ComplexQuad, ParseError> {
    let s = input.trim();
    let err = || ParseError::Lambda(input.to_string());
    if s.is_empty() {
        return Err(err());
    }

    // A `+` or `-` after the leading character splits real and imaginary
    // parts, unless it is part of a `p/-q` denominator.
    let bytes = s.as_bytes();
    let mut split_at = None;
    for (idx, &c) in bytes.iter().enumerate().skip(1) {
        if (c == b'+' || c == b'-') && bytes[idx - 1] != b'/' {
            split_at = Some(idx);
            break;
        }
    }

    let imaginary_part = |part: &str| -> Result<Rational, ParseError> {
        let body = part.strip_suffix('i').ok_or_else(err)?;
        match body {
            "" | "+" => Ok(Rational::from_int(1)),
            "-" => Ok(Rational::from_int(-1)),
            _ => parse_rational(body).map_err(|_| err()),
        }
    };

    let (re, im) = match split_at {
        Some(idx) => {
            let head = &s[..idx];
            let tail = &s[idx..]; // keeps the sign
            (parse_rational(head).map_err(|_| err())?, imaginary_part(tail)?)
        }
        None => {
            if s.ends_with('i') {
                (Rational::zero(), imaginary_part(s)?)
            } else {
                (parse_rational(s).map_err(|_| err())?, Rational::zero())
            }
        }
    };
    Ok(ComplexQuad::new(
        QuadExt::from_rational(re),
        QuadExt::from_rational(im),
    ))
}

/// A syntactically valid representation literal, not yet bound to a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrepLiteral {
    Trivial,
    SphericalHarmonic(u32),
    CircleCharacter(i64),
    HighestWeight(Vec<i64>),
}

impl fmt::Display for IrrepLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLiteral::Trivial => write!(f, "triv"),
            IrrepLiteral::SphericalHarmonic(m) => write!(f, "sh:{m}"),
            IrrepLiteral::CircleCharacter(s) => write!(f, "circ:{s}"),
            IrrepLiteral::HighestWeight(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "hw:[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for IrrepLiteral {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_irrep(s)
    }
}

/// Parses the representation grammar.
pub fn parse_irrep(input: &str) -> Result<IrrepLiteral, ParseError> {
    let s = input.trim();
    let err = || ParseError::Irrep(input.to_string());
    if s == "triv" {
        return Ok(IrrepLiteral::Trivial);
    }
    if let Some(body) = s.strip_prefix("sh:") {
        let m: u32 = body.trim().parse().map_err(|_| err())?;
        return Ok(IrrepLiteral::SphericalHarmonic(m));
    }
    if let Some(body) = s.strip_prefix("circ:") {
        let c: i64 = body.trim().parse().map_err(|_| err())?;
        return Ok(IrrepLiteral::CircleCharacter(c));
    }
    if let Some(body) = s.strip_prefix("hw:") {
        let body = body.trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(err)?;
        let inner = inner.trim();
        let weights = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<Vec<i64>, ParseError>>()?
        };
        return Ok(IrrepLiteral::HighestWeight(weights));
    }
    Err(err())
}

/// Binds a syntactic literal to a concrete compact group, producing a
/// validated representation. Semantic mismatches (wrong rank, circle
/// character of a non-circle group) surface as [`RepsError`].
pub fn resolve_irrep(
    literal: &IrrepLiteral,
    group: &CompactGroupData,
) -> Result<IrrepSpec, RepsError> {
    match literal {
        IrrepLiteral::Trivial => Ok(IrrepSpec::trivial(group.clone())),
        IrrepLiteral::SphericalHarmonic(m) => {
            IrrepSpec::spherical_harmonic(group.clone(), *m)
        }
        IrrepLiteral::CircleCharacter(s) => {
            if group.kind != GroupKind::Circle {
                return Err(RepsError::InvalidWeight(format!(
                    "circle character circ:{s} requires a circle group, got {}",
                    group.name()
                )));
            }
            IrrepSpec::circle_character(group.clone(), *s)
        }
        IrrepLiteral::HighestWeight(w) => IrrepSpec::new(group.clone(), w.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{centralizer_m, maximal_compact};
    use crate::rootdata::RankOneGroup;

    fn lam(s: &str) -> (f64, f64) {
        parse_lambda(s).unwrap().approx()
    }

    #[test]
    fn plain_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::ratio(3, 4));
        assert_eq!(parse_rational(" -7 ").unwrap(), Rational::from_int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lambda_real_forms() {
        assert_eq!(lam("0"), (0.0, 0.0));
        assert_eq!(lam("-1/2"), (-0.5, 0.0));
        assert_eq!(lam("5/-3"), (-5.0 / 3.0, 0.0));
    }

    #[test]
    fn lambda_imaginary_forms() {
        assert_eq!(lam("i"), (0.0, 1.0));
        assert_eq!(lam("-i"), (0.0, -1.0));
        assert_eq!(lam("+i"), (0.0, 1.0));
        assert_eq!(lam("3/4i"), (0.0, 0.75));
        assert_eq!(lam("-2i"), (0.0, -2.0));
    }

    #[test]
    fn lambda_mixed_forms() {
        assert_eq!(lam("-1/2+i"), (-0.5, 1.0));
        assert_eq!(lam("-1/2-3/4i"), (-0.5, -0.75));
        assert_eq!(lam("1+2i"), (1.0, 2.0));
        // A sign directly after `/` belongs to the denominator.
        assert_eq!(lam("1/-2i"), (0.0, -0.5));
        assert_eq!(lam("1/-2+1/-2i"), (-0.5, -0.5));
    }

    #[test]
    fn lambda_rejects_malformed_input() {
        for bad in ["", "1+2", "i5", "1++2i", "2i+1", "1 + 2i", "1/2/3", "--i"] {
            assert!(parse_lambda(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn irrep_literals() {
        assert_eq!(parse_irrep("triv").unwrap(), IrrepLiteral::Trivial);
        assert_eq!(
            parse_irrep("sh:3").unwrap(),
            IrrepLiteral::SphericalHarmonic(3)
        );
        assert_eq!(
            parse_irrep("circ:-2").unwrap(),
            IrrepLiteral::CircleCharacter(-2)
        );
        assert_eq!(
            parse_irrep("hw:[2,1,0]").unwrap(),
            IrrepLiteral::HighestWeight(vec![2, 1, 0])
        );
        assert_eq!(
            parse_irrep("hw:[ 2, -1 ]").unwrap(),
            IrrepLiteral::HighestWeight(vec![2, -1])
        );
        assert_eq!(
            parse_irrep("hw:[]").unwrap(),
            IrrepLiteral::HighestWeight(vec![])
        );
    }

    #[test]
    fn irrep_rejects_malformed_input() {
        for bad in ["", "sh:", "sh:-1", "circ:", "hw:2,1", "hw:[2,", "spin:1", "sh:1x"] {
            assert!(parse_irrep(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn literals_round_trip_through_display() {
        for text in ["triv", "sh:4", "circ:-3", "hw:[3,1,-1]"] {
            let lit = parse_irrep(text).unwrap();
            assert_eq!(lit.to_string(), text);
            assert_eq!(parse_irrep(&lit.to_string()).unwrap(), lit);
        }
    }

    #[test]
    fn resolution_against_groups() {
        let g = RankOneGroup::real_hyperbolic(3).unwrap();
        let k = maximal_compact(&g).unwrap();
        let m = centralizer_m(&g).unwrap();
        let sh2 = resolve_irrep(&IrrepLiteral::SphericalHarmonic(2), &k).unwrap();
        assert_eq!(
            sh2,
            IrrepSpec::new(k.clone(), vec![2, 0]).unwrap()
        );
        // circ on a non-circle group is a semantic error.
        assert!(resolve_irrep(&IrrepLiteral::CircleCharacter(1), &m).is_err());
        // Wrong-rank highest weights are rejected by the binder.
        assert!(resolve_irrep(&IrrepLiteral::HighestWeight(vec![1, 2, 3]), &k).is_err());
        // At n = 2 the centralizer is a circle.
        let g2 = RankOneGroup::real_hyperbolic(2).unwrap();
        let m2 = centralizer_m(&g2).unwrap();
        let tau = resolve_irrep(&IrrepLiteral::CircleCharacter(-1), &m2).unwrap();
        assert!(!tau.is_trivial());
    }
}
