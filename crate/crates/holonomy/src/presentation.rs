//! Presentations of graded algebras: quotients of an exterior algebra or of
//! the free associative algebra by homogeneous relations, together with the
//! shared text format used by the CLI and the test fixtures.
//!
//! Text format: the first line is `exterior <numgens>` or `free <numgens>`;
//! every further nonempty line is one relation, written as a sequence of
//! `coef monomial` pairs, e.g. `1 x1*x4 1 x2*x4` for x₁x₄ + x₂x₄ or
//! `1 X1.X2 -1 X2.X1` for the commutator [X₁,X₂]. Coefficients are rational
//! (`-1`, `2/3`); monomial factors use 1-based generator indices. Lines
//! starting with `#` are comments.

use crate::error::{Error, Result};
use crate::exterior::{ExtMonomial, ExtPoly};
use crate::scalar::Scalar;
use crate::word::{FreePoly, Word};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// Which ambient algebra the relations live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Exterior (graded-commutative, square-zero generators).
    Exterior,
    /// Free associative (order of factors significant).
    Free,
}

/// One homogeneous relation, in the ambient algebra of the presentation.
#[derive(Clone, Debug, PartialEq)]
pub enum Relation {
    Exterior(ExtPoly),
    Free(FreePoly),
}

impl Relation {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Relation::Exterior(p) => p.homogeneous_degree(),
            Relation::Free(p) => p.homogeneous_degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Relation::Exterior(p) => p.is_zero(),
            Relation::Free(p) => p.is_zero(),
        }
    }

    pub fn as_exterior(&self) -> &ExtPoly {
        match self {
            Relation::Exterior(p) => p,
            Relation::Free(_) => panic!("expected an exterior relation"),
        }
    }

    pub fn as_free(&self) -> &FreePoly {
        match self {
            Relation::Free(p) => p,
            Relation::Exterior(_) => panic!("expected a free-algebra relation"),
        }
    }
}

/// A graded quotient of an exterior or free associative algebra by
/// homogeneous relations of degree ≥ 2. All generators sit in degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub flavor: Flavor,
    pub num_gens: usize,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    /// An exterior presentation; relations are normalized (sorted monomials,
    /// integer-primitive coefficients, positive leading coefficient) and
    /// checked for homogeneity of degree ≥ 2.
    pub fn exterior(num_gens: usize, relations: Vec<ExtPoly>) -> Result<Self> {
        let relations = relations
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let p = p.normalize();
                check_degree(p.homogeneous_degree())?;
                Ok(Relation::Exterior(p))
            })
            .collect::<Result<_>>()?;
        Ok(AlgebraPresentation { flavor: Flavor::Exterior, num_gens, relations })
    }

    pub fn free(num_gens: usize, relations: Vec<FreePoly>) -> Result<Self> {
        let relations = relations
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                check_degree(p.homogeneous_degree())?;
                Ok(Relation::Free(p.monic()))
            })
            .collect::<Result<_>>()?;
        Ok(AlgebraPresentation { flavor: Flavor::Free, num_gens, relations })
    }

    pub fn exterior_relations(&self) -> impl Iterator<Item = &ExtPoly> {
        self.relations.iter().map(|r| r.as_exterior())
    }

    pub fn free_relations(&self) -> impl Iterator<Item = &FreePoly> {
        self.relations.iter().map(|r| r.as_free())
    }

    /// Parse the shared text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, message: "empty presentation file".into() })?;
        let mut parts = header.split_whitespace();
        let flavor = match parts.next() {
            Some("exterior") => Flavor::Exterior,
            Some("free") => Flavor::Free,
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected `exterior <n>` or `free <n>`, got {other:?}"),
                })
            }
        };
        let num_gens: usize = parts
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::Parse { line: lineno, message: "missing generator count".into() })?;
        let mut ext_rels = Vec::new();
        let mut free_rels = Vec::new();
        for (lineno, line) in lines {
            match flavor {
                Flavor::Exterior => ext_rels.push(parse_ext_relation(line, lineno, num_gens)?),
                Flavor::Free => free_rels.push(parse_free_relation(line, lineno, num_gens)?),
            }
        }
        match flavor {
            Flavor::Exterior => Self::exterior(num_gens, ext_rels),
            Flavor::Free => Self::free(num_gens, free_rels),
        }
    }
}

fn check_degree(degree: Option<usize>) -> Result<()> {
    match degree {
        Some(d) if d >= 2 => Ok(()),
        Some(d) => Err(Error::Invalid(format!("relation of degree {d} < 2"))),
        None => Err(Error::Invalid("non-homogeneous relation".into())),
    }
}

fn parse_scalar(word: &str, line: usize) -> Result<Scalar> {
    let parse_int = |s: &str| -> Result<BigInt> {
        BigInt::from_str(s)
            .map_err(|_| Error::Parse { line, message: format!("bad coefficient `{word}`") })
    };
    match word.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse { line, message: format!("zero denominator in `{word}`") });
            }
            Ok(Scalar::new(parse_int(n)?, den))
        }
        None => Ok(Scalar::from_integer(parse_int(word)?)),
    }
}

fn parse_index(factor: &str, prefix: char, line: usize, num_gens: usize) -> Result<usize> {
    let err = || Error::Parse { line, message: format!("bad monomial factor `{factor}`") };
    let rest = factor.strip_prefix(prefix).ok_or_else(err)?;
    let idx: usize = rest.parse().map_err(|_| err())?;
    if idx == 0 || idx > num_gens {
        return Err(Error::Parse {
            line,
            message: format!("generator index {idx} out of range 1..={num_gens}"),
        });
    }
    Ok(idx - 1)
}

fn parse_ext_relation(line_text: &str, line: usize, num_gens: usize) -> Result<ExtPoly> {
    let mut poly = ExtPoly::zero();
    for (coef, mono) in coef_monomial_pairs(line_text, line)? {
        let coef = parse_scalar(coef, line)?;
        let mut term = ExtPoly::monomial(ExtMonomial::ONE, coef);
        for factor in mono.split('*') {
            let idx = parse_index(factor, 'x', line, num_gens)?;
            term = term.mul(&ExtPoly::generator(idx));
        }
        poly = poly.add(&term);
    }
    Ok(poly)
}

fn parse_free_relation(line_text: &str, line: usize, num_gens: usize) -> Result<FreePoly> {
    let mut poly = FreePoly::zero();
    for (coef, mono) in coef_monomial_pairs(line_text, line)? {
        let coef = parse_scalar(coef, line)?;
        let mut word = Word::one();
        for factor in mono.split('.') {
            let idx = parse_index(factor, 'X', line, num_gens)?;
            word = word.concat(&Word::generator(idx));
        }
        poly.add_term(word, coef);
    }
    Ok(poly)
}

fn coef_monomial_pairs<'a>(line_text: &'a str, line: usize) -> Result<Vec<(&'a str, &'a str)>> {
    let words: Vec<&str> = line_text.split_whitespace().collect();
    if words.len() % 2 != 0 {
        return Err(Error::Parse {
            line,
            message: "relation must be a sequence of `coef monomial` pairs".into(),
        });
    }
    Ok(words.chunks(2).map(|c| (c[0], c[1])).collect())
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Exterior => writeln!(f, "exterior {}", self.num_gens)?,
            Flavor::Free => writeln!(f, "free {}", self.num_gens)?,
        }
        for rel in &self.relations {
            match rel {
                Relation::Exterior(p) => {
                    let parts: Vec<String> = p
                        .terms
                        .iter()
                        .map(|(m, c)| {
                            let mono = m
                                .indices()
                                .iter()
                                .map(|i| format!("x{}", i + 1))
                                .collect::<Vec<_>>()
                                .join("*");
                            format!("{c} {mono}")
                        })
                        .collect();
                    writeln!(f, "{}", parts.join(" "))?;
                }
                Relation::Free(p) => {
                    let parts: Vec<String> = p
                        .terms
                        .iter()
                        .map(|(k, c)| {
                            let mono = k
                                .0
                                 .0
                                .iter()
                                .map(|i| format!("X{}", i + 1))
                                .collect::<Vec<_>>()
                                .join(".");
                            format!("{c} {mono}")
                        })
                        .collect();
                    writeln!(f, "{}", parts.join(" "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::from_int;

    #[test]
    fn parse_exterior_round_trip() {
        let text = "exterior 5\n1 x2*x3\n1 x1*x5\n1 x1*x4 1 x2*x4\n1 x3*x4*x5\n";
        let p = AlgebraPresentation::parse(text).unwrap();
        assert_eq!(p.flavor, Flavor::Exterior);
        assert_eq!(p.num_gens, 5);
        assert_eq!(p.relations.len(), 4);
        assert_eq!(p.relations[2].degree(), Some(2));
        assert_eq!(p.relations[3].degree(), Some(3));
        let reparsed = AlgebraPresentation::parse(&p.to_string()).unwrap();
        assert_eq!(p, reparsed);
    }

    #[test]
    fn parse_free_with_commutators() {
        let text = "free 3\n1 X1.X2 -1 X2.X1 1 X1.X3 -1 X3.X1\n# comment\n1 X2.X2\n";
        let p = AlgebraPresentation::parse(text).unwrap();
        assert_eq!(p.flavor, Flavor::Free);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.relations[0].as_free().terms.len(), 4);
        let reparsed = AlgebraPresentation::parse(&p.to_string()).unwrap();
        assert_eq!(p, reparsed);
    }

    #[test]
    fn rational_coefficients_and_sign_ordering() {
        let text = "exterior 3\n-2 x1*x2 1/2 x2*x3\n";
        let p = AlgebraPresentation::parse(text).unwrap();
        // normalization clears denominators and makes the leading
        // coefficient positive
        let rel = p.relations[0].as_exterior();
        let coeffs: Vec<Scalar> = rel.terms.values().cloned().collect();
        assert_eq!(coeffs, vec![from_int(4), from_int(-1)]);
    }

    #[test]
    fn errors_are_located() {
        let bad = "exterior 2\n1 x1*x7\n";
        match AlgebraPresentation::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(AlgebraPresentation::parse("").is_err());
        assert!(AlgebraPresentation::parse("ring 3\n").is_err());
        // inhomogeneous relation rejected
        assert!(AlgebraPresentation::parse("exterior 3\n1 x1*x2 1 x3\n").is_err());
    }
}
