//! Exterior monomials and polynomials with the standard sign convention.
//!
//! A monomial is stored as a bit set of generator indices (ascending normal
//! form); the sign of a product is the parity of the merge permutation.

use crate::scalar::Scalar;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A square-free exterior monomial over at most 64 generators, stored as a
/// bit set. Bit `i` set means generator `x_{i}` occurs (0-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtMonomial(pub u64);

impl ExtMonomial {
    pub const ONE: ExtMonomial = ExtMonomial(0);

    pub fn generator(i: usize) -> Self {
        assert!(i < 64);
        ExtMonomial(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < 64);
            assert!(bits & (1 << i) == 0, "repeated index in exterior monomial");
            bits |= 1 << i;
        }
        ExtMonomial(bits)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Product of two monomials: `None` if they share an index, otherwise
    /// the merged monomial and the sign of the sorting permutation.
    pub fn mul(&self, other: &ExtMonomial) -> Option<(ExtMonomial, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Sign = (-1)^t where t = number of pairs (a, b), a in self, b in
        // other, with a > b: each such pair is one transposition in the merge.
        let mut transpositions = 0u32;
        for b in other.indices() {
            // indices of self strictly greater than b
            let higher = self.0 >> (b + 1);
            transpositions += if b + 1 >= 64 { 0 } else { higher.count_ones() };
        }
        let sign = if transpositions % 2 == 0 { 1 } else { -1 };
        Some((ExtMonomial(self.0 | other.0), sign))
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// All degree-`d` exterior monomials over `n` generators, in ascending
/// bit-set order.
pub fn monomials(n: usize, d: usize) -> Vec<ExtMonomial> {
    let mut out = Vec::new();
    let mut idx = Vec::new();
    fn rec(n: usize, d: usize, start: usize, idx: &mut Vec<usize>, out: &mut Vec<ExtMonomial>) {
        if idx.len() == d {
            out.push(ExtMonomial::from_indices(idx));
            return;
        }
        for i in start..n {
            idx.push(i);
            rec(n, d, i + 1, idx, out);
            idx.pop();
        }
    }
    rec(n, d, 0, &mut idx, &mut out);
    out.sort();
    out
}

/// A homogeneous or inhomogeneous exterior polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtPoly {
    pub terms: BTreeMap<ExtMonomial, Scalar>,
}

impl ExtPoly {
    pub fn zero() -> Self {
        ExtPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(m: ExtMonomial, c: Scalar) -> Self {
        let mut p = ExtPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(ExtMonomial::generator(i), crate::scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: ExtMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ExtPoly) -> ExtPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExtPoly {
        if c.is_zero() {
            return ExtPoly::zero();
        }
        ExtPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul(&self, other: &ExtPoly) -> ExtPoly {
        let mut out = ExtPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb) {
                    let c = ca * cb * crate::scalar::from_int(sign as i64);
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// Degree if homogeneous, None for 0 or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// Normal form: scale so the leading (smallest bit-set) coefficient is
    /// positive and the coefficients are coprime integers.
    pub fn normalize(&self) -> ExtPoly {
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = crate::scalar::denominator_lcm(self.terms.values());
        let mut p = self.scale(&Scalar::from_integer(lcm));
        let mut g = num_bigint::BigInt::zero();
        for c in p.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
        }
        if !g.is_zero() {
            p = p.scale(&Scalar::new(num_bigint::BigInt::from(1), g));
        }
        let leading_negative = p.terms.values().next().map(|c| c.is_negative()).unwrap_or(false);
        if leading_negative {
            p = p.scale(&crate::scalar::from_int(-1));
        }
        p
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, &Scalar)> =
            self.terms.iter().map(|(m, c)| (format!("{m}"), c)).collect();
        format_terms(f, &terms)
    }
}

/// Shared term formatter for both polynomial flavors:
/// `c0 m0 + c1 m1 - ...` with unit coefficients suppressed.
pub(crate) fn format_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, &Scalar)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (m, c)) in terms.iter().enumerate() {
        let s = format!("{}", c);
        if k == 0 {
            match s.as_str() {
                "1" => write!(f, "{}", m)?,
                "-1" => write!(f, "-{}", m)?,
                _ => write!(f, "{} {}", s, m)?,
            }
        } else if let Some(body) = s.strip_prefix('-') {
            if body == "1" {
                write!(f, " - {}", m)?;
            } else {
                write!(f, " - {} {}", body, m)?;
            }
        } else if s == "1" {
            write!(f, " + {}", m)?;
        } else {
            write!(f, " + {} {}", s, m)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar;

    #[test]
    fn product_examples() {
        let x1 = ExtMonomial::generator(0);
        let x2 = ExtMonomial::generator(1);
        let x3 = ExtMonomial::generator(2);
        // x1 * x2 -> +x1x2
        assert_eq!(x1.mul(&x2), Some((ExtMonomial::from_indices(&[0, 1]), 1)));
        // x2 * x1 -> -x1x2
        assert_eq!(x2.mul(&x1), Some((ExtMonomial::from_indices(&[0, 1]), -1)));
        // x1x3 * x3 -> 0
        let x13 = ExtMonomial::from_indices(&[0, 2]);
        assert_eq!(x13.mul(&x3), None);
    }

    #[test]
    fn associative_and_graded_anticommutative() {
        // exhaustive on monomial pairs / triples of degree <= 4 over 6 generators
        let mut all = Vec::new();
        for d in 0..=4 {
            all.extend(monomials(6, d));
        }
        let as_poly = |m: &ExtMonomial| ExtPoly::monomial(*m, scalar::one());
        for a in &all {
            for b in &all {
                let ab = as_poly(a).mul(&as_poly(b));
                let ba = as_poly(b).mul(&as_poly(a));
                let sign = if a.degree() * b.degree() % 2 == 0 { 1 } else { -1 };
                assert_eq!(ab, ba.scale(&scalar::from_int(sign)), "a={a} b={b}");
            }
        }
        // associativity on a subsample of triples (degree <= 2 factors)
        let small: Vec<_> = all.iter().filter(|m| m.degree() <= 2).collect();
        for a in &small {
            for b in &small {
                for c in &small {
                    let left = as_poly(a).mul(&as_poly(b)).mul(&as_poly(c));
                    let right = as_poly(a).mul(&as_poly(b).mul(&as_poly(c)));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(6, 3).len(), 20);
        assert_eq!(monomials(5, 0), vec![ExtMonomial::ONE]);
    }
}
