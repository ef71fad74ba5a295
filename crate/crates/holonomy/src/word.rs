//! Words and polynomials of the free associative algebra.

use crate::scalar::Scalar;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A word in the free algebra: the sequence of generator indices, order
/// significant. Degree = length.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position at which `pattern` occurs as a subword, if any.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() || pattern.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pattern.0.len()).position(|w| w == pattern.0.as_slice())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("X{}", i + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Degree-then-lexicographic order on words, with a configurable generator
/// precedence (a permutation of the generator indices). This is a total,
/// multiplicative, degree-compatible monomial order.
#[derive(Clone, Debug)]
pub struct DegLex {
    /// precedence[i] = rank of generator i; lower rank compares smaller.
    pub precedence: Vec<u8>,
}

impl DegLex {
    pub fn natural(num_gens: usize) -> Self {
        DegLex { precedence: (0..num_gens as u8).collect() }
    }

    pub fn with_permutation(perm: &[usize]) -> Self {
        let mut precedence = vec![0u8; perm.len()];
        for (rank, &g) in perm.iter().enumerate() {
            precedence[g] = rank as u8;
        }
        DegLex { precedence }
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0) {
                let o = self.precedence[*x as usize].cmp(&self.precedence[*y as usize]);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

/// Key wrapper so words sort in deglex order inside standard maps after the
/// generator precedence has been applied to the letters.
///
/// `FreePoly` stores words with letters already mapped through the
/// precedence, so plain (length, lex) comparison is the monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegLexKey(pub Word);

impl Ord for DegLexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.degree().cmp(&other.0.degree()).then_with(|| self.0 .0.cmp(&other.0 .0))
    }
}

impl PartialOrd for DegLexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A free polynomial: finitely many words with scalar coefficients.
/// Words here are stored in *raw* generator indices (no precedence applied);
/// ordering decisions are made by the Groebner engine.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreePoly {
    pub terms: BTreeMap<DegLexKey, Scalar>,
}

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = FreePoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = DegLexKey(w);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &FreePoly) {
        for (k, c) in &other.terms {
            self.add_term(k.0.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero();
        }
        FreePoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Leading (largest) term in deglex with natural precedence.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back().map(|(k, c)| (&k.0, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|k| k.0.degree())
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for k in self.terms.keys() {
            match deg {
                None => deg = Some(k.0.degree()),
                Some(d) if d != k.0.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// a * self * b for words a, b.
    pub fn sandwich(&self, a: &Word, b: &Word) -> FreePoly {
        let mut out = FreePoly::zero();
        for (k, c) in &self.terms {
            out.add_term(a.concat(&k.0).concat(b), c.clone());
        }
        out
    }

    pub fn monic(&self) -> FreePoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Scalar::new(c.denom().clone(), c.numer().clone());
                self.scale(&inv)
            }
        }
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, &Scalar)> =
            self.terms.iter().map(|(k, c)| (format!("{}", k.0), c)).collect();
        crate::exterior::format_terms(f, &terms)
    }
}

/// The commutator [X_i, X_j] = X_i X_j - X_j X_i.
pub fn commutator(i: usize, j: usize) -> FreePoly {
    let mut p = FreePoly::zero();
    p.add_term(Word(vec![i as u8, j as u8]), crate::scalar::one());
    p.add_term(Word(vec![j as u8, i as u8]), crate::scalar::from_int(-1));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_order() {
        let ord = DegLex::natural(3);
        let xy = Word(vec![0, 1]);
        let yx = Word(vec![1, 0]);
        let x = Word(vec![0]);
        assert_eq!(ord.cmp(&x, &xy), Ordering::Less);
        assert_eq!(ord.cmp(&xy, &yx), Ordering::Less);
        assert_eq!(ord.cmp(&yx, &yx), Ordering::Equal);
    }

    #[test]
    fn leading_term() {
        let p = commutator(0, 1);
        let (w, c) = p.leading().unwrap();
        assert_eq!(w, &Word(vec![1, 0]));
        assert_eq!(c, &crate::scalar::from_int(-1));
    }

    #[test]
    fn find_subword() {
        let w = Word(vec![0, 1, 2, 1]);
        assert_eq!(w.find(&Word(vec![1, 2])), Some(1));
        assert_eq!(w.find(&Word(vec![2, 0])), None);
    }
}
