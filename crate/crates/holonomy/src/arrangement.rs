//! Hyperplane arrangements over the rationals: matroid circuits, the
//! Orlik–Solomon presentation, deconing into R ⊗ E(z), and Hilbert series of
//! exterior quotients.

use crate::error::{Error, Result};
use crate::exterior::{monomials, ExtMonomial, ExtPoly};
use crate::graph::Graph;
use crate::linalg::{Eliminator, SparseMatrix, SparseVec};
use crate::presentation::{AlgebraPresentation, Flavor};
use crate::scalar::Scalar;
use crate::series::Series1;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

/// A central arrangement: rational linear forms in C^dim, one per
/// hyperplane. No zero forms, no two proportional forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    pub dim: usize,
    pub forms: Vec<Vec<Scalar>>,
}

/// A minimal linearly dependent set of forms, with the (projectively
/// unique) dependency coefficients aligned with `indices`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub indices: Vec<usize>,
    pub coeffs: Vec<Scalar>,
}

/// An Orlik–Solomon algebra split as R ⊗ E(z)^{split_factors}.
#[derive(Clone, Debug, PartialEq)]
pub struct DeconedAlgebra {
    pub algebra: AlgebraPresentation,
    pub split_factors: usize,
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<Vec<Scalar>>) -> Result<Self> {
        for (a, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::Invalid(format!("form {a} has {} coefficients, expected {dim}", f.len())));
            }
            if f.iter().all(|c| c.is_zero()) {
                return Err(Error::Invalid(format!("form {a} is zero")));
            }
            for (b, g) in forms.iter().enumerate().take(a) {
                if proportional(f, g) {
                    return Err(Error::Invalid(format!("forms {b} and {a} define the same hyperplane")));
                }
            }
        }
        Ok(Arrangement { dim, forms })
    }

    pub fn size(&self) -> usize {
        self.forms.len()
    }

    /// Rank of the form configuration.
    pub fn rank(&self) -> usize {
        let mut m = SparseMatrix::new(self.dim, self.forms.len());
        for (j, f) in self.forms.iter().enumerate() {
            for (i, c) in f.iter().enumerate() {
                m.push(i, j, c.clone());
            }
        }
        m.rank()
    }

    /// Arrangement text format: first line the ambient dimension, then one
    /// form per line as whitespace-separated rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lineno, first) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, message: "empty arrangement file".into() })?;
        let dim: usize = first
            .parse()
            .map_err(|_| Error::Parse { line: lineno, message: "first line must be the ambient dimension".into() })?;
        let mut forms = Vec::new();
        for (lineno, line) in lines {
            let row: Vec<Scalar> = line
                .split_whitespace()
                .map(|w| parse_rational(w).ok_or_else(|| Error::Parse { line: lineno, message: format!("bad coefficient `{w}`") }))
                .collect::<Result<_>>()?;
            forms.push(row);
        }
        Self::new(dim, forms).map_err(|e| match e {
            Error::Invalid(message) => Error::Parse { line: 0, message },
            other => other,
        })
    }
}

fn parse_rational(w: &str) -> Option<Scalar> {
    use std::str::FromStr;
    match w.split_once('/') {
        Some((n, d)) => {
            let den = BigInt::from_str(d).ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Scalar::new(BigInt::from_str(n).ok()?, den))
        }
        None => Some(Scalar::from_integer(BigInt::from_str(w).ok()?)),
    }
}

fn proportional(f: &[Scalar], g: &[Scalar]) -> bool {
    let mut ratio: Option<Scalar> = None;
    for (a, b) in f.iter().zip(g) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = a / b;
                match &ratio {
                    None => ratio = Some(r),
                    Some(s) if *s == r => {}
                    Some(_) => return false,
                }
            }
            _ => return false,
        }
    }
    true
}

/// All circuits of size ≤ max_size of the linear matroid of the forms, by
/// exact rank computations with superset pruning.
pub fn circuits(arr: &Arrangement, max_size: usize) -> Vec<Circuit> {
    let t = arr.size();
    let mut found: Vec<Circuit> = Vec::new();
    for k in 2..=max_size.min(t) {
        for subset in (0..t).combinations(k) {
            if found.iter().any(|c| c.indices.iter().all(|i| subset.contains(i))) {
                continue;
            }
            // columns = the chosen forms; a one-dimensional kernel means the
            // subset is dependent, and minimality follows from pruning
            let mut m = SparseMatrix::new(arr.dim, k);
            for (col, &idx) in subset.iter().enumerate() {
                for (row, c) in arr.forms[idx].iter().enumerate() {
                    m.push(row, col, c.clone());
                }
            }
            let (_, kernel) = m.rank_nullspace();
            if kernel.is_empty() {
                continue;
            }
            debug_assert_eq!(kernel.len(), 1, "pruned subsets have nullity <= 1");
            let mut coeffs = vec![Scalar::zero(); k];
            for (col, v) in &kernel[0] {
                coeffs[*col] = v.clone();
            }
            found.push(Circuit { indices: subset, coeffs });
        }
    }
    found
}

/// Circuits up to the default bound rank + 1 (no larger circuit exists).
pub fn all_circuits(arr: &Arrangement) -> Vec<Circuit> {
    circuits(arr, arr.rank() + 1)
}

/// The boundary relation ∂e_C = Σ_j (−1)^{j−1} e_{i₁}…ê_{i_j}…e_{i_k}.
pub fn circuit_relation(c: &Circuit) -> ExtPoly {
    let k = c.indices.len();
    let mut p = ExtPoly::zero();
    for j in 0..k {
        let rest: Vec<usize> = c.indices.iter().enumerate().filter(|&(a, _)| a != j).map(|(_, &i)| i).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        p.add_term(ExtMonomial::from_indices(&rest), crate::scalar::from_int(sign));
    }
    p
}

/// The Orlik–Solomon presentation: exterior algebra on e₁..e_t modulo one
/// boundary relation per circuit. Redundant relations are kept; downstream
/// linear algebra is span-based.
pub fn os_ideal(arr: &Arrangement) -> Result<AlgebraPresentation> {
    let rels = all_circuits(arr).iter().map(circuit_relation).collect();
    AlgebraPresentation::exterior(arr.size(), rels)
}

/// Rewrite an OS presentation in the variables x_i = e_i − e_pivot; the
/// boundary relations never involve the pivot afterwards, so the algebra
/// splits off one exterior factor E(z).
pub fn decone(os: &AlgebraPresentation, pivot: usize) -> Result<DeconedAlgebra> {
    assert_eq!(os.flavor, Flavor::Exterior);
    assert!(pivot < os.num_gens, "pivot out of range");
    let n = os.num_gens;
    // e_i ↦ x_i + z for i ≠ pivot, e_pivot ↦ z; keep z as the pivot slot and
    // check it vanishes from every rewritten relation.
    let subst: Vec<ExtPoly> = (0..n)
        .map(|i| {
            if i == pivot {
                ExtPoly::generator(pivot)
            } else {
                ExtPoly::generator(i).add(&ExtPoly::generator(pivot))
            }
        })
        .collect();
    let mut new_rels = Vec::new();
    for rel in os.exterior_relations() {
        let mut image = ExtPoly::zero();
        for (m, c) in &rel.terms {
            let mut term = ExtPoly::monomial(ExtMonomial::ONE, c.clone());
            for i in m.indices() {
                term = term.mul(&subst[i]);
            }
            image = image.add(&term);
        }
        if image.terms.keys().any(|m| m.contains(pivot)) {
            return Err(Error::PivotNotEliminable(pivot, rel.to_string()));
        }
        // relabel generators > pivot down by one
        let mut relabeled = ExtPoly::zero();
        for (m, c) in &image.terms {
            let idx: Vec<usize> =
                m.indices().into_iter().map(|i| if i > pivot { i - 1 } else { i }).collect();
            relabeled.add_term(ExtMonomial::from_indices(&idx), c.clone());
        }
        new_rels.push(relabeled);
    }
    Ok(DeconedAlgebra {
        algebra: AlgebraPresentation::exterior(n - 1, new_rels)?,
        split_factors: 1,
    })
}

/// Coefficient vector of an exterior polynomial over the degree-d monomial
/// basis (positions assigned by `monomials(n, d)` order).
fn coeff_vec(p: &ExtPoly, basis_pos: &std::collections::HashMap<ExtMonomial, usize>) -> SparseVec {
    let items: Vec<(usize, Scalar)> =
        p.terms.iter().map(|(m, c)| (basis_pos[m], c.clone())).collect();
    SparseVec::from_scalars(&items)
}

/// Degree-d span of the two-sided ideal of an exterior presentation, as an
/// eliminator over the degree-d monomial basis.
pub fn ideal_span(p: &AlgebraPresentation, d: usize) -> Eliminator {
    assert_eq!(p.flavor, Flavor::Exterior);
    let basis = monomials(p.num_gens, d);
    let pos: std::collections::HashMap<ExtMonomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut elim = Eliminator::new();
    for rel in p.exterior_relations() {
        let dr = rel.homogeneous_degree().unwrap();
        if dr > d {
            continue;
        }
        for m in monomials(p.num_gens, d - dr) {
            let prod = rel.mul(&ExtPoly::monomial(m, crate::scalar::one()));
            if !prod.is_zero() {
                elim.insert(coeff_vec(&prod, &pos));
            }
        }
    }
    elim
}

/// Hilbert series of an exterior quotient through `max_degree`: monomial
/// count minus the rank of the degreewise ideal span.
pub fn hilbert_series(p: &AlgebraPresentation, max_degree: usize) -> Series1 {
    assert_eq!(p.flavor, Flavor::Exterior, "free-flavor Hilbert series comes from the Groebner engine");
    let mut s = Series1::zero(max_degree);
    for d in 0..=max_degree.min(p.num_gens) {
        let total = monomials(p.num_gens, d).len();
        s.coeffs[d] = BigInt::from(total - ideal_span(p, d).rank());
    }
    s
}

/// The graphic arrangement of a simple graph: x_i − x_j per edge (i, j).
pub fn graphic_arrangement(g: &Graph) -> Result<Arrangement> {
    let forms = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let mut f = vec![Scalar::zero(); g.n];
            f[i] = crate::scalar::one();
            f[j] = crate::scalar::from_int(-1);
            f
        })
        .collect();
    Arrangement::new(g.n, forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::scalar::from_int;

    fn arr(dim: usize, rows: &[&[i64]]) -> Arrangement {
        Arrangement::new(dim, rows.iter().map(|r| r.iter().map(|&v| from_int(v)).collect()).collect()).unwrap()
    }

    /// The braid-like flagship arrangement {x, y, z, x+y, x+z, y+z}.
    fn flagship() -> Arrangement {
        arr(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    }

    /// Brute-force circuit oracle: minimal dependent subsets by exhaustive
    /// rank computation with a dense elimination.
    fn circuits_oracle(a: &Arrangement, max_size: usize) -> Vec<Vec<usize>> {
        let t = a.size();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for k in 2..=max_size.min(t) {
            for subset in (0..t).combinations(k) {
                let mut m = SparseMatrix::new(a.dim, k);
                for (col, &idx) in subset.iter().enumerate() {
                    for (row, c) in a.forms[idx].iter().enumerate() {
                        m.push(row, col, c.clone());
                    }
                }
                let dependent = m.rank() < k;
                let minimal = dependent
                    && !found.iter().any(|c| c.iter().all(|i| subset.contains(i)));
                if minimal {
                    found.push(subset);
                }
            }
        }
        found
    }

    #[test]
    fn triangle_circuit_and_relation() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let cs = all_circuits(&a);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].indices, vec![0, 1, 2]);
        let rel = circuit_relation(&cs[0]).normalize();
        // ∂e_{123} = e₂e₃ − e₁e₃ + e₁e₂
        let mut expected = ExtPoly::zero();
        expected.add_term(ExtMonomial::from_indices(&[1, 2]), from_int(1));
        expected.add_term(ExtMonomial::from_indices(&[0, 2]), from_int(-1));
        expected.add_term(ExtMonomial::from_indices(&[0, 1]), from_int(1));
        assert_eq!(rel, expected.normalize());
    }

    #[test]
    fn flagship_circuits_match_oracle() {
        let a = flagship();
        let got: Vec<Vec<usize>> = all_circuits(&a).into_iter().map(|c| c.indices).collect();
        let expected = circuits_oracle(&a, a.rank() + 1);
        assert_eq!(got, expected);
        // the three quadratic relation sources are present
        for c in [[0, 1, 3], [0, 2, 4], [1, 2, 5]] {
            assert!(got.contains(&c.to_vec()));
        }
        // the size-4 circuit through {e3, e4, e5, e6} is present
        assert!(got.contains(&vec![2, 3, 4, 5]));
    }

    #[test]
    fn circuit_coefficients_are_dependencies() {
        for c in all_circuits(&flagship()) {
            let a = flagship();
            for row in 0..a.dim {
                let mut acc = Scalar::zero();
                for (idx, coef) in c.indices.iter().zip(&c.coeffs) {
                    acc += &a.forms[*idx][row] * coef;
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn flagship_decone_matches_published_presentation() {
        let os = os_ideal(&flagship()).unwrap();
        let r = decone(&os, 5).unwrap();
        assert_eq!(r.algebra.num_gens, 5);
        assert_eq!(r.split_factors, 1);
        // the relation span must equal that of the published list
        // {x₂x₃, x₁x₃−x₁x₅+x₃x₅, x₁x₂−x₁x₄+x₂x₄, x₃x₄x₅} degreewise
        let published = AlgebraPresentation::parse(
            "exterior 5\n1 x2*x3\n1 x1*x3 -1 x1*x5 1 x3*x5\n1 x1*x2 -1 x1*x4 1 x2*x4\n1 x3*x4*x5\n",
        )
        .unwrap();
        for d in 2..=3 {
            let ours = ideal_span(&r.algebra, d);
            let theirs = ideal_span(&published, d);
            assert_eq!(ours.rank(), theirs.rank(), "degree {d}");
            let mut merged = ours.clone();
            for row in theirs.rows() {
                merged.insert(row.clone());
            }
            assert_eq!(merged.rank(), ours.rank(), "degree {d} spans differ");
        }
    }

    #[test]
    fn flagship_hilbert_series() {
        let os = os_ideal(&flagship()).unwrap();
        let r = decone(&os, 5).unwrap();
        let h = hilbert_series(&r.algebra, 5);
        assert_eq!(h, Series1::from_ints(&[1, 5, 7], 5));
        // deconing: OS = (1 + z) · R
        let os_h = hilbert_series(&os, 6);
        let lifted = Series1::from_ints(&[1, 1], 6).mul(&Series1::from_bigints(&h.coeffs, 6));
        assert_eq!(os_h, lifted);
    }

    #[test]
    fn full_exterior_algebra_hilbert() {
        let e4 = AlgebraPresentation::exterior(4, vec![]).unwrap();
        assert_eq!(hilbert_series(&e4, 5), Series1::from_ints(&[1, 4, 6, 4, 1], 5));
    }

    #[test]
    fn single_hyperplane_decones_to_scalars() {
        let a = arr(1, &[&[1]]);
        let os = os_ideal(&a).unwrap();
        assert!(os.relations.is_empty());
        let r = decone(&os, 0).unwrap();
        assert_eq!(r.algebra.num_gens, 0);
        assert_eq!(hilbert_series(&r.algebra, 3), Series1::from_ints(&[1], 3));
    }

    #[test]
    fn graphic_arrangement_forms() {
        let square = Graph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let a = graphic_arrangement(&square).unwrap();
        assert_eq!(a.size(), 4);
        assert_eq!(a.forms[0], vec![from_int(1), from_int(0), from_int(-1), from_int(0)]);
        // one circuit: the 4-cycle itself
        let cs = all_circuits(&a);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn parse_arrangement_text() {
        let text = "3\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n";
        let a = Arrangement::parse(text).unwrap();
        assert_eq!(a, flagship());
        assert!(Arrangement::parse("2\n1 0\n2 0\n").is_err()); // proportional
        assert!(Arrangement::parse("2\n0 0\n").is_err()); // zero form
        assert!(Arrangement::parse("").is_err());
    }
}
