//! Quadratic duality: the quadratic part of a presentation, the Koszul dual
//! R^! (the enveloping algebra of the holonomy Lie algebra), and the
//! conversion between Hilbert series of enveloping algebras and
//! lower-central-series ranks.

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::presentation::{AlgebraPresentation, Flavor, Relation};
use crate::series::{one_minus_tn, Series1};
use crate::word::FreePoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Relations of a presentation split by degree.
pub struct QuadraticSplit {
    pub quadratic: Vec<Relation>,
    pub higher: Vec<Relation>,
}

impl QuadraticSplit {
    pub fn is_quadratic(&self) -> bool {
        self.higher.is_empty()
    }
}

pub fn quadratic_part(p: &AlgebraPresentation) -> QuadraticSplit {
    let (quadratic, higher) =
        p.relations.iter().cloned().partition(|r| r.degree() == Some(2));
    QuadraticSplit { quadratic, higher }
}

/// The Koszul dual of (the quadratic closure of) an exterior presentation:
/// the free algebra on dual generators X₁..X_n modulo the annihilator of the
/// quadratic relation space under the pairing
/// ⟨X_iX_j, x_k x_l⟩ = δ_ik δ_jl − δ_il δ_jk.
///
/// Because the exterior relation space sits inside the antisymmetric part,
/// the annihilator is spanned by combinations of commutators [X_i, X_j]
/// whose coefficient vectors (over the basis {x_i x_j : i < j}) are
/// orthogonal to every quadratic relation. When R is not quadratic this is
/// by definition the dual of its quadratic part — the subalgebra of the
/// Ext-algebra generated in degree one.
pub fn koszul_dual(p: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    assert_eq!(p.flavor, Flavor::Exterior, "duality is taken on exterior presentations");
    let n = p.num_gens;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let pair_pos = |i: usize, j: usize| -> usize {
        // position of (i, j), i < j, in the (j, i)-nested order above
        j * (j - 1) / 2 + i
    };
    let quad = quadratic_part(p).quadratic;
    let mut m = SparseMatrix::new(quad.len(), pairs.len());
    for (row, rel) in quad.iter().enumerate() {
        for (mono, c) in &rel.as_exterior().terms {
            let idx = mono.indices();
            m.push(row, pair_pos(idx[0], idx[1]), c.clone());
        }
    }
    let (_, kernel) = m.rank_nullspace();
    let rels = kernel
        .into_iter()
        .map(|v| {
            let mut poly = FreePoly::zero();
            for (col, c) in v {
                let (i, j) = pairs[col];
                poly.add_assign(&crate::word::commutator(i, j).scale(&c));
            }
            poly
        })
        .collect();
    AlgebraPresentation::free(n, rels)
}

/// Lower-central-series ranks φ₁..φ_N extracted from the Hilbert series of
/// an enveloping algebra via 1/a(t) = ∏_{n≥1} (1 − tⁿ)^{φ_n}.
pub fn lcs_ranks_from_series(a: &Series1, n_max: usize) -> Result<Vec<BigInt>> {
    assert!(a.order() >= n_max, "series truncated below the requested rank count");
    if a.coeff(0) != &BigInt::from(1) {
        return Err(Error::Invalid("enveloping-algebra series must start with 1".into()));
    }
    // Peel factors off Q = 1/a: before step n, Q = ∏_{m≥n}(1−t^m)^{φ_m},
    // so φ_n = −[tⁿ] Q.
    let mut q = a.inverse()?;
    let mut ranks = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let phi = -q.coeff(n).clone();
        if phi.is_negative() {
            return Err(Error::NonIntegralRank { degree: n, value: phi.to_string() });
        }
        if !phi.is_zero() {
            // divide out (1 − tⁿ)^{φ_n}; exponents stay desk-scale
            let inv_factor = one_minus_tn(n, a.order()).inverse()?;
            let mut e = phi.clone();
            while e.is_positive() {
                q = q.mul(&inv_factor);
                e -= 1;
            }
        }
        ranks.push(phi);
    }
    Ok(ranks)
}

/// Inverse direction: the Hilbert series a(t) with
/// 1/a(t) = ∏ (1 − tⁿ)^{φ_n}, truncated at `order`.
pub fn series_from_lcs_ranks(ranks: &[BigInt], order: usize) -> Result<Series1> {
    let mut prod = Series1::one(order);
    for (idx, phi) in ranks.iter().enumerate() {
        let n = idx + 1;
        if n > order || phi.is_zero() {
            continue;
        }
        if phi.is_negative() {
            return Err(Error::Invalid(format!("negative rank {phi} at degree {n}")));
        }
        let factor = one_minus_tn(n, order);
        let mut e = phi.clone();
        while e.is_positive() {
            prod = prod.mul(&factor);
            e -= 1;
        }
    }
    prod.inverse()
}
