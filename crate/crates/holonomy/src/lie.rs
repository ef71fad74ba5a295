//! Graded Lie algebras presented by quadratic commutator relations, built
//! degree by degree as nilpotent quotients of the free Lie algebra.
//!
//! Each graded component gets an explicit basis: degree 1 is the generators,
//! and every basis element of degree d ≥ 2 is defined as `[x_i, u]` for some
//! generator `x_i` and basis element `u` of degree d−1. The stored data are
//! the structure constants for bracketing with generators; brackets of
//! higher-degree elements are recovered recursively through the Jacobi
//! identity. On top of this the module provides lower-central-series ranks,
//! center and ideal dimension profiles, and Chevalley–Eilenberg homology,
//! whose bigraded dimensions are the Tor groups of the enveloping algebra.

use crate::error::{Error, Result};
use crate::linalg::{Eliminator, SparseVec};
use crate::presentation::{AlgebraPresentation, Flavor};
use crate::scalar::Scalar;
use crate::series::Series1;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// A vector in one graded component, as (basis index, coefficient) pairs
/// sorted by index.
pub type Combo = Vec<(u32, Scalar)>;

fn combo_from_map(m: BTreeMap<u32, Scalar>) -> Combo {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn combo_add(acc: &mut BTreeMap<u32, Scalar>, idx: u32, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(idx).or_insert_with(crate::scalar::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&idx);
    }
}

/// A graded Lie algebra with known components in degrees 1..=max_degree.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub num_gens: usize,
    pub max_degree: usize,
    /// dims[d-1] = dim of the degree-d component.
    dims: Vec<usize>,
    /// defs[d-2][idx] = (i, u): the degree-d basis element is [x_i, u] with
    /// u a basis index in degree d−1.
    defs: Vec<Vec<(u8, u32)>>,
    /// action[d-1][i * dims[d-1] + u] = [x_i, u] expanded in the degree-d+1
    /// basis; available for d in 1..max_degree.
    action: Vec<Vec<Combo>>,
}

/// Result of quotienting a candidate space by a span of relation rows:
/// the surviving candidates index the quotient basis, and every eliminated
/// candidate carries its expression in that basis.
pub(crate) struct Quotient {
    pub(crate) surviving: Vec<u32>,
    class: HashMap<u32, Combo>,
}

impl Quotient {
    pub(crate) fn dim(&self) -> usize {
        self.surviving.len()
    }

    /// Image of a candidate in the quotient basis.
    pub(crate) fn class_of(&self, cand: u32) -> Combo {
        self.class.get(&cand).cloned().unwrap_or_default()
    }
}

pub(crate) fn quotient(mut rows: Vec<SparseVec>, num_cands: usize) -> Quotient {
    // fill-in heuristic: feed short rows first
    rows.sort_by_key(|r| r.entries.len());
    let mut elim = Eliminator::new();
    for r in rows {
        elim.insert(r);
    }
    let pivot_cols: Vec<u32> = elim.pivot_cols();
    let is_pivot: std::collections::HashSet<u32> = pivot_cols.iter().copied().collect();
    let surviving: Vec<u32> = (0..num_cands as u32).filter(|c| !is_pivot.contains(c)).collect();
    let position: HashMap<u32, u32> =
        surviving.iter().enumerate().map(|(p, &c)| (c, p as u32)).collect();
    let mut class: HashMap<u32, Combo> = HashMap::new();
    for (&c, &p) in &position {
        class.insert(c, vec![(p, crate::scalar::one())]);
    }
    // back-substitute pivot rows in decreasing column order so that every
    // eliminated candidate is expressed purely in surviving ones
    let pivot_rows: Vec<&SparseVec> = elim.rows().collect();
    for row in pivot_rows.into_iter().rev() {
        let (pcol, pcoef) = (row.entries[0].0, &row.entries[0].1);
        let pivot_scalar = Scalar::from_integer(pcoef.clone());
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, v) in &row.entries[1..] {
            let factor = -Scalar::from_integer(v.clone()) / &pivot_scalar;
            for (idx, coef) in &class[c] {
                combo_add(&mut acc, *idx, coef * &factor);
            }
        }
        class.insert(pcol, combo_from_map(acc));
    }
    Quotient { surviving, class }
}

/// Coefficients of a degree-2 commutator combination over the pairs (i, j)
/// with i < j, indexed by j(j−1)/2 + i. Rejects input that is not a genuine
/// Lie element (symmetric or diagonal leftovers).
fn commutator_coefficients(rel: &crate::word::FreePoly, n: usize) -> Result<Vec<(usize, Scalar)>> {
    let mut sym: BTreeMap<(u8, u8), Scalar> = BTreeMap::new();
    let mut anti: BTreeMap<(u8, u8), Scalar> = BTreeMap::new();
    for (k, c) in &rel.terms {
        let w = &k.0 .0;
        if w.len() != 2 {
            return Err(Error::Invalid("commutator relations must be quadratic".into()));
        }
        let (a, b) = (w[0], w[1]);
        if a == b {
            combo_add_pair(&mut sym, (a, a), c.clone());
            continue;
        }
        let half = c / crate::scalar::from_int(2);
        let (lo, hi) = (a.min(b), a.max(b));
        let sign = if a < b { half.clone() } else { -half.clone() };
        combo_add_pair(&mut anti, (lo, hi), sign);
        combo_add_pair(&mut sym, (lo, hi), half);
    }
    if sym.values().any(|c| !c.is_zero()) {
        return Err(Error::Invalid("relation is not a combination of commutators".into()));
    }
    let _ = n;
    Ok(anti
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| {
            (j as usize * (j as usize - 1) / 2 + i as usize, c * crate::scalar::from_int(2))
        })
        .collect())
}

fn combo_add_pair(acc: &mut BTreeMap<(u8, u8), Scalar>, key: (u8, u8), c: Scalar) {
    let slot = acc.entry(key).or_insert_with(crate::scalar::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

/// The graded Lie algebra presented by the commutator relations of a
/// free-flavor quadratic presentation, computed through `max_degree`.
///
/// Degree d is constructed as the span of `[x_i, u]` over the degree-(d−1)
/// basis, modulo the Jacobi relations `[x_i,[x_j,u]] − [x_j,[x_i,u]] =
/// [[x_i,x_j],u]`; degree 2 is the commutator pairs modulo the defining
/// relations. The enveloping algebra of the result is the quotient of the
/// free associative algebra by the same relations.
pub fn nilpotent_quotient(p: &AlgebraPresentation, max_degree: usize) -> Result<LieAlgebra> {
    assert_eq!(p.flavor, Flavor::Free, "commutator presentations live in the free algebra");
    assert!(max_degree >= 1);
    let n = p.num_gens;
    let mut dims = vec![n];
    let mut defs: Vec<Vec<(u8, u32)>> = Vec::new();
    let mut action: Vec<Vec<Combo>> = Vec::new();
    if max_degree == 1 {
        return Ok(LieAlgebra { num_gens: n, max_degree, dims, defs, action });
    }

    // degree 2: pairs (i, j) with i < j modulo the defining relations
    let num_pairs = n * (n - 1) / 2;
    let mut rows = Vec::new();
    for rel in p.free_relations() {
        if rel.homogeneous_degree() != Some(2) {
            return Err(Error::Invalid("commutator relations must be quadratic".into()));
        }
        let coeffs = commutator_coefficients(rel, n)?;
        rows.push(SparseVec::from_scalars(&coeffs));
    }
    let q2 = quotient(rows, num_pairs);
    dims.push(q2.dim());
    let mut defs2 = Vec::new();
    let mut pair_of = vec![(0u8, 0u8); num_pairs];
    for j in 0..n {
        for i in 0..j {
            pair_of[j * (j - 1) / 2 + i] = (i as u8, j as u8);
        }
    }
    for &c in &q2.surviving {
        let (i, j) = pair_of[c as usize];
        defs2.push((i, j as u32));
    }
    defs.push(defs2);
    let mut act1 = vec![Combo::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            act1[i * n + j] = match i.cmp(&j) {
                std::cmp::Ordering::Less => q2.class_of((j * (j - 1) / 2 + i) as u32),
                std::cmp::Ordering::Equal => Combo::new(),
                std::cmp::Ordering::Greater => {
                    negate(&q2.class_of((i * (i - 1) / 2 + j) as u32))
                }
            };
        }
    }
    action.push(act1);

    // higher degrees: candidates [x_i, u] over the degree-(d−1) basis,
    // modulo the Jacobi relations among generators and the antisymmetry of
    // the recursively defined top-degree brackets
    for d in 3..=max_degree {
        let phi_prev = dims[d - 2];
        let phi_prev2 = dims[d - 3];
        if phi_prev == 0 {
            dims.push(0);
            defs.push(Vec::new());
            action.push(Vec::new());
            continue;
        }
        let num_cands = n * phi_prev;
        let cand = |i: usize, u: u32| (i * phi_prev) as u32 + u;
        let mut rows = Vec::new();
        let mut known: HashMap<((usize, u32), (usize, u32)), Combo> = HashMap::new();
        let mut top: HashMap<(usize, u32, usize, u32), BTreeMap<u32, Scalar>> = HashMap::new();
        // generator-pair Jacobi: [x_i,[x_j,u]] − [x_j,[x_i,u]] = [[x_i,x_j],u]
        for i in 0..n {
            for j in (i + 1)..n {
                for u in 0..phi_prev2 as u32 {
                    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                    for (v, c) in &action[d - 3][j * phi_prev2 + u as usize] {
                        combo_add(&mut acc, cand(i, *v), c.clone());
                    }
                    for (v, c) in &action[d - 3][i * phi_prev2 + u as usize] {
                        combo_add(&mut acc, cand(j, *v), -c.clone());
                    }
                    for (w, a) in &action[0][i * n + j].clone() {
                        let t = top_bracket(
                            n, &dims, &defs, &action, d, 2, *w, d - 2, u, &mut known, &mut top,
                        );
                        for (v, c) in t {
                            combo_add(&mut acc, v, -(&c * a));
                        }
                    }
                    push_row(&mut rows, acc);
                }
            }
        }
        // antisymmetry of the split brackets: [b_e, b_f] + [b_f, b_e] = 0
        for e in 2..=d / 2 {
            let f = d - e;
            for a in 0..dims[e - 1] as u32 {
                let b_start = if e == f { a } else { 0 };
                for b in b_start..dims[f - 1] as u32 {
                    let mut acc = top_bracket(
                        n, &dims, &defs, &action, d, e, a, f, b, &mut known, &mut top,
                    );
                    if (e, a) != (f, b) {
                        let back = top_bracket(
                            n, &dims, &defs, &action, d, f, b, e, a, &mut known, &mut top,
                        );
                        for (v, c) in back {
                            combo_add(&mut acc, v, c);
                        }
                    }
                    push_row(&mut rows, acc);
                }
            }
        }
        let q = quotient(rows, num_cands);
        dims.push(q.dim());
        let mut defs_d = Vec::with_capacity(q.dim());
        for &c in &q.surviving {
            defs_d.push(((c as usize / phi_prev) as u8, c % phi_prev as u32));
        }
        defs.push(defs_d);
        let mut act = vec![Combo::new(); n * phi_prev];
        for (item, slot) in act.iter_mut().enumerate() {
            *slot = q.class_of(item as u32);
        }
        action.push(act);
    }
    Ok(LieAlgebra { num_gens: n, max_degree, dims, defs, action })
}

fn negate(c: &Combo) -> Combo {
    c.iter().map(|(i, v)| (*i, -v.clone())).collect()
}

fn push_row(rows: &mut Vec<SparseVec>, acc: BTreeMap<u32, Scalar>) {
    let combo = combo_from_map(acc);
    if !combo.is_empty() {
        let items: Vec<(usize, Scalar)> =
            combo.into_iter().map(|(c, v)| (c as usize, v)).collect();
        rows.push(SparseVec::from_scalars(&items));
    }
}

/// Bracket of two basis elements whose total degree is already completed,
/// by recursion on the left argument's definition:
/// `[[x_k, u], b] = [x_k, [u, b]] − [u, [x_k, b]]`.
fn known_bracket(
    num_gens: usize,
    dims: &[usize],
    defs: &[Vec<(u8, u32)>],
    action: &[Vec<Combo>],
    a: (usize, u32),
    b: (usize, u32),
    memo: &mut HashMap<((usize, u32), (usize, u32)), Combo>,
) -> Combo {
    let (da, ia) = a;
    let (db, ib) = b;
    if a == b {
        return Combo::new();
    }
    if a > b {
        return negate(&known_bracket(num_gens, dims, defs, action, b, a, memo));
    }
    if let Some(hit) = memo.get(&(a, b)) {
        return hit.clone();
    }
    let result = if da == 1 {
        action[db - 1][ia as usize * dims[db - 1] + ib as usize].clone()
    } else {
        let (k, u) = defs[da - 2][ia as usize];
        let k = k as usize;
        let inner = known_bracket(num_gens, dims, defs, action, (da - 1, u), b, memo);
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (v, c) in &inner {
            for (w, e) in &action[da - 2 + db][k * dims[da - 2 + db] + *v as usize] {
                combo_add(&mut acc, *w, e * c);
            }
        }
        let kb = action[db - 1][k * dims[db - 1] + ib as usize].clone();
        for (v, c) in &kb {
            for (w, e) in
                known_bracket(num_gens, dims, defs, action, (da - 1, u), (db + 1, *v), memo)
            {
                combo_add(&mut acc, w, &e * -c);
            }
        }
        combo_from_map(acc)
    };
    memo.insert((a, b), result.clone());
    result
}

/// Tentative bracket `[b_e, b_f]` of total degree d (the degree being
/// constructed), expressed in candidate coordinates i·dim(d−1)+u. Defined by
/// recursion on the right argument's definition (b_f = [x_z, u']):
/// `[w, [x_z, u']] = [[w, x_z], u'] + [x_z, [w, u']]`, with base case
/// `[w, x_z] = −[x_z, w]` landing directly in candidates. Evaluating through
/// the right side keeps the generator Jacobi rows from cancelling
/// tautologically against the definitions of the left side.
#[allow(clippy::too_many_arguments)]
fn top_bracket(
    num_gens: usize,
    dims: &[usize],
    defs: &[Vec<(u8, u32)>],
    action: &[Vec<Combo>],
    d: usize,
    e: usize,
    a: u32,
    f: usize,
    b: u32,
    known: &mut HashMap<((usize, u32), (usize, u32)), Combo>,
    memo: &mut HashMap<(usize, u32, usize, u32), BTreeMap<u32, Scalar>>,
) -> BTreeMap<u32, Scalar> {
    debug_assert_eq!(e + f, d);
    let phi_prev = dims[d - 2];
    if e == 1 {
        let mut out = BTreeMap::new();
        out.insert((a as usize * phi_prev) as u32 + b, crate::scalar::one());
        return out;
    }
    if f == 1 {
        // [b_a, x_b] = −[x_b, b_a]; the left side has degree d−1
        let mut out = BTreeMap::new();
        out.insert((b as usize * phi_prev) as u32 + a, -crate::scalar::one());
        return out;
    }
    if let Some(hit) = memo.get(&(e, a, f, b)) {
        return hit.clone();
    }
    let (z, u) = defs[f - 2][b as usize];
    let z = z as usize;
    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
    // [[b_a, x_z], u] with [b_a, x_z] = −[x_z, b_a] of degree e+1
    let za = action[e - 1][z * dims[e - 1] + a as usize].clone();
    for (v, c) in &za {
        let t = top_bracket(num_gens, dims, defs, action, d, e + 1, *v, f - 1, u, known, memo);
        for (w, cc) in t {
            combo_add(&mut acc, w, &cc * -c);
        }
    }
    // [x_z, [b_a, u]] with [b_a, u] of completed degree d−1
    let inner = known_bracket(num_gens, dims, defs, action, (e, a), (f - 1, u), known);
    for (v, c) in inner {
        combo_add(&mut acc, (z * phi_prev) as u32 + v, c);
    }
    memo.insert((e, a, f, b), acc.clone());
    acc
}

impl LieAlgebra {
    /// dim of the degree-d component (1-based degree).
    pub fn dim(&self, d: usize) -> usize {
        assert!(d >= 1 && d <= self.max_degree);
        self.dims[d - 1]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The lower-central-series ranks φ_1, …, φ_max as big integers.
    pub fn lcs_ranks(&self) -> Vec<BigInt> {
        self.dims.iter().map(|&d| BigInt::from(d)).collect()
    }

    /// Hilbert series of the universal enveloping algebra through `order`,
    /// via 1/U(t) = ∏ (1−t^d)^{dim g_d}.
    pub fn enveloping_series(&self, order: usize) -> Result<Series1> {
        if order > self.max_degree {
            return Err(Error::DegreeExceedsCompletion {
                degree: order,
                complete_to: self.max_degree,
            });
        }
        crate::dual::series_from_lcs_ranks(&self.lcs_ranks(), order)
    }

    /// `[x_i, u]` for a basis element u of degree d, in the degree-(d+1)
    /// basis.
    pub fn generator_action(&self, i: usize, d: usize, u: u32) -> &Combo {
        assert!(d >= 1 && d < self.max_degree);
        &self.action[d - 1][i * self.dims[d - 1] + u as usize]
    }

    /// Defining pair (i, u) of a degree-d basis element (d ≥ 2): the element
    /// is `[x_i, u]` with u in degree d−1.
    pub fn definition(&self, d: usize, idx: u32) -> (u8, u32) {
        assert!(d >= 2 && d <= self.max_degree);
        self.defs[d - 2][idx as usize]
    }

    /// Dimensions of the center in degrees 1..=max_degree−1 (the top degree
    /// is excluded because brackets out of it are not yet known).
    pub fn center_dims(&self) -> Vec<usize> {
        (1..self.max_degree)
            .map(|d| {
                let phi = self.dims[d - 1];
                if phi == 0 {
                    return 0;
                }
                // a column per basis element u, stacked over all generator
                // actions; kernel dim = phi − rank of the stack
                let rows = self.num_gens * self.dims[d];
                let mut mat = crate::linalg::SparseMatrix::new(rows, phi);
                for u in 0..phi {
                    for i in 0..self.num_gens {
                        for (v, c) in self.generator_action(i, d, u as u32) {
                            mat.push(i * self.dims[d] + *v as usize, u, c.clone());
                        }
                    }
                }
                phi - mat.rank()
            })
            .collect()
    }

    /// Dimensions, per degree, of the Lie ideal generated by the given
    /// homogeneous elements (degree, combo). Valid through max_degree−1;
    /// closure under bracketing with generators suffices because the
    /// generators generate.
    pub fn ideal_dims(&self, elements: &[(usize, Combo)]) -> Vec<usize> {
        let top = self.max_degree;
        let mut spans: Vec<Eliminator> = (0..=top).map(|_| Eliminator::new()).collect();
        let mut frontier: Vec<Vec<Combo>> = vec![Vec::new(); top + 1];
        for (d, combo) in elements {
            assert!(*d >= 1 && *d <= top);
            let items: Vec<(usize, Scalar)> =
                combo.iter().map(|(i, c)| (*i as usize, c.clone())).collect();
            let v = SparseVec::from_scalars(&items);
            if spans[*d].insert(v.clone()).is_some() {
                frontier[*d].push(combo.clone());
            }
        }
        for d in 1..top {
            let batch = std::mem::take(&mut frontier[d]);
            for combo in batch {
                for i in 0..self.num_gens {
                    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                    for (u, c) in &combo {
                        for (v, a) in self.generator_action(i, d, *u) {
                            combo_add(&mut acc, *v, a * c);
                        }
                    }
                    let image = combo_from_map(acc);
                    if image.is_empty() {
                        continue;
                    }
                    let items: Vec<(usize, Scalar)> =
                        image.iter().map(|(u, c)| (*u as usize, c.clone())).collect();
                    if spans[d + 1].insert(SparseVec::from_scalars(&items)).is_some() {
                        frontier[d + 1].push(image);
                    }
                }
            }
        }
        (1..=top).map(|d| spans[d].rank()).collect()
    }
}

/// Bracket evaluator with memoization over pairs of basis elements.
pub struct BracketTable<'a> {
    lie: &'a LieAlgebra,
    cache: HashMap<((usize, u32), (usize, u32)), Combo>,
}

impl<'a> BracketTable<'a> {
    pub fn new(lie: &'a LieAlgebra) -> Self {
        BracketTable { lie, cache: HashMap::new() }
    }

    /// `[a, b]` for basis elements a = (deg, idx), b = (deg, idx), expanded
    /// in the basis of degree deg(a)+deg(b). Requires the sum to be within
    /// max_degree.
    pub fn bracket(&mut self, a: (usize, u32), b: (usize, u32)) -> Combo {
        let (da, ia) = a;
        let (db, ib) = b;
        assert!(da + db <= self.lie.max_degree);
        if a == b {
            return Combo::new();
        }
        if a > b {
            return negate(&self.bracket(b, a));
        }
        if let Some(hit) = self.cache.get(&(a, b)) {
            return hit.clone();
        }
        let result = if da == 1 {
            self.lie.generator_action(ia as usize, db, ib).clone()
        } else {
            // a = [x_k, u]; Jacobi: [a, b] = [x_k, [u, b]] − [u, [x_k, b]]
            let (k, u) = self.lie.definition(da, ia);
            let k = k as usize;
            let inner = self.bracket((da - 1, u), b);
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (v, c) in &inner {
                for (w, e) in self.lie.generator_action(k, da - 1 + db, *v) {
                    combo_add(&mut acc, *w, e * c);
                }
            }
            let kb = self.lie.generator_action(k, db, ib).clone();
            for (v, c) in &kb {
                for (w, e) in self.bracket((da - 1, u), (db + 1, *v)) {
                    combo_add(&mut acc, w, &e * -c);
                }
            }
            combo_from_map(acc)
        };
        self.cache.insert((a, b), result.clone());
        result
    }

    /// Bilinear extension of the bracket to combos in fixed degrees.
    pub fn bracket_combos(&mut self, da: usize, a: &Combo, db: usize, b: &Combo) -> Combo {
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (i, ci) in a {
            for (j, cj) in b {
                for (w, e) in self.bracket((da, *i), (db, *j)) {
                    combo_add(&mut acc, w, &e * &(ci * cj));
                }
            }
        }
        combo_from_map(acc)
    }
}

/// Bigraded dimensions of the homology of the exterior-power complex of the
/// Lie algebra: entry (i, j) is dim Tor_{i,j} over the enveloping algebra.
/// Computed for homological degree i ≤ i_max and weight j ≤ j_max
/// (j_max must be within the computed range of the algebra).
pub fn ce_homology(
    lie: &LieAlgebra,
    i_max: usize,
    j_max: usize,
) -> Result<BTreeMap<(usize, usize), usize>> {
    if j_max > lie.max_degree {
        return Err(Error::DegreeExceedsCompletion { degree: j_max, complete_to: lie.max_degree });
    }
    let mut table = BracketTable::new(lie);
    // wedge bases per (i, j): strictly increasing sequences of (degree, idx)
    // whose degrees sum to j, extended one (largest) element at a time
    type Wedge = Vec<(usize, u32)>;
    let mut bases: Vec<Vec<Vec<Wedge>>> = vec![vec![Vec::new(); j_max + 1]; i_max + 2];
    bases[0][0].push(Vec::new());
    for i in 1..=i_max + 1 {
        for j in 1..=j_max {
            let mut out = Vec::new();
            for jp in 0..j {
                let d = j - jp;
                for w in &bases[i - 1][jp].clone() {
                    for idx in 0..lie.dims[d - 1] as u32 {
                        let elt = (d, idx);
                        if let Some(&last) = w.last() {
                            if elt <= last {
                                continue;
                            }
                        }
                        let mut nw = w.clone();
                        nw.push(elt);
                        out.push(nw);
                    }
                }
            }
            bases[i][j] = out;
        }
    }
    // differential ranks per (i, j)
    let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
    for i in 2..=i_max + 1 {
        for j in 1..=j_max {
            let source = &bases[i][j];
            let target = &bases[i - 1][j];
            if source.is_empty() || target.is_empty() {
                ranks.insert((i, j), 0);
                continue;
            }
            let index: HashMap<&Wedge, usize> =
                target.iter().enumerate().map(|(p, w)| (w, p)).collect();
            let mut elim = Eliminator::new();
            for w in source {
                let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                for p in 0..w.len() {
                    for q in (p + 1)..w.len() {
                        let br = table.bracket(w[p], w[q]);
                        if br.is_empty() {
                            continue;
                        }
                        let sign = if (p + q) % 2 == 1 { 1i64 } else { -1i64 };
                        let d_new = w[p].0 + w[q].0;
                        let rest: Vec<(usize, u32)> = w
                            .iter()
                            .enumerate()
                            .filter(|(t, _)| *t != p && *t != q)
                            .map(|(_, e)| *e)
                            .collect();
                        for (v, c) in &br {
                            let elt = (d_new, *v);
                            // insert into rest, tracking the permutation sign
                            let pos = rest.partition_point(|e| *e < elt);
                            if rest.get(pos) == Some(&elt) {
                                continue; // repeated factor wedges to zero
                            }
                            let mut nw = rest.clone();
                            nw.insert(pos, elt);
                            let perm_sign = if pos % 2 == 0 { 1i64 } else { -1i64 };
                            let col = index[&nw];
                            combo_add(
                                &mut acc,
                                col as u32,
                                c * crate::scalar::from_int(sign * perm_sign),
                            );
                        }
                    }
                }
                let combo = combo_from_map(acc);
                if !combo.is_empty() {
                    let items: Vec<(usize, Scalar)> =
                        combo.into_iter().map(|(c, v)| (c as usize, v)).collect();
                    elim.insert(SparseVec::from_scalars(&items));
                }
            }
            ranks.insert((i, j), elim.rank());
        }
    }
    let mut out = BTreeMap::new();
    out.insert((0, 0), 1);
    for i in 1..=i_max {
        for j in 1..=j_max {
            let dim = bases[i][j].len();
            let rk_out = if i >= 2 { ranks[&(i, j)] } else { 0 };
            let rk_in = ranks[&(i + 1, j)];
            let h = dim - rk_out - rk_in;
            if h > 0 {
                out.insert((i, j), h);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{koszul_dual, lcs_ranks_from_series};
    use crate::word::commutator;

    fn free_presentation(n: usize) -> AlgebraPresentation {
        AlgebraPresentation::free(n, Vec::new()).unwrap()
    }

    /// Witt formula: dim of the degree-d component of the free Lie algebra
    /// on g generators.
    fn witt(g: u64, d: u64) -> u64 {
        let moebius = |n: u64| -> i64 {
            let mut n = n;
            let mut mu = 1i64;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    mu = -mu;
                }
                p += 1;
            }
            if n > 1 {
                mu = -mu;
            }
            mu
        };
        let mut total = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                total += moebius(d / e) * (g as i64).pow(e as u32);
            }
        }
        (total / d as i64) as u64
    }

    #[test]
    fn free_lie_matches_witt() {
        for n in 2..=3usize {
            let lie = nilpotent_quotient(&free_presentation(n), 7).unwrap();
            for d in 1..=7 {
                assert_eq!(lie.dim(d) as u64, witt(n as u64, d as u64), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn abelian_lie_algebra() {
        let n = 4;
        let rels: Vec<_> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| commutator(i, j))).collect();
        let p = AlgebraPresentation::free(n, rels).unwrap();
        let lie = nilpotent_quotient(&p, 6).unwrap();
        assert_eq!(lie.dims(), &[4, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn heisenberg_structure() {
        // [x1, x3] = [x2, x3] = 0: degree 2 is spanned by [x1, x2] alone
        let p = AlgebraPresentation::free(3, vec![commutator(0, 2), commutator(1, 2)]).unwrap();
        let lie = nilpotent_quotient(&p, 4).unwrap();
        assert_eq!(lie.dim(2), 1);
        // the free 2-generator part keeps growing: degree 3 has [xi,[x1,x2]]
        // for i = 1, 2 only (bracketing with x3 is central... check)
        let mut t = BracketTable::new(&lie);
        let b12 = t.bracket((1, 0), (1, 1));
        assert_eq!(b12.len(), 1);
        let b3 = t.bracket((1, 2), (2, 0));
        assert!(b3.is_empty(), "x3 should be central: {b3:?}");
    }

    /// The nilpotent quotient and the noncommutative Gröbner engine must
    /// agree on enveloping-algebra dimensions.
    #[test]
    fn enveloping_series_matches_groebner() {
        let fixtures = [
            "exterior 4\n1 x2*x3\n1 x1*x4\n",
            "exterior 4\n1 x1*x2 -1 x3*x4\n1 x2*x3\n",
            "exterior 5\n1 x2*x3\n1 x1*x3 -1 x1*x5 1 x3*x5\n1 x1*x2 -1 x1*x4 1 x2*x4\n",
        ];
        for text in fixtures {
            let p = AlgebraPresentation::parse(text).unwrap();
            let dual = koszul_dual(&p).unwrap();
            let lie = nilpotent_quotient(&dual, 7).unwrap();
            let gb = crate::ncgb::presentation_basis(&dual, &crate::word::DegLex::natural(p.num_gens), 7);
            assert_eq!(
                lie.enveloping_series(7).unwrap(),
                gb.hilbert_function(7).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn graphic_rank_extraction_round_trip() {
        // 5-generator fixture: series → ranks → series must close
        let p = AlgebraPresentation::parse(
            "exterior 5\n1 x2*x3\n1 x1*x3 -1 x1*x5 1 x3*x5\n1 x1*x2 -1 x1*x4 1 x2*x4\n",
        )
        .unwrap();
        let dual = koszul_dual(&p).unwrap();
        let lie = nilpotent_quotient(&dual, 8).unwrap();
        let series = lie.enveloping_series(8).unwrap();
        let ranks = lcs_ranks_from_series(&series, 8).unwrap();
        assert_eq!(ranks, lie.lcs_ranks());
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let p = AlgebraPresentation::parse(
            "exterior 4\n1 x1*x2 -1 x3*x4\n1 x2*x3\n",
        )
        .unwrap();
        let dual = koszul_dual(&p).unwrap();
        let lie = nilpotent_quotient(&dual, 7).unwrap();
        let mut t = BracketTable::new(&lie);
        // all basis elements of degree ≤ 3
        let elements: Vec<(usize, u32)> = (1..=3usize)
            .flat_map(|d| (0..lie.dim(d) as u32).map(move |i| (d, i)))
            .collect();
        // antisymmetry across degrees
        for &a in &elements {
            for &b in &elements {
                if a.0 + b.0 > lie.max_degree {
                    continue;
                }
                assert_eq!(t.bracket(a, b), negate(&t.bracket(b, a)), "{a:?} {b:?}");
            }
        }
        // Jacobi identity on all valid basis triples
        for &a in &elements {
            for &b in &elements {
                for &c in &elements {
                    if a.0 + b.0 + c.0 > lie.max_degree {
                        continue;
                    }
                    let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = t.bracket(y, z);
                        let outer = t.bracket_combos(
                            x.0,
                            &vec![(x.1, crate::scalar::one())],
                            y.0 + z.0,
                            &inner,
                        );
                        for (w, e) in outer {
                            combo_add(&mut acc, w, e);
                        }
                    }
                    assert!(
                        combo_from_map(acc).is_empty(),
                        "jacobi fails on {a:?} {b:?} {c:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn homology_of_free_and_abelian() {
        // free: Tor concentrated in homological degrees 0 and 1
        let lie = nilpotent_quotient(&free_presentation(2), 5).unwrap();
        let h = ce_homology(&lie, 3, 5).unwrap();
        assert_eq!(h.get(&(1, 1)), Some(&2));
        for ((i, j), v) in &h {
            assert!(*i <= 1, "unexpected Tor_{{{i},{j}}} = {v}");
        }
        // abelian on 3 generators: the Koszul pattern Tor_{i,i} = C(3, i)
        let rels = vec![commutator(0, 1), commutator(0, 2), commutator(1, 2)];
        let p = AlgebraPresentation::free(3, rels).unwrap();
        let lie = nilpotent_quotient(&p, 5).unwrap();
        let h = ce_homology(&lie, 3, 5).unwrap();
        for i in 1..=3usize {
            assert_eq!(h.get(&(i, i)), Some(&(3usize.choose(i))), "i={i}");
        }
        assert_eq!(h.len(), 4);
    }

    /// Euler characteristic per weight: the alternating sum of Tor
    /// dimensions must reproduce 1/U(t).
    #[test]
    fn homology_euler_characteristic() {
        let p = AlgebraPresentation::parse("exterior 4\n1 x1*x2 -1 x3*x4\n1 x2*x3\n").unwrap();
        let dual = koszul_dual(&p).unwrap();
        let lie = nilpotent_quotient(&dual, 6).unwrap();
        let bound = 4usize; // exact while i_max covers all contributions
        let h = ce_homology(&lie, bound, bound).unwrap();
        let inv_u = lie.enveloping_series(bound).unwrap().inverse().unwrap();
        for j in 1..=bound {
            let mut sum = BigInt::zero();
            let mut sign = -1i64;
            for i in 1..=j {
                if let Some(v) = h.get(&(i, j)) {
                    sum += BigInt::from(*v as i64 * sign);
                }
                sign = -sign;
            }
            assert_eq!(sum, inv_u.coeff(j).clone(), "weight {j}");
        }
    }

    #[test]
    fn relations_appear_as_second_homology() {
        let p = AlgebraPresentation::parse(
            "exterior 5\n1 x2*x3\n1 x1*x3 -1 x1*x5 1 x3*x5\n1 x1*x2 -1 x1*x4 1 x2*x4\n",
        )
        .unwrap();
        let dual = koszul_dual(&p).unwrap();
        let lie = nilpotent_quotient(&dual, 6).unwrap();
        let h = ce_homology(&lie, 2, 6).unwrap();
        assert_eq!(h.get(&(2, 2)), Some(&dual.relations.len()));
        for j in 3..=6 {
            assert_eq!(h.get(&(2, j)), None, "quadratically presented: H_2 sits in weight 2");
        }
    }

    #[test]
    fn center_and_ideal_dimensions() {
        // free 2-generator Lie algebra has trivial center in low degrees
        let lie = nilpotent_quotient(&free_presentation(2), 6).unwrap();
        assert_eq!(lie.center_dims(), vec![0; 5]);
        // the ideal generated by both generators is everything
        let gens: Vec<(usize, Combo)> = (0..2)
            .map(|i| (1usize, vec![(i as u32, crate::scalar::one())]))
            .collect();
        let dims = lie.ideal_dims(&gens);
        assert_eq!(&dims[..], lie.dims());
        // abelian: everything is central
        let p = AlgebraPresentation::free(3, vec![
            commutator(0, 1),
            commutator(0, 2),
            commutator(1, 2),
        ])
        .unwrap();
        let ab = nilpotent_quotient(&p, 3).unwrap();
        assert_eq!(ab.center_dims(), vec![3, 0]);
    }

    trait Choose {
        fn choose(self, k: usize) -> usize;
    }
    impl Choose for usize {
        fn choose(self, k: usize) -> usize {
            if k > self {
                return 0;
            }
            (1..=k).fold(1, |acc, i| acc * (self - i + 1) / i)
        }
    }
}
