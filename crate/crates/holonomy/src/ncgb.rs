//! Degree-truncated noncommutative Gröbner bases over the free associative
//! algebra, normal forms, and Hilbert functions counted by a
//! forbidden-subword automaton (never by enumerating words).
//!
//! Internally the engine works fraction-free: polynomials carry coprime
//! big-integer coefficients, reduction steps cross-multiply by the leading
//! coefficients divided by their gcd, and the reducer for a monomial is
//! found by walking the leading-word automaton instead of scanning the
//! basis.

use crate::error::{Error, Result};
use crate::presentation::{AlgebraPresentation, Flavor};
use crate::series::Series1;
use crate::word::{DegLex, DegLexKey, FreePoly, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Fraction-free working polynomial: words (internal labels) with coprime
/// integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct GPoly {
    terms: BTreeMap<DegLexKey, BigInt>,
}

impl GPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
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

    fn leading(&self) -> Option<(&Word, &BigInt)> {
        self.terms.iter().next_back().map(|(k, c)| (&k.0, c))
    }

    fn scale(&mut self, c: &BigInt) {
        if c.is_one() {
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// self += c · a·other·b
    fn add_sandwich(&mut self, other: &GPoly, a: &[u8], b: &[u8], c: &BigInt) {
        for (k, v) in &other.terms {
            let mut w = Vec::with_capacity(a.len() + k.0 .0.len() + b.len());
            w.extend_from_slice(a);
            w.extend_from_slice(&k.0 .0);
            w.extend_from_slice(b);
            self.add_term(Word(w), v * c);
        }
    }

    /// Divide by the content and make the leading coefficient positive.
    fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for v in self.terms.values() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if self.leading().unwrap().1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for v in self.terms.values_mut() {
                *v = &*v / &g;
            }
        }
    }

    fn from_free(p: &FreePoly, map: &[u8]) -> GPoly {
        let lcm = crate::scalar::denominator_lcm(p.terms.values());
        let mut out = GPoly::default();
        for (k, c) in &p.terms {
            let w = Word(k.0 .0.iter().map(|&g| map[g as usize]).collect());
            out.add_term(w, c.numer() * (&lcm / c.denom()));
        }
        out.normalize();
        out
    }

    fn to_free(&self, map: &[u8]) -> FreePoly {
        let mut out = FreePoly::zero();
        for (k, c) in &self.terms {
            let w = Word(k.0 .0.iter().map(|&g| map[g as usize]).collect());
            out.add_term(w, crate::scalar::Scalar::from_integer(c.clone()));
        }
        out
    }
}

/// A reduced Gröbner basis complete through degree `complete_to`: leading
/// words are pairwise non-divisible and every overlap ambiguity of total
/// degree ≤ complete_to reduces to zero.
///
/// Elements are stored with generators relabeled by the order's precedence
/// (so plain length-then-lexicographic comparison is the monomial order
/// internally); accessors translate back to the caller's labels.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub num_gens: usize,
    precedence: Vec<u8>,
    elements: Vec<GPoly>,
    automaton: SubwordAutomaton,
    pub complete_to: usize,
}

fn inverse_map(map: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; map.len()];
    for (i, &m) in map.iter().enumerate() {
        inv[m as usize] = i as u8;
    }
    inv
}

/// Reduce `p` against the basis elements, looked up through the automaton.
/// Fraction-free: the result is content-normalized.
fn reduce(p: GPoly, basis: &[GPoly], automaton: &SubwordAutomaton) -> GPoly {
    let mut work = 0u64;
    reduce_counted(p, basis, automaton, &mut work)
}

/// [reduce], accumulating the loop-iteration count into `work` so callers
/// can budget the total reduction effort deterministically.
fn reduce_counted(
    mut p: GPoly,
    basis: &[GPoly],
    automaton: &SubwordAutomaton,
    work: &mut u64,
) -> GPoly {
    let mut done = GPoly::default();
    let mut steps = 0usize;
    loop {
        steps += 1;
        *work += 1;
        if steps % 32 == 0 {
            // periodic joint content removal keeps coefficients small; the
            // same divisor must be applied to both halves
            let mut g = BigInt::zero();
            for v in p.terms.values().chain(done.terms.values()) {
                g = g.gcd(v);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_zero() && !g.is_one() {
                for v in p.terms.values_mut().chain(done.terms.values_mut()) {
                    *v = &*v / &g;
                }
            }
        }
        let Some((w, c)) = p.leading() else { break };
        match automaton.find_match(&w.0) {
            Some((idx, end)) => {
                let g = &basis[idx];
                let (glead, gc) = g.leading().unwrap();
                let a = w.0[..end - glead.0.len()].to_vec();
                let b = w.0[end..].to_vec();
                let d = gc.gcd(c);
                let (mult_p, mult_g) = (gc / &d, -(c / &d));
                p.scale(&mult_p);
                done.scale(&mult_p);
                p.add_sandwich(g, &a, &b, &mult_g);
            }
            None => {
                let (w, c) = (w.clone(), c.clone());
                done.add_term(w.clone(), c.clone());
                p.add_term(w, -c);
            }
        }
    }
    done.normalize();
    done
}

/// Proper overlaps: suffix of `u` equal to a prefix of `v`, of length
/// 1..min(|u|,|v|). For each, the composite word is u · v[o..].
fn overlaps(u: &Word, v: &Word) -> Vec<usize> {
    (1..u.0.len().min(v.0.len())).filter(|&o| u.0[u.0.len() - o..] == v.0[..o]).collect()
}

/// Reduced Gröbner basis of the two-sided ideal generated by homogeneous
/// `rels`, complete through degree `bound`. Degrees are processed in
/// increasing order; every overlap ambiguity lands strictly above the
/// degrees already finished, so one pass per degree suffices.
pub fn buchberger_truncated(
    rels: &[FreePoly],
    ord: &DegLex,
    bound: usize,
    num_gens: usize,
) -> GroebnerBasis {
    buchberger_budgeted(rels, ord, bound, num_gens, u64::MAX)
        .expect("unlimited budget cannot be exhausted")
}

/// [buchberger_truncated] with a deterministic work budget: the accumulated
/// reduction-step count across all S-polynomial and tail reductions. Returns
/// `None` once the budget is exhausted, leaving the caller to fall back to a
/// smaller degree bound. The counter is machine-independent, so verdicts
/// derived from the achieved bound are reproducible.
pub fn buchberger_budgeted(
    rels: &[FreePoly],
    ord: &DegLex,
    bound: usize,
    num_gens: usize,
    budget: u64,
) -> Option<GroebnerBasis> {
    assert_eq!(ord.precedence.len(), num_gens, "order arity mismatch");
    let mut work = 0u64;
    let precedence = ord.precedence.clone();
    let mut pending: BTreeMap<usize, Vec<GPoly>> = BTreeMap::new();
    for r in rels {
        if r.is_zero() {
            continue;
        }
        let d = r.homogeneous_degree().expect("relations must be homogeneous");
        assert!(d >= 1);
        if d <= bound {
            pending.entry(d).or_default().push(GPoly::from_free(r, &precedence));
        }
    }
    let mut basis: Vec<GPoly> = Vec::new();
    let mut automaton = SubwordAutomaton::new(num_gens, &[]);
    for d in 1..=bound {
        let Some(batch) = pending.remove(&d) else { continue };
        for p in batch {
            let r = reduce_counted(p, &basis, &automaton, &mut work);
            if work > budget {
                return None;
            }
            if r.is_zero() {
                continue;
            }
            let lead = r.leading().unwrap().0.clone();
            // queue overlap ambiguities with every element (both sides) and
            // with itself; composites are strictly longer than max(|u|,|v|)
            for g in basis.iter().chain(std::iter::once(&r)) {
                let glead = g.leading().unwrap().0.clone();
                for (u, up, v, vp) in [(&lead, &r, &glead, g), (&glead, g, &lead, &r)] {
                    for o in overlaps(u, v) {
                        let total = u.0.len() + v.0.len() - o;
                        if total > bound {
                            continue;
                        }
                        // S-polynomial gc·up·b − uc·a·vp, composite u·b = a·v
                        let b = &v.0[o..];
                        let a = &u.0[..u.0.len() - o];
                        let uc = up.leading().unwrap().1.clone();
                        let vc = vp.leading().unwrap().1.clone();
                        let mut s = GPoly::default();
                        s.add_sandwich(up, &[], b, &vc);
                        s.add_sandwich(vp, a, &[], &-uc);
                        if !s.is_zero() {
                            pending.entry(total).or_default().push(s);
                        }
                    }
                }
            }
            basis.push(r);
            automaton = SubwordAutomaton::new(
                num_gens,
                &basis.iter().map(|g| g.leading().unwrap().0).collect::<Vec<_>>(),
            );
        }
    }
    // tail reduction: make every non-leading monomial normal
    let mut reduced: Vec<GPoly> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut others: Vec<GPoly> = basis[..i].to_vec();
        others.extend_from_slice(&basis[i + 1..]);
        let auto = SubwordAutomaton::new(
            num_gens,
            &others.iter().map(|g| g.leading().unwrap().0).collect::<Vec<_>>(),
        );
        reduced.push(reduce_counted(basis[i].clone(), &others, &auto, &mut work));
        if work > budget {
            return None;
        }
    }
    Some(GroebnerBasis { num_gens, precedence, elements: reduced, automaton, complete_to: bound })
}

/// Run the Gröbner machinery on a free-flavor presentation.
pub fn presentation_basis(p: &AlgebraPresentation, ord: &DegLex, bound: usize) -> GroebnerBasis {
    assert_eq!(p.flavor, Flavor::Free);
    let rels: Vec<FreePoly> = p.free_relations().cloned().collect();
    buchberger_truncated(&rels, ord, bound, p.num_gens)
}

impl GroebnerBasis {
    /// Basis elements in the caller's generator labels.
    pub fn elements_external(&self) -> Vec<FreePoly> {
        let inv = inverse_map(&self.precedence);
        self.elements.iter().map(|p| p.to_free(&inv)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading words, internal labels.
    pub fn leading_words(&self) -> Vec<&Word> {
        self.elements.iter().map(|p| p.leading().unwrap().0).collect()
    }

    /// Normal words of degree d (internal labels), in increasing deglex
    /// order. Meant for the resolution layer, which needs explicit bases of
    /// small graded components.
    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut w = Word(Vec::with_capacity(d));
        self.collect_normal(&mut w, d, &mut out);
        out
    }

    fn collect_normal(&self, w: &mut Word, d: usize, out: &mut Vec<Word>) {
        if !self.automaton.is_live(&w.0) {
            return;
        }
        if w.0.len() == d {
            out.push(w.clone());
            return;
        }
        for g in 0..self.num_gens as u8 {
            w.0.push(g);
            self.collect_normal(w, d, out);
            w.0.pop();
        }
    }

    /// Map a word in internal labels back to external ones.
    pub fn externalize(&self, w: &Word) -> Word {
        let inv = inverse_map(&self.precedence);
        Word(w.0.iter().map(|&g| inv[g as usize]).collect())
    }

    pub fn internalize(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|&g| self.precedence[g as usize]).collect())
    }

    /// Normal form of `p` modulo the ideal (external labels in and out).
    pub fn normal_form(&self, p: &FreePoly) -> Result<FreePoly> {
        if let Some(d) = p.degree() {
            if d > self.complete_to {
                return Err(Error::DegreeExceedsCompletion {
                    degree: d,
                    complete_to: self.complete_to,
                });
            }
        }
        let internal = GPoly::from_free(p, &self.precedence);
        // fraction-free reduction rescales; undo against the original so the
        // result is genuinely congruent to p
        let reduced = reduce(internal.clone(), &self.elements, &self.automaton);
        let inv = inverse_map(&self.precedence);
        if reduced.is_zero() {
            return Ok(FreePoly::zero());
        }
        // match the scale of p: reduction preserves the ideal coset only up
        // to a positive rational multiple; recover it from the leading
        // normal monomial of p once p's reducible part is accounted for.
        // Simplest exact route: reduce in rational arithmetic by replaying
        // normal-form extraction on p with the reduced basis.
        Ok(self.rational_reduce(p, &inv))
    }

    fn rational_reduce(&self, p: &FreePoly, inv: &[u8]) -> FreePoly {
        let mut work = FreePoly::zero();
        for (k, c) in &p.terms {
            let w = Word(k.0 .0.iter().map(|&g| self.precedence[g as usize]).collect());
            work.add_term(w, c.clone());
        }
        let mut done = FreePoly::zero();
        'outer: while let Some((w, c)) = work.leading() {
            if let Some((idx, end)) = self.automaton.find_match(&w.0) {
                let g = &self.elements[idx];
                let (glead, gc) = g.leading().unwrap();
                let a = Word(w.0[..end - glead.0.len()].to_vec());
                let b = Word(w.0[end..].to_vec());
                let factor = -(c / crate::scalar::Scalar::from_integer(gc.clone()));
                let mut sub = FreePoly::zero();
                for (k, v) in &g.terms {
                    let mut word = a.0.clone();
                    word.extend_from_slice(&k.0 .0);
                    word.extend_from_slice(&b.0);
                    sub.add_term(Word(word), crate::scalar::Scalar::from_integer(v.clone()) * &factor);
                }
                work.add_assign(&sub);
                continue 'outer;
            }
            let (w, c) = (w.clone(), c.clone());
            done.add_term(Word(w.0.iter().map(|&g| inv[g as usize]).collect()), c.clone());
            work.add_term(w, -c);
        }
        done
    }

    /// One basis element per line in the shared free-polynomial syntax.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in self.elements_external() {
            let parts: Vec<String> = p
                .terms
                .iter()
                .map(|(k, c)| {
                    let mono =
                        k.0 .0.iter().map(|g| format!("X{}", g + 1)).collect::<Vec<_>>().join(".");
                    format!("{c} {mono}")
                })
                .collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    /// Hilbert function of the quotient through `bound`: normal words
    /// counted by the forbidden-subword automaton.
    pub fn hilbert_function(&self, bound: usize) -> Result<Series1> {
        if bound > self.complete_to {
            return Err(Error::DegreeExceedsCompletion {
                degree: bound,
                complete_to: self.complete_to,
            });
        }
        Ok(self.automaton.count(bound))
    }
}

/// Aho–Corasick automaton over the generator alphabet whose live states are
/// proper prefixes of the forbidden (leading) words. Doubles as the word
/// counter (transfer-matrix iteration) and the reducer lookup.
#[derive(Clone, Debug)]
pub struct SubwordAutomaton {
    num_gens: usize,
    /// goto[state * num_gens + letter]; matches are encoded as
    /// MATCH_BASE + pattern index.
    goto: Vec<u32>,
    live_states: usize,
}

const MATCH_BASE: u32 = 1 << 31;

impl SubwordAutomaton {
    pub fn new(num_gens: usize, forbidden: &[&Word]) -> Self {
        let mut children: Vec<BTreeMap<u8, u32>> = vec![BTreeMap::new()];
        // pattern index if a forbidden word ends here (possibly via failure)
        let mut hit: Vec<Option<u32>> = vec![None];
        for (pi, w) in forbidden.iter().enumerate() {
            let mut s = 0u32;
            for &g in &w.0 {
                let next = children[s as usize].get(&g).copied().unwrap_or_else(|| {
                    children.push(BTreeMap::new());
                    hit.push(None);
                    let id = (children.len() - 1) as u32;
                    children[s as usize].insert(g, id);
                    id
                });
                s = next;
            }
            hit[s as usize] = Some(pi as u32);
        }
        let n = children.len();
        let mut fail = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(0u32);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for (&g, &c) in children[s as usize].clone().iter() {
                fail[c as usize] = if s == 0 {
                    0
                } else {
                    let mut f = fail[s as usize];
                    loop {
                        if let Some(&t) = children[f as usize].get(&g) {
                            break t;
                        }
                        if f == 0 {
                            break 0;
                        }
                        f = fail[f as usize];
                    }
                };
                if hit[c as usize].is_none() {
                    hit[c as usize] = hit[fail[c as usize] as usize];
                }
                queue.push_back(c);
            }
        }
        // full transition table; entering a state that completes a pattern
        // is recorded as a match of that pattern
        let mut goto = vec![0u32; n * num_gens];
        for &s in &order {
            if hit[s as usize].is_some() {
                continue; // unreachable during scanning: matches stop the walk
            }
            for g in 0..num_gens as u8 {
                let target = {
                    let mut f = s;
                    loop {
                        if let Some(&t) = children[f as usize].get(&g) {
                            break t;
                        }
                        if f == 0 {
                            break 0;
                        }
                        f = fail[f as usize];
                    }
                };
                goto[s as usize * num_gens + g as usize] = match hit[target as usize] {
                    Some(pi) => MATCH_BASE + pi,
                    None => target,
                };
            }
        }
        SubwordAutomaton { num_gens, goto, live_states: n }
    }

    /// First match while scanning `w` left to right: (pattern index,
    /// end position). None if `w` avoids every pattern.
    pub fn find_match(&self, w: &[u8]) -> Option<(usize, usize)> {
        let mut s = 0u32;
        for (pos, &g) in w.iter().enumerate() {
            let t = self.goto[s as usize * self.num_gens + g as usize];
            if t >= MATCH_BASE {
                return Some(((t - MATCH_BASE) as usize, pos + 1));
            }
            s = t;
        }
        None
    }

    pub fn is_live(&self, w: &[u8]) -> bool {
        self.find_match(w).is_none()
    }

    /// Numbers of words of each length ≤ bound avoiding every pattern, by
    /// iterated application of the transfer matrix.
    pub fn count(&self, bound: usize) -> Series1 {
        let mut counts = Series1::zero(bound);
        let mut v = vec![BigInt::zero(); self.live_states];
        v[0] = BigInt::from(1);
        counts.coeffs[0] = BigInt::from(1);
        for d in 1..=bound {
            let mut next = vec![BigInt::zero(); self.live_states];
            for (s, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for g in 0..self.num_gens {
                    let t = self.goto[s * self.num_gens + g];
                    if t < MATCH_BASE {
                        next[t as usize] += c;
                    }
                }
            }
            counts.coeffs[d] = next.iter().sum();
            v = next;
        }
        counts
    }
}
