//! Simple graphs: graph6 encoding/decoding, edge-list text, and
//! enumeration of connected graphs up to isomorphism.

use crate::error::{Error, Result};
use itertools::Itertools;
use std::collections::BTreeSet;

/// A simple undirected graph on vertices 0..n. Edges are stored as (i, j)
/// with i < j, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Position of pair (i, j), i < j, in the graph6 bit order
/// (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),… (upper triangle, column by column).
fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

impl Graph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.0 == e.1 || e.1 >= n {
                return Err(Error::Invalid(format!("bad edge {e:?} on {n} vertices")));
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Graph { n, edges })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn bitmask(&self) -> u64 {
        self.edges.iter().fold(0u64, |m, &(i, j)| m | 1 << pair_index(i, j))
    }

    fn from_bitmask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        edges.sort();
        Graph { n, edges }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Canonical adjacency bitmask: minimum over all vertex relabelings that
    /// sort the degree sequence descending. Isomorphic graphs share it.
    pub fn canonical_mask(&self) -> u64 {
        let deg = self.degrees();
        let mask = self.bitmask();
        let mut best = u64::MAX;
        // perm[p] = old vertex placed at new position p
        for perm in (0..self.n).permutations(self.n) {
            if !(1..self.n).all(|p| deg[perm[p - 1]] >= deg[perm[p]]) {
                continue;
            }
            let mut pos = vec![0; self.n];
            for (p, &v) in perm.iter().enumerate() {
                pos[v] = p;
            }
            let mut m = 0u64;
            for &(i, j) in &self.edges {
                let (a, b) = (pos[i].min(pos[j]), pos[i].max(pos[j]));
                m |= 1 << pair_index(a, b);
                if m >= best {
                    // cannot get smaller by adding bits
                }
            }
            best = best.min(m);
            if mask == 0 {
                break;
            }
        }
        best
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n && self.canonical_mask() == other.canonical_mask()
    }

    /// Chordality: every cycle of length ≥ 4 has a chord. Decided by
    /// repeatedly deleting simplicial vertices (vertices whose remaining
    /// neighborhood is a clique); a graph is chordal exactly when this
    /// elimination empties it.
    pub fn is_chordal(&self) -> bool {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        let mut alive = vec![true; self.n];
        for _ in 0..self.n {
            let simplicial = (0..self.n).find(|&v| {
                if !alive[v] {
                    return false;
                }
                let nbrs: Vec<usize> =
                    (0..self.n).filter(|&w| alive[w] && adj[v][w]).collect();
                nbrs.iter()
                    .tuple_combinations()
                    .all(|(&a, &b)| adj[a][b])
            });
            match simplicial {
                Some(v) => alive[v] = false,
                None => return false,
            }
        }
        true
    }

    /// showg-style edge-list text: a line `n t`, then the 1-based edge pairs.
    pub fn to_edge_list_text(&self) -> String {
        let pairs =
            self.edges.iter().map(|&(i, j)| format!("{} {}", i + 1, j + 1)).collect::<Vec<_>>();
        format!("{} {}\n{}\n", self.n, self.edges.len(), pairs.join(" "))
    }
}

/// Decode one line of graph6 short form.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim().as_bytes();
    let malformed = |msg: &str| Error::MalformedGraph6(format!("{msg}: {line:?}"));
    if bytes.is_empty() {
        return Err(malformed("empty line"));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(malformed("byte out of printable graph6 range"));
        }
    }
    let n = (bytes[0] - 63) as usize;
    if n > 62 {
        return Err(malformed("only short form (n <= 62) is supported"));
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(malformed("wrong length for vertex count"));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = (bytes[1 + bit / 6] - 63) as usize;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // padding bits of the last byte must be zero
    for pad in nbits..nbytes * 6 {
        let byte = (bytes[1 + pad / 6] - 63) as usize;
        if byte >> (5 - pad % 6) & 1 == 1 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

/// Encode in graph6 short form (inverse of `parse_graph6`).
pub fn write_graph6(g: &Graph) -> String {
    let nbits = g.n * (g.n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let mut out = vec![63 + g.n as u8];
    out.resize(1 + nbytes, 63);
    for &(i, j) in &g.edges {
        let bit = pair_index(i, j);
        out[1 + bit / 6] += 1 << (5 - bit % 6);
    }
    String::from_utf8(out).unwrap()
}

/// All connected simple graphs on n vertices, one per isomorphism class, in
/// a deterministic order (sorted canonical bitmasks). Brute force over edge
/// subsets — fine for n ≤ 6, slow but correct for n = 7.
pub fn enumerate_connected(n: usize) -> Vec<Graph> {
    assert!(n >= 1 && n <= 7, "enumeration is desk-scale only");
    if n == 1 {
        return vec![Graph { n: 1, edges: vec![] }];
    }
    let m = n * (n - 1) / 2;
    let mut canon = BTreeSet::new();
    for mask in 0u64..1 << m {
        let g = Graph::from_bitmask(n, mask);
        // quick reject: connectivity needs at least n−1 edges and no
        // isolated vertex
        if g.edges.len() + 1 < n || g.degrees().contains(&0) || !g.is_connected() {
            continue;
        }
        canon.insert(g.canonical_mask());
    }
    canon.into_iter().map(|m| Graph::from_bitmask(n, m)).collect()
}

/// The cycle graph on n vertices.
pub fn cycle_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn decode_known_graphs() {
        let star = parse_graph6("CF").unwrap();
        assert_eq!(star.n, 4);
        assert_eq!(star.edges, vec![(0, 3), (1, 3), (2, 3)]);

        let g2 = parse_graph6("CU").unwrap();
        assert_eq!(g2.edges, vec![(0, 2), (0, 3), (1, 3)]);

        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.edges.len(), 6);
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::new(4, vec![(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.to_edge_list_text(), "4 4\n1 3 1 4 2 3 2 4\n");
        let single = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(single.to_edge_list_text(), "2 1\n1 2\n");
        let empty = Graph::new(3, vec![]).unwrap();
        assert_eq!(empty.to_edge_list_text(), "3 0\n\n");
    }

    #[test]
    fn graph6_round_trip() {
        for n in 2..=5 {
            for g in enumerate_connected(n) {
                assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
            }
        }
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err()); // too short for n=4
        assert!(parse_graph6("B~").is_err()); // nonzero padding for n=3
        assert!(parse_graph6("C\u{7f}").is_err()); // byte out of range
    }

    #[test]
    fn connected_counts() {
        assert_eq!(enumerate_connected(2).len(), 1);
        assert_eq!(enumerate_connected(3).len(), 2);
        assert_eq!(enumerate_connected(4).len(), 6);
        assert_eq!(enumerate_connected(5).len(), 21);
        assert_eq!(enumerate_connected(6).len(), 112);
    }

    #[test]
    fn chordality() {
        // cycles of length ≥ 4 are the smallest non-chordal graphs
        assert!(cycle_graph(3).is_chordal());
        for n in 4..=7 {
            assert!(!cycle_graph(n).is_chordal());
        }
        // trees and complete graphs are chordal
        assert!(parse_graph6("CF").unwrap().is_chordal());
        assert!(parse_graph6("C~").unwrap().is_chordal());
        // connected chordal graphs per order: 1, 2, 5, 15, 58
        for (n, count) in [(2, 1), (3, 2), (4, 5), (5, 15), (6, 58)] {
            let chordal =
                enumerate_connected(n).iter().filter(|g| g.is_chordal()).count();
            assert_eq!(chordal, count, "order {n}");
        }
    }

    #[test]
    fn relabeling_is_isomorphism_invariant() {
        let mut rng = StdRng::seed_from_u64(5);
        for g in enumerate_connected(5) {
            let mut perm: Vec<usize> = (0..5).collect();
            perm.shuffle(&mut rng);
            let relabeled =
                Graph::new(5, g.edges.iter().map(|&(i, j)| (perm[i], perm[j])).collect()).unwrap();
            assert!(g.is_isomorphic(&relabeled));
        }
    }
}
