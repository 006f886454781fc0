//! Full (induced) cycles of length at least 4.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, Graph, VertexId, UNREACHABLE};
use crate::error::{Error, Result};

/// An induced cycle of length at least 4, stored with its least vertex first
/// and oriented so the second vertex is smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FullCycle(Vec<VertexId>);

impl FullCycle {
    /// Canonicalises a cyclically ordered vertex list. Does not check that the
    /// list is an induced cycle; see [`crate::validate::is_full_cycle`].
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        if vertices.is_empty() {
            return FullCycle(vertices);
        }
        let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).expect("nonempty");
        vertices.rotate_left(start);
        if vertices.len() > 2 && vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        FullCycle(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of edges, equal to the number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }
}

fn to_cycle(g: &Graph, idx: &[usize]) -> FullCycle {
    FullCycle::new(idx.iter().map(|&i| g.id(i)).collect())
}

/// Every induced cycle of length `4..=max_len` among trusted vertices, each
/// reported once, sorted.
pub fn enumerate_full_cycles(x: &FlagComplex, max_len: usize) -> Result<Vec<FullCycle>> {
    if max_len < 4 {
        return Err(Error::InvalidParameter(format!("max_len {max_len} < 4")));
    }
    let mask = x.trust_mask();
    let mut out = Vec::new();
    enumerate_idx(x.graph(), &mask, max_len, &mut |c| {
        out.push(to_cycle(x.graph(), c));
        true
    });
    out.sort();
    Ok(out)
}

/// Depth-first enumeration of induced cycles with their least vertex as the
/// root. The callback returns `false` to stop.
pub(crate) fn enumerate_idx(
    g: &Graph,
    mask: &[bool],
    max_len: usize,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut path = Vec::with_capacity(max_len);
    for s in 0..g.len() {
        if !mask[s] {
            continue;
        }
        for &p1 in g.nbrs(s) {
            let p1 = p1 as usize;
            if p1 < s || !mask[p1] {
                continue;
            }
            path.clear();
            path.push(s);
            path.push(p1);
            if !extend(g, mask, max_len, &mut path, emit) {
                return;
            }
        }
    }
}

fn extend(
    g: &Graph,
    mask: &[bool],
    max_len: usize,
    path: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let s = path[0];
    let last = *path.last().expect("nonempty");
    let inner = &path[1..path.len() - 1];
    let candidates: Vec<usize> = g
        .nbrs(last)
        .iter()
        .map(|&x| x as usize)
        .filter(|&x| x > s && mask[x] && !path.contains(&x))
        .filter(|&x| inner.iter().all(|&p| !g.adj_idx(p, x)))
        .collect();
    for x in candidates {
        if g.adj_idx(s, x) {
            if path.len() >= 3 && path[1] < x {
                path.push(x);
                let go_on = emit(path);
                path.pop();
                if !go_on {
                    return false;
                }
            }
        } else if path.len() + 2 <= max_len {
            path.push(x);
            let go_on = extend(g, mask, max_len, path, emit);
            path.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

/// Shortest induced cycle (of length >= 4) among masked vertices, restricted
/// to lengths strictly below `below` when given.
///
/// Every hole through an induced path `a - b - c` is `b` plus a path from `a`
/// to `c` avoiding `b` and the other neighbours of `b`; a shortest such path is
/// chordless, so the minimum over all induced `P_3` is the systole.
pub(crate) fn shortest_hole_idx(g: &Graph, mask: &[bool], below: Option<usize>) -> Option<Vec<usize>> {
    let n = g.len();
    let mut best: Option<Vec<usize>> = None;
    let mut bound = below.unwrap_or(usize::MAX);
    let mut blocked = vec![usize::MAX; n];
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for b in 0..n {
        if !mask[b] {
            continue;
        }
        let nb: Vec<usize> = g.nbrs(b).iter().map(|&x| x as usize).filter(|&x| mask[x]).collect();
        blocked[b] = b;
        for &x in &nb {
            blocked[x] = b;
        }
        for (ia, &a) in nb.iter().enumerate() {
            for &c in &nb[ia + 1..] {
                if g.adj_idx(a, c) {
                    continue;
                }
                // cycle length = d(a, c) + 2 < bound
                if bound <= 4 {
                    continue;
                }
                let max_d = (bound - 3) as u32;
                for &t in &touched {
                    dist[t] = UNREACHABLE;
                }
                touched.clear();
                let mut queue = VecDeque::new();
                dist[a] = 0;
                touched.push(a);
                queue.push_back(a);
                let mut found = false;
                while let Some(i) = queue.pop_front() {
                    if dist[i] >= max_d {
                        continue;
                    }
                    for &j in g.nbrs(i) {
                        let j = j as usize;
                        if !mask[j] || dist[j] != UNREACHABLE {
                            continue;
                        }
                        if blocked[j] == b && j != c {
                            continue;
                        }
                        dist[j] = dist[i] + 1;
                        parent[j] = i;
                        touched.push(j);
                        if j == c {
                            found = true;
                            break;
                        }
                        queue.push_back(j);
                    }
                    if found {
                        break;
                    }
                }
                if found {
                    let mut cyc = vec![b];
                    let mut cur = c;
                    while cur != a {
                        cyc.push(cur);
                        cur = parent[cur];
                    }
                    cyc.push(a);
                    bound = cyc.len();
                    best = Some(cyc);
                    if bound == 4 {
                        return best;
                    }
                }
            }
        }
    }
    best
}

/// Shortest full cycle among trusted vertices; `None` when there is none.
pub fn shortest_full_cycle(x: &FlagComplex) -> Option<FullCycle> {
    let mask = x.trust_mask();
    shortest_hole_idx(x.graph(), &mask, None).map(|c| to_cycle(x.graph(), &c))
}

/// Minimum length of a full cycle; `None` stands for infinity.
pub fn systole(x: &FlagComplex) -> Option<usize> {
    shortest_full_cycle(x).map(|c| c.len())
}

/// A full cycle of length below `k`, if any.
pub(crate) fn hole_below(g: &Graph, mask: &[bool], k: usize) -> Option<Vec<usize>> {
    shortest_hole_idx(g, mask, Some(k))
}

/// First induced 4-cycle among masked vertices, in order of its least
/// vertex and then its opposite vertex.
pub(crate) fn full_4_cycle_idx(g: &Graph, mask: &[bool]) -> Option<[usize; 4]> {
    let n = g.len();
    let mut common: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut touched: Vec<usize> = Vec::new();
    for a in 0..n {
        if !mask[a] {
            continue;
        }
        for &t in &touched {
            common[t].clear();
        }
        touched.clear();
        for &b in g.nbrs(a) {
            let b = b as usize;
            if !mask[b] {
                continue;
            }
            for &c in g.nbrs(b) {
                let c = c as usize;
                if c <= a || !mask[c] || g.adj_idx(a, c) {
                    continue;
                }
                if common[c].is_empty() {
                    touched.push(c);
                }
                common[c].push(b);
            }
        }
        touched.sort_unstable();
        for &c in &touched {
            let list = &common[c];
            for (i, &b) in list.iter().enumerate() {
                if let Some(&d) = list[i + 1..].iter().find(|&&d| !g.adj_idx(b, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// First full 4-cycle among trusted vertices.
pub fn full_4_cycle(x: &FlagComplex) -> Option<FullCycle> {
    let mask = x.trust_mask();
    full_4_cycle_idx(x.graph(), &mask).map(|c| to_cycle(x.graph(), &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn cycle(n: u32) -> FlagComplex {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FlagComplex::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn five_cycle_is_its_own_full_cycle() {
        let c5 = cycle(5);
        let cycles = enumerate_full_cycles(&c5, 6).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 5);
        assert_eq!(systole(&c5), Some(5));
    }

    #[test]
    fn octahedron_has_three_equatorial_squares() {
        let oct = named::octahedron();
        let cycles = enumerate_full_cycles(&oct, 4).unwrap();
        assert_eq!(cycles.len(), 3);
        assert_eq!(systole(&oct), Some(4));
        assert!(full_4_cycle(&oct).is_some());
    }

    #[test]
    fn icosahedron_systole_is_five() {
        assert_eq!(systole(&named::icosahedron()), Some(5));
        assert!(full_4_cycle(&named::icosahedron()).is_none());
    }

    #[test]
    fn simplex_has_no_full_cycles() {
        let s = named::simplex(3);
        assert_eq!(systole(&s), None);
        assert!(enumerate_full_cycles(&s, 3).is_err());
        assert!(enumerate_full_cycles(&s, 8).unwrap().is_empty());
    }

    #[test]
    fn canonical_form() {
        let v = |i| VertexId(i);
        let c = FullCycle::new(vec![v(3), v(1), v(0), v(2)]);
        assert_eq!(c.vertices(), &[v(0), v(1), v(3), v(2)]);
    }
}
