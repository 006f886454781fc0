//! Brute-force reference implementations used to derive and cross-check
//! expected values. Deliberately naive: Floyd-Warshall distances, subset
//! enumeration, full clique scans.

#![allow(dead_code)]

use std::collections::BTreeSet;

use wsc_core::{Automorphism, FlagComplex, VertexId};

pub const INF: u32 = u32::MAX / 4;

/// All-pairs distances indexed by position in `x.vertices()`.
pub fn floyd(x: &FlagComplex) -> Vec<Vec<u32>> {
    let vs = x.vertices();
    let n = vs.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if x.adjacent(vs[i], vs[j]) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn pos(x: &FlagComplex, v: VertexId) -> usize {
    x.vertices().binary_search(&v).unwrap()
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Vertex sets of size `4..=max_len` (among `allowed`) inducing a cycle.
pub fn brute_full_cycle_sets(x: &FlagComplex, allowed: &[VertexId], max_len: usize) -> BTreeSet<Vec<VertexId>> {
    let n = allowed.len();
    let mut out = BTreeSet::new();
    for k in 4..=max_len.min(n) {
        subsets(n, k, 0, &mut Vec::new(), &mut |s| {
            let vs: Vec<VertexId> = s.iter().map(|&i| allowed[i]).collect();
            let degs_ok = vs
                .iter()
                .all(|&a| vs.iter().filter(|&&b| x.adjacent(a, b)).count() == 2);
            if !degs_ok {
                return;
            }
            // connected 2-regular graph = one cycle
            let mut seen = vec![vs[0]];
            let mut stack = vec![vs[0]];
            while let Some(a) = stack.pop() {
                for &b in &vs {
                    if x.adjacent(a, b) && !seen.contains(&b) {
                        seen.push(b);
                        stack.push(b);
                    }
                }
            }
            if seen.len() == vs.len() {
                out.insert(vs);
            }
        });
    }
    out
}

/// Every clique of the graph, by subset enumeration.
pub fn brute_cliques(x: &FlagComplex) -> Vec<Vec<VertexId>> {
    let vs = x.vertices();
    let mut out = Vec::new();
    for k in 1..=vs.len() {
        let before = out.len();
        subsets(vs.len(), k, 0, &mut Vec::new(), &mut |s| {
            let c: Vec<VertexId> = s.iter().map(|&i| vs[i]).collect();
            if c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| x.adjacent(a, b))) {
                out.push(c);
            }
        });
        if out.len() == before {
            break;
        }
    }
    out
}

/// Some clique σ with h(σ) = σ setwise, scanning all cliques.
pub fn brute_invariant_simplex(x: &FlagComplex, h: &Automorphism) -> Option<Vec<VertexId>> {
    brute_cliques(x).into_iter().find(|c| {
        let img: Option<BTreeSet<VertexId>> = c.iter().map(|&v| h.apply(v)).collect();
        img == Some(c.iter().copied().collect())
    })
}

/// Triangle condition over the positions in `scope`, distances up to `max_d`.
pub fn brute_tc(x: &FlagComplex, scope: &[VertexId], max_d: u32) -> bool {
    let d = floyd(x);
    let vs = x.vertices();
    let sc: Vec<usize> = scope.iter().map(|&v| pos(x, v)).collect();
    for &u in &sc {
        for &v in &sc {
            for &w in &sc {
                if d[v][w] != 1 || d[u][v] != d[u][w] || d[u][v] < 2 || d[u][v] > max_d {
                    continue;
                }
                let ok = (0..vs.len()).any(|c| d[c][v] == 1 && d[c][w] == 1 && d[u][c] == d[u][v] - 1);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Quadrangle condition over the positions in `scope`.
pub fn brute_qc(x: &FlagComplex, scope: &[VertexId], max_d: u32) -> bool {
    let d = floyd(x);
    let vs = x.vertices();
    let sc: Vec<usize> = scope.iter().map(|&v| pos(x, v)).collect();
    for &u in &sc {
        for &v in &sc {
            for &w in &sc {
                if d[v][w] != 2 || d[u][v] != d[u][w] || d[u][v] < 2 {
                    continue;
                }
                for &z in &sc {
                    if d[z][v] != 1 || d[z][w] != 1 || d[u][z] != d[u][v] + 1 || d[u][z] > max_d {
                        continue;
                    }
                    let ok = (0..vs.len()).any(|c| d[c][v] == 1 && d[c][w] == 1 && d[u][c] == d[u][v] - 1);
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `SD_n(v)` straight from the definition.
pub fn brute_sd(x: &FlagComplex, v: VertexId, n: u32) -> bool {
    let d = floyd(x);
    let vs = x.vertices();
    let c = pos(x, v);
    let cliques = brute_cliques(x);
    for i in 0..=n {
        for s in &cliques {
            if !s.iter().all(|&a| d[c][pos(x, a)] == i + 1) {
                continue;
            }
            let trace: Vec<VertexId> = vs
                .iter()
                .copied()
                .filter(|&t| d[c][pos(x, t)] == i && s.iter().all(|&a| x.adjacent(a, t)))
                .collect();
            let clique = trace
                .iter()
                .enumerate()
                .all(|(k, &a)| trace[k + 1..].iter().all(|&b| x.adjacent(a, b)));
            if trace.is_empty() || !clique {
                return false;
            }
        }
    }
    true
}

/// Has an induced 4-cycle among `scope`.
pub fn brute_has_c4(x: &FlagComplex, scope: &[VertexId]) -> bool {
    !brute_full_cycle_sets(x, scope, 4).is_empty()
}
