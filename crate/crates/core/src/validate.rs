//! Independent re-checks of reported witnesses.
//!
//! Everything here goes through the public adjacency API and its own
//! breadth-first search, never through the distance cache used by the
//! checkers, so a bug in one does not hide a bug in the other.

use std::collections::{HashMap, VecDeque};

use crate::complex::{FlagComplex, VertexId};
use crate::conditions::ExtendedWheel5;
use crate::topology;
use crate::verdict::{Ambient, Witness};

/// Plain breadth-first distance; `None` across components or for unknown ids.
pub fn bfs_distance(x: &FlagComplex, u: VertexId, v: VertexId) -> Option<u32> {
    if !x.contains(u) || !x.contains(v) {
        return None;
    }
    let mut seen: HashMap<VertexId, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(u, 0);
    queue.push_back(u);
    while let Some(a) = queue.pop_front() {
        let d = seen[&a];
        if a == v {
            return Some(d);
        }
        for b in x.graph().neighbors(a).ok()? {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(b) {
                e.insert(d + 1);
                queue.push_back(b);
            }
        }
    }
    None
}

/// Distinct vertices, consecutive ones adjacent, no other adjacencies, and
/// length at least 4.
pub fn is_full_cycle(x: &FlagComplex, cycle: &[VertexId]) -> bool {
    let n = cycle.len();
    if n < 4 || cycle.iter().any(|&v| !x.contains(v)) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if cycle[i] == cycle[j] {
                return false;
            }
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if x.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

fn common_closer(x: &FlagComplex, u: VertexId, v: VertexId, w: VertexId, d: u32) -> bool {
    x.graph()
        .neighbors(v)
        .unwrap_or_default()
        .into_iter()
        .any(|c| x.adjacent(c, w) && bfs_distance(x, u, c) == Some(d - 1))
}

fn valid_wheel(x: &FlagComplex, w: &ExtendedWheel5) -> bool {
    let r = w.rim;
    let all = w.vertices();
    if all.iter().enumerate().any(|(i, a)| all[i + 1..].contains(a)) {
        return false;
    }
    is_full_cycle(x, &r)
        && r.iter().all(|&v| x.adjacent(w.center, v))
        && x.adjacent(w.apex, r[0])
        && x.adjacent(w.apex, r[1])
        && !x.adjacent(w.apex, w.center)
        && r[2..].iter().all(|&v| !x.adjacent(w.apex, v))
}

/// Re-derives the claim a witness makes about `x`. Witnesses that need an
/// automorphism (`Displacement`) or that record a search outcome
/// (`Collapse`) return `false`; use the dedicated checks for those.
pub fn revalidate(x: &FlagComplex, w: &Witness) -> bool {
    match w {
        Witness::Clique(s) => x.is_clique(s.vertices()),
        Witness::Cycle { ambient: Ambient::Complex, cycle } => is_full_cycle(x, cycle),
        Witness::Cycle { ambient: Ambient::Link(s), cycle } => {
            x.is_clique(s.vertices())
                && cycle
                    .iter()
                    .all(|&c| !s.contains(c) && s.vertices().iter().all(|&v| x.adjacent(v, c)))
                && is_full_cycle(x, cycle)
        }
        Witness::Triangle { u, v, w, distance } => {
            let d = *distance;
            d >= 2
                && x.adjacent(*v, *w)
                && bfs_distance(x, *u, *v) == Some(d)
                && bfs_distance(x, *u, *w) == Some(d)
                && !common_closer(x, *u, *v, *w, d)
        }
        Witness::Quadrangle { u, v, w, z, distance } => {
            let d = *distance;
            d >= 2
                && x.adjacent(*z, *v)
                && x.adjacent(*z, *w)
                && v != w
                && !x.adjacent(*v, *w)
                && bfs_distance(x, *u, *v) == Some(d)
                && bfs_distance(x, *u, *w) == Some(d)
                && bfs_distance(x, *u, *z) == Some(d + 1)
                && !common_closer(x, *u, *v, *w, d)
        }
        Witness::Wheel(wheel) => {
            valid_wheel(x, wheel) && {
                let all = wheel.vertices();
                !x.vertices()
                    .iter()
                    .any(|&d| !all.contains(&d) && all.iter().all(|&a| x.adjacent(a, d)))
            }
        }
        Witness::Sd { center, i, simplex, trace } => {
            if !x.is_clique(simplex.vertices())
                || simplex.vertices().iter().any(|&s| bfs_distance(x, *center, s) != Some(i + 1))
            {
                return false;
            }
            let mut expect: Vec<VertexId> = x
                .vertices()
                .iter()
                .copied()
                .filter(|&t| {
                    simplex.vertices().iter().all(|&s| x.adjacent(s, t))
                        && bfs_distance(x, *center, t) == Some(*i)
                })
                .collect();
            expect.sort_unstable();
            let mut given = trace.clone();
            given.sort_unstable();
            expect == given && (given.is_empty() || !x.is_clique(&given))
        }
        Witness::Disconnected { u, v } => {
            x.contains(*u) && x.contains(*v) && bfs_distance(x, *u, *v).is_none()
        }
        Witness::Homology { betti1, torsion } => {
            (*betti1 > 0 || !torsion.is_empty())
                && topology::first_homology(x) == Some((*betti1, torsion.clone()))
        }
        Witness::Collapse { .. } | Witness::Displacement { .. } => false,
        Witness::Adjacency { u, v, hu, hv } => x.adjacent(*u, *v) != x.adjacent(*hu, *hv),
        Witness::Distance { u, v, expected, found } => {
            let d = bfs_distance(x, *u, *v);
            d == *found && d != Some(*expected)
        }
        Witness::ChainPair { a, b, u, v, found } => {
            bfs_distance(x, *u, *v) == Some(*found) && (*found as u64) != a.abs_diff(*b)
        }
        Witness::Chain { vertices, .. } => vertices
            .windows(2)
            .all(|p| p[0] == p[1] || x.adjacent(p[0], p[1])),
        Witness::Thick { k, vertices, .. } => thick_brute_force(x, *k, vertices),
    }
}

/// Direct check of the `A_k` conditions on an index window: injective,
/// adjacency exactly for index gaps `1..=k`, exact distance `j` for gaps
/// `j * k`, all pairs compared.
pub fn thick_brute_force(x: &FlagComplex, k: u32, vertices: &[VertexId]) -> bool {
    if k == 0 {
        return false;
    }
    let k = k as usize;
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (u, v) = (vertices[a], vertices[b]);
            if u == v || x.adjacent(u, v) != (b - a <= k) {
                return false;
            }
            if (b - a) % k == 0 && bfs_distance(x, u, v) != Some(((b - a) / k) as u32) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn full_cycles() {
        let oct = named::octahedron();
        assert!(is_full_cycle(&oct, &[v(2), v(4), v(3), v(5)]));
        assert!(!is_full_cycle(&oct, &[v(0), v(2), v(1), v(4)]));
        assert!(!is_full_cycle(&oct, &[v(0), v(2), v(4)]));
        let c6 = named::cycle(6);
        assert!(is_full_cycle(&c6, &[v(0), v(1), v(2), v(3), v(4), v(5)]));
        assert!(!is_full_cycle(&c6, &[v(0), v(1), v(2), v(3), v(4), v(6)]));
    }

    #[test]
    fn rejects_false_witnesses() {
        let c6 = named::cycle(6);
        let bogus = Witness::Quadrangle { u: v(0), v: v(2), w: v(4), z: v(3), distance: 1 };
        assert!(!revalidate(&c6, &bogus));
        let real = Witness::Quadrangle { u: v(0), v: v(2), w: v(4), z: v(3), distance: 2 };
        assert!(revalidate(&c6, &real));
        assert!(!revalidate(&c6, &Witness::Disconnected { u: v(0), v: v(3) }));
    }

    #[test]
    fn thick_check_on_a_line() {
        let path = named::cycle(4);
        assert!(thick_brute_force(&path, 1, &[v(0), v(1), v(2)]));
        assert!(!thick_brute_force(&path, 1, &[v(0), v(1), v(2), v(3)]));
    }
}
