//! Sufficient and necessary tests for simple connectivity: elementary
//! collapses to a point, and first integral homology.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::FlagComplex;
use crate::verdict::{Verdict, Witness};

/// Step budget for the collapse search (backtracking included).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget(pub usize);

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget(100_000)
    }
}

/// Largest boundary matrix (rows times columns) the homology test will
/// reduce.
pub const HOMOLOGY_CELL_CAP: usize = 4_000_000;

/// Yes when an elementary-collapse sequence to a vertex is found, No when the
/// complex is disconnected or its first homology is nontrivial, Unknown
/// otherwise.
pub fn simple_connectivity_oracle(x: &FlagComplex, budget: OracleBudget) -> Verdict {
    if x.is_empty() {
        return Verdict::unknown("empty complex");
    }
    if !x.is_connected() {
        let comps = x.graph().components();
        return Verdict::no(Witness::Disconnected { u: comps[0][0], v: comps[1][0] });
    }
    let mut c = Collapser::new(x);
    if let Some(steps) = c.greedy() {
        return Verdict::yes_with(Witness::Collapse { steps });
    }
    match first_homology(x) {
        Some((0, t)) if t.is_empty() => {}
        Some((betti1, torsion)) => return Verdict::no(Witness::Homology { betti1, torsion }),
        None => {}
    }
    let mut c = Collapser::new(x);
    match c.search(budget.0) {
        Some(steps) => Verdict::yes_with(Witness::Collapse { steps }),
        None => Verdict::unknown(format!("no collapse within {} steps; H1 trivial or too large", budget.0)),
    }
}

struct Collapser {
    dim: Vec<u8>,
    faces: Vec<Vec<u32>>,
    cofaces: Vec<Vec<u32>>,
    alive: Vec<bool>,
    alive_cofaces: Vec<u32>,
    alive_count: usize,
    free: BTreeSet<(Reverse<u8>, u32)>,
}

impl Collapser {
    fn new(x: &FlagComplex) -> Self {
        let cells = x.cliques_idx(None);
        let index: HashMap<&[usize], u32> =
            cells.iter().enumerate().map(|(i, c)| (c.as_slice(), i as u32)).collect();
        let n = cells.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        let mut scratch = Vec::new();
        for (i, c) in cells.iter().enumerate() {
            if c.len() < 2 {
                continue;
            }
            for skip in 0..c.len() {
                scratch.clear();
                scratch.extend(c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                let f = index[scratch.as_slice()];
                faces[i].push(f);
                cofaces[f as usize].push(i as u32);
            }
        }
        let dim: Vec<u8> = cells.iter().map(|c| (c.len() - 1) as u8).collect();
        let alive_cofaces: Vec<u32> = cofaces.iter().map(|c| c.len() as u32).collect();
        let free = (0..n)
            .filter(|&i| alive_cofaces[i] == 1)
            .map(|i| (Reverse(dim[i]), i as u32))
            .collect();
        Collapser { dim, faces, cofaces, alive: vec![true; n], alive_cofaces, alive_count: n, free }
    }

    fn key(&self, i: u32) -> (Reverse<u8>, u32) {
        (Reverse(self.dim[i as usize]), i)
    }

    fn bump(&mut self, f: u32, delta: i32) {
        let fi = f as usize;
        if !self.alive[fi] {
            return;
        }
        if self.alive_cofaces[fi] == 1 {
            self.free.remove(&self.key(f));
        }
        self.alive_cofaces[fi] = (self.alive_cofaces[fi] as i32 + delta) as u32;
        if self.alive_cofaces[fi] == 1 {
            self.free.insert(self.key(f));
        }
    }

    fn partner(&self, t: u32) -> u32 {
        *self.cofaces[t as usize]
            .iter()
            .find(|&&s| self.alive[s as usize])
            .expect("free face has a live coface")
    }

    fn remove(&mut self, t: u32, s: u32) {
        self.free.remove(&self.key(t));
        self.alive[s as usize] = false;
        for f in self.faces[s as usize].clone() {
            self.bump(f, -1);
        }
        self.alive[t as usize] = false;
        for f in self.faces[t as usize].clone() {
            self.bump(f, -1);
        }
        self.alive_count -= 2;
    }

    fn restore(&mut self, t: u32, s: u32) {
        self.alive[t as usize] = true;
        for f in self.faces[t as usize].clone() {
            self.bump(f, 1);
        }
        self.alive[s as usize] = true;
        for f in self.faces[s as usize].clone() {
            self.bump(f, 1);
        }
        // t has exactly one live coface again
        self.free.insert(self.key(t));
        self.alive_count += 2;
    }

    /// Always collapses the first free face (highest dimension, lowest
    /// index). Returns the step count on success.
    fn greedy(&mut self) -> Option<usize> {
        let mut steps = 0;
        while self.alive_count > 1 {
            let &(_, t) = self.free.iter().next()?;
            let s = self.partner(t);
            self.remove(t, s);
            steps += 1;
        }
        Some(steps)
    }

    /// Depth-first search over free-face choices, at most `budget` removals.
    fn search(&mut self, budget: usize) -> Option<usize> {
        let mut spent = 0usize;
        let mut frames: Vec<(Vec<(u32, u32)>, usize)> = Vec::new();
        loop {
            if self.alive_count == 1 {
                return Some(frames.len());
            }
            let choices: Vec<(u32, u32)> =
                self.free.iter().map(|&(_, t)| (t, self.partner(t))).collect();
            frames.push((choices, 0));
            loop {
                let (choices, next) = frames.last_mut()?;
                if *next > 0 {
                    let (t, s) = choices[*next - 1];
                    self.restore(t, s);
                }
                if *next < choices.len() {
                    if spent >= budget {
                        return None;
                    }
                    let (t, s) = choices[*next];
                    *next += 1;
                    spent += 1;
                    self.remove(t, s);
                    break;
                }
                frames.pop();
            }
        }
    }
}

/// First homology over the integers as (rank, torsion coefficients), or
/// `None` when the boundary matrix exceeds [`HOMOLOGY_CELL_CAP`].
pub fn first_homology(x: &FlagComplex) -> Option<(usize, Vec<u64>)> {
    let g = x.graph();
    let edges: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|i| g.nbrs(i).iter().map(move |&j| (i, j as usize)).filter(|&(i, j)| i < j))
        .collect();
    let edge_index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut triangles = Vec::new();
    for &(a, b) in &edges {
        for &c in g.nbrs(b) {
            let c = c as usize;
            if c > b && g.adj_idx(a, c) {
                triangles.push((a, b, c));
            }
        }
    }
    if edges.len().saturating_mul(triangles.len()) > HOMOLOGY_CELL_CAP {
        return None;
    }
    let mut m = vec![vec![0i64; triangles.len()]; edges.len()];
    for (col, &(a, b, c)) in triangles.iter().enumerate() {
        m[edge_index[&(b, c)]][col] += 1;
        m[edge_index[&(a, c)]][col] -= 1;
        m[edge_index[&(a, b)]][col] += 1;
    }
    let diag = smith_diagonal(&mut m);
    let components = g.components().len();
    let cycle_rank = edges.len() + components - g.len();
    let betti1 = cycle_rank - diag.len();
    let torsion = invariant_factors(diag).into_iter().filter(|&d| d > 1).collect();
    Some((betti1, torsion))
}

/// Nonzero diagonal of a diagonal form reached by unimodular row and column
/// operations; the matrix is consumed.
#[allow(clippy::needless_range_loop)]
fn smith_diagonal(m: &mut [Vec<i64>]) -> Vec<u64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry, a unit if there is one
        let mut best: Option<(usize, usize, i64)> = None;
        'scan: for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(_, _, b)| v.abs() < b) {
                    best = Some((i, j, v.abs()));
                    if v.abs() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let f = m[i][t] / p;
                if f != 0 {
                    let (top, rest) = m.split_at_mut(i);
                    for (dst, &src) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *dst -= f * src;
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let f = m[t][j] / p;
                if f != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move a smaller remainder into the pivot position and retry
            let mut small = (t, t, m[t][t].abs());
            for i in t + 1..rows {
                if m[i][t] != 0 && m[i][t].abs() < small.2 {
                    small = (i, t, m[i][t].abs());
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 && m[t][j].abs() < small.2 {
                    small = (t, j, m[t][j].abs());
                }
            }
            m.swap(t, small.0);
            for row in m.iter_mut() {
                row.swap(t, small.1);
            }
        }
        diag.push(m[t][t].unsigned_abs());
        t += 1;
    }
    diag
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors of a diagonal matrix.
fn invariant_factors(mut d: Vec<u64>) -> Vec<u64> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
