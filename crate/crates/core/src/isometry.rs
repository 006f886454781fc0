//! Simplicial automorphisms, displacement, translation length, invariant
//! simplices, minimal displacement sets and periodic geodesic chains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, Simplex, VertexId, UNREACHABLE};
use crate::error::{Error, Result};
use crate::verdict::{Verdict, Witness};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    /// Defined on every vertex of the complex.
    Total,
    /// Defined on a subset, typically the part of a window whose image stays
    /// inside the window.
    Partial,
}

/// An injective vertex map, meant to be a simplicial isometry on its domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automorphism {
    forward: BTreeMap<VertexId, VertexId>,
    inverse: BTreeMap<VertexId, VertexId>,
    domain: Domain,
}

impl Automorphism {
    pub fn new(pairs: impl IntoIterator<Item = (VertexId, VertexId)>, domain: Domain) -> Result<Self> {
        let mut forward = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        for (u, v) in pairs {
            if let Some(&old) = forward.get(&u) {
                if old != v {
                    return Err(Error::InvalidParameter(format!("vertex {u} mapped twice")));
                }
                continue;
            }
            if let Some(&w) = inverse.get(&v) {
                return Err(Error::NotInjective(w, u, v));
            }
            forward.insert(u, v);
            inverse.insert(v, u);
        }
        Ok(Automorphism { forward, inverse, domain })
    }

    pub fn identity(x: &FlagComplex) -> Self {
        Automorphism::new(x.vertices().iter().map(|&v| (v, v)), Domain::Total).expect("identity")
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_total(&self) -> bool {
        self.domain == Domain::Total
    }

    pub fn apply(&self, v: VertexId) -> Option<VertexId> {
        self.forward.get(&v).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.forward.iter().map(|(&u, &v)| (u, v))
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            domain: self.domain,
        }
    }

    /// `self ∘ other`, defined where `other` is defined and `self` is defined
    /// on the image.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let pairs = other
            .forward
            .iter()
            .filter_map(|(&u, &v)| self.apply(v).map(|w| (u, w)));
        let domain = if self.is_total() && other.is_total() { Domain::Total } else { Domain::Partial };
        Automorphism::new(pairs, domain).expect("composition of injective maps is injective")
    }

    /// `h^n`; negative powers use the inverse, `h^0` is the identity on the
    /// domain.
    pub fn power(&self, n: i64) -> Automorphism {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Automorphism::new(self.forward.keys().map(|&v| (v, v)), self.domain)
            .expect("identity on domain");
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    /// `h^n(v)` by repeated application; `None` once it leaves the domain.
    pub fn iterate(&self, v: VertexId, n: i64) -> Option<VertexId> {
        let map = if n < 0 { &self.inverse } else { &self.forward };
        let mut cur = v;
        for _ in 0..n.unsigned_abs() {
            cur = *map.get(&cur)?;
        }
        Some(cur)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v) in self.pairs() {
            writeln!(f, "map {u} {v}")?;
        }
        Ok(())
    }
}

/// Yes iff `h` is injective on its domain, total when it claims to be, and
/// preserves adjacency and non-adjacency between domain vertices.
pub fn validate_automorphism(x: &FlagComplex, h: &Automorphism) -> Result<Verdict> {
    for (u, v) in h.pairs() {
        if !x.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !x.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if h.is_total() {
        if let Some(&v) = x.vertices().iter().find(|&&v| h.apply(v).is_none()) {
            return Err(Error::Undefined(v));
        }
    }
    let g = x.graph();
    // edges go to edges
    for (u, hu) in h.pairs() {
        for v in g.neighbors(u)? {
            if let Some(hv) = h.apply(v) {
                if !g.adjacent(hu, hv) {
                    return Ok(Verdict::no(Witness::Adjacency { u, v, hu, hv }));
                }
            }
        }
    }
    // equal degree counts inside domain and image force non-edges to
    // non-edges; otherwise locate one
    for (u, hu) in h.pairs() {
        for hv in g.neighbors(hu)? {
            if let Some(v) = h.inverse.get(&hv).copied() {
                if !g.adjacent(u, v) {
                    return Ok(Verdict::no(Witness::Adjacency { u, v, hu, hv }));
                }
            }
        }
    }
    Ok(Verdict::yes().with_note(format!("{} vertices", h.len())))
}

/// Per-vertex displacement over the vertices where it is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementProfile {
    pub values: BTreeMap<VertexId, u32>,
    pub minimum: u32,
    pub argmin: Vec<VertexId>,
}

impl DisplacementProfile {
    pub fn translation_length(&self) -> u32 {
        self.minimum
    }
}

/// `d(v, h(v))` for every `v` in the domain; on windows only where `v`,
/// `h(v)` are trusted and the distance is within the margin.
pub fn displacement_profile(x: &FlagComplex, h: &Automorphism) -> Result<DisplacementProfile> {
    let g = x.graph();
    let mut scope = Vec::new();
    for (u, hu) in h.pairs() {
        let i = g.idx(u).ok_or(Error::UnknownVertex(u))?;
        let j = g.idx(hu).ok_or(Error::UnknownVertex(hu))?;
        if x.trusted_idx(i) && x.trusted_idx(j) {
            scope.push((u, i, j));
        }
    }
    let values: Vec<(VertexId, u32)> = scope
        .par_iter()
        .filter_map(|&(u, i, j)| {
            let d = x.dist_idx(i, j);
            (d != UNREACHABLE && x.distance_trusted(i, j, d)).then_some((u, d))
        })
        .collect();
    let minimum = values.iter().map(|&(_, d)| d).min().ok_or(Error::EmptyScope)?;
    let argmin = values.iter().filter(|&&(_, d)| d == minimum).map(|&(v, _)| v).collect();
    Ok(DisplacementProfile { values: values.into_iter().collect(), minimum, argmin })
}

/// Orbits of `h`; on partial maps only the orbits that close up inside the
/// domain. Each orbit is sorted; orbits are ordered by least vertex.
pub fn closed_orbits(h: &Automorphism) -> Vec<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (start, _) in h.pairs() {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = start;
        let closed = loop {
            match h.apply(cur) {
                Some(n) if n == start => break true,
                Some(n) if seen.contains(&n) || orbit.contains(&n) => break false,
                Some(n) => {
                    orbit.push(n);
                    cur = n;
                }
                None => break false,
            }
        };
        seen.extend(orbit.iter().copied());
        if closed {
            orbit.sort_unstable();
            out.push(orbit);
        }
    }
    out.sort();
    out
}

/// A simplex σ with `h(σ) = σ` setwise. Any invariant simplex contains a
/// whole orbit, and that orbit is itself a simplex, so scanning orbits is
/// exhaustive. On partial maps a miss is Unknown rather than No.
pub fn find_invariant_simplex(x: &FlagComplex, h: &Automorphism) -> Result<Verdict> {
    let orbits = closed_orbits(h);
    for o in &orbits {
        if o.iter().any(|&v| !x.contains(v)) {
            return Err(Error::UnknownVertex(o[0]));
        }
        if x.is_clique(o) && o.iter().all(|&v| x.is_trusted(v)) {
            return Ok(Verdict::yes_with(Witness::Clique(Simplex::new(o.iter().copied())?)));
        }
    }
    if h.is_total() && !x.is_window() {
        Ok(Verdict {
            answer: crate::verdict::Answer::No,
            witness: None,
            note: Some(format!("{} orbits, none a simplex", orbits.len())),
        })
    } else {
        Ok(Verdict::unknown(format!("{} closed orbits scanned on a partial map", orbits.len())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Elliptic(Simplex),
    Hyperbolic { translation_length: u32 },
    /// No invariant simplex among the complete orbits of a partial map; the
    /// translation length is the trusted estimate when one exists.
    UnknownOnWindow { translation_length: Option<u32> },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Elliptic(s) => write!(f, "Elliptic [{s}]"),
            Classification::Hyperbolic { translation_length } => {
                write!(f, "Hyperbolic |h|={translation_length}")
            }
            Classification::UnknownOnWindow { translation_length: Some(l) } => {
                write!(f, "UnknownOnWindow |h|={l}")
            }
            Classification::UnknownOnWindow { translation_length: None } => {
                write!(f, "UnknownOnWindow")
            }
        }
    }
}

pub fn classify(x: &FlagComplex, h: &Automorphism) -> Result<Classification> {
    let inv = find_invariant_simplex(x, h)?;
    if let Some(Witness::Clique(s)) = inv.witness {
        return Ok(Classification::Elliptic(s));
    }
    let length = displacement_profile(x, h).ok().map(|p| p.minimum);
    if inv.is_no() {
        let translation_length = length.ok_or(Error::EmptyScope)?;
        Ok(Classification::Hyperbolic { translation_length })
    } else {
        Ok(Classification::UnknownOnWindow { translation_length: length })
    }
}

/// Full subcomplex on the vertices of minimal displacement.
pub fn min_set(x: &FlagComplex, h: &Automorphism) -> Result<FlagComplex> {
    let p = displacement_profile(x, h)?;
    if p.minimum == 0 {
        return Err(Error::ZeroTranslation);
    }
    x.span(&p.argmin)
}

/// `h` maps every Min vertex it is defined on (with image in scope) back
/// into Min.
pub fn min_invariance_check(x: &FlagComplex, h: &Automorphism) -> Result<Verdict> {
    let p = displacement_profile(x, h)?;
    let argmin: BTreeSet<VertexId> = p.argmin.iter().copied().collect();
    for &v in &p.argmin {
        if let Some(hv) = h.apply(v) {
            if let Some(&d) = p.values.get(&hv) {
                if d != p.minimum {
                    return Ok(Verdict::no(Witness::Displacement { v: hv, value: d, minimum: p.minimum }));
                }
            }
        }
    }
    Ok(Verdict::yes().with_note(format!("{} Min vertices", argmin.len())))
}

/// Recomputes the displacement inside `Y = Min(h)` with distances measured
/// in `Y`; Yes iff every vertex of `Y` (whose image lies in `Y`) is displaced
/// by exactly `|h|`.
pub fn min_idempotence_check(x: &FlagComplex, h: &Automorphism) -> Result<Verdict> {
    let p = displacement_profile(x, h)?;
    if p.minimum == 0 {
        return Err(Error::ZeroTranslation);
    }
    let y = x.span(&p.argmin)?;
    let mut checked = 0usize;
    for &v in &p.argmin {
        let Some(hv) = h.apply(v) else { continue };
        if !y.contains(hv) {
            continue;
        }
        checked += 1;
        let d = y.distance(v, hv)?.unwrap_or(UNREACHABLE);
        if d != p.minimum {
            return Ok(Verdict::no(Witness::Displacement { v, value: d, minimum: p.minimum }));
        }
    }
    if checked == 0 {
        return Err(Error::EmptyScope);
    }
    Ok(Verdict::yes().with_note(format!("{checked} vertices of Min re-checked")))
}

/// An integer-indexed vertex sequence built by translating one geodesic
/// segment: `γ(j·L + t) = h^j(α_t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathChain {
    pub first_index: i64,
    pub vertices: Vec<VertexId>,
    pub alpha: Vec<VertexId>,
    pub period: u32,
}

impl PathChain {
    pub fn last_index(&self) -> i64 {
        self.first_index + self.vertices.len() as i64 - 1
    }

    pub fn get(&self, a: i64) -> Option<VertexId> {
        let k = a.checked_sub(self.first_index)?;
        usize::try_from(k).ok().and_then(|k| self.vertices.get(k).copied())
    }

    pub fn indices(&self) -> RangeInclusive<i64> {
        self.first_index..=self.last_index()
    }

    pub fn to_witness(&self) -> Witness {
        Witness::Chain { first_index: self.first_index, vertices: self.vertices.clone() }
    }
}

fn check_alpha(x: &FlagComplex, h: &Automorphism, v: VertexId, alpha: &[VertexId], len: u32) -> Result<VertexId> {
    let hv = h.apply(v).ok_or(Error::Undefined(v))?;
    let bad = |reason: &str| Error::NotGeodesic { from: v, to: hv, reason: reason.into() };
    if alpha.first() != Some(&v) || alpha.last() != Some(&hv) {
        return Err(bad("wrong endpoints"));
    }
    if alpha.len() != len as usize + 1 {
        return Err(bad("length differs from the translation length"));
    }
    if alpha.windows(2).any(|p| !x.adjacent(p[0], p[1])) {
        return Err(bad("consecutive vertices not adjacent"));
    }
    if x.distance(v, hv)? != Some(len) {
        return Err(bad("endpoints are closer than the path"));
    }
    Ok(hv)
}

fn block(h: &Automorphism, alpha: &[VertexId], j: i64) -> Option<Vec<VertexId>> {
    alpha.iter().map(|&a| h.iterate(a, j)).collect()
}

fn assemble(h: &Automorphism, alpha: &[VertexId], j0: i64, j1: i64, period: u32) -> Option<PathChain> {
    let body = &alpha[..alpha.len() - 1];
    let mut vertices = Vec::new();
    for j in j0..=j1 {
        vertices.extend(block(h, body, j)?);
    }
    vertices.push(h.iterate(*alpha.last()?, j1)?);
    Some(PathChain {
        first_index: j0 * period as i64,
        vertices,
        alpha: alpha.to_vec(),
        period,
    })
}

/// The concatenation of `h^j(α)` for `j` in `blocks`. `v` must lie in Min,
/// and `α` defaults to the lexicographically least geodesic to `h(v)`.
pub fn periodic_path(
    x: &FlagComplex,
    h: &Automorphism,
    v: VertexId,
    alpha: Option<Vec<VertexId>>,
    blocks: RangeInclusive<i64>,
) -> Result<PathChain> {
    let p = displacement_profile(x, h)?;
    if p.minimum == 0 {
        return Err(Error::ZeroTranslation);
    }
    if p.values.get(&v) != Some(&p.minimum) {
        return Err(Error::NotInMinSet(v));
    }
    let hv = h.apply(v).ok_or(Error::Undefined(v))?;
    let alpha = match alpha {
        Some(a) => a,
        None => x.geodesic(v, hv)?.ok_or(Error::Disconnected)?,
    };
    check_alpha(x, h, v, &alpha, p.minimum)?;
    assemble(h, &alpha, *blocks.start(), *blocks.end(), p.minimum)
        .ok_or(Error::InvalidParameter("chain leaves the domain of h".into()))
}

/// Longest chain around block 0 that stays inside the domain of `h`.
pub fn maximal_chain(
    x: &FlagComplex,
    h: &Automorphism,
    v: VertexId,
    alpha: Option<Vec<VertexId>>,
) -> Result<PathChain> {
    let p = displacement_profile(x, h)?;
    if p.minimum == 0 {
        return Err(Error::ZeroTranslation);
    }
    if p.values.get(&v) != Some(&p.minimum) {
        return Err(Error::NotInMinSet(v));
    }
    let hv = h.apply(v).ok_or(Error::Undefined(v))?;
    let alpha = match alpha {
        Some(a) => a,
        None => x.geodesic(v, hv)?.ok_or(Error::Disconnected)?,
    };
    check_alpha(x, h, v, &alpha, p.minimum)?;
    let cap = x.len() as i64 + 1;
    let defined = |j: i64| assemble(h, &alpha, j, j, p.minimum).is_some();
    let mut j1 = 0;
    while j1 < cap && defined(j1 + 1) {
        j1 += 1;
    }
    let mut j0 = 0;
    while -j0 < cap && defined(j0 - 1) {
        j0 -= 1;
    }
    assemble(h, &alpha, j0, j1, p.minimum).ok_or(Error::Undefined(v))
}

/// Minimal-displacement vertex used for chains: closest to the basepoint on
/// windows, least id otherwise.
pub fn chain_start(x: &FlagComplex, p: &DisplacementProfile) -> Result<VertexId> {
    match x.basepoint() {
        Some(b) => p
            .argmin
            .iter()
            .copied()
            .min_by_key(|&v| (x.distance(b, v).ok().flatten().unwrap_or(UNREACHABLE), v))
            .ok_or(Error::EmptyScope),
        None => p.argmin.first().copied().ok_or(Error::EmptyScope),
    }
}

/// Checks `d(γ(a), γ(b)) = |a - b|` for index pairs with gap at most
/// `max_gap` (every pair when `None`), skipping untrusted distances.
pub fn verify_chain(x: &FlagComplex, chain: &PathChain, max_gap: Option<u32>) -> Verdict {
    let g = x.graph();
    let idx: Vec<Option<usize>> = chain.vertices.iter().map(|&v| g.idx(v)).collect();
    let n = idx.len();
    let rows: Vec<(usize, Option<Witness>, usize)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut count = 0;
            let Some(i) = idx[a].filter(|&i| x.trusted_idx(i)) else { return (a, None, 0) };
            let end = match max_gap {
                Some(l) => (a + l as usize + 1).min(n),
                None => n,
            };
            let row = x.row(i);
            for (b, jb) in idx.iter().enumerate().take(end).skip(a + 1) {
                let Some(j) = jb.filter(|&j| x.trusted_idx(j)) else { continue };
                let d = row[j];
                let gap = (b - a) as u32;
                if !x.distance_trusted(i, j, d) && gap > x.margin().unwrap_or(u32::MAX) {
                    continue;
                }
                // an untrusted value with a trusted gap exceeds the margin, so
                // the parent distance exceeds the gap as well
                count += 1;
                if d as usize != b - a {
                    let w = Witness::ChainPair {
                        a: chain.first_index + a as i64,
                        b: chain.first_index + b as i64,
                        u: g.id(i),
                        v: g.id(j),
                        found: d,
                    };
                    return (a, Some(w), count);
                }
            }
            (a, None, count)
        })
        .collect();
    let pairs: usize = rows.iter().map(|r| r.2).sum();
    match rows.into_iter().find_map(|r| r.1) {
        Some(w) => Verdict::no(w),
        None => Verdict::yes().with_note(format!("{pairs} trusted pairs")),
    }
}

/// Yes iff the chain is an `L`-geodesic on every trusted index pair.
pub fn verify_lh_geodesic(x: &FlagComplex, chain: &PathChain, l: u32) -> Verdict {
    verify_chain(x, chain, Some(l))
}

/// Every chain vertex whose displacement is in scope lies in Min.
pub fn chain_in_min(chain: &PathChain, p: &DisplacementProfile) -> Verdict {
    for &v in &chain.vertices {
        if let Some(&d) = p.values.get(&v) {
            if d != p.minimum {
                return Verdict::no(Witness::Displacement { v, value: d, minimum: p.minimum });
            }
        }
    }
    Verdict::yes()
}

/// All automorphisms of a finite complex, up to `limit` of them, by
/// backtracking over a breadth-first vertex order.
pub fn enumerate_automorphisms(x: &FlagComplex, limit: usize) -> Vec<Automorphism> {
    let g = x.graph();
    let n = g.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let i = order[head];
            head += 1;
            for &j in g.nbrs(i) {
                if !placed[j as usize] {
                    placed[j as usize] = true;
                    order.push(j as usize);
                }
            }
        }
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    backtrack(x, &order, 0, &mut image, &mut used, &mut out, limit);
    out
}

fn backtrack(
    x: &FlagComplex,
    order: &[usize],
    k: usize,
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Automorphism>,
    limit: usize,
) {
    let g = x.graph();
    if out.len() >= limit {
        return;
    }
    if k == order.len() {
        let pairs = (0..image.len()).map(|i| (g.id(i), g.id(image[i])));
        out.push(Automorphism::new(pairs, Domain::Total).expect("bijection"));
        return;
    }
    let v = order[k];
    for w in 0..g.len() {
        if used[w] || g.nbrs(w).len() != g.nbrs(v).len() {
            continue;
        }
        let consistent = order[..k]
            .iter()
            .all(|&u| g.adj_idx(u, v) == g.adj_idx(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        backtrack(x, order, k + 1, image, used, out, limit);
        used[w] = false;
        image[v] = usize::MAX;
    }
}
