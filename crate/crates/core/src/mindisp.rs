//! Checks on minimal displacement sets: isometric embedding, systolicity,
//! extended 5-wheels inside Min, invariant geodesics and thick geodesics.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, Simplex, VertexId, UNREACHABLE};
use crate::conditions::{self, ExtendedWheel5};
use crate::cycles::{self, FullCycle};
use crate::error::{Error, Result};
use crate::isometry::{self, Automorphism, Classification, PathChain};
use crate::topology::OracleBudget;
use crate::verdict::{Ambient, Verdict, Witness};

/// Outcome of comparing distances inside a subcomplex with ambient ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    /// Trusted pairs compared.
    pub pairs: usize,
    /// Largest `d_sub - d_X`; `None` when some pair is disconnected in the
    /// subcomplex.
    pub max_deviation: Option<u32>,
    /// First pair (in vertex order) with a positive deviation.
    pub violation: Option<Witness>,
    /// Pairs where the subcomplex distance was smaller than the ambient one.
    /// Always zero for a genuine subcomplex.
    pub domination_failures: usize,
}

impl EmbeddingReport {
    pub fn is_isometric(&self) -> bool {
        self.max_deviation == Some(0) && self.violation.is_none()
    }

    pub fn verdict(&self) -> Verdict {
        match &self.violation {
            Some(w) => Verdict::no(w.clone()),
            None => Verdict::yes(),
        }
        .with_note(format!(
            "{} pairs, max deviation {}",
            self.pairs,
            self.max_deviation.map_or("unbounded".to_string(), |d| d.to_string())
        ))
    }
}

fn check_subcomplex(x: &FlagComplex, sub: &FlagComplex) -> Result<()> {
    for &v in sub.vertices() {
        if !x.contains(v) {
            return Err(Error::SubcomplexMismatch(format!("vertex {v} not in the ambient complex")));
        }
    }
    let vs = sub.vertices();
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            if x.adjacent(u, v) != sub.adjacent(u, v) {
                return Err(Error::SubcomplexMismatch(format!("{u} {v} is not a full subcomplex edge")));
            }
        }
    }
    Ok(())
}

/// Compares `d_sub(u, v)` with `d_X(u, v)` for every pair of vertices of
/// `sub` that are trusted in `x` at a trusted distance.
pub fn isometric_embedding_check(x: &FlagComplex, sub: &FlagComplex) -> Result<EmbeddingReport> {
    check_subcomplex(x, sub)?;
    let gx = x.graph();
    let gs = sub.graph();
    let verts: Vec<(usize, usize)> = (0..gs.len())
        .filter_map(|s| {
            let i = gx.idx(gs.id(s))?;
            x.trusted_idx(i).then_some((s, i))
        })
        .collect();
    struct Row {
        pairs: usize,
        max: Option<u32>,
        first: Option<Witness>,
        dominated: usize,
    }
    let rows: Vec<Row> = (0..verts.len())
        .into_par_iter()
        .map(|a| {
            let (s, i) = verts[a];
            let dx_row = x.row(i);
            let ds_row = sub.row(s);
            let mut row = Row { pairs: 0, max: Some(0), first: None, dominated: 0 };
            for &(t, j) in &verts[a + 1..] {
                let dx = dx_row[j];
                if dx == UNREACHABLE || !x.distance_trusted(i, j, dx) {
                    continue;
                }
                row.pairs += 1;
                let ds = ds_row[t];
                if ds < dx {
                    row.dominated += 1;
                    continue;
                }
                let dev = if ds == UNREACHABLE { None } else { Some(ds - dx) };
                row.max = match (row.max, dev) {
                    (Some(m), Some(d)) => Some(m.max(d)),
                    _ => None,
                };
                if dev != Some(0) && row.first.is_none() {
                    row.first = Some(Witness::Distance {
                        u: gs.id(s),
                        v: gs.id(t),
                        expected: dx,
                        found: (ds != UNREACHABLE).then_some(ds),
                    });
                }
            }
            row
        })
        .collect();
    let mut report = EmbeddingReport { pairs: 0, max_deviation: Some(0), violation: None, domination_failures: 0 };
    for r in rows {
        report.pairs += r.pairs;
        report.domination_failures += r.dominated;
        report.max_deviation = match (report.max_deviation, r.max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        if report.violation.is_none() {
            report.violation = r.first;
        }
    }
    Ok(report)
}

/// Connected, locally 6-large and simply connected (as far as the oracle can
/// tell).
pub fn min_systolic_check(min: &FlagComplex, budget: OracleBudget) -> Result<Verdict> {
    conditions::is_systolic(min, budget)
}

/// Extended 5-wheels inside a subcomplex, their dominators in the ambient
/// complex, and the full 5-cycles in links of the subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelReport {
    pub wheels: Vec<(ExtendedWheel5, Option<VertexId>)>,
    pub verdict: Verdict,
}

pub fn wheel_domination_in_min(x: &FlagComplex, min: &FlagComplex) -> Result<WheelReport> {
    check_subcomplex(x, min)?;
    let wheels: Vec<(ExtendedWheel5, Option<VertexId>)> = conditions::find_extended_5_wheels(min)
        .into_iter()
        .map(|w| {
            let d = conditions::dominator(x, &w);
            (w, d)
        })
        .collect();
    let summary = wheels
        .iter()
        .map(|(w, d)| match d {
            Some(d) => format!("{w} dominated by {d}"),
            None => format!("{w} undominated"),
        })
        .collect::<Vec<_>>()
        .join("; ");
    let note = if wheels.is_empty() { "no extended 5-wheels".to_string() } else { summary };
    let verdict = if let Some((w, _)) = wheels.iter().find(|(_, d)| d.is_none()) {
        Verdict::no(Witness::Wheel(w.clone()))
    } else {
        match link_five_cycle(min) {
            Some(wit) => Verdict::no(wit),
            None => Verdict::yes(),
        }
    };
    Ok(WheelReport { wheels, verdict: verdict.with_note(note) })
}

fn link_five_cycle(min: &FlagComplex) -> Option<Witness> {
    let mask = min.trust_mask();
    let g = min.graph();
    let simplices = min.cliques_idx(Some(&mask));
    simplices.par_iter().find_map_first(|s| {
        let link = g.induced(&min.link_mask(s));
        let all = vec![true; link.len()];
        let mut found = None;
        cycles::enumerate_idx(&link, &all, 5, &mut |c| {
            if c.len() == 5 {
                found = Some(c.iter().map(|&i| link.id(i)).collect::<Vec<_>>());
                false
            } else {
                true
            }
        });
        found.map(|c| Witness::Cycle {
            ambient: Ambient::Link(Simplex::new(s.iter().map(|&i| g.id(i))).expect("clique")),
            cycle: FullCycle::new(c).into_vertices(),
        })
    })
}

/// Largest number of geodesics tried by [`invariant_geodesic_search`].
pub const GEODESIC_SEARCH_LIMIT: usize = 10_000;

fn all_geodesics(x: &FlagComplex, from: VertexId, to: VertexId, limit: usize) -> Result<Vec<Vec<VertexId>>> {
    let g = x.graph();
    let (i, j) = (g.idx(from).ok_or(Error::UnknownVertex(from))?, g.idx(to).ok_or(Error::UnknownVertex(to))?);
    let back = x.row(j);
    if back[i] == UNREACHABLE {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut path = vec![i];
    fn rec(
        x: &FlagComplex,
        back: &[u32],
        path: &mut Vec<usize>,
        j: usize,
        limit: usize,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if out.len() >= limit {
            return;
        }
        let cur = *path.last().expect("nonempty");
        if cur == j {
            out.push(path.iter().map(|&k| x.graph().id(k)).collect());
            return;
        }
        for &n in x.graph().nbrs(cur) {
            let n = n as usize;
            if back[n] + 1 == back[cur] {
                path.push(n);
                rec(x, back, path, j, limit, out);
                path.pop();
            }
        }
    }
    rec(x, &back, &mut path, j, limit, &mut out);
    Ok(out)
}

/// Looks for a geodesic `β` from `start` to `h^n(start)` whose translates
/// under `h^n` form a geodesic on every trusted index pair. Yes carries the
/// chain; Unknown means none was found in the window.
pub fn invariant_geodesic_search(
    x: &FlagComplex,
    h: &Automorphism,
    n: i64,
    start: VertexId,
) -> Result<Verdict> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("power {n} < 1")));
    }
    let hn = h.power(n);
    let p = isometry::displacement_profile(x, &hn)?;
    if p.minimum == 0 {
        return Err(Error::ZeroTranslation);
    }
    if p.values.get(&start) != Some(&p.minimum) {
        return Err(Error::NotInMinSet(start));
    }
    let target = hn.apply(start).ok_or(Error::Undefined(start))?;
    let candidates = all_geodesics(x, start, target, GEODESIC_SEARCH_LIMIT)?;
    let tried = candidates.len();
    for beta in candidates {
        let chain = isometry::maximal_chain(x, &hn, start, Some(beta))?;
        if conditions_hold(x, &chain) {
            return Ok(Verdict::yes_with(chain.to_witness())
                .with_note(format!("h^{n}, {} chain vertices", chain.vertices.len())));
        }
    }
    Ok(Verdict::unknown(format!("NotFoundInWindow: {tried} geodesics tried for h^{n}")))
}

fn conditions_hold(x: &FlagComplex, chain: &PathChain) -> bool {
    let injective = {
        let mut v = chain.vertices.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    };
    injective && isometry::verify_chain(x, chain, None).is_yes()
}

/// An embedding of `A_k` on an index window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickGeodesicWitness {
    pub k: u32,
    pub first_index: i64,
    pub vertices: Vec<VertexId>,
}

impl ThickGeodesicWitness {
    pub fn to_witness(&self) -> Witness {
        Witness::Thick { k: self.k, first_index: self.first_index, vertices: self.vertices.clone() }
    }
}

/// Checks the `A_k` conditions on the trusted part of the window:
/// injectivity, adjacency exactly for index gaps `1..=k`, and exact distance
/// `j` for gaps `j·k` whenever that distance is trusted.
pub fn verify_thick_geodesic(x: &FlagComplex, w: &ThickGeodesicWitness) -> Result<Verdict> {
    if w.k == 0 {
        return Err(Error::InvalidParameter("thick geodesic needs k >= 1".into()));
    }
    let g = x.graph();
    let idx: Vec<usize> = w
        .vertices
        .iter()
        .map(|&v| g.idx(v).ok_or(Error::UnknownVertex(v)))
        .collect::<Result<_>>()?;
    let k = w.k as usize;
    let at = |a: usize| w.first_index + a as i64;
    let mut pairs = 0usize;
    for a in 0..idx.len() {
        if !x.trusted_idx(idx[a]) {
            continue;
        }
        let row = x.row(idx[a]);
        for b in a + 1..idx.len() {
            let (i, j) = (idx[a], idx[b]);
            if !x.trusted_idx(j) {
                continue;
            }
            let pair = |found| Witness::ChainPair { a: at(a), b: at(b), u: g.id(i), v: g.id(j), found };
            if i == j {
                return Ok(Verdict::no(pair(0)).with_note("not injective"));
            }
            if g.adj_idx(i, j) != (b - a <= k) {
                return Ok(Verdict::no(pair(row[j])).with_note("adjacency differs from index gap"));
            }
            if (b - a) % k == 0 {
                let want = ((b - a) / k) as u32;
                let d = row[j];
                if !x.distance_trusted(i, j, d) && want > x.margin().unwrap_or(u32::MAX) {
                    continue;
                }
                pairs += 1;
                if d != want {
                    return Ok(Verdict::no(pair(d)).with_note("distance differs from index gap over k"));
                }
            }
        }
    }
    Ok(Verdict::yes().with_note(format!("{pairs} distance pairs")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dichotomy {
    Elliptic(Simplex),
    Thick { witness: ThickGeodesicWitness, translation_length: u32 },
    NotFoundInWindow { translation_length: Option<u32>, reason: String },
}

impl fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dichotomy::Elliptic(s) => write!(f, "Elliptic [{s}]"),
            Dichotomy::Thick { witness, translation_length } => {
                write!(f, "Thick k={} |h|={translation_length} ({} vertices)", witness.k, witness.vertices.len())
            }
            Dichotomy::NotFoundInWindow { reason, .. } => write!(f, "NotFoundInWindow ({reason})"),
        }
    }
}

impl Dichotomy {
    pub fn verdict(&self) -> Verdict {
        match self {
            Dichotomy::Elliptic(s) => Verdict::yes_with(Witness::Clique(s.clone())).with_note("elliptic"),
            Dichotomy::Thick { witness, translation_length } => Verdict::yes_with(witness.to_witness())
                .with_note(format!("thick geodesic, |h|={translation_length}")),
            Dichotomy::NotFoundInWindow { reason, .. } => Verdict::unknown(format!("NotFoundInWindow: {reason}")),
        }
    }
}

/// Trusted stretch of the chain around index 0.
fn trusted_core(x: &FlagComplex, chain: &PathChain) -> PathChain {
    let trusted = |a: i64| chain.get(a).is_some_and(|v| x.is_trusted(v));
    let mut lo = 0;
    while lo > chain.first_index && trusted(lo - 1) {
        lo -= 1;
    }
    let mut hi = 0;
    while hi < chain.last_index() && trusted(hi + 1) {
        hi += 1;
    }
    let start = (lo - chain.first_index) as usize;
    let end = (hi - chain.first_index) as usize;
    PathChain {
        first_index: lo,
        vertices: chain.vertices[start..=end].to_vec(),
        alpha: chain.alpha.clone(),
        period: chain.period,
    }
}

/// Elliptic with an invariant simplex, or a thick geodesic built from the
/// chain through a minimal-displacement vertex, with `k` fitted as the
/// largest index gap up to which chain vertices stay adjacent.
pub fn dichotomy_report(x: &FlagComplex, h: &Automorphism) -> Result<Dichotomy> {
    let class = isometry::classify(x, h)?;
    let length = match class {
        Classification::Elliptic(s) => return Ok(Dichotomy::Elliptic(s)),
        Classification::Hyperbolic { translation_length } => translation_length,
        Classification::UnknownOnWindow { translation_length: Some(l) } => l,
        Classification::UnknownOnWindow { translation_length: None } => {
            return Ok(Dichotomy::NotFoundInWindow {
                translation_length: None,
                reason: "no trusted displacement".into(),
            })
        }
    };
    let p = isometry::displacement_profile(x, h)?;
    let start = isometry::chain_start(x, &p)?;
    let chain = trusted_core(x, &isometry::maximal_chain(x, h, start, None)?);
    let not_found = |reason: String| Dichotomy::NotFoundInWindow { translation_length: Some(length), reason };
    if chain.vertices.len() < 2 {
        return Ok(not_found("chain too short".into()));
    }
    let n = chain.vertices.len();
    let mut k = 0;
    while k + 1 < n && x.adjacent(chain.vertices[0], chain.vertices[k + 1]) {
        k += 1;
    }
    if k == 0 {
        return Ok(not_found("consecutive chain vertices are not adjacent".into()));
    }
    let witness = ThickGeodesicWitness { k: k as u32, first_index: chain.first_index, vertices: chain.vertices.clone() };
    let verdict = verify_thick_geodesic(x, &witness)?;
    if !verdict.is_yes() {
        return Ok(not_found(format!("k={k} fails: {verdict}")));
    }
    // h shifts the witness by |h|
    let l = length as i64;
    for a in chain.indices() {
        let (Some(u), Some(v)) = (chain.get(a), chain.get(a + l)) else { continue };
        if h.apply(u) != Some(v) {
            return Ok(not_found(format!("h does not shift index {a} by {l}")));
        }
    }
    Ok(Dichotomy::Thick { witness, translation_length: length })
}
