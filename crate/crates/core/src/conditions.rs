//! Local and global curvature conditions: largeness, the triangle and
//! quadrangle conditions, extended 5-wheels, `SD_n`, and the weakly systolic
//! and systolic verdicts.
//!
//! On window complexes every quantifier ranges over trusted vertices, and
//! every distance a premise relies on must be within the margin.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{FlagComplex, Graph, Simplex, VertexId, UNREACHABLE};
use crate::cycles::{self, FullCycle};
use crate::error::{Error, Result};
use crate::topology::{self, OracleBudget};
use crate::verdict::{Ambient, Answer, Verdict, Witness};

/// A full 5-wheel `(center; rim)` plus an apex adjacent to `rim[0]` and
/// `rim[1]` only.
///
/// The rim is rotated so the apex edge comes first and oriented so that
/// `rim[0] < rim[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedWheel5 {
    pub center: VertexId,
    pub rim: [VertexId; 5],
    pub apex: VertexId,
}

impl ExtendedWheel5 {
    pub fn vertices(&self) -> [VertexId; 7] {
        let r = self.rim;
        [self.center, r[0], r[1], r[2], r[3], r[4], self.apex]
    }

    fn sort_key(&self) -> (VertexId, FullCycle, VertexId) {
        (self.center, FullCycle::new(self.rim.to_vec()), self.apex)
    }
}

impl fmt::Display for ExtendedWheel5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rim;
        write!(
            f,
            "wheel {}; {} {} {} {} {}; {}",
            self.center, r[0], r[1], r[2], r[3], r[4], self.apex
        )
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeakSystolicMode {
    /// Weakly modular 1-skeleton without full 4-cycles.
    #[default]
    Graph,
    /// `SD_n(v)` for every vertex and every relevant `n`.
    Sd,
    /// Simply connected, extended 5-wheel condition, no full 4-cycles;
    /// cross-reported against the other two.
    Composite,
}

impl std::str::FromStr for WeakSystolicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(WeakSystolicMode::Graph),
            "sd" => Ok(WeakSystolicMode::Sd),
            "composite" => Ok(WeakSystolicMode::Composite),
            other => Err(Error::InvalidParameter(format!("unknown mode {other}"))),
        }
    }
}

impl fmt::Display for WeakSystolicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeakSystolicMode::Graph => "graph",
            WeakSystolicMode::Sd => "sd",
            WeakSystolicMode::Composite => "composite",
        })
    }
}

fn idx_cycle(x: &FlagComplex, ambient: Ambient, c: &[usize]) -> Witness {
    let cycle = FullCycle::new(c.iter().map(|&i| x.graph().id(i)).collect());
    Witness::Cycle { ambient, cycle: cycle.into_vertices() }
}

fn simplex_of(x: &FlagComplex, idx: &[usize]) -> Simplex {
    Simplex::new(idx.iter().map(|&i| x.graph().id(i))).expect("nonempty clique")
}

fn check_k(k: usize) -> Result<()> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("k = {k} < 4")));
    }
    Ok(())
}

/// Small graph on the link vertices of a clique, keeping parent ids.
fn link_graph(x: &FlagComplex, idx: &[usize]) -> Graph {
    let keep = x.link_mask(idx);
    x.graph().induced(&keep)
}

/// Yes iff `sys(x) >= k` and `sys(x_σ) >= k` for every simplex σ.
pub fn is_k_large(x: &FlagComplex, k: usize) -> Result<Verdict> {
    check_k(k)?;
    let mask = x.trust_mask();
    if let Some(c) = cycles::hole_below(x.graph(), &mask, k) {
        return Ok(Verdict::no(idx_cycle(x, Ambient::Complex, &c)));
    }
    Ok(links_k_large(x, k))
}

/// Yes iff the link of every (trusted) simplex is k-large.
pub fn is_locally_k_large(x: &FlagComplex, k: usize) -> Result<Verdict> {
    check_k(k)?;
    Ok(links_k_large(x, k))
}

fn links_k_large(x: &FlagComplex, k: usize) -> Verdict {
    let mask = x.trust_mask();
    let simplices = x.cliques_idx(Some(&mask));
    let hit = simplices.par_iter().find_map_first(|s| {
        let link = link_graph(x, s);
        let all = vec![true; link.len()];
        cycles::hole_below(&link, &all, k).map(|c| {
            let cycle = FullCycle::new(c.iter().map(|&i| link.id(i)).collect());
            Witness::Cycle { ambient: Ambient::Link(simplex_of(x, s)), cycle: cycle.into_vertices() }
        })
    });
    match hit {
        Some(w) => Verdict::no(w),
        None => Verdict::yes().with_note(format!("{} simplices", simplices.len())),
    }
}

fn trusted_sources(x: &FlagComplex) -> Vec<usize> {
    (0..x.len()).filter(|&i| x.trusted_idx(i)).collect()
}

fn within_margin(x: &FlagComplex, d: u32) -> bool {
    x.margin().is_none_or(|m| d <= m)
}

/// Triangle condition: for `1 = d(v, w) < d(u, v) = d(u, w)` some common
/// neighbour `x` of `v`, `w` has `d(u, x) = d(u, v) - 1`.
pub fn triangle_condition(x: &FlagComplex) -> Verdict {
    let g = x.graph();
    let sources = trusted_sources(x);
    let hit = sources.par_iter().find_map_first(|&u| {
        let row = x.row(u);
        for v in 0..g.len() {
            if !x.trusted_idx(v) {
                continue;
            }
            let d = row[v];
            if d < 2 || d == UNREACHABLE || !within_margin(x, d) {
                continue;
            }
            for &w in g.nbrs(v) {
                let w = w as usize;
                if w <= v || !x.trusted_idx(w) || row[w] != d {
                    continue;
                }
                let ok = g.nbrs(v).iter().any(|&c| {
                    let c = c as usize;
                    row[c] == d - 1 && g.adj_idx(c, w)
                });
                if !ok {
                    return Some(Witness::Triangle {
                        u: g.id(u),
                        v: g.id(v),
                        w: g.id(w),
                        distance: d,
                    });
                }
            }
        }
        None
    });
    match hit {
        Some(w) => Verdict::no(w),
        None => Verdict::yes().with_note(format!("{} sources", sources.len())),
    }
}

/// Quadrangle condition: for `z ~ v, w`, `d(v, w) = 2` and
/// `2 <= d(u, v) = d(u, w) = d(u, z) - 1`, some common neighbour `x` of `v`, `w`
/// has `d(u, x) = d(u, v) - 1`.
pub fn quadrangle_condition(x: &FlagComplex) -> Verdict {
    let g = x.graph();
    let sources = trusted_sources(x);
    let hit = sources.par_iter().find_map_first(|&u| {
        let row = x.row(u);
        for z in 0..g.len() {
            if !x.trusted_idx(z) {
                continue;
            }
            let dz = row[z];
            if dz < 3 || dz == UNREACHABLE || !within_margin(x, dz) {
                continue;
            }
            let d = dz - 1;
            let below: Vec<usize> = g
                .nbrs(z)
                .iter()
                .map(|&v| v as usize)
                .filter(|&v| row[v] == d && x.trusted_idx(v))
                .collect();
            for (a, &v) in below.iter().enumerate() {
                for &w in &below[a + 1..] {
                    if g.adj_idx(v, w) {
                        continue;
                    }
                    let ok = g.nbrs(v).iter().any(|&c| {
                        let c = c as usize;
                        row[c] == d - 1 && g.adj_idx(c, w)
                    });
                    if !ok {
                        return Some(Witness::Quadrangle {
                            u: g.id(u),
                            v: g.id(v),
                            w: g.id(w),
                            z: g.id(z),
                            distance: d,
                        });
                    }
                }
            }
        }
        None
    });
    match hit {
        Some(w) => Verdict::no(w),
        None => Verdict::yes().with_note(format!("{} sources", sources.len())),
    }
}

/// Conjunction of the triangle and quadrangle conditions.
pub fn is_weakly_modular(x: &FlagComplex) -> Verdict {
    let tc = triangle_condition(x);
    if tc.is_no() {
        return tc;
    }
    quadrangle_condition(x)
}

/// Yes iff no full 4-cycle exists among trusted vertices.
pub fn no_full_4_cycle(x: &FlagComplex) -> Verdict {
    match cycles::full_4_cycle(x) {
        Some(c) => Verdict::no(Witness::Cycle { ambient: Ambient::Complex, cycle: c.into_vertices() }),
        None => Verdict::yes(),
    }
}

/// All extended 5-wheels on trusted vertices, sorted by center, canonical
/// rim and apex.
pub fn find_extended_5_wheels(x: &FlagComplex) -> Vec<ExtendedWheel5> {
    let g = x.graph();
    let centers = trusted_sources(x);
    let mut out: Vec<ExtendedWheel5> = centers
        .par_iter()
        .flat_map_iter(|&c| wheels_at(x, c))
        .collect();
    out.sort_by_key(|w| w.sort_key());
    let _ = g;
    out
}

fn wheels_at(x: &FlagComplex, c: usize) -> Vec<ExtendedWheel5> {
    let g = x.graph();
    let mut mask = vec![false; g.len()];
    for &n in g.nbrs(c) {
        if x.trusted_idx(n as usize) {
            mask[n as usize] = true;
        }
    }
    let mut rims: Vec<Vec<usize>> = Vec::new();
    cycles::enumerate_idx(g, &mask, 5, &mut |cyc| {
        if cyc.len() == 5 {
            rims.push(cyc.to_vec());
        }
        true
    });
    let mut out = Vec::new();
    for rim in rims {
        for e in 0..5 {
            let (p, q) = (rim[e], rim[(e + 1) % 5]);
            let others = [rim[(e + 2) % 5], rim[(e + 3) % 5], rim[(e + 4) % 5]];
            for &a in g.nbrs(p) {
                let a = a as usize;
                if a == c
                    || !x.trusted_idx(a)
                    || rim.contains(&a)
                    || !g.adj_idx(a, q)
                    || g.adj_idx(a, c)
                    || others.iter().any(|&o| g.adj_idx(a, o))
                {
                    continue;
                }
                // orient so the apex edge comes first with rim[0] < rim[1]
                let order: [usize; 5] = if p < q {
                    [p, q, others[0], others[1], others[2]]
                } else {
                    [q, p, others[2], others[1], others[0]]
                };
                out.push(ExtendedWheel5 {
                    center: g.id(c),
                    rim: order.map(|i| g.id(i)),
                    apex: g.id(a),
                });
            }
        }
    }
    out
}

/// A vertex outside the wheel adjacent to all seven of its vertices.
pub fn dominator(x: &FlagComplex, w: &ExtendedWheel5) -> Option<VertexId> {
    let g = x.graph();
    let vs: Vec<usize> = w.vertices().iter().filter_map(|&v| g.idx(v)).collect();
    if vs.len() != 7 {
        return None;
    }
    g.nbrs(vs[0])
        .iter()
        .map(|&d| d as usize)
        .find(|&d| !vs.contains(&d) && vs.iter().all(|&v| g.adj_idx(v, d)))
        .map(|d| g.id(d))
}

/// Every extended 5-wheel has a dominating vertex.
pub fn w5hat_condition(x: &FlagComplex) -> Verdict {
    let wheels = find_extended_5_wheels(x);
    match wheels.iter().find(|w| dominator(x, w).is_none()) {
        Some(w) => Verdict::no(Witness::Wheel(w.clone())),
        None => Verdict::yes().with_note(format!("{} extended 5-wheels", wheels.len())),
    }
}

/// `SD_n(v)`: for each `i <= n` and each simplex σ in the sphere
/// `S_{i+1}(v)`, the link of σ meets `B_i(v)` in a nonempty simplex.
pub fn sd_property(x: &FlagComplex, v: VertexId, n: u32) -> Result<Verdict> {
    let c = x.graph().idx(v).ok_or(Error::UnknownVertex(v))?;
    if let Some(m) = x.margin() {
        if !x.trusted_idx(c) {
            return Err(Error::InvalidParameter(format!("vertex {v} is not trusted")));
        }
        if n + 1 > m {
            return Err(Error::InvalidParameter(format!("n = {n} exceeds margin - 1 = {}", m.saturating_sub(1))));
        }
    }
    Ok(match sd_scan(x, c, n) {
        Some(w) => Verdict::no(w),
        None => Verdict::yes(),
    })
}

fn sd_scan(x: &FlagComplex, c: usize, n: u32) -> Option<Witness> {
    let g = x.graph();
    let row = x.row(c);
    for i in 0..=n {
        let mask: Vec<bool> = (0..g.len())
            .map(|j| row[j] == i + 1 && x.trusted_idx(j))
            .collect();
        if !mask.iter().any(|&b| b) {
            continue;
        }
        for sigma in x.cliques_idx(Some(&mask)) {
            let trace: Vec<usize> = g
                .nbrs(sigma[0])
                .iter()
                .map(|&t| t as usize)
                .filter(|&t| row[t] == i && sigma[1..].iter().all(|&s| g.adj_idx(s, t)))
                .collect();
            if trace.is_empty() || !x.is_clique_idx(&trace) {
                return Some(Witness::Sd {
                    center: g.id(c),
                    i,
                    simplex: simplex_of(x, &sigma),
                    trace: trace.iter().map(|&t| g.id(t)).collect(),
                });
            }
        }
    }
    None
}

/// `SD_n(v)` at every trusted vertex, with `n` up to eccentricity minus one
/// (finite complexes) or margin minus one (windows).
pub fn sd_all(x: &FlagComplex) -> Verdict {
    let sources = trusted_sources(x);
    let hit = sources.par_iter().find_map_first(|&c| {
        let n = match x.margin() {
            Some(m) => m.checked_sub(1)?,
            None => {
                let row = x.row(c);
                let ecc = row.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0);
                ecc.checked_sub(1)?
            }
        };
        sd_scan(x, c, n)
    });
    match hit {
        Some(w) => Verdict::no(w),
        None => Verdict::yes().with_note(format!("{} centers", sources.len())),
    }
}

/// The three equivalent descriptions of weak systolicity, side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characterizations {
    /// Weakly modular without full 4-cycles.
    pub graph: Verdict,
    /// `SD_n` everywhere.
    pub sd: Verdict,
    /// Simply connected, extended 5-wheel condition, no full 4-cycles.
    pub local: Verdict,
    pub simple_connectivity: Verdict,
}

impl Characterizations {
    /// True unless two decisive answers differ.
    pub fn agree(&self) -> bool {
        let answers = [self.graph.answer, self.sd.answer, self.local.answer];
        let decisive: Vec<Answer> = answers.into_iter().filter(|a| a.is_decisive()).collect();
        decisive.windows(2).all(|w| w[0] == w[1])
    }
}

fn graph_mode(x: &FlagComplex) -> Verdict {
    let c4 = no_full_4_cycle(x);
    if c4.is_no() {
        return c4;
    }
    is_weakly_modular(x)
}

fn require_connected(x: &FlagComplex) -> Result<()> {
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

pub fn characterizations(x: &FlagComplex, budget: OracleBudget) -> Result<Characterizations> {
    require_connected(x)?;
    let graph = graph_mode(x);
    let sd = sd_all(x);
    let sc = topology::simple_connectivity_oracle(x, budget);
    let c4 = no_full_4_cycle(x);
    let local = if c4.is_no() {
        c4
    } else {
        let w5 = w5hat_condition(x);
        if w5.is_no() {
            w5
        } else {
            match sc.answer {
                Answer::Yes => Verdict::yes(),
                Answer::No => sc.clone(),
                Answer::Unknown => Verdict::unknown("simple connectivity undecided"),
            }
        }
    };
    Ok(Characterizations { graph, sd, local, simple_connectivity: sc })
}

/// Weak systolicity of a connected flag complex in the requested mode.
pub fn is_weakly_systolic(
    x: &FlagComplex,
    mode: WeakSystolicMode,
    budget: OracleBudget,
) -> Result<Verdict> {
    require_connected(x)?;
    Ok(match mode {
        WeakSystolicMode::Graph => graph_mode(x),
        WeakSystolicMode::Sd => sd_all(x),
        WeakSystolicMode::Composite => {
            let ch = characterizations(x, budget)?;
            let note = format!(
                "graph={} sd={} local={} simply-connected={}{}",
                ch.graph.answer,
                ch.sd.answer,
                ch.local.answer,
                ch.simple_connectivity.answer,
                if ch.agree() { "" } else { " DISAGREE" }
            );
            let mut v = ch.local;
            v.note = Some(note);
            v
        }
    })
}

/// Connected, simply connected and locally 6-large.
pub fn is_systolic(x: &FlagComplex, budget: OracleBudget) -> Result<Verdict> {
    if !x.is_connected() {
        let comps = x.graph().components();
        return Ok(Verdict::no(Witness::Disconnected { u: comps[0][0], v: comps[1][0] }));
    }
    let local = is_locally_k_large(x, 6)?;
    if local.is_no() {
        return Ok(local);
    }
    let sc = topology::simple_connectivity_oracle(x, budget);
    Ok(match sc.answer {
        Answer::Yes => Verdict::yes().with_note("locally 6-large, collapsible"),
        Answer::No => sc,
        Answer::Unknown => Verdict::unknown("locally 6-large; simple connectivity undecided"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, named};
    use crate::validate;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn largeness_of_polyhedra() {
        let oct = named::octahedron();
        let verdict = is_k_large(&oct, 5).unwrap();
        assert!(verdict.is_no());
        assert!(matches!(&verdict.witness, Some(Witness::Cycle { cycle, .. }) if cycle.len() == 4));
        assert!(validate::revalidate(&oct, verdict.witness.as_ref().unwrap()));

        let ico = named::icosahedron();
        assert!(is_k_large(&ico, 5).unwrap().is_yes());
        let six = is_k_large(&ico, 6).unwrap();
        assert!(matches!(&six.witness, Some(Witness::Cycle { cycle, .. }) if cycle.len() == 5));
        assert!(is_locally_k_large(&ico, 6).unwrap().is_no());
        assert!(is_k_large(&named::simplex(4), 9).unwrap().is_yes());
        assert!(is_k_large(&ico, 3).is_err());
    }

    #[test]
    fn weak_modularity_of_small_graphs() {
        let k5 = named::simplex(5);
        assert!(is_weakly_modular(&k5).is_yes());
        let c6 = named::cycle(6);
        // C6 is bipartite, so the triangle condition is vacuous there.
        assert!(triangle_condition(&c6).is_yes());
        let qc = quadrangle_condition(&c6);
        assert!(qc.is_no());
        assert!(validate::revalidate(&c6, qc.witness.as_ref().unwrap()));
        assert!(quadrangle_condition(&named::simplex(3)).is_yes());
        assert!(is_weakly_modular(&c6).is_no());
    }

    #[test]
    fn extended_wheels() {
        assert!(find_extended_5_wheels(&named::wheel(5)).is_empty());
        let bare = named::extended_wheel5(false);
        let wheels = find_extended_5_wheels(&bare);
        assert_eq!(wheels.len(), 1);
        assert_eq!(wheels[0].center, v(0));
        assert_eq!(wheels[0].apex, v(6));
        assert_eq!(&wheels[0].rim[..2], &[v(1), v(2)]);
        assert!(find_extended_5_wheels(&named::octahedron()).is_empty());
        let verdict = w5hat_condition(&bare);
        assert_eq!(verdict.witness, Some(Witness::Wheel(wheels[0].clone())));
        let dominated = named::extended_wheel5(true);
        assert!(w5hat_condition(&dominated).is_yes());
        assert_eq!(dominator(&dominated, &wheels[0]), Some(v(7)));
        assert!(w5hat_condition(&named::octahedron()).is_yes());
    }

    #[test]
    fn sd_property_examples() {
        let tri = named::simplex(3);
        assert!(sd_property(&tri, v(0), 0).unwrap().is_yes());
        let oct = named::octahedron();
        let verdict = sd_property(&oct, v(0), 1).unwrap();
        assert!(verdict.is_no());
        assert_eq!(
            verdict.witness,
            Some(Witness::Sd {
                center: v(0),
                i: 1,
                simplex: Simplex::vertex(v(1)),
                trace: vec![v(2), v(3), v(4), v(5)],
            })
        );
        assert!(validate::revalidate(&oct, verdict.witness.as_ref().unwrap()));
    }

    #[test]
    fn weakly_systolic_modes() {
        let b = OracleBudget::default();
        let oct = named::octahedron();
        let verdict = is_weakly_systolic(&oct, WeakSystolicMode::Graph, b).unwrap();
        assert!(matches!(&verdict.witness, Some(Witness::Cycle { cycle, .. }) if cycle.len() == 4));
        assert!(is_weakly_systolic(&named::simplex(4), WeakSystolicMode::Sd, b).unwrap().is_yes());
        let two = FlagComplex::from_edges(2, &[]).unwrap();
        assert_eq!(
            is_weakly_systolic(&two, WeakSystolicMode::Graph, b).unwrap_err(),
            Error::Disconnected
        );
        let composite =
            is_weakly_systolic(&named::wheel(6), WeakSystolicMode::Composite, b).unwrap();
        assert!(composite.is_yes(), "{composite}");
        let bare = characterizations(&named::extended_wheel5(false), b).unwrap();
        assert!(bare.agree());
        assert!(bare.graph.is_no() && bare.sd.is_no() && bare.local.is_no());
    }

    #[test]
    fn systolic_examples() {
        let b = OracleBudget::default();
        assert!(is_systolic(&named::cone(&named::cycle(6)), b).unwrap().is_yes());
        assert!(is_systolic(&named::octahedron(), b).unwrap().is_no());
        let torus = generators::hex_torus(4, 4).unwrap();
        assert!(is_locally_k_large(&torus, 6).unwrap().is_yes());
        let verdict = is_systolic(&torus, b).unwrap();
        assert!(matches!(verdict.witness, Some(Witness::Homology { betti1: 2, .. })), "{verdict}");
    }
}
