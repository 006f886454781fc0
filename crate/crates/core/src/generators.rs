//! Deterministic constructors for the test corpus.
//!
//! Random complexes use ChaCha8 seeded with `seed_from_u64`, drawing one
//! Bernoulli trial per vertex pair `(u, v)`, `u < v`, in lexicographic order,
//! so a spec always yields the same adjacency on every platform.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{FlagComplex, Graph, PeriodicParent, VertexId, WindowView};
use crate::error::{Error, Result};
use crate::isometry::{Automorphism, Domain};

/// Ball of radius `r` in the triangular lattice, trusted up to `r - m`.
pub fn triangular_lattice_window(r: u32, m: u32) -> Result<WindowView> {
    WindowView::realize(PeriodicParent::TriangularLattice, r, m)
}

fn coordinate_automorphism(w: &WindowView, f: impl Fn((i64, i64)) -> (i64, i64)) -> Result<Automorphism> {
    Automorphism::new(w.coordinate_map(f), Domain::Partial)
}

/// Translation by the axial vector `(dq, dr)`, restricted to the window.
pub fn lattice_translation(w: &WindowView, dq: i64, dr: i64) -> Result<Automorphism> {
    if w.parent() != PeriodicParent::TriangularLattice {
        return Err(Error::InvalidParameter("not a lattice window".into()));
    }
    coordinate_automorphism(w, |(q, r)| (q + dq, r + dr))
}

/// Reflection across the axis `r = 0` followed by one step along it:
/// `(q, r) -> (q + r + 1, -r)`. Its square is the translation by `(2, 0)`.
pub fn lattice_glide(w: &WindowView) -> Result<Automorphism> {
    if w.parent() != PeriodicParent::TriangularLattice {
        return Err(Error::InvalidParameter("not a lattice window".into()));
    }
    coordinate_automorphism(w, |(q, r)| (q + r + 1, -r))
}

/// Window of `A_k` around 0: the integers in `[-kR, kR]`, trusted within
/// `k(R - m)` of 0.
pub fn a_k_window(k: u32, r: u32, m: u32) -> Result<WindowView> {
    if k == 0 {
        return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
    }
    WindowView::realize(PeriodicParent::Line { k }, r, m)
}

/// `a -> a + s` on an `A_k` window.
pub fn line_shift(w: &WindowView, s: i64) -> Result<Automorphism> {
    if !matches!(w.parent(), PeriodicParent::Line { .. }) {
        return Err(Error::InvalidParameter("not a line window".into()));
    }
    coordinate_automorphism(w, |(a, b)| (a + s, b))
}

/// Finite `A_k` on `-n..=n`, vertex `a` having id `a + n`, with the partial
/// shift `a -> a + 1`.
pub fn a_k(k: u32, n: u32) -> Result<(FlagComplex, Automorphism)> {
    if k == 0 {
        return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
    }
    let size = 2 * n + 1;
    let mut edges = Vec::new();
    for a in 0..size {
        for b in a + 1..size.min(a + k + 1) {
            edges.push((a, b));
        }
    }
    let x = FlagComplex::from_edges(size, &edges)?;
    let shift = Automorphism::new((0..size - 1).map(|a| (VertexId(a), VertexId(a + 1))), Domain::Partial)?;
    Ok((x, shift))
}

/// Triangular lattice modulo `(p, 0)` and `(0, q)`; vertex `(a, b)` has id
/// `b * p + a`.
pub fn hex_torus(p: u32, q: u32) -> Result<FlagComplex> {
    if p < 4 || q < 4 {
        return Err(Error::InvalidParameter(format!("torus periods {p} x {q} below 4")));
    }
    let id = |a: i64, b: i64| VertexId((b.rem_euclid(q as i64) * p as i64 + a.rem_euclid(p as i64)) as u32);
    let mut edges = Vec::new();
    for b in 0..q as i64 {
        for a in 0..p as i64 {
            for (da, db) in [(1, 0), (0, 1), (1, -1)] {
                edges.push((id(a, b), id(a + da, b + db)));
            }
        }
    }
    let g = Graph::from_edges((0..p * q).map(VertexId), edges)?;
    Ok(FlagComplex::new(g))
}

/// Translation of the torus by `(da, db)`.
pub fn hex_torus_translation(p: u32, q: u32, da: i64, db: i64) -> Result<Automorphism> {
    let id = |a: i64, b: i64| VertexId((b.rem_euclid(q as i64) * p as i64 + a.rem_euclid(p as i64)) as u32);
    let pairs = (0..q as i64).flat_map(|b| (0..p as i64).map(move |a| (id(a, b), id(a + da, b + db))));
    Automorphism::new(pairs, Domain::Total)
}

/// Erdős–Rényi flag complex; see the module docs for the sampling order.
pub fn random_flag_complex(n: u32, p: f64, seed: u64) -> Result<FlagComplex> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    FlagComplex::from_edges(n, &edges)
}

pub mod named {
    //! Small finite complexes.

    use super::*;

    fn complete_minus(n: u32, missing: impl Fn(u32, u32) -> bool) -> FlagComplex {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !missing(a, b) {
                    edges.push((a, b));
                }
            }
        }
        FlagComplex::from_edges(n, &edges).expect("well formed")
    }

    /// `K_{2,2,2}`; the non-adjacent pairs are `{0,1}`, `{2,3}`, `{4,5}`.
    pub fn octahedron() -> FlagComplex {
        complete_minus(6, |a, b| a / 2 == b / 2)
    }

    /// The octahedron with the map swapping each non-adjacent pair.
    pub fn octahedron_with_antipodal() -> (FlagComplex, Automorphism) {
        let h = Automorphism::new((0..6).map(|i| (VertexId(i), VertexId(i ^ 1))), Domain::Total)
            .expect("involution");
        (octahedron(), h)
    }

    /// Top 0, upper pentagon 1..=5, lower pentagon 6..=10, bottom 11. Upper
    /// `i` touches lower `i` and `i + 1`.
    pub fn icosahedron() -> FlagComplex {
        let mut edges = Vec::new();
        for i in 0..5 {
            let (u, un) = (1 + i, 1 + (i + 1) % 5);
            let (l, ln) = (6 + i, 6 + (i + 1) % 5);
            edges.extend([(0, u), (u, un), (l, ln), (l, 11), (u, l), (u, ln)]);
        }
        FlagComplex::from_edges(12, &edges).expect("well formed")
    }

    /// Cycle on `0..n`.
    ///
    /// # Panics
    /// If `n < 3`.
    pub fn cycle(n: u32) -> FlagComplex {
        assert!(n >= 3, "cycle needs 3 vertices");
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FlagComplex::from_edges(n, &edges).expect("well formed")
    }

    /// Path on `0..n`.
    pub fn path(n: u32) -> FlagComplex {
        let edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
        FlagComplex::from_edges(n, &edges).expect("well formed")
    }

    /// `K_n`, the full simplex on `n` vertices.
    pub fn simplex(n: u32) -> FlagComplex {
        complete_minus(n, |_, _| false)
    }

    /// Full `k`-wheel: center 0, rim `1..=k` in order.
    ///
    /// # Panics
    /// If `k < 4`.
    pub fn wheel(k: u32) -> FlagComplex {
        assert!(k >= 4, "a full wheel needs a rim of length 4");
        let mut edges: Vec<(u32, u32)> = (1..=k).map(|i| (0, i)).collect();
        edges.extend((1..=k).map(|i| (i, i % k + 1)));
        FlagComplex::from_edges(k + 1, &edges).expect("well formed")
    }

    /// 5-wheel with center 0 and rim `1..=5`, apex 6 on the rim edge `1 2`,
    /// and with `dominated` a vertex 7 adjacent to all of them.
    pub fn extended_wheel5(dominated: bool) -> FlagComplex {
        let mut edges: Vec<(u32, u32)> = (1..=5).map(|i| (0, i)).collect();
        edges.extend((1..=5).map(|i| (i, i % 5 + 1)));
        edges.extend([(1, 6), (2, 6)]);
        let n = if dominated {
            edges.extend((0..7).map(|i| (i, 7)));
            8
        } else {
            7
        };
        FlagComplex::from_edges(n, &edges).expect("well formed")
    }

    /// Adds one vertex, numbered after the largest id, adjacent to every
    /// vertex of `x`.
    pub fn cone(x: &FlagComplex) -> FlagComplex {
        let apex = VertexId(x.vertices().last().map_or(0, |v| v.0 + 1));
        let mut vertices = x.vertices().to_vec();
        vertices.push(apex);
        let mut edges: Vec<(VertexId, VertexId)> = x.graph().edges().collect();
        edges.extend(x.vertices().iter().map(|&v| (v, apex)));
        FlagComplex::new(Graph::from_edges(vertices, edges).expect("well formed"))
    }
}

/// Parsed `name:key=value,...` generator request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidParameter(m);
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, r),
            None => (s, ""),
        };
        if name.is_empty() {
            return Err(bad("empty generator name".into()));
        }
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {item}")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(GeneratorSpec { name: name.to_string(), params })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

impl GeneratorSpec {
    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn get<T: FromStr>(&self, key: &str, default: Option<T>) -> Result<T> {
        match self.params.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{}: bad value {key}={v}", self.name))),
            None => default.ok_or_else(|| Error::InvalidParameter(format!("{}: missing {key}", self.name))),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!("{}: unknown parameter {k}", self.name))),
            None => Ok(()),
        }
    }
}

/// A generated complex with its attached automorphisms, and the window it
/// came from when there is one.
#[derive(Clone, Debug)]
pub struct Generated {
    pub name: String,
    pub complex: FlagComplex,
    pub window: Option<WindowView>,
    pub automorphisms: Vec<(String, Automorphism)>,
}

impl Generated {
    fn finite(name: String, complex: FlagComplex) -> Self {
        Generated { name, complex, window: None, automorphisms: Vec::new() }
    }

    pub fn automorphism(&self, name: &str) -> Option<&Automorphism> {
        self.automorphisms.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }
}

/// Names accepted by [`generate`].
pub const GENERATOR_NAMES: &[&str] = &[
    "lattice", "line", "ak", "torus", "octahedron", "icosahedron", "wheel", "ew5", "cone-cycle",
    "simplex", "cycle", "path", "random",
];

/// The fixed corpus: windows with hyperbolic automorphisms, finite
/// positive and negative controls, and a few seeded random complexes.
pub const CORPUS: &[&str] = &[
    "lattice:R=10,m=4",
    "line:k=2,R=10,m=4",
    "line:k=3,R=10,m=4",
    "ak:k=2,N=3",
    "ak:k=3,N=6",
    "torus:p=4,q=4",
    "torus:p=5,q=6",
    "octahedron",
    "icosahedron",
    "wheel:k=4",
    "wheel:k=5",
    "wheel:k=6",
    "wheel:k=7",
    "ew5:dominated=0",
    "ew5:dominated=1",
    "cone-cycle:n=4",
    "cone-cycle:n=6",
    "simplex:n=3",
    "cycle:n=4",
    "cycle:n=6",
    "path:n=5",
    "random:n=10,p=0.4,seed=1",
    "random:n=12,p=0.5,seed=2",
    "random:n=14,p=0.6,seed=3",
];

/// Every corpus entry, generated.
pub fn corpus() -> Result<Vec<Generated>> {
    CORPUS.iter().map(|s| generate(&s.parse()?)).collect()
}

/// Builds the complex a spec describes. Same spec, same ids.
pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let name = spec.to_string();
    match spec.name.as_str() {
        "lattice" => {
            spec.check_keys(&["R", "m"])?;
            let w = triangular_lattice_window(spec.get("R", Some(10))?, spec.get("m", Some(4))?)?;
            let automorphisms = vec![
                ("translation".to_string(), lattice_translation(&w, 1, 0)?),
                ("translation2".to_string(), lattice_translation(&w, 1, 1)?),
                ("glide".to_string(), lattice_glide(&w)?),
            ];
            Ok(Generated { name, complex: w.complex().clone(), window: Some(w), automorphisms })
        }
        "line" => {
            spec.check_keys(&["k", "R", "m"])?;
            let w = a_k_window(spec.get("k", Some(2))?, spec.get("R", Some(10))?, spec.get("m", Some(4))?)?;
            let automorphisms = vec![("shift".to_string(), line_shift(&w, 1)?)];
            Ok(Generated { name, complex: w.complex().clone(), window: Some(w), automorphisms })
        }
        "ak" => {
            spec.check_keys(&["k", "N"])?;
            let (x, shift) = a_k(spec.get("k", Some(2))?, spec.get("N", Some(3))?)?;
            Ok(Generated { name, complex: x, window: None, automorphisms: vec![("shift".into(), shift)] })
        }
        "torus" => {
            spec.check_keys(&["p", "q"])?;
            let (p, q) = (spec.get("p", Some(4))?, spec.get("q", Some(4))?);
            let x = hex_torus(p, q)?;
            let t = hex_torus_translation(p, q, 1, 0)?;
            Ok(Generated { name, complex: x, window: None, automorphisms: vec![("translation".into(), t)] })
        }
        "octahedron" => {
            spec.check_keys(&[])?;
            let (x, h) = named::octahedron_with_antipodal();
            Ok(Generated { name, complex: x, window: None, automorphisms: vec![("antipodal".into(), h)] })
        }
        "icosahedron" => {
            spec.check_keys(&[])?;
            Ok(Generated::finite(name, named::icosahedron()))
        }
        "wheel" => {
            spec.check_keys(&["k"])?;
            let k: u32 = spec.get("k", Some(6))?;
            if k < 4 {
                return Err(Error::InvalidParameter(format!("wheel rim {k} below 4")));
            }
            let x = named::wheel(k);
            let rot = Automorphism::new(
                std::iter::once((VertexId(0), VertexId(0)))
                    .chain((1..=k).map(|i| (VertexId(i), VertexId(i % k + 1)))),
                Domain::Total,
            )?;
            Ok(Generated { name, complex: x, window: None, automorphisms: vec![("rotation".into(), rot)] })
        }
        "ew5" => {
            spec.check_keys(&["dominated"])?;
            let d: u8 = spec.get("dominated", Some(0))?;
            Ok(Generated::finite(name, named::extended_wheel5(d != 0)))
        }
        "cone-cycle" => {
            spec.check_keys(&["n"])?;
            let n: u32 = spec.get("n", Some(6))?;
            if n < 3 {
                return Err(Error::InvalidParameter(format!("cycle length {n} below 3")));
            }
            Ok(Generated::finite(name, named::cone(&named::cycle(n))))
        }
        "simplex" => {
            spec.check_keys(&["n"])?;
            Ok(Generated::finite(name, named::simplex(spec.get("n", Some(3))?)))
        }
        "cycle" => {
            spec.check_keys(&["n"])?;
            let n: u32 = spec.get("n", Some(6))?;
            if n < 3 {
                return Err(Error::InvalidParameter(format!("cycle length {n} below 3")));
            }
            let rot = Automorphism::new((0..n).map(|i| (VertexId(i), VertexId((i + 1) % n))), Domain::Total)?;
            Ok(Generated { name, complex: named::cycle(n), window: None, automorphisms: vec![("rotation".into(), rot)] })
        }
        "path" => {
            spec.check_keys(&["n"])?;
            Ok(Generated::finite(name, named::path(spec.get("n", Some(4))?)))
        }
        "random" => {
            spec.check_keys(&["n", "p", "seed"])?;
            let x = random_flag_complex(spec.get("n", Some(10))?, spec.get("p", Some(0.3))?, spec.get("seed", Some(0))?)?;
            Ok(Generated::finite(name, x))
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown generator {other}; expected one of {}",
            GENERATOR_NAMES.join(", ")
        ))),
    }
}
