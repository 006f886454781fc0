//! Line-oriented text format for complexes and their automorphisms.
//!
//! ```text
//! # comment
//! complex octahedron
//! mode flag            # or: mode facets
//! vertices 6           # ids 0..6
//! window 0 10 4        # optional: basepoint, radius, margin
//! edge 0 2
//! facet 0 2 4          # facets mode only
//! automorphism antipodal
//! domain total         # or: domain partial
//! map 0 1
//! ```

use std::fmt::Write as _;

use crate::complex::{FacetComplex, FlagComplex, Graph, Region, Simplex, VertexId};
use crate::error::{Error, Result};
use crate::isometry::{Automorphism, Domain};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Flag,
    Facets,
}

/// Window header: basepoint, radius, margin.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WindowHeader {
    pub basepoint: VertexId,
    pub radius: u32,
    pub margin: u32,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub name: String,
    pub mode: Mode,
    pub complex: FlagComplex,
    /// The facets as given, in facets mode.
    pub facets: Option<FacetComplex>,
    pub window: Option<WindowHeader>,
    pub automorphisms: Vec<(String, Automorphism)>,
}

impl Document {
    pub fn automorphism(&self, name: &str) -> Option<&Automorphism> {
        self.automorphisms.iter().find(|(n, _)| n == name).map(|(_, h)| h)
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

struct Pending {
    name: String,
    domain: Domain,
    pairs: Vec<(VertexId, VertexId)>,
    line: usize,
}

pub fn parse(text: &str) -> Result<Document> {
    let mut name = None;
    let mut mode = None;
    let mut n: Option<u32> = None;
    let mut window = None;
    let mut edges = Vec::new();
    let mut facets = Vec::new();
    let mut autos: Vec<Pending> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("nonempty");
        let args: Vec<&str> = words.collect();
        let num = |s: &str| -> Result<u32> { s.parse().map_err(|_| err(line, format!("not a number: {s}"))) };
        let vertex = |s: &str| -> Result<VertexId> {
            let v = num(s)?;
            match n {
                Some(n) if v < n => Ok(VertexId(v)),
                Some(_) => Err(err(line, format!("unknown vertex {v}"))),
                None => Err(err(line, "vertex before the vertices line")),
            }
        };
        let arity = |want: usize| -> Result<()> {
            if args.len() != want {
                return Err(err(line, format!("{head} takes {want} arguments")));
            }
            Ok(())
        };
        if !autos.is_empty() && !matches!(head, "map" | "domain" | "automorphism") {
            return Err(err(line, format!("{head} after an automorphism section")));
        }
        match head {
            "complex" => {
                arity(1)?;
                if name.is_some() {
                    return Err(err(line, "second complex header"));
                }
                name = Some(args[0].to_string());
            }
            "mode" => {
                arity(1)?;
                mode = Some(match args[0] {
                    "flag" => Mode::Flag,
                    "facets" => Mode::Facets,
                    other => return Err(err(line, format!("unknown mode {other}"))),
                });
            }
            "vertices" => {
                arity(1)?;
                n = Some(num(args[0])?);
            }
            "window" => {
                arity(3)?;
                window = Some(WindowHeader {
                    basepoint: vertex(args[0])?,
                    radius: num(args[1])?,
                    margin: num(args[2])?,
                });
            }
            "edge" => {
                arity(2)?;
                if mode != Some(Mode::Flag) {
                    return Err(err(line, "edge lines need mode flag"));
                }
                let (u, v) = (vertex(args[0])?, vertex(args[1])?);
                if u == v {
                    return Err(err(line, format!("self-loop at {u}")));
                }
                edges.push((u, v));
            }
            "facet" => {
                if mode != Some(Mode::Facets) {
                    return Err(err(line, "facet lines need mode facets"));
                }
                let vs = args.iter().map(|a| vertex(a)).collect::<Result<Vec<_>>>()?;
                facets.push(Simplex::new(vs).map_err(|e| err(line, e.to_string()))?);
            }
            "automorphism" => {
                arity(1)?;
                if n.is_none() {
                    return Err(err(line, "automorphism before the vertices line"));
                }
                autos.push(Pending { name: args[0].to_string(), domain: Domain::Total, pairs: Vec::new(), line });
            }
            "domain" => {
                arity(1)?;
                let a = autos.last_mut().ok_or_else(|| err(line, "domain outside an automorphism"))?;
                a.domain = match args[0] {
                    "total" => Domain::Total,
                    "partial" => Domain::Partial,
                    other => return Err(err(line, format!("unknown domain {other}"))),
                };
            }
            "map" => {
                arity(2)?;
                let (u, v) = (vertex(args[0])?, vertex(args[1])?);
                let a = autos.last_mut().ok_or_else(|| err(line, "map outside an automorphism"))?;
                a.pairs.push((u, v));
            }
            other => return Err(err(line, format!("unknown keyword {other}"))),
        }
    }

    let name = name.ok_or_else(|| err(0, "missing complex header"))?;
    let mode = mode.ok_or_else(|| err(0, "missing mode line"))?;
    let n = n.ok_or_else(|| err(0, "missing vertices line"))?;
    let (complex, facets) = match mode {
        Mode::Flag => (FlagComplex::new(Graph::from_edges((0..n).map(VertexId), edges)?), None),
        Mode::Facets => {
            let fc = FacetComplex::new(facets);
            let g = Graph::from_edges((0..n).map(VertexId), fc.skeleton().edges())?;
            (FlagComplex::new(g), Some(fc))
        }
    };
    let complex = match window {
        Some(w) => with_window(complex, w).map_err(|e| err(0, e.to_string()))?,
        None => complex,
    };
    let mut automorphisms = Vec::new();
    for a in autos {
        let h = Automorphism::new(a.pairs, a.domain).map_err(|e| err(a.line, e.to_string()))?;
        if h.is_total() && h.len() != n as usize {
            return Err(err(a.line, format!("total automorphism {} maps {} of {n} vertices", a.name, h.len())));
        }
        automorphisms.push((a.name, h));
    }
    Ok(Document { name, mode, complex, facets, window, automorphisms })
}

/// Marks `x` as a window: vertices within `radius - margin` of the basepoint
/// are trusted.
pub fn with_window(x: FlagComplex, w: WindowHeader) -> Result<FlagComplex> {
    if w.margin > w.radius {
        return Err(Error::InvalidParameter(format!("window margin {} exceeds radius {}", w.margin, w.radius)));
    }
    let base = x.graph().idx(w.basepoint).ok_or(Error::UnknownVertex(w.basepoint))?;
    let from_base = x.graph().bfs(base, None);
    let trusted = from_base.iter().map(|&d| d <= w.radius - w.margin).collect();
    x.with_region(Region::Window { trusted, margin: w.margin, basepoint: Some(w.basepoint) })
}

/// Writes a flag complex (and automorphisms) so that [`parse`] returns it.
/// Vertex ids must be `0..n`.
pub fn write(
    name: &str,
    x: &FlagComplex,
    window: Option<WindowHeader>,
    automorphisms: &[(String, Automorphism)],
) -> Result<String> {
    let n = x.len() as u32;
    if let Some(&v) = x.vertices().iter().enumerate().find(|(i, v)| v.0 != *i as u32).map(|(_, v)| v) {
        return Err(Error::InvalidParameter(format!("vertex ids are not 0..{n} (found {v})")));
    }
    let mut out = String::new();
    writeln!(out, "complex {name}").expect("string");
    writeln!(out, "mode flag").expect("string");
    writeln!(out, "vertices {n}").expect("string");
    if let Some(w) = window {
        writeln!(out, "window {} {} {}", w.basepoint, w.radius, w.margin).expect("string");
    }
    for (u, v) in x.graph().edges() {
        writeln!(out, "edge {u} {v}").expect("string");
    }
    for (aname, h) in automorphisms {
        writeln!(out, "automorphism {aname}").expect("string");
        let d = if h.is_total() { "total" } else { "partial" };
        writeln!(out, "domain {d}").expect("string");
        out.push_str(&h.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, named};

    #[test]
    fn round_trip() {
        let (oct, anti) = named::octahedron_with_antipodal();
        let text = write("octahedron", &oct, None, &[("antipodal".into(), anti.clone())]).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(doc.name, "octahedron");
        assert_eq!(doc.complex, oct);
        assert_eq!(doc.automorphism("antipodal"), Some(&anti));
    }

    #[test]
    fn window_round_trip() {
        let w = generators::triangular_lattice_window(3, 1).unwrap();
        let g = generators::lattice_glide(&w).unwrap();
        let header = WindowHeader { basepoint: w.basepoint(), radius: 3, margin: 1 };
        let text = write("lattice", w.complex(), Some(header), &[("glide".into(), g.clone())]).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(&doc.complex, w.complex());
        assert_eq!(doc.automorphism("glide"), Some(&g));
    }

    #[test]
    fn facets_mode() {
        let doc = parse("complex hollow\nmode facets\nvertices 3\nfacet 0 1\nfacet 1 2\nfacet 0 2\n").unwrap();
        assert_eq!(doc.complex.graph().edge_count(), 3);
        assert!(crate::complex::is_flag(doc.facets.as_ref().unwrap()).is_no());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("complex a\nmode flag\nvertices 3\n# note\nedge 0 7\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 5, message: "unknown vertex 7".into() });
        let e = parse("complex a\nmode flag\nvertices 3\nedge 0 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        let e = parse("complex a\nmode flag\nvertices 2\nautomorphism s\nmap 0 1\nmap 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(parse("mode flag\nvertices 2\n").is_err());
    }
}
