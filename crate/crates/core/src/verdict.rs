//! Three-valued answers with checkable evidence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, VertexId};
use crate::conditions::ExtendedWheel5;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    /// Three-valued conjunction: any No wins, then any Unknown.
    pub fn and(self, other: Answer) -> Answer {
        match (self, other) {
            (Answer::No, _) | (_, Answer::No) => Answer::No,
            (Answer::Unknown, _) | (_, Answer::Unknown) => Answer::Unknown,
            _ => Answer::Yes,
        }
    }

    pub fn is_decisive(self) -> bool {
        self != Answer::Unknown
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "Yes",
            Answer::No => "No",
            Answer::Unknown => "Unknown",
        })
    }
}

/// Where a reported cycle lives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    Complex,
    Link(Simplex),
}

/// Structured evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// A vertex set spanning a clique (a simplex, or a clique missing from a
    /// facet complex).
    Clique(Simplex),
    /// An induced cycle of length at least 4, in cyclic order.
    Cycle { ambient: Ambient, cycle: Vec<VertexId> },
    /// Triangle-condition failure: `d(v, w) = 1`, `d(u, v) = d(u, w) = distance`
    /// and no common neighbour of `v`, `w` is closer to `u`.
    Triangle { u: VertexId, v: VertexId, w: VertexId, distance: u32 },
    /// Quadrangle-condition failure: `z` is a common neighbour of `v`, `w`
    /// with `d(v, w) = 2` and `d(u, z) = distance + 1`.
    Quadrangle { u: VertexId, v: VertexId, w: VertexId, z: VertexId, distance: u32 },
    Wheel(ExtendedWheel5),
    /// `SD_n(center)` failure at radius `i`: the link of `simplex` (inside
    /// the sphere of radius `i + 1`) meets the ball of radius `i` in `trace`,
    /// which is empty or not a simplex.
    Sd { center: VertexId, i: u32, simplex: Simplex, trace: Vec<VertexId> },
    /// Two vertices in different components.
    Disconnected { u: VertexId, v: VertexId },
    /// Nontrivial first integral homology.
    Homology { betti1: usize, torsion: Vec<u64> },
    /// Number of elementary collapses that reduced the complex to a vertex.
    Collapse { steps: usize },
    /// Adjacency not preserved: `u ~ v` differs from `h(u) ~ h(v)`.
    Adjacency { u: VertexId, v: VertexId, hu: VertexId, hv: VertexId },
    /// Two vertices whose distance differs from the expected value.
    Distance { u: VertexId, v: VertexId, expected: u32, found: Option<u32> },
    /// Two chain positions whose distance differs from the index gap.
    ChainPair { a: i64, b: i64, u: VertexId, v: VertexId, found: u32 },
    /// A vertex whose displacement exceeds the translation length.
    Displacement { v: VertexId, value: u32, minimum: u32 },
    /// An integer-indexed vertex sequence.
    Chain { first_index: i64, vertices: Vec<VertexId> },
    /// A thick geodesic: an embedding of `A_k` on an index window.
    Thick { k: u32, first_index: i64, vertices: Vec<VertexId> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[VertexId]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Witness::Clique(s) => write!(f, "facet {s}"),
            Witness::Cycle { ambient: Ambient::Complex, cycle } => write!(f, "cycle {}", list(cycle)),
            Witness::Cycle { ambient: Ambient::Link(s), cycle } => {
                write!(f, "cycle {} in link {s}", list(cycle))
            }
            Witness::Triangle { u, v, w, distance } => write!(f, "tc {u} {v} {w} d={distance}"),
            Witness::Quadrangle { u, v, w, z, distance } => {
                write!(f, "qc {u} {v} {w} {z} d={distance}")
            }
            Witness::Wheel(w) => write!(f, "{w}"),
            Witness::Sd { center, i, simplex, trace } => {
                write!(f, "sd center {center} i={i} simplex {simplex} trace [{}]", list(trace))
            }
            Witness::Disconnected { u, v } => write!(f, "disconnected {u} {v}"),
            Witness::Homology { betti1, torsion } => {
                write!(f, "h1 rank {betti1} torsion {torsion:?}")
            }
            Witness::Collapse { steps } => write!(f, "collapse {steps} steps"),
            Witness::Adjacency { u, v, hu, hv } => write!(f, "adjacency {u} {v} -> {hu} {hv}"),
            Witness::Distance { u, v, expected, found } => match found {
                Some(d) => write!(f, "distance {u} {v} expected {expected} found {d}"),
                None => write!(f, "distance {u} {v} expected {expected} found inf"),
            },
            Witness::ChainPair { a, b, u, v, found } => {
                write!(f, "chain [{a}]={u} [{b}]={v} distance {found}")
            }
            Witness::Displacement { v, value, minimum } => {
                write!(f, "displacement {v} = {value} > {minimum}")
            }
            Witness::Chain { first_index, vertices } => {
                write!(f, "chain from {first_index}: {}", list(vertices))
            }
            Witness::Thick { k, first_index, vertices } => {
                write!(f, "thick k={k} from {first_index}: {}", list(vertices))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict { answer: Answer::Yes, witness: None, note: None }
    }

    pub fn yes_with(w: Witness) -> Self {
        Verdict { answer: Answer::Yes, witness: Some(w), note: None }
    }

    pub fn no(w: Witness) -> Self {
        Verdict { answer: Answer::No, witness: Some(w), note: None }
    }

    pub fn unknown(note: impl Into<String>) -> Self {
        Verdict { answer: Answer::Unknown, witness: None, note: Some(note.into()) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.answer)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}
