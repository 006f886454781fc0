//! Browser bindings: three operations, each returning a JSON string.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use wsc_core::conditions::{self, WeakSystolicMode};
use wsc_core::generators::{self, GeneratorSpec};
use wsc_core::isometry;
use wsc_core::mindisp::{self, Dichotomy};
use wsc_core::topology::OracleBudget;
use wsc_core::{Answer, Verdict};

#[derive(Serialize)]
struct Vertex {
    id: u32,
    q: i64,
    r: i64,
    trusted: bool,
    displacement: Option<u32>,
    in_min: bool,
}

#[derive(Serialize)]
struct LatticeView {
    radius: u32,
    margin: u32,
    automorphism: String,
    translation_length: u32,
    vertices: Vec<Vertex>,
    edges: Vec<(u32, u32)>,
    chain: Vec<u32>,
    thick: Option<ThickView>,
}

#[derive(Serialize)]
struct ThickView {
    k: u32,
    vertices: Vec<u32>,
    confirmed: bool,
}

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    verdict: Answer,
    witness: Option<String>,
    note: Option<String>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Displacement, Min and the thick geodesic of a lattice automorphism
/// (`translation`, `translation2` or `glide`) on a hexagonal window.
pub fn lattice_json(radius: u32, margin: u32, automorphism: &str) -> Result<String, String> {
    if radius > 30 {
        return Err("radius above 30 is too large for the demo".into());
    }
    let spec = GeneratorSpec { name: "lattice".into(), params: Default::default() }
        .with("R", radius)
        .with("m", margin);
    let g = generators::generate(&spec).map_err(err)?;
    let w = g.window.as_ref().expect("lattice is a window");
    let x = &g.complex;
    let h = g.automorphism(automorphism).ok_or_else(|| format!("no automorphism {automorphism}"))?;
    let p = isometry::displacement_profile(x, h).map_err(err)?;
    let vertices = x
        .vertices()
        .iter()
        .map(|&v| {
            let (q, r) = w.coord(v).expect("window vertex");
            let d = p.values.get(&v).copied();
            Vertex { id: v.0, q, r, trusted: x.is_trusted(v), displacement: d, in_min: d == Some(p.minimum) }
        })
        .collect();
    let edges = x.graph().edges().map(|(u, v)| (u.0, v.0)).collect();
    let chain = isometry::chain_start(x, &p)
        .and_then(|v| isometry::maximal_chain(x, h, v, None))
        .map(|c| c.vertices.iter().map(|v| v.0).collect())
        .unwrap_or_default();
    let thick = match mindisp::dichotomy_report(x, h).map_err(err)? {
        Dichotomy::Thick { witness, .. } => {
            let confirmed = mindisp::verify_thick_geodesic(x, &witness).map_err(err)?.is_yes();
            Some(ThickView { k: witness.k, vertices: witness.vertices.iter().map(|v| v.0).collect(), confirmed })
        }
        _ => None,
    };
    let view = LatticeView {
        radius,
        margin,
        automorphism: automorphism.to_string(),
        translation_length: p.minimum,
        vertices,
        edges,
        chain,
        thick,
    };
    serde_json::to_string(&view).map_err(err)
}

fn row(check: &'static str, v: Verdict) -> CheckRow {
    CheckRow { check, verdict: v.answer, witness: v.witness.map(|w| w.to_string()), note: v.note }
}

/// Curvature checks on a generated complex, e.g. `octahedron` or
/// `torus:p=4,q=4`.
pub fn checks_json(spec: &str) -> Result<String, String> {
    let spec: GeneratorSpec = spec.parse().map_err(err)?;
    let g = generators::generate(&spec).map_err(err)?;
    if g.complex.len() > 2000 {
        return Err("complex too large for the demo".into());
    }
    let x = &g.complex;
    let budget = OracleBudget::default();
    let mut rows = vec![
        row("6-large", conditions::is_k_large(x, 6).map_err(err)?),
        row("locally-6-large", conditions::is_locally_k_large(x, 6).map_err(err)?),
        row("weakly-modular", conditions::is_weakly_modular(x)),
        row("w5hat", conditions::w5hat_condition(x)),
    ];
    if x.is_connected() {
        let ws = conditions::is_weakly_systolic(x, WeakSystolicMode::Composite, budget).map_err(err)?;
        rows.push(row("weakly-systolic", ws));
    }
    rows.push(row("systolic", conditions::is_systolic(x, budget).map_err(err)?));
    serde_json::to_string(&rows).map_err(err)
}

/// Elliptic/thick classification of one named automorphism of a generated
/// complex.
pub fn dichotomy_json(spec: &str, automorphism: &str) -> Result<String, String> {
    let spec: GeneratorSpec = spec.parse().map_err(err)?;
    let g = generators::generate(&spec).map_err(err)?;
    let h = g.automorphism(automorphism).ok_or_else(|| format!("no automorphism {automorphism}"))?;
    let d = mindisp::dichotomy_report(&g.complex, h).map_err(err)?;
    let confirmed = match &d {
        Dichotomy::Thick { witness, .. } => Some(mindisp::verify_thick_geodesic(&g.complex, witness).map_err(err)?.is_yes()),
        _ => None,
    };
    #[derive(Serialize)]
    struct Out {
        summary: String,
        report: Dichotomy,
        confirmed: Option<bool>,
    }
    serde_json::to_string(&Out { summary: d.to_string(), report: d, confirmed }).map_err(err)
}

/// Names of the generated complexes offered by the page.
pub fn demo_specs() -> Vec<&'static str> {
    generators::CORPUS.iter().copied().filter(|s| !s.starts_with("lattice")).collect()
}

#[wasm_bindgen]
pub fn lattice(radius: u32, margin: u32, automorphism: &str) -> Result<String, JsValue> {
    lattice_json(radius, margin, automorphism).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn checks(spec: &str) -> Result<String, JsValue> {
    checks_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dichotomy(spec: &str, automorphism: &str) -> Result<String, JsValue> {
    dichotomy_json(spec, automorphism).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn specs() -> String {
    serde_json::to_string(&demo_specs()).expect("strings serialize")
}

