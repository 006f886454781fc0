use std::fs;

use anyhow::{bail, Context, Result};
use wsc_core::format::{self, WindowHeader};
use wsc_core::generators::{self, GeneratorSpec};
use wsc_core::isometry::enumerate_automorphisms;
use wsc_core::{Automorphism, FacetComplex, FlagComplex};

use crate::args::Common;

/// Largest automorphism list produced by `-a enumerate`.
pub const ENUMERATE_LIMIT: usize = 1000;

pub struct Input {
    pub id: String,
    pub complex: FlagComplex,
    pub facets: Option<FacetComplex>,
    pub automorphisms: Vec<(String, Automorphism)>,
}

/// Applies `--radius` / `--margin` to a generator spec that has a window.
pub fn window_spec(spec: &str, radius: Option<u32>, margin: Option<u32>) -> Result<GeneratorSpec> {
    let mut spec: GeneratorSpec = spec.parse()?;
    if radius.is_some() || margin.is_some() {
        if !matches!(spec.name.as_str(), "lattice" | "line") {
            bail!("generator {} has no window; --radius/--margin do not apply", spec.name);
        }
        if let Some(r) = radius {
            spec = spec.with("R", r);
        }
        if let Some(m) = margin {
            spec = spec.with("m", m);
        }
    }
    Ok(spec)
}

pub fn load(common: &Common) -> Result<Vec<Input>> {
    if common.inputs.is_empty() && common.generate.is_empty() {
        bail!("no inputs: give complex files or --generate SPEC");
    }
    let mut out = Vec::new();
    for path in &common.inputs {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let doc = format::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
        let complex = match (doc.window, common.radius, common.margin) {
            (_, None, None) => doc.complex,
            (Some(w), r, m) => {
                let header = WindowHeader { radius: r.unwrap_or(w.radius), margin: m.unwrap_or(w.margin), ..w };
                format::with_window(doc.complex, header)?
            }
            (None, _, _) => bail!("{}: --radius/--margin need a window line in the input", path.display()),
        };
        out.push(Input {
            id: path.display().to_string(),
            complex,
            facets: doc.facets,
            automorphisms: doc.automorphisms,
        });
    }
    for s in &common.generate {
        let spec = window_spec(s, common.radius, common.margin)?;
        let g = generators::generate(&spec)?;
        out.push(Input { id: g.name, complex: g.complex, facets: None, automorphisms: g.automorphisms });
    }
    Ok(out)
}

/// Resolves `-a` names against an input; an empty request means all the
/// input's automorphisms.
pub fn select_automorphisms(input: &Input, names: &[String]) -> Result<Vec<(String, Automorphism)>> {
    if names.is_empty() {
        return Ok(input.automorphisms.clone());
    }
    let mut out = Vec::new();
    for name in names {
        match name.as_str() {
            "identity" => out.push(("identity".to_string(), Automorphism::identity(&input.complex))),
            "enumerate" => {
                if input.complex.is_window() {
                    bail!("{}: enumerate needs a finite complex, not a window", input.id);
                }
                let all = enumerate_automorphisms(&input.complex, ENUMERATE_LIMIT);
                out.extend(all.into_iter().enumerate().map(|(i, h)| (format!("enum-{i}"), h)));
            }
            other => match input.automorphisms.iter().find(|(n, _)| n == other) {
                Some(a) => out.push(a.clone()),
                None => bail!("{}: no automorphism named {other}", input.id),
            },
        }
    }
    Ok(out)
}
