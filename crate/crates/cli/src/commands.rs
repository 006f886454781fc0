use std::collections::BTreeMap;
use std::fs;

use anyhow::{bail, Result};
use rayon::prelude::*;
use wsc_core::complex::is_flag;
use wsc_core::conditions::{self, WeakSystolicMode};
use wsc_core::cycles;
use wsc_core::format::{self, WindowHeader};
use wsc_core::generators;
use wsc_core::isometry::{self, Classification};
use wsc_core::mindisp::{self, Dichotomy};
use wsc_core::topology::OracleBudget;
use wsc_core::verdict::Ambient;
use wsc_core::{Automorphism, Error, FlagComplex, Verdict, VertexId, Witness};

use crate::args::{CheckArgs, CheckName, Common, GenerateArgs, IsometryArgs, ModeArg, TheoremArgs};
use crate::input::{self, Input};
use crate::report::{Record, Subject};

pub const ISOMETRY_CHECKS: &[&str] = &[
    "automorphism",
    "classify",
    "displacement",
    "min-set",
    "min-invariance",
    "chain",
    "chain-in-min",
    "idempotence",
];

pub const THEOREM_CHECKS: &[&str] = &[
    "weakly-systolic",
    "systolic",
    "embedding",
    "min-systolic",
    "wheel-domination",
    "invariant-geodesic",
    "dichotomy",
    "thick-geodesic",
];

const NOT_APPLICABLE: &str = "not applicable: h fixes a vertex";

fn mode(m: ModeArg) -> WeakSystolicMode {
    match m {
        ModeArg::Graph => WeakSystolicMode::Graph,
        ModeArg::Sd => WeakSystolicMode::Sd,
        ModeArg::Composite => WeakSystolicMode::Composite,
    }
}

/// Rejects `--require` names the verb never reports.
pub fn check_required(common: &Common, known: &[&str]) -> Result<()> {
    for r in &common.require {
        if r != "all" && !known.contains(&r.as_str()) {
            bail!("unknown check {r} in --require; expected one of: all, {}", known.join(", "));
        }
    }
    Ok(())
}

/// Exit status: 1 when a required check answered No.
pub fn exit_code(common: &Common, records: &[Record]) -> i32 {
    let required = |c: &str| common.require.iter().any(|r| r == "all" || r == c);
    let failed = records
        .iter()
        .any(|r| r.verdict == wsc_core::Answer::No && required(&r.check));
    i32::from(failed)
}

fn subject<'a>(input: &'a Input, automorphism: Option<&'a str>) -> Subject<'a> {
    Subject {
        input: &input.id,
        automorphism,
        vertices: input.complex.len(),
        trusted: input.complex.trusted_vertices().len(),
    }
}

/// Errors that describe the input rather than a fault become Unknown.
fn soft(r: wsc_core::Result<Verdict>) -> Result<Verdict> {
    match r {
        Ok(v) => Ok(v),
        Err(
            e @ (Error::EmptyScope
            | Error::Undefined(_)
            | Error::ZeroTranslation
            | Error::NotInMinSet(_)
            | Error::NotGeodesic { .. }
            | Error::InvalidParameter(_)
            | Error::Disconnected),
        ) => Ok(Verdict::unknown(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn weakly_systolic(x: &FlagComplex, m: ModeArg, budget: OracleBudget) -> Result<Verdict> {
    match conditions::is_weakly_systolic(x, mode(m), budget) {
        Err(Error::Disconnected) => {
            let comps = x.graph().components();
            Ok(Verdict::no(Witness::Disconnected { u: comps[0][0], v: comps[1][0] }))
        }
        r => Ok(r?),
    }
}

fn check_one(input: &Input, c: CheckName, args: &CheckArgs) -> Result<Record> {
    let x = &input.complex;
    let budget = OracleBudget(args.common.oracle_budget);
    subject(input, None).run(c.as_str(), || {
        Ok(match c {
            CheckName::Flag => match &input.facets {
                Some(f) => is_flag(f),
                None => is_flag(&x.to_facet_complex()).with_note("given as a graph"),
            },
            CheckName::FullCycles => {
                let all = cycles::enumerate_full_cycles(x, args.max_len)?;
                let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
                for cy in &all {
                    *by_len.entry(cy.len()).or_default() += 1;
                }
                let counts = by_len.iter().map(|(l, n)| format!("{l}:{n}")).collect::<Vec<_>>().join(" ");
                let note = format!("{} full cycles of length 4..={} [{counts}]", all.len(), args.max_len);
                match all.into_iter().next() {
                    Some(cy) => Verdict::yes_with(Witness::Cycle { ambient: Ambient::Complex, cycle: cy.into_vertices() }),
                    None => Verdict::yes(),
                }
                .with_note(note)
            }
            CheckName::Systole => match cycles::shortest_full_cycle(x) {
                Some(cy) => {
                    let note = format!("systole {}", cy.len());
                    Verdict::yes_with(Witness::Cycle { ambient: Ambient::Complex, cycle: cy.into_vertices() }).with_note(note)
                }
                None => Verdict::yes().with_note("no full cycle; systole infinite"),
            },
            CheckName::KLarge => conditions::is_k_large(x, args.k)?,
            CheckName::LocallyKLarge => conditions::is_locally_k_large(x, args.k)?,
            CheckName::Tc => conditions::triangle_condition(x),
            CheckName::Qc => conditions::quadrangle_condition(x),
            CheckName::WeaklyModular => conditions::is_weakly_modular(x),
            CheckName::W5hat => conditions::w5hat_condition(x),
            CheckName::Sd => conditions::sd_all(x),
            CheckName::WeaklySystolic => weakly_systolic(x, args.common.mode, budget)?,
            CheckName::Systolic => conditions::is_systolic(x, budget)?,
        })
    })
}

pub fn check(args: &CheckArgs) -> Result<Vec<Record>> {
    let all_names: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
    check_required(&args.common, &all_names)?;
    if args.checks.is_empty() {
        bail!("empty check list");
    }
    let inputs = input::load(&args.common)?;
    let per_input: Vec<Vec<Record>> = inputs
        .par_iter()
        .map(|inp| args.checks.iter().map(|&c| check_one(inp, c, args)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(per_input.into_iter().flatten().collect())
}

fn classification_verdict(c: &Classification) -> Verdict {
    match c {
        Classification::Elliptic(s) => Verdict::yes_with(Witness::Clique(s.clone())),
        Classification::Hyperbolic { .. } => Verdict::yes(),
        Classification::UnknownOnWindow { .. } => Verdict::unknown("no invariant simplex among complete orbits"),
    }
    .with_note(c.to_string())
}

fn isometry_one(inp: &Input, name: &str, h: &Automorphism) -> Result<Vec<Record>> {
    let x = &inp.complex;
    let s = subject(inp, Some(name));
    let mut out = vec![s.run("automorphism", || Ok(isometry::validate_automorphism(x, h)?))?];
    if out[0].verdict == wsc_core::Answer::No {
        return Ok(out);
    }
    out.push(s.run("classify", || Ok(classification_verdict(&isometry::classify(x, h)?)))?);
    let profile = isometry::displacement_profile(x, h);
    out.push(s.run("displacement", || {
        Ok(match &profile {
            Ok(p) => {
                let max = p.values.values().max().copied().unwrap_or(0);
                Verdict::yes().with_note(format!(
                    "|h|={} attained at {} of {} vertices in scope, max {max}",
                    p.minimum,
                    p.argmin.len(),
                    p.values.len()
                ))
            }
            Err(e) => Verdict::unknown(e.to_string()),
        })
    })?);
    let Ok(p) = profile else { return Ok(out) };
    if p.minimum == 0 {
        for c in &ISOMETRY_CHECKS[3..] {
            out.push(s.record(c, Verdict::unknown(NOT_APPLICABLE), 0.0));
        }
        return Ok(out);
    }
    out.push(s.run("min-set", || {
        let min = isometry::min_set(x, h)?;
        Ok(Verdict::yes().with_note(format!(
            "{} vertices, {} edges, {} facets",
            min.len(),
            min.graph().edge_count(),
            min.facets().len()
        )))
    })?);
    out.push(s.run("min-invariance", || soft(isometry::min_invariance_check(x, h)))?);
    let chain = isometry::chain_start(x, &p).and_then(|v| isometry::maximal_chain(x, h, v, None));
    out.push(s.run("chain", || {
        Ok(match &chain {
            Ok(c) => {
                let v = isometry::verify_lh_geodesic(x, c, p.minimum);
                if v.is_yes() {
                    let note = format!("|h|-geodesic, {} vertices; {}", c.vertices.len(), v.note.unwrap_or_default());
                    Verdict::yes_with(c.to_witness()).with_note(note)
                } else {
                    v
                }
            }
            Err(e) => Verdict::unknown(e.to_string()),
        })
    })?);
    out.push(s.run("chain-in-min", || {
        Ok(match &chain {
            Ok(c) => isometry::chain_in_min(c, &p),
            Err(e) => Verdict::unknown(e.to_string()),
        })
    })?);
    out.push(s.run("idempotence", || soft(isometry::min_idempotence_check(x, h)))?);
    Ok(out)
}

pub fn isometry(args: &IsometryArgs) -> Result<Vec<Record>> {
    check_required(&args.common, ISOMETRY_CHECKS)?;
    let inputs = input::load(&args.common)?;
    let work: Vec<(&Input, Vec<(String, Automorphism)>)> = inputs
        .iter()
        .map(|i| Ok((i, input::select_automorphisms(i, &args.automorphisms)?)))
        .collect::<Result<_>>()?;
    let per: Vec<Vec<Record>> = work
        .par_iter()
        .flat_map_iter(|(i, autos)| autos.iter().map(move |(n, h)| isometry_one(i, n, h)))
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

fn subcomplex_records(s: &Subject, x: &FlagComplex, sub: &FlagComplex, budget: OracleBudget) -> Result<Vec<Record>> {
    Ok(vec![
        s.run("embedding", || Ok(mindisp::isometric_embedding_check(x, sub)?.verdict()))?,
        s.run("min-systolic", || Ok(mindisp::min_systolic_check(sub, budget)?))?,
        s.run("wheel-domination", || Ok(mindisp::wheel_domination_in_min(x, sub)?.verdict))?,
    ])
}

fn theorems_one(inp: &Input, name: &str, h: &Automorphism, args: &TheoremArgs) -> Result<Vec<Record>> {
    let x = &inp.complex;
    let s = subject(inp, Some(name));
    let budget = OracleBudget(args.common.oracle_budget);
    let p = match isometry::displacement_profile(x, h) {
        Ok(p) => p,
        Err(e) => return Ok(vec![s.record("dichotomy", Verdict::unknown(e.to_string()), 0.0)]),
    };
    let mut out = Vec::new();
    if p.minimum == 0 {
        for c in ["embedding", "min-systolic", "wheel-domination", "invariant-geodesic"] {
            out.push(s.record(c, Verdict::unknown(NOT_APPLICABLE), 0.0));
        }
    } else {
        let min = isometry::min_set(x, h)?;
        out.extend(subcomplex_records(&s, x, &min, budget)?);
        out.push(s.run("invariant-geodesic", || {
            let hn = h.power(args.power);
            let pn = isometry::displacement_profile(x, &hn)?;
            match isometry::chain_start(x, &pn) {
                Ok(v) => soft(mindisp::invariant_geodesic_search(x, h, args.power, v)),
                Err(e) => Ok(Verdict::unknown(e.to_string())),
            }
        })?);
    }
    let mut thick = None;
    out.push(s.run("dichotomy", || {
        let d = mindisp::dichotomy_report(x, h)?;
        let v = d.verdict().with_note(d.to_string());
        if let Dichotomy::Thick { witness, .. } = d {
            thick = Some(witness);
        }
        Ok(v)
    })?);
    if let Some(w) = thick {
        out.push(s.run("thick-geodesic", || {
            let v = mindisp::verify_thick_geodesic(x, &w)?;
            Ok(if v.is_yes() { Verdict { witness: Some(w.to_witness()), ..v } } else { v })
        })?);
    }
    Ok(out)
}

pub fn theorems(args: &TheoremArgs) -> Result<Vec<Record>> {
    check_required(&args.common, THEOREM_CHECKS)?;
    let budget = OracleBudget(args.common.oracle_budget);
    let inputs = input::load(&args.common)?;
    let work: Vec<(&Input, Vec<(String, Automorphism)>)> = inputs
        .iter()
        .map(|i| Ok((i, input::select_automorphisms(i, &args.automorphisms)?)))
        .collect::<Result<_>>()?;
    let per: Vec<Vec<Record>> = work
        .par_iter()
        .map(|(inp, autos)| {
            let x = &inp.complex;
            let s = subject(inp, None);
            let mut out = vec![
                s.run("weakly-systolic", || weakly_systolic(x, args.common.mode, budget))?,
                s.run("systolic", || Ok(conditions::is_systolic(x, budget)?))?,
            ];
            if !args.subcomplex.is_empty() {
                let vs: Vec<VertexId> = args.subcomplex.iter().map(|&v| VertexId(v)).collect();
                let sub = x.span(&vs)?;
                out.extend(subcomplex_records(&s, x, &sub, budget)?);
                return Ok(out);
            }
            for (n, h) in autos {
                out.extend(theorems_one(inp, n, h, args)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

pub fn generate(args: &GenerateArgs) -> Result<String> {
    let spec = input::window_spec(&args.spec, args.radius, args.margin)?;
    let g = generators::generate(&spec)?;
    let header = g.window.as_ref().map(|w| WindowHeader {
        basepoint: w.basepoint(),
        radius: w.radius(),
        margin: w.margin(),
    });
    let text = format::write(&g.name, &g.complex, header, &g.automorphisms)?;
    match &args.output {
        Some(path) => {
            fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
