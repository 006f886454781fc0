//! Acceptance criteria 1-10, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always reach the output.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::Value;
use wsc_cli::args::Cli;
use wsc_core::conditions::is_locally_k_large;
use wsc_core::cycles::enumerate_full_cycles;
use wsc_core::generators::{self, CORPUS};
use wsc_core::isometry::{enumerate_automorphisms, find_invariant_simplex, min_set};
use wsc_core::mindisp::isometric_embedding_check;
use wsc_core::topology::{simple_connectivity_oracle, OracleBudget};
use wsc_core::validate::{bfs_distance, revalidate};
use wsc_core::{Answer, FlagComplex, VertexId, Witness};

/// Wall-clock ceiling per criterion.
const TIME_LIMIT: Duration = Duration::from_secs(60);
/// Trusted pairs the glide embedding check must cover.
const MIN_GLIDE_PAIRS: usize = 500;
/// Glide window: radius and margin.
const GLIDE_WINDOW: (u32, u32) = (40, 20);
/// Vertex bound for the full-cycle oracle comparison.
const CYCLE_ORACLE_MAX_VERTICES: usize = 14;
/// Vertex bound for the invariant-simplex oracle comparison.
const SIMPLEX_ORACLE_MAX_VERTICES: usize = 30;
/// Automorphisms enumerated per finite complex.
const ENUMERATE_LIMIT: usize = wsc_cli::input::ENUMERATE_LIMIT;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

#[derive(Debug, Clone)]
struct Rec {
    check: String,
    input: String,
    automorphism: Option<String>,
    verdict: Answer,
    witness: Option<Witness>,
    note: String,
}

fn run(args: &[&str]) -> Result<(Vec<Rec>, i32), String> {
    let mut argv = vec!["wsc"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "structured"]);
    let cli = Cli::try_parse_from(&argv).map_err(|e| e.to_string())?;
    let out = wsc_cli::run(&cli).map_err(|e| format!("{e:#}"))?;
    let doc: Value = serde_json::from_str(&out.output).map_err(|e| e.to_string())?;
    let recs = doc["records"]
        .as_array()
        .ok_or("no records")?
        .iter()
        .map(|r| Rec {
            check: r["check"].as_str().unwrap_or_default().to_string(),
            input: r["input"].as_str().unwrap_or_default().to_string(),
            automorphism: r["automorphism"].as_str().map(str::to_string),
            verdict: serde_json::from_value(r["verdict"].clone()).expect("answer"),
            witness: serde_json::from_value(r["witness"].clone()).expect("witness"),
            note: r["note"].as_str().unwrap_or_default().to_string(),
        })
        .collect();
    Ok((recs, out.code))
}

fn one<'a>(recs: &'a [Rec], check: &str, auto: Option<&str>) -> Result<&'a Rec, String> {
    recs.iter()
        .find(|r| r.check == check && r.automorphism.as_deref() == auto)
        .ok_or_else(|| format!("no {check} record"))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn complex(spec: &str) -> FlagComplex {
    generators::generate(&spec.parse().unwrap()).unwrap().complex
}

fn corpus_args() -> Vec<&'static str> {
    CORPUS.iter().flat_map(|s| ["-g", *s]).collect()
}

fn negative_controls() -> Check {
    let (r, _) = run(&["check", "-g", "octahedron", "-c", "weakly-systolic"])?;
    let ws = one(&r, "weakly-systolic", None)?;
    ensure(ws.verdict == Answer::No, "octahedron not rejected")?;
    match &ws.witness {
        Some(w @ Witness::Cycle { cycle, .. }) if cycle.len() == 4 => {
            ensure(revalidate(&complex("octahedron"), w), "C4 witness does not revalidate")?
        }
        other => return Err(format!("octahedron witness {other:?}")),
    }

    let (r, _) = run(&["check", "-g", "icosahedron", "-c", "k-large", "-k", "6"])?;
    let kl = one(&r, "k-large", None)?;
    ensure(kl.verdict == Answer::No, "icosahedron 6-large")?;
    match &kl.witness {
        Some(w @ Witness::Cycle { cycle, .. }) if cycle.len() == 5 => {
            ensure(revalidate(&complex("icosahedron"), w), "5-cycle witness does not revalidate")?
        }
        other => return Err(format!("icosahedron witness {other:?}")),
    }

    let (r, _) = run(&["check", "-g", "torus:p=4,q=4", "-c", "locally-k-large,systolic"])?;
    ensure(one(&r, "locally-k-large", None)?.verdict == Answer::Yes, "torus not locally 6-large")?;
    let sys = one(&r, "systolic", None)?;
    ensure(sys.verdict == Answer::No, "torus systolic")?;
    match &sys.witness {
        Some(w @ Witness::Homology { betti1: 2, .. }) => {
            ensure(revalidate(&complex("torus:p=4,q=4"), w), "homology witness does not revalidate")?
        }
        other => return Err(format!("torus witness {other:?}")),
    }
    Ok("octahedron C4, icosahedron 5-cycle, torus H1 rank 2".into())
}

fn positive_control() -> Check {
    let checks = "tc,qc,weakly-systolic,locally-k-large,sd,full-cycles";
    let (r, code) = run(&[
        "check", "-g", "lattice:R=10,m=4", "-c", checks, "--max-len", "4", "--mode", "graph", "--require", "all",
    ])?;
    ensure(code == 0, format!("exit status {code}"))?;
    for c in ["tc", "qc", "weakly-systolic", "locally-k-large", "sd"] {
        ensure(one(&r, c, None)?.verdict == Answer::Yes, format!("{c} not Yes"))?;
    }
    let fc = one(&r, "full-cycles", None)?;
    ensure(fc.witness.is_none() && fc.note.starts_with("0 full cycles"), format!("full 4-cycles: {}", fc.note))?;
    Ok("TC, QC, no full 4-cycle, locally 6-large, SD_3 on 127 trusted vertices".into())
}

fn characterization_agreement() -> Check {
    let mut per_mode = Vec::new();
    for mode in ["graph", "sd", "composite"] {
        let mut args = vec!["check", "-c", "weakly-systolic", "--mode", mode];
        args.extend(corpus_args());
        per_mode.push(run(&args)?.0);
    }
    let mut decisive = 0;
    let mut disagreements = Vec::new();
    for ((g, s), c) in per_mode[0].iter().zip(&per_mode[1]).zip(&per_mode[2]) {
        if c.note.contains("simply-connected=Unknown") {
            continue;
        }
        decisive += 1;
        if g.verdict != s.verdict || g.verdict != c.verdict || c.note.contains("DISAGREE") {
            disagreements.push(g.input.clone());
        }
    }
    ensure(disagreements.is_empty(), format!("disagreements: {disagreements:?}"))?;
    Ok(format!("{decisive} decisive corpus complexes, 0 disagreements"))
}

fn deviation_and_pairs(note: &str) -> Option<(usize, String)> {
    let (pairs, rest) = note.split_once(" pairs, max deviation ")?;
    Some((pairs.parse().ok()?, rest.to_string()))
}

fn glide_spec() -> String {
    format!("lattice:R={},m={}", GLIDE_WINDOW.0, GLIDE_WINDOW.1)
}

fn embedding_zero() -> Check {
    let glide = glide_spec();
    let mut summary = Vec::new();
    for (spec, auto) in [(glide.as_str(), "glide"), ("line:k=3,R=10,m=4", "shift")] {
        let (r, _) = run(&["theorems", "-g", spec, "-a", auto])?;
        let e = one(&r, "embedding", Some(auto))?;
        let (pairs, dev) = deviation_and_pairs(&e.note).ok_or("unparsed embedding note")?;
        ensure(e.verdict == Answer::Yes && dev == "0", format!("{spec}: {}", e.note))?;
        // recomputed through the library as a cross-check of the report
        let g = generators::generate(&spec.parse().unwrap()).unwrap();
        let min = min_set(&g.complex, g.automorphism(auto).unwrap()).unwrap();
        let rep = isometric_embedding_check(&g.complex, &min).unwrap();
        ensure(rep.pairs == pairs && rep.max_deviation == Some(0), "library disagrees with report")?;
        summary.push(format!("{auto} {pairs} pairs"));
    }
    let glide_pairs: usize = summary[0].split(' ').nth(1).unwrap().parse().unwrap();
    ensure(glide_pairs >= MIN_GLIDE_PAIRS, format!("only {glide_pairs} glide pairs"))?;
    Ok(format!("deviation 0: {}", summary.join(", ")))
}

fn min_systolic() -> Check {
    let glide = glide_spec();
    for (spec, auto) in [(glide.as_str(), "glide"), ("line:k=3,R=10,m=4", "shift")] {
        let (r, _) = run(&["theorems", "-g", spec, "-a", auto])?;
        let m = one(&r, "min-systolic", Some(auto))?;
        ensure(m.verdict == Answer::Yes, format!("{spec}: {:?} {}", m.verdict, m.note))?;
        let g = generators::generate(&spec.parse().unwrap()).unwrap();
        let min = min_set(&g.complex, g.automorphism(auto).unwrap()).unwrap();
        ensure(is_locally_k_large(&min, 6).unwrap().is_yes(), "Min has a short link cycle")?;
        let sc = simple_connectivity_oracle(&min, OracleBudget::default());
        ensure(matches!(sc.witness, Some(Witness::Collapse { .. })), format!("no collapse: {sc:?}"))?;
    }
    Ok("glide strip and A_3 line: locally 6-large, collapse found".into())
}

fn chains_and_idempotence() -> Check {
    let mut args = vec!["isometry"];
    args.extend(corpus_args());
    let (r, _) = run(&args)?;
    let hyperbolic: BTreeSet<(String, String)> = r
        .iter()
        .filter(|x| x.check == "displacement" && !x.note.starts_with("|h|=0"))
        .map(|x| (x.input.clone(), x.automorphism.clone().unwrap_or_default()))
        .collect();
    for (input, auto) in &hyperbolic {
        for c in ["chain", "chain-in-min", "idempotence"] {
            let rec = r
                .iter()
                .find(|x| &x.input == input && x.automorphism.as_ref() == Some(auto) && x.check == c)
                .ok_or(format!("{input} {auto}: no {c}"))?;
            ensure(rec.verdict == Answer::Yes, format!("{input} {auto} {c}: {:?} {}", rec.verdict, rec.note))?;
        }
    }
    ensure(hyperbolic.len() >= 5, "too few examples")?;
    Ok(format!("{} automorphisms with |h| > 0: chain, chain-in-min, idempotence all Yes", hyperbolic.len()))
}

fn dichotomy() -> Check {
    let mut finite = Vec::new();
    for spec in CORPUS {
        let g = generators::generate(&spec.parse().unwrap()).unwrap();
        if g.window.is_some() {
            continue;
        }
        let (r, _) = run(&["check", "-g", spec, "-c", "weakly-systolic"])?;
        if r[0].verdict == Answer::Yes {
            finite.push((spec, g.complex));
        }
    }
    let mut elliptic = 0;
    for (spec, x) in &finite {
        let (r, _) = run(&["isometry", "-g", spec, "-a", "enumerate"])?;
        let autos = enumerate_automorphisms(x, ENUMERATE_LIMIT);
        for rec in r.iter().filter(|r| r.check == "classify") {
            let name = rec.automorphism.as_deref().unwrap_or_default();
            let i: usize = name.trim_start_matches("enum-").parse().map_err(|_| format!("bad name {name}"))?;
            let h = &autos[i];
            let Some(Witness::Clique(s)) = &rec.witness else {
                return Err(format!("{spec} {name}: {}", rec.note));
            };
            let image: BTreeSet<VertexId> = s.vertices().iter().filter_map(|&v| h.apply(v)).collect();
            ensure(x.is_clique(s.vertices()), format!("{spec} {name}: not a simplex"))?;
            ensure(image == s.vertices().iter().copied().collect(), format!("{spec} {name}: not invariant"))?;
            elliptic += 1;
        }
    }
    for (spec, auto) in [("line:k=2,R=10,m=4", "shift"), ("lattice:R=10,m=4", "translation")] {
        let (r, _) = run(&["theorems", "-g", spec, "-a", auto])?;
        ensure(one(&r, "dichotomy", Some(auto))?.verdict == Answer::Yes, format!("{spec}: no thick geodesic"))?;
        let t = one(&r, "thick-geodesic", Some(auto))?;
        ensure(t.verdict == Answer::Yes, format!("{spec}: thick geodesic rejected"))?;
    }
    Ok(format!(
        "{} weakly systolic finite complexes, {elliptic} automorphisms elliptic; thick geodesics confirmed",
        finite.len()
    ))
}

fn falsifiability() -> Check {
    let (r, _) = run(&["theorems", "-g", "wheel:k=6", "--subcomplex", "1,2,3,4,5,6"])?;
    let e = one(&r, "embedding", None)?;
    ensure(e.verdict == Answer::No, "rim embedding accepted")?;
    let Some(Witness::Distance { u, v, expected, found: Some(found) }) = e.witness else {
        return Err(format!("witness {:?}", e.witness));
    };
    let x = complex("wheel:k=6");
    let rim = x.span(&(1..=6).map(VertexId).collect::<Vec<_>>()).unwrap();
    ensure(bfs_distance(&x, u, v) == Some(expected), "ambient distance mismatch")?;
    ensure(bfs_distance(&rim, u, v) == Some(found), "subcomplex distance mismatch")?;
    ensure(found > expected, "deviation not positive")?;

    let (r, _) = run(&["theorems", "-g", "wheel:k=4", "--subcomplex", "0,1,2,3,4"])?;
    let m = one(&r, "min-systolic", None)?;
    ensure(m.verdict == Answer::No, "cone over C4 accepted")?;
    let w = m.witness.clone().ok_or("no witness")?;
    ensure(matches!(&w, Witness::Cycle { cycle, .. } if cycle.len() == 4), format!("{w}"))?;
    ensure(revalidate(&complex("wheel:k=4"), &w), "C4 link witness does not revalidate")?;
    Ok(format!("rim deviation {} at ({u}, {v}); C4 link witness {w}", found - expected))
}

fn oracle_agreement() -> Check {
    let (mut cycles, mut maps) = (0, 0);
    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.is_window() {
            continue;
        }
        if x.len() <= CYCLE_ORACLE_MAX_VERTICES {
            let max_len = x.len().max(4);
            let ours: BTreeSet<Vec<VertexId>> = enumerate_full_cycles(x, max_len)
                .unwrap()
                .into_iter()
                .map(|c| {
                    let mut v = c.into_vertices();
                    v.sort();
                    v
                })
                .collect();
            let brute = common::brute_full_cycle_sets(x, x.vertices(), max_len);
            ensure(ours == brute, format!("{}: full cycles differ", g.name))?;
            cycles += 1;
        }
        if x.len() <= SIMPLEX_ORACLE_MAX_VERTICES {
            let mut hs: Vec<_> = g.automorphisms.iter().map(|(_, h)| h.clone()).filter(|h| h.is_total()).collect();
            hs.extend(enumerate_automorphisms(x, 200));
            for h in &hs {
                let ours = find_invariant_simplex(x, h).unwrap().is_yes();
                ensure(ours == common::brute_invariant_simplex(x, h).is_some(), format!("{}: simplex search", g.name))?;
                maps += 1;
            }
        }
    }
    Ok(format!("{cycles} complexes cycle-enumerated, {maps} automorphisms scanned"))
}

fn strip_timing(s: &str) -> String {
    s.lines().filter(|l| !l.trim_start().starts_with("\"wall_ms\"")).collect::<Vec<_>>().join("\n")
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_wsc");
    let checks = "flag,full-cycles,systole,k-large,locally-k-large,tc,qc,weakly-modular,w5hat,sd,weakly-systolic,systolic";
    let verbs: Vec<Vec<&str>> = vec![
        vec!["check", "-c", checks, "--mode", "composite"],
        vec!["isometry"],
        vec!["theorems"],
    ];
    let mut compared = 0;
    for verb in &verbs {
        let mut outs = Vec::new();
        for jobs in ["1", "8", "8"] {
            let mut args = verb.clone();
            args.extend(corpus_args());
            args.extend(["--format", "structured", "--jobs", jobs]);
            let out = Process::new(bin).args(&args).output().map_err(|e| e.to_string())?;
            ensure(out.status.code().is_some(), "killed by signal")?;
            outs.push(strip_timing(&String::from_utf8_lossy(&out.stdout)));
        }
        ensure(outs[0] == outs[1], format!("{}: --jobs 1 and --jobs 8 differ", verb[0]))?;
        ensure(outs[1] == outs[2], format!("{}: repeated runs differ", verb[0]))?;
        ensure(outs[0].len() > 100, format!("{}: empty report", verb[0]))?;
        compared += outs[0].lines().count();
    }
    Ok(format!("{compared} report lines identical across --jobs 1, --jobs 8 and a repeat"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("negative controls", negative_controls),
        ("positive control", positive_control),
        ("characterization agreement", characterization_agreement),
        ("Min embeds isometrically", embedding_zero),
        ("Min is systolic", min_systolic),
        ("periodic chains and idempotence", chains_and_idempotence),
        ("elliptic or thick geodesic", dichotomy),
        ("checker falsifiability", falsifiability),
        ("oracle agreement", oracle_agreement),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let res = match res {
            Ok(s) if dt > TIME_LIMIT => Err(format!("{s}; too slow ({dt:.1?})")),
            r => r,
        };
        match res {
            Ok(s) => println!("PASS {:>2} {name}: {s} ({dt:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({dt:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
