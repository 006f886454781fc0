//! Library results against the brute-force references in `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use wsc_core::conditions::{quadrangle_condition, sd_property, triangle_condition};
use wsc_core::cycles::enumerate_full_cycles;
use wsc_core::generators::{self, named};
use wsc_core::isometry::{enumerate_automorphisms, find_invariant_simplex};
use wsc_core::validate::{revalidate, thick_brute_force};
use wsc_core::{Answer, FlagComplex, VertexId, Witness};

fn cycle_sets(x: &FlagComplex, max_len: usize) -> BTreeSet<Vec<VertexId>> {
    enumerate_full_cycles(x, max_len)
        .unwrap()
        .into_iter()
        .map(|c| {
            let mut v = c.into_vertices();
            v.sort();
            v
        })
        .collect()
}

#[test]
fn lattice_ball_full_cycles() {
    // frozen from brute_full_cycle_sets on the radius-2 ball: the seven
    // vertex links are 6-cycles, twelve 8-cycles go around pairs of adjacent
    // vertices, and nothing of length 4, 5 or 7 exists
    let w = generators::triangular_lattice_window(2, 0).unwrap();
    let x = w.complex();
    let brute = brute_full_cycle_sets(x, x.vertices(), 8);
    let mut by_len = BTreeMap::new();
    for s in &brute {
        *by_len.entry(s.len()).or_insert(0) += 1;
    }
    assert_eq!(by_len, BTreeMap::from([(6, 7), (8, 12)]));
    assert_eq!(cycle_sets(x, 8), brute);
    assert!(cycle_sets(x, 5).is_empty());
}

#[test]
fn corpus_full_cycles_match_subset_search() {
    let mut compared = 0;
    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.len() > 14 || x.is_window() {
            continue;
        }
        let brute = brute_full_cycle_sets(x, x.vertices(), x.len());
        assert_eq!(cycle_sets(x, x.len().max(4)), brute, "{}", g.name);
        for c in enumerate_full_cycles(x, x.len().max(4)).unwrap() {
            let w = Witness::Cycle { ambient: wsc_core::verdict::Ambient::Complex, cycle: c.into_vertices() };
            assert!(revalidate(x, &w), "{}", g.name);
        }
        compared += 1;
    }
    assert!(compared >= 15);
}

#[test]
fn invariant_simplices_match_clique_scan() {
    let mut compared = 0;
    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.len() > 30 || x.is_window() {
            continue;
        }
        let mut maps: Vec<_> = g.automorphisms.iter().map(|(_, h)| h.clone()).collect();
        if x.len() <= 16 {
            maps.extend(enumerate_automorphisms(x, 200));
        }
        for h in &maps {
            let ours = find_invariant_simplex(x, h).unwrap();
            let brute = brute_invariant_simplex(x, h);
            if h.is_total() {
                assert_eq!(ours.answer == Answer::Yes, brute.is_some(), "{}", g.name);
            } else if brute.is_some() {
                assert_ne!(ours.answer, Answer::No, "{}", g.name);
            }
            if let Some(Witness::Clique(s)) = &ours.witness {
                let img: BTreeSet<_> = s.vertices().iter().map(|&v| h.apply(v).unwrap()).collect();
                assert_eq!(img, s.vertices().iter().copied().collect(), "{}", g.name);
                assert!(x.is_clique(s.vertices()));
            }
            compared += 1;
        }
    }
    assert!(compared > 100);
}

#[test]
fn distances_match_floyd() {
    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.len() > 70 {
            continue;
        }
        let d = floyd(x);
        let vs = x.vertices();
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                let want = (d[i][j] < INF).then_some(d[i][j]);
                assert_eq!(x.distance(u, v).unwrap(), want, "{}", g.name);
            }
        }
    }
}

#[test]
fn metric_conditions_match_brute_force() {
    // C6 is bipartite, so no pair of adjacent vertices is equidistant from
    // anything: the triangle condition holds vacuously while the
    // quadrangle condition fails
    let c6 = named::cycle(6);
    assert!(brute_tc(&c6, c6.vertices(), 99));
    assert!(!brute_qc(&c6, c6.vertices(), 99));
    assert_eq!(triangle_condition(&c6).answer, Answer::Yes);
    assert_eq!(quadrangle_condition(&c6).answer, Answer::No);

    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.is_window() || x.len() > 30 {
            continue;
        }
        let tc = triangle_condition(x);
        let qc = quadrangle_condition(x);
        assert_eq!(tc.answer == Answer::Yes, brute_tc(x, x.vertices(), 99), "tc {}", g.name);
        assert_eq!(qc.answer == Answer::Yes, brute_qc(x, x.vertices(), 99), "qc {}", g.name);
        for v in [tc, qc] {
            if let Some(w) = v.witness {
                assert!(revalidate(x, &w), "{} {w}", g.name);
            }
        }
    }
}

#[test]
fn sd_matches_definition() {
    let oct = named::octahedron();
    assert!(brute_sd(&oct, VertexId(0), 0));
    assert!(!brute_sd(&oct, VertexId(0), 1));
    for g in generators::corpus().unwrap() {
        let x = &g.complex;
        if x.is_window() || x.len() > 14 || !x.is_connected() {
            continue;
        }
        for &v in x.vertices() {
            for n in 0..3 {
                let ours = sd_property(x, v, n).unwrap();
                assert_eq!(ours.answer == Answer::Yes, brute_sd(x, v, n), "{} v={v} n={n}", g.name);
                if let Some(w) = ours.witness {
                    assert!(revalidate(x, &w));
                }
            }
        }
    }
}

#[test]
fn thick_witnesses_pass_the_brute_force_check() {
    for (spec, name, k) in [
        ("line:k=2,R=10,m=4", "shift", 2),
        ("line:k=3,R=10,m=4", "shift", 3),
        ("lattice:R=10,m=4", "translation", 1),
    ] {
        let g = generators::generate(&spec.parse().unwrap()).unwrap();
        let h = g.automorphism(name).unwrap();
        let d = wsc_core::mindisp::dichotomy_report(&g.complex, h).unwrap();
        let wsc_core::mindisp::Dichotomy::Thick { witness, .. } = d else { panic!("{spec}: {d}") };
        assert_eq!(witness.k, k, "{spec}");
        assert!(thick_brute_force(&g.complex, witness.k, &witness.vertices), "{spec}");
    }
}
