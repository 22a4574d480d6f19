mod common;

use isobound::bound::{homogeneous_bound, theorem_bound};
use isobound::closed_forms::{
    bl_bound, connected_regular_bound, grid_bound, hamming_bound, regular_power_bound, regular_product_bound,
    torus_bound,
};
use isobound::graph::{cartesian_product, generate, petersen, Family, Graph, ProductSpec};
use isobound::minorant::{build_minorant, regular_summary};
use isobound::profile::{profile_bruteforce, profile_closed_form};

const TOL: f64 = 1e-9;

fn samples(end: f64) -> impl Iterator<Item = f64> {
    (0..=60).map(move |j| end * j as f64 / 60.0)
}

#[test]
fn hamming_equals_product_bound() {
    for m in 2..=8 {
        let psi = build_minorant(&profile_closed_form(Family::Complete, m).unwrap());
        for n in 1..=5 {
            for x in samples(n as f64 * (m as f64).ln()) {
                let a = hamming_bound(n, m, x).unwrap();
                let b = homogeneous_bound(&psi, n, x).unwrap();
                assert!((a - b).abs() <= TOL * b.max(1.0), "m={m} n={n} x={x}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn grid_and_torus_are_dominated() {
    for m in 3..=12 {
        let pp = build_minorant(&profile_closed_form(Family::Path, m).unwrap());
        let pc = build_minorant(&profile_closed_form(Family::Cycle, m).unwrap());
        for n in 1..=5 {
            for x in samples(n as f64 * (m as f64).ln()) {
                assert!(grid_bound(n, m, x).unwrap() <= homogeneous_bound(&pp, n, x).unwrap() + TOL);
                assert!(torus_bound(n, m, x).unwrap() <= homogeneous_bound(&pc, n, x).unwrap() + TOL);
            }
        }
    }
}

#[test]
fn small_set_regime_matches_bollobas_leader() {
    for (n, m) in [(2usize, 4usize), (3, 6), (4, 9), (6, 12)] {
        let split = n as f64 * ((m as f64).ln() - 1.0);
        for x in samples(split.max(0.0)) {
            for torus in [false, true] {
                let ours = if torus { torus_bound(n, m, x) } else { grid_bound(n, m, x) }.unwrap();
                let bl = bl_bound(n, m, x, torus).unwrap();
                assert!((ours - bl).abs() <= 1e-12 * bl.max(1.0), "n={n} m={m} x={x}");
            }
        }
    }
}

fn regular_factors() -> Vec<Graph> {
    vec![
        generate(Family::Cycle, 4).unwrap(),
        generate(Family::Cycle, 7).unwrap(),
        generate(Family::Complete, 3).unwrap(),
        generate(Family::Complete, 5).unwrap(),
        petersen(),
    ]
}

#[test]
fn regular_forms_are_dominated() {
    let gs = regular_factors();
    for i in 0..gs.len() {
        for j in 0..gs.len() {
            let pair = [&gs[i], &gs[j]];
            let psis: Vec<_> = pair.iter().map(|g| build_minorant(&profile_bruteforce(g).unwrap())).collect();
            let sizes: Vec<usize> = pair.iter().map(|g| g.vertex_count()).collect();
            let degrees: Vec<usize> = pair.iter().map(|g| g.regular_degree().unwrap()).collect();
            let total: f64 = sizes.iter().map(|&m| (m as f64).ln()).sum();
            for x in samples(total) {
                let ours = theorem_bound(&psis, x).unwrap().bound_per_vertex;
                assert!(regular_product_bound(&degrees, &sizes, x).unwrap() <= ours + TOL);
                assert!(connected_regular_bound(&sizes, x, total).unwrap() <= ours + TOL);
            }
        }
        let g = &gs[i];
        let p = profile_bruteforce(g).unwrap();
        let s = regular_summary(g, &p).unwrap();
        let psi = build_minorant(&p);
        let m = g.vertex_count();
        for n in 1..=4 {
            for x in samples(n as f64 * (m as f64).ln()) {
                assert!(regular_power_bound(&s, m, n, x).unwrap() <= homogeneous_bound(&psi, n, x).unwrap() + TOL);
            }
        }
    }
}

#[test]
fn closed_forms_below_exact_minima() {
    // explicit products small enough for mask enumeration
    let cases: Vec<(Family, usize, usize)> = vec![
        (Family::Path, 4, 2),
        (Family::Path, 3, 2),
        (Family::Cycle, 4, 2),
        (Family::Complete, 4, 2),
        (Family::Complete, 2, 4),
    ];
    for (family, m, n) in cases {
        let g = generate(family, m).unwrap();
        let prod = cartesian_product(&ProductSpec::power(&g, n).unwrap()).unwrap();
        for k in 1..=prod.vertex_count() {
            let truth = common::brute_min_boundary(&prod, k) as f64 / k as f64;
            let x = (k as f64).ln();
            let closed = match family {
                Family::Complete => hamming_bound(n, m, x),
                Family::Path => grid_bound(n, m, x),
                Family::Cycle => torus_bound(n, m, x),
            }
            .unwrap();
            assert!(closed <= truth + TOL, "{family}:{m}^{n} k={k}: {closed} > {truth}");
        }
    }
}
