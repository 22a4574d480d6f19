mod common;

use common::{brute_points, grid_oracle};
use isobound::bound::{certify_choice, homogeneous_bound, sharpness_certificate, theorem_bound};
use isobound::certify::verify_theorem;
use isobound::graph::{generate, Family, Graph, ProductSpec};
use isobound::minorant::build_minorant;
use isobound::profile::profile_bruteforce;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_factor(rng: &mut StdRng, max_m: usize) -> Graph {
    let m = rng.gen_range(2..=max_m);
    match rng.gen_range(0..4) {
        0 => generate(Family::Complete, m).unwrap(),
        1 => generate(Family::Path, m).unwrap(),
        2 if m >= 3 => generate(Family::Cycle, m).unwrap(),
        _ => common::random_graph(rng, m, 0.5),
    }
}

#[test]
fn greedy_matches_oracle_on_pairs() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..20 {
        let gs: Vec<Graph> = (0..2).map(|_| random_factor(&mut rng, 7)).collect();
        let psis: Vec<_> = gs.iter().map(|g| build_minorant(&profile_bruteforce(g).unwrap())).collect();
        let pts: Vec<_> = gs.iter().map(brute_points).collect();
        let end: f64 = psis.iter().map(|p| p.domain_end()).sum();
        for j in 0..=5 {
            let x = end * j as f64 / 5.0;
            let ours = theorem_bound(&psis, x).unwrap().bound_per_vertex;
            let oracle = grid_oracle(&pts, x);
            assert!((ours - oracle).abs() <= 1e-6, "x={x}: {ours} vs {oracle}");
        }
    }
}

#[test]
fn allocation_is_feasible() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let psis: Vec<_> = (0..n)
            .map(|_| build_minorant(&profile_bruteforce(&random_factor(&mut rng, 8)).unwrap()))
            .collect();
        let end: f64 = psis.iter().map(|p| p.domain_end()).sum();
        let x = rng.gen_range(0.0..=end);
        let r = theorem_bound(&psis, x).unwrap();
        let sum: f64 = r.allocation.iter().sum();
        assert!((sum - x).abs() <= 1e-9);
        for (h, p) in r.allocation.iter().zip(&psis) {
            assert!(*h >= 0.0 && *h <= p.domain_end() + 1e-12);
        }
        let value: f64 = r.allocation.iter().zip(&psis).map(|(h, p)| p.evaluate(*h).unwrap()).sum();
        assert!((value - r.bound_per_vertex).abs() <= 1e-9);
    }
}

#[test]
fn bound_is_non_increasing_in_size() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..20 {
        let psis: Vec<_> = (0..3)
            .map(|_| build_minorant(&profile_bruteforce(&random_factor(&mut rng, 6)).unwrap()))
            .collect();
        let end: f64 = psis.iter().map(|p| p.domain_end()).sum();
        let mut prev = f64::INFINITY;
        for j in 0..=40 {
            let v = theorem_bound(&psis, end * j as f64 / 40.0).unwrap().bound_per_vertex;
            assert!(v <= prev + 1e-12);
            prev = v;
        }
        assert_eq!(prev, 0.0);
    }
}

#[test]
fn homogeneous_form_agrees_with_general() {
    let mut rng = StdRng::seed_from_u64(31337);
    for _ in 0..100 {
        let psi = build_minorant(&profile_bruteforce(&random_factor(&mut rng, 8)).unwrap());
        let n = rng.gen_range(1..=5);
        let x = rng.gen_range(0.0..=n as f64 * psi.domain_end());
        let general = theorem_bound(&vec![psi.clone(); n], x).unwrap().bound_per_vertex;
        let homog = homogeneous_bound(&psi, n, x).unwrap();
        assert!((general - homog).abs() <= 1e-9 * general.max(1.0), "{general} vs {homog}");
    }
}

#[test]
fn bound_holds_on_small_products() {
    let mut rng = StdRng::seed_from_u64(4242);
    let mut checked = 0;
    while checked < 12 {
        let a = random_factor(&mut rng, 5);
        let b = random_factor(&mut rng, 5);
        if a.vertex_count() * b.vertex_count() > 20 {
            continue;
        }
        let report = verify_theorem(&ProductSpec::new(vec![a, b]).unwrap()).unwrap();
        for r in &report.rows {
            assert!(r.gap >= -1e-9 * (r.true_min_boundary as f64).max(1.0), "{:?}", r);
        }
        checked += 1;
    }
}

#[test]
fn sharpness_certificates_count_correctly() {
    let fams = [(Family::Path, 4), (Family::Cycle, 5), (Family::Complete, 3)];
    let gs: Vec<Graph> = fams.iter().map(|&(f, m)| generate(f, m).unwrap()).collect();
    let profiles: Vec<_> = gs.iter().map(|g| profile_bruteforce(g).unwrap()).collect();
    let psis: Vec<_> = profiles.iter().map(build_minorant).collect();
    let spec = ProductSpec::new(gs).unwrap();
    let mut slopes: Vec<f64> = psis.iter().flat_map(|p| p.segments().into_iter().map(|s| s.0)).collect();
    slopes.push(0.0);
    for r in slopes {
        let cert = sharpness_certificate(&profiles, &psis, r).unwrap();
        assert!(cert.holds());
        let (counted, predicted) = cert.verify_explicit(&spec, 1 << 10).unwrap();
        assert_eq!(counted as u128, predicted);
        let size = cert.set_size().unwrap() as f64;
        assert!((counted as f64 - size * cert.bound_value).abs() <= 1e-9 * counted.max(1) as f64);
    }
    // a size off the minorant is refused
    assert!(certify_choice(&profiles, &psis, &[3, 1, 1], -0.5).is_err());
    assert!(sharpness_certificate(&profiles, &psis, 0.5).is_err());
}
