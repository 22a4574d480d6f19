//! Independent reference computations shared by the integration tests. None of
//! these call into the search, hull or allocation code under test.
#![allow(dead_code)]

use isobound::graph::Graph;
use rand::rngs::StdRng;
use rand::Rng;

/// Minimum boundary over all `k`-subsets, by plain mask enumeration.
pub fn brute_min_boundary(g: &Graph, k: usize) -> u64 {
    let m = g.vertex_count();
    assert!(m <= 24, "oracle enumerates 2^m masks");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = u64::MAX;
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count() as u64;
        best = best.min(cut);
    }
    best
}

/// `(log k, i_k)` for every `k`, from [`brute_min_boundary`].
pub fn brute_points(g: &Graph) -> Vec<(f64, f64)> {
    (1..=g.vertex_count())
        .map(|k| ((k as f64).ln(), brute_min_boundary(g, k) as f64 / k as f64))
        .collect()
}

/// Largest convex function below `points` at `x`: in one dimension the
/// minimum over all chords spanning `x`.
pub fn hull_value(points: &[(f64, f64)], x: f64) -> f64 {
    let mut best = f64::INFINITY;
    for &(xa, ya) in points {
        if (xa - x).abs() <= 1e-15 {
            best = best.min(ya);
        }
        for &(xb, yb) in points {
            if xa < x && x < xb {
                let t = (x - xa) / (xb - xa);
                best = best.min(ya + t * (yb - ya));
            }
        }
    }
    best
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        if hi - lo < 1e-15 {
            break;
        }
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        if f(a) <= f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Two-factor split of `total` minimizing `f(h) + g(total - h)`, golden section only.
fn split2(p: &[(f64, f64)], q: &[(f64, f64)], total: f64) -> f64 {
    let (ep, eq) = (p.last().unwrap().0, q.last().unwrap().0);
    let lo = (total - eq).max(0.0);
    let hi = total.min(ep);
    if hi <= lo {
        return hull_value(p, lo.clamp(0.0, ep)) + hull_value(q, (total - lo).clamp(0.0, eq));
    }
    let f = |h: f64| hull_value(p, h) + hull_value(q, (total - h).clamp(0.0, eq));
    let (_, v) = golden_min(f, lo, hi);
    v.min(f(lo)).min(f(hi))
}

/// Minimum of `sum psi_i(h_i)` subject to `sum h_i = total`, `0 <= h_i <= log m_i`.
/// One or two factors: a 1e-4 grid, refined by golden section around the best
/// grid point. Three factors: nested golden section.
pub fn grid_oracle(factors: &[Vec<(f64, f64)>], total: f64) -> f64 {
    match factors.len() {
        1 => hull_value(&factors[0], total.clamp(0.0, factors[0].last().unwrap().0)),
        2 => {
            let (p, q) = (&factors[0], &factors[1]);
            let (ep, eq) = (p.last().unwrap().0, q.last().unwrap().0);
            let lo = (total - eq).max(0.0);
            let hi = total.min(ep);
            let f = |h: f64| hull_value(p, h.clamp(0.0, ep)) + hull_value(q, (total - h).clamp(0.0, eq));
            if hi <= lo {
                return f(lo);
            }
            let step = 1e-4;
            let steps = ((hi - lo) / step).ceil() as usize;
            let mut best = (lo, f(lo));
            for j in 0..=steps {
                let h = (lo + j as f64 * step).min(hi);
                let v = f(h);
                if v < best.1 {
                    best = (h, v);
                }
            }
            let (_, refined) = golden_min(f, (best.0 - step).max(lo), (best.0 + step).min(hi));
            best.1.min(refined)
        }
        3 => {
            let (p, q, r) = (&factors[0], &factors[1], &factors[2]);
            let ep = p.last().unwrap().0;
            let rest = q.last().unwrap().0 + r.last().unwrap().0;
            let lo = (total - rest).max(0.0);
            let hi = total.min(ep);
            let f = |h: f64| hull_value(p, h.clamp(0.0, ep)) + split2(q, r, (total - h).max(0.0));
            if hi <= lo {
                return f(lo);
            }
            let (_, v) = golden_min(f, lo, hi);
            v.min(f(lo)).min(f(hi))
        }
        n => panic!("oracle handles at most three factors, got {n}"),
    }
}

/// Random simple graph on `m` vertices with edge probability `p`.
pub fn random_graph(rng: &mut StdRng, m: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(m, edges).unwrap()
}
