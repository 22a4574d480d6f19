//! Exact isoperimetric profiles `i_k(G) = min { e(A, A^c) / |A| : |A| = k }`.
//!
//! Profiles of the standard families come from closed forms; anything else is
//! solved by a depth-first branch-and-bound over vertex subsets. The search
//! decides vertices in index order and tries "include" before "exclude", so
//! `k`-subsets are visited in lexicographic order of their sorted member lists.
//! Only strict improvements replace the incumbent, which makes the reported
//! witness the lexicographically smallest minimizer.

use std::io::Write;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::vertex_set::VertexSet;

/// Graph-size limits for the exact search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub prune: bool,
    /// Largest graph searched without pruning.
    pub exhaustive_cap: usize,
    /// Largest graph searched with pruning enabled.
    pub pruned_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            prune: true,
            exhaustive_cap: 20,
            pruned_cap: 30,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig {
            prune: false,
            ..Self::default()
        }
    }

    fn cap(&self) -> usize {
        if self.prune {
            self.pruned_cap
        } else {
            self.exhaustive_cap
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub k: usize,
    pub min_boundary: u64,
    pub witness: VertexSet,
}

impl ProfileEntry {
    /// `i_k` as a reduced fraction.
    pub fn i_k(&self) -> Ratio<u64> {
        Ratio::new(self.min_boundary, self.k as u64)
    }

    pub fn i_k_f64(&self) -> f64 {
        self.min_boundary as f64 / self.k as f64
    }
}

impl Serialize for ProfileEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRecord::from(self).serialize(s)
    }
}

/// Flat row used for CSV and JSON output.
#[derive(Debug, Serialize)]
struct ProfileRecord {
    k: usize,
    min_boundary: u64,
    i_k_num: u64,
    i_k_den: u64,
    witness: String,
}

impl From<&ProfileEntry> for ProfileRecord {
    fn from(e: &ProfileEntry) -> Self {
        let r = e.i_k();
        ProfileRecord {
            k: e.k,
            min_boundary: e.min_boundary,
            i_k_num: *r.numer(),
            i_k_den: *r.denom(),
            witness: e.witness.to_hex(),
        }
    }
}

/// `i_k(G)` for every `k` in `1..=m`, each with one minimizing witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoProfile {
    graph_size: usize,
    entries: Vec<ProfileEntry>,
}

impl IsoProfile {
    pub fn new(graph_size: usize, entries: Vec<ProfileEntry>) -> Result<Self> {
        if graph_size == 0 || entries.len() != graph_size {
            return Err(Error::InvalidParameter(format!(
                "profile of a {graph_size}-vertex graph needs {graph_size} entries, got {}",
                entries.len()
            )));
        }
        for (i, e) in entries.iter().enumerate() {
            if e.k != i + 1 || e.witness.len() != e.k || e.witness.universe() != graph_size {
                return Err(Error::InvalidParameter(format!("malformed profile entry for k = {}", i + 1)));
            }
        }
        if entries[graph_size - 1].min_boundary != 0 {
            return Err(Error::InvalidParameter("i_m must be zero".into()));
        }
        Ok(IsoProfile { graph_size, entries })
    }

    pub fn graph_size(&self) -> usize {
        self.graph_size
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    /// Entry for size `k` (1-based).
    pub fn entry(&self, k: usize) -> Option<&ProfileEntry> {
        k.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn i_k(&self, k: usize) -> Ratio<u64> {
        self.entries[k - 1].i_k()
    }

    pub fn i_k_f64(&self, k: usize) -> f64 {
        self.entries[k - 1].i_k_f64()
    }

    /// Writes `k,min_boundary,i_k_num,i_k_den,witness` rows with a header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for e in &self.entries {
            out.serialize(ProfileRecord::from(e)).map_err(|e| Error::Io(e.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Profile of `K_m`, `P_m` or `C_m` from the closed forms
/// `m - k`, `1/k` and `2/k` (zero at `k = m`).
pub fn profile_closed_form(family: Family, m: usize) -> Result<IsoProfile> {
    // validates m for the family
    generate(family, m)?;
    let entries = (1..=m)
        .map(|k| {
            let min_boundary = if k == m {
                0
            } else {
                match family {
                    Family::Complete => (k * (m - k)) as u64,
                    Family::Path => 1,
                    Family::Cycle => 2,
                }
            };
            ProfileEntry {
                k,
                min_boundary,
                witness: VertexSet::from_members(m, 0..k).expect("prefix is in range"),
            }
        })
        .collect();
    IsoProfile::new(m, entries)
}

/// Exact profile with the default search configuration.
pub fn profile_bruteforce(g: &Graph) -> Result<IsoProfile> {
    profile_with(g, &SearchConfig::default())
}

pub fn profile_with(g: &Graph, config: &SearchConfig) -> Result<IsoProfile> {
    let m = g.vertex_count();
    check_cap(m, config)?;
    let searcher = Searcher::new(g, config.prune);
    let entries = (1..=m)
        .into_par_iter()
        .map(|k| searcher.solve(k))
        .collect::<Vec<_>>();
    IsoProfile::new(m, entries)
}

/// Exact minimum boundary over `k`-subsets and the canonical witness.
pub fn min_boundary(g: &Graph, k: usize) -> Result<(u64, VertexSet)> {
    min_boundary_with(g, k, &SearchConfig::default())
}

pub fn min_boundary_with(g: &Graph, k: usize, config: &SearchConfig) -> Result<(u64, VertexSet)> {
    let m = g.vertex_count();
    if k == 0 || k > m {
        return Err(Error::Domain(format!("k = {k} outside 1..={m}")));
    }
    check_cap(m, config)?;
    let e = Searcher::new(g, config.prune).solve(k);
    Ok((e.min_boundary, e.witness))
}

fn check_cap(m: usize, config: &SearchConfig) -> Result<()> {
    let cap = config.cap().min(64);
    if m > cap {
        return Err(Error::CapExceeded {
            what: "exact profile search",
            required: m as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

struct Searcher {
    m: usize,
    adj: Vec<Vec<usize>>,
    masks: Vec<u64>,
    prune: bool,
}

struct SearchState {
    /// neighbours of v already placed inside
    inside: Vec<u32>,
    /// neighbours of v already placed outside
    outside: Vec<u32>,
    chosen: u64,
    best: u64,
    best_mask: Option<u64>,
    scratch: Vec<i64>,
}

impl Searcher {
    fn new(g: &Graph, prune: bool) -> Self {
        let m = g.vertex_count();
        Searcher {
            m,
            adj: (0..m).map(|v| g.neighbors(v).to_vec()).collect(),
            masks: g.neighbor_masks().expect("graph within 64 vertices"),
            prune,
        }
    }

    fn boundary(&self, mask: u64) -> u64 {
        let mut total = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (self.masks[v] & !mask).count_ones() as u64;
        }
        total
    }

    fn solve(&self, k: usize) -> ProfileEntry {
        let m = self.m;
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let (min_boundary, mask) = if k == m {
            (0, full)
        } else {
            // Seed with the prefix set; +1 so an equal-valued but
            // lexicographically earlier set still replaces it.
            let prefix = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
            let mut state = SearchState {
                inside: vec![0; m],
                outside: vec![0; m],
                chosen: 0,
                best: self.boundary(prefix) + 1,
                best_mask: None,
                scratch: Vec::with_capacity(m),
            };
            self.descend(0, k, 0, &mut state);
            let mask = state.best_mask.expect("seed bound guarantees a solution");
            (state.best, mask)
        };
        ProfileEntry {
            k,
            min_boundary,
            witness: VertexSet::from_mask(m, mask),
        }
    }

    /// Lower bound on the final boundary given vertices `0..next` are decided.
    /// Each undecided `v` adds `outside[v]` if chosen and `inside[v]` if not;
    /// exactly `need` of them are chosen, and undecided-undecided edges count as zero.
    fn lower_bound(&self, next: usize, need: usize, cost: u64, state: &mut SearchState) -> u64 {
        let mut base = 0i64;
        state.scratch.clear();
        for v in next..self.m {
            let a = state.inside[v] as i64;
            let b = state.outside[v] as i64;
            base += a;
            state.scratch.push(b - a);
        }
        if need > 0 {
            state.scratch.select_nth_unstable(need - 1);
            base += state.scratch[..need].iter().sum::<i64>();
        }
        cost + base.max(0) as u64
    }

    fn descend(&self, next: usize, need: usize, cost: u64, state: &mut SearchState) {
        let remaining = self.m - next;
        if need == 0 {
            // all remaining vertices go outside
            let extra: u64 = (next..self.m).map(|v| state.inside[v] as u64).sum();
            let total = cost + extra;
            if total < state.best {
                state.best = total;
                state.best_mask = Some(state.chosen);
            }
            return;
        }
        if remaining < need {
            return;
        }
        if remaining == need {
            let extra: u64 = (next..self.m).map(|v| state.outside[v] as u64).sum();
            let total = cost + extra;
            if total < state.best {
                state.best = total;
                state.best_mask = Some(state.chosen | ((u64::MAX >> (64 - remaining)) << next));
            }
            return;
        }
        if cost >= state.best {
            return;
        }
        if self.prune && self.lower_bound(next, need, cost, state) >= state.best {
            return;
        }

        let v = next;
        // include v
        let added = state.outside[v] as u64;
        state.chosen |= 1 << v;
        for &w in &self.adj[v] {
            state.inside[w] += 1;
        }
        self.descend(next + 1, need - 1, cost + added, state);
        for &w in &self.adj[v] {
            state.inside[w] -= 1;
        }
        state.chosen &= !(1 << v);

        // exclude v
        let added = state.inside[v] as u64;
        for &w in &self.adj[v] {
            state.outside[w] += 1;
        }
        self.descend(next + 1, need, cost + added, state);
        for &w in &self.adj[v] {
            state.outside[w] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, petersen, ProductSpec};

    fn k(m: usize) -> Graph {
        generate(Family::Complete, m).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let p = profile_closed_form(Family::Complete, 5).unwrap();
        assert_eq!(p.entry(2).unwrap().min_boundary, 6);
        assert_eq!(p.i_k(2), Ratio::from_integer(3));
        let p = profile_closed_form(Family::Path, 5).unwrap();
        assert_eq!(p.i_k(3), Ratio::new(1, 3));
        let p = profile_closed_form(Family::Cycle, 6).unwrap();
        assert_eq!(p.i_k(3), Ratio::new(2, 3));
        assert_eq!(p.entry(3).unwrap().min_boundary, 2);
        assert!(profile_closed_form(Family::Cycle, 2).is_err());
    }

    #[test]
    fn closed_form_witnesses_are_tight() {
        for family in [Family::Complete, Family::Path, Family::Cycle] {
            for m in 3..9 {
                let g = generate(family, m).unwrap();
                for e in profile_closed_form(family, m).unwrap().entries() {
                    assert_eq!(g.edge_boundary(&e.witness) as u64, e.min_boundary);
                }
            }
        }
    }

    #[test]
    fn complete_graph_matches_closed_form() {
        assert_eq!(
            profile_bruteforce(&k(4)).unwrap(),
            profile_closed_form(Family::Complete, 4).unwrap()
        );
    }

    #[test]
    fn petersen_half_is_five() {
        // the 5-vertex induced subgraphs of a girth-5 cubic graph have at most 5 edges
        let (value, witness) = min_boundary(&petersen(), 5).unwrap();
        assert_eq!(value, 5);
        assert_eq!(witness.to_vec(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn hypercube_q3_half_is_subcube() {
        let q3 = cartesian_product(&ProductSpec::power(&k(2), 3).unwrap()).unwrap();
        let (value, witness) = min_boundary(&q3, 4).unwrap();
        assert_eq!(value, 4);
        assert_eq!(witness.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_k_examples() {
        let c5 = generate(Family::Cycle, 5).unwrap();
        let (v, w) = min_boundary(&c5, 5).unwrap();
        assert_eq!((v, w.len()), (0, 5));
        let p4 = generate(Family::Path, 4).unwrap();
        let (v, w) = min_boundary(&p4, 2).unwrap();
        assert_eq!((v, w.to_vec()), (1, vec![0, 1]));
        assert!(min_boundary(&p4, 0).is_err());
        assert!(min_boundary(&p4, 5).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let p = generate(Family::Path, 25).unwrap();
        assert!(matches!(
            profile_with(&p, &SearchConfig::exhaustive()),
            Err(Error::CapExceeded { .. })
        ));
        let p = generate(Family::Path, 31).unwrap();
        assert!(matches!(profile_bruteforce(&p), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn pruned_and_plain_agree() {
        let g = cartesian_product(
            &ProductSpec::new(vec![generate(Family::Path, 3).unwrap(), generate(Family::Cycle, 4).unwrap()])
                .unwrap(),
        )
        .unwrap();
        assert_eq!(
            profile_with(&g, &SearchConfig::exhaustive()).unwrap(),
            profile_bruteforce(&g).unwrap()
        );
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        profile_closed_form(Family::Path, 3).unwrap().write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,min_boundary,i_k_num,i_k_den,witness\n1,1,1,1,1\n2,1,1,2,3\n3,0,0,1,7\n"
        );
    }
}
