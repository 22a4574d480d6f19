//! Brute-force checks of the product bound and certificates for two questions
//! on powers of regular graphs:
//!
//! * whether `i_a(G^n)` is affine in `log a` ([`q71_witness`] exhibits three
//!   sizes where it is not), and
//! * whether the slabs `B_t = {u}^t x V^{n-t}` are always boundary-optimal
//!   ([`q72_certificate`] exhibits a Dirichlet-type counterexample whenever
//!   `y_G < d`).
//!
//! Certificate arithmetic is normalized by `m^t` so no power of `m` is ever
//! formed.

use serde::Serialize;

use crate::bound::{approx_eq, certify_choice, homogeneous_bound, theorem_bound, CERTIFICATE_TOL};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product_capped, Graph, ProductSpec, DEFAULT_MAX_VERTICES};
use crate::minorant::{build_minorant, ConvexMinorant, RegularSummary};
use crate::profile::{profile_bruteforce, profile_with, IsoProfile, SearchConfig};
use crate::vertex_set::VertexSet;

/// Largest product verified at every size.
pub const ALL_SIZES_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRow {
    pub k: usize,
    pub true_min_boundary: u64,
    pub theorem_bound_total: f64,
    pub gap: f64,
    pub tight: bool,
    pub witness: VertexSet,
}

impl VerificationRow {
    /// The bound does not exceed the truth beyond tolerance.
    pub fn valid(&self) -> bool {
        self.gap >= -CERTIFICATE_TOL * (self.true_min_boundary as f64).max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub product: String,
    pub factor_sizes: Vec<usize>,
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(VerificationRow::valid)
    }

    pub fn tight_sizes(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.tight).map(|r| r.k).collect()
    }
}

fn describe(spec: &ProductSpec) -> String {
    spec.factors()
        .iter()
        .map(|g| g.label().unwrap_or("G").to_string())
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Compares the exact profile of the explicit product with the product bound
/// at every size. Products above [`ALL_SIZES_CAP`] vertices are refused.
pub fn verify_theorem(spec: &ProductSpec) -> Result<VerificationReport> {
    let total = spec.vertex_count();
    if total > ALL_SIZES_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "all-size verification",
            required: total,
            cap: ALL_SIZES_CAP as u128,
        });
    }
    let sizes: Vec<usize> = (1..=total as usize).collect();
    verify_theorem_sizes(spec, &sizes, &SearchConfig::default())
}

/// Same as [`verify_theorem`] for an explicit list of sizes; the product must
/// be within the exact search cap of `config`.
pub fn verify_theorem_sizes(
    spec: &ProductSpec,
    sizes: &[usize],
    config: &SearchConfig,
) -> Result<VerificationReport> {
    let g = cartesian_product_capped(spec, DEFAULT_MAX_VERTICES)?;
    let m = g.vertex_count();
    if let Some(&bad) = sizes.iter().find(|&&k| k == 0 || k > m) {
        return Err(Error::Domain(format!("size {bad} outside 1..={m}")));
    }
    let minorants = spec
        .factors()
        .iter()
        .map(|f| profile_bruteforce(f).map(|p| build_minorant(&p)))
        .collect::<Result<Vec<_>>>()?;
    let truth = if sizes.len() == m {
        profile_with(&g, config)?.entries().to_vec()
    } else {
        sizes
            .iter()
            .map(|&k| {
                crate::profile::min_boundary_with(&g, k, config).map(|(v, w)| {
                    crate::profile::ProfileEntry {
                        k,
                        min_boundary: v,
                        witness: w,
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?
    };
    let rows = truth
        .into_iter()
        .map(|e| {
            let per_vertex = theorem_bound(&minorants, (e.k as f64).ln())?.bound_per_vertex;
            let bound_total = e.k as f64 * per_vertex;
            let gap = e.min_boundary as f64 - bound_total;
            Ok(VerificationRow {
                k: e.k,
                true_min_boundary: e.min_boundary,
                theorem_bound_total: bound_total,
                gap,
                tight: gap.abs() <= CERTIFICATE_TOL * (e.min_boundary as f64).max(1.0),
                witness: e.witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        product: describe(spec),
        factor_sizes: spec.sizes(),
        rows,
    })
}

/// Exact value of `i_a(G^n)` at a size `a = k^n` with `k` a breakpoint of
/// `psi_G`, pinned from below by the bound and from above by `W^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinnedValue {
    pub k: usize,
    /// `k^n`, when it fits in 128 bits.
    pub size: Option<u128>,
    pub log_size: f64,
    /// `n psi(log k)`.
    pub lower: f64,
    /// Boundary per vertex of `W^n` for the profile witness `W`.
    pub upper: f64,
    /// Boundary of `W^n` counted in the explicit product, when materialized.
    pub explicit_boundary: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonlinearityWitness {
    pub graph: String,
    pub n: usize,
    pub points: [PinnedValue; 3],
    /// Affine interpolation in `log a` between the outer two points, minus
    /// the exact middle value. Positive since `i_a(G^n)` is convex there.
    pub residual: f64,
}

/// Explicit products up to this many vertices are counted directly in [`q71_witness`].
pub const Q71_EXPLICIT_CAP: usize = 1 << 16;

/// Three sizes where `i_a(G^n)` is not affine in `log a`.
pub fn q71_witness(g: &Graph, p: &IsoProfile, psi: &ConvexMinorant, n: usize) -> Result<NonlinearityWitness> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    if p.graph_size() != g.vertex_count() {
        return Err(Error::InvalidParameter("profile does not match graph".into()));
    }
    if psi.segment_count() < 2 {
        return Err(Error::Precondition(
            "psi linear - no witness exists for this G".into(),
        ));
    }
    let spec = ProductSpec::power(g, n)?;
    let explicit = (spec.vertex_count() <= Q71_EXPLICIT_CAP as u128)
        .then(|| cartesian_product_capped(&spec, Q71_EXPLICIT_CAP))
        .transpose()?;

    let profiles = vec![p.clone(); n];
    let minorants = vec![psi.clone(); n];
    let pin = |k: usize| -> Result<PinnedValue> {
        let x = (k as f64).ln();
        // any r in the subdifferential works; the right derivative is always finite
        let r = psi.one_sided_derivatives(x)?.right;
        let cert = certify_choice(&profiles, &minorants, &vec![k; n], r)?;
        let lower = homogeneous_bound(psi, n, n as f64 * x)?;
        if !approx_eq(lower, cert.bound_value, CERTIFICATE_TOL)
            || !approx_eq(lower, cert.construction_value, CERTIFICATE_TOL)
        {
            return Err(Error::Precondition(format!(
                "size {k}^{n} is not pinned: lower {lower}, upper {}",
                cert.construction_value
            )));
        }
        let explicit_boundary = match &explicit {
            Some(prod) => {
                let sets: Vec<VertexSet> = cert.factors.iter().map(|f| f.witness.clone()).collect();
                let a = spec.product_set(&sets, Q71_EXPLICIT_CAP)?;
                Some(prod.edge_boundary(&a) as u64)
            }
            None => None,
        };
        Ok(PinnedValue {
            k,
            size: cert.set_size(),
            log_size: cert.log_size,
            lower,
            upper: cert.construction_value,
            explicit_boundary,
        })
    };

    let bps = psi.breakpoints();
    let points = [pin(bps[0].k)?, pin(bps[1].k)?, pin(bps[2].k)?];
    let [a, b, c] = &points;
    let t = (b.log_size - a.log_size) / (c.log_size - a.log_size);
    let interpolated = a.upper + t * (c.upper - a.upper);
    Ok(NonlinearityWitness {
        graph: g.label().unwrap_or("G").to_string(),
        n,
        residual: interpolated - b.upper,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Q72Config {
    pub t_max: u64,
    pub eps_min: f64,
}

impl Default for Q72Config {
    fn default() -> Self {
        Q72Config {
            t_max: 1_000_000,
            eps_min: 1e-12,
        }
    }
}

/// Data showing that in `G^{s+t}` some `m^t`-set beats the slab
/// `B = {u}^s x V^t`. All boundary quantities are divided by `m^t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCertificate {
    pub m: usize,
    pub degree: usize,
    pub k_star: usize,
    pub y_g: f64,
    pub i_k_star: f64,
    /// Profile witness `S` with `|S| = k*`; the competitor set is `A = S^t x V^s`.
    pub witness: VertexSet,
    pub epsilon: f64,
    pub s: u64,
    pub t: u64,
    /// `|s log m - t log(m/k*)|`, at most `epsilon / 2`.
    pub dirichlet_error: f64,
    /// `log(|A| / m^t) = t log k* + s log m - t log m`.
    pub log_size_ratio: f64,
    /// `e(A, A^c) / m^t`.
    pub a_boundary: f64,
    /// `(1 + eps)(s y_G + eps)`, the recorded upper estimate of `a_boundary`.
    pub a_boundary_cap: f64,
    /// Normalized `(1+eps)(s y_G + eps) + eps s d (1 + (log m + eps/2)/log(m/k*))`.
    pub lhs: f64,
    /// `e(B, B^c) / m^t = s d`.
    pub rhs: f64,
}

impl DirichletCertificate {
    /// Recomputes every recorded inequality from `(m, d, k*, i_{k*}, eps, s, t)`.
    pub fn recheck(&self) -> std::result::Result<(), String> {
        let log_m = (self.m as f64).ln();
        let log_ratio = (self.m as f64 / self.k_star as f64).ln();
        let (s, t, eps, d) = (self.s as f64, self.t as f64, self.epsilon, self.degree as f64);
        let y_g = self.i_k_star * log_m / log_ratio;
        if !approx_eq(y_g, self.y_g, 1e-12) {
            return Err(format!("y_G mismatch: {y_g} vs {}", self.y_g));
        }
        let err = (s * log_m - t * log_ratio).abs();
        if err > eps / 2.0 {
            return Err(format!("Dirichlet error {err} exceeds eps/2 = {}", eps / 2.0));
        }
        let log_a = t * (self.k_star as f64).ln() + s * log_m - t * log_m;
        if log_a > (1.0 + eps).ln() || log_a < (1.0 - eps).ln() {
            return Err(format!("|A|/m^t = {} outside [1 - eps, 1 + eps]", log_a.exp()));
        }
        let a_boundary = log_a.exp() * t * self.i_k_star;
        let a_cap = (1.0 + eps) * (s * y_g + eps);
        if a_boundary > a_cap {
            return Err(format!("e(A)/m^t = {a_boundary} exceeds {a_cap}"));
        }
        let lhs = a_cap + eps * s * d * (1.0 + (log_m + eps / 2.0) / log_ratio);
        let rhs = s * d;
        if lhs >= rhs {
            return Err(format!("lhs {lhs} is not below rhs {rhs}"));
        }
        Ok(())
    }
}

fn dirichlet_pair(log_m: f64, log_ratio: f64, eps: f64, t_max: u64) -> Option<(u64, u64, f64)> {
    let ratio = log_ratio / log_m;
    (1..=t_max).find_map(|t| {
        let s = (t as f64 * ratio).round() as u64;
        if s == 0 {
            return None;
        }
        let err = (s as f64 * log_m - t as f64 * log_ratio).abs();
        (err <= eps / 2.0).then_some((s, t, err))
    })
}

/// Searches for a Dirichlet certificate, halving `eps` from `eps_start`.
pub fn q72_certificate(
    g: &Graph,
    summary: &RegularSummary,
    p: &IsoProfile,
    eps_start: f64,
) -> Result<DirichletCertificate> {
    q72_certificate_with(g, summary, p, eps_start, &Q72Config::default())
}

pub fn q72_certificate_with(
    g: &Graph,
    summary: &RegularSummary,
    p: &IsoProfile,
    eps_start: f64,
    config: &Q72Config,
) -> Result<DirichletCertificate> {
    let m = g.vertex_count();
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if summary.m != m || summary.degree != d || p.graph_size() != m {
        return Err(Error::InvalidParameter("summary or profile does not match graph".into()));
    }
    if !(eps_start > 0.0 && eps_start.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps_start = {eps_start} must be positive")));
    }
    if summary.k_star == 1 || summary.y_g >= d as f64 {
        return Err(Error::SlabOptimal {
            y_g: summary.y_g,
            degree: d,
        });
    }
    let witness = p
        .entry(summary.k_star)
        .ok_or_else(|| Error::InvalidParameter("k* outside profile".into()))?
        .witness
        .clone();
    let log_m = (m as f64).ln();
    let log_ratio = (m as f64 / summary.k_star as f64).ln();
    let df = d as f64;

    let mut eps = eps_start;
    while eps >= config.eps_min {
        let (s, t, err) = dirichlet_pair(log_m, log_ratio, eps, config.t_max).ok_or_else(|| {
            Error::SearchFailed(format!(
                "no (s, t) with t <= {} approximates within eps/2 = {}",
                config.t_max,
                eps / 2.0
            ))
        })?;
        let (sf, tf) = (s as f64, t as f64);
        let log_size_ratio = tf * (summary.k_star as f64).ln() + sf * log_m - tf * log_m;
        let a_boundary = log_size_ratio.exp() * tf * summary.i_k_star;
        let a_boundary_cap = (1.0 + eps) * (sf * summary.y_g + eps);
        let lhs = a_boundary_cap + eps * sf * df * (1.0 + (log_m + eps / 2.0) / log_ratio);
        let rhs = sf * df;
        let cert = DirichletCertificate {
            m,
            degree: d,
            k_star: summary.k_star,
            y_g: summary.y_g,
            i_k_star: summary.i_k_star,
            witness: witness.clone(),
            epsilon: eps,
            s,
            t,
            dirichlet_error: err,
            log_size_ratio,
            a_boundary,
            a_boundary_cap,
            lhs,
            rhs,
        };
        if cert.recheck().is_ok() {
            return Ok(cert);
        }
        eps /= 2.0;
    }
    Err(Error::SearchFailed(format!(
        "no certificate down to eps = {}",
        config.eps_min
    )))
}

/// Boundary per vertex of the slab `B_t = {u}^t x V^{n-t}` in `G^n`: `t d`.
pub fn b_t_boundary(m: usize, d: usize, n: usize, t: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter("need m >= 2".into()));
    }
    if t == 0 || t > n {
        return Err(Error::Domain(format!("t = {t} outside 1..={n}")));
    }
    Ok((t * d) as f64)
}
