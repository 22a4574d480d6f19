//! Lower bound for edge boundaries in Cartesian products.
//!
//! For `G = G_1 x ... x G_n` and nonempty `A`,
//! `e(A, A^c) >= |A| * min { sum psi_i(h_i) : 0 <= h_i <= log m_i, sum h_i = log |A| }`.
//! Every `psi_i` is convex piecewise linear and non-increasing, so the minimum
//! is reached by spending the budget `log |A|` on linear pieces in order of
//! increasing slope (steepest descent first).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{cartesian_product_capped, ProductSpec};
use crate::minorant::{ConvexMinorant, Slope, DOMAIN_TOL};
use crate::profile::IsoProfile;
use crate::vertex_set::VertexSet;

/// Relative tolerance for certificate equalities.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllocationResult {
    pub target_log_size: f64,
    pub allocation: Vec<f64>,
    pub bound_per_vertex: f64,
    /// `|A| * bound_per_vertex`, present only when `|A|` was given exactly.
    pub bound_total: Option<f64>,
}

impl AllocationResult {
    pub fn with_size(mut self, size: u128) -> Self {
        self.bound_total = Some(size as f64 * self.bound_per_vertex);
        self
    }
}

/// Minimizes `sum psi_i(h_i)` subject to `sum h_i = log_size` and the box constraints.
pub fn theorem_bound(minorants: &[ConvexMinorant], log_size: f64) -> Result<AllocationResult> {
    if minorants.is_empty() {
        return Err(Error::InvalidParameter("need at least one factor".into()));
    }
    let total: f64 = minorants.iter().map(ConvexMinorant::domain_end).sum();
    if !log_size.is_finite() || log_size < -DOMAIN_TOL || log_size > total + DOMAIN_TOL {
        return Err(Error::Domain(format!("log size {log_size} outside [0, {total}]")));
    }
    let budget = log_size.clamp(0.0, total);

    // (slope, start, end, factor) in factor/segment order; the stable sort keeps
    // that order among equal slopes.
    let mut pieces: Vec<(f64, f64, f64, usize)> = minorants
        .iter()
        .enumerate()
        .flat_map(|(i, psi)| {
            psi.breakpoints().windows(2).map(move |w| {
                ((w[1].y - w[0].y) / (w[1].x - w[0].x), w[0].x, w[1].x, i)
            })
        })
        .collect();
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut allocation = vec![0.0; minorants.len()];
    let mut remaining = budget;
    for (_, start, end, i) in pieces {
        if remaining <= 0.0 {
            break;
        }
        let width = end - start;
        if width <= remaining + DOMAIN_TOL {
            // whole piece: land exactly on the breakpoint
            allocation[i] = end;
            remaining -= width;
        } else {
            allocation[i] = start + remaining;
            remaining = 0.0;
        }
    }
    let bound_per_vertex = allocation
        .iter()
        .zip(minorants)
        .map(|(&h, psi)| psi.evaluate(h).expect("allocation stays in the box"))
        .sum::<f64>()
        .max(0.0);
    Ok(AllocationResult {
        target_log_size: log_size,
        allocation,
        bound_per_vertex,
        bound_total: None,
    })
}

/// `n * psi(log_size / n)`, the bound for the `n`-th power of a single graph.
pub fn homogeneous_bound(psi: &ConvexMinorant, n: usize, log_size: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be positive".into()));
    }
    let end = n as f64 * psi.domain_end();
    if !log_size.is_finite() || log_size < -DOMAIN_TOL || log_size > end + DOMAIN_TOL {
        return Err(Error::Domain(format!("log size {log_size} outside [0, {end}]")));
    }
    Ok(n as f64 * psi.evaluate(log_size.clamp(0.0, end) / n as f64)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorChoice {
    pub k: usize,
    pub witness: VertexSet,
    pub min_boundary: u64,
    pub i_k: f64,
    pub left_derivative: Slope,
    pub right_derivative: f64,
}

/// An explicit product set `A_1 x ... x A_n` meeting the product bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessCertificate {
    pub factors: Vec<FactorChoice>,
    pub r: f64,
    pub log_size: f64,
    /// `sum i_{k_i}`, the boundary per vertex of the product set.
    pub construction_value: f64,
    /// Product bound per vertex at `log_size`.
    pub bound_value: f64,
    pub allocation: Vec<f64>,
}

fn slope_tol(r: f64) -> f64 {
    DOMAIN_TOL * r.abs().max(1.0)
}

impl SharpnessCertificate {
    /// Re-checks the recorded equality and every subdifferential bracket.
    pub fn holds(&self) -> bool {
        let tol = slope_tol(self.r);
        approx_eq(self.construction_value, self.bound_value, CERTIFICATE_TOL)
            && self
                .factors
                .iter()
                .all(|f| f.left_derivative.at_most(self.r + tol) && self.r <= f.right_derivative + tol)
    }

    /// `|A|` as an exact integer, if it fits.
    pub fn set_size(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.k as u128))
    }

    /// Exact boundary of the product set: `sum_i e_i(A_i) * |A| / k_i`.
    pub fn predicted_boundary(&self) -> Option<u128> {
        let size = self.set_size()?;
        self.factors.iter().try_fold(0u128, |acc, f| {
            acc.checked_add((f.min_boundary as u128).checked_mul(size / f.k as u128)?)
        })
    }

    /// Materializes the product and counts the boundary of `A_1 x ... x A_n`
    /// directly. Returns `(counted, predicted)`.
    pub fn verify_explicit(&self, spec: &ProductSpec, cap: usize) -> Result<(u64, u128)> {
        if spec.len() != self.factors.len() {
            return Err(Error::InvalidParameter("factor count mismatch".into()));
        }
        let g = cartesian_product_capped(spec, cap)?;
        let sets: Vec<VertexSet> = self.factors.iter().map(|f| f.witness.clone()).collect();
        let a = spec.product_set(&sets, cap)?;
        let predicted = self
            .predicted_boundary()
            .ok_or_else(|| Error::Domain("product set size overflows".into()))?;
        Ok((g.edge_boundary(&a) as u64, predicted))
    }
}

fn check_inputs(profiles: &[IsoProfile], minorants: &[ConvexMinorant]) -> Result<()> {
    if profiles.is_empty() || profiles.len() != minorants.len() {
        return Err(Error::InvalidParameter(format!(
            "{} profiles vs {} minorants",
            profiles.len(),
            minorants.len()
        )));
    }
    Ok(())
}

/// Picks, per factor, the smallest breakpoint whose subdifferential contains `r`
/// and certifies that the resulting product set meets the bound.
pub fn sharpness_certificate(
    profiles: &[IsoProfile],
    minorants: &[ConvexMinorant],
    r: f64,
) -> Result<SharpnessCertificate> {
    check_inputs(profiles, minorants)?;
    if !r.is_finite() || r > 0.0 {
        return Err(Error::Domain(format!("slope parameter r = {r} must be finite and <= 0")));
    }
    let ks = minorants
        .iter()
        .map(|psi| {
            let tol = slope_tol(r);
            psi.breakpoints()
                .iter()
                .find(|b| {
                    let d = psi.one_sided_derivatives(b.x).expect("breakpoint in domain");
                    d.left.at_most(r + tol) && r <= d.right + tol
                })
                .map(|b| b.k)
                .ok_or_else(|| Error::Precondition(format!("no breakpoint brackets r = {r}")))
        })
        .collect::<Result<Vec<_>>>()?;
    certify_choice(profiles, minorants, &ks, r)
}

/// Certifies an explicit choice of sizes `k_i` against slope `r`. Each `k_i`
/// must be a point where `psi_i` touches the profile and `r` must lie in the
/// subdifferential of `psi_i` there.
pub fn certify_choice(
    profiles: &[IsoProfile],
    minorants: &[ConvexMinorant],
    ks: &[usize],
    r: f64,
) -> Result<SharpnessCertificate> {
    check_inputs(profiles, minorants)?;
    if ks.len() != profiles.len() {
        return Err(Error::InvalidParameter("one size per factor required".into()));
    }
    let tol = slope_tol(r);
    let mut factors = Vec::with_capacity(ks.len());
    for (i, ((p, psi), &k)) in profiles.iter().zip(minorants).zip(ks).enumerate() {
        let entry = p
            .entry(k)
            .ok_or_else(|| Error::Domain(format!("factor {i}: size {k} outside 1..={}", p.graph_size())))?;
        let x = (k as f64).ln();
        let touch = psi.evaluate(x)?;
        if !approx_eq(touch, entry.i_k_f64(), CERTIFICATE_TOL) {
            return Err(Error::Precondition(format!(
                "factor {i}: psi(log {k}) = {touch} is below i_{k} = {}",
                entry.i_k_f64()
            )));
        }
        let d = psi.one_sided_derivatives(x)?;
        if !(d.left.at_most(r + tol) && r <= d.right + tol) {
            return Err(Error::Precondition(format!(
                "factor {i}: r = {r} not in subdifferential [{:?}, {}] at k = {k}",
                d.left, d.right
            )));
        }
        factors.push(FactorChoice {
            k,
            witness: entry.witness.clone(),
            min_boundary: entry.min_boundary,
            i_k: entry.i_k_f64(),
            left_derivative: d.left,
            right_derivative: d.right,
        });
    }
    let log_size: f64 = ks.iter().map(|&k| (k as f64).ln()).sum();
    let construction_value: f64 = factors.iter().map(|f| f.i_k).sum();
    let alloc = theorem_bound(minorants, log_size)?;
    let cert = SharpnessCertificate {
        factors,
        r,
        log_size,
        construction_value,
        bound_value: alloc.bound_per_vertex,
        allocation: alloc.allocation,
    };
    if !approx_eq(cert.construction_value, cert.bound_value, CERTIFICATE_TOL) {
        return Err(Error::Precondition(format!(
            "construction {} does not meet bound {}",
            cert.construction_value, cert.bound_value
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::minorant::build_minorant;
    use crate::profile::profile_closed_form;

    fn psi(family: Family, m: usize) -> ConvexMinorant {
        build_minorant(&profile_closed_form(family, m).unwrap())
    }

    #[test]
    fn hypercube_bound() {
        let k2 = psi(Family::Complete, 2);
        for n in 1..8 {
            let ms = vec![k2.clone(); n];
            for t in 0..=n {
                let b = theorem_bound(&ms, t as f64 * 2f64.ln()).unwrap();
                assert!((b.bound_per_vertex - (n - t) as f64).abs() < 1e-12);
                let sum: f64 = b.allocation.iter().sum();
                assert!((sum - t as f64 * 2f64.ln()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn full_size_gives_zero() {
        let ms = vec![psi(Family::Path, 5), psi(Family::Cycle, 4), psi(Family::Complete, 3)];
        let total: f64 = ms.iter().map(|p| p.domain_end()).sum();
        let b = theorem_bound(&ms, total).unwrap();
        assert_eq!(b.bound_per_vertex, 0.0);
        for (h, p) in b.allocation.iter().zip(&ms) {
            assert!((h - p.domain_end()).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        let ms = vec![psi(Family::Path, 5)];
        assert!(theorem_bound(&ms, -0.1).is_err());
        assert!(theorem_bound(&ms, 5f64.ln() + 0.1).is_err());
        assert!(theorem_bound(&[], 0.0).is_err());
        assert!(homogeneous_bound(&ms[0], 2, 2.0 * 5f64.ln() + 1e-3).is_err());
    }

    #[test]
    fn homogeneous_examples() {
        let k2 = psi(Family::Complete, 2);
        assert!((homogeneous_bound(&k2, 10, 4.0 * 2f64.ln()).unwrap() - 6.0).abs() < 1e-12);
        let c5 = psi(Family::Cycle, 5);
        assert!((homogeneous_bound(&c5, 2, 4f64.ln()).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(homogeneous_bound(&c5, 3, 3.0 * 5f64.ln()).unwrap(), 0.0);
    }

    #[test]
    fn zero_slope_takes_full_graphs() {
        let profiles = vec![profile_closed_form(Family::Cycle, 5).unwrap(), profile_closed_form(Family::Path, 4).unwrap()];
        let ms: Vec<_> = profiles.iter().map(build_minorant).collect();
        let cert = sharpness_certificate(&profiles, &ms, 0.0).unwrap();
        assert_eq!(cert.factors.iter().map(|f| f.k).collect::<Vec<_>>(), vec![5, 4]);
        assert_eq!(cert.bound_value, 0.0);
        assert!(cert.holds());
        assert!(sharpness_certificate(&profiles, &ms, 0.5).is_err());
    }

    #[test]
    fn two_c5_factors_at_first_slope() {
        let p = profile_closed_form(Family::Cycle, 5).unwrap();
        let c5 = build_minorant(&p);
        let r = c5.segments()[0].0;
        let profiles = vec![p.clone(), p.clone()];
        let ms = vec![c5.clone(), c5.clone()];
        for ks in [[1, 2], [2, 1], [1, 1], [2, 2]] {
            let cert = certify_choice(&profiles, &ms, &ks, r).unwrap();
            assert!(cert.holds());
            let n = 2.0;
            let rhs = n * c5.evaluate(cert.log_size / n).unwrap();
            assert!(approx_eq(cert.construction_value, rhs, 1e-9));
        }
        // k = 5 does not bracket the first slope
        assert!(certify_choice(&profiles, &ms, &[1, 5], r).is_err());
        // k = 3 is not a touching point
        assert!(certify_choice(&profiles, &ms, &[3, 1], r).is_err());
    }

    #[test]
    fn certificate_matches_explicit_product() {
        let p5 = profile_closed_form(Family::Path, 5).unwrap();
        let c4 = profile_closed_form(Family::Cycle, 4).unwrap();
        let profiles = vec![p5, c4];
        let ms: Vec<_> = profiles.iter().map(build_minorant).collect();
        let spec = ProductSpec::new(vec![
            generate(Family::Path, 5).unwrap(),
            generate(Family::Cycle, 4).unwrap(),
        ])
        .unwrap();
        for r in [-3.0, -1.0, -0.7, -0.5, -0.2, 0.0] {
            let cert = sharpness_certificate(&profiles, &ms, r).unwrap();
            let (counted, predicted) = cert.verify_explicit(&spec, 1 << 20).unwrap();
            assert_eq!(counted as u128, predicted);
            let size = cert.set_size().unwrap() as f64;
            assert!(approx_eq(counted as f64, size * cert.bound_value, 1e-9));
        }
    }
}
