//! Closed-form specializations of the product bound and the Bollobás–Leader
//! grid/torus bounds they are compared with.
//!
//! Every function returns a per-vertex value (divide the boundary by `|A|`)
//! at `log_size = log |A|`, clamped below at zero.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::minorant::{RegularSummary, DOMAIN_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundFamily {
    Hamming,
    Grid,
    Torus,
    RegularProduct,
    ConnectedRegularProduct,
    RegularPower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub bl_bound_per_vertex: f64,
    /// `bl / ours`; absent when our bound is zero.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub n: usize,
    pub sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    pub log_size: f64,
    pub bound_per_vertex: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

impl BoundReport {
    pub fn hamming(n: usize, m: usize, log_size: f64) -> Result<Self> {
        Ok(Self::homogeneous(BoundFamily::Hamming, n, m, log_size, hamming_bound(n, m, log_size)?))
    }

    pub fn grid(n: usize, m: usize, log_size: f64) -> Result<Self> {
        let ours = grid_bound(n, m, log_size)?;
        let bl = bl_bound(n, m, log_size, false)?;
        Ok(Self::homogeneous(BoundFamily::Grid, n, m, log_size, ours).with_comparison(bl))
    }

    pub fn torus(n: usize, m: usize, log_size: f64) -> Result<Self> {
        let ours = torus_bound(n, m, log_size)?;
        let bl = bl_bound(n, m, log_size, true)?;
        Ok(Self::homogeneous(BoundFamily::Torus, n, m, log_size, ours).with_comparison(bl))
    }

    pub fn regular_product(degrees: &[usize], sizes: &[usize], log_size: f64) -> Result<Self> {
        Ok(BoundReport {
            family: BoundFamily::RegularProduct,
            n: sizes.len(),
            sizes: sizes.to_vec(),
            degrees: Some(degrees.to_vec()),
            log_size,
            bound_per_vertex: regular_product_bound(degrees, sizes, log_size)?,
            comparison: None,
        })
    }

    pub fn connected_regular(sizes: &[usize], log_size: f64) -> Result<Self> {
        let total = sizes.iter().map(|&m| (m as f64).ln()).sum();
        Ok(BoundReport {
            family: BoundFamily::ConnectedRegularProduct,
            n: sizes.len(),
            sizes: sizes.to_vec(),
            degrees: None,
            log_size,
            bound_per_vertex: connected_regular_bound(sizes, log_size, total)?,
            comparison: None,
        })
    }

    pub fn regular_power(summary: &RegularSummary, n: usize, log_size: f64) -> Result<Self> {
        let value = regular_power_bound(summary, summary.m, n, log_size)?;
        let mut r = Self::homogeneous(BoundFamily::RegularPower, n, summary.m, log_size, value);
        r.degrees = Some(vec![summary.degree; n]);
        Ok(r)
    }

    fn homogeneous(family: BoundFamily, n: usize, m: usize, log_size: f64, value: f64) -> Self {
        BoundReport {
            family,
            n,
            sizes: vec![m; n],
            degrees: None,
            log_size,
            bound_per_vertex: value,
            comparison: None,
        }
    }

    fn with_comparison(mut self, bl: f64) -> Self {
        let ratio = (self.bound_per_vertex > 0.0).then(|| bl / self.bound_per_vertex);
        self.comparison = Some(Comparison {
            bl_bound_per_vertex: bl,
            ratio,
        });
        self
    }
}

fn check_log_size(log_size: f64, max: f64) -> Result<f64> {
    if !log_size.is_finite() || log_size < -DOMAIN_TOL || log_size > max + DOMAIN_TOL {
        return Err(Error::Domain(format!("log size {log_size} outside [0, {max}]")));
    }
    Ok(log_size.clamp(0.0, max))
}

fn check_power(n: usize, m: usize, min_m: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if m < min_m {
        return Err(Error::InvalidParameter(format!("side length {m} below {min_m}")));
    }
    Ok(n as f64 * (m as f64).ln())
}

/// Hamming graph `K_m^n`: `(m - 1)(n - log_m |A|)`.
pub fn hamming_bound(n: usize, m: usize, log_size: f64) -> Result<f64> {
    let max = check_power(n, m, 2)?;
    let x = check_log_size(log_size, max)?;
    Ok(((m - 1) as f64 * (n as f64 - x / (m as f64).ln())).max(0.0))
}

/// `log |A|` at which the grid and torus bounds switch regime: `n (log m - 1)`,
/// i.e. `|A| = (m/e)^n`.
pub fn grid_regime_split(n: usize, m: usize) -> f64 {
    n as f64 * ((m as f64).ln() - 1.0)
}

/// Grid `P_m^n`: `n e^{-log|A|/n}` up to `|A| = (m/e)^n`, then `(e/m) log(m^n/|A|)`.
pub fn grid_bound(n: usize, m: usize, log_size: f64) -> Result<f64> {
    let max = check_power(n, m, 3)?;
    let x = check_log_size(log_size, max)?;
    let value = if x <= grid_regime_split(n, m) {
        n as f64 * (-x / n as f64).exp()
    } else {
        E / m as f64 * (max - x)
    };
    Ok(value.max(0.0))
}

/// Torus `C_m^n`: twice the grid bound.
pub fn torus_bound(n: usize, m: usize, log_size: f64) -> Result<f64> {
    Ok(2.0 * grid_bound(n, m, log_size)?)
}

/// Bollobás–Leader: `(1/m) min_{r in 1..=n} c r (m^n/|A|)^{1/r}` with `c = 2` on the torus.
pub fn bl_bound(n: usize, m: usize, log_size: f64, torus: bool) -> Result<f64> {
    let max = check_power(n, m, 3)?;
    let x = check_log_size(log_size, max)?;
    let c = if torus { 2.0 } else { 1.0 };
    let best = (1..=n)
        .map(|r| c * r as f64 * ((max - x) / r as f64).exp())
        .fold(f64::INFINITY, f64::min);
    Ok(best / m as f64)
}

/// Products of `d_i`-regular graphs: `d - D log_{D+1} |A|` with `d = sum d_i`, `D = max d_i`.
pub fn regular_product_bound(degrees: &[usize], sizes: &[usize], log_size: f64) -> Result<f64> {
    if degrees.is_empty() || degrees.len() != sizes.len() {
        return Err(Error::InvalidParameter("need one degree per factor size".into()));
    }
    for (&d, &m) in degrees.iter().zip(sizes) {
        if d == 0 || m < d + 1 {
            return Err(Error::InvalidParameter(format!(
                "a {d}-regular factor on {m} vertices is not allowed"
            )));
        }
    }
    let max = sizes.iter().map(|&m| (m as f64).ln()).sum();
    let x = check_log_size(log_size, max)?;
    let d: usize = degrees.iter().sum();
    let big_d = *degrees.iter().max().expect("nonempty") as f64;
    Ok((d as f64 - big_d * x / (big_d + 1.0).ln()).max(0.0))
}

/// Products of connected regular graphs: `(e/M) log(|V|/|A|)` with `M = max m_i`.
pub fn connected_regular_bound(sizes: &[usize], log_size: f64, total_log_volume: f64) -> Result<f64> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidParameter("factor sizes must be positive".into()));
    }
    let volume: f64 = sizes.iter().map(|&m| (m as f64).ln()).sum();
    if (volume - total_log_volume).abs() > 1e-9 * volume.max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "total log volume {total_log_volume} differs from sum of log sizes {volume}"
        )));
    }
    let x = check_log_size(log_size, total_log_volume)?;
    let big_m = *sizes.iter().max().expect("nonempty") as f64;
    Ok((E / big_m * (total_log_volume - x)).max(0.0))
}

/// `e (1 - 1/M) log M`, the factor by which the connected-regular bound
/// improves on the earlier estimate for the same products. Reported only; the
/// earlier estimate itself is not implemented.
pub fn prior_improvement_factor(max_size: usize) -> f64 {
    let m = max_size as f64;
    E * (1.0 - 1.0 / m) * m.ln()
}

/// Powers of a connected regular graph: `y_G (n - log_m |A|)`.
pub fn regular_power_bound(summary: &RegularSummary, m: usize, n: usize, log_size: f64) -> Result<f64> {
    if summary.m != m {
        return Err(Error::InvalidParameter(format!(
            "summary is for {} vertices, asked for {m}",
            summary.m
        )));
    }
    let max = check_power(n, m, 2)?;
    let x = check_log_size(log_size, max)?;
    Ok((summary.y_g * (n as f64 - x / (m as f64).ln())).max(0.0))
}
