//! Convex minorant `psi_G` of the points `(log k, i_k(G))` on `[0, log m]`.
//!
//! The minorant is the lower convex hull of the profile points, stored as its
//! hull vertices. All logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::IsoProfile;

/// Tolerance when testing whether `x` sits at an endpoint or breakpoint.
pub const DOMAIN_TOL: f64 = 1e-12;
/// Relative tolerance on the hull orientation test.
pub const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakpoint {
    pub k: usize,
    pub x: f64,
    pub y: f64,
}

/// One-sided slope of a minorant; the left slope at `0` is `-inf` by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slope {
    NegInfinity,
    Finite(f64),
}

impl Slope {
    /// `self <= r`, with `-inf` below every real.
    pub fn at_most(self, r: f64) -> bool {
        match self {
            Slope::NegInfinity => true,
            Slope::Finite(s) => s <= r,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Slope::NegInfinity => None,
            Slope::Finite(s) => Some(s),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Slope::NegInfinity => s.serialize_str("-inf"),
            Slope::Finite(v) => s.serialize_f64(*v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneSidedDerivatives {
    pub left: Slope,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexMinorant {
    domain_end: f64,
    breakpoints: Vec<Breakpoint>,
}

fn cross(o: &Breakpoint, a: &Breakpoint, b: &Breakpoint) -> (f64, f64) {
    let lhs = (a.x - o.x) * (b.y - o.y);
    let rhs = (a.y - o.y) * (b.x - o.x);
    (lhs - rhs, lhs.abs().max(rhs.abs()))
}

/// Lower convex hull of the profile points by a monotone-chain sweep.
/// Interior points collinear with their neighbours are dropped.
pub fn build_minorant(p: &IsoProfile) -> ConvexMinorant {
    let m = p.graph_size();
    let mut hull: Vec<Breakpoint> = Vec::with_capacity(m);
    for e in p.entries() {
        let pt = Breakpoint {
            k: e.k,
            x: (e.k as f64).ln(),
            y: e.i_k_f64(),
        };
        while hull.len() >= 2 {
            let (turn, scale) = cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt);
            // keep only strict left turns
            if turn <= COLLINEAR_TOL * scale.max(f64::MIN_POSITIVE) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    ConvexMinorant {
        domain_end: (m as f64).ln(),
        breakpoints: hull,
    }
}

impl ConvexMinorant {
    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    /// Number of linear pieces.
    pub fn segment_count(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    /// `(slope, width)` of each linear piece, left to right.
    pub fn segments(&self) -> Vec<(f64, f64)> {
        self.breakpoints
            .windows(2)
            .map(|w| ((w[1].y - w[0].y) / (w[1].x - w[0].x), w[1].x - w[0].x))
            .collect()
    }

    /// `psi(0) = i_1(G)`.
    pub fn value_at_zero(&self) -> f64 {
        self.breakpoints[0].y
    }

    fn check_domain(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < -DOMAIN_TOL || x > self.domain_end + DOMAIN_TOL {
            return Err(Error::Domain(format!(
                "x = {x} outside [0, {}]",
                self.domain_end
            )));
        }
        Ok(x.clamp(0.0, self.domain_end))
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let x = self.check_domain(x)?;
        let bp = &self.breakpoints;
        if x >= self.domain_end {
            return Ok(0.0);
        }
        // first breakpoint strictly right of x
        let j = bp.partition_point(|b| b.x <= x);
        if j == 0 {
            return Ok(bp[0].y);
        }
        if j == bp.len() {
            return Ok(bp[bp.len() - 1].y);
        }
        let (a, b) = (&bp[j - 1], &bp[j]);
        let t = (x - a.x) / (b.x - a.x);
        Ok(a.y + t * (b.y - a.y))
    }

    pub fn one_sided_derivatives(&self, x: f64) -> Result<OneSidedDerivatives> {
        let x = self.check_domain(x)?;
        let slopes: Vec<f64> = self.segments().into_iter().map(|(s, _)| s).collect();
        let bp = &self.breakpoints;
        let left = if x <= DOMAIN_TOL {
            Slope::NegInfinity
        } else {
            // segment whose closed right end reaches x
            let j = bp.partition_point(|b| b.x < x - DOMAIN_TOL);
            Slope::Finite(slopes[j.clamp(1, slopes.len()) - 1])
        };
        let right = if x >= self.domain_end - DOMAIN_TOL {
            0.0
        } else {
            let j = bp.partition_point(|b| b.x <= x + DOMAIN_TOL);
            slopes[j.clamp(1, slopes.len()) - 1]
        };
        Ok(OneSidedDerivatives { left, right })
    }

    /// The hull vertex at `x = log k`, if `k` is a breakpoint.
    pub fn breakpoint_for(&self, k: usize) -> Option<&Breakpoint> {
        self.breakpoints.iter().find(|b| b.k == k)
    }

    /// Breakpoints whose subdifferential contains `r`.
    pub fn breakpoints_for_slope(&self, r: f64) -> Vec<&Breakpoint> {
        self.breakpoints
            .iter()
            .filter(|b| {
                let d = self
                    .one_sided_derivatives(b.x)
                    .expect("breakpoints lie in the domain");
                d.left.at_most(r) && r <= d.right
            })
            .collect()
    }
}

/// Degree and chord data of a connected regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularSummary {
    pub m: usize,
    pub degree: usize,
    pub k_star: usize,
    pub i_k_star: f64,
    pub y_g: f64,
    pub slope_star: f64,
}

/// Index in `1..m` whose chord to `(log m, 0)` has the least negative slope,
/// smallest index on ties, together with that slope.
pub fn steepest_chord(p: &IsoProfile) -> Result<(usize, f64)> {
    let m = p.graph_size();
    if m < 2 {
        return Err(Error::Precondition("chord needs at least two vertices".into()));
    }
    let log_m = (m as f64).ln();
    let mut best: Option<(usize, f64)> = None;
    for k in 1..m {
        let slope = -p.i_k_f64(k) / (log_m - (k as f64).ln());
        match best {
            Some((_, s)) if slope <= s + COLLINEAR_TOL * s.abs().max(1.0) => {}
            _ => best = Some((k, slope)),
        }
    }
    Ok(best.expect("m >= 2 gives at least one chord"))
}

/// `k*`, `y_G` and the chord slope for a connected regular graph.
pub fn regular_summary(g: &Graph, p: &IsoProfile) -> Result<RegularSummary> {
    let m = g.vertex_count();
    if p.graph_size() != m {
        return Err(Error::InvalidParameter(format!(
            "profile is for {} vertices, graph has {m}",
            p.graph_size()
        )));
    }
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let (k_star, slope_star) = steepest_chord(p)?;
    let log_m = (m as f64).ln();
    let i_k_star = p.i_k_f64(k_star);
    Ok(RegularSummary {
        m,
        degree,
        k_star,
        i_k_star,
        y_g: i_k_star * log_m / (log_m - (k_star as f64).ln()),
        slope_star,
    })
}
