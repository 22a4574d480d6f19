//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or certification failure, 2 usage
//! error. JSON output is a single document on stdout; diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bound::theorem_bound;
use crate::certify::{q71_witness, q72_certificate_with, verify_theorem, verify_theorem_sizes, Q72Config, ALL_SIZES_CAP};
use crate::closed_forms::{bl_bound, grid_bound, grid_regime_split, torus_bound, BoundReport};
use crate::error::{Error, Result};
use crate::expr::{parse_log_size, GraphExpr, GRAMMAR};
use crate::graph::{cartesian_product_capped, Family, Graph, DEFAULT_MAX_VERTICES};
use crate::minorant::{build_minorant, regular_summary, ConvexMinorant};
use crate::profile::{profile_with, IsoProfile, SearchConfig};

/// Environment variable overriding the product materialization cap.
pub const MAX_VERTICES_ENV: &str = "ISOBOUND_MAX_VERTICES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "isobound",
    version,
    about = "Edge-isoperimetric profiles and product-graph lower bounds",
    after_help = GRAMMAR
)]
pub struct CliConfig {
    #[arg(long, short, value_enum, default_value = "human", global = true)]
    pub output: OutputFormat,

    /// Worker threads for per-size searches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Materialization cap for explicit products (overrides ISOBOUND_MAX_VERTICES).
    #[arg(long, global = true)]
    pub max_vertices: Option<usize>,

    /// Largest graph handed to the exact profile search.
    #[arg(long, global = true, default_value_t = 30)]
    pub search_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact isoperimetric profile of the (explicit) graph.
    Profile { spec: Vec<String> },
    /// Convex minorant breakpoints, plus k* and y_G for connected regular graphs.
    Minorant { spec: Vec<String> },
    /// Product lower bound at one set size, with the applicable closed forms.
    Bound {
        spec: Vec<String>,
        #[arg(long, conflicts_with = "log_size", required_unless_present = "log_size")]
        size: Option<u128>,
        /// Natural log of the set size, e.g. `12*log(7)`.
        #[arg(long)]
        log_size: Option<String>,
    },
    /// Compare with the Bollobás–Leader grid/torus bound.
    Compare {
        spec: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Check the bound against exact minima of the explicit product.
    Verify {
        spec: Vec<String>,
        /// Comma-separated sizes; defaults to every size for small products.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// Three sizes where i_a(G^n) is not affine in log a.
    #[command(name = "certify-q71")]
    CertifyQ71 {
        spec: Vec<String>,
        #[arg(long)]
        power: usize,
    },
    /// Dirichlet certificate that slab sets are not optimal when y_G < d.
    #[command(name = "certify-q72")]
    CertifyQ72 {
        spec: Vec<String>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        t_max: u64,
    },
}

enum Outcome {
    Success,
    Failed,
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(&config, &mut buf));
                r.and_then(|o| out.write_all(&buf).map(|_| o).map_err(Error::from))
            }
            Err(e) => Err(Error::InvalidParameter(format!("thread pool: {e}"))),
        },
        None => dispatch(&config, out),
    };
    match result {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Precondition(_) | Error::SearchFailed(_) => 1,
                _ => 2,
            }
        }
    }
}

struct Ctx<'a> {
    config: &'a CliConfig,
    cap: usize,
    search: SearchConfig,
}

fn dispatch(config: &CliConfig, out: &mut dyn Write) -> Result<Outcome> {
    let cap = match config.max_vertices {
        Some(c) => c,
        None => match std::env::var(MAX_VERTICES_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{MAX_VERTICES_ENV}={v:?} is not a vertex count"))
            })?,
            Err(_) => DEFAULT_MAX_VERTICES,
        },
    };
    let ctx = Ctx {
        config,
        cap,
        search: SearchConfig {
            pruned_cap: config.search_cap,
            ..SearchConfig::default()
        },
    };
    match &config.command {
        Command::Profile { spec } => cmd_profile(&ctx, &parse(spec)?, out),
        Command::Minorant { spec } => cmd_minorant(&ctx, &parse(spec)?, out),
        Command::Bound { spec, size, log_size } => {
            let log_size = match (size, log_size) {
                (Some(k), _) if *k > 0 => (*k as f64).ln(),
                (Some(_), _) => return Err(Error::InvalidParameter("--size must be positive".into())),
                (None, Some(expr)) => parse_log_size(expr)?,
                (None, None) => unreachable!("clap requires one of --size/--log-size"),
            };
            cmd_bound(&ctx, &parse(spec)?, *size, log_size, out)
        }
        Command::Compare { spec, samples } => cmd_compare(&ctx, &parse(spec)?, *samples, out),
        Command::Verify { spec, sizes } => cmd_verify(&ctx, &parse(spec)?, sizes.as_deref(), out),
        Command::CertifyQ71 { spec, power } => cmd_q71(&ctx, &parse(spec)?, *power, out),
        Command::CertifyQ72 { spec, eps, t_max } => cmd_q72(&ctx, &parse(spec)?, *eps, *t_max, out),
    }
}

fn parse(spec: &[String]) -> Result<GraphExpr> {
    GraphExpr::parse(&spec.join(" "))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Single graph for the expression: the factor itself, or the explicit product.
fn materialize(ctx: &Ctx, expr: &GraphExpr) -> Result<Graph> {
    if expr.factors.len() == 1 {
        return Ok(expr.factors[0].graph.clone());
    }
    cartesian_product_capped(&expr.spec(), ctx.cap)
}

fn graph_profile(ctx: &Ctx, expr: &GraphExpr, g: &Graph) -> Result<IsoProfile> {
    if expr.factors.len() == 1 {
        if let crate::expr::Source::Family(..) = expr.factors[0].source {
            return expr.factors[0].profile();
        }
    }
    profile_with(g, &ctx.search)
}

fn label(g: &Graph) -> String {
    g.label().unwrap_or("G").to_string()
}

fn cmd_profile(ctx: &Ctx, expr: &GraphExpr, out: &mut dyn Write) -> Result<Outcome> {
    let g = materialize(ctx, expr)?;
    let p = graph_profile(ctx, expr, &g)?;
    match ctx.config.output {
        OutputFormat::Csv => p.write_csv(out)?,
        OutputFormat::Json => emit_json(
            out,
            &json!({ "graph": label(&g), "vertex_count": g.vertex_count(), "entries": p.entries() }),
        )?,
        OutputFormat::Human => {
            writeln!(out, "profile of {} ({} vertices)", label(&g), g.vertex_count())?;
            for e in p.entries() {
                writeln!(
                    out,
                    "  k={:<3} boundary={:<5} i_k={:<8} witness={:?}",
                    e.k,
                    e.min_boundary,
                    e.i_k().to_string(),
                    e.witness
                )?;
            }
        }
    }
    Ok(Outcome::Success)
}

fn cmd_minorant(ctx: &Ctx, expr: &GraphExpr, out: &mut dyn Write) -> Result<Outcome> {
    let g = materialize(ctx, expr)?;
    let p = graph_profile(ctx, expr, &g)?;
    let psi = build_minorant(&p);
    let summary = if g.regular_degree().is_some() && g.is_connected() && g.vertex_count() >= 2 {
        Some(regular_summary(&g, &p)?)
    } else {
        None
    };
    match ctx.config.output {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for b in psi.breakpoints() {
                w.serialize(b).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "graph": label(&g),
                "domain_end": psi.domain_end(),
                "breakpoints": psi.breakpoints(),
                "regular_summary": summary,
            }),
        )?,
        OutputFormat::Human => {
            writeln!(out, "convex minorant of {} on [0, {:.6}]", label(&g), psi.domain_end())?;
            for b in psi.breakpoints() {
                writeln!(out, "  k={:<3} x={:.6} y={:.6}", b.k, b.x, b.y)?;
            }
            if let Some(s) = summary {
                writeln!(out, "  d={} k*={} y_G={:.6} slope={:.6}", s.degree, s.k_star, s.y_g, s.slope_star)?;
            }
        }
    }
    Ok(Outcome::Success)
}

fn factor_minorants(expr: &GraphExpr) -> Result<Vec<ConvexMinorant>> {
    expr.factors.iter().map(|f| f.profile().map(|p| build_minorant(&p))).collect()
}

fn closed_form_reports(expr: &GraphExpr, log_size: f64) -> Result<Vec<BoundReport>> {
    let n = expr.factors.len();
    let mut reports = Vec::new();
    match expr.homogeneous_family() {
        Some((Family::Complete, m)) if m >= 2 => reports.push(BoundReport::hamming(n, m, log_size)?),
        Some((Family::Path, m)) if m >= 3 => reports.push(BoundReport::grid(n, m, log_size)?),
        Some((Family::Cycle, m)) => reports.push(BoundReport::torus(n, m, log_size)?),
        _ => {}
    }
    let degrees: Option<Vec<usize>> = expr.factors.iter().map(|f| f.graph.regular_degree()).collect();
    if let Some(degrees) = degrees.filter(|d| d.iter().all(|&d| d > 0)) {
        let sizes = expr.spec().sizes();
        reports.push(BoundReport::regular_product(&degrees, &sizes, log_size)?);
        if expr.factors.iter().all(|f| f.graph.is_connected()) {
            reports.push(BoundReport::connected_regular(&sizes, log_size)?);
            if expr.is_power() {
                let g = &expr.factors[0].graph;
                let summary = regular_summary(g, &expr.factors[0].profile()?)?;
                reports.push(BoundReport::regular_power(&summary, n, log_size)?);
            }
        }
    }
    Ok(reports)
}

fn cmd_bound(ctx: &Ctx, expr: &GraphExpr, size: Option<u128>, log_size: f64, out: &mut dyn Write) -> Result<Outcome> {
    if let Some(k) = size {
        if k > expr.spec().vertex_count() {
            return Err(Error::Domain(format!("size {k} exceeds the product's vertex count")));
        }
    }
    let minorants = factor_minorants(expr)?;
    let mut alloc = theorem_bound(&minorants, log_size)?;
    if let Some(k) = size {
        alloc = alloc.with_size(k);
    }
    let closed = closed_form_reports(expr, log_size)?;
    let product = expr.factors.iter().map(|f| label(&f.graph)).collect::<Vec<_>>().join(" x ");
    match ctx.config.output {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "product": product,
                "size": size.map(|k| k.to_string()),
                "log_size": log_size,
                "theorem": alloc,
                "closed_forms": closed
                    .iter()
                    .map(|r| json!({
                        "report": r,
                        "bound_total": size.map(|k| k as f64 * r.bound_per_vertex),
                    }))
                    .collect::<Vec<_>>(),
            }),
        )?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["bound", "log_size", "per_vertex", "total"])
                .map_err(|e| Error::Io(e.to_string()))?;
            let total = |v: f64| size.map(|k| (k as f64 * v).to_string()).unwrap_or_default();
            w.write_record([
                "theorem".to_string(),
                log_size.to_string(),
                alloc.bound_per_vertex.to_string(),
                total(alloc.bound_per_vertex),
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
            for r in &closed {
                let name = serde_json::to_value(r.family).map_err(|e| Error::Io(e.to_string()))?;
                w.write_record([
                    name.as_str().unwrap_or_default().to_string(),
                    log_size.to_string(),
                    r.bound_per_vertex.to_string(),
                    total(r.bound_per_vertex),
                ])
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Human => {
            writeln!(out, "product {product}, log|A| = {log_size:.6}")?;
            write!(out, "  theorem bound: {:.6} per vertex", alloc.bound_per_vertex)?;
            match alloc.bound_total {
                Some(t) => writeln!(out, ", total {t:.6}")?,
                None => writeln!(out)?,
            }
            writeln!(out, "  allocation: {:?}", alloc.allocation)?;
            for r in &closed {
                writeln!(out, "  {:?}: {:.6} per vertex", r.family, r.bound_per_vertex)?;
            }
        }
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct CompareRow {
    log_size: f64,
    ours: f64,
    bl: f64,
    ratio: f64,
}

fn cmd_compare(ctx: &Ctx, expr: &GraphExpr, samples: usize, out: &mut dyn Write) -> Result<Outcome> {
    let (torus, m) = match expr.homogeneous_family() {
        Some((Family::Path, m)) if m >= 3 => (false, m),
        Some((Family::Cycle, m)) => (true, m),
        _ => {
            return Err(Error::InvalidParameter(
                "compare needs a grid path:M^N or torus cycle:M^N with M >= 3".into(),
            ))
        }
    };
    if samples < 2 {
        return Err(Error::InvalidParameter("--samples must be at least 2".into()));
    }
    let n = expr.factors.len();
    // the comparison bound is stated for |A| <= m^n / 2
    let end = n as f64 * (m as f64).ln() - 2f64.ln();
    let rows: Vec<CompareRow> = (0..samples)
        .map(|j| {
            let x = end * j as f64 / (samples - 1) as f64;
            let ours = if torus { torus_bound(n, m, x) } else { grid_bound(n, m, x) }?;
            let bl = bl_bound(n, m, x, torus)?;
            Ok(CompareRow {
                log_size: x,
                ours,
                bl,
                ratio: bl / ours,
            })
        })
        .collect::<Result<_>>()?;
    match ctx.config.output {
        OutputFormat::Json => emit_json(
            out,
            &json!({
                "family": if torus { "torus" } else { "grid" },
                "n": n,
                "m": m,
                "regime_split": grid_regime_split(n, m),
                "rows": rows,
            }),
        )?,
        _ => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(Outcome::Success)
}

fn cmd_verify(ctx: &Ctx, expr: &GraphExpr, sizes: Option<&[usize]>, out: &mut dyn Write) -> Result<Outcome> {
    let spec = expr.spec();
    if spec.vertex_count() > ctx.cap as u128 {
        return Err(Error::CapExceeded {
            what: "product materialization",
            required: spec.vertex_count(),
            cap: ctx.cap as u128,
        });
    }
    let report = match sizes {
        Some(ks) => verify_theorem_sizes(&spec, ks, &ctx.search)?,
        None if spec.vertex_count() <= ALL_SIZES_CAP as u128 => verify_theorem(&spec)?,
        None => {
            return Err(Error::InvalidParameter(format!(
                "products above {ALL_SIZES_CAP} vertices need an explicit --sizes list"
            )))
        }
    };
    match ctx.config.output {
        OutputFormat::Json => emit_json(out, &json!({ "all_valid": report.all_valid(), "report": report }))?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["k", "true_min_boundary", "theorem_bound_total", "gap", "tight"])
                .map_err(|e| Error::Io(e.to_string()))?;
            for r in &report.rows {
                w.write_record([
                    r.k.to_string(),
                    r.true_min_boundary.to_string(),
                    r.theorem_bound_total.to_string(),
                    r.gap.to_string(),
                    r.tight.to_string(),
                ])
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        OutputFormat::Human => {
            writeln!(out, "verifying {}", report.product)?;
            for r in &report.rows {
                writeln!(
                    out,
                    "  k={:<4} truth={:<6} bound={:<12.6} gap={:<12.6}{}{}",
                    r.k,
                    r.true_min_boundary,
                    r.theorem_bound_total,
                    r.gap,
                    if r.tight { " tight" } else { "" },
                    if r.valid() { "" } else { " VIOLATION" }
                )?;
            }
            writeln!(out, "{}", if report.all_valid() { "ok" } else { "FAILED" })?;
        }
    }
    Ok(if report.all_valid() { Outcome::Success } else { Outcome::Failed })
}

fn cmd_q71(ctx: &Ctx, expr: &GraphExpr, power: usize, out: &mut dyn Write) -> Result<Outcome> {
    let g = materialize(ctx, expr)?;
    let p = graph_profile(ctx, expr, &g)?;
    let psi = build_minorant(&p);
    let w = q71_witness(&g, &p, &psi, power)?;
    match ctx.config.output {
        OutputFormat::Human => {
            writeln!(out, "i_a({}^{}) is not affine in log a:", w.graph, w.n)?;
            for pt in &w.points {
                writeln!(
                    out,
                    "  a = {}^{}  log a = {:.6}  i_a = {:.6} (lower {:.6}, upper {:.6})",
                    pt.k, w.n, pt.log_size, pt.upper, pt.lower, pt.upper
                )?;
            }
            writeln!(out, "  residual below the chord: {:.6}", w.residual)?;
        }
        _ => emit_json(out, &w)?,
    }
    Ok(Outcome::Success)
}

fn cmd_q72(ctx: &Ctx, expr: &GraphExpr, eps: f64, t_max: u64, out: &mut dyn Write) -> Result<Outcome> {
    let g = materialize(ctx, expr)?;
    let p = graph_profile(ctx, expr, &g)?;
    let summary = regular_summary(&g, &p)?;
    let config = Q72Config {
        t_max,
        ..Q72Config::default()
    };
    match q72_certificate_with(&g, &summary, &p, eps, &config) {
        Ok(cert) => {
            match ctx.config.output {
                OutputFormat::Human => {
                    writeln!(out, "slabs are not optimal in powers of {}", label(&g))?;
                    writeln!(
                        out,
                        "  k*={} y_G={:.6} < d={}; eps={:e} s={} t={}",
                        cert.k_star, cert.y_g, cert.degree, cert.epsilon, cert.s, cert.t
                    )?;
                    writeln!(out, "  normalized: {:.6} < {:.6}", cert.lhs, cert.rhs)?;
                }
                _ => emit_json(out, &json!({ "result": "certificate", "certificate": cert }))?,
            }
            Ok(Outcome::Success)
        }
        Err(Error::SlabOptimal { y_g, degree }) => {
            let message = format!("y_G = d = {degree}: slab sets B_t are optimal, no certificate");
            match ctx.config.output {
                OutputFormat::Human => writeln!(out, "{message}")?,
                _ => emit_json(
                    out,
                    &json!({ "result": "slab_optimal", "y_g": y_g, "degree": degree, "message": message }),
                )?,
            }
            Ok(Outcome::Success)
        }
        Err(e) => Err(e),
    }
}
