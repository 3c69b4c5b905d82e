//! Parameter-space scans: the concurrence surface over the (x, y) plane,
//! efficiency-vs-shift curves with asymptote overlays, and deterministic
//! CSV/JSON serialization.
//!
//! Surfaces may be evaluated in parallel (cargo feature `parallel`, on by
//! default); points are indexed in row-major order (y outer, x inner) and
//! gathered by index, so parallel and sequential evaluation produce
//! identical tables and repeated runs produce byte-identical output.
//! Provenance comments carry no timestamp unless one is set explicitly.

use std::io::Write;

use serde::Serialize;

use crate::entanglement::concurrence_xy;
use crate::error::{Error, Result};

/// Tool tag written into provenance headers.
pub const TOOL: &str = concat!("stark-tc ", env!("CARGO_PKG_VERSION"));

/// Uniform rectangular grid; point i is min + i*(max-min)/(steps-1),
/// bit-reproducible from the spec alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub x_steps: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub y_steps: usize,
}

impl GridSpec {
    pub fn new(
        x_min: f64,
        x_max: f64,
        x_steps: usize,
        y_min: f64,
        y_max: f64,
        y_steps: usize,
    ) -> Result<Self> {
        let check = |name, lo: f64, hi: f64, steps: usize| -> Result<()> {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter {
                    name,
                    value: lo,
                    requirement: "finite min < finite max",
                });
            }
            if steps < 2 {
                return Err(Error::InvalidParameter {
                    name,
                    value: steps as f64,
                    requirement: "steps >= 2",
                });
            }
            Ok(())
        };
        check("x", x_min, x_max, x_steps)?;
        check("y", y_min, y_max, y_steps)?;
        Ok(Self {
            x_min,
            x_max,
            x_steps,
            y_min,
            y_max,
            y_steps,
        })
    }

    /// The default reproduction grid: x, y in [0.01, 10], 201 x 201 points.
    /// It spans both analytic zero limits and the surface maximum.
    pub fn default_surface() -> Self {
        Self::new(0.01, 10.0, 201, 0.01, 10.0, 201).expect("static grid is valid")
    }

    pub fn x_at(&self, j: usize) -> f64 {
        self.x_min + (j as f64) * (self.x_max - self.x_min) / ((self.x_steps - 1) as f64)
    }

    pub fn y_at(&self, i: usize) -> f64 {
        self.y_min + (i as f64) * (self.y_max - self.y_min) / ((self.y_steps - 1) as f64)
    }

    pub fn len(&self) -> usize {
        self.x_steps * self.y_steps
    }

    pub fn is_empty(&self) -> bool {
        false // steps >= 2 in both directions by construction
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x {}:{}:{}, y {}:{}:{}",
            self.x_min, self.x_max, self.x_steps, self.y_min, self.y_max, self.y_steps
        )
    }
}

/// Provenance block of a surface table.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceMeta {
    pub tool: String,
    pub table: String,
    pub grid: GridSpec,
    pub gauge: String,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
    pub c: f64,
}

/// Concurrence surface in row-major order (y outer ascending, x inner
/// ascending); row count is exactly x_steps * y_steps.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceTable {
    pub meta: SurfaceMeta,
    pub rows: Vec<SurfacePoint>,
}

fn surface_point(spec: &GridSpec, k: usize) -> Result<SurfacePoint> {
    let x = spec.x_at(k % spec.x_steps);
    let y = spec.y_at(k / spec.x_steps);
    if x == 0.0 {
        // analytic limit: the decoupled column is exactly separable
        return Ok(SurfacePoint { x, y, c: 0.0 });
    }
    match concurrence_xy(x, y) {
        Ok(rep) => Ok(SurfacePoint { x, y, c: rep.c }),
        Err(e) => Err(Error::AtGridPoint {
            x,
            y,
            source: Box::new(e),
        }),
    }
}

fn assemble_surface(spec: &GridSpec, rows: Vec<SurfacePoint>) -> SurfaceTable {
    SurfaceTable {
        meta: SurfaceMeta {
            tool: TOOL.to_string(),
            table: "concurrence-surface".to_string(),
            grid: *spec,
            gauge: "a = 1 (xi = 1, alpha_sq = 1); the state depends on (x, y) only".to_string(),
            order: "row-major: y outer ascending, x inner ascending".to_string(),
            generated_at_unix: None,
        },
        rows,
    }
}

fn eval_sequential(spec: &GridSpec) -> Result<Vec<SurfacePoint>> {
    (0..spec.len()).map(|k| surface_point(spec, k)).collect()
}

#[cfg(feature = "parallel")]
fn eval_default(spec: &GridSpec) -> Result<Vec<SurfacePoint>> {
    use rayon::prelude::*;
    (0..spec.len())
        .into_par_iter()
        .map(|k| surface_point(spec, k))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn eval_default(spec: &GridSpec) -> Result<Vec<SurfacePoint>> {
    eval_sequential(spec)
}

/// Concurrence over the grid, using all available parallelism when the
/// `parallel` feature is enabled (sequential otherwise). Deterministic:
/// identical specs produce identical tables.
pub fn concurrence_surface(spec: &GridSpec) -> Result<SurfaceTable> {
    Ok(assemble_surface(spec, eval_default(spec)?))
}

/// Sequential reference evaluation of the same surface.
pub fn concurrence_surface_seq(spec: &GridSpec) -> Result<SurfaceTable> {
    Ok(assemble_surface(spec, eval_sequential(spec)?))
}

/// Surface evaluation with an explicit worker count: 0 means the default
/// pool, 1 forces the sequential path, n > 1 runs on a dedicated n-thread
/// pool. Without the `parallel` feature the count is ignored and the
/// evaluation is sequential. The result is identical for every setting.
pub fn concurrence_surface_with_workers(spec: &GridSpec, workers: usize) -> Result<SurfaceTable> {
    match workers {
        0 => concurrence_surface(spec),
        1 => concurrence_surface_seq(spec),
        #[cfg(feature = "parallel")]
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            let rows = pool.install(|| eval_default(spec))?;
            Ok(assemble_surface(spec, rows))
        }
        #[cfg(not(feature = "parallel"))]
        _ => concurrence_surface_seq(spec),
    }
}

/// Provenance block of an efficiency curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurveMeta {
    pub tool: String,
    pub table: String,
    pub g1: f64,
    pub g2: f64,
    pub alpha_sq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub xi: f64,
    pub eta_exact: f64,
    pub eta_small: f64,
    /// Large-shift asymptote 2(g1² - g2²)/ξ²; undefined at ξ = 0
    /// (empty CSV field / JSON null).
    pub eta_large: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveTable {
    pub meta: CurveMeta,
    pub rows: Vec<CurvePoint>,
}

/// Exact efficiency 1 - sqrt(ξ² + 4g2²)/sqrt(ξ² + 4g1²) over an increasing
/// list of shifts, with the two asymptote columns. α² cancels from every
/// column; it is recorded in the provenance only.
pub fn efficiency_curve(
    g1: f64,
    g2: f64,
    alpha_sq: f64,
    xi_values: &[f64],
) -> Result<CurveTable> {
    if !(g2.is_finite() && g2 >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "g2",
            value: g2,
            requirement: "finite and >= 0",
        });
    }
    if !(g1.is_finite() && g1 > 0.0 && g1 >= g2) {
        return Err(Error::InvalidParameter {
            name: "g1",
            value: g1,
            requirement: "finite, > 0 and >= g2",
        });
    }
    if !(alpha_sq.is_finite() && alpha_sq > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha_sq",
            value: alpha_sq,
            requirement: "finite and > 0",
        });
    }
    if xi_values.is_empty() {
        return Err(Error::EmptyTable);
    }
    for pair in xi_values.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::InvalidParameter {
                name: "xi_values",
                value: pair[1],
                requirement: "strictly increasing",
            });
        }
    }
    if !(xi_values[0].is_finite() && xi_values[0] >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "xi_values",
            value: xi_values[0],
            requirement: "finite and >= 0",
        });
    }
    let dg = g1 - g2;
    let eta_small = dg / g1; // δg/(g + δg) with g = g2, δg = g1 - g2
    let rows = xi_values
        .iter()
        .map(|&xi| {
            let eta_exact = 1.0 - f64::hypot(xi, 2.0 * g2) / f64::hypot(xi, 2.0 * g1);
            let eta_large = if xi > 0.0 {
                Some(2.0 * (g1 * g1 - g2 * g2) / (xi * xi))
            } else {
                None
            };
            CurvePoint {
                xi,
                eta_exact,
                eta_small,
                eta_large,
            }
        })
        .collect();
    Ok(CurveTable {
        meta: CurveMeta {
            tool: TOOL.to_string(),
            table: "efficiency-curve".to_string(),
            g1,
            g2,
            alpha_sq,
            generated_at_unix: None,
        },
        rows,
    })
}

/// One f64 with 17 significant digits; parses back bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Anything serializable as a provenance-commented CSV table.
pub trait CsvTable {
    fn comment_pairs(&self) -> Vec<(String, String)>;
    fn csv_header(&self) -> &'static str;
    fn n_rows(&self) -> usize;
    fn csv_row(&self, idx: usize) -> String;
}

impl CsvTable for SurfaceTable {
    fn comment_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("tool".to_string(), self.meta.tool.clone()),
            ("table".to_string(), self.meta.table.clone()),
            ("grid".to_string(), self.meta.grid.to_string()),
            ("gauge".to_string(), self.meta.gauge.clone()),
            ("order".to_string(), self.meta.order.clone()),
        ];
        if let Some(ts) = self.meta.generated_at_unix {
            pairs.push(("generated-at-unix".to_string(), ts.to_string()));
        }
        pairs
    }

    fn csv_header(&self) -> &'static str {
        "x,y,c"
    }

    fn n_rows(&self) -> usize {
        self.rows.len()
    }

    fn csv_row(&self, idx: usize) -> String {
        let r = &self.rows[idx];
        format!("{},{},{}", fmt_f64(r.x), fmt_f64(r.y), fmt_f64(r.c))
    }
}

impl CsvTable for CurveTable {
    fn comment_pairs(&self) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("tool".to_string(), self.meta.tool.clone()),
            ("table".to_string(), self.meta.table.clone()),
            (
                "params".to_string(),
                format!(
                    "g1 = {}, g2 = {}, alpha_sq = {}",
                    self.meta.g1, self.meta.g2, self.meta.alpha_sq
                ),
            ),
            (
                "note".to_string(),
                "eta_large is empty at xi = 0 (asymptote undefined there)".to_string(),
            ),
        ];
        if let Some(ts) = self.meta.generated_at_unix {
            pairs.push(("generated-at-unix".to_string(), ts.to_string()));
        }
        pairs
    }

    fn csv_header(&self) -> &'static str {
        "xi,eta_exact,eta_small,eta_large"
    }

    fn n_rows(&self) -> usize {
        self.rows.len()
    }

    fn csv_row(&self, idx: usize) -> String {
        let r = &self.rows[idx];
        let large = r.eta_large.map(fmt_f64).unwrap_or_default();
        format!(
            "{},{},{},{}",
            fmt_f64(r.xi),
            fmt_f64(r.eta_exact),
            fmt_f64(r.eta_small),
            large
        )
    }
}

struct CountingWriter<'a> {
    inner: &'a mut dyn Write,
    count: u64,
}

impl Write for CountingWriter<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.count += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Writes `# key: value` provenance comments, the header row, and one CSV
/// row per table row (LF line endings, `.` decimal separator, 17
/// significant digits). Returns the byte count written. Empty tables are
/// rejected.
pub fn write_csv<T: CsvTable>(table: &T, out: &mut dyn Write) -> Result<u64> {
    if table.n_rows() == 0 {
        return Err(Error::EmptyTable);
    }
    let mut w = CountingWriter {
        inner: out,
        count: 0,
    };
    for (key, value) in table.comment_pairs() {
        writeln!(w, "# {key}: {value}")?;
    }
    writeln!(w, "{}", table.csv_header())?;
    for idx in 0..table.n_rows() {
        writeln!(w, "{}", table.csv_row(idx))?;
    }
    w.flush()?;
    Ok(w.count)
}

/// Writes any serializable value as pretty JSON with a trailing newline
/// (tables serialize as {meta, rows} with meta first). Returns the byte
/// count written.
pub fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<u64> {
    let mut w = CountingWriter {
        inner: out,
        count: 0,
    };
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(w.count)
}
