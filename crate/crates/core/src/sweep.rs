//! Grid evaluation of the correlator/entanglement pipeline and table
//! serialization.
//!
//! Tables serialize to CSV (comma-separated, header row, floats in Rust's
//! shortest round-trip notation so parsing reproduces every bit) and to JSON
//! (an array of row objects). Sweep rows may be computed concurrently; the
//! output order is always the grid order.

use crate::correlators::{sample_with_origin, OriginValues};
use crate::entanglement::{ppt_min_eigenvalue, werner_from_gf};
use crate::error::{Error, Result};
use crate::model::{uv, v2, Kappa, MaterialParams};
use crate::quadrature::QuadratureSettings;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// A uniform inclusive grid start, start+step, …, up to end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    /// First point (≥ 0).
    pub start: f64,
    /// Last point (> start); included when it lies on the step lattice.
    pub end: f64,
    /// Spacing (> 0).
    pub step: f64,
}

impl Grid {
    /// Validates `start ≥ 0`, `step > 0`, `end > start`.
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() || !step.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid bounds must be finite, got [{start}, {end}] step {step}"
            )));
        }
        if start < 0.0 {
            return Err(Error::InvalidParams(format!(
                "grid start must be >= 0, got {start}"
            )));
        }
        if step <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "grid step must be > 0, got {step}"
            )));
        }
        if end <= start {
            return Err(Error::InvalidParams(format!(
                "grid end must exceed start, got [{start}, {end}]"
            )));
        }
        Ok(Grid { start, end, step })
    }

    /// The grid points, computed as start + i·step (no running accumulation,
    /// so the last point hits `end` exactly whenever `end` is on the
    /// lattice up to rounding).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// One sweep output row: correlators and entanglement quantities at one
/// separation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Separation x = k_F·r.
    pub x: f64,
    /// g = G(r)/G(0).
    pub g: f64,
    /// f = F(r)/G(0).
    pub f: f64,
    /// F̃ = F(r)/F(0).
    pub f_tilde: f64,
    /// Werner parameter p.
    pub p: f64,
    /// Concurrence C = max{0, (3p−1)/2}.
    pub concurrence: f64,
    /// Smallest eigenvalue of the partial transpose (negative iff
    /// entangled), computed from the explicit matrix.
    pub ppt_min_eig: f64,
}

/// Ordered sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// One coherence-factor row: v² and u·v against ε/ε_F.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceRow {
    /// Band energy over Fermi energy, ε/ε_F = κ².
    pub eps_over_ef: f64,
    /// Pair occupation v².
    pub v2: f64,
    /// Anomalous amplitude u·v.
    pub uv: f64,
}

/// Ordered coherence-factor table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceTable {
    pub rows: Vec<CoherenceRow>,
}

/// Evaluates the full pipeline on a separation grid: correlators, Werner
/// parameter, concurrence, and the partial-transpose eigenvalue from the
/// explicit matrix. Rows are computed in parallel and returned in grid
/// order; a failure is reported at the smallest offending grid point.
pub fn build_sweep(
    params: &MaterialParams,
    settings: &QuadratureSettings,
    grid: &Grid,
) -> Result<SweepTable> {
    let origin = OriginValues::compute(params, settings)?;
    let evaluated: Vec<Result<SweepRow>> = grid
        .points()
        .par_iter()
        .map(|&x| {
            let smp = sample_with_origin(x, params, settings, &origin).map_err(|e| e.at_x(x))?;
            let (rho, werner) = werner_from_gf(smp.g, smp.f).map_err(|e| e.at_x(x))?;
            Ok(SweepRow {
                x,
                g: smp.g,
                f: smp.f,
                f_tilde: smp.f_tilde,
                p: werner.p(),
                concurrence: werner.concurrence(),
                ppt_min_eig: ppt_min_eigenvalue(&rho),
            })
        })
        .collect();
    let rows = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows })
}

/// Evaluates the coherence factors v²(κ) and u·v(κ) on a grid of ε/ε_F = κ²
/// (the natural plotting variable for the occupation step at the Fermi
/// surface).
pub fn build_coherence(params: &MaterialParams, grid: &Grid) -> Result<CoherenceTable> {
    let rows = grid
        .points()
        .iter()
        .map(|&eps| {
            let kappa = Kappa(eps.sqrt());
            CoherenceRow {
                eps_over_ef: eps,
                v2: v2(kappa, params),
                uv: uv(kappa, params),
            }
        })
        .collect();
    Ok(CoherenceTable { rows })
}

fn parse_field(token: &str, column: &str, line_no: usize) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| {
        Error::InvalidParams(format!(
            "line {line_no}: cannot parse {column} value {token:?}"
        ))
    })
}

impl SweepTable {
    /// CSV header row.
    pub const CSV_HEADER: &'static str = "x,g,f,f_tilde,p,concurrence,ppt_min_eig";

    /// Serializes to CSV with shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.x, r.g, r.f, r.f_tilde, r.p, r.concurrence, r.ppt_min_eig
            )
            .expect("writing to String cannot fail");
        }
        out
    }

    /// Parses CSV emitted by [`SweepTable::to_csv`]; round-trips bit-exactly.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParams`] on a wrong header, wrong column count, or an
    /// unparsable number.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("").trim_end();
        if header != Self::CSV_HEADER {
            return Err(Error::InvalidParams(format!(
                "unexpected CSV header {header:?}"
            )));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 7 {
                return Err(Error::InvalidParams(format!(
                    "line {}: expected 7 columns, found {}",
                    i + 2,
                    fields.len()
                )));
            }
            rows.push(SweepRow {
                x: parse_field(fields[0], "x", i + 2)?,
                g: parse_field(fields[1], "g", i + 2)?,
                f: parse_field(fields[2], "f", i + 2)?,
                f_tilde: parse_field(fields[3], "f_tilde", i + 2)?,
                p: parse_field(fields[4], "p", i + 2)?,
                concurrence: parse_field(fields[5], "concurrence", i + 2)?,
                ppt_min_eig: parse_field(fields[6], "ppt_min_eig", i + 2)?,
            });
        }
        Ok(SweepTable { rows })
    }

    /// Serializes to a JSON array of row objects.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("serializing plain rows cannot fail")
    }

    /// Parses the JSON produced by [`SweepTable::to_json`].
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParams`] on malformed JSON.
    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<SweepRow> = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParams(format!("invalid sweep JSON: {e}")))?;
        Ok(SweepTable { rows })
    }
}

impl CoherenceTable {
    /// CSV header row.
    pub const CSV_HEADER: &'static str = "eps_over_ef,v2,uv";

    /// Serializes to CSV with shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.rows.len() + 1));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{},{},{}", r.eps_over_ef, r.v2, r.uv)
                .expect("writing to String cannot fail");
        }
        out
    }

    /// Parses CSV emitted by [`CoherenceTable::to_csv`].
    ///
    /// # Errors
    ///
    /// [`Error::InvalidParams`] on a wrong header, wrong column count, or an
    /// unparsable number.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("").trim_end();
        if header != Self::CSV_HEADER {
            return Err(Error::InvalidParams(format!(
                "unexpected CSV header {header:?}"
            )));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::InvalidParams(format!(
                    "line {}: expected 3 columns, found {}",
                    i + 2,
                    fields.len()
                )));
            }
            rows.push(CoherenceRow {
                eps_over_ef: parse_field(fields[0], "eps_over_ef", i + 2)?,
                v2: parse_field(fields[1], "v2", i + 2)?,
                uv: parse_field(fields[2], "uv", i + 2)?,
            });
        }
        Ok(CoherenceTable { rows })
    }

    /// Serializes to a JSON array of row objects.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("serializing plain rows cannot fail")
    }
}
