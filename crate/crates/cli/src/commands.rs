//! Subcommand implementations. Each renders its full output into a string so
//! that `main` can emit it in one buffered write.

use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::Result;
use bcs_spin::correlators;
use bcs_spin::entanglement::{
    concurrence_wootters, entanglement_length, ppt_min_eigenvalue, werner_from_gf,
};
use bcs_spin::sweep::{build_coherence, build_sweep};
use bcs_spin::SpinDensityMatrix;
use serde_json::json;

use crate::args::OutputFormat;
use crate::config::RunConfig;

/// Default separation grid: dense enough to resolve every oscillation and the
/// entanglement threshold out to x = 20.
const SWEEP_GRID: (f64, f64, f64) = (0.01, 20.0, 0.01);

/// Default ε/ε_F grid: resolves the δ-wide pair-amplitude peak at the Fermi
/// surface down to δ = 10⁻³.
const COHERENCE_GRID: (f64, f64, f64) = (0.0, 2.0, 2.5e-4);

pub fn coherence(cfg: &RunConfig) -> Result<String> {
    let (start, end, step) = COHERENCE_GRID;
    let grid = cfg.grid_or(start, end, step)?;
    let table = build_coherence(&cfg.params, &grid)?;
    Ok(match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => with_newline(table.to_json()),
    })
}

pub fn sweep(cfg: &RunConfig) -> Result<String> {
    let (start, end, step) = SWEEP_GRID;
    let grid = cfg.grid_or(start, end, step)?;
    let table = build_sweep(&cfg.params, &cfg.settings, &grid)?;
    Ok(match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => with_newline(table.to_json()),
    })
}

pub fn state(cfg: &RunConfig, x: f64) -> Result<String> {
    let smp = correlators::sample(x, &cfg.params, &cfg.settings)?;
    let (explicit, werner) = werner_from_gf(smp.g, smp.f)?;
    let mixture = werner.density_matrix();
    let concurrence_general = concurrence_wootters(&explicit)?;
    let ppt_min_eig = ppt_min_eigenvalue(&explicit);
    let explicit = real_entries(&explicit);
    let mixture = real_entries(&mixture);

    Ok(match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str("quantity,value\n");
            for (name, value) in [
                ("x", x),
                ("g", smp.g),
                ("f", smp.f),
                ("f_tilde", smp.f_tilde),
                ("p", werner.p()),
                ("concurrence", werner.concurrence()),
                ("concurrence_general", concurrence_general),
                ("ppt_min_eig", ppt_min_eig),
            ] {
                writeln!(out, "{name},{value}").expect("writing to String cannot fail");
            }
            out.push('\n');
            out.push_str("matrix,row,uu,ud,du,dd\n");
            let basis = ["uu", "ud", "du", "dd"];
            for (label, m) in [("explicit", &explicit), ("werner", &mixture)] {
                for (i, row_name) in basis.iter().enumerate() {
                    writeln!(
                        out,
                        "{label},{row_name},{},{},{},{}",
                        m[i][0], m[i][1], m[i][2], m[i][3]
                    )
                    .expect("writing to String cannot fail");
                }
            }
            out
        }
        OutputFormat::Json => with_newline(
            serde_json::to_string_pretty(&json!({
                "x": x,
                "g": smp.g,
                "f": smp.f,
                "f_tilde": smp.f_tilde,
                "p": werner.p(),
                "concurrence": werner.concurrence(),
                "concurrence_general": concurrence_general,
                "ppt_min_eig": ppt_min_eig,
                "matrix": explicit,
                "werner_matrix": mixture,
            }))
            .expect("serializing plain values cannot fail"),
        ),
    })
}

pub fn length(cfg: &RunConfig) -> Result<String> {
    let report = entanglement_length(&cfg.params, &cfg.settings)?;
    let r_c_over_lambda_f = report.x_c / (2.0 * PI);
    let kf_xi0 = cfg.params.coherence_length_kf();
    let xi0_over_r_c = kf_xi0 / report.x_c;
    let scale_separation = report.x_c < 0.01 * kf_xi0;
    const NOTE: &str = "entangled region << coherence length";

    Ok(match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str("quantity,value\n");
            for (name, value) in [
                ("x_c", report.x_c),
                ("r_c_over_lambda_f", r_c_over_lambda_f),
                ("kf_xi0", kf_xi0),
                ("xi0_over_r_c", xi0_over_r_c),
                ("verified_to", report.verified_to),
                ("max_p_beyond", report.max_p_beyond),
                ("max_concurrence_beyond", report.max_concurrence_beyond),
            ] {
                writeln!(out, "{name},{value}").expect("writing to String cannot fail");
            }
            match report.reentrant_at {
                Some(x) => writeln!(out, "reentrant_at,{x}").expect("writing to String cannot fail"),
                None => out.push_str("reentrant_at,none\n"),
            }
            if scale_separation {
                writeln!(out, "# {NOTE}").expect("writing to String cannot fail");
            }
            out
        }
        OutputFormat::Json => with_newline(
            serde_json::to_string_pretty(&json!({
                "x_c": report.x_c,
                "r_c_over_lambda_f": r_c_over_lambda_f,
                "kf_xi0": kf_xi0,
                "xi0_over_r_c": xi0_over_r_c,
                "verified_to": report.verified_to,
                "max_p_beyond": report.max_p_beyond,
                "max_concurrence_beyond": report.max_concurrence_beyond,
                "reentrant_at": report.reentrant_at,
                "scale_separation": scale_separation,
                "note": if scale_separation { Some(NOTE) } else { None },
            }))
            .expect("serializing plain values cannot fail"),
        ),
    })
}

/// Extracts the (real) matrix entries; the states built here carry no
/// imaginary parts by construction.
fn real_entries(rho: &SpinDensityMatrix) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, value) in row.iter_mut().enumerate() {
            *value = rho.matrix()[(i, j)].re;
        }
    }
    out
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}
