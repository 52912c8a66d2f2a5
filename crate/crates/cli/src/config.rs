//! Layered run configuration: built-in defaults, overridden key by key from a
//! flat `key = value` config file, overridden in turn by command-line flags.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use bcs_spin::{Grid, MaterialParams, QuadratureSettings};

use crate::args::{JobArgs, OutputFormat, StateArgs};

/// Default gap Δ in meV.
pub const DEFAULT_GAP_MEV: f64 = 1.0;
/// Default Debye energy ħω_D in meV.
pub const DEFAULT_DEBYE_MEV: f64 = 100.0;
/// Default Fermi energy ε_F in eV.
pub const DEFAULT_FERMI_EV: f64 = 1.0;

/// One override layer: every key the flags and the config file can set.
/// `None` means "not set here; ask the next layer".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub delta: Option<f64>,
    pub debye_w: Option<f64>,
    pub gap_mev: Option<f64>,
    pub debye_mev: Option<f64>,
    pub fermi_ev: Option<f64>,
    pub x_start: Option<f64>,
    pub x_end: Option<f64>,
    pub x_step: Option<f64>,
    pub x: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub format: Option<OutputFormat>,
}

impl Overrides {
    /// Merges two layers key by key; `self` wins where both are set.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            delta: self.delta.or(base.delta),
            debye_w: self.debye_w.or(base.debye_w),
            gap_mev: self.gap_mev.or(base.gap_mev),
            debye_mev: self.debye_mev.or(base.debye_mev),
            fermi_ev: self.fermi_ev.or(base.fermi_ev),
            x_start: self.x_start.or(base.x_start),
            x_end: self.x_end.or(base.x_end),
            x_step: self.x_step.or(base.x_step),
            x: self.x.or(base.x),
            rel_tol: self.rel_tol.or(base.rel_tol),
            abs_tol: self.abs_tol.or(base.abs_tol),
            format: self.format.or(base.format),
        }
    }

    fn from_job(job: &JobArgs) -> Overrides {
        Overrides {
            delta: job.delta,
            debye_w: job.debye_w,
            gap_mev: job.gap_mev,
            debye_mev: job.debye_mev,
            fermi_ev: job.fermi_ev,
            x_start: job.x_start,
            x_end: job.x_end,
            x_step: job.x_step,
            x: None,
            rel_tol: job.rel_tol,
            abs_tol: job.abs_tol,
            format: job.format,
        }
    }
}

/// Parses the flat config format: one `key = value` per line, keys spelled
/// exactly like the long flags (plus `x`), `#` starts a comment, blank lines
/// ignored.
pub fn parse_config(text: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {no}: expected `key = value`, got {raw:?}");
        };
        let (key, value) = (key.trim(), value.trim());
        let slot = match key {
            "delta" => &mut o.delta,
            "debye-w" => &mut o.debye_w,
            "gap-mev" => &mut o.gap_mev,
            "debye-mev" => &mut o.debye_mev,
            "fermi-ev" => &mut o.fermi_ev,
            "x-start" => &mut o.x_start,
            "x-end" => &mut o.x_end,
            "x-step" => &mut o.x_step,
            "x" => &mut o.x,
            "rel-tol" => &mut o.rel_tol,
            "abs-tol" => &mut o.abs_tol,
            "format" => {
                o.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => bail!("line {no}: format must be `csv` or `json`, got {other:?}"),
                });
                continue;
            }
            other => bail!("line {no}: unknown key {other:?}"),
        };
        *slot = Some(
            value
                .parse::<f64>()
                .map_err(|_| anyhow!("line {no}: key {key:?} needs a number, got {value:?}"))?,
        );
    }
    Ok(o)
}

fn load_config(path: Option<&Path>) -> Result<Overrides> {
    match path {
        None => Ok(Overrides::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            parse_config(&text).with_context(|| format!("in config file {}", path.display()))
        }
    }
}

/// Fully resolved inputs shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: MaterialParams,
    pub settings: QuadratureSettings,
    pub format: OutputFormat,
    merged: Overrides,
}

impl RunConfig {
    /// Resolves flags over config file over defaults for a grid/report
    /// subcommand.
    pub fn from_job(job: &JobArgs) -> Result<RunConfig> {
        let file = load_config(job.config.as_deref())?;
        Self::from_overrides(Overrides::from_job(job).over(file))
    }

    /// Same resolution for the state subcommand, which additionally needs the
    /// separation `x` (flag or config key).
    pub fn from_state(args: &StateArgs) -> Result<(RunConfig, f64)> {
        let file = load_config(args.job.config.as_deref())?;
        let mut flags = Overrides::from_job(&args.job);
        flags.x = args.x;
        let cfg = Self::from_overrides(flags.over(file))?;
        let x = cfg.merged.x.ok_or_else(|| {
            anyhow!("the state command needs a separation: pass --x or set `x` in the config file")
        })?;
        if !x.is_finite() || x < 0.0 {
            bail!("separation x must be finite and >= 0, got {x}");
        }
        Ok((cfg, x))
    }

    fn from_overrides(merged: Overrides) -> Result<RunConfig> {
        let params = resolve_params(&merged)?;
        if !params.weak_coupling_ordered() {
            eprintln!(
                "warning: delta = {} is not below w = {}; results leave the \
                 weak-coupling regime the closed-form checks assume",
                params.delta, params.w
            );
        }
        let d = QuadratureSettings::default();
        let settings = QuadratureSettings {
            rel_tol: merged.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: merged.abs_tol.unwrap_or(d.abs_tol),
            ..d
        };
        settings.validate()?;
        let format = merged.format.unwrap_or(OutputFormat::Csv);
        Ok(RunConfig {
            params,
            settings,
            format,
            merged,
        })
    }

    /// Builds the evaluation grid, falling back to the given per-subcommand
    /// defaults for keys the user did not set.
    pub fn grid_or(&self, start: f64, end: f64, step: f64) -> Result<Grid> {
        Ok(Grid::new(
            self.merged.x_start.unwrap_or(start),
            self.merged.x_end.unwrap_or(end),
            self.merged.x_step.unwrap_or(step),
        )?)
    }
}

fn resolve_params(o: &Overrides) -> Result<MaterialParams> {
    let ratios = o.delta.is_some() || o.debye_w.is_some();
    let physical = o.gap_mev.is_some() || o.debye_mev.is_some() || o.fermi_ev.is_some();
    if ratios && physical {
        bail!(
            "material parameters were given both as dimensionless ratios \
             (--delta/--debye-w) and as physical energies \
             (--gap-mev/--debye-mev/--fermi-ev); choose one set"
        );
    }
    let params = if ratios {
        let defaults =
            MaterialParams::from_physical(DEFAULT_GAP_MEV, DEFAULT_DEBYE_MEV, DEFAULT_FERMI_EV)?;
        MaterialParams::new(
            o.delta.unwrap_or(defaults.delta),
            o.debye_w.unwrap_or(defaults.w),
        )?
    } else {
        MaterialParams::from_physical(
            o.gap_mev.unwrap_or(DEFAULT_GAP_MEV),
            o.debye_mev.unwrap_or(DEFAULT_DEBYE_MEV),
            o.fermi_ev.unwrap_or(DEFAULT_FERMI_EV),
        )?
    };
    Ok(params)
}
