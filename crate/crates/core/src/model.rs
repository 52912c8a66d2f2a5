//! Dimensionless BCS mean-field model: dispersion, gap profile, and coherence
//! factors.
//!
//! All quantities are expressed in Fermi units: momenta in units of the Fermi
//! momentum k_F, energies in units of the Fermi energy ε_F, and lengths in
//! units of 1/k_F. The band is parabolic and the chemical potential is pinned
//! to the Fermi energy, so the single-particle energy measured from the Fermi
//! level is ξ(κ) = κ² − 1 for κ = k/k_F. The pairing gap is a constant δ on
//! the closed Debye shell |ξ| ≤ w and zero outside it.

use crate::error::{Error, Result};

/// Dimensionless momentum κ = k/k_F (≥ 0).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Kappa(pub f64);

impl Kappa {
    /// Builds a validated momentum. Errors if the value is negative or not
    /// finite.
    pub fn new(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa < 0.0 {
            return Err(Error::InvalidParams(format!(
                "momentum k/k_F must be finite and >= 0, got {kappa}"
            )));
        }
        Ok(Kappa(kappa))
    }
}

/// Dimensionless material parameters of the superconductor.
///
/// `delta` is the pairing gap Δ/ε_F and `w` the Debye energy ħω_D/ε_F. The
/// constructor enforces `0 < delta` and `0 < w < 1`; the upper bound on `w`
/// keeps the inner shell edge √(1−w) real. The weak-coupling ordering
/// Δ ≪ ħω_D ≪ ε_F is the physically sensible regime but is deliberately not
/// an invariant: [`MaterialParams::weak_coupling_ordered`] lets callers warn
/// instead of fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    /// Gap ratio δ = Δ/ε_F, strictly positive.
    pub delta: f64,
    /// Debye ratio w = ħω_D/ε_F, in (0, 1).
    pub w: f64,
}

impl MaterialParams {
    /// Builds validated parameters from the dimensionless ratios.
    pub fn new(delta: f64, w: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "gap ratio delta must be finite and > 0, got {delta}"
            )));
        }
        if !w.is_finite() || w <= 0.0 || w >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "Debye ratio w must lie strictly between 0 and 1, got {w}"
            )));
        }
        Ok(MaterialParams { delta, w })
    }

    /// Converts physical energy scales (gap and Debye energy in meV, Fermi
    /// energy in eV) to the dimensionless ratios used everywhere else.
    pub fn from_physical(gap_mev: f64, debye_mev: f64, fermi_ev: f64) -> Result<Self> {
        if !fermi_ev.is_finite() || fermi_ev <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "Fermi energy must be finite and > 0 eV, got {fermi_ev}"
            )));
        }
        Self::new(gap_mev * 1e-3 / fermi_ev, debye_mev * 1e-3 / fermi_ev)
    }

    /// True when the weak-coupling ordering δ < w holds. Callers should treat
    /// a `false` as a warning sign, not an error: every formula below is still
    /// well defined.
    pub fn weak_coupling_ordered(&self) -> bool {
        self.delta < self.w
    }

    /// Momenta (κ₁, κ₂) = (√(1−w), √(1+w)) bounding the pairing shell.
    pub fn shell_bounds(&self) -> (f64, f64) {
        ((1.0 - self.w).sqrt(), (1.0 + self.w).sqrt())
    }

    /// BCS coherence length in units of 1/k_F: k_F·ξ₀ = 2/(π·δ) for the
    /// standard definition ξ₀ = ħv_F/(πΔ) on a parabolic band.
    pub fn coherence_length_kf(&self) -> f64 {
        2.0 / (std::f64::consts::PI * self.delta)
    }
}

/// Single-particle energy measured from the Fermi level: ξ(κ) = κ² − 1.
pub fn xi(kappa: Kappa) -> f64 {
    kappa.0 * kappa.0 - 1.0
}

/// Gap profile: δ on the closed shell |ξ| ≤ w, zero outside. The boundary
/// points |ξ| = w belong to the shell; the boundary is a measure-zero set, so
/// the convention cannot affect any integral, but it is fixed here once.
pub fn gap(kappa: Kappa, params: &MaterialParams) -> f64 {
    if xi(kappa).abs() <= params.w {
        params.delta
    } else {
        0.0
    }
}

/// Quasiparticle excitation energy E(κ) = √(ξ² + gap²).
pub fn quasiparticle_energy(kappa: Kappa, params: &MaterialParams) -> f64 {
    let x = xi(kappa);
    let d = gap(kappa, params);
    x.hypot(d)
}

/// Pair-occupation factor v²(κ) = (1 − ξ/E)/2.
///
/// Below the shell (ξ < −w) this is exactly 1, above it (ξ > w) exactly 0;
/// across the shell it interpolates smoothly on the width scale δ. At the
/// degenerate point E = 0 (only reachable in the unphysical limit δ = 0 at
/// the Fermi surface) the symmetric value 1/2 is returned.
pub fn v2(kappa: Kappa, params: &MaterialParams) -> f64 {
    let x = xi(kappa);
    let e = quasiparticle_energy(kappa, params);
    if e == 0.0 {
        return 0.5;
    }
    0.5 * (1.0 - x / e)
}

/// Hole-occupation factor u²(κ) = (1 + ξ/E)/2 = 1 − v²(κ).
pub fn u2(kappa: Kappa, params: &MaterialParams) -> f64 {
    let x = xi(kappa);
    let e = quasiparticle_energy(kappa, params);
    if e == 0.0 {
        return 0.5;
    }
    0.5 * (1.0 + x / e)
}

/// Anomalous amplitude u·v = gap/(2E) with the positive root (real positive
/// gap gauge). Vanishes identically outside the pairing shell and peaks at
/// 1/2 on the Fermi surface.
pub fn uv(kappa: Kappa, params: &MaterialParams) -> f64 {
    let d = gap(kappa, params);
    let e = quasiparticle_energy(kappa, params);
    if e == 0.0 {
        return 0.5;
    }
    0.5 * d / e
}
