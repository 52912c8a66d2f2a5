//! Equal-time correlators of the BCS ground state and their normalized forms.
//!
//! The two building blocks, in Fermi units (x = k_F·r), are the dimensionless
//! radial Fourier transforms
//!
//! ```text
//!   I_G(x) = ∫₀^{√(1+w)}  v²(κ) κ sin(κx)/x dκ      (normal correlator)
//!   I_F(x) = ∫_shell      u(κ)v(κ) κ sin(κx)/x dκ   (anomalous correlator)
//! ```
//!
//! with the x → 0 limit replacing sin(κx)/x by κ. Both integrands have
//! compact support: v² vanishes identically above the pairing shell and u·v
//! outside it, so no infinite-domain integration is ever needed. The physical
//! correlators carry dimensionful prefactors and a factor of −i; every output
//! of this crate is one of the prefactor-free real ratios
//!
//! ```text
//!   g(x) = I_G(x)/I_G(0),   f(x) = I_F(x)/I_G(0),   F̃(x) = I_F(x)/I_F(0),
//! ```
//!
//! so that convention never matters downstream.

use crate::bessel::bessel_k0;
use crate::error::{Error, Result};
use crate::model::{uv, v2, Kappa, MaterialParams};
use crate::quadrature::{
    integrate_adaptive, integrate_oscillatory, integrate_shell, QuadratureSettings,
};
use nalgebra::{Matrix4, Vector3};
use serde::{Deserialize, Serialize};

/// Normalized correlators at one separation x = k_F·r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorSample {
    /// Dimensionless separation k_F·r.
    pub x: f64,
    /// Normal correlator g = G(r)/G(0); g(0) = 1.
    pub g: f64,
    /// Anomalous correlator f = F(r)/G(0).
    pub f: f64,
    /// Anomalous correlator normalized to its own origin value,
    /// F̃ = F(r)/F(0); F̃(0) = 1.
    pub f_tilde: f64,
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "separation x must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

/// Dimensionless normal correlator I_G(x).
///
/// Below the shell v² ≡ 1 and above it v² ≡ 0, so the integral is split at
/// the shell edges: a smooth oscillatory part over [0, √(1−w)] plus the shell
/// contribution in the energy variable, where the v² step of width δ at the
/// Fermi surface is resolved explicitly.
///
/// # Errors
///
/// Propagates [`Error::NonConvergence`]; rejects negative or non-finite `x`.
pub fn big_g_dimensionless(
    x: f64,
    params: &MaterialParams,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_x(x)?;
    let (k1, _) = params.shell_bounds();
    let below = if x == 0.0 {
        integrate_adaptive(|k| v2(Kappa(k), params) * k * k, 0.0, k1, settings)?.0
    } else {
        integrate_oscillatory(|k| v2(Kappa(k), params) * k, x, 0.0, k1, settings)? / x
    };
    let shell = integrate_shell(
        |xi| v2(Kappa((1.0 + xi).sqrt()), params),
        x,
        params,
        settings,
    )?;
    Ok(below + shell)
}

/// Dimensionless anomalous correlator I_F(x).
///
/// The amplitude u·v = gap/2E lives entirely on the pairing shell and peaks
/// as δ/(2√(ξ²+δ²)) at the Fermi surface, so the whole integral runs through
/// [`integrate_shell`].
///
/// # Errors
///
/// Propagates [`Error::NonConvergence`]; rejects negative or non-finite `x`.
pub fn big_f_dimensionless(
    x: f64,
    params: &MaterialParams,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_x(x)?;
    integrate_shell(
        |xi| uv(Kappa((1.0 + xi).sqrt()), params),
        x,
        params,
        settings,
    )
}

/// Origin values (I_G(0), I_F(0)) used to normalize many samples without
/// recomputing them per point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginValues {
    /// I_G(0) = ∫ v² κ² dκ, strictly positive.
    pub i_g0: f64,
    /// I_F(0) = ∫ u·v κ² dκ over the shell, positive for δ > 0.
    pub i_f0: f64,
}

impl OriginValues {
    /// Evaluates both origin integrals once.
    pub fn compute(params: &MaterialParams, settings: &QuadratureSettings) -> Result<Self> {
        Ok(OriginValues {
            i_g0: big_g_dimensionless(0.0, params, settings)?,
            i_f0: big_f_dimensionless(0.0, params, settings)?,
        })
    }
}

/// Normalized normal correlator g(x) = I_G(x)/I_G(0); g(0) = 1 exactly
/// because numerator and denominator are the same deterministic computation.
pub fn g_norm(x: f64, params: &MaterialParams, settings: &QuadratureSettings) -> Result<f64> {
    let origin = big_g_dimensionless(0.0, params, settings)?;
    if origin == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_G(0) = 0; cannot normalize".into(),
        ));
    }
    Ok(big_g_dimensionless(x, params, settings)? / origin)
}

/// Normalized anomalous correlator f(x) = I_F(x)/I_G(0).
pub fn f_norm(x: f64, params: &MaterialParams, settings: &QuadratureSettings) -> Result<f64> {
    let origin = big_g_dimensionless(0.0, params, settings)?;
    if origin == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_G(0) = 0; cannot normalize".into(),
        ));
    }
    Ok(big_f_dimensionless(x, params, settings)? / origin)
}

/// Self-normalized anomalous correlator F̃(x) = I_F(x)/I_F(0); F̃(0) = 1
/// exactly.
///
/// # Errors
///
/// [`Error::DivisionDegenerate`] if I_F(0) vanishes (gapless limit).
pub fn f_tilde(x: f64, params: &MaterialParams, settings: &QuadratureSettings) -> Result<f64> {
    let origin = big_f_dimensionless(0.0, params, settings)?;
    if origin == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_F(0) = 0 (no pairing); F-tilde is undefined".into(),
        ));
    }
    Ok(big_f_dimensionless(x, params, settings)? / origin)
}

/// Builds a full [`CorrelatorSample`] reusing precomputed origin values.
pub fn sample_with_origin(
    x: f64,
    params: &MaterialParams,
    settings: &QuadratureSettings,
    origin: &OriginValues,
) -> Result<CorrelatorSample> {
    if origin.i_g0 == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_G(0) = 0; cannot normalize".into(),
        ));
    }
    if origin.i_f0 == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_F(0) = 0 (no pairing); F-tilde is undefined".into(),
        ));
    }
    let ig = big_g_dimensionless(x, params, settings)?;
    let fi = big_f_dimensionless(x, params, settings)?;
    Ok(CorrelatorSample {
        x,
        g: ig / origin.i_g0,
        f: fi / origin.i_g0,
        f_tilde: fi / origin.i_f0,
    })
}

/// Builds a full [`CorrelatorSample`] at one separation (computes the origin
/// values internally; prefer [`sample_with_origin`] inside sweep loops).
pub fn sample(
    x: f64,
    params: &MaterialParams,
    settings: &QuadratureSettings,
) -> Result<CorrelatorSample> {
    let origin = OriginValues::compute(params, settings)?;
    sample_with_origin(x, params, settings, &origin)
}

/// The ratio F(0)/G(0) = I_F(0)/I_G(0) computed from the integrals.
pub fn f_over_g_at_origin(params: &MaterialParams, settings: &QuadratureSettings) -> Result<f64> {
    let origin = OriginValues::compute(params, settings)?;
    if origin.i_g0 == 0.0 {
        return Err(Error::DivisionDegenerate(
            "I_G(0) = 0; cannot normalize".into(),
        ));
    }
    Ok(origin.i_f0 / origin.i_g0)
}

/// Leading weak-coupling estimate of the same ratio,
/// F(0)/G(0) ≈ (3/2)·δ·ln(2w/δ), valid for δ ≪ w ≪ 1.
pub fn f_over_g_weak_coupling(params: &MaterialParams) -> f64 {
    1.5 * params.delta * (2.0 * params.w / params.delta).ln()
}

/// Closed-form approximation to F̃(x): a sinc prefactor times a Bessel-K₀
/// envelope whose scale is the coherence length,
///
/// ```text
///   F̃_approx(x) = [sin(x)/x] · K₀(x/(π·k_Fξ₀)) / ln(2w/δ),
/// ```
///
/// with k_Fξ₀ = 2/(πδ), so the K₀ argument is x·δ/2. The denominator is the
/// weak-coupling value of the exact normalization ∫ u·v κ² dκ ≈ δ·ln(2w/δ)/2
/// divided by the shared δ/2, which anchors F̃_approx(0⁺) ≈ 1. The
/// approximation is useful a few oscillations away from the origin (the K₀
/// envelope diverges logarithmically at x = 0) and tracks the exact F̃ to
/// about 10% of its peak amplitude out to x ≈ 50 at δ = 10⁻³.
///
/// # Errors
///
/// [`Error::Domain`] for x ≤ 0 or when δ ≥ 2w (no weak-coupling window, so
/// the ln(2w/δ) normalization is meaningless).
pub fn approx_f(x: f64, params: &MaterialParams) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "the closed-form approximation is valid for x > 0 only, got {x}"
        )));
    }
    let ratio = 2.0 * params.w / params.delta;
    if ratio <= 1.0 {
        return Err(Error::Domain(format!(
            "normalization ln(2w/delta) requires 2w > delta, got 2w/delta = {ratio}"
        )));
    }
    let envelope = bessel_k0(0.5 * x * params.delta)?;
    Ok((x.sin() / x) * envelope / ratio.ln())
}

/// Free-electron-gas limit of g(x): the radial Fourier transform of the unit
/// Fermi ball, 3(sin x − x cos x)/x³, continued to 1 at x = 0.
pub fn free_gas_g(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        // Series expansion: 1 - x^2/10 + x^4/280 - ...
        let x2 = x * x;
        1.0 - x2 / 10.0 + x2 * x2 / 280.0
    } else {
        3.0 * (x.sin() - x * x.cos()) / (x * x * x)
    }
}

/// Two-particle space-spin density tensor at four positions (in units of
/// 1/k_F), as a 4×4 real matrix over the two-spin basis {↑↑, ↑↓, ↓↑, ↓↓}:
/// row index 2s₁+s₂, column index 2s₁′+s₂′ (↑ = 0, ↓ = 1).
///
/// The tensor factorizes into single-particle pieces,
///
/// ```text
///   ρ² = ½ [ δ_{s₁s₁′}δ_{s₂s₂′} G(r₁−r₁′)G(r₂−r₂′)
///          − δ_{s₁s₂′}δ_{s₂s₁′} G(r₁−r₂′)G(r₂−r₁′)
///          + I_{s₁s₂}I_{s₁′s₂′} F(r₁−r₂)F(r₁′−r₂′) ] ,
/// ```
///
/// written here directly in the real dimensionless correlators G ↦ I_G,
/// F ↦ I_F with I = iσ_y the antisymmetric pair-spin matrix. The equal-time
/// single-particle correlators are −i times these real quantities, so the
/// G·G product contributes (−i)² = −1 and F·F* contributes (−i)(+i) = +1
/// relative to the time-ordered form; those signs are already folded in
/// above, and the overall positive dimensionful prefactor is dropped. With
/// coincident primed and unprimed positions this reduces (after dividing by
/// its trace) to the two-spin Werner state, and at large |r_i − r_i′| only
/// the pair term survives — the off-diagonal long-range order of the
/// condensate.
///
/// # Errors
///
/// Propagates [`Error::NonConvergence`] from the correlator integrals.
pub fn rho2_spin_tensor(
    x1: &Vector3<f64>,
    x2: &Vector3<f64>,
    x1p: &Vector3<f64>,
    x2p: &Vector3<f64>,
    params: &MaterialParams,
    settings: &QuadratureSettings,
) -> Result<Matrix4<f64>> {
    let g11 = big_g_dimensionless((x1 - x1p).norm(), params, settings)?;
    let g22 = big_g_dimensionless((x2 - x2p).norm(), params, settings)?;
    let g12 = big_g_dimensionless((x1 - x2p).norm(), params, settings)?;
    let g21 = big_g_dimensionless((x2 - x1p).norm(), params, settings)?;
    let fpair = big_f_dimensionless((x1 - x2).norm(), params, settings)?;
    let fpair_p = big_f_dimensionless((x1p - x2p).norm(), params, settings)?;

    let kron = |s: usize, t: usize| if s == t { 1.0 } else { 0.0 };
    // I = i sigma_y in the basis (up, down).
    let pair_spin = |s: usize, t: usize| match (s, t) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    };

    let mut m = Matrix4::zeros();
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s1p in 0..2 {
                for s2p in 0..2 {
                    let direct = kron(s1, s1p) * kron(s2, s2p) * g11 * g22;
                    let exchange = kron(s1, s2p) * kron(s2, s1p) * g12 * g21;
                    let pairing = pair_spin(s1, s2) * pair_spin(s1p, s2p) * fpair * fpair_p;
                    m[(2 * s1 + s2, 2 * s1p + s2p)] = 0.5 * (direct - exchange + pairing);
                }
            }
        }
    }
    Ok(m)
}
