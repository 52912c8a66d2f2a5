//! End-to-end acceptance checks for the crate's headline claims.
//!
//! Runs as a custom-harness test binary so that every check prints exactly one
//! `acceptance NN <name>: PASS|FAIL` line, pass or fail, and enforces a
//! wall-clock budget per check. The process exits nonzero if any check fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use bcs_spin::bessel::{bessel_k0, k0_asymptotic, k0_from_integral};
use bcs_spin::correlators::{
    free_gas_g, f_over_g_at_origin, f_over_g_weak_coupling, rho2_spin_tensor, sample_with_origin,
    OriginValues,
};
use bcs_spin::entanglement::{
    concurrence_werner, concurrence_wootters, entanglement_condition, entanglement_length,
    ppt_min_eigenvalue, werner_from_gf, WernerState,
};
use bcs_spin::model::{self, Kappa, MaterialParams};
use bcs_spin::quadrature::QuadratureSettings;
use bcs_spin::sweep::{build_sweep, Grid, SweepTable};
use nalgebra::{Matrix4, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fails the enclosing check with a formatted reason unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($why:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($why)+));
        }
    }};
}

type Check = Result<String, String>;

fn err_str(e: bcs_spin::Error) -> String {
    e.to_string()
}

fn default_params() -> Result<MaterialParams, String> {
    MaterialParams::new(1e-3, 0.1).map_err(err_str)
}

/// 1. The BCS coherence factors satisfy their algebraic identities on 10^4
///    random momenta, and v^2 is exactly 1/2 on the Fermi surface.
fn coherence_factor_identities() -> Check {
    let p = default_params()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce01);
    let mut worst_sum = 0.0_f64;
    let mut worst_prod = 0.0_f64;
    for _ in 0..10_000 {
        let k = Kappa(rng.random_range(0.0..3.0));
        let (u2, v2, uv) = (model::u2(k, &p), model::v2(k, &p), model::uv(k, &p));
        worst_sum = worst_sum.max((u2 + v2 - 1.0).abs());
        worst_prod = worst_prod.max((uv * uv - u2 * v2).abs());
    }
    ensure!(
        worst_sum <= 1e-12,
        "max |u^2 + v^2 - 1| = {worst_sum:e} exceeds 1e-12"
    );
    ensure!(
        worst_prod <= 1e-12,
        "max |(uv)^2 - u^2 v^2| = {worst_prod:e} exceeds 1e-12"
    );
    let v2_fermi = model::v2(Kappa(1.0), &p);
    ensure!(
        v2_fermi == 0.5,
        "v^2 on the Fermi surface is {v2_fermi}, want exactly 0.5"
    );
    Ok(format!(
        "10^4 momenta; max deviations {worst_sum:.1e} and {worst_prod:.1e}"
    ))
}

/// 2. With a vanishing gap the normalized correlator g collapses onto the
///    free-electron-gas closed form 3(sin x - x cos x)/x^3.
fn free_gas_limit() -> Check {
    let p = MaterialParams::new(1e-8, 0.1).map_err(err_str)?;
    let s = QuadratureSettings::default();
    let origin = OriginValues::compute(&p, &s).map_err(err_str)?;
    let mut worst = 0.0_f64;
    let mut worst_x = 0.0_f64;
    for i in 1..=200 {
        let x = i as f64 * 0.1;
        let smp = sample_with_origin(x, &p, &s, &origin).map_err(err_str)?;
        let dev = (smp.g - free_gas_g(x)).abs();
        if dev > worst {
            worst = dev;
            worst_x = x;
        }
    }
    ensure!(
        worst < 1e-6,
        "max |g - closed form| = {worst:e} at x = {worst_x} (limit 1e-6)"
    );
    Ok(format!(
        "200 points on [0.1, 20]; max deviation {worst:.1e} at x = {worst_x}"
    ))
}

/// 3. At the standard weak-coupling parameters (1 meV gap, 100 meV Debye
///    energy, 1 eV Fermi energy) the pair fraction F(0)/G(0) is of order
///    10^-2 and tracks its logarithmic weak-coupling estimate.
fn weak_coupling_pair_fraction() -> Check {
    let p = MaterialParams::from_physical(1.0, 100.0, 1.0).map_err(err_str)?;
    let s = QuadratureSettings::default();
    let ratio = f_over_g_at_origin(&p, &s).map_err(err_str)?;
    ensure!(
        (5e-3..=2e-2).contains(&ratio),
        "F(0)/G(0) = {ratio:e} outside [5e-3, 2e-2]"
    );
    let estimate = f_over_g_weak_coupling(&p);
    let rel = ((ratio - estimate) / estimate).abs();
    ensure!(
        rel <= 0.15,
        "F(0)/G(0) = {ratio:e} deviates {:.1}% from the weak-coupling estimate {estimate:e} (limit 15%)",
        100.0 * rel
    );
    Ok(format!(
        "F(0)/G(0) = {ratio:.4e}; weak-coupling estimate {estimate:.4e} ({:.2}% apart)",
        100.0 * rel
    ))
}

/// 4. The explicit two-spin matrix built from (g, f) equals the Werner
///    mixture (1-p) I/4 + p |singlet><singlet| elementwise, with p always in
///    [0, 1].
fn werner_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce04);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let g: f64 = rng.random_range(-1.0..=1.0);
        let f: f64 = rng.random_range(-1.0..=1.0);
        let (explicit, werner) = werner_from_gf(g, f).map_err(err_str)?;
        let p = werner.p();
        ensure!(
            (0.0..=1.0).contains(&p),
            "p = {p} out of [0, 1] for g = {g}, f = {f}"
        );
        let mixture = werner.density_matrix();
        let dev = (explicit.matrix() - mixture.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max);
        worst = worst.max(dev);
    }
    ensure!(
        worst <= 1e-12,
        "max elementwise |explicit - mixture| = {worst:e} exceeds 1e-12"
    );
    Ok(format!(
        "100 random (g, f); max elementwise deviation {worst:.1e}"
    ))
}

/// 5. The three separability tests (p > 1/3, f^2 + 2g^2 > 1, negative
///    partial-transpose eigenvalue) agree sample by sample, and the
///    partial-transpose eigenvalue matches (1 - 3p)/4.
fn separability_criteria_agree() -> Check {
    // Same sample stream as the Werner-identity check.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce04);
    let mut entangled = 0_usize;
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let g: f64 = rng.random_range(-1.0..=1.0);
        let f: f64 = rng.random_range(-1.0..=1.0);
        let (explicit, werner) = werner_from_gf(g, f).map_err(err_str)?;
        let by_p = werner.p() > 1.0 / 3.0;
        let by_correlators = entanglement_condition(g, f);
        let eig = ppt_min_eigenvalue(&explicit);
        let by_ppt = eig < 0.0;
        ensure!(
            by_p == by_correlators && by_p == by_ppt,
            "tests disagree at g = {g}, f = {f}: p-threshold {by_p}, correlator {by_correlators}, partial transpose {by_ppt}"
        );
        let closed = 0.25 * (1.0 - 3.0 * werner.p());
        let dev = (eig - closed).abs();
        worst = worst.max(dev);
        ensure!(
            dev <= 1e-10,
            "partial-transpose eigenvalue {eig:e} vs closed form {closed:e}: deviation {dev:e} exceeds 1e-10"
        );
        if by_p {
            entangled += 1;
        }
    }
    Ok(format!(
        "100 samples agree three ways ({entangled} entangled); max eigenvalue deviation {worst:.1e}"
    ))
}

/// 6. The general two-qubit concurrence algorithm reproduces the closed-form
///    Werner concurrence max{0, (3p - 1)/2} across the whole p range.
fn concurrence_routes_agree() -> Check {
    let mut worst = 0.0_f64;
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let werner = WernerState::new(p).map_err(err_str)?;
        let general = concurrence_wootters(&werner.density_matrix()).map_err(err_str)?;
        let dev = (general - concurrence_werner(p)).abs();
        worst = worst.max(dev);
        ensure!(
            dev <= 1e-10,
            "concurrence routes differ by {dev:e} at p = {p} (limit 1e-10)"
        );
    }
    Ok(format!(
        "p in {{0, 0.05, ..., 1}}; max route difference {worst:.1e}"
    ))
}

/// 7. The entanglement length sits at x_c = 1.814 +/- 0.01 — a fraction of
///    the Fermi wavelength — while the state stays separable on the whole
///    grid out to the coherence-length scale, hundreds of times further.
fn entanglement_length_and_scales() -> Check {
    let p = default_params()?;
    let s = QuadratureSettings::default();
    let report = entanglement_length(&p, &s).map_err(err_str)?;
    ensure!(
        (report.x_c - 1.814).abs() <= 0.01,
        "x_c = {} outside 1.814 +/- 0.01",
        report.x_c
    );
    ensure!(
        report.reentrant_at.is_none() && report.max_concurrence_beyond == 0.0,
        "re-entrant entanglement reported at {:?} (max concurrence {})",
        report.reentrant_at,
        report.max_concurrence_beyond
    );

    // Independent scan: concurrence is identically zero from one Fermi
    // wavelength out to the coherence-length scale.
    let origin = OriginValues::compute(&p, &s).map_err(err_str)?;
    let mut xs = Vec::new();
    let mut x = 2.0 * PI;
    while x <= 2000.0 {
        xs.push(x);
        x += 0.5 * PI;
    }
    let scanned: Vec<Result<(f64, f64), String>> = xs
        .par_iter()
        .map(|&xv| {
            let smp = sample_with_origin(xv, &p, &s, &origin).map_err(err_str)?;
            let (_, werner) = werner_from_gf(smp.g, smp.f).map_err(err_str)?;
            Ok((xv, werner.concurrence()))
        })
        .collect();
    for item in scanned {
        let (xv, c) = item?;
        ensure!(c == 0.0, "nonzero concurrence {c:e} at x = {xv}");
    }

    let ratio = p.coherence_length_kf() / report.x_c;
    ensure!(
        ratio > 100.0,
        "coherence length / entanglement length = {ratio}, want > 100"
    );
    Ok(format!(
        "x_c = {:.4}; C = 0 at all {} samples on [2pi, 2000]; scale ratio {:.0}",
        report.x_c,
        xs.len(),
        ratio
    ))
}

/// 8. The emitted sweep CSV carries the expected shape: g and C start at 1,
///    C falls monotonically to zero by x ~ 1.82 and stays there, and the
///    pair correlator F-tilde oscillates with zeros near multiples of pi
///    while decaying more slowly than g.
fn sweep_csv_shape() -> Check {
    let p = default_params()?;
    let s = QuadratureSettings::default();
    let grid = Grid::new(0.01, 20.0, 0.01).map_err(err_str)?;
    let table = build_sweep(&p, &s, &grid).map_err(err_str)?;
    let parsed = SweepTable::from_csv(&table.to_csv()).map_err(err_str)?;
    let rows = &parsed.rows;
    ensure!(rows.len() == 2000, "expected 2000 rows, got {}", rows.len());

    let first = rows[0];
    ensure!(
        (first.g - 1.0).abs() < 1e-3,
        "g at x = 0.01 is {}, want ~ 1",
        first.g
    );
    ensure!(
        (first.concurrence - 1.0).abs() < 1e-3,
        "concurrence at x = 0.01 is {}, want ~ 1",
        first.concurrence
    );

    // Concurrence: monotone decay to zero, then identically zero.
    let mut zero_from = None;
    for w in rows.windows(2) {
        match zero_from {
            None => {
                ensure!(
                    w[1].concurrence <= w[0].concurrence + 1e-9,
                    "concurrence rises from {} to {} at x = {}",
                    w[0].concurrence,
                    w[1].concurrence,
                    w[1].x
                );
                if w[1].concurrence == 0.0 {
                    zero_from = Some(w[1].x);
                }
            }
            Some(_) => ensure!(
                w[1].concurrence == 0.0,
                "concurrence re-enters ({:e}) at x = {}",
                w[1].concurrence,
                w[1].x
            ),
        }
    }
    let zero_from = zero_from.ok_or("concurrence never reached zero on [0.01, 20]")?;
    ensure!(
        (zero_from - 1.815).abs() <= 0.02,
        "concurrence reaches zero at x = {zero_from}, want ~ 1.82"
    );

    // F-tilde: sign changes land near multiples of pi.
    let mut crossings = 0_usize;
    for w in rows.windows(2) {
        if w[0].f_tilde * w[1].f_tilde < 0.0 {
            crossings += 1;
            let mid = 0.5 * (w[0].x + w[1].x);
            let n = (mid / PI).round();
            let off = (mid - n * PI).abs();
            ensure!(
                n >= 1.0 && off <= 0.3,
                "F-tilde zero at x = {mid:.3} is {off:.3} away from a multiple of pi"
            );
        }
    }
    ensure!(
        crossings >= 5,
        "only {crossings} F-tilde sign changes on (0, 20], want at least 5"
    );

    // F-tilde decays more slowly than g: its amplitude advantage grows with x.
    let window_max = |lo: f64, hi: f64, pick: fn(&bcs_spin::SweepRow) -> f64| {
        rows.iter()
            .filter(|r| r.x >= lo && r.x <= hi)
            .map(|r| pick(r).abs())
            .fold(0.0_f64, f64::max)
    };
    let near = window_max(5.0, 10.0, |r| r.f_tilde) / window_max(5.0, 10.0, |r| r.g);
    let far = window_max(15.0, 20.0, |r| r.f_tilde) / window_max(15.0, 20.0, |r| r.g);
    ensure!(
        far > near && far > 2.0,
        "F-tilde/g amplitude ratio does not grow: {near:.2} on [5, 10] vs {far:.2} on [15, 20]"
    );

    Ok(format!(
        "2000 rows; C = 0 from x = {zero_from}; {crossings} F-tilde zeros near n*pi; amplitude ratio {near:.1} -> {far:.1}"
    ))
}

/// 9. The Bessel K0 implementation agrees with direct quadrature of its
///    integral definition, and the leading asymptotic form is within 5% from
///    y = 3 on.
fn bessel_k0_validation() -> Check {
    let s = QuadratureSettings::default();
    let mut worst_abs = 0.0_f64;
    for &y in &[0.1, 1.0, 5.0, 10.0] {
        let direct = bessel_k0(y).map_err(err_str)?;
        let from_integral = k0_from_integral(y, &s).map_err(err_str)?;
        let dev = (direct - from_integral).abs();
        worst_abs = worst_abs.max(dev);
        ensure!(
            dev <= 1e-8,
            "K0({y}) integral route deviates by {dev:e} (limit 1e-8)"
        );
    }
    let mut worst_rel = 0.0_f64;
    for &y in &[3.0, 4.0, 5.0, 7.5, 10.0, 20.0] {
        let exact = bessel_k0(y).map_err(err_str)?;
        let asym = k0_asymptotic(y).map_err(err_str)?;
        let rel = ((asym - exact) / exact).abs();
        worst_rel = worst_rel.max(rel);
        ensure!(
            rel <= 0.05,
            "asymptotic K0({y}) off by {:.1}% (limit 5%)",
            100.0 * rel
        );
    }
    Ok(format!(
        "integral route within {worst_abs:.1e}; asymptotic within {:.1}% for y >= 3",
        100.0 * worst_rel
    ))
}

/// 10. At separation 10^3 between the primed and unprimed pairs, the
///     single-particle products in the two-particle tensor are negligible
///     next to the surviving pair term — off-diagonal long-range order.
fn odlro_limit() -> Check {
    let p = default_params()?;
    let s = QuadratureSettings::default();
    let far = 1000.0;
    let x1 = Vector3::new(0.0, 0.0, 0.0);
    let x2 = Vector3::new(0.0, 0.0, 1.0);
    let x1p = Vector3::new(0.0, 0.0, far);
    let x2p = Vector3::new(0.0, 0.0, far + 1.0);
    let full = rho2_spin_tensor(&x1, &x2, &x1p, &x2p, &p, &s).map_err(err_str)?;

    // The pair term alone, assembled from the same F integrals.
    let fpair = bcs_spin::correlators::big_f_dimensionless(1.0, &p, &s).map_err(err_str)?;
    let pair_spin = |s1: usize, s2: usize| match (s1, s2) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    };
    let mut pair_only = Matrix4::zeros();
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s1p in 0..2 {
                for s2p in 0..2 {
                    pair_only[(2 * s1 + s2, 2 * s1p + s2p)] =
                        0.5 * pair_spin(s1, s2) * pair_spin(s1p, s2p) * fpair * fpair;
                }
            }
        }
    }

    let scale = pair_only.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    ensure!(scale > 0.0, "pair term vanished; nothing to compare against");
    let residue = (full - pair_only).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let rel = residue / scale;
    ensure!(
        rel < 1e-3,
        "single-particle remnant is {rel:e} of the pair term (limit 1e-3)"
    );
    Ok(format!(
        "separation 10^3: single-particle remnant {rel:.1e} of the pair term"
    ))
}

fn run(no: usize, name: &str, budget: Duration, body: fn() -> Check) -> bool {
    let started = Instant::now();
    let outcome = body();
    let took = started.elapsed();
    let t = format!("{:.2}s", took.as_secs_f64());
    match outcome {
        Ok(detail) if took <= budget => {
            println!("acceptance {no:02} {name}: PASS ({t}; {detail})");
            true
        }
        Ok(detail) => {
            println!(
                "acceptance {no:02} {name}: FAIL (took {t}, budget {:.0?}; checks passed: {detail})",
                budget
            );
            false
        }
        Err(why) => {
            println!("acceptance {no:02} {name}: FAIL ({t}; {why})");
            false
        }
    }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "coherence factors", secs(1), coherence_factor_identities),
        run(2, "free-gas limit", secs(10), free_gas_limit),
        run(3, "weak-coupling pair fraction", secs(5), weak_coupling_pair_fraction),
        run(4, "werner identity", secs(1), werner_identity),
        run(5, "separability criteria", secs(1), separability_criteria_agree),
        run(6, "concurrence routes", secs(1), concurrence_routes_agree),
        run(7, "entanglement length", secs(60), entanglement_length_and_scales),
        run(8, "sweep csv shape", secs(60), sweep_csv_shape),
        run(9, "bessel k0 validation", secs(5), bessel_k0_validation),
        run(10, "odlro limit", secs(10), odlro_limit),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    if failed > 0 {
        eprintln!("acceptance: {failed} of {} checks failed", results.len());
        std::process::exit(1);
    }
    println!("acceptance: all {} checks passed", results.len());
}
