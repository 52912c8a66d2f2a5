//! Shared fixtures for the criterion benches of the `bcs-spin` kernels.

use bcs_spin::{MaterialParams, QuadratureSettings};

/// The standard weak-coupling material (δ = 10⁻³, w = 0.1) used by every
/// bench, matching the library's documented reference parameters.
pub fn params() -> MaterialParams {
    MaterialParams::new(1e-3, 0.1).expect("fixture parameters are valid")
}

/// Default integrator settings.
pub fn settings() -> QuadratureSettings {
    QuadratureSettings::default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(params().weak_coupling_ordered());
        settings().validate().expect("default settings are valid");
    }
}
