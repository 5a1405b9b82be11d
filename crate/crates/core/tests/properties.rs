//! Property tests for the spec-level invariants that hold over whole
//! parameter families rather than at hand-picked points.

use proptest::prelude::*;

use casimir_polder::kernel::{self, energy_profile};
use casimir_polder::permittivity::PermittivityModel;
use casimir_polder::polarizability::{PolarizabilityModel, PolarizabilityTable};
use casimir_polder::quantities::{
    au_to_si_polarizability, ev_to_angular_frequency, PermittivityValue, PolarizabilityValue,
    Separation, ELECTRON_VOLT, HBAR,
};

fn pol(v: f64) -> PolarizabilityValue {
    PolarizabilityValue::new(v).unwrap()
}

proptest! {
    #[test]
    fn unit_conversions_round_trip(value in 1e-6f64..1e6) {
        let omega = ev_to_angular_frequency(value).unwrap();
        let back = omega * HBAR / ELECTRON_VOLT;
        prop_assert!((back / value - 1.0).abs() < 1e-14);

        let alpha = au_to_si_polarizability(value).unwrap();
        prop_assert!((alpha.atomic_units() / value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_scales_linearly_with_separation(
        a_nm in 0.8f64..1e4,
        xi in 1e10f64..1e18,
        factor in 1.01f64..100.0,
    ) {
        let a = Separation::new(a_nm * 1e-9).unwrap();
        let scaled = Separation::new(a_nm * factor * 1e-9).unwrap();
        let ratio = scaled.dimensionless_frequency(xi) / a.dimensionless_frequency(xi);
        prop_assert!((ratio / factor - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permittivity_stays_above_one_and_non_increasing(
        omega_p in 1e14f64..1e17,
        gamma in 0.0f64..1e15,
        xi_lo in 1e11f64..1e17,
        step in 1.001f64..100.0,
    ) {
        for model in [
            PermittivityModel::plasma(omega_p).unwrap(),
            PermittivityModel::drude(omega_p, gamma).unwrap(),
        ] {
            let xi_hi = xi_lo * step;
            let lo = model.at_imag_freq(xi_lo).unwrap().value();
            let hi = model.at_imag_freq(xi_hi).unwrap().value();
            prop_assert!(lo >= 1.0 && hi >= 1.0);
            prop_assert!(hi <= lo * (1.0 + 1e-12));
        }
    }

    #[test]
    fn drude_lies_below_plasma_within_gamma_bound(
        omega_p in 1e15f64..1e17,
        gamma in 1e12f64..1e14,
        xi in 1e15f64..1e18,
    ) {
        let p = PermittivityModel::plasma(omega_p).unwrap().at_imag_freq(xi).unwrap().value();
        let d = PermittivityModel::drude(omega_p, gamma).unwrap().at_imag_freq(xi).unwrap().value();
        prop_assert!(d <= p);
        prop_assert!(p - d <= omega_p * omega_p * gamma / (xi * xi * xi) * (1.0 + 1e-12));
    }

    #[test]
    fn reflection_coefficients_stay_in_range(
        eps in 1.0f64..1e8,
        zeta in 0.0f64..50.0,
        dy in 1e-6f64..100.0,
    ) {
        let y = zeta + dy;
        let e = PermittivityValue::new(eps).unwrap();
        let tm = kernel::refl_tm(e, zeta, y).unwrap();
        let te = kernel::refl_te(e, zeta, y).unwrap();
        prop_assert!((0.0..1.0).contains(&tm), "tm = {tm}");
        prop_assert!((-1.0..=0.0).contains(&te), "te = {te}");
        // TM dominates TE in magnitude
        prop_assert!(te.abs() <= tm + 1e-15);
    }

    #[test]
    fn tabulated_interpolation_is_bounded_and_monotone(
        alpha0_au in 1.0f64..500.0,
        omega0 in 5e14f64..5e16,
        probe in 0.0f64..1.0,
    ) {
        // monotone nodes from a Lorentzian profile
        let rows: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let xi = if i == 0 { 0.0 } else { 1e13 * 1.6f64.powi(i) };
                let alpha_au = alpha0_au / (1.0 + (xi / omega0).powi(2));
                (xi, au_to_si_polarizability(alpha_au).unwrap().cubic_meters())
            })
            .collect();
        let table = PolarizabilityTable::from_rows(rows.clone()).unwrap();
        let model = PolarizabilityModel::Tabulated(table);

        // interpolant bounded by bracketing nodes everywhere inside the grid
        let seg = (probe * 28.0) as usize;
        let (x0, a0) = rows[seg];
        let (x1, a1) = rows[seg + 1];
        let xi = x0 + (x1 - x0) * 0.37;
        let v = model.at_imag_freq(xi).cubic_meters();
        prop_assert!(v <= a0 * (1.0 + 1e-12) && v >= a1 * (1.0 - 1e-12));

        // and monotone across segment boundaries
        let v_hi = model.at_imag_freq(x1).cubic_meters();
        prop_assert!(v_hi <= v * (1.0 + 1e-12));
    }

    #[test]
    fn kernel_integral_respects_majorant(
        omega_p in 1e15f64..1e17,
        zeta in 0.0f64..30.0,
        a_nm in 0.8f64..100.0,
    ) {
        let wall = PermittivityModel::plasma(omega_p).unwrap();
        let a = Separation::new(a_nm * 1e-9).unwrap();
        let i = kernel::matsubara_integral(&wall, a, zeta).unwrap();
        prop_assert!(i >= 0.0);
        prop_assert!(i <= 2.0 * energy_profile(zeta) * (1.0 + 1e-9));
    }

    #[test]
    fn single_oscillator_below_static_and_above_zero(
        alpha0 in 1e-31f64..1e-28,
        omega0 in 1e14f64..1e17,
        xi in 0.0f64..1e18,
    ) {
        let m = PolarizabilityModel::single_oscillator(pol(alpha0), omega0).unwrap();
        let v = m.at_imag_freq(xi).cubic_meters();
        prop_assert!(v > 0.0 && v <= alpha0);
    }
}
