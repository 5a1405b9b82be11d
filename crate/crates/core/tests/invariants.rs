//! Module-level invariants that span modules or need the shipped data
//! tables, beyond what the per-module unit tests cover.

use std::fs::File;
use std::io::BufReader;

use casimir_polder::kernel::{self, EvalSettings, Scenario};
use casimir_polder::limits;
use casimir_polder::permittivity::{Extrapolation, OpticalTable, PermittivityModel};
use casimir_polder::polarizability::{PolarizabilityModel, PolarizabilityTable, TableUnits};
use casimir_polder::quantities::{
    ev_to_angular_frequency, PolarizabilityValue, Separation, Temperature, BOLTZMANN,
};

fn data_path(name: &str) -> String {
    format!("{}/data/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn atom_from_table(name: &str) -> PolarizabilityModel {
    let reader = BufReader::new(File::open(data_path(name)).unwrap());
    PolarizabilityModel::Tabulated(
        PolarizabilityTable::parse(reader, TableUnits::AtomicUnits).unwrap(),
    )
}

fn gold() -> PermittivityModel {
    let reader = BufReader::new(File::open(data_path("au_interband_nk.dat")).unwrap());
    PermittivityModel::tabulated_kk(
        OpticalTable::parse(reader).unwrap(),
        Extrapolation::Plasma {
            omega_p: ev_to_angular_frequency(9.0).unwrap(),
        },
    )
    .unwrap()
}

fn sep(a: f64) -> Separation {
    Separation::new(a).unwrap()
}

fn temp(t: f64) -> Temperature {
    Temperature::new(t).unwrap()
}

#[test]
fn shipped_tables_anchor_the_published_static_values() {
    let he = atom_from_table("he_star_polarizability.au.tsv");
    let na = atom_from_table("na_polarizability.au.tsv");
    let he0 = he.at_imag_freq(0.0).cubic_meters();
    let na0 = na.at_imag_freq(0.0).cubic_meters();
    assert!((he0 / 467.727e-31 - 1.0).abs() < 1e-6, "He* alpha(0) = {he0:e}");
    assert!((na0 / 241.067e-31 - 1.0).abs() < 1e-6, "Na alpha(0) = {na0:e}");
}

#[test]
fn exact_first_term_respects_the_bound_for_helium_on_gold() {
    // |F₁| ≤ k_BT (α(0)/4a³) r_TM(0) (ζ₁²+2ζ₁+2)e^{−ζ₁} across the whole
    // separation range; the r_TM < 1 and α-decay margins cover the
    // ln-vs-first-order difference for a real material
    let wall = gold();
    let atom = atom_from_table("he_star_polarizability.au.tsv");
    let t = temp(300.0);
    let mut a_m = 1e-9;
    while a_m <= 1.0001e-5 {
        let scenario = Scenario::new(sep(a_m), t, wall.clone(), atom.clone()).unwrap();
        let term = kernel::l_function(&scenario, 1).unwrap();
        let exact_f1 = (t.thermal_energy() * term.log_term()).abs();
        let bound = limits::first_term_bound(&scenario).unwrap();
        assert!(
            exact_f1 <= bound,
            "bound violated at a = {a_m:e}: |F1| = {exact_f1:e} > {bound:e}"
        );
        a_m *= 10.0;
    }
}

#[test]
fn theory_gap_bounded_by_sum_of_squared_depletions() {
    // ln(1−x) ≥ −x − x² on [0, 1/2] gives |F_exact − F_pert| ≤ k_BT Σ' x_l²;
    // oracle: term-by-term extraction through l_function
    let wall = PermittivityModel::plasma(ev_to_angular_frequency(9.0).unwrap()).unwrap();
    let atom = PolarizabilityModel::single_oscillator(
        PolarizabilityValue::new(467.727e-31).unwrap(),
        ev_to_angular_frequency(1.14).unwrap(),
    )
    .unwrap();
    let t = temp(300.0);
    for &a_m in &[1e-9, 3e-9] {
        let scenario = Scenario::new(sep(a_m), t, wall.clone(), atom.clone()).unwrap();
        let ev = kernel::evaluate(&scenario).unwrap();
        let gap = (ev.exact.free_energy - ev.perturbative.free_energy).abs();

        let mut sum_sq = 0.0;
        for l in 0..6000usize {
            let term = kernel::l_function(&scenario, l).unwrap();
            assert!(term.depletion <= 0.5, "x_l beyond the bound's domain");
            sum_sq += term.weight * term.depletion * term.depletion;
            if term.depletion * term.depletion < 1e-18 {
                break;
            }
        }
        let bound = t.thermal_energy() * sum_sq;
        assert!(
            gap <= bound * (1.0 + 1e-6),
            "a = {a_m:e}: gap {gap:e} exceeds k_BT Σ x² = {bound:e}"
        );
        // and the bound is tight to within the cubic corrections
        assert!(gap >= 0.4 * bound);
    }
}

#[test]
fn deviation_halves_or_better_when_separation_doubles() {
    let wall = gold();
    let atom = atom_from_table("he_star_polarizability.au.tsv");
    let mut a_m = 1e-9;
    let mut prev: Option<(f64, f64)> = None;
    while a_m <= 6.5e-8 {
        let scenario = Scenario::new(sep(a_m), temp(300.0), wall.clone(), atom.clone()).unwrap();
        let (df, dg) = kernel::relative_deviation(&scenario).unwrap();
        if let Some((pf, pg)) = prev {
            assert!(df < pf, "deltaF not decreasing at a = {a_m:e}");
            assert!(dg < pg, "deltaForce not decreasing at a = {a_m:e}");
        }
        prev = Some((df, dg));
        a_m *= 2.0;
    }
}

#[test]
fn cooling_to_100_k_barely_moves_the_deviations() {
    let wall = gold();
    let atom = atom_from_table("he_star_polarizability.au.tsv");
    let sweep_at = |t_k: f64| {
        let spec = casimir_polder::sweep::SweepSpec {
            a_min_m: 0.8e-9,
            a_max_m: 4e-9,
            points: 5,
            temperature: temp(t_k),
            ..Default::default()
        };
        casimir_polder::sweep::run_sweep(&spec, &wall, &atom, &EvalSettings::default()).unwrap()
    };
    let warm = sweep_at(300.0);
    let cold = sweep_at(100.0);
    let mut worst = 0.0f64;
    for (w, c) in warm.iter().zip(&cold) {
        worst = worst.max((w.delta_f.unwrap() - c.delta_f.unwrap()).abs());
        worst = worst.max((w.delta_force.unwrap() - c.delta_force.unwrap()).abs());
    }
    // "minor impact": well under half a percentage point
    assert!(worst < 0.005, "max deviation shift {worst:.5}");
}

#[test]
fn classical_half_depletion_free_energy() {
    // α(0)/(2a³) = 1/2 in the deep classical regime: F → (k_BT/2) ln(1/2)
    let a_m = 2e-5;
    let alpha = a_m * a_m * a_m; // α(0) = a³ ⇒ α/(2a³) = 1/2
    let scenario = Scenario::new(
        sep(a_m),
        temp(300.0),
        PermittivityModel::IdealMetal,
        PolarizabilityModel::static_alpha(PolarizabilityValue::new(alpha).unwrap()),
    )
    .unwrap();
    let result = kernel::free_energy_exact(&scenario).unwrap();
    let expected = BOLTZMANN * 300.0 / 2.0 * 0.5f64.ln();
    assert!(
        ((result.free_energy - expected) / expected).abs() < 1e-7,
        "got {:e}, expected {:e}",
        result.free_energy,
        expected
    );
}

#[test]
fn drude_and_plasma_extrapolations_agree_for_this_geometry() {
    // the TE zero-frequency difference is annihilated by the ζ₀² weight, so
    // swapping the extrapolation barely moves the answer
    let reader = BufReader::new(File::open(data_path("au_interband_nk.dat")).unwrap());
    let table = OpticalTable::parse(reader).unwrap();
    let omega_p = ev_to_angular_frequency(9.0).unwrap();
    let gamma = ev_to_angular_frequency(0.035).unwrap();
    let plasma = PermittivityModel::tabulated_kk(
        table.clone(),
        Extrapolation::Plasma { omega_p },
    )
    .unwrap();
    let drude =
        PermittivityModel::tabulated_kk(table, Extrapolation::Drude { omega_p, gamma }).unwrap();
    let atom = atom_from_table("he_star_polarizability.au.tsv");
    for &a_m in &[0.8e-9, 3e-9] {
        let run = |wall: &PermittivityModel| {
            let scenario =
                Scenario::new(sep(a_m), temp(300.0), wall.clone(), atom.clone()).unwrap();
            kernel::evaluate(&scenario).unwrap().exact.free_energy
        };
        let fp = run(&plasma);
        let fd = run(&drude);
        assert!(
            ((fp - fd) / fp).abs() < 2e-3,
            "extrapolation choice moved F by {:.2e} at a = {a_m:e}",
            ((fp - fd) / fp).abs()
        );
    }
}

#[test]
fn tight_and_default_settings_agree() {
    let wall = gold();
    let atom = atom_from_table("na_polarizability.au.tsv");
    let scenario = Scenario::new(sep(2e-9), temp(300.0), wall, atom).unwrap();
    let default = kernel::evaluate(&scenario).unwrap();
    let tight = kernel::evaluate_with(
        &scenario,
        &EvalSettings {
            quad_rel_tol: 1e-13,
            sum_rel_tol: 1e-12,
            ..EvalSettings::default()
        },
    )
    .unwrap();
    assert!(
        ((default.exact.free_energy - tight.exact.free_energy) / tight.exact.free_energy).abs()
            < 1e-8
    );
    assert!(((default.exact.force - tight.exact.force) / tight.exact.force).abs() < 1e-8);
    // the advertised tail bound really bounds the settings-induced shift
    assert!(
        (default.exact.free_energy - tight.exact.free_energy).abs()
            <= default.exact.free_energy_tail_bound * 2.0
    );
}
