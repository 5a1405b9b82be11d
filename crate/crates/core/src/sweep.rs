//! Separation sweeps and structured output.
//!
//! A sweep evaluates one scenario family over a separation grid and emits
//! one record per point, in ascending order, as CSV or JSON. Points are
//! evaluated concurrently; the output is assembled in grid order, so the
//! bytes are identical whatever the thread count.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, EvalSettings, Scenario};
use crate::permittivity::PermittivityModel;
use crate::polarizability::PolarizabilityModel;
use crate::quantities::{Separation, Temperature, ELECTRON_VOLT};

/// Grid spacing of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

/// Which quantities a sweep reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantitySelection {
    pub free_energy: bool,
    pub force: bool,
    pub deviation: bool,
}

impl Default for QuantitySelection {
    fn default() -> Self {
        Self {
            free_energy: true,
            force: true,
            deviation: true,
        }
    }
}

/// Which theories a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheorySelection {
    pub exact: bool,
    pub perturbative: bool,
}

impl Default for TheorySelection {
    fn default() -> Self {
        Self {
            exact: true,
            perturbative: true,
        }
    }
}

/// Sweep specification. Defaults mirror the figure-style grid:
/// 60 log-spaced points from 0.8 nm to 100 nm at 300 K.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub a_min_m: f64,
    pub a_max_m: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub temperature: Temperature,
    pub quantities: QuantitySelection,
    pub theories: TheorySelection,
    /// Abort on the first domain error instead of flagging the record.
    pub strict: bool,
    /// Scenario validity floor (m).
    pub separation_floor_m: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            a_min_m: 0.8e-9,
            a_max_m: 100e-9,
            points: 60,
            spacing: Spacing::Log,
            temperature: Temperature::new(300.0).expect("300 K is valid"),
            quantities: QuantitySelection::default(),
            theories: TheorySelection::default(),
            strict: false,
            separation_floor_m: kernel::DEFAULT_SEPARATION_FLOOR,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.a_min_m > 0.0) || !(self.a_max_m >= self.a_min_m) {
            return Err(Error::Config(format!(
                "need 0 < a_min <= a_max, got [{:e}, {:e}]",
                self.a_min_m, self.a_max_m
            )));
        }
        if self.points == 0 {
            return Err(Error::Config("points must be at least 1".into()));
        }
        if self.a_min_m < self.separation_floor_m {
            return Err(Error::Config(format!(
                "a_min {:e} m lies below the separation floor {:e} m",
                self.a_min_m, self.separation_floor_m
            )));
        }
        let q = &self.quantities;
        if !q.free_energy && !q.force && !q.deviation {
            return Err(Error::Config("select at least one quantity".into()));
        }
        let t = &self.theories;
        if !t.exact && !t.perturbative {
            return Err(Error::Config("select at least one theory".into()));
        }
        if q.deviation && !(t.exact && t.perturbative) {
            return Err(Error::Config(
                "deviation columns need both the exact and perturbative theories".into(),
            ));
        }
        Ok(())
    }

    /// Ascending separation grid (m).
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.a_min_m];
        }
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.a_min_m + t * (self.a_max_m - self.a_min_m),
                    Spacing::Log => {
                        (self.a_min_m.ln() + t * (self.a_max_m.ln() - self.a_min_m.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// Why a record carries no exact-theory values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    /// L_l ≤ 0 at this separation: nonperturbative theory breaks down.
    Breakdown,
}

/// One sweep point. Raw SI values plus the eV/pN convenience columns and
/// the figure-style scaled columns F·a³ and Force·a⁴.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub a_m: f64,
    pub f_exact_j: Option<f64>,
    pub f_exact_ev: Option<f64>,
    pub f_pert_j: Option<f64>,
    pub f_pert_ev: Option<f64>,
    pub force_exact_n: Option<f64>,
    pub force_exact_pn: Option<f64>,
    pub force_pert_n: Option<f64>,
    pub force_pert_pn: Option<f64>,
    pub f_exact_a3_j_m3: Option<f64>,
    pub force_exact_a4_n_m4: Option<f64>,
    pub delta_f: Option<f64>,
    pub delta_force: Option<f64>,
    pub terms_used: Option<u64>,
    pub status: RecordStatus,
}

impl OutputRecord {
    fn empty(a_m: f64, status: RecordStatus) -> Self {
        Self {
            a_m,
            f_exact_j: None,
            f_exact_ev: None,
            f_pert_j: None,
            f_pert_ev: None,
            force_exact_n: None,
            force_exact_pn: None,
            force_pert_n: None,
            force_pert_pn: None,
            f_exact_a3_j_m3: None,
            force_exact_a4_n_m4: None,
            delta_f: None,
            delta_force: None,
            terms_used: None,
            status,
        }
    }
}

fn evaluate_point(
    a_m: f64,
    spec: &SweepSpec,
    wall: &PermittivityModel,
    atom: &PolarizabilityModel,
    settings: &EvalSettings,
) -> Result<OutputRecord> {
    let scenario = Scenario::with_floor(
        Separation::new(a_m)?,
        spec.temperature,
        wall.clone(),
        atom.clone(),
        spec.separation_floor_m,
    )?;

    let mut record = OutputRecord::empty(a_m, RecordStatus::Ok);
    let want_exact = spec.theories.exact;
    let want_pert = spec.theories.perturbative || spec.quantities.deviation;

    let exact = if want_exact {
        match kernel_eval_exact(&scenario, settings) {
            Ok(res) => Some(res),
            Err(Error::NonperturbativeBreakdown { .. }) if !spec.strict => {
                record.status = RecordStatus::Breakdown;
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let pert = if want_pert {
        Some(kernel::evaluate_perturbative_with(&scenario, settings)?)
    } else {
        None
    };

    let mut terms = 0u64;
    if let Some(res) = &exact {
        terms = terms.max(res.terms_used as u64);
        if spec.quantities.free_energy {
            record.f_exact_j = Some(res.free_energy);
            record.f_exact_ev = Some(res.free_energy / ELECTRON_VOLT);
            record.f_exact_a3_j_m3 = Some(res.free_energy * a_m * a_m * a_m);
        }
        if spec.quantities.force {
            record.force_exact_n = Some(res.force);
            record.force_exact_pn = Some(res.force * 1e12);
            record.force_exact_a4_n_m4 = Some(res.force * a_m * a_m * a_m * a_m);
        }
    }
    if let Some(res) = &pert {
        terms = terms.max(res.terms_used as u64);
        if spec.quantities.free_energy && spec.theories.perturbative {
            record.f_pert_j = Some(res.free_energy);
            record.f_pert_ev = Some(res.free_energy / ELECTRON_VOLT);
        }
        if spec.quantities.force && spec.theories.perturbative {
            record.force_pert_n = Some(res.force);
            record.force_pert_pn = Some(res.force * 1e12);
        }
    }
    if spec.quantities.deviation {
        if let (Some(ex), Some(pe)) = (&exact, &pert) {
            if pe.free_energy != 0.0 && pe.force != 0.0 {
                record.delta_f = Some((ex.free_energy - pe.free_energy) / pe.free_energy);
                record.delta_force = Some((ex.force - pe.force) / pe.force);
            }
        }
    }
    record.terms_used = Some(terms);
    Ok(record)
}

fn kernel_eval_exact(
    scenario: &Scenario,
    settings: &EvalSettings,
) -> Result<kernel::InteractionResult> {
    if scenario.temperature().is_zero() {
        kernel::energy_zero_temperature_with(scenario, settings)
    } else {
        kernel::free_energy_exact_with(scenario, settings)
    }
}

/// Run the sweep: one record per grid point, ascending in a.
pub fn run_sweep(
    spec: &SweepSpec,
    wall: &PermittivityModel,
    atom: &PolarizabilityModel,
    settings: &EvalSettings,
) -> Result<Vec<OutputRecord>> {
    spec.validate()?;
    let grid = spec.grid();
    // parallel evaluation, deterministic ordered collection
    let results: Vec<Result<OutputRecord>> = grid
        .par_iter()
        .map(|&a_m| evaluate_point(a_m, spec, wall, atom, settings))
        .collect();
    results.into_iter().collect()
}

/// Output format of [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fixed CSV schema: every record field, units in the column names.
pub const CSV_HEADER: &str = "a_m,F_exact_J,F_exact_eV,F_pert_J,F_pert_eV,\
Force_exact_N,Force_exact_pN,Force_pert_N,Force_pert_pN,\
F_exact_a3_J_m3,Force_exact_a4_N_m4,deltaF,deltaForce,terms_used,status";

/// 17 significant digits, `.` decimal separator, locale-independent.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Write records in the requested format; deterministic byte-for-byte for
/// identical inputs.
pub fn emit(records: &[OutputRecord], format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                let status = match r.status {
                    RecordStatus::Ok => "ok",
                    RecordStatus::Breakdown => "breakdown",
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    fmt_f64(r.a_m),
                    fmt_opt(r.f_exact_j),
                    fmt_opt(r.f_exact_ev),
                    fmt_opt(r.f_pert_j),
                    fmt_opt(r.f_pert_ev),
                    fmt_opt(r.force_exact_n),
                    fmt_opt(r.force_exact_pn),
                    fmt_opt(r.force_pert_n),
                    fmt_opt(r.force_pert_pn),
                    fmt_opt(r.f_exact_a3_j_m3),
                    fmt_opt(r.force_exact_a4_n_m4),
                    fmt_opt(r.delta_f),
                    fmt_opt(r.delta_force),
                    r.terms_used.map(|t| t.to_string()).unwrap_or_default(),
                    status,
                )?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, records)
                .map_err(|e| Error::Config(format!("JSON serialization failed: {e}")))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::PolarizabilityValue;
    use approx::assert_relative_eq;

    fn static_atom(alpha: f64) -> PolarizabilityModel {
        PolarizabilityModel::static_alpha(PolarizabilityValue::new(alpha).unwrap())
    }

    fn small_spec(points: usize) -> SweepSpec {
        SweepSpec {
            a_min_m: 1e-9,
            a_max_m: 10e-9,
            points,
            ..SweepSpec::default()
        }
    }

    #[test]
    fn single_point_zero_polarizability_is_zero_record() {
        let spec = small_spec(1);
        let records = run_sweep(
            &spec,
            &PermittivityModel::IdealMetal,
            &static_atom(0.0),
            &EvalSettings::default(),
        )
        .unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.f_exact_j, Some(0.0));
        assert_eq!(r.force_exact_n, Some(0.0));
        assert_eq!(r.f_pert_j, Some(0.0));
        assert_eq!(r.status, RecordStatus::Ok);
        // deviation undefined at alpha = 0 → omitted
        assert_eq!(r.delta_f, None);
    }

    #[test]
    fn grid_is_ascending_and_inclusive() {
        let spec = small_spec(7);
        let grid = spec.grid();
        assert_eq!(grid.len(), 7);
        assert_relative_eq!(grid[0], 1e-9, max_relative = 1e-15);
        assert_relative_eq!(grid[6], 10e-9, max_relative = 1e-12);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        let lin = SweepSpec {
            spacing: Spacing::Linear,
            ..small_spec(4)
        };
        let grid = lin.grid();
        assert_relative_eq!(grid[1] - grid[0], grid[3] - grid[2], max_relative = 1e-12);
    }

    #[test]
    fn scaled_columns_are_exact_products() {
        let spec = small_spec(3);
        let records = run_sweep(
            &spec,
            &PermittivityModel::plasma(1.37e16).unwrap(),
            &static_atom(4e-29),
            &EvalSettings::default(),
        )
        .unwrap();
        for r in &records {
            let a = r.a_m;
            assert_eq!(r.f_exact_a3_j_m3.unwrap(), r.f_exact_j.unwrap() * a * a * a);
            assert_eq!(
                r.force_exact_a4_n_m4.unwrap(),
                r.force_exact_n.unwrap() * a * a * a * a
            );
        }
    }

    #[test]
    fn empty_record_list_yields_header_only_csv() {
        let mut buf = Vec::new();
        emit(&[], OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_uses_17_significant_digits() {
        let mut records = vec![OutputRecord::empty(1.0 / 3.0, RecordStatus::Ok)];
        records[0].f_exact_j = Some(-1.0 / 7.0);
        let mut buf = Vec::new();
        emit(&records, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("3.3333333333333331e-1"));
        assert!(text.contains("-1.4285714285714285e-1"));
    }

    #[test]
    fn json_round_trips_identically() {
        let spec = small_spec(4);
        let records = run_sweep(
            &spec,
            &PermittivityModel::drude(1.37e16, 5.3e13).unwrap(),
            &static_atom(4e-29),
            &EvalSettings::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        emit(&records, OutputFormat::Json, &mut buf).unwrap();
        let parsed: Vec<OutputRecord> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn breakdown_points_are_flagged_not_fatal() {
        // He*-scale polarizability with a floor low enough to cross the
        // critical separation ≈ 0.286 nm
        let spec = SweepSpec {
            a_min_m: 0.27e-9,
            a_max_m: 1e-9,
            points: 5,
            separation_floor_m: 0.2e-9,
            ..SweepSpec::default()
        };
        let records = run_sweep(
            &spec,
            &PermittivityModel::IdealMetal,
            &static_atom(467.727e-31),
            &EvalSettings::default(),
        )
        .unwrap();
        assert_eq!(records[0].status, RecordStatus::Breakdown);
        assert_eq!(records[0].f_exact_j, None);
        // perturbative theory still reported there
        assert!(records[0].f_pert_j.unwrap() < 0.0);
        assert_eq!(records.last().unwrap().status, RecordStatus::Ok);

        let strict = SweepSpec {
            strict: true,
            ..spec
        };
        assert!(matches!(
            run_sweep(
                &strict,
                &PermittivityModel::IdealMetal,
                &static_atom(467.727e-31),
                &EvalSettings::default(),
            ),
            Err(Error::NonperturbativeBreakdown { .. })
        ));
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let mut spec = small_spec(0);
        assert!(spec.validate().is_err());
        spec.points = 5;
        spec.a_max_m = 0.5e-9;
        assert!(spec.validate().is_err());
        let mut spec = small_spec(5);
        spec.quantities = QuantitySelection {
            free_energy: false,
            force: false,
            deviation: false,
        };
        assert!(spec.validate().is_err());
        let mut spec = small_spec(5);
        spec.quantities.deviation = true;
        spec.theories.exact = false;
        assert!(spec.validate().is_err());
    }
}
