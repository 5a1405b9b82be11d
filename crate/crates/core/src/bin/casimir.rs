//! Command-line front end: scenario configuration, separation sweeps,
//! analytic limits, and the cross-oracle self-check.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use casimir_polder::config::{Config, CONFIG_ENV_VAR};
use casimir_polder::kernel::{self, EvalSettings, Scenario};
use casimir_polder::limits;
use casimir_polder::permittivity::{Extrapolation, OpticalTable, PermittivityModel};
use casimir_polder::polarizability::{PolarizabilityModel, PolarizabilityTable, TableUnits};
use casimir_polder::quantities::{
    au_to_si_polarizability, ev_to_angular_frequency, PolarizabilityValue, Separation,
    Temperature, ELECTRON_VOLT,
};
use casimir_polder::selfcheck::run_self_checks;
use casimir_polder::sweep::{
    emit, run_sweep, OutputFormat, QuantitySelection, Spacing, SweepSpec, TheorySelection,
};

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Atom-surface dispersion free energy and force, exact and perturbative"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the separation and emit one record per grid point.
    Sweep(SweepArgs),
    /// Evaluate a single separation and print all quantities.
    Point(PointArgs),
    /// Closed-form limits for a static polarizability.
    Limits(LimitsArgs),
    /// Run the cross-oracle consistency suite.
    SelfCheck,
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    /// Configuration file (key=value); falls back to $CASIMIR_KERNEL_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Polarizability table file ("xi alpha" per line).
    #[arg(long)]
    atom_table: Option<PathBuf>,

    /// Units of the alpha column in --atom-table.
    #[arg(long, value_enum)]
    atom_units: Option<AtomUnits>,

    /// Static polarizability in atomic units (used when no table is given).
    #[arg(long)]
    alpha0_au: Option<f64>,

    /// Single-oscillator resonance (eV); with --alpha0-au selects the
    /// oscillator model instead of a frequency-independent alpha.
    #[arg(long)]
    omega0_ev: Option<f64>,

    /// Wall material model.
    #[arg(long, value_enum)]
    material: Option<MaterialKind>,

    /// Optical data file ("energy_eV n k" per line) for --material tabulated.
    #[arg(long)]
    optical_table: Option<PathBuf>,

    /// Low-frequency extrapolation of tabulated data.
    #[arg(long, value_enum)]
    extrapolation: Option<ExtrapolationKind>,

    /// Plasma frequency (eV).
    #[arg(long)]
    omega_p_ev: Option<f64>,

    /// Drude relaxation frequency (eV).
    #[arg(long)]
    gamma_ev: Option<f64>,

    /// Temperature (K); 0 selects the zero-temperature integral mode.
    #[arg(long)]
    temperature_k: Option<f64>,

    /// Validity floor on the separation (nm).
    #[arg(long)]
    separation_floor_nm: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,

    /// Smallest separation (nm).
    #[arg(long)]
    a_min_nm: Option<f64>,

    /// Largest separation (nm).
    #[arg(long)]
    a_max_nm: Option<f64>,

    /// Number of grid points.
    #[arg(long)]
    points: Option<usize>,

    /// Grid spacing.
    #[arg(long, value_enum)]
    spacing: Option<SpacingKind>,

    /// Comma-separated subset of {exact, perturbative}.
    #[arg(long, value_delimiter = ',')]
    theories: Option<Vec<TheoryKind>>,

    /// Comma-separated subset of {free-energy, force, deviation}.
    #[arg(long, value_delimiter = ',')]
    quantities: Option<Vec<QuantityKind>>,

    /// Output format.
    #[arg(long, value_enum)]
    format: Option<FormatKind>,

    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Abort on the first domain error instead of flagging the record.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,

    /// Separation (nm).
    #[arg(long)]
    a_nm: f64,

    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: PointFormat,

    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LimitsArgs {
    /// Static polarizability (atomic units).
    #[arg(long)]
    alpha0_au: f64,

    /// Separation (nm).
    #[arg(long)]
    a_nm: f64,

    /// Temperature (K) for the classical limit and the ideal-metal series.
    #[arg(long, default_value_t = 300.0)]
    temperature_k: f64,

    /// Expansion orders kept in the series.
    #[arg(long, default_value_t = 12)]
    max_order: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AtomUnits {
    Au,
    Si,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MaterialKind {
    Ideal,
    Plasma,
    Drude,
    Tabulated,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExtrapolationKind {
    Plasma,
    Drude,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpacingKind {
    Log,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryKind {
    Exact,
    Perturbative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityKind {
    FreeEnergy,
    Force,
    Deviation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatKind {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PointFormat {
    Text,
    Csv,
    Json,
}

type AnyError = Box<dyn std::error::Error>;

fn main() {
    if let Err(err) = run() {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}

fn run() -> Result<(), AnyError> {
    match Cli::parse().command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Point(args) => cmd_point(args),
        Command::Limits(args) => cmd_limits(args),
        Command::SelfCheck => cmd_self_check(),
    }
}

/// Settings resolved from defaults < config file < flags.
struct Resolved {
    wall: PermittivityModel,
    atom: PolarizabilityModel,
    temperature: Temperature,
    separation_floor_m: f64,
    config: Config,
}

fn load_config(flag: &Option<PathBuf>) -> Result<Config, AnyError> {
    let path = match flag {
        Some(p) => Some(p.clone()),
        None => std::env::var_os(CONFIG_ENV_VAR).map(PathBuf::from),
    };
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            Ok(Config::parse(&text)?)
        }
    }
}

fn pick<T: Copy + std::str::FromStr>(
    flag: Option<T>,
    cfg: &Config,
    key: &str,
) -> Result<Option<T>, AnyError> {
    if flag.is_some() {
        return Ok(flag);
    }
    Ok(cfg.get_parsed::<T>(key)?)
}

fn resolve_scenario(args: &ScenarioArgs) -> Result<Resolved, AnyError> {
    let cfg = load_config(&args.config)?;

    let omega_p_ev = pick(args.omega_p_ev, &cfg, "omega_p_ev")?.unwrap_or(9.0);
    let gamma_ev = pick(args.gamma_ev, &cfg, "gamma_ev")?.unwrap_or(0.035);
    let omega_p = ev_to_angular_frequency(omega_p_ev)?;
    let gamma = ev_to_angular_frequency(gamma_ev)?;

    let material = match args.material {
        Some(m) => Some(m),
        None => match cfg.get("material") {
            None => None,
            Some("ideal") => Some(MaterialKind::Ideal),
            Some("plasma") => Some(MaterialKind::Plasma),
            Some("drude") => Some(MaterialKind::Drude),
            Some("tabulated") => Some(MaterialKind::Tabulated),
            Some(other) => return Err(format!("unknown material `{other}` in config").into()),
        },
    }
    .unwrap_or(MaterialKind::Plasma);

    let optical_table = args
        .optical_table
        .clone()
        .or_else(|| cfg.get("optical_table").map(PathBuf::from));
    let extrapolation = match args.extrapolation {
        Some(e) => Some(e),
        None => match cfg.get("extrapolation") {
            None => None,
            Some("plasma") => Some(ExtrapolationKind::Plasma),
            Some("drude") => Some(ExtrapolationKind::Drude),
            Some(other) => return Err(format!("unknown extrapolation `{other}`").into()),
        },
    }
    .unwrap_or(ExtrapolationKind::Plasma);

    let wall = match material {
        MaterialKind::Ideal => PermittivityModel::IdealMetal,
        MaterialKind::Plasma => PermittivityModel::plasma(omega_p)?,
        MaterialKind::Drude => PermittivityModel::drude(omega_p, gamma)?,
        MaterialKind::Tabulated => {
            let path = optical_table
                .ok_or("--material tabulated needs --optical-table (or optical_table= in config)")?;
            let table = OpticalTable::parse(open(&path)?)?;
            let extrap = match extrapolation {
                ExtrapolationKind::Plasma => Extrapolation::Plasma { omega_p },
                ExtrapolationKind::Drude => Extrapolation::Drude { omega_p, gamma },
            };
            PermittivityModel::tabulated_kk(table, extrap)?
        }
    };

    let atom_table = args
        .atom_table
        .clone()
        .or_else(|| cfg.get("atom_table").map(PathBuf::from));
    let atom_units = match args.atom_units {
        Some(u) => Some(u),
        None => match cfg.get("atom_units") {
            None => None,
            Some("au") => Some(AtomUnits::Au),
            Some("si") => Some(AtomUnits::Si),
            Some(other) => return Err(format!("unknown atom units `{other}`").into()),
        },
    }
    .unwrap_or(AtomUnits::Au);
    let alpha0_au = pick(args.alpha0_au, &cfg, "alpha0_au")?;
    let omega0_ev = pick(args.omega0_ev, &cfg, "omega0_ev")?;

    let atom = match (atom_table, alpha0_au) {
        (Some(path), _) => {
            let units = match atom_units {
                AtomUnits::Au => TableUnits::AtomicUnits,
                AtomUnits::Si => TableUnits::Si,
            };
            PolarizabilityModel::Tabulated(PolarizabilityTable::parse(open(&path)?, units)?)
        }
        (None, Some(alpha_au)) => {
            let alpha0 = au_to_si_polarizability(alpha_au)?;
            match omega0_ev {
                Some(ev) => PolarizabilityModel::single_oscillator(
                    alpha0,
                    ev_to_angular_frequency(ev)?,
                )?,
                None => PolarizabilityModel::static_alpha(alpha0),
            }
        }
        (None, None) => {
            return Err(
                "no atom specified: give --atom-table FILE or --alpha0-au VALUE \
                 (optionally with --omega0-ev)"
                    .into(),
            )
        }
    };

    let temperature =
        Temperature::new(pick(args.temperature_k, &cfg, "temperature_k")?.unwrap_or(300.0))?;
    let separation_floor_m = pick(args.separation_floor_nm, &cfg, "separation_floor_nm")?
        .map(|nm| nm * 1e-9)
        .unwrap_or(kernel::DEFAULT_SEPARATION_FLOOR);

    Ok(Resolved {
        wall,
        atom,
        temperature,
        separation_floor_m,
        config: cfg,
    })
}

fn open(path: &Path) -> Result<BufReader<File>, AnyError> {
    Ok(BufReader::new(File::open(path).map_err(|e| {
        format!("cannot open {}: {e}", path.display())
    })?))
}

fn output_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, AnyError> {
    match path {
        None => Ok(Box::new(std::io::stdout().lock())),
        Some(p) => Ok(Box::new(
            File::create(p).map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        )),
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), AnyError> {
    let resolved = resolve_scenario(&args.scenario)?;
    let cfg = &resolved.config;

    let quantities = match &args.quantities {
        Some(list) => selection_from_quantities(list),
        None => match cfg.get("quantities") {
            Some(raw) => parse_quantities(raw)?,
            None => QuantitySelection::default(),
        },
    };
    let theories = match &args.theories {
        Some(list) => selection_from_theories(list),
        None => match cfg.get("theories") {
            Some(raw) => parse_theories(raw)?,
            None => TheorySelection::default(),
        },
    };
    let spacing = match args.spacing {
        Some(SpacingKind::Log) => Spacing::Log,
        Some(SpacingKind::Linear) => Spacing::Linear,
        None => match cfg.get("spacing") {
            None | Some("log") => Spacing::Log,
            Some("linear") => Spacing::Linear,
            Some(other) => return Err(format!("unknown spacing `{other}`").into()),
        },
    };
    let format = match args.format {
        Some(FormatKind::Csv) => OutputFormat::Csv,
        Some(FormatKind::Json) => OutputFormat::Json,
        None => match cfg.get("format") {
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => return Err(format!("unknown format `{other}`").into()),
        },
    };
    let strict = args.strict || cfg.get("strict") == Some("true");
    let output = args
        .output
        .clone()
        .or_else(|| cfg.get("output").map(PathBuf::from));

    let spec = SweepSpec {
        a_min_m: pick(args.a_min_nm, cfg, "a_min_nm")?.unwrap_or(0.8) * 1e-9,
        a_max_m: pick(args.a_max_nm, cfg, "a_max_nm")?.unwrap_or(100.0) * 1e-9,
        points: pick(args.points, cfg, "points")?.unwrap_or(60),
        spacing,
        temperature: resolved.temperature,
        quantities,
        theories,
        strict,
        separation_floor_m: resolved.separation_floor_m,
    };

    let records = run_sweep(&spec, &resolved.wall, &resolved.atom, &EvalSettings::default())?;
    let mut out = output_writer(&output)?;
    emit(&records, format, &mut out)?;
    Ok(())
}

fn selection_from_quantities(list: &[QuantityKind]) -> QuantitySelection {
    QuantitySelection {
        free_energy: list.contains(&QuantityKind::FreeEnergy),
        force: list.contains(&QuantityKind::Force),
        deviation: list.contains(&QuantityKind::Deviation),
    }
}

fn parse_quantities(raw: &str) -> Result<QuantitySelection, AnyError> {
    let mut sel = QuantitySelection {
        free_energy: false,
        force: false,
        deviation: false,
    };
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "free_energy" | "free-energy" => sel.free_energy = true,
            "force" => sel.force = true,
            "deviation" => sel.deviation = true,
            other => return Err(format!("unknown quantity `{other}`").into()),
        }
    }
    Ok(sel)
}

fn selection_from_theories(list: &[TheoryKind]) -> TheorySelection {
    TheorySelection {
        exact: list.contains(&TheoryKind::Exact),
        perturbative: list.contains(&TheoryKind::Perturbative),
    }
}

fn parse_theories(raw: &str) -> Result<TheorySelection, AnyError> {
    let mut sel = TheorySelection {
        exact: false,
        perturbative: false,
    };
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "exact" => sel.exact = true,
            "perturbative" => sel.perturbative = true,
            other => return Err(format!("unknown theory `{other}`").into()),
        }
    }
    Ok(sel)
}

fn cmd_point(args: PointArgs) -> Result<(), AnyError> {
    let resolved = resolve_scenario(&args.scenario)?;
    let spec = SweepSpec {
        a_min_m: args.a_nm * 1e-9,
        a_max_m: args.a_nm * 1e-9,
        points: 1,
        temperature: resolved.temperature,
        separation_floor_m: resolved.separation_floor_m,
        ..SweepSpec::default()
    };
    let records = run_sweep(&spec, &resolved.wall, &resolved.atom, &EvalSettings::default())?;
    let mut out = output_writer(&args.output)?;
    match args.format {
        PointFormat::Csv => emit(&records, OutputFormat::Csv, &mut out)?,
        PointFormat::Json => emit(&records, OutputFormat::Json, &mut out)?,
        PointFormat::Text => {
            let r = &records[0];
            writeln!(out, "separation:        {:.6e} m", r.a_m)?;
            if let (Some(j), Some(ev)) = (r.f_exact_j, r.f_exact_ev) {
                writeln!(out, "F exact:           {j:.10e} J = {ev:.10e} eV")?;
            }
            if let (Some(j), Some(ev)) = (r.f_pert_j, r.f_pert_ev) {
                writeln!(out, "F perturbative:    {j:.10e} J = {ev:.10e} eV")?;
            }
            if let (Some(n), Some(pn)) = (r.force_exact_n, r.force_exact_pn) {
                writeln!(out, "force exact:       {n:.10e} N = {pn:.10e} pN")?;
            }
            if let (Some(n), Some(pn)) = (r.force_pert_n, r.force_pert_pn) {
                writeln!(out, "force perturbative:{n:.10e} N = {pn:.10e} pN")?;
            }
            if let (Some(df), Some(dg)) = (r.delta_f, r.delta_force) {
                writeln!(out, "deltaF:            {:.6} %", df * 100.0)?;
                writeln!(out, "deltaForce:        {:.6} %", dg * 100.0)?;
            }
            if let Some(t) = r.terms_used {
                writeln!(out, "terms used:        {t}")?;
            }
        }
    }
    Ok(())
}

fn cmd_limits(args: LimitsArgs) -> Result<(), AnyError> {
    let alpha0: PolarizabilityValue = au_to_si_polarizability(args.alpha0_au)?;
    let a = Separation::new(args.a_nm * 1e-9)?;
    let t = Temperature::new(args.temperature_k)?;
    let mut out = std::io::stdout().lock();

    writeln!(
        out,
        "alpha(0) = {:.6e} m^3, a = {:.4e} m, T = {} K",
        alpha0.cubic_meters(),
        a.meters(),
        t.kelvin()
    )?;

    if !t.is_zero() {
        let classical = limits::classical_limit(alpha0, a, t)?;
        writeln!(out, "\nclassical limit (l = 0 only):")?;
        writeln!(
            out,
            "  F0        = {:.10e} J ({:.6e} eV)",
            classical.free_energy,
            classical.free_energy / ELECTRON_VOLT
        )?;
        writeln!(out, "  F0 pert   = {:.10e} J", classical.perturbative_free_energy)?;
        writeln!(out, "  force0    = {:.10e} N", classical.force)?;
        writeln!(out, "  force0 pert = {:.10e} N", classical.perturbative_force)?;

        let atom = PolarizabilityModel::static_alpha(alpha0);
        let series = limits::ideal_metal_free_energy(&atom, a, t, args.max_order)?;
        writeln!(out, "\nideal-metal plane (closed log form):")?;
        writeln!(
            out,
            "  F = {:.10e} J over {} Matsubara terms",
            series.free_energy, series.matsubara_terms
        )?;
        writeln!(out, "  power series to order {}:", series.truncation_order)?;
        for term in &series.terms {
            writeln!(out, "    n = {:2}: {:.10e} J", term.order, term.value)?;
        }

        let scenario = Scenario::with_floor(
            a,
            t,
            PermittivityModel::IdealMetal,
            PolarizabilityModel::static_alpha(alpha0),
            f64::MIN_POSITIVE,
        )?;
        writeln!(
            out,
            "\nfirst-Matsubara-term bound: {:.10e} J",
            limits::first_term_bound(&scenario)?
        )?;
    }

    let series = limits::zero_t_ideal_metal_energy(alpha0, a, args.max_order)?;
    writeln!(out, "\nzero-temperature ideal-metal energy:")?;
    writeln!(out, "  leading (a^-4) term = {:.10e} J", series.leading)?;
    writeln!(
        out,
        "  with corrections to order {} = {:.10e} J",
        series.truncation_order, series.energy
    )?;
    for term in &series.corrections {
        writeln!(out, "    k = {:2}: {:.10e} J", term.order, term.value)?;
    }
    Ok(())
}

fn cmd_self_check() -> Result<(), AnyError> {
    let outcomes = run_self_checks();
    let mut any_failed = false;
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:32} {}", o.name, o.detail);
        any_failed |= !o.passed;
    }
    if any_failed {
        return Err("self-check failed".into());
    }
    println!("all {} self-checks passed", outcomes.len());
    Ok(())
}
