//! Turn a [`RunConfig`] into the physical inputs of the core library.

use std::f64::consts::PI;

use rydline::dynamics::{AtomChannel, SystemModel, Tolerances};
use rydline::electrostatics::Geometry;
use rydline::resonator::{atom_mode_coupling, q_budget, ModeSpec, QBudget, QContribution};
use rydline::rydberg::{transition_frequency, AtomSpec, BudgetInputs, SurfaceEnvironment};
use rydline::units::{parse_quantity, Dimension, CODATA};

use crate::config::{LoadedConfig, Scenario};
use crate::error::CliError;

/// Everything the subcommands need, in internal units.
#[derive(Debug, Clone)]
pub struct Setup {
    pub geometry: Geometry,
    pub atom: AtomSpec,
    pub environment: SurfaceEnvironment,
    pub mode: ModeSpec,
    pub q_budget: QBudget,
    /// g/ħ, rad/s.
    pub coupling: f64,
    pub temperature: f64,
    pub atomic_dephasing: f64,
    pub gamma_decay: f64,
    pub gamma_phi: f64,
    pub stark_k: Option<i64>,
    pub vdw_ell: u32,
    pub interaction_time: Option<f64>,
    pub simulation: SimulationSetup,
    /// Validity warnings for the diagnostic stream.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SimulationSetup {
    pub scenario: Scenario,
    pub times: Vec<f64>,
    pub fock_cutoff: usize,
    pub detuning: f64,
    pub tolerances: Tolerances,
    pub lossless: bool,
}

struct Reader<'a> {
    loaded: &'a LoadedConfig,
}

impl Reader<'_> {
    fn quantity(&self, field: &str, text: &str, dimension: Dimension) -> Result<f64, CliError> {
        let q = parse_quantity(text).map_err(|e| self.loaded.diagnostic(field, e))?;
        q.value_in(dimension)
            .map_err(|e| self.loaded.diagnostic(field, e))
    }

    /// Accepts ν (Hz, kHz, ...) or ω (`2pi*` labels, rad/s) and returns ω.
    fn angular(&self, field: &str, text: &str) -> Result<f64, CliError> {
        let q = parse_quantity(text).map_err(|e| self.loaded.diagnostic(field, e))?;
        let q = match q.dimension {
            Dimension::OrdinaryFrequency => q.to_angular(),
            _ => Ok(q),
        };
        q.and_then(|q| q.value_in(Dimension::AngularFrequency))
            .map_err(|e| self.loaded.diagnostic(field, e))
    }

    fn check<T>(&self, field: &str, r: rydline::Result<T>) -> Result<T, CliError> {
        r.map_err(|e| self.loaded.diagnostic(field, e))
    }
}

pub fn resolve(loaded: &LoadedConfig) -> Result<Setup, CliError> {
    let c = &loaded.config;
    let r = Reader { loaded };
    let g = &c.geometry;
    let geometry = r.check(
        "geometry",
        Geometry::new(
            r.quantity("geometry.disc_radius", &g.disc_radius, Dimension::Length)?,
            r.quantity("geometry.atom_height", &g.atom_height, Dimension::Length)?,
            r.quantity("geometry.wire_length", &g.wire_length, Dimension::Length)?,
            g.log_coax_ratio,
            r.quantity(
                "geometry.pillar_height",
                &g.pillar_height,
                Dimension::Length,
            )?,
        ),
    )?;

    let a = &c.atom;
    let atom = r.check(
        "atom",
        AtomSpec::new(
            a.principal_n,
            r.quantity("atom.species_mass", &a.species_mass, Dimension::Mass)?,
            r.angular("atom.trap_frequency", &a.trap_frequency)?,
        ),
    )?;

    let res = &c.resonator;
    if !(res.velocity_ratio > 0.0 && res.velocity_ratio.is_finite()) {
        return Err(loaded.diagnostic("resonator.velocity_ratio", "must be positive"));
    }
    let velocity = res.velocity_ratio * CODATA.speed_of_light;
    let contact = r.quantity(
        "resonator.contact_resistance",
        &res.contact_resistance,
        Dimension::Resistance,
    )?;
    let caps: Vec<QContribution> = res
        .external_caps
        .iter()
        .map(|cap| QContribution {
            label: cap.label.clone(),
            q: cap.q,
        })
        .collect();
    let budget = r.check("resonator", q_budget(&geometry, contact, &caps))?;
    let q_factor = if res.use_q_budget {
        budget.q_total
    } else {
        res.q_factor
    };
    let mode = match res.frequency.trim() {
        "mode" => r.check(
            "resonator",
            ModeSpec::new(res.mode_index, &geometry, velocity, q_factor),
        )?,
        other => {
            let omega = if other == "atom" {
                r.check("atom.principal_n", transition_frequency(a.principal_n))?
            } else {
                r.angular("resonator.frequency", other)?
            };
            r.check(
                "resonator",
                ModeSpec::at_frequency(res.mode_index, &geometry, velocity, q_factor, omega),
            )?
        }
    };
    let coupling = r.check(
        "atom.principal_n",
        atom_mode_coupling(a.principal_n, &mode, &geometry),
    )?;

    let e = &c.environment;
    let mut environment = r.check(
        "geometry.atom_height",
        SurfaceEnvironment::new(geometry.atom_height),
    )?;
    environment.patch_shift = r.angular("environment.patch_shift", &e.patch_shift)?;
    environment.stray_island_radius = r.quantity(
        "environment.stray_island_radius",
        &e.stray_island_radius,
        Dimension::Length,
    )?;
    environment.stray_island_distance = r.quantity(
        "environment.stray_island_distance",
        &e.stray_island_distance,
        Dimension::Length,
    )?;
    let interaction_time = e
        .interaction_time
        .as_deref()
        .map(|t| r.quantity("environment.interaction_time", t, Dimension::Time))
        .transpose()?;
    let temperature = r.quantity(
        "environment.temperature",
        &e.temperature,
        Dimension::Temperature,
    )?;
    let atomic_dephasing = r.angular("environment.atomic_dephasing", &e.atomic_dephasing)?;
    let gamma_decay = r.angular("environment.gamma_decay", &e.gamma_decay)?;
    let gamma_phi = r.angular("environment.gamma_phi", &e.gamma_phi)?;

    let s = &c.simulation;
    let times = match &s.times {
        Some(list) => list
            .iter()
            .map(|t| r.quantity("simulation.times", t, Dimension::Time))
            .collect::<Result<Vec<_>, _>>()?,
        None => {
            let t_end = match &s.t_end {
                Some(t) => r.quantity("simulation.t_end", t, Dimension::Time)?,
                None => default_t_end(s.scenario, coupling),
            };
            if s.samples == 1 {
                vec![0.0]
            } else {
                (0..s.samples)
                    .map(|i| t_end * i as f64 / (s.samples - 1) as f64)
                    .collect()
            }
        }
    };
    let simulation = SimulationSetup {
        scenario: s.scenario,
        times,
        fock_cutoff: s.fock_cutoff,
        detuning: r.angular("simulation.detuning", &s.detuning)?,
        tolerances: Tolerances {
            rtol: s.rtol,
            atol: s.atol,
        },
        lossless: s.lossless,
    };
    if !(s.rtol > 0.0 && s.atol > 0.0) {
        return Err(loaded.diagnostic("simulation.rtol", "tolerances must be positive"));
    }

    let mut warnings = Vec::new();
    let nominal = mode.index as f64 * PI * velocity / geometry.wire_length;
    if (mode.frequency / nominal - 1.0).abs() > 1e-9 {
        warnings.push(format!(
            "mode held at {:.6} GHz but n*pi*v/L = {:.6} GHz: the alpha form of g assumes they agree",
            mode.frequency / (2.0 * PI * 1e9),
            nominal / (2.0 * PI * 1e9)
        ));
    }
    if geometry.short_wire_warning() {
        warnings.push(format!(
            "L/R = {:.3} is not >> 1: long-wire capacitance and mode formulas are unreliable",
            geometry.wire_length / geometry.disc_radius
        ));
    }
    if coupling / mode.frequency > rydline::dynamics::RWA_LIMIT {
        warnings.push(format!(
            "g/omega = {:.3e} exceeds {}: rotating-wave approximation is questionable",
            coupling / mode.frequency,
            rydline::dynamics::RWA_LIMIT
        ));
    }

    Ok(Setup {
        geometry,
        atom,
        environment,
        mode,
        q_budget: budget,
        coupling,
        temperature,
        atomic_dephasing,
        gamma_decay,
        gamma_phi,
        stark_k: e.stark_k,
        vdw_ell: e.vdw_ell,
        interaction_time,
        simulation,
        warnings,
    })
}

fn default_t_end(scenario: Scenario, g: f64) -> f64 {
    match scenario {
        Scenario::VacuumRabi => 2.0 * PI / g,
        Scenario::StateTransfer => PI / g,
        Scenario::TwoAtomExchange => 2f64.sqrt() * PI / g,
    }
}

impl Setup {
    pub fn budget_inputs(&self) -> BudgetInputs {
        let mut inputs = BudgetInputs::new(
            self.atom,
            self.environment,
            self.mode,
            self.coupling,
            self.temperature,
            self.geometry.wire_capacitance(),
        );
        inputs.atomic_dephasing = self.atomic_dephasing;
        inputs.vdw_ell = self.vdw_ell;
        inputs.stark_k = self.stark_k;
        inputs.interaction_time = self.interaction_time;
        inputs
    }

    /// Jaynes–Cummings model for `atoms` identical atoms at the configured
    /// detuning and loss rates.
    pub fn system_model(&self, atoms: usize) -> Result<SystemModel, CliError> {
        let sim = &self.simulation;
        let (kappa, decay, phi) = if sim.lossless {
            (0.0, 0.0, 0.0)
        } else {
            (self.mode.decay_rate, self.gamma_decay, self.gamma_phi)
        };
        let channel = AtomChannel {
            coupling: self.coupling,
            detuning: sim.detuning,
            gamma_decay: decay,
            gamma_phi: phi,
        };
        Ok(
            SystemModel::new(vec![channel; atoms], sim.fock_cutoff, kappa)?
                .with_mode_frequency(self.mode.frequency),
        )
    }
}
