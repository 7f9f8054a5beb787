use serde::Serialize;

use super::{
    linear_stark_shift, max_force, motional_excitation, vdw_shift, AtomSpec, SurfaceEnvironment,
};
use crate::electrostatics::field_on_axis;
use crate::error::{domain, Result};
use crate::resonator::{thermal_voltage, ModeSpec, QBudget};
use crate::units::{from_lab_units, Dimension, CODATA};

/// One line of a [`BudgetReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetItem {
    pub key: &'static str,
    /// Value in `unit`.
    pub value: f64,
    pub unit: &'static str,
    /// Formula the value was evaluated from.
    pub formula: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetReport {
    pub items: Vec<BudgetItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_budget: Option<QBudget>,
    /// Modelling choices a reader should know about when quoting the numbers.
    pub flags: Vec<String>,
}

impl BudgetReport {
    pub fn get(&self, key: &str) -> Option<&BudgetItem> {
        self.items.iter().find(|item| item.key == key)
    }

    pub fn value(&self, key: &str) -> Option<f64> {
        self.get(key).map(|item| item.value)
    }
}

/// Everything [`decoherence_budget`] needs. Rates and energies are rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetInputs {
    pub atom: AtomSpec,
    pub environment: SurfaceEnvironment,
    pub mode: ModeSpec,
    /// g/ħ
    pub coupling: f64,
    /// K
    pub temperature: f64,
    /// C_w, cm
    pub wire_capacitance: f64,
    /// Atomic decoherence rate γ (input, not computed).
    pub atomic_dephasing: f64,
    /// Orbital angular momentum used for ⟨r²⟩ in the image-dipole shift.
    pub vdw_ell: u32,
    /// Stark manifold index; `None` means k = N − 1.
    pub stark_k: Option<i64>,
    /// Untrapped excursion time; `None` means t = π/g.
    pub interaction_time: Option<f64>,
}

impl BudgetInputs {
    pub fn new(
        atom: AtomSpec,
        environment: SurfaceEnvironment,
        mode: ModeSpec,
        coupling: f64,
        temperature: f64,
        wire_capacitance: f64,
    ) -> Self {
        BudgetInputs {
            atom,
            environment,
            mode,
            coupling,
            temperature,
            wire_capacitance,
            atomic_dephasing: 2.0 * std::f64::consts::PI * 1e3,
            vdw_ell: 1,
            stark_k: None,
            interaction_time: None,
        }
    }
}

fn in_unit(value: f64, label: &'static str, dim: Dimension) -> f64 {
    let unit = from_lab_units(1.0, label).expect("registered label");
    debug_assert_eq!(unit.dimension, dim);
    value / unit.value
}

/// Aggregate the per-effect estimates into one itemized report.
pub fn decoherence_budget(inputs: &BudgetInputs) -> Result<BudgetReport> {
    let BudgetInputs {
        atom,
        environment: env,
        mode,
        ..
    } = *inputs;
    let g = inputs.coupling.abs();
    if !(g > 0.0) {
        return Err(domain("coupling must be non-zero"));
    }
    if inputs.atomic_dephasing < 0.0 {
        return Err(domain("atomic dephasing must be non-negative"));
    }
    let n = atom.principal_n;
    let h = env.atom_height;
    let kappa = mode.decay_rate;
    let gamma = inputs.atomic_dephasing;

    let vdw = vdw_shift(n, inputs.vdw_ell, h)?;
    let force = max_force(vdw, g, h);
    let t = inputs.interaction_time.unwrap_or(std::f64::consts::PI / g);
    let heating = motional_excitation(force, t, &atom)?;
    let k = inputs.stark_k.unwrap_or(n as i64 - 1);
    let stray_field = field_on_axis(
        CODATA.electron_charge,
        env.stray_island_radius,
        env.stray_island_distance,
    )?;
    let stark = linear_stark_shift(n, k, stray_field)?;
    let v_rms = thermal_voltage(inputs.temperature, inputs.wire_capacitance)?;
    let cooperativity = if kappa > 0.0 && gamma > 0.0 {
        g * g / (kappa * gamma)
    } else {
        f64::INFINITY
    };

    use Dimension::*;
    let item = |key, value, unit, dim, formula| BudgetItem {
        key,
        value: in_unit(value, unit, dim),
        unit,
        formula,
    };
    let items = vec![
        item(
            "g",
            g,
            "2pi*MHz",
            AngularFrequency,
            "g = d_z sqrt(2 hbar w / (pi^2 h^2 L))",
        ),
        item("kappa", kappa, "2pi*kHz", AngularFrequency, "kappa = w / Q"),
        item(
            "atomic_dephasing",
            gamma,
            "2pi*kHz",
            AngularFrequency,
            "input",
        ),
        item(
            "cooperativity",
            cooperativity,
            "1",
            Dimensionless,
            "g^2 / (kappa gamma)",
        ),
        item(
            "vdw_shift",
            vdw,
            "2pi*MHz",
            AngularFrequency,
            "dE = -<2 d_z^2 + d_rho^2>/16h^3, <2z^2+rho^2> = (4/3)<r^2>",
        ),
        item("max_force", force, "dyn", Force, "|F| = (3|dE| + |g|)/h"),
        item(
            "interaction_time",
            t,
            "us",
            Time,
            "t = pi hbar / g unless given",
        ),
        item(
            "motional_force_term",
            heating.force_term,
            "1",
            Dimensionless,
            "F^2 t^2 / (2 hbar M nu)",
        ),
        item(
            "motional_trap_term",
            heating.trap_term,
            "1",
            Dimensionless,
            "nu^2 t^2 / 8",
        ),
        item(
            "motional_excitation",
            heating.total,
            "1",
            Dimensionless,
            "P = F^2 t^2 / (2 hbar M nu) + nu^2 t^2 / 8",
        ),
        item(
            "stray_field",
            stray_field,
            "V/cm",
            ElectricField,
            "E = e / (R^2 + z^2)",
        ),
        item(
            "stark_shift",
            stark,
            "2pi*MHz",
            AngularFrequency,
            "(3/2) N k e a0 E",
        ),
        item(
            "thermal_voltage",
            v_rms,
            "uV",
            Voltage,
            "V_rms = sqrt(k_B T / C_w)",
        ),
        item(
            "patch_shift",
            env.patch_shift,
            "2pi*MHz",
            AngularFrequency,
            "input",
        ),
    ];

    let mut flags = vec![
        "force uses the magnitude (3|dE| + |g|)/h of the signed bound".to_string(),
        "image-dipole shift uses an isotropic <r^2> estimate".to_string(),
        format!("stark shift evaluated for k = {k}"),
    ];
    if kappa == 0.0 || gamma == 0.0 {
        flags.push("cooperativity is unbounded: a loss rate is zero".to_string());
    }

    Ok(BudgetReport {
        items,
        q_budget: None,
        flags,
    })
}
