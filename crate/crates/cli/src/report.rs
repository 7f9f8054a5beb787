//! Single-point reports: the `estimate` table and the decoherence budget.

use serde::Serialize;

use rydline::electrostatics::{
    coupling_coefficient_full, coupling_coefficient_simple, free_space_coupling,
};
use rydline::resonator::{
    coupling_from_mode_volume, coupling_from_zero_point_charge, coupling_g,
    coupling_g_dimensionless, mode_volume,
};
use rydline::rydberg::{
    decoherence_budget, dipole_matrix_element, transition_frequency, BudgetReport,
};
use rydline::units::{from_lab_units, CODATA};

use crate::error::CliError;
use crate::setup::Setup;

/// One reported number with its unit label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: f64,
    pub unit: String,
}

impl Entry {
    /// `value` is internal (CGS / rad/s); it is converted to `unit`.
    fn lab(key: &str, value: f64, unit: &str) -> Entry {
        let scale = from_lab_units(1.0, unit).expect("registered unit").value;
        Entry {
            key: key.to_string(),
            value: value / scale,
            unit: unit.to_string(),
        }
    }

    fn plain(key: &str, value: f64) -> Entry {
        Entry {
            key: key.to_string(),
            value,
            unit: "1".to_string(),
        }
    }

    pub fn column(&self) -> String {
        format!("{}[{}]", self.key, self.unit)
    }
}

/// The `estimate` table.
pub fn estimate(setup: &Setup) -> Result<Vec<Entry>, CliError> {
    let geom = &setup.geometry;
    let mode = &setup.mode;
    let n = setup.atom.principal_n;
    let (h, l) = (geom.atom_height, geom.wire_length);
    let omega = mode.frequency;
    let d = dipole_matrix_element(n)?;

    let g = coupling_g(d, omega, h, l);
    let g_alpha = coupling_g_dimensionless(n, mode.index, mode.phase_velocity, h, omega);
    let volume = mode_volume(h, l);
    let g_volume = coupling_from_mode_volume(d, omega, volume);
    let g_zero_point = coupling_from_zero_point_charge(d, mode, geom);
    let spread = [g_alpha, g_volume]
        .iter()
        .map(|x| ((x - g) / g).abs())
        .fold(0.0, f64::max);

    let j_full = coupling_coefficient_full(geom);
    let j_simple = coupling_coefficient_simple(h, l);
    let j_free = free_space_coupling(l);
    let h_int = |j: f64| j * d * d;
    let transition = transition_frequency(n)?;

    Ok(vec![
        Entry::lab("disc_capacitance", geom.disc_capacitance(), "fF"),
        Entry::lab("wire_capacitance", geom.wire_capacitance(), "fF"),
        Entry::plain("length_to_radius", l / geom.disc_radius),
        Entry::lab("mode_frequency", omega, "2pi*GHz"),
        Entry::plain(
            "mode_length_consistency",
            omega * l / (mode.index as f64 * std::f64::consts::PI * mode.phase_velocity),
        ),
        Entry::lab("transition_frequency", transition, "2pi*GHz"),
        Entry::lab("atom_mode_detuning", transition - omega, "2pi*GHz"),
        Entry::lab("dipole", d, "e*a0"),
        Entry::lab("g", g, "2pi*MHz"),
        Entry::lab("g_alpha_form", g_alpha, "2pi*MHz"),
        Entry::lab("g_mode_volume", g_volume, "2pi*MHz"),
        Entry::lab("g_zero_point_charge", g_zero_point, "2pi*MHz"),
        Entry::plain("g_forms_max_rel_dev", spread),
        Entry::lab("mode_volume", volume, "mm^3"),
        Entry::lab("zero_point_charge", mode.zero_point_charge, "e"),
        Entry::plain("q_factor", omega / mode.decay_rate),
        Entry::lab("kappa", mode.decay_rate, "2pi*kHz"),
        Entry::lab("h_int_full", h_int(j_full), "h*Hz"),
        Entry::lab("h_int_simple", h_int(j_simple), "h*Hz"),
        Entry::lab("h_int_free_space", h_int(j_free), "h*Hz"),
        Entry::plain("j_full_over_simple", j_full / j_simple),
        Entry::plain("j_simple_over_free_space", j_simple / j_free),
        Entry::plain("rwa_ratio", g / omega),
    ])
}

/// The decoherence budget with the Q breakdown attached.
pub fn budget(setup: &Setup) -> Result<BudgetReport, CliError> {
    let mut report = decoherence_budget(&setup.budget_inputs())?;
    report.q_budget = Some(setup.q_budget.clone());
    Ok(report)
}

/// Budget items plus the Q breakdown as flat entries.
pub fn budget_entries(report: &BudgetReport) -> Vec<Entry> {
    let mut entries: Vec<Entry> = report
        .items
        .iter()
        .map(|item| Entry {
            key: item.key.to_string(),
            value: item.value,
            unit: item.unit.to_string(),
        })
        .collect();
    if let Some(q) = &report.q_budget {
        entries.push(Entry::plain("q_radiative", q.q_radiative));
        entries.push(Entry::plain("q_contact", q.q_contact));
        entries.push(Entry::plain("q_endcap", q.q_endcap));
        for cap in &q.external_caps {
            entries.push(Entry::plain(&format!("q_{}", cap.label), cap.q));
        }
        entries.push(Entry::plain("q_total", q.q_total));
    }
    entries
}

/// The constant table printed by `--constants`.
pub fn constants() -> Vec<Entry> {
    CODATA
        .table()
        .into_iter()
        .map(|(key, value, unit)| Entry {
            key: key.to_string(),
            value,
            unit: unit.to_string(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::LoadedConfig;
    use crate::setup::resolve;

    fn value(entries: &[Entry], key: &str) -> f64 {
        entries.iter().find(|e| e.key == key).unwrap().value
    }

    #[test]
    fn default_estimate() {
        let setup = resolve(&LoadedConfig::defaults()).unwrap();
        let e = estimate(&setup).unwrap();
        assert!((value(&e, "g") - 2.76).abs() < 0.01);
        assert!((value(&e, "kappa") - 49.965).abs() < 0.001);
        assert!(value(&e, "g_forms_max_rel_dev") < 1e-12);
        assert!((value(&e, "disc_capacitance") - 0.7083).abs() < 1e-3);
        assert!((value(&e, "mode_length_consistency") - 1.0).abs() < 1e-15);
        assert!((value(&e, "h_int_simple") - 152.452_193_979_7).abs() < 1e-6);
        let ratio = value(&e, "j_full_over_simple");
        assert!((ratio - 1.0 / (1.0 + 8.0 / (300.0 * std::f64::consts::PI))).abs() < 1e-3);
    }

    #[test]
    fn default_budget() {
        let setup = resolve(&LoadedConfig::defaults()).unwrap();
        let entries = budget_entries(&budget(&setup).unwrap());
        let p = value(&entries, "motional_excitation");
        assert!((5e-4..=2e-3).contains(&p));
        let stark = value(&entries, "stark_shift");
        assert!((stark - 338.56).abs() < 0.01);
        assert!((value(&entries, "q_total") / 8.333_333e6 - 1.0).abs() < 1e-6);
    }
}
