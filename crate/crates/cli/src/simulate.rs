//! Time-domain scenarios.

use std::f64::consts::PI;

use serde_json::{Map, Value};

use rydline::dynamics::{
    evolve_model, state_transfer_fidelity, two_atom_transfer, Level, QuantumState,
};

use crate::config::Scenario;
use crate::error::CliError;
use crate::output::Table;
use crate::setup::Setup;

const TWO_PI: f64 = 2.0 * PI;

fn metadata(setup: &Setup, kappa: f64, decay: f64, phi: f64) -> Map<String, Value> {
    let sim = &setup.simulation;
    let mut m = Map::new();
    m.insert("scenario".into(), sim.scenario.name().into());
    m.insert("g[2pi*MHz]".into(), (setup.coupling / TWO_PI / 1e6).into());
    m.insert("kappa[2pi*kHz]".into(), (kappa / TWO_PI / 1e3).into());
    m.insert("gamma_decay[2pi*kHz]".into(), (decay / TWO_PI / 1e3).into());
    m.insert("gamma_phi[2pi*kHz]".into(), (phi / TWO_PI / 1e3).into());
    m.insert(
        "detuning[2pi*MHz]".into(),
        (sim.detuning / TWO_PI / 1e6).into(),
    );
    m.insert("fock_cutoff".into(), sim.fock_cutoff.into());
    m.insert("rtol".into(), sim.tolerances.rtol.into());
    m.insert("atol".into(), sim.tolerances.atol.into());
    m
}

/// Run the configured scenario. Columns are `time[us]` followed by the
/// observables; scenario parameters and figures of merit go in `metadata`.
pub fn simulate(setup: &Setup) -> Result<Table, CliError> {
    let sim = &setup.simulation;
    let atoms = match sim.scenario {
        Scenario::VacuumRabi | Scenario::StateTransfer => 1,
        Scenario::TwoAtomExchange => 2,
    };
    let model = setup.system_model(atoms)?;
    let mut meta = metadata(
        setup,
        model.kappa,
        model.atoms[0].gamma_decay,
        model.atoms[0].gamma_phi,
    );
    let tol = sim.tolerances;
    let g = setup.coupling;

    let (start, target, target_photons, target_name) = match atoms {
        1 => (vec![Level::Upper], vec![Level::Lower], 1, "F_transfer[1]"),
        _ => (
            vec![Level::Upper, Level::Lower],
            vec![Level::Lower, Level::Upper],
            0,
            "F_exchange[1]",
        ),
    };
    let initial = QuantumState::basis(&start, 0, sim.fock_cutoff)?;
    let trajectory = evolve_model(&model, &initial, &sim.times, tol)?;
    let series = trajectory.time_series()?;

    match sim.scenario {
        Scenario::VacuumRabi => {}
        Scenario::StateTransfer => {
            let t = PI / (2.0 * g);
            meta.insert("t_pi_half[us]".into(), (t * 1e6).into());
            meta.insert(
                "fidelity_at_t_pi_half[1]".into(),
                state_transfer_fidelity(&model, t, tol)?.into(),
            );
        }
        Scenario::TwoAtomExchange => {
            if sim.detuning == 0.0 {
                let transfer = two_atom_transfer(&model, tol)?;
                meta.insert("t_transfer[us]".into(), (transfer.time * 1e6).into());
                meta.insert("fidelity_transfer[1]".into(), transfer.fidelity.into());
            }
        }
    }

    let mut columns = vec!["time[us]".to_string()];
    let mut data: Vec<Vec<f64>> = vec![sim.times.iter().map(|t| t * 1e6).collect()];
    let names: &[&str] = match atoms {
        1 => &["P_r2_A", "n_photon"],
        _ => &["P_r2_A", "P_r2_B", "n_photon", "concurrence"],
    };
    for name in names {
        columns.push(format!("{name}[1]"));
        data.push(series.get(name).map(<[f64]>::to_vec).unwrap_or_default());
    }
    columns.push(target_name.to_string());
    data.push(trajectory.populations(&target, target_photons));

    let mut table = Table::new(columns);
    table.metadata = meta;
    table.rows = (0..sim.times.len())
        .map(|i| data.iter().map(|c| c[i]).collect())
        .collect();
    Ok(table)
}
