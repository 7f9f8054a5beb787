//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use rydline::dynamics::{
    build_hamiltonian, evolve_lindblad, evolve_unitary, excitation_number, two_atom_transfer,
    AtomChannel, Level, QuantumState, SystemModel, Tolerances,
};
use rydline::electrostatics::{coupling_coefficient_full, coupling_coefficient_simple, Geometry};
use rydline::resonator::{
    cavity_decay, coupling_from_mode_volume, coupling_g, coupling_g_dimensionless, mode_frequency,
    mode_volume, q_budget,
};
use rydline::rydberg::{dipole_matrix_element, transition_frequency, vdw_shift};
use rydline::units::CODATA;
use rydline_cli::config::LoadedConfig;
use rydline_cli::{cmd_sweep, report, setup, Common};

const TWO_PI: f64 = 2.0 * PI;
const MHZ: f64 = TWO_PI * 1e6;
const UM: f64 = 1e-4;

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn within(name: &str, value: f64, lo: f64, hi: f64) -> Check {
    let line = format!("{name} = {value:.6} in [{lo}, {hi}]");
    if (lo..=hi).contains(&value) {
        Ok(line)
    } else {
        Err(line)
    }
}

fn at_most(name: &str, value: f64, limit: f64) -> Check {
    let line = format!("{name} = {value:.3e} <= {limit:.1e}");
    if value <= limit {
        Ok(line)
    } else {
        Err(line)
    }
}

fn all(checks: Vec<Check>) -> Check {
    let mut ok = true;
    let mut lines = Vec::new();
    for c in checks {
        ok &= c.is_ok();
        lines.push(c.unwrap_or_else(|e| format!("{e} [failed]")));
    }
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn grid(t_end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
}

fn coupling_constant() -> Check {
    let d = dipole_matrix_element(50).map_err(|e| e.to_string())?;
    let g = coupling_g(d, TWO_PI * 50e9, 10.0 * UM, 0.3) / MHZ;
    all(vec![
        within("g/2pi [MHz]", g, 2.4, 3.3),
        within("oracle window [MHz]", g, 2.7, 2.9),
    ])
}

fn three_form_identity() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(20..=100u32);
        let index = rng.random_range(1..=5u32);
        let velocity = CODATA.speed_of_light * rng.random_range(0.3..=1.0);
        let h = rng.random_range(1.0..100.0) * UM;
        let l = rng.random_range(0.1..10.0);
        let omega = mode_frequency(index, velocity, l).map_err(|e| e.to_string())?;
        let d = dipole_matrix_element(n).map_err(|e| e.to_string())?;
        let g = coupling_g(d, omega, h, l);
        let alpha = coupling_g_dimensionless(n, index, velocity, h, omega);
        let volume = coupling_from_mode_volume(d, omega, mode_volume(h, l));
        worst = worst.max(rel(alpha, g)).max(rel(volume, g));
    }
    at_most("max relative deviation over 50 sets", worst, 1e-12)
}

fn mode_frequency_exact() -> Check {
    let nu = mode_frequency(1, CODATA.speed_of_light, 0.3).map_err(|e| e.to_string())? / TWO_PI;
    let line = format!(
        "nu_1 = {:.9} GHz, relative offset from 50 GHz {:.3e} (limit 1e-12)",
        nu / 1e9,
        rel(nu, 50e9)
    );
    if rel(nu, 50e9) <= 1e-12 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn kappa_at_q() -> Check {
    let kappa = cavity_decay(TWO_PI * 50e9, 1e6).map_err(|e| e.to_string())? / TWO_PI;
    let line = format!("kappa/2pi = {:.9} kHz", kappa / 1e3);
    if rel(kappa, 50e3) <= 1e-12 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn transition_window() -> Check {
    let nu = transition_frequency(50).map_err(|e| e.to_string())? / TWO_PI / 1e9;
    within("nu(50) [GHz]", nu, 50.0, 58.0)
}

fn electrostatic_limit() -> Check {
    let h = 10.0 * UM;
    let mut worst_margin: f64 = 0.0;
    for i in 0..=40 {
        let ratio = 50.0 * (1e4f64 / 50.0).powf(i as f64 / 40.0);
        let l = ratio * h;
        let geom = Geometry::new(h, h, l, 1.0, l / 100.0).map_err(|e| e.to_string())?;
        let dev = rel(
            coupling_coefficient_full(&geom),
            coupling_coefficient_simple(h, l),
        );
        worst_margin = worst_margin.max(dev / (8.0 * h / (PI * l) * 1.1));
    }
    at_most(
        "max deviation / (1.1 * 8h/(pi L)) over L/h in [50, 1e4]",
        worst_margin,
        1.0,
    )
}

fn van_der_waals() -> Check {
    let shift = vdw_shift(50, 1, 10.0 * UM).map_err(|e| e.to_string())? / MHZ;
    within("dE/2pi [MHz]", shift, -2.6, -0.65)
}

fn default_budget() -> Result<rydline::rydberg::BudgetReport, String> {
    let s = setup::resolve(&LoadedConfig::defaults()).map_err(|e| e.to_string())?;
    report::budget(&s).map_err(|e| e.to_string())
}

fn heating() -> Check {
    let budget = default_budget()?;
    let p = budget
        .value("motional_excitation")
        .ok_or("no motional_excitation entry")?;
    within("P", p, 5e-4, 2e-3)
}

fn stark() -> Check {
    let budget = default_budget()?;
    let shift = budget.value("stark_shift").ok_or("no stark_shift entry")?;
    within("stark/2pi [MHz]", shift, 300.0, 380.0)
}

fn q_figures() -> Check {
    let q = q_budget(&Geometry::flagship(), 0.1 * CODATA.ohm(), &[]).map_err(|e| e.to_string())?;
    all(vec![
        at_most("|(L/H)^4 / 1e8 - 1|", rel(q.q_radiative, 1e8), 1e-12),
        at_most(
            "|Q_contact(0.1 Ohm) / 1e7 - 1|",
            rel(q.q_contact, 1e7),
            1e-12,
        ),
        at_most("|Q_total / 8.3e6 - 1|", rel(q.q_total, 8.3e6), 1e-2),
    ])
}

fn dynamics_oracles() -> Check {
    let g = TWO_PI * 2.8e6;
    let err = |e: rydline::Error| e.to_string();

    let model = SystemModel::resonant(1, g).map_err(err)?;
    let h = build_hamiltonian(&model).map_err(err)?;
    let times = grid(TWO_PI / g, 401);
    let start = QuantumState::basis(&[Level::Upper], 0, 8).map_err(err)?;
    let traj = evolve_unitary(&h, &start, &times).map_err(err)?;
    let rabi = traj
        .populations(&[Level::Lower], 1)
        .iter()
        .zip(&times)
        .map(|(p, t)| (p - (g * t).sin().powi(2)).abs())
        .fold(0.0, f64::max);

    let pair = SystemModel::resonant(2, g).map_err(err)?;
    let transfer = two_atom_transfer(&pair, Tolerances::default()).map_err(err)?;
    let expected = PI / (2f64.sqrt() * g);

    let kappa = TWO_PI * 50e3;
    let cavity = SystemModel::new(vec![AtomChannel::resonant(0.0)], 8, kappa).map_err(err)?;
    let photon = QuantumState::basis(&[Level::Lower], 1, 8).map_err(err)?;
    let decay_times = grid(5.0 / kappa, 201);
    let decay =
        evolve_lindblad(&cavity, &photon, &decay_times, Tolerances::default()).map_err(err)?;
    let decay_err = decay
        .states
        .iter()
        .zip(&decay_times)
        .map(|(s, t)| (s.photon_number() - (-kappa * t).exp()).abs())
        .fold(0.0, f64::max);

    all(vec![
        at_most("vacuum Rabi max error", rabi, 1e-6),
        at_most(
            "exchange time relative error",
            rel(transfer.time, expected),
            1e-6,
        ),
        at_most("exchange infidelity", 1.0 - transfer.fidelity, 1e-8),
        at_most("cavity decay max error", decay_err, 1e-6),
    ])
}

fn open_system_properties() -> Check {
    let g = TWO_PI * 2.8e6;
    let (kappa, gamma) = (TWO_PI * 50e3, TWO_PI * 1e3);
    let err = |e: rydline::Error| e.to_string();
    let tol = Tolerances::default();
    let times = grid(100.0 * TWO_PI / g, 401);

    let (mut drift, mut min_eig, mut herm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (atoms, levels) in [
        (1, vec![Level::Upper]),
        (2, vec![Level::Upper, Level::Lower]),
    ] {
        let model = SystemModel::resonant(atoms, g)
            .map_err(err)?
            .with_kappa(kappa)
            .with_atom_rates(gamma, gamma);
        let start = QuantumState::basis(&levels, 0, 8).map_err(err)?;
        for s in evolve_lindblad(&model, &start, &times, tol)
            .map_err(err)?
            .states
        {
            drift = drift
                .max((s.trace().re - 1.0).abs())
                .max(s.trace().im.abs());
            min_eig = min_eig.min(s.min_eigenvalue());
            herm = herm.max(s.hermiticity_defect());
        }
    }

    let lossless = SystemModel::resonant(2, g).map_err(err)?;
    let n_exc = excitation_number(2, 8);
    let start = QuantumState::basis(&[Level::Upper, Level::Upper], 1, 8).map_err(err)?;
    let traj =
        evolve_unitary(&build_hamiltonian(&lossless).map_err(err)?, &start, &times).map_err(err)?;
    let conservation = traj
        .states
        .iter()
        .map(|s| (s.expectation(&n_exc).re - 3.0).abs())
        .fold(0.0, f64::max);

    let short = grid(4.0 * PI / g, 41);
    let mut truncation: f64 = 0.0;
    for (atoms, levels) in [
        (1, vec![Level::Upper]),
        (2, vec![Level::Upper, Level::Lower]),
    ] {
        let run = |n_max: usize| -> Result<Vec<(String, Vec<f64>)>, String> {
            let model = SystemModel::resonant(atoms, g)
                .map_err(err)?
                .with_kappa(kappa)
                .with_atom_rates(gamma, gamma)
                .with_fock_cutoff(n_max);
            let start = QuantumState::basis(&levels, 0, n_max).map_err(err)?;
            let traj = evolve_lindblad(&model, &start, &short, tol).map_err(err)?;
            Ok(traj.time_series().map_err(err)?.observables)
        };
        for ((_, a), (_, b)) in run(8)?.iter().zip(&run(10)?) {
            truncation = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(truncation, f64::max);
        }
    }

    all(vec![
        at_most("trace drift", drift, 1e-8),
        at_most("-min eigenvalue", -min_eig, 1e-8),
        at_most("hermiticity defect", herm, 1e-10),
        at_most("excitation drift (unitary)", conservation, 1e-10),
        at_most("n_max 8 vs 10", truncation, 1e-6),
    ])
}

fn determinism() -> Check {
    let common = Common::default();
    let values: Vec<String> = ["1 mm", "3 mm", "10 mm", "30 mm"]
        .map(String::from)
        .to_vec();
    let run =
        || cmd_sweep(&common, "geometry.wire_length", &values, None).map_err(|e| e.to_string());
    let first = run()?.bytes;
    for _ in 0..4 {
        if run()?.bytes != first {
            return Err("sweep output differs between runs".into());
        }
    }
    Ok(format!("5 runs, {} identical bytes each", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("1", "coupling constant", coupling_constant),
        ("2", "three-form identity", three_form_identity),
        ("3a", "mode frequency 50 GHz", mode_frequency_exact),
        ("3b", "kappa at Q = 1e6", kappa_at_q),
        ("3c", "hydrogenic transition", transition_window),
        ("4", "electrostatic limit", electrostatic_limit),
        ("5", "van der Waals shift", van_der_waals),
        ("6", "heating probability", heating),
        ("7", "stray-electron Stark shift", stark),
        ("8", "Q budget", q_figures),
        ("9", "dynamics oracles", dynamics_oracles),
        ("10", "open-system properties", open_system_properties),
        ("11", "sweep determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {id:>3} {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {id:>3} {name}: {detail}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {} of {} criteria fail: {}",
            failed.len(),
            criteria.len(),
            failed.join(", ")
        );
        ExitCode::FAILURE
    }
}
