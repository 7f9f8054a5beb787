use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::concurrence::concurrence_of;
use super::integrator::DormandPrince;
use super::operators::{
    annihilation, build_hamiltonian, sigma_minus, sigma_z, CMatrix, SparseOperator,
};
use super::state::{Level, QuantumState};
use super::{SystemModel, TRUNCATION_LIMIT};
use crate::error::{Error, Result};

/// Integrator tolerances for [`evolve_lindblad`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rtol: 1e-9,
            atol: 1e-12,
        }
    }
}

/// States sampled at the requested times (seconds).
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
}

/// Named real observables on a shared time axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    /// s
    pub times: Vec<f64>,
    pub observables: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.observables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.observables.push((name.into(), values));
    }
}

impl Trajectory {
    pub fn last(&self) -> Option<&QuantumState> {
        self.states.last()
    }

    /// Upper-level populations of each atom (`P_r2_A`, `P_r2_B`), the photon
    /// number `n_photon`, and for two atoms the `concurrence` of the atomic
    /// reduced state.
    pub fn time_series(&self) -> Result<TimeSeries> {
        let mut series = TimeSeries {
            times: self.times.clone(),
            observables: Vec::new(),
        };
        let Some(first) = self.states.first() else {
            return Ok(series);
        };
        for atom in 0..first.atom_count() {
            let name = format!("P_r2_{}", ["A", "B"][atom]);
            series.push(
                name,
                self.states
                    .iter()
                    .map(|s| s.upper_population(atom))
                    .collect(),
            );
        }
        series.push(
            "n_photon",
            self.states
                .iter()
                .map(QuantumState::photon_number)
                .collect(),
        );
        if first.atom_count() == 2 {
            let c = self
                .states
                .iter()
                .map(|s| concurrence_of(&s.reduced_atoms()))
                .collect::<Result<Vec<_>>>()?;
            series.push("concurrence", c);
        }
        Ok(series)
    }

    pub fn populations(&self, levels: &[Level], photons: usize) -> Vec<f64> {
        self.states
            .iter()
            .map(|s| s.population(levels, photons))
            .collect()
    }
}

fn check_state(model: &SystemModel, state: &QuantumState) -> Result<()> {
    if state.dim() != model.dim()
        || state.atom_count() != model.atom_count()
        || state.fock_cutoff() != model.fock_cutoff
    {
        return Err(Error::ShapeMismatch {
            operator: model.dim(),
            state: state.dim(),
        });
    }
    Ok(())
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(crate::error::domain("sample times must be finite and >= 0"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(crate::error::domain("sample times must be non-decreasing"));
    }
    Ok(())
}

fn check_truncation(state: &QuantumState) -> Result<()> {
    let top = state.top_fock_population();
    if top > TRUNCATION_LIMIT {
        return Err(Error::Truncation {
            population: top,
            fock_cutoff: state.fock_cutoff(),
        });
    }
    Ok(())
}

/// Coherent evolution ρ(t) = U ρ U†, U = exp(−iHt), through the eigenbasis of
/// `hamiltonian` (H/ħ in rad/s). `times` are seconds from the initial state.
pub fn evolve_unitary(
    hamiltonian: &CMatrix,
    state: &QuantumState,
    times: &[f64],
) -> Result<Trajectory> {
    let dim = state.dim();
    if hamiltonian.nrows() != dim || hamiltonian.ncols() != dim {
        return Err(Error::ShapeMismatch {
            operator: hamiltonian.nrows(),
            state: dim,
        });
    }
    let defect = (hamiltonian - hamiltonian.adjoint()).camax();
    if defect > 1e-10 * hamiltonian.camax().max(1.0) {
        return Err(crate::error::domain(format!(
            "Hamiltonian is not Hermitian (defect {defect:.3e})"
        )));
    }
    check_times(times)?;
    let eig = SymmetricEigen::new(hamiltonian.clone());
    let v = &eig.eigenvectors;
    let v_dag = v.adjoint();
    let rho_eig = &v_dag * state.density() * v;
    let energies = &eig.eigenvalues;

    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let evolved = DMatrix::from_fn(dim, dim, |a, b| {
            rho_eig[(a, b)] * Complex64::new(0.0, -(energies[a] - energies[b]) * t).exp()
        });
        let rho = v * evolved * &v_dag;
        let s = QuantumState::from_density(rho, state.atom_count(), state.fock_cutoff())?;
        check_truncation(&s)?;
        states.push(s);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        states,
    })
}

/// Lindblad generator in the form dρ/dt = −i(H_eff ρ − ρ H_eff†) + Σ c ρ c†,
/// with H_eff = H − (i/2) Σ c†c and rates folded into the jump operators.
struct Lindbladian {
    dim: usize,
    h_eff: SparseOperator,
    jumps: Vec<SparseOperator>,
}

impl Lindbladian {
    fn new(model: &SystemModel) -> Result<Self> {
        let (k, n_max) = (model.atom_count(), model.fock_cutoff);
        let h = build_hamiltonian(model)?;
        let mut jumps = Vec::new();
        if model.kappa > 0.0 {
            jumps.push((annihilation(k, n_max), model.kappa));
        }
        for (j, atom) in model.atoms.iter().enumerate() {
            if atom.gamma_decay > 0.0 {
                jumps.push((sigma_minus(j, k, n_max), atom.gamma_decay));
            }
            if atom.gamma_phi > 0.0 {
                jumps.push((sigma_z(j, k, n_max), atom.gamma_phi / 2.0));
            }
        }
        let mut h_eff = h;
        for (c, rate) in &jumps {
            h_eff -= (c.adjoint() * c) * Complex64::new(0.0, 0.5 * rate);
        }
        Ok(Lindbladian {
            dim: model.dim(),
            h_eff: SparseOperator::from_dense(&h_eff),
            jumps: jumps
                .iter()
                .map(|(c, rate)| SparseOperator::from_dense(c).scaled(rate.sqrt()))
                .collect(),
        })
    }

    /// `rho` and `out` are column-major d×d matrices.
    fn apply(&self, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        let minus_i = Complex64::new(0.0, -1.0);
        let plus_i = Complex64::new(0.0, 1.0);
        out.fill(Complex64::new(0.0, 0.0));
        for &(r, c, v) in &self.h_eff.entries {
            // −i H_eff ρ: row r gains v ρ[c, :]
            let a = minus_i * v;
            for col in 0..d {
                out[col * d + r] += a * rho[col * d + c];
            }
            // +i ρ H_eff†: column r gains conj(v) ρ[:, c]
            let b = plus_i * v.conj();
            for row in 0..d {
                out[r * d + row] += b * rho[c * d + row];
            }
        }
        for jump in &self.jumps {
            for &(i, j, v) in &jump.entries {
                for &(k, l, w) in &jump.entries {
                    out[k * d + i] += v * w.conj() * rho[l * d + j];
                }
            }
        }
    }
}

/// Integrate the master equation
/// dρ/dt = −i[H, ρ] + κ D[â]ρ + Σ_j (γ_decay D[σ⁻_j]ρ + (γ_φ/2) D[σ_z,j]ρ)
/// with an adaptive Dormand–Prince integrator; samples at `times` (seconds).
///
/// Fails with [`Error::Truncation`] if the top Fock level ever holds more than
/// 1e-6 of the population at a sample.
pub fn evolve_lindblad(
    model: &SystemModel,
    state: &QuantumState,
    times: &[f64],
    tolerances: Tolerances,
) -> Result<Trajectory> {
    check_state(model, state)?;
    check_times(times)?;
    let lindbladian = Lindbladian::new(model)?;
    let integrator = DormandPrince::new(tolerances.rtol, tolerances.atol);
    let (k, n_max, d) = (state.atom_count(), state.fock_cutoff(), state.dim());
    let mut states = Vec::with_capacity(times.len());
    integrator.integrate(
        |_, y, dy| lindbladian.apply(y, dy),
        0.0,
        state.density().as_slice(),
        times,
        |_, y| {
            let s = QuantumState::from_density(CMatrix::from_column_slice(d, d, y), k, n_max)?;
            check_truncation(&s)?;
            states.push(s);
            Ok(())
        },
    )?;
    Ok(Trajectory {
        times: times.to_vec(),
        states,
    })
}

/// Evolve with the eigendecomposition path when `model` has no loss channels,
/// otherwise integrate the master equation.
pub fn evolve_model(
    model: &SystemModel,
    state: &QuantumState,
    times: &[f64],
    tolerances: Tolerances,
) -> Result<Trajectory> {
    check_state(model, state)?;
    if model.is_lossless() {
        evolve_unitary(&build_hamiltonian(model)?, state, times)
    } else {
        evolve_lindblad(model, state, times, tolerances)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{excitation_number, AtomChannel};
    use std::f64::consts::PI;

    fn samples(t_end: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn vacuum_rabi_matches_sine_squared() {
        let g = 2.0 * PI * 2.76e6;
        let model = SystemModel::resonant(1, g).unwrap();
        let h = build_hamiltonian(&model).unwrap();
        let start = QuantumState::basis(&[Level::Upper], 0, model.fock_cutoff).unwrap();
        let times = samples(PI / g, 201);
        let traj = evolve_unitary(&h, &start, &times).unwrap();
        let p = traj.populations(&[Level::Lower], 1);
        for (t, v) in times.iter().zip(p) {
            assert!((v - (g * t).sin().powi(2)).abs() < 1e-10);
        }
    }

    #[test]
    fn identity_at_zero_and_dark_ground_state() {
        let model = SystemModel::resonant(2, 3.0).unwrap();
        let h = build_hamiltonian(&model).unwrap();
        let start = QuantumState::basis(&[Level::Upper, Level::Lower], 0, 8).unwrap();
        let traj = evolve_unitary(&h, &start, &[0.0]).unwrap();
        assert!((traj.states[0].density() - start.density()).camax() < 1e-14);

        let ground = QuantumState::basis(&[Level::Lower, Level::Lower], 0, 8).unwrap();
        let traj = evolve_unitary(&h, &ground, &[0.1, 1.0, 10.0]).unwrap();
        for s in &traj.states {
            assert!((s.density() - ground.density()).camax() < 1e-12);
        }
    }

    #[test]
    fn unitary_shape_mismatch() {
        let model = SystemModel::resonant(1, 1.0).unwrap();
        let h = build_hamiltonian(&model).unwrap();
        let wrong = QuantumState::basis(&[Level::Upper, Level::Lower], 0, 8).unwrap();
        assert!(matches!(
            evolve_unitary(&h, &wrong, &[0.0]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn lossless_lindblad_matches_unitary() {
        let g = 2.0 * PI * 2.76e6;
        let mut model = SystemModel::resonant(2, g).unwrap().with_fock_cutoff(4);
        model.atoms[1] = AtomChannel {
            coupling: 0.6 * g,
            detuning: 0.3 * g,
            ..model.atoms[1]
        };
        let start = QuantumState::basis(&[Level::Upper, Level::Lower], 0, 4).unwrap();
        let times = samples(4.0 * PI / g, 50);
        let a = evolve_unitary(&build_hamiltonian(&model).unwrap(), &start, &times).unwrap();
        let b = evolve_lindblad(&model, &start, &times, Tolerances::default()).unwrap();
        let (sa, sb) = (a.time_series().unwrap(), b.time_series().unwrap());
        for ((name, va), (_, vb)) in sa.observables.iter().zip(&sb.observables) {
            for (x, y) in va.iter().zip(vb) {
                assert!((x - y).abs() < 1e-6, "{name}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn cavity_decay_is_exponential() {
        let kappa = 2.0 * PI * 50e3;
        let model = SystemModel::resonant(1, 0.0).unwrap().with_kappa(kappa);
        let start = QuantumState::basis(&[Level::Lower], 1, 8).unwrap();
        let times = samples(5.0 / kappa, 60);
        let traj = evolve_lindblad(&model, &start, &times, Tolerances::default()).unwrap();
        let n = traj.time_series().unwrap();
        for (t, v) in times.iter().zip(n.get("n_photon").unwrap()) {
            assert!((v - (-kappa * t).exp()).abs() < 1e-6);
        }
    }

    #[test]
    fn truncation_breach_is_reported() {
        // Three photons in a 4-level space occupy the top level immediately.
        let model = SystemModel::resonant(1, 1.0).unwrap().with_fock_cutoff(4);
        let start = QuantumState::basis(&[Level::Upper], 3, 4).unwrap();
        let r = evolve_lindblad(&model, &start, &[0.0, 1.0], Tolerances::default());
        assert!(matches!(r, Err(Error::Truncation { fock_cutoff: 4, .. })));
    }

    #[test]
    fn excitation_number_is_conserved() {
        // Two excited atoms plus a photon reach n = 3; cutoff 6 keeps the top level empty.
        let model = SystemModel::resonant(2, 1.0).unwrap().with_fock_cutoff(6);
        let h = build_hamiltonian(&model).unwrap();
        let n_op = excitation_number(2, 6);
        let start = QuantumState::basis(&[Level::Upper, Level::Upper], 1, 6).unwrap();
        let traj = evolve_unitary(&h, &start, &samples(20.0, 41)).unwrap();
        for s in &traj.states {
            assert!((s.expectation(&n_op).re - 3.0).abs() < 1e-10);
        }
    }
}
