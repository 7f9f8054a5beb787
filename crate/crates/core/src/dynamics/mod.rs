//! Jaynes–Cummings dynamics of one or two two-level Rydberg atoms coupled to
//! a single truncated resonator mode, with and without Lindblad dissipation.
//!
//! The Hilbert space is `atom_A ⊗ [atom_B ⊗] fock`, each atom spanned by
//! `|r₁⟩` (lower) and `|r₂⟩` (upper), the mode by Fock states `0..fock_cutoff`.
//! Hamiltonians are stored as H/ħ (rad/s) in the frame rotating at the mode
//! frequency.

mod concurrence;
mod evolve;
mod integrator;
mod operators;
mod state;
mod transfer;

pub use concurrence::{concurrence, concurrence_of};
pub use evolve::{
    evolve_lindblad, evolve_model, evolve_unitary, TimeSeries, Tolerances, Trajectory,
};
pub use integrator::{DormandPrince, IntegrationStats};
pub use operators::{
    annihilation, basis_index, build_hamiltonian, excitation_number, sigma_minus, sigma_z, CMatrix,
    SparseOperator,
};
pub use state::{Level, QuantumState};
pub use transfer::{state_transfer_fidelity, two_atom_transfer, Transfer};

use serde::Serialize;

use crate::error::{domain, Result};

/// Default Fock cutoff: all scenarios here live in the 0/1-excitation sector.
pub const DEFAULT_FOCK_CUTOFF: usize = 8;

/// Population in the top Fock level above which a run is rejected.
pub const TRUNCATION_LIMIT: f64 = 1e-6;

/// Ratio g/ω above which the rotating-wave approximation is flagged.
pub const RWA_LIMIT: f64 = 0.01;

/// Per-atom coupling and loss channels. All values rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomChannel {
    /// g/ħ
    pub coupling: f64,
    /// ω_atom − ω_mode
    pub detuning: f64,
    /// Rate of |r₂⟩ → |r₁⟩ decay.
    pub gamma_decay: f64,
    /// Pure dephasing rate; enters as (γ_φ/2) D[σ_z].
    pub gamma_phi: f64,
}

impl AtomChannel {
    pub fn resonant(coupling: f64) -> Self {
        AtomChannel {
            coupling,
            detuning: 0.0,
            gamma_decay: 0.0,
            gamma_phi: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemModel {
    pub atoms: Vec<AtomChannel>,
    pub fock_cutoff: usize,
    /// Cavity energy decay rate κ, rad/s.
    pub kappa: f64,
    /// Bare mode frequency, used only for the RWA check.
    pub mode_frequency: Option<f64>,
}

impl SystemModel {
    pub fn new(atoms: Vec<AtomChannel>, fock_cutoff: usize, kappa: f64) -> Result<Self> {
        let model = SystemModel {
            atoms,
            fock_cutoff,
            kappa,
            mode_frequency: None,
        };
        model.validate()?;
        Ok(model)
    }

    /// `atom_count` identical resonant, lossless atoms.
    pub fn resonant(atom_count: usize, coupling: f64) -> Result<Self> {
        Self::new(
            vec![AtomChannel::resonant(coupling); atom_count],
            DEFAULT_FOCK_CUTOFF,
            0.0,
        )
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_atom_rates(mut self, gamma_decay: f64, gamma_phi: f64) -> Self {
        for atom in &mut self.atoms {
            atom.gamma_decay = gamma_decay;
            atom.gamma_phi = gamma_phi;
        }
        self
    }

    pub fn with_fock_cutoff(mut self, fock_cutoff: usize) -> Self {
        self.fock_cutoff = fock_cutoff;
        self
    }

    pub fn with_mode_frequency(mut self, omega: f64) -> Self {
        self.mode_frequency = Some(omega);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.atoms.len()) {
            return Err(domain(format!(
                "atom_count must be 1 or 2, got {}",
                self.atoms.len()
            )));
        }
        if self.fock_cutoff < 2 {
            return Err(domain(format!(
                "fock_cutoff must be >= 2, got {}",
                self.fock_cutoff
            )));
        }
        let rates = self
            .atoms
            .iter()
            .flat_map(|a| [a.gamma_decay, a.gamma_phi])
            .chain([self.kappa]);
        for rate in rates {
            if !(rate >= 0.0 && rate.is_finite()) {
                return Err(domain(format!(
                    "decay rates must be finite and >= 0, got {rate}"
                )));
            }
        }
        for a in &self.atoms {
            if !(a.coupling.is_finite() && a.detuning.is_finite()) {
                return Err(domain("coupling and detuning must be finite"));
            }
        }
        Ok(())
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn dim(&self) -> usize {
        (1 << self.atoms.len()) * self.fock_cutoff
    }

    pub fn is_lossless(&self) -> bool {
        self.kappa == 0.0
            && self
                .atoms
                .iter()
                .all(|a| a.gamma_decay == 0.0 && a.gamma_phi == 0.0)
    }

    /// True when some |g_j|/ω exceeds [`RWA_LIMIT`]. Unknown ω never warns.
    pub fn rwa_warning(&self) -> bool {
        match self.mode_frequency {
            Some(omega) => self
                .atoms
                .iter()
                .any(|a| a.coupling.abs() / omega > RWA_LIMIT),
            None => false,
        }
    }
}
