use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use super::operators::{basis_index, CMatrix};
use crate::error::{domain, Error, Result};

/// Atomic level in the two-level truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// |r₁⟩, the lower state.
    Lower,
    /// |r₂⟩, the upper state.
    Upper,
}

impl Level {
    fn index(self) -> usize {
        match self {
            Level::Lower => 0,
            Level::Upper => 1,
        }
    }
}

/// Density matrix on `atom_A ⊗ [atom_B ⊗] fock`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    rho: CMatrix,
    atom_count: usize,
    fock_cutoff: usize,
}

const HERMITICITY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
const POSITIVITY_TOL: f64 = 1e-8;

impl QuantumState {
    /// Wrap a density matrix without checking physicality.
    pub fn from_density(rho: CMatrix, atom_count: usize, fock_cutoff: usize) -> Result<Self> {
        let dim = (1 << atom_count) * fock_cutoff;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::ShapeMismatch {
                operator: dim,
                state: rho.nrows(),
            });
        }
        Ok(QuantumState {
            rho,
            atom_count,
            fock_cutoff,
        })
    }

    /// Pure state |ψ⟩⟨ψ| from amplitudes; normalizes `psi`.
    pub fn pure(psi: &DVector<Complex64>, atom_count: usize, fock_cutoff: usize) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(domain("zero state vector"));
        }
        let psi = psi / Complex64::new(norm, 0.0);
        Self::from_density(&psi * psi.adjoint(), atom_count, fock_cutoff)
    }

    /// Product basis state |levels, photons⟩.
    pub fn basis(levels: &[Level], photons: usize, fock_cutoff: usize) -> Result<Self> {
        if photons >= fock_cutoff {
            return Err(domain(format!(
                "{photons} photons do not fit below cutoff {fock_cutoff}"
            )));
        }
        let dim = (1 << levels.len()) * fock_cutoff;
        let mut psi = DVector::zeros(dim);
        psi[Self::index_of(levels, photons, fock_cutoff)] = Complex64::new(1.0, 0.0);
        Self::pure(&psi, levels.len(), fock_cutoff)
    }

    fn index_of(levels: &[Level], photons: usize, fock_cutoff: usize) -> usize {
        let idx: Vec<usize> = levels.iter().map(|l| l.index()).collect();
        basis_index(&idx, photons, fock_cutoff)
    }

    pub fn density(&self) -> &CMatrix {
        &self.rho
    }

    pub fn atom_count(&self) -> usize {
        self.atom_count
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (&self.rho - self.rho.adjoint()).camax()
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.rho + self.rho.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(herm).eigenvalues.min()
    }

    /// Check hermiticity (1e-10), unit trace (1e-8) and positivity (−1e-8).
    pub fn validate(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NonPhysical(format!(
                "hermiticity defect {defect:.3e}"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NonPhysical(format!("trace {tr}")));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NonPhysical(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        (op * &self.rho).trace()
    }

    /// ⟨levels, photons|ρ|levels, photons⟩.
    pub fn population(&self, levels: &[Level], photons: usize) -> f64 {
        let i = Self::index_of(levels, photons, self.fock_cutoff);
        self.rho[(i, i)].re
    }

    /// Probability of finding atom `atom` in |r₂⟩.
    pub fn upper_population(&self, atom: usize) -> f64 {
        let shift = self.atom_count - 1 - atom;
        (0..self.dim())
            .filter(|i| ((i / self.fock_cutoff) >> shift) & 1 == 1)
            .map(|i| self.rho[(i, i)].re)
            .sum()
    }

    /// Population of Fock level `n` summed over atomic states.
    pub fn fock_population(&self, n: usize) -> f64 {
        (0..1 << self.atom_count)
            .map(|a| {
                let i = a * self.fock_cutoff + n;
                self.rho[(i, i)].re
            })
            .sum()
    }

    pub fn photon_number(&self) -> f64 {
        (0..self.fock_cutoff)
            .map(|n| n as f64 * self.fock_population(n))
            .sum()
    }

    pub fn top_fock_population(&self) -> f64 {
        self.fock_population(self.fock_cutoff - 1)
    }

    /// Partial trace over the mode: 2^k × 2^k atomic density matrix.
    pub fn reduced_atoms(&self) -> CMatrix {
        let na = 1 << self.atom_count;
        let nf = self.fock_cutoff;
        CMatrix::from_fn(na, na, |a, b| {
            (0..nf).map(|n| self.rho[(a * nf + n, b * nf + n)]).sum()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_state_bookkeeping() {
        let s = QuantumState::basis(&[Level::Upper, Level::Lower], 1, 4).unwrap();
        s.validate().unwrap();
        assert_eq!(s.dim(), 16);
        assert_eq!(s.upper_population(0), 1.0);
        assert_eq!(s.upper_population(1), 0.0);
        assert_eq!(s.photon_number(), 1.0);
        assert_eq!(s.population(&[Level::Upper, Level::Lower], 1), 1.0);
        let red = s.reduced_atoms();
        assert_eq!(red[(2, 2)].re, 1.0);
        assert!(QuantumState::basis(&[Level::Upper], 4, 4).is_err());
    }

    #[test]
    fn non_physical_states_fail_validation() {
        let mut rho = CMatrix::zeros(4, 4);
        rho[(0, 0)] = Complex64::new(1.5, 0.0);
        rho[(1, 1)] = Complex64::new(-0.5, 0.0);
        let s = QuantumState::from_density(rho, 1, 2).unwrap();
        assert!(matches!(s.validate(), Err(Error::NonPhysical(_))));

        let mut rho = CMatrix::zeros(4, 4);
        rho[(0, 0)] = Complex64::new(0.5, 0.0);
        let s = QuantumState::from_density(rho, 1, 2).unwrap();
        assert!(s.validate().is_err());

        assert!(QuantumState::from_density(CMatrix::zeros(3, 3), 1, 2).is_err());
    }
}
