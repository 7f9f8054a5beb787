use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::operators::CMatrix;
use super::state::QuantumState;
use crate::error::{domain, Error, Result};

/// Wootters concurrence of the two atoms, with the mode traced out.
pub fn concurrence(state: &QuantumState) -> Result<f64> {
    if state.atom_count() != 2 {
        return Err(domain("concurrence needs exactly two atoms"));
    }
    state.validate()?;
    concurrence_of(&state.reduced_atoms())
}

/// Eigenvalues of ρ below this are treated as exact zeros, so a rank-deficient
/// state does not pick up √(rounding) noise in its square root.
const RANK_CUTOFF: f64 = 1e-13;

fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(m.clone());
    let roots = eig
        .eigenvalues
        .map(|l| Complex64::new(if l > RANK_CUTOFF { l.sqrt() } else { 0.0 }, 0.0));
    &eig.eigenvectors * CMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence of a 4×4 two-qubit density matrix.
///
/// The λ_i entering C = max(0, λ₁ − λ₂ − λ₃ − λ₄) are the singular values
/// of √ρ (σ_y ⊗ σ_y) √ρ*, since that matrix times its adjoint is √ρ ρ̃ √ρ.
pub fn concurrence_of(rho: &CMatrix) -> Result<f64> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::ShapeMismatch {
            operator: 4,
            state: rho.nrows(),
        });
    }
    let defect = (rho - rho.adjoint()).camax();
    if defect > 1e-10 {
        return Err(Error::NonPhysical(format!(
            "hermiticity defect {defect:.3e}"
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::NonPhysical(format!("trace {tr}")));
    }
    let min = SymmetricEigen::new(rho.clone()).eigenvalues.min();
    if min < -1e-8 {
        return Err(Error::NonPhysical(format!("negative eigenvalue {min:.3e}")));
    }

    // σ_y ⊗ σ_y in the |r₁r₁⟩, |r₁r₂⟩, |r₂r₁⟩, |r₂r₂⟩ ordering is the
    // anti-diagonal (−1, 1, 1, −1).
    let flip = CMatrix::from_fn(4, 4, |r, c| match (r, c) {
        (0, 3) | (3, 0) => Complex64::new(-1.0, 0.0),
        (1, 2) | (2, 1) => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let root = hermitian_sqrt(rho);
    let m = &root * &flip * root.conjugate();
    let mut lambdas: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}
