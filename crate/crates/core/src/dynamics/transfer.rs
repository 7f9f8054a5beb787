use serde::Serialize;

use super::evolve::{evolve_model, Tolerances};
use super::state::{Level, QuantumState};
use super::SystemModel;
use crate::error::{domain, Result};

/// First maximum of a transfer probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transfer {
    /// s
    pub time: f64,
    pub fidelity: f64,
}

const GRID_POINTS: usize = 201;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Probability of |r₁, 1⟩ at `time` for a single atom started in |r₂, 0⟩:
/// the atom→mode transfer fidelity.
pub fn state_transfer_fidelity(
    model: &SystemModel,
    time: f64,
    tolerances: Tolerances,
) -> Result<f64> {
    if model.atom_count() != 1 {
        return Err(domain("atom-to-mode transfer needs exactly one atom"));
    }
    let start = QuantumState::basis(&[Level::Upper], 0, model.fock_cutoff)?;
    let traj = evolve_model(model, &start, &[time], tolerances)?;
    Ok(traj.states[0].population(&[Level::Lower], 1))
}

/// Exchange |r₂, r₁, 0⟩ → |r₁, r₂, 0⟩ between two resonant atoms with equal
/// couplings, returning the time and height of the first fidelity maximum.
///
/// Without loss the maximum is at t = π/(√2 g) with unit fidelity.
pub fn two_atom_transfer(model: &SystemModel, tolerances: Tolerances) -> Result<Transfer> {
    if model.atom_count() != 2 {
        return Err(domain("two-atom transfer needs exactly two atoms"));
    }
    let (a, b) = (model.atoms[0], model.atoms[1]);
    if a.coupling != b.coupling || a.coupling == 0.0 {
        return Err(domain("two-atom transfer needs equal, non-zero couplings"));
    }
    if a.detuning != 0.0 || b.detuning != 0.0 {
        return Err(domain("two-atom transfer needs resonant atoms"));
    }
    let g = a.coupling.abs();
    let lossless_time = std::f64::consts::PI / (2f64.sqrt() * g);
    let start = QuantumState::basis(&[Level::Upper, Level::Lower], 0, model.fock_cutoff)?;
    let target = [Level::Lower, Level::Upper];

    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| 2.0 * lossless_time * i as f64 / (GRID_POINTS - 1) as f64)
        .collect();
    let traj = evolve_model(model, &start, &grid, tolerances)?;
    let fid = traj.populations(&target, 0);
    let peak = (1..GRID_POINTS - 1)
        .find(|&i| fid[i] >= fid[i - 1] && fid[i] > fid[i + 1])
        .unwrap_or_else(|| {
            (0..GRID_POINTS)
                .max_by(|&i, &j| fid[i].total_cmp(&fid[j]))
                .unwrap_or(0)
                .clamp(1, GRID_POINTS - 2)
        });

    // Golden-section refinement inside [t_{i-1}, t_{i+1}], restarting each
    // evaluation from the stored state at the left edge.
    let left_state = traj.states[peak - 1].clone();
    let t_left = grid[peak - 1];
    let eval = |t: f64| -> Result<f64> {
        let s = evolve_model(model, &left_state, &[t - t_left], tolerances)?;
        Ok(s.states[0].population(&target, 0))
    };
    let (mut lo, mut hi) = (t_left, grid[peak + 1]);
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (eval(x1)?, eval(x2)?);
    for _ in 0..200 {
        if hi - lo <= 1e-13 * lossless_time {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = eval(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = eval(x1)?;
        }
    }
    let (time, fidelity) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(Transfer { time, fidelity })
}
