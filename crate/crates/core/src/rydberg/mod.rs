//! Hydrogenic Rydberg-atom estimates: the Np → (N−1)s dipole, transition
//! frequencies, the image-dipole (van der Waals) shift above a conductor, the
//! resulting force and motional heating, and linear Stark shifts from stray
//! charges.
//!
//! Energies are returned as angular frequencies E/ħ (rad/s). Quantum defects
//! and fine/hyperfine structure are ignored throughout.

mod budget;

pub use budget::{decoherence_budget, BudgetInputs, BudgetItem, BudgetReport};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::units::CODATA;

/// Parameters of the atom being excited.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomSpec {
    /// Principal quantum number N of the upper (p) state.
    pub principal_n: u32,
    /// g
    pub species_mass: f64,
    /// Trap frequency ν, rad/s.
    pub trap_frequency: f64,
}

impl AtomSpec {
    pub fn new(principal_n: u32, species_mass: f64, trap_frequency: f64) -> Result<Self> {
        if principal_n < 2 {
            return Err(domain(format!(
                "principal quantum number must be >= 2, got {principal_n}"
            )));
        }
        if !(species_mass > 0.0) {
            return Err(domain("species mass must be positive"));
        }
        if !(trap_frequency >= 0.0) {
            return Err(domain("trap frequency must be non-negative"));
        }
        Ok(AtomSpec {
            principal_n,
            species_mass,
            trap_frequency,
        })
    }

    /// ⁸⁷Rb, N = 50, ν = 2π·50 kHz.
    pub fn flagship() -> Self {
        AtomSpec {
            principal_n: 50,
            species_mass: CODATA.rubidium_mass,
            trap_frequency: 2.0 * std::f64::consts::PI * 50e3,
        }
    }
}

/// Surface-related inputs to the decoherence budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceEnvironment {
    /// Atom height h, cm.
    pub atom_height: f64,
    /// Static patch-potential shift, rad/s. Taken as given; not modelled.
    pub patch_shift: f64,
    /// Radius of the island carrying a stray electron, cm.
    pub stray_island_radius: f64,
    /// Distance of the atom from that island along its axis, cm.
    pub stray_island_distance: f64,
}

impl SurfaceEnvironment {
    pub fn new(atom_height: f64) -> Result<Self> {
        if !(atom_height > 0.0) {
            return Err(domain("atom height must be positive"));
        }
        Ok(SurfaceEnvironment {
            atom_height,
            patch_shift: 2.0 * std::f64::consts::PI * 7e6,
            stray_island_radius: 10e-4,
            stray_island_distance: 10e-4,
        })
    }
}

/// d_z ≈ e N² a₀ / (3√3) for the Np(m=0) → (N−1)s transition, esu·cm.
pub fn dipole_matrix_element(principal_n: u32) -> Result<f64> {
    if principal_n < 2 {
        return Err(domain(format!(
            "principal quantum number must be >= 2, got {principal_n}"
        )));
    }
    let n = principal_n as f64;
    Ok(CODATA.electron_charge * n * n * CODATA.bohr_radius / (3.0 * 3f64.sqrt()))
}

/// Hydrogenic Np → (N−1)s transition frequency (Ry/ħ)(1/(N−1)² − 1/N²), rad/s.
pub fn transition_frequency(principal_n: u32) -> Result<f64> {
    if principal_n < 2 {
        return Err(domain(format!(
            "principal quantum number must be >= 2, got {principal_n}"
        )));
    }
    let n = principal_n as f64;
    let lower = n - 1.0;
    Ok(CODATA.rydberg_energy() / CODATA.hbar * (1.0 / (lower * lower) - 1.0 / (n * n)))
}

/// Hydrogenic ⟨r²⟩ = (N²a₀²/2)(5N² + 1 − 3ℓ(ℓ+1)), cm².
pub fn mean_square_radius(principal_n: u32, ell: u32) -> Result<f64> {
    if ell >= principal_n {
        return Err(domain(format!(
            "ell = {ell} must be below N = {principal_n}"
        )));
    }
    let n = principal_n as f64;
    let l = ell as f64;
    let a0 = CODATA.bohr_radius;
    Ok(n * n * a0 * a0 / 2.0 * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0)))
}

/// Image-dipole shift −⟨2d_z² + d_ρ²⟩/16h³ of a Rydberg atom at height `height`
/// above a conducting plane, as E/ħ in rad/s.
///
/// The expectation value is taken isotropic, ⟨2z² + ρ²⟩ = (4/3)⟨r²⟩; this is
/// an order-of-magnitude estimate, not a state-resolved one.
pub fn vdw_shift(principal_n: u32, ell: u32, height: f64) -> Result<f64> {
    if !(height > 0.0) {
        return Err(domain("height must be positive"));
    }
    let r2 = mean_square_radius(principal_n, ell)?;
    let e = CODATA.electron_charge;
    let d2 = 4.0 / 3.0 * e * e * r2;
    Ok(-d2 / (16.0 * height.powi(3)) / CODATA.hbar)
}

/// Magnitude of the force bound, (3|ΔE| + |g|)/h, in dyn.
///
/// `vdw` and `coupling` are E/ħ in rad/s. The signed bound (3ΔE − g)/h is
/// negative for an attractive shift; heating needs the magnitude.
pub fn max_force(vdw: f64, coupling: f64, height: f64) -> f64 {
    CODATA.hbar * (3.0 * vdw.abs() + coupling.abs()) / height
}

/// Probability of leaving the motional ground state during an untrapped
/// Rydberg excursion of duration `time`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MotionalExcitation {
    /// F²t²/(2ħMν)
    pub force_term: f64,
    /// ν²t²/8
    pub trap_term: f64,
    pub total: f64,
}

pub fn motional_excitation(force: f64, time: f64, atom: &AtomSpec) -> Result<MotionalExcitation> {
    if time < 0.0 {
        return Err(domain("time must be non-negative"));
    }
    let nu = atom.trap_frequency;
    if !(nu > 0.0) {
        return Err(domain(
            "motional excitation diverges for a zero trap frequency",
        ));
    }
    let t2 = time * time;
    let force_term = force * force * t2 / (2.0 * CODATA.hbar * atom.species_mass * nu);
    let trap_term = nu * nu * t2 / 8.0;
    Ok(MotionalExcitation {
        force_term,
        trap_term,
        total: force_term + trap_term,
    })
}

/// Linear Stark shift (3/2) N k e a₀ E of the hydrogenic manifold, rad/s.
///
/// `k` is the parabolic quantum-number difference, |k| ≤ N − 1; `field` is in statV/cm.
pub fn linear_stark_shift(principal_n: u32, k: i64, field: f64) -> Result<f64> {
    let n = principal_n as i64;
    if k.abs() > n - 1 {
        return Err(domain(format!(
            "|k| = {} exceeds N - 1 = {}",
            k.abs(),
            n - 1
        )));
    }
    let c = &CODATA;
    Ok(1.5 * principal_n as f64 * k as f64 * c.electron_charge * c.bohr_radius * field / c.hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::field_on_axis;
    use crate::resonator::coupling_g;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const MHZ: f64 = 2.0 * PI * 1e6;

    #[test]
    fn dipole_values() {
        let d = dipole_matrix_element(50).unwrap();
        // e·2500·a₀/5.196152 = 481.125 e·a₀
        assert_relative_eq!(d, 1.222_898_342_052_064e-15, max_relative = 1e-12);
        assert_relative_eq!(
            d / (CODATA.electron_charge * CODATA.bohr_radius),
            481.125_224_324_688,
            max_relative = 1e-12
        );
        assert!(dipole_matrix_element(1).is_err());
        assert!(dipole_matrix_element(0).is_err());
        assert_relative_eq!(
            dipole_matrix_element(100).unwrap(),
            4.0 * d,
            max_relative = 1e-14
        );
    }

    #[test]
    fn transition_values() {
        let w = transition_frequency(50).unwrap();
        assert_relative_eq!(w / (2.0 * PI), 54.259_784e9, max_relative = 1e-6);
        let w2 = transition_frequency(2).unwrap();
        assert_relative_eq!(w2 / (2.0 * PI), 2.467_4e15, max_relative = 1e-4);
        let n = 200.0;
        let asymptotic = 2.0 * CODATA.rydberg_energy() / (CODATA.hbar * n * n * n);
        let ratio = transition_frequency(200).unwrap() / asymptotic;
        assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
        assert!(transition_frequency(1).is_err());
    }

    #[test]
    fn vdw_values() {
        let shift = vdw_shift(50, 1, 10e-4).unwrap();
        assert_relative_eq!(shift / MHZ, -1.269_034_583, max_relative = 1e-8);
        assert_relative_eq!(
            vdw_shift(50, 1, 20e-4).unwrap(),
            shift / 8.0,
            max_relative = 1e-14
        );
        assert!(vdw_shift(50, 50, 10e-4).is_err());
        assert!(vdw_shift(50, 49, 10e-4).unwrap() < 0.0);
    }

    #[test]
    fn force_and_heating() {
        let g = coupling_g(
            dipole_matrix_element(50).unwrap(),
            PI * CODATA.speed_of_light / 0.3,
            10e-4,
            0.3,
        );
        let dv = vdw_shift(50, 1, 10e-4).unwrap();
        let f = max_force(dv, g, 10e-4);
        assert_relative_eq!(f, 4.351_377_359e-17, max_relative = 1e-8);
        assert_eq!(max_force(0.0, 0.0, 10e-4), 0.0);
        assert_relative_eq!(
            max_force(2.0 * dv, 0.0, 1e-3),
            2.0 * max_force(dv, 0.0, 1e-3),
            max_relative = 1e-15
        );

        let atom = AtomSpec::flagship();
        let t = PI / g;
        let p = motional_excitation(f, t, &atom).unwrap();
        assert_relative_eq!(p.total, 1.054_758_614e-3, max_relative = 1e-8);
        assert_eq!(p.total, p.force_term + p.trap_term);
        assert_eq!(motional_excitation(f, 0.0, &atom).unwrap().total, 0.0);
        let p2 = motional_excitation(f, 2.0 * t, &atom).unwrap();
        assert_relative_eq!(p2.total, 4.0 * p.total, max_relative = 1e-14);

        let untrapped = AtomSpec {
            trap_frequency: 0.0,
            ..atom
        };
        assert!(motional_excitation(f, t, &untrapped).is_err());
    }

    #[test]
    fn stark_values() {
        let field = field_on_axis(CODATA.electron_charge, 10e-4, 10e-4).unwrap();
        let shift = linear_stark_shift(50, 49, field).unwrap();
        // 3675 e a₀ · 2.4016e-4 statV/cm
        assert_relative_eq!(shift / MHZ, 338.559_219_5, max_relative = 1e-8);
        assert_eq!(linear_stark_shift(50, 0, field).unwrap(), 0.0);
        assert_relative_eq!(
            linear_stark_shift(50, 49, 2.0 * field).unwrap(),
            2.0 * shift,
            max_relative = 1e-15
        );
        assert_eq!(linear_stark_shift(50, -49, field).unwrap(), -shift);
        assert!(linear_stark_shift(50, 50, field).is_err());
    }

    #[test]
    fn atom_validation() {
        assert!(AtomSpec::new(1, 1e-22, 1.0).is_err());
        assert!(AtomSpec::new(50, 0.0, 1.0).is_err());
        assert!(AtomSpec::new(50, 1e-22, -1.0).is_err());
        assert!(SurfaceEnvironment::new(0.0).is_err());
    }
}
