//! Static coupling chain: disc and wire capacitances, the on-axis disc field,
//! adiabatic elimination of the disc charges and the resulting effective
//! dipole–dipole coupling between two atoms joined by a wire.
//!
//! All quantities are Gaussian: capacitance in cm, charge in esu, dipoles in
//! esu·cm, energies in erg. A coupling coefficient `J` has dimension cm⁻³ so
//! that `H_int = J · d_A · d_B`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Layout of the two-disc, one-wire device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geometry {
    /// Disc radius R, cm.
    pub disc_radius: f64,
    /// Atom height h above the disc centre, cm.
    pub atom_height: f64,
    /// Wire length L, cm.
    pub wire_length: f64,
    /// ln(b/a) of the equivalent coaxial line.
    pub log_coax_ratio: f64,
    /// Height H of the disc pillars above the ground plane, cm.
    pub pillar_height: f64,
}

impl Geometry {
    pub fn new(
        disc_radius: f64,
        atom_height: f64,
        wire_length: f64,
        log_coax_ratio: f64,
        pillar_height: f64,
    ) -> Result<Self> {
        let positive = [
            ("disc_radius", disc_radius),
            ("atom_height", atom_height),
            ("wire_length", wire_length),
            ("log_coax_ratio", log_coax_ratio),
            ("pillar_height", pillar_height),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Geometry {
            disc_radius,
            atom_height,
            wire_length,
            log_coax_ratio,
            pillar_height,
        })
    }

    /// R = h = 10 μm, L = 3 mm, ln(b/a) = 1, H = 30 μm.
    pub fn flagship() -> Self {
        Geometry {
            disc_radius: 10e-4,
            atom_height: 10e-4,
            wire_length: 0.3,
            log_coax_ratio: 1.0,
            pillar_height: 30e-4,
        }
    }

    /// True when the wire is not long compared to the discs (L ≤ 10 R), where
    /// the long-wire closed forms lose accuracy.
    pub fn short_wire_warning(&self) -> bool {
        self.wire_length <= 10.0 * self.disc_radius
    }

    pub fn disc_capacitance(&self) -> f64 {
        2.0 * self.disc_radius / PI
    }

    pub fn wire_capacitance(&self) -> f64 {
        self.wire_length / (2.0 * self.log_coax_ratio)
    }
}

/// Charges induced on the discs below atoms A and B, esu.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargeState {
    pub q_a: f64,
    pub q_b: f64,
}

/// Capacitance of an isolated thin disc, 2R/π.
pub fn disc_capacitance(radius: f64) -> Result<f64> {
    if radius < 0.0 {
        return Err(domain(format!(
            "disc radius must be non-negative, got {radius}"
        )));
    }
    Ok(2.0 * radius / PI)
}

/// Coaxial-line capacitance L / (2 ln(b/a)).
pub fn wire_capacitance(length: f64, log_coax_ratio: f64) -> Result<f64> {
    if log_coax_ratio <= 0.0 {
        return Err(domain(format!(
            "ln(b/a) must be positive, got {log_coax_ratio}"
        )));
    }
    if length < 0.0 {
        return Err(domain(format!(
            "wire length must be non-negative, got {length}"
        )));
    }
    Ok(length / (2.0 * log_coax_ratio))
}

/// E_z = q/(R² + z²) on the axis of a disc carrying charge `q`.
///
/// This is the effective on-axis form, not the exact field of a uniformly
/// charged disc; it is what the coupling formulas below are built on.
pub fn field_on_axis(charge: f64, radius: f64, z: f64) -> Result<f64> {
    let denom = radius * radius + z * z;
    if denom == 0.0 {
        return Err(Error::Singularity);
    }
    Ok(charge / denom)
}

/// Total electrostatic energy of the two-disc conductor plus both atom–disc
/// interactions, erg:
///
/// `(q_A² + q_B²)/2C_d + (q_A + q_B)²/2C_w + (q_A d_A + q_B d_B)/(R² + h²)`.
pub fn total_energy(charges: ChargeState, dipole_a: f64, dipole_b: f64, geom: &Geometry) -> f64 {
    let c_d = geom.disc_capacitance();
    let c_w = geom.wire_capacitance();
    let s = axis_denominator(geom);
    let ChargeState { q_a, q_b } = charges;
    (q_a * q_a + q_b * q_b) / (2.0 * c_d)
        + (q_a + q_b).powi(2) / (2.0 * c_w)
        + (q_a * dipole_a + q_b * dipole_b) / s
}

fn axis_denominator(geom: &Geometry) -> f64 {
    geom.disc_radius * geom.disc_radius + geom.atom_height * geom.atom_height
}

/// Disc charges that make the total energy stationary (∂H/∂q_j = 0).
///
/// The stationarity conditions are the 2×2 linear system
/// `[[1/C_d + 1/C_w, 1/C_w], [1/C_w, 1/C_d + 1/C_w]] q = -d/(R² + h²)`.
pub fn equilibrium_charges(dipole_a: f64, dipole_b: f64, geom: &Geometry) -> ChargeState {
    let diag = 1.0 / geom.disc_capacitance() + 1.0 / geom.wire_capacitance();
    let off = 1.0 / geom.wire_capacitance();
    let s = axis_denominator(geom);
    let (b_a, b_b) = (-dipole_a / s, -dipole_b / s);
    let det = diag * diag - off * off;
    ChargeState {
        q_a: (diag * b_a - off * b_b) / det,
        q_b: (diag * b_b - off * b_a) / det,
    }
}

/// Energy left after eliminating the disc charges, split into the A–B cross
/// term and the two single-atom self-energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Elimination {
    pub charges: ChargeState,
    /// Part of the minimum energy proportional to d_A·d_B, erg.
    pub cross_term: f64,
    /// Part proportional to d_A², erg.
    pub self_energy_a: f64,
    /// Part proportional to d_B², erg.
    pub self_energy_b: f64,
}

/// Eliminate the charges numerically through [`equilibrium_charges`] and
/// separate the resulting energy by polarization.
pub fn eliminate_charges(dipole_a: f64, dipole_b: f64, geom: &Geometry) -> Elimination {
    let at = |da: f64, db: f64| total_energy(equilibrium_charges(da, db, geom), da, db, geom);
    let full = at(dipole_a, dipole_b);
    let self_energy_a = at(dipole_a, 0.0);
    let self_energy_b = at(0.0, dipole_b);
    Elimination {
        charges: equilibrium_charges(dipole_a, dipole_b, geom),
        cross_term: full - self_energy_a - self_energy_b,
        self_energy_a,
        self_energy_b,
    }
}

/// J = C_d² / [(C_w + 2C_d)(R² + h²)²], so that H_int = J d_A d_B.
pub fn coupling_coefficient_full(geom: &Geometry) -> f64 {
    let c_d = geom.disc_capacitance();
    let c_w = geom.wire_capacitance();
    let s = axis_denominator(geom);
    c_d * c_d / ((c_w + 2.0 * c_d) * s * s)
}

/// Long-wire optimum at R = h and ln(b/a) = 1: J = (2/π²)/(h² L).
pub fn coupling_coefficient_simple(height: f64, length: f64) -> f64 {
    2.0 / (PI * PI) / (height * height * length)
}

/// Order-of-magnitude free-space dipole–dipole coefficient 1/L³.
pub fn free_space_coupling(length: f64) -> f64 {
    length.powi(-3)
}
