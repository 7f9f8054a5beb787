//! Quantized transmission-line modes, the atom–mode coupling constant and the
//! dissipation figures of the resonator.
//!
//! Mode frequencies and couplings are angular frequencies in rad/s; a coupling
//! `g` returned here is g/ħ.

use std::f64::consts::PI;

use serde::Serialize;

use crate::electrostatics::Geometry;
use crate::error::{domain, Result};
use crate::rydberg::dipole_matrix_element;
use crate::units::CODATA;

/// ω_n = nπv/L.
pub fn mode_frequency(index: u32, velocity: f64, length: f64) -> Result<f64> {
    if index < 1 {
        return Err(domain("mode index must be at least 1"));
    }
    if !(velocity > 0.0 && length > 0.0) {
        return Err(domain("phase velocity and wire length must be positive"));
    }
    Ok(index as f64 * (PI * velocity / length))
}

/// Oscillator "mass" of mode n, m_n = C_w/(2 C_d² ω_n²), valid for L ≫ R.
pub fn effective_mass(index: u32, geom: &Geometry, velocity: f64) -> Result<f64> {
    let omega = mode_frequency(index, velocity, geom.wire_length)?;
    Ok(effective_mass_at(geom, omega))
}

/// m = C_w/(2 C_d² ω²) for a mode held at frequency `omega`.
pub fn effective_mass_at(geom: &Geometry, omega: f64) -> f64 {
    let c_d = geom.disc_capacitance();
    geom.wire_capacitance() / (2.0 * c_d * c_d * omega * omega)
}

/// Zero-point charge spread √(ħ/2mω) of an oscillator with mass `mass`.
pub fn zero_point_charge(mass: f64, omega: f64) -> f64 {
    (CODATA.hbar / (2.0 * mass * omega)).sqrt()
}

/// One quantized mode of the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeSpec {
    pub index: u32,
    /// ω_n, rad/s.
    pub frequency: f64,
    /// m_n, erg·s²/esu².
    pub effective_mass: f64,
    /// q_zp, esu.
    pub zero_point_charge: f64,
    /// κ = ω_n/Q, rad/s.
    pub decay_rate: f64,
    /// v, cm/s.
    pub phase_velocity: f64,
}

impl ModeSpec {
    pub fn new(index: u32, geom: &Geometry, velocity: f64, quality_factor: f64) -> Result<Self> {
        let frequency = mode_frequency(index, velocity, geom.wire_length)?;
        Self::at_frequency(index, geom, velocity, quality_factor, frequency)
    }

    /// Mode `index` held at `frequency` rather than at nπv/L, e.g. tuned onto
    /// an atomic line by loading the wire. Mass, q_zp and κ follow `frequency`.
    pub fn at_frequency(
        index: u32,
        geom: &Geometry,
        velocity: f64,
        quality_factor: f64,
        frequency: f64,
    ) -> Result<Self> {
        if index < 1 {
            return Err(domain("mode index must be at least 1"));
        }
        if !(frequency > 0.0 && frequency.is_finite()) {
            return Err(domain(format!(
                "mode frequency must be positive, got {frequency}"
            )));
        }
        if !(velocity > 0.0) {
            return Err(domain("phase velocity must be positive"));
        }
        let effective_mass = effective_mass_at(geom, frequency);
        Ok(ModeSpec {
            index,
            frequency,
            effective_mass,
            zero_point_charge: zero_point_charge(effective_mass, frequency),
            decay_rate: cavity_decay(frequency, quality_factor)?,
            phase_velocity: velocity,
        })
    }
}

/// g/ħ = d_z √(2ħω/(π² h² L)) / ħ, for the optimal disc radius R = h.
pub fn coupling_g(dipole: f64, omega: f64, height: f64, length: f64) -> f64 {
    let hbar = CODATA.hbar;
    dipole * (2.0 * hbar * omega / (PI * PI * height * height * length)).sqrt() / hbar
}

/// The same coupling written through α and the atom's principal quantum
/// number: g/ħ = ω √(2α/((3π)³ n)) √(v₀/v) N² a₀/h.
pub fn coupling_g_dimensionless(
    principal_n: u32,
    mode_index: u32,
    velocity: f64,
    height: f64,
    omega: f64,
) -> f64 {
    let c = &CODATA;
    let n_sq = (principal_n as f64).powi(2);
    omega
        * (2.0 * c.fine_structure / ((3.0 * PI).powi(3) * mode_index as f64)).sqrt()
        * (c.speed_of_light / velocity).sqrt()
        * n_sq
        * c.bohr_radius
        / height
}

/// Effective mode volume π³h²L.
pub fn mode_volume(height: f64, length: f64) -> f64 {
    PI.powi(3) * height * height * length
}

/// Cavity-QED form g/ħ = d √(2πħω/V) / ħ.
pub fn coupling_from_mode_volume(dipole: f64, omega: f64, volume: f64) -> f64 {
    let hbar = CODATA.hbar;
    dipole * (2.0 * PI * hbar * omega / volume).sqrt() / hbar
}

/// Coupling obtained by putting the zero-point charge on the disc:
/// g/ħ = d q_zp / ((R² + h²) ħ).
pub fn coupling_from_zero_point_charge(dipole: f64, mode: &ModeSpec, geom: &Geometry) -> f64 {
    let s = geom.disc_radius.powi(2) + geom.atom_height.powi(2);
    dipole * mode.zero_point_charge / s / CODATA.hbar
}

/// Convenience: g/ħ for the Np → (N−1)s transition resonant with mode `mode`.
pub fn atom_mode_coupling(principal_n: u32, mode: &ModeSpec, geom: &Geometry) -> Result<f64> {
    let d = dipole_matrix_element(principal_n)?;
    Ok(coupling_g(
        d,
        mode.frequency,
        geom.atom_height,
        geom.wire_length,
    ))
}

/// Energy decay rate κ = ω/Q.
pub fn cavity_decay(omega: f64, quality_factor: f64) -> Result<f64> {
    if !(quality_factor > 0.0) {
        return Err(domain(format!("Q must be positive, got {quality_factor}")));
    }
    Ok(omega / quality_factor)
}

/// Contact resistance at which the contact-limited Q equals [`CONTACT_Q_AT_CALIBRATION`].
pub const CONTACT_CALIBRATION_OHM: f64 = 0.1;
pub const CONTACT_Q_AT_CALIBRATION: f64 = 1e7;
/// Floor of the gold end-cap contribution.
pub const ENDCAP_Q: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QContribution {
    pub label: String,
    pub q: f64,
}

/// Itemized quality-factor budget. Contributions combine harmonically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QBudget {
    /// (L/H)⁴ from radiation off the disc pillars.
    pub q_radiative: f64,
    /// Contact-resistance term, ∞ for a perfect contact.
    pub q_contact: f64,
    pub q_endcap: f64,
    /// User-supplied caps such as dielectric loss.
    pub external_caps: Vec<QContribution>,
    pub q_total: f64,
}

impl QBudget {
    pub fn contributions(&self) -> impl Iterator<Item = f64> + '_ {
        [self.q_radiative, self.q_contact, self.q_endcap]
            .into_iter()
            .chain(self.external_caps.iter().map(|c| c.q))
    }
}

/// Build the Q budget for `geom`.
///
/// `contact_resistance` is Gaussian (s/cm). The contact term is an
/// extrapolation, Q ∝ 1/R_contact, through the single point 0.1 Ω → 10⁷.
pub fn q_budget(
    geom: &Geometry,
    contact_resistance: f64,
    external_caps: &[QContribution],
) -> Result<QBudget> {
    if contact_resistance < 0.0 {
        return Err(domain("contact resistance must be non-negative"));
    }
    if geom.pillar_height >= geom.wire_length {
        return Err(domain(format!(
            "radiative pillar model needs H < L (H = {} cm, L = {} cm)",
            geom.pillar_height, geom.wire_length
        )));
    }
    for cap in external_caps {
        if !(cap.q > 0.0) {
            return Err(domain(format!(
                "external Q `{}` must be positive",
                cap.label
            )));
        }
    }
    let q_radiative = (geom.wire_length / geom.pillar_height).powi(4);
    let calibration = CONTACT_CALIBRATION_OHM * CODATA.ohm();
    let q_contact = if contact_resistance == 0.0 {
        f64::INFINITY
    } else {
        CONTACT_Q_AT_CALIBRATION * calibration / contact_resistance
    };
    let mut budget = QBudget {
        q_radiative,
        q_contact,
        q_endcap: ENDCAP_Q,
        external_caps: external_caps.to_vec(),
        q_total: 0.0,
    };
    let inverse: f64 = budget
        .contributions()
        .filter(|q| q.is_finite())
        .map(|q| 1.0 / q)
        .sum();
    budget.q_total = 1.0 / inverse;
    Ok(budget)
}

/// RMS voltage √(k_B T / C_w) of the wire, statvolt.
pub fn thermal_voltage(temperature: f64, wire_capacitance: f64) -> Result<f64> {
    if temperature < 0.0 {
        return Err(domain("temperature must be non-negative"));
    }
    if !(wire_capacitance > 0.0) {
        return Err(domain("wire capacitance must be positive"));
    }
    Ok((CODATA.boltzmann * temperature / wire_capacitance).sqrt())
}
