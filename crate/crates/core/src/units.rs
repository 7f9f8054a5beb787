//! Physical constants and the lab-unit boundary.
//!
//! Everything inside the crate is Gaussian-CGS: lengths in cm, charge in esu,
//! capacitance in cm, energies in erg (or as angular frequency E/ħ in rad/s),
//! fields in statV/cm. Values cross into laboratory units (μm, GHz, fF, Ω, ...)
//! only through [`to_lab_units`] and [`from_lab_units`].

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Fixed constant set, CODATA 2018, Gaussian-CGS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// esu
    pub electron_charge: f64,
    /// cm
    pub bohr_radius: f64,
    /// erg·s
    pub hbar: f64,
    /// erg/K
    pub boltzmann: f64,
    pub fine_structure: f64,
    /// cm/s
    pub speed_of_light: f64,
    /// g, ⁸⁷Rb
    pub rubidium_mass: f64,
    /// g
    pub atomic_mass_unit: f64,
}

/// The constant set every formula in the crate uses.
///
/// The Gaussian electron charge is `sqrt(α ħ c)` evaluated at 30 digits, so the
/// set is internally consistent to rounding.
pub const CODATA: Constants = Constants {
    electron_charge: 4.803_204_712_413_463e-10,
    bohr_radius: 5.291_772_109_03e-9,
    hbar: 1.054_571_817e-27,
    boltzmann: 1.380_649e-16,
    fine_structure: 7.297_352_569_3e-3,
    speed_of_light: 2.997_924_58e10,
    rubidium_mass: 1.443_160_895_112_754_8e-22,
    atomic_mass_unit: 1.660_539_066_60e-24,
};

impl Constants {
    /// Hydrogen Rydberg energy e²/2a₀ (infinite nuclear mass), erg.
    pub fn rydberg_energy(&self) -> f64 {
        self.electron_charge * self.electron_charge / (2.0 * self.bohr_radius)
    }

    /// α recomputed from e, ħ and c.
    pub fn fine_structure_from_charge(&self) -> f64 {
        self.electron_charge * self.electron_charge / (self.hbar * self.speed_of_light)
    }

    /// 1 F expressed as Gaussian capacitance (cm).
    pub fn farad(&self) -> f64 {
        self.speed_of_light * self.speed_of_light * 1e-9
    }

    /// 1 V expressed in statvolt.
    pub fn volt(&self) -> f64 {
        1e8 / self.speed_of_light
    }

    /// 1 C expressed in esu.
    pub fn coulomb(&self) -> f64 {
        self.speed_of_light / 10.0
    }

    /// 1 Ω expressed in Gaussian resistance (s/cm).
    pub fn ohm(&self) -> f64 {
        1.0 / self.farad()
    }

    pub fn table(&self) -> Vec<(&'static str, f64, &'static str)> {
        vec![
            ("electron_charge", self.electron_charge, "esu"),
            ("bohr_radius", self.bohr_radius, "cm"),
            ("hbar", self.hbar, "erg*s"),
            ("boltzmann", self.boltzmann, "erg/K"),
            ("fine_structure", self.fine_structure, "1"),
            ("speed_of_light", self.speed_of_light, "cm/s"),
            ("rubidium_mass", self.rubidium_mass, "g"),
            ("atomic_mass_unit", self.atomic_mass_unit, "g"),
        ]
    }
}

/// Physical dimensions known to the unit boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    Length,
    Time,
    /// ω in rad/s. Never implicitly interchangeable with [`Dimension::OrdinaryFrequency`].
    AngularFrequency,
    /// ν in Hz.
    OrdinaryFrequency,
    Energy,
    Charge,
    /// Gaussian capacitance has the dimension of length.
    Capacitance,
    ElectricField,
    Voltage,
    Temperature,
    Mass,
    Resistance,
    Force,
    DipoleMoment,
    Volume,
    Velocity,
    Dimensionless,
}

impl Dimension {
    pub const ALL: [Dimension; 17] = [
        Dimension::Length,
        Dimension::Time,
        Dimension::AngularFrequency,
        Dimension::OrdinaryFrequency,
        Dimension::Energy,
        Dimension::Charge,
        Dimension::Capacitance,
        Dimension::ElectricField,
        Dimension::Voltage,
        Dimension::Temperature,
        Dimension::Mass,
        Dimension::Resistance,
        Dimension::Force,
        Dimension::DipoleMoment,
        Dimension::Volume,
        Dimension::Velocity,
        Dimension::Dimensionless,
    ];

    /// Canonical lab unit used for reporting.
    pub fn lab_unit(self) -> &'static str {
        match self {
            Dimension::Length => "um",
            Dimension::Time => "us",
            Dimension::AngularFrequency => "2pi*MHz",
            Dimension::OrdinaryFrequency => "MHz",
            Dimension::Energy => "h*MHz",
            Dimension::Charge => "e",
            Dimension::Capacitance => "fF",
            Dimension::ElectricField => "V/cm",
            Dimension::Voltage => "uV",
            Dimension::Temperature => "mK",
            Dimension::Mass => "u",
            Dimension::Resistance => "Ohm",
            Dimension::Force => "dyn",
            Dimension::DipoleMoment => "e*a0",
            Dimension::Volume => "mm^3",
            Dimension::Velocity => "c",
            Dimension::Dimensionless => "1",
        }
    }
}

/// A value tagged with its dimension, stored in Gaussian-CGS.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    /// Internal (CGS) value, checked against the expected dimension.
    pub fn value_in(&self, expected: Dimension) -> Result<f64> {
        if self.dimension == expected {
            Ok(self.value)
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dimension,
            })
        }
    }

    pub fn checked_add(self, other: Quantity) -> Result<Quantity> {
        let v = other.value_in(self.dimension)?;
        Ok(Quantity::new(self.value + v, self.dimension))
    }

    /// ν → ω = 2πν. Fails for anything but an ordinary frequency.
    pub fn to_angular(self) -> Result<Quantity> {
        let nu = self.value_in(Dimension::OrdinaryFrequency)?;
        Ok(Quantity::new(2.0 * PI * nu, Dimension::AngularFrequency))
    }

    /// ω → ν = ω/2π. Fails for anything but an angular frequency.
    pub fn to_ordinary(self) -> Result<Quantity> {
        let omega = self.value_in(Dimension::AngularFrequency)?;
        Ok(Quantity::new(
            omega / (2.0 * PI),
            Dimension::OrdinaryFrequency,
        ))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, unit) = to_lab_units(*self);
        write!(f, "{v} {unit}")
    }
}

/// Scale factor from one lab unit to the internal CGS value.
fn unit_scale(label: &str) -> Option<(Dimension, f64)> {
    let c = &CODATA;
    let two_pi = 2.0 * PI;
    let normalized = label.trim().replace(['μ', 'µ'], "u");

    // "2pi*MHz", "2π·MHz", "2pi MHz" all name an angular frequency.
    for prefix in ["2pi*", "2pi·", "2pi ", "2π*", "2π·", "2π "] {
        if let Some(rest) = normalized.strip_prefix(prefix) {
            return match unit_scale(rest.trim()) {
                Some((Dimension::OrdinaryFrequency, s)) => {
                    Some((Dimension::AngularFrequency, two_pi * s))
                }
                _ => None,
            };
        }
    }
    for prefix in ["h*", "h·", "h "] {
        if let Some(rest) = normalized.strip_prefix(prefix) {
            return match unit_scale(rest.trim()) {
                Some((Dimension::OrdinaryFrequency, s)) => {
                    Some((Dimension::Energy, two_pi * c.hbar * s))
                }
                _ => None,
            };
        }
    }

    let entry = match normalized.as_str() {
        "cm" => (Dimension::Length, 1.0),
        "m" => (Dimension::Length, 100.0),
        "mm" => (Dimension::Length, 0.1),
        "um" => (Dimension::Length, 1e-4),
        "nm" => (Dimension::Length, 1e-7),

        "s" => (Dimension::Time, 1.0),
        "ms" => (Dimension::Time, 1e-3),
        "us" => (Dimension::Time, 1e-6),
        "ns" => (Dimension::Time, 1e-9),

        "rad/s" => (Dimension::AngularFrequency, 1.0),

        "Hz" => (Dimension::OrdinaryFrequency, 1.0),
        "kHz" => (Dimension::OrdinaryFrequency, 1e3),
        "MHz" => (Dimension::OrdinaryFrequency, 1e6),
        "GHz" => (Dimension::OrdinaryFrequency, 1e9),
        "THz" => (Dimension::OrdinaryFrequency, 1e12),

        "erg" => (Dimension::Energy, 1.0),
        "eV" => (Dimension::Energy, 1.602_176_634e-12),

        "esu" | "statC" => (Dimension::Charge, 1.0),
        "e" => (Dimension::Charge, c.electron_charge),
        "C" => (Dimension::Charge, c.coulomb()),

        "cm(cap)" => (Dimension::Capacitance, 1.0),
        "F" => (Dimension::Capacitance, c.farad()),
        "pF" => (Dimension::Capacitance, c.farad() * 1e-12),
        "fF" => (Dimension::Capacitance, c.farad() * 1e-15),
        "aF" => (Dimension::Capacitance, c.farad() * 1e-18),

        "statV/cm" => (Dimension::ElectricField, 1.0),
        "V/cm" => (Dimension::ElectricField, c.volt()),
        "V/m" => (Dimension::ElectricField, c.volt() * 1e-2),

        "statV" => (Dimension::Voltage, 1.0),
        "V" => (Dimension::Voltage, c.volt()),
        "mV" => (Dimension::Voltage, c.volt() * 1e-3),
        "uV" => (Dimension::Voltage, c.volt() * 1e-6),
        "nV" => (Dimension::Voltage, c.volt() * 1e-9),

        "K" => (Dimension::Temperature, 1.0),
        "mK" => (Dimension::Temperature, 1e-3),
        "uK" => (Dimension::Temperature, 1e-6),

        "g" => (Dimension::Mass, 1.0),
        "kg" => (Dimension::Mass, 1e3),
        "u" | "amu" => (Dimension::Mass, c.atomic_mass_unit),

        "s/cm" => (Dimension::Resistance, 1.0),
        "Ohm" | "ohm" | "Ω" => (Dimension::Resistance, c.ohm()),
        "mOhm" | "mΩ" => (Dimension::Resistance, c.ohm() * 1e-3),
        "kOhm" | "kΩ" => (Dimension::Resistance, c.ohm() * 1e3),

        "dyn" => (Dimension::Force, 1.0),
        "N" => (Dimension::Force, 1e5),

        "esu*cm" | "esu·cm" => (Dimension::DipoleMoment, 1.0),
        "e*a0" | "e·a0" | "ea0" => (Dimension::DipoleMoment, c.electron_charge * c.bohr_radius),
        "D" | "debye" => (Dimension::DipoleMoment, 1e-18),

        "cm^3" => (Dimension::Volume, 1.0),
        "mm^3" => (Dimension::Volume, 1e-3),
        "um^3" => (Dimension::Volume, 1e-12),

        "cm/s" => (Dimension::Velocity, 1.0),
        "m/s" => (Dimension::Velocity, 100.0),
        "c" => (Dimension::Velocity, c.speed_of_light),

        "" | "1" => (Dimension::Dimensionless, 1.0),
        _ => return None,
    };
    Some(entry)
}

/// Integer divisor equivalent to `scale` when `scale` is 1/n (e.g. mm = cm/10),
/// so that decimal inputs like 3 mm land on the nearest double to 0.3 cm.
fn reciprocal(scale: f64) -> Option<f64> {
    let n = (1.0 / scale).round();
    (scale < 1.0 && 1.0 / n == scale).then_some(n)
}

/// Express a quantity in its canonical lab unit.
///
/// Angular frequencies are reported as ν = ω/2π with the label `2pi*MHz`;
/// energies as E/h with the label `h*MHz`.
pub fn to_lab_units(q: Quantity) -> (f64, &'static str) {
    let label = q.dimension.lab_unit();
    // Every dimension's lab label is registered in `unit_scale`.
    let (_, scale) = unit_scale(label).expect("lab unit registered");
    let value = match reciprocal(scale) {
        Some(n) => q.value * n,
        None => q.value / scale,
    };
    (value, label)
}

/// Build a quantity from a value and a lab-unit label such as `"um"` or `"2pi*kHz"`.
pub fn from_lab_units(value: f64, label: &str) -> Result<Quantity> {
    let (dimension, scale) =
        unit_scale(label).ok_or_else(|| Error::UnknownUnit(label.trim().to_string()))?;
    let value = match reciprocal(scale) {
        Some(n) => value / n,
        None => value * scale,
    };
    Ok(Quantity::new(value, dimension))
}

/// Parse `"10 um"`, `"3mm"`, `"1e6"` (dimensionless) and the like.
pub fn parse_quantity(text: &str) -> Result<Quantity> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, ch)| {
            // The numeric prefix ends at the first character that cannot
            // continue a float literal; an 'e' only continues it when followed
            // by a digit or sign.
            !(ch.is_ascii_digit()
                || ch == '.'
                || ch == '-'
                || ch == '+'
                || ((ch == 'e' || ch == 'E')
                    && text[i + 1..]
                        .chars()
                        .next()
                        .is_some_and(|n| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (number, unit) = text.split_at(split);
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| Error::Parse(text.to_string()))?;
    from_lab_units(value, unit)
}
