//! Early-quantum formula layer in CGS units.
//!
//! Blackbody densities (Planck against Rayleigh–Jeans, including the
//! short-wavelength divergence of the classical integral), the
//! photoelectric equation, de Broglie wavelengths, Bohr orbit radii and
//! energies, and the hydrogen line table `w = R (1/k^2 - 1/l^2)`.
//!
//! [`Constants::reference`] carries the historical CGS values
//! `h = 6.625e-27 erg s`, `m_e = 9.11e-28 g`, `eps = 4.8025e-10 esu`,
//! `c = 2.99776e10 cm/s`; with them the Rydberg prefactor lands on
//! 109,739.53 / cm and the `k = 2` series on 6561, 4860, 4339, 4101 and
//! 3969 angstrom. The spectroscopic measurements those computed lines
//! answer to are kept separately in [`OBSERVED_BALMER_ANGSTROM`]; the
//! two lists genuinely differ (6563 observed vs 6561 computed) and both
//! are preserved rather than reconciled. Boltzmann's constant only
//! enters the blackbody shapes and is overridable.
//!
//! Every quantity carries a dimension tag in half-exponent CGS units
//! (the electrostatic unit has half-integer exponents), and the audit
//! in [`dims`] re-derives each formula's dimension at construction.

use crate::{OpError, Result};

/// Dimension bookkeeping for the CGS formulas.
pub mod dims {
    /// CGS dimension with exponents stored in halves, so the
    /// electrostatic unit `esu = g^{1/2} cm^{3/2} s^{-1}` stays integral.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Dim {
        /// Twice the exponent of centimeters.
        pub cm2: i32,
        /// Twice the exponent of grams.
        pub g2: i32,
        /// Twice the exponent of seconds.
        pub s2: i32,
        /// Twice the exponent of kelvin.
        pub k2: i32,
    }

    pub const DIMENSIONLESS: Dim = Dim { cm2: 0, g2: 0, s2: 0, k2: 0 };
    pub const CM: Dim = Dim { cm2: 2, g2: 0, s2: 0, k2: 0 };
    pub const PER_CM: Dim = Dim { cm2: -2, g2: 0, s2: 0, k2: 0 };
    pub const GRAM: Dim = Dim { cm2: 0, g2: 2, s2: 0, k2: 0 };
    pub const PER_SEC: Dim = Dim { cm2: 0, g2: 0, s2: -2, k2: 0 };
    pub const CM_PER_SEC: Dim = Dim { cm2: 2, g2: 0, s2: -2, k2: 0 };
    pub const KELVIN: Dim = Dim { cm2: 0, g2: 0, s2: 0, k2: 2 };
    pub const ERG: Dim = Dim { cm2: 4, g2: 2, s2: -4, k2: 0 };
    pub const ERG_SEC: Dim = Dim { cm2: 4, g2: 2, s2: -2, k2: 0 };
    pub const ERG_PER_KELVIN: Dim = Dim { cm2: 4, g2: 2, s2: -4, k2: -2 };
    pub const ESU: Dim = Dim { cm2: 3, g2: 1, s2: -2, k2: 0 };
    pub const ERG_PER_CM3: Dim = Dim { cm2: -2, g2: 2, s2: -4, k2: 0 };
    pub const ERG_PER_CM4: Dim = Dim { cm2: -4, g2: 2, s2: -4, k2: 0 };

    impl Dim {
        pub const fn mul(self, other: Dim) -> Dim {
            Dim {
                cm2: self.cm2 + other.cm2,
                g2: self.g2 + other.g2,
                s2: self.s2 + other.s2,
                k2: self.k2 + other.k2,
            }
        }

        pub const fn div(self, other: Dim) -> Dim {
            Dim {
                cm2: self.cm2 - other.cm2,
                g2: self.g2 - other.g2,
                s2: self.s2 - other.s2,
                k2: self.k2 - other.k2,
            }
        }

        pub const fn pow(self, n: i32) -> Dim {
            Dim {
                cm2: self.cm2 * n,
                g2: self.g2 * n,
                s2: self.s2 * n,
                k2: self.k2 * n,
            }
        }
    }
}

/// Angstroms per centimeter.
pub const ANGSTROM_PER_CM: f64 = 1.0e8;

/// The measured hydrogen visible-series wavelengths (angstrom), as read
/// off spectroscopically: 6563 (red) through 3921 (ultraviolet end).
/// Computed lines land close but not identically (6561 vs 6563; the
/// last entry reads 3921 where the formula gives 3969); both records
/// are kept as-is.
pub const OBSERVED_BALMER_ANGSTROM: [f64; 5] = [6563.0, 4861.0, 4380.0, 4102.0, 3921.0];

/// CGS constants for the formula layer. All strictly positive, audited
/// for dimensional consistency at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Quantum of action, erg s.
    pub h: f64,
    /// Electron rest mass, g.
    pub m_e: f64,
    /// Elementary charge, esu.
    pub epsilon: f64,
    /// Speed of light, cm/s.
    pub c: f64,
    /// Boltzmann constant, erg/K.
    pub k_b: f64,
}

impl Constants {
    /// The historical CGS values used throughout the formula layer.
    pub fn reference() -> Self {
        Self::new(6.625e-27, 9.11e-28, 4.8025e-10, 2.99776e10, 1.380e-16)
            .expect("reference constants are positive and consistent")
    }

    pub fn new(h: f64, m_e: f64, epsilon: f64, c: f64, k_b: f64) -> Result<Self> {
        for (name, v) in [
            ("h", h),
            ("m_e", m_e),
            ("epsilon", epsilon),
            ("c", c),
            ("k_b", k_b),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(OpError::InvalidInput(format!(
                    "constant {name} must be positive and finite, got {v}"
                )));
            }
        }
        audit_dimensions()?;
        Ok(Self {
            h,
            m_e,
            epsilon,
            c,
            k_b,
        })
    }

    /// `h / 2 pi`, the reduced quantum of action.
    pub fn hbar(&self) -> f64 {
        self.h / (2.0 * std::f64::consts::PI)
    }

    /// Blackbody spectral energy density `8 pi h c lambda^-5 / (e^x - 1)`
    /// with `x = hc / (k lambda T)`, in erg/cm^4. Vanishes in both the
    /// short- and long-wavelength limits.
    pub fn planck_density(&self, lambda: f64, temperature: f64) -> Result<f64> {
        check_positive("lambda", lambda)?;
        check_positive("temperature", temperature)?;
        let x = self.h * self.c / (self.k_b * lambda * temperature);
        if x > 700.0 {
            // exp(x) overflows; fold the exponential into log space.
            let ln_density = (8.0 * std::f64::consts::PI * self.h * self.c).ln()
                - 5.0 * lambda.ln()
                - x;
            return Ok(ln_density.exp());
        }
        Ok(8.0 * std::f64::consts::PI * self.h * self.c * lambda.powi(-5) / x.exp_m1())
    }

    /// Classical density `8 pi k T lambda^-4`, erg/cm^4; the
    /// long-wavelength limit of the quantum density, divergent under
    /// integration toward `lambda -> 0`.
    pub fn rayleigh_jeans_density(&self, lambda: f64, temperature: f64) -> Result<f64> {
        check_positive("lambda", lambda)?;
        check_positive("temperature", temperature)?;
        Ok(8.0 * std::f64::consts::PI * self.k_b * temperature * lambda.powi(-4))
    }

    /// Integral of the classical density from `lambda_min` to `r`:
    /// `(8 pi k T / 3)(lambda_min^-3 - r^-3)`, erg/cm^3. Diverges as
    /// `lambda_min -> 0`.
    pub fn uv_catastrophe_integral(&self, lambda_min: f64, r: f64, temperature: f64) -> Result<f64> {
        check_positive("lambda_min", lambda_min)?;
        check_positive("temperature", temperature)?;
        if lambda_min >= r {
            return Err(OpError::InvalidInput(format!(
                "integration range needs lambda_min < r, got {lambda_min} >= {r}"
            )));
        }
        Ok(8.0 * std::f64::consts::PI * self.k_b * temperature / 3.0
            * (lambda_min.powi(-3) - r.powi(-3)))
    }

    /// Maximum kinetic energy `h nu - a` of a photoelectron, erg;
    /// `None` when the frequency is below the emission threshold.
    pub fn photoelectric_max_ke(&self, nu: f64, work: f64) -> Option<f64> {
        let ke = self.h * nu - work;
        if ke >= 0.0 {
            Some(ke)
        } else {
            None
        }
    }

    /// Matter wavelength `h / (m v)`, cm.
    pub fn de_broglie_wavelength(&self, mass: f64, velocity: f64) -> Result<f64> {
        check_positive("mass", mass)?;
        check_positive("velocity", velocity)?;
        Ok(self.h / (mass * velocity))
    }

    /// Stable-orbit radius and total energy for quantum number `k`:
    /// `r = k^2 h^2 / (4 pi^2 m eps^2)` (cm) and
    /// `E = -2 pi^2 m eps^4 / (k^2 h^2)` (erg).
    pub fn bohr_orbit(&self, k: u32) -> Result<BohrOrbit> {
        if k < 1 {
            return Err(OpError::InvalidInput(
                "orbit index must be at least 1".into(),
            ));
        }
        let kf = k as f64;
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let radius_cm = kf * kf * self.h * self.h / (4.0 * pi2 * self.m_e * self.epsilon.powi(2));
        let energy_erg = -2.0 * pi2 * self.m_e * self.epsilon.powi(4) / (kf * kf * self.h * self.h);
        Ok(BohrOrbit {
            k,
            radius_cm,
            energy_erg,
        })
    }

    /// The wave-number prefactor `2 pi^2 m eps^4 / (h^3 c)`, 1/cm.
    pub fn rydberg(&self) -> f64 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        2.0 * pi2 * self.m_e * self.epsilon.powi(4) / (self.h.powi(3) * self.c)
    }

    /// Wave number `w = R (1/k^2 - 1/l^2)` (waves per cm) and the
    /// wavelength `1/w` in angstrom, for the transition `l -> k`.
    pub fn balmer_line(&self, k: u32, l: u32) -> Result<BalmerLine> {
        if k < 1 || l <= k {
            return Err(OpError::InvalidInput(format!(
                "transition needs 1 <= k < l, got k = {k}, l = {l}"
            )));
        }
        let wave_number = self.rydberg() * (1.0 / (k * k) as f64 - 1.0 / (l * l) as f64);
        Ok(BalmerLine {
            k,
            l,
            wave_number_per_cm: wave_number,
            wavelength_angstrom: ANGSTROM_PER_CM / wave_number,
        })
    }
}

/// Radius and total energy of a stable orbit.
#[derive(Debug, Clone, Copy)]
pub struct BohrOrbit {
    pub k: u32,
    pub radius_cm: f64,
    pub energy_erg: f64,
}

/// One line of the hydrogen series table.
#[derive(Debug, Clone, Copy)]
pub struct BalmerLine {
    pub k: u32,
    pub l: u32,
    pub wave_number_per_cm: f64,
    pub wavelength_angstrom: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(OpError::InvalidInput(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

/// Re-derive the dimension of every formula from the constants' tags.
pub fn audit_dimensions() -> Result<()> {
    use dims::*;
    let lambda = CM;
    let audit = [
        // 8 pi h c / lambda^5 (the exponential is dimensionless)
        (
            "planck_density",
            ERG_SEC.mul(CM_PER_SEC).div(lambda.pow(5)),
            ERG_PER_CM4,
        ),
        (
            "planck_exponent",
            ERG_SEC
                .mul(CM_PER_SEC)
                .div(ERG_PER_KELVIN.mul(lambda).mul(KELVIN)),
            DIMENSIONLESS,
        ),
        (
            "rayleigh_jeans_density",
            ERG_PER_KELVIN.mul(KELVIN).div(lambda.pow(4)),
            ERG_PER_CM4,
        ),
        (
            "uv_catastrophe_integral",
            ERG_PER_KELVIN.mul(KELVIN).div(lambda.pow(3)),
            ERG_PER_CM3,
        ),
        ("photoelectric", ERG_SEC.mul(PER_SEC), ERG),
        ("de_broglie", ERG_SEC.div(GRAM.mul(CM_PER_SEC)), CM),
        ("bohr_radius", ERG_SEC.pow(2).div(GRAM.mul(ESU.pow(2))), CM),
        ("bohr_energy", GRAM.mul(ESU.pow(4)).div(ERG_SEC.pow(2)), ERG),
        (
            "rydberg",
            GRAM.mul(ESU.pow(4)).div(ERG_SEC.pow(3).mul(CM_PER_SEC)),
            PER_CM,
        ),
    ];
    for (name, got, want) in audit {
        if got != want {
            return Err(OpError::InvalidInput(format!(
                "dimension audit failed for {name}: {got:?} != {want:?}"
            )));
        }
    }
    Ok(())
}
