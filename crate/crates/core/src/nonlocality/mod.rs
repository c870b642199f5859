//! Nonlocality and genuine-entanglement certificates: the Horodecki CHSH
//! criterion, projected CHSH for qudits, the Svetlichny singular-value bound,
//! the T and NS three-way inequalities, genuine multipartite concurrence, and
//! brute-force measurement-setting oracles for each closed form.

mod chsh;
mod correlations;
mod gme;
mod search;
mod tripartite;

pub use chsh::{
    chsh_grid_oracle, chsh_max, chsh_operator, chsh_value, horodecki_m, projected_chsh,
    theorem2_witness, ProjectorPair,
};
pub use correlations::{
    correlation_matrix, correlation_tensor3, CorrelationMatrix, CorrelationTensor3,
};
pub use gme::{c_gme_converted, c_gme_pure};
pub use search::SearchOptions;
pub use tripartite::{
    ns_oracle, ns_value, svetlichny_bound, svetlichny_oracle, svetlichny_value,
    t_reference_settings, t_value, TripartiteSettings,
};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{pauli, ComplexMatrix};
use crate::tol;

/// A dichotomic qubit observable `a . sigma`, stored as its unit Bloch vector.
/// Serialized as the spherical pair `[theta, phi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    bloch: [f64; 3],
}

impl MeasurementSetting {
    pub fn new(bloch: [f64; 3]) -> Result<Self> {
        let norm = (bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol::UNIT_NORM {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self { bloch })
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self { bloch: [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()] }
    }

    /// Normalize an arbitrary nonzero vector onto the Bloch sphere.
    pub fn from_direction(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self { bloch: [v[0] / norm, v[1] / norm, v[2] / norm] })
    }

    pub fn x() -> Self {
        Self { bloch: [1.0, 0.0, 0.0] }
    }

    pub fn y() -> Self {
        Self { bloch: [0.0, 1.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { bloch: [0.0, 0.0, 1.0] }
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    /// Canonical spherical angles: `theta` in `[0, pi]`, `phi` in `[0, 2pi)`,
    /// with `phi = 0` at the poles so the representation is unique.
    pub fn angles(&self) -> (f64, f64) {
        let [x, y, z] = self.bloch;
        let theta = z.clamp(-1.0, 1.0).acos();
        let r = x.hypot(y);
        if r < 1e-12 {
            return (theta, 0.0);
        }
        let mut phi = y.atan2(x);
        if phi < 0.0 {
            phi += 2.0 * std::f64::consts::PI;
        }
        (theta, phi)
    }

    /// The observable `a . sigma` as a 2x2 Hermitian matrix.
    pub fn observable(&self) -> ComplexMatrix {
        let [x, y, z] = self.bloch;
        let mut m = pauli(1).scale(C64::new(x, 0.0));
        m = m.add(&pauli(2).scale(C64::new(y, 0.0)));
        m.add(&pauli(3).scale(C64::new(z, 0.0)))
    }
}

impl Serialize for MeasurementSetting {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (theta, phi) = self.angles();
        [theta, phi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MeasurementSetting {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [theta, phi] = <[f64; 2]>::deserialize(deserializer)?;
        Ok(Self::from_angles(theta, phi))
    }
}

/// Named scalar certificate with its classical bound and verdict.
///
/// `violated` means the certificate actually establishes nonlocality (or
/// entanglement). For direct evaluations that is simply
/// `value > bound + 1e-9`; the Svetlichny bound certificate additionally
/// requires its oracle to clear the classical bound, since the singular-value
/// bound alone only upper-bounds the quantum value.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateReport {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub violated: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub settings: Option<Vec<MeasurementSetting>>,
}

impl CertificateReport {
    pub fn new(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound,
            violated: value > bound + tol::CERT,
            settings: None,
        }
    }

    pub fn with_settings(mut self, settings: Vec<MeasurementSetting>) -> Self {
        self.settings = Some(settings);
        self
    }
}
