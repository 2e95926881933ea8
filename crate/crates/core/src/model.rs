//! Parameter conventions for the three-parameter p-star model.
//!
//! Public estimator APIs speak [`NaturalParams`] `(θ1, θ2, θ3)`, the
//! exponent coefficients of `(E, S2, T)`. The Hamiltonian form
//! `(θ, σ, α) = (−θ1, −θ2, θ3)` is what the mean-field equations are
//! written in; `P(X) ∝ exp(−H(X))` with `H = θE + σS2 − αT`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, SufficientStats};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct NaturalParams {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianParams {
    pub theta: f64,
    pub sigma: f64,
    pub alpha: f64,
}

/// Expected (or averaged) edge, 2-star and triangle counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MomentsVector {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
}

impl NaturalParams {
    pub const ZERO: NaturalParams = NaturalParams {
        theta1: 0.0,
        theta2: 0.0,
        theta3: 0.0,
    };

    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Self {
        NaturalParams {
            theta1,
            theta2,
            theta3,
        }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        NaturalParams::new(a[0], a[1], a[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.theta1, self.theta2, self.theta3]
    }

    pub fn check_finite(&self) -> Result<()> {
        for (name, v) in [
            ("theta1", self.theta1),
            ("theta2", self.theta2),
            ("theta3", self.theta3),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(())
    }

    pub fn dot(&self, x: [f64; 3]) -> f64 {
        self.theta1 * x[0] + self.theta2 * x[1] + self.theta3 * x[2]
    }

    pub fn to_hamiltonian(&self) -> Result<HamiltonianParams> {
        self.check_finite()?;
        Ok(HamiltonianParams {
            theta: -self.theta1,
            sigma: -self.theta2,
            alpha: self.theta3,
        })
    }
}

impl HamiltonianParams {
    pub fn new(theta: f64, sigma: f64, alpha: f64) -> Self {
        HamiltonianParams {
            theta,
            sigma,
            alpha,
        }
    }

    pub fn check_finite(&self) -> Result<()> {
        for (name, v) in [
            ("theta", self.theta),
            ("sigma", self.sigma),
            ("alpha", self.alpha),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        Ok(())
    }

    pub fn to_natural(&self) -> Result<NaturalParams> {
        self.check_finite()?;
        Ok(NaturalParams {
            theta1: -self.theta,
            theta2: -self.sigma,
            theta3: self.alpha,
        })
    }
}

impl MomentsVector {
    pub fn new(mu1: f64, mu2: f64, mu3: f64) -> Self {
        MomentsVector { mu1, mu2, mu3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        MomentsVector::new(a[0], a[1], a[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.mu1, self.mu2, self.mu3]
    }

    /// Checks `0 <= mu_k <= max_k` and, when `strict`, that no component sits
    /// on the boundary (where the likelihood maximum is at infinity).
    pub fn check_attainable(&self, n: usize, strict: bool) -> Result<()> {
        let max = SufficientStats::maxima(n).as_f64();
        for (k, (&m, &hi)) in self.as_array().iter().zip(&max).enumerate() {
            if !m.is_finite() || m < 0.0 || m > hi {
                return Err(Error::InvalidMoments(format!(
                    "component {} = {m} not in [0, {hi}] for n = {n}",
                    k + 1
                )));
            }
            if strict && (m == 0.0 || m == hi) {
                return Err(Error::BoundaryMoments);
            }
        }
        Ok(())
    }
}

impl From<SufficientStats> for MomentsVector {
    fn from(s: SufficientStats) -> Self {
        MomentsVector::from_array(s.as_f64())
    }
}

pub fn to_hamiltonian(p: &NaturalParams) -> Result<HamiltonianParams> {
    p.to_hamiltonian()
}

pub fn to_natural(h: &HamiltonianParams) -> Result<NaturalParams> {
    h.to_natural()
}

/// `θ1·E + θ2·S2 + θ3·T`, the log-probability up to `−A(θ)`.
pub fn log_weight(p: &NaturalParams, s: &SufficientStats) -> f64 {
    p.dot(s.as_f64())
}

/// `θ·E + σ·S2 − α·T`.
pub fn hamiltonian(h: &HamiltonianParams, s: &SufficientStats) -> f64 {
    let [e, s2, t] = s.as_f64();
    h.theta * e + h.sigma * s2 - h.alpha * t
}

/// `H(X⁺ij) − H(X⁻ij)` from change statistics, without a global recount.
pub fn delta_hamiltonian(h: &HamiltonianParams, g: &Graph, i: usize, j: usize) -> Result<f64> {
    let d = g.change_stats(i, j)?.as_f64();
    Ok(h.theta * d[0] + h.sigma * d[1] - h.alpha * d[2])
}
