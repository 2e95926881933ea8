//! Mean-field approximation of the edge, 2-star and triangle probabilities.
//!
//! Replacing the fluctuating neighbourhood sums around an edge by their
//! averages gives closed equations for the mean edge probability `p` and
//! the mean 2-star probability `q`:
//!
//! ```text
//! p = F_p(p, q) = 1 / (exp(θ − α(n−2)q + 2σ(n−2)p) + 1)
//! q = F_q(p, q) = c / ((exp(θ − α(n−3)q + σ(2n−5)p) + 1)² + c − 1),
//!     c = e^{−σ}(1 + (e^α − 1)p)
//! ```
//!
//! which are solved with a 2×2 Newton iteration on `G = (p − F_p, q − F_q)`.
//! The triangle probability `r` then follows in closed form and the moments
//! are `(C(n,2)p, n·C(n−1,2)q, C(n,3)r)`. All formulas use the Hamiltonian
//! convention `(θ, σ, α)`.
//!
//! The scalar map `φ(p) = 1/(1 + exp(Ψ(p)))`, `Ψ(p) = θ + 2σ(n−2)p − α(n−2)p²`
//! classifies parameters: a unique stable fixed point is the high-temperature
//! phase where the approximation is trustworthy; several fixed points mean
//! low temperature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SufficientStats;
use crate::model::{HamiltonianParams, MomentsVector, NaturalParams};

/// Iterates are kept in `[CLAMP_EPS, 1 − CLAMP_EPS]`.
pub const CLAMP_EPS: f64 = 1e-12;
/// Below this `|det J|` the Newton step is refused.
pub const SINGULAR_DET: f64 = 1e-14;
pub const DEFAULT_GRID: usize = 10_000;
/// Bracket width at which fixed-point bisection stops.
pub const BISECTION_TOL: f64 = 1e-12;
pub const FALLBACK_DAMPING: f64 = 0.5;
pub const FALLBACK_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonConfig {
    /// Threshold on the residual norm `‖(G_p, G_q)‖₂`.
    pub tol: f64,
    pub max_iter: usize,
    /// Starting point `(p0, q0)`; when absent the scalar fixed point is used.
    pub initial: Option<(f64, f64)>,
    pub damping: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            tol: 1e-12,
            max_iter: 100,
            initial: None,
            damping: 1.0,
        }
    }
}

impl NewtonConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "damping must be in (0, 1], got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Phase {
    High,
    Low,
    Boundary,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::High => "HIGH",
            Phase::Low => "LOW",
            Phase::Boundary => "BOUNDARY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagnostic {
    pub fixed_points: Vec<f64>,
    /// `φ'(p*)` at each fixed point.
    pub derivatives: Vec<f64>,
    pub phase: Phase,
}

/// Mean edge, 2-star and triangle probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MfState {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSolution {
    pub p: f64,
    pub q: f64,
    pub iterations: usize,
    /// Reached by damped fixed-point sweeps after Newton failed.
    pub used_fallback: bool,
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::BadDimension(n))
    } else {
        Ok(())
    }
}

/// `1 / (1 + e^x)` without overflow.
#[inline]
fn logistic_neg(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

#[inline]
fn clamp_unit(x: f64) -> f64 {
    x.clamp(CLAMP_EPS, 1.0 - CLAMP_EPS)
}

pub fn psi(h: &HamiltonianParams, n: usize, p: f64) -> Result<f64> {
    check_n(n)?;
    let m = (n - 2) as f64;
    Ok(h.theta + 2.0 * h.sigma * m * p - h.alpha * m * p * p)
}

pub fn phi(h: &HamiltonianParams, n: usize, p: f64) -> Result<f64> {
    Ok(logistic_neg(psi(h, n, p)?))
}

/// `φ'(p) = −Ψ'(p)·φ(p)(1 − φ(p))`.
pub fn phi_prime(h: &HamiltonianParams, n: usize, p: f64) -> Result<f64> {
    let f = phi(h, n, p)?;
    let m = (n - 2) as f64;
    let dpsi = 2.0 * h.sigma * m - 2.0 * h.alpha * m * p;
    Ok(-dpsi * f * (1.0 - f))
}

pub fn find_fixed_points(h: &HamiltonianParams, n: usize) -> Result<PhaseDiagnostic> {
    find_fixed_points_with_grid(h, n, DEFAULT_GRID)
}

/// Roots of `φ(p) − p` on (0, 1) by a sign-change scan on `grid` uniform
/// cells, each refined by bisection.
pub fn find_fixed_points_with_grid(
    h: &HamiltonianParams,
    n: usize,
    grid: usize,
) -> Result<PhaseDiagnostic> {
    check_n(n)?;
    h.check_finite()?;
    if grid < 2 {
        return Err(Error::InvalidConfig(
            "fixed-point grid needs >= 2 cells".into(),
        ));
    }
    let f = |p: f64| logistic_neg(psi(h, n, p).unwrap()) - p;
    let mut roots = Vec::new();
    let mut a = 0.0;
    let mut fa = f(a);
    for k in 1..=grid {
        let b = k as f64 / grid as f64;
        let fb = f(b);
        if fb == 0.0 && b < 1.0 {
            roots.push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > BISECTION_TOL {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    let derivatives: Vec<f64> = roots.iter().map(|&p| phi_prime(h, n, p).unwrap()).collect();
    let phase = match roots.len() {
        0 => Phase::Boundary,
        1 if derivatives[0].abs() < 1.0 => Phase::High,
        1 => Phase::Boundary,
        _ => Phase::Low,
    };
    Ok(PhaseDiagnostic {
        fixed_points: roots,
        derivatives,
        phase,
    })
}

/// Residuals and analytic Jacobian of `G = (p − F_p, q − F_q)`.
fn system(h: &HamiltonianParams, n: usize, p: f64, q: f64) -> ([f64; 2], [[f64; 2]; 2]) {
    let nf = n as f64;
    let (theta, sigma, alpha) = (h.theta, h.sigma, h.alpha);

    let u = theta - alpha * (nf - 2.0) * q + 2.0 * sigma * (nf - 2.0) * p;
    let fp = logistic_neg(u);
    let s = fp * (1.0 - fp); // −dF_p/du
    let dfp_dp = -s * 2.0 * sigma * (nf - 2.0);
    let dfp_dq = s * alpha * (nf - 2.0);

    let e_sig = (-sigma).exp();
    let c = e_sig * (1.0 + alpha.exp_m1() * p);
    let c_p = e_sig * alpha.exp_m1();
    let v = theta - alpha * (nf - 3.0) * q + sigma * (2.0 * nf - 5.0) * p;
    let ev = v.exp();
    let w = ev + 1.0;
    let d = w * w + c - 1.0;
    let (fq, dfq_dp, dfq_dq) = if d.is_finite() && (2.0 * w * ev).is_finite() {
        let fq = c / d;
        let v_p = sigma * (2.0 * nf - 5.0);
        let v_q = -alpha * (nf - 3.0);
        let d_p = 2.0 * w * ev * v_p + c_p;
        let d_q = 2.0 * w * ev * v_q;
        (fq, c_p / d - fq * d_p / d, -fq * d_q / d)
    } else {
        (0.0, 0.0, 0.0)
    };

    (
        [p - fp, q - fq],
        [[1.0 - dfp_dp, -dfp_dq], [-dfq_dp, 1.0 - dfq_dq]],
    )
}

pub fn mf_residuals(h: &HamiltonianParams, n: usize, p: f64, q: f64) -> Result<(f64, f64)> {
    check_n(n)?;
    let ([gp, gq], _) = system(h, n, p, q);
    Ok((gp, gq))
}

/// `[[∂G_p/∂p, ∂G_p/∂q], [∂G_q/∂p, ∂G_q/∂q]]`.
pub fn mf_jacobian(h: &HamiltonianParams, n: usize, p: f64, q: f64) -> Result<[[f64; 2]; 2]> {
    check_n(n)?;
    Ok(system(h, n, p, q).1)
}

/// Default starting point: the scalar fixed point in the high-temperature
/// phase, `p0 = 0.5` otherwise; `q0 = p0²`.
pub fn initial_guess(h: &HamiltonianParams, n: usize) -> Result<(f64, f64)> {
    let diag = find_fixed_points(h, n)?;
    let p0 = match diag.phase {
        Phase::High => diag.fixed_points[0],
        _ => 0.5,
    };
    Ok((p0, p0 * p0))
}

/// Newton iteration `x ← x − λ·J⁻¹G(x)` until `‖G‖₂ ≤ tol`.
pub fn newton_solve(h: &HamiltonianParams, n: usize, cfg: &NewtonConfig) -> Result<NewtonSolution> {
    check_n(n)?;
    h.check_finite()?;
    cfg.validate()?;
    let (mut p, mut q) = match cfg.initial {
        Some((p0, q0)) => (clamp_unit(p0), clamp_unit(q0)),
        None => initial_guess(h, n)?,
    };
    let mut residual = f64::INFINITY;
    for it in 0..=cfg.max_iter {
        let ([gp, gq], j) = system(h, n, p, q);
        residual = gp.hypot(gq);
        if residual <= cfg.tol {
            return Ok(NewtonSolution {
                p,
                q,
                iterations: it,
                used_fallback: false,
            });
        }
        if it == cfg.max_iter || !residual.is_finite() {
            break;
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.is_nan() || det.abs() < SINGULAR_DET {
            return Err(Error::SingularJacobian { det });
        }
        let dp = (j[1][1] * gp - j[0][1] * gq) / det;
        let dq = (j[0][0] * gq - j[1][0] * gp) / det;
        p = clamp_unit(p - cfg.damping * dp);
        q = clamp_unit(q - cfg.damping * dq);
    }
    Err(Error::NewtonMaxIter {
        iterations: cfg.max_iter,
        residual,
    })
}

/// Damped sweeps `x ← (1−λ)x + λF(x)`; used when Newton breaks down.
pub fn damped_fixed_point(
    h: &HamiltonianParams,
    n: usize,
    start: (f64, f64),
    damping: f64,
    max_sweeps: usize,
    tol: f64,
) -> Result<NewtonSolution> {
    check_n(n)?;
    let (mut p, mut q) = (clamp_unit(start.0), clamp_unit(start.1));
    for sweep in 0..=max_sweeps {
        let ([gp, gq], _) = system(h, n, p, q);
        if gp.hypot(gq) <= tol {
            return Ok(NewtonSolution {
                p,
                q,
                iterations: sweep,
                used_fallback: true,
            });
        }
        p = clamp_unit(p - damping * gp);
        q = clamp_unit(q - damping * gq);
    }
    Err(Error::LowTemperatureSuspected)
}

/// Newton with the damped fixed-point fallback. Fails with
/// [`Error::LowTemperatureSuspected`] when both give up.
pub fn solve(h: &HamiltonianParams, n: usize, cfg: &NewtonConfig) -> Result<NewtonSolution> {
    match newton_solve(h, n, cfg) {
        Err(Error::SingularJacobian { .. }) | Err(Error::NewtonMaxIter { .. }) => {
            let start = match cfg.initial {
                Some(x) => x,
                None => initial_guess(h, n)?,
            };
            damped_fixed_point(h, n, start, FALLBACK_DAMPING, FALLBACK_SWEEPS, cfg.tol)
        }
        other => other,
    }
}

/// Closed-form triangle probability given a solved `(p, q)`.
pub fn mf_r(h: &HamiltonianParams, n: usize, p: f64, q: f64) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let x = h.theta - h.alpha * q * (nf - 3.0) + 2.0 * h.sigma * (nf - 3.0) * p + h.sigma;
    let w = x.exp() + 1.0;
    let ea = h.alpha.exp();
    let denom = w * w * w + h.alpha.exp_m1();
    Ok(if denom.is_finite() { ea / denom } else { 0.0 })
}

/// Mean-field probabilities `(p, q, r)` with the solver's report.
pub fn mf_state(
    p: &NaturalParams,
    n: usize,
    cfg: &NewtonConfig,
) -> Result<(MfState, NewtonSolution)> {
    let h = p.to_hamiltonian()?;
    let sol = solve(&h, n, cfg)?;
    let r = mf_r(&h, n, sol.p, sol.q)?;
    Ok((
        MfState {
            p: sol.p,
            q: sol.q,
            r,
        },
        sol,
    ))
}

pub fn moments_from_state(s: &MfState, n: usize) -> MomentsVector {
    let [e, s2, t] = SufficientStats::maxima(n).as_f64();
    MomentsVector::new(e * s.p, s2 * s.q, t * s.r)
}

/// Approximate `(μ1, μ2, μ3)`.
pub fn mf_moments(p: &NaturalParams, n: usize, cfg: &NewtonConfig) -> Result<MomentsVector> {
    let (state, _) = mf_state(p, n, cfg)?;
    Ok(moments_from_state(&state, n))
}

/// Phase diagnostic for natural parameters.
pub fn phase_of(p: &NaturalParams, n: usize) -> Result<PhaseDiagnostic> {
    find_fixed_points(&p.to_hamiltonian()?, n)
}
