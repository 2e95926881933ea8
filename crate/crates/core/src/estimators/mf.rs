use crate::error::{Error, Result};
use crate::mean_field::{self, NewtonConfig};
use crate::model::MomentsVector;

use super::{gradient_ascent, EstimateResult, Evaluation, GradientAscentConfig, Method};

/// Mean-field MLLE: `θ ← θ + γ(μ̂ − μ_MF(θ))`.
///
/// Each iteration warm-starts Newton from the previous `(p, q)`, so the
/// per-iteration cost does not grow with `n`. Fails with
/// [`Error::LowTemperatureEncountered`] if the mean-field system cannot be
/// solved at some iterate.
pub fn mf_mlle(
    moments: &MomentsVector,
    n: usize,
    cfg: &GradientAscentConfig,
    ncfg: &NewtonConfig,
) -> Result<EstimateResult> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    ncfg.validate()?;
    moments.check_attainable(n, false)?;
    let target = moments.as_array();
    let mut warm = ncfg.initial;
    let mut result = gradient_ascent(cfg, Method::MfMlle, |k, theta| {
        let step_cfg = NewtonConfig {
            initial: warm,
            ..*ncfg
        };
        let (state, _) = match mean_field::mf_state(theta, n, &step_cfg) {
            Err(Error::LowTemperatureSuspected) => {
                return Err(Error::LowTemperatureEncountered { iteration: k })
            }
            other => other?,
        };
        warm = Some((state.p, state.q));
        let mu = mean_field::moments_from_state(&state, n).as_array();
        Ok(Evaluation {
            gradient: [target[0] - mu[0], target[1] - mu[1], target[2] - mu[2]],
            objective: None,
        })
    })?;
    result.phase_at_solution = Some(mean_field::phase_of(&result.theta_star, n)?);
    Ok(result)
}
