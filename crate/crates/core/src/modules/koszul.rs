use serde::Serialize;

use crate::algebra::TruncatedGradedAlgebra;

use super::{shift, syzygy_data, top, DimensionVector, GradedRightModule, ModuleError, SyzygyData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulStatus {
    /// `Ω^n M` generated in degree `n` for every checked `n`.
    KoszulUpTo,
    NotKoszul,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoszulVerdict {
    pub status: KoszulStatus,
    pub up_to: usize,
    /// Number of steps `n = 0, 1, ...` confirmed.
    pub verified_steps: usize,
    /// First step whose normalized syzygy is not generated in degree 0.
    pub failure_step: Option<usize>,
    /// Generator degrees of `F^n M` at the failing step.
    pub failure_generator_degrees: Vec<i32>,
    /// Step at which the degree window ran out.
    pub exhausted_at: Option<usize>,
    /// True when some checked step had components above the window.
    pub window_limited: bool,
    /// True when a step was zero, so every later step holds as well.
    pub terminated: bool,
    /// Dimension vectors of `F^n M` for the steps examined.
    pub dims: Vec<DimensionVector>,
}

/// Checks `F^n M` generated in degree 0 for `n = 0..=up_to`, returning the
/// verdict and the syzygy data of every step that was resolved.
pub fn koszul_tower(
    alg: &TruncatedGradedAlgebra,
    m: &GradedRightModule,
    up_to: usize,
) -> Result<(KoszulVerdict, Vec<SyzygyData>), ModuleError> {
    let mut verdict = KoszulVerdict {
        status: KoszulStatus::KoszulUpTo,
        up_to,
        verified_steps: 0,
        failure_step: None,
        failure_generator_degrees: vec![],
        exhausted_at: None,
        window_limited: false,
        terminated: false,
        dims: vec![],
    };
    let mut tower = Vec::new();
    let mut cur = m.clone().trimmed();
    for n in 0..=up_to {
        verdict.dims.push(cur.dimension_vector());
        if cur.is_bounded() && cur.is_zero_in_window() {
            verdict.terminated = true;
            verdict.verified_steps = up_to + 1;
            break;
        }
        // generation in degree 0 can only be judged once degree 1 is known
        if !cur.is_known(1) {
            verdict.status = KoszulStatus::Undetermined;
            verdict.exhausted_at = Some(n);
            break;
        }
        if !cur.is_bounded() {
            verdict.window_limited = true;
        }
        let degs = top(&cur).degrees();
        if degs.iter().any(|&d| d != 0) {
            verdict.status = KoszulStatus::NotKoszul;
            verdict.failure_step = Some(n);
            verdict.failure_generator_degrees = degs;
            break;
        }
        verdict.verified_steps = n + 1;
        if n < up_to {
            let data = syzygy_data(alg, &cur)?;
            cur = shift(&data.omega, 1);
            tower.push(data);
        }
    }
    Ok((verdict, tower))
}

pub fn is_koszul(alg: &TruncatedGradedAlgebra, m: &GradedRightModule, up_to: usize) -> Result<KoszulVerdict, ModuleError> {
    Ok(koszul_tower(alg, m, up_to)?.0)
}
