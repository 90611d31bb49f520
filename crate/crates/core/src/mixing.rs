//! Exact and sampled total-variation mixing, and the bounds it is compared to.
//!
//! `exact_tv_mixing` evolves every deterministic start at once by repeated
//! multiplication with the transition matrix, so it is cubic in the number
//! of states per step and intended for a few thousand states at most.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::expanders::LabelledRegularGraph;
use crate::operators::{
    down_up, expanderized_down_up, expanderized_up_down, product_measure, sampler_step, scan_sweep,
    up_down, BitSource, ChainState, WalkKind, WalkOperator, WalkSpec,
};
use crate::spectral::spectrum;
use crate::subsets::{binomial, bits_for};

/// Default accuracy for mixing times.
pub const DEFAULT_EPSILON: f64 = 0.25;
/// Default cap on the number of states.
pub const DEFAULT_CAP_STATES: usize = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct MixingResult {
    /// First `t` with worst-case TV at most `ε`, if reached within the cap.
    pub tmix: Option<usize>,
    /// Worst-case TV at `t = 0, 1, …`.
    pub curve: Vec<f64>,
}

fn worst_tv(m: &DMatrix<f64>, target: &[f64], project: Option<usize>) -> f64 {
    let mut worst: f64 = 0.0;
    for row in m.row_iter() {
        let tv = match project {
            None => row
                .iter()
                .zip(target)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>(),
            Some(k) => {
                let r: Vec<f64> = row.iter().copied().collect();
                r.chunks(k)
                    .zip(target)
                    .map(|(c, b)| (c.iter().sum::<f64>() - b).abs())
                    .sum::<f64>()
            }
        };
        worst = worst.max(0.5 * tv);
    }
    worst
}

fn check_square(p: &WalkOperator, cap: usize) -> Result<()> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch {
            expected: p.rows(),
            found: p.cols(),
        });
    }
    if p.rows() > cap {
        return Err(Error::GuardExceeded {
            what: format!("{} states", p.rows()),
            limit: cap,
        });
    }
    if p.stationarity_error() > 1e-9 {
        return Err(Error::InvalidState("measure is not stationary".into()));
    }
    Ok(())
}

fn run_tv(
    p: &WalkOperator,
    eps: f64,
    t_max: usize,
    target: &[f64],
    project: Option<usize>,
) -> MixingResult {
    let mut m = DMatrix::identity(p.rows(), p.rows());
    let mut curve = vec![worst_tv(&m, target, project)];
    let mut tmix = (curve[0] <= eps).then_some(0);
    let mut t = 0;
    while tmix.is_none() && t < t_max {
        m = &m * &p.matrix;
        t += 1;
        let tv = worst_tv(&m, target, project);
        curve.push(tv);
        if tv <= eps {
            tmix = Some(t);
        }
    }
    MixingResult { tmix, curve }
}

/// `T_mix(ε) = min { t : max_x ‖Pᵗ(x, ·) − π‖_TV ≤ ε }`, with `π = mu_in`.
pub fn exact_tv_mixing(
    p: &WalkOperator,
    eps: f64,
    t_max: usize,
    cap_states: usize,
) -> Result<MixingResult> {
    check_square(p, cap_states)?;
    Ok(run_tv(p, eps, t_max, &p.mu_in, None))
}

/// As [`exact_tv_mixing`] on a product space `Ω × [k]`, measuring the
/// distance of the `Ω`-marginal to `target`.
pub fn exact_tv_mixing_projected(
    p: &WalkOperator,
    k: usize,
    target: &[f64],
    eps: f64,
    t_max: usize,
    cap_states: usize,
) -> Result<MixingResult> {
    check_square(p, cap_states)?;
    if target.len() * k != p.rows() {
        return Err(Error::DimensionMismatch {
            expected: p.rows(),
            found: target.len() * k,
        });
    }
    Ok(run_tv(p, eps, t_max, target, Some(k)))
}

/// `(1/(1 − λ)) · log(1/(ε √π_min))` with `λ` the two-sided spectral radius.
pub fn bound_from_gap(p: &WalkOperator, eps: f64) -> Result<f64> {
    let s = spectrum(p, true)?;
    let lambda = s.two_sided_lambda;
    if lambda >= 1.0 - 1e-12 {
        return Err(Error::Diverges(format!("two-sided lambda = {lambda}")));
    }
    let pi_min = p.mu_in.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((1.0 / (eps * pi_min.sqrt())).ln() / (1.0 - lambda))
}

#[derive(Clone, Debug, Serialize)]
pub struct EcBound {
    pub value: f64,
    /// The bound holds up to a universal multiplicative constant.
    pub modulo_constant: bool,
}

/// `(1/EC) · (log log(1/π_min) + log(1/ε))`.
pub fn bound_from_ec(ec: f64, pi_min: f64, eps: f64) -> Result<EcBound> {
    if !(ec > 0.0 && ec <= 1.0) {
        return Err(Error::InvalidConstant(ec));
    }
    if !(pi_min > 0.0 && pi_min < 1.0) {
        return Err(Error::InvalidConstant(pi_min));
    }
    Ok(EcBound {
        value: ((1.0 / pi_min).ln().ln() + (1.0 / eps).ln()) / ec,
        modulo_constant: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkMixing {
    pub walk: String,
    pub states: usize,
    pub tmix: Option<usize>,
    /// Coordinates resampled per step.
    pub sites_per_step: usize,
    pub bound_from_gap: Option<f64>,
    pub gap: f64,
    pub two_sided_lambda: f64,
    /// Index bits per step when no draw is rejected.
    pub index_bits_per_step: u32,
    pub total_index_bits: Option<u64>,
    pub curve: Vec<f64>,
}

fn summarize(
    name: &str,
    p: &WalkOperator,
    result: MixingResult,
    reversible: bool,
    sites_per_step: usize,
    bits: u32,
    eps: f64,
) -> Result<WalkMixing> {
    let s = spectrum(p, reversible)?;
    let bound = if reversible {
        bound_from_gap(p, eps).ok()
    } else {
        None
    };
    Ok(WalkMixing {
        walk: name.to_string(),
        states: p.rows(),
        tmix: result.tmix,
        sites_per_step,
        bound_from_gap: bound,
        gap: s.gap,
        two_sided_lambda: s.two_sided_lambda,
        index_bits_per_step: bits,
        total_index_bits: result.tmix.map(|t| t as u64 * bits as u64),
        curve: result.curve,
    })
}

/// Mixing of every walk at level `ℓ` on one complex. The expanderized walks
/// and the systematic scan need a partite complex and a graph.
pub fn compare_walks(
    x: &Complex,
    ell: usize,
    h: Option<&LabelledRegularGraph>,
    eps: f64,
    t_max: usize,
    cap_states: usize,
) -> Result<Vec<WalkMixing>> {
    let n = x.rank();
    let m = binomial(n, ell) as usize;
    let sub_bits = bits_for(m);
    let mut out = Vec::new();
    let duw = down_up(x, ell)?;
    let r = exact_tv_mixing(&duw, eps, t_max, cap_states)?;
    out.push(summarize("down-up", &duw, r, true, n - ell, sub_bits, eps)?);
    let udw = up_down(x, ell)?;
    let r = exact_tv_mixing(&udw, eps, t_max, cap_states)?;
    out.push(summarize("up-down", &udw, r, true, n - ell, sub_bits, eps)?);
    if let Some(h) = h {
        let kb = bits_for(h.degree());
        let papx = expanderized_up_down(x, ell, h)?;
        let r = exact_tv_mixing(&papx, eps, t_max, cap_states)?;
        out.push(summarize(
            "expanderized-up-down",
            &papx,
            r,
            true,
            n - ell,
            kb,
            eps,
        )?);
        let paqx = expanderized_down_up(x, ell, h)?;
        let r = exact_tv_mixing(&paqx, eps, t_max, cap_states)?;
        out.push(summarize(
            "expanderized-down-up",
            &paqx,
            r,
            true,
            n - ell,
            2 * kb,
            eps,
        )?);
        let r = exact_tv_mixing_projected(&paqx, m, x.weights(), eps, t_max, cap_states)?;
        out.push(summarize(
            "expanderized-down-up/faces",
            &paqx,
            r,
            true,
            n - ell,
            2 * kb,
            eps,
        )?);
    }
    if x.require_top_partite().is_ok() {
        let sweep = scan_sweep(x)?;
        let r = exact_tv_mixing(&sweep, eps, t_max, cap_states)?;
        out.push(summarize("scan-sweep", &sweep, r, false, n, 0, eps)?);
    }
    Ok(out)
}

/// TV distance between the law of `n_chains` independent chains after `t`
/// steps from `start` and the stationary law of the walk. Chain `i` draws
/// its bits from seed `seed + i`, so the result does not depend on the
/// number of threads.
pub fn empirical_tv(
    x: &Complex,
    spec: &WalkSpec,
    start: &ChainState,
    t: u64,
    n_chains: usize,
    seed: u64,
) -> Result<f64> {
    spec.validate(x)?;
    let target: Vec<f64> = match spec.kind {
        WalkKind::UpDown | WalkKind::ExpanderizedUpDown => x.marginal(spec.ell)?.to_vec(),
        WalkKind::ExpanderizedDownUp => product_measure(x, spec.ell),
        _ => x.weights().to_vec(),
    };
    let m = binomial(x.rank(), spec.ell) as usize;
    let finals: Vec<usize> = (0..n_chains)
        .into_par_iter()
        .map(|i| {
            let mut bits = BitSource::new(seed.wrapping_add(i as u64));
            let mut s = start.clone();
            for _ in 0..t {
                sampler_step(x, spec, &mut s, &mut bits)?;
            }
            Ok(match spec.kind {
                WalkKind::ExpanderizedDownUp => s.state * m + s.subset.unwrap_or(0),
                _ => s.state,
            })
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0usize; target.len()];
    for f in finals {
        counts[f] += 1;
    }
    Ok(0.5
        * counts
            .iter()
            .zip(&target)
            .map(|(&c, p)| (c as f64 / n_chains as f64 - p).abs())
            .sum::<f64>())
}

/// `‖Pᵗ(start, ·) − π‖_TV` for one start.
pub fn tv_from(p: &WalkOperator, start: usize, t: usize) -> f64 {
    let mut row = DMatrix::zeros(1, p.rows());
    row[(0, start)] = 1.0;
    for _ in 0..t {
        row = &row * &p.matrix;
    }
    0.5 * row
        .iter()
        .zip(&p.mu_in)
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
}
