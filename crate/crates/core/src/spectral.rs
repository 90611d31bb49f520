//! Spectra in the weighted geometry.
//!
//! For an operator `P: ℝ^Ω₂ → ℝ^Ω₁` with row measure `π₁` and column measure
//! `π₂`, the matrix `K = D₁^{1/2} P D₂^{-1/2}` represents `P` between the
//! weighted `ℓ²` spaces in orthonormal coordinates. Adjoints, norms and
//! spectra are all read off `K`; when `P` is reversible `K` is symmetric.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::expanders::LabelledRegularGraph;
use crate::operators::{
    down_up, expanderized_down_up, expanderized_up_down, up_down, WalkOperator,
};
use crate::report::{CheckReport, Mode};

/// Largest product-space dimension for which the expanderized down-up
/// spectrum is computed directly rather than through `Qup · Qdo`.
pub const DIRECT_PRODUCT_LIMIT: usize = 1500;

/// Reversibility tolerance on `|π(x)P(x,y) − π(y)P(y,x)|`.
pub const REVERSIBILITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    /// Descending. For non-reversible input these are singular values.
    pub eigenvalues: Vec<f64>,
    pub lambda2: f64,
    pub lambda_min: f64,
    pub two_sided_lambda: f64,
    /// `1 − λ₂`.
    pub gap: f64,
    /// `1 − max(λ₂, |λ_min|)`.
    pub gap_star: f64,
    pub psd: bool,
    pub reversible: bool,
}

/// `B*(y, x) = B(x, y) π_in(x) / π_out(y)`.
pub fn adjoint(b: &WalkOperator) -> Result<WalkOperator> {
    if let Some(i) = b.mu_out.iter().position(|&p| p <= 0.0) {
        return Err(Error::ZeroMass(i));
    }
    let m = DMatrix::from_fn(b.cols(), b.rows(), |y, x| {
        b.matrix[(x, y)] * b.mu_in[x] / b.mu_out[y]
    });
    Ok(WalkOperator::new(m, b.mu_out.clone(), b.mu_in.clone()))
}

/// `D_in^{1/2} P D_out^{-1/2}`.
pub fn symmetrized(p: &WalkOperator) -> DMatrix<f64> {
    DMatrix::from_fn(p.rows(), p.cols(), |i, j| {
        p.matrix[(i, j)] * (p.mu_in[i] / p.mu_out[j]).sqrt()
    })
}

fn sorted_eigenvalues(sym: DMatrix<f64>) -> Vec<f64> {
    let sym = (&sym + sym.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn check_measure(mu: &[f64]) -> Result<()> {
    match mu.iter().position(|&p| p.is_nan() || p <= 0.0) {
        Some(i) => Err(Error::ZeroMass(i)),
        None => Ok(()),
    }
}

/// Spectrum of a square operator.
///
/// With `reversible` set the operator must satisfy detailed balance and the
/// eigenvalues are exact. Otherwise the report lists the singular values of
/// `P` in the weighted geometry, so `gap` is `1 − σ₂`.
pub fn spectrum(p: &WalkOperator, reversible: bool) -> Result<SpectralReport> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch {
            expected: p.rows(),
            found: p.cols(),
        });
    }
    check_measure(&p.mu_in)?;
    check_measure(&p.mu_out)?;
    let eigenvalues = if reversible {
        let err = p
            .detailed_balance_error()
            .max(crate::operators::max_abs_diff(&p.mu_in, &p.mu_out));
        if err > REVERSIBILITY_TOL {
            return Err(Error::NotReversible(err));
        }
        sorted_eigenvalues(symmetrized(p))
    } else {
        let k = symmetrized(p);
        sorted_eigenvalues(k.transpose() * &k)
            .into_iter()
            .map(|v| v.max(0.0).sqrt())
            .collect()
    };
    Ok(report_from(eigenvalues, reversible))
}

fn report_from(eigenvalues: Vec<f64>, reversible: bool) -> SpectralReport {
    let (lambda2, lambda_min) = if eigenvalues.len() > 1 {
        (eigenvalues[1], eigenvalues[eigenvalues.len() - 1])
    } else {
        // A single state has no non-constant functions.
        (0.0, 0.0)
    };
    let two_sided = lambda2.max(lambda_min.abs());
    SpectralReport {
        psd: lambda_min >= -1e-10,
        lambda2,
        lambda_min,
        two_sided_lambda: two_sided,
        gap: 1.0 - lambda2,
        gap_star: 1.0 - two_sided,
        reversible,
        eigenvalues,
    }
}

/// Second eigenvalue of a reversible operator and an eigenfunction for it,
/// in the original (unweighted) coordinates.
pub fn second_eigenpair(p: &WalkOperator) -> Result<(f64, Vec<f64>)> {
    let report = spectrum(p, true)?;
    let k = symmetrized(p);
    let eig = ((&k + k.transpose()) * 0.5).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    if order.len() < 2 {
        return Ok((report.lambda2, vec![0.0; p.rows()]));
    }
    let v = eig.eigenvectors.column(order[1]);
    let f = (0..p.rows()).map(|i| v[i] / p.mu_in[i].sqrt()).collect();
    Ok((report.lambda2, f))
}

/// Spectral gap `1 − λ₂` of a reversible operator.
pub fn gap(p: &WalkOperator) -> Result<f64> {
    Ok(spectrum(p, true)?.gap)
}

/// Operator norm of `a` on `ℓ²(μ)`.
///
/// Self-adjoint input is handled by a symmetric eigensolve of `K`; anything
/// else goes through the Gram matrix `KᵀK`.
pub fn weighted_operator_norm(a: &DMatrix<f64>, mu: &[f64]) -> Result<f64> {
    check_measure(mu)?;
    if a.nrows() != mu.len() || a.ncols() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: mu.len(),
            found: a.nrows(),
        });
    }
    let k = DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
        a[(i, j)] * (mu[i] / mu[j]).sqrt()
    });
    let asym = (&k - k.transpose()).abs().max();
    let scale = k.abs().max().max(1.0);
    if asym <= 1e-12 * scale {
        let ev = sorted_eigenvalues(k);
        Ok(ev.iter().fold(0.0, |m, v| m.max(v.abs())))
    } else {
        let ev = sorted_eigenvalues(k.transpose() * &k);
        Ok(ev[0].max(0.0).sqrt())
    }
}

/// Nonzero eigenvalues of `A A*` and `A* A`, both descending. They coincide.
pub fn switcheroo_spectra(a: &WalkOperator, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let star = adjoint(a)?;
    let left = a.compose(&star)?;
    let right = star.compose(a)?;
    let nz = |p: &WalkOperator| -> Vec<f64> {
        sorted_eigenvalues(symmetrized(p))
            .into_iter()
            .filter(|v| v.abs() > tol)
            .collect()
    };
    Ok((nz(&left), nz(&right)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeviationReport {
    pub norm: f64,
    pub lambda: f64,
    pub slack: f64,
}

/// `‖Papx − (1 − λ(H)) Udw‖` on `ℓ²(π_ℓ)`, which is at most `λ(H)`.
pub fn operator_norm_deviation(
    x: &Complex,
    ell: usize,
    h: &LabelledRegularGraph,
) -> Result<DeviationReport> {
    let papx = expanderized_up_down(x, ell, h)?;
    let udw = up_down(x, ell)?;
    let lambda = h.lambda();
    let diff = &papx.matrix - &udw.matrix * (1.0 - lambda);
    let norm = weighted_operator_norm(&diff, &udw.mu_in)?;
    Ok(DeviationReport {
        norm,
        lambda,
        slack: lambda - norm,
    })
}

/// Second eigenvalue of the expanderized down-up walk. Large product spaces
/// use the fact that `Qdo·Qup` and `Qup·Qdo = Papx(H²)` share their nonzero
/// spectrum, and that the former has a kernel when it is the larger of the two.
pub fn expanderized_down_up_lambda2(
    x: &Complex,
    ell: usize,
    h: &LabelledRegularGraph,
) -> Result<(f64, &'static str)> {
    let dim = x.facets().len() * h.num_vertices();
    if dim <= DIRECT_PRODUCT_LIMIT {
        let p = expanderized_down_up(x, ell, h)?;
        Ok((spectrum(&p, true)?.lambda2, "exact"))
    } else {
        let small = expanderized_up_down(x, ell, &h.square())?;
        let l2 = spectrum(&small, true)?.lambda2;
        let has_kernel = dim > small.rows();
        Ok((
            if has_kernel { l2.max(0.0) } else { l2 },
            "exact-via-switcheroo",
        ))
    }
}

/// `Gap(Papx) ≥ Gap(Udw)·Gap⋆(H)` and `Gap(Paqx) ≥ Gap(Duw)·Gap⋆(H²)`.
pub fn gap_lifting_check(
    x: &Complex,
    ell: usize,
    h: &LabelledRegularGraph,
) -> Result<Vec<CheckReport>> {
    let gs = h.spectrum();
    let gap_star_h = gs.gap_star;
    let gap_star_h2 = 1.0 - gs.lambda * gs.lambda;
    let papx = spectrum(&expanderized_up_down(x, ell, h)?, true)?;
    let udw = spectrum(&up_down(x, ell)?, true)?;
    let duw = spectrum(&down_up(x, ell)?, true)?;
    let (paqx_l2, _) = expanderized_down_up_lambda2(x, ell, h)?;
    Ok(vec![
        CheckReport::at_least(
            "Gap(Papx) >= Gap(Udw) * Gap*(H)",
            papx.gap,
            udw.gap * gap_star_h,
            Mode::Exact,
            1e-9,
        ),
        CheckReport::at_least(
            "Gap(Paqx) >= Gap(Duw) * Gap*(H^2)",
            1.0 - paqx_l2,
            duw.gap * gap_star_h2,
            Mode::Exact,
            1e-9,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{k3_colorings, product_2x2};
    use crate::expanders::{clique_loops, cycle, self_loops};
    use crate::operators::{down, q_down, up};

    #[test]
    fn ising_pair_spectrum() {
        let duw = down_up(&product_2x2(), 1).unwrap();
        let s = spectrum(&duw, true).unwrap();
        let expect = [1.0, 0.5, 0.5, 0.0];
        for (a, b) in s.eigenvalues.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((s.gap - 0.5).abs() < 1e-12);
        assert!(s.psd);
    }

    #[test]
    fn down_is_adjoint_of_up() {
        let x = k3_colorings();
        for (l, k) in [(0, 3), (1, 2), (1, 3), (2, 3)] {
            let u = up(&x, l, k).unwrap();
            let d = down(&x, k, l).unwrap();
            let ua = adjoint(&u).unwrap();
            assert!((ua.matrix - d.matrix).abs().max() < 1e-12);
        }
    }

    #[test]
    fn adjoint_is_an_involution() {
        let x = k3_colorings();
        let q = q_down(&x, 1, &cycle(3).unwrap()).unwrap();
        let back = adjoint(&adjoint(&q).unwrap()).unwrap();
        assert!((back.matrix - q.matrix).abs().max() < 1e-12);
    }

    #[test]
    fn identity_has_no_gap() {
        let mu = vec![0.25; 4];
        let p = WalkOperator::new(DMatrix::identity(4, 4), mu.clone(), mu);
        let s = spectrum(&p, true).unwrap();
        assert_eq!(s.gap, 0.0);
    }

    #[test]
    fn non_reversible_flag_rejected() {
        let mu = vec![1.0 / 3.0; 3];
        let m = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let p = WalkOperator::new(m, mu.clone(), mu);
        assert!(matches!(spectrum(&p, true), Err(Error::NotReversible(_))));
        let s = spectrum(&p, false).unwrap();
        assert!((s.lambda2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deviation_vanishes_for_clique_and_is_tight_for_loops() {
        let x = k3_colorings();
        let d = operator_norm_deviation(&x, 1, &clique_loops(3).unwrap()).unwrap();
        assert!(d.norm < 1e-12 && d.lambda.abs() < 1e-12);
        let d = operator_norm_deviation(&x, 1, &self_loops(3).unwrap()).unwrap();
        assert!(d.slack >= -1e-9);
    }

    #[test]
    fn gap_lifting_on_triangle() {
        let x = k3_colorings();
        for r in gap_lifting_check(&x, 2, &cycle(3).unwrap()).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn switcheroo_on_q_down() {
        let x = k3_colorings();
        let q = q_down(&x, 1, &cycle(3).unwrap()).unwrap();
        let (a, b) = switcheroo_spectra(&q, 1e-10).unwrap();
        assert_eq!(a.len(), b.len());
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() < 1e-9);
        }
    }
}
