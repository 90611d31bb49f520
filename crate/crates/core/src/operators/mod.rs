//! Transition operators between levels of a complex.
//!
//! Every operator is a dense row-stochastic matrix together with the
//! measures on its row and column spaces. The convention is that
//! `mu_in · P = mu_out`: a row vector distributed as `mu_in` is carried to
//! `mu_out`. Rows and columns are indexed by the level order of the complex,
//! and product spaces `X^(n) × C([n], ℓ)` by `facet · C(n, ℓ) + subset`
//! with subsets in colex order.

use nalgebra::DMatrix;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::expanders::LabelledRegularGraph;
use crate::subsets::{binomial, binomial_f64, colex_rank, colex_subsets, combinations};

pub mod sampler;

pub use sampler::{
    run_trajectory, sampler_step, BitSource, ChainState, TrajectoryRow, WalkKind, WalkSpec,
};

#[derive(Clone, Debug)]
pub struct WalkOperator {
    pub matrix: DMatrix<f64>,
    /// Measure on the row space.
    pub mu_in: Vec<f64>,
    /// Measure on the column space.
    pub mu_out: Vec<f64>,
}

impl WalkOperator {
    pub fn new(matrix: DMatrix<f64>, mu_in: Vec<f64>, mu_out: Vec<f64>) -> Self {
        debug_assert_eq!(matrix.nrows(), mu_in.len());
        debug_assert_eq!(matrix.ncols(), mu_out.len());
        WalkOperator {
            matrix,
            mu_in,
            mu_out,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// `self · other`; the column measure of `self` must match the row
    /// measure of `other`.
    pub fn compose(&self, other: &WalkOperator) -> Result<WalkOperator> {
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                found: other.rows(),
            });
        }
        let drift = max_abs_diff(&self.mu_out, &other.mu_in);
        if drift > 1e-9 {
            return Err(Error::InvalidState(format!(
                "measures disagree at the composition point (max diff {drift:.3e})"
            )));
        }
        Ok(WalkOperator::new(
            &self.matrix * &other.matrix,
            self.mu_in.clone(),
            other.mu_out.clone(),
        ))
    }

    /// `(P f)(x) = Σ_y P(x, y) f(y)`.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        let v = nalgebra::DVector::from_column_slice(f);
        (&self.matrix * v).iter().copied().collect()
    }

    /// Largest deviation of a row sum from 1.
    pub fn row_sum_error(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|r| (r.sum() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `max_y |(mu_in · P)(y) − mu_out(y)|`.
    pub fn stationarity_error(&self) -> f64 {
        let mut pushed = vec![0.0; self.cols()];
        for (i, row) in self.matrix.row_iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                pushed[j] += self.mu_in[i] * p;
            }
        }
        max_abs_diff(&pushed, &self.mu_out)
    }

    /// `max |μ(x) P(x, y) − μ(y) P(y, x)|` for a square operator.
    pub fn detailed_balance_error(&self) -> f64 {
        let n = self.rows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                let d = self.mu_in[i] * self.matrix[(i, j)] - self.mu_in[j] * self.matrix[(j, i)];
                worst = worst.max(d.abs());
            }
        }
        worst
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn check_levels(x: &Complex, lower: usize, upper: usize) -> Result<()> {
    if lower > upper || upper > x.rank() {
        return Err(Error::LevelOrder { lower, upper });
    }
    Ok(())
}

/// `U_{ℓ→k}(ω̂, ω) = 1[ω ⊇ ω̂] · Pr[ω̃ ⊇ ω | ω̃ ⊇ ω̂] / C(n − ℓ, k − ℓ)`.
pub fn up(x: &Complex, ell: usize, k: usize) -> Result<WalkOperator> {
    check_levels(x, ell, k)?;
    let lo = x.level(ell)?;
    let hi = x.level(k)?;
    let c = binomial_f64(x.rank() - ell, k - ell);
    let mut m = DMatrix::zeros(lo.len(), hi.len());
    for (a, face) in lo.faces().iter().enumerate() {
        for (f, p) in x.conditional(face)? {
            let rest = x.facets()[f].minus(face);
            for tau in combinations(rest.vertices(), k - ell) {
                let omega = face.union(&Face::new(tau));
                let b = hi.index_of(&omega).expect("subface of a facet");
                m[(a, b)] += p / c;
            }
        }
    }
    Ok(WalkOperator::new(
        m,
        lo.marginal().to_vec(),
        hi.marginal().to_vec(),
    ))
}

/// `D_{k→ℓ}(ω, ω̂) = 1[ω̂ ⊂ ω] / C(k, ℓ)`.
pub fn down(x: &Complex, k: usize, ell: usize) -> Result<WalkOperator> {
    check_levels(x, ell, k)?;
    let lo = x.level(ell)?;
    let hi = x.level(k)?;
    let c = binomial_f64(k, ell);
    let mut m = DMatrix::zeros(hi.len(), lo.len());
    for (b, face) in hi.faces().iter().enumerate() {
        for sub in combinations(face.vertices(), ell) {
            let a = lo.index_of(&Face::new(sub)).expect("subface of a face");
            m[(b, a)] += 1.0 / c;
        }
    }
    Ok(WalkOperator::new(
        m,
        hi.marginal().to_vec(),
        lo.marginal().to_vec(),
    ))
}

/// Down-up walk `Duw_{n↔ℓ} = D_{n→ℓ} U_{ℓ→n}` on the facets, assembled
/// directly from the two-step description.
pub fn down_up(x: &Complex, ell: usize) -> Result<WalkOperator> {
    check_levels(x, ell, x.rank())?;
    let n = x.rank();
    let lo = x.level(ell)?;
    let pi = x.weights();
    let c = binomial_f64(n, ell);
    let mut m = DMatrix::zeros(pi.len(), pi.len());
    for a in 0..lo.len() {
        let fs = lo.containing(a);
        let z: f64 = fs.iter().map(|&f| pi[f]).sum();
        for &f in fs {
            for &g in fs {
                m[(f, g)] += pi[g] / (z * c);
            }
        }
    }
    Ok(WalkOperator::new(m, pi.to_vec(), pi.to_vec()))
}

/// Up-down walk `Udw_{ℓ↔n} = U_{ℓ→n} D_{n→ℓ}` on `X^(ℓ)`.
pub fn up_down(x: &Complex, ell: usize) -> Result<WalkOperator> {
    check_levels(x, ell, x.rank())?;
    let n = x.rank();
    let lo = x.level(ell)?;
    let c = binomial_f64(n, ell);
    let mut m = DMatrix::zeros(lo.len(), lo.len());
    for (a, face) in lo.faces().iter().enumerate() {
        for (f, p) in x.conditional(face)? {
            for sub in combinations(x.facets()[f].vertices(), ell) {
                let b = lo.index_of(&Face::new(sub)).expect("subface of a facet");
                m[(a, b)] += p / c;
            }
        }
    }
    let mu = lo.marginal().to_vec();
    Ok(WalkOperator::new(m, mu.clone(), mu))
}

fn check_graph(x: &Complex, ell: usize, h: &LabelledRegularGraph) -> Result<Vec<Vec<usize>>> {
    x.require_top_partite()?;
    check_levels(x, ell, x.rank())?;
    let m = binomial(x.rank(), ell) as usize;
    if h.num_vertices() != m {
        return Err(Error::GraphSizeMismatch {
            expected: m,
            found: h.num_vertices(),
        });
    }
    Ok(colex_subsets(x.rank(), ell))
}

/// Expanderized up-down walk on `X^(ℓ)`:
/// `Papx(ω̂, ω̃) = A_H(typ ω̂, typ ω̃) · Pr[ω_T = ω̃ | ω_S = ω̂]`.
pub fn expanderized_up_down(
    x: &Complex,
    ell: usize,
    h: &LabelledRegularGraph,
) -> Result<WalkOperator> {
    let subsets = check_graph(x, ell, h)?;
    let lo = x.level(ell)?;
    let k = h.degree() as f64;
    let mut m = DMatrix::zeros(lo.len(), lo.len());
    for (a, face) in lo.faces().iter().enumerate() {
        let s = colex_rank(&x.typ(face)?);
        for (f, p) in x.conditional(face)? {
            for &t in h.neighbors(s) {
                let next = x.restrict(&x.facets()[f], &subsets[t])?;
                let b = lo.index_of(&next).expect("restriction of a facet");
                m[(a, b)] += p / k;
            }
        }
    }
    let mu = lo.marginal().to_vec();
    Ok(WalkOperator::new(m, mu.clone(), mu))
}

/// `π_n ⊗ Uniform(C([n], ℓ))` in product-space order.
pub fn product_measure(x: &Complex, ell: usize) -> Vec<f64> {
    let m = binomial(x.rank(), ell) as usize;
    x.weights()
        .iter()
        .flat_map(|&p| std::iter::repeat_n(p / m as f64, m))
        .collect()
}

/// `Qdo((ω, S), ω̂) = A_H(S, typ ω̂) · 1[ω ⊇ ω̂]`, from `X^(n) × C([n], ℓ)` to `X^(ℓ)`.
pub fn q_down(x: &Complex, ell: usize, h: &LabelledRegularGraph) -> Result<WalkOperator> {
    let subsets = check_graph(x, ell, h)?;
    let lo = x.level(ell)?;
    let m = subsets.len();
    let k = h.degree() as f64;
    let mut q = DMatrix::zeros(x.facets().len() * m, lo.len());
    for (f, facet) in x.facets().iter().enumerate() {
        for s in 0..m {
            for &t in h.neighbors(s) {
                let face = x.restrict(facet, &subsets[t])?;
                let b = lo.index_of(&face).expect("restriction of a facet");
                q[(f * m + s, b)] += 1.0 / k;
            }
        }
    }
    Ok(WalkOperator::new(
        q,
        product_measure(x, ell),
        lo.marginal().to_vec(),
    ))
}

/// `Qup(ω̂, (ω, S)) = A_H(typ ω̂, S) · Pr[ω̃ = ω | ω̃ ⊇ ω̂]`, the adjoint of [`q_down`].
pub fn q_up(x: &Complex, ell: usize, h: &LabelledRegularGraph) -> Result<WalkOperator> {
    let subsets = check_graph(x, ell, h)?;
    let lo = x.level(ell)?;
    let m = subsets.len();
    let k = h.degree() as f64;
    let mut q = DMatrix::zeros(lo.len(), x.facets().len() * m);
    for (a, face) in lo.faces().iter().enumerate() {
        let t = colex_rank(&x.typ(face)?);
        for (f, p) in x.conditional(face)? {
            for &s in h.neighbors(t) {
                q[(a, f * m + s)] += p / k;
            }
        }
    }
    Ok(WalkOperator::new(
        q,
        lo.marginal().to_vec(),
        product_measure(x, ell),
    ))
}

/// Expanderized down-up walk on `X^(n) × C([n], ℓ)`: from `(ω, S)` move to
/// `T ∼ H(S)`, resample `ω` given `ω_T`, then move to `S' ∼ H(T)`.
pub fn expanderized_down_up(
    x: &Complex,
    ell: usize,
    h: &LabelledRegularGraph,
) -> Result<WalkOperator> {
    let subsets = check_graph(x, ell, h)?;
    let m = subsets.len();
    let k2 = (h.degree() * h.degree()) as f64;
    let dim = x.facets().len() * m;
    let mut p = DMatrix::zeros(dim, dim);
    for (f, facet) in x.facets().iter().enumerate() {
        for s in 0..m {
            for &t in h.neighbors(s) {
                let face = x.restrict(facet, &subsets[t])?;
                for (g, q) in x.conditional(&face)? {
                    for &s2 in h.neighbors(t) {
                        p[(f * m + s, g * m + s2)] += q / k2;
                    }
                }
            }
        }
    }
    let mu = product_measure(x, ell);
    Ok(WalkOperator::new(p, mu.clone(), mu))
}

/// Collapses a distribution on `X^(n) × C([n], ℓ)` to its facet marginal.
pub fn face_marginal(dist: &[f64], num_subsets: usize) -> Vec<f64> {
    dist.chunks(num_subsets).map(|c| c.iter().sum()).collect()
}

/// Single-site heat-bath update of side `i` on the facets.
pub fn scan_site(x: &Complex, i: usize) -> Result<WalkOperator> {
    x.require_top_partite()?;
    let n = x.rank();
    if i >= n {
        return Err(Error::LevelOutOfRange { level: i, rank: n });
    }
    let keep: Vec<usize> = (0..n).filter(|&s| s != i).collect();
    let pi = x.weights();
    let mut m = DMatrix::zeros(pi.len(), pi.len());
    for (f, facet) in x.facets().iter().enumerate() {
        let rest = x.restrict(facet, &keep)?;
        for (g, p) in x.conditional(&rest)? {
            m[(f, g)] += p;
        }
    }
    Ok(WalkOperator::new(m, pi.to_vec(), pi.to_vec()))
}

/// Side updated by the systematic scan at step `t`.
pub fn scan_coordinate(t: u64, n: usize) -> usize {
    ((t + 1) % n as u64) as usize
}

/// One full sweep of the systematic scan, in the order the sampler visits
/// sides when started at step 0.
pub fn scan_sweep(x: &Complex) -> Result<WalkOperator> {
    let n = x.rank();
    let mut acc = scan_site(x, scan_coordinate(0, n))?;
    for t in 1..n as u64 {
        acc = acc.compose(&scan_site(x, scan_coordinate(t, n))?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{k3_colorings, product_2x2};
    use crate::expanders::{clique_loops, cycle};

    fn weighted() -> Complex {
        let f: Vec<(Vec<String>, f64)> = [
            (["a", "x", "p"], 1.0),
            (["a", "y", "p"], 2.0),
            (["b", "x", "q"], 0.5),
            (["b", "y", "p"], 1.5),
            (["a", "y", "q"], 0.25),
        ]
        .iter()
        .map(|(v, w)| (v.iter().map(|s| s.to_string()).collect(), *w))
        .collect();
        Complex::from_labels(&f, true).unwrap()
    }

    fn assert_close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        let d = (a - b).abs().max();
        assert!(d < tol, "max diff {d}");
    }

    #[test]
    fn two_step_products_match_direct_assembly() {
        let x = weighted();
        for ell in 0..=3 {
            let u = up(&x, ell, 3).unwrap();
            let d = down(&x, 3, ell).unwrap();
            assert_close(
                &d.compose(&u).unwrap().matrix,
                &down_up(&x, ell).unwrap().matrix,
                1e-12,
            );
            assert_close(
                &u.compose(&d).unwrap().matrix,
                &up_down(&x, ell).unwrap().matrix,
                1e-12,
            );
        }
    }

    #[test]
    fn operators_are_stochastic_and_stationary() {
        let x = weighted();
        let h = cycle(3).unwrap();
        let ops = [
            up(&x, 1, 2).unwrap(),
            down(&x, 2, 1).unwrap(),
            down_up(&x, 2).unwrap(),
            up_down(&x, 1).unwrap(),
            expanderized_up_down(&x, 2, &h).unwrap(),
            expanderized_down_up(&x, 1, &h).unwrap(),
            q_down(&x, 2, &h).unwrap(),
            q_up(&x, 2, &h).unwrap(),
            scan_sweep(&x).unwrap(),
        ];
        for op in &ops {
            assert!(op.row_sum_error() < 1e-12);
            assert!(op.stationarity_error() < 1e-12);
        }
    }

    #[test]
    fn ising_pair_down_up_has_known_entries() {
        let x = product_2x2();
        let duw = down_up(&x, 1).unwrap();
        for i in 0..4 {
            assert!((duw.matrix[(i, i)] - 0.5).abs() < 1e-15);
        }
        assert!((duw.matrix.sum() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn clique_loops_reduces_to_uniform_choice() {
        let x = k3_colorings();
        for ell in 1..3 {
            let h = clique_loops(binomial(3, ell) as usize).unwrap();
            let papx = expanderized_up_down(&x, ell, &h).unwrap();
            assert_close(&papx.matrix, &up_down(&x, ell).unwrap().matrix, 1e-12);
            let paqx = expanderized_down_up(&x, ell, &h).unwrap();
            let m = binomial(3, ell) as usize;
            let duw = down_up(&x, ell).unwrap();
            for (f, _) in x.facets().iter().enumerate() {
                let row: Vec<f64> = paqx.matrix.row(f * m).iter().copied().collect();
                let collapsed = face_marginal(&row, m);
                for (g, v) in collapsed.iter().enumerate() {
                    assert!((v - duw.matrix[(f, g)]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn q_factorization() {
        let x = weighted();
        let h = cycle(3).unwrap();
        let qd = q_down(&x, 1, &h).unwrap();
        let qu = q_up(&x, 1, &h).unwrap();
        assert_close(
            &qd.compose(&qu).unwrap().matrix,
            &expanderized_down_up(&x, 1, &h).unwrap().matrix,
            1e-12,
        );
        assert_close(
            &qu.compose(&qd).unwrap().matrix,
            &expanderized_up_down(&x, 1, &h.square()).unwrap().matrix,
            1e-12,
        );
    }

    #[test]
    fn expanderized_needs_partite_and_matching_graph() {
        let f = vec![
            (vec!["a".to_string(), "b".to_string()], 1.0),
            (vec!["b".to_string(), "c".to_string()], 1.0),
        ];
        let x = Complex::from_labels(&f, false).unwrap();
        assert!(matches!(
            expanderized_up_down(&x, 1, &cycle(2).unwrap()),
            Err(Error::NotPartite)
        ));
        let y = weighted();
        assert!(matches!(
            expanderized_up_down(&y, 1, &cycle(4).unwrap()),
            Err(Error::GraphSizeMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn scan_order() {
        assert_eq!(scan_coordinate(0, 3), 1);
        assert_eq!(scan_coordinate(2, 3), 0);
    }
}
