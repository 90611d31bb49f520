//! List colorings and Ising models as weighted partite complexes.
//!
//! In both cases side `v` of the complex is vertex (or spin) `v` and a facet
//! is a full assignment. Colorings carry the uniform distribution over
//! proper list colorings; Ising models carry
//! `μ(x) ∝ exp(½⟨x, Jx⟩ + ⟨h, x⟩)` over `x ∈ {±1}^n`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::operators::{down_up, up};
use crate::phi_entropy::{entropy_contraction_check, lee_boosting_bound, test_functions};
use crate::report::{CheckReport, Mode};
use crate::spectral::{gap, spectrum};

/// Largest number of proper colorings enumerated.
pub const COLORING_LIMIT: usize = 1_000_000;
/// Largest Ising model enumerated.
pub const ISING_LIMIT: usize = 20;
/// Largest Ising model whose down-up spectrum is computed.
pub const SPECTRAL_ISING_LIMIT: usize = 12;

const TOL: f64 = 1e-9;

/// `{"edges": [[u, v], …], "lists": [[c, …], …]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringInstance {
    pub edges: Vec<[usize; 2]>,
    pub lists: Vec<Vec<i64>>,
}

impl ColoringInstance {
    pub fn num_vertices(&self) -> usize {
        self.lists.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices();
        if n == 0 {
            return Err(Error::InvalidModel("graph has no vertices".into()));
        }
        for &[u, v] in &self.edges {
            if u >= n || v >= n {
                return Err(Error::InvalidModel(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidModel(format!("self-loop at {u}")));
            }
        }
        for (v, list) in self.lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidModel(format!("vertex {v} has an empty list")));
            }
            let mut s = list.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != list.len() {
                return Err(Error::InvalidModel(format!("vertex {v} repeats a color")));
            }
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &[u, v] in &self.edges {
            if !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `min_v (|L(v)| − deg v)`.
    pub fn k_minus(&self) -> i64 {
        self.slack().into_iter().min().unwrap_or(0)
    }

    /// `max_v (|L(v)| − deg v)`.
    pub fn k_plus(&self) -> i64 {
        self.slack().into_iter().max().unwrap_or(0)
    }

    fn slack(&self) -> Vec<i64> {
        self.degrees()
            .iter()
            .zip(&self.lists)
            .map(|(&d, l)| l.len() as i64 - d as i64)
            .collect()
    }
}

/// Proper list colorings in lexicographic order, by backtracking.
pub fn enumerate_colorings(inst: &ColoringInstance) -> Result<Vec<Vec<i64>>> {
    inst.validate()?;
    let adj = inst.adjacency();
    let lists: Vec<Vec<i64>> = inst
        .lists
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l
        })
        .collect();
    let n = lists.len();
    let mut out = Vec::new();
    let mut current: Vec<i64> = Vec::with_capacity(n);
    fn go(
        v: usize,
        lists: &[Vec<i64>],
        adj: &[Vec<usize>],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        if v == lists.len() {
            if out.len() == COLORING_LIMIT {
                return Err(Error::GuardExceeded {
                    what: "number of proper colorings".into(),
                    limit: COLORING_LIMIT,
                });
            }
            out.push(current.clone());
            return Ok(());
        }
        for &c in &lists[v] {
            if adj[v].iter().any(|&u| u < v && current[u] == c) {
                continue;
            }
            current.push(c);
            go(v + 1, lists, adj, current, out)?;
            current.pop();
        }
        Ok(())
    }
    go(0, &lists, &adj, &mut current, &mut out)?;
    if out.is_empty() {
        return Err(Error::InvalidModel("no proper coloring exists".into()));
    }
    Ok(out)
}

/// The complex of proper list colorings with the uniform distribution.
pub fn coloring_complex(inst: &ColoringInstance) -> Result<Complex> {
    let facets: Vec<(Vec<String>, f64)> = enumerate_colorings(inst)?
        .into_iter()
        .map(|c| (c.iter().map(|x| x.to_string()).collect(), 1.0))
        .collect();
    Complex::from_labels(&facets, true)
}

/// Worst link statistics over `X^(n−2)`.
#[derive(Clone, Debug, Serialize)]
pub struct LinkStats {
    pub max_lambda2: f64,
    pub min_gap: f64,
    /// `min Pr[x ∈ ω | ω ⊇ χ̂]` over codimension-2 faces `χ̂` and link vertices `x`.
    pub min_marginal: f64,
    pub links: usize,
}

pub fn codim_two_link_stats(x: &Complex) -> Result<LinkStats> {
    let n = x.rank();
    let mut stats = LinkStats {
        max_lambda2: f64::NEG_INFINITY,
        min_gap: f64::INFINITY,
        min_marginal: f64::INFINITY,
        links: 0,
    };
    if n < 2 {
        return Ok(stats);
    }
    for face in x.level(n - 2)?.faces() {
        let lg = x.link_graph(face)?;
        let s = spectrum(&lg.walk, true)?;
        stats.max_lambda2 = stats.max_lambda2.max(s.lambda2);
        stats.min_gap = stats.min_gap.min(s.gap);
        // The link has rank 2, so π_1 is half the conditional probability.
        for &p in &lg.walk.mu_in {
            stats.min_marginal = stats.min_marginal.min(2.0 * p);
        }
        stats.links += 1;
    }
    Ok(stats)
}

/// Codimension-2 links of a coloring complex: `λ₂(M) ≤ 1/K₋` and
/// marginals at least `K₋/(Δ + K₊)²`. Vacuous when `K₋ ≤ 0`.
pub fn coloring_link_check(inst: &ColoringInstance) -> Result<Vec<CheckReport>> {
    let x = coloring_complex(inst)?;
    let stats = codim_two_link_stats(&x)?;
    let km = inst.k_minus();
    let kp = inst.k_plus();
    let delta = inst.max_degree() as f64;
    let (lam_bound, marg_bound) = if km >= 1 {
        (1.0 / km as f64, km as f64 / (delta + kp as f64).powi(2))
    } else {
        (f64::INFINITY, 0.0)
    };
    if stats.links == 0 {
        return Ok(Vec::new());
    }
    Ok(vec![
        CheckReport::at_least(
            "max lambda2(M) <= 1/K-",
            lam_bound,
            stats.max_lambda2,
            Mode::Exact,
            TOL,
        ),
        CheckReport::at_least(
            "min link marginal >= K-/(Delta+K+)^2",
            stats.min_marginal,
            marg_bound,
            Mode::Exact,
            TOL,
        ),
    ])
}

/// `{"J": [[…]], "h": […]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsingInstance {
    #[serde(rename = "J")]
    pub j: Vec<Vec<f64>>,
    pub h: Vec<f64>,
}

impl IsingInstance {
    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidModel("no spins".into()));
        }
        if n > ISING_LIMIT {
            return Err(Error::GuardExceeded {
                what: format!("{n} spins"),
                limit: ISING_LIMIT,
            });
        }
        if self.j.len() != n || self.j.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModel(format!("J must be {n} x {n}")));
        }
        if self
            .j
            .iter()
            .flatten()
            .chain(&self.h)
            .any(|v| !v.is_finite())
        {
            return Err(Error::InvalidModel("non-finite entry".into()));
        }
        for a in 0..n {
            for b in 0..a {
                if (self.j[a][b] - self.j[b][a]).abs() > 1e-12 {
                    return Err(Error::InvalidModel(format!(
                        "J is not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn j_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |a, b| self.j[a][b])
    }

    fn eigenvalues(&self) -> Vec<f64> {
        let j = self.j_matrix();
        let sym = (&j + j.transpose()) * 0.5;
        sym.symmetric_eigen().eigenvalues.iter().copied().collect()
    }

    /// Operator norm `‖J‖`.
    pub fn op_norm(&self) -> f64 {
        self.eigenvalues().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_psd(&self) -> bool {
        self.eigenvalues().iter().all(|&v| v >= -1e-12)
    }

    /// Largest operator norm of a `2 × 2` principal submatrix.
    pub fn theta(&self) -> f64 {
        let n = self.n();
        let mut theta: f64 = 0.0;
        for a in 0..n {
            for b in a + 1..n {
                let (p, q, r) = (self.j[a][a], self.j[a][b], self.j[b][b]);
                let mid = 0.5 * (p + r);
                let rad = (0.25 * (p - r) * (p - r) + q * q).sqrt();
                theta = theta.max((mid + rad).abs()).max((mid - rad).abs());
            }
        }
        theta
    }

    pub fn h_inf(&self) -> f64 {
        self.h.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn h_one(&self) -> f64 {
        self.h.iter().map(|v| v.abs()).sum()
    }

    /// Spin configuration of state `s`: spin `i` is `+1` when bit `i` is clear.
    pub fn spins(&self, s: usize) -> Vec<f64> {
        (0..self.n())
            .map(|i| if s >> i & 1 == 0 { 1.0 } else { -1.0 })
            .collect()
    }

    /// `½⟨x, Jx⟩ + ⟨h, x⟩`.
    pub fn log_weight(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut q = 0.0;
        for a in 0..n {
            for b in 0..n {
                q += x[a] * self.j[a][b] * x[b];
            }
        }
        0.5 * q + self.h.iter().zip(x).map(|(h, s)| h * s).sum::<f64>()
    }

    /// Independent spins with the given fields.
    pub fn independent(h: Vec<f64>) -> Self {
        let n = h.len();
        IsingInstance {
            j: vec![vec![0.0; n]; n],
            h,
        }
    }
}

/// An Ising model as a complex; facet `s` is the configuration [`IsingInstance::spins`]`(s)`.
#[derive(Clone, Debug)]
pub struct IsingComplex {
    pub complex: Complex,
    /// Partition function, summed in increasing state order.
    pub z: f64,
    /// The same sum in decreasing order.
    pub z_reverse: f64,
    pub weights: Vec<f64>,
}

pub fn ising_complex(inst: &IsingInstance, require_psd: bool) -> Result<IsingComplex> {
    inst.validate()?;
    if require_psd && !inst.is_psd() {
        return Err(Error::InvalidModel("J is not positive semidefinite".into()));
    }
    let n = inst.n();
    let weights: Vec<f64> = (0..1usize << n)
        .map(|s| inst.log_weight(&inst.spins(s)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let z_reverse: f64 = weights.iter().rev().sum();
    let facets: Vec<(Vec<String>, f64)> = weights
        .iter()
        .enumerate()
        .map(|(s, &w)| {
            let labels = inst
                .spins(s)
                .iter()
                .map(|&v| if v > 0.0 { "+1" } else { "-1" }.to_string())
                .collect();
            (labels, w)
        })
        .collect();
    Ok(IsingComplex {
        complex: Complex::from_labels(&facets, true)?,
        z,
        z_reverse,
        weights,
    })
}

fn require_contractive(inst: &IsingInstance) -> Result<f64> {
    if !inst.is_psd() {
        return Err(Error::InvalidModel("J is not positive semidefinite".into()));
    }
    let norm = inst.op_norm();
    if norm > 1.0 + 1e-12 {
        return Err(Error::InvalidModel(format!("‖J‖ = {norm} exceeds 1")));
    }
    Ok(norm)
}

/// Weight sandwich and minimum-mass bound for PSD `J` with `‖J‖ ≤ 1`.
pub fn gibbs_bounds_check(inst: &IsingInstance) -> Result<Vec<CheckReport>> {
    require_contractive(inst)?;
    let ic = ising_complex(inst, true)?;
    let n = inst.n() as f64;
    let h1 = inst.h_one();
    let wmin = ic.weights.iter().copied().fold(f64::INFINITY, f64::min);
    let wmax = ic.weights.iter().copied().fold(0.0, f64::max);
    let mu_min = ic
        .complex
        .weights()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        CheckReport::at_least(
            "min weight >= exp(-|h|_1)",
            wmin,
            (-h1).exp(),
            Mode::Exact,
            0.0,
        ),
        CheckReport::at_least(
            "max weight <= exp(n+|h|_1)",
            (n + h1).exp(),
            wmax,
            Mode::Exact,
            0.0,
        ),
        CheckReport::at_least(
            "min mu >= exp(-2n-2|h|_1)",
            mu_min,
            (-2.0 * n - 2.0 * h1).exp(),
            Mode::Exact,
            0.0,
        ),
    ])
}

/// Codimension-2 links of an Ising complex with PSD `J`, `‖J‖ ≤ 1`:
/// `Gap(M) ≥ 1 − θ` and marginals at least `½ e^{−4‖h‖∞ − 1}`.
pub fn ising_link_check(inst: &IsingInstance) -> Result<Vec<CheckReport>> {
    require_contractive(inst)?;
    let ic = ising_complex(inst, true)?;
    let stats = codim_two_link_stats(&ic.complex)?;
    if stats.links == 0 {
        return Ok(Vec::new());
    }
    Ok(vec![
        CheckReport::at_least(
            "min Gap(M) >= 1 - theta",
            stats.min_gap,
            1.0 - inst.theta(),
            Mode::Exact,
            TOL,
        ),
        CheckReport::at_least(
            "min link marginal >= exp(-4|h|_inf - 1)/2",
            stats.min_marginal,
            0.5 * (-4.0 * inst.h_inf() - 1.0).exp(),
            Mode::Exact,
            TOL,
        ),
    ])
}

/// `Gap(Duw_{n↔n−1}) ≥ (1 − ‖J‖)/n`, computed exactly.
pub fn ising_gap_check(inst: &IsingInstance) -> Result<CheckReport> {
    let norm = require_contractive(inst)?;
    let n = inst.n();
    if n > SPECTRAL_ISING_LIMIT {
        return Err(Error::GuardExceeded {
            what: format!("{n} spins for an exact spectrum"),
            limit: SPECTRAL_ISING_LIMIT,
        });
    }
    let ic = ising_complex(inst, true)?;
    let g = gap(&down_up(&ic.complex, n - 1)?)?;
    Ok(CheckReport::at_least(
        format!("Gap(Duw_{n}) >= (1 - |J|)/n"),
        g,
        (1.0 - norm) / n as f64,
        Mode::Exact,
        TOL,
    ))
}

/// Entropy contraction inputs for `‖J‖ < 1`: `EC(U_{n−1→n}) ≥ (1 − ‖J‖)/n`
/// and the boosted `EC(U_{n−2→n−1}) ≥ 1/((n−1)(C+1))` with `C = 1/(1 − ‖J‖)`,
/// each checked over the corpus.
pub fn imported_entropy_check(inst: &IsingInstance, seed: u64) -> Result<Vec<CheckReport>> {
    let norm = require_contractive(inst)?;
    if norm >= 1.0 - 1e-12 {
        return Err(Error::InvalidModel("needs ‖J‖ < 1".into()));
    }
    let n = inst.n();
    let ic = ising_complex(inst, true)?;
    let x = &ic.complex;
    let top = up(x, n - 1, n)?;
    let mut out = Vec::new();
    let mut r = entropy_contraction_check(
        &top,
        (1.0 - norm) / n as f64,
        &test_functions(top.cols(), seed),
    )?;
    r.claim = format!("EC(U_{{{}->{n}}}) >= (1-|J|)/n", n - 1);
    out.push(r);
    if n >= 2 {
        let c = 1.0 / (1.0 - norm);
        let lee = lee_boosting_bound(x, c, n - 2)?;
        let u = up(x, n - 2, n - 1)?;
        let mut r = entropy_contraction_check(&u, lee, &test_functions(u.cols(), seed))?;
        r.claim = format!("EC(U_{{{}->{}}}) >= 1/((n-1)(C+1))", n - 2, n - 1);
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(colors: i64) -> ColoringInstance {
        ColoringInstance {
            edges: vec![[0, 1], [1, 2]],
            lists: vec![(0..colors).collect(); 3],
        }
    }

    /// Counts proper colorings by scanning the full product of lists.
    fn brute_count(inst: &ColoringInstance) -> usize {
        let n = inst.num_vertices();
        let sizes: Vec<usize> = inst.lists.iter().map(Vec::len).collect();
        let total: usize = sizes.iter().product();
        (0..total)
            .filter(|&mut_idx| {
                let mut idx = mut_idx;
                let mut c = vec![0; n];
                for v in 0..n {
                    c[v] = inst.lists[v][idx % sizes[v]];
                    idx /= sizes[v];
                }
                inst.edges.iter().all(|&[u, v]| c[u] != c[v])
            })
            .count()
    }

    #[test]
    fn path_coloring_counts() {
        let p = path3(3);
        assert_eq!(enumerate_colorings(&p).unwrap().len(), 12);
        assert_eq!(brute_count(&p), 12);
        let c5 = ColoringInstance {
            edges: (0..5).map(|i| [i, (i + 1) % 5]).collect(),
            lists: vec![vec![0, 1, 2, 3]; 5],
        };
        assert_eq!(enumerate_colorings(&c5).unwrap().len(), brute_count(&c5));
    }

    #[test]
    fn colorings_are_lexicographic() {
        let all = enumerate_colorings(&path3(3)).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn no_coloring_is_an_error() {
        let k3 = ColoringInstance {
            edges: vec![[0, 1], [1, 2], [0, 2]],
            lists: vec![vec![0, 1]; 3],
        };
        assert!(matches!(coloring_complex(&k3), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn ising_pair_partition_function() {
        let inst = IsingInstance::independent(vec![0.0, 0.0]);
        let ic = ising_complex(&inst, true).unwrap();
        assert!((ic.z - 4.0).abs() < 1e-15);
        assert!((ic.z - ic.z_reverse).abs() <= 1e-12 * ic.z);
        for &p in ic.complex.weights() {
            assert!((p - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn independent_spins_gap_is_one_over_n() {
        for n in 2..6 {
            let inst = IsingInstance::independent(vec![0.3; n]);
            let ic = ising_complex(&inst, true).unwrap();
            let g = gap(&down_up(&ic.complex, n - 1).unwrap()).unwrap();
            assert!((g - 1.0 / n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn theta_of_scaled_identity() {
        let inst = IsingInstance {
            j: vec![
                vec![0.5, 0.0, 0.0],
                vec![0.0, 0.5, 0.0],
                vec![0.0, 0.0, 0.5],
            ],
            h: vec![0.0; 3],
        };
        assert!((inst.theta() - 0.5).abs() < 1e-15);
        for r in ising_link_check(&inst).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn rejects_bad_models() {
        let asym = IsingInstance {
            j: vec![vec![0.0, 0.1], vec![0.2, 0.0]],
            h: vec![0.0; 2],
        };
        assert!(asym.validate().is_err());
        let indefinite = IsingInstance {
            j: vec![vec![0.0, 0.5], vec![0.5, 0.0]],
            h: vec![0.0; 2],
        };
        assert!(ising_complex(&indefinite, true).is_err());
        assert!(ising_complex(&indefinite, false).is_ok());
        let big = IsingInstance::independent(vec![0.0; 21]);
        assert!(matches!(big.validate(), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn coloring_props_on_small_graphs() {
        for inst in [path3(3), path3(4)] {
            for r in coloring_link_check(&inst).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
    }
}
