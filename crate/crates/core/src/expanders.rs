//! Labelled regular graphs.
//!
//! A `k`-regular graph on `m` vertices is stored as a rotation map
//! `Out(v, a)` for labels `a ∈ [k]`. Self-loops and parallel edges are
//! allowed; the graph is symmetric when the arc-count matrix is. Its random
//! walk is `A_H(u, v) = #{a : Out(u, a) = v} / k`, and the quantity that
//! matters throughout is the two-sided expansion `λ(H) = max(λ₂, |λ_min|)`.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledRegularGraph {
    m: usize,
    k: usize,
    out: Vec<usize>,
}

/// Eigen-summary of a graph's random walk.
#[derive(Clone, Debug, Serialize)]
pub struct GraphSpectrum {
    pub vertices: usize,
    pub degree: usize,
    pub lambda2: f64,
    pub lambda_min: f64,
    pub lambda: f64,
    pub gap_star: f64,
}

impl LabelledRegularGraph {
    /// Builds a graph from explicit neighbor lists, checking ranges and symmetry.
    pub fn new(m: usize, k: usize, out: Vec<usize>) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidGraph(
                "need at least one vertex and degree ≥ 1".into(),
            ));
        }
        if out.len() != m * k {
            return Err(Error::InvalidGraph(format!(
                "rotation map has {} entries, expected {}",
                out.len(),
                m * k
            )));
        }
        if let Some(&bad) = out.iter().find(|&&w| w >= m) {
            return Err(Error::InvalidGraph(format!("neighbor {bad} out of range")));
        }
        let g = LabelledRegularGraph { m, k, out };
        let c = g.arc_counts();
        for u in 0..m {
            for v in 0..u {
                if c[(u, v)] != c[(v, u)] {
                    return Err(Error::InvalidGraph(format!(
                        "arc counts differ between {u} and {v}"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn from_rotation(m: usize, k: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let out = (0..m)
            .flat_map(|v| (0..k).map(move |a| (v, a)))
            .map(|(v, a)| f(v, a))
            .collect();
        Self::new(m, k, out)
    }

    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn out(&self, v: usize, a: usize) -> usize {
        self.out[v * self.k + a]
    }

    /// Neighbors of `v` in label order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.out[v * self.k..(v + 1) * self.k]
    }

    pub fn arc_counts(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.m, self.m);
        for v in 0..self.m {
            for &w in self.neighbors(v) {
                c[(v, w)] += 1.0;
            }
        }
        c
    }

    /// The random-walk matrix `A_H`.
    pub fn walk_matrix(&self) -> DMatrix<f64> {
        self.arc_counts() / self.k as f64
    }

    /// `H²` with labels `(a, b) ↦ a·k + b` and `Out(v, (a, b)) = Out(Out(v, a), b)`.
    pub fn square(&self) -> Self {
        let k2 = self.k * self.k;
        let mut out = Vec::with_capacity(self.m * k2);
        for v in 0..self.m {
            for a in 0..self.k {
                let w = self.out(v, a);
                for b in 0..self.k {
                    out.push(self.out(w, b));
                }
            }
        }
        LabelledRegularGraph {
            m: self.m,
            k: k2,
            out,
        }
    }

    /// Eigenvalues of `A_H`, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let a = self.walk_matrix();
        let sym = (&a + a.transpose()) * 0.5;
        let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|x, y| y.total_cmp(x));
        ev
    }

    pub fn spectrum(&self) -> GraphSpectrum {
        let ev = self.eigenvalues();
        let lambda2 = if ev.len() > 1 { ev[1] } else { 0.0 };
        let lambda_min = if ev.len() > 1 { ev[ev.len() - 1] } else { 0.0 };
        let lambda = lambda2.max(lambda_min.abs());
        GraphSpectrum {
            vertices: self.m,
            degree: self.k,
            lambda2,
            lambda_min,
            lambda,
            gap_star: 1.0 - lambda,
        }
    }

    /// Two-sided expansion `λ(H)`.
    pub fn lambda(&self) -> f64 {
        self.spectrum().lambda
    }

    /// Text form: a header `m k`, then one line of `k` neighbor ids per vertex.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.m, self.k);
        for v in 0..self.m {
            let line: Vec<String> = self.neighbors(v).iter().map(|w| w.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty graph file".into(),
        })?;
        let nums = parse_ints(header, hl + 1)?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hl + 1,
                msg: "header must be `vertices degree`".into(),
            });
        }
        let (m, k) = (nums[0], nums[1]);
        let mut out = Vec::with_capacity(m * k);
        for v in 0..m {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: hl + 2 + v,
                msg: format!("missing neighbor line for vertex {v}"),
            })?;
            let row = parse_ints(line, ln + 1)?;
            if row.len() != k {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected {k} neighbors, found {}", row.len()),
                });
            }
            out.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln + 1,
                msg: "trailing content after the neighbor lists".into(),
            });
        }
        Self::new(m, k, out)
    }
}

fn parse_ints(line: &str, ln: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|e| Error::Parse {
                line: ln,
                msg: format!("{t:?}: {e}"),
            })
        })
        .collect()
}

/// Complete graph with a loop at every vertex: `k = m`, `Out(v, a) = a`.
/// Its walk is the all-`1/m` matrix, so `λ = 0`.
pub fn clique_loops(m: usize) -> Result<LabelledRegularGraph> {
    LabelledRegularGraph::from_rotation(m, m, |_, a| a)
}

/// Undirected cycle, `Out(v, 0) = v + 1`, `Out(v, 1) = v − 1` (mod m).
pub fn cycle(m: usize) -> Result<LabelledRegularGraph> {
    LabelledRegularGraph::from_rotation(
        m,
        2,
        |v, a| if a == 0 { (v + 1) % m } else { (v + m - 1) % m },
    )
}

/// The `d`-dimensional hypercube on `2^d` vertices.
pub fn hypercube(d: usize) -> Result<LabelledRegularGraph> {
    if d == 0 || d > 20 {
        return Err(Error::InfeasibleGraph(format!("hypercube dimension {d}")));
    }
    LabelledRegularGraph::from_rotation(1 << d, d, |v, a| v ^ (1 << a))
}

/// Complete graph without loops, `k = m − 1`.
pub fn complete(m: usize) -> Result<LabelledRegularGraph> {
    if m < 2 {
        return Err(Error::InfeasibleGraph(
            "complete graph needs at least 2 vertices".into(),
        ));
    }
    LabelledRegularGraph::from_rotation(m, m - 1, |v, a| if a < v { a } else { a + 1 })
}

/// One loop per vertex; the walk never moves, so `λ = 1` when `m > 1`.
pub fn self_loops(m: usize) -> Result<LabelledRegularGraph> {
    LabelledRegularGraph::from_rotation(m, 1, |v, _| v)
}

/// Random `k`-regular multigraph from `⌊k/2⌋` uniform permutations and
/// their inverses, plus a uniform perfect matching when `k` is odd.
pub fn random_regular(m: usize, k: usize, seed: u64) -> Result<LabelledRegularGraph> {
    if m == 0 || k == 0 {
        return Err(Error::InfeasibleGraph(format!("m = {m}, k = {k}")));
    }
    if k % 2 == 1 && m % 2 == 1 {
        return Err(Error::InfeasibleGraph(format!(
            "odd degree {k} needs an even number of vertices, got {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0; m * k];
    for i in 0..k / 2 {
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.shuffle(&mut rng);
        for v in 0..m {
            out[v * k + 2 * i] = sigma[v];
            out[sigma[v] * k + 2 * i + 1] = v;
        }
    }
    if k % 2 == 1 {
        let mut verts: Vec<usize> = (0..m).collect();
        verts.shuffle(&mut rng);
        for pair in verts.chunks(2) {
            out[pair[0] * k + k - 1] = pair[1];
            out[pair[1] * k + k - 1] = pair[0];
        }
    }
    LabelledRegularGraph::new(m, k, out)
}

/// Result of a successful certification.
#[derive(Clone, Debug)]
pub struct Certified {
    pub graph: LabelledRegularGraph,
    pub lambda: f64,
    /// Zero-based try whose seed produced the graph.
    pub attempt: usize,
    pub seed: u64,
}

/// Draws random regular graphs with seeds `seed, seed + 1, …` until the
/// eigensolver certifies `λ(H) ≤ target`.
pub fn certify_random_regular(
    m: usize,
    k: usize,
    target: f64,
    max_tries: usize,
    seed: u64,
) -> Result<Certified> {
    let mut best = f64::INFINITY;
    for attempt in 0..max_tries {
        let s = seed.wrapping_add(attempt as u64);
        let g = random_regular(m, k, s)?;
        let lambda = g.lambda();
        if lambda <= target {
            return Ok(Certified {
                graph: g,
                lambda,
                attempt,
                seed: s,
            });
        }
        best = best.min(lambda);
    }
    Err(Error::CertificationFailed {
        tries: max_tries,
        best_lambda: best,
        target,
    })
}

/// `λ(H)` estimated as the spectral radius of `A_H − J` by power iteration.
/// Used as an independent cross-check of the eigensolver.
pub fn power_iteration_lambda(g: &LabelledRegularGraph, iters: usize, seed: u64) -> f64 {
    let m = g.num_vertices();
    let a = g.walk_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = DVector::from_fn(m, |_, _| rng.gen::<f64>() - 0.5);
    let project = |v: &mut DVector<f64>| {
        let mean = v.mean();
        v.add_scalar_mut(-mean);
    };
    project(&mut v);
    let norm = v.norm();
    if norm == 0.0 {
        return 0.0;
    }
    v /= norm;
    let mut est = 0.0;
    for _ in 0..iters {
        let mut w = &a * &v;
        project(&mut w);
        est = w.norm();
        if est < 1e-300 {
            return 0.0;
        }
        v = w / est;
    }
    est
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_loops_is_perfect() {
        let g = clique_loops(6).unwrap();
        assert!(g.lambda().abs() < 1e-12);
    }

    #[test]
    fn six_cycle_spectrum() {
        let g = cycle(6).unwrap();
        let s = g.spectrum();
        assert!((s.lambda2 - 0.5).abs() < 1e-12);
        assert!((s.lambda_min + 1.0).abs() < 1e-12);
        assert!((s.lambda - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complete_and_hypercube() {
        let g = complete(5).unwrap();
        assert!((g.lambda() - 0.25).abs() < 1e-12);
        assert_eq!(g.out(2, 1), 1);
        assert_eq!(g.out(2, 2), 3);
        let h = hypercube(3).unwrap();
        let s = h.spectrum();
        assert!((s.lambda2 - 1.0 / 3.0).abs() < 1e-12);
        assert!((s.lambda_min + 1.0).abs() < 1e-12);
    }

    #[test]
    fn self_loops_never_move() {
        let g = self_loops(4).unwrap();
        assert!((g.lambda() - 1.0).abs() < 1e-12);
        assert!((self_loops(1).unwrap().lambda()).abs() < 1e-12);
    }

    #[test]
    fn square_squares_lambda() {
        for g in [
            cycle(7).unwrap(),
            complete(4).unwrap(),
            random_regular(10, 3, 4).unwrap(),
        ] {
            let l = g.lambda();
            assert!((g.square().lambda() - l * l).abs() < 1e-9);
        }
    }

    #[test]
    fn random_regular_is_regular_and_symmetric() {
        for (m, k) in [(10, 4), (8, 3), (5, 2), (1, 4)] {
            let g = random_regular(m, k, 11).unwrap();
            let c = g.arc_counts();
            for v in 0..m {
                assert!((c.row(v).sum() - k as f64).abs() < 1e-12);
                assert!((c.column(v).sum() - k as f64).abs() < 1e-12);
            }
        }
        assert!(random_regular(5, 3, 0).is_err());
    }

    #[test]
    fn asymmetric_rotation_rejected() {
        let err = LabelledRegularGraph::new(3, 1, vec![1, 2, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
    }

    #[test]
    fn certification_reports_best() {
        let c = certify_random_regular(12, 4, 0.9, 50, 0).unwrap();
        assert!(c.lambda <= 0.9);
        assert_eq!(c.graph, random_regular(12, 4, c.seed).unwrap());
        match certify_random_regular(12, 2, 0.1, 5, 0) {
            Err(Error::CertificationFailed { best_lambda, .. }) => assert!(best_lambda > 0.1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let g = random_regular(8, 3, 2).unwrap();
        let back = LabelledRegularGraph::from_text(&g.to_text()).unwrap();
        assert_eq!(g, back);
        let err = LabelledRegularGraph::from_text("2 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = LabelledRegularGraph::from_text("2 1\n1\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
