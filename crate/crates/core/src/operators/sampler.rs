//! Single-step samplers for every walk, with exact accounting of the random
//! bits they consume.
//!
//! Randomness comes from a [`BitSource`]. A uniform draw from `{0, …, m−1}`
//! reads `⌈log₂ m⌉` bits and retries on overflow; every read, rejected or
//! not, is charged. Draws that pick a coordinate subset or an expander label
//! are additionally counted as index bits. Resampling a facet given a face
//! enumerates the conditional law exactly: uniform laws use an integer draw,
//! others invert the CDF at a 53-bit uniform real.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::scan_coordinate;
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::expanders::LabelledRegularGraph;
use crate::subsets::{binomial, bits_for, colex_rank, colex_unrank, combinations};

/// Bit-counting wrapper around a seeded ChaCha stream.
#[derive(Clone, Debug)]
pub struct BitSource {
    rng: ChaCha8Rng,
    buffer: u64,
    available: u32,
    bits_used: u64,
    index_bits: u64,
}

impl BitSource {
    pub fn new(seed: u64) -> Self {
        BitSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            buffer: 0,
            available: 0,
            bits_used: 0,
            index_bits: 0,
        }
    }

    pub fn bits_used(&self) -> u64 {
        self.bits_used
    }

    pub fn index_bits(&self) -> u64 {
        self.index_bits
    }

    /// Reads `b ≤ 64` bits.
    pub fn take(&mut self, b: u32) -> u64 {
        let mut out = 0u64;
        let mut got = 0;
        while got < b {
            if self.available == 0 {
                self.buffer = self.rng.next_u64();
                self.available = 64;
            }
            let n = (b - got).min(self.available);
            let chunk = if n == 64 {
                self.buffer
            } else {
                self.buffer & ((1u64 << n) - 1)
            };
            self.buffer = if n == 64 { 0 } else { self.buffer >> n };
            self.available -= n;
            out |= chunk << got;
            got += n;
        }
        self.bits_used += b as u64;
        out
    }

    /// Uniform draw from `{0, …, m−1}` by rejection.
    pub fn uniform(&mut self, m: usize) -> usize {
        let b = bits_for(m);
        if b == 0 {
            return 0;
        }
        loop {
            let v = self.take(b) as usize;
            if v < m {
                return v;
            }
        }
    }

    /// As [`uniform`](Self::uniform), also charged to the index-bit counter.
    pub fn uniform_index(&mut self, m: usize) -> usize {
        let before = self.bits_used;
        let v = self.uniform(m);
        self.index_bits += self.bits_used - before;
        v
    }

    /// Uniform real in `[0, 1)` from 53 bits.
    pub fn unit_real(&mut self) -> f64 {
        self.take(53) as f64 / (1u64 << 53) as f64
    }

    /// Index drawn from a probability vector.
    pub fn weighted(&mut self, probs: &[f64]) -> usize {
        match probs.len() {
            0 => panic!("empty distribution"),
            1 => 0,
            len => {
                let first = probs[0];
                if probs
                    .iter()
                    .all(|&p| (p - first).abs() <= 1e-15 * first.abs().max(1.0))
                {
                    return self.uniform(len);
                }
                let u = self.unit_real();
                let mut acc = 0.0;
                for (i, &p) in probs.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        return i;
                    }
                }
                probs.iter().rposition(|&p| p > 0.0).unwrap_or(len - 1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkKind {
    DownUp,
    UpDown,
    Scan,
    ExpanderizedDownUp,
    ExpanderizedUpDown,
}

impl WalkKind {
    pub fn name(self) -> &'static str {
        match self {
            WalkKind::DownUp => "down-up",
            WalkKind::UpDown => "up-down",
            WalkKind::Scan => "scan",
            WalkKind::ExpanderizedDownUp => "expanderized-down-up",
            WalkKind::ExpanderizedUpDown => "expanderized-up-down",
        }
    }

    pub fn parse(s: &str) -> Option<WalkKind> {
        [
            WalkKind::DownUp,
            WalkKind::UpDown,
            WalkKind::Scan,
            WalkKind::ExpanderizedDownUp,
            WalkKind::ExpanderizedUpDown,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }

    pub fn is_expanderized(self) -> bool {
        matches!(
            self,
            WalkKind::ExpanderizedDownUp | WalkKind::ExpanderizedUpDown
        )
    }

    /// Whether states live in `X^(ℓ)` rather than on the facets.
    pub fn on_lower_level(self) -> bool {
        matches!(self, WalkKind::UpDown | WalkKind::ExpanderizedUpDown)
    }
}

#[derive(Clone, Debug)]
pub struct WalkSpec {
    pub kind: WalkKind,
    pub ell: usize,
    pub graph: Option<LabelledRegularGraph>,
}

impl WalkSpec {
    /// Checks the spec against a complex.
    pub fn validate(&self, x: &Complex) -> Result<()> {
        let n = x.rank();
        if self.ell > n {
            return Err(Error::LevelOutOfRange {
                level: self.ell,
                rank: n,
            });
        }
        if self.kind == WalkKind::Scan {
            x.require_top_partite()?;
        }
        if self.kind.is_expanderized() {
            x.require_top_partite()?;
            let g = self
                .graph
                .as_ref()
                .ok_or_else(|| Error::InvalidState("expanderized walk needs a graph".into()))?;
            let m = binomial(n, self.ell) as usize;
            if g.num_vertices() != m {
                return Err(Error::GraphSizeMismatch {
                    expected: m,
                    found: g.num_vertices(),
                });
            }
        }
        Ok(())
    }

    /// Index bits a single step reads when no draw is rejected.
    pub fn nominal_index_bits(&self, n: usize) -> u32 {
        match self.kind {
            WalkKind::DownUp | WalkKind::UpDown => bits_for(binomial(n, self.ell) as usize),
            WalkKind::Scan => 0,
            WalkKind::ExpanderizedDownUp => {
                2 * bits_for(self.graph.as_ref().map_or(1, |g| g.degree()))
            }
            WalkKind::ExpanderizedUpDown => bits_for(self.graph.as_ref().map_or(1, |g| g.degree())),
        }
    }
}

/// State of a chain. `state` indexes the facets, or `X^(ℓ)` for the up-down
/// walks; `subset` is the colex rank of the current coordinate subset for
/// the expanderized down-up walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainState {
    pub state: usize,
    pub subset: Option<usize>,
    pub step: u64,
}

impl ChainState {
    pub fn new(state: usize, subset: Option<usize>) -> Self {
        ChainState {
            state,
            subset,
            step: 0,
        }
    }
}

fn subset_of(x: &Complex, facet: &Face, positions: &[usize]) -> Result<Face> {
    if x.is_partite() {
        x.restrict(facet, positions)
    } else {
        Ok(Face::new(
            positions.iter().map(|&p| facet.vertices()[p]).collect(),
        ))
    }
}

fn resample(x: &Complex, face: &Face, bits: &mut BitSource) -> Result<usize> {
    let cond = x.conditional(face)?;
    let probs: Vec<f64> = cond.iter().map(|&(_, p)| p).collect();
    Ok(cond[bits.weighted(&probs)].0)
}

/// Advances `state` by one step of the walk.
pub fn sampler_step(
    x: &Complex,
    spec: &WalkSpec,
    state: &mut ChainState,
    bits: &mut BitSource,
) -> Result<()> {
    let n = x.rank();
    let ell = spec.ell;
    let m = binomial(n, ell) as usize;
    let facets = x.facets();
    match spec.kind {
        WalkKind::DownUp => {
            let facet = checked(facets, state.state)?;
            let s = colex_unrank(bits.uniform_index(m), ell);
            let face = subset_of(x, facet, &s)?;
            state.state = resample(x, &face, bits)?;
        }
        WalkKind::UpDown => {
            let level = x.level(ell)?;
            let face = checked(level.faces(), state.state)?;
            let f = resample(x, face, bits)?;
            let s = colex_unrank(bits.uniform_index(m), ell);
            let next = subset_of(x, &facets[f], &s)?;
            state.state = level.index_of(&next).expect("subface of a facet");
        }
        WalkKind::Scan => {
            let facet = checked(facets, state.state)?;
            let i = scan_coordinate(state.step, n);
            let keep: Vec<usize> = (0..n).filter(|&s| s != i).collect();
            let face = x.restrict(facet, &keep)?;
            state.state = resample(x, &face, bits)?;
        }
        WalkKind::ExpanderizedDownUp => {
            let h = spec
                .graph
                .as_ref()
                .ok_or(Error::InvalidState("missing graph".into()))?;
            let facet = checked(facets, state.state)?;
            let s = state.subset.unwrap_or(0);
            if s >= m {
                return Err(Error::InvalidState(format!("subset {s} out of range")));
            }
            let t = h.out(s, bits.uniform_index(h.degree()));
            let face = x.restrict(facet, &colex_unrank(t, ell))?;
            state.state = resample(x, &face, bits)?;
            state.subset = Some(h.out(t, bits.uniform_index(h.degree())));
        }
        WalkKind::ExpanderizedUpDown => {
            let h = spec
                .graph
                .as_ref()
                .ok_or(Error::InvalidState("missing graph".into()))?;
            let level = x.level(ell)?;
            let face = checked(level.faces(), state.state)?;
            let s = colex_rank(&x.typ(face)?);
            let f = resample(x, face, bits)?;
            let t = h.out(s, bits.uniform_index(h.degree()));
            let next = x.restrict(&facets[f], &colex_unrank(t, ell))?;
            state.state = level.index_of(&next).expect("restriction of a facet");
        }
    }
    state.step += 1;
    Ok(())
}

fn checked<T>(items: &[T], i: usize) -> Result<&T> {
    items
        .get(i)
        .ok_or_else(|| Error::InvalidState(format!("state {i} out of range")))
}

/// One row of a trajectory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryRow {
    pub step: u64,
    pub state_id: usize,
    pub subset_id: Option<usize>,
    pub bits_used: u64,
}

/// Runs `steps` steps from `start`, recording the initial state and every step.
pub fn run_trajectory(
    x: &Complex,
    spec: &WalkSpec,
    start: ChainState,
    steps: u64,
    seed: u64,
) -> Result<Vec<TrajectoryRow>> {
    spec.validate(x)?;
    let mut bits = BitSource::new(seed);
    let mut state = start;
    let mut rows = Vec::with_capacity(steps as usize + 1);
    let row = |s: &ChainState, b: &BitSource| TrajectoryRow {
        step: s.step,
        state_id: s.state,
        subset_id: s.subset,
        bits_used: b.bits_used(),
    };
    rows.push(row(&state, &bits));
    for _ in 0..steps {
        sampler_step(x, spec, &mut state, &mut bits)?;
        rows.push(row(&state, &bits));
    }
    Ok(rows)
}

/// Every `k`-subset of the facet positions, used by reference checks.
pub fn position_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(&(0..n).collect::<Vec<_>>(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::k3_colorings;
    use crate::expanders::cycle;
    use crate::operators::{down_up, expanderized_down_up};

    #[test]
    fn take_spans_word_boundaries() {
        let mut a = BitSource::new(5);
        let mut b = BitSource::new(5);
        let whole = a.take(64);
        let lo = b.take(40);
        let hi = b.take(24);
        assert_eq!(whole, lo | (hi << 40));
        assert_eq!(b.bits_used(), 64);
    }

    #[test]
    fn uniform_charges_rejections() {
        let mut b = BitSource::new(1);
        let mut draws = 0;
        for _ in 0..1000 {
            let before = b.bits_used();
            assert!(b.uniform_index(5) < 5);
            draws += (b.bits_used() - before) / 3;
        }
        assert_eq!(b.index_bits(), 3 * draws);
        assert!(draws > 1000);
    }

    #[test]
    fn down_up_step_law_matches_matrix() {
        let x = k3_colorings();
        let spec = WalkSpec {
            kind: WalkKind::DownUp,
            ell: 1,
            graph: None,
        };
        let p = down_up(&x, 1).unwrap();
        let n_draws = 100_000;
        let mut counts = vec![0usize; x.facets().len()];
        let mut bits = BitSource::new(3);
        for _ in 0..n_draws {
            let mut s = ChainState::new(0, None);
            sampler_step(&x, &spec, &mut s, &mut bits).unwrap();
            counts[s.state] += 1;
        }
        for (j, &c) in counts.iter().enumerate() {
            let q = p.matrix[(0, j)];
            let sd = (q * (1.0 - q) / n_draws as f64).sqrt();
            assert!(
                (c as f64 / n_draws as f64 - q).abs() <= 3.0 * sd + 1e-12,
                "column {j}"
            );
        }
    }

    #[test]
    fn expanderized_step_law_matches_matrix() {
        let x = k3_colorings();
        let h = cycle(3).unwrap();
        let spec = WalkSpec {
            kind: WalkKind::ExpanderizedDownUp,
            ell: 2,
            graph: Some(h.clone()),
        };
        let p = expanderized_down_up(&x, 2, &h).unwrap();
        let n_draws = 100_000;
        let mut counts = vec![0usize; p.cols()];
        let mut bits = BitSource::new(9);
        for _ in 0..n_draws {
            let mut s = ChainState::new(2, Some(1));
            sampler_step(&x, &spec, &mut s, &mut bits).unwrap();
            counts[s.state * 3 + s.subset.unwrap()] += 1;
        }
        for (j, &c) in counts.iter().enumerate() {
            let q = p.matrix[(2 * 3 + 1, j)];
            let sd = (q * (1.0 - q) / n_draws as f64).sqrt();
            assert!(
                (c as f64 / n_draws as f64 - q).abs() <= 3.0 * sd + 1e-12,
                "column {j}"
            );
        }
    }

    #[test]
    fn scan_uses_no_index_bits() {
        let x = k3_colorings();
        let spec = WalkSpec {
            kind: WalkKind::Scan,
            ell: 2,
            graph: None,
        };
        let mut bits = BitSource::new(0);
        let mut s = ChainState::new(0, None);
        for _ in 0..30 {
            sampler_step(&x, &spec, &mut s, &mut bits).unwrap();
        }
        assert_eq!(bits.index_bits(), 0);
        assert_eq!(
            bits.bits_used(),
            0,
            "proper 3-colorings of a triangle are frozen under single-site moves"
        );
    }

    #[test]
    fn walk_names_round_trip() {
        for k in [
            WalkKind::DownUp,
            WalkKind::Scan,
            WalkKind::ExpanderizedUpDown,
        ] {
            assert_eq!(WalkKind::parse(k.name()), Some(k));
        }
        assert_eq!(WalkKind::parse("glauber"), None);
    }
}
