use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::corpus::test_functions;
use super::inequalities::{entropy_contraction_check, log_sobolev_lower_bound};
use super::phi::{entropy_unchecked, Phi};
use crate::complex::{Complex, Face};
use crate::error::Result;
use crate::operators::{down_up, up, up_down, WalkOperator};
use crate::report::{CheckReport, Mode};
use crate::spectral::{adjoint, gap, second_eigenpair, spectrum};

/// Number of starting points for ratio maximization.
pub const STARTS: usize = 64;
const STATIONARITY_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 60;
const GOLDEN_STEPS: usize = 30;

#[derive(Clone, Debug, Serialize)]
pub struct ContractionReport {
    /// `1 − sup Ent(Pf)/Ent(f)`, exact or estimated according to `mode`.
    pub constant: f64,
    pub mode: Mode,
    pub witness: Vec<f64>,
    /// `Ent(P w)/Ent(w)` for the witness `w`.
    pub witness_ratio: f64,
}

fn ratio(p: &WalkOperator, phi: &Phi, f: &[f64]) -> f64 {
    let den = entropy_unchecked(f, &p.mu_out, phi);
    if den <= 1e-14 {
        return 0.0;
    }
    entropy_unchecked(&p.apply(f), &p.mu_in, phi) / den
}

/// `CF_{t²}(P) = Gap(P* P)`, with a non-negative witness attaining the supremum.
pub fn quadratic_contraction(p: &WalkOperator) -> Result<ContractionReport> {
    let pp = adjoint(p)?.compose(p)?;
    let (l2, mut f) = second_eigenpair(&pp)?;
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    for v in &mut f {
        *v -= min;
    }
    let witness_ratio = ratio(p, &Phi::Square, &f);
    Ok(ContractionReport {
        constant: 1.0 - l2,
        mode: Mode::Exact,
        witness: f,
        witness_ratio,
    })
}

/// Multi-start coordinate ascent on `Ent_{μ_in}(Pf) / Ent_{μ_out}(f)` over
/// non-negative `f`. Returns the best ratio found and its witness; the
/// ratio is a lower estimate of the supremum.
pub fn maximize_ratio(p: &WalkOperator, phi: &Phi, starts: usize, seed: u64) -> (f64, Vec<f64>) {
    let dim = p.cols();
    let corpus = test_functions(dim, seed);
    let (best_idx, _) = corpus
        .iter()
        .enumerate()
        .map(|(i, f)| (i, ratio(p, phi, f)))
        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let warm = corpus[best_idx].clone();
    let results: Vec<(f64, Vec<f64>)> = (0..starts)
        .into_par_iter()
        .map(|s| {
            let start = if s == 0 {
                warm.clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
                let f: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() + 0.05).collect();
                let mean: f64 = f.iter().zip(&p.mu_out).map(|(a, m)| a * m).sum();
                f.into_iter().map(|v| v / mean).collect()
            };
            coordinate_ascent(p, phi, start)
        })
        .collect();
    results
        .into_iter()
        .fold((f64::NEG_INFINITY, Vec::new()), |a, b| {
            if b.0 > a.0 {
                b
            } else {
                a
            }
        })
}

fn coordinate_ascent(p: &WalkOperator, phi: &Phi, mut f: Vec<f64>) -> (f64, Vec<f64>) {
    let dim = f.len();
    let mut pf = p.apply(&f);
    let eval = |f: &[f64], pf: &[f64]| {
        let den = entropy_unchecked(f, &p.mu_out, phi);
        if den <= 1e-14 {
            0.0
        } else {
            entropy_unchecked(pf, &p.mu_in, phi) / den
        }
    };
    let mut best = eval(&f, &pf);
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..MAX_SWEEPS {
        let start = best;
        for i in 0..dim {
            let col: Vec<f64> = p.matrix.column(i).iter().copied().collect();
            let old = f[i];
            let hi = 4.0 * f.iter().copied().fold(0.0, f64::max) + 1.0;
            let try_value = |v: f64, f: &mut Vec<f64>, pf: &mut Vec<f64>| {
                let d = v - f[i];
                f[i] = v;
                for (q, c) in pf.iter_mut().zip(&col) {
                    *q += d * c;
                }
                eval(f, pf)
            };
            let (mut a, mut b) = (0.0, hi);
            let mut c = b - gr * (b - a);
            let mut d = a + gr * (b - a);
            let mut fc = try_value(c, &mut f, &mut pf);
            let mut fd = try_value(d, &mut f, &mut pf);
            for _ in 0..GOLDEN_STEPS {
                if fc > fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gr * (b - a);
                    fc = try_value(c, &mut f, &mut pf);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gr * (b - a);
                    fd = try_value(d, &mut f, &mut pf);
                }
            }
            let candidates = [(fc, c), (fd, d), (try_value(0.0, &mut f, &mut pf), 0.0)];
            let (val, arg) = candidates
                .into_iter()
                .fold(
                    (f64::NEG_INFINITY, old),
                    |x, y| if y.0 > x.0 { y } else { x },
                );
            if val > best {
                best = try_value(arg, &mut f, &mut pf);
            } else {
                try_value(old, &mut f, &mut pf);
            }
            // Guard against drift in the incremental update.
            if i % 64 == 63 {
                pf = p.apply(&f);
            }
        }
        pf = p.apply(&f);
        best = eval(&f, &pf);
        if best - start <= STATIONARITY_TOL {
            break;
        }
    }
    (best, f)
}

/// Local contraction `lc_Φ(w)` of the link at `w`: the smallest `c` with
/// `Ent(U_{1→n'} g) ≤ c · Ent(g)` for functions `g` on the link's facets.
#[derive(Clone, Debug, Serialize)]
pub struct LocalContraction {
    pub face: Face,
    pub link_rank: usize,
    pub lc: f64,
    pub mode: Mode,
    /// `1/n' + (n'−1)/n' · λ₂(M_w)` (square Φ only).
    pub closed_form: Option<f64>,
    /// `λ₂(Udw_{1↔n'})` on the link (square Φ only).
    pub spectral: Option<f64>,
    /// A proven upper bound on `lc`.
    pub certified_upper: f64,
    #[serde(skip)]
    pub witness: Vec<f64>,
}

pub fn local_contraction(x: &Complex, w: &Face, phi: &Phi, seed: u64) -> Result<LocalContraction> {
    let n1 = x.rank() - w.len();
    if n1 <= 1 {
        // U_{1→1} is the identity.
        x.conditional(w)?;
        return Ok(LocalContraction {
            face: w.clone(),
            link_rank: n1,
            lc: 1.0,
            mode: Mode::Exact,
            closed_form: Some(1.0),
            spectral: Some(1.0),
            certified_upper: 1.0,
            witness: Vec::new(),
        });
    }
    let link = x.pin(w)?;
    let u = up(&link, 1, n1)?;
    match phi {
        Phi::Square => {
            let m = spectrum(&x.link_graph(w)?.walk, true)?;
            let closed = 1.0 / n1 as f64 + (n1 - 1) as f64 / n1 as f64 * m.lambda2;
            let spectral = spectrum(&up_down(&link, 1)?, true)?.lambda2;
            let q = quadratic_contraction(&u)?;
            Ok(LocalContraction {
                face: w.clone(),
                link_rank: n1,
                lc: spectral,
                mode: Mode::Exact,
                closed_form: Some(closed),
                spectral: Some(spectral),
                certified_upper: spectral,
                witness: q.witness,
            })
        }
        _ => {
            let (r, witness) = maximize_ratio(&u, phi, STARTS, seed);
            let certified_upper = match phi {
                Phi::XLogX => 1.0 - log_sobolev_lower_bound(&down_up(&link, 1)?)?.bound,
                _ => 1.0,
            };
            Ok(LocalContraction {
                face: w.clone(),
                link_rank: n1,
                lc: r,
                mode: Mode::EstimatedLowerCertificate,
                closed_form: None,
                spectral: None,
                certified_upper,
                witness,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductGapReport {
    pub ell: usize,
    pub phi: String,
    /// `min over chains Π (1 − lc)` using the reported `lc` values.
    pub certificate: f64,
    /// The same minimum using proven upper bounds on `lc`.
    pub certified_certificate: f64,
    /// Contraction of `U_{ℓ→n}`: exact for square Φ, estimated otherwise.
    pub contraction: f64,
    pub chains: usize,
    pub checks: Vec<CheckReport>,
}

/// Minimum over chains `∅ ⊊ ω¹ ⊊ … ⊊ ω^ℓ` of `Π_{j<ℓ} factor(ω^j)`, by
/// dynamic programming over faces. All factors must be non-negative.
pub fn min_chain_product(x: &Complex, ell: usize, factor: impl Fn(&Face) -> f64) -> Result<f64> {
    let mut prev: HashMap<Face, f64> = HashMap::new();
    prev.insert(Face::empty(), 1.0);
    for i in 1..=ell {
        let mut next = HashMap::new();
        for face in x.level(i)?.faces() {
            let mut best = f64::INFINITY;
            for &v in face.vertices() {
                let sub = face.minus(&Face::new(vec![v]));
                best = best.min(prev[&sub] * factor(&sub));
            }
            next.insert(face.clone(), best);
        }
        prev = next;
    }
    Ok(prev.values().copied().fold(f64::INFINITY, f64::min))
}

/// Checks that the contraction of `U_{ℓ→n}` is at least the chain product
/// of local contractions.
pub fn product_gap_certificate(
    x: &Complex,
    ell: usize,
    phi: &Phi,
    seed: u64,
) -> Result<ProductGapReport> {
    let n = x.rank();
    let mut local: HashMap<Face, LocalContraction> = HashMap::new();
    for j in 0..ell {
        for face in x.level(j)?.faces() {
            local.insert(face.clone(), local_contraction(x, face, phi, seed)?);
        }
    }
    let certificate = min_chain_product(x, ell, |f| 1.0 - local[f].lc)?;
    let certified_certificate = min_chain_product(x, ell, |f| 1.0 - local[f].certified_upper)?;
    let chains = x.level(ell)?.len() * (1..=ell).product::<usize>();
    let u = up(x, ell, n)?;
    let mut checks = Vec::new();
    let contraction = match phi {
        Phi::Square => {
            let cf = quadratic_contraction(&u)?.constant;
            checks.push(CheckReport::at_least(
                format!("CF_square(U_{{{ell}->{n}}}) >= min chain product"),
                cf,
                certificate,
                Mode::Exact,
                1e-9,
            ));
            cf
        }
        _ => {
            let (r, _) = maximize_ratio(&u, phi, STARTS, seed);
            let est = 1.0 - r;
            if let Phi::XLogX = phi {
                let miclo = log_sobolev_lower_bound(&down_up(x, ell)?)?.bound;
                let certified = certified_certificate.max(miclo);
                let corpus = test_functions(u.cols(), seed);
                let mut c = entropy_contraction_check(&u, certified, &corpus)?;
                c.claim = format!("EC(U_{{{ell}->{n}}}) >= certified chain bound");
                checks.push(c);
            }
            checks.push(CheckReport::at_least(
                format!(
                    "estimated CF_{}(U_{{{ell}->{n}}}) vs estimated chain product",
                    phi.name()
                ),
                est,
                certificate,
                Mode::Diagnostic,
                1e-9,
            ));
            est
        }
    };
    Ok(ProductGapReport {
        ell,
        phi: phi.name().to_string(),
        certificate,
        certified_certificate,
        contraction,
        chains,
        checks,
    })
}

/// `Gap(Duw_{n↔ℓ}) ≥ ((n−ℓ)/n) · Π_{i<ℓ} min_{w ∈ X^(i)} Gap(M_w)`.
pub fn down_up_gap_check(x: &Complex, ell: usize) -> Result<CheckReport> {
    let n = x.rank();
    let g = gap(&down_up(x, ell)?)?;
    let mut bound = (n - ell) as f64 / n as f64;
    if ell < n {
        for i in 0..ell {
            let mut worst = f64::INFINITY;
            for w in x.level(i)?.faces() {
                worst = worst.min(gap(&x.link_graph(w)?.walk)?);
            }
            bound *= worst;
        }
    }
    Ok(CheckReport::at_least(
        format!("Gap(Duw_{{{n}<->{ell}}}) >= ((n-l)/n) prod Gap_i"),
        g,
        bound,
        Mode::Exact,
        1e-9,
    ))
}
