use rayon::prelude::*;
use serde::Serialize;

use super::phi::{entropy_unchecked, phi_entropy, Phi};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::operators::{down, down_up, up, up_down, WalkOperator};
use crate::report::{CheckReport, Mode};
use crate::spectral::{adjoint, gap, spectrum};

const CORPUS_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-10;

/// Dirichlet form `⟨f, (I − P) f⟩_μ` of a square operator.
pub fn dirichlet_form(p: &WalkOperator, f: &[f64]) -> f64 {
    let pf = p.apply(f);
    f.iter()
        .zip(&pf)
        .zip(&p.mu_in)
        .map(|((a, b), m)| m * a * (a - b))
        .sum()
}

/// Log-Sobolev constant of the two-point-or-more reference chain `J_π`
/// as a function of the smallest mass, on a support of `size` points.
///
/// One point carries no entropy (constant 1). Otherwise the value is
/// `(1 − 2π⋆)/log(1/π⋆ − 1)`, whose limit at `π⋆ = 1/2` is `1/2`.
pub fn dsc_constant(pi_star: f64, size: usize) -> f64 {
    if size <= 1 {
        return 1.0;
    }
    if (0.5 - pi_star).abs() < 1e-9 {
        return 0.5;
    }
    (1.0 - 2.0 * pi_star) / (1.0 / pi_star - 1.0).ln()
}

#[derive(Clone, Debug, Serialize)]
pub struct LsBound {
    pub gap: f64,
    pub pi_star: f64,
    pub factor: f64,
    /// `Gap(P) · factor`, a proven lower bound on `LS(P)`.
    pub bound: f64,
}

/// `LS(P) ≥ Gap(P) · (1 − 2π⋆)/log(1/π⋆ − 1)` for reversible `P`.
pub fn log_sobolev_lower_bound(p: &WalkOperator) -> Result<LsBound> {
    let s = spectrum(p, true)?;
    let pi_star = p.mu_in.iter().copied().fold(f64::INFINITY, f64::min);
    let factor = dsc_constant(pi_star, p.rows());
    Ok(LsBound {
        gap: s.gap,
        pi_star,
        factor,
        bound: s.gap * factor,
    })
}

/// Checks `num(f) ≥ c · den(f)` on every corpus function.
fn corpus_check(
    claim: String,
    corpus: &[Vec<f64>],
    c: f64,
    mode: Mode,
    eval: impl Fn(&[f64]) -> (f64, f64) + Sync,
) -> CheckReport {
    let rows: Vec<(f64, f64)> = corpus.par_iter().map(|f| eval(f)).collect();
    let mut slack = f64::INFINITY;
    let mut witness = None;
    let mut value = f64::INFINITY;
    for (i, &(num, den)) in rows.iter().enumerate() {
        let s = num - c * den;
        if s < slack {
            slack = s;
            witness = Some(i);
        }
        if den > 1e-12 {
            value = value.min(num / den);
        }
    }
    CheckReport {
        claim,
        constant: c,
        value,
        mode,
        slack,
        witness_id: witness,
        passed: slack >= -CORPUS_TOL,
    }
}

/// `Ent_{μ_in}(P f) ≤ (1 − c) · Ent_{μ_out}(f)` over the corpus.
pub fn entropy_contraction_check(
    p: &WalkOperator,
    c: f64,
    corpus: &[Vec<f64>],
) -> Result<CheckReport> {
    check_corpus(corpus, p.cols())?;
    let phi = Phi::XLogX;
    Ok(corpus_check(
        format!("entropy contraction >= {c:.6}"),
        corpus,
        c,
        Mode::Certified,
        |f| {
            let ef = entropy_unchecked(f, &p.mu_out, &phi);
            let epf = entropy_unchecked(&p.apply(f), &p.mu_in, &phi);
            (ef - epf, ef)
        },
    ))
}

/// Data processing: `Ent_{μ_in}(P f) ≤ Ent_{μ_out}(f)` over the corpus.
pub fn dpi_check(p: &WalkOperator, phi: &Phi, corpus: &[Vec<f64>]) -> Result<CheckReport> {
    check_corpus(corpus, p.cols())?;
    let mut r = corpus_check(
        format!("Ent_{}(Pf) <= Ent_{}(f)", phi.name(), phi.name()),
        corpus,
        0.0,
        Mode::Exact,
        |f| {
            let ef = entropy_unchecked(f, &p.mu_out, phi);
            (ef - entropy_unchecked(&p.apply(f), &p.mu_in, phi), ef)
        },
    );
    r.passed = r.slack >= -IDENTITY_TOL;
    Ok(r)
}

/// `CF(PQ) ≥ max(CF(P), CF(Q))` for the square Φ, computed exactly.
pub fn dpi_composition_check(p: &WalkOperator, q: &WalkOperator) -> Result<CheckReport> {
    let cf = |a: &WalkOperator| -> Result<f64> { gap(&adjoint(a)?.compose(a)?) };
    let pq = p.compose(q)?;
    Ok(CheckReport::at_least(
        "CF(PQ) >= max(CF(P), CF(Q))",
        cf(&pq)?,
        cf(p)?.max(cf(q)?),
        Mode::Exact,
        IDENTITY_TOL,
    ))
}

/// `EC(P) ≥ LS(P* P)`, with the right side replaced by its proven lower bound.
pub fn miclo_check(p: &WalkOperator, corpus: &[Vec<f64>]) -> Result<CheckReport> {
    let pp = adjoint(p)?.compose(p)?;
    let ls = log_sobolev_lower_bound(&pp)?;
    let mut r = entropy_contraction_check(p, ls.bound, corpus)?;
    r.claim = "EC(P) >= LS(P*P)".into();
    Ok(r)
}

/// `LS(Papx) ≥ LS(Udw) · Gap⋆(H)`: checks
/// `⟨f, (I − Papx) f⟩ ≥ c · Ent(f²)` over the corpus with `c` the proven
/// lower bound on the right-hand side.
pub fn ls_lifting_check(
    x: &Complex,
    ell: usize,
    h: &crate::expanders::LabelledRegularGraph,
    corpus: &[Vec<f64>],
) -> Result<CheckReport> {
    let papx = crate::operators::expanderized_up_down(x, ell, h)?;
    let udw = up_down(x, ell)?;
    check_corpus(corpus, papx.rows())?;
    let c = log_sobolev_lower_bound(&udw)?.bound * h.spectrum().gap_star;
    Ok(corpus_check(
        "LS(Papx) >= LS(Udw) * Gap*(H)".into(),
        corpus,
        c,
        Mode::Certified,
        |f| (dirichlet_form(&papx, f), ls_entropy(f, &papx.mu_in)),
    ))
}

/// `EC(Qdo) ≥ LS(Udw) · Gap⋆(H²)` over the corpus on `X^(ℓ)`, with the
/// proven lower bound on the log-Sobolev constant.
pub fn qdo_entropy_check(
    x: &Complex,
    ell: usize,
    h: &crate::expanders::LabelledRegularGraph,
    corpus: &[Vec<f64>],
) -> Result<CheckReport> {
    let qdo = crate::operators::q_down(x, ell, h)?;
    let lambda = h.lambda();
    let c = log_sobolev_lower_bound(&up_down(x, ell)?)?.bound * (1.0 - lambda * lambda);
    let mut r = entropy_contraction_check(&qdo, c, corpus)?;
    r.claim = "EC(Qdo) >= LS(Udw) * Gap*(H^2)".into();
    Ok(r)
}

fn ls_entropy(f: &[f64], mu: &[f64]) -> f64 {
    let sq: Vec<f64> = f.iter().map(|v| v * v).collect();
    entropy_unchecked(&sq, mu, &Phi::XLogX)
}

fn check_corpus(corpus: &[Vec<f64>], dim: usize) -> Result<()> {
    for f in corpus {
        if f.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.len(),
            });
        }
        if let Some((index, &value)) = f.iter().enumerate().find(|(_, &v)| v < 0.0) {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    Ok(())
}

/// Positions in `X^(r)` of the faces `ω̂ ∪ τ`, for `τ` running over level
/// `r − |ω̂|` of the link at `ω̂` in the link's order.
fn link_positions(x: &Complex, link: &Complex, face: &Face, r: usize) -> Result<Vec<usize>> {
    let level = x.level(r)?;
    let ll = link.level(r - face.len())?;
    Ok(ll
        .faces()
        .iter()
        .map(|tau| {
            level
                .index_of(&face.union(tau))
                .expect("face of the parent")
        })
        .collect())
}

fn gather(f: &[f64], idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&i| f[i]).collect()
}

/// Keeps, per claim, the report with the least slack (failures first).
fn keep_worst(worst: &mut Vec<CheckReport>, r: CheckReport) {
    match worst.iter_mut().find(|w| w.claim == r.claim) {
        Some(w) if (w.passed && !r.passed) || (w.passed == r.passed && r.slack < w.slack) => *w = r,
        Some(_) => {}
        None => worst.push(r),
    }
}

struct ChainRule {
    ell: usize,
    r: usize,
    mu_r: Vec<f64>,
    mu_ell: Vec<f64>,
    /// Per face of `X^(ℓ)` below the top: its mass, positions and link marginal.
    links: Vec<(f64, Vec<usize>, Vec<f64>)>,
    up: WalkOperator,
}

impl ChainRule {
    fn new(x: &Complex, ell: usize, r: usize) -> Result<Self> {
        if ell > r || r > x.rank() {
            return Err(Error::LevelOrder {
                lower: ell,
                upper: r,
            });
        }
        let lower = x.level(ell)?;
        let mut links = Vec::new();
        for (a, face) in lower.faces().iter().enumerate() {
            if face.len() == x.rank() {
                continue;
            }
            let link = x.pin(face)?;
            let idx = link_positions(x, &link, face, r)?;
            links.push((lower.marginal()[a], idx, link.marginal(r - ell)?.to_vec()));
        }
        Ok(ChainRule {
            ell,
            r,
            mu_r: x.marginal(r)?.to_vec(),
            mu_ell: lower.marginal().to_vec(),
            links,
            up: up(x, ell, r)?,
        })
    }

    fn check(&self, f: &[f64], phi: &Phi) -> Result<CheckReport> {
        let lhs = phi_entropy(f, &self.mu_r, phi)?;
        let mut local = 0.0;
        for (m, idx, mu) in &self.links {
            local += m * phi_entropy(&gather(f, idx), mu, phi)?;
        }
        let global = phi_entropy(&self.up.apply(f), &self.mu_ell, phi)?;
        Ok(CheckReport::equal(
            format!(
                "chain rule for Ent_{} at levels {} < {}",
                phi.name(),
                self.ell,
                self.r
            ),
            local + global,
            lhs,
            IDENTITY_TOL * lhs.abs().max(1.0),
        ))
    }
}

/// `Ent_{π_r}(f) = E_{π_ℓ} Ent_{π^(ω̂)}(f|_ω̂) + Ent_{π_ℓ}(U_{ℓ→r} f)`.
pub fn chain_rule_check(
    x: &Complex,
    ell: usize,
    r: usize,
    f: &[f64],
    phi: &Phi,
) -> Result<CheckReport> {
    ChainRule::new(x, ell, r)?.check(f, phi)
}

/// [`chain_rule_check`] over a corpus on `X^(r)`; returns the worst report
/// with the corpus index as witness.
pub fn chain_rule_corpus(
    x: &Complex,
    ell: usize,
    r: usize,
    corpus: &[Vec<f64>],
    phi: &Phi,
) -> Result<CheckReport> {
    let rule = ChainRule::new(x, ell, r)?;
    let mut worst = Vec::new();
    for (i, f) in corpus.iter().enumerate() {
        keep_worst(&mut worst, rule.check(f, phi)?.with_witness(Some(i)));
    }
    worst
        .pop()
        .ok_or_else(|| Error::InvalidState("empty corpus".into()))
}

fn inner(f: &[f64], g: &[f64], mu: &[f64]) -> f64 {
    f.iter().zip(g).zip(mu).map(|((a, b), m)| a * b * m).sum()
}

struct GarlandLink {
    mass: f64,
    positions: Vec<usize>,
    weights: Vec<f64>,
    /// `Duw_{n−ℓ↔r−ℓ}` of the link for `r = ℓ, …, n`.
    walks: Vec<WalkOperator>,
}

struct CodimTwo {
    mass: f64,
    positions: Vec<usize>,
    walk: WalkOperator,
}

struct Garland {
    ell: usize,
    pi: Vec<f64>,
    links: Vec<GarlandLink>,
    walks: Vec<WalkOperator>,
    /// `U_{n−1→n}`, `Udw_{n−1↔n}` and the link graphs at level `n − 2`.
    top: Option<(WalkOperator, WalkOperator, Vec<CodimTwo>)>,
}

impl Garland {
    fn new(x: &Complex, ell: usize) -> Result<Self> {
        let n = x.rank();
        if ell >= n {
            return Err(Error::LevelOrder {
                lower: ell,
                upper: n - 1,
            });
        }
        let lower = x.level(ell)?;
        let mut links = Vec::new();
        for (face, &mass) in lower.faces().iter().zip(lower.marginal()) {
            let link = x.pin(face)?;
            links.push(GarlandLink {
                mass,
                positions: link_positions(x, &link, face, n)?,
                weights: link.weights().to_vec(),
                walks: (ell..=n)
                    .map(|r| down_up(&link, r - ell))
                    .collect::<Result<_>>()?,
            });
        }
        let walks = (ell..=n).map(|r| down_up(x, r)).collect::<Result<_>>()?;
        let top = if n >= 2 {
            let base = x.level(n - 2)?;
            let level = x.level(n - 1)?;
            let mut graphs = Vec::new();
            for (face, &mass) in base.faces().iter().zip(base.marginal()) {
                let lg = x.link_graph(face)?;
                let positions = lg
                    .vertices
                    .iter()
                    .map(|&v| {
                        level
                            .index_of(&face.union(&Face::new(vec![v])))
                            .expect("face")
                    })
                    .collect();
                graphs.push(CodimTwo {
                    mass,
                    positions,
                    walk: lg.walk,
                });
            }
            Some((up(x, n - 1, n)?, up_down(x, n - 1)?, graphs))
        } else {
            None
        };
        Ok(Garland {
            ell,
            pi: x.weights().to_vec(),
            links,
            walks,
            top,
        })
    }

    fn check(&self, f: &[f64], g: Option<&[f64]>) -> Result<Vec<CheckReport>> {
        let pi = &self.pi;
        if f.len() != pi.len() {
            return Err(Error::DimensionMismatch {
                expected: pi.len(),
                found: f.len(),
            });
        }
        let ell = self.ell;
        let n = ell + self.walks.len() - 1;
        let restricted: Vec<Vec<f64>> =
            self.links.iter().map(|l| gather(f, &l.positions)).collect();
        let mut reports = Vec::new();

        let lhs = inner(f, f, pi);
        let rhs: f64 = self
            .links
            .iter()
            .zip(&restricted)
            .map(|(l, fr)| l.mass * inner(fr, fr, &l.weights))
            .sum();
        reports.push(CheckReport::equal(
            "<f,f> localizes",
            rhs,
            lhs,
            IDENTITY_TOL,
        ));

        for (j, duw) in self.walks.iter().enumerate() {
            let r = ell + j;
            let lhs = inner(f, &duw.apply(f), pi);
            let rhs: f64 = self
                .links
                .iter()
                .zip(&restricted)
                .map(|(l, fr)| l.mass * inner(fr, &l.walks[j].apply(fr), &l.weights))
                .sum();
            reports.push(CheckReport::equal(
                format!("<f,Duw_{{{n}<->{r}}} f> localizes to links of level {ell}"),
                rhs,
                lhs,
                IDENTITY_TOL,
            ));
        }

        if let Some((u, udw, graphs)) = &self.top {
            let owned;
            let g = match g {
                Some(g) => g,
                None => {
                    owned = u.apply(f);
                    &owned
                }
            };
            let lhs = inner(g, &udw.apply(g), &udw.mu_in);
            let nf = n as f64;
            let mut rhs = 0.0;
            for c in graphs {
                let gr = gather(g, &c.positions);
                let mg = c.walk.apply(&gr);
                let q: f64 = gr
                    .iter()
                    .zip(&mg)
                    .zip(&c.walk.mu_in)
                    .map(|((a, b), m)| m * a * (a / nf + (nf - 1.0) / nf * b))
                    .sum();
                rhs += c.mass * q;
            }
            reports.push(CheckReport::equal(
                "<g,Udw_{n-1} g> localizes to link graphs",
                rhs,
                lhs,
                IDENTITY_TOL,
            ));
        }
        Ok(reports)
    }
}

/// Localization identities for quadratic forms:
///
/// 1. `⟨f, f⟩_{π_n} = E_{π_ℓ} ⟨f|, f|⟩`,
/// 2. `⟨f, Duw_{n↔r} f⟩ = E_{π_ℓ} ⟨f|, Duw_{ω̂, n−ℓ↔r−ℓ} f|⟩` for every `ℓ ≤ r ≤ n`,
/// 3. `⟨g, Udw_{n−1↔n} g⟩ = E_{π_{n−2}} ⟨g|, (I/n + (n−1)/n · M_ω̂) g|⟩`
///    for `g` on `X^(n−1)`; when `g` is not given, `U_{n−1→n} f` is used.
pub fn garland_identity_check(
    x: &Complex,
    ell: usize,
    f: &[f64],
    g: Option<&[f64]>,
) -> Result<Vec<CheckReport>> {
    Garland::new(x, ell)?.check(f, g)
}

/// [`garland_identity_check`] over a corpus on the facets, one worst report
/// per identity.
pub fn garland_identity_corpus(
    x: &Complex,
    ell: usize,
    corpus: &[Vec<f64>],
) -> Result<Vec<CheckReport>> {
    let garland = Garland::new(x, ell)?;
    let mut worst = Vec::new();
    for (i, f) in corpus.iter().enumerate() {
        for r in garland.check(f, None)? {
            keep_worst(&mut worst, r.with_witness(Some(i)));
        }
    }
    Ok(worst)
}

/// Both inequalities of the log-Sobolev localization lemma, each checked
/// as a functional inequality over the corpus with proven constants:
///
/// - `LS(Duw_{n↔ℓ}) ≥ min C_{ω̂,n−ℓ} · EC(U_{ℓ→n})`,
/// - `LS(Udw_{n−1}) ≥ ((n−1)/n) · min C_{ω̂,1} · Gap_{n−2} · EC(U_{n−2→n−1})`.
///
/// Entropy contraction enters through certified lower bounds: the larger
/// of `ec_top` (if supplied) and `LS(Duw)` by the Miclo inequality for the
/// first, and the larger of `ec_codim` and `LS(D_{n−1→n−2} U_{n−2→n−1})`
/// for the second.
pub fn ls_localization_check(
    x: &Complex,
    ell: usize,
    ec_top: Option<f64>,
    ec_codim: Option<f64>,
    seed: u64,
) -> Result<Vec<CheckReport>> {
    let n = x.rank();
    if ell >= n {
        return Err(Error::LevelOrder {
            lower: ell,
            upper: n - 1,
        });
    }
    let mut out = Vec::new();

    let mut c1 = f64::INFINITY;
    for face in x.level(ell)?.faces() {
        let cond = x.conditional(face)?;
        let ps = cond.iter().map(|&(_, p)| p).fold(f64::INFINITY, f64::min);
        c1 = c1.min(dsc_constant(ps, cond.len()));
    }
    let duw = down_up(x, ell)?;
    let ec = log_sobolev_lower_bound(&duw)?
        .bound
        .max(ec_top.unwrap_or(0.0));
    let corpus = super::corpus::test_functions(duw.rows(), seed);
    out.push(corpus_check(
        format!("LS(Duw_{{{n}<->{ell}}}) >= C * EC(U_{{{ell}->{n}}})"),
        &corpus,
        c1 * ec,
        Mode::Certified,
        |f| (dirichlet_form(&duw, f), ls_entropy(f, &duw.mu_in)),
    ));

    if n >= 2 {
        let mut c2 = f64::INFINITY;
        let mut gap_n2 = f64::INFINITY;
        for face in x.level(n - 2)?.faces() {
            let lg = x.link_graph(face)?;
            let ps = lg.walk.mu_in.iter().copied().fold(f64::INFINITY, f64::min);
            c2 = c2.min(dsc_constant(ps, lg.vertices.len()));
            gap_n2 = gap_n2.min(gap(&lg.walk)?);
        }
        let inner_walk = down(x, n - 1, n - 2)?.compose(&up(x, n - 2, n - 1)?)?;
        let ec2 = log_sobolev_lower_bound(&inner_walk)?
            .bound
            .max(ec_codim.unwrap_or(0.0));
        let udw = up_down(x, n - 1)?;
        let corpus = super::corpus::test_functions(udw.rows(), seed);
        let c = (n - 1) as f64 / n as f64 * c2 * gap_n2 * ec2;
        out.push(corpus_check(
            format!(
                "LS(Udw_{{{}}}) >= ((n-1)/n) C Gap_{{{}}} EC(U_{{{}->{}}})",
                n - 1,
                n - 2,
                n - 2,
                n - 1
            ),
            &corpus,
            c,
            Mode::Certified,
            |f| (dirichlet_form(&udw, f), ls_entropy(f, &udw.mu_in)),
        ));
    }
    Ok(out)
}

/// Entropy contraction of `U_{k→k+1}` implied by `EC(U_{n−1→n}) ≥ 1/(C n)`
/// on a partite complex: `1/((k+1)(C+1))`.
pub fn lee_boosting_bound(x: &Complex, c: f64, k: usize) -> Result<f64> {
    x.require_top_partite()?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidConstant(c));
    }
    if k >= x.rank() {
        return Err(Error::LevelOutOfRange {
            level: k,
            rank: x.rank(),
        });
    }
    Ok(1.0 / ((k + 1) as f64 * (c + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::{k3_colorings, product_2x2};
    use crate::expanders::cycle;
    use crate::phi_entropy::test_functions;
    use nalgebra::DMatrix;

    /// Brute-force `inf E(f,f)/Ent(f²)` over a fine grid for a two-point chain.
    fn two_point_ls(p: f64, theta: f64) -> f64 {
        let mu = vec![1.0 - p, p];
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                1.0 - theta * p,
                theta * p,
                theta * (1.0 - p),
                1.0 - theta * (1.0 - p),
            ],
        );
        let w = WalkOperator::new(m, mu.clone(), mu.clone());
        let mut best = f64::INFINITY;
        for i in 1..20000 {
            let t = i as f64 / 2000.0;
            let f = [1.0, t];
            let e = ls_entropy(&f, &mu);
            if e > 1e-12 {
                best = best.min(dirichlet_form(&w, &f) / e);
            }
        }
        best
    }

    #[test]
    fn two_point_constant_is_half_not_one() {
        let brute = two_point_ls(0.5, 1.0);
        assert!((brute - 0.5).abs() < 1e-4, "{brute}");
        assert_eq!(dsc_constant(0.5, 2), 0.5);
    }

    #[test]
    fn two_point_formula_is_exact_off_centre() {
        let p = 0.2;
        let brute = two_point_ls(p, 1.0);
        assert!((brute - dsc_constant(p, 2)).abs() < 1e-4);
    }

    #[test]
    fn ls_bound_examples() {
        let mu = vec![0.25; 4];
        let id = WalkOperator::new(DMatrix::identity(4, 4), mu.clone(), mu);
        assert_eq!(log_sobolev_lower_bound(&id).unwrap().bound, 0.0);
        let x = product_2x2();
        let b = log_sobolev_lower_bound(&down_up(&x, 1).unwrap()).unwrap();
        assert!((b.gap - 0.5).abs() < 1e-12);
        assert!(b.bound > 0.0);
    }

    #[test]
    fn chain_rule_and_dpi_hold() {
        let x = k3_colorings();
        let corpus = test_functions(6, 1);
        for f in corpus.iter().take(40) {
            for phi in [Phi::Square, Phi::XLogX] {
                for ell in 0..=3 {
                    assert!(chain_rule_check(&x, ell, 3, f, &phi).unwrap().passed);
                }
            }
        }
        let u = up(&x, 1, 3).unwrap();
        assert!(dpi_check(&u, &Phi::XLogX, &corpus).unwrap().passed);
    }

    #[test]
    fn garland_identities_hold() {
        let x = k3_colorings();
        let f = [0.3, 1.2, 0.0, 2.5, 0.7, 1.1];
        for ell in 0..3 {
            for r in garland_identity_check(&x, ell, &f, None).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
    }

    #[test]
    fn certified_checks_pass_on_triangle() {
        let x = k3_colorings();
        let h = cycle(3).unwrap();
        let corpus = test_functions(9, 2);
        assert!(ls_lifting_check(&x, 1, &h, &corpus).unwrap().passed);
        for ell in 0..3 {
            for r in ls_localization_check(&x, ell, None, None, 0).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
        assert!(
            miclo_check(&up(&x, 1, 3).unwrap(), &test_functions(6, 0))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn lee_bound_inputs() {
        let x = k3_colorings();
        assert!((lee_boosting_bound(&x, 1.0, 1).unwrap() - 0.25).abs() < 1e-15);
        assert!(lee_boosting_bound(&x, 0.0, 1).is_err());
    }
}
