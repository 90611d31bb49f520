//! The verification battery shared by `verify` and `suite`.

use hodos_core::complex::Complex;
use hodos_core::models::{
    coloring_link_check, gibbs_bounds_check, imported_entropy_check, ising_gap_check,
    ising_link_check, ColoringInstance, IsingInstance, SPECTRAL_ISING_LIMIT,
};
use hodos_core::operators::{down_up, expanderized_down_up, expanderized_up_down, up, up_down};
use hodos_core::phi_entropy::{
    chain_rule_corpus, down_up_gap_check, dpi_check, garland_identity_corpus, ls_lifting_check,
    ls_localization_check, miclo_check, product_gap_certificate, qdo_entropy_check, test_functions,
    Phi,
};
use hodos_core::report::{CheckReport, Mode};
use hodos_core::spectral::{gap_lifting_check, operator_norm_deviation, spectrum};
use hodos_core::subsets::binomial;
use hodos_core::{LabelledRegularGraph, WalkOperator};
use serde::Serialize;

use crate::input::Instance;

/// Expanderized checks, named so that skipped rows still say what was skipped.
const EXPANDER_CHECKS: [&str; 8] = [
    "lambda(H) >= ||Papx - (1-lambda(H)) Udw||",
    "Gap(Papx) >= Gap(Udw) * Gap*(H)",
    "Gap(Paqx) >= Gap(Duw) * Gap*(H^2)",
    "Papx stationary and reversible",
    "Paqx stationary and reversible",
    "lambda_min(Paqx) >= 0",
    "LS(Papx) >= LS(Udw) * Gap*(H)",
    "EC(Qdo) >= LS(Udw) * Gap*(H^2)",
];

pub const SKIPPED_PARTITE: &str = "skipped: requires partite";

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub instance: String,
    pub ell: Option<usize>,
    pub check: String,
    /// `pass`, `fail`, `info`, `error: …` or `skipped: …`.
    pub status: String,
    pub mode: Option<Mode>,
    pub value: Option<f64>,
    pub constant: Option<f64>,
    pub slack: Option<f64>,
    pub witness_id: Option<usize>,
}

impl Row {
    fn from_report(instance: &str, ell: Option<usize>, r: CheckReport) -> Row {
        let status = if !r.counts() {
            "info"
        } else if r.passed {
            "pass"
        } else {
            "fail"
        };
        Row {
            instance: instance.to_string(),
            ell,
            check: r.claim,
            status: status.to_string(),
            mode: Some(r.mode),
            value: Some(r.value),
            constant: Some(r.constant),
            slack: Some(r.slack),
            witness_id: r.witness_id,
        }
    }

    fn bare(instance: &str, ell: Option<usize>, check: &str, status: String) -> Row {
        Row {
            instance: instance.to_string(),
            ell,
            check: check.to_string(),
            status,
            mode: None,
            value: None,
            constant: None,
            slack: None,
            witness_id: None,
        }
    }

    /// Rows that make a run fail.
    pub fn is_failure(&self) -> bool {
        self.status == "fail" || self.status.starts_with("error")
    }
}

/// How to pick `H` at level `ℓ`, where it must have `C(n, ℓ)` vertices.
pub trait GraphSource {
    fn graph(&self, m: usize, ell: usize) -> anyhow::Result<Option<LabelledRegularGraph>>;
}

impl<F> GraphSource for F
where
    F: Fn(usize, usize) -> anyhow::Result<Option<LabelledRegularGraph>>,
{
    fn graph(&self, m: usize, ell: usize) -> anyhow::Result<Option<LabelledRegularGraph>> {
        self(m, ell)
    }
}

pub struct Options {
    pub seed: u64,
    pub cap_states: usize,
}

struct Sink<'a> {
    instance: &'a str,
    rows: Vec<Row>,
}

impl Sink<'_> {
    fn push(&mut self, ell: Option<usize>, claim: &str, r: hodos_core::Result<CheckReport>) {
        self.extend(ell, claim, r.map(|r| vec![r]));
    }

    fn extend(&mut self, ell: Option<usize>, claim: &str, r: hodos_core::Result<Vec<CheckReport>>) {
        match r {
            Ok(reports) => self.rows.extend(
                reports
                    .into_iter()
                    .map(|r| Row::from_report(self.instance, ell, r)),
            ),
            Err(e) => self
                .rows
                .push(Row::bare(self.instance, ell, claim, format!("error: {e}"))),
        }
    }
}

fn walk_health(name: &str, p: &WalkOperator) -> CheckReport {
    let err = p.stationarity_error().max(p.detailed_balance_error());
    CheckReport::equal(format!("{name} stationary and reversible"), err, 0.0, 1e-12)
}

fn psd(name: &str, p: &WalkOperator) -> hodos_core::Result<CheckReport> {
    let s = spectrum(p, true)?;
    Ok(CheckReport::at_least(
        format!("lambda_min({name}) >= 0"),
        s.lambda_min,
        0.0,
        Mode::Exact,
        1e-10,
    ))
}

/// Every check at level `ℓ` for a complex.
pub fn verify_level(
    instance: &str,
    x: &Complex,
    ell: usize,
    graphs: &dyn GraphSource,
    opts: &Options,
) -> Vec<Row> {
    let mut sink = Sink {
        instance,
        rows: Vec::new(),
    };
    let n = x.rank();
    let at = Some(ell);
    let seed = opts.seed;

    match (down_up(x, ell), up_down(x, ell)) {
        (Ok(duw), Ok(udw)) => {
            sink.push(at, "Duw", Ok(walk_health("Duw", &duw)));
            sink.push(at, "Udw", Ok(walk_health("Udw", &udw)));
            sink.push(at, "lambda_min(Duw) >= 0", psd("Duw", &duw));
            sink.push(at, "lambda_min(Udw) >= 0", psd("Udw", &udw));
        }
        (Err(e), _) | (_, Err(e)) => {
            sink.push(at, "level walks", Err(e));
            return sink.rows;
        }
    }

    sink.extend(
        at,
        "chain-product certificate",
        product_gap_certificate(x, ell, &Phi::Square, seed).map(|r| r.checks),
    );
    sink.push(
        at,
        "Gap(Duw) >= ((n-l)/n) prod Gap_i",
        down_up_gap_check(x, ell),
    );

    let top = test_functions(x.facets().len(), seed);
    sink.extend(
        at,
        "Garland identities",
        garland_identity_corpus(x, ell, &top),
    );
    for r in ell + 1..=n {
        let corpus = test_functions(x.level_size(r).unwrap_or(0), seed);
        for phi in [Phi::Square, Phi::XLogX] {
            sink.extend(
                at,
                "chain rule",
                chain_rule_corpus(x, ell, r, &corpus, &phi).map(|c| vec![c]),
            );
        }
    }
    for (name, p) in [("Duw", down_up(x, ell)), ("U", up(x, ell, n))] {
        let p = match p {
            Ok(p) => p,
            Err(e) => {
                sink.push(at, "data processing", Err(e));
                continue;
            }
        };
        for phi in [Phi::Square, Phi::XLogX] {
            let r = dpi_check(&p, &phi, &top).map(|mut r| {
                r.claim = format!("{name}: {}", r.claim);
                r
            });
            sink.push(at, "data processing", r);
        }
    }
    sink.push(
        at,
        "EC(U) >= LS(U*U)",
        up(x, ell, n).and_then(|u| miclo_check(&u, &top)),
    );
    sink.extend(
        at,
        "log-Sobolev localization",
        ls_localization_check(x, ell, None, None, seed),
    );

    let m = binomial(n, ell) as usize;
    let h = match graphs.graph(m, ell) {
        Ok(h) => h,
        Err(e) => {
            sink.rows
                .push(Row::bare(instance, at, "graph", format!("error: {e:#}")));
            return sink.rows;
        }
    };
    let Some(h) = h else {
        return sink.rows;
    };
    if x.require_top_partite().is_err() {
        for c in EXPANDER_CHECKS {
            sink.rows
                .push(Row::bare(instance, at, c, SKIPPED_PARTITE.to_string()));
        }
        return sink.rows;
    }
    sink.push(
        at,
        EXPANDER_CHECKS[0],
        operator_norm_deviation(x, ell, &h).map(|d| {
            CheckReport::at_least(EXPANDER_CHECKS[0], d.lambda, d.norm, Mode::Exact, 1e-9)
        }),
    );
    sink.extend(at, "gap lifting", gap_lifting_check(x, ell, &h));
    sink.push(
        at,
        EXPANDER_CHECKS[3],
        expanderized_up_down(x, ell, &h).map(|p| walk_health("Papx", &p)),
    );
    if x.facets().len() * m <= opts.cap_states {
        match expanderized_down_up(x, ell, &h) {
            Ok(p) => {
                sink.push(at, EXPANDER_CHECKS[4], Ok(walk_health("Paqx", &p)));
                sink.push(at, EXPANDER_CHECKS[5], psd("Paqx", &p));
            }
            Err(e) => sink.push(at, EXPANDER_CHECKS[4], Err(e)),
        }
    } else {
        for c in &EXPANDER_CHECKS[4..6] {
            sink.rows.push(Row::bare(
                instance,
                at,
                c,
                "skipped: exceeds cap-states".to_string(),
            ));
        }
    }
    let lower = test_functions(x.level_size(ell).unwrap_or(0), seed);
    sink.push(at, EXPANDER_CHECKS[6], ls_lifting_check(x, ell, &h, &lower));
    sink.push(
        at,
        EXPANDER_CHECKS[7],
        qdo_entropy_check(x, ell, &h, &lower),
    );
    sink.rows
}

/// Checks at every requested level, then the model-specific ones.
pub fn verify_instance(
    name: &str,
    inst: &Instance,
    ells: &[usize],
    graphs: &dyn GraphSource,
    opts: &Options,
) -> Vec<Row> {
    let x = inst.complex();
    let mut rows: Vec<Row> = ells
        .iter()
        .flat_map(|&ell| verify_level(name, x, ell, graphs, opts))
        .collect();
    let mut sink = Sink {
        instance: name,
        rows: Vec::new(),
    };
    match inst {
        Instance::Complex(_) => {}
        Instance::Ising(i, _) => ising_checks(&mut sink, i, opts.seed),
        Instance::Coloring(c, _) => coloring_checks(&mut sink, c),
    }
    rows.append(&mut sink.rows);
    rows
}

fn ising_checks(sink: &mut Sink, inst: &IsingInstance, seed: u64) {
    sink.extend(None, "Gibbs weight bounds", gibbs_bounds_check(inst));
    sink.extend(None, "codimension-2 links", ising_link_check(inst));
    if inst.n() <= SPECTRAL_ISING_LIMIT {
        sink.push(None, "Gap(Duw) >= (1 - |J|)/n", ising_gap_check(inst));
    }
    if inst.op_norm() < 1.0 - 1e-12 {
        sink.extend(
            None,
            "entropy contraction",
            imported_entropy_check(inst, seed),
        );
    }
}

fn coloring_checks(sink: &mut Sink, inst: &ColoringInstance) {
    sink.extend(None, "codimension-2 links", coloring_link_check(inst));
}

/// Counts of `pass`, `fail`, `error`, `skipped` and `info` rows.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub skipped: usize,
    pub info: usize,
}

pub fn summarize(rows: &[Row]) -> Summary {
    let mut s = Summary::default();
    for r in rows {
        match r.status.as_str() {
            "pass" => s.pass += 1,
            "fail" => s.fail += 1,
            "info" => s.info += 1,
            st if st.starts_with("error") => s.error += 1,
            _ => s.skipped += 1,
        }
    }
    s
}
