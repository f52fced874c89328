//! The fixed list of 23 checks run by `verify`.

use super::{
    corollary_min, min_real_part, report_from, representation_gap, scaling_oracle, sup_modulus, CheckKind, Comparison,
    Extremum, Verdict, VerificationReport,
};
use crate::bounds::{hypothesis, Theorem};
use crate::dini::{CorollaryFn, CorollaryId, RatioKind};
use crate::error::Result;
use crate::exec::Engine;
use crate::params::{Deriv, Params};
use crate::rational::{self, Rational};
use crate::sampling::DiskSampling;

#[derive(Debug, Clone)]
pub enum CaseKind {
    /// `Re F >= scale * bound` for one of F1..F6.
    Corollary(CorollaryId),
    /// Sampled `sup |w|` or `sup |w'|` against the modulus bound.
    Lemma(Params, Deriv),
    /// Identity between F5/F6 and the scaled series.
    Scaling(CorollaryId),
    /// Hypothesis polynomial plus the theorem's first ratio at `m = 0`.
    Hypothesis(Theorem, Params),
    /// Power series against the Bessel-function representation.
    CrossCheck(Params),
}

#[derive(Debug, Clone)]
pub struct CatalogCase {
    pub id: String,
    pub kind: CaseKind,
}

fn pairs() -> [Params; 3] {
    [
        Params::from_ratios((1, 1), (1, 2), 0).unwrap(),
        Params::from_ratios((3, 2), (1, 2), 0).unwrap(),
        Params::from_ratios((5, 1), (3, 2), 0).unwrap(),
    ]
}

fn pair_label(p: &Params) -> String {
    format!("{}-{}", rational::display(p.alpha()), rational::display(p.v()))
}

fn corollary_case_id(id: CorollaryId) -> &'static str {
    match id {
        CorollaryId::F1 => "corollary-2.3a",
        CorollaryId::F2 => "corollary-2.3b",
        CorollaryId::F3 => "corollary-2.4a",
        CorollaryId::F4 => "corollary-2.4b",
        CorollaryId::F5 => "corollary-2.5a",
        CorollaryId::F6 => "corollary-2.5b",
    }
}

/// All cases in report order: 6 corollary, 6 lemma, 2 scaling,
/// 6 hypothesis, 3 cross-check.
pub fn catalog_cases() -> Vec<CatalogCase> {
    let mut out = Vec::with_capacity(23);
    for id in CorollaryId::ALL {
        out.push(CatalogCase {
            id: corollary_case_id(id).to_string(),
            kind: CaseKind::Corollary(id),
        });
    }
    for p in pairs() {
        for (tag, deriv) in [("w", Deriv::Value), ("wprime", Deriv::First)] {
            out.push(CatalogCase {
                id: format!("lemma-{tag}-{}", pair_label(&p)),
                kind: CaseKind::Lemma(p.clone(), deriv),
            });
        }
    }
    for id in [CorollaryId::F5, CorollaryId::F6] {
        out.push(CatalogCase {
            id: format!("scaling-{}", id.name()),
            kind: CaseKind::Scaling(id),
        });
    }
    for p in pairs() {
        for (tag, t) in [("t21", Theorem::T21), ("t22", Theorem::T22)] {
            out.push(CatalogCase {
                id: format!("hypothesis-{tag}-{}", pair_label(&p)),
                kind: CaseKind::Hypothesis(t, p.clone()),
            });
        }
    }
    for p in pairs() {
        out.push(CatalogCase {
            id: format!("cross-check-{}", pair_label(&p)),
            kind: CaseKind::CrossCheck(p),
        });
    }
    out
}

pub fn find_case(id: &str) -> Option<CatalogCase> {
    catalog_cases().into_iter().find(|c| c.id == id)
}

fn tolerance_bound() -> Rational {
    rational::ratio(1, 1_000_000_000)
}

fn check_of(kind: &CaseKind) -> CheckKind {
    match kind {
        CaseKind::Corollary(_) => CheckKind::Corollary,
        CaseKind::Lemma(..) => CheckKind::Lemma,
        CaseKind::Scaling(_) => CheckKind::Scaling,
        CaseKind::Hypothesis(..) => CheckKind::Hypothesis,
        CaseKind::CrossCheck(_) => CheckKind::CrossCheck,
    }
}

fn failed(
    case: &CatalogCase,
    params: Params,
    claimed: Rational,
    comparison: Comparison,
    msg: String,
) -> VerificationReport {
    VerificationReport {
        case_id: case.id.clone(),
        check: check_of(&case.kind),
        params,
        hypothesis: None,
        claimed_bound: claimed,
        comparison,
        empirical: f64::NAN,
        extremum_at: None,
        margin: f64::NAN,
        samples: 0,
        skipped: 0,
        first_skipped_at: None,
        verdict: Verdict::EvaluationFailed,
        error: Some(msg),
    }
}

fn try_run(case: &CatalogCase, spec: &DiskSampling, engine: &Engine) -> Result<VerificationReport> {
    let mut report = match &case.kind {
        CaseKind::Corollary(id) => {
            let f = CorollaryFn::new(*id);
            let theorem = f.kind.bound_kind().theorem().expect("ratio bound");
            let hyp = hypothesis(theorem, f.params.alpha(), f.params.v());
            let ext = corollary_min(&f, spec, engine)?;
            report_from(
                String::new(),
                CheckKind::Corollary,
                &f.params,
                Some(hyp),
                f.claimed_bound(),
                Comparison::AtLeast,
                ext,
            )
        }
        CaseKind::Lemma(p, deriv) => sup_modulus(p, *deriv, spec, engine)?,
        CaseKind::Scaling(id) => {
            let ext = scaling_oracle(*id, spec, engine)?;
            let f = CorollaryFn::new(*id);
            report_from(
                String::new(),
                CheckKind::Scaling,
                &f.params,
                None,
                tolerance_bound(),
                Comparison::AtMost,
                ext,
            )
        }
        CaseKind::Hypothesis(t, p) => {
            let kind = match t {
                Theorem::T21 => RatioKind::WOverPartial,
                Theorem::T22 => RatioKind::WpOverPartialp,
            };
            let mut r = min_real_part(kind, p, spec, engine)?;
            r.check = CheckKind::Hypothesis;
            r
        }
        CaseKind::CrossCheck(p) => {
            let ext: Extremum = representation_gap(p, &DiskSampling::cross_check(), engine)?;
            report_from(
                String::new(),
                CheckKind::CrossCheck,
                p,
                None,
                tolerance_bound(),
                Comparison::AtMost,
                ext,
            )
        }
    };
    report.case_id = case.id.clone();
    Ok(report)
}

/// Runs one case; errors become an `EVALUATION_FAILED` report.
pub fn run_case(case: &CatalogCase, spec: &DiskSampling, engine: &Engine) -> VerificationReport {
    try_run(case, spec, engine).unwrap_or_else(|e| {
        let params = match &case.kind {
            CaseKind::Corollary(id) | CaseKind::Scaling(id) => CorollaryFn::new(*id).params,
            CaseKind::Lemma(p, _) | CaseKind::Hypothesis(_, p) | CaseKind::CrossCheck(p) => p.clone(),
        };
        failed(
            case,
            params,
            Rational::from_integer(0.into()),
            Comparison::AtLeast,
            e.to_string(),
        )
    })
}

/// Every catalog case on `spec`. Never aborts; per-case failures are
/// recorded in the reports.
pub fn run_catalog(spec: &DiskSampling, engine: &Engine) -> Vec<VerificationReport> {
    catalog_cases().iter().map(|c| run_case(c, spec, engine)).collect()
}
