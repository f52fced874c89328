//! Sampled extrema over the open unit disk and the verdicts they support.
//!
//! Every point is evaluated independently; extrema are then reduced in grid
//! order, so reports are bit-identical for sequential and parallel runs.
//! Ties resolve to the first sample in `(r, theta)` order.

mod catalog;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bounds::{bound_value, hypothesis, BoundKind, HypothesisStatus};
use crate::dini::{
    bessel_j_jet, corollary_fn, serialize_complex, w_via_bessel, CorollaryFn, CorollaryId, DiniSeries, RatioKind,
    SeriesOptions,
};
use crate::error::{DiniError, Result};
use crate::exec::{map_ordered, Engine, Exec};
use crate::params::{ComplexPoint, Deriv, Params};
use crate::rational::{self, ExactValue, Rational};
use crate::sampling::DiskSampling;

pub use catalog::{catalog_cases, find_case, run_case, run_catalog, CaseKind, CatalogCase};

/// Absolute slack allowed when comparing a sampled extremum with a bound.
pub const VIOLATION_TOL: f64 = 1e-9;

/// `|denominator|` below this at a sample point skips that point.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Violated,
    HypothesisFailed,
    EvaluationFailed,
}

/// Direction of the claimed inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// empirical minimum `>=` claimed bound
    AtLeast,
    /// empirical supremum `<=` claimed bound
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Corollary,
    Lemma,
    Scaling,
    Hypothesis,
    CrossCheck,
    Ratio,
}

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    ExactValue(q.clone()).serialize(s)
}

fn ser_opt_complex<S: Serializer>(z: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match z {
        Some(z) => serialize_complex(z, s),
        None => s.serialize_none(),
    }
}

/// Outcome of one claim checked on one grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub check: CheckKind,
    pub params: Params,
    pub hypothesis: Option<HypothesisStatus>,
    #[serde(serialize_with = "ser_rational")]
    pub claimed_bound: Rational,
    pub comparison: Comparison,
    /// Sampled minimum (`at_least`) or supremum (`at_most`).
    pub empirical: f64,
    #[serde(serialize_with = "ser_opt_complex")]
    pub extremum_at: Option<ComplexPoint>,
    /// Signed distance to the bound; negative means the claim is undercut.
    pub margin: f64,
    pub samples: usize,
    pub skipped: usize,
    #[serde(serialize_with = "ser_opt_complex")]
    pub first_skipped_at: Option<ComplexPoint>,
    pub verdict: Verdict,
    pub error: Option<String>,
}

impl VerificationReport {
    fn decide(&mut self) {
        if self.error.is_some() {
            self.verdict = Verdict::EvaluationFailed;
            return;
        }
        let bound = rational::to_f64(&self.claimed_bound);
        self.margin = match self.comparison {
            Comparison::AtLeast => self.empirical - bound,
            Comparison::AtMost => bound - self.empirical,
        };
        self.verdict = if self.hypothesis.as_ref().is_some_and(|h| !h.satisfied) {
            Verdict::HypothesisFailed
        } else if self.margin >= -VIOLATION_TOL {
            Verdict::Confirmed
        } else {
            Verdict::Violated
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
enum Point {
    Value(f64),
    Skip,
    Failed(String),
}

/// Result of a reduction over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub at: Option<ComplexPoint>,
    pub samples: usize,
    pub skipped: usize,
    pub first_skipped_at: Option<ComplexPoint>,
    pub error: Option<String>,
}

fn reduce(points: &[ComplexPoint], outcomes: Vec<Point>, mode: Mode) -> Extremum {
    let mut best: Option<(f64, ComplexPoint)> = None;
    let mut skipped = 0;
    let mut first_skip = None;
    let mut error = None;
    for (z, out) in points.iter().zip(outcomes) {
        match out {
            Point::Value(x) if x.is_finite() => {
                let better = match (best, mode) {
                    (None, _) => true,
                    (Some((b, _)), Mode::Min) => x < b,
                    (Some((b, _)), Mode::Max) => x > b,
                };
                if better {
                    best = Some((x, *z));
                }
            }
            Point::Value(_) | Point::Skip => {
                skipped += 1;
                first_skip.get_or_insert(*z);
            }
            Point::Failed(msg) => {
                error.get_or_insert(format!("at z = {z}: {msg}"));
            }
        }
    }
    Extremum {
        value: best.map_or(f64::NAN, |b| b.0),
        at: best.map(|b| b.1),
        samples: points.len(),
        skipped,
        first_skipped_at: first_skip,
        error,
    }
}

fn search<F>(exec: Exec, spec: &DiskSampling, mode: Mode, f: F) -> Result<Extremum>
where
    F: Fn(ComplexPoint) -> Result<f64> + Sync + Send,
{
    spec.validate()?;
    let points = spec.points();
    let outcomes = map_ordered(exec, &points, |z| match f(*z) {
        Ok(x) => Point::Value(x),
        Err(DiniError::DenominatorZero { .. }) => Point::Skip,
        Err(e) => Point::Failed(e.to_string()),
    });
    Ok(reduce(&points, outcomes, mode))
}

fn checked_div(num: Complex64, den: Complex64, z: ComplexPoint) -> Result<Complex64> {
    if den.norm() < DENOMINATOR_FLOOR {
        Err(DiniError::DenominatorZero {
            at: z,
            floor: DENOMINATOR_FLOOR,
        })
    } else {
        Ok(num / den)
    }
}

/// The ratio of `kind` at `z`. Ratios of `w` use `w/z` and `(w)_m/z`, so the
/// removable singularity at the origin never enters.
pub fn ratio_value(series: &DiniSeries, kind: RatioKind, z: ComplexPoint) -> Result<Complex64> {
    let (full, partial) = match kind.deriv() {
        Deriv::Value => (series.eval_over_z(z)?.value, series.partial_over_z(z)),
        Deriv::First => (series.eval(z, Deriv::First)?.value, series.partial(z, Deriv::First)),
    };
    if kind.inverted() {
        checked_div(partial, full, z)
    } else {
        checked_div(full, partial, z)
    }
}

fn report_from(
    case_id: String,
    check: CheckKind,
    params: &Params,
    hyp: Option<HypothesisStatus>,
    claimed: Rational,
    comparison: Comparison,
    ext: Extremum,
) -> VerificationReport {
    let mut r = VerificationReport {
        case_id,
        check,
        params: params.clone(),
        hypothesis: hyp,
        claimed_bound: claimed,
        comparison,
        empirical: ext.value,
        extremum_at: ext.at,
        margin: f64::NAN,
        samples: ext.samples,
        skipped: ext.skipped,
        first_skipped_at: ext.first_skipped_at,
        verdict: Verdict::EvaluationFailed,
        error: ext.error,
    };
    r.decide();
    r
}

fn kind_label(kind: RatioKind) -> &'static str {
    match kind {
        RatioKind::WOverPartial => "w-over-partial",
        RatioKind::PartialOverW => "partial-over-w",
        RatioKind::WpOverPartialp => "wp-over-partialp",
        RatioKind::PartialpOverWp => "partialp-over-wp",
    }
}

fn params_label(p: &Params) -> String {
    format!("{}-{}", rational::display(p.alpha()), rational::display(p.v()))
}

/// Sampled minimum of the real part of a partial-sum ratio against the
/// matching closed-form lower bound.
pub fn min_real_part(
    kind: RatioKind,
    params: &Params,
    spec: &DiskSampling,
    engine: &Engine,
) -> Result<VerificationReport> {
    let bound_kind = kind.bound_kind();
    let claimed = bound_value(bound_kind, params.alpha(), params.v())?;
    let theorem = bound_kind.theorem().expect("ratio bounds belong to a theorem");
    let hyp = hypothesis(theorem, params.alpha(), params.v());
    let series = engine.series_for(params)?;
    let ext = search(engine.exec, spec, Mode::Min, |z| Ok(ratio_value(&series, kind, z)?.re))?;
    let id = format!("ratio-{}-{}-m{}", kind_label(kind), params_label(params), params.m());
    Ok(report_from(
        id,
        CheckKind::Ratio,
        params,
        Some(hyp),
        claimed,
        Comparison::AtLeast,
        ext,
    ))
}

/// Sampled supremum of `|w|` or `|w'|` against the modulus bound.
pub fn sup_modulus(params: &Params, deriv: Deriv, spec: &DiskSampling, engine: &Engine) -> Result<VerificationReport> {
    let kind = match deriv {
        Deriv::Value => BoundKind::LemmaW,
        Deriv::First => BoundKind::LemmaWprime,
    };
    let claimed = bound_value(kind, params.alpha(), params.v())?;
    let series = engine.series_for(params)?;
    let ext = search(engine.exec, spec, Mode::Max, |z| {
        Ok(series.eval(z, deriv)?.value.norm())
    })?;
    let tag = if deriv == Deriv::Value { "w" } else { "wprime" };
    let id = format!("lemma-{tag}-{}", params_label(params));
    Ok(report_from(
        id,
        CheckKind::Lemma,
        params,
        None,
        claimed,
        Comparison::AtMost,
        ext,
    ))
}

/// Sampled minimum of `Re F` for one of the six explicit functions.
pub fn corollary_min(f: &CorollaryFn, spec: &DiskSampling, engine: &Engine) -> Result<Extremum> {
    search(engine.exec, spec, Mode::Min, |z| Ok(corollary_fn(f, z)?.re))
}

/// Largest deviation of F5 from `(20/3) w(z)/z`, or of F6 from
/// `(3/20) z/w(z)`, with `w = w_{5,3/2}` from its power series.
pub fn scaling_oracle(id: CorollaryId, spec: &DiskSampling, engine: &Engine) -> Result<Extremum> {
    if !matches!(id, CorollaryId::F5 | CorollaryId::F6) {
        return Err(DiniError::Parse {
            what: "scaled function id (f5 or f6)",
            input: id.name().into(),
        });
    }
    let f = CorollaryFn::new(id);
    let series = engine.series_for(&f.params)?;
    let scale = rational::to_f64(&f.scale);
    search(engine.exec, spec, Mode::Max, |z| {
        let w_over_z = if z == Complex64::new(0.0, 0.0) {
            series.eval_over_z(z)?.value
        } else {
            series.eval(z, Deriv::Value)?.value / z
        };
        let series_side = match id {
            CorollaryId::F5 => scale * w_over_z,
            _ => checked_div(Complex64::new(scale, 0.0), w_over_z, z)?,
        };
        Ok((corollary_fn(&f, z)? - series_side).norm())
    })
}

/// Largest `|eval_w - w_via_bessel|` over a grid; the origin is skipped.
pub fn representation_gap(params: &Params, spec: &DiskSampling, engine: &Engine) -> Result<Extremum> {
    let series = engine.series_for(params)?;
    let tight = SeriesOptions::with_tol(1e-15);
    search(engine.exec, spec, Mode::Max, |z| {
        if z == Complex64::new(0.0, 0.0) {
            return Err(DiniError::DenominatorZero { at: z, floor: 0.0 });
        }
        let a = series.eval(z, Deriv::Value)?.value;
        let b = w_via_bessel(params, z, tight)?;
        Ok((a - b).norm())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Criterion {
    /// `Re(z f'/f)`
    Starlike,
    /// `Re(1 + z f''/f')`
    Convex,
}

/// Function examined by [`geometry_probe`].
#[derive(Debug, Clone)]
pub enum ProbeTarget {
    /// `w_{alpha,v}` itself.
    Full(Params),
    /// The partial sum `(w)_m` of order `params.m()`.
    Partial(Params),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub infimum: f64,
    pub argmin: Option<ComplexPoint>,
    pub samples: usize,
    pub skipped: usize,
}

/// Sampled infimum of the starlike or convex criterion expression. This is
/// numerical evidence only.
pub fn geometry_probe(
    target: &ProbeTarget,
    criterion: Criterion,
    spec: &DiskSampling,
    engine: &Engine,
) -> Result<ProbeReport> {
    let (params, partial) = match target {
        ProbeTarget::Full(p) => (p, false),
        ProbeTarget::Partial(p) => (p, true),
    };
    let series = engine.series_for(params)?;
    let ext = search(engine.exec, spec, Mode::Min, |z| {
        let value = match criterion {
            Criterion::Starlike => {
                let (f_over_z, fp) = if partial {
                    (series.partial_over_z(z), series.partial(z, Deriv::First))
                } else {
                    (series.eval_over_z(z)?.value, series.eval(z, Deriv::First)?.value)
                };
                checked_div(fp, f_over_z, z)?
            }
            Criterion::Convex => {
                let (fp, fpp) = if partial {
                    (series.partial(z, Deriv::First), series.partial_second(z))
                } else {
                    (series.eval(z, Deriv::First)?.value, series.eval_second(z)?.value)
                };
                1.0 + checked_div(z * fpp, fp, z)?
            }
        };
        Ok(value.re)
    })?;
    if let Some(e) = ext.error {
        return Err(DiniError::Parse {
            what: "probe evaluation",
            input: e,
        });
    }
    Ok(ProbeReport {
        infimum: ext.value,
        argmin: ext.at,
        samples: ext.samples,
        skipped: ext.skipped,
    })
}

/// `max |x^2 y'' + x y' + (x^2 - v^2) y|` over `points`, where `jet`
/// returns `(y, y', y'')`.
pub fn ode_residual_with<F>(v: f64, points: &[f64], jet: F) -> Result<f64>
where
    F: Fn(f64) -> Result<(Complex64, Complex64, Complex64)>,
{
    let mut worst: f64 = 0.0;
    for &x in points {
        let (y, yp, ypp) = jet(x)?;
        let r = x * x * ypp + x * yp + (x * x - v * v) * y;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Bessel differential equation residual of the truncated `J_v` series,
/// derivatives taken term by term.
pub fn ode_residual(v: f64, points: &[f64]) -> Result<f64> {
    ode_residual_with(v, points, |x| {
        let j = bessel_j_jet(v, Complex64::new(x, 0.0), 1e-15)?;
        Ok((j.value, j.first, j.second))
    })
}
