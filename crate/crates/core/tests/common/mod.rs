#![allow(dead_code)]

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use dinikit::bounds::{coeff_majorant, tail_bound};
use dinikit::dini::{dini_coeff, CorollaryFn, CorollaryId, RatioKind};
use dinikit::plot::{emit, image_domain, read_csv, Format};
use dinikit::rational::{self, Rational};
use dinikit::sampling::DiskSampling;
use dinikit::verifier::{min_real_part, ode_residual, ratio_value};
use dinikit::{Deriv, Engine, Params};

pub fn rat(num: i64, den: i64) -> Rational {
    rational::ratio(num, den)
}

/// alpha in (0, 10], denominators up to 12.
pub fn alpha_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|den| (1i64..=10 * den).prop_map(move |num| rat(num, den)))
}

/// v strictly above `floor_num / floor_den` and at most 5.
pub fn v_above(floor_num: i64, floor_den: i64) -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(move |k| {
        let den = floor_den * k;
        let lo = floor_num * k + 1;
        (lo..=5 * den).prop_map(move |num| rat(num, den))
    })
}

pub fn series_params() -> impl Strategy<Value = Params> {
    (alpha_strategy(), v_above(-1, 1)).prop_map(|(a, v)| Params::new(a, v, 0).unwrap())
}

pub fn bounds_params() -> impl Strategy<Value = Params> {
    (alpha_strategy(), v_above(-7, 8)).prop_map(|(a, v)| Params::new(a, v, 0).unwrap())
}

pub fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.999, 0.0f64..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn small_grid() -> impl Strategy<Value = DiskSampling> {
    (1usize..=5, 2usize..=24, 0.2f64..=0.999)
        .prop_map(|(radii, angles, rmax)| DiskSampling::uniform(radii, rmax, angles).unwrap())
}

pub fn corollary_id() -> impl Strategy<Value = CorollaryId> {
    prop::sample::select(CorollaryId::ALL.to_vec())
}

pub fn ratio_kind() -> impl Strategy<Value = RatioKind> {
    prop::sample::select(RatioKind::ALL.to_vec())
}

fn same_bits(a: f64, b: f64) -> bool {
    a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan())
}

/// `w(conj z) = conj w(z)` and the same for every ratio, bit for bit.
pub fn reflection_symmetry(params: &Params, z: Complex64, kind: RatioKind) -> Result<(), TestCaseError> {
    let engine = Engine::sequential();
    let s = engine
        .series_for(params)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    for deriv in [Deriv::Value, Deriv::First] {
        let a = s.eval(z, deriv).map_err(|e| TestCaseError::fail(e.to_string()))?.value;
        let b = s
            .eval(z.conj(), deriv)
            .map_err(|e| TestCaseError::fail(e.to_string()))?
            .value;
        prop_assert_eq!(a.conj(), b, "deriv {:?} at {}", deriv, z);
    }
    if params.bounds_admissible() {
        if let (Ok(a), Ok(b)) = (ratio_value(&s, kind, z), ratio_value(&s, kind, z.conj())) {
            prop_assert_eq!(a.conj(), b, "{:?} at {}", kind, z);
        }
    }
    Ok(())
}

/// `sign a_n = (-1)^n`.
pub fn sign_alternation(params: &Params) -> Result<(), TestCaseError> {
    for n in 1..=30u32 {
        let a = dini_coeff(params, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let want_positive = n % 2 == 0;
        prop_assert!(
            a.is_positive() == want_positive && !num_traits::Zero::is_zero(&a),
            "n = {}: {}",
            n,
            a
        );
    }
    Ok(())
}

/// `|a_n| <= majorant(n)` for `n <= 20`, exactly.
pub fn majorant_dominance(params: &Params) -> Result<(), TestCaseError> {
    for n in 1..=20u32 {
        let a = dini_coeff(params, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let m = coeff_majorant(params.alpha(), params.v(), n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(a.abs() <= m, "n = {}: |{}| > {}", n, a, m);
    }
    Ok(())
}

/// Doubling both resolutions never raises the sampled minimum.
pub fn refinement_monotone(params: &Params, kind: RatioKind, spec: &DiskSampling) -> Result<(), TestCaseError> {
    let engine = Engine::sequential();
    let coarse = min_real_part(kind, params, spec, &engine).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let fine = min_real_part(kind, params, &spec.refined(), &engine).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if coarse.empirical.is_nan() {
        return Ok(());
    }
    prop_assert!(
        fine.empirical <= coarse.empirical,
        "{} > {}",
        fine.empirical,
        coarse.empirical
    );
    Ok(())
}

pub const ODE_TOL: f64 = 1e-8;

pub fn ode_residual_small(v: f64, points: &[f64]) -> Result<(), TestCaseError> {
    let r = ode_residual(v, points).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(r <= ODE_TOL, "residual {} for v = {}", r, v);
    Ok(())
}

pub fn csv_round_trip(id: CorollaryId, spec: &DiskSampling) -> Result<(), TestCaseError> {
    let dir = tempfile::tempdir().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let path = dir.path().join("grid.csv");
    let grid = image_domain(&CorollaryFn::new(id), spec, &Engine::sequential())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    emit(&grid, Format::Csv, &path).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rows = read_csv(&path).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(rows.len(), grid.points.len());
    for (r, p) in rows.iter().zip(&grid.points) {
        prop_assert!(same_bits(r.source.re, p.source.re) && same_bits(r.source.im, p.source.im));
        prop_assert!(same_bits(r.image.re, p.image.re) && same_bits(r.image.im, p.image.im));
        prop_assert_eq!(r.flag, p.flag);
    }
    Ok(())
}

/// Decreasing in the number of kept terms, increasing in the radius.
pub fn tail_monotone(params: &Params, terms: u32, r1: f64, r2: f64) -> Result<(), TestCaseError> {
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    for deriv in [Deriv::Value, Deriv::First] {
        let t = |n: u32, r: f64| {
            tail_bound(params.alpha(), params.v(), n, r, deriv).map_err(|e| TestCaseError::fail(e.to_string()))
        };
        let a = t(terms, hi)?;
        let b = t(terms + 1, hi)?;
        prop_assert!(b <= a, "N: {} then {}", a, b);
        if a > 0.0 && a.is_normal() && b.is_normal() {
            prop_assert!(b < a, "not strict in N: {} then {}", a, b);
        }
        prop_assert!(t(terms, lo)? <= a, "r: {} > {}", t(terms, lo)?, a);
    }
    Ok(())
}
