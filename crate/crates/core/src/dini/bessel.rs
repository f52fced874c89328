//! Bessel functions of the first kind, `J_v(x) = sum_n (-1)^n / (n! Gamma(v+n+1)) (x/2)^(2n+v)`,
//! for `v > -1` and complex `x` on the principal branch.

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use super::{EvalResult, SeriesOptions, DEFAULT_MAX_TERMS};
use crate::error::{DiniError, Result};
use crate::params::{ComplexPoint, Deriv, Params};

/// `J_v`, `J_v'` and `J_v''` at one point, all from one truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJet {
    pub value: Complex64,
    pub first: Complex64,
    pub second: Complex64,
    pub terms_used: usize,
    /// Largest certified tail over the three series.
    pub tail_bound: f64,
    /// `x` lies on the negative real axis and `v` is not an integer, so the
    /// principal branch of `x^v` was taken across its cut.
    pub branch_cut: bool,
}

fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

fn check_order(v: f64) -> Result<()> {
    if v > -1.0 {
        Ok(())
    } else {
        Err(DiniError::OrderBelowFloor {
            v: v.to_string(),
            floor: crate::params::SERIES_V_FLOOR,
        })
    }
}

/// Derivatives of `J_v` at the origin, where `x^(2n+v-k)` is finite only
/// for selected orders.
fn jet_at_origin(v: f64) -> Result<BesselJet> {
    let c = |re: f64| Complex64::new(re, 0.0);
    let (value, first, second) = if v == 0.0 {
        (c(1.0), c(0.0), c(-0.5))
    } else if v == 1.0 {
        (c(0.0), c(0.5), c(0.0))
    } else if v == 2.0 {
        (c(0.0), c(0.0), c(0.25))
    } else if v > 2.0 {
        (c(0.0), c(0.0), c(0.0))
    } else if v > 0.0 {
        // finite value, unbounded derivatives; report the value and let the caller decide
        (c(0.0), c(f64::INFINITY), c(f64::INFINITY))
    } else {
        return Err(DiniError::BesselPole(v));
    };
    Ok(BesselJet {
        value,
        first,
        second,
        terms_used: 0,
        tail_bound: 0.0,
        branch_cut: false,
    })
}

fn jet(v: f64, x: ComplexPoint, tol: f64, max_terms: usize) -> Result<BesselJet> {
    check_order(v)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(DiniError::BadTolerance(tol));
    }
    if x == Complex64::new(0.0, 0.0) {
        return jet_at_origin(v);
    }
    let branch_cut = x.im == 0.0 && x.re < 0.0 && !is_integer(v);
    let half = x / 2.0;
    let s2 = half * half;
    let lead = (half.ln() * v).exp() / gamma(v + 1.0);
    let ax = x.norm();
    let scale = [lead.norm(), lead.norm() / ax, lead.norm() / (ax * ax)];

    let mut u = Complex64::new(1.0, 0.0);
    let mut sums = [Complex64::new(0.0, 0.0); 3];
    let mut last_tail = f64::INFINITY;
    for n in 0..=max_terms {
        let e = 2.0 * n as f64 + v;
        sums[0] += u;
        sums[1] += u * e;
        sums[2] += u * (e * (e - 1.0));

        // next term and a ratio bound valid for every later term
        let k = (n + 1) as f64;
        u = -u * s2 / (k * (k + v));
        let rho = s2.norm() / ((k + 1.0) * (k + 1.0 + v));
        let ek = 2.0 * k + v;
        let g1 = (ek + 2.0) / ek;
        let g2 = g1 * (ek + 1.0) / (ek - 1.0);
        let weights = [(1.0, 1.0), (ek.abs(), g1), ((ek * (ek - 1.0)).abs(), g2)];
        let mut tail: f64 = 0.0;
        for (order, (c, g)) in weights.iter().enumerate() {
            let r = rho * g;
            let t = if r < 1.0 {
                scale[order] * u.norm() * c / (1.0 - r)
            } else {
                f64::INFINITY
            };
            tail = tail.max(t);
        }
        if tail <= tol {
            return Ok(BesselJet {
                value: lead * sums[0],
                first: lead * sums[1] / x,
                second: lead * sums[2] / (x * x),
                terms_used: n + 1,
                tail_bound: tail * (1.0 + 64.0 * f64::EPSILON),
                branch_cut,
            });
        }
        last_tail = tail;
    }
    Err(DiniError::ToleranceNotReached {
        tol,
        max_terms,
        tail: last_tail,
    })
}

/// `J_v`, `J_v'` and `J_v''` with a shared certificate.
pub fn bessel_j_jet(v: f64, x: ComplexPoint, tol: f64) -> Result<BesselJet> {
    jet(v, x, tol, DEFAULT_MAX_TERMS)
}

/// Certified `J_v(x)` or `J_v'(x)`.
pub fn bessel_j(v: f64, x: ComplexPoint, deriv: Deriv, tol: f64) -> Result<EvalResult> {
    let j = bessel_j_jet(v, x, tol)?;
    Ok(EvalResult {
        value: match deriv {
            Deriv::Value => j.value,
            Deriv::First => j.first,
        },
        terms_used: j.terms_used,
        tail_bound: j.tail_bound,
    })
}

/// `w(z) = (2^v / alpha) Gamma(v+1) z^(1 - v/2) ((alpha - v) J_v(sqrt z) + sqrt z J_v'(sqrt z))`.
///
/// All fractional powers are taken through the principal `s = sqrt z`, with
/// `z^(1 - v/2) = s^(2 - v)`.
pub fn w_via_bessel(params: &Params, z: ComplexPoint, opts: SeriesOptions) -> Result<ComplexPoint> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(DiniError::ZeroArgument);
    }
    let alpha = params.alpha_f64();
    let v = params.v_f64();
    let s = z.sqrt();
    let j = jet(v, s, opts.tol, opts.max_terms)?;
    let pre = 2f64.powf(v) * gamma(v + 1.0) / alpha;
    let power = (s.ln() * (2.0 - v)).exp();
    Ok(pre * power * ((alpha - v) * j.value + s * j.first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_order_closed_form() {
        let x = c(PI / 2.0, 0.0);
        let j = bessel_j(0.5, x, Deriv::Value, 1e-15).unwrap();
        assert!((j.value - 2.0 / PI).norm() < 1e-14);
        for x in [c(0.3, 0.0), c(0.7, 0.4), c(-0.2, 0.9)] {
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            let got = bessel_j(0.5, x, Deriv::Value, 1e-15).unwrap().value;
            assert!((got - want).norm() < 1e-13, "{x}");
        }
    }

    #[test]
    fn three_halves_closed_form() {
        for x in [0.05, 0.2, 0.5, 1.0] {
            let want = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            let got = bessel_j(1.5, c(x, 0.0), Deriv::Value, 1e-15).unwrap();
            assert!((got.value.re - want).abs() < 1e-13, "{x}");
            assert_eq!(got.value.im, 0.0);
        }
    }

    #[test]
    fn leading_term_dominates_near_zero() {
        let x = 1e-6;
        let lead = (x / 2.0f64).sqrt() / gamma(1.5);
        let got = bessel_j(0.5, c(x, 0.0), Deriv::Value, 1e-20).unwrap().value.re;
        assert!(((got - lead) / lead).abs() < 1e-11);
    }

    #[test]
    fn derivative_by_finite_difference() {
        let x = c(0.6, 0.2);
        let h = 1e-6;
        let num = (bessel_j(0.7, x + h, Deriv::Value, 1e-15).unwrap().value
            - bessel_j(0.7, x - h, Deriv::Value, 1e-15).unwrap().value)
            / (2.0 * h);
        let got = bessel_j(0.7, x, Deriv::First, 1e-15).unwrap().value;
        assert!((num - got).norm() < 1e-8);
    }

    #[test]
    fn origin_and_errors() {
        assert_eq!(
            bessel_j(0.0, c(0.0, 0.0), Deriv::Value, 1e-12).unwrap().value,
            c(1.0, 0.0)
        );
        assert_eq!(
            bessel_j(1.5, c(0.0, 0.0), Deriv::Value, 1e-12).unwrap().value,
            c(0.0, 0.0)
        );
        assert!(matches!(
            bessel_j(-0.5, c(0.0, 0.0), Deriv::Value, 1e-12),
            Err(DiniError::BesselPole(_))
        ));
        assert!(bessel_j(-1.0, c(0.5, 0.0), Deriv::Value, 1e-12).is_err());
        assert!(bessel_j(0.5, c(0.5, 0.0), Deriv::Value, 0.0).is_err());
    }

    #[test]
    fn branch_cut_flag() {
        assert!(bessel_j_jet(0.5, c(-0.5, 0.0), 1e-12).unwrap().branch_cut);
        assert!(!bessel_j_jet(1.0, c(-0.5, 0.0), 1e-12).unwrap().branch_cut);
        assert!(!bessel_j_jet(0.5, c(-0.5, 1e-3), 1e-12).unwrap().branch_cut);
    }

    #[test]
    fn bessel_route_agrees_with_power_series() {
        let opts = SeriesOptions::default();
        for (a, v) in [((1, 1), (1, 2)), ((5, 1), (3, 2)), ((3, 2), (1, 2)), ((2, 1), (-1, 3))] {
            let params = Params::from_ratios(a, v, 0).unwrap();
            for z in [c(0.5, 0.0), c(0.3, 0.0), c(-0.7, 0.0), c(-0.7, -0.0), c(0.2, -0.85)] {
                let route = w_via_bessel(&params, z, SeriesOptions::with_tol(1e-15)).unwrap();
                let series = super::super::eval_w(&params, z, Deriv::Value, opts).unwrap().value;
                assert!((route - series).norm() < 1e-10, "{a:?} {v:?} {z}: {route} vs {series}");
            }
        }
        let params = Params::from_ratios((1, 1), (1, 2), 0).unwrap();
        assert!(matches!(
            w_via_bessel(&params, c(0.0, 0.0), opts),
            Err(DiniError::ZeroArgument)
        ));
    }

    #[test]
    fn real_input_gives_real_output() {
        let params = Params::from_ratios((5, 1), (3, 2), 0).unwrap();
        let w = w_via_bessel(&params, c(0.3, 0.0), SeriesOptions::default()).unwrap();
        assert_eq!(w.im, 0.0);
    }
}
