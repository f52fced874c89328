//! Normalized Dini functions
//! `w(z) = z + sum_{n>=1} a_n z^(n+1)`,
//! `a_n = (-1)^n (2n + alpha) / (alpha 4^n n! (v+1)_n)`,
//! their partial sums, and certified truncated evaluation.

mod bessel;
mod closed_form;

use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

use crate::bounds::MajorantTail;
use crate::error::{DiniError, Result};
use crate::params::{ComplexPoint, Deriv, Params};
use crate::rational::{self, Rational};

pub use bessel::{bessel_j, bessel_j_jet, w_via_bessel, BesselJet};
pub use closed_form::{corollary_fn, CorollaryFn, CorollaryId, RatioKind, NEAR_ORIGIN};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 200;
pub const MAX_TERMS_ENV: &str = "DINIKIT_MAX_TERMS";

/// Rising factorial `mu (mu+1) ... (mu+n-1)` by running product; `1` for `n = 0`.
pub fn pochhammer<T>(mu: &T, n: u32) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = mu.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// Exact coefficient `a_n` for `n >= 1`.
pub fn dini_coeff(params: &Params, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(DiniError::ZeroIndex);
    }
    let alpha = params.alpha();
    let vp1 = params.v() + rational::int(1);
    let fact = pochhammer(&rational::int(1), n);
    let den = alpha * Pow::pow(&rational::int(4), n) * fact * pochhammer(&vp1, n);
    let num = rational::int(2 * n as i64) + alpha;
    let a = num / den;
    Ok(if n.is_multiple_of(2) { a } else { -a })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl SeriesOptions {
    pub fn with_tol(tol: f64) -> Self {
        SeriesOptions {
            tol,
            ..Default::default()
        }
    }

    /// Defaults, with the term cap taken from `DINIKIT_MAX_TERMS` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(MAX_TERMS_ENV) {
            opts.max_terms = raw.trim().parse().map_err(|_| DiniError::Parse {
                what: MAX_TERMS_ENV,
                input: raw.clone(),
            })?;
        }
        Ok(opts)
    }

    fn validate(&self) -> Result<()> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(DiniError::BadTolerance(self.tol))
        }
    }
}

/// A truncated series value with its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    #[serde(serialize_with = "serialize_complex")]
    pub value: ComplexPoint,
    pub terms_used: usize,
    /// Upper bound on the modulus of the omitted tail.
    pub tail_bound: f64,
}

pub(crate) fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Point {
        re: f64,
        im: f64,
    }
    Point { re: z.re, im: z.im }.serialize(s)
}

/// Which series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// `w(z)`
    Value,
    /// `w(z) / z = 1 + sum a_n z^n`
    Reduced,
    /// `w'(z)`
    First,
    /// `w''(z)`
    Second,
}

/// Binary64 coefficients of one `(alpha, v)` pair with the matching tail
/// certificates. Build once, evaluate at many points.
#[derive(Debug, Clone)]
pub struct DiniSeries {
    params: Params,
    /// `coeffs[n] = a_n`, with `a_0 = 1`.
    coeffs: Vec<f64>,
    majorant: MajorantTail,
    opts: SeriesOptions,
}

impl DiniSeries {
    pub fn new(params: &Params, opts: SeriesOptions) -> Result<Self> {
        opts.validate()?;
        let alpha = params.alpha_f64();
        let v = params.v_f64();
        let len = opts.max_terms.max(params.m()) + 3;
        let mut coeffs = Vec::with_capacity(len);
        coeffs.push(1.0);
        // a_{n+1} / a_n = -(2n + 2 + alpha) / ((2n + alpha) 4 (n+1) (v+1+n))
        for n in 0..len - 1 {
            let a = coeffs[n];
            let nf = n as f64;
            let next = if n == 0 {
                -(2.0 + alpha) / (alpha * 4.0 * (v + 1.0))
            } else {
                -a * (2.0 * nf + 2.0 + alpha) / ((2.0 * nf + alpha) * 4.0 * (nf + 1.0) * (v + 1.0 + nf))
            };
            coeffs.push(next);
        }
        Ok(DiniSeries {
            params: params.clone(),
            coeffs,
            majorant: MajorantTail::new(alpha, v),
            opts,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn options(&self) -> SeriesOptions {
        self.opts
    }

    /// `a_n` in binary64 (`a_0 = 1`).
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs[n]
    }

    /// Certified bound on the tail beyond `terms` coefficients, at `|z| = r`.
    fn tail(&self, terms: usize, r: f64, shape: Shape) -> f64 {
        if r == 0.0 {
            return if shape == Shape::Second && terms == 0 {
                (2.0 * self.coeffs[1]).abs()
            } else {
                0.0
            };
        }
        let majorant = match shape {
            Shape::Value => self.majorant.bound(terms as u32, r, Deriv::Value).ok(),
            Shape::Reduced => self.majorant.bound(terms as u32, r, Deriv::Value).ok().map(|t| t / r),
            Shape::First => self.majorant.bound(terms as u32, r, Deriv::First).ok(),
            Shape::Second => None,
        };
        majorant.unwrap_or_else(|| self.ratio_tail(terms, r, shape))
    }

    /// Ratio-test tail `|t_K| / (1 - rho)` with `K = terms + 1`. The term
    /// ratios `|t_{n+1} / t_n|` decrease in `n`, so `rho` at `K` bounds all
    /// later ones.
    fn ratio_tail(&self, terms: usize, r: f64, shape: Shape) -> f64 {
        let k = terms + 1;
        if k + 1 >= self.coeffs.len() {
            return f64::INFINITY;
        }
        let (weight, power): (fn(usize) -> f64, i32) = match shape {
            Shape::Value => (|_| 1.0, 1),
            Shape::Reduced => (|_| 1.0, 0),
            Shape::First => (|n| (n + 1) as f64, 0),
            Shape::Second => (|n| ((n + 1) * n) as f64, -1),
        };
        let term = |n: usize| self.coeffs[n].abs() * weight(n) * r.powi(n as i32 + power);
        let tk = term(k);
        if tk == 0.0 {
            return 0.0;
        }
        let rho = r * (self.coeffs[k + 1] / self.coeffs[k]).abs() * weight(k + 1) / weight(k);
        if rho >= 1.0 {
            f64::INFINITY
        } else {
            tk / (1.0 - rho) * (1.0 + 64.0 * f64::EPSILON)
        }
    }

    fn truncation(&self, r: f64, shape: Shape) -> Result<(usize, f64)> {
        let mut last = f64::INFINITY;
        for n in 0..=self.opts.max_terms {
            let t = self.tail(n, r, shape);
            if t <= self.opts.tol {
                return Ok((n, t));
            }
            last = t;
        }
        Err(DiniError::ToleranceNotReached {
            tol: self.opts.tol,
            max_terms: self.opts.max_terms,
            tail: last,
        })
    }

    /// Horner sum of `sum_{n=0}^{top} c(n) z^n`.
    fn horner(z: Complex64, top: usize, c: impl Fn(usize) -> f64) -> Complex64 {
        let mut acc = Complex64::new(c(top), 0.0);
        for n in (0..top).rev() {
            acc = acc * z + c(n);
        }
        acc
    }

    fn sum(&self, z: Complex64, terms: usize, shape: Shape) -> Complex64 {
        let a = &self.coeffs;
        match shape {
            Shape::Value => z * Self::horner(z, terms, |n| a[n]),
            Shape::Reduced => Self::horner(z, terms, |n| a[n]),
            Shape::First => Self::horner(z, terms, |n| (n + 1) as f64 * a[n]),
            Shape::Second => {
                if terms == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Self::horner(z, terms - 1, |k| ((k + 2) * (k + 1)) as f64 * a[k + 1])
                }
            }
        }
    }

    fn eval_shape(&self, z: ComplexPoint, shape: Shape) -> Result<EvalResult> {
        let (terms, tail) = self.truncation(z.norm(), shape)?;
        Ok(EvalResult {
            value: self.sum(z, terms, shape),
            terms_used: terms,
            tail_bound: tail,
        })
    }

    /// `w(z)` or `w'(z)` truncated once the certified tail drops below the tolerance.
    pub fn eval(&self, z: ComplexPoint, deriv: Deriv) -> Result<EvalResult> {
        match deriv {
            Deriv::Value => self.eval_shape(z, Shape::Value),
            Deriv::First => self.eval_shape(z, Shape::First),
        }
    }

    /// `w(z) / z`, defined as `1` at the origin.
    pub fn eval_over_z(&self, z: ComplexPoint) -> Result<EvalResult> {
        self.eval_shape(z, Shape::Reduced)
    }

    pub fn eval_second(&self, z: ComplexPoint) -> Result<EvalResult> {
        self.eval_shape(z, Shape::Second)
    }

    /// Partial sum `(w)_m(z) = z + sum_{n=1}^m a_n z^(n+1)` or its derivative.
    pub fn partial(&self, z: ComplexPoint, deriv: Deriv) -> ComplexPoint {
        match deriv {
            Deriv::Value => self.sum(z, self.params.m(), Shape::Value),
            Deriv::First => self.sum(z, self.params.m(), Shape::First),
        }
    }

    /// `(w)_m(z) / z`.
    pub fn partial_over_z(&self, z: ComplexPoint) -> ComplexPoint {
        self.sum(z, self.params.m(), Shape::Reduced)
    }

    pub fn partial_second(&self, z: ComplexPoint) -> ComplexPoint {
        self.sum(z, self.params.m(), Shape::Second)
    }
}

/// Certified evaluation of `w` (`Deriv::Value`) or `w'` (`Deriv::First`).
pub fn eval_w(params: &Params, z: ComplexPoint, deriv: Deriv, opts: SeriesOptions) -> Result<EvalResult> {
    DiniSeries::new(params, opts)?.eval(z, deriv)
}

/// Exact-length partial sum of order `params.m()`.
pub fn eval_partial(params: &Params, z: ComplexPoint, deriv: Deriv) -> ComplexPoint {
    let opts = SeriesOptions {
        max_terms: params.m(),
        ..Default::default()
    };
    DiniSeries::new(params, opts)
        .expect("default tolerance is valid")
        .partial(z, deriv)
}
