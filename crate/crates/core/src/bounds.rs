//! Closed-form bounds and hypothesis polynomials in exact rational
//! arithmetic, plus certified tails of the coefficient majorant.
//!
//! Everything here stays in [`Rational`] until a caller asks for binary64.

use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{DiniError, Result};
use crate::params::{bounds_v_floor, series_v_floor, Deriv, BOUNDS_V_FLOOR, SERIES_V_FLOOR};
use crate::rational::{self, ExactValue, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundKind {
    /// Upper bound on `|w(z)|`.
    LemmaW,
    /// Upper bound on `|w'(z)|`.
    LemmaWprime,
    /// Lower bound on `Re{w / (w)_m}`.
    ThmRatioW,
    /// Lower bound on `Re{(w)_m / w}`.
    ThmRatioWInv,
    /// Lower bound on `Re{w' / (w)'_m}`.
    ThmRatioWprime,
    /// Lower bound on `Re{(w)'_m / w'}`.
    ThmRatioWprimeInv,
}

impl BoundKind {
    pub const ALL: [BoundKind; 6] = [
        BoundKind::LemmaW,
        BoundKind::LemmaWprime,
        BoundKind::ThmRatioW,
        BoundKind::ThmRatioWInv,
        BoundKind::ThmRatioWprime,
        BoundKind::ThmRatioWprimeInv,
    ];

    /// Theorem whose hypothesis gates the ratio bounds; `None` for the
    /// unconditional modulus bounds.
    pub fn theorem(self) -> Option<Theorem> {
        match self {
            BoundKind::LemmaW | BoundKind::LemmaWprime => None,
            BoundKind::ThmRatioW | BoundKind::ThmRatioWInv => Some(Theorem::T21),
            BoundKind::ThmRatioWprime | BoundKind::ThmRatioWprimeInv => Some(Theorem::T22),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::LemmaW => "LEMMA_W",
            BoundKind::LemmaWprime => "LEMMA_WPRIME",
            BoundKind::ThmRatioW => "THM_RATIO_W",
            BoundKind::ThmRatioWInv => "THM_RATIO_W_INV",
            BoundKind::ThmRatioWprime => "THM_RATIO_WPRIME",
            BoundKind::ThmRatioWprimeInv => "THM_RATIO_WPRIME_INV",
        }
    }
}

/// The two ratio theorems: one for `w`, one for `w'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Theorem {
    T21,
    T22,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisStatus {
    pub satisfied: bool,
    /// Value of the hypothesis polynomial; `satisfied` iff `slack >= 0`.
    pub slack: Rational,
}

impl Serialize for HypothesisStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HypothesisStatus", 2)?;
        st.serialize_field("satisfied", &self.satisfied)?;
        st.serialize_field("slack", &ExactValue(self.slack.clone()))?;
        st.end()
    }
}

fn q(n: i64) -> Rational {
    rational::int(n)
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if alpha.is_positive() {
        Ok(())
    } else {
        Err(DiniError::AlphaNotPositive(rational::display(alpha)))
    }
}

fn check_bounds_v(v: &Rational) -> Result<()> {
    if *v > bounds_v_floor() {
        Ok(())
    } else {
        Err(DiniError::OrderBelowFloor {
            v: rational::display(v),
            floor: BOUNDS_V_FLOOR,
        })
    }
}

/// `8(alpha - 4) v + 5 alpha - 32`
fn t21_poly(alpha: &Rational, v: &Rational) -> Rational {
    q(8) * (alpha - q(4)) * v + q(5) * alpha - q(32)
}

/// `512 alpha v^3 + 64(17 alpha - 8) v^2 + 16(59 alpha - 32) v + 133 alpha - 512`
fn t22_poly(alpha: &Rational, v: &Rational) -> Rational {
    let v2 = v * v;
    let v3 = &v2 * v;
    q(512) * alpha * v3 + q(64) * (q(17) * alpha - q(8)) * v2 + q(16) * (q(59) * alpha - q(32)) * v + q(133) * alpha
        - q(512)
}

/// `32 v + 2 alpha + 32`
fn lemma_w_numerator(alpha: &Rational, v: &Rational) -> Rational {
    q(32) * v + q(2) * alpha + q(32)
}

/// `256(2 + alpha) v^2 + 8(64 + 29 alpha) v + 210 alpha + 512`
pub(crate) fn lemma_wprime_numerator(alpha: &Rational, v: &Rational) -> Rational {
    q(256) * (q(2) + alpha) * v * v + q(8) * (q(64) + q(29) * alpha) * v + q(210) * alpha + q(512)
}

/// `512 alpha v^3 + 64(25 alpha + 8) v^2 + 128(11 alpha + 4) v + 553 alpha + 512`
pub(crate) fn wprime_inv_denominator(alpha: &Rational, v: &Rational) -> Rational {
    let v2 = v * v;
    let v3 = &v2 * v;
    q(512) * alpha * v3
        + q(64) * (q(25) * alpha + q(8)) * v2
        + q(128) * (q(11) * alpha + q(4)) * v
        + q(553) * alpha
        + q(512)
}

/// `(8v + 7)`
fn eight_v_seven(v: &Rational) -> Rational {
    q(8) * v + q(7)
}

/// Exact value of the named closed-form bound. Requires `alpha > 0` and
/// `v > -7/8`.
pub fn bound_value(kind: BoundKind, alpha: &Rational, v: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    check_bounds_v(v)?;
    let s = eight_v_seven(v);
    let s3 = Pow::pow(&s, 3u32);
    let out = match kind {
        BoundKind::LemmaW => Rational::one() + lemma_w_numerator(alpha, v) / (&s * alpha),
        BoundKind::LemmaWprime => Rational::one() + lemma_wprime_numerator(alpha, v) / (s3 * alpha),
        BoundKind::ThmRatioW => t21_poly(alpha, v) / (&s * alpha),
        BoundKind::ThmRatioWInv => {
            let top = &s * alpha;
            &top / (&top + lemma_w_numerator(alpha, v))
        }
        BoundKind::ThmRatioWprime => t22_poly(alpha, v) / lemma_wprime_numerator(alpha, v),
        BoundKind::ThmRatioWprimeInv => s3 * alpha / wprime_inv_denominator(alpha, v),
    };
    Ok(out)
}

/// Exact hypothesis polynomial of a theorem and its sign.
pub fn hypothesis(theorem: Theorem, alpha: &Rational, v: &Rational) -> HypothesisStatus {
    let slack = match theorem {
        Theorem::T21 => t21_poly(alpha, v),
        Theorem::T22 => t22_poly(alpha, v),
    };
    HypothesisStatus {
        satisfied: !slack.is_negative(),
        slack,
    }
}

/// `(2n + alpha) / (alpha 4^n 2^(n-1) (v+1)^n)`, an upper bound for `|a_n|`
/// from `(v+1)^n <= (v+1)_n` and `2^(n-1) <= n!`.
pub fn coeff_majorant(alpha: &Rational, v: &Rational, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(DiniError::ZeroIndex);
    }
    check_alpha(alpha)?;
    if *v <= series_v_floor() {
        return Err(DiniError::OrderBelowFloor {
            v: rational::display(v),
            floor: SERIES_V_FLOOR,
        });
    }
    let vp1 = v + q(1);
    let den = alpha * Pow::pow(&q(4), n) * Pow::pow(&q(2), n - 1) * Pow::pow(&vp1, n);
    Ok((q(2 * n as i64) + alpha) / den)
}

/// Sums `sum_{n >= k} n^p x^n` for `p = 0, 1, 2` in closed form.
fn geometric_moments(x: &Rational, k: u32) -> [Rational; 3] {
    let one = Rational::one();
    let xk = Pow::pow(x, k);
    let om = &one - x;
    let kq = q(k as i64);
    let km1 = &kq - &one;
    let s0 = &xk / &om;
    let s1 = &xk * (&kq - &km1 * x) / (&om * &om);
    let s2 = &xk * (&kq * &kq - (q(2) * &kq * &kq - q(2) * &kq - &one) * x + &km1 * &km1 * x * x) / (&om * &om * &om);
    [s0, s1, s2]
}

/// Exact certified tail
/// `sum_{n > N} (n+1)^d * coeff_majorant(n) * r^(n+1-d)`, which bounds the
/// omitted part of the series for `w` (`d = 0`) or `w'` (`d = 1`) at
/// `|z| <= r`.
pub fn tail_bound_exact(alpha: &Rational, v: &Rational, terms: u32, r: &Rational, deriv: Deriv) -> Result<Rational> {
    check_alpha(alpha)?;
    if *v <= series_v_floor() {
        return Err(DiniError::OrderBelowFloor {
            v: rational::display(v),
            floor: SERIES_V_FLOOR,
        });
    }
    if r.is_negative() {
        return Err(DiniError::Parse {
            what: "nonnegative radius",
            input: rational::display(r),
        });
    }
    let ratio = r / (q(8) * (v + q(1)));
    if ratio >= Rational::one() {
        return Err(DiniError::RatioNotContracting {
            q: rational::to_f64(&ratio),
        });
    }
    if ratio.is_zero() {
        return Ok(Rational::zero());
    }
    let [s0, s1, s2] = geometric_moments(&ratio, terms + 1);
    let lead = q(2) / alpha;
    Ok(match deriv {
        Deriv::Value => r * lead * (q(2) * s1 + alpha * s0),
        Deriv::First => lead * (q(2) * s2 + (q(2) + alpha) * s1 + alpha * s0),
    })
}

/// Binary64 form of [`tail_bound_exact`], rounded upward.
pub fn tail_bound(alpha: &Rational, v: &Rational, terms: u32, r: f64, deriv: Deriv) -> Result<f64> {
    check_alpha(alpha)?;
    if *v <= series_v_floor() {
        return Err(DiniError::OrderBelowFloor {
            v: rational::display(v),
            floor: SERIES_V_FLOOR,
        });
    }
    MajorantTail::new(rational::to_f64(alpha), rational::to_f64(v)).bound(terms, r, deriv)
}

/// Floating-point evaluator of the majorant tail, cached per `(alpha, v)`.
#[derive(Debug, Clone, Copy)]
pub struct MajorantTail {
    alpha: f64,
    /// `8 (v + 1)`
    base: f64,
}

/// Relative slack applied to every floating tail so that rounding in the
/// closed form cannot make the certificate too small.
const ROUND_UP: f64 = 1.0 + 64.0 * f64::EPSILON;

impl MajorantTail {
    pub fn new(alpha: f64, v: f64) -> Self {
        MajorantTail {
            alpha,
            base: 8.0 * (v + 1.0),
        }
    }

    pub fn ratio(&self, r: f64) -> f64 {
        r / self.base
    }

    pub fn bound(&self, terms: u32, r: f64, deriv: Deriv) -> Result<f64> {
        let x = self.ratio(r);
        if x.is_nan() || x >= 1.0 {
            return Err(DiniError::RatioNotContracting { q: x });
        }
        if x <= 0.0 {
            return Ok(0.0);
        }
        let k = (terms + 1) as f64;
        let xk = x.powi(terms as i32 + 1);
        let om = 1.0 - x;
        let s0 = xk / om;
        let s1 = xk * (k - (k - 1.0) * x) / (om * om);
        let s2 = xk * (k * k - (2.0 * k * k - 2.0 * k - 1.0) * x + (k - 1.0) * (k - 1.0) * x * x) / (om * om * om);
        let lead = 2.0 / self.alpha;
        let t = match deriv {
            Deriv::Value => r * lead * (2.0 * s1 + self.alpha * s0),
            Deriv::First => lead * (2.0 * s2 + (2.0 + self.alpha) * s1 + self.alpha * s0),
        };
        Ok(t * ROUND_UP)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn bv(kind: BoundKind, a: (i64, i64), v: (i64, i64)) -> Rational {
        bound_value(kind, &ratio(a.0, a.1), &ratio(v.0, v.1)).unwrap()
    }

    #[test]
    fn reproduces_corollary_fractions() {
        assert_eq!(bv(BoundKind::ThmRatioWprime, (1, 1), (1, 2)), ratio(45, 1286));
        assert_eq!(bv(BoundKind::ThmRatioWprimeInv, (1, 1), (1, 2)), ratio(1331, 2617));
        assert_eq!(bv(BoundKind::ThmRatioWprime, (3, 2), (1, 2)), ratio(1031, 2962));
        assert_eq!(bv(BoundKind::ThmRatioWprimeInv, (3, 2), (1, 2)), ratio(3993, 6955));
        let w = bv(BoundKind::ThmRatioW, (5, 1), (3, 2));
        assert_eq!(w, ratio(1, 19));
        assert_eq!(w * ratio(20, 3), ratio(20, 57));
        let winv = bv(BoundKind::ThmRatioWInv, (5, 1), (3, 2));
        assert_eq!(winv, ratio(19, 37));
        assert_eq!(winv * ratio(3, 20), ratio(57, 740));
    }

    #[test]
    fn lemma_values() {
        assert_eq!(bv(BoundKind::LemmaW, (1, 1), (1, 2)), int(1) + ratio(50, 11));
        assert_eq!(bv(BoundKind::LemmaWprime, (1, 1), (1, 2)), int(1) + ratio(1286, 1331));
    }

    #[test]
    fn rejects_v_at_or_below_seven_eighths() {
        let a = int(1);
        for v in [ratio(-7, 8), int(-1), ratio(-9, 10)] {
            for kind in BoundKind::ALL {
                assert!(matches!(
                    bound_value(kind, &a, &v),
                    Err(DiniError::OrderBelowFloor { .. })
                ));
            }
        }
        assert!(bound_value(BoundKind::LemmaW, &int(0), &int(1)).is_err());
    }

    #[test]
    fn hypothesis_slacks() {
        let h = hypothesis(Theorem::T21, &int(5), &ratio(3, 2));
        assert!(h.satisfied);
        assert_eq!(h.slack, int(5));
        let h = hypothesis(Theorem::T21, &int(1), &ratio(1, 2));
        assert!(!h.satisfied);
        assert_eq!(h.slack, int(-39));
        let h = hypothesis(Theorem::T22, &int(1), &ratio(1, 2));
        assert!(h.satisfied);
        assert_eq!(h.slack, int(45));
        // zero slack counts as satisfied: alpha = 32/5, v = 0 makes the T21 polynomial vanish
        let h = hypothesis(Theorem::T21, &ratio(32, 5), &int(0));
        assert!(h.satisfied && h.slack.is_zero());
    }

    #[test]
    fn wprime_inv_denominator_is_cube_plus_lemma_numerator() {
        for (a, v) in [
            ((1, 1), (1, 2)),
            ((3, 2), (1, 2)),
            ((5, 1), (3, 2)),
            ((7, 3), (-5, 6)),
            ((1, 9), (4, 1)),
        ] {
            let alpha = ratio(a.0, a.1);
            let v = ratio(v.0, v.1);
            let cube = Pow::pow(eight_v_seven(&v), 3u32) * &alpha;
            assert_eq!(
                wprime_inv_denominator(&alpha, &v),
                cube + lemma_wprime_numerator(&alpha, &v)
            );
        }
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(coeff_majorant(&int(1), &ratio(1, 2), 1).unwrap(), ratio(1, 2));
        assert_eq!(coeff_majorant(&int(1), &int(0), 2).unwrap(), ratio(5, 32));
        assert!(matches!(coeff_majorant(&int(1), &int(0), 0), Err(DiniError::ZeroIndex)));
    }

    /// Partial sums of the majorant series computed term by term.
    fn brute_tail(alpha: &Rational, v: &Rational, terms: u32, r: &Rational, deriv: Deriv, upto: u32) -> Rational {
        let mut acc = Rational::zero();
        for n in terms + 1..=upto {
            let w = match deriv {
                Deriv::Value => Rational::one(),
                Deriv::First => q(n as i64 + 1),
            };
            let pow = n + 1 - deriv.order();
            acc += w * coeff_majorant(alpha, v, n).unwrap() * Pow::pow(r, pow);
        }
        acc
    }

    #[test]
    fn tail_matches_brute_force_summation() {
        let cases = [
            ((1, 1), (1, 2)),
            ((3, 2), (1, 2)),
            ((5, 1), (3, 2)),
            ((2, 7), (-13, 16)),
        ];
        for (a, v) in cases {
            let alpha = ratio(a.0, a.1);
            let v = ratio(v.0, v.1);
            for r in [int(1), ratio(9, 10), ratio(1, 3)] {
                for terms in [0u32, 1, 4] {
                    for deriv in [Deriv::Value, Deriv::First] {
                        let exact = tail_bound_exact(&alpha, &v, terms, &r, deriv).unwrap();
                        let brute = brute_tail(&alpha, &v, terms, &r, deriv, terms + 300);
                        assert!(brute < exact);
                        let gap = rational::to_f64(&(&exact - &brute));
                        assert!(gap < 1e-40, "gap {gap} for {a:?} {v:?}");
                        let fl = tail_bound(&alpha, &v, terms, rational::to_f64(&r), deriv).unwrap();
                        let ex = rational::to_f64(&exact);
                        assert!(fl >= ex && fl <= ex * (1.0 + 1e-12), "{fl} vs {ex}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_tail_at_unit_radius() {
        // sum over all n of the majorant, in closed form:
        // (32(v+1) + 2 alpha (8v+7)) / (alpha (8v+7)^2)
        let alpha = int(1);
        let v = ratio(1, 2);
        let t0 = tail_bound_exact(&alpha, &v, 0, &int(1), Deriv::Value).unwrap();
        assert_eq!(t0, ratio(70, 121));
        let t1 = tail_bound_exact(&alpha, &v, 0, &int(1), Deriv::First).unwrap();
        assert_eq!(t1, ratio(1658, 1331));
    }

    #[test]
    fn tail_rejects_divergent_ratio() {
        let r = tail_bound_exact(&int(1), &ratio(-7, 8), 0, &int(1), Deriv::Value);
        assert!(matches!(r, Err(DiniError::RatioNotContracting { .. })));
        assert!(tail_bound(&int(1), &ratio(-15, 16), 3, 0.6, Deriv::Value).is_err());
        assert!(tail_bound(&int(1), &ratio(-15, 16), 3, 0.4, Deriv::Value).is_ok());
    }

    #[test]
    fn tail_vanishes_for_many_terms_or_zero_radius() {
        let t = tail_bound(&int(1), &ratio(1, 2), 400, 0.999, Deriv::First).unwrap();
        assert_eq!(t, 0.0);
        let t = tail_bound_exact(&int(1), &ratio(1, 2), 0, &int(0), Deriv::First).unwrap();
        assert!(t.is_zero());
    }
}
