use num_complex::Complex64;
use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{DiniError, Result};
use crate::rational::{self, ExactValue, Rational};

/// A point of the complex plane. Verification contexts keep `|z| < 1`.
pub type ComplexPoint = Complex64;

/// Which function of a series is evaluated: the value or its first derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Deriv {
    Value,
    First,
}

impl Deriv {
    pub fn order(self) -> u32 {
        match self {
            Deriv::Value => 0,
            Deriv::First => 1,
        }
    }

    pub fn from_order(order: u32) -> Option<Self> {
        match order {
            0 => Some(Deriv::Value),
            1 => Some(Deriv::First),
            _ => None,
        }
    }
}

/// `v > -1`: the Pochhammer symbol `(v+1)_n` stays positive and the series
/// is well defined.
pub const SERIES_V_FLOOR: &str = "-1";
/// `v > -7/8`: the closed-form bounds have positive denominators.
pub const BOUNDS_V_FLOOR: &str = "-7/8";

pub fn series_v_floor() -> Rational {
    rational::int(-1)
}

pub fn bounds_v_floor() -> Rational {
    rational::ratio(-7, 8)
}

/// The pair `(alpha, v)` together with the partial-sum order `m`.
///
/// `alpha` and `v` are held exactly; binary64 copies are cached for the
/// floating-point evaluators.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    alpha: Rational,
    v: Rational,
    m: usize,
    alpha_f: f64,
    v_f: f64,
}

impl Params {
    /// Requires `alpha > 0` and `v > -1`.
    pub fn new(alpha: Rational, v: Rational, m: usize) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(DiniError::AlphaNotPositive(rational::display(&alpha)));
        }
        if v <= series_v_floor() {
            return Err(DiniError::OrderBelowFloor {
                v: rational::display(&v),
                floor: SERIES_V_FLOOR,
            });
        }
        let alpha_f = rational::to_f64(&alpha);
        let v_f = rational::to_f64(&v);
        Ok(Params {
            alpha,
            v,
            m,
            alpha_f,
            v_f,
        })
    }

    pub fn from_ratios(alpha: (i64, i64), v: (i64, i64), m: usize) -> Result<Self> {
        Self::new(rational::ratio(alpha.0, alpha.1), rational::ratio(v.0, v.1), m)
    }

    pub fn from_f64(alpha: f64, v: f64, m: usize) -> Result<Self> {
        Self::new(rational::from_f64(alpha)?, rational::from_f64(v)?, m)
    }

    pub fn with_m(&self, m: usize) -> Self {
        Params { m, ..self.clone() }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha_f
    }

    pub fn v_f64(&self) -> f64 {
        self.v_f
    }

    /// Whether the closed-form bounds apply (`v > -7/8`).
    pub fn bounds_admissible(&self) -> bool {
        self.v > bounds_v_floor()
    }

    pub fn label(&self) -> String {
        format!(
            "alpha={}, v={}, m={}",
            rational::display(&self.alpha),
            rational::display(&self.v),
            self.m
        )
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Params", 3)?;
        st.serialize_field("alpha", &ExactValue(self.alpha.clone()))?;
        st.serialize_field("v", &ExactValue(self.v.clone()))?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}
