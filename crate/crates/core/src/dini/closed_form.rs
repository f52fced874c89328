//! Elementary closed forms of the three worked `(alpha, v)` pairs.
//!
//! With `x = sqrt z` (principal branch) and the half-integer Bessel
//! functions, the normalized Dini functions reduce to
//!
//! * `w_{1,1/2}(z)   = z cos x`
//! * `w_{3/2,1/2}(z) = (x sin x + 2 z cos x) / 3`
//! * `w_{5,3/2}(z)   = 3 (z sin x - 2 x cos x + 2 sin x) / (5 x)`
//!
//! and the six image-domain functions are
//!
//! | id | function            | closed form                                 |
//! |----|---------------------|---------------------------------------------|
//! | F1 | `w'_{1,1/2}`        | `cos x - (x/2) sin x`                       |
//! | F2 | `1 / w'_{1,1/2}`    | reciprocal of F1                            |
//! | F3 | `w'_{3/2,1/2}`      | `sin x / (6x) + (5/6) cos x - (x/3) sin x`  |
//! | F4 | `1 / w'_{3/2,1/2}`  | reciprocal of F3                            |
//! | F5 | `(20/3) w_{5,3/2}/z`| `4 (z sin x - 2 x cos x + 2 sin x) / x^3`   |
//! | F6 | `(3/20) z/w_{5,3/2}`| reciprocal of F5                            |

use num_complex::Complex64;
use serde::Serialize;

use super::{DiniSeries, SeriesOptions};
use crate::bounds::{bound_value, BoundKind};
use crate::error::{DiniError, Result};
use crate::params::{ComplexPoint, Deriv, Params};
use crate::rational::{self, Rational};

/// Below this modulus the closed forms are replaced by the series quotient.
pub const NEAR_ORIGIN: f64 = 1e-2;

/// Denominators smaller than this in modulus are reported, not divided by.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

/// Which partial-sum ratio is examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RatioKind {
    /// `w / (w)_m`
    WOverPartial,
    /// `(w)_m / w`
    PartialOverW,
    /// `w' / (w)'_m`
    WpOverPartialp,
    /// `(w)'_m / w'`
    PartialpOverWp,
}

impl RatioKind {
    pub const ALL: [RatioKind; 4] = [
        RatioKind::WOverPartial,
        RatioKind::PartialOverW,
        RatioKind::WpOverPartialp,
        RatioKind::PartialpOverWp,
    ];

    pub fn bound_kind(self) -> BoundKind {
        match self {
            RatioKind::WOverPartial => BoundKind::ThmRatioW,
            RatioKind::PartialOverW => BoundKind::ThmRatioWInv,
            RatioKind::WpOverPartialp => BoundKind::ThmRatioWprime,
            RatioKind::PartialpOverWp => BoundKind::ThmRatioWprimeInv,
        }
    }

    pub fn from_bound_kind(kind: BoundKind) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.bound_kind() == kind)
    }

    pub fn deriv(self) -> Deriv {
        match self {
            RatioKind::WOverPartial | RatioKind::PartialOverW => Deriv::Value,
            RatioKind::WpOverPartialp | RatioKind::PartialpOverWp => Deriv::First,
        }
    }

    /// Whether the full function sits in the denominator.
    pub fn inverted(self) -> bool {
        matches!(self, RatioKind::PartialOverW | RatioKind::PartialpOverWp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CorollaryId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl CorollaryId {
    pub const ALL: [CorollaryId; 6] = [
        CorollaryId::F1,
        CorollaryId::F2,
        CorollaryId::F3,
        CorollaryId::F4,
        CorollaryId::F5,
        CorollaryId::F6,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Some(CorollaryId::F1),
            "f2" => Some(CorollaryId::F2),
            "f3" => Some(CorollaryId::F3),
            "f4" => Some(CorollaryId::F4),
            "f5" => Some(CorollaryId::F5),
            "f6" => Some(CorollaryId::F6),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorollaryId::F1 => "f1",
            CorollaryId::F2 => "f2",
            CorollaryId::F3 => "f3",
            CorollaryId::F4 => "f4",
            CorollaryId::F5 => "f5",
            CorollaryId::F6 => "f6",
        }
    }

    fn is_reciprocal(self) -> bool {
        matches!(self, CorollaryId::F2 | CorollaryId::F4 | CorollaryId::F6)
    }
}

/// One of the six explicit functions together with the parameters, ratio
/// and scale factor it stands for.
#[derive(Debug, Clone)]
pub struct CorollaryFn {
    pub id: CorollaryId,
    pub params: Params,
    pub kind: RatioKind,
    /// `F = scale * ratio`; `20/3` for F5 and `3/20` for F6, otherwise `1`.
    pub scale: Rational,
    series: DiniSeries,
}

impl CorollaryFn {
    pub fn new(id: CorollaryId) -> Self {
        let (alpha, v) = match id {
            CorollaryId::F1 | CorollaryId::F2 => ((1, 1), (1, 2)),
            CorollaryId::F3 | CorollaryId::F4 => ((3, 2), (1, 2)),
            CorollaryId::F5 | CorollaryId::F6 => ((5, 1), (3, 2)),
        };
        let kind = match id {
            CorollaryId::F1 | CorollaryId::F3 => RatioKind::WpOverPartialp,
            CorollaryId::F2 | CorollaryId::F4 => RatioKind::PartialpOverWp,
            CorollaryId::F5 => RatioKind::WOverPartial,
            CorollaryId::F6 => RatioKind::PartialOverW,
        };
        let scale = match id {
            CorollaryId::F5 => rational::ratio(20, 3),
            CorollaryId::F6 => rational::ratio(3, 20),
            _ => rational::int(1),
        };
        let params = Params::from_ratios(alpha, v, 0).expect("fixed parameters are admissible");
        let series = DiniSeries::new(&params, SeriesOptions::default()).expect("default options are valid");
        CorollaryFn {
            id,
            params,
            kind,
            scale,
            series,
        }
    }

    /// `scale * bound_value(kind)`, the exact lower bound claimed for `Re F`.
    pub fn claimed_bound(&self) -> Rational {
        let b = bound_value(self.kind.bound_kind(), self.params.alpha(), self.params.v())
            .expect("fixed parameters satisfy v > -7/8");
        &self.scale * b
    }

    /// Value of F1, F3 or F5 (the non-reciprocal member of each pair).
    fn direct(&self, z: ComplexPoint) -> Result<Complex64> {
        if z.norm() < NEAR_ORIGIN {
            let s = &self.series;
            let r = match self.id {
                CorollaryId::F1 | CorollaryId::F2 | CorollaryId::F3 | CorollaryId::F4 => s.eval(z, Deriv::First)?,
                CorollaryId::F5 | CorollaryId::F6 => s.eval_over_z(z)?,
            };
            return Ok(r.value * rational::to_f64(&self.scale_direct()));
        }
        let x = z.sqrt();
        let (sin, cos) = (x.sin(), x.cos());
        Ok(match self.id {
            CorollaryId::F1 | CorollaryId::F2 => cos - x * sin / 2.0,
            CorollaryId::F3 | CorollaryId::F4 => sin / (6.0 * x) + cos * (5.0 / 6.0) - x * sin / 3.0,
            CorollaryId::F5 | CorollaryId::F6 => 4.0 * (z * sin - 2.0 * x * cos + 2.0 * sin) / (z * x),
        })
    }

    /// Scale of the non-reciprocal member.
    fn scale_direct(&self) -> Rational {
        match self.id {
            CorollaryId::F5 | CorollaryId::F6 => rational::ratio(20, 3),
            _ => rational::int(1),
        }
    }
}

/// Evaluates `F1..F6` at `z`; removable singularities at the origin are
/// handled by the series quotient for `|z| < 1e-2`.
pub fn corollary_fn(f: &CorollaryFn, z: ComplexPoint) -> Result<ComplexPoint> {
    let d = f.direct(z)?;
    if !f.id.is_reciprocal() {
        return Ok(d);
    }
    if d.norm() < DENOMINATOR_FLOOR {
        return Err(DiniError::DenominatorZero {
            at: z,
            floor: DENOMINATOR_FLOOR,
        });
    }
    Ok(1.0 / d)
}
