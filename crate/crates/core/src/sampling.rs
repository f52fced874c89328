//! Deterministic polar grids on the open unit disk.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DiniError, Result};
use crate::params::ComplexPoint;

/// Largest admissible sampling radius; the unit circle itself is never sampled.
pub const MAX_RADIUS: f64 = 0.999;

/// Radius of the extra ring added by `includes_zero_neighborhood`.
pub const ZERO_RING_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialLayout {
    /// `r_i = r_max * i / count` for `i = 1..=count`.
    Uniform { count: usize, r_max: f64 },
    /// Explicit radii, sorted ascending on construction. A zero radius
    /// contributes the single point `z = 0`.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskSampling {
    pub radii: RadialLayout,
    pub angles: usize,
    pub includes_zero_neighborhood: bool,
}

/// One grid point with its ring and angle indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub ring: usize,
    pub angle: usize,
    pub z: ComplexPoint,
}

impl Default for DiskSampling {
    /// 64 radii up to 0.999 by 720 angles.
    fn default() -> Self {
        DiskSampling {
            radii: RadialLayout::Uniform {
                count: 64,
                r_max: MAX_RADIUS,
            },
            angles: 720,
            includes_zero_neighborhood: false,
        }
    }
}

impl DiskSampling {
    pub fn uniform(count: usize, r_max: f64, angles: usize) -> Result<Self> {
        let s = DiskSampling {
            radii: RadialLayout::Uniform { count, r_max },
            angles,
            includes_zero_neighborhood: false,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn explicit(mut radii: Vec<f64>, angles: usize) -> Result<Self> {
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        let s = DiskSampling {
            radii: RadialLayout::Explicit(radii),
            angles,
            includes_zero_neighborhood: false,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_zero_neighborhood(mut self, on: bool) -> Self {
        self.includes_zero_neighborhood = on;
        self
    }

    /// The boundary circles drawn for image-domain figures:
    /// radii 0.25, 0.5, 0.75, 0.999 with 200 angles each.
    pub fn figure_default() -> Self {
        Self::explicit(vec![0.25, 0.5, 0.75, MAX_RADIUS], 200).expect("valid")
    }

    /// Fixed 10 x 10 grid with `|z| <= 0.9`, used for representation cross-checks.
    pub fn cross_check() -> Self {
        Self::uniform(10, 0.9, 10).expect("valid")
    }

    /// Twice the radial and angular resolution. The refined grid contains
    /// every point of `self` bit for bit.
    pub fn refined(&self) -> Self {
        let radii = match &self.radii {
            RadialLayout::Uniform { count, r_max } => RadialLayout::Uniform {
                count: 2 * count,
                r_max: *r_max,
            },
            RadialLayout::Explicit(rs) => {
                let mut out = rs.clone();
                for w in rs.windows(2) {
                    out.push(0.5 * (w[0] + w[1]));
                }
                out.sort_by(f64::total_cmp);
                RadialLayout::Explicit(out)
            }
        };
        DiskSampling {
            radii,
            angles: 2 * self.angles,
            includes_zero_neighborhood: self.includes_zero_neighborhood,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DiniError::InvalidSampling(msg));
        if self.angles == 0 {
            return bad("angle count must be positive".into());
        }
        match &self.radii {
            RadialLayout::Uniform { count, r_max } => {
                if *count == 0 {
                    return bad("radius count must be positive".into());
                }
                if !(*r_max > 0.0 && *r_max <= MAX_RADIUS) {
                    return bad(format!("r_max = {r_max} must lie in (0, {MAX_RADIUS}]"));
                }
            }
            RadialLayout::Explicit(rs) => {
                if rs.is_empty() {
                    return bad("no radii given".into());
                }
                if let Some(r) = rs.iter().find(|r| !(**r >= 0.0 && **r <= MAX_RADIUS)) {
                    return bad(format!("radius {r} must lie in [0, {MAX_RADIUS}]"));
                }
            }
        }
        Ok(())
    }

    /// Ring radii in ascending order, including the zero-neighborhood ring.
    pub fn ring_radii(&self) -> Vec<f64> {
        let mut out = Vec::new();
        if self.includes_zero_neighborhood {
            out.push(ZERO_RING_RADIUS);
        }
        match &self.radii {
            RadialLayout::Uniform { count, r_max } => {
                out.extend((1..=*count).map(|i| r_max * i as f64 / *count as f64));
            }
            RadialLayout::Explicit(rs) => out.extend(rs.iter().copied()),
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Grid points ordered by ring, then by angle; this order is the
    /// lexicographic `(r, theta)` order used for tie-breaking.
    pub fn samples(&self) -> Vec<Sample> {
        let n = self.angles;
        let mut out = Vec::with_capacity(self.len());
        for (ring, r) in self.ring_radii().into_iter().enumerate() {
            if r == 0.0 {
                out.push(Sample {
                    ring,
                    angle: 0,
                    z: Complex64::new(0.0, 0.0),
                });
                continue;
            }
            for j in 0..n {
                out.push(Sample {
                    ring,
                    angle: j,
                    z: polar_point(r, j, n),
                });
            }
        }
        out
    }

    pub fn points(&self) -> Vec<ComplexPoint> {
        self.samples().into_iter().map(|s| s.z).collect()
    }

    pub fn len(&self) -> usize {
        self.ring_radii()
            .iter()
            .map(|r| if *r == 0.0 { 1 } else { self.angles })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `r e^{2 pi i j / n}`, built so that the grid is exactly symmetric under
/// conjugation and quarter turns land on the axes.
fn polar_point(r: f64, j: usize, n: usize) -> Complex64 {
    if 2 * j > n {
        return polar_point(r, n - j, n).conj();
    }
    if j == 0 {
        Complex64::new(r, 0.0)
    } else if 2 * j == n {
        Complex64::new(-r, 0.0)
    } else if 4 * j == n {
        Complex64::new(0.0, r)
    } else {
        let theta = TAU * j as f64 / n as f64;
        Complex64::new(r * theta.cos(), r * theta.sin())
    }
}

/// Validated sampling, then its points.
pub fn sample_disk(spec: &DiskSampling) -> Result<Vec<ComplexPoint>> {
    spec.validate()?;
    Ok(spec.points())
}
