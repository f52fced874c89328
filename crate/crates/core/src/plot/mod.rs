//! Image domains of F1..F6 as SVG curves or CSV point tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::dini::{corollary_fn, CorollaryFn, CorollaryId};
use crate::error::{DiniError, Result};
use crate::exec::{map_ordered, Engine};
use crate::params::ComplexPoint;
use crate::rational::{self, Rational};
use crate::sampling::DiskSampling;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFlag {
    Ok,
    DenominatorZero,
    NonFinite,
    EvalError,
}

impl PointFlag {
    /// CSV spelling; unflagged rows have an empty field.
    pub fn as_str(self) -> &'static str {
        match self {
            PointFlag::Ok => "",
            PointFlag::DenominatorZero => "denominator_zero",
            PointFlag::NonFinite => "non_finite",
            PointFlag::EvalError => "eval_error",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "" => PointFlag::Ok,
            "denominator_zero" => PointFlag::DenominatorZero,
            "non_finite" => PointFlag::NonFinite,
            "eval_error" => PointFlag::EvalError,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPoint {
    pub ring: usize,
    pub source: ComplexPoint,
    /// NaN when flagged.
    pub image: ComplexPoint,
    pub flag: PointFlag,
}

#[derive(Debug, Clone)]
pub struct ImageGrid {
    pub spec: DiskSampling,
    pub target: CorollaryId,
    pub claimed_bound: Rational,
    pub points: Vec<MappedPoint>,
}

impl ImageGrid {
    pub fn flagged(&self) -> usize {
        self.points.iter().filter(|p| p.flag != PointFlag::Ok).count()
    }

    /// Smallest `Re` over unflagged images and where it occurs; the first
    /// point in grid order wins ties.
    pub fn min_real_part(&self) -> Option<(f64, ComplexPoint)> {
        let mut best: Option<(f64, ComplexPoint)> = None;
        for p in self.points.iter().filter(|p| p.flag == PointFlag::Ok) {
            if best.is_none_or(|(b, _)| p.image.re < b) {
                best = Some((p.image.re, p.source));
            }
        }
        best
    }
}

/// Maps every sample of `spec` through `f`. Singular or non-finite points
/// are kept and flagged.
pub fn image_domain(f: &CorollaryFn, spec: &DiskSampling, engine: &Engine) -> Result<ImageGrid> {
    spec.validate()?;
    let samples = spec.samples();
    let points = map_ordered(engine.exec, &samples, |s| {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let (image, flag) = match corollary_fn(f, s.z) {
            Ok(w) if w.re.is_finite() && w.im.is_finite() => (w, PointFlag::Ok),
            Ok(_) => (nan, PointFlag::NonFinite),
            Err(DiniError::DenominatorZero { .. }) => (nan, PointFlag::DenominatorZero),
            Err(_) => (nan, PointFlag::EvalError),
        };
        MappedPoint {
            ring: s.ring,
            source: s.z,
            image,
            flag,
        }
    });
    Ok(ImageGrid {
        spec: spec.clone(),
        target: f.id,
        claimed_bound: f.claimed_bound(),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Svg,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub radius: f64,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotDocument {
    pub title: String,
    pub curves: Vec<Curve>,
    pub scatter: Vec<(f64, f64)>,
    pub bound: f64,
    pub bound_label: String,
    pub viewport: Viewport,
}

const CANVAS: f64 = 640.0;
const PAD: f64 = 0.05;

impl PlotDocument {
    /// One closed curve per ring of the grid. Flagged points break nothing;
    /// they are left out of the drawing but stay in the CSV.
    pub fn from_grid(grid: &ImageGrid, scatter: bool) -> Self {
        let radii = grid.spec.ring_radii();
        let mut curves: Vec<Curve> = radii
            .iter()
            .map(|r| Curve {
                radius: *r,
                points: Vec::new(),
            })
            .collect();
        for p in grid.points.iter().filter(|p| p.flag == PointFlag::Ok) {
            curves[p.ring].points.push((p.image.re, p.image.im));
        }
        curves.retain(|c| !c.points.is_empty());
        let scatter = if scatter {
            curves.iter().flat_map(|c| c.points.iter().copied()).collect()
        } else {
            Vec::new()
        };
        let bound = rational::to_f64(&grid.claimed_bound);
        let viewport = fit_viewport(&curves, bound);
        PlotDocument {
            title: format!("Image of the disk under {}", grid.target.name()),
            curves,
            scatter,
            bound,
            bound_label: format!("Re = {}", rational::display(&grid.claimed_bound)),
            viewport,
        }
    }

    pub fn to_svg(&self) -> String {
        let vp = self.viewport;
        let scale = CANVAS / (vp.x_max - vp.x_min).max(vp.y_max - vp.y_min);
        let width = (vp.x_max - vp.x_min) * scale;
        let height = (vp.y_max - vp.y_min) * scale;
        let px = |x: f64, y: f64| ((x - vp.x_min) * scale, (vp.y_max - y) * scale);

        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
        );
        let _ = writeln!(s, "  <title>{}</title>", self.title);
        let _ = writeln!(s, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

        if vp.y_min < 0.0 && vp.y_max > 0.0 {
            let (x0, y0) = px(vp.x_min, 0.0);
            let (x1, _) = px(vp.x_max, 0.0);
            let _ = writeln!(
                s,
                "  <line class=\"axis\" x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x1:.3}\" y2=\"{y0:.3}\" stroke=\"#bbb\" stroke-width=\"0.5\"/>"
            );
        }
        if vp.x_min < 0.0 && vp.x_max > 0.0 {
            let (x0, y0) = px(0.0, vp.y_min);
            let (_, y1) = px(0.0, vp.y_max);
            let _ = writeln!(
                s,
                "  <line class=\"axis\" x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x0:.3}\" y2=\"{y1:.3}\" stroke=\"#bbb\" stroke-width=\"0.5\"/>"
            );
        }

        for c in &self.curves {
            let mut pts = String::new();
            for (i, (x, y)) in c.points.iter().chain(c.points.first()).enumerate() {
                let (a, b) = px(*x, *y);
                if i > 0 {
                    pts.push(' ');
                }
                let _ = write!(pts, "{a:.3},{b:.3}");
            }
            let _ = writeln!(
                s,
                "  <polyline class=\"curve\" data-radius=\"{}\" points=\"{pts}\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1\"/>",
                c.radius
            );
        }
        for (x, y) in &self.scatter {
            let (a, b) = px(*x, *y);
            let _ = writeln!(
                s,
                "  <circle class=\"sample\" cx=\"{a:.3}\" cy=\"{b:.3}\" r=\"0.8\" fill=\"#555\"/>"
            );
        }

        let (bx, by0) = px(self.bound, vp.y_min);
        let (_, by1) = px(self.bound, vp.y_max);
        let _ = writeln!(
            s,
            "  <line class=\"bound\" x1=\"{bx:.3}\" y1=\"{by0:.3}\" x2=\"{bx:.3}\" y2=\"{by1:.3}\" stroke=\"#c0392b\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>"
        );
        let _ = writeln!(
            s,
            "  <text x=\"{:.3}\" y=\"14\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c0392b\">{}</text>",
            bx + 4.0,
            self.bound_label
        );
        s.push_str("</svg>\n");
        s
    }
}

fn fit_viewport(curves: &[Curve], bound: f64) -> Viewport {
    let mut x_min = bound;
    let mut x_max = bound;
    let mut y_min = 0.0f64;
    let mut y_max = 0.0f64;
    for (x, y) in curves.iter().flat_map(|c| c.points.iter()) {
        x_min = x_min.min(*x);
        x_max = x_max.max(*x);
        y_min = y_min.min(*y);
        y_max = y_max.max(*y);
    }
    if x_max - x_min < 1e-9 {
        x_min -= 1.0;
        x_max += 1.0;
    }
    if y_max - y_min < 1e-9 {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let dx = PAD * (x_max - x_min);
    let dy = PAD * (y_max - y_min);
    Viewport {
        x_min: x_min - dx,
        x_max: x_max + dx,
        y_min: y_min - dy,
        y_max: y_max + dy,
    }
}

pub const CSV_HEADER: [&str; 5] = ["src_re", "src_im", "img_re", "img_im", "flag"];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DiniError + '_ {
    move |source| DiniError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> DiniError + '_ {
    move |source| DiniError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_csv(grid: &ImageGrid, path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(csv_err(path))?;
    w.write_record(CSV_HEADER).map_err(csv_err(path))?;
    for p in &grid.points {
        w.write_record([
            num(p.source.re),
            num(p.source.im),
            num(p.image.re),
            num(p.image.im),
            p.flag.as_str().to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// One parsed CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub source: ComplexPoint,
    pub image: ComplexPoint,
    pub flag: PointFlag,
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err(path))?;
        let field = |i: usize| -> Result<f64> {
            let s = rec.get(i).unwrap_or("");
            s.parse().map_err(|_| DiniError::Parse {
                what: "CSV number",
                input: s.to_string(),
            })
        };
        let flag_s = rec.get(4).unwrap_or("");
        let flag = PointFlag::parse(flag_s).ok_or_else(|| DiniError::Parse {
            what: "CSV flag",
            input: flag_s.to_string(),
        })?;
        out.push(CsvRow {
            source: Complex64::new(field(0)?, field(1)?),
            image: Complex64::new(field(2)?, field(3)?),
            flag,
        });
    }
    Ok(out)
}

pub fn write_svg(grid: &ImageGrid, path: &Path, scatter: bool) -> Result<()> {
    fs::write(path, PlotDocument::from_grid(grid, scatter).to_svg()).map_err(io_err(path))
}

/// Writes `grid` to `path` in the given format.
pub fn emit(grid: &ImageGrid, format: Format, path: &Path) -> Result<()> {
    match format {
        Format::Svg => write_svg(grid, path, false),
        Format::Csv => write_csv(grid, path),
    }
}

/// `dir/<name>.<ext>` for a function id.
pub fn default_path(dir: &Path, id: CorollaryId, format: Format) -> PathBuf {
    dir.join(format!("{}.{}", id.name(), format.extension()))
}
