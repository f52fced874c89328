// Per-point maps over sample grids. With the `parallel` feature turned off,
// `Exec::Parallel` runs sequentially; results are identical either way since
// every point is evaluated independently and collected in grid order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dini::{DiniSeries, SeriesOptions};
use crate::error::Result;
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether `Parallel` actually uses worker threads in this build.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Execution mode plus the series settings used for every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Engine {
    pub exec: Exec,
    pub series: SeriesOptions,
}

impl Engine {
    pub fn sequential() -> Self {
        Engine {
            exec: Exec::Sequential,
            ..Default::default()
        }
    }

    pub fn series_for(&self, params: &Params) -> Result<DiniSeries> {
        DiniSeries::new(params, self.series)
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_ordered<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Exec::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Exec::Parallel => items.iter().map(f).collect(),
    }
}
