//! Diagnostics for binary probabilistic classifiers on two axes —
//! calibration (Spiegelhalter Z) and discrimination (AUC-ROC) — with
//! quadrant archetypes, post-hoc calibrators, rank aggregation, and the
//! statistical machinery to compare models across dataset/fold grids.
//!
//! The pipeline: parse prediction logs ([`report`]) into per-cell series
//! ([`series`]), score them ([`metrics`]), aggregate expected ranks and
//! assign quadrants ([`matrix`]), test differences ([`stats`]), optionally
//! recalibrate ([`calibrators`]), and emit JSON reports plus an SVG scatter
//! figure. [`synth`] generates seeded cohorts with known ground truth for
//! end-to-end validation.

pub mod calibrators;
pub mod cli;
pub mod matrix;
pub mod metrics;
pub mod numeric;
pub mod report;
pub mod series;
pub mod stats;
pub mod synth;

pub use metrics::{BinningScheme, DecompositionResult, ZResult};
pub use series::{CellKey, FoldSeries, PredictionRecord};
