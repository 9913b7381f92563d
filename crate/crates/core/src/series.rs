//! The atomic inputs: single prediction records and per-cell fold series.
//!
//! A [`FoldSeries`] holds the aligned label/probability vectors of one
//! (dataset, fold, model) cell. Every metric and calibrator consumes this
//! type, so its constructor is the single validation point for the whole
//! pipeline.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// One observed prediction: `(dataset, fold, model, label, probability)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub dataset_id: String,
    pub fold_id: u32,
    pub model_id: String,
    /// Binary outcome, 0 or 1.
    pub y: u8,
    /// Predicted probability of the positive class, in `[0, 1]`.
    pub p: f64,
}

/// Key of one (dataset, fold, model) cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub dataset_id: String,
    pub fold_id: u32,
    pub model_id: String,
}

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series is empty")]
    Empty,
    #[error("labels and probabilities differ in length ({labels} vs {probs})")]
    LengthMismatch { labels: usize, probs: usize },
    #[error("label at index {index} is {value}, expected 0 or 1")]
    InvalidLabel { index: usize, value: u8 },
    #[error("probability at index {index} is {value}, expected a finite value in [0, 1]")]
    InvalidProbability { index: usize, value: f64 },
}

/// Aligned label/probability vectors for one (dataset, fold, model) cell.
///
/// Invariants (enforced at construction): equal lengths, N >= 1, every
/// label in {0, 1}, every probability finite and in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldSeries {
    labels: Vec<u8>,
    probs: Vec<f64>,
}

impl FoldSeries {
    pub fn new(labels: Vec<u8>, probs: Vec<f64>) -> Result<Self, SeriesError> {
        if labels.len() != probs.len() {
            return Err(SeriesError::LengthMismatch {
                labels: labels.len(),
                probs: probs.len(),
            });
        }
        if labels.is_empty() {
            return Err(SeriesError::Empty);
        }
        for (index, &value) in labels.iter().enumerate() {
            if value > 1 {
                return Err(SeriesError::InvalidLabel { index, value });
            }
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(SeriesError::InvalidProbability { index, value });
            }
        }
        Ok(Self { labels, probs })
    }

    /// Builds a series from `(prob, label)` pairs.
    pub fn from_pairs(pairs: &[(f64, u8)]) -> Result<Self, SeriesError> {
        let (probs, labels) = pairs.iter().map(|&(p, y)| (p, y)).unzip();
        Self::new(labels, probs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // N >= 1 by construction
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, u8)> + '_ {
        self.probs.iter().copied().zip(self.labels.iter().copied())
    }

    /// Count of positive labels.
    pub fn positives(&self) -> usize {
        self.labels.iter().filter(|&&y| y == 1).count()
    }

    /// Count of negative labels.
    pub fn negatives(&self) -> usize {
        self.len() - self.positives()
    }

    /// Mean of the labels (the empirical positive rate).
    pub fn base_rate(&self) -> f64 {
        self.positives() as f64 / self.len() as f64
    }

    /// True when both classes are represented.
    pub fn has_both_classes(&self) -> bool {
        let pos = self.positives();
        pos > 0 && pos < self.len()
    }

    /// Returns a copy with the given probabilities substituted, keeping labels.
    pub fn with_probs(&self, probs: Vec<f64>) -> Result<Self, SeriesError> {
        Self::new(self.labels.clone(), probs)
    }
}

/// Groups prediction records into per-cell series, keyed deterministically.
///
/// Record order within a cell is preserved.
pub fn group_records(
    records: impl IntoIterator<Item = PredictionRecord>,
) -> Result<BTreeMap<CellKey, FoldSeries>, SeriesError> {
    let mut buckets: BTreeMap<CellKey, (Vec<u8>, Vec<f64>)> = BTreeMap::new();
    for record in records {
        let key = CellKey {
            dataset_id: record.dataset_id,
            fold_id: record.fold_id,
            model_id: record.model_id,
        };
        let bucket = buckets.entry(key).or_default();
        bucket.0.push(record.y);
        bucket.1.push(record.p);
    }
    buckets
        .into_iter()
        .map(|(key, (labels, probs))| FoldSeries::new(labels, probs).map(|s| (key, s)))
        .collect()
}
