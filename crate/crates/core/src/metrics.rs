//! Evaluation measures: accuracy from hard predictions, ROC curve and
//! AUC from continuous scores. Class 1 is the positive class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts of the four prediction outcomes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub true_negatives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.true_positives + self.true_negatives + self.false_positives + self.false_negatives
    }

    pub fn accuracy(&self) -> f64 {
        (self.true_positives + self.true_negatives) as f64 / self.total() as f64
    }

    /// tp / (tp + fn).
    pub fn true_positive_rate(&self) -> f64 {
        self.true_positives as f64 / (self.true_positives + self.false_negatives) as f64
    }

    /// fp / (fp + tn).
    pub fn false_positive_rate(&self) -> f64 {
        self.false_positives as f64 / (self.false_positives + self.true_negatives) as f64
    }
}

/// Tallies predictions against ground truth.
pub fn confusion_counts(predictions: &[u8], truth: &[u8]) -> Result<ConfusionCounts> {
    if predictions.len() != truth.len() {
        return Err(Error::InvalidParam(format!(
            "{} predictions for {} truth labels",
            predictions.len(),
            truth.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::InvalidParam("no samples to evaluate".into()));
    }
    let mut counts = ConfusionCounts::default();
    for (&p, &t) in predictions.iter().zip(truth) {
        match (p, t) {
            (1, 1) => counts.true_positives += 1,
            (0, 0) => counts.true_negatives += 1,
            (1, 0) => counts.false_positives += 1,
            (0, 1) => counts.false_negatives += 1,
            _ => return Err(Error::InvalidParam("labels must be 0 or 1".into())),
        }
    }
    Ok(counts)
}

/// Fraction of correct predictions, (tp+tn)/(tp+fp+tn+fn).
pub fn accuracy(predictions: &[u8], truth: &[u8]) -> Result<f64> {
    Ok(confusion_counts(predictions, truth)?.accuracy())
}

/// One operating point of a ROC curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

/// ROC curve from a descending-score threshold sweep plus its area.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

impl RocCurve {
    /// Two-column CSV (`fpr,tpr`), one row per curve point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("fpr,tpr\n");
        for p in &self.points {
            out.push_str(&format!("{:?},{:?}\n", p.fpr, p.tpr));
        }
        out
    }
}

/// Builds the ROC curve by sweeping a threshold down over the distinct
/// score values; tied scores form a single step (a diagonal segment).
/// The area is accumulated with integer trapezoids, so it equals the
/// Mann-Whitney statistic (concordant + half of tied pairs over P*N)
/// up to one final division.
pub fn roc_auc(scores: &[f64], truth: &[u8]) -> Result<RocCurve> {
    if scores.len() != truth.len() {
        return Err(Error::InvalidParam(format!(
            "{} scores for {} truth labels",
            scores.len(),
            truth.len()
        )));
    }
    let positives = truth.iter().filter(|&&t| t == 1).count();
    let negatives = truth.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]));

    let mut points = vec![RocPoint { fpr: 0.0, tpr: 0.0 }];
    let mut tp: u64 = 0;
    let mut fp: u64 = 0;
    // Twice the area in units of (1/P)*(1/N); integer-exact.
    let mut twice_area: u64 = 0;

    let mut idx = 0;
    while idx < order.len() {
        let threshold = scores[order[idx]];
        let mut delta_tp: u64 = 0;
        let mut delta_fp: u64 = 0;
        while idx < order.len() && scores[order[idx]] == threshold {
            if truth[order[idx]] == 1 {
                delta_tp += 1;
            } else {
                delta_fp += 1;
            }
            idx += 1;
        }
        twice_area += delta_fp * (2 * tp + delta_tp);
        tp += delta_tp;
        fp += delta_fp;
        points.push(RocPoint {
            fpr: fp as f64 / negatives as f64,
            tpr: tp as f64 / positives as f64,
        });
    }

    let auc = twice_area as f64 / (2.0 * positives as f64 * negatives as f64);
    Ok(RocCurve { points, auc })
}
