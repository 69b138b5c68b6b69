//! Dataset assembly and cross-validation for the intention classifier.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::SkillRecord;
use crate::embed::EmbeddingProvider;
use crate::error::{Error, Result};

use super::features::{FeatureExtractor, FeatureVector};
use super::forest::{train_forest, ForestParams};
use super::{Label, LabeledUtterance, SystemCommandList};

/// Features for every labelled utterance; the skill is looked up by id.
pub fn build_dataset<P: EmbeddingProvider<f64> + ?Sized>(
    labeled: &[LabeledUtterance],
    catalog: &[SkillRecord],
    syscmds: &SystemCommandList,
    provider: &P,
) -> Result<Vec<(FeatureVector, Label)>> {
    let by_id: HashMap<&str, &SkillRecord> = catalog.iter().map(|s| (s.id.as_str(), s)).collect();
    let fx = FeatureExtractor::new(provider, syscmds, catalog);
    labeled
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let skill = by_id.get(l.skill_id.as_str()).ok_or_else(|| {
                Error::Training(format!("sample {} refers to unknown skill `{}`", i + 1, l.skill_id))
            })?;
            Ok((fx.extract(&l.utterance, l.prior_response.as_deref(), skill), l.label))
        })
        .collect()
}

/// Counts with switch as the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub true_positive: usize,
    pub false_positive: usize,
    pub true_negative: usize,
    pub false_negative: usize,
}

impl Confusion {
    pub fn record(&mut self, truth: Label, predicted: Label) {
        match (truth, predicted) {
            (Label::Switch, Label::Switch) => self.true_positive += 1,
            (Label::NoSwitch, Label::Switch) => self.false_positive += 1,
            (Label::NoSwitch, Label::NoSwitch) => self.true_negative += 1,
            (Label::Switch, Label::NoSwitch) => self.false_negative += 1,
        }
    }

    pub fn merge(&mut self, other: &Confusion) {
        self.true_positive += other.true_positive;
        self.false_positive += other.false_positive;
        self.true_negative += other.true_negative;
        self.false_negative += other.false_negative;
    }

    pub fn total(&self) -> usize {
        self.true_positive + self.false_positive + self.true_negative + self.false_negative
    }

    fn ratio(num: usize, den: usize) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    pub fn precision(&self) -> f64 {
        Self::ratio(self.true_positive, self.true_positive + self.false_positive)
    }

    pub fn recall(&self) -> f64 {
        Self::ratio(self.true_positive, self.true_positive + self.false_negative)
    }

    pub fn accuracy(&self) -> f64 {
        Self::ratio(self.true_positive + self.true_negative, self.total())
    }

    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub folds: usize,
    pub seed: u64,
    pub samples: usize,
    pub confusion: Confusion,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub per_fold: Vec<Confusion>,
}

/// Stratified k-fold cross-validation. Samples are shuffled per class with
/// `seed` and dealt round-robin into folds; fold `i` trains with `seed + i`.
pub fn cross_validate(
    data: &[(FeatureVector, Label)],
    folds: usize,
    params: &ForestParams,
    seed: u64,
) -> Result<CvReport> {
    if folds < 2 {
        return Err(Error::Training(format!("need at least 2 folds, got {folds}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; data.len()];
    let mut next = 0;
    for label in [Label::NoSwitch, Label::Switch] {
        let mut idx: Vec<usize> = (0..data.len()).filter(|&i| data[i].1 == label).collect();
        if idx.len() < folds {
            return Err(Error::Training(format!(
                "{} `{label:?}` samples cannot fill {folds} folds",
                idx.len()
            )));
        }
        idx.shuffle(&mut rng);
        for i in idx {
            assignment[i] = next % folds;
            next += 1;
        }
    }

    let mut total = Confusion::default();
    let mut per_fold = Vec::with_capacity(folds);
    for fold in 0..folds {
        let train: Vec<_> = (0..data.len())
            .filter(|&i| assignment[i] != fold)
            .map(|i| data[i])
            .collect();
        let forest = train_forest(&train, params, seed.wrapping_add(fold as u64))?;
        let mut c = Confusion::default();
        for i in (0..data.len()).filter(|&i| assignment[i] == fold) {
            c.record(data[i].1, forest.classify(&data[i].0).label);
        }
        total.merge(&c);
        per_fold.push(c);
    }
    Ok(CvReport {
        folds,
        seed,
        samples: data.len(),
        confusion: total,
        precision: total.precision(),
        recall: total.recall(),
        f1: total.f1(),
        accuracy: total.accuracy(),
        per_fold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vma::features::FEATURE_COUNT;

    #[test]
    fn confusion_metrics() {
        let mut c = Confusion::default();
        c.record(Label::Switch, Label::Switch);
        c.record(Label::Switch, Label::Switch);
        c.record(Label::Switch, Label::NoSwitch);
        c.record(Label::NoSwitch, Label::Switch);
        c.record(Label::NoSwitch, Label::NoSwitch);
        assert!((c.precision() - 2.0 / 3.0).abs() < 1e-12);
        assert!((c.recall() - 2.0 / 3.0).abs() < 1e-12);
        assert!((c.f1() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(c.total(), 5);
        assert_eq!(Confusion::default().precision(), 0.0);
    }

    #[test]
    fn cv_on_separable_data() {
        let data: Vec<_> = (0..60)
            .map(|i| {
                let mut v = [0.0; FEATURE_COUNT];
                let l = if i % 2 == 0 { Label::Switch } else { Label::NoSwitch };
                v[0] = if l == Label::Switch { 0.9 } else { 0.1 } + (i as f64) * 1e-3;
                (FeatureVector(v), l)
            })
            .collect();
        let p = ForestParams { trees: 10, ..Default::default() };
        let r = cross_validate(&data, 5, &p, 42).unwrap();
        assert_eq!(r.samples, 60);
        assert_eq!(r.confusion.total(), 60);
        assert_eq!(r.precision, 1.0);
        assert_eq!(r.recall, 1.0);
        assert_eq!(r, cross_validate(&data, 5, &p, 42).unwrap());
        assert!(cross_validate(&data, 1, &p, 42).is_err());
    }
}
