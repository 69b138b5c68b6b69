//! Random forest of CART trees over [`FeatureVector`]s.
//!
//! Each tree is grown on a bootstrap sample with Gini impurity, drawing a
//! random subset of features at every split, until nodes are pure or a split
//! would leave a child smaller than `min_leaf`. Tree `i` uses its own RNG
//! seeded with `seed + i`, so training is deterministic regardless of how
//! trees are scheduled across threads.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::features::{FeatureVector, FEATURE_COUNT};
use super::Label;

pub const FOREST_FORMAT: &str = "skillvet-forest";
pub const FOREST_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestParams {
    pub trees: usize,
    /// Features drawn per split.
    pub max_features: usize,
    pub min_leaf: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            trees: 100,
            // ceil(sqrt(10))
            max_features: 4,
            min_leaf: 2,
            max_depth: None,
        }
    }
}

impl ForestParams {
    pub fn validate(&self) -> Result<()> {
        if self.trees == 0 {
            return Err(Error::Training("forest needs at least one tree".into()));
        }
        if !(1..=FEATURE_COUNT).contains(&self.max_features) {
            return Err(Error::Training(format!(
                "max_features {} outside [1, {FEATURE_COUNT}]",
                self.max_features
            )));
        }
        if self.min_leaf == 0 {
            return Err(Error::Training("min_leaf must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    Leaf {
        /// Training samples per class, indexed by [`Label::index`].
        counts: [u32; 2],
    },
    Split {
        feature: usize,
        /// Samples with `value <= threshold` go left.
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    /// Node 0 is the root; children always have larger indices.
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf_for(&self, x: &FeatureVector) -> [u32; 2] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { counts } => return *counts,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    i = if x.get(*feature) <= *threshold { *left } else { *right };
                }
            }
        }
    }

    /// Majority class of the reached leaf; ties go to no-switch.
    pub fn predict(&self, x: &FeatureVector) -> Label {
        let [no, yes] = self.leaf_for(x);
        if yes > no {
            Label::Switch
        } else {
            Label::NoSwitch
        }
    }

    fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Model("empty tree".into()));
        }
        let mut referenced = vec![false; self.nodes.len()];
        referenced[0] = true;
        for (i, node) in self.nodes.iter().enumerate() {
            if let Node::Split {
                feature,
                threshold,
                left,
                right,
            } = node
            {
                if *feature >= FEATURE_COUNT {
                    return Err(Error::Model(format!("split on feature {feature}")));
                }
                if !threshold.is_finite() {
                    return Err(Error::Model("non-finite split threshold".into()));
                }
                for &c in [left, right] {
                    if c <= i || c >= self.nodes.len() || referenced[c] {
                        return Err(Error::Model(format!("node {i} has invalid child {c}")));
                    }
                    referenced[c] = true;
                }
            }
        }
        if referenced.iter().any(|r| !r) {
            return Err(Error::Model("unreachable node".into()));
        }
        Ok(())
    }
}

/// Outcome of a forest vote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vote {
    pub label: Label,
    /// Fraction of trees voting switch.
    pub switch_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub format: String,
    pub version: u32,
    pub feature_count: usize,
    pub params: ForestParams,
    pub seed: u64,
    pub trees: Vec<Tree>,
}

impl Forest {
    pub fn from_trees(trees: Vec<Tree>, params: ForestParams, seed: u64) -> Self {
        Forest {
            format: FOREST_FORMAT.into(),
            version: FOREST_VERSION,
            feature_count: FEATURE_COUNT,
            params,
            seed,
            trees,
        }
    }

    /// Majority vote; a tie is no-switch.
    pub fn classify(&self, x: &FeatureVector) -> Vote {
        let yes = self
            .trees
            .iter()
            .filter(|t| t.predict(x) == Label::Switch)
            .count();
        let label = if 2 * yes > self.trees.len() {
            Label::Switch
        } else {
            Label::NoSwitch
        };
        Vote {
            label,
            switch_fraction: yes as f64 / self.trees.len() as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.format != FOREST_FORMAT || self.version != FOREST_VERSION {
            return Err(Error::Model(format!(
                "unsupported model {} v{}",
                self.format, self.version
            )));
        }
        if self.feature_count != FEATURE_COUNT {
            return Err(Error::Model(format!(
                "model expects {} features, this build has {FEATURE_COUNT}",
                self.feature_count
            )));
        }
        if self.trees.is_empty() {
            return Err(Error::Model("forest has no trees".into()));
        }
        self.trees.iter().try_for_each(Tree::validate)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("forest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Forest = serde_json::from_str(text)?;
        f.validate()?;
        Ok(f)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_json(&fs::read_to_string(path).map_err(|e| Error::io(path, e))?)
    }
}

/// Convenience wrapper over [`Forest::classify`].
pub fn uic_classify(fv: &FeatureVector, forest: &Forest) -> Vote {
    forest.classify(fv)
}

pub fn train_forest(
    data: &[(FeatureVector, Label)],
    params: &ForestParams,
    seed: u64,
) -> Result<Forest> {
    params.validate()?;
    if data.is_empty() {
        return Err(Error::Training("empty dataset".into()));
    }
    let positives = data.iter().filter(|(_, l)| *l == Label::Switch).count();
    if positives == 0 || positives == data.len() {
        return Err(Error::Training("dataset has a single label".into()));
    }
    if let Some((i, _)) = data.iter().enumerate().find(|(_, (x, _))| x.0.iter().any(|v| !v.is_finite())) {
        return Err(Error::Training(format!("sample {i} has a non-finite feature")));
    }
    let trees = (0..params.trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let sample: Vec<usize> = (0..data.len()).map(|_| rng.gen_range(0..data.len())).collect();
            grow_tree(data, sample, params, &mut rng)
        })
        .collect();
    Ok(Forest::from_trees(trees, *params, seed))
}

fn class_counts(data: &[(FeatureVector, Label)], idx: &[usize]) -> [u32; 2] {
    let mut c = [0u32; 2];
    for &i in idx {
        c[data[i].1.index()] += 1;
    }
    c
}

fn gini(c: [u32; 2]) -> f64 {
    let n = f64::from(c[0] + c[1]);
    if n == 0.0 {
        return 0.0;
    }
    let p = f64::from(c[0]) / n;
    let q = f64::from(c[1]) / n;
    1.0 - p * p - q * q
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    score: f64,
}

fn best_split_on(
    data: &[(FeatureVector, Label)],
    idx: &[usize],
    feature: usize,
    min_leaf: usize,
) -> Option<SplitChoice> {
    let mut vals: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| (data[i].0.get(feature), data[i].1.index()))
        .collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total = {
        let mut c = [0u32; 2];
        for &(_, l) in &vals {
            c[l] += 1;
        }
        c
    };
    let n = vals.len();
    let mut left = [0u32; 2];
    let mut best: Option<SplitChoice> = None;
    for k in 0..n - 1 {
        left[vals[k].1] += 1;
        if vals[k].0 == vals[k + 1].0 {
            continue;
        }
        let nl = k + 1;
        let nr = n - nl;
        if nl < min_leaf || nr < min_leaf {
            continue;
        }
        let right = [total[0] - left[0], total[1] - left[1]];
        let score = (nl as f64 * gini(left) + nr as f64 * gini(right)) / n as f64;
        if best.as_ref().is_none_or(|b| score < b.score) {
            let mut threshold = vals[k].0 + (vals[k + 1].0 - vals[k].0) / 2.0;
            if threshold >= vals[k + 1].0 {
                // Adjacent floats: the midpoint rounds up onto the right value.
                threshold = vals[k].0;
            }
            best = Some(SplitChoice {
                feature,
                threshold,
                score,
            });
        }
    }
    best
}

fn grow_tree(
    data: &[(FeatureVector, Label)],
    sample: Vec<usize>,
    params: &ForestParams,
    rng: &mut ChaCha8Rng,
) -> Tree {
    let mut nodes = Vec::new();
    // (node slot, sample indices, depth)
    let mut stack = vec![(0usize, sample, 0usize)];
    nodes.push(Node::Leaf { counts: [0, 0] });
    while let Some((slot, idx, depth)) = stack.pop() {
        let counts = class_counts(data, &idx);
        nodes[slot] = Node::Leaf { counts };
        let pure = counts[0] == 0 || counts[1] == 0;
        let depth_capped = params.max_depth.is_some_and(|d| depth >= d);
        if pure || depth_capped || idx.len() < 2 * params.min_leaf {
            continue;
        }
        let mut features: Vec<usize> = (0..FEATURE_COUNT).collect();
        features.shuffle(rng);
        let mut best: Option<SplitChoice> = None;
        let mut tried = 0;
        for f in features {
            if tried >= params.max_features {
                break;
            }
            let first = data[idx[0]].0.get(f);
            if idx.iter().all(|&i| data[i].0.get(f) == first) {
                // Constant features do not count towards the draw.
                continue;
            }
            tried += 1;
            if let Some(s) = best_split_on(data, &idx, f, params.min_leaf) {
                if best.as_ref().is_none_or(|b| s.score < b.score) {
                    best = Some(s);
                }
            }
        }
        let Some(split) = best else { continue };
        let (l, r): (Vec<usize>, Vec<usize>) = idx
            .iter()
            .partition(|&&i| data[i].0.get(split.feature) <= split.threshold);
        if l.is_empty() || r.is_empty() {
            continue;
        }
        let left = nodes.len();
        let right = left + 1;
        nodes.push(Node::Leaf { counts: [0, 0] });
        nodes.push(Node::Leaf { counts: [0, 0] });
        nodes[slot] = Node::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        stack.push((right, r, depth + 1));
        stack.push((left, l, depth + 1));
    }
    Tree { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(f0: f64, f3: f64) -> FeatureVector {
        let mut v = [0.0; FEATURE_COUNT];
        v[0] = f0;
        v[3] = f3;
        FeatureVector(v)
    }

    fn separable() -> Vec<(FeatureVector, Label)> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..200)
            .map(|i| {
                if i % 2 == 0 {
                    (fv(rng.gen_range(0.9..1.0), rng.gen_range(0.0..1.0)), Label::Switch)
                } else {
                    (fv(rng.gen_range(0.0..0.1), rng.gen_range(0.0..1.0)), Label::NoSwitch)
                }
            })
            .collect()
    }

    #[test]
    fn separable_data_is_learned() {
        let data = separable();
        let f = train_forest(&data, &ForestParams::default(), 42).unwrap();
        assert!(data.iter().all(|(x, l)| f.classify(x).label == *l));
        f.validate().unwrap();
    }

    #[test]
    fn training_is_deterministic() {
        let data = separable();
        let p = ForestParams { trees: 15, ..Default::default() };
        let a = train_forest(&data, &p, 42).unwrap();
        let b = train_forest(&data, &p, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        let c = train_forest(&data, &p, 43).unwrap();
        assert_ne!(a.trees, c.trees);
    }

    #[test]
    fn single_label_and_empty_rejected() {
        let data: Vec<_> = separable().into_iter().filter(|(_, l)| *l == Label::Switch).collect();
        assert!(matches!(
            train_forest(&data, &ForestParams::default(), 1),
            Err(Error::Training(_))
        ));
        assert!(train_forest(&[], &ForestParams::default(), 1).is_err());
    }

    #[test]
    fn bad_params_rejected() {
        let data = separable();
        for p in [
            ForestParams { trees: 0, ..Default::default() },
            ForestParams { max_features: 0, ..Default::default() },
            ForestParams { max_features: 11, ..Default::default() },
        ] {
            assert!(train_forest(&data, &p, 1).is_err());
        }
    }

    #[test]
    fn adjacent_float_values_split() {
        let a = 0.3f64;
        let b = f64::from_bits(a.to_bits() + 1);
        let data = vec![
            (fv(a, 0.0), Label::NoSwitch),
            (fv(a, 0.0), Label::NoSwitch),
            (fv(b, 0.0), Label::Switch),
            (fv(b, 0.0), Label::Switch),
        ];
        let p = ForestParams { trees: 3, max_features: 10, ..Default::default() };
        let f = train_forest(&data, &p, 0).unwrap();
        f.validate().unwrap();
    }

    #[test]
    fn tie_vote_is_no_switch() {
        let yes = Tree { nodes: vec![Node::Leaf { counts: [0, 3] }] };
        let no = Tree { nodes: vec![Node::Leaf { counts: [3, 0] }] };
        let f = Forest::from_trees(vec![yes, no], ForestParams::default(), 0);
        let v = f.classify(&fv(0.5, 0.5));
        assert_eq!(v.label, Label::NoSwitch);
        assert_eq!(v.switch_fraction, 0.5);
        let tied_leaf = Tree { nodes: vec![Node::Leaf { counts: [2, 2] }] };
        assert_eq!(tied_leaf.predict(&fv(0.0, 0.0)), Label::NoSwitch);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = train_forest(&separable(), &ForestParams { trees: 5, ..Default::default() }, 42).unwrap();
        let back = Forest::from_json(&f.to_json()).unwrap();
        assert_eq!(f, back);

        let mut bad = f.clone();
        bad.trees[0].nodes = vec![Node::Split { feature: 12, threshold: 0.5, left: 1, right: 2 }];
        assert!(Forest::from_json(&bad.to_json()).is_err());
        let mut bad = f.clone();
        bad.version = 99;
        assert!(Forest::from_json(&bad.to_json()).is_err());
        let mut bad = f;
        bad.trees[0].nodes.push(Node::Leaf { counts: [1, 0] });
        assert!(matches!(Forest::from_json(&bad.to_json()), Err(Error::Model(_))));
    }
}
