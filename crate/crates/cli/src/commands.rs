use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use skillvet::catalog::{load_catalog, SkillRecord};
use skillvet::cost::{accumulate, build_matrix};
use skillvet::dict::{phonemize_phrase, Dictionary, ParseMode};
use skillvet::distance::phrase_distance;
use skillvet::embed::HashedBagOfWords;
use skillvet::paraphrase::{generate_variants, homophone_variants, Variant, VariantConfig};
use skillvet::scan::scan;
use skillvet::vma::detector::{Alarm, AlarmKind, Detector};
use skillvet::vma::eval::{build_dataset, cross_validate};
use skillvet::vma::forest::{train_forest, Forest, ForestParams, DEFAULT_SEED};
use skillvet::vma::response::{calibrate, paraphrase_blacklist, Calibration, ResponseParaphraseConfig, DEFAULT_SRC_THRESHOLD};
use skillvet::vma::{read_jsonl, Blacklist, LabeledUtterance, Role, SystemCommandList, Transcript};
use skillvet::CostMatrix;

use crate::config::{self, pick, Config, PROVIDER_HASHED_BOW_V1};
use crate::output::{emit, emit_json};
use crate::{
    BuildMatrixArgs, CalibrateSrcArgs, DetectArgs, DistanceArgs, EvalUicArgs, ForestArgs, ScanArgs,
    TrainUicArgs, VariantsArgs,
};

/// How a successful run ended; mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    /// Findings or alarms present.
    Flagged,
    /// Some inputs were skipped; the report covers the rest.
    Partial,
}

pub struct Context_ {
    pub config: Config,
}

impl Context_ {
    fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.config.seed).unwrap_or(DEFAULT_SEED)
    }

    fn provider(&self) -> Result<HashedBagOfWords> {
        config::provider(self.config.provider.as_deref().unwrap_or(PROVIDER_HASHED_BOW_V1))
    }

    fn dictionary(&self, flag: Option<PathBuf>, strict: bool) -> Result<Dictionary> {
        let path = pick(flag, &self.config.paths.dictionary, "dict")?;
        let mode = if strict { ParseMode::Strict } else { ParseMode::Lenient };
        let parsed = Dictionary::load(&path, mode).with_context(|| format!("loading {}", path.display()))?;
        if !parsed.skipped.is_empty() {
            log::warn!("{}: skipped {} malformed lines", path.display(), parsed.skipped.len());
        }
        log::info!("{}: {} headwords", path.display(), parsed.dictionary.len());
        Ok(parsed.dictionary)
    }

    fn matrix(&self, flag: Option<PathBuf>, uniform: bool) -> Result<CostMatrix> {
        if uniform {
            return Ok(CostMatrix::uniform());
        }
        let path = pick(flag, &self.config.paths.matrix, "matrix")
            .context("build one with `skillvet build-matrix`, or pass --uniform")?;
        CostMatrix::load(&path).with_context(|| format!("loading {}", path.display()))
    }

    fn catalog(&self, flag: Option<PathBuf>) -> Result<Vec<SkillRecord>> {
        let path = pick(flag, &self.config.paths.catalog, "catalog")?;
        load_catalog(&path).with_context(|| format!("loading {}", path.display()))
    }

    fn variants(&self, flag: Option<PathBuf>) -> Result<VariantConfig> {
        match flag.or_else(|| self.config.paths.variants.clone()) {
            Some(p) => read_structured(&p),
            None => Ok(VariantConfig::default()),
        }
    }

    fn syscmds(&self, flag: Option<PathBuf>, catalog: &[SkillRecord]) -> Result<SystemCommandList> {
        let path = pick(flag, &self.config.paths.syscmds, "syscmds")?;
        let names: Vec<&str> = catalog.iter().map(|s| s.invocation_name.as_str()).collect();
        SystemCommandList::load(&path, &names).with_context(|| format!("loading {}", path.display()))
    }

    fn blacklist(&self, flag: Option<PathBuf>) -> Result<Blacklist> {
        let path = pick(flag, &self.config.paths.blacklist, "blacklist")?;
        Blacklist::load(&path).with_context(|| format!("loading {}", path.display()))
    }

    fn labels(&self, flag: Option<PathBuf>) -> Result<Vec<LabeledUtterance>> {
        let path = pick(flag, &self.config.paths.labels, "data")?;
        read_jsonl(&path).with_context(|| format!("loading {}", path.display()))
    }

    fn src_threshold(&self, flag: Option<f64>) -> Result<f64> {
        let t = flag.or(self.config.thresholds.src).unwrap_or(DEFAULT_SRC_THRESHOLD);
        config::check_src_threshold(t)?;
        Ok(t)
    }
}

/// Reads a JSON file, or TOML for any other extension.
fn read_structured<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    } else {
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

pub fn build_matrix_cmd(ctx: &Context_, args: BuildMatrixArgs) -> Result<Outcome> {
    let path = pick(args.dict.clone(), &ctx.config.paths.dictionary, "dict")?;
    let dict = ctx.dictionary(args.dict, args.strict)?;
    let pairs = dict.variant_pairs();
    log::info!("{} alternative-pronunciation pairs", pairs.len());
    let tables = accumulate(&pairs)?;
    let m: CostMatrix = build_matrix(&tables);
    log::info!("min indel cost {:.4}, min edit cost {:.4}", m.min_indel(), m.min_edit());
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let source = format!("{name} ({} headwords, {} variant pairs)", dict.len(), pairs.len());
    emit(args.out.as_deref(), &m.to_tsv(&source))?;
    Ok(Outcome::Clean)
}

#[derive(Serialize)]
struct DistanceReport {
    left: String,
    right: String,
    distance: f64,
    left_pronunciation: String,
    right_pronunciation: String,
}

pub fn distance_cmd(ctx: &Context_, args: DistanceArgs) -> Result<Outcome> {
    let dict = ctx.dictionary(args.dict, false)?;
    let m = ctx.matrix(args.matrix, args.uniform)?;
    let d = phrase_distance(&args.left, &args.right, &dict, &m)?;
    emit_json(
        args.out.as_deref(),
        &DistanceReport {
            left: args.left,
            right: args.right,
            distance: d.cost,
            left_pronunciation: d.left.to_string(),
            right_pronunciation: d.right.to_string(),
        },
    )?;
    Ok(Outcome::Clean)
}

#[derive(Serialize)]
struct VariantsReport {
    name: String,
    pronunciations: Vec<String>,
    variants: Vec<Variant>,
}

pub fn variants_cmd(ctx: &Context_, args: VariantsArgs) -> Result<Outcome> {
    let cfg = ctx.variants(args.variants)?;
    let mut variants = generate_variants(&args.name, &cfg);
    let mut pronunciations = Vec::new();
    if args.homophones || args.dict.is_some() || ctx.config.paths.dictionary.is_some() {
        let dict = ctx.dictionary(args.dict, false)?;
        pronunciations = phonemize_phrase(&args.name, &dict)?.iter().map(ToString::to_string).collect();
        if args.homophones {
            let m = ctx.matrix(args.matrix, args.uniform)?;
            let bound = args.threshold.or(ctx.config.thresholds.scan).unwrap_or(1.0);
            config::check_scan_threshold(bound)?;
            let lexicon: Vec<&str> = dict
                .iter()
                .map(|(w, _)| w)
                .filter(|w| w.chars().all(|c| c.is_ascii_alphabetic()))
                .collect();
            variants.extend(homophone_variants(&args.name, &lexicon, &dict, &m, bound)?);
        }
    }
    emit_json(
        args.out.as_deref(),
        &VariantsReport {
            name: args.name,
            pronunciations,
            variants,
        },
    )?;
    Ok(Outcome::Clean)
}

pub fn scan_cmd(ctx: &Context_, args: ScanArgs) -> Result<Outcome> {
    let threshold = args.threshold.or(ctx.config.thresholds.scan).unwrap_or(1.0);
    config::check_scan_threshold(threshold)?;
    let catalog = ctx.catalog(args.catalog)?;
    let dict = ctx.dictionary(args.dict, false)?;
    let m = ctx.matrix(args.matrix, args.uniform)?;
    let cfg = ctx.variants(args.variants)?;
    let started = Instant::now();
    let report = scan(&catalog, &dict, &m, &cfg, threshold);
    log::info!("scanned {} skills in {:.2?}", report.scanned, started.elapsed());
    if args.table {
        eprint!("{}", report.render_table());
    }
    emit_json(args.out.as_deref(), &report)?;
    Ok(if report.is_partial() {
        Outcome::Partial
    } else if report.has_findings() {
        Outcome::Flagged
    } else {
        Outcome::Clean
    })
}

fn forest_params(args: &ForestArgs) -> ForestParams {
    let d = ForestParams::default();
    ForestParams {
        trees: args.trees.unwrap_or(d.trees),
        max_features: args.max_features.unwrap_or(d.max_features),
        min_leaf: args.min_leaf.unwrap_or(d.min_leaf),
        max_depth: args.max_depth,
    }
}

pub fn train_uic_cmd(ctx: &Context_, args: TrainUicArgs) -> Result<Outcome> {
    let labels = ctx.labels(args.data)?;
    let catalog = ctx.catalog(args.catalog)?;
    let syscmds = ctx.syscmds(args.syscmds, &catalog)?;
    let provider = ctx.provider()?;
    let data = build_dataset(&labels, &catalog, &syscmds, &provider)?;
    let seed = ctx.seed(args.seed);
    let forest = train_forest(&data, &forest_params(&args.forest), seed)?;
    let correct = data.iter().filter(|(x, l)| forest.classify(x).label == *l).count();
    log::info!(
        "trained {} trees on {} samples (seed {seed}); training accuracy {:.4}",
        forest.trees.len(),
        data.len(),
        correct as f64 / data.len() as f64
    );
    let mut json = forest.to_json();
    json.push('\n');
    emit(args.out.as_deref(), &json)?;
    Ok(Outcome::Clean)
}

pub fn eval_uic_cmd(ctx: &Context_, args: EvalUicArgs) -> Result<Outcome> {
    let labels = ctx.labels(args.data)?;
    let catalog = ctx.catalog(args.catalog)?;
    let syscmds = ctx.syscmds(args.syscmds, &catalog)?;
    let provider = ctx.provider()?;
    let data = build_dataset(&labels, &catalog, &syscmds, &provider)?;
    let started = Instant::now();
    let report = cross_validate(&data, args.folds, &forest_params(&args.forest), ctx.seed(args.seed))?;
    log::info!(
        "{}-fold CV: precision {:.4}, recall {:.4}, F1 {:.4} ({:.2?})",
        report.folds,
        report.precision,
        report.recall,
        report.f1,
        started.elapsed()
    );
    emit_json(args.out.as_deref(), &report)?;
    Ok(Outcome::Clean)
}

#[derive(Serialize)]
struct SessionAlarms {
    session_id: String,
    alarms: Vec<Alarm>,
}

#[derive(Serialize)]
struct DetectReport {
    src_threshold: f64,
    transcripts: usize,
    turns: usize,
    alarm_count: usize,
    by_kind: BTreeMap<AlarmKind, usize>,
    sessions: Vec<SessionAlarms>,
}

pub fn detect_cmd(ctx: &Context_, args: DetectArgs) -> Result<Outcome> {
    let catalog = ctx.catalog(args.catalog)?;
    let syscmds = ctx.syscmds(args.syscmds, &catalog)?;
    let blacklist = ctx.blacklist(args.blacklist)?;
    let model = pick(args.model, &ctx.config.paths.model, "model")?;
    let forest = Forest::load(&model).with_context(|| format!("loading {}", model.display()))?;
    let transcripts: Vec<Transcript> =
        read_jsonl(&args.transcripts).with_context(|| format!("loading {}", args.transcripts.display()))?;
    let provider = ctx.provider()?;
    let threshold = ctx.src_threshold(args.src_threshold)?;
    let detector = Detector::new(&blacklist, &syscmds, &catalog, &forest, &provider, threshold)?;

    // Validate everything first so a bad session emits no partial report.
    for t in &transcripts {
        t.validate()?;
    }
    let started = Instant::now();
    let results = transcripts
        .par_iter()
        .map(|t| detector.detect(t))
        .collect::<skillvet::Result<Vec<_>>>()?;
    let turns: usize = transcripts.iter().map(|t| t.turns.len()).sum();
    if turns > 0 {
        log::info!(
            "{} turns in {:.2?} ({:.1} µs per turn, embedding included)",
            turns,
            started.elapsed(),
            started.elapsed().as_secs_f64() * 1e6 / turns as f64
        );
    }

    let mut by_kind = BTreeMap::new();
    let sessions: Vec<SessionAlarms> = transcripts
        .iter()
        .zip(results)
        .map(|(t, alarms)| {
            for a in &alarms {
                *by_kind.entry(a.kind).or_insert(0) += 1;
            }
            SessionAlarms {
                session_id: t.session_id.clone(),
                alarms,
            }
        })
        .collect();
    let alarm_count = by_kind.values().sum();
    emit_json(
        args.out.as_deref(),
        &DetectReport {
            src_threshold: threshold,
            transcripts: transcripts.len(),
            turns,
            alarm_count,
            by_kind,
            sessions,
        },
    )?;
    Ok(if alarm_count > 0 { Outcome::Flagged } else { Outcome::Clean })
}

#[derive(Serialize)]
struct CalibrationReport {
    #[serde(flatten)]
    calibration: Calibration,
    legitimate_responses: usize,
    paraphrases: usize,
    separates: bool,
    suggested_threshold: Option<f64>,
    configured_threshold: f64,
    configured_threshold_valid: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LegitLine {
    Transcript(Transcript),
    Labeled(LabeledUtterance),
}

pub fn calibrate_src_cmd(ctx: &Context_, args: CalibrateSrcArgs) -> Result<Outcome> {
    let blacklist = ctx.blacklist(args.blacklist)?;
    let variants_path = pick(args.response_variants, &ctx.config.paths.response_variants, "response-variants")?;
    let cfg: ResponseParaphraseConfig = read_structured(&variants_path)?;
    let mut legit: Vec<String> = Vec::new();
    for path in &args.legit {
        for line in read_jsonl::<LegitLine>(path).with_context(|| format!("loading {}", path.display()))? {
            match line {
                LegitLine::Transcript(t) => legit.extend(
                    t.turns
                        .into_iter()
                        .filter(|turn| turn.role == Role::Skill && !skillvet::vma::response::is_silent(&turn.text))
                        .map(|turn| turn.text),
                ),
                LegitLine::Labeled(l) => legit.extend(l.prior_response),
            }
        }
    }
    legit.sort();
    legit.dedup();
    let paraphrases = paraphrase_blacklist(&blacklist, &cfg);
    let provider = ctx.provider()?;
    let calibration = calibrate(&legit, &blacklist, &paraphrases, &provider)?;
    let threshold = ctx.src_threshold(args.src_threshold)?;
    let valid = calibration.validate(threshold);
    let report = CalibrationReport {
        legitimate_responses: legit.len(),
        paraphrases: paraphrases.len(),
        separates: calibration.separates(),
        suggested_threshold: calibration.separates().then(|| calibration.suggested_threshold()),
        configured_threshold: threshold,
        configured_threshold_valid: valid.is_ok(),
        calibration,
    };
    emit_json(args.out.as_deref(), &report)?;
    if let Err(e) = valid {
        bail!(e);
    }
    Ok(Outcome::Clean)
}
