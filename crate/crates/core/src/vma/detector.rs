//! Turn-by-turn masquerading detection.

use serde::{Deserialize, Serialize};

use crate::catalog::SkillRecord;
use crate::embed::EmbeddingProvider;
use crate::error::Result;

use super::features::{FeatureExtractor, FeatureVector};
use super::forest::Forest;
use super::response::{ResponseChecker, SrcVerdict};
use super::{Blacklist, Label, Role, SystemCommandList, Transcript};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlarmKind {
    /// Skill response with nothing spoken.
    SrcSilent,
    /// Skill response close to a system utterance.
    SrcMimicry,
    /// User utterance classified as a context switch.
    UicSwitch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alarm {
    /// Index into [`Transcript::turns`].
    pub turn: usize,
    pub kind: AlarmKind,
    /// Mimicked blacklist entry, or the switch vote fraction.
    pub evidence: String,
    pub score: f64,
}

pub struct Detector<'p, P: ?Sized> {
    checker: ResponseChecker<'p, P>,
    features: FeatureExtractor<'p, P>,
    forest: &'p Forest,
}

impl<'p, P: EmbeddingProvider<f64> + ?Sized> Detector<'p, P> {
    pub fn new(
        blacklist: &Blacklist,
        syscmds: &SystemCommandList,
        catalog: &[SkillRecord],
        forest: &'p Forest,
        provider: &'p P,
        src_threshold: f64,
    ) -> Result<Self> {
        Ok(Detector {
            checker: ResponseChecker::new(blacklist, provider, src_threshold)?,
            features: FeatureExtractor::new(provider, syscmds, catalog),
            forest,
        })
    }

    pub fn src_threshold(&self) -> f64 {
        self.checker.threshold()
    }

    /// Features of user turn `turn`, paired with the closest preceding skill response.
    pub fn features_at(&self, transcript: &Transcript, turn: usize) -> FeatureVector {
        let prior = transcript.turns[..turn]
            .iter()
            .rev()
            .find(|t| t.role == Role::Skill)
            .map(|t| t.text.as_str());
        self.features
            .extract(&transcript.turns[turn].text, prior, &transcript.skill)
    }

    /// Alarms in turn order. Invalid transcripts are rejected up front.
    pub fn detect(&self, transcript: &Transcript) -> Result<Vec<Alarm>> {
        transcript.validate()?;
        let mut alarms = Vec::new();
        let mut skill_spoke = false;
        for (i, turn) in transcript.turns.iter().enumerate() {
            match turn.role {
                Role::Skill => {
                    skill_spoke = true;
                    match self.checker.check(&turn.text) {
                        SrcVerdict::Clean { .. } => {}
                        SrcVerdict::Silent => alarms.push(Alarm {
                            turn: i,
                            kind: AlarmKind::SrcSilent,
                            evidence: "silence".into(),
                            score: 1.0,
                        }),
                        SrcVerdict::Mimicry { max_sr, entry } => alarms.push(Alarm {
                            turn: i,
                            kind: AlarmKind::SrcMimicry,
                            evidence: entry,
                            score: max_sr,
                        }),
                    }
                }
                // Whatever the user says before the skill first answers opened
                // the session; there is nothing to switch away from yet.
                Role::User if !skill_spoke => {}
                Role::User => {
                    let fv = self.features_at(transcript, i);
                    let vote = self.forest.classify(&fv);
                    log::debug!(
                        "{} turn {i}: features {:.3?}, switch vote {:.2}",
                        transcript.session_id,
                        fv.values(),
                        vote.switch_fraction
                    );
                    if vote.label == Label::Switch {
                        alarms.push(Alarm {
                            turn: i,
                            kind: AlarmKind::UicSwitch,
                            evidence: format!("{:.2} of trees vote switch", vote.switch_fraction),
                            score: vote.switch_fraction,
                        });
                    }
                }
            }
        }
        Ok(alarms)
    }
}

/// One-shot detection over a single transcript.
pub fn detect<P: EmbeddingProvider<f64> + ?Sized>(
    transcript: &Transcript,
    blacklist: &Blacklist,
    syscmds: &SystemCommandList,
    catalog: &[SkillRecord],
    forest: &Forest,
    provider: &P,
    src_threshold: f64,
) -> Result<Vec<Alarm>> {
    Detector::new(blacklist, syscmds, catalog, forest, provider, src_threshold)?.detect(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::HashedBagOfWords;
    use crate::vma::forest::{ForestParams, Node, Tree};
    use crate::vma::ConversationTurn;

    /// Switch whenever the max system-command SR exceeds 0.5.
    fn stub_forest() -> Forest {
        let tree = Tree {
            nodes: vec![
                Node::Split { feature: 0, threshold: 0.5, left: 1, right: 2 },
                Node::Leaf { counts: [1, 0] },
                Node::Leaf { counts: [0, 1] },
            ],
        };
        Forest::from_trees(vec![tree], ForestParams::default(), 0)
    }

    #[test]
    fn opening_request_is_not_classified() {
        let catalog = vec![SkillRecord::new("sleep", "sleep sounds")];
        let cmds = SystemCommandList::new(&["what's the weather"], &["sleep sounds"]).unwrap();
        let forest = stub_forest();
        let p = HashedBagOfWords::default();
        let t = Transcript {
            session_id: "s2".into(),
            skill: catalog[0].clone(),
            turns: vec![
                ConversationTurn::user("what's the weather"),
                ConversationTurn::skill("Which sound would you like?"),
                ConversationTurn::user("what's the weather"),
            ],
        };
        let alarms = detect(&t, &Blacklist::new(["Goodbye"]), &cmds, &catalog, &forest, &p, 0.8).unwrap();
        assert_eq!(alarms.iter().map(|a| a.turn).collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn alarms_from_both_checks() {
        let catalog = vec![SkillRecord::new("sleep", "sleep sounds")];
        let cmds = SystemCommandList::new(&["what's the weather", "stop"], &["sleep sounds"]).unwrap();
        let bl = Blacklist::new(["Goodbye"]);
        let forest = stub_forest();
        let p = HashedBagOfWords::default();
        let t = Transcript {
            session_id: "s1".into(),
            skill: catalog[0].clone(),
            turns: vec![
                ConversationTurn::skill("Which sound would you like?"),
                ConversationTurn::user("rain please"),
                ConversationTurn::skill("Here is rain."),
                ConversationTurn::user("what's the weather"),
                ConversationTurn::skill("Goodbye"),
                ConversationTurn::user("stop"),
                ConversationTurn::skill("<speak></speak>"),
            ],
        };
        let alarms = detect(&t, &bl, &cmds, &catalog, &forest, &p, 0.8).unwrap();
        let kinds: Vec<_> = alarms.iter().map(|a| (a.turn, a.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (3, AlarmKind::UicSwitch),
                (4, AlarmKind::SrcMimicry),
                (5, AlarmKind::UicSwitch),
                (6, AlarmKind::SrcSilent),
            ]
        );
    }

    #[test]
    fn invalid_transcript_rejected() {
        let catalog = vec![SkillRecord::new("sleep", "sleep sounds")];
        let cmds = SystemCommandList::new(&["stop"], &["sleep sounds"]).unwrap();
        let t = Transcript {
            session_id: "bad".into(),
            skill: catalog[0].clone(),
            turns: vec![ConversationTurn::user("a"), ConversationTurn::user("b")],
        };
        let forest = stub_forest();
        let p = HashedBagOfWords::default();
        assert!(detect(&t, &Blacklist::new(["Goodbye"]), &cmds, &catalog, &forest, &p, 0.8).is_err());
    }
}
