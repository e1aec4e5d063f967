//! Exhaustive scene profiles and the specification taxonomy for human REs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::algorithms::next_combination;
use crate::candidates::{candidates, Candidate};
use crate::corpus::{AnnotatedRE, Corpus};
use crate::description::Description;
use crate::schema::{Attribute, Domain, Usability};
use crate::scene::{Scene, TrialId};

pub use crate::candidates::candidate_universe;

pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileConfig {
    pub usability: Usability,
    /// Largest candidate universe that will be enumerated.
    pub bound: usize,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            usability: Usability::default(),
            bound: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("trial {trial}: {candidates} candidate properties exceed the enumeration bound of {bound}")]
    CapacityExceeded {
        trial: TrialId,
        candidates: usize,
        bound: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneProfile {
    pub trial: TrialId,
    /// Size of the smallest distinguishing description, if any exists.
    pub minimal_size: Option<usize>,
    /// All distinguishing descriptions of size `minimal_size`, in
    /// enumeration order.
    pub minimal: Vec<Description>,
    /// Distinguishing descriptions larger than the minimum from which no
    /// single property can be dropped.
    pub numerical: usize,
    pub universe_size: usize,
}

impl SceneProfile {
    pub fn n_minimal(&self) -> usize {
        self.minimal.len()
    }
}

struct Enumeration<'a> {
    candidates: &'a [Candidate],
    distractors: u64,
    /// Irredundant distinguishing sets as candidate index lists.
    irredundant: Vec<Vec<usize>>,
}

impl Enumeration<'_> {
    /// Depth-first over subsets in index order. A strict superset of a
    /// distinguishing set always has a removable property and is never
    /// minimal, so the search stops descending once a set distinguishes.
    fn descend(&mut self, start: usize, chosen: &mut Vec<usize>, used: u32, covered: u64) {
        for i in start..self.candidates.len() {
            let c = &self.candidates[i];
            let bit = 1u32 << c.slot;
            if used & bit != 0 {
                continue;
            }
            chosen.push(i);
            let now = covered | c.rules_out;
            if now & self.distractors == self.distractors {
                if removable(self.candidates, chosen, self.distractors).is_empty() {
                    self.irredundant.push(chosen.clone());
                }
            } else {
                self.descend(i + 1, chosen, used | bit, now);
            }
            chosen.pop();
        }
    }
}

/// Positions in `chosen` whose removal leaves a distinguishing set.
fn removable(candidates: &[Candidate], chosen: &[usize], distractors: u64) -> Vec<usize> {
    (0..chosen.len())
        .filter(|&skip| {
            let covered = chosen
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .fold(0u64, |m, (_, &i)| m | candidates[i].rules_out);
            covered & distractors == distractors
        })
        .collect()
}

pub fn scene_profile(scene: &Scene, cfg: &ProfileConfig) -> Result<SceneProfile, AnalysisError> {
    let cands = candidates(scene, cfg.usability);
    if cands.len() > cfg.bound {
        return Err(AnalysisError::CapacityExceeded {
            trial: scene.trial().clone(),
            candidates: cands.len(),
            bound: cfg.bound,
        });
    }
    let mut e = Enumeration {
        candidates: &cands,
        distractors: scene.distractor_mask(),
        irredundant: Vec::new(),
    };
    e.descend(0, &mut Vec::new(), 0, 0);

    let minimal_size = e.irredundant.iter().map(Vec::len).min();
    let to_description = |set: &Vec<usize>| {
        Description::from_properties(set.iter().map(|&i| cands[i].property.clone()))
            .expect("one candidate per attribute")
    };
    let minimal = e
        .irredundant
        .iter()
        .filter(|s| Some(s.len()) == minimal_size)
        .map(to_description)
        .collect();
    let numerical = e
        .irredundant
        .iter()
        .filter(|s| Some(s.len()) != minimal_size)
        .count();
    Ok(SceneProfile {
        trial: scene.trial().clone(),
        minimal_size,
        minimal,
        numerical,
        universe_size: cands.len(),
    })
}

/// Profiles every scene; scenes over the bound are reported, not dropped
/// silently.
pub fn profile_corpus(
    corpus: &Corpus,
    cfg: &ProfileConfig,
) -> (BTreeMap<TrialId, SceneProfile>, Vec<AnalysisError>) {
    let mut profiles = BTreeMap::new();
    let mut errors = Vec::new();
    for s in &corpus.scenes {
        match scene_profile(s, cfg) {
            Ok(p) => {
                profiles.insert(s.trial().clone(), p);
            }
            Err(e) => errors.push(e),
        }
    }
    (profiles, errors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpecificationCategory {
    Minimal,
    NumericalOver,
    NominalOver,
    RealOver,
    Under,
    Wrong,
    Other,
}

impl SpecificationCategory {
    pub const ALL: [SpecificationCategory; 7] = [
        SpecificationCategory::Minimal,
        SpecificationCategory::NumericalOver,
        SpecificationCategory::NominalOver,
        SpecificationCategory::RealOver,
        SpecificationCategory::Under,
        SpecificationCategory::Wrong,
        SpecificationCategory::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpecificationCategory::Minimal => "minimal",
            SpecificationCategory::NumericalOver => "numerical",
            SpecificationCategory::NominalOver => "nominal",
            SpecificationCategory::RealOver => "real",
            SpecificationCategory::Under => "under",
            SpecificationCategory::Wrong => "wrong",
            SpecificationCategory::Other => "other",
        }
    }
}

impl fmt::Display for SpecificationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecificationReport {
    pub category: SpecificationCategory,
    /// `|D| - m` for distinguishing descriptions.
    pub superfluity: Option<usize>,
    /// Fewest extra true properties that would make an under-specified
    /// description distinguishing; `None` when no completion exists.
    pub deficit: Option<usize>,
    /// Attributes that can each be dropped without losing distinguishing-ness.
    pub removable: Vec<Attribute>,
}

impl SpecificationReport {
    fn bare(category: SpecificationCategory) -> Self {
        SpecificationReport {
            category,
            superfluity: None,
            deficit: None,
            removable: Vec::new(),
        }
    }
}

/// Places a human description in the taxonomy. Checks run in order:
/// unusable attributes (Other), a false property (Wrong), failure to
/// distinguish (Under), minimum size (Minimal), then by which single
/// properties are removable (NumericalOver, NominalOver, RealOver).
pub fn classify(
    re: &AnnotatedRE,
    scene: &Scene,
    profile: &SceneProfile,
    usability: Usability,
) -> SpecificationReport {
    use SpecificationCategory::*;

    let d = &re.description;
    let schema = scene.schema();
    if d.has_other() || d.properties().any(|p| !schema.is_usable(p.attribute, usability)) {
        return SpecificationReport::bare(Other);
    }
    if d
        .properties()
        .any(|p| !scene.true_of_target(&p).expect("attributes are declared"))
    {
        return SpecificationReport::bare(Wrong);
    }

    let distractors = scene.distractor_mask();
    let masks: Vec<(Attribute, u64)> = d
        .properties()
        .map(|p| (p.attribute, scene.rules_out(&p)))
        .collect();
    let covered = masks.iter().fold(0u64, |m, (_, r)| m | r);

    if covered & distractors != distractors {
        let mut report = SpecificationReport::bare(Under);
        report.deficit = completion_size(scene, d, covered, usability);
        return report;
    }

    let removable: Vec<Attribute> = (0..masks.len())
        .filter(|&skip| {
            let rest = masks
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .fold(0u64, |m, (_, (_, r))| m | r);
            rest & distractors == distractors
        })
        .map(|i| masks[i].0)
        .collect();
    let m = profile
        .minimal_size
        .expect("a distinguishing description implies a minimal size");
    let category = if d.len() == m {
        Minimal
    } else if removable.is_empty() {
        NumericalOver
    } else if removable == [Attribute::Type] {
        NominalOver
    } else {
        RealOver
    };
    SpecificationReport {
        category,
        superfluity: Some(d.len() - m),
        deficit: None,
        removable,
    }
}

fn completion_size(scene: &Scene, d: &Description, covered: u64, usability: Usability) -> Option<usize> {
    let distractors = scene.distractor_mask();
    let extra: Vec<Candidate> = candidates(scene, usability)
        .into_iter()
        .filter(|c| !d.contains(c.property.attribute))
        .collect();
    for k in 1..=extra.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut used = 0u32;
            let mut now = covered;
            let mut valid = true;
            for &i in &idx {
                let bit = 1u32 << extra[i].slot;
                valid &= used & bit == 0;
                used |= bit;
                now |= extra[i].rules_out;
            }
            if valid && now & distractors == distractors {
                return Some(k);
            }
            if !next_combination(&mut idx, extra.len()) {
                break;
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountRow {
    pub total: usize,
    pub minimal: usize,
    pub real: usize,
    pub nominal: usize,
    pub numerical: usize,
    pub wrong: usize,
    pub other: usize,
    pub under: usize,
}

impl CountRow {
    pub fn add(&mut self, category: SpecificationCategory) {
        use SpecificationCategory::*;
        self.total += 1;
        let slot = match category {
            Minimal => &mut self.minimal,
            RealOver => &mut self.real,
            NominalOver => &mut self.nominal,
            NumericalOver => &mut self.numerical,
            Wrong => &mut self.wrong,
            Other => &mut self.other,
            Under => &mut self.under,
        };
        *slot += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecCounts {
    /// One row per domain, always present, possibly all zero.
    pub rows: BTreeMap<Domain, CountRow>,
    /// Expressions with no scene or no profile.
    pub skipped: usize,
}

pub fn spec_count_table(
    corpus: &Corpus,
    profiles: &BTreeMap<TrialId, SceneProfile>,
    usability: Usability,
) -> SpecCounts {
    let mut rows: BTreeMap<Domain, CountRow> =
        Domain::ALL.iter().map(|d| (*d, CountRow::default())).collect();
    let mut skipped = 0;
    for re in &corpus.expressions {
        match (corpus.scene(&re.trial), profiles.get(&re.trial)) {
            (Some(scene), Some(profile)) => {
                let report = classify(re, scene, profile, usability);
                rows.entry(scene.domain()).or_default().add(report.category);
            }
            _ => skipped += 1,
        }
    }
    SpecCounts { rows, skipped }
}
