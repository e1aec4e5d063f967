//! Annotated referring expressions joined to their scenes.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::description::Description;
use crate::schema::{Attribute, Domain, Usability};
use crate::scene::{Scene, TrialId};

/// Syntactic slot the expression filled in the carrier sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Subject,
    Object,
}

impl Position {
    pub fn as_str(self) -> &'static str {
        match self {
            Position::Subject => "Subject",
            Position::Object => "Object",
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown syntactic position {0:?}")]
pub struct UnknownPosition(pub String);

impl FromStr for Position {
    type Err = UnknownPosition;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "subject" | "subj" => Ok(Position::Subject),
            "object" | "obj" => Ok(Position::Object),
            _ => Err(UnknownPosition(s.into())),
        }
    }
}

/// One human referring expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedRE {
    pub trial: TrialId,
    pub participant: String,
    pub position: Position,
    pub utterance: String,
    pub description: Description,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub scenes: Vec<Scene>,
    pub expressions: Vec<AnnotatedRE>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, scenes: Vec<Scene>, expressions: Vec<AnnotatedRE>) -> Self {
        Corpus {
            name: name.into(),
            scenes,
            expressions,
        }
    }

    pub fn scene(&self, trial: &TrialId) -> Option<&Scene> {
        self.scenes.iter().find(|s| s.trial() == trial)
    }

    pub fn expressions_for<'a>(&'a self, trial: &'a TrialId) -> impl Iterator<Item = &'a AnnotatedRE> {
        self.expressions.iter().filter(move |re| &re.trial == trial)
    }

    /// Restricts scenes and expressions to `keep`. Returns the filtered
    /// corpus and the requested ids that matched no scene.
    pub fn filter_trials(&self, keep: &BTreeSet<TrialId>) -> (Corpus, Vec<TrialId>) {
        let present: BTreeSet<&TrialId> = self.scenes.iter().map(|s| s.trial()).collect();
        let absent = keep.iter().filter(|t| !present.contains(t)).cloned().collect();
        let corpus = Corpus {
            name: self.name.clone(),
            scenes: self
                .scenes
                .iter()
                .filter(|s| keep.contains(s.trial()))
                .cloned()
                .collect(),
            expressions: self
                .expressions
                .iter()
                .filter(|re| keep.contains(&re.trial))
                .cloned()
                .collect(),
        };
        (corpus, absent)
    }

    /// Keeps only the scenes of one domain and the expressions that refer
    /// to them.
    pub fn restrict_domain(&self, domain: Domain) -> Corpus {
        let keep: BTreeSet<TrialId> = self
            .scenes
            .iter()
            .filter(|s| s.domain() == domain)
            .map(|s| s.trial().clone())
            .collect();
        self.filter_trials(&keep).0
    }

    pub fn validate(&self) -> Vec<Finding> {
        validate_corpus(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    DuplicateTrial {
        trial: TrialId,
    },
    DanglingReference {
        expression: usize,
        trial: TrialId,
    },
    IncompleteObject {
        trial: TrialId,
        object: String,
        attribute: Attribute,
    },
    AttributeOutsideSchema {
        expression: usize,
        trial: TrialId,
        attribute: Attribute,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::DuplicateTrial { trial } => write!(f, "trial {trial}: more than one scene"),
            Finding::DanglingReference { expression, trial } => {
                write!(f, "expression #{expression}: trial {trial} has no scene")
            }
            Finding::IncompleteObject {
                trial,
                object,
                attribute,
            } => write!(f, "trial {trial}, object {object}: no value for {attribute}"),
            Finding::AttributeOutsideSchema {
                expression,
                trial,
                attribute,
            } => write!(
                f,
                "expression #{expression} (trial {trial}): {attribute} is not an attribute of this domain"
            ),
        }
    }
}

/// Lists every invariant violation; empty iff the corpus is well-formed.
///
/// Objects must carry a value for every attribute the schema marks usable
/// by default.
pub fn validate_corpus(c: &Corpus) -> Vec<Finding> {
    let mut findings = Vec::new();

    let mut seen = BTreeSet::new();
    for s in &c.scenes {
        if !seen.insert(s.trial()) {
            findings.push(Finding::DuplicateTrial {
                trial: s.trial().clone(),
            });
        }
        let required: BTreeSet<Attribute> =
            s.schema().usable_attributes(Usability::default()).collect();
        for (object, attribute) in s.missing_values(&required) {
            findings.push(Finding::IncompleteObject {
                trial: s.trial().clone(),
                object,
                attribute,
            });
        }
    }

    for (i, re) in c.expressions.iter().enumerate() {
        let Some(scene) = c.scene(&re.trial) else {
            findings.push(Finding::DanglingReference {
                expression: i,
                trial: re.trial.clone(),
            });
            continue;
        };
        for attribute in re.description.attribute_names() {
            if !scene.schema().declares(attribute) {
                findings.push(Finding::AttributeOutsideSchema {
                    expression: i,
                    trial: re.trial.clone(),
                    attribute,
                });
            }
        }
    }
    findings
}
