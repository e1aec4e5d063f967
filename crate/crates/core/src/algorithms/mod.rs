//! Full Brevity, Greedy and Incremental content selection.
//!
//! An [`AlgorithmSpec`] names one algorithm together with its TYPE policy
//! and seed, and parses from strings such as `FB`, `FB+TYPE`, `GR`,
//! `IA-COS` or `IA-GBHOATSS@p=0.3@seed=7`.

mod full_brevity;
mod greedy;
mod incremental;
mod policy;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

pub use incremental::{LetterMap, PreferenceOrder, FURNITURE_PRESETS, PEOPLE_PRESETS};
pub use policy::{apply_type_policy, RandomStream, TypePolicy};

pub(crate) use full_brevity::next_combination;

use crate::candidates::candidates;
use crate::corpus::Corpus;
use crate::description::Description;
use crate::schema::{Domain, Usability};
use crate::scene::{Scene, TrialId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error("invalid preference order: {0}")]
    InvalidOrder(String),
    #[error("unknown preference-order letter {0:?}")]
    UnknownLetter(char),
    #[error("invalid algorithm spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("trial {trial}: {order} is a {expected} order but the scene is {found}")]
    DomainMismatch {
        trial: TrialId,
        order: String,
        expected: Domain,
        found: Domain,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgorithmKind {
    FullBrevity,
    Greedy,
    Incremental(PreferenceOrder),
}

/// An algorithm, its TYPE policy, and the seed for probabilistic policies.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSpec {
    pub kind: AlgorithmKind,
    pub policy: TypePolicy,
    pub seed: Option<u64>,
}

impl AlgorithmSpec {
    pub fn full_brevity() -> Self {
        AlgorithmSpec {
            kind: AlgorithmKind::FullBrevity,
            policy: TypePolicy::Never,
            seed: None,
        }
    }

    pub fn full_brevity_type() -> Self {
        AlgorithmSpec {
            policy: TypePolicy::Always,
            ..Self::full_brevity()
        }
    }

    pub fn greedy() -> Self {
        AlgorithmSpec {
            kind: AlgorithmKind::Greedy,
            policy: TypePolicy::Always,
            seed: None,
        }
    }

    pub fn incremental(order: PreferenceOrder) -> Self {
        AlgorithmSpec {
            kind: AlgorithmKind::Incremental(order),
            policy: TypePolicy::Always,
            seed: None,
        }
    }

    pub fn with_policy(mut self, policy: TypePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// Parses a spec, reading people-domain order codes with `letters`.
    pub fn parse_with(s: &str, letters: LetterMap) -> Result<Self, AlgorithmError> {
        let bad = |reason: &str| AlgorithmError::BadSpec {
            spec: s.into(),
            reason: reason.into(),
        };
        let mut parts = s.trim().split('@');
        let base = parts.next().unwrap_or_default();
        let mut spec = match base.to_ascii_uppercase().as_str() {
            "FB" => AlgorithmSpec::full_brevity(),
            "FB+TYPE" => AlgorithmSpec::full_brevity_type(),
            "GR" => AlgorithmSpec::greedy(),
            upper => match upper.strip_prefix("IA-") {
                Some(code) => AlgorithmSpec::incremental(PreferenceOrder::from_code(code, letters)?),
                None => return Err(bad("expected FB, FB+TYPE, GR or IA-<ORDER>")),
            },
        };
        let mut seen_p = false;
        for part in parts {
            let (key, value) = part.split_once('=').ok_or_else(|| bad("suffix must be key=value"))?;
            match key.trim() {
                "p" if !seen_p => {
                    seen_p = true;
                    let p: f64 = value.trim().parse().map_err(|_| bad("p is not a number"))?;
                    spec.policy =
                        TypePolicy::probabilistic(p).ok_or_else(|| bad("p must lie in [0, 1]"))?;
                }
                "seed" if spec.seed.is_none() => {
                    let seed = value.trim().parse().map_err(|_| bad("seed is not a u64"))?;
                    spec.seed = Some(seed);
                }
                _ => return Err(bad("unknown or repeated suffix")),
            }
        }
        Ok(spec)
    }

    fn base_label(&self) -> (String, TypePolicy) {
        match &self.kind {
            AlgorithmKind::FullBrevity if self.policy == TypePolicy::Always => {
                ("FB+TYPE".into(), TypePolicy::Always)
            }
            AlgorithmKind::FullBrevity => ("FB".into(), TypePolicy::Never),
            AlgorithmKind::Greedy => ("GR".into(), TypePolicy::Always),
            AlgorithmKind::Incremental(o) => (alloc::format!("IA-{o}"), TypePolicy::Always),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Runs the algorithm on one scene.
    pub fn generate(
        &self,
        scene: &Scene,
        usability: Usability,
        rng: &mut RandomStream,
    ) -> Result<GeneratedDescription, AlgorithmError> {
        let distractors = scene.distractor_mask();
        let selected = match &self.kind {
            AlgorithmKind::FullBrevity => {
                full_brevity::shortest(&candidates(scene, usability), distractors)
                    .unwrap_or_default()
            }
            AlgorithmKind::Greedy => greedy::select(&candidates(scene, usability), distractors).0,
            AlgorithmKind::Incremental(order) => {
                if order.domain() != scene.domain() {
                    return Err(AlgorithmError::DomainMismatch {
                        trial: scene.trial().clone(),
                        order: order.code().into(),
                        expected: order.domain(),
                        found: scene.domain(),
                    });
                }
                incremental::select(scene, order).0
            }
        };
        let description = apply_type_policy(selected, scene, self.policy, rng);
        let distinguishing = scene
            .distinguishes(&description)
            .expect("selected properties come from the scene schema");
        Ok(GeneratedDescription {
            trial: scene.trial().clone(),
            algorithm: self.label(),
            description,
            distinguishing,
        })
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, default) = self.base_label();
        f.write_str(&base)?;
        match self.policy {
            TypePolicy::Probabilistic(p) => write!(f, "@p={p}")?,
            policy if policy != default => {
                let p = if policy == TypePolicy::Always { 1 } else { 0 };
                write!(f, "@p={p}")?;
            }
            _ => {}
        }
        if let Some(seed) = self.seed {
            write!(f, "@seed={seed}")?;
        }
        Ok(())
    }
}

impl FromStr for AlgorithmSpec {
    type Err = AlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgorithmSpec::parse_with(s, LetterMap::Standard)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedDescription {
    pub trial: TrialId,
    pub algorithm: String,
    pub description: Description,
    /// Equals `scene.distinguishes(&description)` at creation.
    pub distinguishing: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchOutput {
    pub outputs: BTreeMap<TrialId, GeneratedDescription>,
    pub failures: Vec<AlgorithmError>,
}

/// Runs `spec` on every scene of the corpus. Each scene draws from its own
/// stream, derived from the seed, `run`, and its trial id.
pub fn run_algorithm_run(
    corpus: &Corpus,
    spec: &AlgorithmSpec,
    usability: Usability,
    run: u64,
) -> BatchOutput {
    let mut batch = BatchOutput::default();
    for scene in &corpus.scenes {
        let mut rng = RandomStream::for_trial(spec.seed_or_default(), run, scene.trial());
        match spec.generate(scene, usability, &mut rng) {
            Ok(g) => {
                batch.outputs.insert(g.trial.clone(), g);
            }
            Err(e) => batch.failures.push(e),
        }
    }
    batch
}

pub fn run_algorithm(corpus: &Corpus, spec: &AlgorithmSpec, usability: Usability) -> BatchOutput {
    run_algorithm_run(corpus, spec, usability, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::description::Property;
    use crate::fixtures::{fx1, fx2};
    use crate::schema::Attribute;
    use crate::scene::DomainObject;
    use alloc::vec;

    fn gen(spec: &str, scene: &Scene) -> GeneratedDescription {
        spec.parse::<AlgorithmSpec>()
            .unwrap()
            .generate(scene, Usability::default(), &mut RandomStream::new(0))
            .unwrap()
    }

    fn desc(props: &[(Attribute, &str)]) -> Description {
        Description::from_properties(props.iter().map(|(a, v)| Property::new(*a, *v))).unwrap()
    }

    #[test]
    fn full_brevity_examples() {
        let g = gen("FB", &fx1());
        assert_eq!(g.description, desc(&[(Attribute::Colour, "green")]));
        assert!(g.distinguishing);
        assert_eq!(gen("FB", &fx2()).description, desc(&[(Attribute::Beard, "light")]));
        assert_eq!(
            gen("FB+TYPE", &fx1()).description,
            desc(&[(Attribute::Colour, "green"), (Attribute::Type, "chair")])
        );
    }

    fn twins() -> Scene {
        let attrs = [
            (Attribute::Type, "fan"),
            (Attribute::Colour, "red"),
            (Attribute::Size, "small"),
            (Attribute::Orientation, "back"),
        ];
        Scene::new(
            "twins".into(),
            Domain::Furniture,
            vec![DomainObject::new("a", attrs), DomainObject::new("b", attrs)],
            "a",
        )
        .unwrap()
    }

    #[test]
    fn no_distinguishing_description() {
        for spec in ["FB", "GR@p=0", "IA-COS@p=0"] {
            let g = gen(spec, &twins());
            assert!(g.description.is_empty(), "{spec}");
            assert!(!g.distinguishing);
        }
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            gen("GR", &fx1()).description,
            desc(&[(Attribute::Colour, "green"), (Attribute::Type, "chair")])
        );
        assert_eq!(gen("GR@p=0", &fx1()).description, desc(&[(Attribute::Colour, "green")]));

        let objects = vec![
            DomainObject::new("a", [(Attribute::Type, "fan"), (Attribute::Colour, "red")]),
            DomainObject::new("b", [(Attribute::Type, "desk"), (Attribute::Colour, "red")]),
            DomainObject::new("c", [(Attribute::Type, "sofa"), (Attribute::Colour, "red")]),
        ];
        let s = Scene::new("t".into(), Domain::Furniture, objects, "a").unwrap();
        let g = gen("GR@p=0", &s);
        assert_eq!(g.description, desc(&[(Attribute::Type, "fan")]));
        assert!(g.distinguishing);
    }

    #[test]
    fn incremental_examples() {
        assert_eq!(
            gen("IA-COS", &fx1()).description,
            desc(&[(Attribute::Colour, "green"), (Attribute::Type, "chair")])
        );
        assert_eq!(
            gen("IA-SCO", &fx1()).description,
            desc(&[(Attribute::Size, "large"), (Attribute::Type, "chair")])
        );
        assert_eq!(
            gen("IA-BGHOATSS@p=0", &fx2()).description,
            desc(&[(Attribute::Beard, "light")])
        );
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "FB",
            "FB+TYPE",
            "GR",
            "IA-COS",
            "IA-GBHOATSS",
            "FB@p=0.25",
            "IA-SOC@p=0.5@seed=42",
            "GR@p=0",
            "FB@seed=9",
        ] {
            let spec: AlgorithmSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<AlgorithmSpec>().unwrap(), spec);
        }
        for bad in ["XX", "IA-", "FB@p=2", "FB@p=0.1@p=0.2", "FB@q=1", "GR@seed=-1", "IA-CQS"] {
            assert!(bad.parse::<AlgorithmSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn batch_reports_domain_mismatch() {
        let c = Corpus::new("fx", vec![fx1(), fx2()], vec![]);
        let spec: AlgorithmSpec = "IA-COS".parse().unwrap();
        let out = run_algorithm(&c, &spec, Usability::default());
        assert_eq!(out.outputs.len(), 1);
        assert!(out.outputs.contains_key(&TrialId::from("FX1")));
        assert!(matches!(
            out.failures.as_slice(),
            [AlgorithmError::DomainMismatch { found: Domain::People, .. }]
        ));
        assert!(run_algorithm(&Corpus::default(), &spec, Usability::default())
            .outputs
            .is_empty());
    }
}
