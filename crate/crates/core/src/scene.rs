//! Objects, scenes, and the truth relation between properties and objects.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::description::{Description, Property};
use crate::error::DomainError;
use crate::schema::{Attribute, Domain, DomainSchema, Value};

/// Scenes are limited to this many objects so that object sets fit a `u64`.
pub const MAX_OBJECTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrialId(pub String);

impl TrialId {
    pub fn new(id: impl Into<String>) -> Self {
        TrialId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TrialId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for TrialId {
    fn from(s: &str) -> Self {
        TrialId(s.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainObject {
    pub id: String,
    pub values: BTreeMap<Attribute, Value>,
}

impl DomainObject {
    pub fn new<I, V>(id: impl Into<String>, values: I) -> Self
    where
        I: IntoIterator<Item = (Attribute, V)>,
        V: Into<Value>,
    {
        DomainObject {
            id: id.into(),
            values: values.into_iter().map(|(a, v)| (a, v.into())).collect(),
        }
    }

    pub fn value(&self, attribute: Attribute) -> Option<&Value> {
        self.values.get(&attribute)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("scene {trial}: needs at least two objects, found {found}")]
    TooFewObjects { trial: TrialId, found: usize },
    #[error("scene {trial}: at most {MAX_OBJECTS} objects are supported, found {found}")]
    TooManyObjects { trial: TrialId, found: usize },
    #[error("scene {trial}: duplicate object id {id:?}")]
    DuplicateObject { trial: TrialId, id: String },
    #[error("scene {trial}: no target given")]
    MissingTarget { trial: TrialId },
    #[error("scene {trial}: target {id:?} is not one of its objects")]
    UnknownTarget { trial: TrialId, id: String },
    #[error("scene {trial}: plural targets are not supported")]
    PluralTarget { trial: TrialId },
    #[error("scene {trial}, object {object:?}: {source}")]
    Domain {
        trial: TrialId,
        object: String,
        source: DomainError,
    },
}

/// True iff the object's ground value equals, or is subsumed by, the
/// property's value. An object with no value for the attribute does not
/// satisfy the property.
pub fn true_of(p: &Property, o: &DomainObject, schema: &DomainSchema) -> Result<bool, DomainError> {
    if !schema.declares(p.attribute) {
        return Err(DomainError::SchemaMismatch {
            attribute: p.attribute,
            domain: schema.domain,
        });
    }
    Ok(holds(p, o, schema))
}

pub(crate) fn holds(p: &Property, o: &DomainObject, schema: &DomainSchema) -> bool {
    o.value(p.attribute)
        .is_some_and(|v| schema.subsumed_by(p.attribute, v, &p.value))
}

/// One trial: its objects (sorted by id) and the single target referent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    trial: TrialId,
    domain: Domain,
    objects: Vec<DomainObject>,
    target: usize,
}

impl Scene {
    pub fn new(
        trial: TrialId,
        domain: Domain,
        mut objects: Vec<DomainObject>,
        target_id: &str,
    ) -> Result<Scene, SceneError> {
        if objects.len() < 2 {
            return Err(SceneError::TooFewObjects {
                trial,
                found: objects.len(),
            });
        }
        if objects.len() > MAX_OBJECTS {
            return Err(SceneError::TooManyObjects {
                trial,
                found: objects.len(),
            });
        }
        objects.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = objects.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(SceneError::DuplicateObject {
                trial,
                id: w[0].id.clone(),
            });
        }
        let schema = domain.schema();
        for o in &objects {
            for (a, v) in &o.values {
                schema.check_value(*a, v).map_err(|source| SceneError::Domain {
                    trial: trial.clone(),
                    object: o.id.clone(),
                    source,
                })?;
            }
        }
        let target = objects
            .iter()
            .position(|o| o.id == target_id)
            .ok_or_else(|| SceneError::UnknownTarget {
                trial: trial.clone(),
                id: target_id.into(),
            })?;
        Ok(Scene {
            trial,
            domain,
            objects,
            target,
        })
    }

    pub fn trial(&self) -> &TrialId {
        &self.trial
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn schema(&self) -> &'static DomainSchema {
        self.domain.schema()
    }

    pub fn objects(&self) -> &[DomainObject] {
        &self.objects
    }

    pub fn target(&self) -> &DomainObject {
        &self.objects[self.target]
    }

    pub fn target_index(&self) -> usize {
        self.target
    }

    pub fn distractors(&self) -> impl Iterator<Item = &DomainObject> {
        self.objects
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.target)
            .map(|(_, o)| o)
    }

    /// Bit `i` set for every distractor `i`.
    pub fn distractor_mask(&self) -> u64 {
        let all = if self.objects.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.objects.len()) - 1
        };
        all & !(1u64 << self.target)
    }

    /// Distractors the property is not true of.
    pub fn rules_out(&self, p: &Property) -> u64 {
        let schema = self.schema();
        let mut mask = 0;
        for (i, o) in self.objects.iter().enumerate() {
            if i != self.target && !holds(p, o, schema) {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn true_of_target(&self, p: &Property) -> Result<bool, DomainError> {
        true_of(p, self.target(), self.schema())
    }

    /// Every property is true of the target and each distractor falsifies at
    /// least one of them. OTHER entries carry no truth conditions and are
    /// ignored.
    pub fn distinguishes(&self, d: &Description) -> Result<bool, DomainError> {
        let mut remaining = self.distractor_mask();
        let mut all_true = true;
        for p in d.properties() {
            all_true &= self.true_of_target(&p)?;
            remaining &= !self.rules_out(&p);
        }
        Ok(all_true && remaining == 0)
    }

    /// Attributes of the schema that some object of this scene lacks.
    pub fn missing_values(&self, required: &BTreeSet<Attribute>) -> Vec<(String, Attribute)> {
        let mut out = Vec::new();
        for o in &self.objects {
            for a in required {
                if o.value(*a).is_none() {
                    out.push((o.id.clone(), *a));
                }
            }
        }
        out
    }
}
