//! The scene file: a JSON array of scenes, each with `trial_id`, `domain`,
//! `target` and `objects`, where every object is `{id, attributes}` and
//! `attributes` maps attribute names to values.
//!
//! ```json
//! [{ "trial_id": "FX1", "domain": "furniture", "target": "o1",
//!    "objects": [{ "id": "o1", "attributes": { "COLOUR": "green", "TYPE": "chair" } }] }]
//! ```

use std::collections::BTreeMap;

use regkit_core::scene::SceneError;
use regkit_core::{Attribute, Domain, DomainObject, Scene, TrialId};
use serde::{Deserialize, Serialize};

use super::{scalar, FormatError};

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetIn {
    One(String),
    Many(Vec<String>),
}

#[derive(Deserialize)]
struct ObjectIn {
    id: String,
    #[serde(default)]
    attributes: BTreeMap<String, serde_json::Value>,
}

#[derive(Deserialize)]
struct SceneIn {
    trial_id: String,
    domain: String,
    target: Option<TargetIn>,
    objects: Vec<ObjectIn>,
}

#[derive(Serialize)]
struct ObjectOut<'a> {
    id: &'a str,
    attributes: BTreeMap<&'static str, &'a str>,
}

#[derive(Serialize)]
struct SceneOut<'a> {
    trial_id: &'a str,
    domain: &'static str,
    target: &'a str,
    objects: Vec<ObjectOut<'a>>,
}

fn build(s: SceneIn) -> Result<Scene, FormatError> {
    let trial = TrialId::new(s.trial_id);
    let domain: Domain = s.domain.parse().map_err(|e: regkit_core::DomainError| FormatError::Scene {
        trial: trial.clone(),
        message: e.to_string(),
    })?;
    let target = match s.target {
        None => return Err(SceneError::MissingTarget { trial }.into()),
        Some(TargetIn::One(t)) => t,
        Some(TargetIn::Many(ts)) => match <[String; 1]>::try_from(ts) {
            Ok([t]) => t,
            Err(ts) if ts.is_empty() => return Err(SceneError::MissingTarget { trial }.into()),
            Err(_) => return Err(SceneError::PluralTarget { trial }.into()),
        },
    };
    let mut objects = Vec::with_capacity(s.objects.len());
    for o in s.objects {
        let mut values = Vec::with_capacity(o.attributes.len());
        for (name, value) in o.attributes {
            let attribute = Attribute::from_name(&name).ok_or_else(|| FormatError::Scene {
                trial: trial.clone(),
                message: format!("object {:?}: unknown attribute {name:?}", o.id),
            })?;
            let value = scalar(&value).ok_or_else(|| FormatError::Scene {
                trial: trial.clone(),
                message: format!("object {:?}: {name} is not a scalar value", o.id),
            })?;
            values.push((attribute, value));
        }
        objects.push(DomainObject::new(
            o.id,
            values.iter().map(|(a, v)| (*a, v.as_str())),
        ));
    }
    Ok(Scene::new(trial, domain, objects, &target)?)
}

pub fn parse_scene_file(doc: &str) -> Result<Vec<Scene>, FormatError> {
    let items: Vec<serde_json::Value> =
        serde_json::from_str(doc).map_err(|e| FormatError::Json(e.to_string()))?;
    items
        .into_iter()
        .enumerate()
        .map(|(index, item)| {
            let s: SceneIn = serde_json::from_value(item).map_err(|e| FormatError::Record {
                index,
                message: e.to_string(),
            })?;
            build(s)
        })
        .collect()
}

/// Canonical form: scenes in the given order, objects sorted by id, and
/// attribute names sorted lexicographically.
pub fn serialize_scenes(scenes: &[Scene]) -> String {
    let out: Vec<SceneOut<'_>> = scenes
        .iter()
        .map(|s| SceneOut {
            trial_id: s.trial().as_str(),
            domain: s.domain().as_str(),
            target: &s.target().id,
            objects: s
                .objects()
                .iter()
                .map(|o| ObjectOut {
                    id: &o.id,
                    attributes: o.values.iter().map(|(a, v)| (a.name(), v.as_str())).collect(),
                })
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&out).expect("scenes serialize");
    s.push('\n');
    s
}
