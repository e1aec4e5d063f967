//! The annotated RE record format: a JSON array of records with the keys
//! `sno`, `subject_id`, `object`, `trial_id` and `utt`.
//!
//! ```json
//! { "sno": "Object", "subject_id": "2",
//!   "object": [{ "attributes": [{"name": "COLOUR", "value": "dark"}] }],
//!   "trial_id": "1", "utt": "..." }
//! ```

use regkit_core::{merge_raw_properties, AnnotatedRE, Position, RawProperty, TrialId};
use serde::Serialize;
use serde_json::{Map, Value as Json};

use super::{scalar, FormatError};

const KEYS: [&str; 5] = ["sno", "subject_id", "object", "trial_id", "utt"];

/// A record that could not be turned into an [`AnnotatedRE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordError {
    pub index: usize,
    pub message: String,
}

impl std::fmt::Display for RecordError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "record {}: {}", self.index, self.message)
    }
}

/// Every input record lands in exactly one of `records` or `errors`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedRecords {
    pub records: Vec<AnnotatedRE>,
    pub errors: Vec<RecordError>,
    pub warnings: Vec<String>,
}

pub fn parse_re_records(doc: &str) -> Result<ParsedRecords, FormatError> {
    let json: Json = serde_json::from_str(doc).map_err(|e| FormatError::Json(e.to_string()))?;
    let Json::Array(items) = json else {
        return Err(FormatError::Shape("expected an array of records".into()));
    };
    let mut out = ParsedRecords::default();
    for (index, item) in items.iter().enumerate() {
        match parse_record(item, index, &mut out.warnings) {
            Ok(re) => out.records.push(re),
            Err(message) => out.errors.push(RecordError { index, message }),
        }
    }
    Ok(out)
}

fn field<'a>(obj: &'a Map<String, Json>, key: &str) -> Result<&'a Json, String> {
    obj.get(key).ok_or_else(|| format!("missing key `{key}`"))
}

fn parse_record(item: &Json, index: usize, warnings: &mut Vec<String>) -> Result<AnnotatedRE, String> {
    let Json::Object(obj) = item else {
        return Err("record is not an object".into());
    };
    for key in obj.keys().filter(|k| !KEYS.contains(&k.as_str())) {
        warnings.push(format!("record {index}: ignoring unknown key `{key}`"));
    }
    let text = |key: &str| -> Result<String, String> {
        scalar(field(obj, key)?).ok_or_else(|| format!("`{key}` is not a string"))
    };
    let position: Position = text("sno")?
        .parse()
        .map_err(|e: regkit_core::corpus::UnknownPosition| format!("bad `sno` value `{}`", e.0))?;

    let Json::Array(objects) = field(obj, "object")? else {
        return Err("`object` is not an array".into());
    };
    let referent = match objects.as_slice() {
        [one] => one,
        [] => return Err("`object` is empty".into()),
        _ => return Err(format!("plural reference ({} objects) is not supported", objects.len())),
    };
    let attributes = referent
        .get("attributes")
        .and_then(Json::as_array)
        .ok_or("`object[0].attributes` is not an array")?;
    let mut raw = Vec::with_capacity(attributes.len());
    for a in attributes {
        let name = a.get("name").and_then(scalar).ok_or("attribute without a `name`")?;
        let value = a.get("value").and_then(scalar).ok_or("attribute without a `value`")?;
        raw.push(RawProperty::new(name, value));
    }
    let description = merge_raw_properties(&raw).map_err(|e| e.to_string())?;

    Ok(AnnotatedRE {
        trial: TrialId::new(text("trial_id")?),
        participant: text("subject_id")?,
        position,
        utterance: text("utt")?,
        description,
    })
}

#[derive(Serialize)]
struct AttributeOut<'a> {
    name: &'a str,
    value: &'a str,
}

#[derive(Serialize)]
struct ObjectOut<'a> {
    attributes: Vec<AttributeOut<'a>>,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    sno: &'a str,
    subject_id: &'a str,
    object: [ObjectOut<'a>; 1],
    trial_id: &'a str,
    utt: &'a str,
}

/// Canonical form: attributes in merged names, known attributes sorted by
/// name, then OTHER entries in their original order.
pub fn serialize_re_records(records: &[AnnotatedRE]) -> String {
    let raws: Vec<Vec<RawProperty>> = records.iter().map(|r| r.description.to_raw()).collect();
    let out: Vec<RecordOut<'_>> = records
        .iter()
        .zip(&raws)
        .map(|(r, raw)| RecordOut {
            sno: r.position.as_str(),
            subject_id: &r.participant,
            object: [ObjectOut {
                attributes: raw
                    .iter()
                    .map(|p| AttributeOut {
                        name: &p.name,
                        value: &p.value,
                    })
                    .collect(),
            }],
            trial_id: r.trial.as_str(),
            utt: &r.utterance,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&out).expect("records serialize");
    s.push('\n');
    s
}
