//! Property sets: the unit every algorithm produces and every metric consumes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::DomainError;
use crate::schema::{Attribute, Value};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Property {
    pub attribute: Attribute,
    pub value: Value,
}

impl Property {
    pub fn new(attribute: Attribute, value: impl Into<Value>) -> Self {
        Property {
            attribute,
            value: value.into(),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute, self.value)
    }
}

/// A name/value pair exactly as it appeared in an annotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawProperty {
    pub name: String,
    pub value: String,
}

impl RawProperty {
    pub fn new(name: impl Into<String>, value: impl Into<String>) -> Self {
        RawProperty {
            name: name.into(),
            value: value.into(),
        }
    }
}

/// A set of properties with at most one value per attribute.
///
/// Annotations that do not map onto a known attribute are kept verbatim in
/// [`Description::other`]; together they count as the single attribute
/// OTHER.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Description {
    properties: BTreeMap<Attribute, Value>,
    other: Vec<RawProperty>,
}

impl Description {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_properties<I>(props: I) -> Result<Self, DomainError>
    where
        I: IntoIterator<Item = Property>,
    {
        let mut d = Description::new();
        for p in props {
            d.insert(p)?;
        }
        Ok(d)
    }

    /// Adds a property; a second value for the same attribute is an error.
    pub fn insert(&mut self, property: Property) -> Result<(), DomainError> {
        if property.attribute == Attribute::Other {
            self.other
                .push(RawProperty::new("OTHER", property.value.as_str()));
            return Ok(());
        }
        if self.properties.contains_key(&property.attribute) {
            return Err(DomainError::DuplicateAttribute {
                attribute: property.attribute,
            });
        }
        self.properties.insert(property.attribute, property.value);
        Ok(())
    }

    pub fn push_other(&mut self, raw: RawProperty) {
        self.other.push(raw);
    }

    pub fn get(&self, attribute: Attribute) -> Option<&Value> {
        self.properties.get(&attribute)
    }

    pub fn contains(&self, attribute: Attribute) -> bool {
        self.properties.contains_key(&attribute)
    }

    pub fn remove(&mut self, attribute: Attribute) -> Option<Value> {
        self.properties.remove(&attribute)
    }

    /// Number of known-attribute properties (OTHER entries excluded).
    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty() && self.other.is_empty()
    }

    pub fn properties(&self) -> impl Iterator<Item = Property> + '_ {
        self.properties.iter().map(|(a, v)| Property {
            attribute: *a,
            value: v.clone(),
        })
    }

    pub fn other(&self) -> &[RawProperty] {
        &self.other
    }

    pub fn has_other(&self) -> bool {
        !self.other.is_empty()
    }

    /// Attribute names expressed, with OTHER present once if any unknown
    /// annotation was carried along.
    pub fn attribute_names(&self) -> BTreeSet<Attribute> {
        let mut names: BTreeSet<Attribute> = self.properties.keys().copied().collect();
        if self.has_other() {
            names.insert(Attribute::Other);
        }
        names
    }

    /// Merged-form name/value pairs, known properties sorted by name then
    /// OTHER entries in their original order.
    pub fn to_raw(&self) -> Vec<RawProperty> {
        let mut known: Vec<RawProperty> = self
            .properties
            .iter()
            .map(|(a, v)| RawProperty::new(a.name(), v.as_str()))
            .collect();
        known.sort();
        known.extend(self.other.iter().cloned());
        known
    }
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, raw) in self.to_raw().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", raw.name, raw.value)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct PresenceParts {
    has: Option<Value>,
    colour: Option<Value>,
}

impl PresenceParts {
    fn resolve(self, attribute: Attribute) -> Result<Option<Value>, DomainError> {
        let has = match self.has.as_ref().map(Value::as_str) {
            None => None,
            Some("0") => Some(false),
            Some("1") => Some(true),
            Some(_) => {
                return Err(DomainError::ValueOutsideUniverse {
                    attribute,
                    value: self.has.unwrap(),
                })
            }
        };
        match (has, self.colour) {
            (Some(false), Some(_)) => Err(DomainError::Inconsistent { attribute }),
            (Some(false), None) => Ok(Some(Value::new("none"))),
            (_, Some(colour)) => Ok(Some(colour)),
            (Some(true), None) => Ok(Some(Value::new("present"))),
            (None, None) => Ok(None),
        }
    }
}

enum RawSlot {
    HasHair,
    HairColour,
    HasBeard,
    BeardColour,
}

fn raw_slot(name: &str) -> Option<RawSlot> {
    match name.trim().to_ascii_lowercase().as_str() {
        "hashair" => Some(RawSlot::HasHair),
        "haircolour" | "haircolor" => Some(RawSlot::HairColour),
        "hasbeard" => Some(RawSlot::HasBeard),
        "beardcolour" | "beardcolor" => Some(RawSlot::BeardColour),
        _ => None,
    }
}

fn set_once(slot: &mut Option<Value>, raw: &RawProperty) -> Result<(), DomainError> {
    if slot.is_some() {
        return Err(DomainError::DuplicateRawAttribute {
            name: raw.name.clone(),
        });
    }
    *slot = Some(Value::new(&raw.value));
    Ok(())
}

/// Folds the raw `hasHair`/`hairColour` and `hasBeard`/`beardColour`
/// annotations into the merged `Hair` and `Beard` attributes.
///
/// A colour implies presence; `has*=0` alone gives `none`; `has*=1` alone
/// gives `present`. Names outside both schemas are kept as OTHER entries.
pub fn merge_raw_properties(raw: &[RawProperty]) -> Result<Description, DomainError> {
    let mut out = Description::new();
    let mut hair = PresenceParts::default();
    let mut beard = PresenceParts::default();

    for r in raw {
        if let Some(slot) = raw_slot(&r.name) {
            match slot {
                RawSlot::HasHair => set_once(&mut hair.has, r)?,
                RawSlot::HairColour => set_once(&mut hair.colour, r)?,
                RawSlot::HasBeard => set_once(&mut beard.has, r)?,
                RawSlot::BeardColour => set_once(&mut beard.colour, r)?,
            }
            continue;
        }
        match Attribute::from_name(&r.name) {
            Some(Attribute::Other) | None => out.push_other(r.clone()),
            Some(attribute) => out.insert(Property::new(attribute, r.value.as_str()))?,
        }
    }

    for (attribute, parts) in [(Attribute::Hair, hair), (Attribute::Beard, beard)] {
        if let Some(value) = parts.resolve(attribute)? {
            out.insert(Property { attribute, value })?;
        }
    }
    Ok(out)
}
