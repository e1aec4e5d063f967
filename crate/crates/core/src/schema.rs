//! Attribute vocabulary for the furniture and people domains.
//!
//! Both schemas are static tables. Values are lowercase strings; the only
//! non-trivial subsumption is on the merged `Beard` and `Hair` attributes,
//! where `dark` and `light` are both more specific than `present`.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::DomainError;

/// Which family of scenes a trial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    Furniture,
    People,
}

impl Domain {
    pub const ALL: [Domain; 2] = [Domain::Furniture, Domain::People];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Furniture => "furniture",
            Domain::People => "people",
        }
    }

    pub fn schema(self) -> &'static DomainSchema {
        match self {
            Domain::Furniture => &FURNITURE,
            Domain::People => &PEOPLE,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Domain {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "furniture" => Ok(Domain::Furniture),
            "people" => Ok(Domain::People),
            _ => Err(DomainError::UnknownDomain(s.into())),
        }
    }
}

/// Every attribute name known to either schema, in merged form.
///
/// The derived `Ord` is declaration order here, which is not the schema
/// order of either domain; use [`DomainSchema::index_of`] for that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attribute {
    Type,
    Colour,
    Orientation,
    Size,
    Age,
    Beard,
    Hair,
    HasGlasses,
    HasShirt,
    HasTie,
    HasSuit,
    XDimension,
    YDimension,
    Other,
}

impl Attribute {
    pub const ALL: [Attribute; 14] = [
        Attribute::Type,
        Attribute::Colour,
        Attribute::Orientation,
        Attribute::Size,
        Attribute::Age,
        Attribute::Beard,
        Attribute::Hair,
        Attribute::HasGlasses,
        Attribute::HasShirt,
        Attribute::HasTie,
        Attribute::HasSuit,
        Attribute::XDimension,
        Attribute::YDimension,
        Attribute::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Type => "TYPE",
            Attribute::Colour => "COLOUR",
            Attribute::Orientation => "ORIENTATION",
            Attribute::Size => "SIZE",
            Attribute::Age => "AGE",
            Attribute::Beard => "Beard",
            Attribute::Hair => "Hair",
            Attribute::HasGlasses => "hasGlasses",
            Attribute::HasShirt => "hasShirt",
            Attribute::HasTie => "hasTie",
            Attribute::HasSuit => "hasSuit",
            Attribute::XDimension => "X-DIMENSION",
            Attribute::YDimension => "Y-DIMENSION",
            Attribute::Other => "OTHER",
        }
    }

    /// Case-insensitive lookup of a merged attribute name.
    pub fn from_name(name: &str) -> Option<Attribute> {
        let name = name.trim();
        Attribute::ALL
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(name))
    }

    pub fn is_location(self) -> bool {
        matches!(self, Attribute::XDimension | Attribute::YDimension)
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An attribute value, lowercased and trimmed on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(String);

impl Value {
    pub fn new(raw: &str) -> Self {
        Value(raw.trim().to_lowercase())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Value {
    fn from(raw: &str) -> Self {
        Value::new(raw)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    Symbols(&'static [&'static str]),
    /// No fixed value set (OTHER).
    Free,
}

impl Universe {
    pub fn contains(&self, value: &Value) -> bool {
        match self {
            Universe::Symbols(values) => values.contains(&value.as_str()),
            Universe::Free => true,
        }
    }

    pub fn position(&self, value: &Value) -> Option<usize> {
        match self {
            Universe::Symbols(values) => values.iter().position(|v| *v == value.as_str()),
            Universe::Free => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AttributeDecl {
    pub attribute: Attribute,
    pub universe: Universe,
    /// Whether content-selection algorithms may use the attribute by default.
    pub usable: bool,
}

/// Which attributes a selection run may draw on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Usability {
    /// Admit X-DIMENSION and Y-DIMENSION as selectable attributes.
    pub location: bool,
}

#[derive(Debug, PartialEq, Eq)]
pub struct DomainSchema {
    pub domain: Domain,
    pub attributes: &'static [AttributeDecl],
}

const BINARY: Universe = Universe::Symbols(&["0", "1"]);
const MERGED_PRESENCE: Universe = Universe::Symbols(&["none", "present", "dark", "light"]);
const X_RANGE: Universe = Universe::Symbols(&["1", "2", "3", "4", "5"]);
const Y_RANGE: Universe = Universe::Symbols(&["1", "2", "3"]);

const fn decl(attribute: Attribute, universe: Universe, usable: bool) -> AttributeDecl {
    AttributeDecl {
        attribute,
        universe,
        usable,
    }
}

pub static FURNITURE: DomainSchema = DomainSchema {
    domain: Domain::Furniture,
    attributes: &[
        decl(
            Attribute::Type,
            Universe::Symbols(&["chair", "sofa", "desk", "fan"]),
            true,
        ),
        decl(
            Attribute::Colour,
            Universe::Symbols(&["blue", "red", "green", "grey"]),
            true,
        ),
        decl(
            Attribute::Orientation,
            Universe::Symbols(&["front", "back", "left", "right"]),
            true,
        ),
        decl(Attribute::Size, Universe::Symbols(&["large", "small"]), true),
        decl(Attribute::XDimension, X_RANGE, false),
        decl(Attribute::YDimension, Y_RANGE, false),
        decl(Attribute::Other, Universe::Free, false),
    ],
};

pub static PEOPLE: DomainSchema = DomainSchema {
    domain: Domain::People,
    attributes: &[
        decl(Attribute::Type, Universe::Symbols(&["person"]), true),
        decl(Attribute::Age, Universe::Symbols(&["young", "old"]), true),
        decl(
            Attribute::Orientation,
            Universe::Symbols(&["front", "left", "right"]),
            true,
        ),
        decl(Attribute::Beard, MERGED_PRESENCE, true),
        decl(Attribute::Hair, MERGED_PRESENCE, true),
        decl(Attribute::HasGlasses, BINARY, true),
        decl(Attribute::HasShirt, BINARY, true),
        decl(Attribute::HasTie, BINARY, true),
        decl(Attribute::HasSuit, BINARY, true),
        decl(Attribute::XDimension, X_RANGE, false),
        decl(Attribute::YDimension, Y_RANGE, false),
        decl(Attribute::Other, Universe::Free, false),
    ],
};

impl DomainSchema {
    pub fn index_of(&self, attribute: Attribute) -> Option<usize> {
        self.attributes.iter().position(|d| d.attribute == attribute)
    }

    pub fn decl(&self, attribute: Attribute) -> Option<&AttributeDecl> {
        self.attributes.iter().find(|d| d.attribute == attribute)
    }

    pub fn declares(&self, attribute: Attribute) -> bool {
        self.index_of(attribute).is_some()
    }

    pub fn is_usable(&self, attribute: Attribute, usability: Usability) -> bool {
        match self.decl(attribute) {
            Some(d) if attribute == Attribute::Other => d.usable,
            Some(d) => d.usable || (usability.location && attribute.is_location()),
            None => false,
        }
    }

    /// Usable attributes in declaration order.
    pub fn usable_attributes(&self, usability: Usability) -> impl Iterator<Item = Attribute> + '_ {
        self.attributes
            .iter()
            .map(|d| d.attribute)
            .filter(move |a| self.is_usable(*a, usability))
    }

    pub fn check_value(&self, attribute: Attribute, value: &Value) -> Result<(), DomainError> {
        let decl = self.decl(attribute).ok_or(DomainError::SchemaMismatch {
            attribute,
            domain: self.domain,
        })?;
        if decl.universe.contains(value) {
            Ok(())
        } else {
            Err(DomainError::ValueOutsideUniverse {
                attribute,
                value: value.clone(),
            })
        }
    }

    /// `specific ⊑ general` for values of `attribute`.
    pub fn subsumed_by(&self, attribute: Attribute, specific: &Value, general: &Value) -> bool {
        if specific == general {
            return true;
        }
        matches!(attribute, Attribute::Beard | Attribute::Hair)
            && self.declares(attribute)
            && general.as_str() == "present"
            && matches!(specific.as_str(), "dark" | "light")
    }

    /// `value` followed by every strictly more general value, in universe order.
    pub fn generalizations(&self, attribute: Attribute, value: &Value) -> alloc::vec::Vec<Value> {
        let mut out = alloc::vec![value.clone()];
        if let Some(Universe::Symbols(values)) = self.decl(attribute).map(|d| d.universe) {
            for v in values.iter().map(|v| Value::new(v)) {
                if v != *value && self.subsumed_by(attribute, value, &v) {
                    out.push(v);
                }
            }
        }
        out
    }
}
