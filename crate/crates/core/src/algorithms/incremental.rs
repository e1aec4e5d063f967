//! Preference orders and the incremental scan over them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::AlgorithmError;
use crate::description::{Description, Property};
use crate::schema::{Attribute, Domain, Usability};
use crate::scene::Scene;

/// How single letters in an order code map to people-domain attributes.
///
/// `Standard` reads B as Beard and G as hasGlasses. `CaptionGloss` swaps
/// the two. In both, the first S is hasShirt and the second hasSuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LetterMap {
    #[default]
    Standard,
    CaptionGloss,
}

pub const FURNITURE_PRESETS: [&str; 6] = ["COS", "CSO", "OCS", "SCO", "OSC", "SOC"];

pub const PEOPLE_PRESETS: [&str; 7] = [
    "GBHOATSS", "BGHOATSS", "GHBOATSS", "BHGOATSS", "HGBOATSS", "HBGOATSS", "SSTAOHBG",
];

/// A ranking of attributes for the incremental algorithm.
///
/// Holds every usable non-TYPE, non-location attribute of its domain
/// exactly once; TYPE and enabled location attributes may also appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceOrder {
    domain: Domain,
    attributes: Vec<Attribute>,
    code: String,
}

impl PreferenceOrder {
    pub fn new(
        domain: Domain,
        attributes: Vec<Attribute>,
        usability: Usability,
    ) -> Result<Self, AlgorithmError> {
        let schema = domain.schema();
        for (i, a) in attributes.iter().enumerate() {
            if attributes[..i].contains(a) {
                return Err(AlgorithmError::InvalidOrder(alloc::format!("{a} listed twice")));
            }
            if !schema.is_usable(*a, usability) {
                return Err(AlgorithmError::InvalidOrder(alloc::format!(
                    "{a} is not a usable {domain} attribute"
                )));
            }
        }
        for a in schema.usable_attributes(Usability::default()) {
            if a != Attribute::Type && !attributes.contains(&a) {
                return Err(AlgorithmError::InvalidOrder(alloc::format!("{a} missing")));
            }
        }
        let code = attributes.iter().map(|a| letter(*a)).collect();
        Ok(PreferenceOrder {
            domain,
            attributes,
            code,
        })
    }

    /// Parses a letter code such as `COS` or `GBHOATSS`. Codes written only
    /// in C, O and S are furniture orders; everything else is read as people.
    pub fn from_code(code: &str, letters: LetterMap) -> Result<Self, AlgorithmError> {
        let code = code.trim().to_ascii_uppercase();
        let furniture = !code.is_empty() && code.chars().all(|c| matches!(c, 'C' | 'O' | 'S'));
        let mut seen_s = false;
        let mut attributes = Vec::with_capacity(code.len());
        for ch in code.chars() {
            let a = if furniture {
                match ch {
                    'C' => Attribute::Colour,
                    'O' => Attribute::Orientation,
                    _ => Attribute::Size,
                }
            } else {
                match (ch, letters) {
                    ('B', LetterMap::Standard) | ('G', LetterMap::CaptionGloss) => Attribute::Beard,
                    ('G', LetterMap::Standard) | ('B', LetterMap::CaptionGloss) => {
                        Attribute::HasGlasses
                    }
                    ('H', _) => Attribute::Hair,
                    ('O', _) => Attribute::Orientation,
                    ('A', _) => Attribute::Age,
                    ('T', _) => Attribute::HasTie,
                    ('S', _) if !seen_s => {
                        seen_s = true;
                        Attribute::HasShirt
                    }
                    ('S', _) => Attribute::HasSuit,
                    _ => return Err(AlgorithmError::UnknownLetter(ch)),
                }
            };
            attributes.push(a);
        }
        let domain = if furniture {
            Domain::Furniture
        } else {
            Domain::People
        };
        let mut order = PreferenceOrder::new(domain, attributes, Usability::default())?;
        order.code = code;
        Ok(order)
    }

    pub fn furniture_presets() -> Vec<PreferenceOrder> {
        FURNITURE_PRESETS
            .iter()
            .map(|c| PreferenceOrder::from_code(c, LetterMap::Standard).expect("valid preset"))
            .collect()
    }

    pub fn people_presets(letters: LetterMap) -> Vec<PreferenceOrder> {
        PEOPLE_PRESETS
            .iter()
            .map(|c| PreferenceOrder::from_code(c, letters).expect("valid preset"))
            .collect()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn code(&self) -> &str {
        &self.code
    }
}

impl fmt::Display for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

fn letter(a: Attribute) -> char {
    match a {
        Attribute::Colour => 'C',
        Attribute::Orientation => 'O',
        Attribute::Size | Attribute::HasShirt | Attribute::HasSuit => 'S',
        Attribute::Beard => 'B',
        Attribute::HasGlasses => 'G',
        Attribute::Hair => 'H',
        Attribute::Age => 'A',
        Attribute::HasTie => 'T',
        Attribute::Type => 'Y',
        Attribute::XDimension => 'X',
        Attribute::YDimension => 'Z',
        Attribute::Other => '?',
    }
}

/// Scans attributes in order, keeping the target's own value for any
/// attribute that rules out at least one remaining distractor.
pub(crate) fn select(scene: &Scene, order: &PreferenceOrder) -> (Description, bool) {
    let mut remaining = scene.distractor_mask();
    let mut d = Description::new();
    for &attribute in &order.attributes {
        if remaining == 0 {
            break;
        }
        let Some(value) = scene.target().value(attribute) else {
            continue;
        };
        let p = Property {
            attribute,
            value: value.clone(),
        };
        let out = scene.rules_out(&p) & remaining;
        if out != 0 {
            remaining &= !out;
            d.insert(p).expect("attributes are unique in an order");
        }
    }
    (d, remaining == 0)
}
