//! The properties of a target that content selection may choose from.

use alloc::vec::Vec;

use crate::description::Property;
use crate::schema::{Attribute, Usability};
use crate::scene::Scene;

/// A property true of the target, with the distractors it rules out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub property: Property,
    /// Declaration index of the attribute in the scene's schema.
    pub slot: usize,
    pub rules_out: u64,
}

/// Candidates in schema declaration order; within an attribute the target's
/// own value comes first, followed by its generalizations.
pub fn candidates(scene: &Scene, usability: Usability) -> Vec<Candidate> {
    let schema = scene.schema();
    let target = scene.target();
    let mut out = Vec::new();
    for (slot, decl) in schema.attributes.iter().enumerate() {
        if !schema.is_usable(decl.attribute, usability) {
            continue;
        }
        let Some(value) = target.value(decl.attribute) else {
            continue;
        };
        for v in schema.generalizations(decl.attribute, value) {
            let property = Property {
                attribute: decl.attribute,
                value: v,
            };
            let rules_out = scene.rules_out(&property);
            out.push(Candidate {
                property,
                slot,
                rules_out,
            });
        }
    }
    out
}

/// Every usable-attribute property that is true of the target.
pub fn candidate_universe(scene: &Scene, usability: Usability) -> Vec<Property> {
    candidates(scene, usability)
        .into_iter()
        .map(|c| c.property)
        .collect()
}

pub(crate) fn shares_attribute(chosen: &[&Candidate], attribute: Attribute) -> bool {
    chosen.iter().any(|c| c.property.attribute == attribute)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fx1, fx2};
    use crate::schema::{Domain, Value};
    use crate::scene::DomainObject;
    use Attribute::*;

    #[test]
    fn fx1_universe() {
        let u = candidate_universe(&fx1(), Usability::default());
        assert_eq!(
            u,
            [
                Property::new(Type, "chair"),
                Property::new(Colour, "green"),
                Property::new(Orientation, "front"),
                Property::new(Size, "large"),
            ]
        );
    }

    #[test]
    fn fx2_universe_expands_presence() {
        let u = candidate_universe(&fx2(), Usability::default());
        assert!(u.contains(&Property::new(Beard, "light")));
        assert!(u.contains(&Property::new(Beard, "present")));
        assert!(u.contains(&Property::new(Hair, "present")));
        assert_eq!(u.len(), 7);
    }

    #[test]
    fn identical_objects_still_have_candidates() {
        let attrs = [(Type, "fan"), (Colour, "red"), (Size, "small"), (Orientation, "back")];
        let s = Scene::new(
            "twin".into(),
            Domain::Furniture,
            alloc::vec![DomainObject::new("a", attrs), DomainObject::new("b", attrs)],
            "a",
        )
        .unwrap();
        let c = candidates(&s, Usability::default());
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.rules_out == 0));
        assert_eq!(c[0].property.value, Value::new("fan"));
    }
}
