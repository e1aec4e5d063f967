//! Two small reference scenes used throughout the tests and examples.
//!
//! `FX1` (furniture) has two disjoint minimal descriptions,
//! `{COLOUR=green}` and `{SIZE=large}`. `FX2` (people) exercises the merged
//! Beard/Hair values.

use alloc::vec;

use crate::schema::{Attribute, Domain};
use crate::scene::{DomainObject, Scene};

use Attribute::*;

pub fn fx1() -> Scene {
    let objects = vec![
        DomainObject::new(
            "o1",
            [(Type, "chair"), (Colour, "green"), (Size, "large"), (Orientation, "front")],
        ),
        DomainObject::new(
            "o2",
            [(Type, "chair"), (Colour, "red"), (Size, "small"), (Orientation, "front")],
        ),
        DomainObject::new(
            "o3",
            [(Type, "sofa"), (Colour, "blue"), (Size, "small"), (Orientation, "left")],
        ),
        DomainObject::new(
            "o4",
            [(Type, "desk"), (Colour, "grey"), (Size, "small"), (Orientation, "back")],
        ),
    ];
    Scene::new("FX1".into(), Domain::Furniture, objects, "o1").expect("FX1 is well-formed")
}

pub fn fx2() -> Scene {
    let objects = vec![
        DomainObject::new(
            "p1",
            [(Type, "person"), (Beard, "light"), (Hair, "dark"), (HasGlasses, "1"), (Age, "old")],
        ),
        DomainObject::new(
            "p2",
            [(Type, "person"), (Beard, "none"), (Hair, "light"), (HasGlasses, "1"), (Age, "old")],
        ),
        DomainObject::new(
            "p3",
            [(Type, "person"), (Beard, "dark"), (Hair, "none"), (HasGlasses, "0"), (Age, "young")],
        ),
    ];
    Scene::new("FX2".into(), Domain::People, objects, "p1").expect("FX2 is well-formed")
}
