//! Definition-literal reference implementations used by the test suites.
//!
//! Nothing here shares code with the bitmask search in the library: truth
//! is checked object by object with `true_of`, and subsets of the candidate
//! universe are enumerated by counting.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use regkit_core::analysis::SpecificationCategory;
use regkit_core::schema::Universe;
use regkit_core::{
    true_of, AnnotatedRE, Attribute, Description, Domain, DomainObject, Position, Property,
    RawProperty, Scene, TrialId, Usability,
};

pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }
}

fn symbols(domain: Domain, attribute: Attribute) -> &'static [&'static str] {
    match domain.schema().decl(attribute).map(|d| d.universe) {
        Some(Universe::Symbols(v)) => v,
        _ => &[],
    }
}

/// Values an object in a scene may carry: the merged presence level is a
/// generalization, never an object value.
fn object_values(domain: Domain, attribute: Attribute) -> Vec<&'static str> {
    symbols(domain, attribute)
        .iter()
        .copied()
        .filter(|v| *v != "present")
        .collect()
}

/// A random scene with `n` objects over every declared attribute except
/// OTHER. Each attribute draws from a random prefix of its universe so that
/// ties between objects are common.
pub fn random_scene(rng: &mut Rng, domain: Domain, n: usize, trial: &str) -> Scene {
    let attrs: Vec<Attribute> = domain
        .schema()
        .attributes
        .iter()
        .map(|d| d.attribute)
        .filter(|a| *a != Attribute::Other)
        .collect();
    let spread: Vec<usize> = attrs
        .iter()
        .map(|a| {
            let k = object_values(domain, *a).len();
            1 + rng.below(k)
        })
        .collect();
    let objects = (0..n)
        .map(|i| {
            let values: Vec<(Attribute, &str)> = attrs
                .iter()
                .zip(&spread)
                .map(|(a, k)| {
                    let vs = object_values(domain, *a);
                    (*a, vs[rng.below(*k)])
                })
                .collect();
            DomainObject::new(format!("x{i}"), values)
        })
        .collect();
    let target = format!("x{}", rng.below(n));
    Scene::new(TrialId::new(trial), domain, objects, &target).expect("generated scene is valid")
}

/// A random RE for `scene`: mostly true values, sometimes a false one, an
/// unusable location attribute, or an OTHER entry.
pub fn random_re(rng: &mut Rng, scene: &Scene) -> AnnotatedRE {
    let domain = scene.domain();
    let target = scene.target();
    let mut d = Description::new();
    for decl in domain.schema().attributes {
        let a = decl.attribute;
        if a == Attribute::Other || !rng.chance(2, 5) {
            continue;
        }
        if a.is_location() && !rng.chance(1, 6) {
            continue;
        }
        let value = if rng.chance(5, 6) {
            let own = target.value(a).expect("generated objects are total").clone();
            let mut options = vec![own.clone()];
            options.extend(scene.schema().generalizations(a, &own));
            rng.pick(&options).clone()
        } else {
            (*rng.pick(symbols(domain, a))).into()
        };
        d.insert(Property::new(a, value)).expect("one value per attribute");
    }
    if rng.chance(1, 25) {
        d.push_other(RawProperty::new("nearWindow", "1"));
    }
    AnnotatedRE {
        trial: scene.trial().clone(),
        participant: "p".into(),
        position: if rng.chance(1, 2) { Position::Subject } else { Position::Object },
        utterance: String::new(),
        description: d,
    }
}

pub fn holds_for(d: &Description, o: &DomainObject, scene: &Scene) -> bool {
    d.properties()
        .all(|p| true_of(&p, o, scene.schema()).expect("declared attribute"))
}

/// True of the target and false of every distractor.
pub fn distinguishes(d: &Description, scene: &Scene) -> bool {
    holds_for(d, scene.target(), scene)
        && scene
            .objects()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != scene.target_index())
            .all(|(_, o)| !holds_for(d, o, scene))
}

/// Every property over a usable attribute whose value is true of the
/// target, found by trying each value of each universe.
pub fn universe(scene: &Scene, usability: Usability) -> Vec<Property> {
    let schema = scene.schema();
    schema
        .attributes
        .iter()
        .filter(|d| schema.is_usable(d.attribute, usability))
        .flat_map(|d| {
            symbols(scene.domain(), d.attribute)
                .iter()
                .map(move |v| Property::new(d.attribute, *v))
        })
        .filter(|p| true_of(p, scene.target(), schema).expect("declared attribute"))
        .collect()
}

/// Every subset of the universe that is a well-formed description (at most
/// one value per attribute).
pub fn all_descriptions(scene: &Scene, usability: Usability) -> Vec<Description> {
    let universe = universe(scene, usability);
    assert!(universe.len() < 24, "oracle enumeration is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << universe.len()) {
        let props = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.clone());
        if let Ok(d) = Description::from_properties(props) {
            out.push(d);
        }
    }
    out
}

pub fn without(d: &Description, a: Attribute) -> Description {
    let mut rest = d.clone();
    rest.remove(a);
    rest
}

pub fn removable(d: &Description, scene: &Scene) -> Vec<Attribute> {
    d.properties()
        .map(|p| p.attribute)
        .filter(|a| distinguishes(&without(d, *a), scene))
        .collect()
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleProfile {
    pub m: Option<usize>,
    pub minimal: BTreeSet<String>,
    pub numerical: usize,
}

pub fn profile(scene: &Scene, usability: Usability) -> OracleProfile {
    let distinguishing: Vec<Description> = all_descriptions(scene, usability)
        .into_iter()
        .filter(|d| distinguishes(d, scene))
        .collect();
    let m = distinguishing.iter().map(Description::len).min();
    let minimal = distinguishing
        .iter()
        .filter(|d| Some(d.len()) == m)
        .map(|d| d.to_string())
        .collect();
    let numerical = distinguishing
        .iter()
        .filter(|d| Some(d.len()) != m && removable(d, scene).is_empty())
        .count();
    OracleProfile { m, minimal, numerical }
}

/// Smallest number of extra true properties, on attributes `d` does not
/// already use, that make `d` distinguishing.
pub fn deficit(d: &Description, scene: &Scene, usability: Usability) -> Option<usize> {
    all_descriptions(scene, usability)
        .into_iter()
        .filter(|e| e.properties().all(|p| !d.contains(p.attribute)))
        .filter(|e| {
            let mut joined = d.clone();
            for p in e.properties() {
                joined.insert(p).expect("disjoint attributes");
            }
            distinguishes(&joined, scene)
        })
        .map(|e| e.len())
        .min()
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub category: SpecificationCategory,
    pub superfluity: Option<usize>,
    pub deficit: Option<usize>,
}

pub fn classify(re: &AnnotatedRE, scene: &Scene, usability: Usability) -> OracleReport {
    use SpecificationCategory::*;
    let d = &re.description;
    let bare = |category| OracleReport {
        category,
        superfluity: None,
        deficit: None,
    };
    if d.has_other()
        || d
            .properties()
            .any(|p| !scene.schema().is_usable(p.attribute, usability))
    {
        return bare(Other);
    }
    if !holds_for(d, scene.target(), scene) {
        return bare(Wrong);
    }
    if !distinguishes(d, scene) {
        return OracleReport {
            deficit: deficit(d, scene, usability),
            ..bare(Under)
        };
    }
    let m = profile(scene, usability).m.expect("d itself distinguishes");
    let rem = removable(d, scene);
    let category = if d.len() == m {
        Minimal
    } else if rem.is_empty() {
        NumericalOver
    } else if rem == [Attribute::Type] {
        NominalOver
    } else {
        RealOver
    };
    OracleReport {
        category,
        superfluity: Some(d.len() - m),
        deficit: None,
    }
}

/// Tanh-sinh quadrature of `f` over `[0, 1]`. The integrand receives both
/// `u` and `1 - u` so that it can be evaluated accurately near either end.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| {
        let s = half_pi * t.sinh();
        let u = 1.0 / (1.0 + (-2.0 * s).exp());
        let v = 1.0 / (1.0 + (2.0 * s).exp());
        let w = half_pi * t.cosh() / (2.0 * s.cosh() * s.cosh());
        (u, v, w)
    };
    let eval = |t: f64| {
        let (u, v, w) = node(t);
        if u <= 0.0 || v <= 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let y = f(u, v) * w;
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    let limit = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= limit {
        sum += eval(k as f64 * h) + eval(-(k as f64) * h);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..12 {
        h /= 2.0;
        let mut k = 1;
        while (k as f64) * h <= limit {
            sum += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        if (next - estimate).abs() < 1e-14 * next.abs().max(1e-300) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Upper tail of a density on `[0, ∞)`, integrated over `[x, ∞)` by the map
/// `t = x + u / (1 - u)`.
pub fn upper_tail(x: f64, log_density: impl Fn(f64) -> f64) -> f64 {
    tanh_sinh(|u, v| {
        let t = x + u / v;
        (log_density(t)).exp() / (v * v)
    })
}

pub fn chi_squared_sf(x: f64, k: f64) -> f64 {
    let norm = -(k / 2.0) * std::f64::consts::LN_2 - libm::lgamma(k / 2.0);
    upper_tail(x, |t| norm + (k / 2.0 - 1.0) * t.ln() - t / 2.0)
}

pub fn f_sf(x: f64, d1: f64, d2: f64) -> f64 {
    let norm = libm::lgamma((d1 + d2) / 2.0) - libm::lgamma(d1 / 2.0) - libm::lgamma(d2 / 2.0)
        + (d1 / 2.0) * (d1 / d2).ln();
    upper_tail(x, |t| {
        norm + (d1 / 2.0 - 1.0) * t.ln() - ((d1 + d2) / 2.0) * (1.0 + d1 * t / d2).ln()
    })
}
