//! DICE, perfect recall percentage, grouped summaries, and the
//! probabilistic-TYPE sweep.
//!
//! Scores are kept as exact fractions. Means are accumulated per
//! denominator with integer sums, so aggregation does not depend on the
//! order in which scores arrive.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::algorithms::{run_algorithm_run, AlgorithmSpec, GeneratedDescription, TypePolicy};
use crate::corpus::{Corpus, Position};
use crate::description::Description;
use crate::schema::{Attribute, Domain, Usability, Value};
use crate::scene::TrialId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("statistic undefined for an empty score list")]
    EmptyScores,
    #[error("probability {0} outside [0, 1]")]
    BadProbability(String),
    #[error("at least one run is required")]
    NoRuns,
}

/// `2|H ∩ A| / (|H| + |A|)` as an exact fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiceScore {
    numerator: u32,
    denominator: u32,
}

impl DiceScore {
    /// Panics on a zero denominator or a ratio above one.
    pub fn new(numerator: u32, denominator: u32) -> Self {
        assert!(denominator > 0 && numerator <= denominator);
        DiceScore {
            numerator,
            denominator,
        }
    }

    pub fn numerator(self) -> u32 {
        self.numerator
    }

    pub fn denominator(self) -> u32 {
        self.denominator
    }

    pub fn is_perfect(self) -> bool {
        self.numerator == self.denominator
    }

    pub fn value(self) -> f64 {
        f64::from(self.numerator) / f64::from(self.denominator)
    }
}

/// DICE over two sets; both empty scores 1.
pub fn dice<K: Ord>(human: &BTreeSet<K>, algorithm: &BTreeSet<K>) -> DiceScore {
    let total = human.len() + algorithm.len();
    if total == 0 {
        return DiceScore::new(1, 1);
    }
    let shared = human.intersection(algorithm).count();
    DiceScore::new((2 * shared) as u32, total as u32)
}

/// Percentage of scores equal to exactly one.
pub fn prp(scores: &[DiceScore]) -> Result<f64, EvalError> {
    if scores.is_empty() {
        return Err(EvalError::EmptyScores);
    }
    let perfect = scores.iter().filter(|s| s.is_perfect()).count();
    Ok(100.0 * perfect as f64 / scores.len() as f64)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OtherHandling {
    /// Unknown annotations count as the single attribute OTHER.
    #[default]
    CountAsAttribute,
    Exclude,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiceOptions {
    /// Compare (attribute, value) pairs instead of attribute names.
    pub strict_values: bool,
    pub other: OtherHandling,
}

type Key = (Attribute, Option<Value>);

fn keys(d: &Description, opts: DiceOptions) -> BTreeSet<Key> {
    let mut out: BTreeSet<Key> = d
        .properties()
        .map(|p| (p.attribute, opts.strict_values.then_some(p.value)))
        .collect();
    if d.has_other() && opts.other == OtherHandling::CountAsAttribute {
        out.insert((Attribute::Other, None));
    }
    out
}

pub fn dice_descriptions(human: &Description, algorithm: &Description, opts: DiceOptions) -> DiceScore {
    dice(&keys(human, opts), &keys(algorithm, opts))
}

/// Order-independent accumulator of exact fractions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScoreAccumulator {
    n: u64,
    perfect: u64,
    /// denominator -> (sum of numerators, sum of squared numerators)
    sums: BTreeMap<u32, (u128, u128)>,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn exact_ratio(num: u128, den: u128) -> f64 {
    let g = gcd(num, den).max(1);
    (num / g) as f64 / (den / g) as f64
}

impl ScoreAccumulator {
    pub fn push(&mut self, s: DiceScore) {
        self.n += 1;
        self.perfect += u64::from(s.is_perfect());
        let e = self.sums.entry(s.denominator).or_default();
        e.0 += u128::from(s.numerator);
        e.1 += u128::from(s.numerator) * u128::from(s.numerator);
    }

    pub fn merge(&mut self, other: &ScoreAccumulator) {
        self.n += other.n;
        self.perfect += other.perfect;
        for (d, (a, b)) in &other.sums {
            let e = self.sums.entry(*d).or_default();
            e.0 += a;
            e.1 += b;
        }
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn common_denominator(&self, squared: bool) -> Option<u128> {
        self.sums.keys().try_fold(1u128, |l, &d| {
            let d = if squared {
                u128::from(d) * u128::from(d)
            } else {
                u128::from(d)
            };
            (l / gcd(l, d)).checked_mul(d)
        })
    }

    fn exact_sum(&self, squared: bool) -> Option<(u128, u128)> {
        let l = self.common_denominator(squared)?;
        let mut num = 0u128;
        for (&d, &(a, b)) in &self.sums {
            let d = if squared {
                u128::from(d) * u128::from(d)
            } else {
                u128::from(d)
            };
            let term = if squared { b } else { a };
            num = num.checked_add(term.checked_mul(l / d)?)?;
        }
        Some((num, l))
    }

    fn float_sum(&self, squared: bool) -> f64 {
        self.sums
            .iter()
            .map(|(&d, &(a, b))| {
                let d = f64::from(d);
                if squared {
                    b as f64 / (d * d)
                } else {
                    a as f64 / d
                }
            })
            .sum()
    }

    pub fn mean(&self) -> Option<f64> {
        if self.n == 0 {
            return None;
        }
        Some(match self.exact_sum(false) {
            Some((num, l)) => match l.checked_mul(u128::from(self.n)) {
                Some(den) => exact_ratio(num, den),
                None => self.float_sum(false) / self.n as f64,
            },
            None => self.float_sum(false) / self.n as f64,
        })
    }

    /// Sample standard deviation; `None` below two scores.
    pub fn sample_sd(&self) -> Option<f64> {
        if self.n < 2 {
            return None;
        }
        let n = u128::from(self.n);
        // (n * sum x^2 - (sum x)^2) / (n (n - 1)), exactly when it fits.
        let exact = (|| {
            let (s1, l1) = self.exact_sum(false)?;
            let (s2, l2) = self.exact_sum(true)?;
            let sq = s1.checked_mul(s1)?;
            let base = l1.checked_mul(l1)?;
            let common = base.checked_mul(l2)?;
            let lhs = n.checked_mul(s2)?.checked_mul(base)?;
            let rhs = sq.checked_mul(l2)?;
            let den = common.checked_mul(n)?.checked_mul(n - 1)?;
            Some(exact_ratio(lhs.saturating_sub(rhs), den))
        })();
        let var = exact.unwrap_or_else(|| {
            let nf = self.n as f64;
            let s1 = self.float_sum(false);
            let s2 = self.float_sum(true);
            ((s2 - s1 * s1 / nf) / (nf - 1.0)).max(0.0)
        });
        Some(libm::sqrt(var))
    }

    pub fn prp(&self) -> Option<f64> {
        (self.n > 0).then(|| 100.0 * self.perfect as f64 / self.n as f64)
    }
}

/// Which dimensions to split summaries by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Grouping {
    pub domain: bool,
    pub position: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupKey {
    pub corpus: String,
    /// `None` means all domains.
    pub domain: Option<Domain>,
    /// `None` means both positions.
    pub position: Option<Position>,
    pub algorithm: String,
}

impl GroupKey {
    pub fn domain_label(&self) -> String {
        self.domain.map_or_else(|| "all".into(), |d| d.to_string())
    }

    pub fn position_label(&self) -> String {
        self.position.map_or_else(|| "all".into(), |p| p.as_str().to_ascii_lowercase())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationSummary {
    pub key: GroupKey,
    pub n: usize,
    pub mean_dice: f64,
    pub sd: Option<f64>,
    pub prp: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Evaluation {
    /// Sorted by group key.
    pub summaries: Vec<EvaluationSummary>,
    /// Trials that have expressions but no algorithm output.
    pub missing: Vec<TrialId>,
}

/// Scores every human RE against the output for its trial and summarizes
/// per group. Empty groups are omitted.
pub fn evaluate(
    corpus: &Corpus,
    algorithm: &str,
    outputs: &BTreeMap<TrialId, GeneratedDescription>,
    grouping: Grouping,
    opts: DiceOptions,
) -> Evaluation {
    let mut groups: BTreeMap<GroupKey, ScoreAccumulator> = BTreeMap::new();
    let mut missing = BTreeSet::new();
    for re in &corpus.expressions {
        let Some(scene) = corpus.scene(&re.trial) else {
            continue;
        };
        let Some(out) = outputs.get(&re.trial) else {
            missing.insert(re.trial.clone());
            continue;
        };
        let key = GroupKey {
            corpus: corpus.name.clone(),
            domain: grouping.domain.then_some(scene.domain()),
            position: grouping.position.then_some(re.position),
            algorithm: algorithm.into(),
        };
        groups
            .entry(key)
            .or_default()
            .push(dice_descriptions(&re.description, &out.description, opts));
    }
    let summaries = groups
        .into_iter()
        .filter(|(_, acc)| !acc.is_empty())
        .map(|(key, acc)| EvaluationSummary {
            key,
            n: acc.len() as usize,
            mean_dice: acc.mean().unwrap_or_default(),
            sd: acc.sample_sd(),
            prp: acc.prp().unwrap_or_default(),
        })
        .collect();
    Evaluation {
        summaries,
        missing: missing.into_iter().collect(),
    }
}

/// Mean DICE of one run over every scored expression.
fn run_scores(
    corpus: &Corpus,
    spec: &AlgorithmSpec,
    usability: Usability,
    run: u64,
    opts: DiceOptions,
) -> ScoreAccumulator {
    let batch = run_algorithm_run(corpus, spec, usability, run);
    let mut acc = ScoreAccumulator::default();
    for re in &corpus.expressions {
        if let Some(out) = batch.outputs.get(&re.trial) {
            acc.push(dice_descriptions(&re.description, &out.description, opts));
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub mean_dice: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Ascending in `p`.
    pub points: Vec<SweepPoint>,
    pub runs: u64,
    pub seed: u64,
}

/// For each probability, runs `spec` with a probabilistic TYPE policy
/// `runs` times and averages the per-run mean DICE. Run `r` of every grid
/// point uses the same per-trial streams.
pub fn sweep_type_probability(
    corpus: &Corpus,
    spec: &AlgorithmSpec,
    grid: &[f64],
    runs: u64,
    seed: u64,
    usability: Usability,
    opts: DiceOptions,
) -> Result<SweepResult, EvalError> {
    if runs == 0 {
        return Err(EvalError::NoRuns);
    }
    let mut grid: Vec<f64> = grid.to_vec();
    if let Some(bad) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(EvalError::BadProbability(bad.to_string()));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut points = Vec::with_capacity(grid.len());
    for p in grid {
        let run_spec = spec
            .clone()
            .with_policy(TypePolicy::Probabilistic(p))
            .with_seed(seed);
        // Every run scores the same expressions, so the mean of run means
        // equals the pooled mean.
        let mut pooled = ScoreAccumulator::default();
        for r in 0..runs {
            pooled.merge(&run_scores(corpus, &run_spec, usability, r, opts));
        }
        let mean_dice = pooled.mean().ok_or(EvalError::EmptyScores)?;
        points.push(SweepPoint { p, mean_dice });
    }
    Ok(SweepResult { points, runs, seed })
}

impl fmt::Display for DiceScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::run_algorithm;
    use crate::corpus::AnnotatedRE;
    use crate::description::Property;
    use crate::fixtures::fx1;
    use alloc::vec;
    use Attribute::*;

    fn set(a: &[Attribute]) -> BTreeSet<Attribute> {
        a.iter().copied().collect()
    }

    #[test]
    fn dice_examples() {
        assert_eq!(dice(&set(&[Colour, Type]), &set(&[Colour])), DiceScore::new(2, 3));
        assert_eq!(dice(&set(&[Size, Type]), &set(&[Colour])).value(), 0.0);
        assert!(dice(&set(&[Size, Type]), &set(&[Size, Type])).is_perfect());
        assert!(dice(&set(&[]), &set(&[])).is_perfect());
    }

    #[test]
    fn prp_examples() {
        let s = [
            DiceScore::new(1, 1),
            DiceScore::new(2, 2),
            DiceScore::new(1, 2),
            DiceScore::new(4, 5),
        ];
        assert_eq!(prp(&s).unwrap(), 50.0);
        assert_eq!(prp(&[DiceScore::new(3, 3)]).unwrap(), 100.0);
        assert_eq!(prp(&[DiceScore::new(0, 3)]).unwrap(), 0.0);
        assert_eq!(prp(&[]), Err(EvalError::EmptyScores));
    }

    #[test]
    fn accumulator_statistics() {
        let mut acc = ScoreAccumulator::default();
        acc.push(DiceScore::new(2, 3));
        acc.push(DiceScore::new(0, 3));
        assert_eq!(acc.mean(), Some(1.0 / 3.0));
        let sd = acc.sample_sd().unwrap();
        assert!((sd - (2.0 / 3.0) / libm::sqrt(2.0)).abs() < 1e-12);
        assert_eq!(acc.prp(), Some(0.0));

        let mut one = ScoreAccumulator::default();
        one.push(DiceScore::new(4, 4));
        assert_eq!(one.sample_sd(), None);
    }

    fn human(props: &[(Attribute, &str)], position: Position) -> AnnotatedRE {
        AnnotatedRE {
            trial: "FX1".into(),
            participant: "p".into(),
            position,
            utterance: String::new(),
            description: Description::from_properties(
                props.iter().map(|(a, v)| Property::new(*a, *v)),
            )
            .unwrap(),
        }
    }

    #[test]
    fn evaluate_examples() {
        let c = Corpus::new(
            "fx",
            vec![fx1()],
            vec![human(&[(Colour, "green"), (Type, "chair")], Position::Subject)],
        );
        let spec = AlgorithmSpec::full_brevity_type();
        let out = run_algorithm(&c, &spec, Usability::default());
        let e = evaluate(&c, "FB+TYPE", &out.outputs, Grouping::default(), DiceOptions::default());
        assert_eq!(e.summaries.len(), 1);
        let s = &e.summaries[0];
        assert_eq!((s.n, s.mean_dice, s.sd, s.prp), (1, 1.0, None, 100.0));

        let c = Corpus::new(
            "fx",
            vec![fx1()],
            vec![
                human(&[(Colour, "green"), (Type, "chair")], Position::Subject),
                human(&[(Size, "large"), (Type, "chair")], Position::Subject),
            ],
        );
        let out = run_algorithm(&c, &AlgorithmSpec::full_brevity(), Usability::default());
        let grouping = Grouping {
            domain: true,
            position: true,
        };
        let e = evaluate(&c, "FB", &out.outputs, grouping, DiceOptions::default());
        assert_eq!(e.summaries.len(), 1);
        let s = &e.summaries[0];
        assert_eq!(s.key.position, Some(Position::Subject));
        assert!((s.mean_dice - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.sd.unwrap() - 0.471_404_520_791_031_7).abs() < 1e-12);
        assert_eq!(s.prp, 0.0);

        let e = evaluate(&c, "FB", &BTreeMap::new(), grouping, DiceOptions::default());
        assert!(e.summaries.is_empty());
        assert_eq!(e.missing, [TrialId::from("FX1")]);
    }

    #[test]
    fn other_handling_and_strict_mode() {
        let mut h = Description::from_properties([Property::new(Colour, "green")]).unwrap();
        h.push_other(crate::description::RawProperty::new("wheels", "4"));
        let a = Description::from_properties([Property::new(Colour, "green")]).unwrap();
        assert_eq!(dice_descriptions(&h, &a, DiceOptions::default()), DiceScore::new(2, 3));
        let excl = DiceOptions {
            other: OtherHandling::Exclude,
            ..DiceOptions::default()
        };
        assert!(dice_descriptions(&h, &a, excl).is_perfect());

        let red = Description::from_properties([Property::new(Colour, "red")]).unwrap();
        assert!(dice_descriptions(&red, &a, DiceOptions::default()).is_perfect());
        let strict = DiceOptions {
            strict_values: true,
            ..DiceOptions::default()
        };
        assert_eq!(dice_descriptions(&red, &a, strict).value(), 0.0);
    }

    #[test]
    fn sweep_rejects_bad_input() {
        let c = Corpus::new("fx", vec![fx1()], vec![]);
        let spec = AlgorithmSpec::full_brevity();
        assert_eq!(
            sweep_type_probability(&c, &spec, &[0.5], 1, 1, Usability::default(), DiceOptions::default()),
            Err(EvalError::EmptyScores)
        );
        let c = Corpus::new("fx", vec![fx1()], vec![human(&[(Colour, "green")], Position::Object)]);
        let u = Usability::default();
        let o = DiceOptions::default();
        assert_eq!(
            sweep_type_probability(&c, &spec, &[0.5], 0, 1, u, o),
            Err(EvalError::NoRuns)
        );
        assert!(sweep_type_probability(&c, &spec, &[1.5], 1, 1, u, o).is_err());
        let r = sweep_type_probability(&c, &spec, &[1.0, 0.0, 0.5], 1, 1, u, o).unwrap();
        assert_eq!(r.points.iter().map(|p| p.p).collect::<Vec<_>>(), [0.0, 0.5, 1.0]);
    }
}
