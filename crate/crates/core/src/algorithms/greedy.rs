use alloc::vec::Vec;

use crate::candidates::{shares_attribute, Candidate};
use crate::description::Description;

/// Repeatedly picks the candidate ruling out the most remaining
/// distractors. Ties go to the earlier candidate, i.e. schema declaration
/// order and then value order. Returns the selection and whether it
/// distinguishes.
pub(crate) fn select(candidates: &[Candidate], distractors: u64) -> (Description, bool) {
    let chosen = steps(candidates, distractors);
    let covered = chosen.iter().fold(0, |m, c| m | c.rules_out);
    let d = Description::from_properties(chosen.into_iter().map(|c| c.property.clone()))
        .expect("one candidate per attribute");
    (d, covered & distractors == distractors)
}

/// The candidates chosen, in selection order.
pub(crate) fn steps(candidates: &[Candidate], distractors: u64) -> Vec<&Candidate> {
    let mut remaining = distractors;
    let mut chosen: Vec<&Candidate> = Vec::new();
    while remaining != 0 {
        let mut best: Option<(&Candidate, u32)> = None;
        for c in candidates {
            if shares_attribute(&chosen, c.property.attribute) {
                continue;
            }
            let gain = (c.rules_out & remaining).count_ones();
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((c, gain));
            }
        }
        match best {
            Some((c, gain)) if gain > 0 => {
                remaining &= !c.rules_out;
                chosen.push(c);
            }
            _ => break,
        }
    }
    chosen
}
