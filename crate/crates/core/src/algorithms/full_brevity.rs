use alloc::vec::Vec;

use crate::candidates::{shares_attribute, Candidate};
use crate::description::Description;

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order. Returns false once exhausted.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest distinguishing subset of `candidates`, searching sizes in
/// increasing order and combinations lexicographically by candidate index.
pub(crate) fn shortest(candidates: &[Candidate], distractors: u64) -> Option<Description> {
    let n = candidates.len();
    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if let Some(d) = try_combination(candidates, &idx, distractors) {
                return Some(d);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    None
}

fn try_combination(candidates: &[Candidate], idx: &[usize], distractors: u64) -> Option<Description> {
    let mut chosen: Vec<&Candidate> = Vec::with_capacity(idx.len());
    let mut covered = 0u64;
    for &i in idx {
        let c = &candidates[i];
        if shares_attribute(&chosen, c.property.attribute) {
            return None;
        }
        covered |= c.rules_out;
        chosen.push(c);
    }
    if covered & distractors != distractors {
        return None;
    }
    Description::from_properties(chosen.into_iter().map(|c| c.property.clone())).ok()
}
