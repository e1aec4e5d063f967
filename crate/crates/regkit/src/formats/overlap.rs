//! Trial-id pairing between two corpora: one `<left-id><TAB><right-id>`
//! line per trial, with `-` for a trial that has no counterpart. Blank
//! lines and lines starting with `#` are skipped.

use std::collections::BTreeSet;

use regkit_core::TrialId;

use super::FormatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapRow {
    pub left: TrialId,
    pub right: Option<TrialId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Side {
    #[default]
    Left,
    Right,
}

pub fn parse_overlap(doc: &str) -> Result<Vec<OverlapRow>, FormatError> {
    let mut rows = Vec::new();
    for (n, line) in doc.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [left, right] = fields[..] else {
            return Err(FormatError::Record {
                index: n + 1,
                message: format!("expected two tab-separated ids, found {}", fields.len()),
            });
        };
        if left.is_empty() || left == "-" {
            return Err(FormatError::Record {
                index: n + 1,
                message: "left id is missing".into(),
            });
        }
        rows.push(OverlapRow {
            left: TrialId::new(left),
            right: (!right.is_empty() && right != "-").then(|| TrialId::new(right)),
        });
    }
    Ok(rows)
}

/// The ids on `side` of every row that is paired on both sides.
pub fn shared_trials(rows: &[OverlapRow], side: Side) -> BTreeSet<TrialId> {
    rows.iter()
        .filter_map(|r| {
            let right = r.right.as_ref()?;
            Some(match side {
                Side::Left => r.left.clone(),
                Side::Right => right.clone(),
            })
        })
        .collect()
}

pub fn serialize_overlap(rows: &[OverlapRow]) -> String {
    rows.iter()
        .map(|r| {
            let right = r.right.as_ref().map_or("-", TrialId::as_str);
            format!("{}\t{}\n", r.left, right)
        })
        .collect()
}
