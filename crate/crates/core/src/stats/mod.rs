//! Chi-squared test of independence for 2x2 tables and one-way ANOVA.

pub mod special;

use core::fmt;

use thiserror::Error;

pub use special::{chi_squared_sf, f_sf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("table has a zero row or column total")]
    DegenerateTable,
    #[error("ANOVA needs at least two groups")]
    TooFewGroups,
    #[error("group {0} is empty")]
    EmptyGroup(usize),
    #[error("no residual degrees of freedom (total n must exceed the number of groups)")]
    NoResidualDf,
    #[error("all observations are identical")]
    AllIdentical,
    #[error("observation is not finite")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContingencyTable2x2 {
    cells: [[u64; 2]; 2],
}

impl ContingencyTable2x2 {
    pub fn new(cells: [[u64; 2]; 2]) -> Self {
        ContingencyTable2x2 { cells }
    }

    pub fn cells(&self) -> [[u64; 2]; 2] {
        self.cells
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.cells;
        ContingencyTable2x2::new([[a, c], [b, d]])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestKind {
    ChiSquared,
    Anova,
}

impl TestKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TestKind::ChiSquared => "chi2",
            TestKind::Anova => "anova",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegreesOfFreedom {
    One(f64),
    Pair(f64, f64),
}

impl fmt::Display for DegreesOfFreedom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreesOfFreedom::One(d) => write!(f, "{d}"),
            DegreesOfFreedom::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestResult {
    pub test: TestKind,
    /// `f64::INFINITY` when within-group variance is zero.
    pub statistic: f64,
    pub df: DegreesOfFreedom,
    pub p: f64,
}

impl TestResult {
    pub fn is_infinite(&self) -> bool {
        self.statistic.is_infinite()
    }
}

impl fmt::Display for TestResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "test={} statistic={} df={} p={}",
            self.test.as_str(),
            self.statistic,
            self.df,
            self.p
        )
    }
}

/// Pearson chi-squared test of independence, optionally with Yates'
/// continuity correction.
pub fn chi_squared_independence(
    table: &ContingencyTable2x2,
    yates: bool,
) -> Result<TestResult, StatsError> {
    let [[a, b], [c, d]] = table.cells;
    let margins = [a + b, c + d, a + c, b + d];
    if margins.contains(&0) {
        return Err(StatsError::DegenerateTable);
    }
    let n = table.total() as f64;
    let cross = (a as f64) * (d as f64) - (b as f64) * (c as f64);
    let mut diff = cross.abs();
    if yates {
        diff = (diff - n / 2.0).max(0.0);
    }
    let denom: f64 = margins.iter().map(|&m| m as f64).product();
    let statistic = n * diff * diff / denom;
    Ok(TestResult {
        test: TestKind::ChiSquared,
        statistic,
        df: DegreesOfFreedom::One(1.0),
        p: chi_squared_sf(statistic, 1.0),
    })
}

/// One-way analysis of variance across `groups`.
pub fn one_way_anova<G: AsRef<[f64]>>(groups: &[G]) -> Result<TestResult, StatsError> {
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::TooFewGroups);
    }
    let mut n_total = 0usize;
    let mut grand = 0.0;
    for (i, g) in groups.iter().enumerate() {
        let g = g.as_ref();
        if g.is_empty() {
            return Err(StatsError::EmptyGroup(i));
        }
        if g.iter().any(|x| !x.is_finite()) {
            return Err(StatsError::NonFinite);
        }
        n_total += g.len();
        grand += g.iter().sum::<f64>();
    }
    if n_total <= k {
        return Err(StatsError::NoResidualDf);
    }
    let first = groups[0].as_ref()[0];
    if groups.iter().all(|g| g.as_ref().iter().all(|&x| x == first)) {
        return Err(StatsError::AllIdentical);
    }
    let grand = grand / n_total as f64;

    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    let mut no_spread = true;
    for g in groups {
        let g = g.as_ref();
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        ss_between += g.len() as f64 * (mean - grand) * (mean - grand);
        ss_within += g.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        no_spread &= g.iter().all(|&x| x == g[0]);
    }
    let df1 = (k - 1) as f64;
    let df2 = (n_total - k) as f64;
    let df = DegreesOfFreedom::Pair(df1, df2);
    if no_spread {
        return Ok(TestResult {
            test: TestKind::Anova,
            statistic: f64::INFINITY,
            df,
            p: 0.0,
        });
    }
    let statistic = (ss_between / df1) / (ss_within / df2);
    Ok(TestResult {
        test: TestKind::Anova,
        statistic,
        df,
        p: f_sf(statistic, df1, df2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn chi_squared_examples() {
        let r = chi_squared_independence(&ContingencyTable2x2::new([[30, 70], [50, 50]]), false)
            .unwrap();
        assert!((r.statistic - 8.333_333_333_333_334).abs() < 1e-9);
        assert!((r.p - 0.003_892_417_122_778_637).abs() < 1e-10);
        assert_eq!(r.df, DegreesOfFreedom::One(1.0));

        let even = chi_squared_independence(&ContingencyTable2x2::new([[25, 25], [25, 25]]), false)
            .unwrap();
        assert_eq!((even.statistic, even.p), (0.0, 1.0));

        let y = chi_squared_independence(&ContingencyTable2x2::new([[30, 70], [50, 50]]), true)
            .unwrap();
        assert!((y.statistic - 7.520_833_333_333_334).abs() < 1e-9);
        assert!((y.p - 0.006_098_945_931_214_352).abs() < 1e-10);

        assert!((chi_squared_sf(3.841, 1.0) - 0.050_013_683_763_956_8).abs() < 1e-10);
    }

    #[test]
    fn chi_squared_degenerate() {
        assert_eq!(
            chi_squared_independence(&ContingencyTable2x2::new([[0, 0], [5, 5]]), false),
            Err(StatsError::DegenerateTable)
        );
    }

    #[test]
    fn anova_examples() {
        let r = one_way_anova(&[vec![1.0, 2.0, 3.0], vec![2.0, 3.0, 4.0]]).unwrap();
        assert_eq!(r.statistic, 1.5);
        assert_eq!(r.df, DegreesOfFreedom::Pair(1.0, 4.0));
        assert!((r.p - 0.287_864_134_726_690_7).abs() < 1e-10);

        let same_means = one_way_anova(&[vec![1.0, 3.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!((same_means.statistic, same_means.p), (0.0, 1.0));

        let inf = one_way_anova(&[vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        assert!(inf.is_infinite());
        assert_eq!(inf.p, 0.0);
    }

    #[test]
    fn anova_errors() {
        assert_eq!(
            one_way_anova(&[vec![1.0], vec![2.0]]),
            Err(StatsError::NoResidualDf)
        );
        assert_eq!(
            one_way_anova(&[vec![1.0, 1.0], vec![1.0]]),
            Err(StatsError::AllIdentical)
        );
        assert_eq!(one_way_anova(&[vec![1.0, 2.0]]), Err(StatsError::TooFewGroups));
        let empty: Vec<f64> = Vec::new();
        assert_eq!(
            one_way_anova(&[vec![1.0, 2.0], empty]),
            Err(StatsError::EmptyGroup(1))
        );
    }
}
