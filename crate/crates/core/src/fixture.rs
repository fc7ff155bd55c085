//! Expected-count fixtures: JSON files naming an algebra, an optional sign
//! vector and the expected counts and g-matrices.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::build_based_algebra;
use crate::error::{Error, Result};
use crate::explore::{enumerate_2silt, enumerate_2silt_epsilon, parse_sign_vector, Exploration};
use crate::mutation::{GVector, Kernel};
use crate::named::resolve_presentation;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountScope {
    /// Every node of the region.
    #[default]
    All,
    /// Only τ-tilting nodes.
    Tau,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub algebra: String,
    #[serde(default)]
    pub epsilon: Option<String>,
    #[serde(default)]
    pub count_scope: CountScope,
    pub expect_count: usize,
    #[serde(default)]
    pub expect_tau_count: Option<usize>,
    #[serde(default)]
    pub expect_gmatrices: Option<Vec<Vec<GVector>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureStatus {
    Pass,
    Mismatch,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub algebra: String,
    pub epsilon: Option<String>,
    pub status: FixtureStatus,
    pub expect_count: usize,
    pub count: usize,
    pub tau_count: usize,
    pub gmatrices_checked: bool,
    /// First expected g-matrix not found, or first found one not expected.
    pub first_difference: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

fn canonical(m: &[GVector]) -> Vec<GVector> {
    let mut m = m.to_vec();
    m.sort_by(|x, y| y.cmp(x));
    m
}

/// Compares two lists of g-matrices as multisets of row multisets. Returns a
/// description of the first difference.
pub fn compare_gmatrices(expected: &[Vec<GVector>], found: &[Vec<GVector>]) -> Option<String> {
    let mut bag: BTreeMap<Vec<GVector>, isize> = BTreeMap::new();
    for m in found {
        *bag.entry(canonical(m)).or_default() += 1;
    }
    for (i, m) in expected.iter().enumerate() {
        let e = bag.entry(canonical(m)).or_default();
        *e -= 1;
        if *e < 0 {
            return Some(format!("expected g-matrix #{} not found: {:?}", i + 1, m));
        }
    }
    let extra = found.iter().find(|m| bag.get(&canonical(m)).copied().unwrap_or(0) > 0)?;
    Some(format!("unexpected g-matrix: {extra:?}"))
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

pub fn run_fixture<S: Scalar>(fx: &Fixture, base: Option<&Path>, budget: usize) -> Result<(Exploration, usize)> {
    let pres = resolve_presentation(&fx.algebra, base)?;
    let a = build_based_algebra::<S>(&pres)?;
    let k = Kernel::new(&a);
    let ex = match &fx.epsilon {
        Some(e) => enumerate_2silt_epsilon(&k, &parse_sign_vector(e)?, budget)?,
        None => enumerate_2silt(&k, budget),
    };
    Ok((ex, a.num_vertices()))
}

pub fn verify_fixture<S: Scalar>(path: &Path, budget: usize) -> Result<FixtureReport> {
    let t0 = Instant::now();
    let fx = load_fixture(path)?;
    let (ex, _) = run_fixture::<S>(&fx, path.parent(), budget)?;
    let selected: Vec<Vec<GVector>> = ex
        .graph
        .nodes
        .iter()
        .filter(|nd| fx.count_scope == CountScope::All || nd.tau_flag)
        .map(|nd| nd.g_matrix.clone())
        .collect();
    let tau_count = ex.graph.tau_count();
    let mut first_difference = None;
    if let Some(exp) = &fx.expect_gmatrices {
        first_difference = compare_gmatrices(exp, &selected);
    }
    let counts_ok = selected.len() == fx.expect_count && fx.expect_tau_count.is_none_or(|t| t == tau_count);
    if !counts_ok && first_difference.is_none() {
        first_difference = Some(format!(
            "count {} (expected {}), τ-tilting count {}{}",
            selected.len(),
            fx.expect_count,
            tau_count,
            fx.expect_tau_count.map_or(String::new(), |t| format!(" (expected {t})"))
        ));
    }
    let status = if !ex.is_complete() {
        FixtureStatus::BudgetExhausted
    } else if counts_ok && first_difference.is_none() {
        FixtureStatus::Pass
    } else {
        FixtureStatus::Mismatch
    };
    Ok(FixtureReport {
        fixture: path.display().to_string(),
        algebra: fx.algebra.clone(),
        epsilon: fx.epsilon.clone(),
        status,
        expect_count: fx.expect_count,
        count: selected.len(),
        tau_count,
        gmatrices_checked: fx.expect_gmatrices.is_some(),
        first_difference,
        millis: t0.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_comparison() {
        let a = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![-1, 0], vec![0, 1]]];
        let b = vec![vec![vec![0, 1], vec![-1, 0]], vec![vec![0, 1], vec![1, 0]]];
        assert_eq!(compare_gmatrices(&a, &b), None);
        let c = vec![vec![vec![0, 1], vec![1, 0]]];
        assert!(compare_gmatrices(&a, &c).unwrap().contains("#2"));
        assert!(compare_gmatrices(&c, &a).unwrap().starts_with("unexpected"));
    }
}
