//! Breadth-first exploration of the Hasse quiver of two-term silting complexes.
//!
//! Levels are expanded in parallel; results are merged in frontier order so the
//! node numbering and edge list do not depend on the schedule.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mutation::{GVector, Kernel};
use crate::scalar::Scalar;

pub const DEFAULT_BUDGET: usize = 100_000;

/// A sign vector, entries `+1` or `−1`.
pub type SignVector = Vec<i8>;

pub fn parse_sign_vector(text: &str) -> Result<SignVector> {
    let t = text.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let mut out = Vec::new();
    for part in t.split(',') {
        match part.trim() {
            "+" | "+1" | "1" => out.push(1),
            "-" | "-1" | "−" => out.push(-1),
            other => return Err(Error::Invalid(format!("bad sign `{other}`"))),
        }
    }
    Ok(out)
}

pub fn format_sign_vector(e: &[i8]) -> String {
    let s: Vec<&str> = e.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
    format!("({})", s.join(","))
}

#[derive(Clone, Debug)]
pub struct HasseNode {
    /// Summand ids, sorted by g-vector descending.
    pub ids: Vec<usize>,
    /// Canonical g-matrix (rows descending).
    pub g_matrix: Vec<GVector>,
    /// No summand is a shifted projective.
    pub tau_flag: bool,
}

impl HasseNode {
    pub fn total_g(&self) -> GVector {
        total_g(&self.g_matrix)
    }
}

pub fn total_g(m: &[GVector]) -> GVector {
    let n = m.first().map_or(0, |r| r.len());
    (0..n).map(|i| m.iter().map(|r| r[i]).sum()).collect()
}

/// Componentwise sign of the total g-vector.
pub fn sign_region_of(m: &[GVector]) -> Result<SignVector> {
    total_g(m)
        .iter()
        .map(|&x| match x.signum() {
            0 => Err(Error::Invalid("total g-vector has a zero entry".into())),
            s => Ok(s as i8),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Complete,
    BudgetExhausted,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExplorationReport {
    pub status: Status,
    pub nodes: usize,
    pub tau_flagged: usize,
    pub edges: usize,
    pub levels: usize,
    pub max_frontier: usize,
    pub millis: u128,
}

#[derive(Clone, Debug, Default)]
pub struct HasseGraph {
    pub n: usize,
    pub nodes: Vec<HasseNode>,
    pub index: HashMap<Vec<GVector>, usize>,
    /// `(source, target, position of the mutated summand in the source)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl HasseGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn tau_count(&self) -> usize {
        self.nodes.iter().filter(|x| x.tau_flag).count()
    }

    pub fn find(&self, g: &[GVector]) -> Option<usize> {
        let mut key = g.to_vec();
        key.sort_by(|x, y| y.cmp(x));
        self.index.get(&key).copied()
    }

    /// Every node has in-degree plus out-degree `n`.
    pub fn degrees_complete(&self) -> bool {
        let mut deg = vec![0usize; self.nodes.len()];
        for &(s, t, _) in &self.edges {
            deg[s] += 1;
            deg[t] += 1;
        }
        deg.iter().all(|&d| d == self.n)
    }

    /// Edges only go from a node to one discovered later or at a larger
    /// level, so a topological order exists; checked directly.
    pub fn is_acyclic(&self) -> bool {
        let m = self.nodes.len();
        let mut indeg = vec![0usize; m];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(s, t, _) in &self.edges {
            indeg[t] += 1;
            out[s].push(t);
        }
        let mut stack: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == m
    }

    pub fn g_matrices(&self) -> Vec<Vec<GVector>> {
        self.nodes.iter().map(|x| x.g_matrix.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub graph: HasseGraph,
    pub report: ExplorationReport,
}

impl Exploration {
    pub fn is_complete(&self) -> bool {
        self.report.status == Status::Complete
    }
}

fn node<S: Scalar>(k: &Kernel<S>, ids: Vec<usize>) -> HasseNode {
    let g_matrix = k.g_matrix(&ids);
    let tau_flag = k.is_tau_flagged(&ids);
    HasseNode { ids, g_matrix, tau_flag }
}

/// BFS by left mutation from `start`, keeping only nodes accepted by `keep`.
pub fn explore<S: Scalar>(
    k: &Kernel<S>,
    start: Vec<usize>,
    keep: impl Fn(&HasseNode) -> bool + Sync,
    budget: usize,
) -> Exploration {
    let t0 = Instant::now();
    let n = k.n();
    let mut g = HasseGraph { n, ..Default::default() };
    let first = node(k, start);
    g.index.insert(first.g_matrix.clone(), 0);
    g.nodes.push(first);
    let mut frontier = vec![0usize];
    let mut status = Status::Complete;
    let (mut levels, mut max_frontier) = (0, 1);
    while !frontier.is_empty() {
        levels += 1;
        max_frontier = max_frontier.max(frontier.len());
        let results: Vec<Vec<(usize, Option<HasseNode>)>> = frontier
            .par_iter()
            .map(|&i| {
                let ids = &g.nodes[i].ids;
                (0..n)
                    .filter_map(|pos| {
                        let next = k.left_mutation(ids, pos)?;
                        let nd = node(k, next);
                        Some((pos, keep(&nd).then_some(nd)))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&src, res) in frontier.iter().zip(results) {
            for (pos, nd) in res {
                let Some(nd) = nd else { continue };
                let dst = match g.index.get(&nd.g_matrix) {
                    Some(&d) => d,
                    None => {
                        let d = g.nodes.len();
                        g.index.insert(nd.g_matrix.clone(), d);
                        g.nodes.push(nd);
                        next.push(d);
                        d
                    }
                };
                g.edges.push((src, dst, pos));
            }
        }
        if g.nodes.len() > budget {
            status = Status::BudgetExhausted;
            break;
        }
        frontier = next;
    }
    let report = ExplorationReport {
        status,
        nodes: g.nodes.len(),
        tau_flagged: g.tau_count(),
        edges: g.edges.len(),
        levels,
        max_frontier,
        millis: t0.elapsed().as_millis(),
    };
    Exploration { graph: g, report }
}

/// All basic two-term silting complexes reachable from `A`.
pub fn enumerate_2silt<S: Scalar>(k: &Kernel<S>, budget: usize) -> Exploration {
    explore(k, k.regular(), |_| true, budget)
}

/// Upper and lower bounds of the sign region `ε`.
pub fn epsilon_bounds<S: Scalar>(k: &Kernel<S>, eps: &[i8]) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = k.n();
    if eps.len() != n {
        return Err(Error::Invalid(format!("sign vector has length {}, expected {n}", eps.len())));
    }
    let a = k.regular();
    let a1 = k.shifted_regular();
    if eps.iter().all(|&x| x > 0) {
        return Ok((a.clone(), a));
    }
    if eps.iter().all(|&x| x < 0) {
        return Ok((a1.clone(), a1));
    }
    let stalk0 = |v: usize| a.iter().copied().find(|&id| k.g(id)[v] == 1).unwrap();
    let stalk1 = |v: usize| a1.iter().copied().find(|&id| k.g(id)[v] == -1).unwrap();
    let minus: Vec<usize> = (0..n).filter(|&i| eps[i] < 0).map(stalk0).collect();
    let plus: Vec<usize> = (0..n).filter(|&i| eps[i] > 0).map(stalk1).collect();
    let upper = k.left_set_mutation(&a, &minus)?;
    let lower = k.right_set_mutation(&a1, &plus)?;
    for (name, t) in [("upper", &upper), ("lower", &lower)] {
        if sign_region_of(&k.g_matrix(t))? != eps {
            return Err(Error::Invalid(format!("{name} bound is outside the sign region")));
        }
    }
    Ok((upper, lower))
}

/// The sign region `ε`, explored from its upper bound.
pub fn enumerate_2silt_epsilon<S: Scalar>(k: &Kernel<S>, eps: &[i8], budget: usize) -> Result<Exploration> {
    let (upper, lower) = epsilon_bounds(k, eps)?;
    let want = eps.to_vec();
    let ex = explore(k, upper, |nd| sign_region_of(&nd.g_matrix).is_ok_and(|s| s == want), budget);
    if ex.is_complete() && ex.graph.find(&k.g_matrix(&lower)).is_none() {
        return Err(Error::Invalid("lower bound not reached".into()));
    }
    Ok(ex)
}

/// All `2^n` sign vectors in lexicographic order, `−` before `+`.
pub fn all_sign_vectors(n: usize) -> Vec<SignVector> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect())
        .collect()
}
