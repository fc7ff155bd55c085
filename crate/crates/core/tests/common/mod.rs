//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use silting_core::algebra::BasedAlgebra;
use silting_core::complex::TwoTermComplex;
use silting_core::emit::canonical_summand;
use silting_core::homotopy::{hom_shift1_dim, HomK};
use silting_core::mutation::GVector;
use silting_core::Rational;

pub fn row_multiset(m: &[GVector]) -> BTreeMap<GVector, usize> {
    let mut out = BTreeMap::new();
    for r in m {
        *out.entry(r.clone()).or_insert(0) += 1;
    }
    out
}

/// Rows of `x` missing from `y`, counted with multiplicity.
pub fn rows_changed(x: &[GVector], y: &[GVector]) -> usize {
    let (mx, my) = (row_multiset(x), row_multiset(y));
    mx.iter().map(|(r, &c)| c.saturating_sub(my.get(r).copied().unwrap_or(0))).sum()
}

/// Silting sets found without mutation: candidates are presilting complexes
/// built from every g-vector in a box, kept when their endomorphism ring in
/// the homotopy category is one-dimensional; silting sets are `n`-subsets of
/// pairwise compatible candidates.
pub fn brute_force_silting(a: &BasedAlgebra<Rational>, bound: i64) -> BTreeSet<Vec<GVector>> {
    let n = a.num_vertices();
    let mut pool = Vec::new();
    let mut g = vec![-bound; n];
    loop {
        if g.iter().any(|&x| x != 0) {
            if let Some(t) = canonical_summand(a, &g) {
                if HomK::new(a, &t, &t).dim() == 1 {
                    pool.push((g.clone(), t));
                }
            }
        }
        let mut i = 0;
        while i < n && g[i] == bound {
            g[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        g[i] += 1;
    }
    let m = pool.len();
    let ok: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| hom_shift1_dim(a, &pool[i].1, &pool[j].1) == 0).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        ok: &[Vec<bool>],
        chosen: &mut Vec<usize>,
        pool: &[(GVector, TwoTermComplex<Rational>)],
        out: &mut BTreeSet<Vec<GVector>>,
    ) {
        if chosen.len() == n {
            let mut m: Vec<GVector> = chosen.iter().map(|&i| pool[i].0.clone()).collect();
            m.sort_by(|x, y| y.cmp(x));
            out.insert(m);
            return;
        }
        for c in start..pool.len() {
            if ok[c][c] && chosen.iter().all(|&d| ok[c][d] && ok[d][c]) {
                chosen.push(c);
                rec(c + 1, n, ok, chosen, pool, out);
                chosen.pop();
            }
        }
    }
    rec(0, n, &ok, &mut chosen, &pool, &mut out);
    out
}

