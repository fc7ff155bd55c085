//! Confluent path rewriting modulo an admissible ideal.
//!
//! Each rule replaces its leading path by a combination of smaller paths.
//! Completion adds the reductions of overlap ambiguities until none is left.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::quiver::{LinComb, PathWord, Presentation, Quiver};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Rule<S> {
    pub lhs: PathWord,
    pub rhs: LinComb<S>,
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionConfig {
    pub max_rules: usize,
    /// Longest path allowed in a rule or a normal word.
    pub max_len: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig { max_rules: 20_000, max_len: 32 }
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<S> {
    pub quiver: Quiver,
    pub rules: Vec<Rule<S>>,
    /// First arrow of a left-hand side -> rule indices.
    index: HashMap<usize, Vec<usize>>,
    /// 1 + length of the longest normal path; filled in by [`RewriteSystem::normal_words`].
    pub nilpotency: usize,
}

/// Converts the rational relations of `p` into the field `S`.
pub fn relations_in<S: Scalar>(p: &Presentation) -> Result<Vec<LinComb<S>>> {
    p.relations
        .iter()
        .map(|r| {
            r.map_coeffs(|c| {
                let (n, d) = c.numer_denom();
                S::from_ratio(&n, &d).ok_or_else(|| Error::Coefficient(c.to_string()))
            })
        })
        .collect()
}

impl<S: Scalar> RewriteSystem<S> {
    fn empty(q: &Quiver) -> Self {
        RewriteSystem { quiver: q.clone(), rules: Vec::new(), index: HashMap::new(), nilpotency: 0 }
    }

    fn rebuild_index(&mut self) {
        self.index.clear();
        for (i, r) in self.rules.iter().enumerate() {
            self.index.entry(r.lhs.arrows[0]).or_default().push(i);
        }
    }

    /// First rule occurring in `w`, with its position.
    fn find_reducer(&self, w: &PathWord) -> Option<(usize, usize)> {
        for (pos, a) in w.arrows.iter().enumerate() {
            if let Some(ids) = self.index.get(a) {
                for &i in ids {
                    let l = &self.rules[i].lhs.arrows;
                    if w.arrows.len() - pos >= l.len() && &w.arrows[pos..pos + l.len()] == l.as_slice() {
                        return Some((i, pos));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &PathWord) -> bool {
        self.find_reducer(w).is_none()
    }

    /// Fully reduced form of `x`.
    pub fn normal_form(&self, x: &LinComb<S>) -> LinComb<S> {
        let mut work = x.clone();
        let mut out = LinComb::zero();
        while let Some((w, c)) = work.pop_leading() {
            match self.find_reducer(&w) {
                None => out.add_term(w, c),
                Some((i, pos)) => {
                    let rule = &self.rules[i];
                    let u = w.prefix(&self.quiver, pos);
                    let v = w.suffix(&self.quiver, pos + rule.lhs.len());
                    work.add_scaled(&c, &rule.rhs.sandwich(&u, &v));
                }
            }
        }
        out
    }

    pub fn normal_form_path(&self, w: &PathWord) -> LinComb<S> {
        self.normal_form(&LinComb::from_path(w.clone()))
    }

    /// Every nonempty overlap `l1 = u·v`, `l2 = v·w`; returns `(i, j, |u|)`.
    fn overlaps(&self, i: usize, j: usize) -> Vec<usize> {
        let a = &self.rules[i].lhs.arrows;
        let b = &self.rules[j].lhs.arrows;
        let mut out = Vec::new();
        for k in 1..a.len() {
            let tail = &a[k..];
            if tail.len() < b.len() && b.starts_with(tail) {
                out.push(k);
            }
        }
        out
    }

    /// The element `u·r2 − r1·w` attached to an overlap of rules `i` and `j`
    /// at offset `k`.
    fn overlap_element(&self, i: usize, j: usize, k: usize) -> LinComb<S> {
        let (r1, r2) = (&self.rules[i], &self.rules[j]);
        let q = &self.quiver;
        let u = r1.lhs.prefix(q, k);
        let w = r2.lhs.suffix(q, r1.lhs.len() - k);
        let mut e = r2.rhs.sandwich(&u, &PathWord::trivial(r2.lhs.target));
        e.add_scaled(&S::one().neg(), &r1.rhs.sandwich(&PathWord::trivial(r1.lhs.source), &w));
        e
    }

    /// True when every overlap ambiguity reduces to zero and no left-hand side
    /// contains another.
    pub fn is_confluent(&self) -> bool {
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                if i != j && self.rules[i].lhs.find(&self.rules[j].lhs).is_some() {
                    return false;
                }
                for k in self.overlaps(i, j) {
                    if !self.normal_form(&self.overlap_element(i, j, k)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All normal paths, sorted by the path order. Errors if some normal path
    /// reaches the length cap, which means the ideal is not admissible.
    pub fn normal_words(&mut self, max_len: usize) -> Result<Vec<PathWord>> {
        let n = self.quiver.num_vertices();
        let mut out: Vec<PathWord> = (0..n).map(PathWord::trivial).collect();
        let mut frontier: Vec<PathWord> = out.clone();
        let mut longest = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for (a, ar) in self.quiver.arrows.iter().enumerate() {
                    if ar.source != w.target {
                        continue;
                    }
                    let mut arrows = w.arrows.clone();
                    arrows.push(a);
                    let nw = PathWord { source: w.source, target: ar.target, arrows };
                    if self.suffix_reducible(&nw) {
                        continue;
                    }
                    if nw.len() >= max_len {
                        return Err(Error::NotAdmissible(format!(
                            "normal path of length {} found: {}",
                            nw.len(),
                            nw.display(&self.quiver)
                        )));
                    }
                    longest = longest.max(nw.len());
                    next.push(nw);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        self.nilpotency = longest + 1;
        out.sort();
        Ok(out)
    }

    fn suffix_reducible(&self, w: &PathWord) -> bool {
        self.rules.iter().any(|r| w.arrows.ends_with(&r.lhs.arrows))
    }
}

/// Completes the relations of a normalized presentation into a confluent
/// rewriting system.
pub fn complete_rewrite_system<S: Scalar>(p: &Presentation, cfg: CompletionConfig) -> Result<RewriteSystem<S>> {
    if !p.is_admissible_shape() {
        return Err(Error::NotAdmissible("relation with a term of length < 2; normalize first".into()));
    }
    let mut rs = RewriteSystem::<S>::empty(&p.quiver);
    let mut queue: VecDeque<LinComb<S>> = relations_in::<S>(p)?.into();
    while let Some(f) = queue.pop_front() {
        let f = rs.normal_form(&f);
        let Some((lead, c)) = f.leading() else { continue };
        if lead.len() > cfg.max_len {
            return Err(Error::CompletionBudget(format!("rule of length {} exceeds cap {}", lead.len(), cfg.max_len)));
        }
        let lead = lead.clone();
        let inv = c.inv();
        let mut rhs = f.scale(&inv.neg());
        rhs.remove(&lead);

        // Rules whose left side contains the new one are retired and re-queued.
        let mut kept = Vec::with_capacity(rs.rules.len() + 1);
        for r in rs.rules.drain(..) {
            if r.lhs.find(&lead).is_some() {
                let mut g = r.rhs.scale(&S::one().neg());
                g.add_term(r.lhs.clone(), S::one());
                queue.push_back(g);
            } else {
                kept.push(r);
            }
        }
        kept.push(Rule { lhs: lead, rhs });
        rs.rules = kept;
        rs.rebuild_index();
        if rs.rules.len() > cfg.max_rules {
            return Err(Error::CompletionBudget(format!("more than {} rules", cfg.max_rules)));
        }
        let new = rs.rules.len() - 1;
        for other in 0..rs.rules.len() {
            for k in rs.overlaps(new, other) {
                queue.push_back(rs.overlap_element(new, other, k));
            }
            if other != new {
                for k in rs.overlaps(other, new) {
                    queue.push_back(rs.overlap_element(other, new, k));
                }
            }
        }
    }
    // Right-hand sides in normal form.
    for i in 0..rs.rules.len() {
        let r = rs.normal_form(&rs.rules[i].rhs.clone());
        rs.rules[i].rhs = r;
    }
    rs.rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    rs.rebuild_index();
    rs.normal_words(cfg.max_len)?;
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;
    use crate::scalar::Rational;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow m: 2 -> 4\narrow n: 3 -> 4\nrel a*m - b*n\n";

    #[test]
    fn square_has_one_rule() {
        let p = parse_presentation(SQUARE).unwrap();
        let mut rs = complete_rewrite_system::<Rational>(&p, CompletionConfig::default()).unwrap();
        assert_eq!(rs.rules.len(), 1);
        assert!(rs.is_confluent());
        assert_eq!(rs.normal_words(32).unwrap().len(), 9);
    }

    #[test]
    fn monomial_rules_are_the_monomials() {
        let p = parse_presentation("vertices: 0 1 2 3\narrow a: 0 -> 1\narrow b: 1 -> 2\narrow c: 2 -> 3\nrel a*b\nrel b*c\n")
            .unwrap();
        let rs = complete_rewrite_system::<Rational>(&p, CompletionConfig::default()).unwrap();
        assert_eq!(rs.rules.len(), 2);
        assert!(rs.rules.iter().all(|r| r.rhs.is_zero()));
    }

    #[test]
    fn loop_without_relations_is_not_admissible() {
        let p = parse_presentation("vertices: 0\narrow x: 0 -> 0\n").unwrap();
        assert!(complete_rewrite_system::<Rational>(&p, CompletionConfig::default()).is_err());
    }

    #[test]
    fn loop_with_nilpotent_relation() {
        let p = parse_presentation("vertices: 0\narrow x: 0 -> 0\nrel x*x*x\n").unwrap();
        let mut rs = complete_rewrite_system::<Rational>(&p, CompletionConfig::default()).unwrap();
        assert_eq!(rs.normal_words(32).unwrap().len(), 3);
        assert_eq!(rs.nilpotency, 3);
    }
}
