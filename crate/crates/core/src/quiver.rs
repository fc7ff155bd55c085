//! Quivers, paths and linear combinations of paths.
//!
//! Paths compose left to right: `a*b` means "first `a`, then `b`", so the
//! target of `a` must be the source of `b`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Quiver with vertices labelled `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        Quiver { vertices: (0..n).map(|i| i.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertices.iter().any(|v| v == label) {
            return Err(Error::Duplicate(label.to_string()));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("{source} or {target}")));
        }
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn trivial(&self, v: usize) -> PathWord {
        PathWord::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> PathWord {
        let ar = &self.arrows[a];
        PathWord { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Path from a list of arrow indices; errors if consecutive arrows do not compose.
    pub fn path(&self, arrows: &[usize]) -> Result<PathWord> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Invalid("empty arrow list".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NotComposable(format!(
                    "{}*{}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(PathWord {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// `m[s][t]` = number of arrows `s -> t`.
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    /// Reversed quiver: same vertices and names, every arrow flipped.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A path in a quiver, stored as arrow indices.
///
/// Ordered degree-lexicographically: longer paths are larger; paths of equal
/// length compare arrow by arrow using declaration order. This order is
/// compatible with concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        PathWord { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &PathWord) -> Option<PathWord> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord { source: self.source, target: other.target, arrows })
    }

    /// Position of the first occurrence of `sub` as a contiguous nonempty subword.
    pub fn find(&self, sub: &PathWord) -> Option<usize> {
        if sub.arrows.is_empty() || sub.arrows.len() > self.arrows.len() {
            return None;
        }
        self.arrows.windows(sub.arrows.len()).position(|w| w == sub.arrows.as_slice())
    }

    /// Prefix of `k` arrows (trivial at the source when `k == 0`).
    pub fn prefix(&self, q: &Quiver, k: usize) -> PathWord {
        if k == 0 {
            return PathWord::trivial(self.source);
        }
        q.path(&self.arrows[..k]).expect("subpath composes")
    }

    /// Suffix starting after `k` arrows.
    pub fn suffix(&self, q: &Quiver, k: usize) -> PathWord {
        if k == self.arrows.len() {
            return PathWord::trivial(self.target);
        }
        q.path(&self.arrows[k..]).expect("subpath composes")
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e({})", q.vertices[self.source]);
        }
        let names: Vec<&str> = self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect();
        names.join("*")
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<S> {
    terms: BTreeMap<PathWord, S>,
}

impl<S: Scalar> Default for LinComb<S> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> LinComb<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: PathWord) -> Self {
        Self::term(p, S::one())
    }

    pub fn term(p: PathWord, c: S) -> Self {
        let mut l = Self::zero();
        l.add_term(p, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, p: PathWord, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(x) => {
                x.add_assign(&c);
                if x.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &S, other: &LinComb<S>) {
        for (p, x) in &other.terms {
            self.add_term(p.clone(), c.mul(x));
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PathWord, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &PathWord) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn remove(&mut self, p: &PathWord) -> Option<S> {
        self.terms.remove(p)
    }

    /// Removes and returns the largest term.
    pub fn pop_leading(&mut self) -> Option<(PathWord, S)> {
        self.terms.pop_last()
    }

    /// Largest term under the path order.
    pub fn leading(&self) -> Option<(&PathWord, &S)> {
        self.terms.iter().next_back()
    }

    /// `(source, target)` shared by all terms, or `None` if empty or not parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let e = (first.source, first.target);
        it.all(|p| (p.source, p.target) == e).then_some(e)
    }

    /// `u * self * v`, where paths that fail to compose contribute zero.
    pub fn sandwich(&self, u: &PathWord, v: &PathWord) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            if let Some(w) = u.concat(p).and_then(|w| w.concat(v)) {
                out.add_term(w, c.clone());
            }
        }
        out
    }

    /// Product in the path algebra.
    pub fn mul(&self, other: &LinComb<S>) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(w) = p.concat(q) {
                    out.add_term(w, a.mul(b));
                }
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<LinComb<T>> {
        let mut out = LinComb::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = split_sign(c);
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if mag != "1" {
                let _ = write!(s, "{mag}*");
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

/// Sign and magnitude of a coefficient as printed.
fn split_sign<S: Scalar>(c: &S) -> (bool, String) {
    if S::characteristic() != 0 {
        return (false, c.to_string());
    }
    let t = c.to_string();
    match t.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, t),
    }
}

/// A quiver with relations. Coefficients are kept rational so that the same
/// presentation can be realized over any field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<LinComb<Rational>>,
}

impl Presentation {
    pub fn new(quiver: Quiver) -> Self {
        Presentation { quiver, relations: Vec::new() }
    }

    /// Adds a relation after checking that its terms are parallel.
    pub fn add_relation(&mut self, r: LinComb<Rational>) -> Result<()> {
        if r.is_zero() {
            return Ok(());
        }
        if r.endpoints().is_none() {
            return Err(Error::NonParallel(r.display(&self.quiver)));
        }
        self.relations.push(r);
        Ok(())
    }

    pub fn is_admissible_shape(&self) -> bool {
        self.relations.iter().all(|r| r.terms().all(|(p, _)| p.len() >= 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex_compares_length_first() {
        let mut q = Quiver::with_vertices(3);
        let a = q.add_arrow("a", 0, 1).unwrap();
        let b = q.add_arrow("b", 1, 2).unwrap();
        let c = q.add_arrow("c", 0, 2).unwrap();
        let ab = q.path(&[a, b]).unwrap();
        let cc = q.arrow_path(c);
        assert!(ab > cc);
        assert!(q.arrow_path(a) < cc);
        assert!(q.path(&[b, a]).is_err());
    }

    #[test]
    fn lincomb_cancels() {
        let mut q = Quiver::with_vertices(2);
        q.add_arrow("a", 0, 1).unwrap();
        let p = q.arrow_path(0);
        let mut l = LinComb::<Rational>::from_path(p.clone());
        l.add_term(p, Rational::from_i64(-1));
        assert!(l.is_zero());
    }
}
