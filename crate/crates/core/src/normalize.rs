//! Removal of arrows that a relation expresses through longer paths.
//!
//! A relation `α − Σ λ_i ω_i` in which `α` occurs in no `ω_i` lets `α` be
//! deleted from the quiver after substituting `Σ λ_i ω_i` for it everywhere.

use crate::error::{Error, Result};
use crate::quiver::{LinComb, PathWord, Presentation, Quiver};
use crate::scalar::{Rational, Scalar};

/// Eliminates arrows until every relation lies in the square of the arrow
/// ideal. Relations are scanned in declaration order and the scan restarts
/// after each elimination.
pub fn normalize_presentation(p: &Presentation) -> Result<Presentation> {
    let mut cur = p.clone();
    loop {
        let Some(ri) = cur.relations.iter().position(|r| r.terms().any(|(w, _)| w.len() <= 1)) else {
            return Ok(cur);
        };
        let rel = &cur.relations[ri];
        if let Some((w, _)) = rel.terms().find(|(w, _)| w.is_trivial()) {
            return Err(Error::Normalize(format!(
                "relation `{}` has a trivial-path term {}",
                rel.display(&cur.quiver),
                w.display(&cur.quiver)
            )));
        }
        let alpha = rel
            .terms()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, _)| w.arrows[0])
            .filter(|&a| rel.terms().filter(|(w, _)| w.arrows.contains(&a)).count() == 1)
            .min()
            .ok_or_else(|| {
                Error::Normalize(format!("no arrow of `{}` can be eliminated", rel.display(&cur.quiver)))
            })?;
        cur = eliminate(&cur, ri, alpha);
    }
}

fn eliminate(p: &Presentation, ri: usize, alpha: usize) -> Presentation {
    let q = &p.quiver;
    let rel = &p.relations[ri];
    let apath = q.arrow_path(alpha);
    let c = rel.coeff(&apath);
    // α = −(1/c) (rel − c α)
    let mut rest = rel.clone();
    rest.remove(&apath);
    let replacement = rest.scale(&c.inv().neg());

    let mut relations = Vec::new();
    for (k, r) in p.relations.iter().enumerate() {
        if k == ri {
            continue;
        }
        let mut out = LinComb::zero();
        for (w, x) in r.terms() {
            out.add_scaled(x, &substitute(q, w, alpha, &replacement));
        }
        if !out.is_zero() {
            relations.push(out);
        }
    }

    let mut nq = Quiver { vertices: q.vertices.clone(), arrows: q.arrows.clone() };
    nq.arrows.remove(alpha);
    let reindex = |w: &PathWord| PathWord {
        source: w.source,
        target: w.target,
        arrows: w.arrows.iter().map(|&a| if a > alpha { a - 1 } else { a }).collect(),
    };
    let relations = relations
        .into_iter()
        .map(|r| {
            let mut o = LinComb::zero();
            for (w, x) in r.terms() {
                o.add_term(reindex(w), x.clone());
            }
            o
        })
        .collect();
    Presentation { quiver: nq, relations }
}

fn substitute(q: &Quiver, w: &PathWord, alpha: usize, repl: &LinComb<Rational>) -> LinComb<Rational> {
    let mut acc = LinComb::from_path(PathWord::trivial(w.source));
    for &a in &w.arrows {
        if a == alpha {
            acc = acc.mul(repl);
        } else {
            acc = acc.mul(&LinComb::from_path(q.arrow_path(a)));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;

    #[test]
    fn admissible_input_unchanged() {
        let p = parse_presentation("vertices: 0 1 2\narrow a: 0 -> 1\narrow b: 1 -> 2\nrel a*b\n").unwrap();
        assert_eq!(normalize_presentation(&p).unwrap(), p);
    }

    #[test]
    fn eliminates_shortcut_arrow() {
        let p = parse_presentation(
            "vertices: 1 2 3\narrow d: 1 -> 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrel d - a*b\n",
        )
        .unwrap();
        let n = normalize_presentation(&p).unwrap();
        assert_eq!(n.quiver.arrows.len(), 2);
        assert!(n.relations.is_empty());
        assert_eq!(n.quiver.arrows[0].name, "a");
    }

    #[test]
    fn trivial_term_is_rejected() {
        let p = parse_presentation("vertices: 0\narrow x: 0 -> 0\nrel x - e(0)\n").unwrap();
        assert!(normalize_presentation(&p).is_err());
    }
}
