//! Borel-Schur algebras `S⁺(n, r)`: compositions, quivers, presentations for
//! `n = 2`, and structural checks.

use crate::algebra::{build_based_algebra, BasedAlgebra};
use crate::error::{Error, Result};
use crate::quiver::{LinComb, Presentation, Quiver};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BorelSchurParams {
    pub n: usize,
    pub r: usize,
    /// 0 or a prime.
    pub p: u64,
}

impl BorelSchurParams {
    pub fn new(n: usize, r: usize, p: u64) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::Invalid("n and r must be positive".into()));
        }
        if p != 0 && !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(BorelSchurParams { n, r, p })
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All compositions of `r` into `n` parts, in increasing lexicographic order.
pub fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            prefix.push(r);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=r {
            prefix.push(first);
            rec(n - 1, r - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Reversal of a composition.
pub fn iota(lambda: &[usize]) -> Vec<usize> {
    lambda.iter().rev().copied().collect()
}

/// Sum of the base-`p` digits of `s`.
pub fn p_digit_sum(mut s: u64, p: u64) -> u64 {
    assert!(p >= 2);
    let mut t = 0;
    while s > 0 {
        t += s % p;
        s /= p;
    }
    t
}

fn composition_label(l: &[usize]) -> String {
    if l.iter().all(|&x| x < 10) {
        l.iter().map(|x| x.to_string()).collect()
    } else {
        l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
    }
}

/// Arrow letter for the step `p^d`.
fn step_letter(d: u32) -> String {
    let letters = ['a', 'b', 'c', 'd', 'f', 'g', 'h'];
    match letters.get(d as usize) {
        Some(c) => c.to_string(),
        None => format!("s{d}_"),
    }
}

/// Powers `p^d <= bound` (just `1` when `p = 0`).
fn steps(p: u64, bound: usize) -> Vec<(u32, usize)> {
    if p == 0 {
        return vec![(0, 1)];
    }
    let mut out = Vec::new();
    let mut d = 0;
    let mut s = 1usize;
    while s <= bound {
        out.push((d, s));
        d += 1;
        s *= p as usize;
    }
    out
}

/// Quiver of `S⁺(n, r)`: vertices are compositions in lexicographic order and
/// there is an arrow `λ -> μ` whenever `μ − λ = p^d γ_i`, where `γ_i` has
/// `1` at position `i` and `−1` at position `i + 1`.
pub fn borel_schur_quiver(params: BorelSchurParams) -> Quiver {
    let BorelSchurParams { n, r, p } = params;
    if n == 2 {
        return delta_quiver(r, p);
    }
    let comps = compositions(n, r);
    let mut q = Quiver::new();
    for c in &comps {
        q.add_vertex(&composition_label(c)).expect("distinct compositions");
    }
    let index = |c: &Vec<usize>| comps.iter().position(|x| x == c);
    for (d, step) in steps(p, r).into_iter().rev() {
        for i in 0..n - 1 {
            for (li, l) in comps.iter().enumerate() {
                if l[i + 1] < step {
                    continue;
                }
                let mut m = l.clone();
                m[i] += step;
                m[i + 1] -= step;
                let mi = index(&m).expect("composition");
                let name = format!("{}{}_{}_{}", step_letter(d), i + 1, li, mi);
                q.add_arrow(&name, li, mi).expect("fresh arrow");
            }
        }
    }
    q
}

/// The quiver `Δ_r` with vertices `0..=r` (vertex `i` is the composition
/// `(r − i, i)`) and arrows `s -> s − p^d`, named by step letter and target.
/// Arrows with larger steps are declared first, so the plain step-one arrows
/// are the largest letters in the path order.
fn delta_quiver(r: usize, p: u64) -> Quiver {
    let mut q = Quiver::with_vertices(r + 1);
    for (d, step) in steps(p, r).into_iter().rev() {
        for t in 0..=r {
            if t + step <= r {
                q.add_arrow(&format!("{}{}", step_letter(d), t), t + step, t).expect("fresh arrow");
            }
        }
    }
    q
}

/// Name of the arrow `s -> t` of `Δ_r`, if it exists.
fn delta_arrow(q: &Quiver, p: u64, s: usize, t: usize) -> Option<usize> {
    if t >= s || s >= q.num_vertices() {
        return None;
    }
    let step = s - t;
    let d = if p == 0 {
        (step == 1).then_some(0)?
    } else {
        let mut d = 0u32;
        let mut x = 1usize;
        while x < step {
            x *= p as usize;
            d += 1;
        }
        (x == step).then_some(d)?
    };
    q.arrow_index(&format!("{}{}", step_letter(d), t))
}

/// Presentation of `S⁺(2, r)`: the quiver `Δ_r` with the chain monomials and
/// the commutativity relations. A relation is emitted only when all of its
/// arrows exist in `Δ_r`.
pub fn borel_schur_presentation_n2(r: usize, p: u64) -> Result<Presentation> {
    BorelSchurParams::new(2, r, p)?;
    let q = delta_quiver(r, p);
    let mut pres = Presentation::new(q.clone());
    if p == 0 {
        return Ok(pres);
    }
    let pu = p as usize;
    let path = |vs: &[usize]| -> Option<crate::quiver::PathWord> {
        let arrows: Option<Vec<usize>> = vs.windows(2).map(|w| delta_arrow(&q, p, w[0], w[1])).collect();
        q.path(&arrows?).ok()
    };
    // p-fold chains of equal steps p^k.
    let mut pk = 1usize;
    while pk * pu <= r {
        for s in 0..=r {
            if s + pk * pu > r {
                break;
            }
            let vs: Vec<usize> = (0..=pu).rev().map(|j| s + j * pk).collect();
            if let Some(w) = path(&vs) {
                pres.add_relation(LinComb::from_path(w))?;
            }
        }
        pk *= pu;
    }
    // Commutativity squares for two distinct steps p^k > p^l.
    let powers: Vec<usize> = steps(p, r).into_iter().map(|(_, s)| s).collect();
    for (ki, &a) in powers.iter().enumerate() {
        for &b in &powers[..ki] {
            for s in 0..=r {
                if s + a + b > r {
                    break;
                }
                let (Some(w1), Some(w2)) = (path(&[s + a + b, s + a, s]), path(&[s + a + b, s + b, s])) else {
                    continue;
                };
                let mut rel = LinComb::from_path(w1);
                rel.add_term(w2, Rational::from_i64(-1));
                pres.add_relation(rel)?;
            }
        }
    }
    Ok(pres)
}

pub fn borel_schur_algebra<S: Scalar>(r: usize, p: u64) -> Result<BasedAlgebra<S>> {
    build_based_algebra(&borel_schur_presentation_n2(r, p)?)
}

/// Outcome of the structural checks on `S⁺(2, r)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub acyclic: bool,
    pub schurian: bool,
    pub anti_automorphism: bool,
    pub one_point_extension: bool,
    pub dim: usize,
    pub nonzero_hom_entries: usize,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.acyclic && self.schurian && self.anti_automorphism && self.one_point_extension
    }
}

/// Triangularity, the Schurian property, the anti-automorphism `i ↦ r − i`
/// and the one-point extension over `S⁺(2, r − 1)`.
pub fn structural_checks<S: Scalar>(r: usize, p: u64) -> Result<StructuralReport> {
    let a = borel_schur_algebra::<S>(r, p)?;
    let q = a.quiver();
    let table = a.hom_dim_table();
    let mut rep = StructuralReport {
        acyclic: q.is_acyclic(),
        schurian: table.iter().flatten().all(|&d| d <= 1),
        dim: a.dim(),
        nonzero_hom_entries: table.iter().flatten().filter(|&&d| d > 0).count(),
        ..Default::default()
    };
    let sigma: Vec<usize> = (0..=r).map(|i| r - i).collect();
    rep.anti_automorphism = crate::transport::schurian_anti_automorphism(&a, &sigma).is_ok();
    rep.one_point_extension = if r >= 2 {
        let source = q.arrows.iter().all(|ar| ar.target != r);
        let t = a.idempotent_truncation(&(0..r).collect::<Vec<_>>())?;
        let smaller = borel_schur_algebra::<S>(r - 1, p)?;
        source
            && t.dim() == smaller.dim()
            && t.quiver().arrow_matrix() == smaller.quiver().arrow_matrix()
            && t.hom_dim_table() == smaller.hom_dim_table()
            && t.minimal_relation_count() == smaller.minimal_relation_count()
    } else {
        true
    };
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_of_compositions() {
        let c: Vec<String> = compositions(3, 3).iter().map(|c| composition_label(c)).collect();
        assert_eq!(c, ["003", "012", "021", "030", "102", "111", "120", "201", "210", "300"]);
        assert_eq!(compositions(1, 4), vec![vec![4]]);
        assert_eq!(compositions(2, 4).len(), 5);
    }

    #[test]
    fn digit_sums() {
        assert_eq!(p_digit_sum(4, 2), 1);
        assert_eq!(p_digit_sum(3, 2), 2);
        let steps: Vec<usize> = (1..=4).filter(|&s| p_digit_sum(s as u64, 2) == 1).collect();
        assert_eq!(steps, [1, 2, 4]);
    }

    #[test]
    fn relation_counts_match_displayed_ideals() {
        for (r, p, k) in [(4, 2, 6), (5, 2, 10), (5, 3, 5), (6, 3, 7), (7, 5, 5), (6, 5, 3)] {
            assert_eq!(borel_schur_presentation_n2(r, p).unwrap().relations.len(), k, "r={r} p={p}");
        }
    }

    #[test]
    fn small_cases_have_expected_dimensions() {
        let a = borel_schur_algebra::<Rational>(4, 2).unwrap();
        assert_eq!(a.dim(), 15);
        assert_eq!(a.hom_basis(0, 4), ["c0"]);
        assert!(a.hom_basis(4, 0).is_empty());
        assert_eq!(a.hom_basis(0, 0), ["e(0)"]);
        // a0..a3, b0..b2, c0
        assert_eq!(a.quiver().arrows.len(), 8);
        assert!(a.check_associative());
        assert_eq!(borel_schur_algebra::<Rational>(5, 3).unwrap().dim(), 21);
        let lin = borel_schur_algebra::<Rational>(3, 0).unwrap();
        assert_eq!(lin.quiver().arrows.len(), 3);
        assert_eq!(lin.dim(), 10);
    }

    #[test]
    fn structural_checks_pass() {
        for (r, p) in [(4, 2), (5, 2), (5, 3), (6, 5), (3, 0)] {
            let rep = structural_checks::<Rational>(r, p).unwrap();
            assert!(rep.all_pass(), "r={r} p={p}: {rep:?}");
        }
        let rep = structural_checks::<Rational>(6, 5).unwrap();
        assert_eq!(rep.nonzero_hom_entries, 28);
    }

    #[test]
    fn iota_is_involution() {
        for c in compositions(3, 3) {
            assert_eq!(iota(&iota(&c)), c);
        }
        assert_eq!(iota(&[0, 1, 2]), vec![2, 1, 0]);
    }
}
