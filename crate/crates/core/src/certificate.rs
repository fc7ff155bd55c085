//! τ-tilting infiniteness certificates for Borel-Schur algebras and the
//! finite/infinite classification for `n = 2`.
//!
//! A certificate builds a quotient or idempotent truncation of `S⁺(2, r)` and
//! matches it against a tame concealed target: vertex count, arrow
//! multiplicities up to a vertex permutation, Hom-dimension table, total
//! dimension and minimal relation count. This is a structural match, not an
//! isomorphism test.

use serde::Serialize;

use crate::algebra::{build_based_algebra, BasedAlgebra};
use crate::borel_schur::{borel_schur_algebra, borel_schur_quiver, is_prime, BorelSchurParams};
use crate::dsl::parse_presentation;
use crate::error::{Error, Result};
use crate::explore::enumerate_2silt;
use crate::mutation::Kernel;
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::transport::same_shape;

/// Tame concealed targets, as DSL presentations.
pub const CONCEALED_A3_SQUARE: &str = "\
vertices: 0 1 2 3
arrow u: 0 -> 1
arrow v: 0 -> 2
arrow w: 1 -> 3
arrow z: 2 -> 3
";

pub const CONCEALED_A5_BIPARTITE: &str = "\
vertices: 0 1 2 3 4 5
arrow u0: 2 -> 0
arrow u1: 2 -> 1
arrow v0: 4 -> 0
arrow v3: 4 -> 3
arrow w1: 5 -> 1
arrow w3: 5 -> 3
";

pub const CONCEALED_D6: &str = "\
vertices: 0 1 2 3 4 5 6
arrow x1: 4 -> 1
arrow x3: 4 -> 3
arrow y3: 6 -> 3
arrow y5: 6 -> 5
arrow p0: 1 -> 0
arrow q0: 3 -> 0
arrow q2: 3 -> 2
arrow s2: 5 -> 2
rel x1*p0 - x3*q0
rel y3*q2 - y5*s2
";

pub const CONCEALED_E7_QUOTIENT: &str = "\
vertices: 0 1 2 3 4 5 6 7
arrow h6: 7 -> 6
arrow h5: 6 -> 5
arrow h4: 5 -> 4
arrow v2: 7 -> 2
arrow v1: 6 -> 1
arrow v0: 5 -> 0
arrow l2: 3 -> 2
arrow l1: 2 -> 1
arrow l0: 1 -> 0
rel h6*v1 - v2*l1
rel h5*v0 - v1*l0
";

pub const CONCEALED_E7_TRUNCATION: &str = "\
vertices: 0 1 2 3 5 6 7 8
arrow h7: 8 -> 7
arrow h6: 7 -> 6
arrow h5: 6 -> 5
arrow v1: 8 -> 1
arrow v0: 7 -> 0
arrow l2: 3 -> 2
arrow l1: 2 -> 1
arrow l0: 1 -> 0
rel h7*v0 - v1*l0
";

/// Built-in target names and their presentations.
pub const CONCEALED_TARGETS: [(&str, &str, &str); 5] = [
    ("a3sq", "Ã3", CONCEALED_A3_SQUARE),
    ("a5bi", "Ã5", CONCEALED_A5_BIPARTITE),
    ("d6", "D̃6", CONCEALED_D6),
    ("e7-27", "Ẽ7", CONCEALED_E7_QUOTIENT),
    ("e7-p1", "Ẽ7", CONCEALED_E7_TRUNCATION),
];

pub fn concealed_target(name: &str) -> Option<(&'static str, &'static str)> {
    CONCEALED_TARGETS.iter().find(|(n, _, _)| *n == name).map(|&(_, ty, text)| (ty, text))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Kill the listed elements, written with basis-element names.
    Quotient(Vec<String>),
    /// Keep the listed vertices (by label), then kill the listed elements.
    Truncation { vertices: Vec<String>, kill: Vec<String> },
}

impl Construction {
    pub fn apply<S: Scalar>(&self, a: &BasedAlgebra<S>) -> Result<BasedAlgebra<S>> {
        let kill = |b: &BasedAlgebra<S>, gens: &[String]| -> Result<BasedAlgebra<S>> {
            if gens.is_empty() {
                return Ok(b.clone());
            }
            let vs: Vec<Vec<S>> = gens.iter().map(|g| b.parse_element(g)).collect::<Result<_>>()?;
            b.quotient_by_ideal(&vs)
        };
        match self {
            Construction::Quotient(gens) => kill(a, gens),
            Construction::Truncation { vertices, kill: gens } => {
                let idx: Vec<usize> = vertices
                    .iter()
                    .map(|v| {
                        a.labels().iter().position(|l| l == v).ok_or_else(|| Error::Invalid(format!("unknown vertex {v}")))
                    })
                    .collect::<Result<_>>()?;
                kill(&a.idempotent_truncation(&idx)?, gens)
            }
        }
    }
}

/// A bijection `π` from target vertices to vertices of `x` with
/// `arrows_y[i][j] = arrows_x[π i][π j]` and the same for Hom dimensions.
pub fn find_vertex_permutation<S: Scalar>(x: &BasedAlgebra<S>, y: &BasedAlgebra<S>) -> Option<Vec<usize>> {
    let n = x.num_vertices();
    if y.num_vertices() != n {
        return None;
    }
    let (qx, qy) = (x.quiver().arrow_matrix(), y.quiver().arrow_matrix());
    let (hx, hy) = (x.hom_dim_table(), y.hom_dim_table());
    let ok = |i: usize, j: usize, pi: usize, pj: usize| qy[i][j] == qx[pi][pj] && hy[i][j] == hx[pi][pj];
    fn go(
        k: usize,
        n: usize,
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        if k == n {
            return true;
        }
        for c in 0..n {
            if used[c] || !ok(k, k, c, c) || !(0..k).all(|j| ok(k, j, c, pi[j]) && ok(j, k, pi[j], c)) {
                continue;
            }
            used[c] = true;
            pi.push(c);
            if go(k + 1, n, pi, used, ok) {
                return true;
            }
            pi.pop();
            used[c] = false;
        }
        false
    }
    let mut pi = Vec::with_capacity(n);
    go(0, n, &mut pi, &mut vec![false; n], &ok).then_some(pi)
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub source: String,
    pub construction: Construction,
    pub target: String,
    pub target_type: String,
    pub vertices: (usize, usize),
    pub dims: (usize, usize),
    pub relations: (usize, usize),
    /// Target vertex `i` goes to vertex `permutation[i]` of the construction.
    pub permutation: Option<Vec<usize>>,
    pub pass: bool,
}

pub fn concealed_certificate<S: Scalar>(
    source: &str,
    a: &BasedAlgebra<S>,
    construction: &Construction,
    target: &str,
) -> Result<Certificate> {
    let (ty, text) = concealed_target(target).ok_or_else(|| Error::Invalid(format!("unknown target {target}")))?;
    let pres = parse_presentation(text)?;
    if !pres.quiver.is_acyclic() {
        return Err(Error::Invalid("target quiver has a cycle".into()));
    }
    let t: BasedAlgebra<S> = build_based_algebra(&pres)?;
    let c = construction.apply(a)?;
    let permutation = find_vertex_permutation(&c, &t);
    let relations = (c.minimal_relation_count(), t.minimal_relation_count());
    let pass = permutation.is_some() && c.dim() == t.dim() && relations.0 == relations.1;
    Ok(Certificate {
        source: source.to_string(),
        construction: construction.clone(),
        target: target.to_string(),
        target_type: ty.to_string(),
        vertices: (c.num_vertices(), t.num_vertices()),
        dims: (c.dim(), t.dim()),
        relations,
        permutation,
        pass,
    })
}

/// A certificate for `S⁺(2, r)` over `p`.
#[derive(Clone, Debug)]
pub struct CertificateRecipe {
    pub r: usize,
    pub p: u64,
    pub construction: Construction,
    pub target: &'static str,
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The minimal τ-tilting infinite cases for `n = 2` and their certificates.
/// Arrow names are a letter for the step (`a` = 1, `b` = p, `c` = p²) and the
/// target vertex.
pub fn standard_certificates() -> Vec<CertificateRecipe> {
    vec![
        CertificateRecipe { r: 5, p: 2, construction: Construction::Quotient(names(&["a0", "a2", "a4", "b1", "b2"])), target: "a5bi" },
        CertificateRecipe { r: 6, p: 3, construction: Construction::Quotient(names(&["a1", "a4"])), target: "d6" },
        CertificateRecipe { r: 7, p: 5, construction: Construction::Quotient(names(&["a3"])), target: "e7-27" },
        CertificateRecipe {
            r: 8,
            p: 7,
            construction: Construction::Truncation {
                vertices: names(&["8", "7", "6", "5", "3", "2", "1", "0"]),
                kill: names(&["a4*a3"]),
            },
            target: "e7-p1",
        },
    ]
}

pub fn run_certificate<S: Scalar>(recipe: &CertificateRecipe) -> Result<Certificate> {
    let a = borel_schur_algebra::<S>(recipe.r, recipe.p)?;
    concealed_certificate(&format!("bs:2,{},{}", recipe.r, recipe.p), &a, &recipe.construction, recipe.target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Finite,
    Infinite,
}

/// The classification of τ-tilting finite `S⁺(n, r)`.
pub fn expected_verdict(n: usize, r: usize, p: u64) -> Verdict {
    let finite = match n {
        0 | 1 => true,
        2 => match p {
            0 => true,
            2 => r <= 4,
            3 => r <= 5,
            5 => r <= 6,
            _ => r <= p as usize,
        },
        _ => r <= 1,
    };
    if finite {
        Verdict::Finite
    } else {
        Verdict::Infinite
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Full enumeration of `2-silt` finished.
    Enumeration { nodes: usize },
    /// Enumeration hit the budget; nothing is concluded.
    Inconclusive { budget: usize },
    /// A certificate for `S⁺(2, base_r)` plus the chain of truncations
    /// `S⁺(2, s − 1) = e S⁺(2, s) e` from `r` down to `base_r`.
    Certificate { certificate: Certificate, base_r: usize, chain_verified: bool },
    /// Only the quiver is available.
    Citation { note: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub r: usize,
    pub p: u64,
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// Whether the computed evidence supports the verdict; `None` for
    /// citation-only verdicts and inconclusive enumerations.
    pub supported: Option<bool>,
}

/// `S⁺(2, s − 1)` is the truncation of `S⁺(2, s)` at `{0, …, s − 1}`, for
/// every `s` in `base_r + 1 ..= r`.
fn truncation_chain<S: Scalar>(r: usize, base_r: usize, p: u64) -> Result<bool> {
    let mut big = borel_schur_algebra::<S>(r, p)?;
    for s in (base_r + 1..=r).rev() {
        let small = borel_schur_algebra::<S>(s - 1, p)?;
        let t = big.idempotent_truncation(&(0..s).collect::<Vec<_>>())?;
        if !same_shape(&t, &small) {
            return Ok(false);
        }
        big = small;
    }
    Ok(true)
}

/// Vertices of `q` inducing a full subquiver isomorphic to `target`.
pub fn full_subquiver(q: &Quiver, target: &Quiver) -> Option<Vec<usize>> {
    let (mq, mt) = (q.arrow_matrix(), target.arrow_matrix());
    let (n, k) = (q.num_vertices(), target.num_vertices());
    fn go(i: usize, k: usize, n: usize, pick: &mut Vec<usize>, mq: &[Vec<usize>], mt: &[Vec<usize>]) -> bool {
        if i == k {
            return true;
        }
        for c in 0..n {
            if pick.contains(&c) || mq[c][c] != mt[i][i] {
                continue;
            }
            if (0..i).all(|j| mq[c][pick[j]] == mt[i][j] && mq[pick[j]][c] == mt[j][i]) {
                pick.push(c);
                if go(i + 1, k, n, pick, mq, mt) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    let mut pick = Vec::new();
    go(0, k, n, &mut pick, &mq, &mt).then_some(pick)
}

/// Classification verdict for `S⁺(n, r)` with its evidence path.
pub fn classification_report<S: Scalar>(n: usize, r: usize, p: u64, budget: usize) -> Result<ClassificationReport> {
    if p != 0 && !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let verdict = expected_verdict(n, r, p);
    let (evidence, supported) = if n >= 3 {
        let note = if r >= 2 {
            let q = borel_schur_quiver(BorelSchurParams::new(3, 2, p)?);
            let square = parse_presentation(CONCEALED_A3_SQUARE)?.quiver;
            match full_subquiver(&q, &square) {
                Some(vs) => format!(
                    "quiver-level evidence only: the quiver of S⁺(3,2) has a full Ã3 subquiver on vertices {vs:?}"
                ),
                None => "quiver-level evidence only".to_string(),
            }
        } else {
            "quiver-level evidence only".to_string()
        };
        (Evidence::Citation { note }, None)
    } else if n <= 1 {
        (Evidence::Citation { note: "local algebra".into() }, None)
    } else if verdict == Verdict::Finite {
        let a = borel_schur_algebra::<S>(r, p)?;
        let k = Kernel::new(&a);
        let ex = enumerate_2silt(&k, budget);
        if ex.is_complete() {
            (Evidence::Enumeration { nodes: ex.graph.len() }, Some(true))
        } else {
            (Evidence::Inconclusive { budget }, None)
        }
    } else {
        let recipe = if p > 7 {
            let path: Vec<String> = (3..=p - 3).rev().map(|i| format!("a{i}")).collect();
            CertificateRecipe {
                r: p as usize + 1,
                p,
                construction: Construction::Truncation {
                    vertices: [p + 1, p, p - 1, p - 2, 3, 2, 1, 0].iter().map(|v| v.to_string()).collect(),
                    kill: vec![path.join("*")],
                },
                target: "e7-p1",
            }
        } else {
            standard_certificates()
                .into_iter()
                .find(|c| c.p == p)
                .ok_or_else(|| Error::Invalid(format!("no certificate for p = {p}")))?
        };
        let certificate = run_certificate::<S>(&recipe)?;
        let chain_verified = truncation_chain::<S>(r, recipe.r, p)?;
        let ok = certificate.pass && chain_verified;
        (Evidence::Certificate { certificate, base_r: recipe.r, chain_verified }, Some(ok))
    };
    Ok(ClassificationReport { n, r, p, verdict, evidence, supported })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn certificates_pass() {
        for recipe in standard_certificates() {
            let c = run_certificate::<Rational>(&recipe).unwrap();
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn wrong_quotient_fails() {
        let a = borel_schur_algebra::<Rational>(5, 2).unwrap();
        let c = concealed_certificate("x", &a, &Construction::Quotient(names(&["a0", "a2"])), "a5bi").unwrap();
        assert!(!c.pass);
    }

    #[test]
    fn verdict_table() {
        assert_eq!(expected_verdict(2, 4, 2), Verdict::Finite);
        assert_eq!(expected_verdict(2, 5, 2), Verdict::Infinite);
        assert_eq!(expected_verdict(2, 6, 5), Verdict::Finite);
        assert_eq!(expected_verdict(2, 7, 5), Verdict::Infinite);
        assert_eq!(expected_verdict(2, 7, 7), Verdict::Finite);
        assert_eq!(expected_verdict(2, 8, 7), Verdict::Infinite);
        assert_eq!(expected_verdict(3, 2, 0), Verdict::Infinite);
    }
}
