//! Checks against independent computations: path counting for monomial
//! algebras, a closed dimension formula for Borel-Schur algebras, Catalan
//! numbers for linear quivers, and a mutation-free search for silting sets.

mod common;

use std::collections::BTreeSet;

use common::brute_force_silting;
use silting_core::algebra::{build_based_algebra, BasedAlgebra};
use silting_core::borel_schur::borel_schur_algebra;
use silting_core::dsl::parse_presentation;
use silting_core::explore::{enumerate_2silt, DEFAULT_BUDGET};
use silting_core::mutation::{GVector, Kernel};
use silting_core::named::linear_presentation;
use silting_core::quiver::Presentation;
use silting_core::{Fp, Rational, Scalar};

fn algebra(text: &str) -> BasedAlgebra<Rational> {
    build_based_algebra(&parse_presentation(text).unwrap()).unwrap()
}

/// Paths of the quiver avoiding every monomial relation as a subpath, as
/// arrow-name sequences, plus one trivial path per vertex.
fn monomial_paths(p: &Presentation, zero: &[Vec<&str>]) -> Vec<Vec<String>> {
    let q = &p.quiver;
    let mut out: Vec<Vec<String>> = (0..q.num_vertices()).map(|_| Vec::new()).collect();
    let mut stack: Vec<(usize, Vec<String>)> = Vec::new();
    for ar in &q.arrows {
        stack.push((ar.target, vec![ar.name.clone()]));
    }
    while let Some((end, path)) = stack.pop() {
        let bad = zero.iter().any(|z| path.windows(z.len()).any(|w| w.iter().zip(z).all(|(x, y)| x == y)));
        if bad {
            continue;
        }
        for ar in q.arrows.iter().filter(|ar| ar.source == end) {
            let mut next = path.clone();
            next.push(ar.name.clone());
            stack.push((ar.target, next));
        }
        out.push(path);
    }
    out
}

#[test]
fn monomial_dimensions_match_path_count() {
    let cases: [(&str, Vec<Vec<&str>>); 4] = [
        ("vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\n", vec![]),
        ("vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\nrel a*b\n", vec![vec!["a", "b"]]),
        (
            "vertices: 1 2 3 4 5\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\narrow d: 4 -> 5\nrel a*b*c\nrel c*d\n",
            vec![vec!["a", "b", "c"], vec!["c", "d"]],
        ),
        (
            "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 1 -> 2\narrow c: 2 -> 3\nrel a*c\n",
            vec![vec!["a", "c"]],
        ),
    ];
    for (text, zero) in cases {
        let p = parse_presentation(text).unwrap();
        let a = algebra(text);
        assert_eq!(a.dim(), monomial_paths(&p, &zero).len(), "{text}");
        assert!(a.check_associative());
        assert!(a.check_idempotents());
    }
}

/// Products of basis paths in a monomial algebra are concatenation or zero.
#[test]
fn monomial_products_are_concatenation() {
    let text = "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\nrel b*c\n";
    let a = algebra(text);
    let names = ["a", "b", "c", "a*b"];
    for x in names {
        for y in names {
            let prod = a.mul(&a.parse_element(x).unwrap(), &a.parse_element(y).unwrap());
            if (x, y) == ("a", "b") {
                assert_eq!(prod, a.parse_element("a*b").unwrap());
            } else {
                assert!(prod.iter().all(|c| c.is_zero()), "{x}*{y} should vanish");
            }
        }
    }
}

/// `S⁺(2, r)` has a basis of upper-triangular 2x2 matrices with nonnegative
/// entries summing to `r`, in every characteristic; so its dimension is
/// `(r+1)(r+2)/2` and each pair of vertices has exactly one nonzero block
/// direction.
fn check_borel_schur<S: Scalar>(r: usize, p: u64) {
    let a = borel_schur_algebra::<S>(r, p).unwrap();
    assert_eq!(a.dim(), (r + 1) * (r + 2) / 2, "r={r} p={p}");
    let t = a.hom_dim_table();
    for i in 0..=r {
        assert_eq!(t[i][i], 1);
        for j in 0..i {
            assert_eq!(t[i][j] + t[j][i], 1, "r={r} p={p} ({i},{j})");
        }
    }
    assert!(a.check_associative());
}

#[test]
fn borel_schur_dimension_formula() {
    for r in 1..=7 {
        for p in [0u64, 2, 3, 5, 7] {
            check_borel_schur::<Rational>(r, p);
        }
        check_borel_schur::<Fp<2>>(r, 2);
        check_borel_schur::<Fp<3>>(r, 3);
    }
}

#[test]
fn linear_counts_are_catalan() {
    let catalan = [2usize, 5, 14, 42, 132];
    for (i, &c) in catalan.iter().enumerate() {
        let a = build_based_algebra::<Rational>(&linear_presentation(i + 1).unwrap()).unwrap();
        let k = Kernel::new(&a);
        let ex = enumerate_2silt(&k, DEFAULT_BUDGET);
        assert!(ex.is_complete());
        assert_eq!(ex.graph.len(), c, "linear:{}", i + 1);
    }
}

#[test]
fn mutation_free_oracle_small_algebras() {
    let cases = [
        "vertices: 1 2\narrow a: 1 -> 2\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrel a*b\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 3 -> 2\n",
        "vertices: 1 2 3\narrow a: 2 -> 1\narrow b: 2 -> 3\n",
    ];
    for text in cases {
        let a = algebra(text);
        let k = Kernel::new(&a);
        let ex = enumerate_2silt(&k, DEFAULT_BUDGET);
        assert!(ex.is_complete());
        let found: BTreeSet<Vec<GVector>> = ex.graph.g_matrices().into_iter().collect();
        assert_eq!(found.len(), ex.graph.len());
        assert_eq!(found, brute_force_silting(&a, 2), "{text}");
    }
}
