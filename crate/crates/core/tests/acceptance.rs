//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any
//! criterion other than the two recorded failures (5 and 8) fails, or if
//! one of those starts passing without the record being updated.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use silting_core::aepsilon::build_a_epsilon;
use silting_core::algebra::{build_based_algebra, BasedAlgebra};
use silting_core::borel_schur::borel_schur_algebra;
use silting_core::certificate::{classification_report, expected_verdict, run_certificate, standard_certificates};
use silting_core::dsl::parse_presentation;
use silting_core::explore::{all_sign_vectors, enumerate_2silt, enumerate_2silt_epsilon, sign_region_of, DEFAULT_BUDGET};
use silting_core::fixture::{verify_fixture, FixtureReport, FixtureStatus};
use silting_core::mutation::{GVector, Kernel};
use silting_core::named::{named_presentation, BIPARTITE_A3, SQUARE};
use silting_core::rewrite::{complete_rewrite_system, CompletionConfig};
use silting_core::transport::{duality_transport, sigma_transport, tilting_transport};
use silting_core::Rational;

use common::{brute_force_silting, rows_changed};

const KNOWN_FAILURES: [usize; 2] = [5, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> FixtureReport {
    verify_fixture::<Rational>(&root().join("fixtures/paper").join(name), DEFAULT_BUDGET).unwrap()
}

fn fixtures_pass(names: &[&str]) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        let r = fixture(n);
        ok &= r.status == FixtureStatus::Pass;
        let mark = if r.status == FixtureStatus::Pass { "" } else { " MISMATCH" };
        parts.push(format!("{}={} (want {}){mark}", n.trim_end_matches(".json"), r.count, r.expect_count));
    }
    (ok, parts)
}

fn within(t: Duration, limit_s: u64) -> bool {
    t <= Duration::from_secs(limit_s)
}

fn dsl(text: &str) -> BasedAlgebra<Rational> {
    build_based_algebra(&parse_presentation(text).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let a = dsl(SQUARE);
    let k = Kernel::new(&a);
    let ex = enumerate_2silt(&k, DEFAULT_BUDGET);
    let t = ex.report.millis;
    let pass = ex.is_complete() && ex.graph.len() == 46 && t < 1000;
    Outcome { pass, detail: format!("{} nodes, {t} ms", ex.graph.len()) }
}

fn single_fixture(name: &str, limit_s: u64) -> Outcome {
    let t0 = Instant::now();
    let r = fixture(name);
    let t = t0.elapsed();
    Outcome {
        pass: r.status == FixtureStatus::Pass && r.gmatrices_checked && within(t, limit_s),
        detail: format!(
            "{} counted, {} τ-tilting, g-matrices {}, {} ms",
            r.count,
            r.tau_count,
            if r.first_difference.is_none() { "match" } else { "differ" },
            t.as_millis()
        ),
    }
}

fn criterion_4() -> Outcome {
    let t0 = Instant::now();
    let (ok, parts) = fixtures_pass(&[
        "bs-2-5-p3-reduced-mmppmp.json",
        "bs-2-5-p3-mmmppp.json",
        "bs-2-5-p3-mmmmpp.json",
        "bs-2-5-p3-mmmpmp.json",
    ]);
    let t = t0.elapsed();
    Outcome { pass: ok && within(t, 60), detail: format!("{}; {} ms", parts.join(", "), t.as_millis()) }
}

fn criterion_5() -> Outcome {
    let t0 = Instant::now();
    let (ok, parts) = fixtures_pass(&[
        "bs-2-6-p5-reduced-a-mppmpmp.json",
        "bs-2-6-p5-reduced-b-mpmppmp.json",
        "bs-2-6-p5-mmmmpmp.json",
        "bs-2-6-p5-mmmpmmp.json",
        "bs-2-6-p5-mmmppmp.json",
        "bs-2-6-p5-mmpmpmp.json",
        "bs-2-6-p5-mmmmppp.json",
        "bs-2-6-p5-mmmmmpp.json",
        "bs-2-6-p5-mmmpmpp.json",
        "bs-2-6-p5-mmpmmpp.json",
    ]);
    let t = t0.elapsed();
    Outcome { pass: ok && within(t, 600), detail: format!("{}; {} ms", parts.join(", "), t.as_millis()) }
}

/// `|2-silt_ε A| = |2-silt_ε A_ε|` with equal total g-vector sets.
fn reduction_holds(a: &BasedAlgebra<Rational>) -> bool {
    let k = Kernel::new(a);
    all_sign_vectors(a.num_vertices()).into_iter().all(|eps| {
        let b = build_a_epsilon(a, &eps).unwrap();
        let kb = Kernel::new(&b);
        let x = enumerate_2silt_epsilon(&k, &eps, DEFAULT_BUDGET).unwrap();
        let y = enumerate_2silt_epsilon(&kb, &eps, DEFAULT_BUDGET).unwrap();
        let tx: BTreeSet<GVector> = x.graph.nodes.iter().map(|n| n.total_g()).collect();
        let ty: BTreeSet<GVector> = y.graph.nodes.iter().map(|n| n.total_g()).collect();
        x.is_complete() && y.is_complete() && x.graph.len() == y.graph.len() && tx == ty
    })
}

fn criterion_6() -> Outcome {
    let cases = [
        ("bs:2,4,2", borel_schur_algebra::<Rational>(4, 2).unwrap()),
        ("square", dsl(SQUARE)),
        ("bipartite-a3", dsl(BIPARTITE_A3)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, a) in &cases {
        let ok = reduction_holds(a);
        pass &= ok;
        parts.push(format!("{name} {}", if ok { "all regions agree" } else { "disagrees" }));
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, p) in [(4usize, 2u64), (5, 3)] {
        let a = borel_schur_algebra::<Rational>(r, p).unwrap();
        let sigma: Vec<usize> = (0..=r).rev().collect();
        let (mut regions, mut sigma_ok, mut dual_ok, mut strong) = (0, 0, 0, true);
        for eps in all_sign_vectors(r + 1) {
            regions += 1;
            let s = sigma_transport(&a, &sigma, &eps, DEFAULT_BUDGET).unwrap();
            let d = duality_transport(&a, &eps, DEFAULT_BUDGET).unwrap();
            sigma_ok += (s.count == s.count_prime) as usize;
            dual_ok += (d.count == d.count_opposite) as usize;
            strong &= s.pass() && d.pass();
        }
        pass &= sigma_ok == regions && dual_ok == regions;
        parts.push(format!(
            "bs:2,{r},{p} {sigma_ok}/{regions} under -σ, {dual_ok}/{regions} under duality{}",
            if strong { ", g-matrices transported too" } else { "" }
        ));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_8() -> Outcome {
    let a = borel_schur_algebra::<Rational>(6, 5).unwrap();
    let text = std::fs::read_to_string(root().join("fixtures/dsl/bs-2-6-p5-transport-target.dsl")).unwrap();
    let b = dsl(&text);
    let rec = tilting_transport(&a, 3, &[-1, 1, 1, -1, -1, 1, 1], Some(&b), DEFAULT_BUDGET).unwrap();
    let mut shown: Vec<Vec<i64>> = (0..7).map(|i| (0..7).map(|j| (i == j) as i64).collect()).collect();
    shown[3] = vec![0, 0, 0, -1, 1, 0, 0];
    let g_ok = rec.g_matrix == shown;
    let pass = rec.is_tilting && g_ok && rec.images_equal;
    let (pa, pb) = rec.phi_counts.unwrap_or((0, 0));
    Outcome {
        pass,
        detail: format!(
            "tilting {}, G {}, ε' {}, region image {} ({} -> {} of {}), Φ-level images {} ({pa} vs {pb})",
            rec.is_tilting,
            if g_ok { "matches" } else { "differs" },
            rec.epsilon_prime,
            if rec.images_equal {
                "equal"
            } else if rec.images_contained {
                "strictly contained"
            } else {
                "not contained"
            },
            rec.count,
            rec.count,
            rec.count_target,
            if rec.phi_images_equal == Some(true) { "equal" } else { "differ" },
        ),
    }
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for recipe in standard_certificates() {
        let t0 = Instant::now();
        let c = run_certificate::<Rational>(&recipe).unwrap();
        let t = t0.elapsed();
        pass &= c.pass && within(t, 10);
        parts.push(format!("{} -> {} {} ({} ms)", c.source, c.target_type, if c.pass { "ok" } else { "fails" }, t.as_millis()));
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn criterion_10() -> Outcome {
    let (mut total, mut agree) = (0, 0);
    let mut bad = Vec::new();
    for p in [0u64, 2, 3, 5, 7] {
        for r in 1..=7 {
            total += 1;
            let rep = classification_report::<Rational>(2, r, p, DEFAULT_BUDGET).unwrap();
            if rep.verdict == expected_verdict(2, r, p) && rep.supported == Some(true) {
                agree += 1;
            } else {
                bad.push(format!("(r={r},p={p})"));
            }
        }
    }
    Outcome {
        pass: agree == total,
        detail: format!("{agree}/{total} verdicts supported{}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join(" ")) }),
    }
}

fn criterion_11() -> Outcome {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let algebras = [
        ("bs:2,4,2", borel_schur_algebra::<Rational>(4, 2).unwrap()),
        ("square", dsl(SQUARE)),
        ("bipartite-a3", dsl(BIPARTITE_A3)),
    ];
    for (name, a) in &algebras {
        let k = Kernel::new(a);
        let ex = enumerate_2silt(&k, DEFAULT_BUDGET);
        let g = &ex.graph;
        if !g.degrees_complete() {
            failures.push(format!("{name}: regularity"));
        }
        let mut involution = true;
        let mut one_row = true;
        for &(s, t, pos) in &g.edges {
            let (x, y) = (&g.nodes[s], &g.nodes[t]);
            one_row &= rows_changed(&x.g_matrix, &y.g_matrix) == 1;
            let fresh = y.ids.iter().position(|i| !x.ids.contains(i)).unwrap();
            involution &= k.left_mutation(&x.ids, pos).as_deref() == Some(&y.ids[..])
                && k.right_mutation(&y.ids, fresh).as_deref() == Some(&x.ids[..]);
        }
        if !involution {
            failures.push(format!("{name}: exchange involution"));
        }
        if !one_row {
            failures.push(format!("{name}: one-row change"));
        }
        let whole: BTreeSet<Vec<GVector>> = g.g_matrices().into_iter().collect();
        let mut union = BTreeSet::new();
        let mut disjoint = true;
        for eps in all_sign_vectors(a.num_vertices()) {
            for m in enumerate_2silt_epsilon(&k, &eps, DEFAULT_BUDGET).unwrap().graph.g_matrices() {
                disjoint &= sign_region_of(&m).unwrap() == eps && union.insert(m);
            }
        }
        if !disjoint || union != whole {
            failures.push(format!("{name}: region partition"));
        }
    }
    for r in 1..=7 {
        for p in [0u64, 2, 3, 5, 7] {
            let pres = named_presentation(&format!("bs:2,{r},{p}")).unwrap();
            let ok = complete_rewrite_system::<Rational>(&pres, CompletionConfig::default()).is_ok_and(|rs| rs.is_confluent());
            if !ok {
                failures.push(format!("confluence bs:2,{r},{p}"));
            }
        }
    }
    for text in [
        "vertices: 1 2\narrow a: 1 -> 2\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrel a*b\n",
        "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 3 -> 2\n",
    ] {
        let a = dsl(text);
        let k = Kernel::new(&a);
        let found: BTreeSet<Vec<GVector>> = enumerate_2silt(&k, DEFAULT_BUDGET).graph.g_matrices().into_iter().collect();
        if found != brute_force_silting(&a, 2) {
            failures.push(format!("brute-force oracle: {}", text.replace('\n', "; ")));
        }
    }
    let t = t0.elapsed();
    Outcome {
        pass: failures.is_empty() && within(t, 120),
        detail: if failures.is_empty() {
            format!("all suites hold, {} ms", t.as_millis())
        } else {
            failures.join(", ")
        },
    }
}

fn main() {
    let criteria: Vec<(usize, fn() -> Outcome)> = vec![
        (1, criterion_1),
        (2, || single_fixture("bipartite-pmpm.json", 1)),
        (3, || single_fixture("bs-2-4-p2-mmmpp.json", 5)),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        let o = run();
        println!("criterion {n}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass == KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("acceptance outcome changed for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
