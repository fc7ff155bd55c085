use silting_core::algebra::{build_based_algebra, BasedAlgebra};
use silting_core::borel_schur::borel_schur_algebra;
use silting_core::dsl::parse_presentation;
use silting_core::explore::{all_sign_vectors, DEFAULT_BUDGET};
use silting_core::mutation::Kernel;
use silting_core::transport::{duality_transport, mutation_at_vertex, sigma_sign, same_shape, sigma_transport, tilting_transport};
use silting_core::Rational;

fn dsl(path: &str) -> BasedAlgebra<Rational> {
    let text = std::fs::read_to_string(format!("{}/../../fixtures/dsl/{path}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    build_based_algebra(&parse_presentation(&text).unwrap()).unwrap()
}

fn reversal(n: usize) -> Vec<usize> {
    (0..n).map(|i| n - 1 - i).collect()
}

#[test]
fn duality_on_square_every_region() {
    let a = dsl("square.dsl");
    for eps in all_sign_vectors(4) {
        let rec = duality_transport(&a, &eps, DEFAULT_BUDGET).unwrap();
        assert!(rec.pass(), "{rec:?}");
    }
}

#[test]
fn duality_trivial_region() {
    let a = dsl("square.dsl");
    let rec = duality_transport(&a, &[1, 1, 1, 1], DEFAULT_BUDGET).unwrap();
    assert_eq!((rec.count, rec.count_opposite), (1, 1));
}

#[test]
fn duality_bs_2_4_p2() {
    let a = borel_schur_algebra::<Rational>(4, 2).unwrap();
    let rec = duality_transport(&a, &[-1, 1, 1, 1, 1], DEFAULT_BUDGET).unwrap();
    assert!(rec.pass(), "{rec:?}");
}

#[test]
fn sigma_sign_examples() {
    let s5 = reversal(5);
    assert_eq!(sigma_sign(&s5, &[-1, 1, 1, 1, 1]), vec![-1, -1, -1, -1, 1]);
    let s6 = reversal(6);
    assert_eq!(sigma_sign(&s6, &[-1, 1, 1, -1, 1, 1]), vec![-1, -1, 1, -1, -1, 1]);
    assert_eq!(sigma_sign(&s6, &[-1, -1, 1, -1, 1, 1]), vec![-1, -1, 1, -1, 1, 1]);
}

#[test]
fn sigma_bs_2_4_p2() {
    let a = borel_schur_algebra::<Rational>(4, 2).unwrap();
    let rec = sigma_transport(&a, &reversal(5), &[-1, 1, 1, 1, 1], DEFAULT_BUDGET).unwrap();
    assert_eq!(rec.epsilon_prime, "(-,-,-,-,+)");
    assert!(rec.pass(), "{rec:?}");
}

#[test]
fn sigma_rejects_non_automorphism() {
    let a = borel_schur_algebra::<Rational>(4, 2).unwrap();
    assert!(sigma_transport(&a, &[0, 1, 2, 3, 4], &[-1, 1, 1, 1, 1], DEFAULT_BUDGET).is_err());
}

#[test]
fn tilting_bs_2_6_p5() {
    let a = borel_schur_algebra::<Rational>(6, 5).unwrap();
    let b = dsl("bs-2-6-p5-transport-target.dsl");
    let rec = tilting_transport(&a, 3, &[-1, 1, 1, -1, -1, 1, 1], Some(&b), DEFAULT_BUDGET).unwrap();
    let mut expected: Vec<Vec<i64>> = (0..7).map(|i| (0..7).map(|j| (i == j) as i64).collect()).collect();
    expected[3] = vec![0, 0, 0, -1, 1, 0, 0];
    assert_eq!(rec.g_matrix, expected);
    assert_eq!(rec.epsilon_prime, "(-,+,+,+,-,+,+)");
    assert_eq!(rec.end_matches, Some(true));
    assert_eq!(rec.phi_counts, Some((4438, 4438)));
    assert_eq!(rec.phi_images_equal, Some(true));
    // The region embeds into, but does not exhaust, its image region.
    assert_eq!((rec.count, rec.count_target), (426, 514));
    assert!(rec.images_contained && !rec.images_equal);
    assert!(rec.pass());
}

#[test]
fn displayed_endomorphism_presentation_differs() {
    let a = borel_schur_algebra::<Rational>(6, 5).unwrap();
    let k = Kernel::new(&a);
    let end = k.end_algebra(&mutation_at_vertex(&k, 3).unwrap());
    assert!(same_shape(&end, &dsl("bs-2-6-p5-transport-target.dsl")));
    let shown = dsl("bs-2-6-p5-transport-displayed.dsl");
    assert_eq!(shown.dim(), end.dim());
    assert_eq!(shown.quiver().arrow_matrix(), end.quiver().arrow_matrix());
    assert_ne!(shown.hom_dim_table(), end.hom_dim_table());
}

#[test]
fn mutation_over_semisimple_is_a_shift() {
    let text = "vertices: 1 2\n";
    let a: BasedAlgebra<Rational> = build_based_algebra(&parse_presentation(text).unwrap()).unwrap();
    let k = Kernel::new(&a);
    let u = mutation_at_vertex(&k, 0).unwrap();
    assert_eq!(u.iter().map(|&i| k.g(i)).collect::<Vec<_>>(), vec![vec![-1, 0], vec![0, 1]]);
    assert!(k.is_tilting(&u));
    let rec = tilting_transport(&a, 0, &[-1, 1], None, DEFAULT_BUDGET).unwrap();
    assert_eq!(rec.epsilon_prime, "(+,+)");
    assert!(rec.pass() && rec.images_equal);
}
