//! Bijections between sign regions: duality, anti-automorphisms and tilting
//! mutation. Each one is checked against independent enumerations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::aepsilon::build_a_epsilon;
use crate::algebra::BasedAlgebra;
use crate::complex::{EMat, TwoTermComplex};
use crate::error::{Error, Result};
use crate::explore::{enumerate_2silt, enumerate_2silt_epsilon, format_sign_vector, Exploration, SignVector};
use crate::linalg;
use crate::mutation::{GVector, Kernel};
use crate::scalar::Scalar;

/// Extends a vertex permutation `σ` of a Schurian algebra to an
/// anti-automorphism: each arrow `s -> t` goes to the basis element spanning
/// `e_{σ(t)} A e_{σ(s)}`, and paths go to reversed products. Returns the image
/// of every basis element after checking `ζ(xy) = ζ(y)ζ(x)` on all basis pairs
/// and bijectivity.
pub fn schurian_anti_automorphism<S: Scalar>(a: &BasedAlgebra<S>, sigma: &[usize]) -> Result<Vec<Vec<S>>> {
    let n = a.num_vertices();
    if sigma.len() != n {
        return Err(Error::Invalid("permutation has wrong length".into()));
    }
    let (q, reps) = a.quiver_with_reps();
    let mut images: Vec<Option<Vec<S>>> = vec![None; a.dim()];
    for v in 0..n {
        images[a.idempotent(v)] = Some(a.unit_vec(a.idempotent(sigma[v])));
    }
    for (ar, &b) in q.arrows.iter().zip(&reps) {
        let blk = a.block(sigma[ar.target], sigma[ar.source]);
        if blk.len() != 1 {
            return Err(Error::Invalid(format!("arrow {} has no unique image", ar.name)));
        }
        images[b] = Some(a.unit_vec(blk[0]));
    }
    for b in 0..a.dim() {
        if images[b].is_some() {
            continue;
        }
        let name = &a.basis()[b].name;
        let mut acc: Option<Vec<S>> = None;
        for atom in name.split('*').rev() {
            let i = a.index_of(atom).ok_or_else(|| Error::Invalid(format!("`{name}` is not a path of arrows")))?;
            let img = images[i].clone().ok_or_else(|| Error::Invalid(format!("`{atom}` is not an arrow")))?;
            acc = Some(match acc {
                None => img,
                Some(x) => a.mul(&x, &img),
            });
        }
        images[b] = acc;
    }
    let images: Vec<Vec<S>> = images.into_iter().map(|x| x.expect("image")).collect();
    verify_anti_homomorphism(a, &images)?;
    Ok(images)
}

/// Checks that the linear map given by `images` reverses products and is bijective.
pub fn verify_anti_homomorphism<S: Scalar>(a: &BasedAlgebra<S>, images: &[Vec<S>]) -> Result<()> {
    let dim = a.dim();
    if linalg::rank(images.to_vec()) != dim {
        return Err(Error::Invalid("map is not bijective".into()));
    }
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = vec![S::zero(); dim];
            for (k, c) in a.product(i, j) {
                linalg::axpy(&mut lhs, c, &images[*k]);
            }
            let rhs = a.mul(&images[j], &images[i]);
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "products of {} and {} are not reversed",
                    a.basis()[i].name,
                    a.basis()[j].name
                )));
            }
        }
    }
    Ok(())
}

/// The dual `Hom_A(T, A)` of a two-term complex, shifted back into degrees
/// −1 and 0, as a complex over the opposite algebra. Its g-vector is `−g(T)`.
pub fn dual_complex<S: Scalar>(a: &BasedAlgebra<S>, aop: &BasedAlgebra<S>, t: &TwoTermComplex<S>) -> TwoTermComplex<S> {
    let mut diff = EMat::<S>::zero(aop, &t.deg1, &t.deg0);
    for r in 0..t.deg0.len() {
        for c in 0..t.deg1.len() {
            debug_assert_eq!(a.block_dim(t.deg0[r], t.deg1[c]), aop.block_dim(t.deg1[c], t.deg0[r]));
            diff.set(c, r, t.diff.get(r, c).to_vec());
        }
    }
    TwoTermComplex { deg0: t.deg1.clone(), deg1: t.deg0.clone(), diff }
}

fn canonical(mut m: Vec<GVector>) -> Vec<GVector> {
    m.sort_by(|x, y| y.cmp(x));
    m
}

fn complete_region<S: Scalar>(k: &Kernel<S>, eps: &[i8], budget: usize) -> Result<Exploration> {
    let ex = enumerate_2silt_epsilon(k, eps, budget)?;
    if !ex.is_complete() {
        return Err(Error::Invalid(format!("budget exhausted in region {}", format_sign_vector(eps))));
    }
    Ok(ex)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityRecord {
    pub epsilon: String,
    pub count: usize,
    pub count_opposite: usize,
    /// `{−G(T)}` equals the set of g-matrices found over the opposite algebra.
    pub g_matrices_match: bool,
    /// Every dual complex is silting over the opposite algebra.
    pub duals_silting: bool,
}

impl DualityRecord {
    pub fn pass(&self) -> bool {
        self.count == self.count_opposite && self.g_matrices_match && self.duals_silting
    }
}

/// Compares the region `ε` of `A` with the region `−ε` of `A^op`.
pub fn duality_transport<S: Scalar>(a: &BasedAlgebra<S>, eps: &[i8], budget: usize) -> Result<DualityRecord> {
    let aop = a.opposite();
    let k = Kernel::new(a);
    let kop = Kernel::new(&aop);
    let ex = complete_region(&k, eps, budget)?;
    let neg: Vec<i8> = eps.iter().map(|x| -x).collect();
    let exop = complete_region(&kop, &neg, budget)?;
    let mapped: BTreeSet<Vec<GVector>> = ex
        .graph
        .nodes
        .iter()
        .map(|nd| canonical(nd.g_matrix.iter().map(|r| r.iter().map(|x| -x).collect()).collect()))
        .collect();
    let found: BTreeSet<Vec<GVector>> = exop.graph.nodes.iter().map(|nd| nd.g_matrix.clone()).collect();
    let duals_silting = ex.graph.nodes.iter().all(|nd| {
        let ids: Vec<usize> = nd.ids.iter().map(|&i| kop.intern(dual_complex(a, &aop, &k.summand(i)))).collect();
        kop.is_silting(&ids)
    });
    Ok(DualityRecord {
        epsilon: format_sign_vector(eps),
        count: ex.graph.len(),
        count_opposite: exop.graph.len(),
        g_matrices_match: mapped == found,
        duals_silting,
    })
}

/// `ε' = −σ(ε)`, i.e. `ε'_{σ(i)} = −ε_i`.
pub fn sigma_sign(sigma: &[usize], eps: &[i8]) -> SignVector {
    let mut out = vec![0i8; eps.len()];
    for (i, &e) in eps.iter().enumerate() {
        out[sigma[i]] = -e;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaRecord {
    pub epsilon: String,
    pub epsilon_prime: String,
    pub count: usize,
    pub count_prime: usize,
    /// Rows `g ↦ (g'_{σ(i)} = −g_i)` carry one region onto the other.
    pub g_matrices_match: bool,
    /// `A_ε` and `(A_{ε'})^op` agree in dimension, quiver and Hom table under `σ`.
    pub reduced_algebras_match: bool,
}

impl SigmaRecord {
    pub fn pass(&self) -> bool {
        self.count == self.count_prime && self.g_matrices_match && self.reduced_algebras_match
    }
}

/// Checks the bijection induced by an anti-automorphism extending `σ`.
pub fn sigma_transport<S: Scalar>(a: &BasedAlgebra<S>, sigma: &[usize], eps: &[i8], budget: usize) -> Result<SigmaRecord> {
    schurian_anti_automorphism(a, sigma)?;
    let n = a.num_vertices();
    let eps2 = sigma_sign(sigma, eps);
    let k = Kernel::new(a);
    let ex = complete_region(&k, eps, budget)?;
    let ex2 = complete_region(&k, &eps2, budget)?;
    let mapped: BTreeSet<Vec<GVector>> = ex
        .graph
        .nodes
        .iter()
        .map(|nd| {
            canonical(
                nd.g_matrix
                    .iter()
                    .map(|r| {
                        let mut g = vec![0i64; n];
                        for i in 0..n {
                            g[sigma[i]] = -r[i];
                        }
                        g
                    })
                    .collect(),
            )
        })
        .collect();
    let found: BTreeSet<Vec<GVector>> = ex2.graph.nodes.iter().map(|nd| nd.g_matrix.clone()).collect();
    let ae = build_a_epsilon(a, eps)?;
    let be = build_a_epsilon(a, &eps2)?.opposite();
    let (ha, hb) = (ae.hom_dim_table(), be.hom_dim_table());
    let (qa, qb) = (ae.quiver().arrow_matrix(), be.quiver().arrow_matrix());
    let permuted = (0..n).all(|i| (0..n).all(|j| ha[i][j] == hb[sigma[i]][sigma[j]] && qa[i][j] == qb[sigma[i]][sigma[j]]));
    Ok(SigmaRecord {
        epsilon: format_sign_vector(eps),
        epsilon_prime: format_sign_vector(&eps2),
        count: ex.graph.len(),
        count_prime: ex2.graph.len(),
        g_matrices_match: mapped == found,
        reduced_algebras_match: ae.dim() == be.dim() && permuted,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingRecord {
    pub vertex: usize,
    pub is_tilting: bool,
    /// Row `j` is the g-vector of the summand at vertex `j`.
    pub g_matrix: Vec<GVector>,
    /// `End` of the mutation agrees with the supplied presentation in
    /// dimension, quiver, Hom table and relation count, vertex by vertex.
    pub end_matches: Option<bool>,
    pub epsilon: String,
    pub epsilon_prime: String,
    pub count: usize,
    pub count_target: usize,
    /// The image of the region lies in the region `ε'` of `B`.
    pub images_contained: bool,
    /// ... and exhausts it.
    pub images_equal: bool,
    /// Sizes of `2-silt_Φ A` and `2-silt_{−Φ} B` with `Φ = {ε : ε_i = −}`,
    /// when both full enumerations finish.
    pub phi_counts: Option<(usize, usize)>,
    pub phi_images_equal: Option<bool>,
}

impl TiltingRecord {
    /// The bijection `2-silt_Φ A ≅ 2-silt_{−Φ} B` holds and the region maps
    /// into `ε'`.
    pub fn pass(&self) -> bool {
        self.is_tilting && self.images_contained && self.phi_images_equal == Some(true) && self.end_matches != Some(false)
    }
}

fn times(g: &[i64], m: &[GVector]) -> GVector {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| g[i] * m[i][j]).sum()).collect()
}

/// Left mutation of `A` at `P_i`, with summands ordered by vertex.
pub fn mutation_at_vertex<S: Scalar>(k: &Kernel<S>, i: usize) -> Result<Vec<usize>> {
    let t = k.regular();
    let by_vertex: Vec<usize> = (0..k.n()).map(|v| *t.iter().find(|&&id| k.g(id)[v] == 1).unwrap()).collect();
    let u = k
        .left_mutation(&t, t.iter().position(|&x| x == by_vertex[i]).unwrap())
        .ok_or_else(|| Error::Invalid("mutation leaves the two-term range".into()))?;
    let new = *u.iter().find(|x| !t.contains(x)).unwrap();
    Ok((0..k.n()).map(|v| if v == i { new } else { by_vertex[v] }).collect())
}

/// Same dimension, quiver, Hom table and minimal relation count.
pub fn same_shape<S: Scalar>(x: &BasedAlgebra<S>, y: &BasedAlgebra<S>) -> bool {
    x.dim() == y.dim()
        && x.hom_dim_table() == y.hom_dim_table()
        && x.quiver().arrow_matrix() == y.quiver().arrow_matrix()
        && x.minimal_relation_count() == y.minimal_relation_count()
}

/// Transports the region `ε` of `A` along `g ↦ g · G(μ⁻_{P_i}(A))` into
/// `B = End(μ⁻_{P_i}(A))`, and the whole of `Φ = {ε : ε_i = −}` when both
/// full enumerations fit in the budget.
pub fn tilting_transport<S: Scalar>(
    a: &BasedAlgebra<S>,
    i: usize,
    eps: &[i8],
    presentation: Option<&BasedAlgebra<S>>,
    budget: usize,
) -> Result<TiltingRecord> {
    if eps.get(i) != Some(&-1) {
        return Err(Error::Invalid(format!("the region must have a minus sign at vertex {i}")));
    }
    let k = Kernel::new(a);
    let u = mutation_at_vertex(&k, i)?;
    let is_tilting = k.is_tilting(&u);
    if !is_tilting {
        return Err(Error::Invalid(format!("the mutation at P_{i} is not tilting")));
    }
    let g: Vec<GVector> = u.iter().map(|&id| k.g(id)).collect();
    let b = k.end_algebra(&u);
    let end_matches = presentation.map(|p| same_shape(&b, p));
    let kb = Kernel::new(&b);

    let ex = complete_region(&k, eps, budget)?;
    let images: BTreeSet<GVector> = ex.graph.nodes.iter().map(|nd| times(&nd.total_g(), &g)).collect();
    let first = images.iter().next().ok_or_else(|| Error::Invalid("empty region".into()))?;
    let eps2: SignVector = first.iter().map(|x| x.signum() as i8).collect();
    let ex2 = complete_region(&kb, &eps2, budget)?;
    let found: BTreeSet<GVector> = ex2.graph.nodes.iter().map(|nd| nd.total_g()).collect();

    let fa = enumerate_2silt(&k, budget);
    let fb = enumerate_2silt(&kb, budget);
    let (phi_counts, phi_images_equal) = if fa.is_complete() && fb.is_complete() {
        let img: BTreeSet<GVector> =
            fa.graph.nodes.iter().map(|nd| nd.total_g()).filter(|v| v[i] < 0).map(|v| times(&v, &g)).collect();
        let tgt: BTreeSet<GVector> = fb.graph.nodes.iter().map(|nd| nd.total_g()).filter(|v| v[i] > 0).collect();
        (Some((img.len(), tgt.len())), Some(img == tgt))
    } else {
        (None, None)
    };
    Ok(TiltingRecord {
        vertex: i,
        is_tilting,
        g_matrix: g,
        end_matches,
        epsilon: format_sign_vector(eps),
        epsilon_prime: format_sign_vector(&eps2),
        count: ex.graph.len(),
        count_target: ex2.graph.len(),
        images_contained: images.is_subset(&found),
        images_equal: images == found,
        phi_counts,
        phi_images_equal,
    })
}
