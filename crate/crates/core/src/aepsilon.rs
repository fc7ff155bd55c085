//! The reduced algebra `A_ε` attached to a sign vector.
//!
//! With `e± = Σ_{ε_i = ±} e_i`, `A_ε` is the triangular algebra
//! `[[e+Ae+/J+, e+Ae−], [0, e−Ae−/J−]]` where `J+` is the set of radical
//! elements of `e+Ae+` annihilating `e+Ae−` from the left and `J−` the set of
//! radical elements of `e−Ae−` annihilating it from the right.

use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::borel_schur::borel_schur_algebra;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Radical basis of the block `e_s A e_t`, as block coordinate vectors.
fn rad_basis<S: Scalar>(a: &BasedAlgebra<S>, s: usize, t: usize) -> Vec<Vec<S>> {
    let blk = a.block(s, t);
    blk.iter()
        .enumerate()
        .filter(|(_, &b)| !a.is_idempotent(b))
        .map(|(k, _)| {
            let mut x = vec![S::zero(); blk.len()];
            x[k] = S::one();
            x
        })
        .collect()
}

fn unit<S: Scalar>(len: usize, k: usize) -> Vec<S> {
    let mut x = vec![S::zero(); len];
    x[k] = S::one();
    x
}

/// Elements of `rad(e_s A e_t)` killed by the given multiplication maps, as
/// global vectors. `images(x)` lists all products that must vanish.
fn annihilated<S: Scalar>(
    a: &BasedAlgebra<S>,
    s: usize,
    t: usize,
    images: impl Fn(&[S]) -> Vec<S>,
) -> Vec<Vec<S>> {
    let rb = rad_basis(a, s, t);
    if rb.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<S>> = rb.iter().map(|x| images(x)).collect();
    let height = cols[0].len();
    let ker = if height == 0 {
        (0..rb.len()).map(|i| unit(rb.len(), i)).collect()
    } else {
        let rows: Vec<Vec<S>> = (0..height).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        linalg::kernel(&rows, rb.len())
    };
    ker.iter()
        .map(|c| {
            let x = linalg::combine(c, &rb, a.block_dim(s, t));
            a.block_to_global(s, t, &x)
        })
        .collect()
}

/// The corner ideals `J+` and `J−`, as global vectors.
pub fn corner_ideals<S: Scalar>(a: &BasedAlgebra<S>, eps: &[i8]) -> (Vec<Vec<S>>, Vec<Vec<S>>) {
    let n = a.num_vertices();
    let plus: Vec<usize> = (0..n).filter(|&i| eps[i] > 0).collect();
    let minus: Vec<usize> = (0..n).filter(|&i| eps[i] < 0).collect();
    let mut jp = Vec::new();
    for &s in &plus {
        for &t in &plus {
            jp.extend(annihilated(a, s, t, |x| {
                let mut out = Vec::new();
                for &v in &minus {
                    for k in 0..a.block_dim(t, v) {
                        out.extend(a.mul_block(s, t, v, x, &unit(a.block_dim(t, v), k)));
                    }
                }
                out
            }));
        }
    }
    let mut jm = Vec::new();
    for &s in &minus {
        for &t in &minus {
            jm.extend(annihilated(a, s, t, |x| {
                let mut out = Vec::new();
                for &u in &plus {
                    for k in 0..a.block_dim(u, s) {
                        out.extend(a.mul_block(u, s, t, &unit(a.block_dim(u, s), k), x));
                    }
                }
                out
            }));
        }
    }
    (jp, jm)
}

/// `A_ε` on the same vertex set as `A`.
pub fn build_a_epsilon<S: Scalar>(a: &BasedAlgebra<S>, eps: &[i8]) -> Result<BasedAlgebra<S>> {
    if eps.len() != a.num_vertices() {
        return Err(Error::Invalid("sign vector has the wrong length".into()));
    }
    let (jp, jm) = corner_ideals(a, eps);
    let tri = a.block_subalgebra(|s, t| !(eps[s] < 0 && eps[t] > 0))?;
    // Global coordinates of A restricted to the kept basis elements.
    let kept: Vec<usize> = (0..a.dim()).filter(|&b| !(eps[a.basis()[b].source] < 0 && eps[a.basis()[b].target] > 0)).collect();
    let gens: Vec<Vec<S>> = jp.iter().chain(&jm).map(|g| kept.iter().map(|&b| g[b].clone()).collect()).collect();
    tri.quotient_by_ideal(&gens)
}

/// Vertices without arrows in the quiver of `b`.
pub fn isolated_vertices<S: Scalar>(b: &BasedAlgebra<S>) -> Vec<usize> {
    let q = b.quiver();
    (0..q.num_vertices()).filter(|&v| q.arrows.iter().all(|ar| ar.source != v && ar.target != v)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplifyReport {
    /// Sources of the quiver of `A` with `ε = −` that are isolated in `A_ε`.
    pub isolated_sources: Vec<usize>,
    /// Sinks of the quiver of `A` with `ε = +` that are isolated in `A_ε`.
    pub isolated_sinks: Vec<usize>,
    /// Outcome of the one-point reduction check, when it applies.
    pub one_point_reduction: Option<bool>,
}

/// Which sources with sign `−` and sinks with sign `+` become isolated in
/// `A_ε`. For `S⁺(2, r)` with `ε_r = −` (or `ε_0 = +`) also checks that `A_ε`
/// agrees with `(S⁺(2, r−1) ⊕ K)_ε` (or `(K ⊕ S⁺(2, r−1))_ε`) in dimension,
/// quiver and Hom-dimension table.
pub fn source_sink_simplify<S: Scalar>(
    a: &BasedAlgebra<S>,
    eps: &[i8],
    borel_schur: Option<(usize, u64)>,
) -> Result<SimplifyReport> {
    let ae = build_a_epsilon(a, eps)?;
    let q = a.quiver();
    let iso = isolated_vertices(&ae);
    let n = a.num_vertices();
    let is_source = |v: usize| q.arrows.iter().all(|ar| ar.target != v);
    let is_sink = |v: usize| q.arrows.iter().all(|ar| ar.source != v);
    let isolated_sources = (0..n).filter(|&v| eps[v] < 0 && is_source(v) && iso.contains(&v)).collect();
    let isolated_sinks = (0..n).filter(|&v| eps[v] > 0 && is_sink(v) && iso.contains(&v)).collect();
    let one_point_reduction = match borel_schur {
        Some((r, p)) if r >= 1 && (eps[r] < 0 || eps[0] > 0) => {
            let small = borel_schur_algebra::<S>(r - 1, p)?;
            let field = field_algebra::<S>();
            let b = if eps[r] < 0 { small.direct_product(&field) } else { field.direct_product(&small) };
            let be = build_a_epsilon(&b, eps)?;
            Some(
                be.dim() == ae.dim()
                    && be.quiver().arrow_matrix() == ae.quiver().arrow_matrix()
                    && be.hom_dim_table() == ae.hom_dim_table(),
            )
        }
        _ => None,
    };
    Ok(SimplifyReport { isolated_sources, isolated_sinks, one_point_reduction })
}

/// The ground field as a one-vertex algebra.
pub fn field_algebra<S: Scalar>() -> BasedAlgebra<S> {
    use crate::algebra::{idempotent_name, BasisElem};
    BasedAlgebra::from_parts(
        vec!["0".into()],
        vec![BasisElem { source: 0, target: 0, name: idempotent_name("0") }],
        vec![0],
        |_, _| vec![(0, S::one())],
    )
}
