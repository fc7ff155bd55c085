//! Mutation of two-term silting complexes.
//!
//! Indecomposable summands are interned: two rigid two-term complexes with the
//! same g-vector are isomorphic, so the g-vector identifies a summand. Homs up
//! to homotopy and radicals of endomorphism rings are cached per summand id.

use std::sync::Arc;

use dashmap::DashMap;
use parking_lot::RwLock;

use crate::algebra::{idempotent_name, BasedAlgebra, BasisElem};
use crate::complex::{EMat, ProjComplex, TwoTermComplex};
use crate::error::{Error, Result};
use crate::homotopy::{hom_shift1_dim, hom_shift_minus1_dim, ChainMap, HomK, RadEnd};
use crate::linalg::{CoordBasis, SemiEchelon};
use crate::scalar::Scalar;

pub type GVector = Vec<i64>;

/// Summand store plus Hom caches over a fixed algebra.
pub struct Kernel<'a, S: Scalar> {
    pub algebra: &'a BasedAlgebra<S>,
    summands: RwLock<Vec<Arc<TwoTermComplex<S>>>>,
    gvecs: RwLock<Vec<GVector>>,
    ids: DashMap<GVector, usize>,
    hom: DashMap<(usize, usize), Arc<HomK<S>>>,
    hom1: DashMap<(usize, usize), usize>,
    rad: DashMap<usize, Arc<RadEnd<S>>>,
}

/// A minimal approximation: the copies of the approximating summands and
/// the components of the map.
struct Approximation<S> {
    copies: Vec<usize>,
    maps: Vec<ChainMap<S>>,
}

impl<'a, S: Scalar> Kernel<'a, S> {
    pub fn new(algebra: &'a BasedAlgebra<S>) -> Self {
        Kernel {
            algebra,
            summands: RwLock::new(Vec::new()),
            gvecs: RwLock::new(Vec::new()),
            ids: DashMap::new(),
            hom: DashMap::new(),
            hom1: DashMap::new(),
            rad: DashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.algebra.num_vertices()
    }

    /// Id of an indecomposable rigid complex, given in minimal form.
    pub fn intern(&self, cx: TwoTermComplex<S>) -> usize {
        let g = cx.g_vector(self.n());
        if let Some(id) = self.ids.get(&g) {
            return *id;
        }
        *self.ids.entry(g.clone()).or_insert_with(|| {
            let mut s = self.summands.write();
            let mut gv = self.gvecs.write();
            s.push(Arc::new(cx));
            gv.push(g);
            s.len() - 1
        })
    }

    pub fn summand(&self, id: usize) -> Arc<TwoTermComplex<S>> {
        self.summands.read()[id].clone()
    }

    pub fn g(&self, id: usize) -> GVector {
        self.gvecs.read()[id].clone()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.read().len()
    }

    pub fn hom(&self, src: usize, tgt: usize) -> Arc<HomK<S>> {
        if let Some(h) = self.hom.get(&(src, tgt)) {
            return h.clone();
        }
        let h = Arc::new(HomK::new(self.algebra, &self.summand(src), &self.summand(tgt)));
        self.hom.entry((src, tgt)).or_insert(h).clone()
    }

    /// `dim Hom(T_src, T_tgt[1])`.
    pub fn hom1(&self, src: usize, tgt: usize) -> usize {
        if let Some(h) = self.hom1.get(&(src, tgt)) {
            return *h;
        }
        let d = hom_shift1_dim(self.algebra, &self.summand(src), &self.summand(tgt));
        self.hom1.insert((src, tgt), d);
        d
    }

    pub fn rad(&self, id: usize) -> Arc<RadEnd<S>> {
        if let Some(r) = self.rad.get(&id) {
            return r.clone();
        }
        let y = self.summand(id);
        let r = Arc::new(RadEnd::new(self.algebra, &y, &self.hom(id, id)));
        self.rad.entry(id).or_insert(r).clone()
    }

    /// The silting complex `A`: summands `P_v` in degree 0.
    pub fn regular(&self) -> Vec<usize> {
        let a = self.algebra;
        self.sorted((0..self.n()).map(|v| self.intern(TwoTermComplex::stalk0(a, v))).collect())
    }

    /// The silting complex `A[1]`.
    pub fn shifted_regular(&self) -> Vec<usize> {
        let a = self.algebra;
        self.sorted((0..self.n()).map(|v| self.intern(TwoTermComplex::stalk1(a, v))).collect())
    }

    /// Sorts summand ids by g-vector, largest first.
    pub fn sorted(&self, mut ids: Vec<usize>) -> Vec<usize> {
        let gv = self.gvecs.read();
        ids.sort_by(|x, y| gv[*y].cmp(&gv[*x]));
        ids.dedup();
        ids
    }

    /// Canonical g-matrix: one row per summand, rows in descending order.
    pub fn g_matrix(&self, ids: &[usize]) -> Vec<GVector> {
        let mut m: Vec<GVector> = ids.iter().map(|&i| self.g(i)).collect();
        m.sort_by(|x, y| y.cmp(x));
        m
    }

    fn left_approx(&self, x: usize, ys: &[usize]) -> Approximation<S> {
        let a = self.algebra;
        let hs: Vec<Arc<HomK<S>>> = ys.iter().map(|&y| self.hom(x, y)).collect();
        let h_reps: Vec<Vec<ChainMap<S>>> = hs.iter().map(|h| h.reps(a)).collect();
        let xs = self.summand(x);
        let mut out = Approximation { copies: Vec::new(), maps: Vec::new() };
        for (j, &yj) in ys.iter().enumerate() {
            let hj = &hs[j];
            if hj.dim() == 0 {
                continue;
            }
            let ysum = self.summand(yj);
            let mut span = SemiEchelon::new(hj.dim());
            for (k, &yk) in ys.iter().enumerate() {
                if k == j || h_reps[k].is_empty() {
                    continue;
                }
                let g = self.hom(yk, yj);
                if g.dim() == 0 {
                    continue;
                }
                let ykc = self.summand(yk);
                for gm in g.reps(a) {
                    for f in &h_reps[k] {
                        span.insert(hj.class_of(&gm.after(a, &ysum, &ykc, &xs, f)));
                    }
                }
            }
            for r in &self.rad(yj).maps {
                for f in &h_reps[j] {
                    span.insert(hj.class_of(&r.after(a, &ysum, &ysum, &xs, f)));
                }
            }
            for i in 0..hj.dim() {
                let mut e = vec![S::zero(); hj.dim()];
                e[i] = S::one();
                if span.insert(e).is_some() {
                    out.copies.push(yj);
                    out.maps.push(h_reps[j][i].clone());
                }
            }
        }
        out
    }

    fn right_approx(&self, x: usize, ys: &[usize]) -> Approximation<S> {
        let a = self.algebra;
        let hs: Vec<Arc<HomK<S>>> = ys.iter().map(|&y| self.hom(y, x)).collect();
        let h_reps: Vec<Vec<ChainMap<S>>> = hs.iter().map(|h| h.reps(a)).collect();
        let xs = self.summand(x);
        let mut out = Approximation { copies: Vec::new(), maps: Vec::new() };
        for (j, &yj) in ys.iter().enumerate() {
            let hj = &hs[j];
            if hj.dim() == 0 {
                continue;
            }
            let ysum = self.summand(yj);
            let mut span = SemiEchelon::new(hj.dim());
            for (k, &yk) in ys.iter().enumerate() {
                if k == j || h_reps[k].is_empty() {
                    continue;
                }
                let g = self.hom(yj, yk);
                if g.dim() == 0 {
                    continue;
                }
                let ykc = self.summand(yk);
                for gm in g.reps(a) {
                    for f in &h_reps[k] {
                        span.insert(hj.class_of(&f.after(a, &xs, &ykc, &ysum, &gm)));
                    }
                }
            }
            for r in &self.rad(yj).maps {
                for f in &h_reps[j] {
                    span.insert(hj.class_of(&f.after(a, &xs, &ysum, &ysum, r)));
                }
            }
            for i in 0..hj.dim() {
                let mut e = vec![S::zero(); hj.dim()];
                e[i] = S::one();
                if span.insert(e).is_some() {
                    out.copies.push(yj);
                    out.maps.push(h_reps[j][i].clone());
                }
            }
        }
        out
    }

    fn direct_sum_of(&self, ids: &[usize]) -> TwoTermComplex<S> {
        let parts: Vec<Arc<TwoTermComplex<S>>> = ids.iter().map(|&i| self.summand(i)).collect();
        let refs: Vec<&TwoTermComplex<S>> = parts.iter().map(|p| p.as_ref()).collect();
        TwoTermComplex::direct_sum(self.algebra, &refs)
    }

    /// Cone of the minimal left approximation of `x` by `ys`, minimized. `None`
    /// if it is not two-term.
    fn left_cone(&self, x: usize, ys: &[usize]) -> Option<TwoTermComplex<S>> {
        let a = self.algebra;
        let ap = self.left_approx(x, ys);
        let xs = self.summand(x);
        let z = self.direct_sum_of(&ap.copies);
        let mut pi0 = EMat::<S>::zero(a, &[], &xs.deg0);
        let mut pi1 = EMat::<S>::zero(a, &[], &xs.deg1);
        for m in &ap.maps {
            pi0 = EMat::stack_rows(&pi0, &m.f0);
            pi1 = EMat::stack_rows(&pi1, &m.f1);
        }
        let mid: Vec<usize> = xs.deg0.iter().chain(&z.deg1).copied().collect();
        let pc = ProjComplex {
            low: -2,
            terms: vec![xs.deg1.clone(), mid, z.deg0.clone()],
            diffs: vec![EMat::stack_rows(&xs.diff.neg(), &pi1), EMat::stack_cols(&pi0, &z.diff)],
        };
        pc.minimize(a).to_two_term()
    }

    /// Cocone of the minimal right approximation of `x` by `ys`, minimized.
    fn right_cocone(&self, x: usize, ys: &[usize]) -> Option<TwoTermComplex<S>> {
        let a = self.algebra;
        let ap = self.right_approx(x, ys);
        let xs = self.summand(x);
        let z = self.direct_sum_of(&ap.copies);
        let mut pi0 = EMat::<S>::zero(a, &xs.deg0, &[]);
        let mut pi1 = EMat::<S>::zero(a, &xs.deg1, &[]);
        for m in &ap.maps {
            pi0 = EMat::stack_cols(&pi0, &m.f0);
            pi1 = EMat::stack_cols(&pi1, &m.f1);
        }
        let mid: Vec<usize> = z.deg0.iter().chain(&xs.deg1).copied().collect();
        let pc = ProjComplex {
            low: -1,
            terms: vec![z.deg1.clone(), mid, xs.deg0.clone()],
            diffs: vec![EMat::stack_rows(&z.diff.neg(), &pi1), EMat::stack_cols(&pi0, &xs.diff)],
        };
        pc.minimize(a).to_two_term()
    }

    fn intern_indecomposable(&self, cx: TwoTermComplex<S>) -> Result<usize> {
        let mut parts = cx.split_components();
        if parts.len() != 1 {
            return Err(Error::Invalid(format!("mutated summand splits into {} parts", parts.len())));
        }
        Ok(self.intern(parts.pop().unwrap()))
    }

    /// Left mutation at the summand in position `k`; `None` when the result
    /// leaves the two-term range.
    pub fn left_mutation(&self, node: &[usize], k: usize) -> Option<Vec<usize>> {
        let x = node[k];
        let ys: Vec<usize> = node.iter().copied().filter(|&i| i != x).collect();
        let cone = self.left_cone(x, &ys)?;
        let id = self.intern_indecomposable(cone).expect("mutation of an indecomposable summand");
        let mut out = ys;
        out.push(id);
        Some(self.sorted(out))
    }

    pub fn right_mutation(&self, node: &[usize], k: usize) -> Option<Vec<usize>> {
        let x = node[k];
        let ys: Vec<usize> = node.iter().copied().filter(|&i| i != x).collect();
        let cone = self.right_cocone(x, &ys)?;
        let id = self.intern_indecomposable(cone).expect("mutation of an indecomposable summand");
        let mut out = ys;
        out.push(id);
        Some(self.sorted(out))
    }

    fn set_mutation(&self, node: &[usize], set: &[usize], left: bool) -> Result<Vec<usize>> {
        let ys: Vec<usize> = node.iter().copied().filter(|i| !set.contains(i)).collect();
        let mut out = ys.clone();
        for &x in set {
            let cx = if left { self.left_cone(x, &ys) } else { self.right_cocone(x, &ys) };
            let cx = cx.ok_or_else(|| Error::Invalid("set mutation leaves the two-term range".into()))?;
            for part in cx.split_components() {
                out.push(self.intern(part));
            }
        }
        let out = self.sorted(out);
        if out.len() != self.n() {
            return Err(Error::Invalid(format!(
                "set mutation produced {} summands after splitting, expected {}",
                out.len(),
                self.n()
            )));
        }
        Ok(out)
    }

    /// Left mutation at the summands listed in `set` (summand ids).
    pub fn left_set_mutation(&self, node: &[usize], set: &[usize]) -> Result<Vec<usize>> {
        self.set_mutation(node, set, true)
    }

    pub fn right_set_mutation(&self, node: &[usize], set: &[usize]) -> Result<Vec<usize>> {
        self.set_mutation(node, set, false)
    }

    /// `Hom(T_i, T_j[1]) = 0` for all listed summands.
    pub fn is_presilting(&self, ids: &[usize]) -> bool {
        ids.iter().all(|&i| ids.iter().all(|&j| self.hom1(i, j) == 0))
    }

    pub fn is_silting(&self, ids: &[usize]) -> bool {
        let distinct = self.sorted(ids.to_vec());
        distinct.len() == self.n() && self.is_presilting(&distinct)
    }

    pub fn is_tilting(&self, ids: &[usize]) -> bool {
        let a = self.algebra;
        self.is_silting(ids)
            && ids.iter().all(|&i| {
                let si = self.summand(i);
                ids.iter().all(|&j| hom_shift_minus1_dim(a, &si, &self.summand(j)) == 0)
            })
    }

    /// No summand is a shifted projective `P_v[1]`.
    pub fn is_tau_flagged(&self, ids: &[usize]) -> bool {
        ids.iter().all(|&i| {
            let s = self.summand(i);
            !(s.deg0.is_empty() && s.deg1.len() == 1)
        })
    }

    /// `End(T)` for the listed summands, with vertex `i` the `i`-th summand.
    /// `Hom(T_i, T_j)` becomes `e_j B e_i`, so the regular complex gives back
    /// the algebra itself. Each `e_i B e_i` has basis the identity followed by
    /// a basis of the radical.
    pub fn end_algebra(&self, ids: &[usize]) -> BasedAlgebra<S> {
        let a = self.algebra;
        let n = ids.len();
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut elems = Vec::new();
        let mut idem = vec![0; n];
        // (s, t) -> basis indices and a coordinate map on classes of Hom(T_t, T_s).
        let mut pos: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
        let mut coord: Vec<Vec<Option<CoordBasis<S>>>> = (0..n).map(|_| (0..n).map(|_| None).collect()).collect();
        for s in 0..n {
            for t in 0..n {
                let h = self.hom(ids[t], ids[s]);
                if s == t {
                    idem[s] = elems.len();
                    pos[s][s].push(elems.len());
                    elems.push(BasisElem { source: s, target: s, name: idempotent_name(&labels[s]) });
                    let y = self.summand(ids[s]);
                    let mut basis = vec![h.class_of(&ChainMap::identity(a, &y))];
                    for (k, r) in self.rad(ids[s]).maps.iter().enumerate() {
                        basis.push(h.class_of(r));
                        pos[s][s].push(elems.len());
                        elems.push(BasisElem { source: s, target: s, name: format!("r{s}_{k}") });
                    }
                    coord[s][s] = Some(CoordBasis::new(h.dim(), &basis).expect("identity and radical span End"));
                } else {
                    for k in 0..h.dim() {
                        pos[s][t].push(elems.len());
                        elems.push(BasisElem { source: s, target: t, name: format!("h{s}_{t}_{k}") });
                    }
                }
            }
        }
        // Chain map representing each basis element.
        let mut rep: Vec<ChainMap<S>> = Vec::with_capacity(elems.len());
        for e in &elems {
            let (s, t) = (e.source, e.target);
            let h = self.hom(ids[t], ids[s]);
            let k = pos[s][t].iter().position(|&b| rep.len() == b).unwrap();
            if s == t {
                rep.push(if k == 0 {
                    ChainMap::identity(a, &self.summand(ids[s]))
                } else {
                    self.rad(ids[s]).maps[k - 1].clone()
                });
            } else {
                rep.push(h.rep(a, k));
            }
        }
        BasedAlgebra::from_parts(labels, elems.clone(), idem, |i, j| {
            let (s, t, u) = (elems[i].source, elems[i].target, elems[j].target);
            let (ts, tt, tu) = (self.summand(ids[s]), self.summand(ids[t]), self.summand(ids[u]));
            let f = rep[i].after(a, &ts, &tt, &tu, &rep[j]);
            let h = self.hom(ids[u], ids[s]);
            let c = h.class_of(&f);
            let c = match &coord[s][u] {
                Some(cb) => cb.coords(&c).expect("in span"),
                None => c,
            };
            pos[s][u].iter().zip(c).map(|(&b, x)| (b, x)).collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_based_algebra;
    use crate::dsl::parse_presentation;
    use crate::scalar::Rational;

    const SQUARE: &str = "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow m: 2 -> 4\narrow n: 3 -> 4\nrel a*m - b*n\n";

    #[test]
    fn mutation_round_trip() {
        let a: BasedAlgebra<Rational> = build_based_algebra(&parse_presentation(SQUARE).unwrap()).unwrap();
        let k = Kernel::new(&a);
        let t = k.regular();
        assert!(k.is_tilting(&t));
        for i in 0..4 {
            if let Some(u) = k.left_mutation(&t, i) {
                assert!(k.is_silting(&u), "{:?}", k.g_matrix(&u));
                let new = u.iter().position(|x| !t.contains(x)).unwrap();
                assert_eq!(k.right_mutation(&u, new).unwrap(), t);
            }
        }
        let end = k.end_algebra(&t);
        assert_eq!(end.dim(), 9);
        assert!(end.check_associative());
        assert_eq!(end.hom_dim_table(), a.hom_dim_table());
    }
}
