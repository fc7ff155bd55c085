//! Morphisms between two-term complexes up to homotopy.
//!
//! For complexes `S = (S1 -> S0)` and `T = (T1 -> T0)`:
//! * degree 0: chain maps `(f0, f1)` with `f0·dS = dT·f1`, modulo maps of the
//!   form `(dT·h, h·dS)` for `h: S0 -> T1`;
//! * degree 1 (`Hom(S, T[1])`): maps `S1 -> T0` modulo `dT·h1 + h0·dS`;
//! * degree −1 (`Hom(S, T[−1])`): maps `v: S0 -> T1` with `v·dS = 0 = dT·v`.

use crate::algebra::BasedAlgebra;
use crate::complex::{compose, identity, EMat, TwoTermComplex};
use crate::linalg::{self, SemiEchelon};
use crate::scalar::{single_eigenvalue, Scalar};

/// Coordinates for maps `⊕ P_{src} -> ⊕ P_{dst}`.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub dst: Vec<usize>,
    pub src: Vec<usize>,
    /// `(r, c, global basis index)` for every coordinate.
    coords: Vec<(usize, usize, usize)>,
}

impl MapSpace {
    pub fn new<S: Scalar>(a: &BasedAlgebra<S>, dst: &[usize], src: &[usize]) -> Self {
        let mut coords = Vec::new();
        for (r, &y) in dst.iter().enumerate() {
            for (c, &x) in src.iter().enumerate() {
                for &b in a.block(y, x) {
                    coords.push((r, c, b));
                }
            }
        }
        MapSpace { dst: dst.to_vec(), src: src.to_vec(), coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Images of the coordinate vectors under `f ↦ G∘f` for `G: ⊕P_dst -> ⊕P_z`.
    fn left_images<S: Scalar>(&self, a: &BasedAlgebra<S>, z: &[usize], g: &EMat<S>) -> Vec<Vec<S>> {
        self.coords
            .iter()
            .map(|&(r, c, b)| {
                let mut f = EMat::<S>::zero(a, &self.dst, &self.src);
                f.get_mut(r, c)[a.block_pos(b)] = S::one();
                compose(a, z, &self.dst, &self.src, g, &f).to_vec()
            })
            .collect()
    }

    /// Images of the coordinate vectors under `f ↦ f∘H` for `H: ⊕P_w -> ⊕P_src`.
    fn right_images<S: Scalar>(&self, a: &BasedAlgebra<S>, w: &[usize], h: &EMat<S>) -> Vec<Vec<S>> {
        self.coords
            .iter()
            .map(|&(r, c, b)| {
                let mut f = EMat::<S>::zero(a, &self.dst, &self.src);
                f.get_mut(r, c)[a.block_pos(b)] = S::one();
                compose(a, &self.dst, &self.src, w, &f, h).to_vec()
            })
            .collect()
    }
}

fn transpose<S: Scalar>(cols: &[Vec<S>], rows: usize) -> Vec<Vec<S>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn concat<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    v
}

/// A morphism of two-term complexes given by its two components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<S> {
    pub f0: EMat<S>,
    pub f1: EMat<S>,
}

impl<S: Scalar> ChainMap<S> {
    pub fn identity(a: &BasedAlgebra<S>, x: &TwoTermComplex<S>) -> Self {
        ChainMap { f0: identity(a, &x.deg0), f1: identity(a, &x.deg1) }
    }

    /// `self∘other` for `other: X -> Y`, `self: Y -> Z`.
    pub fn after(
        &self,
        a: &BasedAlgebra<S>,
        z: &TwoTermComplex<S>,
        y: &TwoTermComplex<S>,
        x: &TwoTermComplex<S>,
        other: &ChainMap<S>,
    ) -> ChainMap<S> {
        ChainMap {
            f0: compose(a, &z.deg0, &y.deg0, &x.deg0, &self.f0, &other.f0),
            f1: compose(a, &z.deg1, &y.deg1, &x.deg1, &self.f1, &other.f1),
        }
    }

    pub fn is_chain_map(&self, a: &BasedAlgebra<S>, src: &TwoTermComplex<S>, tgt: &TwoTermComplex<S>) -> bool {
        let l = compose(a, &tgt.deg0, &src.deg0, &src.deg1, &self.f0, &src.diff);
        let r = compose(a, &tgt.deg0, &tgt.deg1, &src.deg1, &tgt.diff, &self.f1);
        l == r
    }

    pub fn to_vec(&self) -> Vec<S> {
        concat(&self.f0.to_vec(), &self.f1.to_vec())
    }
}

/// `Hom(S, T)` in the homotopy category with a chosen basis of classes.
#[derive(Clone, Debug)]
pub struct HomK<S> {
    src: TwoTermComplex<S>,
    tgt: TwoTermComplex<S>,
    l00: MapSpace,
    /// Null-homotopic maps first, then one representative per class.
    echelon: SemiEchelon<S>,
    n_null: usize,
}

impl<S: Scalar> HomK<S> {
    pub fn new(a: &BasedAlgebra<S>, src: &TwoTermComplex<S>, tgt: &TwoTermComplex<S>) -> Self {
        let l00 = MapSpace::new(a, &tgt.deg0, &src.deg0);
        let l11 = MapSpace::new(a, &tgt.deg1, &src.deg1);
        let l01 = MapSpace::new(a, &tgt.deg1, &src.deg0);
        let l10_dim = MapSpace::new(a, &tgt.deg0, &src.deg1).dim();
        let total = l00.dim() + l11.dim();

        // Chain map condition f0·dS − dT·f1 = 0.
        let mut cols = l00.right_images(a, &src.deg1, &src.diff);
        for v in l11.left_images(a, &tgt.deg0, &tgt.diff) {
            cols.push(v.into_iter().map(|x| x.neg()).collect());
        }
        let chain = linalg::kernel(&transpose(&cols, l10_dim), total);

        let mut echelon = SemiEchelon::new(total);
        let h_left = l01.left_images(a, &tgt.deg0, &tgt.diff);
        let h_right = l01.right_images(a, &src.deg1, &src.diff);
        for (x, y) in h_left.iter().zip(&h_right) {
            echelon.insert(concat(x, y));
        }
        let n_null = echelon.len();
        for v in chain {
            echelon.insert(v);
        }
        HomK { src: src.clone(), tgt: tgt.clone(), l00, echelon, n_null }
    }

    pub fn dim(&self) -> usize {
        self.echelon.len() - self.n_null
    }

    /// Representative of the `i`-th basis class.
    pub fn rep(&self, a: &BasedAlgebra<S>, i: usize) -> ChainMap<S> {
        self.map_from_vec(a, &self.echelon.vectors()[self.n_null + i])
    }

    pub fn reps(&self, a: &BasedAlgebra<S>) -> Vec<ChainMap<S>> {
        (0..self.dim()).map(|i| self.rep(a, i)).collect()
    }

    fn map_from_vec(&self, a: &BasedAlgebra<S>, v: &[S]) -> ChainMap<S> {
        let k = self.l00.dim();
        ChainMap {
            f0: EMat::from_vec(a, &self.tgt.deg0, &self.src.deg0, &v[..k]),
            f1: EMat::from_vec(a, &self.tgt.deg1, &self.src.deg1, &v[k..]),
        }
    }

    /// Coordinates of the class of a chain map.
    pub fn class_of(&self, f: &ChainMap<S>) -> Vec<S> {
        let c = self.echelon.coords(&f.to_vec()).expect("not a chain map");
        c[self.n_null..].to_vec()
    }

    /// A chain map in the class with the given coordinates.
    pub fn from_class(&self, a: &BasedAlgebra<S>, coeffs: &[S]) -> ChainMap<S> {
        let v = linalg::combine(coeffs, &self.echelon.vectors()[self.n_null..], self.echelon.ambient_dim());
        self.map_from_vec(a, &v)
    }

    pub fn is_null(&self, f: &ChainMap<S>) -> bool {
        self.class_of(f).iter().all(|x| x.is_zero())
    }
}

/// `dim Hom(S, T[1])`.
pub fn hom_shift1_dim<S: Scalar>(a: &BasedAlgebra<S>, src: &TwoTermComplex<S>, tgt: &TwoTermComplex<S>) -> usize {
    let l10 = MapSpace::new(a, &tgt.deg0, &src.deg1);
    if l10.dim() == 0 {
        return 0;
    }
    let mut rows = MapSpace::new(a, &tgt.deg1, &src.deg1).left_images(a, &tgt.deg0, &tgt.diff);
    rows.extend(MapSpace::new(a, &tgt.deg0, &src.deg0).right_images(a, &src.deg1, &src.diff));
    l10.dim() - linalg::rank(rows)
}

/// `dim Hom(S, T[−1])`.
pub fn hom_shift_minus1_dim<S: Scalar>(a: &BasedAlgebra<S>, src: &TwoTermComplex<S>, tgt: &TwoTermComplex<S>) -> usize {
    let l01 = MapSpace::new(a, &tgt.deg1, &src.deg0);
    if l01.dim() == 0 {
        return 0;
    }
    let a1 = l01.right_images(a, &src.deg1, &src.diff);
    let a2 = l01.left_images(a, &tgt.deg0, &tgt.diff);
    let cols: Vec<Vec<S>> = a1.iter().zip(&a2).map(|(x, y)| concat(x, y)).collect();
    let height = cols[0].len();
    l01.dim() - linalg::rank(transpose(&cols, height))
}

/// Radical of `End(Y)` for an indecomposable `Y`, as chain maps.
#[derive(Clone, Debug)]
pub struct RadEnd<S> {
    pub maps: Vec<ChainMap<S>>,
    pub end_dim: usize,
}

impl<S: Scalar> RadEnd<S> {
    /// `End(Y)` is local and split, so `x ↦ (unique eigenvalue of left
    /// multiplication by x)` is the algebra map onto the field; its kernel is
    /// the radical.
    pub fn new(a: &BasedAlgebra<S>, y: &TwoTermComplex<S>, end: &HomK<S>) -> Self {
        let d = end.dim();
        let reps = end.reps(a);
        let phi: Vec<S> = reps
            .iter()
            .map(|x| {
                let cols: Vec<Vec<S>> = reps.iter().map(|z| end.class_of(&x.after(a, y, y, y, z))).collect();
                single_eigenvalue(&transpose(&cols, d))
            })
            .collect();
        let ker = linalg::kernel(&[phi], d);
        RadEnd { maps: ker.iter().map(|c| end.from_class(a, c)).collect(), end_dim: d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_based_algebra;
    use crate::dsl::parse_presentation;
    use crate::scalar::Rational;

    fn a2() -> BasedAlgebra<Rational> {
        build_based_algebra(&parse_presentation("vertices: 1 2\narrow al: 1 -> 2\n").unwrap()).unwrap()
    }

    fn cone_of_arrow(a: &BasedAlgebra<Rational>) -> TwoTermComplex<Rational> {
        let al = a.parse_element("al").unwrap();
        let mut d = EMat::<Rational>::zero(a, &[0], &[1]);
        d.set(0, 0, a.global_to_block(0, 1, &al));
        TwoTermComplex::new(a, vec![0], vec![1], d).unwrap()
    }

    #[test]
    fn projective_homs() {
        let a = a2();
        let p1 = TwoTermComplex::stalk0(&a, 0);
        let p2 = TwoTermComplex::stalk0(&a, 1);
        assert_eq!(HomK::new(&a, &p2, &p1).dim(), 1);
        assert_eq!(HomK::new(&a, &p1, &p2).dim(), 0);
        assert_eq!(HomK::new(&a, &p1, &p1).dim(), 1);
    }

    #[test]
    fn simple_complex() {
        let a = a2();
        let s = cone_of_arrow(&a);
        let p1 = TwoTermComplex::stalk0(&a, 0);
        let p2 = TwoTermComplex::stalk0(&a, 1);
        // The map P_2 -> P_1 is null-homotopic after composing into the cone.
        assert_eq!(HomK::new(&a, &p1, &s).dim(), 1);
        assert_eq!(HomK::new(&a, &p2, &s).dim(), 0);
        assert_eq!(HomK::new(&a, &s, &s).dim(), 1);
        assert_eq!(hom_shift1_dim(&a, &s, &s), 0);
        assert_eq!(hom_shift1_dim(&a, &s, &p2), 1);
        assert_eq!(hom_shift_minus1_dim(&a, &s, &s), 0);
        let end = HomK::new(&a, &s, &s);
        let rad = RadEnd::new(&a, &s, &end);
        assert!(rad.maps.is_empty());
        let id = ChainMap::identity(&a, &s);
        assert!(id.is_chain_map(&a, &s, &s));
        assert_eq!(end.class_of(&id).len(), 1);
    }
}
