//! Complexes of projective modules.
//!
//! A map between direct sums `⊕_c P_{x_c} -> ⊕_r P_{y_r}` is a matrix whose
//! `(r, c)` entry lies in `Hom(P_{x_c}, P_{y_r}) = e_{y_r} A e_{x_c}`, stored in
//! block coordinates. Composition `G∘F` multiplies entries as `G[r][m]·F[m][c]`.

use serde::{Deserialize, Serialize};

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

/// Matrix of algebra elements between two lists of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EMat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<S>>,
}

impl<S: Scalar> EMat<S> {
    /// Zero map from `⊕ P_{src}` to `⊕ P_{dst}`.
    pub fn zero<T: Scalar>(a: &BasedAlgebra<T>, dst: &[usize], src: &[usize]) -> EMat<T> {
        let mut data = Vec::with_capacity(dst.len() * src.len());
        for &y in dst {
            for &x in src {
                data.push(vec![T::zero(); a.block_dim(y, x)]);
            }
        }
        EMat { rows: dst.len(), cols: src.len(), data }
    }

    pub fn get(&self, r: usize, c: usize) -> &[S] {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Vec<S> {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Vec<S>) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| linalg::is_zero_vec(e))
    }

    pub fn neg(&self) -> Self {
        EMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|e| e.iter().map(|x| x.neg()).collect()).collect() }
    }

    /// Flattened coordinates, entry by entry in row-major order.
    pub fn to_vec(&self) -> Vec<S> {
        self.data.iter().flatten().cloned().collect()
    }

    /// Inverse of [`EMat::to_vec`] for a map `⊕ P_{src} -> ⊕ P_{dst}`.
    pub fn from_vec(a: &BasedAlgebra<S>, dst: &[usize], src: &[usize], v: &[S]) -> Self {
        let mut m = Self::zero(a, dst, src);
        let mut off = 0;
        for e in m.data.iter_mut() {
            let l = e.len();
            e.clone_from_slice(&v[off..off + l]);
            off += l;
        }
        debug_assert_eq!(off, v.len());
        m
    }

    /// Keeps the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).to_vec());
            }
        }
        EMat { rows: rows.len(), cols: cols.len(), data }
    }

    /// Block matrix `[[a, b], [c, d]]`; pass `None` for zero blocks sized by the others.
    pub fn stack_rows(top: &Self, bottom: &Self) -> Self {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data.clone();
        data.extend(bottom.data.iter().cloned());
        EMat { rows: top.rows + bottom.rows, cols: top.cols, data }
    }

    pub fn stack_cols(left: &Self, right: &Self) -> Self {
        assert_eq!(left.rows, right.rows);
        let mut data = Vec::with_capacity(left.rows * (left.cols + right.cols));
        for r in 0..left.rows {
            for c in 0..left.cols {
                data.push(left.get(r, c).to_vec());
            }
            for c in 0..right.cols {
                data.push(right.get(r, c).to_vec());
            }
        }
        EMat { rows: left.rows, cols: left.cols + right.cols, data }
    }

    /// Block-diagonal sum.
    pub fn diag_sum(a: &BasedAlgebra<S>, parts: &[(&Self, &[usize], &[usize])]) -> Self {
        let dst: Vec<usize> = parts.iter().flat_map(|p| p.1.iter().copied()).collect();
        let src: Vec<usize> = parts.iter().flat_map(|p| p.2.iter().copied()).collect();
        let mut m = Self::zero(a, &dst, &src);
        let (mut r0, mut c0) = (0, 0);
        for (p, d, s) in parts {
            for r in 0..d.len() {
                for c in 0..s.len() {
                    m.set(r0 + r, c0 + c, p.get(r, c).to_vec());
                }
            }
            r0 += d.len();
            c0 += s.len();
        }
        m
    }
}

/// `G∘F` where `F: ⊕P_x -> ⊕P_y` and `G: ⊕P_y -> ⊕P_z`.
pub fn compose<S: Scalar>(a: &BasedAlgebra<S>, z: &[usize], y: &[usize], x: &[usize], g: &EMat<S>, f: &EMat<S>) -> EMat<S> {
    debug_assert_eq!(g.cols, f.rows);
    let mut out = EMat::<S>::zero(a, z, x);
    for (m, &ym) in y.iter().enumerate() {
        for (c, &xc) in x.iter().enumerate() {
            let fe = f.get(m, c);
            if linalg::is_zero_vec(fe) {
                continue;
            }
            for (r, &zr) in z.iter().enumerate() {
                let ge = g.get(r, m);
                if linalg::is_zero_vec(ge) {
                    continue;
                }
                let dst = out.get_mut(r, c);
                a.mul_block_acc(zr, ym, xc, ge, fe, dst);
            }
        }
    }
    out
}

/// Identity map on `⊕ P_x`.
pub fn identity<S: Scalar>(a: &BasedAlgebra<S>, x: &[usize]) -> EMat<S> {
    let mut m = EMat::<S>::zero(a, x, x);
    for (i, &v) in x.iter().enumerate() {
        m.set(i, i, a.block_identity(v));
    }
    m
}

/// A complex `P^{-1} -> P^0` of projectives. The differential has rows
/// indexed by `deg0` and columns by `deg1` (the degree −1 term).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTermComplex<S> {
    pub deg0: Vec<usize>,
    pub deg1: Vec<usize>,
    pub diff: EMat<S>,
}

impl<S: Scalar> TwoTermComplex<S> {
    pub fn new(a: &BasedAlgebra<S>, deg0: Vec<usize>, deg1: Vec<usize>, diff: EMat<S>) -> Result<Self> {
        if diff.rows != deg0.len() || diff.cols != deg1.len() {
            return Err(Error::Invalid("differential has the wrong shape".into()));
        }
        for (r, &y) in deg0.iter().enumerate() {
            for (c, &x) in deg1.iter().enumerate() {
                if diff.get(r, c).len() != a.block_dim(y, x) {
                    return Err(Error::Invalid("differential entry in the wrong block".into()));
                }
            }
        }
        Ok(TwoTermComplex { deg0, deg1, diff })
    }

    /// `P_v` in degree 0.
    pub fn stalk0(a: &BasedAlgebra<S>, v: usize) -> Self {
        TwoTermComplex { deg0: vec![v], deg1: vec![], diff: EMat::<S>::zero(a, &[v], &[]) }
    }

    /// `P_v` in degree −1.
    pub fn stalk1(a: &BasedAlgebra<S>, v: usize) -> Self {
        TwoTermComplex { deg0: vec![], deg1: vec![v], diff: EMat::<S>::zero(a, &[], &[v]) }
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_empty() && self.deg1.is_empty()
    }

    /// Multiplicity in degree 0 minus multiplicity in degree −1, per vertex.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0i64; n];
        for &v in &self.deg0 {
            g[v] += 1;
        }
        for &v in &self.deg1 {
            g[v] -= 1;
        }
        g
    }

    /// No entry of the differential has an invertible component.
    pub fn is_minimal(&self, a: &BasedAlgebra<S>) -> bool {
        for (r, &y) in self.deg0.iter().enumerate() {
            for (c, &x) in self.deg1.iter().enumerate() {
                if x == y && !a.identity_coeff(x, self.diff.get(r, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn minimize(&self, a: &BasedAlgebra<S>) -> Self {
        let pc = ProjComplex { low: -1, terms: vec![self.deg1.clone(), self.deg0.clone()], diffs: vec![self.diff.clone()] };
        pc.minimize(a).to_two_term().expect("two terms stay two terms")
    }

    /// Direct sum.
    pub fn direct_sum(a: &BasedAlgebra<S>, parts: &[&Self]) -> Self {
        let diags: Vec<(&EMat<S>, &[usize], &[usize])> =
            parts.iter().map(|p| (&p.diff, p.deg0.as_slice(), p.deg1.as_slice())).collect();
        let diff = EMat::diag_sum(a, &diags);
        TwoTermComplex {
            deg0: parts.iter().flat_map(|p| p.deg0.iter().copied()).collect(),
            deg1: parts.iter().flat_map(|p| p.deg1.iter().copied()).collect(),
            diff,
        }
    }

    /// Splits along connected components of the differential: a term in
    /// degree 0 and one in degree −1 are linked when the entry between them is
    /// nonzero.
    pub fn split_components(&self) -> Vec<Self> {
        let n0 = self.deg0.len();
        let n1 = self.deg1.len();
        let mut parent: Vec<usize> = (0..n0 + n1).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for r in 0..n0 {
            for c in 0..n1 {
                if !linalg::is_zero_vec(self.diff.get(r, c)) {
                    let (x, y) = (find(&mut parent, r), find(&mut parent, n0 + c));
                    parent[x] = y;
                }
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut comp = vec![0; n0 + n1];
        for i in 0..n0 + n1 {
            let r = find(&mut parent, i);
            let k = match roots.iter().position(|&x| x == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            comp[i] = k;
        }
        (0..roots.len())
            .map(|k| {
                let rows: Vec<usize> = (0..n0).filter(|&r| comp[r] == k).collect();
                let cols: Vec<usize> = (0..n1).filter(|&c| comp[n0 + c] == k).collect();
                TwoTermComplex {
                    deg0: rows.iter().map(|&r| self.deg0[r]).collect(),
                    deg1: cols.iter().map(|&c| self.deg1[c]).collect(),
                    diff: self.diff.select(&rows, &cols),
                }
            })
            .collect()
    }

    /// Dimension vector of `H^0`, the cokernel of the differential.
    pub fn h0_dim_vector(&self, a: &BasedAlgebra<S>) -> Vec<usize> {
        let n = a.num_vertices();
        (0..n)
            .map(|v| {
                // T^0 e_v and the image of T^{-1} e_v under left multiplication.
                let total: usize = self.deg0.iter().map(|&y| a.block_dim(y, v)).sum();
                let mut rows: Vec<Vec<S>> = Vec::new();
                for (c, &x) in self.deg1.iter().enumerate() {
                    for k in 0..a.block_dim(x, v) {
                        let mut unit = vec![S::zero(); a.block_dim(x, v)];
                        unit[k] = S::one();
                        let mut img = Vec::with_capacity(total);
                        for (r, &y) in self.deg0.iter().enumerate() {
                            img.extend(a.mul_block(y, x, v, self.diff.get(r, c), &unit));
                        }
                        rows.push(img);
                    }
                }
                total - if total == 0 { 0 } else { linalg::rank(rows) }
            })
            .collect()
    }

    pub fn to_json(&self, a: &BasedAlgebra<S>) -> ComplexJson {
        let label = |v: &usize| a.labels()[*v].clone();
        ComplexJson {
            deg0: self.deg0.iter().map(label).collect(),
            deg_minus1: self.deg1.iter().map(label).collect(),
            diff: (0..self.deg0.len())
                .map(|r| {
                    (0..self.deg1.len()).map(|c| a.format_block(self.deg0[r], self.deg1[c], self.diff.get(r, c))).collect()
                })
                .collect(),
        }
    }

    pub fn from_json(a: &BasedAlgebra<S>, j: &ComplexJson) -> Result<Self> {
        let vertex = |l: &String| {
            a.labels().iter().position(|x| x == l).ok_or_else(|| Error::UnknownVertex(l.clone()))
        };
        let deg0: Vec<usize> = j.deg0.iter().map(vertex).collect::<Result<_>>()?;
        let deg1: Vec<usize> = j.deg_minus1.iter().map(vertex).collect::<Result<_>>()?;
        if j.diff.len() != deg0.len() || j.diff.iter().any(|row| row.len() != deg1.len()) {
            return Err(Error::Invalid("differential has the wrong shape".into()));
        }
        let mut diff = EMat::<S>::zero(a, &deg0, &deg1);
        for (r, &y) in deg0.iter().enumerate() {
            for (c, &x) in deg1.iter().enumerate() {
                let g = a.parse_element(&j.diff[r][c])?;
                let blk = a.global_to_block(y, x, &g);
                if a.block_to_global(y, x, &blk) != g {
                    return Err(Error::Invalid(format!("entry `{}` is not in the right block", j.diff[r][c])));
                }
                diff.set(r, c, blk);
            }
        }
        Self::new(a, deg0, deg1, diff)
    }
}

/// Serialized form of a two-term complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub deg0: Vec<String>,
    #[serde(rename = "deg-1")]
    pub deg_minus1: Vec<String>,
    pub diff: Vec<Vec<String>>,
}

/// A bounded complex of projectives; `terms[k]` sits in degree `low + k` and
/// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
#[derive(Clone, Debug)]
pub struct ProjComplex<S> {
    pub low: i32,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<EMat<S>>,
}

impl<S: Scalar> ProjComplex<S> {
    /// Repeatedly cancels an entry `φ: P_v -> P_v` with nonzero idempotent
    /// coefficient. With `d_k = [[φ, δ], [γ, ε]]` the differential becomes
    /// `ε − γ φ⁻¹ δ`, the cancelled row is dropped from `d_{k−1}` and the
    /// cancelled column from `d_{k+1}`. The result is homotopy equivalent.
    pub fn minimize(mut self, a: &BasedAlgebra<S>) -> Self {
        while let Some((k, r, c)) = self.find_invertible(a) {
            self.eliminate(a, k, r, c);
        }
        self
    }

    fn find_invertible(&self, a: &BasedAlgebra<S>) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for (r, &y) in self.terms[k + 1].iter().enumerate() {
                for (c, &x) in self.terms[k].iter().enumerate() {
                    if x == y && !a.identity_coeff(x, d.get(r, c)).is_zero() {
                        return Some((k, r, c));
                    }
                }
            }
        }
        None
    }

    fn eliminate(&mut self, a: &BasedAlgebra<S>, k: usize, r: usize, c: usize) {
        let v = self.terms[k][c];
        let d = &self.diffs[k];
        let phi_inv = a.local_inverse(v, d.get(r, c)).expect("invertible entry");
        let src = &self.terms[k];
        let dst = &self.terms[k + 1];
        let rows: Vec<usize> = (0..dst.len()).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..src.len()).filter(|&x| x != c).collect();
        let mut nd = d.select(&rows, &cols);
        // δ' = φ⁻¹ δ for each remaining column.
        let delta: Vec<Vec<S>> = cols.iter().map(|&cc| a.mul_block(v, v, src[cc], &phi_inv, d.get(r, cc))).collect();
        for (i, &rr) in rows.iter().enumerate() {
            let gamma = d.get(rr, c);
            if linalg::is_zero_vec(gamma) {
                continue;
            }
            for (j, &cc) in cols.iter().enumerate() {
                let prod = a.mul_block(dst[rr], v, src[cc], gamma, &delta[j]);
                let e = nd.get_mut(i, j);
                for (x, y) in e.iter_mut().zip(&prod) {
                    x.sub_assign(y);
                }
            }
        }
        self.diffs[k] = nd;
        if k > 0 {
            let prev = &self.diffs[k - 1];
            let all_cols: Vec<usize> = (0..prev.cols).collect();
            self.diffs[k - 1] = prev.select(&cols, &all_cols);
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            let all_rows: Vec<usize> = (0..next.rows).collect();
            self.diffs[k + 1] = next.select(&all_rows, &rows);
        }
        self.terms[k].remove(c);
        self.terms[k + 1].remove(r);
    }

    /// The two-term complex in degrees −1 and 0, if every other term is zero.
    pub fn to_two_term(&self) -> Option<TwoTermComplex<S>> {
        let idx = |deg: i32| -> Option<usize> {
            let k = deg - self.low;
            (k >= 0 && (k as usize) < self.terms.len()).then_some(k as usize)
        };
        for (k, t) in self.terms.iter().enumerate() {
            let deg = self.low + k as i32;
            if !(-1..=0).contains(&deg) && !t.is_empty() {
                return None;
            }
        }
        let (i1, i0) = (idx(-1)?, idx(0)?);
        Some(TwoTermComplex {
            deg0: self.terms[i0].clone(),
            deg1: self.terms[i1].clone(),
            diff: self.diffs[i1].clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_based_algebra;
    use crate::dsl::parse_presentation;
    use crate::scalar::Rational;

    fn a2() -> BasedAlgebra<Rational> {
        // α: 1 -> 2, so Hom(P_2, P_1) = e_1 A e_2 is spanned by α.
        build_based_algebra(&parse_presentation("vertices: 1 2\narrow al: 1 -> 2\n").unwrap()).unwrap()
    }

    #[test]
    fn identity_cancels() {
        let a = a2();
        let mut d = EMat::<Rational>::zero(&a, &[0], &[0]);
        d.set(0, 0, a.block_identity(0));
        let t = TwoTermComplex::new(&a, vec![0], vec![0], d).unwrap();
        assert!(t.minimize(&a).is_zero());
    }

    #[test]
    fn cokernel_of_arrow_is_simple() {
        let a = a2();
        let al = a.parse_element("al").unwrap();
        let mut d = EMat::<Rational>::zero(&a, &[0], &[1]);
        d.set(0, 0, a.global_to_block(0, 1, &al));
        let t = TwoTermComplex::new(&a, vec![0], vec![1], d).unwrap();
        assert_eq!(t.h0_dim_vector(&a), vec![1, 0]);
        assert_eq!(t.g_vector(2), vec![1, -1]);
        let j = t.to_json(&a);
        assert_eq!(j.diff, vec![vec!["al".to_string()]]);
        assert_eq!(TwoTermComplex::from_json(&a, &j).unwrap(), t);
    }

    #[test]
    fn components_split() {
        let a = a2();
        let t = TwoTermComplex::direct_sum(&a, &[&TwoTermComplex::stalk0(&a, 0), &TwoTermComplex::stalk1(&a, 1)]);
        assert_eq!(t.split_components().len(), 2);
    }
}
