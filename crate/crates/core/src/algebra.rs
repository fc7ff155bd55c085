//! Finite-dimensional algebras given by a basis adapted to the vertex
//! idempotents.
//!
//! Every basis element `b` lies in some `e_s A e_t`; think of it as a path
//! from `s` to `t`. The idempotents `e_v` are themselves basis elements and the
//! remaining basis elements span the radical. `Hom(P_i, P_j)` for the right
//! projective `P_i = e_i A` is the block `e_j A e_i`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, SemiEchelon};
use crate::normalize::normalize_presentation;
use crate::quiver::{LinComb, PathWord, Presentation, Quiver};
use crate::rewrite::{complete_rewrite_system, CompletionConfig};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct BasedAlgebra<S> {
    labels: Vec<String>,
    elems: Vec<BasisElem>,
    idem: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    block_pos: Vec<usize>,
    /// `table[i * dim + j]` = product of basis elements `i` and `j`.
    table: Vec<Vec<(usize, S)>>,
    by_name: HashMap<String, usize>,
    presentation: Option<Presentation>,
}

/// Name used for the idempotent at a vertex.
pub fn idempotent_name(label: &str) -> String {
    format!("e({label})")
}

impl<S: Scalar> BasedAlgebra<S> {
    /// Assembles an algebra from its basis and a product function on basis
    /// indices. Element `idem[v]` must be the idempotent of vertex `v`.
    pub fn from_parts(
        labels: Vec<String>,
        elems: Vec<BasisElem>,
        idem: Vec<usize>,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, S)>,
    ) -> Self {
        let n = labels.len();
        let dim = elems.len();
        let mut blocks = vec![Vec::new(); n * n];
        let mut block_pos = vec![0; dim];
        for (i, e) in elems.iter().enumerate() {
            let b = &mut blocks[e.source * n + e.target];
            block_pos[i] = b.len();
            b.push(i);
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if elems[i].target == elems[j].source {
                    let mut p: Vec<(usize, S)> = product(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    p.sort_by_key(|x| x.0);
                    table[i * dim + j] = p;
                }
            }
        }
        let by_name = elems.iter().enumerate().map(|(i, e)| (e.name.clone(), i)).collect();
        BasedAlgebra { labels, elems, idem, blocks, block_pos, table, by_name, presentation: None }
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.elems
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idem[v]
    }

    pub fn is_idempotent(&self, b: usize) -> bool {
        self.idem[self.elems[b].source] == b
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Basis indices of `e_s A e_t`.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s * self.num_vertices() + t]
    }

    pub fn block_dim(&self, s: usize, t: usize) -> usize {
        self.block(s, t).len()
    }

    /// Position of a basis element inside its block.
    pub fn block_pos(&self, b: usize) -> usize {
        self.block_pos[b]
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim() + j]
    }

    /// Basis of `Hom(P_i, P_j) = e_j A e_i`, as basis-element names.
    pub fn hom_basis(&self, i: usize, j: usize) -> Vec<String> {
        self.block(j, i).iter().map(|&b| self.elems[b].name.clone()).collect()
    }

    /// `t[i][j] = dim Hom(P_i, P_j)`.
    pub fn hom_dim_table(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        (0..n).map(|i| (0..n).map(|j| self.block_dim(j, i)).collect()).collect()
    }

    /// Product `x·y` of block elements `x ∈ e_s A e_t`, `y ∈ e_t A e_u`,
    /// returned in block coordinates of `e_s A e_u`.
    pub fn mul_block(&self, s: usize, t: usize, u: usize, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.block_dim(s, u)];
        self.mul_block_acc(s, t, u, x, y, &mut out);
        out
    }

    /// `out += x·y` in block coordinates.
    pub fn mul_block_acc(&self, s: usize, t: usize, u: usize, x: &[S], y: &[S], out: &mut [S]) {
        let bx = self.block(s, t);
        let by = self.block(t, u);
        let dim = self.dim();
        for (xi, &bi) in x.iter().zip(bx) {
            if xi.is_zero() {
                continue;
            }
            for (yj, &bj) in y.iter().zip(by) {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, v) in &self.table[bi * dim + bj] {
                    out[self.block_pos[*k]].add_assign(&c.mul(v));
                }
            }
        }
    }

    /// Product of two elements in global coordinates.
    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let dim = self.dim();
        let mut out = vec![S::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, v) in &self.table[i * dim + j] {
                    out[*k].add_assign(&c.mul(v));
                }
            }
        }
        out
    }

    pub fn unit_vec(&self, b: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[b] = S::one();
        v
    }

    pub fn block_to_global(&self, s: usize, t: usize, x: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        for (c, &b) in x.iter().zip(self.block(s, t)) {
            v[b] = c.clone();
        }
        v
    }

    pub fn global_to_block(&self, s: usize, t: usize, v: &[S]) -> Vec<S> {
        self.block(s, t).iter().map(|&b| v[b].clone()).collect()
    }

    /// Coordinates of `e_v` in the block `e_v A e_v`.
    pub fn block_identity(&self, v: usize) -> Vec<S> {
        let mut x = vec![S::zero(); self.block_dim(v, v)];
        x[self.block_pos[self.idem[v]]] = S::one();
        x
    }

    /// Coefficient of `e_v` in an element of `e_v A e_v`.
    pub fn identity_coeff(&self, v: usize, x: &[S]) -> S {
        x[self.block_pos[self.idem[v]]].clone()
    }

    /// Inverse of `x ∈ e_v A e_v`, if its idempotent coefficient is nonzero.
    /// Uses `x = λ(e_v + n)` with `n` nilpotent.
    pub fn local_inverse(&self, v: usize, x: &[S]) -> Option<Vec<S>> {
        let lam = self.identity_coeff(v, x);
        if lam.is_zero() {
            return None;
        }
        let li = lam.inv();
        let mut nil: Vec<S> = x.iter().map(|c| c.mul(&li)).collect();
        nil[self.block_pos[self.idem[v]]] = S::zero();
        let minus_n: Vec<S> = nil.iter().map(|c| c.neg()).collect();
        let mut sum = self.block_identity(v);
        let mut pow = self.block_identity(v);
        loop {
            pow = self.mul_block(v, v, v, &pow, &minus_n);
            if linalg::is_zero_vec(&pow) {
                break;
            }
            linalg::axpy(&mut sum, &S::one(), &pow);
        }
        Some(sum.into_iter().map(|c| c.mul(&li)).collect())
    }

    /// Checks associativity on all composable basis triples.
    pub fn check_associative(&self) -> bool {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                if self.elems[i].target != self.elems[j].source {
                    continue;
                }
                let ij = &self.table[i * dim + j];
                for k in 0..dim {
                    if self.elems[j].target != self.elems[k].source {
                        continue;
                    }
                    let mut left = vec![S::zero(); dim];
                    for (m, c) in ij {
                        for (r, d) in &self.table[m * dim + k] {
                            left[*r].add_assign(&c.mul(d));
                        }
                    }
                    let mut right = vec![S::zero(); dim];
                    for (m, c) in &self.table[j * dim + k] {
                        for (r, d) in &self.table[i * dim + m] {
                            right[*r].add_assign(&c.mul(d));
                        }
                    }
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Checks that idempotents act as identities on their blocks.
    pub fn check_idempotents(&self) -> bool {
        for (b, e) in self.elems.iter().enumerate() {
            let l = self.product(self.idem[e.source], b);
            let r = self.product(b, self.idem[e.target]);
            let unit = [(b, S::one())];
            if l != unit || r != unit {
                return false;
            }
        }
        true
    }

    /// Opposite algebra: the same basis, arrows and products reversed.
    pub fn opposite(&self) -> Self {
        let elems: Vec<BasisElem> = self
            .elems
            .iter()
            .map(|e| BasisElem { source: e.target, target: e.source, name: reverse_name(&e.name) })
            .collect();
        let dim = self.dim();
        let mut a = Self::from_parts(self.labels.clone(), elems, self.idem.clone(), |i, j| {
            self.table[j * dim + i].clone()
        });
        a.presentation = self.presentation.as_ref().map(opposite_presentation);
        a
    }

    /// The algebra `eAe` for `e` the sum of the idempotents at `vertices`
    /// (in the given order, which becomes the new vertex numbering).
    pub fn idempotent_truncation(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Invalid("empty vertex set".into()));
        }
        let mut newv = vec![usize::MAX; self.num_vertices()];
        for (k, &v) in vertices.iter().enumerate() {
            if v >= self.num_vertices() || newv[v] != usize::MAX {
                return Err(Error::Invalid(format!("bad vertex {v}")));
            }
            newv[v] = k;
        }
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&b| newv[self.elems[b].source] != usize::MAX && newv[self.elems[b].target] != usize::MAX)
            .collect();
        let mut old_to_new = vec![usize::MAX; self.dim()];
        for (k, &b) in keep.iter().enumerate() {
            old_to_new[b] = k;
        }
        let elems = keep
            .iter()
            .map(|&b| {
                let e = &self.elems[b];
                BasisElem { source: newv[e.source], target: newv[e.target], name: e.name.clone() }
            })
            .collect();
        let idem = vertices.iter().map(|&v| old_to_new[self.idem[v]]).collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let dim = self.dim();
        Ok(Self::from_parts(labels, elems, idem, |i, j| {
            self.table[keep[i] * dim + keep[j]].iter().map(|(k, c)| (old_to_new[*k], c.clone())).collect()
        }))
    }

    /// Subspace spanned by the basis elements lying in blocks selected by
    /// `keep`. The selection must be closed under multiplication.
    pub fn block_subalgebra(&self, keep: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let sel: Vec<usize> = (0..self.dim()).filter(|&b| keep(self.elems[b].source, self.elems[b].target)).collect();
        for v in 0..self.num_vertices() {
            if !keep(v, v) {
                return Err(Error::Invalid("block selection must contain every diagonal block".into()));
            }
        }
        let mut old_to_new = vec![usize::MAX; self.dim()];
        for (k, &b) in sel.iter().enumerate() {
            old_to_new[b] = k;
        }
        let dim = self.dim();
        for &i in &sel {
            for &j in &sel {
                if self.table[i * dim + j].iter().any(|(k, _)| old_to_new[*k] == usize::MAX) {
                    return Err(Error::Invalid("block selection is not closed under products".into()));
                }
            }
        }
        let elems = sel.iter().map(|&b| self.elems[b].clone()).collect();
        let idem = self.idem.iter().map(|&b| old_to_new[b]).collect();
        Ok(Self::from_parts(self.labels.clone(), elems, idem, |i, j| {
            self.table[sel[i] * dim + sel[j]].iter().map(|(k, c)| (old_to_new[*k], c.clone())).collect()
        }))
    }

    /// Two-sided ideal generated by `gens` (global coordinates), in reduced
    /// echelon form with pivots at the largest possible basis indices.
    fn ideal_echelon(&self, gens: &[Vec<S>]) -> (Vec<Vec<S>>, Vec<usize>) {
        let dim = self.dim();
        let mut span = SemiEchelon::new(dim);
        let mut queue: Vec<Vec<S>> = Vec::new();
        for g in gens {
            if span.insert(g.clone()).is_some() {
                queue.push(g.clone());
            }
        }
        // Close under left and right multiplication by basis elements.
        while let Some(x) = queue.pop() {
            for b in 0..dim {
                let u = self.unit_vec(b);
                for y in [self.mul(&u, &x), self.mul(&x, &u)] {
                    if !linalg::is_zero_vec(&y) && span.insert(y.clone()).is_some() {
                        queue.push(y);
                    }
                }
            }
        }
        // Reverse columns so that rref picks the largest indices as pivots.
        let mut rows: Vec<Vec<S>> = span.vectors().iter().map(|v| v.iter().rev().cloned().collect()).collect();
        let piv = linalg::rref(&mut rows);
        let rows: Vec<Vec<S>> = rows.into_iter().map(|r| r.into_iter().rev().collect()).collect();
        let piv = piv.into_iter().map(|p| dim - 1 - p).collect();
        (rows, piv)
    }

    /// Quotient by the two-sided ideal generated by `gens`. The quotient basis
    /// is the set of basis elements that are not pivots of the ideal.
    pub fn quotient_by_ideal(&self, gens: &[Vec<S>]) -> Result<Self> {
        for g in gens {
            if g.len() != self.dim() {
                return Err(Error::Invalid("generator has wrong length".into()));
            }
            if self.idem.iter().any(|&e| !g[e].is_zero()) {
                return Err(Error::NotInRadical(self.format_element(g)));
            }
        }
        let (rows, piv) = self.ideal_echelon(gens);
        let mut is_piv = vec![false; self.dim()];
        for &p in &piv {
            is_piv[p] = true;
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&b| !is_piv[b]).collect();
        let mut old_to_new = vec![usize::MAX; self.dim()];
        for (k, &b) in keep.iter().enumerate() {
            old_to_new[b] = k;
        }
        let dim = self.dim();
        let reduce = |v: &mut Vec<S>| {
            for (row, &p) in rows.iter().zip(&piv) {
                if !v[p].is_zero() {
                    let f = v[p].clone();
                    linalg::axpy(v, &f.neg(), row);
                }
            }
        };
        let elems = keep.iter().map(|&b| self.elems[b].clone()).collect();
        let idem = self.idem.iter().map(|&b| old_to_new[b]).collect();
        Ok(Self::from_parts(self.labels.clone(), elems, idem, |i, j| {
            let mut v = vec![S::zero(); dim];
            for (k, c) in &self.table[keep[i] * dim + keep[j]] {
                v[*k] = c.clone();
            }
            reduce(&mut v);
            keep.iter().enumerate().filter(|(_, &b)| !v[b].is_zero()).map(|(k, &b)| (k, v[b].clone())).collect()
        }))
    }

    /// Quotient by the ideal generated by the named basis elements.
    pub fn quotient_by_names(&self, names: &[&str]) -> Result<Self> {
        let gens: Vec<Vec<S>> = names
            .iter()
            .map(|n| self.index_of(n).map(|b| self.unit_vec(b)).ok_or_else(|| Error::UnknownArrow(n.to_string())))
            .collect::<Result<_>>()?;
        self.quotient_by_ideal(&gens)
    }

    /// Basis of `e_s rad A e_t` (block coordinates).
    fn rad_block(&self, s: usize, t: usize) -> Vec<Vec<S>> {
        let blk = self.block(s, t);
        blk.iter()
            .enumerate()
            .filter(|(_, &b)| !self.is_idempotent(b))
            .map(|(k, _)| {
                let mut x = vec![S::zero(); blk.len()];
                x[k] = S::one();
                x
            })
            .collect()
    }

    /// Spanning set of `e_s rad² A e_t` (block coordinates).
    fn rad2_block(&self, s: usize, t: usize) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        for u in 0..self.num_vertices() {
            let left = self.rad_block(s, u);
            let right = self.rad_block(u, t);
            for x in &left {
                for y in &right {
                    let z = self.mul_block(s, u, t, x, y);
                    if !linalg::is_zero_vec(&z) {
                        out.push(z);
                    }
                }
            }
        }
        out
    }

    /// Quiver of the algebra together with, for each arrow, the basis element
    /// chosen to represent it. Arrows `s -> t` correspond to a basis of
    /// `e_s rad e_t / e_s rad² e_t`; representatives are basis elements.
    pub fn quiver_with_reps(&self) -> (Quiver, Vec<usize>) {
        let n = self.num_vertices();
        let mut q = Quiver { vertices: self.labels.clone(), arrows: Vec::new() };
        let mut reps = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let blk = self.block(s, t);
                if blk.is_empty() {
                    continue;
                }
                let mut span = SemiEchelon::new(blk.len());
                for z in self.rad2_block(s, t) {
                    span.insert(z);
                }
                for (k, &b) in blk.iter().enumerate() {
                    if self.is_idempotent(b) {
                        continue;
                    }
                    let mut x = vec![S::zero(); blk.len()];
                    x[k] = S::one();
                    if span.insert(x).is_some() {
                        q.arrows.push(crate::quiver::Arrow { name: self.elems[b].name.clone(), source: s, target: t });
                        reps.push(b);
                    }
                }
            }
        }
        (q, reps)
    }

    pub fn quiver(&self) -> Quiver {
        self.quiver_with_reps().0
    }

    /// Loewy length: least `k` with `rad^k = 0`.
    pub fn loewy_length(&self) -> usize {
        let (_, reps) = self.quiver_with_reps();
        let mut layer: Vec<Vec<S>> = reps.iter().map(|&b| self.unit_vec(b)).collect();
        let mut k = 1;
        while !layer.is_empty() {
            k += 1;
            let mut span = SemiEchelon::new(self.dim());
            for x in &layer {
                for &a in &reps {
                    let y = self.mul(x, &self.unit_vec(a));
                    if !linalg::is_zero_vec(&y) {
                        span.insert(y);
                    }
                }
            }
            layer = span.vectors().to_vec();
        }
        k
    }

    /// Number of relations in a minimal generating set of the ideal `I` in a
    /// presentation `KQ/I` of this algebra by its own quiver, i.e.
    /// `dim I / (R I + I R)` with `R` the arrow ideal.
    pub fn minimal_relation_count(&self) -> usize {
        let (q, reps) = self.quiver_with_reps();
        let ll = self.loewy_length();
        // Paths of length 2..=ll over the arrow representatives.
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
        for _len in 2..=ll {
            let mut next = Vec::new();
            for p in &layer {
                let t = q.arrows[*p.last().unwrap()].target;
                for (a, ar) in q.arrows.iter().enumerate() {
                    if ar.source == t {
                        let mut np = p.clone();
                        np.push(a);
                        next.push(np);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            layer = next;
        }
        if paths.is_empty() {
            return 0;
        }
        let index: HashMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        // Image of each path in A.
        let images: Vec<Vec<S>> = paths
            .iter()
            .map(|p| {
                let mut v = self.unit_vec(reps[p[0]]);
                for &a in &p[1..] {
                    v = self.mul(&v, &self.unit_vec(reps[a]));
                }
                v
            })
            .collect();
        // Kernel of the evaluation map: columns are paths.
        let rows: Vec<Vec<S>> = (0..self.dim()).map(|r| images.iter().map(|im| im[r].clone()).collect()).collect();
        let ker = linalg::kernel(&rows, paths.len());
        // R I + I R, truncated to the same path range.
        let mut span = SemiEchelon::new(paths.len());
        for x in &ker {
            for a in 0..q.arrows.len() {
                let mut left = vec![S::zero(); paths.len()];
                let mut right = vec![S::zero(); paths.len()];
                for (i, c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let p = &paths[i];
                    if q.arrows[a].target == q.arrows[p[0]].source {
                        let mut np = vec![a];
                        np.extend_from_slice(p);
                        if let Some(&j) = index.get(&np) {
                            left[j].add_assign(c);
                        }
                    }
                    if q.arrows[*p.last().unwrap()].target == q.arrows[a].source {
                        let mut np = p.clone();
                        np.push(a);
                        if let Some(&j) = index.get(&np) {
                            right[j].add_assign(c);
                        }
                    }
                }
                span.insert(left);
                span.insert(right);
            }
        }
        ker.len() - span.len()
    }

    /// Direct product of two algebras; vertices of `other` follow those of `self`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let n1 = self.num_vertices();
        let d1 = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().map(|e| BasisElem {
            source: e.source + n1,
            target: e.target + n1,
            name: format!("{}'", e.name),
        }));
        let mut idem = self.idem.clone();
        idem.extend(other.idem.iter().map(|&b| b + d1));
        Self::from_parts(labels, elems, idem, |i, j| {
            if i < d1 && j < d1 {
                self.product(i, j).to_vec()
            } else if i >= d1 && j >= d1 {
                other.product(i - d1, j - d1).iter().map(|(k, c)| (k + d1, c.clone())).collect()
            } else {
                Vec::new()
            }
        })
    }

    /// Parses an element written with basis-element names, e.g. `a3*b1 - 2*e(0)`.
    /// A product of names is evaluated in the algebra unless the whole product
    /// is itself a basis-element name.
    pub fn parse_element(&self, text: &str) -> Result<Vec<S>> {
        let mut out = vec![S::zero(); self.dim()];
        let src = text.trim();
        if src == "0" {
            return Ok(out);
        }
        for (neg, coeff, word) in split_terms(src)? {
            let mut v = match self.index_of(&word) {
                Some(b) => self.unit_vec(b),
                None => {
                    let mut acc: Option<Vec<S>> = None;
                    for atom in word.split('*') {
                        let b = self.index_of(atom).ok_or_else(|| Error::UnknownArrow(atom.to_string()))?;
                        let u = self.unit_vec(b);
                        acc = Some(match acc {
                            None => u,
                            Some(a) => self.mul(&a, &u),
                        });
                    }
                    acc.unwrap_or_else(|| vec![S::zero(); self.dim()])
                }
            };
            let (n, d) = coeff.numer_denom();
            let mut c = S::from_ratio(&n, &d).ok_or_else(|| Error::Coefficient(coeff.to_string()))?;
            if neg {
                c = c.neg();
            }
            for x in v.iter_mut() {
                *x = x.mul(&c);
            }
            linalg::axpy(&mut out, &S::one(), &v);
        }
        Ok(out)
    }

    pub fn format_element(&self, v: &[S]) -> String {
        let mut s = String::new();
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = c.to_string();
            let (neg, mag) = match t.strip_prefix('-') {
                Some(m) if S::characteristic() == 0 => (true, m.to_string()),
                _ => (false, t),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push('*');
            }
            s.push_str(&self.elems[b].name);
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    /// Element of a block, formatted.
    pub fn format_block(&self, s: usize, t: usize, x: &[S]) -> String {
        self.format_element(&self.block_to_global(s, t, x))
    }
}

/// Splits `a*b - 2*c + 1/2*d` into (negative, coefficient, word) triples.
fn split_terms(src: &str) -> Result<Vec<(bool, Rational, String)>> {
    let mut out = Vec::new();
    let mut rest = src.trim();
    let mut first = true;
    while !rest.is_empty() {
        let mut neg = false;
        if let Some(r) = rest.strip_prefix('-') {
            neg = true;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if !first {
            return Err(Error::Syntax { line: 1, col: src.len() - rest.len() + 1, msg: "expected `+` or `-`".into() });
        }
        first = false;
        let (term, tail) = match rest.find([' ', '+', '-']) {
            Some(e) => rest.split_at(e),
            None => (rest, ""),
        };
        rest = tail.trim_start();
        let (coeff, word) = split_coeff(term)?;
        if word.is_empty() {
            return Err(Error::Syntax { line: 1, col: 1, msg: format!("missing path in `{term}`") });
        }
        out.push((neg, coeff, word));
    }
    Ok(out)
}

fn split_coeff(term: &str) -> Result<(Rational, String)> {
    let digits: String = term.chars().take_while(|c| c.is_ascii_digit() || *c == '/').collect();
    if digits.is_empty() {
        return Ok((Rational::one(), term.to_string()));
    }
    let rest = term[digits.len()..].trim_start_matches('*').to_string();
    let mut parts = digits.split('/');
    let n: i64 = parts.next().unwrap().parse().map_err(|_| Error::Invalid(term.into()))?;
    let d: i64 = match parts.next() {
        Some(d) => d.parse().map_err(|_| Error::Invalid(term.into()))?,
        None => 1,
    };
    if d == 0 {
        return Err(Error::Invalid(format!("zero denominator in `{term}`")));
    }
    Ok((Rational::new(n, d), rest))
}

/// `a*b*c` becomes `c*b*a`; idempotent names are unchanged.
fn reverse_name(name: &str) -> String {
    if name.starts_with("e(") {
        return name.to_string();
    }
    let mut parts: Vec<&str> = name.split('*').collect();
    parts.reverse();
    parts.join("*")
}

fn opposite_presentation(p: &Presentation) -> Presentation {
    let q = p.quiver.opposite();
    let relations = p
        .relations
        .iter()
        .map(|r| {
            let mut o = LinComb::zero();
            for (w, c) in r.terms() {
                let mut arrows = w.arrows.clone();
                arrows.reverse();
                o.add_term(PathWord { source: w.target, target: w.source, arrows }, c.clone());
            }
            o
        })
        .collect();
    Presentation { quiver: q, relations }
}

/// Builds the based algebra of a presentation: normalizes it, completes the
/// rewriting system and takes the normal paths as basis.
pub fn build_based_algebra<S: Scalar>(p: &Presentation) -> Result<BasedAlgebra<S>> {
    build_based_algebra_with(p, CompletionConfig::default())
}

pub fn build_based_algebra_with<S: Scalar>(p: &Presentation, cfg: CompletionConfig) -> Result<BasedAlgebra<S>> {
    let p = normalize_presentation(p)?;
    let mut rs = complete_rewrite_system::<S>(&p, cfg)?;
    let words = rs.normal_words(cfg.max_len)?;
    let q = &p.quiver;
    let index: HashMap<PathWord, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let elems: Vec<BasisElem> = words
        .iter()
        .map(|w| BasisElem { source: w.source, target: w.target, name: w.display(q) })
        .collect();
    let idem = (0..q.num_vertices()).map(|v| index[&PathWord::trivial(v)]).collect();
    let mut a = BasedAlgebra::from_parts(q.vertices.clone(), elems, idem, |i, j| {
        let w = words[i].concat(&words[j]).expect("composable");
        rs.normal_form_path(&w).terms().map(|(p, c)| (index[p], c.clone())).collect()
    });
    a.presentation = Some(p);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;

    fn square() -> BasedAlgebra<Rational> {
        let p = parse_presentation(
            "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow m: 2 -> 4\narrow n: 3 -> 4\nrel a*m - b*n\n",
        )
        .unwrap();
        build_based_algebra(&p).unwrap()
    }

    #[test]
    fn square_basics() {
        let a = square();
        assert_eq!(a.dim(), 9);
        assert!(a.check_associative());
        assert!(a.check_idempotents());
        assert_eq!(a.quiver().arrows.len(), 4);
        assert_eq!(a.minimal_relation_count(), 1);
        assert_eq!(a.loewy_length(), 3);
    }

    #[test]
    fn quotient_by_all_arrows_is_semisimple() {
        let a = square();
        let q = a.quotient_by_names(&["a", "b", "m", "n"]).unwrap();
        assert_eq!(q.dim(), 4);
        assert!(q.quiver().arrows.is_empty());
        assert!(a.quotient_by_names(&["e(1)"]).is_err());
    }

    #[test]
    fn opposite_is_involutive_on_dims() {
        let a = square();
        assert_eq!(a.opposite().opposite().hom_dim_table(), a.hom_dim_table());
        assert!(a.opposite().check_associative());
    }

    #[test]
    fn truncation_and_inverse() {
        let a = square();
        let t = a.idempotent_truncation(&[0, 1, 3]).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.quiver().arrows.len(), 2);
        let x = a.parse_element("2*e(1)").unwrap();
        let inv = a.local_inverse(0, &a.global_to_block(0, 0, &x)).unwrap();
        assert_eq!(a.format_block(0, 0, &inv), "1/2*e(1)");
    }

    #[test]
    fn parse_element_evaluates_products() {
        let a = square();
        let x = a.parse_element("a*m - b*n").unwrap();
        assert!(linalg::is_zero_vec(&x));
    }
}
