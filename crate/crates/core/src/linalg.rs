//! Dense exact linear algebra over a [`Scalar`].
//!
//! Vectors are plain `Vec<S>`; matrices are row-major `Vec<Vec<S>>`.

use crate::scalar::Scalar;

/// Row-reduces `m` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
pub fn rref<S: Scalar>(m: &mut Vec<Vec<S>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank<S: Scalar>(mut m: Vec<Vec<S>>) -> usize {
    rref(&mut m).len()
}

/// Basis of the null space `{x : m x = 0}` for a matrix with `cols` columns.
pub fn kernel<S: Scalar>(m: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut red: Vec<Vec<S>> = m.to_vec();
    let pivots = rref(&mut red);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (row, &p) in red.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = row[free].neg();
            }
        }
        out.push(v);
    }
    out
}

/// A basis kept in semi-echelon form: every stored vector vanishes at the
/// pivots of all vectors stored before it. Coordinates of a vector in the span
/// with respect to the stored vectors are then read off in insertion order.
#[derive(Clone, Debug)]
pub struct SemiEchelon<S> {
    dim: usize,
    vectors: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> SemiEchelon<S> {
    pub fn new(dim: usize) -> Self {
        SemiEchelon { dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    /// Reduces `v` against the stored vectors, returning the residue.
    pub fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].div(&b[p]);
                axpy(&mut v, &f.neg(), b);
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts the residue of `v` if it is nonzero. Returns the index of the new
    /// stored vector.
    pub fn insert(&mut self, v: Vec<S>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let p = r.iter().position(|x| !x.is_zero())?;
        self.vectors.push(r);
        self.pivots.push(p);
        Some(self.vectors.len() - 1)
    }

    /// Coordinates of `v` with respect to the stored vectors, or `None` if `v`
    /// is not in their span.
    pub fn coords(&self, v: &[S]) -> Option<Vec<S>> {
        let mut v = v.to_vec();
        let mut c = Vec::with_capacity(self.vectors.len());
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                c.push(S::zero());
                continue;
            }
            let f = v[p].div(&b[p]);
            axpy(&mut v, &f.neg(), b);
            c.push(f);
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(c)
        } else {
            None
        }
    }
}

/// Coordinates with respect to a fixed list of linearly independent vectors.
#[derive(Clone, Debug)]
pub struct CoordBasis<S> {
    echelon: SemiEchelon<S>,
    /// Stored echelon vector `i` as a combination of the original vectors.
    transform: Vec<Vec<S>>,
}

impl<S: Scalar> CoordBasis<S> {
    /// `None` if the vectors are dependent.
    pub fn new(dim: usize, basis: &[Vec<S>]) -> Option<Self> {
        let k = basis.len();
        let mut echelon = SemiEchelon::new(dim);
        let mut transform: Vec<Vec<S>> = Vec::with_capacity(k);
        for (i, b) in basis.iter().enumerate() {
            let mut t = vec![S::zero(); k];
            t[i] = S::one();
            let mut v = b.clone();
            for (j, (s, &p)) in echelon.vectors.iter().zip(&echelon.pivots).enumerate() {
                if !v[p].is_zero() {
                    let f = v[p].div(&s[p]);
                    axpy(&mut v, &f.neg(), s);
                    axpy(&mut t, &f.neg(), &transform[j]);
                }
            }
            let p = v.iter().position(|x| !x.is_zero())?;
            echelon.vectors.push(v);
            echelon.pivots.push(p);
            transform.push(t);
        }
        Some(CoordBasis { echelon, transform })
    }

    pub fn coords(&self, v: &[S]) -> Option<Vec<S>> {
        let c = self.echelon.coords(v)?;
        let mut out = vec![S::zero(); self.transform.len()];
        for (ci, t) in c.iter().zip(&self.transform) {
            axpy(&mut out, ci, t);
        }
        Some(out)
    }
}

/// `y += a * x`.
pub fn axpy<S: Scalar>(y: &mut [S], a: &S, x: &[S]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.add(&a.mul(xi));
        }
    }
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Linear combination `Σ c_i v_i` of equal-length vectors.
pub fn combine<S: Scalar>(coeffs: &[S], vectors: &[Vec<S>], dim: usize) -> Vec<S> {
    let mut out = vec![S::zero(); dim];
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Integer determinant by Bareiss elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = q(1).mul(&v[0]).add(&q(2).mul(&v[1])).add(&q(3).mul(&v[2]));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn semi_echelon_coordinates() {
        let mut e = SemiEchelon::new(3);
        e.insert(vec![q(1), q(1), q(0)]);
        e.insert(vec![q(0), q(1), q(1)]);
        let v = vec![q(2), q(5), q(3)];
        let c = e.coords(&v).unwrap();
        let back = combine(&c, e.vectors(), 3);
        assert_eq!(back, v);
        assert!(e.coords(&[q(1), q(0), q(0)]).is_none());
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(det_i64(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
    }
}
