//! Dense matrices over a ring object: elimination, kernels, congruence
//! diagonalization.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: Vec<Vec<E>>,
    ncols: usize,
}

impl<E: Clone + std::fmt::Debug + PartialEq> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { rows, ncols }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, n: usize, m: usize) -> Self {
        Matrix { rows: vec![vec![f.zero(); m]; n], ncols: m }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.rows[i][i] = f.one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        Matrix { rows, ncols: self.rows.len() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..o.ncols)
                    .map(|j| {
                        let mut acc = f.zero();
                        for (k, a) in r.iter().enumerate() {
                            if !f.is_zero(a) {
                                acc = f.add(&acc, &f.mul(a, &o.rows[k][j]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Matrix { rows, ncols: o.ncols }
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
            .collect()
    }

    pub fn is_symmetric<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.nrows() == self.ncols
            && (0..self.ncols).all(|i| (0..i).all(|j| f.equal(&self.rows[i][j], &self.rows[j][i])))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut a = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
                continue;
            };
            a.swap(r, p);
            let inv = match f.inv(&a[r][c]) {
                Some(i) => i,
                None => continue,
            };
            for x in a[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !f.is_zero(&row[c]) {
                    let factor = row[c].clone();
                    for (x, pv) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(x, &f.mul(&factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: a, ncols: self.ncols }, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.ncols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r.rows[i][fc]);
                }
                v
            })
            .collect()
    }

    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        let mut a = self.rows.clone();
        let n = a.len();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&a[i][c])) else {
                return f.zero();
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let inv = match f.inv(&a[c][c]) {
                Some(i) => i,
                None => return f.zero(),
            };
            for i in c + 1..n {
                if f.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = f.mul(&a[i][c], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &a[c][j]);
                    a[i][j] = f.sub(&a[i][j], &t);
                }
            }
        }
        det
    }

    /// Solve `self * x = b` for square invertible `self`.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        let n = self.nrows();
        let rows = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let (r, pivots) = Matrix { rows, ncols: self.ncols + 1 }.rref(f);
        if pivots.len() != n || pivots.iter().any(|&c| c >= self.ncols) {
            return None;
        }
        Some((0..n).map(|i| r.rows[i][self.ncols].clone()).collect())
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        let n = self.nrows();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let (r, pivots) = Matrix { rows, ncols: 2 * n }.rref(f);
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Matrix { rows: r.rows.iter().map(|row| row[n..].to_vec()).collect(), ncols: n })
    }
}

/// Congruence diagonalization of a symmetric matrix (characteristic ≠ 2).
///
/// Returns the nonzero diagonal entries of some `P^T G P`; their count is
/// the rank of `G`.
pub fn diagonalize_symmetric<F: Field>(f: &F, g: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let mut a = g.rows.clone();
    let mut n = a.len();
    let mut out = Vec::new();
    while n > 0 {
        if let Some(p) = (0..n).find(|&i| !f.is_zero(&a[i][i])) {
            swap_sym(&mut a, p, 0);
        } else if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !f.is_zero(&a[i][j])) {
            // Zero diagonal, nonzero off-diagonal: add row/column j to i.
            for k in 0..n {
                let v = f.add(&a[i][k], &a[j][k]);
                a[i][k] = v;
            }
            for k in 0..n {
                let v = f.add(&a[k][i], &a[k][j]);
                a[k][i] = v;
            }
            swap_sym(&mut a, i, 0);
        } else {
            break;
        }
        let pivot = a[0][0].clone();
        let inv = match f.inv(&pivot) {
            Some(i) => i,
            None => break,
        };
        for i in 1..n {
            if f.is_zero(&a[i][0]) {
                continue;
            }
            let factor = f.mul(&a[i][0], &inv);
            for j in 1..n {
                let t = f.mul(&factor, &a[0][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
        }
        out.push(pivot);
        a = a[1..n].iter().map(|r| r[1..n].to_vec()).collect();
        n -= 1;
    }
    out
}

fn swap_sym<E>(a: &mut [Vec<E>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn m(rows: &[&[i64]]) -> Matrix<crate::scalars::FieldScalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q.from_i64(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(&Q), Q.from_i64(18));
        let ai = a.inverse(&Q).unwrap();
        assert_eq!(a.mul(&Q, &ai), Matrix::identity(&Q, 3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse(&Q).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel(&Q);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&Q, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let d = diagonalize_symmetric(&Q, &m(&[&[0, 2], &[2, 0]]));
        assert_eq!(d.len(), 2);
        assert_eq!(Q.mul(&d[0], &d[1]), Q.from_i64(-4));
        assert_eq!(diagonalize_symmetric(&Q, &m(&[&[1, 1], &[1, 1]])), vec![Q.from_i64(1)]);
    }
}
