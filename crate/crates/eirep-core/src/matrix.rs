//! Dense matrices over [`Fq`], row-major, with exact Gaussian elimination.

use crate::field::Fq;
use crate::poly::{self, Poly};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<u64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(fm, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(i))?;
        }
        write!(fm, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Validation("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, a: rows.into_iter().flatten().collect() })
    }

    /// Permutation matrix P with P e_i = e_{p(i)}.
    pub fn from_perm(p: &crate::perm::Perm) -> Mat {
        let n = p.degree();
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(p.apply(i), i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u64::from(i == j)))
    }

    pub fn mul(f: &Fq, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zero(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let aik = a.at(i, k);
                if aik == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let v = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(f: &Fq, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let mut out = a.clone();
        for (x, &y) in out.a.iter_mut().zip(&b.a) {
            *x = f.add(*x, y);
        }
        out
    }

    pub fn sub(f: &Fq, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let mut out = a.clone();
        for (x, &y) in out.a.iter_mut().zip(&b.a) {
            *x = f.sub(*x, y);
        }
        out
    }

    pub fn scale(f: &Fq, a: &Mat, c: u64) -> Mat {
        let mut out = a.clone();
        for x in out.a.iter_mut() {
            *x = f.mul(*x, c);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// M·v for a column vector v.
    pub fn apply(&self, f: &Fq, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self, f: &Fq) -> u64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(0, |acc, i| f.add(acc, self.at(i, i)))
    }

    pub fn hstack(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.rows, b.rows);
        let mut out = Mat::zero(a.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.at(i, j));
            }
            for j in 0..b.cols {
                out.set(i, a.cols + j, b.at(i, j));
            }
        }
        out
    }

    pub fn vstack(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.cols);
        let mut out = Mat::zero(a.rows + b.rows, a.cols);
        out.a[..a.a.len()].copy_from_slice(&a.a);
        out.a[a.a.len()..].copy_from_slice(&b.a);
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(a: &Mat, b: &Mat) -> Mat {
        let mut out = Mat::zero(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.at(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.at(i, j));
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.at(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.at(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.at(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.at(i, j), f.mul(factor, self.at(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self, f: &Fq) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right kernel {v : M v = 0}, one vector per row.
    pub fn kernel(&self, f: &Fq) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Mat::zero(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(m.at(r, fc)));
            }
        }
        out
    }

    /// Solve A x = b, if consistent (free variables set to zero).
    pub fn solve(&self, f: &Fq, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let bm = Mat { rows: self.rows, cols: 1, a: b.to_vec() };
        let mut aug = Mat::hstack(self, &bm);
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, f: &Fq) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::hstack(self, &Mat::identity(n));
        let pivots = aug.rref(f);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let mut out = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j));
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self, f: &Fq) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn pow(&self, f: &Fq, mut k: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = Mat::mul(f, &acc, &b);
            }
            b = Mat::mul(f, &b, &b);
            k >>= 1;
        }
        acc
    }

    /// Evaluate a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, f: &Fq, p: &[u64]) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Mat::zero(n, n);
        for &c in p.iter().rev() {
            acc = Mat::mul(f, &acc, self);
            for i in 0..n {
                acc.set(i, i, f.add(acc.at(i, i), c));
            }
        }
        acc
    }
}

/// An incrementally built row space kept in reduced echelon form, supporting
/// membership tests and coordinates. This is the workhorse behind spinning.
pub struct RowSpace {
    f: Fq,
    cols: usize,
    /// Mutually reduced rows with pivot entry 1; parallel to `pivots`.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(f: &Fq, cols: usize) -> RowSpace {
        RowSpace { f: f.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce v against the current rows in place.
    pub fn reduce(&self, v: &mut [u64]) {
        let f = &self.f;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                v[j] = f.sub(v[j], f.mul(c, row[j]));
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.cols);
        let f = self.f.clone();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Keep existing rows reduced against the new one.
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                row[j] = f.sub(row[j], f.mul(c, w[j]));
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Rows sorted by pivot column.
    pub fn basis_matrix(&self) -> Mat {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        Mat::from_rows(order.into_iter().map(|i| self.rows[i].clone()).collect())
            .expect("rows share a length")
    }

    /// Coordinates of v in the pivot-sorted basis, if v lies in the space.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let f = &self.f;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut w = v.to_vec();
        let mut coords = vec![0u64; self.rows.len()];
        for (k, &i) in order.iter().enumerate() {
            let c = w[self.pivots[i]];
            coords[k] = c;
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                w[j] = f.sub(w[j], f.mul(c, self.rows[i][j]));
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }
}

/// Minimal polynomial of a square matrix: the lcm of the per-seed Krylov
/// relations, using every standard basis vector not yet covered.
pub fn min_poly(f: &Fq, m: &Mat) -> Poly {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return vec![1];
    }
    let mut overall: Poly = vec![1];
    let mut covered = RowSpace::new(f, n);
    for seed in 0..n {
        let mut e = vec![0u64; n];
        e[seed] = 1;
        if covered.contains(&e) {
            continue;
        }
        // Krylov rows augmented with the coefficients that produced them.
        let mut space = RowSpace::new(f, n);
        let mut tags: Vec<Poly> = Vec::new();
        let mut cur = e.clone();
        let mut power = 0usize;
        let rel = loop {
            // Reduce cur, tracking the combination of earlier Krylov vectors.
            let mut w = cur.clone();
            let mut combo = vec![0u64; power + 1];
            combo[power] = 1;
            // Manual reduction mirroring RowSpace::reduce, recording coefficients.
            for (row, tag) in space.rows.iter().zip(&tags) {
                let p = {
                    let mut pv = 0;
                    for (j, &x) in row.iter().enumerate() {
                        if x != 0 {
                            pv = j;
                            break;
                        }
                    }
                    pv
                };
                let c = w[p];
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    w[j] = f.sub(w[j], f.mul(c, row[j]));
                }
                for (k, &t) in tag.iter().enumerate() {
                    combo[k] = f.sub(combo[k], f.mul(c, t));
                }
            }
            if w.iter().all(|&x| x == 0) {
                break combo;
            }
            // Store the reduced vector with its tag.
            let p = w.iter().position(|&x| x != 0).unwrap();
            let inv = f.inv(w[p]).unwrap();
            let mut wn = w;
            let mut tn = combo;
            for x in wn.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for x in tn.iter_mut() {
                *x = f.mul(*x, inv);
            }
            // Keep earlier rows reduced against the new pivot so reduction
            // stays a single pass.
            for (row, tag) in space.rows.iter_mut().zip(tags.iter_mut()) {
                let c = row[p];
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    row[j] = f.sub(row[j], f.mul(c, wn[j]));
                }
                while tag.len() < tn.len() {
                    tag.push(0);
                }
                for (k, &t) in tn.iter().enumerate() {
                    tag[k] = f.sub(tag[k], f.mul(c, t));
                }
            }
            space.rows.push(wn);
            space.pivots.push(p);
            tags.push(tn);
            cur = m.apply(f, &cur);
            power += 1;
        };
        let monic = poly::make_monic(f, &rel);
        overall = poly::lcm(f, &overall, &monic);
        for row in &space.rows {
            covered.insert(row);
        }
    }
    overall
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fq {
        Fq::prime(5).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let f = f5();
        // Row 3 is 3x row 1 mod 5; rows 1 and 2 differ only in the last column.
        let mut m = Mat::from_rows(vec![vec![1, 2, 3], vec![2, 4, 2], vec![3, 1, 4]]).unwrap();
        let pivots = m.rref(&f);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(m.rank(&f), 2);
        // RREF is idempotent.
        let mut again = m.clone();
        again.rref(&f);
        assert_eq!(again, m);
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = f5();
        let m = Mat::from_rows(vec![vec![1, 2, 3], vec![2, 4, 2], vec![3, 1, 4]]).unwrap();
        let k = m.kernel(&f);
        assert_eq!(k.rows(), 1);
        for i in 0..k.rows() {
            let img = m.apply(&f, k.row(i));
            assert!(img.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f5();
        let m = Mat::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert!(Mat::mul(&f, &m, &inv).is_identity());
        assert!(Mat::mul(&f, &inv, &m).is_identity());
        let sing = Mat::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse(&f).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f5();
        let m = Mat::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        // Row 2 is twice row 1, so b must satisfy b_2 = 2 b_1 mod 5.
        let x = m.solve(&f, &[3, 2]);
        assert!(x.is_none());
        let y = m.solve(&f, &[3, 1]).unwrap();
        let img = m.apply(&f, &y);
        assert_eq!(img, vec![3, 1]);
    }

    #[test]
    fn min_poly_of_companion_like_matrix() {
        let f = f5();
        // Nilpotent Jordan block of size 3: minimal polynomial x^3.
        let m = Mat::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(min_poly(&f, &m), vec![0, 0, 0, 1]);
        // Identity: x - 1.
        assert_eq!(min_poly(&f, &Mat::identity(4)), vec![4, 1]);
        // Evaluating the minimal polynomial kills the matrix.
        let r = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 3, 1], vec![2, 0, 4]]).unwrap();
        let mp = min_poly(&f, &r);
        assert!(r.eval_poly(&f, &mp).is_zero());
    }

    #[test]
    fn rowspace_membership_and_coords() {
        let f = f5();
        let mut rs = RowSpace::new(&f, 3);
        assert!(rs.insert(&[1, 2, 3]));
        assert!(rs.insert(&[0, 1, 1]));
        assert!(!rs.insert(&[1, 3, 4])); // sum of the two
        assert_eq!(rs.dim(), 2);
        let coords = rs.coords(&[2, 4, 1]).unwrap();
        let basis = rs.basis_matrix();
        // Rebuild the vector from coordinates.
        let mut rebuilt = vec![0u64; 3];
        for (k, &c) in coords.iter().enumerate() {
            for j in 0..3 {
                rebuilt[j] = f.add(rebuilt[j], f.mul(c, basis.at(k, j)));
            }
        }
        assert_eq!(rebuilt, vec![2, 4, 1]);
        assert!(rs.coords(&[0, 0, 1]).is_none());
    }

    #[test]
    fn perm_matrix_action() {
        let f = f5();
        let p = crate::perm::Perm::from_images(vec![1, 2, 0]).unwrap();
        let m = Mat::from_perm(&p);
        let v = m.apply(&f, &[1, 0, 0]);
        // e_0 goes to e_{p(0)} = e_1.
        assert_eq!(v, vec![0, 1, 0]);
    }
}
