//! Exact linear algebra over the prime fields GF(p).
//!
//! Everything here is integer arithmetic modulo a prime: no floating point,
//! no tolerance. Matrices are dense row-major `u64` grids; Gaussian
//! elimination always picks the first usable pivot, so reduced forms, ranks,
//! bases, and basis extensions are deterministic.

use std::fmt;

use serde::Serialize;

use crate::finset::FinSet;
use crate::label::Label;

/// Arithmetic context for one prime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Gf {
    p: u64,
}

impl Gf {
    /// The modulus must be prime; inverses are computed by Fermat's little
    /// theorem, which silently fails for composite moduli.
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        assert!(is_prime(p), "modulus {p} is not prime");
        Gf { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GfMatrix {
    field: Gf,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl GfMatrix {
    pub fn new(field: Gf, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        let p = field.modulus();
        assert!(data.iter().all(|&x| x < p), "entry out of field range");
        GfMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zero(field: Gf, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Gf, n: usize) -> Self {
        let mut m = GfMatrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_columns(field: Gf, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = GfMatrix::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column has wrong height");
            for i in 0..rows {
                m[(i, j)] = col[i] % field.modulus();
            }
        }
        m
    }

    pub fn field(&self) -> Gf {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, rhs: &GfMatrix) -> GfMatrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = GfMatrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = self.field.add(out[(i, j)], self.field.mul(a, rhs[(k, j)]));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector has wrong length");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = self.field.add(acc, self.field.mul(self[(i, j)], v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().1
    }

    /// In-place Gauss-Jordan to reduced row echelon form; returns the pivot
    /// columns and the rank.
    fn row_reduce(mut self) -> (GfMatrix, usize, Vec<usize>) {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self[(r, c)]);
            for j in 0..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let factor = self[(i, c)];
                    for j in 0..self.cols {
                        let sub = f.mul(factor, self[(r, j)]);
                        self[(i, j)] = f.sub(self[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (self, r, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Canonical basis of the column space: the nonzero rows of the reduced
    /// row echelon form of the transpose, as column vectors.
    pub fn column_space_basis(&self) -> Vec<Vec<u64>> {
        let (reduced, rank, _) = self.transpose().row_reduce();
        (0..rank)
            .map(|i| (0..reduced.cols).map(|j| reduced[(i, j)]).collect())
            .collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = GfMatrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Solves `self * x = b`, returning the first solution found (free
    /// variables set to zero) or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows, "rhs has wrong length");
        let f = self.field;
        let mut aug = GfMatrix::zero(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i] % f.modulus();
        }
        let (red, _, pivots) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // A pivot in the augmented column means no solution.
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.cols)];
        }
        Some(x)
    }

    /// Canonical basis of the kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let (red, _, pivots) = self.clone().row_reduce();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(red[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for GfMatrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GfMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Extends `start` (assumed independent) to a spanning set of the column
/// space of `pool`, greedily scanning `pool`'s columns in order. Returns the
/// appended columns only.
pub fn extend_basis(field: Gf, dim: usize, start: &[Vec<u64>], pool: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut current: Vec<Vec<u64>> = start.to_vec();
    let mut rank = GfMatrix::from_columns(field, dim, &current).rank();
    assert_eq!(rank, current.len(), "starting vectors are dependent");
    let mut appended = Vec::new();
    for cand in pool {
        current.push(cand.clone());
        let r = GfMatrix::from_columns(field, dim, &current).rank();
        if r > rank {
            rank = r;
            appended.push(cand.clone());
        } else {
            current.pop();
        }
    }
    appended
}

/// All vectors of GF(p)^n in lexicographic coordinate order.
pub fn all_vectors(field: Gf, dim: usize) -> Vec<Vec<u64>> {
    let p = field.modulus();
    let total = (p as u128).pow(dim as u32);
    assert!(total <= 1 << 20, "vector enumeration too large");
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![0u64; dim];
    loop {
        out.push(v.clone());
        let mut k = dim;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            v[k] += 1;
            if v[k] < p {
                break;
            }
            v[k] = 0;
        }
    }
}

/// All subspaces of GF(p)^n, each given by its canonical (reduced
/// row-echelon) basis, ordered by dimension then pivot pattern.
pub fn all_subspaces(field: Gf, dim: usize) -> Vec<Vec<Vec<u64>>> {
    let p = field.modulus();
    let mut out = vec![vec![]]; // the zero subspace
    for k in 1..=dim {
        for pivots in combinations(dim, k) {
            // Free entries: row i may be nonzero at columns past its pivot
            // that are not pivots themselves.
            let mut free_slots = Vec::new();
            for (i, &pi) in pivots.iter().enumerate() {
                for c in pi + 1..dim {
                    if !pivots.contains(&c) {
                        free_slots.push((i, c));
                    }
                }
            }
            let mut assign = vec![0u64; free_slots.len()];
            loop {
                let mut basis = vec![vec![0u64; dim]; k];
                for (i, &pi) in pivots.iter().enumerate() {
                    basis[i][pi] = 1;
                }
                for (slot, &(i, c)) in free_slots.iter().enumerate() {
                    basis[i][c] = assign[slot];
                }
                out.push(basis);
                let mut t = free_slots.len();
                let done = loop {
                    if t == 0 {
                        break true;
                    }
                    t -= 1;
                    assign[t] += 1;
                    if assign[t] < p {
                        break false;
                    }
                    assign[t] = 0;
                };
                if done {
                    break;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Canonical label for a coordinate vector.
pub fn vector_label(v: &[u64]) -> Label {
    Label::Tuple(v.iter().map(|x| Label::Atom(x.to_string())).collect())
}

/// Reads a coordinate vector back out of its label.
pub fn label_to_vector(l: &Label) -> Option<Vec<u64>> {
    let Label::Tuple(parts) = l else { return None };
    parts
        .iter()
        .map(|p| match p {
            Label::Atom(s) => s.parse().ok(),
            _ => None,
        })
        .collect()
}

/// The carrier of GF(p)^n as a finite set of vector labels.
pub fn vector_carrier(field: Gf, dim: usize) -> FinSet {
    FinSet::new(all_vectors(field, dim).iter().map(|v| vector_label(v)))
        .expect("vector labels are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Gf {
        Gf::new(2)
    }

    #[test]
    fn field_arithmetic_mod_5() {
        let f = Gf::new(5);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(3), 2);
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    #[should_panic(expected = "not prime")]
    fn composite_modulus_rejected() {
        Gf::new(6);
    }

    #[test]
    fn rank_of_projection() {
        let m = GfMatrix::new(f2(), 2, 3, vec![1, 0, 0, 0, 1, 0]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_oracle_small_matrices() {
        // Oracle: rank = size of the largest set of columns that is
        // independent, decided by checking all column subsets for a
        // nontrivial kernel by brute force over all coefficient vectors.
        let f = f2();
        for data_bits in 0u32..512 {
            let data: Vec<u64> = (0..9).map(|i| ((data_bits >> i) & 1) as u64).collect();
            let m = GfMatrix::new(f, 3, 3, data);
            let mut best = 0;
            for cols in 0u8..8 {
                let chosen: Vec<usize> = (0..3).filter(|&j| cols & (1 << j) != 0).collect();
                if chosen.is_empty() {
                    continue;
                }
                let mut independent = true;
                'coef: for coef_bits in 1u8..(1 << chosen.len()) {
                    let mut sum = vec![0u64; 3];
                    for (t, &j) in chosen.iter().enumerate() {
                        if coef_bits & (1 << t) != 0 {
                            for i in 0..3 {
                                sum[i] = f.add(sum[i], m[(i, j)]);
                            }
                        }
                    }
                    if sum.iter().all(|&x| x == 0) {
                        independent = false;
                        break 'coef;
                    }
                }
                if independent {
                    best = best.max(chosen.len());
                }
            }
            assert_eq!(m.rank(), best, "rank mismatch for {m}");
        }
    }

    #[test]
    fn solve_and_verify() {
        let m = GfMatrix::new(Gf::new(3), 2, 2, vec![1, 2, 2, 2]);
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 0]);
        let singular = GfMatrix::new(f2(), 2, 2, vec![1, 1, 1, 1]);
        assert!(singular.solve(&[1, 0]).is_none());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = GfMatrix::new(f2(), 2, 3, vec![1, 1, 0, 0, 1, 1]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn gf2_dim2_has_five_subspaces() {
        assert_eq!(all_subspaces(f2(), 2).len(), 5);
    }

    #[test]
    fn gf2_dim3_subspace_count() {
        // Gaussian binomials over GF(2): 1 + 7 + 7 + 1.
        assert_eq!(all_subspaces(f2(), 3).len(), 16);
    }

    #[test]
    fn gf3_dim2_subspace_count() {
        // 1 + 4 + 1 over GF(3).
        assert_eq!(all_subspaces(Gf::new(3), 2).len(), 6);
    }

    #[test]
    fn extend_basis_reaches_full_rank() {
        let f = f2();
        let start = vec![vec![1, 1, 0]];
        let pool = all_vectors(f, 3);
        let ext = extend_basis(f, 3, &start, &pool);
        assert_eq!(ext.len(), 2);
        let mut all = start;
        all.extend(ext);
        assert_eq!(GfMatrix::from_columns(f, 3, &all).rank(), 3);
    }

    #[test]
    fn vector_labels_round_trip() {
        for v in all_vectors(f2(), 3) {
            assert_eq!(label_to_vector(&vector_label(&v)).unwrap(), v);
        }
        assert_eq!(vector_carrier(f2(), 2).len(), 4);
    }
}
