//! Dense linear algebra over `Z/e`.
//!
//! Every module handled by this crate is killed by some exponent `e`, so any
//! lattice that shows up in a cochain complex contains `e·Z^N`. Smith normal
//! form over the integers with `e·I` adjoined is therefore the same thing as
//! Smith normal form over the principal ideal ring `Z/e`, which keeps every
//! entry below `e` and lets us work with machine words throughout.
//!
//! Diagonal entries of a [`SmithForm`] are normalized to divisors of `e`
//! (with `0` standing for the zero ideal) and form a divisibility chain.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::arith::{gcd, inv_mod, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, found: usize },
    ModulusMismatch { left: u64, right: u64 },
    /// A denominator generator does not lie in the numerator of a subquotient.
    NotContained { column: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LinalgError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            LinalgError::NotContained { column } => {
                write!(f, "denominator generator {column} is not in the numerator")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Row-major matrix with entries in `[0, modulus)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZnMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl fmt::Debug for ZnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZnMatrix {}x{} mod {}", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl ZnMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ZnMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from signed rows, reducing every entry.
    pub fn from_rows(modulus: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set_signed(i, j, v as i128);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(modulus: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        let e = self.modulus;
        self.data[i * self.cols + j] = v % e;
    }

    pub fn set_signed(&mut self, i: usize, j: usize, v: i128) {
        let e = self.modulus as i128;
        self.data[i * self.cols + j] = v.rem_euclid(e) as u64;
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let e = self.modulus;
        let slot = &mut self.data[i * self.cols + j];
        *slot = add_mod(*slot, v % e, e);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        assert_eq!(self.modulus, other.modulus, "moduli");
        let e = self.modulus;
        let mut out = ZnMatrix::zeros(self.rows, other.cols, e);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_at(i, j, mul_mod(a, b, e));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let e = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b % e, e), e))
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.rows, other.rows, "row counts");
        assert_eq!(self.modulus, other.modulus, "moduli");
        let mut out = ZnMatrix::zeros(self.rows, self.cols + other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// The same integer representatives read modulo `modulus`.
    pub fn with_modulus(&self, modulus: u64) -> ZnMatrix {
        assert!(modulus >= 1, "modulus must be positive");
        ZnMatrix {
            rows: self.rows,
            cols: self.cols,
            modulus,
            data: self.data.iter().map(|&x| x % modulus).collect(),
        }
    }

    pub fn transpose(&self) -> ZnMatrix {
        let mut out = ZnMatrix::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Keeps the first `n` rows.
    pub fn top_rows(&self, n: usize) -> ZnMatrix {
        let n = n.min(self.rows);
        ZnMatrix {
            rows: n,
            cols: self.cols,
            modulus: self.modulus,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`, touching only columns `from..`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: u64, from: usize) {
        let e = self.modulus;
        if k % e == 0 {
            return;
        }
        let cols = self.cols;
        for j in from..cols {
            let s = self.data[src * cols + j];
            if s != 0 {
                let d = &mut self.data[dst * cols + j];
                *d = add_mod(*d, mul_mod(s, k, e), e);
            }
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: u64) {
        let e = self.modulus;
        if k % e == 0 {
            return;
        }
        let cols = self.cols;
        for i in 0..self.rows {
            let s = self.data[i * cols + src];
            if s != 0 {
                let d = &mut self.data[i * cols + dst];
                *d = add_mod(*d, mul_mod(s, k, e), e);
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: u64) {
        let e = self.modulus;
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = mul_mod(*x, u, e);
        }
    }

    fn scale_col(&mut self, j: usize, u: u64) {
        let e = self.modulus;
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = mul_mod(*x, u, e);
        }
    }

    /// `(row a, row b) <- M (row a, row b)` for a 2x2 matrix `M`, on columns `from..`.
    fn combine_rows(&mut self, a: usize, b: usize, m: [[u64; 2]; 2], from: usize) {
        let e = self.modulus;
        let cols = self.cols;
        for j in from..cols {
            let x = self.data[a * cols + j];
            let y = self.data[b * cols + j];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[a * cols + j] = add_mod(mul_mod(m[0][0], x, e), mul_mod(m[0][1], y, e), e);
            self.data[b * cols + j] = add_mod(mul_mod(m[1][0], x, e), mul_mod(m[1][1], y, e), e);
        }
    }

    /// `(col a, col b) <- (col a, col b) M`.
    fn combine_cols(&mut self, a: usize, b: usize, m: [[u64; 2]; 2]) {
        let e = self.modulus;
        let cols = self.cols;
        for i in 0..self.rows {
            let x = self.data[i * cols + a];
            let y = self.data[i * cols + b];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[i * cols + a] = add_mod(mul_mod(x, m[0][0], e), mul_mod(y, m[1][0], e), e);
            self.data[i * cols + b] = add_mod(mul_mod(x, m[0][1], e), mul_mod(y, m[1][1], e), e);
        }
    }
}

#[inline]
fn add_mod(a: u64, b: u64, e: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= e {
        s.wrapping_sub(e)
    } else {
        s
    }
}

#[inline]
fn neg_mod(a: u64, e: u64) -> u64 {
    if a == 0 {
        0
    } else {
        e - a
    }
}

/// Canonical generator of the ideal `(a)` in `Z/e`: `gcd(a, e)`, or 0 for the zero ideal.
pub fn ideal_generator(a: u64, e: u64) -> u64 {
    if a % e == 0 {
        0
    } else {
        gcd(a, e)
    }
}

/// Order of the cyclic group `(Z/e)/(s)`.
pub fn quotient_order(s: u64, e: u64) -> u64 {
    if s % e == 0 {
        e
    } else {
        gcd(s, e)
    }
}

/// A unit `u` of `Z/e` with `a·u ≡ gcd(a, e) (mod e)`.
fn normalizing_unit(a: u64, e: u64) -> u64 {
    let g = gcd(a, e);
    let (a1, e1) = (a / g, e / g);
    let base = inv_mod(a1, e1).expect("coprime after dividing out the gcd");
    let mut cand = base % e;
    loop {
        if gcd(cand, e) == 1 {
            return cand;
        }
        cand = (cand + e1) % e;
    }
}

/// Bezout data for the 2x2 unimodular step taking `(a, b)` to `(gcd, 0)`.
fn bezout(a: u64, b: u64, e: u64) -> (u64, u64, u64, u64, u64) {
    let ext = (a as i128).extended_gcd(&(b as i128));
    let g = ext.gcd as u64;
    let x = ext.x.rem_euclid(e as i128) as u64;
    let y = ext.y.rem_euclid(e as i128) as u64;
    (g, x, y, (a / g) % e, (b / g) % e)
}

/// Which transformation matrices to accumulate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Transforms {
    pub p: bool,
    pub p_inv: bool,
    pub q: bool,
    pub q_inv: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { p: false, p_inv: false, q: false, q_inv: false };
    pub const ALL: Transforms = Transforms { p: true, p_inv: true, q: true, q_inv: true };
}

/// Smith normal form `P·A·Q = S` over `Z/e`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    modulus: u64,
    diagonal: Vec<u64>,
    p: Option<ZnMatrix>,
    p_inv: Option<ZnMatrix>,
    q: Option<ZnMatrix>,
    q_inv: Option<ZnMatrix>,
}

struct SnfCalc {
    w: ZnMatrix,
    p: Option<ZnMatrix>,
    p_inv: Option<ZnMatrix>,
    q: Option<ZnMatrix>,
    q_inv: Option<ZnMatrix>,
}

impl SnfCalc {
    fn e(&self) -> u64 {
        self.w.modulus
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap_rows(a, b);
        if let Some(p) = &mut self.p {
            p.swap_rows(a, b);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap_cols(a, b);
        if let Some(q) = &mut self.q {
            q.swap_cols(a, b);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.swap_rows(a, b);
        }
    }

    /// `row[dst] += k row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: u64) {
        let e = self.e();
        self.w.add_row_multiple(dst, src, k, 0);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(dst, src, k, 0);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.add_col_multiple(src, dst, neg_mod(k % e, e));
        }
    }

    /// `col[dst] += k col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: u64) {
        let e = self.e();
        self.w.add_col_multiple(dst, src, k);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(dst, src, k);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.add_row_multiple(src, dst, neg_mod(k % e, e), 0);
        }
    }

    fn normalize_pivot(&mut self, t: usize) {
        let e = self.e();
        let a = self.w.get(t, t);
        if a == 0 || a == gcd(a, e) {
            return;
        }
        let u = normalizing_unit(a, e);
        let u_inv = inv_mod(u, e).expect("unit");
        self.w.scale_row(t, u);
        if let Some(p) = &mut self.p {
            p.scale_row(t, u);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.scale_col(t, u_inv);
        }
    }

    /// Euclid step on rows `t` and `i` in column `t`.
    fn euclid_rows(&mut self, t: usize, i: usize) {
        let e = self.e();
        let (_, x, y, a_g, b_g) = bezout(self.w.get(t, t), self.w.get(i, t), e);
        let m = [[x, y], [neg_mod(b_g, e), a_g]];
        let m_inv = [[a_g, neg_mod(y, e)], [b_g, x]];
        self.w.combine_rows(t, i, m, 0);
        if let Some(p) = &mut self.p {
            p.combine_rows(t, i, m, 0);
        }
        if let Some(pi) = &mut self.p_inv {
            pi.combine_cols(t, i, m_inv);
        }
    }

    /// Euclid step on columns `t` and `j` in row `t`.
    fn euclid_cols(&mut self, t: usize, j: usize) {
        let e = self.e();
        let (_, x, y, a_g, b_g) = bezout(self.w.get(t, t), self.w.get(t, j), e);
        let m = [[x, neg_mod(b_g, e)], [y, a_g]];
        let m_inv = [[a_g, b_g], [neg_mod(y, e), x]];
        self.w.combine_cols(t, j, m);
        if let Some(q) = &mut self.q {
            q.combine_cols(t, j, m);
        }
        if let Some(qi) = &mut self.q_inv {
            qi.combine_rows(t, j, m_inv, 0);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let e = self.e();
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.w.rows {
            for j in t..self.w.cols {
                let a = self.w.get(i, j);
                if a == 0 {
                    continue;
                }
                let g = gcd(a, e);
                if best.is_none_or(|(bg, _, _)| g < bg) {
                    best = Some((g, i, j));
                    if g == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let e = self.e();
        let (rows, cols) = (self.w.rows, self.w.cols);
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.normalize_pivot(t);
                for i in t + 1..rows {
                    let b = self.w.get(i, t);
                    if b == 0 {
                        continue;
                    }
                    let piv = self.w.get(t, t);
                    if b % piv == 0 {
                        self.add_row(i, t, neg_mod(b / piv, e));
                    } else {
                        self.euclid_rows(t, i);
                        self.normalize_pivot(t);
                    }
                }
                let mut dirty = false;
                for j in t + 1..cols {
                    let b = self.w.get(t, j);
                    if b == 0 {
                        continue;
                    }
                    let piv = self.w.get(t, t);
                    if b % piv == 0 {
                        self.add_col(j, t, neg_mod(b / piv, e));
                    } else {
                        self.euclid_cols(t, j);
                        self.normalize_pivot(t);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                let piv = self.w.get(t, t);
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| self.w.get(i, j) % piv != 0));
                match bad {
                    Some(i) => self.add_row(t, i, 1),
                    None => break,
                }
            }
        }
    }
}

impl SmithForm {
    pub fn compute(a: &ZnMatrix, want: Transforms) -> SmithForm {
        let e = a.modulus;
        let (rows, cols) = (a.rows, a.cols);
        let mut calc = SnfCalc {
            w: a.clone(),
            p: want.p.then(|| ZnMatrix::identity(rows, e)),
            p_inv: want.p_inv.then(|| ZnMatrix::identity(rows, e)),
            q: want.q.then(|| ZnMatrix::identity(cols, e)),
            q_inv: want.q_inv.then(|| ZnMatrix::identity(cols, e)),
        };
        calc.run();
        let diagonal = (0..rows.min(cols)).map(|i| calc.w.get(i, i)).collect();
        SmithForm {
            rows,
            cols,
            modulus: e,
            diagonal,
            p: calc.p,
            p_inv: calc.p_inv,
            q: calc.q,
            q_inv: calc.q_inv,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Diagonal entries, each a divisor of the modulus or 0.
    pub fn diagonal(&self) -> &[u64] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|&&d| d != 0).count()
    }

    pub fn p(&self) -> Option<&ZnMatrix> {
        self.p.as_ref()
    }

    pub fn p_inv(&self) -> Option<&ZnMatrix> {
        self.p_inv.as_ref()
    }

    pub fn q(&self) -> Option<&ZnMatrix> {
        self.q.as_ref()
    }

    pub fn q_inv(&self) -> Option<&ZnMatrix> {
        self.q_inv.as_ref()
    }

    /// Orders of the cyclic summands of the cokernel `(Z/e)^rows / im(A)`,
    /// one per row, in pivot order.
    pub fn cokernel_orders(&self) -> Vec<u64> {
        let e = self.modulus;
        (0..self.rows)
            .map(|i| self.diagonal.get(i).map_or(e, |&s| quotient_order(s, e)))
            .collect()
    }

    /// Generators of `ker(A)`, one per column, skipping zero vectors.
    /// Requires `Q`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let e = self.modulus;
        let q = self.q.as_ref().expect("kernel needs Q");
        let mut out = Vec::new();
        for j in 0..self.cols {
            let s = self.diagonal.get(j).copied().unwrap_or(0);
            let mult = e.checked_div(s).map_or(1, |q| q % e);
            if mult == 0 {
                continue;
            }
            let v: Vec<u64> = q.column(j).into_iter().map(|x| mul_mod(x, mult, e)).collect();
            if v.iter().any(|&x| x != 0) {
                out.push(v);
            }
        }
        out
    }

    /// Some `x` with `A x = b`, or `None`. Requires `P` and `Q`.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let e = self.modulus;
        let p = self.p.as_ref().expect("solve needs P");
        let q = self.q.as_ref().expect("solve needs Q");
        let c = p.mul_vec(b);
        let mut u = vec![0u64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            let s = self.diagonal.get(i).copied().unwrap_or(0);
            if s == 0 {
                if ci != 0 {
                    return None;
                }
                continue;
            }
            if ci % s != 0 {
                return None;
            }
            u[i] = (ci / s) % e;
        }
        Some(q.mul_vec(&u))
    }
}

/// Row echelon form by unimodular row operations, with zero rows dropped.
/// The row span, and hence the kernel, is unchanged; at most `cols` rows remain.
pub fn row_echelon(a: &ZnMatrix) -> ZnMatrix {
    let e = a.modulus;
    let mut w = a.clone();
    let mut r = 0;
    for c in 0..w.cols {
        if r == w.rows {
            break;
        }
        let Some(i0) = (r..w.rows).find(|&i| w.get(i, c) != 0) else { continue };
        w.swap_rows(r, i0);
        normalize_row(&mut w, r, c);
        for i in r + 1..w.rows {
            let b = w.get(i, c);
            if b == 0 {
                continue;
            }
            let piv = w.get(r, c);
            if b % piv == 0 {
                w.add_row_multiple(i, r, neg_mod(b / piv, e), c);
            } else {
                let (_, x, y, a_g, b_g) = bezout(piv, b, e);
                w.combine_rows(r, i, [[x, y], [neg_mod(b_g, e), a_g]], c);
                normalize_row(&mut w, r, c);
            }
        }
        r += 1;
    }
    w.top_rows(r)
}

fn normalize_row(w: &mut ZnMatrix, r: usize, c: usize) {
    let e = w.modulus;
    let a = w.get(r, c);
    if a != gcd(a, e) {
        let u = normalizing_unit(a, e);
        w.scale_row(r, u);
    }
}

/// Generators of `ker(A)` over `Z/e`.
pub fn kernel(a: &ZnMatrix) -> Vec<Vec<u64>> {
    let reduced = row_echelon(a);
    SmithForm::compute(&reduced, Transforms { q: true, ..Transforms::NONE }).kernel()
}

/// Generators of `{x : f x ∈ span(relations)}`, the preimage of a submodule.
pub fn preimage(f: &ZnMatrix, relations: &ZnMatrix) -> Vec<Vec<u64>> {
    let n = f.cols;
    let joined = if relations.cols == 0 { f.clone() } else { f.hconcat(relations) };
    kernel(&joined)
        .into_iter()
        .map(|mut v| {
            v.truncate(n);
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// The finite abelian group `span(numerator) / span(denominator)` inside `(Z/e)^k`,
/// decomposed into invariant factors, with a coordinate map for elements of the numerator.
#[derive(Debug, Clone)]
pub struct Subquotient {
    modulus: u64,
    ambient: usize,
    num_gens: usize,
    solver: SmithForm,
    coordinate_rows: Vec<Vec<u64>>,
    orders: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl Subquotient {
    /// `numerator` and `denominator` are matrices whose columns span the two
    /// submodules of `(Z/e)^k`; the denominator must lie in the numerator.
    pub fn new(numerator: &ZnMatrix, denominator: &ZnMatrix) -> Result<Subquotient, LinalgError> {
        let e = numerator.modulus;
        if denominator.modulus != e {
            return Err(LinalgError::ModulusMismatch { left: e, right: denominator.modulus });
        }
        if denominator.rows != numerator.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: numerator.rows,
                found: denominator.rows,
            });
        }
        let k = numerator.rows;
        let p = numerator.cols;
        let joined = numerator.hconcat(denominator);
        let solver = SmithForm::compute(&joined, Transforms { p: true, q: true, ..Transforms::NONE });

        if denominator.cols > 0 {
            let num_only = SmithForm::compute(numerator, Transforms { p: true, q: true, ..Transforms::NONE });
            for j in 0..denominator.cols {
                if num_only.solve(&denominator.column(j)).is_none() {
                    return Err(LinalgError::NotContained { column: j });
                }
            }
        }

        // Relations among the numerator generators: y with Z y ∈ span(B).
        let relations: Vec<Vec<u64>> = solver
            .kernel()
            .into_iter()
            .map(|mut v| {
                v.truncate(p);
                v
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let rel = ZnMatrix::from_columns(e, p, &relations);
        let snf = SmithForm::compute(&rel, Transforms { p: true, p_inv: true, ..Transforms::NONE });
        let pm = snf.p().expect("requested");
        let pm_inv = snf.p_inv().expect("requested");

        let mut orders = Vec::new();
        let mut coordinate_rows = Vec::new();
        let mut generators = Vec::new();
        for (j, order) in snf.cokernel_orders().into_iter().enumerate() {
            if order <= 1 {
                continue;
            }
            orders.push(order);
            coordinate_rows.push(pm.row(j).to_vec());
            generators.push(numerator.mul_vec(&pm_inv.column(j)));
        }
        Ok(Subquotient { modulus: e, ambient: k, num_gens: p, solver, coordinate_rows, orders, generators })
    }

    /// `(Z/e)^k / span(relations)` itself.
    pub fn cokernel(k: usize, relations: &ZnMatrix) -> Result<Subquotient, LinalgError> {
        Subquotient::new(&ZnMatrix::identity(k, relations.modulus), relations)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Invariant factors `d_1 | d_2 | ...`, all greater than one.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Ambient representatives of the generators, one per invariant factor.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.orders.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    /// Coordinates of the class of `x`, or `None` when `x` is outside the numerator.
    pub fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(x.len(), self.ambient, "ambient dimension");
        let e = self.modulus;
        let reduced: Vec<u64> = x.iter().map(|&v| v % e).collect();
        let sol = self.solver.solve(&reduced)?;
        let y = &sol[..self.num_gens];
        Some(
            self.coordinate_rows
                .iter()
                .zip(&self.orders)
                .map(|(row, &d)| {
                    let dot = row.iter().zip(y).fold(0u64, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, e), e));
                    dot % d
                })
                .collect(),
        )
    }

    /// Ambient representative of `Σ c_j g_j`.
    pub fn element(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.orders.len(), "coordinate count");
        let e = self.modulus;
        let mut out = vec![0u64; self.ambient];
        for (c, g) in coords.iter().zip(&self.generators) {
            if c % e == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(g) {
                *o = add_mod(*o, mul_mod(x, c % e, e), e);
            }
        }
        out
    }
}

/// Kernel of a homomorphism `⊕ Z/s_j → ⊕ Z/t_i` given by an integer matrix
/// (rows indexed by the target). All orders must divide `modulus`.
pub fn hom_kernel(
    modulus: u64,
    source: &[u64],
    target: &[u64],
    matrix: &[Vec<u64>],
) -> Result<Subquotient, LinalgError> {
    if matrix.len() != target.len() {
        return Err(LinalgError::DimensionMismatch { expected: target.len(), found: matrix.len() });
    }
    let mut f = ZnMatrix::zeros(target.len(), source.len(), modulus);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != source.len() {
            return Err(LinalgError::DimensionMismatch { expected: source.len(), found: row.len() });
        }
        for (j, &v) in row.iter().enumerate() {
            f.set(i, j, v);
        }
    }
    let target_rel = diagonal_relations(modulus, target);
    let source_rel = diagonal_relations(modulus, source);
    let num = preimage(&f, &target_rel);
    let mut num_cols = num;
    num_cols.extend(source_rel.columns());
    let numerator = ZnMatrix::from_columns(modulus, source.len(), &num_cols);
    Subquotient::new(&numerator, &source_rel)
}

/// Columns `d_i e_i` for every `d_i` that is not already zero modulo `e`.
pub fn diagonal_relations(modulus: u64, orders: &[u64]) -> ZnMatrix {
    let cols: Vec<Vec<u64>> = orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % modulus != 0)
        .map(|(i, &d)| {
            let mut v = vec![0u64; orders.len()];
            v[i] = d % modulus;
            v
        })
        .collect();
    ZnMatrix::from_columns(modulus, orders.len(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: u64, rows: &[&[i64]]) -> ZnMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        ZnMatrix::from_rows(e, &rows)
    }

    #[test]
    fn smith_form_reconstructs_with_transforms() {
        let a = m(12, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = SmithForm::compute(&a, Transforms::ALL);
        let pa_q = snf.p().unwrap().mul(&a).mul(snf.q().unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { snf.diagonal()[i] } else { 0 };
                assert_eq!(pa_q.get(i, j), expected, "entry ({i},{j})");
            }
        }
        assert!(snf.p().unwrap().mul(snf.p_inv().unwrap()) == ZnMatrix::identity(3, 12));
        assert!(snf.q().unwrap().mul(snf.q_inv().unwrap()) == ZnMatrix::identity(3, 12));
        // integer SNF of this matrix is diag(2, 6, 12); mod 12 the last is 0
        assert_eq!(snf.diagonal(), &[2, 6, 0]);
    }

    #[test]
    fn diagonal_normalizes_to_chain() {
        // diag(2, 3) over Z/6 is Z/6 ⊕ 0 as a cokernel: orders [1, 6]
        let a = m(6, &[&[2, 0], &[0, 3]]);
        let snf = SmithForm::compute(&a, Transforms::NONE);
        assert_eq!(snf.diagonal(), &[1, 0]);
        assert_eq!(snf.cokernel_orders(), [1, 6]);
    }

    #[test]
    fn kernel_of_multiplication_by_two_mod_nine() {
        let a = m(9, &[&[2]]);
        assert!(kernel(&a).is_empty());
        let b = m(9, &[&[3]]);
        let k = kernel(&b);
        assert_eq!(k.len(), 1);
        assert_eq!((k[0][0] * 3) % 9, 0);
        assert_ne!(k[0][0], 0);
    }

    #[test]
    fn solve_roundtrip() {
        let a = m(10, &[&[2, 4], &[6, 5]]);
        let snf = SmithForm::compute(&a, Transforms { p: true, q: true, ..Transforms::NONE });
        let x = [3u64, 7];
        let b = a.mul_vec(&x);
        let sol = snf.solve(&b).expect("consistent");
        assert_eq!(a.mul_vec(&sol), b);
        // 2x + 4y = 1 has no solution mod 10
        let a1 = m(10, &[&[2, 4]]);
        let snf1 = SmithForm::compute(&a1, Transforms { p: true, q: true, ..Transforms::NONE });
        assert!(snf1.solve(&[1]).is_none());
    }

    #[test]
    fn cokernel_of_relations() {
        // Z/4 ⊕ Z/6 → invariant factors [2, 12]
        let rel = diagonal_relations(12, &[4, 6]);
        let sq = Subquotient::cokernel(2, &rel).unwrap();
        assert_eq!(sq.orders(), &[2, 12]);
        for (j, g) in sq.generators().iter().enumerate() {
            let mut c = vec![0; 2];
            c[j] = 1;
            assert_eq!(sq.coordinates(g).unwrap(), c);
        }
    }

    #[test]
    fn subquotient_rejects_denominator_outside() {
        let num = ZnMatrix::from_columns(4, 2, &[vec![2, 0]]);
        let den = ZnMatrix::from_columns(4, 2, &[vec![1, 0]]);
        assert_eq!(Subquotient::new(&num, &den).unwrap_err(), LinalgError::NotContained { column: 0 });
    }

    #[test]
    fn hom_kernel_of_reduction() {
        // Z/9 → Z/3, x ↦ x: kernel is 3Z/9 ≅ Z/3
        let k = hom_kernel(9, &[9], &[3], &[vec![1]]).unwrap();
        assert_eq!(k.orders(), &[3]);
        // Z/3 → Z/9, x ↦ 3x: injective
        let k = hom_kernel(9, &[3], &[9], &[vec![3]]).unwrap();
        assert!(k.is_trivial());
    }

    #[test]
    fn echelon_keeps_kernel() {
        let a = m(8, &[&[2, 4, 6], &[4, 0, 4], &[6, 4, 2], &[1, 1, 1]]);
        let e = row_echelon(&a);
        assert!(e.rows() <= 3);
        for v in kernel(&a) {
            assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
            assert!(e.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }
}
