//! Exact linear algebra over the prime field F_p.
//!
//! Scalars are plain `u32` values in `[0, p)`. The modulus is carried by an
//! [`Fp`] context value rather than by each scalar, so vectors and matrices
//! are bare integer storage and every operation takes the field explicitly.

use std::fmt;
use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, Error, Result};

/// Largest supported modulus (exclusive). Keeps `a * b` inside `u32`.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::UnsupportedPrime {
                p,
                reason: format!("modulus must be below {MAX_PRIME}"),
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(self, dst: &mut [u32], c: u32, src: &[u32]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = (*d + c * s) % self.p;
        }
    }

    pub fn scale(self, v: &mut [u32], c: u32) {
        for x in v {
            *x = self.mul(*x, c);
        }
    }

    /// Number of elements of an `dim`-dimensional space, if it fits in `u64`.
    pub fn order_of_dim(self, dim: usize) -> Option<u64> {
        (self.p as u64).checked_pow(u32::try_from(dim).ok()?)
    }
}

/// A fixed-length vector of reduced scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FpVector(Vec<u32>);

impl FpVector {
    pub fn zeros(dim: usize) -> Self {
        FpVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        FpVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn add(&self, fp: Fp, other: &FpVector) -> FpVector {
        FpVector(self.0.iter().zip(&other.0).map(|(&a, &b)| fp.add(a, b)).collect())
    }

    pub fn sub(&self, fp: Fp, other: &FpVector) -> FpVector {
        FpVector(self.0.iter().zip(&other.0).map(|(&a, &b)| fp.sub(a, b)).collect())
    }

    pub fn neg(&self, fp: Fp) -> FpVector {
        FpVector(self.0.iter().map(|&a| fp.neg(a)).collect())
    }

    pub fn scaled(&self, fp: Fp, c: u32) -> FpVector {
        FpVector(self.0.iter().map(|&a| fp.mul(a, c)).collect())
    }
}

impl From<Vec<u32>> for FpVector {
    fn from(v: Vec<u32>) -> Self {
        FpVector(v)
    }
}

impl AsRef<[u32]> for FpVector {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl Deref for FpVector {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl DerefMut for FpVector {
    fn deref_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`. Entries must already be reduced.
    pub fn from_rows<R: AsRef<[u32]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(dim_mismatch("matrix row", cols, r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(FpMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, fp: Fp, v: &[u32]) -> Result<FpVector> {
        if v.len() != self.cols {
            return Err(dim_mismatch("matrix-vector product", self.cols, v.len()));
        }
        Ok(FpVector(
            self.iter_rows()
                .map(|r| {
                    let s: u64 = r.iter().zip(v).map(|(&a, &b)| (a * b) as u64).sum();
                    fp.reduce(s)
                })
                .collect(),
        ))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduction to reduced row-echelon form; returns pivot columns.
    /// Only the first `limit_cols` columns are used as pivot candidates.
    fn rref_in_place(&mut self, fp: Fp, limit_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit_cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = fp.inv(self.get(r, c));
            fp.scale(self.row_mut(r), inv);
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        fp.axpy(self.row_mut(i), fp.neg(f), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Reduced row-echelon form and rank. Zero rows are kept, at the bottom.
pub fn rref(fp: Fp, m: &FpMatrix) -> (usize, FpMatrix) {
    let mut reduced = m.clone();
    let pivots = reduced.rref_in_place(fp, m.cols);
    (pivots.len(), reduced)
}

pub fn rank(fp: Fp, m: &FpMatrix) -> usize {
    let mut work = m.clone();
    work.rref_in_place(fp, m.cols).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: FpVector,
    /// The solution set has `p^kernel_dim` elements.
    pub kernel_dim: usize,
}

/// Solves `a x = b`. Returns `None` when the system is inconsistent.
pub fn solve(fp: Fp, a: &FpMatrix, b: &[u32]) -> Result<Option<Solution>> {
    if b.len() != a.rows {
        return Err(dim_mismatch("right-hand side", a.rows, b.len()));
    }
    let cols = a.cols;
    let mut aug = FpMatrix::zeros(a.rows, cols + 1);
    for i in 0..a.rows {
        aug.row_mut(i)[..cols].copy_from_slice(a.row(i));
        aug.set(i, cols, b[i]);
    }
    let pivots = aug.rref_in_place(fp, cols);
    let rank = pivots.len();
    if (rank..a.rows).any(|i| aug.get(i, cols) != 0) {
        return Ok(None);
    }
    let mut particular = FpVector::zeros(cols);
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(i, cols);
    }
    Ok(Some(Solution { particular, kernel_dim: cols - rank }))
}

/// Right null space `{x : m x = 0}`.
pub fn kernel(fp: Fp, m: &FpMatrix) -> Subspace {
    let mut work = m.clone();
    let pivots = work.rref_in_place(fp, m.cols);
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = fp.neg(work.get(i, free));
        }
        basis.push(v);
    }
    Subspace::span(fp, m.cols, &basis).expect("kernel vectors have ambient dimension")
}

/// A subspace of F_p^n stored by its canonical reduced row-echelon basis, so
/// that equality of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: FpMatrix::zeros(0, ambient_dim), pivots: vec![] }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: FpMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<V: AsRef<[u32]>>(fp: Fp, ambient_dim: usize, vectors: &[V]) -> Result<Self> {
        let mut m = FpMatrix::from_rows(ambient_dim, vectors)?;
        let pivots = m.rref_in_place(fp, ambient_dim);
        m.rows = pivots.len();
        m.data.truncate(m.rows * ambient_dim);
        Ok(Subspace { ambient_dim, basis: m, pivots })
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinates(ambient_dim: usize, coords: &[usize]) -> Self {
        let mut cs = coords.to_vec();
        cs.sort_unstable();
        cs.dedup();
        let rows: Vec<FpVector> = cs.iter().map(|&c| FpVector::unit(ambient_dim, c)).collect();
        Subspace {
            ambient_dim,
            basis: FpMatrix::from_rows(ambient_dim, &rows).expect("unit rows"),
            pivots: cs,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce_in_place(&self, fp: Fp, v: &mut [u32]) {
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = v[c];
            if f != 0 {
                fp.axpy(v, fp.neg(f), self.basis.row(i));
            }
        }
    }

    pub fn contains(&self, fp: Fp, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(dim_mismatch("subspace membership", self.ambient_dim, v.len()));
        }
        let mut w = v.to_vec();
        self.reduce_in_place(fp, &mut w);
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, fp: Fp, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis.iter_rows().all(|r| other.contains(fp, r).unwrap_or(false))
    }

    pub fn join(&self, fp: Fp, other: &Subspace) -> Result<Subspace> {
        if other.ambient_dim != self.ambient_dim {
            return Err(dim_mismatch("subspace join", self.ambient_dim, other.ambient_dim));
        }
        let rows: Vec<&[u32]> = self.basis.iter_rows().chain(other.basis.iter_rows()).collect();
        Subspace::span(fp, self.ambient_dim, &rows)
    }

    /// Every vector of the subspace, in odometer order over basis coefficients.
    pub fn elements(&self, fp: Fp) -> Vec<FpVector> {
        let p = fp.p();
        let d = self.dim();
        let mut out = Vec::new();
        let mut coeffs = vec![0u32; d];
        let mut cur = vec![0u32; self.ambient_dim];
        loop {
            out.push(FpVector(cur.clone()));
            let mut i = 0;
            loop {
                if i == d {
                    return out;
                }
                coeffs[i] += 1;
                fp.axpy(&mut cur, 1, self.basis.row(i));
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Linear projection onto coordinates of `F_p^n / kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    ambient_dim: usize,
    kernel: Subspace,
    projection: FpMatrix,
}

impl QuotientMap {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn coord_dim(&self) -> usize {
        self.ambient_dim - self.kernel.dim()
    }

    pub fn projection(&self) -> &FpMatrix {
        &self.projection
    }

    pub fn project(&self, fp: Fp, v: &[u32]) -> Result<FpVector> {
        self.projection.apply(fp, v)
    }
}

/// The quotient coordinates are the non-pivot columns of the kernel's echelon basis.
pub fn quotient_map(fp: Fp, ambient_dim: usize, h: &Subspace) -> Result<QuotientMap> {
    if h.ambient_dim != ambient_dim {
        return Err(dim_mismatch("quotient kernel", ambient_dim, h.ambient_dim));
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !h.pivots.contains(c)).collect();
    let mut projection = FpMatrix::zeros(free.len(), ambient_dim);
    for (qi, &c) in free.iter().enumerate() {
        projection.set(qi, c, 1);
        for (i, &pc) in h.pivots.iter().enumerate() {
            projection.set(qi, pc, fp.neg(h.basis.get(i, c)));
        }
    }
    Ok(QuotientMap { ambient_dim, kernel: h.clone(), projection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    /// All vectors of F_p^dim.
    fn all_vectors(p: u32, dim: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn primes_are_validated() {
        assert!(Fp::new(7).is_ok());
        assert!(matches!(Fp::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(Fp::new(1), Err(Error::NotPrime(1))));
        assert!(Fp::new(65537).is_err());
    }

    #[test]
    fn rref_examples() {
        let (r, red) = rref(f(3), &FpMatrix::zeros(3, 3));
        assert_eq!(r, 0);
        assert_eq!(red, FpMatrix::zeros(3, 3));

        let (r, red) = rref(f(5), &FpMatrix::identity(2));
        assert_eq!(r, 2);
        assert_eq!(red, FpMatrix::identity(2));

        let m = FpMatrix::from_rows(2, &[[1, 2], [2, 4]]).unwrap();
        let (r, red) = rref(f(5), &m);
        assert_eq!(r, 1);
        assert_eq!(red.row(0), &[1, 2]);
        assert_eq!(red.row(1), &[0, 0]);
    }

    #[test]
    fn solve_examples() {
        let fp = f(3);
        let s = solve(fp, &FpMatrix::identity(2), &[1, 2]).unwrap().unwrap();
        assert_eq!(&*s.particular, &[1, 2]);
        assert_eq!(s.kernel_dim, 0);

        let s = solve(fp, &FpMatrix::zeros(2, 2), &[0, 0]).unwrap().unwrap();
        assert_eq!(s.kernel_dim, 2);

        assert!(solve(fp, &FpMatrix::zeros(2, 2), &[1, 0]).unwrap().is_none());
        assert!(matches!(solve(fp, &FpMatrix::zeros(2, 2), &[1]), Err(Error::Usage(_))));
    }

    #[test]
    fn member_examples() {
        let fp = f(3);
        let s = Subspace::span(fp, 3, &[[1, 0, 0]]).unwrap();
        assert!(s.contains(fp, &[0, 0, 0]).unwrap());
        assert!(s.contains(fp, &[2, 0, 0]).unwrap());
        assert!(!s.contains(fp, &[0, 1, 0]).unwrap());
        assert!(s.contains(fp, &[0, 0]).is_err());
    }

    #[test]
    fn quotient_map_examples() {
        let fp = f(3);
        let q = quotient_map(fp, 3, &Subspace::zero(3)).unwrap();
        assert_eq!(q.projection(), &FpMatrix::identity(3));
        let q = quotient_map(fp, 3, &Subspace::full(3)).unwrap();
        assert_eq!(q.coord_dim(), 0);

        let h = Subspace::span(fp, 2, &[[1, 1]]).unwrap();
        let q = quotient_map(fp, 2, &h).unwrap();
        assert_eq!(q.coord_dim(), 1);
        assert_eq!(q.project(fp, &[1, 1]).unwrap(), q.project(fp, &[0, 0]).unwrap());
        // Kernel property over all 9 vectors.
        for v in all_vectors(3, 2) {
            for w in all_vectors(3, 2) {
                let same = q.project(fp, &v).unwrap() == q.project(fp, &w).unwrap();
                let diff = FpVector::from(v.clone()).sub(fp, &FpVector::from(w.clone()));
                assert_eq!(same, h.contains(fp, &diff).unwrap());
            }
        }
    }

    #[test]
    fn kernel_and_elements() {
        let fp = f(5);
        let m = FpMatrix::from_rows(3, &[[1, 2, 3], [2, 4, 2]]).unwrap();
        let k = kernel(fp, &m);
        assert_eq!(k.dim(), 1);
        for v in k.elements(fp) {
            assert!(m.apply(fp, &v).unwrap().is_zero());
        }
        assert_eq!(k.elements(fp).len(), 5);
    }

    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..=4, 1usize..=4).prop_flat_map(
            |(p, r, c)| (Just(p), Just(r), Just(c), prop::collection::vec(0..p, r * c)),
        )
    }

    fn to_matrix(r: usize, c: usize, data: &[u32]) -> FpMatrix {
        let rows: Vec<&[u32]> = data.chunks(c).collect();
        assert_eq!(rows.len(), r);
        FpMatrix::from_rows(c, &rows).unwrap()
    }

    proptest! {
        #[test]
        fn rref_is_idempotent((p, r, c, data) in small_matrix()) {
            let fp = f(p);
            let m = to_matrix(r, c, &data);
            let (rk, red) = rref(fp, &m);
            let (rk2, red2) = rref(fp, &red);
            prop_assert_eq!(rk, rk2);
            prop_assert_eq!(red, red2);
        }

        #[test]
        fn solve_matches_enumeration((p, r, c, data) in small_matrix(), seed in any::<u64>()) {
            let fp = f(p);
            let a = to_matrix(r, c, &data);
            let b: Vec<u32> = (0..r).map(|i| ((seed >> (4 * i)) % p as u64) as u32).collect();
            let brute = all_vectors(p, c)
                .into_iter()
                .filter(|x| a.apply(fp, x).unwrap().as_ref() == b.as_slice())
                .count() as u64;
            match solve(fp, &a, &b).unwrap() {
                None => prop_assert_eq!(brute, 0),
                Some(s) => {
                    let ax = a.apply(fp, &s.particular).unwrap();
                    prop_assert_eq!(ax.as_ref(), b.as_slice());
                    prop_assert_eq!(brute, (p as u64).pow(s.kernel_dim as u32));
                }
            }
        }

        #[test]
        fn member_matches_span_enumeration((p, r, c, data) in small_matrix()) {
            let fp = f(p);
            let rows: Vec<&[u32]> = data.chunks(c).collect();
            let s = Subspace::span(fp, c, &rows).unwrap();
            // Brute-force span: all coefficient combinations of the generators.
            let mut span = std::collections::HashSet::new();
            for coeffs in all_vectors(p, r) {
                let mut v = vec![0u32; c];
                for (k, row) in rows.iter().enumerate() {
                    fp.axpy(&mut v, coeffs[k], row);
                }
                span.insert(v);
            }
            for v in all_vectors(p, c) {
                prop_assert_eq!(s.contains(fp, &v).unwrap(), span.contains(&v));
            }
            prop_assert_eq!(span.len() as u64, (p as u64).pow(s.dim() as u32));
        }

        #[test]
        fn quotient_fibers_are_uniform((p, _r, c, data) in small_matrix()) {
            prop_assume!(c <= 3);
            let fp = f(p);
            let rows: Vec<&[u32]> = data.chunks(c).collect();
            let h = Subspace::span(fp, c, &rows).unwrap();
            let q = quotient_map(fp, c, &h).unwrap();
            prop_assert_eq!(rank(fp, q.projection()), q.coord_dim());
            let mut fibers = std::collections::HashMap::<FpVector, u64>::new();
            for v in all_vectors(p, c) {
                *fibers.entry(q.project(fp, &v).unwrap()).or_default() += 1;
            }
            let expected = (p as u64).pow(h.dim() as u32);
            prop_assert!(fibers.values().all(|&n| n == expected));
        }
    }
}
