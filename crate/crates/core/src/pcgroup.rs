//! Exponent-p groups of class at most 3 given by power-commutator presentations.
//!
//! Generators `g_0, ..., g_{n-1}` are ordered by weight (1, 2, 3) and every
//! generator has order p. The presentation is the table of commutators
//! `[g_j, g_i]` for `j > i`, each a normal-form exponent vector supported on
//! generators of weight at least `weight(i) + weight(j)`. Products are computed
//! by collection: a normal form `g_0^{e_0} ... g_{n-1}^{e_{n-1}}` is multiplied
//! by one generator power at a time, conjugating the displaced tail with
//! precomputed tables.

use std::collections::{BTreeSet, HashSet};

use crate::error::{dim_mismatch, Error, Result};
use crate::gf::{Fp, FpVector, Subspace};

/// Upper bound on the number of generators; sizes the collector's stack buffers.
pub const MAX_GENS: usize = 64;

/// A normal-form group element: the exponent vector of `g_0^{e_0} ... g_{n-1}^{e_{n-1}}`.
pub type Element = FpVector;

#[derive(Clone, Debug)]
pub struct PcGroup {
    fp: Fp,
    weights: Vec<u8>,
    /// `[g_j, g_i]` for `j > i`, indexed by `tri(j, i)`.
    comm: Vec<FpVector>,
    /// Sparse normal forms of `(g_j^(g_k^e))^t`, for `k < j`, `1 <= e, t < p`.
    conj: Vec<Vec<(u16, u32)>>,
}

#[inline]
fn tri(j: usize, i: usize) -> usize {
    debug_assert!(j > i);
    j * (j - 1) / 2 + i
}

impl PcGroup {
    /// Builds a presentation from its commutator table. `comm_table[tri]` holds
    /// `[g_j, g_i]` for the pairs `(j, i)`, `j > i`, in the order
    /// `(1,0), (2,0), (2,1), (3,0), ...`.
    ///
    /// The table is validated structurally; it is not checked for consistency
    /// (see [`PcGroup::consistency_check`]).
    pub fn new(p: u32, weights: Vec<u8>, comm_table: Vec<Vec<u32>>) -> Result<Self> {
        let fp = Fp::new(p)?;
        let n = weights.len();
        if n > MAX_GENS {
            return Err(Error::Usage(format!("number of generators must be at most {MAX_GENS}, got {n}")));
        }
        if weights.iter().any(|w| !(1..=3).contains(w)) {
            return Err(Error::Usage("generator weights must lie in {1, 2, 3}".into()));
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Usage("generators must be ordered by ascending weight".into()));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if comm_table.len() != pairs {
            return Err(dim_mismatch("commutator table", pairs, comm_table.len()));
        }
        for j in 1..n {
            for i in 0..j {
                let v = &comm_table[tri(j, i)];
                if v.len() != n {
                    return Err(dim_mismatch("commutator table entry", n, v.len()));
                }
                let min_w = weights[i] + weights[j];
                for (l, &x) in v.iter().enumerate() {
                    if x >= p {
                        return Err(Error::Usage(format!("table entry [g{j}, g{i}] is not reduced mod {p}")));
                    }
                    if x != 0 && weights[l] < min_w {
                        return Err(Error::Usage(format!(
                            "[g{j}, g{i}] involves g{l} of weight {} < {min_w}",
                            weights[l]
                        )));
                    }
                }
            }
        }
        let mut g = PcGroup {
            fp,
            weights,
            comm: comm_table.into_iter().map(FpVector::from).collect(),
            conj: Vec::new(),
        };
        g.build_conjugation_tables();
        Ok(g)
    }

    #[inline]
    fn conj_index(&self, k: usize, e: u32, j: usize, t: u32) -> usize {
        let n = self.ngens();
        let p = self.fp.p() as usize;
        ((k * p + e as usize) * n + j) * p + t as usize
    }

    /// Fills the tables from the last generator down: conjugating by `g_k`
    /// only needs multiplication among generators after `k`.
    fn build_conjugation_tables(&mut self) {
        let n = self.ngens();
        let p = self.fp.p();
        self.conj = vec![Vec::new(); n * p as usize * n * p as usize];
        for k in (0..n).rev() {
            // e = 1 for every j first; higher conjugating powers are built from it.
            let mut current: Vec<FpVector> = Vec::with_capacity(n);
            for j in 0..n {
                if j <= k {
                    current.push(FpVector::zeros(0));
                    continue;
                }
                // g_j^(g_k) = g_j [g_j, g_k]; the commutator lives past index j.
                let mut base = self.comm[tri(j, k)].clone();
                base[j] = 1;
                current.push(base);
            }
            for e in 1..p {
                if e > 1 {
                    for j in k + 1..n {
                        current[j] = self.conjugate_by_generator(&current[j], k);
                    }
                }
                for j in k + 1..n {
                    let mut pow = self.identity();
                    for t in 1..p {
                        pow = self.multiply_slices(&pow, &current[j]);
                        let idx = self.conj_index(k, e, j, t);
                        self.conj[idx] = sparse(&pow);
                    }
                }
            }
        }
    }

    /// `w^(g_k)` for `w` supported on generators after `k`.
    fn conjugate_by_generator(&self, w: &[u32], k: usize) -> FpVector {
        let mut r = self.identity();
        for l in k + 1..self.ngens() {
            let t = w[l];
            if t != 0 {
                let idx = self.conj_index(k, 1, l, t);
                for &(g, x) in &self.conj[idx] {
                    self.mul_gen(&mut r, g as usize, x);
                }
            }
        }
        r
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn ngens(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u8] {
        &self.weights
    }

    /// `[g_j, g_i]` for `j > i`.
    pub fn table_entry(&self, j: usize, i: usize) -> &FpVector {
        &self.comm[tri(j, i)]
    }

    /// The table in serialization order `(1,0), (2,0), (2,1), ...`.
    pub fn comm_table(&self) -> &[FpVector] {
        &self.comm
    }

    pub fn identity(&self) -> Element {
        FpVector::zeros(self.ngens())
    }

    pub fn generator(&self, i: usize) -> Element {
        FpVector::unit(self.ngens(), i)
    }

    /// Group order as a power of p.
    pub fn order_exp(&self) -> usize {
        self.ngens()
    }

    /// Right-multiplies the normal form `r` by `g_k^e`.
    fn mul_gen(&self, r: &mut [u32], k: usize, e: u32) {
        if e == 0 {
            return;
        }
        let n = r.len();
        let p = self.fp.p();
        let mut tail = [0u32; MAX_GENS];
        let mut any = false;
        for j in k + 1..n {
            let t = r[j];
            if t != 0 {
                tail[j] = t;
                r[j] = 0;
                any = true;
            }
        }
        r[k] = (r[k] + e) % p;
        if !any {
            return;
        }
        // r = prefix * g_k^(r_k + e) and the old tail must be conjugated by g_k^e.
        for j in k + 1..n {
            let t = tail[j];
            if t == 0 {
                continue;
            }
            let idx = self.conj_index(k, e, j, t);
            for &(g, x) in &self.conj[idx] {
                self.mul_gen(r, g as usize, x);
            }
        }
    }

    fn multiply_slices(&self, x: &[u32], y: &[u32]) -> FpVector {
        let mut r = FpVector::from(x.to_vec());
        for (k, &e) in y.iter().enumerate() {
            self.mul_gen(&mut r, k, e);
        }
        r
    }

    /// `out = x * y` without allocating.
    #[inline]
    pub fn multiply_into(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        out.copy_from_slice(x);
        for (k, &e) in y.iter().enumerate() {
            self.mul_gen(out, k, e);
        }
    }

    /// `out = x^-1` without allocating.
    #[inline]
    pub fn inverse_into(&self, x: &[u32], out: &mut [u32]) {
        let p = self.fp.p();
        out.fill(0);
        for k in (0..x.len()).rev() {
            if x[k] != 0 {
                self.mul_gen(out, k, p - x[k]);
            }
        }
    }

    /// `out = [x, y] = x^-1 y^-1 x y`, computed as `(yx)^-1 (xy)`.
    pub fn commutator_into(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        let n = x.len();
        let mut xy = [0u32; MAX_GENS];
        let mut yx = [0u32; MAX_GENS];
        let mut yx_inv = [0u32; MAX_GENS];
        self.multiply_into(x, y, &mut xy[..n]);
        self.multiply_into(y, x, &mut yx[..n]);
        self.inverse_into(&yx[..n], &mut yx_inv[..n]);
        self.multiply_into(&yx_inv[..n], &xy[..n], out);
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        self.multiply_slices(x, y)
    }

    pub fn inverse(&self, x: &Element) -> Element {
        let mut out = self.identity();
        self.inverse_into(x, &mut out);
        out
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.identity();
        self.commutator_into(x, y, &mut out);
        out
    }

    pub fn pow(&self, x: &Element, e: u64) -> Element {
        let mut r = self.identity();
        for _ in 0..e {
            r = self.multiply(&r, x);
        }
        r
    }

    /// Checks that the presentation defines a group of exponent p and order p^n:
    ///
    /// - associativity on generator triples `(g_k g_j) g_i = g_k (g_j g_i)`, `k > j > i`;
    /// - the power relations against the commutator relations,
    ///   `g_j^(p-1) (g_j g_i) = g_i` and `(g_j g_i) g_i^(p-1) = g_j`;
    /// - the exponent law `(g_i^s g_j^t)^p = 1` on all generator pairs.
    pub fn consistency_check(&self) -> bool {
        let n = self.ngens();
        let p = self.p();
        let g = |i: usize| self.generator(i);
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.multiply(&self.multiply(&g(k), &g(j)), &g(i));
                    let right = self.multiply(&g(k), &self.multiply(&g(j), &g(i)));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        for j in 0..n {
            let gj_pm1 = self.pow(&g(j), (p - 1) as u64);
            for i in 0..n {
                if i == j {
                    continue;
                }
                let gjgi = self.multiply(&g(j), &g(i));
                if self.multiply(&gj_pm1, &gjgi) != g(i) {
                    return false;
                }
                let gi_pm1 = self.pow(&g(i), (p - 1) as u64);
                if self.multiply(&gjgi, &gi_pm1) != g(j) {
                    return false;
                }
            }
        }
        for i in 0..n {
            if self.pow(&g(i), p as u64) != self.identity() {
                return false;
            }
            for j in i + 1..n {
                for s in 1..p {
                    for t in 1..p {
                        let x = self.multiply(&self.pow(&g(i), s as u64), &self.pow(&g(j), t as u64));
                        if self.pow(&x, p as u64) != self.identity() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Generators commuting with every generator. Their exponents form a
    /// central coordinate subgroup on which multiplication is plain addition.
    pub fn central_generators(&self) -> Vec<usize> {
        let n = self.ngens();
        (0..n)
            .filter(|&k| {
                (0..n).all(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => self.comm[tri(k, i)].is_zero(),
                    std::cmp::Ordering::Greater => self.comm[tri(i, k)].is_zero(),
                    std::cmp::Ordering::Equal => true,
                })
            })
            .collect()
    }

    /// Every element supported off the central generators. This set maps onto
    /// `G / Z(G)`; it is a transversal exactly when the center is spanned by
    /// central generators.
    pub fn transversal(&self) -> Vec<Element> {
        let central = self.central_generators();
        let free: Vec<usize> = (0..self.ngens()).filter(|i| !central.contains(i)).collect();
        let p = self.p();
        let mut out = Vec::new();
        let mut cur = self.identity();
        loop {
            out.push(cur.clone());
            let mut idx = 0;
            loop {
                if idx == free.len() {
                    return out;
                }
                let c = free[idx];
                cur[c] += 1;
                if cur[c] < p {
                    break;
                }
                cur[c] = 0;
                idx += 1;
            }
        }
    }

    pub fn is_central(&self, x: &Element) -> bool {
        let id = self.identity();
        (0..self.ngens()).all(|i| self.commutator(x, &self.generator(i)) == id)
    }

    /// The center as a subspace of exponent vectors.
    pub fn center(&self) -> Subspace {
        let n = self.ngens();
        let central = self.central_generators();
        let mut vectors: Vec<FpVector> = central.iter().map(|&c| FpVector::unit(n, c)).collect();
        let extra: Vec<Element> = self
            .transversal()
            .into_iter()
            .filter(|x| !x.is_zero() && self.is_central(x))
            .collect();
        let count = extra.len() + 1;
        vectors.extend(extra);
        let z = Subspace::span(self.fp, n, &vectors).expect("exponent vectors have length ngens");
        debug_assert_eq!(
            (self.p() as usize).pow((z.dim() - central.len()) as u32),
            count,
            "center is not a subspace of exponent vectors"
        );
        z
    }

    /// The smallest subspace containing every `[g_j, g_i]` and closed under
    /// commutation with generators.
    pub fn derived_subgroup(&self) -> Subspace {
        let n = self.ngens();
        let mut s = Subspace::span(self.fp, n, &self.comm).expect("table rows have length ngens");
        loop {
            let mut grown = false;
            let basis: Vec<FpVector> = s.basis().iter_rows().map(|r| FpVector::from(r.to_vec())).collect();
            for b in &basis {
                for i in 0..n {
                    let c = self.commutator(b, &self.generator(i));
                    if !s.contains(self.fp, &c).expect("same dimension") {
                        s = s
                            .join(self.fp, &Subspace::span(self.fp, n, &[c]).expect("same dimension"))
                            .expect("same dimension");
                        grown = true;
                    }
                }
            }
            if !grown {
                return s;
            }
        }
    }

    /// The set `[x, G]`, enumerated over the transversal.
    pub fn commutator_set(&self, x: &Element) -> HashSet<Element> {
        self.transversal().iter().map(|y| self.commutator(x, y)).collect()
    }

    /// `|x^G| = |[x, G]|`.
    pub fn class_size(&self, x: &Element) -> u64 {
        self.commutator_set(x).len() as u64
    }

    /// The set of conjugacy class sizes.
    pub fn conjugate_type(&self) -> BTreeSet<u64> {
        let reps = self.transversal();
        reps.iter()
            .map(|x| reps.iter().map(|y| self.commutator(x, y)).collect::<HashSet<_>>().len() as u64)
            .collect()
    }
}

fn sparse(v: &[u32]) -> Vec<(u16, u32)> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i as u16, x))
        .collect()
}

/// Commutator table with every entry trivial.
pub fn abelian_table(n: usize) -> Vec<Vec<u32>> {
    vec![vec![0; n]; n * n.saturating_sub(1) / 2]
}
