//! Class-2 exponent-p groups as alternating bilinear maps `B: V x V -> W`.
//!
//! An element is a pair `(u, w)` standing for the normal form `a^u b^w`, where
//! the `a_i` span `V = G / G'` and the `b_k` span `W = G'`. The map is stored
//! through its values `c[i][j] = B(e_i, e_j)` for `i < j`, so that
//! `B(u, v) = sum_{i<j} (u_i v_j - u_j v_i) c[i][j]` is the commutator of any
//! lifts of `u` and `v`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{dim_mismatch, Error, Result};
use crate::gf::{self, quotient_map, Fp, FpMatrix, FpVector, Subspace};
use crate::pcgroup::PcGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiMapGroup {
    fp: Fp,
    dim_v: usize,
    dim_w: usize,
    /// `c[i][j]` for `i < j`, at `pair_index(i, j) * dim_w`.
    tensor: Vec<u32>,
}

/// Position of the pair `(i, j)`, `i < j < n`, in lexicographic order.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl BiMapGroup {
    /// `tensor` lists `c[i][j]` for `i < j` in lexicographic pair order.
    pub fn new(p: u32, dim_v: usize, dim_w: usize, tensor: Vec<FpVector>) -> Result<Self> {
        let fp = Fp::new(p)?;
        let pairs = dim_v * dim_v.saturating_sub(1) / 2;
        if tensor.len() != pairs {
            return Err(dim_mismatch("tensor pair count", pairs, tensor.len()));
        }
        let mut flat = Vec::with_capacity(pairs * dim_w);
        for c in &tensor {
            if c.dim() != dim_w {
                return Err(dim_mismatch("tensor entry", dim_w, c.dim()));
            }
            if c.iter().any(|&x| x >= p) {
                return Err(Error::Usage(format!("tensor entry {c} is not reduced mod {p}")));
            }
            flat.extend_from_slice(c);
        }
        Ok(BiMapGroup { fp, dim_v, dim_w, tensor: flat })
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    /// `|G| = p^(dim V + dim W)`.
    pub fn order_exp(&self) -> usize {
        self.dim_v + self.dim_w
    }

    /// `c[i][j] = B(e_i, e_j)` for `i < j`.
    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        let k = pair_index(self.dim_v, i, j) * self.dim_w;
        &self.tensor[k..k + self.dim_w]
    }

    pub fn tensor(&self) -> Vec<FpVector> {
        let dw = self.dim_w;
        (0..self.pair_count()).map(|k| self.tensor[k * dw..(k + 1) * dw].to_vec().into()).collect()
    }

    fn pair_count(&self) -> usize {
        self.dim_v * self.dim_v.saturating_sub(1) / 2
    }

    /// Mutable access for fault-injection tests.
    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [u32] {
        let k = pair_index(self.dim_v, i, j) * self.dim_w;
        &mut self.tensor[k..k + self.dim_w]
    }

    /// `out = B(u, v)` without dimension checks.
    #[inline]
    pub fn b_eval_into(&self, u: &[u32], v: &[u32], out: &mut [u32]) {
        let fp = self.fp;
        out.fill(0);
        for i in 0..self.dim_v {
            for j in i + 1..self.dim_v {
                let s = fp.sub(fp.mul(u[i], v[j]), fp.mul(u[j], v[i]));
                if s != 0 {
                    fp.axpy(out, s, self.entry(i, j));
                }
            }
        }
    }

    pub fn b_eval(&self, u: &[u32], v: &[u32]) -> Result<FpVector> {
        if u.len() != self.dim_v || v.len() != self.dim_v {
            return Err(dim_mismatch("bilinear map argument", self.dim_v, u.len().max(v.len())));
        }
        let mut out = FpVector::zeros(self.dim_w);
        self.b_eval_into(u, v, &mut out);
        Ok(out)
    }

    /// Matrix whose row `j` is `B(u, e_j)`; its row space is `[x, G]` for any lift `x` of `u`.
    pub fn image_matrix(&self, u: &[u32]) -> FpMatrix {
        let fp = self.fp;
        let mut m = FpMatrix::zeros(self.dim_v, self.dim_w);
        for i in 0..self.dim_v {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.dim_v {
                if i == j {
                    continue;
                }
                // B(e_i, e_j) = c[i][j] for i < j and -c[j][i] otherwise.
                let coef = if i < j { u[i] } else { fp.neg(u[i]) };
                let c = if i < j { self.entry(i, j) } else { self.entry(j, i) };
                fp.axpy(m.row_mut(j), coef, c);
            }
        }
        m
    }

    pub fn image_of(&self, u: &[u32]) -> Result<Subspace> {
        if u.len() != self.dim_v {
            return Err(dim_mismatch("image_of argument", self.dim_v, u.len()));
        }
        let m = self.image_matrix(u);
        let rows: Vec<&[u32]> = m.iter_rows().collect();
        Subspace::span(self.fp, self.dim_w, &rows)
    }

    /// `dim [x, G]` for a lift `x` of `u`; the class of `x` has `p^rank` elements.
    pub fn rank_at(&self, u: &[u32]) -> usize {
        gf::rank(self.fp, &self.image_matrix(u))
    }

    /// `V`-vector with index `idx` in base-p odometer order (coordinate 0 least significant).
    pub fn v_vector(&self, idx: u64) -> FpVector {
        index_to_vector(self.p(), self.dim_v, idx)
    }

    pub fn v_count(&self) -> Result<u64> {
        self.fp
            .order_of_dim(self.dim_v)
            .ok_or_else(|| Error::Capacity(format!("p^{} cosets do not fit in 64 bits", self.dim_v)))
    }

    /// Ranks of `B(u, .)` over every `u` in `V`, as a sorted set.
    pub fn rank_profile(&self) -> Result<BTreeSet<usize>> {
        let total = self.v_count()?;
        Ok((0..total)
            .into_par_iter()
            .fold(BTreeSet::new, |mut acc, idx| {
                acc.insert(self.rank_at(&self.v_vector(idx)));
                acc
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            }))
    }

    /// Conjugacy class sizes `{p^rank(u)}` over all `u`, including `u = 0`.
    pub fn conjugate_type(&self) -> Result<BTreeSet<u64>> {
        let p = self.p() as u64;
        Ok(self.rank_profile()?.into_iter().map(|r| p.pow(r as u32)).collect())
    }

    /// `Some(p^k)` when every nonzero `u` has the same rank `k > 0`.
    pub fn two_class_sizes(&self) -> Result<Option<u64>> {
        let total = self.v_count()?;
        let ranks: BTreeSet<usize> = (1..total)
            .into_par_iter()
            .fold(BTreeSet::new, |mut acc, idx| {
                acc.insert(self.rank_at(&self.v_vector(idx)));
                acc
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        Ok(match ranks.len() {
            1 => {
                let k = *ranks.iter().next().expect("one rank");
                (k > 0).then(|| (self.p() as u64).pow(k as u32))
            }
            _ => None,
        })
    }

    /// Radical `{u : B(u, .) = 0}`.
    pub fn radical(&self) -> Subspace {
        // Column u-coefficients: entry (j*dim_w + k, i) = B(e_i, e_j)_k.
        let mut m = FpMatrix::zeros(self.dim_v * self.dim_w, self.dim_v);
        for i in 0..self.dim_v {
            let img = self.image_matrix(&FpVector::unit(self.dim_v, i));
            for j in 0..self.dim_v {
                for k in 0..self.dim_w {
                    m.set(j * self.dim_w + k, i, img.get(j, k));
                }
            }
        }
        gf::kernel(self.fp, &m)
    }

    /// The center in `(V, W)` coordinates: `rad(B) + W`.
    pub fn center(&self) -> Subspace {
        let n = self.dim_v + self.dim_w;
        let mut rows: Vec<FpVector> = Vec::new();
        for r in self.radical().basis().iter_rows() {
            let mut v = r.to_vec();
            v.resize(n, 0);
            rows.push(v.into());
        }
        for k in 0..self.dim_w {
            rows.push(FpVector::unit(n, self.dim_v + k));
        }
        Subspace::span(self.fp, n, &rows).expect("rows have ambient dimension")
    }

    /// `|Z(G)|` as a power of p.
    pub fn center_exp(&self) -> usize {
        self.dim_w + self.radical().dim()
    }

    /// Group law on normal forms `a^u b^w`:
    /// `(u, w)(u', w') = (u + u', w + w' - sum_{i<j} u_j u'_i c[i][j])`.
    pub fn multiply(&self, x: (&[u32], &[u32]), y: (&[u32], &[u32])) -> (FpVector, FpVector) {
        let fp = self.fp;
        let u: FpVector = x.0.iter().zip(y.0).map(|(&a, &b)| fp.add(a, b)).collect::<Vec<_>>().into();
        let mut w: FpVector = x.1.iter().zip(y.1).map(|(&a, &b)| fp.add(a, b)).collect::<Vec<_>>().into();
        for i in 0..self.dim_v {
            for j in i + 1..self.dim_v {
                let s = fp.mul(x.0[j], y.0[i]);
                if s != 0 {
                    fp.axpy(&mut w, fp.neg(s), self.entry(i, j));
                }
            }
        }
        (u, w)
    }

    /// The same group as a power-commutator presentation: generators
    /// `a_1..a_{dim V}` of weight 1 followed by `b_1..b_{dim W}` of weight 2.
    pub fn to_pc(&self) -> Result<PcGroup> {
        let n = self.dim_v + self.dim_w;
        let mut table = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                let mut v = vec![0u32; n];
                if j < self.dim_v {
                    // [a_j, a_i] = B(e_j, e_i) = -c[i][j].
                    for (k, &c) in self.entry(i, j).iter().enumerate() {
                        v[self.dim_v + k] = self.fp.neg(c);
                    }
                }
                table.push(v);
            }
        }
        let weights = [vec![1u8; self.dim_v], vec![2u8; self.dim_w]].concat();
        PcGroup::new(self.p(), weights, table)
    }

    /// `G / H` for a subspace `H` of `W`.
    pub fn quotient(&self, h: &Subspace) -> Result<BiMapGroup> {
        if h.ambient_dim() != self.dim_w {
            return Err(Error::Usage(format!(
                "quotient subgroup must lie in W (dimension {}), got ambient dimension {}",
                self.dim_w,
                h.ambient_dim()
            )));
        }
        let q = quotient_map(self.fp, self.dim_w, h)?;
        let tensor = self
            .tensor()
            .iter()
            .map(|c| q.project(self.fp, c))
            .collect::<Result<Vec<_>>>()?;
        BiMapGroup::new(self.p(), self.dim_v, q.coord_dim(), tensor)
    }
}

pub(crate) fn index_to_vector(p: u32, dim: usize, mut idx: u64) -> FpVector {
    let mut v = vec![0u32; dim];
    for x in v.iter_mut() {
        *x = (idx % p as u64) as u32;
        idx /= p as u64;
    }
    v.into()
}

/// Ito's group `G_r`: `r + 1` generators `a_i` with `[a_i, a_j] = b_ij` central,
/// all of order p. `W` has the basis `b_ij`, `i < j`, in lexicographic order.
pub fn build_ito(p: u32, r: usize) -> Result<BiMapGroup> {
    if p <= 2 {
        return Err(Error::UnsupportedPrime { p, reason: "Ito's construction requires p > 2".into() });
    }
    if r < 1 {
        return Err(Error::Usage("Ito's group needs r >= 1".into()));
    }
    Fp::new(p)?;
    let dim_v = r + 1;
    let dim_w = dim_v * r / 2;
    let tensor = (0..dim_w).map(|k| FpVector::unit(dim_w, k)).collect();
    BiMapGroup::new(p, dim_v, dim_w, tensor)
}

/// Basis vector `b_ij` of `W` in Ito's layout, 0-based `i < j < dim_v`.
pub fn ito_basis(dim_v: usize, i: usize, j: usize) -> FpVector {
    let dim_w = dim_v * (dim_v - 1) / 2;
    FpVector::unit(dim_w, pair_index(dim_v, i, j))
}

/// Central subgroup of `G_m`, `m = n^2 + n - 3`, killed to get a class-2 group
/// with `n` distinct nontrivial fiber sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSubgroup {
    pub generators: Vec<FpVector>,
    pub subspace: Subspace,
}

/// Ambient Ito parameter `m = n^2 + n - 3`.
pub fn theorem1_ambient_r(n: usize) -> usize {
    n * n + n - 3
}

/// First generator index (0-based) of block `t`: `(t - 1)(t + 2)`.
pub fn block_base(t: usize) -> usize {
    (t - 1) * (t + 2)
}

/// Block `t = 1..n-1` contributes the `t` products
/// `[a_{b+1}, a_{b+2}][a_{b+2j+1}, a_{b+2j+2}]`, `j = 1..t`, with `b = block_base(t)`.
pub fn theorem1_subgroup(p: u32, n: usize) -> Result<HSubgroup> {
    if n < 2 {
        return Err(Error::Usage("the quotient subgroup needs n >= 2".into()));
    }
    let fp = Fp::new(p)?;
    let dim_v = theorem1_ambient_r(n) + 1;
    let mut generators = Vec::with_capacity(n * (n - 1) / 2);
    for t in 1..n {
        let b = block_base(t);
        for j in 1..=t {
            let g = ito_basis(dim_v, b, b + 1).add(fp, &ito_basis(dim_v, b + 2 * j, b + 2 * j + 1));
            generators.push(g);
        }
    }
    let subspace = Subspace::span(fp, dim_v * (dim_v - 1) / 2, &generators)?;
    Ok(HSubgroup { generators, subspace })
}

/// The quotient `G_m / H` with `m = n^2 + n - 3`.
pub fn build_theorem1(p: u32, n: usize) -> Result<BiMapGroup> {
    let h = theorem1_subgroup(p, n)?;
    build_ito(p, theorem1_ambient_r(n))?.quotient(&h.subspace)
}
