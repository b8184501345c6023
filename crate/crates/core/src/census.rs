//! Fiber censuses of the commutator map.
//!
//! A census counts pairs `(x, y)` by the value of `[x, y]`. The fast paths
//! enumerate pairs of coset representatives modulo a central subgroup `C`
//! (commutators are constant on `C`-cosets), so each counted pair stands for
//! `|C|^2` pairs of group elements. Values are stored under packed base-p keys.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class2::{index_to_vector, BiMapGroup};
use crate::class3::Class3Group;
use crate::error::{dim_mismatch, Error, Result};
use crate::gf::{self, FpVector};
use crate::pcgroup::PcGroup;

/// Default bound on `|G|^2` for the element-level oracle.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Packs vectors over `F_p` into `u64` keys, coordinate 0 most significant, so
/// ascending keys are lexicographic vector order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyCodec {
    p: u32,
    dim: usize,
}

impl KeyCodec {
    pub fn new(p: u32, dim: usize) -> Result<Self> {
        match (p as u64).checked_pow(dim as u32) {
            Some(n) if n <= 1 << 63 => Ok(KeyCodec { p, dim }),
            _ => Err(Error::Capacity(format!(
                "{dim} coordinates mod {p} do not pack into 63 bits; use witness mode (single-target counting) instead"
            ))),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of distinct keys, `p^dim`.
    pub fn key_space(&self) -> u64 {
        (self.p as u64).pow(self.dim as u32)
    }

    pub fn pack(&self, v: &[u32]) -> u64 {
        debug_assert_eq!(v.len(), self.dim);
        v.iter().fold(0, |acc, &x| acc * self.p as u64 + x as u64)
    }

    pub fn unpack(&self, mut key: u64) -> FpVector {
        let p = self.p as u64;
        let mut v = vec![0u32; self.dim];
        for x in v.iter_mut().rev() {
            *x = (key % p) as u32;
            key /= p;
        }
        v.into()
    }

    /// Fixed-width base-p numeral of a key. Digits beyond 9 use `a..z` for
    /// `p <= 36`; larger primes print dot-separated decimal digits.
    pub fn to_base_p(&self, key: u64) -> String {
        let v = self.unpack(key);
        if self.p <= 36 {
            v.iter().map(|&d| char::from_digit(d, 36).expect("digit below 36")).collect()
        } else {
            v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

/// An exact nonnegative integer written as `coefficient * p^exponent` with
/// `p` not dividing the coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredCount {
    p: u32,
    coefficient: BigUint,
    exponent: u32,
}

impl FactoredCount {
    pub fn new(p: u32, coefficient: BigUint, exponent: u32) -> Self {
        let zero = BigUint::ZERO;
        if coefficient == zero {
            return FactoredCount { p, coefficient, exponent: 0 };
        }
        let bp = BigUint::from(p);
        let (mut c, mut e) = (coefficient, exponent);
        while (&c % &bp) == zero {
            c /= &bp;
            e += 1;
        }
        FactoredCount { p, coefficient: c, exponent: e }
    }

    pub fn from_u64(p: u32, value: u64) -> Self {
        Self::new(p, BigUint::from(value), 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn value(&self) -> BigUint {
        &self.coefficient * BigUint::from(self.p).pow(self.exponent)
    }

    /// `self * p^e`.
    pub fn shifted(&self, e: u32) -> Self {
        Self::new(self.p, self.coefficient.clone(), self.exponent + e)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == BigUint::ZERO
    }
}

impl PartialOrd for FactoredCount {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactoredCount {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value().cmp(&other.value()).then(self.p.cmp(&other.p))
    }
}

impl fmt::Display for FactoredCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}^{}", self.coefficient, self.p, self.exponent)
    }
}

/// `numerator / denominator` with the denominator `|G|^2`, kept unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probability {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl Probability {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        assert!(denominator != BigUint::ZERO, "zero denominator");
        Probability { numerator, denominator }
    }

    pub fn value(&self) -> Ratio<BigUint> {
        Ratio::new(self.numerator.clone(), self.denominator.clone())
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.value();
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Coset,
    Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCensus {
    p: u32,
    group_order_exp: u32,
    center_exp: u32,
    /// Each counted pair stands for `p^(2 * scale_exp)` element pairs.
    scale_exp: u32,
    /// Keys cover coordinates `key_offset..`; earlier coordinates of every
    /// commutator are zero.
    key_offset: usize,
    level: Level,
    codec: KeyCodec,
    counts: BTreeMap<u64, u64>,
}

impl FiberCensus {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn group_order_exp(&self) -> u32 {
        self.group_order_exp
    }

    pub fn center_exp(&self) -> u32 {
        self.center_exp
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn key_offset(&self) -> usize {
        self.key_offset
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn codec(&self) -> KeyCodec {
        self.codec
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count_of(&self, v: &[u32]) -> Result<u64> {
        if v.len() != self.codec.dim {
            return Err(dim_mismatch("census key", self.codec.dim, v.len()));
        }
        Ok(self.counts.get(&self.codec.pack(v)).copied().unwrap_or(0))
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.count_of(v)? > 0)
    }

    pub fn fiber_of_key(&self, key: u64) -> FactoredCount {
        let c = self.counts.get(&key).copied().unwrap_or(0);
        FactoredCount::from_u64(self.p, c).shifted(2 * self.scale_exp)
    }

    /// `|fiber(g)|` for the value with key coordinates `v`.
    pub fn fiber(&self, v: &[u32]) -> Result<FactoredCount> {
        if v.len() != self.codec.dim {
            return Err(dim_mismatch("census key", self.codec.dim, v.len()));
        }
        Ok(self.fiber_of_key(self.codec.pack(v)))
    }

    pub fn group_order_squared(&self) -> BigUint {
        BigUint::from(self.p).pow(2 * self.group_order_exp)
    }

    pub fn pr_of_key(&self, key: u64) -> Probability {
        Probability::new(self.fiber_of_key(key).value(), self.group_order_squared())
    }

    pub fn pr(&self, v: &[u32]) -> Result<Probability> {
        Ok(Probability::new(self.fiber(v)?.value(), self.group_order_squared()))
    }

    /// `|K(G)|`.
    pub fn k_size(&self) -> usize {
        self.counts.len()
    }

    /// `Σ_g |fiber(g)|`.
    pub fn total_fiber(&self) -> BigUint {
        self.counts.keys().map(|&k| self.fiber_of_key(k).value()).sum()
    }

    /// Distinct fiber sizes over nontrivial values, and how many there are.
    pub fn p_set(&self) -> (BTreeSet<FactoredCount>, usize) {
        let sizes: BTreeSet<FactoredCount> =
            self.counts.keys().filter(|&&k| k != 0).map(|&k| self.fiber_of_key(k)).collect();
        let n = sizes.len();
        (sizes, n)
    }

    /// Fibers keyed by full-length vectors, leading coordinates zero-padded.
    pub fn fibers_by_vector(&self) -> BTreeMap<FpVector, FactoredCount> {
        self.counts
            .keys()
            .map(|&k| {
                let mut v = vec![0u32; self.key_offset];
                v.extend_from_slice(&self.codec.unpack(k));
                (v.into(), self.fiber_of_key(k))
            })
            .collect()
    }

    /// `Σ fiber = |G|^2`.
    pub fn check_total(&self) -> bool {
        self.total_fiber() == self.group_order_squared()
    }

    /// `|Z|^2` divides every fiber.
    pub fn check_center_divides(&self) -> bool {
        self.counts.keys().all(|&k| self.fiber_of_key(k).exponent() >= 2 * self.center_exp)
    }

    /// `Pr_1 - Pr_g >= 1 / [G : Z]` for every nontrivial value.
    pub fn check_pr_gap(&self) -> bool {
        let pr1 = self.pr_of_key(0).value();
        let bound = Ratio::new(BigUint::from(1u32), BigUint::from(self.p).pow(self.group_order_exp - self.center_exp));
        self.counts.keys().filter(|&&k| k != 0).all(|&k| pr1.clone() - self.pr_of_key(k).value() >= bound)
    }

    /// `fiber(g) = fiber(g^-1)`, with inversion given on key coordinates.
    pub fn check_inverse_symmetry(&self, inverse: impl Fn(&FpVector) -> FpVector) -> bool {
        self.counts.iter().all(|(&k, &c)| {
            let inv = inverse(&self.codec.unpack(k));
            self.counts.get(&self.codec.pack(&inv)).copied() == Some(c)
        })
    }

    /// Negation on key coordinates: inversion when `G'` is elementary abelian.
    pub fn check_negation_symmetry(&self) -> bool {
        let fp = gf::Fp::new(self.p).expect("census prime");
        self.check_inverse_symmetry(|v| v.neg(fp))
    }

    pub fn export(&self, group_id: &str) -> CensusExport {
        CensusExport {
            group_id: group_id.to_string(),
            level: self.level,
            p: self.p.to_string(),
            multiplier: BigUint::from(self.p).pow(2 * self.scale_exp).to_string(),
            entries: self
                .counts
                .iter()
                .map(|(&k, &c)| CensusEntry { key_base_p: self.codec.to_base_p(k), count: c.to_string() })
                .collect(),
        }
    }

    pub fn to_json(&self, group_id: &str) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.export(group_id))?)
    }
}

/// Serialized census. `fiber = count * multiplier`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusExport {
    pub group_id: String,
    pub level: Level,
    pub p: String,
    pub multiplier: String,
    pub entries: Vec<CensusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub key_base_p: String,
    pub count: String,
}

fn merge_maps(mut a: HashMap<u64, u64>, b: HashMap<u64, u64>) -> HashMap<u64, u64> {
    if a.len() < b.len() {
        return merge_maps(b, a);
    }
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

/// Calls `f` on every vector in the row space of the first `rank` rows of `basis`.
fn for_each_in_span(fp: gf::Fp, basis: &gf::FpMatrix, rank: usize, mut f: impl FnMut(&[u32])) {
    let p = fp.p();
    let mut w = vec![0u32; basis.cols()];
    let mut coeffs = vec![0u32; rank];
    loop {
        f(&w);
        let mut i = 0;
        loop {
            if i == rank {
                return;
            }
            fp.axpy(&mut w, 1, basis.row(i));
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Coset-level census of a class-2 group over all `(u, v)` in `V x V`.
pub fn census_class2(g: &BiMapGroup) -> Result<FiberCensus> {
    let fp = g.field();
    let p = g.p() as u64;
    let codec = KeyCodec::new(g.p(), g.dim_w())?;
    let total = g.v_count()?;
    total
        .checked_mul(total)
        .ok_or_else(|| Error::Capacity(format!("{total}^2 coset pairs overflow 64-bit counts")))?;
    let dim_v = g.dim_v();
    let counts = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, idx| {
            let u = g.v_vector(idx);
            let (rank, basis) = gf::rref(fp, &g.image_matrix(&u));
            let mult = p.pow((dim_v - rank) as u32);
            for_each_in_span(fp, &basis, rank, |w| *acc.entry(codec.pack(w)).or_insert(0) += mult);
            acc
        })
        .reduce(HashMap::new, merge_maps);
    Ok(FiberCensus {
        p: g.p(),
        group_order_exp: g.order_exp() as u32,
        center_exp: g.center_exp() as u32,
        scale_exp: g.dim_w() as u32,
        key_offset: dim_v,
        level: Level::Coset,
        codec,
        counts: counts.into_iter().collect(),
    })
}

/// Census over pairs of representatives, keyed on coordinates `key_offset..`.
fn census_over_reps(pc: &PcGroup, reps: &[FpVector], key_offset: usize) -> Result<HashMap<u64, u64>> {
    let n = pc.ngens();
    let codec = KeyCodec::new(pc.p(), n - key_offset)?;
    Ok(reps
        .par_iter()
        .fold(HashMap::new, |mut acc, x| {
            let mut out = vec![0u32; n];
            for y in reps {
                pc.commutator_into(x, y, &mut out);
                debug_assert!(out[..key_offset].iter().all(|&e| e == 0));
                *acc.entry(codec.pack(&out[key_offset..])).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, merge_maps))
}

/// Coset-level census of the class-3 group over `(G / Z)^2`, keyed on `G'`.
pub fn census_class3(g: &Class3Group) -> Result<FiberCensus> {
    let pc = g.pc();
    let key_offset = crate::class3::GEN_H;
    let counts = census_over_reps(pc, g.coset_reps(), key_offset)?;
    Ok(FiberCensus {
        p: pc.p(),
        group_order_exp: pc.ngens() as u32,
        center_exp: g.center().dim() as u32,
        scale_exp: g.center().dim() as u32,
        key_offset,
        level: Level::Coset,
        codec: KeyCodec::new(pc.p(), pc.ngens() - key_offset)?,
        counts: counts.into_iter().collect(),
    })
}

/// Coset-level census of a pc group modulo the span of its central generators.
pub fn census_pc(pc: &PcGroup) -> Result<FiberCensus> {
    let scale = pc.central_generators().len();
    let counts = census_over_reps(pc, &pc.transversal(), 0)?;
    Ok(FiberCensus {
        p: pc.p(),
        group_order_exp: pc.ngens() as u32,
        center_exp: pc.center().dim() as u32,
        scale_exp: scale as u32,
        key_offset: 0,
        level: Level::Coset,
        codec: KeyCodec::new(pc.p(), pc.ngens())?,
        counts: counts.into_iter().collect(),
    })
}

/// Element-level census over all `|G|^2` pairs, the slow reference path.
pub fn census_bruteforce(pc: &PcGroup, budget: u64) -> Result<FiberCensus> {
    let n = pc.ngens();
    let order = pc
        .field()
        .order_of_dim(n)
        .filter(|o| o.checked_mul(*o).is_some_and(|pairs| pairs <= budget))
        .ok_or_else(|| Error::Capacity(format!("|G|^2 = p^{} pairs exceed the budget of {budget}", 2 * n)))?;
    let codec = KeyCodec::new(pc.p(), n)?;
    let elements: Vec<FpVector> = (0..order).map(|i| index_to_vector(pc.p(), n, i)).collect();
    let dense = elements
        .par_iter()
        .fold(
            || vec![0u64; order as usize],
            |mut acc, x| {
                let mut out = vec![0u32; n];
                for y in &elements {
                    pc.commutator_into(x, y, &mut out);
                    acc[codec.pack(&out) as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; order as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(FiberCensus {
        p: pc.p(),
        group_order_exp: n as u32,
        center_exp: pc.center().dim() as u32,
        scale_exp: 0,
        key_offset: 0,
        level: Level::Element,
        codec,
        counts: dense.into_iter().enumerate().filter(|(_, c)| *c > 0).map(|(k, c)| (k as u64, c)).collect(),
    })
}

/// `|TZ_g|` for every attained `g`: the number of cosets `xZ` with `g in [x, G]`.
pub fn tz_census_class2(g: &BiMapGroup) -> Result<BTreeMap<u64, u64>> {
    let fp = g.field();
    let codec = KeyCodec::new(g.p(), g.dim_w())?;
    let total = g.v_count()?;
    let counts = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, idx| {
            let (rank, basis) = gf::rref(fp, &g.image_matrix(&g.v_vector(idx)));
            for_each_in_span(fp, &basis, rank, |w| *acc.entry(codec.pack(w)).or_insert(0) += 1);
            acc
        })
        .reduce(HashMap::new, merge_maps);
    // Images are constant on cosets of the radical.
    let rad = (g.p() as u64).pow(g.radical().dim() as u32);
    Ok(counts.into_iter().map(|(k, c)| (k, c / rad)).collect())
}

pub fn tz_count_class2(g: &BiMapGroup, target: &[u32]) -> Result<u64> {
    if target.len() != g.dim_w() {
        return Err(dim_mismatch("target", g.dim_w(), target.len()));
    }
    let total = g.v_count()?;
    let hits = (0..total)
        .into_par_iter()
        .filter(|&idx| g.image_of(&g.v_vector(idx)).and_then(|s| s.contains(g.field(), target)).unwrap_or(false))
        .count() as u64;
    if hits == 0 {
        return Err(Error::Usage(format!("{} is not a commutator", FpVector::from(target.to_vec()))));
    }
    Ok(hits / (g.p() as u64).pow(g.radical().dim() as u32))
}

/// `|TZ_g|` for every `g` in `K(G)` of the class-3 group, keyed as in [`census_class3`].
pub fn tz_census_class3(g: &Class3Group) -> Result<BTreeMap<u64, u64>> {
    let pc = g.pc();
    let off = crate::class3::GEN_H;
    let codec = KeyCodec::new(pc.p(), pc.ngens() - off)?;
    let reps = g.coset_reps();
    let counts = reps
        .par_iter()
        .fold(HashMap::new, |mut acc, x| {
            let mut out = vec![0u32; pc.ngens()];
            let mut seen = HashSet::new();
            for y in reps {
                pc.commutator_into(x, y, &mut out);
                seen.insert(codec.pack(&out[off..]));
            }
            for k in seen {
                *acc.entry(k).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, merge_maps);
    Ok(counts.into_iter().collect())
}

/// `|TZ_g|` for a single element `g` of the class-3 group.
pub fn tz_count_class3(g: &Class3Group, target: &FpVector) -> Result<u64> {
    let pc = g.pc();
    if target.len() != pc.ngens() {
        return Err(dim_mismatch("target", pc.ngens(), target.len()));
    }
    let hits = g.coset_reps().par_iter().filter(|x| g.commutator_set(x).contains(target)).count() as u64;
    if hits == 0 {
        return Err(Error::Usage(format!("{target} is not a commutator")));
    }
    Ok(hits)
}

/// `Pr_g` of a group of conjugate type `(1, p^n)` from `|TZ_g|`:
/// `(1 + ([G:Z] - 1) / p^n) / [G:Z]` for `g = 1`, else `|TZ_g| / ([G:Z] p^n)`.
pub fn pr_from_tz(p: u32, index_exp: u32, class_exp: u32, tz: u64, identity: bool) -> Ratio<BigUint> {
    let idx = BigUint::from(p).pow(index_exp);
    let pn = BigUint::from(p).pow(class_exp);
    let one = BigUint::from(1u32);
    if identity {
        Ratio::new(&pn + &idx - &one, &idx * &pn)
    } else {
        Ratio::new(BigUint::from(tz), idx * pn)
    }
}

/// Compares census `Pr_g` with the value rebuilt from `|TZ_g|` for every key.
/// Returns the keys that disagree.
pub fn tz_mismatches(c: &FiberCensus, tz: &BTreeMap<u64, u64>, class_exp: u32) -> Vec<u64> {
    let index_exp = c.group_order_exp() - c.center_exp();
    c.counts()
        .keys()
        .filter(|&&k| {
            let t = tz.get(&k).copied().unwrap_or(0);
            pr_from_tz(c.p(), index_exp, class_exp, t, k == 0) != c.pr_of_key(k).value()
        })
        .copied()
        .collect()
}

/// Number of coset pairs `(u, v)` with `B(u, v) = target`, one linear solve per `u`.
pub fn witness_fiber(g: &BiMapGroup, target: &[u32]) -> Result<FactoredCount> {
    if target.len() != g.dim_w() {
        return Err(dim_mismatch("target", g.dim_w(), target.len()));
    }
    let fp = g.field();
    let total = g.v_count()?;
    let p = g.p() as u128;
    let sum: u128 = (0..total)
        .into_par_iter()
        .map(|idx| {
            let a = g.image_matrix(&g.v_vector(idx)).transpose();
            match gf::solve(fp, &a, target).expect("dimensions checked") {
                Some(sol) => p.pow(sol.kernel_dim as u32),
                None => 0,
            }
        })
        .sum();
    let hi = (sum >> 64) as u64;
    let lo = sum as u64;
    let value = (BigUint::from(hi) << 64u32) + BigUint::from(lo);
    Ok(FactoredCount::new(g.p(), value, 0))
}

/// Whether `target` is a product of two attained values: some `k` in `K(G)`
/// has `target - k` in `K(G)`.
pub fn product_membership(c: &FiberCensus, target: &[u32]) -> Result<bool> {
    let codec = c.codec();
    if target.len() != codec.dim() {
        return Err(dim_mismatch("target", codec.dim(), target.len()));
    }
    let fp = gf::Fp::new(c.p())?;
    let keys: Vec<u64> = c.counts().keys().copied().collect();
    Ok(keys.par_iter().any(|&k| {
        let diff: Vec<u32> = target.iter().zip(codec.unpack(k).iter()).map(|(&t, &x)| fp.sub(t, x)).collect();
        c.counts().contains_key(&codec.pack(&diff))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class2::{build_ito, ito_basis};
    use crate::class3::build_free_class3;
    use proptest::prelude::*;

    fn f(p: u32, c: u64, e: u32) -> FactoredCount {
        FactoredCount::new(p, BigUint::from(c), e)
    }

    #[test]
    fn codec_roundtrip_and_capacity() {
        let c = KeyCodec::new(3, 4).unwrap();
        let v = FpVector::from(vec![2, 0, 1, 2]);
        assert_eq!(c.pack(&v), 2 * 27 + 3 + 2);
        assert_eq!(c.unpack(c.pack(&v)), v);
        assert_eq!(c.to_base_p(c.pack(&v)), "2012");
        assert!(KeyCodec::new(3, 39).is_ok());
        assert!(matches!(KeyCodec::new(3, 42), Err(Error::Capacity(_))));
        assert!(matches!(KeyCodec::new(3, 45), Err(Error::Capacity(_))));
    }

    #[test]
    fn factored_count_normalizes() {
        assert_eq!(f(3, 297, 0), f(3, 11, 3));
        assert_eq!(f(3, 216, 0).to_string(), "8*3^3");
        assert_eq!(f(5, 0, 7).exponent(), 0);
        assert!(f(3, 216, 0) < f(3, 297, 0));
    }

    #[test]
    fn ito_31_census() {
        let c = census_class2(&build_ito(3, 1).unwrap()).unwrap();
        let counts: Vec<u64> = c.counts().values().copied().collect();
        assert_eq!(counts, vec![33, 24, 24]);
        assert_eq!(c.fiber(&[0]).unwrap().value(), BigUint::from(297u32));
        assert_eq!(c.fiber(&[1]).unwrap().value(), BigUint::from(216u32));
        assert_eq!(c.k_size(), 3);
        assert_eq!(c.p_set().1, 1);
        assert!(c.check_total() && c.check_center_divides() && c.check_pr_gap() && c.check_negation_symmetry());
    }

    #[test]
    fn ito_32_census() {
        let c = census_class2(&build_ito(3, 2).unwrap()).unwrap();
        assert_eq!(c.k_size(), 27);
        assert_eq!(c.fiber(&[1, 0, 0]).unwrap(), f(3, 8, 7));
        assert_eq!(c.fiber(&[0, 0, 0]).unwrap().value(), BigUint::from(76545u32));
        assert_eq!(c.total_fiber(), BigUint::from(729u32 * 729));
    }

    #[test]
    fn abelian_and_trivial_census() {
        let g = BiMapGroup::new(3, 2, 1, vec![FpVector::zeros(1)]).unwrap();
        let c = census_class2(&g).unwrap();
        assert_eq!(c.counts().iter().collect::<Vec<_>>(), vec![(&0, &81)]);
        assert_eq!(c.k_size(), 1);
        let t = BiMapGroup::new(3, 0, 0, vec![]).unwrap();
        let c = census_class2(&t).unwrap();
        assert_eq!(c.fiber(&[]).unwrap().value(), BigUint::from(1u32));
        let z = PcGroup::new(3, vec![], vec![]).unwrap();
        let c = census_bruteforce(&z, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts().iter().collect::<Vec<_>>(), vec![(&0, &1)]);
    }

    #[test]
    fn class3_census_p5() {
        let g = build_free_class3(5).unwrap();
        let c = census_class3(&g).unwrap();
        assert_eq!(c.k_size(), 125);
        assert_eq!(c.fiber(&[0, 0, 0]).unwrap().value(), BigUint::from(465625u32));
        for (&k, _) in c.counts().iter().filter(|(&k, _)| k != 0) {
            assert_eq!(c.fiber_of_key(k).value(), BigUint::from(75000u32));
        }
        assert_eq!(c.pr(&[0, 0, 0]).unwrap().to_string(), "149/3125");
        assert_eq!(c.pr(&[1, 0, 0]).unwrap().to_string(), "24/3125");
    }

    #[test]
    fn bruteforce_matches_ito_31() {
        let g = build_ito(3, 1).unwrap();
        let fast = census_class2(&g).unwrap();
        let slow = census_bruteforce(&g.to_pc().unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(slow.fibers_by_vector(), fast.fibers_by_vector());
        assert!(matches!(census_bruteforce(&g.to_pc().unwrap(), 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn census_pc_matches_class2() {
        let g = build_ito(3, 2).unwrap();
        assert_eq!(census_pc(&g.to_pc().unwrap()).unwrap().fibers_by_vector(), census_class2(&g).unwrap().fibers_by_vector());
    }

    #[test]
    fn witness_fiber_examples() {
        let g = build_ito(3, 1).unwrap();
        assert_eq!(witness_fiber(&g, &[0]).unwrap().value(), BigUint::from(33u32));
        assert_eq!(witness_fiber(&g, &ito_basis(2, 0, 1)).unwrap().value(), BigUint::from(24u32));
        let g = build_ito(3, 2).unwrap();
        let c = census_class2(&g).unwrap();
        for (&k, &n) in c.counts() {
            assert_eq!(witness_fiber(&g, &c.codec().unpack(k)).unwrap(), FactoredCount::from_u64(3, n));
        }
        let abelian = BiMapGroup::new(3, 2, 1, vec![FpVector::zeros(1)]).unwrap();
        assert!(witness_fiber(&abelian, &[1]).unwrap().is_zero());
    }

    #[test]
    fn tz_counts() {
        let g = build_ito(3, 1).unwrap();
        assert_eq!(tz_count_class2(&g, &[1]).unwrap(), 8);
        assert!(matches!(tz_count_class2(&BiMapGroup::new(3, 2, 1, vec![FpVector::zeros(1)]).unwrap(), &[1]), Err(Error::Usage(_))));
        let c = census_class2(&g).unwrap();
        let tz = tz_census_class2(&g).unwrap();
        assert!(tz_mismatches(&c, &tz, 1).is_empty());
        assert_eq!(pr_from_tz(3, 2, 1, 8, false), Ratio::new(BigUint::from(8u32), BigUint::from(27u32)));

        let g3 = build_free_class3(5).unwrap();
        let c3 = census_class3(&g3).unwrap();
        let tz3 = tz_census_class3(&g3).unwrap();
        assert!(tz_mismatches(&c3, &tz3, 2).is_empty());
        assert!(tz_count_class3(&g3, &g3.element([0, 0, 0, 1, 0])).unwrap() >= 24);
        assert!(tz_count_class3(&g3, &g3.element([0, 0, 1, 0, 0])).unwrap() >= 24);
    }

    #[test]
    fn product_membership_examples() {
        let g = build_ito(3, 3).unwrap();
        let c = census_class2(&g).unwrap();
        assert!(product_membership(&c, &[0; 6]).unwrap());
        for &k in c.counts().keys() {
            assert!(product_membership(&c, &c.codec().unpack(k)).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn codec_roundtrips(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 37, 101]), v in prop::collection::vec(any::<u32>(), 0..8)) {
            let c = KeyCodec::new(p, v.len()).unwrap();
            let v: Vec<u32> = v.into_iter().map(|x| x % p).collect();
            prop_assert_eq!(c.unpack(c.pack(&v)).into_inner(), v);
        }

        #[test]
        fn random_tensor_census_invariants(seed in prop::collection::vec(0u32..3, 6 * 2)) {
            let tensor: Vec<FpVector> = seed.chunks(2).map(|c| c.to_vec().into()).collect();
            let g = BiMapGroup::new(3, 4, 2, tensor).unwrap();
            let c = census_class2(&g).unwrap();
            prop_assert!(c.check_total());
            prop_assert!(c.check_center_divides());
            prop_assert!(c.check_pr_gap());
            prop_assert!(c.check_negation_symmetry());
            for (&k, &n) in c.counts() {
                prop_assert_eq!(witness_fiber(&g, &c.codec().unpack(k)).unwrap(), FactoredCount::from_u64(3, n));
            }
        }
    }
}
