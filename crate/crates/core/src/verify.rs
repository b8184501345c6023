//! Named verification checks. Each check builds its groups, computes the
//! relevant quantities exactly and compares them with closed forms or
//! structural predictions. A report passes iff every computed value equals
//! its expected value as a string of exact integers or reduced fractions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{self, FactoredCount, FiberCensus, KeyCodec};
use crate::class2::{block_base, build_ito, ito_basis, theorem1_ambient_r, theorem1_subgroup, BiMapGroup};
use crate::class3::{build_free_class3, Class3Group};
use crate::error::{Error, Result};
use crate::gf::{quotient_map, Fp, FpVector};

/// Upper bound on `p^(2r+1)` for the Ito checks, the work of one census.
pub const ITO_WORK_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Witness,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub params: BTreeMap<String, String>,
    pub expected: BTreeMap<String, String>,
    pub computed: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl VerifyReport {
    /// Names of the checks whose computed value differs from the expected one.
    pub fn failures(&self) -> Vec<String> {
        self.expected
            .iter()
            .filter(|(k, v)| self.computed.get(*k) != Some(v))
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Deliberate corruption for exercising the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Zero the `(0, 1)` tensor entry of every Ito group before checking.
    ItoTensor,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Run only checks at this prime; checks impossible there are reported skipped.
    pub restrict_p: Option<u32>,
    pub timing: bool,
    pub fault: Option<Fault>,
    pub budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { restrict_p: None, timing: false, fault: None, budget: census::DEFAULT_BUDGET }
    }
}

struct Builder {
    report: VerifyReport,
    start: Instant,
    timing: bool,
}

impl Builder {
    fn new(claim: &str, params: &[(&str, String)], mode: Mode, timing: bool) -> Self {
        Builder {
            report: VerifyReport {
                claim: claim.into(),
                params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
                expected: BTreeMap::new(),
                computed: BTreeMap::new(),
                verdict: Verdict::Pass,
                mode,
                notes: Vec::new(),
                millis: None,
            },
            start: Instant::now(),
            timing,
        }
    }

    fn check(&mut self, name: &str, expected: impl Display, computed: impl Display) {
        self.report.expected.insert(name.into(), expected.to_string());
        self.report.computed.insert(name.into(), computed.to_string());
    }

    fn holds(&mut self, name: &str, computed: bool) {
        self.check(name, true, computed);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    fn finish(mut self) -> VerifyReport {
        let r = &mut self.report;
        r.verdict = if r.mode == Mode::Skipped {
            Verdict::Skipped
        } else if r.failures().is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        if self.timing {
            r.millis = Some(self.start.elapsed().as_millis() as u64);
        }
        self.report
    }

    fn skip(mut self, why: impl Into<String>) -> VerifyReport {
        self.report.mode = Mode::Skipped;
        self.note(why);
        self.finish()
    }
}

fn pow(p: u32, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

fn ratio(n: BigUint, d: BigUint) -> String {
    let r = Ratio::new(n, d);
    format!("{}/{}", r.numer(), r.denom())
}

fn set_string<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Distinct nontrivial fibers, as strings in ascending order.
fn nontrivial_fibers(c: &FiberCensus) -> String {
    set_string(c.p_set().0)
}

/// `[a_{2k-1}, a_{2k}]^{i_k}` multiplied over `k`, as a `W`-vector of `G_r`.
fn paired_target(fp: Fp, dim_v: usize, pattern: &[u32]) -> FpVector {
    let dim_w = dim_v * (dim_v - 1) / 2;
    pattern.iter().enumerate().fold(FpVector::zeros(dim_w), |acc, (k, &i)| {
        acc.add(fp, &ito_basis(dim_v, 2 * k, 2 * k + 1).scaled(fp, i))
    })
}

fn pattern_string(pattern: &[u32]) -> String {
    pattern.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Every exponent pattern of length `m` with entries in `1..p`.
pub fn nonzero_patterns(p: u32, m: usize) -> Vec<Vec<u32>> {
    (0..m).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|v| (1..p).map(move |i| [v.clone(), vec![i]].concat())).collect()
    })
}

fn corrupt(g: &mut BiMapGroup) {
    g.entry_mut(0, 1).iter_mut().for_each(|x| *x = 0);
}

/// Closed forms for Ito's `G_r`: class sizes, `Pr_g`, fibers and `|K|`.
pub fn verify_ito(p: u32, r: usize, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut b = Builder::new("ito", &[("p", p.to_string()), ("r", r.to_string())], Mode::Exact, cfg.timing);
    let mut g = build_ito(p, r)?;
    let work = (p as u64).checked_pow(2 * r as u32 + 1);
    if work.is_none_or(|w| w > ITO_WORK_LIMIT) {
        return Ok(b.skip(format!("census of p^{} coset images exceeds the work limit", 2 * r + 1)));
    }
    if cfg.fault == Some(Fault::ItoTensor) {
        corrupt(&mut g);
        b.note("fault injected: tensor entry (0, 1) zeroed");
    }
    let c = match census::census_class2(&g) {
        Ok(c) => c,
        Err(Error::Capacity(msg)) => return Ok(b.skip(msg)),
        Err(e) => return Err(e),
    };
    let (r32, pb) = (r as u32, BigUint::from(p));
    let one = BigUint::from(1u32);
    let pr = pow(p, r32);
    let tail = r32 * r32 + r32 + 1;

    b.check("conjugate-type", set_string([one.clone(), pr.clone()]), set_string(g.conjugate_type()?));
    let fiber1 = FactoredCount::new(p, &pr * &pb + &pr - &one, tail);
    let fiber_g = FactoredCount::new(p, &pb * &pb - &one, tail);
    b.check("fiber(1)", &fiber1, c.fiber_of_key(0));
    b.check("fiber(g!=1)", set_string([&fiber_g]), nontrivial_fibers(&c));
    b.check("pr(1)", ratio(&pr * &pb + &pr - &one, pow(p, 2 * r32 + 1)), c.pr_of_key(0));
    let prs: BTreeSet<String> = c.counts().keys().filter(|&&k| k != 0).map(|&k| c.pr_of_key(k).to_string()).collect();
    b.check("pr(g!=1)", set_string([ratio(&pb * &pb - &one, pow(p, 2 * r32 + 1))]), set_string(prs));
    let k_minus_1 = (&pr * &pb - &one) * (&pr - &one) / (&pb * &pb - &one);
    b.check("|K|-1", k_minus_1, c.k_size() - 1);
    b.check("|P|", 1, c.p_set().1);
    b.check("sum-fiber", pow(p, 2 * c.group_order_exp()), c.total_fiber());
    Ok(b.finish())
}

/// Products of `m >= 2` commutators of disjoint generator pairs, with every
/// exponent nonzero, are not single commutators in the Ito group on
/// `num_gens` generators.
pub fn verify_lemma31(p: u32, num_gens: usize, patterns: &[Vec<u32>], cfg: &VerifyConfig) -> Result<VerifyReport> {
    if num_gens < 4 {
        return Err(Error::Usage(format!("lemma3.1 needs at least 4 generators, got {num_gens}")));
    }
    for pat in patterns {
        if pat.len() < 2 || pat.len() > num_gens / 2 || pat.iter().any(|&i| i % p == 0) {
            return Err(Error::Usage(format!("pattern ({}) needs 2 <= m <= {} nonzero exponents", pattern_string(pat), num_gens / 2)));
        }
    }
    let mut b = Builder::new("lemma3.1", &[("p", p.to_string()), ("generators", num_gens.to_string())], Mode::Exact, cfg.timing);
    let g = build_ito(p, num_gens - 1)?;
    let fp = g.field();
    let c = census::census_class2(&g)?;
    for pat in patterns {
        let t = paired_target(fp, num_gens, pat);
        b.check(&format!("absent({})", pattern_string(pat)), false, c.contains(&t)?);
    }
    for k in 0..num_gens / 2 {
        for i in 1..p {
            let mut pat = vec![0; k + 1];
            pat[k] = i;
            let t = paired_target(fp, num_gens, &pat);
            b.check(&format!("control-present(k={},i={i})", k + 1), true, c.contains(&t)?);
        }
    }
    Ok(b.finish())
}

/// Products of three commutators of disjoint generator pairs, every exponent
/// nonzero, are not products of two commutators in the 6-generator Ito group.
pub fn verify_lemma32(p: u32, patterns: &[Vec<u32>], cfg: &VerifyConfig) -> Result<VerifyReport> {
    const GENS: usize = 6;
    for pat in patterns {
        if pat.len() != 3 || pat.iter().any(|&i| i % p == 0) {
            return Err(Error::Usage(format!("pattern ({}) needs 3 nonzero exponents", pattern_string(pat))));
        }
    }
    let mut b = Builder::new("lemma3.2", &[("p", p.to_string()), ("generators", GENS.to_string())], Mode::Exact, cfg.timing);
    b.note("the group on n generators is read as G_{n-1}");
    let g = build_ito(p, GENS - 1)?;
    let fp = g.field();
    let c = census::census_class2(&g)?;
    for pat in patterns {
        let t = paired_target(fp, GENS, pat);
        b.check(&format!("not-in-KK({})", pattern_string(pat)), false, census::product_membership(&c, &t)?);
    }
    for pat in [vec![1, 1], vec![1, p - 1], vec![1]] {
        let t = paired_target(fp, GENS, &pat);
        b.check(&format!("control-in-KK({})", pattern_string(&pat)), true, census::product_membership(&c, &t)?);
    }
    Ok(b.finish())
}

/// Predicted `|A_h|` for block base commutators, and a size-1 representative.
fn witness_targets(n: usize) -> Vec<(String, usize, usize, usize)> {
    let mut out = vec![("[a1,a3]".to_string(), 1, 0, 2)];
    for t in 1..n {
        let base = block_base(t);
        out.push((format!("[a{},a{}]", base + 1, base + 2), t + 1, base, base + 1));
    }
    out
}

/// The quotient of `G_m`, `m = n^2 + n - 3`, has conjugate type `(1, p^k)`
/// and `n` distinct nontrivial fiber sizes in ratio `1 : 2 : ... : n`.
pub fn verify_theorem1(p: u32, n: usize, mode: Mode, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if n < 2 {
        return Err(Error::Usage(format!("theorem1 needs n >= 2, got {n}")));
    }
    if n >= 4 {
        return Err(Error::Usage(format!("theorem1 with n = {n} is beyond the supported range n <= 3")));
    }
    let params = [("p", p.to_string()), ("n", n.to_string())];
    let mut mode = mode;
    let mut notes = Vec::new();
    if mode == Mode::Exact && n > 2 {
        mode = Mode::Witness;
        notes.push(format!("exact mode needs a full census of G_{}; downgraded to witness mode", theorem1_ambient_r(n)));
    }
    let mut b = Builder::new("theorem1", &params, mode, cfg.timing);
    notes.into_iter().for_each(|s| b.note(s));

    let m = theorem1_ambient_r(n);
    let ambient = build_ito(p, m)?;
    let fp = ambient.field();
    let h = theorem1_subgroup(p, n)?;
    let q = ambient.quotient(&h.subspace)?;
    let qmap = quotient_map(fp, ambient.dim_w(), &h.subspace)?;
    let (pb, one) = (BigUint::from(p), BigUint::from(1u32));
    // Every nontrivial commutator of G_m has the same coset-pair count.
    let base = (&pb * &pb - &one) * &pb;

    let expected_order = (m + 1) + m * (m + 1) / 2 - n * (n - 1) / 2;
    b.check("order-exp", expected_order, q.order_exp());
    b.check("|H|", FactoredCount::new(p, one.clone(), (n * (n - 1) / 2) as u32), FactoredCount::new(p, one.clone(), h.subspace.dim() as u32));
    let class = q.two_class_sizes()?;
    b.holds("two-class-sizes", class.is_some());
    if let Some(k) = class {
        b.note(format!("noncentral classes have size {k}"));
    }

    if mode == Mode::Exact {
        let ca = census::census_class2(&ambient)?;
        let cq = census::census_class2(&q)?;
        let qcodec = KeyCodec::new(p, q.dim_w())?;
        let mut pushed: BTreeMap<u64, u64> = BTreeMap::new();
        let mut preimages: BTreeMap<u64, BTreeSet<FpVector>> = BTreeMap::new();
        for (&k, &count) in ca.counts() {
            let v = ca.codec().unpack(k);
            let qk = qcodec.pack(&qmap.project(fp, &v)?);
            *pushed.entry(qk).or_insert(0) += count;
            if k != 0 {
                preimages.entry(qk).or_default().insert(v);
            }
        }
        b.holds("census=pushforward", &pushed == cq.counts());
        b.check("nontrivial-in-H", 0, preimages.get(&0).map_or(0, |s| s.len()));
        let sizes: BTreeSet<usize> = preimages.iter().filter(|(&k, _)| k != 0).map(|(_, s)| s.len()).collect();
        b.check("{|A_h|}", set_string(1..=n), set_string(&sizes));
        let proportional = preimages
            .iter()
            .filter(|(&k, _)| k != 0)
            .all(|(k, s)| BigUint::from(cq.counts()[k]) == BigUint::from(s.len()) * &base);
        b.holds("fiber=|A_h|*base", proportional);
        b.check("|P|", n, cq.p_set().1);
        let fibers: Vec<BigUint> = cq.p_set().0.iter().map(FactoredCount::value).collect();
        let ratios: Vec<String> = fibers.iter().map(|f| ratio(f.clone(), fibers[0].clone())).map(|s| s.trim_end_matches("/1").to_string()).collect();
        b.check("fiber-ratio", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(":"), ratios.join(":"));
        // A-lists of block base commutators: {h^k} merged with {h'^(-k)} for each partner pair.
        for t in 1..n {
            let bb = block_base(t);
            for k in 1..p {
                let head = ito_basis(m + 1, bb, bb + 1).scaled(fp, k);
                let mut expected: BTreeSet<FpVector> = BTreeSet::from([head.clone()]);
                for j in 1..=t {
                    expected.insert(ito_basis(m + 1, bb + 2 * j, bb + 2 * j + 1).scaled(fp, p - k));
                }
                let qk = qcodec.pack(&qmap.project(fp, &head)?);
                let got = preimages.get(&qk).cloned().unwrap_or_default();
                b.check(&format!("A([a{},a{}]^{k})", bb + 1, bb + 2), set_string(&expected), set_string(&got));
            }
        }
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        preimages.iter().filter(|(&k, _)| k != 0).for_each(|(_, s)| *mult.entry(s.len()).or_insert(0) += 1);
        let weighted: usize = mult.iter().map(|(s, c)| s * c).sum();
        b.check("sum|A_h|=|K(G_m)|-1", ca.k_size() - 1, weighted);
        b.note(format!(
            "classes by |A_h|: {}",
            mult.iter().map(|(s, c)| format!("{s}:{c}")).collect::<Vec<_>>().join(", ")
        ));
    } else {
        let mut values = Vec::new();
        for (name, size, i, j) in witness_targets(n) {
            let target = qmap.project(fp, &ito_basis(m + 1, i, j))?;
            let wf = census::witness_fiber(&q, &target)?;
            b.check(&format!("witness{name}"), FactoredCount::new(p, BigUint::from(size) * &base, 0), &wf);
            values.push(wf.value());
        }
        let distinct: BTreeSet<&BigUint> = values.iter().collect();
        b.check("distinct-witness-fibers", n, distinct.len());
        let ratios: Vec<String> =
            values.iter().map(|v| ratio(v.clone(), values[0].clone())).map(|s| s.trim_end_matches("/1").to_string()).collect();
        b.check("fiber-ratio", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(":"), ratios.join(":"));
        b.note(format!("|P| >= {n} established by witnesses; exact |P| = {n} needs a census of K(G) and is not verified"));
    }
    Ok(b.finish())
}

/// The class-3 group of order `p^5`: `Pr_1`, `Pr_g`, `K(G) = G'`, the
/// structure checks, `H_g` and the product witnesses.
pub fn verify_theorem2(p: u32, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut b = Builder::new("theorem2", &[("p", p.to_string())], Mode::Exact, cfg.timing);
    let g = match build_free_class3(p) {
        Ok(g) => g,
        Err(Error::UnsupportedPrime { reason, .. }) => return Ok(b.skip(reason)),
        Err(e) => return Err(e),
    };
    let c = census::census_class3(&g)?;
    let (pb, one) = (BigUint::from(p), BigUint::from(1u32));
    let p2 = &pb * &pb;
    let p3 = &p2 * &pb;
    let p5 = pow(p, 5);

    b.check("pr(1)", ratio(&p3 + &p2 - &one, p5.clone()), c.pr_of_key(0));
    let prs: BTreeSet<String> = c.counts().keys().filter(|&&k| k != 0).map(|&k| c.pr_of_key(k).to_string()).collect();
    b.check("pr(g!=1)", set_string([ratio(&p2 - &one, p5.clone())]), set_string(prs));
    b.check("fiber(1)", FactoredCount::new(p, &p3 + &p2 - &one, 5), c.fiber_of_key(0));
    b.check("fiber(g!=1)", set_string([FactoredCount::new(p, &p2 - &one, 5)]), nontrivial_fibers(&c));
    b.check("nontrivial-values", &p3 - &one, c.k_size() - 1);
    b.holds("K(G)=G'", k_equals_derived(&g, &c));
    b.check("|P|", 1, c.p_set().1);
    let gap = c.pr_of_key(0).value() - c.pr_of_key(c.counts().keys().copied().find(|&k| k != 0).unwrap_or(0)).value();
    b.check("pr(1)-pr(g)", ratio(p3.clone(), p5.clone()), format!("{}/{}", gap.numer(), gap.denom()));
    b.holds("pr(1)-pr(g)>=1/[G:Z]", c.check_pr_gap());

    for check in g.cardinality_report().checks.iter().chain(g.structure_report().checks.iter()) {
        b.holds(check.id, check.pass);
    }

    let tz = census::tz_census_class3(&g)?;
    b.holds("tz(g)>=p^2-1", c.counts().keys().filter(|&&k| k != 0).all(|k| tz.get(k).is_some_and(|&t| BigUint::from(t) >= &p2 - &one)));
    b.check("pr-from-tz-mismatches", 0, census::tz_mismatches(&c, &tz, 2).len());
    let central_reached = central_in_derived_commutators(&g);
    b.holds("central-g-in-[G',x]", central_reached);

    let outside: Vec<&FpVector> = g.coset_reps().iter().filter(|x| !g.in_derived(x)).collect();
    let mut hg_index = BTreeSet::new();
    let mut hg_agree = true;
    for x in &outside {
        hg_index.insert(g.hg_subgroup(x)?.index_over_center());
        hg_agree &= g.hg_commutators_agree(x)?;
    }
    b.check("[H_g:Z]", set_string([&p2]), set_string(&hg_index));
    b.holds("[G',y]=[G',g] on H_g", hg_agree);
    let expected_pairs = (&p2 - &one) * (&p3 - &p2);
    b.check("product-witnesses", expected_pairs, g.product_witness_exhaustive()?);
    Ok(b.finish())
}

fn k_equals_derived(g: &Class3Group, c: &FiberCensus) -> bool {
    let codec = c.codec();
    let off = c.key_offset();
    let derived: BTreeSet<u64> = g.derived_elements().iter().map(|d| codec.pack(&d[off..])).collect();
    let keys: BTreeSet<u64> = c.counts().keys().copied().collect();
    derived == keys
}

/// Every central `g != 1` is `[d, x]` for some `d` in `G'` and `x` outside `G'`.
fn central_in_derived_commutators(g: &Class3Group) -> bool {
    let mut reached = BTreeSet::new();
    for x in g.coset_reps().iter().filter(|x| !g.in_derived(x)) {
        reached.extend(g.commutators_into(g.derived_elements(), x));
    }
    g.derived_elements().iter().filter(|d| g.in_center(d) && !d.is_zero()).all(|z| reached.contains(z))
}

#[derive(Clone, Debug)]
enum Job {
    Ito(u32, usize),
    Lemma31(u32, usize, Vec<Vec<u32>>),
    Lemma32(u32, Vec<Vec<u32>>),
    Theorem1(u32, usize, Mode),
    Theorem2(u32),
}

impl Job {
    fn p(&self) -> u32 {
        match self {
            Job::Ito(p, _) | Job::Lemma31(p, ..) | Job::Lemma32(p, _) | Job::Theorem1(p, ..) | Job::Theorem2(p) => *p,
        }
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<VerifyReport> {
        match self {
            Job::Ito(p, r) => verify_ito(*p, *r, cfg),
            Job::Lemma31(p, gens, pats) => verify_lemma31(*p, *gens, pats, cfg),
            Job::Lemma32(p, pats) => verify_lemma32(*p, pats, cfg),
            Job::Theorem1(p, n, mode) => verify_theorem1(*p, *n, *mode, cfg),
            Job::Theorem2(p) => verify_theorem2(*p, cfg),
        }
    }
}

fn default_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)].into_iter().map(|(p, r)| Job::Ito(p, r)).collect();
    jobs.push(Job::Lemma31(3, 4, nonzero_patterns(3, 2)));
    jobs.push(Job::Lemma31(3, 6, [nonzero_patterns(3, 2), nonzero_patterns(3, 3)].concat()));
    jobs.push(Job::Lemma32(3, nonzero_patterns(3, 3)));
    jobs.push(Job::Theorem1(3, 2, Mode::Exact));
    jobs.push(Job::Theorem1(3, 3, Mode::Witness));
    jobs.push(Job::Theorem2(5));
    jobs.push(Job::Theorem2(7));
    jobs
}

/// Runs the default suite, sorted by claim and parameters.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<VerifyReport>> {
    let mut jobs = default_jobs();
    if let Some(p) = cfg.restrict_p {
        jobs.retain(|j| j.p() == p);
        if p < 5 {
            jobs.push(Job::Theorem2(p));
        }
    }
    let mut reports = jobs.par_iter().map(|j| j.run(cfg)).collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| (&a.claim, &a.params).cmp(&(&b.claim, &b.params)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn ito_small_cases_pass() {
        for (p, r) in [(3, 1), (3, 2), (5, 1)] {
            let rep = verify_ito(p, r, &cfg()).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        }
        let rep = verify_ito(3, 1, &cfg()).unwrap();
        assert_eq!(rep.computed["fiber(1)"], "11*3^3");
        assert_eq!(rep.computed["fiber(g!=1)"], "{8*3^3}");
        assert_eq!(rep.computed["|K|-1"], "2");
    }

    #[test]
    fn ito_skips_beyond_work_limit() {
        let rep = verify_ito(3, 9, &cfg()).unwrap();
        assert_eq!((rep.verdict, rep.mode), (Verdict::Skipped, Mode::Skipped));
    }

    #[test]
    fn fault_injection_fails_named_checks() {
        let c = VerifyConfig { fault: Some(Fault::ItoTensor), ..cfg() };
        let rep = verify_ito(3, 1, &c).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(rep.failures().contains(&"conjugate-type".to_string()));
    }

    #[test]
    fn lemma31_small() {
        let rep = verify_lemma31(3, 4, &nonzero_patterns(3, 2), &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        assert_eq!(rep.computed["absent(1,1)"], "false");
        assert_eq!(rep.computed["control-present(k=1,i=1)"], "true");
        assert!(verify_lemma31(3, 4, &[vec![1, 0]], &cfg()).is_err());
        assert!(verify_lemma31(3, 3, &[], &cfg()).is_err());
    }

    #[test]
    fn patterns_enumerate() {
        assert_eq!(nonzero_patterns(3, 2), vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(nonzero_patterns(5, 3).len(), 64);
    }

    #[test]
    fn theorem1_exact_n2() {
        let rep = verify_theorem1(3, 2, Mode::Exact, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:?}");
        assert_eq!(rep.computed["fiber-ratio"], "1:2");
        assert!(verify_theorem1(3, 1, Mode::Exact, &cfg()).is_err());
        assert!(verify_theorem1(3, 4, Mode::Witness, &cfg()).is_err());
    }

    #[test]
    fn theorem2_skipped_below_five() {
        let rep = verify_theorem2(3, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Skipped);
    }

    #[test]
    fn report_json_omits_millis_without_timing() {
        let rep = verify_ito(3, 1, &cfg()).unwrap();
        assert!(!rep.to_json().unwrap().contains("millis"));
        let rep = verify_ito(3, 1, &VerifyConfig { timing: true, ..cfg() }).unwrap();
        assert!(rep.to_json().unwrap().contains("millis"));
    }
}
