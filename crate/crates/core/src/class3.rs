//! The class-3 stem group of order `p^5` and conjugate type `(1, p^2)`.
//!
//! Generators `a, b` (weight 1), `h = [a, b]` (weight 2), `z1 = [h, a]` and
//! `z2 = [h, b]` (weight 3, central). For `p >= 5` this is the relatively free
//! rank-2 group of class 3 and exponent p. `A = <a>` and `B = <b>` play the
//! roles of the two complementary generator sets.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf::{FpVector, Subspace};
use crate::pcgroup::{Element, PcGroup};

pub const GEN_A: usize = 0;
pub const GEN_B: usize = 1;
pub const GEN_H: usize = 2;
pub const GEN_Z1: usize = 3;
pub const GEN_Z2: usize = 4;

const NGENS: usize = 5;

/// The raw presentation at any prime, without consistency or invariant checks.
pub fn class3_table(p: u32) -> Result<PcGroup> {
    let mut table = vec![vec![0u32; NGENS]; NGENS * (NGENS - 1) / 2];
    // Serialization order (1,0), (2,0), (2,1), ...
    table[0][GEN_H] = p - 1; // [b, a] = h^-1
    table[1][GEN_Z1] = 1; // [h, a] = z1
    table[2][GEN_Z2] = 1; // [h, b] = z2
    PcGroup::new(p, vec![1, 1, 2, 3, 3], table)
}

#[derive(Clone, Debug)]
pub struct Class3Group {
    pc: PcGroup,
    center: Subspace,
    derived: Subspace,
    coset_reps: Vec<Element>,
    derived_elements: Vec<Element>,
}

pub fn build_free_class3(p: u32) -> Result<Class3Group> {
    crate::gf::Fp::new(p)?;
    if p < 5 {
        let reason = match class3_table(p) {
            Ok(g) if !g.consistency_check() => "p >= 5 required (the class-3 presentation is inconsistent here)",
            _ => "p >= 5 required",
        };
        return Err(Error::UnsupportedPrime { p, reason: reason.into() });
    }
    Class3Group::from_pc(class3_table(p)?)
}

impl Class3Group {
    /// Wraps a presentation, asserting every structural invariant of the group.
    pub fn from_pc(pc: PcGroup) -> Result<Self> {
        let p = pc.p();
        let fail = |what: &str| Err(Error::Verification(format!("class-3 group at p = {p}: {what}")));
        if pc.ngens() != NGENS || pc.weights() != [1, 1, 2, 3, 3] {
            return fail("expected generators a, b, h, z1, z2 of weights 1, 1, 2, 3, 3");
        }
        if !pc.consistency_check() {
            return fail("presentation is inconsistent");
        }
        let center = pc.center();
        let derived = pc.derived_subgroup();
        if center != Subspace::coordinates(NGENS, &[GEN_Z1, GEN_Z2]) {
            return fail("center is not <z1, z2>");
        }
        if derived != Subspace::coordinates(NGENS, &[GEN_H, GEN_Z1, GEN_Z2]) {
            return fail("derived subgroup is not <h, z1, z2>");
        }
        let g = |i| pc.generator(i);
        if pc.commutator(&g(GEN_A), &g(GEN_B)) != g(GEN_H)
            || pc.commutator(&g(GEN_H), &g(GEN_A)) != g(GEN_Z1)
            || pc.commutator(&g(GEN_H), &g(GEN_B)) != g(GEN_Z2)
        {
            return fail("defining commutators do not hold");
        }
        let coset_reps = pc.transversal();
        let derived_elements = center_cosets(p, &[GEN_H, GEN_Z1, GEN_Z2]);
        let group = Class3Group { pc, center, derived, coset_reps, derived_elements };
        if group.pc.conjugate_type() != BTreeSet::from([1, (p as u64).pow(2)]) {
            return fail("conjugate type is not (1, p^2)");
        }
        Ok(group)
    }

    pub fn pc(&self) -> &PcGroup {
        &self.pc
    }

    pub fn p(&self) -> u32 {
        self.pc.p()
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn derived(&self) -> &Subspace {
        &self.derived
    }

    /// Representatives of `G / Z(G)`: all `a^i b^j h^k`.
    pub fn coset_reps(&self) -> &[Element] {
        &self.coset_reps
    }

    /// Every element of `G'`.
    pub fn derived_elements(&self) -> &[Element] {
        &self.derived_elements
    }

    pub fn element(&self, exps: [u32; NGENS]) -> Element {
        let p = self.p();
        exps.iter().map(|&e| e % p).collect::<Vec<_>>().into()
    }

    pub fn in_center(&self, x: &Element) -> bool {
        self.center.contains(self.pc.field(), x).expect("element length")
    }

    pub fn in_derived(&self, x: &Element) -> bool {
        self.derived.contains(self.pc.field(), x).expect("element length")
    }

    fn a_span(&self) -> Vec<Element> {
        (0..self.p()).map(|k| self.element([k, 0, 0, 0, 0])).collect()
    }

    fn b_span(&self) -> Vec<Element> {
        (0..self.p()).map(|k| self.element([0, k, 0, 0, 0])).collect()
    }

    fn center_elements(&self) -> BTreeSet<Element> {
        center_cosets(self.p(), &[GEN_Z1, GEN_Z2]).into_iter().collect()
    }

    fn axis(&self, gen: usize) -> BTreeSet<Element> {
        (0..self.p()).map(|k| self.pc.generator(gen).scaled(self.pc.field(), k)).collect()
    }

    /// `{[x, y] : y in ys}`.
    pub fn commutators_with(&self, x: &Element, ys: &[Element]) -> BTreeSet<Element> {
        ys.iter().map(|y| self.pc.commutator(x, y)).collect()
    }

    /// `{[y, x] : y in ys}`.
    pub fn commutators_into(&self, ys: &[Element], x: &Element) -> BTreeSet<Element> {
        ys.iter().map(|y| self.pc.commutator(y, x)).collect()
    }

    /// `[x, G]`.
    pub fn commutator_set(&self, x: &Element) -> BTreeSet<Element> {
        self.commutators_with(x, &self.coset_reps)
    }

    /// Structural checks, each by exhaustive enumeration.
    pub fn structure_report(&self) -> StructureReport {
        let pc = &self.pc;
        let fp = pc.field();
        let a_set = self.a_span();
        let b_set = self.b_span();
        let nontrivial = |s: &[Element]| s[1..].to_vec();
        let noncentral_derived: Vec<Element> =
            self.derived_elements.iter().filter(|h| !self.in_center(h)).cloned().collect();
        let z1 = self.axis(GEN_Z1);
        let z2 = self.axis(GEN_Z2);
        let z = self.center_elements();
        let mut checks = Vec::new();

        let within = |s: &[Element]| s.iter().all(|x| s.iter().all(|y| self.in_center(&pc.commutator(x, y))));
        checks.push(StructureCheck::new("within-a-b", "[x, y] in Z(G) for x, y both in A or both in B", within(&a_set) && within(&b_set)));

        let across = nontrivial(&a_set)
            .iter()
            .all(|x| nontrivial(&b_set).iter().all(|y| !self.in_center(&pc.commutator(x, y))));
        checks.push(StructureCheck::new("across-a-b", "[x, y] not in Z(G) for 1 != x in A, 1 != y in B", across));

        let generates = |vals: Vec<Element>| {
            let s = Subspace::span(fp, NGENS, &vals).expect("length");
            s.join(fp, &self.center).expect("length") == self.derived
        };
        let a_gen = nontrivial(&a_set).iter().all(|a| generates(vec![pc.commutator(a, &pc.generator(GEN_B))]));
        checks.push(StructureCheck::new("a-generates", "{[a, b_i]} generates G' over Z(G) for every 1 != a in A", a_gen));
        let b_gen = nontrivial(&b_set).iter().all(|b| generates(vec![pc.commutator(&pc.generator(GEN_A), b)]));
        checks.push(StructureCheck::new("b-generates", "{[a_i, b]} generates G' over Z(G) for every 1 != b in B", b_gen));

        let z1_ok = noncentral_derived.iter().all(|h| self.commutators_with(h, &a_set) == z1)
            && nontrivial(&a_set).iter().all(|a| self.commutators_with(a, &self.derived_elements) == z1);
        checks.push(StructureCheck::new("z1-sets", "[h, A] = Z1 = [a, G'] for h in G' \\ Z(G), 1 != a in A", z1_ok));
        let z2_ok = noncentral_derived.iter().all(|h| self.commutators_with(h, &b_set) == z2)
            && nontrivial(&b_set).iter().all(|b| self.commutators_with(b, &self.derived_elements) == z2);
        checks.push(StructureCheck::new("z2-sets", "[h, B] = Z2 = [b, G'] for h in G' \\ Z(G), 1 != b in B", z2_ok));

        let derived_ok = noncentral_derived.iter().all(|h| self.commutator_set(h) == z);
        checks.push(StructureCheck::new("derived-sets", "[h, G] = Z(G) for every h in G' \\ Z(G)", derived_ok));

        StructureReport { checks }
    }

    /// Cardinality checks: `|Z| = p^2`, `[G' : Z] = p`, `[G : G'] = p^2`, and
    /// for every noncentral `x`, `|x^G| = p^2` and `[C_G(x) : Z] = p`.
    pub fn cardinality_report(&self) -> StructureReport {
        let p = self.p() as u64;
        let mut checks = vec![
            StructureCheck::new("center-order", "|Z(G)| = p^2", self.center.dim() == 2),
            StructureCheck::new("derived-index", "[G' : Z(G)] = p", self.derived.dim() - self.center.dim() == 1),
            StructureCheck::new("abelianization", "[G : G'] = p^2", NGENS - self.derived.dim() == 2),
        ];
        let mut classes_ok = true;
        let mut centralizers_ok = true;
        let id = self.pc.identity();
        for x in self.coset_reps.iter().filter(|x| !x.is_zero()) {
            let comms: Vec<Element> = self.coset_reps.iter().map(|y| self.pc.commutator(x, y)).collect();
            let distinct: BTreeSet<&Element> = comms.iter().collect();
            classes_ok &= distinct.len() as u64 == p * p;
            centralizers_ok &= comms.iter().filter(|c| **c == id).count() as u64 == p;
        }
        checks.push(StructureCheck::new("class-size", "|x^G| = p^2 for every noncentral x", classes_ok));
        checks.push(StructureCheck::new("centralizer-index", "[C_G(x) : Z(G)] = p for every noncentral x", centralizers_ok));
        StructureReport { checks }
    }

    /// `H_x`: the preimage of the centralizer of `xZ` in `G / Z`.
    pub fn hg_subgroup(&self, x: &Element) -> Result<HgSubgroup> {
        if self.in_derived(x) {
            return Err(Error::Usage(format!("H_g needs g outside G', got {x}")));
        }
        let coset_reps = self
            .coset_reps
            .iter()
            .filter(|y| self.in_center(&self.pc.commutator(y, x)))
            .cloned()
            .collect();
        Ok(HgSubgroup { defining: x.clone(), coset_reps })
    }

    /// `[G', y] = [G', g]` for every `y` in `H_g \ G'`.
    pub fn hg_commutators_agree(&self, g: &Element) -> Result<bool> {
        let hg = self.hg_subgroup(g)?;
        let target = self.commutators_into(&self.derived_elements, g);
        Ok(hg
            .coset_reps
            .iter()
            .filter(|y| !self.in_derived(y))
            .all(|y| self.commutators_into(&self.derived_elements, y) == target))
    }

    /// Finds `h*` in `G'` and `y` with `[ab h*, y] = h_target`.
    pub fn product_witness(&self, h_target: &Element, ab: &Element) -> Result<(Element, Element)> {
        if !self.in_derived(h_target) || self.in_center(h_target) {
            return Err(Error::Usage(format!("target {h_target} must lie in G' \\ Z(G)")));
        }
        if ab.is_zero() || ab[GEN_H..].iter().any(|&e| e != 0) {
            return Err(Error::Usage(format!("{ab} is not a nontrivial product a^i b^j")));
        }
        for hstar in &self.derived_elements {
            let x = self.pc.multiply(ab, hstar);
            for y in &self.coset_reps {
                if &self.pc.commutator(&x, y) == h_target {
                    return Ok((hstar.clone(), y.clone()));
                }
            }
        }
        Err(Error::Verification(format!("no h* with {h_target} in [{ab} h*, G]")))
    }

    /// Every pair `(h, ab)` with `h` in `G' \ Z(G)` and `1 != ab`, `a in A`,
    /// `b in B`, admits a witness. Returns the number of pairs checked.
    pub fn product_witness_exhaustive(&self) -> Result<usize> {
        let p = self.p();
        let targets: Vec<&Element> = self.derived_elements.iter().filter(|h| !self.in_center(h)).collect();
        let mut checked = 0;
        for i in 0..p {
            for j in 0..p {
                if i == 0 && j == 0 {
                    continue;
                }
                let ab = self.pc.multiply(&self.element([i, 0, 0, 0, 0]), &self.element([0, j, 0, 0, 0]));
                let mut reached: HashMap<Element, ()> = HashMap::new();
                for hstar in &self.derived_elements {
                    let x = self.pc.multiply(&ab, hstar);
                    for c in self.commutator_set(&x) {
                        reached.insert(c, ());
                    }
                }
                for h in &targets {
                    if !reached.contains_key(*h) {
                        return Err(Error::Verification(format!("no witness for h = {h}, ab = {ab}")));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}

/// All vectors supported on `coords`, each coordinate in `0..p`.
fn center_cosets(p: u32, coords: &[usize]) -> Vec<Element> {
    let mut out = vec![FpVector::zeros(NGENS)];
    for &c in coords {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |k| {
                    let mut w = v.clone();
                    w[c] = k;
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgSubgroup {
    pub defining: Element,
    /// Representatives modulo `Z(G)`.
    pub coset_reps: Vec<Element>,
}

impl HgSubgroup {
    /// `[H_g : Z(G)]`.
    pub fn index_over_center(&self) -> usize {
        self.coset_reps.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub pass: bool,
}

impl StructureCheck {
    fn new(id: &'static str, description: &'static str, pass: bool) -> Self {
        StructureCheck { id, description, pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}
