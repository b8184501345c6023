use pcensus_core::census::{self, FactoredCount};
use pcensus_core::class2::{build_ito, BiMapGroup};
use pcensus_core::class3::build_free_class3;
use pcensus_core::gf::FpVector;
use pcensus_core::groupfile::{Group, GroupFile};
use pcensus_core::pcgroup::{Element, PcGroup};
use proptest::prelude::*;
use std::sync::OnceLock;

fn class3() -> &'static PcGroup {
    static G: OnceLock<PcGroup> = OnceLock::new();
    G.get_or_init(|| build_free_class3(5).unwrap().pc().clone())
}

fn element(p: u32, n: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(0..p, n).prop_map(FpVector::from)
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    (element(5, 5), element(5, 5), element(5, 5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn commutator_inverse_swaps((x, y, _) in triple()) {
        let g = class3();
        prop_assert_eq!(g.inverse(&g.commutator(&x, &y)), g.commutator(&y, &x));
    }

    #[test]
    fn multiplication_is_associative((x, y, z) in triple()) {
        let g = class3();
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
    }

    #[test]
    fn hall_witt_identity((x, y, z) in triple()) {
        let g = class3();
        let conj = |a: &Element, b: &Element| g.multiply(&g.multiply(&g.inverse(b), a), b);
        let term = |x: &Element, y: &Element, z: &Element| conj(&g.commutator(&g.commutator(x, &g.inverse(y)), z), y);
        let prod = g.multiply(&g.multiply(&term(&x, &y, &z), &term(&y, &z, &x)), &term(&z, &x, &y));
        prop_assert!(prod.is_zero());
    }

    #[test]
    fn commutators_constant_on_central_cosets((x, y, _) in triple(), a in 0..5u32, b in 0..5u32, c in 0..5u32, d in 0..5u32) {
        let g = class3();
        let z = FpVector::from(vec![0, 0, 0, a, b]);
        let w = FpVector::from(vec![0, 0, 0, c, d]);
        prop_assert_eq!(g.commutator(&g.multiply(&x, &z), &g.multiply(&y, &w)), g.commutator(&x, &y));
    }

    #[test]
    fn every_element_has_order_p(x in element(5, 5)) {
        let g = class3();
        prop_assert!(g.pow(&x, 5).is_zero());
    }

    #[test]
    fn ito_pc_commutators_are_central(x in element(3, 6), y in element(3, 6), z in element(3, 6)) {
        let g = build_ito(3, 2).unwrap().to_pc().unwrap();
        let c = g.commutator(&x, &y);
        prop_assert!(g.commutator(&c, &z).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_class2_censuses_agree_with_oracle(seed in prop::collection::vec(0u32..3, 3 * 2)) {
        let tensor: Vec<FpVector> = seed.chunks(2).map(|c| c.to_vec().into()).collect();
        let g = BiMapGroup::new(3, 3, 2, tensor).unwrap();
        let fast = census::census_class2(&g).unwrap();
        let slow = census::census_bruteforce(&g.to_pc().unwrap(), census::DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(fast.fibers_by_vector(), slow.fibers_by_vector());
        prop_assert!(fast.check_total() && fast.check_pr_gap() && fast.check_center_divides());
    }

    #[test]
    fn witness_fiber_matches_census(seed in prop::collection::vec(0u32..5, 6 * 3)) {
        let tensor: Vec<FpVector> = seed.chunks(3).map(|c| c.to_vec().into()).collect();
        let g = BiMapGroup::new(5, 4, 3, tensor).unwrap();
        let c = census::census_class2(&g).unwrap();
        for (&k, &n) in c.counts() {
            prop_assert_eq!(census::witness_fiber(&g, &c.codec().unpack(k)).unwrap(), FactoredCount::from_u64(5, n));
        }
    }

    #[test]
    fn group_files_roundtrip(seed in prop::collection::vec(0u32..7, 10 * 2)) {
        let tensor: Vec<FpVector> = seed.chunks(2).map(|c| c.to_vec().into()).collect();
        let g = BiMapGroup::new(7, 5, 2, tensor).unwrap();
        let f = GroupFile::new(Group::Class2(g), "random", &[("p", "7".into())]);
        let text = f.to_json().unwrap();
        prop_assert_eq!(GroupFile::from_json(&text).unwrap().to_json().unwrap(), text);
    }
}
