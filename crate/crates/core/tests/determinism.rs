use pcensus_core::groupfile::GroupFile;
use pcensus_core::verify::{self, Mode, VerifyConfig};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn same_for_all_pools(f: impl Fn() -> Vec<String> + Sync) {
    let base = in_pool(1, &f);
    for threads in [4, 8] {
        assert_eq!(in_pool(threads, &f), base, "{threads} workers");
    }
}

#[test]
fn census_json_is_independent_of_workers() {
    let files = [
        GroupFile::ito(3, 3).unwrap(),
        GroupFile::ito(5, 2).unwrap(),
        GroupFile::theorem1(3, 2).unwrap(),
        GroupFile::class3(5).unwrap(),
    ];
    same_for_all_pools(|| files.iter().map(|f| f.group.census().unwrap().to_json(&f.group_id()).unwrap()).collect());
}

#[test]
fn reports_are_independent_of_workers() {
    let cfg = VerifyConfig::default();
    same_for_all_pools(|| {
        [
            verify::verify_ito(3, 3, &cfg).unwrap(),
            verify::verify_theorem1(3, 2, Mode::Exact, &cfg).unwrap(),
            verify::verify_lemma32(3, &verify::nonzero_patterns(3, 3), &cfg).unwrap(),
        ]
        .iter()
        .map(|r| r.to_json().unwrap())
        .collect()
    });
}

#[test]
fn restricted_suite_skips_class3() {
    let reports = verify::verify_all(&VerifyConfig { restrict_p: Some(3), ..Default::default() }).unwrap();
    let t2: Vec<_> = reports.iter().filter(|r| r.claim == "theorem2").collect();
    assert_eq!(t2.len(), 1);
    assert_eq!(t2[0].verdict, verify::Verdict::Skipped);
    assert!(reports.iter().all(|r| r.verdict != verify::Verdict::Fail));
    assert!(reports.iter().all(|r| r.params["p"] == "3"));
}

#[test]
fn injected_fault_names_failing_checks() {
    let cfg = VerifyConfig { restrict_p: Some(3), fault: Some(verify::Fault::ItoTensor), ..Default::default() };
    let reports = verify::verify_all(&cfg).unwrap();
    for r in &reports {
        if r.claim == "ito" {
            assert_eq!(r.verdict, verify::Verdict::Fail, "{r:?}");
            assert!(!r.failures().is_empty());
        } else {
            assert_ne!(r.verdict, verify::Verdict::Fail, "{r:?}");
        }
    }
}
