//! End-to-end verification: every criterion in the check registry must pass
//! at its pinned tolerance. Prints one verdict line per criterion.

use hs_core::check::{run_suite, CheckConfig};

#[test]
fn acceptance() {
    let results = run_suite("all", &CheckConfig::default()).expect("suites run");
    assert_eq!(results.len(), 11, "every criterion must run");
    let mut all = true;
    for r in &results {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        println!("[{verdict}] {} ({:.1}s)", r.name, r.seconds);
        for rep in r.reports.iter().filter(|rep| !rep.pass) {
            println!("    failing: {}", rep.to_json_line());
        }
        all &= r.passed();
    }
    assert!(all, "some acceptance criteria failed");
}
