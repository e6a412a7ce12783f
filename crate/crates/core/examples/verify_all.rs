//! Verify every shipped record and print the summary.

use std::time::Instant;

use fibcat::engine::{verify_all, Selection, VerifyConfig};
use fibcat::seriesdsl::builtin_registry;

fn main() {
    let pattern = std::env::args().nth(1).unwrap_or_else(|| "*".into());
    let selection = Selection {
        id_glob: Some(glob::Pattern::new(&pattern).expect("glob")),
        include_printed: true,
        ..Selection::default()
    };
    let records = selection.apply(&builtin_registry());
    let t = Instant::now();
    let report = verify_all(&records, &VerifyConfig::default());
    for r in report.results.iter().filter(|r| r.as_printed || r.status != fibcat::engine::Status::Pass) {
        println!("{:?} {} {}", r.status, r.id, r.abs_diff.as_ref().map(|d| format!("{d:.3}")).unwrap_or_default());
    }
    let s = &report.summary;
    println!("{} results: {} pass, {} fail, {} error in {:.2?}", s.total, s.pass, s.fail, s.error, t.elapsed());
}
