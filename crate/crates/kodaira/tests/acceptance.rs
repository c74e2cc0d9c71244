//! Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

use kodaira::acceptance::run_all;
use kodaira::par::Exec;

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(Exec::Parallel);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
