//! Run the axiom suite and print its table.

use qskein::axioms::run_all;

fn main() {
    let degree = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run_all(degree, 10, 42);
    print!("{}", report.table());
    println!("all as expected: {}", report.all_as_expected());
}
