//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//!
//! Build with --release; the end-to-end criterion simulates 1.5 million trials.

fn main() {
    let outcomes = nilgen::repro::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    if outcomes.iter().any(|o| !o.passed) {
        std::process::exit(1);
    }
}
