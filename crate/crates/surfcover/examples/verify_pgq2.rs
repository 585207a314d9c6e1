//! Full verification of the p_g = q = 2 construction: two members of a
//! pencil of mutually tangent conics, four lines through a common point
//! and a derived tangent line produce a bidouble cover whose minimal
//! model is checked through its abelian quotient.

use std::process::ExitCode;

use surfcover::scenario::run_scenario;

fn main() -> ExitCode {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed is a u64"))
        .unwrap_or(0);
    let report = run_scenario("pgq2", seed, None).expect("bundled fixture runs");
    print!("{}", report.render_text());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
