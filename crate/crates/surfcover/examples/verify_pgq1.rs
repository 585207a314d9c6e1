//! Full verification of the p_g = q = 1 construction. A quintic and a
//! sextic through a seeded general point are rebuilt from their linear
//! systems before any geometry is checked, so a fresh seed exercises a
//! genuinely new member of the family.

use std::process::ExitCode;

use surfcover::scenario::run_scenario;

fn main() -> ExitCode {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("seed is a u64"))
        .unwrap_or(0);
    let report = run_scenario("pgq1", seed, None).expect("bundled fixture runs");
    print!("{}", report.render_text());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
