//! Full verification of the p_g = q = 0 construction: a sextic and a
//! septic with matched tacnodes branch a bidouble cover whose minimal
//! model has chi = 1 and K^2 = 7.

use std::process::ExitCode;

use surfcover::scenario::run_scenario;

fn main() -> ExitCode {
    let report = run_scenario("pgq0", 0, None).expect("bundled fixture runs");
    print!("{}", report.render_text());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
