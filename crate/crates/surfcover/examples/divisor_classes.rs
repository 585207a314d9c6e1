//! Divisor arithmetic on the blown-up plane for the p_g = q = 0
//! construction: strict transform classes computed from the curves
//! themselves, the canonical class, and the three linear equivalences
//! that make the branch data a valid bidouble cover.

use surfcover::picard::{canonical_class, check_bidouble_data, strict_transform_class, BlowupConfiguration};
use surfcover::scenario::load_spec;

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    let cfg = BlowupConfiguration::new(spec.build_centers().expect("centers build"))
        .expect("configuration is consistent");

    // Multiplicities along all ten centers are read off the curves, not
    // transcribed: the computed class must match the declared one.
    for name in ["C6", "C7"] {
        let curve = spec.curve(name).expect("fixture curve");
        let computed = strict_transform_class(curve, &cfg).expect("transform computes");
        let declared = spec.class(&format!("{name}hat"), &cfg).expect("fixture class");
        assert_eq!(computed, declared);
        println!(
            "{name}hat = {}  (square {})",
            computed.describe(&cfg),
            computed.self_intersection()
        );
    }

    let k = canonical_class(&cfg);
    println!("K = {}", k.describe(&cfg));

    let d = [
        spec.class("D1", &cfg).unwrap(),
        spec.class("D2", &cfg).unwrap(),
        spec.class("D3", &cfg).unwrap(),
    ];
    let l = [
        spec.class("L1", &cfg).unwrap(),
        spec.class("L2", &cfg).unwrap(),
        spec.class("L3", &cfg).unwrap(),
    ];
    let report = check_bidouble_data(&d, &l).expect("classes share the configuration");
    for (identity, holds) in &report.identities {
        println!("{identity}: {holds}");
    }
    assert!(report.all_hold());
}
