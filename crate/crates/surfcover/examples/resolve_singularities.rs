//! Finds and resolves every singular point of the two bundled plane
//! curves, then derives each geometric genus from the delta invariants.
//! Both curves turn out to be elliptic: the sextic loses 9 from its
//! arithmetic genus 10, the septic loses 14 from 15.

use surfcover::scenario::load_spec;
use surfcover::singularity::{resolve_point, rational_singular_points, DEFAULT_DEPTH_CAP};

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    for name in ["C6", "C7"] {
        let curve = spec.curve(name).expect("fixture curve");
        let d = u64::from(curve.degree().expect("nonzero"));
        println!("{name} (degree {d})");

        let (points, complete) = rational_singular_points(curve).expect("search terminates");
        assert!(complete, "every singular point of {name} is rational over Q(i)");

        let mut delta_sum = 0;
        for (p, class) in &points {
            let tree = resolve_point(curve, p, DEFAULT_DEPTH_CAP).expect("resolution terminates");
            delta_sum += tree.delta();
            println!("  {p}  {class}  delta {}", tree.delta());
        }
        let arithmetic = (d - 1) * (d - 2) / 2;
        println!(
            "  genus = {arithmetic} - {delta_sum} = {}\n",
            arithmetic - delta_sum
        );
    }
}
