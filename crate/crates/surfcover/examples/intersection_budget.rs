//! Local intersection numbers of the two bundled curves at their six
//! assigned points, cross-checked against the resolution-based product
//! formula and against Bezout. The one unit missing from 6*7 is the
//! extra node the union picks up away from the configuration.

use surfcover::poly::{intersection_multiplicity, Intersection};
use surfcover::scenario::load_spec;
use surfcover::singularity::noether_intersection;

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    let c6 = spec.curve("C6").expect("sextic");
    let c7 = spec.curve("C7").expect("septic");

    let mut total = 0;
    for name in ["p0", "p1", "p2", "p3", "p4", "p5"] {
        let p = spec.point(name).expect("fixture point");
        let local = match intersection_multiplicity(c6, c7, p).expect("computes") {
            Intersection::Finite(v) => v,
            Intersection::Infinite => unreachable!("the curves share no component"),
        };
        let oracle = noether_intersection(c6, c7, p).expect("product formula");
        assert_eq!(local, oracle);
        println!("I_{name}(C6, C7) = {local}");
        total += local;
    }
    let bezout = 6 * 7;
    println!("total {total} of {bezout}, residual {}", bezout - total);
}
