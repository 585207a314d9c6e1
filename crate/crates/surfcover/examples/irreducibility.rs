//! Certifies absolute irreducibility of the bundled curves. The count
//! is the kernel dimension of the logarithmic-derivative system, so no
//! splitting field or factorization is ever constructed; 1 means the
//! curve stays irreducible over the algebraic closure.

use surfcover::poly::{absolute_factor_count, is_squarefree, parse_poly};
use surfcover::scenario::load_spec;

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    for name in ["C6", "C7"] {
        let curve = spec.curve(name).expect("fixture curve");
        assert!(is_squarefree(curve).expect("squarefree test runs"));
        let n = absolute_factor_count(curve).expect("count runs");
        println!(
            "{name}: squarefree, {n} absolute factor{}",
            if n == 1 { "" } else { "s" }
        );
    }

    // A control the count must see through: x^2 + y^2 is irreducible
    // over Q but splits as (x + iy)(x - iy) over the closure.
    let gauss = parse_poly("x^2+y^2", &["x", "y"]).unwrap();
    let n = absolute_factor_count(&gauss).expect("count runs");
    println!("x^2+y^2: {n} absolute factors");
    assert_eq!(n, 2);
}
