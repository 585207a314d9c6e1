//! The double-cover invariant table: for each ambient surface type the
//! branch data forced by B^2 = 16 and (2L)^2 = 16 - 2n lands on the
//! same pair chi = 1, K^2 = 7. The three rows are the three ways the
//! constructions in this crate reach their common invariants.

use surfcover::covers::{prop1_invariants, Ambient, Prop1Input};

fn main() {
    println!("{:<10} {:>3} {:>5} {:>5} {:>5}", "ambient", "n", "L^2", "chi", "K^2");
    for ambient in [Ambient::Abelian, Ambient::K3, Ambient::Enriques] {
        let input = Prop1Input::for_ambient(ambient);
        let inv = prop1_invariants(&input).expect("table row is consistent");
        println!(
            "{:<10} {:>3} {:>5} {:>5} {:>5}",
            format!("{ambient:?}"),
            input.n,
            input.l_square,
            inv.chi,
            inv.ksq
        );
        assert_eq!((inv.chi, inv.ksq), (1, 7));
    }

    // The preconditions are enforced, not assumed: a branch square away
    // from 16 is refused.
    let mut bad = Prop1Input::for_ambient(Ambient::K3);
    bad.b_square = 14;
    assert!(prop1_invariants(&bad).is_err());
    println!("\nrows with B^2 != 16 are rejected");
}
