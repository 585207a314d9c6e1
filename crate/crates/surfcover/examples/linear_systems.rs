//! Rebuilds both bundled curves from their singularity schemes alone.
//! Each scheme (multiplicities, tangent directions, infinitely near
//! double points) cuts linear conditions on the coefficient space, and
//! in both cases the kernel is a single curve: the one shipped.

use surfcover::linsys::{linear_system, BaseCondition};
use surfcover::scenario::load_spec;

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    for name in ["C6", "C7"] {
        let recipe = spec.system(name).expect("system recipe");
        let conds = spec.conditions(recipe).expect("conditions build");
        let rows: usize = conds.iter().map(BaseCondition::rows).sum();
        let sys = linear_system(recipe.degree, &conds).expect("system solves");
        println!(
            "degree {}: {} condition rows, rank {}, projective dimension {}",
            recipe.degree,
            rows,
            sys.matrix.rank(),
            sys.projective_dimension()
        );
        assert_eq!(sys.projective_dimension(), 0);
        let member = sys.member(0).expect("nonempty").monic();
        assert_eq!(member, spec.curve(name).unwrap().monic());
        println!("  the unique member is the bundled {name}");
    }
}
