//! Intersection numbers upstairs on the bidouble cover, computed from
//! plane data alone. The eight (-2)-curves inside the branch locus of
//! the p_g = q = 0 construction each pull back to a pair of disjoint
//! (-1)-curves, giving the sixteen curves whose contraction reaches the
//! minimal model.

use surfcover::covers::{cover_gram, GeneratorDecl};
use surfcover::picard::BlowupConfiguration;
use surfcover::scenario::load_spec;

fn main() {
    let spec = load_spec("pgq0", None).expect("bundled fixture");
    let cfg = BlowupConfiguration::new(spec.build_centers().expect("centers build"))
        .expect("configuration is consistent");

    // Four tangent-line strict transforms and four exceptional tails,
    // all inside the branch divisor, each splitting into two components
    // of square -1 upstairs.
    let mut gens = Vec::new();
    for i in 1..=4usize {
        for name in [format!("T{i}s"), format!("EE{i}")] {
            let class = spec.class(&name, &cfg).expect("fixture class");
            gens.push(GeneratorDecl::branch(&format!("Xi{name}"), class).with_split(2, -1));
        }
    }

    let lattice = cover_gram(&gens, 4).expect("gram entries are integers");
    let labels = lattice.labels().to_vec();
    println!("pullback pairing of the branch (-2)-curves on the degree-4 cover:");
    for a in &labels {
        let row: Vec<String> = labels
            .iter()
            .map(|b| format!("{:>3}", lattice.pairing(a, b).unwrap()))
            .collect();
        println!("  {:<7} {}", a, row.join(""));
    }

    for a in &labels {
        for b in &labels {
            let want = if a == b { -2 } else { 0 };
            assert_eq!(lattice.pairing(a, b).unwrap(), want);
        }
    }
    println!(
        "\n{} generators, each a disjoint pair of (-1)-curves: {} curves to contract",
        labels.len(),
        2 * labels.len()
    );
}
