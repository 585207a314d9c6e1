//! Full resolution at a point and everything read off the tree.

use std::collections::VecDeque;

use crate::poly::intersect::{intersection_multiplicity, Intersection};
use crate::poly::{MultiPoly, PlanePoint};

use super::scene::{blow_up_local, cone_directions, plane_line, slope_poly, LocalCurve};
use super::{
    Direction, ResolutionTree, SingularityClass, SingularityError, TreeNode, DEFAULT_DEPTH_CAP,
};

/// Order of vanishing of `f` at `p`; 0 when the point is off the curve.
pub fn multiplicity_at(f: &MultiPoly, p: &PlanePoint) -> Result<u32, SingularityError> {
    Ok(LocalCurve::at_point(f, p)?.multiplicity())
}

/// Lowest homogeneous part of `f` in local coordinates at `p`, a binary
/// form in (x, y) whose factors are the tangent directions.
pub fn tangent_cone_at(f: &MultiPoly, p: &PlanePoint) -> Result<MultiPoly, SingularityError> {
    let c = LocalCurve::at_point(f, p)?;
    if c.multiplicity() == 0 {
        return Err(SingularityError::NotOnCurve);
    }
    Ok(c.tangent_cone())
}

struct Scene {
    curve: LocalCurve,
    node: usize,
    depth: usize,
    // Tree nodes owning the exceptional lines through the origin: the
    // vertical one is the line of the last blow-up, the horizontal one
    // an older line that matched the chosen direction.
    v_owner: Option<usize>,
    h_owner: Option<usize>,
}

/// A scene needs no further blow-up when the strict transform is smooth,
/// meets every exceptional line through the origin transversally, and
/// the origin is not a crossing point of two exceptional lines.
fn is_terminal(s: &Scene) -> bool {
    if s.curve.multiplicity() != 1 {
        return false;
    }
    if s.v_owner.is_some() && s.h_owner.is_some() {
        return false;
    }
    let cone = s.curve.tangent_cone();
    if cone.coeff(&[0, 1]).is_zero() {
        // Vertical tangent.
        s.v_owner.is_none()
    } else {
        let horizontal_tangent = cone.coeff(&[1, 0]).is_zero();
        !(horizontal_tangent && s.h_owner.is_some())
    }
}

/// Resolves the singularity of `f` at `p` by iterated blow-up, recording
/// the infinitely near points breadth-first until every branch is smooth
/// and crosses the exceptional locus normally.
pub fn resolve_point(
    f: &MultiPoly,
    p: &PlanePoint,
    depth_cap: usize,
) -> Result<ResolutionTree, SingularityError> {
    let curve = LocalCurve::at_point(f, p)?;
    let m = curve.multiplicity();
    if m == 0 {
        return Err(SingularityError::NotOnCurve);
    }
    let mut nodes = vec![TreeNode {
        id: 0,
        parent: None,
        multiplicity: m,
        direction: None,
        proximate_to: Vec::new(),
        weight: 1,
    }];
    let mut queue = VecDeque::new();
    queue.push_back(Scene {
        curve,
        node: 0,
        depth: 0,
        v_owner: None,
        h_owner: None,
    });
    while let Some(s) = queue.pop_front() {
        if is_terminal(&s) {
            continue;
        }
        if s.depth == depth_cap {
            return Err(SingularityError::DepthCapExceeded(depth_cap));
        }
        for cd in cone_directions(&s.curve)? {
            let id = nodes.len();
            if let Direction::Unsplit { .. } = cd.dir {
                // A simple irrational direction carries one smooth point
                // per conjugate, transverse to the exceptional line and
                // away from every older one; nothing left to do there.
                nodes.push(TreeNode {
                    id,
                    parent: Some(s.node),
                    multiplicity: 1,
                    direction: Some(cd.dir),
                    proximate_to: vec![s.node],
                    weight: cd.weight,
                });
                continue;
            }
            let child = blow_up_local(&s.curve, &cd.dir)?;
            let h_owner = match &cd.dir {
                Direction::Vertical => s.v_owner,
                Direction::Slope(t) if t.is_zero() => s.h_owner,
                _ => None,
            };
            let mut proximate_to = vec![s.node];
            if let Some(older) = h_owner {
                proximate_to.push(older);
            }
            proximate_to.sort_unstable();
            nodes.push(TreeNode {
                id,
                parent: Some(s.node),
                multiplicity: child.multiplicity(),
                direction: Some(cd.dir),
                proximate_to,
                weight: 1,
            });
            queue.push_back(Scene {
                curve: child,
                node: id,
                depth: s.depth + 1,
                v_owner: Some(s.node),
                h_owner,
            });
        }
    }
    let tree = ResolutionTree::new(nodes);
    debug_assert!(tree.proximity_holds());
    debug_assert!(tree.multiplicities_non_increasing());
    Ok(tree)
}

fn cone_is_squarefree(cone: &MultiPoly) -> bool {
    let m = cone.degree().expect("tangent cone is nonzero") as usize;
    let psi = slope_poly(cone);
    let deg = psi.degree().expect("slope polynomial is nonzero");
    if m - deg > 1 {
        return false; // repeated vertical direction
    }
    psi.gcd(&psi.derivative()).degree() == Some(0)
}

/// Names the singularity of `f` at `p`. Points outside the named classes
/// come back as `General` with their resolution tree attached.
pub fn classify_singularity(
    f: &MultiPoly,
    p: &PlanePoint,
) -> Result<SingularityClass, SingularityError> {
    let tree = resolve_point(f, p, DEFAULT_DEPTH_CAP)?;
    let m = tree.root().multiplicity;
    if m == 1 {
        return Ok(SingularityClass::Smooth);
    }
    let cone = LocalCurve::at_point(f, p)?.tangent_cone();
    if cone_is_squarefree(&cone) {
        // Distinct tangents, one smooth transverse branch each. The
        // squarefree test never needs the tangents themselves, so
        // conjugate irrational pairs are fine.
        return Ok(if m == 2 {
            SingularityClass::Node
        } else {
            SingularityClass::OrdinaryMultiple(m)
        });
    }
    let kids = tree.children(0);
    if kids.len() == 1 && kids[0].weight == 1 && kids[0].multiplicity >= 2 {
        // Single tangent direction, so the cone is a pure power of one
        // line; see whether the infinitely near point is ordinary.
        let child = kids[0];
        let grandkids = tree.children(child.id);
        let all_settled = !grandkids.is_empty()
            && grandkids
                .iter()
                .all(|n| n.multiplicity == 1 && tree.children(n.id).is_empty());
        let span: u32 = grandkids.iter().map(|n| n.weight).sum();
        if all_settled && span == child.multiplicity {
            if m == 2 && child.multiplicity == 2 {
                let dir = child.direction.as_ref().expect("non-root node");
                let line = plane_line(f, p, dir).expect("tacnode tangent is rational");
                return Ok(SingularityClass::Tacnode(line));
            }
            return Ok(SingularityClass::TypePoint(m, child.multiplicity));
        }
    }
    Ok(SingularityClass::General(tree))
}

/// Σ weight·m(m−1)/2 over the tree.
pub fn delta_invariant(t: &ResolutionTree) -> u64 {
    t.delta()
}

/// Whether the line `l` meets `f` at `p` more than the multiplicity
/// forces, i.e. is tangent there (or shares a component).
pub fn is_tangent_line(
    f: &MultiPoly,
    p: &PlanePoint,
    l: &MultiPoly,
) -> Result<bool, SingularityError> {
    let m = multiplicity_at(f, p)? as u64;
    match intersection_multiplicity(f, l, p)? {
        Intersection::Finite(k) => Ok(k >= m + 1),
        Intersection::Infinite => Ok(true),
    }
}

/// Intersection multiplicity through resolution data alone:
/// δ(fg) = δ(f) + δ(g) + I_p(f, g) for coprime curves, so the two
/// summands' trees plus the product's tree determine I_p. Serves as an
/// independent oracle against the elimination-based computation.
pub fn noether_intersection(
    f: &MultiPoly,
    g: &MultiPoly,
    p: &PlanePoint,
) -> Result<u64, SingularityError> {
    if multiplicity_at(f, p)? == 0 || multiplicity_at(g, p)? == 0 {
        return Ok(0);
    }
    let delta_f = resolve_point(f, p, DEFAULT_DEPTH_CAP)?.delta();
    let delta_g = resolve_point(g, p, DEFAULT_DEPTH_CAP)?.delta();
    let product = f.mul(g);
    let delta_fg = resolve_point(&product, p, DEFAULT_DEPTH_CAP)?.delta();
    Ok(delta_fg - delta_f - delta_g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn biv(s: &str) -> MultiPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn origin() -> PlanePoint {
        PlanePoint::from_ints(0, 0, 1)
    }

    #[test]
    fn smooth_point_is_a_single_node() {
        let t = resolve_point(&biv("y - x^2"), &origin(), 16).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.root().multiplicity, 1);
        assert_eq!(delta_invariant(&t), 0);
        assert_eq!(
            classify_singularity(&biv("y - x^2"), &origin()).unwrap(),
            SingularityClass::Smooth
        );
    }

    #[test]
    fn node_with_rational_tangents() {
        let f = biv("x^2 - y^2");
        let t = resolve_point(&f, &origin(), 16).unwrap();
        assert_eq!(t.root().multiplicity, 2);
        assert_eq!(t.children(0).len(), 2);
        assert!(t.children(0).iter().all(|n| n.multiplicity == 1));
        assert_eq!(delta_invariant(&t), 1);
        assert_eq!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::Node
        );
    }

    #[test]
    fn node_with_irrational_tangents() {
        let f = biv("y^2 - 2*x^2");
        let t = resolve_point(&f, &origin(), 16).unwrap();
        assert_eq!(t.nodes().len(), 2);
        assert_eq!(t.node(1).weight, 2);
        assert_eq!(delta_invariant(&t), 1);
        assert_eq!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::Node
        );
    }

    #[test]
    fn cusp_resolves_through_a_satellite_point() {
        let f = biv("y^2 - x^3");
        let t = resolve_point(&f, &origin(), 16).unwrap();
        let mults: Vec<u32> = t.nodes().iter().map(|n| n.multiplicity).collect();
        assert_eq!(mults, vec![2, 1, 1, 1]);
        // The third center sits on two exceptional lines at once.
        assert_eq!(t.node(2).proximate_to, vec![0, 1]);
        assert_eq!(delta_invariant(&t), 1);
        assert!(t.proximity_holds());
        assert!(matches!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::General(_)
        ));
    }

    #[test]
    fn tacnode_shape_and_tangent() {
        let f = biv("y^2 - x^4");
        let t = resolve_point(&f, &origin(), 16).unwrap();
        let mults: Vec<u32> = t.nodes().iter().map(|n| n.multiplicity).collect();
        assert_eq!(mults, vec![2, 2, 1, 1]);
        assert_eq!(delta_invariant(&t), 2);
        match classify_singularity(&f, &origin()).unwrap() {
            SingularityClass::Tacnode(l) => assert_eq!(l, biv("y")),
            other => panic!("expected tacnode, got {other}"),
        }
    }

    #[test]
    fn tacnode_with_vertical_tangent() {
        let f = biv("x^2 - y^4");
        match classify_singularity(&f, &origin()).unwrap() {
            SingularityClass::Tacnode(l) => assert_eq!(l, biv("x")),
            other => panic!("expected tacnode, got {other}"),
        }
    }

    #[test]
    fn ordinary_triple_points() {
        // Three rational directions, one of them vertical.
        let f = biv("x*y*x + y^2*x + x^3").add(&biv("y^3"));
        let g = biv("x^2*y + x*y^2 + x^3 + y^3"); // same thing, spelled flat
        assert_eq!(f, g);
        let t = resolve_point(&f, &origin(), 16).unwrap();
        assert_eq!(t.root().multiplicity, 3);
        assert_eq!(delta_invariant(&t), 3);
        assert_eq!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::OrdinaryMultiple(3)
        );
        // Partially irrational directions still classify the same way.
        let h = biv("y^3 - x^3");
        assert_eq!(
            classify_singularity(&h, &origin()).unwrap(),
            SingularityClass::OrdinaryMultiple(3)
        );
        assert_eq!(delta_invariant(&resolve_point(&h, &origin(), 16).unwrap()), 3);
    }

    #[test]
    fn triple_triple_contact_point() {
        // Three smooth branches, pairwise simple tangency along y = 0.
        let f = biv("y").mul(&biv("y - x^2")).mul(&biv("y + x^2"));
        let t = resolve_point(&f, &origin(), 16).unwrap();
        assert_eq!(t.root().multiplicity, 3);
        let kids = t.children(0);
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].multiplicity, 3);
        assert_eq!(delta_invariant(&t), 6);
        assert_eq!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::TypePoint(3, 3)
        );
    }

    #[test]
    fn higher_cusp_is_general() {
        let f = biv("y^2 - x^5");
        let t = resolve_point(&f, &origin(), 16).unwrap();
        assert_eq!(delta_invariant(&t), 2);
        assert!(matches!(
            classify_singularity(&f, &origin()).unwrap(),
            SingularityClass::General(_)
        ));
    }

    #[test]
    fn non_squarefree_input_hits_the_depth_cap() {
        let f = biv("y^2");
        assert!(matches!(
            resolve_point(&f, &origin(), 16),
            Err(SingularityError::DepthCapExceeded(16))
        ));
    }

    #[test]
    fn repeated_irrational_tangent_is_an_error() {
        let f = biv("y^2 - 2*x^2").mul(&biv("y^2 - 2*x^2"));
        assert!(matches!(
            resolve_point(&f, &origin(), 16),
            Err(SingularityError::NonSplitTangentCone)
        ));
    }

    #[test]
    fn off_curve_point_is_rejected() {
        assert!(matches!(
            resolve_point(&biv("y - x^2"), &PlanePoint::from_ints(5, 1, 1), 16),
            Err(SingularityError::NotOnCurve)
        ));
        assert_eq!(
            multiplicity_at(&biv("y - x^2"), &PlanePoint::from_ints(5, 1, 1)).unwrap(),
            0
        );
    }

    #[test]
    fn projective_resolution_at_infinity() {
        // Two parallel affine lines cross at infinity.
        let f = parse_poly("(x + y)*(x + y + z)", &["x", "y", "z"]).unwrap();
        let p = PlanePoint::from_ints(1, -1, 0);
        assert_eq!(
            classify_singularity(&f, &p).unwrap(),
            SingularityClass::Node
        );
    }

    #[test]
    fn tangency_test_against_lines() {
        let f = biv("y - x^2");
        assert!(is_tangent_line(&f, &origin(), &biv("y")).unwrap());
        assert!(!is_tangent_line(&f, &origin(), &biv("y - x")).unwrap());
        // At a node, a line through the point but off both tangents is
        // not tangent even though it meets with multiplicity 2.
        let node = biv("x^2 - y^2");
        assert!(!is_tangent_line(&node, &origin(), &biv("y - 3*x")).unwrap());
        assert!(is_tangent_line(&node, &origin(), &biv("y - x")).unwrap());
    }

    #[test]
    fn resolution_oracle_matches_elimination() {
        let pairs = [
            ("y", "y - x^2", 2u64),
            ("y - x^2", "y + x^2", 2),
            ("x^2 - y^2", "y - 2*x", 2),
            ("x^2 - y^3", "y^2 - x^3", 4),
            ("x^2 - y^2", "y - x + x^2", 3),
        ];
        for (a, b, expected) in pairs {
            let f = biv(a);
            let g = biv(b);
            let by_tree = noether_intersection(&f, &g, &origin()).unwrap();
            let by_elim = intersection_multiplicity(&f, &g, &origin())
                .unwrap()
                .finite()
                .unwrap();
            assert_eq!(by_tree, expected, "trees for ({a}, {b})");
            assert_eq!(by_elim, expected, "elimination for ({a}, {b})");
        }
    }

    #[test]
    fn json_layout_is_stable() {
        let t = resolve_point(&biv("y^2 - x^3"), &origin(), 16).unwrap();
        let v = t.to_json();
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 4);
        assert_eq!(nodes[0]["parent"], serde_json::Value::Null);
        assert_eq!(nodes[1]["direction"]["slope"], "0");
        assert_eq!(nodes[2]["direction"], serde_json::json!("vertical"));
        assert_eq!(nodes[2]["proximity"], serde_json::json!([0, 1]));
    }

    #[test]
    fn tangent_cone_of_shifted_point() {
        let f = parse_poly("y*z^3 - x^2*z^2 + x^4", &["x", "y", "z"]).unwrap();
        let p = PlanePoint::from_ints(0, 0, 1);
        let cone = tangent_cone_at(&f, &p).unwrap();
        assert_eq!(cone, biv("y"));
        assert_eq!(multiplicity_at(&f, &p).unwrap(), 1);
    }
}
