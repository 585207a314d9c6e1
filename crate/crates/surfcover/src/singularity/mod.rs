//! Local resolution of plane-curve singularities by iterated blow-up.
//!
//! A curve germ is moved to the origin of an affine chart, blown up one
//! infinitely near point at a time, and the resulting tree of centers is
//! recorded together with multiplicities, directions and proximity. On
//! top of the trees sit the derived quantities: singularity classes,
//! δ-invariants, tangency tests and a rational singular-point search.

mod points;
mod resolve;
mod scene;

use std::fmt;

use crate::exactfield::GaussianRational;
use crate::poly::{MultiPoly, PolyError};

pub use points::rational_singular_points;
pub use resolve::{
    classify_singularity, delta_invariant, is_tangent_line, multiplicity_at,
    noether_intersection, resolve_point, tangent_cone_at,
};
pub use scene::{blow_up_local, LocalCurve};

/// Cap used by [`classify_singularity`] and other callers that do not
/// pick their own; far above anything a plane curve of moderate degree
/// needs.
pub const DEFAULT_DEPTH_CAP: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum SingularityError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("blow-up direction is not in the tangent cone")]
    DirectionNotInTangentCone,
    #[error("tangent cone has a repeated direction that is irrational over Q(i)")]
    NonSplitTangentCone,
    #[error("resolution did not terminate within depth {0}")]
    DepthCapExceeded(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A direction out of a blown-up point: a line through the origin of the
/// local chart. `Unsplit` stands in for a Galois orbit of simple
/// directions that are irrational over Q(i); it records the monic
/// univariate slope polynomial they satisfy and the orbit size.
#[derive(Clone, Debug, PartialEq)]
pub enum Direction {
    Slope(GaussianRational),
    Vertical,
    Unsplit { form: String, count: u32 },
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Slope(t) => write!(f, "slope {}", t.to_coeff_string()),
            Direction::Vertical => write!(f, "vertical"),
            Direction::Unsplit { form, count } => {
                write!(f, "{count} conjugate directions ({form})")
            }
        }
    }
}

/// One infinitely near point of a resolution.
///
/// `weight` is the number of actual points the node stands for: 1 for a
/// named center, the orbit size for an `Unsplit` direction.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub multiplicity: u32,
    pub direction: Option<Direction>,
    pub proximate_to: Vec<usize>,
    pub weight: u32,
}

/// The tree of infinitely near points over one singular point, in
/// breadth-first order with siblings sorted by direction (rational
/// slopes ascending, then vertical, then unsplit orbits).
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionTree {
    nodes: Vec<TreeNode>,
}

impl ResolutionTree {
    pub(crate) fn new(nodes: Vec<TreeNode>) -> Self {
        ResolutionTree { nodes }
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn children(&self, id: usize) -> Vec<&TreeNode> {
        self.nodes
            .iter()
            .filter(|n| n.parent == Some(id))
            .collect()
    }

    /// Σ weight·m(m−1)/2 over all nodes; the genus drop contributed by
    /// this singular point.
    pub fn delta(&self) -> u64 {
        self.nodes
            .iter()
            .map(|n| {
                let m = n.multiplicity as u64;
                n.weight as u64 * m * (m - 1) / 2
            })
            .sum()
    }

    /// Checks that each node's multiplicity dominates the weighted sum
    /// of the multiplicities of the points proximate to it.
    pub fn proximity_holds(&self) -> bool {
        self.nodes.iter().all(|p| {
            let load: u64 = self
                .nodes
                .iter()
                .filter(|q| q.proximate_to.contains(&p.id))
                .map(|q| q.weight as u64 * q.multiplicity as u64)
                .sum();
            load <= p.multiplicity as u64
        })
    }

    /// Node multiplicities along parent links are non-increasing.
    pub fn multiplicities_non_increasing(&self) -> bool {
        self.nodes.iter().all(|n| match n.parent {
            Some(p) => n.multiplicity <= self.nodes[p].multiplicity,
            None => true,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|n| {
                let direction = match &n.direction {
                    None => serde_json::Value::Null,
                    Some(Direction::Slope(t)) => {
                        serde_json::json!({ "slope": t.to_coeff_string() })
                    }
                    Some(Direction::Vertical) => serde_json::json!("vertical"),
                    Some(Direction::Unsplit { form, count }) => {
                        serde_json::json!({ "unsplit": form, "count": count })
                    }
                };
                serde_json::json!({
                    "id": n.id,
                    "parent": n.parent,
                    "multiplicity": n.multiplicity,
                    "proximity": n.proximate_to,
                    "direction": direction,
                })
            })
            .collect();
        serde_json::json!({ "nodes": nodes })
    }
}

/// The classes the verification scenarios distinguish; anything outside
/// them is reported as `General` with its full resolution tree.
#[derive(Clone, Debug, PartialEq)]
pub enum SingularityClass {
    Smooth,
    Node,
    Tacnode(MultiPoly),
    OrdinaryMultiple(u32),
    TypePoint(u32, u32),
    General(ResolutionTree),
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityClass::Smooth => write!(f, "smooth point"),
            SingularityClass::Node => write!(f, "node"),
            SingularityClass::Tacnode(l) => write!(f, "tacnode (tangent {l})"),
            SingularityClass::OrdinaryMultiple(m) => {
                write!(f, "ordinary point of multiplicity {m}")
            }
            SingularityClass::TypePoint(a, b) => write!(f, "({a},{b})-point"),
            SingularityClass::General(t) => write!(
                f,
                "unnamed singularity (multiplicity {}, delta {})",
                t.root().multiplicity,
                t.delta()
            ),
        }
    }
}
