//! Linear systems of plane curves with assigned base conditions.
//!
//! A condition asks for multiplicity at least m at a point, or at a point
//! infinitely near one after a chain of blow-ups in recorded directions.
//! Each one is linear in the coefficients of the moving form: multiplicity
//! m at a germ's origin kills the m(m+1)/2 jet coefficients below degree m,
//! and for infinitely near centers the germ is pushed through the chain's
//! substitutions, dividing out the exceptional factor to the multiplicity
//! assigned at each intermediate stop. Terms too low in the exceptional
//! variable to survive that division vanish modulo the earlier stops'
//! own rows, so dropping them keeps every row linear.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{ExactMatrix, FieldError, GaussianRational};
use crate::picard::{BlowupConfiguration, Center, DivisorClass, PicardError};
use crate::poly::intersect::local_affine;
use crate::poly::{monomials_of_degree, MultiPoly, PlanePoint, PolyError};
use crate::singularity::{Direction, SingularityError};

#[derive(Debug, thiserror::Error)]
pub enum LinsysError {
    #[error("the linear system is empty")]
    EmptySystem,
    #[error("unloading did not stabilize against the given curve catalog")]
    CatalogInsufficient,
    #[error("bad base condition: {0}")]
    BadCondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Sing(#[from] SingularityError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Picard(#[from] PicardError),
}

/// Multiplicity at least `multiplicity` at a center: `point` itself when
/// `path` is empty, otherwise the point reached by blowing up along the
/// listed directions. Each path entry also records the multiplicity
/// assigned at the stop it leaves from, which fixes how much of the
/// exceptional factor the virtual transform divides out there.
#[derive(Clone, Debug)]
pub struct BaseCondition {
    pub point: PlanePoint,
    pub path: Vec<(Direction, u32)>,
    pub multiplicity: u32,
}

impl BaseCondition {
    pub fn at_point(point: PlanePoint, multiplicity: u32) -> Self {
        BaseCondition {
            point,
            path: Vec::new(),
            multiplicity,
        }
    }

    pub fn infinitely_near(
        point: PlanePoint,
        path: Vec<(Direction, u32)>,
        multiplicity: u32,
    ) -> Self {
        BaseCondition {
            point,
            path,
            multiplicity,
        }
    }

    pub fn rows(&self) -> usize {
        let m = self.multiplicity as usize;
        m * (m + 1) / 2
    }
}

/// The two conditions of a tacnode with assigned tangent: a double point
/// plus a double point infinitely near it in the tangent direction.
pub fn tacnode_conditions(point: &PlanePoint, tangent: &Direction) -> [BaseCondition; 2] {
    [
        BaseCondition::at_point(point.clone(), 2),
        BaseCondition::infinitely_near(point.clone(), vec![(tangent.clone(), 2)], 2),
    ]
}

fn chart_vars() -> [&'static str; 2] {
    ["x", "y"]
}

/// Drop the terms below x-order `m` and divide the rest by x^m.
fn virtual_transform(s: &MultiPoly, m: u32) -> MultiPoly {
    let terms = s
        .terms()
        .filter(|(mono, _)| mono.0[0] >= m)
        .map(|(mono, c)| {
            let mut e = mono.0.clone();
            e[0] -= m;
            (e, c.clone())
        })
        .collect();
    MultiPoly::from_terms(&chart_vars(), terms)
}

fn step_images(direction: &Direction) -> Result<[MultiPoly; 2], LinsysError> {
    let vars = chart_vars();
    let x = MultiPoly::var(&vars, "x");
    let y = MultiPoly::var(&vars, "y");
    match direction {
        Direction::Slope(t) => {
            let shift = y.add(&MultiPoly::constant(&vars, t.clone()));
            Ok([x.clone(), x.mul(&shift)])
        }
        Direction::Vertical => Ok([x.mul(&y), x]),
        Direction::Unsplit { .. } => Err(LinsysError::BadCondition(
            "a base condition needs a definite direction".into(),
        )),
    }
}

/// The germ of `f` at the condition's center, after the chain's
/// substitutions and formal divisions.
fn chain_germ(f: &MultiPoly, cond: &BaseCondition) -> Result<MultiPoly, LinsysError> {
    let mut germ = local_affine(f, &cond.point)?;
    for (direction, stop_mult) in &cond.path {
        let images = step_images(direction)?;
        germ = virtual_transform(&germ.substitute(&images), *stop_mult);
    }
    Ok(germ)
}

/// The constraint rows of one condition, as linear functionals on the
/// degree-d coefficient space; `columns` are the local germs of the
/// monomial basis.
fn condition_rows(
    cond: &BaseCondition,
    columns: &[MultiPoly],
) -> Vec<Vec<GaussianRational>> {
    let mut rows = Vec::with_capacity(cond.rows());
    for k in 0..cond.multiplicity {
        for a in 0..=k {
            let b = k - a;
            rows.push(columns.iter().map(|g| g.coeff(&[a, b])).collect());
        }
    }
    rows
}

/// The exact linear constraints the conditions put on the coefficients
/// of a degree-d form, one block of m(m+1)/2 rows per condition, columns
/// ordered by the graded-lex monomial basis.
pub fn condition_matrix(d: u32, conds: &[BaseCondition]) -> Result<ExactMatrix, LinsysError> {
    let basis = monomials_of_degree(3, d);
    let ncols = basis.len();
    let vars = ["x", "y", "z"];
    let mut rows = Vec::new();
    for cond in conds {
        if cond.multiplicity == 0 {
            continue;
        }
        let columns: Vec<MultiPoly> = basis
            .iter()
            .map(|mono| {
                let f = MultiPoly::from_terms(&vars, vec![(mono.0.clone(), GaussianRational::one())]);
                chain_germ(&f, cond)
            })
            .collect::<Result<_, _>>()?;
        rows.extend(condition_rows(cond, &columns));
    }
    if rows.is_empty() {
        return Ok(ExactMatrix::zero(0, ncols));
    }
    Ok(ExactMatrix::from_rows(rows)?)
}

/// A solved linear system: the constraint matrix together with a basis
/// of the forms satisfying it.
pub struct LinearSystemResult {
    pub degree: u32,
    pub conditions: Vec<BaseCondition>,
    pub matrix: ExactMatrix,
    pub kernel: Vec<MultiPoly>,
}

impl LinearSystemResult {
    /// Kernel dimension minus one; −1 means the system is empty.
    pub fn projective_dimension(&self) -> i64 {
        self.kernel.len() as i64 - 1
    }

    /// The index-th kernel basis member under the fixed elimination
    /// order.
    pub fn member(&self, index: usize) -> Result<&MultiPoly, LinsysError> {
        self.kernel.get(index).ok_or(LinsysError::EmptySystem)
    }

    /// A deterministic pseudo-random combination of the basis, for
    /// probing general members of the system.
    pub fn combined_member(&self, seed: u64) -> Result<MultiPoly, LinsysError> {
        if self.kernel.is_empty() {
            return Err(LinsysError::EmptySystem);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = MultiPoly::zero(&["x", "y", "z"]);
        for member in &self.kernel {
            let c = GaussianRational::from_int(rng.gen_range(1..=17));
            acc = acc.add(&member.scale(&c));
        }
        Ok(acc)
    }
}

pub fn linear_system(d: u32, conds: &[BaseCondition]) -> Result<LinearSystemResult, LinsysError> {
    let matrix = condition_matrix(d, conds)?;
    let basis = monomials_of_degree(3, d);
    let vars = ["x", "y", "z"];
    let kernel = matrix
        .kernel()
        .into_iter()
        .map(|v| {
            let terms = basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(mono, c)| (mono.0.clone(), c))
                .collect();
            MultiPoly::from_terms(&vars, terms)
        })
        .collect();
    Ok(LinearSystemResult {
        degree: d,
        conditions: conds.to_vec(),
        matrix,
        kernel,
    })
}

/// Projective dimension of the system of degree-d curves through the
/// conditions.
pub fn system_dimension(d: u32, conds: &[BaseCondition]) -> Result<i64, LinsysError> {
    Ok(linear_system(d, conds)?.projective_dimension())
}

fn conditions_of_class(
    a: &DivisorClass,
    cfg: &BlowupConfiguration,
) -> Result<Vec<BaseCondition>, LinsysError> {
    let mults = a.mults();
    let mut conds = Vec::new();
    for idx in 0..cfg.len() {
        if mults[idx] <= 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut cursor = idx;
        loop {
            match cfg.center(cursor) {
                Center::Plane(p) => {
                    path.reverse();
                    conds.push(BaseCondition::infinitely_near(
                        p.clone(),
                        path,
                        mults[idx] as u32,
                    ));
                    break;
                }
                Center::InfinitelyNear { parent, direction } => {
                    let stop = mults[*parent].max(0) as u32;
                    path.push((direction.clone(), stop));
                    cursor = *parent;
                }
            }
        }
    }
    Ok(conds)
}

const UNLOAD_CAP: usize = 100;

/// h⁰ of a divisor class on the blown-up plane: strip fixed components
/// listed in the catalog of known negative curves (while some catalog
/// class C has a·C < 0, replace a by a − C), then count the surviving
/// linear system. Each step preserves h⁰, so a negative degree at any
/// point settles the answer: the line class is nef, and catalog classes
/// have nonnegative degree, so no further unloading recovers an
/// effective class.
pub fn h0_class(
    a: &DivisorClass,
    cfg: &BlowupConfiguration,
    catalog: &[DivisorClass],
) -> Result<i64, LinsysError> {
    let mut a = a.clone();
    let mut steps = 0;
    loop {
        if a.degree() < 0 {
            return Ok(0);
        }
        let mut moved = false;
        for c in catalog {
            if a.dot(c)? < 0 {
                a = a.sub(c);
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
        steps += 1;
        if steps > UNLOAD_CAP {
            return Err(LinsysError::CatalogInsufficient);
        }
    }
    if a.is_zero() {
        return Ok(1);
    }
    if a.degree() < 0 {
        return Ok(0);
    }
    let conds = conditions_of_class(&a, cfg)?;
    if a.degree() == 0 {
        return Ok(if conds.is_empty() { 1 } else { 0 });
    }
    let sys = linear_system(a.degree() as u32, &conds)?;
    Ok(sys.kernel.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;
    use crate::poly::parse_poly;
    use crate::singularity::{blow_up_local, LocalCurve};

    fn proj(s: &str) -> MultiPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    fn slope(n: i64, d: i64) -> Direction {
        Direction::Slope(GaussianRational::from_rational(Rational::new(
            n.into(),
            d.into(),
        )))
    }

    #[test]
    fn single_point_line_row() {
        let m = condition_matrix(
            1,
            &[BaseCondition::at_point(PlanePoint::from_ints(2, 3, 1), 1)],
        )
        .unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 3));
        let want: Vec<i64> = vec![2, 3, 1];
        for (c, w) in want.iter().enumerate() {
            assert_eq!(*m.get(0, c), GaussianRational::from_int(*w));
        }
    }

    #[test]
    fn five_points_cut_a_unique_conic() {
        let pts = [
            PlanePoint::from_ints(0, 0, 1),
            PlanePoint::from_ints(1, 0, 1),
            PlanePoint::from_ints(0, 1, 1),
            PlanePoint::from_ints(1, 1, 1),
            PlanePoint::from_ints(2, 3, 1),
        ];
        let conds: Vec<BaseCondition> = pts
            .iter()
            .map(|p| BaseCondition::at_point(p.clone(), 1))
            .collect();
        let sys = linear_system(2, &conds).unwrap();
        assert_eq!(sys.matrix.rank(), 5);
        assert_eq!(sys.projective_dimension(), 0);
        let conic = sys.member(0).unwrap();
        for p in &pts {
            assert!(conic.evaluate(p.coords()).is_zero());
        }
    }

    #[test]
    fn tacnode_cluster_on_conics_pins_the_double_tangent() {
        let p = PlanePoint::from_ints(0, 0, 1);
        let conds = tacnode_conditions(&p, &slope(0, 1));
        assert_eq!(conds.iter().map(BaseCondition::rows).sum::<usize>(), 6);
        let sys = linear_system(2, &conds).unwrap();
        assert_eq!(sys.matrix.rank(), 5);
        assert_eq!(sys.projective_dimension(), 0);
        assert_eq!(sys.member(0).unwrap().monic(), proj("y^2").monic());
    }

    #[test]
    fn tacnode_members_really_have_the_cluster() {
        let p = PlanePoint::from_ints(1, 2, 1);
        let dir = slope(1, 1);
        let conds = tacnode_conditions(&p, &dir);
        let sys = linear_system(4, &conds).unwrap();
        assert_eq!(sys.projective_dimension(), 15 - 6 - 1);
        let member = sys.combined_member(7).unwrap();
        let germ = LocalCurve::at_point(&member, &p).unwrap();
        assert!(germ.multiplicity() >= 2);
        let up = blow_up_local(&germ, &dir).unwrap();
        assert!(up.multiplicity() >= 2);
    }

    #[test]
    fn dimensions_shrink_as_conditions_arrive() {
        let pts = [
            PlanePoint::from_ints(0, 0, 1),
            PlanePoint::from_ints(5, 1, 1),
            PlanePoint::from_ints(-1, 2, 1),
            PlanePoint::from_ints(3, -4, 1),
        ];
        let mut conds = Vec::new();
        let mut last = system_dimension(3, &conds).unwrap();
        assert_eq!(last, 9);
        for p in &pts {
            conds.push(BaseCondition::at_point(p.clone(), 2));
            let dim = system_dimension(3, &conds).unwrap();
            assert!(dim <= last);
            last = dim;
        }
    }

    #[test]
    fn general_position_reaches_the_expected_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let mut conds = Vec::new();
        for m in [2, 2, 2, 1, 1, 1, 1] {
            let x = rng.gen_range(-40i64..=40);
            let y = rng.gen_range(-40i64..=40);
            conds.push(BaseCondition::at_point(PlanePoint::from_ints(x, y, 1), m));
        }
        let expected: usize = conds.iter().map(BaseCondition::rows).sum();
        let m = condition_matrix(4, &conds).unwrap();
        assert_eq!(m.rank(), expected.min(15));
    }

    #[test]
    fn empty_condition_list_gives_the_full_series() {
        assert_eq!(system_dimension(7, &[]).unwrap(), 35);
        assert_eq!(system_dimension(1, &[]).unwrap(), 2);
    }

    #[test]
    fn h0_of_simple_classes() {
        let cfg = BlowupConfiguration::new(vec![(
            "E0".into(),
            Center::Plane(PlanePoint::from_ints(0, 0, 1)),
        )])
        .unwrap();
        assert_eq!(h0_class(&cfg.zero(), &cfg, &[]).unwrap(), 1);
        assert_eq!(h0_class(&cfg.line(), &cfg, &[]).unwrap(), 3);
        let t_minus_e = cfg.class(1, &[("E0", 1)]).unwrap();
        assert_eq!(h0_class(&t_minus_e, &cfg, &[]).unwrap(), 2);
        assert_eq!(h0_class(&cfg.line().neg(), &cfg, &[]).unwrap(), 0);
        // An exceptional class unloads to zero against itself.
        let e = cfg.exceptional("E0").unwrap();
        assert_eq!(h0_class(&e, &cfg, &[e.clone()]).unwrap(), 1);
    }

    #[test]
    fn h0_through_an_infinitely_near_condition() {
        let cfg = BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            (
                "E0'".into(),
                Center::InfinitelyNear {
                    parent: 0,
                    direction: slope(0, 1),
                },
            ),
        ])
        .unwrap();
        // Conics with the full (2,2) cluster: only the double tangent.
        let a = cfg.class(2, &[("E0", 2), ("E0'", 2)]).unwrap();
        assert_eq!(h0_class(&a, &cfg, &[]).unwrap(), 1);
        // Lines through the cluster point and its tangent direction.
        let b = cfg.class(1, &[("E0", 1), ("E0'", 1)]).unwrap();
        assert_eq!(h0_class(&b, &cfg, &[]).unwrap(), 1);
    }

    #[test]
    fn runaway_unloading_is_flagged() {
        // A catalog holding a class and its negative makes the degree-0
        // class below oscillate instead of settling.
        let cfg = BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            ("E1".into(), Center::Plane(PlanePoint::from_ints(1, 0, 1))),
        ])
        .unwrap();
        let c = cfg.class(0, &[("E0", 1), ("E1", -1)]).unwrap();
        let catalog = [c.clone(), c.neg()];
        let a = cfg.class(0, &[("E0", 1), ("E1", 2)]).unwrap();
        assert!(matches!(
            h0_class(&a, &cfg, &catalog),
            Err(LinsysError::CatalogInsufficient)
        ));
    }

    #[test]
    fn negative_degree_settles_during_unloading() {
        // Unloading a strict transform can push the degree negative; from
        // there no sections can exist no matter what the catalog holds.
        let cfg = BlowupConfiguration::new(vec![(
            "E0".into(),
            Center::Plane(PlanePoint::from_ints(0, 0, 1)),
        )])
        .unwrap();
        let line_through = cfg.class(1, &[("E0", 1)]).unwrap();
        let a = cfg.class(0, &[("E0", 2)]).unwrap();
        assert_eq!(h0_class(&a, &cfg, &[line_through]).unwrap(), 0);
    }
}
