//! Local charts at a curve point and the single blow-up step.
//!
//! A blow-up replaces the chart origin by a line of directions. The
//! chart centered at the direction of slope t maps back by
//! (x, y) -> (x, x·(t + y)); the chart at the vertical direction by
//! (x, y) -> (x·y, x). In both, the new exceptional line is {x = 0} and
//! the only old line through the new origin (the one matching the chosen
//! direction, when there is one) becomes {y = 0}.

use crate::exactfield::GaussianRational;
use crate::poly::intersect::{chart_of, local_affine};
use crate::poly::uni::UniGq;
use crate::poly::{MultiPoly, PlanePoint};

use super::{Direction, SingularityError};

/// A curve germ: the defining polynomial rewritten so that the point
/// under study is the origin of an affine (x, y) chart, together with
/// the chain of blow-up directions that led here.
#[derive(Clone, Debug)]
pub struct LocalCurve {
    f: MultiPoly,
    history: Vec<Direction>,
}

impl LocalCurve {
    /// Moves `p` to the origin. Works for homogeneous ternary curves at
    /// any plane point and for affine bivariate curves at finite points.
    pub fn at_point(f: &MultiPoly, p: &PlanePoint) -> Result<LocalCurve, SingularityError> {
        let local = local_affine(f, p)?;
        Ok(LocalCurve {
            f: local,
            history: Vec::new(),
        })
    }

    pub(crate) fn from_parts(f: MultiPoly, history: Vec<Direction>) -> LocalCurve {
        LocalCurve { f, history }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn history(&self) -> &[Direction] {
        &self.history
    }

    /// Order of vanishing at the origin; 0 when the curve misses it.
    pub fn multiplicity(&self) -> u32 {
        if !self.f.constant_term().is_zero() {
            return 0;
        }
        self.f.min_degree().expect("germ polynomial is nonzero")
    }

    /// Lowest-degree homogeneous part: a binary form whose linear
    /// factors are the tangent directions, with multiplicity.
    pub fn tangent_cone(&self) -> MultiPoly {
        self.f.lowest_part()
    }
}

/// The tangent cone as a univariate polynomial in the slope t, obtained
/// by setting (x, y) = (1, t). Degree defects against the multiplicity
/// count the vertical direction.
pub(crate) fn slope_poly(cone: &MultiPoly) -> UniGq {
    let m = cone.degree().expect("tangent cone is nonzero") as usize;
    let mut c = vec![GaussianRational::zero(); m + 1];
    for (mono, coef) in cone.terms() {
        c[mono.0[1] as usize] = coef.clone();
    }
    UniGq::from_coeffs(c)
}

/// A direction of the tangent cone together with the number of points
/// it stands for (more than one only for an unsplit orbit).
#[derive(Clone, Debug)]
pub(crate) struct ConeDirection {
    pub dir: Direction,
    pub weight: u32,
}

/// All directions of the tangent cone at the origin, in the canonical
/// order: rational slopes ascending, then vertical, then the unsplit
/// orbit. Fails when an irrational direction is repeated, because the
/// corresponding center would need coordinates outside Q(i).
pub(crate) fn cone_directions(c: &LocalCurve) -> Result<Vec<ConeDirection>, SingularityError> {
    let m = c.multiplicity();
    assert!(m >= 1, "cone directions need a vanishing germ");
    let psi = slope_poly(&c.tangent_cone());
    let deg = psi.degree().expect("slope polynomial is nonzero") as u32;
    let e_vertical = m - deg;

    let mut out = Vec::new();
    let mut cofactor = psi.clone();
    let mut roots = crate::poly::uni::qi_roots(&psi);
    roots.sort();
    for t in roots {
        let ord = psi.root_order(&t) as u32;
        let lin = UniGq::from_coeffs(vec![-&t, GaussianRational::one()]);
        for _ in 0..ord {
            cofactor = cofactor.div_exact(&lin).expect("root order divides");
        }
        out.push(ConeDirection {
            dir: Direction::Slope(t),
            weight: 1,
        });
    }
    if e_vertical >= 1 {
        out.push(ConeDirection {
            dir: Direction::Vertical,
            weight: 1,
        });
    }
    if cofactor.degree() > Some(0) {
        let sf = cofactor.gcd(&cofactor.derivative());
        if sf.degree() > Some(0) {
            return Err(SingularityError::NonSplitTangentCone);
        }
        let count = cofactor.degree().unwrap() as u32;
        let form = cofactor.monic().to_multipoly(&["t"], 0).to_string();
        out.push(ConeDirection {
            dir: Direction::Unsplit { form, count },
            weight: count,
        });
    }
    // Rational slopes first, then vertical, then unsplit.
    out.sort_by(|a, b| direction_rank(&a.dir).cmp(&direction_rank(&b.dir)));
    Ok(out)
}

fn direction_rank(d: &Direction) -> (u8, Option<GaussianRational>) {
    match d {
        Direction::Slope(t) => (0, Some(t.clone())),
        Direction::Vertical => (1, None),
        Direction::Unsplit { .. } => (2, None),
    }
}

/// One blow-up step: substitutes the chart map for the chosen direction
/// and divides the exceptional factor out exactly multiplicity-many
/// times, yielding the strict transform centered at the new point.
pub fn blow_up_local(c: &LocalCurve, d: &Direction) -> Result<LocalCurve, SingularityError> {
    let m = c.multiplicity();
    if m == 0 {
        return Err(SingularityError::NotOnCurve);
    }
    let psi = slope_poly(&c.tangent_cone());
    let vars = ["x", "y"];
    let x = MultiPoly::var(&vars, "x");
    let y = MultiPoly::var(&vars, "y");
    let images = match d {
        Direction::Slope(t) => {
            if !psi.eval(t).is_zero() {
                return Err(SingularityError::DirectionNotInTangentCone);
            }
            let shifted = y.add(&MultiPoly::constant(&vars, t.clone()));
            [x.clone(), x.mul(&shifted)]
        }
        Direction::Vertical => {
            if psi.degree() == Some(m as usize) {
                return Err(SingularityError::DirectionNotInTangentCone);
            }
            [x.mul(&y), x.clone()]
        }
        Direction::Unsplit { .. } => {
            return Err(SingularityError::DirectionNotInTangentCone)
        }
    };
    let moved = c.f.substitute(&images);
    let strict = moved
        .div_exact(&x.pow(m))
        .expect("the exceptional factor divides exactly m times");
    let mut history = c.history.clone();
    history.push(d.clone());
    Ok(LocalCurve::from_parts(strict, history))
}

/// The plane line through `p` in the local direction `d`, as a monic
/// polynomial in the variables of `f`. None for unsplit orbits.
pub(crate) fn plane_line(f: &MultiPoly, p: &PlanePoint, d: &Direction) -> Option<MultiPoly> {
    let slope = match d {
        Direction::Slope(t) => Some(t.clone()),
        Direction::Vertical => None,
        Direction::Unsplit { .. } => return None,
    };
    match f.nvars() {
        3 => {
            let (cv, a, b) = chart_of(p);
            let (ui, vi) = match cv {
                2 => (0, 1),
                1 => (0, 2),
                _ => (1, 2),
            };
            let names: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
            let u = MultiPoly::var(&names, names[ui]);
            let v = MultiPoly::var(&names, names[vi]);
            let cvar = MultiPoly::var(&names, names[cv]);
            let line = match slope {
                Some(t) => v
                    .sub(&cvar.scale(&b))
                    .sub(&u.sub(&cvar.scale(&a)).scale(&t)),
                None => u.sub(&cvar.scale(&a)),
            };
            Some(line.monic())
        }
        2 => {
            let (a, b) = p.affine()?;
            let names: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
            let u = MultiPoly::var(&names, names[0]);
            let v = MultiPoly::var(&names, names[1]);
            let ca = MultiPoly::constant(&names, a);
            let cb = MultiPoly::constant(&names, b);
            let line = match slope {
                Some(t) => v.sub(&cb).sub(&u.sub(&ca).scale(&t)),
                None => u.sub(&ca),
            };
            Some(line.monic())
        }
        _ => None,
    }
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
    fn cusp_blow_up_chain() {
        let c = LocalCurve::at_point(&biv("y^2 - x^3"), &origin()).unwrap();
        assert_eq!(c.multiplicity(), 2);
        let once = blow_up_local(&c, &Direction::Slope(GaussianRational::zero())).unwrap();
        assert_eq!(once.poly(), &biv("y^2 - x"));
        assert_eq!(once.multiplicity(), 1);
        // Tangent along the exceptional line; the next center sits in
        // the vertical chart.
        let twice = blow_up_local(&once, &Direction::Vertical).unwrap();
        assert_eq!(twice.poly(), &biv("x - y"));
        assert_eq!(twice.history().len(), 2);
    }

    #[test]
    fn direction_must_lie_in_cone() {
        let c = LocalCurve::at_point(&biv("y^2 - x^3"), &origin()).unwrap();
        let err = blow_up_local(&c, &Direction::Slope(GaussianRational::one()));
        assert!(matches!(
            err,
            Err(SingularityError::DirectionNotInTangentCone)
        ));
        let err = blow_up_local(&c, &Direction::Vertical);
        assert!(matches!(
            err,
            Err(SingularityError::DirectionNotInTangentCone)
        ));
    }

    #[test]
    fn cone_directions_of_a_node() {
        let c = LocalCurve::at_point(&biv("x^2 - y^2"), &origin()).unwrap();
        let dirs = cone_directions(&c).unwrap();
        assert_eq!(dirs.len(), 2);
        assert_eq!(dirs[0].dir, Direction::Slope(GaussianRational::from(-1)));
        assert_eq!(dirs[1].dir, Direction::Slope(GaussianRational::from(1)));
        assert!(dirs.iter().all(|d| d.weight == 1));
    }

    #[test]
    fn gaussian_and_vertical_directions() {
        // x² + y² = (y − ix)(y + ix), and one vertical branch from x·…
        let c = LocalCurve::at_point(&biv("x^3 + x*y^2"), &origin()).unwrap();
        let dirs = cone_directions(&c).unwrap();
        assert_eq!(dirs.len(), 3);
        assert_eq!(dirs[0].dir, Direction::Slope(-GaussianRational::i()));
        assert_eq!(dirs[1].dir, Direction::Slope(GaussianRational::i()));
        assert_eq!(dirs[2].dir, Direction::Vertical);
    }

    #[test]
    fn irrational_pair_is_grouped() {
        let c = LocalCurve::at_point(&biv("y^2 - 2*x^2"), &origin()).unwrap();
        let dirs = cone_directions(&c).unwrap();
        assert_eq!(dirs.len(), 1);
        match &dirs[0].dir {
            Direction::Unsplit { form, count } => {
                assert_eq!(*count, 2);
                assert_eq!(form, "t^2-2");
            }
            other => panic!("expected unsplit orbit, got {other:?}"),
        }
        assert_eq!(dirs[0].weight, 2);
    }

    #[test]
    fn repeated_irrational_direction_is_rejected() {
        let f = biv("y^2 - 2*x^2").mul(&biv("y^2 - 2*x^2"));
        let c = LocalCurve::at_point(&f, &origin()).unwrap();
        assert!(matches!(
            cone_directions(&c),
            Err(SingularityError::NonSplitTangentCone)
        ));
    }

    #[test]
    fn off_curve_point_has_multiplicity_zero() {
        let c = LocalCurve::at_point(&biv("y - x^2"), &PlanePoint::from_ints(1, 0, 1)).unwrap();
        assert_eq!(c.multiplicity(), 0);
        assert!(matches!(
            blow_up_local(&c, &Direction::Vertical),
            Err(SingularityError::NotOnCurve)
        ));
    }

    #[test]
    fn plane_line_through_projective_point() {
        let f = parse_poly("y*z - x^2", &["x", "y", "z"]).unwrap();
        let p = PlanePoint::from_ints(0, 0, 1);
        // Tangent of the parabola at the origin of the z-chart.
        let l = plane_line(&f, &p, &Direction::Slope(GaussianRational::zero())).unwrap();
        assert_eq!(l, parse_poly("y", &["x", "y", "z"]).unwrap());

        let q = PlanePoint::from_ints(-2, 1, 1);
        let t = GaussianRational::from_rational(crate::exactfield::Rational::new(
            num::BigInt::from(-1),
            num::BigInt::from(2),
        ));
        let l = plane_line(&f, &q, &Direction::Slope(t)).unwrap();
        // Contains q and has the requested affine slope.
        assert!(l.evaluate(q.coords()).is_zero());
        assert_eq!(l, parse_poly("x + 2*y", &["x", "y", "z"]).unwrap());
    }

    #[test]
    fn vertical_plane_line() {
        let f = parse_poly("y*z - x^2", &["x", "y", "z"]).unwrap();
        let q = PlanePoint::from_ints(3, 9, 1);
        let l = plane_line(&f, &q, &Direction::Vertical).unwrap();
        assert_eq!(l, parse_poly("x - 3*z", &["x", "y", "z"]).unwrap());
    }
}
