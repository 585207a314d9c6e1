//! Local intersection multiplicities of plane curves.
//!
//! The computation runs the classical axiom-driven reduction: restrict
//! both curves to the line y = 0 through the point, split off y factors
//! (whose contribution is the order of the other restriction), and
//! otherwise cancel leading restriction terms with a combination that
//! lowers degree. Every step is justified by the defining properties of
//! the multiplicity, so the result is exact; a step cap guards against
//! implementation bugs, not against the mathematics.

use num::{BigInt, Integer, One};

use super::zi::Zi;
use super::{gcd_bivariate, MultiPoly, PlanePoint, PolyError};
use crate::exactfield::{GaussianRational, Rational};

/// Outcome of a local intersection computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Intersection {
    Finite(u64),
    /// The curves share a component through the point.
    Infinite,
}

impl Intersection {
    pub fn finite(self) -> Option<u64> {
        match self {
            Intersection::Finite(v) => Some(v),
            Intersection::Infinite => None,
        }
    }
}

/// Rewrites a curve in an affine chart with `p` at the origin.
///
/// Homogeneous ternary input picks the chart by the point (z, then y,
/// then x); bivariate input needs a finite point. The output always uses
/// variables x, y.
pub fn local_affine(f: &MultiPoly, p: &PlanePoint) -> Result<MultiPoly, PolyError> {
    match f.nvars() {
        3 => {
            if !f.is_homogeneous() {
                return Err(PolyError::Degenerate(
                    "projective charts need a homogeneous form".into(),
                ));
            }
            let (chart_var, a, b) = chart_of(p);
            let aff = f.dehomogenize(chart_var).rename_vars(&["x", "y"]);
            Ok(translate(&aff, &a, &b))
        }
        2 => {
            if !p.is_finite() {
                return Err(PolyError::Degenerate(
                    "affine curves have no points at infinity".into(),
                ));
            }
            let (a, b) = p.affine().expect("finite point");
            Ok(translate(f, &a, &b))
        }
        n => Err(PolyError::Degenerate(format!(
            "curves live in 2 or 3 variables, got {n}"
        ))),
    }
}

/// The chart variable to set to 1 for this point, plus the point's
/// coordinates in the two remaining variables (kept in x,y,z order).
pub(crate) fn chart_of(p: &PlanePoint) -> (usize, GaussianRational, GaussianRational) {
    if !p.z().is_zero() {
        (2, p.x().clone(), p.y().clone())
    } else if !p.y().is_zero() {
        (1, p.x().clone(), p.z().clone())
    } else {
        (0, p.y().clone(), p.z().clone())
    }
}

fn translate(f: &MultiPoly, a: &GaussianRational, b: &GaussianRational) -> MultiPoly {
    let vars = ["x", "y"];
    let x = MultiPoly::var(&vars, "x");
    let y = MultiPoly::var(&vars, "y");
    let images = [
        x.add(&MultiPoly::constant(&vars, a.clone())),
        y.add(&MultiPoly::constant(&vars, b.clone())),
    ];
    f.substitute(&images)
}

/// The intersection multiplicity I_p(F, G) of two curves at a plane
/// point. Infinite exactly when a common component passes through p.
pub fn intersection_multiplicity(
    f: &MultiPoly,
    g: &MultiPoly,
    p: &PlanePoint,
) -> Result<Intersection, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Degenerate("intersection with zero curve".into()));
    }
    let lf = local_affine(f, p)?;
    let lg = local_affine(g, p)?;
    multiplicity_at_origin(lf, lg)
}

fn multiplicity_at_origin(
    mut f: MultiPoly,
    mut g: MultiPoly,
) -> Result<Intersection, PolyError> {
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(Intersection::Finite(0));
    }
    // Shared components decide between Infinite and a plain reduction.
    let common = gcd_bivariate(&f, &g);
    if !common.is_constant() {
        if common.constant_term().is_zero() {
            return Ok(Intersection::Infinite);
        }
        f = f.div_exact(&common).expect("gcd divides");
        g = g.div_exact(&common).expect("gcd divides");
    }
    f = primitive_part(&f);
    g = primitive_part(&g);
    let cap = 4 * u64::from(f.degree().unwrap_or(1).max(1)) * u64::from(g.degree().unwrap_or(1).max(1));
    let cap = cap.max(8);
    let mut total = 0u64;
    let mut steps = 0u64;
    loop {
        steps += 1;
        if steps > cap {
            return Err(PolyError::InternalLimit(cap));
        }
        // Invariants here: f, g coprime, both vanish at the origin.
        let a = restrict_y0(&f);
        let b = restrict_y0(&g);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {
                // y divides both: contradicts coprimality.
                return Err(PolyError::InternalLimit(cap));
            }
            (true, false) => {
                total += x_order(&b);
                f = divide_out_y(&f);
                if !f.constant_term().is_zero() {
                    return Ok(Intersection::Finite(total));
                }
            }
            (false, true) => {
                total += x_order(&a);
                g = divide_out_y(&g);
                if !g.constant_term().is_zero() {
                    return Ok(Intersection::Finite(total));
                }
            }
            (false, false) => {
                let (mut da, mut ca) = x_leading(&a);
                let (mut db, mut cb) = x_leading(&b);
                if da > db {
                    std::mem::swap(&mut f, &mut g);
                    std::mem::swap(&mut da, &mut db);
                    std::mem::swap(&mut ca, &mut cb);
                }
                // Cancel the top restriction coefficient of g.
                let shift = x_power(&f, db - da);
                let combined = g.scale(&ca).sub(&shift.mul(&f).scale(&cb));
                if combined.is_zero() {
                    // Would mean f divides g against coprimality.
                    return Err(PolyError::InternalLimit(cap));
                }
                g = primitive_part(&combined);
            }
        }
    }
}

/// Rescales a nonzero polynomial so its coefficients are Gaussian
/// integers with unit content. I_p ignores constant factors, and the
/// cancellation loop grows coefficients exponentially without this.
fn primitive_part(f: &MultiPoly) -> MultiPoly {
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = den.lcm(c.re().denom());
        den = den.lcm(c.im().denom());
    }
    let mut content = Zi::zero();
    for (_, c) in f.terms() {
        let re = c.re().numer() * (&den / c.re().denom());
        let im = c.im().numer() * (&den / c.im().denom());
        content = content.gcd(&Zi::new(re, im));
        if content.is_unit() {
            break;
        }
    }
    if content.is_zero() {
        return f.clone();
    }
    let ratio = GaussianRational::new(
        Rational::new(content.re.clone(), den.clone()),
        Rational::new(content.im.clone(), den),
    );
    f.scale(&ratio.inverse().expect("nonzero content"))
}

/// f(x, 0) kept as a bivariate polynomial with y-degree 0.
fn restrict_y0(f: &MultiPoly) -> MultiPoly {
    let coeffs = f.coeffs_in(1);
    coeffs.into_iter().next().expect("coefficient 0 exists")
}

/// The order of vanishing at x = 0 of a y-free polynomial.
fn x_order(a: &MultiPoly) -> u64 {
    a.terms()
        .map(|(m, _)| u64::from(m.0[0]))
        .min()
        .expect("nonzero restriction")
}

/// Leading x-term (degree and coefficient) of a y-free polynomial.
fn x_leading(a: &MultiPoly) -> (u32, GaussianRational) {
    let (m, c) = a
        .terms()
        .max_by_key(|(m, _)| m.0[0])
        .expect("nonzero restriction");
    (m.0[0], c.clone())
}

fn x_power(f: &MultiPoly, e: u32) -> MultiPoly {
    let names: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    MultiPoly::var(&names, "x").pow(e)
}

fn divide_out_y(f: &MultiPoly) -> MultiPoly {
    let names: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let y = MultiPoly::var(&names, "y");
    f.div_exact(&y).expect("vanishing restriction means y divides")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p2(text: &str) -> MultiPoly {
        parse_poly(text, &["x", "y"]).unwrap()
    }

    fn origin() -> PlanePoint {
        PlanePoint::from_ints(0, 0, 1)
    }

    fn im(f: &str, g: &str, p: &PlanePoint) -> Intersection {
        intersection_multiplicity(&p2(f), &p2(g), p).unwrap()
    }

    #[test]
    fn transverse_lines_meet_once() {
        assert_eq!(im("x", "y", &origin()), Intersection::Finite(1));
    }

    #[test]
    fn tangency_doubles() {
        assert_eq!(im("y-x^2", "y", &origin()), Intersection::Finite(2));
        assert_eq!(im("y-x^2", "y+x^2", &origin()), Intersection::Finite(2));
    }

    #[test]
    fn cusp_against_line() {
        assert_eq!(im("y^2-x^3", "y", &origin()), Intersection::Finite(3));
        assert_eq!(im("y^2-x^3", "x", &origin()), Intersection::Finite(2));
    }

    #[test]
    fn node_against_branch_line() {
        // Node xy at origin against one of its own tangent lines would be
        // infinite; a generic line sees multiplicity 2.
        assert_eq!(im("x*y", "x-y", &origin()), Intersection::Finite(2));
        assert_eq!(im("x*y", "x", &origin()), Intersection::Infinite);
    }

    #[test]
    fn away_from_the_point() {
        let p = PlanePoint::from_ints(5, 5, 1);
        assert_eq!(im("x", "y", &p), Intersection::Finite(0));
    }

    #[test]
    fn translated_point() {
        let p = PlanePoint::from_ints(1, 1, 1);
        assert_eq!(
            im("y-x^2", "y-2*x+1", &p),
            Intersection::Finite(2),
            "tangent line to the parabola at (1,1)"
        );
    }

    #[test]
    fn shared_component_is_infinite() {
        assert_eq!(
            im("x^2-y^2", "x-y", &origin()),
            Intersection::Infinite
        );
        // Shared component not through the point contributes nothing.
        let f = p2("x-y-1").mul(&p2("x+y"));
        let g = p2("x-y-1").mul(&p2("x-y"));
        assert_eq!(
            intersection_multiplicity(&f, &g, &origin()).unwrap(),
            Intersection::Finite(1)
        );
    }

    #[test]
    fn projective_point_at_infinity() {
        // The parabola y*z = x^2 meets the line at infinity z = 0 at
        // (0:1:0) with multiplicity 2 (it is tangent there).
        let f = parse_poly("y*z-x^2", &["x", "y", "z"]).unwrap();
        let z = parse_poly("z", &["x", "y", "z"]).unwrap();
        let pt = PlanePoint::from_ints(0, 1, 0);
        assert_eq!(
            intersection_multiplicity(&f, &z, &pt).unwrap(),
            Intersection::Finite(2)
        );
    }

    #[test]
    fn symmetry_and_additivity() {
        let f = "y^2-x^3-x^2";
        let g = "y-x^2";
        assert_eq!(im(f, g, &origin()), im(g, f, &origin()));
        // I(f, g*h) = I(f,g) + I(f,h)
        let gh = p2(g).mul(&p2("x-y"));
        let lhs = intersection_multiplicity(&p2(f), &gh, &origin()).unwrap();
        let a = im(f, g, &origin()).finite().unwrap();
        let b = im(f, "x-y", &origin()).finite().unwrap();
        assert_eq!(lhs, Intersection::Finite(a + b));
    }

    #[test]
    fn high_tangency_order() {
        assert_eq!(im("y-x^7", "y", &origin()), Intersection::Finite(7));
        // Two curves sharing a long jet.
        assert_eq!(
            im("y-x^4", "y-x^4-x^9", &origin()),
            Intersection::Finite(9)
        );
    }
}
