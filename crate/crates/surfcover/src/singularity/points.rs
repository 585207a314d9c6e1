//! Locating every singular point with coordinates in Q(i).
//!
//! Elimination by resultants gives a univariate polynomial whose roots
//! carry all candidate x-coordinates; per candidate, the gcd of the
//! sliced equations carries the y-coordinates. The search also reports
//! whether it can certify that nothing was missed: that holds when the
//! eliminant and every slice gcd factor completely over Q(i).

use crate::exactfield::GaussianRational;
use crate::poly::uni::{qi_roots, UniGq};
use crate::poly::{gcd_bivariate, resultant, MultiPoly, PlanePoint, PolyError};

use super::{classify_singularity, SingularityClass, SingularityError};

/// All singular points of `f` with coordinates in Q(i), classified, plus
/// a completeness flag: true when the elimination certifies that no
/// further (in particular no irrational) singular point exists.
///
/// Accepts a squarefree affine bivariate curve or a squarefree
/// homogeneous ternary one; for the latter the line at infinity is
/// searched as well.
pub fn rational_singular_points(
    f: &MultiPoly,
) -> Result<(Vec<(PlanePoint, SingularityClass)>, bool), SingularityError> {
    if f.is_zero() {
        return Err(PolyError::Degenerate("zero curve".into()).into());
    }
    match f.nvars() {
        2 => {
            let system = vec![
                f.clone(),
                f.differentiate(0),
                f.differentiate(1),
            ];
            let (zeros, complete) = affine_common_zeros(&system)?;
            let mut out = Vec::new();
            for (x0, y0) in zeros {
                let p = PlanePoint::new(x0, y0, GaussianRational::one());
                let class = classify_singularity(f, &p)?;
                out.push((p, class));
            }
            Ok((out, complete))
        }
        3 => {
            if !f.is_homogeneous() {
                return Err(PolyError::Degenerate(
                    "projective curves must be homogeneous".into(),
                )
                .into());
            }
            let partials = [
                f.differentiate(0),
                f.differentiate(1),
                f.differentiate(2),
            ];
            // By the Euler relation the three partials cut out the
            // singular locus on their own.
            let system: Vec<MultiPoly> = partials
                .iter()
                .map(|p| p.dehomogenize(2).rename_vars(&["x", "y"]))
                .collect();
            let (zeros, affine_complete) = affine_common_zeros(&system)?;
            let mut points = Vec::new();
            for (x0, y0) in zeros {
                points.push(PlanePoint::new(x0, y0, GaussianRational::one()));
            }
            let (far, far_complete) = points_at_infinity(&partials)?;
            points.extend(far);
            let mut out = Vec::new();
            for p in points {
                let class = classify_singularity(f, &p)?;
                out.push((p, class));
            }
            Ok((out, affine_complete && far_complete))
        }
        n => Err(PolyError::Degenerate(format!(
            "curves live in 2 or 3 variables, got {n}"
        ))
        .into()),
    }
}

/// Singular points on the line z = 0: common roots of the partials
/// restricted there, scanned along (x : 1 : 0) and at (1 : 0 : 0).
fn points_at_infinity(
    partials: &[MultiPoly; 3],
) -> Result<(Vec<PlanePoint>, bool), SingularityError> {
    let mut slices = Vec::new();
    for p in partials {
        // Restrict to y = 1, z = 0; the result is univariate in x.
        let aff = p.dehomogenize(1).rename_vars(&["x", "y"]);
        let along = aff.coeffs_in(1).into_iter().next().unwrap_or_else(|| {
            MultiPoly::zero(&["x", "y"])
        });
        let coeffs = along
            .univariate_in(0)
            .expect("restriction to a line is univariate");
        slices.push(UniGq::from_coeffs(coeffs));
    }
    if slices.iter().all(|s| s.is_zero()) {
        return Err(PolyError::Degenerate(
            "every partial vanishes along the line at infinity".into(),
        )
        .into());
    }
    let mut common = UniGq::zero();
    for s in &slices {
        if !s.is_zero() {
            common = if common.is_zero() { s.clone() } else { common.gcd(s) };
        }
    }
    let mut points = Vec::new();
    let mut complete = true;
    if common.degree() > Some(0) {
        let roots = qi_roots(&common);
        let mut cofactor = common.clone();
        for r in &roots {
            let lin = UniGq::from_coeffs(vec![-r, GaussianRational::one()]);
            for _ in 0..common.root_order(r) {
                cofactor = cofactor.div_exact(&lin).expect("root divides");
            }
            points.push(PlanePoint::new(
                r.clone(),
                GaussianRational::one(),
                GaussianRational::zero(),
            ));
        }
        complete = cofactor.degree() == Some(0);
    }
    let e1 = [
        GaussianRational::one(),
        GaussianRational::zero(),
        GaussianRational::zero(),
    ];
    if partials.iter().all(|p| p.evaluate(&e1).is_zero()) {
        points.push(PlanePoint::new(
            e1[0].clone(),
            e1[1].clone(),
            e1[2].clone(),
        ));
    }
    Ok((points, complete))
}

/// Common zeros in Q(i)² of a system of bivariate polynomials with a
/// zero-dimensional solution set, plus the certificate flag.
fn affine_common_zeros(
    system: &[MultiPoly],
) -> Result<(Vec<(GaussianRational, GaussianRational)>, bool), SingularityError> {
    let gs: Vec<&MultiPoly> = system.iter().filter(|g| !g.is_zero()).collect();
    if gs.iter().any(|g| g.is_constant()) {
        return Ok((Vec::new(), true));
    }
    if gs.len() < 2 {
        return Err(PolyError::Degenerate(
            "the solution set is not zero-dimensional".into(),
        )
        .into());
    }
    let mut shared = (*gs[0]).clone();
    for g in &gs[1..] {
        shared = gcd_bivariate(&shared, g);
    }
    if !shared.is_constant() {
        return Err(PolyError::Degenerate(
            "the equations share a curve component".into(),
        )
        .into());
    }

    let mut eliminant = eliminate_y(&gs)?;

    // First pass; if the leftover factor of the eliminant refuses to
    // split, sharpen it with combination resultants and retry.
    loop {
        let (zeros, complete, spare) = zeros_over_candidates(&gs, &eliminant)?;
        if complete || spare.is_none() {
            return Ok((zeros, complete));
        }
        match sharpen_eliminant(&gs, &eliminant) {
            Some(better) if better.degree() < eliminant.degree() => eliminant = better,
            _ => return Ok((zeros, complete)),
        }
    }
}

/// A nonzero univariate polynomial in x vanishing on every common zero:
/// the gcd of the pairwise y-resultants and of the y-free equations.
fn eliminate_y(gs: &[&MultiPoly]) -> Result<UniGq, SingularityError> {
    let mut collected: Vec<UniGq> = Vec::new();
    for g in gs {
        if g.deg_in(1) == Some(0) {
            let coeffs = g.univariate_in(0).expect("free of y");
            collected.push(UniGq::from_coeffs(coeffs));
        }
    }
    let y_active: Vec<&&MultiPoly> = gs.iter().filter(|g| g.deg_in(1) > Some(0)).collect();
    for i in 0..y_active.len() {
        for j in (i + 1)..y_active.len() {
            let r = resultant(y_active[i], y_active[j], 1);
            if !r.is_zero() {
                let coeffs = r.univariate_in(0).expect("resultant eliminated y");
                collected.push(UniGq::from_coeffs(coeffs));
            }
        }
    }
    if collected.is_empty() {
        // Every pair shares a factor; combinations break the ties.
        for t in combination_ladder() {
            let (u, v) = combine_pair(gs, &t);
            let r = resultant(&u, &v, 1);
            if !r.is_zero() {
                let coeffs = r.univariate_in(0).expect("resultant eliminated y");
                collected.push(UniGq::from_coeffs(coeffs));
                break;
            }
        }
    }
    if collected.is_empty() {
        return Err(PolyError::Degenerate(
            "elimination found no nonzero resultant".into(),
        )
        .into());
    }
    let mut d = collected[0].clone();
    for c in &collected[1..] {
        d = d.gcd(c);
    }
    Ok(d)
}

/// Roots of the eliminant, sliced: for each rational candidate x₀ the
/// remaining equations in y are solved via their gcd. Returns the zeros,
/// the certificate, and the unsplit eliminant factor if one was left.
#[allow(clippy::type_complexity)]
fn zeros_over_candidates(
    gs: &[&MultiPoly],
    eliminant: &UniGq,
) -> Result<
    (
        Vec<(GaussianRational, GaussianRational)>,
        bool,
        Option<UniGq>,
    ),
    SingularityError,
> {
    let mut xs = qi_roots(eliminant);
    xs.sort();
    let mut cofactor = eliminant.clone();
    for x0 in &xs {
        let lin = UniGq::from_coeffs(vec![-x0, GaussianRational::one()]);
        for _ in 0..eliminant.root_order(x0) {
            cofactor = cofactor.div_exact(&lin).expect("root divides");
        }
    }
    let spare = if cofactor.degree() > Some(0) {
        Some(cofactor.clone())
    } else {
        None
    };
    let mut complete = spare.is_none();

    let mut zeros = Vec::new();
    for x0 in xs {
        let mut s = UniGq::zero();
        let mut all_zero = true;
        for g in gs {
            let slice = slice_at_x(g, &x0);
            if slice.is_zero() {
                continue;
            }
            all_zero = false;
            s = if s.is_zero() { slice } else { s.gcd(&slice) };
        }
        if all_zero {
            return Err(PolyError::Degenerate(
                "the equations share a vertical line".into(),
            )
            .into());
        }
        if s.degree() == Some(0) {
            continue; // spurious candidate, nothing above it
        }
        let ys = qi_roots(&s);
        let mut rest = s.clone();
        for y0 in &ys {
            let lin = UniGq::from_coeffs(vec![-y0, GaussianRational::one()]);
            for _ in 0..s.root_order(y0) {
                rest = rest.div_exact(&lin).expect("root divides");
            }
            debug_assert!(gs.iter().all(|g| {
                g.evaluate(&[x0.clone(), y0.clone()]).is_zero()
            }));
            zeros.push((x0.clone(), y0.clone()));
        }
        if rest.degree() > Some(0) {
            complete = false;
        }
    }
    zeros.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok((zeros, complete, spare))
}

fn slice_at_x(g: &MultiPoly, x0: &GaussianRational) -> UniGq {
    let vars = ["x", "y"];
    let images = [
        MultiPoly::constant(&vars, x0.clone()),
        MultiPoly::var(&vars, "y"),
    ];
    let restricted = g.substitute(&images);
    let coeffs = restricted
        .univariate_in(1)
        .expect("slice is univariate in y");
    UniGq::from_coeffs(coeffs)
}

/// Combination resultants thin out spurious eliminant factors: a factor
/// surviving the gcd against several independent combinations almost
/// surely carries actual solutions. Keeps every true zero by
/// construction (gcds only ever shrink the candidate set).
fn sharpen_eliminant(gs: &[&MultiPoly], eliminant: &UniGq) -> Option<UniGq> {
    let mut d = eliminant.clone();
    let mut stable = 0;
    for t in combination_ladder() {
        let (u, v) = combine_pair(gs, &t);
        let r = resultant(&u, &v, 1);
        if r.is_zero() {
            continue;
        }
        let coeffs = r.univariate_in(0).expect("resultant eliminated y");
        let next = d.gcd(&UniGq::from_coeffs(coeffs));
        if next.degree() == d.degree() {
            stable += 1;
            if stable >= 2 {
                break;
            }
        } else {
            stable = 0;
        }
        d = next;
    }
    if d.degree() < eliminant.degree() {
        Some(d)
    } else {
        None
    }
}

/// Two independent generic combinations of the system.
fn combine_pair(gs: &[&MultiPoly], t: &GaussianRational) -> (MultiPoly, MultiPoly) {
    let mut u = (*gs[0]).clone();
    let mut v = (*gs[gs.len() - 1]).clone();
    let mut pw = t.clone();
    for (k, g) in gs.iter().enumerate().skip(1) {
        u = u.add(&g.scale(&pw));
        v = v.add(&gs[gs.len() - 1 - k].scale(&pw));
        pw = &pw * t;
    }
    (u, v)
}

/// Small deterministic Gaussian-integer mixing values.
fn combination_ladder() -> Vec<GaussianRational> {
    [
        (1, 0),
        (0, 1),
        (1, 1),
        (2, 0),
        (1, 2),
        (2, 1),
        (3, 0),
        (0, 2),
        (2, 3),
        (3, 1),
        (1, 3),
        (4, 0),
        (3, 2),
        (0, 3),
        (5, 0),
        (4, 1),
    ]
    .iter()
    .map(|(a, b)| {
        GaussianRational::new(
            crate::exactfield::Rational::from(num::BigInt::from(*a)),
            crate::exactfield::Rational::from(num::BigInt::from(*b)),
        )
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn biv(s: &str) -> MultiPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn proj(s: &str) -> MultiPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn affine_node_only() {
        let (pts, complete) = rational_singular_points(&biv("x^2 - y^2")).unwrap();
        assert!(complete);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, PlanePoint::from_ints(0, 0, 1));
        assert_eq!(pts[0].1, SingularityClass::Node);
    }

    #[test]
    fn smooth_conic_has_none() {
        let (pts, complete) = rational_singular_points(&proj("x^2 + y^2 - z^2")).unwrap();
        assert!(complete);
        assert!(pts.is_empty());
    }

    #[test]
    fn cuspidal_cubic() {
        let (pts, complete) = rational_singular_points(&proj("y^2*z - x^3")).unwrap();
        assert!(complete);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, PlanePoint::from_ints(0, 0, 1));
        assert!(matches!(pts[0].1, SingularityClass::General(_)));
    }

    #[test]
    fn three_nodes_of_a_split_cubic() {
        // A conic times a secant line: nodes at the two crossings plus
        // the conic's own... none; the nodes are the line-conic meets.
        let f = biv("(x^2 - y^2)*(y - 2*x + 1)");
        let (pts, complete) = rational_singular_points(&f).unwrap();
        assert!(complete);
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|(_, c)| *c == SingularityClass::Node));
        assert_eq!(pts[0].0, PlanePoint::from_ints(0, 0, 1));
        assert_eq!(pts[2].0, PlanePoint::from_ints(1, 1, 1));
        let (a, b) = pts[1].0.affine().unwrap();
        assert_eq!(a.to_coeff_string(), "1/3");
        assert_eq!(b.to_coeff_string(), "-1/3");
    }

    #[test]
    fn node_at_infinity() {
        let f = proj("(x + y)*(x + y + z)");
        let (pts, complete) = rational_singular_points(&f).unwrap();
        assert!(complete);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].0, PlanePoint::from_ints(-1, 1, 0));
        assert_eq!(pts[0].1, SingularityClass::Node);
    }

    #[test]
    fn gaussian_coordinates_are_found() {
        // Nodes at (±i, 0): the curve (y - (x²+1))·(y + (x²+1)).
        let f = biv("y^2 - (x^2 + 1)^2");
        let (pts, complete) = rational_singular_points(&f).unwrap();
        assert!(complete);
        assert_eq!(pts.len(), 2);
        let xs: Vec<String> = pts
            .iter()
            .map(|(p, _)| p.affine().unwrap().0.to_coeff_string())
            .collect();
        assert_eq!(xs, vec!["-i", "i"]);
        assert!(pts.iter().all(|(_, c)| *c == SingularityClass::Node));
    }

    #[test]
    fn irrational_singularities_break_completeness() {
        // Nodes at x = ±√2, y = 0; rational list is empty but honest.
        let f = biv("y^2 - (x^2 - 2)^2");
        let (pts, complete) = rational_singular_points(&f).unwrap();
        assert!(pts.is_empty());
        assert!(!complete);
    }

    #[test]
    fn non_squarefree_input_is_rejected() {
        let err = rational_singular_points(&biv("(y - x)^2"));
        assert!(matches!(
            err,
            Err(SingularityError::Poly(PolyError::Degenerate(_)))
        ));
    }
}
