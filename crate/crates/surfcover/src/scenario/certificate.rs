//! Transversality certificates for finite curve arrangements.
//!
//! One seeded linear change of coordinates puts every intersection of
//! every pair into the affine chart, with pairwise distinct
//! x-coordinates. A single resultant per pair then accounts for the
//! full Bezout budget: the mass sitting at the listed excluded points
//! is divided out with its exact local intersection numbers, and the
//! leftover is transverse precisely when the residual resultant is
//! squarefree. A repeated residual root is either a genuine higher
//! contact, pinned to a point when it is defined over Q(i), or an
//! artifact of the projection, which a fresh shear removes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::GaussianRational;
use crate::poly::{
    intersection_multiplicity, qi_roots, resultant, Intersection, MultiPoly, PlanePoint, UniGq,
};

use super::{point_string, ScenarioError};

const SHEAR_ATTEMPTS: usize = 8;

/// One pair's share of the certificate.
#[derive(Clone, Debug)]
pub struct PairCertificate {
    pub names: (String, String),
    /// Product of the two degrees.
    pub budget: u64,
    /// Local intersection numbers at the excluded points on both curves.
    pub at_excluded: Vec<(PlanePoint, u64)>,
    /// Intersection mass away from the excluded points.
    pub residual_degree: u64,
    pub residual_squarefree: bool,
    /// A residual contact of order two or more, when one was pinned.
    pub tangency: Option<(PlanePoint, u64)>,
    /// Residual intersection points with coordinates in Q(i).
    pub rational_points: Vec<PlanePoint>,
}

impl PairCertificate {
    pub fn transverse(&self) -> bool {
        self.residual_squarefree && self.tangency.is_none()
    }

    pub fn excluded_mass(&self) -> u64 {
        self.at_excluded.iter().map(|(_, k)| k).sum()
    }
}

#[derive(Clone, Debug)]
pub struct TransversalityCertificate {
    /// The coordinate change that separated the intersections:
    /// x = X + dY, y = aX + Y, z = bX + cY + Z for (a, b, c, d).
    pub shear: (i64, i64, i64, i64),
    pub pairs: Vec<PairCertificate>,
    /// Points on three or more of the curves away from the excluded set.
    pub triple_points: Vec<PlanePoint>,
}

impl TransversalityCertificate {
    /// Every residual intersection is a transverse meeting of exactly
    /// two of the curves.
    pub fn certified(&self) -> bool {
        self.triple_points.is_empty() && self.pairs.iter().all(PairCertificate::transverse)
    }

    pub fn pair(&self, a: &str, b: &str) -> Option<&PairCertificate> {
        self.pairs
            .iter()
            .find(|p| (p.names.0 == a && p.names.1 == b) || (p.names.0 == b && p.names.1 == a))
    }
}

enum TryFail {
    Retry,
    Fatal(ScenarioError),
}

/// Accounts for every pairwise intersection of `curves`. Intersections
/// at the `excluded` points are measured exactly and removed; the
/// certificate reports what is left, pair by pair.
pub fn transversality_certificate(
    curves: &[(String, MultiPoly)],
    excluded: &[PlanePoint],
    seed: u64,
) -> Result<TransversalityCertificate, ScenarioError> {
    assert!(curves.len() >= 2, "need at least two curves");
    // local intersection numbers are coordinate independent
    let mut pair_data: Vec<(usize, usize, Vec<(usize, u64)>)> = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let mut at = Vec::new();
            for (pi, p) in excluded.iter().enumerate() {
                match intersection_multiplicity(&curves[i].1, &curves[j].1, p)? {
                    Intersection::Finite(0) => {}
                    Intersection::Finite(k) => at.push((pi, k)),
                    Intersection::Infinite => {
                        return Err(ScenarioError::CertificateInconclusive(format!(
                            "{} and {} share a component through {}",
                            curves[i].0,
                            curves[j].0,
                            point_string(p)
                        )))
                    }
                }
            }
            pair_data.push((i, j, at));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..SHEAR_ATTEMPTS {
        let shear = if attempt == 0 {
            (0, 0, 0, 0)
        } else {
            loop {
                let s = (
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                    rng.gen_range(-5..=5),
                );
                if s.0 * s.3 != 1 {
                    break s;
                }
            }
        };
        match certify_with_shear(curves, excluded, &pair_data, shear) {
            Ok(cert) => return Ok(cert),
            Err(TryFail::Retry) => continue,
            Err(TryFail::Fatal(e)) => return Err(e),
        }
    }
    Err(ScenarioError::CertificateInconclusive(
        "no shear separated the intersection points".into(),
    ))
}

fn certify_with_shear(
    curves: &[(String, MultiPoly)],
    excluded: &[PlanePoint],
    pair_data: &[(usize, usize, Vec<(usize, u64)>)],
    shear: (i64, i64, i64, i64),
) -> Result<TransversalityCertificate, TryFail> {
    let (a, b, c, d) = shear;
    let v3 = ["x", "y", "z"];
    let xv = MultiPoly::var(&v3, "x");
    let yv = MultiPoly::var(&v3, "y");
    let zv = MultiPoly::var(&v3, "z");
    let images = [
        xv.add(&yv.scale(&GaussianRational::from_int(d))),
        xv.scale(&GaussianRational::from_int(a)).add(&yv),
        xv.scale(&GaussianRational::from_int(b))
            .add(&yv.scale(&GaussianRational::from_int(c)))
            .add(&zv),
    ];
    let at_infinity = [
        GaussianRational::zero(),
        GaussianRational::one(),
        GaussianRational::zero(),
    ];
    let mut affine = Vec::new();
    for (_, f) in curves {
        let sheared = f.substitute(&images);
        // the projection center [0:1:0] must lie on no curve, so every
        // affine slice keeps full degree in y
        if sheared.evaluate(&at_infinity).is_zero() {
            return Err(TryFail::Retry);
        }
        affine.push(sheared.dehomogenize(2));
    }
    let Some(xi) = sheared_excluded(excluded, shear) else {
        return Err(TryFail::Retry);
    };

    let mut pairs = Vec::new();
    let mut residuals: BTreeMap<(usize, usize), UniGq> = BTreeMap::new();
    for (i, j, at) in pair_data {
        let (i, j) = (*i, *j);
        let budget = curves[i].1.degree().unwrap_or(0) as u64
            * curves[j].1.degree().unwrap_or(0) as u64;
        let r_poly = resultant(&affine[i], &affine[j], 1);
        let mut r = UniGq::from_multipoly(&r_poly, 0).expect("resultant eliminates y");
        if r.is_zero() {
            return Err(TryFail::Fatal(ScenarioError::CertificateInconclusive(
                format!("{} and {} share a component", curves[i].0, curves[j].0),
            )));
        }
        // full degree means no intersection escaped to infinity
        if r.degree() != Some(budget as usize) {
            return Err(TryFail::Retry);
        }
        let mut groups: BTreeMap<GaussianRational, u64> = BTreeMap::new();
        for (pi, mass) in at {
            *groups.entry(xi[*pi].clone()).or_insert(0) += mass;
        }
        for (x0, mass) in &groups {
            let k = r.root_order(x0) as u64;
            if k > *mass {
                return Err(TryFail::Retry);
            }
            if k < *mass {
                return Err(TryFail::Fatal(ScenarioError::CertificateInconclusive(
                    format!(
                        "resultant of {} and {} carries less mass than the local numbers",
                        curves[i].0, curves[j].0
                    ),
                )));
            }
            let lin = UniGq::from_coeffs(vec![-x0, GaussianRational::one()]);
            for _ in 0..*mass {
                r = r.div_exact(&lin).expect("verified root order");
            }
        }
        let residual_degree = r.degree().unwrap_or(0) as u64;
        let residual_squarefree = r.squarefree_part().degree() == r.degree();
        let mut tangency = None;
        let mut rational_points = Vec::new();
        if residual_squarefree {
            if residual_degree > 0 {
                for xstar in qi_roots(&r) {
                    for ystar in qi_roots(&fiber_gcd(&[&affine[i], &affine[j]], &xstar)) {
                        rational_points.push(to_original(shear, &xstar, &ystar));
                    }
                }
            }
        } else {
            let mult_locus = r.gcd(&r.derivative());
            let mut pinned = false;
            'hunt: for xstar in qi_roots(&mult_locus) {
                for ystar in qi_roots(&fiber_gcd(&[&affine[i], &affine[j]], &xstar)) {
                    let p = to_original(shear, &xstar, &ystar);
                    let m = intersection_multiplicity(&curves[i].1, &curves[j].1, &p)
                        .map_err(|e| TryFail::Fatal(e.into()))?;
                    if let Intersection::Finite(m) = m {
                        if m >= 2 {
                            tangency = Some((p, m));
                            pinned = true;
                            break 'hunt;
                        }
                    }
                }
            }
            // no pinned contact: likely two transverse points sharing
            // an x-coordinate, which a new shear separates
            if !pinned {
                return Err(TryFail::Retry);
            }
        }
        residuals.insert((i, j), r);
        pairs.push(PairCertificate {
            names: (curves[i].0.clone(), curves[j].0.clone()),
            budget,
            at_excluded: at.iter().map(|(pi, m)| (excluded[*pi].clone(), *m)).collect(),
            residual_degree,
            residual_squarefree,
            tangency,
            rational_points,
        });
    }

    let mut triple_points: Vec<PlanePoint> = Vec::new();
    let n = curves.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let g = residuals[&(i, j)]
                    .gcd(&residuals[&(i, k)])
                    .gcd(&residuals[&(j, k)]);
                if g.degree() == Some(0) {
                    continue;
                }
                let mut leftover = g.clone();
                for xstar in qi_roots(&g) {
                    let ord = leftover.root_order(&xstar);
                    let lin = UniGq::from_coeffs(vec![-&xstar, GaussianRational::one()]);
                    for _ in 0..ord {
                        leftover = leftover.div_exact(&lin).expect("known root");
                    }
                    let s = fiber_gcd(&[&affine[i], &affine[j], &affine[k]], &xstar);
                    if s.degree().unwrap_or(0) == 0 {
                        continue; // same x, different points
                    }
                    let ys = qi_roots(&s);
                    if ys.is_empty() {
                        return Err(TryFail::Fatal(ScenarioError::CertificateInconclusive(
                            "triple contact at an irrational point".into(),
                        )));
                    }
                    for ystar in ys {
                        let p = to_original(shear, &xstar, &ystar);
                        if !triple_points.contains(&p) {
                            triple_points.push(p);
                        }
                    }
                }
                if leftover.degree() != Some(0) {
                    return Err(TryFail::Retry);
                }
            }
        }
    }

    Ok(TransversalityCertificate {
        shear,
        pairs,
        triple_points,
    })
}

/// Affine x-coordinates of the excluded points after the shear; `None`
/// when one of them lands on the new line at infinity.
fn sheared_excluded(
    excluded: &[PlanePoint],
    shear: (i64, i64, i64, i64),
) -> Option<Vec<GaussianRational>> {
    let (a, b, c, d) = shear;
    let det = GaussianRational::from_int(1 - a * d);
    let det_inv = det.inverse().ok()?;
    let ga = GaussianRational::from_int(a);
    let gb = GaussianRational::from_int(b);
    let gc = GaussianRational::from_int(c);
    let gd = GaussianRational::from_int(d);
    let mut out = Vec::new();
    for p in excluded {
        let [x0, y0, z0] = p.coords();
        let xn = &(x0 - &(&gd * y0)) * &det_inv;
        let yn = &(y0 - &(&ga * x0)) * &det_inv;
        let zn = &(z0 - &(&gb * &xn)) - &(&gc * &yn);
        if zn.is_zero() {
            return None;
        }
        out.push(&xn * &zn.inverse().expect("checked nonzero"));
    }
    Some(out)
}

/// Gcd of the y-slices of `affs` over x = `xstar`; its roots are the
/// y-coordinates common to all of them in that fiber.
fn fiber_gcd(affs: &[&MultiPoly], xstar: &GaussianRational) -> UniGq {
    let v2 = ["x", "y"];
    let images = [
        MultiPoly::constant(&v2, xstar.clone()),
        MultiPoly::var(&v2, "y"),
    ];
    let mut g: Option<UniGq> = None;
    for f in affs {
        let s = UniGq::from_multipoly(&f.substitute(&images), 1).expect("x eliminated");
        g = Some(match g {
            Some(acc) => acc.gcd(&s),
            None => s,
        });
    }
    g.expect("at least one slice")
}

fn to_original(shear: (i64, i64, i64, i64), xs: &GaussianRational, ys: &GaussianRational) -> PlanePoint {
    let (a, b, c, d) = shear;
    let ga = GaussianRational::from_int(a);
    let gb = GaussianRational::from_int(b);
    let gc = GaussianRational::from_int(c);
    let gd = GaussianRational::from_int(d);
    let x = xs + &(&gd * ys);
    let y = &(&ga * xs) + ys;
    let z = &(&(&gb * xs) + &(&gc * ys)) + &GaussianRational::one();
    PlanePoint::new(x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn curve(name: &str, text: &str) -> (String, MultiPoly) {
        (name.to_string(), parse_poly(text, &["x", "y", "z"]).unwrap())
    }

    #[test]
    fn transverse_line_and_circle() {
        let cs = vec![curve("C", "x^2 + y^2 - z^2"), curve("L", "y")];
        let cert = transversality_certificate(&cs, &[], 0).unwrap();
        assert!(cert.certified());
        let pair = cert.pair("L", "C").unwrap();
        assert_eq!(pair.budget, 2);
        assert_eq!(pair.residual_degree, 2);
        assert_eq!(pair.rational_points.len(), 2);
        assert!(pair
            .rational_points
            .contains(&PlanePoint::from_ints(1, 0, 1)));
        assert!(pair
            .rational_points
            .contains(&PlanePoint::from_ints(-1, 0, 1)));
    }

    #[test]
    fn tangent_line_is_reported_with_its_contact_point() {
        let cs = vec![curve("C", "x^2 + y^2 - z^2"), curve("T", "y - z")];
        let cert = transversality_certificate(&cs, &[], 0).unwrap();
        assert!(!cert.certified());
        let pair = cert.pair("C", "T").unwrap();
        assert!(!pair.residual_squarefree);
        let (p, m) = pair.tangency.as_ref().unwrap();
        assert_eq!(p, &PlanePoint::from_ints(0, 1, 1));
        assert_eq!(*m, 2);
    }

    #[test]
    fn excluding_the_contact_point_certifies_the_rest() {
        let cs = vec![curve("C", "x^2 + y^2 - z^2"), curve("T", "y - z")];
        let touch = PlanePoint::from_ints(0, 1, 1);
        let cert = transversality_certificate(&cs, &[touch.clone()], 0).unwrap();
        assert!(cert.certified());
        let pair = cert.pair("C", "T").unwrap();
        assert_eq!(pair.at_excluded, vec![(touch, 2)]);
        assert_eq!(pair.residual_degree, 0);
    }

    #[test]
    fn concurrent_lines_show_up_as_a_triple_point() {
        let cs = vec![
            curve("L1", "x - y"),
            curve("L2", "y - z"),
            curve("L3", "-x - y + 2*z"),
        ];
        let cert = transversality_certificate(&cs, &[], 0).unwrap();
        assert!(!cert.certified());
        assert_eq!(cert.triple_points, vec![PlanePoint::from_ints(1, 1, 1)]);
        assert!(cert.pairs.iter().all(PairCertificate::transverse));

        let hub = PlanePoint::from_ints(1, 1, 1);
        let cert = transversality_certificate(&cs, &[hub], 0).unwrap();
        assert!(cert.certified());
        assert!(cert.triple_points.is_empty());
    }

    #[test]
    fn vertical_members_force_a_shear() {
        // x = 0 passes through the default projection center [0:1:0]
        let cs = vec![curve("C", "x^2 + y^2 - z^2"), curve("V", "x")];
        let cert = transversality_certificate(&cs, &[], 3).unwrap();
        assert!(cert.certified());
        assert_ne!(cert.shear, (0, 0, 0, 0));
        let pair = cert.pair("C", "V").unwrap();
        assert_eq!(pair.rational_points.len(), 2);
        assert!(pair
            .rational_points
            .contains(&PlanePoint::from_ints(0, 1, 1)));
        assert!(pair
            .rational_points
            .contains(&PlanePoint::from_ints(0, -1, 1)));
    }
}
