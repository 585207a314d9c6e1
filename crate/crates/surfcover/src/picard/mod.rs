//! Divisor classes on a blow-up of the projective plane.
//!
//! A configuration lists the blown-up centers in order: plane points and
//! points infinitely near an earlier center in a recorded direction. The
//! Picard lattice then has the orthogonal basis T̃ (pullback of a line,
//! square 1) and one exceptional class per center (square −1); a class
//! is stored as d·T̃ − Σ m_c·E_c.

use std::fmt::Write as _;

use crate::poly::{MultiPoly, PlanePoint, PolyError};
use crate::singularity::{blow_up_local, Direction, LocalCurve, SingularityError};

#[derive(Debug, thiserror::Error)]
pub enum PicardError {
    #[error("divisor classes live on different blow-up configurations")]
    ConfigMismatch,
    #[error("class is not divisible by two")]
    NotEven,
    #[error("unknown center label {0}")]
    UnknownLabel(String),
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error(transparent)]
    Sing(#[from] SingularityError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A blow-up center: a point of the plane, or a point on the exceptional
/// line of an earlier center, reached from it in a given direction.
#[derive(Clone, Debug, PartialEq)]
pub enum Center {
    Plane(PlanePoint),
    InfinitelyNear { parent: usize, direction: Direction },
}

/// The ordered list of blown-up centers, each with the label its
/// exceptional class goes by in reports.
#[derive(Clone, Debug)]
pub struct BlowupConfiguration {
    centers: Vec<(String, Center)>,
    id: u64,
}

fn fnv(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl BlowupConfiguration {
    pub fn new(centers: Vec<(String, Center)>) -> Result<Self, PicardError> {
        let mut seen_labels = std::collections::BTreeSet::new();
        let mut plane_points: Vec<&PlanePoint> = Vec::new();
        for (idx, (label, center)) in centers.iter().enumerate() {
            if !seen_labels.insert(label.clone()) {
                return Err(PicardError::BadConfiguration(format!(
                    "duplicate label {label}"
                )));
            }
            match center {
                Center::Plane(p) => {
                    if plane_points.contains(&p) {
                        return Err(PicardError::BadConfiguration(format!(
                            "plane center {p} listed twice"
                        )));
                    }
                    plane_points.push(p);
                }
                Center::InfinitelyNear { parent, direction } => {
                    if *parent >= idx {
                        return Err(PicardError::BadConfiguration(format!(
                            "center {label} precedes its parent"
                        )));
                    }
                    if matches!(direction, Direction::Unsplit { .. }) {
                        return Err(PicardError::BadConfiguration(format!(
                            "center {label} has no definite direction"
                        )));
                    }
                }
            }
        }
        let mut h: u64 = 0xcbf29ce484222325;
        for (label, center) in &centers {
            h = fnv(h, label.as_bytes());
            match center {
                Center::Plane(p) => h = fnv(h, p.to_string().as_bytes()),
                Center::InfinitelyNear { parent, direction } => {
                    h = fnv(h, &parent.to_le_bytes());
                    h = fnv(h, direction.to_string().as_bytes());
                }
            }
        }
        Ok(BlowupConfiguration { centers, id: h })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.centers.iter().map(|(l, _)| l.as_str())
    }

    pub fn center(&self, idx: usize) -> &Center {
        &self.centers[idx].1
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.centers.iter().position(|(l, _)| l == label)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// The class d·T̃ − Σ mult·E for the listed labels (absent labels
    /// get multiplicity zero; repeated labels accumulate).
    pub fn class(&self, degree: i64, mults: &[(&str, i64)]) -> Result<DivisorClass, PicardError> {
        let mut v = vec![0i64; self.len()];
        for (label, m) in mults {
            let idx = self
                .label_index(label)
                .ok_or_else(|| PicardError::UnknownLabel(label.to_string()))?;
            v[idx] += m;
        }
        Ok(DivisorClass {
            degree,
            mults: v,
            cfg_id: self.id,
        })
    }

    /// The total-transform exceptional class of one center.
    pub fn exceptional(&self, label: &str) -> Result<DivisorClass, PicardError> {
        self.class(0, &[(label, -1)])
    }

    pub fn line(&self) -> DivisorClass {
        DivisorClass {
            degree: 1,
            mults: vec![0; self.len()],
            cfg_id: self.id,
        }
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            degree: 0,
            mults: vec![0; self.len()],
            cfg_id: self.id,
        }
    }

    /// For each center, the earlier centers it is proximate to (its
    /// parent, plus the older center whose exceptional line also passes
    /// through it, for satellite points).
    pub fn proximities(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut v_owner: Vec<Option<usize>> = vec![None; n];
        let mut h_owner: Vec<Option<usize>> = vec![None; n];
        let mut out = vec![Vec::new(); n];
        for idx in 0..n {
            if let Center::InfinitelyNear { parent, direction } = &self.centers[idx].1 {
                let matched = match direction {
                    Direction::Vertical => v_owner[*parent],
                    Direction::Slope(t) if t.is_zero() => h_owner[*parent],
                    _ => None,
                };
                let mut prox = vec![*parent];
                if let Some(older) = matched {
                    prox.push(older);
                }
                prox.sort_unstable();
                out[idx] = prox;
                v_owner[idx] = Some(*parent);
                h_owner[idx] = matched;
            }
        }
        out
    }

    /// Lower unitriangular matrix with −1 at (i, j) when center i is
    /// proximate to center j.
    pub fn proximity_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let prox = self.proximities();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
            for &j in &prox[i] {
                row[j] = -1;
            }
        }
        m
    }
}

/// An element of the Picard lattice of the blown-up plane: the vector
/// (d; m_1, …, m_n) standing for d·T̃ − Σ m_c·E_c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    degree: i64,
    mults: Vec<i64>,
    cfg_id: u64,
}

impl DivisorClass {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    fn assert_same(&self, other: &DivisorClass) {
        assert_eq!(
            self.cfg_id, other.cfg_id,
            "divisor arithmetic across different configurations"
        );
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        self.assert_same(other);
        DivisorClass {
            degree: self.degree + other.degree,
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(a, b)| a + b)
                .collect(),
            cfg_id: self.cfg_id,
        }
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivisorClass {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass {
            degree: k * self.degree,
            mults: self.mults.iter().map(|m| k * m).collect(),
            cfg_id: self.cfg_id,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.mults.iter().all(|m| *m == 0)
    }

    pub fn dot(&self, other: &DivisorClass) -> Result<i64, PicardError> {
        intersection_number(self, other)
    }

    pub fn self_intersection(&self) -> i64 {
        self.degree * self.degree - self.mults.iter().map(|m| m * m).sum::<i64>()
    }

    pub fn describe(&self, cfg: &BlowupConfiguration) -> String {
        assert_eq!(self.cfg_id, cfg.id, "class described with a foreign configuration");
        let mut s = format!("{}T", self.degree);
        for ((label, _), m) in cfg.centers.iter().zip(&self.mults) {
            match m.signum() {
                0 => {}
                1 if *m == 1 => write!(s, " - {label}").unwrap(),
                1 => write!(s, " - {m}{label}").unwrap(),
                _ if *m == -1 => write!(s, " + {label}").unwrap(),
                _ => write!(s, " + {}{label}", -m).unwrap(),
            }
        }
        s
    }

    pub fn to_json(&self, cfg: &BlowupConfiguration) -> serde_json::Value {
        assert_eq!(self.cfg_id, cfg.id, "class serialized with a foreign configuration");
        let mults: Vec<serde_json::Value> = cfg
            .centers
            .iter()
            .zip(&self.mults)
            .map(|((label, _), m)| serde_json::json!({ "label": label, "mult": m }))
            .collect();
        serde_json::json!({ "degree": self.degree, "mults": mults })
    }
}

/// The intersection pairing d_a·d_b − Σ m_a·m_b.
pub fn intersection_number(a: &DivisorClass, b: &DivisorClass) -> Result<i64, PicardError> {
    if a.cfg_id != b.cfg_id {
        return Err(PicardError::ConfigMismatch);
    }
    let e: i64 = a.mults.iter().zip(&b.mults).map(|(x, y)| x * y).sum();
    Ok(a.degree * b.degree - e)
}

///−3T̃ + Σ E_c; squares to 9 − #centers.
pub fn canonical_class(cfg: &BlowupConfiguration) -> DivisorClass {
    DivisorClass {
        degree: -3,
        mults: vec![-1; cfg.len()],
        cfg_id: cfg.id,
    }
}

pub fn is_even(a: &DivisorClass) -> bool {
    a.degree % 2 == 0 && a.mults.iter().all(|m| m % 2 == 0)
}

pub fn halve(a: &DivisorClass) -> Result<DivisorClass, PicardError> {
    if !is_even(a) {
        return Err(PicardError::NotEven);
    }
    Ok(DivisorClass {
        degree: a.degree / 2,
        mults: a.mults.iter().map(|m| m / 2).collect(),
        cfg_id: a.cfg_id,
    })
}

/// Class of the strict transform of the plane curve `f`: deg(f)·T̃ minus
/// the multiplicity of the iterated strict transform at every center.
/// The germs are followed along the configuration's own directions, so
/// centers the curve misses contribute zero.
pub fn strict_transform_class(
    f: &MultiPoly,
    cfg: &BlowupConfiguration,
) -> Result<DivisorClass, PicardError> {
    if f.nvars() != 3 || !f.is_homogeneous() || f.is_zero() {
        return Err(PolyError::Degenerate(
            "strict transforms need a nonzero homogeneous plane curve".into(),
        )
        .into());
    }
    let mut mults = vec![0i64; cfg.len()];
    let mut germs: Vec<Option<LocalCurve>> = vec![None; cfg.len()];
    for idx in 0..cfg.len() {
        match &cfg.centers[idx].1 {
            Center::Plane(p) => {
                let germ = LocalCurve::at_point(f, p)?;
                if germ.multiplicity() >= 1 {
                    mults[idx] = germ.multiplicity() as i64;
                    germs[idx] = Some(germ);
                }
            }
            Center::InfinitelyNear { parent, direction } => {
                if let Some(parent_germ) = &germs[*parent] {
                    match blow_up_local(parent_germ, direction) {
                        Ok(child) => {
                            mults[idx] = child.multiplicity() as i64;
                            germs[idx] = Some(child);
                        }
                        // The curve's cone misses this direction: the
                        // strict transform avoids the center entirely.
                        Err(SingularityError::DirectionNotInTangentCone) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    Ok(DivisorClass {
        degree: f.degree().expect("nonzero") as i64,
        mults,
        cfg_id: cfg.id,
    })
}

/// Outcome of the three linear-equivalence checks a bidouble cover's
/// branch data must satisfy: L_g + D_g ≡ L_j + L_k for {g, j, k} =
/// {1, 2, 3}.
#[derive(Clone, Debug)]
pub struct BidoubleDataReport {
    pub identities: Vec<(String, bool)>,
}

impl BidoubleDataReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
    }
}

pub fn check_bidouble_data(
    d: &[DivisorClass; 3],
    l: &[DivisorClass; 3],
) -> Result<BidoubleDataReport, PicardError> {
    let id = d[0].cfg_id;
    if d.iter().any(|c| c.cfg_id != id) || l.iter().any(|c| c.cfg_id != id) {
        return Err(PicardError::ConfigMismatch);
    }
    let mut identities = Vec::new();
    for g in 0..3 {
        let j = (g + 1) % 3;
        let k = (g + 2) % 3;
        let lhs = l[g].add(&d[g]);
        let rhs = l[j].add(&l[k]);
        let name = format!("L{}+D{} = L{}+L{}", g + 1, g + 1, j + 1, k + 1);
        identities.push((name, lhs == rhs));
    }
    Ok(BidoubleDataReport { identities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational;
    use crate::poly::parse_poly;

    fn proj(s: &str) -> MultiPoly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    fn slope0() -> Direction {
        Direction::Slope(GaussianRational::zero())
    }

    fn simple_cfg() -> BlowupConfiguration {
        BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            (
                "E0'".into(),
                Center::InfinitelyNear {
                    parent: 0,
                    direction: slope0(),
                },
            ),
            ("E1".into(), Center::Plane(PlanePoint::from_ints(1, 2, 1))),
        ])
        .unwrap()
    }

    #[test]
    fn basis_pairings() {
        let cfg = simple_cfg();
        let t = cfg.line();
        let e0 = cfg.exceptional("E0").unwrap();
        let e1 = cfg.exceptional("E1").unwrap();
        assert_eq!(t.dot(&t).unwrap(), 1);
        assert_eq!(e0.dot(&e0).unwrap(), -1);
        assert_eq!(e0.dot(&e1).unwrap(), 0);
        assert_eq!(t.dot(&e0).unwrap(), 0);
    }

    #[test]
    fn canonical_squares() {
        let empty = BlowupConfiguration::new(vec![]).unwrap();
        assert_eq!(canonical_class(&empty).self_intersection(), 9);
        let cfg = simple_cfg();
        assert_eq!(canonical_class(&cfg).self_intersection(), 9 - 3);
    }

    #[test]
    fn bilinear_and_symmetric() {
        let cfg = simple_cfg();
        let a = cfg.class(2, &[("E0", 1), ("E1", 3)]).unwrap();
        let b = cfg.class(5, &[("E0'", 2), ("E1", -1)]).unwrap();
        let c = cfg.class(-1, &[("E0", 4)]).unwrap();
        assert_eq!(a.dot(&b).unwrap(), b.dot(&a).unwrap());
        assert_eq!(
            a.add(&c).dot(&b).unwrap(),
            a.dot(&b).unwrap() + c.dot(&b).unwrap()
        );
        assert_eq!(a.scale(7).dot(&b).unwrap(), 7 * a.dot(&b).unwrap());
    }

    #[test]
    fn nine_t_class_squares_to_minus_five() {
        let mut centers = vec![(
            "E0".to_string(),
            Center::Plane(PlanePoint::from_ints(0, 0, 1)),
        )];
        for i in 1..=3 {
            centers.push((
                format!("E{i}"),
                Center::Plane(PlanePoint::from_ints(i, 1, 1)),
            ));
            centers.push((
                format!("E{i}'"),
                Center::InfinitelyNear {
                    parent: centers.len() - 1,
                    direction: slope0(),
                },
            ));
        }
        centers.push((
            "E4".to_string(),
            Center::Plane(PlanePoint::from_ints(-1, 1, 1)),
        ));
        let cfg = BlowupConfiguration::new(centers).unwrap();
        let class = cfg
            .class(
                9,
                &[
                    ("E0", 5),
                    ("E1", 2),
                    ("E1'", 4),
                    ("E2", 2),
                    ("E2'", 4),
                    ("E3", 2),
                    ("E3'", 4),
                    ("E4", 1),
                ],
            )
            .unwrap();
        assert_eq!(class.self_intersection(), -5);
    }

    #[test]
    fn evenness_and_halving() {
        let cfg = simple_cfg();
        let even = cfg.class(2, &[("E0", 2)]).unwrap();
        assert!(is_even(&even));
        assert_eq!(halve(&even).unwrap(), cfg.class(1, &[("E0", 1)]).unwrap());
        assert!(!is_even(&cfg.line()));
        assert!(matches!(halve(&cfg.line()), Err(PicardError::NotEven)));
    }

    #[test]
    fn strict_transforms_read_tangency() {
        let cfg = simple_cfg();
        // Conic through E0 tangent to y = 0 there: hits the infinitely
        // near center too.
        let conic = proj("y*z - x^2");
        let c = strict_transform_class(&conic, &cfg).unwrap();
        assert_eq!(c, cfg.class(2, &[("E0", 1), ("E0'", 1)]).unwrap());
        // The tangent line itself.
        let tangent = proj("y");
        let t = strict_transform_class(&tangent, &cfg).unwrap();
        assert_eq!(t, cfg.class(1, &[("E0", 1), ("E0'", 1)]).unwrap());
        assert_eq!(t.self_intersection(), -1);
        // A transverse line misses the infinitely near center.
        let vertical = proj("x");
        let v = strict_transform_class(&vertical, &cfg).unwrap();
        assert_eq!(v, cfg.class(1, &[("E0", 1)]).unwrap());
        // A general line misses everything.
        let general = proj("x + y + 7*z");
        assert_eq!(
            strict_transform_class(&general, &cfg).unwrap(),
            cfg.line()
        );
        // A nodal cubic with multiplicity two at the base point.
        let nodal = proj("y^2*z - x^2*z - x^3");
        let n = strict_transform_class(&nodal, &cfg).unwrap();
        assert_eq!(n, cfg.class(3, &[("E0", 2)]).unwrap());
    }

    #[test]
    fn config_mismatch_is_detected() {
        let a = simple_cfg();
        let b = BlowupConfiguration::new(vec![(
            "E0".into(),
            Center::Plane(PlanePoint::from_ints(0, 1, 1)),
        )])
        .unwrap();
        assert!(matches!(
            a.line().dot(&b.line()),
            Err(PicardError::ConfigMismatch)
        ));
    }

    #[test]
    fn bad_configurations_are_rejected() {
        let dup = BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            ("E0".into(), Center::Plane(PlanePoint::from_ints(1, 0, 1))),
        ]);
        assert!(matches!(dup, Err(PicardError::BadConfiguration(_))));
        let twice = BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            ("E1".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
        ]);
        assert!(matches!(twice, Err(PicardError::BadConfiguration(_))));
    }

    #[test]
    fn proximity_of_a_satellite_chain() {
        let cfg = BlowupConfiguration::new(vec![
            ("E0".into(), Center::Plane(PlanePoint::from_ints(0, 0, 1))),
            (
                "E0'".into(),
                Center::InfinitelyNear {
                    parent: 0,
                    direction: slope0(),
                },
            ),
            (
                "E0''".into(),
                Center::InfinitelyNear {
                    parent: 1,
                    direction: Direction::Vertical,
                },
            ),
        ])
        .unwrap();
        assert_eq!(cfg.proximities(), vec![vec![], vec![0], vec![0, 1]]);
        let m = cfg.proximity_matrix();
        assert_eq!(m[0], vec![1, 0, 0]);
        assert_eq!(m[1], vec![-1, 1, 0]);
        assert_eq!(m[2], vec![-1, -1, 1]);
    }

    #[test]
    fn bidouble_identities() {
        let cfg = simple_cfg();
        let z = cfg.zero();
        let report =
            check_bidouble_data(&[z.clone(), z.clone(), z.clone()], &[z.clone(), z.clone(), z])
                .unwrap();
        assert!(report.all_hold());
        assert_eq!(report.identities.len(), 3);

        // 2L_g ≡ D_j + D_k data: D_i = 2T, L_i = 2T works.
        let d2 = cfg.class(2, &[]).unwrap();
        let report = check_bidouble_data(
            &[d2.clone(), d2.clone(), d2.clone()],
            &[d2.clone(), d2.clone(), d2.clone()],
        )
        .unwrap();
        assert!(report.all_hold());

        // Break one identity.
        let bad = check_bidouble_data(
            &[cfg.line(), d2.clone(), d2.clone()],
            &[d2.clone(), d2.clone(), d2],
        )
        .unwrap();
        assert!(!bad.all_hold());
    }

    #[test]
    fn describe_and_json_labels() {
        let cfg = simple_cfg();
        let c = cfg.class(6, &[("E0", 2), ("E0'", 1), ("E1", -1)]).unwrap();
        assert_eq!(c.describe(&cfg), "6T - 2E0 - E0' + E1");
        let v = c.to_json(&cfg);
        assert_eq!(v["degree"], 6);
        assert_eq!(v["mults"][1]["label"], "E0'");
        assert_eq!(v["mults"][1]["mult"], 1);
    }
}
