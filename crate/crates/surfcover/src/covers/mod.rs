//! Numerical invariants of double and bidouble covers, and a small
//! Gram-matrix calculus for intersection bookkeeping on the covering
//! surface.
//!
//! Throughout, the base of a bidouble cover is a blow-up of the plane
//! (χ = 1, p_g = 0), while the double-cover formulas work over an
//! ambient abelian, K3 or Enriques surface, all with numerically
//! trivial canonical class.

use crate::linsys::{h0_class, LinsysError};
use crate::picard::{
    canonical_class, check_bidouble_data, BlowupConfiguration, DivisorClass, PicardError,
};

#[derive(Debug, thiserror::Error)]
pub enum CoversError {
    #[error("branch contract violated: {0}")]
    BranchContractViolated(String),
    #[error("inconsistent declaration: {0}")]
    InconsistentDeclaration(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub pg: Option<i64>,
    pub ksq: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Abelian,
    K3,
    Enriques,
}

impl Ambient {
    /// (χ of the ambient surface, number of disjoint (−2)-curves the
    /// branch picks up from it).
    fn profile(self) -> (i64, i64) {
        match self {
            Ambient::Abelian => (0, 0),
            Ambient::K3 => (2, 16),
            Ambient::Enriques => (1, 8),
        }
    }
}

/// Input data for the double-cover invariant formulas: S is the smooth
/// model of a double cover of the ambient surface branched over B plus
/// n disjoint (−2)-curves, with B² = 16, B + ΣA ≡ 2L, and exactly one
/// (3,3)-point on B.
#[derive(Clone, Copy, Debug)]
pub struct Prop1Input {
    pub ambient: Ambient,
    pub chi_x: i64,
    pub n: i64,
    pub l_square: i64,
    pub l_dot_k: i64,
    pub b_square: i64,
    pub branch_disjoint_from_nodes: bool,
    pub single_triple_triple_point: bool,
}

impl Prop1Input {
    /// The canonical row of the table for one ambient type, with L²
    /// forced by (2L)² = 16 − 2n.
    pub fn for_ambient(ambient: Ambient) -> Prop1Input {
        let (chi_x, n) = ambient.profile();
        Prop1Input {
            ambient,
            chi_x,
            n,
            l_square: (16 - 2 * n) / 4,
            l_dot_k: 0,
            b_square: 16,
            branch_disjoint_from_nodes: true,
            single_triple_triple_point: true,
        }
    }
}

/// χ and K² of the double cover: 2χ_X + ½L(K_X+L) − 1 and
/// 2(K_X+L)² + n − 1, the trailing −1s being the (3,3)-point
/// correction.
pub fn prop1_invariants(input: &Prop1Input) -> Result<SurfaceInvariants, CoversError> {
    let (chi_x, n) = input.ambient.profile();
    if input.chi_x != chi_x || input.n != n {
        return Err(CoversError::BranchContractViolated(format!(
            "ambient type expects chi = {chi_x}, n = {n}"
        )));
    }
    if input.b_square != 16 {
        return Err(CoversError::BranchContractViolated(
            "the reduced branch curve must have square 16".into(),
        ));
    }
    if 4 * input.l_square != 16 - 2 * input.n {
        return Err(CoversError::BranchContractViolated(
            "(2L)^2 must equal 16 - 2n".into(),
        ));
    }
    if input.l_dot_k != 0 {
        return Err(CoversError::BranchContractViolated(
            "the ambient canonical class is numerically trivial".into(),
        ));
    }
    if !input.branch_disjoint_from_nodes {
        return Err(CoversError::BranchContractViolated(
            "B must avoid the nodal curves".into(),
        ));
    }
    if !input.single_triple_triple_point {
        return Err(CoversError::BranchContractViolated(
            "the correction applies to exactly one (3,3)-point".into(),
        ));
    }
    let l_k_l = input.l_dot_k + input.l_square;
    if l_k_l % 2 != 0 {
        return Err(CoversError::BranchContractViolated(
            "L(K_X+L) must be even".into(),
        ));
    }
    let chi = 2 * input.chi_x + l_k_l / 2 - 1;
    // (K_X+L)² with K_X numerically trivial.
    let kl_sq = input.l_square + 2 * input.l_dot_k;
    let ksq = 2 * kl_sq + input.n - 1;
    Ok(SurfaceInvariants {
        chi,
        pg: None,
        ksq,
    })
}

/// χ, p_g and K² of the bidouble cover of the blown-up plane with
/// branch classes D_i and square roots L_i.
pub fn bidouble_invariants(
    ds: &[DivisorClass; 3],
    ls: &[DivisorClass; 3],
    cfg: &BlowupConfiguration,
    catalog: &[DivisorClass],
) -> Result<SurfaceInvariants, CoversError> {
    let data = check_bidouble_data(ds, ls)?;
    if !data.all_hold() {
        return Err(CoversError::InconsistentDeclaration(
            "branch data fails the bidouble identities".into(),
        ));
    }
    let k = canonical_class(cfg);
    let mut sum = 0;
    let mut pg = 0;
    for l in ls {
        sum += l.dot(&k.add(l))?;
        pg += h0_class(&k.add(l), cfg, catalog)?;
    }
    if sum % 2 != 0 {
        return Err(CoversError::InconsistentDeclaration(
            "Σ L_i(K_X+L_i) must be even".into(),
        ));
    }
    let chi = 4 + sum / 2;
    let total = ls[0].add(&ls[1]).add(&ls[2]);
    let ksq = k.scale(2).add(&total).self_intersection();
    Ok(SurfaceInvariants {
        chi,
        pg: Some(pg),
        ksq,
    })
}

/// K² after contracting disjoint (−1)-curves.
pub fn minimal_model_ksq(ksq: i64, contracted: u32) -> i64 {
    ksq + contracted as i64
}

/// A generator of the cover's working lattice: the pullback of a base
/// class, or (for a reduced branch component, whose pullback is twice
/// the generator) half of one. A split declaration asserts the
/// generator is a union of disjoint components of equal square.
#[derive(Clone, Debug)]
pub struct GeneratorDecl {
    pub label: String,
    pub base: DivisorClass,
    pub is_branch: bool,
    pub split: Option<(u32, i64)>,
}

impl GeneratorDecl {
    pub fn pullback(label: &str, base: DivisorClass) -> Self {
        GeneratorDecl {
            label: label.into(),
            base,
            is_branch: false,
            split: None,
        }
    }

    pub fn branch(label: &str, base: DivisorClass) -> Self {
        GeneratorDecl {
            label: label.into(),
            base,
            is_branch: true,
            split: None,
        }
    }

    pub fn with_split(mut self, components: u32, component_square: i64) -> Self {
        self.split = Some((components, component_square));
        self
    }
}

/// Labeled generators with their exact pairwise intersection numbers
/// on the cover.
#[derive(Clone, Debug)]
pub struct CoverLattice {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

/// Build the Gram matrix from base pairings: π*A·π*B = deg(π)·A·B, and
/// each branch flag halves the corresponding pullback.
pub fn cover_gram(gens: &[GeneratorDecl], cover_degree: i64) -> Result<CoverLattice, CoversError> {
    let n = gens.len();
    let mut gram = vec![vec![0i64; n]; n];
    for j in 0..n {
        for k in j..n {
            let base = gens[j].base.dot(&gens[k].base)?;
            let num = cover_degree * base;
            let halvings = gens[j].is_branch as u32 + gens[k].is_branch as u32;
            let den = 1i64 << halvings;
            if num % den != 0 {
                return Err(CoversError::InconsistentDeclaration(format!(
                    "{} . {} is not an integer on the cover",
                    gens[j].label, gens[k].label
                )));
            }
            gram[j][k] = num / den;
            gram[k][j] = num / den;
        }
    }
    for (j, g) in gens.iter().enumerate() {
        if let Some((components, square)) = g.split {
            if components as i64 * square != gram[j][j] {
                return Err(CoversError::InconsistentDeclaration(format!(
                    "{} declared as {} disjoint components of square {}, total {}",
                    g.label, components, square, gram[j][j]
                )));
            }
        }
    }
    Ok(CoverLattice {
        labels: gens.iter().map(|g| g.label.clone()).collect(),
        gram,
    })
}

impl CoverLattice {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    fn index(&self, label: &str) -> Result<usize, CoversError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CoversError::UnknownGenerator(label.into()))
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<i64, CoversError> {
        Ok(self.gram[self.index(a)?][self.index(b)?])
    }

    /// Pairing of two integer combinations of generators.
    pub fn combo_pairing(
        &self,
        a: &[(&str, i64)],
        b: &[(&str, i64)],
    ) -> Result<i64, CoversError> {
        let mut total = 0;
        for (la, ca) in a {
            let ia = self.index(la)?;
            for (lb, cb) in b {
                total += ca * cb * self.gram[ia][self.index(lb)?];
            }
        }
        Ok(total)
    }

    /// True iff the two combinations pair equally against every
    /// generator.
    pub fn verify_class_identity(
        &self,
        lhs: &[(&str, i64)],
        rhs: &[(&str, i64)],
    ) -> Result<bool, CoversError> {
        for label in &self.labels {
            let probe = [(label.as_str(), 1)];
            if self.combo_pairing(lhs, &probe)? != self.combo_pairing(rhs, &probe)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Self-intersection after contracting disjoint (−1)-curves the class
/// meets with the recorded multiplicities: c² + Σ m².
pub fn contracted_self_intersection(
    lat: &CoverLattice,
    label: &str,
    record: &[(String, i64)],
) -> Result<i64, CoversError> {
    let base = lat.pairing(label, label)?;
    Ok(base + record.iter().map(|(_, m)| m * m).sum::<i64>())
}

/// Pairing after contraction: curves both classes meet contribute the
/// product of their multiplicities.
pub fn contracted_pairing(
    raw: i64,
    record_a: &[(String, i64)],
    record_b: &[(String, i64)],
) -> i64 {
    let mut total = raw;
    for (la, ma) in record_a {
        for (lb, mb) in record_b {
            if la == lb {
                total += ma * mb;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::Center;
    use crate::poly::PlanePoint;

    #[test]
    fn prop1_table_is_one_seven() {
        for ambient in [Ambient::Abelian, Ambient::K3, Ambient::Enriques] {
            let inv = prop1_invariants(&Prop1Input::for_ambient(ambient)).unwrap();
            assert_eq!((inv.chi, inv.ksq), (1, 7));
        }
    }

    #[test]
    fn prop1_preconditions_are_enforced() {
        let mut bad = Prop1Input::for_ambient(Ambient::Abelian);
        bad.b_square = 14;
        assert!(matches!(
            prop1_invariants(&bad),
            Err(CoversError::BranchContractViolated(_))
        ));
        let mut bad = Prop1Input::for_ambient(Ambient::K3);
        bad.l_square = 4;
        assert!(prop1_invariants(&bad).is_err());
        let mut bad = Prop1Input::for_ambient(Ambient::Enriques);
        bad.single_triple_triple_point = false;
        assert!(prop1_invariants(&bad).is_err());
    }

    #[test]
    fn minimal_model_correction() {
        assert_eq!(minimal_model_ksq(-5, 12), 7);
        assert_eq!(minimal_model_ksq(-9, 16), 7);
        assert_eq!(minimal_model_ksq(3, 0), 3);
    }

    fn one_center() -> BlowupConfiguration {
        BlowupConfiguration::new(vec![(
            "E0".into(),
            Center::Plane(PlanePoint::from_ints(0, 0, 1)),
        )])
        .unwrap()
    }

    #[test]
    fn branch_generators_halve_pullbacks() {
        let cfg = one_center();
        let e = cfg.exceptional("E0").unwrap();
        let h = cfg.line();
        let lat = cover_gram(
            &[
                GeneratorDecl::branch("Ebar", e),
                GeneratorDecl::pullback("H", h),
            ],
            4,
        )
        .unwrap();
        assert_eq!(lat.pairing("Ebar", "Ebar").unwrap(), -1);
        assert_eq!(lat.pairing("H", "H").unwrap(), 4);
        assert_eq!(lat.pairing("Ebar", "H").unwrap(), 0);
    }

    #[test]
    fn split_declarations_are_validated() {
        let cfg = one_center();
        let a = cfg.class(0, &[("E0", 1)]).unwrap().add(&cfg.line()); // square 0
        let ok = cover_gram(
            &[GeneratorDecl::branch("A", a.clone()).with_split(2, 0)],
            4,
        );
        assert!(ok.is_ok());
        let bad = cover_gram(&[GeneratorDecl::branch("A", a).with_split(2, -1)], 4);
        assert!(matches!(
            bad,
            Err(CoversError::InconsistentDeclaration(_))
        ));
        // Degree 2 cover: half a branch of odd square is not integral.
        let e = one_center().exceptional("E0").unwrap();
        let frac = cover_gram(&[GeneratorDecl::branch("E", e)], 2);
        assert!(frac.is_err());
    }

    #[test]
    fn identities_check_against_all_generators() {
        let cfg = one_center();
        let lat = cover_gram(
            &[
                GeneratorDecl::pullback("H", cfg.line()),
                GeneratorDecl::pullback("E", cfg.exceptional("E0").unwrap()),
                GeneratorDecl::pullback("C", cfg.class(1, &[("E0", 1)]).unwrap()),
            ],
            2,
        )
        .unwrap();
        // H − E and C pair identically with everything.
        assert!(lat
            .verify_class_identity(&[("H", 1), ("E", -1)], &[("C", 1)])
            .unwrap());
        assert!(!lat
            .verify_class_identity(&[("H", 1)], &[("C", 1)])
            .unwrap());
        assert!(lat
            .verify_class_identity(&[("H", 2)], &[("H", 2)])
            .unwrap());
    }

    #[test]
    fn contraction_bookkeeping() {
        let cfg = one_center();
        let lat = cover_gram(&[GeneratorDecl::pullback("R", cfg.line())], 2).unwrap();
        assert_eq!(lat.pairing("R", "R").unwrap(), 2 * 1);
        let record: Vec<(String, i64)> = vec![
            ("xi3a".into(), 1),
            ("xi3b".into(), 1),
            ("xi4a".into(), 1),
            ("xi4b".into(), 1),
            ("Ebar3".into(), 2),
        ];
        assert_eq!(
            contracted_self_intersection(&lat, "R", &record).unwrap(),
            2 + 4 + 4
        );
        assert_eq!(contracted_self_intersection(&lat, "R", &[]).unwrap(), 2);
        let other: Vec<(String, i64)> = vec![("xi3a".into(), 3), ("zeta".into(), 5)];
        assert_eq!(contracted_pairing(1, &record, &other), 1 + 3);
    }

    #[test]
    fn bidouble_arithmetic_on_plane_data() {
        let cfg = BlowupConfiguration::new(vec![]).unwrap();
        let d = cfg.class(2, &[]).unwrap();
        let l = cfg.class(2, &[]).unwrap();
        let inv = bidouble_invariants(
            &[d.clone(), d.clone(), d],
            &[l.clone(), l.clone(), l],
            &cfg,
            &[],
        )
        .unwrap();
        assert_eq!(inv.chi, 4 + (-2 - 2 - 2) / 2);
        assert_eq!(inv.pg, Some(0));
        assert_eq!(inv.ksq, 0);
    }

    #[test]
    fn bad_bidouble_data_is_rejected() {
        let cfg = BlowupConfiguration::new(vec![]).unwrap();
        let d = cfg.class(2, &[]).unwrap();
        let l = cfg.class(2, &[]).unwrap();
        let res = bidouble_invariants(
            &[cfg.line(), d.clone(), d],
            &[l.clone(), l.clone(), l],
            &cfg,
            &[],
        );
        assert!(matches!(
            res,
            Err(CoversError::InconsistentDeclaration(_))
        ));
    }
}
