//! Sparse multivariate polynomials over Q(i).
//!
//! The textual format (accepted by [`parse_poly`], produced by `Display`)
//! writes terms joined by `+`/`-`, integer or `(a*i+b)` coefficients and
//! monomials like `x^4*y^2`. Terms are kept in graded-lexicographic order
//! with earlier variables ranked higher; printing runs top-down.

pub mod bivariate;
pub mod factor_count;
pub mod intersect;
pub mod parse;
pub mod uni;
pub mod zi;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::GaussianRational;

pub use bivariate::{gcd_bivariate, is_squarefree, resultant};
pub use factor_count::absolute_factor_count;
pub use intersect::{intersection_multiplicity, local_affine, Intersection};
pub use uni::{qi_roots, rational_roots, UniGq};
pub use parse::{parse_curve_file, parse_poly, ParseError};

/// Errors from polynomial algorithms (parsing has its own error type).
#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("reduction did not finish within {0} steps")]
    InternalLimit(u64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An exponent tuple; one entry per variable of the owning polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent tuples of the given total degree, descending grlex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if acc.len() + 1 == nvars {
            let mut m = acc.clone();
            m.push(d);
            out.push(Monomial(m));
            return;
        }
        for e in (0..=d).rev() {
            acc.push(e);
            rec(nvars, d - e, acc, out);
            acc.pop();
        }
    }
    assert!(nvars >= 1);
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// A sparse polynomial: ordered variable names plus a term map with no
/// stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

pub fn varlist(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: varlist(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: GaussianRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        MultiPoly::constant(vars, GaussianRational::one())
    }

    /// The monomial `name` as a polynomial; panics if the name is unknown.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Monomial(exps), GaussianRational::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, GaussianRational)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.vars.len(), "exponent arity mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> GaussianRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// The constant coefficient (the value at the origin for affine polys).
    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// The smallest total degree among terms (the order at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn deg_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// The sum of the minimal-degree terms; at the origin this is the
    /// tangent cone.
    pub fn lowest_part(&self) -> MultiPoly {
        let Some(m) = self.min_degree() else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.total_degree() == m)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// The highest graded-lex term.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn assert_same_vars(&self, other: &MultiPoly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials live in different variable sets"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = MultiPoly::zero_like(self);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn zero_like(p: &MultiPoly) -> MultiPoly {
        MultiPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_like(self);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v * c))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one_like(self);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn one_like(p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero_like(p);
        out.terms
            .insert(Monomial::one(p.vars.len()), GaussianRational::one());
        out
    }

    /// Divide by the leading grlex coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn differentiate(&self, var: usize) -> MultiPoly {
        assert!(var < self.vars.len());
        let mut out = MultiPoly::zero_like(self);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * &GaussianRational::from_int(e as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `images[k]` for variable k. All images must share one
    /// variable set, which becomes the result's variable set.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len());
        for w in images.windows(2) {
            w[0].assert_same_vars(&w[1]);
        }
        let target = &images[0];
        // Power tables keyed by the largest exponent actually used.
        let mut pows: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| vec![MultiPoly::one_like(im), im.clone()])
            .collect();
        for (v, table) in pows.iter_mut().enumerate() {
            let need = self.deg_in(v).unwrap_or(0) as usize;
            while table.len() <= need {
                let next = table.last().unwrap().mul(&images[v]);
                table.push(next);
            }
        }
        let mut acc = MultiPoly::zero_like(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant_like(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&pows[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    fn constant_like(p: &MultiPoly, c: GaussianRational) -> MultiPoly {
        let mut out = MultiPoly::zero_like(p);
        if !c.is_zero() {
            out.terms.insert(Monomial::one(p.vars.len()), c);
        }
        out
    }

    /// Sets variable `var` to 1 and removes it from the variable list.
    pub fn dehomogenize(&self, var: usize) -> MultiPoly {
        assert!(var < self.vars.len());
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != var)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let exps: Vec<u32> = m
                .0
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != var)
                .map(|(_, &e)| e)
                .collect();
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Inserts a fresh variable at `position` and pads every term with it
    /// so the result is homogeneous of the original total degree.
    pub fn homogenize(&self, name: &str, position: usize) -> MultiPoly {
        assert!(position <= self.vars.len());
        let d = self.degree().unwrap_or(0);
        let mut vars = self.vars.clone();
        vars.insert(position, name.to_string());
        let mut out = MultiPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.insert(position, d - m.total_degree());
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    pub fn rename_vars(&self, names: &[&str]) -> MultiPoly {
        assert_eq!(names.len(), self.vars.len());
        MultiPoly {
            vars: varlist(names),
            terms: self.terms.clone(),
        }
    }

    /// Exact division; None when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.assert_same_vars(divisor);
        let (dm, dc) = divisor.leading()?;
        let dc_inv = dc.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero_like(self);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.div_into(rm);
            let qc = rc * &dc_inv;
            let mut step = MultiPoly::zero_like(self);
            step.terms.insert(qm, qc);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Views a polynomial involving only variable `var` as a coefficient
    /// list (index = exponent); None if other variables occur.
    pub fn univariate_in(&self, var: usize) -> Option<Vec<GaussianRational>> {
        let deg = self.deg_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![GaussianRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            for (k, &e) in m.0.iter().enumerate() {
                if k != var && e > 0 {
                    return None;
                }
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// Coefficients of powers of `var`, each a polynomial with `var`'s
    /// exponent zeroed out; index = exponent of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.deg_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero_like(self); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Rebuilds Σ coeffs[k] * var^k.
    pub fn from_coeffs_in(var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        assert!(!coeffs.is_empty());
        let mut out = MultiPoly::zero_like(&coeffs[0]);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut exps = m.0.clone();
                exps[var] += k as u32;
                out.add_term(Monomial(exps), v.clone());
            }
        }
        out
    }

    /// Contains only rational (real) coefficients.
    pub fn has_rational_coeffs(&self) -> bool {
        self.terms.values().all(GaussianRational::is_rational)
    }

    /// Applies complex conjugation to every coefficient.
    pub fn conj(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.conj()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = {
                let parts: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| {
                        if e == 1 {
                            self.vars[k].clone()
                        } else {
                            format!("{}^{}", self.vars[k], e)
                        }
                    })
                    .collect();
                parts.join("*")
            };
            let piece = if mono.is_empty() {
                c.to_coeff_string()
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{}", c.to_coeff_string(), mono)
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, "-{rest}")?;
            } else {
                write!(f, "+{piece}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A projective plane point (x : y : z), stored scaled so the last
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    coords: [GaussianRational; 3],
}

impl PlanePoint {
    pub fn try_new(
        x: GaussianRational,
        y: GaussianRational,
        z: GaussianRational,
    ) -> Result<Self, PolyError> {
        let raw = [x, y, z];
        let Some(last) = (0..3).rev().find(|&k| !raw[k].is_zero()) else {
            return Err(PolyError::Degenerate("all coordinates are zero".into()));
        };
        let inv = raw[last].inverse().expect("nonzero pivot coordinate");
        let coords = [&raw[0] * &inv, &raw[1] * &inv, &raw[2] * &inv];
        Ok(PlanePoint { coords })
    }

    pub fn new(x: GaussianRational, y: GaussianRational, z: GaussianRational) -> Self {
        PlanePoint::try_new(x, y, z).expect("projective point needs a nonzero coordinate")
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        PlanePoint::new(
            GaussianRational::from_int(x),
            GaussianRational::from_int(y),
            GaussianRational::from_int(z),
        )
    }

    pub fn x(&self) -> &GaussianRational {
        &self.coords[0]
    }

    pub fn y(&self) -> &GaussianRational {
        &self.coords[1]
    }

    pub fn z(&self) -> &GaussianRational {
        &self.coords[2]
    }

    pub fn coords(&self) -> &[GaussianRational; 3] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        !self.coords[2].is_zero()
    }

    /// Affine coordinates (x/z, y/z) for finite points.
    pub fn affine(&self) -> Option<(GaussianRational, GaussianRational)> {
        if self.is_finite() {
            Some((self.coords[0].clone(), self.coords[1].clone()))
        } else {
            None
        }
    }

    pub fn conj(&self) -> PlanePoint {
        PlanePoint::new(
            self.coords[0].conj(),
            self.coords[1].conj(),
            self.coords[2].conj(),
        )
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn xyz() -> [&'static str; 3] {
        ["x", "y", "z"]
    }

    fn p(text: &str) -> MultiPoly {
        parse_poly(text, &xyz()).unwrap()
    }

    #[test]
    fn grlex_ordering() {
        let a = Monomial(vec![6, 0, 0]);
        let b = Monomial(vec![4, 2, 0]);
        let c = Monomial(vec![4, 1, 1]);
        let d = Monomial(vec![0, 0, 5]);
        assert!(a > b && b > c && c > d);
    }

    #[test]
    fn arithmetic_and_degree() {
        let f = p("x^2+y^2");
        let g = p("x^2-y^2");
        let prod = f.mul(&g);
        assert_eq!(prod, p("x^4-y^4"));
        assert_eq!(prod.degree(), Some(4));
        assert!(prod.is_homogeneous());
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn differentiate_basics() {
        let f = p("x^2*y");
        assert_eq!(f.differentiate(0), p("2*x*y"));
        assert_eq!(f.differentiate(2), MultiPoly::zero(&xyz()));
    }

    #[test]
    fn substitution_translates() {
        // f(x+1, y, 1) where f = x^2 - y.
        let f = p("x^2-y");
        let im = [p("x+1"), p("y"), p("1")];
        assert_eq!(f.substitute(&im), p("x^2+2*x-y+1"));
    }

    #[test]
    fn exact_division() {
        let f = p("x^4-y^4");
        let g = p("x^2+y^2");
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q, p("x^2-y^2"));
        assert!(f.div_exact(&p("x+y+1")).is_none());
    }

    #[test]
    fn dehomogenize_and_back() {
        let f = p("x^2*z-y^3+z^3");
        let aff = f.dehomogenize(2);
        assert_eq!(aff.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(aff.homogenize("z", 2), f);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 7).len(), 36);
        assert_eq!(monomials_of_degree(2, 4).len(), 5);
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms[0], Monomial(vec![2, 0, 0]));
        assert_eq!(ms[ms.len() - 1], Monomial(vec![0, 0, 2]));
    }

    #[test]
    fn plane_point_normalization() {
        let a = PlanePoint::from_ints(2, 4, 2);
        let b = PlanePoint::from_ints(1, 2, 1);
        assert_eq!(a, b);
        let inf = PlanePoint::from_ints(3, 6, 0);
        assert!(!inf.is_finite());
        assert_eq!(inf.y(), &GaussianRational::one());
        assert_eq!(inf.x(), &GaussianRational::from_rational(rat(1) / rat(2)));
    }

    #[test]
    fn display_round_trip_examples() {
        for text in [
            "x^2+y^2",
            "4*x^6-273*x^4*y^2",
            "(8*i+420)*x^6*y-560*x^6*z",
            "-x+5/2*y",
            "0",
            "i*x-3*i*y+(2*i+1)*z",
        ] {
            let f = p(text);
            let g = p(&f.to_string());
            assert_eq!(f, g, "round trip failed for {text}");
        }
    }
}
