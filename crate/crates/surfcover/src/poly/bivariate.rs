//! Resultants and gcds of multivariate polynomials, eliminating one
//! variable at a time over the ring generated by the others.
//!
//! Both operations run the classical subresultant remainder sequence
//! with the g/h coefficient bookkeeping, so every division along the way
//! is exact and no rational blow-up occurs in intermediate rows.

use super::{MultiPoly, PolyError};

/// Coefficient list of a polynomial viewed in one main variable; entry k
/// is the coefficient of var^k, a polynomial in the remaining variables.
struct MainVar {
    var: usize,
    c: Vec<MultiPoly>,
}

impl MainVar {
    fn split(p: &MultiPoly, var: usize) -> MainVar {
        let mut c = p.coeffs_in(var);
        while c.last().is_some_and(MultiPoly::is_zero) {
            c.pop();
        }
        MainVar { var, c }
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn lc(&self) -> &MultiPoly {
        self.c.last().expect("nonzero polynomial")
    }

    fn scale(&self, f: &MultiPoly) -> MainVar {
        MainVar {
            var: self.var,
            c: self.c.iter().map(|p| p.mul(f)).collect(),
        }
    }

    fn div_exact(&self, f: &MultiPoly) -> MainVar {
        MainVar {
            var: self.var,
            c: self
                .c
                .iter()
                .map(|p| {
                    p.div_exact(f)
                        .expect("subresultant division is exact by construction")
                })
                .collect(),
        }
    }

    fn trim(mut self) -> MainVar {
        while self.c.last().is_some_and(MultiPoly::is_zero) {
            self.c.pop();
        }
        self
    }

    /// Pseudo-remainder: exactly lc(d)^(deg self - deg d + 1) * self mod d.
    fn prem(&self, d: &MainVar) -> MainVar {
        assert!(!d.is_zero() && self.degree() >= d.degree());
        let dl = d.lc();
        let dd = d.degree();
        let mut e = (self.degree() - dd + 1) as u32;
        let mut r = MainVar {
            var: self.var,
            c: self.c.clone(),
        };
        while !r.is_zero() && r.degree() >= dd {
            let top = r.lc().clone();
            let shift = (r.degree() - dd) as usize;
            let mut next = vec![zero_like(&top); r.c.len()];
            for (k, p) in r.c.iter().enumerate() {
                next[k] = p.mul(dl);
            }
            for (j, b) in d.c.iter().enumerate() {
                next[shift + j] = next[shift + j].sub(&top.mul(b));
            }
            r = MainVar {
                var: self.var,
                c: next,
            }
            .trim();
            e -= 1;
        }
        if e > 0 {
            let f = dl.pow(e);
            r = r.scale(&f);
        }
        r
    }

    fn join(&self) -> MultiPoly {
        if self.c.is_empty() {
            panic!("joining the zero polynomial needs a variable context");
        }
        MultiPoly::from_coeffs_in(self.var, &self.c)
    }
}

fn zero_like(p: &MultiPoly) -> MultiPoly {
    p.sub(p)
}

fn one_like(p: &MultiPoly) -> MultiPoly {
    let names: Vec<&str> = p.vars().iter().map(String::as_str).collect();
    MultiPoly::one(&names)
}

/// The resultant of F and G eliminating `var`. Zero exactly when F and G
/// share a factor of positive degree in `var`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    assert!(var < f.vars().len());
    if f.is_zero() || g.is_zero() {
        return zero_like(f);
    }
    let mut a = MainVar::split(f, var);
    let mut b = MainVar::split(g, var);
    let mut sign_flip = false;
    if a.degree() < b.degree() {
        if (a.degree() * b.degree()) % 2 == 1 {
            sign_flip = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == 0 {
        // Res(A, c) = c^(deg A).
        let r = b.c[0].pow(a.degree() as u32);
        return if sign_flip { r.neg() } else { r };
    }
    let one = one_like(f);
    let mut g_coef = one.clone();
    let mut h_coef = one;
    let mut s_negative = sign_flip;
    loop {
        let d = (a.degree() - b.degree()) as u32;
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s_negative = !s_negative;
        }
        let r = a.prem(&b);
        a = b;
        let divisor = g_coef.mul(&h_coef.pow(d));
        b = r.div_exact(&divisor).trim();
        g_coef = a.lc().clone();
        h_coef = if d == 0 {
            h_coef
        } else {
            g_coef
                .pow(d)
                .div_exact(&h_coef.pow(d - 1))
                .expect("h update divides exactly")
        };
        if b.is_zero() {
            return zero_like(&g_coef);
        }
        if b.degree() == 0 {
            break;
        }
    }
    let q = a.degree() as u32;
    let res = b.c[0]
        .pow(q)
        .div_exact(&h_coef.pow(q - 1))
        .expect("final subresultant division is exact");
    if s_negative {
        res.neg()
    } else {
        res
    }
}

/// A gcd of F and G, normalized so the leading graded-lex coefficient
/// is 1. Works in any number of variables by recursing on contents.
pub fn gcd_bivariate(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let nvars = f.vars().len();
    let main = (0..nvars)
        .rev()
        .find(|&v| f.deg_in(v).unwrap_or(0) > 0 || g.deg_in(v).unwrap_or(0) > 0);
    let Some(v) = main else {
        return one_like(f);
    };
    let (cf, pf) = content_split(f, v);
    let (cg, pg) = content_split(g, v);
    let c = gcd_bivariate(&cf, &cg);
    let pp = prs_gcd(&pf, &pg, v);
    c.mul(&pp).monic()
}

/// Splits off the content with respect to `var`: returns (content,
/// primitive part) with p = content * primitive.
fn content_split(p: &MultiPoly, var: usize) -> (MultiPoly, MultiPoly) {
    let coeffs = MainVar::split(p, var);
    let mut content = zero_like(p);
    for c in &coeffs.c {
        if c.is_zero() {
            continue;
        }
        content = gcd_bivariate(&content, c);
        if content.is_constant() {
            break;
        }
    }
    let primitive = p
        .div_exact(&content)
        .expect("content divides the polynomial");
    (content, primitive)
}

/// Subresultant remainder sequence gcd of two primitive polynomials in
/// the main variable `v`; the result is again primitive in `v`.
fn prs_gcd(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let mut a = MainVar::split(f, v);
    let mut b = MainVar::split(g, v);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == 0 {
        // A primitive v-free polynomial is a unit times content 1.
        return one_like(f);
    }
    let one = one_like(f);
    let mut g_coef = one.clone();
    let mut h_coef = one;
    loop {
        let d = (a.degree() - b.degree()) as u32;
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            let joined = a.join();
            let (_, primitive) = content_split(&joined, v);
            return primitive;
        }
        let divisor = g_coef.mul(&h_coef.pow(d));
        b = r.div_exact(&divisor).trim();
        g_coef = a.lc().clone();
        h_coef = if d == 0 {
            h_coef
        } else {
            g_coef
                .pow(d)
                .div_exact(&h_coef.pow(d - 1))
                .expect("h update divides exactly")
        };
        if b.degree() == 0 {
            // Nonzero v-free remainder: the primitive parts are coprime.
            return one_like(f);
        }
    }
}

/// True when F has no repeated factor (over the algebraic closure; in
/// characteristic zero the joint gcd with all partials detects this).
pub fn is_squarefree(f: &MultiPoly) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Degenerate(
            "squarefreeness of the zero polynomial".into(),
        ));
    }
    let mut g = f.clone();
    for v in 0..f.vars().len() {
        if g.is_constant() {
            break;
        }
        g = gcd_bivariate(&g, &f.differentiate(v));
    }
    Ok(g.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(text: &str) -> MultiPoly {
        parse_poly(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn resultant_of_substitution_case() {
        // Res_y(y - x^2, y) eliminates y cleanly.
        let f = p("y-x^2");
        let g = p("y");
        assert_eq!(resultant(&f, &g, 1), p("x^2"));
    }

    #[test]
    fn resultant_evaluation_identity() {
        // Res_y(y^2 + x, y + 3) = value of y^2+x at y = -3.
        let f = p("y^2+x");
        let g = p("y+3");
        assert_eq!(resultant(&f, &g, 1), p("x+9"));
        // Swapping arguments flips by (-1)^(2*1) = +1.
        assert_eq!(resultant(&g, &f, 1), p("x+9"));
    }

    #[test]
    fn resultant_detects_common_factor() {
        let f = p("x^2-y^2");
        let g = p("x-y");
        assert!(resultant(&f, &g, 1).is_zero());
        let h = p("x+y+1");
        assert!(!resultant(&f, &h, 1).is_zero());
    }

    #[test]
    fn resultant_degree_bound_quadratics() {
        // Two generic conics meet in 4 points: degree-4 resultant.
        let f = p("x^2+y^2-1");
        let g = p("x^2-y+x-3");
        let r = resultant(&f, &g, 1);
        assert_eq!(r.degree(), Some(4));
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd_bivariate(&p("x^2-y^2"), &p("x-y")), p("x-y"));
        let f = p("x^2-y^2");
        assert_eq!(gcd_bivariate(&f, &f), f.monic());
        assert!(gcd_bivariate(&p("x^2+y^2"), &p("x-y")).is_constant());
        // Content interplay: x(x+y) vs x^2.
        assert_eq!(gcd_bivariate(&p("x^2+x*y"), &p("x^2")), p("x"));
    }

    #[test]
    fn gcd_with_multiplicity() {
        let f = p("x-y").mul(&p("x-y")).mul(&p("x+y"));
        let fx = f.differentiate(0);
        let g = gcd_bivariate(&f, &fx);
        assert_eq!(g, p("x-y"));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&p("x*y")).unwrap());
        assert!(is_squarefree(&p("x^2-y^2")).unwrap());
        assert!(!is_squarefree(&p("x^2+2*x*y+y^2")).unwrap());
        let f = p("y^2").mul(&p("x+y+1"));
        assert!(!is_squarefree(&f).unwrap());
        assert!(is_squarefree(&p("y^2-x")).unwrap());
    }

    #[test]
    fn resultant_with_three_variables() {
        // det [[1, x+y], [2, x-y]] = -x-3y.
        let f = parse_poly("x+y+z", &["x", "y", "z"]).unwrap();
        let g = parse_poly("x-y+2*z", &["x", "y", "z"]).unwrap();
        let r = resultant(&f, &g, 2);
        assert_eq!(r, parse_poly("-x-3*y", &["x", "y", "z"]).unwrap());
    }
}
