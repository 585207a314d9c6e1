//! Counting absolutely irreducible factors without factoring.
//!
//! For a squarefree f in Q(i)[x,y] the pairs (g, h) with
//! deg_x g < deg_x f, deg_y g <= deg_y f, deg_x h <= deg_x f,
//! deg_y h < deg_y f solving
//!
//! ```text
//! g_y * f - g * f_y = h_x * f - h * f_x
//! ```
//!
//! form a vector space whose dimension equals the number of irreducible
//! factors of f over the algebraic closure: each factor u contributes
//! the basis solution g = (f/u) u_x, h = (f/u) u_y. The system is linear
//! in the coefficients of g and h, so an exact kernel dimension over
//! Q(i) answers absolute irreducibility; no splitting field is built.

use std::collections::BTreeMap;

use num::{BigInt, Integer, ToPrimitive};

use super::zi::{mulmod_u64, next_prime_1mod4, powmod_u64, sqrt_minus_one_mod};
use super::{is_squarefree, Monomial, MultiPoly, PolyError};
use crate::exactfield::{ExactMatrix, GaussianRational, Rational};

/// The number of absolutely irreducible factors of f. 1 means f is
/// absolutely irreducible. Accepts affine polynomials in one or two
/// variables and homogeneous ternary forms.
pub fn absolute_factor_count(f: &MultiPoly) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Degenerate("factor count of zero".into()));
    }
    if f.is_constant() {
        return Ok(0);
    }
    if !is_squarefree(f)? {
        return Err(PolyError::NotSquarefree);
    }
    match f.nvars() {
        1 => Ok(f.degree().unwrap() as usize),
        2 => Ok(bivariate_count(f)),
        3 => {
            if !f.is_homogeneous() {
                return Err(PolyError::Degenerate(
                    "ternary polynomials must be homogeneous".into(),
                ));
            }
            // The z factor drops out in the z = 1 chart; every other
            // factor dehomogenizes bijectively to an affine one.
            let z_order = f.terms().map(|(m, _)| m.0[2]).min().unwrap();
            debug_assert!(z_order <= 1, "squarefree forms carry z at most once");
            Ok(z_order as usize + bivariate_count(&f.dehomogenize(2)))
        }
        n => Err(PolyError::Degenerate(format!(
            "factor count over {n} variables is not supported"
        ))),
    }
}

fn bivariate_count(f: &MultiPoly) -> usize {
    let m = f.deg_in(0).unwrap_or(0);
    let n = f.deg_in(1).unwrap_or(0);
    if m == 0 {
        return n as usize;
    }
    if n == 0 {
        return m as usize;
    }
    let fx = f.differentiate(0);
    let fy = f.differentiate(1);

    // Column layout: all basis monomials of g, then all of h.
    let g_basis = box_monomials(m - 1, n);
    let h_basis = box_monomials(m, n - 1);
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, GaussianRational)>> = Vec::new();

    let push_column = |p: MultiPoly,
                           row_index: &mut BTreeMap<Monomial, usize>,
                           columns: &mut Vec<Vec<(usize, GaussianRational)>>| {
        let mut col = Vec::new();
        for (mono, c) in p.terms() {
            let next = row_index.len();
            let idx = *row_index.entry(mono.clone()).or_insert(next);
            col.push((idx, c.clone()));
        }
        columns.push(col);
    };

    for u in &g_basis {
        // d/dy(u) * f - u * f_y
        let u_poly = monomial_poly(f, u);
        let contrib = u_poly.differentiate(1).mul(f).sub(&u_poly.mul(&fy));
        push_column(contrib, &mut row_index, &mut columns);
    }
    for w in &h_basis {
        // -(d/dx(w) * f - w * f_x)
        let w_poly = monomial_poly(f, w);
        let contrib = w_poly.mul(&fx).sub(&w_poly.differentiate(0).mul(f));
        push_column(contrib, &mut row_index, &mut columns);
    }

    let rows = row_index.len();

    // Reduction modulo a prime never raises the rank, so the modular
    // kernel bounds the exact kernel from above; and (f_x, f_y) always
    // solves the system, so the exact kernel is at least 1. A modular
    // kernel of dimension 1 therefore certifies a single absolute
    // factor without exact elimination. Primes 1 mod 4 keep the
    // arithmetic in plain F_p by sending i to a square root of -1.
    let mut p = next_prime_1mod4(1 << 62);
    for _ in 0..3 {
        match kernel_dim_mod(&columns, rows, p) {
            Some(1) => return 1,
            Some(_) => break,
            None => p = next_prime_1mod4(p + 1),
        }
    }

    let cols = columns.len();
    let mut mat = ExactMatrix::zero(rows, cols);
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            mat.set(*i, j, v.clone());
        }
    }
    mat.kernel().len()
}

/// Kernel dimension of the column system over F_p, or None when some
/// denominator vanishes mod p.
fn kernel_dim_mod(
    columns: &[Vec<(usize, GaussianRational)>],
    rows: usize,
    p: u64,
) -> Option<usize> {
    let omega = sqrt_minus_one_mod(p);
    let cols = columns.len();
    let mut mat = vec![0u64; rows * cols];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            let re = residue_mod(v.re(), p)?;
            let im = residue_mod(v.im(), p)?;
            mat[i * cols + j] = (re + mulmod_u64(omega, im, p)) % p;
        }
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| mat[r * cols + col] != 0) else {
            continue;
        };
        for c in col..cols {
            mat.swap(pivot * cols + c, rank * cols + c);
        }
        let inv = powmod_u64(mat[rank * cols + col], p - 2, p);
        for r in (rank + 1)..rows {
            let lead = mat[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = mulmod_u64(lead, inv, p);
            for c in col..cols {
                let sub = mulmod_u64(factor, mat[rank * cols + c], p);
                mat[r * cols + c] = (mat[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(cols - rank)
}

fn residue_mod(r: &Rational, p: u64) -> Option<u64> {
    let big_p = BigInt::from(p);
    let den = r.denom().mod_floor(&big_p).to_u64().expect("below modulus");
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&big_p).to_u64().expect("below modulus");
    Some(mulmod_u64(num, powmod_u64(den, p - 2, p), p))
}

fn box_monomials(dx: u32, dy: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=dx {
        for b in 0..=dy {
            out.push(Monomial(vec![a, b]));
        }
    }
    out
}

fn monomial_poly(like: &MultiPoly, m: &Monomial) -> MultiPoly {
    let names: Vec<&str> = like.vars().iter().map(String::as_str).collect();
    MultiPoly::from_terms(&names, vec![(m.0.clone(), GaussianRational::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p2(text: &str) -> MultiPoly {
        parse_poly(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn split_products_are_counted() {
        assert_eq!(absolute_factor_count(&p2("x^2-y^2")).unwrap(), 2);
        assert_eq!(absolute_factor_count(&p2("x*y")).unwrap(), 2);
        assert_eq!(
            absolute_factor_count(&p2("x^2-y^2").mul(&p2("x+y+1"))).unwrap(),
            3
        );
    }

    #[test]
    fn gaussian_splitting_is_seen() {
        // x^2+y^2 = (x+iy)(x-iy): reducible despite Q-irreducibility.
        assert_eq!(absolute_factor_count(&p2("x^2+y^2")).unwrap(), 2);
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(absolute_factor_count(&p2("x^2-y")).unwrap(), 1);
        assert_eq!(absolute_factor_count(&p2("y^2-x^3-x")).unwrap(), 1);
        assert_eq!(absolute_factor_count(&p2("x+y")).unwrap(), 1);
    }

    #[test]
    fn univariate_counts_roots_in_closure() {
        let f = parse_poly("x^3-2", &["x"]).unwrap();
        assert_eq!(absolute_factor_count(&f).unwrap(), 3);
        assert_eq!(absolute_factor_count(&p2("y^2-3")).unwrap(), 2);
    }

    #[test]
    fn rejects_squares() {
        assert!(matches!(
            absolute_factor_count(&p2("x^2+2*x*y+y^2")),
            Err(PolyError::NotSquarefree)
        ));
    }

    #[test]
    fn ternary_homogeneous() {
        let f = parse_poly("x^2+y^2-z^2", &["x", "y", "z"]).unwrap();
        assert_eq!(absolute_factor_count(&f).unwrap(), 1);
        let g = parse_poly("x*y*z", &["x", "y", "z"]).unwrap();
        assert_eq!(absolute_factor_count(&g).unwrap(), 3);
        let h = parse_poly("z*(x^2+y^2)", &["x", "y", "z"]).unwrap();
        assert_eq!(absolute_factor_count(&h).unwrap(), 3);
    }

    #[test]
    fn additivity_for_coprime_products() {
        let f = p2("x^2-y");
        let g = p2("x+y+1");
        let fg = f.mul(&g);
        assert_eq!(
            absolute_factor_count(&fg).unwrap(),
            absolute_factor_count(&f).unwrap() + absolute_factor_count(&g).unwrap()
        );
    }
}
