//! Univariate polynomials over Q(i): field arithmetic, gcd through a
//! primitive polynomial remainder sequence over Z[i], squarefree parts,
//! and a complete, certified finder for roots lying in Q(i).
//!
//! Root extraction reduces modulo a prime p = 1 mod 4. The two residue
//! maps i -> u and i -> -u (u^2 = -1 mod p) turn a Z[i] polynomial into
//! two F_p polynomials; roots are found by exhaustive search, lifted by
//! Newton iteration to a modulus beating the rational-root height bound,
//! recombined into real/imaginary parts by rational reconstruction, and
//! finally verified by exact evaluation. A returned list is therefore
//! sound by construction and complete because every true root survives
//! reduction at a prime where the polynomial stays squarefree.

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use std::collections::BTreeSet;

use super::zi::{
    invmod, mulmod_u64, next_prime_1mod4, rational_reconstruct, sqrt_minus_one_mod, Zi,
};
use super::MultiPoly;
use crate::exactfield::{GaussianRational, Rational};

/// coeffs[k] is the coefficient of s^k; the top entry is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniGq {
    c: Vec<GaussianRational>,
}

impl UniGq {
    pub fn from_coeffs(mut c: Vec<GaussianRational>) -> Self {
        while c.last().is_some_and(GaussianRational::is_zero) {
            c.pop();
        }
        UniGq { c }
    }

    pub fn zero() -> Self {
        UniGq { c: Vec::new() }
    }

    pub fn constant(v: GaussianRational) -> Self {
        UniGq::from_coeffs(vec![v])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.c.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn lc(&self) -> &GaussianRational {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniGq {
        if self.c.len() <= 1 {
            return UniGq::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, v)| v * &GaussianRational::from_int(k as i64))
            .collect();
        UniGq::from_coeffs(c)
    }

    pub fn add(&self, o: &UniGq) -> UniGq {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        UniGq::from_coeffs(c)
    }

    pub fn sub(&self, o: &UniGq) -> UniGq {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect();
        UniGq::from_coeffs(c)
    }

    pub fn mul(&self, o: &UniGq) -> UniGq {
        if self.is_zero() || o.is_zero() {
            return UniGq::zero();
        }
        let mut c = vec![GaussianRational::zero(); self.c.len() + o.c.len() - 1];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.c.iter().enumerate() {
                c[j + k] += &(a * b);
            }
        }
        UniGq::from_coeffs(c)
    }

    pub fn scale(&self, v: &GaussianRational) -> UniGq {
        UniGq::from_coeffs(self.c.iter().map(|a| a * v).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &UniGq) -> (UniGq, UniGq) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc_inv = d.lc().inverse().expect("leading coefficient nonzero");
        let mut rem = self.c.clone();
        let mut quot = vec![GaussianRational::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            if rem[k].is_zero() {
                rem.pop();
                continue;
            }
            let q = &rem[k] * &lc_inv;
            let shift = k - dd;
            for (j, b) in d.c.iter().enumerate() {
                let t = &q * b;
                rem[shift + j] -= &t;
            }
            quot[shift] = q;
            rem.pop();
        }
        (UniGq::from_coeffs(quot), UniGq::from_coeffs(rem))
    }

    pub fn div_exact(&self, d: &UniGq) -> Option<UniGq> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> UniGq {
        if self.is_zero() {
            return UniGq::zero();
        }
        self.scale(&self.lc().inverse().expect("nonzero lc"))
    }

    /// Divides by s^k (requires the low k coefficients to vanish).
    pub fn shift_down(&self, k: usize) -> UniGq {
        assert!(self.c.iter().take(k).all(GaussianRational::is_zero));
        UniGq::from_coeffs(self.c.iter().skip(k).cloned().collect())
    }

    /// Multiplicity of x0 as a root (0 when not a root).
    pub fn root_order(&self, x0: &GaussianRational) -> usize {
        assert!(!self.is_zero());
        let lin = UniGq::from_coeffs(vec![-x0, GaussianRational::one()]);
        let mut p = self.clone();
        let mut order = 0;
        while let Some(q) = p.div_exact(&lin) {
            order += 1;
            p = q;
        }
        order
    }

    /// Monic gcd via a primitive remainder sequence over Z[i].
    pub fn gcd(&self, o: &UniGq) -> UniGq {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let mut a = ZiUni::clear_denominators(self).primitive();
        let mut b = ZiUni::clear_denominators(o).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.to_unigq().monic()
    }

    /// The product of distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> UniGq {
        assert!(!self.is_zero());
        if self.degree() == Some(0) {
            return UniGq::constant(GaussianRational::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
            .expect("gcd divides the polynomial")
            .monic()
    }

    /// Reads a polynomial that involves only variable `var`.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Option<UniGq> {
        p.univariate_in(var).map(UniGq::from_coeffs)
    }

    pub fn to_multipoly(&self, vars: &[&str], var: usize) -> MultiPoly {
        let nvars = vars.len();
        let terms = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut exps = vec![0u32; nvars];
                exps[var] = k as u32;
                (exps, c.clone())
            })
            .collect();
        MultiPoly::from_terms(vars, terms)
    }
}

/// Z[i] coefficient vector used by the remainder sequence and the
/// modular root finder.
#[derive(Clone, Debug)]
struct ZiUni {
    c: Vec<Zi>,
}

impl ZiUni {
    fn trim(mut c: Vec<Zi>) -> ZiUni {
        while c.last().is_some_and(Zi::is_zero) {
            c.pop();
        }
        ZiUni { c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn lc(&self) -> &Zi {
        self.c.last().expect("nonzero polynomial")
    }

    /// Scales away all denominators of a Q(i) polynomial.
    fn clear_denominators(p: &UniGq) -> ZiUni {
        let mut l = BigInt::one();
        for c in p.coeffs() {
            l = l.lcm(c.re().denom());
            l = l.lcm(c.im().denom());
        }
        let c = p
            .coeffs()
            .iter()
            .map(|c| {
                let re = c.re().numer() * (&l / c.re().denom());
                let im = c.im().numer() * (&l / c.im().denom());
                Zi::new(re, im)
            })
            .collect();
        ZiUni::trim(c)
    }

    fn content(&self) -> Zi {
        let mut g = Zi::zero();
        for c in &self.c {
            g = g.gcd(c);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    fn primitive(&self) -> ZiUni {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        let c = self
            .c
            .iter()
            .map(|z| z.div_exact(&g).expect("content divides"))
            .collect();
        ZiUni::trim(c)
    }

    /// A pseudo-remainder: the remainder of lc(d)^k * self by d for some
    /// k, enough for a primitive remainder sequence (the caller strips
    /// content afterwards anyway).
    fn pseudo_rem(&self, d: &ZiUni) -> ZiUni {
        assert!(!d.is_zero());
        let dd = d.degree();
        let mut r = self.c.clone();
        let dl = d.lc().clone();
        loop {
            while r.last().is_some_and(Zi::is_zero) {
                r.pop();
            }
            let rd = r.len() as isize - 1;
            if rd < dd {
                return ZiUni::trim(r);
            }
            let top = r.last().unwrap().clone();
            let shift = (rd - dd) as usize;
            for v in r.iter_mut() {
                *v = v.mul(&dl);
            }
            for (j, b) in d.c.iter().enumerate() {
                let t = top.mul(b);
                r[shift + j] = r[shift + j].sub(&t);
            }
        }
    }

    fn to_unigq(&self) -> UniGq {
        UniGq::from_coeffs(
            self.c
                .iter()
                .map(|z| {
                    GaussianRational::new(
                        Rational::from_integer(z.re.clone()),
                        Rational::from_integer(z.im.clone()),
                    )
                })
                .collect(),
        )
    }

    /// Residue coefficients under i -> u (mod p).
    fn embed(&self, p: u64, u: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let ub = BigInt::from(u);
        let mut out: Vec<u64> = self
            .c
            .iter()
            .map(|z| {
                (&z.re + &z.im * &ub)
                    .mod_floor(&pb)
                    .to_u64()
                    .expect("residue fits in u64")
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

/// All roots of `p` lying in Q(i), each listed once, sorted. Complete:
/// a root of `p` in Q(i) not in the output is impossible.
pub fn qi_roots(p: &UniGq) -> Vec<GaussianRational> {
    assert!(!p.is_zero(), "the zero polynomial has every root");
    let mut found = BTreeSet::new();
    let zero_order = p.c.iter().take_while(|c| c.is_zero()).count();
    if zero_order > 0 {
        found.insert(GaussianRational::zero());
    }
    let q = p.shift_down(zero_order);
    if q.degree() == Some(0) {
        return found.into_iter().collect();
    }
    let sf = q.squarefree_part();
    if sf.degree() == Some(1) {
        let root = &(-&sf.coeff(0)) * &sf.coeff(1).inverse().expect("nonzero lc");
        found.insert(root);
        return found.into_iter().collect();
    }
    for root in modular_qi_roots(&sf) {
        found.insert(root);
    }
    found.into_iter().collect()
}

/// Convenience: the rational (imaginary-part-zero) subset of qi_roots.
pub fn rational_roots(p: &UniGq) -> Vec<Rational> {
    qi_roots(p)
        .into_iter()
        .filter(|r| r.is_rational())
        .map(|r| r.re().clone())
        .collect()
}

fn modular_qi_roots(sf: &UniGq) -> Vec<GaussianRational> {
    let pz = ZiUni::clear_denominators(sf).primitive();
    let n0 = pz.c[0].norm();
    let nl = pz.lc().norm();
    assert!(!n0.is_zero(), "zero roots must be stripped first");
    let num_bound = (&n0 * &nl).sqrt() + 1;
    let den_bound = nl.clone();
    let target = BigInt::from(4) * &num_bound * &den_bound;

    let mut ell = 1000;
    for _ in 0..200 {
        ell = next_prime_1mod4(ell);
        if (&nl % BigInt::from(ell)).is_zero() {
            continue;
        }
        let u = sqrt_minus_one_mod(ell);
        let emb1 = pz.embed(ell, u);
        let emb2 = pz.embed(ell, ell - u);
        if !(squarefree_mod(&emb1, ell) && squarefree_mod(&emb2, ell)) {
            continue;
        }
        let r1 = roots_mod(&emb1, ell);
        let r2 = roots_mod(&emb2, ell);
        if r1.is_empty() || r2.is_empty() {
            // A true root reduces to a root in both embeddings.
            return Vec::new();
        }
        let (m, us, lifted1, lifted2) = lift_all(&pz, ell, u, &r1, &r2, &target);
        return combine_candidates(
            sf, &m, &us, &lifted1, &lifted2, &num_bound, &den_bound,
        );
    }
    unreachable!("only finitely many primes can reject a fixed squarefree polynomial");
}

/// F_p polynomial helpers on little-endian u64 coefficient vectors.
fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn deriv_mod(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mulmod_u64(k as u64 % p, c, p))
        .collect();
    trim_mod(&mut out);
    out
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(&BigInt::from(*b.last().unwrap()), &BigInt::from(p))
        .expect("leading coefficient is a unit")
        .to_u64()
        .unwrap();
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let q = mulmod_u64(top, inv, p);
            let shift = r.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                let t = mulmod_u64(q, bc, p);
                let idx = shift + j;
                r[idx] = (r[idx] + p - t) % p;
            }
        }
        r.pop();
        trim_mod(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_mod(&mut x);
    trim_mod(&mut y);
    while !y.is_empty() {
        let r = rem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn squarefree_mod(a: &[u64], p: u64) -> bool {
    if a.len() as u64 > p {
        // Degree at or above p invalidates the derivative criterion.
        return false;
    }
    let d = deriv_mod(a, p);
    if d.is_empty() {
        return false;
    }
    gcd_mod(a, &d, p).len() == 1
}

fn eval_mod(a: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = (mulmod_u64(acc, x, p) + c) % p;
    }
    acc
}

fn roots_mod(a: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_mod(a, x, p) == 0).collect()
}

/// Newton-lifts the square root of -1 and every root of both embeddings
/// from mod ell to a modulus >= target (a power ell^(2^k)).
fn lift_all(
    pz: &ZiUni,
    ell: u64,
    u: u64,
    r1: &[u64],
    r2: &[u64],
    target: &BigInt,
) -> (BigInt, BigInt, Vec<BigInt>, Vec<BigInt>) {
    let mut m = BigInt::from(ell);
    let mut us = BigInt::from(u);
    let mut l1: Vec<BigInt> = r1.iter().map(|&r| BigInt::from(r)).collect();
    let mut l2: Vec<BigInt> = r2.iter().map(|&r| BigInt::from(r)).collect();
    while m < *target {
        let m2 = &m * &m;
        // u' = u - (u^2+1) / (2u) mod m2.
        let inv2u = invmod(&(BigInt::from(2) * &us), &m2).expect("2u is a unit");
        us = (&us - (&us * &us + BigInt::one()) * inv2u).mod_floor(&m2);
        let c1 = embed_big(pz, &us, &m2, false);
        let c2 = embed_big(pz, &us, &m2, true);
        for r in l1.iter_mut() {
            *r = newton_step(&c1, r, &m2);
        }
        for r in l2.iter_mut() {
            *r = newton_step(&c2, r, &m2);
        }
        m = m2;
    }
    (m, us, l1, l2)
}

fn embed_big(pz: &ZiUni, u: &BigInt, m: &BigInt, conj: bool) -> Vec<BigInt> {
    pz.c
        .iter()
        .map(|z| {
            let im = if conj { -&z.im } else { z.im.clone() };
            (&z.re + im * u).mod_floor(m)
        })
        .collect()
}

fn newton_step(coeffs: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    let mut val = BigInt::zero();
    let mut der = BigInt::zero();
    for c in coeffs.iter().rev() {
        der = (&der * r + &val).mod_floor(m);
        val = (&val * r + c).mod_floor(m);
    }
    let inv = invmod(&der, m).expect("simple root keeps the derivative a unit");
    (r - val * inv).mod_floor(m)
}

fn combine_candidates(
    sf: &UniGq,
    m: &BigInt,
    us: &BigInt,
    lifted1: &[BigInt],
    lifted2: &[BigInt],
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Vec<GaussianRational> {
    let inv2 = invmod(&BigInt::from(2), m).expect("odd modulus");
    let inv2u = invmod(&(BigInt::from(2) * us), m).expect("2u is a unit");
    let mut out = BTreeSet::new();
    for rho1 in lifted1 {
        for rho2 in lifted2 {
            let a_res = ((rho1 + rho2) * &inv2).mod_floor(m);
            let b_res = ((rho1 - rho2) * &inv2u).mod_floor(m);
            let Some(a) = rational_reconstruct(&a_res, m, num_bound, den_bound) else {
                continue;
            };
            let Some(b) = rational_reconstruct(&b_res, m, num_bound, den_bound) else {
                continue;
            };
            let cand = GaussianRational::new(a, b);
            if sf.eval(&cand).is_zero() {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, ratio};

    fn poly(coeffs: &[i64]) -> UniGq {
        UniGq::from_coeffs(coeffs.iter().map(|&n| GaussianRational::from_int(n)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (s^2 - 1) = (s - 1)(s + 1)
        let f = poly(&[-1, 0, 1]);
        let g = poly(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, poly(&[1, 1]));
        let h = f.gcd(&poly(&[1, 1]));
        assert_eq!(h, poly(&[1, 1]).monic());
    }

    #[test]
    fn gcd_with_gaussian_coefficients() {
        // (s - i)(s + 2) and (s - i)(s - 3) share s - i.
        let i = GaussianRational::i();
        let si = UniGq::from_coeffs(vec![-&i, GaussianRational::one()]);
        let a = si.mul(&poly(&[2, 1]));
        let b = si.mul(&poly(&[-3, 1]));
        assert_eq!(a.gcd(&b), si.monic());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (s-1)^3 (s+2)^2 -> (s-1)(s+2)
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[-1, 1]))
            .mul(&poly(&[2, 1]))
            .mul(&poly(&[2, 1]));
        let sf = f.squarefree_part();
        assert_eq!(sf, poly(&[-1, 1]).mul(&poly(&[2, 1])).monic());
    }

    #[test]
    fn roots_of_integer_polynomial() {
        // roots 2, -3, 1/2: (s-2)(s+3)(2s-1)
        let f = poly(&[-2, 1]).mul(&poly(&[3, 1])).mul(&poly(&[-1, 2]));
        let roots = qi_roots(&f);
        assert_eq!(
            roots,
            vec![
                GaussianRational::from_int(-3),
                GaussianRational::from_rational(ratio(1, 2)),
                GaussianRational::from_int(2),
            ]
        );
    }

    #[test]
    fn roots_with_gaussian_values() {
        // s^2 + 1 has roots i and -i.
        let f = poly(&[1, 0, 1]);
        let roots = qi_roots(&f);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&GaussianRational::i()));
        assert!(roots.contains(&(-GaussianRational::i())));
        // s^2 - 2 has no roots in Q(i).
        assert!(qi_roots(&poly(&[-2, 0, 1])).is_empty());
        // s^2 - 2is - 1 = (s - i)^2, double root i.
        let i = GaussianRational::i();
        let g = UniGq::from_coeffs(vec![
            GaussianRational::from_int(-1),
            -&(&i + &i),
            GaussianRational::one(),
        ]);
        assert_eq!(qi_roots(&g), vec![i]);
    }

    #[test]
    fn roots_mixed_with_zero_and_fractions() {
        // s^2 (3s + 2) (s - (1+i))
        let i = GaussianRational::i();
        let target = &GaussianRational::one() + &i;
        let f = poly(&[0, 0, 1])
            .mul(&poly(&[2, 3]))
            .mul(&UniGq::from_coeffs(vec![-&target, GaussianRational::one()]));
        let roots = qi_roots(&f);
        assert!(roots.contains(&GaussianRational::zero()));
        assert!(roots.contains(&GaussianRational::from_rational(ratio(-2, 3))));
        assert!(roots.contains(&target));
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn root_order_counts_multiplicity() {
        let f = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[5, 1]));
        assert_eq!(f.root_order(&GaussianRational::one()), 2);
        assert_eq!(f.root_order(&GaussianRational::from_int(-5)), 1);
        assert_eq!(f.root_order(&GaussianRational::zero()), 0);
    }

    #[test]
    fn big_coefficient_roots() {
        // (s - 420)(s + 1337)(7s - 12) with an extra irrational factor.
        let f = poly(&[-420, 1])
            .mul(&poly(&[1337, 1]))
            .mul(&poly(&[-12, 7]))
            .mul(&poly(&[-2, 0, 0, 1]));
        let roots = qi_roots(&f);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&GaussianRational::from_int(420)));
        assert!(roots.contains(&GaussianRational::from_int(-1337)));
        assert!(roots.contains(&GaussianRational::from_rational(ratio(12, 7))));
        let _ = rat(0);
    }
}
