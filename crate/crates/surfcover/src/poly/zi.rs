//! Gaussian integers and the modular utilities behind certified root
//! extraction: nearest-quotient Euclidean division, gcd, primes that are
//! 1 mod 4, square roots of -1, and Wang rational reconstruction.

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::exactfield::Rational;

/// An element a + b*i of Z[i].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Zi {
    pub re: BigInt,
    pub im: BigInt,
}

impl Zi {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Zi { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Zi::new(re.into(), im.into())
    }

    pub fn zero() -> Self {
        Zi::new(BigInt::zero(), BigInt::zero())
    }

    pub fn one() -> Self {
        Zi::new(BigInt::one(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Zi {
        Zi::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, o: &Zi) -> Zi {
        Zi::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Zi) -> Zi {
        Zi::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Zi {
        Zi::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Zi) -> Zi {
        Zi::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// Quotient with remainder of norm at most half the divisor's norm.
    pub fn div_rem_nearest(&self, d: &Zi) -> (Zi, Zi) {
        assert!(!d.is_zero(), "division by zero Gaussian integer");
        let n = d.norm();
        let t = self.mul(&d.conj());
        let q = Zi::new(round_div(&t.re, &n), round_div(&t.im, &n));
        let r = self.sub(&q.mul(d));
        (q, r)
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Zi) -> Option<Zi> {
        let (q, r) = self.div_rem_nearest(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// A gcd, normalized by a unit so re > 0 and im >= 0 (gcd of zeros
    /// is zero).
    pub fn gcd(&self, o: &Zi) -> Zi {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_nearest(&b);
            a = b;
            b = r;
        }
        a.unit_normalize()
    }

    /// Multiplies by the unit that lands the number in the half-open
    /// first quadrant (re > 0, im >= 0).
    pub fn unit_normalize(&self) -> Zi {
        if self.is_zero() {
            return self.clone();
        }
        let mut z = self.clone();
        // At most three rotations by i.
        for _ in 0..3 {
            if z.re.is_positive() && !z.im.is_negative() {
                break;
            }
            z = Zi::new(-&z.im, z.re.clone());
        }
        z
    }
}

/// round(a / b) for b > 0, ties away from zero.
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    assert!(b.is_positive());
    let q = (a.abs() * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)));
    if a.is_negative() {
        -q
    } else {
        q
    }
}

/// Modular inverse of a mod m (m > 1), when gcd(a, m) = 1.
pub fn invmod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Deterministic primality for u64: Miller-Rabin with the first twelve
/// primes as witnesses, which is exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The next prime congruent to 1 mod 4 that is strictly greater than n.
pub fn next_prime_1mod4(n: u64) -> u64 {
    let mut k = n + 1;
    while k % 4 != 1 {
        k += 1;
    }
    loop {
        if is_prime_u64(k) {
            return k;
        }
        k += 4;
    }
}

/// A square root of -1 modulo the prime p = 1 mod 4.
pub fn sqrt_minus_one_mod(p: u64) -> u64 {
    assert!(p % 4 == 1 && is_prime_u64(p));
    // g^((p-1)/4) for the first g with g^((p-1)/2) = -1.
    let e = (p - 1) / 4;
    for g in 2..p {
        let h = powmod_u64(g, e, p);
        if mulmod_u64(h, h, p) == p - 1 {
            return h;
        }
    }
    unreachable!("p = 1 mod 4 always has a 4th root of unity");
}

pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Wang rational reconstruction: the rational n/d with |n| <= num_bound,
/// 0 < d <= den_bound and n/d = c mod m, if one exists. Callers must
/// verify the result against the original problem; the bounds only
/// guarantee that a true value within them is found.
pub fn rational_reconstruct(
    c: &BigInt,
    m: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Option<Rational> {
    let mut r0 = m.clone();
    let mut r1 = c.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > *num_bound {
        let q = r0.div_floor(&r1);
        let r2 = r0 - &q * &r1;
        let t2 = t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *den_bound {
        return None;
    }
    if t1.sign() == Sign::Minus {
        r1 = -r1;
        t1 = -t1;
    }
    if r1.gcd(&t1) != BigInt::one() && !r1.is_zero() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_gcd() {
        // 5 = (2+i)(2-i); gcd(5, 2+i) is 2+i up to a unit.
        let five = Zi::from_ints(5, 0);
        let g = five.gcd(&Zi::from_ints(2, 1));
        assert_eq!(g.norm(), BigInt::from(5));
        // Coprime pair.
        let g2 = Zi::from_ints(3, 0).gcd(&Zi::from_ints(2, 1));
        assert!(g2.is_unit());
    }

    #[test]
    fn nearest_division_small_remainder() {
        let a = Zi::from_ints(137, -42);
        let b = Zi::from_ints(5, 7);
        let (q, r) = a.div_rem_nearest(&b);
        assert_eq!(a, q.mul(&b).add(&r));
        assert!(r.norm() * 2u32 <= b.norm());
    }

    #[test]
    fn exact_division() {
        let a = Zi::from_ints(2, 1).mul(&Zi::from_ints(-3, 4));
        assert_eq!(a.div_exact(&Zi::from_ints(2, 1)), Some(Zi::from_ints(-3, 4)));
        assert_eq!(Zi::from_ints(7, 0).div_exact(&Zi::from_ints(2, 1)), None);
    }

    #[test]
    fn primes_and_roots_of_minus_one() {
        assert!(is_prime_u64(1009));
        assert_eq!(next_prime_1mod4(1000), 1009);
        let p = 1009;
        let u = sqrt_minus_one_mod(p);
        assert_eq!(mulmod_u64(u, u, p), p - 1);
    }

    #[test]
    fn reconstruct_small_rationals() {
        let m = BigInt::from(1_000_003u64);
        // 3/7 mod m.
        let c = (BigInt::from(3) * invmod(&BigInt::from(7), &m).unwrap()).mod_floor(&m);
        let r = rational_reconstruct(&c, &m, &BigInt::from(100), &BigInt::from(100)).unwrap();
        assert_eq!(r, Rational::new(3.into(), 7.into()));
        // Zero reconstructs to zero.
        let z = rational_reconstruct(
            &BigInt::zero(),
            &m,
            &BigInt::from(100),
            &BigInt::from(100),
        )
        .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn round_div_matches_rounding() {
        for (a, b, want) in [
            (7, 2, 4),
            (-7, 2, -4),
            (6, 3, 2),
            (5, 2, 3),
            (-5, 2, -3),
            (4, 3, 1),
            (-4, 3, -1),
        ] {
            assert_eq!(
                round_div(&BigInt::from(a), &BigInt::from(b)),
                BigInt::from(want),
                "{a}/{b}"
            );
        }
    }
}
