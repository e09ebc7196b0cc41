//! Elementary number theory on machine words and big integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Distinct prime divisors of `n`, ascending. Empty for 0 and ±1.
pub fn prime_support(n: &BigInt) -> BTreeSet<BigUint> {
    let m = n.magnitude().clone();
    if m.is_zero() || m.is_one() {
        return BTreeSet::new();
    }
    if let Some(small) = m.to_u128() {
        return num_prime::nt_funcs::factorize128(small)
            .keys()
            .map(|&p| BigUint::from(p))
            .collect();
    }
    num_prime::nt_funcs::factorize(m).into_keys().collect()
}

/// Distinct prime divisors of a machine word.
pub fn prime_factors_u64(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n).into_keys().collect()
}

/// p-adic valuation of a nonzero integer; `None` stands for +infinity (n = 0).
pub fn val_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a rational number; `None` for zero.
pub fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    let vn = val_int(x.numer(), p)?;
    let vd = val_int(x.denom(), p).expect("denominator is nonzero");
    Some(vn - vd)
}

/// Strip every factor of p from n.
pub fn strip(n: &BigInt, p: u64) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let p = BigInt::from(p);
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return m;
        }
        m = q;
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mm = m as u128;
    let mut bb = b as u128 % mm;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = Integer::extended_gcd(&a.rem_euclid(m), &m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Multiplicative order of `a` modulo `n` (gcd(a, n) = 1 required).
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(n > 1 && a.gcd(&n) == 1, "order needs a unit");
    let mut k = 1;
    let mut x = a % n;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

/// Euler's totient of a small integer.
pub fn totient(n: u64) -> u64 {
    let mut r = n;
    for p in prime_factors_u64(n) {
        r = r / p * (p - 1);
    }
    r
}

/// A square root of `a` modulo the odd prime `p`, if one exists (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % p as u128) as u64;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = (b as u128 * b as u128 % p as u128) as u64;
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r)
}

/// Reduce a rational number modulo a prime; `None` if p divides the denominator.
pub fn rat_mod(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let di = inv_mod(d as i64, p as i64)? as u64;
    Some((n as u128 * di as u128 % p as u128) as u64)
}

/// Integer r-th root when `n` is a perfect r-th power (sign allowed for odd r).
pub fn exact_root(n: &BigInt, r: u32) -> Option<BigInt> {
    if n.sign() == Sign::Minus && r % 2 == 0 {
        return None;
    }
    let c = n.abs().nth_root(r);
    if num_traits::pow(c.clone(), r as usize) == n.abs() {
        Some(if n.is_negative() { -c } else { c })
    } else {
        None
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Parse "a", "-a" or "a/b" into a rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(9, 8), 3), Some(2));
        assert_eq!(valuation(&rat(9, 8), 2), Some(-3));
        assert_eq!(valuation(&rat(335809, 1), 5), Some(0));
        assert_eq!(valuation(&rat(0, 1), 5), None);
    }

    #[test]
    fn sqrt_mod_small() {
        for p in [11u64, 19, 29, 31, 41, 59, 61, 389] {
            let r = sqrt_mod(5, p).unwrap();
            assert_eq!(r * r % p, 5);
        }
        assert!(sqrt_mod(5, 7).is_none());
    }

    #[test]
    fn support() {
        let s: Vec<u64> = prime_support(&big(6084)).iter().map(|p| p.to_u64().unwrap()).collect();
        assert_eq!(s, vec![2, 3, 13]);
        assert!(prime_support(&big(-1)).is_empty());
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&big(-343), 3), Some(big(-7)));
        assert_eq!(exact_root(&big(344), 3), None);
        assert_eq!(exact_root(&big(-4), 2), None);
    }
}
