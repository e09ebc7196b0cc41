//! Tate's algorithm over Q, including the subcases at 2 and 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

use super::EllipticModel;
use crate::arith::fpoly::FpPoly;
use crate::arith::nt::{is_prime, prime_support, val_int};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{}", n),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{}*", n),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonSplitMultiplicative,
    Additive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub p: u64,
    pub kodaira: Kodaira,
    /// conductor exponent
    pub f_p: u32,
    /// valuation of the minimal discriminant
    pub v_disc: u32,
    pub reduction: Reduction,
    pub tamagawa: u32,
}

/// Integral Weierstrass coefficients being transformed in place.
#[derive(Clone, Debug)]
struct W {
    a1: BigInt,
    a2: BigInt,
    a3: BigInt,
    a4: BigInt,
    a6: BigInt,
}

impl W {
    fn b(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = a1 * a3 + 2 * a4;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    fn c4_c6_disc(&self) -> (BigInt, BigInt, BigInt) {
        let (b2, b4, b6, b8) = self.b();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        let d = -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
        (c4, c6, d)
    }

    /// x = x' + r, y = y' + s x' + t.
    fn rst(&mut self, r: &BigInt, s: &BigInt, t: &BigInt) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        *self = W { a1: n1, a2: n2, a3: n3, a4: n4, a6: n6 };
    }

    /// a_i -> a_i / p^i (exact).
    fn descale(&mut self, p: &BigInt) {
        let p2 = p * p;
        let p3 = &p2 * p;
        self.a1 = &self.a1 / p;
        self.a2 = &self.a2 / &p2;
        self.a3 = &self.a3 / &p3;
        self.a4 = &self.a4 / (&p2 * &p2);
        self.a6 = &self.a6 / (&p3 * &p3);
    }
}

fn v(x: &BigInt, p: u64) -> i64 {
    val_int(x, p).unwrap_or(i64::MAX)
}

fn md(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn inv(x: u64, p: u64) -> u64 {
    crate::arith::nt::inv_mod(x as i64, p as i64).expect("invertible residue") as u64
}

fn bi(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Number of roots in F_p of a polynomial with integer coefficients (low first).
fn nroots(c: &[BigInt], p: u64) -> usize {
    let f = FpPoly::new(p, c.iter().map(|a| md(a, p) as i64).collect());
    if f.is_zero() {
        return p as usize;
    }
    if p < 1000 {
        return (0..p)
            .filter(|&x| {
                let val = f.c.iter().rev().fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p as u128);
                val == 0
            })
            .count();
    }
    // distinct roots: deg gcd(f, x^p - x)
    let xp = FpPoly::x(p).powmod(p as u128, &f.monic());
    let g = f.gcd(&xp.sub(&FpPoly::x(p)));
    g.degree().unwrap_or(0)
}

/// sqrt mod 2 and cube root mod 3 are the identity on residues.
fn proot(x: &BigInt, p: u64) -> BigInt {
    bi(md(x, p))
}

/// Make the model integral by a_i -> u^i a_i with u the common denominator.
fn integral_model(e: &EllipticModel) -> W {
    let mut u = BigInt::one();
    for a in &e.a {
        u = u.lcm(a.denom());
    }
    let ur = BigRational::from_integer(u);
    let mut out = Vec::with_capacity(5);
    for (a, w) in e.a.iter().zip([1usize, 2, 3, 4, 6]) {
        out.push((a * num_traits::pow(ur.clone(), w)).to_integer());
    }
    W { a1: out[0].clone(), a2: out[1].clone(), a3: out[2].clone(), a4: out[3].clone(), a6: out[4].clone() }
}

/// Local data of E at p.
pub fn tate_algorithm(e: &EllipticModel, p: u64) -> Result<LocalData> {
    if !is_prime(p) {
        return Err(Error::domain("curves", format!("{} is not prime", p)));
    }
    let mut w = integral_model(e);
    let pb = bi(p);
    let pdiv = |x: &BigInt| md(x, p) == 0;
    let half = (p + 1) / 2;
    loop {
        let (c4, c6, disc) = w.c4_c6_disc();
        let vd = v(&disc, p) as u32;
        if vd == 0 {
            return Ok(LocalData {
                p,
                kodaira: Kodaira::I0,
                f_p: 0,
                v_disc: 0,
                reduction: Reduction::Good,
                tamagawa: 1,
            });
        }
        let (b2, b4, b6, _) = w.b();
        // move the singular point of the reduction to (0, 0)
        let (r, t) = if p == 2 {
            if pdiv(&b2) {
                let r = proot(&w.a4, 2);
                let t = proot(&(((&r + &w.a2) * &r + &w.a4) * &r + &w.a6), 2);
                (r, t)
            } else {
                let r = &w.a3 * bi(inv(md(&w.a1, 2), 2));
                let t = bi(inv(md(&w.a1, 2), 2)) * (&w.a4 + &r * &r);
                (r, t)
            }
        } else if p == 3 {
            let r = if pdiv(&b2) { proot(&-&b6, 3) } else { -bi(inv(md(&b2, 3), 3)) * &b4 };
            let t = &w.a1 * &r + &w.a3;
            (r, t)
        } else {
            let r = if pdiv(&c4) {
                -bi(inv(12 % p, p)) * &b2
            } else {
                -bi(inv(md(&(12 * &c4), p), p)) * (&c6 + &b2 * &c4)
            };
            let t = -bi(half) * (&w.a1 * &r + &w.a3);
            (r, t)
        };
        let (r, t) = (bi(md(&r, p)), bi(md(&t, p)));
        w.rst(&r, &BigInt::zero(), &t);
        debug_assert!(pdiv(&w.a3) && pdiv(&w.a4) && pdiv(&w.a6));
        let (_, _, b6, b8) = w.b();

        if !pdiv(&c4) {
            // multiplicative: split iff T^2 + a1 T - a2 has a root mod p
            let split = nroots(&[-w.a2.clone(), w.a1.clone(), BigInt::one()], p) > 0;
            let tam = if split { vd } else if vd % 2 == 0 { 2 } else { 1 };
            return Ok(LocalData {
                p,
                kodaira: Kodaira::I(vd),
                f_p: 1,
                v_disc: vd,
                reduction: if split { Reduction::SplitMultiplicative } else { Reduction::NonSplitMultiplicative },
                tamagawa: tam,
            });
        }
        let additive = |k: Kodaira, f: u32, c: u32| {
            Ok(LocalData { p, kodaira: k, f_p: f, v_disc: vd, reduction: Reduction::Additive, tamagawa: c })
        };
        if v(&w.a6, p) < 2 {
            return additive(Kodaira::II, vd, 1);
        }
        if v(&b8, p) < 3 {
            return additive(Kodaira::III, vd - 1, 2);
        }
        if v(&b6, p) < 3 {
            let a3t = &w.a3 / &pb;
            let a6t = &w.a6 / (&pb * &pb);
            let c = if nroots(&[-a6t, a3t, BigInt::one()], p) > 0 { 3 } else { 1 };
            return additive(Kodaira::IV, vd - 2, c);
        }
        // p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if p == 2 {
            (proot(&w.a2, 2), &pb * proot(&(&w.a6 / (&pb * &pb)), 2))
        } else if p == 3 {
            (w.a1.clone(), w.a3.clone())
        } else {
            (-&w.a1 * bi(half), -&w.a3 * bi(half))
        };
        w.rst(&BigInt::zero(), &s, &t);
        let p2 = &pb * &pb;
        let p3 = &p2 * &pb;
        debug_assert!(pdiv(&w.a1) && pdiv(&w.a2) && (&w.a3 % &p2).is_zero());
        debug_assert!((&w.a4 % &p2).is_zero() && (&w.a6 % &p3).is_zero());
        let b = &w.a2 / &pb;
        let c = &w.a4 / &p2;
        let d = &w.a6 / &p3;
        let disc3 = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;
        let sw = if pdiv(&disc3) {
            if pdiv(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            let cp = 1 + nroots(&[d, c, b, BigInt::one()], p) as u32;
            return additive(Kodaira::I0Star, vd - 4, cp);
        }
        if sw == 2 {
            // double root of the cubic moved to 0
            let r = if p == 2 {
                proot(&c, 2)
            } else if p == 3 {
                &c * bi(inv(md(&b, 3), 3))
            } else {
                (&b * &c - 9 * &d) * bi(inv(md(&(2 * &x), p), p))
            };
            let r = &pb * bi(md(&r, p));
            w.rst(&r, &BigInt::zero(), &BigInt::zero());
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (p2.clone(), p2.clone());
            let cp;
            loop {
                let a2t = &w.a2 / &pb;
                let a3t = &w.a3 / &my;
                let a6t = &w.a6 / (&mx * &my);
                if pdiv(&(&a3t * &a3t + 4 * &a6t)) {
                    let t = if p == 2 {
                        &my * proot(&a6t, 2)
                    } else {
                        &my * bi(md(&(-&a3t * bi(half)), p))
                    };
                    w.rst(&BigInt::zero(), &BigInt::zero(), &t);
                    my = &my * &pb;
                    iy += 1;
                    let a2t = &w.a2 / &pb;
                    let a4t = &w.a4 / (&pb * &mx);
                    let a6t = &w.a6 / (&mx * &my);
                    if pdiv(&(&a4t * &a4t - 4 * &a6t * &a2t)) {
                        let r = if p == 2 {
                            &mx * proot(&(&a6t * bi(inv(md(&a2t, 2), 2))), 2)
                        } else {
                            &mx * bi(md(&(-&a4t * bi(inv(md(&(2 * &a2t), p), p))), p))
                        };
                        w.rst(&r, &BigInt::zero(), &BigInt::zero());
                        mx = &mx * &pb;
                        ix += 1;
                    } else {
                        cp = if nroots(&[a6t, a4t, a2t], p) > 0 { 4 } else { 2 };
                        break;
                    }
                } else {
                    let _ = a2t;
                    cp = if nroots(&[-a6t, a3t, BigInt::one()], p) > 0 { 4 } else { 2 };
                    break;
                }
            }
            let m = ix + iy - 5;
            return additive(Kodaira::IStar(m), vd - m - 4, cp);
        }
        // triple root moved to 0
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            proot(&-&d, 3)
        } else {
            -&b * bi(inv(3, p))
        };
        let r = &pb * bi(md(&r, p));
        w.rst(&r, &BigInt::zero(), &BigInt::zero());
        let x3t = &w.a3 / &p2;
        let x6t = &w.a6 / (&p2 * &p2);
        if !pdiv(&(&x3t * &x3t + 4 * &x6t)) {
            let cp = if nroots(&[-x6t, x3t, BigInt::one()], p) > 0 { 3 } else { 1 };
            return additive(Kodaira::IVStar, vd - 6, cp);
        }
        let t = if p == 2 { x6t.clone() } else { &x3t * bi(half) };
        let t = -&p2 * bi(md(&t, p));
        w.rst(&BigInt::zero(), &BigInt::zero(), &t);
        if v(&w.a4, p) < 4 {
            return additive(Kodaira::IIIStar, vd - 7, 2);
        }
        if v(&w.a6, p) < 6 {
            return additive(Kodaira::IIStar, vd - 8, 1);
        }
        // not minimal: rescale and start over
        w.descale(&pb);
    }
}

/// Global conductor, from Tate's algorithm at every prime of bad reduction.
pub fn conductor(e: &EllipticModel) -> Result<BigInt> {
    let w = integral_model(e);
    let (_, _, d) = w.c4_c6_disc();
    let mut n = BigInt::one();
    for p in prime_support(&d) {
        let p = p.to_u64().ok_or_else(|| Error::domain("curves", "discriminant prime too large"))?;
        let ld = tate_algorithm(e, p)?;
        n *= num_traits::pow(bi(p), ld.f_p as usize);
    }
    Ok(n.abs())
}
