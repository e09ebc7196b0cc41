//! Point counts over finite fields of odd characteristic, genus-2 Euler factors,
//! and their splitting over Q(sqrt5).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{EllipticModel, SexticModel};
use crate::arith::field::ZERO_LOG;
use crate::arith::fpoly::FpPoly;
use crate::arith::nt::rat_mod;
use crate::arith::{Fq, KElt, PrimeSlotK, QPoly, ZPoly};
use crate::error::{Error, Result};

/// A curve Y^2 = F(x) after completing the square (odd characteristic).
pub trait CurveForm {
    fn rhs(&self) -> QPoly;
    fn genus(&self) -> usize;
}

impl CurveForm for SexticModel {
    fn rhs(&self) -> QPoly {
        SexticModel::rhs(self)
    }
    fn genus(&self) -> usize {
        2
    }
}

impl CurveForm for EllipticModel {
    fn rhs(&self) -> QPoly {
        EllipticModel::rhs(self)
    }
    fn genus(&self) -> usize {
        1
    }
}

/// Euler factor data of a genus-2 curve over F_q: the characteristic polynomial
/// x^4 - a1 x^3 + a2 x^2 - q a1 x + q^2 of Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPoly2 {
    pub q: u64,
    pub a1: BigInt,
    pub a2: BigInt,
}

impl LPoly2 {
    pub fn new(q: u64, a1: impl Into<BigInt>, a2: impl Into<BigInt>) -> Self {
        LPoly2 { q, a1: a1.into(), a2: a2.into() }
    }

    /// From #C(F_q) and #C(F_{q^2}).
    pub fn from_counts(q: u64, n1: u64, n2: u64) -> Result<Self> {
        let qb = BigInt::from(q);
        let a1 = &qb + 1 - BigInt::from(n1);
        let s2 = &qb * &qb + 1 - BigInt::from(n2);
        let twice = &a1 * &a1 - s2;
        if (&twice % 2u32) != BigInt::zero() {
            return Err(Error::internal("curves", "a1^2 - s2 is odd"));
        }
        let l = LPoly2 { q, a1, a2: twice / 2 };
        if !l.weil_ok() {
            return Err(Error::internal("curves", format!("Euler factor {} violates the Weil bounds", l)));
        }
        Ok(l)
    }

    /// Monic characteristic polynomial of Frobenius, low degree first.
    pub fn char_poly(&self) -> ZPoly {
        let q = BigInt::from(self.q);
        ZPoly::new(vec![&q * &q, -(&q * &self.a1), self.a2.clone(), -self.a1.clone(), BigInt::from(1)])
    }

    /// 1 - a1 T + a2 T^2 - q a1 T^3 + q^2 T^4.
    pub fn l_poly(&self) -> ZPoly {
        let mut c = self.char_poly().coeffs().to_vec();
        c.reverse();
        ZPoly::new(c)
    }

    /// |a1| <= 4 sqrt(q), |a2| <= 6q.
    pub fn weil_ok(&self) -> bool {
        let q = BigInt::from(self.q);
        &self.a1 * &self.a1 <= BigInt::from(16) * &q && self.a2.abs() <= BigInt::from(6) * &q
    }

    /// P(q x): the Tate-twisted characteristic polynomial, scaled to stay integral.
    pub fn twisted_char_poly(&self) -> ZPoly {
        let q = BigInt::from(self.q);
        let c = self.char_poly();
        ZPoly::new(c.coeffs().iter().enumerate().map(|(k, a)| a * num_traits::pow(q.clone(), k)).collect())
    }
}

impl std::fmt::Display for LPoly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.char_poly())
    }
}

/// Reduce a rational polynomial mod p; `None` if some denominator is divisible by p.
pub(crate) fn reduce_mod(f: &QPoly, p: u64) -> Option<Vec<i64>> {
    f.coeffs().iter().map(|c| rat_mod(c, p).map(|v| v as i64)).collect()
}

/// Checks that Y^2 = F(x) mod p is smooth of genus g; returns the reduction.
fn smooth_reduction(f: &QPoly, p: u64, genus: usize) -> Result<FpPoly> {
    let c = reduce_mod(f, p)
        .ok_or_else(|| Error::domain("curves", format!("model is not integral at {}", p)))?;
    let fp = FpPoly::new(p, c);
    let d = fp.degree().unwrap_or(0);
    if d != 2 * genus + 1 && d != 2 * genus + 2 {
        return Err(Error::domain(
            "curves",
            format!("singular reduction at {}: degree drops to {}", p, d),
        ));
    }
    let der = FpPoly::new(
        p,
        fp.c.iter().enumerate().skip(1).map(|(k, &a)| ((k as u64 % p) * a % p) as i64).collect(),
    );
    if fp.gcd(&der).degree() != Some(0) {
        return Err(Error::domain("curves", format!("singular reduction at {}: discriminant vanishes", p)));
    }
    Ok(fp)
}

fn eval(field: &Fq, c: &[u64], x: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| field.add(field.mul(acc, x), a))
}

/// Points at infinity of Y^2 = F(x) with F of degree d and leading coefficient l.
fn points_at_infinity(field: &Fq, fp: &FpPoly, genus: usize) -> u64 {
    if fp.degree() == Some(2 * genus + 1) {
        1
    } else {
        (1 + field.quad_char(*fp.c.last().unwrap())) as u64
    }
}

/// #C(F_q) for the smooth projective model over the given field.
pub fn count_on<C: CurveForm + ?Sized>(curve: &C, field: &Fq) -> Result<u64> {
    let p = field.p;
    if p == 2 {
        return Err(Error::domain("curves", "point counting needs odd characteristic"));
    }
    let g = curve.genus();
    let fp = smooth_reduction(&curve.rhs(), p, g)?;
    let mut total: i64 = field.q as i64;
    for x in 0..field.q {
        total += field.quad_char(eval(field, &fp.c, x)) as i64;
    }
    Ok(total as u64 + points_at_infinity(field, &fp, g))
}

/// #C(F_{p^k}).
pub fn count_points<C: CurveForm + ?Sized>(curve: &C, p: u64, k: usize) -> Result<u64> {
    count_on(curve, &Fq::generic(p, k))
}

/// Euler factor over F_q with q = ell^k, from counts over F_q and F_{q^2}.
pub fn euler_factor(model: &SexticModel, ell: u64, k: usize) -> Result<LPoly2> {
    let n1 = count_points(model, ell, k)?;
    let n2 = count_points(model, ell, 2 * k)?;
    LPoly2::from_counts(ell.pow(k as u32), n1, n2)
}

/// Euler factor over the residue field of a prime of Q(sqrt5).
pub fn euler_factor_at(model: &SexticModel, slot: &PrimeSlotK) -> Result<LPoly2> {
    euler_factor(model, slot.ell, slot.f_k() as usize)
}

/// q + 1 - #E(F_q) for q = p^k.
pub fn elliptic_trace(e: &EllipticModel, p: u64, k: usize) -> Result<BigInt> {
    let n = count_points(e, p, k)?;
    Ok(BigInt::from(p.pow(k as u32)) + 1 - BigInt::from(n))
}

/// The two roots in Z[(1+sqrt5)/2] of z^2 - a1 z + (a2 - 2q), the traces of the
/// two rank-2 pieces of a surface of GL2(K) type.
pub fn split_over_k(l: &LPoly2) -> Result<[KElt; 2]> {
    let q = BigInt::from(l.q);
    let disc = &l.a1 * &l.a1 - BigInt::from(4) * (&l.a2 - BigInt::from(2) * &q);
    let not_split = || Error::domain("curves", format!("{} is not GL2(K)-compatible", l));
    if disc.is_negative() {
        return Err(not_split());
    }
    let (s, root5) = {
        let r = disc.sqrt();
        if &r * &r == disc {
            (r, false)
        } else if (&disc % 5u32).is_zero() && {
            let d5: BigInt = &disc / 5u32;
            let r5 = d5.sqrt();
            &r5 * &r5 == d5
        } {
            ((&disc / 5u32).sqrt(), true)
        } else {
            return Err(not_split());
        }
    };
    let pair = if root5 {
        [KElt::new(l.a1.clone(), s.clone()), KElt::new(l.a1.clone(), -s)]
    } else {
        [KElt::new(&l.a1 + &s, 0), KElt::new(&l.a1 - &s, 0)]
    };
    match pair {
        [Some(a), Some(b)] => {
            let mut v = [a, b];
            v.sort();
            Ok(v)
        }
        _ => Err(not_split()),
    }
}

/// A family y^2 = base(x) + t lin(x) + t^2 quad(x), counted for many t at once.
///
/// Values are combined in the logarithm domain with Zech logarithms, so one pass
/// over the field serves every parameter value.
#[derive(Clone, Debug)]
pub struct QuadraticFamily {
    pub base: Vec<i64>,
    pub lin: Vec<i64>,
    pub quad: Vec<i64>,
}

impl QuadraticFamily {
    /// 5x^6 - 12x^5 + 10t x^3 + t^2.
    pub fn c53() -> Self {
        QuadraticFamily { base: vec![0, 0, 0, 0, 0, -12, 5], lin: vec![0, 0, 0, 10], quad: vec![1] }
    }

    fn poly_at(&self, p: u64, t: u64) -> FpPoly {
        let n = self.base.len().max(self.lin.len()).max(self.quad.len());
        let p = p as i128;
        let t = t as i128;
        let c = (0..n)
            .map(|i| {
                let g = |v: &Vec<i64>| v.get(i).copied().unwrap_or(0) as i128;
                ((g(&self.base) + t * g(&self.lin) + t * t % p * g(&self.quad)).rem_euclid(p)) as i64
            })
            .collect();
        FpPoly::new(p as u64, c)
    }

    /// #C_t(F) for each t in the prime field; `None` where the fibre is singular.
    pub fn counts(&self, field: &Fq, ts: &[u64]) -> Vec<Option<u64>> {
        let p = field.p;
        let qm1 = field.q - 1;
        let tab = field.tables();
        let zech = field.zech();
        let red = |v: &Vec<i64>| -> Vec<u64> { v.iter().map(|&a| field.from_int(a)).collect() };
        let (b, l, q2) = (red(&self.base), red(&self.lin), red(&self.quad));
        let lg = |a: u64| if a == 0 { ZERO_LOG } else { tab.log[a as usize] };
        let add = |la: u32, lb: u32| -> u32 {
            if la == ZERO_LOG {
                return lb;
            }
            if lb == ZERO_LOG {
                return la;
            }
            let d = (lb as u64 + qm1 - la as u64) % qm1;
            let z = zech[d as usize];
            if z == ZERO_LOG {
                ZERO_LOG
            } else {
                ((la as u64 + z as u64) % qm1) as u32
            }
        };
        let mul = |la: u32, lb: u32| -> u32 {
            if la == ZERO_LOG || lb == ZERO_LOG {
                ZERO_LOG
            } else {
                ((la as u64 + lb as u64) % qm1) as u32
            }
        };
        let mut live = Vec::new();
        let mut out = vec![None; ts.len()];
        for (i, &t) in ts.iter().enumerate() {
            if let Ok(fp) = smooth_reduction_fp(self.poly_at(p, t), 2) {
                let lt = lg(field.from_int(t as i64));
                live.push((i, lt, mul(lt, lt)));
                out[i] = Some(field.q as i64 + points_at_infinity(field, &fp, 2) as i64);
            }
        }
        let mut acc = vec![0i64; ts.len()];
        for x in 0..field.q {
            let (lb, ll, lq) = (lg(eval(field, &b, x)), lg(eval(field, &l, x)), lg(eval(field, &q2, x)));
            for &(i, lt, lt2) in &live {
                let v = add(add(lb, mul(ll, lt)), mul(lq, lt2));
                if v != ZERO_LOG {
                    acc[i] += if v % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        out.iter()
            .zip(acc)
            .map(|(o, a)| o.map(|base| (base + a) as u64))
            .collect()
    }

    /// Euler factors over F_q, q = ell^k, for each t in the prime field.
    pub fn euler_factors(&self, ell: u64, k: usize, ts: &[u64]) -> Vec<Result<LPoly2>> {
        let f1 = Fq::generic(ell, k);
        let f2 = Fq::generic(ell, 2 * k);
        let c1 = self.counts(&f1, ts);
        let c2 = self.counts(&f2, ts);
        let q = ell.pow(k as u32);
        ts.iter()
            .zip(c1.into_iter().zip(c2))
            .map(|(&t, pair)| match pair {
                (Some(n1), Some(n2)) => LPoly2::from_counts(q, n1, n2),
                _ => Err(Error::domain("curves", format!("singular fibre at t = {} mod {}", t, ell))),
            })
            .collect()
    }
}

fn smooth_reduction_fp(fp: FpPoly, genus: usize) -> Result<FpPoly> {
    let p = fp.p;
    let d = fp.degree().unwrap_or(0);
    let der = FpPoly::new(
        p,
        fp.c.iter().enumerate().skip(1).map(|(k, &a)| ((k as u64 % p) * a % p) as i64).collect(),
    );
    if (d != 2 * genus + 1 && d != 2 * genus + 2) || fp.gcd(&der).degree() != Some(0) {
        return Err(Error::domain("curves", "singular fibre"));
    }
    Ok(fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nt::rat;
    use crate::curves::{c53, darmon_plus_integral, e3_plus};

    #[test]
    fn table_rows() {
        let m = c53(&rat(3, 1)).unwrap();
        assert_eq!(euler_factor(&m, 7, 2).unwrap(), LPoly2::new(49, -10, 123));
        assert_eq!(euler_factor(&m, 11, 1).unwrap(), LPoly2::new(11, 1, 21));
        assert_eq!(euler_factor(&m, 29, 1).unwrap(), LPoly2::new(29, 2, 14));
        let d = darmon_plus_integral(5, &rat(1, 3)).unwrap();
        assert_eq!(euler_factor(&d, 7, 2).unwrap(), LPoly2::new(49, 20, 198));
        assert_eq!(euler_factor(&d, 11, 1).unwrap(), LPoly2::new(11, -1, 21));
        assert_eq!(euler_factor(&d, 29, 1).unwrap(), LPoly2::new(29, -5, 53));
        let e = e3_plus(&rat(3, 1)).unwrap();
        assert_eq!(elliptic_trace(&e, 7, 2).unwrap(), BigInt::from(-10));
        assert_eq!(elliptic_trace(&e, 11, 1).unwrap(), BigInt::from(3));
        assert_eq!(elliptic_trace(&e, 29, 1).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn splitting() {
        let s = split_over_k(&LPoly2::new(11, 4, 6)).unwrap();
        assert_eq!(s, [KElt::new(4, -4).unwrap(), KElt::new(4, 4).unwrap()]);
        let s = split_over_k(&LPoly2::new(11, 1, 21)).unwrap();
        assert_eq!(s, [KElt::new(1, -1).unwrap(), KElt::new(1, 1).unwrap()]);
        let s = split_over_k(&LPoly2::new(49, -10, 123)).unwrap();
        assert_eq!(s, [KElt::int(-5), KElt::int(-5)]);
        assert!(split_over_k(&LPoly2::new(11, 1, 3)).is_err());
    }

    #[test]
    fn functional_equation() {
        let l = LPoly2::new(11, 4, 6);
        assert_eq!(l.char_poly(), crate::arith::poly::parse_zpoly("x^4 - 4*x^3 + 6*x^2 - 44*x + 121").unwrap());
        assert_eq!(l.l_poly(), crate::arith::poly::parse_zpoly("121*x^4 - 44*x^3 + 6*x^2 - 4*x + 1").unwrap());
    }

    #[test]
    fn family_matches_single_counts() {
        let fam = QuadraticFamily::c53();
        for (ell, k) in [(11u64, 1usize), (7, 2)] {
            let ts: Vec<u64> = (0..ell).collect();
            let got = fam.euler_factors(ell, k, &ts);
            for (t, g) in ts.iter().zip(got) {
                let m = c53(&rat(*t as i64, 1));
                match m.and_then(|m| euler_factor(&m, ell, k)) {
                    Ok(l) => assert_eq!(g.unwrap(), l),
                    Err(_) => assert!(g.is_err()),
                }
            }
        }
    }

    #[test]
    fn singular_refused() {
        let m = c53(&rat(12, 1)).unwrap(); // t = 1 mod 11
        assert!(count_points(&m, 11, 1).is_err());
    }
}
