//! Explicit curves: genus-2 and elliptic models, point counting, Euler factors,
//! Tate's algorithm and congruences between Frobenius polynomials.

pub mod congruence;
pub mod count;
pub mod tate;

pub use congruence::{congruence_check, Comparand, CongruenceModulus, SlotCheck};
pub use count::{
    count_points, elliptic_trace, euler_factor, euler_factor_at, split_over_k, CurveForm, LPoly2,
    QuadraticFamily,
};
pub use tate::{conductor, tate_algorithm, Kodaira, LocalData, Reduction};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::nt::{rat, rat_int};
use crate::arith::{Cyc, QPoly, ZPoly};
use crate::error::{Error, Result};

/// y^2 + h(x) y = f(x) with deg f <= 6 and deg h <= 3.
#[derive(Clone, Debug, PartialEq)]
pub struct SexticModel {
    pub f: QPoly,
    pub h: QPoly,
}

impl SexticModel {
    pub fn new(f: QPoly) -> Self {
        SexticModel { f, h: QPoly::zero() }
    }

    pub fn with_h(f: QPoly, h: QPoly) -> Self {
        SexticModel { f, h }
    }

    /// The sextic 4f + h^2, so that the curve is Y^2 = 4f + h^2 with Y = 2y + h.
    pub fn rhs(&self) -> QPoly {
        let four = QPoly::constant(rat(4, 1));
        four.mul(&self.f).add(&self.h.mul(&self.h))
    }

    /// The same curve with integral coefficients: y^2 = f(x) is rescaled by
    /// x -> x/d, y -> y/d^3 for the smallest d that clears denominators.
    pub fn integral(&self) -> Result<SexticModel> {
        if !self.h.is_zero() {
            return Err(Error::domain("curves", "integral rescaling is only implemented for h = 0"));
        }
        let c = self.f.coeffs();
        let mut d = BigInt::one();
        loop {
            let ok = c.iter().enumerate().all(|(k, a)| {
                let e = 6usize.saturating_sub(k) as u32;
                (a * rat_int(&num_traits::pow(d.clone(), e as usize))).is_integer()
            });
            if ok {
                break;
            }
            d += 1;
        }
        let f = QPoly::new(
            c.iter()
                .enumerate()
                .map(|(k, a)| a * rat_int(&num_traits::pow(d.clone(), 6 - k)))
                .collect(),
        );
        Ok(SexticModel::new(f))
    }
}

/// Long Weierstrass model [a1, a2, a3, a4, a6].
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticModel {
    pub a: [BigRational; 5],
}

impl EllipticModel {
    pub fn new(a: [BigRational; 5]) -> Result<Self> {
        let e = EllipticModel { a };
        if e.discriminant().is_zero() {
            return Err(Error::domain("curves", "singular Weierstrass model"));
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(|x| rat(x, 1)))
    }

    /// b2, b4, b6, b8.
    pub fn b(&self) -> [BigRational; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let two = rat(2, 1);
        let four = rat(4, 1);
        let b2 = a1 * a1 + &four * a2;
        let b4 = a1 * a3 + &two * a4;
        let b6 = a3 * a3 + &four * a6;
        let b8 = a1 * a1 * a6 + &four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4_c6(&self) -> (BigRational, BigRational) {
        let [b2, b4, b6, _] = self.b();
        let c4 = &b2 * &b2 - rat(24, 1) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + rat(36, 1) * &b2 * &b4 - rat(216, 1) * &b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> BigRational {
        let [b2, b4, b6, b8] = self.b();
        -(&b2 * &b2 * &b8) - rat(8, 1) * &b4 * &b4 * &b4 - rat(27, 1) * &b6 * &b6
            + rat(9, 1) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> BigRational {
        let (c4, _) = self.c4_c6();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    /// The cubic 4x^3 + b2 x^2 + 2 b4 x + b6 with (2y + a1 x + a3)^2 equal to it.
    pub fn rhs(&self) -> QPoly {
        let [b2, b4, b6, _] = self.b();
        QPoly::new(vec![b6, rat(2, 1) * b4, b2, rat(4, 1)])
    }
}

/// The odd polynomial (-1)^((r-1)/2) x h(2 - x^2), where h is the minimal
/// polynomial of zeta_r + zeta_r^-1.
pub fn build_f_r(r: u32) -> Result<ZPoly> {
    if r < 3 || !crate::arith::nt::is_prime(r as u64) {
        return Err(Error::domain("curves", format!("r = {} is not an odd prime", r)));
    }
    let z = Cyc::zeta_pow(r, 1).add(&Cyc::zeta_pow(r, -1));
    let h = z.min_poly()?;
    let arg = ZPoly::from_i64s(&[2, 0, -1]);
    let f = ZPoly::x().mul(&h.compose(&arg));
    Ok(if (r - 1) / 2 % 2 == 1 { f.neg() } else { f })
}

fn check_t(t: &BigRational) -> Result<()> {
    if t.is_zero() || t.is_one() {
        return Err(Error::domain("curves", format!("t = {} is a degenerate parameter", t)));
    }
    Ok(())
}

fn qpoly(c: Vec<BigRational>) -> QPoly {
    QPoly::new(c)
}

/// y^2 = 5x^6 - 12x^5 + 10t x^3 + t^2.
pub fn c53(t: &BigRational) -> Result<SexticModel> {
    check_t(t)?;
    let z = BigRational::zero;
    Ok(SexticModel::new(qpoly(vec![
        t * t,
        z(),
        z(),
        rat(10, 1) * t,
        z(),
        rat(-12, 1),
        rat(5, 1),
    ])))
}

/// y^2 + y(x^3 + t(1-t)^2) = 2t(1-t)^2 x^3 + 3t^2(1-t)^3 x + t^2(1-t)^4, a model
/// isomorphic to c53((t-1)/t).
pub fn c53_alt(t: &BigRational) -> Result<SexticModel> {
    check_t(t)?;
    let z = BigRational::zero;
    let s = BigRational::one() - t;
    let s2 = &s * &s;
    let h = qpoly(vec![t * &s2, z(), z(), BigRational::one()]);
    let f = qpoly(vec![
        t * t * &s2 * &s2,
        rat(3, 1) * t * t * &s2 * &s,
        z(),
        rat(2, 1) * t * &s2,
    ]);
    Ok(SexticModel::with_h(f, h))
}

/// y^2 = f_r(x) + 2 - 4t.
pub fn darmon_minus(r: u32, t: &BigRational) -> Result<SexticModel> {
    check_t(t)?;
    let f = build_f_r(r)?.to_q();
    let c = QPoly::constant(rat(2, 1) - rat(4, 1) * t);
    Ok(SexticModel::new(f.add(&c)))
}

/// y^2 = (x + 2)(f_r(x) + 2 - 4t).
pub fn darmon_plus(r: u32, t: &BigRational) -> Result<SexticModel> {
    let m = darmon_minus(r, t)?;
    Ok(SexticModel::new(QPoly::new(vec![rat(2, 1), rat(1, 1)]).mul(&m.f)))
}

/// darmon_plus rescaled to integral coefficients.
pub fn darmon_plus_integral(r: u32, t: &BigRational) -> Result<SexticModel> {
    darmon_plus(r, t)?.integral()
}

/// F(x) = c^r f_r(x/c) + 2c^r + 4a^q.
pub fn f_integral(q: u32, r: u32, a: &BigInt, c: &BigInt) -> Result<ZPoly> {
    if c.is_zero() {
        return Err(Error::domain("curves", "c must be nonzero"));
    }
    let f = build_f_r(r)?;
    let mut out = Vec::with_capacity(f.coeffs().len());
    for (k, fk) in f.coeffs().iter().enumerate() {
        out.push(fk * num_traits::pow(c.clone(), r as usize - k));
    }
    let cr = num_traits::pow(c.clone(), r as usize);
    out[0] += BigInt::from(2) * cr + BigInt::from(4) * num_traits::pow(a.clone(), q as usize);
    Ok(ZPoly::new(out))
}

/// y^2 + 3xy + ty = x^3.
pub fn e3_plus(t: &BigRational) -> Result<EllipticModel> {
    check_t(t)?;
    let z = BigRational::zero;
    EllipticModel::new([rat(3, 1), z(), t.clone(), z(), z()])
}

/// y^2 = x^3 - 3x + 4t - 2.
pub fn e3_minus(t: &BigRational) -> Result<EllipticModel> {
    check_t(t)?;
    let z = BigRational::zero;
    EllipticModel::new([z(), z(), z(), rat(-3, 1), rat(4, 1) * t - rat(2, 1)])
}

/// y^2 + xy = x^3 + (t/64) x.
pub fn e2(t: &BigRational) -> Result<EllipticModel> {
    if t.is_zero() {
        return Err(Error::domain("curves", "t = 0 is degenerate"));
    }
    let z = BigRational::zero;
    EllipticModel::new([rat(1, 1), z(), z(), t / rat(64, 1), z()])
}

/// y^2 = x(x - 1)(1 - tx), in the Weierstrass form y^2 = x^3 + (1 + t)x^2 + t x
/// obtained by x -> -x/t, y -> y/t.
pub fn frey_ppp(t: &BigRational) -> Result<EllipticModel> {
    check_t(t)?;
    let z = BigRational::zero;
    EllipticModel::new([z(), t + BigRational::one(), z(), t.clone(), z()])
}

/// y^2 + xy = x^3 - t/432.
pub fn e_t_remark(t: &BigRational) -> Result<EllipticModel> {
    if t.is_zero() {
        return Err(Error::domain("curves", "t = 0 is degenerate"));
    }
    let z = BigRational::zero;
    EllipticModel::new([rat(1, 1), z(), z(), z(), -(t / rat(432, 1))])
}

/// A rational number from "a/b" syntax, for tests and the command line.
pub fn t_of(s: &str) -> Result<BigRational> {
    crate::arith::nt::parse_rat(s).ok_or_else(|| Error::domain("curves", format!("bad rational {:?}", s)))
}
