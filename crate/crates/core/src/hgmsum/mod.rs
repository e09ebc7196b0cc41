//! Character sums: the Weil character, Gauss and Jacobi sums, finite
//! hypergeometric traces, the CM trace at t = 0 and the degenerate formulas.

pub mod cm;
pub mod gauss;
pub mod jacobi;
mod large;
pub mod trace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::nt::rat;
use crate::arith::Fq;
use crate::error::{Error, Result};

pub use cm::{cm_trace, degenerate0, degenerate_inf, lift_trace};
pub use gauss::{gauss_sum, teichmuller_u, GaussTable};
pub use jacobi::{jacobi_sum, JacobiContext};
pub use trace::{hyp_trace, TraceValue};

/// Hypergeometric parameters (a, b), (c, d) with common denominator N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGMParams {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
    pub n: u32,
}

impl HGMParams {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        let mut n = BigInt::from(1);
        for x in [&a, &b, &c, &d] {
            n = n.lcm(x.denom());
        }
        let n = n
            .to_u32()
            .filter(|&n| n <= 10_000)
            .ok_or_else(|| Error::domain("hgmsum", "common denominator too large"))?;
        Ok(HGMParams { a, b, c, d, n })
    }

    /// (1/3, -1/3), (1/5, -1/5): the motive attached to x^5 + y^p + z^3 = 0.
    pub fn fermat53() -> Self {
        Self::new(rat(1, 3), rat(-1, 3), rat(1, 5), rat(-1, 5)).unwrap()
    }

    /// (1/5, -1/5), (1/3, -1/3): the same motive with the roles swapped, t -> 1/t.
    pub fn fermat53_swapped() -> Self {
        Self::new(rat(1, 5), rat(-1, 5), rat(1, 3), rat(-1, 3)).unwrap()
    }

    /// Parse "a,b,c,d" with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<_> = s.split(',').map(crate::arith::nt::parse_rat).collect();
        if parts.len() != 4 || parts.iter().any(|p| p.is_none()) {
            return Err(Error::domain("hgmsum", format!("cannot parse parameters {:?}", s)));
        }
        let v: Vec<BigRational> = parts.into_iter().map(Option::unwrap).collect();
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    /// No top parameter is congruent to a bottom one mod Z.
    pub fn is_generic(&self) -> bool {
        let diff_int = |x: &BigRational, y: &BigRational| (x - y).is_integer();
        !(diff_int(&self.a, &self.c)
            || diff_int(&self.a, &self.d)
            || diff_int(&self.b, &self.c)
            || diff_int(&self.b, &self.d))
    }

    /// Parameter * N as an integer.
    pub(crate) fn scaled(&self, x: &BigRational) -> i64 {
        (x * BigRational::from_integer(BigInt::from(self.n))).to_integer().to_i64().unwrap()
    }
}

/// The Weil character of the residue field: the k in Z/N with x^((q-1)/N) = zeta^k,
/// `None` at zero.
pub fn chi_lambda(field: &Fq, x: u64) -> Option<u32> {
    field.chi(x)
}

pub(crate) fn frac_part(x: &BigRational) -> BigRational {
    let f = x - x.floor();
    if f < BigRational::zero() {
        f + BigRational::from_integer(1.into())
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        let p = HGMParams::fermat53();
        assert_eq!(p.n, 15);
        assert!(p.is_generic());
        assert_eq!(HGMParams::parse("1/5,-1/5,1/3,-1/3").unwrap(), HGMParams::fermat53_swapped());
    }

    #[test]
    fn chi_basics() {
        let f = Fq::build(11, 15, 0).unwrap();
        let g = f.generator();
        assert_eq!(chi_lambda(&f, 1), Some(0));
        assert_eq!(chi_lambda(&f, 0), None);
        let c = chi_lambda(&f, g).unwrap();
        assert_eq!(chi_lambda(&f, f.mul(g, g)), Some(2 * c % 15));
        assert_eq!(num_integer::gcd(c, 15), 1);
    }
}
