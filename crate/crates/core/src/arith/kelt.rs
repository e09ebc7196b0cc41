//! The ring of integers of Q(sqrt 5) in half-integer coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::ZPoly;

/// The element (u + v*sqrt5)/2, with u and v of equal parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KElt {
    pub u: BigInt,
    pub v: BigInt,
}

impl KElt {
    /// Build from half-coordinates; `None` if the parity condition fails.
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Option<Self> {
        let (u, v) = (u.into(), v.into());
        if (&u - &v).is_odd() {
            return None;
        }
        Some(KElt { u, v })
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        KElt { u: n.into() * 2, v: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn conj(&self) -> Self {
        KElt { u: self.u.clone(), v: -&self.v }
    }

    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(5) * &self.v * &self.v) / 4
    }

    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    /// Real embedding sending sqrt5 to sign*sqrt5.
    pub fn embed(&self, sign: i32) -> f64 {
        let u = self.u.to_f64().unwrap();
        let v = self.v.to_f64().unwrap();
        (u + sign as f64 * v * 5f64.sqrt()) / 2.0
    }

    /// Monic minimal polynomial over Q: degree 1 for rationals, else x^2 - tr x + n.
    pub fn min_poly(&self) -> ZPoly {
        if self.is_rational() {
            ZPoly::new(vec![-(&self.u / BigInt::from(2)), BigInt::one()])
        } else {
            ZPoly::new(vec![self.norm(), -self.trace(), BigInt::one()])
        }
    }

    /// Characteristic polynomial x^2 - tr x + n, also for rationals.
    pub fn char_poly(&self) -> ZPoly {
        ZPoly::new(vec![self.norm(), -self.trace(), BigInt::one()])
    }

    /// Exact quotient in the ring, if it exists.
    pub fn exact_div(&self, d: &KElt) -> Option<KElt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let p = self * &d.conj();
        // p = x * conj(d) = q * n for the quotient q, coordinate-wise
        if !(&p.u % &n).is_zero() || !(&p.v % &n).is_zero() {
            return None;
        }
        KElt::new(&p.u / &n, &p.v / &n)
    }

    pub fn pow(&self, e: u32) -> KElt {
        let mut r = KElt::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Both real embeddings bounded by 2*sqrt(q) in absolute value, checked exactly.
    pub fn weil_ok(&self, q: &BigInt) -> bool {
        // max over embeddings of |u ± v sqrt5| <= 4 sqrt(q)
        let a = self.u.abs();
        let b = self.v.abs();
        let rhs = BigInt::from(16) * q - &a * &a - BigInt::from(5) * &b * &b;
        if rhs.is_negative() {
            return false;
        }
        BigInt::from(20) * &a * &a * &b * &b <= &rhs * &rhs
    }

    /// Parse "(u,v)" half-coordinates, an integer, or forms like "(9+sqrt5)/2", "2+2sqrt5".
    pub fn parse(s: &str) -> Option<KElt> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('√', "sqrt").replace('−', "-");
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            if let Some((a, b)) = inner.split_once(',') {
                return KElt::new(a.parse::<BigInt>().ok()?, b.parse::<BigInt>().ok()?);
            }
        }
        let (body, halve) = match t.strip_suffix("/2") {
            Some(b) => (b.trim_start_matches('(').trim_end_matches(')').to_string(), true),
            None => (t.clone(), false),
        };
        let (mut a, mut b) = (BigInt::zero(), BigInt::zero());
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in body.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(cur.clone());
                cur.clear();
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            if term.is_empty() {
                return None;
            }
            if let Some(coef) = term.strip_suffix("sqrt5") {
                let c = match coef {
                    "" | "+" => BigInt::one(),
                    "-" => -BigInt::one(),
                    c => c.trim_end_matches('*').parse().ok()?,
                };
                b += c;
            } else {
                a += term.parse::<BigInt>().ok()?;
            }
        }
        if halve {
            KElt::new(a, b)
        } else {
            KElt::new(a * 2, b * 2)
        }
    }
}

impl fmt::Display for KElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", &self.u / 2);
        }
        let even = self.u.is_even();
        let (a, b) = if even {
            (&self.u / 2, &self.v / 2)
        } else {
            (self.u.clone(), self.v.clone())
        };
        let sq = match (b.is_one(), (-&b).is_one()) {
            (true, _) => "sqrt5".to_string(),
            (_, true) => "-sqrt5".to_string(),
            _ => format!("{}sqrt5", b),
        };
        let body = if a.is_zero() {
            sq
        } else if b.is_negative() {
            format!("{}{}", a, sq)
        } else {
            format!("{}+{}", a, sq)
        };
        if even {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/2", body)
        }
    }
}

impl<'a> Add<&'a KElt> for &'a KElt {
    type Output = KElt;
    fn add(self, o: &KElt) -> KElt {
        KElt { u: &self.u + &o.u, v: &self.v + &o.v }
    }
}

impl<'a> Sub<&'a KElt> for &'a KElt {
    type Output = KElt;
    fn sub(self, o: &KElt) -> KElt {
        KElt { u: &self.u - &o.u, v: &self.v - &o.v }
    }
}

impl<'a> Mul<&'a KElt> for &'a KElt {
    type Output = KElt;
    fn mul(self, o: &KElt) -> KElt {
        let u = (&self.u * &o.u + BigInt::from(5) * &self.v * &o.v) / 2;
        let v = (&self.u * &o.v + &self.v * &o.u) / 2;
        KElt { u, v }
    }
}

impl Neg for &KElt {
    type Output = KElt;
    fn neg(self) -> KElt {
        KElt { u: -&self.u, v: -&self.v }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for KElt {
            type Output = KElt;
            fn $m(self, o: KElt) -> KElt {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn k(u: i64, v: i64) -> KElt {
        KElt::new(u, v).unwrap()
    }

    #[test]
    fn norm_conj_trace() {
        assert_eq!(k(4, 4).norm(), BigInt::from(-16));
        assert_eq!(k(1, 1).conj(), k(1, -1));
        assert_eq!(k(1, 1).norm(), BigInt::from(-1));
        assert_eq!(k(4, 0).trace(), BigInt::from(4));
        assert!(KElt::new(1, 2).is_none());
    }

    #[test]
    fn multiplicative_norm() {
        for (a, b) in [((1, 1), (3, -5)), ((9, 1), (-3, 3)), ((4, 4), (7, 1))] {
            let x = k(a.0, a.1);
            let y = k(b.0, b.1);
            assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            assert_eq!((&x * &y).exact_div(&y), Some(x.clone()));
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(KElt::parse("(9+sqrt5)/2"), Some(k(9, 1)));
        assert_eq!(KElt::parse("(-3+3√5)/2"), Some(k(-3, 3)));
        assert_eq!(KElt::parse("2+2sqrt5"), Some(k(4, 4)));
        assert_eq!(KElt::parse("-2"), Some(k(-4, 0)));
        assert_eq!(KElt::parse("(3,-1)"), Some(k(3, -1)));
        assert_eq!(k(9, 1).to_string(), "(9+sqrt5)/2");
        assert_eq!(k(4, -4).to_string(), "2-2sqrt5");
        assert_eq!(k(-10, 0).to_string(), "-5");
    }

    #[test]
    fn weil() {
        let q = BigInt::from(11);
        assert!(k(4, 4).weil_ok(&q));
        assert!(!k(200, 0).weil_ok(&q));
        assert!(k(12, 0).weil_ok(&q));
        assert!(!k(14, 0).weil_ok(&q));
    }
}
