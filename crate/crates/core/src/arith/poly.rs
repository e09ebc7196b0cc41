//! Dense univariate polynomials over Z, Q and the ring of integers of Q(sqrt5).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::kelt::KElt;

/// The few operations the polynomial code needs from its coefficients.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Quotient when it exists in the ring.
    fn exact_div(&self, o: &Self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Ring for KElt {
    fn zero() -> Self {
        KElt::zero()
    }
    fn one() -> Self {
        KElt::one()
    }
    fn is_zero(&self) -> bool {
        KElt::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        KElt::exact_div(self, o)
    }
    fn from_i64(n: i64) -> Self {
        KElt::int(n)
    }
}

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T: Ring> {
    c: Vec<T>,
}

pub type ZPoly = Poly<BigInt>;
pub type QPoly = Poly<BigRational>;
pub type KPoly = Poly<KElt>;

impl<T: Ring> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: T) -> Self {
        Self::new(vec![a])
    }

    /// The polynomial x.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| T::from_i64(n)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> T {
        self.c.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` as the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|a| a.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] = r[i + j].add(&a.mul(b));
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.c.iter().map(|a| a.mul(s)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(T::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(a.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&T::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.c.iter().map(f).collect())
    }

    /// Resultant by fraction-free (Bareiss) elimination on the Sylvester matrix.
    pub fn resultant(&self, o: &Self) -> T {
        let (m, n) = match (self.degree(), o.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return T::zero(),
        };
        if m == 0 && n == 0 {
            return T::one();
        }
        let size = m + n;
        let mut a = vec![vec![T::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                a[i][i + j] = self.c[m - j].clone();
            }
        }
        for i in 0..m {
            for j in 0..=n {
                a[n + i][i + j] = o.c[n - j].clone();
            }
        }
        bareiss_det(a)
    }
}

/// Determinant over an integral domain with exact division.
pub fn bareiss_det<T: Ring>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

impl QPoly {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(<BigRational as One>::one() / l))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = <BigRational as One>::one() / d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![<BigRational as Zero>::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = &r[i] * &lead_inv;
            if Zero::is_zero(&f) {
                continue;
            }
            for j in 0..=dd {
                let t = &f * &d.c[j];
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_z(&self) -> Option<ZPoly> {
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            if !a.is_integer() {
                return None;
            }
            out.push(a.to_integer());
        }
        Some(ZPoly::new(out))
    }
}

impl ZPoly {
    pub fn to_q(&self) -> QPoly {
        self.map(|a| BigRational::from_integer(a.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(<BigInt as Zero>::zero(), |g, a| g.gcd(a))
    }

    pub fn to_k(&self) -> KPoly {
        self.map(|a| KElt::int(a.clone()))
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: Vec<(usize, bool, String, bool)>,
) -> fmt::Result {
    // (degree, negative, |coef| as text, coef is one)
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (d, neg, mag, unit)) in terms.into_iter().enumerate() {
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let var = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{}", d),
        };
        if d == 0 {
            write!(f, "{}", mag)?;
        } else if unit {
            write!(f, "{}", var)?;
        } else {
            write!(f, "{}*{}", mag, var)?;
        }
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !Zero::is_zero(*a))
            .map(|(d, a)| (d, a.is_negative(), a.abs().to_string(), a.abs().is_one()))
            .collect();
        write_terms(f, terms)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !Zero::is_zero(*a))
            .map(|(d, a)| {
                let m = a.abs();
                let s = if m.is_integer() {
                    m.numer().to_string()
                } else {
                    format!("({}/{})", m.numer(), m.denom())
                };
                (d, a.is_negative(), s, m.is_one())
            })
            .collect();
        write_terms(f, terms)
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(d, a)| {
                let one = *a == KElt::one();
                (d, false, format!("({})", a), one)
            })
            .collect();
        write_terms(f, terms)
    }
}

/// Parse a polynomial in x with integer coefficients, e.g. "x^2 - 4*x - 316".
pub fn parse_zpoly(s: &str) -> Option<ZPoly> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    let t = t.replace('²', "^2").replace('³', "^3").replace('⁴', "^4");
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, term.trim_start_matches('+').to_string()),
        };
        let (coef, deg) = match body.find('x') {
            None => (body.parse::<BigInt>().ok()?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() { <BigInt as One>::one() } else { c.parse().ok()? };
                let rest = &body[pos + 1..];
                let d = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, <BigInt as Zero>::zero());
        }
        coeffs[deg] += if neg { -coef } else { coef };
    }
    Some(ZPoly::new(coeffs))
}
