//! Igusa invariants of a genus-2 curve, computed from transvectants of the
//! binary sextic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::nt::rat;
use crate::curves::SexticModel;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IgusaVec {
    pub j2: BigRational,
    pub j4: BigRational,
    pub j6: BigRational,
    pub j8: BigRational,
    pub j10: BigRational,
}

impl IgusaVec {
    pub fn as_array(&self) -> [&BigRational; 5] {
        [&self.j2, &self.j4, &self.j6, &self.j8, &self.j10]
    }

    /// 4 J8 - (J2 J6 - J4^2), zero for every genus-2 curve.
    pub fn syzygy_defect(&self) -> BigRational {
        rat(4, 1) * &self.j8 - (&self.j2 * &self.j6 - &self.j4 * &self.j4)
    }

    /// Equality as points of weighted projective space with weights 2, 4, ..., 10.
    pub fn weighted_eq(&self, o: &IgusaVec) -> bool {
        // J_{2i} o_{2k}^i = o_{2i} J_{2k}^i for all pairs, with weights i and k.
        let a = self.as_array();
        let b = o.as_array();
        for i in 0..5 {
            for k in 0..5 {
                let (wi, wk) = (i + 1, k + 1);
                let lhs = a[i].pow(wk as i32) * b[k].pow(wi as i32);
                let rhs = b[i].pow(wk as i32) * a[k].pow(wi as i32);
                if lhs != rhs {
                    return false;
                }
            }
        }
        a.iter().any(|v| !v.is_zero()) == b.iter().any(|v| !v.is_zero())
    }
}

/// A binary form sum c[i] x^i z^(n-i).
#[derive(Clone, Debug)]
struct Form {
    c: Vec<BigRational>,
}

impl Form {
    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    fn dx(&self) -> Form {
        let n = self.deg();
        if n == 0 {
            return Form { c: vec![BigRational::zero()] };
        }
        Form { c: (1..=n).map(|i| &self.c[i] * BigInt::from(i)).collect() }
    }

    fn dz(&self) -> Form {
        let n = self.deg();
        if n == 0 {
            return Form { c: vec![BigRational::zero()] };
        }
        Form { c: (0..n).map(|i| &self.c[i] * BigInt::from(n - i)).collect() }
    }

    fn diff(&self, a: usize, b: usize) -> Form {
        let mut f = self.clone();
        for _ in 0..a {
            f = f.dx();
        }
        for _ in 0..b {
            f = f.dz();
        }
        f
    }

    fn mul(&self, o: &Form) -> Form {
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Form { c }
    }

    fn scalar(&self) -> BigRational {
        debug_assert_eq!(self.deg(), 0);
        self.c[0].clone()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn binom(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The k-th transvectant, normalized by (n-k)!(m-k)!/(n! m!).
fn transvectant(f: &Form, g: &Form, k: usize) -> Form {
    let (n, m) = (f.deg(), g.deg());
    assert!(k <= n && k <= m);
    let mut acc = Form { c: vec![BigRational::zero(); n + m - 2 * k + 1] };
    for j in 0..=k {
        let term = f.diff(k - j, j).mul(&g.diff(j, k - j));
        let s = BigRational::from_integer(if j % 2 == 0 { binom(k, j) } else { -binom(k, j) });
        for (a, b) in acc.c.iter_mut().zip(term.c.iter()) {
            *a += &s * b;
        }
    }
    let norm = BigRational::new(factorial(n - k) * factorial(m - k), factorial(n) * factorial(m));
    Form { c: acc.c.into_iter().map(|a| a * &norm).collect() }
}

/// Igusa–Clebsch invariants (I2, I4, I6, I10) of a binary sextic given by its
/// seven coefficients, lowest degree first.
pub fn igusa_clebsch(coeffs: &[BigRational]) -> [BigRational; 4] {
    assert_eq!(coeffs.len(), 7);
    let f = Form { c: coeffs.to_vec() };
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(&f, &f, 6).scalar();
    let b = transvectant(&i, &i, 4).scalar();
    let c = transvectant(&i, &delta, 4).scalar();
    let d = transvectant(&y3, &y1, 2).scalar();
    let r = |n: i64| rat(n, 1);
    let i2 = r(-120) * &a;
    let i4 = r(-720) * &a * &a + r(6750) * &b;
    let i6 = r(8640) * a.pow(3) - r(108000) * &a * &b + r(202500) * &c;
    let i10 = r(-62208) * a.pow(5) + r(972000) * a.pow(3) * &b + r(1620000) * &a * &a * &c
        - r(3037500) * &a * &b * &b
        - r(6075000) * &b * &c
        - r(4556250) * &d;
    [i2, i4, i6, i10]
}

/// Igusa J-invariants of y^2 + h y = f, computed on the sextic 4f + h^2.
pub fn igusa_j(model: &SexticModel) -> Result<IgusaVec> {
    let rhs = model.rhs();
    if rhs.degree().map_or(true, |d| d > 6) {
        return Err(Error::domain("conductor", "model is not a sextic"));
    }
    let coeffs: Vec<BigRational> = (0..7).map(|i| rhs.coeff(i)).collect();
    let [i2, i4, i6, i10] = igusa_clebsch(&coeffs);
    let r = |n: i64| rat(n, 1);
    let j2 = &i2 / r(8);
    let j4 = (r(4) * &j2 * &j2 - &i4) / r(96);
    let j6 = (r(8) * j2.pow(3) - r(160) * &j2 * &j4 - &i6) / r(576);
    let j8 = (&j2 * &j6 - &j4 * &j4) / r(4);
    let j10 = &i10 / r(4096);
    if j10.is_zero() {
        return Err(Error::domain("conductor", "the sextic is not squarefree"));
    }
    Ok(IgusaVec { j2, j4, j6, j8, j10 })
}
