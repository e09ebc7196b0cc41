//! Exact arithmetic in the cyclotomic ring Z[zeta_N], reduced modulo Phi_N.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::kelt::KElt;
use super::poly::{QPoly, ZPoly};
use crate::error::{Error, Result};

/// Coefficients of Phi_n, low degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = exact_divide_monic(&num, &den);
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let f = r[i];
        q[i - dd] = f;
        for j in 0..=dd {
            r[i - dd + j] -= f * den[j];
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    super::nt::totient(n as u64) as u32
}

/// Elements of Z[zeta_15], the case used throughout.
pub type Cyc15 = Cyc;

/// An element of Z[zeta_N] in the power basis 1, zeta, ..., zeta^(phi(N)-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyc {
    n: u32,
    c: Vec<BigInt>,
}

impl Cyc {
    pub fn zero(n: u32) -> Self {
        Cyc { n, c: vec![BigInt::zero(); euler_phi(n) as usize] }
    }

    pub fn int(n: u32, a: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = a.into();
        z
    }

    /// zeta^k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let mut counts = vec![0i64; n as usize];
        counts[k.rem_euclid(n as i64) as usize] = 1;
        Self::from_exponent_counts(n, &counts)
    }

    /// Sum of counts[k] * zeta^k over k in Z/N, reduced.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), n as usize);
        Self::reduce(n, counts.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn reduce(n: u32, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        for i in (d..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let f = std::mem::take(&mut v[i]);
            for j in 0..d {
                if phi[j] != 0 {
                    v[i - d + j] -= &f * phi[j];
                }
            }
        }
        v.resize(d, BigInt::zero());
        Cyc { n, c: v }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The rational integer value, when the element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| self.c[0].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Cyc { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Cyc { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        Cyc { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Cyc { n: self.n, c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::reduce(self.n, r)
    }

    /// Norm down to Q: the product of all Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let mut acc = Cyc::int(self.n, 1);
        for k in Self::galois_group(self.n.max(2)) {
            acc = acc.mul(&self.galois(k));
        }
        acc.as_integer().expect("a norm is rational")
    }

    /// Exact quotient in Z[zeta_N], if it exists.
    pub fn exact_div(&self, d: &Cyc) -> Option<Cyc> {
        let mut cof = Cyc::int(self.n, 1);
        for k in Self::galois_group(self.n.max(2)).into_iter().skip(1) {
            cof = cof.mul(&d.galois(k));
        }
        let nrm = d.mul(&cof).as_integer()?;
        if nrm.is_zero() {
            return None;
        }
        let num = self.mul(&cof);
        let mut c = Vec::with_capacity(num.c.len());
        for x in &num.c {
            let (q, r) = x.div_rem(&nrm);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(Cyc { n: self.n, c })
    }

    /// Multiply by zeta^k.
    pub fn mul_zeta(&self, k: i64) -> Self {
        self.mul(&Self::zeta_pow(self.n, k))
    }

    /// The automorphism zeta -> zeta^k, gcd(k, N) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "Galois action needs a unit");
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, a) in self.c.iter().enumerate() {
            v[(i as i64 * k).rem_euclid(n) as usize] += a;
        }
        Self::reduce(self.n, v)
    }

    /// Complex conjugation zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Complex value under zeta -> exp(2 pi i k / N).
    pub fn embed(&self, k: i64) -> Complex64 {
        let n = self.n as f64;
        self.c
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let ang = 2.0 * PI * (k as f64) * (i as f64) / n;
                Complex64::from_polar(a.to_f64().unwrap(), ang)
            })
            .sum()
    }

    /// Units of Z/N, ascending.
    pub fn galois_group(n: u32) -> Vec<i64> {
        (1..n as i64).filter(|k| k.gcd(&(n as i64)) == 1).collect()
    }

    /// Monic minimal polynomial over Q: the squarefree part of the full
    /// Galois orbit product, with every coefficient checked to be a rational integer.
    pub fn min_poly(&self) -> Result<ZPoly> {
        let n = self.n;
        let mut prod: Vec<Cyc> = vec![Cyc::int(n, 1)];
        for k in Self::galois_group(n.max(2)) {
            let s = if n == 1 { self.clone() } else { self.galois(k) };
            // prod *= (x - s)
            let mut next = vec![Cyc::zero(n); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(&s));
            }
            prod = next;
        }
        let mut coeffs = Vec::with_capacity(prod.len());
        for c in &prod {
            match c.as_integer() {
                Some(z) => coeffs.push(z),
                None => {
                    return Err(Error::internal(
                        "arith",
                        format!("orbit product has a non-rational coefficient for {}", self),
                    ))
                }
            }
        }
        let full = ZPoly::new(coeffs);
        let sf: QPoly = full.to_q().squarefree_part();
        sf.to_z().ok_or_else(|| Error::internal("arith", "minimal polynomial is not integral"))
    }

    /// The element as a member of Z[(1+sqrt5)/2] when it lies in Q(sqrt5) (N divisible by 5).
    /// Returns one of the two conjugates; which one is fixed by the embedding zeta -> e^(2 pi i/N).
    pub fn to_kelt(&self) -> Result<Option<KElt>> {
        let mp = self.min_poly()?;
        match mp.degree() {
            Some(1) => Ok(Some(KElt::int(-mp.coeff(0)))),
            Some(2) => {
                let u = -mp.coeff(1);
                let n = mp.coeff(0);
                let disc: BigInt = &u * &u - BigInt::from(4) * &n;
                let (q, r) = disc.div_rem(&BigInt::from(5));
                if !r.is_zero() || q < BigInt::zero() {
                    return Ok(None);
                }
                let v = q.sqrt();
                if &v * &v != q {
                    return Ok(None);
                }
                let x = self.embed(1).re;
                let cand = KElt::new(u.clone(), v.clone()).expect("parity of a trace");
                if (cand.embed(1) - x).abs() <= (cand.embed(-1) - x).abs() {
                    Ok(Some(cand))
                } else {
                    Ok(Some(KElt::new(u, -v).unwrap()))
                }
            }
            _ => Ok(None),
        }
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = QPoly::new(self.c.iter().map(|a| BigRational::from_integer(a.clone())).collect());
        let s = q.to_string().replace('x', "z");
        write!(f, "{} (z = zeta_{})", s, self.n)
    }
}
