//! Finite fields F_{p^k} with elements encoded as integers in base p
//! (digit i is the coefficient of x^i), plus discrete-log machinery.

use std::sync::OnceLock;

use super::fpoly::{cyclotomic_factors, smallest_irreducible, FpPoly};
use super::nt::{mult_order, prime_factors_u64};
use crate::error::{Error, Result};

/// Fields at most this large get their log tables at construction time.
pub const EAGER_TABLE_LIMIT: u64 = 1 << 24;
/// Hard cap for building tables at all.
pub const TABLE_LIMIT: u64 = 1 << 28;

pub const ZERO_LOG: u32 = u32::MAX;

#[derive(Debug)]
pub struct Tables {
    /// exp[e] = g^e, e in 0..q-1
    pub exp: Vec<u32>,
    /// log[x] = e with g^e = x; ZERO_LOG for x = 0
    pub log: Vec<u32>,
}

/// The embedded primitive N-th root of unity and the Weil character it fixes.
#[derive(Clone, Debug)]
pub struct ZetaData {
    pub n: u32,
    /// encoded element zeta-bar (the class of x, or the root for k = 1)
    pub zeta: u64,
    /// discrete log of zeta-bar with respect to the generator
    pub zeta_index: u64,
    /// chi(g) = zeta^s
    pub s: u32,
    /// which factor of Phi_N mod p was used
    pub factor_index: usize,
}

#[derive(Debug)]
pub struct Fq {
    pub p: u64,
    pub k: usize,
    pub q: u64,
    /// monic modulus, low degree first, length k + 1
    pub modulus: Vec<u64>,
    gen: u64,
    tables: OnceLock<Tables>,
    zech: OnceLock<Vec<u32>>,
    basis_trace: Vec<u64>,
    pub zeta: Option<ZetaData>,
}

impl Fq {
    /// The residue field of the prime above p picked by the `factor_index`-th
    /// irreducible factor of Phi_N mod p.
    pub fn build(p: u64, n: u32, factor_index: usize) -> Result<Fq> {
        if !super::nt::is_prime(p) {
            return Err(Error::domain("arith", format!("{} is not prime", p)));
        }
        if n as u64 % p == 0 {
            return Err(Error::domain("arith", format!("{} divides N = {}", p, n)));
        }
        let facs = cyclotomic_factors(p, n);
        let m = facs.get(factor_index).ok_or_else(|| {
            Error::domain(
                "arith",
                format!("factor index {} out of range ({} factors)", factor_index, facs.len()),
            )
        })?;
        let mut f = Fq::with_modulus(p, m);
        let zeta = if f.k == 1 { (p - m.c[0]) % p } else { p };
        let q1 = f.q - 1;
        let zl = f.log(zeta).expect("zeta is nonzero");
        let step = q1 / n as u64;
        debug_assert_eq!(zl % step, 0);
        let mm = (zl / step) % n as u64;
        let s = super::nt::inv_mod(mm as i64, n as i64).expect("zeta has exact order N") as u32;
        f.zeta = Some(ZetaData { n, zeta, zeta_index: zl, s, factor_index });
        Ok(f)
    }

    /// A field of order p^k with no character data (used for point counting).
    pub fn generic(p: u64, k: usize) -> Fq {
        let m = if k == 1 { FpPoly::new(p, vec![0, 1]) } else { smallest_irreducible(p, k) };
        Fq::with_modulus(p, &m)
    }

    fn with_modulus(p: u64, m: &FpPoly) -> Fq {
        let k = m.degree().unwrap();
        let q = p.pow(k as u32);
        let mut f = Fq {
            p,
            k,
            q,
            modulus: m.c.clone(),
            gen: 0,
            tables: OnceLock::new(),
            zech: OnceLock::new(),
            basis_trace: Vec::new(),
            zeta: None,
        };
        f.gen = f.find_generator();
        f.basis_trace = (0..k).map(|i| f.trace_slow(p.pow(i as u32))).collect();
        if q <= EAGER_TABLE_LIMIT {
            f.tables();
        }
        f
    }

    pub fn ord_mod(p: u64, n: u32) -> u64 {
        if n == 1 {
            1
        } else {
            mult_order(p % n as u64, n as u64)
        }
    }

    pub fn generator(&self) -> u64 {
        self.gen
    }

    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    pub fn undigits(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    /// Embed an integer of the prime field.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut r, mut pw) = (0, 1);
        for _ in 0..self.k {
            r += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        r
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Multiplication by schoolbook product and reduction; table-free.
    pub fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.k == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let (va, vb) = (self.digits(a), self.digits(b));
        let mut r = vec![0u64; 2 * self.k];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        for d in (self.k..2 * self.k).rev() {
            let c = r[d];
            if c == 0 {
                continue;
            }
            for i in 0..=self.k {
                r[d - self.k + i] = (r[d - self.k + i] + p - c * self.modulus[i] % p) % p;
            }
        }
        self.undigits(&r[..self.k])
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match self.tables.get() {
            Some(t) => {
                let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % (self.q - 1);
                t.exp[e as usize] as u64
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let Some(t) = self.tables.get() {
            let l = t.log[a as usize] as u128 * e as u128 % (self.q - 1) as u128;
            return t.exp[l as usize] as u64;
        }
        let (mut b, mut r) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.q - 2))
    }

    fn find_generator(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        let q1 = self.q - 1;
        let primes = prime_factors_u64(q1);
        (2..self.q)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, q1 / r) != 1))
            .unwrap_or(1)
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let (mut b, mut r) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    /// Log/exp tables, built on first use (eagerly for small fields).
    pub fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            assert!(self.q <= TABLE_LIMIT, "field of {} elements is too large for tables", self.q);
            let n = (self.q - 1) as usize;
            let mut exp = vec![0u32; n];
            let mut log = vec![ZERO_LOG; self.q as usize];
            let mut y = 1u64;
            for (e, slot) in exp.iter_mut().enumerate() {
                *slot = y as u32;
                log[y as usize] = e as u32;
                y = self.mul_slow(y, self.gen);
            }
            Tables { exp, log }
        })
    }

    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let l = self.tables().log[a as usize];
        Some(l as u64)
    }

    pub fn exp(&self, e: u64) -> u64 {
        self.tables().exp[(e % (self.q - 1)) as usize] as u64
    }

    /// Zech logarithms: zech[e] = log(1 + g^e), ZERO_LOG when 1 + g^e = 0.
    pub fn zech(&self) -> &[u32] {
        self.zech.get_or_init(|| {
            let t = self.tables();
            t.exp
                .iter()
                .map(|&x| {
                    let y = self.add(x as u64, 1);
                    t.log[y as usize]
                })
                .collect()
        })
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, a: u64) -> u64 {
        if self.k == 1 {
            return a % self.p;
        }
        let d = self.digits(a);
        d.iter().zip(&self.basis_trace).fold(0, |acc, (x, t)| (acc + x * t) % self.p)
    }

    fn trace_slow(&self, a: u64) -> u64 {
        let mut t = 0u64;
        let mut y = a;
        for _ in 0..self.k {
            t = self.add(t, y);
            y = self.pow_slow(y, self.p);
        }
        debug_assert!(t < self.p);
        t
    }

    /// Quadratic character: 1, -1, or 0 at zero.
    pub fn quad_char(&self, a: u64) -> i32 {
        match self.log(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            _ => -1,
        }
    }

    /// chi_lambda(a) as an exponent k in Z/N with a^((q-1)/N) = zeta^k; `None` at zero.
    pub fn chi(&self, a: u64) -> Option<u32> {
        let z = self.zeta.as_ref().expect("field built without a root of unity");
        let l = self.log(a)?;
        Some(((l % z.n as u64) * z.s as u64 % z.n as u64) as u32)
    }

    /// Generator of the subfield of order p^j (j | k).
    pub fn subfield_generator(&self, j: usize) -> u64 {
        let n = self.p.pow(j as u32);
        self.pow(self.gen, (self.q - 1) / (n - 1))
    }
}
