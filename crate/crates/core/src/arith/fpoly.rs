//! Polynomials over a prime field F_p (p < 2^32), enough to split cyclotomic
//! polynomials and test irreducibility.

/// Coefficients low degree first, reduced mod p, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn inv(a: u64, p: u64) -> u64 {
    super::nt::pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<i64>) -> Self {
        let mut r = FpPoly { p, c: c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect() };
        r.trim();
        r
    }

    fn from_u(p: u64, c: Vec<u64>) -> Self {
        let mut r = FpPoly { p, c };
        r.trim();
        r
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn x(p: u64) -> Self {
        Self::from_u(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let li = inv(l, self.p);
                Self::from_u(self.p, self.c.iter().map(|&a| mulm(a, li, self.p)).collect())
            }
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::from_u(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::from_u(self.p, vec![]);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        Self::from_u(p, r)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let li = inv(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::from_u(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let f = mulm(r[i], li, p);
            if f == 0 {
                continue;
            }
            q[i - dd] = f;
            for j in 0..=dd {
                r[i - dd + j] = (r[i - dd + j] + p - mulm(f, d.c[j], p)) % p;
            }
        }
        r.truncate(dd);
        (Self::from_u(p, q), Self::from_u(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::from_u(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let k = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(k) => k,
        };
        let p = self.p as u128;
        let x = Self::x(self.p);
        let frob = |times: usize| {
            let mut y = x.clone();
            for _ in 0..times {
                y = y.powmod(p, self);
            }
            y
        };
        if frob(k).sub(&x).rem(self).degree().is_some() {
            return false;
        }
        for d in super::nt::prime_factors_u64(k as u64) {
            let g = frob(k / d as usize).sub(&x).gcd(self);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Split a squarefree polynomial all of whose irreducible factors have degree f.
    /// Deterministic: trial polynomials are enumerated in a fixed order.
    pub fn equal_degree_factors(&self, f: usize) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return vec![];
        }
        if n == f {
            return vec![self.monic()];
        }
        let p = self.p;
        let mut counter: u64 = 1;
        loop {
            let a = self.trial(counter, n);
            counter += 1;
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(f-1))
                let mut acc = a.rem(self);
                let mut y = acc.clone();
                for _ in 1..f {
                    y = y.mul(&y).rem(self);
                    acc = Self::from_u(p, add_vec(&acc.c, &y.c, p));
                }
                acc
            } else {
                let e = ((p as u128).pow(f as u32) - 1) / 2;
                a.powmod(e, self).sub(&Self::from_u(p, vec![1]))
            };
            let g = b.gcd(self);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.divrem(&g).0;
                let mut out = g.equal_degree_factors(f);
                out.extend(h.equal_degree_factors(f));
                return out;
            }
        }
    }

    fn trial(&self, mut k: u64, n: usize) -> FpPoly {
        // base-p digits of k as coefficients, at most n of them
        let mut c = Vec::new();
        while k > 0 && c.len() < n {
            c.push(k % self.p);
            k /= self.p;
        }
        Self::from_u(self.p, c)
    }
}

fn add_vec(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect()
}

/// The irreducible factors of Phi_N mod p, each of degree ord(p mod N), monic,
/// ordered by their coefficient lists read from the top degree down.
pub fn cyclotomic_factors(p: u64, n: u32) -> Vec<FpPoly> {
    let phi = super::cyclo::cyclotomic_poly(n);
    let f = if n == 1 { 1 } else { super::nt::mult_order(p % n as u64, n as u64) as usize };
    let poly = FpPoly::new(p, phi.to_vec());
    let mut facs: Vec<FpPoly> = poly.equal_degree_factors(f).into_iter().map(|g| g.monic()).collect();
    facs.sort_by(|a, b| a.c.iter().rev().cmp(b.c.iter().rev()));
    facs
}

/// The first monic irreducible of degree k with nonzero constant term, scanning
/// tails (c_0, ..., c_{k-1}) lexicographically with c_{k-1} varying fastest.
pub fn smallest_irreducible(p: u64, k: usize) -> FpPoly {
    let total = (p as u128).pow(k as u32);
    for idx in 0..total {
        let mut tail = vec![0u64; k];
        let mut m = idx;
        for i in (0..k).rev() {
            tail[i] = (m % p as u128) as u64;
            m /= p as u128;
        }
        if tail[0] == 0 {
            continue;
        }
        tail.push(1);
        let f = FpPoly::from_u(p, tail);
        if f.is_irreducible() {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
