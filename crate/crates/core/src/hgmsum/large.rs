//! Order-15 characters of F_{l^4} without enumerating the field.
//!
//! The field is built as F_{l^2}(beta) with beta^2 = d a non-square. Writing
//! Q' = l^2, every x != 0 has a norm x^(Q'+1) in F_{Q'} and a "direction"
//! x^(Q'-1) in the torus of order Q'+1. Since 3 | Q'-1 and 5 | Q'+1 when l^4 is
//! the smallest power with 15 | l^f - 1, the pair (log of the norm mod 3, log of
//! the direction mod 5) is a character of order 15.
//!
//! Gauss sums factor through the trace-one line:
//! g_Q(chi) = g_{Q'}(chi restricted) * S1(chi), S1(chi) = sum over Tr x = 1 of chi(x),
//! when the restriction is nontrivial, and g_Q(chi) = Q' chi(beta) when it is trivial.
//! The F_{Q'} Gauss sums cancel out of every Jacobi sum, leaving exact expressions
//! in Z[zeta_15].

use num_bigint::BigInt;

use crate::arith::{Cyc, Fq};

pub(crate) struct QuadExt {
    pub sub: Fq,
    d: u64,
    /// a primitive 5th root of unity in the torus, as (a, b)
    w5: [(u64, u64); 5],
    half: u64,
}

type El = (u64, u64);

impl QuadExt {
    pub fn new(ell: u64) -> Self {
        let sub = Fq::generic(ell, 2);
        sub.tables();
        let d = sub.generator();
        let half = sub.inv(2).unwrap();
        let mut me = QuadExt { sub, d, w5: [(1, 0); 5], half };
        let e5 = (me.qp() + 1) / 5;
        // any torus element whose 5-part is nontrivial gives a primitive 5th root
        let mut b = 1u64;
        let w = loop {
            let x = (1u64, b);
            let z = me.direction(x);
            let w = me.pow(z, e5);
            if w != (1, 0) {
                break w;
            }
            b += 1;
        };
        let mut acc = (1u64, 0u64);
        for k in 0..5 {
            me.w5[k] = acc;
            acc = me.mul(acc, w);
        }
        me
    }

    fn qp(&self) -> u64 {
        self.sub.q
    }

    fn mul(&self, x: El, y: El) -> El {
        let f = &self.sub;
        let a = f.add(f.mul(x.0, y.0), f.mul(self.d, f.mul(x.1, y.1)));
        let b = f.add(f.mul(x.0, y.1), f.mul(x.1, y.0));
        (a, b)
    }

    fn pow(&self, mut x: El, mut e: u64) -> El {
        let mut r = (1u64, 0u64);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }

    fn norm(&self, x: El) -> u64 {
        let f = &self.sub;
        f.sub(f.mul(x.0, x.0), f.mul(self.d, f.mul(x.1, x.1)))
    }

    /// x^(Q'-1) = conj(x)^2 / N(x).
    fn direction(&self, x: El) -> El {
        let f = &self.sub;
        let c = (x.0, f.neg(x.1));
        let c2 = self.mul(c, c);
        let ni = f.inv(self.norm(x)).expect("nonzero element");
        (f.mul(c2.0, ni), f.mul(c2.1, ni))
    }

    /// The order-15 character as an exponent of zeta_15.
    pub fn chi(&self, x: El) -> u32 {
        let f = &self.sub;
        let l3 = (f.log(self.norm(x)).expect("nonzero element") % 3) as u32;
        let w = self.pow(self.direction(x), (self.qp() + 1) / 5);
        let l5 = self.w5.iter().position(|&r| r == w).expect("a 5th root of unity") as u32;
        // k = l3 mod 3, k = l5 mod 5
        (10 * l3 + 6 * l5) % 15
    }

    /// chi on the subfield F_{Q'} (only the norm part survives).
    pub fn chi_sub(&self, y: u64) -> u32 {
        self.chi((y, 0))
    }

    /// Exponent counts of chi over the trace-one line {1/2 + b beta}.
    fn trace_one_counts(&self) -> [i64; 15] {
        let mut cnt = [0i64; 15];
        for b in 0..self.qp() {
            cnt[self.chi((self.half, b)) as usize] += 1;
        }
        cnt
    }

    /// Joint counts of (chi(y), chi(1 - y)) over y in F_{Q'} minus {0, 1}.
    fn sub_pair_counts(&self) -> Vec<i64> {
        let f = &self.sub;
        let chi: Vec<u32> = (0..f.q).map(|y| if y == 0 { 0 } else { self.chi_sub(y) }).collect();
        let mut c = vec![0i64; 225];
        for y in 2..f.q {
            let z = f.sub(1, y);
            c[chi[y as usize] as usize * 15 + chi[z as usize] as usize] += 1;
        }
        c
    }
}

/// Everything needed for exact Jacobi sums of the order-15 character on F_{l^4}.
pub(crate) struct LargeJacobi {
    pub ext: QuadExt,
    s1: Vec<Cyc>,
    sub_pairs: Vec<i64>,
    chi_beta: u32,
    chi_minus_one: u32,
    q_sub: BigInt,
    q: BigInt,
}

impl LargeJacobi {
    pub fn new(ell: u64) -> Self {
        let ext = QuadExt::new(ell);
        let cnt = ext.trace_one_counts();
        let s1 = (0..15)
            .map(|j| {
                let mut e = vec![0i64; 15];
                for (k, &c) in cnt.iter().enumerate() {
                    e[(j * k) % 15] += c;
                }
                Cyc::from_exponent_counts(15, &e)
            })
            .collect();
        let sub_pairs = ext.sub_pair_counts();
        let chi_beta = ext.chi((0, 1));
        let minus_one = ext.sub.neg(1);
        let chi_minus_one = ext.chi_sub(minus_one);
        let q_sub = BigInt::from(ext.sub.q);
        let q = &q_sub * &q_sub;
        LargeJacobi { ext, s1, sub_pairs, chi_beta, chi_minus_one, q_sub, q }
    }

    fn zeta(k: i64) -> Cyc {
        Cyc::zeta_pow(15, k)
    }

    /// J(chi^i, chi^j) over F_{Q'} for restrictions that are all nontrivial.
    fn sub_jacobi(&self, i: i64, j: i64) -> Cyc {
        let mut e = vec![0i64; 15];
        for a in 0..15 {
            for b in 0..15 {
                let c = self.sub_pairs[a * 15 + b];
                if c != 0 {
                    e[(i * a as i64 + j * b as i64).rem_euclid(15) as usize] += c;
                }
            }
        }
        Cyc::from_exponent_counts(15, &e)
    }

    pub fn chi_minus_one(&self) -> u32 {
        self.chi_minus_one
    }

    pub fn jacobi(&self, i: i64, j: i64) -> Cyc {
        let (a, b) = (i.rem_euclid(15), j.rem_euclid(15));
        let c = (a + b) % 15;
        let one = Cyc::int(15, 1);
        if a == 0 && b == 0 {
            return Cyc::int(15, &self.q - 2);
        }
        if a == 0 || b == 0 {
            return Cyc::int(15, -1);
        }
        if c == 0 {
            return Self::zeta(a * self.chi_minus_one as i64).neg();
        }
        let s1 = |e: i64| &self.s1[e as usize];
        let cb = |e: i64| Self::zeta(e * self.chi_beta as i64);
        let div = |x: Cyc, y: &Cyc| x.exact_div(y).expect("exact division in Z[zeta_15]");
        let qs = &self.q_sub;
        match (a % 3 == 0, b % 3 == 0, c % 3 == 0) {
            (false, false, false) => div(self.sub_jacobi(a, b).mul(s1(a)).mul(s1(b)), s1(c)),
            (false, false, true) => {
                Self::zeta(a * self.chi_minus_one as i64).mul(s1(a)).mul(s1(b)).mul(&cb(-c))
            }
            (true, false, _) => div(cb(a).mul(s1(b)).scale(qs), s1(c)),
            (false, true, _) => div(cb(b).mul(s1(a)).scale(qs), s1(c)),
            (true, true, _) => one.scale(qs),
        }
    }
}
