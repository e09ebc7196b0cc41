//! Gauss sums in double precision, all characters of a subfield at once by FFT.

use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::arith::Fq;

/// Gauss sums over the subfield F_{p^j} of a field, for every character of it.
///
/// `raw[w]` is the sum over e of psi(g_j^e) * exp(2 pi i w e / (n - 1)) with
/// g_j = g^((q-1)/(n-1)) and psi(x) = exp(2 pi i Tr(x) / p).
#[derive(Clone, Debug)]
pub struct GaussTable {
    pub n: u64,
    raw: Vec<Complex64>,
}

impl GaussTable {
    pub fn new(field: &Fq, j: usize) -> Self {
        assert!(field.k % j == 0, "subfield degree must divide the field degree");
        let p = field.p;
        let n = p.pow(j as u32);
        let m = (n - 1) as usize;
        let rel = (field.k / j) as u64;
        // Tr_{Q/p} = (k/j) * Tr_{n/p} on the subfield
        let rel_inv = crate::arith::nt::pow_mod(rel % p, p - 2, p);
        let gj = field.subfield_generator(j);
        let mut a = Vec::with_capacity(m);
        let mut y = 1u64;
        for _ in 0..m {
            let tr = field.trace(y) * rel_inv % p;
            a.push(Complex64::from_polar(1.0, 2.0 * PI * tr as f64 / p as f64));
            y = field.mul(y, gj);
        }
        if m > 1 {
            let fft = FftPlanner::new().plan_fft_inverse(m);
            fft.process(&mut a);
        }
        GaussTable { n, raw: a }
    }

    /// Gauss sum of the character g_j -> exp(2 pi i u w / (n - 1)).
    pub fn get(&self, u: u64, w: i64) -> Complex64 {
        let m = (self.n - 1) as i128;
        let idx = (u as i128 * w as i128).rem_euclid(m);
        self.raw[idx as usize]
    }
}

/// The smallest u = s (mod N) with gcd(u, q - 1) = 1, where chi(g) = zeta^s.
/// The complex character T(g) = exp(2 pi i u / (q - 1)) generates the character
/// group and T^((q-1)/N) is the Weil character.
pub fn teichmuller_u(field: &Fq, s: u32, n: u32) -> u64 {
    let q1 = field.q - 1;
    let mut u = s as u64 % n as u64;
    if u == 0 {
        u = n as u64;
    }
    while u.gcd(&q1) != 1 {
        u += n as u64;
    }
    u
}

/// Gauss sum of the character g -> exp(2 pi i w / (q - 1)) over the whole field.
pub fn gauss_sum(field: &Fq, w: i64) -> Complex64 {
    GaussTable::new(field, field.k).get(1, w)
}
