//! The finite hypergeometric trace, evaluated over the residue field of K.
//!
//! For a prime of K of norm q, the parameters split into Frobenius orbits under
//! multiplication by q. An orbit of size k with representative e contributes
//! the Gauss sum over F_{q^k} of T^(e(q^k-1)) twisted by omega o Norm, which is
//! the regrouping that makes the sum over the characters omega of F_q^x well defined
//! when the parameters are not individually fixed by Frobenius.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::gauss::{teichmuller_u, GaussTable};
use super::{frac_part, HGMParams};
use crate::arith::{Fq, KElt, PrimeSlotK, ZPoly};
use crate::error::{Error, Result};

/// Largest residue field accepted for floating-point Gauss sums.
pub const GAUSS_BUDGET: u64 = 1_000_000;
/// Distance to the half-integer lattice accepted when recognizing a trace.
pub const RECOGNITION_TOL: f64 = 1e-4;

/// A recognized, weight-2 normalized Frobenius trace at a prime of K.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceValue {
    pub ell: u64,
    /// norm of the prime of K
    pub norm: u64,
    pub factor_index: usize,
    pub value: KElt,
    /// the unrounded complex values for the two conjugates
    pub raw: [Complex64; 2],
}

impl TraceValue {
    /// The value and its conjugate, sorted.
    pub fn pair(&self) -> [KElt; 2] {
        let mut v = [self.value.clone(), self.value.conj()];
        v.sort();
        v
    }

    pub fn min_poly(&self) -> ZPoly {
        self.value.min_poly()
    }
}

/// Residue degree of the primes of K, the field the traces live in.
fn k_degree(ell: u64, n: u32, stab: &[u64]) -> u32 {
    let mut f = 1u32;
    let mut x = ell % n as u64;
    while !stab.contains(&x) {
        x = x * ell % n as u64;
        f += 1;
    }
    f
}

/// Units k mod N fixing both parameter multisets.
fn stabilizer(p: &HGMParams) -> Vec<u64> {
    let n = p.n as u64;
    let set = |xs: [&BigRational; 2], k: u64| {
        let kk = BigRational::from_integer((k as i64).into());
        let mut v: Vec<BigRational> = xs.iter().map(|x| frac_part(&(*x * &kk))).collect();
        v.sort();
        v
    };
    (1..n.max(2))
        .filter(|&k| num_integer::gcd(k, n) == 1 || n == 1)
        .filter(|&k| {
            set([&p.a, &p.b], k) == set([&p.a, &p.b], 1) && set([&p.c, &p.d], k) == set([&p.c, &p.d], 1)
        })
        .collect()
}

/// Orbits of x -> q x on a list of fractions mod 1: (representative, size).
fn orbits(list: &[BigRational], q: u64) -> Vec<(BigRational, u32)> {
    let qq = BigRational::from_integer((q as i64).into());
    let mut rem: Vec<BigRational> = list.iter().map(frac_part).collect();
    let mut out = Vec::new();
    while !rem.is_empty() {
        let e = rem.remove(0);
        let mut size = 1;
        let mut y = frac_part(&(&e * &qq));
        while y != e {
            let pos = rem.iter().position(|r| *r == y).expect("parameter list closed under Frobenius");
            rem.remove(pos);
            size += 1;
            y = frac_part(&(&y * &qq));
        }
        out.push((e, size));
    }
    out
}

/// H at t, multiplied by the norm q, using the character chi^conj.
fn hyp_sum(
    field: &Fq,
    params: &HGMParams,
    fk: u32,
    t: u64,
    conj: u32,
    tables: &mut BTreeMap<usize, GaussTable>,
) -> Complex64 {
    let z = field.zeta.as_ref().unwrap();
    let n = z.n;
    let s = (z.s as u64 * conj as u64 % n as u64) as u32;
    let u = teichmuller_u(field, s, n);
    let ell = field.p;
    let q = ell.pow(fk);
    let big_q = field.q;
    let neg = |x: &BigRational| -x.clone();
    let tops = orbits(&[neg(&params.a), neg(&params.b)], q);
    let bots = orbits(&[params.c.clone(), params.d.clone()], q);
    for &(_, k) in tops.iter().chain(&bots) {
        let j = (fk * k) as usize;
        tables.entry(j).or_insert_with(|| GaussTable::new(field, j));
    }
    let lt = field.log(t).expect("t is nonzero");
    let step = (big_q - 1) / (q - 1);
    debug_assert_eq!(lt % step, 0);
    let e0 = lt / step;
    let w0 = |e: &BigRational, nk: u64| -> i64 {
        (e * BigRational::from_integer(((nk - 1) as i64).into())).to_integer().to_i64().unwrap()
    };
    let mut total = Complex64::zero();
    for m in 0..(q - 1) as i64 {
        let mut term = Complex64::new(1.0, 0.0);
        for (list, sign) in [(&tops, 1i64), (&bots, -1i64)] {
            for (e, k) in list.iter() {
                let nk = q.pow(*k);
                let tab = &tables[&((fk * k) as usize)];
                let base = w0(e, nk);
                let shift = m * ((nk - 1) / (q - 1)) as i64;
                term *= tab.get(u, base + sign * shift) / tab.get(u, base);
            }
        }
        let ang = 2.0 * PI * ((u as u128 * m as u128 * e0 as u128) % (q as u128 - 1)) as f64 / (q - 1) as f64;
        term *= Complex64::from_polar(1.0, ang);
        total += term;
    }
    total / (1.0 - q as f64) * q as f64
}

/// Frobenius trace of the hypergeometric motive at the prime of K below the
/// prime lambda of Q(zeta_N) selected by `factor_index`, at t = t0 in F_ell,
/// weight-2 normalized and recognized in Z[(1+sqrt5)/2].
pub fn hyp_trace(params: &HGMParams, ell: u64, factor_index: usize, t0: i64) -> Result<TraceValue> {
    let n = params.n;
    if !crate::arith::nt::is_prime(ell) {
        return Err(Error::domain("hgmsum", format!("{} is not prime", ell)));
    }
    if n as u64 % ell == 0 || ell == 2 {
        return Err(Error::domain("hgmsum", format!("ell = {} divides 2N", ell)));
    }
    let t = t0.rem_euclid(ell as i64) as u64;
    if t == 0 || t == 1 {
        return Err(Error::domain(
            "hgmsum",
            format!("t0 = {} mod {} is degenerate; use the degenerate formulas", t, ell),
        ));
    }
    if !params.is_generic() {
        return Err(Error::domain("hgmsum", "parameters are not generic"));
    }
    let f = Fq::ord_mod(ell, n);
    let size = ell.checked_pow(f as u32).unwrap_or(u64::MAX);
    if size > GAUSS_BUDGET {
        return Err(Error::domain(
            "hgmsum",
            format!("residue field of {} elements exceeds the Gauss-sum budget {}", size, GAUSS_BUDGET),
        ));
    }
    let stab = stabilizer(params);
    let index = num_integer::Integer::div_floor(&(crate::arith::nt::totient(n as u64) as usize), &stab.len());
    let in_k = stab.iter().all(|&k| n % 5 == 0 && matches!(k % 5, 1 | 4));
    if index > 2 || (index == 2 && !in_k) {
        return Err(Error::domain("hgmsum", "trace field is not contained in Q(sqrt5)"));
    }
    let fk = k_degree(ell, n, &stab);
    let field = Fq::build(ell, n, factor_index)?;
    let mut tables = BTreeMap::new();
    let x1 = hyp_sum(&field, params, fk, t, 1, &mut tables);
    // an automorphism outside the stabilizer moves sqrt5 to -sqrt5
    let x2 = match (1..n as u64).find(|k| num_integer::gcd(*k, n as u64) == 1 && !stab.contains(k)) {
        Some(k) => hyp_sum(&field, params, fk, t, k as u32, &mut tables),
        None => x1,
    };
    let norm = ell.pow(fk);
    let value = recognize(x1, x2, norm).map_err(|msg| {
        Error::oracle("hgmsum", format!("ell = {}, t0 = {}: {} (raw {} and {})", ell, t, msg, x1, x2))
    })?;
    Ok(TraceValue { ell, norm, factor_index, value, raw: [x1, x2] })
}

/// Round x1 = (U + V sqrt5)/2 from x1 + x2 = U and x1 - x2 = V sqrt5.
pub fn recognize(x1: Complex64, x2: Complex64, norm: u64) -> std::result::Result<KElt, String> {
    let uf = x1 + x2;
    let vf = (x1 - x2) / 5f64.sqrt();
    if uf.im.abs() > RECOGNITION_TOL || vf.im.abs() > RECOGNITION_TOL {
        return Err("value is not real".into());
    }
    let (ur, vr) = (uf.re.round(), vf.re.round());
    if (uf.re - ur).abs() > RECOGNITION_TOL || (vf.re - vr).abs() > RECOGNITION_TOL {
        return Err("no lattice point within tolerance".into());
    }
    let k = KElt::new(ur as i64, vr as i64).ok_or("parity condition fails")?;
    if !k.weil_ok(&norm.into()) {
        return Err(format!("{} violates the Weil bound", k));
    }
    Ok(k)
}

/// Convenience for the elimination slots: the trace at a prime of K.
pub fn hyp_trace_at(slot: &PrimeSlotK, t0: i64) -> Result<TraceValue> {
    hyp_trace(&HGMParams::fermat53_swapped(), slot.ell, 0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::parse_zpoly;

    #[test]
    fn table_at_eleven() {
        let expect = [
            (2, "x + 5"),
            (3, "x^2 - 5"),
            (4, "x^2 - x - 1"),
            (5, "x - 2"),
            (6, "x^2 + 4*x - 1"),
            (7, "x^2 + 5*x - 5"),
            (8, "x^2 + 2*x - 19"),
            (9, "x^2 + 3*x + 1"),
            (10, "x^2 + x - 11"),
        ];
        let p = HGMParams::fermat53_swapped();
        for (t, mp) in expect {
            let v = hyp_trace(&p, 11, 0, t).unwrap();
            assert_eq!(v.min_poly(), parse_zpoly(mp).unwrap(), "t = {}", t);
        }
    }

    #[test]
    fn degenerate_residues_refused() {
        let p = HGMParams::fermat53_swapped();
        assert!(hyp_trace(&p, 11, 0, 0).is_err());
        assert!(hyp_trace(&p, 11, 0, 12).is_err());
    }

    #[test]
    fn orbit_structure() {
        let p = HGMParams::fermat53_swapped();
        assert_eq!(k_degree(11, 15, &stabilizer(&p)), 1);
        assert_eq!(k_degree(7, 15, &stabilizer(&p)), 2);
        let o = orbits(&[p.c.clone(), p.d.clone()], 11);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].1, 2);
    }
}
