//! Exact traces at the degenerate fibres t = 0, 1, infinity, and lifting traces
//! to extensions of the residue field.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

use super::jacobi::JacobiContext;
use super::HGMParams;
use crate::arith::{Cyc, KElt, ZPoly};
use crate::error::{Error, Result};

/// Trace of Frobenius at lambda on the CM motive H((a, b), (c, d) | 0), multiplied
/// by the norm of lambda (weight-2 normalization).
pub fn cm_trace(params: &HGMParams, ell: u64, factor_index: usize) -> Result<Cyc> {
    let (a, b, c, d) = (&params.a, &params.b, &params.c, &params.d);
    if !params.is_generic() {
        return Err(Error::domain("hgmsum", "parameters are not generic"));
    }
    if !(a + b).is_integer() {
        return Err(Error::domain("hgmsum", "a + b is not an integer"));
    }
    if !(c + d).is_integer() {
        return Err(Error::domain("hgmsum", "c + d is not an integer"));
    }
    if (c - d).is_integer() {
        return Err(Error::domain("hgmsum", "c - d is an integer"));
    }
    if params.n != 15 {
        return Err(Error::domain("hgmsum", "only N = 15 is supported"));
    }
    let ctx = JacobiContext::new(ell, factor_index)?;
    let x = params.scaled(&(d - b));
    let y = params.scaled(&(b - c));
    let z = params.scaled(&(d - c));
    let w = params.scaled(&(a - d));
    let eps = if !a.is_integer() && !c.is_integer() { -1 } else { 0 };
    let m1 = ctx.chi_minus_one() as i64;
    // chi(-1)^((d-b)(q-1)) with (d-b)(q-1) = x (q-1)/N
    let qm1_over_n: BigInt = (&ctx.q - 1u32) / 15u32;
    let e1 = (BigInt::from(m1 * x) * qm1_over_n % 15u32).try_into().unwrap_or(0i64);
    let inner = ctx.jacobi(x, y).add(&ctx.jacobi(z, w).mul_zeta(m1 * y));
    let scale = if eps == -1 { BigInt::from(1) } else { ctx.q.clone() };
    Ok(inner.mul_zeta(e1).neg().scale(&scale))
}

/// (J1, J2, e): the value at t is -(chi(t)^-e J1 + chi(t)^e J2).
fn degenerate_terms(ctx: &JacobiContext, at_zero: bool) -> (Cyc, Cyc, i64) {
    if at_zero {
        (ctx.jacobi(2, -8), ctx.jacobi(-6, 8), 3)
    } else {
        (ctx.jacobi(2, 8), ctx.jacobi(10, -8), 5)
    }
}

fn degenerate_set(ell: u64, factor_index: usize, at_zero: bool) -> Result<Vec<ZPoly>> {
    let ctx = JacobiContext::new(ell, factor_index)?;
    let (j1, j2, e) = degenerate_terms(&ctx, at_zero);
    let mut out = BTreeSet::new();
    for k in ctx.prime_field_image() {
        let k = k as i64;
        let v = j1.mul_zeta(-e * k).add(&j2.mul_zeta(e * k)).neg();
        out.insert(PolyKey(v.min_poly()?));
    }
    let bound = if at_zero { 5 } else { 3 };
    if out.len() > bound {
        return Err(Error::internal(
            "hgmsum",
            format!("{} distinct degenerate values at {}, more than {}", out.len(), ell, bound),
        ));
    }
    Ok(out.into_iter().map(|k| k.0).collect())
}

#[derive(PartialEq, Eq)]
struct PolyKey(ZPoly);

impl PartialOrd for PolyKey {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for PolyKey {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let key = |p: &ZPoly| (p.degree(), p.coeffs().iter().rev().cloned().collect::<Vec<BigInt>>());
        key(&self.0).cmp(&key(&o.0))
    }
}

/// Minimal polynomials of the weight-2 traces at primes where t reduces to 0,
/// scanning every residue t0 in F_ell^x. At most five values occur.
pub fn degenerate0(ell: u64, factor_index: usize) -> Result<Vec<ZPoly>> {
    degenerate_set(ell, factor_index, true)
}

/// The same where t reduces to infinity. At most three values occur.
pub fn degenerate_inf(ell: u64, factor_index: usize) -> Result<Vec<ZPoly>> {
    degenerate_set(ell, factor_index, false)
}

/// Trace of Frobenius^d from the trace a of Frobenius with determinant q:
/// the power sum alpha^d + beta^d with alpha beta = q.
pub fn lift_trace(a: &KElt, q: u64, d: u32) -> Result<KElt> {
    let q = KElt::int(q);
    let two = KElt::int(2);
    let sq = |x: &KElt, q: &KElt| x * x - &two * q;
    match d {
        1 => Ok(a.clone()),
        2 => Ok(sq(a, &q)),
        4 => Ok(sq(&sq(a, &q), &(&q * &q))),
        _ => Err(Error::domain("hgmsum", format!("relative degree {} not in {{1, 2, 4}}", d))),
    }
}

/// Integer version of [`lift_trace`] for rational traces.
pub fn lift_trace_int(a: &BigInt, q: &BigInt, d: u32) -> Option<BigInt> {
    let sq = |x: &BigInt, q: &BigInt| x * x - BigInt::from(2) * q;
    match d {
        1 => Some(a.clone()),
        2 => Some(sq(a, q)),
        4 => Some(sq(&sq(a, q), &(q * q))),
        _ => None,
    }
    .filter(|_| !q.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::parse_zpoly;

    fn polys(v: &[&str]) -> Vec<ZPoly> {
        v.iter().map(|s| parse_zpoly(s).unwrap()).collect()
    }

    #[test]
    fn degenerate_at_eleven() {
        let got = degenerate0(11, 0).unwrap();
        let mut want = polys(&[
            "x^2 - 4*x - 316",
            "x^2 + x - 101",
            "x^2 - 19*x - 61",
            "x^2 - 19*x + 59",
            "x^2 + 41*x + 419",
        ]);
        let mut g = got.clone();
        let key = |p: &ZPoly| p.to_string();
        g.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(g, want);
        assert_eq!(degenerate_inf(11, 0).unwrap(), polys(&["x + 22"]));
    }

    #[test]
    fn lifts() {
        let a = KElt::new(4, 4).unwrap();
        let l = lift_trace(&a, 11, 2).unwrap();
        assert_eq!(l, KElt::new(4, 16).unwrap());
        assert_eq!(l.min_poly(), parse_zpoly("x^2 - 4*x - 316").unwrap());
        assert_eq!(lift_trace(&KElt::zero(), 13, 2).unwrap(), KElt::int(-26));
        assert!(lift_trace(&a, 11, 3).is_err());
    }

    #[test]
    fn cm_trace_indices() {
        let p = HGMParams::fermat53();
        let v = cm_trace(&p, 11, 0).unwrap();
        let ctx = JacobiContext::new(11, 0).unwrap();
        let direct = ctx.jacobi(2, -8).add(&ctx.jacobi(-6, 8)).neg();
        assert_eq!(v, direct);
        for k in Cyc::galois_group(15) {
            assert!(v.embed(k).norm() <= 2.0 * 121.0);
        }
        let d0 = degenerate0(11, 0).unwrap();
        assert!(d0.contains(&v.min_poly().unwrap()));
    }
}
