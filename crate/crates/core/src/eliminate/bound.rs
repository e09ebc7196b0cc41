//! Primes above which the residual representation is irreducible.
//!
//! For each admissible local factor x^2 - a x + q^f of the Jacobian over a field
//! of good reduction, a reducible residual representation forces p to divide
//! Res(X^c - 1, x^2 - a x + q^f); C(ell) is the largest prime dividing a nonzero
//! K-norm of one of these resultants.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::arith::nt::prime_support;
use crate::arith::KElt;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityBound {
    pub ell: u64,
    pub c: u64,
    /// factorization of the product of the nonzero K-norms
    pub factorization: BTreeMap<u64, u32>,
    /// (f, largest prime from that residue degree)
    pub per_f: Vec<(u32, u64)>,
    /// number of local factors with a nonzero resultant
    pub factors: usize,
    /// the product itself, when small enough to print
    pub product: Option<u64>,
}

/// K-norm of Res(X^c - 1, x^2 - a x + q) for a in the ring of integers of K.
pub fn resultant_norm(a: &KElt, q: &BigInt, c: u32) -> BigInt {
    // Res = prod over roots r of (r^c - 1) = q^c - p_c + 1, p_c the c-th power sum
    let two = KElt::int(2);
    let qk = KElt::int(q.clone());
    let mut p_prev = two.clone(); // p_0
    let mut p = a.clone(); // p_1
    for _ in 1..c {
        let next = &(a * &p) - &(&qk * &p_prev);
        p_prev = p;
        p = next;
    }
    let r = &(&KElt::int(q.pow(c)) - &p) + &KElt::one();
    r.norm()
}

/// Elements (alpha + beta sqrt5)/2 with |alpha| <= 4 sqrt(n) and
/// |(alpha^2 + 5 beta^2)/2 - 4 n| <= 4 n.
pub fn weil_candidates(n: u64) -> Vec<KElt> {
    let n = n as i64;
    let amax = (16 * n).sqrt();
    // (alpha^2 + 5 beta^2)/2 <= 8n bounds beta
    let bmax = (16 * n / 5).sqrt() + 1;
    let mut out = Vec::new();
    for alpha in -amax..=amax {
        for beta in -bmax..=bmax {
            if (alpha - beta) % 2 != 0 {
                continue;
            }
            let s = alpha * alpha + 5 * beta * beta;
            if (s - 8 * n).abs() <= 8 * n {
                out.push(KElt::new(alpha, beta).expect("parity checked"));
            }
        }
    }
    out
}

fn add_factors(map: &mut BTreeMap<u64, u32>, n: &BigInt) -> Result<()> {
    for p in prime_support(n) {
        let p64 = p.to_u64().ok_or_else(|| Error::internal("eliminate", "prime above 2^64"))?;
        let mut m = n.abs();
        let pb = BigInt::from(p64);
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        *map.entry(p64).or_insert(0) += e;
    }
    Ok(())
}

/// C(ell) for ell in {2, 3, 5}.
///
/// For ell = 2 the local factors are a in {-1, -8} over F_4 with c = f = 1. For
/// ell = 3 and 5 the traces run over the Weil box at the norm 9 or 5 of the prime
/// of K, the resultants use the norm raised to f in {1, 2}, and c = 4.
pub fn irreducibility_bound(ell: u64) -> Result<IrreducibilityBound> {
    let (norm, c, fs, traces): (u64, u32, Vec<u32>, Option<Vec<KElt>>) = match ell {
        2 => (4, 1, vec![1], Some(vec![KElt::int(-1), KElt::int(-8)])),
        3 => (9, 4, vec![1, 2], None),
        5 => (5, 4, vec![1, 2], None),
        _ => return Err(Error::domain("eliminate", format!("no bound implemented for ell = {}", ell))),
    };
    let traces = traces.unwrap_or_else(|| weil_candidates(norm));
    let mut factorization = BTreeMap::new();
    let mut per_f = Vec::new();
    let mut factors = 0;
    let mut product = Some(1u64);
    for f in fs {
        let q = BigInt::from(norm).pow(f);
        let mut best = 0;
        for a in &traces {
            let n = resultant_norm(a, &q, c);
            if n.is_zero() {
                continue;
            }
            factors += 1;
            product = product.and_then(|p| n.abs().to_u64().and_then(|m| p.checked_mul(m)));
            add_factors(&mut factorization, &n)?;
            if let Some(m) = prime_support(&n).into_iter().next_back().and_then(|p| p.to_u64()) {
                best = best.max(m);
            }
        }
        per_f.push((f, best));
    }
    let c = factorization.keys().next_back().copied().unwrap_or(1);
    Ok(IrreducibilityBound { ell, c, factorization, per_f, factors, product })
}

/// The polynomial Res(X^c - 1, x^2 - a x + q) is symmetric in the roots; this is
/// the direct Sylvester computation, used to check [`resultant_norm`].
pub fn resultant_direct(a: &KElt, q: i64, c: usize) -> KElt {
    let mut xc = vec![KElt::zero(); c + 1];
    xc[0] = KElt::int(-1);
    xc[c] = KElt::one();
    let quad = crate::arith::KPoly::new(vec![KElt::int(q), -a, KElt::one()]);
    crate::arith::KPoly::new(xc).resultant(&quad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two() {
        let b = irreducibility_bound(2).unwrap();
        assert_eq!(b.product, Some(6084));
        assert_eq!(b.c, 13);
        assert_eq!(b.factorization, [(2, 2), (3, 2), (13, 2)].into_iter().collect());
    }

    #[test]
    fn three_and_five() {
        let b = irreducibility_bound(3).unwrap();
        assert_eq!(b.per_f, vec![(1, 8969), (2, 41363281)]);
        assert_eq!(b.c, 41363281);
        let b = irreducibility_bound(5).unwrap();
        assert_eq!(b.per_f, vec![(1, 809), (2, 335809)]);
        assert_eq!(b.c, 335809);
        assert!(irreducibility_bound(7).is_err());
    }

    #[test]
    fn resultant_routes_agree() {
        for a in weil_candidates(5).iter().step_by(3) {
            for q in [5i64, 25] {
                let d = resultant_direct(a, q, 4);
                assert_eq!(d.norm(), resultant_norm(a, &BigInt::from(q), 4), "a = {}", a);
            }
        }
    }
}
