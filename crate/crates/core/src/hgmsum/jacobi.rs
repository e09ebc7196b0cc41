//! Exact Jacobi sums in Z[zeta_N].

use num_bigint::BigInt;

use super::large::LargeJacobi;
use crate::arith::{Cyc, Fq};
use crate::error::{Error, Result};

/// Fields up to this size are enumerated directly.
pub const DIRECT_LIMIT: u64 = 2_000_000;

/// J(chi^i, chi^j) = sum over x != 0, 1 of chi^i(x) chi^j(1 - x), by enumeration.
pub fn jacobi_sum(field: &Fq, i: i64, j: i64) -> Cyc {
    let n = field.zeta.as_ref().expect("field with a root of unity").n;
    let pairs = pair_counts(field);
    combine(n, &pairs, i, j)
}

/// counts[a * N + b] = #{x != 0, 1 : chi(x) = a, chi(1 - x) = b}
fn pair_counts(field: &Fq) -> Vec<i64> {
    let n = field.zeta.as_ref().unwrap().n as usize;
    let chi: Vec<u8> = (0..field.q).map(|x| field.chi(x).unwrap_or(0) as u8).collect();
    let mut c = vec![0i64; n * n];
    for x in 2..field.q {
        let y = field.sub(1, x);
        c[chi[x as usize] as usize * n + chi[y as usize] as usize] += 1;
    }
    c
}

fn combine(n: u32, pairs: &[i64], i: i64, j: i64) -> Cyc {
    let nn = n as usize;
    let mut e = vec![0i64; nn];
    for a in 0..nn {
        for b in 0..nn {
            let c = pairs[a * nn + b];
            if c != 0 {
                e[(i * a as i64 + j * b as i64).rem_euclid(n as i64) as usize] += c;
            }
        }
    }
    Cyc::from_exponent_counts(n, &e)
}

enum Route {
    Direct { field: Fq, pairs: Vec<i64> },
    Large(Box<LargeJacobi>),
}

/// Jacobi sums and character values for the residue field of a prime above ell in Q(zeta_15).
///
/// Small fields are enumerated, using the prime picked by `factor_index`. Fields
/// l^4 beyond [`DIRECT_LIMIT`] go through the subfield reduction; that route fixes
/// its own order-15 character, so its values agree with the enumerated ones up to
/// a Galois automorphism of Q(zeta_15). Minimal polynomials are unaffected.
pub struct JacobiContext {
    pub ell: u64,
    pub n: u32,
    /// order of the residue field
    pub q: BigInt,
    route: Route,
}

impl JacobiContext {
    pub fn new(ell: u64, factor_index: usize) -> Result<Self> {
        if 15 % ell == 0 {
            return Err(Error::domain("hgmsum", format!("{} divides 15", ell)));
        }
        if !crate::arith::nt::is_prime(ell) {
            return Err(Error::domain("hgmsum", format!("{} is not prime", ell)));
        }
        let f = Fq::ord_mod(ell, 15) as u32;
        let q = BigInt::from(ell).pow(f);
        let small = ell.checked_pow(f).is_some_and(|q| q <= DIRECT_LIMIT);
        let route = if small {
            Self::direct_route(ell, factor_index)?
        } else if f == 4 {
            Route::Large(Box::new(LargeJacobi::new(ell)))
        } else if ell.pow(f) <= crate::arith::field::TABLE_LIMIT {
            Self::direct_route(ell, factor_index)?
        } else {
            return Err(Error::domain("hgmsum", format!("residue field of {} too large", ell)));
        };
        Ok(JacobiContext { ell, n: 15, q, route })
    }

    fn direct_route(ell: u64, factor_index: usize) -> Result<Route> {
        let field = Fq::build(ell, 15, factor_index)?;
        let pairs = pair_counts(&field);
        Ok(Route::Direct { field, pairs })
    }

    /// Force enumeration regardless of size (for cross-checks).
    pub fn direct(ell: u64, factor_index: usize) -> Result<Self> {
        let f = Fq::ord_mod(ell, 15) as u32;
        let route = Self::direct_route(ell, factor_index)?;
        Ok(JacobiContext { ell, n: 15, q: BigInt::from(ell).pow(f), route })
    }

    /// Force the subfield route (only for residue degree 4).
    pub fn subfield(ell: u64) -> Result<Self> {
        if Fq::ord_mod(ell, 15) != 4 {
            return Err(Error::domain("hgmsum", "subfield route needs residue degree 4"));
        }
        let route = Route::Large(Box::new(LargeJacobi::new(ell)));
        Ok(JacobiContext { ell, n: 15, q: BigInt::from(ell).pow(4), route })
    }

    pub fn is_direct(&self) -> bool {
        matches!(self.route, Route::Direct { .. })
    }

    pub fn field(&self) -> Option<&Fq> {
        match &self.route {
            Route::Direct { field, .. } => Some(field),
            Route::Large(_) => None,
        }
    }

    pub fn jacobi(&self, i: i64, j: i64) -> Cyc {
        match &self.route {
            Route::Direct { pairs, .. } => combine(self.n, pairs, i, j),
            Route::Large(l) => l.jacobi(i, j),
        }
    }

    /// chi of an element of the prime field, as an exponent of zeta_15; `None` at zero.
    pub fn chi_prime(&self, t: u64) -> Option<u32> {
        let t = t % self.ell;
        if t == 0 {
            return None;
        }
        match &self.route {
            Route::Direct { field, .. } => field.chi(t),
            Route::Large(l) => Some(l.ext.chi_sub(t)),
        }
    }

    /// chi(-1).
    pub fn chi_minus_one(&self) -> u32 {
        match &self.route {
            Route::Direct { field, .. } => field.chi(field.neg(1)).unwrap(),
            Route::Large(l) => l.chi_minus_one(),
        }
    }

    /// The values chi takes on F_ell^x.
    pub fn prime_field_image(&self) -> Vec<u32> {
        let g = crate::arith::Fq::generic(self.ell, 1).generator();
        let c = self.chi_prime(g).unwrap();
        let mut img: Vec<u32> = (0..15).map(|k| k * c % 15).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn trivial_characters() {
        let f = Fq::build(11, 15, 0).unwrap();
        assert_eq!(jacobi_sum(&f, 0, 0), Cyc::int(15, 119));
        assert_eq!(jacobi_sum(&f, 0, 4), Cyc::int(15, -1));
    }

    #[test]
    fn modulus_and_symmetry() {
        let f = Fq::build(11, 15, 0).unwrap();
        let j = jacobi_sum(&f, 2, -8);
        for k in Cyc::galois_group(15) {
            assert!((j.embed(k).norm() - 11.0).abs() < 1e-6);
        }
        assert_eq!(jacobi_sum(&f, 3, 7), jacobi_sum(&f, 7, 3));
        assert_eq!(jacobi_sum(&f, 3, 7).conj(), jacobi_sum(&f, -3, -7));
    }

    #[test]
    fn agrees_with_gauss_sums() {
        // J(a, b) = g(a) g(b) / g(a + b) with the Teichmuller character
        let f = Fq::build(31, 15, 0).unwrap();
        let z = f.zeta.as_ref().unwrap();
        let u = super::super::teichmuller_u(&f, z.s, 15);
        let t = super::super::GaussTable::new(&f, 1);
        let step = 2; // (q - 1) / N
        for (a, b) in [(1i64, 2i64), (2, -8), (4, 7)] {
            let g = |e: i64| t.get(u, e * step);
            let want: Complex64 = g(a) * g(b) / g(a + b);
            let got = jacobi_sum(&f, a, b).embed(1);
            assert!((want - got).norm() < 1e-6, "{:?} {:?}", want, got);
        }
    }

    #[test]
    fn subfield_route_matches_enumeration() {
        for ell in [7u64, 13, 17] {
            let d = JacobiContext::direct(ell, 0).unwrap();
            let l = JacobiContext::subfield(ell).unwrap();
            let pairs: Vec<(i64, i64)> = (0..15).flat_map(|i| (0..15).map(move |j| (i, j))).collect();
            let ok = Cyc::galois_group(15).into_iter().any(|k| {
                pairs.iter().all(|&(i, j)| d.jacobi(i, j).galois(k) == l.jacobi(i, j))
            });
            assert!(ok, "ell = {}", ell);
        }
    }
}
