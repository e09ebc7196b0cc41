//! Congruences between Frobenius polynomials of two models at a list of primes of K.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::count::{elliptic_trace, euler_factor_at};
use super::{EllipticModel, SexticModel};
use crate::arith::{PrimeSlotK, ZPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CongruenceModulus {
    Three,
    Sqrt5,
}

/// The second model of a comparison.
#[derive(Clone, Debug)]
pub enum Comparand {
    /// compare quartic against quartic
    Sextic(SexticModel),
    /// compare the quartic against the square of the elliptic quadratic
    Elliptic(EllipticModel),
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotCheck {
    pub slot: String,
    /// `None` when the slot was skipped for bad reduction
    pub pass: Option<bool>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub note: Option<String>,
}

fn reduce(p: &ZPoly, m: u64) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = p.coeffs().iter().map(|a| a.mod_floor(&BigInt::from(m))).collect();
    while c.last().is_some_and(|x| *x == BigInt::from(0)) {
        c.pop();
    }
    c
}

/// Compare Frobenius polynomials of `a` and `b` at each slot. With `twist`, the
/// quartic of `a` is replaced by P(N x), N the norm of the slot. For the modulus
/// sqrt5 the comparison is made mod 5, which for rational coefficients is the
/// same as mod sqrt5.
pub fn congruence_check(
    a: &SexticModel,
    b: &Comparand,
    modulus: CongruenceModulus,
    slots: &[PrimeSlotK],
    twist: bool,
) -> Result<Vec<SlotCheck>> {
    let m = match modulus {
        CongruenceModulus::Three => 3,
        CongruenceModulus::Sqrt5 => 5,
    };
    let mut out = Vec::new();
    for slot in slots {
        let la = match euler_factor_at(a, slot) {
            Ok(l) => l,
            Err(e) => {
                out.push(SlotCheck {
                    slot: slot.to_string(),
                    pass: None,
                    left: None,
                    right: None,
                    note: Some(format!("skipped: {}", e)),
                });
                continue;
            }
        };
        let left = if twist { la.twisted_char_poly() } else { la.char_poly() };
        let right = match b {
            Comparand::Sextic(s) => euler_factor_at(s, slot).map(|l| l.char_poly()),
            Comparand::Elliptic(e) => elliptic_trace(e, slot.ell, slot.f_k() as usize).map(|t| {
                let quad = ZPoly::new(vec![BigInt::from(slot.norm()), -t, BigInt::from(1)]);
                quad.mul(&quad)
            }),
        };
        let right = match right {
            Ok(r) => r,
            Err(e) => {
                out.push(SlotCheck {
                    slot: slot.to_string(),
                    pass: None,
                    left: Some(left.to_string()),
                    right: None,
                    note: Some(format!("skipped: {}", e)),
                });
                continue;
            }
        };
        // leading coefficients differ by the unit N^4 after twisting
        let lead = left.lead().mod_floor(&BigInt::from(m));
        let norm_inv = crate::arith::nt::inv_mod(
            lead.try_into().unwrap_or(0i64),
            m as i64,
        );
        let pass = match norm_inv {
            Some(li) => {
                let lnorm = left.scale(&BigInt::from(li));
                reduce(&lnorm, m) == reduce(&right, m)
            }
            None => false,
        };
        out.push(SlotCheck {
            slot: slot.to_string(),
            pass: Some(pass),
            left: Some(left.to_string()),
            right: Some(right.to_string()),
            note: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nt::rat;
    use crate::curves::{c53, darmon_plus_integral, e3_plus};

    fn slots() -> Vec<PrimeSlotK> {
        vec![PrimeSlotK::new(7).unwrap(), PrimeSlotK::new(11).unwrap(), PrimeSlotK::new(29).unwrap()]
    }

    #[test]
    fn known_congruences() {
        let a = c53(&rat(3, 1)).unwrap();
        let d = Comparand::Sextic(darmon_plus_integral(5, &rat(1, 3)).unwrap());
        let r = congruence_check(&a, &d, CongruenceModulus::Three, &slots(), true).unwrap();
        assert!(r.iter().all(|c| c.pass == Some(true)), "{:?}", r);
        let e = Comparand::Elliptic(e3_plus(&rat(3, 1)).unwrap());
        let r = congruence_check(&a, &e, CongruenceModulus::Sqrt5, &slots(), true).unwrap();
        assert!(r.iter().all(|c| c.pass == Some(true)), "{:?}", r);
        // without the twist the mod-3 comparison fails somewhere
        let r = congruence_check(&a, &d, CongruenceModulus::Three, &slots(), false).unwrap();
        assert!(r.iter().any(|c| c.pass == Some(false)));
    }

    #[test]
    fn self_comparison() {
        let a = c53(&rat(3, 1)).unwrap();
        let s = Comparand::Sextic(a.clone());
        for m in [CongruenceModulus::Three, CongruenceModulus::Sqrt5] {
            let r = congruence_check(&a, &s, m, &slots(), false).unwrap();
            assert!(r.iter().all(|c| c.pass == Some(true)));
        }
    }

    #[test]
    fn bad_slot_skipped() {
        let a = c53(&rat(3, 1)).unwrap();
        let s = Comparand::Sextic(a.clone());
        let r = congruence_check(&a, &s, CongruenceModulus::Three, &[PrimeSlotK::new(3).unwrap()], false);
        if let Ok(r) = r {
            assert_eq!(r[0].pass, None);
        }
    }
}
