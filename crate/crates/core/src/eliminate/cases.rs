//! The traces a solution can produce at a prime of K: generic residues of t,
//! the degenerate fibres t = 0 and infinity, and multiplicative reduction.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::arith::nt::inv_mod;
use crate::arith::{KElt, PrimeSlotK, ZPoly};
use crate::curves::{split_over_k, QuadraticFamily};
use crate::error::{Error, Result};
use crate::hgmsum::cm::{degenerate0, degenerate_inf};
use crate::hgmsum::trace::{hyp_trace_at, GAUSS_BUDGET};

/// Largest slot norm used by default.
pub const DEFAULT_NORM_CAP: u64 = 400;

#[derive(Clone, Debug, Serialize)]
pub struct CaseValues {
    pub slot: PrimeSlotK,
    /// residue of t -> the trace and its conjugate
    pub case1: BTreeMap<u64, [KElt; 2]>,
    /// minimal polynomials of the degenerate traces, over the residue field of Q(zeta_15)
    #[serde(serialize_with = "ser_polys")]
    pub case2: Vec<ZPoly>,
    /// +-(N + 1)
    pub case3: [BigInt; 2],
    /// residues where the character sum was evaluated as a cross-check
    pub cross_checked: usize,
}

fn ser_polys<S: serde::Serializer>(v: &[ZPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn check_slot(slot: &PrimeSlotK, norm_cap: u64) -> Result<()> {
    if 30 % slot.ell == 0 {
        return Err(Error::domain("eliminate", format!("{} divides 30", slot.ell)));
    }
    if slot.norm() > norm_cap {
        return Err(Error::domain(
            "eliminate",
            format!("slot {} has norm {} above the cap {}", slot, slot.norm(), norm_cap),
        ));
    }
    Ok(())
}

/// Case (1): for every residue t in F_ell minus {0, 1}, the trace pair from the
/// Euler factor of the genus-2 fibre at 1/t, cross-checked against the character
/// sum whenever the residue field of Q(zeta_15) fits the floating-point budget.
pub fn case1_values(slot: &PrimeSlotK, norm_cap: u64) -> Result<(BTreeMap<u64, [KElt; 2]>, usize)> {
    check_slot(slot, norm_cap)?;
    let ell = slot.ell;
    let residues: Vec<u64> = (2..ell).collect();
    let inverses: Vec<u64> =
        residues.iter().map(|&t| inv_mod(t as i64, ell as i64).expect("t is a unit") as u64).collect();
    let factors = QuadraticFamily::c53().euler_factors(ell, slot.f_k() as usize, &inverses);
    let cross = ell.checked_pow(slot.f_f()).is_some_and(|q| q <= GAUSS_BUDGET);
    let norm = BigInt::from(slot.norm());
    let mut out = BTreeMap::new();
    let mut checked = 0;
    for (&t, lpoly) in residues.iter().zip(factors) {
        let pair = split_over_k(&lpoly?)?;
        for a in &pair {
            if !a.weil_ok(&norm) {
                return Err(Error::internal("eliminate", format!("{} at {} breaks the Weil bound", a, slot)));
            }
        }
        if cross {
            let h = hyp_trace_at(slot, t as i64)?;
            if h.pair() != pair {
                return Err(Error::oracle(
                    "eliminate",
                    format!(
                        "slot {}, t = {}: point count gives {} and {}, character sum gives {} and {}",
                        slot, t, pair[0], pair[1], h.pair()[0], h.pair()[1]
                    ),
                ));
            }
            checked += 1;
        }
        out.insert(t, pair);
    }
    Ok((out, checked))
}

/// Case (2): the degenerate traces at t = 0 and t = infinity.
pub fn case2_values(slot: &PrimeSlotK, norm_cap: u64) -> Result<Vec<ZPoly>> {
    check_slot(slot, norm_cap)?;
    let mut v = degenerate0(slot.ell, 0)?;
    for p in degenerate_inf(slot.ell, 0)? {
        if !v.contains(&p) {
            v.push(p);
        }
    }
    Ok(v)
}

/// Case (3): the level-lowering values +-(N + 1).
pub fn case3_values(slot: &PrimeSlotK) -> [BigInt; 2] {
    let n = BigInt::from(slot.norm() + 1);
    [n.clone(), -n]
}

pub fn case_values(slot: &PrimeSlotK, norm_cap: u64) -> Result<CaseValues> {
    let (case1, cross_checked) = case1_values(slot, norm_cap)?;
    let case2 = case2_values(slot, norm_cap)?;
    Ok(CaseValues { slot: *slot, case1, case2, case3: case3_values(slot), cross_checked })
}

/// Case values for many slots, computed in parallel; order follows `slots`.
pub fn case_values_many(slots: &[PrimeSlotK], norm_cap: u64) -> Result<Vec<CaseValues>> {
    slots.par_iter().map(|s| case_values(s, norm_cap)).collect()
}
