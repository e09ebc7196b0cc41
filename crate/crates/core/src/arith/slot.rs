//! Primes of K = Q(sqrt5) and their relation to the primes of Q(zeta_15).

use serde::{Deserialize, Serialize};
use std::fmt;

use super::nt::{is_prime, mult_order, sqrt_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SlotKind {
    /// the ideal (ell, sqrt5 - r) with r^2 = 5 mod ell
    Split { r: u64 },
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSlotK {
    pub ell: u64,
    pub kind: SlotKind,
}

impl PrimeSlotK {
    /// The slot above ell; split primes get the smaller square root of 5.
    pub fn new(ell: u64) -> Result<Self> {
        Self::with_root(ell, None)
    }

    /// Pin the square root of 5 for a split prime (either root is accepted).
    pub fn with_root(ell: u64, root: Option<u64>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::domain("arith", format!("{} is not prime", ell)));
        }
        let kind = if ell == 5 {
            SlotKind::Ramified
        } else if ell == 2 || matches!(ell % 5, 2 | 3) {
            SlotKind::Inert
        } else {
            let r0 = sqrt_mod(5, ell).expect("5 is a square mod a split prime");
            let r = r0.min(ell - r0);
            match root {
                None => SlotKind::Split { r },
                Some(x) if (x * x) % ell == 5 % ell => SlotKind::Split { r: x % ell },
                Some(x) => {
                    return Err(Error::domain(
                        "arith",
                        format!("{} is not a square root of 5 mod {}", x, ell),
                    ))
                }
            }
        };
        if root.is_some() && !matches!(kind, SlotKind::Split { .. }) {
            return Err(Error::domain("arith", format!("{} does not split in K", ell)));
        }
        Ok(PrimeSlotK { ell, kind })
    }

    /// Both slots above ell (two for split primes).
    pub fn all_above(ell: u64) -> Result<Vec<Self>> {
        let s = Self::new(ell)?;
        Ok(match s.kind {
            SlotKind::Split { r } => vec![s, Self::with_root(ell, Some(ell - r))?],
            _ => vec![s],
        })
    }

    pub fn norm(&self) -> u64 {
        match self.kind {
            SlotKind::Inert => self.ell * self.ell,
            _ => self.ell,
        }
    }

    /// Residue degree over Q.
    pub fn f_k(&self) -> u32 {
        match self.kind {
            SlotKind::Inert => 2,
            _ => 1,
        }
    }

    /// Residue degree over Q of a prime of Q(zeta_15) above ell.
    pub fn f_f(&self) -> u32 {
        mult_order(self.ell % 15, 15) as u32
    }

    /// Relative residue degree d = f_F / f_K.
    pub fn rel_deg_f(&self) -> u32 {
        self.f_f() / self.f_k()
    }

    pub fn is_split(&self) -> bool {
        matches!(self.kind, SlotKind::Split { .. })
    }

    pub fn kind_str(&self) -> &'static str {
        match self.kind {
            SlotKind::Split { .. } => "split",
            SlotKind::Inert => "inert",
            SlotKind::Ramified => "ramified",
        }
    }

    pub fn root5(&self) -> Option<u64> {
        match self.kind {
            SlotKind::Split { r } => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for PrimeSlotK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SlotKind::Split { r } => write!(f, "({}, sqrt5-{})", self.ell, r),
            SlotKind::Inert => write!(f, "({})", self.ell),
            SlotKind::Ramified => write!(f, "(sqrt5)"),
        }
    }
}

/// The slots used for elimination: every slot above each prime, inert ones only when
/// their norm is within `norm_cap`, never the ramified prime or primes dividing 30.
pub fn slots_for_primes(primes: &[u64], norm_cap: u64) -> Result<Vec<PrimeSlotK>> {
    let mut out = Vec::new();
    for &ell in primes {
        if 30 % ell == 0 {
            continue;
        }
        for s in PrimeSlotK::all_above(ell)? {
            if s.norm() <= norm_cap {
                out.push(s);
            }
        }
    }
    Ok(out)
}
