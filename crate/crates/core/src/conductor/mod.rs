//! Conductor and reduction-type prediction for the specialized motives.

pub mod igusa;
pub mod liu;
pub mod tables;

pub use igusa::{igusa_clebsch, igusa_j, IgusaVec};
pub use liu::{liu_classify, reduction_53, Reduction53, ReductionClass, Witness};
pub use tables::{
    catalan_cond, cond2_minus, cond3_table, cond_q_table, cond_r_table, d_valuation, eps_53,
    profile_53, table31, trivial_cond, DVal, LocalType, Point, Sign, Table31Row,
};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A conductor exponent: known exactly, or one of a finite set of candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Exact(u32),
    OneOf(BTreeSet<u32>),
}

impl Exponent {
    pub fn set(v: &[u32]) -> Exponent {
        let s: BTreeSet<u32> = v.iter().copied().collect();
        if s.len() == 1 {
            Exponent::Exact(*s.iter().next().unwrap())
        } else {
            Exponent::OneOf(s)
        }
    }

    pub fn exact(&self) -> Option<u32> {
        match self {
            Exponent::Exact(e) => Some(*e),
            Exponent::OneOf(_) => None,
        }
    }

    pub fn candidates(&self) -> BTreeSet<u32> {
        match self {
            Exponent::Exact(e) => [*e].into_iter().collect(),
            Exponent::OneOf(s) => s.clone(),
        }
    }

    pub fn contains(&self, e: u32) -> bool {
        self.candidates().contains(&e)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Exponent::Exact(e) => write!(f, "{}", e),
            Exponent::OneOf(s) => {
                let v: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                write!(f, "{{{}}}", v.join(","))
            }
        }
    }
}

/// The exponent at the primes of the real field above one rational prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceEntry {
    pub prime: u64,
    pub exponent: Exponent,
    /// The rule that produced the entry.
    pub source: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorProfile {
    pub entries: Vec<PlaceEntry>,
}

impl ConductorProfile {
    pub fn new(mut entries: Vec<PlaceEntry>) -> Self {
        entries.sort_by_key(|e| e.prime);
        ConductorProfile { entries }
    }

    pub fn get(&self, prime: u64) -> Option<&PlaceEntry> {
        self.entries.iter().find(|e| e.prime == prime)
    }

    pub fn exponent(&self, prime: u64) -> Option<&Exponent> {
        self.get(prime).map(|e| &e.exponent)
    }
}

fn place_label(p: u64) -> String {
    // 5 ramifies in Q(sqrt 5); other places are named by the rational prime.
    if p == 5 {
        "(√5)".to_string()
    } else {
        p.to_string()
    }
}

impl fmt::Display for ConductorProfile {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .filter(|e| e.exponent != Exponent::Exact(0))
            .map(|e| format!("{}^{}", place_label(e.prime), e.exponent))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}
