//! Surviving primes per newform and per space.
//!
//! A prime p survives at a slot when it divides the resultant of the eigenvalue's
//! minimal polynomial with the minimal polynomial of some admissible trace, so
//! both conjugates on both sides are always compared. A zero resultant is a
//! perfect match and keeps every prime.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::cases::CaseValues;
use super::records::{Eigen, NewformRecord};
use crate::arith::nt::prime_support;
use crate::arith::poly::parse_zpoly;
use crate::arith::{PrimeSlotK, ZPoly};
use crate::error::{Error, Result};
use crate::hgmsum::cm::lift_trace;

/// Primes never claimed: they divide the level support or lie outside the method.
pub const RETAINED: [u64; 3] = [2, 3, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Case1,
    Case2,
    Case3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case1 => "case1",
            Case::Case2 => "case2",
            Case::Case3 => "case3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSelection {
    pub case1: bool,
    pub case2: bool,
    pub case3: bool,
}

impl Default for CaseSelection {
    fn default() -> Self {
        CaseSelection { case1: true, case2: true, case3: true }
    }
}

impl CaseSelection {
    pub fn only_case1() -> Self {
        CaseSelection { case1: true, case2: false, case3: false }
    }
}

/// Evidence for a surviving prime at one slot: p divides `resultant`, the
/// resultant of `eigen_poly` and `value_poly` (or it is zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub slot: PrimeSlotK,
    pub case: Case,
    /// the residue of t for Case (1)
    pub residue: Option<u64>,
    pub eigen_poly: String,
    pub value_poly: String,
    pub resultant: String,
}

impl Witness {
    /// Recompute the resultant and check that it supports p (every p when zero).
    pub fn replay(&self, p: u64) -> Result<bool> {
        let bad = |what: &str| Error::data("eliminate", format!("witness {}: {}", what, self.slot));
        let e = parse_zpoly(&self.eigen_poly).ok_or_else(|| bad("eigenvalue polynomial"))?;
        let v = parse_zpoly(&self.value_poly).ok_or_else(|| bad("value polynomial"))?;
        let r: BigInt = self.resultant.parse().map_err(|_| bad("resultant"))?;
        if e.resultant(&v) != r {
            return Ok(false);
        }
        Ok(r.is_zero() || (&r % p).is_zero())
    }

    pub fn is_perfect(&self) -> bool {
        self.resultant == "0"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "primes")]
pub enum Survivors {
    All,
    Finite(BTreeSet<u64>),
}

impl Survivors {
    pub fn is_all(&self) -> bool {
        matches!(self, Survivors::All)
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            Survivors::All => true,
            Survivors::Finite(s) => s.contains(&p),
        }
    }

    fn intersect(self, o: &Survivors) -> Survivors {
        match (self, o) {
            (Survivors::All, x) => x.clone(),
            (x, Survivors::All) => x,
            (Survivors::Finite(a), Survivors::Finite(b)) => Survivors::Finite(a.intersection(b).copied().collect()),
        }
    }
}

impl fmt::Display for Survivors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Survivors::All => write!(f, "ALL"),
            Survivors::Finite(s) => {
                let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", v.join(","))
            }
        }
    }
}

/// Outcome of the elimination for one form.
#[derive(Clone, Debug, Serialize)]
pub struct FormResult {
    pub label: String,
    pub survivors: Survivors,
    /// largest surviving prime, for finite sets
    pub bound: Option<u64>,
    /// one witness per used slot for every surviving prime outside {2, 3, 5}
    pub witnesses: BTreeMap<u64, Vec<Witness>>,
    /// zero differences, per slot
    pub perfect: Vec<Witness>,
    pub used_slots: Vec<PrimeSlotK>,
    /// slots without a usable eigenvalue
    pub skipped_slots: Vec<PrimeSlotK>,
    /// every used slot has a perfect Case (1) match
    pub case1_everywhere: bool,
    /// all perfect matches come from degenerate fibres, as expected for CM forms
    pub cm_consistent: bool,
    pub cm: Option<String>,
}

impl FormResult {
    pub fn discardable(&self) -> bool {
        !self.survivors.is_all()
    }
}

struct SlotOutcome {
    local: Survivors,
    perfect: Vec<Witness>,
    by_prime: BTreeMap<u64, Witness>,
}

/// Characteristic polynomial of L(a) for a root a of the monic `m`, where L maps a
/// Frobenius trace to the trace of its d-th power with determinant q.
pub fn lift_char_poly(m: &ZPoly, q: u64, d: u32) -> Result<ZPoly> {
    let n = m.degree().unwrap_or(0);
    if n == 0 || !m.lead().is_one() {
        return Err(Error::domain("eliminate", "lifting needs a monic polynomial of positive degree"));
    }
    // companion matrix of m acting on 1, y, ..., y^(n-1)
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        c[i][i - 1] = BigInt::one();
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[n - 1] = -m.coeff(i);
    }
    let q = BigInt::from(q);
    let ident = |s: &BigInt| -> Vec<Vec<BigInt>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { s.clone() } else { BigInt::zero() }).collect()).collect()
    };
    let sq_minus = |a: &Vec<Vec<BigInt>>, s: &BigInt| mat_add(&mat_mul(a, a), &ident(&(-BigInt::from(2) * s)));
    let l = match d {
        1 => c,
        2 => sq_minus(&c, &q),
        4 => sq_minus(&sq_minus(&c, &q), &(&q * &q)),
        _ => return Err(Error::domain("eliminate", format!("relative degree {} not in {{1, 2, 4}}", d))),
    };
    Ok(char_poly(&l))
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(BigInt::zero(), |s, k| s + &a[i][k] * &b[k][j])).collect())
        .collect()
}

fn mat_add(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// Faddeev-LeVerrier; every division is exact for integer matrices.
fn char_poly(a: &[Vec<BigInt>]) -> ZPoly {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = mat_mul(a, &m);
        let tr = (0..n).fold(BigInt::zero(), |s, i| s + &m[i][i]);
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    ZPoly::new(coeffs)
}

fn slot_outcome(eig: &Eigen, cv: &CaseValues, sel: CaseSelection) -> Result<Option<SlotOutcome>> {
    let slot = cv.slot;
    let base = match eig.poly() {
        Some(p) => p,
        None => return Ok(None),
    };
    let lifted = match eig {
        Eigen::K(a) => lift_trace(a, slot.norm(), slot.rel_deg_f())?.min_poly(),
        Eigen::NonK { .. } => lift_char_poly(&base, slot.norm(), slot.rel_deg_f())?,
    };
    // (case, residue, eigen side, value side), deduplicated on the value side
    let mut cands: Vec<(Case, Option<u64>, &ZPoly, ZPoly)> = Vec::new();
    let mut seen = BTreeSet::new();
    if sel.case1 {
        for (&t, pair) in &cv.case1 {
            for a in pair {
                let p = a.min_poly();
                if seen.insert((Case::Case1, p.to_string())) {
                    cands.push((Case::Case1, Some(t), &base, p));
                }
            }
        }
    }
    if sel.case2 {
        for p in &cv.case2 {
            cands.push((Case::Case2, None, &lifted, p.clone()));
        }
    }
    if sel.case3 {
        for v in &cv.case3 {
            cands.push((Case::Case3, None, &base, ZPoly::new(vec![-v.clone(), BigInt::one()])));
        }
    }
    let mut out = SlotOutcome { local: Survivors::Finite(BTreeSet::new()), perfect: Vec::new(), by_prime: BTreeMap::new() };
    let mut primes = BTreeSet::new();
    for (case, residue, e, v) in cands {
        let r = e.resultant(&v);
        let w = Witness {
            slot,
            case,
            residue,
            eigen_poly: e.to_string(),
            value_poly: v.to_string(),
            resultant: r.to_string(),
        };
        if r.is_zero() {
            out.perfect.push(w);
            continue;
        }
        for p in prime_support(&r.abs()) {
            let p = p.to_u64().ok_or_else(|| Error::internal("eliminate", "surviving prime above 2^64"))?;
            primes.insert(p);
            out.by_prime.entry(p).or_insert_with(|| w.clone());
        }
    }
    out.local = if out.perfect.is_empty() { Survivors::Finite(primes) } else { Survivors::All };
    Ok(Some(out))
}

/// Surviving primes of one form over the given slots.
pub fn eliminate_form(f: &NewformRecord, slots: &[CaseValues], sel: CaseSelection) -> Result<FormResult> {
    if slots.is_empty() {
        return Err(Error::domain("eliminate", "no slots to eliminate with"));
    }
    let mut survivors = Survivors::All;
    let mut outcomes = Vec::new();
    let mut used_slots = Vec::new();
    let mut skipped_slots = Vec::new();
    for cv in slots {
        match f.eigenvalues.get(&cv.slot) {
            None => skipped_slots.push(cv.slot),
            Some(eig) => match slot_outcome(eig, cv, sel)? {
                None => skipped_slots.push(cv.slot),
                Some(o) => {
                    survivors = survivors.intersect(&o.local);
                    used_slots.push(cv.slot);
                    outcomes.push(o);
                }
            },
        }
    }
    if let Survivors::Finite(s) = &mut survivors {
        s.extend(RETAINED);
    }
    let mut witnesses = BTreeMap::new();
    if let Survivors::Finite(s) = &survivors {
        for &p in s.iter().filter(|p| !RETAINED.contains(p)) {
            let ws = outcomes
                .iter()
                .map(|o| match o.by_prime.get(&p) {
                    Some(w) => w.clone(),
                    None => o.perfect[0].clone(),
                })
                .collect();
            witnesses.insert(p, ws);
        }
    }
    let perfect: Vec<Witness> = outcomes.iter().flat_map(|o| o.perfect.iter().cloned()).collect();
    let all_perfect = !outcomes.is_empty() && outcomes.iter().all(|o| !o.perfect.is_empty());
    let case1_everywhere =
        all_perfect && outcomes.iter().all(|o| o.perfect.iter().any(|w| w.case == Case::Case1));
    let cm_consistent = all_perfect && perfect.iter().all(|w| w.case == Case::Case2);
    let bound = match &survivors {
        Survivors::Finite(s) => s.iter().max().copied(),
        Survivors::All => None,
    };
    Ok(FormResult {
        label: f.label.clone(),
        survivors,
        bound,
        witnesses,
        perfect,
        used_slots,
        skipped_slots,
        case1_everywhere,
        cm_consistent,
        cm: f.cm.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    pub level: (u32, u32),
    pub slots: Vec<PrimeSlotK>,
    pub cases: CaseSelection,
    pub forms: Vec<FormResult>,
    /// labels of the forms whose surviving set is every prime
    pub non_discardable: Vec<String>,
    /// union of the surviving sets of the discardable forms
    pub union: BTreeSet<u64>,
}

impl EliminationReport {
    /// Replay every witness; an error names the first one that does not hold.
    pub fn verify(&self) -> Result<()> {
        for f in &self.forms {
            for (&p, ws) in &f.witnesses {
                if ws.len() != f.used_slots.len() {
                    return Err(Error::internal("eliminate", format!("form {}: {} lacks witnesses", f.label, p)));
                }
                for w in ws {
                    if !w.replay(p)? {
                        return Err(Error::internal(
                            "eliminate",
                            format!("form {}: witness for {} at {} does not replay", f.label, p, w.slot),
                        ));
                    }
                }
            }
            for w in &f.perfect {
                if !w.is_perfect() || !w.replay(2)? {
                    return Err(Error::internal("eliminate", format!("form {}: perfect match does not replay", f.label)));
                }
            }
        }
        Ok(())
    }

    /// One line per form: form_label, surviving_primes, witness_slot, witness_case, witness_value.
    /// The witness is a perfect match for non-discardable forms and otherwise the
    /// evidence for the largest surviving prime, at the first slot.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("form_label\tsurviving_primes\twitness_slot\twitness_case\twitness_value\n");
        for f in &self.forms {
            let w = match &f.survivors {
                Survivors::All => f.perfect.first(),
                Survivors::Finite(_) => f.bound.and_then(|b| f.witnesses.get(&b)).and_then(|ws| ws.first()),
            };
            let (slot, case, value) = match w {
                Some(w) => (w.slot.to_string(), w.case.to_string(), w.value_poly.clone()),
                None => ("-".into(), "-".into(), "-".into()),
            };
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", f.label, f.survivors, slot, case, value));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let p: Vec<String> = self.union.iter().map(|p| p.to_string()).collect();
        format!(
            "non-discardable: [{}]; the rest are discarded for p outside [{}]",
            self.non_discardable.join(", "),
            p.join(", ")
        )
    }
}

/// Eliminate every form of a space. Forms are processed in parallel and
/// reported in input order.
pub fn run_space(
    level: (u32, u32),
    records: &[NewformRecord],
    slots: &[CaseValues],
    sel: CaseSelection,
) -> Result<EliminationReport> {
    let slot_ids = slots.iter().map(|c| c.slot).collect();
    if records.is_empty() {
        return Ok(EliminationReport {
            level,
            slots: slot_ids,
            cases: sel,
            forms: Vec::new(),
            non_discardable: Vec::new(),
            union: BTreeSet::new(),
        });
    }
    if let Some(r) = records.iter().find(|r| r.level != level) {
        return Err(Error::domain(
            "eliminate",
            format!("form {} has level {:?}, expected {:?}", r.label, r.level, level),
        ));
    }
    let forms: Vec<FormResult> = records.par_iter().map(|r| eliminate_form(r, slots, sel)).collect::<Result<_>>()?;
    let non_discardable = forms.iter().filter(|f| !f.discardable()).map(|f| f.label.clone()).collect();
    let mut union = BTreeSet::new();
    for f in &forms {
        if let Survivors::Finite(s) = &f.survivors {
            union.extend(s.iter().copied());
        }
    }
    Ok(EliminationReport { level, slots: slot_ids, cases: sel, forms, non_discardable, union })
}
