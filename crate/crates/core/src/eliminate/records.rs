//! Newform eigenvalue records and their JSON wire format.
//!
//! ```json
//! {"field": "Q(sqrt5)", "level": [2, 2], "forms": [
//!   {"label": "9", "field_degree": 2, "cm": null, "eigenvalues": [
//!     {"ell": 11, "kind": "split", "root5": 4, "u": 9, "v": 1, "exact": true}]}]}
//! ```
//!
//! `(u, v)` encodes `(u + v sqrt5)/2`. Eigenvalues outside K set `"exact": false`
//! and `"non_k": true`, and may carry `"minpoly"`, integer coefficients from the
//! constant term up.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

use crate::arith::{KElt, PrimeSlotK, SlotKind, ZPoly};
use crate::error::{Error, Result};

/// Eigenvalue of a newform at one prime of K.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigen {
    K(KElt),
    /// Not in K; the minimal polynomial over Q when known.
    NonK { minpoly: Option<ZPoly> },
}

impl Eigen {
    /// Monic polynomial over Z whose roots are the eigenvalue and its conjugates.
    pub fn poly(&self) -> Option<ZPoly> {
        match self {
            Eigen::K(a) => Some(a.min_poly()),
            Eigen::NonK { minpoly } => minpoly.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewformRecord {
    pub label: String,
    /// (i, j) for the level 3^i (sqrt5)^j
    pub level: (u32, u32),
    pub field_degree: u32,
    pub cm: Option<String>,
    pub eigenvalues: BTreeMap<PrimeSlotK, Eigen>,
}

impl NewformRecord {
    /// The record with every K-eigenvalue replaced by its conjugate.
    pub fn conjugate(&self) -> Self {
        let mut r = self.clone();
        for e in r.eigenvalues.values_mut() {
            if let Eigen::K(a) = e {
                *a = a.conj();
            }
        }
        r
    }
}

/// A record that could not be loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// position in the `forms` array
    pub index: usize,
    pub label: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct Loaded {
    pub level: Option<(u32, u32)>,
    pub records: Vec<NewformRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Deserialize)]
struct RawFile {
    #[serde(default)]
    field: Option<String>,
    level: [u32; 2],
    #[serde(default)]
    forms: Vec<serde_json::Value>,
}

#[derive(Deserialize)]
struct RawForm {
    label: String,
    field_degree: u32,
    #[serde(default)]
    cm: Option<String>,
    #[serde(default)]
    eigenvalues: Vec<RawEigen>,
}

#[derive(Deserialize)]
struct RawEigen {
    ell: u64,
    kind: String,
    #[serde(default)]
    root5: Option<u64>,
    #[serde(default)]
    u: Option<i64>,
    #[serde(default)]
    v: Option<i64>,
    exact: bool,
    #[serde(default)]
    non_k: bool,
    #[serde(default)]
    minpoly: Option<Vec<i64>>,
}

/// Parse the wire format. A whitespace-only input is an empty list; a malformed
/// top level is an error; malformed or Weil-violating records are dropped with
/// a diagnostic.
pub fn parse_newforms(text: &str) -> Result<Loaded> {
    if text.trim().is_empty() {
        return Ok(Loaded::default());
    }
    let raw: RawFile =
        serde_json::from_str(text).map_err(|e| Error::data("eliminate", format!("newform file: {}", e)))?;
    if let Some(f) = &raw.field {
        let f: String = f.chars().filter(|c| !c.is_whitespace()).collect();
        if !matches!(f.as_str(), "Q(sqrt5)" | "Q(sqrt(5))" | "Q(√5)") {
            return Err(Error::data("eliminate", format!("unsupported field {}", f)));
        }
    }
    let level = (raw.level[0], raw.level[1]);
    let mut out = Loaded { level: Some(level), ..Default::default() };
    for (index, value) in raw.forms.into_iter().enumerate() {
        let label = value.get("label").and_then(|l| l.as_str()).map(str::to_string);
        let parsed = serde_json::from_value::<RawForm>(value)
            .map_err(|e| e.to_string())
            .and_then(|f| build_record(f, level));
        match parsed {
            Ok(r) => out.records.push(r),
            Err(message) => out.diagnostics.push(Diagnostic { index, label, message }),
        }
    }
    Ok(out)
}

pub fn load_newforms(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::data("eliminate", format!("{}: {}", path.display(), e)))?;
    parse_newforms(&text)
}

fn build_record(f: RawForm, level: (u32, u32)) -> std::result::Result<NewformRecord, String> {
    if f.field_degree == 0 {
        return Err("field_degree must be positive".into());
    }
    let mut eigenvalues = BTreeMap::new();
    for e in f.eigenvalues {
        let slot = parse_slot(&e)?;
        let value = parse_eigen(&e, &slot, f.field_degree)?;
        if eigenvalues.insert(slot, value).is_some() {
            return Err(format!("two eigenvalues at {}", slot));
        }
    }
    Ok(NewformRecord { label: f.label, level, field_degree: f.field_degree, cm: f.cm, eigenvalues })
}

fn parse_slot(e: &RawEigen) -> std::result::Result<PrimeSlotK, String> {
    let slot = PrimeSlotK::new(e.ell).map_err(|err| err.to_string())?;
    if slot.kind_str() != e.kind {
        return Err(format!("{} is {} in K, not {}", e.ell, slot.kind_str(), e.kind));
    }
    match (slot.kind, e.root5) {
        (SlotKind::Split { .. }, Some(r)) => PrimeSlotK::with_root(e.ell, Some(r)).map_err(|err| err.to_string()),
        (SlotKind::Split { .. }, None) => Err(format!("split prime {} without root5", e.ell)),
        (_, Some(_)) => Err(format!("root5 given for non-split prime {}", e.ell)),
        (_, None) => Ok(slot),
    }
}

fn parse_eigen(e: &RawEigen, slot: &PrimeSlotK, degree: u32) -> std::result::Result<Eigen, String> {
    let norm = BigInt::from(slot.norm());
    if e.exact {
        if e.non_k {
            return Err(format!("exact eigenvalue at {} flagged non_k", slot));
        }
        let (u, v) = match (e.u, e.v) {
            (Some(u), Some(v)) => (u, v),
            _ => return Err(format!("exact eigenvalue at {} without (u, v)", slot)),
        };
        let a = KElt::new(u, v).ok_or_else(|| format!("({}, {}) at {} fails the parity condition", u, v, slot))?;
        if !a.weil_ok(&norm) {
            return Err(format!("eigenvalue {} at {} violates the Weil bound", a, slot));
        }
        return Ok(Eigen::K(a));
    }
    if !e.non_k {
        return Err(format!("inexact eigenvalue at {} must be flagged non_k", slot));
    }
    if degree <= 2 {
        return Err(format!("non_k eigenvalue at {} for a form of field degree {}", slot, degree));
    }
    let minpoly = match &e.minpoly {
        None => None,
        Some(c) => {
            let m = ZPoly::from_i64s(c);
            if m.degree().unwrap_or(0) == 0 || !m.lead().is_one() {
                return Err(format!("minpoly at {} must be monic of positive degree", slot));
            }
            if !roots_within_weil(&m, slot.norm()) {
                return Err(format!("minpoly {} at {} violates the Weil bound", m, slot));
            }
            Some(m)
        }
    };
    Ok(Eigen::NonK { minpoly })
}

/// All roots real with absolute value at most 2 sqrt(q). Exact up to degree 2,
/// numerical (Durand-Kerner) beyond.
pub fn roots_within_weil(m: &ZPoly, q: u64) -> bool {
    let q = BigInt::from(q);
    let c = m.coeffs();
    match m.degree() {
        Some(1) => {
            let r = -&c[0];
            &r * &r <= BigInt::from(4) * &q
        }
        Some(2) => {
            // x^2 + b x + c0: real roots, vertex inside, and nonnegative at +-2 sqrt(q)
            let (c0, b) = (&c[0], &c[1]);
            let disc = b * b - BigInt::from(4) * c0;
            let side = BigInt::from(4) * &q + c0;
            !disc.is_negative()
                && b * b <= BigInt::from(16) * &q
                && !side.is_negative()
                && &side * &side >= BigInt::from(4) * b * b * &q
        }
        Some(_) => {
            let bound = 2.0 * q.to_f64().unwrap_or(f64::MAX).sqrt();
            durand_kerner(m)
                .map(|roots| roots.iter().all(|r| r.im.abs() < 1e-6 && r.re.abs() <= bound + 1e-6))
                .unwrap_or(false)
        }
        None => false,
    }
}

fn durand_kerner(m: &ZPoly) -> Option<Vec<Complex64>> {
    let n = m.degree()?;
    let lead = m.lead().to_f64()?;
    let c: Vec<f64> = m.coeffs().iter().map(|a| a.to_f64().map(|x| x / lead)).collect::<Option<_>>()?;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let scale = 1.0 + c.iter().take(n).fold(0f64, |m, a| m.max(a.abs()));
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * scale).collect();
    for _ in 0..2000 {
        let mut delta = 0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-13 * scale {
            break;
        }
    }
    Some(roots)
}
