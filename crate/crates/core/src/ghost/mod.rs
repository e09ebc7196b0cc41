//! Ghost solutions: q^s r^l a^q ± q^m r^n + q^u r^v c^r = 0 with a, c prime to
//! qr, searched in boxes and classified where the conductor rules apply.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::nt::{exact_root, fmt_rat, is_prime, parse_rat, rat};
use crate::conductor::{
    catalan_cond, cond3_table, cond_q_table, cond_r_table, ConductorProfile, Exponent, Sign,
};
use crate::curves::{conductor as ec_conductor, frey_ppp};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostSolution {
    pub a: i64,
    pub c: i64,
    pub s: u32,
    pub l: u32,
    pub m: u32,
    pub n: u32,
    pub u: u32,
    pub v: u32,
    /// Powers of 2 on the three terms, nonzero only in searches that allow them.
    #[serde(default)]
    pub two: [u32; 3],
    /// Sign of the middle term, +1 or -1.
    pub sign: i8,
}

fn pw(b: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

impl GhostSolution {
    pub fn new(a: i64, c: i64, e: [u32; 6], sign: i8) -> Self {
        let [s, l, m, n, u, v] = e;
        GhostSolution { a, c, s, l, m, n, u, v, two: [0; 3], sign }
    }

    /// The three terms of the equation.
    pub fn terms(&self, q: u32, r: u32) -> [BigInt; 3] {
        let (q, r) = (q as u64, r as u64);
        let x = pw(q, self.s) * pw(r, self.l) * pw(2, self.two[0]) * num_traits::pow(BigInt::from(self.a), q as usize);
        let y = pw(q, self.m) * pw(r, self.n) * pw(2, self.two[1]) * BigInt::from(self.sign);
        let z = pw(q, self.u) * pw(r, self.v) * pw(2, self.two[2]) * num_traits::pow(BigInt::from(self.c), r as usize);
        [x, y, z]
    }

    pub fn satisfies(&self, q: u32, r: u32) -> bool {
        let [x, y, z] = self.terms(q, r);
        (x + y + z).is_zero()
    }

    /// -a^q q^(s-u) r^(l-v) 2^(x-z) / c^r
    pub fn t0(&self, q: u32, r: u32) -> BigRational {
        let [x, _, z] = self.terms(q, r);
        -BigRational::new(x, z)
    }

    pub fn normalized(&self, q: u32, r: u32) -> bool {
        let g = BigInt::from(q as u64 * r as u64);
        BigInt::from(self.a).gcd(&g).is_one()
            && BigInt::from(self.c).gcd(&g).is_one()
            && self.s.min(self.m).min(self.u) == 0
            && self.l.min(self.n).min(self.v) == 0
            && self.two.iter().min() == Some(&0)
            && self.a != 0
            && self.c != 0
    }

    fn exps(&self) -> [u32; 6] {
        [self.s, self.l, self.m, self.n, self.u, self.v]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostBox {
    pub a_max: u64,
    pub c_max: u64,
    pub e_max: u32,
    pub allow_two: bool,
}

impl Default for GhostBox {
    fn default() -> Self {
        GhostBox { a_max: 10_000, c_max: 10_000, e_max: 30, allow_two: false }
    }
}

/// Upper limit on (values of a) x (exponent patterns) x (signs).
pub const DEFAULT_BUDGET: u64 = 5_000_000_000;

/// Which of the three terms carries the positive power of one prime, if any.
fn prime_patterns(e_max: u32) -> Vec<Option<(usize, u32)>> {
    let mut v = vec![None];
    for w in 0..3 {
        for e in 1..=e_max {
            v.push(Some((w, e)));
        }
    }
    v
}

struct Filter {
    p: u64,
    is_power: Vec<bool>,
}

fn filters(q: u32, r: u32, allow_two: bool) -> Vec<Filter> {
    let mut out = vec![];
    let mut p = 7u64;
    while out.len() < 8 {
        p += 2;
        let excluded = p == q as u64 || p == r as u64 || (allow_two && p == 2);
        if excluded || !is_prime(p) || (p - 1) % r as u64 != 0 {
            continue;
        }
        let mut is_power = vec![false; p as usize];
        for x in 0..p {
            let mut y = 1u64;
            for _ in 0..r {
                y = y * x % p;
            }
            is_power[y as usize] = true;
        }
        out.push(Filter { p, is_power });
    }
    out
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    crate::arith::nt::pow_mod(b % m, e, m)
}

fn inv_mod(a: u64, m: u64) -> u64 {
    crate::arith::nt::inv_mod(a as i64, m as i64).unwrap() as u64
}

/// Exhaustive search of the box. Deduplicated by t0 and sorted by t0.
pub fn search(q: u32, r: u32, bx: &GhostBox, budget: u64) -> Result<Vec<GhostSolution>> {
    if !is_prime(q as u64) || !is_prime(r as u64) || q <= r || q < 3 {
        return Err(Error::domain("ghost", format!("need primes q > r, got ({}, {})", q, r)));
    }
    if bx.a_max == 0 || bx.c_max == 0 {
        return Err(Error::domain("ghost", "empty box"));
    }
    let pq = prime_patterns(bx.e_max);
    let p2 = if bx.allow_two && r != 2 { prime_patterns(bx.e_max) } else { vec![None] };
    let n_pat = (pq.len() * pq.len() * p2.len()) as u64;
    let work = n_pat.saturating_mul(4 * bx.a_max);
    if work > budget {
        return Err(Error::domain(
            "ghost",
            format!("box needs {} candidate evaluations, budget is {}", work, budget),
        ));
    }
    let mut primes = vec![q as u64, r as u64];
    if bx.allow_two && r != 2 {
        primes.push(2);
    }
    let mut patterns = vec![];
    for a in &pq {
        for b in &pq {
            for c in &p2 {
                patterns.push([*a, *b, *c]);
            }
        }
    }
    let avals: Vec<i64> = (-(bx.a_max as i64)..=bx.a_max as i64)
        .filter(|&a| a != 0 && primes.iter().all(|&p| a.rem_euclid(p as i64) != 0))
        .collect();
    let fl = filters(q, r, bx.allow_two);
    let aq_mod: Vec<Vec<u64>> = fl
        .iter()
        .map(|f| avals.iter().map(|&a| pow_mod(a.rem_euclid(f.p as i64) as u64, q as u64, f.p)).collect())
        .collect();
    let aq_f: Vec<f64> = avals.iter().map(|&a| (a as f64).powi(q as i32)).collect();
    let cr_bound = (bx.c_max as f64).powi(r as i32);

    let found: Vec<GhostSolution> = patterns
        .par_iter()
        .flat_map_iter(|pat| {
            let mut e = [[0u32; 3]; 3]; // e[term][prime index]
            for (pi, choice) in pat.iter().enumerate() {
                if let Some((w, k)) = choice {
                    e[*w][pi] = *k;
                }
            }
            let fac = |t: usize| -> BigInt {
                primes.iter().enumerate().map(|(i, &p)| pw(p, e[t][i])).product()
            };
            let (xb, yb, db) = (fac(0), fac(1), fac(2));
            let (xf, yf, df) = (xb.to_f64().unwrap(), yb.to_f64().unwrap(), db.to_f64().unwrap());
            let md = |x: &BigInt, p: u64| x.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            let fm: Vec<(u64, u64, u64)> = fl
                .iter()
                .map(|f| (md(&xb, f.p), md(&yb, f.p), inv_mod(md(&db, f.p), f.p)))
                .collect();
            let mut out = vec![];
            for sign in [1i8, -1] {
                for (ai, &a) in avals.iter().enumerate() {
                    let x = aq_f[ai] * xf;
                    let y = sign as f64 * yf;
                    let z = x + y;
                    let tol = 1e-9 * (x.abs() + y.abs()) + 1.0;
                    if z.abs() - tol > df * cr_bound * (1.0 + 1e-9) {
                        continue;
                    }
                    let mut pass = true;
                    for (fi, f) in fl.iter().enumerate() {
                        let (xm, ym, dinv) = fm[fi];
                        let xv = aq_mod[fi][ai] * xm % f.p;
                        let yv = if sign > 0 { ym } else { (f.p - ym) % f.p };
                        let zv = (2 * f.p - xv - yv) % f.p * dinv % f.p;
                        if !f.is_power[zv as usize] {
                            pass = false;
                            break;
                        }
                    }
                    if !pass {
                        continue;
                    }
                    let xbig = num_traits::pow(BigInt::from(a), q as usize) * &xb;
                    let ybig = &yb * BigInt::from(sign);
                    let zbig = -(xbig + ybig);
                    if zbig.is_zero() || !(&zbig % &db).is_zero() {
                        continue;
                    }
                    let Some(c) = exact_root(&(zbig / &db), r) else { continue };
                    let Some(c) = c.to_i64() else { continue };
                    if c == 0 || c.unsigned_abs() > bx.c_max || primes.iter().any(|&p| c.rem_euclid(p as i64) == 0) {
                        continue;
                    }
                    let mut g = GhostSolution::new(a, c, [e[0][0], e[0][1], e[1][0], e[1][1], e[2][0], e[2][1]], sign);
                    if primes.len() == 3 {
                        g.two = [e[0][2], e[1][2], e[2][2]];
                    }
                    out.push(g);
                }
            }
            out
        })
        .collect();

    let mut by_t0: BTreeMap<BigRational, GhostSolution> = BTreeMap::new();
    for g in found {
        if !g.satisfies(q, r) || !g.normalized(q, r) {
            return Err(Error::internal("ghost", format!("search produced an invalid tuple {:?}", g)));
        }
        let t = g.t0(q, r);
        let key = |h: &GhostSolution| (h.a, h.c, h.exps(), h.two, -h.sign);
        match by_t0.get(&t) {
            Some(h) if key(h) <= key(&g) => {}
            _ => {
                by_t0.insert(t, g);
            }
        }
    }
    Ok(by_t0.into_values().collect())
}

/// Outcome of classifying one ghost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Classification {
    Classified { profile: ConductorProfile, source: String },
    Unclassified { reason: String },
}

impl Classification {
    pub fn profile(&self) -> Option<&ConductorProfile> {
        match self {
            Classification::Classified { profile, .. } => Some(profile),
            Classification::Unclassified { .. } => None,
        }
    }
}

fn odd_prime_factor(n: u32) -> Option<u32> {
    (3..=n).step_by(2).find(|&p| n % p == 0 && is_prime(p as u64))
}

/// Conductor exponents at q and r for the plus motive at the ghost, where a
/// rule covers its shape.
pub fn classify(g: &GhostSolution, q: u32, r: u32) -> Classification {
    let t0 = g.t0(q, r);
    let catalan = (r == 3 && (t0 == rat(-1, 8) || t0 == rat(9, 8))) || (r == 2 && (t0 == rat(1, 9) || t0 == rat(8, 9)));
    if catalan {
        return match catalan_cond(q, &t0) {
            Ok(profile) => Classification::Classified { profile, source: format!("Catalan point {}", fmt_rat(&t0)) },
            Err(e) => Classification::Unclassified { reason: e.to_string() },
        };
    }
    if g.two != [0; 3] {
        return Classification::Unclassified { reason: "powers of 2 are outside the tables".into() };
    }
    if g.s + g.l + g.u + g.v != 0 {
        return Classification::Unclassified {
            reason: format!("exponent pattern (s, l, u, v) = ({}, {}, {}, {}) is outside the tables", g.s, g.l, g.u, g.v),
        };
    }
    // a^q ± q^m r^n + c^r = 0 reads as a solution with b^p = ±q^m r^n only when
    // some odd prime p divides both m and n.
    let p = match (g.m, g.n) {
        (0, 0) => Some(3),
        (m, n) => odd_prime_factor(m.gcd(&n)),
    };
    if p.is_none() {
        return Classification::Unclassified {
            reason: format!("middle term q^{} r^{} is not an odd prime power", g.m, g.n),
        };
    }
    let (a, c) = (BigInt::from(g.a), BigInt::from(g.c));
    let no_twist = (q, r) == (5, 3);
    let at_r = if r == 3 {
        cond3_table(&a, &c, q, no_twist)
    } else {
        cond_r_table(q, r, &a, &c, Sign::Plus, no_twist)
    };
    let at_q = cond_q_table(q, r, &a, &c, Sign::Plus, no_twist);
    match (at_r, at_q) {
        (Ok(x), Ok(y)) => Classification::Classified {
            profile: ConductorProfile::new(vec![x, y]),
            source: "solution-shaped ghost".into(),
        },
        (Err(e), _) | (_, Err(e)) => Classification::Unclassified { reason: e.to_string() },
    }
}

/// The Catalan ghosts written out explicitly, each with its signature.
pub fn example_catalog(q: u32) -> Result<Vec<(u32, u32, GhostSolution)>> {
    if q < 5 || q % 2 == 0 {
        return Err(Error::domain("ghost", "q must be odd and at least 5"));
    }
    let v = vec![
        (q, 3, GhostSolution::new(-1, -2, [0, 0, 0, 2, 0, 0], 1)),
        (q, 3, GhostSolution::new(1, -2, [0, 2, 0, 0, 0, 0], -1)),
        (q, 2, GhostSolution::new(-1, 3, [0, 0, 0, 3, 0, 0], -1)),
        (q, 2, GhostSolution::new(-1, 3, [0, 3, 0, 0, 0, 0], -1)),
    ];
    for (q, r, g) in &v {
        if !g.satisfies(*q, *r) {
            return Err(Error::internal("ghost", format!("catalog tuple {:?} fails", g)));
        }
    }
    Ok(v)
}

/// Conductors of the elliptic curves y^2 = x(x - 1)(1 - t x) at t0 = -1, 2, 1/2.
pub fn fermat_intro() -> Result<Vec<(BigRational, BigInt)>> {
    [rat(-1, 1), rat(2, 1), rat(1, 2)]
        .into_iter()
        .map(|t| Ok((t.clone(), ec_conductor(&frey_ppp(&t)?)?)))
        .collect()
}

#[derive(Clone, Debug, Deserialize)]
struct RefFile {
    signatures: Vec<RefSig>,
}

#[derive(Clone, Debug, Deserialize)]
struct RefSig {
    q: u32,
    r: u32,
    entries: Vec<RefEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct RefEntry {
    t0: String,
    vq: u32,
    vr: u32,
}

/// Published (t0, v_q, v_r) for a signature, if the signature is tabulated.
pub fn reference_conductors(q: u32, r: u32) -> Option<Vec<(BigRational, u32, u32)>> {
    let f: RefFile = serde_json::from_str(include_str!("../../data/ghost_conductors.json")).ok()?;
    let s = f.signatures.into_iter().find(|s| s.q == q && s.r == r)?;
    s.entries.into_iter().map(|e| Some((parse_rat(&e.t0)?, e.vq, e.vr))).collect()
}

fn exact_at(p: &ConductorProfile, prime: u32) -> Option<u32> {
    p.exponent(prime as u64).and_then(Exponent::exact)
}

/// Tab-separated export with one line per ghost.
pub fn to_tsv(q: u32, r: u32, ghosts: &[GhostSolution]) -> String {
    let refs = reference_conductors(q, r).unwrap_or_default();
    let mut s = String::from("t0_num\tt0_den\ta\tc\ts\tl\tm\tn\tu\tv\tsign\tvq\tvr\tclassification_source\n");
    for g in ghosts {
        let t = g.t0(q, r);
        let (vq, vr, src) = match classify(g, q, r) {
            Classification::Classified { profile, source } => {
                let f = |x: Option<u32>| x.map(|v| v.to_string()).unwrap_or_else(|| "?".into());
                (f(exact_at(&profile, q)), f(exact_at(&profile, r)), source)
            }
            Classification::Unclassified { reason } => match refs.iter().find(|(t1, _, _)| *t1 == t) {
                Some((_, vq, vr)) => (vq.to_string(), vr.to_string(), "reference data".to_string()),
                None => ("".into(), "".into(), format!("unclassified: {}", reason)),
            },
        };
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            t.numer(),
            t.denom(),
            g.a,
            g.c,
            g.s,
            g.l,
            g.m,
            g.n,
            g.u,
            g.v,
            if g.sign > 0 { "+" } else { "-" },
            vq,
            vr,
            src
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::t_of;

    fn t0s(q: u32, r: u32, bx: &GhostBox) -> Vec<BigRational> {
        search(q, r, bx, DEFAULT_BUDGET).unwrap().iter().map(|g| g.t0(q, r)).collect()
    }

    fn set(v: &[&str]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = v.iter().map(|s| t_of(s).unwrap()).collect();
        out.sort();
        out
    }

    #[test]
    fn small_box_five_three() {
        let bx = GhostBox { a_max: 100, c_max: 100, e_max: 12, allow_two: false };
        let got = t0s(5, 3, &bx);
        let want = set(&["-32/343", "9/8", "-1/8", "25/24", "-1/24", "32/5", "3/8", "32/27", "5/8", "1024/1029"]);
        assert_eq!(got, want);
        let small = GhostBox { a_max: 10, c_max: 10, e_max: 6, allow_two: false };
        let sub = t0s(5, 3, &small);
        assert!(sub.iter().all(|t| got.contains(t)));
    }

    #[test]
    fn catalog() {
        let c = example_catalog(5).unwrap();
        assert_eq!(c[0].2.t0(5, 3), rat(-1, 8));
        assert_eq!(c[1].2.t0(5, 3), rat(9, 8));
        assert_eq!(c[2].2.t0(5, 2), rat(1, 9));
        assert_eq!(c[3].2.t0(5, 2), rat(8, 9));
        for (q, r, g) in c {
            assert!(g.satisfies(q, r));
        }
    }

    #[test]
    fn classification() {
        let g = GhostSolution::new(1, -2, [0, 2, 0, 0, 0, 0], -1);
        let p = classify(&g, 5, 3);
        assert_eq!(p.profile().unwrap().to_string(), "3^3·(√5)^3");
        let g = GhostSolution::new(-1, 2, [2, 0, 0, 0, 0, 1], 1);
        assert_eq!(g.t0(5, 3), rat(25, 24));
        assert!(matches!(classify(&g, 5, 3), Classification::Unclassified { .. }));
        let g = GhostSolution::new(-2, -7, [0, 0, 3, 1, 0, 0], 1);
        assert!(g.satisfies(5, 3));
        assert!(matches!(classify(&g, 5, 3), Classification::Unclassified { .. }));
    }

    #[test]
    fn fermat_curves() {
        let v: Vec<BigInt> = fermat_intro().unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(v, vec![BigInt::from(32), BigInt::from(32), BigInt::from(64)]);
    }

    #[test]
    fn reference_data() {
        let r = reference_conductors(5, 3).unwrap();
        assert_eq!(r.len(), 10);
        assert_eq!(reference_conductors(13, 5).unwrap().len(), 0);
        assert!(reference_conductors(17, 3).is_none());
        let bx = GhostBox { a_max: 100, c_max: 100, e_max: 12, allow_two: false };
        let gh = search(5, 3, &bx, DEFAULT_BUDGET).unwrap();
        let tsv = to_tsv(5, 3, &gh);
        assert_eq!(tsv.lines().count(), 11);
        assert!(tsv.contains("-1\t8\t-1\t-2\t0\t0\t0\t2\t0\t0\t+\t3\t3\tCatalan point -1/8"));
    }

    #[test]
    fn budget_refused() {
        let bx = GhostBox { a_max: 1_000_000, c_max: 10, e_max: 30, allow_two: true };
        assert!(search(5, 3, &bx, DEFAULT_BUDGET).is_err());
    }
}
