//! Acceptance run: one PASS/FAIL/SKIP line per criterion, with the tolerance and
//! time limit used. Criteria listed in KNOWN_FAILURES are reported but do not
//! fail the process; any other FAIL does.
//!
//! Criterion 10 needs the full eigenvalue data: set FERMAT53_FULL_DATA to a
//! directory holding level_2_2.json, level_2_3.json, level_3_2.json and
//! level_3_3.json.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

use fermat53::arith::nt::{inv_mod, is_prime, rat, valuation};
use fermat53::arith::poly::parse_zpoly;
use fermat53::arith::{KElt, PrimeSlotK, ZPoly};
use fermat53::conductor::{
    cond_q_table, d_valuation, eps_53, igusa_j, liu_classify, table31, Exponent,
    IgusaVec, Sign,
};
use fermat53::curves::{
    c53, congruence_check, darmon_plus_integral, e2, e3_minus, e3_plus, elliptic_trace, euler_factor,
    euler_factor_at, frey_ppp, split_over_k, t_of, tate_algorithm, Comparand, CongruenceModulus, LPoly2,
    QuadraticFamily,
};
use fermat53::eliminate::records::roots_within_weil;
use fermat53::eliminate::*;
use fermat53::ghost::{search, GhostBox, DEFAULT_BUDGET};
use fermat53::hgmsum::cm::{degenerate0, degenerate_inf, lift_trace};
use fermat53::hgmsum::trace::{hyp_trace_at, GAUSS_BUDGET};

/// Criteria that cannot pass as stated; see the README.
const KNOWN_FAILURES: &[u32] = &[11];
/// character sums are rounded to K within the recognition tolerance
const RECOGNIZED: &str = "exact; sums rounded within 1e-4";

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}
use Outcome::*;

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Pass(pass)
    } else {
        Fail(fail)
    }
}

fn kpair_count(slot: &PrimeSlotK, t: u64) -> [KElt; 2] {
    let inv = inv_mod(t as i64, slot.ell as i64).unwrap();
    let l = euler_factor_at(&c53(&rat(inv, 1)).unwrap(), slot).unwrap();
    split_over_k(&l).unwrap()
}

fn zp(s: &str) -> ZPoly {
    parse_zpoly(s).unwrap()
}

// 1. minimal polynomials of the traces at 11 for every residue, both routes
fn table_at_eleven() -> Outcome {
    let rows = [
        (2, "x + 5"),
        (3, "x^2 - 5"),
        (4, "x^2 - x - 1"),
        (5, "x - 2"),
        (6, "x^2 + 4*x - 1"),
        (7, "x^2 + 5*x - 5"),
        (8, "x^2 + 2*x - 19"),
        (9, "x^2 + 3*x + 1"),
        (10, "x^2 + x - 11"),
    ];
    let slot = PrimeSlotK::new(11).unwrap();
    let mut bad = Vec::new();
    for (t, want) in rows {
        let want = zp(want);
        let count = kpair_count(&slot, t)[0].min_poly();
        let sum = hyp_trace_at(&slot, t as i64).unwrap().min_poly();
        if count != want || sum != want {
            bad.push(format!("t={}: count {} sum {} want {}", t, count, sum, want));
        }
    }
    check(bad.is_empty(), "9/9 rows match by point count and by character sum".into(), bad.join("; "))
}

// 2. Euler factors at the norm 49, 11 and 29 slots and the two congruences
fn euler_factors_and_congruences() -> Outcome {
    let c = c53(&rat(3, 1)).unwrap();
    let d = darmon_plus_integral(5, &rat(1, 3)).unwrap();
    let e = e3_plus(&rat(3, 1)).unwrap();
    let rows: [(u64, usize, LPoly2, LPoly2, &str); 3] = [
        (7, 2, LPoly2::new(49, -10, 123), LPoly2::new(49, 20, 198), "x^2 + 10*x + 49"),
        (11, 1, LPoly2::new(11, 1, 21), LPoly2::new(11, -1, 21), "x^2 - 3*x + 11"),
        (29, 1, LPoly2::new(29, 2, 14), LPoly2::new(29, -5, 53), "x^2 + 6*x + 29"),
    ];
    let mut bad = Vec::new();
    for (ell, k, lc, ld, ep) in rows {
        let gc = euler_factor(&c, ell, k).unwrap();
        let gd = euler_factor(&d, ell, k).unwrap();
        let a = elliptic_trace(&e, ell, k).unwrap();
        let q = BigInt::from(ell.pow(k as u32));
        let got_ep = ZPoly::new(vec![q, -a, BigInt::one()]);
        if gc != lc || gd != ld || got_ep != zp(ep) {
            bad.push(format!("norm {}: {:?} {:?} {}", ell.pow(k as u32), gc, gd, got_ep));
        }
    }
    let slots: Vec<PrimeSlotK> = [7, 11, 29].iter().map(|&p| PrimeSlotK::new(p).unwrap()).collect();
    let three = congruence_check(&c, &Comparand::Sextic(d), CongruenceModulus::Three, &slots, true).unwrap();
    let five = congruence_check(&c, &Comparand::Elliptic(e), CongruenceModulus::Sqrt5, &slots, true).unwrap();
    if !three.iter().chain(&five).all(|r| r.pass == Some(true)) {
        bad.push("congruence check failed".into());
    }
    check(bad.is_empty(), "3 rows x 3 polynomials, congruences mod 3 and mod sqrt5 hold at all 3 slots".into(), bad.join("; "))
}

// 3. splitting, lifting and the degenerate values at 11
fn split_lift_degenerate() -> Outcome {
    let mut bad = Vec::new();
    let s = split_over_k(&LPoly2::new(11, 4, 6)).unwrap();
    let want = [KElt::new(4, -4).unwrap(), KElt::new(4, 4).unwrap()];
    if s != want {
        bad.push(format!("split gives {} {}", s[0], s[1]));
    }
    let l = lift_trace(&KElt::new(4, 4).unwrap(), 11, 2).unwrap().min_poly();
    if l != zp("x^2 - 4*x - 316") {
        bad.push(format!("lift has min poly {}", l));
    }
    let got: BTreeSet<String> = degenerate0(11, 0).unwrap().iter().map(|p| p.to_string()).collect();
    let want: BTreeSet<String> =
        ["x^2 - 4*x - 316", "x^2 + x - 101", "x^2 - 19*x - 61", "x^2 - 19*x + 59", "x^2 + 41*x + 419"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    if got != want {
        bad.push(format!("degenerate set {:?}", got));
    }
    check(bad.is_empty(), "2±2√5, x^2 - 4x - 316, five degenerate polynomials".into(), bad.join("; "))
}

// 4. both routes over every slot of norm <= 200
fn route_sweep() -> Outcome {
    let fam = QuadraticFamily::c53();
    let (mut slots, mut compared, mut skipped) = (0, 0, 0);
    let mut bad = Vec::new();
    for ell in (7..200u64).filter(|&p| is_prime(p) && 30 % p != 0) {
        for slot in PrimeSlotK::all_above(ell).unwrap() {
            if slot.norm() > 200 {
                continue;
            }
            slots += 1;
            let ts: Vec<u64> = (2..ell).collect();
            let inv: Vec<u64> = ts.iter().map(|&t| inv_mod(t as i64, ell as i64).unwrap() as u64).collect();
            let factors = fam.euler_factors(ell, slot.f_k() as usize, &inv);
            let within = ell.checked_pow(slot.f_f()).is_some_and(|q| q <= GAUSS_BUDGET);
            for (&t, l) in ts.iter().zip(factors) {
                if !within {
                    skipped += 1;
                    continue;
                }
                let count = split_over_k(&l.unwrap()).unwrap();
                let sum = hyp_trace_at(&slot, t as i64).unwrap().pair();
                compared += 1;
                if count != sum {
                    bad.push(format!("{} t={}: {} vs {}", slot, t, count[0], sum[0]));
                }
            }
        }
    }
    check(
        bad.is_empty() && compared > 0,
        format!("{} slots, {} residues agree, {} outside the budget", slots, compared, skipped),
        format!("{} disagreements: {}", bad.len(), bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")),
    )
}

fn printed_j(t: &BigRational) -> IgusaVec {
    let r = |n: i64| rat(n, 1);
    let p = |k: i32| t.pow(k);
    IgusaVec {
        j2: r(-1200) * p(2),
        j4: r(-480000) * p(4),
        j6: r(43520000) * p(6) + r(276480000) * p(5),
        j8: r(-70656000000) * p(8) - r(82944000000) * p(7),
        j10: r(2388787200000) * (p(10) - r(2) * p(9) + p(8)),
    }
}

fn pw(b: i64, e: i32) -> BigRational {
    rat(b, 1).pow(e)
}

// 5. Igusa invariants, the (I)/(V) value lists and the reduction regimes
fn igusa_and_liu() -> Outcome {
    let mut bad = Vec::new();
    // degree 10 in t: eleven points determine the identity
    let pts = ["2", "-1", "3/7", "-5/2", "11/13", "2/27", "1000/3", "7", "-9/4", "5/11", "13"];
    for s in pts {
        let t = t_of(s).unwrap();
        if igusa_j(&c53(&t).unwrap()).unwrap() != printed_j(&t) {
            bad.push(format!("J at t={}", s));
        }
    }
    for s in ["2", "-7/3", "11/5", "13/4", "17/2"] {
        let t = t_of(s).unwrap();
        let j = igusa_j(&c53(&t).unwrap()).unwrap();
        let one = rat(1, 1);
        let tm = &t - &one;
        let l17 = rat(17, 1) * &t + rat(108, 1);
        let l9 = rat(9, 1) * &t + rat(16, 1);
        let l23 = rat(23, 1) * &t + rat(27, 1);
        let ci: Vec<Option<BigRational>> = fermat53::conductor::liu::condition_i_values(&j);
        let want_i = vec![
            -pw(5, 5) * t.pow(2) / (rat(3, 1) * tm.pow(2)),
            -pw(5, 10) * t.pow(4) / (pw(3, 7) * tm.pow(4)),
            pw(5, 5) * &t * l17.pow(5) / (pw(3, 18) * tm.pow(6)),
            -pw(5, 10) * t.pow(3) * l23.pow(5) / (pw(3, 19) * tm.pow(8)),
            one.clone(),
        ];
        if ci != want_i.into_iter().map(Some).collect::<Vec<_>>() {
            bad.push(format!("(I) list at t={}", s));
        }
        let v = |ell| -> Vec<BigRational> {
            fermat53::conductor::liu::condition_v_quantities(&j, ell).unwrap().into_iter().map(|(n, d)| n / d).collect()
        };
        let want3 = vec![
            pw(3, 12) * pw(5, 4) * t.pow(2) / l17.pow(2),
            pw(3, 18) * tm.pow(6) / (pw(5, 5) * &t * l17.pow(5)),
            pw(3, 27) * tm.pow(3) * l9.pow(3) / l17.pow(6),
            pw(3, 18) * pw(5, 17) * t.pow(7) / (&l17 * tm.pow(6)),
            pw(3, 9) * pw(5, 5) * &t * l9.pow(3) / (&l17 * tm.pow(3)),
        ];
        let want5 = vec![
            pw(6, 4),
            -pw(2, 10) * pw(3, 6) * tm.pow(2) / (pw(5, 5) * t.pow(2)),
            pw(2, 12) * pw(3, 9) * &tm * &l9 / (pw(5, 4) * t.pow(2)),
            -pw(2, 2) * pw(3, 6) * pw(5, 5) * t.pow(2) / tm.pow(2),
            -pw(2, 2) * pw(3, 3) * rat(5, 1) * &l9 / &tm,
        ];
        if v(3) != want3 || v(5) != want5 {
            bad.push(format!("(V) lists at t={}", s));
        }
    }
    // the regimes, on a grid plus points close to 1
    let mut samples: Vec<BigRational> = Vec::new();
    for n in -30i64..=30 {
        for d in 1i64..=12 {
            if num_integer::Integer::gcd(&n, &d) == 1 {
                samples.push(rat(n, d));
            }
        }
    }
    for ell in [3i64, 5] {
        for k in 4..7 {
            for u in [1i64, 2, -1, 7] {
                samples.push(rat(1, 1) + rat(ell.pow(k) * u, 1));
                samples.push(rat(1, 1) + rat(ell.pow(k) * u, 7));
            }
        }
    }
    let mut counts = [0usize; 3];
    for t in samples.iter().filter(|t| !t.is_zero() && !t.is_one()) {
        let j = igusa_j(&c53(t).unwrap()).unwrap();
        let tm = t - rat(1, 1);
        for ell in [3u64, 5] {
            let v = valuation(&tm, ell).unwrap();
            let class = liu_classify(&j, ell).unwrap();
            if v > 3 {
                counts[0] += 1;
                if class.potentially_good() != Some(false) {
                    bad.push(format!("t={} at {}: {} with v(t-1)={}", t, ell, class.label(), v));
                }
            } else if v == 0 {
                let guard = ell == 5 || valuation(&(rat(17, 1) * t + rat(108, 1)), 3).is_some_and(|g| g <= 3);
                if guard {
                    counts[if ell == 5 { 1 } else { 2 }] += 1;
                    let want = if ell == 5 { "potentially-good-smooth" } else { "" };
                    let ok = class.potentially_good() == Some(true) && (want.is_empty() || class.label() == want);
                    if !ok {
                        bad.push(format!("t={} at {}: {}", t, ell, class.label()));
                    }
                }
            }
        }
    }
    check(
        bad.is_empty(),
        format!(
            "J's at {} points, 5x(I)+(V) lists, regimes on {} multiplicative / {} good-at-5 / {} good-at-3 samples",
            pts.len(),
            counts[0],
            counts[1],
            counts[2]
        ),
        bad.iter().take(5).cloned().collect::<Vec<_>>().join("; "),
    )
}

// 6. Tate's algorithm on the Frey and Catalan curves and the exponent table at 3
fn tate_checks() -> Outcome {
    let mut bad = Vec::new();
    for (t, n) in [(rat(-1, 1), 32), (rat(2, 1), 32), (rat(1, 2), 64)] {
        let got = fermat53::curves::conductor(&frey_ppp(&t).unwrap()).unwrap();
        if got != BigInt::from(n) {
            bad.push(format!("frey at {}: {}", t, got));
        }
    }
    for (t, v) in [(rat(1, 9), 6), (rat(8, 9), 5)] {
        let got = tate_algorithm(&e2(&t).unwrap(), 2).unwrap().f_p;
        if got != v {
            bad.push(format!("e2 at {}: {}", t, got));
        }
    }
    // one sample per row of the exponent table at 3
    let samples = [
        ("81", (1, 2)),
        ("82", (2, 2)),
        ("5", (2, 2)),
        ("2", (3, 3)),
        ("2/27", (2, 2)),
        ("1/27", (3, 3)),
        ("5/729", (3, 3)),
    ];
    for (s, want) in samples {
        let t = t_of(s).unwrap();
        let row = table31(&t).unwrap();
        let tp = tate_algorithm(&e3_plus(&t).unwrap(), 3).unwrap().f_p;
        let tm = tate_algorithm(&e3_minus(&t).unwrap(), 3).unwrap().f_p;
        if (row.plus, row.minus) != want || (tp, tm) != want {
            bad.push(format!("t={}: table {:?}, tate {:?}", s, (row.plus, row.minus), (tp, tm)));
        }
    }
    check(bad.is_empty(), format!("3 Frey conductors, 2 Catalan exponents, {} table rows", samples.len()), bad.join("; "))
}

fn t0_set(v: &[&str]) -> BTreeSet<BigRational> {
    v.iter().map(|s| t_of(s).unwrap()).collect()
}

// 7. ghost searches in the default box
fn ghosts() -> Outcome {
    let cases: [(u32, u32, Vec<&str>); 7] = [
        (5, 3, vec!["-32/343", "9/8", "-1/8", "25/24", "-1/24", "32/5", "3/8", "32/27", "5/8", "1024/1029"]),
        (7, 5, vec!["7/32", "25/32"]),
        (11, 3, vec!["-3/8", "-1/8", "9/8", "11/8"]),
        (13, 3, vec!["-1/8", "9/8"]),
        (13, 5, vec![]),
        (13, 7, vec![]),
        (13, 11, vec![]),
    ];
    let mut bad = Vec::new();
    let bx = GhostBox::default();
    for (q, r, want) in cases {
        let got: BTreeSet<BigRational> = search(q, r, &bx, DEFAULT_BUDGET).unwrap().iter().map(|g| g.t0(q, r)).collect();
        if got != t0_set(&want) {
            bad.push(format!("({},{}): {:?}", q, r, got.iter().map(|t| t.to_string()).collect::<Vec<_>>()));
        }
    }
    check(bad.is_empty(), format!("7 signatures in the box {:?}", (bx.a_max, bx.c_max, bx.e_max)), bad.join("; "))
}

// 8. irreducibility bounds
fn bounds() -> Outcome {
    let b2 = irreducibility_bound(2).unwrap();
    let b3 = irreducibility_bound(3).unwrap();
    let b5 = irreducibility_bound(5).unwrap();
    let got = (b2.product, b2.c, b3.c, b5.c);
    check(
        got == (Some(6084), 13, 41363281, 335809),
        "product 6084, C(2)=13, C(3)=41363281, C(5)=335809".into(),
        format!("{:?}", got),
    )
}

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/level22.json")
}

// 9. the level (2,2) fixture at the norm-11 slot
fn fixture_elimination() -> Outcome {
    let l = load_newforms(&fixture_path()).unwrap();
    let cv = vec![case_values(&PrimeSlotK::new(11).unwrap(), DEFAULT_NORM_CAP).unwrap()];
    let one = run_space((2, 2), &l.records, &cv, CaseSelection::only_case1()).unwrap();
    let all = run_space((2, 2), &l.records, &cv, CaseSelection::default()).unwrap();
    if one.verify().is_err() || all.verify().is_err() {
        return Fail("witness replay failed".into());
    }
    let max = one.forms.iter().filter_map(|f| f.bound).max();
    let at: Vec<&str> = one.forms.iter().filter(|f| f.bound == max).map(|f| f.label.as_str()).collect();
    let want: BTreeSet<&str> = ["3", "9", "12"].into();
    let nd: BTreeSet<&str> = all.non_discardable.iter().map(|s| s.as_str()).collect();
    let extra: Vec<&str> = all.non_discardable.iter().map(|s| s.as_str()).filter(|s| !want.contains(s)).collect();
    let above: BTreeSet<u64> = all.union.iter().copied().filter(|&p| p > 281).collect();
    check(
        max == Some(281) && want.is_subset(&nd) && one.non_discardable.is_empty(),
        format!(
            "case 1: max survivor 281 attained by {:?}; all cases: non-discardable {} contains 3,9,12, \
             extra {:?} (a=0 equals the degenerate value at this slot); case-2 survivors above 281: {:?}",
            at,
            all.non_discardable.join(","),
            extra,
            above
        ),
        format!("case 1 max {:?}, non-discardable {:?}", max, nd),
    )
}

// 10. full spaces, when the data is present
fn full_data() -> Outcome {
    let Some(dir) = std::env::var_os("FERMAT53_FULL_DATA") else {
        return Skip("FERMAT53_FULL_DATA not set; the full eigenvalue data is an optional download".into());
    };
    let primes = [
        7u64, 11, 13, 17, 19, 29, 31, 41, 59, 61, 71, 79, 89, 101, 109, 131, 139, 149, 151, 179, 181, 191, 199, 211,
        229, 239, 241, 251, 269, 271, 281, 311, 331, 349, 359, 379, 389,
    ];
    let expect: [((u32, u32), &[&str], &[u64]); 4] = [
        ((2, 2), &["3", "9", "12"], &[2, 3, 5, 11, 19, 29]),
        ((2, 3), &["1", "7", "11", "12", "13", "16", "21"], &[2, 3, 5, 7, 11, 13, 19, 29, 31]),
        ((3, 2), &["64", "65", "69", "73", "77", "78", "79"], &[2, 3, 5, 7, 11, 19, 29, 41, 61]),
        ((3, 3), &["22", "39"], &[2, 3, 5, 7, 11, 13, 19, 29, 31, 41, 61, 71, 79, 89, 101, 109]),
    ];
    let slots = fermat53::arith::slot::slots_for_primes(&primes, DEFAULT_NORM_CAP).unwrap();
    let cvs = case_values_many(&slots, DEFAULT_NORM_CAP).unwrap();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for ((i, j), nd_want, p_want) in expect {
        let path = Path::new(&dir).join(format!("level_{}_{}.json", i, j));
        let l = match load_newforms(&path) {
            Ok(l) => l,
            Err(e) => return Skip(format!("{}: {}", path.display(), e)),
        };
        let rep = run_space((i, j), &l.records, &cvs, CaseSelection::default()).unwrap();
        let nd: Vec<&str> = rep.non_discardable.iter().map(|s| s.as_str()).collect();
        let p_want: BTreeSet<u64> = p_want.iter().copied().collect();
        if nd != nd_want || !p_want.is_subset(&rep.union) {
            bad.push(format!("({},{}): non-discardable {:?}, P {:?}", i, j, nd, rep.union));
        }
        let extra: Vec<u64> = rep.union.difference(&p_want).copied().collect();
        if !extra.is_empty() {
            notes.push(format!("({},{}) extra {:?}", i, j, extra));
        }
    }
    check(bad.is_empty(), format!("4 levels; {}", if notes.is_empty() { "no extra primes".into() } else { notes.join(", ") }), bad.join("; "))
}

// 11. property suites
fn properties() -> Outcome {
    let mut failed: Vec<String> = Vec::new();
    let mut passed: Vec<String> = Vec::new();

    // Weil bounds and the functional equation on every computed factor and trace
    let fam = QuadraticFamily::c53();
    let slots: Vec<PrimeSlotK> = (7..400u64)
        .filter(|&p| is_prime(p) && 30 % p != 0)
        .flat_map(|p| PrimeSlotK::all_above(p).unwrap())
        .filter(|s| s.norm() <= DEFAULT_NORM_CAP)
        .collect();
    let (mut factors, mut weil_bad, mut fe_bad) = (0, 0, 0);
    for slot in &slots {
        let ts: Vec<u64> = (2..slot.ell).collect();
        for l in fam.euler_factors(slot.ell, slot.f_k() as usize, &ts).into_iter().flatten() {
            factors += 1;
            let norm = BigInt::from(l.q);
            if !l.weil_ok() || split_over_k(&l).map_or(true, |p| !p.iter().all(|a| a.weil_ok(&norm))) {
                weil_bad += 1;
            }
            let (c, r) = (l.char_poly(), l.l_poly());
            let q = BigInt::from(l.q);
            let mut rev = c.coeffs().to_vec();
            rev.reverse();
            let sym = (0..=2).all(|i| c.coeffs()[i] == q.pow(2 - i as u32) * &c.coeffs()[4 - i]);
            if rev != r.coeffs() || !sym {
                fe_bad += 1;
            }
        }
    }
    let fixture = load_newforms(&fixture_path()).unwrap();
    let eig_ok = fixture.records.iter().all(|r| {
        r.eigenvalues.iter().all(|(s, e)| match e {
            Eigen::K(a) => a.weil_ok(&BigInt::from(s.norm())),
            Eigen::NonK { minpoly: Some(m) } => roots_within_weil(m, s.norm()),
            Eigen::NonK { minpoly: None } => true,
        })
    });
    let line = format!("Weil: {} factors, {} breaches, fixture eigenvalues ok={}", factors, weil_bad, eig_ok);
    if weil_bad == 0 && eig_ok { passed.push(line) } else { failed.push(line) }
    let line = format!("functional equation: {} breaches", fe_bad);
    if fe_bad == 0 { passed.push(line) } else { failed.push(line) }

    // v_r(d(a, c)) >= 1 on random coprime pairs
    let mut rng = StdRng::seed_from_u64(0x5eed_0053);
    let mut dv_bad = Vec::new();
    for r in [3u32, 5, 7, 11, 13] {
        let q = if r == 5 { 3 } else { 5 };
        let mut n = 0;
        while n < 500 {
            let a: i64 = rng.gen_range(-10_000..=10_000);
            let c: i64 = rng.gen_range(-10_000..=10_000);
            if a == 0 || c == 0 || num_integer::Integer::gcd(&a, &c) != 1 {
                continue;
            }
            let (a, c) = (BigInt::from(a), BigInt::from(c));
            let Ok(dv) = d_valuation(&a, &c, q, r) else { continue };
            n += 1;
            if dv.v < 1 {
                dv_bad.push(format!("r={} a={} c={}", r, a, c));
            }
        }
    }
    let line = format!("v_r(d) >= 1 on 5x500 pairs: {} breaches", dv_bad.len());
    if dv_bad.is_empty() { passed.push(line) } else { failed.push(line) }

    // the printed epsilon_5 branch against the irreducibility test, mod 25
    let mut eps_bad = Vec::new();
    let mut eps_n = 0;
    for a in 0..25i64 {
        for c in 1..25i64 {
            if c % 5 == 0 || (a.pow(5) + c.pow(3)) % 5 == 0 {
                continue;
            }
            let (a2, c2) = if a == 0 { (25, c) } else { coprime_rep(a, c) };
            let (a2, c2) = (BigInt::from(a2), BigInt::from(c2));
            eps_n += 1;
            let (_, e5) = eps_53(&a2, &c2, 7).unwrap();
            let dv = d_valuation(&c2, &a2, 3, 5).unwrap();
            let table = cond_q_table(5, 3, &a2, &c2, Sign::Plus, true).unwrap().exponent;
            let want = if dv.irreducible { 3 } else { 2 };
            if e5 != want || table != Exponent::Exact(want) {
                eps_bad.push(format!("({},{})", a2, c2));
            }
        }
    }
    let line = format!("eps_5 vs d-valuation over {} residue pairs mod 25: {} disagree", eps_n, eps_bad.len());
    if eps_bad.is_empty() {
        passed.push(line)
    } else {
        failed.push(format!("{} (first {})", line, eps_bad.iter().take(4).cloned().collect::<Vec<_>>().join(" ")))
    }

    // degenerate set sizes and integrality of minimal polynomials
    let mut size_bad = Vec::new();
    let mut integral_bad = 0;
    for ell in (7..=400u64).filter(|&p| is_prime(p) && 30 % p != 0) {
        match (degenerate0(ell, 0), degenerate_inf(ell, 0)) {
            (Ok(d0), Ok(di)) => {
                if d0.len() > 5 || di.len() > 3 {
                    size_bad.push(format!("{}: {} {}", ell, d0.len(), di.len()));
                }
                let q = ell.pow(PrimeSlotK::new(ell).unwrap().f_f());
                for p in d0.iter().chain(&di) {
                    if p.coeffs().last() != Some(&BigInt::one()) || !roots_within_weil(p, q) {
                        integral_bad += 1;
                    }
                }
            }
            _ => integral_bad += 1,
        }
    }
    let line = format!("degenerate sizes <= 5 / <= 3 for ell <= 400: {} breaches", size_bad.len());
    if size_bad.is_empty() { passed.push(line) } else { failed.push(format!("{} {:?}", line, size_bad)) }
    let line = format!("monic integral min polys: {} breaches", integral_bad);
    if integral_bad == 0 { passed.push(line) } else { failed.push(line) }

    let summary = format!("passed: {}", passed.join("; "));
    if failed.is_empty() {
        Pass(summary)
    } else {
        Fail(format!("failed: {} | {}", failed.join("; "), summary))
    }
}

fn coprime_rep(a: i64, c: i64) -> (i64, i64) {
    let mut a2 = a;
    while num_integer::Integer::gcd(&a2, &c) != 1 {
        a2 += 25;
    }
    (a2, c)
}

fn main() {
    let criteria: Vec<(u32, &str, &str, u64, fn() -> Outcome)> = vec![
        (1, "traces at 11, both routes", RECOGNIZED, 5, table_at_eleven),
        (2, "Euler factors and congruences", "exact", 10, euler_factors_and_congruences),
        (3, "split, lift, degenerate values at 11", "exact", 5, split_lift_degenerate),
        (4, "route equivalence, norm <= 200", RECOGNIZED, 600, route_sweep),
        (5, "Igusa invariants and reduction regimes", "exact", 5, igusa_and_liu),
        (6, "Tate's algorithm", "exact", 5, tate_checks),
        (7, "ghost searches", "exact set equality", 120, ghosts),
        (8, "irreducibility bounds", "exact", 120, bounds),
        (9, "level (2,2) fixture at norm 11", "exact", 10, fixture_elimination),
        (10, "full spaces", "superset allowed, itemized", 3600, full_data),
        (11, "property suites", "exact", 600, properties),
    ];
    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    for (n, name, tol, limit, f) in criteria {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let (status, detail) = match out {
            Pass(d) if slow => ("FAIL", format!("{} (over the time limit)", d)),
            Pass(d) => ("PASS", d),
            Fail(d) => ("FAIL", d),
            Skip(d) => ("SKIP", d),
        };
        println!(
            "{} {:>2} {} [tol {}; {:.2}s of {}s] {}",
            status,
            n,
            name,
            tol,
            took.as_secs_f64(),
            limit,
            detail
        );
        if status == "FAIL" {
            if KNOWN_FAILURES.contains(&n) {
                known.push(n);
            } else {
                unexpected.push(n);
            }
        }
    }
    println!("known failures: {:?}; unexpected failures: {:?}", known, unexpected);
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
