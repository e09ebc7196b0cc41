use num_bigint::BigInt;
use serde_json::json;
use std::fmt::Write;
use std::path::PathBuf;

use fermat53::arith::nt::{fmt_rat, inv_mod, rat};
use fermat53::arith::slot::slots_for_primes;
use fermat53::arith::{KElt, PrimeSlotK};
use fermat53::conductor::{catalan_cond, profile_53, reduction_53, ConductorProfile};
use fermat53::curves::{self, c53, euler_factor_at, split_over_k, t_of};
use fermat53::eliminate::{
    case_values_many, irreducibility_bound, run_space, CaseSelection, EliminationReport, Survivors,
};
use fermat53::ghost::{classify, reference_conductors, search, to_tsv, GhostBox};
use fermat53::hgmsum::cm::{degenerate0, degenerate_inf};
use fermat53::hgmsum::{hyp_trace, HGMParams};
use fermat53::{Error, Result};

use crate::config::{Format, RunConfig};
use crate::{Command, DegeneratePoint, Route};

fn pretty(v: &impl serde::Serialize) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("serializable"))
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<String> {
    match cmd {
        Command::Trace { params, ell, t0, route } => trace(params, *ell, *t0, *route, cfg),
        Command::Degenerate { ell, point } => degenerate(*ell, *point, cfg),
        Command::Conductor { a, c, p, t0, q, r } => conductor(a.as_deref(), c.as_deref(), *p, t0.as_deref(), *q, *r, cfg),
        Command::Ghost { q, r, search_box, allow_two } => ghost(*q, *r, search_box.as_deref(), *allow_two, cfg),
        Command::Bound { ell } => bound(*ell, cfg),
        Command::Eliminate { level, data, primes, cases, out, offline } => {
            eliminate(level, data, primes, cases, out.clone(), *offline, cfg)
        }
        Command::Tate { curve, t, p } => tate(curve, t, *p, cfg),
        Command::Igusa { t } => igusa(t, cfg),
    }
}

fn trace(params: &str, ell: u64, t0: i64, route: Route, cfg: &RunConfig) -> Result<String> {
    let params = HGMParams::parse(params)?;
    let slot = PrimeSlotK::new(ell)?;
    if 30 % ell == 0 {
        return Err(Error::domain("cli", format!("{} divides 30", ell)));
    }
    let t = t0.rem_euclid(ell as i64);
    if t == 0 || t == 1 {
        return Err(Error::domain("cli", format!("t0 = {} mod {} is degenerate; use `degenerate`", t, ell)));
    }
    if slot.norm() > cfg.norm_cap {
        return Err(Error::domain("cli", format!("norm {} above the cap {}", slot.norm(), cfg.norm_cap)));
    }
    let count = || -> Result<[KElt; 2]> {
        if params != HGMParams::fermat53_swapped() {
            return Err(Error::domain("cli", "the point-count route only covers the parameters 1/5,-1/5,1/3,-1/3"));
        }
        let inv = inv_mod(t, ell as i64).expect("t is a unit");
        let mut v = split_over_k(&euler_factor_at(&c53(&rat(inv, 1))?, &slot)?)?;
        v.sort();
        Ok(v)
    };
    let sum = || -> Result<([KElt; 2], String)> {
        let size = ell.checked_pow(fermat53::arith::Fq::ord_mod(ell, params.n) as u32);
        if size.is_none_or(|q| q > cfg.gauss_budget) {
            return Err(Error::domain("cli", "residue field exceeds the precision budget"));
        }
        let h = hyp_trace(&params, ell, 0, t)?;
        Ok((h.pair(), format!("{} and {}", h.raw[0], h.raw[1])))
    };
    let pair = match route {
        Route::Count => count()?,
        Route::Sum => sum()?.0,
        Route::Both => {
            let c = count()?;
            let (s, raw) = sum()?;
            if c != s {
                return Err(Error::oracle(
                    "cli",
                    format!("point count {} / {}, character sum {} / {} (raw {})", c[0], c[1], s[0], s[1], raw),
                ));
            }
            c
        }
    };
    let mp = pair[0].min_poly().to_string();
    let route = format!("{:?}", route).to_lowercase();
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "ell": ell, "t0": t, "norm": slot.norm(), "route": route,
            "value": pair[0].to_string(), "conjugate": pair[1].to_string(), "min_poly": mp,
        })),
        Format::Tsv => format!(
            "ell\tt0\tnorm\troute\tvalue\tconjugate\tmin_poly\n{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            ell,
            t,
            slot.norm(),
            route,
            pair[0],
            pair[1],
            mp
        ),
    })
}

fn degenerate(ell: u64, point: DegeneratePoint, cfg: &RunConfig) -> Result<String> {
    if !fermat53::arith::nt::is_prime(ell) || 30 % ell == 0 {
        return Err(Error::domain("cli", format!("{} is not a prime prime to 30", ell)));
    }
    let polys = match point {
        DegeneratePoint::Zero => degenerate0(ell, 0)?,
        DegeneratePoint::Inf => degenerate_inf(ell, 0)?,
    };
    let v: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
    Ok(match cfg.format {
        Format::Json => pretty(&json!({ "ell": ell, "min_polys": v })),
        Format::Tsv => format!("min_poly\n{}\n", v.join("\n")),
    })
}

fn profile_rows(p: &ConductorProfile, s: &mut String) {
    for e in &p.entries {
        let _ = writeln!(s, "{}\t{}\t{}", e.prime, e.exponent, e.source);
    }
    let _ = writeln!(s, "conductor\t{}\t", p);
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::domain("cli", format!("bad integer for {}: {:?}", what, s)))
}

#[allow(clippy::too_many_arguments)]
fn conductor(
    a: Option<&str>,
    c: Option<&str>,
    p: u32,
    t0: Option<&str>,
    q: u32,
    r: u32,
    cfg: &RunConfig,
) -> Result<String> {
    let (profile, t0) = match (a, c, t0) {
        (Some(a), Some(c), None) => {
            if (q, r) != (5, 3) {
                return Err(Error::domain("cli", "--a/--c predicts signature (5, 3) only"));
            }
            let (a, c) = (parse_int(a, "a")?, parse_int(c, "c")?);
            let profile = profile_53(&a, &c, p)?;
            let t0 = num_rational::BigRational::new(-a.pow(5), c.pow(3));
            (profile, t0)
        }
        (None, None, Some(t)) => {
            let t0 = t_of(t)?;
            let catalan = (r == 3 && (t0 == rat(-1, 8) || t0 == rat(9, 8))) || (r == 2 && (t0 == rat(1, 9) || t0 == rat(8, 9)));
            if catalan {
                (catalan_cond(q, &t0)?, t0)
            } else {
                let refs = reference_conductors(q, r).unwrap_or_default();
                match refs.into_iter().find(|(x, _, _)| *x == t0) {
                    Some((_, vq, vr)) => {
                        let mk = |prime: u64, e: u32| fermat53::conductor::PlaceEntry {
                            prime,
                            exponent: fermat53::conductor::Exponent::Exact(e),
                            source: "reference data".into(),
                        };
                        (ConductorProfile::new(vec![mk(q as u64, vq), mk(r as u64, vr)]), t0)
                    }
                    None => {
                        return Err(Error::domain(
                            "cli",
                            format!("no rule or reference entry for t0 = {} in signature ({}, {})", fmt_rat(&t0), q, r),
                        ))
                    }
                }
            }
        }
        _ => return Err(Error::domain("cli", "give --a and --c, or --t0")),
    };
    let reduction = if (q, r) == (5, 3) { reduction_53(&t0).ok() } else { None };
    Ok(match cfg.format {
        Format::Json => pretty(&json!({ "t0": fmt_rat(&t0), "profile": profile, "reduction": reduction })),
        Format::Tsv => {
            let mut s = String::from("prime\texponent\tsource\n");
            profile_rows(&profile, &mut s);
            if let Some(red) = reduction {
                let _ = writeln!(s, "reduction_3\t{}\tgenus-2 fibre at {}", red.at3.label(), fmt_rat(&t0));
                let _ = writeln!(s, "reduction_5\t{}\tgenus-2 fibre at {}", red.at5.label(), fmt_rat(&t0));
            }
            s
        }
    })
}

fn ghost(q: u32, r: u32, bx: Option<&str>, allow_two: bool, cfg: &RunConfig) -> Result<String> {
    let mut b = cfg.search_box;
    if let Some(s) = bx {
        let v: Vec<u64> = s
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::domain("cli", format!("bad box {:?}", s)))?;
        if v.len() != 3 {
            return Err(Error::domain("cli", "--box takes a_max,c_max,e_max"));
        }
        b = GhostBox { a_max: v[0], c_max: v[1], e_max: v[2] as u32, allow_two: b.allow_two };
    }
    b.allow_two |= allow_two;
    let found = search(q, r, &b, cfg.search_budget)?;
    Ok(match cfg.format {
        Format::Tsv => to_tsv(q, r, &found),
        Format::Json => {
            let rows: Vec<_> = found
                .iter()
                .map(|g| {
                    let cls = classify(g, q, r);
                    json!({
                        "t0": fmt_rat(&g.t0(q, r)),
                        "a": g.a, "c": g.c,
                        "exponents": [g.s, g.l, g.m, g.n, g.u, g.v],
                        "two": g.two, "sign": g.sign,
                        "classification": cls,
                    })
                })
                .collect();
            pretty(&json!({ "q": q, "r": r, "box": b, "ghosts": rows }))
        }
    })
}

fn bound(ell: u64, cfg: &RunConfig) -> Result<String> {
    let b = irreducibility_bound(ell)?;
    Ok(match cfg.format {
        Format::Json => pretty(&b),
        Format::Tsv => {
            let fact: Vec<String> = b
                .factorization
                .iter()
                .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{}^{}", p, e) })
                .collect();
            let head = match b.product {
                Some(p) => p.to_string(),
                None if fact.len() <= 8 => fact.join("·"),
                None => format!("{} primes up to {}", fact.len(), b.factorization.keys().max().unwrap()),
            };
            let mut s = format!("{} → C({})={}\n", head, ell, b.c);
            if b.per_f.len() > 1 {
                for (f, m) in &b.per_f {
                    let _ = writeln!(s, "f={}: largest prime {}", f, m);
                }
            }
            s
        }
    })
}

fn selection(cases: &[u8]) -> Result<CaseSelection> {
    let mut sel = CaseSelection { case1: false, case2: false, case3: false };
    for c in cases {
        match c {
            1 => sel.case1 = true,
            2 => sel.case2 = true,
            3 => sel.case3 = true,
            _ => return Err(Error::domain("cli", format!("no case {}", c))),
        }
    }
    if cases.is_empty() {
        return Err(Error::domain("cli", "no cases selected"));
    }
    Ok(sel)
}

fn largest(rep: &EliminationReport) -> Option<u64> {
    rep.forms.iter().filter_map(|f| f.bound).max()
}

fn eliminate(
    level: &[u32],
    data: &str,
    primes: &[u64],
    cases: &[u8],
    out: Option<PathBuf>,
    offline: bool,
    cfg: &RunConfig,
) -> Result<String> {
    let level = (level[0], level[1]);
    let sel = selection(cases)?;
    if primes.is_empty() {
        return Err(Error::domain("cli", "no primes given"));
    }
    let loaded = crate::source::load(data, &cfg.cache_dir(), offline)?;
    for d in &loaded.diagnostics {
        eprintln!("skipped record {} ({}): {}", d.index, d.label.as_deref().unwrap_or("?"), d.message);
    }
    if let Some(l) = loaded.level {
        if l != level {
            return Err(Error::data("cli", format!("data is for level {:?}, not {:?}", l, level)));
        }
    }
    let slots = slots_for_primes(primes, cfg.norm_cap)?;
    if slots.is_empty() {
        return Err(Error::domain("cli", "no usable slots among the given primes"));
    }
    let cvs = case_values_many(&slots, cfg.norm_cap)?;
    let rep = run_space(level, &loaded.records, &cvs, sel)?;
    rep.verify()?;
    let prefix = out.unwrap_or_else(|| PathBuf::from(format!("elimination_{}_{}", level.0, level.1)));
    let with_ext = |ext: &str| {
        let mut p = prefix.clone().into_os_string();
        p.push(ext);
        PathBuf::from(p)
    };
    let (tsv_path, json_path) = (with_ext(".tsv"), with_ext(".json"));
    let write = |p: &PathBuf, text: String| {
        std::fs::write(p, text).map_err(|e| Error::data("cli", format!("writing {}: {}", p.display(), e)))
    };
    write(&tsv_path, rep.to_tsv())?;
    write(&json_path, rep.to_json())?;
    if cfg.format == Format::Json {
        return Ok(rep.to_json() + "\n");
    }
    let mut s = String::new();
    let _ = writeln!(s, "non-discardable\t{}", rep.non_discardable.join(","));
    let all: Vec<String> = rep.union.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "surviving primes of discardable forms\t{}", all.join(","));
    if let Some(m) = largest(&rep) {
        let _ = writeln!(s, "largest surviving prime\t{}", m);
    }
    if sel.case1 && (sel.case2 || sel.case3) {
        let only1 = run_space(level, &loaded.records, &cvs, CaseSelection::only_case1())?;
        if let Some(m) = largest(&only1) {
            let _ = writeln!(s, "largest surviving prime, case 1 only\t{}", m);
        }
    }
    let perfect: Vec<String> = rep
        .forms
        .iter()
        .filter(|f| matches!(f.survivors, Survivors::All) && f.cm_consistent)
        .map(|f| f.label.clone())
        .collect();
    if !perfect.is_empty() {
        let _ = writeln!(s, "matched only by degenerate fibres\t{}", perfect.join(","));
    }
    let _ = writeln!(s, "report\t{}\t{}", tsv_path.display(), json_path.display());
    Ok(s)
}

fn tate(curve: &str, t: &str, p: Option<u64>, cfg: &RunConfig) -> Result<String> {
    let t = t_of(t)?;
    let e = match curve {
        "e3-plus" => curves::e3_plus(&t)?,
        "e3-minus" => curves::e3_minus(&t)?,
        "e2" => curves::e2(&t)?,
        "frey-ppp" => curves::frey_ppp(&t)?,
        "e-t" => curves::e_t_remark(&t)?,
        _ => return Err(Error::domain("cli", format!("unknown curve {:?}", curve))),
    };
    match p {
        Some(p) => {
            let d = curves::tate_algorithm(&e, p)?;
            Ok(match cfg.format {
                Format::Json => pretty(&d),
                Format::Tsv => format!(
                    "p\tkodaira\tf_p\tv_disc\treduction\ttamagawa\n{}\t{}\t{}\t{}\t{:?}\t{}\n",
                    d.p, d.kodaira, d.f_p, d.v_disc, d.reduction, d.tamagawa
                ),
            })
        }
        None => {
            let n = curves::conductor(&e)?;
            Ok(match cfg.format {
                Format::Json => pretty(&json!({ "conductor": n.to_string() })),
                Format::Tsv => format!("conductor\n{}\n", n),
            })
        }
    }
}

fn igusa(t: &str, cfg: &RunConfig) -> Result<String> {
    let t = t_of(t)?;
    let j = fermat53::conductor::igusa_j(&c53(&t)?)?;
    let red = reduction_53(&t)?;
    Ok(match cfg.format {
        Format::Json => pretty(&json!({ "t": fmt_rat(&t), "igusa": j, "reduction": red })),
        Format::Tsv => {
            let mut s = String::from("invariant\tvalue\n");
            for (name, v) in ["J2", "J4", "J6", "J8", "J10"].iter().zip(j.as_array()) {
                let _ = writeln!(s, "{}\t{}", name, fmt_rat(v));
            }
            let _ = writeln!(s, "reduction_3\t{}", red.at3.label());
            let _ = writeln!(s, "reduction_5\t{}", red.at5.label());
            s
        }
    })
}
