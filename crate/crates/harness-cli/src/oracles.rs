//! The computations behind each subcommand. Everything here returns plain
//! data or JSON values; printing and exit codes live in `cli`.

use std::collections::HashMap;
use std::time::Instant;

use algebra_core::{enumerate_group, verify_gl_cosets, Family, Field, GroupChain, GroupElement, DEFAULT_SIZE_CAP};
use bratteli::partition::partitions;
use bratteli::{build_diagram, BratteliDiagram};
use gt_rep::{block_rel_error, inverse_fourier, max_rel_error, naive_fourier, AdaptedRep, C64};
use num_bigint::BigUint;
use num_traits::Zero;
use quiver_count::{count_hom_bruteforce, h_shape, hform_closed_count, jump, multiplicity_bound};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sov_engine::{
    b_hom_bound, b_level_bound, b_total_bound, coset_representatives, d_level_bound, d_total_bound, gn_bound,
    gn_hom_bound, invariant_lift, predict_fft_cost, predicted_cost, GnStats, OpCounter, SovFft, SovSchedule,
};

use crate::error::{HarnessError, Result};
use crate::json::big;
use crate::report::RunReport;

/// Enumeration cap, overridable through GTSOV_SIZE_CAP.
pub fn size_cap() -> u64 {
    std::env::var("GTSOV_SIZE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SIZE_CAP)
}

pub fn parse_family(s: &str) -> Result<Family> {
    Family::parse(s).ok_or_else(|| HarnessError::Argument(format!("unknown family {s}")))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The chain named on the command line. For cyclic groups `n` is the order N
/// and the default tower climbs through its prime factors in increasing
/// order, so 12 gives 1 < 2 < 4 < 12.
pub fn chain_for(family: Family, n: usize, tower: Option<&[u64]>) -> Result<GroupChain> {
    match family {
        Family::Symmetric => Ok(GroupChain::symmetric(n)),
        Family::Hyperoctahedral => Ok(GroupChain::hyperoctahedral(n)),
        Family::TypeD => Ok(GroupChain::type_d(n)),
        Family::Cyclic => {
            let t = match tower {
                Some(t) => t.to_vec(),
                None => {
                    if n == 0 {
                        return Err(HarnessError::Argument("cyclic order must be positive".into()));
                    }
                    prime_factors(n as u64)
                        .into_iter()
                        .scan(1u64, |acc, p| {
                            *acc *= p;
                            Some(*acc)
                        })
                        .collect()
                }
            };
            let chain = GroupChain::cyclic(&t)?;
            if tower.is_some() && n != 0 && chain.order(chain.len()) != BigUint::from(n) {
                return Err(HarnessError::Argument(format!("tower {t:?} does not end at {n}")));
            }
            Ok(chain)
        }
        other => Err(HarnessError::Argument(format!("family {} has no diagram-based transform here", other.tag()))),
    }
}

pub fn diagram_for(chain: &GroupChain) -> Result<BratteliDiagram> {
    Ok(build_diagram(chain.family().tag(), chain.len(), chain.tower())?)
}

/// S4, B3, D2 by rank; cyclic groups by order, C27.
pub fn group_name(chain: &GroupChain) -> String {
    level_name(chain, chain.len())
}

fn level_name(chain: &GroupChain, i: usize) -> String {
    match chain.family() {
        Family::Cyclic => format!("C{}", chain.order(i)),
        f => format!("{}{i}", f.tag()),
    }
}

fn sorted_group(chain: &GroupChain) -> Result<Vec<GroupElement>> {
    let mut g = enumerate_group(&chain.group(chain.len()), size_cap())?;
    g.sort();
    Ok(g)
}

fn random_value(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A random complex function on the top group, drawn in sorted element order
/// so that a seed pins it down completely.
pub fn random_function(chain: &GroupChain, seed: u64) -> Result<HashMap<GroupElement, C64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sorted_group(chain)?.into_iter().map(|g| (g, random_value(&mut rng))).collect())
}

/// Whole-transform multiplication bound, when the family has one.
pub fn total_bound(chain: &GroupChain, d: &BratteliDiagram) -> Result<Option<BigUint>> {
    let n = chain.len();
    Ok(match chain.family() {
        Family::Hyperoctahedral => Some(b_total_bound(n)),
        Family::TypeD => Some(d_total_bound(n)),
        Family::Symmetric | Family::Cyclic => Some(gn_bound(&GnStats::from_chain(chain, d)?)),
        _ => None,
    })
}

/// Bound on one sum at level i.
pub fn level_bound(chain: &GroupChain, d: &BratteliDiagram, i: usize) -> Result<Option<BigUint>> {
    Ok(match chain.family() {
        Family::Hyperoctahedral => Some(b_level_bound(i)),
        Family::TypeD => Some(d_level_bound(i)),
        Family::Symmetric | Family::Cyclic => Some(GnStats::from_chain(chain, d)?.level_bound(i)),
        _ => None,
    })
}

fn sum_pairs(v: &[(BigUint, BigUint)]) -> (BigUint, BigUint) {
    v.iter().fold((BigUint::zero(), BigUint::zero()), |(m, a), (x, y)| (m + x, a + y))
}

/// One instrumented transform of a seeded random function, checked against
/// the naive sum and the inverse transform.
pub fn run_fft(chain: &GroupChain, seed: u64, timing: bool) -> Result<RunReport> {
    let rep = AdaptedRep::new(chain)?;
    let fft = SovFft::new(rep.clone())?;
    let f = random_function(chain, seed)?;
    let start = Instant::now();
    let (fast, stats) = fft.transform_with_stats(&f)?;
    let wall = start.elapsed().as_millis();
    let slow = naive_fourier(&rep, &f)?;
    let err = block_rel_error(&fast, &slow).max(max_rel_error(&inverse_fourier(&rep, &fast)?, &f));
    let predicted = sum_pairs(&predict_fft_cost(chain, rep.diagram())?);
    Ok(RunReport {
        group: group_name(chain),
        n: chain.len(),
        measured: (stats.total.mults.clone(), stats.total.adds.clone()),
        predicted,
        bound: total_bound(chain, rep.diagram())?,
        max_rel_err: Some(err),
        wall_ms: timing.then_some(wall),
        seed,
    })
}

fn c64_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// The naive transform of a seeded random function, block entry by block entry.
pub fn naive_report(chain: &GroupChain, seed: u64) -> Result<Value> {
    let rep = AdaptedRep::new(chain)?;
    let f = random_function(chain, seed)?;
    let fhat = naive_fourier(&rep, &f)?;
    let d = rep.diagram();
    let label_path = |p: &bratteli::PathRef| p.vertices.iter().skip(1).map(|&v| d.label(v).to_string()).collect::<Vec<_>>();
    let rows: Vec<Value> = fhat
        .entries(&rep)
        .into_iter()
        .map(|(p, q, z)| json!({"block": d.label(p.end()).to_string(), "row": label_path(&p), "col": label_path(&q), "value": c64_json(z)}))
        .collect();
    Ok(json!({"group": group_name(chain), "seed": seed, "entries": rows}))
}

/// Forward transform followed by the inverse; reports the round-trip error.
pub fn invert_report(chain: &GroupChain, seed: u64) -> Result<Value> {
    let rep = AdaptedRep::new(chain)?;
    let f = random_function(chain, seed)?;
    let mut counter = OpCounter::new();
    let fast = SovFft::new(rep.clone())?.transform(&f, &mut counter)?;
    let back = inverse_fourier(&rep, &fast)?;
    Ok(json!({
        "group": group_name(chain),
        "seed": seed,
        "round_trip_rel_err": max_rel_error(&back, &f),
    }))
}

/// Transform of a seeded random right G_{n−k}-invariant function.
pub fn homogeneous_report(chain: &GroupChain, k: usize, seed: u64, timing: bool) -> Result<RunReport> {
    let n = chain.len();
    if k == 0 || k > n {
        return Err(HarnessError::Argument(format!("k must lie in 1..={n}")));
    }
    let rep = AdaptedRep::new(chain)?;
    let reps = coset_representatives(chain, n, n - k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<C64> = reps.iter().map(|_| random_value(&mut rng)).collect();
    let f = invariant_lift(chain, n, n - k, &values)?;
    let fft = SovFft::homogeneous(rep.clone(), k)?;
    let start = Instant::now();
    let (fast, stats) = fft.transform_with_stats(&f)?;
    let wall = start.elapsed().as_millis();
    let err = block_rel_error(&fast, &naive_fourier(&rep, &f)?);
    let mut predicted = (BigUint::zero(), BigUint::zero());
    for i in n - k + 1..=n {
        let plan = fft.plan(i).ok_or_else(|| HarnessError::Argument(format!("no plan at level {i}")))?;
        let (m, a) = predicted_cost(plan.schedule(), rep.diagram())?;
        let calls = BigUint::from(stats.calls[i]);
        predicted.0 += m * &calls;
        predicted.1 += a * &calls;
    }
    let bound = match chain.family() {
        Family::Hyperoctahedral => Some(b_hom_bound(n, k)?),
        Family::Symmetric | Family::Cyclic => Some(gn_hom_bound(&GnStats::from_chain(chain, rep.diagram())?, k)?),
        _ => None,
    };
    Ok(RunReport {
        group: format!("{}/{}", group_name(chain), level_name(chain, n - k)),
        n,
        measured: (stats.total.mults.clone(), stats.total.adds.clone()),
        predicted,
        bound,
        max_rel_err: Some(err),
        wall_ms: timing.then_some(wall),
        seed,
    })
}

/// Per-level measured, predicted and bound multiplications for a whole
/// transform. Families without explicit matrices get the counting layer only.
pub fn verify_bounds(chain: &GroupChain, seed: u64) -> Result<Value> {
    let n = chain.len();
    let d = diagram_for(chain)?;
    let predicted = predict_fft_cost(chain, &d)?;
    let measured = match AdaptedRep::new(chain) {
        Ok(rep) => {
            let (_, stats) = SovFft::new(rep)?.transform_with_stats(&random_function(chain, seed)?)?;
            Some(stats)
        }
        Err(gt_rep::RepError::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut bound_sum = BigUint::zero();
    for i in 1..=n {
        let calls = chain.order(n) / chain.order(i);
        let schedule = SovSchedule::for_chain(chain, &d, i, None)?;
        let (per_sum, _) = predicted_cost(&schedule, &d)?;
        let lb = level_bound(chain, &d, i)?;
        let m = measured.as_ref().map(|s| s.per_level[i].mults.clone());
        let level_total = lb.as_ref().map(|b| b * &calls);
        if let Some(b) = &level_total {
            bound_sum += b;
        }
        let ok = m.as_ref().is_none_or(|m| *m <= predicted[i].0) && lb.as_ref().is_none_or(|b| per_sum <= *b);
        all_ok &= ok;
        rows.push(json!({
            "family": chain.family().tag(),
            "n": n,
            "level": i,
            "calls": big(&calls),
            "measured_mults": m.as_ref().map(big),
            "predicted_mults": big(&predicted[i].0),
            "predicted_adds": big(&predicted[i].1),
            "predicted_per_sum": big(&per_sum),
            "bound_per_sum": lb.as_ref().map(big),
            "bound_mults": level_total.as_ref().map(big),
            "ok": ok,
        }));
    }
    let (pm, pa) = sum_pairs(&predicted);
    let bound = total_bound(chain, &d)?;
    let total_ok = measured.as_ref().is_none_or(|s| s.total.mults <= pm) && bound.as_ref().is_none_or(|b| pm <= *b);
    Ok(json!({
        "group": group_name(chain),
        "n": n,
        "seed": seed,
        "measured": measured.as_ref().map(|s| json!({"mults": big(&s.total.mults), "adds": big(&s.total.adds)})),
        "predicted": {"mults": big(&pm), "adds": big(&pa)},
        "bound": bound.as_ref().map(big),
        "level_bound_sum": big(&bound_sum),
        "counting_only": measured.is_none(),
        "pass": all_ok && total_ok,
        "rows": rows,
    }))
}

fn bipartitions(i: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for a in 0..=i {
        for p in partitions(a as u32) {
            for q in partitions((i - a) as u32) {
                out.push((p.clone(), q));
            }
        }
    }
    out
}

/// Exhaustive checks of the two-step multiplicity bounds on the B and D
/// diagrams, the jump inequality for bipartitions, and the H-shape closed
/// form against brute force (the latter for i ≤ 5).
pub fn verify_appendix_c(n_max: usize) -> Result<Value> {
    if !(2..=8).contains(&n_max) {
        return Err(HarnessError::Argument(format!("n_max must lie in 2..=8, got {n_max}")));
    }
    let b = build_diagram("B", n_max, &[])?;
    let dd = build_diagram("D", n_max, &[])?;
    let mut rows = Vec::new();
    let mut record = |name: &str, i: usize, value: BigUint, limit: BigUint, pass: bool| {
        rows.push(json!({"check": name, "i": i, "value": big(&value), "limit": big(&limit), "pass": pass}));
    };
    for i in 2..=n_max {
        let m = multiplicity_bound(&b, i, 2)?;
        let two = BigUint::from(2u32);
        record("b_multiplicity", i, m.clone(), two.clone(), m <= two);
        let m = multiplicity_bound(&dd, i, 2)?;
        let three = BigUint::from(3u32);
        record("d_multiplicity", i, m.clone(), three.clone(), m <= three);
    }
    for i in 1..=n_max {
        let worst = bipartitions(i).iter().map(|(p, q)| (jump(p) + jump(q)) * (jump(p) + jump(q) + 1)).max().unwrap_or(0);
        record("jump_inequality", i, BigUint::from(worst), BigUint::from(6 * i), worst <= 6 * i);
    }
    for i in 2..=n_max.min(5) {
        let bi = build_diagram("B", i, &[])?;
        let closed = hform_closed_count(&bi, i)?;
        let brute = count_hom_bruteforce(&h_shape(i, i)?, &bi)?;
        let pass = closed == brute;
        record("hform_closed_form", i, closed, brute, pass);
    }
    let mut summary = serde_json::Map::new();
    for r in &rows {
        let name = r["check"].as_str().unwrap_or_default().to_string();
        let ok = r["pass"].as_bool().unwrap_or(false);
        let e = summary.entry(name).or_insert(Value::Bool(true));
        *e = Value::Bool(e.as_bool().unwrap_or(true) && ok);
    }
    let pass = summary.values().all(|v| v.as_bool() == Some(true));
    Ok(json!({"n_max": n_max, "checks": summary, "pass": pass, "rows": rows}))
}

/// Coset coverage of GL_{n−1}(q) in GL_n(q) by the factored representatives.
pub fn gl_cosets_report(n: usize, q: u32) -> Result<Value> {
    let field = Field::with_order(q)?;
    let cap = size_cap().max(1_000_000);
    let report = verify_gl_cosets(n, field, cap)?;
    serde_json::to_value(&report).map_err(|e| HarnessError::Argument(e.to_string()))
}

/// Factorization of a coset representative for the pair (x, y) ∈ F_q^n × F_q^n.
pub fn gl_factor_report(q: u32, x: &[i64], y: &[i64]) -> Result<Value> {
    let field = Field::with_order(q)?;
    if x.len() != y.len() || x.is_empty() {
        return Err(HarnessError::Argument("x and y need the same positive length".into()));
    }
    let conv = |v: &[i64]| v.iter().map(|&c| field.from_int(c)).collect::<Vec<_>>();
    let z = algebra_core::ZVector::new(field, conv(x), conv(y))?;
    let (_, normalized, fact) = algebra_core::gl::gl_coset_representative(field, &z)?;
    let steps: Vec<Value> = fact.steps.iter().map(|s| json!({"label": s.label(), "levels": [s.levels.0, s.levels.1]})).collect();
    Ok(json!({"q": q, "n": x.len(), "block": normalized.i, "labels": fact.labels(), "steps": steps}))
}

/// |Ĝ| check: Σ (dim ρ)² over top-level vertices.
pub fn dimension_square_sum(d: &BratteliDiagram) -> BigUint {
    d.level(d.n()).iter().map(|&v| d.dim(v) * d.dim(v)).fold(BigUint::zero(), |a, x| a + x)
}

