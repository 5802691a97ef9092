//! Instrumented transforms. Each level i runs one factored sum
//! Σ_y ŷ·F_y over the cosets of G_{i−1}, with every product done as a
//! restricted product on precomputed configuration spaces.

use std::collections::{BTreeMap, HashMap};

use algebra_core::{enumerate_group, group_op, GroupChain, GroupElement, DEFAULT_SIZE_CAP};
use bratteli::BratteliDiagram;
use gt_rep::{element_to_path_coords, path_multiply, AdaptedRep, CMatrix, PathAlgebraElement, C64};

use crate::config::{is_unit, ConfigSpace};
use crate::counter::OpCounter;
use crate::error::{Result, SovError};
use crate::schedule::SovSchedule;

const VALIDATION_TOL: f64 = 1e-9;

/// Truncate an element of G_k that fixes everything above `hi` to G_hi.
fn restrict(g: &GroupElement, hi: usize) -> Result<GroupElement> {
    match g {
        GroupElement::Perm(p) if p.len() >= hi => {
            if p[hi..].iter().enumerate().all(|(j, &x)| x == hi + j) {
                return Ok(GroupElement::Perm(p[..hi].to_vec()));
            }
        }
        GroupElement::Signed(s) if s.len() >= hi => {
            if s[hi..].iter().enumerate().all(|(j, &x)| x == (hi + j + 1) as i32) {
                return Ok(GroupElement::Signed(s[..hi].to_vec()));
            }
        }
        GroupElement::Cyclic { .. } => return Ok(g.clone()),
        _ => {}
    }
    Err(SovError::Structure(format!("{g:?} does not lie in G_{hi}")))
}

/// Everything a level-i sum needs that does not depend on the data.
#[derive(Clone, Debug)]
pub struct LevelPlan {
    schedule: SovSchedule,
    partial: Vec<ConfigSpace>,
    stages: Vec<Vec<[u32; 3]>>,
    /// [slot][choice][key of the slot's space]; None is a structural zero.
    slot_values: Vec<Vec<Vec<Option<C64>>>>,
    /// F key → (level i−1 vertex, row, column).
    f_lookup: Vec<(usize, usize, usize)>,
    /// (level i vertex, row, column, index into the last partial space).
    assemble: Vec<(usize, usize, usize, usize)>,
}

/// Diagram vertex images of the classes in `marked`, read off a key.
fn images(space: &ConfigSpace, key: &[usize], nv: usize) -> Vec<usize> {
    let mut img = vec![usize::MAX; nv];
    for (&c, &x) in space.marked().iter().zip(key) {
        img[c] = x;
    }
    img
}

impl LevelPlan {
    pub fn new(rep: &AdaptedRep, schedule: SovSchedule, validate: bool) -> Result<LevelPlan> {
        let b = rep.diagram();
        let glue = schedule.glue().clone();
        let nv = glue.ambient().num_vertices();
        let npos = schedule.positions();
        let sigma = schedule.sigma().to_vec();
        let level = schedule.level();
        let fp = schedule.f_position();

        let spaces: Vec<ConfigSpace> =
            (0..npos).map(|p| ConfigSpace::new(schedule.factor_shape(p)?, b)).collect::<Result<_>>()?;
        let partial: Vec<ConfigSpace> =
            (0..npos).map(|t| ConfigSpace::new(schedule.partial_shape(t)?, b)).collect::<Result<_>>()?;

        let mut stages = Vec::with_capacity(npos.saturating_sub(1));
        for t in 1..npos {
            let shape = schedule.stage_shape(t)?;
            let stage = ConfigSpace::new(shape, b)?;
            let pl = partial[t - 1].positions_in(stage.marked())?;
            let pw = spaces[sigma[t]].positions_in(stage.marked())?;
            let po = partial[t].positions_in(stage.marked())?;
            let mut plan = Vec::with_capacity(stage.len());
            for eta in stage.keys() {
                let look = |space: &ConfigSpace, pos: &[usize]| {
                    let k: Vec<usize> = pos.iter().map(|&i| eta[i]).collect();
                    space.index_of(&k).ok_or_else(|| SovError::Structure(format!("stage {t}: {k:?} is not a morphism")))
                };
                plan.push([look(&partial[t - 1], &pl)? as u32, look(&spaces[sigma[t]], &pw)? as u32, look(&partial[t], &po)? as u32]);
            }
            stages.push(plan);
        }

        // Slot coordinates: the element restricted to G_hi, read on the segment.
        let mut slot_values = Vec::with_capacity(fp);
        for p in 0..fp {
            let (lo, hi) = schedule.specs()[p];
            let space = &spaces[p];
            let mut per_choice = Vec::new();
            for choice in schedule.choices(p) {
                let coords = element_to_path_coords(rep, &restrict(&choice.element, hi)?, hi)?;
                let mut vals = Vec::with_capacity(space.len());
                for key in space.keys() {
                    let img = images(space, key, nv);
                    let seg = |s: usize| -> Vec<usize> { (lo..=hi).map(|l| img[glue.vertex_class(s, l)]).collect() };
                    let (ps, qs) = (seg(p), seg(p + 1));
                    let beta = ps[ps.len() - 1];
                    let full = |s: &[usize]| -> Vec<usize> {
                        let mut v = rep.paths(s[0])[0].vertices.clone();
                        v.extend_from_slice(&s[1..]);
                        v
                    };
                    let (r, c) = (rep.path_index(beta, &full(&ps)), rep.path_index(beta, &full(&qs)));
                    let (Some(r), Some(c)) = (r, c) else {
                        return Err(SovError::Structure(format!("segment {ps:?} / {qs:?} is not a path")));
                    };
                    let x = coords.blocks.get(&beta).map_or(C64::new(0.0, 0.0), |m| m[(r, c)]);
                    vals.push(if x == C64::new(0.0, 0.0) { None } else { Some(x) });
                }
                per_choice.push(vals);
            }
            slot_values.push(per_choice);
        }

        let mut f_lookup = Vec::with_capacity(spaces[fp].len());
        for key in spaces[fp].keys() {
            let img = images(&spaces[fp], key, nv);
            let path = |s: usize| -> Vec<usize> { (0..level).map(|l| img[glue.vertex_class(s, l)]).collect() };
            let (ps, qs) = (path(fp), path(fp + 1));
            let beta = ps[level - 1];
            match (rep.path_index(beta, &ps), rep.path_index(beta, &qs)) {
                (Some(r), Some(c)) => f_lookup.push((beta, r, c)),
                _ => return Err(SovError::Structure(format!("F key {key:?} is not a pair of paths"))),
            }
        }

        let last = &partial[npos - 1];
        let mut assemble = Vec::new();
        for &alpha in b.level(level) {
            let ps = rep.paths(alpha);
            for (r, p) in ps.iter().enumerate() {
                'pairs: for (c, q) in ps.iter().enumerate() {
                    let mut img = vec![usize::MAX; nv];
                    for (s, path) in [(0, p), (npos, q)] {
                        for (l, &x) in path.vertices.iter().enumerate() {
                            let cl = glue.vertex_class(s, l);
                            if img[cl] != usize::MAX && img[cl] != x {
                                continue 'pairs;
                            }
                            img[cl] = x;
                        }
                    }
                    let key: Vec<usize> = last.marked().iter().map(|&cl| img[cl]).collect();
                    if let Some(i) = last.index_of(&key) {
                        assemble.push((alpha, r, c, i));
                    }
                }
            }
        }

        let plan = LevelPlan { schedule, partial, stages, slot_values, f_lookup, assemble };
        if validate {
            plan.validate_words(rep)?;
        }
        Ok(plan)
    }

    /// Check that every coset word multiplies out to its representative.
    pub fn validate_words(&self, rep: &AdaptedRep) -> Result<()> {
        let level = self.schedule.level();
        for (y, w) in self.schedule.words().iter().enumerate() {
            let mut acc = PathAlgebraElement::identity(rep, level);
            for (p, &c) in w[..self.schedule.f_position()].iter().enumerate() {
                acc = path_multiply(&acc, &element_to_path_coords(rep, &self.schedule.choices(p)[c].element, level)?)?;
            }
            let want = element_to_path_coords(rep, &self.schedule.cosets()[y], level)?;
            let err = acc.max_abs_diff(&want);
            if err > VALIDATION_TOL {
                return Err(SovError::Validation(format!("word {w:?} misses its coset representative by {err:e}")));
            }
        }
        Ok(())
    }

    pub fn schedule(&self) -> &SovSchedule {
        &self.schedule
    }

    /// Number of multiplications each stage would form for dense data.
    pub fn stage_sizes(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.len()).collect()
    }

    fn lift_f(&self, fhat: &PathAlgebraElement) -> Vec<Option<C64>> {
        self.f_lookup
            .iter()
            .map(|&(v, r, c)| Some(fhat.blocks.get(&v).map_or(C64::new(0.0, 0.0), |m| m[(r, c)])))
            .collect()
    }

    /// The L recursion on lifted data. Returns values on the last partial space.
    fn run(&self, f_values: &[Vec<Option<C64>>], counter: &mut OpCounter) -> Vec<Option<C64>> {
        let s = &self.schedule;
        let sigma = s.sigma();
        let fp = s.f_position();
        let vals = |p: usize, c: usize| -> &[Option<C64>] {
            if p == fp {
                &f_values[c]
            } else {
                &self.slot_values[p][c]
            }
        };
        let (mut mults, mut adds) = (0u64, 0u64);
        let mut map: BTreeMap<Vec<usize>, Vec<Option<C64>>> = BTreeMap::new();
        for w in s.words() {
            let key: Vec<usize> = sigma[1..].iter().map(|&p| w[p]).collect();
            let v = vals(sigma[0], w[sigma[0]]);
            match map.get_mut(&key) {
                None => {
                    map.insert(key, v.to_vec());
                }
                Some(acc) => {
                    for (a, &x) in acc.iter_mut().zip(v) {
                        match (a.as_mut(), x) {
                            (Some(a), Some(x)) => {
                                *a += x;
                                adds += 1;
                            }
                            (None, Some(x)) => *a = Some(x),
                            _ => {}
                        }
                    }
                }
            }
        }
        let mut l_structural = sigma[0] != fp;
        for t in 1..sigma.len() {
            let next = sigma[t];
            let w_structural = next != fp;
            let plan = &self.stages[t - 1];
            let out_len = self.partial[t].len();
            let mut out_map: BTreeMap<Vec<usize>, Vec<Option<C64>>> = BTreeMap::new();
            for (key, lv) in &map {
                let w = vals(next, key[0]);
                let out = out_map.entry(key[1..].to_vec()).or_insert_with(|| vec![None; out_len]);
                for &[a, b, o] in plan {
                    let (Some(x), Some(y)) = (lv[a as usize], w[b as usize]) else {
                        continue;
                    };
                    if !((l_structural && is_unit(x)) || (w_structural && is_unit(y))) {
                        mults += 1;
                    }
                    let z = x * y;
                    match &mut out[o as usize] {
                        Some(acc) => {
                            *acc += z;
                            adds += 1;
                        }
                        slot => *slot = Some(z),
                    }
                }
            }
            l_structural &= w_structural;
            map = out_map;
        }
        counter.add_mults(mults);
        counter.add_adds(adds);
        map.into_values().next().unwrap_or_default()
    }

    fn assemble(&self, rep: &AdaptedRep, out: &[Option<C64>]) -> PathAlgebraElement {
        let level = self.schedule.level();
        let mut res = PathAlgebraElement::zero(level);
        for &v in rep.diagram().level(level) {
            res.blocks.insert(v, CMatrix::zeros(rep.dim(v), rep.dim(v)));
        }
        for &(v, r, c, i) in &self.assemble {
            if let Some(x) = out.get(i).copied().flatten() {
                res.blocks.get_mut(&v).expect("level vertex")[(r, c)] = x;
            }
        }
        res
    }
}

/// Σ_y ŷ·F_y at the plan's level, where `fhats[y]` is F_y ∈ C[B_{i−1}] for
/// the y-th coset word.
pub fn sov_sum(rep: &AdaptedRep, plan: &LevelPlan, fhats: &[PathAlgebraElement], counter: &mut OpCounter) -> Result<PathAlgebraElement> {
    let level = plan.schedule.level();
    if fhats.len() != plan.schedule.words().len() {
        return Err(SovError::Schedule(format!("{} factors for {} cosets", fhats.len(), plan.schedule.words().len())));
    }
    if let Some(f) = fhats.iter().find(|f| f.level + 1 != level) {
        return Err(SovError::Schedule(format!("factor at level {} for a level-{level} sum", f.level)));
    }
    let lifted: Vec<Vec<Option<C64>>> = fhats.iter().map(|f| plan.lift_f(f)).collect();
    Ok(plan.assemble(rep, &plan.run(&lifted, counter)))
}

/// Counts for one transform, split by level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FftStats {
    pub total: OpCounter,
    /// Indexed by level; entry 0 holds the base-case summation.
    pub per_level: Vec<OpCounter>,
    /// Number of sums run at each level.
    pub calls: Vec<u64>,
}

/// The separation-of-variables transform along a whole chain.
#[derive(Clone, Debug)]
pub struct SovFft {
    rep: AdaptedRep,
    plans: Vec<LevelPlan>,
    base: usize,
    base_group: Vec<GroupElement>,
    pin: Option<usize>,
}

fn embedded_group(chain: &GroupChain, level: usize, n: usize) -> Result<Vec<GroupElement>> {
    let cap = std::env::var("GTSOV_SIZE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SIZE_CAP);
    enumerate_group(&chain.group(level), cap)?.iter().map(|h| Ok(chain.embed(h, level, n)?)).collect()
}

impl SovFft {
    pub fn new(rep: AdaptedRep) -> Result<SovFft> {
        let n = rep.n();
        SovFft::with_sigmas(rep, &vec![None; n + 1], false)
    }

    /// `sigmas[i]` overrides the folding order at level i.
    pub fn with_sigmas(rep: AdaptedRep, sigmas: &[Option<Vec<usize>>], validate: bool) -> Result<SovFft> {
        let n = rep.n();
        let mut plans = Vec::with_capacity(n);
        for i in 1..=n {
            let sigma = sigmas.get(i).cloned().flatten();
            let schedule = SovSchedule::for_chain(rep.chain(), rep.diagram(), i, sigma)?;
            plans.push(LevelPlan::new(&rep, schedule, validate)?);
        }
        let base_group = vec![rep.chain().group(0).identity()];
        let base_group = base_group.iter().map(|h| rep.chain().embed(h, 0, n)).collect::<std::result::Result<_, _>>()?;
        Ok(SovFft { rep, plans, base: 0, base_group, pin: None })
    }

    /// The transform of functions on G_n / G_{n−k}: F_y is supported on
    /// column paths through the trivial vertex at level n − k.
    pub fn homogeneous(rep: AdaptedRep, k: usize) -> Result<SovFft> {
        let n = rep.n();
        if k > n {
            return Err(SovError::Schedule(format!("k = {k} exceeds n = {n}")));
        }
        let base = n - k;
        let trivial = rep
            .diagram()
            .trivial_vertex(base)
            .ok_or_else(|| SovError::Unsupported(format!("no trivial vertex at level {base}")))?;
        let mut plans = Vec::with_capacity(k);
        for i in base + 1..=n {
            let schedule = SovSchedule::for_chain(rep.chain(), rep.diagram(), i, None)?.pinned(base, trivial)?;
            plans.push(LevelPlan::new(&rep, schedule, false)?);
        }
        let base_group = embedded_group(rep.chain(), base, n)?;
        Ok(SovFft { rep, plans, base, base_group, pin: Some(trivial) })
    }

    pub fn rep(&self) -> &AdaptedRep {
        &self.rep
    }

    pub fn base_level(&self) -> usize {
        self.base
    }

    pub fn plan(&self, level: usize) -> Option<&LevelPlan> {
        level.checked_sub(self.base + 1).and_then(|i| self.plans.get(i))
    }

    pub fn transform(&self, f: &HashMap<GroupElement, C64>, counter: &mut OpCounter) -> Result<PathAlgebraElement> {
        let (out, stats) = self.transform_with_stats(f)?;
        counter.merge(&stats.total);
        Ok(out)
    }

    pub fn transform_with_stats(&self, f: &HashMap<GroupElement, C64>) -> Result<(PathAlgebraElement, FftStats)> {
        let n = self.rep.n();
        let mut stats = FftStats {
            total: OpCounter::new(),
            per_level: vec![OpCounter::new(); n + 1],
            calls: vec![0; n + 1],
        };
        let x = self.rep.chain().group(n).identity();
        let out = self.rec(n, &x, f, &mut stats)?;
        for c in &stats.per_level {
            stats.total.merge(c);
        }
        Ok((out, stats))
    }

    fn rec(&self, level: usize, x: &GroupElement, f: &HashMap<GroupElement, C64>, stats: &mut FftStats) -> Result<PathAlgebraElement> {
        if level == self.base {
            let mut acc = C64::new(0.0, 0.0);
            for (j, h) in self.base_group.iter().enumerate() {
                acc += f.get(&group_op(x, h)?).copied().unwrap_or_default();
                if j > 0 {
                    stats.per_level[level].add_adds(1);
                }
            }
            stats.calls[level] += 1;
            let v = self.pin.unwrap_or(self.rep.diagram().root());
            let mut out = PathAlgebraElement::zero(level);
            out.blocks.insert(v, CMatrix::from_element(1, 1, acc));
            return Ok(out);
        }
        let plan = self.plan(level).expect("plan for every level above the base");
        let chain = self.rep.chain();
        let n = self.rep.n();
        let mut lifted = Vec::with_capacity(plan.schedule.cosets().len());
        for y in plan.schedule.cosets() {
            let xy = group_op(x, &chain.embed(y, level, n)?)?;
            let fhat = self.rec(level - 1, &xy, f, stats)?;
            lifted.push(plan.lift_f(&fhat));
        }
        let out = plan.run(&lifted, &mut stats.per_level[level]);
        stats.calls[level] += 1;
        Ok(plan.assemble(&self.rep, &out))
    }
}

/// One-shot transform with default schedules.
pub fn sov_fft(rep: &AdaptedRep, f: &HashMap<GroupElement, C64>, counter: &mut OpCounter) -> Result<PathAlgebraElement> {
    SovFft::new(rep.clone())?.transform(f, counter)
}

/// The canonical representative of each left coset gK, K = G_base inside
/// G_n: the smallest element of the coset. Sorted.
pub fn coset_representatives(chain: &GroupChain, n: usize, base: usize) -> Result<Vec<GroupElement>> {
    let k = embedded_group(chain, base, n)?;
    let mut reps: Vec<GroupElement> = embedded_group(chain, n, n)?
        .iter()
        .map(|g| canonical(g, &k))
        .collect::<Result<Vec<_>>>()?;
    reps.sort();
    reps.dedup();
    Ok(reps)
}

fn canonical(g: &GroupElement, k: &[GroupElement]) -> Result<GroupElement> {
    let mut best: Option<GroupElement> = None;
    for h in k {
        let x = group_op(g, h)?;
        if best.as_ref().is_none_or(|b| x < *b) {
            best = Some(x);
        }
    }
    Ok(best.expect("K contains the identity"))
}

/// f̃(g) = f(gK)/|K| for a function given on the representatives of
/// [`coset_representatives`], in that order.
pub fn invariant_lift(chain: &GroupChain, n: usize, base: usize, values: &[C64]) -> Result<HashMap<GroupElement, C64>> {
    let reps = coset_representatives(chain, n, base)?;
    if reps.len() != values.len() {
        return Err(SovError::Schedule(format!("{} values for {} cosets", values.len(), reps.len())));
    }
    let k = embedded_group(chain, base, n)?;
    let scale = 1.0 / k.len() as f64;
    let mut out = HashMap::new();
    for (r, &v) in reps.iter().zip(values) {
        for h in &k {
            out.insert(group_op(r, h)?, v * scale);
        }
    }
    Ok(out)
}

/// Fails unless f(gh) = f(g) for all g ∈ G_n and h ∈ G_base.
pub fn check_invariant(chain: &GroupChain, n: usize, base: usize, f: &HashMap<GroupElement, C64>) -> Result<()> {
    let k = embedded_group(chain, base, n)?;
    for g in embedded_group(chain, n, n)? {
        let fg = f.get(&g).copied().unwrap_or_default();
        for h in &k {
            let fgh = f.get(&group_op(&g, h)?).copied().unwrap_or_default();
            if (fgh - fg).norm() > 1e-12 * (1.0 + fg.norm()) {
                return Err(SovError::Validation(format!("f is not right G_{base}-invariant at {g:?}")));
            }
        }
    }
    Ok(())
}

/// Transform of a right G_{n−k}-invariant function on G_n.
pub fn homogeneous_sov_fft(
    rep: &AdaptedRep,
    k: usize,
    f: &HashMap<GroupElement, C64>,
    counter: &mut OpCounter,
) -> Result<PathAlgebraElement> {
    let n = rep.n();
    if k > n {
        return Err(SovError::Schedule(format!("k = {k} exceeds n = {n}")));
    }
    check_invariant(rep.chain(), n, n - k, f)?;
    SovFft::homogeneous(rep.clone(), k)?.transform(f, counter)
}

/// Predicted (multiplications, additions) per level for a whole transform
/// along `chain`, as (one sum at level i) × (number of sums at level i).
/// Works without explicit representations.
pub fn predict_fft_cost(chain: &GroupChain, diagram: &BratteliDiagram) -> Result<Vec<(num_bigint::BigUint, num_bigint::BigUint)>> {
    let n = chain.len();
    let mut out = vec![Default::default()];
    for i in 1..=n {
        let s = SovSchedule::for_chain(chain, diagram, i, None)?;
        let (m, a) = crate::schedule::predicted_cost(&s, diagram)?;
        let calls = chain.order(n) / chain.order(i);
        out.push((m * &calls, a * &calls));
    }
    Ok(out)
}
