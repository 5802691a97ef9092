use std::collections::HashMap;

use algebra_core::{enumerate_group, GroupChain, GroupElement, DEFAULT_SIZE_CAP};
use gt_rep::{block_rel_error, inverse_fourier, max_rel_error, naive_fourier, AdaptedRep, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sov_engine::*;

fn random_f(chain: &GroupChain, rng: &mut ChaCha8Rng) -> HashMap<GroupElement, C64> {
    let n = chain.len();
    enumerate_group(&chain.group(n), DEFAULT_SIZE_CAP)
        .unwrap()
        .into_iter()
        .map(|g| (g, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect()
}

#[test]
fn transforms_match_the_naive_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for chain in [
        GroupChain::symmetric(3),
        GroupChain::symmetric(4),
        GroupChain::hyperoctahedral(2),
        GroupChain::hyperoctahedral(3),
        GroupChain::cyclic(&[1, 2, 4]).unwrap(),
        GroupChain::cyclic(&[1, 3, 9, 27]).unwrap(),
    ] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let fft = SovFft::new(rep.clone()).unwrap();
        for _ in 0..3 {
            let f = random_f(&chain, &mut rng);
            let mut c = OpCounter::new();
            let fast = fft.transform(&f, &mut c).unwrap();
            let slow = naive_fourier(&rep, &f).unwrap();
            let err = block_rel_error(&fast, &slow);
            assert!(err < 1e-9, "{chain:?}: {err}");
            assert!(max_rel_error(&inverse_fourier(&rep, &fast).unwrap(), &f) < 1e-9);
        }
    }
}

fn delta(chain: &GroupChain) -> HashMap<GroupElement, C64> {
    [(chain.group(chain.len()).identity(), C64::new(1.0, 0.0))].into_iter().collect()
}

#[test]
fn measured_never_exceeds_predicted_per_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut chains: Vec<GroupChain> = (1..=5).map(GroupChain::symmetric).collect();
    chains.extend((1..=3).map(GroupChain::hyperoctahedral));
    chains.extend((1..=6).map(|k| GroupChain::cyclic_power(2, k).unwrap()));
    for chain in chains {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let fft = SovFft::new(rep.clone()).unwrap();
        let (_, stats) = fft.transform_with_stats(&random_f(&chain, &mut rng)).unwrap();
        let predicted = predict_fft_cost(&chain, rep.diagram()).unwrap();
        for i in 1..=n {
            assert_eq!(num_bigint::BigUint::from(stats.calls[i]), chain.order(n) / chain.order(i));
            assert!(stats.per_level[i].mults <= predicted[i].0, "{chain:?} level {i}");
            assert!(stats.per_level[i].adds <= predicted[i].1, "{chain:?} level {i}");
        }
    }
}

#[test]
fn predictions_sit_under_the_chain_bounds() {
    for n in 1..=5 {
        let chain = GroupChain::symmetric(n);
        let d = bratteli::symmetric_diagram(n).unwrap();
        let stats = GnStats::from_chain(&chain, &d).unwrap();
        for i in 1..=n {
            let (m, _) = predicted_cost(&SovSchedule::for_chain(&chain, &d, i, None).unwrap(), &d).unwrap();
            assert!(m <= stats.level_bound(i), "S{n} level {i}");
        }
    }
    for k in 1..=6 {
        let chain = GroupChain::cyclic_power(2, k).unwrap();
        let d = bratteli::cyclic_diagram(chain.tower()).unwrap();
        let stats = GnStats::from_chain(&chain, &d).unwrap();
        for i in 1..=k {
            let (m, _) = predicted_cost(&SovSchedule::for_chain(&chain, &d, i, None).unwrap(), &d).unwrap();
            assert!(m <= stats.level_bound(i), "C{} level {i}", 1 << k);
        }
    }
    for n in 1..=3 {
        let chain = GroupChain::hyperoctahedral(n);
        let d = bratteli::hyperoctahedral_diagram(n).unwrap();
        let (m, _) = predicted_cost(&SovSchedule::for_chain(&chain, &d, n, None).unwrap(), &d).unwrap();
        assert!(m <= b_level_bound(n), "B{n}");
    }
    for n in 1..=4 {
        let chain = GroupChain::type_d(n);
        let d = bratteli::type_d_diagram(n).unwrap();
        let (m, _) = predicted_cost(&SovSchedule::for_chain(&chain, &d, n, None).unwrap(), &d).unwrap();
        assert!(m <= d_level_bound(n), "D{n}");
    }
}

#[test]
fn flat_levels_cost_nothing() {
    // S_1 has only F and S_2 has a single ±1 factor.
    for i in 1..=2 {
        let chain = GroupChain::symmetric(2);
        let d = bratteli::symmetric_diagram(2).unwrap();
        let (m, _) = predicted_cost(&SovSchedule::for_chain(&chain, &d, i, None).unwrap(), &d).unwrap();
        assert_eq!(m, 0u32.into());
    }
}

#[test]
fn identity_coset_words_are_free() {
    for chain in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(3), GroupChain::type_d(3)] {
        let n = chain.len();
        let d = bratteli::build_diagram(chain.family().tag(), n, &[]).unwrap();
        let s = SovSchedule::for_chain(&chain, &d, n, None).unwrap();
        let e = s.cosets().iter().position(|g| g.is_identity()).unwrap();
        assert!((0..s.f_position()).all(|p| s.is_free(p, s.words()[e][p])));
    }
}

#[test]
fn delta_at_the_identity_gives_identity_blocks() {
    for chain in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2), GroupChain::cyclic(&[1, 2, 4]).unwrap()] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let out = sov_fft(&rep, &delta(&chain), &mut OpCounter::new()).unwrap();
        assert!(out.max_abs_diff(&gt_rep::PathAlgebraElement::identity(&rep, chain.len())) < 1e-12);
    }
}

#[test]
fn cyclic_four_is_the_classical_dft() {
    let chain = GroupChain::cyclic(&[1, 2, 4]).unwrap();
    let rep = AdaptedRep::new(&chain).unwrap();
    let xs = [C64::new(1.0, 0.5), C64::new(-2.0, 0.0), C64::new(0.25, 3.0), C64::new(0.0, -1.0)];
    let f: HashMap<GroupElement, C64> = (0..4).map(|v| (GroupElement::Cyclic { order: 4, value: v }, xs[v as usize])).collect();
    let out = sov_fft(&rep, &f, &mut OpCounter::new()).unwrap();
    for &v in rep.diagram().level(2) {
        let bratteli::Label::Residue(a) = rep.diagram().label(v) else { panic!() };
        let want: C64 = (0..4).map(|x| xs[x] * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (*a as f64) * x as f64 / 4.0)).sum();
        assert!((out.blocks[&v][(0, 0)] - want).norm() < 1e-12);
    }
}

fn all_orders(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_orders(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn folding_order_does_not_change_the_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for chain in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2)] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let base = SovSchedule::for_chain(&chain, rep.diagram(), n, None).unwrap();
        let fhats: Vec<gt_rep::PathAlgebraElement> = (0..base.cosets().len())
            .map(|_| {
                let g = random_f(&chain, &mut rng);
                let sub: HashMap<GroupElement, C64> = enumerate_group(&chain.group(n - 1), DEFAULT_SIZE_CAP)
                    .unwrap()
                    .into_iter()
                    .map(|h| {
                        let x = g[&chain.embed(&h, n - 1, n).unwrap()];
                        (h, x)
                    })
                    .collect();
                let small = AdaptedRep::new(&match chain.family() {
                    algebra_core::Family::Symmetric => GroupChain::symmetric(n - 1),
                    _ => GroupChain::hyperoctahedral(n - 1),
                })
                .unwrap();
                naive_fourier(&small, &sub).unwrap()
            })
            .collect();
        // Σ_y ŷ·F_y by plain path-algebra products
        let mut want = gt_rep::PathAlgebraElement::zero(n);
        for (y, fy) in base.cosets().iter().zip(&fhats) {
            let yy = gt_rep::element_to_path_coords(&rep, y, n).unwrap();
            let term = gt_rep::path_multiply(&yy, &gt_rep::embed_element(&rep, fy, n).unwrap()).unwrap();
            want = want.add(&term).unwrap();
        }
        let mut reference: Option<gt_rep::PathAlgebraElement> = None;
        for sigma in all_orders(base.positions()) {
            let s = SovSchedule::for_chain(&chain, rep.diagram(), n, Some(sigma.clone())).unwrap();
            let (pm, pa) = predicted_cost(&s, rep.diagram()).unwrap();
            let plan = LevelPlan::new(&rep, s, true).unwrap();
            let mut c = OpCounter::new();
            let got = sov_sum(&rep, &plan, &fhats, &mut c).unwrap();
            assert!(c.mults <= pm && c.adds <= pa, "{sigma:?}");
            assert!(got.max_abs_diff(&want) < 1e-9, "{sigma:?}");
            match &reference {
                None => reference = Some(got),
                Some(r) => assert!(got.max_abs_diff(r) < 1e-12, "{sigma:?}"),
            }
        }
        let plan = LevelPlan::new(&rep, base, false).unwrap();
        assert!(matches!(sov_sum(&rep, &plan, &fhats[1..], &mut OpCounter::new()), Err(SovError::Schedule(_))));
    }
}

#[test]
fn bad_orders_are_rejected() {
    let chain = GroupChain::symmetric(3);
    let d = bratteli::symmetric_diagram(3).unwrap();
    for sigma in [vec![0, 1], vec![0, 0, 1], vec![0, 1, 3]] {
        assert!(matches!(SovSchedule::for_chain(&chain, &d, 3, Some(sigma)), Err(SovError::Schedule(_))));
    }
}

#[test]
fn coset_words_validate_at_every_level() {
    for chain in [GroupChain::symmetric(5), GroupChain::hyperoctahedral(3), GroupChain::cyclic(&[1, 3, 9]).unwrap()] {
        let rep = AdaptedRep::new(&chain).unwrap();
        SovFft::with_sigmas(rep, &[], true).unwrap();
    }
}

#[test]
fn convolution_becomes_a_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for chain in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2)] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let (f, g) = (random_f(&chain, &mut rng), random_f(&chain, &mut rng));
        let elems = enumerate_group(&chain.group(n), DEFAULT_SIZE_CAP).unwrap();
        let mut conv: HashMap<GroupElement, C64> = HashMap::new();
        for x in &elems {
            for y in &elems {
                *conv.entry(algebra_core::group_op(x, y).unwrap()).or_default() += f[x] * g[y];
            }
        }
        let fft = SovFft::new(rep.clone()).unwrap();
        let mut c = OpCounter::new();
        let lhs = fft.transform(&conv, &mut c).unwrap();
        let rhs = gt_rep::path_multiply(&fft.transform(&f, &mut c).unwrap(), &fft.transform(&g, &mut c).unwrap()).unwrap();
        assert!(block_rel_error(&lhs, &rhs) < 1e-9);
    }
}

#[test]
fn homogeneous_transforms_match_the_invariant_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (chain, k) in [
        (GroupChain::symmetric(4), 2),
        (GroupChain::symmetric(3), 1),
        (GroupChain::hyperoctahedral(2), 1),
        (GroupChain::hyperoctahedral(3), 2),
    ] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let reps = coset_representatives(&chain, n, n - k).unwrap();
        assert_eq!(num_bigint::BigUint::from(reps.len()), chain.order(n) / chain.order(n - k));
        let vals: Vec<C64> = reps.iter().map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = invariant_lift(&chain, n, n - k, &vals).unwrap();
        let mut c = OpCounter::new();
        let out = homogeneous_sov_fft(&rep, k, &f, &mut c).unwrap();
        assert!(block_rel_error(&out, &naive_fourier(&rep, &f).unwrap()) < 1e-9);
    }
}

#[test]
fn homogeneous_costs_stay_under_their_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (n, k) in [(2usize, 1usize), (2, 2), (3, 1), (3, 2), (3, 3)] {
        let chain = GroupChain::hyperoctahedral(n);
        let rep = AdaptedRep::new(&chain).unwrap();
        let reps = coset_representatives(&chain, n, n - k).unwrap();
        let vals: Vec<C64> = reps.iter().map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.5)).collect();
        let f = invariant_lift(&chain, n, n - k, &vals).unwrap();
        let h = SovFft::homogeneous(rep.clone(), k).unwrap();
        let (_, stats) = h.transform_with_stats(&f).unwrap();
        for i in n - k + 1..=n {
            let (pm, _) = predicted_cost(h.plan(i).unwrap().schedule(), rep.diagram()).unwrap();
            let calls = num_bigint::BigUint::from(stats.calls[i]);
            assert!(stats.per_level[i].mults <= &pm * &calls);
            assert!(pm <= b_hom_level_bound(i, n - k), "B{n}/B{} level {i}", n - k);
        }
        assert!(stats.total.mults <= b_hom_bound(n, k).unwrap());
    }
    assert_eq!(b_hom_bound(2, 1).unwrap(), 20u32.into());
}

#[test]
fn full_quotient_is_the_ordinary_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let chain = GroupChain::symmetric(4);
    let rep = AdaptedRep::new(&chain).unwrap();
    let f = random_f(&chain, &mut rng);
    let (a, sa) = SovFft::homogeneous(rep.clone(), 4).unwrap().transform_with_stats(&f).unwrap();
    let (b, sb) = SovFft::new(rep).unwrap().transform_with_stats(&f).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-12);
    assert_eq!(sa.total, sb.total);
}

#[test]
fn non_invariant_functions_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let chain = GroupChain::symmetric(4);
    let rep = AdaptedRep::new(&chain).unwrap();
    let f = random_f(&chain, &mut rng);
    assert!(matches!(homogeneous_sov_fft(&rep, 2, &f, &mut OpCounter::new()), Err(SovError::Validation(_))));
}
