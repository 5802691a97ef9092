use std::collections::BTreeMap;

use algebra_core::{enumerate_group, GroupChain, GroupElement, DEFAULT_SIZE_CAP};
use bratteli::BratteliDiagram;
use gt_rep::{element_to_path_coords, path_multiply, AdaptedRep, PathAlgebraElement, C64};
use num_bigint::BigUint;
use proptest::prelude::*;
use quiver_count::{count_hom_bruteforce, StrandGlue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sov_engine::*;

const TOL: f64 = 1e-12;

fn rc(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A dense random element on factor k of the glue.
fn random_factor(glue: &StrandGlue, k: usize, b: &BratteliDiagram, rng: &mut ChaCha8Rng) -> ConfigElement {
    let space = ConfigSpace::new(glue.factor_shape(k).unwrap(), b).unwrap();
    let values = space.keys().iter().map(|key| (key.clone(), rc(rng))).collect();
    ConfigElement { shape: space.shape().clone(), values, structural: false }
}

fn random_element(rep: &AdaptedRep, level: usize, rng: &mut ChaCha8Rng) -> PathAlgebraElement {
    let mut a = PathAlgebraElement::identity(rep, level);
    for m in a.blocks.values_mut() {
        for x in m.iter_mut() {
            *x = rc(rng);
        }
    }
    a
}

#[test]
fn identity_lifts_to_ones_on_the_diagonal() {
    let rep = AdaptedRep::new(&GroupChain::symmetric(4)).unwrap();
    let e = PathAlgebraElement::identity(&rep, 4);
    let c = lift_to_config(&rep, &e, (1, 3)).unwrap();
    let space = ConfigSpace::new(c.shape.clone(), rep.diagram()).unwrap();
    let glue = StrandGlue::new(4, &[(1, 3)]).unwrap();
    let middle: Vec<usize> = (0..2).map(|s| space.marked().iter().position(|&v| v == glue.vertex_class(s, 2)).unwrap()).collect();
    assert_eq!(c.values.len(), space.len());
    for (key, x) in &c.values {
        let diagonal = key[middle[0]] == key[middle[1]];
        assert_eq!(*x, C64::new(if diagonal { 1.0 } else { 0.0 }, 0.0), "{key:?}");
    }
}

#[test]
fn top_reflection_lives_on_a_two_step_window() {
    let n = 3;
    let chain = GroupChain::hyperoctahedral(n);
    let rep = AdaptedRep::new(&chain).unwrap();
    let s = chain.generator(n).unwrap();
    let coords = element_to_path_coords(&rep, &s.element, n).unwrap();
    let c = lift_to_config(&rep, &coords, (n - 2, n)).unwrap();
    // shared vertex at n−2, one middle vertex per strand, shared top
    assert_eq!(c.shape.marked_vertices().count(), 4);
    assert_eq!(c.shape.marked_edges().count(), 4);
    assert!(c.values.keys().all(|k| k.len() == 4));
    assert_eq!(unlift_config(&rep, &c, (n - 2, n), n).unwrap().max_abs_diff(&coords), 0.0);
    assert!(matches!(lift_to_config(&rep, &coords, (n - 1, n)), Err(SovError::Structure(_))));
}

#[test]
fn full_interval_lift_is_a_reindexing_of_path_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for chain in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2)] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let a = random_element(&rep, n, &mut rng);
        let c = lift_to_config(&rep, &a, (0, n)).unwrap();
        assert_eq!(BigUint::from(c.values.len()), rep.diagram().level_algebra_dim(n));
        assert_eq!(unlift_config(&rep, &c, (0, n), n).unwrap(), a);
    }
}

#[test]
fn full_interval_products_are_path_algebra_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for chain in [GroupChain::symmetric(3), GroupChain::symmetric(4), GroupChain::hyperoctahedral(2)] {
        let rep = AdaptedRep::new(&chain).unwrap();
        let n = chain.len();
        let glue = StrandGlue::new(n, &[(0, n), (0, n)]).unwrap();
        let (a, b) = (random_element(&rep, n, &mut rng), random_element(&rep, n, &mut rng));
        let mut c = OpCounter::new();
        let prod = restricted_product(&lift_into(&rep, &a, &glue, 0).unwrap(), &lift_into(&rep, &b, &glue, 1).unwrap(), rep.diagram(), &mut c).unwrap();
        let back = unlift_strands(&rep, &prod, &glue, (0, 2)).unwrap();
        assert!(back.max_abs_diff(&path_multiply(&a, &b).unwrap()) < TOL);
        // one product per triple (P, Q, Q′) ending at a common vertex
        let triples: u64 = rep.diagram().level(n).iter().map(|&v| (rep.dim(v) as u64).pow(3)).sum();
        assert_eq!(c.mults, BigUint::from(triples));
    }
}

#[test]
fn multiplying_by_the_identity_is_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rep = AdaptedRep::new(&GroupChain::symmetric(4)).unwrap();
    let glue = StrandGlue::new(4, &[(1, 4), (1, 4)]).unwrap();
    let f = random_factor(&glue, 0, rep.diagram(), &mut rng);
    let e = lift_into(&rep, &PathAlgebraElement::identity(&rep, 4), &glue, 1).unwrap().into_structural();
    let mut c = OpCounter::new();
    let p = restricted_product(&f, &e, rep.diagram(), &mut c).unwrap();
    assert!(c.is_zero(), "{c:?}");
    let f_img = unlift_strands(&rep, &f, &glue, (0, 1)).unwrap();
    assert!(unlift_strands(&rep, &p, &glue, (0, 2)).unwrap().max_abs_diff(&f_img) < TOL);
}

#[test]
fn dense_product_cost_is_the_union_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let rep = AdaptedRep::new(&GroupChain::symmetric(3)).unwrap();
    let b = rep.diagram();
    let glue = StrandGlue::new(3, &[(1, 3), (0, 2)]).unwrap();
    let f = random_factor(&glue, 0, b, &mut rng);
    let g = random_factor(&glue, 1, b, &mut rng);
    let mut c = OpCounter::new();
    let p = restricted_product(&f, &g, b, &mut c).unwrap();
    let union = count_hom_bruteforce(&glue.union_shape(&[0, 1]).unwrap(), b).unwrap();
    assert_eq!(c.mults, union);
    assert_eq!(c.adds, union - BigUint::from(p.values.len()));
}

#[test]
fn mismatched_ambients_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rep = AdaptedRep::new(&GroupChain::symmetric(3)).unwrap();
    let g1 = StrandGlue::new(3, &[(0, 3), (0, 3)]).unwrap();
    let g2 = StrandGlue::new(3, &[(1, 3), (0, 2)]).unwrap();
    let f = random_factor(&g1, 0, rep.diagram(), &mut rng);
    let g = random_factor(&g2, 1, rep.diagram(), &mut rng);
    assert!(matches!(restricted_product(&f, &g, rep.diagram(), &mut OpCounter::new()), Err(SovError::Gluing(_))));
}

#[test]
fn group_elements_lift_structurally() {
    let chain = GroupChain::symmetric(3);
    let rep = AdaptedRep::new(&chain).unwrap();
    for g in enumerate_group(&chain.group(3), DEFAULT_SIZE_CAP).unwrap() {
        let c = element_config(&rep, &g, 3, (0, 3)).unwrap();
        assert!(c.structural);
        assert!(c.values.values().all(|x| *x != C64::new(0.0, 0.0)));
        let back = unlift_config(&rep, &c, (0, 3), 3).unwrap();
        assert!(back.max_abs_diff(&element_to_path_coords(&rep, &g, 3).unwrap()) < TOL);
    }
    let e = element_config(&rep, &GroupElement::Perm(vec![0, 1, 2]), 3, (0, 3)).unwrap();
    assert!(e.values.values().all(|x| *x == C64::new(1.0, 0.0)));
}

fn intervals(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..=n).prop_flat_map(move |lo| (Just(lo), lo..=n))
}

/// Intervals with lo < hi. A point interval glues its two strands along
/// their whole length, and summing out a vertex shared by two such factors
/// forgets its ambient neighbours, so bracketing can matter there.
fn proper_intervals(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..n).prop_flat_map(move |lo| (Just(lo), lo + 1..=n))
}

fn triple_free(glue: &StrandGlue) -> bool {
    let (v0, a0) = glue.factor_classes(0);
    let (v1, a1) = glue.factor_classes(1);
    let (v2, a2) = glue.factor_classes(2);
    v0.iter().all(|v| !(v1.contains(v) && v2.contains(v))) && a0.iter().all(|a| !(a1.contains(a) && a2.contains(a)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn restricted_product_commutes(i in intervals(4), j in intervals(4), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = AdaptedRep::new(&GroupChain::symmetric(4)).unwrap();
        let glue = StrandGlue::new(4, &[i, j]).unwrap();
        let f = random_factor(&glue, 0, rep.diagram(), &mut rng);
        let g = random_factor(&glue, 1, rep.diagram(), &mut rng);
        let (mut c1, mut c2) = (OpCounter::new(), OpCounter::new());
        let fg = restricted_product(&f, &g, rep.diagram(), &mut c1).unwrap();
        let gf = restricted_product(&g, &f, rep.diagram(), &mut c2).unwrap();
        prop_assert_eq!(&fg.shape, &gf.shape);
        prop_assert!(fg.max_abs_diff(&gf) < TOL);
        prop_assert_eq!(c1, c2);
    }

    #[test]
    fn restricted_product_associates(i in proper_intervals(4), j in proper_intervals(4), k in proper_intervals(4), seed in any::<u64>()) {
        let glue = StrandGlue::new(4, &[i, j, k]).unwrap();
        prop_assume!(triple_free(&glue));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = AdaptedRep::new(&GroupChain::symmetric(4)).unwrap();
        let b = rep.diagram();
        let f: Vec<ConfigElement> = (0..3).map(|t| random_factor(&glue, t, b, &mut rng)).collect();
        let mut c = OpCounter::new();
        let left = restricted_product(&restricted_product(&f[0], &f[1], b, &mut c).unwrap(), &f[2], b, &mut c).unwrap();
        let right = restricted_product(&f[0], &restricted_product(&f[1], &f[2], b, &mut c).unwrap(), b, &mut c).unwrap();
        prop_assert_eq!(&left.shape, &right.shape);
        let scale = left.values.values().map(|x| x.norm()).fold(1.0, f64::max);
        prop_assert!(left.max_abs_diff(&right) < 1e-12 * scale);
    }

    #[test]
    fn restricted_product_is_bilinear(i in intervals(3), j in intervals(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = AdaptedRep::new(&GroupChain::symmetric(3)).unwrap();
        let b = rep.diagram();
        let glue = StrandGlue::new(3, &[i, j]).unwrap();
        let (f1, f2, g) = (random_factor(&glue, 0, b, &mut rng), random_factor(&glue, 0, b, &mut rng), random_factor(&glue, 1, b, &mut rng));
        let s = rc(&mut rng);
        let mut comb = f1.clone();
        comb.values = f1.values.iter().map(|(k, x)| (k.clone(), x + s * f2.get(k))).collect::<BTreeMap<_, _>>();
        let mut c = OpCounter::new();
        let lhs = restricted_product(&comb, &g, b, &mut c).unwrap();
        let p1 = restricted_product(&f1, &g, b, &mut c).unwrap();
        let p2 = restricted_product(&f2, &g, b, &mut c).unwrap();
        let worst = lhs.values.iter().map(|(k, x)| (x - p1.get(k) - s * p2.get(k)).norm()).fold(0.0, f64::max);
        prop_assert!(worst < 1e-12);
    }
}
