use std::collections::HashMap;

use algebra_core::{enumerate_group, group_op, inverse, Family, GroupChain, GroupElement, DEFAULT_SIZE_CAP};
use bratteli::Label;
use gt_rep::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn real(m: &CMatrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect()).collect()
}

fn close(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() < TOL))
}

fn part(p: &[u32]) -> Label {
    Label::Partition(p.to_vec())
}

#[test]
fn s2_is_trivial_and_sign() {
    assert!(close(&real(&generator_matrix(Family::Symmetric, 2, 1, &part(&[2])).unwrap()), &[vec![1.0]]));
    assert!(close(&real(&generator_matrix(Family::Symmetric, 2, 1, &part(&[1, 1])).unwrap()), &[vec![-1.0]]));
}

#[test]
fn s3_standard_block() {
    let m = generator_matrix(Family::Symmetric, 3, 2, &part(&[2, 1])).unwrap();
    let h = 3f64.sqrt() / 2.0;
    assert!(close(&real(&m), &[vec![-0.5, h], vec![h, 0.5]]), "{m}");
    // s_1 only sees the level-2 vertex: +1 through (2), −1 through (1,1).
    let s1 = generator_matrix(Family::Symmetric, 3, 1, &part(&[2, 1])).unwrap();
    assert!(close(&real(&s1), &[vec![1.0, 0.0], vec![0.0, -1.0]]));
}

#[test]
fn b1_sign_on_second_component() {
    let m = generator_matrix(Family::Hyperoctahedral, 1, 1, &Label::Pair(vec![], vec![1])).unwrap();
    assert!(close(&real(&m), &[vec![-1.0]]));
    let t = generator_matrix(Family::Hyperoctahedral, 1, 1, &Label::Pair(vec![1], vec![])).unwrap();
    assert!(close(&real(&t), &[vec![1.0]]));
}

#[test]
fn unsupported_families() {
    assert!(matches!(AdaptedRep::new(&GroupChain::type_d(3)), Err(RepError::Unsupported(_))));
    assert!(matches!(generator_matrix(Family::TypeD, 3, 1, &part(&[3])), Err(RepError::Unsupported(_))));
}

fn chains() -> Vec<GroupChain> {
    let mut out: Vec<GroupChain> = (1..=5).map(GroupChain::symmetric).collect();
    out.extend((1..=3).map(GroupChain::hyperoctahedral));
    out
}

#[test]
fn generators_satisfy_relations() {
    for c in chains() {
        let rep = AdaptedRep::new(&c).unwrap();
        assert!(rep.relation_residual() < TOL, "{}", c.group(c.len()));
    }
}

#[test]
fn dimensions_square_to_the_order() {
    for c in chains() {
        let rep = AdaptedRep::new(&c).unwrap();
        for i in 0..=c.len() {
            let sum: BigUint = rep.diagram().level(i).iter().map(|&v| BigUint::from(rep.dim(v) * rep.dim(v))).sum();
            assert_eq!(sum, c.order(i));
        }
    }
}

#[test]
fn factorizations_multiply_back() {
    for c in chains() {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        let mut rejected = 0;
        for g in enumerate_group(&c.group(n), DEFAULT_SIZE_CAP).unwrap() {
            let w = factor_into_generators(&c, &g).unwrap();
            assert!(word_to_path_coords(&rep, &w, &g, n).is_ok());
            if let Some((_, short)) = w.split_last() {
                assert!(matches!(word_to_path_coords(&rep, short, &g, n), Err(RepError::Factorization(_))));
                rejected += 1;
            }
        }
        assert_eq!(BigUint::from(rejected as u64 + 1), c.order(n));
    }
}

fn random_element(rng: &mut ChaCha8Rng, elements: &[GroupElement]) -> GroupElement {
    elements[rng.gen_range(0..elements.len())].clone()
}

#[test]
fn homomorphism_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in chains() {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        let elements = enumerate_group(&c.group(n), DEFAULT_SIZE_CAP).unwrap();
        for _ in 0..100 {
            let (s, t) = (random_element(&mut rng, &elements), random_element(&mut rng, &elements));
            let st = element_to_path_coords(&rep, &group_op(&s, &t).unwrap(), n).unwrap();
            let prod = path_multiply(
                &element_to_path_coords(&rep, &s, n).unwrap(),
                &element_to_path_coords(&rep, &t, n).unwrap(),
            )
            .unwrap();
            assert!(st.max_abs_diff(&prod) < TOL, "{s:?} {t:?}");
        }
    }
}

#[test]
fn random_s4_element_is_a_product_of_generator_matrices() {
    let c = GroupChain::symmetric(4);
    let rep = AdaptedRep::new(&c).unwrap();
    let g = GroupElement::from_one_line(&[3, 1, 4, 2]).unwrap();
    let w = factor_into_generators(&c, &g).unwrap();
    for &v in rep.diagram().level(4) {
        let mut acc = CMatrix::identity(rep.dim(v), rep.dim(v));
        for &k in &w {
            acc *= rep.generator_matrix(k, v).unwrap();
        }
        assert!((acc - rep.matrix(&g, v).unwrap()).camax() < TOL);
    }
}

#[test]
fn identity_is_the_diagonal() {
    let c = GroupChain::hyperoctahedral(3);
    let rep = AdaptedRep::new(&c).unwrap();
    let e = element_to_path_coords(&rep, &c.group(3).identity(), 3).unwrap();
    assert!(e.max_abs_diff(&PathAlgebraElement::identity(&rep, 3)) < TOL);
    for (p, q, x) in e.entries(&rep) {
        assert_eq!(p, q);
        assert!((x.re - 1.0).abs() < TOL);
    }
}

#[test]
fn path_algebra_delta_rule() {
    let c = GroupChain::symmetric(3);
    let rep = AdaptedRep::new(&c).unwrap();
    let v = rep.diagram().find_at(3, &part(&[2, 1])).unwrap();
    let ps = rep.paths(v);
    let one = C64::new(1.0, 0.0);
    let a = PathAlgebraElement::pair(&rep, &ps[0], &ps[0], one).unwrap();
    let b = PathAlgebraElement::pair(&rep, &ps[1], &ps[1], one).unwrap();
    assert!(path_multiply(&a, &b).unwrap().max_abs_diff(&PathAlgebraElement::zero(3)) < TOL);
    let ab = PathAlgebraElement::pair(&rep, &ps[0], &ps[1], one).unwrap();
    let ba = PathAlgebraElement::pair(&rep, &ps[1], &ps[0], one).unwrap();
    assert!(path_multiply(&ab, &ba).unwrap().max_abs_diff(&a) < TOL);
    let e = PathAlgebraElement::identity(&rep, 3);
    assert!(path_multiply(&e, &ab).unwrap().max_abs_diff(&ab) < TOL);
    // Pairs must share an endpoint.
    let w = rep.diagram().find_at(3, &part(&[3])).unwrap();
    assert!(PathAlgebraElement::pair(&rep, &ps[0], &rep.paths(w)[0], one).is_err());
    assert!(matches!(path_multiply(&e, &PathAlgebraElement::zero(2)), Err(RepError::Mismatch(_))));
}

#[test]
fn generator_support_matches_its_interval() {
    for c in chains() {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        for g in c.generators() {
            let (lo, hi) = g.levels;
            let coords = element_to_path_coords(&rep, &g.element, n).unwrap();
            for (p, q, x) in coords.entries(&rep) {
                if x.norm() < TOL {
                    continue;
                }
                for l in (0..=lo).chain(hi..=n) {
                    assert_eq!(p.at(l), q.at(l), "s_{} level {l}", g.index);
                }
            }
        }
    }
}

#[test]
fn coset_factors_have_interval_support() {
    // Every factor emitted for the coset words acts only between its levels.
    for c in chains() {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        for i in 1..=n {
            for slot in c.coset_factor_slots(i).unwrap() {
                for f in &slot.choices {
                    let coords = element_to_path_coords(&rep, &f.element, i).unwrap();
                    let (lo, hi) = f.levels;
                    for (p, q, x) in coords.entries(&rep) {
                        if x.norm() >= TOL {
                            assert!((0..=lo).chain(hi..=i).all(|l| p.at(l) == q.at(l)), "{} {}", slot.name, c.group(i));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn adaptedness_holds_and_the_negative_control_fails() {
    for c in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2), GroupChain::hyperoctahedral(3)] {
        let rep = AdaptedRep::new(&c).unwrap();
        let report = check_adapted(&rep);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.checked > 0);
    }
    let rep = AdaptedRep::new(&GroupChain::symmetric(4)).unwrap();
    let v = rep.diagram().find_at(4, &part(&[3, 1])).unwrap();
    let bad = rep.permute_basis(v, &[2, 0, 1]).unwrap();
    // Still a representation, but the blocks no longer follow prefixes.
    assert!(bad.relation_residual() < TOL);
    let report = check_adapted(&bad);
    assert!(!report.passed());
    assert!(report.violations.iter().all(|x| x.vertex == v));
    assert!(rep.permute_basis(v, &[0, 0, 1]).is_err());
}

fn random_function(rng: &mut ChaCha8Rng, elements: &[GroupElement]) -> HashMap<GroupElement, C64> {
    elements.iter().map(|g| (g.clone(), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect()
}

#[test]
fn fourier_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cs = chains();
    cs.push(GroupChain::cyclic(&[1, 2, 4, 8]).unwrap());
    cs.push(GroupChain::cyclic(&[1, 3, 9, 27]).unwrap());
    for c in cs {
        let rep = AdaptedRep::new(&c).unwrap();
        let elements = enumerate_group(&c.group(c.len()), DEFAULT_SIZE_CAP).unwrap();
        let f = random_function(&mut rng, &elements);
        let back = inverse_fourier(&rep, &naive_fourier(&rep, &f).unwrap()).unwrap();
        assert!(max_rel_error(&back, &f) < TOL, "{}", c.group(c.len()));
    }
}

#[test]
fn point_masses_and_constants() {
    let c = GroupChain::symmetric(3);
    let rep = AdaptedRep::new(&c).unwrap();
    let elements = enumerate_group(&c.group(3), DEFAULT_SIZE_CAP).unwrap();
    let e = c.group(3).identity();
    let delta_e: HashMap<_, _> = [(e.clone(), C64::new(1.0, 0.0))].into();
    assert!(naive_fourier(&rep, &delta_e).unwrap().max_abs_diff(&PathAlgebraElement::identity(&rep, 3)) < TOL);
    let g = elements[4].clone();
    let delta_g: HashMap<_, _> = [(g.clone(), C64::new(1.0, 0.0))].into();
    let fg = naive_fourier(&rep, &delta_g).unwrap();
    assert!(fg.max_abs_diff(&element_to_path_coords(&rep, &g, 3).unwrap()) < TOL);
    let ones: HashMap<_, _> = elements.iter().map(|g| (g.clone(), C64::new(1.0, 0.0))).collect();
    let f1 = naive_fourier(&rep, &ones).unwrap();
    let triv = rep.diagram().trivial_vertex(3).unwrap();
    for (&v, b) in &f1.blocks {
        let expect = if v == triv { 6.0 } else { 0.0 };
        assert!((b[(0, 0)].re - expect).abs() < TOL && b.iter().skip(1).all(|x| x.norm() < TOL), "{v}");
    }
}

#[test]
fn characters_are_orthogonal() {
    for c in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(3)] {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        let elements = enumerate_group(&c.group(n), DEFAULT_SIZE_CAP).unwrap();
        let top = rep.diagram().level(n).to_vec();
        let chars: Vec<Vec<C64>> =
            top.iter().map(|&v| elements.iter().map(|g| rep.matrix(g, v).unwrap().trace()).collect()).collect();
        for a in 0..top.len() {
            for b in 0..top.len() {
                let ip: C64 = chars[a].iter().zip(&chars[b]).map(|(x, y)| x * y.conj()).sum::<C64>() / elements.len() as f64;
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - expect).norm() < TOL);
            }
        }
    }
}

#[test]
fn convolution_becomes_block_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c in [GroupChain::symmetric(4), GroupChain::hyperoctahedral(2), GroupChain::cyclic(&[1, 2, 4]).unwrap()] {
        let n = c.len();
        let rep = AdaptedRep::new(&c).unwrap();
        let elements = enumerate_group(&c.group(n), DEFAULT_SIZE_CAP).unwrap();
        let f = random_function(&mut rng, &elements);
        let g = random_function(&mut rng, &elements);
        let mut conv: HashMap<GroupElement, C64> = HashMap::new();
        for x in &elements {
            for y in &elements {
                let z = group_op(x, y).unwrap();
                *conv.entry(z).or_default() += f[x] * g[y];
            }
        }
        let lhs = naive_fourier(&rep, &conv).unwrap();
        let rhs = path_multiply(&naive_fourier(&rep, &f).unwrap(), &naive_fourier(&rep, &g).unwrap()).unwrap();
        assert!(block_rel_error(&lhs, &rhs) < TOL);
        // Sanity on the inverse used above.
        let x = &elements[1];
        assert_eq!(group_op(x, &inverse(x)).unwrap(), c.group(n).identity());
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn products_are_associative(seed in any::<u64>()) {
            let c = GroupChain::symmetric(4);
            let rep = AdaptedRep::new(&c).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let elements = enumerate_group(&c.group(4), DEFAULT_SIZE_CAP).unwrap();
            let [a, b, d] = [0, 1, 2].map(|_| naive_fourier(&rep, &random_function(&mut rng, &elements[..6])).unwrap());
            let left = path_multiply(&path_multiply(&a, &b).unwrap(), &d).unwrap();
            let right = path_multiply(&a, &path_multiply(&b, &d).unwrap()).unwrap();
            prop_assert!(block_rel_error(&left, &right) < TOL);
        }

        #[test]
        fn signed_permutations_factor(images in Just((1..=4usize).collect::<Vec<_>>()).prop_shuffle(), signs in proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 4)) {
            let c = GroupChain::hyperoctahedral(4);
            let g = GroupElement::signed_from_parts(&images, &signs).unwrap();
            prop_assert!(factor_into_generators(&c, &g).is_ok());
        }

        #[test]
        fn permutations_factor(images in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let c = GroupChain::symmetric(6);
            let g = GroupElement::from_one_line(&images).unwrap();
            let w = factor_into_generators(&c, &g).unwrap();
            // Bubble sort gives a reduced word: its length is the inversion count.
            let inv = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| images[i] > images[j]).count();
            prop_assert_eq!(w.len(), inv);
        }
    }
}

#[test]
fn embedding_matches_the_subgroup_element() {
    let c = GroupChain::symmetric(4);
    let rep = AdaptedRep::new(&c).unwrap();
    for g in enumerate_group(&c.group(3), DEFAULT_SIZE_CAP).unwrap() {
        let low = element_to_path_coords(&rep, &g, 3).unwrap();
        let high = element_to_path_coords(&rep, &c.embed(&g, 3, 4).unwrap(), 4).unwrap();
        assert!(embed_element(&rep, &low, 4).unwrap().max_abs_diff(&high) < TOL);
    }
    assert!(embed_element(&rep, &PathAlgebraElement::identity(&rep, 4), 3).is_err());
}

#[test]
fn cyclic_quarter_turns_are_exact() {
    let c = GroupChain::cyclic(&[1, 2, 4, 8]).unwrap();
    let rep = AdaptedRep::new(&c).unwrap();
    let v = rep.diagram().find_at(2, &Label::Residue(1)).unwrap();
    let x = rep.matrix(&GroupElement::Cyclic { order: 4, value: 1 }, v).unwrap()[(0, 0)];
    assert_eq!(x, C64::new(0.0, 1.0));
    let w = rep.diagram().find_at(3, &Label::Residue(4)).unwrap();
    let y = rep.matrix(&GroupElement::Cyclic { order: 2, value: 1 }, w).unwrap()[(0, 0)];
    assert_eq!(y, C64::new(1.0, 0.0));
}
