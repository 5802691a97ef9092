use bratteli::ud::{dimension_vector, level_indicator};
use bratteli::{apply_ud_word, cyclic_diagram, hyperoctahedral_diagram, symmetric_diagram, type_d_diagram, BratteliDiagram};
use num_bigint::BigUint;
use quiver_count::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(s: &str) -> UDWord {
    s.parse().unwrap()
}

#[test]
fn two_tooth_word() {
    let t = ToothedQuiver::new(vec![0, 3, 0], vec![4, 5]).unwrap();
    assert_eq!(toothed_to_word(&t), word("D^5U^2DU^4"));
    assert_eq!(toothed_to_word(&t).to_string(), "D^5U^2DU^4");
    assert_eq!(word_to_toothed(&word("D^5U^2DU^4"), 0), Some(t));
}

#[test]
fn one_tooth_word() {
    for n in 1..6 {
        let t = ToothedQuiver::new(vec![0, 0], vec![n]).unwrap();
        assert_eq!(toothed_to_word(&t), UDWord::new([(Op::D, n as u32), (Op::U, n as u32)]));
    }
}

#[test]
fn teeth_must_rise() {
    assert!(ToothedQuiver::new(vec![0, 3], vec![3]).is_err());
    assert!(ToothedQuiver::new(vec![0, 1, 2], vec![2]).is_err());
}

#[test]
fn two_tooth_value_on_young_lattice() {
    let d = symmetric_diagram(6).unwrap();
    let w = word("D^5U^2DU^4");
    let v = eval_word(&d, &w).unwrap();
    assert!(v.closed_form);
    assert_eq!(v.total, BigUint::from(480u32));
    assert_eq!(count_hom_bruteforce(&word_to_toothed(&w, 0).unwrap().to_shape(), &d).unwrap(), v.total);
}

#[test]
fn full_tooth_gives_group_order() {
    let diagrams = [
        symmetric_diagram(6).unwrap(),
        hyperoctahedral_diagram(4).unwrap(),
        type_d_diagram(4).unwrap(),
        cyclic_diagram(&[1, 2, 6, 12]).unwrap(),
    ];
    for d in &diagrams {
        let n = d.n() as u32;
        let v = eval_word(d, &UDWord::new([(Op::D, n), (Op::U, n)])).unwrap();
        assert_eq!(v.total, d.group_order(d.n()).unwrap(), "{}", d.family().tag());
    }
}

#[test]
fn empty_word_is_the_root() {
    let d = hyperoctahedral_diagram(3).unwrap();
    let v = eval_word(&d, &UDWord::default()).unwrap();
    assert_eq!(v.total, BigUint::from(1u32));
    assert_eq!(v.vector, dimension_vector(&d, 0));
}

#[test]
fn non_admissible_words_are_rejected() {
    let d = symmetric_diagram(4).unwrap();
    for s in ["DD", "UDDD", "D^4U^2"] {
        assert!(matches!(eval_word(&d, &word(s)), Err(QuiverError::Admissibility(_))), "{s}");
    }
    // A D at the root is admissible and gives zero.
    let v = eval_word(&d, &word("D")).unwrap();
    assert_eq!(v.total, BigUint::from(0u32));
    assert!(v.vector.is_empty());
}

#[test]
fn words_above_the_top_fall_back_to_operators() {
    let d = symmetric_diagram(3).unwrap();
    let v = eval_word(&d, &word("D^4U^4")).unwrap();
    assert!(!v.closed_form);
    assert_eq!(v.total, BigUint::from(0u32));
}

#[test]
fn diagrams_that_are_not_locally_free_use_operators() {
    // Cyclic towers with varying index are not locally free.
    let d = cyclic_diagram(&[1, 2, 6]).unwrap();
    if bratteli::lambda_sequence(&d).is_err() {
        let w = word("DU^2");
        let v = eval_word(&d, &w).unwrap();
        assert!(!v.closed_form);
        assert_eq!(v.vector, eval_word_operator(&d, &w));
    }
}

/// Random admissible toothed word that starts at the root and stays at or below `top`.
fn random_toothed(rng: &mut ChaCha8Rng, top: usize) -> ToothedQuiver {
    let teeth = rng.gen_range(1..=4);
    let mut l = vec![0usize];
    let mut m = Vec::new();
    for _ in 0..teeth {
        let base = *l.last().unwrap();
        if base >= top {
            break;
        }
        let peak = rng.gen_range(base + 1..=top);
        m.push(peak);
        l.push(rng.gen_range(0..peak));
    }
    ToothedQuiver::new(l, m).unwrap()
}

fn corpus_check(d: &BratteliDiagram, seed: u64, words: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..words {
        let t = random_toothed(&mut rng, d.n());
        let w = toothed_to_word(&t);
        assert!(w.is_admissible());
        let closed = eval_word(d, &w).unwrap();
        assert!(closed.closed_form);
        let op = eval_word_operator(d, &w);
        assert_eq!(closed.vector, op, "{w}");
        let brute = count_hom_bruteforce(&t.to_shape(), d).unwrap();
        assert_eq!(closed.total, brute, "{w}");
        assert_eq!(toothed_hom_count(&t, d).unwrap(), brute, "{w}");
        assert_eq!(word_to_toothed(&w, 0).as_ref(), Some(&t));
    }
}

#[test]
fn word_corpus_on_symmetric_chains() {
    for n in 2..=6 {
        corpus_check(&symmetric_diagram(n).unwrap(), n as u64, 8);
    }
}

#[test]
fn word_corpus_on_hyperoctahedral_chains() {
    for n in 2..=4 {
        corpus_check(&hyperoctahedral_diagram(n).unwrap(), 100 + n as u64, 10);
    }
}

#[test]
fn toothed_counts_from_any_base_level() {
    let d = symmetric_diagram(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..40 {
        let teeth = rng.gen_range(1..=3);
        let l: Vec<usize> = (0..=teeth).map(|_| rng.gen_range(0..=4)).collect();
        let m: Vec<usize> = (0..teeth).map(|i| rng.gen_range(l[i].max(l[i + 1]) + 1..=6)).collect();
        let t = ToothedQuiver::new(l, m).unwrap();
        assert_eq!(toothed_hom_count(&t, &d).unwrap(), count_hom_bruteforce(&t.to_shape(), &d).unwrap(), "{t:?}");
    }
}

#[test]
fn three_tooth_shape() {
    // Three teeth hanging from levels 0, 2, 1, 0 with peaks 4, 3, 5.
    let t = ToothedQuiver::new(vec![0, 2, 1, 0], vec![4, 3, 5]).unwrap();
    assert_eq!(toothed_to_word(&t), word("D^5U^4D^2UD^2U^4"));
    let d = symmetric_diagram(5).unwrap();
    let closed = eval_word(&d, &toothed_to_word(&t)).unwrap().total;
    assert_eq!(closed, count_hom_bruteforce(&t.to_shape(), &d).unwrap());
    // λ_4λ_3 · λ_3λ_2 · λ_5λ_4λ_3λ_2λ_1 on the Young lattice.
    assert_eq!(closed, BigUint::from(4u32 * 3 * 3 * 2 * 120));
}

/// Walk the letters on signed levels; true if some D lands on the empty level below the root.
fn steps_below_root(w: &UDWord) -> bool {
    let mut h = 0i64;
    for op in w.letters_applied() {
        if op == Op::D && h < 0 {
            return true;
        }
        h += if op == Op::U { 1 } else { -1 };
    }
    false
}

#[test]
fn admissibility_matches_operator_walk() {
    let d = symmetric_diagram(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut rejected = 0;
    for _ in 0..300 {
        let runs: Vec<(Op, u32)> = (0..rng.gen_range(1..=6))
            .map(|_| (if rng.gen_bool(0.5) { Op::U } else { Op::D }, rng.gen_range(1..=3)))
            .collect();
        let w = UDWord::new(runs);
        if w.peak(0) > d.n() as i64 {
            continue;
        }
        assert_eq!(!w.is_admissible(), steps_below_root(&w), "{w}");
        let op = eval_word_operator(&d, &w);
        if w.is_admissible() {
            assert_eq!(eval_word(&d, &w).unwrap().vector, op, "{w}");
        } else {
            rejected += 1;
            assert!(op.is_empty(), "{w}");
        }
    }
    assert!(rejected > 20);
}

#[test]
fn operator_form_from_level_indicator() {
    let d = hyperoctahedral_diagram(3).unwrap();
    let t = ToothedQuiver::new(vec![1, 2], vec![3]).unwrap();
    let v = apply_ud_word(&d, &toothed_to_word(&t), &level_indicator(&d, 1));
    let s: num_bigint::BigInt = v.values().sum();
    assert_eq!(s.to_biguint().unwrap(), count_hom_bruteforce(&t.to_shape(), &d).unwrap());
}
