use bratteli::ud::{dimension_vector, root_vector};
use bratteli::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn ints(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

#[test]
fn up_from_root() {
    let d = symmetric_diagram(4).unwrap();
    let u = apply_u(&d, &root_vector(&d));
    assert_eq!(u, VertexVector::from([(d.level(1)[0], BigInt::from(1))]));
    let du = apply_d(&d, &u);
    assert_eq!(du, root_vector(&d));
    assert!(apply_d(&d, &root_vector(&d)).is_empty());
    assert!(apply_u(&d, &dimension_vector(&d, 4)).is_empty());
}

#[test]
fn powers_of_u_give_dimension_vectors() {
    for d in [symmetric_diagram(6).unwrap(), hyperoctahedral_diagram(4).unwrap(), type_d_diagram(5).unwrap()] {
        for i in 0..=d.n() {
            let w = UDWord::new([(Op::U, i as u32)]);
            assert_eq!(apply_ud_word(&d, &w, &root_vector(&d)), dimension_vector(&d, i));
        }
    }
}

#[test]
fn lambda_sequences() {
    assert_eq!(lambda_sequence(&symmetric_diagram(5).unwrap()).unwrap(), ints(&[1, 2, 3, 4, 5]));
    assert_eq!(lambda_sequence(&hyperoctahedral_diagram(3).unwrap()).unwrap(), ints(&[2, 4, 6]));
    assert_eq!(lambda_sequence(&type_d_diagram(3).unwrap()).unwrap(), ints(&[1, 4, 6]));
    assert_eq!(lambda_sequence(&cyclic_diagram(&[1, 3, 6, 12]).unwrap()).unwrap(), ints(&[3, 2, 2]));
}

#[test]
fn lambdas_are_index_ratios() {
    let ds = [
        symmetric_diagram(8).unwrap(),
        hyperoctahedral_diagram(6).unwrap(),
        type_d_diagram(6).unwrap(),
        cyclic_diagram(&[5, 10, 30]).unwrap(),
    ];
    for d in ds {
        let lam = lambda_sequence(&d).unwrap();
        for (i, l) in lam.iter().enumerate() {
            let ratio = d.group_order(i + 1).unwrap() / d.group_order(i).unwrap();
            assert_eq!(l, &ratio, "{} level {}", d.family().tag(), i + 1);
        }
    }
}

#[test]
fn non_locally_free_is_reported() {
    let v = |id, grade| Vertex { id, grade, label: Label::Residue(id as u64) };
    let e = |src, dst| Edge { src, dst, mult: 1 };
    let q = GradedQuiver::new(
        vec![v(0, 0), v(1, 1), v(2, 1), v(3, 2), v(4, 2)],
        vec![e(0, 1), e(0, 2), e(1, 3), e(2, 3), e(2, 4)],
    )
    .unwrap();
    let d = BratteliDiagram::from_quiver(DiagramFamily::Custom, q, 0).unwrap();
    assert_eq!(lambda_sequence(&d), Err(BratteliError::NotLocallyFree { level: 2 }));
}

#[test]
fn worked_word_on_symmetric_chain() {
    let d = symmetric_diagram(5).unwrap();
    let w: UDWord = "D^5U^2DU^4".parse().unwrap();
    assert!(w.is_admissible());
    let out = apply_ud_word(&d, &w, &root_vector(&d));
    assert_eq!(inner(&out, &root_vector(&d)), BigInt::from(480));
}

#[test]
fn word_parsing() {
    let w: UDWord = "D5U2DU4".parse().unwrap();
    assert_eq!(w.to_string(), "D^5U^2DU^4");
    assert_eq!("DDUU".parse::<UDWord>().unwrap().to_string(), "D^2U^2");
    assert_eq!("1".parse::<UDWord>().unwrap(), UDWord::default());
    assert!("DX".parse::<UDWord>().is_err());
    assert!("D^".parse::<UDWord>().is_err());
    assert!(!"DU^0D".parse::<UDWord>().unwrap().is_admissible());
}

fn sparse_vector(d: &BratteliDiagram, level: usize, coeffs: &[i64]) -> VertexVector {
    d.level(level)
        .iter()
        .zip(coeffs.iter().cycle())
        .filter(|(_, &c)| c != 0)
        .map(|(&v, &c)| (v, BigInt::from(c)))
        .collect()
}

proptest! {
    #[test]
    fn u_and_d_are_adjoint(family in 0usize..4, level in 0usize..5, a in prop::collection::vec(-5i64..6, 1..12), b in prop::collection::vec(-5i64..6, 1..12)) {
        let d = match family {
            0 => symmetric_diagram(5).unwrap(),
            1 => hyperoctahedral_diagram(5).unwrap(),
            2 => type_d_diagram(5).unwrap(),
            _ => cyclic_diagram(&[2, 6, 12, 24, 48]).unwrap(),
        };
        let v = sparse_vector(&d, level, &a);
        let w = sparse_vector(&d, level + 1, &b);
        prop_assert_eq!(inner(&apply_u(&d, &v), &w), inner(&v, &apply_d(&d, &w)));
    }

    #[test]
    fn word_display_round_trips(runs in prop::collection::vec((any::<bool>(), 1u32..7), 0..8)) {
        let w = UDWord::new(runs.into_iter().map(|(u, k)| (if u { Op::U } else { Op::D }, k)));
        let back: UDWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }
}
