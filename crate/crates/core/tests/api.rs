use gvb_core::braided::{
    builtin_algebras, builtin_by_name, check_axioms, hoffman_stuffle, qpoly, BraidedAlgebra,
};
use gvb_core::perm::{bubble_decompose, enumerate_shuffles, reconstruct};
use gvb_core::qshuffle::{apply_operator_word, full_product, qqs_inductive, qqs_section};
use gvb_core::qthat::{
    fundamental_pair, pair_reports, representation_reports, Assignment, MatrixExport, OpMatrix,
};
use gvb_core::section::{sum_over_shuffles, word_count};
use gvb_core::verify::{run, Group, VerifyConfig};
use gvb_core::{Error, Exec, Scalar, Tensor};

#[test]
fn shuffle_counts_are_binomial() {
    assert_eq!(enumerate_shuffles(3, 3).len(), 20);
    assert_eq!(enumerate_shuffles(2, 4).len(), 15);
    for s in enumerate_shuffles(3, 2) {
        assert_eq!(reconstruct(&bubble_decompose(&s)).unwrap(), s);
    }
}

#[test]
fn section_sum_sizes_follow_delannoy() {
    assert_eq!(word_count(2, 2), 13);
    assert_eq!(sum_over_shuffles(2, 2).len(), 13);
    assert_eq!(word_count(3, 3), 63);
}

#[test]
fn builtins_satisfy_axioms() {
    for a in builtin_algebras() {
        for r in check_axioms(&a, Exec::Parallel) {
            assert!(r.pass, "{} {}", a.name(), r.subject);
        }
    }
}

#[test]
fn stuffle_example() {
    let a = hoffman_stuffle(4);
    let x = a.parse_pure("z1").unwrap();
    let y = a.parse_pure("z2").unwrap();
    let p = full_product(&a, &x, &y);
    assert_eq!(
        a.display(&p),
        a.display(
            &a.parse_pure("z1,z2")
                .unwrap()
                .add(&a.parse_pure("z2,z1").unwrap())
                .add(&a.parse_pure("z3").unwrap())
        )
    );
}

#[test]
fn inductive_and_section_products_agree() {
    let a = qpoly(3);
    let x = a.parse_pure("x1,x2").unwrap();
    let y = a.parse_pure("x3,x1").unwrap();
    assert_eq!(
        qqs_inductive(&a, &x, &y).unwrap(),
        qqs_section(&a, &x, &y).unwrap()
    );
}

#[test]
fn unit_factors_are_rejected() {
    let a = qpoly(2);
    let x = Tensor::pure(&[0, 1]);
    assert!(matches!(
        qqs_section(&a, &x, &Tensor::pure(&[1])),
        Err(Error::UnitFactor)
    ));
}

#[test]
fn operator_words_parse() {
    let a = hoffman_stuffle(3);
    let x = a.parse_pure("z1,z1").unwrap();
    assert_eq!(apply_operator_word(&a, "id", &x).unwrap(), x);
    assert_eq!(
        apply_operator_word(&a, "m1", &x).unwrap(),
        a.parse_pure("z2").unwrap()
    );
    assert!(apply_operator_word(&a, "q1", &x).is_err());
}

#[test]
fn algebra_lookup_and_json() {
    assert!(builtin_by_name("qpoly:4").is_some());
    assert!(builtin_by_name("nope").is_none());
    let a = builtin_by_name("stuffle").unwrap();
    assert_eq!(BraidedAlgebra::from_json(&a.to_json()).unwrap(), a);
    assert!(BraidedAlgebra::from_json("{").is_err());
}

#[test]
fn swapped_assignment_is_a_representation() {
    for r in representation_reports(2, 3, Assignment::Swapped, Exec::Parallel).unwrap() {
        assert!(r.pass, "{}", r.subject);
    }
    for r in pair_reports(2).unwrap() {
        assert!(r.pass, "{}", r.subject);
    }
}

#[test]
fn printed_assignment_fails_only_mixed_relations() {
    let failed: Vec<String> = representation_reports(2, 3, Assignment::Standard, Exec::Parallel)
        .unwrap()
        .into_iter()
        .filter(|r| !r.pass)
        .map(|r| r.subject)
        .collect();
    assert_eq!(failed.len(), 2);
    assert!(failed.iter().all(|s| s.contains("mixed")));
}

#[test]
fn matrix_export_round_trip() {
    let (r, _, _) = fundamental_pair(2);
    let text = serde_json::to_string(&r.to_export()).unwrap();
    let back: MatrixExport = serde_json::from_str(&text).unwrap();
    assert_eq!(OpMatrix::from_export(&back).unwrap(), r);
}

#[test]
fn verify_run_streams_reports() {
    let cfg = VerifyConfig {
        max_degree: 3,
        max_shuffle_size: 5,
        ..VerifyConfig::default()
    };
    let mut n = 0;
    run(
        &[Group::Section, Group::Recursion, Group::Negative],
        &cfg,
        Exec::Sequential,
        |r| {
            assert!(r.pass, "{}", r.subject);
            n += 1;
        },
    )
    .unwrap();
    assert!(n > 3);
    let mut literal_failures = 0;
    run(&[Group::Literal], &cfg, Exec::Sequential, |r| {
        literal_failures += usize::from(!r.pass)
    })
    .unwrap();
    assert!(literal_failures > 0);
    assert_eq!(
        "quantum_shuffle".parse::<Group>().unwrap(),
        Group::QuantumShuffle
    );
}

#[test]
fn scalar_parse() {
    let s: Scalar = "q - q^-1".parse().unwrap();
    assert_eq!(s, &Scalar::q_pow(1) - &Scalar::q_pow(-1));
    assert!("w^2".parse::<Scalar>().is_err());
}
