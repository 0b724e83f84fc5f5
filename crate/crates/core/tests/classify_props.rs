mod common;

use std::collections::BTreeSet;

use common::*;
use rand::Rng;
use sdconv::classify::*;
use sdconv::{ConvolutionalCode, FieldSpec, PolyMatrix};

fn keys(records: &[ClassificationRecord]) -> BTreeSet<String> {
    records.iter().map(|r| r.generator.to_string()).collect()
}

#[test]
fn two_one_existence_matches_square_roots() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        let field = f(q);
        let records = classify_21(&field);
        assert_eq!(records.is_empty(), field.sqrt_of_minus_one().is_none(), "q = {q}");
        assert_eq!(records.len(), field.square_roots_of_minus_one().len());
        for r in &records {
            assert!(ConvolutionalCode::new(r.generator.clone()).unwrap().is_self_dual());
        }
    }
}

#[test]
fn no_nonconstant_two_one_codes() {
    for (q, d) in [(2, 2), (3, 2), (4, 2), (5, 2), (9, 1), (13, 1)] {
        assert!(scan_nonconstant_21(&f(q), d).is_empty(), "q = {q}");
    }
}

#[test]
fn four_two_counts_match_coprime_pairs() {
    let mut previous: Option<BTreeSet<String>> = None;
    for d in 0..=2usize {
        let coprime = (0u64..1 << (d + 1))
            .flat_map(|a| (0u64..1 << (d + 1)).map(move |b| (a, b)))
            .filter(|&(a, b)| gf2::gcd(a, b) == 1)
            .count();
        let all = enumerate_42_binary(d);
        let records = classify_42_binary(d);
        assert_eq!(all.len(), coprime);
        // distinct pairs give distinct codes
        assert_eq!(records.len(), coprime, "D = {d}");
        let current = keys(&records);
        if let Some(prev) = previous {
            assert!(prev.is_subset(&current) && prev.len() < current.len());
        }
        previous = Some(current);
    }
}

#[test]
fn four_two_records_are_self_dual() {
    for r in classify_42_binary(2) {
        let c = ConvolutionalCode::new(r.generator.clone()).unwrap();
        assert!(c.is_self_dual());
        assert_eq!(r.generator, *c.canonical_generator());
        let d = r.distance.expect("distance within cap");
        assert_eq!(d.value % 2, 0);
    }
}

#[test]
fn classification_is_deterministic() {
    let a: Vec<String> = classify_42_binary(1).iter().map(|r| r.catalog_line()).collect();
    let b: Vec<String> = classify_42_binary(1).iter().map(|r| r.catalog_line()).collect();
    assert_eq!(a, b);
}

#[test]
fn double_diagonal_family() {
    for q in [2, 3, 4, 5, 7, 9, 13] {
        let field = f(q);
        for k in 1..=3 {
            let fam = classify_double_diagonal(&field, k);
            let roots = field.square_roots_of_minus_one().len();
            match fam {
                None => assert_eq!(roots, 0),
                Some(records) => {
                    assert_eq!(records.len(), roots.pow(k as u32));
                    for r in &records {
                        assert!(ConvolutionalCode::new(r.generator.clone()).unwrap().is_self_dual());
                    }
                }
            }
        }
        assert_eq!(classify_double_diagonal(&field, 1).unwrap_or_default(), classify_21(&field));
    }
}

fn random_upper_unitriangular(field: &FieldSpec, r: &mut impl Rng, k: usize) -> PolyMatrix {
    let mut u = PolyMatrix::identity(field, k);
    for i in 0..k {
        for j in i + 1..k {
            u.set(i, j, random_poly(field, r, 2));
        }
    }
    u
}

#[test]
fn double_triangular_inputs_reduce_to_double_identity() {
    let f2 = f(2);
    let mut r = rng(54);
    for k in 1..=4 {
        let target = double_identity(&f2, k);
        for _ in 0..10 {
            let u = random_upper_unitriangular(&f2, &mut r, k);
            let g = u.mul(&target).unwrap();
            assert!(has_double_triangular_pattern(&g));
            assert_eq!(reduce_double_triangular(&g).unwrap(), target);
        }
    }
}
