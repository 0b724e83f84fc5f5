//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the report is always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use sdconv::classify::*;
use sdconv::cli;
use sdconv::code::weight;
use sdconv::constructions::*;
use sdconv::matrix::{col_hermite, parse_vector, row_hermite, smith, solve_left};
use sdconv::{ConvolutionalCode, Poly, PolyMatrix};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f5_worked_example() -> Outcome {
    let f5 = f(5);
    let text = "3,z,1,3*z ; 1,2*z+4,2,z+2";
    let run = cli::run(["sdconv", "check", "--field", "5", text]);
    ensure!(run.code == 0, "check exited {}", run.code);
    ensure!(run.stdout.lines().any(|l| l == "self-dual: true"), "check output: {}", run.stdout);
    let g = m(&f5, text);
    ensure!(g.mul(&g.transpose()).unwrap().is_zero(), "G·Gᵀ is not zero");
    let minor = g.select_columns(&[0, 1]).det().unwrap();
    ensure!(minor == Poly::from_ints(&f5, &[2]), "minor is {minor}");
    Ok(())
}

fn catastrophic_counterexample() -> Outcome {
    let f2 = f(2);
    let c = code(&f2, "z^2+z+1,z^2,z,1 ; 1,z,z^2,z^2+z+1");
    ensure!(c.is_self_orthogonal(), "not self-orthogonal");
    ensure!(!c.is_noncatastrophic(), "reported non-catastrophic");
    ensure!(!c.is_self_dual(), "reported self-dual");
    let ones = parse_vector(&f2, "1,1,1,1").unwrap();
    ensure!(!c.contains(&ones).unwrap(), "code contains all-ones");
    ensure!(c.dual().contains(&ones).unwrap(), "dual misses all-ones");
    Ok(())
}

fn two_one_existence_table() -> Outcome {
    for q in [2, 4, 5, 8, 9, 13, 16, 25, 3, 7, 11] {
        let field = f(q);
        let (p, l) = (field.characteristic(), field.degree());
        let predicted = p % 4 == 1 || p == 2 || l % 2 == 0;
        let found = !classify_21(&field).is_empty();
        ensure!(found == predicted, "q = {q}: nonempty = {found}, predicted {predicted}");
        ensure!(found == [2, 4, 5, 8, 9, 13, 16, 25].contains(&q), "q = {q} against the table");
    }
    Ok(())
}

fn coprime_pair_count(max_deg: usize) -> usize {
    let n = 1u64 << (max_deg + 1);
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| gf2::gcd(a, b) == 1).count()
}

fn four_two_enumeration() -> Outcome {
    let f2 = f(2);
    let mut r = rng(4);
    for (d, expected) in [(0, 3), (1, 9)] {
        let oracle = coprime_pair_count(d);
        let records = classify_42_binary(d);
        ensure!(oracle == expected, "oracle count {oracle} for D = {d}");
        ensure!(records.len() == expected, "D = {d}: {} records", records.len());
        for rec in &records {
            let c = ConvolutionalCode::new(rec.generator.clone()).unwrap();
            ensure!(c.is_self_dual(), "{} not self-dual", rec.generator);
            ensure!(c.contains(&vec![Poly::one(&f2); 4]).unwrap(), "{} misses all-ones", rec.generator);
            for _ in 0..20 {
                let msg: Vec<Poly> = (0..2).map(|_| random_poly(&f2, &mut r, 4)).collect();
                let w = weight(&c.encode(&msg).unwrap());
                ensure!(w.is_multiple_of(2), "odd weight {w} in {}", rec.generator);
            }
        }
    }
    Ok(())
}

fn building_up_example() -> Outcome {
    let f2 = f(2);
    let c = code(&f2, "1,1,1,1 ; 0,1,z+1,z");
    let fv = parse_vector(&f2, "1,z,z^2,z^2+z").unwrap();
    let out = building_up(&c, &fv, f2.one(), f2.one()).map_err(|e| e.to_string())?;
    let expected = "1,0,1,z,z^2,z^2+z ; 1,1,1,1,1,1 ; z,z,0,1,z+1,z";
    ensure!(out.generator().to_string() == expected, "got {}", out.generator());
    ensure!(out.canonical_generator() == code(&f2, expected).canonical_generator(), "canonical forms differ");
    ensure!(out.is_self_dual(), "output not self-dual");
    Ok(())
}

fn completion_criterion() -> Outcome {
    let f2 = f(2);
    let polys = polys_up_to(&f2, 1);
    let mut counts = [0usize; 2];
    for c in enumerate_42_binary(1) {
        for a1 in &polys {
            for a2 in &polys {
                let g = hm_extend(&c, &[a1.clone(), a2.clone()]).unwrap();
                let in_span = solve_left(&g, &vec![Poly::one(&f2); 6]).unwrap().is_some();
                let res = find_completion(&g).map_err(|e| e.to_string())?;
                let nontrivial = res.kind == CompletionKind::NonTrivial;
                ensure!(nontrivial == in_span, "verdict mismatch for {g}");
                if nontrivial {
                    ensure!(is_nontrivial_witness(&g, &res.witness_f).unwrap(), "bad witness for {g}");
                }
                counts[usize::from(nontrivial)] += 1;
            }
        }
    }
    ensure!(counts[0] > 0 && counts[1] > 0, "one-sided corpus {counts:?}");
    Ok(())
}

fn completion_examples() -> Outcome {
    let f2 = f(2);
    let rep = code(&f2, "1,1");
    let g = hm_extend(&rep, &parse_vector(&f2, "z").unwrap()).unwrap();
    ensure!(find_completion(&g).unwrap().kind == CompletionKind::TrivialOnly, "a_1 = z");
    let g = hm_extend(&rep, &parse_vector(&f2, "1").unwrap()).unwrap();
    ensure!(find_completion(&g).unwrap().kind == CompletionKind::NonTrivial, "a_1 = 1");
    let witness = parse_vector(&f2, "0,z^2+z+1,z,z^2+1").unwrap();
    ensure!(is_nontrivial_witness(&g, &witness).unwrap(), "injected witness rejected");
    let c = code(&f2, "0,z^2+z+1,z,z^2+1 ; 1,1,1,1");
    let g = hm_extend(&c, &parse_vector(&f2, "z^2+1,1").unwrap()).unwrap();
    let witness = parse_vector(&f2, "0,1,0,0,0,1").unwrap();
    let g1 = ConvolutionalCode::new(g.with_top_row(&witness).unwrap()).unwrap();
    ensure!(g1.is_self_dual(), "[f; G~] is not self-dual");
    Ok(())
}

fn sparse_code_distance() -> Outcome {
    let f2 = f(2);
    let c = code(&f2, "0,z^2+z+1,z,z^2+1 ; 1,1,1,1");
    let report = c.free_distance(6).map_err(|e| e.to_string())?;
    // independent oracle over bitmask polynomials
    let rows = [[0b000u64, 0b111, 0b010, 0b101], [1, 1, 1, 1]];
    let mut oracle = u32::MAX;
    for m0 in 0u64..1 << 7 {
        for m1 in 0u64..1 << 7 {
            if m0 | m1 == 0 {
                continue;
            }
            let w = (0..4).map(|j| (gf2::mul(m0, rows[0][j]) ^ gf2::mul(m1, rows[1][j])).count_ones()).sum();
            oracle = oracle.min(w);
        }
    }
    ensure!(oracle == 4, "oracle minimum {oracle}");
    ensure!(report.value == 4, "search returned {}", report.value);
    let polys = polys_up_to(&f2, 5);
    for m0 in &polys {
        for m1 in &polys {
            let w = c.encode(&[m0.clone(), m1.clone()]).unwrap();
            if w.iter().all(Poly::is_zero) {
                continue;
            }
            let both = w.iter().any(Poly::is_zero) && w.iter().any(Poly::is_one);
            ensure!(!both, "codeword from ({m0}, {m1}) has a zero and a one entry");
        }
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let mut r = rng(2024);

    // self-duality criteria on a mixed corpus
    let corpus = mixed_corpus(48);
    ensure!(corpus.len() == 200, "corpus size {}", corpus.len());
    for c in &corpus {
        let sd = c.is_self_dual();
        ensure!(sd == (c.is_self_orthogonal() && c.is_noncatastrophic()), "criteria split on {}", c.generator());
        ensure!(sd == c.is_parity_check(), "parity-check criterion split on {}", c.generator());
    }

    // biduality
    for c in corpus.iter().filter(|c| c.is_noncatastrophic()) {
        ensure!(&c.dual().dual() == c, "biduality fails for {}", c.generator());
    }

    // decompositions: reconstruction and uniqueness under unimodular factors
    for q in [2, 3, 4, 5] {
        let field = f(q);
        for _ in 0..15 {
            let k = r.gen_range(1..=3);
            let n = r.gen_range(k..=4);
            let a = random_matrix(&field, &mut r, k, n, 2);
            if !a.has_full_row_rank() {
                continue;
            }
            let u = random_unimodular(&field, &mut r, k, 5, 2);
            let v = random_unimodular(&field, &mut r, n, 5, 2);
            let h = row_hermite(&a).unwrap();
            ensure!(h.transform.mul(&a).unwrap() == h.form, "row Hermite reconstruction");
            ensure!(row_hermite(&u.mul(&a).unwrap()).unwrap().form == h.form, "row Hermite uniqueness for {a}");
            let ch = col_hermite(&a).unwrap();
            ensure!(a.mul(&ch.transform).unwrap() == ch.form, "column Hermite reconstruction");
            ensure!(col_hermite(&a.mul(&v).unwrap()).unwrap().form == ch.form, "column Hermite uniqueness for {a}");
            let s = smith(&a).unwrap();
            ensure!(s.u.mul(&a).unwrap().mul(&s.v).unwrap() == s.s, "Smith reconstruction");
            let mixed = u.mul(&a).unwrap().mul(&v).unwrap();
            ensure!(smith(&mixed).unwrap().s == s.s, "Smith uniqueness for {a}");
            ensure!(s.is_identity_padded() == a.is_left_prime().unwrap(), "Smith [I 0] vs minor gcd for {a}");
        }
    }

    // closure of the constructions
    let f2 = f(2);
    let rep = code(&f2, "1,1");
    let c42 = code(&f2, "1,1,1,1 ; 0,1,z+1,z");
    ensure!(direct_sum(&c42, &rep).unwrap().is_self_dual(), "direct sum");
    let perm = OrthogonalStep::permutation(&f2, &random_permutation(&mut r, 4)).unwrap();
    ensure!(orthogonal_chain(&c42, &[perm]).unwrap().is_self_dual(), "orthogonal chain");
    let bu = building_up(&c42, &parse_vector(&f2, "1,z,z^2,z^2+z").unwrap(), f2.one(), f2.one()).unwrap();
    ensure!(bu.is_self_dual(), "building-up");
    for c in [&rep, &c42, &bu] {
        let g = hm_extend(c, &default_a_vec(c).unwrap()).unwrap();
        let res = find_completion(&g).unwrap();
        ensure!(res.kind == CompletionKind::NonTrivial, "completion of {}", c.generator());
        ensure!(ConvolutionalCode::new(res.generator).unwrap().is_self_dual(), "completion output");
    }

    // double upper triangular inputs
    for k in 1..=4 {
        let target = double_identity(&f2, k);
        for _ in 0..5 {
            let mut u = PolyMatrix::identity(&f2, k);
            for i in 0..k {
                for j in i + 1..k {
                    u.set(i, j, random_poly(&f2, &mut r, 2));
                }
            }
            let g = u.mul(&target).unwrap();
            ensure!(reduce_double_triangular(&g).unwrap() == target, "reduction of {g}");
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "F_5 worked example", limit: Duration::from_secs(1), run: f5_worked_example },
        Criterion { id: 2, name: "catastrophic counterexample", limit: Duration::from_secs(1), run: catastrophic_counterexample },
        Criterion { id: 3, name: "(2,1) existence table", limit: Duration::from_secs(5), run: two_one_existence_table },
        Criterion { id: 4, name: "(4,2) enumeration", limit: Duration::from_secs(10), run: four_two_enumeration },
        Criterion { id: 5, name: "building-up worked example", limit: Duration::from_secs(1), run: building_up_example },
        Criterion { id: 6, name: "completion criterion, both directions", limit: Duration::from_secs(60), run: completion_criterion },
        Criterion { id: 7, name: "completion examples", limit: Duration::from_secs(1), run: completion_examples },
        Criterion { id: 8, name: "free distance 4 and entry exclusion", limit: Duration::from_secs(30), run: sparse_code_distance },
        Criterion { id: 9, name: "property suite", limit: Duration::from_secs(120), run: property_suite },
    ];
    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= c.limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:?}, limit {:?}", c.limit))
            }
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {} ({:.3}s)", c.id, c.name, elapsed.as_secs_f64()),
            Err(e) => {
                failures += 1;
                println!("criterion {}: FAIL  {} ({:.3}s): {e}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        println!("acceptance: 9/9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
