//! Acceptance run: one line per criterion, exact comparisons, wall-clock bounds.
//!
//! Exits non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gvb_core::braided::{
    builtin_algebras, diagonal_braiding, hoffman_stuffle, qpoly, relation_reports, BraidedAlgebra,
};
use gvb_core::qshuffle::{
    associativity_report, full_product, quantum_shuffle_report, verify_theorem_upto,
};
use gvb_core::qthat::{
    check_gvb_relations, fundamental_pair, lemma_qthat_report, perturb, r_matrix_fundamental,
    representation_reports, twist_involution_report, twist_matrix, Assignment,
};
use gvb_core::section::{recursion_check, section_table, shuffle_lemma_reports, SectionKind};
use gvb_core::tensor::{basis_tensors, Basis, Tensor};
use gvb_core::verify::{operator_list_report, LISTED_2_2_TERMS};
use gvb_core::{Exec, GvbWord, Scalar, VerificationReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn all_pass(reports: &[VerificationReport]) -> Outcome {
    let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.pass).collect();
    let instances: usize = reports.iter().map(|r| r.instances).sum();
    match failed.first() {
        None => outcome(
            true,
            format!("{} reports, {instances} instances", reports.len()),
        ),
        Some(r) => outcome(
            false,
            format!(
                "{} of {} reports failed; first: {} {}",
                failed.len(),
                reports.len(),
                r.subject,
                r.counterexample.clone().unwrap_or_default()
            ),
        ),
    }
}

fn words(list: &[&str]) -> BTreeSet<GvbWord> {
    list.iter().map(|w| GvbWord::parse(4, w).unwrap()).collect()
}

fn criterion_1() -> Outcome {
    let table = section_table(2, 2, SectionKind::Q);
    let expected: BTreeMap<&str, ([&str; 3], BTreeSet<GvbWord>)> = BTreeMap::from([
        ("e", (["e", "e", "e"], words(&["e"]))),
        ("s2", (["e", "s2", "e"], words(&["s2", "x2"]))),
        ("s3s2", (["s3", "s2", "e"], words(&["s3 s2", "x3 s2"]))),
        ("s1s2", (["e", "s1s2", "e"], words(&["s1 s2", "x1 s2"]))),
        (
            "s3s1s2",
            (
                ["s3", "s1s2", "e"],
                words(&["s3 s1 s2", "s3 x1 s2", "x3 s1 s2", "x3 x1 s2"]),
            ),
        ),
        (
            "s2s3s1s2",
            (
                ["s2s3", "s1s2", "e"],
                words(&["s2 s3 s1 s2", "x2 s3 s1 s2"]),
            ),
        ),
    ]);
    if table.entries.len() != expected.len() {
        return outcome(false, format!("{} entries", table.entries.len()));
    }
    for e in &table.entries {
        let Some((bubble, value)) = expected.get(e.reduced_word.as_str()) else {
            return outcome(false, format!("unexpected shuffle {}", e.reduced_word));
        };
        if e.bubble != bubble.to_vec() {
            return outcome(false, format!("{}: bubble {:?}", e.reduced_word, e.bubble));
        }
        let got: BTreeSet<GvbWord> = e
            .value
            .iter()
            .map(|t| GvbWord::parse(4, &t.word).unwrap())
            .collect();
        if &got != value
            || e.value.len() != value.len()
            || e.value.iter().any(|t| !t.coeff.is_one())
        {
            return outcome(
                false,
                format!(
                    "{}: Q = {:?}",
                    e.reduced_word,
                    e.value.iter().map(|t| &t.word).collect::<Vec<_>>()
                ),
            );
        }
    }
    outcome(
        true,
        "six shuffles, bubble decompositions and Q values match",
    )
}

/// `v⊗w + σ(v⊗w) + m(v⊗w)` computed from the structure constants.
fn one_one_expected(a: &BraidedAlgebra, v: u16, w: u16) -> Tensor {
    let x = Tensor::from_terms([(Basis::from_slice(&[v, w]), Scalar::one())]);
    x.add(&a.braiding().apply_at(&x, 1))
        .add(&a.m().merge_at(&x, 1))
}

fn criterion_2a() -> Outcome {
    let mut n = 0;
    for a in builtin_algebras() {
        for v in a.hat_indices() {
            for w in a.hat_indices() {
                let got = full_product(
                    &a,
                    &Tensor::pure(&[v as usize]),
                    &Tensor::pure(&[w as usize]),
                );
                if got != one_one_expected(&a, v, w) {
                    return outcome(
                        false,
                        format!(
                            "{}: {} * {}",
                            a.name(),
                            a.labels()[v as usize],
                            a.labels()[w as usize]
                        ),
                    );
                }
                n += 1;
            }
        }
    }
    outcome(
        true,
        format!("(1,1) product = (id + σ + m)(v⊗w) on {n} basis pairs over all built-in algebras"),
    )
}

fn criterion_2b() -> Outcome {
    let reports: Vec<VerificationReport> = builtin_algebras()
        .iter()
        .map(|a| {
            operator_list_report(
                a,
                &LISTED_2_2_TERMS,
                "(2,2) product = the twelve listed operator words",
            )
        })
        .collect();
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            format!(
                "{} ({} of {} inputs differ)",
                r.subject,
                r.instances - r.passed,
                r.instances
            )
        })
        .collect();
    if failed.is_empty() {
        outcome(true, "all built-in algebras")
    } else {
        outcome(
            false,
            format!(
                "{}; first counterexample {}",
                failed.join("; "),
                reports
                    .iter()
                    .find(|r| !r.pass)
                    .unwrap()
                    .counterexample
                    .clone()
                    .unwrap()
            ),
        )
    }
}

fn diagnostic_2b() -> Outcome {
    let mut thirteen = LISTED_2_2_TERMS.to_vec();
    thirteen.push("m2");
    let reports: Vec<VerificationReport> = builtin_algebras()
        .iter()
        .map(|a| operator_list_report(a, &thirteen, "(2,2) product = twelve listed words + m2"))
        .collect();
    all_pass(&reports)
}

fn criterion_3() -> Outcome {
    let mut reports = Vec::new();
    for a in [hoffman_stuffle(6), qpoly(4)] {
        reports.extend(verify_theorem_upto(
            &a,
            6,
            100_000,
            100,
            2013,
            Exec::Parallel,
        ));
    }
    let exhaustive = reports.iter().all(|r| r.note.is_none());
    let mut o = all_pass(&reports);
    o.detail = format!(
        "{} ({})",
        o.detail,
        if exhaustive {
            "all exhaustive"
        } else {
            "some sampled"
        }
    );
    o
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for total in 2..=7 {
        for p in 1..total {
            n += 1;
            if !recursion_check(p, total - p) {
                bad.push((p, total - p));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{n} (p,q) pairs")
        } else {
            format!("fails at {bad:?}")
        },
    )
}

type StuffleMemo = HashMap<(Vec<usize>, Vec<usize>), BTreeMap<Vec<usize>, i64>>;

/// Hoffman's quasi-shuffle on words over `z_1..z_n`, truncated past `n`.
fn stuffle(
    u: &[usize],
    v: &[usize],
    n: usize,
    memo: &mut StuffleMemo,
) -> BTreeMap<Vec<usize>, i64> {
    if u.is_empty() || v.is_empty() {
        return BTreeMap::from([([u, v].concat(), 1)]);
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut add = |head: usize, part: BTreeMap<Vec<usize>, i64>| {
        for (w, c) in part {
            *out.entry([&[head][..], &w].concat()).or_default() += c;
        }
    };
    add(u[0], stuffle(&u[1..], v, n, memo));
    add(v[0], stuffle(u, &v[1..], n, memo));
    if u[0] + v[0] <= n {
        add(u[0] + v[0], stuffle(&u[1..], &v[1..], n, memo));
    }
    out.retain(|_, c| *c != 0);
    memo.insert(key, out.clone());
    out
}

fn criterion_5() -> Outcome {
    let d = diagonal_braiding(2, &[vec![2, -1], vec![-1, 2]]).unwrap();
    let qs = quantum_shuffle_report(&d, 6, Exec::Parallel);
    if !qs.pass {
        return outcome(false, format!("m = 0: {}", qs.counterexample.unwrap()));
    }
    let a = hoffman_stuffle(6);
    let mut memo = HashMap::new();
    let mut count = 0usize;
    for n in 0..=6 {
        for b in basis_tensors(&a.hat_indices(), n) {
            for p in 0..=n {
                let u: Vec<usize> = b[..p].iter().map(|&i| i as usize).collect();
                let v: Vec<usize> = b[p..].iter().map(|&i| i as usize).collect();
                let got = full_product(&a, &Tensor::pure(&u), &Tensor::pure(&v));
                let want =
                    Tensor::from_terms(stuffle(&u, &v, 6, &mut memo).into_iter().map(|(w, c)| {
                        (w.iter().map(|&i| i as u16).collect(), Scalar::from_int(c))
                    }));
                if got != want {
                    return outcome(false, format!("stuffle {u:?} * {v:?}"));
                }
                count += 1;
            }
        }
    }
    outcome(
        true,
        format!(
            "m = 0: {} inputs; stuffle: {count} word pairs",
            qs.instances
        ),
    )
}

fn criterion_6() -> (Outcome, Outcome) {
    let reports = shuffle_lemma_reports(7, Exec::Parallel);
    let (literal, main): (Vec<_>, Vec<_>) = reports
        .into_iter()
        .partition(|r| r.subject.contains("literal"));
    (all_pass(&main), all_pass(&literal))
}

fn criterion_7() -> Outcome {
    let mut reports = Vec::new();
    for a in builtin_algebras() {
        for n in [3, 4] {
            reports.extend(relation_reports(&a, n, Exec::Parallel));
        }
    }
    let (_, fcheck, td) = fundamental_pair(2);
    reports.push(twist_involution_report(&fcheck));
    reports.push(lemma_qthat_report(&r_matrix_fundamental(3), &twist_matrix(&td), 3).unwrap());
    reports.extend(representation_reports(2, 3, Assignment::Standard, Exec::Parallel).unwrap());
    all_pass(&reports)
}

fn diagnostic_7() -> Outcome {
    all_pass(&representation_reports(2, 3, Assignment::Swapped, Exec::Parallel).unwrap())
}

fn criterion_8() -> Outcome {
    let base = qpoly(4);
    let mutant = base.with_m_constant(1, 2, 3, Scalar::from_int(5));
    let alg = relation_reports(&mutant, 3, Exec::Parallel);
    let alg_caught = alg.iter().find(|r| !r.pass && r.counterexample.is_some());

    let (rcheck, fcheck, _) = fundamental_pair(2);
    let braid_ok = |r: &gvb_core::OpMatrix| {
        let g = Assignment::Standard.generators(3, r, &fcheck).unwrap();
        check_gvb_relations(&g, Exec::Parallel)
            .into_iter()
            .find(|r| r.subject.starts_with("braid s1"))
            .unwrap()
    };
    let clean = braid_ok(&rcheck);
    let perturbed = braid_ok(&perturb(&rcheck, 1, 3));
    let mat_caught = clean.pass && !perturbed.pass && perturbed.counterexample.is_some();
    match (alg_caught, mat_caught) {
        (Some(r), true) => outcome(
            true,
            format!(
                "algebra: `{}`; matrix: `{}` at {}",
                r.subject,
                perturbed.subject,
                perturbed.counterexample.unwrap()
            ),
        ),
        _ => outcome(
            false,
            format!(
                "algebra caught: {}, matrix caught: {mat_caught}",
                alg_caught.is_some()
            ),
        ),
    }
}

fn criterion_9() -> Outcome {
    let reports: Vec<VerificationReport> = builtin_algebras()
        .iter()
        .map(|a| associativity_report(a, 50, 5, 2013, Exec::Parallel))
        .collect();
    all_pass(&reports)
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut line = |id: &str,
                    what: &str,
                    bound: Duration,
                    run: &mut dyn FnMut() -> Outcome,
                    diagnostic: bool| {
        let t = Instant::now();
        let o = run();
        let dt = t.elapsed();
        let in_time = dt <= bound;
        let pass = o.pass && in_time;
        let tag = match (diagnostic, pass) {
            (true, true) => "info PASS",
            (true, false) => "info FAIL",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        if !diagnostic && !pass {
            failures += 1;
        }
        let timing = format!(
            "{:.2}s / bound {}s{}",
            dt.as_secs_f64(),
            bound.as_secs(),
            if in_time { "" } else { " EXCEEDED" }
        );
        println!("[{id:>3}] {tag:<9} {what} ({timing}): {}", o.detail);
    };
    let secs = Duration::from_secs;
    line(
        "1",
        "section table (2,2): six bubble decompositions and Q values",
        secs(1),
        &mut criterion_1,
        false,
    );
    line(
        "2a",
        "(1,1) product is (id + σ + m)(v⊗w)",
        secs(1),
        &mut criterion_2a,
        false,
    );
    line(
        "2b",
        "(2,2) product equals the twelve listed operator words, every built-in algebra",
        secs(1),
        &mut criterion_2b,
        false,
    );
    line(
        "2b*",
        "(2,2) product equals the twelve listed words plus m2",
        secs(1),
        &mut diagnostic_2b,
        true,
    );
    line(
        "3",
        "recursion = section sum, p+q ≤ 6, hoffman_stuffle(6) and qpoly(4)",
        secs(600),
        &mut criterion_3,
        false,
    );
    line(
        "4",
        "shuffle recursion identity, p+q ≤ 7",
        secs(60),
        &mut criterion_4,
        false,
    );
    line(
        "5",
        "m = 0 gives the quantum shuffle; flip braiding gives the stuffle oracle, degree ≤ 6",
        secs(300),
        &mut criterion_5,
        false,
    );
    let (main6, literal6) = criterion_6();
    let mut c6 = Some(main6);
    line(
        "6",
        "bubble-profile lemmas and part descriptions, p+q ≤ 7",
        secs(60),
        &mut || c6.take().unwrap(),
        false,
    );
    let mut l6 = Some(literal6);
    line(
        "6*",
        "t_s > s − p read literally, zero components included",
        secs(60),
        &mut || l6.take().unwrap(),
        true,
    );
    line("7", "relations on Ṽ^{⊗n} (n = 3, 4) and sl3 (σ↦Ř, ξ↦F̌) at n = 3 with F̌² = id and the R–F identities", secs(120), &mut criterion_7, false);
    line(
        "7*",
        "sl3 with σ↦F̌, ξ↦Ř at n = 3",
        secs(120),
        &mut diagnostic_7,
        true,
    );
    line(
        "8",
        "negative controls: mutated structure constant, perturbed Ř entry",
        secs(60),
        &mut criterion_8,
        false,
    );
    line(
        "9",
        "associativity of ∗ on 50 seeded triples per built-in algebra",
        secs(300),
        &mut criterion_9,
        false,
    );
    println!("acceptance: {} criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
