//! Named groups of verification runs, shared by the command line and the
//! acceptance tests.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::braided::{
    builtin_algebras, check_axioms, diagonal_braiding, prop_vic_report, qpoly, relation_reports,
    BraidedAlgebra,
};
use crate::error::Result;
use crate::exec::Exec;
use crate::qshuffle::{
    apply_operator_word, associativity_report, hat_inputs, quantum_shuffle_report,
    verify_theorem_upto, Inductive, SampleMode,
};
use crate::qthat::{
    check_gvb_relations, fundamental_pair, pair_reports, perturb, representation_reports,
    Assignment,
};
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::Scalar;
use crate::section::{recursion_sides, section_property_report, shuffle_lemma_reports};
use crate::tensor::{basis_tensors, Basis, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Group {
    Section,
    Lemmas,
    Recursion,
    Axioms,
    Theorem,
    QuantumShuffle,
    Stuffle,
    Associativity,
    Relations,
    Representation,
    Negative,
    /// Literal readings that are known not to hold; never part of the default run.
    Literal,
}

impl Group {
    pub const DEFAULT: [Group; 11] = [
        Group::Section,
        Group::Lemmas,
        Group::Recursion,
        Group::Axioms,
        Group::Theorem,
        Group::QuantumShuffle,
        Group::Stuffle,
        Group::Associativity,
        Group::Relations,
        Group::Representation,
        Group::Negative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Section => "section",
            Group::Lemmas => "lemmas",
            Group::Recursion => "recursion",
            Group::Axioms => "axioms",
            Group::Theorem => "theorem",
            Group::QuantumShuffle => "quantum-shuffle",
            Group::Stuffle => "stuffle",
            Group::Associativity => "associativity",
            Group::Relations => "relations",
            Group::Representation => "representation",
            Group::Negative => "negative",
            Group::Literal => "literal",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Group::DEFAULT
            .iter()
            .chain(&[Group::Literal])
            .find(|g| g.name() == s.trim() || g.name().replace('-', "_") == s.trim())
            .copied()
            .ok_or_else(|| format!("unknown group `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest `p + q` for product identities.
    pub max_degree: usize,
    /// Largest `p + q` for the combinatorial sweeps and the recursion identity.
    pub max_shuffle_size: usize,
    /// Restricts the recursion identity to a single `(p, q)`.
    pub only_pq: Option<(usize, usize)>,
    pub strands: Vec<usize>,
    pub rank: usize,
    pub seed: u64,
    pub cap: usize,
    pub samples: usize,
    pub associativity_triples: usize,
    pub algebras: Vec<BraidedAlgebra>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 6,
            max_shuffle_size: 7,
            only_pq: None,
            strands: vec![3, 4],
            rank: 2,
            seed: 2013,
            cap: 100_000,
            samples: 100,
            associativity_triples: 50,
            algebras: builtin_algebras(),
        }
    }
}

/// `Σ Q = Σ Q' + (Σ Q'')σ_1⋯σ_p + (Σ Q''')ξ_1σ_2⋯σ_p` for each `(p, q)`.
pub fn recursion_report(pairs: &[(usize, usize)], exec: Exec) -> VerificationReport {
    let mut rb = ReportBuilder::new("section: shuffle recursion identity");
    rb.extend(exec.map(pairs, |&(p, q)| {
        let (l, r) = recursion_sides(p, q);
        (l != r).then(|| json!({"p": p, "q": q, "lhs": l.to_string(), "rhs": r.to_string()}))
    }));
    rb.finish()
}

pub fn recursion_pairs(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n)
        .flat_map(|n| (1..n).map(move |p| (p, n - p)))
        .collect()
}

/// The stuffle product of words in `z_1..z_n_max` by its own recursion:
/// `au * bv = a(u * bv) + b(au * v) + [a+b](u * v)`, letters past `n_max` vanish.
pub fn stuffle_oracle(u: &[usize], v: &[usize], n_max: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert([u, v].concat(), 1);
        return out;
    }
    let mut push = |head: usize, rest: BTreeMap<Vec<usize>, i64>| {
        for (w, c) in rest {
            let mut k = vec![head];
            k.extend(w);
            *out.entry(k).or_insert(0) += c;
        }
    };
    push(u[0], stuffle_oracle(&u[1..], v, n_max));
    push(v[0], stuffle_oracle(u, &v[1..], n_max));
    if u[0] + v[0] <= n_max {
        push(u[0] + v[0], stuffle_oracle(&u[1..], &v[1..], n_max));
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The product on a flip-braided Hoffman algebra against [`stuffle_oracle`],
/// on all pairs of words with total length at most `max_degree`.
pub fn stuffle_report(a: &BraidedAlgebra, max_degree: usize, exec: Exec) -> VerificationReport {
    let n_max = a.dim() - 1;
    let mut rb = ReportBuilder::new(format!("{}: product = stuffle recursion", a.name()));
    for n in 0..=max_degree {
        let words = hat_inputs(a, n, SampleMode::AllBasis);
        let chunks: Vec<&[Basis]> = words.chunks(512).collect();
        for p in 0..=n {
            let res = exec.map(&chunks, |part| {
                let mut e = Inductive::new(a);
                part.iter()
                    .map(|b| {
                        let got = e.pure(&b[..p].into(), &b[p..].into());
                        let u: Vec<usize> = b[..p].iter().map(|&i| i as usize).collect();
                        let v: Vec<usize> = b[p..].iter().map(|&i| i as usize).collect();
                        let want = Tensor::from_terms(
                            stuffle_oracle(&u, &v, n_max)
                                .into_iter()
                                .map(|(w, c)| (w.into_iter().map(|i| i as u16).collect(), Scalar::from_int(c))),
                        );
                        (got != want).then(|| json!({"u": u, "v": v, "product": a.display(&got), "oracle": a.display(&want)}))
                    })
                    .collect::<Vec<_>>()
            });
            rb.extend(res.into_iter().flatten());
        }
    }
    rb.finish()
}

/// Operator words for the (2,2) product as commonly listed: twelve terms, `m2` absent.
pub const LISTED_2_2_TERMS: [&str; 12] = [
    "id",
    "s2",
    "s3 s2",
    "m3 s2",
    "s1 s2",
    "s3 s1 s2",
    "m3 s1 s2",
    "s2 s3 s1 s2",
    "m2 s3 s1 s2",
    "m1 s2",
    "m1 s3 s2",
    "m2 m1 s2",
];

/// Sum of operator words applied to a pure tensor.
pub fn operator_sum(a: &BraidedAlgebra, terms: &[&str], x: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for t in terms {
        out.add_scaled(&apply_operator_word(a, t, x)?, &Scalar::one());
    }
    Ok(out)
}

/// Compares `(v1⊗v2) ∗ (v3⊗v4)` with an operator list on every `V̂` basis input.
pub fn operator_list_report(
    a: &BraidedAlgebra,
    terms: &[&str],
    subject: &str,
) -> VerificationReport {
    let mut rb = ReportBuilder::new(format!("{}: {subject}", a.name()));
    let mut e = Inductive::new(a);
    for b in basis_tensors(&a.hat_indices(), 4) {
        let got = e.pure(&b[..2].into(), &b[2..].into());
        let x = Tensor::from_terms([(b.clone(), Scalar::one())]);
        let want = operator_sum(a, terms, &x).expect("valid operator words");
        rb.check(got == want, || json!({"input": a.display(&x), "product": a.display(&got), "operators": a.display(&want)}));
    }
    rb.finish()
}

/// A report that passes when `inner` failed with a witness.
fn expect_failure(subject: String, inner: &[VerificationReport]) -> VerificationReport {
    let caught = inner.iter().find(|r| !r.pass && r.counterexample.is_some());
    let mut rb = ReportBuilder::new(subject);
    rb.check(
        caught.is_some(),
        || json!({"reason": "mutation not detected"}),
    );
    if let Some(r) = caught {
        rb.note(format!(
            "caught by `{}`: {}",
            r.subject,
            r.counterexample.as_ref().unwrap()
        ));
    }
    rb.finish()
}

pub fn negative_control_reports(exec: Exec) -> Vec<VerificationReport> {
    let base = qpoly(4);
    let m_mut = base.with_m_constant(1, 1, 2, Scalar::from_int(2));
    let mut inner = check_axioms(&m_mut, exec);
    inner.extend(relation_reports(&m_mut, 3, exec));
    let mut out = vec![expect_failure(
        "negative control: perturbed product constant is detected".into(),
        &inner,
    )];

    let b_mut = base.with_braid_constant(1, 2, 2, 1, Scalar::q_pow(3));
    let inner = relation_reports(&b_mut, 3, exec);
    out.push(expect_failure(
        "negative control: perturbed braiding constant breaks a relation".into(),
        &inner,
    ));

    let nonassoc = crate::braided::hoffman_stuffle(4)
        .with_m_constant(1, 1, 2, Scalar::zero())
        .with_m_constant(1, 1, 1, Scalar::one());
    out.push(expect_failure(
        "negative control: non-associative product breaks the σ^m braid relation".into(),
        &[prop_vic_report(&nonassoc, exec)],
    ));

    let (rcheck, fcheck, _) = fundamental_pair(2);
    let g = Assignment::Swapped
        .generators(3, &perturb(&rcheck, 1, 3), &fcheck)
        .expect("sizes match");
    out.push(expect_failure(
        "negative control: perturbed Ř entry breaks a relation".into(),
        &check_gvb_relations(&g, exec),
    ));
    out
}

/// Runs the requested groups, handing each report to `sink` as soon as it is ready.
pub fn run(
    groups: &[Group],
    cfg: &VerifyConfig,
    exec: Exec,
    mut sink: impl FnMut(VerificationReport),
) -> Result<()> {
    for &g in groups {
        match g {
            Group::Section => sink(section_property_report(cfg.max_shuffle_size)),
            Group::Lemmas => {
                for r in shuffle_lemma_reports(cfg.max_shuffle_size, exec) {
                    if !r.subject.contains("literal") {
                        sink(r);
                    }
                }
            }
            Group::Recursion => {
                let pairs = match cfg.only_pq {
                    Some(pq) => vec![pq],
                    None => recursion_pairs(cfg.max_shuffle_size),
                };
                sink(recursion_report(&pairs, exec));
            }
            Group::Axioms => {
                for a in &cfg.algebras {
                    check_axioms(a, exec).into_iter().for_each(&mut sink);
                    sink(prop_vic_report(a, exec));
                }
            }
            Group::Theorem => {
                for a in &cfg.algebras {
                    verify_theorem_upto(a, cfg.max_degree, cfg.cap, cfg.samples, cfg.seed, exec)
                        .into_iter()
                        .for_each(&mut sink);
                }
            }
            Group::QuantumShuffle => {
                let zero_m: Vec<&BraidedAlgebra> = cfg
                    .algebras
                    .iter()
                    .filter(|a| {
                        a.m()
                            .entries()
                            .all(|(i, j, _, _)| i == a.unit_index() || j == a.unit_index())
                    })
                    .collect();
                if zero_m.is_empty() {
                    let d = diagonal_braiding(2, &[vec![2, -1], vec![-1, 2]])?;
                    sink(quantum_shuffle_report(&d, cfg.max_degree, exec));
                }
                for a in zero_m {
                    sink(quantum_shuffle_report(a, cfg.max_degree, exec));
                }
            }
            Group::Stuffle => {
                for a in cfg
                    .algebras
                    .iter()
                    .filter(|a| a.name().starts_with("hoffman_stuffle"))
                {
                    sink(stuffle_report(a, cfg.max_degree, exec));
                }
            }
            Group::Associativity => {
                for a in &cfg.algebras {
                    sink(associativity_report(
                        a,
                        cfg.associativity_triples,
                        5.min(cfg.max_degree.max(3)),
                        cfg.seed,
                        exec,
                    ));
                }
            }
            Group::Relations => {
                for a in &cfg.algebras {
                    for &n in &cfg.strands {
                        relation_reports(a, n, exec).into_iter().for_each(&mut sink);
                    }
                }
            }
            Group::Representation => {
                pair_reports(cfg.rank)?.into_iter().for_each(&mut sink);
                for &n in cfg.strands.iter().filter(|&&n| n <= 3) {
                    representation_reports(cfg.rank, n, Assignment::Swapped, exec)?
                        .into_iter()
                        .for_each(&mut sink);
                }
            }
            Group::Negative => negative_control_reports(exec)
                .into_iter()
                .for_each(&mut sink),
            Group::Literal => {
                for r in shuffle_lemma_reports(cfg.max_shuffle_size, exec) {
                    if r.subject.contains("literal") {
                        sink(r);
                    }
                }
                for a in &cfg.algebras {
                    sink(operator_list_report(
                        a,
                        &LISTED_2_2_TERMS,
                        "(2,2) product = twelve listed operator words",
                    ));
                }
                representation_reports(cfg.rank, 3, Assignment::Standard, exec)?
                    .into_iter()
                    .for_each(&mut sink);
            }
        }
    }
    Ok(())
}
