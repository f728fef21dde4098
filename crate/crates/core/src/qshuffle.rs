//! The quantum quasi-shuffle product on `T(Ṽ)`, both by its defining
//! three-term recursion and through the lifted section sum, plus the
//! degenerations to quantum shuffles.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::braided::BraidedAlgebra;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::Scalar;
use crate::section::{beta, braid_sum_over_shuffles, sum_over_shuffles};
use crate::tensor::{basis_tensors, Basis, Tensor};
use crate::word::{Generator, GvbWord, Kind, WordSum};

/// Applies one generator to a homogeneous tensor of degree `n`.
pub fn act_generator(a: &BraidedAlgebra, g: Generator, x: &Tensor, n: usize) -> Result<Tensor> {
    if g.index == 0 || g.index >= n {
        return Err(Error::GeneratorIndex {
            index: g.index,
            strands: n,
        });
    }
    match x.homogeneous_degree() {
        Some(d) if d == n || x.is_zero() => Ok(a.act_generator_unchecked(g.kind, g.index, x)),
        _ => Err(Error::Inhomogeneous(n)),
    }
}

pub fn act_word(a: &BraidedAlgebra, w: &GvbWord, x: &Tensor) -> Result<Tensor> {
    a.act_word(w, x)
}

pub fn act_wordsum(a: &BraidedAlgebra, s: &WordSum, x: &Tensor) -> Result<Tensor> {
    a.act_wordsum(s, x)
}

/// Removes every unit factor.
pub fn delete_ones(a: &BraidedAlgebra, x: &Tensor) -> Tensor {
    x.delete_index(a.unit_index() as u16)
}

/// Evaluates an operator word such as `m2 m1 s2` (rightmost first), where
/// `s_i`, `x_i` act by `σ`, `σ^m` and `m_i` multiplies slots `i, i+1`.
pub fn apply_operator_word(a: &BraidedAlgebra, word: &str, x: &Tensor) -> Result<Tensor> {
    let mut letters = Vec::new();
    let cleaned: String = word
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect();
    if cleaned == "id" || cleaned == "e" || cleaned.is_empty() {
        return Ok(x.clone());
    }
    let mut chars = cleaned.chars().peekable();
    while let Some(c) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let i: usize = digits
            .parse()
            .map_err(|_| Error::WordParse(word.to_string()))?;
        match c {
            's' | 'σ' | 'x' | 'ξ' | 'm' if i > 0 => letters.push((c, i)),
            _ => return Err(Error::WordParse(word.to_string())),
        }
    }
    let mut cur = x.clone();
    for &(c, i) in letters.iter().rev() {
        let n = cur.homogeneous_degree().ok_or(Error::Inhomogeneous(0))?;
        if !cur.is_zero() && i >= n {
            return Err(Error::GeneratorIndex {
                index: i,
                strands: n,
            });
        }
        cur = match c {
            's' | 'σ' => a.act_generator_unchecked(Kind::Braid, i, &cur),
            'x' | 'ξ' => a.act_generator_unchecked(Kind::Virtual, i, &cur),
            _ => a.m().merge_at(&cur, i),
        };
    }
    Ok(cur)
}

/// Evaluator for the defining recursion, memoized on pure tensor pairs.
pub struct Inductive<'a> {
    alg: &'a BraidedAlgebra,
    betas: Vec<GvbWord>,
    memo: HashMap<(Basis, Basis), Tensor>,
}

impl<'a> Inductive<'a> {
    pub fn new(alg: &'a BraidedAlgebra) -> Self {
        Inductive {
            alg,
            betas: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn beta(&mut self, p: usize) -> &GvbWord {
        while self.betas.len() <= p {
            let k = self.betas.len();
            self.betas.push(beta(k));
        }
        &self.betas[p]
    }

    fn apply_letters(&self, w: &GvbWord, offset: usize, x: &Tensor) -> Tensor {
        let mut cur = x.clone();
        for g in w.letters().iter().rev() {
            cur = self
                .alg
                .act_generator_unchecked(g.kind, g.index + offset, &cur);
        }
        cur
    }

    /// Bilinear extension over homogeneous components and pure terms.
    pub fn product(&mut self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let r = self.pure(a, b);
                out.add_scaled(&r, &(c * d));
            }
        }
        out
    }

    pub fn pure(&mut self, a: &Basis, b: &Basis) -> Tensor {
        let (p, q) = (a.len(), b.len());
        if p == 0 || q == 0 {
            let mut key = a.clone();
            key.extend_from_slice(b);
            return Tensor::from_terms([(key, Scalar::one())]);
        }
        let memo_key = (a.clone(), b.clone());
        if let Some(r) = self.memo.get(&memo_key) {
            return r.clone();
        }
        let mut out = Tensor::zero();

        // v_1 ⊗ (v_2..v_p ∗ B)
        let tail: Basis = a[1..].into();
        out.add_scaled(&self.pure(&tail, b).prepend(a[0]), &Scalar::one());

        let mut whole = a.clone();
        whole.extend_from_slice(b);
        let x = Tensor::from_terms([(whole, Scalar::one())]);

        // (id ⊗ ∗_{p,q-1}) (β_{p,1} ⊗ id)
        let bp = self.beta(p).clone();
        let braided = self.apply_letters(&bp, 0, &x);
        for (w, c) in braided.terms() {
            let left: Basis = w[1..=p].into();
            let right: Basis = w[p + 1..].into();
            let r = self.pure(&left, &right).prepend(w[0]);
            out.add_scaled(&r, c);
        }

        // (m ⊗ ∗_{p-1,q-1}) (id ⊗ β_{p-1,1} ⊗ id)
        let bq = self.beta(p - 1).clone();
        let braided = self.apply_letters(&bq, 1, &x);
        for (w, c) in braided.terms() {
            let prod = self.alg.m().image(w[0] as usize, w[1] as usize).to_vec();
            if prod.is_empty() {
                continue;
            }
            let left: Basis = w[2..=p].into();
            let right: Basis = w[p + 1..].into();
            let rest = self.pure(&left, &right);
            for (k, s) in prod {
                out.add_scaled(&rest.prepend(k), &(c * &s));
            }
        }
        self.memo.insert(memo_key, out.clone());
        out
    }
}

fn homogeneous(x: &Tensor) -> Result<usize> {
    x.homogeneous_degree()
        .ok_or(Error::Inhomogeneous(x.degree_range().map_or(0, |r| r.0)))
}

/// `A ∗_{p,q} B` by the three-term recursion.
pub fn qqs_inductive(a: &BraidedAlgebra, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    homogeneous(x)?;
    homogeneous(y)?;
    Ok(Inductive::new(a).product(x, y))
}

fn reject_units(a: &BraidedAlgebra, x: &Tensor) -> Result<()> {
    let u = a.unit_index() as u16;
    if x.terms().any(|(b, _)| b.contains(&u)) {
        return Err(Error::UnitFactor);
    }
    x.check_indices(a.dim())
}

/// `D(Σ_{σ ∈ S_{p,q}} Q_{p,q}(σ)(A ⊗ B))`, for `A`, `B` in the non-unit span.
pub fn qqs_section(a: &BraidedAlgebra, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    let (p, q) = (homogeneous(x)?, homogeneous(y)?);
    reject_units(a, x)?;
    reject_units(a, y)?;
    qqs_section_with(a, &sum_over_shuffles(p, q), x, y)
}

fn qqs_section_with(a: &BraidedAlgebra, sum: &WordSum, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    Ok(delete_ones(a, &a.act_wordsum(sum, &x.concat(y))?))
}

/// `Σ_{σ ∈ S_{p,q}} T_{p,q}(σ)(A ⊗ B)`.
pub fn quantum_shuffle(a: &BraidedAlgebra, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    let (p, q) = (homogeneous(x)?, homogeneous(y)?);
    a.act_wordsum(&braid_sum_over_shuffles(p, q), &x.concat(y))
}

/// The product of `T_{σ,m}(V)` on arbitrary tensors.
pub fn full_product(a: &BraidedAlgebra, x: &Tensor, y: &Tensor) -> Tensor {
    Inductive::new(a).product(x, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    AllBasis,
    Random { count: usize, seed: u64 },
}

/// All pure `V̂`-tensors of degree `n` when there are at most `cap`, else
/// `samples` seeded random ones.
pub fn hat_inputs(a: &BraidedAlgebra, n: usize, mode: SampleMode) -> Vec<Basis> {
    let hat = a.hat_indices();
    match mode {
        SampleMode::AllBasis => basis_tensors(&hat, n),
        SampleMode::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
            (0..count)
                .map(|_| {
                    (0..n)
                        .map(|_| hat[rng.random_range(0..hat.len())])
                        .collect()
                })
                .collect()
        }
    }
}

pub fn choose_mode(
    a: &BraidedAlgebra,
    n: usize,
    cap: usize,
    samples: usize,
    seed: u64,
) -> SampleMode {
    let total = (a.dim() - 1).checked_pow(n as u32).unwrap_or(usize::MAX);
    if total <= cap {
        SampleMode::AllBasis
    } else {
        SampleMode::Random {
            count: samples,
            seed,
        }
    }
}

/// Compares the recursion against the section formula on the selected inputs.
pub fn verify_theorem(
    a: &BraidedAlgebra,
    p: usize,
    q: usize,
    mode: SampleMode,
    exec: Exec,
) -> VerificationReport {
    let mut rb = ReportBuilder::new(format!("{}: recursion = section sum, ({p},{q})", a.name()));
    let inputs = hat_inputs(a, p + q, mode);
    let sum = sum_over_shuffles(p, q);
    let chunk = 256;
    let chunks: Vec<&[Basis]> = inputs.chunks(chunk).collect();
    let results = exec.map(&chunks, |part| {
        let mut engine = Inductive::new(a);
        part.iter()
            .map(|b| {
                let (l, r): (Basis, Basis) = (b[..p].into(), b[p..].into());
                let lhs = engine.pure(&l, &r);
                let x = Tensor::from_terms([(l.clone(), Scalar::one())]);
                let y = Tensor::from_terms([(r.clone(), Scalar::one())]);
                let rhs = qqs_section_with(a, &sum, &x, &y).expect("degrees match");
                (lhs != rhs).then(|| {
                    json!({"left": a.display(&x), "right": a.display(&y), "inductive": a.display(&lhs), "section": a.display(&rhs)})
                })
            })
            .collect::<Vec<_>>()
    });
    rb.extend(results.into_iter().flatten());
    if let SampleMode::Random { count, seed } = mode {
        rb.note(format!("{count} random inputs, seed {seed}"));
    }
    rb.finish()
}

/// [`verify_theorem`] for every `p, q ≥ 1` with `p + q ≤ max_degree`.
pub fn verify_theorem_upto(
    a: &BraidedAlgebra,
    max_degree: usize,
    cap: usize,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for n in 2..=max_degree {
        for p in 1..n {
            out.push(verify_theorem(
                a,
                p,
                n - p,
                choose_mode(a, n, cap, samples, seed),
                exec,
            ));
        }
    }
    out
}

/// With `m = 0` the recursion must reduce to the braid-only shuffle sum.
pub fn quantum_shuffle_report(
    a: &BraidedAlgebra,
    max_degree: usize,
    exec: Exec,
) -> VerificationReport {
    let mut rb = ReportBuilder::new(format!("{}: recursion = quantum shuffle", a.name()));
    for n in 2..=max_degree {
        for p in 1..n {
            let q = n - p;
            let sum = braid_sum_over_shuffles(p, q);
            let inputs = hat_inputs(a, n, SampleMode::AllBasis);
            rb.extend(exec.map(&inputs, |b| {
                let x = Tensor::from_terms([(b.clone(), Scalar::one())]);
                let lhs = Inductive::new(a).pure(&b[..p].into(), &b[p..].into());
                let rhs = a.act_wordsum(&sum, &x).expect("degree matches");
                (lhs != rhs).then(|| json!({"input": a.display(&x), "p": p, "inductive": a.display(&lhs), "shuffle": a.display(&rhs)}))
            }));
        }
    }
    rb.finish()
}

/// A random tensor of degree `n` in the non-unit span with small integer coefficients.
pub fn random_tensor(a: &BraidedAlgebra, n: usize, rng: &mut impl Rng) -> Tensor {
    let hat = a.hat_indices();
    let terms = rng.random_range(1..=3);
    let mut x = Tensor::zero();
    while x.is_zero() {
        for _ in 0..terms {
            let b: Basis = (0..n)
                .map(|_| hat[rng.random_range(0..hat.len())])
                .collect();
            let c = rng.random_range(-3i64..=3);
            x.add_term(b, Scalar::from_int(c));
        }
    }
    x
}

/// `(x∗y)∗z = x∗(y∗z)` on seeded random triples with degrees summing to at most `max_total`.
pub fn associativity_report(
    a: &BraidedAlgebra,
    triples: usize,
    max_total: usize,
    seed: u64,
    exec: Exec,
) -> VerificationReport {
    let mut rb = ReportBuilder::new(format!("{}: associativity of ∗", a.name()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(Tensor, Tensor, Tensor)> = (0..triples)
        .map(|_| {
            let total = rng.random_range(3..=max_total.max(3));
            let d1 = rng.random_range(1..=total - 2);
            let d2 = rng.random_range(1..=total - d1 - 1);
            let d3 = total - d1 - d2;
            (
                random_tensor(a, d1, &mut rng),
                random_tensor(a, d2, &mut rng),
                random_tensor(a, d3, &mut rng),
            )
        })
        .collect();
    rb.extend(exec.map(&cases, |(x, y, z)| {
        let mut e = Inductive::new(a);
        let xy = e.product(x, y);
        let lhs = e.product(&xy, z);
        let yz = e.product(y, z);
        let rhs = e.product(x, &yz);
        (lhs != rhs).then(|| json!({"x": a.display(x), "y": a.display(y), "z": a.display(z)}))
    }));
    rb.note(format!("seed {seed}"));
    rb.finish()
}
