//! Braided algebras `(Ṽ, m, σ)` given by structure constants on a finite basis
//! that contains the unit `𝟏`.
//!
//! The m–σ compatibility laws are checked in the orientation
//!
//! ```text
//! σ ∘ (id ⊗ m) = (m ⊗ id) ∘ (id ⊗ σ) ∘ (σ ⊗ id)
//! σ ∘ (m ⊗ id) = (id ⊗ m) ∘ (σ ⊗ id) ∘ (id ⊗ σ)
//! ```
//!
//! which the flip braiding satisfies for every multiplication.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::report::{ReportBuilder, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{basis_tensors, Basis, PairMap, ProductMap, Tensor};
use crate::word::{relations, GvbWord, Kind, WordSum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedAlgebra {
    name: String,
    unit: usize,
    labels: Vec<String>,
    m: ProductMap,
    braid: PairMap,
    sigma_m: PairMap,
}

impl BraidedAlgebra {
    /// Builds an algebra from explicit constants. Nothing is filled in; use
    /// [`BraidedAlgebra::adjoin_unit_laws`] to impose the unit laws.
    pub fn new(
        name: impl Into<String>,
        unit: usize,
        labels: Vec<String>,
        m: ProductMap,
        braid: PairMap,
    ) -> Result<Self> {
        let dim = labels.len();
        if m.dim() != dim || braid.dim() != dim {
            return Err(Error::SizeMismatch(m.dim().max(braid.dim()), dim));
        }
        if unit >= dim {
            return Err(Error::BasisIndex { index: unit, dim });
        }
        if dim > u16::MAX as usize {
            return Err(Error::Algebra(format!("dimension {dim} too large")));
        }
        let sigma_m = sigma_m_from(&m, unit);
        Ok(BraidedAlgebra {
            name: name.into(),
            unit,
            labels,
            m,
            braid,
            sigma_m,
        })
    }

    /// Overwrites every product and braiding involving `𝟏` so that
    /// `m(v⊗𝟏) = m(𝟏⊗v) = v`, `σ(𝟏⊗v) = v⊗𝟏` and `σ(v⊗𝟏) = 𝟏⊗v`.
    pub fn adjoin_unit_laws(mut self) -> Self {
        let u = self.unit;
        for v in 0..self.dim() {
            self.m.clear(u, v);
            self.m.clear(v, u);
            self.m.set(u, v, v, Scalar::one());
            self.m.set(v, u, v, Scalar::one());
            self.braid.clear(u, v);
            self.braid.clear(v, u);
            self.braid.set(u, v, v, u, Scalar::one());
            self.braid.set(v, u, u, v, Scalar::one());
        }
        self.sigma_m = sigma_m_from(&self.m, u);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn m(&self) -> &ProductMap {
        &self.m
    }

    pub fn braiding(&self) -> &PairMap {
        &self.braid
    }

    /// `v⊗w ↦ 𝟏⊗m(v⊗w)`.
    pub fn sigma_m_operator(&self) -> &PairMap {
        &self.sigma_m
    }

    /// Basis indices of the non-unit part `V̂`.
    pub fn hat_indices(&self) -> Vec<u16> {
        (0..self.dim())
            .filter(|&i| i != self.unit)
            .map(|i| i as u16)
            .collect()
    }

    pub fn all_indices(&self) -> Vec<u16> {
        (0..self.dim() as u16).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        let label = label.trim();
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses `"z1,z2"` into the pure tensor `z1⊗z2`; an empty string is the scalar 1.
    pub fn parse_pure(&self, text: &str) -> Result<Tensor> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Tensor::scalar(Scalar::one()));
        }
        let idx = text
            .split([',', '⊗'])
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tensor::pure(&idx))
    }

    pub fn display(&self, x: &Tensor) -> String {
        x.display_with(&self.labels)
    }

    /// Returns a copy with one product constant replaced.
    pub fn with_m_constant(&self, i: usize, j: usize, k: usize, c: Scalar) -> Self {
        let mut out = self.clone();
        out.name = format!("{}-mutant", self.name);
        out.m.set(i, j, k, c);
        out.sigma_m = sigma_m_from(&out.m, out.unit);
        out
    }

    /// Returns a copy with one braiding constant replaced.
    pub fn with_braid_constant(&self, i: usize, j: usize, k: usize, l: usize, c: Scalar) -> Self {
        let mut out = self.clone();
        out.name = format!("{}-mutant", self.name);
        out.braid.set(i, j, k, l, c);
        out
    }

    /// Applies one generator at its slots: `σ` for braid letters, `σ^m` for virtual ones.
    pub fn act_generator_unchecked(&self, kind: Kind, index: usize, x: &Tensor) -> Tensor {
        match kind {
            Kind::Braid => self.braid.apply_at(x, index),
            Kind::Virtual => self.sigma_m.apply_at(x, index),
        }
    }

    /// Acts by a word, rightmost letter first. `x` must be homogeneous of
    /// degree equal to the strand count.
    pub fn act_word(&self, w: &GvbWord, x: &Tensor) -> Result<Tensor> {
        check_degree(x, w.strands())?;
        let mut cur = x.clone();
        for g in w.letters().iter().rev() {
            cur = self.act_generator_unchecked(g.kind, g.index, &cur);
        }
        Ok(cur)
    }

    pub fn act_wordsum(&self, a: &WordSum, x: &Tensor) -> Result<Tensor> {
        check_degree(x, a.strands())?;
        let mut out = Tensor::zero();
        for (w, c) in a.terms() {
            out.add_scaled(&self.act_word(&w, x)?, c);
        }
        Ok(out)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: Some(self.name.clone()),
            dim: self.dim(),
            unit_index: self.unit,
            labels: self.labels.clone(),
            m_const: self
                .m
                .entries()
                .map(|(i, j, k, c)| (i, j, k, c.clone()))
                .collect(),
            braid_const: self
                .braid
                .entries()
                .map(|(i, j, k, l, c)| (i, j, k, l, c.clone()))
                .collect(),
            adjoin_unit: false,
        }
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        if spec.labels.len() != spec.dim {
            return Err(Error::SizeMismatch(spec.labels.len(), spec.dim));
        }
        let dim = spec.dim;
        let mut m = ProductMap::zero(dim);
        for (i, j, k, c) in &spec.m_const {
            for &x in [i, j, k] {
                if x >= dim {
                    return Err(Error::BasisIndex { index: x, dim });
                }
            }
            m.set(*i, *j, *k, m.get(*i, *j, *k) + c);
        }
        let mut braid = PairMap::zero(dim);
        for (i, j, k, l, c) in &spec.braid_const {
            for &x in [i, j, k, l] {
                if x >= dim {
                    return Err(Error::BasisIndex { index: x, dim });
                }
            }
            braid.set(*i, *j, *k, *l, braid.get(*i, *j, *k, *l) + c);
        }
        let alg = BraidedAlgebra::new(
            spec.name.clone().unwrap_or_else(|| "custom".into()),
            spec.unit_index,
            spec.labels.clone(),
            m,
            braid,
        )?;
        Ok(if spec.adjoin_unit {
            alg.adjoin_unit_laws()
        } else {
            alg
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("algebra spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| Error::Algebra(e.to_string()))?;
        BraidedAlgebra::from_spec(&spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Algebra(format!("{}: {e}", path.display())))?;
        BraidedAlgebra::from_json(&text)
    }
}

fn sigma_m_from(m: &ProductMap, unit: usize) -> PairMap {
    let mut s = PairMap::zero(m.dim());
    for (i, j, k, c) in m.entries() {
        s.set(i, j, unit, k, c.clone());
    }
    s
}

fn check_degree(x: &Tensor, n: usize) -> Result<()> {
    match x.homogeneous_degree() {
        Some(d) if d == n || x.is_zero() => Ok(()),
        _ => Err(Error::Inhomogeneous(n)),
    }
}

/// Serialized form of an algebra: sparse structure constants with scalars as strings.
///
/// With `adjoin_unit` set, every constant touching `unit_index` is replaced by
/// the unit laws, so only the `V̂` part needs to be listed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub unit_index: usize,
    pub labels: Vec<String>,
    #[serde(default)]
    pub m_const: Vec<(usize, usize, usize, Scalar)>,
    #[serde(default)]
    pub braid_const: Vec<(usize, usize, usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub adjoin_unit: bool,
}

fn flip_on(dim: usize) -> PairMap {
    let mut b = PairMap::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            b.set(i, j, j, i, Scalar::one());
        }
    }
    b
}

/// Basis `𝟏, z_1..z_N`, `m(z_i⊗z_j) = z_{i+j}` (zero past `N`), flip braiding.
pub fn hoffman_stuffle(n: usize) -> BraidedAlgebra {
    let dim = n + 1;
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=n).map(|i| format!("z{i}")));
    let mut m = ProductMap::zero(dim);
    for i in 1..=n {
        for j in 1..=n - i {
            m.set(i, j, i + j, Scalar::one());
        }
    }
    BraidedAlgebra::new(format!("hoffman_stuffle({n})"), 0, labels, m, flip_on(dim))
        .expect("valid builder")
        .adjoin_unit_laws()
}

/// Basis `𝟏, v_1..v_d`, `m = 0` on `V̂`, `σ(v_i⊗v_j) = q^{a_ij} v_j⊗v_i`.
pub fn diagonal_braiding(d: usize, q_exponents: &[Vec<i32>]) -> Result<BraidedAlgebra> {
    if q_exponents.len() != d || q_exponents.iter().any(|r| r.len() != d) {
        return Err(Error::SizeMismatch(q_exponents.len(), d));
    }
    let dim = d + 1;
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=d).map(|i| format!("v{i}")));
    let mut braid = PairMap::zero(dim);
    for i in 1..=d {
        for j in 1..=d {
            braid.set(i, j, j, i, Scalar::q_pow(q_exponents[i - 1][j - 1]));
        }
    }
    Ok(BraidedAlgebra::new(
        format!("diagonal_braiding({d})"),
        0,
        labels,
        ProductMap::zero(dim),
        braid,
    )?
    .adjoin_unit_laws())
}

/// Basis `x^0 = 𝟏, x^1..x^N`, truncated polynomial product, `σ(x^i⊗x^j) = q^{ij} x^j⊗x^i`.
pub fn qpoly(n: usize) -> BraidedAlgebra {
    let dim = n + 1;
    let labels = (0..=n)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect();
    let mut m = ProductMap::zero(dim);
    let mut braid = PairMap::zero(dim);
    for i in 0..=n {
        for j in 0..=n {
            if i + j <= n {
                m.set(i, j, i + j, Scalar::one());
            }
            braid.set(i, j, j, i, Scalar::q_pow((i * j) as i32));
        }
    }
    BraidedAlgebra::new(format!("qpoly({n})"), 0, labels, m, braid).expect("valid builder")
}

/// The algebras exercised by the default verification runs.
pub fn builtin_algebras() -> Vec<BraidedAlgebra> {
    vec![
        hoffman_stuffle(6),
        qpoly(4),
        diagonal_braiding(2, &[vec![2, -1], vec![-1, 2]]).expect("valid builder"),
    ]
}

/// Resolves `hoffman_stuffle(6)`, `stuffle:6`, `qpoly:4`, `diagonal:2` and
/// similar shorthands.
pub fn builtin_by_name(name: &str) -> Option<BraidedAlgebra> {
    let name = name.trim();
    let (head, arg) = match name.find([':', '(']) {
        Some(i) => (&name[..i], name[i + 1..].trim_end_matches(')')),
        None => (name, ""),
    };
    let arg: Option<usize> = if arg.is_empty() {
        None
    } else {
        Some(arg.parse().ok()?)
    };
    match head {
        "hoffman_stuffle" | "stuffle" | "hoffman" => Some(hoffman_stuffle(arg.unwrap_or(6).max(1))),
        "qpoly" => Some(qpoly(arg.unwrap_or(4).max(1))),
        "diagonal_braiding" | "diagonal" | "quantum_shuffle" => {
            let d = arg.unwrap_or(2).max(1);
            let a: Vec<Vec<i32>> = (0..d)
                .map(|i| (0..d).map(|j| if i == j { 2 } else { -1 }).collect())
                .collect();
            diagonal_braiding(d, &a).ok()
        }
        _ => None,
    }
}

fn tensor_json(alg: &BraidedAlgebra, x: &Tensor) -> Value {
    Value::String(alg.display(x))
}

fn basis_json(alg: &BraidedAlgebra, b: &[u16]) -> Value {
    json!(b
        .iter()
        .map(|&i| alg.labels[i as usize].clone())
        .collect::<Vec<_>>())
}

type TripleCheck = fn(&BraidedAlgebra, &Tensor) -> (Tensor, Tensor);

fn ybe_sides(a: &BraidedAlgebra, x: &Tensor) -> (Tensor, Tensor) {
    let s = &a.braid;
    let lhs = s.apply_at(&s.apply_at(&s.apply_at(x, 1), 2), 1);
    let rhs = s.apply_at(&s.apply_at(&s.apply_at(x, 2), 1), 2);
    (lhs, rhs)
}

fn assoc_sides(a: &BraidedAlgebra, x: &Tensor) -> (Tensor, Tensor) {
    let m = &a.m;
    (
        m.merge_at(&m.merge_at(x, 1), 1),
        m.merge_at(&m.merge_at(x, 2), 1),
    )
}

fn compat_right_sides(a: &BraidedAlgebra, x: &Tensor) -> (Tensor, Tensor) {
    let (s, m) = (&a.braid, &a.m);
    let lhs = s.apply_at(&m.merge_at(x, 2), 1);
    let rhs = m.merge_at(&s.apply_at(&s.apply_at(x, 1), 2), 1);
    (lhs, rhs)
}

fn compat_left_sides(a: &BraidedAlgebra, x: &Tensor) -> (Tensor, Tensor) {
    let (s, m) = (&a.braid, &a.m);
    let lhs = s.apply_at(&m.merge_at(x, 1), 1);
    let rhs = m.merge_at(&s.apply_at(&s.apply_at(x, 2), 1), 2);
    (lhs, rhs)
}

fn sigma_m_braid_sides(a: &BraidedAlgebra, x: &Tensor) -> (Tensor, Tensor) {
    let s = &a.sigma_m;
    let lhs = s.apply_at(&s.apply_at(&s.apply_at(x, 1), 2), 1);
    let rhs = s.apply_at(&s.apply_at(&s.apply_at(x, 2), 1), 2);
    (lhs, rhs)
}

fn triple_report(
    a: &BraidedAlgebra,
    subject: &str,
    f: TripleCheck,
    exec: Exec,
) -> VerificationReport {
    let mut rb = ReportBuilder::new(format!("{}: {subject}", a.name));
    let triples = basis_tensors(&a.all_indices(), 3);
    rb.extend(exec.map(&triples, |b| {
        let x = Tensor::from_terms([(b.clone(), Scalar::one())]);
        let (l, r) = f(a, &x);
        (l != r).then(|| json!({"input": basis_json(a, b), "lhs": tensor_json(a, &l), "rhs": tensor_json(a, &r)}))
    }));
    rb.finish()
}

/// Exact check of every axiom on all basis triples (and pairs for the unit laws).
pub fn check_axioms(a: &BraidedAlgebra, exec: Exec) -> Vec<VerificationReport> {
    let mut out = vec![
        triple_report(a, "Yang-Baxter", ybe_sides, exec),
        triple_report(a, "associativity", assoc_sides, exec),
        triple_report(a, "σ(id⊗m) = (m⊗id)(id⊗σ)(σ⊗id)", compat_right_sides, exec),
        triple_report(a, "σ(m⊗id) = (id⊗m)(σ⊗id)(id⊗σ)", compat_left_sides, exec),
    ];
    let u = a.unit;
    let mut unit = ReportBuilder::new(format!("{}: unit laws", a.name));
    let mut braid_unit = ReportBuilder::new(format!("{}: braiding unit laws", a.name));
    for v in 0..a.dim() {
        let e = Tensor::pure(&[v]);
        for x in [Tensor::pure(&[v, u]), Tensor::pure(&[u, v])] {
            let got = a.m.merge_at(&x, 1);
            unit.check(got == e, || json!({"input": basis_json(a, x.terms().next().unwrap().0), "got": tensor_json(a, &got)}));
        }
        let got = a.braid.apply_at(&Tensor::pure(&[u, v]), 1);
        braid_unit.check(got == Tensor::pure(&[v, u]), || json!({"input": [a.labels[u].clone(), a.labels[v].clone()], "got": tensor_json(a, &got)}));
        let got = a.braid.apply_at(&Tensor::pure(&[v, u]), 1);
        braid_unit.check(got == Tensor::pure(&[u, v]), || json!({"input": [a.labels[v].clone(), a.labels[u].clone()], "got": tensor_json(a, &got)}));
    }
    out.push(unit.finish());
    out.push(braid_unit.finish());
    out
}

pub fn is_braided_algebra(a: &BraidedAlgebra) -> bool {
    check_axioms(a, Exec::Sequential).iter().all(|r| r.pass)
}

/// Whether `m` is associative on all basis triples.
pub fn is_associative(a: &BraidedAlgebra) -> bool {
    triple_report(a, "associativity", assoc_sides, Exec::Sequential).pass
}

/// Braid relation for `σ^m` on `Ṽ^{⊗3}`.
pub fn check_prop_vic(a: &BraidedAlgebra) -> bool {
    prop_vic_report(a, Exec::Sequential).pass
}

pub fn prop_vic_report(a: &BraidedAlgebra, exec: Exec) -> VerificationReport {
    triple_report(a, "braid relation for σ^m", sigma_m_braid_sides, exec)
}

/// Every defining relation of the monoid acts identically on `Ṽ^{⊗3}`.
pub fn check_prop_gvb(a: &BraidedAlgebra) -> bool {
    relation_reports(a, 3, Exec::Sequential)
        .iter()
        .all(|r| r.pass)
}

/// One report per relation instance on `n` strands, over all basis tensors of `Ṽ^{⊗n}`.
pub fn relation_reports(a: &BraidedAlgebra, n: usize, exec: Exec) -> Vec<VerificationReport> {
    let inputs = basis_tensors(&a.all_indices(), n);
    relations(n)
        .into_iter()
        .map(|rel| {
            let mut rb = ReportBuilder::new(format!("{}: {} on {n} strands", a.name, rel.name));
            rb.extend(exec.map(&inputs, |b: &Basis| {
                let x = Tensor::from_terms([(b.clone(), Scalar::one())]);
                let l = a.act_word(&rel.lhs, &x).expect("degree matches");
                let r = a.act_word(&rel.rhs, &x).expect("degree matches");
                (l != r).then(|| {
                    json!({
                        "relation": format!("{} = {}", rel.lhs, rel.rhs),
                        "input": basis_json(a, b),
                        "lhs": tensor_json(a, &l),
                        "rhs": tensor_json(a, &r),
                    })
                })
            }));
            rb.finish()
        })
        .collect()
}

/// Summary of the axiom reports keyed by short name.
pub fn axiom_summary(reports: &[VerificationReport]) -> BTreeMap<String, bool> {
    reports
        .iter()
        .map(|r| {
            (
                r.subject
                    .rsplit(": ")
                    .next()
                    .unwrap_or(&r.subject)
                    .to_string(),
                r.pass,
            )
        })
        .collect()
}
