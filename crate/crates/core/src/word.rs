//! Words in the positive monoid of the generalized virtual braid group and
//! finite linear combinations of them.
//!
//! Generators are `σ_i` (braid, written `s<i>`) and `ξ_i` (virtual, written
//! `x<i>`). The defining relations are listed by [`relations`]. No normal form
//! is attempted; equality of words is syntactic, by bounded rewriting search
//! ([`equivalent_bounded`]), or by comparing actions in a representation.
//!
//! Naming follows the quotient conventions used throughout the crate: killing
//! the `ξ_i` gives the braid monoid, while the virtual-braid quotient makes the
//! `σ_i` involutive.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Braid,
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub index: usize,
}

impl Generator {
    pub fn sigma(index: usize) -> Self {
        Generator {
            kind: Kind::Braid,
            index,
        }
    }

    pub fn xi(index: usize) -> Self {
        Generator {
            kind: Kind::Virtual,
            index,
        }
    }

    fn shifted(self, by: usize) -> Self {
        Generator {
            index: self.index + by,
            ..self
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Braid => write!(f, "s{}", self.index),
            Kind::Virtual => write!(f, "x{}", self.index),
        }
    }
}

/// An element of the positive monoid on `strands` strands.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GvbWord {
    strands: usize,
    letters: Vec<Generator>,
}

impl GvbWord {
    pub fn new(strands: usize, letters: Vec<Generator>) -> Result<Self> {
        for g in &letters {
            if g.index == 0 || g.index >= strands {
                return Err(Error::GeneratorIndex {
                    index: g.index,
                    strands,
                });
            }
        }
        Ok(GvbWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        GvbWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn braid(strands: usize, indices: &[usize]) -> Result<Self> {
        GvbWord::new(
            strands,
            indices.iter().map(|&i| Generator::sigma(i)).collect(),
        )
    }

    /// Parses `s2 s3 x1 s2`; the empty string, `e` and `ε` denote the empty word.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = parse_letters(text)?;
        GvbWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_virtual(&self) -> bool {
        self.letters.iter().any(|g| g.kind == Kind::Virtual)
    }

    pub fn concat(&self, other: &GvbWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GvbWord {
            strands: self.strands,
            letters,
        })
    }

    /// Reindexing `σ_i ↦ σ_{i+by}`, `ξ_i ↦ ξ_{i+by}` into `strands + by` strands.
    pub fn shift(&self, by: usize) -> Self {
        GvbWord {
            strands: self.strands + by,
            letters: self.letters.iter().map(|g| g.shifted(by)).collect(),
        }
    }

    /// Underlying permutation: every generator, braid or virtual, maps to `s_i`.
    pub fn to_permutation(&self) -> Permutation {
        let idx: Vec<usize> = self.letters.iter().map(|g| g.index).collect();
        Permutation::from_word(self.strands, &idx).expect("indices validated on construction")
    }

    /// Group-level quotient by the `ξ_i` (virtual letters become the identity).
    pub fn forget_virtual(&self) -> GvbWord {
        GvbWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .copied()
                .filter(|g| g.kind == Kind::Braid)
                .collect(),
        }
    }

    /// Representative in the quotient by `σ_i² = 1`: cancels adjacent equal
    /// braid letters until none remain.
    pub fn cancel_braid_squares(&self) -> GvbWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if g.kind == Kind::Braid && out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        GvbWord {
            strands: self.strands,
            letters: out,
        }
    }

    fn splice(&self, at: usize, remove: usize, insert: &[Generator]) -> GvbWord {
        let mut letters = Vec::with_capacity(self.letters.len() - remove + insert.len());
        letters.extend_from_slice(&self.letters[..at]);
        letters.extend_from_slice(insert);
        letters.extend_from_slice(&self.letters[at + remove..]);
        GvbWord {
            strands: self.strands,
            letters,
        }
    }
}

fn parse_letters(text: &str) -> Result<Vec<Generator>> {
    let err = || Error::WordParse(text.to_string());
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "e" || trimmed == "ε" {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = trimmed
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let kind = match chars[i] {
            's' | 'σ' => Kind::Braid,
            'x' | 'ξ' => Kind::Virtual,
            _ => return Err(err()),
        };
        i += 1;
        if i < chars.len() && chars[i] == '_' {
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(err());
        }
        let index: usize = chars[start..i]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| err())?;
        out.push(Generator { kind, index });
    }
    Ok(out)
}

impl fmt::Display for GvbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for GvbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// A finite linear combination of words, all on the same strand count.
#[derive(Clone, PartialEq, Eq)]
pub struct WordSum {
    strands: usize,
    terms: BTreeMap<Vec<Generator>, Scalar>,
}

impl WordSum {
    pub fn zero(strands: usize) -> Self {
        WordSum {
            strands,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1·ε`.
    pub fn one(strands: usize) -> Self {
        WordSum::from_word(GvbWord::empty(strands))
    }

    pub fn from_word(w: GvbWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.letters, Scalar::one());
        WordSum {
            strands: w.strands,
            terms,
        }
    }

    pub fn from_terms(
        strands: usize,
        items: impl IntoIterator<Item = (Scalar, GvbWord)>,
    ) -> Result<Self> {
        let mut out = WordSum::zero(strands);
        for (c, w) in items {
            out.add_term(c, w)?;
        }
        Ok(out)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GvbWord, &Scalar)> {
        self.terms.iter().map(move |(l, c)| {
            (
                GvbWord {
                    strands: self.strands,
                    letters: l.clone(),
                },
                c,
            )
        })
    }

    pub fn coefficient(&self, w: &GvbWord) -> Scalar {
        self.terms.get(&w.letters).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, c: Scalar, w: GvbWord) -> Result<()> {
        if w.strands != self.strands {
            return Err(Error::SizeMismatch(self.strands, w.strands));
        }
        self.add_letters(c, w.letters);
        Ok(())
    }

    fn add_letters(&mut self, c: Scalar, letters: Vec<Generator>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(letters) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &WordSum) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch(self.strands, other.strands));
        }
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_letters(c.clone(), l.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = WordSum::zero(self.strands);
        for (l, x) in &self.terms {
            out.add_letters(x * c, l.clone());
        }
        out
    }

    /// Bilinear extension of concatenation.
    pub fn mul(&self, other: &WordSum) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::SizeMismatch(self.strands, other.strands));
        }
        let mut out = WordSum::zero(self.strands);
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let mut l = la.clone();
                l.extend_from_slice(lb);
                out.add_letters(ca * cb, l);
            }
        }
        Ok(out)
    }

    pub fn shift(&self, by: usize) -> Self {
        let mut out = WordSum::zero(self.strands + by);
        for (l, c) in &self.terms {
            out.add_letters(c.clone(), l.iter().map(|g| g.shifted(by)).collect());
        }
        out
    }

    fn map_words(&self, f: impl Fn(&GvbWord) -> Option<GvbWord>) -> Self {
        let mut out = WordSum::zero(self.strands);
        for (w, c) in self.terms() {
            if let Some(img) = f(&w) {
                out.add_letters(c.clone(), img.letters);
            }
        }
        out
    }

    /// Sum of the coefficients; counts words when every coefficient is 1.
    pub fn coefficient_sum(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else {
                    format!("({c})*{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordSum({self})")
    }
}

pub fn concat(a: &GvbWord, b: &GvbWord) -> Result<GvbWord> {
    a.concat(b)
}

pub fn sum_mul(a: &WordSum, b: &WordSum) -> Result<WordSum> {
    a.mul(b)
}

/// Algebra quotient killing every `ξ_i`: words containing a virtual letter vanish.
pub fn project_alpha_tilde(a: &WordSum) -> WordSum {
    a.map_words(|w| (!w.has_virtual()).then(|| w.clone()))
}

/// Algebra quotient by `σ_i² - 1`, computed word by word with
/// [`GvbWord::cancel_braid_squares`]. This chooses representatives; it is
/// not a normal form for the virtual-braid monoid algebra.
pub fn project_gamma_tilde(a: &WordSum) -> WordSum {
    a.map_words(|w| Some(w.cancel_braid_squares()))
}

/// JSON form of a word-sum term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordTerm {
    pub coeff: Scalar,
    pub word: String,
}

impl WordSum {
    pub fn to_json_terms(&self) -> Vec<WordTerm> {
        self.terms()
            .map(|(w, c)| WordTerm {
                coeff: c.clone(),
                word: w.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(strands: usize, terms: &[WordTerm]) -> Result<Self> {
        let mut out = WordSum::zero(strands);
        for t in terms {
            out.add_term(t.coeff.clone(), GvbWord::parse(strands, &t.word)?)?;
        }
        Ok(out)
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "braid" => Ok(Kind::Braid),
            "x" | "virtual" => Ok(Kind::Virtual),
            _ => Err(Error::WordParse(s.to_string())),
        }
    }
}

/// One instance of a defining relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: GvbWord,
    pub rhs: GvbWord,
}

/// Every defining relation instance on `n` strands:
/// far commutations `σσ`, `σξ`, `ξξ` for `|i-j| > 1`, the two braid relations,
/// and the mixed relations `ξ_i σ_{i+1} σ_i = σ_{i+1} σ_i ξ_{i+1}` and
/// `ξ_{i+1} σ_i σ_{i+1} = σ_i σ_{i+1} ξ_i`.
pub fn relations(n: usize) -> Vec<Relation> {
    use Generator as G;
    let mut out = Vec::new();
    let mut push = |name: String, l: Vec<Generator>, r: Vec<Generator>| {
        out.push(Relation {
            name,
            lhs: GvbWord {
                strands: n,
                letters: l,
            },
            rhs: GvbWord {
                strands: n,
                letters: r,
            },
        });
    };
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) <= 1 {
                continue;
            }
            if i < j {
                push(
                    format!("far s{i}s{j}"),
                    vec![G::sigma(i), G::sigma(j)],
                    vec![G::sigma(j), G::sigma(i)],
                );
                push(
                    format!("far x{i}x{j}"),
                    vec![G::xi(i), G::xi(j)],
                    vec![G::xi(j), G::xi(i)],
                );
            }
            push(
                format!("far s{i}x{j}"),
                vec![G::sigma(i), G::xi(j)],
                vec![G::xi(j), G::sigma(i)],
            );
        }
    }
    for i in 1..n.saturating_sub(1) {
        let j = i + 1;
        push(
            format!("braid s{i}"),
            vec![G::sigma(i), G::sigma(j), G::sigma(i)],
            vec![G::sigma(j), G::sigma(i), G::sigma(j)],
        );
        push(
            format!("braid x{i}"),
            vec![G::xi(i), G::xi(j), G::xi(i)],
            vec![G::xi(j), G::xi(i), G::xi(j)],
        );
        push(
            format!("mixed x{i}s{j}s{i}"),
            vec![G::xi(i), G::sigma(j), G::sigma(i)],
            vec![G::sigma(j), G::sigma(i), G::xi(j)],
        );
        push(
            format!("mixed x{j}s{i}s{j}"),
            vec![G::xi(j), G::sigma(i), G::sigma(j)],
            vec![G::sigma(i), G::sigma(j), G::xi(i)],
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    /// Reached after expanding this many words.
    Equivalent {
        expansions: usize,
    },
    Unknown,
}

/// Breadth-first search applying every defining relation in both directions
/// at every position. Semi-decision: `Unknown` does not certify inequivalence.
pub fn equivalent_bounded(w1: &GvbWord, w2: &GvbWord, max_steps: usize) -> Result<Equivalence> {
    if w1.strands != w2.strands {
        return Err(Error::SizeMismatch(w1.strands, w2.strands));
    }
    if w1 == w2 {
        return Ok(Equivalence::Equivalent { expansions: 0 });
    }
    // every relation preserves length
    if w1.len() != w2.len() {
        return Ok(Equivalence::Unknown);
    }
    let rules: Vec<(Vec<Generator>, Vec<Generator>)> = relations(w1.strands)
        .into_iter()
        .flat_map(|r| {
            [
                (r.lhs.letters.clone(), r.rhs.letters.clone()),
                (r.rhs.letters, r.lhs.letters),
            ]
        })
        .collect();
    let mut seen: HashSet<Vec<Generator>> = HashSet::new();
    let mut frontier = VecDeque::new();
    seen.insert(w1.letters.clone());
    frontier.push_back(w1.clone());
    let mut expansions = 0;
    while let Some(cur) = frontier.pop_front() {
        if expansions >= max_steps {
            break;
        }
        expansions += 1;
        for (from, to) in &rules {
            if from.len() > cur.len() {
                continue;
            }
            for at in 0..=cur.len() - from.len() {
                if cur.letters[at..at + from.len()] != from[..] {
                    continue;
                }
                let next = cur.splice(at, from.len(), to);
                if next == *w2 {
                    return Ok(Equivalence::Equivalent { expansions });
                }
                if seen.insert(next.letters.clone()) {
                    frontier.push_back(next);
                }
            }
        }
    }
    Ok(Equivalence::Unknown)
}
