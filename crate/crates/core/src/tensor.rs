//! Elements of the tensor algebra over a finite basis, and the local operators
//! (two-slot maps and merges) that act on them.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A pure basis tensor `e_{i_1} ⊗ ⋯ ⊗ e_{i_k}`; the empty sequence is degree 0.
pub type Basis = SmallVec<[u16; 8]>;

/// A finite linear combination of pure basis tensors of any degrees.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    terms: BTreeMap<Basis, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    /// `c` in degree 0.
    pub fn scalar(c: Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term(Basis::new(), c);
        t
    }

    pub fn pure(indices: &[usize]) -> Self {
        let mut t = Tensor::zero();
        t.add_term(indices.iter().map(|&i| i as u16).collect(), Scalar::one());
        t
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Basis, Scalar)>) -> Self {
        let mut t = Tensor::zero();
        for (b, c) in items {
            t.add_term(b, c);
        }
        t
    }

    pub fn add_term(&mut self, basis: Basis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
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

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), if c.is_one() { x.clone() } else { x * c });
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, basis: &[u16]) -> Scalar {
        self.terms.get(basis).cloned().unwrap_or_default()
    }

    /// The common degree of all terms, if there is one (`Some(0)` for zero).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|b| b.len());
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    /// Splits into homogeneous components, by degree.
    pub fn components(&self) -> BTreeMap<usize, Tensor> {
        let mut out: BTreeMap<usize, Tensor> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry(b.len())
                .or_default()
                .add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn degree_range(&self) -> Option<(usize, usize)> {
        let min = self.terms.keys().map(|b| b.len()).min()?;
        let max = self.terms.keys().map(|b| b.len()).max()?;
        Some((min, max))
    }

    /// `self ⊗ other`, concatenating pure tensors.
    pub fn concat(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.add_term(key, x * y);
            }
        }
        out
    }

    /// `e_index ⊗ self`.
    pub fn prepend(&self, index: u16) -> Tensor {
        let mut out = Tensor::zero();
        for (b, c) in &self.terms {
            let mut key = Basis::with_capacity(b.len() + 1);
            key.push(index);
            key.extend_from_slice(b);
            out.terms.insert(key, c.clone());
        }
        out
    }

    /// Removes every factor equal to `unit` from each pure tensor.
    pub fn delete_index(&self, unit: u16) -> Tensor {
        let mut out = Tensor::zero();
        for (b, c) in &self.terms {
            out.add_term(
                b.iter().copied().filter(|&i| i != unit).collect(),
                c.clone(),
            );
        }
        out
    }

    pub fn max_index(&self) -> Option<u16> {
        self.terms.keys().flat_map(|b| b.iter().copied()).max()
    }

    pub fn check_indices(&self, dim: usize) -> Result<()> {
        match self.max_index() {
            Some(i) if i as usize >= dim => Err(Error::BasisIndex {
                index: i as usize,
                dim,
            }),
            _ => Ok(()),
        }
    }

    /// Formats with basis labels, e.g. `2*z1⊗z1 + z2`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let word = if b.is_empty() {
                    "1".to_string()
                } else {
                    b.iter()
                        .map(|&i| {
                            labels
                                .get(i as usize)
                                .cloned()
                                .unwrap_or_else(|| format!("e{i}"))
                        })
                        .collect::<Vec<_>>()
                        .join("⊗")
                };
                if c.is_one() {
                    word
                } else {
                    format!("({c})*{word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("({c}){:?}", b.as_slice()))
            .collect();
        write!(f, "Tensor[{}]", parts.join(" + "))
    }
}

/// A linear map `W ⊗ W → W ⊗ W` given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMap {
    dim: usize,
    images: Vec<Vec<(u16, u16, Scalar)>>,
}

impl PairMap {
    pub fn zero(dim: usize) -> Self {
        PairMap {
            dim,
            images: vec![Vec::new(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, a: usize, b: usize) -> &[(u16, u16, Scalar)] {
        &self.images[a * self.dim + b]
    }

    /// Sets the coefficient of `e_c ⊗ e_d` in the image of `e_a ⊗ e_b`.
    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, value: Scalar) {
        let slot = &mut self.images[a * self.dim + b];
        slot.retain(|(x, y, _)| (*x as usize, *y as usize) != (c, d));
        if !value.is_zero() {
            slot.push((c as u16, d as u16, value));
            slot.sort_by_key(|(x, y, _)| (*x, *y));
        }
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar {
        self.image(a, b)
            .iter()
            .find(|(x, y, _)| (*x as usize, *y as usize) == (c, d))
            .map(|(_, _, s)| s.clone())
            .unwrap_or_default()
    }

    pub fn clear(&mut self, a: usize, b: usize) {
        self.images[a * self.dim + b].clear();
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &Scalar)> {
        self.images.iter().enumerate().flat_map(move |(ab, img)| {
            let (a, b) = (ab / self.dim, ab % self.dim);
            img.iter()
                .map(move |(c, d, s)| (a, b, *c as usize, *d as usize, s))
        })
    }

    /// Applies the map at positions `slot, slot+1` (1-based).
    pub fn apply_at(&self, x: &Tensor, slot: usize) -> Tensor {
        let mut out = Tensor::zero();
        for (b, c) in x.terms() {
            let (i, j) = (slot - 1, slot);
            for (u, v, s) in self.image(b[i] as usize, b[j] as usize) {
                let mut key = b.clone();
                key[i] = *u;
                key[j] = *v;
                out.add_term(key, if c.is_one() { s.clone() } else { c * s });
            }
        }
        out
    }
}

/// A linear map `W ⊗ W → W` given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    dim: usize,
    images: Vec<Vec<(u16, Scalar)>>,
}

impl ProductMap {
    pub fn zero(dim: usize) -> Self {
        ProductMap {
            dim,
            images: vec![Vec::new(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, a: usize, b: usize) -> &[(u16, Scalar)] {
        &self.images[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, k: usize, value: Scalar) {
        let slot = &mut self.images[a * self.dim + b];
        slot.retain(|(x, _)| *x as usize != k);
        if !value.is_zero() {
            slot.push((k as u16, value));
            slot.sort_by_key(|(x, _)| *x);
        }
    }

    pub fn get(&self, a: usize, b: usize, k: usize) -> Scalar {
        self.image(a, b)
            .iter()
            .find(|(x, _)| *x as usize == k)
            .map(|(_, s)| s.clone())
            .unwrap_or_default()
    }

    pub fn clear(&mut self, a: usize, b: usize) {
        self.images[a * self.dim + b].clear();
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.images.iter().enumerate().flat_map(move |(ab, img)| {
            let (a, b) = (ab / self.dim, ab % self.dim);
            img.iter().map(move |(k, s)| (a, b, *k as usize, s))
        })
    }

    /// Multiplies the factors at positions `slot, slot+1` (1-based); degree drops by one.
    pub fn merge_at(&self, x: &Tensor, slot: usize) -> Tensor {
        let mut out = Tensor::zero();
        for (b, c) in x.terms() {
            let i = slot - 1;
            for (k, s) in self.image(b[i] as usize, b[i + 1] as usize) {
                let mut key = Basis::with_capacity(b.len() - 1);
                key.extend_from_slice(&b[..i]);
                key.push(*k);
                key.extend_from_slice(&b[i + 2..]);
                out.add_term(key, if c.is_one() { s.clone() } else { c * s });
            }
        }
        out
    }
}

/// Every pure basis tensor of degree `n` over a `dim`-element index set, in
/// lexicographic order.
pub fn basis_tensors(indices: &[u16], n: usize) -> Vec<Basis> {
    let mut out = vec![Basis::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * indices.len());
        for b in &out {
            for &i in indices {
                let mut k = b.clone();
                k.push(i);
                next.push(k);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delete_units() {
        // 1⊗v⊗w⊗1⊗1⊗u⊗1 with 1 = e0
        let x = Tensor::pure(&[0, 1, 2, 0, 0, 3, 0]);
        assert_eq!(x.delete_index(0), Tensor::pure(&[1, 2, 3]));
        assert_eq!(
            Tensor::pure(&[0, 0]).delete_index(0),
            Tensor::scalar(Scalar::one())
        );
        assert_eq!(Tensor::pure(&[1, 2]).delete_index(0), Tensor::pure(&[1, 2]));
    }

    #[test]
    fn pair_map_acts_on_slots() {
        let mut flip = PairMap::zero(3);
        for a in 0..3 {
            for b in 0..3 {
                flip.set(a, b, b, a, Scalar::one());
            }
        }
        let x = Tensor::pure(&[0, 1, 2]);
        assert_eq!(flip.apply_at(&x, 2), Tensor::pure(&[0, 2, 1]));
        assert_eq!(flip.apply_at(&flip.apply_at(&x, 1), 1), x);
    }

    #[test]
    fn components_and_degrees() {
        let x = Tensor::pure(&[1]).add(&Tensor::pure(&[1, 2]).scale(&Scalar::from_int(3)));
        assert_eq!(x.homogeneous_degree(), None);
        assert_eq!(x.components().len(), 2);
        assert_eq!(x.degree_range(), Some((1, 2)));
        assert_eq!(basis_tensors(&[1, 2, 3], 3).len(), 27);
        assert!(x.sub(&x).is_zero());
    }
}
