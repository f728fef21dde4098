//! Type-A combinatorics: permutations in one-line notation, (p,q)-shuffles and
//! the bubble decomposition `σ = σ^(n-1) ⋯ σ^(1)` with `σ^(k) = s_{t_k} s_{t_k+1} ⋯ s_k`.
//!
//! Composition is `(a∘b)(x) = a(b(x))`, so a word `s_{i_1} ⋯ s_{i_k}` acts
//! rightmost-first. With this convention `σ(j)` is the final position of the
//! letter that started at position `j`, and a (p,q)-shuffle keeps the first `p`
//! letters (and the last `q` letters) in their relative order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}`; `images[i] = σ(i+1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorIndex {
                index: i,
                strands: n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// The product `s_{w[0]} ∘ s_{w[1]} ∘ ⋯`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        // left-multiplying by s_i swaps the values i and i+1
        for &i in word.iter().rev() {
            if i == 0 || i >= n {
                return Err(Error::GeneratorIndex {
                    index: i,
                    strands: n,
                });
            }
            for v in images.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(x)` for `1 ≤ x ≤ n`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Number of inversions.
    pub fn coxeter_length(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `σ` keeps the first `p` and the last `q` letters in order.
    pub fn is_pq_shuffle(&self, p: usize, q: usize) -> Result<bool> {
        if p + q != self.len() {
            return Err(Error::ShuffleSize(p + q, self.len()));
        }
        let inc = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
        Ok(inc(&self.images[..p]) && inc(&self.images[p..]))
    }

    /// Image under the inclusion `S_n → S_{n+by}`, `s_k ↦ s_{k+by}`.
    pub fn shift(&self, by: usize) -> Self {
        let mut images: Vec<usize> = (1..=by).collect();
        images.extend(self.images.iter().map(|&v| v + by));
        Permutation { images }
    }

    /// Inverse of [`Permutation::shift`]; `None` unless the first `by` points are fixed.
    pub fn unshift(&self, by: usize) -> Option<Self> {
        if by > self.len() || (1..=by).any(|x| self.apply(x) != x) {
            return None;
        }
        Some(Permutation {
            images: self.images[by..].iter().map(|&v| v - by).collect(),
        })
    }

    /// Canonical reduced word read off the bubble decomposition.
    pub fn reduced_word(&self) -> Vec<usize> {
        bubble_decompose(self).reduced_word()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            return write!(f, "e");
        }
        for i in w {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// All permutations of `{1..n}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation {
        images: cur.clone(),
    }];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation {
            images: cur.clone(),
        });
    }
}

/// Bubble profile `t_1..t_{n-1}` with `0 ≤ t_k ≤ k`; `t_k = 0` encodes `σ^(k) = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BubbleDecomposition {
    pub n: usize,
    pub t: Vec<usize>,
}

impl BubbleDecomposition {
    pub fn new(n: usize, t: Vec<usize>) -> Result<Self> {
        if t.len() != n.saturating_sub(1) {
            return Err(Error::SizeMismatch(t.len(), n.saturating_sub(1)));
        }
        for (i, &v) in t.iter().enumerate() {
            if v > i + 1 {
                return Err(Error::InvalidProfile { k: i + 1, value: v });
            }
        }
        Ok(BubbleDecomposition { n, t })
    }

    /// `t_k` for `1 ≤ k ≤ n`; out-of-range `k = n` reads as 0.
    pub fn t(&self, k: usize) -> usize {
        if k == 0 || k > self.t.len() {
            0
        } else {
            self.t[k - 1]
        }
    }

    /// Generator indices of `σ^(k) = s_{t_k} ⋯ s_k` (empty when `t_k = 0`).
    pub fn component(&self, k: usize) -> Vec<usize> {
        match self.t(k) {
            0 => Vec::new(),
            t => (t..=k).collect(),
        }
    }

    /// The word `σ^(n-1) ⋯ σ^(1)`.
    pub fn reduced_word(&self) -> Vec<usize> {
        (1..self.n).rev().flat_map(|k| self.component(k)).collect()
    }

    /// Sum of component lengths.
    pub fn length(&self) -> usize {
        self.t
            .iter()
            .enumerate()
            .map(|(i, &t)| if t == 0 { 0 } else { i + 1 - t + 1 })
            .sum()
    }

    pub fn reconstruct(&self) -> Permutation {
        Permutation::from_word(self.n, &self.reduced_word())
            .expect("profile entries are bounded by construction")
    }
}

/// Peels `σ^(n-1)` off by where `σ` sends `n`, then recurses on `S_{n-1}`.
pub fn bubble_decompose(sigma: &Permutation) -> BubbleDecomposition {
    let n = sigma.len();
    let mut cur = sigma.images.clone();
    let mut t = vec![0; n.saturating_sub(1)];
    for k in (1..n).rev() {
        let v = cur[k];
        if v == k + 1 {
            continue;
        }
        t[k - 1] = v;
        // cur ← (s_v ⋯ s_k)^{-1} ∘ cur: v ↦ k+1, values in (v, k+1] shift down by one
        for x in cur.iter_mut() {
            if *x == v {
                *x = k + 1;
            } else if *x > v && *x <= k + 1 {
                *x -= 1;
            }
        }
    }
    BubbleDecomposition { n, t }
}

pub fn reconstruct(bd: &BubbleDecomposition) -> Result<Permutation> {
    let bd = BubbleDecomposition::new(bd.n, bd.t.clone())?;
    Ok(bd.reconstruct())
}

/// Shuffles together with their bubble profiles, produced by the recursion
/// `S_{p,q} = S^R_{p-1,q} ⊔ S^R_{p,q-1} s_1 ⋯ s_p`.
///
/// Profiles are assembled from the recursion alone (never by calling
/// [`bubble_decompose`]), which makes this a second route to the decomposition.
pub fn shuffles_with_profiles(p: usize, q: usize) -> Vec<(Permutation, BubbleDecomposition)> {
    let n = p + q;
    if p == 0 || q == 0 {
        return vec![(
            Permutation::identity(n),
            BubbleDecomposition {
                n,
                t: vec![0; n.saturating_sub(1)],
            },
        )];
    }
    let shift_profile = |bd: &BubbleDecomposition| {
        let mut t = vec![0];
        t.extend(bd.t.iter().map(|&x| if x == 0 { 0 } else { x + 1 }));
        BubbleDecomposition { n, t }
    };
    let head = Permutation::from_word(n, &(1..=p).collect::<Vec<_>>()).unwrap();
    let mut out = Vec::new();
    for (s, bd) in shuffles_with_profiles(p - 1, q) {
        out.push((s.shift(1), shift_profile(&bd)));
    }
    for (s, bd) in shuffles_with_profiles(p, q - 1) {
        let mut profile = shift_profile(&bd);
        profile.t[p - 1] = 1;
        out.push((s.shift(1).compose(&head).unwrap(), profile));
    }
    out
}

/// The (p,q)-shuffles, in recursion order.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    shuffles_with_profiles(p, q)
        .into_iter()
        .map(|(s, _)| s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, word: &[usize]) -> Permutation {
        Permutation::from_word(n, word).unwrap()
    }

    #[test]
    fn compose_examples() {
        let s1 = w(4, &[1]);
        assert!(s1.compose(&s1).unwrap().is_identity());
        let prod = [2, 3, 1, 2]
            .iter()
            .map(|&i| w(4, &[i]))
            .reduce(|a, b| a.compose(&b).unwrap())
            .unwrap();
        assert_eq!(prod.images(), &[3, 4, 1, 2]);
        assert_eq!(Permutation::identity(4).compose(&prod).unwrap(), prod);
        assert!(matches!(
            s1.compose(&Permutation::identity(3)),
            Err(Error::SizeMismatch(4, 3))
        ));
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(5).coxeter_length(), 0);
        assert_eq!(w(4, &[2, 3, 1, 2]).coxeter_length(), 4);
        assert_eq!(Permutation::new(vec![3, 2, 1]).unwrap().coxeter_length(), 3);
    }

    #[test]
    fn shuffle_predicate() {
        assert!(Permutation::identity(4).is_pq_shuffle(2, 2).unwrap());
        assert!(w(4, &[2]).is_pq_shuffle(2, 2).unwrap());
        assert!(!w(4, &[1]).is_pq_shuffle(2, 2).unwrap());
        assert!(matches!(
            w(4, &[1]).is_pq_shuffle(2, 1),
            Err(Error::ShuffleSize(3, 4))
        ));
    }

    #[test]
    fn enumerate_small_cases() {
        let expected: Vec<Permutation> =
            [&[][..], &[2], &[3, 2], &[1, 2], &[3, 1, 2], &[2, 3, 1, 2]]
                .iter()
                .map(|word| w(4, word))
                .collect();
        assert_eq!(enumerate_shuffles(2, 2), expected);
        assert_eq!(enumerate_shuffles(3, 0), vec![Permutation::identity(3)]);
        assert_eq!(enumerate_shuffles(0, 3), vec![Permutation::identity(3)]);
        assert_eq!(enumerate_shuffles(0, 0), vec![Permutation::identity(0)]);
        let s33 = enumerate_shuffles(3, 3);
        assert_eq!(s33.len(), 20);
        let brute: Vec<_> = all_permutations(6)
            .into_iter()
            .filter(|s| s.is_pq_shuffle(3, 3).unwrap())
            .collect();
        let mut sorted = s33.clone();
        sorted.sort();
        assert_eq!(sorted, brute);
    }

    #[test]
    fn decompose_examples() {
        let bd = bubble_decompose(&w(4, &[2, 3, 1, 2]));
        assert_eq!(bd.t, vec![0, 1, 2]);
        assert_eq!(bd.component(3), vec![2, 3]);
        assert_eq!(bd.component(2), vec![1, 2]);
        assert!(bd.component(1).is_empty());
        assert_eq!(bubble_decompose(&Permutation::identity(5)).t, vec![0; 4]);
        assert_eq!(bubble_decompose(&w(4, &[3, 2])).t, vec![0, 2, 3]);
    }

    #[test]
    fn reconstruct_examples() {
        let bd = BubbleDecomposition::new(4, vec![0, 1, 2]).unwrap();
        assert_eq!(reconstruct(&bd).unwrap().images(), &[3, 4, 1, 2]);
        let e = BubbleDecomposition::new(4, vec![0, 0, 0]).unwrap();
        assert!(e.reconstruct().is_identity());
        let s1 = BubbleDecomposition::new(2, vec![1]).unwrap();
        assert_eq!(s1.reconstruct(), w(2, &[1]));
        let bad = BubbleDecomposition {
            n: 3,
            t: vec![2, 0],
        };
        assert!(matches!(
            reconstruct(&bad),
            Err(Error::InvalidProfile { k: 1, value: 2 })
        ));
    }

    #[test]
    fn round_trip_and_length_exhaustive() {
        for n in 0..=7 {
            for s in all_permutations(n) {
                let bd = bubble_decompose(&s);
                assert_eq!(bd.reconstruct(), s);
                assert_eq!(bd.length(), s.coxeter_length());
                assert_eq!(bd.reduced_word().len(), s.coxeter_length());
            }
        }
    }

    #[test]
    fn recursion_profiles_agree_with_peeling() {
        for n in 0..=7 {
            for p in 0..=n {
                for (s, bd) in shuffles_with_profiles(p, n - p) {
                    assert_eq!(bubble_decompose(&s), bd, "{s:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_images() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,3,1]").is_ok());
        assert!(serde_json::from_str::<Permutation>("[2,2,1]").is_err());
    }
}
