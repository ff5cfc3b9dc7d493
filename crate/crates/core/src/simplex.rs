//! Simplex references in Eilenberg–Zilber normal form.
//!
//! A simplex of a finite simplicial set is stored as a pair `(generator, θ)`
//! where the generator is non-degenerate and `θ : [dim] ↠ [gen.dim]` is a
//! monotone surjection. A monotone surjection is determined by the set of
//! positions `j` with `θ(j) = θ(j + 1)`, so it fits in a bit mask. The
//! canonical degeneracy word `s_{j1} s_{j2} ... ` lists those positions in
//! strictly decreasing order.

use std::fmt;

/// Largest dimension representable by a degeneracy mask.
pub const MAX_DIM: usize = 30;

/// A non-degenerate generator, addressed by dimension and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub dim: u32,
    pub index: u32,
}

impl Gen {
    pub fn new(dim: usize, index: usize) -> Self {
        Gen { dim: dim as u32, index: index as u32 }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// A (possibly degenerate) simplex: a generator with a degeneracy mask.
///
/// Bit `j` of `mask` is set iff the underlying surjection identifies `j` and
/// `j + 1`. The dimension is `gen.dim + popcount(mask)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub gen: Gen,
    pub mask: u32,
}

impl SimplexRef {
    pub fn nondegenerate(gen: Gen) -> Self {
        SimplexRef { gen, mask: 0 }
    }

    pub fn dim(self) -> usize {
        self.gen.dim() + self.mask.count_ones() as usize
    }

    pub fn is_degenerate(self) -> bool {
        self.mask != 0
    }

    /// The degeneracy word, strictly decreasing.
    pub fn degeneracies(self) -> Vec<usize> {
        (0..MAX_DIM).rev().filter(|j| self.mask & (1 << j) != 0).collect()
    }

    /// Builds a reference from a degeneracy word (in any order of application);
    /// the word is normalised. `None` if an index is out of range.
    pub fn from_word(gen: Gen, word: &[usize]) -> Option<Self> {
        let mut x = SimplexRef::nondegenerate(gen);
        for &j in word.iter().rev() {
            if j > x.dim() {
                return None;
            }
            x = x.degenerate(j);
        }
        Some(x)
    }

    /// `s_j` applied to this simplex.
    pub fn degenerate(self, j: usize) -> Self {
        debug_assert!(j <= self.dim());
        let low = self.mask & ((1u32 << j) - 1);
        let high = (self.mask >> j) << (j + 1);
        SimplexRef { gen: self.gen, mask: low | high | (1 << j) }
    }

    /// The surjection `θ : [dim] ↠ [gen.dim]` as a vector of images.
    pub fn surjection(self) -> Vec<usize> {
        surjection_of_mask(self.mask, self.dim())
    }
}

/// Images of the monotone surjection encoded by `mask` on `[dim]`.
pub fn surjection_of_mask(mask: u32, dim: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(dim + 1);
    let mut v = 0;
    out.push(0);
    for j in 0..dim {
        if mask & (1 << j) == 0 {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Mask of a monotone surjection given by its images.
pub fn mask_of_surjection(images: &[usize]) -> u32 {
    let mut mask = 0;
    for j in 0..images.len().saturating_sub(1) {
        if images[j] == images[j + 1] {
            mask |= 1 << j;
        }
    }
    mask
}

/// The coface `δ^j : [m-1] → [m]` skipping `j`.
pub fn coface(m: usize, j: usize) -> Vec<usize> {
    (0..=m).filter(|&i| i != j).collect()
}

/// The codegeneracy `σ^j : [m+1] → [m]` hitting `j` twice.
pub fn codegeneracy(m: usize, j: usize) -> Vec<usize> {
    (0..=m + 1).map(|i| if i <= j { i } else { i - 1 }).collect()
}

/// Composite `outer ∘ inner` of maps given as image vectors.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// All monotone surjections `[k] ↠ [m]`, as masks.
pub fn surjection_masks(k: usize, m: usize) -> Vec<u32> {
    if m > k {
        return Vec::new();
    }
    let extra = k - m;
    let mut out = Vec::new();
    for combo in itertools::Itertools::combinations(0..k, extra) {
        out.push(combo.iter().fold(0u32, |acc, &j| acc | (1 << j)));
    }
    out.sort_unstable();
    out
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in self.degeneracies() {
            write!(f, "s{j}")?;
        }
        write!(f, "#{}:{}", self.gen.dim, self.gen.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_normalises_relations() {
        let v = SimplexRef::nondegenerate(Gen::new(0, 0));
        // s0 s0 v = s1 s0 v
        let a = v.degenerate(0).degenerate(0);
        let b = v.degenerate(0).degenerate(1);
        assert_eq!(a, b);
        assert_eq!(a.degeneracies(), vec![1, 0]);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn word_round_trip() {
        let g = Gen::new(1, 3);
        let x = SimplexRef::from_word(g, &[2, 0]).unwrap();
        assert_eq!(x.degeneracies(), vec![2, 0]);
        assert_eq!(x.dim(), 3);
        assert_eq!(x.surjection(), vec![0, 0, 1, 1]);
        assert!(SimplexRef::from_word(g, &[3, 1]).is_none());
        assert_eq!(mask_of_surjection(&x.surjection()), x.mask);
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjection_masks(3, 1).len(), 3);
        assert_eq!(surjection_masks(4, 2).len(), 6);
        assert_eq!(surjection_masks(2, 2), vec![0]);
    }
}
