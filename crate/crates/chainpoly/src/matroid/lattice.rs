//! The lattice of flats and its classic Möbius function.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::budget::Budget;
use crate::error::Result;
use crate::matroid::{Matroid, Subset};

/// All flats of a matroid, sorted by (cardinality, bit value). Index 0 is
/// the bottom flat `cl(∅)`; the last index is the full ground set.
#[derive(Debug)]
pub struct FlatLattice {
    n: usize,
    flats: Vec<u64>,
    index: HashMap<u64, u32>,
    ranks: Vec<usize>,
    mobius: OnceLock<Vec<i64>>,
}

impl FlatLattice {
    pub(crate) fn new(m: &Matroid, flats: Vec<u64>) -> Self {
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i as u32))
            .collect();
        let ranks = flats.iter().map(|&f| m.rank_mask(f)).collect();
        FlatLattice {
            n: m.ground_size(),
            flats,
            index,
            ranks,
            mobius: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn flat(&self, i: usize) -> Subset {
        Subset::from_bits(self.flats[i], self.n)
    }

    pub fn flat_mask(&self, i: usize) -> u64 {
        self.flats[i]
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.index.get(&s.bits()).map(|&i| i as usize)
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.index.contains_key(&s.bits())
    }

    /// Lattice order: containment of the underlying sets.
    pub fn le(&self, lo: usize, hi: usize) -> bool {
        self.flats[lo] & !self.flats[hi] == 0
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn iter_masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.flats.iter().copied()
    }

    /// Classic Möbius function `μ(X, Y)` on flat indices, from the defining
    /// recursion `μ(X,X) = 1`, `Σ_{X ≤ Y ≤ Z} μ(X,Y) = 0`. The full table
    /// costs O(|L|^3), so it is budget-guarded and computed once.
    pub fn mobius(&self, budget: &Budget) -> Result<&[i64]> {
        let l = self.flats.len();
        if self.mobius.get().is_none() {
            budget.check((l as u128).pow(3))?;
        }
        Ok(self.mobius.get_or_init(|| {
            let mut table = vec![0i64; l * l];
            for lo in 0..l {
                table[lo * l + lo] = 1;
                // flats are sorted by cardinality, so strict subsets of
                // `hi` always have smaller indices
                for hi in lo + 1..l {
                    if !self.le(lo, hi) {
                        continue;
                    }
                    let mut acc = 0i64;
                    for mid in lo..hi {
                        if self.le(lo, mid) && self.le(mid, hi) {
                            acc += table[lo * l + mid];
                        }
                    }
                    table[lo * l + hi] = -acc;
                }
            }
            table
        }))
    }
}
