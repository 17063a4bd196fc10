//! Enumeration of subset chains `S_1 ⊆ S_2 ⊆ … ⊆ S_k` inside a ground mask.
//!
//! The walk is a DFS choosing `S_k` first and recursing on submasks, so the
//! per-level weight of a shared prefix is computed once for all chains
//! below it. Each of the `(k+1)^n` chains is visited exactly once. With the
//! `parallel` feature the outermost level is partitioned across rayon
//! workers and the per-worker accumulators merged; monomial accumulation is
//! an integer sum keyed by exponent vector, so the result is independent of
//! the partitioning.

use std::collections::HashMap;

use crate::budget::{pow_saturating, Budget};
use crate::error::Result;

/// Per-level weight of a chain sum: writes this level's exponent slots and
/// returns the level's sign factor (`+1` or `-1`).
pub(crate) trait LevelWeights: Sync {
    fn slots(&self) -> usize;
    fn apply(&self, level: usize, mask: u64, exps: &mut [u16]) -> i64;
}

/// Signed monomial accumulator. Coefficients stay in `i64`: they are
/// bounded by the number of chains, which the budget caps well below
/// overflow.
#[derive(Default)]
pub(crate) struct Accum {
    pub terms: HashMap<Box<[u16]>, i64>,
    pub visits: u64,
}

impl Accum {
    fn bump(&mut self, exps: &[u16], sign: i64) {
        self.visits += 1;
        if let Some(v) = self.terms.get_mut(exps) {
            *v += sign;
        } else {
            self.terms.insert(exps.into(), sign);
        }
    }

    #[cfg(feature = "parallel")]
    pub(crate) fn merge(self, other: Accum) -> Accum {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (k, v) in small.terms {
            *big.terms.entry(k).or_insert(0) += v;
        }
        big.visits += small.visits;
        big
    }

    /// Non-cancelled terms as `(exponents, coefficient)` pairs.
    pub(crate) fn into_terms(self) -> impl Iterator<Item = (Vec<u16>, i64)> {
        self.terms
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(k, c)| (k.into_vec(), c))
    }
}

/// How many chains an enumeration over `p` free elements visits.
pub(crate) fn chain_count(p: u32, k: usize) -> u128 {
    pow_saturating(k as u128 + 1, p)
}

fn descend<W: LevelWeights>(w: &W, level: usize, sup: u64, exps: &mut [u16], sign: i64, acc: &mut Accum) {
    let mut s = sup;
    loop {
        let f = sign * w.apply(level - 1, s, exps);
        if level == 1 {
            acc.bump(exps, f);
        } else {
            descend(w, level - 1, s, exps, f, acc);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & sup;
    }
}

/// Positions of the set bits of `ground`.
fn bit_positions(ground: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(ground.count_ones() as usize);
    let mut g = ground;
    while g != 0 {
        out.push(g.trailing_zeros());
        g &= g - 1;
    }
    out
}

/// Spreads the low `positions.len()` bits of `v` onto the given positions.
#[inline]
fn spread(v: u64, positions: &[u32]) -> u64 {
    let mut out = 0u64;
    for (i, &p) in positions.iter().enumerate() {
        out |= (v >> i & 1) << p;
    }
    out
}

fn run_top<W: LevelWeights>(w: &W, k: usize, top: u64, acc: &mut Accum, exps: &mut [u16]) {
    let f = w.apply(k - 1, top, exps);
    if k == 1 {
        acc.bump(exps, f);
    } else {
        descend(w, k - 1, top, exps, f, acc);
    }
}

pub(crate) fn run_seq<W: LevelWeights>(w: &W, ground: u64, k: usize) -> Accum {
    let positions = bit_positions(ground);
    let mut acc = Accum::default();
    let mut exps = vec![0u16; w.slots()];
    for v in 0..1u64 << positions.len() {
        run_top(w, k, spread(v, &positions), &mut acc, &mut exps);
    }
    acc
}

#[cfg(feature = "parallel")]
pub(crate) fn run_par<W: LevelWeights>(w: &W, ground: u64, k: usize) -> Accum {
    use rayon::prelude::*;
    let positions = bit_positions(ground);
    (0..1u64 << positions.len())
        .into_par_iter()
        .fold(
            || (Accum::default(), vec![0u16; w.slots()]),
            |(mut acc, mut exps), v| {
                run_top(w, k, spread(v, &positions), &mut acc, &mut exps);
                (acc, exps)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(Accum::default, Accum::merge)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Auto,
    Sequential,
}

/// Budget-checked chain sum over all chains in `ground`.
pub(crate) fn chain_sum<W: LevelWeights>(
    w: &W,
    ground: u64,
    k: usize,
    budget: &Budget,
    mode: Mode,
) -> Result<Accum> {
    budget.check(chain_count(ground.count_ones(), k))?;
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Auto {
            return Ok(run_par(w, ground, k));
        }
    }
    let _ = mode;
    Ok(run_seq(w, ground, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct CountOnly;

    impl LevelWeights for CountOnly {
        fn slots(&self) -> usize {
            1
        }
        fn apply(&self, _level: usize, _mask: u64, exps: &mut [u16]) -> i64 {
            exps[0] = 0;
            1
        }
    }

    #[test]
    fn visit_counts_are_exact() {
        for (ground, k) in [(0b111u64, 2usize), (0b1011, 3), (0, 4), (0b1, 1)] {
            let p = ground.count_ones();
            let acc = run_seq(&CountOnly, ground, k);
            assert_eq!(acc.visits as u128, chain_count(p, k));
            #[cfg(feature = "parallel")]
            {
                let par = run_par(&CountOnly, ground, k);
                assert_eq!(par.visits, acc.visits);
            }
        }
    }

    #[test]
    fn budget_is_checked_before_running() {
        let tight = crate::budget::Budget::default().with_max_visits(26);
        assert!(chain_sum(&CountOnly, 0b111, 2, &tight, Mode::Sequential).is_err());
        let enough = crate::budget::Budget::default().with_max_visits(27);
        assert!(chain_sum(&CountOnly, 0b111, 2, &enough, Mode::Sequential).is_ok());
    }
}
