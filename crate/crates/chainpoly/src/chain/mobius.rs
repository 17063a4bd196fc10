//! The chain Möbius function on the lattice of flats.
//!
//! `μ^k(X_1..X_k)` is the signed count of chains `A_1 ⊆ … ⊆ A_k` with
//! `∨A_i = X_i` for every level. Instead of enumerating chains, it is
//! recovered by componentwise Möbius inversion of the "join below"
//! aggregate
//!
//! `g(Y_1..Y_k) = Σ_{chains, A_i ⊆ Y_i} Π (-1)^|A_i|`
//!
//! which factorises over ground elements: writing `T_l = ∩_{i ≥ l} Y_i`,
//! an element first eligible at level `l` contributes a factor 0 when
//! `k - l` is even and 1 otherwise, so `g ∈ {0,1}` and
//! `g = 1  ⟺  T_l = T_{l-1} for every l ≡ k (mod 2)` (with `T_0 = ∅`).
//! Then `μ^k(X_1..X_k) = Σ_{Y_i ≤ X_i} Π μ(Y_i, X_i) · g(Y_1..Y_k)`.
//!
//! The work is polynomial in the lattice size and independent of the
//! `(k+1)^n` chain count.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, Matroid};
use crate::poly::{MultiPoly, VarSet};

pub(crate) struct WorkCounter<'a> {
    budget: &'a Budget,
    used: u64,
}

impl<'a> WorkCounter<'a> {
    pub(crate) fn new(budget: &'a Budget) -> Self {
        WorkCounter { budget, used: 0 }
    }

    #[inline]
    fn spend(&mut self, amount: u64) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.budget.max_visits {
            return Err(Error::SizeCap {
                required: self.used as u128,
                cap: self.budget.max_visits,
            });
        }
        Ok(())
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}

/// The parity condition on the suffix intersections `T_l`; `t[i]` holds
/// `T_{i+1}` and `T_0 = ∅`.
#[inline]
fn g_indicator(t: &[u64], k: usize) -> bool {
    let mut prev = 0u64;
    for (i, &cur) in t.iter().enumerate() {
        let l = i + 1;
        if (k - l) % 2 == 0 && cur != prev {
            return false;
        }
        prev = cur;
    }
    true
}

/// `μ^k` on a single flat chain, given the precomputed classic Möbius
/// table.
pub(crate) fn mu_chain_value(
    lat: &FlatLattice,
    mu: &[i64],
    xs: &[usize],
    work: &mut WorkCounter,
) -> Result<i64> {
    let k = xs.len();
    let l = lat.len();
    // Tuple DFS from the top level down, tracking suffix intersections.
    // mu(Y_i, X_i) = 0 prunes the whole subtree under Y_i.
    fn rec(
        lat: &FlatLattice,
        mu: &[i64],
        xs: &[usize],
        level: usize,
        suffix: u64,
        coef: i64,
        t_masks: &mut Vec<u64>,
        total: &mut i64,
        work: &mut WorkCounter,
        l: usize,
    ) -> Result<()> {
        let k = xs.len();
        if level == 0 {
            work.spend(1)?;
            if g_indicator(t_masks, k) {
                *total += coef;
            }
            return Ok(());
        }
        let x = xs[level - 1];
        for y in 0..=x {
            if !lat.le(y, x) {
                continue;
            }
            let m = mu[y * l + x];
            if m == 0 {
                continue;
            }
            let inter = lat.flat_mask(y) & suffix;
            t_masks[level - 1] = inter;
            rec(lat, mu, xs, level - 1, inter, coef * m, t_masks, total, work, l)?;
        }
        Ok(())
    }

    let mut total = 0i64;
    let mut t_masks = vec![0u64; k];
    rec(
        lat,
        mu,
        xs,
        k,
        u64::MAX,
        1,
        &mut t_masks,
        &mut total,
        work,
        l,
    )?;
    Ok(total)
}

/// `χ^k = Σ μ^k(X_1..X_k) Π t_i^(rk M - rk X_i)` over all flat chains.
pub(crate) fn char_from_mobius(
    m: &Matroid,
    lat: &FlatLattice,
    mu: &[i64],
    k: usize,
    budget: &Budget,
) -> Result<MultiPoly> {
    let rank_full = m.rank_full();
    let mut work = WorkCounter::new(budget);
    let mut terms: Vec<(Vec<u16>, i64)> = Vec::new();
    let mut chain: Vec<usize> = Vec::with_capacity(k);

    fn walk(
        lat: &FlatLattice,
        mu: &[i64],
        k: usize,
        rank_full: usize,
        chain: &mut Vec<usize>,
        terms: &mut Vec<(Vec<u16>, i64)>,
        work: &mut WorkCounter,
    ) -> Result<()> {
        if chain.len() == k {
            let v = mu_chain_value(lat, mu, chain, work)?;
            if v != 0 {
                let exps = chain
                    .iter()
                    .map(|&x| (rank_full - lat.rank_of(x)) as u16)
                    .collect();
                terms.push((exps, v));
            }
            return Ok(());
        }
        let lo = chain.last().copied();
        for f in 0..lat.len() {
            if let Some(lo) = lo {
                if !lat.le(lo, f) {
                    continue;
                }
            }
            chain.push(f);
            walk(lat, mu, k, rank_full, chain, terms, work)?;
            chain.pop();
        }
        Ok(())
    }

    walk(lat, mu, k, rank_full, &mut chain, &mut terms, &mut work)?;
    MultiPoly::from_int_terms(VarSet::indexed("t", k), terms)
}
