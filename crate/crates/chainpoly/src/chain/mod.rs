//! Chain invariants: `W^k`, `T^k`, `χ^k`, the Möbius polynomial, the chain
//! Möbius function `μ^k`, and split chain Tutte polynomials.
//!
//! Over the chains `S_1 ⊆ … ⊆ S_k ⊆ A` of a matroid `M` of rank `r`:
//!
//! * `W^k((a_i);(b_i)) = Σ Π_i a_i^(r - rk S_i) b_i^(|S_i| - rk S_i)`
//! * `T^k((x_i);(y_i)) = W^k((x_i - 1);(y_i - 1))`
//! * `χ^k(t_1..t_k)   = Σ Π_i (-1)^|S_i| t_i^(r - rk S_i)`
//!   ` = (-1)^(k r) T^k((1 - t_i);(0))`
//!
//! `χ^k` is computable by three independent routes (the signed chain sum,
//! the `T^k` evaluation, and the Möbius decomposition over the lattice of
//! flats); route equality is part of the verification suite.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::{ElementId, Matroid, Subset};
use crate::poly::{MultiPoly, VarSet};

pub(crate) mod enumerate;
mod mobius;
pub mod verify;

pub(crate) use enumerate::Mode;
use enumerate::{chain_sum, LevelWeights};

/// A chain `A_1 ⊆ … ⊆ A_k` encoded by per-element first-appearance level:
/// `levels[a] = Some(i)` means `a` enters at `A_i` (1-based), `None` means
/// `a ∉ A_k`. Level arrays are in bijection with chains, so there are
/// exactly `(k+1)^n` of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetChain {
    width: usize,
    k: usize,
    levels: Vec<Option<u32>>,
}

impl SubsetChain {
    pub fn from_levels(width: usize, k: usize, levels: Vec<Option<u32>>) -> Result<Self> {
        if levels.len() != width {
            return Err(Error::Contract(format!(
                "level array length {} does not match ground size {width}",
                levels.len()
            )));
        }
        if let Some(bad) = levels.iter().flatten().find(|&&l| l == 0 || l > k as u32) {
            return Err(Error::Contract(format!(
                "level {bad} outside 1..={k}"
            )));
        }
        Ok(SubsetChain { width, k, levels })
    }

    /// Encodes nested sets as a level array. Errors unless
    /// `sets[0] ⊆ sets[1] ⊆ …` all of the expected width.
    pub fn from_sets(width: usize, sets: &[Subset]) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if s.width() != width {
                return Err(Error::WidthMismatch {
                    expected: width,
                    got: s.width(),
                });
            }
            if i > 0 && !sets[i - 1].is_subset_of(s) {
                return Err(Error::Contract(format!(
                    "sets {} and {} are not nested",
                    i - 1,
                    i
                )));
            }
        }
        let levels = (0..width)
            .map(|a| {
                sets.iter()
                    .position(|s| s.contains(a))
                    .map(|i| i as u32 + 1)
            })
            .collect();
        Ok(SubsetChain {
            width,
            k: sets.len(),
            levels,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn levels(&self) -> &[Option<u32>] {
        &self.levels
    }

    /// Decodes to the sets `A_1, …, A_k`.
    pub fn sets(&self) -> Vec<Subset> {
        let mut masks = vec![0u64; self.k];
        for (a, level) in self.levels.iter().enumerate() {
            if let Some(l) = level {
                for m in masks.iter_mut().skip(*l as usize - 1) {
                    *m |= 1 << a;
                }
            }
        }
        masks
            .into_iter()
            .map(|m| Subset::from_bits(m, self.width))
            .collect()
    }

    /// All `(k+1)^width` chains, in mixed-radix counter order over the
    /// level digits (element 0 is the fastest digit).
    pub fn enumerate(width: usize, k: usize) -> impl Iterator<Item = SubsetChain> {
        ChainIter {
            width,
            k,
            digits: vec![0u32; width],
            done: false,
        }
    }
}

struct ChainIter {
    width: usize,
    k: usize,
    // digit d in 0..=k: 0..k-1 are levels d+1, k is "absent"
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for ChainIter {
    type Item = SubsetChain;

    fn next(&mut self) -> Option<SubsetChain> {
        if self.done {
            return None;
        }
        let levels = self
            .digits
            .iter()
            .map(|&d| if d == self.k as u32 { None } else { Some(d + 1) })
            .collect();
        let item = SubsetChain {
            width: self.width,
            k: self.k,
            levels,
        };
        let mut i = 0;
        loop {
            if i == self.width {
                self.done = true;
                break;
            }
            if self.digits[i] == self.k as u32 {
                self.digits[i] = 0;
                i += 1;
            } else {
                self.digits[i] += 1;
                break;
            }
        }
        Some(item)
    }
}

/// A chain of flats `X_1 ⊆ … ⊆ X_k`, the domain of `μ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatChain {
    pub flats: Vec<Subset>,
}

impl FlatChain {
    pub fn new(flats: Vec<Subset>) -> Self {
        FlatChain { flats }
    }

    pub fn k(&self) -> usize {
        self.flats.len()
    }
}

/// Which of the equivalent computations of `χ^k` to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharRoute {
    /// Signed sum over all chains.
    Definition,
    /// `(-1)^(k rk M) T^k((1 - t_i); (0))`.
    TutteEval,
    /// Möbius decomposition over the lattice of flats.
    Mobius,
}

struct WhitneyWeights<'a> {
    m: &'a Matroid,
    k: usize,
    rank_full: u16,
}

impl LevelWeights for WhitneyWeights<'_> {
    fn slots(&self) -> usize {
        2 * self.k
    }

    #[inline]
    fn apply(&self, level: usize, mask: u64, exps: &mut [u16]) -> i64 {
        let rk = self.m.rank_mask(mask) as u16;
        exps[level] = self.rank_full - rk;
        exps[self.k + level] = mask.count_ones() as u16 - rk;
        1
    }
}

struct CharWeights<'a> {
    m: &'a Matroid,
    rank_full: u16,
    slots_len: usize,
}

impl LevelWeights for CharWeights<'_> {
    fn slots(&self) -> usize {
        self.slots_len
    }

    #[inline]
    fn apply(&self, level: usize, mask: u64, exps: &mut [u16]) -> i64 {
        exps[level] = self.rank_full - self.m.rank_mask(mask) as u16;
        if mask.count_ones() & 1 == 1 {
            -1
        } else {
            1
        }
    }
}

/// Corank/nullity weights over `A - a` with the first `j` levels ranked in
/// `M \ a` and the rest in `M / a`.
struct SplitWeights<'a> {
    m: &'a Matroid,
    k: usize,
    j: usize,
    a_bit: u64,
    rank_del_full: u16,
    rank_con_full: u16,
}

impl LevelWeights for SplitWeights<'_> {
    fn slots(&self) -> usize {
        2 * self.k
    }

    #[inline]
    fn apply(&self, level: usize, mask: u64, exps: &mut [u16]) -> i64 {
        let (rk, full) = if level < self.j {
            (self.m.rank_mask(mask) as u16, self.rank_del_full)
        } else {
            // a is not a loop, so rk_{M/a}(S) = rk(S ∪ a) - 1
            (self.m.rank_mask(mask | self.a_bit) as u16 - 1, self.rank_con_full)
        };
        exps[level] = full - rk;
        exps[self.k + level] = mask.count_ones() as u16 - rk;
        1
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    // every chain allocates 2k exponent slots, so bound k before the
    // budget math does
    if k > 4096 {
        return Err(Error::InvalidParameters(format!("k = {k} is unreasonably large")));
    }
    Ok(())
}

fn whitney_impl(m: &Matroid, k: usize, budget: &Budget, mode: Mode) -> Result<MultiPoly> {
    check_k(k)?;
    m.memoize();
    let w = WhitneyWeights {
        m,
        k,
        rank_full: m.rank_full() as u16,
    };
    let acc = chain_sum(&w, m.ground().bits(), k, budget, mode)?;
    MultiPoly::from_int_terms(VarSet::paired("a", "b", k), acc.into_terms())
}

/// Chain Whitney rank generating polynomial `W^k` in `a1..ak, b1..bk`.
pub fn whitney_rank_poly(m: &Matroid, k: usize, budget: &Budget) -> Result<MultiPoly> {
    whitney_impl(m, k, budget, Mode::Auto)
}

/// Sequential variant of [`whitney_rank_poly`]; same canonical result.
pub fn whitney_rank_poly_seq(m: &Matroid, k: usize, budget: &Budget) -> Result<MultiPoly> {
    whitney_impl(m, k, budget, Mode::Sequential)
}

fn tutte_impl(m: &Matroid, k: usize, budget: &Budget, mode: Mode) -> Result<MultiPoly> {
    let w = whitney_impl(m, k, budget, mode)?;
    shift_whitney_to_tutte(&w, k)
}

/// `T^k((x_i);(y_i)) = W^k((x_i - 1);(y_i - 1))` in `x1..xk, y1..yk`.
pub fn chain_tutte(m: &Matroid, k: usize, budget: &Budget) -> Result<MultiPoly> {
    tutte_impl(m, k, budget, Mode::Auto)
}

pub fn chain_tutte_seq(m: &Matroid, k: usize, budget: &Budget) -> Result<MultiPoly> {
    tutte_impl(m, k, budget, Mode::Sequential)
}

fn shift_whitney_to_tutte(w: &MultiPoly, k: usize) -> Result<MultiPoly> {
    let xy = VarSet::paired("x", "y", k);
    let mut bindings = Vec::with_capacity(2 * k);
    let mut names = Vec::new();
    for i in 1..=k {
        names.push((format!("a{i}"), format!("x{i}")));
    }
    for i in 1..=k {
        names.push((format!("b{i}"), format!("y{i}")));
    }
    for (_, new) in &names {
        // x_i - 1 as a polynomial in the full x/y varset keeps variable
        // order independent of which slots W actually uses
        let var = MultiPoly::var(xy.clone(), new)?;
        bindings.push(var.add(&MultiPoly::int(xy.clone(), -1)));
    }
    let bound: Vec<(&str, MultiPoly)> = names
        .iter()
        .map(|(old, _)| old.as_str())
        .zip(bindings)
        .collect();
    // substitution drops the spent a/b names, leaving x1..xk, y1..yk
    w.substitute(&bound)
}

fn char_definition_impl(m: &Matroid, k: usize, budget: &Budget, mode: Mode) -> Result<MultiPoly> {
    check_k(k)?;
    m.memoize();
    let w = CharWeights {
        m,
        rank_full: m.rank_full() as u16,
        slots_len: k,
    };
    let acc = chain_sum(&w, m.ground().bits(), k, budget, mode)?;
    MultiPoly::from_int_terms(VarSet::indexed("t", k), acc.into_terms())
}

fn char_tutte_eval(m: &Matroid, k: usize, budget: &Budget, mode: Mode) -> Result<MultiPoly> {
    let t = tutte_impl(m, k, budget, mode)?;
    let tv = VarSet::indexed("t", k);
    let mut bindings: Vec<(String, MultiPoly)> = Vec::with_capacity(2 * k);
    for i in 1..=k {
        let one_minus_t = MultiPoly::int(tv.clone(), 1)
            .sub(&MultiPoly::var(tv.clone(), &format!("t{i}"))?);
        bindings.push((format!("x{i}"), one_minus_t));
    }
    for i in 1..=k {
        bindings.push((format!("y{i}"), MultiPoly::zero(VarSet::new::<String>([])?)));
    }
    let bound: Vec<(&str, MultiPoly)> =
        bindings.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let evaluated = t.substitute(&bound)?;
    let sign = if (k * m.rank_full()) % 2 == 1 { -1 } else { 1 };
    Ok(evaluated.scale_int(sign))
}

fn char_impl(
    m: &Matroid,
    k: usize,
    route: CharRoute,
    budget: &Budget,
    mode: Mode,
) -> Result<MultiPoly> {
    match route {
        CharRoute::Definition => char_definition_impl(m, k, budget, mode),
        CharRoute::TutteEval => char_tutte_eval(m, k, budget, mode),
        CharRoute::Mobius => chain_char_from_mobius(m, k, budget),
    }
}

/// Chain characteristic polynomial `χ^k` in `t1..tk`.
pub fn chain_characteristic(
    m: &Matroid,
    k: usize,
    route: CharRoute,
    budget: &Budget,
) -> Result<MultiPoly> {
    char_impl(m, k, route, budget, Mode::Auto)
}

pub fn chain_characteristic_seq(
    m: &Matroid,
    k: usize,
    route: CharRoute,
    budget: &Budget,
) -> Result<MultiPoly> {
    char_impl(m, k, route, budget, Mode::Sequential)
}

/// Möbius polynomial `M(s,t) = Σ_{X ≤ Y} μ(X,Y) s^rk(X) t^(rk M - rk Y)`
/// over flat pairs. Cross-checked against the coefficient reversal of
/// `χ^2` before returning.
pub fn mobius_poly(m: &Matroid, budget: &Budget) -> Result<MultiPoly> {
    let lat = m.flats(budget)?;
    let mu = lat.mobius(budget)?;
    let st = VarSet::new(["s", "t"])?;
    let l = lat.len();
    let rank_full = m.rank_full();
    let mut terms: Vec<(Vec<u16>, i64)> = Vec::new();
    for lo in 0..l {
        for hi in lo..l {
            let c = mu[lo * l + hi];
            if c != 0 {
                terms.push((
                    vec![lat.rank_of(lo) as u16, (rank_full - lat.rank_of(hi)) as u16],
                    c,
                ));
            }
        }
    }
    let poly = MultiPoly::from_int_terms(st.clone(), terms)?;

    // Mandatory cross-check: M(s,t) = s^rk(M) χ^2(s^{-1}, t), realised as a
    // coefficient reversal since deg_{t1} χ^2 <= rk(M).
    let chi2 = char_definition_impl(m, 2, budget, Mode::Auto)?;
    let reversed = chi2
        .reverse_in_var("t1", rank_full as u16)?
        .rename_vars(&["s", "t"])?;
    if reversed != poly {
        return Err(Error::CrossCheck {
            context: "mobius polynomial vs chi^2 reversal".into(),
            left: poly.to_string(),
            right: reversed.to_string(),
        });
    }
    Ok(poly)
}

/// Chain Möbius function `μ^k(X_1, …, X_k)`: the signed count of chains
/// whose per-level joins are exactly the given flats.
pub fn chain_mobius(m: &Matroid, fc: &FlatChain, k: usize, budget: &Budget) -> Result<i64> {
    if fc.k() != k {
        return Err(Error::Contract(format!(
            "flat chain has length {}, expected k = {k}",
            fc.k()
        )));
    }
    check_k(k)?;
    let lat = m.flats(budget)?;
    let mut idxs = Vec::with_capacity(k);
    for (i, x) in fc.flats.iter().enumerate() {
        if x.width() != m.ground_size() {
            return Err(Error::WidthMismatch {
                expected: m.ground_size(),
                got: x.width(),
            });
        }
        let idx = lat.index_of(x).ok_or_else(|| {
            Error::Contract(format!("set {x} at position {i} is not a flat"))
        })?;
        if i > 0 && !fc.flats[i - 1].is_subset_of(x) {
            return Err(Error::Contract(format!(
                "flats {} and {} are not nested",
                i - 1,
                i
            )));
        }
        idxs.push(idx);
    }
    let mu = lat.mobius(budget)?;
    let mut work = mobius::WorkCounter::new(budget);
    mobius::mu_chain_value(&lat, mu, &idxs, &mut work)
}

/// `χ^k` by Möbius decomposition:
/// `Σ over flat chains of μ^k(X_1..X_k) Π t_i^(rk M - rk X_i)`.
/// Costs depend on the lattice of flats, not on `(k+1)^n`.
pub fn chain_char_from_mobius(m: &Matroid, k: usize, budget: &Budget) -> Result<MultiPoly> {
    check_k(k)?;
    let lat = m.flats(budget)?;
    let mu = lat.mobius(budget)?;
    mobius::char_from_mobius(m, &lat, mu, k, budget)
}

/// Split chain Tutte polynomial `sT^{k,j}_{M,a}`: chains in `A - a` with
/// the first `j` levels weighted by `M \ a` coranks/nullities and the rest
/// by `M / a`. `j = 0` and `j = k` are `T^k_{M/a}` and `T^k_{M\a}`.
pub fn split_chain_tutte(
    m: &Matroid,
    a: ElementId,
    k: usize,
    j: usize,
    budget: &Budget,
) -> Result<MultiPoly> {
    split_impl(m, a, k, j, budget, Mode::Auto)
}

pub(crate) fn split_impl(
    m: &Matroid,
    a: ElementId,
    k: usize,
    j: usize,
    budget: &Budget,
    mode: Mode,
) -> Result<MultiPoly> {
    check_k(k)?;
    if j > k {
        return Err(Error::InvalidParameters(format!("j = {j} must be in 0..={k}")));
    }
    if m.is_loop(a)? {
        return Err(Error::Hypothesis(format!("element {a} is a loop")));
    }
    if m.is_coloop(a)? {
        return Err(Error::Hypothesis(format!("element {a} is a coloop")));
    }
    if j == 0 {
        return tutte_impl(&m.contract(a)?, k, budget, mode);
    }
    if j == k {
        return tutte_impl(&m.delete(a)?, k, budget, mode);
    }
    m.memoize();
    let a_bit = 1u64 << a;
    let ground = m.ground().bits() & !a_bit;
    let w = SplitWeights {
        m,
        k,
        j,
        a_bit,
        rank_del_full: m.rank_mask(ground) as u16,
        rank_con_full: (m.rank_full() - 1) as u16,
    };
    let acc = chain_sum(&w, ground, k, budget, mode)?;
    let w_form = MultiPoly::from_int_terms(VarSet::paired("a", "b", k), acc.into_terms())?;
    shift_whitney_to_tutte(&w_form, k)
}

/// Number of chains a `(k+1)^n`-style enumeration on `m` visits; used by
/// the verification reports' work counters.
pub fn chain_visits(m: &Matroid, k: usize) -> u128 {
    enumerate::chain_count(m.ground_size() as u32, k)
}
