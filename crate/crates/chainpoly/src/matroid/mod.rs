//! Matroids as ground set plus rank oracle.
//!
//! A matroid is `M = (A, rk)` with `rk: 2^A -> N` satisfying `rk(∅) = 0`,
//! `rk({a}) ∈ {0,1}`, monotonicity, and submodularity. Ground sets are
//! capped at 63 elements so subsets fit one machine word. Duals, direct
//! sums and minors are lazy views delegating to their parents' oracles; a
//! per-matroid memo table (`memoize`) caches all `2^n` ranks for the
//! enumeration-heavy operations, and rank queries are safe to issue from
//! any number of threads.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

mod json;
mod lattice;
pub use json::MatroidSpec;
pub use lattice::FlatLattice;

/// Ground set element label, dense in `0..n`.
pub type ElementId = usize;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 63;

/// Ground sets up to this size get a dense `2^n` rank memo table.
const MEMO_MAX_GROUND: usize = 22;

/// Ranks of table-backed matroids are validated exhaustively up to this
/// ground size, by sampled pairs above it.
const VALIDATE_EXHAUSTIVE_MAX: usize = 12;

/// Subset of a ground set of fixed width, stored as a bitset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u64,
    width: u8,
}

impl Subset {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_GROUND);
        Subset { bits: 0, width: width as u8 }
    }

    pub fn full(width: usize) -> Self {
        assert!(width <= MAX_GROUND);
        let bits = if width == 0 { 0 } else { (1u64 << width) - 1 };
        Subset { bits, width: width as u8 }
    }

    pub fn from_bits(bits: u64, width: usize) -> Self {
        assert!(width <= MAX_GROUND);
        debug_assert_eq!(bits & !Subset::full(width).bits, 0);
        Subset { bits, width: width as u8 }
    }

    pub fn from_elements(width: usize, elements: impl IntoIterator<Item = ElementId>) -> Result<Self> {
        let mut s = Subset::empty(width);
        for e in elements {
            if e >= width {
                return Err(Error::Contract(format!(
                    "element {e} out of range for ground set of size {width}"
                )));
            }
            s.bits |= 1 << e;
        }
        Ok(s)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: ElementId) -> bool {
        e < self.width() && self.bits >> e & 1 == 1
    }

    pub fn with(&self, e: ElementId) -> Self {
        debug_assert!(e < self.width());
        Subset { bits: self.bits | 1 << e, width: self.width }
    }

    pub fn without(&self, e: ElementId) -> Self {
        Subset { bits: self.bits & !(1 << e), width: self.width }
    }

    pub fn union(&self, other: &Subset) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits | other.bits, width: self.width }
    }

    pub fn intersect(&self, other: &Subset) -> Self {
        debug_assert_eq!(self.width, other.width);
        Subset { bits: self.bits & other.bits, width: self.width }
    }

    pub fn complement(&self) -> Self {
        Subset {
            bits: Subset::full(self.width()).bits & !self.bits,
            width: self.width,
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        let width = self.width();
        (0..width).filter(move |&e| self.bits >> e & 1 == 1)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Debug, Clone)]
enum RankKind {
    Uniform { r: usize },
    Graphic { graph: Graph },
    Table { table: Arc<[u8]> },
    Dual { inner: Arc<Matroid> },
    Sum { left: Arc<Matroid>, right: Arc<Matroid> },
    /// Minor `(M \ deleted) / contracted` with the surviving elements
    /// relabelled densely; `child_to_parent[i]` is element `i`'s label in
    /// the parent.
    Minor {
        parent: Arc<Matroid>,
        child_to_parent: Arc<[u8]>,
        contracted: u64,
        contracted_rank: usize,
    },
}

/// A matroid: immutable after construction, shareable across threads.
#[derive(Debug)]
pub struct Matroid {
    n: usize,
    rank_full: usize,
    kind: RankKind,
    memo: OnceLock<Arc<[u8]>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        let memo = OnceLock::new();
        if let Some(t) = self.memo.get() {
            let _ = memo.set(Arc::clone(t));
        }
        Matroid {
            n: self.n,
            rank_full: self.rank_full,
            kind: self.kind.clone(),
            memo,
        }
    }
}

impl Matroid {
    fn build(n: usize, kind: RankKind) -> Self {
        let mut m = Matroid {
            n,
            rank_full: 0,
            kind,
            memo: OnceLock::new(),
        };
        m.rank_full = m.rank_uncached(m.ground().bits);
        m
    }

    /// Uniform matroid `U_{r,n}`: `rk(S) = min(|S|, r)`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidParameters(format!(
                "uniform matroid needs r <= n, got r={r}, n={n}"
            )));
        }
        if n > MAX_GROUND {
            return Err(Error::InvalidParameters(format!(
                "ground set size {n} exceeds the cap of {MAX_GROUND}"
            )));
        }
        Ok(Matroid::build(n, RankKind::Uniform { r }))
    }

    /// Cycle matroid of a graph: ground set = edges, `rk(A) = |V| - c(A)`.
    pub fn graphic(graph: Graph) -> Self {
        let n = graph.num_edges();
        Matroid::build(n, RankKind::Graphic { graph })
    }

    /// Matroid from an explicit rank function. Materialises the full table
    /// and validates the rank axioms: exhaustively over all subset pairs
    /// for `n <= 12`, by 1000 sampled pairs above that.
    pub fn from_rank_fn(n: usize, rank: impl Fn(Subset) -> usize) -> Result<Self> {
        if n > MEMO_MAX_GROUND {
            return Err(Error::InvalidParameters(format!(
                "rank-table matroids are capped at {MEMO_MAX_GROUND} elements, got {n}"
            )));
        }
        let size = 1usize << n;
        let mut table = vec![0u8; size];
        for (mask, slot) in table.iter_mut().enumerate() {
            let r = rank(Subset::from_bits(mask as u64, n));
            if r > n {
                return Err(Error::InvalidParameters(format!(
                    "rank {r} of a {n}-element ground set is impossible"
                )));
            }
            *slot = r as u8;
        }
        validate_rank_table(n, &table)?;
        Ok(Matroid::build(n, RankKind::Table { table: table.into() }))
    }

    /// Dual matroid: `rk*(S) = |S| - (rk(M) - rk(A - S))`.
    pub fn dual(&self) -> Matroid {
        Matroid::build(
            self.n,
            RankKind::Dual {
                inner: Arc::new(self.clone()),
            },
        )
    }

    /// Direct sum; the right summand's elements are relabelled after the
    /// left's.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(Error::InvalidParameters(format!(
                "direct sum ground set size {n} exceeds the cap of {MAX_GROUND}"
            )));
        }
        Ok(Matroid::build(
            n,
            RankKind::Sum {
                left: Arc::new(self.clone()),
                right: Arc::new(other.clone()),
            },
        ))
    }

    pub fn delete(&self, a: ElementId) -> Result<Matroid> {
        self.minor(&Subset::from_elements(self.n, [a])?, &Subset::empty(self.n))
    }

    pub fn contract(&self, a: ElementId) -> Result<Matroid> {
        self.minor(&Subset::empty(self.n), &Subset::from_elements(self.n, [a])?)
    }

    /// Restriction `M | s`, i.e. deletion of the complement.
    pub fn restrict(&self, s: &Subset) -> Result<Matroid> {
        self.check_width(s)?;
        self.minor(&s.complement(), &Subset::empty(self.n))
    }

    /// General minor `(M \ deleted) / contracted`. Surviving elements are
    /// relabelled densely in increasing parent order. Nested minors are
    /// flattened onto the original parent.
    pub fn minor(&self, deleted: &Subset, contracted: &Subset) -> Result<Matroid> {
        self.check_width(deleted)?;
        self.check_width(contracted)?;
        if !deleted.intersect(contracted).is_empty() {
            return Err(Error::Contract(
                "deleted and contracted sets overlap".into(),
            ));
        }
        // Express the minor over the ultimate parent.
        let (parent, parent_deleted, parent_contracted) = match &self.kind {
            RankKind::Minor {
                parent,
                child_to_parent,
                contracted: base_contracted,
                ..
            } => {
                let up = |s: &Subset| -> u64 {
                    let mut bits = 0u64;
                    for e in s.elements() {
                        bits |= 1 << child_to_parent[e];
                    }
                    bits
                };
                let pn = parent.n;
                let keep: u64 = child_to_parent.iter().fold(0, |m, &p| m | 1 << p);
                let base_deleted = Subset::full(pn).bits & !keep & !base_contracted;
                (
                    Arc::clone(parent),
                    base_deleted | up(deleted),
                    base_contracted | up(contracted),
                )
            }
            _ => (
                Arc::new(self.clone()),
                deleted.bits,
                contracted.bits,
            ),
        };
        let pn = parent.n;
        let child_to_parent: Vec<u8> = (0..pn)
            .filter(|e| (parent_deleted | parent_contracted) >> e & 1 == 0)
            .map(|e| e as u8)
            .collect();
        let contracted_rank = parent.rank_mask(parent_contracted);
        let n = child_to_parent.len();
        Ok(Matroid::build(
            n,
            RankKind::Minor {
                parent,
                child_to_parent: child_to_parent.into(),
                contracted: parent_contracted,
                contracted_rank,
            },
        ))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// `rk(M) = rk(A)`.
    pub fn rank_full(&self) -> usize {
        self.rank_full
    }

    fn check_width(&self, s: &Subset) -> Result<()> {
        if s.width() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                got: s.width(),
            });
        }
        Ok(())
    }

    pub fn rank(&self, s: &Subset) -> Result<usize> {
        self.check_width(s)?;
        Ok(self.rank_mask(s.bits))
    }

    /// Rank by raw bitmask. Uses the memo table when present.
    #[inline]
    pub fn rank_mask(&self, mask: u64) -> usize {
        if let Some(table) = self.memo.get() {
            return table[mask as usize] as usize;
        }
        self.rank_uncached(mask)
    }

    fn rank_uncached(&self, mask: u64) -> usize {
        match &self.kind {
            RankKind::Uniform { r } => (mask.count_ones() as usize).min(*r),
            RankKind::Graphic { graph } => graph.rank_masked(mask),
            RankKind::Table { table } => table[mask as usize] as usize,
            RankKind::Dual { inner } => {
                let s = mask.count_ones() as usize;
                let co = Subset::full(self.n).bits & !mask;
                s + inner.rank_mask(co) - inner.rank_full
            }
            RankKind::Sum { left, right } => {
                let ln = left.n;
                let lmask = mask & Subset::full(ln).bits;
                let rmask = mask >> ln;
                left.rank_mask(lmask) + right.rank_mask(rmask)
            }
            RankKind::Minor {
                parent,
                child_to_parent,
                contracted,
                contracted_rank,
            } => {
                let mut pmask = *contracted;
                let mut m = mask;
                while m != 0 {
                    let e = m.trailing_zeros() as usize;
                    pmask |= 1 << child_to_parent[e];
                    m &= m - 1;
                }
                parent.rank_mask(pmask) - contracted_rank
            }
        }
    }

    /// Fills the dense rank table when the ground set is small enough.
    /// Returns whether a table is in place afterwards. Idempotent.
    pub fn memoize(&self) -> bool {
        if self.n > MEMO_MAX_GROUND {
            return false;
        }
        self.memo.get_or_init(|| {
            let mut table = vec![0u8; 1 << self.n];
            for (mask, slot) in table.iter_mut().enumerate() {
                *slot = self.rank_uncached(mask as u64) as u8;
            }
            table.into()
        });
        true
    }

    pub fn is_loop(&self, a: ElementId) -> Result<bool> {
        self.element_in_range(a)?;
        Ok(self.rank_mask(1 << a) == 0)
    }

    pub fn is_coloop(&self, a: ElementId) -> Result<bool> {
        self.element_in_range(a)?;
        Ok(self.rank_full > 0
            && self.rank_mask(self.ground().bits & !(1 << a)) == self.rank_full - 1)
    }

    /// No loops and every two-element subset has rank 2.
    pub fn is_simple(&self) -> bool {
        for a in 0..self.n {
            if self.rank_mask(1 << a) == 0 {
                return false;
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.rank_mask(1 << a | 1 << b) != 2 {
                    return false;
                }
            }
        }
        true
    }

    fn element_in_range(&self, a: ElementId) -> Result<()> {
        if a >= self.n {
            return Err(Error::Contract(format!(
                "element {a} out of range for ground set of size {}",
                self.n
            )));
        }
        Ok(())
    }

    /// `cl(s) = {a : rk(s ∪ {a}) = rk(s)}`.
    pub fn closure(&self, s: &Subset) -> Result<Subset> {
        self.check_width(s)?;
        Ok(Subset::from_bits(self.closure_mask(s.bits), self.n))
    }

    pub(crate) fn closure_mask(&self, mask: u64) -> u64 {
        let r = self.rank_mask(mask);
        let mut out = mask;
        for a in 0..self.n {
            if mask >> a & 1 == 0 && self.rank_mask(mask | 1 << a) == r {
                out |= 1 << a;
            }
        }
        out
    }

    /// Minimal flat containing `s`; same as the closure.
    pub fn join(&self, s: &Subset) -> Result<Subset> {
        self.closure(s)
    }

    /// The lattice of flats, ordered by (cardinality, bit value).
    pub fn flats(&self, budget: &Budget) -> Result<FlatLattice> {
        if self.n > budget.max_flats_ground {
            return Err(Error::SizeCap {
                required: crate::budget::pow_saturating(2, self.n as u32),
                cap: crate::budget::pow_saturating(2, budget.max_flats_ground as u32)
                    .min(u64::MAX as u128) as u64,
            });
        }
        self.memoize();
        let mut flats: Vec<u64> = (0..1u64 << self.n)
            .filter(|&mask| self.closure_mask(mask) == mask)
            .collect();
        flats.sort_by_key(|&f| (f.count_ones(), f));
        Ok(FlatLattice::new(self, flats))
    }
}

/// Checks rank axioms on an explicit table: normalization, unit rank on
/// singletons, unit increase, and submodularity.
fn validate_rank_table(n: usize, table: &[u8]) -> Result<()> {
    if table[0] != 0 {
        return Err(Error::InvalidParameters(
            "rank axiom violated: rk(empty) != 0".into(),
        ));
    }
    for a in 0..n {
        if table[1 << a] > 1 {
            return Err(Error::InvalidParameters(format!(
                "rank axiom violated: rk({{{a}}}) = {} not in {{0,1}}",
                table[1 << a]
            )));
        }
    }
    // Unit increase implies monotonicity.
    for mask in 0..table.len() {
        for a in 0..n {
            if mask >> a & 1 == 0 {
                let up = table[mask | 1 << a];
                if up < table[mask] || up > table[mask] + 1 {
                    return Err(Error::InvalidParameters(format!(
                        "rank axiom violated: rk grows by {} when adding element {a} to mask {mask:#b}",
                        up as i32 - table[mask] as i32
                    )));
                }
            }
        }
    }
    let full = table.len() - 1;
    let submodular_pair = |x: usize, y: usize| -> bool {
        (table[x & y] as usize) + (table[x | y] as usize)
            <= (table[x] as usize) + (table[y] as usize)
    };
    if n <= VALIDATE_EXHAUSTIVE_MAX {
        for x in 0..=full {
            for y in x..=full {
                if !submodular_pair(x, y) {
                    return Err(Error::InvalidParameters(format!(
                        "rank axiom violated: submodularity fails on masks {x:#b}, {y:#b}"
                    )));
                }
            }
        }
    } else {
        let mut state = 0x8524_61d9_0b3c_11e7u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let x = (next() as usize) & full;
            let y = (next() as usize) & full;
            if !submodular_pair(x, y) {
                return Err(Error::InvalidParameters(format!(
                    "rank axiom violated: submodularity fails on masks {x:#b}, {y:#b}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_basics() {
        let s = Subset::from_elements(5, [0, 3]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && !s.contains(1));
        assert_eq!(s.complement(), Subset::from_elements(5, [1, 2, 4]).unwrap());
        assert_eq!(s.to_string(), "{0,3}");
        assert!(s.is_subset_of(&Subset::full(5)));
        assert!(Subset::empty(5).is_subset_of(&s));
        assert!(Subset::from_elements(3, [7]).is_err());
    }

    #[test]
    fn ground_set_cap_is_sixty_three() {
        assert!(Matroid::uniform(2, 63).is_ok());
        assert!(Matroid::uniform(2, 64).is_err());
        let a = Matroid::uniform(2, 40).unwrap();
        let b = Matroid::uniform(2, 30).unwrap();
        assert!(a.direct_sum(&b).is_err());
    }

    #[test]
    fn out_of_range_elements_are_contract_violations() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert!(m.delete(3).is_err());
        assert!(m.is_loop(3).is_err());
        assert!(matches!(
            m.minor(
                &Subset::from_elements(3, [0]).unwrap(),
                &Subset::from_elements(3, [0]).unwrap()
            ),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn memoize_refuses_oversized_tables_gracefully() {
        let big = Matroid::uniform(3, 30).unwrap();
        assert!(!big.memoize());
        assert_eq!(big.rank_mask(0b111), 3); // still answers queries
        let small = Matroid::uniform(1, 4).unwrap();
        assert!(small.memoize());
        assert!(small.memoize()); // idempotent
    }
}
