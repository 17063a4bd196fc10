//! Coupled multicolorings, coupled multicommodity flows, their counting
//! oracles, and the polynomials that enumerate them.
//!
//! A coupled k-multicoloring assigns k vertex colorings; on every edge the
//! odd-indexed colorings agreeing forces the next even one to agree, and
//! for odd k the full odd agreement additionally forces the last coloring
//! to differ. Coupled k-multicommodity flows impose the analogous
//! zero-pattern coupling on k group-valued Kirchhoff flows. The counts are
//! polynomial in the palette sizes / group orders:
//!
//! * colorings: `(t_1...t_k)^c(G) · χ^k_{M(G)}(t_k, …, t_1)`: note the
//!   variable reversal,
//! * flows: `(-1)^(k|E|) Σ_chains Π (-1)^|B_i| t_i^(|B_i| - rk B_i)`
//!   `= (-1)^(k(|E|+rk G)) T^k_{M(G)}(0,…,0; 1-t_1,…,1-t_k)`: unreversed.
//!
//! The brute-force oracles here are the ground truth those identities are
//! tested against.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::budget::Budget;
use crate::chain::enumerate::{chain_sum, LevelWeights, Mode};
use crate::chain::{chain_characteristic, whitney_rank_poly, CharRoute};
use crate::error::{Error, Result};
use crate::graph::{AbelianGroup, Graph, Orientation};
use crate::matroid::Matroid;
use crate::poly::{MultiPoly, VarSet};
use crate::report::{Check, Report};

/// k vertex colorings with declared palette sizes; `colors[i][v] < palette[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    pub palette: Vec<u64>,
    pub colors: Vec<Vec<u64>>,
}

impl ColorAssignment {
    pub fn new(palette: Vec<u64>, colors: Vec<Vec<u64>>) -> Result<Self> {
        if palette.len() != colors.len() {
            return Err(Error::Contract(format!(
                "{} palettes but {} coloring functions",
                palette.len(),
                colors.len()
            )));
        }
        for (i, (t, f)) in palette.iter().zip(&colors).enumerate() {
            if let Some(&bad) = f.iter().find(|&&c| c >= *t) {
                return Err(Error::Contract(format!(
                    "color {bad} out of range for palette size {t} in function {i}"
                )));
            }
        }
        Ok(ColorAssignment { palette, colors })
    }
}

/// k edge flows into the given groups, one value per edge per commodity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub groups: Vec<AbelianGroup>,
    pub values: Vec<Vec<u64>>,
}

impl FlowAssignment {
    pub fn new(groups: Vec<AbelianGroup>, values: Vec<Vec<u64>>) -> Result<Self> {
        if groups.len() != values.len() {
            return Err(Error::Contract(format!(
                "{} groups but {} flow functions",
                groups.len(),
                values.len()
            )));
        }
        for (i, (g, f)) in groups.iter().zip(&values).enumerate() {
            if let Some(&bad) = f.iter().find(|&&v| v >= g.order()) {
                return Err(Error::Contract(format!(
                    "value {bad} out of range for group {g} in commodity {i}"
                )));
            }
        }
        Ok(FlowAssignment { groups, values })
    }
}

/// The coupling predicate on one edge, reading colors through `get(i, v)`.
fn edge_coloring_ok(k: usize, a: usize, b: usize, get: &impl Fn(usize, usize) -> u64) -> bool {
    let eq = |i: usize| get(i, a) == get(i, b);
    if k == 1 {
        return !eq(0);
    }
    // indices below are 1-based as in the implication lists
    let odd_prefix_eq = |m: usize| (0..m).all(|j| eq(2 * j));
    if k % 2 == 0 {
        for m in 1..=k / 2 {
            if odd_prefix_eq(m) && !eq(2 * m - 1) {
                return false;
            }
        }
    } else {
        let ell = (k - 1) / 2;
        for m in 1..=ell {
            if odd_prefix_eq(m) && !eq(2 * m - 1) {
                return false;
            }
        }
        // same hypothesis once more, negated conclusion on the last coloring
        if odd_prefix_eq(ell) && eq(k - 1) {
            return false;
        }
    }
    true
}

fn coloring_ok(g: &Graph, k: usize, get: &impl Fn(usize, usize) -> u64) -> bool {
    g.edges
        .iter()
        .all(|&(a, b)| edge_coloring_ok(k, a, b, get))
}

/// Is `ca` a coupled k-multicoloring of the simple graph `g`?
pub fn is_coupled_coloring(g: &Graph, ca: &ColorAssignment) -> Result<bool> {
    if !g.is_simple() {
        return Err(Error::Hypothesis(
            "coupled multicolorings are defined on simple graphs".into(),
        ));
    }
    let k = ca.palette.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    for (i, f) in ca.colors.iter().enumerate() {
        if f.len() != g.vertices {
            return Err(Error::Contract(format!(
                "coloring function {i} has {} entries for {} vertices",
                f.len(),
                g.vertices
            )));
        }
    }
    Ok(coloring_ok(g, k, &|i, v| ca.colors[i][v]))
}

fn counting_space(bases: &[u64], copies: u32) -> u128 {
    bases
        .iter()
        .fold(1u128, |acc, &b| {
            acc.saturating_mul(crate::budget::pow_saturating(b as u128, copies))
        })
}

/// Exhaustive count of coupled k-multicolorings with the given palette
/// sizes. The whole `Π t_i^(|V|)` assignment space is enumerated.
pub fn count_coupled_colorings(g: &Graph, palette: &[u64], budget: &Budget) -> Result<u64> {
    count_colorings_impl(g, palette, budget, Mode::Auto)
}

pub fn count_coupled_colorings_seq(g: &Graph, palette: &[u64], budget: &Budget) -> Result<u64> {
    count_colorings_impl(g, palette, budget, Mode::Sequential)
}

fn count_colorings_impl(g: &Graph, palette: &[u64], budget: &Budget, mode: Mode) -> Result<u64> {
    if !g.is_simple() {
        return Err(Error::Hypothesis(
            "coupled multicolorings are defined on simple graphs".into(),
        ));
    }
    let k = palette.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    if palette.contains(&0) {
        return Err(Error::InvalidParameters("palette sizes must be positive".into()));
    }
    let n = g.vertices;
    let total = counting_space(palette, n as u32);
    budget.check(total)?;
    let total = total as u64;

    // digit (i, v) has radix palette[i], commodity-major
    let decode_check = |index: u64, digits: &mut [u64]| -> bool {
        let mut rem = index;
        for i in 0..k {
            let t = palette[i];
            for v in 0..n {
                digits[i * n + v] = rem % t;
                rem /= t;
            }
        }
        coloring_ok(g, k, &|i, v| digits[i * n + v])
    };
    Ok(count_space(total, k * n, &decode_check, mode))
}

/// Runs `check` over `0..total`, counting hits. The decode buffer is
/// reused per worker; partitioning cannot change the total.
fn count_space(
    total: u64,
    digits: usize,
    check: &(impl Fn(u64, &mut [u64]) -> bool + Sync),
    mode: Mode,
) -> u64 {
    #[cfg(feature = "parallel")]
    {
        if mode == Mode::Auto {
            use rayon::prelude::*;
            return (0..total)
                .into_par_iter()
                .fold(
                    || (0u64, vec![0u64; digits]),
                    |(mut acc, mut buf), i| {
                        if check(i, &mut buf) {
                            acc += 1;
                        }
                        (acc, buf)
                    },
                )
                .map(|(acc, _)| acc)
                .sum();
        }
    }
    let _ = mode;
    let mut buf = vec![0u64; digits];
    (0..total).filter(|&i| check(i, &mut buf)).count() as u64
}

/// `(t_1...t_k)^c(G) χ^k_{M(G)}(t_k, …, t_1)`: the polynomial that counts
/// coupled k-multicolorings at positive integer palette sizes. The
/// variable reversal is load-bearing.
pub fn coupled_chromatic_poly(g: &Graph, k: usize, budget: &Budget) -> Result<MultiPoly> {
    if !g.is_simple() {
        return Err(Error::Hypothesis(
            "coupled multicolorings are defined on simple graphs".into(),
        ));
    }
    let m = Matroid::graphic(g.clone());
    let chi = chain_characteristic(&m, k, CharRoute::Definition, budget)?;
    let reversed = chi.permute_positions(&(0..k).map(|i| k - 1 - i).collect::<Vec<_>>())?;
    let c = g.num_components() as u16;
    let shift = MultiPoly::monomial(VarSet::indexed("t", k), vec![c; k])?;
    Ok(reversed.mul(&shift))
}

/// The coupling predicate on one directed edge for flows; `get(i, e)` is
/// commodity `i`'s value on edge `e`, `0` the group identity.
fn edge_flow_ok(k: usize, e: usize, get: &impl Fn(usize, usize) -> u64) -> bool {
    let zero = |i: usize| get(i, e) == 0;
    if k == 1 {
        return !zero(0);
    }
    let odd_prefix_zero = |m: usize| (0..m).all(|j| zero(2 * j));
    if k % 2 == 0 {
        for m in 1..=k / 2 {
            if odd_prefix_zero(m) && !zero(2 * m - 1) {
                return false;
            }
        }
    } else {
        let m = (k - 1) / 2;
        for j in 1..m {
            if odd_prefix_zero(j) && !zero(2 * j - 1) {
                return false;
            }
        }
        // bundled conclusion: f_{k-1} = 0 and f_k != 0
        if odd_prefix_zero(m) && !(zero(k - 2) && !zero(k - 1)) {
            return false;
        }
    }
    true
}

fn flows_ok(num_edges: usize, k: usize, get: &impl Fn(usize, usize) -> u64) -> bool {
    (0..num_edges).all(|e| edge_flow_ok(k, e, get))
}

fn kirchhoff_net(g: &Graph, o: &Orientation, group: &AbelianGroup, values: &[u64]) -> Vec<u64> {
    let mut net = vec![0u64; g.vertices];
    for (e, &(tail, head)) in o.arcs.iter().enumerate() {
        net[head] = group.add(net[head], values[e]);
        net[tail] = group.add(net[tail], group.neg(values[e]));
    }
    net
}

/// Is `fa` a coupled k-multicommodity flow on `(g, o)`? Kirchhoff's first
/// law is a precondition of the type; violating it is a contract error,
/// not a `false`.
pub fn is_coupled_flow(g: &Graph, o: &Orientation, fa: &FlowAssignment) -> Result<bool> {
    if !o.matches(g) {
        return Err(Error::Contract("orientation does not match the graph".into()));
    }
    let k = fa.groups.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    for (i, f) in fa.values.iter().enumerate() {
        if f.len() != g.num_edges() {
            return Err(Error::Contract(format!(
                "flow {i} has {} values for {} edges",
                f.len(),
                g.num_edges()
            )));
        }
        let net = kirchhoff_net(g, o, &fa.groups[i], f);
        if let Some(v) = net.iter().position(|&x| x != 0) {
            return Err(Error::Contract(format!(
                "Kirchhoff's first law fails at vertex {v} for commodity {i}"
            )));
        }
    }
    Ok(flows_ok(g.num_edges(), k, &|i, e| fa.values[i][e]))
}

/// Spanning-forest structure for solving tree-edge values from free
/// co-tree assignments.
struct ForestParam {
    /// Edge indices outside the forest, in increasing order.
    cotree: Vec<usize>,
    /// `(vertex, parent edge)` in children-before-parents order.
    solve_order: Vec<(usize, usize)>,
}

fn forest_param(g: &Graph) -> ForestParam {
    let n = g.vertices;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut in_forest = vec![false; g.num_edges()];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge)
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru != rv {
            parent[ru] = rv;
            in_forest[e] = true;
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let cotree = (0..g.num_edges()).filter(|&e| !in_forest[e]).collect();

    // Rooted DFS over the forest; reversing preorder puts children first.
    let mut seen = vec![false; n];
    let mut preorder: Vec<(usize, usize)> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    preorder.push((w, e));
                    stack.push(w);
                }
            }
        }
    }
    preorder.reverse();
    ForestParam {
        cotree,
        solve_order: preorder,
    }
}

/// Counts coupled k-multicommodity flows under the default min-to-max
/// orientation. Free values on co-tree edges are enumerated; tree-edge
/// values are forced by Kirchhoff's law, so the space has
/// `Π |A_i|^(|E| - rk G)` points.
pub fn count_coupled_flows(g: &Graph, groups: &[AbelianGroup], budget: &Budget) -> Result<u64> {
    count_flows_impl(g, &g.default_orientation(), groups, budget, Mode::Auto)
}

pub fn count_coupled_flows_seq(g: &Graph, groups: &[AbelianGroup], budget: &Budget) -> Result<u64> {
    count_flows_impl(g, &g.default_orientation(), groups, budget, Mode::Sequential)
}

/// As [`count_coupled_flows`] with an explicit orientation.
pub fn count_coupled_flows_oriented(
    g: &Graph,
    o: &Orientation,
    groups: &[AbelianGroup],
    budget: &Budget,
) -> Result<u64> {
    count_flows_impl(g, o, groups, budget, Mode::Auto)
}

fn count_flows_impl(
    g: &Graph,
    o: &Orientation,
    groups: &[AbelianGroup],
    budget: &Budget,
    mode: Mode,
) -> Result<u64> {
    if !o.matches(g) {
        return Err(Error::Contract("orientation does not match the graph".into()));
    }
    let k = groups.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let fp = forest_param(g);
    let c = fp.cotree.len() as u32;
    let orders: Vec<u64> = groups.iter().map(|a| a.order()).collect();
    let total = counting_space(&orders, c);
    budget.check(total)?;
    let total = total as u64;
    let ne = g.num_edges();
    let nv = g.vertices;

    let decode_check = |index: u64, buf: &mut [u64]| -> bool {
        let (values, net) = buf.split_at_mut(k * ne);
        values.iter_mut().for_each(|v| *v = 0);
        let mut rem = index;
        for i in 0..k {
            let ord = orders[i];
            for &e in &fp.cotree {
                values[i * ne + e] = rem % ord;
                rem /= ord;
            }
        }
        // Solve tree edges bottom-up: the parent edge of v balances v.
        for i in 0..k {
            let group = &groups[i];
            net.iter_mut().for_each(|v| *v = 0);
            for &e in &fp.cotree {
                let (tail, head) = o.arcs[e];
                let val = values[i * ne + e];
                net[head] = group.add(net[head], val);
                net[tail] = group.add(net[tail], group.neg(val));
            }
            for &(v, e) in &fp.solve_order {
                let (tail, head) = o.arcs[e];
                let val = if tail == v {
                    net[v]
                } else {
                    group.neg(net[v])
                };
                values[i * ne + e] = val;
                net[head] = group.add(net[head], val);
                net[tail] = group.add(net[tail], group.neg(val));
            }
        }
        flows_ok(ne, k, &|i, e| values[i * ne + e])
    };
    Ok(count_space(total, k * ne + nv, &decode_check, mode))
}

/// All-functions filter enumerator: every `Π |A_i|^(|E|)` tuple of edge
/// functions, filtered by Kirchhoff and the coupling predicate. Exists to
/// cross-check the spanning-forest enumerator on small graphs.
pub fn count_coupled_flows_naive(
    g: &Graph,
    o: &Orientation,
    groups: &[AbelianGroup],
    budget: &Budget,
) -> Result<u64> {
    if !o.matches(g) {
        return Err(Error::Contract("orientation does not match the graph".into()));
    }
    let k = groups.len();
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let ne = g.num_edges();
    let orders: Vec<u64> = groups.iter().map(|a| a.order()).collect();
    let total = counting_space(&orders, ne as u32);
    budget.check(total)?;

    let mut count = 0u64;
    let mut values = vec![0u64; k * ne];
    for index in 0..total as u64 {
        let mut rem = index;
        for i in 0..k {
            for e in 0..ne {
                values[i * ne + e] = rem % orders[i];
                rem /= orders[i];
            }
        }
        let kirchhoff = (0..k).all(|i| {
            kirchhoff_net(g, o, &groups[i], &values[i * ne..(i + 1) * ne])
                .iter()
                .all(|&x| x == 0)
        });
        if kirchhoff && flows_ok(ne, k, &|i, e| values[i * ne + e]) {
            count += 1;
        }
    }
    Ok(count)
}

struct NullityWeights<'a> {
    m: &'a Matroid,
    slots_len: usize,
}

impl LevelWeights for NullityWeights<'_> {
    fn slots(&self) -> usize {
        self.slots_len
    }

    #[inline]
    fn apply(&self, level: usize, mask: u64, exps: &mut [u16]) -> i64 {
        let rk = self.m.rank_mask(mask) as u16;
        exps[level] = mask.count_ones() as u16 - rk;
        if mask.count_ones() & 1 == 1 {
            -1
        } else {
            1
        }
    }
}

/// `(-1)^(k|E|) Σ_{(B_i)} Π (-1)^|B_i| t_i^(|B_i| - rk B_i)` over edge-set
/// chains.
pub fn flow_poly_via_chain(g: &Graph, k: usize, budget: &Budget) -> Result<MultiPoly> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let m = Matroid::graphic(g.clone());
    m.memoize();
    let w = NullityWeights { m: &m, slots_len: k };
    let acc = chain_sum(&w, m.ground().bits(), k, budget, Mode::Auto)?;
    let poly = MultiPoly::from_int_terms(VarSet::indexed("t", k), acc.into_terms())?;
    let sign = if (k * g.num_edges()) % 2 == 1 { -1 } else { 1 };
    Ok(poly.scale_int(sign))
}

/// `(-1)^(k(|E| + rk G)) T^k_{M(G)}(0,…,0; 1-t_1,…,1-t_k)`, computed as a
/// Whitney-polynomial substitution `W^k((-1); (-t_i))`.
pub fn flow_poly_via_tutte(g: &Graph, k: usize, budget: &Budget) -> Result<MultiPoly> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let m = Matroid::graphic(g.clone());
    let w = whitney_rank_poly(&m, k, budget)?;
    let tv = VarSet::indexed("t", k);
    let mut bindings: Vec<(String, MultiPoly)> = Vec::new();
    for i in 1..=k {
        bindings.push((format!("a{i}"), MultiPoly::int(tv.clone(), -1)));
    }
    for i in 1..=k {
        let neg_t = MultiPoly::var(tv.clone(), &format!("t{i}"))?.neg();
        bindings.push((format!("b{i}"), neg_t));
    }
    let bound: Vec<(&str, MultiPoly)> =
        bindings.iter().map(|(n, p)| (n.as_str(), p.clone())).collect();
    let evaluated = w.substitute(&bound)?;
    let sign = if (k * (g.num_edges() + m.rank_full())) % 2 == 1 {
        -1
    } else {
        1
    };
    Ok(evaluated.scale_int(sign))
}

/// Coupled k-multicommodity flow polynomial in `t1..tk` (group orders,
/// unreversed). Both displayed routes are computed; disagreement is a
/// cross-check error.
pub fn coupled_flow_poly(g: &Graph, k: usize, budget: &Budget) -> Result<MultiPoly> {
    let by_chain = flow_poly_via_chain(g, k, budget)?;
    let by_tutte = flow_poly_via_tutte(g, k, budget)?;
    if by_chain != by_tutte {
        return Err(Error::CrossCheck {
            context: format!("coupled flow polynomial (k = {k})"),
            left: by_chain.to_string(),
            right: by_tutte.to_string(),
        });
    }
    Ok(by_chain)
}

fn rat(i: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

fn eval_at_ints(poly: &MultiPoly, values: &[u64]) -> Result<BigRational> {
    let point: Vec<(String, BigRational)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (format!("t{}", i + 1), rat(v)))
        .collect();
    let point_ref: Vec<(&str, BigRational)> =
        point.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
    poly.evaluate(&point_ref)
}

fn tuples(options: &[u64], k: usize) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |&o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect();
    }
    out
}

/// Oracle agreement for colorings: the exhaustive count equals the
/// polynomial evaluated at every palette with entries up to 3.
pub fn verify_coloring_oracle(g: &Graph, k: usize, budget: &Budget) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut report = Report::new();
    let poly = coupled_chromatic_poly(g, k, budget)?;
    let mut visits = 0u64;
    let mut failure = None;
    let palettes = tuples(&[1, 2, 3], k);
    for palette in &palettes {
        let counted = count_coupled_colorings(g, palette, budget)?;
        visits += counting_space(palette, g.vertices as u32) as u64;
        let evaluated = eval_at_ints(&poly, palette)?;
        if evaluated != rat(counted) {
            failure = Some(format!(
                "palette {palette:?}: oracle counts {counted}, polynomial gives {evaluated}"
            ));
            break;
        }
    }
    match failure {
        None => report.push(Check::pass(
            "coloring_oracle",
            format!("count = polynomial on {} palettes", palettes.len()),
        )),
        Some(d) => report.push(Check::fail("coloring_oracle", d)),
    }
    report.visits = visits;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Oracle agreement for flows: both polynomial routes, count agreement on
/// group tuples of order up to 3, Z4 vs Z2xZ2, orientation independence,
/// and the naive filter on small graphs.
pub fn verify_flow_oracle(g: &Graph, k: usize, budget: &Budget) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut report = Report::new();
    let by_chain = flow_poly_via_chain(g, k, budget)?;
    let by_tutte = flow_poly_via_tutte(g, k, budget)?;
    report.equal_polys(
        "flow_routes",
        format!("Flow^{k} by chain formula vs Tutte evaluation"),
        &by_chain,
        &by_tutte,
    );

    let mut visits = 0u64;
    let mut failure = None;
    let order_tuples = tuples(&[2, 3], k);
    for orders in &order_tuples {
        let groups: Vec<AbelianGroup> = orders
            .iter()
            .map(|&o| AbelianGroup::cyclic(o as u32).expect("positive order"))
            .collect();
        let counted = count_coupled_flows(g, &groups, budget)?;
        visits += 1;
        let evaluated = eval_at_ints(&by_chain, orders)?;
        if evaluated != rat(counted) {
            failure = Some(format!(
                "groups {orders:?}: oracle counts {counted}, polynomial gives {evaluated}"
            ));
            break;
        }
    }
    match failure {
        None => report.push(Check::pass(
            "flow_oracle",
            format!("count = polynomial on {} group tuples", order_tuples.len()),
        )),
        Some(d) => report.push(Check::fail("flow_oracle", d)),
    }

    // Z4 vs Z2xZ2 in the first slot: only the order may matter.
    let mut groups_a = vec![AbelianGroup::cyclic(4)?];
    let mut groups_b = vec![AbelianGroup::product(vec![2, 2])?];
    for _ in 1..k {
        groups_a.push(AbelianGroup::cyclic(2)?);
        groups_b.push(AbelianGroup::cyclic(2)?);
    }
    let ca = count_coupled_flows(g, &groups_a, budget)?;
    let cb = count_coupled_flows(g, &groups_b, budget)?;
    if ca == cb {
        report.push(Check::pass(
            "group_structure_independence",
            format!("Z4 and Z2xZ2 both count {ca}"),
        ));
    } else {
        report.push(Check::fail(
            "group_structure_independence",
            format!("Z4 counts {ca} but Z2xZ2 counts {cb}"),
        ));
    }

    // 20 deterministic re-orientations.
    let groups: Vec<AbelianGroup> = (0..k)
        .map(|i| AbelianGroup::cyclic(if i == 0 { 3 } else { 2 }))
        .collect::<Result<_>>()?;
    let reference = count_coupled_flows(g, &groups, budget)?;
    let mut orientation_ok = true;
    for seed in 0..20u64 {
        let o = g.orientation_seeded(seed);
        let c = count_coupled_flows_oriented(g, &o, &groups, budget)?;
        if c != reference {
            report.push(Check::fail(
                "orientation_independence",
                format!("orientation seed {seed} counts {c}, default counts {reference}"),
            ));
            orientation_ok = false;
            break;
        }
    }
    if orientation_ok {
        report.push(Check::pass(
            "orientation_independence",
            format!("20 re-orientations all count {reference}"),
        ));
    }

    if g.num_edges() <= 5 {
        let o = g.default_orientation();
        let naive = count_coupled_flows_naive(g, &o, &groups, budget)?;
        if naive == reference {
            report.push(Check::pass(
                "forest_vs_naive",
                format!("both enumerators count {reference}"),
            ));
        } else {
            report.push(Check::fail(
                "forest_vs_naive",
                format!("forest enumerator counts {reference}, naive filter counts {naive}"),
            ));
        }
    } else {
        report.push(Check::skipped(
            "forest_vs_naive",
            "naive filter only runs on graphs with at most 5 edges".to_string(),
        ));
    }

    report.visits = visits;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}
