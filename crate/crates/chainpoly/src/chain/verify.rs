//! Identity verifiers: recursion, duality, multiplicativity, the rank-one
//! reduction of `T^{k+1}` to `T^k`, sign properties, and the rank axioms.
//!
//! Every verifier computes both sides of an identity through independent
//! code paths and records the outcome in a [`Report`]; failed polynomial
//! identities carry both sides in canonical text form.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::budget::Budget;
use crate::chain::{chain_tutte, chain_visits, mobius, split_impl, CharRoute, Mode};
use crate::error::{Error, Result};
use crate::matroid::{ElementId, Matroid, Subset};
use crate::poly::{MultiPoly, VarSet};
use crate::report::{Check, Report};

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// `T^k_M = Σ_{j=0..k} sT^{k,j}_{M,a}` for an element that is neither a
/// loop nor a coloop.
pub fn verify_recursion(m: &Matroid, a: ElementId, k: usize, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let lhs = chain_tutte(m, k, budget)?;
    let mut rhs = MultiPoly::zero(VarSet::paired("x", "y", k));
    for j in 0..=k {
        rhs = rhs.add(&split_impl(m, a, k, j, budget, Mode::Auto)?);
    }
    report.equal_polys(
        "recursion",
        format!("T^{k} equals the split-sum over element {a}"),
        &lhs,
        &rhs,
    );
    report.visits = chain_visits(m, k)
        .saturating_mul(k as u128 + 2)
        .min(u64::MAX as u128) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Route equality: the signed chain sum, the `T^k` evaluation and the
/// Möbius decomposition produce the same `χ^k`.
pub fn verify_routes(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let by_def = super::chain_characteristic(m, k, CharRoute::Definition, budget)?;
    let by_tutte = super::chain_characteristic(m, k, CharRoute::TutteEval, budget)?;
    report.equal_polys(
        "route_definition_vs_tutte",
        format!("chi^{k} by chain sum vs Tutte evaluation"),
        &by_def,
        &by_tutte,
    );
    match super::chain_characteristic(m, k, CharRoute::Mobius, budget) {
        Ok(by_mobius) => report.equal_polys(
            "route_definition_vs_mobius",
            format!("chi^{k} by chain sum vs Mobius decomposition"),
            &by_def,
            &by_mobius,
        ),
        Err(Error::SizeCap { required, cap }) => report.push(Check::skipped(
            "route_definition_vs_mobius",
            format!("lattice route over budget ({required} > {cap})"),
        )),
        Err(e) => return Err(e),
    }
    report.visits = chain_visits(m, k).saturating_mul(2).min(u64::MAX as u128) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// `T^k_{M*}(x_1..x_k; y_1..y_k) = T^k_M(y_k..y_1; x_k..x_1)`.
pub fn verify_duality(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let lhs = chain_tutte(&m.dual(), k, budget)?;
    let base = chain_tutte(m, k, budget)?;
    // position of x_i goes to y_{k+1-i}, position of y_i to x_{k+1-i}
    let mut perm = vec![0usize; 2 * k];
    for i in 1..=k {
        perm[i - 1] = 2 * k - i;
        perm[k + i - 1] = k - i;
    }
    let rhs = base.permute_positions(&perm)?;
    report.equal_polys(
        "duality",
        format!("T^{k} of the dual vs variable-reversed T^{k}"),
        &lhs,
        &rhs,
    );
    report.visits = chain_visits(m, k).saturating_mul(2).min(u64::MAX as u128) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Multiplicativity over direct sums, for `T^k` and `χ^k`.
pub fn verify_product(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let double = m.direct_sum(m)?;
    let t_sum = chain_tutte(&double, k, budget)?;
    let t = chain_tutte(m, k, budget)?;
    report.equal_polys(
        "product_tutte",
        format!("T^{k} of M (+) M vs squared T^{k}"),
        &t_sum,
        &t.mul(&t),
    );
    let chi_sum = super::chain_characteristic(&double, k, CharRoute::Definition, budget)?;
    let chi = super::chain_characteristic(m, k, CharRoute::Definition, budget)?;
    report.equal_polys(
        "product_char",
        format!("chi^{k} of M (+) M vs squared chi^{k}"),
        &chi_sum,
        &chi.mul(&chi),
    );
    report.visits = chain_visits(&double, k).saturating_mul(2).min(u64::MAX as u128) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Rank-one reduction:
/// `T^{k+1}(2, 2x_1 - 1, x_2..x_k; 2, (y_1 + 1)/2, y_2..y_k)
///  = 2^rk(M) T^k(x_1..x_k; y_1..y_k)`,
/// certified by exact evaluation on an integer grid of `(degree + 1)`
/// points per variable, which pins both sides as polynomials.
pub fn verify_lemma21(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let big = chain_tutte(m, k + 1, budget)?;
    let small = chain_tutte(m, k, budget)?;
    let scale = BigRational::from_integer(BigInt::from(2).pow(m.rank_full() as u32));
    let rhs_poly = small.scale(&scale);

    // Degree bound per free variable: x_i feeds slot x_{i+1} of T^{k+1}.
    let mut degs: Vec<u16> = Vec::with_capacity(2 * k);
    for i in 1..=k {
        let lhs_d = big.degree_in(&format!("x{}", i + 1))?;
        let rhs_d = rhs_poly.degree_in(&format!("x{i}"))?;
        degs.push(lhs_d.max(rhs_d));
    }
    for i in 1..=k {
        let lhs_d = big.degree_in(&format!("y{}", i + 1))?;
        let rhs_d = rhs_poly.degree_in(&format!("y{i}"))?;
        degs.push(lhs_d.max(rhs_d));
    }
    let points: u128 = degs.iter().map(|&d| d as u128 + 1).product();
    let work = points.saturating_mul((big.num_terms() + small.num_terms()) as u128);
    budget.check(work)?;

    let names_small: Vec<String> = (1..=k)
        .map(|i| format!("x{i}"))
        .chain((1..=k).map(|i| format!("y{i}")))
        .collect();
    let names_big: Vec<String> = (1..=k + 1)
        .map(|i| format!("x{i}"))
        .chain((1..=k + 1).map(|i| format!("y{i}")))
        .collect();

    let eval_at = |index: u128| -> Result<Option<String>> {
        // decode the grid point
        let mut rem = index;
        let mut coords: Vec<BigRational> = Vec::with_capacity(2 * k);
        for &d in &degs {
            let base = d as u128 + 1;
            coords.push(rat((rem % base) as i64));
            rem /= base;
        }
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut lhs_point: Vec<(&str, BigRational)> = Vec::with_capacity(2 * (k + 1));
        lhs_point.push((&names_big[0], rat(2)));
        lhs_point.push((&names_big[k + 1], rat(2)));
        // x_{i+1} <- 2 x_i - 1, then pass-through; y_2 <- (y_1 + 1) / 2
        for i in 1..=k {
            let v = if i == 1 {
                coords[0].clone() * rat(2) - BigRational::one()
            } else {
                coords[i - 1].clone()
            };
            lhs_point.push((&names_big[i], v));
            let w = if i == 1 {
                (coords[k].clone() + BigRational::one()) * half.clone()
            } else {
                coords[k + i - 1].clone()
            };
            lhs_point.push((&names_big[k + 1 + i], w));
        }
        let rhs_point: Vec<(&str, BigRational)> = names_small
            .iter()
            .map(|n| n.as_str())
            .zip(coords.iter().cloned())
            .collect();
        let lhs_v = big.evaluate(&lhs_point)?;
        let rhs_v = rhs_poly.evaluate(&rhs_point)?;
        if lhs_v != rhs_v {
            let coord_txt: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            Ok(Some(format!(
                "mismatch at ({}): {lhs_v} vs {rhs_v}",
                coord_txt.join(",")
            )))
        } else {
            Ok(None)
        }
    };

    let mismatch = grid_scan(points, &eval_at)?;
    match mismatch {
        None => report.push(Check::pass(
            "lemma21",
            format!(
                "rank-one reduction of T^{} to T^{k} certified on {points} grid points",
                k + 1
            ),
        )),
        Some(detail) => report.push(Check::fail("lemma21", detail)),
    }
    report.visits = points.min(u64::MAX as u128) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(feature = "parallel")]
fn grid_scan(
    points: u128,
    eval_at: &(impl Fn(u128) -> Result<Option<String>> + Sync),
) -> Result<Option<String>> {
    use rayon::prelude::*;
    (0..points as u64)
        .into_par_iter()
        .map(|i| eval_at(i as u128))
        .find_map_first(|r| match r {
            Ok(None) => None,
            Ok(Some(d)) => Some(Ok(Some(d))),
            Err(e) => Some(Err(e)),
        })
        .unwrap_or(Ok(None))
}

#[cfg(not(feature = "parallel"))]
fn grid_scan(
    points: u128,
    eval_at: &(impl Fn(u128) -> Result<Option<String>> + Sync),
) -> Result<Option<String>> {
    for i in 0..points {
        if let Some(d) = eval_at(i)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Duality, multiplicativity, and the rank-one reduction in one suite.
pub fn verify_identities(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let mut report = verify_duality(m, k, budget)?;
    report.merge(verify_product(m, k, budget)?);
    report.merge(verify_lemma21(m, k, budget)?);
    Ok(report)
}

/// Sign properties on a simple matroid: every `χ^k` coefficient of total
/// degree `d` has sign `(-1)^(k rk M - d)`, and `sgn μ^k(X_1..X_k) =
/// Π (-1)^rk(X_i)` on every flat chain.
pub fn verify_sign_alternation(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    if !m.is_simple() {
        return Err(Error::Hypothesis(
            "sign properties require a simple matroid".into(),
        ));
    }
    let start = Instant::now();
    let mut report = Report::new();

    let chi = super::chain_characteristic(m, k, CharRoute::Definition, budget)?;
    let parity = (k * m.rank_full()) % 2;
    let mut bad = None;
    for (exps, coef) in chi.terms() {
        let d: usize = exps.iter().map(|&e| e as usize).sum();
        let expect_negative = (parity + d) % 2 == 1;
        if coef.is_negative() != expect_negative {
            bad = Some(format!(
                "coefficient {coef} at degree {d} breaks the alternation"
            ));
            break;
        }
    }
    match bad {
        None => report.push(Check::pass(
            "char_sign_alternation",
            format!(
                "{} coefficients of chi^{k} alternate by total degree",
                chi.num_terms()
            ),
        )),
        Some(detail) => report.push(Check::fail("char_sign_alternation", detail)),
    }

    let lat = m.flats(budget)?;
    let mu = lat.mobius(budget)?;
    let mut work = mobius::WorkCounter::new(budget);
    let mut chains_checked = 0u64;
    let mut chain: Vec<usize> = Vec::with_capacity(k);
    let mut failure: Option<String> = None;

    fn walk(
        lat: &crate::matroid::FlatLattice,
        mu: &[i64],
        k: usize,
        chain: &mut Vec<usize>,
        checked: &mut u64,
        failure: &mut Option<String>,
        work: &mut mobius::WorkCounter,
    ) -> Result<()> {
        if failure.is_some() {
            return Ok(());
        }
        if chain.len() == k {
            let v = mobius::mu_chain_value(lat, mu, chain, work)?;
            *checked += 1;
            let rank_sum: usize = chain.iter().map(|&x| lat.rank_of(x)).sum();
            let expect_negative = rank_sum % 2 == 1;
            if v == 0 || (v < 0) != expect_negative {
                let flats: Vec<String> = chain
                    .iter()
                    .map(|&x| lat.flat(x).to_string())
                    .collect();
                *failure = Some(format!(
                    "mu^{k}({}) = {v}, expected sign (-1)^{rank_sum}",
                    flats.join(" <= ")
                ));
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
            walk(lat, mu, k, chain, checked, failure, work)?;
            chain.pop();
        }
        Ok(())
    }
    walk(&lat, mu, k, &mut chain, &mut chains_checked, &mut failure, &mut work)?;
    match failure {
        None => report.push(Check::pass(
            "mobius_sign",
            format!("mu^{k} sign formula holds on {chains_checked} flat chains"),
        )),
        Some(detail) => report.push(Check::fail("mobius_sign", detail)),
    }
    report.visits = chain_visits(m, k).min(u64::MAX as u128) as u64 + work.used();
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Rank axioms, dual involution, closure laws and minor commutation,
/// exhaustively on small ground sets and by deterministic sampling above.
pub fn verify_axioms(m: &Matroid, budget: &Budget) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new();
    let n = m.ground_size();
    m.memoize();
    let full = m.ground().bits();
    let exhaustive = n <= 10;
    if exhaustive {
        budget.check(crate::budget::pow_saturating(4, n as u32))?;
    }

    let mut rng_state = 0x5851_f42d_4c95_7f2du64;
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    if exhaustive {
        for x in 0..=full {
            for y in x..=full {
                pairs.push((x, y));
            }
        }
    } else {
        for _ in 0..1000 {
            pairs.push((next() & full, next() & full));
        }
    }

    let mut violations = Vec::new();
    if m.rank_mask(0) != 0 {
        violations.push("rk(empty) != 0".to_string());
    }
    for a in 0..n {
        if m.rank_mask(1 << a) > 1 {
            violations.push(format!("rk({{{a}}}) > 1"));
        }
    }
    for &(x, y) in &pairs {
        let rx = m.rank_mask(x);
        let ry = m.rank_mask(y);
        if x & !y == 0 && rx > ry {
            violations.push(format!("monotonicity fails on {x:#b} <= {y:#b}"));
            break;
        }
        if m.rank_mask(x & y) + m.rank_mask(x | y) > rx + ry {
            violations.push(format!("submodularity fails on {x:#b}, {y:#b}"));
            break;
        }
    }
    let pair_count = pairs.len();
    match violations.first() {
        None => report.push(Check::pass(
            "rank_axioms",
            format!(
                "{} subset pairs checked ({})",
                pair_count,
                if exhaustive { "exhaustive" } else { "sampled" }
            ),
        )),
        Some(v) => report.push(Check::fail("rank_axioms", v.clone())),
    }

    // Dual involution.
    let dd = m.dual().dual();
    let mut ok = true;
    let subsets: Vec<u64> = if exhaustive {
        (0..=full).collect()
    } else {
        (0..2000).map(|_| next() & full).collect()
    };
    for &s in &subsets {
        if dd.rank_mask(s) != m.rank_mask(s) {
            report.push(Check::fail(
                "dual_involution",
                format!("rank of M** differs from M on {s:#b}"),
            ));
            ok = false;
            break;
        }
    }
    if ok {
        report.push(Check::pass(
            "dual_involution",
            format!("M** rank-agrees with M on {} subsets", subsets.len()),
        ));
    }

    // Closure: extensive, idempotent, monotone.
    let mut closure_fail = None;
    for &s in &subsets {
        let c = m.closure_mask(s);
        if s & !c != 0 {
            closure_fail = Some(format!("closure not extensive on {s:#b}"));
            break;
        }
        if m.closure_mask(c) != c {
            closure_fail = Some(format!("closure not idempotent on {s:#b}"));
            break;
        }
    }
    if closure_fail.is_none() {
        for &(x, y) in &pairs {
            if x & !y == 0 {
                let cx = m.closure_mask(x);
                let cy = m.closure_mask(y);
                if cx & !cy != 0 {
                    closure_fail = Some(format!("closure not monotone on {x:#b} <= {y:#b}"));
                    break;
                }
            }
        }
    }
    match closure_fail {
        None => report.push(Check::pass(
            "closure_laws",
            "extensive, idempotent, monotone".to_string(),
        )),
        Some(v) => report.push(Check::fail("closure_laws", v)),
    }

    // Minor commutation: (M/a)\b vs (M\b)/a, compared on every subset.
    if n >= 2 {
        let mut fail = None;
        'outer: for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                // relabelled position of the survivor
                let b_after_a = if b > a { b - 1 } else { b };
                let a_after_b = if a > b { a - 1 } else { a };
                let left = m.contract(a)?.delete(b_after_a)?;
                let right = m.delete(b)?.contract(a_after_b)?;
                let small = Subset::full(n - 2).bits();
                for s in 0..=small {
                    if left.rank_mask(s) != right.rank_mask(s) {
                        fail = Some(format!(
                            "contract({a}) then delete({b}) disagrees with the reverse order"
                        ));
                        break 'outer;
                    }
                }
            }
        }
        match fail {
            None => report.push(Check::pass(
                "minor_commutation",
                "delete/contract commute on all element pairs".to_string(),
            )),
            Some(v) => report.push(Check::fail("minor_commutation", v)),
        }
    } else {
        report.push(Check::skipped(
            "minor_commutation",
            "needs at least two elements".to_string(),
        ));
    }

    report.visits = (pair_count + subsets.len()) as u64;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Everything applicable to a bare matroid. Sign checks are skipped (not
/// failed) when the matroid is not simple; the recursion runs on the first
/// element that is neither loop nor coloop.
pub fn verify_all_matroid(m: &Matroid, k: usize, budget: &Budget) -> Result<Report> {
    let mut report = verify_axioms(m, budget)?;
    report.merge(verify_routes(m, k, budget)?);
    report.merge(verify_identities(m, k, budget)?);
    let candidate = (0..m.ground_size())
        .find(|&a| !(m.is_loop(a).unwrap_or(true) || m.is_coloop(a).unwrap_or(true)));
    match candidate {
        Some(a) => report.merge(verify_recursion(m, a, k, budget)?),
        None => report.push(Check::skipped(
            "recursion",
            "no element is both non-loop and non-coloop".to_string(),
        )),
    }
    if m.is_simple() {
        report.merge(verify_sign_alternation(m, k, budget)?);
    } else {
        report.push(Check::skipped(
            "char_sign_alternation",
            "matroid is not simple".to_string(),
        ));
        report.push(Check::skipped(
            "mobius_sign",
            "matroid is not simple".to_string(),
        ));
    }
    Ok(report)
}
