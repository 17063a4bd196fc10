//! Sparse multivariate polynomials over the rationals.
//!
//! Coefficients are arbitrary-precision rationals; monomials are exponent
//! vectors over a fixed, ordered variable list. The variable order is part
//! of a polynomial's identity and fixes the canonical term order:
//! graded-lexicographic, highest total degree first, ties broken by the
//! exponent vector (earlier variables weigh more). Printing, JSON output
//! and equality all use this canonical form, so test golden files are
//! stable byte-for-byte.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordered list of variable names. Order is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::InvalidParameters(format!(
                    "variable name {a:?} must start with a letter"
                )));
            }
            if !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidParameters(format!(
                    "variable name {a:?} contains invalid characters"
                )));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidParameters(format!(
                    "duplicate variable name {a:?}"
                )));
            }
        }
        Ok(VarSet { names })
    }

    /// `prefix1 .. prefixk`, e.g. `t1, t2` for chain characteristic polynomials.
    pub fn indexed(prefix: &str, k: usize) -> Self {
        VarSet::new((1..=k).map(|i| format!("{prefix}{i}"))).expect("valid generated names")
    }

    /// `x1..xk, y1..yk`: the chain Tutte variable layout.
    pub fn paired(first: &str, second: &str, k: usize) -> Self {
        let names = (1..=k)
            .map(|i| format!("{first}{i}"))
            .chain((1..=k).map(|i| format!("{second}{i}")));
        VarSet::new(names).expect("valid generated names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. The `Ord` impl is graded-lex ascending, so reverse
/// iteration of a `BTreeMap<Mono, _>` yields the canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Mono(Vec<u16>);

impl Mono {
    fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Mono, BigRational>,
}

fn big(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

impl MultiPoly {
    pub fn zero(vars: VarSet) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; p.vars.len()]), c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn int(vars: VarSet, c: i64) -> Self {
        Self::constant(vars, big(c))
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: VarSet, name: &str) -> Result<Self> {
        let idx = vars
            .position(name)
            .ok_or_else(|| Error::Contract(format!("unknown variable {name:?}")))?;
        let mut exps = vec![0u16; vars.len()];
        exps[idx] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Mono(exps), BigRational::one());
        Ok(p)
    }

    /// Single monomial with coefficient 1.
    pub fn monomial(vars: VarSet, exps: Vec<u16>) -> Result<Self> {
        if exps.len() != vars.len() {
            return Err(Error::Contract(format!(
                "exponent vector length {} does not match {} variables",
                exps.len(),
                vars.len()
            )));
        }
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Mono(exps), BigRational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(
        vars: VarSet,
        terms: impl IntoIterator<Item = (Vec<u16>, BigRational)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(vars);
        for (exps, coef) in terms {
            if exps.len() != p.vars.len() {
                return Err(Error::Contract(format!(
                    "exponent vector length {} does not match {} variables",
                    exps.len(),
                    p.vars.len()
                )));
            }
            p.add_term(Mono(exps), coef);
        }
        Ok(p)
    }

    /// Integer-coefficient variant used by the chain accumulators.
    pub fn from_int_terms(
        vars: VarSet,
        terms: impl IntoIterator<Item = (Vec<u16>, i64)>,
    ) -> Result<Self> {
        Self::from_terms(vars, terms.into_iter().map(|(e, c)| (e, big(c))))
    }

    fn add_term(&mut self, mono: Mono, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order (graded-lex, leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigRational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u16]) -> BigRational {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Mono::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> Result<u16> {
        let idx = self
            .vars
            .position(name)
            .ok_or_else(|| Error::Contract(format!("unknown variable {name:?}")))?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    fn same_vars(&self, other: &MultiPoly) -> bool {
        self.vars == other.vars
    }

    /// Aligns two polynomials on the name union of their variable lists
    /// (left order first, then the right's new names).
    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.same_vars(other) {
            return (self.clone(), other.clone());
        }
        let mut names: Vec<String> = self.vars.names.clone();
        for n in &other.vars.names {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        let union = VarSet { names };
        (self.embed(&union), other.embed(&union))
    }

    /// Re-expresses `self` over a superset of its variables.
    fn embed(&self, target: &VarSet) -> MultiPoly {
        let map: Vec<usize> = self
            .vars
            .names
            .iter()
            .map(|n| target.position(n).expect("target contains all variables"))
            .collect();
        let mut out = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            out.terms.insert(Mono(exps), c.clone());
        }
        out
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&big(c))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(other);
        let mut out = MultiPoly::zero(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u16> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                out.add_term(Mono(exps), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut out = MultiPoly::one(self.vars.clone());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Simultaneous substitution. Every bound name must be one of this
    /// polynomial's variables; unbound variables pass through. The result's
    /// variables are the name union of `self` and the bindings, with bound
    /// names dropped when no term still uses them.
    pub fn substitute(&self, bindings: &[(&str, MultiPoly)]) -> Result<MultiPoly> {
        let mut bound_idx: Vec<Option<usize>> = vec![None; self.vars.len()];
        for (b, (name, _)) in bindings.iter().enumerate() {
            let idx = self.vars.position(name).ok_or_else(|| {
                Error::Contract(format!("substitution binds {name:?} which is not a variable"))
            })?;
            if bound_idx[idx].is_some() {
                return Err(Error::Contract(format!("{name:?} bound twice")));
            }
            bound_idx[idx] = Some(b);
        }

        // Target variables: self's order, then new names from bindings.
        let mut names: Vec<String> = self.vars.names.clone();
        for (_, rhs) in bindings {
            for n in &rhs.vars.names {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        let target = VarSet { names };
        let aligned_rhs: Vec<MultiPoly> =
            bindings.iter().map(|(_, rhs)| rhs.embed(&target)).collect();

        // Power cache per binding, grown on demand.
        let mut powers: Vec<Vec<MultiPoly>> = aligned_rhs
            .iter()
            .map(|p| vec![MultiPoly::one(target.clone()), p.clone()])
            .collect();
        let power = |b: usize, e: usize, powers: &mut Vec<Vec<MultiPoly>>| -> MultiPoly {
            while powers[b].len() <= e {
                let next = powers[b].last().unwrap().mul(&aligned_rhs[b]);
                powers[b].push(next);
            }
            powers[b][e].clone()
        };

        let mut out = MultiPoly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut passthrough = vec![0u16; target.len()];
            let mut acc: Option<MultiPoly> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match bound_idx[i] {
                    None => passthrough[i] = e,
                    Some(b) => {
                        let factor = power(b, e as usize, &mut powers);
                        acc = Some(match acc {
                            None => factor,
                            Some(a) => a.mul(&factor),
                        });
                    }
                }
            }
            let mono = MultiPoly::monomial(target.clone(), passthrough)?.scale(c);
            let term = match acc {
                None => mono,
                Some(a) => a.mul(&mono),
            };
            for (mt, ct) in term.terms {
                out.add_term(mt, ct);
            }
        }
        // Bound variables that no longer occur are dropped from the varset.
        let bound_names: Vec<&str> = bindings.iter().map(|(n, _)| *n).collect();
        let dead: Vec<&str> = bound_names
            .iter()
            .copied()
            .filter(|n| {
                let idx = out.vars.position(n).unwrap();
                out.terms.keys().all(|m| m.0[idx] == 0)
            })
            .collect();
        out.drop_vars(&dead)
    }

    /// Removes variables from the variable list. Errors if any term still
    /// uses one of them.
    pub fn drop_vars(&self, names: &[&str]) -> Result<MultiPoly> {
        if names.is_empty() {
            return Ok(self.clone());
        }
        let mut drop = vec![false; self.vars.len()];
        for n in names {
            let idx = self
                .vars
                .position(n)
                .ok_or_else(|| Error::Contract(format!("unknown variable {n:?}")))?;
            drop[idx] = true;
        }
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if drop[i] && e != 0 {
                    return Err(Error::Contract(format!(
                        "cannot drop variable {:?}: still in use",
                        self.vars.names[i]
                    )));
                }
            }
        }
        let names: Vec<String> = self
            .vars
            .names
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop[*i])
            .map(|(_, n)| n.clone())
            .collect();
        let vars = VarSet { names };
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &self.terms {
            let exps: Vec<u16> = m
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop[*i])
                .map(|(_, &e)| e)
                .collect();
            out.terms.insert(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Renames variables positionally.
    pub fn rename_vars(&self, new_names: &[&str]) -> Result<MultiPoly> {
        if new_names.len() != self.vars.len() {
            return Err(Error::Contract(format!(
                "rename expects {} names, got {}",
                self.vars.len(),
                new_names.len()
            )));
        }
        let vars = VarSet::new(new_names.iter().map(|s| s.to_string()))?;
        let mut out = MultiPoly::zero(vars);
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// Permutes exponent positions: the exponent at position `i` moves to
    /// `perm[i]`. Variable names stay put, so this realises substitutions
    /// like `t_i -> t_{k+1-i}`.
    pub fn permute_positions(&self, perm: &[usize]) -> Result<MultiPoly> {
        let w = self.vars.len();
        if perm.len() != w {
            return Err(Error::Contract("permutation length mismatch".into()));
        }
        let mut seen = vec![false; w];
        for &p in perm {
            if p >= w || seen[p] {
                return Err(Error::Contract("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; w];
            for (i, &e) in m.0.iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.terms.insert(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation at a fully bound rational point.
    pub fn evaluate(&self, point: &[(&str, BigRational)]) -> Result<BigRational> {
        let mut values: Vec<Option<&BigRational>> = vec![None; self.vars.len()];
        for (name, v) in point {
            if let Some(idx) = self.vars.position(name) {
                values[idx] = Some(v);
            }
        }
        if let Some(i) = values.iter().position(Option::is_none) {
            return Err(Error::Contract(format!(
                "variable {:?} is unbound at evaluation",
                self.vars.names[i]
            )));
        }
        // Per-variable power tables sized by the actual degrees.
        let mut tables: Vec<Vec<BigRational>> = Vec::with_capacity(self.vars.len());
        for (i, v) in values.iter().enumerate() {
            let d = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
            let mut tab = Vec::with_capacity(d + 1);
            tab.push(BigRational::one());
            for e in 1..=d {
                let prev = tab[e - 1].clone();
                tab.push(prev * v.unwrap());
            }
            tables.push(tab);
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    t *= &tables[i][e as usize];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Coefficient reversal `p -> v^d * p(v^{-1})` in one variable: the
    /// exponent `e` of `v` becomes `d - e` in every term.
    pub fn reverse_in_var(&self, name: &str, d: u16) -> Result<MultiPoly> {
        let idx = self
            .vars
            .position(name)
            .ok_or_else(|| Error::Contract(format!("unknown variable {name:?}")))?;
        let deg = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0);
        if deg > d {
            return Err(Error::Contract(format!(
                "reversal degree {d} is below deg_{name} = {deg}; the result would be a Laurent polynomial"
            )));
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[idx] = d - exps[idx];
            out.terms.insert(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Sums coefficients by total degree, highest degree first, down to the
    /// constant term. Gaps appear as zeros. Empty for the zero polynomial.
    pub fn coefficients_by_total_degree(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let top = self.total_degree() as usize;
        let mut out = vec![BigRational::zero(); top + 1];
        for (m, c) in &self.terms {
            out[top - m.total_degree() as usize] += c;
        }
        out
    }

    /// Parses the canonical text form against a fixed variable list.
    pub fn parse(input: &str, vars: &VarSet) -> Result<MultiPoly> {
        parse_poly(input, vars)
    }
}

/// `|c_i|^2 >= |c_{i-1}| * |c_{i+1}|` for all interior positions.
pub fn is_log_concave(seq: &[BigRational]) -> bool {
    let abs: Vec<BigRational> = seq.iter().map(|c| c.abs()).collect();
    abs.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Absolute values rise to a peak then fall (non-strictly).
pub fn is_unimodal(seq: &[BigRational]) -> bool {
    let abs: Vec<BigRational> = seq.iter().map(|c| c.abs()).collect();
    let mut i = 0;
    while i + 1 < abs.len() && abs[i] <= abs[i + 1] {
        i += 1;
    }
    while i + 1 < abs.len() && abs[i] >= abs[i + 1] {
        i += 1;
    }
    i + 1 >= abs.len()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coef) in self.terms() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.names[i].clone()
                    } else {
                        format!("{}^{}", self.vars.names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn parse_poly(input: &str, vars: &VarSet) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(vars.clone());
    let s: Vec<char> = input.chars().collect();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse(format!("at offset {pos}: {msg}"));

    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };

    skip_ws(&mut i);
    if i >= s.len() {
        return Err(err(i, "empty polynomial"));
    }
    if s[i..] == ['0'] || (s[i] == '0' && s[i + 1..].iter().all(|c| c.is_whitespace())) {
        return Ok(out);
    }

    let mut sign_next: i64 = 1;
    loop {
        skip_ws(&mut i);
        if i < s.len() && (s[i] == '+' || s[i] == '-') {
            if s[i] == '-' {
                sign_next = -sign_next;
            }
            i += 1;
            skip_ws(&mut i);
        }
        if i >= s.len() {
            return Err(err(i, "expected a term"));
        }

        let mut coef = BigRational::one();
        let mut exps = vec![0u16; vars.len()];
        let mut saw_factor = false;

        loop {
            skip_ws(&mut i);
            if i >= s.len() {
                break;
            }
            let c = s[i];
            if c.is_ascii_digit() {
                let start = i;
                while i < s.len() && s[i].is_ascii_digit() {
                    i += 1;
                }
                let mut num: String = s[start..i].iter().collect();
                if i < s.len() && s[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(err(i, "expected denominator"));
                    }
                    num.push('/');
                    num.extend(&s[dstart..i]);
                }
                let r = BigRational::from_str(&num)
                    .map_err(|e| err(start, &format!("bad coefficient {num:?}: {e}")))?;
                coef *= r;
                saw_factor = true;
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < s.len() && (s[i].is_ascii_alphanumeric() || s[i] == '_') {
                    i += 1;
                }
                let name: String = s[start..i].iter().collect();
                let idx = vars
                    .position(&name)
                    .ok_or_else(|| err(start, &format!("unknown variable {name:?}")))?;
                let mut e: u16 = 1;
                skip_ws(&mut i);
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    let estart = i;
                    while i < s.len() && s[i].is_ascii_digit() {
                        i += 1;
                    }
                    if estart == i {
                        return Err(err(i, "expected exponent"));
                    }
                    let txt: String = s[estart..i].iter().collect();
                    e = txt
                        .parse()
                        .map_err(|_| err(estart, &format!("bad exponent {txt:?}")))?;
                }
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| err(start, "exponent overflow"))?;
                saw_factor = true;
            } else {
                break;
            }
            skip_ws(&mut i);
            if i < s.len() && s[i] == '*' {
                i += 1;
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(err(i, "expected a term"));
        }
        if sign_next < 0 {
            coef = -coef;
        }
        out.add_term(Mono(exps), coef);
        sign_next = 1;

        skip_ws(&mut i);
        if i >= s.len() {
            break;
        }
        if s[i] != '+' && s[i] != '-' {
            return Err(err(i, &format!("unexpected character {:?}", s[i])));
        }
    }
    Ok(out)
}

// JSON form: {"vars":["t1","t2"],"terms":[{"exp":[2,2],"coef":"1"},...]},
// terms in canonical order, coefficients as reduced "num" or "num/den".
#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u16>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = PolyJson {
            vars: self.vars.names.clone(),
            terms: self
                .terms()
                .map(|(exp, coef)| TermJson {
                    exp: exp.to_vec(),
                    coef: coef.to_string(),
                })
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(deserializer)?;
        let vars = VarSet::new(json.vars).map_err(D::Error::custom)?;
        let mut out = MultiPoly::zero(vars);
        for t in json.terms {
            if t.exp.len() != out.vars.len() {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let coef = BigRational::from_str(&t.coef)
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {e}", t.coef)))?;
            out.add_term(Mono(t.exp), coef);
        }
        Ok(out)
    }
}
