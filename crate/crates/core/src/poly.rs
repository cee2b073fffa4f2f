//! Multilinear graded polynomials over a fixed variable roster.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::GradedAlgebra;
use crate::bsz::{omega_partition, BszData, Triple};
use crate::cyclo::CycloScalar;
use crate::error::{structural, Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::linalg::{is_zero_vector, Vector};

/// Largest number of terms any constructor will materialize.
pub const DEFAULT_TERM_CEILING: usize = 4_000_000;

/// Largest number of basis tuples [`identity_witness`] will try.
pub const DEFAULT_TUPLE_CEILING: usize = 20_000_000;

/// A variable `{name}{slot}` of fixed homogeneous degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVariable {
    pub name: String,
    pub slot: u32,
    pub degree: GroupElement,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, slot: u32, degree: GroupElement) -> Self {
        Self { name: name.into(), slot, degree }
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.slot)
    }
}

/// A word over roster indices; multilinear words use each index once.
pub type Word = Vec<u32>;

/// `sum c_w w` over words that each use every roster variable exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    group: AbelianGroup,
    conductor: u32,
    roster: Vec<GradedVariable>,
    terms: BTreeMap<Word, CycloScalar>,
}

impl GradedPolynomial {
    /// The zero polynomial on `roster`.
    pub fn zero(group: AbelianGroup, conductor: u32, roster: Vec<GradedVariable>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &roster {
            if !group.contains(&v.degree) {
                return Err(structural!("variable {v} has degree {} outside {group}", v.degree));
            }
            if !seen.insert((v.name.as_str(), v.slot)) {
                return Err(structural!("variable {v} appears twice in the roster"));
            }
        }
        Ok(Self { group, conductor, roster, terms: BTreeMap::new() })
    }

    /// The empty word with coefficient 1; a two-sided unit for [`concat`](Self::concat).
    pub fn unit(group: AbelianGroup, conductor: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), CycloScalar::one(conductor));
        Self { group, conductor, roster: Vec::new(), terms }
    }

    /// The single word listing `roster` in order.
    pub fn monomial(group: AbelianGroup, conductor: u32, roster: Vec<GradedVariable>) -> Result<Self> {
        let mut p = Self::zero(group, conductor, roster)?;
        let word = (0..p.roster.len() as u32).collect();
        p.terms.insert(word, CycloScalar::one(conductor));
        Ok(p)
    }

    /// Adds `c * word`; the word must be a permutation of the roster.
    pub fn add_term(&mut self, word: Word, c: CycloScalar) -> Result<()> {
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(a, &b)| a as u32 != b) || sorted.len() != self.roster.len() {
            return Err(structural!("word is not multilinear in the roster"));
        }
        let c = c.embed(self.conductor)?;
        self.push(word, c);
        Ok(())
    }

    fn push(&mut self, word: Word, c: CycloScalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn roster(&self) -> &[GradedVariable] {
        &self.roster
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycloScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variable_index(&self, name: &str, slot: u32) -> Option<usize> {
        self.roster.iter().position(|v| v.name == name && v.slot == slot)
    }

    /// Index of the variable whose display form is `text`.
    pub fn find(&self, text: &str) -> Option<usize> {
        self.roster.iter().position(|v| v.to_string() == text)
    }

    /// Product of all variable degrees.
    pub fn degree(&self) -> GroupElement {
        self.roster.iter().fold(self.group.identity(), |acc, v| self.group.mul_unchecked(&acc, &v.degree))
    }

    pub fn scale(&self, c: &CycloScalar) -> Result<Self> {
        let c = c.embed(self.conductor)?;
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, x)| (w.clone(), x * &c)).collect();
        }
        Ok(out)
    }

    /// Sum; `other` may list the same variables in a different roster order.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(structural!("polynomials over different groups"));
        }
        let remap = self.roster_map(other)?;
        let conductor = common_conductor(self.conductor, other.conductor)?;
        let mut out = self.with_conductor(conductor)?;
        for (w, c) in &other.terms {
            let word = w.iter().map(|&i| remap[i as usize]).collect();
            out.push(word, c.embed(conductor)?);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycloScalar::from_int(other.conductor, -1))?)
    }

    fn roster_map(&self, other: &Self) -> Result<Vec<u32>> {
        if self.roster.len() != other.roster.len() {
            return Err(structural!("rosters differ in size"));
        }
        let pos: HashMap<&GradedVariable, u32> = self.roster.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
        other
            .roster
            .iter()
            .map(|v| pos.get(v).copied().ok_or_else(|| structural!("variable {v} is not in both rosters")))
            .collect()
    }

    pub fn with_conductor(&self, conductor: u32) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| Ok((w.clone(), c.embed(conductor)?)))
            .collect::<Result<_>>()?;
        Ok(Self { conductor, terms, group: self.group.clone(), roster: self.roster.clone() })
    }

    /// `self * other` by concatenating words; rosters must be disjoint.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.concat_with_ceiling(other, DEFAULT_TERM_CEILING)
    }

    pub fn concat_with_ceiling(&self, other: &Self, ceiling: usize) -> Result<Self> {
        if self.group != other.group {
            return Err(structural!("polynomials over different groups"));
        }
        let mine: HashSet<&GradedVariable> = self.roster.iter().collect();
        if let Some(v) = other.roster.iter().find(|v| mine.contains(v)) {
            return Err(structural!("roster collision on {v}"));
        }
        let count = self.terms.len().saturating_mul(other.terms.len());
        if count > ceiling {
            return Err(Error::Ceiling(format!("product would have {count} terms, ceiling is {ceiling}")));
        }
        let conductor = common_conductor(self.conductor, other.conductor)?;
        let shift = self.roster.len() as u32;
        let mut roster = self.roster.clone();
        roster.extend(other.roster.iter().cloned());
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            let a = a.embed(conductor)?;
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().map(|i| i + shift));
                terms.insert(w, &a * &b.embed(conductor)?);
            }
        }
        Ok(Self { group: self.group.clone(), conductor, roster, terms })
    }

    /// `sum_{sigma} sgn(sigma) p(x_{sigma(1)}, ..., x_{sigma(t)})` over the
    /// roster indices in `set`.
    pub fn alternate(&self, set: &[usize]) -> Result<Self> {
        self.alternate_with_ceiling(set, DEFAULT_TERM_CEILING)
    }

    pub fn alternate_with_ceiling(&self, set: &[usize], ceiling: usize) -> Result<Self> {
        self.check_set(set)?;
        let perms = signed_permutations(set.len());
        let count = self.terms.len().saturating_mul(perms.len());
        if count > ceiling {
            return Err(Error::Ceiling(format!("alternation would visit {count} terms, ceiling is {ceiling}")));
        }
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        let mut sub: Vec<u32> = (0..self.roster.len() as u32).collect();
        let minus = CycloScalar::from_int(self.conductor, -1);
        for (perm, odd) in &perms {
            for (a, &b) in perm.iter().enumerate() {
                sub[set[a]] = set[b] as u32;
            }
            for (w, c) in &self.terms {
                let word = w.iter().map(|&i| sub[i as usize]).collect();
                out.push(word, if *odd { c * &minus } else { c.clone() });
            }
        }
        Ok(out)
    }

    fn check_set(&self, set: &[usize]) -> Result<()> {
        let mut seen = HashSet::new();
        for &i in set {
            if i >= self.roster.len() {
                return Err(structural!("alternating set refers to roster index {i}"));
            }
            if !seen.insert(i) {
                return Err(structural!("alternating set repeats {}", self.roster[i]));
            }
        }
        if let Some(&first) = set.first() {
            let d = &self.roster[first].degree;
            if let Some(&bad) = set.iter().find(|&&i| &self.roster[i].degree != d) {
                return Err(Error::Domain(format!(
                    "alternating set mixes degrees: {} has {} but {} has {}",
                    self.roster[first], d, self.roster[bad], self.roster[bad].degree
                )));
            }
        }
        Ok(())
    }

    /// The polynomial with variables `a` and `b` exchanged.
    pub fn swap_variables(&self, a: usize, b: usize) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (w, c) in &self.terms {
            let word = w
                .iter()
                .map(|&i| match i as usize {
                    i if i == a => b as u32,
                    i if i == b => a as u32,
                    _ => i,
                })
                .collect();
            out.push(word, c.clone());
        }
        out
    }

    /// Whether every transposition within `set` negates the polynomial.
    pub fn is_alternating_in(&self, set: &[usize]) -> bool {
        let neg = match self.scale(&CycloScalar::from_int(self.conductor, -1)) {
            Ok(p) => p,
            Err(_) => return false,
        };
        // adjacent transpositions generate the symmetric group
        set.windows(2).all(|w| self.swap_variables(w[0], w[1]) == neg)
    }
}

fn common_conductor(a: u32, b: u32) -> Result<u32> {
    if a % b == 0 {
        Ok(a)
    } else if b % a == 0 {
        Ok(b)
    } else {
        Err(structural!("conductors {a} and {b} are incompatible"))
    }
}

impl fmt::Display for GradedPolynomial {
    /// Terms in word order; coefficient 1 is omitted and -1 shows as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let word: Vec<String> = w.iter().map(|&i| self.roster[i as usize].to_string()).collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
            let (negative, magnitude) = match c.to_rational() {
                Some(q) if q < num_rational::BigRational::from_integer(0.into()) => (true, CycloScalar::from_rational(c.conductor(), -q)),
                _ => (false, c.clone()),
            };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude.is_one() {
                f.write_str(&word)?;
            } else if magnitude.to_rational().is_some() {
                write!(f, "{magnitude}*{word}")?;
            } else {
                write!(f, "({magnitude})*{word}")?;
            }
        }
        Ok(())
    }
}

/// All permutations of `0..n` with their parity (`true` = odd), by Heap's algorithm.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), false)];
    let mut odd = false;
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// One set of an alternating structure: the `fold`-th family (1-based) of
/// variables of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingSet {
    pub fold: usize,
    pub degree: GroupElement,
    pub vars: Vec<usize>,
}

/// A polynomial together with the disjoint variable sets it alternates in.
#[derive(Clone, Debug)]
pub struct MultiAlternating {
    pub poly: GradedPolynomial,
    pub sets: Vec<AlternatingSet>,
}

impl MultiAlternating {
    pub fn folds(&self) -> usize {
        self.sets.iter().map(|s| s.fold).max().unwrap_or(0)
    }

    /// `sizes[l-1][g]` = size of the set of fold `l` and degree `g`
    /// (group enumeration order), 0 where there is none.
    pub fn set_sizes(&self) -> Vec<Vec<usize>> {
        let g = self.poly.group();
        let mut out = vec![vec![0; g.order()]; self.folds()];
        for s in &self.sets {
            out[s.fold - 1][g.index_of(&s.degree)] = s.vars.len();
        }
        out
    }
}

/// Variable blocks `X_1 Y_1 X_2 Y_2 ... X_d Y_d` of sizes `1, 3, ..., 2d-1`.
fn regev_layout(d: usize) -> Vec<(bool, std::ops::Range<usize>)> {
    let mut out = Vec::with_capacity(2 * d);
    for j in 1..=d {
        let range = (j - 1) * (j - 1)..j * j;
        out.push((true, range.clone()));
        out.push((false, range));
    }
    out
}

/// The Regev polynomial in `x1..x_{d^2}, y1..y_{d^2}` over the trivial group.
pub fn regev_polynomial(d: usize) -> Result<GradedPolynomial> {
    let g = AbelianGroup::trivial();
    let degrees = vec![g.identity(); d * d];
    regev_with_degrees(&g, "x", "y", &degrees, DEFAULT_TERM_CEILING)
}

/// Regev polynomial whose `a`-th `x` and `a`-th `y` both carry `degrees[a]`.
pub fn regev_with_degrees(
    group: &AbelianGroup,
    x_name: &str,
    y_name: &str,
    degrees: &[GroupElement],
    ceiling: usize,
) -> Result<GradedPolynomial> {
    let n = degrees.len();
    let d = (n as f64).sqrt().round() as usize;
    if d == 0 || d * d != n {
        return Err(structural!("Regev polynomial needs d^2 variables per family, got {n}"));
    }
    let perms = signed_permutations_checked(n, ceiling)?;
    if perms.len().saturating_mul(perms.len()) > ceiling {
        return Err(Error::Ceiling(format!(
            "Regev polynomial for d = {d} has ({n}!)^2 terms, ceiling is {ceiling}"
        )));
    }
    let mut roster = Vec::with_capacity(2 * n);
    for (a, deg) in degrees.iter().enumerate() {
        roster.push(GradedVariable::new(x_name, a as u32 + 1, deg.clone()));
    }
    for (a, deg) in degrees.iter().enumerate() {
        roster.push(GradedVariable::new(y_name, a as u32 + 1, deg.clone()));
    }
    let mut p = GradedPolynomial::zero(group.clone(), 1, roster)?;
    let layout = regev_layout(d);
    let one = CycloScalar::one(1);
    let minus = CycloScalar::from_int(1, -1);
    for (s, s_odd) in &perms {
        for (t, t_odd) in &perms {
            let mut w = Vec::with_capacity(2 * n);
            for (is_x, range) in &layout {
                for pos in range.clone() {
                    if *is_x {
                        w.push(s[pos] as u32);
                    } else {
                        w.push((n + t[pos]) as u32);
                    }
                }
            }
            p.terms.insert(w, if s_odd ^ t_odd { minus.clone() } else { one.clone() });
        }
    }
    Ok(p)
}

fn signed_permutations_checked(n: usize, ceiling: usize) -> Result<Vec<(Vec<usize>, bool)>> {
    let mut count: usize = 1;
    for i in 2..=n {
        count = count.saturating_mul(i);
        if count > ceiling {
            return Err(Error::Ceiling(format!("{n}! permutations exceed the ceiling {ceiling}")));
        }
    }
    Ok(signed_permutations(n))
}

/// Value of the Regev polynomial at `x_a = xs[a]`, `y_a = ys[a]` without
/// expanding it.
///
/// Dynamic programming over which `x` and `y` variables have been placed;
/// each step appends one variable to the running product and tracks the
/// permutation sign through inversion counts.
pub fn regev_evaluate(a: &GradedAlgebra, xs: &[Vector], ys: &[Vector]) -> Result<Vector> {
    let n = xs.len();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n || ys.len() != n {
        return Err(structural!("Regev evaluation needs d^2 x-values and d^2 y-values"));
    }
    if n > 16 {
        return Err(Error::Ceiling(format!("lazy Regev evaluation supports d <= 4, got d = {d}")));
    }
    let mut order = Vec::with_capacity(2 * n);
    for (is_x, range) in regev_layout(d) {
        for _ in range {
            order.push(is_x);
        }
    }
    let minus = CycloScalar::from_int(a.conductor(), -1);
    let unit_state = |v: &Vector, sign: bool| if sign { v.iter().map(|c| c * &minus).collect() } else { v.clone() };
    // state: (x mask, y mask) -> accumulated signed product
    let mut states: HashMap<(u32, u32), Vector> = HashMap::new();
    let mut first = true;
    for &is_x in &order {
        let mut next: HashMap<(u32, u32), Vector> = HashMap::new();
        let vals = if is_x { xs } else { ys };
        if first {
            for (i, v) in vals.iter().enumerate() {
                if is_zero_vector(v) {
                    continue;
                }
                let key = if is_x { (1u32 << i, 0) } else { (0, 1u32 << i) };
                next.insert(key, v.clone());
            }
            first = false;
        } else {
            for ((xm, ym), acc) in &states {
                let used = if is_x { *xm } else { *ym };
                for (i, v) in vals.iter().enumerate() {
                    if used & (1 << i) != 0 || is_zero_vector(v) {
                        continue;
                    }
                    let inversions = (used >> (i + 1)).count_ones();
                    let prod = a.mul(acc, v);
                    if is_zero_vector(&prod) {
                        continue;
                    }
                    let prod = unit_state(&prod, inversions % 2 == 1);
                    let key = if is_x { (xm | (1 << i), *ym) } else { (*xm, ym | (1 << i)) };
                    match next.get_mut(&key) {
                        Some(slot) => {
                            for (s, p) in slot.iter_mut().zip(&prod) {
                                *s += p;
                            }
                        }
                        None => {
                            next.insert(key, prod);
                        }
                    }
                }
            }
        }
        states = next;
    }
    Ok(states.into_values().next().unwrap_or_else(|| a.zero()))
}

/// `φ_p`: the Regev polynomial with both variable families carrying the
/// degrees of `Ω(p)` (1-based `p`), paired in the order of the set.
pub fn graded_regev(data: &BszData, p: usize) -> Result<GradedPolynomial> {
    graded_regev_named(data, p, "x", "y")
}

fn graded_regev_named(data: &BszData, p: usize, x: &str, y: &str) -> Result<GradedPolynomial> {
    let om = omega_partition(data);
    if p == 0 || p > om.sets.len() {
        return Err(Error::Domain(format!("Ω index {p} out of range 1..={}", om.sets.len())));
    }
    let degrees: Vec<GroupElement> = om.sets[p - 1].iter().map(|t| data.degree(t)).collect();
    let poly = regev_with_degrees(data.group(), x, y, &degrees, DEFAULT_TERM_CEILING)?;
    poly.with_conductor(data.conductor())
}

/// The central polynomial of a graded-simple block with the Ω element each
/// variable is meant to be evaluated at.
#[derive(Clone, Debug)]
pub struct CentralPolynomial {
    pub alt: MultiAlternating,
    /// `slots[v]` is the canonical value of roster variable `v`.
    pub slots: Vec<Triple>,
}

/// `t` fresh copies of `φ_1 ⋯ φ_m`; copy `c` contributes fold `2c-1` (its
/// `x` variables) and fold `2c` (its `y` variables), one set per degree.
///
/// Variables are named `c{c}.p{p}.x{a}` and `c{c}.p{p}.y{a}`.
pub fn central_alternating_polynomial(data: &BszData, t: usize) -> Result<CentralPolynomial> {
    central_with_prefix(data, t, "")
}

pub(crate) fn central_with_prefix(data: &BszData, t: usize, prefix: &str) -> Result<CentralPolynomial> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let om = omega_partition(data);
    let group = data.group();
    let mut poly = GradedPolynomial::unit(group.clone(), data.conductor());
    let mut slots = Vec::new();
    let mut sets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for c in 1..=t {
        for (p, set) in om.sets.iter().enumerate() {
            let base = poly.roster.len();
            let x = format!("{prefix}c{c}.p{}.x", p + 1);
            let y = format!("{prefix}c{c}.p{}.y", p + 1);
            let phi = graded_regev_named(data, p + 1, &x, &y)?;
            poly = poly.concat(&phi)?;
            for (family, fold) in [(0, 2 * c - 1), (1, 2 * c)] {
                for (a, tr) in set.iter().enumerate() {
                    let v = base + family * set.len() + a;
                    sets.entry((fold, group.index_of(&data.degree(tr)))).or_default().push(v);
                }
            }
            slots.extend(set.iter().cloned());
            slots.extend(set.iter().cloned());
        }
    }
    let sets = sets
        .into_iter()
        .map(|((fold, g), vars)| AlternatingSet { fold, degree: group.element_at(g), vars })
        .collect();
    Ok(CentralPolynomial { alt: MultiAlternating { poly, sets }, slots })
}

/// The witness polynomial for a chain of graded-simple blocks
/// `y1 φ_1 z1 y2 φ_2 ⋯ z_{k-1} y_k φ_k`, alternated over the unions of the
/// blocks' sets of equal fold and degree.
///
/// `bridge_degrees` gives the degrees of `y1, z1, y2, ..., y_k` in that
/// order (`2k - 1` entries). Block `i` uses the variable prefix `b{i}.`.
pub fn witness_polynomial(
    blocks: &[&BszData],
    bridge_degrees: &[GroupElement],
    t: usize,
    ceiling: usize,
) -> Result<(MultiAlternating, Vec<CentralPolynomial>)> {
    let k = blocks.len();
    if k == 0 {
        return Err(Error::Domain("the chain is empty".into()));
    }
    if bridge_degrees.len() != 2 * k - 1 {
        return Err(structural!("expected {} bridge degrees, got {}", 2 * k - 1, bridge_degrees.len()));
    }
    let group = blocks[0].group().clone();
    if blocks.iter().any(|b| b.group() != &group) {
        return Err(structural!("blocks are graded by different groups"));
    }
    let conductor = blocks.iter().fold(1u32, |acc, b| num_integer::Integer::lcm(&acc, &b.conductor()));
    let mut poly = GradedPolynomial::unit(group.clone(), conductor);
    let mut union: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut centrals = Vec::with_capacity(k);
    for (i, data) in blocks.iter().enumerate() {
        let y = GradedPolynomial::monomial(group.clone(), 1, vec![GradedVariable::new("y", i as u32 + 1, bridge_degrees[2 * i].clone())])?;
        poly = poly.concat_with_ceiling(&y, ceiling)?;
        let central = central_with_prefix(data, t, &format!("b{}.", i + 1))?;
        let base = poly.roster.len();
        poly = poly.concat_with_ceiling(&central.alt.poly, ceiling)?;
        for s in &central.alt.sets {
            union.entry((s.fold, group.index_of(&s.degree))).or_default().extend(s.vars.iter().map(|v| v + base));
        }
        centrals.push(central);
        if i + 1 < k {
            let z = GradedPolynomial::monomial(group.clone(), 1, vec![GradedVariable::new("z", i as u32 + 1, bridge_degrees[2 * i + 1].clone())])?;
            poly = poly.concat_with_ceiling(&z, ceiling)?;
        }
    }
    let sets: Vec<AlternatingSet> = union
        .into_iter()
        .map(|((fold, g), vars)| AlternatingSet { fold, degree: group.element_at(g), vars })
        .collect();
    // each block polynomial is already alternating inside its own part of a set
    let mut estimate = poly.len();
    for s in &sets {
        for n in 2..=s.vars.len() {
            estimate = estimate.saturating_mul(n);
        }
    }
    if estimate > ceiling {
        return Err(Error::Ceiling(format!(
            "alternated witness polynomial would visit about {estimate} terms, ceiling is {ceiling}"
        )));
    }
    for s in &sets {
        poly = poly.alternate_with_ceiling(&s.vars, ceiling)?;
    }
    Ok((MultiAlternating { poly, sets }, centrals))
}

/// Value of `p` at `assignment[v]` for each roster variable `v`.
pub fn evaluate(p: &GradedPolynomial, a: &GradedAlgebra, assignment: &[Vector]) -> Result<Vector> {
    check_compatible(p, a)?;
    if assignment.len() != p.roster.len() {
        return Err(structural!("{} values for {} variables", assignment.len(), p.roster.len()));
    }
    for (v, x) in p.roster.iter().zip(assignment) {
        if x.len() != a.dim() {
            return Err(structural!("value of {v} has length {} for dimension {}", x.len(), a.dim()));
        }
        if !a.is_homogeneous_of(x, &v.degree) {
            return Err(Error::Domain(format!("value of {v} is not homogeneous of degree {}", v.degree)));
        }
    }
    Ok(evaluate_unchecked(p, a, assignment))
}

fn check_compatible(p: &GradedPolynomial, a: &GradedAlgebra) -> Result<()> {
    if p.group() != a.group() {
        return Err(structural!("polynomial is graded by {} but the algebra by {}", p.group(), a.group()));
    }
    if a.conductor() % p.conductor() != 0 {
        return Err(structural!(
            "polynomial coefficients need conductor {} which does not divide the algebra's {}",
            p.conductor(),
            a.conductor()
        ));
    }
    Ok(())
}

/// Word evaluation reusing the product of the common prefix with the
/// previous word (terms are visited in sorted order).
fn evaluate_unchecked(p: &GradedPolynomial, a: &GradedAlgebra, assignment: &[Vector]) -> Vector {
    let mut out = a.zero();
    let mut prefix: Vec<Vector> = Vec::new();
    let mut prev: &[u32] = &[];
    let unit = a.unit();
    for (w, c) in &p.terms {
        let common = prev.iter().zip(w).take_while(|(x, y)| x == y).count().min(prefix.len());
        prefix.truncate(common);
        for &v in &w[common..] {
            let next = match prefix.last() {
                Some(acc) => a.mul(acc, &assignment[v as usize]),
                None => assignment[v as usize].clone(),
            };
            prefix.push(next);
        }
        prev = w;
        let value = match prefix.last() {
            Some(v) => v.clone(),
            None => match &unit {
                Some(u) => u.clone(),
                None => continue,
            },
        };
        let c = c.embed(a.conductor()).expect("conductor checked");
        for (o, x) in out.iter_mut().zip(&value) {
            if !x.is_zero() {
                *o += &(&c * x);
            }
        }
    }
    out
}

/// First tuple of homogeneous basis elements (in lexicographic order of
/// basis indices per variable) on which `p` is nonzero.
pub fn identity_witness(p: &GradedPolynomial, a: &GradedAlgebra, ceiling: usize) -> Result<Option<Vec<usize>>> {
    check_compatible(p, a)?;
    let domains: Vec<Vec<usize>> = p.roster.iter().map(|v| a.component(&v.degree)).collect();
    if p.is_zero() || domains.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut total: usize = 1;
    for d in &domains {
        total = total.saturating_mul(d.len());
    }
    if total > ceiling {
        return Err(Error::Ceiling(format!("{total} basis tuples exceed the ceiling {ceiling}")));
    }
    let basis: Vec<Vector> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    let found = (0..total).into_par_iter().find_map_first(|mut index| {
        let mut tuple = vec![0; domains.len()];
        for (slot, d) in tuple.iter_mut().zip(&domains).rev() {
            *slot = d[index % d.len()];
            index /= d.len();
        }
        let values: Vec<Vector> = tuple.iter().map(|&i| basis[i].clone()).collect();
        let v = evaluate_unchecked(p, a, &values);
        (!is_zero_vector(&v)).then_some(tuple)
    });
    Ok(found)
}

/// Whether `p` vanishes on every tuple of homogeneous basis elements.
pub fn is_identity(p: &GradedPolynomial, a: &GradedAlgebra) -> Result<bool> {
    Ok(identity_witness(p, a, DEFAULT_TUPLE_CEILING)?.is_none())
}
