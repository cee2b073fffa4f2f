//! Graded and ordinary codimensions as ranks of evaluation matrices.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::cyclo::CycloScalar;
use crate::error::{structural, validation, Error, Result};

/// Counts `(n_1, ..., n_s)` of variables per group element, in group
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeComposition(pub Vec<usize>);

impl DegreeComposition {
    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Group-element index of each of the `n` roster slots.
    pub fn slot_degrees(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(g, &c)| std::iter::repeat(g).take(c)).collect()
    }

    /// All compositions of `n` into `s` parts, first part descending.
    pub fn all(n: usize, s: usize) -> Vec<Self> {
        fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeComposition>) {
            if parts == 1 {
                cur.push(left);
                out.push(DegreeComposition(cur.clone()));
                cur.pop();
                return;
            }
            for first in (0..=left).rev() {
                cur.push(first);
                rec(left - first, parts - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if s > 0 {
            rec(n, s, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn multinomial(&self) -> BigUint {
        let mut num = factorial(self.n());
        for &c in &self.0 {
            num /= factorial(c);
        }
        num
    }
}

impl std::fmt::Display for DegreeComposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Resource limits and parallelism for the engine.
#[derive(Clone, Debug)]
pub struct CodimOptions {
    pub max_n: usize,
    /// Bound on `n! * (number of basis tuples)` for one composition.
    pub max_work: u128,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for CodimOptions {
    fn default() -> Self {
        Self { max_n: 7, max_work: 5040 * 6u128.pow(7), workers: None }
    }
}

impl CodimOptions {
    pub fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(job()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| Error::Io(format!("cannot start worker pool: {e}")))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// The `n!` orderings of `x_1, ..., x_n` in lexicographic order.
pub fn enumerate_monomials(comp: &DegreeComposition, max_n: usize) -> Result<Vec<Vec<u32>>> {
    let n = comp.n();
    if n > max_n {
        return Err(Error::Ceiling(format!("n = {n} exceeds the configured ceiling {max_n}")));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u32);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    Ok(out)
}

type Sparse = Vec<(usize, CycloScalar)>;

/// Column echelon form keyed by leading index.
struct Echelon {
    pivots: BTreeMap<usize, BTreeMap<usize, CycloScalar>>,
}

impl Echelon {
    fn new() -> Self {
        Self { pivots: BTreeMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, v: Sparse) {
        let mut v: BTreeMap<usize, CycloScalar> = v.into_iter().collect();
        while let Some((&lead, c)) = v.iter().next() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = c.clone();
                    for (k, x) in p {
                        let delta = &c * x;
                        match v.get_mut(k) {
                            Some(slot) => {
                                *slot -= &delta;
                                if slot.is_zero() {
                                    v.remove(k);
                                }
                            }
                            None => {
                                v.insert(*k, -delta);
                            }
                        }
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero lead");
                    let v = v.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                    self.pivots.insert(lead, v);
                    return;
                }
            }
        }
    }
}

fn normalize(mut v: Sparse) -> Sparse {
    if let Some((_, lead)) = v.first() {
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for (_, x) in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
    }
    v
}

/// Evaluates every ordering of the tuple `b` at once by depth-first search
/// over permutations with shared prefix products. Returns, per output
/// coordinate, the sparse column over lexicographic permutation ranks.
fn tuple_columns(a: &GradedAlgebra, b: &[usize]) -> Vec<Sparse> {
    let n = b.len();
    let mut fact = vec![1usize; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i;
    }
    let mut columns: BTreeMap<usize, Sparse> = BTreeMap::new();
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        a: &GradedAlgebra,
        b: &[usize],
        fact: &[usize],
        used: &mut [bool],
        depth: usize,
        rank: usize,
        prefix: &Sparse,
        columns: &mut BTreeMap<usize, Sparse>,
    ) {
        let n = b.len();
        if depth == n {
            for (k, c) in prefix {
                columns.entry(*k).or_default().push((rank, c.clone()));
            }
            return;
        }
        let mut free_before = 0;
        for v in 0..n {
            if used[v] {
                continue;
            }
            let next_rank = rank + free_before * fact[n - 1 - depth];
            free_before += 1;
            let next: Sparse = if depth == 0 {
                vec![(b[v], CycloScalar::one(a.conductor()))]
            } else {
                let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
                for (i, c) in prefix {
                    for (k, s) in a.basis_product(*i, b[v]) {
                        let slot = acc.entry(*k).or_insert_with(|| CycloScalar::zero(a.conductor()));
                        *slot += &(c * s);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            };
            if next.is_empty() {
                continue;
            }
            used[v] = true;
            dfs(a, b, fact, used, depth + 1, next_rank, &next, columns);
            used[v] = false;
        }
    }
    dfs(a, b, &fact, &mut used, 0, 0, &Vec::new(), &mut columns);
    // leaves arrive in increasing rank order, so columns are already sorted
    columns.into_values().collect()
}

/// `c_{n_1, ..., n_s}(A)`: the rank of the evaluation matrix of the `n!`
/// monomials of the composition.
pub fn codim_component(a: &GradedAlgebra, comp: &DegreeComposition, opts: &CodimOptions) -> Result<usize> {
    let g = a.group();
    if comp.0.len() != g.order() {
        return Err(structural!("composition has {} parts for a group of order {}", comp.0.len(), g.order()));
    }
    let n = comp.n();
    if n == 0 {
        return Err(Error::Domain("codimensions are defined for n >= 1".into()));
    }
    if n > opts.max_n {
        return Err(Error::Ceiling(format!("n = {n} exceeds the configured ceiling {} (raise --max-n)", opts.max_n)));
    }
    let domains: Vec<Vec<usize>> = comp.slot_degrees().iter().map(|&gi| a.component(&g.element_at(gi))).collect();
    if domains.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let tuples: u128 = domains.iter().map(|d| d.len() as u128).product();
    let rows = factorial(n).to_u128().unwrap_or(u128::MAX);
    let work = rows.saturating_mul(tuples);
    if work > opts.max_work {
        return Err(Error::Ceiling(format!(
            "composition {comp} needs {work} monomial evaluations, ceiling is {} (reduce --max-n)",
            opts.max_work
        )));
    }
    let full = rows as usize;
    let tuples = tuples as usize;
    let decode = |mut index: usize| -> Vec<usize> {
        let mut t = vec![0; domains.len()];
        for (slot, d) in t.iter_mut().zip(&domains).rev() {
            *slot = d[index % d.len()];
            index /= d.len();
        }
        t
    };
    let mut echelon = Echelon::new();
    let mut seen: HashSet<Sparse> = HashSet::new();
    const CHUNK: usize = 64;
    let mut start = 0;
    while start < tuples && echelon.rank() < full {
        let end = (start + CHUNK * rayon::current_num_threads().max(1)).min(tuples);
        let batch: Vec<Vec<Sparse>> = (start..end)
            .into_par_iter()
            .map(|i| tuple_columns(a, &decode(i)).into_iter().map(normalize).collect())
            .collect();
        for cols in batch {
            for c in cols {
                if echelon.rank() == full {
                    break;
                }
                if seen.insert(c.clone()) {
                    echelon.insert(c);
                }
            }
        }
        start = end;
    }
    Ok(echelon.rank())
}

/// One composition's share of `c_n^G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub composition: DegreeComposition,
    pub c: usize,
    #[serde(serialize_with = "ser_big")]
    pub multinomial: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub contribution: BigUint,
}

/// `c_n^G(A)` with its decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimRow {
    pub n: usize,
    pub components: Vec<ComponentRecord>,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
}

pub(crate) fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn graded_codimension(a: &GradedAlgebra, n: usize, opts: &CodimOptions) -> Result<CodimRow> {
    let comps = DegreeComposition::all(n, a.group().order());
    opts.run(|| {
        let mut components = Vec::with_capacity(comps.len());
        let mut total = BigUint::zero();
        for comp in comps {
            let c = codim_component(a, &comp, opts)?;
            let multinomial = comp.multinomial();
            let contribution = &multinomial * BigUint::from(c);
            total += &contribution;
            components.push(ComponentRecord { composition: comp, c, multinomial, contribution });
        }
        Ok(CodimRow { n, components, total })
    })?
}

/// `c_n(A)`, computed as the graded codimension for the trivial grading.
pub fn ordinary_codimension(a: &GradedAlgebra, n: usize, opts: &CodimOptions) -> Result<BigUint> {
    Ok(graded_codimension(&a.trivially_graded(), n, opts)?.total)
}

/// Graded rows for `n = 1..=max_n`, optionally with ordinary codimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimTable {
    pub rows: Vec<CodimRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordinary: Option<Vec<OrdinaryValue>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OrdinaryValue(#[serde(serialize_with = "ser_big")] pub BigUint);

pub fn codim_table(a: &GradedAlgebra, max_n: usize, ordinary: bool, opts: &CodimOptions) -> Result<CodimTable> {
    let mut rows = Vec::with_capacity(max_n);
    let mut ord = ordinary.then(Vec::new);
    for n in 1..=max_n {
        rows.push(graded_codimension(a, n, opts)?);
        if let Some(o) = ord.as_mut() {
            o.push(OrdinaryValue(ordinary_codimension(a, n, opts)?));
        }
    }
    Ok(CodimTable { rows, ordinary: ord })
}

impl CodimTable {
    /// One line per composition, in the column order
    /// `n,composition,c_component,multinomial,contribution,c_n_G,c_n_ordinary,nth_root`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,composition,c_component,multinomial,contribution,c_n_G,c_n_ordinary,nth_root\n");
        for (idx, row) in self.rows.iter().enumerate() {
            let ordinary = self.ordinary.as_ref().map(|o| o[idx].0.to_string()).unwrap_or_default();
            let root = format!("{:.6}", nth_root(&row.total, row.n));
            for c in &row.components {
                let comp: Vec<String> = c.composition.0.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.n,
                    comp.join(" "),
                    c.c,
                    c.multinomial,
                    c.contribution,
                    row.total,
                    ordinary,
                    root
                ));
            }
        }
        out
    }
}

pub fn nth_root(x: &BigUint, n: usize) -> f64 {
    if n == 0 {
        return f64::NAN;
    }
    x.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / n as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichRow {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub c_n: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub c_n_g: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub upper: BigUint,
    pub lower_tight: bool,
    pub upper_tight: bool,
}

/// Checks `c_n <= c_n^G <= |G|^n c_n` for every row.
pub fn check_sandwich(table: &CodimTable, group_order: usize) -> Result<Vec<SandwichRow>> {
    let ordinary = table
        .ordinary
        .as_ref()
        .ok_or_else(|| Error::Domain("the sandwich check needs ordinary codimensions".into()))?;
    let mut out = Vec::new();
    for (row, c) in table.rows.iter().zip(ordinary) {
        let upper = BigUint::from(group_order).pow(row.n as u32) * &c.0;
        if c.0 > row.total || row.total > upper {
            return Err(validation!(
                "sandwich violated at n = {}: c_n = {}, c_n^G = {}, |G|^n c_n = {}",
                row.n,
                c.0,
                row.total,
                upper
            ));
        }
        out.push(SandwichRow {
            n: row.n,
            c_n: c.0.clone(),
            c_n_g: row.total.clone(),
            lower_tight: c.0 == row.total,
            upper_tight: row.total == upper,
            upper,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrendRow {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub c_n_g: BigUint,
    pub nth_root: String,
    pub ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrendReport {
    pub d: usize,
    pub rows: Vec<TrendRow>,
}

/// `(c_n^G)^{1/n}` and `c_{n+1}^G / c_n^G` beside the structural `d`; display only.
pub fn exponent_trend(table: &CodimTable, d: usize) -> TrendReport {
    let rows = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let ratio = table.rows.get(i + 1).and_then(|next| {
                let (a, b) = (next.total.to_f64()?, row.total.to_f64()?);
                (b != 0.0).then(|| format!("{:.6}", a / b))
            });
            TrendRow { n: row.n, c_n_g: row.total.clone(), nth_root: format!("{:.6}", nth_root(&row.total, row.n)), ratio }
        })
        .collect();
    TrendReport { d, rows }
}
