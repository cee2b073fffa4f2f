//! The structural exponent `d(A)`: the largest total dimension of an
//! admissible chain of distinct graded-simple blocks.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, WedderburnData};
use crate::bsz::{BszData, Triple};
use crate::codim::factorial;
use crate::error::{structural, Error, Result};
use crate::group::GroupElement;
use crate::linalg::{is_zero_vector, Subspace, Vector};
use crate::poly::{evaluate, witness_polynomial, MultiAlternating};

/// An admissible chain with elements `c_1, b_1, c_2, ..., c_k` whose product
/// is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentWitness {
    /// 0-based block indices.
    pub chain: Vec<usize>,
    /// Basis indices `c_1, b_1, c_2, ..., b_{k-1}, c_k`.
    pub elements: Vec<usize>,
    pub product: Vector,
    pub d: usize,
}

impl ExponentWitness {
    pub fn blocks(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().step_by(2).copied()
    }

    pub fn bridges(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().skip(1).step_by(2).copied()
    }

    /// Recomputes the product of the witness elements.
    pub fn reverify(&self, a: &GradedAlgebra) -> bool {
        let mut it = self.elements.iter();
        let Some(&first) = it.next() else { return false };
        let mut acc = a.basis_vector(first);
        for &e in it {
            acc = a.mul_basis_right(&acc, e);
        }
        acc == self.product && !is_zero_vector(&acc)
    }
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    chain: Vec<usize>,
    elements: Vec<&'a str>,
    product: String,
    d: usize,
}

impl ExponentWitness {
    /// JSON form with 1-based chain indices and basis labels.
    pub fn to_json(&self, a: &GradedAlgebra) -> serde_json::Value {
        serde_json::to_value(WitnessJson {
            chain: self.chain.iter().map(|i| i + 1).collect(),
            elements: self.elements.iter().map(|&i| a.label(i)).collect(),
            product: a.format_vector(&self.product),
            d: self.d,
        })
        .expect("plain data")
    }
}

fn block_space(a: &GradedAlgebra, w: &WedderburnData, i: usize) -> Subspace {
    a.span_of(&w.blocks[i].members)
}

/// `C_1 J C_2 ⋯ J C_k != 0`, with a witness when it holds.
pub fn is_admissible(a: &GradedAlgebra, w: &WedderburnData, chain: &[usize]) -> Result<Option<ExponentWitness>> {
    if chain.is_empty() {
        return Err(Error::Domain("the chain is empty".into()));
    }
    let mut seen = vec![false; w.blocks.len()];
    for &c in chain {
        if c >= w.blocks.len() {
            return Err(Error::Domain(format!("block {} does not exist", c + 1)));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::Domain(format!("block {} repeats in the chain", c + 1)));
        }
    }
    let j = a.span_of(&w.radical);
    let mut s = block_space(a, w, chain[0]);
    for &c in &chain[1..] {
        s = a.subspace_product(&a.subspace_product(&s, &j), &block_space(a, w, c));
    }
    if s.is_zero() {
        return Ok(None);
    }
    Ok(Some(extract_witness(a, w, chain)))
}

/// Greedy walk: pick basis elements one factor at a time, keeping the
/// prefix times the product of the remaining factor spaces nonzero.
fn extract_witness(a: &GradedAlgebra, w: &WedderburnData, chain: &[usize]) -> ExponentWitness {
    let j = a.span_of(&w.radical);
    // factors: C_1, J, C_2, ..., J, C_k as basis index lists
    let mut factors: Vec<&[usize]> = Vec::new();
    for (n, &c) in chain.iter().enumerate() {
        if n > 0 {
            factors.push(&w.radical);
        }
        factors.push(&w.blocks[c].members);
    }
    // suffix[i] = factor_i · factor_{i+1} ⋯ ; suffix[len] = None stands for the scalars
    let mut suffix: Vec<Option<Subspace>> = vec![None; factors.len() + 1];
    for i in (0..factors.len()).rev() {
        let here = if i % 2 == 0 { block_space(a, w, chain[i / 2]) } else { j.clone() };
        suffix[i] = Some(match &suffix[i + 1] {
            None => here,
            Some(rest) => a.subspace_product(&here, rest),
        });
    }
    let mut prefix: Option<Vector> = None;
    let mut elements = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        let choice = f
            .iter()
            .copied()
            .find(|&x| {
                let px = match &prefix {
                    None => a.basis_vector(x),
                    Some(p) => a.mul_basis_right(p, x),
                };
                match &suffix[i + 1] {
                    None => !is_zero_vector(&px),
                    Some(rest) => rest.basis().iter().any(|s| !is_zero_vector(&a.mul(&px, s))),
                }
            })
            .expect("admissible chains admit a greedy witness");
        prefix = Some(match &prefix {
            None => a.basis_vector(choice),
            Some(p) => a.mul_basis_right(p, choice),
        });
        elements.push(choice);
    }
    let d = chain.iter().map(|&c| w.blocks[c].members.len()).sum();
    ExponentWitness { chain: chain.to_vec(), elements, product: prefix.expect("nonempty chain"), d }
}

/// `d(A)` and a witness chain attaining it; `(0, None)` when there are no blocks.
pub fn graded_exponent(a: &GradedAlgebra, w: &WedderburnData) -> Result<(usize, Option<ExponentWitness>)> {
    let m = w.blocks.len();
    if m == 0 {
        return Ok((0, None));
    }
    let j = a.span_of(&w.radical);
    let dims: Vec<usize> = w.blocks.iter().map(|b| b.members.len()).collect();
    let spaces: Vec<Subspace> = (0..m).map(|i| block_space(a, w, i)).collect();
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    struct Search<'a> {
        a: &'a GradedAlgebra,
        j: &'a Subspace,
        dims: &'a [usize],
        spaces: &'a [Subspace],
    }
    fn dfs(s: &Search<'_>, chain: &mut Vec<usize>, used: &mut [bool], space: &Subspace, dim: usize, best: &mut (usize, Vec<usize>)) {
        if dim > best.0 {
            *best = (dim, chain.clone());
        }
        let remaining: usize = s.dims.iter().zip(used.iter()).filter(|(_, &u)| !u).map(|(d, _)| d).sum();
        if dim + remaining <= best.0 {
            return;
        }
        let through = s.a.subspace_product(space, s.j);
        if through.is_zero() {
            return;
        }
        for b in 0..s.dims.len() {
            if used[b] {
                continue;
            }
            let next = s.a.subspace_product(&through, &s.spaces[b]);
            if next.is_zero() {
                continue;
            }
            used[b] = true;
            chain.push(b);
            dfs(s, chain, used, &next, dim + s.dims[b], best);
            chain.pop();
            used[b] = false;
        }
    }
    let search = Search { a, j: &j, dims: &dims, spaces: &spaces };
    for b in 0..m {
        let mut used = vec![false; m];
        used[b] = true;
        dfs(&search, &mut vec![b], &mut used, &spaces[b], dims[b], &mut best);
    }
    let witness = extract_witness(a, w, &best.1);
    Ok((best.0, Some(witness)))
}

/// A nonzero evaluation of the witness polynomial of an admissible chain.
#[derive(Clone, Debug)]
pub struct WitnessEvaluation {
    pub polynomial: MultiAlternating,
    pub assignment: Vec<Vector>,
    pub value: Vector,
    /// `(prod_{i,g} q^i_g!)^{2t} c_1 b_1 ⋯ c_k`
    pub expected: Vector,
    pub factorial_constant: BigUint,
}

/// Builds the witness polynomial for `witness.chain` and evaluates it at
/// the canonical assignment: block variables at the block's Ω elements,
/// `y_i = c_i φ̄_i^{-1}` (inverse of the block's central value inside the
/// block) and `z_i = b_i`.
pub fn evaluate_witness(
    a: &GradedAlgebra,
    w: &WedderburnData,
    witness: &ExponentWitness,
    t: usize,
    ceiling: usize,
) -> Result<WitnessEvaluation> {
    if is_admissible(a, w, &witness.chain)?.is_none() {
        return Err(Error::Domain("the chain is not admissible".into()));
    }
    let g = a.group();
    let mut datas: Vec<&BszData> = Vec::new();
    for &c in &witness.chain {
        let model = w.blocks[c]
            .model
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("block {} has no model to build its central polynomial from", c + 1)))?;
        datas.push(&model.data);
    }
    let cs: Vec<usize> = witness.blocks().collect();
    let bs: Vec<usize> = witness.bridges().collect();
    // the central values have trivial degree, so bridges keep the degrees of c_i and b_i
    let mut bridge_degrees: Vec<GroupElement> = Vec::new();
    for (i, &c) in cs.iter().enumerate() {
        bridge_degrees.push(a.degree(c).clone());
        if let Some(&b) = bs.get(i) {
            bridge_degrees.push(a.degree(b).clone());
        }
    }
    let (poly, centrals) = witness_polynomial(&datas, &bridge_degrees, t, ceiling)?;
    let conductor = poly.poly.conductor();
    if a.conductor() % conductor != 0 {
        return Err(structural!("algebra conductor {} does not contain the block conductor {}", a.conductor(), conductor));
    }
    let mut assignment: Vec<Vector> = Vec::with_capacity(poly.poly.roster().len());
    let mut factorials = BigUint::from(1u32);
    for (i, (&c, central)) in cs.iter().zip(&centrals).enumerate() {
        let block = &w.blocks[witness.chain[i]];
        let model = block.model.as_ref().expect("checked above");
        let index: HashMap<&Triple, usize> = model.assignment.iter().zip(&block.members).map(|(t, &m)| (t, m)).collect();
        let vals: Vec<Vector> = central.slots.iter().map(|t| a.basis_vector(index[t])).collect();
        let value = evaluate(&central.alt.poly, a, &vals)?;
        if !g.is_identity(&central.alt.poly.degree())? {
            return Err(structural!("central polynomial of block {} has nontrivial degree", witness.chain[i] + 1));
        }
        let inv = a
            .inverse_within(&value, &block.members)
            .ok_or_else(|| Error::Arithmetic(format!("central value of block {} is not invertible", witness.chain[i] + 1)))?;
        assignment.push(a.mul(&a.basis_vector(c), &inv));
        assignment.extend(vals);
        if let Some(&b) = bs.get(i) {
            assignment.push(a.basis_vector(b));
        }
        let gdims = block_gdims(a, &block.members);
        for q in gdims {
            factorials *= factorial(q).pow(2 * t as u32);
        }
    }
    let value = evaluate(&poly.poly, a, &assignment)?;
    let scale = crate::cyclo::CycloScalar::from_rational(
        a.conductor(),
        num_rational::BigRational::from_integer(num_bigint::BigInt::from(factorials.clone())),
    );
    let expected = witness.product.iter().map(|x| x * &scale).collect();
    Ok(WitnessEvaluation { polynomial: poly, assignment, value, expected, factorial_constant: factorials })
}

fn block_gdims(a: &GradedAlgebra, members: &[usize]) -> Vec<usize> {
    let mut dims = vec![0; a.group().order()];
    for &i in members {
        dims[a.group().index_of(a.degree(i))] += 1;
    }
    dims
}
