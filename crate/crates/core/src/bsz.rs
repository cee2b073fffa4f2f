//! Graded-simple algebras `F^f H ⊗ M_k(F)` built from a subgroup, an
//! alternating form and a tuple of group elements, together with the
//! central idempotents of the radical part and the Ω partition of the
//! basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{Block, GradedAlgebra, Product, WedderburnData};
use crate::cyclo::{CycloScalar, RootOfUnity};
use crate::error::{structural, validation, Result};
use crate::group::{AbelianGroup, AlternatingForm, GroupElement, Subgroup};
use crate::linalg::{rank, Vector};

/// The data `(H, alpha, (g_1, ..., g_k))` of a graded-simple algebra.
#[derive(Clone, Debug)]
pub struct BszData {
    alpha: AlternatingForm,
    gtuple: Vec<GroupElement>,
    radical: Subgroup,
    r: usize,
}

/// Basis element `b_h ⊗ E_{i,j}`; `i` and `j` are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub h: GroupElement,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}E({},{})", self.h, self.i + 1, self.j + 1)
    }
}

impl BszData {
    pub fn new(alpha: AlternatingForm, gtuple: Vec<GroupElement>) -> Result<Self> {
        alpha.validate()?;
        let g = alpha.group();
        if gtuple.is_empty() {
            return Err(structural!("the tuple (g_1, ..., g_k) must be nonempty"));
        }
        for x in &gtuple {
            if !g.contains(x) {
                return Err(structural!("tuple entry {x} is not an element of {g}"));
            }
        }
        if !g.is_identity(&gtuple[0])? {
            return Err(validation!("g_1 must be the identity, got {}", gtuple[0]));
        }
        let radical = alpha.radical_subgroup();
        let index = alpha.subgroup().order() / radical.order();
        let r = (index as f64).sqrt().round() as usize;
        if r * r != index {
            return Err(validation!("[H:N] = {index} is not a perfect square"));
        }
        Ok(Self { alpha, gtuple, radical, r })
    }

    pub fn group(&self) -> &AbelianGroup {
        self.alpha.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.alpha.subgroup()
    }

    pub fn alpha(&self) -> &AlternatingForm {
        &self.alpha
    }

    pub fn k(&self) -> usize {
        self.gtuple.len()
    }

    pub fn gtuple(&self) -> &[GroupElement] {
        &self.gtuple
    }

    /// The radical subgroup `N` of the form.
    pub fn radical(&self) -> &Subgroup {
        &self.radical
    }

    /// `m = |N|`
    pub fn m(&self) -> usize {
        self.radical.order()
    }

    /// `r` with `r^2 = [H:N]`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.subgroup().order() * self.k() * self.k()
    }

    /// `lcm(exp N, orders of the form values)`.
    pub fn conductor(&self) -> u32 {
        self.radical.exponent().lcm(&self.alpha.conductor())
    }

    /// Basis triples ordered by `h` (enumeration order of `H`), then `i`, then `j`.
    pub fn basis_triples(&self) -> Vec<Triple> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.dim());
        for h in self.subgroup().members() {
            for i in 0..k {
                for j in 0..k {
                    out.push(Triple { h: h.clone(), i, j });
                }
            }
        }
        out
    }

    /// `g_i^{-1} h g_j`
    pub fn degree(&self, t: &Triple) -> GroupElement {
        let g = self.group();
        let x = g.mul_unchecked(&g.inv_unchecked(&self.gtuple[t.i]), &t.h);
        g.mul_unchecked(&x, &self.gtuple[t.j])
    }

    /// `(b_h ⊗ E_ij)(b_h' ⊗ E_i'j')` as a coefficient on a triple, or `None` when zero.
    pub fn triple_product(&self, a: &Triple, b: &Triple) -> Option<(Triple, RootOfUnity)> {
        if a.j != b.i {
            return None;
        }
        let f = self.alpha.canonical_cocycle(&a.h, &b.h).expect("triples lie in H");
        let h = self.group().mul_unchecked(&a.h, &b.h);
        Some((Triple { h, i: a.i, j: b.j }, f))
    }
}

/// `f_alpha(h, h')` as a scalar.
pub fn canonical_cocycle(alpha: &AlternatingForm, h: &GroupElement, h2: &GroupElement) -> Result<CycloScalar> {
    alpha.cocycle_scalar(h, h2)
}

fn twisted_conductor(alpha: &AlternatingForm) -> u32 {
    alpha.radical_subgroup().exponent().lcm(&alpha.conductor())
}

/// `F^f H` on the basis `u_h`, graded by the ambient group with `deg u_h = h`.
pub fn build_twisted_group_algebra(alpha: &AlternatingForm) -> Result<GradedAlgebra> {
    alpha.validate()?;
    let h = alpha.subgroup();
    let g = alpha.group();
    let conductor = twisted_conductor(alpha);
    let members = h.members();
    let labels = members.iter().map(|x| format!("u{x}")).collect();
    let mut products = Vec::with_capacity(members.len() * members.len());
    for (a, x) in members.iter().enumerate() {
        for (b, y) in members.iter().enumerate() {
            let c = alpha.canonical_cocycle(x, y)?.to_scalar_in(conductor)?;
            let target = h.position(&g.mul_unchecked(x, y)).expect("H is closed");
            products.push((a, b, vec![(target, c)]));
        }
    }
    GradedAlgebra::new(g.clone(), conductor, labels, members.to_vec(), products)
}

/// The algebra on triples `(h, i, j)`, declared as a single graded-simple block.
pub fn build_g_simple(data: &BszData) -> Result<(GradedAlgebra, WedderburnData)> {
    let triples = data.basis_triples();
    let conductor = data.conductor();
    let pos: HashMap<&Triple, usize> = triples.iter().enumerate().map(|(a, t)| (t, a)).collect();
    let mut products = Vec::new();
    for (a, x) in triples.iter().enumerate() {
        for (b, y) in triples.iter().enumerate() {
            if let Some((t, f)) = data.triple_product(x, y) {
                products.push((a, b, vec![(pos[&t], f.to_scalar_in(conductor)?)]));
            }
        }
    }
    let labels = triples.iter().map(Triple::to_string).collect();
    let degrees = triples.iter().map(|t| data.degree(t)).collect();
    let algebra = GradedAlgebra::new(data.group().clone(), conductor, labels, degrees, products)?;
    let model = BlockModel { data: data.clone(), assignment: triples };
    let w = WedderburnData {
        blocks: vec![Block { members: (0..algebra.dim()).collect(), model: Some(model) }],
        radical: Vec::new(),
    };
    Ok((algebra, w))
}

/// Orthogonal central idempotents of the subalgebra spanned by `{u_n : n ∈ N}`
/// inside `F^f H`, one per character of `N`.
///
/// Returns the conductor they live over and their coefficient vectors on
/// the basis `u_h` in the enumeration order of `H`. The canonical cocycle
/// restricted to `N` need not be trivial, so each cyclic generator `u_c` of
/// order `o` is first rescaled by a root of unity making `(λ u_c)^o = 1`;
/// the conductor grows when that root is not already available.
pub fn central_idempotents(alpha: &AlternatingForm) -> Result<(u32, Vec<Vector>)> {
    let n = alpha.radical_subgroup();
    let g = alpha.group();
    let decomposition = n.cyclic_decomposition();
    let mut conductor = twisted_conductor(alpha);
    let mut scalings = Vec::with_capacity(decomposition.len());
    for (c, o) in &decomposition {
        // u_c^o = mu * u_1 with mu = prod_{k=1}^{o-1} f(c, c^k)
        let mut mu = RootOfUnity::one();
        let mut power = c.clone();
        for _ in 1..*o {
            mu = mu.mul(&alpha.canonical_cocycle(c, &power)?);
            power = g.mul_unchecked(&power, c);
        }
        let big = o * mu.order();
        let lambda = RootOfUnity::new((big as u64 - mu.exp() % big as u64) % big as u64, big);
        conductor = conductor.lcm(&lambda.order()).lcm(o);
        scalings.push(lambda);
    }
    let t = build_twisted_group_algebra(alpha)?.with_conductor(conductor)?;
    let h = alpha.subgroup();
    let basis_of = |x: &GroupElement| t.basis_vector(h.position(x).expect("N inside H"));
    // powers[j][k] = v_{c_j}^k
    let mut powers: Vec<Vec<Vector>> = Vec::new();
    for ((c, o), lambda) in decomposition.iter().zip(&scalings) {
        let v: Vector = basis_of(c).iter().map(|x| x * &lambda.to_scalar_in(conductor).unwrap()).collect();
        let mut list = vec![t.unit().expect("twisted group algebras are unital")];
        for _ in 1..*o {
            let next = t.mul(list.last().unwrap(), &v);
            list.push(next);
        }
        powers.push(list);
    }
    let orders: Vec<u32> = decomposition.iter().map(|(_, o)| *o).collect();
    let mut out = Vec::new();
    let mut chi = vec![0u32; orders.len()];
    loop {
        let mut e = t.unit().expect("unital");
        for (j, &o) in orders.iter().enumerate() {
            let mut factor = t.zero();
            for (k, vk) in powers[j].iter().enumerate() {
                // zeta_o^{-a_j k}
                let exp = (o as u64 - (chi[j] as u64 * k as u64) % o as u64) % o as u64;
                let z = RootOfUnity::new(exp, o).to_scalar_in(conductor)?;
                for (f, x) in factor.iter_mut().zip(vk) {
                    *f += &(&z * x);
                }
            }
            let scale = BigRational::new(1.into(), (o as i64).into());
            let factor: Vector = factor.iter().map(|x| x.scale(&scale)).collect();
            e = t.mul(&e, &factor);
        }
        out.push(e);
        let mut i = 0;
        while i < chi.len() {
            chi[i] += 1;
            if chi[i] < orders[i] {
                break;
            }
            chi[i] = 0;
            i += 1;
        }
        if i == chi.len() {
            break;
        }
    }
    Ok((conductor, out))
}

/// Primitive idempotents of the group algebra `FN`, with coefficients on the
/// members of `N` in enumeration order.
pub fn fn_idempotents(n: &Subgroup) -> Result<(u32, Vec<Vector>)> {
    let gens = n.cyclic_decomposition().into_iter().map(|(c, _)| c).collect();
    let form = AlternatingForm::new(n.parent(), gens, BTreeMap::new())?;
    central_idempotents(&form)
}

/// The idempotents of [`central_idempotents`] tensored with the identity
/// matrix, as vectors on the basis of [`build_g_simple`].
pub fn block_idempotents(data: &BszData) -> Result<(u32, Vec<Vector>)> {
    let (conductor, es) = central_idempotents(&data.alpha)?;
    let h = data.subgroup();
    let k = data.k();
    let out = es
        .into_iter()
        .map(|e| {
            let mut v = vec![CycloScalar::zero(conductor); data.dim()];
            for (a, c) in e.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for i in 0..k {
                    // triples are ordered (h, i, j)
                    v[a * k * k + i * k + i] = c.clone();
                }
            }
            debug_assert_eq!(h.order() * k * k, data.dim());
            v
        })
        .collect();
    Ok((conductor, out))
}

/// The sets `Ω(1), ..., Ω(m)`; each lists triples in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaPartition {
    pub sets: Vec<Vec<Triple>>,
}

/// Index `p` (0-based) of the set `Ω(p)` containing the triple.
///
/// Writes `h g_i^{-1} g_j = y σ` with `σ` the canonical representative of
/// its coset of `H`, then `y = n t` with `t` in the first transversal of
/// `N` in `H`; `p` is the position of `n` in `N`.
pub fn omega_index(data: &BszData, t: &Triple) -> usize {
    let g = data.group();
    let h = data.subgroup();
    let n = data.radical();
    let x = g.mul_unchecked(&t.h, &g.mul_unchecked(&g.inv_unchecked(&data.gtuple[t.i]), &data.gtuple[t.j]));
    let sigma = h.coset_rep(&x);
    let y = g.mul_unchecked(&x, &g.inv_unchecked(&sigma));
    let rep = n.coset_rep(&y);
    let np = g.mul_unchecked(&y, &g.inv_unchecked(&rep));
    n.position(&np).expect("y lies in the coset rep * N")
}

pub fn omega_partition(data: &BszData) -> OmegaPartition {
    let mut sets = vec![Vec::new(); data.m()];
    for t in data.basis_triples() {
        sets[omega_index(data, &t)].push(t);
    }
    OmegaPartition { sets }
}

/// Summary of a successful [`verify_omega`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub m: usize,
    pub r: usize,
    pub k: usize,
    pub set_sizes: Vec<usize>,
    /// `projection_ranks[p][l]` = rank of `{ e_l x : x ∈ Ω(p) }`.
    pub projection_ranks: Vec<Vec<usize>>,
}

/// Checks cardinality, per-pair multiplicity, transversality, degree
/// coherence and the projection-basis property.
pub fn verify_omega(data: &BszData, om: &OmegaPartition) -> Result<OmegaReport> {
    let (r, k, m) = (data.r(), data.k(), data.m());
    let n = data.radical();
    if om.sets.len() != m {
        return Err(validation!("expected {m} sets, found {}", om.sets.len()));
    }
    for (p, set) in om.sets.iter().enumerate() {
        if set.len() != r * r * k * k {
            return Err(validation!(
                "(a) Ω({}) has {} elements, expected r^2 k^2 = {}",
                p + 1,
                set.len(),
                r * r * k * k
            ));
        }
    }
    for (p, set) in om.sets.iter().enumerate() {
        let mut by_pair: BTreeMap<(usize, usize), Vec<&GroupElement>> = BTreeMap::new();
        for t in set {
            by_pair.entry((t.i, t.j)).or_default().push(&t.h);
        }
        for i in 0..k {
            for j in 0..k {
                let hs = by_pair.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[]);
                if hs.len() != r * r {
                    return Err(validation!(
                        "(b) pair ({}, {}) appears {} times in Ω({}), expected {}",
                        i + 1,
                        j + 1,
                        hs.len(),
                        p + 1,
                        r * r
                    ));
                }
                let mut reps: Vec<GroupElement> = hs.iter().map(|h| n.coset_rep(h)).collect();
                reps.sort();
                if let Some(w) = reps.windows(2).find(|w| w[0] == w[1]) {
                    return Err(validation!(
                        "(c) for pair ({}, {}) in Ω({}) two elements share the N-coset of {}",
                        i + 1,
                        j + 1,
                        p + 1,
                        w[0]
                    ));
                }
            }
        }
    }
    let mut owner: HashMap<Triple, usize> = HashMap::new();
    for (p, set) in om.sets.iter().enumerate() {
        for t in set {
            if owner.insert(t.clone(), p).is_some() {
                return Err(validation!("(d) {t} lies in more than one set"));
            }
        }
    }
    let mut degree_owner: HashMap<GroupElement, (usize, Triple)> = HashMap::new();
    for t in data.basis_triples() {
        let Some(&p) = owner.get(&t) else {
            return Err(validation!("(d) {t} lies in no set"));
        };
        let d = data.degree(&t);
        match degree_owner.get(&d) {
            Some((q, other)) if *q != p => {
                return Err(validation!(
                    "(d) degree {d} is split: {other} in Ω({}) but {t} in Ω({})",
                    q + 1,
                    p + 1
                ))
            }
            Some(_) => {}
            None => {
                degree_owner.insert(d, (p, t));
            }
        }
    }
    let (conductor, idempotents) = block_idempotents(data)?;
    let (algebra, _) = build_g_simple(data)?;
    let algebra = algebra.with_conductor(conductor)?;
    let pos: HashMap<Triple, usize> = data.basis_triples().into_iter().enumerate().map(|(a, t)| (t, a)).collect();
    let want = (k * r) * (k * r);
    let mut projection_ranks = Vec::new();
    for (p, set) in om.sets.iter().enumerate() {
        let mut row = Vec::new();
        for (l, e) in idempotents.iter().enumerate() {
            let images = set.iter().map(|t| algebra.mul(e, &algebra.basis_vector(pos[t])));
            let rk = rank(algebra.dim(), conductor, images);
            if rk != want {
                return Err(validation!(
                    "(e) Ω({}) times e_{} has rank {}, expected (kr)^2 = {}",
                    p + 1,
                    l + 1,
                    rk,
                    want
                ));
            }
            row.push(rk);
        }
        projection_ranks.push(row);
    }
    Ok(OmegaReport { m, r, k, set_sizes: om.sets.iter().map(Vec::len).collect(), projection_ranks })
}

/// Identification of a declared block with a constructed algebra: member
/// `members[a]` of the block corresponds to `assignment[a]`.
#[derive(Clone, Debug)]
pub struct BlockModel {
    pub data: BszData,
    pub assignment: Vec<Triple>,
}

impl BlockModel {
    /// Checks that the assignment is a degree-preserving bijection onto the
    /// basis triples that carries the block's products to the model's.
    pub fn verify(&self, a: &GradedAlgebra, members: &[usize]) -> Result<()> {
        let triples = self.data.basis_triples();
        if self.assignment.len() != members.len() || members.len() != triples.len() {
            return Err(validation!(
                "block has {} elements, model assigns {}, model dimension is {}",
                members.len(),
                self.assignment.len(),
                triples.len()
            ));
        }
        if a.group() != self.data.group() {
            return Err(structural!("model is graded by {} but the algebra by {}", self.data.group(), a.group()));
        }
        let mut sorted = self.assignment.clone();
        sorted.sort();
        let mut expected = triples;
        expected.sort();
        if sorted != expected {
            return Err(validation!("assignment is not a bijection onto the model basis"));
        }
        let common = a.conductor().lcm(&self.data.conductor());
        let index: HashMap<&Triple, usize> = self.assignment.iter().zip(members).map(|(t, &m)| (t, m)).collect();
        for (t, &x) in self.assignment.iter().zip(members) {
            if &self.data.degree(t) != a.degree(x) {
                return Err(validation!(
                    "{} has degree {} but its model {} has degree {}",
                    a.label(x),
                    a.degree(x),
                    t,
                    self.data.degree(t)
                ));
            }
        }
        for (s, &x) in self.assignment.iter().zip(members) {
            for (t, &y) in self.assignment.iter().zip(members) {
                let mut want: Product = Vec::new();
                if let Some((u, f)) = self.data.triple_product(s, t) {
                    want.push((index[&u], f.to_scalar_in(common)?));
                }
                want.sort_by_key(|(i, _)| *i);
                let got: Product = a
                    .basis_product(x, y)
                    .iter()
                    .map(|(i, c)| Ok((*i, c.embed(common)?)))
                    .collect::<Result<_>>()?;
                if got != want {
                    return Err(validation!(
                        "{}*{} does not match the model product {}*{}",
                        a.label(x),
                        a.label(y),
                        s,
                        t
                    ));
                }
            }
        }
        Ok(())
    }

    /// `Ω(p)` translated to basis indices of the ambient algebra.
    pub fn omega_indices(&self, members: &[usize]) -> Vec<Vec<usize>> {
        let index: HashMap<&Triple, usize> = self.assignment.iter().zip(members).map(|(t, &m)| (t, m)).collect();
        omega_partition(&self.data).sets.iter().map(|s| s.iter().map(|t| index[t]).collect()).collect()
    }
}
