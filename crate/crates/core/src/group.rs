//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are reduced exponent vectors and compare structurally. The
//! enumeration order is lexicographic on exponent vectors with the first
//! factor most significant, so the identity is always element 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloScalar, RootOfUnity};
use crate::error::{structural, validation, Result};

/// An element of some [`AbelianGroup`], stored as canonical exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u32>);

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// `C_{n_1} x ... x C_{n_q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(pos) = orders.iter().position(|&n| n == 0) {
            return Err(structural!("cyclic factor {} has order 0", pos + 1));
        }
        if orders.is_empty() {
            return Err(structural!("group needs at least one cyclic factor"));
        }
        let size = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64));
        match size {
            Some(s) if s <= u32::MAX as u64 => Ok(Self { orders }),
            _ => Err(structural!("group order overflows")),
        }
    }

    /// The group with one element.
    pub fn trivial() -> Self {
        Self { orders: vec![1] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Reduces arbitrary integer exponents into canonical form.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.orders.len() {
            return Err(structural!(
                "exponent vector of length {} for a group with {} factors",
                exps.len(),
                self.orders.len()
            ));
        }
        Ok(GroupElement(
            exps.iter()
                .zip(&self.orders)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(e, n)| e < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(structural!("element {g} does not belong to group {self}"))
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inv_unchecked(g))
    }

    pub fn is_identity(&self, g: &GroupElement) -> Result<bool> {
        self.check(g)?;
        Ok(g.0.iter().all(|&e| e == 0))
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(g)?;
        let exps: Vec<i64> = g.0.iter().map(|&e| e as i64 * k).collect();
        self.element(&exps)
    }

    pub(crate) fn mul_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub(crate) fn inv_unchecked(&self, g: &GroupElement) -> GroupElement {
        GroupElement(g.0.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect())
    }

    /// Multiplicative order of `g`.
    pub fn element_order(&self, g: &GroupElement) -> Result<u32> {
        self.check(g)?;
        Ok(g.0
            .iter()
            .zip(&self.orders)
            .map(|(&e, &n)| n / e.gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o)))
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, n| acc.lcm(n))
    }

    /// Position of `g` in the enumeration order.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&e, &n)| acc * n as usize + e as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut exps = vec![0u32; self.orders.len()];
        for (slot, &n) in exps.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        GroupElement(exps)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            members: self.elements(),
            generators: (0..self.rank())
                .map(|i| {
                    let mut e = vec![0; self.rank()];
                    e[i] = 1 % self.orders[i];
                    GroupElement(e)
                })
                .collect(),
        }
    }

    /// Smallest subgroup containing `gens`, by saturation.
    pub fn span(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(0);
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul_unchecked(&x, g);
                if seen.insert(self.index_of(&y)) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            parent: self.clone(),
            members: seen.into_iter().map(|i| self.element_at(i)).collect(),
            generators: gens.to_vec(),
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A subgroup, kept as its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: AbelianGroup,
    members: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl Subgroup {
    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    /// Members in enumeration order; the identity comes first.
    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members
            .binary_search_by_key(&self.parent.index_of(g), |m| self.parent.index_of(m))
            .is_ok()
            && self.parent.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|m| other.contains(m))
    }

    /// Position of `g` among the members.
    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        let key = self.parent.index_of(g);
        self.members
            .binary_search_by_key(&key, |m| self.parent.index_of(m))
            .ok()
            .filter(|_| self.parent.contains(g))
    }

    /// Least common multiple of the member orders.
    pub fn exponent(&self) -> u32 {
        self.members
            .iter()
            .map(|m| self.parent.element_order(m).unwrap_or(1))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Canonical representative (enumeration-minimal member) of the coset `g·self`.
    pub fn coset_rep(&self, g: &GroupElement) -> GroupElement {
        self.members
            .iter()
            .map(|n| self.parent.mul_unchecked(g, n))
            .min_by_key(|x| self.parent.index_of(x))
            .expect("subgroup contains the identity")
    }

    /// Splits the subgroup into an internal direct product of cyclic
    /// subgroups, returning generators and their orders.
    ///
    /// Greedy: take the element of largest order modulo the part already
    /// split off, then correct the lift so its order matches.
    pub fn cyclic_decomposition(&self) -> Vec<(GroupElement, u32)> {
        let g = &self.parent;
        let mut chosen: Vec<(GroupElement, u32)> = Vec::new();
        let mut span = g.span(&[]).expect("identity span");
        while span.order() < self.order() {
            let mut best: Option<(GroupElement, u32)> = None;
            for x in &self.members {
                let mut o = 1u32;
                let mut y = x.clone();
                while !span.contains(&y) {
                    y = g.mul_unchecked(&y, x);
                    o += 1;
                }
                if best.as_ref().map_or(true, |(_, bo)| o > *bo) {
                    best = Some((x.clone(), o));
                }
            }
            let (x, o) = best.expect("members outside span exist");
            let target = g.pow(&x, o as i64).expect("member");
            let s = span
                .members
                .iter()
                .find(|s| g.pow(s, o as i64).expect("member") == target)
                .expect("a correcting element exists when the quotient order is maximal")
                .clone();
            let gen = g.mul_unchecked(&x, &g.inv_unchecked(&s));
            chosen.push((gen, o));
            let gens: Vec<GroupElement> = chosen.iter().map(|(e, _)| e.clone()).collect();
            span = g.span(&gens).expect("members");
        }
        chosen
    }
}

/// One transversal of `n` in `h`: the enumeration-minimal element of each coset.
pub fn transversal(n: &Subgroup, h: &Subgroup) -> Result<Vec<GroupElement>> {
    if !n.is_subgroup_of(h) {
        return Err(structural!("N is not contained in H"));
    }
    let g = &h.parent;
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut reps = Vec::with_capacity(h.order() / n.order());
    for x in &h.members {
        if covered.contains(&g.index_of(x)) {
            continue;
        }
        reps.push(x.clone());
        for m in &n.members {
            covered.insert(g.index_of(&g.mul_unchecked(x, m)));
        }
    }
    Ok(reps)
}

/// The `|N|` pairwise disjoint transversals `T_p = n_p · T_1`, where
/// `n_1 = 1, n_2, ...` enumerate `N`.
pub fn disjoint_transversals(n: &Subgroup, h: &Subgroup) -> Result<Vec<Vec<GroupElement>>> {
    let base = transversal(n, h)?;
    let g = &h.parent;
    Ok(n.members
        .iter()
        .map(|np| base.iter().map(|t| g.mul_unchecked(np, t)).collect())
        .collect())
}

/// Alternating bicharacter on `H`, given on ordered generator pairs.
///
/// `H` must be the internal direct product of the cyclic subgroups generated
/// by `generators`; every element then has unique coordinates
/// `(r_1, ..., r_q)` with `0 <= r_i < n_i`.
#[derive(Clone, Debug)]
pub struct AlternatingForm {
    subgroup: Subgroup,
    generators: Vec<GroupElement>,
    gen_orders: Vec<u32>,
    values: BTreeMap<(usize, usize), RootOfUnity>,
    coords: BTreeMap<usize, Vec<u32>>,
}

impl AlternatingForm {
    /// `values` maps 0-based pairs `(i, j)` with `i < j` to `alpha(h_i, h_j)`;
    /// missing pairs are trivial.
    pub fn new(
        group: &AbelianGroup,
        generators: Vec<GroupElement>,
        values: BTreeMap<(usize, usize), RootOfUnity>,
    ) -> Result<Self> {
        let subgroup = group.span(&generators)?;
        let gen_orders: Vec<u32> = generators
            .iter()
            .map(|h| group.element_order(h))
            .collect::<Result<_>>()?;
        let product: usize = gen_orders.iter().map(|&o| o as usize).product();
        if product != subgroup.order() {
            return Err(validation!(
                "generators do not give a direct decomposition: product of orders {} but |H| = {}",
                product,
                subgroup.order()
            ));
        }
        let mut coords = BTreeMap::new();
        let mut exps = vec![0u32; generators.len()];
        loop {
            let mut h = group.identity();
            for (gen, &e) in generators.iter().zip(&exps) {
                h = group.mul_unchecked(&h, &group.pow(gen, e as i64)?);
            }
            coords.insert(group.index_of(&h), exps.clone());
            // odometer over coordinate vectors
            let mut i = 0;
            while i < exps.len() {
                exps[i] += 1;
                if exps[i] < gen_orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
        for &(i, j) in values.keys() {
            if i >= j || j >= generators.len() {
                return Err(structural!(
                    "form value on pair ({}, {}) is not an ordered generator pair",
                    i + 1,
                    j + 1
                ));
            }
        }
        Ok(Self { subgroup, generators, gen_orders, values, coords })
    }

    pub fn trivial(subgroup_gens: Vec<GroupElement>, group: &AbelianGroup) -> Result<Self> {
        Self::new(group, subgroup_gens, BTreeMap::new())
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.subgroup.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_orders(&self) -> &[u32] {
        &self.gen_orders
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), RootOfUnity> {
        &self.values
    }

    /// Checks that each `alpha(h_i, h_j)` has order dividing `gcd(n_i, n_j)`.
    pub fn validate(&self) -> Result<()> {
        for (&(i, j), v) in &self.values {
            let bound = self.gen_orders[i].gcd(&self.gen_orders[j]);
            if bound % v.order() != 0 {
                return Err(validation!(
                    "alpha(h_{}, h_{}) = {} has order {} which does not divide gcd({}, {}) = {}",
                    i + 1,
                    j + 1,
                    v,
                    v.order(),
                    self.gen_orders[i],
                    self.gen_orders[j],
                    bound
                ));
            }
        }
        Ok(())
    }

    /// Coordinates of `h` with respect to the ordered generators.
    pub fn coordinates(&self, h: &GroupElement) -> Result<&[u32]> {
        if !self.subgroup.contains(h) {
            return Err(structural!("element {h} is not in H"));
        }
        Ok(&self.coords[&self.group().index_of(h)])
    }

    /// Common conductor `L` with every generator value a power of `zeta_L`.
    pub fn conductor(&self) -> u32 {
        self.values.values().fold(1, |acc, v| acc.lcm(&v.order()))
    }

    fn pair_exponent(&self, i: usize, j: usize, l: u32) -> u64 {
        self.values
            .get(&(i, j))
            .map(|v| v.exponent_over(l))
            .unwrap_or(0)
    }

    /// `alpha(h, h')`, extended biadditively from the generator values.
    pub fn eval(&self, h: &GroupElement, h2: &GroupElement) -> Result<RootOfUnity> {
        let r = self.coordinates(h)?;
        let s = self.coordinates(h2)?;
        let l = self.conductor() as i64;
        let mut acc: i64 = 0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                let a = self.pair_exponent(i, j, l as u32) as i64;
                let cross = r[i] as i64 * s[j] as i64 - r[j] as i64 * s[i] as i64;
                acc = (acc + a * cross.rem_euclid(l)).rem_euclid(l);
            }
        }
        Ok(RootOfUnity::new(acc as u64, l as u32))
    }

    /// The canonical cocycle `f_alpha(h, h') = prod_{i<j} alpha(h_j, h_i)^{r_j s_i}`.
    pub fn canonical_cocycle(&self, h: &GroupElement, h2: &GroupElement) -> Result<RootOfUnity> {
        let r = self.coordinates(h)?;
        let s = self.coordinates(h2)?;
        let l = self.conductor() as i64;
        let mut acc: i64 = 0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                // alpha(h_j, h_i) = alpha(h_i, h_j)^{-1}
                let a = self.pair_exponent(i, j, l as u32) as i64;
                acc = (acc - a * (r[j] as i64 * s[i] as i64)).rem_euclid(l);
            }
        }
        Ok(RootOfUnity::new(acc as u64, l as u32))
    }

    pub fn cocycle_scalar(&self, h: &GroupElement, h2: &GroupElement) -> Result<CycloScalar> {
        Ok(self.canonical_cocycle(h, h2)?.to_scalar())
    }

    /// `N = { n in H : alpha(n, h) = 1 for all h in H }`, tested on generators.
    pub fn radical_subgroup(&self) -> Subgroup {
        let g = self.group();
        let members: Vec<GroupElement> = self
            .subgroup
            .members
            .iter()
            .filter(|n| {
                self.generators
                    .iter()
                    .all(|h| self.eval(n, h).map(|v| v.is_one()).unwrap_or(false))
            })
            .cloned()
            .collect();
        let generators = members.iter().filter(|m| !g.is_identity(m).unwrap_or(true)).cloned().collect();
        Subgroup { parent: g.clone(), members, generators }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &AbelianGroup, e: &[i64]) -> GroupElement {
        g.element(e).unwrap()
    }

    #[test]
    fn modular_products() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        assert_eq!(z4.mul(&el(&z4, &[3]), &el(&z4, &[2])).unwrap(), el(&z4, &[1]));
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(v4.mul(&el(&v4, &[1, 0]), &el(&v4, &[0, 1])).unwrap(), el(&v4, &[1, 1]));
        for x in v4.elements() {
            assert_eq!(v4.mul(&x, &v4.identity()).unwrap(), x);
            assert!(v4.is_identity(&v4.mul(&x, &v4.inv(&x).unwrap()).unwrap()).unwrap());
        }
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        assert!(matches!(
            z4.mul(&v4.identity(), &z4.identity()),
            Err(crate::Error::Structural(_))
        ));
        assert!(z4.mul(&GroupElement(vec![4]), &z4.identity()).is_err());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for orders in [vec![2, 2, 2], vec![4, 4], vec![2, 8], vec![3, 5], vec![16]] {
            let g = AbelianGroup::new(orders).unwrap();
            let els = g.elements();
            for a in &els {
                for b in &els {
                    let ab = g.mul(a, b).unwrap();
                    assert_eq!(ab, g.mul(b, a).unwrap());
                    for c in &els {
                        assert_eq!(
                            g.mul(&ab, c).unwrap(),
                            g.mul(a, &g.mul(b, c).unwrap()).unwrap()
                        );
                    }
                }
                assert_eq!(g.element_at(g.index_of(a)), *a);
            }
        }
    }

    #[test]
    fn spans() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        let s = z4.span(&[el(&z4, &[2])]).unwrap();
        assert_eq!(s.members(), &[el(&z4, &[0]), el(&z4, &[2])]);
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(v4.span(&[]).unwrap().members(), &[v4.identity()]);
        let z6 = AbelianGroup::new(vec![6]).unwrap();
        let s = z6.span(&[el(&z6, &[2]), el(&z6, &[3])]).unwrap();
        assert_eq!(s.members(), z6.elements().as_slice());
    }

    #[test]
    fn transversals() {
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        let h = v4.whole();
        assert_eq!(transversal(&h, &h).unwrap(), vec![v4.identity()]);
        let triv = v4.span(&[]).unwrap();
        assert_eq!(transversal(&triv, &h).unwrap(), v4.elements());
        let n = v4.span(&[el(&v4, &[1, 0])]).unwrap();
        assert_eq!(transversal(&n, &h).unwrap(), vec![el(&v4, &[0, 0]), el(&v4, &[0, 1])]);
        assert!(transversal(&h, &n).is_err());
    }

    #[test]
    fn disjoint_transversal_shifts() {
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        let h = z2.whole();
        assert_eq!(
            disjoint_transversals(&h, &h).unwrap(),
            vec![vec![el(&z2, &[0])], vec![el(&z2, &[1])]]
        );
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        let n = z4.span(&[el(&z4, &[2])]).unwrap();
        assert_eq!(
            disjoint_transversals(&n, &z4.whole()).unwrap(),
            vec![
                vec![el(&z4, &[0]), el(&z4, &[1])],
                vec![el(&z4, &[2]), el(&z4, &[3])]
            ]
        );
    }

    #[test]
    fn transversal_partitions_exhaustive() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let h = g.whole();
        let els = g.elements();
        for a in &els {
            for b in &els {
                let n = g.span(&[a.clone(), b.clone()]).unwrap();
                let t = transversal(&n, &h).unwrap();
                assert_eq!(t.len() * n.order(), h.order());
                let mut all: Vec<GroupElement> =
                    disjoint_transversals(&n, &h).unwrap().into_iter().flatten().collect();
                all.sort_by_key(|x| g.index_of(x));
                assert_eq!(all, els);
            }
        }
    }

    fn v4_form(value: RootOfUnity) -> AlternatingForm {
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        let gens = vec![el(&v4, &[1, 0]), el(&v4, &[0, 1])];
        AlternatingForm::new(&v4, gens, BTreeMap::from([((0, 1), value)])).unwrap()
    }

    #[test]
    fn radical_of_nondegenerate_form_is_trivial() {
        let form = v4_form(RootOfUnity::new(1, 2));
        let n = form.radical_subgroup();
        assert_eq!(n.order(), 1);
        // brute force against every element
        let h = form.subgroup().clone();
        for x in h.members() {
            let central = h.members().iter().all(|y| form.eval(x, y).unwrap().is_one());
            assert_eq!(central, n.contains(x));
        }
    }

    #[test]
    fn radical_of_trivial_form_is_everything() {
        let form = v4_form(RootOfUnity::new(0, 1));
        assert_eq!(form.radical_subgroup().order(), 4);
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        let f = AlternatingForm::trivial(vec![el(&z2, &[1])], &z2).unwrap();
        assert_eq!(f.radical_subgroup().order(), 2);
    }

    #[test]
    fn form_validation() {
        assert!(v4_form(RootOfUnity::new(1, 2)).validate().is_ok());
        assert!(v4_form(RootOfUnity::new(0, 1)).validate().is_ok());
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        let f = AlternatingForm::new(
            &g,
            vec![el(&g, &[1, 0]), el(&g, &[0, 1])],
            BTreeMap::from([((0, 1), RootOfUnity::new(1, 2))]),
        )
        .unwrap();
        let err = f.validate().unwrap_err();
        assert!(err.to_string().contains("alpha(h_1, h_2)"), "{err}");
    }

    #[test]
    fn non_direct_generators_rejected() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        let r = AlternatingForm::trivial(vec![el(&z4, &[1]), el(&z4, &[2])], &z4);
        assert!(r.is_err());
    }

    #[test]
    fn form_is_alternating_and_biadditive() {
        let g = AbelianGroup::new(vec![4, 4]).unwrap();
        let f = AlternatingForm::new(
            &g,
            vec![el(&g, &[1, 0]), el(&g, &[0, 1])],
            BTreeMap::from([((0, 1), RootOfUnity::new(1, 4))]),
        )
        .unwrap();
        for a in g.elements() {
            assert!(f.eval(&a, &a).unwrap().is_one());
            for b in g.elements() {
                let ab = f.eval(&a, &b).unwrap();
                let ba = f.eval(&b, &a).unwrap();
                assert!(ab.mul(&ba).is_one());
                for c in g.elements() {
                    let lhs = f.eval(&g.mul(&a, &b).unwrap(), &c).unwrap();
                    let rhs = f.eval(&a, &c).unwrap().mul(&f.eval(&b, &c).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn cyclic_decomposition_is_direct() {
        for orders in [vec![2, 4], vec![6], vec![2, 2, 2], vec![4, 6]] {
            let g = AbelianGroup::new(orders).unwrap();
            for a in g.elements().iter().step_by(3) {
                for b in g.elements().iter().step_by(5) {
                    let s = g.span(&[a.clone(), b.clone()]).unwrap();
                    let dec = s.cyclic_decomposition();
                    let prod: usize = dec.iter().map(|(_, o)| *o as usize).product();
                    assert_eq!(prod, s.order());
                    for (x, o) in &dec {
                        assert_eq!(g.element_order(x).unwrap(), *o);
                    }
                    let gens: Vec<_> = dec.iter().map(|(x, _)| x.clone()).collect();
                    assert_eq!(g.span(&gens).unwrap().members(), s.members());
                }
            }
        }
    }
}
