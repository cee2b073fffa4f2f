//! Property tests over randomly generated graded-simple data, poset
//! algebras and polynomials.

mod common;

use std::collections::BTreeMap;

use num_integer::Integer;
use proptest::prelude::*;

use common::{corpus, oracle};
use graded_pi::algebra::{validate_wedderburn, Block, GradedAlgebra, WedderburnData};
use graded_pi::bsz::{
    block_idempotents, build_g_simple, build_twisted_group_algebra, canonical_cocycle, omega_partition, verify_omega, BszData,
};
use graded_pi::codim::{check_sandwich, codim_component, codim_table, CodimOptions, DegreeComposition};
use graded_pi::cyclo::{CycloScalar, RootOfUnity};
use graded_pi::exponent::graded_exponent;
use graded_pi::group::{AbelianGroup, AlternatingForm, GroupElement};
use graded_pi::linalg::{is_zero_vector, Subspace};
use graded_pi::poly::{GradedPolynomial, GradedVariable};

const GROUPS: &[&[u32]] = &[&[2], &[3], &[4], &[2, 2], &[6], &[2, 4], &[2, 2, 2], &[3, 3]];

#[derive(Debug, Clone)]
struct BszInput {
    orders: Vec<u32>,
    use_gen: Vec<bool>,
    alpha_exps: Vec<u64>,
    g2: Option<Vec<i64>>,
}

fn bsz_input() -> impl Strategy<Value = BszInput> {
    (0..GROUPS.len()).prop_flat_map(|gi| {
        let orders = GROUPS[gi].to_vec();
        let r = orders.len();
        (
            Just(orders),
            proptest::collection::vec(any::<bool>(), r),
            proptest::collection::vec(0u64..12, r * r),
            proptest::option::of(proptest::collection::vec(0i64..6, r)),
        )
            .prop_map(|(orders, use_gen, alpha_exps, g2)| BszInput { orders, use_gen, alpha_exps, g2 })
    })
}

fn build(input: &BszInput) -> Option<BszData> {
    let g = AbelianGroup::new(input.orders.clone()).ok()?;
    let r = input.orders.len();
    let mut gens = Vec::new();
    let mut gen_orders = Vec::new();
    for i in 0..r {
        if input.use_gen[i] {
            let mut e = vec![0i64; r];
            e[i] = 1;
            gens.push(g.element(&e).ok()?);
            gen_orders.push(input.orders[i]);
        }
    }
    let mut values = BTreeMap::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let m = gen_orders[i].gcd(&gen_orders[j]);
            values.insert((i, j), RootOfUnity::new(input.alpha_exps[i * r + j] % m as u64, m));
        }
    }
    let alpha = AlternatingForm::new(&g, gens, values).ok()?;
    let mut tuple = vec![g.identity()];
    if let Some(e) = &input.g2 {
        tuple.push(g.element(e).ok()?);
    }
    BszData::new(alpha, tuple).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_cocycle_is_a_cocycle(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        let alpha = data.alpha();
        let g = data.group();
        let h = data.subgroup().members().to_vec();
        prop_assume!(h.len() <= 8);
        let f = |x: &GroupElement, y: &GroupElement| alpha.canonical_cocycle(x, y).unwrap();
        for a in &h {
            for b in &h {
                for c in &h {
                    let ab = g.mul(a, b).unwrap();
                    let bc = g.mul(b, c).unwrap();
                    prop_assert_eq!(f(a, b).mul(&f(&ab, c)), f(b, c).mul(&f(a, &bc)));
                    prop_assert_eq!(canonical_cocycle(alpha, a, b).unwrap().embed(2 * alpha.conductor()).unwrap(), f(a, b).to_scalar_in(2 * alpha.conductor()).unwrap());
                }
            }
        }
    }

    #[test]
    fn twisted_basis_commutes_up_to_alpha(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        let alpha = data.alpha();
        let t = build_twisted_group_algebra(alpha).unwrap();
        let h = data.subgroup();
        for (i, x) in h.members().iter().enumerate() {
            for (j, y) in h.members().iter().enumerate() {
                let xy = t.multiply(&t.basis_vector(i), &t.basis_vector(j)).unwrap();
                let yx = t.multiply(&t.basis_vector(j), &t.basis_vector(i)).unwrap();
                let a = alpha.eval(x, y).unwrap().to_scalar_in(t.conductor()).unwrap();
                let rhs: Vec<CycloScalar> = yx.iter().map(|c| c * &a).collect();
                prop_assert_eq!(xy, rhs);
            }
        }
    }

    #[test]
    fn g_simple_construction(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        prop_assume!(data.dim() <= 32);
        let (a, w) = build_g_simple(&data).unwrap();
        prop_assert_eq!(a.dim(), data.subgroup().order() * data.k() * data.k());
        validate_wedderburn(&a, &w).unwrap();
        let g = data.group();
        let mut counts = vec![0usize; g.order()];
        for t in data.basis_triples() {
            counts[g.index_of(&data.degree(&t))] += 1;
        }
        prop_assert_eq!(a.homogeneous_dims().0, counts);
        prop_assert_eq!(data.m() * (data.k() * data.r()).pow(2), a.dim());
    }

    #[test]
    fn block_idempotents_split_the_algebra(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        prop_assume!(data.dim() <= 32);
        let (a, _) = build_g_simple(&data).unwrap();
        let (c, es) = block_idempotents(&data).unwrap();
        let a = a.with_conductor(c.lcm(&a.conductor())).unwrap();
        let es: Vec<Vec<CycloScalar>> = es.into_iter().map(|e| e.iter().map(|x| x.embed(a.conductor()).unwrap()).collect()).collect();
        prop_assert_eq!(es.len(), data.m());
        let mut sum = a.zero();
        for e in &es {
            for (s, x) in sum.iter_mut().zip(e) {
                *s += x;
            }
        }
        prop_assert_eq!(Some(sum), a.unit());
        for (l, e) in es.iter().enumerate() {
            prop_assert!(a.is_central(e));
            for (l2, f) in es.iter().enumerate() {
                let ef = a.multiply(e, f).unwrap();
                if l == l2 {
                    prop_assert_eq!(&ef, e);
                } else {
                    prop_assert!(is_zero_vector(&ef));
                }
            }
            let image = Subspace::spanned_by(a.dim(), a.conductor(), (0..a.dim()).map(|i| a.multiply(e, &a.basis_vector(i)).unwrap()));
            prop_assert_eq!(image.dim(), (data.k() * data.r()).pow(2));
        }
    }

    #[test]
    fn omega_partition_verifies(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        prop_assume!(data.dim() <= 32);
        let om = omega_partition(&data);
        let report = verify_omega(&data, &om).unwrap();
        prop_assert!(report.set_sizes.iter().all(|&s| s == (data.k() * data.r()).pow(2)));
    }

    #[test]
    fn sandwich_holds_on_small_graded_simple_algebras(input in bsz_input()) {
        let Some(data) = build(&input) else { return Ok(()) };
        prop_assume!(data.dim() <= 8);
        let (a, _) = build_g_simple(&data).unwrap();
        let table = codim_table(&a, 3, true, &CodimOptions::default()).unwrap();
        check_sandwich(&table, a.group().order()).unwrap();
    }
}

/// Block upper triangular matrices: diagonal blocks of the given sizes and
/// an off-diagonal block wherever the (transitively closed) relation holds,
/// graded elementarily by `Z2` with `deg E_ij = g_i + g_j`.
struct Poset {
    sizes: Vec<usize>,
    above: Vec<Vec<bool>>,
    algebra: GradedAlgebra,
    w: WedderburnData,
}

fn poset_algebra(sizes: Vec<usize>, edges: &[bool], parity: &[u32]) -> Poset {
    let b = sizes.len();
    let mut above = vec![vec![false; b]; b];
    let mut e = 0;
    for i in 0..b {
        for j in i + 1..b {
            above[i][j] = edges[e % edges.len()];
            e += 1;
        }
    }
    for k in 0..b {
        for i in 0..b {
            for j in 0..b {
                if above[i][k] && above[k][j] {
                    above[i][j] = true;
                }
            }
        }
    }
    let mut block_of = Vec::new();
    for (bi, &s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat(bi).take(s));
    }
    let n = block_of.len();
    let mut units = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if block_of[i] == block_of[j] || above[block_of[i]][block_of[j]] {
                units.push((i, j));
            }
        }
    }
    let g = AbelianGroup::new(vec![2]).unwrap();
    let pos: BTreeMap<(usize, usize), usize> = units.iter().enumerate().map(|(a, &u)| (u, a)).collect();
    let labels = units.iter().map(|(i, j)| format!("E{}_{}", i + 1, j + 1)).collect();
    let degrees = units.iter().map(|&(i, j)| g.element(&[(parity[i % parity.len()] + parity[j % parity.len()]) as i64]).unwrap()).collect();
    let mut products = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b2, &(k, l)) in units.iter().enumerate() {
            if j == k {
                products.push((a, b2, vec![(pos[&(i, l)], CycloScalar::one(1))]));
            }
        }
    }
    let algebra = GradedAlgebra::new(g, 1, labels, degrees, products).unwrap();
    let blocks = (0..b)
        .map(|bi| Block { members: units.iter().enumerate().filter(|(_, &(i, j))| block_of[i] == bi && block_of[j] == bi).map(|(a, _)| a).collect(), model: None })
        .collect();
    let radical = units.iter().enumerate().filter(|(_, &(i, j))| block_of[i] != block_of[j]).map(|(a, _)| a).collect();
    Poset { sizes, above, algebra, w: WedderburnData { blocks, radical } }
}

/// Longest chain in the relation weighted by block dimension.
fn chain_oracle(p: &Poset) -> usize {
    let b = p.sizes.len();
    let mut best = vec![0usize; b];
    for j in 0..b {
        best[j] = p.sizes[j] * p.sizes[j];
        for i in 0..j {
            if p.above[i][j] {
                best[j] = best[j].max(best[i] + p.sizes[j] * p.sizes[j]);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exponent_matches_longest_chain(
        sizes in proptest::collection::vec(1usize..=2, 1..=4),
        edges in proptest::collection::vec(any::<bool>(), 6),
        parity in proptest::collection::vec(0u32..2, 8),
    ) {
        let p = poset_algebra(sizes, &edges, &parity);
        let summary = validate_wedderburn(&p.algebra, &p.w).unwrap();
        let (d, witness) = graded_exponent(&p.algebra, &p.w).unwrap();
        prop_assert_eq!(d, chain_oracle(&p));
        let dim_b: usize = p.w.blocks.iter().map(|b| b.members.len()).sum();
        let max_block = p.w.blocks.iter().map(|b| b.members.len()).max().unwrap();
        prop_assert!(max_block <= d && d <= dim_b);
        let witness = witness.unwrap();
        prop_assert!(witness.reverify(&p.algebra));
        if p.w.radical.is_empty() {
            prop_assert_eq!(d, max_block);
            prop_assert_eq!(summary.nilpotency_index, 0);
        } else {
            // J^l != 0 and J^{l+1} = 0
            let j = p.algebra.span_of(&p.w.radical);
            let mut power = j.clone();
            for _ in 1..summary.nilpotency_index {
                power = p.algebra.subspace_product(&power, &j);
            }
            prop_assert!(!power.is_zero());
            prop_assert!(p.algebra.subspace_product(&power, &j).is_zero());
        }
    }

    #[test]
    fn component_rank_ignores_slot_order(
        which in 0usize..3,
        n in 1usize..=3,
        split in 0usize..=3,
        shuffle in proptest::collection::vec(any::<u32>(), 3),
    ) {
        let (file, model) = [("fz2.alg", oracle::fz2()), ("m2_z2.alg", oracle::m2(true)), ("ut2.alg", oracle::ut2())]
            .into_iter()
            .nth(which)
            .unwrap();
        let b = corpus(file);
        let s = model.group_order;
        let first = if s == 1 { n } else { split.min(n) };
        let comp = if s == 1 { vec![n] } else { vec![first, n - first] };
        let mut degrees: Vec<usize> = comp.iter().enumerate().flat_map(|(g, &k)| std::iter::repeat(g).take(k)).collect();
        for (i, r) in shuffle.iter().enumerate().take(degrees.len()) {
            let j = *r as usize % degrees.len();
            degrees.swap(i, j);
        }
        let c = codim_component(&b.algebra, &DegreeComposition(comp), &CodimOptions::default()).unwrap();
        prop_assert_eq!(c, oracle::component_rank(&model, &degrees));
        prop_assert!(c <= (1..=n).product::<usize>());
    }

    #[test]
    fn alternation_flips_sign_under_transpositions(
        len in 2usize..=4,
        words in proptest::collection::vec((proptest::collection::vec(any::<u32>(), 5), -3i64..=3), 1..=3),
        a in 0usize..4,
        b in 0usize..4,
    ) {
        let g = AbelianGroup::trivial();
        let roster: Vec<GradedVariable> = (1..=5).map(|i| GradedVariable::new("x", i, g.identity())).collect();
        let mut p = GradedPolynomial::zero(g.clone(), 1, roster).unwrap();
        for (keys, c) in &words {
            let mut word: Vec<u32> = (0..5).collect();
            word.sort_by_key(|&v| keys[v as usize]);
            p.add_term(word, CycloScalar::from_int(1, *c)).unwrap();
        }
        let set: Vec<usize> = (0..len).collect();
        let alt = p.alternate(&set).unwrap();
        prop_assert!(alt.is_alternating_in(&set));
        let (a, b) = (a % len, b % len);
        prop_assume!(a != b);
        let swapped = alt.swap_variables(a, b);
        prop_assert!(swapped.add(&alt).unwrap().is_zero());
        // A(A(p)) = len! A(p)
        let twice = alt.alternate(&set).unwrap();
        let fact = (1..=len as i64).product::<i64>();
        prop_assert_eq!(twice, alt.scale(&CycloScalar::from_int(1, fact)).unwrap());
    }
}
