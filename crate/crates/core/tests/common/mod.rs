#![allow(dead_code)]

use std::path::{Path, PathBuf};

use graded_pi::spec::{build_spec, BuiltSpec};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus(name: &str) -> BuiltSpec {
    load(&corpus_dir().join(name))
}

pub fn fixture(name: &str) -> BuiltSpec {
    load(&fixture_dir().join(name))
}

fn load(path: &Path) -> BuiltSpec {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    build_spec(&text, &path.display().to_string()).unwrap_or_else(|e| panic!("{e}"))
}

/// Corpus files with the `--max-n` used for their golden reports.
pub const CORPUS: &[(&str, usize)] = &[
    ("f.alg", 6),
    ("fz2.alg", 6),
    ("m2_trivial.alg", 4),
    ("m2_z2.alg", 4),
    ("nilpotent.alg", 4),
    ("ut2.alg", 4),
    ("z2z2_nondeg.alg", 4),
];

/// Brute-force codimensions from explicit matrix models, sharing nothing
/// with the library: dense rational matrices, every monomial evaluated at
/// every basis tuple, and plain Gaussian elimination.
pub mod oracle {
    use num_bigint::{BigInt, BigUint};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub type Mat = Vec<Vec<BigRational>>;

    /// Homogeneous basis matrices with degree indices in `0..group_order`.
    pub struct MatrixModel {
        pub group_order: usize,
        pub basis: Vec<(Mat, usize)>,
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    pub fn mat(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    pub fn unit(size: usize, i: usize, j: usize) -> Mat {
        let mut m = vec![vec![q(0); size]; size];
        m[i - 1][j - 1] = q(1);
        m
    }

    fn mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        let mut out = vec![vec![q(0); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !b[k][j].is_zero() {
                        out[i][j] = &out[i][j] + &a[i][k] * &b[k][j];
                    }
                }
            }
        }
        out
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out.sort();
        out
    }

    pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
        let mut r = 0;
        let cols = rows.first().map_or(0, Vec::len);
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = BigRational::one() / &rows[r][c];
            let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x = &*x - &f * y;
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }

    /// Dimension of `P_{n_1,...,n_s}` modulo identities, where variable `v`
    /// has degree `degrees[v]`.
    pub fn component_rank(model: &MatrixModel, degrees: &[usize]) -> usize {
        let n = degrees.len();
        let choices: Vec<Vec<&Mat>> =
            degrees.iter().map(|&g| model.basis.iter().filter(|(_, d)| *d == g).map(|(m, _)| m).collect()).collect();
        if choices.iter().any(Vec::is_empty) {
            return 0;
        }
        let mut tuples: Vec<Vec<&Mat>> = vec![vec![]];
        for c in &choices {
            tuples = tuples.into_iter().flat_map(|t| c.iter().map(move |m| [t.clone(), vec![*m]].concat())).collect();
        }
        let rows = permutations(n)
            .into_iter()
            .map(|sigma| {
                let mut row = Vec::new();
                for t in &tuples {
                    let mut acc = t[sigma[0]].clone();
                    for &v in &sigma[1..] {
                        acc = mul(&acc, t[v]);
                    }
                    row.extend(acc.into_iter().flatten());
                }
                row
            })
            .collect();
        rank(rows)
    }

    fn compositions(n: usize, s: usize) -> Vec<Vec<usize>> {
        if s == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .flat_map(|first| compositions(n - first, s - 1).into_iter().map(move |rest| [vec![first], rest].concat()))
            .collect()
    }

    fn multinomial(parts: &[usize]) -> BigUint {
        let fact = |k: usize| (1..=k).fold(BigUint::one(), |a, i| a * BigUint::from(i));
        let n: usize = parts.iter().sum();
        parts.iter().fold(fact(n), |acc, &p| acc / fact(p))
    }

    /// `c_n^G` as the sum over degree compositions.
    pub fn graded_codim(model: &MatrixModel, n: usize) -> BigUint {
        compositions(n, model.group_order)
            .into_iter()
            .map(|parts| {
                let degrees: Vec<usize> = parts.iter().enumerate().flat_map(|(g, &k)| std::iter::repeat(g).take(k)).collect();
                multinomial(&parts) * BigUint::from(component_rank(model, &degrees))
            })
            .sum()
    }

    /// `c_n` of the same model with the grading forgotten.
    pub fn ordinary_codim(model: &MatrixModel, n: usize) -> BigUint {
        let flat = MatrixModel { group_order: 1, basis: model.basis.iter().map(|(m, _)| (m.clone(), 0)).collect() };
        graded_codim(&flat, n)
    }

    pub fn fz2() -> MatrixModel {
        MatrixModel { group_order: 2, basis: vec![(mat(&[&[1, 0], &[0, 1]]), 0), (mat(&[&[1, 0], &[0, -1]]), 1)] }
    }

    pub fn ut2() -> MatrixModel {
        MatrixModel { group_order: 1, basis: vec![(unit(2, 1, 1), 0), (unit(2, 1, 2), 0), (unit(2, 2, 2), 0)] }
    }

    /// `M_2` with `E_ij` in degree `i != j` when `graded`.
    pub fn m2(graded: bool) -> MatrixModel {
        let mut basis = Vec::new();
        for i in 1..=2 {
            for j in 1..=2 {
                basis.push((unit(2, i, j), usize::from(graded && i != j)));
            }
        }
        MatrixModel { group_order: if graded { 2 } else { 1 }, basis }
    }

    /// The Pauli-type model of the twisted group algebra of `Z2 x Z2`.
    pub fn z2z2_nondeg() -> MatrixModel {
        let a = mat(&[&[1, 0], &[0, -1]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        let ab = mul(&a, &b);
        MatrixModel { group_order: 4, basis: vec![(mat(&[&[1, 0], &[0, 1]]), 0), (a, 1), (b, 2), (ab, 3)] }
    }
}
