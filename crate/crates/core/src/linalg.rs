//! Dense exact linear algebra over a cyclotomic field.

use crate::cyclo::CycloScalar;

pub type Vector = Vec<CycloScalar>;

pub fn zero_vector(dim: usize, conductor: u32) -> Vector {
    vec![CycloScalar::zero(conductor); dim]
}

pub fn unit_vector(dim: usize, conductor: u32, i: usize) -> Vector {
    let mut v = zero_vector(dim, conductor);
    v[i] = CycloScalar::one(conductor);
    v
}

pub fn is_zero_vector(v: &[CycloScalar]) -> bool {
    v.iter().all(CycloScalar::is_zero)
}

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    conductor: u32,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, conductor: u32) -> Self {
        Self { ambient, conductor, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize, conductor: u32) -> Self {
        Self::spanned_by(ambient, conductor, (0..ambient).map(|i| unit_vector(ambient, conductor, i)))
    }

    pub fn spanned_by<I>(ambient: usize, conductor: u32, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut s = Self::zero(ambient, conductor);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The reduced echelon basis, ordered by pivot column.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut v = self.reduce(v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[lead].is_zero() {
                continue;
            }
            let c = row[lead].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }
}

pub fn rank<I>(ambient: usize, conductor: u32, vectors: I) -> usize
where
    I: IntoIterator<Item = Vector>,
{
    Subspace::spanned_by(ambient, conductor, vectors).dim()
}

/// Finds `x` with `sum_i x_i * columns[i] = target`, if one exists.
pub fn solve(columns: &[Vector], target: &[CycloScalar], conductor: u32) -> Option<Vector> {
    let n = columns.len();
    let m = target.len();
    // Track each column's combination alongside its reduced image.
    let mut basis: Vec<(Vector, Vector, usize)> = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = unit_vector(n, conductor, i);
        for (bv, bc, p) in &basis {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            axpy(&mut v, &c, bv);
            axpy(&mut combo, &c, bc);
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[lead].inv().expect("nonzero");
            let v: Vector = v.iter().map(|x| x * &inv).collect();
            let combo: Vector = combo.iter().map(|x| x * &inv).collect();
            basis.push((v, combo, lead));
        }
    }
    let mut t = target.to_vec();
    let mut x = zero_vector(n, conductor);
    for (bv, bc, p) in &basis {
        if t[*p].is_zero() {
            continue;
        }
        let c = t[*p].clone();
        axpy(&mut t, &c, bv);
        for (xi, ci) in x.iter_mut().zip(bc) {
            *xi += &(&c * ci);
        }
    }
    debug_assert_eq!(t.len(), m);
    if is_zero_vector(&t) {
        Some(x)
    } else {
        None
    }
}

/// Basis of `{ x : sum_i x_i * columns[i] = 0 }`.
pub fn kernel(columns: &[Vector], conductor: u32) -> Vec<Vector> {
    let n = columns.len();
    let mut basis: Vec<(Vector, Vector, usize)> = Vec::new();
    let mut out = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = unit_vector(n, conductor, i);
        for (bv, bc, p) in &basis {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            axpy(&mut v, &c, bv);
            axpy(&mut combo, &c, bc);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(lead) => {
                let inv = v[lead].inv().expect("nonzero");
                let v: Vector = v.iter().map(|x| x * &inv).collect();
                let combo: Vector = combo.iter().map(|x| x * &inv).collect();
                basis.push((v, combo, lead));
            }
            None => out.push(combo),
        }
    }
    out
}

/// `y -= c * x`
fn axpy(y: &mut [CycloScalar], c: &CycloScalar, x: &[CycloScalar]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= &(c * xi);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| CycloScalar::from_int(1, x)).collect()
    }

    #[test]
    fn echelon_insertion() {
        let mut s = Subspace::zero(3, 1);
        assert!(s.insert(v(&[0, 2, 4])));
        assert!(s.insert(v(&[1, 1, 1])));
        assert!(!s.insert(v(&[2, 4, 6])));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.basis()[0], v(&[1, 0, -1]));
        assert_eq!(s.basis()[1], v(&[0, 1, 2]));
        assert!(s.contains(&v(&[3, 1, -1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn solving() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2])];
        let x = solve(&cols, &v(&[2, 3, 5]), 1).unwrap();
        let recombined: Vector = (0..3)
            .map(|r| (0..3).fold(CycloScalar::zero(1), |acc, c| acc + &x[c] * &cols[c][r]))
            .collect();
        assert_eq!(recombined, v(&[2, 3, 5]));
        assert!(solve(&cols, &v(&[0, 0, 1]), 1).is_none());
    }

    #[test]
    fn kernels() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2]), v(&[2, 0, 2])];
        let k = kernel(&cols, 1);
        assert_eq!(k.len(), 2);
        for x in &k {
            for r in 0..3 {
                let s = (0..4).fold(CycloScalar::zero(1), |acc, c| acc + &x[c] * &cols[c][r]);
                assert!(s.is_zero());
            }
        }
    }
}
