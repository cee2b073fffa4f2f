//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A [`CycloScalar`] stores its coefficients on the power basis
//! `1, zeta, ..., zeta^{phi(m)-1}`, always reduced modulo the m-th
//! cyclotomic polynomial, so structural equality is field equality within
//! one conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{structural, Error, Result};

fn cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = cache().read().expect("cache lock").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d, d | m, d < m
    let mut num: Vec<i64> = vec![0; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache().write().expect("cache lock").insert(m, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, the degree of `Q(zeta_m)` over `Q`.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

/// An element of `Q(zeta_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn zero(conductor: u32) -> Self {
        Self { conductor, coeffs: vec![BigRational::zero(); totient(conductor)] }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut s = Self::zero(conductor);
        s.coeffs[0] = q;
        s
    }

    /// `zeta_m^e`.
    pub fn root_of_unity(m: i64, e: i64) -> Result<Self> {
        if m <= 0 || m > u32::MAX as i64 {
            return Err(structural!("root of unity order must be positive, got {m}"));
        }
        let m32 = m as u32;
        let e = e.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Ok(Self::reduce(m32, poly))
    }

    /// Reduces an arbitrary polynomial in `zeta_m` to canonical form.
    pub fn from_power_coeffs(conductor: u32, poly: Vec<BigRational>) -> Self {
        Self::reduce(conductor, poly)
    }

    fn reduce(conductor: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        if poly.len() > deg {
            for top in (deg..poly.len()).rev() {
                let c = std::mem::take(&mut poly[top]);
                if c.is_zero() {
                    continue;
                }
                for (i, &pi) in phi.iter().enumerate().take(deg) {
                    if pi != 0 {
                        poly[top - deg + i] -= &c * BigRational::from_integer(pi.into());
                    }
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        Self { conductor, coeffs: poly }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under `Q(zeta_m) -> Q(zeta_target)`, `zeta_m = zeta_target^{target/m}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || target % self.conductor != 0 {
            return Err(structural!(
                "conductor {} does not embed into conductor {}",
                self.conductor,
                target
            ));
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::reduce(target, poly))
    }

    /// Inverse of [`embed`](Self::embed): expresses `self` in the subfield
    /// `Q(zeta_target)` if it lies there.
    pub fn restrict(&self, target: u32) -> Result<Self> {
        if target == 0 || self.conductor % target != 0 {
            return Err(structural!(
                "conductor {} is not a subfield of conductor {}",
                target,
                self.conductor
            ));
        }
        let sub_deg = totient(target);
        let images: Vec<Vec<BigRational>> = (0..sub_deg)
            .map(|i| {
                Self::root_of_unity(target as i64, i as i64)
                    .and_then(|z| z.embed(self.conductor))
                    .map(|z| z.coeffs)
            })
            .collect::<Result<_>>()?;
        let sol = solve_rational(&images, &self.coeffs).ok_or_else(|| {
            structural!("{} does not lie in Q(zeta_{})", self, target)
        })?;
        Ok(Self { conductor: target, coeffs: sol })
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self)> {
        let (a, b) = (self.conductor, other.conductor);
        if b % a == 0 {
            Ok((self.embed(b)?, other.clone()))
        } else if a % b == 0 {
            Ok((self.clone(), other.embed(a)?))
        } else {
            Err(structural!("incompatible conductors {a} and {b}"))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            let (a, b) = self.unify(other)?;
            return a.checked_add(&b);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        Ok(Self { conductor: self.conductor, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            let (a, b) = self.unify(other)?;
            return a.checked_mul(&b);
        }
        if self.coeffs.len() == 1 {
            return Ok(Self {
                conductor: self.conductor,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::reduce(self.conductor, prod))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Self { conductor: self.conductor, coeffs: vec![self.coeffs[0].recip()] });
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut t0, mut t1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant since Phi_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let t: Vec<BigRational> = t0.into_iter().map(|x| x * &c).collect();
        Ok(Self::reduce(self.conductor, t))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Parses the scalar literal grammar, e.g. `-1/2 + 1/2*zeta(4)^1`.
    ///
    /// Every `zeta(k)` must have `k` dividing `conductor`.
    pub fn parse(text: &str, conductor: u32) -> Result<Self> {
        let mut p = LiteralParser { src: text, pos: 0, conductor };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(value)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "zeta({})^{}", self.conductor, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for CycloScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                self.$checked(rhs).expect("conductor mismatch")
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Mul, mul, checked_mul);

impl CycloScalar {
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }
}
forward_binop!(Sub, sub, checked_sub);

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(mut self) -> CycloScalar {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

/// A root of unity `zeta_m^e` kept in lowest terms, so `m` is its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    exp: u64,
    order: u32,
}

impl RootOfUnity {
    pub fn new(exp: u64, m: u32) -> Self {
        assert!(m >= 1, "root of unity order must be positive");
        let e = exp % m as u64;
        let g = e.gcd(&(m as u64));
        Self { exp: e / g, order: (m as u64 / g) as u32 }
    }

    pub fn one() -> Self {
        Self { exp: 0, order: 1 }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Exponent `a` with `self = zeta_l^a`; `l` must be a multiple of the order.
    pub fn exponent_over(&self, l: u32) -> u64 {
        assert!(l % self.order == 0, "{} is not a power of zeta_{}", self, l);
        self.exp * (l / self.order) as u64
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.order.lcm(&other.order);
        Self::new(self.exponent_over(l) + other.exponent_over(l), l)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order as u64 - self.exp, self.order)
    }

    pub fn pow(&self, k: u64) -> Self {
        Self::new(self.exp * (k % self.order as u64), self.order)
    }

    pub fn to_scalar(&self) -> CycloScalar {
        CycloScalar::root_of_unity(self.order as i64, self.exp as i64).expect("positive order")
    }

    pub fn to_scalar_in(&self, conductor: u32) -> Result<CycloScalar> {
        self.to_scalar().embed(conductor)
    }

    /// Parses `zeta(m)^e`, `zeta(m)`, `1` or `-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::new(1, 2)),
            _ => {}
        }
        let bad = || structural!("expected a root of unity literal `zeta(m)^e`, got `{text}`");
        let rest = t.strip_prefix("zeta(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let m: u32 = rest[..close].parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        let tail = &rest[close + 1..];
        let e: i64 = if tail.is_empty() {
            1
        } else {
            tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
        };
        Ok(Self::new(e.rem_euclid(m as i64) as u64, m))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "1")
        } else {
            write!(f, "zeta({})^{}", self.order, self.exp)
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().expect("nonempty") * &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Solves `sum_i x_i * cols[i] = target` over `Q`; `None` if inconsistent.
fn solve_rational(cols: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let n = cols.len();
    // augmented matrix, one row per coordinate
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=n {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

struct LiteralParser<'a> {
    src: &'a str,
    pos: usize,
    conductor: u32,
}

impl LiteralParser<'_> {
    fn err(&self, msg: &str) -> Error {
        structural!("scalar literal `{}` at offset {}: {}", self.src, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycloScalar> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloScalar> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected an integer"))
    }

    fn factor(&mut self) -> Result<CycloScalar> {
        self.skip_ws();
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(v);
        }
        if self.src[self.pos..].starts_with("zeta") {
            self.pos += 4;
            if !self.eat('(') {
                return Err(self.err("expected `(` after zeta"));
            }
            let m = self.integer()?;
            if !self.eat(')') {
                return Err(self.err("expected `)`"));
            }
            let e = if self.eat('^') { self.integer()? } else { BigInt::one() };
            let m: i64 = m.try_into().map_err(|_| self.err("root order out of range"))?;
            if m <= 0 || self.conductor as i64 % m != 0 {
                return Err(self.err(&format!(
                    "zeta({m}) is not available under conductor {}",
                    self.conductor
                )));
            }
            let e = e.mod_floor(&BigInt::from(m));
            let e: i64 = e.try_into().expect("reduced exponent fits");
            return CycloScalar::root_of_unity(m, e)?.embed(self.conductor);
        }
        let num = self.integer()?;
        let den = if self.eat('/') { self.integer()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(CycloScalar::from_rational(self.conductor, BigRational::new(num, den)))
    }
}
