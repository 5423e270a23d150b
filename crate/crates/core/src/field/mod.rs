//! Prime fields, extension fields `F_{p^n}`, traces and scalar products.
//!
//! Elements are addressed by their canonical index: the power-basis coordinate
//! vector read as little-endian base-`p` digits, so coordinate 1 (the constant
//! coefficient) is the least significant digit. The same encoding identifies
//! `F_{p^n}` with the vector space `F_p^n` everywhere in the crate.

mod builtin;
pub(crate) mod poly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

pub use builtin::{builtin_modulus, search_primitive_modulus, BUILTIN_PRIMES, MAX_BUILTIN_DEGREE};

/// Fields with at most this many elements get log/antilog tables (3^13).
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1_594_323;

#[derive(Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_p[z]/(f)` with a validated monic irreducible modulus `f`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    size: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    primitive: u32,
    tables: Option<LogTables>,
    trace_basis: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `F_{p^n}`; without a modulus the pinned built-in table is used.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_table_threshold(p, n, modulus, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn with_table_threshold(
        p: u32,
        n: u32,
        modulus: Option<&[u32]>,
        table_threshold: u64,
    ) -> Result<Self> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::BadParameters("extension degree must be at least 1".into()));
        }
        let size = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge { p, n })? as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("coefficient out of range".into()));
                }
                let as_poly: Vec<u64> = m.iter().map(|&c| c as u64).collect();
                if !poly::is_irreducible(&as_poly, p as u64) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.to_vec()
            }
            None => builtin_modulus(p, n).ok_or(Error::NoBuiltinModulus { p, n })?,
        };
        let pow_p = (0..=n).map(|j| p.pow(j)).collect();
        let mut field = FieldSpec {
            p,
            n,
            size,
            modulus,
            pow_p,
            primitive: 0,
            tables: None,
            trace_basis: Vec::new(),
        };
        field.primitive = field.find_primitive();
        if size as u64 <= table_threshold {
            field.tables = Some(field.build_tables());
        }
        field.trace_basis = (0..n)
            .map(|j| {
                let t = field.trace(field.pow_p[j as usize], 1).expect("1 divides n");
                debug_assert!(t < p);
                t
            })
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of elements `p^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Index of the stored generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn element(&self, index: u32) -> FieldElement<'_> {
        assert!(index < self.size, "element index out of range");
        FieldElement { field: self, index }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.size).map(move |i| FieldElement { field: self, index: i })
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        digits(self.p, self.n, x)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        from_digits(self.p, d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `c · a` for a prime-field scalar `c`.
    pub fn scale(&self, c: u32, a: u32) -> u32 {
        let c = c % self.p;
        let d: Vec<u32> = self.digits(a).into_iter().map(|x| x * c % self.p).collect();
        self.from_digits(&d)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                t.exp[(s % (self.size as u64 - 1)) as usize]
            }
            None => self.mul_poly(a, b),
        }
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size as u128 - 1;
                let k = (t.log[a as usize] as u128 * e as u128) % order;
                t.exp[k as usize]
            }
            None => {
                let (mut acc, mut base, mut e) = (1u32, a, e);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_poly(acc, base);
                    }
                    base = self.mul_poly(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.size as u64 - 2))
    }

    /// Discrete logarithm to the stored primitive element (table-backed fields only).
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a as usize])
    }

    /// `g^k` for the stored primitive element `g`.
    pub fn exp(&self, k: u64) -> u32 {
        match &self.tables {
            Some(t) => t.exp[(k % (self.size as u64 - 1)) as usize],
            None => self.pow(self.primitive, k),
        }
    }

    /// Whether the nonzero `a` is a `d`-th power in the multiplicative group.
    pub fn is_power(&self, a: u32, d: u64) -> bool {
        if a == 0 {
            return true;
        }
        let order = self.size as u64 - 1;
        let g = d.gcd(&order);
        self.pow(a, order / g) == 1
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.is_power(a, 2)
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Relative trace `Tr^n_m(x) = sum_{i < n/m} x^(p^(i m))`, an element of the
    /// degree-`m` subfield (returned as an index of this field).
    pub fn trace(&self, x: u32, m: u32) -> Result<u32> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::DegreeNotDividing { m, n: self.n });
        }
        let step = (self.p as u64).pow(m);
        let mut acc = 0u32;
        let mut cur = x;
        for _ in 0..self.n / m {
            acc = self.add(acc, cur);
            cur = self.pow(cur, step);
        }
        Ok(acc)
    }

    /// Absolute trace as a prime-field digit, via the precomputed traces of the basis.
    pub fn absolute_trace(&self, x: u32) -> u32 {
        let p = self.p as u64;
        let mut x = x as u64;
        let mut acc = 0u64;
        for &t in &self.trace_basis {
            acc += (x % p) * t as u64;
            x /= p;
        }
        (acc % p) as u32
    }

    /// Coordinates of the degree-`m` subfield, see [`SubfieldCoords`].
    pub fn subfield_coords(&self, m: u32) -> Result<SubfieldCoords> {
        SubfieldCoords::new(self, m)
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..n {
                let idx = k - n + j;
                prod[idx] = (prod[idx] + (p - c) * self.modulus[j] as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.from_digits(&low)
    }

    fn mul_by_z(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let d = self.digits(a);
        let top = d[n - 1] as u64;
        let mut out = vec![0u32; n];
        for j in (1..n).rev() {
            out[j] = d[j - 1];
        }
        if top != 0 {
            for (j, o) in out.iter_mut().enumerate() {
                *o = ((*o as u64 + (p - top) * self.modulus[j] as u64) % p) as u32;
            }
        }
        self.from_digits(&out)
    }

    fn z_index(&self) -> u32 {
        if self.n >= 2 {
            self.p
        } else {
            (self.p - self.modulus[0]) % self.p
        }
    }

    fn element_order_is_full(&self, g: u32) -> bool {
        if g == 0 {
            return false;
        }
        let order = self.size as u64 - 1;
        if order == 1 {
            return g == 1;
        }
        self.pow(g, order) == 1
            && poly::prime_factors(order)
                .into_iter()
                .all(|r| self.pow(g, order / r) != 1)
    }

    fn find_primitive(&self) -> u32 {
        let z = self.z_index();
        if self.element_order_is_full(z) {
            return z;
        }
        (1..self.size)
            .find(|&g| self.element_order_is_full(g))
            .expect("a finite field has a primitive element")
    }

    fn build_tables(&self) -> LogTables {
        let order = self.size as usize - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; self.size as usize];
        let use_shift = self.primitive == self.z_index() && self.n >= 2;
        let mut cur = 1u32;
        for k in 0..order {
            exp.push(cur);
            log[cur as usize] = k as u32;
            cur = if use_shift {
                self.mul_by_z(cur)
            } else {
                self.mul_poly(cur, self.primitive)
            };
        }
        LogTables { exp, log }
    }
}

/// Identification of the subfield `F_{p^m}` of `F_{p^n}` with `F_p^m`.
///
/// For `m = n` this is the identity; otherwise coordinates are taken in the basis
/// `1, w, ..., w^(m-1)` where `w = g^((p^n - 1)/(p^m - 1))` generates the subfield's
/// multiplicative group. For `m = 1` the coordinate of `c·1` is `c`.
#[derive(Debug, Clone)]
pub struct SubfieldCoords {
    m: u32,
    identity: bool,
    from_coord: Vec<u32>,
    to_coord: HashMap<u32, u32>,
}

impl SubfieldCoords {
    fn new(field: &FieldSpec, m: u32) -> Result<Self> {
        if m == 0 || field.n % m != 0 {
            return Err(Error::DegreeNotDividing { m, n: field.n });
        }
        if m == field.n {
            return Ok(SubfieldCoords {
                m,
                identity: true,
                from_coord: Vec::new(),
                to_coord: HashMap::new(),
            });
        }
        let q = field.size as u64;
        let qm = (field.p as u64).pow(m);
        let w = field.exp((q - 1) / (qm - 1));
        let basis: Vec<u32> = (0..m).map(|j| field.pow(w, j as u64)).collect();
        let mut from_coord = Vec::with_capacity(qm as usize);
        let mut to_coord = HashMap::with_capacity(qm as usize);
        for c in 0..qm as u32 {
            let d = digits(field.p, m, c);
            let mut e = 0u32;
            for (j, &dj) in d.iter().enumerate() {
                e = field.add(e, field.scale(dj, basis[j]));
            }
            from_coord.push(e);
            to_coord.insert(e, c);
        }
        debug_assert_eq!(to_coord.len(), qm as usize);
        Ok(SubfieldCoords {
            m,
            identity: false,
            from_coord,
            to_coord,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Coordinate index of a subfield element, `None` if `x` is outside the subfield.
    pub fn encode(&self, x: u32) -> Option<u32> {
        if self.identity {
            return Some(x);
        }
        self.to_coord.get(&x).copied()
    }

    pub fn decode(&self, c: u32) -> u32 {
        if self.identity {
            return c;
        }
        self.from_coord[c as usize]
    }
}

/// A field element tied to its field; a convenience view over an index.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    field: &'a FieldSpec,
    index: u32,
}

impl<'a> FieldElement<'a> {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn field(&self) -> &'a FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.index)
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.index, e))
    }

    pub fn inv(self) -> Option<Self> {
        self.field.inv(self.index).map(|i| self.with(i))
    }

    pub fn trace(self, m: u32) -> Result<Self> {
        self.field.trace(self.index, m).map(|i| self.with(i))
    }

    fn with(self, index: u32) -> Self {
        FieldElement { field: self.field, index }
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:?})", self.coeffs())
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for FieldElement<'_> {}

impl<'a> Add for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn add(self, rhs: Self) -> Self::Output {
        self.with(self.field.add(self.index, rhs.index))
    }
}

impl<'a> Sub for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.with(self.field.sub(self.index, rhs.index))
    }
}

impl<'a> Mul for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.with(self.field.mul(self.index, rhs.index))
    }
}

impl<'a> Neg for FieldElement<'a> {
    type Output = FieldElement<'a>;
    fn neg(self) -> Self::Output {
        self.with(self.field.neg(self.index))
    }
}

/// Little-endian base-`p` digits of `x`, exactly `n` of them.
pub fn digits(p: u32, n: u32, mut x: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(n as usize);
    for _ in 0..n {
        d.push(x % p);
        x /= p;
    }
    d
}

pub fn from_digits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// The scalar product used to pair vectors of `F_p^n`.
#[derive(Debug, Clone, Copy)]
pub enum ScalarProduct<'a> {
    /// `sum x_i y_i mod p` on digit vectors.
    CoordinateDot,
    /// `Tr(x y)` on `F_{p^n}`.
    TraceProduct(&'a FieldSpec),
    /// `Tr^k_1(u1 v1 + u2 v2)` on `F_{p^k} x F_{p^k}`, `u1` in the low digits.
    SplitTrace(&'a FieldSpec),
}

pub fn scalar_product(p: u32, n: u32, x: u32, y: u32, convention: ScalarProduct<'_>) -> Result<u32> {
    match convention {
        ScalarProduct::CoordinateDot => Ok(coordinate_dot(p, x, y)),
        ScalarProduct::TraceProduct(f) => {
            if f.p != p || f.n != n {
                return Err(Error::ConventionMismatch(format!(
                    "trace product needs F_{}^{}, got F_{}^{}",
                    p, n, f.p, f.n
                )));
            }
            Ok(f.absolute_trace(f.mul(x, y)))
        }
        ScalarProduct::SplitTrace(f) => {
            if n % 2 != 0 || f.p != p || 2 * f.n != n {
                return Err(Error::ConventionMismatch(format!(
                    "split trace needs an even n and F_{}^{}",
                    p,
                    n / 2
                )));
            }
            let q = f.size;
            let (u1, u2) = (x % q, x / q);
            let (v1, v2) = (y % q, y / q);
            Ok(f.absolute_trace(f.add(f.mul(u1, v1), f.mul(u2, v2))))
        }
    }
}

/// `sum x_i y_i mod p` over the base-`p` digits of two indices.
pub fn coordinate_dot(p: u32, mut x: u32, mut y: u32) -> u32 {
    if p == 2 {
        return (x & y).count_ones() & 1;
    }
    let mut acc = 0u32;
    while x > 0 && y > 0 {
        acc += (x % p) * (y % p);
        x /= p;
        y /= p;
    }
    acc % p
}

/// Legendre symbol `(l / p)` for an odd prime `p`.
pub fn legendre(l: i64, p: u32) -> Result<i8> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !poly::is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    let r = l.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if poly::pow_mod(r, (p as u64 - 1) / 2, p as u64) == 1 {
        1
    } else {
        -1
    })
}

pub fn is_prime(v: u64) -> bool {
    poly::is_prime(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn create_examples() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NonPrime(4));
        assert!(FieldSpec::new(3, 3, Some(&[1, 2, 0, 1])).is_ok());
        assert_eq!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus { p: 2 }
        );
        assert_eq!(
            FieldSpec::new(13, 2, None).unwrap_err(),
            Error::NoBuiltinModulus { p: 13, n: 2 }
        );
        assert!(matches!(FieldSpec::new(3, 2, Some(&[1, 0, 2])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn user_modulus_without_primitive_z() {
        // z^2 + 1 over F_3 is irreducible, but z has order 4
        let f = FieldSpec::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let g = f.primitive_element();
        let mut seen = std::collections::HashSet::new();
        for k in 0..8 {
            seen.insert(f.exp(k));
        }
        assert_eq!(seen.len(), 8);
        assert_ne!(g, 3);
    }

    #[test]
    fn trace_examples_f4() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let z = 2; // index of z: digits (0, 1)
        assert_eq!(f.trace(0, 1).unwrap(), 0);
        assert_eq!(f.trace(z, 1).unwrap(), 1);
        assert_eq!(f.trace(1, 1).unwrap(), 0);
        assert_eq!(f.trace(z, 3).unwrap_err(), Error::DegreeNotDividing { m: 3, n: 2 });
    }

    #[test]
    fn scalar_product_examples() {
        let x = from_digits(2, &[1, 0, 1, 1]);
        let y = from_digits(2, &[1, 1, 1, 0]);
        assert_eq!(scalar_product(2, 4, x, y, ScalarProduct::CoordinateDot).unwrap(), 0);
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(scalar_product(2, 2, 2, 1, ScalarProduct::TraceProduct(&f4)).unwrap(), 1);
        for conv in [
            ScalarProduct::CoordinateDot,
            ScalarProduct::TraceProduct(&f4),
        ] {
            for y in 0..4 {
                assert_eq!(scalar_product(2, 2, 0, y, conv).unwrap(), 0);
            }
        }
        assert_eq!(scalar_product(2, 4, 0, 7, ScalarProduct::SplitTrace(&f4)).unwrap(), 0);
        assert!(matches!(
            scalar_product(2, 3, 1, 1, ScalarProduct::SplitTrace(&f4)),
            Err(Error::ConventionMismatch(_))
        ));
        assert!(matches!(
            scalar_product(2, 4, 1, 1, ScalarProduct::TraceProduct(&f4)),
            Err(Error::ConventionMismatch(_))
        ));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0, 5).unwrap(), 0);
        assert_eq!(legendre(1, 3).unwrap(), 1);
        assert_eq!(legendre(2, 3).unwrap(), -1);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert_eq!(legendre(1, 2).unwrap_err(), Error::EvenPrime);
        // squares mod 11 by enumeration
        let squares: Vec<u32> = (1..11u32).map(|x| x * x % 11).collect();
        for l in 1..11i64 {
            let expect = if squares.contains(&(l as u32)) { 1 } else { -1 };
            assert_eq!(legendre(l, 11).unwrap(), expect);
        }
    }

    #[test]
    fn tables_agree_with_polynomial_multiplication() {
        for (p, n) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
            let with = FieldSpec::new(p, n, None).unwrap();
            let without = FieldSpec::with_table_threshold(p, n, None, 0).unwrap();
            assert!(with.has_tables() && !without.has_tables());
            for a in 0..with.size() {
                for b in (0..with.size()).step_by(3) {
                    assert_eq!(with.mul(a, b), without.mul(a, b));
                }
                assert_eq!(with.pow(a, 7), without.pow(a, 7));
            }
        }
    }

    #[test]
    fn frobenius_fixes_trace() {
        for (p, n) in [(2, 6), (3, 4), (3, 9), (5, 3), (7, 2)] {
            let f = FieldSpec::new(p, n, None).unwrap();
            for x in 0..f.size() {
                let t = f.trace(x, 1).unwrap();
                assert!(t < p);
                assert_eq!(t, f.absolute_trace(x));
                assert_eq!(f.absolute_trace(f.frobenius(x)), t);
            }
        }
    }

    #[test]
    fn relative_trace_lands_in_subfield() {
        let f = FieldSpec::new(2, 6, None).unwrap();
        for m in [1, 2, 3] {
            let sub = f.subfield_coords(m).unwrap();
            for x in 0..f.size() {
                let t = f.trace(x, m).unwrap();
                assert_eq!(f.pow(t, 1 << m), t);
                assert!(sub.encode(t).is_some());
            }
        }
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let sub = f9.subfield_coords(1).unwrap();
        for c in 0..3 {
            assert_eq!(sub.encode(c), Some(c));
        }
    }

    proptest! {
        #[test]
        fn trace_is_linear(a in 0u32..729, b in 0u32..729, c in 0u32..3) {
            let f = FieldSpec::new(3, 6, None).unwrap();
            let lhs = f.absolute_trace(f.add(f.scale(c, a), b));
            let rhs = (c * f.absolute_trace(a) + f.absolute_trace(b)) % 3;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms(a in 0u32..625, b in 0u32..625, c in 0u32..625) {
            let f = FieldSpec::new(5, 4, None).unwrap();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
