//! Exhaustive function tables, ANF and trace-polynomial inputs, affine maps and
//! the derivative-based perfect nonlinearity test.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::space::Space;

/// Value table of `F: F_p^n -> F_p^m`; entry `x` is the target index of `F(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionTable {
    p: u32,
    n: u32,
    m: u32,
    values: Vec<u32>,
}

impl FunctionTable {
    pub fn new(p: u32, n: u32, m: u32, values: Vec<u32>) -> Result<Self> {
        let src = Space::new(p, n).size() as usize;
        let dst = (p as u64).pow(m);
        if values.len() != src {
            return Err(Error::DimensionMismatch(format!(
                "expected {} values, got {}",
                src,
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v as u64 >= dst) {
            return Err(Error::IndexOutOfRange { index: v as u64, size: dst });
        }
        Ok(FunctionTable { p, n, m, values })
    }

    /// Tabulates `f` over all inputs, in parallel.
    pub fn from_fn<F>(p: u32, n: u32, m: u32, f: F) -> Result<Self>
    where
        F: Fn(u32) -> u32 + Sync + Send,
    {
        let size = Space::new(p, n).size();
        let values = (0..size).into_par_iter().map(f).collect::<Vec<u32>>();
        Self::new(p, n, m, values)
    }

    pub fn zero(p: u32, n: u32, m: u32) -> Self {
        FunctionTable { p, n, m, values: vec![0; Space::new(p, n).size() as usize] }
    }

    /// Uniformly random table.
    pub fn random<R: Rng + ?Sized>(p: u32, n: u32, m: u32, rng: &mut R) -> Self {
        let q = Space::new(p, m).size();
        let values = (0..Space::new(p, n).size()).map(|_| rng.gen_range(0..q)).collect();
        FunctionTable { p, n, m, values }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    pub fn source(&self) -> Space {
        Space::new(self.p, self.n)
    }

    pub fn target(&self) -> Space {
        Space::new(self.p, self.m)
    }

    /// The component `x -> <b, F(x)>` as an `(n, 1)` table.
    pub fn component(&self, b: u32) -> FunctionTable {
        let t = self.target();
        FunctionTable {
            p: self.p,
            n: self.n,
            m: 1,
            values: self.values.iter().map(|&v| t.dot(b, v)).collect(),
        }
    }

    /// Pointwise sum `F + G`.
    pub fn add(&self, other: &FunctionTable) -> Result<FunctionTable> {
        if (self.p, self.n, self.m) != (other.p, other.n, other.m) {
            return Err(Error::ShapeMismatch("tables of different shape".into()));
        }
        let t = self.target();
        Ok(FunctionTable {
            p: self.p,
            n: self.n,
            m: self.m,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| t.add(a, b)).collect(),
        })
    }

    /// Text format: header `p n m`, then one value per line in input order.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.values.len() * 4 + 16);
        writeln!(s, "{} {} {}", self.p, self.n, self.m).unwrap();
        for v in &self.values {
            writeln!(s, "{v}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
        let dims: Vec<u32> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Format(format!("bad header `{header}`"))))
            .collect::<Result<_>>()?;
        let [p, n, m] = dims[..] else {
            return Err(Error::Format(format!("header needs `p n m`, got `{header}`")));
        };
        if !crate::field::is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if (p as u64).checked_pow(n).map_or(true, |s| s > 1 << 28) {
            return Err(Error::Format(format!("table of size {p}^{n} is too large")));
        }
        let values = lines
            .enumerate()
            .map(|(i, l)| {
                l.parse::<u32>()
                    .map_err(|_| Error::Format(format!("line {}: `{l}` is not a value", i + 2)))
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::new(p, n, m, values)
    }
}

/// A monomial `c · prod x_i^(e_i)` with exponents in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: u32,
    pub exps: Vec<u32>,
}

/// Multivariate polynomial representation, one polynomial per output coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    p: u32,
    n: u32,
    coords: Vec<BTreeMap<Vec<u32>, u32>>,
}

impl AnfPolynomial {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coordinate(&self, i: usize) -> Vec<Monomial> {
        self.coords[i]
            .iter()
            .map(|(e, &c)| Monomial { coeff: c, exps: e.clone() })
            .collect()
    }

    pub fn monomial_count(&self, i: usize) -> usize {
        self.coords[i].len()
    }

    /// Canonical text in the parser's grammar.
    pub fn to_text(&self) -> String {
        let coords: Vec<String> = self
            .coords
            .iter()
            .map(|c| {
                if c.is_empty() {
                    return "0".to_string();
                }
                let terms: Vec<String> = c
                    .iter()
                    .map(|(exps, &coeff)| {
                        let mut factors = Vec::new();
                        if coeff != 1 || exps.iter().all(|&e| e == 0) {
                            factors.push(coeff.to_string());
                        }
                        for (i, &e) in exps.iter().enumerate() {
                            match e {
                                0 => {}
                                1 => factors.push(format!("x{}", i + 1)),
                                _ => factors.push(format!("x{}^{}", i + 1, e)),
                            }
                        }
                        factors.join("*")
                    })
                    .collect();
                terms.join(" + ")
            })
            .collect();
        coords.join("; ")
    }

    fn insert(coord: &mut BTreeMap<Vec<u32>, u32>, exps: Vec<u32>, coeff: u32, p: u32) {
        let e = coord.entry(exps).or_insert(0);
        *e = (*e + coeff) % p;
        if *e == 0 {
            coord.retain(|_, c| *c != 0);
        }
    }
}

struct AnfParser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
    n: u32,
}

impl AnfParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    /// Digits as `(value, value mod p)`; the value is `None` once it overflows.
    fn number(&mut self) -> Result<(Option<u64>, u32)> {
        self.skip_ws();
        let start = self.pos;
        let (mut v, mut r) = (Some(0u64), 0u64);
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            let d = (c - b'0') as u64;
            v = v.and_then(|v| v.checked_mul(10)).and_then(|v| v.checked_add(d));
            r = (r * 10 + d) % self.p as u64;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok((v, r as u32))
    }

    fn coordinate(&mut self) -> Result<BTreeMap<Vec<u32>, u32>> {
        let mut coord = BTreeMap::new();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let (exps, mut coeff) = self.term()?;
            if negate {
                coeff = (self.p - coeff) % self.p;
            }
            AnfPolynomial::insert(&mut coord, exps, coeff, self.p);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(coord),
            }
        }
    }

    fn term(&mut self) -> Result<(Vec<u32>, u32)> {
        let p = self.p;
        let mut exps = vec![0u32; self.n as usize];
        let mut coeff = 1u32;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let (_, r) = self.number()?;
                    coeff = coeff * r % p;
                }
                Some(b'x') => {
                    self.pos += 1;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.err("expected a variable number after `x`"));
                    }
                    let (var, _) = self.number()?;
                    let var = var.unwrap_or(u64::MAX);
                    if var == 0 || var > self.n as u64 {
                        return Err(Error::VariableOutOfRange {
                            var: var.min(usize::MAX as u64) as usize,
                            n: self.n,
                        });
                    }
                    let mut e = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let at = self.pos;
                        let (v, _) = self.number()?;
                        e = v.filter(|&v| v <= u32::MAX as u64).ok_or(Error::ExponentTooLarge { pos: at })?;
                    }
                    let slot = &mut exps[var as usize - 1];
                    *slot = reduce_exponent(*slot as u64 + e, p);
                }
                _ => return Err(self.err("expected a coefficient or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }
}

/// `x^e` as a function on `F_p` equals `x^r` with `r` in `[0, p)`.
fn reduce_exponent(e: u64, p: u32) -> u32 {
    if e == 0 {
        0
    } else {
        ((e - 1) % (p as u64 - 1) + 1) as u32
    }
}

/// Parses the ANF grammar: coordinates separated by `;`, terms by `+` (or `-`),
/// factors by `*`, variables `x1..xn` with optional `^e`, integer coefficients.
pub fn parse_anf(text: &str, p: u32, n: u32) -> Result<AnfPolynomial> {
    if !crate::field::is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    let mut parser = AnfParser { src: text.as_bytes(), pos: 0, p, n };
    let mut coords = vec![parser.coordinate()?];
    loop {
        match parser.peek() {
            None => break,
            Some(b';') => {
                parser.pos += 1;
                if parser.peek().is_none() {
                    break;
                }
                coords.push(parser.coordinate()?);
            }
            Some(_) => return Err(parser.err("unexpected character")),
        }
    }
    Ok(AnfPolynomial { p, n, coords })
}

pub fn table_from_anf(a: &AnfPolynomial) -> FunctionTable {
    let (p, n, m) = (a.p, a.n, a.m());
    let src = Space::new(p, n);
    let dst = Space::new(p, m);
    if p == 2 {
        let masks: Vec<Vec<u32>> = a
            .coords
            .iter()
            .map(|c| {
                c.keys()
                    .map(|e| e.iter().enumerate().fold(0u32, |acc, (i, &x)| acc | (x << i)))
                    .collect()
            })
            .collect();
        return FunctionTable::from_fn(p, n, m, |x| {
            masks.iter().enumerate().fold(0u32, |acc, (j, ms)| {
                let bit = ms.iter().filter(|&&mk| x & mk == mk).count() as u32 & 1;
                acc | (bit << j)
            })
        })
        .expect("shape is consistent");
    }
    FunctionTable::from_fn(p, n, m, |x| {
        let d = src.digits(x);
        let out: Vec<u32> = a
            .coords
            .iter()
            .map(|c| {
                c.iter().fold(0u64, |acc, (exps, &coeff)| {
                    let mut t = coeff as u64;
                    for (xi, &e) in d.iter().zip(exps) {
                        if e > 0 {
                            t = t * (*xi as u64).pow(e) % p as u64;
                        }
                    }
                    (acc + t) % p as u64
                }) as u32
            })
            .collect();
        dst.from_digits(&out)
    })
    .expect("shape is consistent")
}

/// Recovers the ANF of a table by per-variable interpolation (Möbius transform for `p = 2`).
pub fn anf_of(t: &FunctionTable) -> AnfPolynomial {
    let (p, n, m) = (t.p, t.n, t.m);
    let dst = t.target();
    let src = t.source();
    let inv = inverse_vandermonde(p);
    let size = src.size() as usize;
    let pu = p as usize;
    let mut coords = Vec::with_capacity(m as usize);
    for j in 0..m {
        let mut a: Vec<u32> = t.values.iter().map(|&v| dst.digits(v)[j as usize]).collect();
        let mut stride = 1usize;
        for _ in 0..n {
            let mut buf = vec![0u32; pu];
            for block in (0..size).step_by(stride * pu) {
                for off in 0..stride {
                    let base = block + off;
                    for (k, b) in buf.iter_mut().enumerate() {
                        *b = (0..pu).fold(0u32, |acc, r| {
                            (acc + inv[k][r] * a[base + r * stride]) % p
                        });
                    }
                    for (k, &b) in buf.iter().enumerate() {
                        a[base + k * stride] = b;
                    }
                }
            }
            stride *= pu;
        }
        let mut coord = BTreeMap::new();
        for (idx, &c) in a.iter().enumerate() {
            if c != 0 {
                coord.insert(src.digits(idx as u32), c);
            }
        }
        coords.push(coord);
    }
    AnfPolynomial { p, n, coords }
}

/// Inverse of `V[r][k] = r^k` over `F_p`, so that `coeffs = V^-1 · values`.
fn inverse_vandermonde(p: u32) -> Vec<Vec<u32>> {
    let pu = p as usize;
    let pp = p as u64;
    let mut a: Vec<Vec<u64>> = (0..pu)
        .map(|r| (0..pu).map(|k| if k == 0 { 1 } else { (r as u64).pow(k as u32) % pp }).collect())
        .collect();
    let mut inv: Vec<Vec<u64>> = (0..pu).map(|i| (0..pu).map(|j| (i == j) as u64).collect()).collect();
    for col in 0..pu {
        let piv = (col..pu).find(|&r| a[r][col] != 0).expect("Vandermonde matrix is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = mod_inv(a[col][col], pp);
        for k in 0..pu {
            a[col][k] = a[col][k] * s % pp;
            inv[col][k] = inv[col][k] * s % pp;
        }
        for r in 0..pu {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for k in 0..pu {
                    a[r][k] = (a[r][k] + (pp - f) * a[col][k]) % pp;
                    inv[r][k] = (inv[r][k] + (pp - f) * inv[col][k]) % pp;
                }
            }
        }
    }
    inv.into_iter().map(|row| row.into_iter().map(|v| v as u32).collect()).collect()
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `x -> Tr^n_m(sum_i a_i x^(d_i))` on `F_{p^n}`.
#[derive(Debug, Clone)]
pub struct TracePolynomial<'a> {
    pub field: &'a FieldSpec,
    pub m: u32,
    pub terms: Vec<(u32, u64)>,
}

impl<'a> TracePolynomial<'a> {
    pub fn new(field: &'a FieldSpec, m: u32, terms: Vec<(u32, u64)>) -> Result<Self> {
        if m == 0 || field.degree() % m != 0 {
            return Err(Error::DegreeNotDividing { m, n: field.degree() });
        }
        if let Some(&(c, _)) = terms.iter().find(|(c, _)| *c >= field.size()) {
            return Err(Error::IndexOutOfRange { index: c as u64, size: field.size() as u64 });
        }
        Ok(TracePolynomial { field, m, terms })
    }

    /// The polynomial inside the trace, evaluated at `x`.
    pub fn inner(&self, x: u32) -> u32 {
        self.terms
            .iter()
            .fold(0u32, |acc, &(c, d)| self.field.add(acc, self.field.mul(c, self.field.pow(x, d))))
    }
}

/// Tabulates a trace polynomial; values are encoded through the degree-`m` subfield coordinates.
pub fn table_from_trace_poly(t: &TracePolynomial<'_>) -> Result<FunctionTable> {
    let f = t.field;
    let coords = f.subfield_coords(t.m)?;
    FunctionTable::from_fn(f.p(), f.degree(), t.m, |x| {
        let v = f.trace(t.inner(x), t.m).expect("m divides n");
        coords.encode(v).expect("the relative trace lies in the subfield")
    })
}

/// `x -> M x + c` from `F_p^src` to `F_p^dst`; `matrix[i]` is output coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    p: u32,
    src: u32,
    dst: u32,
    matrix: Vec<Vec<u32>>,
    constant: u32,
}

impl AffineMap {
    pub fn new(p: u32, src: u32, dst: u32, matrix: Vec<Vec<u32>>, constant: u32) -> Result<Self> {
        if matrix.len() != dst as usize || matrix.iter().any(|r| r.len() != src as usize) {
            return Err(Error::DimensionMismatch(format!("matrix is not {dst} x {src}")));
        }
        if matrix.iter().flatten().any(|&c| c >= p) {
            return Err(Error::DimensionMismatch("matrix entry not reduced mod p".into()));
        }
        if constant >= Space::new(p, dst).size() {
            return Err(Error::IndexOutOfRange {
                index: constant as u64,
                size: Space::new(p, dst).size() as u64,
            });
        }
        Ok(AffineMap { p, src, dst, matrix, constant })
    }

    pub fn linear(p: u32, src: u32, dst: u32, matrix: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(p, src, dst, matrix, 0)
    }

    pub fn identity(p: u32, n: u32) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
        AffineMap { p, src: n, dst: n, matrix, constant: 0 }
    }

    /// Projection onto the first `k` coordinates.
    pub fn projection(p: u32, n: u32, k: u32) -> Self {
        let matrix = (0..k).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
        AffineMap { p, src: n, dst: k, matrix, constant: 0 }
    }

    /// Uniformly random linear map (all `p^(src·dst)` matrices equally likely).
    pub fn random_linear<R: Rng + ?Sized>(p: u32, src: u32, dst: u32, rng: &mut R) -> Self {
        let matrix = (0..dst).map(|_| (0..src).map(|_| rng.gen_range(0..p)).collect()).collect();
        AffineMap { p, src, dst, matrix, constant: 0 }
    }

    /// The linear map given by its images of the unit vectors (as target indices).
    pub fn from_columns(p: u32, dst: u32, columns: &[u32]) -> Result<Self> {
        let t = Space::new(p, dst);
        let cols: Vec<Vec<u32>> = columns.iter().map(|&c| t.digits(c)).collect();
        let matrix = (0..dst as usize).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Self::new(p, columns.len() as u32, dst, matrix, 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn source_dim(&self) -> u32 {
        self.src
    }

    pub fn target_dim(&self) -> u32 {
        self.dst
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    pub fn is_linear(&self) -> bool {
        self.constant == 0
    }

    pub fn apply(&self, x: u32) -> u32 {
        let s = Space::new(self.p, self.src);
        let d = s.digits(x);
        let out: Vec<u32> = self
            .matrix
            .iter()
            .map(|row| (row.iter().zip(&d).map(|(a, b)| a * b).sum::<u32>()) % self.p)
            .collect();
        let t = Space::new(self.p, self.dst);
        t.add(t.from_digits(&out), self.constant)
    }

    pub fn rank(&self) -> u32 {
        let p = self.p as u64;
        let mut a: Vec<Vec<u64>> =
            self.matrix.iter().map(|r| r.iter().map(|&c| c as u64).collect()).collect();
        let (rows, cols) = (self.dst as usize, self.src as usize);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let s = mod_inv(a[rank][col], p);
            for k in 0..cols {
                a[rank][k] = a[rank][k] * s % p;
            }
            for r in 0..rows {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col];
                    for k in 0..cols {
                        a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank as u32
    }

    pub fn is_permutation(&self) -> bool {
        self.src == self.dst && self.rank() == self.src
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.dst
    }

    /// Tabulated as an `(src, dst)` function.
    pub fn to_table(&self) -> FunctionTable {
        FunctionTable::from_fn(self.p, self.src, self.dst, |x| self.apply(x)).expect("consistent")
    }
}

/// `A1 ∘ F ∘ A2 + A`; omitted pieces are the identity or zero.
pub fn apply_affine(
    f: &FunctionTable,
    a1: Option<&AffineMap>,
    a2: Option<&AffineMap>,
    a: Option<&AffineMap>,
) -> Result<FunctionTable> {
    let check = |map: &AffineMap, src: u32, dst: u32, what: &str| -> Result<()> {
        if map.p != f.p || map.src != src || map.dst != dst {
            return Err(Error::DimensionMismatch(format!(
                "{what} must map F_{}^{} to F_{}^{}",
                f.p, src, f.p, dst
            )));
        }
        Ok(())
    };
    if let Some(a1) = a1 {
        check(a1, f.m, f.m, "outer map")?;
        if !a1.is_permutation() {
            return Err(Error::NotAPermutation);
        }
    }
    if let Some(a2) = a2 {
        check(a2, f.n, f.n, "inner map")?;
        if !a2.is_permutation() {
            return Err(Error::NotAPermutation);
        }
    }
    if let Some(a) = a {
        check(a, f.n, f.m, "added map")?;
    }
    let t = f.target();
    FunctionTable::from_fn(f.p, f.n, f.m, |x| {
        let inner = a2.map_or(x, |m| m.apply(x));
        let mut y = f.value(inner);
        if let Some(m) = a1 {
            y = m.apply(y);
        }
        if let Some(m) = a {
            y = t.add(y, m.apply(x));
        }
        y
    })
}

/// `b -> |{x : F(x + a) - F(x) = b}|` over all target indices.
pub fn derivative_histogram(f: &FunctionTable, a: u32) -> Result<Vec<u64>> {
    let src = f.source();
    if a >= src.size() {
        return Err(Error::IndexOutOfRange { index: a as u64, size: src.size() as u64 });
    }
    Ok(derivative_counts(f, a))
}

fn derivative_counts(f: &FunctionTable, a: u32) -> Vec<u64> {
    let src = f.source();
    let dst = f.target();
    let mut hist = vec![0u64; dst.size() as usize];
    if f.p == 2 {
        for x in 0..src.size() {
            hist[(f.value(x ^ a) ^ f.value(x)) as usize] += 1;
        }
    } else {
        for x in 0..src.size() {
            let d = dst.sub(f.value(src.add(x, a)), f.value(x));
            hist[d as usize] += 1;
        }
    }
    hist
}

/// Every nonzero derivative is balanced, checked exhaustively.
pub fn is_perfect_nonlinear(f: &FunctionTable) -> bool {
    if f.m > f.n {
        return false;
    }
    let expect = (f.p as u64).pow(f.n - f.m);
    (1..f.source().size())
        .into_par_iter()
        .all(|a| derivative_counts(f, a).iter().all(|&c| c == expect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_examples() {
        let a = parse_anf("x1*x2 + x3*x4", 2, 4).unwrap();
        assert_eq!((a.m(), a.monomial_count(0)), (1, 2));
        assert_eq!(
            parse_anf("x1 + x9", 2, 8).unwrap_err(),
            Error::VariableOutOfRange { var: 9, n: 8 }
        );
        assert!(matches!(parse_anf("x1 + + x2", 2, 4), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_anf("x1 $ x2", 2, 4), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_anf("", 2, 4), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_anf("x1^99999999999999999999", 3, 2),
            Err(Error::ExponentTooLarge { pos: 3 })
        ));
        // x^3 = x on F_3, 2*x1 + x1 = 0
        let b = parse_anf("x1^3 + 2 * x1 ; 2*x2^2 - x2^2", 3, 2).unwrap();
        assert_eq!(b.monomial_count(0), 0);
        assert_eq!(b.coordinate(1), vec![Monomial { coeff: 1, exps: vec![0, 2] }]);
        assert_eq!(parse_anf(" x1 *x2;x3 ", 2, 3).unwrap().m(), 2);
    }

    #[test]
    fn table_examples() {
        let zero = table_from_anf(&parse_anf("0", 2, 3).unwrap());
        assert!(zero.values().iter().all(|&v| v == 0));
        let and = table_from_anf(&parse_anf("x1*x2", 2, 2).unwrap());
        assert_eq!(and.values(), &[0, 0, 0, 1]);
        let g = table_from_anf(&parse_anf("x1^2 + 2*x2", 3, 2).unwrap());
        for x in 0..9u32 {
            let (x1, x2) = (x % 3, x / 3);
            assert_eq!(g.value(x), (x1 * x1 + 2 * x2) % 3);
        }
    }

    #[test]
    fn trace_square_on_f4_is_linear() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let t = TracePolynomial::new(&f4, 1, vec![(1, 2)]).unwrap();
        let table = table_from_trace_poly(&t).unwrap();
        // Tr(x^2) = Tr(x) takes each value twice
        assert_eq!(table.value(0), 0);
        let ones = table.values().iter().filter(|&&v| v == 1).count();
        assert_eq!(ones, 2);
    }

    #[test]
    fn derivative_examples() {
        let and = table_from_anf(&parse_anf("x1*x2", 2, 2).unwrap());
        assert_eq!(derivative_histogram(&and, 1).unwrap(), vec![2, 2]);
        assert_eq!(derivative_histogram(&and, 0).unwrap(), vec![4, 0]);
        assert!(derivative_histogram(&and, 4).is_err());
        let lin = table_from_anf(&parse_anf("x1 + x3", 2, 3).unwrap());
        for a in 0..8 {
            assert_eq!(derivative_histogram(&lin, a).unwrap().iter().filter(|&&c| c > 0).count(), 1);
        }
        assert!(!is_perfect_nonlinear(&lin));
    }

    #[test]
    fn pn_examples() {
        let bent = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        assert!(is_perfect_nonlinear(&bent));
        // brute force oracle over all 15 shifts
        for a in 1..16u32 {
            let mut c = [0; 2];
            for x in 0..16u32 {
                c[(bent.value(x ^ a) ^ bent.value(x)) as usize] += 1;
            }
            assert_eq!(c, [8, 8]);
        }
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let sq = FunctionTable::from_fn(3, 2, 2, |x| f9.mul(x, x)).unwrap();
        assert!(is_perfect_nonlinear(&sq));
        let id = FunctionTable::from_fn(3, 2, 2, |x| x).unwrap();
        assert!(!is_perfect_nonlinear(&id));
    }

    #[test]
    fn trace_square_is_pn_on_small_fields() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 1), (11, 2)] {
            let f = FieldSpec::new(p, n, None).unwrap();
            let t = TracePolynomial::new(&f, 1, vec![(1, 2)]).unwrap();
            assert!(is_perfect_nonlinear(&table_from_trace_poly(&t).unwrap()), "p={p} n={n}");
        }
    }

    #[test]
    fn affine_maps() {
        let id = AffineMap::identity(3, 2);
        assert!(id.is_permutation());
        let sing = AffineMap::linear(2, 2, 2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(sing.rank(), 1);
        let bent = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        assert_eq!(apply_affine(&bent, None, None, None).unwrap(), bent);
        assert_eq!(apply_affine(&bent, Some(&AffineMap::identity(2, 1)), Some(&AffineMap::identity(2, 4)), None).unwrap(), bent);
        let bad = AffineMap::linear(2, 4, 4, vec![vec![1, 0, 0, 0]; 4]).unwrap();
        assert_eq!(apply_affine(&bent, None, Some(&bad), None).unwrap_err(), Error::NotAPermutation);
        assert!(matches!(
            apply_affine(&bent, None, Some(&AffineMap::identity(2, 3)), None),
            Err(Error::DimensionMismatch(_))
        ));
        let proj = AffineMap::projection(2, 3, 2);
        assert_eq!(proj.apply(0b111), 0b11);
        assert!(proj.is_surjective());
        let cols = AffineMap::from_columns(2, 2, &[1, 2, 3]).unwrap();
        assert_eq!(cols.apply(0b100), 3);
    }

    #[test]
    fn text_round_trip() {
        let t = table_from_anf(&parse_anf("x1*x2 + x3; x2", 2, 3).unwrap());
        assert_eq!(FunctionTable::from_text(&t.to_text()).unwrap(), t);
        assert!(matches!(FunctionTable::from_text("2 2\n0\n"), Err(Error::Format(_))));
        assert!(matches!(FunctionTable::from_text("2 1 1\n0\n2\n"), Err(Error::IndexOutOfRange { .. })));
        let a = parse_anf("2*x1^2*x2 + 1; x2", 3, 2).unwrap();
        assert_eq!(parse_anf(&a.to_text(), 3, 2).unwrap(), a);
    }

    fn random_table(p: u32, n: u32, m: u32, seed: u64) -> FunctionTable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = p.pow(m);
        FunctionTable::new(p, n, m, (0..p.pow(n)).map(|_| rng.gen_range(0..q)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn anf_round_trip_boolean(n in 1u32..=8, m in 1u32..=3, seed in any::<u64>()) {
            let t = random_table(2, n, m, seed);
            prop_assert_eq!(table_from_anf(&anf_of(&t)), t);
        }

        #[test]
        fn anf_round_trip_odd(p in prop::sample::select(vec![3u32, 5]), n in 1u32..=3, seed in any::<u64>()) {
            let t = random_table(p, n, 2, seed);
            prop_assert_eq!(table_from_anf(&anf_of(&t)), t);
        }

        #[test]
        fn histogram_mass(seed in any::<u64>(), a in 0u32..81) {
            let t = random_table(3, 4, 2, seed);
            prop_assert_eq!(derivative_histogram(&t, a).unwrap().iter().sum::<u64>(), 81);
        }

        #[test]
        fn pn_invariant_under_equivalence(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bent = table_from_anf(&parse_anf("x1*x3 + x2*x4; x1*x4 + x2*x3 + x2*x4", 2, 4).unwrap());
            let perm = |rng: &mut ChaCha8Rng, k| loop {
                let a = AffineMap::random_linear(2, k, k, rng);
                if a.is_permutation() {
                    break a;
                }
            };
            let a1 = perm(&mut rng, 2);
            let a2 = perm(&mut rng, 4);
            let a = AffineMap::random_linear(2, 4, 2, &mut rng);
            let g = apply_affine(&bent, Some(&a1), Some(&a2), Some(&a)).unwrap();
            prop_assert!(is_perfect_nonlinear(&bent));
            prop_assert!(is_perfect_nonlinear(&g));
        }
    }
}
