//! Primary and secondary constructions of vectorial bent and planar functions.
//!
//! Pairs `(x, y)` of half-size field elements are encoded as `x + q·y` with `x`
//! in the low digits. Subfield-valued outputs use [`SubfieldCoords`](crate::field::SubfieldCoords).

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::function::{is_perfect_nonlinear, parse_anf, table_from_anf, AffineMap, FunctionTable};
use crate::space::Space;

/// The 4-coordinate ANF of the reference `(8, 4)` bent function.
pub const SEED_8_4_ANF: &str = "\
x1*x5 + x2*x6 + x3*x7 + x4*x8;
x1*x3 + x1*x4 + x3*x4 + x2*x5 + x4*x5 + x3*x6 + x4*x6 + x1*x7 + x3*x7 + x4*x7 + x2*x8;
x1*x5 + x3*x5 + x4*x5 + x2*x6 + x3*x6 + x2*x7 + x1*x8 + x2*x8;
x1*x3 + x1*x4 + x3*x5 + x2*x7 + x5*x7 + x1*x8 + x6*x8";

fn is_bijective(values: &[u32], size: u32) -> bool {
    if values.len() != size as usize {
        return false;
    }
    let mut seen = vec![false; size as usize];
    for &v in values {
        if v >= size || std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    true
}

fn check_linear_surjective(l: &AffineMap, p: u32, src: u32, dst: u32) -> Result<()> {
    if l.p() != p || l.source_dim() != src || l.target_dim() != dst {
        return Err(Error::DimensionMismatch(format!("linear map must be F_{p}^{src} -> F_{p}^{dst}")));
    }
    if !l.is_linear() {
        return Err(Error::NotLinear);
    }
    if !l.is_surjective() {
        return Err(Error::NotSurjective);
    }
    Ok(())
}

/// `F(x, y) = L(x π(y)) + ρ(y)` on `F_{p^k} x F_{p^k}` with `k = field.degree()`.
pub fn mm_bent(field: &FieldSpec, pi: &[u32], rho: &FunctionTable, l: &AffineMap) -> Result<FunctionTable> {
    let (p, k, q) = (field.p(), field.degree(), field.size());
    if !is_bijective(pi, q) {
        return Err(Error::NotBijective);
    }
    let m = rho.m();
    if rho.p() != p || rho.n() != k {
        return Err(Error::DimensionMismatch(format!("rho must be an ({k}, {m}) table over F_{p}")));
    }
    check_linear_surjective(l, p, k, m)?;
    let t = Space::new(p, m);
    FunctionTable::from_fn(p, 2 * k, m, |z| {
        let (x, y) = (z % q, z / q);
        t.add(l.apply(field.mul(x, pi[y as usize])), rho.value(y))
    })
}

/// `F(x, y) = Ψ(x y^(q - 2))` for a balanced `Ψ: F_{p^k} -> F_p^m`.
pub fn psap_bent(field: &FieldSpec, psi: &FunctionTable) -> Result<FunctionTable> {
    let (p, k, q) = (field.p(), field.degree(), field.size());
    if psi.p() != p || psi.n() != k {
        return Err(Error::DimensionMismatch(format!("psi must be defined on F_{p}^{k}")));
    }
    let m = psi.m();
    if m > k {
        return Err(Error::NotBalanced);
    }
    let mut counts = vec![0u32; p.pow(m) as usize];
    for &v in psi.values() {
        counts[v as usize] += 1;
    }
    if counts.iter().any(|&c| c != p.pow(k - m)) {
        return Err(Error::NotBalanced);
    }
    FunctionTable::from_fn(p, 2 * k, m, |z| {
        let (x, y) = (z % q, z / q);
        psi.value(field.mul(x, field.pow(y, q as u64 - 2)))
    })
}

/// Whether `Ψ` permutes `F_{2^k}` and every `z -> (Ψ(z + a) + Ψ(a)) / z` (0 at 0) does too.
pub fn is_o_polynomial(field: &FieldSpec, psi: &[u32]) -> bool {
    let q = field.size();
    if field.p() != 2 || !is_bijective(psi, q) {
        return false;
    }
    let inv: Vec<u32> = (0..q).map(|z| field.inv(z).unwrap_or(0)).collect();
    (1..q).all(|a| {
        let quotient: Vec<u32> = (0..q)
            .map(|z| {
                if z == 0 {
                    0
                } else {
                    field.mul(psi[(z ^ a) as usize] ^ psi[a as usize], inv[z as usize])
                }
            })
            .collect();
        is_bijective(&quotient, q)
    })
}

/// `F(x, y) = x Ψ(y x^(2^(k-1)))` for an o-polynomial `Ψ` on `F_{2^k}`.
pub fn opoly_bent(field: &FieldSpec, psi: &[u32]) -> Result<FunctionTable> {
    if field.p() != 2 {
        return Err(Error::OddPrime);
    }
    if !is_o_polynomial(field, psi) {
        return Err(Error::NotOPolynomial);
    }
    let (k, q) = (field.degree(), field.size());
    let e = 1u64 << (k - 1);
    FunctionTable::from_fn(2, 2 * k, k, |z| {
        let (x, y) = (z % q, z / q);
        field.mul(x, psi[field.mul(y, field.pow(x, e)) as usize])
    })
}

/// Smallest nonzero element index that is not a `d`-th power.
pub fn first_non_power(field: &FieldSpec, d: u64) -> Option<u32> {
    (1..field.size()).find(|&x| !field.is_power(x, d))
}

fn half_trace_table(field: &FieldSpec, lambda: u32, d: u64) -> Result<FunctionTable> {
    let n = field.degree();
    let coords = field.subfield_coords(n / 2)?;
    FunctionTable::from_fn(field.p(), n, n / 2, |x| {
        let v = field.trace(field.mul(lambda, field.pow(x, d)), n / 2).expect("n/2 divides n");
        coords.encode(v).expect("trace lies in the subfield")
    })
}

/// The Gold exponent `2^(2^r) + 1` where `n = 2^(r+1) s`, `s` odd.
pub fn gold_exponent(n: u32) -> Result<u64> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::BadParameters(format!("Gold construction needs even n, got {n}")));
    }
    let r = n.trailing_zeros() - 1;
    Ok((1u64 << (1u64 << r)) + 1)
}

/// `Tr^n_{n/2}(λ x^(2^(2^r) + 1))` on `F_{2^n}`.
pub fn gold_bent(field: &FieldSpec, lambda: u32) -> Result<FunctionTable> {
    if field.p() != 2 {
        return Err(Error::OddPrime);
    }
    let d = gold_exponent(field.degree())?;
    if lambda == 0 || lambda >= field.size() || field.is_power(lambda, d) {
        return Err(Error::BadLambda(format!("λ = {lambda} is a {d}-th power")));
    }
    half_trace_table(field, lambda, d)
}

/// `Tr^n_{n/2}(λ x^(4^i - 2^i + 1))` on `F_{2^n}` with `n/2` odd and `gcd(i, n) = 1`.
pub fn kasami_bent(field: &FieldSpec, i: u32, lambda: u32) -> Result<FunctionTable> {
    if field.p() != 2 {
        return Err(Error::OddPrime);
    }
    let n = field.degree();
    if n % 2 != 0 || (n / 2) % 2 != 1 {
        return Err(Error::BadParameters(format!("Kasami construction needs n/2 odd, got n = {n}")));
    }
    if i == 0 || i.gcd(&n) != 1 || i >= 32 {
        return Err(Error::BadParameters(format!("gcd({i}, {n}) must be 1")));
    }
    if lambda == 0 || lambda >= field.size() || field.is_power(lambda, 3) {
        return Err(Error::BadLambda(format!("λ = {lambda} is a cube")));
    }
    let d = (1u64 << (2 * i)) - (1u64 << i) + 1;
    half_trace_table(field, lambda, d)
}

/// `Tr^n_{n/2}(λ x^d)` on `F_{p^n}`, `p` odd, with `gcd(d, p^(n/2) - 1) = 2`; rejected unless bent.
pub fn pary_monomial_bent(field: &FieldSpec, d: u64, lambda: u32) -> Result<FunctionTable> {
    let (p, n) = (field.p(), field.degree());
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if n % 2 != 0 {
        return Err(Error::BadParameters(format!("n must be even, got {n}")));
    }
    if lambda >= field.size() {
        return Err(Error::IndexOutOfRange { index: lambda as u64, size: field.size() as u64 });
    }
    let modulus = (p as u64).pow(n / 2) - 1;
    let g = d.gcd(&modulus);
    if g != 2 {
        return Err(Error::BadGcd { d, modulus, gcd: g });
    }
    let t = half_trace_table(field, lambda, d)?;
    if !is_perfect_nonlinear(&t) {
        return Err(Error::NotBent);
    }
    Ok(t)
}

/// Whether the monomial construction above lands on the `(+)` side for this `λ`.
pub fn pary_monomial_is_plus(field: &FieldSpec, lambda: u32) -> bool {
    let half = (field.p() as u64).pow(field.degree() / 2);
    let square = field.is_square(lambda);
    (half % 4 == 3 && square) || (half % 4 == 1 && !square)
}

/// `x -> x^d` on `F_{p^n}` as an `(n, n)` table.
pub fn planar_monomial(field: &FieldSpec, d: u64) -> FunctionTable {
    FunctionTable::from_fn(field.p(), field.degree(), field.degree(), |x| field.pow(x, d))
        .expect("consistent shape")
}

/// `F(x, y) = F1(x) + F2(y)`, `x` in the low digits.
pub fn direct_sum(f1: &FunctionTable, f2: &FunctionTable) -> Result<FunctionTable> {
    if f1.p() != f2.p() || f1.m() != f2.m() {
        return Err(Error::ShapeMismatch(format!(
            "direct sum needs equal p and m, got ({}, {}) and ({}, {})",
            f1.p(),
            f1.m(),
            f2.p(),
            f2.m()
        )));
    }
    let size = f1.source().size();
    let t = f1.target();
    FunctionTable::from_fn(f1.p(), f1.n() + f2.n(), f1.m(), |z| t.add(f1.value(z % size), f2.value(z / size)))
}

/// `L ∘ F` for a surjective linear `L: F_p^m -> F_p^k`.
pub fn compose_surjective_linear(f: &FunctionTable, l: &AffineMap) -> Result<FunctionTable> {
    check_linear_surjective(l, f.p(), f.m(), l.target_dim())?;
    FunctionTable::from_fn(f.p(), f.n(), l.target_dim(), |x| l.apply(f.value(x)))
}

/// Keeps the first `k` output coordinates.
pub fn coordinate_restriction(f: &FunctionTable, k: u32) -> Result<FunctionTable> {
    if k == 0 || k > f.m() {
        return Err(Error::RangeError(format!("k = {k} outside 1..={}", f.m())));
    }
    let q = f.p().pow(k);
    FunctionTable::new(f.p(), f.n(), k, f.values().iter().map(|v| v % q).collect())
}

/// The reference `(8, 4)` vectorial bent function.
pub fn seed_function_8_4() -> FunctionTable {
    table_from_anf(&parse_anf(SEED_8_4_ANF, 2, 8).expect("embedded ANF parses"))
}

/// A buildable description of any construction, with defaults for omitted parameters.
#[derive(Debug, Clone)]
pub enum ConstructionRecipe {
    /// Defaults: `π = id`, `ρ = 0`, `L` = projection onto the first `m` coordinates.
    MaioranaMcFarland { p: u32, n: u32, m: u32, pi: Option<Vec<u32>>, rho: Option<FunctionTable>, l: Option<AffineMap> },
    /// Default `Ψ`: projection onto the first `m` coordinates.
    PartialSpread { p: u32, n: u32, m: u32, psi: Option<FunctionTable> },
    /// Default `Ψ(z) = z^2`.
    OPolynomial { n: u32, psi: Option<Vec<u32>> },
    /// Default `λ`: the first element that is not a Gold-exponent power.
    Gold { n: u32, lambda: Option<u32> },
    /// Default `λ`: the first non-cube.
    Kasami { n: u32, i: u32, lambda: Option<u32> },
    /// Default `λ = 1`.
    PAryMonomial { p: u32, n: u32, d: u64, lambda: Option<u32> },
    PlanarMonomial { p: u32, n: u32, d: u64 },
    DirectSum(Box<ConstructionRecipe>, Box<ConstructionRecipe>),
    LinearImage { inner: Box<ConstructionRecipe>, l: AffineMap },
    CoordinateRestriction { inner: Box<ConstructionRecipe>, k: u32 },
    Seed84,
}

fn half_field(p: u32, n: u32) -> Result<FieldSpec> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::BadParameters(format!("n must be even, got {n}")));
    }
    FieldSpec::new(p, n / 2, None)
}

impl ConstructionRecipe {
    pub fn build(&self) -> Result<FunctionTable> {
        use ConstructionRecipe::*;
        match self {
            MaioranaMcFarland { p, n, m, pi, rho, l } => {
                let f = half_field(*p, *n)?;
                let k = n / 2;
                if *m == 0 || *m > k {
                    return Err(Error::BadParameters(format!("need 1 <= m <= n/2, got m = {m}")));
                }
                let pi = pi.clone().unwrap_or_else(|| (0..f.size()).collect());
                let rho = rho.clone().unwrap_or_else(|| FunctionTable::zero(*p, k, *m));
                let l = l.clone().unwrap_or_else(|| AffineMap::projection(*p, k, *m));
                mm_bent(&f, &pi, &rho, &l)
            }
            PartialSpread { p, n, m, psi } => {
                let f = half_field(*p, *n)?;
                let k = n / 2;
                if *m == 0 || *m > k {
                    return Err(Error::BadParameters(format!("need 1 <= m <= n/2, got m = {m}")));
                }
                let psi = match psi {
                    Some(t) => t.clone(),
                    None => AffineMap::projection(*p, k, *m).to_table(),
                };
                psap_bent(&f, &psi)
            }
            OPolynomial { n, psi } => {
                let f = half_field(2, *n)?;
                let psi = psi.clone().unwrap_or_else(|| (0..f.size()).map(|z| f.mul(z, z)).collect());
                opoly_bent(&f, &psi)
            }
            Gold { n, lambda } => {
                let f = FieldSpec::new(2, *n, None)?;
                let lambda = match lambda {
                    Some(l) => *l,
                    None => first_non_power(&f, gold_exponent(*n)?)
                        .ok_or_else(|| Error::BadParameters("every element is a power".into()))?,
                };
                gold_bent(&f, lambda)
            }
            Kasami { n, i, lambda } => {
                let f = FieldSpec::new(2, *n, None)?;
                let lambda = match lambda {
                    Some(l) => *l,
                    None => first_non_power(&f, 3).ok_or_else(|| Error::BadParameters("no non-cube".into()))?,
                };
                kasami_bent(&f, *i, lambda)
            }
            PAryMonomial { p, n, d, lambda } => {
                let f = FieldSpec::new(*p, *n, None)?;
                pary_monomial_bent(&f, *d, lambda.unwrap_or(1))
            }
            PlanarMonomial { p, n, d } => {
                if *p == 2 {
                    return Err(Error::EvenPrime);
                }
                Ok(planar_monomial(&FieldSpec::new(*p, *n, None)?, *d))
            }
            DirectSum(a, b) => direct_sum(&a.build()?, &b.build()?),
            LinearImage { inner, l } => compose_surjective_linear(&inner.build()?, l),
            CoordinateRestriction { inner, k } => coordinate_restriction(&inner.build()?, *k),
            Seed84 => Ok(seed_function_8_4()),
        }
    }
}
