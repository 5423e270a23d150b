//! Exact Walsh spectra, plateau and regularity classification, `k_a` profiles.
//!
//! All transforms use the coordinate-dot scalar product on input and output
//! indices: `W_F(b, a) = sum_x ζ^(<b, F(x)> - <a, x>)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{gauss_sum, CyclotomicInt};
use crate::error::{Error, Result};
use crate::function::FunctionTable;
use crate::scalar::Scalar;
use crate::space::Space;
use crate::Cyclotomic;

/// Walsh values of one component `F_b`, indexed by `a`, with 64-bit coefficients.
pub fn walsh_component(f: &FunctionTable, b: u32) -> Result<Vec<Cyclotomic>> {
    walsh_component_as::<i64>(f, b)
}

/// [`walsh_component`] by direct summation over all `x` for every `a`.
pub fn walsh_component_naive(f: &FunctionTable, b: u32) -> Vec<Cyclotomic> {
    let (p, s, t) = (f.p(), f.source(), f.target());
    (0..s.size())
        .map(|a| {
            let mut full = vec![0i64; p as usize];
            for x in 0..s.size() {
                let e = (t.dot(b, f.value(x)) + p - s.dot(a, x)) % p;
                full[e as usize] += 1;
            }
            CyclotomicInt::from_full(p, full)
        })
        .collect()
}

/// [`walsh_component`] with a caller-chosen coefficient type.
pub fn walsh_component_as<T: Scalar>(f: &FunctionTable, b: u32) -> Result<Vec<CyclotomicInt<T>>> {
    if b == 0 {
        return Err(Error::ZeroComponent);
    }
    let t = f.target();
    if b >= t.size() {
        return Err(Error::IndexOutOfRange { index: b as u64, size: t.size() as u64 });
    }
    let values: Vec<u32> = f.values().iter().map(|&v| t.dot(b, v)).collect();
    Ok(walsh_of_values(f.p(), f.n(), &values))
}

/// Walsh transform of a single-output function given by its values in `[0, p)`.
pub fn walsh_of_values<T: Scalar>(p: u32, n: u32, values: &[u32]) -> Vec<CyclotomicInt<T>> {
    if p == 2 {
        return fwht(values)
            .into_iter()
            .map(|v| CyclotomicInt::from_integer(2, T::from_i64_exact(v)))
            .collect();
    }
    let pu = p as usize;
    let size = values.len();
    // length-p representation per point: buf[x * p + r] is the coefficient of ζ^r
    let mut buf = vec![T::zero(); size * pu];
    for (x, &v) in values.iter().enumerate() {
        buf[x * pu + v as usize] = T::one();
    }
    let mut gather = vec![T::zero(); pu * pu];
    let mut out = vec![T::zero(); pu * pu];
    let mut stride = 1usize;
    for _ in 0..n {
        for block in (0..size).step_by(stride * pu) {
            for off in 0..stride {
                let base = block + off;
                for xj in 0..pu {
                    let at = (base + xj * stride) * pu;
                    gather[xj * pu..(xj + 1) * pu].clone_from_slice(&buf[at..at + pu]);
                }
                for o in out.iter_mut() {
                    *o = T::zero();
                }
                for k in 0..pu {
                    for xj in 0..pu {
                        let shift = k * xj % pu;
                        let src = &gather[xj * pu..(xj + 1) * pu];
                        for r in 0..pu {
                            let c = &src[(r + shift) % pu];
                            if !c.is_zero() {
                                out[k * pu + r] = out[k * pu + r].clone() + c.clone();
                            }
                        }
                    }
                }
                for k in 0..pu {
                    let at = (base + k * stride) * pu;
                    buf[at..at + pu].clone_from_slice(&out[k * pu..(k + 1) * pu]);
                }
            }
        }
        stride *= pu;
    }
    buf.chunks(pu).map(|c| CyclotomicInt::from_full(p, c.to_vec())).collect()
}

/// In-place fast Walsh–Hadamard transform of `(-1)^f`.
fn fwht(values: &[u32]) -> Vec<i64> {
    let mut a: Vec<i64> = values.iter().map(|&v| if v & 1 == 0 { 1 } else { -1 }).collect();
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
    a
}

/// All components `b != 0` of the Walsh transform.
#[derive(Debug, Clone, Serialize)]
pub struct WalshSpectrum {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub components: BTreeMap<u32, Vec<Cyclotomic>>,
}

impl WalshSpectrum {
    pub fn compute(f: &FunctionTable) -> Self {
        let components = (1..f.target().size())
            .into_par_iter()
            .map(|b| (b, walsh_component(f, b).expect("b is a nonzero target index")))
            .collect();
        WalshSpectrum { p: f.p(), n: f.n(), m: f.m(), components }
    }

    pub fn get(&self, b: u32, a: u32) -> Option<&Cyclotomic> {
        self.components.get(&b).and_then(|c| c.get(a as usize))
    }

    /// `sum_a |W_{F_b}(a)|^2 = p^(2n)` for every component.
    pub fn parseval_holds(&self) -> bool {
        let total = (self.p as i128).pow(2 * self.n);
        self.components.values().all(|c| parseval_sum(c) == Some(total))
    }
}

fn abs_squared_wide(w: &Cyclotomic) -> Option<i128> {
    w.convert::<i128>()?.abs_squared().as_integer()
}

/// `sum_a |W(a)|^2`; individual terms may be irrational, the sum never is.
pub fn parseval_sum(component: &[Cyclotomic]) -> Option<i128> {
    let p = component.first()?.p();
    let mut acc = CyclotomicInt::<i128>::zero(p);
    for w in component {
        acc = acc + w.convert::<i128>()?.abs_squared();
    }
    acc.as_integer()
}

/// `b -> W_F(b, 0)` for all `b != 0`, computed from the preimage counts.
pub fn spectrum_at_zero(f: &FunctionTable) -> BTreeMap<u32, Cyclotomic> {
    let t = f.target();
    let p = f.p();
    let mut counts = vec![0i64; t.size() as usize];
    for &v in f.values() {
        counts[v as usize] += 1;
    }
    (1..t.size())
        .map(|b| {
            let mut full = vec![0i64; p as usize];
            for (beta, &c) in counts.iter().enumerate() {
                if c != 0 {
                    full[t.dot(b, beta as u32) as usize] += c;
                }
            }
            (b, CyclotomicInt::from_full(p, full))
        })
        .collect()
}

/// Plateau amplitudes `s_b`; `None` marks a component that is not plateaued.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlateauProfile {
    pub amplitudes: BTreeMap<u32, Option<u32>>,
    pub is_bent: bool,
    pub is_plateaued: bool,
}

/// Amplitude of one component: every `|W|^2` is `0` or `p^(n + s)` for a single `s`.
pub fn component_amplitude(p: u32, n: u32, component: &[Cyclotomic]) -> Option<u32> {
    let mut level: Option<i128> = None;
    for w in component {
        let a = abs_squared_wide(w)?;
        if a == 0 {
            continue;
        }
        match level {
            None => level = Some(a),
            Some(l) if l != a => return None,
            _ => {}
        }
    }
    let mut l = level?;
    let pw = p as i128;
    let mut e = 0u32;
    while l % pw == 0 {
        l /= pw;
        e += 1;
    }
    (l == 1 && e >= n && e <= 2 * n).then(|| e - n)
}

pub fn plateau_profile(f: &FunctionTable) -> PlateauProfile {
    let (p, n) = (f.p(), f.n());
    let amplitudes: BTreeMap<u32, Option<u32>> = (1..f.target().size())
        .into_par_iter()
        .map(|b| {
            let w = walsh_component(f, b).expect("nonzero component");
            (b, component_amplitude(p, n, &w))
        })
        .collect();
    let is_plateaued = amplitudes.values().all(Option::is_some);
    let is_bent = amplitudes.values().all(|s| *s == Some(0));
    PlateauProfile { amplitudes, is_bent, is_plateaued }
}

/// The sign `ε` in `W = ε ζ^t p^(n/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Epsilon {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl Epsilon {
    /// `ε ∈ {1, i}`, the branch with the `+` sign in the preimage formulas.
    pub fn is_upper(self) -> bool {
        matches!(self, Epsilon::PlusOne | Epsilon::PlusI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    WeaklyRegularNotRegular(Epsilon),
    NonWeaklyRegular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityClass {
    pub verdict: Regularity,
    /// Per-point signs, in input order.
    pub signs: Vec<Epsilon>,
    /// `f*` when the function is weakly regular.
    pub dual: Option<FunctionTable>,
}

/// Writes `w = ε ζ^t p^(n/2)` (with the Gauss sum factored out for odd `n`).
pub fn sign_and_shift(p: u32, n: u32, w: &Cyclotomic) -> Option<(Epsilon, u32)> {
    if p == 2 {
        if n % 2 != 0 {
            return None;
        }
        let v = w.as_integer()?;
        let half = 1i64 << (n / 2);
        return match v {
            _ if v == half => Some((Epsilon::PlusOne, 0)),
            _ if v == -half => Some((Epsilon::PlusOne, 1)),
            _ => None,
        };
    }
    let scale = (p as i64).pow(n / 2);
    let unit = w.div_exact(&scale)?;
    let base = if n % 2 == 0 { Cyclotomic::one(p) } else { gauss_sum::<i64>(p).ok()? };
    for t in 0..p {
        let z = base.mul_zeta_pow(t as u64);
        let sigma = if unit == z {
            1
        } else if unit == -z {
            -1
        } else {
            continue;
        };
        let eps = match (n % 2 == 0 || p % 4 == 1, sigma) {
            (true, 1) => Epsilon::PlusOne,
            (true, _) => Epsilon::MinusOne,
            (false, 1) => Epsilon::PlusI,
            (false, _) => Epsilon::MinusI,
        };
        return Some((eps, t));
    }
    None
}

/// Regular / weakly regular classification of a single-output bent function.
pub fn classify_regularity(f: &FunctionTable) -> Result<RegularityClass> {
    if f.m() != 1 {
        return Err(Error::NotSingleOutput);
    }
    let (p, n) = (f.p(), f.n());
    let w = walsh_component(f, 1)?;
    if component_amplitude(p, n, &w) != Some(0) {
        return Err(Error::NotBent);
    }
    let mut signs = Vec::with_capacity(w.len());
    let mut shifts = Vec::with_capacity(w.len());
    for v in &w {
        let (e, t) = sign_and_shift(p, n, v).ok_or(Error::NotBent)?;
        signs.push(e);
        shifts.push(t);
    }
    let first = signs[0];
    let verdict = if signs.iter().any(|&e| e != first) {
        Regularity::NonWeaklyRegular
    } else if first == Epsilon::PlusOne {
        Regularity::Regular
    } else {
        Regularity::WeaklyRegularNotRegular(first)
    };
    let dual = match verdict {
        Regularity::NonWeaklyRegular => None,
        _ => Some(FunctionTable::new(p, n, 1, shifts)?),
    };
    Ok(RegularityClass { verdict, signs, dual })
}

/// `a -> k_a` for a bent `F` with `W_F(b, 0) = ε p^(n/2) ζ^(r_b)` and a common `ε`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KaProfile {
    pub epsilon: Epsilon,
    /// `k_a` indexed by the target index `a`.
    pub ka: Vec<u64>,
    /// `r_b` indexed by `b` (entry 0 unused).
    pub shifts: Vec<u32>,
    /// For `p = 2`: the set `{b : W_F(b, 0) = -2^(n/2)}`.
    pub sign_set: Option<Vec<u32>>,
}

impl KaProfile {
    pub fn k0(&self) -> u64 {
        self.ka[0]
    }
}

pub fn ka_profile(f: &FunctionTable) -> Result<KaProfile> {
    let (p, n, m) = (f.p(), f.n(), f.m());
    if n % 2 != 0 {
        return Err(Error::HypothesisFailed("W_F(b, 0) = ε p^(n/2) ζ^r needs even n".into()));
    }
    let at_zero = spectrum_at_zero(f);
    let mut eps: Option<Epsilon> = None;
    let mut shifts = vec![0u32; (p as usize).pow(m)];
    for (&b, w) in &at_zero {
        let (e, t) = sign_and_shift(p, n, w).ok_or_else(|| {
            Error::HypothesisFailed(format!("W_F({b}, 0) = {w} is not ±p^(n/2) ζ^t"))
        })?;
        match eps {
            None => eps = Some(e),
            Some(prev) if prev != e => {
                return Err(Error::HypothesisFailed("the signs ε differ between components".into()))
            }
            _ => {}
        }
        shifts[b as usize] = t;
    }
    let epsilon = eps.unwrap_or(Epsilon::PlusOne);
    let t = Space::new(p, m);
    let ka = (0..t.size())
        .map(|a| {
            (1..t.size())
                .filter(|&b| (shifts[b as usize] + p - t.dot(a, b)) % p == 1 % p)
                .count() as u64
        })
        .collect();
    let sign_set = (p == 2).then(|| (1..t.size()).filter(|&b| shifts[b as usize] == 1).collect());
    Ok(KaProfile { epsilon, ka, shifts, sign_set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::field::FieldSpec;
    use crate::function::{is_perfect_nonlinear, parse_anf, table_from_anf, table_from_trace_poly, TracePolynomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_table(p: u32, n: u32, m: u32, rng: &mut ChaCha8Rng) -> FunctionTable {
        let q = p.pow(m);
        FunctionTable::new(p, n, m, (0..p.pow(n)).map(|_| rng.gen_range(0..q)).collect()).unwrap()
    }

    #[test]
    fn butterfly_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(2, 1), (2, 4), (2, 7), (3, 1), (3, 3), (3, 4), (5, 2), (7, 2)] {
            for _ in 0..5 {
                let f = random_table(p, n, 2, &mut rng);
                for b in 1..p * p {
                    assert_eq!(walsh_component(&f, b).unwrap(), walsh_component_naive(&f, b), "p={p} n={n} b={b}");
                }
            }
        }
    }

    #[test]
    fn generic_coefficients_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_table(3, 3, 1, &mut rng);
        let small = walsh_component(&f, 1).unwrap();
        let big = walsh_component_as::<num_bigint::BigInt>(&f, 1).unwrap();
        for (s, b) in small.iter().zip(&big) {
            assert_eq!(&s.convert::<num_bigint::BigInt>().unwrap(), b);
        }
    }

    #[test]
    fn boolean_examples() {
        let f = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        let w = walsh_component(&f, 1).unwrap();
        assert_eq!(w[0].as_integer(), Some(4));
        assert!(w.iter().all(|v| v.as_integer().unwrap().abs() == 4));
        let z = FunctionTable::zero(2, 2, 1);
        let w = walsh_component(&z, 1).unwrap();
        assert_eq!(w.iter().map(|v| v.as_integer().unwrap()).collect::<Vec<_>>(), vec![4, 0, 0, 0]);
        assert_eq!(walsh_component(&z, 0).unwrap_err(), Error::ZeroComponent);
        assert_eq!(spectrum_at_zero(&FunctionTable::zero(3, 2, 1))[&1].as_integer(), Some(9));
    }

    #[test]
    fn trace_square_f9_is_bent() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let t = table_from_trace_poly(&TracePolynomial::new(&f9, 1, vec![(1, 2)]).unwrap()).unwrap();
        let w = walsh_component(&t, 1).unwrap();
        assert!(w.iter().all(|v| v.abs_squared().as_integer() == Some(9)));
        let class = classify_regularity(&t).unwrap();
        assert_ne!(class.verdict, Regularity::NonWeaklyRegular);
        assert!(class.dual.is_some());
    }

    #[test]
    fn plateau_examples() {
        let and3 = table_from_anf(&parse_anf("x1*x2*x3", 2, 3).unwrap());
        // |W| in {6, 2}: not plateaued, checked against the naive transform
        let w = walsh_component_naive(&and3, 1);
        let mags: std::collections::BTreeSet<i64> = w.iter().map(|v| v.as_integer().unwrap().abs()).collect();
        assert_eq!(mags.into_iter().collect::<Vec<_>>(), vec![2, 6]);
        assert!(!plateau_profile(&and3).is_plateaued);
        let maj = FunctionTable::from_fn(2, 5, 1, |x| (x.count_ones() >= 3) as u32).unwrap();
        assert!(!plateau_profile(&maj).is_plateaued);
        let semi = table_from_anf(&parse_anf("x1*x2", 2, 3).unwrap());
        let prof = plateau_profile(&semi);
        assert!(prof.is_plateaued && !prof.is_bent);
        assert_eq!(prof.amplitudes[&1], Some(1));
        assert!(plateau_profile(&seed_function_8_4()).is_bent);
    }

    #[test]
    fn signs_at_zero() {
        let gold = ConstructionRecipe::Gold { n: 4, lambda: None }.build().unwrap();
        for (_, w) in spectrum_at_zero(&gold) {
            assert_eq!(w.as_integer(), Some(-4));
        }
        let mm = ConstructionRecipe::MaioranaMcFarland { p: 2, n: 6, m: 3, pi: None, rho: None, l: None }.build().unwrap();
        for (_, w) in spectrum_at_zero(&mm) {
            assert_eq!(w.as_integer(), Some(8));
        }
    }

    #[test]
    fn ka_examples() {
        let mm = ConstructionRecipe::MaioranaMcFarland { p: 2, n: 6, m: 3, pi: None, rho: None, l: None }.build().unwrap();
        let k = ka_profile(&mm).unwrap();
        assert_eq!(k.k0(), 0);
        assert!(k.ka[1..].iter().all(|&v| v == 4));
        assert_eq!(k.sign_set.as_deref(), Some(&[][..]));
        let kas = ConstructionRecipe::Kasami { n: 6, i: 1, lambda: None }.build().unwrap();
        assert_eq!(ka_profile(&kas).unwrap().k0(), 7);
        let seed = ka_profile(&seed_function_8_4()).unwrap();
        assert!(seed.ka.iter().all(|&v| v % 2 == seed.ka[0] % 2));
        let f27 = FieldSpec::new(3, 3, None).unwrap();
        let odd = table_from_trace_poly(&TracePolynomial::new(&f27, 1, vec![(1, 2)]).unwrap()).unwrap();
        assert!(matches!(ka_profile(&odd), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn odd_n_signs() {
        let f27 = FieldSpec::new(3, 3, None).unwrap();
        let t = table_from_trace_poly(&TracePolynomial::new(&f27, 1, vec![(1, 2)]).unwrap()).unwrap();
        let class = classify_regularity(&t).unwrap();
        assert!(class.signs.iter().all(|e| matches!(e, Epsilon::PlusI | Epsilon::MinusI)));
        assert_ne!(class.verdict, Regularity::Regular);
        let f125 = FieldSpec::new(5, 3, None).unwrap();
        let t5 = table_from_trace_poly(&TracePolynomial::new(&f125, 1, vec![(1, 2)]).unwrap()).unwrap();
        let class = classify_regularity(&t5).unwrap();
        assert!(class.signs.iter().all(|e| matches!(e, Epsilon::PlusOne | Epsilon::MinusOne)));
    }

    #[test]
    fn classify_errors() {
        assert_eq!(classify_regularity(&seed_function_8_4()).unwrap_err(), Error::NotSingleOutput);
        let lin = table_from_anf(&parse_anf("x1", 2, 2).unwrap());
        assert_eq!(classify_regularity(&lin).unwrap_err(), Error::NotBent);
        let bent = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        assert_eq!(classify_regularity(&bent).unwrap().verdict, Regularity::Regular);
    }

    #[test]
    fn parseval_and_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n, m) in [(2, 6, 2), (3, 4, 1), (3, 2, 2), (5, 2, 1)] {
            for _ in 0..10 {
                let f = random_table(p, n, m, &mut rng);
                assert!(WalshSpectrum::compute(&f).parseval_holds());
                assert_eq!(plateau_profile(&f).is_bent, is_perfect_nonlinear(&f));
            }
        }
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let sq = planar_monomial(&f9, 2);
        assert!(plateau_profile(&sq).is_bent);
    }
}
