//! Exact arithmetic in `Z[ζ_p]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::field::legendre;
use crate::scalar::Scalar;

/// An element `sum_{r < p-1} c_r ζ^r` of `Z[ζ_p]` in the power basis.
///
/// The representation is canonical, so `==` is equality in the ring. For `p = 2`
/// there is a single coefficient and the value is an ordinary integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt<T: Scalar> {
    p: u32,
    coeffs: Vec<T>,
}

impl<T: Scalar> CyclotomicInt<T> {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt { p, coeffs: vec![T::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_integer(p, T::one())
    }

    pub fn from_integer(p: u32, v: T) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `ζ^k`.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut full = vec![T::zero(); p as usize];
        full[(k % p as u64) as usize] = T::one();
        Self::from_full(p, full)
    }

    /// Builds from canonical coefficients (length `p - 1`).
    pub fn from_coeffs(p: u32, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::DimensionMismatch(format!(
                "Z[ζ_{}] needs {} coefficients, got {}",
                p,
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CyclotomicInt { p, coeffs })
    }

    /// Reduces `sum_{r < p} a_r ζ^r` using `1 + ζ + ... + ζ^(p-1) = 0`.
    pub fn from_full(p: u32, mut full: Vec<T>) -> Self {
        assert_eq!(full.len(), p as usize);
        let top = full.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c = c.clone() - top.clone();
            }
        }
        CyclotomicInt { p, coeffs: full }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Integer value, if the element is rational.
    pub fn as_integer(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugation `ζ -> ζ^-1`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![T::zero(); p];
        for (r, c) in self.coeffs.iter().enumerate() {
            full[(p - r) % p] = c.clone();
        }
        Self::from_full(self.p, full)
    }

    /// `a · conj(a)`, always a nonnegative rational integer when it is rational.
    pub fn abs_squared(&self) -> Self {
        self.mul_ref(&self.conj())
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_zeta_pow(&self, k: u64) -> Self {
        let p = self.p as usize;
        let k = (k % p as u64) as usize;
        let mut full = vec![T::zero(); p];
        for (r, c) in self.coeffs.iter().enumerate() {
            full[(r + k) % p] = c.clone();
        }
        Self::from_full(self.p, full)
    }

    pub fn scale(&self, s: &T) -> Self {
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Exact division by a rational integer, `None` unless every coefficient is divisible.
    pub fn div_exact(&self, d: &T) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c.clone() % d.clone()).is_zero() {
                return None;
            }
            out.push(c.clone() / d.clone());
        }
        Some(CyclotomicInt { p: self.p, coeffs: out })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.add_ref(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.sub_ref(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.mul_ref(other))
    }

    /// Converts the coefficient type, `None` if some coefficient does not fit.
    pub fn convert<U: Scalar>(&self) -> Option<CyclotomicInt<U>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_i128().and_then(U::from_i128))
            .collect::<Option<Vec<U>>>()?;
        Some(CyclotomicInt { p: self.p, coeffs })
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch");
        CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch");
        CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "prime mismatch");
        let p = self.p as usize;
        if p == 2 {
            return Self::from_integer(2, self.coeffs[0].clone() * other.coeffs[0].clone());
        }
        let mut full = vec![T::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                full[k] = full[k].clone() + a.clone() * b.clone();
            }
        }
        Self::from_full(self.p, full)
    }
}

impl<T: Scalar> Add for CyclotomicInt<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: Scalar> Sub for CyclotomicInt<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<T: Scalar> Mul for CyclotomicInt<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, T: Scalar> Mul<&'a CyclotomicInt<T>> for &'a CyclotomicInt<T> {
    type Output = CyclotomicInt<T>;
    fn mul(self, rhs: Self) -> CyclotomicInt<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Scalar> Neg for CyclotomicInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        CyclotomicInt { p: self.p, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Scalar> fmt::Debug for CyclotomicInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.p, self)
    }
}

impl<T: Scalar> fmt::Display for CyclotomicInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if wrote {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            match r {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if r == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{r}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficient arrays; values outside `i64` are written as decimal strings.
impl<T: Scalar> Serialize for CyclotomicInt<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `sum_{r=1}^{p-1} (r/p) ζ^r`, whose square is `(-1)^((p-1)/2) p`.
pub fn gauss_sum<T: Scalar>(p: u32) -> Result<CyclotomicInt<T>> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let mut full = vec![T::zero(); p as usize];
    for r in 1..p {
        full[r as usize] = T::from_i64_exact(legendre(r as i64, p)? as i64);
    }
    Ok(CyclotomicInt::from_full(p, full))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type C = CyclotomicInt<i64>;

    fn zeta(p: u32) -> C {
        C::zeta_pow(p, 1)
    }

    #[test]
    fn p3_products() {
        let d = zeta(3) - C::zeta_pow(3, 2);
        assert_eq!((d.clone() * d).as_integer(), Some(-3));
        let g = gauss_sum::<i64>(3).unwrap();
        assert_eq!(g.coeffs(), &[1, 2]);
        assert_eq!((g.clone() * g).as_integer(), Some(-3));
    }

    #[test]
    fn gauss_squares() {
        for p in [3u32, 5, 7, 11, 13] {
            let g = gauss_sum::<i64>(p).unwrap();
            let sign = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!((g.clone() * g).as_integer(), Some(sign * p as i64), "p={p}");
        }
        let g = gauss_sum::<BigInt>(5).unwrap();
        assert_eq!((g.clone() * g).as_integer(), Some(BigInt::from(5)));
        assert_eq!(gauss_sum::<i64>(2).unwrap_err(), Error::EvenPrime);
    }

    #[test]
    fn full_character_sum_vanishes() {
        for p in [2u32, 3, 5, 7] {
            let mut s = C::zero(p);
            for r in 0..p as u64 {
                s = s + C::zeta_pow(p, r);
            }
            assert_eq!(s.as_integer(), Some(0));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn p2_is_integer() {
        assert_eq!(C::zeta_pow(2, 1).as_integer(), Some(-1));
        let a = C::from_integer(2, 5);
        assert_eq!(a.conj(), a);
        assert_eq!(a.abs_squared().as_integer(), Some(25));
    }

    #[test]
    fn mismatch_and_display() {
        let a = C::one(3);
        let b = C::one(5);
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::PrimeMismatch(3, 5));
        assert_eq!(format!("{}", gauss_sum::<i64>(3).unwrap()), "1 + 2*z");
        assert_eq!(format!("{}", C::zero(5)), "0");
        // full form (0, 1, -1, -1, 1) reduced by the last coefficient
        assert_eq!(serde_json::to_string(&gauss_sum::<i64>(5).unwrap()).unwrap(), "[-1,0,-2,-2]");
    }

    fn float_value(a: &C) -> (f64, f64) {
        let p = a.p() as f64;
        a.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (r, &c)| {
            let t = 2.0 * std::f64::consts::PI * r as f64 / p;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    fn arb(p: u32) -> impl Strategy<Value = C> {
        prop::collection::vec(-20i64..20, (p - 1) as usize)
            .prop_map(move |v| C::from_coeffs(p, v).unwrap())
    }

    proptest! {
        #[test]
        fn conj_is_involution(a in arb(7)) {
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn ring_laws(a in arb(5), b in arb(5), c in arb(5)) {
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        }

        #[test]
        fn abs_squared_matches_float(a in arb(5)) {
            let s = a.abs_squared();
            let (re, im) = float_value(&a);
            let (sre, sim) = float_value(&s);
            prop_assert!((sre - (re * re + im * im)).abs() < 1e-6);
            prop_assert!(sim.abs() < 1e-6);
            if let Some(v) = s.as_integer() {
                prop_assert!(v >= 0);
            }
        }

        #[test]
        fn bigint_agrees(a in arb(3), b in arb(3)) {
            let big = a.convert::<BigInt>().unwrap() * b.convert::<BigInt>().unwrap();
            prop_assert_eq!(big.convert::<i64>().unwrap(), a * b);
        }
    }
}
