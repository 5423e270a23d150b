//! The vector space `F_p^k` on canonical indices.

use crate::field::{coordinate_dot, digits, from_digits};

/// `F_p^dim` with elements encoded as little-endian base-`p` indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space {
    pub p: u32,
    pub dim: u32,
    size: u32,
}

impl Space {
    pub fn new(p: u32, dim: u32) -> Self {
        let size = (p as u64).pow(dim);
        assert!(size <= u32::MAX as u64, "space too large");
        Space { p, dim, size: size as u32 }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            let s = a % p + b % p;
            out += if s >= p { s - p } else { s } * place;
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
            let d = a % p;
            if d != 0 {
                out += (p - d) * place;
            }
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, c: u32, a: u32) -> u32 {
        let c = c % self.p;
        let d: Vec<u32> = self.digits(a).into_iter().map(|x| x * c % self.p).collect();
        self.from_digits(&d)
    }

    pub fn dot(&self, a: u32, b: u32) -> u32 {
        coordinate_dot(self.p, a, b)
    }

    pub fn digits(&self, x: u32) -> Vec<u32> {
        digits(self.p, self.dim, x)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        from_digits(self.p, d)
    }

    /// Index of `(x, y)` in `F_p^dim x F_p^k`, with `x` in the low digits.
    pub fn pair(&self, x: u32, y: u32) -> u32 {
        x + self.size * y
    }

    pub fn split(&self, z: u32) -> (u32, u32) {
        (z % self.size, z / self.size)
    }
}
