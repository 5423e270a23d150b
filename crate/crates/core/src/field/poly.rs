//! Dense polynomials over a prime field, little-endian coefficients.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub(crate) fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - factor * c % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

pub(crate) fn pow_poly_mod(base: &Poly, mut exp: u128, m: &Poly, p: u64) -> Poly {
    let mut acc: Poly = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's test for a monic polynomial of degree `n = f.len() - 1`.
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // x^(p^k) mod f for k = 0..=n
    let mut frob = vec![rem(&x, f, p)];
    for k in 1..=n {
        let prev = &frob[k - 1];
        frob.push(pow_poly_mod(prev, p as u128, f, p));
    }
    if !sub(&frob[n], &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(n as u64) {
        let k = n / q as usize;
        let g = gcd(&sub(&frob[k], &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push(v);
    }
    out
}

pub(crate) fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= v {
        if v % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether `x` generates the multiplicative group of `F_p[x]/(f)`, `f` irreducible.
pub(crate) fn is_primitive(f: &Poly, p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let order = (p as u128).pow(n) - 1;
    let x: Poly = vec![0, 1];
    let one = rem(&vec![1], f, p);
    if pow_poly_mod(&x, order, f, p) != one {
        return false;
    }
    prime_factors(order as u64)
        .into_iter()
        .all(|r| pow_poly_mod(&x, order / r as u128, f, p) != one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibility_by_trial_division() {
        // z^3 + 2z + 1 over F_3 has no roots, hence irreducible (degree 3).
        let f = vec![1, 2, 0, 1];
        assert!((0..3u64).all(|z| (z * z * z + 2 * z + 1) % 3 != 0));
        assert!(is_irreducible(&f, 3));
        // z^2 + 1 over F_2 = (z + 1)^2
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        assert!(is_irreducible(&vec![1, 1, 1], 2));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2 has no roots but is reducible
        assert!(!is_irreducible(&vec![1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&vec![1, 1, 1], 2));
        // z^2 + 1 over F_3: z has order 4
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        assert!(!is_primitive(&vec![1, 0, 1], 3));
        assert!(is_primitive(&vec![2, 1, 1], 3));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(242), vec![2, 11]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(11) && !is_prime(9) && !is_prime(1));
    }
}
