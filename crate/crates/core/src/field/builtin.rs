use super::poly;

pub const BUILTIN_PRIMES: [u32; 5] = [2, 3, 5, 7, 11];
pub const MAX_BUILTIN_DEGREE: u32 = 13;

// Low coefficients c_0..c_{n-1} of the monic modulus, constant term first.
static TABLE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 1]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (3, 11, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 12, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0]),
    (3, 13, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (5, 1, &[2]),
    (5, 2, &[2, 1]),
    (5, 3, &[2, 3, 0]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 5, &[2, 4, 0, 0, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0]),
    (5, 8, &[3, 2, 1, 0, 0, 0, 0, 0]),
    (5, 9, &[3, 2, 1, 0, 0, 0, 0, 0, 0]),
    (5, 10, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0]),
    (5, 11, &[2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (5, 12, &[3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (5, 13, &[2, 3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (7, 1, &[2]),
    (7, 2, &[3, 1]),
    (7, 3, &[2, 3, 0]),
    (7, 4, &[5, 3, 1, 0]),
    (7, 5, &[4, 1, 0, 0, 0]),
    (7, 6, &[5, 1, 3, 0, 0, 0]),
    (7, 7, &[2, 6, 0, 0, 0, 0, 0]),
    (7, 8, &[3, 1, 0, 0, 0, 0, 0, 0]),
    (7, 9, &[2, 1, 1, 0, 0, 0, 0, 0, 0]),
    (7, 10, &[5, 1, 5, 0, 0, 0, 0, 0, 0, 0]),
    (7, 11, &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (7, 12, &[3, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (7, 13, &[2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (11, 1, &[3]),
    (11, 2, &[7, 1]),
    (11, 3, &[4, 1, 0]),
    (11, 4, &[2, 1, 0, 0]),
    (11, 5, &[4, 1, 1, 0, 0]),
    (11, 6, &[8, 2, 1, 0, 0, 0]),
    (11, 7, &[4, 1, 0, 0, 0, 0, 0]),
    (11, 8, &[6, 2, 1, 0, 0, 0, 0, 0]),
    (11, 9, &[9, 2, 0, 0, 0, 0, 0, 0, 0]),
    (11, 10, &[6, 1, 1, 0, 0, 0, 0, 0, 0, 0]),
    (11, 11, &[3, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (11, 12, &[7, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (11, 13, &[4, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
];

/// Pinned default modulus for `F_{p^n}`, `None` outside the table.
pub fn builtin_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    TABLE
        .iter()
        .find(|(tp, tn, _)| *tp == p && *tn == n)
        .map(|(_, _, low)| {
            let mut m = low.to_vec();
            m.push(1);
            m
        })
}

/// First monic primitive polynomial of degree `n` over `F_p`, ordering candidates by
/// `sum c_j p^j` over the low coefficients and skipping those with `c_0 = 0`.
pub fn search_primitive_modulus(p: u32, n: u32) -> Vec<u32> {
    let pp = p as u64;
    let mut low = vec![0u64; n as usize];
    loop {
        // advance the little-endian counter
        let mut j = 0;
        loop {
            low[j] += 1;
            if low[j] < pp {
                break;
            }
            low[j] = 0;
            j += 1;
            assert!(j < n as usize, "no primitive polynomial found");
        }
        if low[0] == 0 {
            continue;
        }
        let mut f = low.clone();
        f.push(1);
        if poly::is_irreducible(&f, pp) && poly::is_primitive(&f, pp) {
            return f.into_iter().map(|c| c as u32).collect();
        }
    }
}
