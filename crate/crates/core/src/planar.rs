//! Planar functions `F_{p^n} -> F_{p^n}`: 2-to-1 detection, image set bounds,
//! monomial criteria and the surjectivity of coordinate restrictions of `x^2`.

use num_integer::{Integer, Roots};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::planar_monomial;
use crate::distributions::preimage_map;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::function::{is_perfect_nonlinear, FunctionTable};
use crate::spectral::plateau_profile;

/// Largest field order in [`surjectivity_table`] by default.
pub const DEFAULT_SURJECTIVITY_CAP: u64 = 19_683;
/// Largest field order with `--long`.
pub const LONG_SURJECTIVITY_CAP: u64 = 40_353_607;

fn check_planar_shape(f: &FunctionTable) -> Result<()> {
    if f.p() == 2 {
        return Err(Error::WrongShape("planar functions need an odd prime".into()));
    }
    if f.n() != f.m() {
        return Err(Error::WrongShape(format!("need m = n, got n = {}, m = {}", f.n(), f.m())));
    }
    Ok(())
}

/// One value with a single preimage, `(p^n - 1)/2` values with two.
pub fn is_two_to_one(f: &FunctionTable) -> Result<bool> {
    check_planar_shape(f)?;
    Ok(counts_two_to_one(&preimage_map(f).counts))
}

fn counts_two_to_one(counts: &[u64]) -> bool {
    let ones = counts.iter().filter(|&&c| c == 1).count();
    let twos = counts.iter().filter(|&&c| c == 2).count();
    let zeros = counts.iter().filter(|&&c| c == 0).count();
    ones == 1 && twos == (counts.len() - 1) / 2 && ones + twos + zeros == counts.len()
}

/// `F(x) = F(-x)` for all `x`.
pub fn is_even(f: &FunctionTable) -> bool {
    let s = f.source();
    (0..s.size()).all(|x| f.value(x) == f.value(s.neg(x)))
}

/// `p^n - (sqrt(4p^n - 3) - 1)/2`, compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UpperImageBound {
    /// The bound itself when `4p^n - 3` is a square.
    pub exact: Option<u64>,
    /// Largest integer not above the bound.
    pub floor: u64,
}

impl UpperImageBound {
    pub fn new(q: u64) -> Self {
        let d = 4 * q as u128 - 3;
        let s = d.sqrt();
        let exact = (s * s == d).then(|| q - (s as u64 - 1) / 2);
        // smallest t with (2t + 1)^2 >= d
        let mut t = (s as u64).saturating_sub(1) / 2;
        while ((2 * t + 1) as u128).pow(2) < d {
            t += 1;
        }
        UpperImageBound { exact, floor: q - t }
    }

    pub fn respects(&self, image: u64) -> bool {
        image <= self.floor
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarReport {
    pub is_planar: bool,
    pub is_two_to_one: bool,
    pub image_size: u64,
    /// `(p^n + 1)/2`.
    pub lower_bound: u64,
    pub upper_bound: UpperImageBound,
    pub even_function: bool,
}

/// Planarity, image size and bounds; for planar `F` the bound statements are
/// checked and a violation is a [`Error::TheoremViolation`].
pub fn planar_report(f: &FunctionTable) -> Result<PlanarReport> {
    check_planar_shape(f)?;
    let counts = preimage_map(f).counts;
    let q = counts.len() as u64;
    let image_size = counts.iter().filter(|&&c| c > 0).count() as u64;
    let report = PlanarReport {
        is_planar: is_perfect_nonlinear(f),
        is_two_to_one: counts_two_to_one(&counts),
        image_size,
        lower_bound: (q + 1) / 2,
        upper_bound: UpperImageBound::new(q),
        even_function: is_even(f),
    };
    if report.is_planar {
        if image_size < report.lower_bound || !report.upper_bound.respects(image_size) {
            return Err(Error::TheoremViolation(format!("planar image size {image_size} outside the bounds")));
        }
        if (image_size == report.lower_bound) != report.is_two_to_one {
            return Err(Error::TheoremViolation("lower image bound met without 2-to-1, or conversely".into()));
        }
        if let Some(up) = report.upper_bound.exact {
            let unique = counts.iter().filter(|&&c| c == 1).count() as u64;
            if (image_size == up) != (image_size > 0 && unique + 1 == image_size) {
                return Err(Error::TheoremViolation("upper image bound equality without unique preimages".into()));
            }
        }
    }
    Ok(report)
}

/// For planar even `F`, whether it is 2-to-1 (which must hold).
pub fn even_implies_two_to_one_check(f: &FunctionTable) -> Result<bool> {
    check_planar_shape(f)?;
    if !is_even(f) {
        return Err(Error::HypothesisFailed("F(x) != F(-x) for some x".into()));
    }
    if !is_perfect_nonlinear(f) {
        return Err(Error::HypothesisFailed("function is not planar".into()));
    }
    is_two_to_one(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlateauedPlanarReport {
    pub plateaued: bool,
    pub two_to_one: bool,
    pub planar: bool,
    /// `Some(planar)` when both hypotheses hold, `None` otherwise.
    pub confirmed: Option<bool>,
}

/// Plateaued 2-to-1 maps are planar.
pub fn plateaued_two_to_one_implies_planar(f: &FunctionTable) -> Result<PlateauedPlanarReport> {
    check_planar_shape(f)?;
    let plateaued = plateau_profile(f).is_plateaued;
    let two_to_one = is_two_to_one(f)?;
    let planar = is_perfect_nonlinear(f);
    let confirmed = (plateaued && two_to_one).then_some(planar);
    Ok(PlateauedPlanarReport { plateaued, two_to_one, planar, confirmed })
}

/// `σ ∘ x^2` for a seeded random permutation `σ` of the field, redrawn until
/// the result is not plateaued: 2-to-1 but outside the plateaued hypothesis.
pub fn two_to_one_non_plateaued(field: &FieldSpec, seed: u64) -> Result<FunctionTable> {
    let sq = planar_monomial(field, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sigma: Vec<u32> = (0..field.size()).collect();
    for _ in 0..64 {
        sigma.shuffle(&mut rng);
        let g = FunctionTable::new(sq.p(), sq.n(), sq.m(), sq.values().iter().map(|&v| sigma[v as usize]).collect())?;
        if !plateau_profile(&g).is_plateaued {
            return Ok(g);
        }
    }
    Err(Error::CapExceeded("no non-plateaued permutation in 64 draws".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonomialPlanarity {
    pub plateaued: bool,
    pub gcd: u64,
    pub planar: bool,
}

/// Planarity of `x^d` on `F_{p^n}`: by `gcd(d, p^n - 1) = 2` when plateaued,
/// cross-checked against the derivative test.
pub fn monomial_planarity(p: u32, n: u32, d: u64) -> Result<MonomialPlanarity> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let field = FieldSpec::new(p, n, None)?;
    let f = planar_monomial(&field, d);
    let plateaued = plateau_profile(&f).is_plateaued;
    let gcd = d.gcd(&(field.size() as u64 - 1));
    let direct = is_perfect_nonlinear(&f);
    if plateaued && (gcd == 2) != direct {
        return Err(Error::TheoremViolation(format!("x^{d} on F_{p}^{n} is plateaued, gcd {gcd}, planar {direct}")));
    }
    Ok(MonomialPlanarity { plateaued, gcd, planar: direct })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurjectivityRow {
    pub p: u32,
    pub n: u32,
    pub k: u32,
    pub surjective: bool,
    /// `k <= n/2`, where surjectivity is forced.
    pub guaranteed: bool,
}

/// Surjectivity of the first `k` coordinates of `x^2` on `F_{p^n}` for each
/// `n`, at `k = floor(n/2) + 1` or over `ks` when given.
pub fn surjectivity_table(p: u32, ns: &[u32], ks: Option<(u32, u32)>, cap: u64) -> Result<Vec<SurjectivityRow>> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    for &n in ns {
        let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q > cap {
            return Err(Error::CapExceeded(format!("{p}^{n} = {q} exceeds the cap {cap}")));
        }
    }
    let rows: Result<Vec<Vec<SurjectivityRow>>> = ns
        .par_iter()
        .map(|&n| {
            let field = FieldSpec::new(p, n, None)?;
            let squares: Vec<u32> = (0..field.size()).into_par_iter().map(|x| field.mul(x, x)).collect();
            let (lo, hi) = ks.map_or((n / 2 + 1, n / 2 + 1), |(a, b)| (a.max(1), b.min(n)));
            Ok((lo..=hi)
                .map(|k| {
                    let t = p.pow(k);
                    let mut seen = vec![false; t as usize];
                    for &v in &squares {
                        seen[(v % t) as usize] = true;
                    }
                    SurjectivityRow { p, n, k, surjective: seen.iter().all(|&s| s), guaranteed: 2 * k <= n }
                })
                .collect())
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// `4p^n - 3` is a perfect square.
pub fn triangular_bound_attainable(p: u32, n: u32) -> bool {
    let q = (p as u128).pow(n);
    let d = 4 * q - 3;
    let s = d.sqrt();
    s * s == d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::AffineMap;
    use proptest::prelude::*;
    use rand::Rng;

    fn square(p: u32, n: u32) -> FunctionTable {
        planar_monomial(&FieldSpec::new(p, n, None).unwrap(), 2)
    }

    #[test]
    fn two_to_one_examples() {
        assert!(is_two_to_one(&square(3, 2)).unwrap());
        assert!(!is_two_to_one(&planar_monomial(&FieldSpec::new(7, 1, None).unwrap(), 3)).unwrap());
        assert!(!is_two_to_one(&AffineMap::identity(3, 2).to_table()).unwrap());
        assert!(matches!(is_two_to_one(&FunctionTable::zero(3, 2, 1)), Err(Error::WrongShape(_))));
        assert!(matches!(is_two_to_one(&FunctionTable::zero(2, 2, 2)), Err(Error::WrongShape(_))));
    }

    #[test]
    fn reports() {
        let r = planar_report(&square(3, 3)).unwrap();
        assert!(r.is_planar && r.is_two_to_one && r.even_function);
        assert_eq!((r.image_size, r.lower_bound), (14, 14));
        let cm = planar_monomial(&FieldSpec::new(3, 5, None).unwrap(), 14);
        let r = planar_report(&cm).unwrap();
        assert!(r.is_planar && r.is_two_to_one);
        assert_eq!(r.image_size, 122);
        let r = planar_report(&AffineMap::identity(5, 2).to_table()).unwrap();
        assert!(!r.is_planar);
        assert_eq!(r.image_size, 25);
    }

    #[test]
    fn upper_bound_arithmetic() {
        // 4·7 - 3 = 25: bound 7 - 2 = 5
        assert_eq!(UpperImageBound::new(7), UpperImageBound { exact: Some(5), floor: 5 });
        assert_eq!(UpperImageBound::new(343).exact, Some(343 - 18));
        // 4·9 - 3 = 33, sqrt in (5, 6): bound 9 - 2.37.. -> floor 6
        assert_eq!(UpperImageBound::new(9), UpperImageBound { exact: None, floor: 6 });
        for q in 1..2000u64 {
            let b = UpperImageBound::new(q);
            let real = q as f64 - ((4.0 * q as f64 - 3.0).sqrt() - 1.0) / 2.0;
            assert_eq!(b.floor, (real + 1e-9).floor() as u64, "q = {q}");
        }
    }

    #[test]
    fn even_implies_two_to_one() {
        assert!(even_implies_two_to_one_check(&square(5, 2)).unwrap());
        // x^(p^k + 1) with n / gcd(n, k) odd
        for (n, d) in [(3, 4), (5, 10)] {
            let g = planar_monomial(&FieldSpec::new(3, n, None).unwrap(), d);
            assert!(even_implies_two_to_one_check(&g).unwrap());
        }
        let odd = planar_monomial(&FieldSpec::new(3, 2, None).unwrap(), 3);
        assert!(matches!(even_implies_two_to_one_check(&odd), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn plateaued_harness() {
        let cm = planar_monomial(&FieldSpec::new(3, 5, None).unwrap(), 14);
        let r = plateaued_two_to_one_implies_planar(&cm).unwrap();
        assert_eq!(r.confirmed, Some(true));
        for (p, n) in [(3, 2), (3, 3), (5, 2)] {
            assert_eq!(plateaued_two_to_one_implies_planar(&square(p, n)).unwrap().confirmed, Some(true));
        }
        let field = FieldSpec::new(3, 3, None).unwrap();
        let g = two_to_one_non_plateaued(&field, 5).unwrap();
        let r = plateaued_two_to_one_implies_planar(&g).unwrap();
        assert!(r.two_to_one && !r.plateaued);
        assert_eq!(r.confirmed, None);
    }

    #[test]
    fn monomials() {
        assert!(monomial_planarity(3, 2, 2).unwrap().planar);
        assert!(monomial_planarity(3, 5, 14).unwrap().planar);
        let r = monomial_planarity(3, 2, 4).unwrap();
        assert_eq!((r.gcd, r.planar), (4, false));
        assert_eq!(monomial_planarity(2, 2, 3).unwrap_err(), Error::EvenPrime);
    }

    #[test]
    fn monomials_seeded_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let shapes = [(3u32, 2u32), (3, 3), (3, 4), (5, 2), (7, 2), (3, 5), (5, 3), (3, 6)];
        for _ in 0..200 {
            let (p, n) = shapes[rng.gen_range(0..shapes.len())];
            let q = (p as u64).pow(n);
            let d = rng.gen_range(1..q);
            monomial_planarity(p, n, d).unwrap();
        }
    }

    #[test]
    fn surjectivity_rows() {
        let rows = surjectivity_table(3, &[5, 6, 7], None, DEFAULT_SURJECTIVITY_CAP).unwrap();
        assert!(rows.iter().all(|r| r.surjective && !r.guaranteed));
        assert_eq!(rows.iter().map(|r| (r.n, r.k)).collect::<Vec<_>>(), vec![(5, 3), (6, 4), (7, 4)]);
        assert!(surjectivity_table(5, &[5], None, DEFAULT_SURJECTIVITY_CAP).unwrap()[0].surjective);
        assert!(surjectivity_table(7, &[5], None, DEFAULT_SURJECTIVITY_CAP).unwrap()[0].surjective);
        let r = surjectivity_table(3, &[4], Some((2, 2)), DEFAULT_SURJECTIVITY_CAP).unwrap();
        assert!(r[0].surjective && r[0].guaranteed);
        // k = n: the image of x^2 has (q + 1)/2 elements
        let r = surjectivity_table(3, &[3], Some((3, 3)), DEFAULT_SURJECTIVITY_CAP).unwrap();
        assert!(!r[0].surjective);
        assert!(matches!(surjectivity_table(3, &[10], None, DEFAULT_SURJECTIVITY_CAP), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn triangular() {
        assert!(triangular_bound_attainable(7, 1));
        assert!(triangular_bound_attainable(7, 3));
        for p in [3, 5, 7, 11, 13] {
            for n in [2, 4, 6] {
                assert!(!triangular_bound_attainable(p, n));
            }
        }
    }

    proptest! {
        #[test]
        fn planar_squares_meet_lower_bound(idx in 0usize..5) {
            let (p, n) = [(3, 2), (3, 3), (3, 4), (5, 2), (7, 2)][idx];
            let r = planar_report(&square(p, n)).unwrap();
            prop_assert!(r.is_planar && r.is_two_to_one);
            prop_assert_eq!(r.image_size, r.lower_bound);
        }

        #[test]
        fn triangular_matches_consecutive_product(p in prop::sample::select(vec![3u32, 5, 7, 11, 13]), n in 1u32..6) {
            let q = (p as u64).pow(n);
            let u = (1..=q).find(|u| u * (u + 1) >= q - 1).unwrap();
            prop_assert_eq!(triangular_bound_attainable(p, n), u * (u + 1) == q - 1);
        }
    }
}
