//! Preimage counts, value distributions, extremal bounds and the constraint checks
//! that tie distributions to Walsh spectra.

use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::legendre;
use crate::function::{is_perfect_nonlinear, FunctionTable};
use crate::spectral::{classify_regularity, ka_profile, plateau_profile, Epsilon, Regularity};
use crate::space::Space;

/// `β -> |F^-1(β)|` over all `p^m` targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreimageMap {
    pub p: u32,
    pub m: u32,
    pub counts: Vec<u64>,
}

impl PreimageMap {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn image_size(&self) -> u64 {
        self.counts.iter().filter(|&&c| c > 0).count() as u64
    }

    pub fn distribution(&self) -> ValueDistribution {
        ValueDistribution::from_counts(&self.counts)
    }
}

pub fn preimage_map(f: &FunctionTable) -> PreimageMap {
    let mut counts = vec![0u64; f.target().size() as usize];
    for &v in f.values() {
        counts[v as usize] += 1;
    }
    PreimageMap { p: f.p(), m: f.m(), counts }
}

pub fn value_distribution(f: &FunctionTable) -> ValueDistribution {
    preimage_map(f).distribution()
}

/// Multiset of preimage sizes as `(size, multiplicity)`, largest size first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueDistribution {
    entries: Vec<(u64, u64)>,
}

impl ValueDistribution {
    pub fn from_counts(counts: &[u64]) -> Self {
        let mut sorted = counts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut entries: Vec<(u64, u64)> = Vec::new();
        for c in sorted {
            match entries.last_mut() {
                Some((s, k)) if *s == c => *k += 1,
                _ => entries.push((c, 1)),
            }
        }
        ValueDistribution { entries }
    }

    pub fn from_entries(entries: &[(u64, u64)]) -> Self {
        let counts: Vec<u64> = entries
            .iter()
            .flat_map(|&(s, k)| std::iter::repeat(s).take(k as usize))
            .collect();
        Self::from_counts(&counts)
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Every size repeated by its multiplicity, largest first.
    pub fn sizes(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|&(s, k)| std::iter::repeat(s).take(k as usize))
            .collect()
    }

    /// `|G|`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(s, k)| s * k).sum()
    }

    /// `|H|`.
    pub fn targets(&self) -> u64 {
        self.entries.iter().map(|&(_, k)| k).sum()
    }

    pub fn second_moment(&self) -> u128 {
        self.entries.iter().map(|&(s, k)| (s as u128).pow(2) * k as u128).sum()
    }
}

impl fmt::Display for ValueDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &(s, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if k == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{k}")?;
            }
        }
        f.write_str("}")
    }
}

impl Serialize for ValueDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(&[e.0, e.1])?;
        }
        seq.end()
    }
}

/// `sum_β |F^-1(β)|^2 = |G| + (|G|/|H|)(|G| - 1)` for a perfect nonlinear `F`.
pub fn second_moment_check(f: &FunctionTable) -> Result<bool> {
    if !is_perfect_nonlinear(f) {
        return Err(Error::NotPerfectNonlinear);
    }
    let d = value_distribution(f);
    let g = f.source().size() as u128;
    let h = f.target().size() as u128;
    Ok(d.second_moment() * h == g * h + g * (g - 1))
}

/// The bounds `|G|/|H| ∓ (sqrt|G| - sqrt|G|/|H|)` on preimage sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalBounds {
    pub size_g: u64,
    pub size_h: u64,
    /// `sqrt|G|` when `|G|` is a perfect square.
    pub sqrt_g: Option<u64>,
    /// Exact bounds, available when `|G|` is a square.
    pub lower: Option<Ratio<i128>>,
    pub upper: Option<Ratio<i128>>,
    /// Smallest integer `>=` the lower bound and largest `<=` the upper bound.
    pub lower_ceil: i128,
    pub upper_floor: i128,
    /// Both bounds are integers: `|G|` is a square and `|H|` divides its root.
    pub attainable: bool,
}

impl ExtremalBounds {
    pub fn contains(&self, x: u64) -> bool {
        let x = x as i128;
        self.lower_ceil <= x && x <= self.upper_floor
    }

    /// The two extremal sizes and their complements, when attainable:
    /// `(upper, rest_plus, lower, rest_minus)`.
    pub fn extremal_sizes(&self) -> Option<(u64, u64, u64, u64)> {
        if !self.attainable {
            return None;
        }
        let r = self.sqrt_g? as i128;
        let (g, h) = (self.size_g as i128, self.size_h as i128);
        let (mean, step) = (g / h, r / h);
        let up = mean + r - step;
        let down = mean - r + step;
        if down < 0 {
            return None;
        }
        Some((up as u64, (mean - step) as u64, down as u64, (mean + step) as u64))
    }
}

impl Serialize for ExtremalBounds {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExtremalBounds", 6)?;
        st.serialize_field("size_g", &self.size_g)?;
        st.serialize_field("size_h", &self.size_h)?;
        st.serialize_field("lower", &self.lower.map(|r| r.to_string()))?;
        st.serialize_field("upper", &self.upper.map(|r| r.to_string()))?;
        st.serialize_field("lower_ceil", &(self.lower_ceil as i64))?;
        st.serialize_field("upper_floor", &(self.upper_floor as i64))?;
        st.serialize_field("attainable", &self.attainable)?;
        st.end()
    }
}

pub fn extremal_bounds(size_g: u64, size_h: u64) -> ExtremalBounds {
    assert!(size_g > 0 && size_h > 0, "group orders must be positive");
    let (g, h) = (size_g as i128, size_h as i128);
    // s = sqrt(G) (H - 1) = sqrt(G (H - 1)^2)
    let s_floor = (g * (h - 1) * (h - 1)).sqrt();
    let upper_floor = Integer::div_floor(&(g + s_floor), &h);
    let lower_ceil = -Integer::div_floor(&(s_floor - g), &h);
    let root = (size_g as u128).sqrt() as u64;
    let sqrt_g = (root * root == size_g).then_some(root);
    let (lower, upper) = match sqrt_g {
        Some(r) => {
            let r = r as i128;
            (Some(Ratio::new(g - r * (h - 1), h)), Some(Ratio::new(g + r * (h - 1), h)))
        }
        None => (None, None),
    };
    let attainable = sqrt_g.is_some_and(|r| r % size_h == 0);
    ExtremalBounds { size_g, size_h, sqrt_g, lower, upper, lower_ceil, upper_floor, attainable }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalType {
    Plus,
    Minus,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionVerdict {
    #[serde(rename = "type")]
    pub kind: ExtremalType,
    /// Target index of the unique preimage, when known.
    pub unique_preimage: Option<u32>,
    pub bounds: ExtremalBounds,
    pub within_bounds: bool,
}

pub fn classify_distribution(d: &ValueDistribution, size_g: u64, size_h: u64) -> Result<DistributionVerdict> {
    if d.total() != size_g || d.targets() != size_h {
        return Err(Error::InconsistentTotals(format!(
            "distribution {} has total {} over {} targets, expected {} over {}",
            d,
            d.total(),
            d.targets(),
            size_g,
            size_h
        )));
    }
    let bounds = extremal_bounds(size_g, size_h);
    let within_bounds = d.entries().iter().all(|&(s, _)| bounds.contains(s));
    let mut kind = ExtremalType::Other;
    if size_h >= 2 {
        if let Some((up, rest_p, down, rest_m)) = bounds.extremal_sizes() {
            let e = d.entries();
            let is = |one: u64, rest: u64| {
                let mut want = vec![(one, 1), (rest, size_h - 1)];
                want.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                e == want.as_slice()
            };
            if is(up, rest_p) {
                kind = ExtremalType::Plus;
            } else if is(down, rest_m) {
                kind = ExtremalType::Minus;
            }
        }
    }
    Ok(DistributionVerdict { kind, unique_preimage: None, bounds, within_bounds })
}

/// [`classify_distribution`] on a labelled map, filling in the unique preimage.
pub fn classify_preimages(map: &PreimageMap) -> Result<DistributionVerdict> {
    let size_g = map.total();
    let size_h = map.counts.len() as u64;
    let mut v = classify_distribution(&map.distribution(), size_g, size_h)?;
    if let Some((up, _, down, _)) = v.bounds.extremal_sizes() {
        let target = match v.kind {
            ExtremalType::Plus => Some(up),
            ExtremalType::Minus => Some(down),
            ExtremalType::Other => None,
        };
        v.unique_preimage = target.and_then(|t| map.counts.iter().position(|&c| c == t)).map(|i| i as u32);
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageSetReport {
    pub image_size: u64,
    /// `|G||H| / (|G| + |H| - 1)`.
    pub lower_bound: String,
    pub satisfied: bool,
}

pub fn image_set_bound_check(f: &FunctionTable) -> Result<ImageSetReport> {
    if !is_perfect_nonlinear(f) {
        return Err(Error::NotPerfectNonlinear);
    }
    let image_size = preimage_map(f).image_size();
    let g = f.source().size() as i128;
    let h = f.target().size() as i128;
    let bound = Ratio::new(g * h, g + h - 1);
    let satisfied = Ratio::from_integer(image_size as i128) >= bound;
    Ok(ImageSetReport { image_size, lower_bound: bound.to_string(), satisfied })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub surjective: bool,
    /// `|H| <= sqrt|G|`, where surjectivity of a perfect nonlinear map is forced.
    pub guaranteed: bool,
}

pub fn surjectivity_check(f: &FunctionTable) -> SurjectivityReport {
    let map = preimage_map(f);
    let g = f.source().size() as u128;
    let h = f.target().size() as u128;
    SurjectivityReport { surjective: map.counts.iter().all(|&c| c > 0), guaranteed: h * h <= g }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NybergVerdict {
    /// `n` even: one value `c` with `p^(n-1) ± (p-1) p^(n/2-1)` preimages.
    Even { upper_sign: bool, special_value: u32, regular: bool },
    /// `p, n` odd: whether the Legendre pattern holds up to a cyclic shift.
    Odd { pattern_holds: bool, shift: Option<u32>, plus: Option<bool>, regular: bool },
}

/// Single-output distribution shapes of bent functions.
pub fn nyberg_shape_check(f: &FunctionTable) -> Result<NybergVerdict> {
    if f.m() != 1 {
        return Err(Error::NotSingleOutput);
    }
    let class = classify_regularity(f)?;
    let regular = class.verdict == Regularity::Regular;
    let (p, n) = (f.p() as i64, f.n());
    let counts: Vec<i64> = preimage_map(f).counts.iter().map(|&c| c as i64).collect();
    let mean = p.pow(n - 1);
    if n % 2 == 0 {
        let h = p.pow(n / 2 - 1);
        for (upper, s) in [(true, 1i64), (false, -1i64)] {
            let special = mean + s * (p - 1) * h;
            let rest = mean - s * h;
            let hits: Vec<usize> = (0..p as usize).filter(|&c| counts[c] == special).collect();
            if hits.len() == 1 && (0..p as usize).all(|c| c == hits[0] || counts[c] == rest) {
                if regular && !upper {
                    return Err(Error::ShapeViolation("a regular bent function has the lower signs".into()));
                }
                return Ok(NybergVerdict::Even { upper_sign: upper, special_value: hits[0] as u32, regular });
            }
        }
        return Err(Error::ShapeViolation(format!("distribution {:?} has no Nyberg shape", counts)));
    }
    if p == 2 {
        return Err(Error::NotBent);
    }
    let step = p.pow((n - 1) / 2);
    let mut found = None;
    'shift: for c in 0..p {
        if counts[c as usize] != mean {
            continue;
        }
        for s in [1i64, -1] {
            for l in 1..p {
                let want = mean + s * legendre(l, p as u32)? as i64 * step;
                if counts[((c + l) % p) as usize] != want {
                    continue;
                }
            }
            if (1..p).all(|l| {
                counts[((c + l) % p) as usize] == mean + s * legendre(l, p as u32).unwrap() as i64 * step
            }) {
                found = Some((c as u32, s == 1));
                break 'shift;
            }
        }
    }
    if regular && found.is_none() {
        return Err(Error::ShapeViolation(format!("regular function with counts {:?} breaks the odd-n pattern", counts)));
    }
    Ok(NybergVerdict::Odd {
        pattern_holds: found.is_some(),
        shift: found.map(|f| f.0),
        plus: found.map(|f| f.1),
        regular,
    })
}

/// `c -> sum_a m1[a] m2[c - a]` over `F_p^m`.
pub fn direct_sum_distribution(m1: &PreimageMap, m2: &PreimageMap) -> Result<PreimageMap> {
    if m1.p != m2.p || m1.m != m2.m {
        return Err(Error::ShapeMismatch("preimage maps over different targets".into()));
    }
    let t = Space::new(m1.p, m1.m);
    let mut counts = vec![0u64; t.size() as usize];
    for (c, out) in counts.iter_mut().enumerate() {
        *out = (0..t.size())
            .map(|a| m1.counts[a as usize] * m2.counts[t.sub(c as u32, a) as usize])
            .sum();
    }
    Ok(PreimageMap { p: m1.p, m: m1.m, counts })
}

/// Preimage size predicted from `k_a` on either `ε` branch.
pub fn predicted_size(p: u32, n: u32, m: u32, upper: bool, k: u64) -> i128 {
    let p = p as i128;
    let base = p.pow(n - m);
    let half = p.pow(n / 2);
    let tail = p.pow(n / 2 - m) * (p * k as i128 + 1);
    if upper {
        base + half - tail
    } else {
        base - half + tail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularConstraintReport {
    pub epsilon: Epsilon,
    pub ka: Vec<u64>,
    pub sizes: Vec<u64>,
}

/// Every `|F^-1(a)|` matches the `k_a` formula on the branch of the common sign.
pub fn constraint_check_regular(f: &FunctionTable) -> Result<RegularConstraintReport> {
    if !plateau_profile(f).is_bent {
        return Err(Error::HypothesisFailed("function is not bent".into()));
    }
    let prof = ka_profile(f)?;
    let (p, n, m) = (f.p(), f.n(), f.m());
    if 2 * m > n {
        return Err(Error::ConstraintViolation(format!("bent with the sign hypothesis but m = {m} > n/2")));
    }
    let k_max = ((p as u64).pow(m) - 1) / (p as u64 - 1);
    let sizes = preimage_map(f).counts;
    for (a, (&k, &x)) in prof.ka.iter().zip(&sizes).enumerate() {
        if k > k_max {
            return Err(Error::ConstraintViolation(format!("k_{a} = {k} exceeds {k_max}")));
        }
        let want = predicted_size(p, n, m, prof.epsilon.is_upper(), k);
        if want != x as i128 {
            return Err(Error::ConstraintViolation(format!(
                "|F^-1({a})| = {x} but k_{a} = {k} predicts {want}"
            )));
        }
    }
    Ok(RegularConstraintReport { epsilon: prof.epsilon, ka: prof.ka, sizes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanConstraintReport {
    pub ka: Vec<u64>,
    pub sign_set: Vec<u32>,
    pub parity: u64,
}

/// `k_a` formula plus the common parity of all `k_a` for a Boolean bent `F`.
pub fn constraint_check_boolean(f: &FunctionTable) -> Result<BooleanConstraintReport> {
    if f.p() != 2 {
        return Err(Error::OddPrime);
    }
    let reg = constraint_check_regular(f)?;
    let parity = reg.ka[0] % 2;
    if let Some(a) = reg.ka.iter().position(|&k| k % 2 != parity) {
        return Err(Error::ConstraintViolation(format!("k_{a} and k_0 differ in parity")));
    }
    let sign_set = ka_profile(f)?.sign_set.unwrap_or_default();
    Ok(BooleanConstraintReport { ka: reg.ka, sign_set, parity })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddNConstraintReport {
    /// `(a, |F^-1(a)|, k)` with `k = 0` for the balanced size `p^(n-m)`.
    pub entries: Vec<(u32, u64, u64)>,
    pub k_max: u64,
}

/// For `p, n` odd every preimage size is `p^(n-m)` or `p^(n-m) ± k p^((n+1)/2 - m)`
/// with `1 <= k <= (p^m - 1)/(p - 1)`.
pub fn constraint_check_odd_n(f: &FunctionTable) -> Result<OddNConstraintReport> {
    let (p, n, m) = (f.p(), f.n(), f.m());
    if p == 2 || n % 2 == 0 {
        return Err(Error::HypothesisFailed(format!("needs p and n odd, got p = {p}, n = {n}")));
    }
    if !plateau_profile(f).is_bent {
        return Err(Error::HypothesisFailed("function is not bent".into()));
    }
    let pi = p as i128;
    let base = pi.pow(n - m);
    let e = (n as i32 + 1) / 2 - m as i32;
    let k_max = ((p as u64).pow(m) - 1) / (p as u64 - 1);
    let mut entries = Vec::new();
    for (a, &x) in preimage_map(f).counts.iter().enumerate() {
        let d = (x as i128 - base).abs();
        let k = if d == 0 {
            Some(0)
        } else if e >= 0 {
            let s = pi.pow(e as u32);
            (d % s == 0).then(|| d / s)
        } else {
            Some(d * pi.pow((-e) as u32))
        };
        match k {
            Some(k) if k as u64 <= k_max => entries.push((a as u32, x, k as u64)),
            _ => {
                return Err(Error::ConstraintViolation(format!(
                    "|F^-1({a})| = {x} is not {base} ± k·{p}^{e} with k <= {k_max}"
                )))
            }
        }
    }
    Ok(OddNConstraintReport { entries, k_max })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    Inequivalent,
    Inconclusive { reason: String },
}

/// Distributions of types `(+)` and `(-)` cannot be equivalent for `p` odd, `n` even.
pub fn equivalence_obstruction(f1: &FunctionTable, f2: &FunctionTable) -> Result<Obstruction> {
    if (f1.p(), f1.n(), f1.m()) != (f2.p(), f2.n(), f2.m()) {
        return Err(Error::HypothesisFailed("functions of different shape".into()));
    }
    if f1.p() == 2 {
        return Ok(Obstruction::Inconclusive {
            reason: "p = 2: adding linear maps reaches both types".into(),
        });
    }
    if f1.n() % 2 != 0 {
        return Ok(Obstruction::Inconclusive { reason: "n odd: no extremal distributions".into() });
    }
    if !is_perfect_nonlinear(f1) || !is_perfect_nonlinear(f2) {
        return Err(Error::HypothesisFailed("both functions must be bent".into()));
    }
    let k1 = classify_preimages(&preimage_map(f1))?.kind;
    let k2 = classify_preimages(&preimage_map(f2))?.kind;
    Ok(match (k1, k2) {
        (ExtremalType::Plus, ExtremalType::Minus) | (ExtremalType::Minus, ExtremalType::Plus) => {
            Obstruction::Inequivalent
        }
        _ => Obstruction::Inconclusive { reason: "distributions do not separate the functions".into() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use crate::field::FieldSpec;
    use crate::function::{apply_affine, parse_anf, table_from_anf, table_from_trace_poly, AffineMap, TracePolynomial};

    fn dist(e: &[(u64, u64)]) -> ValueDistribution {
        ValueDistribution::from_entries(e)
    }

    fn mm63() -> FunctionTable {
        ConstructionRecipe::MaioranaMcFarland { p: 2, n: 6, m: 3, pi: None, rho: None, l: None }.build().unwrap()
    }

    fn gold4() -> FunctionTable {
        ConstructionRecipe::Gold { n: 4, lambda: None }.build().unwrap()
    }

    #[test]
    fn preimage_examples() {
        let f = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        assert_eq!(preimage_map(&f).counts, vec![10, 6]);
        let c = FunctionTable::new(2, 3, 2, vec![2; 8]).unwrap();
        assert_eq!(preimage_map(&c).counts, vec![0, 0, 8, 0]);
        assert_eq!(value_distribution(&mm63()), dist(&[(15, 1), (7, 7)]));
        assert_eq!(value_distribution(&mm63()).to_string(), "{15, 7^7}");
        assert_eq!(serde_json::to_string(&value_distribution(&mm63())).unwrap(), "[[15,1],[7,7]]");
    }

    #[test]
    fn second_moment_examples() {
        assert_eq!(15u128 * 15 + 7 * 49, 64 + 8 * 63);
        assert_eq!(1 + 3 * 25, 16 + 4 * 15);
        assert!(second_moment_check(&mm63()).unwrap());
        assert!(second_moment_check(&gold4()).unwrap());
        let lin = table_from_anf(&parse_anf("x1", 2, 2).unwrap());
        assert_eq!(second_moment_check(&lin).unwrap_err(), Error::NotPerfectNonlinear);
    }

    #[test]
    fn bounds_examples() {
        let b = extremal_bounds(256, 16);
        assert_eq!((b.lower_ceil, b.upper_floor), (1, 31));
        assert_eq!(b.lower, Some(Ratio::from_integer(1)));
        assert!(b.attainable);
        let b = extremal_bounds(16, 2);
        assert_eq!((b.lower_ceil, b.upper_floor), (6, 10));
        assert!(!extremal_bounds(16, 8).attainable);
        // |G| = 8 is not a square: floor/ceil of 4 ∓ sqrt(8)/2
        let b = extremal_bounds(8, 2);
        assert_eq!((b.lower_ceil, b.upper_floor), (3, 5));
        assert!(b.lower.is_none());
        // cross-check the integer rounding against floating point on a grid
        for g in 1..200u64 {
            for h in 1..20u64 {
                let b = extremal_bounds(g, h);
                let (gf, hf) = (g as f64, h as f64);
                let up = gf / hf + gf.sqrt() - gf.sqrt() / hf;
                let lo = gf / hf - gf.sqrt() + gf.sqrt() / hf;
                assert!((b.upper_floor as f64) <= up + 1e-9 && (b.upper_floor as f64 + 1.0) > up + 1e-9);
                assert!((b.lower_ceil as f64) >= lo - 1e-9 && (b.lower_ceil as f64 - 1.0) < lo - 1e-9);
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_distribution(&dist(&[(15, 1), (7, 7)]), 64, 8).unwrap().kind, ExtremalType::Plus);
        assert_eq!(classify_distribution(&dist(&[(5, 3), (1, 1)]), 16, 4).unwrap().kind, ExtremalType::Minus);
        assert_eq!(classify_distribution(&dist(&[(10, 1), (6, 1)]), 16, 2).unwrap().kind, ExtremalType::Plus);
        assert!(matches!(
            classify_distribution(&dist(&[(10, 1)]), 16, 2),
            Err(Error::InconsistentTotals(_))
        ));
        let v = classify_preimages(&preimage_map(&gold4())).unwrap();
        assert_eq!((v.kind, v.unique_preimage), (ExtremalType::Minus, Some(0)));
    }

    #[test]
    fn image_and_surjectivity() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let sq = planar_monomial(&f9, 2);
        let r = image_set_bound_check(&sq).unwrap();
        assert_eq!((r.image_size, r.satisfied), (5, true));
        assert_eq!(r.lower_bound, "81/17");
        let g = image_set_bound_check(&gold4()).unwrap();
        assert_eq!(g.image_size, 4);
        let s = surjectivity_check(&mm63());
        assert!(s.surjective && s.guaranteed);
        let c = surjectivity_check(&FunctionTable::zero(2, 2, 1));
        assert!(!c.surjective);
        let f243 = FieldSpec::new(3, 5, None).unwrap();
        let r3 = coordinate_restriction(&planar_monomial(&f243, 2), 3).unwrap();
        let s = surjectivity_check(&r3);
        assert!(s.surjective && !s.guaranteed);
    }

    #[test]
    fn nyberg_examples() {
        let f = table_from_anf(&parse_anf("x1*x2 + x3*x4", 2, 4).unwrap());
        assert_eq!(nyberg_shape_check(&f).unwrap(), NybergVerdict::Even { upper_sign: true, special_value: 0, regular: true });
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let t = table_from_trace_poly(&TracePolynomial::new(&f9, 1, vec![(1, 2)]).unwrap()).unwrap();
        let sizes = value_distribution(&t);
        assert!(sizes == dist(&[(5, 1), (2, 2)]) || sizes == dist(&[(4, 2), (1, 1)]));
        assert!(matches!(nyberg_shape_check(&t).unwrap(), NybergVerdict::Even { .. }));
        let f27 = FieldSpec::new(3, 3, None).unwrap();
        let t = table_from_trace_poly(&TracePolynomial::new(&f27, 1, vec![(1, 2)]).unwrap()).unwrap();
        let counts = preimage_map(&t).counts;
        assert!(counts.contains(&9));
        assert_eq!(counts.iter().sum::<u64>(), 27);
        assert!(matches!(nyberg_shape_check(&t).unwrap(), NybergVerdict::Odd { pattern_holds: true, .. }));
    }

    #[test]
    fn direct_sum_convolution() {
        let plus = ConstructionRecipe::MaioranaMcFarland { p: 2, n: 4, m: 2, pi: None, rho: None, l: None }.build().unwrap();
        let (mp, mg) = (preimage_map(&plus), preimage_map(&gold4()));
        let point = PreimageMap { p: 2, m: 2, counts: vec![1, 0, 0, 0] };
        assert_eq!(direct_sum_distribution(&mp, &point).unwrap(), mp);
        let pp = direct_sum_distribution(&mp, &mp).unwrap();
        assert_eq!(pp.distribution(), dist(&[(76, 1), (60, 3)]));
        for (a, b) in [(&plus, &plus), (&plus, &gold4()), (&gold4(), &gold4())] {
            let conv = direct_sum_distribution(&preimage_map(a), &preimage_map(b)).unwrap();
            assert_eq!(conv, preimage_map(&direct_sum(a, b).unwrap()));
        }
        assert_eq!(classify_preimages(&direct_sum_distribution(&mp, &mg).unwrap()).unwrap().kind, ExtremalType::Minus);
    }

    #[test]
    fn constraint_checks() {
        let seed = seed_function_8_4();
        let r = constraint_check_boolean(&seed).unwrap();
        assert_eq!(r.ka.len(), 16);
        let kas = ConstructionRecipe::Kasami { n: 6, i: 1, lambda: None }.build().unwrap();
        let r = constraint_check_regular(&kas).unwrap();
        assert_eq!((r.ka[0], r.sizes[0]), (7, 1));
        let f27 = FieldSpec::new(3, 3, None).unwrap();
        let t = table_from_trace_poly(&TracePolynomial::new(&f27, 1, vec![(1, 2)]).unwrap()).unwrap();
        let r = constraint_check_odd_n(&t).unwrap();
        assert_eq!(r.k_max, 1);
        assert!(r.entries.iter().all(|&(_, x, k)| (x == 9 && k == 0) || ((x == 6 || x == 12) && k == 1)));
        assert!(matches!(constraint_check_odd_n(&seed), Err(Error::HypothesisFailed(_))));
        assert_eq!(constraint_check_boolean(&t).unwrap_err(), Error::OddPrime);
    }

    #[test]
    fn obstruction_examples() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        let sq = (1..9).find(|&x| f9.is_square(x)).unwrap();
        let ns = (1..9).find(|&x| !f9.is_square(x)).unwrap();
        let a = pary_monomial_bent(&f9, 2, sq).unwrap();
        let b = pary_monomial_bent(&f9, 2, ns).unwrap();
        assert_eq!(equivalence_obstruction(&a, &b).unwrap(), Obstruction::Inequivalent);
        let perm = AffineMap::linear(3, 2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let a2 = apply_affine(&a, None, Some(&perm), None).unwrap();
        assert!(matches!(equivalence_obstruction(&a, &a2).unwrap(), Obstruction::Inconclusive { .. }));
        assert!(matches!(equivalence_obstruction(&gold4(), &gold4()).unwrap(), Obstruction::Inconclusive { .. }));
    }
}
