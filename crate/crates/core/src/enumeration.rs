//! Diophantine catalogs of admissible value distributions for low `m`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::distributions::ValueDistribution;
use crate::error::{Error, Result};
use crate::function::{AffineMap, FunctionTable};
use crate::space::Space;

/// Largest `p^m` enumerated by default.
pub const DEFAULT_TARGET_CAP: u64 = 16;
/// Largest `m` for the sign set search (`2^(2^m - 1)` subsets).
pub const DEFAULT_SIGN_SET_CAP: u32 = 4;

/// A multiset of `p^m` integers with `sum T = p^(m-1)` and `sum T^2 = p^(2m-2)`,
/// stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TiSolution {
    p: u32,
    m: u32,
    values: Vec<i64>,
}

impl TiSolution {
    pub fn new(p: u32, m: u32, mut values: Vec<i64>) -> Result<Self> {
        let q = (p as u64).pow(m);
        if values.len() as u64 != q {
            return Err(Error::DimensionMismatch(format!("{} values for p^m = {q}", values.len())));
        }
        let s = (p as i64).pow(m - 1);
        let sum: i64 = values.iter().sum();
        let sq: i64 = values.iter().map(|t| t * t).sum();
        if sum != s || sq != s * s {
            return Err(Error::BadParameters(format!("sum {sum} and square sum {sq} do not solve the T system")));
        }
        values.sort_unstable();
        Ok(TiSolution { p, m, values })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Common residue mod 2 of all entries, if there is one.
    pub fn parity(&self) -> Option<u8> {
        let r = self.values[0].rem_euclid(2);
        self.values.iter().all(|t| t.rem_euclid(2) == r).then_some(r as u8)
    }

    /// Preimage sizes for even `n >= 2m` on the given branch.
    pub fn sizes(&self, n: u32, branch: Branch) -> Result<Vec<i128>> {
        if n % 2 != 0 || n < 2 * self.m {
            return Err(Error::HypothesisFailed(format!("sizes need even n >= 2m, got n = {n}, m = {}", self.m)));
        }
        let p = self.p as i128;
        let base = p.pow(n - self.m);
        let step = p.pow(n / 2 - self.m);
        Ok(self
            .values
            .iter()
            .map(|&t| {
                let h = p * t as i128 - 1;
                match branch {
                    Branch::PlusEps => base + step * h,
                    Branch::MinusEps => base - step * h,
                }
            })
            .collect())
    }

    pub fn distribution(&self, n: u32, branch: Branch) -> Result<Option<ValueDistribution>> {
        let sizes = self.sizes(n, branch)?;
        if sizes.iter().any(|&x| x < 0) {
            return Ok(None);
        }
        Ok(Some(ValueDistribution::from_counts(&sizes.iter().map(|&x| x as u64).collect::<Vec<_>>())))
    }
}

impl fmt::Display for TiSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(i64, usize)> = Vec::new();
        for &t in &self.values {
            match runs.last_mut() {
                Some((v, k)) if *v == t => *k += 1,
                _ => runs.push((t, 1)),
            }
        }
        f.write_str("{")?;
        for (i, (v, k)) in runs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if *k == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{k}")?;
            }
        }
        f.write_str("}")
    }
}

impl Serialize for TiSolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

/// Which sign family `ε` the sizes are read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `ε ∈ {1, i}`: `X = p^(n-m) + p^(n/2-m)(pT - 1)`.
    PlusEps,
    /// `ε ∈ {-1, -i}`: `X = p^(n-m) + p^(n/2-m)(1 - pT)`.
    MinusEps,
}

/// A subset of `F_2^m \ {0}` as a bitmask over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignSet {
    pub m: u32,
    pub mask: u64,
}

impl SignSet {
    pub fn from_elements(m: u32, elems: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &b in elems {
            if b == 0 || b >= 1 << m {
                return Err(Error::IndexOutOfRange { index: b as u64, size: 1 << m });
            }
            mask |= 1 << b;
        }
        Ok(SignSet { m, mask })
    }

    pub fn elements(&self) -> Vec<u32> {
        (1..1u32 << self.m).filter(|&b| self.mask >> b & 1 == 1).collect()
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }
}

impl Serialize for SignSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e = self.elements();
        let mut seq = s.serialize_seq(Some(e.len()))?;
        for b in e {
            seq.serialize_element(&b)?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub solution: TiSolution,
    pub branch: Branch,
    pub parity: Option<u8>,
    /// `None` where no realizability test exists (odd `p`).
    pub realizable: Option<bool>,
    pub witness: Option<SignSet>,
    pub distribution: Option<ValueDistribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCatalog {
    pub p: u32,
    pub m: u32,
    pub n: Option<u32>,
    pub entries: Vec<CatalogEntry>,
    /// Solutions dropped because their entries differ in parity (`p = 2`).
    pub parity_rejected: usize,
}

impl SolutionCatalog {
    /// Entries not ruled out by the sign set search.
    pub fn admissible(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.realizable != Some(false))
    }

    pub fn excluded(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.realizable == Some(false))
    }

    /// Distinct admissible distributions (needs `n`).
    pub fn distributions(&self) -> BTreeSet<ValueDistribution> {
        self.admissible().filter_map(|e| e.distribution.clone()).collect()
    }

    pub fn contains(&self, d: &ValueDistribution) -> bool {
        self.admissible().any(|e| e.distribution.as_ref() == Some(d))
    }
}

pub fn solve_ti_system(p: u32, m: u32) -> Result<SolutionCatalog> {
    solve_ti_system_capped(p, m, DEFAULT_TARGET_CAP)
}

/// All integer multisets solving the `T` system, via occurrence counts `c_j`.
pub fn solve_ti_system_capped(p: u32, m: u32, cap: u64) -> Result<SolutionCatalog> {
    if m == 0 {
        return Err(Error::BadParameters("m must be positive".into()));
    }
    let q = (p as u64).checked_pow(m).filter(|&q| q <= cap).ok_or_else(|| {
        Error::CapExceeded(format!("p^m = {p}^{m} exceeds the enumeration cap {cap}"))
    })?;
    let bound = (p as i64).pow(m - 1);
    // nonzero j by decreasing |j|; j = 0 absorbs what is left
    let js: Vec<i64> = (1..=bound).rev().flat_map(|j| [j, -j]).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u64; js.len()];
    search(&js, 0, q as i64, bound, bound * bound, &mut counts, &mut out);
    let mut sols: Vec<TiSolution> = out
        .into_iter()
        .map(|c: Vec<u64>| {
            let mut v: Vec<i64> = Vec::with_capacity(q as usize);
            for (j, &k) in js.iter().zip(&c) {
                v.extend(std::iter::repeat(*j).take(k as usize));
            }
            v.resize(q as usize, 0);
            TiSolution::new(p, m, v).expect("enumerated solution violates the T system")
        })
        .collect();
    sols.sort();
    sols.dedup();
    let entries = sols
        .into_iter()
        .map(|s| CatalogEntry {
            parity: s.parity(),
            solution: s,
            branch: Branch::PlusEps,
            realizable: None,
            witness: None,
            distribution: None,
        })
        .collect();
    Ok(SolutionCatalog { p, m, n: None, entries, parity_rejected: 0 })
}

fn search(js: &[i64], i: usize, left: i64, sum: i64, sq: i64, counts: &mut [u64], out: &mut Vec<Vec<u64>>) {
    if sum * sum > left * sq {
        return;
    }
    if i == js.len() {
        if sum == 0 && sq == 0 {
            out.push(counts.to_vec());
        }
        return;
    }
    let j = js[i];
    let most = left.min(sq / (j * j));
    for c in 0..=most {
        counts[i] = c as u64;
        search(js, i + 1, left - c, sum - j * c, sq - j * j * c, counts, out);
    }
    counts[i] = 0;
}

/// `T -> 1 - T` entrywise.
pub fn boolean_symmetry(s: &TiSolution) -> Result<TiSolution> {
    if s.p != 2 {
        return Err(Error::OddPrime);
    }
    TiSolution::new(2, s.m, s.values.iter().map(|t| 1 - t).collect())
}

/// `k_0 = |K|` and `k_a = 2|K ∩ H_a| - |K| + 2^(m-1)` with `H_a = {b : <a,b> = 0}`.
pub fn ka_from_sign_set(k: &SignSet) -> Vec<u64> {
    let t = Space::new(2, k.m);
    let size = k.len() as i64;
    let half = 1i64 << (k.m - 1);
    (0..t.size())
        .map(|a| {
            if a == 0 {
                return size as u64;
            }
            let inside = k.elements().iter().filter(|&&b| t.dot(a, b) == 0).count() as i64;
            (2 * inside - size + half) as u64
        })
        .collect()
}

struct SignSetSearch {
    m: u32,
    half: i64,
    want: Vec<i64>,
    hyper: Vec<u64>,
}

impl SignSetSearch {
    fn new(s: &TiSolution) -> Result<Option<Self>> {
        if s.p != 2 {
            return Err(Error::OddPrime);
        }
        let m = s.m;
        if m > DEFAULT_SIGN_SET_CAP {
            return Err(Error::CapExceeded(format!("sign set search for m = {m} exceeds m <= {DEFAULT_SIGN_SET_CAP}")));
        }
        let q = 1u32 << m;
        let half = 1i64 << (m - 1);
        let mut want: Vec<i64> = s.values.iter().map(|t| half - t).collect();
        want.sort_unstable();
        if want.iter().any(|&k| k < 0) {
            return Ok(None);
        }
        let t = Space::new(2, m);
        // bitmask of H_a \ {0} for each a != 0
        let hyper = (1..q)
            .map(|a| (1..q).filter(|&b| t.dot(a, b) == 0).fold(0u64, |acc, b| acc | 1 << b))
            .collect();
        Ok(Some(SignSetSearch { m, half, want, hyper }))
    }

    fn subsets(&self) -> std::ops::Range<u64> {
        0..1u64 << ((1u32 << self.m) - 1)
    }

    fn matches(&self, bits: u64) -> bool {
        let mask = bits << 1;
        let size = mask.count_ones() as i64;
        let mut ks: Vec<i64> = Vec::with_capacity(self.want.len());
        ks.push(size);
        ks.extend(self.hyper.iter().map(|h| 2 * (mask & h).count_ones() as i64 - size + self.half));
        ks.sort_unstable();
        ks == self.want
    }
}

/// Whether some sign set `K` produces `{2^(m-1) - T_i}` as its `k_a` multiset.
/// Returns the first witness in bitmask order.
pub fn spectral_realizability(s: &TiSolution) -> Result<Option<SignSet>> {
    let Some(search) = SignSetSearch::new(s)? else { return Ok(None) };
    let found = search.subsets().into_par_iter().find_first(|&bits| search.matches(bits));
    Ok(found.map(|bits| SignSet { m: s.m, mask: bits << 1 }))
}

/// Every sign set whose `k_a` multiset is `{2^(m-1) - T_i}`.
pub fn realizing_sign_sets(s: &TiSolution) -> Result<Vec<SignSet>> {
    let Some(search) = SignSetSearch::new(s)? else { return Ok(Vec::new()) };
    Ok(search
        .subsets()
        .into_par_iter()
        .filter(|&bits| search.matches(bits))
        .map(|bits| SignSet { m: s.m, mask: bits << 1 })
        .collect())
}

/// The solution catalog with realizability flags and, given `n`, the sizes.
///
/// For `p = 2` only solutions whose entries share a parity are kept, and both
/// branches give the same sizes, so only [`Branch::PlusEps`] is listed. For odd
/// `p` every solution appears on both branches, unfiltered.
pub fn catalog_m(p: u32, m: u32, n: Option<u32>) -> Result<SolutionCatalog> {
    let raw = solve_ti_system(p, m)?;
    let mut entries = Vec::new();
    let mut parity_rejected = 0;
    for e in raw.entries {
        if p == 2 && e.parity.is_none() {
            parity_rejected += 1;
            continue;
        }
        let branches: &[Branch] = if p == 2 { &[Branch::PlusEps] } else { &[Branch::PlusEps, Branch::MinusEps] };
        let witness = if p == 2 { Some(spectral_realizability(&e.solution)?) } else { None };
        for &b in branches {
            let distribution = match n {
                Some(n) => e.solution.distribution(n, b)?,
                None => None,
            };
            entries.push(CatalogEntry {
                solution: e.solution.clone(),
                branch: b,
                parity: e.parity,
                realizable: witness.map(|w| w.is_some()),
                witness: witness.flatten(),
                distribution,
            });
        }
    }
    Ok(SolutionCatalog { p, m, n, entries, parity_rejected })
}

/// Preimage distributions of perfect nonlinear maps from a group of order `2^n`
/// onto one of order 4, by descending from `n` to 4 in steps of 2.
pub fn solve_group_h4(n: u32) -> Result<Vec<ValueDistribution>> {
    if n % 2 != 0 {
        return Err(Error::OddN(n));
    }
    if n < 4 {
        return Err(Error::BadParameters(format!("n = {n} < 4")));
    }
    let base = deviations(12, 3);
    let scale = 1i64 << (n / 2 - 2);
    let mean = 1i64 << (n - 2);
    let mut out: Vec<ValueDistribution> = base
        .iter()
        .map(|h| {
            let counts: Vec<u64> = h.iter().map(|&d| (mean + scale * d) as u64).collect();
            ValueDistribution::from_counts(&counts)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Sorted 4-tuples with `sum H = 0` and `sum H^2 = sq`, entries bounded by `bound`.
fn deviations(sq: i64, bound: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for a in -bound..=bound {
        for b in a..=bound {
            for c in b..=bound {
                let d = -(a + b + c);
                if d >= c && a * a + b * b + c * c + d * d == sq {
                    out.insert(vec![a, b, c, d]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentResult {
    pub seed: u64,
    pub samples: u64,
    pub hits: BTreeMap<ValueDistribution, u64>,
}

impl Serialize for ExperimentResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Hit<'a> {
            distribution: &'a ValueDistribution,
            hits: u64,
        }
        let hits: Vec<Hit> = self.hits.iter().map(|(d, &h)| Hit { distribution: d, hits: h }).collect();
        let mut st = s.serialize_struct("ExperimentResult", 4)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("samples", &self.samples)?;
        st.serialize_field("distinct", &self.hits.len())?;
        st.serialize_field("hits", &hits)?;
        st.end()
    }
}

/// The `i`-th shift of [`linear_shift_experiment`]: a uniformly random linear map
/// drawn from stream `i` of the ChaCha8 generator seeded with `seed`.
pub fn sample_linear_map(p: u32, n: u32, m: u32, seed: u64, i: u64) -> AffineMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    AffineMap::random_linear(p, n, m, &mut rng)
}

/// Distributions of `F + A` over `samples` uniformly random linear maps `A`.
pub fn linear_shift_experiment(f: &FunctionTable, samples: u64, seed: u64) -> ExperimentResult {
    let (p, n, m) = (f.p(), f.n(), f.m());
    let t = f.target();
    let found: Vec<ValueDistribution> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let a = sample_linear_map(p, n, m, seed, i);
            let mut counts = vec![0u64; t.size() as usize];
            for (x, &v) in f.values().iter().enumerate() {
                counts[t.add(v, a.apply(x as u32)) as usize] += 1;
            }
            ValueDistribution::from_counts(&counts)
        })
        .collect();
    let mut hits = BTreeMap::new();
    for d in found {
        *hits.entry(d).or_insert(0) += 1;
    }
    ExperimentResult { seed, samples, hits }
}

/// Exact number of linear maps `A` with `{b : W_(F+A)(b, 0) < 0} = K` for a
/// Boolean bent `F`, by a pruned search over the rows of `A^T`.
pub fn linear_shift_sign_set_count(f: &FunctionTable, k: &SignSet) -> Result<u64> {
    if f.p() != 2 {
        return Err(Error::OddPrime);
    }
    let (n, m) = (f.n(), f.m());
    if k.m != m {
        return Err(Error::DimensionMismatch(format!("sign set over F_2^{} for m = {m}", k.m)));
    }
    if (n as u64) * (m as u64) > 40 {
        return Err(Error::CapExceeded(format!("2^({n}·{m}) linear maps")));
    }
    let q = 1usize << m;
    let mut neg = vec![Vec::new(); q];
    for b in 1..q {
        let w = crate::spectral::walsh_component(f, b as u32)?;
        neg[b] = w.iter().map(|v| v.as_integer().is_some_and(|x| x < 0)).collect::<Vec<bool>>();
    }
    let mut pts = vec![0u32; q];
    Ok(count_rows(&neg, k.mask, n, m, 0, &mut pts))
}

/// Exact number of linear maps `A` for which `F + A` has the sizes of `s`.
pub fn linear_shift_solution_count(f: &FunctionTable, s: &TiSolution) -> Result<u64> {
    let mut total = 0;
    for k in realizing_sign_sets(s)? {
        total += linear_shift_sign_set_count(f, &k)?;
    }
    Ok(total)
}

fn count_rows(neg: &[Vec<bool>], mask: u64, n: u32, m: u32, i: u32, pts: &mut [u32]) -> u64 {
    if i == m {
        return 1;
    }
    let top = 1usize << i;
    let mut total = 0;
    'row: for r in 0..1u32 << n {
        for low in 0..top {
            let b = top | low;
            let pt = r ^ pts[low];
            if neg[b][pt as usize] != (mask >> b & 1 == 1) {
                continue 'row;
            }
            pts[b] = pt;
        }
        total += count_rows(neg, mask, n, m, i + 1, pts);
    }
    total
}
