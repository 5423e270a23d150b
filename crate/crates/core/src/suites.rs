//! Named verification suites and the bent function corpus they run on.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::*;
use crate::distributions::*;
use crate::enumeration::*;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::function::{
    apply_affine, is_perfect_nonlinear, parse_anf, table_from_anf, table_from_trace_poly, AffineMap,
    FunctionTable, TracePolynomial,
};
use crate::planar::*;
use crate::spectral::*;
use crate::Cyclotomic;

/// Samples drawn by the `(8, 4)` linear shift suite.
pub const SEED_SHIFT_SAMPLES: u64 = 20_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub long: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub description: String,
    pub passed: bool,
    pub observed: String,
    pub expected: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationSuite {
    pub suite: String,
    pub description: String,
    pub passed: bool,
    pub cases: Vec<Case>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationSuite {
    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Suite ids with one-line descriptions.
pub const SUITES: &[(&str, &str)] = &[
    ("second-moment", "sum of squared preimage sizes of bent functions over the corpus"),
    ("construction-distributions", "value distributions of the primary constructions"),
    ("direct-sum-types", "types of direct sums of (4,2) functions of types (+) and (-)"),
    ("oracle-equivalence", "derivative test against the Walsh test, butterfly against direct summation"),
    ("spectral-signs", "W_F(b,0) = ±p^(n/2) for almost balanced corpus functions"),
    ("constraint-theorems", "k_a linkage, Boolean parity, odd-n preimage sizes"),
    ("catalogs", "admissible distributions for p = 2 and m = 2, 3, 4"),
    ("linear-shifts-8-4", "distributions reached by linear shifts of the (8,4) reference function"),
    ("group-order-4", "perfect nonlinear maps from order 2^n onto order 4"),
    ("planar", "image sets and the 2-to-1 property of planar functions"),
    ("surjectivity-table", "surjective coordinate restrictions of x^2"),
    ("nyberg-shapes", "single-output value distributions of bent functions"),
    ("extremal-bounds", "integer bounds on preimage sizes"),
    ("image-sets", "image set lower bound and surjectivity over the corpus"),
    ("equivalence-obstruction", "distribution types separating p-ary bent functions"),
];

struct Builder {
    cases: Vec<Case>,
}

impl Builder {
    fn new() -> Self {
        Builder { cases: Vec::new() }
    }

    fn eq<T: Display + PartialEq>(&mut self, desc: impl Into<String>, observed: T, expected: T) {
        self.push(desc, observed == expected, observed.to_string(), expected.to_string(), Duration::ZERO);
    }

    fn push(&mut self, desc: impl Into<String>, passed: bool, observed: String, expected: String, elapsed: Duration) {
        self.cases.push(Case { description: desc.into(), passed, observed, expected, elapsed });
    }

    /// Runs `f`, recording its elapsed time; an error becomes a failed case.
    fn timed(&mut self, desc: impl Into<String>, f: impl FnOnce() -> Result<(bool, String, String)>) {
        let t = Instant::now();
        let r = f();
        let elapsed = t.elapsed();
        match r {
            Ok((ok, obs, exp)) => self.push(desc, ok, obs, exp, elapsed),
            Err(e) => self.push(desc, false, format!("error: {e}"), "no error".into(), elapsed),
        }
    }
}

fn pow(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

fn recipe_mm(p: u32, n: u32, m: u32) -> ConstructionRecipe {
    ConstructionRecipe::MaioranaMcFarland { p, n, m, pi: None, rho: None, l: None }
}

fn field(p: u32, n: u32) -> FieldSpec {
    FieldSpec::new(p, n, None).expect("built-in modulus")
}

fn square_and_non_square(f: &FieldSpec) -> (u32, u32) {
    let sq = (1..f.size()).find(|&x| f.is_square(x)).expect("1 is a square");
    let ns = (1..f.size()).find(|&x| !f.is_square(x)).expect("odd field has non-squares");
    (sq, ns)
}

/// Named bent functions with `p in {2, 3, 5}` and `p^n <= 3^6`.
pub fn bent_corpus() -> Vec<(String, FunctionTable)> {
    let mut out: Vec<(String, FunctionTable)> = Vec::new();
    let mut add = |name: &str, f: Result<FunctionTable>| out.push((name.to_string(), f.expect(name)));
    add("mm-2-4-1", recipe_mm(2, 4, 1).build());
    add("mm-2-4-2", recipe_mm(2, 4, 2).build());
    add("mm-2-6-2", recipe_mm(2, 6, 2).build());
    add("mm-2-6-3", recipe_mm(2, 6, 3).build());
    add("mm-2-8-4", recipe_mm(2, 8, 4).build());
    add("psap-2-6-3", ConstructionRecipe::PartialSpread { p: 2, n: 6, m: 3, psi: None }.build());
    add("opoly-4", ConstructionRecipe::OPolynomial { n: 4, psi: None }.build());
    add("opoly-6", ConstructionRecipe::OPolynomial { n: 6, psi: None }.build());
    add("gold-4", ConstructionRecipe::Gold { n: 4, lambda: None }.build());
    add("kasami-6", ConstructionRecipe::Kasami { n: 6, i: 1, lambda: None }.build());
    add("seed-8-4", Ok(seed_function_8_4()));
    add(
        "mm-2-4-2+gold-4",
        ConstructionRecipe::DirectSum(Box::new(recipe_mm(2, 4, 2)), Box::new(ConstructionRecipe::Gold { n: 4, lambda: None }))
            .build(),
    );
    add("mm-3-4-2", recipe_mm(3, 4, 2).build());
    add("mm-3-6-3", recipe_mm(3, 6, 3).build());
    add("psap-3-4-2", ConstructionRecipe::PartialSpread { p: 3, n: 4, m: 2, psi: None }.build());
    let f9 = field(3, 2);
    let (sq, ns) = square_and_non_square(&f9);
    add("monomial-3-2-square", pary_monomial_bent(&f9, 2, sq));
    add("monomial-3-2-non-square", pary_monomial_bent(&f9, 2, ns));
    add("square-3-3", ConstructionRecipe::PlanarMonomial { p: 3, n: 3, d: 2 }.build());
    add("square-3-4", ConstructionRecipe::PlanarMonomial { p: 3, n: 4, d: 2 }.build());
    add("coulter-matthews-3-5", ConstructionRecipe::PlanarMonomial { p: 3, n: 5, d: 14 }.build());
    add("square-5-2", ConstructionRecipe::PlanarMonomial { p: 5, n: 2, d: 2 }.build());
    add("mm-5-4-2", recipe_mm(5, 4, 2).build());
    let f25 = field(5, 2);
    let (sq5, ns5) = square_and_non_square(&f25);
    add("monomial-5-2-square", pary_monomial_bent(&f25, 2, sq5));
    add("monomial-5-2-non-square", pary_monomial_bent(&f25, 2, ns5));
    out
}

pub fn run_suite(id: &str, opts: SuiteOptions) -> Result<VerificationSuite> {
    let description = SUITES
        .iter()
        .find(|s| s.0 == id)
        .map(|s| s.1.to_string())
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))?;
    let t = Instant::now();
    let mut b = Builder::new();
    match id {
        "second-moment" => second_moment(&mut b),
        "construction-distributions" => construction_distributions(&mut b),
        "direct-sum-types" => direct_sum_types(&mut b),
        "oracle-equivalence" => oracle_equivalence(&mut b, opts),
        "spectral-signs" => spectral_signs(&mut b),
        "constraint-theorems" => constraint_theorems(&mut b, opts),
        "catalogs" => catalogs(&mut b),
        "linear-shifts-8-4" => linear_shifts(&mut b, opts),
        "group-order-4" => group_order_4(&mut b),
        "planar" => planar(&mut b),
        "surjectivity-table" => surjectivity(&mut b, opts),
        "nyberg-shapes" => nyberg(&mut b),
        "extremal-bounds" => extremal(&mut b),
        "image-sets" => image_sets(&mut b),
        "equivalence-obstruction" => obstruction(&mut b),
        _ => unreachable!("registry and dispatch disagree"),
    }
    let passed = b.cases.iter().all(|c| c.passed);
    Ok(VerificationSuite { suite: id.to_string(), description, passed, cases: b.cases, wall_time: t.elapsed() })
}

pub fn run_all(opts: SuiteOptions) -> Vec<VerificationSuite> {
    SUITES.iter().map(|(id, _)| run_suite(id, opts).expect("registered suite")).collect()
}

fn second_moment(b: &mut Builder) {
    for (name, f) in bent_corpus() {
        b.timed(format!("{name}: sum |F^-1(β)|^2 = |G| + (|G|/|H|)(|G| - 1)"), || {
            let ok = second_moment_check(&f)?;
            let g = f.source().size() as u128;
            let h = f.target().size() as u128;
            let want = g + g * (g - 1) / h;
            Ok((ok, value_distribution(&f).second_moment().to_string(), want.to_string()))
        });
    }
}

fn construction_distributions(b: &mut Builder) {
    let cases: Vec<(&str, ConstructionRecipe, &[(u64, u64)])> = vec![
        ("Maiorana-McFarland (6,3)", recipe_mm(2, 6, 3), &[(15, 1), (7, 7)]),
        ("partial spread (6,3)", ConstructionRecipe::PartialSpread { p: 2, n: 6, m: 3, psi: None }, &[(15, 1), (7, 7)]),
        ("o-polynomial (6,3)", ConstructionRecipe::OPolynomial { n: 6, psi: None }, &[(15, 1), (7, 7)]),
        ("Gold (4,2)", ConstructionRecipe::Gold { n: 4, lambda: None }, &[(5, 3), (1, 1)]),
        ("Kasami (6,3)", ConstructionRecipe::Kasami { n: 6, i: 1, lambda: None }, &[(9, 7), (1, 1)]),
    ];
    for (name, recipe, want) in cases {
        b.timed(name, || {
            let d = value_distribution(&recipe.build()?);
            let want = ValueDistribution::from_entries(want);
            Ok((d == want, d.to_string(), want.to_string()))
        });
    }
    let f9 = field(3, 2);
    for lambda in 1..f9.size() {
        b.timed(format!("monomial (3,2), λ = {lambda}"), || {
            let plus = pary_monomial_is_plus(&f9, lambda);
            let want = if plus {
                ValueDistribution::from_entries(&[(5, 1), (2, 2)])
            } else {
                ValueDistribution::from_entries(&[(4, 2), (1, 1)])
            };
            let d = value_distribution(&pary_monomial_bent(&f9, 2, lambda)?);
            Ok((d == want, d.to_string(), want.to_string()))
        });
    }
}

fn direct_sum_types(b: &mut Builder) {
    let plus = recipe_mm(2, 4, 2).build().expect("mm");
    let minus = ConstructionRecipe::Gold { n: 4, lambda: None }.build().expect("gold");
    let pairs = [("(+,+)", &plus, &plus, ExtremalType::Plus, 76), ("(-,-)", &minus, &minus, ExtremalType::Plus, 76), ("(+,-)", &plus, &minus, ExtremalType::Minus, 52)];
    for (name, f1, f2, kind, size) in pairs {
        b.timed(format!("{name}: type and unique preimage size"), || {
            let map = preimage_map(&direct_sum(f1, f2)?);
            let v = classify_preimages(&map)?;
            let unique = v.unique_preimage.map(|i| map.counts[i as usize]);
            let obs = format!("{:?} {:?}", v.kind, unique);
            let exp = format!("{:?} {:?}", kind, Some(size as u64));
            Ok((obs == exp, obs, exp))
        });
    }
}

/// Random bent-or-not functions: plain random tables and affine images of corpus members.
fn oracle_inputs(seed: u64, corpus: &[(String, FunctionTable)]) -> Vec<FunctionTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(2u32, 4u32, 1u32), (2, 4, 2), (2, 6, 1), (2, 6, 3), (2, 8, 2), (2, 8, 4), (2, 5, 2), (3, 2, 1), (3, 3, 1), (3, 4, 2), (3, 4, 1)];
    let mut out = Vec::new();
    for i in 0..200 {
        if i % 2 == 0 {
            let (p, n, m) = shapes[rng.gen_range(0..shapes.len())];
            out.push(FunctionTable::random(p, n, m, &mut rng));
        } else {
            let small: Vec<&FunctionTable> = corpus
                .iter()
                .map(|c| &c.1)
                .filter(|f| (f.p() == 2 && f.n() <= 8) || (f.p() == 3 && f.n() <= 4))
                .collect();
            let f = small[rng.gen_range(0..small.len())];
            let a2 = loop {
                let m = AffineMap::random_linear(f.p(), f.n(), f.n(), &mut rng);
                if m.is_permutation() {
                    break m;
                }
            };
            let a = AffineMap::random_linear(f.p(), f.n(), f.m(), &mut rng);
            out.push(apply_affine(f, None, Some(&a2), Some(&a)).expect("shapes agree"));
        }
    }
    out
}

fn oracle_equivalence(b: &mut Builder, opts: SuiteOptions) {
    let corpus = bent_corpus();
    let inputs = oracle_inputs(opts.seed, &corpus);
    let all: Vec<&FunctionTable> = corpus.iter().map(|c| &c.1).chain(inputs.iter()).collect();
    let mut agree = 0;
    let mut bent = 0;
    for f in &all {
        let pn = is_perfect_nonlinear(f);
        bent += pn as usize;
        agree += (pn == plateau_profile(f).is_bent) as usize;
    }
    b.eq(format!("derivative test == Walsh test on {} functions ({} bent)", all.len(), bent), agree, all.len());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let shapes = [(2u32, 6u32, 2u32), (2, 8, 1), (2, 7, 3), (3, 3, 2), (3, 4, 1), (5, 2, 1), (5, 3, 1), (7, 2, 1)];
    let mut same = 0;
    for i in 0..50 {
        let (p, n, m) = shapes[i % shapes.len()];
        let f = FunctionTable::random(p, n, m, &mut rng);
        let ok = (1..f.target().size()).all(|c| walsh_component(&f, c).ok() == Some(walsh_component_naive(&f, c)));
        same += ok as usize;
    }
    b.eq("butterfly == direct summation on 50 random functions", same, 50);
}

fn spectral_signs(b: &mut Builder) {
    for (name, f) in bent_corpus() {
        if f.n() % 2 != 0 {
            continue;
        }
        b.timed(format!("{name}: W_F(b,0) for b != 0"), || {
            let kind = classify_preimages(&preimage_map(&f))?.kind;
            let amp = pow(f.p(), f.n() / 2) as i64;
            let at_zero = spectrum_at_zero(&f);
            let values: BTreeSet<String> = at_zero.values().map(|w| w.to_string()).collect();
            let obs = format!("{:?}: {}", kind, values.into_iter().collect::<Vec<_>>().join(", "));
            let (ok, exp) = match kind {
                ExtremalType::Plus => (at_zero.values().all(|w| *w == Cyclotomic::from_integer(f.p(), amp)), amp.to_string()),
                ExtremalType::Minus => (at_zero.values().all(|w| *w == Cyclotomic::from_integer(f.p(), -amp)), (-amp).to_string()),
                ExtremalType::Other => (true, "no claim".to_string()),
            };
            Ok((ok, obs, format!("{kind:?}: {exp}")))
        });
    }
}

fn constraint_theorems(b: &mut Builder, opts: SuiteOptions) {
    let seed = seed_function_8_4();
    let mut ok_regular = 0;
    let mut ok_parity = 0;
    let mut errors = Vec::new();
    for i in 0..=100u64 {
        let f = if i == 0 { seed.clone() } else { seed.add(&sample_linear_map(2, 8, 4, opts.seed, i).to_table()).expect("shape") };
        match constraint_check_regular(&f) {
            Ok(_) => ok_regular += 1,
            Err(e) => errors.push(e.to_string()),
        }
        match constraint_check_boolean(&f) {
            Ok(_) => ok_parity += 1,
            Err(e) => errors.push(e.to_string()),
        }
    }
    b.eq("preimage sizes from k_a: reference function and 100 linear shifts", ok_regular, 101);
    b.eq("common parity of k_a: reference function and 100 linear shifts", ok_parity, 101);
    let f27 = field(3, 3);
    let mut ok_odd = 0;
    for lambda in 1..f27.size() {
        let t = TracePolynomial::new(&f27, 1, vec![(lambda, 2)]).and_then(|t| table_from_trace_poly(&t));
        if t.and_then(|t| constraint_check_odd_n(&t)).is_ok() {
            ok_odd += 1;
        }
    }
    b.eq("odd-n preimage sizes for Tr(λx^2) on F_27, all λ != 0", ok_odd, 26);
    if !errors.is_empty() {
        b.push("constraint errors", false, errors.join("; "), "none".into(), Duration::ZERO);
    }
}

fn m4_listed() -> (Vec<TiSolution>, Vec<TiSolution>) {
    let sol = |parts: &[(i64, usize)]| {
        let v = parts.iter().flat_map(|&(t, k)| std::iter::repeat(t).take(k)).collect();
        TiSolution::new(2, 4, v).expect("listed solution")
    };
    let kept = vec![
        sol(&[(-6, 1), (0, 8), (2, 7)]),
        sol(&[(-4, 1), (-2, 2), (0, 6), (2, 6), (4, 1)]),
        sol(&[(-4, 1), (0, 12), (4, 3)]),
        sol(&[(-2, 6), (2, 10)]),
        sol(&[(-2, 4), (0, 6), (2, 4), (4, 2)]),
        sol(&[(-2, 3), (0, 8), (2, 4), (6, 1)]),
        sol(&[(0, 15), (8, 1)]),
    ];
    let excluded = vec![
        sol(&[(-4, 2), (0, 6), (2, 8)]),
        sol(&[(-4, 1), (-2, 3), (0, 3), (2, 9)]),
        sol(&[(-4, 1), (-2, 1), (0, 9), (2, 3), (4, 2)]),
        sol(&[(-4, 1), (0, 11), (2, 3), (6, 1)]),
        sol(&[(-2, 5), (0, 3), (2, 7), (4, 1)]),
        sol(&[(-2, 3), (0, 9), (2, 1), (4, 3)]),
        sol(&[(-2, 2), (0, 11), (2, 1), (4, 1), (6, 1)]),
    ];
    (kept, excluded)
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

fn catalogs(b: &mut Builder) {
    for (m, n, want) in [(2u32, 4u32, 2usize), (2, 8, 2), (3, 6, 4), (3, 8, 4)] {
        b.timed(format!("distinct admissible distributions, m = {m}, n = {n}"), || {
            let c = catalog_m(2, m, Some(n))?;
            Ok((c.distributions().len() == want, c.distributions().len().to_string(), want.to_string()))
        });
    }
    let c = match catalog_m(2, 4, Some(8)) {
        Ok(c) => c,
        Err(e) => {
            b.push("catalog m = 4", false, e.to_string(), "catalog".into(), Duration::ZERO);
            return;
        }
    };
    b.eq("distinct admissible distributions, m = 4, n = 8", c.distributions().len(), 14);
    let (kept, excluded) = m4_listed();
    let mut want: BTreeSet<TiSolution> = kept.iter().cloned().collect();
    want.extend(kept.iter().map(|s| boolean_symmetry(s).expect("p = 2")));
    let got: BTreeSet<TiSolution> = c.admissible().map(|e| e.solution.clone()).collect();
    b.eq("admissible solutions, m = 4: the 7 listed and their partners", join(&got), join(&want));
    let got_ex: BTreeSet<TiSolution> = c.excluded().filter(|e| e.parity == Some(0)).map(|e| e.solution.clone()).collect();
    let want_ex: BTreeSet<TiSolution> = excluded.into_iter().collect();
    b.eq("excluded even solutions, m = 4", join(&got_ex), join(&want_ex));
    b.eq("solutions with a common parity, m = 4", c.entries.len(), 28);
}

fn linear_shifts(b: &mut Builder, opts: SuiteOptions) {
    let f = seed_function_8_4();
    let r = linear_shift_experiment(&f, SEED_SHIFT_SAMPLES, opts.seed);
    let cat = catalog_m(2, 4, Some(8)).expect("catalog");
    b.eq(format!("distinct distributions in {} samples, seed {}", SEED_SHIFT_SAMPLES, opts.seed), r.hits.len(), 14);
    let outside: Vec<String> = r.hits.keys().filter(|d| !cat.contains(d)).map(|d| d.to_string()).collect();
    b.eq("observed distributions outside the catalog", outside.join(" "), String::new());
    let missing: Vec<String> = cat.distributions().into_iter().filter(|d| !r.hits.contains_key(d)).map(|d| d.to_string()).collect();
    b.eq("catalog distributions not observed", missing.join(" "), String::new());
}

fn group_order_4(b: &mut Builder) {
    for n in [4u32, 6, 8, 10, 12] {
        b.timed(format!("n = {n}"), || {
            let got = solve_group_h4(n)?;
            let (mean, d) = (pow(2, n - 2), pow(2, n / 2 - 2));
            let mut want = vec![
                ValueDistribution::from_entries(&[(mean + d, 3), (mean - 3 * d, 1)]),
                ValueDistribution::from_entries(&[(mean - d, 3), (mean + 3 * d, 1)]),
            ];
            want.sort();
            Ok((got == want, join(&got), join(&want)))
        });
    }
}

fn planar(b: &mut Builder) {
    let mut funcs: Vec<(String, FunctionTable)> = [(3u32, 2u32), (3, 3), (3, 4), (5, 2), (7, 2)]
        .iter()
        .map(|&(p, n)| (format!("x^2 on F_{p}^{n}"), planar_monomial(&field(p, n), 2)))
        .collect();
    funcs.push(("x^14 on F_3^5".into(), planar_monomial(&field(3, 5), 14)));
    for (name, f) in &funcs {
        b.timed(format!("{name}: planar, 2-to-1, image (p^n+1)/2"), || {
            let r = planar_report(f)?;
            let obs = format!("{} {} {}", r.is_planar, r.is_two_to_one, r.image_size);
            let exp = format!("true true {}", r.lower_bound);
            Ok((obs == exp, obs, exp))
        });
        b.timed(format!("{name}: plateaued and 2-to-1 confirms planarity"), || {
            let r = plateaued_two_to_one_implies_planar(f)?;
            Ok((r.confirmed == Some(true), format!("{:?}", r.confirmed), "Some(true)".into()))
        });
        b.timed(format!("{name}: even planar implies 2-to-1"), || {
            let ok = even_implies_two_to_one_check(f)?;
            Ok((ok, ok.to_string(), "true".into()))
        });
    }
    b.timed("2-to-1, not plateaued: no claim", || {
        let g = two_to_one_non_plateaued(&field(3, 3), 1)?;
        let r = plateaued_two_to_one_implies_planar(&g)?;
        let obs = format!("{} {} {:?}", r.two_to_one, r.plateaued, r.confirmed);
        Ok((obs == "true false None", obs, "true false None".into()))
    });
}

fn surjectivity(b: &mut Builder, opts: SuiteOptions) {
    let rows: Vec<(u32, Vec<u32>)> = if opts.long {
        vec![(3, (5..=13).collect()), (5, (5..=10).collect()), (7, (5..=9).collect()), (11, (5..=7).collect())]
    } else {
        vec![(3, vec![5, 6, 7]), (5, vec![5]), (7, vec![5])]
    };
    let cap = if opts.long { LONG_SURJECTIVITY_CAP } else { DEFAULT_SURJECTIVITY_CAP };
    for (p, ns) in rows {
        b.timed(format!("p = {p}, n = {ns:?}, k = floor(n/2) + 1"), || {
            let r = surjectivity_table(p, &ns, None, cap)?;
            let obs = join(r.iter().map(|r| format!("{}:{}", r.n, r.surjective)));
            let exp = join(ns.iter().map(|n| format!("{n}:true")));
            Ok((obs == exp, obs, exp))
        });
    }
    if opts.long {
        b.timed("p = 3, n = 13, k = 1..13", || {
            let r = surjectivity_table(3, &[13], Some((1, 13)), cap)?;
            let obs = join(r.iter().map(|r| format!("{}:{}", r.k, r.surjective)));
            let exp = join((1..=13).map(|k| format!("{k}:{}", k <= 10)));
            Ok((obs == exp, obs, exp))
        });
    }
}

fn nyberg(b: &mut Builder) {
    for anf in ["x1*x2 + x3*x4", "x1*x2 + x3*x4 + 1", "x1*x3 + x2*x4 + x1"] {
        b.timed(format!("{anf} on F_2^4"), || {
            let f = table_from_anf(&parse_anf(anf, 2, 4)?);
            let v = nyberg_shape_check(&f)?;
            Ok((matches!(v, NybergVerdict::Even { .. }), format!("{v:?}"), "even shape".into()))
        });
    }
    let f9 = field(3, 2);
    for lambda in 1..9 {
        b.timed(format!("Tr(λx^2) on F_9, λ = {lambda}: regular implies upper signs"), || {
            let f = table_from_trace_poly(&TracePolynomial::new(&f9, 1, vec![(lambda, 2)])?)?;
            let v = nyberg_shape_check(&f)?;
            let ok = matches!(v, NybergVerdict::Even { upper_sign, regular, .. } if upper_sign || !regular);
            Ok((ok, format!("{v:?}"), "even shape, upper if regular".into()))
        });
    }
    let f27 = field(3, 3);
    for lambda in [1u32, 2, 3, 5, 13] {
        b.timed(format!("Tr(λx^2) on F_27, λ = {lambda}: Legendre pattern"), || {
            let f = table_from_trace_poly(&TracePolynomial::new(&f27, 1, vec![(lambda, 2)])?)?;
            let v = nyberg_shape_check(&f)?;
            let ok = matches!(v, NybergVerdict::Odd { pattern_holds: true, .. });
            Ok((ok, format!("{v:?}"), "pattern holds up to a cyclic shift".into()))
        });
    }
}

fn extremal(b: &mut Builder) {
    let cases = [(256u64, 16u64, 1i128, 31i128, true), (16, 2, 6, 10, true), (16, 8, -1, 5, false), (64, 8, 1, 15, true)];
    for (g, h, lo, hi, att) in cases {
        let e = extremal_bounds(g, h);
        b.eq(format!("|G| = {g}, |H| = {h}"), format!("{} {} {}", e.lower_ceil, e.upper_floor, e.attainable), format!("{lo} {hi} {att}"));
    }
}

fn image_sets(b: &mut Builder) {
    for (name, f) in bent_corpus() {
        b.timed(format!("{name}: |Im F| >= |G||H|/(|G|+|H|-1)"), || {
            let r = image_set_bound_check(&f)?;
            Ok((r.satisfied, r.image_size.to_string(), format!(">= {}", r.lower_bound)))
        });
        let s = surjectivity_check(&f);
        if s.guaranteed {
            b.eq(format!("{name}: surjective when |H| <= sqrt|G|"), s.surjective, true);
        }
    }
}

fn obstruction(b: &mut Builder) {
    for (p, n) in [(3u32, 2u32), (5, 2), (3, 4)] {
        b.timed(format!("x^2 monomials on F_{p}^{n}, λ square vs non-square"), || {
            let f = field(p, n);
            let (sq, ns) = square_and_non_square(&f);
            let o = equivalence_obstruction(&pary_monomial_bent(&f, 2, sq)?, &pary_monomial_bent(&f, 2, ns)?)?;
            Ok((o == Obstruction::Inequivalent, format!("{o:?}"), "Inequivalent".into()))
        });
    }
}
