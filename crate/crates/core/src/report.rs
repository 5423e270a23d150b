//! Deterministic JSON, CSV and text rendering of suites and analyses.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::distributions::*;
use crate::error::{Error, Result};
use crate::function::{is_perfect_nonlinear, FunctionTable};
use crate::planar::{planar_report, PlanarReport, SurjectivityRow};
use crate::spectral::plateau_profile;
use crate::suites::VerificationSuite;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Format(format!("unknown report format {s:?}"))),
        }
    }
}

/// Something that can be rendered by [`emit_report`].
pub trait Report: Serialize {
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
    fn text(&self) -> String;
}

pub fn emit_report<R: Report + ?Sized>(report: &R, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report types serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(report.csv_header()).expect("in-memory write");
            for row in report.csv_rows() {
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Text => report.text(),
    }
}

/// A run of suites; wall times are only included when `timing` is set.
#[derive(Debug, Clone)]
pub struct SuiteReport<'a> {
    pub suites: &'a [VerificationSuite],
    pub timing: bool,
}

impl SuiteReport<'_> {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

impl Serialize for SuiteReport<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'b> {
            #[serde(flatten)]
            suite: &'b VerificationSuite,
            #[serde(skip_serializing_if = "Option::is_none")]
            wall_time_ms: Option<u128>,
        }
        #[derive(Serialize)]
        struct Doc<'b> {
            passed: bool,
            suites: Vec<Entry<'b>>,
        }
        let suites = self
            .suites
            .iter()
            .map(|suite| Entry { suite, wall_time_ms: self.timing.then(|| suite.wall_time.as_millis()) })
            .collect();
        Doc { passed: self.passed(), suites }.serialize(s)
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report for SuiteReport<'_> {
    fn csv_header(&self) -> Vec<&'static str> {
        let mut h = vec!["suite", "case", "passed", "observed", "expected"];
        if self.timing {
            h.push("elapsed_us");
        }
        h
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for s in self.suites {
            for c in &s.cases {
                let mut row = vec![s.suite.clone(), c.description.clone(), c.passed.to_string(), c.observed.clone(), c.expected.clone()];
                if self.timing {
                    row.push(c.elapsed.as_micros().to_string());
                }
                rows.push(row);
            }
        }
        rows
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for s in self.suites {
            let passed = s.cases.iter().filter(|c| c.passed).count();
            write!(out, "{} {} ({}/{} cases)", verdict(s.passed), s.suite, passed, s.cases.len()).unwrap();
            if self.timing {
                write!(out, " [{:.3} s]", s.wall_time.as_secs_f64()).unwrap();
            }
            out.push('\n');
            for c in s.failures() {
                writeln!(out, "    FAIL {}: observed {}, expected {}", c.description, c.observed, c.expected).unwrap();
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub perfect_nonlinear: bool,
    pub bent_by_spectrum: bool,
    /// Present for perfect nonlinear input.
    pub second_moment: Option<bool>,
    pub image_set: Option<ImageSetReport>,
    pub surjectivity: SurjectivityReport,
    /// Present for `p` odd and `m = n`.
    pub planar: Option<PlanarReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub distribution: ValueDistribution,
    #[serde(flatten)]
    pub verdict: DistributionVerdict,
    pub checks: Checks,
}

pub fn analyze(f: &FunctionTable) -> Result<Analysis> {
    let map = preimage_map(f);
    let verdict = classify_preimages(&map)?;
    let pn = is_perfect_nonlinear(f);
    let planar = if f.p() != 2 && f.m() == f.n() { Some(planar_report(f)?) } else { None };
    let checks = Checks {
        perfect_nonlinear: pn,
        bent_by_spectrum: plateau_profile(f).is_bent,
        second_moment: if pn { Some(second_moment_check(f)?) } else { None },
        image_set: if pn { Some(image_set_bound_check(f)?) } else { None },
        surjectivity: surjectivity_check(f),
        planar,
    };
    Ok(Analysis { p: f.p(), n: f.n(), m: f.m(), distribution: map.distribution(), verdict, checks })
}

fn kind_str(k: ExtremalType) -> &'static str {
    match k {
        ExtremalType::Plus => "plus",
        ExtremalType::Minus => "minus",
        ExtremalType::Other => "other",
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

/// Analyses of named functions, one CSV row each.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary(pub Vec<(String, Analysis)>);

impl Report for Analysis {
    fn csv_header(&self) -> Vec<&'static str> {
        CorpusSummary(Vec::new()).csv_header()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        CorpusSummary(vec![(String::new(), self.clone())]).csv_rows()
    }

    fn text(&self) -> String {
        let c = &self.checks;
        let mut out = String::new();
        writeln!(out, "shape: F_{}^{} -> F_{}^{}", self.p, self.n, self.p, self.m).unwrap();
        writeln!(out, "distribution: {}", self.distribution).unwrap();
        writeln!(out, "type: {}", kind_str(self.verdict.kind)).unwrap();
        if let Some(i) = self.verdict.unique_preimage {
            writeln!(out, "unique preimage at target {i}").unwrap();
        }
        let b = &self.verdict.bounds;
        writeln!(out, "size bounds: [{}, {}], respected: {}", b.lower_ceil, b.upper_floor, self.verdict.within_bounds).unwrap();
        writeln!(out, "perfect nonlinear: {}", c.perfect_nonlinear).unwrap();
        writeln!(out, "bent by spectrum: {}", c.bent_by_spectrum).unwrap();
        if let Some(s) = c.second_moment {
            writeln!(out, "second moment identity: {s}").unwrap();
        }
        if let Some(r) = &c.image_set {
            writeln!(out, "image size: {} (bound {}, satisfied {})", r.image_size, r.lower_bound, r.satisfied).unwrap();
        }
        writeln!(out, "surjective: {} (forced {})", c.surjectivity.surjective, c.surjectivity.guaranteed).unwrap();
        if let Some(r) = &c.planar {
            writeln!(out, "planar: {}, 2-to-1: {}, even: {}", r.is_planar, r.is_two_to_one, r.even_function).unwrap();
        }
        out
    }
}

impl Report for CorpusSummary {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["name", "p", "n", "m", "distribution", "type", "within_bounds", "perfect_nonlinear", "second_moment", "image_size"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|(name, a)| {
                vec![
                    name.clone(),
                    a.p.to_string(),
                    a.n.to_string(),
                    a.m.to_string(),
                    a.distribution.to_string(),
                    kind_str(a.verdict.kind).to_string(),
                    a.verdict.within_bounds.to_string(),
                    a.checks.perfect_nonlinear.to_string(),
                    opt(&a.checks.second_moment),
                    opt(&a.checks.image_set.as_ref().map(|r| r.image_size)),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        self.0
            .iter()
            .map(|(name, a)| format!("{name}: {} {}\n", a.distribution, kind_str(a.verdict.kind)))
            .collect()
    }
}

/// Rows of a coordinate restriction surjectivity run.
#[derive(Debug, Clone, Serialize)]
pub struct SurjectivityTable(pub Vec<SurjectivityRow>);

impl Report for SurjectivityTable {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "n", "k", "surjective", "guaranteed"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| vec![r.p.to_string(), r.n.to_string(), r.k.to_string(), r.surjective.to_string(), r.guaranteed.to_string()])
            .collect()
    }

    fn text(&self) -> String {
        self.0
            .iter()
            .map(|r| format!("p = {}, n = {}, k = {}: {}\n", r.p, r.n, r.k, if r.surjective { "surjective" } else { "not surjective" }))
            .collect()
    }
}
