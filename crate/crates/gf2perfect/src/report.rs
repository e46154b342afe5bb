//! Structured results for searches, censuses, lemma checks and theorem
//! verification.
//!
//! Every report serializes to JSON with a fixed field order (struct
//! declaration order) so that identical inputs produce byte-identical
//! output. Volatile data (wall-clock time, worker counts) is kept out of
//! the JSON; elapsed time appears in the aligned-text rendering only.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::classify::Parity;
use crate::factorize::edf_fallback_seed;
use crate::poly::Poly;

/// Tool version and the equal-degree-splitting seed, embedded in every
/// report for archival comparison of runs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunMeta {
    pub tool_version: String,
    pub seed: u64,
}

impl RunMeta {
    pub fn current() -> Self {
        RunMeta {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: edf_fallback_seed(),
        }
    }
}

/// A polynomial in both wire forms plus its degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PolyRef {
    pub hex: String,
    pub text: String,
    pub degree: usize,
}

impl PolyRef {
    pub fn new(p: &Poly) -> Self {
        PolyRef {
            hex: p.to_hex(),
            text: p.to_string(),
            degree: p.degree().unwrap_or(0),
        }
    }
}

/// How a perfect polynomial found by a search is accounted for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `T(n) = (x(x+1))^(2^n - 1)`
    Trivial(u32),
    /// One of the eleven catalogue entries.
    Sporadic(&'static str),
    /// Not in the catalogue and not trivial: a new perfect polynomial.
    Unknown,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Trivial(n) => write!(f, "T({n})"),
            Classification::Sporadic(name) => f.write_str(name),
            Classification::Unknown => f.write_str("UNKNOWN"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FoundPerfect {
    pub value: PolyRef,
    pub classification: Classification,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "pruned-even")]
    PrunedEven,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchMode::Full => "full",
            SearchMode::PrunedEven => "pruned-even",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub meta: RunMeta,
    pub max_degree: usize,
    pub mode: SearchMode,
    pub found: Vec<FoundPerfect>,
    pub candidates_scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn has_unknown(&self) -> bool {
        self.found
            .iter()
            .any(|f| f.classification == Classification::Unknown)
    }
}

/// An exact nonnegative rational, kept in lowest terms.
#[derive(Copy, Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    pub fn new(mut numerator: u64, mut denominator: u64) -> Self {
        assert!(denominator != 0, "fraction with zero denominator");
        let g = gcd_u64(numerator, denominator);
        numerator /= g;
        denominator /= g;
        Fraction {
            numerator,
            denominator,
        }
    }

    /// Exact comparison `self > p/q`.
    pub fn exceeds(&self, p: u64, q: u64) -> bool {
        (self.numerator as u128) * (q as u128) > (p as u128) * (self.denominator as u128)
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCensus {
    pub degree: usize,
    pub even_count: u64,
    pub satisfying_count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub meta: RunMeta,
    pub max_degree: usize,
    pub per_degree: Vec<DegreeCensus>,
    pub cumulative_fraction: Fraction,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremMode {
    #[serde(rename = "strict-odd")]
    StrictOdd,
    #[serde(rename = "relaxed")]
    Relaxed,
}

impl std::fmt::Display for TheoremMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TheoremMode::StrictOdd => "strict-odd",
            TheoremMode::Relaxed => "relaxed",
        })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TheoremSolution {
    pub b: PolyRef,
    pub primes: Vec<PolyRef>,
    pub a: PolyRef,
    pub classification: Classification,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct HypothesisFailures {
    pub b_odd: u64,
    pub gcd_condition: u64,
    pub prime_divides_b: u64,
    pub duplicate_prime: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub meta: RunMeta,
    pub b_max_degree: usize,
    pub prime_max_degree: usize,
    pub mode: TheoremMode,
    pub solutions: Vec<TheoremSolution>,
    pub hypothesis_failures: HypothesisFailures,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheckReport {
    pub meta: RunMeta,
    pub lemma_id: String,
    pub bounds: BTreeMap<String, u64>,
    pub witnesses: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub meta: RunMeta,
    pub b: PolyRef,
    pub r_max: u32,
    pub mode: TheoremMode,
    /// `None` when the hypotheses held; otherwise the typed rejection.
    pub rejection: Option<String>,
    pub solutions: Vec<TheoremSolution>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogueEntry {
    pub name: String,
    pub hex: String,
    pub factored: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogueReport {
    pub meta: RunMeta,
    pub primes: Vec<CatalogueEntry>,
    pub sporadics: Vec<CatalogueEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub meta: RunMeta,
    pub value: PolyRef,
    pub parity: Parity,
    pub mersenne: bool,
    pub complete: bool,
    pub perfect: bool,
    pub square_b: PolyRef,
    pub square_s: PolyRef,
    pub square_coprime: bool,
    pub square_b_even: bool,
}

pub fn to_json_string<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize infallibly");
    s.push('\n');
    s
}

fn meta_line(meta: &RunMeta) -> String {
    format!("tool v{}  seed {:#x}", meta.tool_version, meta.seed)
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "perfect search  max_degree {}  mode {}  {}\n\
             candidates scanned: {}  elapsed: {:.3}s\n",
            self.max_degree,
            self.mode,
            meta_line(&self.meta),
            self.candidates_scanned,
            self.elapsed.as_secs_f64()
        );
        s.push_str(&format!(
            "found {} perfect polynomials:\n",
            self.found.len()
        ));
        for f in &self.found {
            s.push_str(&format!(
                "  {:<10} deg {:>3}  {:<14} {}\n",
                f.classification, f.value.degree, f.value.hex, f.value.text
            ));
        }
        s
    }
}

impl CensusReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "gcd(B^2, sigma(B^2)) = 1 census  max_degree {}  {}\n\
             elapsed: {:.3}s\n  deg   even  satisfying\n",
            self.max_degree,
            meta_line(&self.meta),
            self.elapsed.as_secs_f64()
        );
        for row in &self.per_degree {
            s.push_str(&format!(
                "  {:>3} {:>6}  {:>10}\n",
                row.degree, row.even_count, row.satisfying_count
            ));
        }
        s.push_str(&format!(
            "cumulative: {}/{} = {:.6}\n",
            self.cumulative_fraction.numerator,
            self.cumulative_fraction.denominator,
            self.cumulative_fraction.as_f64()
        ));
        s
    }
}

impl TheoremReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "theorem brute force  b_max_degree {}  prime_max_degree {}  mode {}  {}\n\
             elapsed: {:.3}s\n\
             hypothesis failures: b_odd {}  gcd_condition {}  prime_divides_b {}  duplicate_prime {}\n\
             solutions: {}\n",
            self.b_max_degree,
            self.prime_max_degree,
            self.mode,
            meta_line(&self.meta),
            self.elapsed.as_secs_f64(),
            self.hypothesis_failures.b_odd,
            self.hypothesis_failures.gcd_condition,
            self.hypothesis_failures.prime_divides_b,
            self.hypothesis_failures.duplicate_prime,
            self.solutions.len()
        );
        for sol in &self.solutions {
            s.push_str(&format!(
                "  {:<6} A = {:<10} B = {:<12} primes: {}\n",
                sol.classification,
                sol.a.hex,
                sol.b.text,
                sol.primes
                    .iter()
                    .map(|p| p.text.clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        s
    }
}

impl LemmaCheckReport {
    pub fn to_text(&self) -> String {
        let bounds = self
            .bounds
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let mut s = format!(
            "lemma part ({})  {}  {}\nwitnesses: {}\n",
            self.lemma_id,
            bounds,
            meta_line(&self.meta),
            if self.witnesses.is_empty() {
                "(none)".to_string()
            } else {
                self.witnesses.join(", ")
            }
        );
        s.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        s
    }
}

impl SolveReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "structured solve  B = {}  r_max {}  mode {}  {}\n",
            self.b.text,
            self.r_max,
            self.mode,
            meta_line(&self.meta)
        );
        match &self.rejection {
            Some(r) => s.push_str(&format!("rejected: {r}\n")),
            None => {
                s.push_str(&format!("solutions: {}\n", self.solutions.len()));
                for sol in &self.solutions {
                    s.push_str(&format!(
                        "  {:<6} A = {:<10} primes: {}\n",
                        sol.classification,
                        sol.a.hex,
                        sol.primes
                            .iter()
                            .map(|p| p.text.clone())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
            }
        }
        s
    }
}

impl CatalogueReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("catalogue  {}\n", meta_line(&self.meta));
        s.push_str("primes:\n");
        for e in &self.primes {
            s.push_str(&format!(
                "  {:<4} {:<8} deg {:>2}  {}\n",
                e.name, e.hex, e.degree, e.factored
            ));
        }
        s.push_str("sporadic perfects:\n");
        for e in &self.sporadics {
            s.push_str(&format!(
                "  {:<4} {:<10} deg {:>2}  {}\n",
                e.name, e.hex, e.degree, e.factored
            ));
        }
        s
    }
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        format!(
            "value: {} ({})\nparity: {}\nmersenne: {}\ncomplete: {}\nperfect: {}\n\
             square decomposition: B = {}  S = {}  coprime = {}  B even = {}\n",
            self.value.text,
            self.value.hex,
            if self.parity == Parity::Odd {
                "odd"
            } else {
                "even"
            },
            self.mersenne,
            self.complete,
            self.perfect,
            self.square_b.text,
            self.square_s.text,
            self.square_coprime,
            self.square_b_even
        )
    }
}
