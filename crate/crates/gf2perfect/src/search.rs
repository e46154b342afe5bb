//! Exhaustive perfect-polynomial search and the gcd-condition census.
//!
//! Both scans split the candidate space into contiguous hex-value ranges,
//! one per worker; each worker produces an independent partial tally and the
//! merge is associative and order-insensitive, so the final report does not
//! depend on the worker count.

use std::time::Instant;

use crate::catalogue::find_sporadic;
use crate::classify::{is_perfect, trivial_perfect};
use crate::error::Error;
use crate::factorize::factor;
use crate::poly::Poly;
use crate::report::{
    CensusReport, Classification, DegreeCensus, FoundPerfect, Fraction, PolyRef, RunMeta,
    SearchMode, SearchReport,
};
use crate::sigma::sigma_of_square;

/// Default degree budgets, sized for minutes on a laptop.
pub const FULL_SEARCH_BUDGET: usize = 20;
pub const PRUNED_SEARCH_BUDGET: usize = 24;
pub const CENSUS_BUDGET: usize = 21;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_degree: usize,
    pub mode: SearchMode,
    pub workers: usize,
    pub allow_over_budget: bool,
}

impl SearchOptions {
    pub fn new(max_degree: usize, mode: SearchMode) -> Self {
        SearchOptions {
            max_degree,
            mode,
            workers: 1,
            allow_over_budget: false,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn allow_over_budget(mut self) -> Self {
        self.allow_over_budget = true;
        self
    }
}

/// Scans for fixed points of σ.
///
/// Full mode visits every polynomial of degree 1..=max_degree. Pruned-even
/// mode visits only multiples of x(x+1): every known nontrivial perfect is
/// even and divisible by both linear factors, but the mode is recorded in
/// the report because the pruning assumes evenness.
pub fn search_perfect(opts: &SearchOptions) -> Result<SearchReport, Error> {
    let budget = match opts.mode {
        SearchMode::Full => FULL_SEARCH_BUDGET,
        SearchMode::PrunedEven => PRUNED_SEARCH_BUDGET,
    };
    if opts.max_degree > budget && !opts.allow_over_budget {
        return Err(Error::BudgetExceeded {
            what: "search max_degree",
            requested: opts.max_degree as u64,
            budget: budget as u64,
        });
    }
    let started = Instant::now();
    let (lo, hi) = match opts.mode {
        // all values of degree 1..=max
        SearchMode::Full => (2u64, 1u64 << (opts.max_degree + 1)),
        // cofactors b of a = x(x+1) b with deg a <= max
        SearchMode::PrunedEven => {
            if opts.max_degree < 2 {
                (1u64, 1u64)
            } else {
                (1u64, 1u64 << (opts.max_degree - 1))
            }
        }
    };
    let mode = opts.mode;
    let partials = run_ranged(lo, hi, opts.workers, move |range| {
        let mut found = Vec::new();
        let mut scanned = 0u64;
        for v in range {
            let a = match mode {
                SearchMode::Full => Poly::from_bits(v),
                SearchMode::PrunedEven => Poly::from_bits(clmul_word(v, 0b110)),
            };
            scanned += 1;
            if is_perfect(&a) {
                found.push(a);
            }
        }
        (found, scanned)
    });

    let mut found: Vec<Poly> = Vec::new();
    let mut candidates_scanned = 0u64;
    for (part, scanned) in partials {
        found.extend(part);
        candidates_scanned += scanned;
    }
    found.sort();
    found.dedup();

    let found = found
        .iter()
        .map(|a| FoundPerfect {
            value: PolyRef::new(a),
            classification: classify_perfect(a),
        })
        .collect();

    Ok(SearchReport {
        meta: RunMeta::current(),
        max_degree: opts.max_degree,
        mode: opts.mode,
        found,
        candidates_scanned,
        elapsed: started.elapsed(),
    })
}

/// Names a perfect polynomial: trivial family member, sporadic catalogue
/// entry, or UNKNOWN (a discovery that must be flagged loudly).
pub fn classify_perfect(a: &Poly) -> Classification {
    if let Some(m) = find_sporadic(a) {
        return Classification::Sporadic(m.name);
    }
    // T(n) has degree 2^(n+1) - 2; only one n can match
    if let Some(d) = a.degree() {
        let v = d as u64 + 2;
        if v.is_power_of_two() {
            let n = v.trailing_zeros() - 1;
            if let Ok(t) = trivial_perfect(n) {
                if t == *a {
                    return Classification::Trivial(n);
                }
            }
        }
    }
    Classification::Unknown
}

/// For every even B with 1 <= deg B <= max_degree, tests the main theorem's
/// hypothesis gcd(B², σ(B²)) = 1 and tallies per-degree and cumulative
/// exact fractions.
pub fn gcd_condition_census(
    max_degree: usize,
    workers: usize,
    allow_over_budget: bool,
) -> Result<CensusReport, Error> {
    if max_degree > CENSUS_BUDGET && !allow_over_budget {
        return Err(Error::BudgetExceeded {
            what: "census max_degree",
            requested: max_degree as u64,
            budget: CENSUS_BUDGET as u64,
        });
    }
    let started = Instant::now();
    let rows = max_degree + 1;
    let partials = run_ranged(2u64, 1u64 << (max_degree + 1), workers, move |range| {
        let mut even = vec![0u64; rows];
        let mut sat = vec![0u64; rows];
        for v in range {
            // odd means v(0) = v(1) = 1: low bit set and odd popcount
            if v & 1 == 1 && v.count_ones() % 2 == 1 {
                continue;
            }
            let b = Poly::from_bits(v);
            let d = b.degree().expect("v >= 2");
            even[d] += 1;
            let f = factor(&b).expect("nonzero");
            let s = sigma_of_square(&f);
            if b.square().gcd(&s).expect("nonzero").is_one() {
                sat[d] += 1;
            }
        }
        (even, sat)
    });

    let mut even = vec![0u64; rows];
    let mut sat = vec![0u64; rows];
    for (e, s) in partials {
        for d in 0..rows {
            even[d] += e[d];
            sat[d] += s[d];
        }
    }
    let per_degree: Vec<DegreeCensus> = (1..rows)
        .map(|degree| DegreeCensus {
            degree,
            even_count: even[degree],
            satisfying_count: sat[degree],
        })
        .collect();
    let total_even: u64 = even.iter().sum();
    let total_sat: u64 = sat.iter().sum();

    Ok(CensusReport {
        meta: RunMeta::current(),
        max_degree,
        per_degree,
        // max_degree 0 scans nothing; report 0/1 rather than dividing by zero
        cumulative_fraction: Fraction::new(total_sat, total_even.max(1)),
        elapsed: started.elapsed(),
    })
}

/// Splits `[lo, hi)` into `workers` contiguous ranges and runs `work` on
/// each in its own thread, returning the partial results in range order.
pub(crate) fn run_ranged<T: Send>(
    lo: u64,
    hi: u64,
    workers: usize,
    work: impl Fn(std::ops::Range<u64>) -> T + Sync,
) -> Vec<T> {
    let workers = workers.max(1) as u64;
    let span = hi.saturating_sub(lo);
    let chunk = span.div_ceil(workers).max(1);
    let ranges: Vec<std::ops::Range<u64>> = (0..workers)
        .map(|i| {
            let s = (lo + i * chunk).min(hi);
            let e = (lo + (i + 1) * chunk).min(hi);
            s..e
        })
        .filter(|r| !r.is_empty())
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| work(r)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

/// Carry-less product of two words whose degrees sum below 64.
fn clmul_word(mut a: u64, b: u64) -> u64 {
    let mut r = 0;
    while a != 0 {
        r ^= b << a.trailing_zeros();
        a &= a - 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::to_json_string;

    #[test]
    fn full_search_small_degrees() {
        // exhaustive scan to degree 6: T(1), M5a, M5b, T(2)
        let report = search_perfect(&SearchOptions::new(6, SearchMode::Full)).unwrap();
        let hexes: Vec<&str> = report.found.iter().map(|f| f.value.hex.as_str()).collect();
        assert_eq!(hexes, ["0x6", "0x24", "0x36", "0x78"]);
        let names: Vec<String> = report
            .found
            .iter()
            .map(|f| f.classification.to_string())
            .collect();
        assert_eq!(names, ["T(1)", "M5b", "M5a", "T(2)"]);
        assert!(!report.has_unknown());
        assert_eq!(report.candidates_scanned, (1 << 7) - 2);
    }

    #[test]
    fn full_search_degree_four_finds_only_t1() {
        let report = search_perfect(&SearchOptions::new(4, SearchMode::Full)).unwrap();
        let hexes: Vec<&str> = report.found.iter().map(|f| f.value.hex.as_str()).collect();
        assert_eq!(hexes, ["0x6"]);
    }

    // full and pruned agree on the x(x+1)-divisible sub-domain
    #[test]
    fn pruned_agrees_with_full() {
        let full = search_perfect(&SearchOptions::new(10, SearchMode::Full)).unwrap();
        let pruned = search_perfect(&SearchOptions::new(10, SearchMode::PrunedEven)).unwrap();
        let base = Poly::from_bits(0b110);
        let full_divisible: Vec<_> = full
            .found
            .iter()
            .filter(|f| Poly::from_hex(&f.value.hex).unwrap().is_multiple_of(&base))
            .cloned()
            .collect();
        assert_eq!(full_divisible, pruned.found);
        // everything perfect at this degree happens to be x(x+1)-divisible
        assert_eq!(full.found, pruned.found);
    }

    #[test]
    fn worker_counts_do_not_change_reports() {
        let one = search_perfect(&SearchOptions::new(9, SearchMode::Full)).unwrap();
        let eight = search_perfect(&SearchOptions::new(9, SearchMode::Full).workers(8)).unwrap();
        assert_eq!(to_json_string(&one), to_json_string(&eight));

        let c1 = gcd_condition_census(8, 1, false).unwrap();
        let c5 = gcd_condition_census(8, 5, false).unwrap();
        assert_eq!(to_json_string(&c1), to_json_string(&c5));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            search_perfect(&SearchOptions::new(21, SearchMode::Full)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            search_perfect(&SearchOptions::new(25, SearchMode::PrunedEven)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            gcd_condition_census(22, 1, false),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn census_small_values() {
        // by hand: all five even polynomials of degree <= 2 (x, x+1, x^2,
        // (x+1)^2, x(x+1)) satisfy the gcd condition
        let report = gcd_condition_census(2, 1, false).unwrap();
        assert_eq!(
            report.per_degree,
            vec![
                DegreeCensus {
                    degree: 1,
                    even_count: 2,
                    satisfying_count: 2
                },
                DegreeCensus {
                    degree: 2,
                    even_count: 3,
                    satisfying_count: 3
                },
            ]
        );
        assert_eq!(report.cumulative_fraction, Fraction::new(1, 1));
    }

    // frozen from an independent sieve-based oracle
    #[test]
    fn census_degree_twelve_matches_oracle() {
        let report = gcd_condition_census(12, 4, false).unwrap();
        let expect: Vec<(u64, u64)> = vec![
            (2, 2),
            (3, 3),
            (6, 4),
            (12, 11),
            (24, 20),
            (48, 33),
            (96, 72),
            (192, 140),
            (384, 278),
            (768, 562),
            (1536, 1092),
            (3072, 2178),
        ];
        for (row, (even, sat)) in report.per_degree.iter().zip(expect) {
            assert_eq!((row.even_count, row.satisfying_count), (even, sat));
        }
        assert_eq!(report.cumulative_fraction, Fraction::new(4395, 6143));
    }

    #[test]
    fn classify_perfect_names() {
        assert_eq!(
            classify_perfect(&trivial_perfect(2).unwrap()),
            Classification::Trivial(2)
        );
        assert_eq!(
            classify_perfect(&Poly::from_bits(0x10670)),
            Classification::Sporadic("M16")
        );
        assert_eq!(
            classify_perfect(&Poly::from_bits(0x125)),
            Classification::Unknown
        );
    }
}
