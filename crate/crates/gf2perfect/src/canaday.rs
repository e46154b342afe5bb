//! Bounded executable checks of the classical structure lemmas used by the
//! main theorem.
//!
//! Each check enumerates a finite slice of the lemma's domain and compares
//! the witnesses it finds against the asserted finite set; a report passes
//! exactly when they match.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use crate::classify::{is_complete, is_mersenne};
use crate::error::Error;
use crate::factorize::{factor, is_irreducible, valuation_with_cofactor, PrimeTable};
use crate::poly::Poly;
use crate::report::{LemmaCheckReport, RunMeta};
use crate::sigma::sigma_prime_power;

/// Default bounds, sized to finish in minutes.
pub mod defaults {
    /// part (b): complete polynomials with h coefficients, h <= 4096
    pub const B_H_MAX: u64 = 4096;
    /// part (c): exponents beta <= 64
    pub const C_BETA_MAX: u64 = 64;
    /// part (d): complete polynomials of even degree <= 24
    pub const D_EVEN_DEGREE_MAX: u64 = 24;
    /// part (e): prime degrees <= 8 and exponents <= 16
    pub const E_PRIME_DEGREE_MAX: u64 = 8;
    pub const E_EXPONENT_MAX: u64 = 16;
    /// part (f): indices m <= 12 (degree 2^m)
    pub const F_M_MAX: u64 = 12;
}

/// Dispatch by part id with optional bound overrides. The secondary bound is
/// only meaningful for part (e), where it caps the exponents.
pub fn check_canaday(
    part: char,
    bound: Option<u64>,
    exponent_bound: Option<u64>,
    allow_over_budget: bool,
) -> Result<LemmaCheckReport, Error> {
    let guard = |requested: u64, budget: u64, what: &'static str| {
        if requested > budget && !allow_over_budget {
            Err(Error::BudgetExceeded {
                what,
                requested,
                budget,
            })
        } else {
            Ok(requested)
        }
    };
    match part {
        'b' => {
            let h = guard(
                bound.unwrap_or(defaults::B_H_MAX),
                defaults::B_H_MAX,
                "lemma (b) h bound",
            )?;
            Ok(check_part_b(h))
        }
        'c' => {
            let b = guard(
                bound.unwrap_or(defaults::C_BETA_MAX),
                defaults::C_BETA_MAX,
                "lemma (c) beta bound",
            )?;
            Ok(check_part_c(b))
        }
        'd' => {
            let d = guard(
                bound.unwrap_or(defaults::D_EVEN_DEGREE_MAX),
                defaults::D_EVEN_DEGREE_MAX,
                "lemma (d) degree bound",
            )?;
            Ok(check_part_d(d))
        }
        'e' => {
            let d = guard(
                bound.unwrap_or(defaults::E_PRIME_DEGREE_MAX),
                defaults::E_PRIME_DEGREE_MAX,
                "lemma (e) prime degree bound",
            )?;
            let e = guard(
                exponent_bound.unwrap_or(defaults::E_EXPONENT_MAX),
                defaults::E_EXPONENT_MAX,
                "lemma (e) exponent bound",
            )?;
            Ok(check_part_e(d, e))
        }
        'f' => {
            let m = guard(
                bound.unwrap_or(defaults::F_M_MAX),
                defaults::F_M_MAX,
                "lemma (f) m bound",
            )?;
            Ok(check_part_f(m))
        }
        other => Err(Error::UnknownLemmaPart(other)),
    }
}

fn report(
    lemma_id: &str,
    bounds: BTreeMap<String, u64>,
    witnesses: Vec<String>,
    pass: bool,
    started: Instant,
) -> LemmaCheckReport {
    LemmaCheckReport {
        meta: RunMeta::current(),
        lemma_id: lemma_id.into(),
        bounds,
        witnesses,
        pass,
        elapsed: started.elapsed(),
    }
}

/// (b) Every complete polynomial A with h coefficients has
/// `v_{x+1}(A) = 2^n - 1` and `A = (x+1)^(2^n-1) B^(2^n)` with B complete.
/// Witnesses are counterexample values of h; the lemma asserts there are
/// none.
pub fn check_part_b(h_max: u64) -> LemmaCheckReport {
    let started = Instant::now();
    let x1 = Poly::x_plus_one();
    let mut witnesses = Vec::new();
    for h in 1..=h_max {
        let a = Poly::all_ones(h as usize - 1);
        let (r, cofactor) = valuation_with_cofactor(&x1, &a).expect("a is nonzero");
        let ok = (r + 1).is_power_of_two() && {
            let n = (r + 1).trailing_zeros();
            let mut root = cofactor;
            let mut square_chain_holds = true;
            for _ in 0..n {
                match root.sqrt() {
                    Some(s) => root = s,
                    None => {
                        square_chain_holds = false;
                        break;
                    }
                }
            }
            square_chain_holds && is_complete(&root).expect("root is nonzero")
        };
        if !ok {
            witnesses.push(h.to_string());
        }
    }
    let pass = witnesses.is_empty();
    report(
        "b",
        BTreeMap::from([("h_max".into(), h_max)]),
        witnesses,
        pass,
        started,
    )
}

/// (c) `x(x+1)^beta + 1` is complete and irreducible exactly for beta in
/// {1, 3}, giving Q2 and Q4b.
pub fn check_part_c(beta_max: u64) -> LemmaCheckReport {
    let started = Instant::now();
    let x = Poly::x();
    let x1 = Poly::x_plus_one();
    let mut witnesses = Vec::new();
    for beta in 1..=beta_max {
        let p = &x.mul(&x1.pow(beta)) + &Poly::one();
        if is_complete(&p).expect("nonzero") && is_irreducible(&p).expect("non-constant") {
            witnesses.push(beta);
        }
    }
    let pass = witnesses == [1, 3];
    report(
        "c",
        BTreeMap::from([("beta_max".into(), beta_max)]),
        witnesses.iter().map(|b| b.to_string()).collect(),
        pass,
        started,
    )
}

/// (d) The complete polynomials of even degree whose prime factors are all
/// Mersenne are exactly the ones of degree 2, 4 and 6 (the last being
/// `(x^3+x+1)(x^3+x^2+1)`).
pub fn check_part_d(max_even_degree: u64) -> LemmaCheckReport {
    let started = Instant::now();
    let mut witnesses = Vec::new();
    for m in 1..=max_even_degree / 2 {
        let a = Poly::all_ones(2 * m as usize);
        let all_mersenne = factor(&a)
            .expect("nonzero")
            .iter()
            .all(|(p, _)| is_mersenne(p).expect("nonzero"));
        if all_mersenne {
            witnesses.push(a.to_string());
        }
    }
    let expected: Vec<String> = [2usize, 4, 6]
        .iter()
        .filter(|&&d| d as u64 <= max_even_degree)
        .map(|&d| Poly::all_ones(d).to_string())
        .collect();
    let pass = witnesses == expected;
    report(
        "d",
        BTreeMap::from([("max_even_degree".into(), max_even_degree)]),
        witnesses,
        pass,
        started,
    )
}

/// (e) `sigma(Q^(2m)) = sigma(P^(2n))` has no solutions with
/// `(Q, m) != (P, n)` and at least one of P, Q of degree >= 2. Witnesses are
/// the collisions found; the lemma asserts there are none.
///
/// The degree restriction is part of the classical statement: the linear
/// pair genuinely collides, since `sigma(x^(2m)) = sigma((x+1)^(2m))`
/// whenever `2m + 2` is a power of two (all binomial coefficients of
/// `(x+1)^(2m+1)` are odd), e.g. `sigma(x^2) = sigma((x+1)^2) = x^2+x+1`.
pub fn check_part_e(prime_degree_max: u64, exponent_max: u64) -> LemmaCheckReport {
    let started = Instant::now();
    let mut table = PrimeTable::new();
    let mut seen: HashMap<Poly, (Poly, u64)> = HashMap::new();
    let mut witnesses = Vec::new();
    for d in 1..=prime_degree_max as usize {
        for p in table.primes_of_degree(d).to_vec() {
            for m in 1..=exponent_max / 2 {
                let value = sigma_prime_power(&p, 2 * m);
                if let Some((q, n)) = seen.get(&value) {
                    let both_linear = p.degree() == Some(1) && q.degree() == Some(1);
                    if !both_linear {
                        witnesses.push(format!("sigma(({q})^{}) = sigma(({p})^{})", 2 * n, 2 * m));
                    }
                } else {
                    seen.insert(value, (p.clone(), m));
                }
            }
        }
    }
    let pass = witnesses.is_empty();
    report(
        "e",
        BTreeMap::from([
            ("prime_degree_max".into(), prime_degree_max),
            ("exponent_max".into(), exponent_max),
        ]),
        witnesses,
        pass,
        started,
    )
}

/// (f) `x(x+1)^(2^m - 1) + 1` is irreducible exactly for m in {1, 2}.
pub fn check_part_f(m_max: u64) -> LemmaCheckReport {
    let started = Instant::now();
    let x = Poly::x();
    let x1 = Poly::x_plus_one();
    let mut witnesses = Vec::new();
    for m in 1..=m_max {
        let p = &x.mul(&x1.pow((1 << m) - 1)) + &Poly::one();
        if is_irreducible(&p).expect("non-constant") {
            witnesses.push(m);
        }
    }
    let pass = witnesses == [1, 2];
    report(
        "f",
        BTreeMap::from([("m_max".into(), m_max)]),
        witnesses.iter().map(|m| m.to_string()).collect(),
        pass,
        started,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_b_small() {
        let r = check_part_b(64);
        assert!(r.pass, "counterexamples: {:?}", r.witnesses);
    }

    #[test]
    fn part_c_small() {
        let r = check_part_c(20);
        assert!(r.pass);
        assert_eq!(r.witnesses, ["1", "3"]);
    }

    #[test]
    fn part_d_small() {
        let r = check_part_d(12);
        assert!(r.pass, "witnesses: {:?}", r.witnesses);
        assert_eq!(
            r.witnesses,
            ["x^2+x+1", "x^4+x^3+x^2+x+1", "x^6+x^5+x^4+x^3+x^2+x+1"]
        );
    }

    #[test]
    fn part_e_small() {
        let r = check_part_e(4, 8);
        assert!(r.pass, "collisions: {:?}", r.witnesses);
    }

    // the excluded linear pair really does collide, at exponents 2^j - 2
    #[test]
    fn part_e_linear_pair_collides() {
        let x = Poly::x();
        let x1 = Poly::x_plus_one();
        for e in [2u64, 6, 14] {
            assert_eq!(sigma_prime_power(&x, e), sigma_prime_power(&x1, e));
        }
        for e in [4u64, 8, 10, 12, 16] {
            assert_ne!(sigma_prime_power(&x, e), sigma_prime_power(&x1, e));
        }
    }

    #[test]
    fn part_f_small() {
        let r = check_part_f(5);
        assert!(r.pass);
        assert_eq!(r.witnesses, ["1", "2"]);
    }

    #[test]
    fn dispatch_and_errors() {
        assert!(matches!(
            check_canaday('z', None, None, false),
            Err(Error::UnknownLemmaPart('z'))
        ));
        assert!(matches!(
            check_canaday('c', Some(100), None, false),
            Err(Error::BudgetExceeded { .. })
        ));
        let r = check_canaday('c', Some(10), None, false).unwrap();
        assert_eq!(r.lemma_id, "c");
        assert!(r.pass);
        // over-budget is allowed with the explicit override
        let r = check_canaday('c', Some(65), None, true).unwrap();
        assert!(r.pass);
    }
}
