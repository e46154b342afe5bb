//! The named constants: the six small primes Q and the eleven sporadic
//! perfect polynomials M.
//!
//! The constants are constructed from their factored forms on first access
//! and cross-checked against hard-coded hex literals; any mismatch aborts,
//! which typo-proofs the tables.

use std::sync::OnceLock;

use crate::factorize::{factor, Factorization};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct NamedPrime {
    pub name: &'static str,
    pub value: Poly,
}

#[derive(Clone, Debug)]
pub struct SporadicPerfect {
    pub name: &'static str,
    pub value: Poly,
    pub factorization: Factorization,
}

fn q(name: &'static str, bits: u64) -> NamedPrime {
    NamedPrime {
        name,
        value: Poly::from_bits(bits),
    }
}

/// Q2, Q3a, Q3b, Q4a, Q4b, Q4c.
pub fn named_primes() -> &'static [NamedPrime] {
    static PRIMES: OnceLock<Vec<NamedPrime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        vec![
            q("Q2", 0b111),
            q("Q3a", 0b1011),
            q("Q3b", 0b1101),
            q("Q4a", 0b11001),
            q("Q4b", 0b11111),
            q("Q4c", 0b10011),
        ]
    })
}

fn named(n: &str) -> Poly {
    named_primes()
        .iter()
        .find(|p| p.name == n)
        .expect("known prime name")
        .value
        .clone()
}

/// The eleven sporadic perfect polynomials, in catalogue order.
pub fn sporadic_perfects() -> &'static [SporadicPerfect] {
    static SPORADICS: OnceLock<Vec<SporadicPerfect>> = OnceLock::new();
    SPORADICS.get_or_init(|| {
        let x = Poly::x();
        let x1 = Poly::x_plus_one();
        let q2 = named("Q2");
        let q3a = named("Q3a");
        let q3b = named("Q3b");
        let q4a = named("Q4a");
        let q4b = named("Q4b");
        let q4c = named("Q4c");
        let product = |parts: &[(&Poly, u64)]| {
            parts
                .iter()
                .fold(Poly::one(), |acc, (p, e)| acc.mul(&p.pow(*e)))
        };
        let rows: Vec<(&'static str, Poly, u64)> = vec![
            ("M5a", product(&[(&x, 1), (&x1, 2), (&q2, 1)]), 0x36),
            ("M5b", product(&[(&x, 2), (&x1, 1), (&q2, 1)]), 0x24),
            (
                "M11a",
                product(&[(&x, 1), (&x1, 2), (&q2, 2), (&q4c, 1)]),
                0x9a6,
            ),
            (
                "M11b",
                product(&[(&x, 2), (&x1, 1), (&q2, 2), (&q4c, 1)]),
                0xec4,
            ),
            ("M11c", product(&[(&x, 3), (&x1, 4), (&q4a, 1)]), 0xc48),
            ("M11d", product(&[(&x, 4), (&x1, 3), (&q4b, 1)]), 0xa50),
            (
                "M15a",
                product(&[(&x, 3), (&x1, 6), (&q3a, 1), (&q3b, 1)]),
                0xcd98,
            ),
            (
                "M15b",
                product(&[(&x, 6), (&x1, 3), (&q3a, 1), (&q3b, 1)]),
                0xa140,
            ),
            (
                "M16",
                product(&[(&x, 4), (&x1, 4), (&q4a, 1), (&q4b, 1)]),
                0x10670,
            ),
            (
                "M20a",
                product(&[(&x, 4), (&x1, 6), (&q3a, 1), (&q3b, 1), (&q4b, 1)]),
                0x11ab10,
            ),
            (
                "M20b",
                product(&[(&x, 6), (&x1, 4), (&q3a, 1), (&q3b, 1), (&q4a, 1)]),
                0x10c1c0,
            ),
        ];
        rows.into_iter()
            .map(|(name, value, hex)| {
                assert_eq!(
                    value,
                    Poly::from_bits(hex),
                    "catalogue constant {name} does not match its hex literal"
                );
                let factorization = factor(&value).expect("catalogue values are nonzero");
                SporadicPerfect {
                    name,
                    value,
                    factorization,
                }
            })
            .collect()
    })
}

/// Looks a value up in the sporadic catalogue.
pub fn find_sporadic(value: &Poly) -> Option<&'static SporadicPerfect> {
    sporadic_perfects().iter().find(|m| m.value == *value)
}
