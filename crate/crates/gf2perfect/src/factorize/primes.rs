//! Enumeration and caching of irreducible polynomials by degree.
//!
//! Low degrees are enumerated by a sieve that marks every product of a
//! lower-degree prime with a cofactor; above the crossover a Rabin-test scan
//! is used instead. Tables are append-only and deterministic, and the cache
//! file reproduces byte-identically on regeneration.

use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::factorize::is_irreducible;
use crate::poly::Poly;

/// Highest degree enumerated by the sieve by default; the scan takes over
/// above it.
pub const DEFAULT_SIEVE_CROSSOVER: usize = 16;

/// The sieve bitmap for degree d holds 2^d bits; cap it at 2 MiB.
const SIEVE_HARD_CAP: usize = 24;

const CACHE_MAGIC: &str = "# gf2-primes v1 max_degree=";

/// All irreducible polynomials indexed by degree, fully enumerated up to
/// `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    /// `by_degree[d]` is the sorted list of irreducibles of degree `d`;
    /// index 0 is kept empty.
    by_degree: Vec<Vec<Poly>>,
    crossover: usize,
}

impl Default for PrimeTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeTable {
    pub fn new() -> Self {
        PrimeTable {
            by_degree: vec![Vec::new()],
            crossover: DEFAULT_SIEVE_CROSSOVER,
        }
    }

    pub fn with_crossover(crossover: usize) -> Self {
        PrimeTable {
            by_degree: vec![Vec::new()],
            crossover: crossover.min(SIEVE_HARD_CAP),
        }
    }

    /// Highest fully enumerated degree.
    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// Extends the table so every degree up to `d` is enumerated.
    pub fn ensure_degree(&mut self, d: usize) {
        while self.max_degree() < d {
            let next = self.max_degree() + 1;
            let primes = if next <= self.crossover.min(SIEVE_HARD_CAP) {
                self.sieve_degree(next)
            } else {
                scan_degree(next)
            };
            debug_assert_eq!(primes.len() as u64, necklace_count(next));
            self.by_degree.push(primes);
        }
    }

    /// All irreducibles of degree exactly `d`, sorted ascending by value.
    pub fn primes_of_degree(&mut self, d: usize) -> &[Poly] {
        self.ensure_degree(d);
        &self.by_degree[d]
    }

    /// The already-enumerated slice, without computing anything.
    pub fn get(&self, d: usize) -> Option<&[Poly]> {
        self.by_degree.get(d).map(|v| v.as_slice())
    }

    /// All primes of degree 1..=d flattened, in (degree, value) order.
    pub fn primes_up_to(&mut self, d: usize) -> Vec<Poly> {
        self.ensure_degree(d);
        self.by_degree[1..=d].iter().flatten().cloned().collect()
    }

    /// Marks every composite of degree `d` as a product of a lower-degree
    /// prime and a cofactor; the survivors are the primes.
    fn sieve_degree(&self, d: usize) -> Vec<Poly> {
        let base = 1u64 << d;
        let mut composite = vec![0u64; (1usize << d) / 64 + 1];
        for e in 1..=d / 2 {
            for p in &self.by_degree[e] {
                let pb = p.to_bits().expect("sieve primes fit in a word");
                for q in 1u64 << (d - e)..1u64 << (d - e + 1) {
                    let v = clmul_word(pb, q) - base;
                    composite[(v / 64) as usize] |= 1 << (v % 64);
                }
            }
        }
        (0..1u64 << d)
            .filter(|v| composite[(v / 64) as usize] >> (v % 64) & 1 == 0)
            .map(|v| Poly::from_bits(base | v))
            .collect()
    }

    /// Serializes to the cache text format.
    pub fn to_cache_string(&self) -> String {
        let mut s = format!("{}{}\n", CACHE_MAGIC, self.max_degree());
        for d in 1..=self.max_degree() {
            for p in &self.by_degree[d] {
                s.push_str(&format!("{} {}\n", d, p.to_hex()));
            }
        }
        s
    }

    /// Parses the cache text format, validating counts against the necklace
    /// formula.
    pub fn from_cache_str(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("empty file"))?;
        let max_degree: usize = header
            .strip_prefix(CACHE_MAGIC)
            .ok_or_else(|| corrupt("bad header"))?
            .trim()
            .parse()
            .map_err(|_| corrupt("bad max_degree in header"))?;
        let mut by_degree: Vec<Vec<Poly>> = vec![Vec::new(); max_degree + 1];
        for line in lines {
            let (ds, hex) = line
                .split_once(' ')
                .ok_or_else(|| corrupt(format!("bad line {line:?}")))?;
            let d: usize = ds
                .parse()
                .map_err(|_| corrupt(format!("bad degree in {line:?}")))?;
            if d == 0 || d > max_degree {
                return Err(corrupt(format!("degree {d} out of range")));
            }
            let p = Poly::from_hex(hex).map_err(|e| corrupt(format!("{e}")))?;
            if p.degree() != Some(d) {
                return Err(corrupt(format!("{hex} does not have degree {d}")));
            }
            if let Some(last) = by_degree[d].last() {
                if *last >= p {
                    return Err(corrupt(format!("entries of degree {d} not sorted")));
                }
            }
            by_degree[d].push(p);
        }
        for (d, primes) in by_degree.iter().enumerate().skip(1) {
            if primes.len() as u64 != necklace_count(d) {
                return Err(corrupt(format!(
                    "degree {d} has {} entries, necklace formula says {}",
                    primes.len(),
                    necklace_count(d)
                )));
            }
        }
        Ok(PrimeTable {
            by_degree,
            crossover: DEFAULT_SIEVE_CROSSOVER,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        fs::write(path, self.to_cache_string())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        Self::from_cache_str(&fs::read_to_string(path)?)
    }
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CacheCorrupt(msg.into())
}

/// Rabin-test scan over all values of degree `d`.
fn scan_degree(d: usize) -> Vec<Poly> {
    (1u64 << d..1u64 << (d + 1))
        .map(Poly::from_bits)
        .filter(|p| is_irreducible(p).expect("scan values are non-constant"))
        .collect()
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

/// Number of irreducible polynomials of degree `d` over GF(2):
/// `(1/d) * sum_{e | d} mu(e) * 2^(d/e)`.
pub fn necklace_count(d: usize) -> u64 {
    let mut sum: i64 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            sum += mobius(e) * (1i64 << (d / e));
        }
    }
    (sum / d as i64) as u64
}

fn mobius(mut n: usize) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}
