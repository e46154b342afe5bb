//! Complete factorization into irreducibles over GF(2).
//!
//! The pipeline is square-free decomposition (characteristic-2 form, with
//! perfect squares extracted by even-bit gather), then distinct-degree
//! splitting by Frobenius iteration, then equal-degree splitting with the
//! characteristic-2 trace map. Equal-degree separators are enumerated
//! deterministically, with a fixed-seed pseudorandom fallback, so
//! factorization output is bit-reproducible.

mod primes;

pub use primes::{necklace_count, PrimeTable, DEFAULT_SIEVE_CROSSOVER};

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;
use crate::poly::Poly;
use crate::rng::{random_poly_below, SplitMix, DEFAULT_SEED};

/// How many deterministic trace separators to try before falling back to the
/// seeded pseudorandom stream.
const EDF_DETERMINISTIC_LIMIT: u64 = 4096;

static EDF_FALLBACK_SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);

/// Seed of the equal-degree-splitting pseudorandom fallback, as recorded in
/// reports.
pub fn edf_fallback_seed() -> u64 {
    EDF_FALLBACK_SEED.load(Ordering::Relaxed)
}

/// Overrides the fallback seed for this process.
pub fn set_edf_fallback_seed(seed: u64) {
    EDF_FALLBACK_SEED.store(seed, Ordering::Relaxed);
}

/// A canonical factorization: pairwise distinct irreducibles with positive
/// exponents, sorted by (degree, hex value) ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Poly, u64)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Poly, u64)] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Poly, u64)> {
        self.factors.iter()
    }

    /// Number of distinct prime factors (the paper's ω).
    pub fn omega(&self) -> u64 {
        self.factors.len() as u64
    }

    /// Exponent of `p`, 0 when `p` is not a factor.
    pub fn exponent_of(&self, p: &Poly) -> u64 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Multiplies the factorization back together.
    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (p, e)| acc.mul(&p.pow(*e)))
    }

    /// Factored text like `x^4(x+1)^2(x^2+x+1)`; parseable by the extended
    /// polynomial grammar. The empty factorization prints as `1`.
    pub fn to_factored_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for (p, e) in &self.factors {
            if *p == Poly::x() {
                s.push('x');
            } else {
                s.push('(');
                s.push_str(&p.to_string());
                s.push(')');
            }
            if *e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }
}

/// Rabin irreducibility test: `p` of degree `d` is irreducible iff
/// `x^(2^d) = x (mod p)` and `gcd(x^(2^(d/q)) + x, p) = 1` for every prime
/// `q` dividing `d`. The Frobenius powers are computed by iterated modular
/// squaring.
pub fn is_irreducible(p: &Poly) -> Result<bool, Error> {
    let d = match p.degree() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::ConstantInput(p.to_string())),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    // a root at 0 or 1 means a linear factor
    if !p.eval_at_zero() || !p.eval_at_one() {
        return Ok(false);
    }
    let checkpoints: Vec<usize> = distinct_prime_factors(d).iter().map(|q| d / q).collect();
    let x = Poly::x();
    let mut t = x.clone();
    for k in 1..=d {
        t = t.square_mod(p);
        if checkpoints.contains(&k) {
            let diff = &t + &x;
            let g = if diff.is_zero() {
                p.clone()
            } else {
                diff.gcd(p).expect("nonzero operand")
            };
            if !g.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(t == x)
}

fn distinct_prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Square-free decomposition in characteristic 2: returns pairs
/// `(part, multiplicity)` with every part square-free, the multiplicities
/// strictly increasing powers of two, and `a` equal to the product of
/// `part^multiplicity`.
///
/// When the derivative vanishes the input is a perfect square `c^2` and `c`
/// is obtained by even-index bit extraction; otherwise `gcd(a, a')` splits
/// off the odd-valuation primes.
pub fn squarefree_decompose(a: &Poly) -> Result<Vec<(Poly, u64)>, Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    sff_rec(a.clone(), 1, &mut out);
    Ok(out)
}

fn sff_rec(a: Poly, mult: u64, out: &mut Vec<(Poly, u64)>) {
    if a.degree() == Some(0) {
        return;
    }
    let d = a.derivative();
    if d.is_zero() {
        let c = a.sqrt().expect("zero derivative implies a perfect square");
        sff_rec(c, mult * 2, out);
        return;
    }
    // v_p(gcd(a, a')) is v_p(a) - 1 for odd valuations and v_p(a) for even
    // ones, so the quotient is exactly the odd-valuation primes and the gcd
    // is a perfect square.
    let g = a.gcd(&d).expect("a is nonzero");
    let s = a.div_exact(&g).expect("gcd divides");
    if !s.is_one() {
        out.push((s, mult));
    }
    if !g.is_one() {
        let c = g.sqrt().expect("even-valuation part is a perfect square");
        sff_rec(c, mult * 2, out);
    }
}

/// Full canonical factorization. Deterministic: the factor list and the
/// work done to produce it are identical from run to run.
pub fn factor(a: &Poly) -> Result<Factorization, Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut map: BTreeMap<Poly, u64> = BTreeMap::new();
    for (part, mult) in squarefree_decompose(a)? {
        for (prod, d) in distinct_degree_split(&part) {
            for prime in equal_degree_split(prod, d) {
                *map.entry(prime).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization {
        factors: map.into_iter().collect(),
    })
}

/// Splits a square-free polynomial into products of irreducibles grouped by
/// degree, via `gcd(x^(2^d) + x, f)`.
fn distinct_degree_split(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    let x = Poly::x();
    let Some(mut cd) = cur.degree() else {
        return out;
    };
    if cd == 0 {
        return out;
    }
    let mut h = x.rem(&cur).expect("cur is nonzero");
    let mut d = 0;
    loop {
        d += 1;
        // everything of degree < d is already removed; a composite remainder
        // would need degree >= 2d
        if cd < 2 * d {
            out.push((cur, cd));
            return out;
        }
        h = h.square_mod(&cur);
        let g = (&h + &x).gcd(&cur).expect("cur is nonzero");
        if g.degree() != Some(0) {
            cur = cur.div_exact(&g).expect("gcd divides");
            out.push((g, d));
            match cur.degree() {
                None | Some(0) => return out,
                Some(nd) => {
                    cd = nd;
                    h = h.rem(&cur).expect("cur is nonzero");
                }
            }
        }
    }
}

/// Splits a product of distinct irreducibles of known degree `d` into the
/// individual primes.
fn equal_degree_split(f: Poly, d: usize) -> Vec<Poly> {
    let Some(df) = f.degree() else {
        return Vec::new();
    };
    if df == 0 {
        return Vec::new();
    }
    if df == d {
        return vec![f];
    }
    let mut out = Vec::with_capacity(df / d);
    let mut todo = vec![f];
    while let Some(c) = todo.pop() {
        if c.degree() == Some(d) {
            out.push(c);
            continue;
        }
        let (g, h) = edf_split(&c, d);
        todo.push(g);
        todo.push(h);
    }
    out
}

/// Finds a proper splitting of `c` (a product of >= 2 distinct primes of
/// degree `d`) using trace-map separators `t = c_i * x` for deterministically
/// enumerated `c_i = 1, 2, 3, ...` in value order.
fn edf_split(c: &Poly, d: usize) -> (Poly, Poly) {
    for cand in 1..=EDF_DETERMINISTIC_LIMIT {
        let t = Poly::from_bits(cand).mul(&Poly::x());
        if let Some(split) = edf_try(c, d, &t) {
            return split;
        }
    }
    let mut rng = SplitMix::new(edf_fallback_seed());
    edf_split_with(
        c,
        d,
        std::iter::from_fn(move || Some(random_poly_below(&mut rng, c.degree().expect("nonzero")))),
    )
    .expect("random separator stream is inexhaustible")
}

/// Splitting driver over an arbitrary separator stream; exposed to tests so
/// the fallback path can be exercised directly.
fn edf_split_with(
    c: &Poly,
    d: usize,
    separators: impl Iterator<Item = Poly>,
) -> Option<(Poly, Poly)> {
    for t in separators {
        if let Some(split) = edf_try(c, d, &t) {
            return Some(split);
        }
    }
    None
}

/// One trace-map attempt: `T = sum_{i<d} t^(2^i) mod c` lies in GF(2) modulo
/// every prime factor, so `gcd(T, c)` collects the factors where the trace
/// vanishes.
fn edf_try(c: &Poly, d: usize, t: &Poly) -> Option<(Poly, Poly)> {
    let mut cur = t.rem(c).expect("c is nonzero");
    let mut acc = cur.clone();
    for _ in 1..d {
        cur = cur.square_mod(c);
        acc += &cur;
    }
    if acc.is_zero() {
        return None;
    }
    let g = acc.gcd(c).expect("nonzero operand");
    let dg = g.degree().expect("gcd of nonzero values is nonzero");
    if dg == 0 || Some(dg) == c.degree() {
        return None;
    }
    let h = c.div_exact(&g).expect("gcd divides");
    Some((g, h))
}

/// Number of distinct prime factors of `a`.
pub fn omega(a: &Poly) -> Result<u64, Error> {
    Ok(factor(a)?.omega())
}

/// Exponent of the prime `p` in `a` (0 when `p` does not divide `a`).
pub fn valuation(p: &Poly, a: &Poly) -> Result<u64, Error> {
    Ok(valuation_with_cofactor(p, a)?.0)
}

/// Valuation together with the cofactor `a / p^v`.
pub fn valuation_with_cofactor(p: &Poly, a: &Poly) -> Result<(u64, Poly), Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    match p.degree() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::ConstantInput(p.to_string())),
        Some(_) => {}
    }
    let mut v = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = cur.divrem(p).expect("p is nonzero");
        if !r.is_zero() {
            return Ok((v, cur));
        }
        v += 1;
        cur = q;
    }
}
