//! The divisor-sum map σ over GF(2)[x].
//!
//! `sigma(a)` is the sum of all divisors of `a` including 1 and `a`,
//! computed through the factorization as a product of geometric sums
//! `1 + p + ... + p^e`; it is multiplicative on coprime arguments and
//! preserves degree. `sigma_naive` enumerates every divisor instead and
//! exists solely as an independent oracle, quarantined behind a degree
//! bound.
//!
//! σ(0) is an error: a divisor sum over 0 is ill-defined. The convention
//! that 0 and 1 are perfect lives in `classify::is_perfect` instead.

use crate::error::Error;
use crate::factorize::{factor, Factorization};
use crate::poly::Poly;

/// Largest input degree `sigma_naive` accepts by default.
pub const SIGMA_NAIVE_DEFAULT_BOUND: usize = 20;

/// σ together with the factorization it was computed through, retained for
/// report provenance.
#[derive(Clone, Debug)]
pub struct SigmaResult {
    pub value: Poly,
    pub factored_input: Factorization,
}

/// `1 + p + ... + p^e` for an irreducible `p`: the σ of the prime power
/// `p^e`. `e = 0` gives the permitted degenerate 1.
pub fn sigma_prime_power(p: &Poly, e: u64) -> Poly {
    geometric_sum(p, e)
}

/// `S(a^r) = 1 + a + ... + a^r` by the recursive even/odd split:
/// `S(a^(2k+1)) = (1+a) S((a^2)^k)` and `S(a^(2k)) = (1+a) S((a^2)^(k-1)) + a^(2k)`.
pub fn geometric_sum(a: &Poly, r: u64) -> Poly {
    geom_rec(a, r).0
}

/// Returns `(S(a^r), a^r)`.
fn geom_rec(a: &Poly, r: u64) -> (Poly, Poly) {
    if r == 0 {
        return (Poly::one(), Poly::one());
    }
    let sq = a.square();
    let one_plus_a = &Poly::one() + a;
    if r % 2 == 1 {
        let (s2, p2) = geom_rec(&sq, (r - 1) / 2);
        (one_plus_a.mul(&s2), p2.mul(a))
    } else {
        let (s2, p2) = geom_rec(&sq, (r - 2) / 2);
        let pow = p2.mul(&sq);
        (&one_plus_a.mul(&s2) + &pow, pow)
    }
}

/// The divisor sum σ(a). Errors on zero input.
pub fn sigma(a: &Poly) -> Result<Poly, Error> {
    Ok(sigma_detailed(a)?.value)
}

/// σ(a) with the factorization retained.
pub fn sigma_detailed(a: &Poly) -> Result<SigmaResult, Error> {
    let factored_input = factor(a)?;
    let value = sigma_of_factorization(&factored_input);
    Ok(SigmaResult {
        value,
        factored_input,
    })
}

/// σ of an already-factored value: the product of `sigma_prime_power` over
/// the factors.
pub fn sigma_of_factorization(f: &Factorization) -> Poly {
    f.iter().fold(Poly::one(), |acc, (p, e)| {
        acc.mul(&sigma_prime_power(p, *e))
    })
}

/// σ(b²) from the factorization of b, by doubling every exponent.
pub fn sigma_of_square(f: &Factorization) -> Poly {
    f.iter().fold(Poly::one(), |acc, (p, e)| {
        acc.mul(&sigma_prime_power(p, 2 * e))
    })
}

/// The divisor-enumeration oracle for σ: iterates every exponent tuple over
/// the factorization and XOR-accumulates the divisors. Errors above the
/// degree bound to guard against exponential blowup.
pub fn sigma_naive(a: &Poly) -> Result<Poly, Error> {
    sigma_naive_with_bound(a, SIGMA_NAIVE_DEFAULT_BOUND)
}

pub fn sigma_naive_with_bound(a: &Poly, bound: usize) -> Result<Poly, Error> {
    let degree = a.degree().ok_or(Error::ZeroInput)?;
    if degree > bound {
        return Err(Error::OracleBound { degree, bound });
    }
    let f = factor(a)?;
    let mut acc = Poly::zero();
    divisor_rec(f.factors(), &Poly::one(), &mut acc);
    Ok(acc)
}

fn divisor_rec(factors: &[(Poly, u64)], prefix: &Poly, acc: &mut Poly) {
    match factors.split_first() {
        None => *acc += prefix,
        Some(((p, e), rest)) => {
            let mut cur = prefix.clone();
            divisor_rec(rest, &cur, acc);
            for _ in 0..*e {
                cur = cur.mul(p);
                divisor_rec(rest, &cur, acc);
            }
        }
    }
}

/// Both sides of the geometric-sum identity
/// `S(a^e) + 1 = a (a+1)^(2^n - 1) S(a^(k-1))^(2^n)` for `e = 2^n k`, `k`
/// odd, `n >= 1`, so callers can assert their equality. Errors unless `e` is
/// a positive even number.
pub fn geometric_split(a: &Poly, e: u64) -> Result<(Poly, Poly), Error> {
    if e == 0 || e % 2 == 1 {
        return Err(Error::InvalidExponent(e));
    }
    let n = e.trailing_zeros();
    let k = e >> n;
    let lhs = &geometric_sum(a, e) + &Poly::one();
    let a_plus_one = a + &Poly::one();
    let rhs = a
        .mul(&a_plus_one.pow((1 << n) - 1))
        .mul(&geometric_sum(a, k - 1).pow(1 << n));
    Ok((lhs, rhs))
}
