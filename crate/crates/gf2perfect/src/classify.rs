//! The named predicates and constructions: parity, Mersenne and complete
//! polynomials, perfection, the trivial perfect family and the B²·S square
//! decomposition.

use serde::Serialize;

use crate::error::Error;
use crate::factorize::{factor, valuation_with_cofactor};
use crate::poly::Poly;
use crate::sigma::{geometric_sum, sigma_of_factorization};

/// A polynomial is odd iff it evaluates to 1 at both 0 and 1, i.e. it is
/// divisible by neither `x` nor `x+1`; even otherwise.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub fn parity(a: &Poly) -> Result<Parity, Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if a.eval_at_zero() && a.eval_at_one() {
        Ok(Parity::Odd)
    } else {
        Ok(Parity::Even)
    }
}

/// Whether `a + 1` is a product of powers of `x` and `x+1` ("a+1 splits").
pub fn is_mersenne(a: &Poly) -> Result<bool, Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let c = a + &Poly::one();
    if c.is_zero() {
        return Ok(false);
    }
    let (_, c) = valuation_with_cofactor(&Poly::x(), &c)?;
    let (_, c) = valuation_with_cofactor(&Poly::x_plus_one(), &c)?;
    Ok(c.is_one())
}

/// Whether every coefficient of `a` is 1, i.e. `a = x^d + ... + x + 1`.
pub fn is_complete(a: &Poly) -> Result<bool, Error> {
    let d = a.degree().ok_or(Error::ZeroInput)?;
    Ok(*a == Poly::all_ones(d))
}

/// Whether `a = 1 + b + ... + b^k` with `k = deg a / deg b`; false whenever
/// `deg b` does not divide `deg a`.
pub fn is_complete_in(a: &Poly, b: &Poly) -> Result<bool, Error> {
    let da = a.degree().ok_or(Error::ZeroInput)?;
    let db = match b.degree() {
        None => return Err(Error::ZeroInput),
        Some(0) => return Err(Error::ConstantInput(b.to_string())),
        Some(d) => d,
    };
    if da % db != 0 {
        return Ok(false);
    }
    Ok(*a == geometric_sum(b, (da / db) as u64))
}

/// σ(a) = a. By the paper's convention 0 and 1 are perfect; this is handled
/// here rather than in σ, which rejects 0.
pub fn is_perfect(a: &Poly) -> bool {
    if a.is_zero() || a.is_one() {
        return true;
    }
    let f = factor(a).expect("nonzero input");
    sigma_of_factorization(&f) == *a
}

/// Largest trivial-family index constructed without an override.
pub const TRIVIAL_PERFECT_MAX_N: u32 = 16;

/// The trivial perfect polynomial `T(n) = (x(x+1))^(2^n - 1)`; `T(0) = 1`.
pub fn trivial_perfect(n: u32) -> Result<Poly, Error> {
    if n > TRIVIAL_PERFECT_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "trivial family index",
            requested: n as u64,
            budget: TRIVIAL_PERFECT_MAX_N as u64,
        });
    }
    let base = Poly::x().mul(&Poly::x_plus_one());
    Ok(base.pow((1u64 << n) - 1))
}

/// The unique decomposition `a = b² s` with `s` square-free:
/// `b = prod p^floor(e/2)` and `s = prod_{e odd} p` over the factorization.
/// Hypotheses of the main theorem are reported as flags rather than errors so
/// callers can count near-misses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub b: Poly,
    pub s: Poly,
    /// gcd(b, s) = 1
    pub coprime: bool,
    /// parity(b) is even
    pub b_even: bool,
}

pub fn square_decompose(a: &Poly) -> Result<SquareDecomposition, Error> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = factor(a)?;
    let mut b = Poly::one();
    let mut s = Poly::one();
    for (p, e) in f.iter() {
        b = b.mul(&p.pow(e / 2));
        if e % 2 == 1 {
            s = s.mul(p);
        }
    }
    let coprime = b.gcd(&s).expect("b is nonzero").is_one();
    let b_even = parity(&b)? == Parity::Even;
    Ok(SquareDecomposition {
        b,
        s,
        coprime,
        b_even,
    })
}
