//! Bit-packed polynomials over GF(2).
//!
//! Bit `i` of the limb sequence is the coefficient of `x^i`, so multiplying
//! by `x` is a left shift and evaluation at 0 is bit 0. Every nonzero
//! polynomial over GF(2) is monic, so there is no normalization beyond
//! trimming high zero limbs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::Error;

/// A binary polynomial with bit-packed coefficients.
///
/// Invariant: no stored zero limbs above the leading one; the zero polynomial
/// is the empty limb vector. Two values are equal iff their bit sequences are
/// identical. `degree()` returns `None` for zero rather than an integer
/// sentinel, so degree arithmetic cannot silently wrap.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    limbs: Vec<u64>,
}

const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

impl Poly {
    pub fn zero() -> Self {
        Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { limbs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { limbs: vec![2] }
    }

    /// The polynomial `x + 1`.
    pub fn x_plus_one() -> Self {
        Poly { limbs: vec![3] }
    }

    /// The monomial `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut limbs = vec![0; d / 64 + 1];
        limbs[d / 64] = 1 << (d % 64);
        Poly { limbs }
    }

    /// The complete polynomial `x^d + x^(d-1) + ... + 1` (all coefficients 1).
    pub fn all_ones(d: usize) -> Self {
        let words = d / 64 + 1;
        let mut limbs = vec![u64::MAX; words];
        let top = d % 64;
        limbs[words - 1] = if top == 63 {
            u64::MAX
        } else {
            (1u64 << (top + 1)) - 1
        };
        Poly { limbs }
    }

    /// Builds a polynomial from the low 64 coefficient bits.
    pub fn from_bits(bits: u64) -> Self {
        if bits == 0 {
            Poly::zero()
        } else {
            Poly { limbs: vec![bits] }
        }
    }

    /// The coefficient bits as a `u64`, if the degree fits.
    pub fn to_bits(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub(crate) fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Poly { limbs }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + (63 - top.leading_zeros() as usize))
    }

    /// The coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|l| l >> (i % 64) & 1 == 1)
    }

    /// Value at 0, i.e. the constant coefficient.
    pub fn eval_at_zero(&self) -> bool {
        self.coeff(0)
    }

    /// Value at 1, i.e. the parity of the number of terms.
    pub fn eval_at_one(&self) -> bool {
        self.limbs.iter().map(|l| l.count_ones()).sum::<u32>() % 2 == 1
    }

    /// Carry-less product. Operand-scanning over the set bits of the smaller
    /// input; word-sized limbs throughout.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.limbs.len() <= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; a.limbs.len() + b.limbs.len()];
        for (i, &limb) in a.limbs.iter().enumerate() {
            let mut l = limb;
            while l != 0 {
                let k = l.trailing_zeros() as usize;
                xor_shifted(&mut out, &b.limbs, i * 64 + k);
                l &= l - 1;
            }
        }
        Poly::from_limbs(out)
    }

    /// Squaring via the Frobenius map: spread each bit to an even position.
    pub fn square(&self) -> Poly {
        let mut out = Vec::with_capacity(self.limbs.len() * 2);
        for &l in &self.limbs {
            out.push(spread_bits(l as u32));
            out.push(spread_bits((l >> 32) as u32));
        }
        Poly::from_limbs(out)
    }

    /// Square root, if the polynomial is a perfect square (only even-index
    /// coefficients set). Gathers the even bits.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.limbs.iter().any(|&l| l & ODD_BITS != 0) {
            return None;
        }
        let mut out = Vec::with_capacity(self.limbs.len() / 2 + 1);
        for pair in self.limbs.chunks(2) {
            let lo = gather_even_bits(pair[0]) as u64;
            let hi = pair.get(1).map_or(0, |&l| gather_even_bits(l) as u64);
            out.push(lo | hi << 32);
        }
        Some(Poly::from_limbs(out))
    }

    /// Formal derivative. In characteristic 2 the even-exponent terms vanish
    /// and odd exponents keep coefficient 1, so each limb shifts its
    /// odd-position bits down by one; nothing crosses a limb boundary
    /// because bit 0 of every limb sits at an even exponent.
    pub fn derivative(&self) -> Poly {
        Poly::from_limbs(self.limbs.iter().map(|&l| (l & ODD_BITS) >> 1).collect())
    }

    /// `self^e` by binary exponentiation; `pow(0)` is 1.
    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e != 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Quotient and remainder, with `deg r < deg d`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if da < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.limbs.clone();
        let mut quot = vec![0u64; (da - dd) / 64 + 1];
        let mut cur = Some(da);
        while let Some(c) = cur {
            if c < dd {
                break;
            }
            let shift = c - dd;
            quot[shift / 64] |= 1 << (shift % 64);
            xor_shifted(&mut rem, &divisor.limbs, shift);
            cur = top_bit_at_most(&rem, c);
        }
        Ok((Poly::from_limbs(quot), Poly::from_limbs(rem)))
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Poly) -> Result<Poly, Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        match self.degree() {
            None => Ok(Poly::zero()),
            Some(da) if da < dd => Ok(self.clone()),
            Some(da) => {
                let mut rem = self.limbs.clone();
                rem_limbs_in_place(&mut rem, da, &divisor.limbs, dd);
                Ok(Poly::from_limbs(rem))
            }
        }
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn is_multiple_of(&self, divisor: &Poly) -> bool {
        matches!(self.rem(divisor), Ok(r) if r.is_zero())
    }

    /// Greatest common divisor. Over GF(2) the result is automatically monic.
    /// `gcd(a, 0) = a`; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, Error> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = std::mem::replace(&mut b, r);
        }
        Ok(a)
    }

    /// `self^e mod m` by square-and-multiply. The modulus must have
    /// degree >= 1.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly, Error> {
        match m.degree() {
            None | Some(0) => return Err(Error::InvalidModulus(m.to_string())),
            Some(_) => {}
        }
        let mut base = self.rem(m).expect("modulus is nonzero");
        let mut acc = Poly::one().rem(m).expect("modulus is nonzero");
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m).expect("modulus is nonzero");
            }
            e >>= 1;
            if e != 0 {
                base = base.square().rem(m).expect("modulus is nonzero");
            }
        }
        Ok(acc)
    }

    /// `self^2 mod m`, the inner step of Frobenius iteration.
    pub(crate) fn square_mod(&self, m: &Poly) -> Poly {
        self.square().rem(m).expect("modulus is nonzero")
    }

    /// Lowercase hex of the coefficient bits, `0x`-prefixed.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = String::from("0x");
        let mut first = true;
        for &l in self.limbs.iter().rev() {
            if first {
                s.push_str(&format!("{l:x}"));
                first = false;
            } else {
                s.push_str(&format!("{l:016x}"));
            }
        }
        s
    }

    /// Parses the `0x`-prefixed hex form.
    pub fn from_hex(text: &str) -> Result<Poly, Error> {
        let digits = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "hex form must start with 0x".into(),
            })?;
        if digits.is_empty() {
            return Err(Error::Parse {
                position: 2,
                message: "hex form has no digits".into(),
            });
        }
        let mut limbs = vec![0u64; digits.len() / 16 + 1];
        for (i, c) in digits.bytes().rev().enumerate() {
            let v = (c as char).to_digit(16).ok_or_else(|| Error::Parse {
                position: text.len() - 1 - i,
                message: format!("invalid hex digit {:?}", c as char),
            })? as u64;
            limbs[i / 16] |= v << (i % 16 * 4);
        }
        Ok(Poly::from_limbs(limbs))
    }
}

/// XORs `src << shift_bits` into `dst`. `dst` must be long enough to hold
/// every nonzero bit of the shifted value.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift_bits: usize) {
    let words = shift_bits / 64;
    let bits = shift_bits % 64;
    if bits == 0 {
        for (d, &s) in dst[words..].iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        let mut carry = 0u64;
        for (d, &s) in dst[words..].iter_mut().zip(src) {
            *d ^= s << bits | carry;
            carry = s >> (64 - bits);
        }
        if carry != 0 {
            dst[words + src.len()] ^= carry;
        }
    }
}

/// Highest set bit index that is <= `upper`, scanning downward.
fn top_bit_at_most(limbs: &[u64], upper: usize) -> Option<usize> {
    let mut w = (upper / 64).min(limbs.len().saturating_sub(1));
    let mut mask = if upper / 64 > w || upper % 64 == 63 {
        u64::MAX
    } else {
        (1u64 << (upper % 64 + 1)) - 1
    };
    loop {
        let l = limbs[w] & mask;
        if l != 0 {
            return Some(w * 64 + 63 - l.leading_zeros() as usize);
        }
        if w == 0 {
            return None;
        }
        w -= 1;
        mask = u64::MAX;
    }
}

/// In-place `rem`: reduces `rem` (degree `dr`) modulo the divisor limbs.
pub(crate) fn rem_limbs_in_place(rem: &mut [u64], dr: usize, div: &[u64], dd: usize) {
    let mut cur = Some(dr);
    while let Some(c) = cur {
        if c < dd {
            break;
        }
        xor_shifted(rem, div, c - dd);
        cur = top_bit_at_most(rem, c);
    }
}

/// Inserts a zero bit after every bit of `x` (Frobenius squaring of one word).
fn spread_bits(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | v << 16) & 0x0000_ffff_0000_ffff;
    v = (v | v << 8) & 0x00ff_00ff_00ff_00ff;
    v = (v | v << 4) & 0x0f0f_0f0f_0f0f_0f0f;
    v = (v | v << 2) & 0x3333_3333_3333_3333;
    v = (v | v << 1) & 0x5555_5555_5555_5555;
    v
}

/// Collects the even-index bits of `x` into the low half (inverse of
/// `spread_bits`).
fn gather_even_bits(x: u64) -> u32 {
    let mut v = x & 0x5555_5555_5555_5555;
    v = (v | v >> 1) & 0x3333_3333_3333_3333;
    v = (v | v >> 2) & 0x0f0f_0f0f_0f0f_0f0f;
    v = (v | v >> 4) & 0x00ff_00ff_00ff_00ff;
    v = (v | v >> 8) & 0x0000_ffff_0000_ffff;
    v = (v | v >> 16) & 0x0000_0000_ffff_ffff;
    v as u32
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.limbs.clone();
        for (d, &s) in out.iter_mut().zip(&short.limbs) {
            *d ^= s;
        }
        Poly::from_limbs(out)
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.limbs.len() < rhs.limbs.len() {
            self.limbs.resize(rhs.limbs.len(), 0);
        }
        for (d, &s) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *d ^= s;
        }
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

/// Order by integer value of the bit sequence, which coincides with
/// (degree, hex value) order used for canonical factor sorting.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical text: strictly descending exponents, `1` for the constant term,
/// `0` for the zero polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
