//! Torus-knot normalization and the exact integer helpers behind it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A torus-knot parameter pair in normal form: both coordinates nonnegative
/// and coprime, `q` odd, and `p > q` whenever `p` is odd as well. Unknots are
/// stored as `T(p0, 1)`. The `mirrored` flag records that the input had to be
/// mirrored (one negative coordinate) to reach this form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    p: BigInt,
    q: BigInt,
    mirrored: bool,
}

impl TorusKnot {
    /// Bring an arbitrary parameter pair into normal form. Swapping the pair
    /// keeps the same knot; negating exactly one coordinate mirrors it.
    pub fn normalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        let q = q.into();
        let mirrored = p.is_negative() ^ q.is_negative();
        let mut p = p.abs();
        let mut q = q.abs();
        if p.is_even() && q.is_even() {
            return Err(Error::BothEven { p, q });
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            return Err(Error::NotCoprime { p, q, g });
        }
        if q.is_one() {
            return Ok(TorusKnot { p, q, mirrored });
        }
        if p.is_one() {
            return Ok(TorusKnot {
                p: q,
                q: p,
                mirrored,
            });
        }
        // Now p, q >= 2 and exactly one of them can be even.
        if q.is_even() {
            std::mem::swap(&mut p, &mut q);
        }
        if p.is_odd() && p < q {
            std::mem::swap(&mut p, &mut q);
        }
        Ok(TorusKnot { p, q, mirrored })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn mirrored(&self) -> bool {
        self.mirrored
    }

    /// In normal form every unknot has second coordinate 1.
    pub fn is_unknot(&self) -> bool {
        self.q.is_one()
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            write!(f, "mirror T({},{})", self.p, self.q)
        } else {
            write!(f, "T({},{})", self.p, self.q)
        }
    }
}

/// Bezout data for a pair `(a, b)`: `g = gcd(a, b) > 0` and `a*x + b*y = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGcd {
    pub g: BigInt,
    pub x: BigInt,
    pub y: BigInt,
}

/// Extended Euclidean algorithm. The coefficient `x` is canonicalized into
/// `{0, .., |b|/g - 1}` when `b` is nonzero.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<ExtGcd> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_x, mut x) = (BigInt::one(), BigInt::zero());
    let (mut old_y, mut y) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let quot = &old_r / &r;
        let next_r = &old_r - &quot * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_x = &old_x - &quot * &x;
        old_x = std::mem::replace(&mut x, next_x);
        let next_y = &old_y - &quot * &y;
        old_y = std::mem::replace(&mut y, next_y);
    }
    if old_r.is_negative() {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    if !b.is_zero() {
        let modulus = (b / &old_r).abs();
        old_x = old_x.mod_floor(&modulus);
        old_y = (&old_r - a * &old_x) / b;
    }
    debug_assert_eq!(a * &old_x + b * &old_y, old_r);
    Ok(ExtGcd {
        g: old_r,
        x: old_x,
        y: old_y,
    })
}

/// Inverse of `a` modulo `m >= 2`, in `{1, .., m-1}`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m < &BigInt::from(2) {
        return Err(Error::BadModulus { m: m.clone() });
    }
    let a_red = a.mod_floor(m);
    let e = ext_gcd(&a_red, m)?;
    if !e.g.is_one() {
        return Err(Error::NotInvertible {
            a: a.clone(),
            m: m.clone(),
        });
    }
    Ok(e.x)
}
