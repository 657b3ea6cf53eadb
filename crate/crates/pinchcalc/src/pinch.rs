//! The pinch-move calculus: single moves, full reduction sequences, the
//! inverse synthesis from seed data, and the doubly indexed rho table.
//!
//! A pinch move on `T(p,q)` produces `T(|p-2t|, |q-2h|)` where `(t, h)` is
//! the unique solution of `p*h - q*t = 1` with `h` in `{1, .., q-1}`. The
//! sign of the move is `eps = sign(p - 2t)`, with the degenerate value 0
//! (which occurs exactly for `p = 2`) normalized to -1; that choice agrees
//! with `sign(q - 2h)` and is forced by the seed constraint that the last
//! move onto `T(0,1)` or `T(1,1)` is negative.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::knot::{mod_inverse, TorusKnot};
use crate::{Error, Result};

/// The sign of a pinch move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.as_i64())
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// One pinch move applied to the ordered pair `from`, yielding `to`.
///
/// The move satisfies `from.0 * h - from.1 * t = 1`,
/// `to = (|from.0 - 2t|, |from.1 - 2h|)`, and `to.0 * from.1 - to.1 * from.0
/// = 2 * epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinchStep {
    pub from: (BigInt, BigInt),
    pub to: (BigInt, BigInt),
    pub t: BigInt,
    pub h: BigInt,
    pub epsilon: Sign,
}

/// The unique `(t, h)` with `p*h - q*t = 1` and `h` in `{1, .., q-1}`,
/// computed on the ordered pair exactly as given.
pub fn pinch_params_pair(p: &BigInt, q: &BigInt) -> Result<(BigInt, BigInt)> {
    if p <= &BigInt::one() || q <= &BigInt::one() {
        return Err(Error::UnknotPinch {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let h = mod_inverse(p, q).map_err(|e| match e {
        Error::NotInvertible { .. } => Error::NotCoprime {
            p: p.clone(),
            q: q.clone(),
            g: p.gcd(q),
        },
        other => other,
    })?;
    let t = (p * &h - BigInt::one()) / q;
    debug_assert_eq!(p * &h - q * &t, BigInt::one());
    Ok((t, h))
}

/// Apply one pinch move to the ordered pair exactly as given.
pub fn pinch_move_pair(p: &BigInt, q: &BigInt) -> Result<PinchStep> {
    let (t, h) = pinch_params_pair(p, q)?;
    let dp = p - BigInt::from(2) * &t;
    let dq = q - BigInt::from(2) * &h;
    // (p-2t)(q-2h) >= 0, so a single sign describes the move; the factor
    // p-2t vanishes only for p = 2, where q-2h = -1 fixes the sign.
    debug_assert!((&dp * &dq).is_positive() || dp.is_zero() || dq.is_zero());
    let epsilon = if dp.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let to = (dp.abs(), dq.abs());
    debug_assert_eq!(&to.0 * q - &to.1 * p, BigInt::from(2) * epsilon.as_bigint());
    Ok(PinchStep {
        from: (p.clone(), q.clone()),
        to,
        t,
        h,
        epsilon,
    })
}

pub fn pinch_params(knot: &TorusKnot) -> Result<(BigInt, BigInt)> {
    pinch_params_pair(knot.p(), knot.q())
}

pub fn pinch_move(knot: &TorusKnot) -> Result<PinchStep> {
    pinch_move_pair(knot.p(), knot.q())
}

/// The full reduction record of a normalized torus knot.
///
/// Knots are stored in reduction order, from `(p_n, q_n)` down to `(p_0, 1)`;
/// the accessors take the ascending index `k` used by the recursions, so no
/// off-by-one reindexing leaks out of this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinchSequence {
    /// `knots[i] = (p_{n-i}, q_{n-i})`.
    knots: Vec<(BigInt, BigInt)>,
    /// `epsilons[k-1] = eps_k`, `k = 1..=n`.
    epsilons: Vec<Sign>,
    /// `ms[k-1] = m_k`, `k = 1..=n-1`.
    ms: Vec<BigInt>,
}

impl PinchSequence {
    /// Number of pinch moves; 0 for the unknot.
    pub fn n(&self) -> usize {
        self.knots.len() - 1
    }

    /// `(p_k, q_k)` for `k` in `0..=n`.
    pub fn knot(&self, k: usize) -> &(BigInt, BigInt) {
        &self.knots[self.n() - k]
    }

    /// Knots in reduction order `(p_n, q_n), .., (p_0, 1)`.
    pub fn knots(&self) -> &[(BigInt, BigInt)] {
        &self.knots
    }

    /// `eps_k` for `k` in `1..=n`.
    pub fn epsilon(&self, k: usize) -> Sign {
        self.epsilons[k - 1]
    }

    pub fn epsilons(&self) -> &[Sign] {
        &self.epsilons
    }

    /// `m_k` for `k` in `1..=n-1`.
    pub fn m(&self, k: usize) -> &BigInt {
        &self.ms[k - 1]
    }

    pub fn ms(&self) -> &[BigInt] {
        &self.ms
    }

    pub fn p0(&self) -> &BigInt {
        &self.knot(0).0
    }

    /// `q_1`, defined when `n >= 1`.
    pub fn q1(&self) -> Option<&BigInt> {
        if self.n() >= 1 {
            Some(&self.knot(1).1)
        } else {
            None
        }
    }

    /// First coordinate of the top knot; its parity selects between the
    /// closed-formula cases.
    pub fn p(&self) -> &BigInt {
        &self.knots[0].0
    }

    pub fn q(&self) -> &BigInt {
        &self.knots[0].1
    }

    /// The generator-side data of this sequence.
    pub fn seed(&self) -> SeedData {
        SeedData {
            p0: self.p0().clone(),
            q1: self.q1().cloned().unwrap_or_else(BigInt::one),
            epsilons: self.epsilons.clone(),
            ms: self.ms.clone(),
        }
    }

    /// Recompute the individual moves along the stored knots.
    pub fn steps(&self) -> Vec<PinchStep> {
        let mut out = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let (p, q) = &self.knots[i];
            let step = pinch_move_pair(p, q).expect("stored knot is not the unknot");
            debug_assert_eq!(step.to, self.knots[i + 1]);
            out.push(step);
        }
        out
    }
}

/// Reduce a normalized torus knot to the unknot by iterated pinch moves.
pub fn pinch_sequence(knot: &TorusKnot) -> PinchSequence {
    let mut knots = vec![(knot.p().clone(), knot.q().clone())];
    let mut eps_reduction_order = Vec::new();
    while !knots.last().unwrap().1.is_one() {
        let (p, q) = knots.last().unwrap();
        let step = pinch_move_pair(p, q).expect("non-unknot in normal form has q > 1");
        debug_assert!(step.to.1.is_odd(), "pinch of a normalized knot keeps q odd");
        eps_reduction_order.push(step.epsilon);
        knots.push(step.to);
    }
    let epsilons: Vec<Sign> = eps_reduction_order.into_iter().rev().collect();
    let ms = derive_ms_parts(&knots, &epsilons);
    PinchSequence {
        knots,
        epsilons,
        ms,
    }
}

/// `m_k = (p_{k+1} + eps_k * eps_{k+1} * p_{k-1}) / p_k` for `k = 1..=n-1`,
/// recomputed from the stored knots. Panics if the division is not exact or
/// the same relation fails on the q side; both would mean the sequence data
/// is corrupt.
pub fn derive_ms(seq: &PinchSequence) -> Vec<BigInt> {
    derive_ms_parts(&seq.knots, &seq.epsilons)
}

fn derive_ms_parts(knots: &[(BigInt, BigInt)], epsilons: &[Sign]) -> Vec<BigInt> {
    let n = knots.len() - 1;
    let knot = |k: usize| &knots[n - k];
    let mut ms = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let ee = (epsilons[k - 1] * epsilons[k]).as_bigint();
        let num = &knot(k + 1).0 + &ee * &knot(k - 1).0;
        let (m, rem) = num.div_rem(&knot(k).0);
        assert!(
            rem.is_zero(),
            "m_{k} is not integral; pinch data is corrupt"
        );
        assert!(
            m.is_even() && m >= BigInt::from(2),
            "m_{k} = {m} is not an even integer >= 2"
        );
        assert_eq!(
            knot(k + 1).1,
            &m * &knot(k).1 - ee * &knot(k - 1).1,
            "q-side recursion disagrees at k = {k}"
        );
        ms.push(m);
    }
    ms
}

/// The free data of a pinch sequence: `{n, p0, q1, eps_1..eps_n,
/// m_1..m_{n-1}}`. Subject to: `p0 >= 0`; `q1 >= 3` odd (for `n >= 1`);
/// `eps_1 = -1` whenever `p0` is 0 or 1; every `m_k` even and `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedData {
    pub p0: BigInt,
    pub q1: BigInt,
    pub epsilons: Vec<Sign>,
    pub ms: Vec<BigInt>,
}

impl SeedData {
    pub fn n(&self) -> usize {
        self.epsilons.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.p0.is_negative() {
            return Err(Error::SeedConstraintP0 {
                p0: self.p0.clone(),
            });
        }
        let n = self.n();
        if self.ms.len() + 1 != n.max(1) {
            return Err(Error::SeedMsLength {
                want: n.saturating_sub(1),
                got: self.ms.len(),
            });
        }
        if n == 0 {
            return Ok(());
        }
        if self.q1.is_even() || self.q1 < BigInt::from(3) {
            return Err(Error::SeedConstraintQ1 {
                q1: self.q1.clone(),
            });
        }
        if self.p0 <= BigInt::one() && self.epsilons[0] == Sign::Plus {
            return Err(Error::SeedConstraintB {
                p0: self.p0.clone(),
            });
        }
        for (i, m) in self.ms.iter().enumerate() {
            if m.is_odd() || m < &BigInt::from(2) {
                return Err(Error::SeedConstraintM {
                    k: i + 1,
                    m: m.clone(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SeedData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{n={}, p0={}, q1={}, eps=[", self.n(), self.p0, self.q1)?;
        for (i, e) in self.epsilons.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "], ms=[")?;
        for (i, m) in self.ms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]}}")
    }
}

/// Rebuild the pinch sequence determined by a seed: `q_0 = 1`,
/// `p_1 = p0*q1 - 2*eps_1`, then
/// `x_k = m_{k-1} x_{k-1} - eps_{k-1} eps_k x_{k-2}` on both coordinates.
/// This is the inverse of [`pinch_sequence`] followed by
/// [`PinchSequence::seed`].
pub fn synthesize(seed: &SeedData) -> Result<PinchSequence> {
    seed.validate()?;
    let n = seed.n();
    if n == 0 {
        return Ok(PinchSequence {
            knots: vec![(seed.p0.clone(), BigInt::one())],
            epsilons: Vec::new(),
            ms: Vec::new(),
        });
    }
    let mut ps = vec![seed.p0.clone()];
    let mut qs = vec![BigInt::one()];
    ps.push(&seed.p0 * &seed.q1 - BigInt::from(2) * seed.epsilons[0].as_bigint());
    qs.push(seed.q1.clone());
    for k in 2..=n {
        let m = &seed.ms[k - 2];
        let ee = (seed.epsilons[k - 2] * seed.epsilons[k - 1]).as_bigint();
        ps.push(m * &ps[k - 1] - &ee * &ps[k - 2]);
        qs.push(m * &qs[k - 1] - &ee * &qs[k - 2]);
    }
    let knots: Vec<(BigInt, BigInt)> = ps.into_iter().zip(qs).rev().collect();
    Ok(PinchSequence {
        knots,
        epsilons: seed.epsilons.clone(),
        ms: seed.ms.clone(),
    })
}

/// The doubly indexed integers `rho_{k,n}` attached to a seed, with
/// `r_n = rho_{1,n}` and `s_n = rho_{2,n}`:
///
/// ```text
/// rho_{1,n} = eps_1 (p0 q_n - p_n) / 2            n >= 0
/// rho_{2,n} = eps_1 eps_2 (q1 rho_{1,n} - q_n)    n >= 1
/// rho_{k,n} = eps_{k-1} eps_k (m_{k-2} rho_{k-1,n} - rho_{k-2,n})
/// ```
///
/// Boundary values: `rho_{k,k-1} = 0`, `rho_{k,k} = 1`, `rho_{k,k+1} = m_k`.
/// The table is strictly increasing in `n` and strictly decreasing in `k`,
/// and `rho_{k,n}` is odd exactly when `n - k` is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoTable {
    max_n: usize,
    /// `rows[k-1][n-(k-1)] = rho_{k,n}` for `k = 1..=max_n+1`.
    rows: Vec<Vec<BigInt>>,
}

impl RhoTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Largest row index `k` held by the table (`max_n + 1`).
    pub fn max_k(&self) -> usize {
        self.rows.len()
    }

    pub fn rho(&self, k: usize, n: usize) -> Result<&BigInt> {
        if k == 0 || k > self.rows.len() || n + 1 < k || n > self.max_n {
            return Err(Error::RhoIndex { k, n });
        }
        Ok(&self.rows[k - 1][n + 1 - k])
    }

    pub fn r(&self, n: usize) -> Result<&BigInt> {
        self.rho(1, n)
    }

    pub fn s(&self, n: usize) -> Result<&BigInt> {
        self.rho(2, n)
    }
}

/// Build the rho table of a seed for columns `0..=max_n`; `max_n` may not
/// exceed the seed's move count.
pub fn rho_table(seed: &SeedData, max_n: usize) -> Result<RhoTable> {
    if max_n > seed.n() {
        return Err(Error::RhoBound { max_n, n: seed.n() });
    }
    let seq = synthesize(seed)?;
    let n_moves = seed.n();
    let eps = |k: usize| seed.epsilons[k - 1];
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);

    let mut row1 = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let v = if n_moves == 0 {
            BigInt::zero()
        } else {
            let (p_n, q_n) = seq.knot(n);
            let v = eps(1).as_bigint() * (&seed.p0 * q_n - p_n);
            debug_assert!(v.is_even());
            v / BigInt::from(2)
        };
        row1.push(v);
    }
    rows.push(row1);

    for k in 2..=max_n + 1 {
        let mut row = Vec::with_capacity(max_n + 2 - k);
        for n in (k - 1)..=max_n {
            let v = if k > n_moves {
                // Only the boundary entry rho_{k,k-1} = 0 reaches past the
                // last move sign.
                BigInt::zero()
            } else if k == 2 {
                let (_, q_n) = seq.knot(n);
                (eps(1) * eps(2)).as_bigint() * (&seed.q1 * &rows[0][n] - q_n)
            } else {
                let ee = (eps(k - 1) * eps(k)).as_bigint();
                let prev = &rows[k - 2][n + 2 - k];
                let prev2 = &rows[k - 3][n + 3 - k];
                ee * (&seed.ms[k - 3] * prev - prev2)
            };
            row.push(v);
        }
        rows.push(row);
    }
    Ok(RhoTable { max_n, rows })
}
