//! Conjecture-status classification and generators for the named families.
//!
//! The conjecture under test predicts that the nonorientable 4-genus of
//! `T(p,q)` equals the pinch count `n`. Classification evaluates, in order:
//! the unknot; the Moebius-band knots (`n = 1`, exactly the `T(qm+-2, q)`);
//! the condition characterizing `gap = n` (conjecture verified, since the
//! OSS lower bound then meets the surface upper bound); the condition
//! characterizing `gap = n - 1`; descent through `T(4,9)`, which caps the
//! genus at `n - 1` and disproves the prediction; otherwise only the bounds
//! `[gap, n]` are known.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::invariants::{fours_indices, gap_closed, sign_flip_indices};
use crate::knot::TorusKnot;
use crate::pinch::{pinch_sequence, synthesize, PinchSequence, SeedData, Sign};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Unknot,
    MoebiusBand,
    VerifiedEqualsN,
    GapNMinusOne,
    CounterexampleDescended,
    BoundsOnly,
}

impl Tag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tag::Unknot => "unknot",
            Tag::MoebiusBand => "moebius-band",
            Tag::VerifiedEqualsN => "verified-equals-n",
            Tag::GapNMinusOne => "gap-n-minus-1",
            Tag::CounterexampleDescended => "counterexample-descended",
            Tag::BoundsOnly => "bounds-only",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `T(qm+-2, q)` shape of a one-pinch knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusForm {
    pub q: BigInt,
    pub m: BigInt,
    /// true for `qm + 2`, false for `qm - 2`.
    pub plus: bool,
}

/// Everything the classifier established, regardless of which tag won.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detail {
    pub n: usize,
    pub gap: u64,
    /// OSS bound and surface bound: `gap <= gamma4 <= n`.
    pub gamma4_lower: u64,
    pub gamma4_upper: u64,
    /// Conditions of the gap = n characterization.
    pub equals_n_conditions: bool,
    /// Conditions of the gap = n-1 characterization.
    pub gap_n_minus_one_conditions: bool,
    /// Index set of `m_k = 0 (mod 4)` (odd `p` evidence).
    pub fours_indices: Vec<usize>,
    /// Index set of `eps_k eps_{k+1} = -1` (even `p` evidence).
    pub sign_flip_indices: Vec<usize>,
    pub moebius: Option<MoebiusForm>,
    /// The reduction passes through `T(4,9)`.
    pub visits_4_9: bool,
    /// Improved upper bound `n - 1` when the reduction passes through
    /// `T(4,9)`, whose Moebius band replaces the last two pinches.
    pub improved_upper: Option<u64>,
    /// Externally known exact value, recorded for `T(4,9)` itself.
    pub known_gamma4: Option<u64>,
    /// Exact value when the tag pins one down.
    pub exact_gamma4: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    pub detail: Detail,
}

/// Conditions equivalent to `gap = n`: for odd `p`, `q_1 = eps_1 (mod 4)`
/// and every `m_k = 2 (mod 4)`; for even `p`, every `eps_k = +1`.
pub fn equals_n_conditions(seq: &PinchSequence) -> bool {
    if seq.n() == 0 {
        return false;
    }
    if seq.p().is_odd() {
        let four = BigInt::from(4);
        (seq.q1().unwrap() - seq.epsilon(1).as_bigint())
            .mod_floor(&four)
            .is_zero()
            && seq
                .ms()
                .iter()
                .all(|m| m.mod_floor(&four) == BigInt::from(2))
    } else {
        seq.epsilons().iter().all(|&e| e == Sign::Plus)
    }
}

/// Conditions equivalent to `gap = n - 1`.
///
/// Even `p`: exactly one `eps_k = -1`. Odd `p` with `n >= 2`: either
/// `q_1 - eps_1 = 0 (mod 4)` and the `m_k = 0 (mod 4)` indices are exactly
/// `{n-1}` or two consecutive `{k, k+1}`, or `q_1 - eps_1 = 2 (mod 4)` and
/// that index set is exactly `{1}`. Odd `p` with `n = 1` degenerates to
/// `q_1 - eps_1 = 2 (mod 4)` (the alternating sum over the empty index set
/// already equals `n - 1 = 0` there).
pub fn gap_n_minus_one_conditions(seq: &PinchSequence) -> bool {
    let n = seq.n();
    if n == 0 {
        return false;
    }
    if seq.p().is_odd() {
        let residue = (seq.q1().unwrap() - seq.epsilon(1).as_bigint()).mod_floor(&BigInt::from(4));
        if n == 1 {
            return residue == BigInt::from(2);
        }
        let zeros = fours_indices(seq);
        if residue.is_zero() {
            zeros == [n - 1] || (zeros.len() == 2 && zeros[1] == zeros[0] + 1)
        } else {
            zeros == [1]
        }
    } else {
        seq.epsilons().iter().filter(|&&e| e == Sign::Minus).count() == 1
    }
}

fn moebius_form(seq: &PinchSequence) -> Option<MoebiusForm> {
    if seq.n() != 1 {
        return None;
    }
    // p_1 = p_0 q_1 - 2 eps_1 = q m - 2 eps_1
    Some(MoebiusForm {
        q: seq.q1().unwrap().clone(),
        m: seq.p0().clone(),
        plus: seq.epsilon(1) == Sign::Minus,
    })
}

/// Classify a torus knot. The tag is the strongest statement about its
/// nonorientable 4-genus; `detail` keeps every fact that was established.
pub fn classify(knot: &TorusKnot) -> Classification {
    let seq = pinch_sequence(knot);
    classify_for(knot, &seq)
}

pub fn classify_for(knot: &TorusKnot, seq: &PinchSequence) -> Classification {
    let n = seq.n();
    let gap_big = gap_closed(seq);
    let gap = u64::try_from(&gap_big).expect("gap is bounded by n");
    let eq_n = equals_n_conditions(seq);
    let eq_n1 = gap_n_minus_one_conditions(seq);
    // The characterizations are theorems about nontrivial knots; a mismatch
    // against the computed gap would mean one side was transcribed wrong.
    assert_eq!(
        eq_n,
        n >= 1 && gap == n as u64,
        "gap = n characterization failed on {knot}"
    );
    assert_eq!(
        eq_n1,
        n >= 1 && gap == n as u64 - 1,
        "gap = n-1 characterization failed on {knot}"
    );
    let four_nine = (BigInt::from(4), BigInt::from(9));
    let visits_4_9 = seq.knots().contains(&four_nine);
    let is_4_9 = seq.knots()[0] == four_nine;

    let mut detail = Detail {
        n,
        gap,
        gamma4_lower: gap,
        gamma4_upper: n as u64,
        equals_n_conditions: eq_n,
        gap_n_minus_one_conditions: eq_n1,
        fours_indices: fours_indices(seq),
        sign_flip_indices: if seq.p().is_even() {
            sign_flip_indices(seq)
        } else {
            Vec::new()
        },
        moebius: moebius_form(seq),
        visits_4_9,
        improved_upper: visits_4_9.then(|| n as u64 - 1),
        known_gamma4: is_4_9.then_some(1),
        exact_gamma4: None,
    };

    let tag = if n == 0 {
        detail.exact_gamma4 = Some(0);
        Tag::Unknot
    } else if n == 1 {
        detail.exact_gamma4 = Some(1);
        Tag::MoebiusBand
    } else if eq_n {
        detail.exact_gamma4 = Some(n as u64);
        Tag::VerifiedEqualsN
    } else if eq_n1 {
        Tag::GapNMinusOne
    } else if visits_4_9 {
        if is_4_9 {
            detail.exact_gamma4 = Some(1);
        }
        Tag::CounterexampleDescended
    } else {
        Tag::BoundsOnly
    };
    Classification { tag, detail }
}

/// `T(2(k+1), 2(k+1) - 1)`: gap and pinch count both equal `k`.
pub fn batson_family(k: u64) -> TorusKnot {
    let p = BigInt::from(2 * (k + 1));
    let q = BigInt::from(2 * (k + 1) - 1);
    TorusKnot::normalize(p, q).expect("consecutive integers are coprime")
}

/// The `m_k = 2` family `T(p0 + k(p0(q1-1) - 2 eps), 1 + k(q1-1))`.
///
/// Requires `q1 >= 3` odd and `p0 >= 0`; `p0 = 0` forces `eps = -1` (the
/// formula would otherwise produce a negative parameter). When `p0 >= 2` is
/// even with `eps = +1`, or `p0` is odd with `q1 = eps (mod 4)`, the member
/// is a verified knot with `gap = n = k`.
pub fn example_family(p0: &BigInt, q1: &BigInt, eps: Sign, k: u64) -> Result<TorusKnot> {
    if q1.is_even() || q1 < &BigInt::from(3) {
        return Err(Error::SeedConstraintQ1 { q1: q1.clone() });
    }
    if p0.is_negative() {
        return Err(Error::SeedConstraintP0 { p0: p0.clone() });
    }
    if p0.is_zero() && eps == Sign::Plus {
        return Err(Error::SeedConstraintB { p0: p0.clone() });
    }
    if k == 0 {
        return Err(Error::FamilyConstraint(
            "family index k must be >= 1".into(),
        ));
    }
    let k = BigInt::from(k);
    let stride = q1 - BigInt::one();
    let p = p0 + &k * (p0 * &stride - BigInt::from(2) * eps.as_bigint());
    let q = BigInt::one() + &k * stride;
    TorusKnot::normalize(p, q)
}

/// Members of the counterexample family: seeds with `p0 = 0`, `q1 = 5`,
/// `eps_1 = eps_2 = -1`, `m_1 = 2`, so the reduction passes through
/// `T(4,9)`; the remaining `ms` and `eps` entries are free. The all-default
/// choice (`m_k = 2`, `eps_k = -1`) yields `T(2n, 4n+1)`.
pub fn counterexample_family(n: usize, ms: &[BigInt], eps: &[Sign]) -> Result<TorusKnot> {
    if n < 2 {
        return Err(Error::FamilyConstraint(
            "counterexample family needs n >= 2 to reach T(4,9)".into(),
        ));
    }
    if eps.len() != n {
        return Err(Error::FamilyConstraint(format!(
            "expected {n} eps values, got {}",
            eps.len()
        )));
    }
    if eps[0] != Sign::Minus || eps[1] != Sign::Minus {
        return Err(Error::FamilyConstraint(
            "eps_1 and eps_2 must both be -1".into(),
        ));
    }
    if ms.len() != n - 1 {
        return Err(Error::SeedMsLength {
            want: n - 1,
            got: ms.len(),
        });
    }
    if ms[0] != BigInt::from(2) {
        return Err(Error::FamilyConstraint(format!(
            "m_1 must be 2 so that T(p_2,q_2) = T(4,9); got {}",
            ms[0]
        )));
    }
    let seed = SeedData {
        p0: BigInt::zero(),
        q1: BigInt::from(5),
        epsilons: eps.to_vec(),
        ms: ms.to_vec(),
    };
    let seq = synthesize(&seed)?;
    let (p, q) = seq.knot(n).clone();
    TorusKnot::normalize(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn knot(p: i64, q: i64) -> TorusKnot {
        TorusKnot::normalize(p, q).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&knot(5, 3));
        assert_eq!(c.tag, Tag::MoebiusBand);
        assert_eq!(c.detail.exact_gamma4, Some(1));
        let form = c.detail.moebius.unwrap();
        assert_eq!((form.q, form.m, form.plus), (big(3), big(1), true));

        let c = classify(&knot(6, 5));
        assert_eq!(c.tag, Tag::VerifiedEqualsN);
        assert_eq!(c.detail.exact_gamma4, Some(2));

        let c = classify(&knot(4, 9));
        assert_eq!(c.tag, Tag::CounterexampleDescended);
        assert_eq!((c.detail.gamma4_lower, c.detail.gamma4_upper), (0, 2));
        assert_eq!(c.detail.improved_upper, Some(1));
        assert_eq!(c.detail.known_gamma4, Some(1));

        let c = classify(&knot(1, 1));
        assert_eq!(c.tag, Tag::Unknot);
        assert_eq!(c.detail.exact_gamma4, Some(0));
    }

    #[test]
    fn classify_gap_n_minus_one() {
        // seed {n=2, p0=1, q1=3, eps=[-1,-1], ms=[4]} gives T(19,11) with
        // gap 1 = n - 1
        let seed = SeedData {
            p0: big(1),
            q1: big(3),
            epsilons: vec![Sign::Minus, Sign::Minus],
            ms: vec![big(4)],
        };
        let seq = synthesize(&seed).unwrap();
        assert_eq!(seq.knot(2), &(big(19), big(11)));
        let c = classify(&knot(19, 11));
        assert_eq!(c.tag, Tag::GapNMinusOne);
        assert_eq!((c.detail.gap, c.detail.n), (1, 2));
        assert_eq!(c.detail.fours_indices, vec![1]);
    }

    #[test]
    fn classify_deep_counterexample_descent() {
        let k = counterexample_family(4, &[big(2), big(4), big(2)], &[Sign::Minus; 4]).unwrap();
        let c = classify(&k);
        assert_eq!(c.tag, Tag::CounterexampleDescended);
        assert!(c.detail.visits_4_9);
        assert_eq!(c.detail.improved_upper, Some(3));
        assert_eq!(c.detail.known_gamma4, None);
    }

    #[test]
    fn batson_family_examples() {
        assert_eq!(batson_family(1), knot(4, 3));
        assert_eq!(batson_family(2), knot(6, 5));
        let k = batson_family(3);
        assert_eq!(k, knot(8, 7));
        let c = classify(&k);
        assert_eq!(c.tag, Tag::VerifiedEqualsN);
        assert_eq!(c.detail.gap, 3);
    }

    #[test]
    fn example_family_examples() {
        let k = example_family(&big(2), &big(3), Sign::Plus, 2).unwrap();
        assert_eq!(k, knot(6, 5));
        assert_eq!(classify(&k).tag, Tag::VerifiedEqualsN);

        let k = example_family(&big(1), &big(5), Sign::Plus, 1).unwrap();
        assert_eq!(k, knot(5, 3));
        // side condition p0 odd, q1 = eps (mod 4) holds, so gap = n
        assert!(classify(&k).detail.equals_n_conditions);

        assert!(matches!(
            example_family(&big(0), &big(3), Sign::Plus, 2),
            Err(Error::SeedConstraintB { .. })
        ));
        assert!(matches!(
            example_family(&big(2), &big(4), Sign::Plus, 1),
            Err(Error::SeedConstraintQ1 { .. })
        ));
    }

    #[test]
    fn counterexample_family_examples() {
        let k = counterexample_family(2, &[big(2)], &[Sign::Minus, Sign::Minus]).unwrap();
        assert_eq!(k, knot(4, 9));
        let k = counterexample_family(3, &[big(2), big(2)], &[Sign::Minus; 3]).unwrap();
        assert_eq!(k, knot(6, 13));
        for n in 2..=25usize {
            let k = counterexample_family(n, &vec![big(2); n - 1], &vec![Sign::Minus; n]).unwrap();
            assert_eq!(k, knot(2 * n as i64, 4 * n as i64 + 1));
        }
        assert!(counterexample_family(1, &[], &[Sign::Minus]).is_err());
        assert!(counterexample_family(2, &[big(4)], &[Sign::Minus, Sign::Minus]).is_err());
        assert!(counterexample_family(2, &[big(2)], &[Sign::Minus, Sign::Plus]).is_err());
    }
}
