//! Signature, upsilon, and the gap `upsilon - sigma/2`, each by a recursion
//! and by a closed formula over the pinch data.
//!
//! Recursions, on coprime pairs with mirror handling at the end:
//!
//! ```text
//! sigma(T(a,b)) = sigma(T(b-2a, a)) - (a^2 - 1)   2a < b,      a odd
//!               = sigma(T(b-2a, a)) - a^2         2a < b,      a even
//!               = -sigma(T(2a-b, a)) - (a^2 - 1)  a <= b < 2a, a odd
//!               = -sigma(T(2a-b, a)) - (a^2 - 2)  a <= b < 2a, a even
//! sigma(T(2,b)) = -(b-1),  sigma(T(1,b)) = 0
//!
//! upsilon(T(a,b)) = upsilon(T(a, b-a)) - a^2/4        a even
//!                 = upsilon(T(a, b-a)) - (a^2-1)/4    a odd
//! ```
//!
//! Both loops below collapse runs of steps sharing the same pivot `a`, so a
//! single evaluation costs O(log(a+b)) big-integer rounds. Quarter-integer
//! intermediates are carried as exact integers scaled by 4 and divided out
//! under an exactness assertion at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::knot::TorusKnot;
use crate::pinch::{pinch_sequence, rho_table, PinchSequence, Sign};

/// Signature of the input knot (negated when the knot is mirrored), by the
/// four-case recursion above.
pub fn signature_recursive(knot: &TorusKnot) -> BigInt {
    let sigma = sigma_pair(knot.p(), knot.q());
    if knot.mirrored() {
        -sigma
    } else {
        sigma
    }
}

pub(crate) fn sigma_pair(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = sorted(a.clone(), b.clone());
    let mut flip = false;
    let mut acc = BigInt::zero();
    let two = BigInt::from(2);
    loop {
        if a <= BigInt::one() {
            return acc;
        }
        let signed = |v: BigInt, flip: bool| if flip { -v } else { v };
        if a == two {
            return acc + signed(BigInt::one() - &b, flip);
        }
        let two_a = &two * &a;
        if b > two_a {
            // batch of "2a < b" steps, each costing a^2 (a even) or a^2 - 1
            let r = b.mod_floor(&two_a);
            debug_assert!(!r.is_zero());
            let k = (&b - &r) / &two_a;
            let cost = if a.is_odd() { &a * &a - 1 } else { &a * &a };
            acc -= signed(k * cost, flip);
            (a, b) = sorted(r, a);
        } else {
            // a <= b < 2a
            let cost = if a.is_odd() { &a * &a - 1 } else { &a * &a - 2 };
            acc -= signed(cost, flip);
            flip = !flip;
            b = two_a - b;
            std::mem::swap(&mut a, &mut b);
        }
    }
}

/// Upsilon of the input knot (negated when mirrored), by the recursion above.
pub fn upsilon_recursive(knot: &TorusKnot) -> BigInt {
    let ups = upsilon_pair(knot.p(), knot.q());
    if knot.mirrored() {
        -ups
    } else {
        ups
    }
}

pub(crate) fn upsilon_pair(a: &BigInt, b: &BigInt) -> BigInt {
    let quartered = upsilon4_pair(a, b);
    let (v, rem) = quartered.div_rem(&BigInt::from(4));
    assert!(
        rem.is_zero(),
        "upsilon recursion produced a non-integer for ({a},{b})"
    );
    v
}

/// `4 * upsilon(T(a,b))` on an unordered coprime pair.
fn upsilon4_pair(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = sorted(a.clone(), b.clone());
    let mut acc = BigInt::zero();
    while a > BigInt::one() {
        let r = b.mod_floor(&a);
        debug_assert!(!r.is_zero());
        let k = (&b - &r) / &a;
        let cost = if a.is_even() { &a * &a } else { &a * &a - 1 };
        acc -= k * cost;
        (a, b) = (r, a);
    }
    acc
}

fn sorted(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Indices `k` in `1..=n-1` with `m_k = 0 (mod 4)`; drives the odd-`p`
/// closed formulas.
pub fn fours_indices(seq: &PinchSequence) -> Vec<usize> {
    seq.ms()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.mod_floor(&BigInt::from(4)).is_zero())
        .map(|(i, _)| i + 1)
        .collect()
}

/// Indices `k` in `2..=n-1` with `eps_k * eps_{k+1} = -1`; drives the
/// even-`p` closed formulas.
pub fn sign_flip_indices(seq: &PinchSequence) -> Vec<usize> {
    let n = seq.n();
    (2..n)
        .filter(|&k| seq.epsilon(k) * seq.epsilon(k + 1) == Sign::Minus)
        .collect()
}

/// `sum (-1)^(i-1) (n - k_i)` over an increasing index list; 0 when empty.
fn alternating_sum(indices: &[usize], n: usize) -> i64 {
    indices
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let term = (n - k) as i64;
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn base_half(seq: &PinchSequence) -> BigInt {
    let v = seq.p0() - seq.p() * seq.q();
    debug_assert!(v.is_even());
    v / BigInt::from(2)
}

/// Closed-form signature of the sequence's (positive) top knot.
///
/// With `S` the alternating sum over the relevant index set:
/// odd `p` gives `(p0 - pq)/2 -+ [n - 2S]` split on `q1 - eps_1 (mod 4)`;
/// even `p` gives `-eps_1 + (p0-pq)/2` for `n = 1`, and otherwise
/// `(p0-pq)/2 - eps_1 [n - 2S]` or `-2 eps_1 + (p0-pq)/2 + eps_1 [n - 2S]`
/// split on `eps_1 eps_2`.
pub fn signature_closed(seq: &PinchSequence) -> BigInt {
    let n = seq.n();
    if n == 0 {
        return BigInt::zero();
    }
    let base = base_half(seq);
    let e1 = seq.epsilon(1);
    if seq.p().is_odd() {
        let s = alternating_sum(&fours_indices(seq), n);
        let bracket = BigInt::from(n as i64 - 2 * s);
        if (seq.q1().unwrap() - e1.as_bigint())
            .mod_floor(&BigInt::from(4))
            .is_zero()
        {
            base - bracket
        } else {
            base + bracket
        }
    } else if n == 1 {
        base - e1.as_bigint()
    } else {
        let s = alternating_sum(&sign_flip_indices(seq), n);
        let bracket = BigInt::from(n as i64 - 2 * s);
        if e1 == seq.epsilon(2) {
            base - e1.as_bigint() * bracket
        } else {
            base + e1.as_bigint() * (bracket - 2)
        }
    }
}

/// Closed-form upsilon `n/2 + (p0 - pq)/4` of the sequence's top knot,
/// evaluated exactly. Panics if the value is not an integer or the parity
/// relation `n = (p0 - pq)/2 (mod 2)` fails; both are proven facts, so a
/// failure means corrupt sequence data.
pub fn upsilon_closed(seq: &PinchSequence) -> BigInt {
    let half = base_half(seq);
    let num = BigInt::from(2 * seq.n() as i64) + seq.p0() - seq.p() * seq.q();
    let (v, rem) = num.div_rem(&BigInt::from(4));
    assert!(
        rem.is_zero(),
        "upsilon closed form is not an integer for {seq:?}"
    );
    assert!(
        (BigInt::from(seq.n() as i64) - half).is_even(),
        "parity relation n = (p0 - pq)/2 (mod 2) fails"
    );
    v
}

/// Closed-form gap `upsilon - sigma/2` of the sequence's top knot, always a
/// nonnegative integer bounded by `n`.
pub fn gap_closed(seq: &PinchSequence) -> BigInt {
    let n = seq.n();
    if n == 0 {
        return BigInt::zero();
    }
    let value = if seq.p().is_odd() {
        let s = alternating_sum(&fours_indices(seq), n);
        if (seq.q1().unwrap() - seq.epsilon(1).as_bigint())
            .mod_floor(&BigInt::from(4))
            .is_zero()
        {
            n as i64 - s
        } else {
            s
        }
    } else if n == 1 {
        match seq.epsilon(1) {
            Sign::Plus => 1,
            Sign::Minus => 0,
        }
    } else {
        let s = alternating_sum(&sign_flip_indices(seq), n);
        match (seq.epsilon(1), seq.epsilon(2)) {
            (Sign::Plus, Sign::Plus) => n as i64 - s,
            (Sign::Plus, Sign::Minus) => 1 + s,
            (Sign::Minus, Sign::Plus) => n as i64 - 1 - s,
            (Sign::Minus, Sign::Minus) => s,
        }
    };
    debug_assert!((0..=n as i64).contains(&value));
    BigInt::from(value)
}

/// All invariants of one torus knot.
///
/// `sigma` and `upsilon` are the values of the positive (unmirrored) normal
/// form, so that `gap = upsilon - sigma/2 >= 0` holds as stated; use
/// [`InvariantReport::sigma_signed`] and [`InvariantReport::upsilon_signed`]
/// for the input knot itself. The gamma4-related fields are mirror
/// invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub knot: TorusKnot,
    /// Pinch-move count; the conjectured nonorientable 4-genus.
    pub n: usize,
    pub sigma: BigInt,
    pub upsilon: BigInt,
    /// `upsilon - sigma/2`, nonnegative.
    pub gap: u64,
    /// Lower bound for the nonorientable 4-genus: `|gap| = gap`.
    pub oss_lower: u64,
    pub gamma4_predicted: u64,
    pub gamma4_lower: u64,
    pub gamma4_upper: u64,
}

impl InvariantReport {
    /// Signature of the input knot, mirror applied.
    pub fn sigma_signed(&self) -> BigInt {
        if self.knot.mirrored() {
            -self.sigma.clone()
        } else {
            self.sigma.clone()
        }
    }

    /// Upsilon of the input knot, mirror applied.
    pub fn upsilon_signed(&self) -> BigInt {
        if self.knot.mirrored() {
            -self.upsilon.clone()
        } else {
            self.upsilon.clone()
        }
    }
}

/// Assemble the invariant report of a knot from the closed formulas.
///
/// Debug builds additionally recompute sigma and upsilon by their recursions
/// and the gap from all three routes, asserting exact agreement.
pub fn report(knot: &TorusKnot) -> InvariantReport {
    let seq = pinch_sequence(knot);
    report_for(knot, &seq)
}

pub fn report_for(knot: &TorusKnot, seq: &PinchSequence) -> InvariantReport {
    let n = seq.n();
    let sigma = signature_closed(seq);
    let upsilon = upsilon_closed(seq);
    let gap_big = gap_closed(seq);
    debug_assert_eq!(&upsilon - &sigma / BigInt::from(2), gap_big);
    #[cfg(debug_assertions)]
    {
        assert_eq!(sigma, sigma_pair(knot.p(), knot.q()));
        assert_eq!(upsilon, upsilon_pair(knot.p(), knot.q()));
    }
    let gap = u64::try_from(&gap_big).expect("gap fits in u64: it is bounded by n");
    InvariantReport {
        knot: knot.clone(),
        n,
        sigma,
        upsilon,
        gap,
        oss_lower: gap,
        gamma4_predicted: n as u64,
        gamma4_lower: gap,
        gamma4_upper: n as u64,
    }
}

/// One comparison of a staged closed value against the upsilon recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub k: usize,
    /// The knot parameters the check was evaluated on.
    pub knot: (BigInt, BigInt),
    pub closed_times4: BigInt,
    pub recursive_times4: BigInt,
}

impl StageCheck {
    pub fn pass(&self) -> bool {
        self.closed_times4 == self.recursive_times4
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageIdentityReport {
    pub checks: Vec<StageCheck>,
}

impl StageIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(StageCheck::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StageCheck> {
        self.checks.iter().filter(|c| !c.pass())
    }
}

/// Check the staged upsilon identities on every level of the rho table:
/// for each `k` in `1..=n`, with `x = rho_{k,n}` and `y = rho_{k+1,n}`,
///
/// ```text
/// upsilon(T(x+y, x-y)) = (n-k)/2 + (y^2 - x^2 + 1)/4
/// upsilon(T(x-y, 2y))  = (n-k + y^2 - xy)/2
/// upsilon(T(x+y, 2y))  = (n-k - y^2 - xy)/2
/// ```
///
/// each compared against the upsilon recursion, exactly, scaled by 4.
pub fn verify_stage_identities(seq: &PinchSequence) -> StageIdentityReport {
    let mut out = StageIdentityReport::default();
    let n = seq.n();
    if n == 0 {
        return out;
    }
    let table = rho_table(&seq.seed(), n).expect("sequence data is self-consistent");
    for k in 1..=n {
        let x = table.rho(k, n).unwrap().clone();
        let y = table.rho(k + 1, n).unwrap().clone();
        let nk = BigInt::from((n - k) as i64);
        let two_y = BigInt::from(2) * &y;
        let cases = [
            (
                &x + &y,
                &x - &y,
                BigInt::from(2) * &nk + (&y * &y - &x * &x + 1),
            ),
            (
                &x - &y,
                two_y.clone(),
                BigInt::from(2) * (&nk + &y * &y - &x * &y),
            ),
            (&x + &y, two_y, BigInt::from(2) * (&nk - &y * &y - &x * &y)),
        ];
        for (a, b, closed4) in cases {
            let recursive4 = BigInt::from(4) * upsilon_pair(&a, &b);
            out.checks.push(StageCheck {
                k,
                knot: (a, b),
                closed_times4: closed4,
                recursive_times4: recursive4,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::TorusKnot;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn knot(p: i64, q: i64) -> TorusKnot {
        TorusKnot::normalize(p, q).unwrap()
    }

    fn seq(p: i64, q: i64) -> PinchSequence {
        pinch_sequence(&knot(p, q))
    }

    #[test]
    fn signature_recursive_examples() {
        assert_eq!(signature_recursive(&knot(2, 7)), big(-6));
        assert_eq!(signature_recursive(&knot(5, 3)), big(-8));
        assert_eq!(signature_recursive(&knot(3, 5)), big(-8));
        for b in [1, 3, 9, 55] {
            assert_eq!(signature_recursive(&knot(1, b)), big(0));
        }
        assert_eq!(signature_recursive(&knot(6, 5)), big(-16));
        assert_eq!(
            signature_recursive(&TorusKnot::normalize(-6, 5).unwrap()),
            big(16)
        );
    }

    #[test]
    fn signature_closed_examples() {
        assert_eq!(signature_closed(&seq(5, 3)), big(-8));
        assert_eq!(signature_closed(&seq(4, 9)), big(-16));
        assert_eq!(signature_closed(&seq(6, 5)), big(-16));
        assert_eq!(signature_closed(&seq(2, 1)), big(0));
    }

    #[test]
    fn upsilon_recursive_examples() {
        assert_eq!(upsilon_recursive(&knot(2, 3)), big(-1));
        assert_eq!(upsilon_recursive(&knot(3, 4)), big(-2));
        assert_eq!(upsilon_recursive(&knot(1, 1)), big(0));
        assert_eq!(upsilon_recursive(&knot(0, 1)), big(0));
        assert_eq!(
            upsilon_recursive(&TorusKnot::normalize(2, -3).unwrap()),
            big(1)
        );
    }

    #[test]
    fn upsilon_closed_examples() {
        assert_eq!(upsilon_closed(&seq(5, 3)), big(-3));
        assert_eq!(upsilon_closed(&seq(6, 5)), big(-6));
        assert_eq!(upsilon_closed(&seq(4, 9)), big(-8));
    }

    #[test]
    fn gap_closed_examples() {
        assert_eq!(gap_closed(&seq(5, 3)), big(1));
        assert_eq!(gap_closed(&seq(4, 9)), big(0));
        assert_eq!(gap_closed(&seq(8, 7)), big(3));
    }

    #[test]
    fn report_examples() {
        let r = report(&knot(4, 9));
        assert_eq!(r.sigma, big(-16));
        assert_eq!(r.upsilon, big(-8));
        assert_eq!((r.gap, r.oss_lower), (0, 0));
        assert_eq!(
            (r.gamma4_predicted, r.gamma4_lower, r.gamma4_upper),
            (2, 0, 2)
        );

        let r = report(&knot(6, 5));
        assert_eq!(r.gap, 2);
        assert_eq!((r.gamma4_lower, r.gamma4_upper), (2, 2));

        let r = report(&knot(1, 1));
        assert_eq!((r.n, r.gap), (0, 0));
        assert_eq!((r.sigma, r.upsilon), (big(0), big(0)));
    }

    #[test]
    fn report_mirror_signs() {
        let r = report(&TorusKnot::normalize(-4, 9).unwrap());
        assert_eq!(r.sigma, big(-16));
        assert_eq!(r.sigma_signed(), big(16));
        assert_eq!(r.upsilon_signed(), big(8));
        assert_eq!(r.gap, 0);
    }

    #[test]
    fn stage_identity_examples() {
        // T(8,7): rho pair (3, 2) gives T(5,1), an unknot, with closed value
        // 2*(3-1) + (4 - 9 + 1) = 0 on the times-4 scale.
        let rep = verify_stage_identities(&seq(8, 7));
        assert!(rep.all_pass());
        let t51 = rep
            .checks
            .iter()
            .find(|c| c.knot == (big(5), big(1)))
            .unwrap();
        assert_eq!((t51.k, &t51.closed_times4), (1, &big(0)));
        // k = n check lands on T(1,1) with closed value 0
        let last = rep
            .checks
            .iter()
            .find(|c| c.k == 3 && c.knot == (big(1), big(1)))
            .unwrap();
        assert_eq!(last.closed_times4, big(0));

        let rep = verify_stage_identities(&seq(4, 9));
        assert!(rep.all_pass());
        // k = 1: rho pair (2, 1) gives T(3,1) with upsilon 0
        let first = rep
            .checks
            .iter()
            .find(|c| c.k == 1 && c.knot == (big(3), big(1)))
            .unwrap();
        assert_eq!(first.closed_times4, big(0));
        assert_eq!(first.recursive_times4, big(0));
    }

    #[test]
    fn closed_equals_recursive_spot_checks() {
        for (p, q) in [(19, 11), (24, 17), (14, 5), (48, 35), (25, 9), (50, 101)] {
            let k = knot(p, q);
            let s = pinch_sequence(&k);
            assert_eq!(
                signature_closed(&s),
                signature_recursive(&k),
                "sigma T({p},{q})"
            );
            assert_eq!(
                upsilon_closed(&s),
                upsilon_recursive(&k),
                "upsilon T({p},{q})"
            );
            let gap = upsilon_recursive(&k) - signature_recursive(&k) / big(2);
            assert_eq!(gap_closed(&s), gap, "gap T({p},{q})");
        }
    }
}
