//! Full cross-check sweep over a scan range: every closed formula against
//! its recursion, the bijection round trip, the rho-table laws, the staged
//! upsilon identities, the per-step move laws, and the Seifert oracle up to
//! a dimension cap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use pinchcalc::classify::{equals_n_conditions, gap_n_minus_one_conditions};
use pinchcalc::invariants::{
    gap_closed, signature_closed, signature_recursive, upsilon_closed, upsilon_recursive,
    verify_stage_identities,
};
use pinchcalc::oracle::oracle_signature_with_cap;
use pinchcalc::pinch::{pinch_sequence, rho_table, synthesize};
use pinchcalc::{Error, TorusKnot};

pub struct Options {
    pub pmax: u32,
    pub qmax: u32,
    /// Sweep limit for the oracle section: knots with `(p-1)(q-1)` up to
    /// this value are checked against the Seifert matrix.
    pub oracle_cap: usize,
    /// Hard guard on the matrix dimension (env override of the default).
    pub dim_cap: usize,
    /// Test hook: perturb the recursive signature to prove the harness can
    /// actually fail.
    pub inject_corruption: bool,
}

struct Section {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

pub fn run(opts: &Options) -> bool {
    let mut closed = Section::new("sigma/upsilon closed vs recursive");
    let mut gaps = Section::new("gap identities");
    let mut trips = Section::new("bijection round trips");
    let mut rho = Section::new("rho table properties");
    let mut stages = Section::new("stage identities");
    let mut steps = Section::new("per-step laws");
    let mut oracle = Section::new("oracle agreement");
    let mut oracle_skipped = 0usize;

    let knots = scan_range(opts.pmax, opts.qmax);
    let two = BigInt::from(2);
    for k in &knots {
        let seq = pinch_sequence(k);
        let n = seq.n();

        let sig_rec = signature_recursive(k)
            + if opts.inject_corruption {
                two.clone()
            } else {
                BigInt::zero()
            };
        let ups_rec = upsilon_recursive(k);
        closed.check(signature_closed(&seq) == sig_rec, || {
            format!("{k}: sigma closed != recursive")
        });
        closed.check(upsilon_closed(&seq) == ups_rec, || {
            format!("{k}: upsilon closed != recursive")
        });

        let gap = gap_closed(&seq);
        gaps.check(gap == &ups_rec - &sig_rec / &two, || {
            format!("{k}: gap != upsilon - sigma/2")
        });
        gaps.check(!gap.is_negative() && gap <= BigInt::from(n as i64), || {
            format!("{k}: gap {gap} outside [0, {n}]")
        });
        let gap_u = u64::try_from(&gap).unwrap_or(u64::MAX);
        gaps.check(equals_n_conditions(&seq) == (gap_u == n as u64), || {
            format!("{k}: gap = n condition/value mismatch")
        });
        gaps.check(
            gap_n_minus_one_conditions(&seq) == (n >= 1 && gap_u == n as u64 - 1),
            || format!("{k}: gap = n-1 condition/value mismatch"),
        );

        let seed = seq.seed();
        trips.check(synthesize(&seed).map(|s| s == seq).unwrap_or(false), || {
            format!("{k}: synthesize(seed) does not reproduce the sequence")
        });

        match rho_table(&seed, n) {
            Ok(table) => {
                let mut ok = true;
                'rows: for row_k in 1..=n + 1 {
                    for col in (row_k - 1)..=n {
                        let v = table.rho(row_k, col).unwrap();
                        let boundary_ok =
                            (col + 1 != row_k || v.is_zero()) && (col != row_k || v.is_one());
                        let parity_ok =
                            v.is_odd() == ((col as i64 - row_k as i64).rem_euclid(2) == 0);
                        let mono_ok = (col < row_k || table.rho(row_k, col - 1).unwrap() < v)
                            && (row_k < 2 || v < table.rho(row_k - 1, col).unwrap());
                        if !(boundary_ok && parity_ok && mono_ok) {
                            ok = false;
                            break 'rows;
                        }
                    }
                }
                for col in 1..=n {
                    if &two * table.r(col).unwrap() >= seq.knot(col).1 {
                        ok = false;
                    }
                }
                rho.check(ok, || format!("{k}: rho table law violated"));
            }
            Err(e) => rho.check(false, || format!("{k}: rho table failed: {e}")),
        }

        stages.check(verify_stage_identities(&seq).all_pass(), || {
            format!("{k}: staged upsilon identity failed")
        });

        for step in seq.steps() {
            let (p, q) = &step.from;
            let (r, s) = &step.to;
            let law_a = r * q - s * p == &two * step.epsilon.as_bigint();
            let prod = (p - &two * &step.t) * (q - &two * &step.h);
            let law_b = !prod.is_negative() && (prod.is_zero() == (p == &two));
            steps.check(law_a && law_b, || {
                format!("{k}: step law violated at T({p},{q})")
            });
        }

        let dim_opt = (usize::try_from(k.p()).ok())
            .zip(usize::try_from(k.q()).ok())
            .map(|(p, q)| (p - 1) * (q - 1));
        if let Some(dim) = dim_opt {
            if dim <= opts.oracle_cap {
                match oracle_signature_with_cap(k, opts.oracle_cap.min(opts.dim_cap)) {
                    Ok(sig) => oracle.check(sig == sig_rec, || {
                        format!("{k}: oracle signature {sig} != recursive {sig_rec}")
                    }),
                    Err(Error::OracleCap { .. }) => oracle_skipped += 1,
                    Err(e) => oracle.check(false, || format!("{k}: oracle failed: {e}")),
                }
            }
        }
    }

    let sections = [&closed, &gaps, &trips, &rho, &stages, &steps, &oracle];
    let mut total = 0usize;
    let mut failed = 0usize;
    println!(
        "selftest over {} knots (p <= {}, q <= {}):",
        knots.len(),
        opts.pmax,
        opts.qmax
    );
    for s in sections {
        let extra = if s.name == "oracle agreement" {
            format!(
                " (dim <= {}, {} skipped by dim cap)",
                opts.oracle_cap, oracle_skipped
            )
        } else {
            String::new()
        };
        println!(
            "  {:<34} {:>7} checks, {} failures{extra}",
            s.name,
            s.checked,
            s.failures.len()
        );
        total += s.checked;
        failed += s.failures.len();
    }
    println!("TOTAL: {total} checks, {failed} failures");
    if failed > 0 {
        println!("first offenders:");
        for line in sections.iter().flat_map(|s| s.failures.iter()).take(10) {
            println!("  {line}");
        }
    }
    failed == 0
}

pub fn scan_range(pmax: u32, qmax: u32) -> Vec<TorusKnot> {
    let mut out = Vec::new();
    for p in 2..=pmax as i64 {
        for q in (3..=qmax as i64).step_by(2) {
            if p % 2 == 1 && p < q {
                continue;
            }
            if BigInt::from(p).gcd(&BigInt::from(q)).is_one() {
                out.push(TorusKnot::normalize(p, q).expect("coprime pair"));
            }
        }
    }
    out
}
