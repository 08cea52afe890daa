//! The recursively-factorable criterion, descent to sieving sequences, and
//! interval certificates.
//!
//! A polynomial is *recursively factorable* when every nontrivial
//! presentation `|F(n)| = p * q` (both factors >= 2) admits a witness: some
//! `r` congruent to `n` modulo `p` or modulo `q` with `|F(r)| < |F(n)|`.
//! Values with `|F(n)|` equal to 1 or prime satisfy the criterion
//! vacuously; `F(n) = 0` fails it automatically.
//!
//! [`criterion_check`] decides the criterion at a single point by scanning
//! the divisor pairs of `|F(n)|` and searching each residue class for its
//! minimal value. For quadratics the class minimum sits next to the vertex
//! or the real roots, so a constant-size window is complete; the window is
//! exact, not heuristic, and the completeness sweeps in the test suite
//! lean on that.
//!
//! [`verify_rf`] checks the criterion across an interval: either a caller
//! supplied range, or the *lemma interval* — a finite set outside of which
//! the criterion is implied by growth. The growth cutoff `n_hat` is the
//! last `n >= 0` where either `(2an + b)^2 <= a^2 |F(n)|` (the divisor
//! window is wider than the value's square root) or, for positive
//! discriminant, `4a F(n) <= b^2 - 4ac` (inner points may still exceed
//! `|F(n)|`). Both conditions are evaluated in exact integers. For
//! `a = 4`, where the square-root test degenerates to a constant, the
//! shapes `b in {0, 4}` close instead through the sharper factor-size
//! argument with cutoff `|c|`; other `a = 4` shapes (and `a > 4`) have no
//! implemented bound and error out.
//!
//! [`factor_to_sequence`] runs the criterion backwards: starting from a
//! divisor `p` of `|F(n)|` it descends through strictly smaller values,
//! then rewinds the division chain into a sieving sequence whose trace
//! lands on `n` with `|f_m| = p`. A failed search surfaces the exact point
//! where the criterion broke.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::bigarith::{is_square, isqrt, trial_divisors, Int};
use crate::error::Error;
use crate::poly::{ceil_div, floor_div, Polynomial};
use crate::sieve::{self, SieveTrace};

/// Which factor of the pair supplied the witnessing modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessModulus {
    /// The smaller factor `p`.
    FactorP,
    /// The cofactor `q = |F(n)| / p`.
    FactorQ,
}

impl WitnessModulus {
    pub fn label(self) -> &'static str {
        match self {
            WitnessModulus::FactorP => "p",
            WitnessModulus::FactorQ => "q",
        }
    }
}

/// A witness for one presentation `|F(n)| = p * q`: a point `r = n (mod
/// modulus)` with `|F(r)| < |F(n)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionWitness {
    pub n: Int,
    pub p: Int,
    pub q: Int,
    pub r: Int,
    /// `F(r)` (signed; its absolute value is what shrank).
    pub value_at_r: Int,
    pub modulus: WitnessModulus,
}

/// A presentation with no witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingPair {
    pub p: Int,
    pub q: Int,
}

/// The decision of the criterion at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionOutcome {
    /// Every nontrivial pair has a witness (vacuously true for unit or
    /// prime `|F(n)|`).
    Satisfied { n: Int, value: Int, witnesses: Vec<CriterionWitness> },
    /// `F(n) = 0`: automatic failure.
    ZeroValue { n: Int },
    /// At least one pair has no witness.
    MissingWitness {
        n: Int,
        value: Int,
        missing: Vec<MissingPair>,
        witnesses: Vec<CriterionWitness>,
    },
}

impl CriterionOutcome {
    pub fn n(&self) -> &Int {
        match self {
            CriterionOutcome::Satisfied { n, .. }
            | CriterionOutcome::ZeroValue { n }
            | CriterionOutcome::MissingWitness { n, .. } => n,
        }
    }

    pub fn is_satisfied(&self) -> bool {
        matches!(self, CriterionOutcome::Satisfied { .. })
    }
}

/// Residue-class candidates `r = n (mod modulus)` that can carry the class
/// minimum of `|F|`.
///
/// Quadratics anchor at the vertex and (for positive discriminant) both
/// real roots; degree one anchors at the root. Degrees >= 3 fall back to a
/// complete coarse window `|r| <= (sum |a_i| + |F(n)|) / |a_d| + 1`
/// outside of which `|F(r)| > |F(n)|` always. Constant (and zero)
/// polynomials admit no witness at all.
fn witness_candidates(f: &Polynomial, n: &Int, modulus: &Int) -> Vec<Int> {
    debug_assert!(modulus.is_positive());
    let mut anchors: Vec<Int> = Vec::new();
    match f.degree() {
        Some(2) => {
            let (a, b, _) = f.quad_coeffs().expect("degree checked");
            let two_a = Int::from(2) * a;
            anchors.push(floor_div(&-b, &two_a));
            let d = f.quad_discriminant().expect("degree checked");
            if d.is_positive() {
                let s = isqrt(&d).expect("positive");
                anchors.push(floor_div(&(-b - &s), &two_a));
                anchors.push(floor_div(&(-b + &s), &two_a));
            }
        }
        Some(1) => {
            anchors.push(floor_div(&-&f.coeff(0), &f.coeff(1)));
        }
        Some(d) if d >= 3 => {
            let lead = f.leading().expect("degree checked").abs();
            let rest: Int = f.coeffs()[..d].iter().map(Signed::abs).sum();
            let radius = (rest + f.eval(n).abs()) / lead + 1;
            let k_lo = ceil_div(&(-&radius - n), modulus) - 1;
            let k_hi = floor_div(&(&radius - n), modulus) + 1;
            let mut out = Vec::new();
            let mut k = k_lo;
            while k <= k_hi {
                out.push(n + &k * modulus);
                k += 1;
            }
            return out;
        }
        _ => return Vec::new(),
    }
    let mut out = Vec::new();
    for anchor in anchors {
        let k = floor_div(&(&anchor - n), modulus);
        for t in -2..=3 {
            out.push(n + (&k + Int::from(t)) * modulus);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Merit order for witnesses: smallest `|F(r)|`, then smallest `|r|`, then
/// smallest `r`, then modulus `p` before `q`. Total, so the chosen witness
/// is deterministic.
type Merit = (Int, Int, Int, WitnessModulus);

fn scan_class(
    f: &Polynomial,
    around: &Int,
    modulus: &Int,
    strict_bound: &Int,
    tag: WitnessModulus,
    best: &mut Option<Merit>,
) {
    for r in witness_candidates(f, around, modulus) {
        let va = f.eval(&r).abs();
        if &va >= strict_bound {
            continue;
        }
        let merit = (va, r.abs(), r, tag);
        if best.as_ref().map_or(true, |b| merit < *b) {
            *best = Some(merit);
        }
    }
}

/// Best witness for the presentation `|F(n)| = p * q`, searching both
/// residue classes.
fn best_witness(f: &Polynomial, n: &Int, p: &Int, q: &Int) -> Option<CriterionWitness> {
    let bound = f.eval(n).abs();
    let mut best: Option<Merit> = None;
    scan_class(f, n, p, &bound, WitnessModulus::FactorP, &mut best);
    scan_class(f, n, q, &bound, WitnessModulus::FactorQ, &mut best);
    best.map(|(_, _, r, modulus)| CriterionWitness {
        n: n.clone(),
        p: p.clone(),
        q: q.clone(),
        r: r.clone(),
        value_at_r: f.eval(&r),
        modulus,
    })
}

/// Decides the recursively-factorable criterion at `n`.
///
/// Walks every nontrivial presentation `|F(n)| = p * q` with `2 <= p <=
/// q` in ascending `p` and reports the witnesses found (and, on failure,
/// the pairs that have none).
pub fn criterion_check(f: &Polynomial, n: &Int) -> CriterionOutcome {
    let value = f.eval(n);
    if value.is_zero() {
        return CriterionOutcome::ZeroValue { n: n.clone() };
    }
    let v = value.abs();
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for d in trial_divisors(&v).expect("nonzero value") {
        if d < Int::from(2) {
            continue;
        }
        if &d * &d > v {
            break;
        }
        let q = &v / &d;
        match best_witness(f, n, &d, &q) {
            Some(w) => witnesses.push(w),
            None => missing.push(MissingPair { p: d, q }),
        }
    }
    if missing.is_empty() {
        CriterionOutcome::Satisfied { n: n.clone(), value, witnesses }
    } else {
        CriterionOutcome::MissingWitness { n: n.clone(), value, missing, witnesses }
    }
}

/// How [`verify_rf`] chooses its interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Derive the growth cutoff `n_hat` and check the finite set it
    /// leaves: the uncovered window unioned with the base interval
    /// `[-|c|, |c|]`, widened by a safety margin of 2.
    Lemma,
    /// Check `[lo, hi]` exhaustively, nothing more.
    Range { lo: Int, hi: Int },
}

impl VerifyMode {
    pub fn label(&self) -> &'static str {
        match self {
            VerifyMode::Lemma => "lemma",
            VerifyMode::Range { .. } => "range",
        }
    }
}

/// The interval arithmetic behind a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyPlan {
    /// Closed interval actually checked.
    pub checked: (Int, Int),
    /// Lemma mode: the growth cutoff.
    pub n_hat: Option<Int>,
    /// Lemma mode: the uncovered window `[-n_hat - ceil(b/a), n_hat]`.
    pub i_hat: Option<(Int, Int)>,
    /// Lemma mode: the base interval `[-|c|, |c|]`.
    pub base: Option<(Int, Int)>,
}

/// Computes the interval a verification run must check.
///
/// Lemma mode requires the growth condition to close: it rejects
/// perfect-square discriminants (`NotIrreducible`) and shapes with no
/// implemented cutoff (`NoClosureBound`, see the module docs).
pub fn plan_verification(f: &Polynomial, mode: &VerifyMode) -> Result<VerifyPlan, Error> {
    f.quad_coeffs()?;
    match mode {
        VerifyMode::Range { lo, hi } => {
            if lo > hi {
                return Err(Error::EmptyRange);
            }
            Ok(VerifyPlan { checked: (lo.clone(), hi.clone()), n_hat: None, i_hat: None, base: None })
        }
        VerifyMode::Lemma => lemma_plan(f),
    }
}

fn lemma_plan(f: &Polynomial) -> Result<VerifyPlan, Error> {
    let (a0, b0, c0) = f.quad_coeffs().expect("checked by caller");
    // The criterion only sees |F|, so normalize the leading sign.
    let (a, b, c) = if a0.is_negative() {
        (-a0, -b0, -c0)
    } else {
        (a0.clone(), b0.clone(), c0.clone())
    };
    let d = &b * &b - Int::from(4) * &a * &c;
    if !d.is_negative() && is_square(&d) {
        return Err(Error::NotIrreducible);
    }

    let n_hat: Int;
    if a > Int::from(4) {
        return Err(Error::NoClosureBound);
    } else if a == Int::from(4) {
        // (2an + b)^2 - a^2 F(n) is constant for a = 4; the closure
        // argument instead bounds the factors directly (p < 2n for
        // n > |c|), which works for the shapes b = 0 and b = a.
        if !(b.is_zero() || b == Int::from(4)) {
            return Err(Error::NoClosureBound);
        }
        n_hat = c.abs();
    } else {
        // Last n >= 0 where the exact growth conditions fail. Both
        // conditions are eventually monotone once 2an + b > 0, so the
        // first success past the vertex is permanent.
        let mut last_fail = Int::zero();
        let mut n = Int::zero();
        loop {
            let val = (&a * &n + &b) * &n + &c;
            let w = Int::from(2) * &a * &n + &b;
            let window_ok = &w * &w > &a * &a * val.abs();
            let coercive_ok =
                d.is_negative() || (val.is_positive() && Int::from(4) * &a * &val > d);
            if window_ok && coercive_ok {
                if w.is_positive() {
                    break;
                }
            } else {
                last_fail = n.clone();
            }
            n += 1;
            if n > Int::from(10_000_000) {
                return Err(Error::NoClosureBound);
            }
        }
        n_hat = last_fail;
    }

    let i_lo = -&n_hat - ceil_div(&b, &a);
    let i_hi = n_hat.clone();
    let cabs = c.abs();
    let checked = (
        i_lo.clone().min(-&cabs) - 2,
        i_hi.clone().max(cabs.clone()) + 2,
    );
    Ok(VerifyPlan {
        checked,
        n_hat: Some(n_hat),
        i_hat: Some((i_lo, i_hi)),
        base: Some((-&cabs, cabs)),
    })
}

/// One certificate row: the value at `n` and the witnesses for each of its
/// nontrivial presentations (empty when there are none to witness).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub n: Int,
    pub value: Int,
    pub witnesses: Vec<CriterionWitness>,
}

/// A successful interval verification: every `n` in `plan.checked`
/// satisfies the criterion, with the witnesses recorded per presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentCertificate {
    pub poly: Polynomial,
    pub mode: VerifyMode,
    pub plan: VerifyPlan,
    /// Sorted by `n`, one entry per checked point.
    pub entries: Vec<CertEntry>,
}

impl DescentCertificate {
    /// Total number of recorded witnesses.
    pub fn witness_count(&self) -> usize {
        self.entries.iter().map(|e| e.witnesses.len()).sum()
    }

    /// Canonical line-oriented text: versioned header, then one line per
    /// value with no witnesses ("ok") or one line per witnessed pair,
    /// sorted by `n` then `p`. Stable across runs, so certificate files
    /// diff cleanly.
    pub fn canonical_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "pvsieve-certificate v1");
        let _ = writeln!(s, "poly: {}", self.poly.coeff_string());
        let _ = writeln!(s, "mode: {}", self.mode.label());
        let _ = writeln!(s, "checked: {} {}", self.plan.checked.0, self.plan.checked.1);
        if let Some(n_hat) = &self.plan.n_hat {
            let _ = writeln!(s, "n-hat: {n_hat}");
        }
        if let Some((lo, hi)) = &self.plan.i_hat {
            let _ = writeln!(s, "i-hat: {lo} {hi}");
        }
        if let Some((lo, hi)) = &self.plan.base {
            let _ = writeln!(s, "base: {lo} {hi}");
        }
        let _ = writeln!(s, "values: {}", self.entries.len());
        let _ = writeln!(s, "witnesses: {}", self.witness_count());
        for e in &self.entries {
            if e.witnesses.is_empty() {
                let _ = writeln!(s, "n={} F={} ok", e.n, e.value);
            } else {
                let mut ws = e.witnesses.clone();
                ws.sort_by(|x, y| x.p.cmp(&y.p));
                for w in ws {
                    let _ = writeln!(
                        s,
                        "n={} F={} pair=({},{}) r={} Fr={} mod={}",
                        e.n,
                        e.value,
                        w.p,
                        w.q,
                        w.r,
                        w.value_at_r,
                        w.modulus.label()
                    );
                }
            }
        }
        let _ = writeln!(s, "end");
        s
    }
}

/// Result of an interval verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Certified(DescentCertificate),
    /// The first failing point (by ascending `n`) and the plan that found
    /// it.
    Counterexample { failure: CriterionOutcome, plan: VerifyPlan },
}

/// Turns per-point outcomes into a certificate (or the first
/// counterexample). Outcomes may arrive in any order — parallel callers
/// shard the range — but must cover `plan.checked` exactly.
pub fn assemble_certificate(
    f: &Polynomial,
    mode: &VerifyMode,
    plan: VerifyPlan,
    mut outcomes: Vec<CriterionOutcome>,
) -> VerifyOutcome {
    outcomes.sort_by(|x, y| x.n().cmp(y.n()));
    let width = (&plan.checked.1 - &plan.checked.0) + 1;
    assert_eq!(
        Int::from(outcomes.len()),
        width,
        "internal defect: outcome count does not cover the checked interval"
    );
    if let Some(bad) = outcomes.iter().find(|o| !o.is_satisfied()) {
        return VerifyOutcome::Counterexample { failure: bad.clone(), plan };
    }
    let entries = outcomes
        .into_iter()
        .map(|o| match o {
            CriterionOutcome::Satisfied { n, value, witnesses } => {
                CertEntry { n, value, witnesses }
            }
            _ => unreachable!("filtered above"),
        })
        .collect();
    VerifyOutcome::Certified(DescentCertificate {
        poly: f.clone(),
        mode: mode.clone(),
        plan,
        entries,
    })
}

/// Verifies the criterion across an interval chosen by `mode`; see
/// [`plan_verification`] for how lemma mode closes the argument.
pub fn verify_rf(f: &Polynomial, mode: VerifyMode) -> Result<VerifyOutcome, Error> {
    let plan = plan_verification(f, &mode)?;
    let mut outcomes = Vec::new();
    let mut n = plan.checked.0.clone();
    while n <= plan.checked.1 {
        outcomes.push(criterion_check(f, &n));
        n += 1;
    }
    Ok(assemble_certificate(f, &mode, plan, outcomes))
}

/// The full record of a descent: the intermediate points, the division
/// chain, and the sieving sequence it rewinds to, together with the
/// verified trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace {
    /// `r_1 .. r_{m-1}`: the strictly shrinking points visited.
    pub remainders: Vec<Int>,
    /// `q_1 .. q_{m-1}`: `r_{k-1} = q_k * P_k + r_k` (with `r_0 = n`).
    pub quotients: Vec<Int>,
    /// `P_1 .. P_m`: the signed factor chain, `F(r_k) = P_k * P_{k+1}`.
    pub factors: Vec<Int>,
    /// The sieving sequence (possibly ending in a pair-swapping 0).
    pub seq: Vec<Int>,
    /// Quadratic-recurrence evaluation of `seq`: ends on `N_m = n` with
    /// `|f_m| = p`.
    pub trace: SieveTrace,
}

/// Finds a sieving sequence presenting the divisor `p` of `|F(n)|` as
/// `|f_m|` with `N_m = n`.
///
/// Trivial divisors short-circuit: `p = |F(n)|` is the one-step sequence
/// `(n)` and `p = 1` is `(n, 0)` (the extra zero swaps the factor pair so
/// the last factor is the unit one). Otherwise the descent of the
/// criterion runs until the carried factor reaches a unit, and stalls
/// (criterion violation at the reported point) abort. The returned trace
/// is re-evaluated and its postconditions asserted before returning.
pub fn factor_to_sequence(f: &Polynomial, n: &Int, p: &Int) -> Result<DescentTrace, Error> {
    f.quad_coeffs()?;
    let value = f.eval(n);
    if value.is_zero() {
        return Err(Error::ZeroPolynomialValue { n: n.clone() });
    }
    let v = value.abs();
    if !p.is_positive() || !(&v % p).is_zero() {
        return Err(Error::NotADivisor { p: p.clone(), value: v });
    }

    let mut remainders: Vec<Int> = Vec::new();
    let mut quotients: Vec<Int> = Vec::new();
    let mut chain: Vec<Int> = Vec::new();
    let seq: Vec<Int>;
    if *p == v {
        seq = vec![n.clone()];
    } else if p.is_one() {
        seq = vec![n.clone(), Int::zero()];
    } else {
        let q = &v / p;
        let first = best_witness(f, n, p, &q)
            .ok_or_else(|| Error::CriterionViolated { at: n.clone() })?;
        let first_modulus = match first.modulus {
            WitnessModulus::FactorP => p.clone(),
            WitnessModulus::FactorQ => q,
        };
        let mut r_cur = first.r;
        quotients.push((n - &r_cur) / &first_modulus);
        remainders.push(r_cur.clone());
        chain.push(first_modulus);

        loop {
            let val_cur = f.eval(&r_cur);
            let carried = chain.last().expect("chain nonempty").clone();
            assert!(
                (&val_cur % &carried).is_zero(),
                "internal identity violation: carried factor stopped dividing"
            );
            let next = &val_cur / &carried;
            if next.is_zero() {
                // F(r) = 0: automatic criterion failure, no way down.
                return Err(Error::CriterionViolated { at: r_cur });
            }
            chain.push(next.clone());
            if next.abs().is_one() {
                break;
            }
            let modulus = next.abs();
            let bound = val_cur.abs();
            let mut best: Option<Merit> = None;
            scan_class(f, &r_cur, &modulus, &bound, WitnessModulus::FactorP, &mut best);
            let (_, _, r_next, _) =
                best.ok_or_else(|| Error::CriterionViolated { at: r_cur.clone() })?;
            quotients.push((&r_cur - &r_next) / &next);
            remainders.push(r_next.clone());
            r_cur = r_next;
        }

        // Rewind the division chain into a sequence: starting from the
        // deepest point, each quotient undoes one division step. The unit
        // sign of the last chain factor rides along on every quotient.
        let sign = chain.last().expect("nonempty").clone();
        let mut out = vec![remainders.last().expect("nonempty").clone()];
        for qk in quotients.iter().rev() {
            out.push(&sign * qk);
        }
        // The rewound trace presents the cofactor of the first modulus; a
        // trailing zero swaps the final pair when that cofactor is not p.
        if &v / &chain[0] != *p {
            out.push(Int::zero());
        }
        seq = out;
    }

    let trace = sieve::eval_quadratic(f, &seq)?;
    assert_eq!(
        trace.final_point(),
        n,
        "internal identity violation: descent sequence does not land on n"
    );
    let (_, f_last) = trace.final_pair().expect("sequence nonempty");
    assert_eq!(
        &f_last.abs(),
        p,
        "internal identity violation: descent sequence presents the wrong factor"
    );
    Ok(DescentTrace { remainders, quotients, factors: chain, seq, trace })
}
