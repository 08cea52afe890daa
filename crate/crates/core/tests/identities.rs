//! Cross-module identities: the sieve recurrence, the matrix walk, the
//! quadratic-form functionals, and the conic correspondence all describe
//! the same objects, so their invariants are checked here against each
//! other on randomized inputs rather than module-local fixtures.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pvsieve_core::conic::{
    enumerate_points, matrix_to_point, pell_reduce, point_to_factorization, point_to_matrix,
    ConicInstance, LatticePoint,
};
use pvsieve_core::descent::{plan_verification, verify_rf, VerifyMode, VerifyOutcome};
use pvsieve_core::gamma::{
    brahmagupta_check, evaluate_forms, identity_holds, seq_to_matrix, shift_matrix,
    transvection_word, GammaMatrix, IdentityBranch,
};
use pvsieve_core::sieve;
use pvsieve_core::{Error, Int, Polynomial};

fn int(v: i64) -> Int {
    Int::from(v)
}

fn ints(vs: &[i64]) -> Vec<Int> {
    vs.iter().map(|&v| Int::from(v)).collect()
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x9d1e_5eed ^ salt)
}

fn random_poly(r: &mut ChaCha8Rng, degree: usize, span: i64) -> Polynomial {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| r.gen_range(-span..=span)).collect();
    while coeffs[degree] == 0 {
        coeffs[degree] = r.gen_range(-span..=span);
    }
    Polynomial::from_i64(&coeffs)
}

fn random_quadratic(r: &mut ChaCha8Rng, span: i64) -> Polynomial {
    random_poly(r, 2, span)
}

fn random_seq(r: &mut ChaCha8Rng, max_len: usize, span: i64, allow_zero: bool) -> Vec<Int> {
    let len = r.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let mut x = r.gen_range(-span..=span);
            while !allow_zero && x == 0 {
                x = r.gen_range(-span..=span);
            }
            int(x)
        })
        .collect()
}

#[test]
fn product_identity_holds_on_random_traces() {
    // F(N_m) = f_{m-1} f_m at every prefix, re-verified here from the
    // returned trace rather than trusting the in-recurrence assertion.
    let mut r = rng(1);
    for _ in 0..1000 {
        let degree = r.gen_range(1..=5);
        let f = random_poly(&mut r, degree, 20);
        let seq = random_seq(&mut r, 6, 10, true);
        let trace = sieve::eval(&f, &seq).unwrap();
        let factors = trace.factors();
        let sums = trace.partial_sums();
        assert_eq!(factors.len(), seq.len() + 1);
        assert_eq!(sums.len(), seq.len() + 1);
        assert!(factors[0].is_one());
        assert!(sums[0].is_zero());
        for m in 1..factors.len() {
            assert_eq!(
                f.eval(&sums[m]),
                &factors[m - 1] * &factors[m],
                "prefix {m} of {f} on {seq:?}"
            );
        }
    }
}

#[test]
fn quadratic_recurrence_matches_general_recurrence() {
    let mut r = rng(2);
    for _ in 0..400 {
        let f = random_quadratic(&mut r, 15);
        let seq = random_seq(&mut r, 6, 9, true);
        let a = sieve::eval(&f, &seq).unwrap();
        let b = sieve::eval_quadratic(&f, &seq).unwrap();
        assert_eq!(a, b, "{f} on {seq:?}");
    }
}

#[test]
fn binary_expansion_preserves_pair_point_and_length() {
    let mut r = rng(3);
    for _ in 0..300 {
        let f = random_quadratic(&mut r, 12);
        let seq = random_seq(&mut r, 5, 6, false);
        let trace = sieve::eval_quadratic(&f, &seq).unwrap();
        let expanded = sieve::expand_to_binary(&trace).unwrap();
        // Entries collapse to signs with zero separators; each original
        // entry x contributes 2|x| - 1 of them.
        let want_len: i64 = seq.iter().map(|x| 2 * x.abs() - Int::one()).sum::<Int>()
            .try_into()
            .unwrap();
        assert_eq!(expanded.seq().len() as i64, want_len);
        assert!(expanded.seq().iter().all(|x| x.abs() <= Int::one()));
        assert_eq!(expanded.final_point(), trace.final_point());
        assert_eq!(expanded.final_pair(), trace.final_pair());
    }
}

#[test]
fn chain_forms_track_sieve_factors() {
    // The matrix walk carries the whole sieve: at every step k the point
    // functional recovers N_k and the parity-selected factor recovers f_k.
    let mut r = rng(4);
    for _ in 0..400 {
        let f = random_quadratic(&mut r, 10);
        let seq = random_seq(&mut r, 6, 8, true);
        let trace = sieve::eval_quadratic(&f, &seq).unwrap();
        let chain = seq_to_matrix(&f, &seq).unwrap();
        assert_eq!(chain.len(), seq.len() + 1);
        for (k, m) in chain.iter().enumerate() {
            let ev = evaluate_forms(&f, m).unwrap();
            assert!(ev.det.is_one());
            assert_eq!(&ev.point, &trace.partial_sums()[k], "point at step {k}");
            assert_eq!(
                ev.factor_for_step(k),
                &trace.factors()[k],
                "factor at step {k} of {f} on {seq:?}"
            );
        }
    }
}

#[test]
fn factored_identity_on_random_matrices() {
    // F(point) - factor0 * factor1 = (1 - det)(c*det + c + b*point),
    // recomputed here directly from the functionals as an oracle for the
    // branch classification.
    let mut r = rng(5);
    let mut holds = 0usize;
    for _ in 0..2000 {
        let f = random_quadratic(&mut r, 8);
        let (_, b, c) = f.quad_coeffs().unwrap();
        let (b, c) = (b.clone(), c.clone());
        let m = GammaMatrix::from_i64(
            r.gen_range(-15..=15),
            r.gen_range(-15..=15),
            r.gen_range(-15..=15),
            r.gen_range(-15..=15),
        );
        let ev = evaluate_forms(&f, &m).unwrap();
        let lhs = f.eval(&ev.point) - &ev.factor0 * &ev.factor1;
        let rhs = (Int::one() - &ev.det) * (&c * &ev.det + &c + &b * &ev.point);
        assert_eq!(lhs, rhs, "{f} at {m}");
        let (ok, branch) = identity_holds(&f, &m).unwrap();
        assert_eq!(ok, branch != IdentityBranch::Neither);
        assert_eq!(ok, lhs.is_zero());
        if ok {
            holds += 1;
        }
        if ev.det.is_one() {
            assert!(ok, "unit determinant must factor: {m}");
        }
    }
    // The sweep must exercise both sides of the dichotomy.
    assert!(holds > 0 && holds < 2000);
}

#[test]
fn monic_walks_factor_into_transvections() {
    let mut r = rng(6);
    for _ in 0..300 {
        let b = r.gen_range(-10..=10);
        let c = r.gen_range(-10..=10);
        let f = Polynomial::from_i64(&[c, b, 1]);
        let seq = random_seq(&mut r, 6, 6, true);
        let chain = seq_to_matrix(&f, &seq).unwrap();
        let (word, m) = transvection_word(&seq);
        assert_eq!(word.exponents(), &seq[..]);
        assert_eq!(&m, chain.last().unwrap(), "word for {seq:?}");
    }
}

#[test]
fn translation_transport_preserves_factors() {
    let mut r = rng(7);
    for _ in 0..300 {
        let f = random_quadratic(&mut r, 10);
        let seq = random_seq(&mut r, 5, 7, true);
        let a = seq_to_matrix(&f, &seq).unwrap().pop().unwrap();
        let h = int(r.gen_range(-10..=10));
        let g = f.translated(&h);
        let b = shift_matrix(&f, &h, &a).unwrap();
        let ev_f = evaluate_forms(&f, &a).unwrap();
        let ev_g = evaluate_forms(&g, &b).unwrap();
        assert!(ev_g.det.is_one());
        assert_eq!(ev_g.point, &ev_f.point + &h);
        assert_eq!(ev_g.factor0, ev_f.factor0);
        assert_eq!(ev_g.factor1, ev_f.factor1);
        // Consistency of the translate itself.
        assert_eq!(g.eval(&ev_g.point), f.eval(&ev_f.point));
    }
}

#[test]
fn projection_and_lift_are_mutually_inverse() {
    let mut r = rng(8);
    let mut lifted = 0usize;
    for _ in 0..400 {
        let f = random_quadratic(&mut r, 8);
        let (a, _, _) = f.quad_coeffs().unwrap();
        let a = a.clone();
        let seq = random_seq(&mut r, 5, 6, true);
        let m = seq_to_matrix(&f, &seq).unwrap().pop().unwrap();
        let p = matrix_to_point(&a, &m).unwrap();
        // The projection ignores sign.
        assert_eq!(matrix_to_point(&a, &m.negated()).unwrap(), p);
        if p.y.is_zero() {
            assert_eq!(
                point_to_matrix(&a, &p).unwrap_err(),
                Error::ExceptionalPointPreimage
            );
            continue;
        }
        lifted += 1;
        let back = point_to_matrix(&a, &p).unwrap();
        // Canonical representative: beta > 0 picks one of {M, -M}.
        let expect = if m.beta.is_positive() { m.clone() } else { m.negated() };
        assert_eq!(back, expect, "lift of {p:?}");
        assert_eq!(matrix_to_point(&a, &back).unwrap(), p);
    }
    assert!(lifted > 100, "sweep must exercise the nontrivial lift");
}

#[test]
fn pell_residues_on_enumerated_points() {
    // U = DY + (b + 2an), V = 2aX + bY + 1 satisfy U^2 - D V^2 = 4aF(n),
    // recomputed here from raw coefficients.
    let cases: &[(&[i64], i64, Option<i64>)] = &[
        (&[5, -1, 1], 20, None),       // ellipse with eight points
        (&[1, 0, 1], 2, None),         // unit-style ellipse
        (&[29, 0, 2], 3, None),        // no x-term
        (&[-2, 0, 1], 3, Some(40)),    // hyperbola, boxed
    ];
    for &(coeffs, n, bound) in cases {
        let f = Polynomial::from_i64(coeffs);
        let (a, b, _) = f.quad_coeffs().unwrap();
        let (a, b) = (a.clone(), b.clone());
        let inst = ConicInstance::new(f.clone(), int(n)).unwrap();
        let d = inst.discriminant();
        let bound = bound.map(int);
        let points = enumerate_points(&inst, bound.as_ref()).unwrap();
        assert!(!points.is_empty(), "{f} at n = {n}");
        for p in &points {
            let pell = pell_reduce(&inst, p).unwrap();
            let u = &d * &p.y + &b + int(2) * &a * int(n);
            let v = int(2) * &a * &p.x + &b * &p.y + 1;
            assert_eq!(pell.u, u);
            assert_eq!(pell.v, v);
            assert_eq!(
                &u * &u - &d * &v * &v,
                int(4) * &a * f.eval(&int(n)),
                "Pell residue at {p:?}"
            );
            // Every point also carries a factorization of F(n).
            let (g0, g1, point) = point_to_factorization(&inst, p).unwrap();
            assert_eq!(point, int(n));
            assert_eq!(&g0 * &g1, f.eval(&int(n)), "factors at {p:?}");
        }
    }
}

#[test]
fn conic_lift_depends_only_on_leading_coefficient() {
    // The lift reads nothing but a, X, Y: one lattice point lies on a
    // whole family of conics (one per b, c) and lifts identically.
    let p = LatticePoint::from_i64(3, 4);
    let expect = point_to_matrix(&int(1), &p).unwrap();
    assert_eq!(expect, GammaMatrix::from_i64(1, 1, 3, 4));
    let mut r = rng(9);
    for _ in 0..100 {
        let b = r.gen_range(-10..=10);
        let c = r.gen_range(-10..=10);
        // aX^2 + bXY + cY^2 + X - nY = 0 at (3, 4) pins n = 3 + 3b + 4c.
        let n = 3 + 3 * b + 4 * c;
        let f = Polynomial::from_i64(&[c, b, 1]);
        let inst = ConicInstance::new(f.clone(), int(n)).unwrap();
        assert!(inst.contains(&p));
        let (g0, g1, point) = point_to_factorization(&inst, &p).unwrap();
        assert_eq!(point, int(n));
        assert_eq!(&g0 * &g1, f.eval(&int(n)));
        let ev = evaluate_forms(&f, &expect).unwrap();
        assert_eq!((ev.factor0, ev.factor1), (g0, g1));
    }
}

#[test]
fn lemma_certificates_match_hand_computed_intervals() {
    let cases: &[(&[i64], (i64, i64))] = &[
        (&[17, 1, 1], (-2, 1)),
        (&[7, 2, 2], (-2, 1)),
        (&[23, 3, 3], (-5, 4)),
        (&[7, 0, 4], (-7, 7)),
    ];
    for &(coeffs, (lo, hi)) in cases {
        let f = Polynomial::from_i64(coeffs);
        let plan = plan_verification(&f, &VerifyMode::Lemma).unwrap();
        assert_eq!(plan.i_hat, Some((int(lo), int(hi))), "{f}");
        match verify_rf(&f, VerifyMode::Lemma).unwrap() {
            VerifyOutcome::Certified(cert) => {
                assert_eq!(cert.plan, plan);
                assert!(cert.canonical_text().ends_with("end\n"));
            }
            VerifyOutcome::Counterexample { failure, .. } => {
                panic!("{f} should certify, failed at {:?}", failure.n())
            }
        }
    }
}

#[test]
fn descent_round_trips_through_the_conic() {
    // Close the loop: descend to a sequence, walk it to a matrix, project
    // to the conic, lift back, and reread the factorization.
    let f = Polynomial::from_i64(&[11, 5, 3]);
    let n = int(301);
    let t = pvsieve_core::descent::factor_to_sequence(&f, &n, &int(83)).unwrap();
    let m = seq_to_matrix(&f, t.trace.seq()).unwrap().pop().unwrap();
    let ev = evaluate_forms(&f, &m).unwrap();
    assert_eq!(ev.point, n);
    assert_eq!(ev.factor_for_step(t.trace.len()).abs(), int(83));
    let inst = ConicInstance::new(f.clone(), n.clone()).unwrap();
    let p = matrix_to_point(&int(3), &m).unwrap();
    assert!(inst.contains(&p));
    let (g0, g1, _) = point_to_factorization(&inst, &p).unwrap();
    assert_eq!(&g0 * &g1, f.eval(&n));
    assert!(g0.abs() == int(83) || g1.abs() == int(83));
}

#[test]
fn worked_sequence_against_all_representations() {
    // One fixture traced through every layer at once.
    let f = Polynomial::from_i64(&[11, 5, 3]);
    let seq = ints(&[2, -1, 4]);
    let trace = sieve::eval_quadratic(&f, &seq).unwrap();
    assert_eq!(trace.factors(), &ints(&[1, 33, 83, 3293])[..]);
    assert_eq!(trace.final_point(), &int(301));
    let chain = seq_to_matrix(&f, &seq).unwrap();
    let last = chain.last().unwrap();
    assert_eq!(last, &GammaMatrix::from_i64(-5, -1, -18, -11));
    let p = matrix_to_point(&int(3), last).unwrap();
    assert_eq!(p, LatticePoint::from_i64(18, 11));
    let inst = ConicInstance::new(f.clone(), int(301)).unwrap();
    let (g0, g1, _) = point_to_factorization(&inst, &p).unwrap();
    assert_eq!((g0, g1), (int(83), int(3293)));
    let pell = pell_reduce(&inst, &p).unwrap();
    assert_eq!(
        &pell.u * &pell.u - inst.discriminant() * &pell.v * &pell.v,
        int(4) * int(3) * int(273319)
    );
}

proptest! {
    #[test]
    fn sieve_product_identity_proptest(
        coeffs in proptest::collection::vec(-12i64..=12, 2..=5),
        seq in proptest::collection::vec(-8i64..=8, 1..=5),
    ) {
        prop_assume!(coeffs.last() != Some(&0));
        let f = Polynomial::from_i64(&coeffs);
        prop_assume!(f.degree().map_or(false, |d| d >= 1));
        let seq = ints(&seq);
        let trace = sieve::eval(&f, &seq).unwrap();
        for m in 1..trace.factors().len() {
            prop_assert_eq!(
                f.eval(&trace.partial_sums()[m]),
                &trace.factors()[m - 1] * &trace.factors()[m]
            );
        }
    }

    #[test]
    fn brahmagupta_always_composes(
        a in -9i64..=9,
        c in -9i64..=9,
        alpha in -12i64..=12,
        beta in -12i64..=12,
        gamma in -12i64..=12,
        delta in -12i64..=12,
    ) {
        let m = GammaMatrix::from_i64(alpha, beta, gamma, delta);
        prop_assert!(brahmagupta_check(&int(a), &int(c), &m));
    }

    #[test]
    fn enumeration_is_complete_on_random_ellipses(
        a in 1i64..=4,
        b in -3i64..=3,
        c in 1i64..=6,
        n in -12i64..=12,
    ) {
        prop_assume!(b * b - 4 * a * c < 0);
        let f = Polynomial::from_i64(&[c, b, a]);
        let inst = ConicInstance::new(f, int(n)).unwrap();
        let got = enumerate_points(&inst, None).unwrap();
        let mut want = Vec::new();
        for x in -80i64..=80 {
            for y in -80i64..=80 {
                let p = LatticePoint::from_i64(x, y);
                if inst.contains(&p) {
                    want.push(p);
                }
            }
        }
        // The exact enumeration window is far narrower than the oracle
        // box, so equality means no point was dropped or invented.
        prop_assert_eq!(got, want);
    }
}
