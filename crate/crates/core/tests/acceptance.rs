//! Acceptance gate: the ten product-level guarantees, one test each.
//!
//! Every check is exact (structural equality of canonical forms) except
//! the radius criterion, which allows one part in 10⁶ relative error when
//! comparing a 200-term ratio tail against the closed forms.
//!
//! Run with `--nocapture` to see one line per criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use qunify::alpha::{
    beta_transform, builtin_family, builtin_names, inverse_condition_residuals, solve_alpha_system,
    symmetry_check, AlphaFamily,
};
use qunify::classical;
use qunify::parse::parse_qrat;
use qunify::qcore::{gauss_binomial_identity_check, qint};
use qunify::qnumbers::{
    addition_theorem_check, bernoulli_numbers, numbers, odd_vanishing_check,
    poly_derivative_identity_check, NumberKind,
};
use qunify::rational::{rat, Rational};
use qunify::report::Verdict;
use qunify::series::{radius_estimate, unified_exp, RadiusEstimate};
use qunify::QRat;

fn criterion(num: u32, desc: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {num} ({desc}): PASS"),
        Err(cause) => {
            println!("criterion {num} ({desc}): FAIL");
            resume_unwind(cause);
        }
    }
}

fn fam(name: &str) -> AlphaFamily {
    builtin_family(name).expect("builtin")
}

#[test]
fn criterion_01_classical_limits_of_all_number_kinds() {
    criterion(1, "q→1 limits match classical numbers through n=12", || {
        let oracles = [
            (NumberKind::Bernoulli, classical::bernoulli(12)),
            (NumberKind::Euler, classical::euler0(12)),
            (NumberKind::Genocchi, classical::genocchi(12)),
        ];
        for name in builtin_names() {
            let f = fam(name);
            for (kind, oracle) in &oracles {
                let table = numbers(*kind, &f, 12).expect("table");
                for n in 0..=12u32 {
                    let limit = table.get(n).limit_at_one().expect("no pole at q=1");
                    assert_eq!(
                        limit, oracle[n as usize],
                        "{name} {kind:?} n={n}: limit {limit} vs classical {}",
                        oracle[n as usize]
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_02_first_bernoulli_closed_form() {
    criterion(2, "first Bernoulli entry equals -α₂/(α₁²[2]_q)", || {
        for name in builtin_names() {
            let f = fam(name);
            let b1 = bernoulli_numbers(&f, 1).expect("table").get(1).clone();
            let a1 = f.alpha(1).unwrap();
            let a2 = f.alpha(2).unwrap();
            let expected = -&a2.div(&(&(&a1 * &a1) * &qint(2))).expect("nonzero");
            assert_eq!(b1, expected, "family {name}");
            if name == "improved" {
                assert_eq!(b1.render(), "-1/2");
            }
        }
    });
}

#[test]
fn criterion_03_inverse_condition_residuals() {
    criterion(3, "inverse-condition residuals behave per family", || {
        let improved = inverse_condition_residuals(&fam("improved"), 12).unwrap();
        for (i, r) in improved.iter().enumerate() {
            assert!(r.is_zero(), "improved r_{} = {}", i + 1, r.render());
        }
        let ones = inverse_condition_residuals(&fam("ones"), 12).unwrap();
        assert_eq!(ones[1].render(), "1-q", "ones r_2");
        for name in builtin_names() {
            let rs = inverse_condition_residuals(&fam(name), 12).unwrap();
            for (i, r) in rs.iter().enumerate() {
                let n = i + 1;
                if n % 2 == 1 {
                    assert!(r.is_zero(), "{name} odd residual r_{n} = {}", r.render());
                }
            }
        }
    });
}

#[test]
fn criterion_04_solver_round_trip() {
    criterion(4, "α-solver reproduces known even weights", || {
        // Improved's own odd entries give back its even entries.
        let improved = fam("improved");
        let mut odds = BTreeMap::new();
        for k in (1..8).step_by(2) {
            odds.insert(k, improved.alpha(k).unwrap());
        }
        let solved = solve_alpha_system(&odds, 8).expect("solvable");
        for n in 0..=8u32 {
            if n % 2 == 0 {
                assert_eq!(
                    solved.alpha(n).unwrap(),
                    improved.alpha(n).unwrap(),
                    "even entry n={n}"
                );
            }
        }
        // All-ones odd entries give a family that satisfies the inverse
        // condition, with the documented first even entry.
        let mut ones_odds = BTreeMap::new();
        for k in (1..12).step_by(2) {
            ones_odds.insert(k, QRat::one());
        }
        let solved = solve_alpha_system(&ones_odds, 12).expect("solvable");
        assert_eq!(solved.alpha(2).unwrap(), parse_qrat("(1+q)/2").unwrap());
        for (i, r) in inverse_condition_residuals(&solved, 12)
            .unwrap()
            .iter()
            .enumerate()
        {
            assert!(r.is_zero(), "solved-family residual r_{} = {}", i + 1, r.render());
        }
    });
}

#[test]
fn criterion_05_symmetry_lemma() {
    criterion(5, "q-inversion symmetry holds/fails per family", || {
        for name in ["improved", "half_gauss"] {
            let report = symmetry_check(&fam(name), 10).unwrap();
            assert!(report.all_passed(), "{name} should be symmetric");
        }
        for name in ["ones", "gauss"] {
            let report = symmetry_check(&fam(name), 10).unwrap();
            for (n, item) in report.items.iter().enumerate() {
                let expect = if n >= 2 { Verdict::Fail } else { Verdict::Pass };
                assert_eq!(item.verdict, expect, "{name} n={n}");
            }
        }
        let transformed = beta_transform(&fam("ones"));
        assert!(
            transformed.eq_up_to(&fam("gauss"), 10).unwrap(),
            "β-transform of the plain family must be the Gauss family"
        );
    });
}

#[test]
fn criterion_06_addition_theorems() {
    criterion(6, "addition theorems hold for all kinds and families", || {
        for name in builtin_names() {
            let report = addition_theorem_check(&fam(name), 8).unwrap();
            assert!(
                report.all_passed(),
                "{name}: {:?}",
                report
                    .failures()
                    .iter()
                    .map(|i| i.label.clone())
                    .collect::<Vec<_>>()
            );
        }
    });
}

#[test]
fn criterion_07_odd_bernoulli_entries_vanish() {
    criterion(7, "odd Bernoulli entries vanish where promised", || {
        let mut ones_odds = BTreeMap::new();
        for k in (1..12).step_by(2) {
            ones_odds.insert(k, QRat::one());
        }
        let solved = solve_alpha_system(&ones_odds, 12).expect("solvable");
        for f in [fam("improved"), solved] {
            let label = f.name().to_string();
            let report = odd_vanishing_check(&f, 11).unwrap();
            assert_eq!(report.overall(), Verdict::Pass, "{label}: hypothesis must hold");
            let table = bernoulli_numbers(&f, 11).unwrap();
            assert_eq!(table.get(1).render(), "-1/2", "{label}");
            for n in (3..=11u32).step_by(2) {
                assert!(table.get(n).is_zero(), "{label} entry {n}");
            }
        }
    });
}

#[test]
fn criterion_08_derivative_identities() {
    criterion(8, "q-derivative identities at series and polynomial level", || {
        let order = 10;
        let assert_series_eq = |lhs: &qunify::series::Series,
                                rhs: &qunify::series::Series,
                                upto: u32,
                                what: &str| {
            for n in 0..=upto {
                assert_eq!(lhs.coeff(n), rhs.coeff(n), "{what}, coefficient {n}");
            }
        };
        // Plain family: its exponential is its own q-derivative.
        let e_ones = unified_exp(&fam("ones"), order).unwrap();
        assert_series_eq(&e_ones.qderive(), &e_ones, order - 1, "plain self-derivative");
        // Gauss family: derivative rescales the argument by q.
        let e_gauss = unified_exp(&fam("gauss"), order).unwrap();
        assert_series_eq(
            &e_gauss.qderive(),
            &e_gauss.scale_arg(&QRat::q()),
            order - 1,
            "gauss argument rescaling",
        );
        // Improved family: derivative is the half-sum of both arguments.
        let e_imp = unified_exp(&fam("improved"), order).unwrap();
        let half_sum = e_imp
            .add(&e_imp.scale_arg(&QRat::q()))
            .scale(&parse_qrat("1/2").unwrap());
        assert_series_eq(&e_imp.qderive(), &half_sum, order - 1, "improved half-sum");
        // Polynomial-level identity for the families with a ratio form.
        for name in ["ones", "gauss", "improved"] {
            let report = poly_derivative_identity_check(&fam(name), 8).unwrap();
            assert_eq!(report.overall(), Verdict::Pass, "{name}");
            assert!(
                report.items.iter().all(|i| i.verdict == Verdict::Pass),
                "{name} has non-passing items"
            );
        }
    });
}

#[test]
fn criterion_09_radius_estimates() {
    criterion(9, "convergence radii at q=1/4 match closed forms", || {
        let v0 = rat(1, 2); // probe at q = v² = 1/4
        let q0 = rat(1, 4);
        let one = rat(1, 1);
        let tol = rat(1, 1_000_000);
        let closed_ones = &one / &(&one - &q0); // 4/3
        let closed_improved = &rat(2, 1) / &(&one - &q0); // 8/3
        let rel_close = |got: &Rational, want: &Rational| {
            let diff = if got > want { got - want } else { want - got };
            diff / want < tol
        };
        match radius_estimate(&fam("ones"), &v0, 200).unwrap() {
            RadiusEstimate::Finite { limit_inverse, .. } => {
                assert!(
                    rel_close(&limit_inverse, &closed_ones),
                    "ones radius {limit_inverse} vs 4/3"
                );
            }
            other => panic!("ones should converge on a disc, got {other:?}"),
        }
        match radius_estimate(&fam("improved"), &v0, 200).unwrap() {
            RadiusEstimate::Finite { limit_inverse, .. } => {
                assert!(
                    rel_close(&limit_inverse, &closed_improved),
                    "improved radius {limit_inverse} vs 8/3"
                );
            }
            other => panic!("improved should converge on a disc, got {other:?}"),
        }
        assert!(
            matches!(
                radius_estimate(&fam("gauss"), &v0, 200).unwrap(),
                RadiusEstimate::Infinite
            ),
            "gauss exponential is entire"
        );
    });
}

#[test]
fn criterion_10_gauss_binomial_identity() {
    criterion(10, "finite q-binomial expansion of the q-Pochhammer", || {
        let probes = [
            QRat::from_int(-1),
            QRat::q(),
            &QRat::from_int(2) * &QRat::q_pow(2),
        ];
        for a in &probes {
            let report = gauss_binomial_identity_check(a, 8);
            assert!(report.all_passed(), "a = {}", a.render());
        }
    });
}
