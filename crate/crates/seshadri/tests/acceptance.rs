//! Acceptance suite: golden values of the worked example surfaces, the
//! exhaustive inequality scan, the case-analysis matrix, certifier/oracle
//! differential testing, and the property batteries. One pass/fail line
//! is printed per criterion (run with `--nocapture` to see them).

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use seshadri::{
    builtin, certify_lower_bound, classify_multi, classify_single, epsilon_upper, hodge_filter,
    kuechle_scan, min_quotient_over_catalog, ratio, reproduce_case_analysis, seshadri_quotient,
    xu_floor, CaseOutcome, CatalogMinimum, DivisorClass, EpsilonKind, MultiplicityVector,
    RadicalRational, Rational, VerdictKind,
};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

fn criterion(number: u32, description: &str, budget: Duration, body: impl FnOnce()) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {number}: PASS — {description} ({elapsed:.2?})");
        }
        Ok(()) => {
            println!(
                "criterion {number}: FAIL — {description}: exceeded {budget:.2?} (took {elapsed:.2?})"
            );
            panic!("criterion {number} exceeded its time budget");
        }
        Err(cause) => {
            println!("criterion {number}: FAIL — {description}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn rational(p: i64, q: i64) -> Rational {
    ratio(p, q)
}

fn rr(p: i64, q: i64) -> RadicalRational {
    RadicalRational::from_rational(ratio(p, q))
}

fn mv(entries: &[u64]) -> MultiplicityVector {
    MultiplicityVector::new(entries.to_vec()).unwrap()
}

#[test]
fn criterion_1_cubic_golden_value() {
    criterion(
        1,
        "cubic at one point: quotient 3/2, upper bound √3, ratio² 3/4, equality verdict",
        Duration::from_secs(1),
        || {
            let cubic = builtin("cubic").unwrap();
            assert_eq!(cubic.l_squared(), BigInt::from(3));
            let witness = match min_quotient_over_catalog(&cubic, 1).unwrap() {
                CatalogMinimum::Witness(w) => w,
                other => panic!("expected a witness, got {other:?}"),
            };
            assert_eq!(witness.quotient, rational(3, 2));

            let upper = epsilon_upper(&BigInt::from(3), 1).unwrap();
            assert_eq!(upper, RadicalRational::sqrt_of_rational(&rational(3, 1)));
            assert_eq!(upper.to_string(), "√3");

            let verdict = classify_single(
                &rr(3, 2),
                &BigInt::from(3),
                EpsilonKind::WitnessedUpperBound,
            )
            .unwrap();
            assert_eq!(verdict.ratio_squared, rational(3, 4));
            assert_eq!(verdict.kind, VerdictKind::FibrationOrCubic);
        },
    );
}

#[test]
fn criterion_2_plane_two_point_golden_value() {
    criterion(
        2,
        "plane at two points: quotient 1/2, certified at 1/2, refuted above",
        Duration::from_secs(1),
        || {
            let p2 = builtin("P2").unwrap();
            let witness = match min_quotient_over_catalog(&p2, 2).unwrap() {
                CatalogMinimum::Witness(w) => w,
                other => panic!("expected a witness, got {other:?}"),
            };
            assert_eq!(witness.quotient, rational(1, 2));
            assert_eq!(witness.curve_name, "line");

            let at_value = certify_lower_bound(&BigInt::from(1), 2, &rr(1, 2), 1).unwrap();
            assert!(at_value.is_certified());

            let above = certify_lower_bound(
                &BigInt::from(1),
                2,
                &RadicalRational::from_rational(rational(1, 2) + rational(1, 1000)),
                1,
            )
            .unwrap();
            let traces = above.traces().expect("must fail above the true value");
            assert!(!traces.is_empty());
        },
    );
}

#[test]
fn criterion_3_scroll_family() {
    criterion(
        3,
        "scrolls r = 3..10: catalog minimum (r−1)/r below the fiber, boundary verdict",
        Duration::from_secs(1),
        || {
            for r in 3u64..=10 {
                let scroll = builtin(&format!("scroll({r})")).unwrap();
                let expected = Rational::new(BigInt::from(r - 1), BigInt::from(r));
                let witness = match min_quotient_over_catalog(&scroll, r).unwrap() {
                    CatalogMinimum::Witness(w) => w,
                    other => panic!("scroll({r}): expected a witness, got {other:?}"),
                };
                assert_eq!(witness.quotient, expected, "scroll({r})");

                // strictly below the fiber's quotient 1
                let fiber = &scroll.catalog()[0];
                let fiber_quotient =
                    seshadri_quotient(&scroll.degree(fiber), &fiber.profile.place(r).unwrap())
                        .unwrap();
                assert_eq!(fiber_quotient, rational(1, 1));
                assert!(witness.quotient < fiber_quotient);

                let eps = RadicalRational::from_rational(witness.quotient.clone());
                let verdict = classify_multi(
                    &eps,
                    &BigInt::from(r - 1),
                    r,
                    EpsilonKind::WitnessedUpperBound,
                )
                .unwrap();
                assert_eq!(verdict.ratio_squared, expected, "scroll({r})");
                assert_eq!(verdict.kind, VerdictKind::BoundaryInconclusive);
            }
        },
    );
}

#[test]
fn criterion_4_exhaustive_inequality_scan() {
    criterion(
        4,
        "zero violations of the numerical inequality over r ≤ 6, m₁ ≤ 20",
        Duration::from_secs(30),
        || {
            let scan = kuechle_scan(6, 20).unwrap();
            assert!(
                scan.violations.is_empty(),
                "violations: {:?}",
                scan.violations
            );
            // admissible vectors: multisets over {1..20} of size r minus the
            // all-ones vector, summed over r = 2..6
            let choose = |n: u64, k: u64| -> u64 {
                let mut result = 1u64;
                for i in 0..k {
                    result = result * (n - i) / (i + 1);
                }
                result
            };
            let expected: u64 = (2..=6).map(|r| choose(19 + r, r) - 1).sum();
            assert_eq!(scan.cases_checked, expected);
            assert_eq!(scan.cases_checked, 230_204);
        },
    );
}

#[test]
fn criterion_5_hodge_equality_reproduction() {
    criterion(
        5,
        "L² = 3, m = (2): floor 3, Hodge filter passes with equality",
        Duration::from_secs(1),
        || {
            let floor = xu_floor(&mv(&[2]));
            assert_eq!(floor, BigInt::from(3));
            let l2 = BigInt::from(3);
            let degree = BigInt::from(3);
            assert!(hodge_filter(&l2, &degree, &floor));
            // equality: L²·C² = (L·C)² pins C² = 3 exactly
            assert_eq!(&l2 * &floor, &degree * &degree);
        },
    );
}

/// Direct evaluation, independent of the case analysis: a strict violation
/// with these multiplicities is numerically consistent iff the family
/// floor is strictly below `(r−1)/r²·(Σm)²` (degrees fill the window for
/// large enough L²).
fn violation_consistent(entries: &[u64]) -> bool {
    let support: Vec<u64> = entries.iter().copied().filter(|&m| m > 0).collect();
    let floor: u64 = if support.len() == 1 {
        let m = support[0];
        if m == 1 {
            0
        } else {
            m * (m - 1) + 1
        }
    } else {
        let sum_sq: u64 = support.iter().map(|&m| m * m).sum();
        sum_sq - support.iter().copied().min().unwrap()
    };
    let r = entries.len() as u64;
    let sum: u64 = entries.iter().sum();
    // floor < (r−1)/r²·sum² ⟺ floor·r² < (r−1)·sum²
    (floor as u128) * (r as u128) * (r as u128) < ((r - 1) as u128) * (sum as u128) * (sum as u128)
}

fn all_vectors(length: usize, max_entry: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(&mut prefix, length, max_entry, &mut out);
    return out;

    fn descend(prefix: &mut Vec<u64>, length: usize, max_entry: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == length {
            if prefix.iter().any(|&m| m > 0) {
                out.push(prefix.clone());
            }
            return;
        }
        let upper = prefix
            .first()
            .map_or(max_entry, |_| *prefix.last().unwrap());
        for v in (0..=upper).rev() {
            prefix.push(v);
            descend(prefix, length, max_entry, out);
            prefix.pop();
        }
    }
}

#[test]
fn criterion_6_case_analysis_matrix() {
    criterion(
        6,
        "case analysis agrees with direct inequality evaluation for r ≤ 5, m₁ ≤ 10",
        Duration::from_secs(10),
        || {
            // the three spot checks first
            let two_point = reproduce_case_analysis(2, &mv(&[2, 1])).unwrap();
            assert_eq!(two_point.outcome, CaseOutcome::ContradictionConfirmed);
            let uniform = reproduce_case_analysis(3, &mv(&[1, 1, 1])).unwrap();
            assert_eq!(uniform.outcome, CaseOutcome::NoStrictViolationPossible);
            let reduced = reproduce_case_analysis(3, &mv(&[2, 1, 0])).unwrap();
            assert_eq!(reduced.outcome, CaseOutcome::ReducesTo { points: 2 });

            let mut checked = 0u64;
            for r in 2usize..=5 {
                for entries in all_vectors(r, 10) {
                    let m = MultiplicityVector::new(entries.clone()).unwrap();
                    let report = reproduce_case_analysis(r as u64, &m).unwrap();
                    let consistent = violation_consistent(&entries);
                    match report.outcome {
                        CaseOutcome::ContradictionConfirmed
                        | CaseOutcome::NoStrictViolationPossible => {
                            assert!(
                                !consistent,
                                "case analysis refutes {m} but direct evaluation finds it consistent"
                            );
                        }
                        CaseOutcome::ReducesTo { points } => {
                            assert!(m.has_zero(), "only zero tails reduce: {m}");
                            assert_eq!(points as usize, m.support().len());
                        }
                    }
                    checked += 1;
                }
            }
            // multisets of size r over {0..10} minus the zero vector:
            // 65 + 285 + 1000 + 3002 for r = 2..5
            assert_eq!(checked, 4_352);
        },
    );
}

/// Naive oracle: enumerates ALL multiplicity vectors with Σm ≤ 50 (up to
/// the point count) and all degrees below the target, looking for any
/// pair consistent with the Hodge inequality and the family floor. Shares
/// no code with the certifier.
fn oracle_finds_violating_pair(l2: u64, points: usize, t_num: u64, t_den: u64) -> bool {
    let mut stack: Vec<u64> = Vec::new();
    return search(&mut stack, points, 50, l2, t_num, t_den);

    fn floor_of(support: &[u64]) -> u64 {
        if support.len() == 1 {
            let m = support[0];
            if m == 1 {
                0
            } else {
                m * (m - 1) + 1
            }
        } else {
            let sum_sq: u64 = support.iter().map(|&m| m * m).sum();
            sum_sq - *support.last().unwrap()
        }
    }

    fn search(
        prefix: &mut Vec<u64>,
        parts_left: usize,
        budget: u64,
        l2: u64,
        t_num: u64,
        t_den: u64,
    ) -> bool {
        if !prefix.is_empty() {
            let sum: u64 = prefix.iter().sum();
            let floor = floor_of(prefix);
            let mut d = 1u64;
            // violating degrees: d/Σm < t, i.e. d·t_den < t_num·Σm
            while (d as u128) * (t_den as u128) < (t_num as u128) * (sum as u128) {
                // consistent with Hodge and the floor: L²·floor ≤ d²
                if (l2 as u128) * (floor as u128) <= (d as u128) * (d as u128) {
                    return true;
                }
                d += 1;
            }
        }
        if parts_left == 0 || budget == 0 {
            return false;
        }
        let upper = prefix.last().copied().unwrap_or(budget).min(budget);
        for v in 1..=upper {
            prefix.push(v);
            if search(prefix, parts_left - 1, budget - v, l2, t_num, t_den) {
                prefix.pop();
                return true;
            }
            prefix.pop();
        }
        false
    }
}

#[test]
fn criterion_7_certifier_vs_oracle() {
    criterion(
        7,
        "certifier agrees with the naive oracle on every L² ≤ 4, r ≤ 4, t = k/12",
        Duration::from_secs(60),
        || {
            let mut configurations = 0u64;
            for l2 in 1u64..=4 {
                for points in 1usize..=4 {
                    for k in 1u64.. {
                        // stop once t = k/12 reaches the upper bound √(L²/r)
                        if k * k * (points as u64) >= l2 * 144 {
                            break;
                        }
                        let target = RadicalRational::from_rational(Rational::new(
                            BigInt::from(k),
                            BigInt::from(12),
                        ));
                        let outcome =
                            certify_lower_bound(&BigInt::from(l2), points as u64, &target, 1)
                                .unwrap();
                        let oracle = oracle_finds_violating_pair(l2, points, k, 12);
                        assert_eq!(
                            outcome.is_certified(),
                            !oracle,
                            "disagreement at L²={l2}, r={points}, t={k}/12"
                        );
                        configurations += 1;
                    }
                }
            }
            assert!(
                configurations > 100,
                "grid unexpectedly small: {configurations}"
            );
        },
    );
}

#[test]
fn criterion_8_property_suites() {
    criterion(
        8,
        "order/roundtrip battery, blow-up preservation, verdict monotonicity, certifier determinism",
        Duration::from_secs(30),
        || {
            let mut rng = StdRng::seed_from_u64(0x5e5a_d121);

            // exact arithmetic: total order and square/roundtrip, 10⁴ cases
            for _ in 0..5_000 {
                let a = RadicalRational::new(
                    Rational::new(BigInt::from(rng.gen_range(-60i64..=60)), BigInt::from(rng.gen_range(1i64..=24))),
                    BigInt::from(rng.gen_range(0i64..=120)),
                );
                let b = RadicalRational::new(
                    Rational::new(BigInt::from(rng.gen_range(-60i64..=60)), BigInt::from(rng.gen_range(1i64..=24))),
                    BigInt::from(rng.gen_range(0i64..=120)),
                );
                assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
                if !a.is_negative() && !b.is_negative() {
                    assert_eq!(a.cmp(&b), a.square().cmp(&b.square()));
                }
                if a.cmp(&b) == std::cmp::Ordering::Equal {
                    assert_eq!(a, b);
                }
            }
            for _ in 0..5_000 {
                let s = rng.gen_range(0i64..=5_000);
                let root = RadicalRational::new(Rational::new(BigInt::from(1), BigInt::from(1)), BigInt::from(s));
                assert_eq!(root.square(), Rational::from(BigInt::from(s)));
            }

            // blow-up intersection preservation on the built-in lattices
            for name in ["P2", "cubic", "scroll(6)"] {
                let model = builtin(name).unwrap();
                let rank = model.lattice().rank();
                for _ in 0..200 {
                    let points = rng.gen_range(1usize..=4);
                    let ext = model.lattice().blow_up(points, model.canonical()).unwrap();
                    let a = DivisorClass::new(
                        (0..rank).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect(),
                    );
                    let b = DivisorClass::new(
                        (0..rank).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect(),
                    );
                    let lifted = ext.extended().intersect(&ext.lift(&a).unwrap(), &ext.lift(&b).unwrap()).unwrap();
                    let base = model.lattice().intersect(&a, &b).unwrap();
                    assert_eq!(lifted, base);
                    let e = ext.exceptional(rng.gen_range(0..points));
                    assert_eq!(ext.extended().self_intersection(&e).unwrap(), BigInt::from(-1));
                    assert_eq!(ext.extended().intersect(&e, &ext.lift(&a).unwrap()).unwrap(), BigInt::from(0));
                }
            }

            // verdict monotonicity: fibration forced at ε stays forced below ε
            for _ in 0..400 {
                let l2 = BigInt::from(rng.gen_range(1i64..=9));
                let points = rng.gen_range(1u64..=5);
                let num = rng.gen_range(1i64..=40);
                let den = rng.gen_range(num..=80).max(num + 1);
                let eps = RadicalRational::sqrt_of_rational(
                    &(Rational::new(BigInt::from(num), BigInt::from(den))
                        * Rational::new(l2.clone(), BigInt::from(points))),
                );
                if !eps.is_positive() {
                    continue;
                }
                let classify = |e: &RadicalRational| {
                    if points == 1 {
                        classify_single(e, &l2, EpsilonKind::ClaimedExact).unwrap().kind
                    } else {
                        classify_multi(e, &l2, points, EpsilonKind::ClaimedExact).unwrap().kind
                    }
                };
                if classify(&eps) == VerdictKind::FibrationForced {
                    let smaller = &eps * &Rational::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(10));
                    if smaller.is_positive() {
                        assert_eq!(classify(&smaller), VerdictKind::FibrationForced);
                    }
                }
            }

            // certifier determinism across worker counts, serialized form included
            for (l2, points, t) in [
                (1i64, 2u64, rr(1, 2)),
                (3, 1, rr(1, 1)),
                (4, 3, rr(9, 10)),
                (2, 2, rr(3, 5)),
                (4, 4, rr(11, 12)),
            ] {
                let serial = certify_lower_bound(&BigInt::from(l2), points, &t, 1).unwrap();
                let quad = certify_lower_bound(&BigInt::from(l2), points, &t, 4).unwrap();
                assert_eq!(serial, quad);
                assert_eq!(
                    serde_json::to_string(&serial).unwrap(),
                    serde_json::to_string(&quad).unwrap()
                );
            }
        },
    );
}
