//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weighted_catalan::trees::{check_decomposition, odd_double_factorial};
use weighted_catalan::valuation::{predicted_xi, valuation_reports};
use weighted_catalan::weight::check_window;
use weighted_catalan::*;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_odd_table(seed: u64, len: usize) -> WeightSequence {
    let mut rng = StdRng::seed_from_u64(seed);
    WeightSequence::table((0..len).map(|_| 2 * rng.gen_range(-500i64..500) + 1))
}

fn three_route_agreement() -> Outcome {
    let battery = [
        WeightSequence::constant(1),
        WeightSequence::OddSquares,
        WeightSequence::geometric(3),
        WeightSequence::geometric(5),
        WeightSequence::polynomial([1, 4]),
        random_odd_table(2006, 12),
    ];
    for b in &battery {
        let series = weighted_catalan_series(12, b).map_err(|e| e.to_string())?;
        for n in 0..=12u32 {
            let dp = weighted_catalan_dp(n, b).map_err(|e| e.to_string())?.value;
            let bf = weighted_catalan_bruteforce(n, b, 14)
                .map_err(|e| e.to_string())?
                .count
                .value;
            ensure(dp == series[n as usize] && dp == bf, || {
                format!(
                    "{b} n={n}: dp={dp} series={} brute={bf}",
                    series[n as usize]
                )
            })?;
        }
    }
    Ok(())
}

fn sweep(b: &WeightSequence, n_max: u32) -> Outcome {
    let (verdict, reports) =
        verify_weighted(n_max, b, CheckWindow::default()).map_err(|e| e.to_string())?;
    ensure(!verdict.is_rejected(), || format!("{b} rejected"))?;
    ensure(reports.len() == n_max as usize + 1, || {
        "short report".into()
    })?;
    match reports.iter().find(|r| !r.matches) {
        Some(r) => Err(format!(
            "{b} n={}: xi={} predicted={}",
            r.n, r.xi, r.predicted
        )),
        None => Ok(()),
    }
}

fn odd_squares_sweep() -> Outcome {
    let b = WeightSequence::OddSquares;
    let c2 = weighted_catalan_dp(2, &b).unwrap().value;
    let c3 = weighted_catalan_dp(3, &b).unwrap().value;
    ensure(c2 == BigInt::from(10) && xi(&c2, 2).unwrap() == 1, || {
        format!("C_2 = {c2}")
    })?;
    ensure(c3 == BigInt::from(325) && xi(&c3, 2).unwrap() == 0, || {
        format!("C_3 = {c3}")
    })?;
    ensure(
        check_membership(&b, CheckWindow::default()).unwrap() == MembershipVerdict::ProvenMember,
        || "odd squares not proven member".into(),
    )?;
    sweep(&b, 200)
}

fn q_catalan_sweep() -> Outcome {
    for q in [5, 9, 13] {
        sweep(&WeightSequence::geometric(q), 100)?;
        for n in [0u32, 7, 50, 100] {
            let v = q_catalan(n, q);
            ensure(xi(&v, 2).unwrap() == predicted_xi(n as u64), || {
                format!("q={q} n={n}")
            })?;
        }
    }
    Ok(())
}

fn negative_control() -> Outcome {
    let b = WeightSequence::polynomial([1, 2]);
    let verdict = check_membership(&b, CheckWindow::default()).unwrap();
    let w = verdict.witness().ok_or("2x+1 was not rejected")?;
    ensure(w.n == 1 && w.x == 0 && w.value == BigInt::from(2), || {
        format!("witness {w}")
    })?;
    ensure(w.confirm(&b).unwrap(), || {
        "witness does not recompute".into()
    })?;
    ensure(
        matches!(
            verify_weighted(2, &b, CheckWindow::default()),
            Err(Error::NotInClass(_))
        ),
        || "verify_weighted accepted 2x+1".into(),
    )?;
    let c2 = weighted_catalan_dp(2, &b).unwrap().value;
    ensure(c2 == BigInt::from(4), || format!("C_2^b = {c2}"))?;
    let r = &valuation_reports(&weighted_catalan_dp_upto(2, &b).unwrap()).unwrap()[2];
    ensure(r.xi == 2 && r.predicted == 1 && !r.matches, || {
        format!("{r:?}")
    })
}

fn classical_sweep() -> Outcome {
    let reports = verify_classical(5000);
    ensure(reports.len() == 5001, || "short report".into())?;
    match reports.iter().find(|r| !r.matches) {
        Some(r) => Err(format!("n={}: xi={} predicted={}", r.n, r.xi, r.predicted)),
        None => Ok(()),
    }
}

fn orbit_size_census() -> Outcome {
    for n in 0..=16u32 {
        let c = shape_census(n, 18).map_err(|e| e.to_string())?;
        let s = (n + 1).count_ones() - 1;
        ensure(c.total_size() == catalan(n), || {
            format!("n={n}: sizes sum to {}", c.total_size())
        })?;
        ensure(
            c.records.iter().all(|r| {
                r.size.magnitude().count_ones() == 1 && r.size == BigInt::from(1) << r.size_exponent
            }),
            || format!("n={n}: non power of two"),
        )?;
        ensure(c.min_exponent() == s, || {
            format!("n={n}: min exponent {} != {s}", c.min_exponent())
        })?;
        ensure(
            BigInt::from(c.minimal_count()) == odd_double_factorial(s),
            || {
                format!(
                    "n={n}: {} minimal orbits, expected {}",
                    c.minimal_count(),
                    odd_double_factorial(s)
                )
            },
        )?;
    }
    Ok(())
}

fn decomposition_identity() -> Outcome {
    for b in [
        WeightSequence::constant(1),
        WeightSequence::OddSquares,
        WeightSequence::geometric(5),
    ] {
        for n in 0..=12u32 {
            let census = orbit_census(n, &b, 1, 18).map_err(|e| e.to_string())?;
            let total = check_decomposition(&census, &b).map_err(|e| format!("{b} n={n}: {e}"))?;
            let odd = census
                .records
                .iter()
                .all(|r| r.reduced_weight_at_zero().is_some_and(|v| v.is_odd()));
            ensure(odd, || format!("{b} n={n}: even reduced weight"))?;
            let direct = weighted_catalan_dp(n, &b).unwrap().value;
            ensure(total == direct, || {
                format!("{b} n={n}: {total} != {direct}")
            })?;
        }
    }
    Ok(())
}

fn bijection_transport() -> Outcome {
    let battery = [
        WeightSequence::constant(1),
        WeightSequence::OddSquares,
        WeightSequence::geometric(5),
        WeightSequence::polynomial([1, 4]),
        random_odd_table(7, 10),
    ];
    for n in 0..=10u32 {
        for t in enumerate_trees(n, 14).map_err(|e| e.to_string())? {
            let p = tree_to_path(&t);
            for b in &battery {
                let (wp, wt) = (p.weight(b).unwrap(), tree_weight(&t, b, 0).unwrap());
                ensure(wp == wt, || format!("{b} tree {t}: {wp} != {wt}"))?;
            }
        }
    }
    Ok(())
}

fn closure_suite() -> Outcome {
    let width = 40;
    let members: Vec<FunctionWindow> = [
        WeightSequence::OddSquares,
        WeightSequence::geometric(5),
        WeightSequence::geometric(9),
        WeightSequence::geometric(-3),
        WeightSequence::polynomial([1, 4]),
        WeightSequence::polynomial([3, 8, 16]),
        WeightSequence::constant(-7),
    ]
    .iter()
    .map(|b| b.window(0, width).unwrap())
    .collect();
    let passes = |h: &FunctionWindow| {
        h.len() >= 32
            && h.values().iter().all(|v| v.is_odd())
            && matches!(
                check_window(h, 8),
                Some(MembershipVerdict::WindowVerified { .. })
            )
    };
    for f in &members {
        ensure(passes(f), || "battery member fails".into())?;
        ensure(passes(&f.shift().unwrap()), || "shift".into())?;
        for g in &members {
            ensure(passes(&f.product(g).unwrap()), || "product".into())?;
            let br = f.bracket(g).map_err(|e| e.to_string())?;
            ensure(passes(&br), || "bracket".into())?;
        }
    }

    let binom = |n: usize, k: usize| (0..k).fold(BigInt::from(1), |a, i| a * (n - i) / (i + 1));
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..50 {
        let f = FunctionWindow::new(
            0,
            (0..16)
                .map(|_| BigInt::from(rng.gen_range(-99i64..99)))
                .collect(),
        );
        let g = FunctionWindow::new(
            0,
            (0..16)
                .map(|_| BigInt::from(rng.gen_range(-99i64..99)))
                .collect(),
        );
        for n in 0..=5usize {
            let lhs = f.product(&g).unwrap().difference(n).unwrap();
            for (i, v) in lhs.values().iter().enumerate() {
                let rhs: BigInt = (0..=n)
                    .map(|k| {
                        let a = f.shift_by(k).unwrap().difference(n - k).unwrap();
                        let b = g.difference(k).unwrap();
                        binom(n, k) * &a.values()[i] * &b.values()[i]
                    })
                    .sum();
                ensure(*v == rhs, || format!("Leibniz n={n} x={i}"))?;
            }
        }
    }
    Ok(())
}

fn zero_block_lengths() -> Outcome {
    for p in [3u64, 5, 7] {
        let reports = zero_blocks(p, 20000, 20).map_err(|e| e.to_string())?;
        ensure(
            reports.len() == 20 && reports.iter().all(|r| r.complete),
            || {
                format!(
                    "p={p}: only {} complete blocks",
                    reports.iter().filter(|r| r.complete).count()
                )
            },
        )?;
        if let Some(r) = reports.iter().find(|r| !r.matches) {
            return Err(format!(
                "p={p} k={}: observed {} predicted {}",
                r.k, r.observed, r.predicted
            ));
        }
    }
    let reports = zero_blocks(2, 20000, 12).map_err(|e| e.to_string())?;
    ensure(reports.len() == 12, || "p=2: fewer than 12 blocks".into())?;
    for r in &reports {
        ensure(r.complete && r.observed == (1 << r.k) - 1, || {
            format!("p=2 k={}: observed {}", r.k, r.observed)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("three-route agreement (n <= 12)", three_route_agreement),
        ("valuation sweep, odd squares (n <= 200)", odd_squares_sweep),
        (
            "q-Catalan sweep, q in {5, 9, 13} (n <= 100)",
            q_catalan_sweep,
        ),
        ("negative control b(x) = 2x + 1", negative_control),
        ("classical valuation (n <= 5000)", classical_sweep),
        (
            "orbit sizes and minimal orbits (n <= 16)",
            orbit_size_census,
        ),
        (
            "orbit decomposition identity (n <= 12)",
            decomposition_identity,
        ),
        ("tree/path weight transport (n <= 10)", bijection_transport),
        (
            "closure under S, product, bracket; Leibniz (n <= 5)",
            closure_suite,
        ),
        (
            "zero blocks mod 2, 3, 5, 7 (n <= 20000)",
            zero_block_lengths,
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {name}  ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}  ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
