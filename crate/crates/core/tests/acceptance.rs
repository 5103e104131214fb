//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use twisted_pairing::graph::named::{cycle, single_loop, theta};
use twisted_pairing::graph::MultiGraph;
use twisted_pairing::sweep::{
    cover_equivalence_sweep, enumerate_connected, kirchhoff_sweep, model_sweep, oracle_sweep,
    perfect_pairing_sweep, tropical_sweep, Execution, Faults, SweepOutcome,
};
use twisted_pairing::tropical::{critical_group, verify_torsion_on_subdivision, SubdivisionMode};
use twisted_pairing::twisted::TwistedCurveModel;

struct Verdict {
    passed: bool,
    summary: String,
}

fn from_outcomes(outcomes: &[&SweepOutcome], extra: Vec<(bool, String)>) -> Verdict {
    let mut parts = Vec::new();
    let mut passed = true;
    for o in outcomes {
        passed &= o.passed();
        parts.push(format!(
            "{}: {} graphs, {} instances, {} failures",
            o.name,
            o.graphs,
            o.instances,
            o.failures.len()
        ));
        for f in o.failures.iter().take(3) {
            parts.push(format!("  counterexample {f}"));
        }
    }
    for (ok, text) in extra {
        passed &= ok;
        parts.push(text);
    }
    Verdict {
        passed,
        summary: parts.join("; "),
    }
}

fn check(label: &str, ok: bool) -> (bool, String) {
    (
        ok,
        format!("{label}: {}", if ok { "ok" } else { "MISMATCH" }),
    )
}

fn criterion_1(graphs6: &[MultiGraph]) -> Verdict {
    let o = perfect_pairing_sweep(graphs6, Execution::Parallel, Faults::default());
    from_outcomes(&[&o], vec![])
}

fn criterion_2(graphs6: &[MultiGraph]) -> Verdict {
    let o = cover_equivalence_sweep(graphs6, Execution::Parallel);
    let enough = o.instances >= 10_000;
    from_outcomes(
        &[&o],
        vec![check(
            &format!("at least 10^4 triples ({})", o.instances),
            enough,
        )],
    )
}

fn criterion_5(graphs6: &[MultiGraph]) -> Verdict {
    let rs = [2, 3, 4, 5];
    let all = tropical_sweep(
        graphs6,
        &rs,
        &[SubdivisionMode::AllEdges],
        Execution::Parallel,
    );
    let nonsep = tropical_sweep(
        graphs6,
        &rs,
        &[SubdivisionMode::NonSeparating],
        Execution::Parallel,
    );
    let diag =
        verify_torsion_on_subdivision(&cycle(3), 2, SubdivisionMode::Unsubdivided).expect("valid");
    let diagnostic = diag.torsion_count == BigUint::from(1u32) && !diag.verdict;
    from_outcomes(
        &[&all, &nonsep],
        vec![check(
            &format!(
                "3-cycle r=2 unsubdivided count {} (expected 1, verdict false)",
                diag.torsion_count
            ),
            diagnostic,
        )],
    )
}

fn criterion_6(graphs7: &[MultiGraph]) -> Verdict {
    let small: Vec<MultiGraph> = graphs7
        .iter()
        .filter(|g| g.vertex_count() <= 4 && g.edge_count() <= 6)
        .cloned()
        .collect();
    let oracle = oracle_sweep(&small, 2, Execution::Parallel);
    let kirchhoff = kirchhoff_sweep(graphs7, Execution::Parallel);
    from_outcomes(&[&oracle, &kirchhoff], vec![])
}

fn criterion_7() -> Verdict {
    let th = theta();
    let model = TwistedCurveModel::rational_even(th.clone());
    let cg = critical_group(&th, 0).expect("connected");
    let theta_torsion =
        verify_torsion_on_subdivision(&th, 2, SubdivisionMode::AllEdges).expect("connected");
    let loop_torsion = verify_torsion_on_subdivision(&single_loop(), 2, SubdivisionMode::AllEdges)
        .expect("connected");
    let extra = vec![
        check(&format!("theta genus {}", th.genus()), th.genus() == 2),
        check(
            &format!("theta |Pic[2]| {}", model.two_torsion_order()),
            model.two_torsion_order() == BigUint::from(16u32),
        ),
        check(
            &format!("theta critical group {:?}", cg.invariant_factors),
            cg.invariant_factors == vec![BigInt::from(3)],
        ),
        check(
            &format!(
                "theta 2-subdivision 2-torsion {}",
                theta_torsion.torsion_count
            ),
            theta_torsion.torsion_count == BigUint::from(4u32),
        ),
        check(
            &format!(
                "loop 2-subdivision 2-torsion {}",
                loop_torsion.torsion_count
            ),
            loop_torsion.torsion_count == BigUint::from(2u32),
        ),
    ];
    from_outcomes(&[], extra)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn report(number: &str, title: &str, elapsed: Duration, v: &Verdict) -> bool {
    println!(
        "criterion {number} [{}] {title} ({:.1?}): {}",
        if v.passed { "PASS" } else { "FAIL" },
        elapsed,
        v.summary
    );
    v.passed
}

fn main() -> ExitCode {
    let graphs7 = enumerate_connected(7, None);
    let graphs6: Vec<MultiGraph> = graphs7
        .iter()
        .filter(|g| g.edge_count() <= 6)
        .cloned()
        .collect();
    let graphs5: Vec<MultiGraph> = graphs6
        .iter()
        .filter(|g| g.edge_count() <= 5)
        .cloned()
        .collect();

    let mut all = true;

    let (v, elapsed) = timed(|| criterion_1(&graphs6));
    all &= report("1", "perfect graph pairing, <= 6 edges", elapsed, &v);

    let (v, elapsed) = timed(|| criterion_2(&graphs6));
    all &= report(
        "2",
        "cover pairing equals graph pairing, <= 6 edges",
        elapsed,
        &v,
    );

    let (models, elapsed) = timed(|| model_sweep(&graphs5, 1, Execution::Parallel));
    let split = |keys: &[&str], label: &str| {
        let failures = models
            .failures
            .iter()
            .filter(|f| keys.iter().any(|k| f.detail.contains(k)))
            .count();
        Verdict {
            passed: failures == 0,
            summary: format!(
                "{} models over {} graphs, {failures} {label} failures",
                models.instances, models.graphs
            ),
        }
    };
    for f in models.failures.iter().take(3) {
        println!("  counterexample {f}");
    }
    let v = split(
        &["order formula", "even-order criterion", "log2"],
        "torsion-order",
    );
    all &= report(
        "3",
        "two-torsion order of twisted-curve models",
        elapsed,
        &v,
    );
    let v = split(
        &["invertibility", "not alternating", "isotropic", "h x q"],
        "Weil-form",
    );
    all &= report(
        "4",
        "Weil form non-degenerate iff non-separating orders even",
        elapsed,
        &v,
    );

    let (v, elapsed) = timed(|| criterion_5(&graphs6));
    all &= report(
        "5",
        "r-torsion of subdivided critical groups, r in 2..=5",
        elapsed,
        &v,
    );

    let (v, elapsed) = timed(|| criterion_6(&graphs7));
    all &= report(
        "6",
        "Dhar vs lattice oracle; Kirchhoff, <= 7 edges",
        elapsed,
        &v,
    );

    let (v, elapsed) = timed(criterion_7);
    all &= report("7", "specific values on theta and loop", elapsed, &v);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
