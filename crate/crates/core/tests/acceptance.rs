//! Acceptance run: each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use freecurve::verify::{run, Status, Suite, VerificationOutcome, VerifyOptions};

struct Run {
    outcome: VerificationOutcome,
    elapsed: Duration,
}

fn run_suite(s: Suite) -> Run {
    let start = Instant::now();
    let outcome = run(&[s], &VerifyOptions::default());
    Run { outcome, elapsed: start.elapsed() }
}

fn failures(o: &VerificationOutcome, prefix: Option<&str>) -> Vec<String> {
    o.claims
        .iter()
        .filter(|c| c.status == Status::Fail && prefix.is_none_or(|p| c.id.starts_with(p)))
        .map(|c| format!("{}: expected {}, computed {}", c.id, c.expected, c.computed))
        .collect()
}

fn has_claim(o: &VerificationOutcome, id: &str) -> bool {
    o.claims.iter().any(|c| c.id == id && c.status == Status::Pass)
}

/// A suite criterion: no failing claims, the named claims present and passing,
/// and the wall-clock budget met.
fn suite_criterion(r: &Run, required: &[&str], budget: Duration) -> Result<String, String> {
    let mut problems = failures(&r.outcome, None);
    problems.extend(required.iter().filter(|id| !has_claim(&r.outcome, id)).map(|id| format!("missing or failing claim {id}")));
    if r.elapsed > budget {
        problems.push(format!("took {:.1?}, budget {budget:?}", r.elapsed));
    }
    let s = &r.outcome.summary;
    if problems.is_empty() {
        Ok(format!("{} claims, {} pass, {} discrepancies, {:.1?}", s.total, s.pass, s.discrepancy, r.elapsed))
    } else {
        Err(problems.join("; "))
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let thm2ii = run_suite(Suite::Thm2ii);
    let prop2i = run_suite(Suite::Prop2i);
    let stfam = run_suite(Suite::Stfam);
    let prop3 = run_suite(Suite::Prop3);
    let prop4i = run_suite(Suite::Prop4i);
    let prop4ii = run_suite(Suite::Prop4ii);
    let arrangements = run_suite(Suite::Arrangements);
    let valles = run_suite(Suite::Valles);
    let identities = run_suite(Suite::Identities);

    let mut results: Vec<(&str, Result<String, String>)> = vec![
        (
            "1 three-cusp family k=2..5",
            suite_criterion(&thm2ii, &["thm2ii/thm2ii:k=5/free", "thm2ii/thm2ii:k=5/rational-cuspidal"], secs(5)),
        ),
        (
            "2 substitution recursion d<=10",
            suite_criterion(&prop2i, &["prop2i/prop2i:d=10/free", "prop2i/prop2i:d=10/relation"], secs(30)),
        ),
        ("3 quartic-plus-term family d=5..9", suite_criterion(&stfam, &["stfam/stfam:a=1,b=0,c=0,d=9/exponents"], secs(10))),
        ("4 tricuspidal family d=5..10", suite_criterion(&prop3, &[], secs(60))),
        (
            "5 unicuspidal family k=2..6",
            suite_criterion(&prop4i, &["prop4i/prop4i:k=2/free", "prop4i/prop4i:k=6/free"], secs(60)),
        ),
        ("6 Fibonacci family k<=2", suite_criterion(&prop4ii, &["prop4ii/prop4ii:k=2/exponents"], secs(300))),
        ("7 line arrangements", suite_criterion(&arrangements, &[], secs(10))),
        ("8 Hesse pencil curve d=15", suite_criterion(&valles, &[], secs(60))),
    ];

    let v = failures(&identities.outcome, Some("identities/"))
        .into_iter()
        .filter(|f| !f.starts_with("identities/conjecture/"))
        .collect::<Vec<_>>();
    let n = identities.outcome.claims.iter().filter(|c| c.id.ends_with("/identities")).count();
    results.push((
        "9 identity properties",
        if v.is_empty() && has_claim(&identities.outcome, "identities/random/count") {
            Ok(format!("{n} curves, 0 violations, {:.1?}", identities.elapsed))
        } else {
            Err(v.join("; "))
        },
    ));

    let all = [&thm2ii, &prop2i, &stfam, &prop3, &prop4i, &prop4ii, &arrangements, &valles, &identities];
    let mut counterexamples: Vec<String> = all.iter().flat_map(|r| r.outcome.conjecture_counterexamples.clone()).collect();
    counterexamples.extend(failures(&identities.outcome, Some("identities/conjecture/")));
    results.push((
        "10 conjecture probes",
        if counterexamples.is_empty() {
            Ok("0 counterexamples".into())
        } else {
            Err(format!("COUNTEREXAMPLES: {}", counterexamples.join(", ")))
        },
    ));

    let (matrices, mismatches) = all[..8]
        .iter()
        .fold((0, 0), |(m, x), r| (m + r.outcome.cross_oracle.matrices, x + r.outcome.cross_oracle.mismatches));
    results.push((
        "11 exact vs multi-modular rank",
        if mismatches == 0 && matrices > 0 {
            Ok(format!("{matrices} matrices, 0 mismatches"))
        } else {
            Err(format!("{mismatches} mismatches in {matrices} matrices"))
        },
    ));

    let mut ok = true;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                ok = false;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
