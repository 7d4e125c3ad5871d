//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria are reported FAIL because their literal statements do not hold
//! (criterion 8: a single constant A for all charges; criterion 10: ν̂² = −1 on
//! every section element). For those the run checks the pattern that does hold
//! and exits nonzero only if that pattern breaks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

use a22::analyzer::{
    build_W, check_exact_sequence, check_oracle, check_presentation, check_recursion, check_section6, graded_dimension,
    Section6Config,
};
use a22::envelope::check_ideal_stability;
use a22::fock::{check_brackets, check_linear_relations, check_quadratic_relations, FockSpace};
use a22::group::{check_group, TwistedGroup};
use a22::report::SuiteReport;

struct Run {
    unexpected: Vec<String>,
}

impl Run {
    fn line(&mut self, n: u32, title: &str, pass: bool, expected_pass: bool, info: String) {
        let status = if pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status}  {title}: {info}");
        if pass != expected_pass {
            self.unexpected.push(format!("criterion {n}"));
        }
    }

    fn suite(&mut self, n: u32, title: &str, r: &SuiteReport, t: Duration) {
        let info = match &r.counterexample {
            Some(c) => format!("{} checks, {:.1?}, first failure: {c}", r.checked, t),
            None => format!("{} checks, {:.1?}", r.checked, t),
        };
        self.line(n, title, r.pass, true, info);
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

fn main() -> ExitCode {
    let mut run = Run { unexpected: Vec::new() };
    let fs = FockSpace::new(40);

    // 1: table to qweight 40 against the oracle, single-threaded
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let (w, t_build) = timed(|| single.install(|| build_W(&fs, 40)).expect("qweight 40 within cutoff"));
    let table = graded_dimension(&w);
    let oracle = check_oracle(&table);
    let in_time = t_build <= Duration::from_secs(300);
    run.line(
        1,
        "partition identity to qweight 40",
        oracle.pass && in_time,
        true,
        format!("{} buckets, built single-threaded in {:.1?} (limit 300s)", oracle.checked, t_build),
    );

    let (r, t) = timed(|| check_recursion(&table));
    run.suite(2, "recursion to qweight 40", &r, t);

    let (r, t) = timed(|| check_linear_relations(&fs, 24));
    run.suite(3, "linear relations to qweight 24", &r, t);

    let (r, t) = timed(|| check_brackets(&fs, 24, 12));
    run.suite(4, "bracket table, |4n| <= 12, qweight 24", &r, t);

    let (r, t) = timed(|| check_quadratic_relations(&fs, 24, 24));
    run.suite(5, "quadratic families, t <= 6, qweight 24", &r, t);

    let (r, t) = timed(|| check_exact_sequence(&fs, &w, 30));
    run.suite(6, "short exact sequence to qweight 30", &r, t);

    let (r, t) = timed(|| check_presentation(&fs, &w, 16));
    run.suite(7, "presentation to qweight 16", &r, t);

    // 8: Δ and e_{α1}·1 identities must hold; the single global A does not exist
    let (r, t) = timed(|| check_section6(&fs, Section6Config { cutoff: 16, max4: 12 }));
    let global = r.get("global_constant") == Some(&Value::Bool(true));
    let pattern = r.get("constant_matches_4_over_sigma_times_minus_i_pow_charge") == Some(&Value::Bool(true));
    run.line(
        8,
        "shift identities, one global A",
        r.pass && global,
        false,
        format!(
            "{} checks, {:.1?}; delta and e.1 identities {}; A by charge {} (4/sigma * (-i)^charge: {pattern})",
            r.checked,
            t,
            if r.pass { "hold" } else { "FAIL" },
            r.get("constant_by_charge").cloned().unwrap_or(Value::Null),
        ),
    );
    if !(r.pass && pattern) {
        run.unexpected.push("criterion 8 per-charge pattern".into());
    }

    let (r, t) = timed(|| check_ideal_stability(24));
    let consts = format!("b = {}, d = {}", r.get("b").cloned().unwrap_or(Value::Null), r.get("d").cloned().unwrap_or(Value::Null));
    run.suite(9, "ideal stability, t <= 6", &r, t);
    println!("             {consts}");

    // 10: literal ν̂² = −1 on all section elements fails at e_0 and e_{α1+α2}
    let (r, t) = timed(|| check_group(&TwistedGroup::default(), 3));
    let literal = r.get("nu_hat_sq_minus_one_everywhere") == Some(&Value::Bool(true));
    run.line(
        10,
        "group layer, nu-hat^2 = -1 on all section elements",
        r.pass && literal,
        false,
        format!(
            "{} checks, {:.1?}; cocycle, commutators, nu-hat^4, tau, U_T action {}; nu-hat^2 = (-1)^<a,a1+a2>, counterexample to -1: {}",
            r.checked,
            t,
            if r.pass { "hold" } else { "FAIL" },
            r.get("nu_hat_sq_counterexample").cloned().unwrap_or(Value::Null),
        ),
    );
    if !r.pass {
        run.unexpected.push("criterion 10 group identities".into());
    }

    if run.unexpected.is_empty() {
        println!("acceptance: outcomes as documented");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome in {}", run.unexpected.join(", "));
        ExitCode::FAILURE
    }
}
