use std::process::ExitCode;
use std::time::Instant;

use gt_core::chord::conway_exponential_identity;
use gt_core::expansion::symbol_suite;
use gt_core::graded::{
    alt_trace, bialgebra_check, cyclic_words, gr_bracket_words, gr_delta_word, gr_mu_word, linear_words, parse_cyc_sum,
    render_cyc, BialgebraAxiom,
};
use gt_core::suite::{
    crosscheck_bracket, crosscheck_mu, division_suite, epsilon_suite, invariance_suite, CorpusReport,
    RepresentativeChange,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn corpus(label: &str, r: &CorpusReport) -> (bool, String) {
    let mut s = format!("{label} {}/{}", r.cases - r.failures, r.cases);
    if let Some(c) = &r.first_counterexample {
        s.push_str(&format!(" (first failure: {c})"));
    }
    (r.passed() && r.cases > 0, s)
}

fn combine(parts: Vec<(bool, String)>) -> Outcome {
    Outcome {
        passed: parts.iter().all(|(ok, _)| *ok),
        detail: parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join("; "),
    }
}

fn bracket_models() -> Outcome {
    combine([2, 3].iter().map(|&p| corpus(&format!("p={p} class pairs"), &crosscheck_bracket(p, 4))).collect())
}

fn self_intersection_models() -> Outcome {
    combine([2, 3].iter().map(|&p| corpus(&format!("p={p} words and classes"), &crosscheck_mu(p, 4))).collect())
}

fn bialgebra_axioms() -> Outcome {
    let words = cyclic_words(3, 4);
    combine(
        [BialgebraAxiom::Jacobi, BialgebraAxiom::Cojacobi, BialgebraAxiom::Cocycle]
            .into_iter()
            .map(|kind| {
                let r = bialgebra_check(kind, &words);
                let mut s = format!("{kind:?} {}/{}", r.cases - r.failures.len(), r.cases);
                if let Some(f) = r.failures.first() {
                    s.push_str(&format!(" (first failure: {f})"));
                }
                (r.passed() && r.cases > 0, s)
            })
            .collect(),
    )
}

fn graded_consistency() -> Outcome {
    let words = linear_words(3, 6);
    let bad: Vec<_> =
        words.iter().filter(|w| gr_delta_word(w.letters()) != alt_trace(&gr_mu_word(w.letters()))).collect();
    let mut parts = vec![(bad.is_empty(), format!("words {}/{}", words.len() - bad.len(), words.len()))];
    let expected = parse_cyc_sum("|x1 x2^2 x3^2| - |x1 x3^2 x2^2|", 3).expect("example parses");
    let got = gr_bracket_words(&[1, 2, 2], &[2, 3, 3]);
    parts.push((got == expected, format!("[|x1 x2^2|, |x2 x3^2|] = {}", render_cyc(&got))));
    combine(parts)
}

fn division_by_b() -> Outcome {
    let r = division_suite(200, 5, 3);
    combine(vec![
        corpus("round trip", &r.round_trip),
        corpus("finger moves", &r.r2),
        corpus("triangle moves", &r.r3),
        corpus("two double points", &r.two_double_points),
    ])
}

fn symbols() -> Outcome {
    match symbol_suite(2, 3, 6) {
        Ok(s) => Outcome {
            passed: s.failures.is_empty() && s.nontrivial > 0,
            detail: format!(
                "{} bracket and {} cobracket cases, {} nontrivial, {} skipped, {} inconclusive, {} failures{}",
                s.bracket_cases,
                s.cobracket_cases,
                s.nontrivial,
                s.skipped,
                s.inconclusive,
                s.failures.len(),
                s.failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
            ),
        },
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn epsilon() -> Outcome {
    combine(vec![corpus("triples", &epsilon_suite(500, 2024))])
}

fn conway() -> Outcome {
    match conway_exponential_identity(5) {
        Ok(r) => Outcome {
            passed: r.passed && r.rows.len() == 6,
            detail: format!("degrees 0..={} compared, top row {:?}", r.degree, r.rows.last()),
        },
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn representatives() -> Outcome {
    combine(
        RepresentativeChange::ALL
            .iter()
            .enumerate()
            .map(|(k, &c)| corpus(&c.to_string(), &invariance_suite(c, 100, 100 + k as u64, 3)))
            .collect(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("skein bracket equals geometric bracket", bracket_models),
        ("skein mu and delta equal geometric mu and delta", self_intersection_models),
        ("graded Lie bialgebra axioms", bialgebra_axioms),
        ("graded cobracket is the closed graded mu, worked bracket example", graded_consistency),
        ("division by b", division_by_b),
        ("symbol-level bracket and cobracket", symbols),
        ("epsilon cancellation", epsilon),
        ("Conway exponential identity to degree 5", conway),
        ("independence of representatives", representatives),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} [{:.1?}] {}", i + 1, t.elapsed(), o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
