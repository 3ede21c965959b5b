use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gt_core::chord::conway_exponential_identity;
use gt_core::expansion::{cobracket_residual, symbol_suite, ExpansionConfig};
use gt_core::graded::{
    bialgebra_check, cyc_to_json, cyclic_element, cyclic_words, delta_sum, gr_bracket, gr_mu, linear_element,
    parse_cyc_sum, parse_word_sum, render_cyc, render_tensor_sum, render_wedge_sum, tensor_sum_to_json,
    wedge_sum_to_json, BialgebraAxiom,
};
use gt_core::planar::{delta_geometric, goldman_bracket_geometric, mu_geometric};
use gt_core::skein::{bracket_skein, delta_skein, mu_skein};
use gt_core::suite::{
    crosscheck_bracket, crosscheck_mu, division_suite, epsilon_suite, invariance_suite, CorpusReport,
    RepresentativeChange,
};
use gt_core::word::{
    loops_to_json, parse_loop_sum, render_loops, render_tensor, render_wedge, tensor_to_json, wedge_to_json,
};
use gt_core::{GroupWord, GtError};

const MAX_CORPUS_LEN: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "gt", version, about = "Goldman bracket and Turaev cobracket on the punctured disc")]
struct Cli {
    /// Number of punctures.
    #[arg(short = 'p', long = "punctures", global = true)]
    punctures: Option<usize>,
    /// Truncation degree.
    #[arg(short = 'N', long = "degree", global = true)]
    degree: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Maximal word length of an enumerated corpus.
    #[arg(long = "max-len", global = true)]
    max_len: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Geometric,
    Skein,
    Graded,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Goldman bracket of two loop combinations, e.g. "2 |g1 g2| - |g1|".
    Bracket { model: Model, a: String, b: String },
    /// Self-intersection map of a based word.
    Mu { model: Model, w: String },
    /// Enhanced Turaev cobracket of a loop combination.
    Cobracket { model: Model, a: String },
    /// Compare the geometric and skein models on an enumerated corpus.
    Crosscheck { what: Crosscheck },
    /// Run a property suite.
    Check { suite: Suite },
    /// Degree-by-degree residual of the exponential expansion against the
    /// graded cobracket.
    Residual { a: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Crosscheck {
    Bracket,
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Jacobi,
    Cojacobi,
    Cocycle,
    Epsilon,
    ConwayExp,
    Symbols,
    Division,
    Representatives,
}

/// Rendered result of a command.
struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn value(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }
}

fn report(cases: usize, failures: usize, first: Option<&str>, trivial: bool) -> Output {
    let passed = failures == 0;
    let text = match (passed, trivial) {
        (true, true) => "PASS (trivial corpus)".to_string(),
        (true, false) => format!("PASS ({cases} cases)"),
        (false, _) => format!("FAIL ({failures} of {cases} cases; first counterexample: {})", first.unwrap_or("")),
    };
    let json = json!({ "passed": passed, "cases": cases, "failures": failures, "first_counterexample": first });
    Output { text, json, passed }
}

fn corpus_output(r: &CorpusReport, trivial: bool) -> Output {
    report(r.cases, r.failures, r.first_counterexample.as_deref(), trivial)
}

fn within_desk_limits(max_len: usize) -> Result<usize, GtError> {
    if max_len > MAX_CORPUS_LEN {
        return Err(GtError::Input(format!("--max-len {max_len} exceeds the supported bound {MAX_CORPUS_LEN}")));
    }
    Ok(max_len)
}

fn graded_terms(terms: Vec<gt_core::graded::GradedPairTermJson>, n: usize) -> Value {
    json!({ "truncation": n, "terms": terms })
}

fn compute_bracket(model: Model, a: &str, b: &str, p: usize, n: usize) -> Result<Output, GtError> {
    if model == Model::Graded {
        let x = cyclic_element(parse_cyc_sum(a, p)?, n);
        let y = cyclic_element(parse_cyc_sum(b, p)?, n);
        let z = gr_bracket(&x, &y)?;
        return Ok(Output::value(render_cyc(&z.value), serde_json::to_value(cyc_to_json(&z)).unwrap_or(Value::Null)));
    }
    let (x, y) = (parse_loop_sum(a, p)?, parse_loop_sum(b, p)?);
    let z = if model == Model::Geometric { goldman_bracket_geometric(&x, &y, p)? } else { bracket_skein(&x, &y, p)? };
    Ok(Output::value(render_loops(&z), serde_json::to_value(loops_to_json(&z)).unwrap_or(Value::Null)))
}

fn compute_mu(model: Model, w: &str, p: usize, n: usize) -> Result<Output, GtError> {
    if model == Model::Graded {
        let m = gr_mu(&linear_element(parse_word_sum(w, p)?, n));
        return Ok(Output::value(render_tensor_sum(&m.value), graded_terms(tensor_sum_to_json(&m.value), n)));
    }
    let w = GroupWord::parse(w, p)?;
    let t = if model == Model::Geometric { mu_geometric(&w, p)? } else { mu_skein(&w, p)? };
    Ok(Output::value(render_tensor(&t), serde_json::to_value(tensor_to_json(&t)).unwrap_or(Value::Null)))
}

fn compute_cobracket(model: Model, a: &str, p: usize, n: usize) -> Result<Output, GtError> {
    if model == Model::Graded {
        let x = cyclic_element(parse_cyc_sum(a, p)?, n);
        let d = delta_sum(&x.value);
        return Ok(Output::value(render_wedge_sum(&d), graded_terms(wedge_sum_to_json(&d), n)));
    }
    let x = parse_loop_sum(a, p)?;
    let d = if model == Model::Geometric { delta_geometric(&x, p)? } else { delta_skein(&x, p)? };
    Ok(Output::value(render_wedge(&d), serde_json::to_value(wedge_to_json(&d)).unwrap_or(Value::Null)))
}

fn check(suite: Suite, cli: &Cli) -> Result<Output, GtError> {
    let seed = cli.seed.unwrap_or(2024);
    Ok(match suite {
        Suite::Jacobi | Suite::Cojacobi | Suite::Cocycle => {
            let kind = match suite {
                Suite::Jacobi => BialgebraAxiom::Jacobi,
                Suite::Cojacobi => BialgebraAxiom::Cojacobi,
                _ => BialgebraAxiom::Cocycle,
            };
            let words = cyclic_words(cli.punctures.unwrap_or(3), within_desk_limits(cli.max_len.unwrap_or(4))?);
            let r = bialgebra_check(kind, &words);
            report(r.cases, r.failures.len(), r.failures.first().map(String::as_str), false)
        }
        Suite::Epsilon => corpus_output(&epsilon_suite(cli.trials.unwrap_or(500), seed), false),
        Suite::ConwayExp => {
            let r = conway_exponential_identity(cli.degree.unwrap_or(5))?;
            let mut text = String::from("degree  lhs(id)  lhs(swap)  rhs(id)  rhs(swap)\n");
            for row in &r.rows {
                text.push_str(&row.join("  "));
                text.push('\n');
            }
            text.push_str(if r.passed { "PASS" } else { "FAIL" });
            Output { text, json: serde_json::to_value(&r).unwrap_or(Value::Null), passed: r.passed }
        }
        Suite::Symbols => {
            let s = symbol_suite(
                cli.punctures.unwrap_or(2),
                within_desk_limits(cli.max_len.unwrap_or(3))?,
                cli.degree.unwrap_or(6),
            )?;
            let mut o = report(
                s.bracket_cases + s.cobracket_cases,
                s.failures.len(),
                s.failures.first().map(String::as_str),
                false,
            );
            o.json = serde_json::to_value(&s).unwrap_or(Value::Null);
            o.text.push_str(&format!(
                "\n{} nontrivial, {} skipped, {} inconclusive",
                s.nontrivial, s.skipped, s.inconclusive
            ));
            o
        }
        Suite::Division => {
            let r = division_suite(cli.trials.unwrap_or(200), seed, cli.punctures.unwrap_or(3));
            let parts = [
                ("round trip", &r.round_trip),
                ("finger moves", &r.r2),
                ("triangle moves", &r.r3),
                ("two double points", &r.two_double_points),
                ("one double point", &r.one_double_point),
            ];
            let text = parts.iter().map(|(n, c)| format!("{n}: {}", corpus_output(c, false).text)).collect::<Vec<_>>();
            Output { text: text.join("\n"), json: serde_json::to_value(&r).unwrap_or(Value::Null), passed: r.passed() }
        }
        Suite::Representatives => {
            let mut text = Vec::new();
            let mut jsons = serde_json::Map::new();
            let mut passed = true;
            for (k, c) in RepresentativeChange::ALL.into_iter().enumerate() {
                let r = invariance_suite(c, cli.trials.unwrap_or(100), seed + k as u64, cli.punctures.unwrap_or(3));
                passed &= r.passed();
                text.push(format!("{c}: {}", corpus_output(&r, false).text));
                jsons.insert(c.to_string(), serde_json::to_value(&r).unwrap_or(Value::Null));
            }
            Output { text: text.join("\n"), json: Value::Object(jsons), passed }
        }
    })
}

fn run(cli: &Cli) -> Result<Output, GtError> {
    let p = cli.punctures.unwrap_or(3);
    if p == 0 {
        return Err(GtError::Input("the disc needs at least one puncture".into()));
    }
    if cli.degree == Some(0) {
        return Err(GtError::Input("the truncation degree must be at least 1".into()));
    }
    let n = cli.degree.unwrap_or(8);
    match &cli.command {
        Command::Bracket { model, a, b } => compute_bracket(*model, a, b, p, n),
        Command::Mu { model, w } => compute_mu(*model, w, p, n),
        Command::Cobracket { model, a } => compute_cobracket(*model, a, p, n),
        Command::Crosscheck { what } => {
            let p = cli.punctures.unwrap_or(2);
            let max_len = within_desk_limits(cli.max_len.unwrap_or(3))?;
            let r = match what {
                Crosscheck::Bracket => crosscheck_bracket(p, max_len),
                Crosscheck::Mu => crosscheck_mu(p, max_len),
            };
            Ok(corpus_output(&r, max_len == 0))
        }
        Command::Check { suite } => check(*suite, cli),
        Command::Residual { a } => {
            let cfg = ExpansionConfig::new(p, cli.degree.unwrap_or(6))?;
            let r = cobracket_residual(&parse_loop_sum(a, p)?, cfg)?;
            let text = r.by_degree.iter().map(|(d, s)| format!("degree {d}: {s}")).collect::<Vec<_>>().join("\n");
            Ok(Output::value(text, serde_json::to_value(&r).unwrap_or(Value::Null)))
        }
    }
}

fn exit_code(e: &GtError) -> u8 {
    match e {
        GtError::Parse { .. } | GtError::IndexOutOfRange { .. } | GtError::Input(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).unwrap_or_default(),
            };
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    let body = serde_json::to_string_pretty(&json!({ "error": e.to_json() })).unwrap_or_default();
                    let _ = writeln!(std::io::stdout().lock(), "{body}");
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
