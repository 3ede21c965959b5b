//! Corpus-wide comparisons between the planar and skein models, and the
//! seeded chord-level cancellation suite.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chord::{epsilon_cancellation, PhiTerm};
use crate::coeff::{q, qf, Q};
use crate::corpus::{cyclic_classes, random_class, random_word, reduced_words, rng, with_pool};
use crate::error::Result;
use crate::graded::{render_wedge_sum, XWord};
use crate::lin::LinComb;
use crate::planar::{
    bracket_classes_geometric, bracket_loops_geometric, delta_geometric, delta_letters_geometric, mu_geometric,
    mu_geometric_letters, standard_loop, standard_loop_letters, KinkPlacement, MuOptions,
};
use crate::skein::{
    b_check, b_hat, bracket_skein_classes, bracket_skein_loops, delta_skein, mu_skein, mu_skein_report, r2_pair,
    r3_pair, render_skein, resolve_double_points, unit_tensor, CrossingState, RawTerm, SkeinClass, SkeinCombo,
    TangleDiagram, TelescopeOrder,
};
use crate::word::{render_loops, render_tensor, render_wedge, CyclicClass, GroupWord, Letter, LoopCombo};

/// Pass/fail summary of a corpus run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub cases: usize,
    pub failures: usize,
    /// First failing case in corpus order.
    pub first_counterexample: Option<String>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(outcomes: Vec<Option<String>>) -> Self {
        let failures = outcomes.iter().filter(|o| o.is_some()).count();
        CorpusReport { cases: outcomes.len(), failures, first_counterexample: outcomes.into_iter().flatten().next() }
    }
}

fn describe<E: std::fmt::Display>(r: std::result::Result<Option<String>, E>) -> Option<String> {
    match r {
        Ok(o) => o,
        Err(e) => Some(e.to_string()),
    }
}

/// Skein and geometric brackets on all unordered pairs of classes of length
/// at most `max_len`.
pub fn crosscheck_bracket(p: usize, max_len: usize) -> CorpusReport {
    let classes = cyclic_classes(p, max_len);
    let pairs: Vec<(usize, usize)> = (0..classes.len()).flat_map(|i| (i..classes.len()).map(move |j| (i, j))).collect();
    let outcomes = with_pool(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&classes[i], &classes[j]);
                describe((|| -> Result<Option<String>> {
                    let g = bracket_classes_geometric(a, b, p)?;
                    let s = bracket_skein_classes(a, b, p)?;
                    Ok((g != s)
                        .then(|| format!("[{a}, {b}]: geometric {} vs skein {}", render_loops(&g), render_loops(&s))))
                })())
            })
            .collect()
    });
    CorpusReport::from_outcomes(outcomes)
}

/// `μ_skein(w) + |1|⊗w = μ(w)` on reduced words and `δ_skein = δ` on
/// classes, all of length at most `max_len`.
pub fn crosscheck_mu(p: usize, max_len: usize) -> CorpusReport {
    let words = reduced_words(p, max_len);
    let classes = cyclic_classes(p, max_len);
    let outcomes = with_pool(|| {
        let mut out: Vec<Option<String>> = words
            .par_iter()
            .map(|w| {
                describe((|| -> Result<Option<String>> {
                    let s = mu_skein(w, p)?.plus(&unit_tensor(w));
                    let g = mu_geometric(w, p)?;
                    Ok((s != g).then(|| {
                        format!("μ({w}): geometric {} vs skein + |1|⊗w {}", render_tensor(&g), render_tensor(&s))
                    }))
                })())
            })
            .collect();
        out.par_extend(classes.par_iter().map(|c| {
            describe((|| -> Result<Option<String>> {
                let x = LoopCombo::basis(c.clone());
                let s = delta_skein(&x, p)?;
                let g = delta_geometric(&x, p)?;
                Ok((s != g).then(|| format!("δ({c}): geometric {} vs skein {}", render_wedge(&g), render_wedge(&s))))
            })())
        }));
        out
    });
    CorpusReport::from_outcomes(outcomes)
}

fn random_xword<R: Rng>(r: &mut R, letters: u16, max_len: usize) -> XWord {
    let n = r.gen_range(0..=max_len);
    XWord((0..n).map(|_| r.gen_range(1..=letters)).collect())
}

/// Both cancellations for `trials` seeded random `(B, v, w)` with words of
/// length at most four over three letters.
pub fn epsilon_suite(trials: usize, seed: u64) -> CorpusReport {
    let mut r = rng(seed);
    let mut outcomes = Vec::with_capacity(trials);
    for _ in 0..trials {
        let b = random_xword(&mut r, 3, 4);
        let v = random_xword(&mut r, 3, 4);
        let w = random_xword(&mut r, 3, 4);
        let coeff = qf(r.gen_range(-6..=6i64), r.gen_range(1..=6i64));
        let x = PhiTerm { v: v.clone(), w: w.clone(), coeff };
        let (e1, e2) = epsilon_cancellation(&b, &x);
        outcomes.push((!e1.is_zero() || !e2.is_zero()).then(|| {
            format!("B = {b}, v = {v}, w = {w}: ε₁ = {}, ε₂ = {}", render_wedge_sum(&e1), render_wedge_sum(&e2))
        }));
    }
    CorpusReport::from_outcomes(outcomes)
}

/// Counts of nonzero outputs, used to show a corpus run is not vacuous.
pub fn nonzero_brackets(p: usize, max_len: usize) -> usize {
    let classes = cyclic_classes(p, max_len);
    let mut n = 0;
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i..] {
            if bracket_classes_geometric(a, b, p).map(|x: LinComb<_, _>| !x.is_zero()).unwrap_or(false) {
                n += 1;
            }
        }
    }
    n
}

// ---------------------------------------------------------------------------
// Division by b

fn random_q<R: Rng>(r: &mut R) -> Q {
    let n = loop {
        let n = r.gen_range(-9..=9i64);
        if n != 0 {
            break n;
        }
    };
    qf(n, r.gen_range(1..=4i64))
}

fn random_skein_class<R: Rng>(r: &mut R, p: usize) -> SkeinClass {
    let circles = (0..r.gen_range(0..=3)).map(|_| random_class(r, p, 3)).collect();
    let bottoms = (0..r.gen_range(0..=1))
        .map(|_| {
            let n = r.gen_range(0..=3);
            random_word(r, p, n)
        })
        .collect();
    SkeinClass::new(circles, bottoms)
}

/// A random `/1` element with one to three terms.
pub fn random_skein_combo<R: Rng>(r: &mut R, p: usize) -> SkeinCombo {
    let mut x = SkeinCombo::new();
    for _ in 0..r.gen_range(1..=3) {
        x.add_term(random_skein_class(r, p), random_q(r));
    }
    x
}

fn raw(d: TangleDiagram, coeff: Q, b_power: u32) -> RawTerm {
    RawTerm { diagram: d, coeff, b_power }
}

/// `D - D'` at `b` powers zero and one.
fn annihilates(d: &TangleDiagram, d2: &TangleDiagram, what: &str) -> Result<Option<String>> {
    for k in 0..2 {
        let v = b_check(&[raw(d.clone(), q(1), k), raw(d2.clone(), q(-1), k)])?;
        if !v.is_zero() {
            return Ok(Some(format!("{what} at b^{k}: {}", render_skein(&v))));
        }
    }
    Ok(None)
}

fn random_two_loop_diagram<R: Rng>(r: &mut R, p: usize) -> Result<TangleDiagram> {
    let a = random_class(r, p, 3);
    let b = random_class(r, p, 3);
    TangleDiagram::ascending(p, vec![standard_loop(&a.representative(), 0), standard_loop(&b.representative(), 1)])
}

/// Results of the division-by-`b` checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisionReport {
    /// `b̌ ∘ b̂ = id` on random `/1` elements.
    pub round_trip: CorpusReport,
    /// `b̌` kills the difference of a diagram and its finger move.
    pub r2: CorpusReport,
    /// `b̌` kills the difference of the two sides of a triangle move.
    pub r3: CorpusReport,
    /// `b̌` kills diagrams with two double points, both directly and after
    /// expanding the double points.
    pub two_double_points: CorpusReport,
    /// Expanding a single double point does not change `b̌`.
    pub one_double_point: CorpusReport,
}

impl DivisionReport {
    pub fn passed(&self) -> bool {
        [&self.round_trip, &self.r2, &self.r3, &self.two_double_points, &self.one_double_point]
            .iter()
            .all(|r| r.passed())
    }
}

/// Seeded division-by-`b` checks on `trials` cases each.
pub fn division_suite(trials: usize, seed: u64, p: usize) -> DivisionReport {
    let mut r = rng(seed);
    let round_trip = (0..trials)
        .map(|_| {
            let x = random_skein_combo(&mut r, p);
            describe((|| -> Result<Option<String>> {
                let back = b_check(&b_hat(&x, p)?)?;
                Ok((back != x).then(|| format!("{} came back as {}", render_skein(&x), render_skein(&back))))
            })())
        })
        .collect();
    let r2 = (0..trials)
        .map(|_| {
            let (a, b) = (random_class(&mut r, p, 3), random_class(&mut r, p, 3));
            describe((|| -> Result<Option<String>> {
                let (d, d2) = r2_pair(&a, &b, p)?;
                if d2.crossings.len() != d.crossings.len() + 2 {
                    return Ok(Some(format!("finger move on ({a}, {b}) did not add two crossings")));
                }
                annihilates(&d, &d2, &format!("finger move on ({a}, {b})"))
            })())
        })
        .collect();
    let mut r3 = Vec::with_capacity(trials);
    while r3.len() < trials {
        let d = match random_two_loop_diagram(&mut r, p) {
            Ok(d) if !d.crossings.is_empty() => d,
            Ok(_) => continue,
            Err(e) => {
                r3.push(Some(e.to_string()));
                continue;
            }
        };
        let idx = r.gen_range(0..d.crossings.len());
        r3.push(describe((|| -> Result<Option<String>> {
            let (t1, t2) = r3_pair(&d, idx)?;
            annihilates(&t1, &t2, &format!("triangle move at crossing {idx}"))
        })()));
    }
    let mut two = Vec::with_capacity(trials);
    let mut one = Vec::with_capacity(trials);
    while two.len() < trials {
        let d = match random_two_loop_diagram(&mut r, p) {
            Ok(d) if d.crossings.len() >= 2 => d,
            Ok(_) => continue,
            Err(e) => {
                two.push(Some(e.to_string()));
                one.push(Some(e.to_string()));
                continue;
            }
        };
        let i = r.gen_range(0..d.crossings.len());
        let j = loop {
            let j = r.gen_range(0..d.crossings.len());
            if j != i {
                break j;
            }
        };
        let c = random_q(&mut r);
        let d1 = d.with_state(i, CrossingState::DoublePoint);
        let d2 = d1.with_state(j, CrossingState::DoublePoint);
        two.push(describe((|| -> Result<Option<String>> {
            let t = [raw(d2.clone(), c.clone(), 0)];
            let direct = b_check(&t)?;
            let expanded = b_check(&resolve_double_points(&t))?;
            Ok((!direct.is_zero() || !expanded.is_zero()).then(|| {
                format!("double points at {i}, {j}: {} and expanded {}", render_skein(&direct), render_skein(&expanded))
            }))
        })()));
        one.push(describe((|| -> Result<Option<String>> {
            let t = [raw(d1.clone(), c.clone(), 0)];
            let direct = b_check(&t)?;
            let expanded = b_check(&resolve_double_points(&t))?;
            Ok((direct != expanded).then(|| {
                format!("double point at {i}: {} but expanded {}", render_skein(&direct), render_skein(&expanded))
            }))
        })()));
    }
    DivisionReport {
        round_trip: CorpusReport::from_outcomes(round_trip),
        r2: CorpusReport::from_outcomes(r2),
        r3: CorpusReport::from_outcomes(r3),
        two_double_points: CorpusReport::from_outcomes(two),
        one_double_point: CorpusReport::from_outcomes(one),
    }
}

// ---------------------------------------------------------------------------
// Independence of representatives

/// Which change of representative a well-definedness check applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentativeChange {
    Conjugation,
    CancellingPair,
    Layer,
    KinkPlacement,
    TelescopingOrder,
}

impl RepresentativeChange {
    pub const ALL: [RepresentativeChange; 5] = [
        RepresentativeChange::Conjugation,
        RepresentativeChange::CancellingPair,
        RepresentativeChange::Layer,
        RepresentativeChange::KinkPlacement,
        RepresentativeChange::TelescopingOrder,
    ];
}

impl std::fmt::Display for RepresentativeChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RepresentativeChange::Conjugation => "conjugation",
            RepresentativeChange::CancellingPair => "cancelling pair",
            RepresentativeChange::Layer => "layer choice",
            RepresentativeChange::KinkPlacement => "kink placement",
            RepresentativeChange::TelescopingOrder => "telescoping order",
        })
    }
}

fn random_letter<R: Rng>(r: &mut R, p: usize) -> Letter {
    Letter::new(r.gen_range(1..=p as u16), if r.gen_bool(0.5) { 1 } else { -1 })
}

fn with_cancelling_pair<R: Rng>(r: &mut R, w: &[Letter], p: usize) -> Vec<Letter> {
    let l = random_letter(r, p);
    let at = r.gen_range(0..=w.len());
    let mut v = w[..at].to_vec();
    v.extend([l, l.inverse()]);
    v.extend_from_slice(&w[at..]);
    v
}

fn conjugated<R: Rng>(r: &mut R, w: &[Letter], p: usize) -> Vec<Letter> {
    let n = r.gen_range(1..=2);
    let u = random_word(r, p, n);
    let mut v = u.letters().to_vec();
    v.extend_from_slice(w);
    v.extend(u.inverse().letters().iter().copied());
    v
}

fn random_placement<R: Rng>(r: &mut R) -> KinkPlacement {
    [KinkPlacement::Start, KinkPlacement::StartShifted, KinkPlacement::End][r.gen_range(0..3)]
}

fn random_order<R: Rng>(r: &mut R) -> TelescopeOrder {
    if r.gen_bool(0.25) {
        TelescopeOrder::Reverse
    } else {
        TelescopeOrder::Shuffled(r.gen())
    }
}

fn mismatch<T: PartialEq>(what: &str, reference: &T, other: &T, show: impl Fn(&T) -> String) -> Option<String> {
    (reference != other).then(|| format!("{what}: {} vs {}", show(reference), show(other)))
}

struct Case {
    a: CyclicClass,
    b: CyclicClass,
    w: GroupWord,
}

fn invariance_case(change: RepresentativeChange, case: &Case, p: usize, r: &mut impl Rng) -> Result<Option<String>> {
    use RepresentativeChange as C;
    let Case { a, b, w } = case;
    let (ra, rb) = (a.representative(), b.representative());
    let bracket = bracket_classes_geometric(a, b, p)?;
    let delta = delta_geometric(&LoopCombo::basis(a.clone()), p)?;
    let mu = mu_geometric(w, p)?;
    let label = |s: &str| format!("{change} on {s}");
    let checks: Vec<Option<String>> = match change {
        C::Conjugation | C::CancellingPair => {
            let alter = |r: &mut _, v: &[Letter]| {
                if change == C::Conjugation {
                    conjugated(r, v, p)
                } else {
                    with_cancelling_pair(r, v, p)
                }
            };
            let la = alter(r, ra.letters());
            let lb = alter(r, rb.letters());
            let (sa, sb) = (standard_loop_letters(&la, 0), standard_loop_letters(&lb, 1));
            let mut v = vec![
                mismatch(
                    &label(&format!("[{a}, {b}] geometric")),
                    &bracket,
                    &bracket_loops_geometric(&sa, &sb, p)?,
                    render_loops,
                ),
                mismatch(
                    &label(&format!("[{a}, {b}] skein")),
                    &bracket,
                    &bracket_skein_loops(&sa, &sb, p, TelescopeOrder::Forward)?,
                    render_loops,
                ),
                mismatch(
                    &label(&format!("δ({a})")),
                    &delta,
                    &delta_letters_geometric(&la, p, MuOptions::default())?,
                    render_wedge,
                ),
            ];
            if change == C::CancellingPair {
                let lw = with_cancelling_pair(r, w.letters(), p);
                let skein =
                    mu_skein_report(&lw, p, MuOptions::default(), TelescopeOrder::Forward)?.value.plus(&unit_tensor(w));
                v.push(mismatch(
                    &label(&format!("μ({w}) geometric")),
                    &mu,
                    &mu_geometric_letters(&lw, p, MuOptions::default())?,
                    render_tensor,
                ));
                v.push(mismatch(&label(&format!("μ({w}) skein")), &mu, &skein, render_tensor));
            }
            v
        }
        C::Layer => {
            let i = r.gen_range(0..7u8);
            let j = loop {
                let j = r.gen_range(0..7u8);
                if j != i {
                    break j;
                }
            };
            let (sa, sb) = (standard_loop(&ra, i), standard_loop(&rb, j));
            let opts = MuOptions { layer: r.gen_range(0..7u8), placement: KinkPlacement::Start };
            let skein = mu_skein_report(w.letters(), p, opts, TelescopeOrder::Forward)?.value.plus(&unit_tensor(w));
            vec![
                mismatch(
                    &label(&format!("[{a}, {b}] on layers {i}, {j} geometric")),
                    &bracket,
                    &bracket_loops_geometric(&sa, &sb, p)?,
                    render_loops,
                ),
                mismatch(
                    &label(&format!("[{a}, {b}] on layers {i}, {j} skein")),
                    &bracket,
                    &bracket_skein_loops(&sa, &sb, p, TelescopeOrder::Forward)?,
                    render_loops,
                ),
                mismatch(
                    &label(&format!("μ({w}) on layer {}", opts.layer)),
                    &mu,
                    &mu_geometric_letters(w.letters(), p, opts)?,
                    render_tensor,
                ),
                mismatch(&label(&format!("μ({w}) skein on layer {}", opts.layer)), &mu, &skein, render_tensor),
                mismatch(
                    &label(&format!("δ({a}) on layer {}", opts.layer)),
                    &delta,
                    &delta_letters_geometric(ra.letters(), p, opts)?,
                    render_wedge,
                ),
            ]
        }
        C::KinkPlacement => {
            let opts = MuOptions { layer: 0, placement: random_placement(r) };
            let skein = mu_skein_report(w.letters(), p, opts, TelescopeOrder::Forward)?.value.plus(&unit_tensor(w));
            vec![
                mismatch(
                    &label(&format!("μ({w}) {:?}", opts.placement)),
                    &mu,
                    &mu_geometric_letters(w.letters(), p, opts)?,
                    render_tensor,
                ),
                mismatch(&label(&format!("μ({w}) skein {:?}", opts.placement)), &mu, &skein, render_tensor),
                mismatch(
                    &label(&format!("δ({a}) {:?}", opts.placement)),
                    &delta,
                    &delta_letters_geometric(ra.letters(), p, opts)?,
                    render_wedge,
                ),
            ]
        }
        C::TelescopingOrder => {
            let order = random_order(r);
            let (sa, sb) = (standard_loop(&ra, 0), standard_loop(&rb, 1));
            let skein = mu_skein_report(w.letters(), p, MuOptions::default(), order)?.value.plus(&unit_tensor(w));
            vec![
                mismatch(
                    &label(&format!("[{a}, {b}] {order:?}")),
                    &bracket,
                    &bracket_skein_loops(&sa, &sb, p, order)?,
                    render_loops,
                ),
                mismatch(&label(&format!("μ({w}) {order:?}")), &mu, &skein, render_tensor),
            ]
        }
    };
    Ok(checks.into_iter().flatten().next())
}

/// `trials` seeded cases of one change of representative, comparing
/// brackets, `μ` and `δ` with their values on the standard representatives.
pub fn invariance_suite(change: RepresentativeChange, trials: usize, seed: u64, p: usize) -> CorpusReport {
    let mut r = rng(seed);
    let outcomes = (0..trials)
        .map(|_| {
            let case = Case {
                a: random_class(&mut r, p, 3),
                b: random_class(&mut r, p, 3),
                w: {
                    let n = r.gen_range(0..=4);
                    random_word(&mut r, p, n)
                },
            };
            describe(invariance_case(change, &case, p, &mut r))
        })
        .collect();
    CorpusReport::from_outcomes(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpora_pass() {
        assert!(crosscheck_bracket(2, 2).passed());
        assert!(crosscheck_mu(2, 2).passed());
        assert!(epsilon_suite(20, 1).passed());
        assert!(division_suite(10, 1, 2).passed());
        for c in RepresentativeChange::ALL {
            assert!(invariance_suite(c, 5, 1, 2).passed(), "{c}");
        }
    }

    #[test]
    fn brackets_in_the_corpus_are_not_all_zero() {
        assert_eq!(nonzero_brackets(2, 2), 1);
        assert_eq!(nonzero_brackets(2, 3), 25);
    }

    #[test]
    fn a_lone_finger_move_is_seen_by_division() {
        let mut r = rng(3);
        let seen = (0..20).any(|_| {
            let (a, b) = (random_class(&mut r, 2, 2), random_class(&mut r, 2, 2));
            let (_, d2) = r2_pair(&a, &b, 2).unwrap();
            !b_check(&[raw(d2, q(1), 0)]).unwrap().is_zero()
        });
        assert!(seen);
    }

    #[test]
    fn a_wrong_bracket_is_reported() {
        let r = CorpusReport::from_outcomes(vec![None, Some("bad".into()), Some("worse".into())]);
        assert_eq!((r.cases, r.failures, r.first_counterexample.as_deref()), (3, 2, Some("bad")));
        assert!(!r.passed());
    }
}
