//! The associated graded Lie bialgebra on cyclic words in `x1, …, xp`.
//!
//! Elements carry a truncation degree; words longer than it are dropped and
//! binary operations refuse operands with different truncations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_q, parse_q, q, Q};
use crate::error::{GtError, Result};
use crate::lin::LinComb;
use crate::word::{least_rotation, parse_letters, render_letters, render_sum, shortlex, split_terms, Letter, Wedge};

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 8;

/// A word in the letters `x1..xp` (stored as generator indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct XWord(pub Vec<u16>);

/// A cyclic word, stored in least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CycWord(Vec<u16>);

macro_rules! shortlex_ord {
    ($t:ty) => {
        impl Ord for $t {
            fn cmp(&self, other: &Self) -> Ordering {
                shortlex(&self.0, &other.0)
            }
        }
        impl PartialOrd for $t {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
    };
}
shortlex_ord!(XWord);
shortlex_ord!(CycWord);

fn to_letters(v: &[u16]) -> Vec<Letter> {
    v.iter().map(|&g| Letter::pos(g)).collect()
}

fn parse_x(s: &str, p: usize) -> Result<Vec<u16>> {
    let letters = parse_letters(s, 'x', false, 0)?;
    letters
        .into_iter()
        .map(|l| {
            if (l.gen as usize) < 1 || l.gen as usize > p {
                Err(GtError::IndexOutOfRange { index: l.gen as usize, p })
            } else {
                Ok(l.gen)
            }
        })
        .collect()
}

impl XWord {
    pub fn new(v: Vec<u16>) -> Self {
        XWord(v)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn letters(&self) -> &[u16] {
        &self.0
    }
    pub fn parse(s: &str, p: usize) -> Result<Self> {
        Ok(XWord(parse_x(s, p)?))
    }
    pub fn close(&self) -> CycWord {
        CycWord::new(&self.0)
    }
}

impl CycWord {
    pub fn new(v: &[u16]) -> Self {
        CycWord(least_rotation(v))
    }
    pub fn empty() -> Self {
        CycWord(vec![])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn letters(&self) -> &[u16] {
        &self.0
    }
    pub fn parse(s: &str, p: usize) -> Result<Self> {
        Ok(CycWord::new(&parse_x(s, p)?))
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&to_letters(&self.0), 'x'))
    }
}

impl fmt::Display for CycWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", render_letters(&to_letters(&self.0), 'x'))
    }
}

pub type WordSum = LinComb<XWord, Q>;
pub type CycSum = LinComb<CycWord, Q>;
pub type TensorSum = LinComb<(CycWord, XWord), Q>;
pub type WedgeSum = Wedge<CycWord, Q>;
pub type TripleSum = LinComb<(CycWord, CycWord, CycWord), Q>;

/// A value together with its truncation degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Graded<T> {
    pub value: T,
    pub truncation: usize,
}

pub type GradedElement = Graded<WordSum>;
pub type CyclicGradedElement = Graded<CycSum>;
pub type GradedTensor = Graded<TensorSum>;
pub type GradedWedge = Graded<WedgeSum>;

impl<K: Ord + Clone> Graded<LinComb<K, Q>> {
    pub fn new(value: LinComb<K, Q>, truncation: usize, degree: impl Fn(&K) -> usize) -> Self {
        Graded { value: value.filter(|k| degree(k) <= truncation), truncation }
    }
}

fn same_truncation(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(GtError::TruncationMismatch { left: a, right: b })
    }
}

/// Builds a truncated cyclic element, dropping words longer than `n`.
pub fn cyclic_element(value: CycSum, n: usize) -> CyclicGradedElement {
    Graded::new(value, n, CycWord::len)
}

/// Builds a truncated linear element.
pub fn linear_element(value: WordSum, n: usize) -> GradedElement {
    Graded::new(value, n, XWord::len)
}

fn cat(parts: &[&[u16]]) -> Vec<u16> {
    parts.concat()
}

/// Bracket of two cyclic words (given by any rotation).
pub fn gr_bracket_words(z: &[u16], w: &[u16]) -> CycSum {
    let mut out = CycSum::new();
    let (l, m) = (z.len(), w.len());
    for j in 0..l {
        for k in 0..m {
            if z[j] != w[k] {
                continue;
            }
            let plus = cat(&[&w[..k], &z[j + 1..], &z[..=j], &w[k + 1..]]);
            let minus = cat(&[&w[..k], &z[j..], &z[..j], &w[k + 1..]]);
            out.add_term(CycWord::new(&plus), q(1));
            out.add_term(CycWord::new(&minus), q(-1));
        }
    }
    out
}

/// Bilinear graded bracket, `[z, w]`.
pub fn gr_bracket(z: &CyclicGradedElement, w: &CyclicGradedElement) -> Result<CyclicGradedElement> {
    same_truncation(z.truncation, w.truncation)?;
    Ok(cyclic_element(bracket_sum(&z.value, &w.value), z.truncation))
}

/// Untruncated bilinear bracket.
pub fn bracket_sum(z: &CycSum, w: &CycSum) -> CycSum {
    let mut out = CycSum::new();
    for (a, ca) in z {
        for (b, cb) in w {
            out.add_scaled(&gr_bracket_words(&a.0, &b.0), &(ca * cb));
        }
    }
    out
}

/// Self-intersection map of a single word.
pub fn gr_mu_word(w: &[u16]) -> TensorSum {
    let mut out = TensorSum::new();
    let m = w.len();
    for j in 0..m {
        for k in j + 1..m {
            if w[j] != w[k] {
                continue;
            }
            let outside = |from_j: usize| XWord(cat(&[&w[..from_j], &w[k + 1..]]));
            out.add_term((CycWord::new(&w[j..k]), outside(j)), q(1));
            out.add_term((CycWord::new(&w[j + 1..k]), outside(j + 1)), q(-1));
        }
    }
    out
}

pub fn gr_mu(x: &GradedElement) -> GradedTensor {
    let mut out = TensorSum::new();
    for (w, c) in &x.value {
        out.add_scaled(&gr_mu_word(&w.0), c);
    }
    Graded::new(out, x.truncation, |(a, b): &(CycWord, XWord)| a.len() + b.len())
}

/// Cobracket of a single cyclic word (given by any rotation).
pub fn gr_delta_word(w: &[u16]) -> WedgeSum {
    let mut out = WedgeSum::new();
    let m = w.len();
    for j in 0..m {
        for k in j + 1..m {
            if w[j] != w[k] {
                continue;
            }
            let inner = CycWord::new(&w[j..k]);
            let outer = CycWord::new(&cat(&[&w[k + 1..], &w[..j]]));
            out.add(inner, outer, q(1));
            let outer2 = CycWord::new(&cat(&[&w[k..], &w[..j]]));
            let inner2 = CycWord::new(&w[j + 1..k]);
            out.add(outer2, inner2, q(1));
        }
    }
    out
}

pub fn delta_sum(x: &CycSum) -> WedgeSum {
    let mut out = WedgeSum::new();
    for (w, c) in x {
        out.add_assign(&gr_delta_word(&w.0).scale(c));
    }
    out
}

pub fn gr_delta(x: &CyclicGradedElement) -> GradedWedge {
    let mut value = WedgeSum::new();
    for ((a, b), c) in delta_sum(&x.value).iter() {
        if a.len() + b.len() <= x.truncation {
            value.add(a.clone(), b.clone(), c.clone());
        }
    }
    Graded { value, truncation: x.truncation }
}

pub fn gr_trace(x: &GradedElement) -> CyclicGradedElement {
    cyclic_element(x.value.map_keys(XWord::close), x.truncation)
}

/// `Alt ∘ (id ⊗ trace)`.
pub fn alt_trace(t: &TensorSum) -> WedgeSum {
    let mut out = WedgeSum::new();
    for ((a, w), c) in t {
        out.add(a.clone(), w.close(), c.clone());
    }
    out
}

/// `x · (a ∧ b) = [x, a] ∧ b + a ∧ [x, b]`.
pub fn act_on_wedge(x: &CycSum, w: &WedgeSum) -> WedgeSum {
    let mut out = WedgeSum::new();
    for ((a, b), c) in w.iter() {
        for (u, cu) in &bracket_sum(x, &CycSum::basis(a.clone())) {
            out.add(u.clone(), b.clone(), cu * c);
        }
        for (u, cu) in &bracket_sum(x, &CycSum::basis(b.clone())) {
            out.add(a.clone(), u.clone(), cu * c);
        }
    }
    out
}

/// `(1 + τ + τ²)(δ ⊗ 1)δ` with wedges read as antisymmetric tensors.
pub fn cojacobi_sum(x: &CycSum) -> TripleSum {
    let mut out = TripleSum::new();
    let expand = |w: &WedgeSum| -> Vec<(CycWord, CycWord, Q)> {
        w.iter()
            .flat_map(|((a, b), c)| [(a.clone(), b.clone(), c.clone()), (b.clone(), a.clone(), -c.clone())])
            .collect()
    };
    for (a, b, c) in expand(&delta_sum(x)) {
        for (u, v, cu) in expand(&gr_delta_word(&a.0)) {
            let k = &c * &cu;
            out.add_term((u.clone(), v.clone(), b.clone()), k.clone());
            out.add_term((b.clone(), u.clone(), v.clone()), k.clone());
            out.add_term((v, b.clone(), u), k);
        }
    }
    out
}

/// Which identity a [`BialgebraReport`] covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BialgebraAxiom {
    Jacobi,
    Cojacobi,
    Cocycle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BialgebraReport {
    pub kind: BialgebraAxiom,
    pub cases: usize,
    /// Rendered counterexamples, empty on success.
    pub failures: Vec<String>,
}

impl BialgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks one axiom exhaustively over the corpus (unordered triples for
/// Jacobi, ordered pairs for the cocycle condition, single words for
/// co-Jacobi). Truncation is irrelevant: all operations here are exact.
pub fn bialgebra_check(kind: BialgebraAxiom, corpus: &[CycWord]) -> BialgebraReport {
    let mut failures = Vec::new();
    let mut cases = 0;
    let basis = |c: &CycWord| CycSum::basis(c.clone());
    match kind {
        BialgebraAxiom::Jacobi => {
            let pair: Vec<Vec<CycSum>> =
                corpus.iter().map(|a| corpus.iter().map(|b| gr_bracket_words(&a.0, &b.0)).collect()).collect();
            for i in 0..corpus.len() {
                for j in i..corpus.len() {
                    for k in j..corpus.len() {
                        cases += 1;
                        let (x, y, z) = (&corpus[i], &corpus[j], &corpus[k]);
                        let mut s = bracket_sum(&basis(x), &pair[j][k]);
                        s.add_assign(&bracket_sum(&basis(y), &pair[k][i]));
                        s.add_assign(&bracket_sum(&basis(z), &pair[i][j]));
                        if !s.is_zero() {
                            failures.push(format!("jacobi({x}, {y}, {z}) = {}", render_cyc(&s)));
                        }
                    }
                }
            }
        }
        BialgebraAxiom::Cojacobi => {
            for x in corpus {
                cases += 1;
                let s = cojacobi_sum(&basis(x));
                if !s.is_zero() {
                    failures.push(format!("cojacobi({x}) has {} nonzero terms", s.len()));
                }
            }
        }
        BialgebraAxiom::Cocycle => {
            for x in corpus {
                for y in corpus {
                    cases += 1;
                    let lhs = delta_sum(&gr_bracket_words(&x.0, &y.0));
                    let rhs = act_on_wedge(&basis(x), &gr_delta_word(&y.0))
                        .minus(&act_on_wedge(&basis(y), &gr_delta_word(&x.0)));
                    let diff = lhs.minus(&rhs);
                    if !diff.is_zero() {
                        failures.push(format!("cocycle({x}, {y}) = {}", render_wedge_sum(&diff)));
                    }
                }
            }
        }
    }
    BialgebraReport { kind, cases, failures }
}

/// All cyclic words of length at most `max_len` over `p` letters, including
/// the empty one.
pub fn cyclic_words(p: usize, max_len: usize) -> Vec<CycWord> {
    let mut out: Vec<CycWord> = linear_words(p, max_len).iter().map(XWord::close).collect();
    out.sort();
    out.dedup();
    out
}

/// All words of length at most `max_len` over `p` letters.
pub fn linear_words(p: usize, max_len: usize) -> Vec<XWord> {
    let mut out = vec![XWord(vec![])];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Vec<u16>> = layer
            .iter()
            .flat_map(|w: &Vec<u16>| {
                (1..=p as u16).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(next.iter().cloned().map(XWord));
        layer = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Text and JSON

pub fn render_cyc(x: &CycSum) -> String {
    render_sum(x, |k| k.to_string())
}

pub fn render_words(x: &WordSum) -> String {
    render_sum(x, |k| k.to_string())
}

pub fn render_tensor_sum(x: &TensorSum) -> String {
    render_sum(x, |(a, w)| format!("{a} ⊗ {w}"))
}

pub fn render_wedge_sum(x: &WedgeSum) -> String {
    render_sum(x.iter(), |(a, b)| format!("{a} ∧ {b}"))
}

/// Parses `2 |x1 x2| - 1/2 |x3|`-style sums of cyclic words.
pub fn parse_cyc_sum(s: &str, p: usize) -> Result<CycSum> {
    let mut out = CycSum::new();
    for (coeff, body) in split_terms(s)? {
        out.add_term(CycWord::parse(&body, p)?, coeff);
    }
    Ok(out)
}

/// Parses sums of linear words, e.g. `x1 x2 - x2 x1`.
pub fn parse_word_sum(s: &str, p: usize) -> Result<WordSum> {
    let mut out = WordSum::new();
    for (coeff, body) in split_terms(s)? {
        out.add_term(XWord::parse(&body, p)?, coeff);
    }
    Ok(out)
}

/// Splits a signed sum into `(coefficient, term text)`. Terms are separated
/// by ` + ` / ` - `; an optional leading rational is the coefficient.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct GradedTermJson {
    pub coeff: String,
    pub word: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct GradedJson {
    pub truncation: usize,
    pub terms: Vec<GradedTermJson>,
}

pub fn cyc_to_json(x: &CyclicGradedElement) -> GradedJson {
    GradedJson {
        truncation: x.truncation,
        terms: x.value.iter().map(|(k, c)| GradedTermJson { coeff: fmt_q(c), word: k.to_string() }).collect(),
    }
}

pub fn cyc_from_json(j: &GradedJson, p: usize) -> Result<CyclicGradedElement> {
    let mut out = CycSum::new();
    for t in &j.terms {
        let c = parse_q(&t.coeff).ok_or_else(|| GtError::Input(format!("bad rational '{}'", t.coeff)))?;
        out.add_term(CycWord::parse(&t.word, p)?, c);
    }
    Ok(cyclic_element(out, j.truncation))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct GradedPairTermJson {
    pub coeff: String,
    pub left: String,
    pub right: String,
}

pub fn wedge_sum_to_json(x: &WedgeSum) -> Vec<GradedPairTermJson> {
    x.iter()
        .map(|((a, b), c)| GradedPairTermJson { coeff: fmt_q(c), left: a.to_string(), right: b.to_string() })
        .collect()
}

pub fn tensor_sum_to_json(x: &TensorSum) -> Vec<GradedPairTermJson> {
    x.iter()
        .map(|((a, b), c)| GradedPairTermJson { coeff: fmt_q(c), left: a.to_string(), right: b.to_string() })
        .collect()
}
