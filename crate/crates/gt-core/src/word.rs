//! Free-group words, cyclic classes, and the linear spaces built on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_q, parse_q, q, Coeff, Scalar, Q};
use crate::error::{GtError, Result};
use crate::lin::LinComb;

/// A generator `γ_i` (`inv = false`) or its inverse.
///
/// The derived order is the letter order used for every normal form:
/// index ascending, then the positive letter before the negative one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: u16) -> Self {
        Letter { gen, inv: false }
    }
    pub fn neg(gen: u16) -> Self {
        Letter { gen, inv: true }
    }
    pub fn new(gen: u16, sign: i8) -> Self {
        Letter { gen, inv: sign < 0 }
    }
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
    pub fn sign(self) -> i8 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Compares by length first, then lexicographically.
pub fn shortlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Lexicographically least rotation of `v`.
pub fn least_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for r in 1..n {
        for k in 0..n {
            let a = &v[(r + k) % n];
            let b = &v[(best + k) % n];
            match a.cmp(b) {
                Ordering::Less => {
                    best = r;
                    break;
                }
                Ordering::Greater => break,
                Ordering::Equal => {}
            }
        }
    }
    v[best..].iter().chain(v[..best].iter()).cloned().collect()
}

fn free_reduce(raw: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A freely reduced word in the free group on `γ_1, …, γ_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupWord(Vec<Letter>);

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence (no range check).
    pub fn from_letters(raw: impl IntoIterator<Item = Letter>) -> Self {
        GroupWord(free_reduce(raw))
    }

    /// Convenience constructor from signed indices, e.g. `[1, -2]` for `γ₁γ₂⁻¹`.
    pub fn from_signed(raw: &[i32]) -> Self {
        Self::from_letters(raw.iter().map(|&x| Letter::new(x.unsigned_abs() as u16, x.signum() as i8)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used (0 for the identity).
    pub fn max_gen(&self) -> usize {
        self.0.iter().map(|l| l.gen as usize).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &GroupWord) -> GroupWord {
        group_multiply(self, other)
    }

    pub fn inverse(&self) -> GroupWord {
        group_invert(self)
    }

    pub fn parse(s: &str, p: usize) -> Result<GroupWord> {
        let letters = parse_letters(s, 'g', true, 0)?;
        reduce_word(&letters, p)
    }
}

/// Free reduction with a range check on generator indices.
pub fn reduce_word(raw: &[Letter], p: usize) -> Result<GroupWord> {
    if let Some(bad) = raw.iter().find(|l| l.gen == 0 || l.gen as usize > p) {
        return Err(GtError::IndexOutOfRange { index: bad.gen as usize, p });
    }
    Ok(GroupWord::from_letters(raw.iter().copied()))
}

pub fn group_multiply(u: &GroupWord, v: &GroupWord) -> GroupWord {
    GroupWord::from_letters(u.0.iter().chain(v.0.iter()).copied())
}

pub fn group_invert(u: &GroupWord) -> GroupWord {
    GroupWord(u.0.iter().rev().map(|l| l.inverse()).collect())
}

/// A conjugacy class: cyclically reduced word in least rotation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CyclicClass(Vec<Letter>);

impl Ord for CyclicClass {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for CyclicClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CyclicClass {
    /// The class of the constant loop.
    pub fn trivial() -> Self {
        CyclicClass(Vec::new())
    }

    /// Canonical class of any letter sequence read around a closed loop.
    pub fn from_cyclic_letters(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = free_reduce(raw);
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        w = w[lo..hi].to_vec();
        CyclicClass(least_rotation(&w))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// A based representative (the stored rotation).
    pub fn representative(&self) -> GroupWord {
        GroupWord(self.0.clone())
    }

    pub fn parse(s: &str, p: usize) -> Result<CyclicClass> {
        let letters = parse_letters(s, 'g', true, 0)?;
        reduce_word(&letters, p)?;
        Ok(CyclicClass::from_cyclic_letters(letters))
    }
}

pub fn cyclic_canonical(w: &GroupWord) -> CyclicClass {
    CyclicClass::from_cyclic_letters(w.0.iter().copied())
}

pub type PathCombo = LinComb<GroupWord, Coeff>;
pub type LoopCombo = LinComb<CyclicClass, Coeff>;
pub type TensorElement = LinComb<(CyclicClass, GroupWord), Coeff>;

/// Antisymmetric tensors `Σ c · a∧b` stored with `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wedge<K: Ord, S> {
    inner: LinComb<(K, K), S>,
}

impl<K: Ord + Clone, S: Scalar> Default for Wedge<K, S> {
    fn default() -> Self {
        Wedge { inner: LinComb::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> Wedge<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c · a∧b`, rewriting into key order.
    pub fn add(&mut self, a: K, b: K, c: S) {
        match a.cmp(&b) {
            Ordering::Less => self.inner.add_term((a, b), c),
            Ordering::Greater => self.inner.add_term((b, a), -c),
            Ordering::Equal => {}
        }
    }

    /// Adds `c · Alt(a⊗b) = c · a∧b`.
    pub fn add_alt(&mut self, a: K, b: K, c: S) {
        self.add(a, b, c)
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.inner.add_assign(&other.inner);
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.inner.sub_assign(&other.inner);
    }

    pub fn minus(&self, other: &Self) -> Self {
        Wedge { inner: self.inner.minus(&other.inner) }
    }

    pub fn scale(&self, c: &S) -> Self {
        Wedge { inner: self.inner.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(K, K), &S)> {
        self.inner.iter()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn coeff(&self, a: &K, b: &K) -> S {
        match a.cmp(b) {
            Ordering::Less => self.inner.coeff(&(a.clone(), b.clone())),
            Ordering::Greater => -self.inner.coeff(&(b.clone(), a.clone())),
            Ordering::Equal => S::zero(),
        }
    }

    pub fn as_lin(&self) -> &LinComb<(K, K), S> {
        &self.inner
    }
}

pub type WedgeElement = Wedge<CyclicClass, Coeff>;

pub fn wedge_normalize(pairs: impl IntoIterator<Item = (CyclicClass, CyclicClass, Coeff)>) -> WedgeElement {
    let mut w = WedgeElement::new();
    for (a, b, c) in pairs {
        w.add(a, b, c);
    }
    w
}

pub fn trace_to_loops(x: &PathCombo) -> LoopCombo {
    x.map_keys(cyclic_canonical)
}

/// `Alt ∘ (1 ⊗ trace)` on tensors.
pub fn alt_close(t: &TensorElement) -> WedgeElement {
    let mut w = WedgeElement::new();
    for ((a, path), c) in t {
        w.add(a.clone(), cyclic_canonical(path), c.clone());
    }
    w
}

// ---------------------------------------------------------------------------
// Text grammar

/// Parses `g1 g2^-1 g1^2` (or `x1 x2^2` with `prefix = 'x'`), with an optional
/// surrounding `|…|`. The token `1` denotes the empty word.
pub(crate) fn parse_letters(s: &str, prefix: char, allow_negative: bool, offset: usize) -> Result<Vec<Letter>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    let mut end = chars.len();
    while end > i && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    let wrapped = i < end && chars[i] == '|';
    if wrapped {
        if end - i < 2 || chars[end - 1] != '|' {
            return Err(GtError::parse(offset + end, "unterminated '|'"));
        }
        i += 1;
        end -= 1;
    }
    let read_int = |i: &mut usize| -> Option<(i64, usize)> {
        let start = *i;
        if *i < end && chars[*i] == '-' {
            *i += 1;
        }
        let digits = *i;
        while *i < end && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == digits {
            *i = start;
            return None;
        }
        let txt: String = chars[start..*i].iter().collect();
        txt.parse().ok().map(|v| (v, start))
    };
    loop {
        while i < end && chars[i].is_whitespace() {
            i += 1;
        }
        if i >= end {
            break;
        }
        let c = chars[i];
        if c == '1' && (i + 1 >= end || chars[i + 1].is_whitespace()) {
            i += 1;
            continue;
        }
        if c != prefix {
            return Err(GtError::parse(offset + i, format!("expected '{prefix}<index>' but found '{c}'")));
        }
        i += 1;
        let (idx, at) = match read_int(&mut i) {
            Some((v, at)) if v > 0 => (v, at),
            _ => return Err(GtError::parse(offset + i, "expected a positive generator index")),
        };
        let _ = at;
        let mut exp = 1i64;
        if i < end && chars[i] == '^' {
            i += 1;
            match read_int(&mut i) {
                Some((v, at)) => {
                    if v == 0 {
                        return Err(GtError::parse(offset + at, "zero exponent"));
                    }
                    if v < 0 && !allow_negative {
                        return Err(GtError::parse(offset + at, "negative exponents are not allowed here"));
                    }
                    exp = v;
                }
                None => return Err(GtError::parse(offset + i, "expected an exponent after '^'")),
            }
        }
        if idx > u16::MAX as i64 || exp.abs() > 4096 {
            return Err(GtError::parse(offset + i, "index or exponent too large"));
        }
        let l = Letter::new(idx as u16, exp.signum() as i8);
        for _ in 0..exp.abs() {
            out.push(l);
        }
    }
    Ok(out)
}

/// Splits `2 |a| - 1/2 |b| + c` into signed coefficients and term bodies.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(Q, String)>> {
    let s = s.trim();
    if s == "0" {
        return Ok(vec![]);
    }
    let mut terms = Vec::new();
    let mut sign = q(1);
    let mut cur = String::new();
    let mut depth_bar = false;
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let flush = |cur: &mut String, sign: &Q, terms: &mut Vec<(Q, String)>| -> Result<()> {
        let t = cur.trim().to_string();
        cur.clear();
        if t.is_empty() {
            return Ok(());
        }
        let (c, body) = match t.split_once(' ') {
            Some((head, rest)) if parse_q(head).is_some() && !rest.trim().is_empty() => {
                (parse_q(head).unwrap(), rest.trim().to_string())
            }
            _ => (q(1), t),
        };
        terms.push((sign * c, body));
        Ok(())
    };
    while i < chars.len() {
        let ch = chars[i];
        if ch == '|' {
            depth_bar = !depth_bar;
        }
        let spaced = i > 0 && chars[i - 1] == ' ' && chars.get(i + 1) == Some(&' ');
        if !depth_bar && (ch == '+' || ch == '-') && (spaced || (i == 0 && ch == '-')) {
            flush(&mut cur, &sign, &mut terms)?;
            sign = if ch == '-' { q(-1) } else { q(1) };
            i += 1;
            continue;
        }
        cur.push(ch);
        i += 1;
    }
    flush(&mut cur, &sign, &mut terms)?;
    if terms.is_empty() {
        return Err(GtError::parse(0, "empty expression"));
    }
    Ok(terms)
}

/// Parses `2 |g1 g2| - 1/2 |g3|`-style rational sums of free loops.
pub fn parse_loop_sum(s: &str, p: usize) -> Result<LoopCombo> {
    let mut out = LoopCombo::new();
    for (c, body) in split_terms(s)? {
        out.add_term(CyclicClass::parse(&body, p)?, Coeff::rational(c));
    }
    Ok(out)
}

/// Renders letters with run-length exponents: `g1^2 g2^-1`.
pub(crate) fn render_letters(letters: &[Letter], prefix: char) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let n = (j - i) as i64 * letters[i].sign() as i64;
        if n == 1 {
            parts.push(format!("{prefix}{}", letters[i].gen));
        } else {
            parts.push(format!("{prefix}{}^{n}", letters[i].gen));
        }
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.0, 'g'))
    }
}

impl fmt::Display for CyclicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", render_letters(&self.0, 'g'))
    }
}

/// Renders `Σ c·k` as `2 |g1| - 1/2 |g2|`, or `0`.
pub fn render_sum<'a, K: 'a, S: Scalar + 'a>(
    terms: impl IntoIterator<Item = (&'a K, &'a S)>,
    key: impl Fn(&K) -> String,
) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        let mut cs = c.render();
        let negative = cs.starts_with('-') && !cs.starts_with("(");
        if negative {
            cs.remove(0);
        }
        if out.is_empty() {
            if negative {
                out.push('-');
                out.push(' ');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if cs != "1" {
            out.push_str(&cs);
            out.push(' ');
        }
        out.push_str(&key(k));
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn render_loops(x: &LoopCombo) -> String {
    render_sum(x, |k| k.to_string())
}

pub fn render_paths(x: &PathCombo) -> String {
    render_sum(x, |k| k.to_string())
}

pub fn render_tensor(x: &TensorElement) -> String {
    render_sum(x, |(a, w)| format!("{a} ⊗ {w}"))
}

pub fn render_wedge(x: &WedgeElement) -> String {
    render_sum(x.iter(), |(a, b)| format!("{a} ∧ {b}"))
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CoeffJson {
    pub b0: String,
    pub b1: String,
}

impl From<&Coeff> for CoeffJson {
    fn from(c: &Coeff) -> Self {
        CoeffJson { b0: fmt_q(&c.b0), b1: fmt_q(&c.b1) }
    }
}

impl CoeffJson {
    pub fn to_coeff(&self) -> Result<Coeff> {
        let b0 = parse_q(&self.b0).ok_or_else(|| GtError::Input(format!("bad rational '{}'", self.b0)))?;
        let b1 = parse_q(&self.b1).ok_or_else(|| GtError::Input(format!("bad rational '{}'", self.b1)))?;
        Ok(Coeff::new(b0, b1))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WordTermJson {
    pub coeff: CoeffJson,
    pub word: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CombJson {
    pub terms: Vec<WordTermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TensorTermJson {
    pub coeff: CoeffJson,
    #[serde(rename = "loop")]
    pub loop_: String,
    pub path: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TensorJson {
    pub terms: Vec<TensorTermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WedgeTermJson {
    pub coeff: CoeffJson,
    pub left: String,
    pub right: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WedgeJson {
    pub terms: Vec<WedgeTermJson>,
}

pub fn loops_to_json(x: &LoopCombo) -> CombJson {
    CombJson { terms: x.iter().map(|(k, c)| WordTermJson { coeff: c.into(), word: k.to_string() }).collect() }
}

pub fn paths_to_json(x: &PathCombo) -> CombJson {
    CombJson { terms: x.iter().map(|(k, c)| WordTermJson { coeff: c.into(), word: k.to_string() }).collect() }
}

pub fn loops_from_json(j: &CombJson, p: usize) -> Result<LoopCombo> {
    let mut out = LoopCombo::new();
    for t in &j.terms {
        out.add_term(CyclicClass::parse(&t.word, p)?, t.coeff.to_coeff()?);
    }
    Ok(out)
}

pub fn paths_from_json(j: &CombJson, p: usize) -> Result<PathCombo> {
    let mut out = PathCombo::new();
    for t in &j.terms {
        out.add_term(GroupWord::parse(&t.word, p)?, t.coeff.to_coeff()?);
    }
    Ok(out)
}

pub fn tensor_to_json(x: &TensorElement) -> TensorJson {
    TensorJson {
        terms: x
            .iter()
            .map(|((a, w), c)| TensorTermJson { coeff: c.into(), loop_: a.to_string(), path: w.to_string() })
            .collect(),
    }
}

pub fn tensor_from_json(j: &TensorJson, p: usize) -> Result<TensorElement> {
    let mut out = TensorElement::new();
    for t in &j.terms {
        out.add_term((CyclicClass::parse(&t.loop_, p)?, GroupWord::parse(&t.path, p)?), t.coeff.to_coeff()?);
    }
    Ok(out)
}

pub fn wedge_to_json(x: &WedgeElement) -> WedgeJson {
    WedgeJson {
        terms: x
            .iter()
            .map(|((a, b), c)| WedgeTermJson { coeff: c.into(), left: a.to_string(), right: b.to_string() })
            .collect(),
    }
}

pub fn wedge_from_json(j: &WedgeJson, p: usize) -> Result<WedgeElement> {
    let mut out = WedgeElement::new();
    for t in &j.terms {
        out.add(CyclicClass::parse(&t.left, p)?, CyclicClass::parse(&t.right, p)?, t.coeff.to_coeff()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    fn w(x: &[i32]) -> GroupWord {
        GroupWord::from_signed(x)
    }

    #[test]
    fn reduction_examples() {
        assert!(reduce_word(&[Letter::pos(1), Letter::neg(1)], 2).unwrap().is_empty());
        let r = reduce_word(&[Letter::pos(1), Letter::pos(2), Letter::neg(2), Letter::pos(1)], 2).unwrap();
        assert_eq!(r, w(&[1, 1]));
        assert_eq!(reduce_word(&[Letter::pos(2), Letter::neg(1)], 2).unwrap(), w(&[2, -1]));
        assert!(matches!(reduce_word(&[Letter::pos(3)], 2), Err(GtError::IndexOutOfRange { index: 3, p: 2 })));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_canonical(&w(&[1, 2, -1])), cyclic_canonical(&w(&[2])));
        assert_eq!(cyclic_canonical(&w(&[2, 1])).letters(), w(&[1, 2]).letters());
        assert!(cyclic_canonical(&GroupWord::identity()).is_empty());
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2])), w(&[1]));
        assert_eq!(w(&[1, 2]).inverse(), w(&[-2, -1]));
        let u = w(&[1, -2, 1]);
        assert!(u.multiply(&u.inverse()).is_empty());
    }

    #[test]
    fn trace_examples() {
        let one = Coeff::rational(q(1));
        let two = Coeff::rational(q(2));
        let t = trace_to_loops(&PathCombo::term(w(&[1, 2, -1]), two.clone()));
        assert_eq!(t, LoopCombo::term(cyclic_canonical(&w(&[2])), two));
        let mut x = PathCombo::term(w(&[1, 2]), one.clone());
        x.add_term(w(&[2, 1]), -one.clone());
        assert!(trace_to_loops(&x).is_zero());
        let e = trace_to_loops(&PathCombo::basis(GroupWord::identity()));
        assert_eq!(e, LoopCombo::basis(CyclicClass::trivial()));
    }

    #[test]
    fn wedge_examples() {
        let a = cyclic_canonical(&w(&[1]));
        let b = cyclic_canonical(&w(&[2]));
        let one = Coeff::rational(q(1));
        let x = wedge_normalize([(b.clone(), a.clone(), one.clone())]);
        assert_eq!(x.coeff(&a, &b), -one.clone());
        assert!(wedge_normalize([(a.clone(), a.clone(), Coeff::rational(q(5)))]).is_zero());
        assert!(wedge_normalize([(a.clone(), b.clone(), one.clone()), (b, a, one)]).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let x = GroupWord::parse("g1 g2^-1 g1^2", 2).unwrap();
        assert_eq!(x.to_string(), "g1 g2^-1 g1^2");
        assert_eq!(GroupWord::parse("1", 2).unwrap().to_string(), "1");
        assert_eq!(CyclicClass::parse("|g2 g1|", 2).unwrap().to_string(), "|g1 g2|");
        assert!(matches!(GroupWord::parse("g1 h2", 2), Err(GtError::Parse { pos: 3, .. })));
    }

    #[test]
    fn json_round_trip() {
        let mut x = LoopCombo::new();
        x.add_term(CyclicClass::parse("g1 g2", 2).unwrap(), Coeff::new(crate::coeff::qf(3, 2), q(0)));
        x.add_term(CyclicClass::trivial(), Coeff::b_times(q(-1)));
        let s = serde_json::to_string(&loops_to_json(&x)).unwrap();
        assert!(s.contains(r#"{"coeff":{"b0":"3/2","b1":"0"},"word":"|g1 g2|"}"#));
        let back: CombJson = serde_json::from_str(&s).unwrap();
        assert_eq!(loops_from_json(&back, 2).unwrap(), x);
    }
}
