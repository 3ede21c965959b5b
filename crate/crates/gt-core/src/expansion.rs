//! The exponential expansion `γ_i^{±1} ↦ e^{±x_i}` and symbol-level checks
//! comparing the Goldman bracket and Turaev cobracket with their graded
//! counterparts.

use std::collections::HashMap;

use serde::Serialize;

use crate::coeff::{q, Coeff, Q};
use crate::error::{GtError, Result};
use crate::graded::{
    bracket_sum, cyclic_element, delta_sum, linear_element, render_cyc, render_wedge_sum, CycSum, CycWord,
    CyclicGradedElement, GradedElement, WedgeSum, WordSum, XWord,
};
use crate::lin::LinComb;
use crate::planar::{delta_geometric, goldman_bracket_geometric};
use crate::word::{CyclicClass, GroupWord, LoopCombo, WedgeElement};

/// Puncture count and truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionConfig {
    pub p: usize,
    pub n: usize,
}

impl ExpansionConfig {
    pub fn new(p: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GtError::Input("truncation degree must be at least 1".into()));
        }
        Ok(ExpansionConfig { p, n })
    }
}

fn mul_trunc(a: &WordSum, b: &WordSum, n: usize) -> WordSum {
    let mut out = WordSum::new();
    for (u, cu) in a {
        for (v, cv) in b {
            if u.len() + v.len() <= n {
                out.add_term(XWord([u.letters(), v.letters()].concat()), cu * cv);
            }
        }
    }
    out
}

fn exp_letter(gen: u16, sign: i8, n: usize) -> WordSum {
    let mut out = WordSum::new();
    let mut c = q(1);
    for k in 0..=n {
        out.add_term(XWord(vec![gen; k]), c.clone());
        c = c * q(sign as i64) / q(k as i64 + 1);
    }
    out
}

/// `φ(w)`, truncated at degree `N`.
pub fn phi_path(w: &GroupWord, cfg: ExpansionConfig) -> GradedElement {
    let mut acc = WordSum::basis(XWord::default());
    for l in w.letters() {
        acc = mul_trunc(&acc, &exp_letter(l.gen, l.sign(), cfg.n), cfg.n);
    }
    linear_element(acc, cfg.n)
}

/// Product of two truncated series.
pub fn graded_product(a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    if a.truncation != b.truncation {
        return Err(GtError::TruncationMismatch { left: a.truncation, right: b.truncation });
    }
    Ok(linear_element(mul_trunc(&a.value, &b.value, a.truncation), a.truncation))
}

fn rational(c: &Coeff) -> Result<Q> {
    if c.b1 != q(0) {
        return Err(GtError::Input("the expansion is defined on rational combinations only".into()));
    }
    Ok(c.b0.clone())
}

fn phi_class_raw(c: &CyclicClass, cfg: ExpansionConfig) -> CycSum {
    phi_path(&c.representative(), cfg).value.map_keys(XWord::close)
}

/// `φ` on a loop combination (trace of `φ` of representatives).
pub fn phi_loop(x: &LoopCombo, cfg: ExpansionConfig) -> Result<CyclicGradedElement> {
    let mut out = CycSum::new();
    for (c, k) in x {
        out.add_scaled(&phi_class_raw(c, cfg), &rational(k)?);
    }
    Ok(cyclic_element(out, cfg.n))
}

/// Lowest nonzero homogeneous component.
pub fn symbol(x: &CyclicGradedElement) -> Result<(usize, CycSum)> {
    lowest(&x.value, CycWord::len)
        .ok_or_else(|| GtError::UndetectableSymbol(format!("element vanishes up to degree {}", x.truncation)))
}

/// Lowest nonzero homogeneous component of a linear element.
pub fn symbol_linear(x: &GradedElement) -> Result<(usize, WordSum)> {
    lowest(&x.value, XWord::len)
        .ok_or_else(|| GtError::UndetectableSymbol(format!("element vanishes up to degree {}", x.truncation)))
}

fn lowest<K: Ord + Clone>(x: &LinComb<K, Q>, deg: impl Fn(&K) -> usize) -> Option<(usize, LinComb<K, Q>)> {
    let d = x.keys().map(&deg).min()?;
    Some((d, x.filter(|k| deg(k) == d)))
}

/// Outcome of a symbol comparison; `lhs` and `rhs` are rendered.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolReport {
    pub degree_checked: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    /// Whether every component below `degree_checked` vanished.
    pub lower_vanish: bool,
    /// `false` when the truncation is too small to decide.
    pub conclusive: bool,
}

impl SymbolReport {
    pub fn passed(&self) -> bool {
        !self.conclusive || (self.equal && self.lower_vanish)
    }
}

fn input_symbol(x: &LoopCombo, cfg: ExpansionConfig) -> Result<(usize, CycSum)> {
    let (r, s) = symbol(&phi_loop(x, cfg)?)?;
    if r == 0 {
        return Err(GtError::Input("input has nonzero augmentation; subtract it first".into()));
    }
    Ok((r, s))
}

/// Memoized geometric bracket and expansion on classes.
#[derive(Default)]
pub struct SymbolCache {
    brackets: HashMap<(CyclicClass, CyclicClass, usize), LoopCombo>,
    phis: HashMap<(CyclicClass, usize), CycSum>,
    deltas: HashMap<(CyclicClass, usize), WedgeElement>,
}

impl SymbolCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn bracket(&mut self, x: &LoopCombo, y: &LoopCombo, p: usize) -> Result<LoopCombo> {
        let mut out = LoopCombo::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let key = (a.clone(), b.clone(), p);
                if !self.brackets.contains_key(&key) {
                    let v = goldman_bracket_geometric(&LoopCombo::basis(a.clone()), &LoopCombo::basis(b.clone()), p)?;
                    self.brackets.insert(key.clone(), v);
                }
                out.add_scaled(&self.brackets[&key], &(ca.clone() * cb.clone()));
            }
        }
        Ok(out)
    }

    fn delta(&mut self, x: &LoopCombo, p: usize) -> Result<WedgeElement> {
        let mut out = WedgeElement::new();
        for (a, ca) in x {
            let key = (a.clone(), p);
            if !self.deltas.contains_key(&key) {
                self.deltas.insert(key.clone(), delta_geometric(&LoopCombo::basis(a.clone()), p)?);
            }
            out.add_assign(&self.deltas[&key].scale(ca));
        }
        Ok(out)
    }

    fn phi(&mut self, c: &CyclicClass, cfg: ExpansionConfig) -> CycSum {
        self.phis.entry((c.clone(), cfg.n)).or_insert_with(|| phi_class_raw(c, cfg)).clone()
    }

    fn phi_loop(&mut self, x: &LoopCombo, cfg: ExpansionConfig) -> Result<CycSum> {
        let mut out = CycSum::new();
        for (c, k) in x {
            out.add_scaled(&self.phi(c, cfg), &rational(k)?);
        }
        Ok(out)
    }

    fn delta_image(&mut self, a: &LoopCombo, cfg: ExpansionConfig) -> Result<WedgeSum> {
        let delta = self.delta(a, cfg.p)?;
        let mut image = WedgeSum::new();
        for ((x, y), c) in delta.iter() {
            let c = rational(c)?;
            let (px, py) = (self.phi(x, cfg), self.phi(y, cfg));
            for (u, cu) in &px {
                for (v, cv) in &py {
                    if u.len() + v.len() <= cfg.n {
                        image.add(u.clone(), v.clone(), &c * cu * cv);
                    }
                }
            }
        }
        Ok(image)
    }

    /// `(φ⊗φ)(δα) - δ_gr(φ(α))` in every degree below `N`.
    pub fn cobracket_residual(&mut self, a: &LoopCombo, cfg: ExpansionConfig) -> Result<Residual> {
        let image = self.delta_image(a, cfg)?;
        let graded = delta_sum(&self.phi_loop(a, cfg)?);
        let diff = image.minus(&graded);
        let by_degree = (0..cfg.n)
            .map(|d| {
                let mut part = WedgeSum::new();
                for ((u, v), c) in diff.iter().filter(|((u, v), _)| u.len() + v.len() == d) {
                    part.add(u.clone(), v.clone(), c.clone());
                }
                (d, render_wedge_sum(&part))
            })
            .collect::<Vec<_>>();
        let first_nonzero = by_degree.iter().find(|(_, s)| s != "0").map(|(d, _)| *d);
        Ok(Residual { truncation: cfg.n, by_degree, first_nonzero })
    }

    /// Compares the degree `r+s-1` part of `φ([α, β])` with the graded
    /// bracket of the symbols.
    pub fn check_bracket_symbol(&mut self, a: &LoopCombo, b: &LoopCombo, cfg: ExpansionConfig) -> Result<SymbolReport> {
        let (r, sa) = input_symbol(a, cfg)?;
        let (s, sb) = input_symbol(b, cfg)?;
        let d = r + s - 1;
        let rhs = bracket_sum(&sa, &sb);
        if d > cfg.n {
            return Ok(inconclusive(d, render_cyc(&rhs)));
        }
        let bracket = self.bracket(a, b, cfg.p)?;
        let image = self.phi_loop(&bracket, cfg)?;
        let lhs = image.filter(|k| k.len() == d);
        Ok(SymbolReport {
            degree_checked: d,
            equal: lhs == rhs,
            lhs: render_cyc(&lhs),
            rhs: render_cyc(&rhs),
            lower_vanish: image.keys().all(|k| k.len() >= d),
            conclusive: true,
        })
    }

    /// Compares the degree `r-1` part of `(φ⊗φ)(δα)` with the graded
    /// cobracket of the symbol.
    pub fn check_cobracket_symbol(&mut self, a: &LoopCombo, cfg: ExpansionConfig) -> Result<SymbolReport> {
        let (r, sa) = input_symbol(a, cfg)?;
        let d = r - 1;
        let rhs = delta_sum(&sa);
        let image = self.delta_image(a, cfg)?;
        let mut lhs = WedgeSum::new();
        let mut lower_vanish = true;
        for ((u, v), c) in image.iter() {
            let deg = u.len() + v.len();
            if deg == d {
                lhs.add(u.clone(), v.clone(), c.clone());
            } else if deg < d {
                lower_vanish = false;
            }
        }
        Ok(SymbolReport {
            degree_checked: d,
            equal: lhs.as_lin() == rhs.as_lin(),
            lhs: render_wedge_sum(&lhs),
            rhs: render_wedge_sum(&rhs),
            lower_vanish,
            conclusive: true,
        })
    }
}

fn inconclusive(d: usize, rhs: String) -> SymbolReport {
    SymbolReport { degree_checked: d, lhs: String::new(), rhs, equal: false, lower_vanish: true, conclusive: false }
}

/// Failure of the exponential expansion to intertwine the cobracket with its
/// graded counterpart, degree by degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub truncation: usize,
    /// `(degree, rendered residual)` for each degree below the truncation.
    pub by_degree: Vec<(usize, String)>,
    pub first_nonzero: Option<usize>,
}

pub fn cobracket_residual(a: &LoopCombo, cfg: ExpansionConfig) -> Result<Residual> {
    SymbolCache::new().cobracket_residual(a, cfg)
}

pub fn check_bracket_symbol(a: &LoopCombo, b: &LoopCombo, cfg: ExpansionConfig) -> Result<SymbolReport> {
    SymbolCache::new().check_bracket_symbol(a, b, cfg)
}

pub fn check_cobracket_symbol(a: &LoopCombo, cfg: ExpansionConfig) -> Result<SymbolReport> {
    SymbolCache::new().check_cobracket_symbol(a, cfg)
}

/// `|(u_1 - 1)(u_2 - 1)⋯|` expanded into loop classes.
pub fn reduced_product(letters: &[GroupWord]) -> LoopCombo {
    let mut paths: LinComb<GroupWord, Q> = LinComb::basis(GroupWord::identity());
    for u in letters {
        let mut next = LinComb::new();
        for (w, c) in &paths {
            next.add_term(w.multiply(u), c.clone());
            next.add_term(w.clone(), -c.clone());
        }
        paths = next;
    }
    let mut out = LoopCombo::new();
    for (w, c) in &paths {
        out.add_term(crate::word::cyclic_canonical(w), Coeff::rational(c.clone()));
    }
    out
}

/// Augmentation-reduced inputs: `|w| - |1|` for nontrivial classes of
/// length at most `max_len`, and `|(u-1)(v-1)|`, `|(u-1)(v-1)(w-1)|` for
/// single letters.
pub fn symbol_corpus(p: usize, max_len: usize) -> Vec<LoopCombo> {
    let one = || LoopCombo::basis(CyclicClass::trivial());
    let mut out: Vec<LoopCombo> = crate::corpus::cyclic_classes(p, max_len)
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| LoopCombo::basis(c).minus(&one()))
        .collect();
    let letters: Vec<GroupWord> =
        (1..=p as i32).flat_map(|g| [GroupWord::from_signed(&[g]), GroupWord::from_signed(&[-g])]).collect();
    for u in &letters {
        for v in &letters {
            out.push(reduced_product(&[u.clone(), v.clone()]));
        }
    }
    if max_len >= 3 {
        for u in &letters {
            for v in &letters {
                for w in &letters {
                    out.push(reduced_product(&[u.clone(), v.clone(), w.clone()]));
                }
            }
        }
    }
    out.retain(|x| !x.is_zero());
    out
}

/// Summary of a symbol suite run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolSuite {
    pub bracket_cases: usize,
    pub cobracket_cases: usize,
    /// Inputs whose symbol is not visible within the truncation.
    pub skipped: usize,
    pub inconclusive: usize,
    /// Cases whose graded side is nonzero.
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

/// Runs both symbol checks on every element (and every pair) of the corpus.
pub fn symbol_suite(p: usize, max_len: usize, n: usize) -> Result<SymbolSuite> {
    let cfg = ExpansionConfig::new(p, n)?;
    let corpus = symbol_corpus(p, max_len);
    let mut cache = SymbolCache::new();
    let mut suite = SymbolSuite {
        bracket_cases: 0,
        cobracket_cases: 0,
        skipped: 0,
        inconclusive: 0,
        nontrivial: 0,
        failures: vec![],
    };
    let usable: Vec<&LoopCombo> = corpus
        .iter()
        .filter(|x| match input_symbol(x, cfg) {
            Ok(_) => true,
            Err(GtError::UndetectableSymbol(_)) => {
                suite.skipped += 1;
                false
            }
            Err(_) => false,
        })
        .collect();
    for a in &usable {
        let r = cache.check_cobracket_symbol(a, cfg)?;
        suite.cobracket_cases += 1;
        suite.nontrivial += usize::from(r.rhs != "0");
        if !r.passed() {
            suite.failures.push(format!("δ: {} vs {}", r.lhs, r.rhs));
        }
    }
    for (i, a) in usable.iter().enumerate() {
        for b in &usable[i..] {
            let r = cache.check_bracket_symbol(a, b, cfg)?;
            if !r.conclusive {
                suite.inconclusive += 1;
                continue;
            }
            suite.bracket_cases += 1;
            suite.nontrivial += usize::from(r.rhs != "0");
            if !r.passed() {
                suite.failures.push(format!("[,]: {} vs {}", r.lhs, r.rhs));
            }
        }
    }
    Ok(suite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qf;

    fn cfg(n: usize) -> ExpansionConfig {
        ExpansionConfig::new(2, n).unwrap()
    }

    #[test]
    fn exponential_of_a_generator() {
        let x = phi_path(&GroupWord::from_signed(&[1]), cfg(3));
        assert_eq!(x.value.coeff(&XWord(vec![1, 1, 1])), qf(1, 6));
        assert_eq!(x.value.len(), 4);
    }

    #[test]
    fn cancelling_pair_is_one() {
        let x = phi_path(&GroupWord::from_signed(&[1]), cfg(5));
        let y = phi_path(&GroupWord::from_signed(&[-1]), cfg(5));
        assert_eq!(graded_product(&x, &y).unwrap().value, WordSum::basis(XWord::default()));
    }

    #[test]
    fn degree_two_part_of_a_product() {
        let x = phi_path(&GroupWord::from_signed(&[1, 2]), cfg(2));
        let two = x.value.filter(|k| k.len() == 2);
        assert_eq!(two.coeff(&XWord(vec![1, 1])), qf(1, 2));
        assert_eq!(two.coeff(&XWord(vec![1, 2])), q(1));
        assert_eq!(two.coeff(&XWord(vec![2, 1])), q(0));
        assert_eq!(two.coeff(&XWord(vec![2, 2])), qf(1, 2));
    }

    #[test]
    fn symbols_of_reduced_elements() {
        let a = reduced_product(&[GroupWord::from_signed(&[1])]);
        let (d, s) = symbol(&phi_loop(&a, cfg(4)).unwrap()).unwrap();
        assert_eq!((d, s), (1, CycSum::basis(CycWord::new(&[1]))));
        let b = reduced_product(&[GroupWord::from_signed(&[1]), GroupWord::from_signed(&[2])]);
        let (d, s) = symbol(&phi_loop(&b, cfg(4)).unwrap()).unwrap();
        assert_eq!((d, s), (2, CycSum::basis(CycWord::new(&[1, 2]))));
    }

    #[test]
    fn conjugate_classes_cancel() {
        let mut x = LoopCombo::new();
        x.add_term(CyclicClass::parse("g1 g2", 2).unwrap(), Coeff::rational(q(1)));
        x.add_term(CyclicClass::parse("g2 g1", 2).unwrap(), Coeff::rational(q(-1)));
        assert!(matches!(symbol(&phi_loop(&x, cfg(6)).unwrap()), Err(GtError::UndetectableSymbol(_))));
    }

    #[test]
    fn cobracket_symbol_of_a_square() {
        let g = GroupWord::from_signed(&[1]);
        let a = reduced_product(&[g.clone(), g]);
        let r = check_cobracket_symbol(&a, cfg(6)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.rhs, "- 2 |1| ∧ |x1|");
    }

    #[test]
    fn bracket_symbol_example() {
        let a = reduced_product(&[GroupWord::from_signed(&[1]), GroupWord::from_signed(&[2])]);
        let b = reduced_product(&[GroupWord::from_signed(&[1])]);
        let r = check_bracket_symbol(&a, &b, cfg(6)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn residual_starts_above_the_symbol() {
        let (g1, g2) = (GroupWord::from_signed(&[1]), GroupWord::from_signed(&[2]));
        let a = reduced_product(&[g1.clone(), g2.clone(), g1, g2]);
        let r = cobracket_residual(&a, cfg(6)).unwrap();
        assert_eq!(r.by_degree.len(), 6);
        assert_eq!(r.first_nonzero, Some(4));
        assert_eq!(r.by_degree[4].1, "- |1| ∧ |x1 x2 x1 x2|");
    }
}
