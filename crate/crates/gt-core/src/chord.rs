//! Chord diagrams on a skeleton of circles and bottom intervals with poles,
//! their normal forms in the `/1` and `1/2` quotients, admissible 4T
//! instances, the flip, the algebraic correction maps `λ^alg` and the
//! two-strand Conway/exponential identity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coeff::{q, qf, Q};
use crate::error::{GtError, Result};
use crate::graded::{CycWord, WedgeSum, XWord};
use crate::lin::LinComb;

/// Kind of a skeleton component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Circle,
    Bottom,
    /// Pole `i` (1-based, the letter `x_i`).
    Pole(u16),
}

/// A chord diagram. Components are listed circles first, then bottom
/// intervals, then poles `1..=p`; each holds the chord ids met along it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    pub circles: usize,
    pub bottoms: usize,
    pub poles: usize,
    pub comps: Vec<Vec<u32>>,
    pub a_power: u32,
}

/// One end of a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub comp: usize,
    pub index: usize,
}

impl ChordDiagram {
    pub fn empty(circles: usize, bottoms: usize, poles: usize) -> Self {
        ChordDiagram { circles, bottoms, poles, comps: vec![vec![]; circles + bottoms + poles], a_power: 0 }
    }

    /// Builds a diagram from chord end pairs; chord `k` joins `chords[k].0`
    /// and `chords[k].1`, and sites on a component are ordered by index.
    pub fn from_chords(
        circles: usize,
        bottoms: usize,
        poles: usize,
        chords: &[(Site, Site)],
        a_power: u32,
    ) -> Result<Self> {
        let n = circles + bottoms + poles;
        let mut placed: Vec<Vec<(usize, u32)>> = vec![vec![]; n];
        for (k, (s, t)) in chords.iter().enumerate() {
            for site in [s, t] {
                if site.comp >= n {
                    return Err(GtError::Input(format!("component {} does not exist", site.comp)));
                }
                placed[site.comp].push((site.index, k as u32));
            }
        }
        let mut comps = Vec::with_capacity(n);
        for mut v in placed {
            v.sort();
            if v.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(GtError::Input("two chord ends share a site".into()));
            }
            comps.push(v.into_iter().map(|(_, k)| k).collect());
        }
        let d = ChordDiagram { circles, bottoms, poles, comps, a_power };
        d.validate()?;
        Ok(d)
    }

    pub fn kind(&self, comp: usize) -> Component {
        if comp < self.circles {
            Component::Circle
        } else if comp < self.circles + self.bottoms {
            Component::Bottom
        } else {
            Component::Pole((comp - self.circles - self.bottoms + 1) as u16)
        }
    }

    pub fn is_pole(&self, comp: usize) -> bool {
        matches!(self.kind(comp), Component::Pole(_))
    }

    /// The two ends of every chord, in order of appearance.
    pub fn ends(&self) -> BTreeMap<u32, Vec<Site>> {
        let mut m: BTreeMap<u32, Vec<Site>> = BTreeMap::new();
        for (comp, v) in self.comps.iter().enumerate() {
            for (index, &k) in v.iter().enumerate() {
                m.entry(k).or_default().push(Site { comp, index });
            }
        }
        m
    }

    pub fn chord_count(&self) -> usize {
        self.comps.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn validate(&self) -> Result<()> {
        if self.comps.len() != self.circles + self.bottoms + self.poles {
            return Err(GtError::Input("component count does not match the skeleton".into()));
        }
        for (k, e) in self.ends() {
            if e.len() != 2 {
                return Err(GtError::Input(format!("chord {k} has {} ends", e.len())));
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.ends().values().all(|e| !(self.is_pole(e[0].comp) && self.is_pole(e[1].comp)))
    }

    fn check_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(GtError::Inadmissible("a chord joins two poles".into()))
        }
    }

    fn strand_strand(&self) -> Vec<u32> {
        self.ends()
            .into_iter()
            .filter(|(_, e)| !self.is_pole(e[0].comp) && !self.is_pole(e[1].comp))
            .map(|(k, _)| k)
            .collect()
    }

    /// `#chords + a-power`.
    pub fn t_degree(&self) -> usize {
        self.chord_count() + self.a_power as usize
    }

    /// `#strand-strand chords + a-power`.
    pub fn s_degree(&self) -> usize {
        self.strand_strand().len() + self.a_power as usize
    }

    /// Letter read at a strand position (the pole its chord goes to).
    fn pole_letter(&self, ends: &BTreeMap<u32, Vec<Site>>, chord: u32) -> Option<u16> {
        ends[&chord].iter().find_map(|s| match self.kind(s.comp) {
            Component::Pole(i) => Some(i),
            _ => None,
        })
    }

    /// Mirror image: strand and pole sequences reversed, sign `(-1)^s`.
    pub fn flip(&self) -> (ChordDiagram, i32) {
        let mut out = self.clone();
        for v in &mut out.comps {
            v.reverse();
        }
        let sign = if self.s_degree().is_multiple_of(2) { 1 } else { -1 };
        (out, sign)
    }

    /// Inserts a new chord with the given two insertion slots. Each slot is
    /// `(component, index)` with `index` counted in the current sequence;
    /// when both slots are on the same component the second index refers
    /// to the sequence after the first insertion.
    fn with_chord(&self, first: (usize, usize), second: (usize, usize)) -> ChordDiagram {
        let mut out = self.clone();
        let id = self.ends().keys().next_back().map_or(0, |k| k + 1);
        out.comps[first.0].insert(first.1, id);
        out.comps[second.0].insert(second.1, id);
        out
    }
}

/// The `/1` normal form: pole words on each strand component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChordWord {
    pub circles: Vec<CycWord>,
    pub bottoms: Vec<XWord>,
}

impl ChordWord {
    pub fn new(mut circles: Vec<CycWord>, bottoms: Vec<XWord>) -> Self {
        circles.sort();
        ChordWord { circles, bottoms }
    }

    pub fn bottom(w: XWord) -> Self {
        ChordWord { circles: vec![], bottoms: vec![w] }
    }

    /// Reverses every word.
    pub fn reversed(&self) -> ChordWord {
        let rev = |v: &[u16]| v.iter().rev().copied().collect::<Vec<_>>();
        ChordWord::new(
            self.circles.iter().map(|c| CycWord::new(&rev(c.letters()))).collect(),
            self.bottoms.iter().map(|b| XWord(rev(b.letters()))).collect(),
        )
    }
}

impl std::fmt::Display for ChordWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.circles.iter().map(|c| c.to_string()).collect();
        parts.extend(self.bottoms.iter().map(|b| format!("[{b}]")));
        if parts.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&parts.join(" ⊔ "))
        }
    }
}

pub type ChordCombo = LinComb<ChordWord, Q>;

/// Which quotient a normal form is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quotient {
    /// s-degree 0.
    One,
    /// s-degree exactly 1, recorded as the coefficient of `a`.
    Half,
}

/// Reads the pole words of a diagram whose strand components carry only
/// strand-pole chords (`skip` chord ends are ignored).
fn read_words(d: &ChordDiagram, seqs_circles: &[Vec<u32>], seqs_bottoms: &[Vec<u32>]) -> ChordWord {
    let ends = d.ends();
    let read = |v: &[u32]| v.iter().filter_map(|&k| d.pole_letter(&ends, k)).collect::<Vec<u16>>();
    ChordWord::new(
        seqs_circles.iter().map(|c| CycWord::new(&read(c))).collect(),
        seqs_bottoms.iter().map(|b| XWord(read(b))).collect(),
    )
}

/// Oriented smoothing of strand-strand chord `k`: the component sequences
/// are cut at both ends and re-joined.
fn smooth(d: &ChordDiagram, k: u32) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let e = &d.ends()[&k];
    let (a, b) = (e[0], e[1]);
    let mut circles: Vec<Vec<u32>> = Vec::new();
    let mut bottoms: Vec<Vec<u32>> = Vec::new();
    for (i, v) in d.comps.iter().enumerate() {
        if i == a.comp || i == b.comp || d.is_pole(i) {
            continue;
        }
        match d.kind(i) {
            Component::Circle => circles.push(v.clone()),
            _ => bottoms.push(v.clone()),
        }
    }
    let sa = &d.comps[a.comp];
    let sb = &d.comps[b.comp];
    let around = |s: &[u32], i: usize| [&s[i + 1..], &s[..i]].concat();
    let ka = d.kind(a.comp);
    let kb = d.kind(b.comp);
    if a.comp == b.comp {
        let inner = sa[a.index + 1..b.index].to_vec();
        circles.push(inner);
        let outer = [&sa[b.index + 1..], &sa[..a.index]].concat();
        if ka == Component::Circle {
            circles.push(outer);
        } else {
            bottoms.push([&sa[..a.index], &sa[b.index + 1..]].concat());
        }
        return (circles, bottoms);
    }
    match (ka, kb) {
        (Component::Circle, Component::Circle) => {
            circles.push([around(sa, a.index), around(sb, b.index)].concat());
        }
        (Component::Bottom, Component::Bottom) => {
            bottoms.push([&sa[..a.index], &sb[b.index + 1..]].concat());
            bottoms.push([&sb[..b.index], &sa[a.index + 1..]].concat());
        }
        _ => {
            let (c, ci, o, oi) =
                if ka == Component::Circle { (sa, a.index, sb, b.index) } else { (sb, b.index, sa, a.index) };
            bottoms.push([&o[..oi], &around(c, ci)[..], &o[oi + 1..]].concat());
        }
    }
    (circles, bottoms)
}

/// Normal form of a diagram in the given quotient (zero is the empty
/// combination).
pub fn chord_normal_form(d: &ChordDiagram, quotient: Quotient) -> Result<ChordCombo> {
    d.check_admissible()?;
    let ss = d.strand_strand();
    let strands = |d: &ChordDiagram| -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        (d.comps[..d.circles].to_vec(), d.comps[d.circles..d.circles + d.bottoms].to_vec())
    };
    let out = match (quotient, ss.len(), d.a_power) {
        (Quotient::One, 0, 0) => {
            let (c, b) = strands(d);
            ChordCombo::basis(read_words(d, &c, &b))
        }
        (Quotient::Half, 0, 1) => {
            let (c, b) = strands(d);
            ChordCombo::basis(read_words(d, &c, &b))
        }
        (Quotient::Half, 1, 0) => {
            let (c, b) = smooth(d, ss[0]);
            ChordCombo::basis(read_words(d, &c, &b))
        }
        _ => ChordCombo::new(),
    };
    Ok(out)
}

/// Flip on normal forms: words reversed and `a ↦ -a`.
pub fn flip_normal_form(x: &ChordCombo, quotient: Quotient) -> ChordCombo {
    let sign = match quotient {
        Quotient::One => q(1),
        Quotient::Half => q(-1),
    };
    x.map_keys(ChordWord::reversed).scale(&sign)
}

/// An admissible 4T relation: four signed diagrams.
#[derive(Clone, Debug, PartialEq)]
pub struct FourT {
    pub chord: u32,
    pub gap: (usize, usize),
    pub terms: Vec<(ChordDiagram, i32)>,
}

/// All admissible 4T instances built on the chords of `d`: a new chord runs
/// from a gap `z` to just after/before each end of an existing chord.
pub fn four_t_neighbors(d: &ChordDiagram) -> Result<Vec<FourT>> {
    d.check_admissible()?;
    let mut out = Vec::new();
    for (c, e) in d.ends() {
        let (e1, e2) = (e[0], e[1]);
        for zc in 0..d.comps.len() {
            let poles = [e1.comp, e2.comp, zc].iter().filter(|&&x| d.is_pole(x)).count();
            if poles > 1 {
                continue;
            }
            let len = d.comps[zc].len();
            let gaps = if d.kind(zc) == Component::Circle { len.max(1) } else { len + 1 };
            for g in 0..gaps {
                let adjacent = [e1, e2].iter().any(|e| {
                    e.comp == zc
                        && (g == e.index
                            || g == e.index + 1
                            || (d.kind(zc) == Component::Circle && g == 0 && e.index + 1 == len))
                });
                if adjacent {
                    continue;
                }
                let term = |e: Site, after: bool| {
                    let shift = usize::from(zc == e.comp && g <= e.index);
                    let slot = e.index + shift + usize::from(after);
                    d.with_chord((zc, g), (e.comp, slot))
                };
                out.push(FourT {
                    chord: c,
                    gap: (zc, g),
                    terms: vec![(term(e1, true), 1), (term(e1, false), -1), (term(e2, true), 1), (term(e2, false), -1)],
                });
            }
        }
    }
    Ok(out)
}

/// Sum of the normal forms of the lowest s-degree part of a relation, in
/// the quotient matching that degree (higher degrees are trivially zero).
pub fn four_t_defect(rel: &FourT) -> Result<ChordCombo> {
    let s = rel.terms.iter().map(|(d, _)| d.s_degree()).min().unwrap_or(0);
    let quotient = match s {
        0 => Quotient::One,
        1 => Quotient::Half,
        _ => return Ok(ChordCombo::new()),
    };
    let mut out = ChordCombo::new();
    for (d, sign) in &rel.terms {
        if d.s_degree() == s {
            out.add_scaled(&chord_normal_form(d, quotient)?, &q(*sign as i64));
        }
    }
    Ok(out)
}

/// All admissible diagrams on one strand component (`○` or `⌒`) with
/// `chords` chords and `poles` poles. Pole sequences are kept in chord
/// order.
pub fn enumerate_diagrams(circle: bool, poles: usize, chords: usize) -> Vec<ChordDiagram> {
    let (nc, nb) = if circle { (1, 0) } else { (0, 1) };
    let n = 1 + poles;
    // Each chord: (comp, comp) with comp 0 the strand.
    let mut types = vec![(0usize, 0usize)];
    types.extend((1..n).map(|p| (0, p)));
    let mut out = Vec::new();
    let mut choose = vec![0usize; chords];
    loop {
        let pairs: Vec<(usize, usize)> = choose.iter().map(|&i| types[i]).collect();
        let strand_ends: Vec<u32> = pairs
            .iter()
            .enumerate()
            .flat_map(|(k, &(a, b))| [a, b].into_iter().filter(|&c| c == 0).map(move |_| k as u32))
            .collect();
        for seq in distinct_permutations(&strand_ends) {
            let mut comps = vec![seq];
            for p in 1..n {
                comps.push(pairs.iter().enumerate().filter(|(_, &(_, b))| b == p).map(|(k, _)| k as u32).collect());
            }
            out.push(ChordDiagram { circles: nc, bottoms: nb, poles, comps, a_power: 0 });
        }
        let mut i = 0;
        while i < chords {
            choose[i] += 1;
            if choose[i] < types.len() {
                break;
            }
            choose[i] = 0;
            i += 1;
        }
        if i == chords {
            break;
        }
    }
    out
}

fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut items = v.to_vec();
    items.sort();
    let mut out = vec![items.clone()];
    // Lexicographic next-permutation.
    loop {
        let Some(i) = (0..items.len().saturating_sub(1)).rev().find(|&i| items[i] < items[i + 1]) else {
            return out;
        };
        let j = (i + 1..items.len()).rev().find(|&j| items[j] > items[i]).unwrap();
        items.swap(i, j);
        items[i + 1..].reverse();
        out.push(items.clone());
    }
}

// ---------------------------------------------------------------------------
// Lifts and λ^alg

/// Pole-endpoint order of a lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Asc,
    Desc,
}

/// The graded lift of a bottom word: one chord per letter to its pole, pole
/// ends ordered along (ascending) or against (descending) the strand.
pub fn gr_lift(w: &XWord, dir: Direction, p: usize) -> Result<ChordDiagram> {
    if let Some(&g) = w.letters().iter().find(|&&g| g == 0 || g as usize > p) {
        return Err(GtError::IndexOutOfRange { index: g as usize, p });
    }
    let mut comps = vec![(0..w.len() as u32).collect::<Vec<_>>()];
    for pole in 1..=p as u16 {
        let mut v: Vec<u32> =
            w.letters().iter().enumerate().filter(|(_, &g)| g == pole).map(|(k, _)| k as u32).collect();
        if dir == Direction::Desc {
            v.reverse();
        }
        comps.push(v);
    }
    Ok(ChordDiagram { circles: 0, bottoms: 1, poles: p, comps, a_power: 0 })
}

/// `c · v t w`: pole words around one strand-strand chord `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTerm {
    pub v: XWord,
    pub w: XWord,
    pub coeff: Q,
}

impl PhiTerm {
    /// `v t w ↦ -w t v`.
    pub fn flip(&self) -> PhiTerm {
        PhiTerm { v: self.w.clone(), w: self.v.clone(), coeff: -self.coeff.clone() }
    }
}

/// Origin of a chord term in `λ^alg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Phi,
    Twist,
}

/// A term of `λ^alg`: either a bare pole word or `left · t · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalTerm {
    Word { word: XWord, coeff: Q },
    Chord { left: XWord, right: XWord, placement: Direction, swapped: bool, kind: TermKind, coeff: Q },
}

fn xcat(a: &XWord, b: &XWord) -> XWord {
    XWord([a.letters(), b.letters()].concat())
}

/// `λ_a^alg(B) = B + [B, φ] + B·t/2` and
/// `λ_d^alg(B) = B + [φ^♯, B]^{2,1} + (t/2)·B`.
pub fn lambda_alg(b: &XWord, dir: Direction, phi: &[PhiTerm]) -> Vec<FormalTerm> {
    let mut out = vec![FormalTerm::Word { word: b.clone(), coeff: q(1) }];
    let chord = |left: XWord, right: XWord, kind, coeff| FormalTerm::Chord {
        left,
        right,
        placement: dir,
        swapped: dir == Direction::Desc && kind == TermKind::Phi,
        kind,
        coeff,
    };
    let empty = XWord::default();
    for x in phi {
        match dir {
            Direction::Asc => {
                out.push(chord(xcat(b, &x.v), x.w.clone(), TermKind::Phi, x.coeff.clone()));
                out.push(chord(x.v.clone(), xcat(&x.w, b), TermKind::Phi, -x.coeff.clone()));
            }
            Direction::Desc => {
                let f = x.flip();
                out.push(chord(f.v.clone(), xcat(&f.w, b), TermKind::Phi, f.coeff.clone()));
                out.push(chord(xcat(b, &f.v), f.w.clone(), TermKind::Phi, -f.coeff.clone()));
            }
        }
    }
    match dir {
        Direction::Asc => out.push(chord(b.clone(), empty, TermKind::Twist, qf(1, 2))),
        Direction::Desc => out.push(chord(empty, b.clone(), TermKind::Twist, qf(1, 2))),
    }
    out
}

/// Projection of `λ^alg` to the `/1` quotient: the bare words.
pub fn lambda_alg_reduce(terms: &[FormalTerm]) -> LinComb<XWord, Q> {
    let mut out = LinComb::new();
    for t in terms {
        if let FormalTerm::Word { word, coeff } = t {
            out.add_term(word.clone(), coeff.clone());
        }
    }
    out
}

/// `Alt ∘ cl ∘ ǎ` of the chord terms of the given kind: `L t R ↦ |R| ∧ |L|`,
/// with the descending twist read with the strands exchanged.
pub fn a_check_wedge(terms: &[FormalTerm], kind: TermKind) -> WedgeSum {
    let mut out = WedgeSum::new();
    for t in terms {
        if let FormalTerm::Chord { left, right, placement, kind: k, coeff, .. } = t {
            if *k != kind {
                continue;
            }
            let sign = if *k == TermKind::Twist && *placement == Direction::Desc { q(-1) } else { q(1) };
            out.add(right.close(), left.close(), coeff * sign);
        }
    }
    out
}

/// `(ε₁, ε₂)`: the φ and twist contributions of `λ_a^alg - λ_d^alg` after
/// `ǎ`, closure and alternation.
pub fn epsilon_cancellation(b: &XWord, x: &PhiTerm) -> (WedgeSum, WedgeSum) {
    let asc = lambda_alg(b, Direction::Asc, std::slice::from_ref(x));
    let desc = lambda_alg(b, Direction::Desc, std::slice::from_ref(x));
    let e1 = a_check_wedge(&asc, TermKind::Phi).minus(&a_check_wedge(&desc, TermKind::Phi));
    let e2 = a_check_wedge(&asc, TermKind::Twist).minus(&a_check_wedge(&desc, TermKind::Twist));
    (e1, e2)
}

// ---------------------------------------------------------------------------
// Two-strand chord algebra

/// Element of `ℚ[a]⟨id, swap⟩` truncated in `a`: `coeffs[k] = (id, swap)`
/// coefficients of `a^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStrand {
    pub coeffs: Vec<(Q, Q)>,
}

impl TwoStrand {
    pub fn zero(n: usize) -> Self {
        TwoStrand { coeffs: vec![(q(0), q(0)); n + 1] }
    }
    pub fn identity(n: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0].0 = q(1);
        x
    }
    /// The chord between the two strands, equal to `a · swap`.
    pub fn chord(n: usize) -> Self {
        let mut x = Self::zero(n);
        if n >= 1 {
            x.coeffs[1].1 = q(1);
        }
        x
    }
    pub fn swap(n: usize) -> Self {
        let mut x = Self::zero(n);
        x.coeffs[0].1 = q(1);
        x
    }
    /// `a · id`.
    pub fn a(n: usize) -> Self {
        let mut x = Self::zero(n);
        if n >= 1 {
            x.coeffs[1].0 = q(1);
        }
        x
    }
    fn n(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n();
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let (a0, a1) = &self.coeffs[i];
                let (b0, b1) = &o.coeffs[j];
                out.coeffs[i + j].0 += a0 * b0 + a1 * b1;
                out.coeffs[i + j].1 += a0 * b1 + a1 * b0;
            }
        }
        out
    }
    pub fn add(&self, o: &Self) -> Self {
        TwoStrand { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| (&x.0 + &y.0, &x.1 + &y.1)).collect() }
    }
    pub fn scale(&self, c: &Q) -> Self {
        TwoStrand { coeffs: self.coeffs.iter().map(|(x, y)| (x * c, y * c)).collect() }
    }
    /// Truncated exponential by summing powers.
    pub fn exp(&self) -> Self {
        let n = self.n();
        let mut out = Self::identity(n);
        let mut power = Self::identity(n);
        let mut fact = q(1);
        for k in 1..=n {
            power = power.mul(self);
            fact *= q(k as i64);
            out = out.add(&power.scale(&(q(1) / &fact)));
        }
        out
    }
}

/// Degree-by-degree comparison of `(e^{C/2} - e^{-C/2}) · swap` with
/// `(e^{a/2} - e^{-a/2}) · id`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConwayReport {
    pub degree: usize,
    /// `[degree, lhs id, lhs swap, rhs id, rhs swap]` as rational strings.
    pub rows: Vec<[String; 5]>,
    pub passed: bool,
}

pub fn conway_exponential_identity(n: usize) -> Result<ConwayReport> {
    if n == 0 {
        return Err(GtError::Input("truncation degree must be at least 1".into()));
    }
    let half = qf(1, 2);
    let c = TwoStrand::chord(n).scale(&half);
    let lhs = c.exp().add(&c.scale(&q(-1)).exp().scale(&q(-1))).mul(&TwoStrand::swap(n));
    let a = TwoStrand::a(n).scale(&half);
    let rhs = a.exp().add(&a.scale(&q(-1)).exp().scale(&q(-1)));
    let f = crate::coeff::fmt_q;
    let rows = (0..=n)
        .map(|k| [k.to_string(), f(&lhs.coeffs[k].0), f(&lhs.coeffs[k].1), f(&rhs.coeffs[k].0), f(&rhs.coeffs[k].1)])
        .collect();
    Ok(ConwayReport { degree: n, rows, passed: lhs == rhs })
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SkeletonJson {
    pub circles: usize,
    pub bottoms: usize,
    pub poles: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ChordDiagramJson {
    pub skeleton: SkeletonJson,
    /// Each chord as two `[component, position]` sites.
    pub chords: Vec<[[usize; 2]; 2]>,
    pub a_power: u32,
}

impl From<&ChordDiagram> for ChordDiagramJson {
    fn from(d: &ChordDiagram) -> Self {
        ChordDiagramJson {
            skeleton: SkeletonJson { circles: d.circles, bottoms: d.bottoms, poles: d.poles },
            chords: d.ends().values().map(|e| [[e[0].comp, e[0].index], [e[1].comp, e[1].index]]).collect(),
            a_power: d.a_power,
        }
    }
}

impl ChordDiagramJson {
    pub fn to_diagram(&self) -> Result<ChordDiagram> {
        let s = &self.skeleton;
        let chords: Vec<(Site, Site)> = self
            .chords
            .iter()
            .map(|[a, b]| (Site { comp: a[0], index: a[1] }, Site { comp: b[0], index: b[1] }))
            .collect();
        ChordDiagram::from_chords(s.circles, s.bottoms, s.poles, &chords, self.a_power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(comp: usize, index: usize) -> Site {
        Site { comp, index }
    }

    #[test]
    fn pole_words_read_along_the_circle() {
        // Circle meeting poles 3,3,2,2,1,1,2,3 in order.
        let letters = [3u16, 3, 2, 2, 1, 1, 2, 3];
        let chords: Vec<(Site, Site)> =
            letters.iter().enumerate().map(|(k, &g)| (site(0, k), site(g as usize, k))).collect();
        let d = ChordDiagram::from_chords(1, 0, 3, &chords, 0).unwrap();
        let nf = chord_normal_form(&d, Quotient::One).unwrap();
        let want = ChordWord::new(vec![CycWord::new(&letters)], vec![]);
        assert_eq!(nf, ChordCombo::basis(want));
    }

    #[test]
    fn strand_chord_vanishes_in_the_first_quotient() {
        let d = ChordDiagram::from_chords(1, 0, 1, &[(site(0, 0), site(0, 1))], 0).unwrap();
        assert!(chord_normal_form(&d, Quotient::One).unwrap().is_zero());
        let half = chord_normal_form(&d, Quotient::Half).unwrap();
        let two_empty = ChordWord::new(vec![CycWord::empty(), CycWord::empty()], vec![]);
        assert_eq!(half, ChordCombo::basis(two_empty));
    }

    #[test]
    fn pole_pole_chords_are_refused() {
        let d = ChordDiagram::from_chords(0, 1, 2, &[(site(1, 0), site(2, 0))], 0).unwrap();
        assert!(matches!(chord_normal_form(&d, Quotient::One), Err(GtError::Inadmissible(_))));
    }

    #[test]
    fn ascending_lift_reads_back_its_word() {
        let w = XWord(vec![1, 2, 1, 1]);
        for dir in [Direction::Asc, Direction::Desc] {
            let d = gr_lift(&w, dir, 2).unwrap();
            assert_eq!(chord_normal_form(&d, Quotient::One).unwrap(), ChordCombo::basis(ChordWord::bottom(w.clone())));
        }
    }

    #[test]
    fn phi_flip() {
        let x = PhiTerm { v: XWord(vec![1]), w: XWord(vec![2]), coeff: q(3) };
        assert_eq!(x.flip(), PhiTerm { v: XWord(vec![2]), w: XWord(vec![1]), coeff: q(-3) });
        assert_eq!(x.flip().flip(), x);
    }

    #[test]
    fn epsilon_on_single_letters() {
        let x = PhiTerm { v: XWord(vec![2]), w: XWord(vec![3]), coeff: q(1) };
        let (e1, e2) = epsilon_cancellation(&XWord(vec![1]), &x);
        assert!(e1.is_zero() && e2.is_zero());
        let nonzero = a_check_wedge(&lambda_alg(&XWord(vec![1]), Direction::Asc, &[x]), TermKind::Phi);
        assert!(!nonzero.is_zero());
    }

    #[test]
    fn conway_identity_low_degree() {
        let r = conway_exponential_identity(3).unwrap();
        assert!(r.passed);
        assert_eq!(r.rows[1][3], "1");
        assert_eq!(r.rows[3][3], "1/24");
        assert_eq!(r.rows[2][3], "0");
    }

    #[test]
    fn json_round_trip() {
        let d = gr_lift(&XWord(vec![1, 2, 1]), Direction::Desc, 2).unwrap();
        let j = ChordDiagramJson::from(&d);
        let back = serde_json::from_str::<ChordDiagramJson>(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.to_diagram().unwrap().comps.len(), d.comps.len());
        assert_eq!(
            chord_normal_form(&back.to_diagram().unwrap(), Quotient::One).unwrap(),
            chord_normal_form(&d, Quotient::One).unwrap()
        );
    }
}
