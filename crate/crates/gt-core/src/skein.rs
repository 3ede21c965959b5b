//! Tangle diagrams over the bottom projection and their Conway-quotient
//! normal forms modulo `b²`.
//!
//! A diagram is a family of polylines together with an over/under choice at
//! every double point. Normal forms only ever need the per-component
//! homotopy data of a diagram (its `/1` class) and the `b`-linear part
//! produced by switching crossings one at a time:
//! `D₊ - D₋ = b · D₀` with `D₀` the oriented smoothing.
//!
//! Smoothings are computed by cutting and re-joining the polylines at the
//! double point and re-reading the resulting curves from scratch.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_q, parse_q, q, qf, Coeff, Q};
use crate::error::{GtError, Result};
use crate::lin::LinComb;
use crate::planar::{
    build_path, framing_curls, intersections_all, loop_class, loop_word, normalized_path, normalized_path_letters,
    standard_loop, Curl, IntersectionRecord, KinkPlacement, MuOptions, PLLoop, PLLoopJson, Point, Pos, Stem,
};
use crate::word::{alt_close, CyclicClass, GroupWord, Letter, LoopCombo, TensorElement, WedgeElement};

/// Over/under data at a double point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingState {
    /// The branch at the smaller position passes over.
    FirstOver,
    /// The branch at the larger position passes over.
    SecondOver,
    /// A singular double point, `over - under`.
    DoublePoint,
}

impl CrossingState {
    pub fn switched(self) -> Self {
        match self {
            CrossingState::FirstOver => CrossingState::SecondOver,
            CrossingState::SecondOver => CrossingState::FirstOver,
            CrossingState::DoublePoint => CrossingState::DoublePoint,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub record: IntersectionRecord,
    pub state: CrossingState,
}

impl Crossing {
    /// Crossing sign `sign det(over tangent, under tangent)`; `None` for a
    /// double point.
    pub fn sign(&self) -> Option<i8> {
        match self.state {
            CrossingState::FirstOver => Some(self.record.sign),
            CrossingState::SecondOver => Some(-self.record.sign),
            CrossingState::DoublePoint => None,
        }
    }
}

/// The `/1` class of a diagram: free classes of its circles (sorted) and
/// based words of its bottom intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SkeinClass {
    pub circles: Vec<CyclicClass>,
    pub bottoms: Vec<GroupWord>,
}

impl SkeinClass {
    pub fn new(mut circles: Vec<CyclicClass>, bottoms: Vec<GroupWord>) -> Self {
        circles.sort();
        SkeinClass { circles, bottoms }
    }
}

impl std::fmt::Display for SkeinClass {
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

pub type SkeinCombo = LinComb<SkeinClass, Q>;

/// Normal form modulo `b²`: `word_part + b · b_part`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SkeinNormalForm {
    pub word_part: SkeinCombo,
    pub b_part: SkeinCombo,
}

/// A bottom-projection diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct TangleDiagram {
    pub p: usize,
    pub strands: Vec<PLLoop>,
    /// Sorted by the position of the first branch.
    pub crossings: Vec<Crossing>,
}

impl TangleDiagram {
    /// Computes all double points of the strands and assigns each a state.
    pub fn from_strands(
        p: usize,
        strands: Vec<PLLoop>,
        mut assign: impl FnMut(&IntersectionRecord) -> CrossingState,
    ) -> Result<Self> {
        let crossings = intersections_all(&strands, p)?
            .into_iter()
            .map(|record| {
                let state = assign(&record);
                Crossing { record, state }
            })
            .collect();
        Ok(TangleDiagram { p, strands, crossings })
    }

    /// Every self-crossing traversed under-first, every mixed crossing with
    /// the later strand over.
    pub fn ascending(p: usize, strands: Vec<PLLoop>) -> Result<Self> {
        Self::from_strands(p, strands, |_| CrossingState::SecondOver)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().filter_map(|c| c.sign()).map(i64::from).sum()
    }

    pub fn double_points(&self) -> usize {
        self.crossings.iter().filter(|c| c.state == CrossingState::DoublePoint).count()
    }

    /// `(circles, bottom intervals)`.
    pub fn skeleton(&self) -> (usize, usize) {
        let circles = self.strands.iter().filter(|s| s.closed).count();
        (circles, self.strands.len() - circles)
    }

    pub fn with_state(&self, idx: usize, state: CrossingState) -> Self {
        let mut out = self.clone();
        out.crossings[idx].state = state;
        out
    }

    pub fn states(&self) -> Vec<CrossingState> {
        self.crossings.iter().map(|c| c.state).collect()
    }

    /// The `/1` class (bottom projection read component by component).
    pub fn class(&self) -> Result<SkeinClass> {
        classify(&self.strands, self.p)
    }

    /// The `/1` class of the oriented smoothing at crossing `idx`, computed
    /// by polyline surgery.
    pub fn smoothing(&self, idx: usize) -> Result<SkeinClass> {
        let rec = &self.crossings[idx].record;
        let pieces = smooth_strands(&self.strands, rec);
        classify(&pieces, self.p)
    }

    /// Mirror image in the ceiling: every crossing changes over/under.
    pub fn flip(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.crossings {
            c.state = c.state.switched();
        }
        out
    }

    /// Stacks `upper` on top of `self`: mixed crossings have the `upper`
    /// strand over, self-crossings keep their states.
    pub fn stack(&self, upper: &TangleDiagram) -> Result<TangleDiagram> {
        if self.p != upper.p {
            return Err(GtError::Input("stacked diagrams live in different discs".into()));
        }
        let n1 = self.strands.len();
        let mut strands = self.strands.clone();
        strands.extend(upper.strands.iter().cloned());
        let lookup = |d: &TangleDiagram, first: &Pos, second: &Pos, shift: usize| {
            d.crossings
                .iter()
                .find(|c| {
                    c.record.first.strand + shift == first.strand
                        && c.record.first.param == first.param
                        && c.record.second.strand + shift == second.strand
                        && c.record.second.param == second.param
                })
                .map(|c| c.state)
        };
        let mut missing = false;
        let out = TangleDiagram::from_strands(self.p, strands, |r| {
            let (a, b) = (r.first.strand < n1, r.second.strand < n1);
            match (a, b) {
                (true, true) => lookup(self, &r.first, &r.second, 0),
                (false, false) => lookup(upper, &r.first, &r.second, n1),
                (true, false) => Some(CrossingState::SecondOver),
                (false, true) => Some(CrossingState::FirstOver),
            }
            .unwrap_or_else(|| {
                missing = true;
                CrossingState::SecondOver
            })
        });
        let out = out?;
        if missing {
            return Err(GtError::Consistency("stacking changed the self-crossings of a factor".into()));
        }
        Ok(out)
    }
}

fn classify(strands: &[PLLoop], p: usize) -> Result<SkeinClass> {
    let mut circles = Vec::new();
    let mut bottoms = Vec::new();
    for s in strands {
        if s.closed {
            circles.push(loop_class(s, p)?);
        } else {
            bottoms.push(loop_word(s, p)?);
        }
    }
    Ok(SkeinClass::new(circles, bottoms))
}

fn param_floor(t: &Q) -> usize {
    t.floor().to_integer().try_into().unwrap_or(0)
}

/// Vertices of an open strand with parameter `<= t` (or `< t` when `t` is
/// an integer, which never happens at a double point).
fn head(s: &PLLoop, t: &Q) -> Vec<Point> {
    s.points[..=param_floor(t)].to_vec()
}

/// Vertices of an open strand with parameter `> t`.
fn tail(s: &PLLoop, t: &Q) -> Vec<Point> {
    s.points[param_floor(t) + 1..].to_vec()
}

/// Vertices of a closed strand strictly between `t1 < t2`.
fn between(s: &PLLoop, t1: &Q, t2: &Q) -> Vec<Point> {
    s.points[param_floor(t1) + 1..=param_floor(t2)].to_vec()
}

/// Vertices of a closed strand met once around, starting after `t`.
fn around(s: &PLLoop, t: &Q) -> Vec<Point> {
    let k = param_floor(t) + 1;
    let mut out = s.points[k..].to_vec();
    out.extend_from_slice(&s.points[..k]);
    out
}

/// Oriented smoothing of the strands at one double point.
fn smooth_strands(strands: &[PLLoop], rec: &IntersectionRecord) -> Vec<PLLoop> {
    let x = rec.point.clone();
    let (sa, ta) = (rec.first.strand, &rec.first.param);
    let (sb, tb) = (rec.second.strand, &rec.second.param);
    let a = &strands[sa];
    let b = &strands[sb];
    let mut out: Vec<PLLoop> =
        strands.iter().enumerate().filter(|(i, _)| *i != sa && *i != sb).map(|(_, s)| s.clone()).collect();
    let with_x = |mut v: Vec<Point>| {
        v.insert(0, x.clone());
        v
    };
    if sa == sb {
        if a.closed {
            out.push(PLLoop::closed(with_x(between(a, ta, tb))));
            let mut rest = with_x(tail(a, tb));
            rest.extend(a.points[..=param_floor(ta)].iter().cloned());
            out.push(PLLoop::closed(rest));
        } else {
            out.push(PLLoop::closed(with_x(between(a, ta, tb))));
            let mut bottom = head(a, ta);
            bottom.push(x.clone());
            bottom.extend(tail(a, tb));
            out.push(PLLoop::open(bottom));
        }
        return out;
    }
    match (a.closed, b.closed) {
        (true, true) => {
            let mut merged = with_x(around(a, ta));
            merged.push(x.clone());
            merged.extend(around(b, tb));
            out.push(PLLoop::closed(merged));
        }
        (false, false) => {
            let mut one = head(a, ta);
            one.push(x.clone());
            one.extend(tail(b, tb));
            let mut two = head(b, tb);
            two.push(x.clone());
            two.extend(tail(a, ta));
            out.push(PLLoop::open(one));
            out.push(PLLoop::open(two));
        }
        _ => {
            let (c, tc, o, to) = if a.closed { (a, ta, b, tb) } else { (b, tb, a, ta) };
            let mut bottom = head(o, to);
            bottom.push(x.clone());
            bottom.extend(around(c, tc));
            bottom.push(x.clone());
            bottom.extend(tail(o, to));
            out.push(PLLoop::open(bottom));
        }
    }
    out
}

/// Result of a telescoping run.
#[derive(Clone, Debug, PartialEq)]
pub struct Telescope {
    pub normal_form: SkeinNormalForm,
    /// Number of crossing switches performed (terms before merging).
    pub switches: usize,
}

/// Rewrites `D` as `D_target + b · Σ ± smoothings`, switching the
/// off-target crossings one at a time in the given order.
pub fn telescope_normalize(d: &TangleDiagram, target: &[CrossingState], order: &[usize]) -> Result<Telescope> {
    if target.len() != d.crossings.len() {
        return Err(GtError::Input("target assignment has the wrong length".into()));
    }
    let mut cur = d.clone();
    let mut b_part = SkeinCombo::new();
    let mut switches = 0;
    for &idx in order {
        let want = target[idx];
        if cur.crossings[idx].state == want {
            continue;
        }
        let sign =
            cur.crossings[idx].sign().ok_or_else(|| GtError::Input("telescoping through a double point".into()))?;
        if want == CrossingState::DoublePoint {
            return Err(GtError::Input("a double point cannot be a telescoping target".into()));
        }
        b_part.add_term(cur.smoothing(idx)?, q(sign as i64));
        cur.crossings[idx].state = want;
        switches += 1;
    }
    if cur.states() != target {
        return Err(GtError::Consistency("telescoping order does not cover every off-target crossing".into()));
    }
    let word_part = SkeinCombo::basis(cur.class()?);
    Ok(Telescope { normal_form: SkeinNormalForm { word_part, b_part }, switches })
}

/// Default traversal order: by (strand, parameter) of the first branch.
pub fn default_order(d: &TangleDiagram) -> Vec<usize> {
    (0..d.crossings.len()).collect()
}

/// One term `coeff · b^b_power · D` of a raw skein element.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTerm {
    pub diagram: TangleDiagram,
    pub coeff: Q,
    pub b_power: u32,
}

/// Division by `b`:
/// `b^k D ↦ 0` for `k ≥ 2`, `b D ↦ [D]`, and
/// `D ↦ ½ Σ_x ε(x) [D smoothed at x]`, where double points count as factors of `b`.
pub fn b_check(terms: &[RawTerm]) -> Result<SkeinCombo> {
    let mut out = SkeinCombo::new();
    for t in terms {
        let dps: Vec<usize> = (0..t.diagram.crossings.len())
            .filter(|&i| t.diagram.crossings[i].state == CrossingState::DoublePoint)
            .collect();
        let order = dps.len() as u32 + t.b_power;
        match order {
            0 => {
                let half = &t.coeff / q(2);
                for (i, c) in t.diagram.crossings.iter().enumerate() {
                    let eps = c.sign().unwrap_or(0);
                    out.add_term(t.diagram.smoothing(i)?, &half * q(eps as i64));
                }
            }
            1 if dps.is_empty() => out.add_term(t.diagram.class()?, t.coeff.clone()),
            1 => out.add_term(t.diagram.smoothing(dps[0])?, t.coeff.clone()),
            _ => {}
        }
    }
    Ok(out)
}

/// Expands every double point as `over - under`, yielding ordinary diagrams.
pub fn resolve_double_points(terms: &[RawTerm]) -> Vec<RawTerm> {
    let mut out = Vec::new();
    for t in terms {
        let Some(idx) = t.diagram.crossings.iter().position(|c| c.state == CrossingState::DoublePoint) else {
            out.push(t.clone());
            continue;
        };
        let rec_sign = t.diagram.crossings[idx].record.sign;
        let (pos, neg) = if rec_sign > 0 {
            (CrossingState::FirstOver, CrossingState::SecondOver)
        } else {
            (CrossingState::SecondOver, CrossingState::FirstOver)
        };
        let split = [
            RawTerm { diagram: t.diagram.with_state(idx, pos), coeff: t.coeff.clone(), b_power: t.b_power },
            RawTerm { diagram: t.diagram.with_state(idx, neg), coeff: -t.coeff.clone(), b_power: t.b_power },
        ];
        out.extend(resolve_double_points(&split));
    }
    out
}

/// Multiplication by `b` of `/1` classes, realized on synthesized diagrams.
pub fn b_hat(x: &SkeinCombo, p: usize) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    for (class, c) in x {
        if class.circles.len() + class.bottoms.len() > 7 || class.bottoms.len() > 1 {
            return Err(GtError::Input("b_hat supports at most six circles and one bottom interval".into()));
        }
        let mut strands: Vec<PLLoop> =
            class.circles.iter().enumerate().map(|(k, cc)| standard_loop(&cc.representative(), k as u8)).collect();
        for w in &class.bottoms {
            strands.push(build_path(w, strands.len() as u8, &[]).path);
        }
        let diagram = TangleDiagram::ascending(p, strands)?;
        out.push(RawTerm { diagram, coeff: c.clone(), b_power: 1 });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Lifts

/// An ascending or descending lift of a based word.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    pub diagram: TangleDiagram,
    /// Kinks appended to reach writhe one.
    pub appended_kinks: usize,
    /// Crossing indices of the clockwise and counterclockwise framing curls.
    pub framing: Option<(usize, usize)>,
}

fn curl_crossing(d: &TangleDiagram, v0: usize) -> Option<usize> {
    let lo = Q::from_integer((v0 as i64 - 1).into());
    d.crossings.iter().position(|c| {
        c.record.first.strand == c.record.second.strand
            && c.record.first.param >= lo
            && c.record.first.param < &lo + q(1)
            && param_floor(&c.record.second.param) == v0 + 2
    })
}

/// Under-first lift of the rotation-normalized representative.
///
/// Kinks are only appended when the natural writhe differs from one.
pub fn lift_ascending(w: &GroupWord, p: usize) -> Result<Lift> {
    let (built, normalizing) = normalized_path(w, 0, KinkPlacement::Start, &[])?;
    let diagram = TangleDiagram::ascending(p, vec![built.path])?;
    let wr = diagram.writhe();
    if wr == 1 {
        return Ok(Lift { diagram, appended_kinks: 0, framing: None });
    }
    let base = normalizing.unsigned_abs() as i64;
    let extra: Vec<Curl> = (0..(wr - 1).abs())
        .map(|j| Curl { stem: Stem::Bullet, y: q(-1) + qf(base + j + 1, 32), ccw: wr < 1 })
        .collect();
    let (built, _) = normalized_path(w, 0, KinkPlacement::Start, &extra)?;
    let diagram = TangleDiagram::ascending(p, vec![built.path])?;
    Ok(Lift { diagram, appended_kinks: extra.len(), framing: None })
}

fn framed_curve(w: &[Letter], p: usize, opts: MuOptions) -> Result<(TangleDiagram, usize, usize)> {
    let (built, normalizing) = normalized_path_letters(w, opts.layer, opts.placement, &framing_curls())?;
    let k = normalizing.unsigned_abs() as usize;
    let d = TangleDiagram::ascending(p, vec![built.path])?;
    let cw = curl_crossing(&d, built.curl_vertex[k])
        .ok_or_else(|| GtError::Consistency("framing curl crossing not found".into()))?;
    let ccw = curl_crossing(&d, built.curl_vertex[k + 1])
        .ok_or_else(|| GtError::Consistency("framing curl crossing not found".into()))?;
    Ok((d, cw, ccw))
}

/// Over-first lift with two positive correction curls on the `*` stem.
pub fn lift_descending(w: &GroupWord, p: usize) -> Result<Lift> {
    lift_descending_with(w.letters(), p, MuOptions::default())
}

/// As [`lift_descending`] for any letter sequence, layer and kink placement.
pub fn lift_descending_with(w: &[Letter], p: usize, opts: MuOptions) -> Result<Lift> {
    let (mut d, cw, ccw) = framed_curve(w, p, opts)?;
    for (i, c) in d.crossings.iter_mut().enumerate() {
        c.state = if i == ccw { CrossingState::SecondOver } else { CrossingState::FirstOver };
    }
    Ok(Lift { diagram: d, appended_kinks: 0, framing: Some((cw, ccw)) })
}

/// The ascending lift carrying the same framing curl pair as the descending
/// lift, both curls traversed under-first.
pub fn lift_ascending_padded(w: &[Letter], p: usize, opts: MuOptions) -> Result<Lift> {
    let (d, cw, ccw) = framed_curve(w, p, opts)?;
    Ok(Lift { diagram: d, appended_kinks: 0, framing: Some((cw, ccw)) })
}

// ---------------------------------------------------------------------------
// Bracket and self-intersection map

fn one() -> Coeff {
    Coeff::rational(q(1))
}

/// Order in which crossings are switched while telescoping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TelescopeOrder {
    /// By position of the first branch.
    #[default]
    Forward,
    Reverse,
    /// A seeded random permutation.
    Shuffled(u64),
}

impl TelescopeOrder {
    fn arrange(self, mut v: Vec<usize>) -> Vec<usize> {
        match self {
            TelescopeOrder::Forward => {}
            TelescopeOrder::Reverse => v.reverse(),
            TelescopeOrder::Shuffled(seed) => v.shuffle(&mut crate::corpus::rng(seed)),
        }
        v
    }
}

/// Stacking commutator of the lifts of two classes, divided by `b`.
pub fn bracket_skein_classes(a: &CyclicClass, b: &CyclicClass, p: usize) -> Result<LoopCombo> {
    bracket_skein_loops(
        &standard_loop(&a.representative(), 0),
        &standard_loop(&b.representative(), 1),
        p,
        TelescopeOrder::Forward,
    )
}

/// `(K₁ K₂ - K₂ K₁) / b` for two closed polylines, each lifted with its
/// self-crossings ascending.
pub fn bracket_skein_loops(la: &PLLoop, lb: &PLLoop, p: usize, order: TelescopeOrder) -> Result<LoopCombo> {
    // Self-crossings ascending and `lb` over at mixed crossings: the stack
    // of the two ascending lifts, with `lb` on top.
    let d12 = TangleDiagram::ascending(p, vec![la.clone(), lb.clone()])?;
    let target: Vec<CrossingState> = d12
        .crossings
        .iter()
        .map(|c| if c.record.first.strand != c.record.second.strand { c.state.switched() } else { c.state })
        .collect();
    let tel = telescope_normalize(&d12, &target, &order.arrange(default_order(&d12)))?;
    if tel.normal_form.word_part != SkeinCombo::basis(d12.class()?) {
        return Err(GtError::Consistency("the stacking commutator has a nonzero word part".into()));
    }
    let mut out = LoopCombo::new();
    for (class, c) in &tel.normal_form.b_part {
        if class.circles.len() != 1 || !class.bottoms.is_empty() {
            return Err(GtError::Consistency(format!("mixed smoothing produced {class}")));
        }
        out.add_term(class.circles[0].clone(), Coeff::rational(c.clone()));
    }
    Ok(out)
}

/// Bilinear extension of [`bracket_skein_classes`].
pub fn bracket_skein(x: &LoopCombo, y: &LoopCombo, p: usize) -> Result<LoopCombo> {
    let mut out = LoopCombo::new();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&bracket_skein_classes(a, b, p)?, &(ca.clone() * cb.clone()));
        }
    }
    Ok(out)
}

/// Output of the skein self-intersection computation.
#[derive(Clone, Debug, PartialEq)]
pub struct MuSkein {
    pub value: TensorElement,
    /// Crossing switches before merging equal classes.
    pub switches: usize,
    /// Self-crossings of the curve without the framing curl pair.
    pub curve_crossings: usize,
}

/// `(λ_a - λ_d)(w) / b` read on the skeleton circle ⊔ interval.
pub fn mu_skein_report(w: &[Letter], p: usize, opts: MuOptions, order: TelescopeOrder) -> Result<MuSkein> {
    let asc = lift_ascending_padded(w, p, opts)?;
    let desc = lift_descending_with(w, p, opts)?;
    let (cw, ccw) = asc.framing.expect("padded lift has framing curls");
    let d = &asc.diagram;
    let target = desc.diagram.states();
    let curve: Vec<usize> = default_order(d).into_iter().filter(|&i| i != cw && i != ccw).collect();
    let curve_crossings = curve.len();
    let mut all = curve;
    all.push(cw);
    all.push(ccw);
    let tel = telescope_normalize(d, &target, &order.arrange(all))?;
    if d.class()? != desc.diagram.class()? {
        return Err(GtError::Consistency("ascending and descending lifts project differently".into()));
    }
    let mut value = TensorElement::new();
    for (class, c) in &tel.normal_form.b_part {
        if class.circles.len() != 1 || class.bottoms.len() != 1 {
            return Err(GtError::Consistency(format!("self smoothing produced {class}")));
        }
        value.add_term((class.circles[0].clone(), class.bottoms[0].clone()), Coeff::rational(c.clone()));
    }
    Ok(MuSkein { value, switches: tel.switches, curve_crossings })
}

pub fn mu_skein(w: &GroupWord, p: usize) -> Result<TensorElement> {
    Ok(mu_skein_report(w.letters(), p, MuOptions::default(), TelescopeOrder::Forward)?.value)
}

/// `Alt ∘ cl ∘ η̂`, extended linearly over a loop combination.
pub fn delta_skein(x: &LoopCombo, p: usize) -> Result<WedgeElement> {
    let mut out = WedgeElement::new();
    for (c, k) in x {
        out.add_assign(&alt_close(&mu_skein(&c.representative(), p)?).scale(k));
    }
    Ok(out)
}

/// `|1| ⊗ w`, the correction between the skein and geometric `μ`.
pub fn unit_tensor(w: &GroupWord) -> TensorElement {
    TensorElement::term((CyclicClass::trivial(), w.clone()), one())
}

// ---------------------------------------------------------------------------
// Reidemeister variants used by the division checks

/// Builds a two-component diagram from two nonempty classes on layers 0 and
/// 1, and its variant where the second loop is pushed across the first
/// along a finger, adding two crossings with the second loop over.
pub fn r2_pair(a: &CyclicClass, b: &CyclicClass, p: usize) -> Result<(TangleDiagram, TangleDiagram)> {
    if a.is_empty() || b.is_empty() {
        return Err(GtError::Input("the finger move needs nonempty classes".into()));
    }
    let la = standard_loop(&a.representative(), 0);
    let lb = standard_loop(&b.representative(), 1);
    let span = |l: &PLLoop| (l.points.last().unwrap().y.clone(), l.points[0].y.clone());
    let (a_lo, a_hi) = span(&la);
    let (b_lo, b_hi) = span(&lb);
    let lo = a_lo.max(b_lo);
    let hi = a_hi.min(b_hi);
    let ya = &lo + (&hi - &lo) / q(3);
    let yb = &lo + (&hi - &lo) * qf(2, 3);
    let xb = lb.points[0].x.clone();
    let xf = qf(1, 50);
    let mut fingered = lb.clone();
    fingered.points.extend([
        Point::new(xb.clone(), ya.clone()),
        Point::new(xf.clone(), ya),
        Point::new(xf, yb.clone()),
        Point::new(xb, yb),
    ]);
    let d = TangleDiagram::ascending(p, vec![la.clone(), lb])?;
    let d2 = TangleDiagram::ascending(p, vec![la, fingered])?;
    Ok((d, d2))
}

/// Adds a small triangular loop, over everything, next to crossing `idx`;
/// the two results differ by sliding one side of the triangle across the
/// crossing.
pub fn r3_pair(d: &TangleDiagram, idx: usize) -> Result<(TangleDiagram, TangleDiagram)> {
    let c = &d.crossings[idx].record.point;
    let e = qf(1, 7 * 4096);
    let at = |i: i64, j: i64| Point::new(&c.x + &e * q(i), &c.y + &e * q(j));
    let t1 = PLLoop::closed(vec![at(2, -1), at(-1, 2), at(3, 3)]);
    let t2 = PLLoop::closed(vec![at(1, -2), at(-2, 1), at(3, 3)]);
    let n = d.strands.len();
    let build = |tri: PLLoop| -> Result<TangleDiagram> {
        let mut strands = d.strands.clone();
        strands.push(tri);
        let mut missing = false;
        let out = TangleDiagram::from_strands(d.p, strands, |r| {
            if r.second.strand == n {
                CrossingState::SecondOver
            } else {
                d.crossings
                    .iter()
                    .find(|x| x.record.first == r.first && x.record.second == r.second)
                    .map(|x| x.state)
                    .unwrap_or_else(|| {
                        missing = true;
                        CrossingState::SecondOver
                    })
            }
        })?;
        if missing {
            return Err(GtError::Consistency("triangle disturbed existing crossings".into()));
        }
        Ok(out)
    };
    Ok((build(t1)?, build(t2)?))
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CrossingJson {
    /// `[[strand, "param"], [strand, "param"]]`.
    pub at: [(usize, String); 2],
    /// 1 if the first branch is over, 2 if the second is, 0 for a double point.
    pub over: u8,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DiagramJson {
    pub punctures: usize,
    pub strands: Vec<PLLoopJson>,
    pub crossings: Vec<CrossingJson>,
}

impl From<&TangleDiagram> for DiagramJson {
    fn from(d: &TangleDiagram) -> Self {
        DiagramJson {
            punctures: d.p,
            strands: d.strands.iter().map(PLLoopJson::from).collect(),
            crossings: d
                .crossings
                .iter()
                .map(|c| CrossingJson {
                    at: [
                        (c.record.first.strand, fmt_q(&c.record.first.param)),
                        (c.record.second.strand, fmt_q(&c.record.second.param)),
                    ],
                    over: match c.state {
                        CrossingState::FirstOver => 1,
                        CrossingState::SecondOver => 2,
                        CrossingState::DoublePoint => 0,
                    },
                })
                .collect(),
        }
    }
}

impl DiagramJson {
    /// Rebuilds the diagram; the crossing list must match the strands.
    pub fn to_diagram(&self) -> Result<TangleDiagram> {
        let strands = self.strands.iter().map(|s| s.to_loop()).collect::<Result<Vec<_>>>()?;
        let mut wanted = Vec::new();
        for c in &self.crossings {
            let pos = |(s, t): &(usize, String)| -> Result<Pos> {
                Ok(Pos { strand: *s, param: parse_q(t).ok_or_else(|| GtError::Input(format!("bad parameter '{t}'")))? })
            };
            let state = match c.over {
                1 => CrossingState::FirstOver,
                2 => CrossingState::SecondOver,
                0 => CrossingState::DoublePoint,
                k => return Err(GtError::Input(format!("bad crossing state {k}"))),
            };
            wanted.push((pos(&c.at[0])?, pos(&c.at[1])?, state));
        }
        let d = TangleDiagram::from_strands(self.punctures, strands, |r| {
            wanted
                .iter()
                .find(|(a, b, _)| *a == r.first && *b == r.second)
                .map(|x| x.2)
                .unwrap_or(CrossingState::SecondOver)
        })?;
        if d.crossings.len() != wanted.len() {
            return Err(GtError::Input("crossing list does not match the strands".into()));
        }
        Ok(d)
    }
}

/// Renders a `/1` combination as text.
pub fn render_skein(x: &SkeinCombo) -> String {
    crate::word::render_sum(x, |k| k.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::mu_geometric;
    use crate::word::cyclic_canonical;

    fn w(x: &[i32]) -> GroupWord {
        GroupWord::from_signed(x)
    }

    #[test]
    fn ascending_lift_of_generator_has_one_positive_crossing() {
        let lift = lift_ascending(&w(&[1]), 1).unwrap();
        assert_eq!(lift.appended_kinks, 0);
        assert_eq!(lift.diagram.crossings.len(), 1);
        assert_eq!(lift.diagram.crossings[0].sign(), Some(1));
        assert_eq!(lift.diagram.writhe(), 1);
    }

    #[test]
    fn descending_lift_has_writhe_one() {
        for word in [vec![], vec![1], vec![1, 1], vec![2, -1, 2]] {
            let d = lift_descending(&w(&word), 2).unwrap();
            assert_eq!(d.diagram.writhe(), 1, "{word:?}");
        }
    }

    #[test]
    fn single_switch_emits_the_smoothing() {
        let lift = lift_ascending(&w(&[1]), 1).unwrap();
        let d = &lift.diagram;
        let target = vec![d.crossings[0].state.switched()];
        let tel = telescope_normalize(d, &target, &[0]).unwrap();
        assert_eq!(tel.switches, 1);
        let expected = SkeinClass::new(vec![cyclic_canonical(&w(&[1]))], vec![GroupWord::identity()]);
        assert_eq!(tel.normal_form.b_part, SkeinCombo::term(expected, q(1)));
    }

    #[test]
    fn mu_skein_matches_geometry_on_small_words() {
        for word in [vec![], vec![1], vec![1, 1], vec![1, -2], vec![2, 2, -1]] {
            let word = w(&word);
            let lhs = mu_skein(&word, 2).unwrap().plus(&unit_tensor(&word));
            assert_eq!(lhs, mu_geometric(&word, 2).unwrap(), "{word}");
        }
        assert!(mu_skein(&GroupWord::identity(), 2).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_disjoint_petals_is_zero() {
        let a = cyclic_canonical(&w(&[1]));
        let b = cyclic_canonical(&w(&[2]));
        assert!(bracket_skein_classes(&a, &b, 2).unwrap().is_zero());
        assert!(bracket_skein_classes(&a, &a, 2).unwrap().is_zero());
    }

    #[test]
    fn stacking_puts_the_upper_factor_over() {
        let la = standard_loop(&w(&[1, 2]), 0);
        let lb = standard_loop(&w(&[2, -1, 2]), 1);
        let k1 = TangleDiagram::ascending(2, vec![la.clone()]).unwrap();
        let k2 = TangleDiagram::ascending(2, vec![lb.clone()]).unwrap();
        let up = k1.stack(&k2).unwrap();
        assert_eq!(up, TangleDiagram::ascending(2, vec![la.clone(), lb.clone()]).unwrap());
        let down = k2.stack(&k1).unwrap();
        assert_eq!(down.writhe(), up.flip().writhe() + 2 * k1.writhe() + 2 * k2.writhe());
        assert_eq!(down.class().unwrap(), up.class().unwrap());
    }

    #[test]
    fn flip_is_an_involution() {
        let d = lift_ascending(&w(&[1, 1, -2]), 2).unwrap().diagram;
        assert_eq!(d.flip().flip(), d);
        assert!(d.flip().crossings.iter().all(|c| c.state == CrossingState::FirstOver));
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = lift_descending(&w(&[1, 2]), 2).unwrap().diagram;
        let j = DiagramJson::from(&d);
        let s = serde_json::to_string(&j).unwrap();
        let back: DiagramJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_diagram().unwrap(), d);
    }
}
