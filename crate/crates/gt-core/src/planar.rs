//! Exact planar geometry in the punctured disc.
//!
//! Punctures sit at `(i, 0)` for `i = 1..=p`, cut rays run straight up from
//! each puncture, and the two boundary basepoints are `• = (2/5, -1)` and
//! `* = (3/5, -1)`. A loop crossing ray `i` while moving in the `-x`
//! direction reads the letter `γ_i`, so `γ_i` is a counterclockwise petal.
//!
//! Curve parameters are global: the point at parameter `k + t` lies on
//! segment `k` at fraction `t`.

use std::collections::HashMap;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{fmt_q, parse_q, q, qf, Coeff, Q};
use crate::error::{GtError, Result};
use crate::word::{CyclicClass, GroupWord, Letter, LoopCombo, TensorElement, WedgeElement};

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

fn sub(a: &Point, b: &Point) -> (Q, Q) {
    (&a.x - &b.x, &a.y - &b.y)
}

fn det(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.0 + &a.1 * &b.1
}

fn orient(a: &Point, b: &Point, c: &Point) -> Q {
    det(&sub(b, a), &sub(c, a))
}

fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// The disc `[0, p+1] × [-1, 1]` with `p` punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PuncturedDisc {
    pub p: usize,
}

impl PuncturedDisc {
    pub fn new(p: usize) -> Self {
        PuncturedDisc { p }
    }

    pub fn puncture(&self, i: usize) -> Point {
        Point::new(q(i as i64), q(0))
    }

    /// The basepoint `•`, where open paths start.
    pub fn bullet() -> Point {
        Point::new(qf(2, 5), q(-1))
    }

    /// The basepoint `*`, where open paths end.
    pub fn star() -> Point {
        Point::new(qf(3, 5), q(-1))
    }

    pub fn contains(&self, pt: &Point) -> bool {
        pt.x >= q(0) && pt.x <= q(self.p as i64 + 1) && pt.y >= q(-1) && pt.y <= q(1)
    }
}

/// Structured description of a non-generic configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenericityError {
    #[error("strand {strand} has too few points")]
    TooFewPoints { strand: usize },
    #[error("strand {strand}: vertex {vertex} lies outside the disc")]
    OutsideDisc { strand: usize, vertex: usize },
    #[error("strand {strand}: segment {segment} has zero length")]
    ZeroLengthEdge { strand: usize, segment: usize },
    #[error("strand {strand}: the curve reverses direction at vertex {vertex}")]
    UTurn { strand: usize, vertex: usize },
    #[error("strand {strand}: vertex {vertex} lies on cut ray {ray}")]
    VertexOnRay { strand: usize, vertex: usize, ray: usize },
    #[error("strand {strand}: segment {segment} passes through puncture {puncture}")]
    ThroughPuncture { strand: usize, segment: usize, puncture: usize },
    #[error("segments {first:?} and {second:?} overlap collinearly")]
    CollinearOverlap { first: (usize, usize), second: (usize, usize) },
    #[error("segments {first:?} and {second:?} touch at {point}")]
    NonTransverseContact { first: (usize, usize), second: (usize, usize), point: String },
    #[error("more than two branches meet at {point}")]
    TriplePoint { point: String },
    #[error("double point {point} lies on cut ray {ray}")]
    IntersectionOnRay { point: String, ray: usize },
}

/// An oriented polyline; open polylines run from `•` to `*`.
#[derive(Clone, Debug, PartialEq)]
pub struct PLLoop {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl PLLoop {
    pub fn closed(points: Vec<Point>) -> Self {
        PLLoop { points, closed: true }
    }

    pub fn open(points: Vec<Point>) -> Self {
        PLLoop { points, closed: false }
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len().saturating_sub(1)
        }
    }

    pub fn segment(&self, k: usize) -> (&Point, &Point) {
        (&self.points[k], &self.points[(k + 1) % self.points.len()])
    }

    pub fn direction(&self, k: usize) -> (Q, Q) {
        let (a, b) = self.segment(k);
        sub(b, a)
    }

    /// Point at a global parameter.
    pub fn point_at(&self, t: &Q) -> Point {
        let k = t.floor().to_integer();
        let k: usize = k.try_into().unwrap_or(0);
        let frac = t - Q::from_integer(k.into());
        let (a, b) = self.segment(k);
        Point::new(&a.x + &frac * (&b.x - &a.x), &a.y + &frac * (&b.y - &a.y))
    }

    /// Same vertex list read as a closed loop (for an open path this appends
    /// the boundary arc `ν` from `*` back to `•`).
    pub fn closed_up(&self) -> PLLoop {
        PLLoop { points: self.points.clone(), closed: true }
    }

    /// Orientation reversal.
    pub fn reversed(&self) -> PLLoop {
        let mut pts = self.points.clone();
        pts.reverse();
        PLLoop { points: pts, closed: self.closed }
    }
}

/// Position on a strand of a multi-strand configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub strand: usize,
    pub param: Q,
}

/// A transverse double point.
///
/// `first < second` in (strand, parameter) order; `sign` is the sign of
/// `det(first tangent, second tangent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionRecord {
    pub point: Point,
    pub first: Pos,
    pub second: Pos,
    pub sign: i8,
}

/// A crossing of a cut ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayCrossing {
    pub param: Q,
    pub letter: Letter,
}

/// Shape checks that do not depend on the disc: point count, edge lengths and
/// direction reversals.
fn validate_shape(idx: usize, l: &PLLoop) -> std::result::Result<(), GenericityError> {
    let min = if l.closed { 3 } else { 2 };
    if l.points.len() < min {
        return Err(GenericityError::TooFewPoints { strand: idx });
    }
    let n = l.segment_count();
    for k in 0..n {
        let d = l.direction(k);
        if d.0.is_zero() && d.1.is_zero() {
            return Err(GenericityError::ZeroLengthEdge { strand: idx, segment: k });
        }
    }
    let joints: Vec<usize> = if l.closed { (0..n).collect() } else { (1..n).collect() };
    for k in joints {
        let prev = l.direction((k + n - 1) % n);
        let next = l.direction(k);
        if det(&prev, &next).is_zero() && dot(&prev, &next).is_negative() {
            return Err(GenericityError::UTurn { strand: idx, vertex: k });
        }
    }
    Ok(())
}

/// Shape checks plus vertex position checks against the disc and its rays.
fn validate_strand(disc: &PuncturedDisc, idx: usize, l: &PLLoop) -> std::result::Result<(), GenericityError> {
    validate_shape(idx, l)?;
    for (v, pt) in l.points.iter().enumerate() {
        if !disc.contains(pt) {
            return Err(GenericityError::OutsideDisc { strand: idx, vertex: v });
        }
        if pt.x.is_integer() && pt.y >= q(0) {
            let i = pt.x.to_integer();
            if i >= 1.into() && i <= (disc.p as i64).into() {
                let ray: usize = i.try_into().unwrap_or(0);
                return Err(GenericityError::VertexOnRay { strand: idx, vertex: v, ray });
            }
        }
    }
    Ok(())
}

/// Ray crossings of a single strand, sorted by parameter.
pub fn ray_crossings(l: &PLLoop, p: usize) -> std::result::Result<Vec<RayCrossing>, GenericityError> {
    let disc = PuncturedDisc::new(p);
    validate_strand(&disc, 0, l)?;
    let mut out = Vec::new();
    for k in 0..l.segment_count() {
        let (a, b) = l.segment(k);
        let (lo, hi) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
        if lo == hi {
            continue;
        }
        let first = lo.ceil().to_integer();
        let first: i64 = first.try_into().unwrap_or(i64::MAX);
        let last = hi.floor().to_integer();
        let last: i64 = last.try_into().unwrap_or(i64::MIN);
        for i in first.max(1)..=last.min(p as i64) {
            let xi = q(i);
            if &xi == lo || &xi == hi {
                continue;
            }
            let t = (&xi - &a.x) / (&b.x - &a.x);
            let y = &a.y + &t * (&b.y - &a.y);
            if y.is_zero() {
                return Err(GenericityError::ThroughPuncture { strand: 0, segment: k, puncture: i as usize });
            }
            if y.is_positive() {
                let inv = b.x > a.x;
                out.push(RayCrossing { param: Q::from_integer(k.into()) + t, letter: Letter { gen: i as u16, inv } });
            }
        }
    }
    out.sort_by(|a, b| a.param.cmp(&b.param));
    Ok(out)
}

/// Letters read strictly between two parameters (`None` = curve end).
pub fn letters_between(xs: &[RayCrossing], from: Option<&Q>, to: Option<&Q>) -> Vec<Letter> {
    xs.iter()
        .filter(|c| from.is_none_or(|f| &c.param > f) && to.is_none_or(|t| &c.param < t))
        .map(|c| c.letter)
        .collect()
}

/// Letters of a closed strand read once around, starting just after `at`.
pub fn letters_around(xs: &[RayCrossing], at: &Q) -> Vec<Letter> {
    let mut out = letters_between(xs, Some(at), None);
    out.extend(letters_between(xs, None, Some(at)));
    out
}

/// The word of a loop: the based word from parameter 0 for both open and
/// closed polylines (closing an open path by `ν` adds no letters).
pub fn loop_word(l: &PLLoop, p: usize) -> Result<GroupWord> {
    let xs = ray_crossings(l, p)?;
    Ok(GroupWord::from_letters(xs.iter().map(|c| c.letter)))
}

/// The free homotopy class of a loop (open paths are closed by `ν`).
pub fn loop_class(l: &PLLoop, p: usize) -> Result<CyclicClass> {
    let xs = ray_crossings(l, p)?;
    Ok(CyclicClass::from_cyclic_letters(xs.iter().map(|c| c.letter)))
}

fn upper(d: &(Q, Q)) -> bool {
    d.1.is_positive() || (d.1.is_zero() && d.0.is_positive())
}

/// Rotation number (total turning over `2π`) of a closed polyline.
pub fn rotation_number(l: &PLLoop) -> Result<i64> {
    if !l.closed {
        return Err(GtError::Input("rotation number needs a closed polyline; use closed_up".into()));
    }
    validate_shape(0, l).map_err(|e| GtError::Input(e.to_string()))?;
    let n = l.segment_count();
    let dirs: Vec<(Q, Q)> = (0..n).map(|k| l.direction(k)).collect();
    let mut wind = 0i64;
    for k in 0..n {
        let a = &dirs[k];
        let b = &dirs[(k + 1) % n];
        let turn = sign_of(&det(a, b));
        match (upper(a), upper(b)) {
            (false, true) if turn > 0 => wind += 1,
            (true, false) if turn < 0 => wind -= 1,
            _ => {}
        }
    }
    Ok(wind)
}

struct Seg<'a> {
    strand: usize,
    index: usize,
    a: &'a Point,
    b: &'a Point,
    xmin: &'a Q,
    xmax: &'a Q,
    ymin: &'a Q,
    ymax: &'a Q,
}

fn segs_of(strand: usize, l: &PLLoop) -> Vec<Seg<'_>> {
    (0..l.segment_count())
        .map(|k| {
            let (a, b) = l.segment(k);
            let (xmin, xmax) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
            let (ymin, ymax) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
            Seg { strand, index: k, a, b, xmin, xmax, ymin, ymax }
        })
        .collect()
}

fn on_segment(s: &Seg<'_>, pt: &Point) -> bool {
    &pt.x >= s.xmin && &pt.x <= s.xmax && &pt.y >= s.ymin && &pt.y <= s.ymax
}

/// Parameters on both segments and the point of a proper crossing.
struct Hit {
    t: Q,
    u: Q,
    point: Point,
}

fn intersect(s: &Seg<'_>, r: &Seg<'_>) -> std::result::Result<Option<Hit>, GenericityError> {
    if s.xmax < r.xmin || r.xmax < s.xmin || s.ymax < r.ymin || r.ymax < s.ymin {
        return Ok(None);
    }
    let d1 = orient(s.a, s.b, r.a);
    let d2 = orient(s.a, s.b, r.b);
    let d3 = orient(r.a, r.b, s.a);
    let d4 = orient(r.a, r.b, s.b);
    let (s1, s2, s3, s4) = (sign_of(&d1), sign_of(&d2), sign_of(&d3), sign_of(&d4));
    let ids = ((s.strand, s.index), (r.strand, r.index));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        let t = &d3 / (&d3 - &d4);
        let u = &d1 / (&d1 - &d2);
        let point = Point::new(&s.a.x + &t * (&s.b.x - &s.a.x), &s.a.y + &t * (&s.b.y - &s.a.y));
        return Ok(Some(Hit { t, u, point }));
    }
    if s1 == 0 && s2 == 0 {
        // Collinear: overlapping iff the bounding boxes share more than a point.
        let shared_x = s.xmax.min(r.xmax) > s.xmin.max(r.xmin);
        let shared_y = s.ymax.min(r.ymax) > s.ymin.max(r.ymin);
        if shared_x || shared_y {
            return Err(GenericityError::CollinearOverlap { first: ids.0, second: ids.1 });
        }
    }
    let touches = [(s1, r.a, s), (s2, r.b, s), (s3, s.a, r), (s4, s.b, r)];
    for (sg, pt, seg) in touches {
        if sg == 0 && on_segment(seg, pt) {
            return Err(GenericityError::NonTransverseContact { first: ids.0, second: ids.1, point: pt.to_string() });
        }
    }
    Ok(None)
}

fn adjacent(l: &PLLoop, i: usize, j: usize) -> bool {
    let n = l.segment_count();
    j == i + 1 || (l.closed && i == 0 && j + 1 == n)
}

/// All transverse double points among a family of strands (self and mutual),
/// with full genericity checking of the union.
pub fn intersections_all(strands: &[PLLoop], p: usize) -> Result<Vec<IntersectionRecord>> {
    let disc = PuncturedDisc::new(p);
    let mut segs = Vec::new();
    for (i, l) in strands.iter().enumerate() {
        validate_strand(&disc, i, l)?;
        // Puncture and ray checks.
        ray_crossings(l, p).map_err(|e| match e {
            GenericityError::ThroughPuncture { segment, puncture, .. } => {
                GenericityError::ThroughPuncture { strand: i, segment, puncture }
            }
            other => other,
        })?;
        segs.extend(segs_of(i, l));
    }
    let mut out = Vec::new();
    for (x, s) in segs.iter().enumerate() {
        for r in &segs[x + 1..] {
            if s.strand == r.strand && adjacent(&strands[s.strand], s.index, r.index) {
                continue;
            }
            if let Some(Hit { t, u, point }) = intersect(s, r)? {
                let ps = Pos { strand: s.strand, param: Q::from_integer(s.index.into()) + t };
                let pr = Pos { strand: r.strand, param: Q::from_integer(r.index.into()) + u };
                let ds = sub(s.b, s.a);
                let dr = sub(r.b, r.a);
                let (first, second, sign) =
                    if ps < pr { (ps, pr, sign_of(&det(&ds, &dr))) } else { (pr, ps, sign_of(&det(&dr, &ds))) };
                out.push(IntersectionRecord { point, first, second, sign });
            }
        }
    }
    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for r in &out {
        *seen.entry(&r.point).or_default() += 1;
        if seen[&r.point] > 1 {
            return Err(GenericityError::TriplePoint { point: r.point.to_string() }.into());
        }
        if r.point.x.is_integer() && r.point.y.is_positive() {
            let i: i64 = r.point.x.to_integer().try_into().unwrap_or(0);
            if i >= 1 && i <= p as i64 {
                return Err(GenericityError::IntersectionOnRay { point: r.point.to_string(), ray: i as usize }.into());
            }
        }
    }
    out.sort_by(|a, b| a.first.cmp(&b.first).then_with(|| a.second.cmp(&b.second)));
    Ok(out)
}

/// Self-intersections of `l1` (when `l2` is `None`) or the mutual
/// intersections of `l1` with `l2` (strand 0 and strand 1 respectively).
pub fn transverse_intersections(l1: &PLLoop, l2: Option<&PLLoop>, p: usize) -> Result<Vec<IntersectionRecord>> {
    match l2 {
        None => intersections_all(std::slice::from_ref(l1), p),
        Some(l2) => {
            let all = intersections_all(&[l1.clone(), l2.clone()], p)?;
            Ok(all.into_iter().filter(|r| r.first.strand == 0 && r.second.strand == 1).collect())
        }
    }
}

// ---------------------------------------------------------------------------
// Standard representatives

/// Number of distinct layers for synthesized curves.
pub const LAYERS: u8 = 8;

/// Leg offset, petal height and corridor height for slot `m`.
fn slot(m: usize) -> (Q, Q, Q) {
    let m = m as i64 + 1;
    (qf(512 + 4 * m, 4096), qf(1, 4) + qf(2 * m, 4096), qf(-1, 4) - qf(2 * m, 4096))
}

fn corridor(k: usize, layer: u8) -> Q {
    slot(8 * k + layer as usize).2
}

fn petal_points(letters: &[Letter], layer: u8, out: &mut Vec<Point>) {
    for (k, l) in letters.iter().enumerate() {
        let (a, h, _) = slot(8 * k + layer as usize);
        let i = q(l.gen as i64);
        let (enter, exit) = if l.inv { (&i - &a, &i + &a) } else { (&i + &a, &i - &a) };
        out.push(Point::new(enter.clone(), corridor(k, layer)));
        out.push(Point::new(enter, h.clone()));
        out.push(Point::new(exit.clone(), h));
        out.push(Point::new(exit, corridor(k + 1, layer)));
    }
}

/// A closed generic representative of the free class of `w`.
///
/// Every letter is drawn as a petal around its puncture at heights that
/// depend on `(letter index, layer)`, so loops on different layers are in
/// mutual general position.
pub fn standard_loop(w: &GroupWord, layer: u8) -> PLLoop {
    standard_loop_letters(w.letters(), layer)
}

/// As [`standard_loop`] for an arbitrary, possibly unreduced, letter
/// sequence.
pub fn standard_loop_letters(w: &[Letter], layer: u8) -> PLLoop {
    let layer = layer % LAYERS;
    let x0 = qf(layer as i64 + 1, 20);
    let c0 = corridor(0, layer);
    if w.is_empty() {
        let s = qf(1, 128);
        return PLLoop::closed(vec![
            Point::new(x0.clone(), c0.clone()),
            Point::new(&x0 + &s, c0.clone()),
            Point::new(&x0 + &s, &c0 + &s),
            Point::new(x0, &c0 + &s),
        ]);
    }
    let mut pts = vec![Point::new(x0.clone(), c0)];
    petal_points(w, layer, &mut pts);
    pts.push(Point::new(x0, corridor(w.len(), layer)));
    PLLoop::closed(pts)
}

/// Where a curl sits on a basepoint stem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stem {
    /// The vertical stem leaving `•`.
    Bullet,
    /// The vertical stem arriving at `*`.
    Star,
}

/// A small x-neutral curl (kink) on a stem.
#[derive(Clone, Debug, PartialEq)]
pub struct Curl {
    pub stem: Stem,
    /// Height of the curl's attachment point.
    pub y: Q,
    /// `true` for a counterclockwise curl (rotation `+1`).
    pub ccw: bool,
}

/// Where the rotation-normalizing kinks are placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkPlacement {
    /// On the `•` stem, starting just above `•` (the default).
    Start,
    /// On the `•` stem with a shifted spacing.
    StartShifted,
    /// On the `*` stem, close to `*`.
    End,
}

const CURL_SIZE: (i64, i64) = (1, 64);

fn curl_points(base: &Point, d: (i64, i64), ccw: bool) -> Vec<Point> {
    let s = qf(CURL_SIZE.0, CURL_SIZE.1);
    let sigma = if ccw { q(1) } else { q(-1) };
    let (du, dv) = (d, (-d.1, d.0));
    let at = |u: Q, v: Q| Point::new(&base.x + &u * q(du.0) + &v * q(dv.0), &base.y + &u * q(du.1) + &v * q(dv.1));
    let half = &s / q(2);
    let z = q(0);
    vec![
        at(z.clone(), z.clone()),
        at(z.clone(), &sigma * &s),
        at(-half.clone(), &sigma * &s),
        at(-half.clone(), -(&sigma * &half)),
        at(half.clone(), -(&sigma * &half)),
        at(half, z),
    ]
}

/// An open path from `•` to `*` with its curls.
#[derive(Clone, Debug, PartialEq)]
pub struct BuiltPath {
    pub path: PLLoop,
    /// Index of the first vertex of each curl, in the order given.
    pub curl_vertex: Vec<usize>,
}

/// Builds the standard open representative of `w` with extra curls.
pub fn build_path(w: &GroupWord, layer: u8, curls: &[Curl]) -> BuiltPath {
    build_path_letters(w.letters(), layer, curls)
}

/// As [`build_path`] for an arbitrary letter sequence.
pub fn build_path_letters(w: &[Letter], layer: u8, curls: &[Curl]) -> BuiltPath {
    let layer = layer % LAYERS;
    let xb = PuncturedDisc::bullet().x;
    let xs = PuncturedDisc::star().x;
    let mut order: Vec<usize> = (0..curls.len()).collect();
    let mut curl_vertex = vec![0; curls.len()];
    let mut pts = vec![PuncturedDisc::bullet()];
    order.sort_by(|&i, &j| curls[i].y.cmp(&curls[j].y));
    for &i in order.iter().filter(|&&i| curls[i].stem == Stem::Bullet) {
        curl_vertex[i] = pts.len();
        pts.extend(curl_points(&Point::new(xb.clone(), curls[i].y.clone()), (0, 1), curls[i].ccw));
    }
    pts.push(Point::new(xb, corridor(0, layer)));
    petal_points(w, layer, &mut pts);
    pts.push(Point::new(xs.clone(), corridor(w.len(), layer)));
    for &i in order.iter().rev().filter(|&&i| curls[i].stem == Stem::Star) {
        curl_vertex[i] = pts.len();
        pts.extend(curl_points(&Point::new(xs.clone(), curls[i].y.clone()), (0, -1), curls[i].ccw));
    }
    pts.push(PuncturedDisc::star());
    BuiltPath { path: PLLoop::open(pts), curl_vertex }
}

/// Curls that bring `rot(γ̃ν)` to zero for a path whose bare rotation is `r`.
pub fn normalizing_curls(r: i64, placement: KinkPlacement) -> Vec<Curl> {
    let ccw = r < 0;
    (0..r.unsigned_abs() as i64)
        .map(|j| match placement {
            KinkPlacement::Start => Curl { stem: Stem::Bullet, y: q(-1) + qf(j + 1, 32), ccw },
            KinkPlacement::StartShifted => Curl { stem: Stem::Bullet, y: q(-1) + qf(3 * j + 4, 96), ccw },
            KinkPlacement::End => Curl { stem: Stem::Star, y: q(-1) + qf(j + 1, 48), ccw },
        })
        .collect()
}

/// The framing curl pair placed on the `*` stem: one clockwise curl then one
/// counterclockwise curl (in travel order).
pub fn framing_curls() -> [Curl; 2] {
    [Curl { stem: Stem::Star, y: qf(-15, 32), ccw: false }, Curl { stem: Stem::Star, y: qf(-17, 32), ccw: true }]
}

/// Maximum number of normalizing kinks a path may need.
const MAX_KINKS: i64 = 20;

/// The rotation-normalized open representative `γ̃` of `w` together with
/// the number of normalizing curls it carries (positive = counterclockwise).
pub fn normalized_path(w: &GroupWord, layer: u8, placement: KinkPlacement, extra: &[Curl]) -> Result<(BuiltPath, i64)> {
    normalized_path_letters(w.letters(), layer, placement, extra)
}

/// As [`normalized_path`] for an arbitrary letter sequence.
pub fn normalized_path_letters(
    w: &[Letter],
    layer: u8,
    placement: KinkPlacement,
    extra: &[Curl],
) -> Result<(BuiltPath, i64)> {
    let bare = build_path_letters(w, layer, &[]);
    let r = rotation_number(&bare.path.closed_up())?;
    if r.abs() > MAX_KINKS {
        return Err(GtError::Input(format!("word needs {} kinks, more than the supported {MAX_KINKS}", r.abs())));
    }
    let mut curls = normalizing_curls(r, placement);
    curls.extend_from_slice(extra);
    let built = build_path_letters(w, layer, &curls);
    debug_assert_eq!(
        rotation_number(&built.path.closed_up()).ok(),
        Some(extra.iter().map(|c| if c.ccw { 1 } else { -1 }).sum())
    );
    Ok((built, -r))
}

// ---------------------------------------------------------------------------
// Geometric operations

fn one() -> Coeff {
    Coeff::rational(q(1))
}

/// `[α, β] = -Σ_q ε_q |α_q β_q|` for two classes, by splicing ray-crossing
/// sequences at each mutual intersection.
pub fn bracket_classes_geometric(a: &CyclicClass, b: &CyclicClass, p: usize) -> Result<LoopCombo> {
    bracket_loops_geometric(&standard_loop(&a.representative(), 0), &standard_loop(&b.representative(), 1), p)
}

/// `-Σ_q ε_q |α_q β_q|` for two closed polylines in general position.
pub fn bracket_loops_geometric(la: &PLLoop, lb: &PLLoop, p: usize) -> Result<LoopCombo> {
    let xa = ray_crossings(la, p)?;
    let xb = ray_crossings(lb, p)?;
    let mut out = LoopCombo::new();
    for r in transverse_intersections(la, Some(lb), p)? {
        let mut letters = letters_around(&xa, &r.first.param);
        letters.extend(letters_around(&xb, &r.second.param));
        out.add_term(CyclicClass::from_cyclic_letters(letters), Coeff::rational(q(-r.sign as i64)));
    }
    Ok(out)
}

/// Bilinear extension of [`bracket_classes_geometric`].
pub fn goldman_bracket_geometric(x: &LoopCombo, y: &LoopCombo, p: usize) -> Result<LoopCombo> {
    let mut out = LoopCombo::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let br = bracket_classes_geometric(a, b, p)?;
            out.add_scaled(&br, &(ca.clone() * cb.clone()));
        }
    }
    Ok(out)
}

/// Options controlling the representative used by the self-intersection map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuOptions {
    pub layer: u8,
    pub placement: KinkPlacement,
}

impl Default for MuOptions {
    fn default() -> Self {
        MuOptions { layer: 0, placement: KinkPlacement::Start }
    }
}

/// `μ(γ) = -Σ_p ε_p |γ̃_{t1 t2}| ⊗ γ̃_{0 t1} γ̃_{t2 1}` on the normalized
/// representative.
pub fn mu_geometric_with(w: &GroupWord, p: usize, opts: MuOptions) -> Result<TensorElement> {
    mu_geometric_letters(w.letters(), p, opts)
}

/// As [`mu_geometric_with`] for an arbitrary letter sequence.
pub fn mu_geometric_letters(w: &[Letter], p: usize, opts: MuOptions) -> Result<TensorElement> {
    let (built, _) = normalized_path_letters(w, opts.layer, opts.placement, &[])?;
    let path = &built.path;
    let xs = ray_crossings(path, p)?;
    let mut out = TensorElement::new();
    for r in transverse_intersections(path, None, p)? {
        let (t1, t2) = (&r.first.param, &r.second.param);
        let lp = CyclicClass::from_cyclic_letters(letters_between(&xs, Some(t1), Some(t2)));
        let mut rest = letters_between(&xs, None, Some(t1));
        rest.extend(letters_between(&xs, Some(t2), None));
        out.add_term((lp, GroupWord::from_letters(rest)), Coeff::rational(q(-r.sign as i64)));
    }
    Ok(out)
}

pub fn mu_geometric(w: &GroupWord, p: usize) -> Result<TensorElement> {
    mu_geometric_with(w, p, MuOptions::default())
}

/// `Alt((1 ⊗ |·|)(μ(w))) + |w| ∧ |1|` for a based representative `w`.
pub fn delta_word_geometric(w: &GroupWord, p: usize, opts: MuOptions) -> Result<WedgeElement> {
    delta_letters_geometric(w.letters(), p, opts)
}

/// As [`delta_word_geometric`] for an arbitrary letter sequence.
pub fn delta_letters_geometric(w: &[Letter], p: usize, opts: MuOptions) -> Result<WedgeElement> {
    let mu = mu_geometric_letters(w, p, opts)?;
    let mut out = crate::word::alt_close(&mu);
    out.add(CyclicClass::from_cyclic_letters(w.iter().copied()), CyclicClass::trivial(), one());
    Ok(out)
}

/// The enhanced cobracket, extended linearly over a loop combination.
pub fn delta_geometric(x: &LoopCombo, p: usize) -> Result<WedgeElement> {
    let mut out = WedgeElement::new();
    for (c, k) in x {
        let d = delta_word_geometric(&c.representative(), p, MuOptions::default())?;
        out.add_assign(&d.scale(k));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PLLoopJson {
    pub points: Vec<[String; 2]>,
    pub closed: bool,
}

impl From<&PLLoop> for PLLoopJson {
    fn from(l: &PLLoop) -> Self {
        PLLoopJson { points: l.points.iter().map(|p| [fmt_q(&p.x), fmt_q(&p.y)]).collect(), closed: l.closed }
    }
}

impl PLLoopJson {
    pub fn to_loop(&self) -> Result<PLLoop> {
        let mut pts = Vec::with_capacity(self.points.len());
        for [x, y] in &self.points {
            let px = parse_q(x).ok_or_else(|| GtError::Input(format!("bad coordinate '{x}'")))?;
            let py = parse_q(y).ok_or_else(|| GtError::Input(format!("bad coordinate '{y}'")))?;
            pts.push(Point::new(px, py));
        }
        Ok(PLLoop { points: pts, closed: self.closed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(qf(x.0, x.1), qf(y.0, y.1))
    }

    fn square(x: i64, y: i64, s: i64, ccw: bool) -> PLLoop {
        let mut pts =
            vec![pt((x, 4), (y, 4)), pt((x + s, 4), (y, 4)), pt((x + s, 4), (y + s, 4)), pt((x, 4), (y + s, 4))];
        if !ccw {
            pts.reverse();
        }
        PLLoop::closed(pts)
    }

    #[test]
    fn rotation_of_squares_and_figure_eight() {
        assert_eq!(rotation_number(&square(1, -3, 2, true)).unwrap(), 1);
        assert_eq!(rotation_number(&square(1, -3, 2, false)).unwrap(), -1);
        let eight =
            PLLoop::closed(vec![pt((0, 1), (0, 1)), pt((1, 1), (1, 1)), pt((1, 1), (0, 1)), pt((0, 1), (1, 1))]);
        assert_eq!(rotation_number(&eight).unwrap(), 0);
    }

    #[test]
    fn degenerate_edges_are_rejected() {
        let bad = PLLoop::closed(vec![pt((1, 4), (0, 1)), pt((1, 4), (0, 1)), pt((1, 2), (1, 4))]);
        assert!(matches!(rotation_number(&bad), Err(GtError::Input(_))));
    }

    #[test]
    fn shifted_squares_meet_twice() {
        let a = square(4, -3, 2, true);
        let b = square(5, -2, 2, true);
        let recs = transverse_intersections(&a, Some(&b), 2).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs.iter().map(|r| r.sign as i64).sum::<i64>(), 0);
    }

    #[test]
    fn petal_round_trip() {
        for w in [vec![1], vec![1, 1], vec![2, -1], vec![-2, 1, -1, 2], vec![]] {
            let w = GroupWord::from_signed(&w);
            for layer in 0..LAYERS {
                assert_eq!(loop_word(&standard_loop(&w, layer), 2).unwrap(), w);
                assert_eq!(loop_word(&build_path(&w, layer, &[]).path, 2).unwrap(), w);
            }
        }
    }

    #[test]
    fn generator_petal_crosses_once_leftwards() {
        let xs = ray_crossings(&standard_loop(&GroupWord::from_signed(&[1]), 0), 1).unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].letter, Letter::pos(1));
    }

    #[test]
    fn vertex_on_ray_is_reported() {
        let l = PLLoop::closed(vec![pt((4, 4), (1, 4)), pt((6, 4), (1, 4)), pt((5, 4), (2, 4))]);
        let err = ray_crossings(&l, 1).unwrap_err();
        assert!(matches!(err, GenericityError::VertexOnRay { ray: 1, .. }));
        let json = serde_json::to_value(&err).unwrap();
        assert_eq!(json["kind"], "vertex_on_ray");
    }

    #[test]
    fn segment_through_puncture_is_reported() {
        let l = PLLoop::closed(vec![pt((2, 4), (-1, 4)), pt((6, 4), (1, 4)), pt((2, 4), (1, 4))]);
        assert!(matches!(ray_crossings(&l, 1), Err(GenericityError::ThroughPuncture { puncture: 1, .. })));
    }

    #[test]
    fn small_examples() {
        let g1 = GroupWord::from_signed(&[1]);
        let mu = mu_geometric(&g1, 1).unwrap();
        assert_eq!(mu, TensorElement::term((crate::word::cyclic_canonical(&g1), GroupWord::identity()), one()));
        let mu0 = mu_geometric(&GroupWord::identity(), 1).unwrap();
        assert_eq!(mu0, TensorElement::term((CyclicClass::trivial(), GroupWord::identity()), one()));
        assert!(delta_geometric(&LoopCombo::basis(CyclicClass::trivial()), 1).unwrap().is_zero());
    }
}
