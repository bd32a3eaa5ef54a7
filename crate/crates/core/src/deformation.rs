//! Moving a unit-weight copy of a legal path sideways.
//!
//! The path is split at its bends into straight lines `L_1..L_r`. For the
//! right deformation every line moves by `eps` to its right: a line walked
//! with increasing parameter has its constant coordinate raised by `eps`,
//! one walked the other way has it lowered. The copy `L'_i` joins the
//! moved bend points `u'_{i-1}, u'_i`, and each bend `u_i` is tied to
//! `u'_i` by a line `R_i` of weight `+1` (right turn) or `-1` (left turn).
//!
//! Every moving object is affine in `eps`, so each change in the
//! combinatorics of the deformed system happens at a root of a linear
//! equation. [`stop_epsilon`] walks these roots in order.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::axis::{Axis, Sign};
use crate::error::{Error, Result};
use crate::honeycomb::{DualPoint, HLine, Honeycomb, LineKind, XiSystem};
use crate::integralizer::{potential, Potential};
use crate::legal_path::{LegalPath, Turn};
use crate::rational::{self, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    Right,
    Left,
}

/// One maximal straight piece of the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLine {
    /// The line at `eps = 0`.
    pub line: HLine,
    /// `Plus` if the path walks it with increasing parameter.
    pub travel: Sign,
    /// Bend indices of its start `u_{i-1}` and end `u_i`; `None` at a
    /// dummy end.
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub edges: Vec<usize>,
}

impl PathLine {
    pub fn length(&self) -> Option<Rational> {
        self.line.length()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BendPoint {
    pub vertex: usize,
    pub point: DualPoint,
    pub turn: Turn,
    /// Lines arriving at and leaving the bend.
    pub incoming: usize,
    pub outgoing: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLines {
    pub lines: Vec<PathLine>,
    pub bends: Vec<BendPoint>,
    pub is_cycle: bool,
}

impl PathLines {
    /// `min l(L_i)` over finite lines with right turns at both ends.
    pub fn eps0(&self) -> Option<Rational> {
        self.lines
            .iter()
            .filter(|l| {
                let right = |b: Option<usize>| b.is_some_and(|b| self.bends[b].turn == Turn::Right);
                right(l.start) && right(l.end)
            })
            .filter_map(PathLine::length)
            .min()
    }
}

/// Split a legal path at its bends.
pub fn decompose(hc: &Honeycomb, path: &LegalPath) -> Result<PathLines> {
    let mut path = path.clone();
    if path.is_cycle {
        let first = path
            .bends(hc)
            .first()
            .map(|b| b.position % path.len())
            .ok_or_else(|| Error::Deformation("legal cycle without bends".into()))?;
        path.edges.rotate_left(first);
        let k = path.len();
        let mut vs: Vec<Option<usize>> = path.vertices[..k].to_vec();
        vs.rotate_left(first);
        vs.push(vs[0]);
        path.vertices = vs;
    }
    let k = path.len();
    let bend_list = path.bends(hc);
    let mut cuts: Vec<usize> = bend_list.iter().map(|b| b.position).collect();
    if path.is_cycle {
        // The closing bend sits at position k; it is also u_0.
        cuts.retain(|&c| c != k);
        cuts.insert(0, 0);
        cuts.push(k);
    } else {
        cuts.insert(0, 0);
        cuts.push(k);
    }
    let nb = if path.is_cycle { cuts.len() - 1 } else { cuts.len() - 2 };
    let bend_at = |line_end: usize| -> Option<usize> {
        if path.is_cycle {
            Some(line_end % nb)
        } else if line_end == 0 || line_end == cuts.len() - 1 {
            None
        } else {
            Some(line_end - 1)
        }
    };

    let mut lines = Vec::new();
    for i in 1..cuts.len() {
        let (a, b) = (cuts[i - 1], cuts[i]);
        let edges = path.edges[a..b].to_vec();
        let first = hc.edge(edges[0]);
        let axis = first.axis();
        let coord = first.coord().clone();
        if edges.iter().any(|&e| hc.edge(e).axis() != axis || hc.edge(e).coord() != &coord) {
            return Err(Error::Deformation("path piece between bends is not straight".into()));
        }
        let param = |v: Option<usize>| v.map(|v| hc.vertex(v).param(axis).clone());
        let (ts, te) = (param(path.vertices[a]), param(path.vertices[b]));
        let travel = match (&ts, &te) {
            (Some(s), Some(e)) => {
                if s < e {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
            (None, _) => match first.line.kind() {
                LineKind::Ray(s) => s.flip(),
                _ => unreachable!("dummy start lies on a ray"),
            },
            (Some(_), None) => match hc.edge(*edges.last().unwrap()).line.kind() {
                LineKind::Ray(s) => s,
                _ => unreachable!("dummy end lies on a ray"),
            },
        };
        let (lo, hi) = match travel {
            Sign::Plus => (ts, te),
            Sign::Minus => (te, ts),
        };
        let start = if i == 1 && !path.is_cycle { None } else { bend_at(i - 1) };
        let end = if i == cuts.len() - 1 && !path.is_cycle { None } else { bend_at(i) };
        lines.push(PathLine {
            line: HLine { axis, coord, lo, hi },
            travel,
            start,
            end,
            edges,
        });
    }
    let r = lines.len();
    let mut bends = Vec::with_capacity(nb);
    for j in 0..nb {
        let pos = if path.is_cycle { cuts[j] } else { cuts[j + 1] };
        let b = bend_list
            .iter()
            .find(|b| b.position % k == pos % k)
            .expect("cut positions are bends");
        let (incoming, outgoing) = if path.is_cycle { ((j + r - 1) % r, j) } else { (j, j + 1) };
        bends.push(BendPoint {
            vertex: b.vertex,
            point: hc.vertex(b.vertex).clone(),
            turn: b.turn,
            incoming,
            outgoing,
        });
    }
    Ok(PathLines { lines, bends, is_cycle: path.is_cycle })
}

/// `u'`: the bend point after both lines at it have moved by `eps`.
///
/// With constant coordinates `p` (arriving line) and `p'` (leaving line),
/// both lines of sign `+` at `u` give `(d_p - eps, d_p' + eps)` and both of
/// sign `-` give `(d_p + eps, d_p' - eps)`.
pub fn shifted_point(u: &DualPoint, p: Axis, p2: Axis, sign_at_u: Sign, eps: &Rational) -> DualPoint {
    let s = Rational::from_integer(sign_at_u.as_i64().into());
    let dp = u.d(p) - &s * eps;
    let dp2 = u.d(p2) + &s * eps;
    DualPoint::meet(p, &dp, p2, &dp2)
}

/// `a + b * eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Aff {
    a: Rational,
    b: Rational,
}

impl Aff {
    fn fixed(a: Rational) -> Self {
        Aff { a, b: Rational::zero() }
    }

    fn at(&self, eps: &Rational) -> Rational {
        &self.a + &self.b * eps
    }

    fn minus(&self, o: &Aff) -> Aff {
        Aff { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn plus(&self, o: &Aff) -> Aff {
        Aff { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn moving(&self) -> bool {
        !self.b.is_zero()
    }

    /// The unique zero, if the function is not constant.
    fn root(&self) -> Option<Rational> {
        self.moving().then(|| -&self.a / &self.b)
    }
}

#[derive(Clone, Debug)]
struct AffPoint([Aff; 3]);

impl AffPoint {
    fn fixed(p: &DualPoint) -> Self {
        AffPoint(p.coords().clone().map(Aff::fixed))
    }

    fn moving(&self) -> bool {
        self.0.iter().any(Aff::moving)
    }
}

#[derive(Clone, Debug)]
struct AffSupport {
    axis: Axis,
    coord: Aff,
}

impl PathLines {
    fn shifted_coord(&self, i: usize) -> Aff {
        let l = &self.lines[i];
        Aff { a: l.line.coord.clone(), b: Rational::from_integer(l.travel.as_i64().into()) }
    }

    fn moved_bend(&self, j: usize) -> AffPoint {
        let b = &self.bends[j];
        let (li, lo) = (&self.lines[b.incoming], &self.lines[b.outgoing]);
        let (p, q) = (li.line.axis, lo.line.axis);
        let (cp, cq) = (self.shifted_coord(b.incoming), self.shifted_coord(b.outgoing));
        let mut d: [Aff; 3] = Default::default();
        d[p.index()] = cp.clone();
        d[q.index()] = cq.clone();
        let k = 3 - p.index() - q.index();
        let sum = cp.plus(&cq);
        d[k] = Aff { a: -sum.a, b: -sum.b };
        AffPoint(d)
    }

    fn moved_bend_at(&self, j: usize, eps: &Rational) -> DualPoint {
        let p = self.moved_bend(j);
        DualPoint::new(p.0[0].at(eps), p.0[1].at(eps))
    }

    /// `L'_i` at `eps`, or `None` if it has shrunk to a point.
    pub fn moved_line(&self, i: usize, eps: &Rational) -> Option<HLine> {
        let l = &self.lines[i];
        let axis = l.line.axis;
        let coord = self.shifted_coord(i).at(eps);
        let param = |b: Option<usize>| b.map(|b| self.moved_bend_at(b, eps).param(axis).clone());
        let (ts, te) = (param(l.start), param(l.end));
        let (lo, hi) = match l.travel {
            Sign::Plus => (ts, te),
            Sign::Minus => (te, ts),
        };
        let moved = HLine { axis, coord, lo, hi };
        match moved.length() {
            Some(len) if len.is_zero() => None,
            _ => Some(moved),
        }
    }
}

impl Default for Aff {
    fn default() -> Self {
        Aff::fixed(Rational::zero())
    }
}

/// The deformed system at `eps`, with the path taken in the given
/// direction.
pub fn build_deformed_system(hc: &Honeycomb, pl: &PathLines, eps: &Rational) -> Result<XiSystem> {
    if eps.is_negative() {
        return Err(Error::EpsilonOutOfRange(rational::format(eps)));
    }
    if let Some(e0) = pl.eps0() {
        if eps > &e0 {
            return Err(Error::EpsilonOutOfRange(format!(
                "{} exceeds the shortest shrinking line {}",
                rational::format(eps),
                rational::format(&e0)
            )));
        }
    }
    let mut s = hc.to_system();
    for (i, l) in pl.lines.iter().enumerate() {
        s.push(l.line.clone(), -1);
        if let Some(m) = pl.moved_line(i, eps) {
            s.push(m, 1);
        }
    }
    if !eps.is_zero() {
        for (j, b) in pl.bends.iter().enumerate() {
            let moved = pl.moved_bend_at(j, eps);
            let r = HLine::between(&b.point, &moved).expect("bend points move along a line");
            s.push(r, if b.turn == Turn::Right { 1 } else { -1 });
        }
    }
    Ok(s)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StopKind {
    /// An end line of an open path reached an integer constant coordinate.
    BoundaryIntegral,
    /// Vertices of opposite signs merged.
    OppositeSignsMerge,
    /// A moved line or point reached an integral vertex.
    HitsIntegerVertex,
    /// A line with right turns at both ends shrank to a point.
    LineVanishes,
    /// Moving further would break the pre-honeycomb conditions.
    ValidityBound,
}

impl StopKind {
    pub fn code(self) -> &'static str {
        match self {
            StopKind::BoundaryIntegral => "E1",
            StopKind::OppositeSignsMerge => "E2",
            StopKind::HitsIntegerVertex => "E3",
            StopKind::LineVanishes => "EPS0",
            StopKind::ValidityBound => "EPS1",
        }
    }
}

impl fmt::Display for StopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StopEvent {
    pub epsilon: Rational,
    /// All events occurring at `epsilon`.
    pub kinds: Vec<StopKind>,
}

#[derive(Clone, Debug)]
pub struct Deformed {
    pub honeycomb: Honeycomb,
    pub stop: StopEvent,
    pub before: Potential,
    pub after: Potential,
}

/// Apply `dir` to the path: the left deformation is the right one of the
/// reversed path.
pub fn oriented(path: &LegalPath, dir: Direction) -> LegalPath {
    match dir {
        Direction::Right => path.clone(),
        Direction::Left => path.reversed(),
    }
}

fn first_integer_after(c: &Aff) -> Option<Rational> {
    let a = &c.a;
    if c.b.is_positive() {
        Some((rational::int_above(a) - a) / &c.b)
    } else if c.b.is_negative() {
        Some((rational::int_below(a) - a) / &c.b)
    } else {
        None
    }
}

/// All `eps` in `(0, bound]` with `c(eps)` integral.
fn integer_crossings(c: &Aff, bound: &Rational, out: &mut BTreeSet<Rational>) {
    if !c.moving() {
        return;
    }
    let step = Rational::one() / c.b.abs();
    let mut e = match first_integer_after(c) {
        Some(e) => e,
        None => return,
    };
    while &e <= bound {
        out.insert(e.clone());
        e += &step;
    }
}

fn candidates(hc: &Honeycomb, pl: &PathLines, bound: Option<&Rational>) -> BTreeSet<Rational> {
    let mut static_supports: BTreeSet<(Axis, Rational)> =
        hc.edges().iter().map(|e| (e.axis(), e.coord().clone())).collect();
    let mut points: Vec<AffPoint> = hc.vertices().iter().map(AffPoint::fixed).collect();
    let mut moving_supports = Vec::new();
    for (j, b) in pl.bends.iter().enumerate() {
        let m = pl.moved_bend(j);
        // R_j lies on the support through u_j that both u_j and u'_j share.
        if let Some(ax) = Axis::ALL.into_iter().find(|&ax| !m.0[ax.index()].moving()) {
            static_supports.insert((ax, b.point.d(ax).clone()));
        }
        points.push(m);
    }
    for i in 0..pl.lines.len() {
        moving_supports.push(AffSupport { axis: pl.lines[i].line.axis, coord: pl.shifted_coord(i) });
    }
    let supports: Vec<AffSupport> = static_supports
        .into_iter()
        .map(|(axis, c)| AffSupport { axis, coord: Aff::fixed(c) })
        .chain(moving_supports)
        .collect();

    let mut out = BTreeSet::new();
    let mut add = |e: Option<Rational>| {
        if let Some(e) = e {
            if e.is_positive() && bound.is_none_or(|b| &e <= b) {
                out.insert(e);
            }
        }
    };
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if !p.moving() && !q.moving() {
                continue;
            }
            let diffs: Vec<Aff> = (0..3).map(|k| p.0[k].minus(&q.0[k])).collect();
            if let Some(r) = diffs.iter().find_map(Aff::root) {
                if diffs.iter().all(|d| d.at(&r).is_zero()) {
                    add(Some(r));
                }
            }
        }
        for s in &supports {
            if p.moving() || s.coord.moving() {
                add(p.0[s.axis.index()].minus(&s.coord).root());
            }
        }
    }
    for (i, s) in supports.iter().enumerate() {
        for (j, t) in supports.iter().enumerate().skip(i + 1) {
            let moving2 = s.coord.moving() || t.coord.moving();
            if s.axis == t.axis {
                if moving2 {
                    add(s.coord.minus(&t.coord).root());
                }
                continue;
            }
            for u in supports.iter().skip(j + 1) {
                if u.axis == s.axis || u.axis == t.axis || !(moving2 || u.coord.moving()) {
                    continue;
                }
                add(s.coord.plus(&t.coord).plus(&u.coord).root());
            }
        }
    }
    let horizon = match bound {
        Some(b) => b.clone(),
        None => out.iter().next_back().cloned().unwrap_or_else(Rational::one) + Rational::one(),
    };
    for p in points.iter().filter(|p| p.moving()) {
        for c in &p.0 {
            integer_crossings(c, &horizon, &mut out);
        }
    }
    for i in 0..pl.lines.len() {
        integer_crossings(&pl.shifted_coord(i), &horizon, &mut out);
    }
    out
}

/// Upper limit on `eps` before any event: the shrinking-line bound and,
/// for open paths, the first integral position of an end line.
fn hard_bound(pl: &PathLines) -> Option<Rational> {
    let mut b = pl.eps0();
    if !pl.is_cycle {
        let r = pl.lines.len();
        for i in [0, r - 1] {
            if let Some(e) = first_integer_after(&pl.shifted_coord(i)) {
                b = Some(b.map_or(e.clone(), |x| x.min(e)));
            }
        }
    }
    b
}

fn classify(
    hc: &Honeycomb,
    pl: &PathLines,
    eps: &Rational,
    before: &Potential,
    after: &Potential,
) -> Vec<StopKind> {
    let mut kinds = Vec::new();
    if !pl.is_cycle {
        let r = pl.lines.len();
        if [0, r - 1].iter().any(|&i| rational::is_integral(&pl.shifted_coord(i).at(eps))) {
            kinds.push(StopKind::BoundaryIntegral);
        }
    }
    if pl.eps0().as_ref() == Some(eps) {
        kinds.push(StopKind::LineVanishes);
    }
    let integral: Vec<&DualPoint> = hc.vertices().iter().filter(|v| v.is_integral()).collect();
    let swept = (0..pl.lines.len())
        .filter_map(|i| pl.moved_line(i, eps))
        .any(|l| integral.iter().any(|v| l.contains(v)));
    let reached = (0..pl.bends.len()).any(|j| pl.moved_bend_at(j, eps).is_integral());
    if swept || reached || after.omega > before.omega {
        kinds.push(StopKind::HitsIntegerVertex);
    }
    if after.delta < before.delta && !kinds.contains(&StopKind::LineVanishes) {
        kinds.push(StopKind::OppositeSignsMerge);
    }
    kinds.sort();
    kinds.dedup();
    kinds
}

/// The first `eps > 0` at which the deformation must stop, with the
/// honeycomb there.
pub fn stop_epsilon(hc: &Honeycomb, pl: &PathLines) -> Result<(StopEvent, Honeycomb)> {
    let before = potential(hc);
    let bound = hard_bound(pl);
    let cands = candidates(hc, pl, bound.as_ref());
    let mut prev = Rational::zero();
    let mut prev_hc: Option<Honeycomb> = None;
    for c in cands {
        let mid = (&prev + &c) / Rational::from_integer(2.into());
        if !build_deformed_system(hc, pl, &mid)?.is_prehoneycomb() {
            return match prev_hc {
                Some(h) => {
                    let after = potential(&h);
                    if after.eta >= before.eta {
                        return Err(Error::Deformation(format!(
                            "validity bound at {} without progress",
                            rational::format(&prev)
                        )));
                    }
                    let mut kinds = classify(hc, pl, &prev, &before, &after);
                    kinds.push(StopKind::ValidityBound);
                    kinds.sort();
                    kinds.dedup();
                    Ok((StopEvent { epsilon: prev, kinds }, h))
                }
                None => Err(Error::Deformation("deformed system invalid for small eps".into())),
            };
        }
        let here = build_deformed_system(hc, pl, &c)?.canonicalize()?;
        let after = potential(&here);
        let kinds = classify(hc, pl, &c, &before, &after);
        if !kinds.is_empty() || after.eta < before.eta {
            if after.eta >= before.eta {
                return Err(Error::Deformation(format!(
                    "stop at {} ({:?}) does not decrease the potential",
                    rational::format(&c),
                    kinds
                )));
            }
            return Ok((StopEvent { epsilon: c, kinds }, here));
        }
        prev = c;
        prev_hc = Some(here);
    }
    Err(Error::Deformation("no stopping event found".into()))
}

/// Deform `path` in direction `dir` as far as the first stopping event.
pub fn deform(hc: &Honeycomb, path: &LegalPath, dir: Direction) -> Result<Deformed> {
    let pl = decompose(hc, &oriented(path, dir))?;
    let before = potential(hc);
    let (stop, honeycomb) = stop_epsilon(hc, &pl)?;
    let after = potential(&honeycomb);
    Ok(Deformed { honeycomb, stop, before, after })
}

/// Direction used by the integralization loop: right for open paths;
/// for cycles, the orientation with two consecutive right turns.
pub fn preferred_direction(hc: &Honeycomb, path: &LegalPath) -> Direction {
    if !path.is_cycle || path.has_consecutive_right_turns(hc) {
        Direction::Right
    } else {
        Direction::Left
    }
}
