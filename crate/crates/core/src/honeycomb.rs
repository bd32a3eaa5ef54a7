//! Xi-systems, pre-honeycombs and honeycombs in exact dual coordinates.
//!
//! A point of the plane is stored by its dual coordinates
//! `d_i(x) = -x . xi_i`, which sum to zero. A line perpendicular to
//! `xi_i` keeps `d_i` fixed and is parameterised by `t = d_{i+1}`; the
//! half-line `Xi_i^+(v)` is the part with `t >= t(v)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::axis::{Axis, Sign};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualPoint {
    d: [Rational; 3],
}

impl DualPoint {
    /// Point with the given `d_1, d_2`; `d_3` is implied.
    pub fn new(d1: Rational, d2: Rational) -> Self {
        let d3 = -(&d1 + &d2);
        DualPoint { d: [d1, d2, d3] }
    }

    pub fn from_coords(d1: Rational, d2: Rational, d3: Rational) -> Result<Self> {
        if !(&d1 + &d2 + &d3).is_zero() {
            return Err(Error::Parse("dual coordinates must sum to zero".into()));
        }
        Ok(DualPoint { d: [d1, d2, d3] })
    }

    pub fn origin() -> Self {
        DualPoint::new(Rational::zero(), Rational::zero())
    }

    /// Point on the line `d_axis = coord` at parameter `t = d_{axis+1}`.
    pub fn on_line(axis: Axis, coord: &Rational, t: &Rational) -> Self {
        let mut d: [Rational; 3] = Default::default();
        d[axis.index()] = coord.clone();
        d[axis.next().index()] = t.clone();
        d[axis.prev().index()] = -(coord + t);
        DualPoint { d }
    }

    /// Point whose `d_i` is `c_i` and `d_j` is `c_j` for distinct axes.
    pub fn meet(i: Axis, ci: &Rational, j: Axis, cj: &Rational) -> Self {
        debug_assert_ne!(i, j);
        let mut d: [Rational; 3] = Default::default();
        d[i.index()] = ci.clone();
        d[j.index()] = cj.clone();
        let k = 3 - i.index() - j.index();
        d[k] = -(ci + cj);
        DualPoint { d }
    }

    pub fn d(&self, axis: Axis) -> &Rational {
        &self.d[axis.index()]
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.d
    }

    /// Parameter of this point along a line perpendicular to `axis`.
    pub fn param(&self, axis: Axis) -> &Rational {
        &self.d[axis.next().index()]
    }

    pub fn is_integral(&self) -> bool {
        self.d.iter().all(rational::is_integral)
    }

    pub fn shift(&self, delta: &DualPoint) -> DualPoint {
        DualPoint {
            d: [&self.d[0] + &delta.d[0], &self.d[1] + &delta.d[1], &self.d[2] + &delta.d[2]],
        }
    }
}

impl fmt::Display for DualPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}]",
            rational::format(&self.d[0]),
            rational::format(&self.d[1]),
            rational::format(&self.d[2])
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LineKind {
    Finite,
    /// Half-line `Xi^s(end)`.
    Ray(Sign),
    Full,
}

/// Line perpendicular to `xi_axis`: the points with `d_axis = coord` and
/// parameter in `[lo, hi]`, where `None` stands for an infinite end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HLine {
    pub axis: Axis,
    pub coord: Rational,
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl HLine {
    pub fn segment(axis: Axis, coord: Rational, lo: Rational, hi: Rational) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        HLine { axis, coord, lo: Some(lo), hi: Some(hi) }
    }

    pub fn ray(axis: Axis, coord: Rational, end: Rational, sign: Sign) -> Self {
        match sign {
            Sign::Plus => HLine { axis, coord, lo: Some(end), hi: None },
            Sign::Minus => HLine { axis, coord, lo: None, hi: Some(end) },
        }
    }

    pub fn full(axis: Axis, coord: Rational) -> Self {
        HLine { axis, coord, lo: None, hi: None }
    }

    /// `Xi_axis^sign(v)`.
    pub fn ray_from(v: &DualPoint, axis: Axis, sign: Sign) -> Self {
        HLine::ray(axis, v.d(axis).clone(), v.param(axis).clone(), sign)
    }

    /// Segment `pq` if the two points lie on a common line perpendicular to
    /// some axis.
    pub fn between(p: &DualPoint, q: &DualPoint) -> Option<Self> {
        if p == q {
            return None;
        }
        Axis::ALL.into_iter().find(|&ax| p.d(ax) == q.d(ax)).map(|ax| {
            HLine::segment(ax, p.d(ax).clone(), p.param(ax).clone(), q.param(ax).clone())
        })
    }

    pub fn kind(&self) -> LineKind {
        match (&self.lo, &self.hi) {
            (Some(_), Some(_)) => LineKind::Finite,
            (Some(_), None) => LineKind::Ray(Sign::Plus),
            (None, Some(_)) => LineKind::Ray(Sign::Minus),
            (None, None) => LineKind::Full,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.kind() == LineKind::Finite
    }

    pub fn point_at(&self, t: &Rational) -> DualPoint {
        DualPoint::on_line(self.axis, &self.coord, t)
    }

    pub fn lo_point(&self) -> Option<DualPoint> {
        self.lo.as_ref().map(|t| self.point_at(t))
    }

    pub fn hi_point(&self) -> Option<DualPoint> {
        self.hi.as_ref().map(|t| self.point_at(t))
    }

    pub fn endpoints(&self) -> Vec<DualPoint> {
        self.lo_point().into_iter().chain(self.hi_point()).collect()
    }

    /// Scaled length: the change of either varying dual coordinate.
    pub fn length(&self) -> Option<Rational> {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => Some(h - l),
            _ => None,
        }
    }

    pub fn contains_param(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= t) && self.hi.as_ref().is_none_or(|h| t <= h)
    }

    pub fn contains(&self, p: &DualPoint) -> bool {
        p.d(self.axis) == &self.coord && self.contains_param(p.param(self.axis))
    }

    /// True if `p` lies on the line but is not an endpoint.
    pub fn contains_in_interior(&self, p: &DualPoint) -> bool {
        if p.d(self.axis) != &self.coord {
            return false;
        }
        let t = p.param(self.axis);
        self.lo.as_ref().is_none_or(|l| l < t) && self.hi.as_ref().is_none_or(|h| t < h)
    }

    /// Sign of this line at its endpoint `v`.
    pub fn sign_at(&self, v: &DualPoint) -> Option<Sign> {
        let t = v.param(self.axis);
        if v.d(self.axis) != &self.coord {
            None
        } else if self.lo.as_ref() == Some(t) {
            Some(Sign::Plus)
        } else if self.hi.as_ref() == Some(t) {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl fmt::Display for HLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |x: &Option<Rational>, inf: &str| x.as_ref().map_or(inf.to_string(), rational::format);
        write!(
            f,
            "Xi{}[d={}; {}..{}]",
            self.axis,
            rational::format(&self.coord),
            end(&self.lo, "-inf"),
            end(&self.hi, "+inf")
        )
    }
}

/// Six ray weights `w_i^s(v)`, indexed `[axis][sign]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct RayWeights(pub [[i64; 2]; 3]);

impl RayWeights {
    pub fn get(&self, axis: Axis, sign: Sign) -> i64 {
        self.0[axis.index()][sign.index()]
    }

    pub fn nonzero(&self) -> usize {
        self.0.iter().flatten().filter(|w| **w != 0).count()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().flatten().all(|w| *w >= 0)
    }

    /// `w_i^+ - w_i^-` if it agrees for all three axes.
    pub fn divergency(&self) -> Option<i64> {
        let d: Vec<i64> = self.0.iter().map(|w| w[0] - w[1]).collect();
        (d[0] == d[1] && d[1] == d[2]).then_some(d[0])
    }
}

/// Integer-weighted finite multiset of lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XiSystem {
    pub lines: Vec<(HLine, i64)>,
}

impl XiSystem {
    pub fn new() -> Self {
        XiSystem::default()
    }

    pub fn push(&mut self, line: HLine, weight: i64) {
        if weight != 0 {
            self.lines.push((line, weight));
        }
    }

    pub fn extend(&mut self, other: &XiSystem) {
        self.lines.extend(other.lines.iter().cloned());
    }

    pub fn ray_weights(&self, v: &DualPoint) -> RayWeights {
        Profiles::new(self).ray_weights(v)
    }

    pub fn check_prehoneycomb(&self) -> Result<()> {
        Profiles::new(self).check()
    }

    pub fn is_prehoneycomb(&self) -> bool {
        self.check_prehoneycomb().is_ok()
    }

    pub fn canonicalize(&self) -> Result<Honeycomb> {
        Profiles::new(self).canonicalize()
    }
}

/// Piecewise-constant total weight along one supporting line.
#[derive(Clone, Debug, Default)]
struct Profile {
    /// Weight on the part below every breakpoint.
    base: i64,
    breaks: Vec<Rational>,
    /// `after[k]` is the weight between `breaks[k]` and `breaks[k+1]`.
    after: Vec<i64>,
}

impl Profile {
    fn build(lines: &[(&HLine, i64)]) -> Profile {
        let mut base = 0;
        let mut deltas: BTreeMap<Rational, i64> = BTreeMap::new();
        for (l, w) in lines {
            match &l.lo {
                None => base += w,
                Some(t) => *deltas.entry(t.clone()).or_insert(0) += w,
            }
            if let Some(t) = &l.hi {
                *deltas.entry(t.clone()).or_insert(0) -= w;
            }
        }
        let mut acc = base;
        let mut breaks = Vec::with_capacity(deltas.len());
        let mut after = Vec::with_capacity(deltas.len());
        for (t, d) in deltas {
            acc += d;
            breaks.push(t);
            after.push(acc);
        }
        Profile { base, breaks, after }
    }

    /// Weight just above `t`.
    fn above(&self, t: &Rational) -> i64 {
        let k = self.breaks.partition_point(|b| b <= t);
        if k == 0 {
            self.base
        } else {
            self.after[k - 1]
        }
    }

    /// Weight just below `t`.
    fn below(&self, t: &Rational) -> i64 {
        let k = self.breaks.partition_point(|b| b < t);
        if k == 0 {
            self.base
        } else {
            self.after[k - 1]
        }
    }

    fn is_empty(&self) -> bool {
        self.base == 0 && self.after.iter().all(|w| *w == 0)
    }

    fn min_weight(&self) -> i64 {
        self.after.iter().copied().fold(self.base, i64::min)
    }
}

type SupportKey = (Axis, Rational);

/// A system prepared for point queries.
struct Profiles {
    supports: BTreeMap<SupportKey, Profile>,
    endpoints: BTreeSet<DualPoint>,
}

impl Profiles {
    fn new(system: &XiSystem) -> Self {
        let mut grouped: BTreeMap<SupportKey, Vec<(&HLine, i64)>> = BTreeMap::new();
        let mut endpoints = BTreeSet::new();
        for (l, w) in &system.lines {
            grouped.entry((l.axis, l.coord.clone())).or_default().push((l, *w));
            endpoints.extend(l.endpoints());
        }
        let supports = grouped
            .into_iter()
            .map(|(k, ls)| (k, Profile::build(&ls)))
            .filter(|(_, p)| !p.is_empty())
            .collect();
        Profiles { supports, endpoints }
    }

    fn ray_weights(&self, v: &DualPoint) -> RayWeights {
        let mut w = [[0i64; 2]; 3];
        for ax in Axis::ALL {
            if let Some(p) = self.supports.get(&(ax, v.d(ax).clone())) {
                let t = v.param(ax);
                w[ax.index()] = [p.above(t), p.below(t)];
            }
        }
        RayWeights(w)
    }

    fn check(&self) -> Result<()> {
        for ((ax, c), p) in &self.supports {
            if p.min_weight() < 0 {
                return Err(Error::NotPreHoneycomb(format!(
                    "negative weight on line Xi{ax} d={}",
                    rational::format(c)
                )));
            }
        }
        for v in &self.endpoints {
            if self.ray_weights(v).divergency().is_none() {
                return Err(Error::NotPreHoneycomb(format!("unbalanced point {v}")));
            }
        }
        Ok(())
    }

    fn candidate_points(&self) -> BTreeSet<DualPoint> {
        let mut pts = self.endpoints.clone();
        let keys: Vec<&SupportKey> = self.supports.keys().collect();
        for (n, (ai, ci)) in keys.iter().enumerate() {
            for (aj, cj) in &keys[n + 1..] {
                if ai != aj {
                    pts.insert(DualPoint::meet(*ai, ci, *aj, cj));
                }
            }
        }
        pts
    }

    fn canonicalize(&self) -> Result<Honeycomb> {
        self.check()?;
        let vertices: Vec<DualPoint> = self
            .candidate_points()
            .into_iter()
            .filter(|p| self.ray_weights(p).nonzero() >= 3)
            .collect();
        if vertices.is_empty() {
            return Err(Error::InvalidHoneycomb("no vertices".into()));
        }
        let mut on_support: BTreeMap<SupportKey, Vec<Rational>> = BTreeMap::new();
        for v in &vertices {
            for ax in Axis::ALL {
                let key = (ax, v.d(ax).clone());
                if self.supports.contains_key(&key) {
                    on_support.entry(key).or_default().push(v.param(ax).clone());
                }
            }
        }
        let mut edges = Vec::new();
        for ((ax, c), profile) in &self.supports {
            let mut ts = on_support.remove(&(*ax, c.clone())).unwrap_or_default();
            ts.sort();
            if ts.is_empty() {
                return Err(Error::InvalidHoneycomb(format!(
                    "line Xi{ax} d={} carries weight but no vertex",
                    rational::format(c)
                )));
            }
            let first = &ts[0];
            let w = profile.below(first);
            if w > 0 {
                edges.push(Edge::new(HLine::ray(*ax, c.clone(), first.clone(), Sign::Minus), w));
            }
            for pair in ts.windows(2) {
                let w = profile.above(&pair[0]);
                if w != profile.below(&pair[1]) {
                    return Err(Error::NotPreHoneycomb(format!(
                        "weight changes between vertices on Xi{ax} d={}",
                        rational::format(c)
                    )));
                }
                if w > 0 {
                    edges.push(Edge::new(
                        HLine::segment(*ax, c.clone(), pair[0].clone(), pair[1].clone()),
                        w,
                    ));
                }
            }
            let last = ts.last().expect("nonempty");
            let w = profile.above(last);
            if w > 0 {
                edges.push(Edge::new(HLine::ray(*ax, c.clone(), last.clone(), Sign::Plus), w));
            }
        }
        Ok(Honeycomb::assemble(vertices, edges))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub line: HLine,
    pub weight: i64,
}

impl Edge {
    pub fn new(line: HLine, weight: i64) -> Self {
        Edge { line, weight }
    }

    /// Constant dual coordinate `d^c(e)`.
    pub fn coord(&self) -> &Rational {
        &self.line.coord
    }

    pub fn axis(&self) -> Axis {
        self.line.axis
    }

    pub fn is_integral(&self) -> bool {
        rational::is_integral(&self.line.coord)
    }

    pub fn is_finite(&self) -> bool {
        self.line.is_finite()
    }
}

/// Vertex/edge form of a pre-honeycomb. Vertices are sorted by dual
/// coordinates and edges by `(axis, d^c, lo, hi)`, so structural equality
/// is canonical equality.
#[derive(Clone, Debug)]
pub struct Honeycomb {
    vertices: Vec<DualPoint>,
    edges: Vec<Edge>,
    index: BTreeMap<DualPoint, usize>,
    /// `incidence[v][axis][sign]`: edge `e_axis^sign(v)`.
    incidence: Vec<[[Option<usize>; 2]; 3]>,
    /// `(lo vertex, hi vertex)` of each edge.
    ends: Vec<(Option<usize>, Option<usize>)>,
}

impl PartialEq for Honeycomb {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Honeycomb {}

impl Honeycomb {
    fn assemble(mut vertices: Vec<DualPoint>, mut edges: Vec<Edge>) -> Honeycomb {
        vertices.sort();
        vertices.dedup();
        edges.sort();
        let index: BTreeMap<DualPoint, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut incidence = vec![[[None; 2]; 3]; vertices.len()];
        let mut ends = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let lo = e.line.lo_point().and_then(|p| index.get(&p).copied());
            let hi = e.line.hi_point().and_then(|p| index.get(&p).copied());
            if let Some(v) = lo {
                incidence[v][e.axis().index()][Sign::Plus.index()] = Some(k);
            }
            if let Some(v) = hi {
                incidence[v][e.axis().index()][Sign::Minus.index()] = Some(k);
            }
            ends.push((lo, hi));
        }
        Honeycomb { vertices, edges, index, incidence, ends }
    }

    /// Build from an explicit edge list, checking every honeycomb axiom:
    /// the result must already be in canonical form.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Honeycomb> {
        if let Some(e) = edges.iter().find(|e| e.weight <= 0) {
            return Err(Error::InvalidHoneycomb(format!("nonpositive weight on {}", e.line)));
        }
        if edges.iter().any(|e| e.line.kind() == LineKind::Full) {
            return Err(Error::InvalidHoneycomb("fully infinite edge".into()));
        }
        let mut system = XiSystem::new();
        for e in &edges {
            system.push(e.line.clone(), e.weight);
        }
        let canonical = system.canonicalize()?;
        let mut sorted = edges;
        sorted.sort();
        if canonical.edges != sorted {
            return Err(Error::InvalidHoneycomb(
                "edges overlap, cross at non-vertices, or meet at degree-2 points".into(),
            ));
        }
        Ok(canonical)
    }

    pub fn vertices(&self) -> &[DualPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &DualPoint {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, p: &DualPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `(lo end, hi end)` vertex indices of an edge.
    pub fn ends(&self, e: usize) -> (Option<usize>, Option<usize>) {
        self.ends[e]
    }

    /// End of `e` other than `v`; `None` for the infinite end of a ray.
    pub fn other_end(&self, e: usize, v: usize) -> Option<usize> {
        let (lo, hi) = self.ends[e];
        if lo == Some(v) {
            hi
        } else {
            lo
        }
    }

    /// `e_axis^sign(v)`.
    pub fn edge_at(&self, v: usize, axis: Axis, sign: Sign) -> Option<usize> {
        self.incidence[v][axis.index()][sign.index()]
    }

    /// Edges at `v` with their classes.
    pub fn incident(&self, v: usize) -> Vec<(Axis, Sign, usize)> {
        let mut out = Vec::new();
        for ax in Axis::ALL {
            for s in Sign::ALL {
                if let Some(e) = self.edge_at(v, ax, s) {
                    out.push((ax, s, e));
                }
            }
        }
        out
    }

    /// Sign of edge `e` at its end `v`.
    pub fn sign_at(&self, e: usize, v: usize) -> Sign {
        let (lo, _) = self.ends[e];
        if lo == Some(v) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn ray_weights(&self, v: usize) -> RayWeights {
        let mut w = [[0i64; 2]; 3];
        for (ax, s, e) in self.incident(v) {
            w[ax.index()][s.index()] = self.edges[e].weight;
        }
        RayWeights(w)
    }

    pub fn divergency(&self, v: usize) -> i64 {
        self.ray_weights(v).divergency().expect("honeycomb vertices are balanced")
    }

    pub fn excess(&self, v: usize) -> i64 {
        self.divergency(v).abs()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    pub fn to_system(&self) -> XiSystem {
        XiSystem {
            lines: self.edges.iter().map(|e| (e.line.clone(), e.weight)).collect(),
        }
    }

    /// Translate by a dual vector (coordinates summing to zero).
    pub fn translate(&self, delta: &DualPoint) -> Honeycomb {
        let shift = |l: &HLine| HLine {
            axis: l.axis,
            coord: &l.coord + delta.d(l.axis),
            lo: l.lo.as_ref().map(|t| t + delta.param(l.axis)),
            hi: l.hi.as_ref().map(|t| t + delta.param(l.axis)),
        };
        Honeycomb::assemble(
            self.vertices.iter().map(|v| v.shift(delta)).collect(),
            self.edges.iter().map(|e| Edge::new(shift(&e.line), e.weight)).collect(),
        )
    }

    /// Semiinfinite edges grouped by class.
    pub fn boundary_partition(&self) -> Result<BoundaryPartition> {
        let mut sets: [[Vec<usize>; 2]; 3] = Default::default();
        let mut weights = [[0i64; 2]; 3];
        for (k, e) in self.edges.iter().enumerate() {
            if let LineKind::Ray(s) = e.line.kind() {
                sets[e.axis().index()][s.index()].push(k);
                weights[e.axis().index()][s.index()] += e.weight;
            }
        }
        let flows: Vec<i64> = weights.iter().map(|w| w[0] - w[1]).collect();
        if flows[0] != flows[1] || flows[1] != flows[2] {
            return Err(Error::InvalidHoneycomb(format!("boundary flows differ: {flows:?}")));
        }
        Ok(BoundaryPartition { sets, weights, flow: flows[0] })
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| !self.edges[k].is_finite()).collect()
    }

    /// Vertices with a nonintegral dual coordinate and edges with a
    /// nonintegral constant coordinate.
    pub fn nonintegral_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let vs = (0..self.vertices.len()).filter(|&v| !self.vertices[v].is_integral()).collect();
        let es = (0..self.edges.len()).filter(|&e| !self.edges[e].is_integral()).collect();
        (vs, es)
    }

    pub fn is_integral(&self) -> bool {
        self.edges.iter().all(Edge::is_integral)
    }

    /// Honeycomb of the union of both line sets.
    pub fn sum(&self, other: &Honeycomb) -> Result<Honeycomb> {
        let mut s = self.to_system();
        s.extend(&other.to_system());
        s.canonicalize()
    }

    /// Maximal lines covered by edges: runs of edges on one support whose
    /// consecutive members share an end.
    pub fn maximal_lines(&self) -> Vec<Vec<usize>> {
        let mut lines: Vec<Vec<usize>> = Vec::new();
        // Edges are sorted by (axis, coord, lo, hi) with rays from -inf first.
        for (k, e) in self.edges.iter().enumerate() {
            let joins = lines.last().and_then(|l| l.last()).is_some_and(|&p| {
                let prev = &self.edges[p].line;
                prev.axis == e.line.axis
                    && prev.coord == e.line.coord
                    && prev.hi.is_some()
                    && prev.hi == e.line.lo
            });
            if joins {
                lines.last_mut().expect("checked").push(k);
            } else {
                lines.push(vec![k]);
            }
        }
        lines
    }

    /// Total edge weight.
    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPartition {
    /// Edge indices of `B_i^s`, indexed `[axis][sign]`.
    pub sets: [[Vec<usize>; 2]; 3],
    pub weights: [[i64; 2]; 3],
    /// The common value of `w(B_i^+) - w(B_i^-)`.
    pub flow: i64,
}

impl BoundaryPartition {
    pub fn weight(&self, axis: Axis, sign: Sign) -> i64 {
        self.weights[axis.index()][sign.index()]
    }

    pub fn set(&self, axis: Axis, sign: Sign) -> &[usize] {
        &self.sets[axis.index()][sign.index()]
    }
}

/// Claw of three `Xi_i^sign` rays at `v`, each of weight `w`.
pub fn claw(v: &DualPoint, sign: Sign, w: i64) -> XiSystem {
    let mut s = XiSystem::new();
    for ax in Axis::ALL {
        s.push(HLine::ray_from(v, ax, sign), w);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn origin() -> DualPoint {
        DualPoint::origin()
    }

    #[test]
    fn ray_weights_of_empty_system() {
        assert_eq!(XiSystem::new().ray_weights(&origin()), RayWeights::default());
    }

    #[test]
    fn ray_weights_at_ray_end() {
        let mut s = XiSystem::new();
        s.push(HLine::ray_from(&origin(), Axis::One, Sign::Plus), 2);
        let w = s.ray_weights(&origin());
        assert_eq!(w.get(Axis::One, Sign::Plus), 2);
        assert_eq!(w.nonzero(), 1);
    }

    #[test]
    fn ray_weights_inside_a_ray() {
        let s = claw(&origin(), Sign::Plus, 1);
        // Interior point of Xi_1^+(0): d_1 = 0, parameter d_2 = 1.
        let p = DualPoint::on_line(Axis::One, &int(0), &int(1));
        assert!(HLine::ray_from(&origin(), Axis::One, Sign::Plus).contains_in_interior(&p));
        let w = s.ray_weights(&p);
        assert_eq!(w.get(Axis::One, Sign::Plus), 1);
        assert_eq!(w.get(Axis::One, Sign::Minus), 1);
        assert_eq!(w.nonzero(), 2);
    }

    #[test]
    fn claw_is_a_prehoneycomb() {
        let s = claw(&origin(), Sign::Plus, 1);
        assert!(s.is_prehoneycomb());
        let h = s.canonicalize().unwrap();
        assert_eq!(h.vertices().len(), 1);
        assert_eq!(h.edges().len(), 3);
        assert_eq!(h.divergency(0), 1);
        let anti = claw(&origin(), Sign::Minus, 1).canonicalize().unwrap();
        assert_eq!(anti.divergency(0), -1);
    }

    #[test]
    fn lone_segment_is_not_a_prehoneycomb() {
        let mut s = XiSystem::new();
        s.push(HLine::segment(Axis::Two, int(0), int(0), int(1)), 1);
        assert!(!s.is_prehoneycomb());
        assert!(matches!(s.canonicalize(), Err(Error::NotPreHoneycomb(_))));
    }

    #[test]
    fn overlapping_collinear_lines_merge() {
        // A +1 and a -1 copy of the middle third cancel; sampling every
        // elementary interval checks that nothing else changed.
        let p = origin();
        let q = DualPoint::on_line(Axis::One, &int(0), &int(3));
        let mut s = XiSystem::new();
        s.push(HLine::segment(Axis::One, int(0), int(0), int(3)), 2);
        s.push(HLine::segment(Axis::One, int(0), int(1), int(2)), -1);
        s.push(HLine::segment(Axis::One, int(0), int(1), int(2)), 1);
        // Balance p and q: p has w_1^+ = 2, so add Xi_2^+, Xi_3^+ weight 2
        // there; q has w_1^- = 2, so add Xi_2^-, Xi_3^- weight 2.
        s.push(HLine::ray_from(&p, Axis::Two, Sign::Plus), 2);
        s.push(HLine::ray_from(&p, Axis::Three, Sign::Plus), 2);
        s.push(HLine::ray_from(&q, Axis::Two, Sign::Minus), 2);
        s.push(HLine::ray_from(&q, Axis::Three, Sign::Minus), 2);
        let h = s.canonicalize().unwrap();
        assert_eq!(h.vertices().len(), 2);
        let seg: Vec<&Edge> = h.edges().iter().filter(|e| e.is_finite()).collect();
        assert_eq!(seg.len(), 1);
        assert_eq!(seg[0].weight, 2);
        for t in [frac(1, 2), int(1), frac(3, 2), int(2), frac(5, 2)] {
            let x = DualPoint::on_line(Axis::One, &int(0), &t);
            assert_eq!(s.ray_weights(&x), h.to_system().ray_weights(&x));
        }
    }

    #[test]
    fn unequal_collinear_weights_give_a_chain() {
        // Weight 2 on [0,1], 1 on [1,2], 2 on [2,3] along Xi_1, with the
        // weight drops balanced by anti-claw/claw pairs.
        let mut s = XiSystem::new();
        s.push(HLine::segment(Axis::One, int(0), int(0), int(3)), 2);
        s.push(HLine::segment(Axis::One, int(0), int(1), int(2)), -1);
        let p = origin();
        let q = DualPoint::on_line(Axis::One, &int(0), &int(3));
        s.push(HLine::ray_from(&p, Axis::Two, Sign::Plus), 2);
        s.push(HLine::ray_from(&p, Axis::Three, Sign::Plus), 2);
        s.push(HLine::ray_from(&q, Axis::Two, Sign::Minus), 2);
        s.push(HLine::ray_from(&q, Axis::Three, Sign::Minus), 2);
        let a = DualPoint::on_line(Axis::One, &int(0), &int(1));
        let b = DualPoint::on_line(Axis::One, &int(0), &int(2));
        // At a: w_1^- = 2, w_1^+ = 1, so div = -1: needs w_2^- = w_3^- = 1.
        s.push(HLine::ray_from(&a, Axis::Two, Sign::Minus), 1);
        s.push(HLine::ray_from(&a, Axis::Three, Sign::Minus), 1);
        s.push(HLine::ray_from(&b, Axis::Two, Sign::Plus), 1);
        s.push(HLine::ray_from(&b, Axis::Three, Sign::Plus), 1);
        let h = s.canonicalize().unwrap();
        let chain: Vec<i64> = h
            .edges()
            .iter()
            .filter(|e| e.is_finite() && e.axis() == Axis::One)
            .map(|e| e.weight)
            .collect();
        assert_eq!(chain, vec![2, 1, 2]);
    }

    #[test]
    fn crossing_lines_make_a_vertex() {
        let mut s = XiSystem::new();
        s.push(HLine::full(Axis::One, int(0)), 1);
        s.push(HLine::full(Axis::Two, int(0)), 1);
        let h = s.canonicalize().unwrap();
        assert_eq!(h.vertices(), &[origin()]);
        assert_eq!(h.edges().len(), 4);
        assert_eq!(h.divergency(0), 0);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let mut s = claw(&origin(), Sign::Plus, 1);
        s.extend(&claw(&DualPoint::new(int(1), int(-1)), Sign::Plus, 2));
        let h = s.canonicalize().unwrap();
        assert_eq!(h.to_system().canonicalize().unwrap(), h);
        assert_eq!(Honeycomb::from_edges(h.edges().to_vec()).unwrap(), h);
    }

    #[test]
    fn divergency_of_balanced_degree_six_vertex() {
        let mut s = XiSystem::new();
        for ax in Axis::ALL {
            s.push(HLine::full(ax, int(0)), 1);
        }
        let h = s.canonicalize().unwrap();
        assert_eq!(h.degree(0), 6);
        // Direct sum: w_i^+ - w_i^- = 1 - 1 for every axis.
        assert_eq!(h.divergency(0), 0);
    }

    #[test]
    fn claw_boundary_partition() {
        let h = claw(&origin(), Sign::Plus, 1).canonicalize().unwrap();
        let b = h.boundary_partition().unwrap();
        assert_eq!(b.flow, 1);
        for ax in Axis::ALL {
            assert_eq!(b.set(ax, Sign::Plus).len(), 1);
            assert!(b.set(ax, Sign::Minus).is_empty());
        }
    }

    #[test]
    fn shifted_claw_nonintegral_sets() {
        let v = DualPoint::new(frac(1, 2), frac(-1, 2));
        let h = claw(&v, Sign::Plus, 1).canonicalize().unwrap();
        let (vs, es) = h.nonintegral_sets();
        assert_eq!(vs, vec![0]);
        assert_eq!(es.len(), 2);
        let fractional = h.vertex(0).coords().iter().filter(|d| !rational::is_integral(d)).count();
        assert_eq!(fractional, 2);
    }

    #[test]
    fn claw_sums() {
        let c = claw(&origin(), Sign::Plus, 1).canonicalize().unwrap();
        let doubled = c.sum(&c).unwrap();
        assert_eq!(doubled.vertices().len(), 1);
        assert!(doubled.edges().iter().all(|e| e.weight == 2));
        let far = claw(&DualPoint::new(int(10), int(-20)), Sign::Plus, 1).canonicalize().unwrap();
        let both = c.sum(&far).unwrap();
        // One ray of each claw crosses the other claw, adding a
        // degree-four vertex.
        assert_eq!(both.vertices().len(), 3);
        let crossing: Vec<usize> = (0..3).filter(|&v| both.degree(v) == 4).collect();
        assert_eq!(crossing.len(), 1);
        assert_eq!(both.divergency(crossing[0]), 0);
        assert_eq!(both, far.sum(&c).unwrap());
    }

    #[test]
    fn from_edges_rejects_uncanonical_input() {
        let c = claw(&origin(), Sign::Plus, 1).canonicalize().unwrap();
        let mut edges = c.edges().to_vec();
        edges[0].weight = 0;
        assert!(Honeycomb::from_edges(edges).is_err());
        let mut s = XiSystem::new();
        s.push(HLine::full(Axis::One, int(0)), 1);
        assert!(s.canonicalize().is_err());
    }
}
