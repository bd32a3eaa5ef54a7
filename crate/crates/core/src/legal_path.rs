//! Legal paths and cycles through the nonintegral part of a honeycomb.

use std::collections::BTreeMap;

use crate::axis::{Axis, Sign};
use crate::error::{Error, Result};
use crate::honeycomb::Honeycomb;
use crate::rational::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn flip(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

/// Junction `(incoming, vertex, outgoing)` where the path is not straight.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Bend {
    /// Position `i` of the vertex `v_i` in the path.
    pub position: usize,
    pub vertex: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub turn: Turn,
}

/// `v_0, q_1, v_1, ..., q_k, v_k`; `None` marks the dummy vertex at the
/// far end of a semiinfinite edge. A cycle has `v_0 == v_k` and its
/// indices are taken cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegalPath {
    pub vertices: Vec<Option<usize>>,
    pub edges: Vec<usize>,
    pub is_cycle: bool,
}

pub fn is_dominating(hc: &Honeycomb, v: usize, e: usize) -> bool {
    let ax = hc.edge(e).axis();
    let s = hc.sign_at(e, v);
    let w = hc.ray_weights(v);
    w.get(ax, s) > w.get(ax, s.flip())
}

/// The edges `e_i^s(v)` with `w_i^s(v) > w_i^{-s}(v)`: none or three.
pub fn dominating_edges(hc: &Honeycomb, v: usize) -> Vec<usize> {
    hc.incident(v)
        .into_iter()
        .filter(|&(_, _, e)| is_dominating(hc, v, e))
        .map(|(_, _, e)| e)
        .collect()
}

/// Edge opposite to `e` at `v`.
pub fn opposite(hc: &Honeycomb, v: usize, e: usize) -> Option<usize> {
    hc.edge_at(v, hc.edge(e).axis(), hc.sign_at(e, v).flip())
}

pub fn is_legal_pair(hc: &Honeycomb, v: usize, e: usize, f: usize) -> bool {
    if e == f || !incident_to(hc, v, e) || !incident_to(hc, v, f) {
        return false;
    }
    if hc.edge(e).is_integral() || hc.edge(f).is_integral() {
        return false;
    }
    opposite(hc, v, e) == Some(f) || (is_dominating(hc, v, e) && is_dominating(hc, v, f))
}

fn incident_to(hc: &Honeycomb, v: usize, e: usize) -> bool {
    let (lo, hi) = hc.ends(e);
    lo == Some(v) || hi == Some(v)
}

/// Direction of travel along `e` when leaving `v`, in the `(d_1, d_2)`
/// frame.
fn leaving(hc: &Honeycomb, v: usize, e: usize) -> (i64, i64) {
    travel(hc.edge(e).axis(), hc.sign_at(e, v))
}

/// Travel vector of a move along a class-`axis` line that increases its
/// parameter (`Plus`) or decreases it (`Minus`), as `(d_1, d_2)` change.
pub(crate) fn travel(axis: Axis, sign: Sign) -> (i64, i64) {
    let s = sign.as_i64();
    let mut d = [0i64; 3];
    d[axis.next().index()] = s;
    d[axis.prev().index()] = -s;
    (d[0], d[1])
}

/// Turn from edge `e` (arriving at `v`) to edge `f` (leaving `v`);
/// `None` if they are opposite.
pub fn turn_at(hc: &Honeycomb, v: usize, e: usize, f: usize) -> Option<Turn> {
    let (ix, iy) = leaving(hc, v, e);
    let (ix, iy) = (-ix, -iy);
    let (ox, oy) = leaving(hc, v, f);
    match (ix * oy - iy * ox).signum() {
        1 => Some(Turn::Left),
        -1 => Some(Turn::Right),
        _ => None,
    }
}

impl LegalPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Junctions `(q_i, v_i, q_{i+1})` including, for cycles, the one
    /// closing the cycle at `v_k = v_0`.
    pub fn junctions(&self) -> Vec<(usize, usize, usize, usize)> {
        let k = self.edges.len();
        let mut out = Vec::new();
        for i in 1..k {
            if let Some(v) = self.vertices[i] {
                out.push((i, v, self.edges[i - 1], self.edges[i]));
            }
        }
        if self.is_cycle {
            if let Some(v) = self.vertices[k] {
                out.push((k, v, self.edges[k - 1], self.edges[0]));
            }
        }
        out
    }

    pub fn bends(&self, hc: &Honeycomb) -> Vec<Bend> {
        self.junctions()
            .into_iter()
            .filter_map(|(position, vertex, incoming, outgoing)| {
                turn_at(hc, vertex, incoming, outgoing).map(|turn| Bend {
                    position,
                    vertex,
                    incoming,
                    outgoing,
                    turn,
                })
            })
            .collect()
    }

    /// The same path walked backwards.
    pub fn reversed(&self) -> LegalPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        LegalPath { vertices, edges, is_cycle: self.is_cycle }
    }

    /// For a cycle: true if two cyclically consecutive bends both turn
    /// right.
    pub fn has_consecutive_right_turns(&self, hc: &Honeycomb) -> bool {
        let b = self.bends(hc);
        let n = b.len();
        n >= 2 && (0..n).any(|i| b[i].turn == Turn::Right && b[(i + 1) % n].turn == Turn::Right)
    }

    /// Check the defining and extra properties of the paths produced by
    /// [`find_legal_path`]; returns the first violation.
    pub fn check(&self, hc: &Honeycomb) -> std::result::Result<(), String> {
        let k = self.edges.len();
        if k == 0 || self.vertices.len() != k + 1 {
            return Err("malformed vertex/edge sequence".into());
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if hc.edge(e).is_integral() {
                return Err(format!("edge {e} is integral"));
            }
            let (a, b) = (self.vertices[i], self.vertices[i + 1]);
            let ends = hc.ends(e);
            let ok = match (a, b) {
                (Some(a), Some(b)) => ends == (Some(a), Some(b)) || ends == (Some(b), Some(a)),
                (None, Some(b)) => i == 0 && !hc.edge(e).is_finite() && incident_to(hc, b, e),
                (Some(a), None) => i == k - 1 && !hc.edge(e).is_finite() && incident_to(hc, a, e),
                (None, None) => false,
            };
            if !ok {
                return Err(format!("q_{} does not join its neighbours", i + 1));
            }
        }
        if self.is_cycle {
            if self.vertices[0].is_none() || self.vertices[0] != self.vertices[k] {
                return Err("cycle does not close".into());
            }
        } else if k < 2 || self.vertices[0].is_some() || self.vertices[k].is_some() {
            return Err("open path must start and end with semiinfinite edges".into());
        }
        for (i, v, e, f) in self.junctions() {
            if !is_legal_pair(hc, v, e, f) {
                return Err(format!("pair at position {i} is not legal"));
            }
        }
        let mut uses: BTreeMap<usize, Vec<(Option<usize>, Option<usize>)>> = BTreeMap::new();
        for (i, &e) in self.edges.iter().enumerate() {
            uses.entry(e).or_default().push((self.vertices[i], self.vertices[i + 1]));
        }
        for (e, u) in &uses {
            match u.as_slice() {
                [_] => {}
                [(a, b), (c, d)] => {
                    if !(a == d && b == c) {
                        return Err(format!("edge {e} traversed twice in the same direction"));
                    }
                    if hc.edge(*e).weight <= 1 {
                        return Err(format!("edge {e} of weight 1 traversed twice"));
                    }
                }
                _ => return Err(format!("edge {e} occurs more than twice")),
            }
        }
        let mut per_vertex: BTreeMap<usize, i64> = BTreeMap::new();
        for b in self.bends(hc) {
            *per_vertex.entry(b.vertex).or_insert(0) += 1;
        }
        for (v, n) in per_vertex {
            let cap = hc.excess(v).min(2);
            if n > cap {
                return Err(format!("{n} bends at vertex {v}, allowed {cap}"));
            }
        }
        Ok(())
    }
}

fn edge_key(hc: &Honeycomb, v: usize, e: usize) -> (Axis, Sign, Rational) {
    let edge = hc.edge(e);
    (edge.axis(), hc.sign_at(e, v), edge.coord().clone())
}

fn start_edge(hc: &Honeycomb) -> Result<usize> {
    let nonintegral: Vec<usize> = (0..hc.edges().len()).filter(|&e| !hc.edge(e).is_integral()).collect();
    let key = |&e: &usize| {
        let edge = hc.edge(e);
        let sign = match edge.line.kind() {
            crate::honeycomb::LineKind::Ray(s) => s,
            _ => Sign::Plus,
        };
        (edge.axis(), sign, edge.coord().clone(), edge.line.lo.clone())
    };
    nonintegral
        .iter()
        .filter(|&&e| !hc.edge(e).is_finite())
        .min_by_key(|e| key(e))
        .or_else(|| nonintegral.iter().min_by_key(|e| key(e)))
        .copied()
        .ok_or(Error::NoNonintegralEdge)
}

/// Grow a legal path from a nonintegral edge until it leaves along a
/// semiinfinite edge or closes up into a cycle.
pub fn find_legal_path(hc: &Honeycomb) -> Result<LegalPath> {
    let first = start_edge(hc)?;
    let (lo, hi) = hc.ends(first);
    let (v0, v1) = if hc.edge(first).is_finite() { (lo, hi) } else { (None, lo.or(hi)) };
    let mut vertices = vec![v0, v1];
    let mut edges = vec![first];

    for _ in 0..=2 * hc.edges().len() + 1 {
        let i = edges.len();
        let v = vertices[i].expect("current end is a real vertex");
        let e = edges[i - 1];
        let next = choose_next(hc, &vertices, &edges, v, e)?;

        if let Some(j) = (0..i).find(|&j| vertices[j] == Some(v) && edges[j] == next) {
            return Ok(LegalPath {
                vertices: vertices[j..].to_vec(),
                edges: edges[j..].to_vec(),
                is_cycle: true,
            });
        }
        let far = hc.other_end(next, v);
        edges.push(next);
        vertices.push(far);
        if far.is_none() {
            return Ok(LegalPath { vertices, edges, is_cycle: false });
        }
    }
    Err(Error::Deformation("legal path growth did not terminate".into()))
}

fn choose_next(hc: &Honeycomb, vertices: &[Option<usize>], edges: &[usize], v: usize, e: usize) -> Result<usize> {
    let stuck = || Error::Deformation(format!("no legal continuation at {}", hc.vertex(v)));
    if !is_dominating(hc, v, e) {
        return opposite(hc, v, e).ok_or_else(stuck);
    }
    let bends_here: Vec<(usize, usize)> = (1..edges.len())
        .filter(|&j| vertices[j] == Some(v) && turn_at(hc, v, edges[j - 1], edges[j]).is_some())
        .map(|j| (edges[j - 1], edges[j]))
        .collect();
    if let Some(&(_, out)) = bends_here.iter().find(|(a, b)| *a != e && *b != e) {
        return Ok(out);
    }
    if (bends_here.len() as i64) < hc.excess(v) {
        let fresh = dominating_edges(hc, v)
            .into_iter()
            .filter(|&f| f != e && !hc.edge(f).is_integral())
            .min_by_key(|&f| edge_key(hc, v, f));
        if let Some(f) = fresh {
            return Ok(f);
        }
    }
    opposite(hc, v, e).filter(|&f| !hc.edge(f).is_integral()).ok_or_else(stuck)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::{claw, DualPoint, HLine, XiSystem};
    use crate::rational::{frac, int};

    fn half_claw() -> Honeycomb {
        claw(&DualPoint::new(frac(1, 2), frac(-1, 2)), Sign::Plus, 1)
            .canonicalize()
            .unwrap()
    }

    #[test]
    fn claw_edges_all_dominate() {
        let hc = half_claw();
        assert_eq!(dominating_edges(&hc, 0).len(), 3);
    }

    #[test]
    fn balanced_vertex_has_no_dominating_edges() {
        let mut s = XiSystem::new();
        for ax in Axis::ALL {
            s.push(HLine::full(ax, int(0)), 1);
        }
        let hc = s.canonicalize().unwrap();
        assert!(dominating_edges(&hc, 0).is_empty());
    }

    #[test]
    fn integral_honeycomb_has_no_path() {
        let hc = claw(&DualPoint::origin(), Sign::Plus, 1).canonicalize().unwrap();
        assert!(matches!(find_legal_path(&hc), Err(Error::NoNonintegralEdge)));
    }

    #[test]
    fn half_claw_path_bends_once() {
        let hc = half_claw();
        let p = find_legal_path(&hc).unwrap();
        p.check(&hc).unwrap();
        assert!(!p.is_cycle);
        assert_eq!(p.len(), 2);
        assert_eq!(p.bends(&hc).len(), 1);
    }

    #[test]
    fn straight_fractional_line() {
        // A fractional line crossing an integral one.
        let mut s = XiSystem::new();
        s.push(HLine::full(Axis::One, frac(1, 3)), 2);
        s.push(HLine::full(Axis::Two, int(0)), 1);
        let hc = s.canonicalize().unwrap();
        let p = find_legal_path(&hc).unwrap();
        p.check(&hc).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.bends(&hc).is_empty());
        assert!(p.edges.iter().all(|&e| hc.edge(e).axis() == Axis::One));
    }

    #[test]
    fn legal_pair_rules() {
        let hc = half_claw();
        let nonint: Vec<usize> = (0..3).filter(|&e| !hc.edge(e).is_integral()).collect();
        let int_edge = (0..3).find(|&e| hc.edge(e).is_integral()).unwrap();
        assert!(is_legal_pair(&hc, 0, nonint[0], nonint[1]));
        assert!(!is_legal_pair(&hc, 0, nonint[0], int_edge));
    }

    #[test]
    fn reversed_path_turns_the_other_way() {
        let hc = half_claw();
        let p = find_legal_path(&hc).unwrap();
        let t = p.bends(&hc)[0].turn;
        let r = p.reversed();
        r.check(&hc).unwrap();
        assert_eq!(r.bends(&hc)[0].turn, t.flip());
    }
}
