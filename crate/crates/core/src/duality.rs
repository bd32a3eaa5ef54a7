//! Passing between a concave cocirculation and its honeycomb.
//!
//! Each flat tile `T` of `(G, h)` becomes the point `v_T` with
//! `d_i(v_T) = h(e)` for any edge `e` of `T` parallel to `xi_i`. Tiles
//! sharing `k` edges are joined by a segment of weight `k`, and a tile
//! with `k` edges on a side of class `(i, s)` carries a ray `Xi_i^s` of
//! weight `k`.

use std::collections::{BTreeMap, VecDeque};

use crate::axis::{Axis, Sign};
use crate::error::{Error, Result};
use crate::honeycomb::{DualPoint, HLine, Honeycomb, XiSystem};
use crate::lattice::{self, Cocirculation, ConvexGrid, GridEdge, GridPoint, Triangle};

pub fn grid_to_honeycomb(grid: &ConvexGrid, h: &Cocirculation) -> Result<Honeycomb> {
    h.check_on(grid)?;
    let tiling = lattice::tiling_of(grid, h)?;
    let points: Vec<DualPoint> = tiling
        .tiles()
        .iter()
        .map(|tile| {
            let t = tile[0];
            DualPoint::from_coords(
                h.value(t.edge(Axis::One)).clone(),
                h.value(t.edge(Axis::Two)).clone(),
                h.value(t.edge(Axis::Three)).clone(),
            )
            .expect("triangle sums vanish")
        })
        .collect();

    let mut joints: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for e in grid.edges() {
        if let [t0, t1] = grid.faces_of(e) {
            let (a, b) = (tiling.tile_of(*t0), tiling.tile_of(*t1));
            if a != b {
                *joints.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
    }
    let mut rays: BTreeMap<(usize, Axis, Sign), i64> = BTreeMap::new();
    for seg in grid.boundary() {
        let (axis, sign) = Axis::from_heading(seg.heading);
        let tile = tiling.tile_of(grid.faces_of(seg.edge)[0]);
        *rays.entry((tile, axis, sign)).or_insert(0) += 1;
    }

    let mut system = XiSystem::new();
    for ((a, b), w) in joints {
        let line = HLine::between(&points[a], &points[b])
            .ok_or_else(|| Error::InvalidHoneycomb("adjacent tiles are not collinear".into()))?;
        system.push(line, w);
    }
    for ((tile, axis, sign), w) in rays {
        system.push(HLine::ray_from(&points[tile], axis, sign), w);
    }
    system.canonicalize()
}

fn heading_vector(k: usize) -> (i64, i64) {
    let (axis, sign) = Axis::from_heading(k);
    let (a, b) = axis.lattice_vector();
    (a * sign.as_i64(), b * sign.as_i64())
}

/// Corners `c_0..c_6` of the polygon `G_v`, starting at the origin; side
/// `k` has heading `k` and length `w` of the matching edge at `v`.
fn local_corners(hc: &Honeycomb, v: usize) -> [GridPoint; 7] {
    let w = hc.ray_weights(v);
    let mut c = [GridPoint::new(0, 0); 7];
    for k in 0..6 {
        let (axis, sign) = Axis::from_heading(k);
        let len = w.get(axis, sign);
        let (da, db) = heading_vector(k);
        c[k + 1] = c[k].translate(da * len, db * len);
    }
    c
}

fn cross(o: GridPoint, p: GridPoint, q: (i64, i64)) -> i64 {
    let (ux, uy) = (p.a - o.a, p.b - o.b);
    let (vx, vy) = (q.0 - 3 * o.a, q.1 - 3 * o.b);
    ux * vy - uy * vx
}

/// Little triangles strictly inside the convex polygon with the given
/// anticlockwise corners.
fn triangles_inside(corners: &[GridPoint]) -> Vec<Triangle> {
    let a_lo = corners.iter().map(|c| c.a).min().unwrap_or(0);
    let a_hi = corners.iter().map(|c| c.a).max().unwrap_or(0);
    let b_lo = corners.iter().map(|c| c.b).min().unwrap_or(0);
    let b_hi = corners.iter().map(|c| c.b).max().unwrap_or(0);
    let mut out = Vec::new();
    for a in a_lo..a_hi {
        for b in b_lo..b_hi {
            for t in [Triangle::up(a, b), Triangle::down(a, b)] {
                let c3 = t.centroid3();
                let inside = corners
                    .windows(2)
                    .filter(|w| w[0] != w[1])
                    .all(|w| cross(w[0], w[1], c3) > 0);
                if inside {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Rebuild `(G, h)` from a honeycomb, anchored so that the
/// lexicographically least grid vertex is the origin.
pub fn honeycomb_to_grid(hc: &Honeycomb) -> Result<(ConvexGrid, Cocirculation)> {
    let n = hc.vertices().len();
    if n == 0 {
        return Err(Error::InvalidHoneycomb("empty honeycomb".into()));
    }
    let local: Vec<[GridPoint; 7]> = (0..n).map(|v| local_corners(hc, v)).collect();
    let mut offset: Vec<Option<(i64, i64)>> = vec![None; n];
    offset[0] = Some((0, 0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (ov_a, ov_b) = offset[v].expect("queued vertices are placed");
        for k in 0..6 {
            let (axis, sign) = Axis::from_heading(k);
            let Some(e) = hc.edge_at(v, axis, sign) else { continue };
            let Some(u) = hc.other_end(e, v) else { continue };
            let glue = local[v][k + 1].translate(ov_a, ov_b);
            let k2 = (k + 3) % 6;
            let want = (glue.a - local[u][k2].a, glue.b - local[u][k2].b);
            match offset[u] {
                None => {
                    offset[u] = Some(want);
                    queue.push_back(u);
                }
                Some(have) if have != want => {
                    return Err(Error::InvalidHoneycomb(format!(
                        "tiles around {} do not glue consistently",
                        hc.vertex(u)
                    )))
                }
                Some(_) => {}
            }
        }
    }

    let mut values: BTreeMap<GridEdge, crate::Rational> = BTreeMap::new();
    let mut owner: BTreeMap<Triangle, usize> = BTreeMap::new();
    for v in 0..n {
        let (oa, ob) = offset[v].ok_or_else(|| Error::InvalidHoneycomb("honeycomb is not connected".into()))?;
        let corners: Vec<GridPoint> = local[v].iter().map(|c| c.translate(oa, ob)).collect();
        let p = hc.vertex(v);
        for t in triangles_inside(&corners) {
            if owner.insert(t, v).is_some() {
                return Err(Error::InvalidHoneycomb(format!("tiles overlap at {t}")));
            }
            for e in t.edges() {
                values.insert(e, p.d(e.axis).clone());
            }
        }
    }
    let grid = ConvexGrid::new(owner.keys().copied())?;
    let h = Cocirculation::new(values);
    let m = grid.min_vertex();
    Ok((grid.translate(-m.a, -m.b), h.translate(-m.a, -m.b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::claw;
    use crate::lattice::random_concave;
    use crate::rational::int;

    #[test]
    fn single_triangle_is_a_claw() {
        let g = ConvexGrid::three_side(1).unwrap();
        let h = Cocirculation::zero(&g);
        let hc = grid_to_honeycomb(&g, &h).unwrap();
        assert_eq!(hc, claw(&DualPoint::origin(), Sign::Plus, 1).canonicalize().unwrap());
    }

    #[test]
    fn claw_is_a_single_triangle() {
        let hc = claw(&DualPoint::new(int(2), int(-1)), Sign::Plus, 1).canonicalize().unwrap();
        let (g, h) = honeycomb_to_grid(&hc).unwrap();
        assert_eq!(g.num_triangles(), 1);
        assert_eq!(h.value(g.triangles().next().unwrap().edge(Axis::One)), &int(2));
    }

    #[test]
    fn anti_claw_is_a_down_triangle() {
        let hc = claw(&DualPoint::origin(), Sign::Minus, 1).canonicalize().unwrap();
        let (g, _) = honeycomb_to_grid(&hc).unwrap();
        assert_eq!(g.triangles().collect::<Vec<_>>(), vec![Triangle::down(0, 0)]);
    }

    #[test]
    fn flat_grid_has_one_vertex() {
        let g = ConvexGrid::hexagon(2, 3, 1, 2).unwrap();
        let hc = grid_to_honeycomb(&g, &Cocirculation::zero(&g)).unwrap();
        assert_eq!(hc.vertices().len(), 1);
        assert_eq!(hc.boundary_edges().len(), hc.edges().len());
        let total: i64 = hc.edges().iter().map(|e| e.weight).sum();
        assert_eq!(total as usize, g.boundary().len());
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..12 {
            let g = ConvexGrid::three_side(4).unwrap();
            let h = random_concave(&g, seed, 5);
            let hc = grid_to_honeycomb(&g, &h).unwrap();
            let (g2, h2) = honeycomb_to_grid(&hc).unwrap();
            assert_eq!(g2, g, "seed {seed}");
            assert_eq!(h2, h, "seed {seed}");
        }
    }
}
