//! Explicit instances: the truncated dual-grid honeycomb, the hexagon
//! instance with denominator `k`, the boundary fixup that turns `Xi^-`
//! rays into `Xi^+` rays, the fractional vertex built from them, and two
//! small hand-checked fixtures.

use std::collections::{BTreeMap, BTreeSet};

use crate::axis::{Axis, Sign};
use crate::duality::{grid_to_honeycomb, honeycomb_to_grid};
use crate::error::{Error, Result};
use crate::extremality::flat_extension;
use crate::honeycomb::{DualPoint, HLine, Honeycomb, LineKind, XiSystem};
use crate::lattice::{Cocirculation, ConvexGrid, GridEdge, GridPoint, Tiling, Triangle};
use crate::rational::{self, frac, int, Rational};

/// Dual grid of all integer lines, truncated to `|v^i| < n`.
pub fn dual_grid_honeycomb(n: i64) -> Result<Honeycomb> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("dual grid size must be positive, got {n}")));
    }
    let inside = |v: [i64; 3]| {
        v.iter().all(|x| x.abs() < n) && (0..3).all(|i| v[i] - v[(i + 1) % 3] <= n)
    };
    let point = |v: [i64; 3]| DualPoint::new(int(v[0]), int(v[1]));
    let mut verts = Vec::new();
    for a in -n + 1..n {
        for b in -n + 1..n {
            let v = [a, b, -a - b];
            if inside(v) {
                verts.push(v);
            }
        }
    }
    let set: BTreeSet<[i64; 3]> = verts.iter().copied().collect();
    let mut s = XiSystem::new();
    for &v in &verts {
        // One unit step along each line, towards increasing parameter.
        for ax in Axis::ALL {
            let (i, j) = (ax.next().index(), ax.prev().index());
            let mut u = v;
            u[i] += 1;
            u[j] -= 1;
            if set.contains(&u) {
                s.push(HLine::between(&point(v), &point(u)).expect("distinct points"), 1);
            }
        }
        for i in 0..3 {
            let j = (i + 1) % 3;
            let diff = v[i] - v[j];
            if diff == n || diff == n - 1 {
                let w = if diff == n - 1 && v[i] != 0 && v[j] != 0 { 1 } else { 2 };
                s.push(HLine::ray_from(&point(v), Axis::from_index(i + 2), Sign::Plus), w);
            }
        }
    }
    s.canonicalize()
}

fn hexagon_tiling(k: i64) -> Tiling {
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Tile {
        Rhombus,
        Single(Triangle),
        LowerStrip(i64),
        UpperStrip(i64),
    }
    let mut labels = Vec::new();
    // Lower half: rows between b = -j-1 and b = -j.
    for j in 0..k {
        let b = -j - 1;
        for a in 0..=k - j {
            let t = Triangle::down(a, b);
            let l = match (a, j) {
                (0, 0) => Tile::Rhombus,
                (0, _) => Tile::Single(t),
                _ => Tile::LowerStrip(j),
            };
            labels.push((t, l));
        }
        for a in 0..k - j {
            let t = Triangle::up(a, b);
            labels.push((t, if a == 0 { Tile::Single(t) } else { Tile::LowerStrip(j) }));
        }
    }
    // Upper half: rows between b = j and b = j+1.
    for j in 0..k {
        for a in j..=k {
            let t = Triangle::up(a, j);
            let l = match (a == j, j) {
                (true, 0) => Tile::Rhombus,
                (true, _) => Tile::Single(t),
                _ => Tile::UpperStrip(j),
            };
            labels.push((t, l));
        }
        for a in j + 1..=k {
            let t = Triangle::down(a, j);
            labels.push((t, if a == j + 1 { Tile::Single(t) } else { Tile::UpperStrip(j) }));
        }
    }
    Tiling::from_labels(labels)
}

/// Values fixed on the boundary of the hexagon instance.
fn hexagon_boundary(k: i64) -> BTreeMap<GridEdge, Rational> {
    let e = |a, b, ax| GridEdge::new(GridPoint::new(a, b), ax);
    let mut pins = BTreeMap::new();
    for i in 1..=k {
        let v = if i == 1 { int(-1) } else { int(i - 1) };
        pins.insert(e(0, -i, Axis::Two), v.clone());
        pins.insert(e(i, i, Axis::Three), v);
        pins.insert(e(k + 2 - i, 1 - i, Axis::Three), int(1 - i));
        pins.insert(e(k + 1, i - 1, Axis::Two), int(1 - i));
    }
    pins.insert(e(0, -k, Axis::One), int(0));
    pins.insert(e(k, k, Axis::One), int(0));
    pins
}

/// The hexagon with two sides of length 1 and four of length `k`, with
/// the concave cocirculation that is flat on the designated tiling and
/// has a value `-1/k`.
pub fn hexagon_instance(k: i64) -> Result<(ConvexGrid, Cocirculation)> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("hexagon parameter must be positive, got {k}")));
    }
    let grid = ConvexGrid::from_bounds((0, k + 1), (-k, k), (0, k + 1))?;
    let h = flat_extension(&grid, &hexagon_tiling(k), &hexagon_boundary(k))?;
    Ok((grid, h))
}

/// The tiling the hexagon instance is built to have.
pub fn hexagon_tiles(k: i64) -> Result<Tiling> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("hexagon parameter must be positive, got {k}")));
    }
    Ok(hexagon_tiling(k))
}

/// Replace every ray `Xi_i^-(v)` by the segment from `v` to the nearest
/// integer point `u` before it, plus rays `Xi_{i-1}^+(u)` and
/// `Xi_{i+1}^+(u)` of the same weight.
pub fn fix_boundary(hc: &Honeycomb) -> Result<Honeycomb> {
    let mut s = XiSystem::new();
    for e in hc.edges() {
        let line = &e.line;
        if line.kind() != LineKind::Ray(Sign::Minus) {
            s.push(line.clone(), e.weight);
            continue;
        }
        if !rational::is_integral(&line.coord) {
            return Err(Error::NonIntegerTruncationPoint(line.to_string()));
        }
        let tv = line.hi.clone().expect("minus ray has a finite end");
        let tu = rational::int_below(&tv);
        let u = line.point_at(&tu);
        s.push(HLine::segment(line.axis, line.coord.clone(), tu, tv), e.weight);
        s.push(HLine::ray_from(&u, line.axis.prev(), Sign::Plus), e.weight);
        s.push(HLine::ray_from(&u, line.axis.next(), Sign::Plus), e.weight);
    }
    s.canonicalize()
}

/// A 3-side grid and concave cocirculation, integral on the boundary,
/// that is a vertex of the polytope fixed on two sides and has a value
/// with denominator `k`. The returned edge set is those two sides.
pub fn fractional_vertex_instance(k: i64) -> Result<(ConvexGrid, Cocirculation, BTreeSet<GridEdge>)> {
    let (g0, h0) = hexagon_instance(k)?;
    let inner = fix_boundary(&grid_to_honeycomb(&g0, &h0)?)?;
    let hc = dual_grid_honeycomb(2 * k + 1)?.sum(&inner)?;
    let (grid, h) = honeycomb_to_grid(&hc)?;
    let mut fixed = BTreeSet::new();
    for ax in [Axis::One, Axis::Two] {
        let side = grid
            .side(ax, Sign::Plus)
            .ok_or_else(|| Error::InvalidHoneycomb(format!("grid has no side of class {ax}+")))?;
        fixed.extend(side.edges);
    }
    Ok((grid, h, fixed))
}

/// Half-integral concave cocirculation that is determined by its integer
/// values, yet some of those values cannot survive rounding.
///
/// Each entry is `((a, b), axis, value)` for the edge leaving `(a, b)`.
pub const COUNTEREXAMPLE_VALUES: [((i64, i64), u8, (i64, i64)); 29] = [
    // horizontal edges, bottom row up
    ((0, 0), 1, (1, 1)),
    ((1, 0), 1, (0, 1)),
    ((0, 1), 1, (2, 1)),
    ((1, 1), 1, (1, 2)),
    ((2, 1), 1, (0, 1)),
    ((1, 2), 1, (1, 1)),
    ((2, 2), 1, (1, 2)),
    ((3, 2), 1, (-1, 1)),
    ((2, 3), 1, (1, 1)),
    ((3, 3), 1, (0, 1)),
    // between rows 0 and 1
    ((0, 0), 2, (-1, 2)),
    ((1, 1), 3, (-3, 2)),
    ((1, 0), 2, (1, 2)),
    ((2, 1), 3, (-1, 1)),
    ((2, 0), 2, (1, 1)),
    ((3, 1), 3, (-1, 1)),
    // between rows 1 and 2
    ((1, 2), 3, (-3, 2)),
    ((1, 1), 2, (-1, 2)),
    ((2, 2), 3, (-1, 2)),
    ((2, 1), 2, (0, 1)),
    ((3, 2), 3, (-1, 2)),
    ((3, 1), 2, (1, 2)),
    ((4, 2), 3, (1, 2)),
    // between rows 2 and 3
    ((2, 3), 3, (0, 1)),
    ((2, 2), 2, (-1, 1)),
    ((3, 3), 3, (0, 1)),
    ((3, 2), 2, (-1, 2)),
    ((4, 3), 3, (1, 2)),
    ((4, 2), 2, (1, 2)),
];

pub fn counterexample_instance() -> Result<(ConvexGrid, Cocirculation)> {
    let mut tris = vec![
        Triangle::down(0, 0),
        Triangle::up(0, 0),
        Triangle::down(1, 0),
        Triangle::up(1, 0),
        Triangle::down(2, 0),
    ];
    tris.extend((0..=2).map(|a| Triangle::up(a, 1)));
    tris.extend((1..=3).map(|a| Triangle::down(a, 1)));
    tris.extend((1..=3).map(|a| Triangle::up(a, 2)));
    tris.extend([Triangle::down(2, 2), Triangle::down(3, 2)]);
    let grid = ConvexGrid::new(tris)?;
    let mut values = BTreeMap::new();
    for ((a, b), ax, (p, q)) in COUNTEREXAMPLE_VALUES {
        let axis = Axis::from_label(ax).expect("labels are 1..=3");
        values.insert(GridEdge::new(GridPoint::new(a, b), axis), frac(p, q));
    }
    // Remaining edges follow from the triangle sums.
    let h = complete_by_triangles(&grid, values)?;
    h.check_on(&grid)?;
    Ok((grid, h))
}

/// Fill in missing edges whose triangle already has the other two values.
fn complete_by_triangles(grid: &ConvexGrid, mut values: BTreeMap<GridEdge, Rational>) -> Result<Cocirculation> {
    loop {
        let mut progress = false;
        for t in grid.triangles() {
            let missing: Vec<GridEdge> = t.edges().into_iter().filter(|e| !values.contains_key(e)).collect();
            if let [m] = missing[..] {
                let s: Rational = t.edges().iter().filter(|e| **e != m).map(|e| values[e].clone()).sum();
                values.insert(m, -s);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let h = Cocirculation::new(values);
    h.check_on(grid)?;
    Ok(h)
}

/// Three vertices `u`, `v`, `z` and ten edges, seven of them rays.
pub fn three_vertex_honeycomb() -> Result<Honeycomb> {
    let v = DualPoint::origin();
    let u = DualPoint::new(int(1), int(0));
    let z = DualPoint::new(int(1), int(-1));
    let mut s = XiSystem::new();
    s.push(HLine::ray_from(&v, Axis::One, Sign::Plus), 2);
    s.push(HLine::ray_from(&v, Axis::Three, Sign::Minus), 1);
    s.push(HLine::ray_from(&v, Axis::Two, Sign::Plus), 3);
    s.push(HLine::between(&v, &z).expect("v, z share d3"), 3);
    s.push(HLine::between(&v, &u).expect("v, u share d2"), 1);
    s.push(HLine::between(&u, &z).expect("u, z share d1"), 1);
    s.push(HLine::ray_from(&u, Axis::One, Sign::Plus), 1);
    s.push(HLine::ray_from(&u, Axis::Two, Sign::Minus), 1);
    s.push(HLine::ray_from(&z, Axis::One, Sign::Minus), 1);
    s.push(HLine::ray_from(&z, Axis::Three, Sign::Plus), 3);
    s.canonicalize()
}

/// True if some value has reduced denominator exactly `k`.
pub fn has_denominator(h: &Cocirculation, k: i64) -> bool {
    h.iter().any(|(_, v)| rational::denominator(v) == k.into())
}
