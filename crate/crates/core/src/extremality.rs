//! Is a concave cocirculation a vertex of the polytope of concave
//! cocirculations that agree with it on a fixed edge set?
//!
//! It is exactly when it is the only cocirculation that is flat on every
//! tile of its own tiling and matches the fixed values, so the question
//! reduces to the rank of a sparse linear system.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::honeycomb::Honeycomb;
use crate::lattice::{self, Cocirculation, ConvexGrid, GridEdge, Tiling};
use crate::rational::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VertexCheck {
    pub is_vertex: bool,
    /// Dimension of the solution space of the tiling system.
    pub degrees_of_freedom: usize,
}

type Row = BTreeMap<usize, Rational>;

/// Incremental row echelon form over the rationals.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    /// Add an equation row; returns true if it reduces to `0 = b` with
    /// `b != 0`.
    fn insert_equation(&mut self, row: Row) -> bool {
        let mut row = row;
        loop {
            let Some((&lead, coef)) = row.iter().next() else {
                return false;
            };
            if lead == RHS {
                return true;
            }
            let Some(p) = self.pivots.get(&lead) else {
                let inv = Rational::one() / coef;
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(lead, row);
                return false;
            };
            let factor = coef.clone();
            for (c, v) in p {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    /// Reduce `row` against the basis; returns true if it was independent.
    fn insert(&mut self, mut row: Row) -> bool {
        loop {
            let Some((&lead, coef)) = row.iter().next() else {
                return false;
            };
            let Some(p) = self.pivots.get(&lead) else {
                let inv = Rational::one() / coef;
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(lead, row);
                return true;
            };
            let factor = coef.clone();
            for (c, v) in p {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back substitution; `None` if some variable is free.
    fn solve(&self, vars: usize) -> Option<Vec<Rational>> {
        if self.rank() != vars {
            return None;
        }
        let mut x = vec![Rational::zero(); vars];
        for (&lead, row) in self.pivots.iter().rev() {
            let mut v = row.get(&RHS).cloned().unwrap_or_else(Rational::zero);
            for (&c, a) in row.range(lead + 1..RHS) {
                v -= a * &x[c];
            }
            x[lead] = v;
        }
        Some(x)
    }
}

/// Column holding the right-hand side of an equation row.
const RHS: usize = usize::MAX;

/// The unique cocirculation that is flat on every tile (equal values on
/// parallel edges of a tile) and takes the given values on `pins`.
pub fn flat_extension(
    grid: &ConvexGrid,
    tiles: &Tiling,
    pins: &BTreeMap<GridEdge, Rational>,
) -> Result<Cocirculation> {
    let edges: Vec<GridEdge> = grid.edges().collect();
    let index: BTreeMap<GridEdge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut dsu = Dsu::new(edges.len());
    for tile in tiles.tiles() {
        for ax in crate::Axis::ALL {
            let mut same = tile.iter().map(|t| index[&t.edge(ax)]);
            if let Some(first) = same.next() {
                for e in same {
                    dsu.union(first, e);
                }
            }
        }
    }
    let mut column: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..edges.len() {
        let next = column.len();
        column.entry(dsu.find(i)).or_insert(next);
    }
    let col = |dsu: &mut Dsu, e: &GridEdge| column[&dsu.find(index[e])];
    let mut ech = Echelon::default();
    let mut consistent = true;
    for (e, v) in pins {
        let c = col(&mut dsu, e);
        let row: Row = [(c, Rational::one()), (RHS, v.clone())].into_iter().filter(|(_, a)| !a.is_zero()).collect();
        consistent &= !ech.insert_equation(row);
    }
    for t in grid.triangles() {
        let mut row = Row::new();
        for e in t.edges() {
            *row.entry(col(&mut dsu, &e)).or_insert_with(Rational::zero) += Rational::one();
        }
        row.retain(|_, v| !v.is_zero());
        consistent &= !ech.insert_equation(row);
    }
    if !consistent {
        return Err(Error::InvalidParameter("tile constraints are inconsistent".into()));
    }
    let x = ech
        .solve(column.len())
        .ok_or_else(|| Error::InvalidParameter("tiling does not determine the values".into()))?;
    Ok(Cocirculation::new(
        edges.iter().map(|e| (*e, x[col(&mut dsu, e)].clone())).collect(),
    ))
}

/// Rank test for `x` satisfying triangle sums, equality across every tight
/// rhombus, and `x = h` on `fixed`.
pub fn vertex_check(grid: &ConvexGrid, h: &Cocirculation, fixed: &BTreeSet<GridEdge>) -> Result<VertexCheck> {
    h.check_on(grid)?;
    lattice::require_concave(grid, h)?;
    if let Some(e) = fixed.iter().find(|e| !grid.has_edge(**e)) {
        return Err(Error::FNotSubsetOfEdges(e.to_string()));
    }
    let edges: Vec<GridEdge> = grid.edges().collect();
    let index: BTreeMap<GridEdge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut dsu = Dsu::new(edges.len());
    for r in grid.rhombi() {
        let (e, f) = r.pairs[0];
        if h.value(e) == h.value(f) {
            for (a, b) in r.pairs {
                dsu.union(index[&a], index[&b]);
            }
        }
    }
    let pinned: BTreeSet<usize> = fixed.iter().map(|e| dsu.find(index[e])).collect();
    let mut column: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..edges.len() {
        let root = dsu.find(i);
        if !pinned.contains(&root) {
            let next = column.len();
            column.entry(root).or_insert(next);
        }
    }
    let mut ech = Echelon::default();
    for t in grid.triangles() {
        let mut row = Row::new();
        for e in t.edges() {
            if let Some(&c) = column.get(&dsu.find(index[&e])) {
                *row.entry(c).or_insert_with(Rational::zero) += Rational::one();
            }
        }
        row.retain(|_, v| !v.is_zero());
        ech.insert(row);
    }
    let dof = column.len() - ech.rank();
    Ok(VertexCheck { is_vertex: dof == 0, degrees_of_freedom: dof })
}

pub fn is_vertex(grid: &ConvexGrid, h: &Cocirculation, fixed: &BTreeSet<GridEdge>) -> Result<bool> {
    vertex_check(grid, h, fixed).map(|c| c.is_vertex)
}

/// Sufficient test on the honeycomb side: every vertex lies on at least
/// two maximal lines that each contain an edge of `fixed`.
pub fn condition_c_extreme(hc: &Honeycomb, fixed: &BTreeSet<usize>) -> bool {
    let lines = hc.maximal_lines();
    let mut count = vec![0usize; hc.vertices().len()];
    for line in &lines {
        if !line.iter().any(|e| fixed.contains(e)) {
            continue;
        }
        let on: BTreeSet<usize> = line
            .iter()
            .flat_map(|&e| {
                let (a, b) = hc.ends(e);
                [a, b]
            })
            .flatten()
            .collect();
        for v in on {
            count[v] += 1;
        }
    }
    count.iter().all(|&c| c >= 2)
}
