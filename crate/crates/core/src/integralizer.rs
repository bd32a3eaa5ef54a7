//! Rounding a concave cocirculation to an integer one by repeated path
//! deformations, keeping every value that was already integral.

use serde::{Deserialize, Serialize};

use crate::deformation::{deform, preferred_direction, Direction, StopKind};
use crate::duality::{grid_to_honeycomb, honeycomb_to_grid};
use crate::error::{Error, Result};
use crate::honeycomb::{Honeycomb, LineKind};
use crate::lattice::{self, Cocirculation, ConvexGrid};
use crate::legal_path::find_legal_path;
use crate::rational::{self, Rational};

/// `eta = beta + delta - omega`, which drops at every deformation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Potential {
    /// Weight of nonintegral semiinfinite edges.
    pub beta: i64,
    /// Total excess of nonintegral vertices.
    pub delta: i64,
    /// Sum over integral vertices of their incident edge weight; an edge
    /// with two integral ends counts twice.
    pub omega: i64,
    pub eta: i64,
}

pub fn potential(hc: &Honeycomb) -> Potential {
    let beta = hc
        .edges()
        .iter()
        .filter(|e| !e.is_integral() && matches!(e.line.kind(), LineKind::Ray(_)))
        .map(|e| e.weight)
        .sum();
    let delta = (0..hc.vertices().len())
        .filter(|&v| !hc.vertex(v).is_integral())
        .map(|v| hc.excess(v))
        .sum();
    let omega = (0..hc.vertices().len())
        .filter(|&v| hc.vertex(v).is_integral())
        .flat_map(|v| hc.incident(v))
        .map(|(_, _, e)| hc.edge(e).weight)
        .sum();
    Potential { beta, delta, omega, eta: beta + delta - omega }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub iteration: usize,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub events: Vec<String>,
    pub cycle: bool,
    pub path_edges: usize,
    pub direction: String,
    pub before: Potential,
    pub after: Potential,
}

#[derive(Clone, Debug)]
pub struct Integralized {
    pub cocirculation: Cocirculation,
    pub honeycomb: Honeycomb,
    pub trace: Vec<TraceStep>,
    pub initial: Potential,
}

/// Deform until `beta + delta = 0`; returns the final honeycomb and the
/// trace.
pub fn integralize_honeycomb(hc: &Honeycomb, max_steps: usize) -> Result<(Honeycomb, Vec<TraceStep>)> {
    let mut hc = hc.clone();
    let mut trace = Vec::new();
    loop {
        let p = potential(&hc);
        if p.beta + p.delta == 0 {
            return Ok((hc, trace));
        }
        if trace.len() >= max_steps {
            return Err(Error::Deformation(format!("no integral honeycomb after {max_steps} steps")));
        }
        let path = find_legal_path(&hc)?;
        let dir = preferred_direction(&hc, &path);
        let d = deform(&hc, &path, dir)?;
        trace.push(TraceStep {
            iteration: trace.len() + 1,
            epsilon: d.stop.epsilon.clone(),
            events: d.stop.kinds.iter().map(|k| StopKind::code(*k).to_string()).collect(),
            cycle: path.is_cycle,
            path_edges: path.len(),
            direction: match dir {
                Direction::Right => "right".into(),
                Direction::Left => "left".into(),
            },
            before: d.before,
            after: d.after,
        });
        hc = d.honeycomb;
    }
}

/// An integer concave cocirculation agreeing with `h` on integral boundary
/// edges and on little triangles where `h` is integral.
pub fn integralize(grid: &ConvexGrid, h: &Cocirculation) -> Result<Integralized> {
    h.check_on(grid)?;
    lattice::require_concave(grid, h)?;
    let hc = grid_to_honeycomb(grid, h)?;
    let initial = potential(&hc);
    let cap = (initial.beta + initial.delta) as usize + 2 * grid.num_edges() + 1;
    let (done, trace) = integralize_honeycomb(&hc, cap)?;
    let (g, h2) = honeycomb_to_grid(&done)?;
    let m = grid.min_vertex();
    let (g, h2) = (g.translate(m.a, m.b), h2.translate(m.a, m.b));
    if &g != grid {
        return Err(Error::Deformation("deformation changed the grid".into()));
    }
    Ok(Integralized { cocirculation: h2, honeycomb: done, trace, initial })
}

/// Every step lowers `eta`, and the number of steps is at most the total
/// drop, which is at most `beta_0 + delta_0 + 2|E(G)|` since `omega`
/// counts each grid edge at most twice.
pub fn iteration_bound_check(trace: &[TraceStep], num_grid_edges: usize) -> bool {
    let (Some(first), Some(last)) = (trace.first(), trace.last()) else {
        return true;
    };
    let strictly = trace.iter().all(|s| s.after.eta < s.before.eta)
        && trace.windows(2).all(|w| w[1].before == w[0].after);
    let drop = first.before.eta - last.after.eta;
    let cap = first.before.beta + first.before.delta + 2 * num_grid_edges as i64;
    strictly && trace.len() as i64 <= drop && drop <= cap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::{claw, DualPoint};
    use crate::lattice::{integer_edge_sets, is_concave, random_concave};
    use crate::rational::frac;
    use crate::Sign;

    #[test]
    fn half_claw_potential() {
        let hc = claw(&DualPoint::new(frac(1, 2), frac(-1, 2)), Sign::Plus, 1)
            .canonicalize()
            .unwrap();
        assert_eq!(potential(&hc), Potential { beta: 2, delta: 1, omega: 0, eta: 3 });
    }

    #[test]
    fn integral_input_is_untouched() {
        let g = ConvexGrid::three_side(3).unwrap();
        let h = Cocirculation::zero(&g);
        let out = integralize(&g, &h).unwrap();
        assert!(out.trace.is_empty());
        assert_eq!(out.cocirculation, h);
        assert!(iteration_bound_check(&out.trace, g.num_edges()));
    }

    #[test]
    fn random_small_grids() {
        let g = ConvexGrid::three_side(3).unwrap();
        for seed in 0..8 {
            let h = random_concave(&g, seed, 4);
            let out = integralize(&g, &h).unwrap();
            let h2 = &out.cocirculation;
            assert!(h2.is_integral(), "seed {seed}");
            assert!(is_concave(&g, h2).unwrap(), "seed {seed}");
            let (o, i) = integer_edge_sets(&g, &h);
            for e in o.iter().chain(&i) {
                assert_eq!(h2.value(*e), h.value(*e), "seed {seed} edge {e}");
            }
            assert!(iteration_bound_check(&out.trace, g.num_edges()), "seed {seed}");
        }
    }
}
