use std::collections::BTreeSet;

use proptest::prelude::*;

use honeycomb::duality::{grid_to_honeycomb, honeycomb_to_grid};
use honeycomb::extremality::vertex_check;
use honeycomb::integralizer::integralize;
use honeycomb::io;
use honeycomb::lattice::{integer_edge_sets, is_concave, random_concave, tiling_of};
use honeycomb::legal_path::find_legal_path;
use honeycomb::rational::{self, frac};
use honeycomb::{ConvexGrid, GridEdge};

fn grid() -> impl Strategy<Value = ConvexGrid> {
    prop_oneof![
        (1i64..=5).prop_map(|n| ConvexGrid::three_side(n).unwrap()),
        (2i64..=4, 2i64..=4, 1i64..=2, 1i64..=2).prop_filter_map("empty hexagon", |(p, q, r, s)| {
            ConvexGrid::hexagon(p, q, r, s).ok()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fraction_text_round_trips(p in any::<i64>(), q in 1i64..1_000_000) {
        let x = frac(p, q);
        let s = rational::format(&x);
        prop_assert_eq!(rational::parse(&s).unwrap(), x.clone());
        prop_assert_eq!(io::parse_rational(&s).unwrap(), x);
    }

    #[test]
    fn fraction_parser_never_panics(s in "\\PC{0,24}") {
        let _ = rational::parse(&s);
    }

    #[test]
    fn files_round_trip(g in grid(), seed in any::<u64>(), d in 1i64..8) {
        let h = random_concave(&g, seed, d);
        prop_assert_eq!(io::parse_grid(&io::grid_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(io::parse_cocirculation(&io::cocirculation_json(&h)).unwrap(), h.clone());
        let hc = grid_to_honeycomb(&g, &h).unwrap();
        prop_assert_eq!(io::parse_honeycomb(&io::honeycomb_json(&hc)).unwrap(), hc);
        let b: BTreeSet<GridEdge> = g.boundary_edges().collect();
        prop_assert_eq!(io::parse_edges(&io::edges_json(&b)).unwrap(), b);
    }

    #[test]
    fn duality_round_trips(g in grid(), seed in any::<u64>(), d in 1i64..8) {
        let h = random_concave(&g, seed, d);
        let hc = grid_to_honeycomb(&g, &h).unwrap();
        prop_assert_eq!(hc.vertices().len(), tiling_of(&g, &h).unwrap().len());
        let (g2, h2) = honeycomb_to_grid(&hc).unwrap();
        let m = g.min_vertex();
        prop_assert_eq!(g2.translate(m.a, m.b), g.clone());
        prop_assert_eq!(h2.translate(m.a, m.b), h);
        prop_assert_eq!(grid_to_honeycomb(&g2, &h2).unwrap(), hc);
    }

    #[test]
    fn legal_paths_are_legal(g in grid(), seed in any::<u64>(), d in 2i64..8) {
        let h = random_concave(&g, seed, d);
        let hc = grid_to_honeycomb(&g, &h).unwrap();
        match find_legal_path(&hc) {
            Ok(p) => prop_assert_eq!(p.check(&hc), Ok(())),
            Err(_) => prop_assert!(hc.is_integral()),
        }
    }

    #[test]
    fn rounding_keeps_integral_structure(g in grid(), seed in any::<u64>(), d in 2i64..8) {
        let h = random_concave(&g, seed, d);
        let r = integralize(&g, &h).unwrap();
        prop_assert!(r.cocirculation.is_integral());
        prop_assert!(is_concave(&g, &r.cocirculation).unwrap());
        let (o, i) = integer_edge_sets(&g, &h);
        for e in o.iter().chain(&i) {
            prop_assert_eq!(r.cocirculation.value(*e), h.value(*e));
        }
    }

    #[test]
    fn pinning_more_edges_never_adds_freedom(g in grid(), seed in any::<u64>(), cut in 0usize..40) {
        let h = random_concave(&g, seed, 5);
        let edges: Vec<GridEdge> = g.edges().collect();
        let small: BTreeSet<GridEdge> = edges.iter().copied().take(cut.min(edges.len())).collect();
        let large: BTreeSet<GridEdge> = edges.iter().copied().take((2 * cut).min(edges.len())).collect();
        let a = vertex_check(&g, &h, &small).unwrap().degrees_of_freedom;
        let b = vertex_check(&g, &h, &large).unwrap().degrees_of_freedom;
        prop_assert!(b <= a);
    }
}
