mod common;

use discreta::continuity::{normalize, ContinuityGraph, DEFAULT_GEODESIC_CAP};
use discreta::metric::{approx_eq, Metric, TAU_ADJ};
use discreta::oracles::{brute_geodesics, OracleBudget};
use discreta::{ComponentId, MetricSpace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn space_strategy(max_n: usize) -> impl Strategy<Value = MetricSpace> {
    any::<u64>().prop_map(move |seed| random_space(&mut ChaCha8Rng::seed_from_u64(seed), max_n))
}

fn lattice(points: &[(i64, i64)]) -> MetricSpace {
    let pts = points
        .iter()
        .map(|&(x, y)| (format!("({x},{y})"), vec![x as f64, y as f64]))
        .collect();
    MetricSpace::from_coords(pts, Metric::Euclidean).unwrap()
}

fn square_window(r: i64, hole: bool) -> MetricSpace {
    let mut pts = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if !(hole && x == 0 && y == 0) {
                pts.push((x, y));
            }
        }
    }
    lattice(&pts)
}

proptest! {
    #[test]
    fn components_partition_and_steps_are_constant(space in space_strategy(10)) {
        let g = ContinuityGraph::build(&space).unwrap();
        let mut seen = vec![0; space.len()];
        for c in g.components() {
            for &x in &c.points {
                seen[x] += 1;
                prop_assert_eq!(g.component_of(x), c.id);
                prop_assert!(approx_eq(g.neighbor_radius(x), g.step(c.id), TAU_ADJ));
                for &y in g.neighbors(x) {
                    prop_assert_eq!(g.component_of(y), c.id);
                    prop_assert!(approx_eq(space.distance(x, y), g.neighbor_radius(x), TAU_ADJ));
                }
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
        let reps: Vec<usize> = g.components().iter().map(|c| c.representative()).collect();
        prop_assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn normalize_is_idempotent(space in space_strategy(10)) {
        let g = ContinuityGraph::build(&space).unwrap();
        prop_assume!(g.components().iter().all(|c| !c.is_singleton()));
        let once = normalize(&space).unwrap();
        let g1 = ContinuityGraph::build(&once).unwrap();
        prop_assert!(g1.is_normal_form());
        prop_assert_eq!(g1.components().len(), g.components().len());
        let twice = normalize(&once).unwrap();
        prop_assert_eq!(once.matrix(), twice.matrix());
    }

    #[test]
    fn shortest_path_has_brute_force_length(space in space_strategy(8)) {
        let g = ContinuityGraph::build(&space).unwrap();
        for c in g.components() {
            for &x in &c.points {
                for &y in &c.points {
                    let path = g.shortest_path(x, y).unwrap();
                    prop_assert_eq!(path.vertices.first(), Some(&x));
                    prop_assert_eq!(path.vertices.last(), Some(&y));
                    prop_assert!(path.vertices.windows(2).all(|w| g.is_adjacent(w[0], w[1])));
                    let brute = brute_geodesics(&space, x, y, &OracleBudget::default()).unwrap();
                    prop_assert_eq!(path.length(), brute[0].len() - 1);
                }
            }
        }
    }

    #[test]
    fn scaling_preserves_components(space in space_strategy(8), factor in 0.1f64..20.0) {
        let a = ContinuityGraph::build(&space).unwrap();
        let scaled = space.scaled(factor);
        let b = ContinuityGraph::build(&scaled).unwrap();
        let pa: Vec<_> = a.components().iter().map(|c| c.points.clone()).collect();
        let pb: Vec<_> = b.components().iter().map(|c| c.points.clone()).collect();
        prop_assert_eq!(pa, pb);
    }
}

#[test]
fn lattice_window_is_one_component() {
    let s = square_window(2, false);
    let g = ContinuityGraph::build(&s).unwrap();
    assert_eq!(g.components().len(), 1);
    assert!((0..s.len()).all(|x| g.neighbor_radius(x) == 1.0));
    assert!((0..s.len()).all(|x| g.neighbors(x).len() <= 4));
}

#[test]
fn punctured_square_is_connected_and_goes_around() {
    let s = square_window(1, true);
    let g = ContinuityGraph::build(&s).unwrap();
    assert_eq!(g.components().len(), 1);
    let (a, b) = (s.require("(1,0)").unwrap(), s.require("(-1,0)").unwrap());
    assert_eq!(g.shortest_path(a, b).unwrap().length(), 4);
    assert_eq!(g.all_geodesics(a, b, DEFAULT_GEODESIC_CAP).unwrap().len(), 2);
}

#[test]
fn geodesic_counts() {
    let s = lattice(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
    let g = ContinuityGraph::build(&s).unwrap();
    let (a, b) = (s.require("(0,0)").unwrap(), s.require("(1,1)").unwrap());
    assert_eq!(g.all_geodesics(a, b, DEFAULT_GEODESIC_CAP).unwrap().len(), 2);

    let c4 = graph_metric(4, &cycle(4));
    let g = ContinuityGraph::build(&c4).unwrap();
    assert_eq!(g.all_geodesics(0, 2, DEFAULT_GEODESIC_CAP).unwrap().len(), 2);
    assert_eq!(g.all_geodesics(0, 1, DEFAULT_GEODESIC_CAP).unwrap().len(), 1);
}

#[test]
fn normalize_rescales_each_component_separately() {
    let pts = vec![
        ("a", vec![0.0]),
        ("b", vec![2.0]),
        ("c", vec![4.0]),
        ("d", vec![20.0]),
        ("e", vec![25.0]),
    ];
    let s = MetricSpace::from_coords(pts, Metric::Euclidean).unwrap();
    let g = ContinuityGraph::build(&s).unwrap();
    assert_eq!(g.step(ComponentId(0)), 2.0);
    assert_eq!(g.step(ComponentId(1)), 5.0);
    let n = normalize(&s).unwrap();
    assert_eq!(n.distance(0, 2), 2.0);
    assert_eq!(n.distance(3, 4), 1.0);
    assert!(ContinuityGraph::build(&n).unwrap().is_normal_form());
}
