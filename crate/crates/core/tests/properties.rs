//! Property tests for the model and cost invariants.

use proptest::prelude::*;

use vrpstw_core::baseline::baseline_solve;
use vrpstw_core::ga::{crossover, decode, mutate, Chromosome};
use vrpstw_core::{
    check_feasibility, distance_penalty_factor, evaluate, fitness, route_distance, time_penalty,
    CostParams, DistanceMatrix, Instance, Location, Merchant, Metric, Order, Route, TimeWindow,
    VehicleSpec,
};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build_instance(customers: Vec<(f64, f64)>, quantities: Vec<u32>, capacity: f64) -> Instance {
    Instance {
        merchants: vec![Merchant {
            id: "m".into(),
            location: Location::new(0.0, 0.0),
        }],
        orders: customers
            .into_iter()
            .zip(quantities)
            .enumerate()
            .map(|(i, ((x, y), q))| Order {
                id: format!("o{}", i + 1),
                merchant_id: "m".into(),
                customer: Location::new(x, y),
                quantity: q,
                window: TimeWindow::new(5.0, 40.0, 80.0),
                placed_at: None,
            })
            .collect(),
        vehicle: VehicleSpec {
            capacity,
            endurance: 60.0,
            fixed_cost: 12.0,
            unit_distance_cost: 1.0,
            unit_weight: 1.0,
            speed: 1.0,
        },
        costs: CostParams {
            distance_penalty: 30.0,
            ..CostParams::default()
        },
        fleet_size: 64,
    }
}

fn arb_instance(max_customers: usize) -> impl Strategy<Value = Instance> {
    let coord = -25.0..25.0f64;
    let customer = (coord.clone(), coord);
    (1..=max_customers)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec(customer.clone(), n),
                proptest::collection::vec(1u32..=5, n),
            )
        })
        .prop_map(|(customers, quantities)| build_instance(customers, quantities, 12.0))
}

fn identity_chromosome(instance: &Instance) -> Chromosome {
    Chromosome((1..=instance.customer_count()).collect())
}

proptest! {
    #[test]
    fn matrix_is_symmetric_with_zero_diagonal(instance in arb_instance(10)) {
        for metric in [Metric::Euclidean, Metric::Manhattan] {
            let dm = DistanceMatrix::build(&instance, metric);
            for i in 0..dm.len() {
                prop_assert_eq!(dm.get(i, i), 0.0);
                for j in 0..dm.len() {
                    prop_assert_eq!(dm.get(i, j), dm.get(j, i));
                }
            }
        }
    }

    #[test]
    fn permuting_orders_preserves_pair_distances(instance in arb_instance(8), seed in 0u64..1000) {
        let dm = DistanceMatrix::build(&instance, Metric::Euclidean);
        let mut shuffled = instance.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut positions: Vec<usize> = (0..instance.orders.len()).collect();
        positions.shuffle(&mut rng);
        shuffled.orders = positions.iter().map(|&p| instance.orders[p].clone()).collect();
        let dm2 = DistanceMatrix::build(&shuffled, Metric::Euclidean);
        // node for order p in the original sits where p landed after the shuffle
        for (new_idx, &old_idx) in positions.iter().enumerate() {
            let old_node = instance.customer_node(old_idx);
            let new_node = shuffled.customer_node(new_idx);
            prop_assert_eq!(dm.get(0, old_node), dm2.get(0, new_node));
        }
    }

    #[test]
    fn closing_a_route_never_shortens_it(instance in arb_instance(8)) {
        let dm = DistanceMatrix::build(&instance, Metric::Euclidean);
        let nodes: Vec<usize> = (0..instance.node_count()).collect();
        let open = Route::open(0, nodes.clone());
        let closed = Route::closed(0, nodes);
        prop_assert!(route_distance(&closed, &dm).unwrap() >= route_distance(&open, &dm).unwrap());
    }

    #[test]
    fn time_penalty_is_nonnegative_and_continuous(
        a in 0.0..100.0f64,
        width in 0.0..50.0f64,
        t in 0.0..400.0f64,
    ) {
        let w = TimeWindow::new(a, a + width, a + 2.0 * width + 1.0);
        let params = CostParams::default();
        let p = time_penalty(t, &w, &params).unwrap();
        prop_assert!(p >= 0.0);
        // both boundary points evaluate to exactly zero
        prop_assert_eq!(time_penalty(a, &w, &params).unwrap(), 0.0);
        prop_assert_eq!(time_penalty(a + width, &w, &params).unwrap(), 0.0);
    }

    #[test]
    fn time_penalty_monotone_on_each_side(
        a in 1.0..100.0f64,
        width in 0.0..50.0f64,
        t1 in 0.0..1.0f64,
        t2 in 0.0..1.0f64,
        late1 in 0.001..60.0f64,
        late2 in 0.001..60.0f64,
    ) {
        let w = TimeWindow::new(a, a + width, a + 2.0 * width + 1.0);
        let params = CostParams::default();
        // nonincreasing while early
        let (lo, hi) = (t1.min(t2) * a, t1.max(t2) * a);
        prop_assert!(
            time_penalty(lo, &w, &params).unwrap() >= time_penalty(hi, &w, &params).unwrap()
        );
        // strictly increasing once late
        let (l1, l2) = (late1.min(late2), late1.max(late2));
        if l1 < l2 {
            prop_assert!(
                time_penalty(a + width + l1, &w, &params).unwrap()
                    < time_penalty(a + width + l2, &w, &params).unwrap()
            );
        }
    }

    #[test]
    fn floor_penalty_zero_below_endurance_and_steps_by_one(
        d in 0.0..500.0f64,
        endurance in 0.5..80.0f64,
    ) {
        if d < endurance {
            prop_assert_eq!(distance_penalty_factor(d, endurance).unwrap(), 0);
        }
        let before = distance_penalty_factor(d, endurance).unwrap();
        let after = distance_penalty_factor(d + endurance, endurance).unwrap();
        prop_assert_eq!(after, before + 1);
    }

    #[test]
    fn objective_total_is_sum_of_parts(instance in arb_instance(10)) {
        let dm = DistanceMatrix::build(&instance, Metric::Euclidean);
        let routes = decode(&identity_chromosome(&instance), &instance, &dm).unwrap();
        let cost = evaluate(&routes, &instance, &dm).unwrap();
        let sum = cost.transport_cost + cost.fixed_cost + cost.distance_penalty + cost.time_penalty;
        prop_assert!((cost.total - sum).abs() <= 1e-9);
        prop_assert!(cost.transport_cost >= 0.0);
        prop_assert!(cost.fixed_cost >= 0.0);
        prop_assert!(cost.distance_penalty >= 0.0);
        prop_assert!(cost.time_penalty >= 0.0);
    }

    #[test]
    fn fitness_orders_like_ascending_cost(z1 in 0.001..1e6f64, z2 in 0.001..1e6f64) {
        let f1 = fitness(z1).unwrap();
        let f2 = fitness(z2).unwrap();
        prop_assert_eq!(z1 < z2, f1 > f2);
        prop_assert_eq!(z1 == z2, f1 == f2);
    }

    #[test]
    fn dropping_or_duplicating_a_customer_is_flagged(
        instance in arb_instance(8),
        pick in any::<prop::sample::Index>(),
        duplicate in any::<bool>(),
    ) {
        let dm = DistanceMatrix::build(&instance, Metric::Euclidean);
        let mut routes = decode(&identity_chromosome(&instance), &instance, &dm).unwrap();
        prop_assert!(check_feasibility(&routes, &instance).is_empty());

        let route_idx = pick.index(routes.len());
        let victim = routes[route_idx].nodes[1];
        if duplicate {
            routes[route_idx].nodes.push(victim);
        } else {
            routes[route_idx].nodes.retain(|&n| n != victim);
        }
        let violations = check_feasibility(&routes, &instance);
        prop_assert!(
            violations.iter().any(|v| v.contains(&format!("customer {victim}"))),
            "mutation not flagged: {violations:?}"
        );
    }

    #[test]
    fn decode_output_is_feasible(instance in arb_instance(12), seed in 0u64..1000) {
        let dm = DistanceMatrix::build(&instance, Metric::Euclidean);
        let mut genes: Vec<usize> = (1..=instance.customer_count()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        genes.shuffle(&mut rng);
        let routes = decode(&Chromosome(genes), &instance, &dm).unwrap();
        prop_assert!(check_feasibility(&routes, &instance).is_empty());
    }

    #[test]
    fn baseline_output_is_feasible(instance in arb_instance(12)) {
        let solution = baseline_solve(&instance, Metric::Euclidean).unwrap();
        prop_assert!(check_feasibility(&solution.routes, &instance).is_empty());
        prop_assert!(solution.routes.iter().all(|r| r.closed));
    }

    #[test]
    fn variation_operators_preserve_permutations(
        instance in arb_instance(9),
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p1: Vec<usize> = (1..=instance.customer_count()).collect();
        let mut p2 = p1.clone();
        p1.shuffle(&mut rng);
        p2.shuffle(&mut rng);
        let (c1, c2) = crossover(&Chromosome(p1), &Chromosome(p2), &mut rng);
        let m1 = mutate(&c1, 0.5, &mut rng);
        let m2 = mutate(&c2, 0.5, &mut rng);
        prop_assert!(m1.is_permutation_for(&instance));
        prop_assert!(m2.is_permutation_for(&instance));
    }
}
