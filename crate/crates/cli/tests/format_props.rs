//! Property tests for the file format and batching invariants.

use proptest::prelude::*;

use vrpstw_cli::batch::{batch_orders, BatchSpec};
use vrpstw_cli::format::{parse_instance_file, InstanceFile};
use vrpstw_core::{CostParams, Instance, Location, Merchant, Order, TimeWindow, VehicleSpec};

fn arb_instance() -> impl Strategy<Value = Instance> {
    let coord = -1e6..1e6f64;
    let order = (
        coord.clone(),
        coord.clone(),
        1u32..=50,
        0.0..1e4f64,
        0.0..1e4f64,
        0.0..1e4f64,
        proptest::option::of(0.0..1440.0f64),
        0usize..3,
    );
    (
        proptest::collection::vec(order, 1..12),
        (coord.clone(), coord),
        0.1..100.0f64,
    )
        .prop_map(|(orders, (mx, my), unit_weight)| {
            let merchants: Vec<Merchant> = (0..3)
                .map(|i| Merchant {
                    id: format!("s{i}"),
                    location: Location::new(mx + f64::from(i), my - f64::from(i)),
                })
                .collect();
            let max_quantity = orders.iter().map(|o| o.2).max().unwrap_or(1);
            Instance {
                orders: orders
                    .into_iter()
                    .enumerate()
                    .map(|(i, (x, y, quantity, a, w1, w2, placed_at, m))| Order {
                        id: format!("o{i}"),
                        merchant_id: format!("s{m}"),
                        customer: Location::new(x, y),
                        quantity,
                        window: TimeWindow::new(a, a + w1, a + w1 + w2),
                        placed_at,
                    })
                    .collect(),
                merchants,
                vehicle: VehicleSpec {
                    capacity: f64::from(max_quantity) * unit_weight,
                    endurance: 1e7,
                    fixed_cost: 10.0,
                    unit_distance_cost: 1.0,
                    unit_weight,
                    speed: 2.0,
                },
                costs: CostParams {
                    distance_penalty: 25.0,
                    ..CostParams::default()
                },
                fleet_size: 12,
            }
        })
}

proptest! {
    #[test]
    fn instance_files_round_trip_losslessly(instance in arb_instance()) {
        let file = InstanceFile::from_instance(&instance);
        prop_assert_eq!(file.to_instance().unwrap(), instance.clone());
        let reparsed = parse_instance_file(&file.to_json()).unwrap();
        prop_assert_eq!(&reparsed, &file);
        prop_assert_eq!(reparsed.to_instance().unwrap(), instance);
    }

    #[test]
    fn batching_places_every_in_horizon_order_exactly_once(
        instance in arb_instance(),
        slot_length in 1.0..240.0f64,
        start in 0.0..600.0f64,
        span in 1.0..900.0f64,
    ) {
        let spec = BatchSpec { slot_length, horizon_start: start, horizon_end: start + span };
        let (subs, rejects) = batch_orders(&instance, &spec).unwrap();
        let mut seen: Vec<&str> = rejects.iter().map(|r| r.order_id.as_str()).collect();
        for sub in &subs {
            prop_assert_eq!(sub.instance.merchants.len(), 1);
            for order in &sub.instance.orders {
                prop_assert_eq!(order.merchant_id.as_str(), sub.merchant_id.as_str());
                let t = order.placed_at.expect("batched orders have placement times");
                let slot = ((t - start) / slot_length).floor() as usize;
                prop_assert_eq!(slot, sub.slot);
                seen.push(&order.id);
            }
        }
        seen.sort_unstable();
        let mut expected: Vec<&str> = instance.orders.iter().map(|o| o.id.as_str()).collect();
        expected.sort_unstable();
        prop_assert_eq!(seen, expected);
    }
}
