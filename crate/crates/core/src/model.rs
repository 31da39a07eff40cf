//! Problem data model: locations, orders, vehicles, instances, routes, and
//! the distance matrix shared by every solver.
//!
//! Node numbering convention: the distance matrix covers merchants first,
//! then one node per order, in declaration order. A single-merchant instance
//! therefore has the merchant at node 0 and customers at 1..=n, which is the
//! numbering used in printed route strings ("0 - 1 - 2").

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar point in abstract distance units. No geographic projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub x: f64,
    pub y: f64,
}

impl Location {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Location, metric: Metric) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        match metric {
            Metric::Euclidean => (dx * dx + dy * dy).sqrt(),
            Metric::Manhattan => dx.abs() + dy.abs(),
        }
    }
}

/// Distance metric used when building the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
}

/// Soft delivery window, in time units counted from courier dispatch.
///
/// Arrivals in `[earliest, latest]` incur no penalty; earlier arrivals are
/// penalized linearly and later arrivals exponentially. `cutoff` marks the
/// hard-late diagnostic boundary and must satisfy
/// `0 <= earliest <= latest <= cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub earliest: f64,
    pub latest: f64,
    pub cutoff: f64,
}

impl TimeWindow {
    pub fn new(earliest: f64, latest: f64, cutoff: f64) -> Self {
        Self {
            earliest,
            latest,
            cutoff,
        }
    }
}

/// One customer order: a delivery of `quantity` items from a merchant to a
/// customer location, with a soft time window. `placed_at` is the wall-clock
/// placement time (minutes from midnight) used only for order batching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Order {
    pub id: String,
    pub merchant_id: String,
    pub customer: Location,
    pub quantity: u32,
    pub window: TimeWindow,
    pub placed_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Merchant {
    pub id: String,
    pub location: Location,
}

/// Vehicle parameters shared by the whole fleet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleSpec {
    /// Maximum load per vehicle, in weight units.
    pub capacity: f64,
    /// Maximum distance per battery charge; exceeding multiples of it incurs
    /// floor penalties.
    pub endurance: f64,
    /// Fixed cost per vehicle actually used.
    pub fixed_cost: f64,
    /// Cost per unit of travel distance.
    pub unit_distance_cost: f64,
    /// Weight per item.
    pub unit_weight: f64,
    /// Travel speed mapping distance to arrival time; defaults to 1.0.
    pub speed: f64,
}

/// Penalty parameters of the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    /// Penalty amount charged per unit of the endurance floor factor.
    pub distance_penalty: f64,
    /// Coefficient of the linear early-arrival penalty.
    pub early_coeff: f64,
    /// Coefficient of the exponential late-arrival penalty.
    pub late_coeff: f64,
}

impl Default for CostParams {
    fn default() -> Self {
        Self {
            distance_penalty: 0.0,
            early_coeff: 0.5,
            late_coeff: 1.5,
        }
    }
}

/// The full problem input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub merchants: Vec<Merchant>,
    pub orders: Vec<Order>,
    pub vehicle: VehicleSpec,
    pub costs: CostParams,
    /// Upper bound on the number of vehicles (routes) a solution may use.
    pub fleet_size: usize,
}

impl Instance {
    /// Total node count: merchants first, then one node per order.
    pub fn node_count(&self) -> usize {
        self.merchants.len() + self.orders.len()
    }

    pub fn customer_count(&self) -> usize {
        self.orders.len()
    }

    /// Node index of the customer serving order `order_idx`.
    pub fn customer_node(&self, order_idx: usize) -> usize {
        self.merchants.len() + order_idx
    }

    /// Order behind a customer node, if the node is not a merchant.
    pub fn order_of_node(&self, node: usize) -> Option<&Order> {
        node.checked_sub(self.merchants.len())
            .and_then(|i| self.orders.get(i))
    }

    pub fn node_location(&self, node: usize) -> Option<Location> {
        if node < self.merchants.len() {
            Some(self.merchants[node].location)
        } else {
            self.order_of_node(node).map(|o| o.customer)
        }
    }

    /// Load of one order in weight units.
    pub fn order_load(&self, order: &Order) -> f64 {
        f64::from(order.quantity) * self.vehicle.unit_weight
    }

    /// Checks every structural invariant and returns one message per
    /// violation. An empty list means the instance is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.merchants.is_empty() {
            violations.push("instance: at least one merchant required".to_string());
        }
        if self.orders.is_empty() {
            violations.push("instance: at least one order required".to_string());
        }
        if self.fleet_size < 1 {
            violations.push("instance: fleet_size >= 1 violated".to_string());
        }
        let mut seen = std::collections::HashSet::new();
        for m in &self.merchants {
            if !seen.insert(m.id.as_str()) {
                violations.push(format!("merchant {}: duplicate id", m.id));
            }
            if !m.location.x.is_finite() || !m.location.y.is_finite() {
                violations.push(format!("merchant {}: coordinates must be finite", m.id));
            }
        }
        for o in &self.orders {
            if !self.merchants.iter().any(|m| m.id == o.merchant_id) {
                violations.push(format!(
                    "order {}: merchant_id {} does not resolve",
                    o.id, o.merchant_id
                ));
            }
            if o.quantity < 1 {
                violations.push(format!("order {}: quantity >= 1 violated", o.id));
            }
            if !o.customer.x.is_finite() || !o.customer.y.is_finite() {
                violations.push(format!("order {}: coordinates must be finite", o.id));
            }
            let w = &o.window;
            if !(w.earliest.is_finite() && w.latest.is_finite() && w.cutoff.is_finite()) {
                violations.push(format!("order {}: window times must be finite", o.id));
            } else {
                if w.earliest < 0.0 {
                    violations.push(format!("order {}: window: 0 <= a violated", o.id));
                }
                if w.earliest > w.latest {
                    violations.push(format!("order {}: window: a <= b violated", o.id));
                }
                if w.latest > w.cutoff {
                    violations.push(format!("order {}: window: b <= c violated", o.id));
                }
            }
        }
        let v = &self.vehicle;
        for (name, value) in [
            ("capacity", v.capacity),
            ("endurance", v.endurance),
            ("fixed_cost", v.fixed_cost),
            ("unit_distance_cost", v.unit_distance_cost),
            ("unit_weight", v.unit_weight),
            ("speed", v.speed),
        ] {
            if !(value.is_finite() && value > 0.0) {
                violations.push(format!(
                    "vehicle: {name} must be strictly positive, got {value}"
                ));
            }
        }
        let c = &self.costs;
        for (name, value) in [
            ("distance_penalty", c.distance_penalty),
            ("early_coeff", c.early_coeff),
            ("late_coeff", c.late_coeff),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                violations.push(format!("costs: {name} must be nonnegative, got {value}"));
            }
        }
        violations
    }

    /// Like [`Instance::validate`], but packs violations into an error.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }
}

/// Symmetric pairwise distances over all nodes (merchants then customers).
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds the matrix for an instance under the chosen metric.
    pub fn build(instance: &Instance, metric: Metric) -> Self {
        let locations: Vec<Location> = instance
            .merchants
            .iter()
            .map(|m| m.location)
            .chain(instance.orders.iter().map(|o| o.customer))
            .collect();
        let n = locations.len();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = locations[i].distance(&locations[j], metric);
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        Self { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

/// One vehicle trip: a node sequence starting at a merchant. Open routes end
/// at the last customer; closed routes return to the starting merchant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Route {
    pub vehicle: usize,
    pub nodes: Vec<usize>,
    pub closed: bool,
}

impl Route {
    pub fn open(vehicle: usize, nodes: Vec<usize>) -> Self {
        Self {
            vehicle,
            nodes,
            closed: false,
        }
    }

    pub fn closed(vehicle: usize, nodes: Vec<usize>) -> Self {
        Self {
            vehicle,
            nodes,
            closed: true,
        }
    }

    pub fn merchant_node(&self) -> usize {
        self.nodes[0]
    }

    pub fn customers(&self) -> &[usize] {
        &self.nodes[1..]
    }

    /// Node string like "0 - 1 - 2", with "- 0" appended when closed.
    pub fn node_string(&self) -> String {
        let mut parts: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        if self.closed && self.nodes.len() > 1 {
            parts.push(self.nodes[0].to_string());
        }
        parts.join(" - ")
    }
}

/// Sum of consecutive arc distances along a route; closed routes include the
/// final arc back to the starting merchant.
pub fn route_distance(route: &Route, dm: &DistanceMatrix) -> Result<f64> {
    for &node in &route.nodes {
        if node >= dm.len() {
            return Err(Error::UnknownNode {
                node,
                len: dm.len(),
            });
        }
    }
    let mut total = 0.0;
    for pair in route.nodes.windows(2) {
        total += dm.get(pair[0], pair[1]);
    }
    if route.closed && route.nodes.len() > 1 {
        total += dm.get(route.nodes[route.nodes.len() - 1], route.nodes[0]);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node_instance(a: Location, b: Location) -> Instance {
        Instance {
            merchants: vec![Merchant {
                id: "m".into(),
                location: a,
            }],
            orders: vec![Order {
                id: "o1".into(),
                merchant_id: "m".into(),
                customer: b,
                quantity: 1,
                window: TimeWindow::new(0.0, 100.0, 200.0),
                placed_at: None,
            }],
            vehicle: VehicleSpec {
                capacity: 10.0,
                endurance: 100.0,
                fixed_cost: 10.0,
                unit_distance_cost: 1.0,
                unit_weight: 1.0,
                speed: 1.0,
            },
            costs: CostParams {
                distance_penalty: 50.0,
                ..CostParams::default()
            },
            fleet_size: 2,
        }
    }

    #[test]
    fn euclidean_three_four_five() {
        let inst = two_node_instance(Location::new(0.0, 0.0), Location::new(3.0, 4.0));
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        assert_eq!(dm.get(0, 1), 5.0);
        assert_eq!(dm.get(1, 0), 5.0);
    }

    #[test]
    fn manhattan_three_four() {
        let inst = two_node_instance(Location::new(0.0, 0.0), Location::new(3.0, 4.0));
        let dm = DistanceMatrix::build(&inst, Metric::Manhattan);
        assert_eq!(dm.get(0, 1), 7.0);
    }

    #[test]
    fn zero_diagonal() {
        let inst = two_node_instance(Location::new(2.0, -1.0), Location::new(3.0, 4.0));
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        assert_eq!(dm.get(0, 0), 0.0);
        assert_eq!(dm.get(1, 1), 0.0);
    }

    fn line_instance() -> Instance {
        let mut inst = two_node_instance(Location::new(0.0, 0.0), Location::new(3.0, 0.0));
        inst.orders.push(Order {
            id: "o2".into(),
            merchant_id: "m".into(),
            customer: Location::new(3.0, 4.0),
            quantity: 1,
            window: TimeWindow::new(0.0, 100.0, 200.0),
            placed_at: None,
        });
        inst
    }

    #[test]
    fn route_distance_open_is_hand_sum() {
        // merchant(0,0) -> c1(3,0) -> c2(3,4): 3 + 4
        let inst = line_instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let route = Route::open(0, vec![0, 1, 2]);
        assert_eq!(route_distance(&route, &dm).unwrap(), 7.0);
    }

    #[test]
    fn route_distance_closed_adds_return_arc() {
        // 3 + 4 + 5 back to (0,0)
        let inst = line_instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let route = Route::closed(0, vec![0, 1, 2]);
        assert_eq!(route_distance(&route, &dm).unwrap(), 12.0);
    }

    #[test]
    fn route_distance_single_node_is_zero() {
        let inst = line_instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        for closed in [false, true] {
            let route = Route {
                vehicle: 0,
                nodes: vec![0],
                closed,
            };
            assert_eq!(route_distance(&route, &dm).unwrap(), 0.0);
        }
    }

    #[test]
    fn route_distance_rejects_unknown_node() {
        let inst = line_instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let route = Route::open(0, vec![0, 7]);
        assert_eq!(
            route_distance(&route, &dm),
            Err(Error::UnknownNode { node: 7, len: 3 })
        );
    }

    #[test]
    fn validate_accepts_well_formed_instance() {
        let mut inst = line_instance();
        inst.orders.push(Order {
            id: "o3".into(),
            merchant_id: "m".into(),
            customer: Location::new(-1.0, 1.0),
            quantity: 2,
            window: TimeWindow::new(5.0, 10.0, 15.0),
            placed_at: Some(700.0),
        });
        assert!(inst.validate().is_empty());
    }

    #[test]
    fn validate_flags_zero_quantity() {
        let mut inst = line_instance();
        inst.orders[0].quantity = 0;
        let violations = inst.validate();
        assert!(violations
            .iter()
            .any(|v| v.contains("o1") && v.contains("quantity")));
    }

    #[test]
    fn validate_flags_inverted_window() {
        let mut inst = line_instance();
        inst.orders[1].window = TimeWindow::new(5.0, 3.0, 6.0);
        let violations = inst.validate();
        assert!(violations
            .iter()
            .any(|v| v.contains("o2") && v.contains("a <= b")));
    }

    #[test]
    fn validate_flags_unresolved_merchant() {
        let mut inst = line_instance();
        inst.orders[0].merchant_id = "nope".into();
        assert!(inst
            .validate()
            .iter()
            .any(|v| v.contains("does not resolve")));
    }

    #[test]
    fn node_string_follows_table_convention() {
        let open = Route::open(0, vec![0, 1, 2, 4, 3]);
        assert_eq!(open.node_string(), "0 - 1 - 2 - 4 - 3");
        let closed = Route::closed(0, vec![0, 3]);
        assert_eq!(closed.node_string(), "0 - 3 - 0");
    }
}
