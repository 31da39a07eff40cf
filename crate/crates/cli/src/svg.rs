//! Schematic SVG route maps: merchant and customer markers plus one colored
//! polyline per route, with a per-route distance legend.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use vrpstw_core::{route_distance, DistanceMatrix, Instance, Solution};

use crate::error::{CliError, Result};

const PLOT_SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Renders the route map as an SVG 1.1 document.
pub fn route_svg(solution: &Solution, instance: &Instance, dm: &DistanceMatrix) -> Result<String> {
    let points: Vec<(f64, f64)> = (0..instance.node_count())
        .map(|n| {
            let loc = instance.node_location(n).expect("node indices are dense");
            (loc.x, loc.y)
        })
        .collect();

    let (min_x, max_x) = bounds(points.iter().map(|p| p.0));
    let (min_y, max_y) = bounds(points.iter().map(|p| p.1));
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (PLOT_SIZE - 2.0 * MARGIN) / span;
    // flip y so larger world-y is drawn upward
    let to_screen = |(x, y): (f64, f64)| {
        (
            MARGIN + (x - min_x) * scale,
            PLOT_SIZE - MARGIN - (y - min_y) * scale,
        )
    };

    let legend_height = 24.0 * (solution.routes.len() as f64 + 1.0);
    let height = PLOT_SIZE + legend_height;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{PLOT_SIZE}" height="{height}" viewBox="0 0 {PLOT_SIZE} {height}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for route in &solution.routes {
        let color = PALETTE[route.vehicle % PALETTE.len()];
        let mut path_points: Vec<(f64, f64)> =
            route.nodes.iter().map(|&n| to_screen(points[n])).collect();
        if route.closed && route.nodes.len() > 1 {
            path_points.push(to_screen(points[route.nodes[0]]));
        }
        let coords = path_points
            .iter()
            .map(|(x, y)| format!("{x:.2},{y:.2}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            svg,
            r#"<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>"#
        );
    }

    for (node, &point) in points.iter().enumerate() {
        let (x, y) = to_screen(point);
        if node < instance.merchants.len() {
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="14" height="14" fill="black"/>"#,
                x - 7.0,
                y - 7.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
                y - 10.0,
                instance.merchants[node].id
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="9" fill="white" stroke="black"/>"#
            );
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{node}</text>"#,
                y + 3.5
            );
        }
    }

    for (i, route) in solution.routes.iter().enumerate() {
        let color = PALETTE[route.vehicle % PALETTE.len()];
        let y = PLOT_SIZE + 24.0 * (i as f64 + 1.0);
        let distance = route_distance(route, dm).map_err(CliError::from)?;
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3"/>"#,
            MARGIN + 30.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">vehicle {}: distance {distance:.3}</text>"#,
            MARGIN + 40.0,
            y + 4.0,
            route.vehicle
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes the route map to a file.
pub fn emit_route_svg(
    solution: &Solution,
    instance: &Instance,
    dm: &DistanceMatrix,
    path: &Path,
) -> Result<()> {
    let svg = route_svg(solution, instance, dm)?;
    fs::write(path, svg)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if min > max {
        (0.0, 1.0)
    } else {
        (min, max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vrpstw_core::{
        evaluate, CostParams, Location, Merchant, Metric, Order, Route, TimeWindow, VehicleSpec,
    };

    fn instance() -> Instance {
        Instance {
            merchants: vec![Merchant {
                id: "s1".into(),
                location: Location::new(0.0, 0.0),
            }],
            orders: (0..4)
                .map(|i| Order {
                    id: format!("o{i}"),
                    merchant_id: "s1".into(),
                    customer: Location::new(f64::from(i), f64::from(i % 2)),
                    quantity: 1,
                    window: TimeWindow::new(0.0, 100.0, 200.0),
                    placed_at: None,
                })
                .collect(),
            vehicle: VehicleSpec {
                capacity: 10.0,
                endurance: 100.0,
                fixed_cost: 10.0,
                unit_distance_cost: 1.0,
                unit_weight: 1.0,
                speed: 1.0,
            },
            costs: CostParams {
                distance_penalty: 10.0,
                ..CostParams::default()
            },
            fleet_size: 4,
        }
    }

    fn solution_with(routes: Vec<Route>, inst: &Instance, dm: &DistanceMatrix) -> Solution {
        let cost = evaluate(&routes, inst, dm).unwrap();
        Solution { routes, cost }
    }

    #[test]
    fn one_polyline_per_route() {
        let inst = instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let solution = solution_with(
            vec![Route::open(0, vec![0, 1, 2]), Route::open(1, vec![0, 3, 4])],
            &inst,
            &dm,
        );
        let svg = route_svg(&solution, &inst, &dm).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("vehicle 0: distance"));
    }

    #[test]
    fn empty_solution_draws_markers_only() {
        let mut inst = instance();
        inst.orders.clear();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let solution = Solution {
            routes: vec![],
            cost: vrpstw_core::CostBreakdown::zero(),
        };
        let svg = route_svg(&solution, &inst, &dm).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<rect").count(), 2); // background + merchant
    }

    #[test]
    fn marker_count_matches_node_count() {
        let inst = instance();
        let dm = DistanceMatrix::build(&inst, Metric::Euclidean);
        let solution = solution_with(vec![Route::open(0, vec![0, 1, 2, 3, 4])], &inst, &dm);
        let svg = route_svg(&solution, &inst, &dm).unwrap();
        let circles = svg.matches("<circle").count();
        let merchant_squares = svg.matches("<rect").count() - 1; // minus background
        assert_eq!(circles + merchant_squares, inst.node_count());
    }
}
