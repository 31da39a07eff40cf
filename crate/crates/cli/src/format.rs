//! Versioned instance document: a single JSON file per instance, plus a
//! strict CSV reader for orders-only import.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use vrpstw_core::{CostParams, Instance, Location, Merchant, Order, TimeWindow, VehicleSpec};

use crate::error::{CliError, Result};

pub const FORMAT_VERSION: &str = "vrpstw/1";

/// On-disk instance document. Unknown fields are rejected so that typos in
/// hand-written files surface instead of silently defaulting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: String,
    pub merchants: Vec<MerchantRecord>,
    pub orders: Vec<OrderRecord>,
    pub vehicle: VehicleRecord,
    pub costs: CostRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MerchantRecord {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

/// Window times `a <= b <= c` are offsets from courier dispatch; `placed_at`
/// is wall-clock minutes from midnight and only drives batching.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRecord {
    pub id: String,
    pub merchant_id: String,
    pub x: f64,
    pub y: f64,
    pub quantity: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placed_at: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleRecord {
    #[serde(rename = "Q")]
    pub capacity: f64,
    #[serde(rename = "L")]
    pub endurance: f64,
    #[serde(rename = "r")]
    pub fixed_cost: f64,
    #[serde(rename = "o")]
    pub unit_distance_cost: f64,
    #[serde(rename = "q")]
    pub unit_weight: f64,
    #[serde(default = "default_speed")]
    pub speed: f64,
    pub fleet_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostRecord {
    #[serde(rename = "c_L")]
    pub distance_penalty: f64,
    #[serde(default = "default_early_coeff")]
    pub early_coeff: f64,
    #[serde(default = "default_late_coeff")]
    pub late_coeff: f64,
}

fn default_speed() -> f64 {
    1.0
}

fn default_early_coeff() -> f64 {
    0.5
}

fn default_late_coeff() -> f64 {
    1.5
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        Self {
            version: FORMAT_VERSION.to_string(),
            merchants: instance
                .merchants
                .iter()
                .map(|m| MerchantRecord {
                    id: m.id.clone(),
                    x: m.location.x,
                    y: m.location.y,
                })
                .collect(),
            orders: instance
                .orders
                .iter()
                .map(|o| OrderRecord {
                    id: o.id.clone(),
                    merchant_id: o.merchant_id.clone(),
                    x: o.customer.x,
                    y: o.customer.y,
                    quantity: o.quantity,
                    a: o.window.earliest,
                    b: o.window.latest,
                    c: o.window.cutoff,
                    placed_at: o.placed_at,
                })
                .collect(),
            vehicle: VehicleRecord {
                capacity: instance.vehicle.capacity,
                endurance: instance.vehicle.endurance,
                fixed_cost: instance.vehicle.fixed_cost,
                unit_distance_cost: instance.vehicle.unit_distance_cost,
                unit_weight: instance.vehicle.unit_weight,
                speed: instance.vehicle.speed,
                fleet_size: instance.fleet_size,
            },
            costs: CostRecord {
                distance_penalty: instance.costs.distance_penalty,
                early_coeff: instance.costs.early_coeff,
                late_coeff: instance.costs.late_coeff,
            },
        }
    }

    /// Converts to the in-memory model, checking the version and every
    /// structural invariant.
    pub fn to_instance(&self) -> Result<Instance> {
        if self.version != FORMAT_VERSION {
            return Err(CliError::Input(format!(
                "unknown instance format version {:?}, expected {FORMAT_VERSION:?}",
                self.version
            )));
        }
        let instance = Instance {
            merchants: self
                .merchants
                .iter()
                .map(|m| Merchant {
                    id: m.id.clone(),
                    location: Location::new(m.x, m.y),
                })
                .collect(),
            orders: self
                .orders
                .iter()
                .map(|o| Order {
                    id: o.id.clone(),
                    merchant_id: o.merchant_id.clone(),
                    customer: Location::new(o.x, o.y),
                    quantity: o.quantity,
                    window: TimeWindow::new(o.a, o.b, o.c),
                    placed_at: o.placed_at,
                })
                .collect(),
            vehicle: VehicleSpec {
                capacity: self.vehicle.capacity,
                endurance: self.vehicle.endurance,
                fixed_cost: self.vehicle.fixed_cost,
                unit_distance_cost: self.vehicle.unit_distance_cost,
                unit_weight: self.vehicle.unit_weight,
                speed: self.vehicle.speed,
            },
            costs: CostParams {
                distance_penalty: self.costs.distance_penalty,
                early_coeff: self.costs.early_coeff,
                late_coeff: self.costs.late_coeff,
            },
            fleet_size: self.vehicle.fleet_size,
        };
        let violations = instance.validate();
        if !violations.is_empty() {
            return Err(CliError::Input(format!(
                "invalid instance: {}",
                violations.join("; ")
            )));
        }
        Ok(instance)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("instance files always serialize");
        text.push('\n');
        text
    }
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("parse error: {e}")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_file(text)?.to_instance()
}

pub fn load_instance_file(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_instance_file(&text)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    load_instance_file(path)?.to_instance()
}

pub fn save_instance_file(file: &InstanceFile, path: &Path) -> Result<()> {
    fs::write(path, file.to_json())
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}

pub const ORDERS_CSV_HEADER: &str = "id,merchant_id,x,y,quantity,a,b,c,placed_at";

/// Strict orders-only CSV import. The header must match
/// [`ORDERS_CSV_HEADER`]; `placed_at` may be empty. Field values must not
/// contain commas.
pub fn orders_from_csv(text: &str) -> Result<Vec<OrderRecord>> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::Input("orders CSV is empty".to_string()));
    };
    if header.trim() != ORDERS_CSV_HEADER {
        return Err(CliError::Input(format!(
            "orders CSV header must be {ORDERS_CSV_HEADER:?}, got {header:?}"
        )));
    }
    let mut orders = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(CliError::Input(format!(
                "orders CSV line {}: expected 9 fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        let num = |pos: usize, name: &str| -> Result<f64> {
            fields[pos].trim().parse().map_err(|_| {
                CliError::Input(format!(
                    "orders CSV line {}: {name} is not a number: {:?}",
                    idx + 1,
                    fields[pos]
                ))
            })
        };
        let quantity: u32 = fields[4].trim().parse().map_err(|_| {
            CliError::Input(format!(
                "orders CSV line {}: quantity is not a count: {:?}",
                idx + 1,
                fields[4]
            ))
        })?;
        let placed_at = if fields[8].trim().is_empty() {
            None
        } else {
            Some(num(8, "placed_at")?)
        };
        orders.push(OrderRecord {
            id: fields[0].trim().to_string(),
            merchant_id: fields[1].trim().to_string(),
            x: num(2, "x")?,
            y: num(3, "y")?,
            quantity,
            a: num(5, "a")?,
            b: num(6, "b")?,
            c: num(7, "c")?,
            placed_at,
        });
    }
    Ok(orders)
}
