//! Genetic algorithm over customer permutations.
//!
//! A chromosome is a permutation of customer nodes; a cost-optimal splitter
//! decodes it into capacity-feasible open routes. Selection works on
//! fitness = 1/Z, so coverage constraints hold by construction and only the
//! visiting order evolves.

use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baseline::baseline_routes;
use crate::cost::{distance_penalty_factor, evaluate, fitness, time_penalty, Solution};
use crate::error::{Error, Result};
use crate::model::{DistanceMatrix, Instance, Metric, Route};

/// Permutation of customer node indices; each customer appears exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chromosome(pub Vec<usize>);

impl Chromosome {
    pub fn genes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the genes are exactly the customer nodes of `instance`.
    pub fn is_permutation_for(&self, instance: &Instance) -> bool {
        let n_merchants = instance.merchants.len();
        let n = instance.customer_count();
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &g in &self.0 {
            match g.checked_sub(n_merchants) {
                Some(i) if i < n && !seen[i] => seen[i] = true,
                _ => return false,
            }
        }
        true
    }
}

/// Genetic algorithm parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elitism_count: usize,
    pub seed: u64,
    /// Generations without improvement before stopping early; 0 disables.
    pub stall_generations: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 500,
            crossover_rate: 0.9,
            mutation_rate: 0.15,
            tournament_size: 3,
            elitism_count: 2,
            seed: 0,
            stall_generations: 100,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Vec<String> {
        let mut violations = Vec::new();
        if self.population_size < 2 {
            violations.push("population_size >= 2 violated".to_string());
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                violations.push(format!("{name} must be in [0, 1], got {rate}"));
            }
        }
        if self.tournament_size < 1 || self.tournament_size > self.population_size {
            violations.push(format!(
                "tournament_size must be in 1..=population_size, got {}",
                self.tournament_size
            ));
        }
        if self.elitism_count >= self.population_size {
            violations.push(format!(
                "elitism_count must be below population_size, got {}",
                self.elitism_count
            ));
        }
        violations
    }

    fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(violations))
        }
    }
}

/// Outcome of a solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best: Solution,
    pub best_fitness: f64,
    pub generations_run: usize,
    /// Best population cost per generation, index 0 being the initial
    /// population. Nonincreasing whenever elitism is enabled.
    pub history: Vec<f64>,
}

/// Splits a permutation into open routes at the cheapest cut points.
///
/// Routes are consecutive segments of the permutation, each priced with the
/// full objective (arc cost, one fixed vehicle cost, the endurance floor
/// penalty, and the segment's time-window penalties, which depend only on the
/// segment because every vehicle departs the merchant at time zero). A
/// shortest-path recurrence over cut positions picks the split that minimizes
/// the summed route costs. Capacity is the hard constraint: segments never
/// exceed it, and an order heavier than the vehicle is an instance-level
/// error. The split respects the fleet bound whenever any split within it
/// exists, and otherwise returns the unbounded optimum so that the overflow
/// surfaces through the feasibility check rather than here.
pub fn decode(chrom: &Chromosome, instance: &Instance, dm: &DistanceMatrix) -> Result<Vec<Route>> {
    let n = chrom.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let capacity = instance.vehicle.capacity;
    let mut loads = Vec::with_capacity(n);
    for &customer in chrom.genes() {
        let order = instance.order_of_node(customer).ok_or(Error::UnknownNode {
            node: customer,
            len: dm.len(),
        })?;
        let load = instance.order_load(order);
        if load > capacity {
            return Err(Error::OrderExceedsCapacity {
                id: order.id.clone(),
                load,
                capacity,
            });
        }
        loads.push(load);
    }

    let max_routes = instance.fleet_size.min(n);
    match split_segments(chrom, instance, dm, &loads, Some(max_routes)) {
        Some(cuts) => Ok(routes_from_cuts(chrom, &cuts)),
        // no split fits the fleet; fall back to the unbounded optimum
        None => {
            let cuts = split_segments(chrom, instance, dm, &loads, None)
                .expect("per-customer routes always exist once loads fit the vehicle");
            Ok(routes_from_cuts(chrom, &cuts))
        }
    }
}

/// Cost of the open route serving `chrom[start..end]` in order.
fn segment_costs(
    chrom: &Chromosome,
    instance: &Instance,
    dm: &DistanceMatrix,
    loads: &[f64],
    start: usize,
) -> Vec<f64> {
    let n = chrom.len();
    let vehicle = &instance.vehicle;
    let mut costs = Vec::with_capacity(n - start);
    let mut load = 0.0;
    let mut distance = 0.0;
    let mut time_penalties = 0.0;
    let mut last = 0usize;
    for end in (start + 1)..=n {
        let customer = chrom.0[end - 1];
        load += loads[end - 1];
        if load > vehicle.capacity {
            break;
        }
        distance += dm.get(last, customer);
        last = customer;
        let arrival = distance / vehicle.speed;
        let order = instance.order_of_node(customer).expect("checked in decode");
        time_penalties += time_penalty(arrival, &order.window, &instance.costs)
            .expect("arrivals are nonnegative");
        let floor_factor = f64::from(
            distance_penalty_factor(distance, vehicle.endurance).expect("validated endurance"),
        );
        costs.push(
            vehicle.unit_distance_cost * distance
                + vehicle.fixed_cost
                + instance.costs.distance_penalty * floor_factor
                + time_penalties,
        );
    }
    costs
}

/// Optimal cut positions (exclusive segment ends) for the permutation, or
/// `None` when no capacity-feasible split uses at most `max_routes` routes.
fn split_segments(
    chrom: &Chromosome,
    instance: &Instance,
    dm: &DistanceMatrix,
    loads: &[f64],
    max_routes: Option<usize>,
) -> Option<Vec<usize>> {
    let n = chrom.len();
    let per_segment: Vec<Vec<f64>> = (0..n)
        .map(|start| segment_costs(chrom, instance, dm, loads, start))
        .collect();

    let route_cap = max_routes.unwrap_or(n).min(n);
    // best[j][k]: cheapest cover of the first j customers with exactly k routes
    let mut best = vec![vec![f64::INFINITY; route_cap + 1]; n + 1];
    let mut pred = vec![vec![usize::MAX; route_cap + 1]; n + 1];
    best[0][0] = 0.0;
    for start in 0..n {
        for k in 0..route_cap {
            let from = best[start][k];
            if !from.is_finite() {
                continue;
            }
            for (offset, &cost) in per_segment[start].iter().enumerate() {
                let end = start + offset + 1;
                let candidate = from + cost;
                if candidate < best[end][k + 1] {
                    best[end][k + 1] = candidate;
                    pred[end][k + 1] = start;
                }
            }
        }
    }

    let routes_used = (1..=route_cap)
        .filter(|&k| best[n][k].is_finite())
        .min_by(|&a, &b| best[n][a].total_cmp(&best[n][b]))?;
    let mut cuts = Vec::with_capacity(routes_used);
    let mut at = n;
    let mut k = routes_used;
    while at > 0 {
        cuts.push(at);
        at = pred[at][k];
        k -= 1;
    }
    cuts.reverse();
    Some(cuts)
}

fn routes_from_cuts(chrom: &Chromosome, cuts: &[usize]) -> Vec<Route> {
    let mut routes = Vec::with_capacity(cuts.len());
    let mut start = 0;
    for &end in cuts {
        let mut nodes = Vec::with_capacity(end - start + 1);
        nodes.push(0);
        nodes.extend_from_slice(&chrom.0[start..end]);
        routes.push(Route::open(routes.len(), nodes));
        start = end;
    }
    routes
}

/// Seeds a population: one nearest-neighbor chromosome, the rest uniform
/// random permutations from the configured seed.
pub fn initialize_population(
    instance: &Instance,
    dm: &DistanceMatrix,
    config: &GaConfig,
) -> Result<Vec<Chromosome>> {
    config.ensure_valid()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    population_from_rng(instance, dm, config, &mut rng)
}

fn population_from_rng(
    instance: &Instance,
    dm: &DistanceMatrix,
    config: &GaConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Chromosome>> {
    let nn_order: Vec<usize> = baseline_routes(instance, dm)?
        .iter()
        .flat_map(|r| r.customers().to_vec())
        .collect();
    let mut population = Vec::with_capacity(config.population_size);
    population.push(Chromosome(nn_order.clone()));
    let mut scratch = nn_order;
    while population.len() < config.population_size {
        scratch.shuffle(rng);
        population.push(Chromosome(scratch.clone()));
    }
    Ok(population)
}

/// Order crossover: a random segment of one parent stays in place, the free
/// positions are filled left to right with the other parent's remaining
/// customers in their original order. Children are always valid permutations.
pub fn crossover(p1: &Chromosome, p2: &Chromosome, rng: &mut impl Rng) -> (Chromosome, Chromosome) {
    let n = p1.len();
    assert_eq!(n, p2.len(), "parents must have equal length");
    if n < 2 {
        return (p1.clone(), p2.clone());
    }
    let a = rng.random_range(0..n);
    let b = rng.random_range(0..n);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (ox_child(p1, p2, lo, hi), ox_child(p2, p1, lo, hi))
}

fn ox_child(keep: &Chromosome, fill: &Chromosome, lo: usize, hi: usize) -> Chromosome {
    let n = keep.len();
    let mut child = vec![usize::MAX; n];
    let mut in_segment = vec![false; n];
    child[lo..=hi].copy_from_slice(&keep.0[lo..=hi]);
    for &g in &keep.0[lo..=hi] {
        in_segment[fill.0.iter().position(|&x| x == g).expect("same gene set")] = true;
    }
    let mut slot = 0;
    for (pos, &g) in fill.0.iter().enumerate() {
        if in_segment[pos] {
            continue;
        }
        while child[slot] != usize::MAX {
            slot += 1;
        }
        child[slot] = g;
    }
    Chromosome(child)
}

/// With probability `rate`, swaps two distinct random positions.
pub fn mutate(chrom: &Chromosome, rate: f64, rng: &mut impl Rng) -> Chromosome {
    let mut genes = chrom.0.clone();
    if genes.len() >= 2 && rng.random_bool(rate) {
        let i = rng.random_range(0..genes.len());
        let mut j = rng.random_range(0..genes.len() - 1);
        if j >= i {
            j += 1;
        }
        genes.swap(i, j);
    }
    Chromosome(genes)
}

/// Runs the genetic algorithm on a single-merchant instance.
///
/// Tournament selection on fitness = 1/Z, order crossover, swap mutation, and
/// elitism; stops at `max_generations` or after `stall_generations` without
/// improvement. Ties resolve to the earlier population index, so a fixed seed
/// reproduces the run exactly.
pub fn solve(instance: &Instance, config: &GaConfig, metric: Metric) -> Result<SolveResult> {
    instance.ensure_valid()?;
    if instance.merchants.len() != 1 {
        return Err(Error::MultiMerchant(instance.merchants.len()));
    }
    config.ensure_valid()?;
    let dm = DistanceMatrix::build(instance, metric);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut population = population_from_rng(instance, &dm, config, &mut rng)?;

    let mut best: Option<(f64, Vec<Route>)> = None;
    let mut history = Vec::new();
    let mut stall = 0usize;
    let mut generations_run = 0usize;

    let mut costs = evaluate_population(&population, instance, &dm, &mut best)?;
    history.push(population_best(&costs));

    for _ in 0..config.max_generations {
        let previous_best = *history.last().expect("seeded history");

        let mut next: Vec<Chromosome> = Vec::with_capacity(config.population_size);
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by(|&i, &j| costs[i].total_cmp(&costs[j]).then(i.cmp(&j)));
        for &i in ranked.iter().take(config.elitism_count) {
            next.push(population[i].clone());
        }
        while next.len() < config.population_size {
            let p1 = tournament(&costs, config.tournament_size, &mut rng);
            let p2 = tournament(&costs, config.tournament_size, &mut rng);
            let (c1, c2) = if rng.random_bool(config.crossover_rate) {
                crossover(&population[p1], &population[p2], &mut rng)
            } else {
                (population[p1].clone(), population[p2].clone())
            };
            next.push(mutate(&c1, config.mutation_rate, &mut rng));
            if next.len() < config.population_size {
                next.push(mutate(&c2, config.mutation_rate, &mut rng));
            }
        }

        population = next;
        costs = evaluate_population(&population, instance, &dm, &mut best)?;
        history.push(population_best(&costs));
        generations_run += 1;

        if *history.last().expect("just pushed") < previous_best {
            stall = 0;
        } else {
            stall += 1;
            if config.stall_generations > 0 && stall >= config.stall_generations {
                break;
            }
        }
    }

    let (_, routes) = best.ok_or(Error::FleetExhausted(instance.fleet_size))?;
    let cost = evaluate(&routes, instance, &dm)?;
    let best_fitness = fitness(cost.total)?;
    Ok(SolveResult {
        best: Solution { routes, cost },
        best_fitness,
        generations_run,
        history,
    })
}

/// Evaluates every chromosome, updating the incumbent with the cheapest
/// candidate that also satisfies the fleet bound.
fn evaluate_population(
    population: &[Chromosome],
    instance: &Instance,
    dm: &DistanceMatrix,
    best: &mut Option<(f64, Vec<Route>)>,
) -> Result<Vec<f64>> {
    let mut costs = Vec::with_capacity(population.len());
    for chrom in population {
        let routes = decode(chrom, instance, dm)?;
        let breakdown = evaluate(&routes, instance, dm)?;
        let z = breakdown.total;
        costs.push(z);
        // decode guarantees coverage and capacity; only the fleet bound can fail
        if routes.len() <= instance.fleet_size && best.as_ref().is_none_or(|(bz, _)| z < *bz) {
            *best = Some((z, routes));
        }
    }
    Ok(costs)
}

fn population_best(costs: &[f64]) -> f64 {
    costs.iter().copied().fold(f64::INFINITY, f64::min)
}

fn tournament(costs: &[f64], size: usize, rng: &mut impl Rng) -> usize {
    let mut winner = rng.random_range(0..costs.len());
    for _ in 1..size {
        let challenger = rng.random_range(0..costs.len());
        if costs[challenger] < costs[winner]
            || (costs[challenger] == costs[winner] && challenger < winner)
        {
            winner = challenger;
        }
    }
    winner
}
