//! Seeded random worlds and paths shared by the integration suites.
#![allow(dead_code)]

use clearbound::geometry::Aabb;
use clearbound::{Obstacle, PolylinePath, State, World};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

/// Minimum clearance along every generated path.
pub const MIN_PATH_CLEARANCE: f64 = 1e-3;

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

pub fn state(c: &[f64]) -> State {
    State::new(c.to_vec()).unwrap()
}

pub fn unit_box(dim: usize) -> Aabb {
    Aabb::new(state(&vec![0.0; dim]), state(&vec![1.0; dim])).unwrap()
}

fn random_point(rng: &mut TestRng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen::<f64>()).collect()
}

fn random_unit(rng: &mut TestRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn random_obstacle(rng: &mut TestRng, dim: usize) -> Obstacle {
    match rng.gen_range(0..3) {
        0 => {
            Obstacle::hypersphere(state(&random_point(rng, dim)), rng.gen_range(0.02..0.2)).unwrap()
        }
        1 => {
            let lo = random_point(rng, dim);
            let hi: Vec<f64> = lo.iter().map(|x| x + rng.gen_range(0.02..0.25)).collect();
            Obstacle::aabb(state(&lo), state(&hi)).unwrap()
        }
        _ => {
            // Cut off a thin slab near one side of the unit box.
            let n = random_unit(rng, dim);
            let lowest: f64 = n.iter().map(|x| x.min(0.0)).sum();
            let highest: f64 = n.iter().map(|x| x.max(0.0)).sum();
            let offset = lowest + rng.gen_range(0.02..0.15) * (highest - lowest);
            Obstacle::half_space(n, offset).unwrap()
        }
    }
}

/// Unit-box world with `n_obstacles` random obstacles of mixed type.
pub fn random_world(rng: &mut TestRng, dim: usize, n_obstacles: usize) -> World {
    let obstacles = (0..n_obstacles)
        .map(|_| random_obstacle(rng, dim))
        .collect();
    let walls = rng.gen_bool(0.25);
    World::new(dim, obstacles)
        .unwrap()
        .with_bounds(unit_box(dim))
        .unwrap()
        .with_bounds_as_obstacles(walls)
}

/// Lower bound on the clearance along segment `a`–`b` from probes spaced at
/// most `h` apart, using the 1-Lipschitz property.
pub fn segment_clearance_floor(world: &World, a: &State, b: &State, h: f64) -> f64 {
    let len = a.distance(b);
    let n = ((len / h).ceil() as usize).max(1);
    let step = len / n as f64;
    let min = (0..=n)
        .map(|i| world.clearance(&a.lerp(b, i as f64 / n as f64)).unwrap())
        .fold(f64::INFINITY, f64::min);
    min - step / 2.0
}

/// Random polyline with 2 to 8 waypoints whose clearance stays at least
/// [`MIN_PATH_CLEARANCE`] everywhere, or `None` if the world is too cluttered.
pub fn random_path(rng: &mut TestRng, world: &World) -> Option<PolylinePath> {
    let dim = world.dimension();
    let n = rng.gen_range(2..=8);
    'attempt: for _ in 0..50 {
        let mut pts: Vec<State> = Vec::with_capacity(n);
        while pts.len() < n {
            let mut tries = 0;
            let p = loop {
                tries += 1;
                if tries > 200 {
                    continue 'attempt;
                }
                let p = state(&random_point(rng, dim));
                if world.clearance(&p).unwrap() < 4.0 * MIN_PATH_CLEARANCE {
                    continue;
                }
                if let Some(prev) = pts.last() {
                    if segment_clearance_floor(world, prev, &p, MIN_PATH_CLEARANCE)
                        < MIN_PATH_CLEARANCE
                    {
                        continue;
                    }
                }
                break p;
            };
            pts.push(p);
        }
        return Some(PolylinePath::new(pts).unwrap());
    }
    None
}

/// A random world of dimension 2 or 3 with 0 to 8 obstacles and a path
/// through it.
pub fn random_case(rng: &mut TestRng) -> (World, PolylinePath) {
    loop {
        let dim = rng.gen_range(2..=3);
        let k = rng.gen_range(0..=8);
        let world = random_world(rng, dim, k);
        if let Some(path) = random_path(rng, &world) {
            return (world, path);
        }
    }
}

/// `a <= b` up to the admissibility slack used throughout the suites.
pub fn admissible(bound: f64, cost: f64) -> bool {
    bound <= cost + 1e-9 * (1.0 + cost)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Midpoint-rule reference for the reciprocal cost with `n` samples spread
/// over the path by segment length.
pub fn midpoint_cost(world: &World, path: &PolylinePath, n: usize) -> f64 {
    let total = path.length();
    let mut sum = 0.0;
    for w in path.waypoints().windows(2) {
        let len = w[0].distance(&w[1]);
        let m = ((n as f64 * len / total).round() as usize).max(1);
        let h = len / m as f64;
        let mut part = 0.0;
        for i in 0..m {
            let s = (i as f64 + 0.5) / m as f64;
            part += 1.0 / world.clearance(&w[0].lerp(&w[1], s)).unwrap();
        }
        sum += part * h;
    }
    sum
}

/// Scenario text for a 2D unit-square world with random discs and boxes kept
/// away from the corner start and goal.
pub fn planning_scenario_json(seed: u64, n_vertices: usize) -> String {
    let mut rng = rng(seed ^ 0x5eed);
    let mut obstacles = Vec::new();
    let n_obs = rng.gen_range(3..=8);
    while obstacles.len() < n_obs {
        let c = [rng.gen_range(0.15..0.85), rng.gen_range(0.15..0.85)];
        if rng.gen_bool(0.5) {
            let r = rng.gen_range(0.04..0.12);
            obstacles.push(format!(
                r#"{{ "type": "hypersphere", "center": [{}, {}], "radius": {} }}"#,
                c[0], c[1], r
            ));
        } else {
            let (w, h) = (rng.gen_range(0.04..0.15), rng.gen_range(0.04..0.15));
            obstacles.push(format!(
                r#"{{ "type": "box", "min": [{}, {}], "max": [{}, {}] }}"#,
                c[0] - w / 2.0,
                c[1] - h / 2.0,
                c[0] + w / 2.0,
                c[1] + h / 2.0
            ));
        }
    }
    let n = n_vertices as f64;
    let radius = 2.5 * (n.ln() / (std::f64::consts::PI * n)).sqrt();
    format!(
        r#"{{
  "version": 1,
  "dimension": 2,
  "bounds": {{ "min": [0, 0], "max": [1, 1] }},
  "obstacles": [{}],
  "start": [0.05, 0.05],
  "goal": [0.95, 0.95],
  "graph": {{ "n_vertices": {n_vertices}, "radius": {radius}, "seed": {seed} }}
}}"#,
        obstacles.join(", ")
    )
}
