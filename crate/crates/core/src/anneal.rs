//! Simulated annealing for colorings of `K_n` avoiding one target per color.
//!
//! The energy of a coloring is the number of monochromatic copies of each
//! color's target. A move recolors one random edge to a random other color;
//! its energy change only involves copies through that edge. Restarts are
//! independent, each seeded from the master seed and its index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::{EdgeColoring, MAX_COLORS};
use crate::detect::{coloring_is_valid, count_copies_in, count_copies_through_edge};
use crate::error::{Error, Result};
use crate::graph::{low_bits, MAX_ORDER};
use crate::target::Target;

pub const DEFAULT_SEED: u64 = 20_240_517;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealParams {
    pub initial_temperature: f64,
    /// Temperature multiplier applied after each block of sweeps.
    pub cooling: f64,
    pub sweeps_per_temperature: usize,
    /// Proposed moves per sweep; `None` means one per edge of `K_n`.
    pub moves_per_sweep: Option<usize>,
    /// Sweeps per restart before giving up.
    pub max_sweeps: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            initial_temperature: 2.0,
            cooling: 0.997,
            sweeps_per_temperature: 1,
            moves_per_sweep: None,
            max_sweeps: 3000,
            restarts: 20,
            seed: DEFAULT_SEED,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_temperature > 0.0 && self.initial_temperature.is_finite()) {
            return Err(Error::Precondition(format!("temperature {} must be positive", self.initial_temperature)));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::Precondition(format!("cooling factor {} must lie in (0, 1)", self.cooling)));
        }
        if self.sweeps_per_temperature == 0 || self.restarts == 0 {
            return Err(Error::Precondition("sweeps per temperature and restarts must be positive".into()));
        }
        Ok(())
    }
}

/// Monochromatic copies of `targets[i]` in color `i`, summed over colors.
///
/// Panics unless there is one target per color.
pub fn energy(c: &EdgeColoring, targets: &[Target]) -> u64 {
    assert_eq!(targets.len(), c.color_count(), "one target per color required");
    c.color_classes()
        .iter()
        .zip(targets)
        .map(|(g, &t)| count_copies_in(g.adjacency(), g.vertices(), t))
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnnealOutcome {
    Found { coloring: EdgeColoring, restart: usize, sweeps: usize },
    /// No zero-energy coloring within the budget; the lowest energy seen.
    NotFound { best_energy: u64, best: EdgeColoring },
}

impl AnnealOutcome {
    pub fn coloring(&self) -> Option<&EdgeColoring> {
        match self {
            AnnealOutcome::Found { coloring, .. } => Some(coloring),
            AnnealOutcome::NotFound { .. } => None,
        }
    }
}

struct State {
    n: usize,
    // Per color, the adjacency of that color class.
    adj: Vec<Vec<u64>>,
    color: Vec<u8>,
    energy: u64,
}

impl State {
    fn random(n: usize, m: usize, targets: &[Target], rng: &mut ChaCha8Rng) -> State {
        let mut adj = vec![vec![0u64; n]; m];
        let mut color = vec![0u8; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let c = rng.gen_range(0..m);
                adj[c][u] |= 1 << v;
                adj[c][v] |= 1 << u;
                color[u * n + v] = c as u8;
            }
        }
        let energy = targets.iter().zip(&adj).map(|(&t, a)| count_copies_in(a, low_bits(n), t)).sum();
        State { n, adj, color, energy }
    }

    fn delta(&self, u: usize, v: usize, to: usize, targets: &[Target]) -> i64 {
        let from = self.color[u * self.n + v] as usize;
        let gain = count_copies_through_edge(&self.adj[to], u, v, targets[to]);
        let loss = count_copies_through_edge(&self.adj[from], u, v, targets[from]);
        gain as i64 - loss as i64
    }

    fn recolor(&mut self, u: usize, v: usize, to: usize) {
        let from = self.color[u * self.n + v] as usize;
        self.adj[from][u] &= !(1 << v);
        self.adj[from][v] &= !(1 << u);
        self.adj[to][u] |= 1 << v;
        self.adj[to][v] |= 1 << u;
        self.color[u * self.n + v] = to as u8;
    }

    fn to_coloring(&self, m: usize) -> EdgeColoring {
        let mut c = EdgeColoring::uniform(self.n, m, 0).expect("order and colors checked");
        for u in 0..self.n {
            for v in u + 1..self.n {
                c.set_color(u, v, self.color[u * self.n + v] as usize);
            }
        }
        c
    }
}

struct RestartResult {
    best_energy: u64,
    best: EdgeColoring,
    sweeps: usize,
}

fn run_restart(n: usize, targets: &[Target], p: &AnnealParams, restart: usize) -> RestartResult {
    let m = targets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(restart as u64);
    let mut s = State::random(n, m, targets, &mut rng);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let moves = p.moves_per_sweep.unwrap_or(pairs.len());
    let mut best_energy = s.energy;
    let mut best = s.to_coloring(m);
    let mut temp = p.initial_temperature;
    if pairs.is_empty() || m == 1 || s.energy == 0 {
        return RestartResult { best_energy, best, sweeps: 0 };
    }
    for sweep in 1..=p.max_sweeps {
        for _ in 0..moves {
            let (u, v) = pairs[rng.gen_range(0..pairs.len())];
            let from = s.color[u * n + v] as usize;
            let to = (from + rng.gen_range(1..m)) % m;
            let d = s.delta(u, v, to, targets);
            if d <= 0 || rng.gen::<f64>() < (-(d as f64) / temp).exp() {
                s.recolor(u, v, to);
                s.energy = (s.energy as i64 + d) as u64;
                if s.energy < best_energy {
                    best_energy = s.energy;
                    best = s.to_coloring(m);
                    if best_energy == 0 {
                        return RestartResult { best_energy, best, sweeps: sweep };
                    }
                }
            }
        }
        if sweep % p.sweeps_per_temperature == 0 {
            temp *= p.cooling;
        }
    }
    RestartResult { best_energy, best, sweeps: p.max_sweeps }
}

/// Searches for a coloring of `K_n` in which color `i` avoids `targets[i]`.
/// The same parameters always give the same outcome: restarts run in
/// parallel, and the success with the lowest restart index wins.
pub fn anneal_search(n: usize, targets: &[Target], params: &AnnealParams) -> Result<AnnealOutcome> {
    params.validate()?;
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices(n));
    }
    if targets.is_empty() || targets.len() > MAX_COLORS {
        return Err(Error::Precondition(format!("{} targets given, 1 to {MAX_COLORS} supported", targets.len())));
    }
    for &t in targets {
        t.validate()?;
    }
    let results: Vec<RestartResult> =
        (0..params.restarts).into_par_iter().map(|r| run_restart(n, targets, params, r)).collect();
    if let Some((restart, r)) = results.iter().enumerate().find(|(_, r)| r.best_energy == 0) {
        assert!(coloring_is_valid(&r.best, targets).is_valid(), "zero energy must validate");
        return Ok(AnnealOutcome::Found { coloring: r.best.clone(), restart, sweeps: r.sweeps });
    }
    let r = results.into_iter().min_by_key(|r| r.best_energy).expect("at least one restart");
    Ok(AnnealOutcome::NotFound { best_energy: r.best_energy, best: r.best })
}
