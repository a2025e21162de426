use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ProbError;
use crate::coloring::{is_polychromatic, Color, EdgeColoring};
use crate::graph::{enumerate_copies, pair_count, Graph, PatternGraph};

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.5758293035489004;

/// Trials are split into this many streams regardless of the thread count.
const STREAMS: u64 = 64;
const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = chunk index";

/// Largest board enumerated by [`exact_non_polychromatic_probability`].
const EXACT_MAX_EDGES: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub n: usize,
    pub target: String,
    pub trials: u64,
    /// Sampled colourings that are not polychromatic.
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
    pub rng: String,
    pub streams: u64,
}

enum Checker {
    Masks(Vec<u64>),
    Generic,
}

impl Checker {
    fn new(n: usize, h: &PatternGraph) -> Checker {
        if pair_count(n) > 64 {
            return Checker::Generic;
        }
        if h.vertex_count() > n {
            return Checker::Masks(Vec::new());
        }
        Checker::Masks(
            enumerate_copies(h, &Graph::complete(n))
                .map(|e| e.edges.iter().fold(0u64, |a, &i| a | 1 << i))
                .collect(),
        )
    }

    fn polychromatic(&self, n: usize, h: &PatternGraph, digits: &[u8]) -> bool {
        match self {
            Checker::Masks(copies) => {
                let mut class = [0u64; 3];
                for (i, &d) in digits.iter().enumerate() {
                    class[d as usize] |= 1 << i;
                }
                copies.iter().all(|&c| class.iter().all(|&k| c & k != 0))
            }
            Checker::Generic => {
                let c = EdgeColoring::from_indexed(
                    Graph::complete(n),
                    digits.iter().map(|&d| Some(Color::from_index(d as usize))).collect(),
                )
                .expect("complete colouring");
                is_polychromatic(&c, h)
            }
        }
    }
}

/// Estimates the probability that a uniform random 3-colouring of `K_n` is
/// not polychromatic for `h`, with a 99% normal-approximation interval.
/// Identical arguments give identical results on any number of threads.
pub fn monte_carlo_polychromatic(
    n: usize,
    h: &PatternGraph,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate, ProbError> {
    if trials == 0 {
        return Err(ProbError::InvalidParameter("trials must be at least 1".into()));
    }
    if h.edge_count() == 0 {
        return Err(ProbError::InvalidParameter("pattern needs an edge".into()));
    }
    let m = pair_count(n);
    let checker = Checker::new(n, h);
    let successes: u64 = (0..STREAMS)
        .into_par_iter()
        .map(|stream| {
            let count = trials / STREAMS + u64::from(stream < trials % STREAMS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let mut digits = vec![0u8; m];
            let mut bad = 0;
            for _ in 0..count {
                for d in digits.iter_mut() {
                    *d = rng.random_range(0..3);
                }
                if !checker.polychromatic(n, h, &digits) {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    let p = successes as f64 / trials as f64;
    let half = Z_99 * (p * (1.0 - p) / trials as f64).sqrt();
    Ok(MonteCarloEstimate {
        n,
        target: h.label(),
        trials,
        successes,
        estimate: p,
        ci_low: (p - half).max(0.0),
        ci_high: (p + half).min(1.0),
        confidence: 0.99,
        seed,
        rng: RNG_NAME.into(),
        streams: STREAMS,
    })
}

/// Probability that a uniform 3-colouring of `K_n` is not polychromatic for
/// `h`, by enumerating all `3^C(n,2)` colourings (`C(n,2) <= 12`).
pub fn exact_non_polychromatic_probability(n: usize, h: &PatternGraph) -> Result<f64, ProbError> {
    let m = pair_count(n);
    if m > EXACT_MAX_EDGES {
        return Err(ProbError::InvalidParameter(format!(
            "K_{n} has {m} edges; exact enumeration stops at {EXACT_MAX_EDGES}"
        )));
    }
    let checker = Checker::new(n, h);
    let total = 3u64.pow(m as u32);
    let bad: u64 = (0..total)
        .into_par_iter()
        .map(|mut k| {
            let mut digits = [0u8; EXACT_MAX_EDGES];
            for d in digits.iter_mut().take(m) {
                *d = (k % 3) as u8;
                k /= 3;
            }
            u64::from(!checker.polychromatic(n, h, &digits[..m]))
        })
        .sum();
    Ok(bad as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_path};

    #[test]
    fn k4_triangles_exact() {
        // Polychromatic colourings of K4 for triangles are the 3! proper
        // 3-edge-colourings.
        let p = exact_non_polychromatic_probability(4, &make_clique(3).unwrap()).unwrap();
        assert!((p - (1.0 - 6.0 / 729.0)).abs() < 1e-15);
        assert!(exact_non_polychromatic_probability(6, &make_clique(3).unwrap()).is_err());
    }

    #[test]
    fn estimate_is_reproducible_and_contains_truth() {
        let h = make_clique(3).unwrap();
        let a = monte_carlo_polychromatic(4, &h, 100_000, 42).unwrap();
        let b = monte_carlo_polychromatic(4, &h, 100_000, 42).unwrap();
        assert_eq!(a.successes, b.successes);
        assert!(a.ci_low <= a.estimate && a.estimate <= a.ci_high);
        let exact = 1.0 - 6.0 / 729.0;
        assert!(a.ci_low <= exact && exact <= a.ci_high, "{a:?}");
    }

    #[test]
    fn generic_checker_matches_masks() {
        let h = make_path(4).unwrap();
        let masks = Checker::new(5, &h);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let digits: Vec<u8> = (0..10).map(|_| rng.random_range(0..3)).collect();
            assert_eq!(
                masks.polychromatic(5, &h, &digits),
                Checker::Generic.polychromatic(5, &h, &digits)
            );
        }
    }

    #[test]
    fn rejects_zero_trials() {
        assert!(monte_carlo_polychromatic(4, &make_clique(3).unwrap(), 0, 1).is_err());
    }
}
