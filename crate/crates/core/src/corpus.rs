//! Seeded random lattice simplices with at least one interior lattice point.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::simplex::LatticeSimplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub size: usize,
    /// Dimensions are drawn uniformly from `1..=max_dim`.
    pub max_dim: usize,
    /// Coordinates are drawn uniformly from `-coord_bound..=coord_bound`.
    pub coord_bound: i64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 20_240_601,
            size: 500,
            max_dim: 3,
            coord_bound: 6,
        }
    }
}

/// Draws simplices until `size` of them are full-dimensional with a
/// nonempty interior. The output depends only on the config.
pub fn random_corpus(cfg: &CorpusConfig) -> Vec<LatticeSimplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.size);
    if cfg.max_dim == 0 {
        return out;
    }
    while out.len() < cfg.size {
        let d = rng.gen_range(1..=cfg.max_dim);
        let vertices: Vec<Vec<BigInt>> = (0..=d)
            .map(|_| {
                (0..d)
                    .map(|_| BigInt::from(rng.gen_range(-cfg.coord_bound..=cfg.coord_bound)))
                    .collect()
            })
            .collect();
        let Ok(s) = LatticeSimplex::new(vertices) else {
            continue;
        };
        if s.interior_points().is_ok_and(|p| !p.is_empty()) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_nonempty() {
        let cfg = CorpusConfig {
            size: 20,
            ..CorpusConfig::default()
        };
        let a = random_corpus(&cfg);
        let b = random_corpus(&cfg);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
        for s in &a {
            assert!((1..=3).contains(&s.dimension()));
            assert!(!s.interior_points().unwrap().is_empty());
            assert!(s
                .vertices()
                .iter()
                .flatten()
                .all(|c| c.magnitude() <= &6u32.into()));
        }
        let other = random_corpus(&CorpusConfig { seed: 7, ..cfg });
        assert_ne!(a, other);
    }

    #[test]
    fn empty_requests() {
        let cfg = CorpusConfig {
            size: 0,
            ..CorpusConfig::default()
        };
        assert!(random_corpus(&cfg).is_empty());
    }
}
