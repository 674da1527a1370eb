//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bigraph::{BidirectedGraph, EdgeSpec, Sign, VertexId};

use super::instance::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub x_size: usize,
    pub y_size: usize,
    pub overlap_allowed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

impl GenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: String| Err(GenError::InvalidParams(m));
        if self.m > 0 && self.n < 2 {
            return bad(format!("{} edges need at least 2 vertices", self.m));
        }
        if self.x_size > self.n || self.y_size > self.n {
            return bad("set larger than the vertex set".into());
        }
        if !self.overlap_allowed && self.x_size + self.y_size > self.n {
            return bad("disjoint X and Y do not fit".into());
        }
        Ok(())
    }
}

/// splitmix64 finalizer; trial `i` of a batch seeded with `seed` uses
/// `derive_seed(seed, i)`.
pub fn derive_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Vertices `v0 … v{n-1}`, uniform endpoints with loops redrawn, uniform
/// signs, uniform X and Y.
pub fn random_instance(p: &GenParams) -> Result<InstanceFile, GenError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let names: Vec<VertexId> = (0..p.n).map(|i| VertexId::from(format!("v{i}"))).collect();
    let mut specs = Vec::with_capacity(p.m);
    while specs.len() < p.m {
        let a = rng.gen_range(0..p.n);
        let b = rng.gen_range(0..p.n);
        if a == b {
            continue;
        }
        let (sa, sb) = (random_sign(&mut rng), random_sign(&mut rng));
        specs.push(EdgeSpec::new(names[a].clone(), names[b].clone(), sa, sb));
    }
    let graph = BidirectedGraph::build(names.clone(), &specs).expect("generated edges are valid");
    let x: BTreeSet<VertexId> = sample(&mut rng, p.n, p.x_size)
        .into_iter()
        .map(|i| names[i].clone())
        .collect();
    let y: BTreeSet<VertexId> = if p.overlap_allowed {
        sample(&mut rng, p.n, p.y_size)
            .into_iter()
            .map(|i| names[i].clone())
            .collect()
    } else {
        let rest: Vec<&VertexId> = names.iter().filter(|v| !x.contains(*v)).collect();
        sample(&mut rng, rest.len(), p.y_size)
            .into_iter()
            .map(|i| rest[i].clone())
            .collect()
    };
    Ok(InstanceFile {
        graph,
        x,
        y,
        s: None,
        t: None,
    })
}

/// Picks sizes within the given caps from the trial seed, then generates.
pub fn random_trial(seed: u64, max_vertices: usize, max_edges: usize, max_set: usize) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5E_ED0F_5EED);
    let n = rng.gen_range(2..=max_vertices.max(2));
    let m = rng.gen_range(0..=max_edges);
    let overlap_allowed = rng.gen_bool(0.25);
    let cap = max_set.min(if overlap_allowed { n } else { n / 2 }).max(1);
    let x_size = rng.gen_range(1..=cap);
    let y_size = rng.gen_range(1..=cap);
    let params = GenParams {
        n,
        m,
        seed,
        x_size,
        y_size,
        overlap_allowed,
    };
    random_instance(&params).expect("sizes chosen within range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::serialize_instance;

    fn params(n: usize, m: usize, seed: u64) -> GenParams {
        GenParams {
            n,
            m,
            seed,
            x_size: 1,
            y_size: 1,
            overlap_allowed: false,
        }
    }

    #[test]
    fn deterministic() {
        let p = params(6, 12, 1);
        let a = serialize_instance(&random_instance(&p).unwrap());
        let b = serialize_instance(&random_instance(&p).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn edgeless() {
        let inst = random_instance(&params(2, 0, 9)).unwrap();
        assert_eq!(inst.graph.edge_count(), 0);
        assert_eq!(inst.graph.vertex_count(), 2);
        assert!(inst.x.is_disjoint(&inst.y));
    }

    #[test]
    fn no_loops_and_sizes() {
        for seed in 0..20 {
            let mut p = params(3, 10, seed);
            p.x_size = 2;
            p.y_size = 2;
            p.overlap_allowed = true;
            let inst = random_instance(&p).unwrap();
            assert_eq!(inst.graph.edge_count(), 10);
            assert!(inst.graph.edges().iter().all(|e| e.u != e.v));
            assert_eq!(inst.x.len(), 2);
            assert_eq!(inst.y.len(), 2);
        }
    }

    #[test]
    fn invalid_params() {
        assert!(random_instance(&params(1, 1, 0)).is_err());
        let mut p = params(3, 0, 0);
        p.x_size = 2;
        p.y_size = 2;
        assert!(random_instance(&p).is_err());
    }

    #[test]
    fn seeds_differ_per_trial() {
        let seeds: BTreeSet<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 100);
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }

    #[test]
    fn trial_respects_caps() {
        for i in 0..50 {
            let inst = random_trial(derive_seed(3, i), 7, 14, 3);
            assert!(inst.graph.vertex_count() <= 7);
            assert!(inst.graph.edge_count() <= 14);
            assert!((1..=3).contains(&inst.x.len()));
            assert!((1..=3).contains(&inst.y.len()));
        }
    }
}
