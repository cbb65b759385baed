//! Named small graphs and a seeded generator of random decorated multigraphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{DecoratedGraph, GraphBuilder};

/// Two vertices `v1`, `v2` (genus 0) joined by edges `e1`, `e2` oriented `v1 → v2`,
/// of thicknesses `n` and `m`.
pub fn banana(n: u64, m: u64) -> DecoratedGraph {
    banana_with_genera(n, m, 0, 0)
}

pub fn banana_with_genera(n: u64, m: u64, g1: u64, g2: u64) -> DecoratedGraph {
    GraphBuilder::new()
        .vertex("v1", g1)
        .vertex("v2", g2)
        .edge("e1", "v1", "v2", n)
        .edge("e2", "v1", "v2", m)
        .build()
        .expect("banana graph is valid")
}

/// One vertex `v` (genus 0) carrying a loop `e1` of thickness `t`.
pub fn loop_graph(t: u64) -> DecoratedGraph {
    GraphBuilder::new()
        .vertex("v", 0)
        .edge("e1", "v", "v", t)
        .build()
        .expect("loop graph is valid")
}

/// Triangle `v1 → v2 → v3 → v1` with edges `e1`, `e2`, `e3` of thicknesses `a`, `b`, `c`.
pub fn triangle(a: u64, b: u64, c: u64) -> DecoratedGraph {
    GraphBuilder::new()
        .vertex("v1", 0)
        .vertex("v2", 0)
        .vertex("v3", 0)
        .edge("e1", "v1", "v2", a)
        .edge("e2", "v2", "v3", b)
        .edge("e3", "v3", "v1", c)
        .build()
        .expect("triangle is valid")
}

/// A single edge of thickness `t` between two vertices.
pub fn segment(t: u64) -> DecoratedGraph {
    GraphBuilder::new()
        .vertex("v1", 0)
        .vertex("v2", 0)
        .edge("e1", "v1", "v2", t)
        .build()
        .expect("segment is valid")
}

#[derive(Clone, Copy, Debug)]
pub struct RandomGraphParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_thickness: u64,
    pub max_genus: u64,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            max_vertices: 8,
            max_edges: 12,
            max_thickness: 6,
            max_genus: 2,
        }
    }
}

/// A random connected multigraph: a random tree plus extra edges (loops and
/// parallels allowed), random orientations, thicknesses in `1..=max_thickness`.
pub fn random_graph<R: Rng>(rng: &mut R, params: RandomGraphParams) -> DecoratedGraph {
    let n = rng.gen_range(1..=params.max_vertices);
    let min_edges = n - 1;
    let edges = rng.gen_range(min_edges.max(1)..=params.max_edges.max(min_edges));
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b = b.vertex(format!("v{v}"), rng.gen_range(0..=params.max_genus));
    }
    let mut endpoints = Vec::with_capacity(edges);
    for v in 1..n {
        endpoints.push((rng.gen_range(0..v), v));
    }
    while endpoints.len() < edges {
        endpoints.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for (i, (a, c)) in endpoints.into_iter().enumerate() {
        let (tail, head) = if rng.gen_bool(0.5) { (a, c) } else { (c, a) };
        let t = rng.gen_range(1..=params.max_thickness);
        b = b.edge(format!("e{i}"), format!("v{tail}"), format!("v{head}"), t);
    }
    b.build()
        .expect("random graph is connected by construction")
}

/// `count` random graphs from a fixed seed.
pub fn random_corpus(seed: u64, count: usize, params: RandomGraphParams) -> Vec<DecoratedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, params)).collect()
}

/// Fixed small graphs used throughout the tests.
pub fn named_graphs() -> Vec<(String, DecoratedGraph)> {
    let mut out = vec![
        ("B(1,1)".to_string(), banana(1, 1)),
        ("B(2,2)".to_string(), banana(2, 2)),
        ("B(2,3)".to_string(), banana(2, 3)),
        ("B(2,4)".to_string(), banana(2, 4)),
        ("B(3,5)".to_string(), banana(3, 5)),
        ("T(1,1,1)".to_string(), triangle(1, 1, 1)),
        ("T(1,2,3)".to_string(), triangle(1, 2, 3)),
        ("T(2,2,4)".to_string(), triangle(2, 2, 4)),
        ("T(6,4,2)".to_string(), triangle(6, 4, 2)),
        ("segment(5)".to_string(), segment(5)),
    ];
    for t in [1, 2, 3, 6] {
        out.push((format!("L({t})"), loop_graph(t)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_respect_bounds() {
        for g in random_corpus(7, 100, RandomGraphParams::default()) {
            assert!(g.vertex_count() <= 8);
            assert!(g.edge_count() <= 12);
            assert!(g.is_connected());
            assert!(g.edges().iter().all(|e| (1..=6).contains(&e.thickness)));
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = random_corpus(42, 10, RandomGraphParams::default());
        let b = random_corpus(42, 10, RandomGraphParams::default());
        assert_eq!(a, b);
    }
}
