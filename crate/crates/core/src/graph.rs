//! Connected multigraphs with loops, decorated by vertex genera and edge thicknesses.
//!
//! The stored `(tail, head)` pair of an edge is its reference orientation; every
//! cochain coordinate in this crate is reported with respect to it.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    /// Index of the tail vertex.
    pub tail: usize,
    /// Index of the head vertex.
    pub head: usize,
    pub thickness: u64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// Accumulates vertices and edges by id; `build` validates.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<(String, u64)>,
    edges: Vec<(String, String, String, u64)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>, genus: u64) -> Self {
        self.vertices.push((id.into(), genus));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
        thickness: u64,
    ) -> Self {
        self.edges
            .push((id.into(), tail.into(), head.into(), thickness));
        self
    }

    pub fn build(self) -> Result<DecoratedGraph> {
        let g = self.build_unchecked_connectivity()?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn build_unchecked_connectivity(self) -> Result<DecoratedGraph> {
        let mut index = HashMap::new();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (id, genus) in self.vertices {
            check_id(&id)?;
            if index.insert(id.clone(), vertices.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id `{id}`")));
            }
            vertices.push(Vertex { id, genus });
        }
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (id, tail, head, thickness) in self.edges {
            check_id(&id)?;
            if !seen.insert(id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{id}`")));
            }
            if thickness == 0 {
                return Err(Error::InvalidGraph(format!("edge `{id}` has thickness 0")));
            }
            let tail = *index.get(&tail).ok_or(Error::UnknownVertex(tail))?;
            let head = *index.get(&head).ok_or(Error::UnknownVertex(head))?;
            edges.push(Edge {
                id,
                tail,
                head,
                thickness,
            });
        }
        Ok(DecoratedGraph { vertices, edges })
    }
}

fn check_id(id: &str) -> Result<()> {
    if !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(())
    } else {
        Err(Error::InvalidGraph(format!("invalid id `{id}`")))
    }
}

/// An acyclic, loop-free set of `|V| − 1` edges reaching every vertex (edge indices, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    edges: BTreeSet<usize>,
}

impl SpanningTree {
    /// Validates that `edges` is a spanning tree of `g`.
    pub fn new(g: &DecoratedGraph, edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let edges: BTreeSet<usize> = edges.into_iter().collect();
        if edges.len() + 1 != g.vertex_count() {
            return Err(Error::InvalidGraph(
                "spanning tree needs |V| - 1 edges".into(),
            ));
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for &e in &edges {
            let edge = g
                .edges
                .get(e)
                .ok_or_else(|| Error::UnknownEdge(e.to_string()))?;
            if !uf.union(edge.tail, edge.head) {
                return Err(Error::InvalidGraph("edge set contains a cycle".into()));
            }
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &BTreeSet<usize> {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    pub fn edge_ids<'a>(&'a self, g: &'a DecoratedGraph) -> Vec<&'a str> {
        self.edges.iter().map(|&e| g.edges[e].id.as_str()).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

impl DecoratedGraph {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn thicknesses(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.thickness).collect()
    }

    /// `∏ t_e`.
    pub fn thickness_product(&self) -> BigInt {
        self.edges
            .iter()
            .map(|e| BigInt::from(e.thickness))
            .product()
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count());
        let mut count = self.vertex_count();
        for e in &self.edges {
            if uf.union(e.tail, e.head) {
                count -= 1;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number `1 − |V| + |E|`.
    pub fn betti(&self) -> usize {
        1 + self.edge_count() - self.vertex_count()
    }

    /// `Σ g_v + b(Γ)`.
    pub fn genus(&self) -> u64 {
        self.vertices.iter().map(|v| v.genus).sum::<u64>() + self.betti() as u64
    }

    /// Every vertex has `2g_v − 2 + n_v > 0`.
    pub fn is_stable(&self) -> bool {
        (0..self.vertex_count()).all(|v| 2 * self.vertices[v].genus + self.valence(v) as u64 > 2)
    }

    /// Connected components of the subgraph formed by the edges with `p^l | t_e`
    /// and their endpoints. Empty when no thickness is divisible by `p^l`.
    pub fn subgraph_p_l(&self, p: u64, l: u32) -> Result<Vec<DecoratedGraph>> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if l == 0 {
            return Err(Error::Precondition(
                "filtration level must be at least 1".into(),
            ));
        }
        let Some(q) = p.checked_pow(l) else {
            return Ok(Vec::new());
        };
        let keep: Vec<usize> = (0..self.edge_count())
            .filter(|&e| self.edges[e].thickness.is_multiple_of(q))
            .collect();
        Ok(self.edge_induced_components(&keep))
    }

    fn edge_induced_components(&self, keep: &[usize]) -> Vec<DecoratedGraph> {
        let mut uf = UnionFind::new(self.vertex_count());
        let mut touched = vec![false; self.vertex_count()];
        for &e in keep {
            let edge = &self.edges[e];
            touched[edge.tail] = true;
            touched[edge.head] = true;
            uf.union(edge.tail, edge.head);
        }
        let mut roots: Vec<usize> = Vec::new();
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        for (v, &hit) in touched.iter().enumerate() {
            if hit {
                let r = uf.find(v);
                by_root.entry(r).or_insert_with(|| {
                    roots.push(r);
                    roots.len() - 1
                });
            }
        }
        let mut parts: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); roots.len()];
        for (v, &hit) in touched.iter().enumerate() {
            if hit {
                parts[by_root[&uf.find(v)]].0.push(v);
            }
        }
        for &e in keep {
            parts[by_root[&uf.find(self.edges[e].tail)]].1.push(e);
        }
        parts
            .into_iter()
            .map(|(vs, es)| {
                let remap: HashMap<usize, usize> =
                    vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                DecoratedGraph {
                    vertices: vs.iter().map(|&v| self.vertices[v].clone()).collect(),
                    edges: es
                        .iter()
                        .map(|&e| {
                            let edge = &self.edges[e];
                            Edge {
                                tail: remap[&edge.tail],
                                head: remap[&edge.head],
                                ..edge.clone()
                            }
                        })
                        .collect(),
                }
            })
            .collect()
    }

    /// `(b_{p,1}, …, b_{p,max_p})`, where the Betti number of a disconnected
    /// subgraph is `|E| − |V| + #components`.
    pub fn betti_filtration(&self, p: u64) -> Result<Vec<usize>> {
        let max = self.max_valuation(p)?;
        (1..=max)
            .map(|l| {
                Ok(self
                    .subgraph_p_l(p, l)?
                    .iter()
                    .map(DecoratedGraph::betti)
                    .sum())
            })
            .collect()
    }

    /// Largest `p`-adic valuation among the thicknesses.
    pub fn max_valuation(&self, p: u64) -> Result<u32> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(self
            .edges
            .iter()
            .map(|e| valuation(e.thickness, p))
            .max()
            .unwrap_or(0))
    }

    /// Primes dividing at least one thickness, ascending.
    pub fn thickness_primes(&self) -> Vec<u64> {
        let mut primes = BTreeSet::new();
        for e in &self.edges {
            primes.extend(prime_factors(e.thickness));
        }
        primes.into_iter().collect()
    }

    /// Subdivides each edge of thickness `t` into a path of `t` unit edges.
    /// Fresh vertices (genus 0) are named `<edge>_<k>` for `k = 1..t`, fresh
    /// edges `<edge>_<k>` for `k = 1..=t`; underscores are appended on collision.
    pub fn blow_up(&self) -> DecoratedGraph {
        let mut used_vertex_ids: HashSet<String> =
            self.vertices.iter().map(|v| v.id.clone()).collect();
        let mut used_edge_ids: HashSet<String> = self
            .edges
            .iter()
            .filter(|e| e.thickness == 1)
            .map(|e| e.id.clone())
            .collect();
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        for edge in &self.edges {
            if edge.thickness == 1 {
                edges.push(edge.clone());
                continue;
            }
            let t = edge.thickness as usize;
            let mut path = vec![edge.tail];
            for k in 1..t {
                let id = fresh_id(&format!("{}_{k}", edge.id), &mut used_vertex_ids);
                vertices.push(Vertex { id, genus: 0 });
                path.push(vertices.len() - 1);
            }
            path.push(edge.head);
            for k in 0..t {
                let id = fresh_id(&format!("{}_{}", edge.id, k + 1), &mut used_edge_ids);
                edges.push(Edge {
                    id,
                    tail: path[k],
                    head: path[k + 1],
                    thickness: 1,
                });
            }
        }
        DecoratedGraph { vertices, edges }
    }

    /// The same graph with every thickness multiplied by `k ≥ 1`.
    pub fn with_scaled_thickness(&self, k: u64) -> Result<DecoratedGraph> {
        if k == 0 {
            return Err(Error::Precondition(
                "thickness scale must be positive".into(),
            ));
        }
        let mut edges = self.edges.clone();
        for e in &mut edges {
            e.thickness = e
                .thickness
                .checked_mul(k)
                .ok_or_else(|| Error::Precondition(format!("thickness of `{}` overflows", e.id)))?;
        }
        Ok(DecoratedGraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Deterministic depth-first spanning tree from the first vertex, scanning
    /// incident edges in insertion order.
    pub fn one_spanning_tree(&self) -> Result<SpanningTree> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.vertex_count();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            incident[e.tail].push(i);
            incident[e.head].push(i);
        }
        let mut visited = vec![false; n];
        let mut tree = BTreeSet::new();
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        visited[0] = true;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 == incident[v].len() {
                stack.pop();
                continue;
            }
            let e = incident[v][top.1];
            top.1 += 1;
            let edge = &self.edges[e];
            let w = if edge.tail == v { edge.head } else { edge.tail };
            if !visited[w] {
                visited[w] = true;
                tree.insert(e);
                stack.push((w, 0));
            }
        }
        Ok(SpanningTree { edges: tree })
    }

    /// One integer cycle per edge outside `tree`, in edge order. Each cycle is
    /// the non-tree edge closed up by the tree path, signed so that its first
    /// nonzero coordinate is +1.
    pub fn fundamental_cycles(&self, tree: &SpanningTree) -> Vec<Vec<BigInt>> {
        let n = self.vertex_count();
        // Root the tree at vertex 0: parent vertex, and the edge to it.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &e in tree.edges() {
            adj[self.edges[e].tail].push(e);
            adj[self.edges[e].head].push(e);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &adj[v] {
                let edge = &self.edges[e];
                let w = if edge.tail == v { edge.head } else { edge.tail };
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }

        let mut cycles = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            if tree.contains(i) {
                continue;
            }
            let mut c = vec![BigInt::zero(); self.edge_count()];
            c[i] = BigInt::one();
            // Walk from head back to tail through the tree.
            let (mut a, mut b) = (edge.head, edge.tail);
            let mut from_head = Vec::new();
            let mut from_tail = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, e) = parent[a].expect("tree spans the graph");
                    from_head.push((a, p, e));
                    a = p;
                } else {
                    let (p, e) = parent[b].expect("tree spans the graph");
                    from_tail.push((p, b, e));
                    b = p;
                }
            }
            for (x, y, e) in from_head.into_iter().chain(from_tail.into_iter().rev()) {
                // Traverse e from x to y.
                let sign = if self.edges[e].tail == x && self.edges[e].head == y {
                    1
                } else {
                    -1
                };
                c[e] += BigInt::from(sign);
            }
            if c.iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x < &BigInt::zero())
            {
                c.iter_mut().for_each(|x| *x = -std::mem::take(x));
            }
            cycles.push(c);
        }
        cycles
    }

    /// Canonical text form: all vertex lines, then all edge lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {} {}\n", v.id, v.genus));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {} {}\n",
                e.id, self.vertices[e.tail].id, self.vertices[e.head].id, e.thickness
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<DecoratedGraph> {
        let mut builder = GraphBuilder::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let bad = |message: &str| Error::Parse {
                line,
                message: message.to_string(),
            };
            match fields.as_slice() {
                ["v", id, genus] => {
                    let genus = genus
                        .parse::<u64>()
                        .map_err(|_| bad("genus must be a nonnegative integer"))?;
                    builder = builder.vertex(*id, genus);
                }
                ["e", id, tail, head, t] => {
                    let t = t
                        .parse::<u64>()
                        .map_err(|_| bad("thickness must be a positive integer"))?;
                    builder = builder.edge(*id, *tail, *head, t);
                }
                ["v", ..] => return Err(bad("expected `v <id> <genus>`")),
                ["e", ..] => return Err(bad("expected `e <id> <tail> <head> <thickness>`")),
                _ => return Err(bad("unrecognized line")),
            }
        }
        builder.build()
    }
}

impl FromStr for DecoratedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DecoratedGraph::parse(s)
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn fresh_id(base: &str, used: &mut HashSet<String>) -> String {
    let mut id = base.to_string();
    while used.contains(&id) {
        id.push('_');
    }
    used.insert(id.clone());
    id
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
