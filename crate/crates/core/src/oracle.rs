//! Brute-force reference computations. Nothing here uses normal forms or lattices:
//! spanning trees are enumerated edge subset by edge subset, and character groups
//! are enumerated element by element and identified from their order profile.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{prime_factors, DecoratedGraph, SpanningTree, UnionFind};
use crate::linalg::FiniteAbelianGroup;

pub const MAX_TREE_EDGES: usize = 24;
pub const MAX_LABELS: u64 = 1_000_000;

/// Every spanning tree, in lexicographic order of sorted edge index lists.
pub fn enumerate_spanning_trees(g: &DecoratedGraph) -> Result<Vec<SpanningTree>> {
    if g.edge_count() > MAX_TREE_EDGES {
        return Err(Error::GuardExceeded {
            what: "edge set",
            size: g.edge_count().to_string(),
            limit: MAX_TREE_EDGES.to_string(),
        });
    }
    let candidates: Vec<usize> = (0..g.edge_count())
        .filter(|&e| !g.edges()[e].is_loop())
        .collect();
    let need = g.vertex_count() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(need);
    choose(g, &candidates, 0, need, &mut chosen, &mut out)?;
    Ok(out)
}

fn choose(
    g: &DecoratedGraph,
    candidates: &[usize],
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SpanningTree>,
) -> Result<()> {
    if chosen.len() == need {
        if is_forest(g, chosen) {
            out.push(SpanningTree::new(g, chosen.iter().copied())?);
        }
        return Ok(());
    }
    let remaining = need - chosen.len();
    for i in start..candidates.len() {
        if candidates.len() - i < remaining {
            break;
        }
        chosen.push(candidates[i]);
        if is_forest(g, chosen) {
            choose(g, candidates, i + 1, need, chosen, out)?;
        }
        chosen.pop();
    }
    Ok(())
}

fn is_forest(g: &DecoratedGraph, edges: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    edges
        .iter()
        .all(|&e| uf.union(g.edges()[e].tail, g.edges()[e].head))
}

/// `Σ_S Π_{e ∉ S} t_e` over spanning trees `S`.
pub fn complexity_by_trees(g: &DecoratedGraph) -> Result<BigInt> {
    let trees = enumerate_spanning_trees(g)?;
    Ok(trees
        .iter()
        .map(|s| {
            (0..g.edge_count())
                .filter(|e| !s.contains(*e))
                .map(|e| BigInt::from(g.edges()[e].thickness))
                .product::<BigInt>()
        })
        .sum())
}

/// Which labels to keep during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSet {
    /// `ker ∂_{ℓt}`.
    Kernel,
    /// Labels in `ker ∂_{ℓt}` whose fundamental-cycle sums vanish modulo `ℓ`.
    Fixed,
}

/// All labels of the given kind at level `ℓ`, as residue vectors, in lexicographic order.
pub fn enumerate_labels(g: &DecoratedGraph, level: u64, set: LabelSet) -> Result<Vec<Vec<u64>>> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    let moduli: Vec<u64> = g
        .edges()
        .iter()
        .map(|e| level.saturating_mul(e.thickness))
        .collect();
    let total = moduli.iter().try_fold(1u64, |acc, &m| {
        acc.checked_mul(m).filter(|&x| x <= MAX_LABELS)
    });
    let Some(_) = total else {
        let size: BigInt = moduli.iter().map(|&m| BigInt::from(m)).product();
        return Err(Error::GuardExceeded {
            what: "label set",
            size: size.to_string(),
            limit: MAX_LABELS.to_string(),
        });
    };
    let big_n = moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let cycles: Vec<Vec<i64>> = match set {
        LabelSet::Kernel => Vec::new(),
        LabelSet::Fixed => cycle_basis(g)?,
    };
    let mut out = Vec::new();
    let mut a = vec![0u64; moduli.len()];
    loop {
        if balanced(g, &a, &moduli, big_n)
            && cycles.iter().all(|c| cycle_sum_vanishes(c, &a, level))
        {
            out.push(a.clone());
        }
        if !increment(&mut a, &moduli) {
            return Ok(out);
        }
    }
}

/// Fundamental cycles as machine integers.
fn cycle_basis(g: &DecoratedGraph) -> Result<Vec<Vec<i64>>> {
    let tree = g.one_spanning_tree()?;
    Ok(g.fundamental_cycles(&tree)
        .into_iter()
        .map(|c| {
            c.iter()
                .map(|x| i64::try_from(x).expect("cycle entries are ±1 or 0"))
                .collect()
        })
        .collect())
}

/// Odometer step from the last coordinate; false once every vector was visited.
fn increment(a: &mut [u64], moduli: &[u64]) -> bool {
    for i in (0..a.len()).rev() {
        a[i] += 1;
        if a[i] < moduli[i] {
            return true;
        }
        a[i] = 0;
    }
    false
}

/// `Σ_e ±a_e/(ℓt_e) ≡ 0 mod 1` at every vertex, checked as integers modulo `N = lcm(ℓt_e)`.
fn balanced(g: &DecoratedGraph, a: &[u64], moduli: &[u64], big_n: u64) -> bool {
    let n = i128::from(big_n);
    let mut degree = vec![0i128; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let x = i128::from(a[e]) * i128::from(big_n / moduli[e]);
        degree[edge.head] += x;
        degree[edge.tail] -= x;
    }
    degree.iter().all(|d| d.rem_euclid(n) == 0)
}

fn cycle_sum_vanishes(cycle: &[i64], a: &[u64], level: u64) -> bool {
    let s: i128 = cycle
        .iter()
        .zip(a)
        .map(|(&c, &x)| i128::from(c) * i128::from(x))
        .sum();
    s.rem_euclid(i128::from(level)) == 0
}

/// Order of a label in `⊕ Z/mᵢ`: `lcm(mᵢ / gcd(aᵢ, mᵢ))`.
pub fn label_order(a: &[u64], moduli: &[u64]) -> u64 {
    a.iter()
        .zip(moduli)
        .fold(1u64, |acc, (&x, &m)| acc.lcm(&(m / x.gcd(&m))))
}

/// Identifies a finite abelian group from the orders of its elements.
///
/// For each prime `p`, the number of elements killed by `p^k` is `p^{Σᵢ min(k, eᵢ)}`,
/// so successive ratios give how many cyclic `p`-factors have exponent at least `k`.
pub fn group_from_order_profile(orders: &[u64]) -> Result<FiniteAbelianGroup> {
    let size = orders.len() as u64;
    let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for p in prime_factors(size) {
        let mut counts = vec![1u64];
        let mut k = 0u32;
        let p_part = p.pow(crate::graph::valuation(size, p));
        while *counts.last().expect("nonempty") < p_part {
            k += 1;
            let pk = p.pow(k);
            let killed = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if killed == *counts.last().expect("nonempty") {
                return Err(Error::FormulaMismatch(
                    "element orders do not form a group profile".into(),
                ));
            }
            counts.push(killed);
        }
        let mut at_least = Vec::new();
        for w in counts.windows(2) {
            let ratio = w[1] / w[0];
            if w[1] % w[0] != 0 || !is_power_of(ratio, p) {
                return Err(Error::FormulaMismatch(
                    "element orders do not form a group profile".into(),
                ));
            }
            at_least.push(log(ratio, p));
        }
        // at_least[k-1] = #{i : eᵢ ≥ k}; convert to the multiset of exponents.
        let mut factor_exponents = Vec::new();
        for (k, &c) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in next..c {
                factor_exponents.push(k as u32 + 1);
            }
        }
        factor_exponents.sort_unstable();
        exponents.insert(p, factor_exponents);
    }
    Ok(invariant_factors_from_primary(&exponents))
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn log(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Combines `p`-primary exponents into invariant factors: the `j`-th largest
/// invariant factor takes the `j`-th largest power of every prime.
fn invariant_factors_from_primary(exponents: &BTreeMap<u64, Vec<u32>>) -> FiniteAbelianGroup {
    let count = exponents.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![BigInt::one(); count];
    for (&p, es) in exponents {
        for (j, &e) in es.iter().rev().enumerate() {
            factors[count - 1 - j] *= BigInt::from(p).pow(e);
        }
    }
    FiniteAbelianGroup::from_smith_diagonal(&factors)
}

/// `ker ∂_{ℓt}` by exhaustive enumeration.
pub fn kernel_by_enumeration(g: &DecoratedGraph, level: u64) -> Result<FiniteAbelianGroup> {
    labels_group(g, level, LabelSet::Kernel)
}

/// The Galois-fixed part of `ker ∂_{ℓt}` by exhaustive enumeration.
pub fn fixed_by_enumeration(g: &DecoratedGraph, level: u64) -> Result<FiniteAbelianGroup> {
    labels_group(g, level, LabelSet::Fixed)
}

fn labels_group(g: &DecoratedGraph, level: u64, set: LabelSet) -> Result<FiniteAbelianGroup> {
    let labels = enumerate_labels(g, level, set)?;
    let moduli: Vec<u64> = g.edges().iter().map(|e| level * e.thickness).collect();
    let orders: Vec<u64> = labels.iter().map(|a| label_order(a, &moduli)).collect();
    group_from_order_profile(&orders)
}
