//! k-configurations: tuples `x_1, …, x_k` whose pairwise midpoints
//! `(x_i + x_j)/2` all lie in a set `A` of an odd-order group.
//!
//! An ordered tuple is a configuration exactly when its distinct entries form
//! a clique of the midpoint graph on `A`, so the count is
//! `Σ_s (#s-cliques) · surj(k, s)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{bail, Result};
use crate::group::FiniteAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueConfig {
    /// Upper bound on recursion nodes visited.
    pub node_cap: u64,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig {
            node_cap: 1_000_000_000,
        }
    }
}

/// Graph on the elements of `A` with `x ~ y` (`x ≠ y`) when `(x+y)/2 ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidpointGraph {
    vertices: Vec<usize>,
    adjacency: Vec<BitSet>,
}

fn normalize_set(group: &FiniteAbelianGroup, set: &[usize]) -> Result<Vec<usize>> {
    if let Some(&x) = set.iter().find(|&&x| x >= group.order()) {
        bail!(
            GroupMismatch,
            "element index {x} outside group of order {}",
            group.order()
        );
    }
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

impl MidpointGraph {
    pub fn new(group: &FiniteAbelianGroup, set: &[usize]) -> Result<Self> {
        group.require_odd_order()?;
        let vertices = normalize_set(group, set)?;
        let member = BitSet::from_indices(group.order(), vertices.iter().copied());
        let n = vertices.len();
        let mut adjacency = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let mid = group.halve_idx_unchecked(group.add_idx(vertices[i], vertices[j]));
                if member.contains(mid) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        Ok(MidpointGraph {
            vertices,
            adjacency,
        })
    }

    /// Sorted element indices of `A`.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Vertices in degeneracy order (repeatedly removing a minimum-degree vertex).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut deg: Vec<usize> = self.adjacency.iter().map(BitSet::count).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("a vertex remains");
            removed[v] = true;
            order.push(v);
            for u in self.adjacency[v].iter() {
                if !removed[u] {
                    deg[u] -= 1;
                }
            }
        }
        order
    }

    /// Neighbour sets restricted to vertices later in the degeneracy order.
    fn forward_adjacency(&self) -> (Vec<usize>, Vec<BitSet>) {
        let order = self.degeneracy_order();
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let forward = (0..n)
            .map(|v| BitSet::from_indices(n, self.adjacency[v].iter().filter(|&u| pos[u] > pos[v])))
            .collect();
        (order, forward)
    }

    /// `counts[s]` is the number of `s`-cliques for `s ≤ max_size` (`counts[0] = 1`).
    pub fn clique_counts(&self, max_size: usize, config: &CliqueConfig) -> Result<Vec<u128>> {
        let mut counts = vec![0u128; max_size + 1];
        counts[0] = 1;
        if max_size == 0 {
            return Ok(counts);
        }
        let (order, forward) = self.forward_adjacency();
        let mut nodes = 0u64;
        for &v in &order {
            counts[1] += 1;
            if max_size > 1 {
                count_cliques(
                    &forward,
                    &forward[v],
                    1,
                    max_size,
                    &mut counts,
                    &mut nodes,
                    config,
                )?;
            }
        }
        Ok(counts)
    }

    /// Some clique of `size` vertices, as vertex positions.
    pub fn find_clique(&self, size: usize, config: &CliqueConfig) -> Result<Option<Vec<usize>>> {
        if size == 0 {
            return Ok(Some(Vec::new()));
        }
        let (order, forward) = self.forward_adjacency();
        let mut nodes = 0u64;
        let mut path = Vec::with_capacity(size);
        for &v in &order {
            path.push(v);
            if search_clique(&forward, &forward[v], size, &mut path, &mut nodes, config)? {
                return Ok(Some(path));
            }
            path.pop();
        }
        Ok(None)
    }
}

fn tick(nodes: &mut u64, config: &CliqueConfig) -> Result<()> {
    *nodes += 1;
    if *nodes > config.node_cap {
        bail!(
            ResourceLimit,
            "clique search exceeded {} nodes",
            config.node_cap
        );
    }
    Ok(())
}

fn count_cliques(
    forward: &[BitSet],
    cand: &BitSet,
    depth: usize,
    max_size: usize,
    counts: &mut [u128],
    nodes: &mut u64,
    config: &CliqueConfig,
) -> Result<()> {
    tick(nodes, config)?;
    if depth + 1 == max_size {
        counts[max_size] += cand.count() as u128;
        return Ok(());
    }
    for u in cand.iter() {
        counts[depth + 1] += 1;
        let mut next = cand.clone();
        next.intersect_with(&forward[u]);
        if !next.is_empty() {
            count_cliques(forward, &next, depth + 1, max_size, counts, nodes, config)?;
        }
    }
    Ok(())
}

fn search_clique(
    forward: &[BitSet],
    cand: &BitSet,
    size: usize,
    path: &mut Vec<usize>,
    nodes: &mut u64,
    config: &CliqueConfig,
) -> Result<bool> {
    tick(nodes, config)?;
    if path.len() == size {
        return Ok(true);
    }
    if path.len() + cand.count() < size {
        return Ok(false);
    }
    for u in cand.iter() {
        let mut next = cand.clone();
        next.intersect_with(&forward[u]);
        path.push(u);
        if search_clique(forward, &next, size, path, nodes, config)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Number of surjections from a `k`-set onto an `s`-set.
pub fn surjections(k: usize, s: usize) -> BigUint {
    // row[j] = surj(n, j) for the current n
    let mut row = vec![BigUint::zero(); s + 1];
    row[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); s + 1];
        for j in 1..=s {
            next[j] = BigUint::from(j) * (&row[j] + &row[j - 1]);
        }
        row = next;
    }
    row[s].clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationCount {
    /// Ordered tuples in `G^k` with every midpoint in `A`.
    pub count: BigUint,
    /// `|G|^k`.
    pub total: BigUint,
    /// `cliques[s]` = number of `s`-element subsets of `A` pairwise joined.
    pub cliques: Vec<u128>,
}

impl ConfigurationCount {
    pub fn probability(&self) -> BigRational {
        BigRational::new(self.count.clone().into(), self.total.clone().into())
    }

    /// Tuples with pairwise distinct entries.
    pub fn nondegenerate(&self) -> u128 {
        self.cliques.last().copied().unwrap_or(0)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        bail!(InvalidArgument, "configurations need k >= 2, got {k}");
    }
    Ok(())
}

pub fn count_k_configurations(
    group: &FiniteAbelianGroup,
    set: &[usize],
    k: usize,
    config: &CliqueConfig,
) -> Result<ConfigurationCount> {
    check_k(k)?;
    let graph = MidpointGraph::new(group, set)?;
    let cliques = graph.clique_counts(k, config)?;
    let count = (1..=k).fold(BigUint::zero(), |acc, s| {
        acc + BigUint::from(cliques[s]) * surjections(k, s)
    });
    Ok(ConfigurationCount {
        count,
        total: BigUint::from(group.order()).pow(k as u32),
        cliques,
    })
}

/// `k` pairwise distinct elements whose pairwise midpoints lie in `A`.
pub fn find_nondegenerate_configuration(
    group: &FiniteAbelianGroup,
    set: &[usize],
    k: usize,
    config: &CliqueConfig,
) -> Result<Option<Vec<usize>>> {
    check_k(k)?;
    let graph = MidpointGraph::new(group, set)?;
    Ok(graph.find_clique(k, config)?.map(|c| {
        let mut v: Vec<usize> = c.into_iter().map(|i| graph.vertices[i]).collect();
        v.sort_unstable();
        v
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateBound {
    pub probability: BigRational,
    /// `C(k,2)/|G|`.
    pub bound: BigRational,
    pub pass: bool,
}

/// For `A` without non-degenerate `k`-configurations, checks that the
/// configuration probability is at most `C(k,2)/|G|`.
pub fn degenerate_bound_check(
    group: &FiniteAbelianGroup,
    set: &[usize],
    k: usize,
    config: &CliqueConfig,
) -> Result<DegenerateBound> {
    let count = count_k_configurations(group, set, k, config)?;
    if count.nondegenerate() > 0 {
        bail!(
            PreconditionViolation,
            "set contains {} non-degenerate {k}-configurations",
            count.nondegenerate()
        );
    }
    let probability = count.probability();
    let bound = BigRational::new(
        (BigUint::from(k * (k - 1) / 2)).into(),
        BigUint::from(group.order()).into(),
    );
    Ok(DegenerateBound {
        pass: probability <= bound,
        probability,
        bound,
    })
}

/// Whether a set of integers contains `a, a+r, a+2r` with `r ≠ 0`.
pub fn has_three_ap(set: &[u64]) -> bool {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let s = v[i] + v[j];
            if s.is_multiple_of(2) && v[i + 1..j].binary_search(&(s / 2)).is_ok() {
                return true;
            }
        }
    }
    false
}

/// A 3AP-free subset of `[N] = {1, …, N}` from spheres of digit vectors.
///
/// Vectors in `[0, d)^n` written in base `2d−1` add without carries, so a
/// progression of values is a progression of vectors, and a sphere holds none.
/// The parameter grid `n, d ≥ 2`, `(2d−1)^{n−1} ≤ N` only grows with `N`, so the
/// output size is nondecreasing in `N`.
pub fn behrend_set(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 1 {
        bail!(InvalidArgument, "Behrend set needs N >= 1");
    }
    let mut best: Vec<u64> = (1..=n_max.min(2)).collect();
    for dim in 2u32.. {
        let mut any = false;
        for d in 2u64.. {
            let base = 2 * d - 1;
            match base.checked_pow(dim - 1) {
                Some(p) if p <= n_max => {}
                _ => break,
            }
            any = true;
            let candidate = best_sphere(dim, d, n_max);
            if candidate.len() > best.len() {
                best = candidate;
            }
        }
        if !any {
            break;
        }
    }
    if has_three_ap(&best) {
        bail!(
            NumericalAnomaly,
            "Behrend construction produced a 3AP for N = {n_max}"
        );
    }
    Ok(best)
}

/// Largest sphere class among vectors in `[0,d)^dim` with value `< n_max`,
/// shifted into `[1, n_max]`.
fn best_sphere(dim: u32, d: u64, n_max: u64) -> Vec<u64> {
    let base = 2 * d - 1;
    let mut classes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    let scales: Vec<u64> = (0..dim).map(|i| base.saturating_pow(i)).collect();
    collect_digits(&scales, dim as usize, d, n_max, 0, 0, &mut classes);
    pick_largest(classes)
}

/// Fills digits from the most significant position down, pruning once the
/// value reaches `n_max`.
fn collect_digits(
    scales: &[u64],
    remaining: usize,
    d: u64,
    n_max: u64,
    value: u64,
    norm: u64,
    classes: &mut BTreeMap<u64, Vec<u64>>,
) {
    if remaining == 0 {
        classes.entry(norm).or_default().push(value + 1);
        return;
    }
    let scale = scales[remaining - 1];
    for x in 0..d {
        let v = value.saturating_add(x.saturating_mul(scale));
        if v >= n_max {
            break;
        }
        collect_digits(scales, remaining - 1, d, n_max, v, norm + x * x, classes);
    }
}

fn pick_largest(classes: BTreeMap<u64, Vec<u64>>) -> Vec<u64> {
    let mut best: Vec<u64> = Vec::new();
    for mut c in classes.into_values() {
        if c.len() > best.len() {
            c.sort_unstable();
            best = c;
        }
    }
    best
}

/// `π(A)` in `ℤ/(2N+1)` for `A ⊆ [N]`; the group is returned alongside.
pub fn embed_interval(n: u64, set: &[i64]) -> Result<(FiniteAbelianGroup, Vec<usize>)> {
    if n < 1 {
        bail!(InvalidArgument, "interval length must be at least 1");
    }
    if let Some(a) = set.iter().find(|&&a| a < 1 || a as u64 > n) {
        bail!(InvalidArgument, "element {a} outside [1, {n}]");
    }
    let group = FiniteAbelianGroup::cyclic(2 * n + 1)?;
    let mut image: Vec<usize> = set.iter().map(|&a| a as usize).collect();
    image.sort_unstable();
    image.dedup();
    Ok((group, image))
}

/// Non-degenerate `k`-configuration among integers: pairwise distinct `x_i` with
/// every `(x_i + x_j)/2` an integer in `A`.
pub fn integer_configuration(
    set: &[i64],
    k: usize,
    config: &CliqueConfig,
) -> Result<Option<Vec<i64>>> {
    check_k(k)?;
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    let n = v.len();
    let mut adjacency = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            let s = v[i] + v[j];
            if s % 2 == 0 && v.binary_search(&(s / 2)).is_ok() {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    let graph = MidpointGraph {
        vertices: (0..n).collect(),
        adjacency,
    };
    Ok(graph.find_clique(k, config)?.map(|c| {
        let mut out: Vec<i64> = c.into_iter().map(|i| v[i]).collect();
        out.sort_unstable();
        out
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub in_interval: Option<Vec<i64>>,
    pub in_group: Option<Vec<usize>>,
    pub agree: bool,
}

/// Compares configuration-freeness of `A ⊆ [N]` and of its image in `ℤ/(2N+1)`.
pub fn check_interval_embedding(
    n: u64,
    set: &[i64],
    k: usize,
    config: &CliqueConfig,
) -> Result<EmbeddingCheck> {
    let (group, image) = embed_interval(n, set)?;
    let in_interval = integer_configuration(set, k, config)?;
    let in_group = find_nondegenerate_configuration(&group, &image, k, config)?;
    Ok(EmbeddingCheck {
        agree: in_interval.is_some() == in_group.is_some(),
        in_interval,
        in_group,
    })
}

/// Each of `0..universe` independently with probability `density`.
pub fn random_set(universe: usize, density: f64, seed: u64) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&density) {
        bail!(InvalidArgument, "density must lie in [0,1], got {density}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..universe)
        .filter(|_| rng.gen::<f64>() < density)
        .collect())
}
