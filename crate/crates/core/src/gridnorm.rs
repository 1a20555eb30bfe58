//! Grid semi-norms, homomorphism densities of oriented graphs into bipartite
//! tables, and the rectangle / low-degree dichotomy for deviating counts.
//!
//! Vertices are `0..k` and every edge `(i, j)` has `i < j`. Densities are kept
//! as integer ratios so witnesses re-verify without tolerance.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{bail, Result};
use crate::exact::rational;

/// Tables up to this many rows and columns get an exhaustive rectangle search.
pub const EXHAUSTIVE_RECTANGLE_SIDE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridNormConfig {
    /// Upper bound on `|Y|^q · |X| · q` for [`grid_norm`].
    pub cost_cap: u128,
    /// Upper bound on `∏|X_i|` for exact homomorphism counting.
    pub tuple_cap: u128,
}

impl Default for GridNormConfig {
    fn default() -> Self {
        GridNormConfig {
            cost_cap: 100_000_000,
            tuple_cap: 1_000_000_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn new(k: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if k == 0 {
            bail!(InvalidArgument, "graph needs at least one vertex");
        }
        for (n, &(i, j)) in edges.iter().enumerate() {
            if !(i < j && j < k) {
                bail!(InvalidArgument, "edge ({i},{j}) must satisfy i < j < {k}");
            }
            if edges[..n].contains(&(i, j)) {
                bail!(InvalidArgument, "parallel edge ({i},{j})");
            }
        }
        Ok(OrientedGraph { k, edges })
    }

    pub fn path(k: usize) -> Self {
        OrientedGraph {
            k,
            edges: (1..k).map(|j| (j - 1, j)).collect(),
        }
    }

    /// Every pair `i < j` of `0..k`.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        OrientedGraph { k, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.k];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// `κ(H) = 2|E(H)| − d₁(H)`.
    pub fn kappa(&self) -> usize {
        let d1 = self.degrees().iter().filter(|&&d| d == 1).count();
        2 * self.edges.len() - d1
    }
}

/// A real matrix on `X × Y`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            bail!(InvalidArgument, "matrix sides must be positive");
        }
        if data.len() != rows * cols {
            bail!(
                InvalidArgument,
                "matrix data has {} entries, expected {}",
                data.len(),
                rows * cols
            );
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.cols + y]
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}

/// A 0/1 table `A ⊆ X × Y`, one bitset per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitTable {
    rows: usize,
    cols: usize,
    row_bits: Vec<BitSet>,
}

impl BitTable {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            bail!(InvalidArgument, "table sides must be positive");
        }
        Ok(BitTable {
            rows,
            cols,
            row_bits: vec![BitSet::new(cols); rows],
        })
    }

    /// Row-major 0/1 entries.
    pub fn from_bools(rows: usize, cols: usize, entries: &[bool]) -> Result<Self> {
        let mut t = Self::new(rows, cols)?;
        if entries.len() != rows * cols {
            bail!(
                InvalidArgument,
                "table has {} entries, expected {}",
                entries.len(),
                rows * cols
            );
        }
        for (n, &e) in entries.iter().enumerate() {
            if e {
                t.row_bits[n / cols].insert(n % cols);
            }
        }
        Ok(t)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut t = Self::new(rows, cols)?;
        for x in 0..rows {
            for y in 0..cols {
                if f(x, y) {
                    t.row_bits[x].insert(y);
                }
            }
        }
        Ok(t)
    }

    /// The table whose bit `x·cols + y` of `mask` gives entry `(x, y)`.
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Result<Self> {
        if rows * cols > 64 {
            bail!(InvalidArgument, "mask encoding holds at most 64 entries");
        }
        Self::from_fn(rows, cols, |x, y| mask >> (x * cols + y) & 1 == 1)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.row_bits[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &BitSet {
        &self.row_bits[x]
    }

    pub fn row_count(&self, x: usize) -> usize {
        self.row_bits[x].count()
    }

    pub fn ones(&self) -> usize {
        self.row_bits.iter().map(BitSet::count).sum()
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    /// `α = ones / (rows · cols)` as an exact ratio.
    pub fn density(&self) -> BigRational {
        ratio(self.ones() as u128, self.cells() as u128)
    }

    pub fn count_in(&self, s: &[usize], t: &[usize]) -> usize {
        s.iter()
            .map(|&x| t.iter().filter(|&&y| self.get(x, y)).count())
            .sum()
    }

    pub fn to_matrix(&self) -> Matrix {
        let data = (0..self.rows)
            .flat_map(|x| (0..self.cols).map(move |y| (x, y)))
            .map(|(x, y)| if self.get(x, y) { 1.0 } else { 0.0 })
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An oriented graph with one table `A_{i,j} ⊆ X_i × X_j` per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingInstance {
    graph: OrientedGraph,
    set_sizes: Vec<usize>,
    tables: Vec<BitTable>,
}

impl CountingInstance {
    /// `tables[e]` belongs to `graph.edges()[e]`.
    pub fn new(graph: OrientedGraph, set_sizes: Vec<usize>, tables: Vec<BitTable>) -> Result<Self> {
        if set_sizes.len() != graph.k {
            bail!(
                InvalidArgument,
                "{} set sizes for {} vertices",
                set_sizes.len(),
                graph.k
            );
        }
        if set_sizes.contains(&0) {
            bail!(InvalidArgument, "vertex sets must be non-empty");
        }
        if tables.len() != graph.edges.len() {
            bail!(
                InvalidArgument,
                "{} tables for {} edges",
                tables.len(),
                graph.edges.len()
            );
        }
        for (&(i, j), t) in graph.edges.iter().zip(&tables) {
            if t.rows != set_sizes[i] || t.cols != set_sizes[j] {
                bail!(
                    InvalidArgument,
                    "table on edge ({i},{j}) is {}x{}, expected {}x{}",
                    t.rows,
                    t.cols,
                    set_sizes[i],
                    set_sizes[j]
                );
            }
        }
        Ok(CountingInstance {
            graph,
            set_sizes,
            tables,
        })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn set_sizes(&self) -> &[usize] {
        &self.set_sizes
    }

    pub fn tables(&self) -> &[BitTable] {
        &self.tables
    }

    pub fn table(&self, edge: usize) -> &BitTable {
        &self.tables[edge]
    }

    pub fn tuple_count(&self) -> u128 {
        self.set_sizes.iter().map(|&s| s as u128).product()
    }

    /// `∏_e α_e`.
    pub fn product_density(&self) -> BigRational {
        self.tables
            .iter()
            .fold(BigRational::one(), |acc, t| acc * t.density())
    }
}

/// Exact number of tuples in `∏ X_i` satisfying every edge, and the tuple total.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomomorphismCount {
    pub count: u128,
    pub total: u128,
}

impl HomomorphismCount {
    pub fn density(&self) -> f64 {
        self.count as f64 / self.total as f64
    }

    pub fn ratio(&self) -> BigRational {
        ratio(self.count, self.total)
    }
}

/// `‖f‖_{U(p,q)} = |E_{x ∈ X^p, y ∈ Y^q} ∏_{i,j} f(x_i, y_j)|^{1/pq}`.
pub fn grid_norm(f: &Matrix, p: u32, q: u32, config: &GridNormConfig) -> Result<f64> {
    if p < 1 || q < 1 {
        bail!(InvalidArgument, "grid norm needs p, q >= 1");
    }
    let cols = f.cols as u128;
    let cost = cols
        .checked_pow(q)
        .and_then(|c| c.checked_mul(f.rows as u128 * q as u128))
        .filter(|&c| c <= config.cost_cap);
    if cost.is_none() {
        bail!(
            ResourceLimit,
            "grid norm with q = {q} on {} columns exceeds the cost cap {}",
            f.cols,
            config.cost_cap
        );
    }
    if p == 1 && q == 1 {
        return Ok(f.mean().abs());
    }
    let q = q as usize;
    let mut ys = vec![0usize; q];
    let mut total = 0.0;
    loop {
        let inner: f64 = (0..f.rows)
            .map(|x| ys.iter().map(|&y| f.get(x, y)).product::<f64>())
            .sum::<f64>()
            / f.rows as f64;
        total += libm::pow(inner, p as f64);
        if !advance(&mut ys, f.cols) {
            break;
        }
    }
    let mean = total / libm::pow(f.cols as f64, q as f64);
    Ok(libm::pow(mean.abs(), 1.0 / (p as f64 * q as f64)))
}

/// Odometer step over `[0, base)^len`; false once it wraps.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Counts satisfying tuples by assigning vertices in order, intersecting the
/// candidate rows of every earlier neighbour.
pub fn homomorphism_count(
    inst: &CountingInstance,
    config: &GridNormConfig,
) -> Result<HomomorphismCount> {
    let total = inst.tuple_count();
    if total > config.tuple_cap {
        bail!(
            ResourceLimit,
            "tuple space {total} exceeds the exact-count cap {}",
            config.tuple_cap
        );
    }
    // incoming[v] lists (earlier vertex u, edge index) for edges (u, v)
    let k = inst.graph.k;
    let mut incoming = vec![Vec::new(); k];
    for (e, &(u, v)) in inst.graph.edges.iter().enumerate() {
        incoming[v].push((u, e));
    }
    let mut assignment = vec![0usize; k];
    let count = count_from(inst, &incoming, &mut assignment, 0);
    Ok(HomomorphismCount { count, total })
}

fn candidates(
    inst: &CountingInstance,
    incoming: &[Vec<(usize, usize)>],
    assignment: &[usize],
    v: usize,
) -> BitSet {
    let mut cand = BitSet::full(inst.set_sizes[v]);
    for &(u, e) in &incoming[v] {
        cand.intersect_with(inst.tables[e].row(assignment[u]));
    }
    cand
}

fn count_from(
    inst: &CountingInstance,
    incoming: &[Vec<(usize, usize)>],
    assignment: &mut Vec<usize>,
    v: usize,
) -> u128 {
    let k = inst.graph.k;
    let cand = candidates(inst, incoming, assignment, v);
    if v + 1 == k {
        return cand.count() as u128;
    }
    let mut total = 0;
    for x in cand.iter() {
        assignment[v] = x;
        total += count_from(inst, incoming, assignment, v + 1);
    }
    total
}

/// `E_{x ∈ ∏X_i} ∏_{(i,j)} 1_{A_{i,j}}(x_i, x_j)`, exactly.
pub fn homomorphism_density(inst: &CountingInstance, config: &GridNormConfig) -> Result<f64> {
    Ok(homomorphism_count(inst, config)?.density())
}

/// Monte Carlo estimate of the homomorphism density and its standard error.
pub fn homomorphism_density_sampled(
    inst: &CountingInstance,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 2 {
        bail!(InvalidArgument, "sampling needs at least two samples");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut x = vec![0usize; inst.graph.k];
    for _ in 0..samples {
        for (v, slot) in x.iter_mut().enumerate() {
            *slot = rng.gen_range(0..inst.set_sizes[v]);
        }
        let ok = inst
            .graph
            .edges
            .iter()
            .zip(&inst.tables)
            .all(|(&(i, j), t)| t.get(x[i], x[j]));
        hits += ok as u64;
    }
    let n = samples as f64;
    let mean = hits as f64 / n;
    let var = mean * (1.0 - mean) * n / (n - 1.0);
    Ok((mean, libm::sqrt(var / n)))
}

/// `δ(ε, m) = ε² m⁻² / 16000`.
pub fn delta(eps: f64, m: usize) -> f64 {
    eps * eps / (m as f64 * m as f64) / 16000.0
}

/// `δ̃ = ε² κ(H)⁻² / 1000`.
pub fn delta_tilde(eps: f64, graph: &OrientedGraph) -> Result<f64> {
    let kappa = graph.kappa();
    if kappa == 0 {
        bail!(InvalidArgument, "δ̃ is undefined when κ(H) = 0");
    }
    Ok(eps * eps / (kappa as f64 * kappa as f64) / 1000.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeviationReport {
    pub fired: bool,
    pub count: HomomorphismCount,
    /// `|density − ∏α|`.
    pub lhs: f64,
    /// `ε ∏α`.
    pub rhs: f64,
    pub product_density: f64,
    pub delta: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 1.0) {
        bail!(InvalidArgument, "ε must lie in (0,1], got {eps}");
    }
    Ok(())
}

/// Fires when `|density − ∏α| ≥ ε ∏α`, decided in exact arithmetic.
pub fn deviation_test(
    inst: &CountingInstance,
    eps: f64,
    config: &GridNormConfig,
) -> Result<DeviationReport> {
    check_eps(eps)?;
    let count = homomorphism_count(inst, config)?;
    let prod = inst.product_density();
    let dev = (count.ratio() - &prod).abs();
    let bound = rational(eps)? * &prod;
    let prod_f = to_f64(&prod);
    Ok(DeviationReport {
        fired: dev >= bound,
        count,
        lhs: (count.density() - prod_f).abs(),
        rhs: eps * prod_f,
        product_density: prod_f,
        delta: delta(eps, inst.graph.edge_count()),
    })
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `S × T` with its number of ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub ones: usize,
    /// True when found by peeling rather than exhaustive search.
    pub heuristic: bool,
}

impl Rectangle {
    pub fn area(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn mean(&self) -> f64 {
        self.ones as f64 / self.area() as f64
    }
}

/// `ones/area ≥ (1+δ)α`.
pub fn rectangle_is_dense(table: &BitTable, rect: &Rectangle, delta: f64) -> Result<bool> {
    if rect.rows.is_empty() || rect.cols.is_empty() {
        return Ok(false);
    }
    if rect.rows.iter().any(|&x| x >= table.rows) || rect.cols.iter().any(|&y| y >= table.cols) {
        return Ok(false);
    }
    let ones = table.count_in(&rect.rows, &rect.cols);
    if ones != rect.ones {
        return Ok(false);
    }
    let lhs = ratio(ones as u128, rect.area() as u128);
    let rhs = (BigRational::one() + rational(delta)?) * table.density();
    Ok(lhs >= rhs)
}

/// Strictly better: larger mean, then larger area.
fn better(ones: usize, area: usize, best_ones: usize, best_area: usize) -> bool {
    let l = ones as u128 * best_area as u128;
    let r = best_ones as u128 * area as u128;
    l > r || (l == r && area > best_area)
}

/// Finds the rectangle of largest mean (then largest area) and returns it
/// when its mean is at least `(1+δ)α`.
///
/// Exhaustive when both sides are at most [`EXHAUSTIVE_RECTANGLE_SIDE`]; otherwise
/// greedy peeling, flagged as heuristic.
pub fn find_dense_rectangle(table: &BitTable, delta: f64) -> Result<Option<Rectangle>> {
    if !(delta > 0.0) {
        bail!(InvalidArgument, "δ must be positive, got {delta}");
    }
    let rect = if table.rows <= EXHAUSTIVE_RECTANGLE_SIDE && table.cols <= EXHAUSTIVE_RECTANGLE_SIDE
    {
        best_rectangle_exhaustive(table)
    } else {
        best_rectangle_peeling(table)
    };
    Ok(if rectangle_is_dense(table, &rect, delta)? {
        Some(rect)
    } else {
        None
    })
}

fn best_rectangle_exhaustive(table: &BitTable) -> Rectangle {
    let (r, c) = (table.rows, table.cols);
    let mut best: Option<(usize, usize, u32, Vec<usize>)> = None;
    let mut col_counts = vec![0usize; c];
    let mut order: Vec<usize> = (0..c).collect();
    for mask in 1u32..(1 << r) {
        let s = mask.count_ones() as usize;
        col_counts.iter_mut().for_each(|v| *v = 0);
        for x in (0..r).filter(|x| mask >> x & 1 == 1) {
            for y in table.row(x).iter() {
                col_counts[y] += 1;
            }
        }
        order.sort_by(|&a, &b| col_counts[b].cmp(&col_counts[a]).then(a.cmp(&b)));
        let mut ones = 0;
        for t in 1..=c {
            ones += col_counts[order[t - 1]];
            let area = s * t;
            let improves = match &best {
                None => true,
                Some((bo, ba, _, _)) => better(ones, area, *bo, *ba),
            };
            if improves {
                let mut cols = order[..t].to_vec();
                cols.sort_unstable();
                best = Some((ones, area, mask, cols));
            }
        }
    }
    let (ones, _, mask, cols) = best.expect("table has at least one cell");
    Rectangle {
        rows: (0..r).filter(|x| mask >> x & 1 == 1).collect(),
        cols,
        ones,
        heuristic: false,
    }
}

fn best_rectangle_peeling(table: &BitTable) -> Rectangle {
    let mut rows: Vec<usize> = (0..table.rows).collect();
    let mut cols: Vec<usize> = (0..table.cols).collect();
    let mut ones = table.ones();
    let mut best = Rectangle {
        rows: rows.clone(),
        cols: cols.clone(),
        ones,
        heuristic: true,
    };
    while rows.len() > 1 || cols.len() > 1 {
        let col_set = BitSet::from_indices(table.cols, cols.iter().copied());
        let row_counts: Vec<usize> = rows
            .iter()
            .map(|&x| table.row(x).intersection_count(&col_set))
            .collect();
        let col_counts: Vec<usize> = cols
            .iter()
            .map(|&y| rows.iter().filter(|&&x| table.get(x, y)).count())
            .collect();
        // densities: row count / |T| against column count / |S|
        let worst_row = (0..rows.len())
            .min_by_key(|&i| row_counts[i])
            .filter(|_| rows.len() > 1);
        let worst_col = (0..cols.len())
            .min_by_key(|&i| col_counts[i])
            .filter(|_| cols.len() > 1);
        let drop_row = match (worst_row, worst_col) {
            (Some(i), Some(j)) => {
                (row_counts[i] as u128) * (rows.len() as u128)
                    <= (col_counts[j] as u128) * (cols.len() as u128)
            }
            (Some(_), None) => true,
            _ => false,
        };
        if drop_row {
            let i = worst_row.expect("row chosen");
            ones -= row_counts[i];
            rows.remove(i);
        } else {
            let j = worst_col.expect("column chosen");
            ones -= col_counts[j];
            cols.remove(j);
        }
        if better(ones, rows.len() * cols.len(), best.ones, best.area()) {
            best = Rectangle {
                rows: rows.clone(),
                cols: cols.clone(),
                ones,
                heuristic: true,
            };
        }
    }
    best
}

/// `{x : row mean ≤ (1−δ)α}`, or `None` when empty.
pub fn find_low_degree_set(table: &BitTable, delta: f64) -> Result<Option<Vec<usize>>> {
    if !(delta > 0.0) {
        bail!(InvalidArgument, "δ must be positive, got {delta}");
    }
    let threshold = (BigRational::one() - rational(delta)?) * table.density();
    let s: Vec<usize> = (0..table.rows)
        .filter(|&x| ratio(table.row_count(x) as u128, table.cols as u128) <= threshold)
        .collect();
    Ok(if s.is_empty() { None } else { Some(s) })
}

/// Every listed row has mean at most `(1−δ)α`.
pub fn low_degree_set_is_valid(table: &BitTable, rows: &[usize], delta: f64) -> Result<bool> {
    if rows.is_empty() || rows.iter().any(|&x| x >= table.rows) {
        return Ok(false);
    }
    let threshold = (BigRational::one() - rational(delta)?) * table.density();
    Ok(rows
        .iter()
        .all(|&x| ratio(table.row_count(x) as u128, table.cols as u128) <= threshold))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Rectangle(Rectangle),
    LowDegree(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyWitness {
    /// Index into the graph's edge list.
    pub edge: usize,
    pub kind: WitnessKind,
    pub delta: f64,
}

impl DichotomyWitness {
    pub fn verify(&self, inst: &CountingInstance) -> Result<bool> {
        let Some(table) = inst.tables.get(self.edge) else {
            return Ok(false);
        };
        match &self.kind {
            WitnessKind::Rectangle(r) => rectangle_is_dense(table, r, self.delta),
            WitnessKind::LowDegree(s) => low_degree_set_is_valid(table, s, self.delta),
        }
    }
}

/// For a deviating instance, the first edge carrying a dense rectangle or a
/// low-degree set at `δ(ε, m)`, re-verified; `None` when no edge does.
pub fn counting_dichotomy(
    inst: &CountingInstance,
    eps: f64,
    config: &GridNormConfig,
) -> Result<Option<DichotomyWitness>> {
    let report = deviation_test(inst, eps, config)?;
    if !report.fired {
        bail!(
            PreconditionViolation,
            "deviation test did not fire at ε = {eps}"
        );
    }
    let delta = report.delta;
    for (edge, table) in inst.tables.iter().enumerate() {
        if let Some(r) = find_dense_rectangle(table, delta)? {
            let w = DichotomyWitness {
                edge,
                kind: WitnessKind::Rectangle(r),
                delta,
            };
            if w.verify(inst)? {
                return Ok(Some(w));
            }
        }
        if let Some(s) = find_low_degree_set(table, delta)? {
            let w = DichotomyWitness {
                edge,
                kind: WitnessKind::LowDegree(s),
                delta,
            };
            if w.verify(inst)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Conclusions of the technical counting lemma, checked numerically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TechnicalClaim {
    /// `‖f‖_{U(r,p)} ≥ (1+δ̃)α`.
    GridNorm { r: u32, p: u32 },
    /// `‖E_y f(·,y) − α‖_{L^p} ≥ δ̃α`.
    RowDeviation { p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClaimCheck {
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Evaluates a claim with `α` the mean of `f`.
pub fn verify_technical_witness(
    f: &Matrix,
    claim: TechnicalClaim,
    delta_tilde: f64,
    config: &GridNormConfig,
) -> Result<ClaimCheck> {
    let alpha = f.mean();
    let (lhs, rhs) = match claim {
        TechnicalClaim::GridNorm { r, p } => {
            (grid_norm(f, r, p, config)?, (1.0 + delta_tilde) * alpha)
        }
        TechnicalClaim::RowDeviation { p } => {
            if !(p >= 1.0) {
                bail!(InvalidArgument, "L^p norm needs p >= 1, got {p}");
            }
            let s: f64 = (0..f.rows)
                .map(|x| {
                    let row = (0..f.cols).map(|y| f.get(x, y)).sum::<f64>() / f.cols as f64;
                    libm::pow((row - alpha).abs(), p)
                })
                .sum::<f64>()
                / f.rows as f64;
            (libm::pow(s, 1.0 / p), delta_tilde * alpha)
        }
    };
    Ok(ClaimCheck {
        pass: lhs >= rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GridNormConfig {
        GridNormConfig::default()
    }

    fn diagonal(n: usize) -> BitTable {
        BitTable::from_fn(n, n, |x, y| x == y).unwrap()
    }

    fn triangle(tables: [BitTable; 3]) -> CountingInstance {
        CountingInstance::new(OrientedGraph::complete(3), vec![2, 2, 2], tables.to_vec()).unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(OrientedGraph::new(2, vec![(0, 1)]).unwrap().kappa(), 0);
        assert_eq!(OrientedGraph::path(3).kappa(), 2);
        assert_eq!(OrientedGraph::complete(3).kappa(), 6);
        assert!(OrientedGraph::new(3, vec![(1, 0)]).is_err());
        assert!(OrientedGraph::new(3, vec![(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn grid_norm_examples() {
        let c = Matrix::new(3, 2, vec![0.7; 6]).unwrap();
        assert!((grid_norm(&c, 2, 3, &cfg()).unwrap() - 0.7).abs() < 1e-12);
        let f = Matrix::new(2, 3, vec![1.0, -2.0, 0.5, 0.0, 3.0, -1.0]).unwrap();
        assert_eq!(grid_norm(&f, 1, 1, &cfg()).unwrap(), f.mean().abs());
        let e = Matrix::new(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((grid_norm(&e, 2, 2, &cfg()).unwrap() - libm::sqrt(0.5)).abs() < 1e-12);
        let tight = GridNormConfig {
            cost_cap: 10,
            ..cfg()
        };
        assert!(grid_norm(&e, 2, 4, &tight).is_err());
        assert!(grid_norm(&e, 0, 1, &cfg()).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let inst = triangle([diagonal(2), diagonal(2), diagonal(2)]);
        assert_eq!(homomorphism_count(&inst, &cfg()).unwrap().count, 2);
        assert_eq!(homomorphism_density(&inst, &cfg()).unwrap(), 0.25);
        let ones = BitTable::from_fn(2, 2, |_, _| true).unwrap();
        let full = triangle([ones.clone(), ones.clone(), ones]);
        assert_eq!(homomorphism_density(&full, &cfg()).unwrap(), 1.0);
        let t = BitTable::from_fn(3, 4, |x, y| (x + y) % 3 == 0).unwrap();
        let edge =
            CountingInstance::new(OrientedGraph::path(2), vec![3, 4], vec![t.clone()]).unwrap();
        assert_eq!(
            homomorphism_count(&edge, &cfg()).unwrap().ratio(),
            t.density()
        );
        let (est, se) = homomorphism_density_sampled(&inst, 20_000, 3).unwrap();
        assert!((est - 0.25).abs() < 5.0 * se + 1e-3);
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(delta(0.5, 1), 1.0 / 64000.0);
        let inst = triangle([diagonal(2), diagonal(2), diagonal(2)]);
        let r = deviation_test(&inst, 1.0, &cfg()).unwrap();
        assert!(r.fired);
        assert_eq!((r.lhs, r.rhs), (0.125, 0.125));
        let rect = BitTable::from_fn(3, 4, |x, y| x < 2 && y % 2 == 1).unwrap();
        let edge = CountingInstance::new(OrientedGraph::path(2), vec![3, 4], vec![rect]).unwrap();
        assert!(!deviation_test(&edge, 0.01, &cfg()).unwrap().fired);
        assert!(deviation_test(&edge, 0.0, &cfg()).is_err());
    }

    #[test]
    fn delta_tilde_examples() {
        let k3 = OrientedGraph::complete(3);
        assert!((delta_tilde(1.0, &k3).unwrap() - 1.0 / 36000.0).abs() < 1e-20);
        assert!((delta_tilde(0.5, &OrientedGraph::path(3)).unwrap() - 1.0 / 16000.0).abs() < 1e-20);
        assert!(delta_tilde(1e-9, &k3).unwrap() < 1e-20);
        assert!(delta_tilde(1.0, &OrientedGraph::path(2)).is_err());
    }

    #[test]
    fn rectangle_examples() {
        let ones = BitTable::from_fn(3, 3, |_, _| true).unwrap();
        assert_eq!(find_dense_rectangle(&ones, 0.1).unwrap(), None);
        let r = find_dense_rectangle(&diagonal(2), 0.5).unwrap().unwrap();
        assert_eq!(
            (r.rows.clone(), r.cols.clone(), r.ones),
            (vec![0], vec![0], 1)
        );
        assert!(!r.heuristic);
        let single = BitTable::from_fn(4, 4, |x, y| x == 0 && y == 0).unwrap();
        let r = find_dense_rectangle(&single, 1.0).unwrap().unwrap();
        assert_eq!((r.rows, r.cols), (vec![0], vec![0]));
    }

    #[test]
    fn peeling_finds_planted_block() {
        let t = BitTable::from_fn(20, 16, |x, y| (x < 6 && y < 5) || (x * 7 + y * 3) % 11 == 0)
            .unwrap();
        let r = find_dense_rectangle(&t, 0.5).unwrap().unwrap();
        assert!(r.heuristic);
        assert!(rectangle_is_dense(&t, &r, 0.5).unwrap());
    }

    #[test]
    fn low_degree_examples() {
        let regular = BitTable::from_fn(4, 4, |x, y| (x + y) % 2 == 0).unwrap();
        assert_eq!(find_low_degree_set(&regular, 0.1).unwrap(), None);
        let t = BitTable::from_bools(2, 2, &[true, true, false, false]).unwrap();
        assert_eq!(find_low_degree_set(&t, 0.5).unwrap(), Some(vec![1]));
        let padded = BitTable::from_fn(5, 3, |x, y| x < 3 && (x + y) % 2 == 0).unwrap();
        let s = find_low_degree_set(&padded, 0.9).unwrap().unwrap();
        assert!(s.contains(&3) && s.contains(&4));
    }

    #[test]
    fn dichotomy_examples() {
        let inst = triangle([diagonal(2), diagonal(2), diagonal(2)]);
        let w = counting_dichotomy(&inst, 1.0, &cfg()).unwrap().unwrap();
        assert!(w.verify(&inst).unwrap());
        match &w.kind {
            WitnessKind::Rectangle(r) => {
                assert_eq!((r.rows.clone(), r.cols.clone()), (vec![0], vec![0]))
            }
            other => panic!("expected a rectangle, got {other:?}"),
        }

        let skew = BitTable::from_bools(2, 2, &[true, true, false, false]).unwrap();
        let edge = CountingInstance::new(OrientedGraph::path(2), vec![2, 2], vec![skew]).unwrap();
        // a single edge never deviates, so the dichotomy refuses it
        assert!(counting_dichotomy(&edge, 0.5, &cfg()).is_err());
        let w = DichotomyWitness {
            edge: 0,
            kind: WitnessKind::LowDegree(vec![1]),
            delta: 0.5,
        };
        assert!(w.verify(&edge).unwrap());
        let bad = DichotomyWitness {
            edge: 0,
            kind: WitnessKind::LowDegree(vec![0]),
            delta: 0.5,
        };
        assert!(!bad.verify(&edge).unwrap());
    }

    #[test]
    fn technical_witness_examples() {
        let ones = Matrix::new(2, 2, vec![1.0; 4]).unwrap();
        let c =
            verify_technical_witness(&ones, TechnicalClaim::GridNorm { r: 2, p: 3 }, 0.01, &cfg())
                .unwrap();
        assert!(!c.pass);
        let d = diagonal(2).to_matrix();
        let c = verify_technical_witness(&d, TechnicalClaim::GridNorm { r: 2, p: 2 }, 0.18, &cfg())
            .unwrap();
        assert!((c.lhs - libm::pow(2.0 / 16.0, 0.25)).abs() < 1e-12);
        assert!(c.pass);
        assert!(
            !verify_technical_witness(&d, TechnicalClaim::GridNorm { r: 2, p: 2 }, 0.19, &cfg())
                .unwrap()
                .pass
        );
        let c = verify_technical_witness(&d, TechnicalClaim::RowDeviation { p: 2.0 }, 1e-6, &cfg())
            .unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!(!c.pass);
    }
}
