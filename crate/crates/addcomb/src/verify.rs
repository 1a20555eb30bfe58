//! The acceptance criteria, each checked against an independent oracle.

use std::time::{Duration, Instant};

use addcomb_core::bohr::{find_regular_dilate, BohrSet};
use addcomb_core::configs::{
    behrend_set, check_interval_embedding, count_k_configurations, random_set, CliqueConfig,
};
use addcomb_core::exact::rational;
use addcomb_core::gridnorm::{
    counting_dichotomy, deviation_test, grid_norm, BitTable, CountingInstance, GridNormConfig,
    Matrix, OrientedGraph, WitnessKind,
};
use addcomb_core::harmonic::{convolve, diff_convolve, fourier, inner, DenseFunction};
use addcomb_core::increment::{fourier_sum_bound_check, sift, SiftInstance, SiftResult};
use addcomb_core::sumfree::{
    exact_m, greedy_sumfree, is_sumfree_wrt, ruzsa_embed, EmbedConfig, EmbedOutcome, IntegerSet,
    SumfreeConfig,
};
use addcomb_core::FiniteAbelianGroup;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::failure::{CliResult, Failure};
use crate::oracle;
use crate::table::{join, Table};

/// What a criterion reports: its verdict, a one-line summary and per-instance rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    pub table: Table,
}

pub struct Criterion {
    pub id: u8,
    pub scope: &'static str,
    pub title: &'static str,
    pub budget: Duration,
    pub run: fn() -> Outcome,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u8,
    pub scope: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<10} {} ({:.2}s of {}s) {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.scope,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub const SCOPES: &[&str] = &[
    "harmonic",
    "bohr",
    "configs",
    "gridnorm",
    "increment",
    "sumfree",
    "cli",
];

pub fn criteria() -> Vec<Criterion> {
    let c = |id, scope, title, secs, run| Criterion {
        id,
        scope,
        title,
        budget: Duration::from_secs(secs),
        run,
    };
    vec![
        c(
            1,
            "harmonic",
            "adjoint, convolution theorem, Parseval",
            10,
            harmonic_identities,
        ),
        c(2, "bohr", "Bohr size lower bound", 30, bohr_size_bound),
        c(
            3,
            "bohr",
            "regular dilate in [1/2, 1]",
            120,
            regular_dilates,
        ),
        c(
            4,
            "configs",
            "configuration count vs enumeration",
            120,
            configuration_oracle,
        ),
        c(
            5,
            "configs",
            "translation and dilation invariance",
            60,
            configuration_invariance,
        ),
        c(
            6,
            "configs",
            "interval embedding agreement",
            60,
            interval_embedding,
        ),
        c(
            7,
            "gridnorm",
            "grid norm vs full product",
            60,
            grid_norm_oracle,
        ),
        c(
            8,
            "gridnorm",
            "counting dichotomy witnesses",
            120,
            dichotomy_consistency,
        ),
        c(9, "increment", "sifting acceptance", 300, sifting),
        c(10, "increment", "Fourier-sum bound", 120, fourier_sum_bound),
        c(
            11,
            "sumfree",
            "sum-free exactness and greedy",
            300,
            sumfree_exactness,
        ),
        c(12, "sumfree", "Freiman embedding", 300, freiman_embedding),
        c(13, "configs", "Behrend sets", 60, behrend),
        c(14, "cli", "determinism of reports", 600, determinism),
    ]
}

/// Runs every criterion whose scope is listed (`all` selects everything).
pub fn run_scope(scopes: &[String]) -> CliResult<Vec<Verdict>> {
    let all = scopes.is_empty() || scopes.iter().any(|s| s == "all");
    if let Some(bad) = scopes
        .iter()
        .find(|s| *s != "all" && !SCOPES.contains(&s.as_str()))
    {
        return Err(Failure::config(format!(
            "unknown scope {bad:?}; expected one of all, {}",
            SCOPES.join(", ")
        )));
    }
    Ok(criteria()
        .into_iter()
        .filter(|c| all || scopes.iter().any(|s| s == c.scope))
        .map(|c| run_one(&c))
        .collect())
}

pub fn run_one(c: &Criterion) -> Verdict {
    let start = Instant::now();
    let out = (c.run)();
    let elapsed = start.elapsed();
    let in_time = elapsed <= c.budget;
    let detail = if in_time {
        out.detail
    } else {
        format!("{}; over time budget", out.detail)
    };
    Verdict {
        id: c.id,
        scope: c.scope,
        title: c.title,
        pass: out.pass && in_time,
        detail,
        elapsed,
        budget: c.budget,
    }
}

/// Summary table without timings, so identical runs give identical bytes.
pub fn summary_table(verdicts: &[Verdict]) -> Table {
    let mut t = Table::new(&["criterion", "scope", "title", "pass", "detail"]);
    for v in verdicts {
        t.push(row![v.id, v.scope, v.title, v.pass, v.detail]);
    }
    t
}

fn outcome(failures: usize, checked: usize, what: &str, table: Table) -> Outcome {
    Outcome {
        pass: failures == 0 && checked > 0,
        detail: format!("{checked} {what}, {failures} failures"),
        table,
    }
}

fn random_function(group: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..group.order())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn harmonic_identities() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut table = Table::new(&[
        "moduli",
        "trial",
        "adjoint",
        "convolution",
        "parseval",
        "dft",
    ]);
    let (mut failures, mut checked) = (0, 0);
    for moduli in [vec![101u64], vec![4, 9], vec![2, 3, 5]] {
        let g = FiniteAbelianGroup::new(&moduli).expect("valid moduli");
        let mut rng = ChaCha8Rng::seed_from_u64(moduli.iter().product());
        for trial in 0..100 {
            let (fv, gv, hv) = (
                random_function(&g, &mut rng),
                random_function(&g, &mut rng),
                random_function(&g, &mut rng),
            );
            let f = DenseFunction::new(&g, fv.clone()).expect("sized");
            let gg = DenseFunction::new(&g, gv.clone()).expect("sized");
            let h = DenseFunction::new(&g, hv.clone()).expect("sized");
            let fg = convolve(&f, &gg).expect("same group");
            let hg = diff_convolve(&h, &gg).expect("same group");
            let adjoint = (inner(&fg, &h, None).expect("same group")
                - inner(&f, &hg, None).expect("same group"))
            .norm();
            // the core against a direct evaluation, on both sides of the identity
            let oracle_adj = (oracle::inner(&oracle::convolve(&moduli, &fv, &gv), &hv)
                - oracle::inner(&fv, &oracle::diff_convolve(&moduli, &hv, &gv)))
            .norm();
            let fg_hat = oracle::dft(&moduli, fg.values());
            let (f_hat, g_hat) = (oracle::dft(&moduli, &fv), oracle::dft(&moduli, &gv));
            let product: Vec<Complex64> = f_hat.iter().zip(&g_hat).map(|(a, b)| a * b).collect();
            let conv = max_diff(&fg_hat, &product);
            let core_hat = fourier(&f);
            let dft = max_diff(core_hat.values(), &f_hat);
            let energy = fv.iter().map(|v| v.norm_sqr()).sum::<f64>() / fv.len() as f64;
            let parseval = (energy - core_hat.l2_sum_sq()).abs();
            let worst = adjoint.max(oracle_adj).max(conv).max(parseval).max(dft);
            checked += 1;
            if worst.is_nan() || worst > TOL {
                failures += 1;
            }
            table.push(row![
                join(&moduli),
                trial as u32,
                adjoint,
                conv,
                parseval,
                dft
            ]);
        }
    }
    outcome(failures, checked, "triples", table)
}

fn random_characters(g: &FiniteAbelianGroup, d: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..d).map(|_| rng.gen_range(0..g.order())).collect()
}

fn oracle_radii(moduli: &[u64], freqs: &[usize]) -> Vec<f64> {
    (0..oracle::order(moduli))
        .map(|x| {
            freqs
                .iter()
                .map(|&g| oracle::character_distance(moduli, g, x))
                .fold(0.0, f64::max)
        })
        .collect()
}

pub fn bohr_size_bound() -> Outcome {
    let mut table = Table::new(&[
        "n",
        "rank",
        "sample",
        "width",
        "size",
        "oracle_size",
        "bound",
        "pass",
    ]);
    let (mut failures, mut checked) = (0, 0);
    for n in [101u64, 1009] {
        let g = FiniteAbelianGroup::cyclic(n).expect("positive");
        for d in 1..=3usize {
            let mut rng = ChaCha8Rng::seed_from_u64(n * 10 + d as u64);
            for sample in 0..50 {
                let idx = random_characters(&g, d, &mut rng);
                let freqs = idx.iter().map(|&i| g.character_at(i)).collect();
                let radii = oracle_radii(&[n], &idx);
                let base = BohrSet::new(&g, freqs, 2.0).expect("valid");
                for j in 1..=20 {
                    let rho = j as f64 / 10.0;
                    let b = base.dilate(rho / 2.0).expect("valid");
                    let size = b.size();
                    let oracle_size = radii.iter().filter(|&&r| r <= rho).count();
                    // |B| · 8^d ≥ ρ^d · |G| in exact arithmetic
                    let lhs = BigRational::from_integer(
                        BigInt::from(oracle_size) * BigInt::from(8u32).pow(d as u32),
                    );
                    let rhs = rational(rho).expect("finite").pow(d as i32)
                        * BigRational::from_integer(BigInt::from(n));
                    let report = b.size_bound_check().expect("valid");
                    let pass = lhs >= rhs && size == oracle_size && report.pass;
                    checked += 1;
                    if !pass {
                        failures += 1;
                    }
                    table.push(row![
                        n,
                        d,
                        sample as u32,
                        rho,
                        size,
                        oracle_size,
                        report.lower_bound,
                        pass
                    ]);
                }
            }
        }
    }
    outcome(failures, checked, "Bohr sets", table)
}

/// Breakpoint regularity check from scratch, on independently computed radii.
pub fn oracle_is_regular(radii: &[f64], width: f64, rank: usize) -> bool {
    let hd = 100.0 * rank as f64;
    let b = radii.iter().filter(|&&r| r <= width).count() as f64;
    for &r in radii {
        if r > width && (r - width) * hd <= width {
            let c = radii.iter().filter(|&&s| s <= r).count() as f64;
            if c > (1.0 + hd * (r / width - 1.0)) * b {
                return false;
            }
        }
        if r <= width && (width - r) * hd < width {
            let c = radii.iter().filter(|&&s| s < r).count() as f64;
            if c < (1.0 - hd * (1.0 - r / width)) * b {
                return false;
            }
        }
    }
    true
}

pub fn regular_dilates() -> Outcome {
    let mut table = Table::new(&[
        "sample",
        "n",
        "rank",
        "width",
        "dilate",
        "size",
        "core_regular",
        "oracle_regular",
    ]);
    let (mut failures, mut checked) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for sample in 0..100u32 {
        let n = rng.gen_range(3..=5000u64);
        let d = rng.gen_range(1..=4usize);
        let width = rng.gen_range(0.05..2.0);
        let g = FiniteAbelianGroup::cyclic(n).expect("positive");
        let idx = random_characters(&g, d, &mut rng);
        let b = BohrSet::new(&g, idx.iter().map(|&i| g.character_at(i)).collect(), width)
            .expect("valid");
        checked += 1;
        let (dilate, size, core_ok, oracle_ok) = match find_regular_dilate(&b) {
            Ok(delta) => {
                let narrowed = b.dilate(delta).expect("valid");
                let radii = oracle_radii(&[n], &idx);
                (
                    Some(delta),
                    narrowed.size(),
                    narrowed.is_regular().regular,
                    (0.5..=1.0).contains(&delta) && oracle_is_regular(&radii, narrowed.width(), d),
                )
            }
            Err(_) => (None, b.size(), false, false),
        };
        if !(core_ok && oracle_ok) {
            failures += 1;
        }
        table.push(row![sample, n, d, width, dilate, size, core_ok, oracle_ok]);
    }
    outcome(failures, checked, "Bohr sets", table)
}

fn subset_of_mask(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn core_count(g: &FiniteAbelianGroup, set: &[usize], k: usize) -> BigUint {
    count_k_configurations(g, set, k, &CliqueConfig::default())
        .expect("small instance")
        .count
}

pub fn configuration_oracle() -> Outcome {
    let mut table = Table::new(&["moduli", "k", "set", "count", "oracle"]);
    let (mut failures, mut checked) = (0, 0);
    let mut check = |moduli: &[u64], set: &[usize], k: usize, table: &mut Table| {
        let g = FiniteAbelianGroup::new(moduli).expect("valid");
        let count = core_count(&g, set, k);
        let expect = oracle::count_configurations(moduli, set, k);
        checked += 1;
        if count != BigUint::from(expect) {
            failures += 1;
        }
        table.push(row![join(moduli), k, join(set), count.to_string(), expect]);
    };
    for mask in 0..128u64 {
        check(&[7], &subset_of_mask(mask, 7), 3, &mut table);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let set = subset_of_mask(rng.gen_range(0..1u64 << 15), 15);
        for k in [3, 4] {
            check(&[3, 5], &set, k, &mut table);
        }
    }
    outcome(failures, checked, "counts", table)
}

pub fn configuration_invariance() -> Outcome {
    let mut table = Table::new(&["n", "set", "count", "translates_agree", "dilates_agree"]);
    let (mut failures, mut checked) = (0, 0);
    for n in [7u64, 9] {
        let g = FiniteAbelianGroup::cyclic(n).expect("positive");
        let m = [n];
        for mask in 0..1u64 << n {
            let set = subset_of_mask(mask, n as usize);
            let base = core_count(&g, &set, 3);
            let translates = (0..n as usize).all(|t| {
                let moved: Vec<usize> = set.iter().map(|&x| oracle::add(&m, x, t)).collect();
                core_count(&g, &moved, 3) == base
            });
            let dilates = (1..n).filter(|&l| gcd(l, n) == 1).all(|l| {
                let scaled: Vec<usize> = set.iter().map(|&x| oracle::scale(&m, l, x)).collect();
                core_count(&g, &scaled, 3) == base
            });
            checked += 1;
            if !(translates && dilates) {
                failures += 1;
            }
            table.push(row![n, join(&set), base.to_string(), translates, dilates]);
        }
    }
    outcome(failures, checked, "sets", table)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn interval_embedding() -> Outcome {
    const N: u64 = 30;
    let mut table = Table::new(&[
        "sample",
        "k",
        "set",
        "interval_free",
        "group_free",
        "core_agree",
    ]);
    let (mut failures, mut checked) = (0, 0);
    for sample in 0..100u64 {
        let density = 0.1 + 0.4 * (sample % 5) as f64 / 4.0;
        let set: Vec<i64> = random_set(N as usize, density, 600 + sample)
            .expect("valid density")
            .into_iter()
            .map(|x| x as i64 + 1)
            .collect();
        for k in [2usize, 3] {
            let interval_free = !oracle::integer_configuration_exists(&set, k);
            let image: Vec<u64> = set.iter().map(|&a| a as u64).collect();
            let group_free = !oracle::cyclic_configuration_exists(2 * N + 1, &image, k);
            let core =
                check_interval_embedding(N, &set, k, &CliqueConfig::default()).expect("small");
            let core_consistent = core.agree
                && core.in_interval.is_none() == interval_free
                && core.in_group.is_none() == group_free;
            checked += 1;
            if interval_free != group_free || !core_consistent {
                failures += 1;
            }
            table.push(row![
                sample,
                k,
                join(&set),
                interval_free,
                group_free,
                core_consistent
            ]);
        }
    }
    outcome(failures, checked, "sets", table)
}

pub fn grid_norm_oracle() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut table = Table::new(&["sample", "rows", "cols", "mask", "worst_gap", "u11_exact"]);
    let (mut failures, mut checked) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = GridNormConfig::default();
    for sample in 0..500u32 {
        let (rows, cols) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let mask = rng.gen_range(0..1u64 << (rows * cols));
        let t = BitTable::from_mask(rows, cols, mask).expect("fits");
        let dense: Vec<Vec<f64>> = (0..rows)
            .map(|x| {
                (0..cols)
                    .map(|y| if t.get(x, y) { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        let m = Matrix::new(rows, cols, dense.concat()).expect("sized");
        let mut worst = 0.0f64;
        for p in 1..=3u32 {
            for q in 1..=3u32 {
                let fast = grid_norm(&m, p, q, &cfg).expect("small");
                let slow = oracle::grid_norm(&dense, p as usize, q as usize);
                worst = worst.max((fast - slow).abs());
            }
        }
        let u11 = grid_norm(&m, 1, 1, &cfg).expect("small");
        let mean = dense.concat().iter().sum::<f64>() / (rows * cols) as f64;
        let exact = u11 == mean.abs();
        checked += 1;
        if !(worst <= TOL && exact) {
            failures += 1;
        }
        table.push(row![sample, rows, cols, mask, worst, exact]);
    }
    outcome(failures, checked, "tables", table)
}

/// Rechecks a witness by direct counting in exact arithmetic.
fn witness_holds(table: &BitTable, kind: &WitnessKind, delta: f64) -> bool {
    let cells = (table.rows() * table.cols()) as u64;
    let total: u64 = (0..table.rows())
        .map(|x| (0..table.cols()).filter(|&y| table.get(x, y)).count() as u64)
        .sum();
    let alpha = BigRational::new(BigInt::from(total), BigInt::from(cells));
    let one = BigRational::from_integer(BigInt::from(1));
    let d = rational(delta).expect("finite");
    match kind {
        WitnessKind::Rectangle(r) => {
            if r.rows.is_empty() || r.cols.is_empty() {
                return false;
            }
            if r.rows.iter().any(|&x| x >= table.rows())
                || r.cols.iter().any(|&y| y >= table.cols())
            {
                return false;
            }
            let ones = r
                .rows
                .iter()
                .flat_map(|&x| r.cols.iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| table.get(x, y))
                .count();
            let mean = BigRational::new(
                BigInt::from(ones),
                BigInt::from(r.rows.len() * r.cols.len()),
            );
            ones == r.ones && mean >= (one + d) * alpha
        }
        WitnessKind::LowDegree(rows) => {
            !rows.is_empty()
                && rows.iter().all(|&x| {
                    x < table.rows() && {
                        let deg = (0..table.cols()).filter(|&y| table.get(x, y)).count();
                        BigRational::new(BigInt::from(deg), BigInt::from(table.cols()))
                            <= (&one - &d) * &alpha
                    }
                })
        }
    }
}

pub fn dichotomy_consistency() -> Outcome {
    let mut table = Table::new(&["masks", "count", "fired", "edge", "witness", "verified"]);
    let (mut failures, mut fired_total) = (0, 0);
    let cfg = GridNormConfig::default();
    let graph = OrientedGraph::complete(3);
    for code in 0..4096u64 {
        let masks = [code & 15, code >> 4 & 15, code >> 8 & 15];
        let tables: Vec<BitTable> = masks
            .iter()
            .map(|&m| BitTable::from_mask(2, 2, m).expect("fits"))
            .collect();
        // direct count over the 8 tuples
        let brute = (0..8usize)
            .filter(|t| {
                let x = [t & 1, t >> 1 & 1, t >> 2 & 1];
                graph
                    .edges()
                    .iter()
                    .zip(&tables)
                    .all(|(&(i, j), tb)| tb.get(x[i], x[j]))
            })
            .count() as u128;
        let inst = CountingInstance::new(graph.clone(), vec![2, 2, 2], tables.clone())
            .expect("consistent");
        let report = deviation_test(&inst, 0.5, &cfg).expect("small");
        if report.count.count != brute {
            failures += 1;
        }
        if !report.fired {
            continue;
        }
        fired_total += 1;
        let (edge, label, ok) = match counting_dichotomy(&inst, 0.5, &cfg).expect("fired") {
            Some(w) => {
                let ok = w.verify(&inst).expect("valid")
                    && witness_holds(&tables[w.edge], &w.kind, w.delta);
                let label = match &w.kind {
                    WitnessKind::Rectangle(r) => {
                        format!("rect {}x{}", join(&r.rows), join(&r.cols))
                    }
                    WitnessKind::LowDegree(s) => format!("rows {}", join(s)),
                };
                (Some(w.edge), label, ok)
            }
            None => (None, "none".to_string(), false),
        };
        if !ok {
            failures += 1;
        }
        table.push(row![join(masks), brute, true, edge, label, ok]);
    }
    outcome(failures, fired_total, "fired instances", table)
}

pub fn sift_instance(seed: u64) -> SiftInstance {
    let g = FiniteAbelianGroup::cyclic(63).expect("positive");
    let full: Vec<usize> = (0..63).collect();
    let a1 = random_set(63, 0.5, 2 * seed + 1000).expect("valid");
    let a2 = random_set(63, 0.5, 2 * seed + 1001).expect("valid");
    SiftInstance::new(&g, &a1, &a2, &full, &full, 6, 0.25, 0.5, seed)
        .expect("meets the precondition")
}

/// Recomputes both sifting conclusions from the accepted shifts alone.
fn sift_postconditions(
    a1: &[usize],
    a2: &[usize],
    shifts: &[usize],
    p: u32,
    eps: f64,
    delta: f64,
) -> bool {
    let n = 63usize;
    let m = [63u64];
    let sifted = |a: &[usize]| -> Vec<usize> {
        (0..n)
            .filter(|&x| shifts.iter().all(|&t| a.contains(&oracle::add(&m, x, t))))
            .collect()
    };
    let (s1, s2) = (sifted(a1), sifted(a2));
    if s1.is_empty() || s2.is_empty() {
        return false;
    }
    // μ_{A1}∘μ_{A2} and its L^p norm under μ = uniform ∘ uniform
    let conv: Vec<f64> = (0..n)
        .map(|x| {
            let r = a1
                .iter()
                .filter(|&&a| a2.contains(&oracle::sub(&m, a, x)))
                .count();
            n as f64 * r as f64 / (a1.len() * a2.len()) as f64
        })
        .collect();
    let norm = (conv.iter().map(|v| v.powi(p as i32)).sum::<f64>() / n as f64).powf(1.0 / p as f64);
    let level: Vec<bool> = conv.iter().map(|&v| v >= (1.0 - eps) * norm).collect();
    let floors_ok = [(&s1, a1), (&s2, a2)].iter().all(|(s, a)| {
        let alpha = a.len() as f64 / n as f64;
        let floor = 0.25 * (alpha * norm).powi(p as i32);
        s.len() as f64 / n as f64 >= floor * (1.0 - 1e-12)
    });
    let hits = s1
        .iter()
        .flat_map(|&x| s2.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| level[oracle::sub(&m, x, y)])
        .count();
    let mass = hits as f64 / (s1.len() * s2.len()) as f64;
    floors_ok && mass >= 1.0 - delta - 1e-10
}

pub fn sifting() -> Outcome {
    let mut table = Table::new(&[
        "seed", "accepted", "trial", "alpha1", "alpha2", "s_mass", "verified",
    ]);
    let (mut failures, mut checked) = (0, 0);
    for seed in 0..20u64 {
        let inst = sift_instance(seed);
        let a1 = random_set(63, 0.5, 2 * seed + 1000).expect("valid");
        let a2 = random_set(63, 0.5, 2 * seed + 1001).expect("valid");
        checked += 1;
        match sift(&inst, 100_000).expect("valid instance") {
            SiftResult::Accepted(o) => {
                let ok = addcomb_core::increment::verify_sift_outcome(&inst, &o).expect("valid")
                    && sift_postconditions(&a1, &a2, &o.shifts, 6, 0.25, 0.5);
                if !ok {
                    failures += 1;
                }
                table.push(row![seed, true, o.trials, o.alpha1, o.alpha2, o.s_mass, ok]);
            }
            SiftResult::Exhausted {
                trials, event_rate, ..
            } => {
                failures += 1;
                table.push(row![
                    seed,
                    false,
                    trials,
                    event_rate,
                    None::<f64>,
                    None::<f64>,
                    false
                ]);
            }
        }
    }
    outcome(failures, checked, "instances", table)
}

fn nonempty_random_subset(from: &[usize], density: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut s: Vec<usize> = from
        .iter()
        .copied()
        .filter(|_| rng.gen::<f64>() < density)
        .collect();
    if s.is_empty() {
        s.push(from[rng.gen_range(0..from.len())]);
    }
    s
}

pub fn fourier_sum_bound() -> Outcome {
    let mut table = Table::new(&["sample", "moduli", "lhs", "oracle_lhs", "rhs", "pass"]);
    let (mut failures, mut checked) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for sample in 0..100u32 {
        let moduli: Vec<u64> = match sample % 3 {
            0 => vec![rng.gen_range(2..=1000)],
            1 => vec![rng.gen_range(2..=31), rng.gen_range(2..=31)],
            _ => vec![
                rng.gen_range(2..=10),
                rng.gen_range(2..=10),
                rng.gen_range(2..=10),
            ],
        };
        let g = FiniteAbelianGroup::new(&moduli).expect("valid");
        let n = g.order();
        let all: Vec<usize> = (0..n).collect();
        let b = nonempty_random_subset(&all, rng.gen_range(0.1..1.0), &mut rng);
        let a1 = nonempty_random_subset(&b, 0.5, &mut rng);
        let a2 = nonempty_random_subset(&b, 0.5, &mut rng);
        let a1p = nonempty_random_subset(&all, 0.3, &mut rng);
        let a2p = nonempty_random_subset(&all, 0.3, &mut rng);
        let report = fourier_sum_bound_check(&g, &a1p, &a2p, &a1, &a2, &b).expect("valid");
        let mu = |s: &[usize]| oracle::normalized_indicator(n, s);
        let inner = oracle::diff_convolve(&moduli, &mu(&a1), &mu(&a2));
        let outer = oracle::diff_convolve(&moduli, &mu(&a1p), &mu(&a2p));
        let f = oracle::diff_convolve(&moduli, &outer, &inner);
        let lhs: f64 = oracle::dft(&moduli, &f).iter().map(|v| v.norm()).sum();
        let alpha = |s: &[usize]| s.len() as f64 / b.len() as f64;
        let rhs = n as f64 / b.len() as f64 / (alpha(&a1) * alpha(&a2)).sqrt();
        let pass = report.pass
            && lhs <= rhs * (1.0 + 1e-9)
            && (lhs - report.lhs).abs() <= 1e-9 * rhs
            && (rhs - report.rhs).abs() <= 1e-9 * rhs;
        checked += 1;
        if !pass {
            failures += 1;
        }
        table.push(row![sample, join(&moduli), report.lhs, lhs, rhs, pass]);
    }
    outcome(failures, checked, "instances", table)
}

fn random_integer_set(rng: &mut ChaCha8Rng, size: usize, universe: usize) -> IntegerSet {
    sample(rng, universe, size)
        .into_iter()
        .map(|v| v as i64 + 1)
        .collect()
}

pub fn sumfree_exactness() -> Outcome {
    let mut table = Table::new(&["case", "set_size", "value", "oracle", "pass"]);
    let (mut failures, mut checked) = (0, 0);
    let cfg = SumfreeConfig::default();
    let mut record =
        |case: &str, size: usize, value: usize, expect: usize, pass: bool, table: &mut Table| {
            checked += 1;
            if !pass {
                failures += 1;
            }
            table.push(row![case, size, value, expect, pass]);
        };
    for mask in 0..1u64 << 10 {
        let a: Vec<i64> = (0..10)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        let set = IntegerSet::new(a.clone());
        let (m, w) = exact_m(&set, &cfg).expect("small");
        let expect = oracle::max_sumfree_subset(&a);
        let ok = m == expect && w.len() == m && w.is_subset_of(&set) && is_sumfree_wrt(&w, &set);
        record("subset of [10]", a.len(), m, expect, ok, &mut table);
    }
    for n in 1..=12i64 {
        let a: Vec<i64> = (1..=n).collect();
        let (m, _) = exact_m(&IntegerSet::new(a.clone()), &cfg).expect("small");
        let expect = oracle::max_sumfree_subset(&a);
        record("interval", n as usize, m, expect, m == expect, &mut table);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(8..=1024usize);
        let a = random_integer_set(&mut rng, n, 4 * n);
        let b = greedy_sumfree(&a);
        let log = n.ilog2() as usize;
        let host: std::collections::BTreeSet<i64> = a.iter().collect();
        let free = (0..b.len()).all(|i| (i + 1..b.len()).all(|j| !host.contains(&(b[i] + b[j]))));
        let inside = b.iter().all(|x| host.contains(x));
        record(
            "greedy",
            n,
            b.len(),
            log,
            free && inside && b.len() >= log,
            &mut table,
        );
    }
    outcome(failures, checked, "checks", table)
}

pub fn freiman_embedding() -> Outcome {
    let mut table = Table::new(&["sample", "set", "modulus", "subset", "trial", "verified"]);
    let (mut failures, mut checked) = (0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for sample in 0..50u64 {
        let size = rng.gen_range(1..=10usize);
        let a = random_integer_set(&mut rng, size, 200);
        checked += 1;
        match ruzsa_embed(&a, 10_000, sample, &EmbedConfig::default()).expect("small") {
            EmbedOutcome::Embedded(r) => {
                let sub = r.subset.as_slice();
                let ok = r.modulus % 2 == 1
                    && r.modulus as usize > 4 * oracle::double_difference_size(a.as_slice())
                    && 2 * sub.len() >= a.len()
                    && r.subset.is_subset_of(&a)
                    && oracle::is_freiman_2_isomorphism(sub, &r.images, r.modulus);
                if !ok {
                    failures += 1;
                }
                table.push(row![
                    sample,
                    join(a.iter()),
                    r.modulus,
                    join(sub),
                    r.trial,
                    ok
                ]);
            }
            EmbedOutcome::Exhausted { trials, best_size } => {
                failures += 1;
                table.push(row![
                    sample,
                    join(a.iter()),
                    None::<u64>,
                    best_size,
                    trials,
                    false
                ]);
            }
        }
    }
    outcome(failures, checked, "sets", table)
}

pub fn behrend() -> Outcome {
    let mut table = Table::new(&["n", "size", "in_range", "progression_free"]);
    let (mut failures, mut checked) = (0, 0);
    let mut previous = 0;
    for n in [100u64, 1000, 10_000] {
        let set = behrend_set(n).expect("valid");
        let in_range = set.iter().all(|&x| x <= n);
        let free = !oracle::has_three_term_progression(&set);
        checked += 1;
        if !(in_range && free && set.len() >= previous) {
            failures += 1;
        }
        previous = set.len();
        table.push(row![n, set.len(), in_range, free]);
    }
    outcome(failures, checked, "sizes", table)
}

/// Runs every other criterion twice and compares their CSV bytes.
pub fn determinism() -> Outcome {
    let mut table = Table::new(&["criterion", "bytes", "identical"]);
    let (mut failures, mut checked) = (0, 0);
    for c in criteria().into_iter().filter(|c| c.scope != "cli") {
        let (a, b) = ((c.run)().table.to_csv(), (c.run)().table.to_csv());
        let same = a == b;
        checked += 1;
        if !same {
            failures += 1;
        }
        table.push(row![c.id, a.len(), same]);
    }
    outcome(failures, checked, "repeated reports", table)
}
