//! Sets of integers that are sum-free with respect to a host set, exact and
//! greedy extraction, and Freiman 2-isomorphic embeddings into `ℤ/N`.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};

/// A finite set of integers, kept sorted and free of repeats.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    elems: Vec<i64>,
}

impl IntegerSet {
    pub fn new(mut elems: Vec<i64>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        IntegerSet { elems }
    }

    /// `{1, …, n}`.
    pub fn interval(n: i64) -> Self {
        IntegerSet {
            elems: (1..=n).collect(),
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    /// `A + B`.
    pub fn sumset(&self, other: &IntegerSet) -> IntegerSet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &a in &self.elems {
            out.extend(other.elems.iter().map(|&b| a + b));
        }
        IntegerSet::new(out)
    }

    /// `A − B`.
    pub fn difference_set(&self, other: &IntegerSet) -> IntegerSet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &a in &self.elems {
            out.extend(other.elems.iter().map(|&b| a - b));
        }
        IntegerSet::new(out)
    }

    /// `k · A = {ka : a ∈ A}`.
    pub fn dilate(&self, k: i64) -> IntegerSet {
        IntegerSet::new(self.elems.iter().map(|&a| k * a).collect())
    }
}

impl FromIterator<i64> for IntegerSet {
    fn from_iter<I: IntoIterator<Item = i64>>(it: I) -> Self {
        IntegerSet::new(it.into_iter().collect())
    }
}

/// `b₁ + b₂ ∉ A` for all distinct `b₁, b₂ ∈ B`.
pub fn is_sumfree_wrt(b: &IntegerSet, a: &IntegerSet) -> bool {
    let e = b.as_slice();
    (0..e.len()).all(|i| (i + 1..e.len()).all(|j| !a.contains(e[i] + e[j])))
}

/// Limits for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumfreeConfig {
    /// Largest set handed to branch and bound.
    pub exact_cap: usize,
    pub node_budget: u64,
    /// Largest number of sets enumerated by [`min_m_over_universe`].
    pub enumeration_cap: u128,
}

impl Default for SumfreeConfig {
    fn default() -> Self {
        SumfreeConfig {
            exact_cap: 40,
            node_budget: 200_000_000,
            enumeration_cap: 2_000_000,
        }
    }
}

/// Hard ceiling from the 128-bit masks.
const MASK_BITS: usize = 128;

/// `x ~ y` for distinct `x, y ∈ X` when `x + y ∈ host`.
fn conflict_masks(x: &IntegerSet, host: &IntegerSet) -> Vec<u128> {
    let e = x.as_slice();
    let mut adj = vec![0u128; e.len()];
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if host.contains(e[i] + e[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

struct IndependentSearch<'a> {
    adj: &'a [u128],
    best: u128,
    best_size: u32,
    target: Option<u32>,
    nodes: u64,
    budget: u64,
}

impl IndependentSearch<'_> {
    fn done(&self) -> bool {
        self.target.is_some_and(|t| self.best_size >= t)
    }

    fn run(&mut self, chosen: u128, cand: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            bail!(
                ResourceLimit,
                "independent-set search exceeded its budget of {} nodes",
                self.budget
            );
        }
        let size = chosen.count_ones();
        if cand == 0 {
            if size > self.best_size {
                self.best = chosen;
                self.best_size = size;
            }
            return Ok(());
        }
        if self.done() || size + cand.count_ones() <= self.best_size {
            return Ok(());
        }
        let degree = |v: usize| (self.adj[v] & cand).count_ones();
        let verts = bits(cand);
        let low = verts
            .iter()
            .copied()
            .min_by_key(|&v| degree(v))
            .expect("non-empty");
        if degree(low) <= 1 {
            // some maximum independent set contains a vertex of degree at most one
            return self.run(chosen | 1 << low, cand & !(1 << low) & !self.adj[low]);
        }
        let high = verts
            .iter()
            .copied()
            .max_by_key(|&v| (degree(v), usize::MAX - v))
            .expect("non-empty");
        self.run(chosen | 1 << high, cand & !(1 << high) & !self.adj[high])?;
        self.run(chosen, cand & !(1 << high))
    }
}

fn bits(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn largest_independent(
    x: &IntegerSet,
    host: &IntegerSet,
    target: Option<u32>,
    config: &SumfreeConfig,
) -> Result<IntegerSet> {
    let cap = config.exact_cap.min(MASK_BITS);
    if x.len() > cap {
        bail!(
            ResourceLimit,
            "exact search handles at most {cap} elements, got {}",
            x.len()
        );
    }
    let adj = conflict_masks(x, host);
    let mut search = IndependentSearch {
        adj: &adj,
        best: 0,
        best_size: 0,
        target,
        nodes: 0,
        budget: config.node_budget,
    };
    let all = if x.is_empty() {
        0
    } else {
        u128::MAX >> (MASK_BITS - x.len())
    };
    search.run(0, all)?;
    Ok(bits(search.best)
        .into_iter()
        .map(|i| x.as_slice()[i])
        .collect())
}

/// `M(A)`: the largest `B ⊆ A` sum-free with respect to `A`, with a witness.
pub fn exact_m(a: &IntegerSet, config: &SumfreeConfig) -> Result<(usize, IntegerSet)> {
    let b = largest_independent(a, a, None, config)?;
    Ok((b.len(), b))
}

/// Repeatedly keeps the largest survivor `x` and discards every `y` with `x + y ∈ A`.
/// Elements are returned in the order chosen.
pub fn greedy_sumfree(a: &IntegerSet) -> Vec<i64> {
    let mut pool: Vec<i64> = a.as_slice().to_vec();
    let mut out = Vec::new();
    while let Some(x) = pool.pop() {
        out.push(x);
        pool.retain(|&y| !a.contains(x + y));
    }
    out
}

/// A `k`-element `S ⊆ X` sum-free with respect to `Y`, if one exists.
pub fn pipeline_extract(
    x: &IntegerSet,
    y: &IntegerSet,
    k: usize,
    config: &SumfreeConfig,
) -> Result<Option<IntegerSet>> {
    if !x.is_subset_of(y) {
        bail!(InvalidArgument, "X must be contained in Y");
    }
    let target = u32::try_from(k).unwrap_or(u32::MAX);
    let best = largest_independent(x, y, Some(target), config)?;
    if best.len() < k {
        return Ok(None);
    }
    Ok(Some(best.iter().take(k).collect()))
}

/// Smallest `M(A)` over `A ⊆ {1, …, m}` with `|A| = n`: an upper bound for the
/// minimum over all integer sets of size `n`.
pub fn min_m_over_universe(
    n: usize,
    m: usize,
    config: &SumfreeConfig,
) -> Result<(usize, IntegerSet)> {
    if n == 0 || n > m {
        bail!(InvalidArgument, "need 1 <= n <= m, got n = {n}, m = {m}");
    }
    let count = binomial(m as u128, n as u128);
    if count > config.enumeration_cap {
        bail!(
            ResourceLimit,
            "C({m}, {n}) = {count} sets exceeds the enumeration cap {}",
            config.enumeration_cap
        );
    }
    let mut pick: Vec<usize> = (1..=n).collect();
    let mut best: Option<(usize, IntegerSet)> = None;
    loop {
        let a: IntegerSet = pick.iter().map(|&v| v as i64).collect();
        let (value, _) = exact_m(&a, config)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, a));
        }
        // next combination in lexicographic order
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - (n - 1 - i)) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(best.expect("at least one set enumerated"))
}

fn binomial(m: u128, n: u128) -> u128 {
    let n = n.min(m - n);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(m - i) / (i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoublingStats {
    pub size: usize,
    /// `|A + A|`.
    pub sumset: usize,
    /// `|2A − 2A|`.
    pub double_difference: usize,
    pub sumset_ratio: f64,
    pub double_difference_ratio: f64,
}

pub fn doubling_stats(a: &IntegerSet) -> DoublingStats {
    let two = a.sumset(a);
    let dd = two.difference_set(&two);
    let n = a.len().max(1) as f64;
    DoublingStats {
        size: a.len(),
        sumset: two.len(),
        double_difference: dd.len(),
        sumset_ratio: two.len() as f64 / n,
        double_difference_ratio: dd.len() as f64 / n,
    }
}

/// Bounds a candidate `X′` is held to by [`verify_disjoint_dilate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilateCaps {
    /// Required `|X′| / |X|`.
    pub min_size_ratio: f64,
    /// Allowed `|X′ + X′| / |X′|`.
    pub doubling_cap: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilateVerdict {
    /// `X′` non-empty with `|X′| ≥ min_size_ratio · |X|`.
    pub size: bool,
    /// `|X′ + X′| ≤ doubling_cap · |X′|`.
    pub doubling: bool,
    /// `(2 · X′) ∩ Y = ∅`.
    pub disjoint: bool,
}

impl DilateVerdict {
    pub fn pass(&self) -> bool {
        self.size && self.doubling && self.disjoint
    }
}

pub fn verify_disjoint_dilate(
    x_prime: &IntegerSet,
    x: &IntegerSet,
    y: &IntegerSet,
    caps: &DilateCaps,
) -> Result<DilateVerdict> {
    if !x_prime.is_subset_of(x) || !x.is_subset_of(y) {
        bail!(InvalidArgument, "need X′ ⊆ X ⊆ Y");
    }
    let n = x_prime.len() as f64;
    Ok(DilateVerdict {
        size: !x_prime.is_empty() && n >= caps.min_size_ratio * x.len() as f64,
        doubling: x_prime.sumset(x_prime).len() as f64 <= caps.doubling_cap * n,
        disjoint: x_prime.iter().all(|v| !y.contains(2 * v)),
    })
}

/// A subset of `A` together with a Freiman 2-isomorphism into `ℤ/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingResult {
    pub subset: IntegerSet,
    pub modulus: u64,
    /// Image of each element of `subset`, in the same order.
    pub images: Vec<u64>,
    /// 1-based index of the successful trial.
    pub trial: u64,
    pub multiplier: u64,
    pub offset: u64,
    /// Prime `P` when the trial went through `ℤ/P` and was rescaled into `ℤ/N`.
    pub prime: Option<u64>,
    pub quadruples_checked: u128,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EmbedOutcome {
    Embedded(EmbeddingResult),
    Exhausted { trials: u64, best_size: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbedConfig {
    /// Overrides the default modulus, the smallest odd integer above `4|2A − 2A|`.
    pub modulus: Option<u64>,
    pub quadruple_cap: u128,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            modulus: None,
            quadruple_cap: 100_000_000,
        }
    }
}

/// Smallest odd integer exceeding `4|2A − 2A|`.
pub fn default_modulus(a: &IntegerSet) -> u64 {
    let n = 4 * doubling_stats(a).double_difference as u64 + 1;
    if n % 2 == 1 {
        n
    } else {
        n + 1
    }
}

/// Checks `a₁ + a₂ = a₁′ + a₂′ ⇔ φ(a₁) + φ(a₂) = φ(a₁′) + φ(a₂′)` over every quadruple.
/// Returns the number of quadruples examined, or `None` at the first failure.
pub fn verify_freiman(subset: &IntegerSet, images: &[u64], modulus: u64) -> Option<u128> {
    let s = subset.as_slice();
    if images.len() != s.len() || modulus == 0 || images.iter().any(|&v| v >= modulus) {
        return None;
    }
    let m = modulus as u128;
    let mut checked = 0u128;
    for i in 0..s.len() {
        for j in 0..s.len() {
            for k in 0..s.len() {
                for l in 0..s.len() {
                    let int_eq = s[i] + s[j] == s[k] + s[l];
                    let lhs = (images[i] as u128 + images[j] as u128) % m;
                    let rhs = (images[k] as u128 + images[l] as u128) % m;
                    if int_eq != (lhs == rhs) {
                        return None;
                    }
                    checked += 1;
                }
            }
        }
    }
    Some(checked)
}

/// Size of a subset kept greedily, in order, while the map stays a 2-isomorphism.
fn greedy_isomorphic_size(pairs: &[(i64, u64)], modulus: u64) -> usize {
    let m = modulus as u128;
    let mut kept: Vec<(i64, u64)> = Vec::new();
    for &p in pairs {
        kept.push(p);
        let last = kept.len() - 1;
        let ok = (0..kept.len()).all(|i| {
            (0..kept.len()).all(|j| {
                (0..kept.len()).all(|k| {
                    // every quadruple with the new element in some slot
                    let quads = [
                        [last, i, j, k],
                        [i, last, j, k],
                        [i, j, last, k],
                        [i, j, k, last],
                    ];
                    quads.iter().all(|q| {
                        let [a, b, c, d] = q.map(|t| kept[t]);
                        let int_eq = a.0 + b.0 == c.0 + d.0;
                        let img_eq =
                            (a.1 as u128 + b.1 as u128) % m == (c.1 as u128 + d.1 as u128) % m;
                        int_eq == img_eq
                    })
                })
            })
        });
        if !ok {
            kept.pop();
        }
    }
    kept.len()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn next_prime_above(n: u64) -> Option<u64> {
    (n.checked_add(1)?..=u64::MAX).find(|&p| is_prime(p))
}

fn random_unit(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    loop {
        let l = rng.gen_range(1..n.max(2));
        if gcd(l, n) == 1 {
            return l;
        }
    }
}

/// Randomized search for `A′ ⊆ A`, `|A′| ≥ |A|/2`, Freiman 2-isomorphic to a
/// subset of `ℤ/N`.
///
/// The first trial maps all of `A` by reduction mod `N`. Even trials map
/// `x ↦ λx + θ mod N`. Odd trials reduce mod a prime `P > 2·diam(A)`, which is
/// injective on `2A − 2A`, take `y = λx + θ mod P` and send it to `⌊Ny/P⌋`.
/// Later trials keep the more populous half of the residues. Every accepted
/// map is verified on all quadruples.
pub fn ruzsa_embed(
    a: &IntegerSet,
    trials: u64,
    seed: u64,
    config: &EmbedConfig,
) -> Result<EmbedOutcome> {
    if a.is_empty() {
        bail!(InvalidArgument, "cannot embed an empty set");
    }
    let quads = (a.len() as u128).pow(4);
    if quads > config.quadruple_cap {
        bail!(
            ResourceLimit,
            "verifying {quads} quadruples exceeds the cap {}",
            config.quadruple_cap
        );
    }
    let n = config.modulus.unwrap_or_else(|| default_modulus(a));
    if n.is_multiple_of(2) {
        bail!(InvalidArgument, "modulus must be odd, got {n}");
    }
    let base = a.as_slice()[0];
    let diam = (a.as_slice()[a.len() - 1] as i128 - base as i128) as u128;
    let prime = u64::try_from(2 * diam)
        .ok()
        .and_then(next_prime_above)
        .filter(|&p| p <= u64::MAX / 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_size = 0;
    for trial in 1..=trials {
        let rescale = if trial % 2 == 1 && trial > 1 {
            prime
        } else {
            None
        };
        let (lambda, theta, mapped): (u64, u64, Vec<(i64, u64)>) = if trial == 1 {
            let m: Vec<(i64, u64)> = a
                .iter()
                .map(|x| (x, (x as i128).rem_euclid(n as i128) as u64))
                .collect();
            (1, 0, m)
        } else {
            let modulus = rescale.unwrap_or(n);
            let lambda = random_unit(&mut rng, modulus);
            let theta = rng.gen_range(0..modulus);
            let m = a
                .iter()
                .map(|x| {
                    let r = (x as i128 - base as i128).rem_euclid(modulus as i128) as u128;
                    let y = ((r * lambda as u128 + theta as u128) % modulus as u128) as u64;
                    (x, y)
                })
                .collect();
            (lambda, theta, m)
        };
        let chosen: Vec<(i64, u64)> = if trial == 1 {
            mapped
        } else {
            let half = rescale.unwrap_or(n).div_ceil(2);
            let (lo, hi): (Vec<_>, Vec<_>) = mapped.into_iter().partition(|&(_, y)| y < half);
            let kept = if hi.len() > lo.len() { hi } else { lo };
            match rescale {
                Some(p) => kept
                    .into_iter()
                    .map(|(x, y)| (x, (y as u128 * n as u128 / p as u128) as u64))
                    .collect(),
                None => kept,
            }
        };
        if 2 * chosen.len() < a.len() {
            continue;
        }
        let subset: IntegerSet = chosen.iter().map(|&(x, _)| x).collect();
        let images: Vec<u64> = chosen.iter().map(|&(_, y)| y).collect();
        let Some(checked) = verify_freiman(&subset, &images, n) else {
            best_size = best_size.max(greedy_isomorphic_size(&chosen, n));
            continue;
        };
        return Ok(EmbedOutcome::Embedded(EmbeddingResult {
            subset,
            modulus: n,
            images,
            trial,
            multiplier: lambda,
            offset: theta,
            prime: rescale,
            quadruples_checked: checked,
        }));
    }
    Ok(EmbedOutcome::Exhausted { trials, best_size })
}

/// Every subset of `A`, largest first, checked against `A`. Exponential.
pub fn brute_force_m(a: &IntegerSet) -> usize {
    let e = a.as_slice();
    assert!(
        e.len() < 32,
        "brute force is limited to fewer than 32 elements"
    );
    (0u32..1 << e.len())
        .filter(|&mask| {
            let b: IntegerSet = (0..e.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| e[i])
                .collect();
            is_sumfree_wrt(&b, a)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntegerSet {
        IntegerSet::new(v.to_vec())
    }

    #[test]
    fn predicate_examples() {
        let powers = set(&[2, 4, 8, 16, 32]);
        assert!(is_sumfree_wrt(&set(&[5]), &set(&[10])));
        assert!(is_sumfree_wrt(&powers, &powers));
        assert!(!is_sumfree_wrt(&set(&[1, 2]), &IntegerSet::interval(4)));
    }

    #[test]
    fn exact_m_examples() {
        let cfg = SumfreeConfig::default();
        assert_eq!(
            exact_m(&IntegerSet::interval(4), &cfg).unwrap(),
            (3, set(&[2, 3, 4]))
        );
        assert_eq!(exact_m(&set(&[2, 4, 8, 16]), &cfg).unwrap().0, 4);
        for n in 1..=12 {
            let a = IntegerSet::interval(n);
            let (m, w) = exact_m(&a, &cfg).unwrap();
            assert_eq!(m, brute_force_m(&a), "n = {n}");
            assert!(is_sumfree_wrt(&w, &a) && w.is_subset_of(&a));
        }
        let big = IntegerSet::interval(41);
        assert!(exact_m(&big, &cfg).is_err());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_sumfree(&IntegerSet::interval(4)), vec![4, 3, 2]);
        assert_eq!(greedy_sumfree(&set(&[2, 4, 8, 16])), vec![16, 8, 4, 2]);
        assert_eq!(greedy_sumfree(&set(&[7])), vec![7]);
    }

    #[test]
    fn pipeline_examples() {
        let cfg = SumfreeConfig::default();
        let p = set(&[1, 2, 4, 8, 16]);
        assert_eq!(pipeline_extract(&p, &p, 5, &cfg).unwrap(), Some(p.clone()));
        let i4 = IntegerSet::interval(4);
        assert_eq!(
            pipeline_extract(&i4, &i4, 3, &cfg).unwrap(),
            Some(set(&[2, 3, 4]))
        );
        assert_eq!(pipeline_extract(&i4, &i4, 4, &cfg).unwrap(), None);
        assert!(pipeline_extract(&i4, &set(&[1]), 1, &cfg).is_err());
    }

    #[test]
    fn universe_minimum() {
        let cfg = SumfreeConfig::default();
        assert_eq!(min_m_over_universe(1, 5, &cfg).unwrap().0, 1);
        assert_eq!(min_m_over_universe(2, 4, &cfg).unwrap().0, 2);
        let (v, arg) = min_m_over_universe(3, 8, &cfg).unwrap();
        assert_eq!(v, brute_force_m(&arg));
        assert_eq!(v, 2);
        assert_eq!(binomial(8, 3), 56);
    }

    #[test]
    fn doubling_examples() {
        let ap: IntegerSet = (0..7).map(|i| 3 + 5 * i).collect();
        assert_eq!(doubling_stats(&ap).sumset, 13);
        assert_eq!(doubling_stats(&set(&[0, 1, 10, 100])).sumset, 10);
        let s = doubling_stats(&set(&[9]));
        assert_eq!((s.size, s.sumset, s.double_difference), (1, 1, 1));
    }

    #[test]
    fn dilate_examples() {
        let caps = DilateCaps {
            min_size_ratio: 0.0,
            doubling_cap: 1e9,
        };
        let x = set(&[1, 3, 5]);
        let y = set(&[1, 3, 5, 7]);
        let v = verify_disjoint_dilate(&set(&[]), &x, &y, &caps).unwrap();
        assert!(v.disjoint && !v.size);
        assert!(verify_disjoint_dilate(&set(&[1]), &x, &y, &caps)
            .unwrap()
            .pass());
        let y6 = set(&[1, 3, 5, 6]);
        assert!(
            !verify_disjoint_dilate(&set(&[3]), &x, &y6, &caps)
                .unwrap()
                .disjoint
        );
        assert!(verify_disjoint_dilate(&set(&[2]), &x, &y, &caps).is_err());
    }

    #[test]
    fn embedding_examples() {
        let cfg = EmbedConfig::default();
        let a = set(&[0, 1]);
        assert_eq!(default_modulus(&a), 21);
        match ruzsa_embed(&a, 10, 0, &cfg).unwrap() {
            EmbedOutcome::Embedded(r) => {
                assert_eq!(
                    (r.modulus, r.quadruples_checked, r.subset.len()),
                    (21, 16, 2)
                );
            }
            other => panic!("{other:?}"),
        }
        let ap: IntegerSet = (0..6).map(|i| 2 + 7 * i).collect();
        match ruzsa_embed(&ap, 10, 0, &cfg).unwrap() {
            EmbedOutcome::Embedded(r) => assert_eq!(r.subset, ap),
            other => panic!("{other:?}"),
        }
        // mod 3 collapses 0 and 3
        assert!(verify_freiman(&set(&[0, 3]), &[0, 0], 3).is_none());
        // a tiny modulus forces the randomized trials and can fail honestly
        let spread = set(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let forced = EmbedConfig {
            modulus: Some(5),
            ..cfg
        };
        assert!(matches!(
            ruzsa_embed(&spread, 50, 1, &forced).unwrap(),
            EmbedOutcome::Exhausted { trials: 50, best_size } if (1..8).contains(&best_size)
        ));
        // 109 ≡ 186 mod 77, so only the trials through a prime separate them
        let clash = set(&[1, 109, 186]);
        assert_eq!(default_modulus(&clash), 77);
        match ruzsa_embed(&clash, 100, 0, &cfg).unwrap() {
            EmbedOutcome::Embedded(r) => {
                assert!(r.prime.is_some() && 2 * r.subset.len() >= 3);
                assert!(verify_freiman(&r.subset, &r.images, 77).is_some());
            }
            other => panic!("{other:?}"),
        }
    }
}
