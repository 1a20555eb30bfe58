//! Sifting by random translates, the averaging shift, and numeric checks of
//! the density-increment machinery, plus a heuristic increment search.
//!
//! Sets are element-index lists of one group. Difference convolutions of
//! normalized indicators are evaluated from integer difference counts:
//! `(μ_X ∘ μ_Y)(x) = |G| · #{(a, b) ∈ X × Y : a − b = x} / (|X||Y|)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::bohr::{find_regular_dilate, BohrSet};
use crate::configs::{count_k_configurations, CliqueConfig};
use crate::error::{bail, Error, Result};
use crate::exact::rational;
use crate::group::{Character, FiniteAbelianGroup};
use crate::harmonic::{
    convolve, diff_convolve, fourier, lp_norm, DenseFunction, Exponent, Measure,
};

/// Relative slack for comparisons between floating-point quantities.
pub const FLOAT_SLACK: f64 = 1e-9;

/// `L(t) = log(2/t)`.
pub fn log_weight(t: f64) -> f64 {
    libm::log(2.0 / t)
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn set_bits(group: &FiniteAbelianGroup, set: &[usize], what: &str) -> Result<BitSet> {
    if let Some(&x) = set.iter().find(|&&x| x >= group.order()) {
        bail!(
            GroupMismatch,
            "{what}: element index {x} outside group of order {}",
            group.order()
        );
    }
    Ok(BitSet::from_indices(group.order(), set.iter().copied()))
}

fn nonempty_bits(group: &FiniteAbelianGroup, set: &[usize], what: &str) -> Result<BitSet> {
    let bits = set_bits(group, set, what)?;
    if bits.is_empty() {
        bail!(InvalidArgument, "{what} must be non-empty");
    }
    Ok(bits)
}

/// `r(x) = #{(a, b) ∈ X × Y : a − b = x}`.
pub fn difference_counts(group: &FiniteAbelianGroup, x: &BitSet, y: &BitSet) -> Vec<u64> {
    let mut out = vec![0u64; group.order()];
    let ys = y.to_vec();
    for a in x.iter() {
        for &b in &ys {
            out[group.sub_idx(a, b)] += 1;
        }
    }
    out
}

/// Parameters of the sifting lemma.
#[derive(Clone, Debug, PartialEq)]
pub struct SiftInstance {
    group: FiniteAbelianGroup,
    a: [BitSet; 2],
    b: [BitSet; 2],
    p: u32,
    eps: f64,
    delta: f64,
    seed: u64,
}

/// Values of `μ_{A1} ∘ μ_{A2}`, the weight `μ = μ_{B1} ∘ μ_{B2}`, and the norm
/// `‖μ_{A1} ∘ μ_{A2}‖_{L^p(μ)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SiftLandscape {
    pub convolution: Vec<f64>,
    pub weight: Vec<f64>,
    pub norm: f64,
    pub level_set: Vec<usize>,
}

impl SiftInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        group: &FiniteAbelianGroup,
        a1: &[usize],
        a2: &[usize],
        b1: &[usize],
        b2: &[usize],
        p: u32,
        eps: f64,
        delta: f64,
        seed: u64,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) || !(delta > 0.0 && delta <= 1.0) {
            bail!(
                InvalidArgument,
                "ε and δ must lie in (0,1], got {eps} and {delta}"
            );
        }
        let needed = log_weight(delta) / eps;
        if (p as f64) < needed {
            bail!(
                PreconditionViolation,
                "p = {p} is below ε⁻¹·log(2/δ) = {needed:.6}"
            );
        }
        Ok(SiftInstance {
            group: group.clone(),
            a: [
                nonempty_bits(group, a1, "A1")?,
                nonempty_bits(group, a2, "A2")?,
            ],
            b: [
                nonempty_bits(group, b1, "B1")?,
                nonempty_bits(group, b2, "B2")?,
            ],
            p,
            eps,
            delta,
            seed,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `α_j = |A_j| / |G|`.
    pub fn density(&self, j: usize) -> f64 {
        self.a[j].count() as f64 / self.group.order() as f64
    }

    pub fn landscape(&self) -> SiftLandscape {
        let g = &self.group;
        let n = g.order() as f64;
        let ra = difference_counts(g, &self.a[0], &self.a[1]);
        let rb = difference_counts(g, &self.b[0], &self.b[1]);
        let sa = n / (self.a[0].count() as f64 * self.a[1].count() as f64);
        let sb = n / (self.b[0].count() as f64 * self.b[1].count() as f64);
        let convolution: Vec<f64> = ra.iter().map(|&r| r as f64 * sa).collect();
        let weight: Vec<f64> = rb.iter().map(|&r| r as f64 * sb).collect();
        let p = self.p as f64;
        let mean: f64 = convolution
            .iter()
            .zip(&weight)
            .map(|(f, w)| libm::pow(*f, p) * w)
            .sum::<f64>()
            / n;
        let norm = libm::pow(mean, 1.0 / p);
        let threshold = (1.0 - self.eps) * norm;
        let level_set = (0..g.order())
            .filter(|&x| convolution[x] >= threshold)
            .collect();
        SiftLandscape {
            convolution,
            weight,
            norm,
            level_set,
        }
    }

    /// `S = {x : (μ_{A1} ∘ μ_{A2})(x) ≥ (1−ε)‖μ_{A1} ∘ μ_{A2}‖_{L^p(μ)}}`.
    pub fn level_set(&self) -> Vec<usize> {
        self.landscape().level_set
    }

    /// `¼ (α_j ‖μ_{A1} ∘ μ_{A2}‖_{L^p(μ)})^p`.
    pub fn density_floor(&self, j: usize, norm: f64) -> f64 {
        0.25 * libm::pow(self.density(j) * norm, self.p as f64)
    }

    /// `B_j ∩ ⋂_k (A_j − t_k)`.
    pub fn sifted(&self, j: usize, shifts: &[usize]) -> BitSet {
        let g = &self.group;
        let mut out = self.b[j].clone();
        for &t in shifts {
            let shifted =
                BitSet::from_indices(g.order(), self.a[j].iter().map(|a| g.sub_idx(a, t)));
            out.intersect_with(&shifted);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiftOutcome {
    pub shifts: Vec<usize>,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    /// 1-based index of the accepted trial.
    pub trials: u64,
    /// `α_j' = |A_j'| / |B_j|`.
    pub alpha1: f64,
    pub alpha2: f64,
    pub floor1: f64,
    pub floor2: f64,
    /// `⟨μ_{A1'} ∘ μ_{A2'}, 1_S⟩ = #{(a, b) : a − b ∈ S} / (|A1'||A2'|)`.
    pub s_mass: f64,
    pub s_pairs: u64,
    pub total_pairs: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SiftResult {
    Accepted(SiftOutcome),
    Exhausted {
        trials: u64,
        /// Fraction of trials meeting both density floors.
        event_rate: f64,
        best_s_mass: f64,
    },
}

struct Candidate {
    sets: [BitSet; 2],
    floors_met: bool,
    floors: [f64; 2],
    s_pairs: u64,
    total_pairs: u64,
}

fn evaluate(
    inst: &SiftInstance,
    land: &SiftLandscape,
    s_bits: &BitSet,
    shifts: &[usize],
) -> Result<Candidate> {
    let g = &inst.group;
    let sets = [inst.sifted(0, shifts), inst.sifted(1, shifts)];
    let floors = [
        inst.density_floor(0, land.norm),
        inst.density_floor(1, land.norm),
    ];
    let mut floors_met = true;
    for j in 0..2 {
        let have = ratio(sets[j].count(), inst.b[j].count());
        if sets[j].is_empty() || have < rational(floors[j])? {
            floors_met = false;
        }
    }
    let (mut s_pairs, mut total_pairs) = (0, 0);
    if floors_met {
        let r = difference_counts(g, &sets[0], &sets[1]);
        total_pairs = r.iter().sum();
        s_pairs = s_bits.iter().map(|x| r[x]).sum();
    }
    Ok(Candidate {
        sets,
        floors_met,
        floors,
        s_pairs,
        total_pairs,
    })
}

fn s_mass_ok(s_pairs: u64, total_pairs: u64, delta: f64) -> Result<bool> {
    if total_pairs == 0 {
        return Ok(false);
    }
    Ok(ratio(s_pairs as usize, total_pairs as usize) >= BigRational::one() - rational(delta)?)
}

/// Draws `t ∈ G^p` until both density floors and `S`-mass `≥ 1 − δ` hold.
pub fn sift(inst: &SiftInstance, max_trials: u64) -> Result<SiftResult> {
    let g = &inst.group;
    let land = inst.landscape();
    let s_bits = BitSet::from_indices(g.order(), land.level_set.iter().copied());
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
    let mut shifts = vec![0usize; inst.p as usize];
    let mut events = 0u64;
    let mut best = 0.0f64;
    for trial in 1..=max_trials {
        for t in shifts.iter_mut() {
            *t = rng.gen_range(0..g.order());
        }
        let c = evaluate(inst, &land, &s_bits, &shifts)?;
        if !c.floors_met {
            continue;
        }
        events += 1;
        let mass = c.s_pairs as f64 / c.total_pairs as f64;
        best = best.max(mass);
        if s_mass_ok(c.s_pairs, c.total_pairs, inst.delta)? {
            let [s1, s2] = c.sets;
            return Ok(SiftResult::Accepted(SiftOutcome {
                shifts: shifts.clone(),
                alpha1: s1.count() as f64 / inst.b[0].count() as f64,
                alpha2: s2.count() as f64 / inst.b[1].count() as f64,
                a1: s1.to_vec(),
                a2: s2.to_vec(),
                trials: trial,
                floor1: c.floors[0],
                floor2: c.floors[1],
                s_mass: mass,
                s_pairs: c.s_pairs,
                total_pairs: c.total_pairs,
            }));
        }
    }
    Ok(SiftResult::Exhausted {
        trials: max_trials,
        event_rate: if max_trials == 0 {
            0.0
        } else {
            events as f64 / max_trials as f64
        },
        best_s_mass: best,
    })
}

/// Recomputes an outcome from its shifts and checks both conclusions.
pub fn verify_sift_outcome(inst: &SiftInstance, outcome: &SiftOutcome) -> Result<bool> {
    let g = &inst.group;
    if outcome.shifts.len() != inst.p as usize || outcome.shifts.iter().any(|&t| t >= g.order()) {
        return Ok(false);
    }
    let land = inst.landscape();
    let s_bits = BitSet::from_indices(g.order(), land.level_set.iter().copied());
    let c = evaluate(inst, &land, &s_bits, &outcome.shifts)?;
    Ok(c.floors_met
        && c.sets[0].to_vec() == outcome.a1
        && c.sets[1].to_vec() == outcome.a2
        && c.s_pairs == outcome.s_pairs
        && c.total_pairs == outcome.total_pairs
        && s_mass_ok(c.s_pairs, c.total_pairs, inst.delta)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragingShift {
    pub x: usize,
    /// `‖f‖_{L^p(τ_x ν)}`.
    pub achieved: f64,
    /// `γ^{−1/p} ‖f‖_{L^p(μ)}`.
    pub target: f64,
    pub pass: bool,
}

/// Given `μ ≤ γ(η ∗ ν)`, finds `x` maximizing `‖f‖_{L^p(τ_x ν)}`.
pub fn averaging_shift(
    f: &DenseFunction,
    p: f64,
    mu: &Measure,
    nu: &Measure,
    eta: &Measure,
    gamma: f64,
) -> Result<AveragingShift> {
    let g = f.group();
    for m in [mu, nu, eta] {
        g.same_as(m.group())?;
    }
    if !(p >= 1.0) || !p.is_finite() {
        bail!(InvalidArgument, "p must be finite and at least 1, got {p}");
    }
    if !(gamma > 0.0) {
        bail!(InvalidArgument, "γ must be positive, got {gamma}");
    }
    let dominating = convolve(&eta.to_function(), &nu.to_function())?;
    if let Some(x) = (0..g.order())
        .find(|&x| mu.at(x) > gamma * dominating.at(x).re * (1.0 + FLOAT_SLACK) + FLOAT_SLACK)
    {
        bail!(
            PreconditionViolation,
            "μ({x}) = {} exceeds γ(η∗ν)({x}) = {}",
            mu.at(x),
            gamma * dominating.at(x).re
        );
    }
    let powered: Vec<f64> = f.values().iter().map(|v| libm::pow(v.norm(), p)).collect();
    let n = g.order() as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for x in 0..g.order() {
        // τ_x ν (y) = ν(y − x)
        let s: f64 = (0..g.order())
            .map(|y| powered[y] * nu.at(g.sub_idx(y, x)))
            .sum::<f64>()
            / n;
        if s > best.1 {
            best = (x, s);
        }
    }
    let achieved = libm::pow(best.1, 1.0 / p);
    let target = libm::pow(gamma, -1.0 / p) * lp_norm(f, Exponent::Finite(p), Some(mu))?;
    Ok(AveragingShift {
        x: best.0,
        achieved,
        target,
        pass: achieved >= target * (1.0 - FLOAT_SLACK),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftingReport {
    /// `⟨μ_{A1} ∗ μ_{A2}, μ_C⟩`.
    pub inner: f64,
    /// `μ(B)^{-1}`.
    pub scale: f64,
    /// Alternative (i): `|inner − μ(B)^{-1}| < εμ(B)^{-1}`.
    pub uniform: bool,
    /// `‖(μ_{A1}−μ_B) ∗ (μ_{A2}−μ_B)‖_{L^p(μ_{B'})}` for `p = 1, 2, …` as scanned.
    pub norms: Vec<f64>,
    /// Smallest `p` reaching `½εμ(B)^{-1}`.
    pub p_found: Option<u32>,
}

/// Evaluates the Hölder-lifting alternatives for `A1, A2 ⊆ B` and `C ⊆ B'`.
#[allow(clippy::too_many_arguments)]
pub fn holder_lifting_scan(
    group: &FiniteAbelianGroup,
    a1: &[usize],
    a2: &[usize],
    b: &[usize],
    b_prime: &[usize],
    c: &[usize],
    eps: f64,
    p_cap: u32,
) -> Result<LiftingReport> {
    if !(eps > 0.0 && eps <= 1.0) {
        bail!(InvalidArgument, "ε must lie in (0,1], got {eps}");
    }
    let mu_a1 = Measure::normalized_indicator(group, a1)?.to_function();
    let mu_a2 = Measure::normalized_indicator(group, a2)?.to_function();
    let mu_b = Measure::normalized_indicator(group, b)?;
    let mu_bp = Measure::normalized_indicator(group, b_prime)?;
    let c_bits = nonempty_bits(group, c, "C")?;
    let scale = group.order() as f64 / nonempty_bits(group, b, "B")?.count() as f64;

    let conv = convolve(&mu_a1, &mu_a2)?;
    let inner = c_bits.iter().map(|x| conv.at(x).re).sum::<f64>() / c_bits.count() as f64;
    let uniform = (inner - scale).abs() < eps * scale;

    let mut norms = Vec::new();
    let mut p_found = None;
    if !uniform {
        let mb = mu_b.to_function();
        let balanced = convolve(&mu_a1.sub(&mb)?, &mu_a2.sub(&mb)?)?;
        for p in 1..=p_cap {
            let v = lp_norm(&balanced, Exponent::Finite(p as f64), Some(&mu_bp))?;
            norms.push(v);
            if v >= 0.5 * eps * scale {
                p_found = Some(p);
                break;
            }
        }
    }
    Ok(LiftingReport {
        inner,
        scale,
        uniform,
        norms,
        p_found,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierSumBound {
    /// `Σ_γ |F̂(γ)|` for `F = (μ_{A1'} ∘ μ_{A2'}) ∘ (μ_{A1} ∘ μ_{A2})`.
    pub lhs: f64,
    /// `(α1 α2)^{-1/2} μ(B)^{-1}`.
    pub rhs: f64,
    pub pass: bool,
}

pub fn fourier_sum_bound_check(
    group: &FiniteAbelianGroup,
    a1_prime: &[usize],
    a2_prime: &[usize],
    a1: &[usize],
    a2: &[usize],
    b: &[usize],
) -> Result<FourierSumBound> {
    let b_bits = nonempty_bits(group, b, "B")?;
    let a1_bits = nonempty_bits(group, a1, "A1")?;
    let a2_bits = nonempty_bits(group, a2, "A2")?;
    for (bits, name) in [(&a1_bits, "A1"), (&a2_bits, "A2")] {
        let mut outside = bits.clone();
        outside.difference_with(&b_bits);
        if !outside.is_empty() {
            bail!(PreconditionViolation, "{name} is not contained in B");
        }
    }
    let m = |s: &[usize]| Measure::normalized_indicator(group, s).map(|m| m.to_function());
    let inner = diff_convolve(&m(a1)?, &m(a2)?)?;
    let outer = diff_convolve(&m(a1_prime)?, &m(a2_prime)?)?;
    let f = diff_convolve(&outer, &inner)?;
    let lhs = fourier(&f).l1_sum();
    let nb = b_bits.count() as f64;
    let alpha1 = a1_bits.count() as f64 / nb;
    let alpha2 = a2_bits.count() as f64 / nb;
    let rhs = group.order() as f64 / nb / libm::sqrt(alpha1 * alpha2);
    Ok(FourierSumBound {
        lhs,
        rhs,
        pass: lhs <= rhs + FLOAT_SLACK * rhs.max(1.0),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum TranslateVerdict {
    /// `|μ_{B'}(A − x) − α| ≤ γα` for every member of the family.
    Uniform,
    /// `μ_{B'}(A − x) ≥ (1 + γ/(4k))α` for family member `index`.
    Increment { index: usize, density: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslateDichotomy {
    pub x: usize,
    pub verdict: TranslateVerdict,
    /// `μ_{B'}(A − x)` for each family member.
    pub densities: Vec<f64>,
}

/// Relative densities `|(A − x) ∩ B'| / |B'|` as exact ratios.
fn translate_densities(
    group: &FiniteAbelianGroup,
    a: &BitSet,
    family: &[Vec<usize>],
    x: usize,
) -> Vec<BigRational> {
    family
        .iter()
        .map(|members| {
            // y ∈ A − x ⇔ y + x ∈ A
            let hits = members
                .iter()
                .filter(|&&y| a.contains(group.add_idx(y, x)))
                .count();
            ratio(hits, members.len())
        })
        .collect()
}

/// Scans every `x ∈ G` for a translate that is uniform on the whole family or
/// incremented on one member; `α = |A|/|ambient|`.
pub fn translate_dichotomy(
    a: &[usize],
    ambient: &[usize],
    family: &[BohrSet],
    gamma: f64,
    k: u32,
) -> Result<Option<TranslateDichotomy>> {
    let Some(first) = family.first() else {
        bail!(
            InvalidArgument,
            "translate dichotomy needs a non-empty family"
        );
    };
    let group = first.group().clone();
    for b in family {
        group.same_as(b.group())?;
    }
    if !(gamma > 0.0) || k < 1 {
        bail!(InvalidArgument, "needs γ > 0 and k >= 1");
    }
    let a_bits = set_bits(&group, a, "A")?;
    let amb = nonempty_bits(&group, ambient, "ambient set")?;
    let alpha = ratio(a_bits.count(), amb.count());
    let members: Vec<Vec<usize>> = family.iter().map(BohrSet::members).collect();
    let gamma_q = rational(gamma)?;
    let lift = BigRational::one() + &gamma_q / BigRational::from_integer(BigInt::from(4 * k));
    let increment_floor = lift * &alpha;
    let uniform_slack = &gamma_q * &alpha;
    for x in 0..group.order() {
        let dens = translate_densities(&group, &a_bits, &members, x);
        let as_f64 = dens.iter().map(to_f64).collect();
        if dens.iter().all(|d| (d - &alpha).abs() <= uniform_slack) {
            return Ok(Some(TranslateDichotomy {
                x,
                verdict: TranslateVerdict::Uniform,
                densities: as_f64,
            }));
        }
        if let Some(index) = dens.iter().position(|d| *d >= increment_floor) {
            return Ok(Some(TranslateDichotomy {
                x,
                verdict: TranslateVerdict::Increment {
                    index,
                    density: to_f64(&dens[index]),
                },
                densities: as_f64,
            }));
        }
    }
    Ok(None)
}

/// Knobs of [`increment_search`].
#[derive(Clone, Debug, PartialEq)]
pub struct IncrementConfig {
    /// Required relative gain is `gain_constant · k⁻⁵`.
    pub gain_constant: f64,
    /// How many large-spectrum characters of `μ_A` feed candidate `Δ`s.
    pub spectrum_pool: usize,
    /// Characters with `|μ̂_A(γ)|` below this never enter the pool.
    pub spectrum_threshold: f64,
    /// Width multipliers tried, in order, before regularizing.
    pub width_factors: Vec<f64>,
    /// Skip the configuration count above this many tuples.
    pub clique: CliqueConfig,
}

impl Default for IncrementConfig {
    fn default() -> Self {
        IncrementConfig {
            gain_constant: 1.0,
            spectrum_pool: 4,
            spectrum_threshold: 0.05,
            width_factors: vec![1.0, 0.5, 0.25, 0.125, 0.0625],
            clique: CliqueConfig {
                node_cap: 50_000_000,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncrementWitness {
    pub x: usize,
    pub sign: i64,
    pub added: Vec<Character>,
    pub frequencies: Vec<Character>,
    pub width: f64,
    /// `μ_{B'}(A − x)`.
    pub density: f64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncrementReport {
    /// `α = |A|/|B|`.
    pub alpha: f64,
    /// Proportion of `k`-tuples with all midpoints in `A`, when countable.
    pub proportion: Option<f64>,
    /// `ρ^{2kd}`, the shape of the counting alternative's lower bound.
    pub threshold_shape: f64,
    /// `(1 + gain)α` demanded of a witness.
    pub target: f64,
    pub candidates_tried: usize,
    pub witness: Option<IncrementWitness>,
}

/// Checks a witness from scratch: rebuilds `B' = Bohr(Γ'; ρ')`, requires it to
/// be regular and `μ_{B'}(A − x) ≥ (1 + gain)α`.
pub fn verify_increment_witness(
    group: &FiniteAbelianGroup,
    a: &[usize],
    alpha: &BigRational,
    gain: f64,
    w: &IncrementWitness,
) -> Result<bool> {
    let b = BohrSet::new(group, w.frequencies.clone(), w.width)?;
    if !b.is_regular().regular {
        return Ok(false);
    }
    let a_bits = set_bits(group, a, "A")?;
    let d = &translate_densities(group, &a_bits, &[b.members()], w.x)[0];
    Ok(*d >= (BigRational::one() + rational(gain)?) * alpha)
}

/// Heuristic search for a translate of `A` that is denser on a regular Bohr set
/// with frequencies `Γ ∪ Γψ₂^σ ∪ Δ`.
pub fn increment_search(
    a: &[usize],
    b: &BohrSet,
    k: u32,
    config: &IncrementConfig,
) -> Result<IncrementReport> {
    let g = b.group().clone();
    g.require_odd_order()?;
    if k < 2 {
        bail!(InvalidArgument, "increment search needs k >= 2");
    }
    if !b.is_regular().regular {
        bail!(
            PreconditionViolation,
            "increment search needs a regular Bohr set"
        );
    }
    let a_bits = nonempty_bits(&g, a, "A")?;
    let b_bits = b.member_bits();
    let mut outside = a_bits.clone();
    outside.difference_with(&b_bits);
    if !outside.is_empty() {
        bail!(PreconditionViolation, "A is not contained in the Bohr set");
    }
    let alpha_q = ratio(a_bits.count(), b_bits.count());
    let alpha = to_f64(&alpha_q);
    let proportion = match count_k_configurations(&g, a, k as usize, &config.clique) {
        Ok(c) => Some(to_f64(&c.probability())),
        Err(Error::ResourceLimit(_)) => None,
        Err(e) => return Err(e),
    };
    let d = b.rank() as f64;
    let threshold_shape = libm::pow(b.width(), 2.0 * k as f64 * d);
    let gain = config.gain_constant * libm::pow(k as f64, -5.0);
    let target = (1.0 + gain) * alpha;

    // pool: nontrivial characters with the largest |μ̂_A|
    let table = fourier(&Measure::normalized_indicator(&g, a)?.to_function());
    let mut pool: Vec<usize> = (1..g.order())
        .filter(|&i| table.at(i).norm() >= config.spectrum_threshold)
        .collect();
    pool.sort_by(|&i, &j| {
        table
            .at(j)
            .norm()
            .total_cmp(&table.at(i).norm())
            .then(i.cmp(&j))
    });
    pool.truncate(config.spectrum_pool);
    let mut deltas: Vec<Vec<Character>> = vec![Vec::new()];
    for &i in &pool {
        deltas.push(vec![g.character_at(i)]);
    }
    for len in 2..=pool.len() {
        deltas.push(pool[..len].iter().map(|&i| g.character_at(i)).collect());
    }

    let mut tried = 0;
    for sign in [1i64, -1] {
        let mut base = b.frequencies().to_vec();
        for ch in b.frequencies() {
            base.push(g.compose_with_psi2_power(ch, sign)?);
        }
        for delta in &deltas {
            let mut freqs = base.clone();
            freqs.extend(delta.iter().cloned());
            for &factor in &config.width_factors {
                tried += 1;
                let candidate = BohrSet::new(&g, freqs.clone(), b.width() * factor)?;
                let reg = match find_regular_dilate(&candidate) {
                    Ok(r) => r,
                    Err(Error::NumericalAnomaly(_)) => continue,
                    Err(e) => return Err(e),
                };
                let narrowed = candidate.dilate(reg)?;
                let members = narrowed.members();
                let mut best: Option<(usize, usize)> = None;
                for x in 0..g.order() {
                    let hits = members
                        .iter()
                        .filter(|&&y| a_bits.contains(g.add_idx(y, x)))
                        .count();
                    if best.is_none_or(|(_, h)| hits > h) {
                        best = Some((x, hits));
                    }
                }
                let (x, hits) = best.expect("group is non-empty");
                let dens = ratio(hits, members.len());
                if dens >= (BigRational::one() + rational(gain)?) * &alpha_q {
                    let mut w = IncrementWitness {
                        x,
                        sign,
                        added: delta.clone(),
                        frequencies: freqs.clone(),
                        width: narrowed.width(),
                        density: to_f64(&dens),
                        verified: false,
                    };
                    w.verified = verify_increment_witness(&g, a, &alpha_q, gain, &w)?;
                    if w.verified {
                        return Ok(IncrementReport {
                            alpha,
                            proportion,
                            threshold_shape,
                            target,
                            candidates_tried: tried,
                            witness: Some(w),
                        });
                    }
                }
            }
        }
    }
    Ok(IncrementReport {
        alpha,
        proportion,
        threshold_shape,
        target,
        candidates_tried: tried,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::random_set;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn all(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn level_set_examples() {
        let g = z(9);
        let full = all(9);
        let inst = SiftInstance::new(&g, &full, &full, &full, &full, 6, 0.5, 0.5, 0).unwrap();
        let land = inst.landscape();
        assert!((land.norm - 1.0).abs() < 1e-12);
        assert_eq!(land.level_set, full);

        let a = [0, 1, 3];
        let inst = SiftInstance::new(&g, &a, &a, &full, &full, 2, 1.0, 1.0, 0).unwrap();
        let land = inst.landscape();
        // direct evaluation of μ_A ∘ μ_A
        for x in 0..9 {
            let r = a
                .iter()
                .flat_map(|&u| a.iter().map(move |&v| (u + 9 - v) % 9))
                .filter(|&d| d == x)
                .count();
            assert!((land.convolution[x] - 9.0 * r as f64 / 9.0).abs() < 1e-12);
        }
        let near_one = SiftInstance::new(&g, &a, &a, &full, &full, 2, 0.999_999, 1.0, 0).unwrap();
        let s = near_one.level_set();
        assert!((0..9)
            .filter(|&x| land.convolution[x] > 0.0)
            .all(|x| s.contains(&x)));

        let inst = SiftInstance::new(&g, &a, &a, &full, &full, 6, 0.25, 1.0, 0).unwrap();
        let land = inst.landscape();
        for x in 0..9 {
            assert_eq!(
                land.level_set.contains(&x),
                land.convolution[x] >= 0.75 * land.norm
            );
        }
    }

    #[test]
    fn sift_precondition_gate() {
        let g = z(63);
        let full = all(63);
        assert!(SiftInstance::new(&g, &full, &full, &full, &full, 5, 0.25, 0.5, 0).is_err());
        assert!(SiftInstance::new(&g, &full, &full, &full, &full, 6, 0.25, 0.5, 0).is_ok());
        assert!(SiftInstance::new(&g, &[], &full, &full, &full, 6, 0.25, 0.5, 0).is_err());
    }

    #[test]
    fn sift_full_group_accepts_at_once() {
        let g = z(15);
        let full = all(15);
        let inst = SiftInstance::new(&g, &full, &full, &full, &full, 3, 1.0, 1.0, 4).unwrap();
        match sift(&inst, 10).unwrap() {
            SiftResult::Accepted(o) => {
                assert_eq!(o.trials, 1);
                assert_eq!((o.alpha1, o.alpha2, o.s_mass), (1.0, 1.0, 1.0));
                assert!(verify_sift_outcome(&inst, &o).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sift_random_instance_is_deterministic() {
        let g = z(63);
        let full = all(63);
        let a1 = random_set(63, 0.5, 11).unwrap();
        let a2 = random_set(63, 0.5, 12).unwrap();
        let inst = SiftInstance::new(&g, &a1, &a2, &full, &full, 6, 0.25, 0.5, 5).unwrap();
        let r1 = sift(&inst, 100_000).unwrap();
        assert_eq!(r1, sift(&inst, 100_000).unwrap());
        match r1 {
            SiftResult::Accepted(o) => {
                assert!(verify_sift_outcome(&inst, &o).unwrap());
                assert!(o.s_mass >= 0.5);
                let mut tampered = o.clone();
                tampered.shifts[0] = (tampered.shifts[0] + 1) % 63;
                tampered.a1.push(62);
                assert!(!verify_sift_outcome(&inst, &tampered).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn averaging_examples() {
        let g = z(7);
        let u = Measure::uniform(&g);
        let f = DenseFunction::from_real(&g, &[1.0, -2.0, 3.0, 0.5, 0.0, 4.0, -1.0]).unwrap();
        let r = averaging_shift(&f, 2.0, &u, &u, &u, 1.0).unwrap();
        assert!(r.pass);
        assert!((r.achieved - r.target).abs() < 1e-12);

        let point = Measure::point_mass(&g, 0).unwrap();
        // μ = uniform ≤ 1·(uniform ∗ δ_0)
        let r = averaging_shift(&f, 3.0, &u, &point, &u, 1.0).unwrap();
        assert_eq!(r.x, 5);
        assert!((r.achieved - 4.0).abs() < 1e-9);
        assert!(r.pass);

        let r = averaging_shift(&f, 2.0, &point, &u, &u, 1.0);
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn lifting_examples() {
        let g = z(63);
        let b: Vec<usize> = (0..63).filter(|x| x % 3 == 0).collect();
        let r = holder_lifting_scan(&g, &b, &b, &b, &all(63), &[0, 3], 0.5, 8).unwrap();
        assert!(r.uniform);
        assert!((r.inner - r.scale).abs() < 1e-9);

        let a1 = vec![0, 3];
        let a2 = vec![0, 3];
        let r = holder_lifting_scan(&g, &a1, &a2, &b, &b, &[3], 0.25, 32).unwrap();
        assert!(!r.uniform);
        let p = r.p_found.unwrap();
        assert_eq!(r.norms.len(), p as usize);
        assert!(r.norms[p as usize - 1] >= 0.125 * r.scale);
    }

    #[test]
    fn fourier_sum_examples() {
        let g = z(15);
        let full = all(15);
        let r = fourier_sum_bound_check(&g, &full, &full, &full, &full, &full).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12 && r.pass);
        let r = fourier_sum_bound_check(&g, &[2], &[7], &[1], &[4], &full).unwrap();
        assert!(r.pass && (r.rhs - 15.0).abs() < 1e-9);
        assert!(fourier_sum_bound_check(&g, &[2], &[7], &[1], &[4], &[0]).is_err());
    }

    #[test]
    fn translate_examples() {
        let g = z(11);
        let b = BohrSet::new(&g, vec![g.character(&[1]).unwrap()], 2.0).unwrap();
        let family = vec![b.clone(), b.dilate(0.9).unwrap()];
        let r = translate_dichotomy(&[], &all(11), &family, 0.125, 2)
            .unwrap()
            .unwrap();
        assert_eq!((r.x, r.verdict.clone()), (0, TranslateVerdict::Uniform));
        let r = translate_dichotomy(&all(11), &all(11), &family, 0.125, 2)
            .unwrap()
            .unwrap();
        assert_eq!(r.verdict, TranslateVerdict::Uniform);
        assert!(r.densities.iter().all(|&d| d == 1.0));
        // a lopsided set gains on a narrow dilate
        let narrow = vec![b.dilate(0.3).unwrap()];
        let r = translate_dichotomy(&[0, 1, 10], &all(11), &narrow, 0.125, 2)
            .unwrap()
            .unwrap();
        assert!(matches!(
            r.verdict,
            TranslateVerdict::Increment { index: 0, .. }
        ));
        assert!(translate_dichotomy(&[0], &all(11), &[], 0.1, 2).is_err());
    }

    #[test]
    fn increment_search_examples() {
        let g = z(101);
        let b = BohrSet::new(&g, vec![g.trivial_character()], 2.0).unwrap();
        let r = increment_search(&all(101), &b, 3, &IncrementConfig::default()).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.alpha, 1.0);
        assert_eq!(r.proportion, Some(1.0));

        // a short interval is far denser on a narrow Bohr set around 0
        let a: Vec<usize> = (0..10).chain(95..101).collect();
        let r = increment_search(&a, &b, 2, &IncrementConfig::default()).unwrap();
        let w = r.witness.unwrap();
        assert!(w.verified);
        assert!(w.density >= r.target);
        let alpha = ratio(a.len(), 101);
        assert!(verify_increment_witness(&g, &a, &alpha, 1.0 / 32.0, &w).unwrap());
    }
}
