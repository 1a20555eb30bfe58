//! Bohr sets `Bohr(Γ; ρ) = {x : |γ(x) − 1| ≤ ρ for all γ ∈ Γ}` as formal
//! pairs of a frequency list and a width.
//!
//! Every set carries its radius profile `r(x) = max_γ |γ(x) − 1|`, so the size
//! of any dilate is a binary search and regularity can be decided exactly.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::bitset::BitSet;
use crate::error::{bail, Error, Result};
use crate::exact::{product_le, rational};
use crate::group::{Character, FiniteAbelianGroup, MultiplicationMap};
use crate::harmonic::{convolution_power, Measure};

/// Resolution of the uniform grid scanned by [`find_regular_dilate`].
pub const DILATE_GRID_STEP: f64 = 1e-4;

/// Relative slack allowed in pointwise measure comparisons.
pub const DOMINATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug)]
struct RadiusProfile {
    radii: Vec<f64>,
    sorted: Vec<f64>,
}

impl RadiusProfile {
    fn from_radii(radii: Vec<f64>) -> Self {
        let mut sorted = radii.clone();
        sorted.sort_by(f64::total_cmp);
        RadiusProfile { radii, sorted }
    }

    fn count_le(&self, w: f64) -> usize {
        self.sorted.partition_point(|&r| r <= w)
    }

    fn count_lt(&self, w: f64) -> usize {
        self.sorted.partition_point(|&r| r < w)
    }
}

#[derive(Clone, Debug)]
pub struct BohrSet {
    group: FiniteAbelianGroup,
    frequencies: Vec<Character>,
    width: f64,
    profile: Arc<RadiusProfile>,
}

/// Outcome of [`BohrSet::is_regular`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Regularity {
    pub regular: bool,
    /// A `δ ∈ (0, 1/(100d)]` at which one of the defining inequalities fails.
    pub witness: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SizeBound {
    pub size: usize,
    pub lower_bound: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumsetGrowth {
    pub sumset_size: usize,
    pub size: usize,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domination {
    pub pass: bool,
    /// `min_{x ∈ B} 2(μ_{B_{1+kδ}} ∗ ν)(x) / μ_B(x)`; the check passes when this is at least 1.
    pub worst_ratio: f64,
    pub worst_point: usize,
}

/// Constant `c` gating `δ ≤ c/(kd)` in [`BohrSet::domination_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominationConfig {
    pub c: f64,
}

impl Default for DominationConfig {
    fn default() -> Self {
        DominationConfig { c: 0.01 }
    }
}

fn radius_of(group: &FiniteAbelianGroup, freq_idx: &[usize], x: usize) -> f64 {
    freq_idx
        .iter()
        .map(|&g| (group.eval_character_idx(g, x) - 1.0).norm())
        .fold(0.0, f64::max)
}

impl BohrSet {
    pub fn new(
        group: &FiniteAbelianGroup,
        frequencies: Vec<Character>,
        width: f64,
    ) -> Result<Self> {
        if frequencies.is_empty() {
            bail!(InvalidArgument, "a Bohr set needs at least one frequency");
        }
        check_width(width)?;
        let idx = frequencies
            .iter()
            .map(|g| group.character_index(g))
            .collect::<Result<Vec<_>>>()?;
        let radii = (0..group.order())
            .map(|x| radius_of(group, &idx, x))
            .collect();
        Ok(BohrSet {
            group: group.clone(),
            frequencies,
            width,
            profile: Arc::new(RadiusProfile::from_radii(radii)),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn frequencies(&self) -> &[Character] {
        &self.frequencies
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Number of frequencies, counted with multiplicity.
    pub fn rank(&self) -> usize {
        self.frequencies.len()
    }

    pub fn radius(&self, x: usize) -> f64 {
        self.profile.radii[x]
    }

    pub fn radii(&self) -> &[f64] {
        &self.profile.radii
    }

    pub fn contains(&self, x: usize) -> bool {
        self.profile.radii[x] <= self.width
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&x| self.contains(x))
            .collect()
    }

    pub fn member_bits(&self) -> BitSet {
        BitSet::from_indices(self.group.order(), self.members())
    }

    pub fn size(&self) -> usize {
        self.profile.count_le(self.width)
    }

    /// `|B_λ|`, computed from the sorted profile.
    pub fn dilate_size(&self, lambda: f64) -> usize {
        self.profile.count_le(lambda * self.width)
    }

    /// `μ(B) = |B|/|G|`.
    pub fn density(&self) -> f64 {
        self.size() as f64 / self.group.order() as f64
    }

    pub fn same_members(&self, other: &BohrSet) -> bool {
        self.group == other.group
            && (0..self.group.order()).all(|x| self.contains(x) == other.contains(x))
    }

    pub fn dilate(&self, delta: f64) -> Result<BohrSet> {
        if !(delta >= 0.0) || !delta.is_finite() {
            bail!(
                InvalidArgument,
                "dilation factor must be a finite nonnegative number, got {delta}"
            );
        }
        Ok(BohrSet {
            width: delta * self.width,
            ..self.clone()
        })
    }

    /// The formal image `Bohr({γψ⁻¹}; ρ)` of `B` under an invertible `ψ`.
    pub fn image_under(&self, psi: MultiplicationMap) -> Result<BohrSet> {
        let inv = psi.inverse(&self.group)?;
        let frequencies = self
            .frequencies
            .iter()
            .map(|g| self.group.compose_character_with_psi(g, inv.k))
            .collect::<Result<Vec<_>>>()?;
        BohrSet::new(&self.group, frequencies, self.width)
    }

    /// `Bohr(Γ ∪ Γ′; min(ρ, ρ′))`, keeping repeated frequencies.
    pub fn intersect(&self, other: &BohrSet) -> Result<BohrSet> {
        self.group.same_as(&other.group)?;
        let mut frequencies = self.frequencies.clone();
        frequencies.extend(other.frequencies.iter().cloned());
        let radii = self
            .profile
            .radii
            .iter()
            .zip(&other.profile.radii)
            .map(|(a, b)| a.max(*b))
            .collect();
        Ok(BohrSet {
            group: self.group.clone(),
            frequencies,
            width: self.width.min(other.width),
            profile: Arc::new(RadiusProfile::from_radii(radii)),
        })
    }

    /// Checks `|B| ≥ (ρ/8)^d |G|` in exact arithmetic.
    pub fn size_bound_check(&self) -> Result<SizeBound> {
        if !(0.0..=2.0).contains(&self.width) {
            bail!(
                PreconditionViolation,
                "size bound needs width in [0,2], got {}",
                self.width
            );
        }
        let d = self.rank() as u32;
        let size = self.size();
        let rho = rational(self.width)?;
        let order = BigRational::from_integer(BigInt::from(self.group.order()));
        let bound = Pow::pow(&(rho / BigRational::from_integer(BigInt::from(8))), d) * order;
        let pass = BigRational::from_integer(BigInt::from(size)) >= bound;
        let lower_bound = libm::pow(self.width / 8.0, d as f64) * self.group.order() as f64;
        Ok(SizeBound {
            size,
            lower_bound,
            pass,
        })
    }

    /// Decides
    /// `(1−100δd)|B| ≤ |B_{1−δ}| ≤ |B_{1+δ}| ≤ (1+100δd)|B|` for every `δ ∈ (0, 1/(100d)]`.
    ///
    /// Both dilate sizes are step functions of `δ`, so it suffices to test the
    /// radii lying within a factor `1 ± 1/(100d)` of the width.
    pub fn is_regular(&self) -> Regularity {
        let rho = self.width;
        if rho == 0.0 {
            return Regularity {
                regular: true,
                witness: None,
            };
        }
        let hundred_d = 100.0 * self.rank() as f64;
        let delta_max = 1.0 / hundred_d;
        let sorted = &self.profile.sorted;
        let size = self.profile.count_le(rho);
        let b = size as f64;

        // upper: the jump at radius r > ρ lands at δ = r/ρ − 1
        let mut i = size;
        while i < sorted.len() {
            let r = sorted[i];
            // r − ρ is exact for r ≤ 2ρ
            if r > 2.0 * rho || !product_le(&[hundred_d, r - rho], &[rho]) {
                break;
            }
            let c = self.profile.count_le(r);
            if !product_le(&[(c - size) as f64, rho], &[hundred_d, r - rho, b]) {
                return Regularity {
                    regular: false,
                    witness: Some((r - rho) / rho),
                };
            }
            i = c;
        }

        // lower: just past δ = 1 − r/ρ the dilate loses every radius ≥ r
        let mut j = size;
        while j > 0 {
            let r = sorted[j - 1];
            if r < 0.5 * rho || product_le(&[rho], &[hundred_d, rho - r]) {
                break;
            }
            let c = self.profile.count_lt(r);
            if !product_le(&[b - c as f64, rho], &[hundred_d, rho - r, b]) {
                let start = (rho - r) / rho;
                let end = if c > 0 {
                    ((rho - sorted[c - 1]) / rho).min(delta_max)
                } else {
                    delta_max
                };
                return Regularity {
                    regular: false,
                    witness: Some(0.5 * (start + end)),
                };
            }
            j = c;
        }
        Regularity {
            regular: true,
            witness: None,
        }
    }

    /// Checks `|B + B_δ| ≤ 2|B|` by computing the sumset.
    pub fn sumset_growth_check(&self, delta: f64) -> Result<SumsetGrowth> {
        let d = self.rank() as f64;
        if !(delta > 0.0 && delta <= 1.0 / (100.0 * d)) {
            bail!(
                PreconditionViolation,
                "sumset growth needs δ in (0, 1/(100d)], got {delta}"
            );
        }
        if !self.is_regular().regular {
            bail!(
                PreconditionViolation,
                "sumset growth needs a regular Bohr set"
            );
        }
        let small = self.dilate(delta)?.members();
        let sum = sumset(&self.group, &self.member_bits(), &small);
        let sumset_size = sum.count();
        let size = self.size();
        Ok(SumsetGrowth {
            sumset_size,
            size,
            pass: sumset_size <= 2 * size,
        })
    }

    /// Checks `μ_B ≤ 2(μ_{B_{1+kδ}} ∗ ν)` pointwise for a measure supported on `k·B_δ`.
    pub fn domination_check(
        &self,
        k: u32,
        delta: f64,
        nu: &Measure,
        config: &DominationConfig,
    ) -> Result<Domination> {
        self.group.same_as(nu.group())?;
        if k < 1 {
            bail!(InvalidArgument, "domination needs k >= 1");
        }
        let kd = k as f64 * self.rank() as f64;
        if !(delta > 0.0 && delta <= config.c / kd) {
            bail!(
                PreconditionViolation,
                "domination needs δ in (0, c/(kd)] with c = {}, got {delta}",
                config.c
            );
        }
        if !self.is_regular().regular {
            bail!(PreconditionViolation, "domination needs a regular Bohr set");
        }
        let allowed = iterated_sumset(&self.group, &self.dilate(delta)?.members(), k);
        if let Some(x) = nu.support().into_iter().find(|&x| !allowed.contains(x)) {
            bail!(
                PreconditionViolation,
                "measure has mass at element {x} outside the {k}-fold sumset of the dilate"
            );
        }
        Ok(self.domination_unchecked(k, delta, nu))
    }

    fn domination_unchecked(&self, k: u32, delta: f64, nu: &Measure) -> Domination {
        let g = &self.group;
        let wide = self
            .dilate(1.0 + k as f64 * delta)
            .expect("finite factor")
            .members();
        let inv_wide = 1.0 / wide.len() as f64;
        let mu_b = g.order() as f64 / self.size() as f64;
        let mut worst = Domination {
            pass: true,
            worst_ratio: f64::INFINITY,
            worst_point: 0,
        };
        for x in self.members() {
            let conv: f64 = wide.iter().map(|&y| nu.at(g.sub_idx(x, y))).sum::<f64>() * inv_wide;
            let ratio = 2.0 * conv / mu_b;
            if ratio < worst.worst_ratio {
                worst.worst_ratio = ratio;
                worst.worst_point = x;
            }
        }
        worst.pass = worst.worst_ratio >= 1.0 - DOMINATION_TOLERANCE;
        worst
    }

    /// Largest `δ` in `grid` for which domination holds with `ν = μ_{B_δ}^{(k)}`.
    ///
    /// Returns `(δ, δkd)`; the second entry is the constant the run supports.
    pub fn domination_scan(&self, k: u32, grid: &[f64]) -> Result<Option<(f64, f64)>> {
        if k < 1 {
            bail!(InvalidArgument, "domination needs k >= 1");
        }
        if !self.is_regular().regular {
            bail!(PreconditionViolation, "domination needs a regular Bohr set");
        }
        let mut best: Option<f64> = None;
        for &delta in grid {
            if !(delta > 0.0) || best.is_some_and(|b| delta <= b) {
                continue;
            }
            let small = self.dilate(delta)?.members();
            let base = Measure::normalized_indicator(&self.group, &small)?;
            let nu = convolution_power(&base, k)?;
            if self.domination_unchecked(k, delta, &nu).pass {
                best = Some(delta);
            }
        }
        Ok(best.map(|d| (d, d * k as f64 * self.rank() as f64)))
    }
}

fn check_width(width: f64) -> Result<()> {
    if !(width >= 0.0) || !width.is_finite() {
        bail!(
            InvalidArgument,
            "width must be a finite nonnegative number, got {width}"
        );
    }
    Ok(())
}

fn sumset(group: &FiniteAbelianGroup, a: &BitSet, b: &[usize]) -> BitSet {
    let mut out = BitSet::new(group.order());
    for x in a.iter() {
        for &y in b {
            out.insert(group.add_idx(x, y));
        }
    }
    out
}

/// `kS = S + … + S` (`k ≥ 1` summands).
pub fn iterated_sumset(group: &FiniteAbelianGroup, set: &[usize], k: u32) -> BitSet {
    let mut acc = BitSet::from_indices(group.order(), set.iter().copied());
    for _ in 1..k {
        acc = sumset(group, &acc, set);
    }
    acc
}

/// Searches `δ ∈ [1/2, 1]` with `B_δ` regular.
///
/// Tries `1/2`, then a uniform grid, then the midpoints of gaps between
/// consecutive radii in `[ρ/2, ρ]`.
pub fn find_regular_dilate(b: &BohrSet) -> Result<f64> {
    let steps = libm::round(0.5 / DILATE_GRID_STEP) as usize;
    let grid = (0..=steps).map(|j| 0.5 + j as f64 * DILATE_GRID_STEP);
    let rho = b.width;
    let sorted = &b.profile.sorted;
    let lo = sorted.partition_point(|&r| r < 0.5 * rho);
    let hi = sorted.partition_point(|&r| r <= rho);
    let mut gaps = Vec::new();
    let mut prev = 0.5 * rho;
    for &r in &sorted[lo..hi] {
        if r > prev {
            gaps.push(0.5 * (prev + r) / rho);
            prev = r;
        }
    }
    if rho > prev {
        gaps.push(0.5 * (prev + rho) / rho);
    }
    for delta in grid.chain(gaps) {
        let delta = delta.clamp(0.5, 1.0);
        if b.dilate(delta)?.is_regular().regular {
            return Ok(delta);
        }
    }
    Err(Error::NumericalAnomaly(alloc::format!(
        "no regular dilate found in [1/2, 1] for width {rho} and rank {}",
        b.rank()
    )))
}

/// One step of frequency-set growth, `Γ ↦ Γ ∪ Γψ₂^σ ∪ Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyStep {
    pub added: Vec<Character>,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FrequencyHistory {
    pub initial: Vec<Character>,
    pub steps: Vec<FrequencyStep>,
}

/// Where a frequency comes from: `source ψ₂^power` with `source ∈ Δ_step`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitCertificate {
    pub character: Character,
    pub step: usize,
    pub source: Character,
    pub power: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFrequencies {
    pub frequencies: Vec<Character>,
    pub certificates: Vec<OrbitCertificate>,
    /// Characters no orbit of the history accounts for.
    pub uncovered: Vec<Character>,
    /// `Σ_r (2(s−r)+1)|Δ_r|`.
    pub rank_bound: usize,
}

/// Replays a history from `Δ_0`, keeping repeated characters.
pub fn evolve_frequency_set(
    group: &FiniteAbelianGroup,
    history: &FrequencyHistory,
) -> Result<Vec<Character>> {
    let mut gamma = history.initial.clone();
    for step in &history.steps {
        if step.sign != 1 && step.sign != -1 {
            bail!(InvalidArgument, "step sign must be ±1, got {}", step.sign);
        }
        let shifted = gamma
            .iter()
            .map(|g| group.compose_with_psi2_power(g, step.sign))
            .collect::<Result<Vec<_>>>()?;
        gamma.extend(shifted);
        gamma.extend(step.added.iter().cloned());
    }
    Ok(gamma)
}

/// Removes repeated characters (first occurrence kept) and certifies that
/// each lies in `⋃_r {γψ₂^a : γ ∈ Δ_r, |a| ≤ s−r}`.
pub fn canonical_frequency_set(
    group: &FiniteAbelianGroup,
    gamma: &[Character],
    history: &FrequencyHistory,
) -> Result<CanonicalFrequencies> {
    let s = history.steps.len();
    let layers: Vec<&[Character]> = core::iter::once(&history.initial[..])
        .chain(history.steps.iter().map(|st| &st.added[..]))
        .collect();
    let rank_bound = layers
        .iter()
        .enumerate()
        .map(|(r, delta)| (2 * (s - r) + 1) * delta.len())
        .sum();

    let mut orbit: BTreeMap<Character, (usize, Character, i64)> = BTreeMap::new();
    for (r, delta) in layers.iter().enumerate() {
        let reach = (s - r) as i64;
        let low = if group.is_odd_order() { -reach } else { 0 };
        for src in delta.iter() {
            for a in low..=reach {
                let c = group.compose_with_psi2_power(src, a)?;
                orbit.entry(c).or_insert_with(|| (r, src.clone(), a));
            }
        }
    }

    let mut seen = BTreeMap::new();
    let mut frequencies = Vec::new();
    for g in gamma {
        group.character_index(g)?;
        if seen.insert(g.clone(), ()).is_none() {
            frequencies.push(g.clone());
        }
    }
    let mut certificates = Vec::new();
    let mut uncovered = Vec::new();
    for g in &frequencies {
        match orbit.get(g) {
            Some((step, source, power)) => certificates.push(OrbitCertificate {
                character: g.clone(),
                step: *step,
                source: source.clone(),
                power: *power,
            }),
            None => uncovered.push(g.clone()),
        }
    }
    Ok(CanonicalFrequencies {
        frequencies,
        certificates,
        uncovered,
        rank_bound,
    })
}

/// Characters whose index is listed, in order.
pub fn characters_from_indices(group: &FiniteAbelianGroup, idx: &[usize]) -> Vec<Character> {
    idx.iter().map(|&i| group.character_at(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn bohr(g: &FiniteAbelianGroup, coeffs: &[&[i64]], width: f64) -> BohrSet {
        let freqs = coeffs.iter().map(|c| g.character(c).unwrap()).collect();
        BohrSet::new(g, freqs, width).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = z(7);
        let b = bohr(&g, &[&[1]], 1.0);
        assert_eq!(b.members(), vec![0, 1, 6]);
        let t = bohr(&g, &[&[0]], 0.0);
        assert_eq!(t.size(), 7);
        let full = bohr(&g, &[&[3]], 2.0);
        assert_eq!(full.size(), 7);
        assert!(BohrSet::new(&g, vec![g.character(&[1]).unwrap()], -0.1).is_err());
        assert!(BohrSet::new(&g, vec![], 1.0).is_err());
    }

    #[test]
    fn dilate_examples() {
        let g = z(7);
        let b = bohr(&g, &[&[1]], 1.0);
        assert!(b.dilate(1.0).unwrap().same_members(&b));
        assert_eq!(b.dilate(0.5).unwrap().members(), vec![0]);
        assert_eq!(b.dilate(0.0).unwrap().members(), vec![0]);
        let prod = FiniteAbelianGroup::new(&[3, 5]).unwrap();
        let k = bohr(&prod, &[&[1, 0]], 1.0);
        assert_eq!(k.dilate(0.0).unwrap().size(), 5);
        assert_eq!(b.dilate_size(0.5), 1);
        assert!(b.dilate(-1.0).is_err());
    }

    #[test]
    fn image_examples() {
        let g = z(7);
        let b = bohr(&g, &[&[1]], 1.0);
        assert!(b
            .image_under(MultiplicationMap::new(1))
            .unwrap()
            .same_members(&b));
        let img = b.image_under(MultiplicationMap::new(2)).unwrap();
        assert_eq!(img.members(), vec![0, 2, 5]);
        assert!(b.image_under(MultiplicationMap::new(7)).is_err());
    }

    #[test]
    fn intersect_examples() {
        let g = z(7);
        let b = bohr(&g, &[&[1]], 1.0);
        let bb = b.intersect(&b).unwrap();
        assert_eq!(bb.rank(), 2);
        assert!(bb.same_members(&b));
        let all = bohr(&g, &[&[0]], 2.0);
        assert!(b.intersect(&all).unwrap().same_members(&b));
        let c = bohr(&g, &[&[2]], 1.0);
        assert_eq!(c.members(), vec![0, 3, 4]);
        assert_eq!(b.intersect(&c).unwrap().members(), vec![0]);
    }

    #[test]
    fn size_bound_examples() {
        let g = z(7);
        let r = bohr(&g, &[&[1]], 1.0).size_bound_check().unwrap();
        assert_eq!(r.size, 3);
        assert!((r.lower_bound - 0.875).abs() < 1e-15);
        assert!(r.pass);
        assert!(bohr(&g, &[&[0]], 2.0).size_bound_check().unwrap().pass);
        let zero = bohr(&g, &[&[1]], 0.0).size_bound_check().unwrap();
        assert!(zero.pass && zero.lower_bound == 0.0);
        assert!(bohr(&g, &[&[1]], 2.5).size_bound_check().is_err());
    }

    #[test]
    fn regularity_examples() {
        let g = z(7);
        assert!(bohr(&g, &[&[0]], 1.0).is_regular().regular);
        assert!(bohr(&g, &[&[1]], 1.0).is_regular().regular);
        // width sits on a radius: the lower dilates lose it at once
        let r1 = bohr(&g, &[&[1]], 1.0).radius(1);
        let on = bohr(&g, &[&[1]], r1).is_regular();
        assert!(!on.regular);
        let w = on.witness.unwrap();
        assert!(w > 0.0 && w <= 0.01);
        // just below the radius: the upper dilates gain it at once
        let below = bohr(&g, &[&[1]], r1 * (1.0 - 1e-6)).is_regular();
        assert!(!below.regular);
        let w = below.witness.unwrap();
        assert!(w > 0.0 && w <= 0.01);
        let witness_dilate = bohr(&g, &[&[1]], r1 * (1.0 - 1e-6)).dilate_size(1.0 + w);
        assert!(witness_dilate as f64 > (1.0 + 100.0 * w) * 1.0);
    }

    #[test]
    fn regular_dilate_examples() {
        let g = z(7);
        assert_eq!(find_regular_dilate(&bohr(&g, &[&[0]], 1.0)).unwrap(), 0.5);
        let b = bohr(&g, &[&[1]], 2.0);
        let d = find_regular_dilate(&b).unwrap();
        assert!((0.5..=1.0).contains(&d));
        assert!(b.dilate(d).unwrap().is_regular().regular);
    }

    #[test]
    fn sumset_growth_examples() {
        let g = z(7);
        let t = bohr(&g, &[&[0]], 1.0).sumset_growth_check(0.01).unwrap();
        assert_eq!((t.sumset_size, t.size, t.pass), (7, 7, true));
        let g = z(101);
        let b = bohr(&g, &[&[1]], 1.0);
        let b = b.dilate(find_regular_dilate(&b).unwrap()).unwrap();
        assert!(b.sumset_growth_check(1.0 / 200.0).unwrap().pass);
        assert!(b.sumset_growth_check(1.0 / 100.0).unwrap().pass);
        assert!(b.sumset_growth_check(0.02).is_err());
    }

    #[test]
    fn domination_examples() {
        let g = z(101);
        let b = bohr(&g, &[&[1]], 1.0);
        let b = b.dilate(find_regular_dilate(&b).unwrap()).unwrap();
        let cfg = DominationConfig::default();
        let point = Measure::point_mass(&g, 0).unwrap();
        let r = b.domination_check(2, 0.005, &point, &cfg).unwrap();
        assert_eq!(r.pass, b.dilate_size(1.01) <= 2 * b.size());
        assert!(r.pass);
        let small = Measure::normalized_indicator(&g, &b.dilate(0.005).unwrap().members()).unwrap();
        let nu = small.convolve(&small).unwrap();
        assert!(b.domination_check(2, 0.005, &nu, &cfg).unwrap().pass);
        let outside = Measure::point_mass(&g, 50).unwrap();
        assert!(b.domination_check(2, 0.005, &outside, &cfg).is_err());
        assert!(b.domination_check(2, 0.01, &point, &cfg).is_err());

        let whole = bohr(&g, &[&[0]], 1.0);
        let r = whole
            .domination_check(1, 0.01, &Measure::uniform(&g), &cfg)
            .unwrap();
        assert!(r.pass && (r.worst_ratio - 2.0).abs() < 1e-12);

        let (d, c) = b.domination_scan(2, &[0.001, 0.005, 0.1]).unwrap().unwrap();
        assert!(d >= 0.005);
        assert!((c - d * 2.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_frequency_examples() {
        let g = z(7);
        let triv = g.trivial_character();
        let history = FrequencyHistory {
            initial: vec![triv.clone()],
            steps: vec![FrequencyStep {
                added: vec![],
                sign: 1,
            }],
        };
        let gamma = evolve_frequency_set(&g, &history).unwrap();
        assert_eq!(gamma.len(), 2);
        let c = canonical_frequency_set(&g, &gamma, &history).unwrap();
        assert_eq!(c.frequencies, vec![triv]);
        assert!(c.uncovered.is_empty());

        let ch = |a: i64| g.character(&[a]).unwrap();
        let history = FrequencyHistory {
            initial: vec![ch(1)],
            steps: vec![
                FrequencyStep {
                    added: vec![ch(3)],
                    sign: 1,
                },
                FrequencyStep {
                    added: vec![ch(5)],
                    sign: -1,
                },
            ],
        };
        let gamma = evolve_frequency_set(&g, &history).unwrap();
        let c = canonical_frequency_set(&g, &gamma, &history).unwrap();
        assert_eq!(c.rank_bound, 9);
        assert!(c.frequencies.len() <= 9);
        assert!(c.uncovered.is_empty());
        for cert in &c.certificates {
            let back = g.compose_with_psi2_power(&cert.source, cert.power).unwrap();
            assert_eq!(back, cert.character);
            assert!(cert.power.unsigned_abs() as usize <= 2 - cert.step);
        }

        let dup = vec![ch(1), ch(1), ch(2)];
        let h = FrequencyHistory {
            initial: vec![ch(1), ch(2)],
            steps: vec![],
        };
        let c = canonical_frequency_set(&g, &dup, &h).unwrap();
        assert_eq!(c.frequencies, vec![ch(1), ch(2)]);
        let b1 = BohrSet::new(&g, dup, 1.0).unwrap();
        let b2 = BohrSet::new(&g, c.frequencies, 1.0).unwrap();
        assert!(b1.same_members(&b2));
    }
}
