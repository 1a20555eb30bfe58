//! Functions and probability measures on a finite abelian group.
//!
//! Averages on `G` are normalized (`E_x = |G|^{-1} Σ_x`), the dual group
//! carries counting measure. A [`Measure`] is a nonnegative function with
//! average 1, so `μ(A) = E_x 1_A(x) μ(x)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::group::{root_of_unity, Character, FiniteAbelianGroup};

/// Deviation of a measure's mean from 1 that is silently renormalized.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Slack used when deciding large-spectrum membership.
pub const SPECTRUM_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicConfig {
    /// Group orders at or below this use direct summation for convolutions.
    pub fourier_cutoff: usize,
}

impl Default for HarmonicConfig {
    fn default() -> Self {
        HarmonicConfig {
            fourier_cutoff: 512,
        }
    }
}

/// A complex-valued table indexed by element index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseFunction {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

/// A probability density with respect to the uniform measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    group: FiniteAbelianGroup,
    values: Vec<f64>,
}

/// Exponent of an `L^p` norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

/// Fourier coefficients `f̂(γ)`, indexed like the characters of the group.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierTable {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

fn check_set(group: &FiniteAbelianGroup, set: &[usize]) -> Result<()> {
    if let Some(&x) = set.iter().find(|&&x| x >= group.order()) {
        bail!(
            GroupMismatch,
            "element index {x} outside group of order {}",
            group.order()
        );
    }
    Ok(())
}

impl DenseFunction {
    pub fn new(group: &FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            bail!(
                InvalidArgument,
                "table has {} entries, group has order {}",
                values.len(),
                group.order()
            );
        }
        Ok(DenseFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn from_real(group: &FiniteAbelianGroup, values: &[f64]) -> Result<Self> {
        Self::new(
            group,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        DenseFunction {
            group: group.clone(),
            values: vec![c; group.order()],
        }
    }

    /// `1_S`.
    pub fn indicator(group: &FiniteAbelianGroup, set: &[usize]) -> Result<Self> {
        check_set(group, set)?;
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        for &x in set {
            values[x] = Complex64::new(1.0, 0.0);
        }
        Ok(DenseFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        DenseFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        let g = &self.group;
        DenseFunction {
            group: g.clone(),
            values: (0..g.order()).map(|x| self.values[g.neg_idx(x)]).collect(),
        }
    }

    pub fn sub(&self, other: &DenseFunction) -> Result<Self> {
        self.group.same_as(&other.group)?;
        Ok(DenseFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn abs_pow(&self, p: f64) -> Self {
        self.map(|v| Complex64::new(libm::pow(v.norm(), p), 0.0))
    }

    pub fn max_abs_diff(&self, other: &DenseFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Measure {
    /// Accepts a nonnegative table whose mean is within [`MASS_TOLERANCE`] of 1,
    /// renormalizing it exactly to mean 1.
    pub fn new(group: &FiniteAbelianGroup, values: Vec<f64>) -> Result<Self> {
        if values.len() != group.order() {
            bail!(
                InvalidArgument,
                "table has {} entries, group has order {}",
                values.len(),
                group.order()
            );
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            bail!(
                InvalidArgument,
                "measure value {v} is not a finite nonnegative number"
            );
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        if (mean - 1.0).abs() >= MASS_TOLERANCE {
            bail!(InvalidArgument, "measure has average {mean}, expected 1");
        }
        let values = if mean == 1.0 {
            values
        } else {
            values.into_iter().map(|v| v / mean).collect()
        };
        Ok(Measure {
            group: group.clone(),
            values,
        })
    }

    pub fn uniform(group: &FiniteAbelianGroup) -> Self {
        Measure {
            group: group.clone(),
            values: vec![1.0; group.order()],
        }
    }

    /// `μ_S = μ(S)^{-1} 1_S`; duplicate indices are ignored.
    pub fn normalized_indicator(group: &FiniteAbelianGroup, set: &[usize]) -> Result<Self> {
        check_set(group, set)?;
        let mut member = vec![false; group.order()];
        for &x in set {
            member[x] = true;
        }
        let size = member.iter().filter(|&&m| m).count();
        if size == 0 {
            bail!(InvalidArgument, "normalized indicator of an empty set");
        }
        let h = group.order() as f64 / size as f64;
        Ok(Measure {
            group: group.clone(),
            values: member.iter().map(|&m| if m { h } else { 0.0 }).collect(),
        })
    }

    pub fn point_mass(group: &FiniteAbelianGroup, x: usize) -> Result<Self> {
        Self::normalized_indicator(group, &[x])
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> f64 {
        self.values[x]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&x| self.values[x] > 0.0)
            .collect()
    }

    /// `μ(A) = E_x 1_A(x) μ(x)`.
    pub fn mass_of(&self, set: &[usize]) -> Result<f64> {
        check_set(&self.group, set)?;
        let mut member = vec![false; self.group.order()];
        for &x in set {
            member[x] = true;
        }
        Ok(member
            .iter()
            .zip(&self.values)
            .filter(|(m, _)| **m)
            .map(|(_, v)| v)
            .sum::<f64>()
            / self.group.order() as f64)
    }

    pub fn to_function(&self) -> DenseFunction {
        DenseFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
        }
    }

    pub fn translate(&self, x: usize) -> Measure {
        let g = &self.group;
        Measure {
            group: g.clone(),
            values: (0..g.order())
                .map(|y| self.values[g.sub_idx(y, x)])
                .collect(),
        }
    }

    /// Rebuilds a measure from a numerically computed density, zeroing
    /// round-off negatives before renormalizing.
    fn from_computed(f: &DenseFunction) -> Result<Measure> {
        let values = f
            .values
            .iter()
            .map(|v| if v.re < 0.0 { 0.0 } else { v.re })
            .collect();
        Measure::new(&f.group, values)
    }

    pub fn convolve(&self, other: &Measure) -> Result<Measure> {
        Measure::from_computed(&convolve(&self.to_function(), &other.to_function())?)
    }
}

impl FourierTable {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, g: &Character) -> Result<Complex64> {
        Ok(self.values[self.group.character_index(g)?])
    }

    #[inline]
    pub fn at(&self, index: usize) -> Complex64 {
        self.values[index]
    }

    /// `Σ_γ |f̂(γ)|`.
    pub fn l1_sum(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    /// `Σ_γ |f̂(γ)|²`.
    pub fn l2_sum_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// In-place transform along every axis: `out[c] = Σ_x in[x] e(sign · c x / n)`.
fn transform_axes(group: &FiniteAbelianGroup, data: &mut [Complex64], sign: i64) {
    let moduli = group.moduli();
    let order = group.order();
    let mut inner = order;
    let mut scratch: Vec<Complex64> = Vec::new();
    let mut line: Vec<Complex64> = Vec::new();
    for &m in moduli {
        let n = m as usize;
        inner /= n;
        if n == 1 {
            continue;
        }
        let twiddle: Vec<Complex64> = (0..n as u64)
            .map(|t| {
                let a = if sign < 0 { (m - t) % m } else { t };
                root_of_unity(a, m)
            })
            .collect();
        let outer = order / (n * inner);
        scratch.resize(n, Complex64::new(0.0, 0.0));
        line.resize(n, Complex64::new(0.0, 0.0));
        for o in 0..outer {
            for i in 0..inner {
                let base = o * n * inner + i;
                for (x, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + x * inner];
                }
                for (c, out) in scratch.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let mut t = 0usize;
                    for v in line.iter() {
                        acc += v * twiddle[t];
                        t += c;
                        if t >= n {
                            t -= n;
                        }
                    }
                    *out = acc;
                }
                for (c, v) in scratch.iter().enumerate() {
                    data[base + c * inner] = *v;
                }
            }
        }
    }
}

/// `f̂(γ) = E_x f(x) conj(γ(x))`.
pub fn fourier(f: &DenseFunction) -> FourierTable {
    let mut data = f.values.clone();
    transform_axes(&f.group, &mut data, -1);
    let n = f.group.order() as f64;
    for v in data.iter_mut() {
        *v /= n;
    }
    FourierTable {
        group: f.group.clone(),
        values: data,
    }
}

/// `f(x) = Σ_γ f̂(γ) γ(x)`.
pub fn inverse_fourier(table: &FourierTable) -> DenseFunction {
    let mut data = table.values.clone();
    transform_axes(&table.group, &mut data, 1);
    DenseFunction {
        group: table.group.clone(),
        values: data,
    }
}

/// `(f∗g)(x) = E_y f(y) g(x−y)`.
pub fn convolve(f: &DenseFunction, g: &DenseFunction) -> Result<DenseFunction> {
    convolve_with(f, g, &HarmonicConfig::default())
}

pub fn convolve_with(
    f: &DenseFunction,
    g: &DenseFunction,
    config: &HarmonicConfig,
) -> Result<DenseFunction> {
    f.group.same_as(&g.group)?;
    if f.group.order() <= config.fourier_cutoff {
        Ok(convolve_direct(f, g))
    } else {
        Ok(convolve_spectral(f, g, false))
    }
}

/// `(f∘g)(x) = E_y f(y) conj(g(y−x))`.
pub fn diff_convolve(f: &DenseFunction, g: &DenseFunction) -> Result<DenseFunction> {
    diff_convolve_with(f, g, &HarmonicConfig::default())
}

pub fn diff_convolve_with(
    f: &DenseFunction,
    g: &DenseFunction,
    config: &HarmonicConfig,
) -> Result<DenseFunction> {
    f.group.same_as(&g.group)?;
    if f.group.order() <= config.fourier_cutoff {
        Ok(diff_convolve_direct(f, g))
    } else {
        Ok(convolve_spectral(f, g, true))
    }
}

fn convolve_direct(f: &DenseFunction, g: &DenseFunction) -> DenseFunction {
    let grp = &f.group;
    let n = grp.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (y, &fy) in f.values.iter().enumerate() {
        if fy == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (z, &gz) in g.values.iter().enumerate() {
            out[grp.add_idx(y, z)] += fy * gz;
        }
    }
    for v in out.iter_mut() {
        *v /= n as f64;
    }
    DenseFunction {
        group: grp.clone(),
        values: out,
    }
}

fn diff_convolve_direct(f: &DenseFunction, g: &DenseFunction) -> DenseFunction {
    let grp = &f.group;
    let n = grp.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    // x = y - z where z = y - x ranges over supp g
    for (y, &fy) in f.values.iter().enumerate() {
        if fy == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (z, &gz) in g.values.iter().enumerate() {
            out[grp.sub_idx(y, z)] += fy * gz.conj();
        }
    }
    for v in out.iter_mut() {
        *v /= n as f64;
    }
    DenseFunction {
        group: grp.clone(),
        values: out,
    }
}

fn convolve_spectral(f: &DenseFunction, g: &DenseFunction, difference: bool) -> DenseFunction {
    let ff = fourier(f);
    let gf = fourier(g);
    let values = ff
        .values
        .iter()
        .zip(&gf.values)
        .map(|(a, b)| if difference { a * b.conj() } else { a * b })
        .collect();
    inverse_fourier(&FourierTable {
        group: f.group.clone(),
        values,
    })
}

/// `‖f‖_{L^p(μ)}`, with `μ` uniform when `weight` is `None`.
pub fn lp_norm(f: &DenseFunction, p: Exponent, weight: Option<&Measure>) -> Result<f64> {
    if let Some(w) = weight {
        f.group.same_as(&w.group)?;
    }
    let w = |x: usize| weight.map_or(1.0, |m| m.values[x]);
    match p {
        Exponent::Infinity => Ok((0..f.values.len())
            .filter(|&x| w(x) > 0.0)
            .map(|x| f.values[x].norm())
            .fold(0.0, f64::max)),
        Exponent::Finite(p) => {
            if !(p >= 1.0) {
                bail!(InvalidArgument, "L^p norm needs p >= 1, got {p}");
            }
            let n = f.values.len() as f64;
            let s: f64 = f
                .values
                .iter()
                .enumerate()
                .map(|(x, v)| {
                    let wx = w(x);
                    if wx == 0.0 {
                        0.0
                    } else {
                        libm::pow(v.norm(), p) * wx
                    }
                })
                .sum();
            Ok(libm::pow(s / n, 1.0 / p))
        }
    }
}

/// `⟨f, g⟩_{L²(μ)} = E_x f(x) conj(g(x)) μ(x)`.
pub fn inner(f: &DenseFunction, g: &DenseFunction, weight: Option<&Measure>) -> Result<Complex64> {
    f.group.same_as(&g.group)?;
    if let Some(w) = weight {
        f.group.same_as(&w.group)?;
    }
    let s: Complex64 = f
        .values
        .iter()
        .zip(&g.values)
        .enumerate()
        .map(|(x, (a, b))| a * b.conj() * weight.map_or(1.0, |m| m.values[x]))
        .sum();
    Ok(s / f.values.len() as f64)
}

/// `(τ_x f)(y) = f(y − x)`.
pub fn translate(f: &DenseFunction, x: usize) -> Result<DenseFunction> {
    let g = &f.group;
    check_set(g, &[x])?;
    Ok(DenseFunction {
        group: g.clone(),
        values: (0..g.order()).map(|y| f.values[g.sub_idx(y, x)]).collect(),
    })
}

/// `{γ : |μ̂(γ)| ≥ threshold}` in character-index order.
pub fn spectrum(mu: &Measure, threshold: f64) -> Result<Vec<Character>> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        bail!(
            InvalidArgument,
            "spectrum threshold must lie in (0,1], got {threshold}"
        );
    }
    let table = fourier(&mu.to_function());
    Ok((0..table.values.len())
        .filter(|&i| table.values[i].norm() >= threshold - SPECTRUM_SLACK)
        .map(|i| mu.group.character_at(i))
        .collect())
}

/// `μ^{(k)} = μ ∗ … ∗ μ` (`k` factors), computed on the Fourier side.
pub fn convolution_power(mu: &Measure, k: u32) -> Result<Measure> {
    if k < 1 {
        bail!(InvalidArgument, "convolution power needs k >= 1");
    }
    if k == 1 {
        return Ok(mu.clone());
    }
    let mut table = fourier(&mu.to_function());
    for v in table.values.iter_mut() {
        *v = v.powu(k);
    }
    Measure::from_computed(&inverse_fourier(&table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn reals(f: &DenseFunction) -> Vec<f64> {
        f.values().iter().map(|v| v.re).collect()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-12, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn normalized_indicator_examples() {
        let g = z(4);
        let mu = Measure::normalized_indicator(&g, &[0, 1]).unwrap();
        assert_eq!(mu.values(), &[2.0, 2.0, 0.0, 0.0]);
        assert_eq!(mu.mass_of(&[0]).unwrap(), 0.5);
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(
            Measure::normalized_indicator(&g, &all).unwrap().values(),
            &[1.0; 4]
        );
        let g7 = z(7);
        let mu = Measure::normalized_indicator(&g7, &[0, 1, 6]).unwrap();
        assert_eq!(mu.at(6), 7.0 / 3.0);
        assert!(Measure::normalized_indicator(&g7, &[]).is_err());
    }

    #[test]
    fn measure_constructor_renormalizes_or_rejects() {
        let g = z(2);
        let m = Measure::new(&g, vec![1.0 + 1e-10, 1.0]).unwrap();
        assert!((m.values().iter().sum::<f64>() / 2.0 - 1.0).abs() < 1e-15);
        assert!(Measure::new(&g, vec![1.5, 1.0]).is_err());
        assert!(Measure::new(&g, vec![-0.5, 2.5]).is_err());
    }

    #[test]
    fn convolution_examples() {
        let g = z(4);
        let mu = Measure::normalized_indicator(&g, &[0, 1])
            .unwrap()
            .to_function();
        let c = convolve(&mu, &mu).unwrap();
        assert_close(&reals(&c), &[1.0, 2.0, 1.0, 0.0]);

        let f = DenseFunction::from_real(&g, &[1.0, -2.0, 0.5, 3.0]).unwrap();
        let delta = Measure::point_mass(&g, 0).unwrap().to_function();
        assert_close(&reals(&convolve(&f, &delta).unwrap()), &reals(&f));

        let one = DenseFunction::constant(&g, Complex64::new(1.0, 0.0));
        let m = f.mean().re;
        assert_close(&reals(&convolve(&one, &f).unwrap()), &[m; 4]);

        let d = diff_convolve(&mu, &mu).unwrap();
        assert!((d.at(0).re - 2.0).abs() < 1e-12);
        assert_close(&reals(&diff_convolve(&f, &one).unwrap()), &[m; 4]);
        let sym = DenseFunction::from_real(&g, &[1.0, 2.0, 5.0, 2.0]).unwrap();
        assert!(
            diff_convolve(&f, &sym)
                .unwrap()
                .max_abs_diff(&convolve(&f, &sym.reflect()).unwrap())
                < 1e-12
        );
    }

    #[test]
    fn spectral_path_matches_direct_path() {
        let g = FiniteAbelianGroup::new(&[4, 9]).unwrap();
        let f = DenseFunction::new(
            &g,
            (0..36)
                .map(|i| Complex64::new(libm::sin(i as f64), libm::cos(3.0 * i as f64)))
                .collect(),
        )
        .unwrap();
        let h = f.map(|v| v * v + Complex64::new(0.25, -1.0));
        let spectral = HarmonicConfig { fourier_cutoff: 0 };
        let a = convolve(&f, &h).unwrap();
        let b = convolve_with(&f, &h, &spectral).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-9);
        let a = diff_convolve(&f, &h).unwrap();
        let b = diff_convolve_with(&f, &h, &spectral).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-9);
    }

    #[test]
    fn fourier_examples() {
        let g = z(2);
        let f = DenseFunction::indicator(&g, &[0]).unwrap();
        let t = fourier(&f);
        assert_close(
            &t.values().iter().map(|v| v.re).collect::<Vec<_>>(),
            &[0.5, 0.5],
        );
        assert!((t.l2_sum_sq() - 0.5).abs() < 1e-15);
        let c = DenseFunction::constant(&z(5), Complex64::new(2.0, 1.0));
        let t = fourier(&c);
        assert!((t.at(0) - Complex64::new(2.0, 1.0)).norm() < 1e-12);
        assert!(t.values()[1..].iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn norm_examples() {
        let g = z(4);
        let c = DenseFunction::constant(&g, Complex64::new(0.0, -3.0));
        for p in [1.0, 2.0, 3.5] {
            assert!((lp_norm(&c, Exponent::Finite(p), None).unwrap() - 3.0).abs() < 1e-12);
        }
        assert_eq!(lp_norm(&c, Exponent::Infinity, None).unwrap(), 3.0);
        let f = DenseFunction::from_real(&g, &[1.0, 2.0, 1.0, 0.0]).unwrap();
        assert!((lp_norm(&f, Exponent::Finite(1.0), None).unwrap() - 1.0).abs() < 1e-15);
        let point = Measure::point_mass(&g, 0).unwrap();
        let h = DenseFunction::from_real(&g, &[-1.5, 7.0, 2.0, 0.0]).unwrap();
        for p in [
            Exponent::Finite(1.0),
            Exponent::Finite(2.0),
            Exponent::Finite(5.0),
            Exponent::Infinity,
        ] {
            assert!((lp_norm(&h, p, Some(&point)).unwrap() - 1.5).abs() < 1e-12);
        }
        assert!(lp_norm(&h, Exponent::Finite(0.5), None).is_err());
    }

    #[test]
    fn inner_examples() {
        let g = z(4);
        let f = DenseFunction::from_real(&g, &[1.0, 2.0, 1.0, 0.0]).unwrap();
        let n2 = lp_norm(&f, Exponent::Finite(2.0), None).unwrap();
        assert!((inner(&f, &f, None).unwrap().re - n2 * n2).abs() < 1e-12);
        let one = DenseFunction::constant(&g, Complex64::new(1.0, 0.0));
        let mu = Measure::normalized_indicator(&g, &[0, 1])
            .unwrap()
            .to_function();
        let c = convolve(&mu, &mu).unwrap();
        assert!((inner(&c, &one, None).unwrap().re - 1.0).abs() < 1e-12);
        let ind = DenseFunction::indicator(&g, &[1]).unwrap();
        assert!((inner(&c, &ind, None).unwrap().re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn translate_examples() {
        let g = z(4);
        let f = DenseFunction::from_real(&g, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(translate(&f, 0).unwrap(), f);
        assert_eq!(reals(&translate(&f, 1).unwrap()), vec![0.0, 1.0, 0.0, 0.0]);
        let h = DenseFunction::from_real(&g, &[3.0, 1.0, 4.0, 1.5]).unwrap();
        assert_eq!(translate(&translate(&h, 3).unwrap(), 1).unwrap(), h);
    }

    #[test]
    fn spectrum_examples() {
        let g = z(4);
        let uniform = Measure::uniform(&g);
        assert_eq!(
            spectrum(&uniform, 0.01).unwrap(),
            vec![g.trivial_character()]
        );
        let point = Measure::point_mass(&g, 0).unwrap();
        assert_eq!(spectrum(&point, 1.0).unwrap().len(), 4);
        let mu = Measure::normalized_indicator(&g, &[0, 1]).unwrap();
        let spec: Vec<u64> = spectrum(&mu, 0.5)
            .unwrap()
            .into_iter()
            .map(|c| c.coeffs[0])
            .collect();
        assert_eq!(spec, vec![0, 1, 3]);
        assert!(spectrum(&mu, 0.0).is_err());
    }

    #[test]
    fn convolution_power_examples() {
        let g = z(4);
        let mu = Measure::normalized_indicator(&g, &[0, 1]).unwrap();
        assert_eq!(convolution_power(&mu, 1).unwrap(), mu);
        let sq = convolution_power(&mu, 2).unwrap();
        assert_close(sq.values(), &[1.0, 2.0, 1.0, 0.0]);
        let u = convolution_power(&Measure::uniform(&g), 5).unwrap();
        assert_close(u.values(), &[1.0; 4]);
        assert!(convolution_power(&mu, 0).is_err());
    }
}
