//! Finite abelian groups presented as products of cyclic groups.
//!
//! Elements are addressed either by coordinate tuples ([`GroupElement`]) or by
//! their mixed-radix index in `0..order`; the first coordinate is the most
//! significant digit. Characters use the same indexing, so the dual group is
//! enumerated with the identical radix.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{bail, Result};

/// `exp(2πi · numerator / denominator)`.
///
/// Every character value in the crate is produced here, so values agree bit for
/// bit across modules. The phase is reduced to `[0, denominator/2]` and the
/// upper half is obtained by conjugation, which makes `γ(-x) = conj(γ(x))` hold
/// exactly.
pub fn root_of_unity(numerator: u64, denominator: u64) -> Complex64 {
    debug_assert!(denominator > 0);
    let a = numerator % denominator;
    let (a, conj) = if 2 * a > denominator {
        (denominator - a, true)
    } else {
        (a, false)
    };
    let z = if a == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * a == denominator {
        Complex64::new(-1.0, 0.0)
    } else if 4 * a == denominator {
        Complex64::new(0.0, 1.0)
    } else {
        let theta = 2.0 * core::f64::consts::PI * (a as f64) / (denominator as f64);
        let (s, c) = libm::sincos(theta);
        Complex64::new(c, s)
    };
    if conj {
        z.conj()
    } else {
        z
    }
}

struct GroupData {
    moduli: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
    phase_scale: Vec<u64>,
}

/// A product `Z/n_1 × … × Z/n_r`.
///
/// Cloning is cheap; the presentation is shared.
#[derive(Clone)]
pub struct FiniteAbelianGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.moduli == other.data.moduli
    }
}

impl Eq for FiniteAbelianGroup {}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAbelianGroup")
            .field("moduli", &self.data.moduli)
            .finish()
    }
}

/// Coordinates of a group element, each reduced modulo its factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// A character `x ↦ exp(2πi Σ c_j x_j / n_j)`, stored by its coefficients.
///
/// Equality is exact integer comparison of coefficient tuples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub coeffs: Vec<u64>,
}

/// The multiplication-by-`k` endomorphism `ψ_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicationMap {
    pub k: i64,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            bail!(InvalidArgument, "group needs at least one cyclic factor");
        }
        if let Some(m) = moduli.iter().find(|&&m| m == 0) {
            bail!(
                InvalidArgument,
                "cyclic factor order must be positive, got {m}"
            );
        }
        let mut order: usize = 1;
        for &m in moduli {
            order = match usize::try_from(m).ok().and_then(|m| order.checked_mul(m)) {
                Some(o) => o,
                None => bail!(InvalidArgument, "group order overflows"),
            };
        }
        let mut strides = alloc::vec![1usize; moduli.len()];
        for j in (0..moduli.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * moduli[j + 1] as usize;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        let phase_scale = moduli.iter().map(|&m| exponent / m).collect();
        Ok(FiniteAbelianGroup {
            data: Arc::new(GroupData {
                moduli: moduli.to_vec(),
                strides,
                order,
                exponent,
                phase_scale,
            }),
        })
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    #[inline]
    pub fn moduli(&self) -> &[u64] {
        &self.data.moduli
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.data.moduli.len()
    }

    /// Least common multiple of the factor orders.
    #[inline]
    pub fn exponent(&self) -> u64 {
        self.data.exponent
    }

    #[inline]
    pub fn is_odd_order(&self) -> bool {
        self.data.order % 2 == 1
    }

    pub fn require_odd_order(&self) -> Result<()> {
        if !self.is_odd_order() {
            bail!(
                PreconditionViolation,
                "halving requires odd group order, got {}",
                self.order()
            );
        }
        Ok(())
    }

    pub fn same_as(&self, other: &FiniteAbelianGroup) -> Result<()> {
        if self != other {
            bail!(
                GroupMismatch,
                "{:?} vs {:?}",
                self.data.moduli,
                other.data.moduli
            );
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: alloc::vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            bail!(
                GroupMismatch,
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.rank()
            );
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(self.moduli())
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    fn check_element(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank()
            || x.coords.iter().zip(self.moduli()).any(|(&c, &m)| c >= m)
        {
            bail!(
                GroupMismatch,
                "element {:?} does not belong to group {:?}",
                x.coords,
                self.moduli()
            );
        }
        Ok(())
    }

    fn check_character(&self, g: &Character) -> Result<()> {
        if g.coeffs.len() != self.rank()
            || g.coeffs.iter().zip(self.moduli()).any(|(&c, &m)| c >= m)
        {
            bail!(
                GroupMismatch,
                "character {:?} does not belong to the dual of {:?}",
                g.coeffs,
                self.moduli()
            );
        }
        Ok(())
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check_element(x)?;
        Ok(self.index_of_coords(&x.coords))
    }

    #[inline]
    fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.data.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement {
            coords: self.coords_of(index),
        }
    }

    pub fn coords_of(&self, index: usize) -> Vec<u64> {
        debug_assert!(index < self.order());
        self.data
            .strides
            .iter()
            .zip(self.moduli())
            .map(|(&s, &m)| ((index / s) % m as usize) as u64)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.rank() == 1 {
            let n = self.data.order;
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        let mut out = 0;
        for (&s, &m) in self.data.strides.iter().zip(self.moduli()) {
            let m = m as usize;
            let c = (a / s) % m + (b / s) % m;
            out += if c >= m { c - m } else { c } * s;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        if self.rank() == 1 {
            return if a == 0 { 0 } else { self.data.order - a };
        }
        let mut out = 0;
        for (&s, &m) in self.data.strides.iter().zip(self.moduli()) {
            let m = m as usize;
            let c = (a / s) % m;
            out += if c == 0 { 0 } else { m - c } * s;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `k·a` for any integer `k`.
    pub fn scale_idx(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for (&s, &m) in self.data.strides.iter().zip(self.moduli()) {
            let c = ((a / s) % m as usize) as i128;
            let v = (c * k as i128).rem_euclid(m as i128) as usize;
            out += v * s;
        }
        out
    }

    /// The unique `y` with `2y = a`; requires odd order.
    pub fn halve_idx(&self, a: usize) -> Result<usize> {
        self.require_odd_order()?;
        Ok(self.halve_idx_unchecked(a))
    }

    #[inline]
    pub(crate) fn halve_idx_unchecked(&self, a: usize) -> usize {
        if self.rank() == 1 {
            let n = self.data.order;
            return if a.is_multiple_of(2) {
                a / 2
            } else {
                (a + n) / 2
            };
        }
        let mut out = 0;
        for (&s, &m) in self.data.strides.iter().zip(self.moduli()) {
            let m = m as usize;
            let c = (a / s) % m;
            out += if c.is_multiple_of(2) {
                c / 2
            } else {
                (c + m) / 2
            } * s;
        }
        out
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(self.moduli())
                .map(|((&a, &b), &m)| (a + b) % m)
                .collect(),
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(self.moduli())
                .map(|(&a, &m)| (m - a) % m)
                .collect(),
        })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    /// `ψ_k(x) = kx`.
    pub fn psi_apply(&self, k: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(self.moduli())
                .map(|(&a, &m)| (a as i128 * k as i128).rem_euclid(m as i128) as u64)
                .collect(),
        })
    }

    /// `ψ_2^{-1}(x)`, defined on groups of odd order.
    pub fn halve(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        let idx = self.halve_idx(self.index_of_coords(&x.coords))?;
        Ok(self.element_at(idx))
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            coeffs: alloc::vec![0; self.rank()],
        }
    }

    pub fn character(&self, coeffs: &[i64]) -> Result<Character> {
        let e = self.element(coeffs)?;
        Ok(Character { coeffs: e.coords })
    }

    /// Characters share the element radix: index `i` ↔ coefficients of element `i`.
    pub fn character_at(&self, index: usize) -> Character {
        Character {
            coeffs: self.coords_of(index),
        }
    }

    pub fn character_index(&self, g: &Character) -> Result<usize> {
        self.check_character(g)?;
        Ok(self.index_of_coords(&g.coeffs))
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(|i| self.character_at(i))
    }

    /// Phase of `γ(x)` as a numerator over [`Self::exponent`].
    #[inline]
    pub fn phase(&self, coeffs: &[u64], coords: &[u64]) -> u64 {
        let l = self.data.exponent as u128;
        let mut acc: u128 = 0;
        for ((&c, &x), &sc) in coeffs.iter().zip(coords).zip(&self.data.phase_scale) {
            acc = (acc + (c as u128 * x as u128 % l) * sc as u128) % l;
        }
        acc as u64
    }

    /// Phase of character index `g` at element index `x`.
    pub fn phase_idx(&self, g: usize, x: usize) -> u64 {
        if self.rank() == 1 {
            let n = self.data.order as u128;
            return ((g as u128 * x as u128) % n) as u64;
        }
        let l = self.data.exponent as u128;
        let mut acc: u128 = 0;
        for ((&s, &m), &sc) in self
            .data
            .strides
            .iter()
            .zip(self.moduli())
            .zip(&self.data.phase_scale)
        {
            let m = m as usize;
            let c = ((g / s) % m) as u128;
            let xv = ((x / s) % m) as u128;
            acc = (acc + (c * xv % l) * sc as u128) % l;
        }
        acc as u64
    }

    pub fn eval_character(&self, g: &Character, x: &GroupElement) -> Result<Complex64> {
        self.check_character(g)?;
        self.check_element(x)?;
        Ok(root_of_unity(
            self.phase(&g.coeffs, &x.coords),
            self.data.exponent,
        ))
    }

    #[inline]
    pub fn eval_character_idx(&self, g: usize, x: usize) -> Complex64 {
        root_of_unity(self.phase_idx(g, x), self.data.exponent)
    }

    /// The character `x ↦ γ(kx)`, i.e. `γψ_k`.
    pub fn compose_character_with_psi(&self, g: &Character, k: i64) -> Result<Character> {
        self.check_character(g)?;
        Ok(Character {
            coeffs: g
                .coeffs
                .iter()
                .zip(self.moduli())
                .map(|(&c, &m)| (c as i128 * k as i128).rem_euclid(m as i128) as u64)
                .collect(),
        })
    }

    /// `γψ_2^a` for any integer `a`; negative powers need odd order.
    pub fn compose_with_psi2_power(&self, g: &Character, a: i64) -> Result<Character> {
        let mut out = g.clone();
        if a == 0 {
            self.check_character(g)?;
            return Ok(out);
        }
        let step = if a > 0 {
            MultiplicationMap { k: 2 }
        } else {
            MultiplicationMap { k: 2 }.inverse(self)?
        };
        for _ in 0..a.unsigned_abs() {
            out = self.compose_character_with_psi(&out, step.k)?;
        }
        Ok(out)
    }
}

impl MultiplicationMap {
    pub fn new(k: i64) -> Self {
        MultiplicationMap { k }
    }

    pub fn is_invertible(&self, group: &FiniteAbelianGroup) -> bool {
        let n = group.order() as i128;
        (self.k as i128).rem_euclid(n).gcd(&n) == 1
    }

    /// The map `ψ_{k'}` with `k k' ≡ 1` modulo the group exponent.
    pub fn inverse(&self, group: &FiniteAbelianGroup) -> Result<MultiplicationMap> {
        if !self.is_invertible(group) {
            bail!(
                PreconditionViolation,
                "multiplication by {} is not invertible on a group of order {}",
                self.k,
                group.order()
            );
        }
        let e = group.exponent() as i128;
        if e == 1 {
            return Ok(MultiplicationMap { k: 1 });
        }
        let ext = (self.k as i128).rem_euclid(e).extended_gcd(&e);
        Ok(MultiplicationMap {
            k: ext.x.rem_euclid(e) as i64,
        })
    }

    pub fn apply(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> Result<GroupElement> {
        group.psi_apply(self.k, x)
    }
}

impl From<MultiplicationMap> for i64 {
    fn from(m: MultiplicationMap) -> i64 {
        m.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use alloc::vec;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn construction() {
        assert_eq!(FiniteAbelianGroup::new(&[5]).unwrap().order(), 5);
        assert_eq!(FiniteAbelianGroup::new(&[3, 5]).unwrap().order(), 15);
        assert_eq!(FiniteAbelianGroup::new(&[1]).unwrap().order(), 1);
        assert!(matches!(
            FiniteAbelianGroup::new(&[]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            FiniteAbelianGroup::new(&[3, 0]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let x = z5.element(&[3]).unwrap();
        let y = z5.element(&[4]).unwrap();
        assert_eq!(z5.add(&x, &y).unwrap().coords, vec![2]);
        assert_eq!(z5.neg(&z5.zero()).unwrap(), z5.zero());

        let g = FiniteAbelianGroup::new(&[3, 5]).unwrap();
        let a = g.element(&[2, 4]).unwrap();
        let b = g.element(&[2, 2]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().coords, vec![1, 1]);

        let other = GroupElement { coords: vec![1] };
        assert!(matches!(g.add(&a, &other), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn index_ops_match_coordinate_ops() {
        let g = FiniteAbelianGroup::new(&[3, 5, 4]).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let s = g.add(&g.element_at(a), &g.element_at(b)).unwrap();
                assert_eq!(g.index_of(&s).unwrap(), g.add_idx(a, b));
            }
            let n = g.neg(&g.element_at(a)).unwrap();
            assert_eq!(g.index_of(&n).unwrap(), g.neg_idx(a));
            for k in [-3i64, 2, 7] {
                let p = g.psi_apply(k, &g.element_at(a)).unwrap();
                assert_eq!(g.index_of(&p).unwrap(), g.scale_idx(k, a));
            }
        }
    }

    #[test]
    fn character_examples() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let v = z4
            .eval_character(&z4.character(&[1]).unwrap(), &z4.element(&[1]).unwrap())
            .unwrap();
        assert_eq!(v, Complex64::new(0.0, 1.0));

        let z7 = FiniteAbelianGroup::cyclic(7).unwrap();
        let t = z7.trivial_character();
        for x in z7.elements() {
            assert_eq!(z7.eval_character(&t, &x).unwrap(), Complex64::new(1.0, 0.0));
        }
        let v = z7
            .eval_character(&z7.character(&[1]).unwrap(), &z7.element(&[2]).unwrap())
            .unwrap();
        let theta = 4.0 * core::f64::consts::PI / 7.0;
        assert!(close(v, Complex64::new(libm::cos(theta), libm::sin(theta))));
    }

    #[test]
    fn halving_and_psi() {
        let z7 = FiniteAbelianGroup::cyclic(7).unwrap();
        assert_eq!(
            z7.halve(&z7.element(&[3]).unwrap()).unwrap().coords,
            vec![5]
        );
        assert_eq!(z7.halve(&z7.zero()).unwrap(), z7.zero());
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert_eq!(
            z5.psi_apply(2, &z5.element(&[3]).unwrap()).unwrap().coords,
            vec![1]
        );
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        assert!(matches!(
            z4.halve(&z4.zero()),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn composition_examples() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let g = z5.character(&[1]).unwrap();
        assert_eq!(
            z5.compose_character_with_psi(&g, 2).unwrap().coeffs,
            vec![2]
        );
        assert_eq!(z5.compose_character_with_psi(&g, 1).unwrap(), g);
        let z7 = FiniteAbelianGroup::cyclic(7).unwrap();
        let g = z7.character(&[3]).unwrap();
        assert_eq!(
            z7.compose_character_with_psi(&g, 4).unwrap().coeffs,
            vec![5]
        );
        let inv2 = MultiplicationMap::new(2).inverse(&z7).unwrap();
        assert_eq!(inv2.k, 4);
        assert_eq!(z7.compose_with_psi2_power(&g, -1).unwrap().coeffs, vec![5]);
    }

    #[test]
    fn inverse_on_product_group() {
        let g = FiniteAbelianGroup::new(&[9, 5]).unwrap();
        let m = MultiplicationMap::new(7);
        let inv = m.inverse(&g).unwrap();
        for x in g.elements() {
            let y = inv.apply(&g, &m.apply(&g, &x).unwrap()).unwrap();
            assert_eq!(x, y);
        }
        assert!(MultiplicationMap::new(3).inverse(&g).is_err());
    }

    #[test]
    fn root_of_unity_symmetry_is_exact() {
        for n in 1..60u64 {
            for a in 0..n {
                assert_eq!(root_of_unity(n - a, n), root_of_unity(a, n).conj());
            }
        }
    }
}
