//! Slow reference computations used to cross-check the core crate.
//!
//! Nothing here calls into the core's arithmetic: coordinates are decoded by
//! hand, characters use `std` trigonometry, and counts come from plain loops.

use std::collections::BTreeSet;

use num_complex::Complex64;

/// Mixed-radix decoding with the first coordinate most significant.
pub fn coords(moduli: &[u64], mut index: usize) -> Vec<u64> {
    let mut out = vec![0; moduli.len()];
    for j in (0..moduli.len()).rev() {
        let m = moduli[j] as usize;
        out[j] = (index % m) as u64;
        index /= m;
    }
    out
}

pub fn index(moduli: &[u64], coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(moduli)
        .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
}

pub fn order(moduli: &[u64]) -> usize {
    moduli.iter().map(|&m| m as usize).product()
}

fn combine(moduli: &[u64], a: usize, b: usize, f: impl Fn(u64, u64, u64) -> u64) -> usize {
    let (x, y) = (coords(moduli, a), coords(moduli, b));
    let z: Vec<u64> = (0..moduli.len())
        .map(|j| f(x[j], y[j], moduli[j]))
        .collect();
    index(moduli, &z)
}

pub fn add(moduli: &[u64], a: usize, b: usize) -> usize {
    combine(moduli, a, b, |x, y, m| (x + y) % m)
}

pub fn sub(moduli: &[u64], a: usize, b: usize) -> usize {
    combine(moduli, a, b, |x, y, m| (x + m - y) % m)
}

/// `(a + b)/2` in a group of odd order, using `2⁻¹ = (m+1)/2` per factor.
pub fn midpoint(moduli: &[u64], a: usize, b: usize) -> usize {
    combine(moduli, a, b, |x, y, m| ((x + y) % m) * m.div_ceil(2) % m)
}

pub fn scale(moduli: &[u64], k: u64, a: usize) -> usize {
    let x = coords(moduli, a);
    let z: Vec<u64> = x.iter().zip(moduli).map(|(&c, &m)| (c * k) % m).collect();
    index(moduli, &z)
}

/// `γ(x) = exp(2πi Σ_j c_j x_j / m_j)`.
pub fn character(moduli: &[u64], gamma: usize, x: usize) -> Complex64 {
    let (c, v) = (coords(moduli, gamma), coords(moduli, x));
    let turns: f64 = (0..moduli.len())
        .map(|j| ((c[j] * v[j]) % moduli[j]) as f64 / moduli[j] as f64)
        .sum::<f64>()
        .fract();
    let angle = 2.0 * std::f64::consts::PI * turns;
    Complex64::new(angle.cos(), angle.sin())
}

/// `|γ(x) − 1| = 2|sin(π·turns)|`.
pub fn character_distance(moduli: &[u64], gamma: usize, x: usize) -> f64 {
    let (c, v) = (coords(moduli, gamma), coords(moduli, x));
    let turns: f64 = (0..moduli.len())
        .map(|j| ((c[j] * v[j]) % moduli[j]) as f64 / moduli[j] as f64)
        .sum::<f64>()
        .fract();
    2.0 * (std::f64::consts::PI * turns).sin().abs()
}

/// `f̂(γ) = E_x f(x) conj(γ(x))`.
pub fn dft(moduli: &[u64], f: &[Complex64]) -> Vec<Complex64> {
    let n = order(moduli);
    (0..n)
        .map(|g| {
            (0..n)
                .map(|x| f[x] * character(moduli, g, x).conj())
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// `(f∗g)(x) = E_y f(y) g(x−y)`.
pub fn convolve(moduli: &[u64], f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let n = order(moduli);
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| f[y] * g[sub(moduli, x, y)])
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// `(f∘g)(x) = E_y f(y) conj(g(y−x))`.
pub fn diff_convolve(moduli: &[u64], f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let n = order(moduli);
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| f[y] * g[sub(moduli, y, x)].conj())
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// `⟨f, g⟩ = E_x f(x) conj(g(x))`.
pub fn inner(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    f.iter()
        .zip(g)
        .map(|(a, b)| a * b.conj())
        .sum::<Complex64>()
        / f.len() as f64
}

/// `μ_S = 1_S / μ(S)` as a complex table.
pub fn normalized_indicator(n: usize, set: &[usize]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let w = n as f64 / set.len() as f64;
    for &x in set {
        v[x] = Complex64::new(w, 0.0);
    }
    v
}

/// Ordered `k`-tuples of `G^k` with every `(x_i + x_j)/2`, `i ≤ j`, in `A`.
pub fn count_configurations(moduli: &[u64], set: &[usize], k: usize) -> u64 {
    let n = order(moduli);
    let member: Vec<bool> = (0..n).map(|x| set.contains(&x)).collect();
    let mut tuple = vec![0usize; k];
    let mut count = 0u64;
    loop {
        let ok = (0..k).all(|i| (i..k).all(|j| member[midpoint(moduli, tuple[i], tuple[j])]));
        if ok {
            count += 1;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Pairwise distinct `x_1 < … < x_k` from `candidates` passing `ok` on every pair.
fn distinct_clique(candidates: &[i64], k: usize, ok: &dyn Fn(i64, i64) -> bool) -> bool {
    fn go(
        c: &[i64],
        k: usize,
        start: usize,
        chosen: &mut Vec<i64>,
        ok: &dyn Fn(i64, i64) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        for i in start..c.len() {
            if chosen.iter().all(|&x| ok(x, c[i])) {
                chosen.push(c[i]);
                if go(c, k, i + 1, chosen, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(candidates, k, 0, &mut Vec::new(), ok)
}

/// Non-degenerate `k`-configuration among integers of `A`.
pub fn integer_configuration_exists(set: &[i64], k: usize) -> bool {
    let s: BTreeSet<i64> = set.iter().copied().collect();
    let v: Vec<i64> = s.iter().copied().collect();
    distinct_clique(&v, k, &|x, y| {
        (x + y) % 2 == 0 && s.contains(&((x + y) / 2))
    })
}

/// Non-degenerate `k`-configuration in `ℤ/m` (odd `m`) with all midpoints in `A`.
pub fn cyclic_configuration_exists(m: u64, set: &[u64], k: usize) -> bool {
    let s: BTreeSet<u64> = set.iter().map(|&x| x % m).collect();
    let v: Vec<i64> = s.iter().map(|&x| x as i64).collect();
    let half = m.div_ceil(2);
    distinct_clique(&v, k, &|x, y| {
        s.contains(&(((x + y) as u64 % m) * half % m))
    })
}

/// `|E_{x∈X^p, y∈Y^q} ∏ f(x_i, y_j)|^{1/pq}` by full enumeration.
pub fn grid_norm(f: &[Vec<f64>], p: usize, q: usize) -> f64 {
    let (rows, cols) = (f.len(), f[0].len());
    let total_x = rows.pow(p as u32);
    let total_y = cols.pow(q as u32);
    let mut sum = 0.0;
    for xi in 0..total_x {
        let xs: Vec<usize> = (0..p).map(|i| xi / rows.pow(i as u32) % rows).collect();
        for yi in 0..total_y {
            let ys: Vec<usize> = (0..q).map(|j| yi / cols.pow(j as u32) % cols).collect();
            let mut prod = 1.0;
            for &x in &xs {
                for &y in &ys {
                    prod *= f[x][y];
                }
            }
            sum += prod;
        }
    }
    let mean = sum / (total_x * total_y) as f64;
    mean.abs().powf(1.0 / (p * q) as f64)
}

/// `M(A)` over every subset.
pub fn max_sumfree_subset(a: &[i64]) -> usize {
    let host: BTreeSet<i64> = a.iter().copied().collect();
    let mut best = 0;
    for mask in 0u64..1 << a.len() {
        let b: Vec<i64> = (0..a.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a[i])
            .collect();
        let free = (0..b.len()).all(|i| (i + 1..b.len()).all(|j| !host.contains(&(b[i] + b[j]))));
        if free {
            best = best.max(b.len());
        }
    }
    best
}

/// Eq. `a₁+a₂ = a₁′+a₂′ ⇔ φ(a₁)+φ(a₂) ≡ φ(a₁′)+φ(a₂′) (mod N)` over every quadruple.
pub fn is_freiman_2_isomorphism(set: &[i64], images: &[u64], modulus: u64) -> bool {
    let n = set.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = set[a] + set[b] == set[c] + set[d];
                    let rhs =
                        (images[a] + images[b]) % modulus == (images[c] + images[d]) % modulus;
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `|2A − 2A|`.
pub fn double_difference_size(a: &[i64]) -> usize {
    let sums: BTreeSet<i64> = a
        .iter()
        .flat_map(|&x| a.iter().map(move |&y| x + y))
        .collect();
    let diffs: BTreeSet<i64> = sums
        .iter()
        .flat_map(|&s| sums.iter().map(move |&t| s - t))
        .collect();
    diffs.len()
}

/// Any `x < y < z` in arithmetic progression.
pub fn has_three_term_progression(a: &[u64]) -> bool {
    let s: BTreeSet<u64> = a.iter().copied().collect();
    let v: Vec<u64> = s.iter().copied().collect();
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| s.contains(&(2 * v[j] - v[i]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let m = [3, 5];
        assert_eq!(coords(&m, 7), vec![1, 2]);
        assert_eq!(index(&m, &[1, 2]), 7);
        assert_eq!(
            add(&m, index(&m, &[2, 4]), index(&m, &[2, 2])),
            index(&m, &[1, 1])
        );
        let h = midpoint(&[7], 3, 0);
        assert_eq!(add(&[7], h, h), 3);
        assert!((character(&[4], 1, 1) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn small_counts() {
        // every tuple of the full group is a configuration
        assert_eq!(count_configurations(&[5], &[0, 1, 2, 3, 4], 2), 25);
        assert_eq!(count_configurations(&[5], &[0], 3), 1);
        assert!(integer_configuration_exists(&[1, 2, 3], 2));
        assert!(!integer_configuration_exists(&[1, 2], 2));
        assert!(cyclic_configuration_exists(7, &[1, 2, 3], 2));
        assert_eq!(max_sumfree_subset(&[1, 2, 3, 4]), 3);
        assert!(has_three_term_progression(&[1, 4, 7]));
        assert!(!has_three_term_progression(&[1, 2, 4, 5]));
        assert_eq!(double_difference_size(&[0, 1]), 5);
    }
}
