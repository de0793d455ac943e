//! Weight lattice of affine sl_n.
//!
//! Weights are stored in the basis `Λ_0, …, Λ_{n-1}, δ`. Simple roots are
//! expanded into this basis on construction, so the pairing with a simple
//! coroot `h_j` is a coordinate read. Node indices are taken modulo `n`
//! everywhere.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Reduce an arbitrary integer node index into `0..n`.
pub fn node(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// A classical weight `Σ m_i Λ_i`, i.e. an affine weight with the `δ`
/// coordinate dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassicalWeight(pub Vec<i64>);

impl ClassicalWeight {
    pub fn zero(n: usize) -> Self {
        ClassicalWeight(vec![0; n])
    }

    /// `Λ_i`.
    pub fn fundamental(i: usize, n: usize) -> Self {
        let mut v = vec![0; n];
        v[i % n] = 1;
        ClassicalWeight(v)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        ClassicalWeight(coeffs.to_vec())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn pair(&self, j: usize) -> i64 {
        self.0[j % self.rank()]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&m| m >= 0)
    }

    /// `Σ m_i Λ_i ↦ Σ m_i Λ_{i-1}`.
    pub fn sigma(&self) -> Self {
        let n = self.rank();
        ClassicalWeight((0..n).map(|j| self.0[(j + 1) % n]).collect())
    }

    pub fn sigma_pow(&self, k: usize) -> Self {
        let n = self.rank();
        ClassicalWeight((0..n).map(|j| self.0[(j + k) % n]).collect())
    }

    /// Zero-`δ` lift.
    pub fn af(&self) -> AffineWeight {
        AffineWeight { n: self.rank(), lam: self.0.clone(), del: 0 }
    }

    /// All dominant weights of level `l` in rank `n`, in lexicographic order.
    pub fn dominant_of_level(n: usize, l: u32) -> Vec<ClassicalWeight> {
        compositions(l, n)
            .into_iter()
            .map(|c| ClassicalWeight(c.into_iter().map(i64::from).collect()))
            .collect()
    }
}

impl Add for &ClassicalWeight {
    type Output = ClassicalWeight;
    fn add(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        debug_assert_eq!(self.rank(), rhs.rank());
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassicalWeight {
    type Output = ClassicalWeight;
    fn sub(self, rhs: &ClassicalWeight) -> ClassicalWeight {
        debug_assert_eq!(self.rank(), rhs.rank());
        ClassicalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for ClassicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lambda_sum(f, &self.0)
    }
}

fn write_lambda_sum(f: &mut fmt::Formatter<'_>, coeffs: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &m) in coeffs.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if !first {
            f.write_str(if m > 0 { " + " } else { " - " })?;
        } else if m < 0 {
            f.write_str("-")?;
        }
        match m.abs() {
            1 => write!(f, "L{i}")?,
            a => write!(f, "{a}L{i}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Compositions of `total` into `parts` nonnegative parts, lexicographically
/// decreasing in the first coordinate.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// A weight `Σ lam[i] Λ_i + del·δ` of affine sl_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub n: usize,
    pub lam: Vec<i64>,
    pub del: i64,
}

impl AffineWeight {
    pub fn zero(n: usize) -> Self {
        AffineWeight { n, lam: vec![0; n], del: 0 }
    }

    pub fn fundamental(i: usize, n: usize) -> Self {
        ClassicalWeight::fundamental(i, n).af()
    }

    pub fn null_root(n: usize) -> Self {
        AffineWeight { n, lam: vec![0; n], del: 1 }
    }

    pub fn level(&self) -> i64 {
        self.lam.iter().sum()
    }

    pub fn cl(&self) -> ClassicalWeight {
        ClassicalWeight(self.lam.clone())
    }

    /// `⟨w, h_j⟩`.
    pub fn pair(&self, j: usize) -> i64 {
        self.lam[j % self.n]
    }

    pub fn scaled(&self, c: i64) -> Self {
        AffineWeight {
            n: self.n,
            lam: self.lam.iter().map(|m| m * c).collect(),
            del: self.del * c,
        }
    }

    /// `σ` on the `Λ` part; the `δ` coordinate is carried along unchanged.
    pub fn sigma(&self) -> Self {
        AffineWeight { n: self.n, lam: self.cl().sigma().0, del: self.del }
    }
}

impl Add for &AffineWeight {
    type Output = AffineWeight;
    fn add(self, rhs: &AffineWeight) -> AffineWeight {
        debug_assert_eq!(self.n, rhs.n);
        AffineWeight {
            n: self.n,
            lam: self.lam.iter().zip(&rhs.lam).map(|(a, b)| a + b).collect(),
            del: self.del + rhs.del,
        }
    }
}

impl Sub for &AffineWeight {
    type Output = AffineWeight;
    fn sub(self, rhs: &AffineWeight) -> AffineWeight {
        self + &(-rhs)
    }
}

impl Neg for &AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        self.scaled(-1)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_lambda_sum(f, &self.lam)?;
        match self.del {
            0 => Ok(()),
            d if d > 0 => write!(f, " + {d}d"),
            d => write!(f, " - {}d", -d),
        }
    }
}

/// `α_i = -Λ_{i-1} + 2Λ_i - Λ_{i+1}`, plus `δ` when `i ≡ 0`.
pub fn simple_root(i: i64, n: usize) -> AffineWeight {
    assert!(n >= 2, "affine sl_n needs n >= 2");
    let i = node(i, n);
    let mut lam = vec![0; n];
    lam[i] += 2;
    lam[(i + n - 1) % n] -= 1;
    lam[(i + 1) % n] -= 1;
    AffineWeight { n, lam, del: i64::from(i == 0) }
}

/// `⟨w, h_j⟩`, node index taken modulo `n`.
pub fn pair(w: &AffineWeight, j: i64) -> i64 {
    w.pair(node(j, w.n))
}

/// `r_i w = w - ⟨w, h_i⟩ α_i`.
pub fn reflect(i: i64, w: &AffineWeight) -> AffineWeight {
    let c = pair(w, i);
    if c == 0 {
        return w.clone();
    }
    w - &simple_root(i, w.n).scaled(c)
}

pub fn sigma_weight(w: &AffineWeight) -> AffineWeight {
    w.sigma()
}

/// A word `r_{i_1} r_{i_2} ⋯ r_{i_m}` in the simple reflections, stored
/// left to right and applied to weights right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    /// `w^{(k)} = r_{k-1} ⋯ r_1 r_0` reduced modulo `n`.
    pub fn staircase(k: usize, n: usize) -> Self {
        WeylWord { letters: (0..k).rev().map(|i| i % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `r_i w`.
    pub fn left_mul(&self, i: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(i);
        letters.extend_from_slice(&self.letters);
        WeylWord { letters }
    }

    pub fn act(&self, w: &AffineWeight) -> AffineWeight {
        self.letters.iter().rev().fold(w.clone(), |acc, &i| reflect(i as i64, &acc))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(|i| format!("r{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}
