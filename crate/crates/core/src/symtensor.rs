//! The level-`l` symmetric tensor crystal `B^l` of affine sl_n.
//!
//! Elements are compositions `(x_0, …, x_{n-1})` of `l`. `ẽ_i` moves one unit
//! from `x_i` to `x_{i-1}` and `f̃_i` moves it back, indices mod `n`, so
//! `ε_i = x_i` and `φ_i = x_{i-1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::crystal::{enumerate, CrystalElem, Op, TensorWord};
use crate::lattice::{compositions, ClassicalWeight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymTensorError {
    #[error("weight {weight} has level {found}, expected {expected}")]
    LevelMismatch { weight: ClassicalWeight, expected: i64, found: i64 },
    #[error("weight {0} is not dominant")]
    NotDominant(ClassicalWeight),
    #[error("rank mismatch: expected n = {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("cannot parse element {0:?}")]
    Parse(String),
}

/// An element of `B^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxElem {
    coords: Vec<u32>,
    level: u32,
}

impl BoxElem {
    pub fn new(coords: Vec<u32>) -> Self {
        assert!(coords.len() >= 2, "affine sl_n needs n >= 2");
        let level = coords.iter().sum();
        BoxElem { coords, level }
    }

    /// Construct and check the level against the crystal it should belong to.
    pub fn in_level(coords: Vec<u32>, l: u32) -> Result<Self, SymTensorError> {
        let b = BoxElem::new(coords);
        if b.level != l {
            return Err(SymTensorError::LevelMismatch {
                weight: b.epsilon(),
                expected: i64::from(l),
                found: i64::from(b.level),
            });
        }
        Ok(b)
    }

    /// `(l, 0, …, 0)`.
    pub fn top(n: usize, l: u32) -> Self {
        let mut x = vec![0; n];
        x[0] = l;
        BoxElem::new(x)
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// `ε(b) = Σ x_i Λ_i`.
    pub fn epsilon(&self) -> ClassicalWeight {
        ClassicalWeight(self.coords.iter().map(|&x| i64::from(x)).collect())
    }

    /// `φ(b) = Σ x_i Λ_{i+1}`.
    pub fn varphi(&self) -> ClassicalWeight {
        let n = self.n();
        ClassicalWeight((0..n).map(|i| i64::from(self.coords[(i + n - 1) % n])).collect())
    }

    /// `(x_0, …, x_{n-1}) ↦ (x_1, …, x_{n-1}, x_0)`.
    pub fn sigma(&self) -> Self {
        let n = self.n();
        BoxElem { coords: (0..n).map(|i| self.coords[(i + 1) % n]).collect(), level: self.level }
    }

    /// Letters written as a weakly increasing row, e.g. `(1,1) ↦ "01"`.
    pub fn row_string(&self) -> String {
        let mut s = String::with_capacity(self.level as usize);
        for (i, &x) in self.coords.iter().enumerate() {
            let c = char::from_digit(i as u32, 36).unwrap_or('?');
            s.extend(std::iter::repeat_n(c, x as usize));
        }
        s
    }

    /// Parse `"1,1"`/`"[1,1]"` coordinate lists, or for `n = 2` the row
    /// form `"00"`, `"01"`, `"11"`.
    pub fn parse(s: &str, n: usize) -> Result<Self, SymTensorError> {
        let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        if n == 2 && !t.is_empty() && t.chars().all(|c| c == '0' || c == '1') && !t.contains(',') {
            let ones = t.chars().filter(|&c| c == '1').count() as u32;
            return Ok(BoxElem::new(vec![t.len() as u32 - ones, ones]));
        }
        let coords: Result<Vec<u32>, _> = t.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let coords = coords.map_err(|_| SymTensorError::Parse(s.to_string()))?;
        if coords.len() != n {
            return Err(SymTensorError::RankMismatch { expected: n, found: coords.len() });
        }
        Ok(BoxElem::new(coords))
    }
}

impl CrystalElem for BoxElem {
    fn rank(&self) -> usize {
        self.coords.len()
    }

    fn e(&self, i: usize) -> Option<Self> {
        let n = self.n();
        let i = i % n;
        if self.coords[i] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.coords[i] -= 1;
        out.coords[(i + n - 1) % n] += 1;
        Some(out)
    }

    fn f(&self, i: usize) -> Option<Self> {
        let n = self.n();
        let i = i % n;
        let src = (i + n - 1) % n;
        if self.coords[src] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.coords[src] -= 1;
        out.coords[i] += 1;
        Some(out)
    }

    fn eps(&self, i: usize) -> u32 {
        self.coords[i % self.n()]
    }

    fn phi(&self, i: usize) -> u32 {
        let n = self.n();
        self.coords[(i % n + n - 1) % n]
    }
}

impl fmt::Display for BoxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for BoxElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoxElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coords = Vec::<u32>::deserialize(d)?;
        if coords.len() < 2 {
            return Err(serde::de::Error::custom("element needs at least two coordinates"));
        }
        Ok(BoxElem::new(coords))
    }
}

/// The crystal `B^l` for affine sl_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymTensor {
    pub n: usize,
    pub l: u32,
}

impl SymTensor {
    pub fn new(n: usize, l: u32) -> Self {
        assert!(n >= 2 && l >= 1, "B^l needs n >= 2 and l >= 1");
        SymTensor { n, l }
    }

    /// All elements, `(l,0,…,0)` first.
    pub fn elements(&self) -> Vec<BoxElem> {
        compositions(self.l, self.n).into_iter().map(BoxElem::new).collect()
    }

    pub fn cardinality(&self) -> usize {
        binomial(self.l as usize + self.n - 1, self.n - 1)
    }

    pub fn contains(&self, b: &BoxElem) -> bool {
        b.n() == self.n && b.level() == self.l
    }

    /// The unique `b(λ)` with `φ(b(λ)) = λ`: `(m_1, …, m_{n-1}, m_0)`.
    pub fn b_of(&self, lambda: &ClassicalWeight) -> Result<BoxElem, SymTensorError> {
        if lambda.rank() != self.n {
            return Err(SymTensorError::RankMismatch { expected: self.n, found: lambda.rank() });
        }
        if !lambda.is_dominant() {
            return Err(SymTensorError::NotDominant(lambda.clone()));
        }
        if lambda.level() != i64::from(self.l) {
            return Err(SymTensorError::LevelMismatch {
                weight: lambda.clone(),
                expected: i64::from(self.l),
                found: lambda.level(),
            });
        }
        let n = self.n;
        Ok(BoxElem::new((0..n).map(|i| lambda.0[(i + 1) % n] as u32).collect()))
    }

    /// `b̄_k = b(σ^{k-1} λ)` for `k ≥ 1`.
    pub fn ground_elem(&self, k: usize, lambda: &ClassicalWeight) -> Result<BoxElem, SymTensorError> {
        assert!(k >= 1, "ground elements are indexed from 1");
        self.b_of(&lambda.sigma_pow(k - 1))
    }

    /// The classical character `Σ_b e^{wt b}` keyed by weight.
    pub fn character(&self) -> BTreeMap<ClassicalWeight, u64> {
        let mut ch = BTreeMap::new();
        for b in self.elements() {
            *ch.entry(b.weight()).or_insert(0) += 1;
        }
        ch
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn all_ops(n: usize) -> Vec<Op> {
    (0..n).flat_map(|i| [Op::E(i), Op::F(i)]).collect()
}

/// Outcome of the operational perfectness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    pub kind: &'static str,
    pub n: usize,
    pub l: u32,
    /// `B^l ⊗ B^l` is connected under all `ẽ_i`, `f̃_i`.
    pub connected: bool,
    /// `min_b ⟨c, ε(b)⟩ = l`.
    pub minimal_level: bool,
    /// `ε` and `φ` biject minimal elements onto level-`l` dominant weights.
    pub bijections: bool,
    pub minimal_elements: usize,
    pub dominant_weights: usize,
}

impl PerfectReport {
    pub fn passed(&self) -> bool {
        self.connected && self.minimal_level && self.bijections
    }
}

/// Operational perfectness: connectedness of `B ⊗ B`, minimal level of `ε`
/// and the `ε`/`φ` bijections used by the path realization.
pub fn perfect_check(n: usize, l: u32) -> PerfectReport {
    let b = SymTensor::new(n, l);
    let elems = b.elements();

    let total = elems.len() * elems.len();
    let seed = TensorWord::new(vec![BoxElem::top(n, l), BoxElem::top(n, l)]);
    let connected = enumerate([seed], &all_ops(n), total)
        .map(|comp| comp.len() == total)
        .unwrap_or(false);

    let min_level = elems.iter().map(|b| b.epsilon().level()).min().unwrap_or(0);
    let minimal: Vec<&BoxElem> = elems.iter().filter(|b| b.epsilon().level() == i64::from(l)).collect();
    let dominant: BTreeSet<ClassicalWeight> = ClassicalWeight::dominant_of_level(n, l).into_iter().collect();
    let eps_img: BTreeSet<ClassicalWeight> = minimal.iter().map(|b| b.epsilon()).collect();
    let phi_img: BTreeSet<ClassicalWeight> = minimal.iter().map(|b| b.varphi()).collect();
    let bijections = eps_img.len() == minimal.len()
        && phi_img.len() == minimal.len()
        && eps_img == dominant
        && phi_img == dominant;

    PerfectReport {
        kind: "operational perfectness",
        n,
        l,
        connected,
        minimal_level: min_level == i64::from(l),
        bijections,
        minimal_elements: minimal.len(),
        dominant_weights: dominant.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_e(b: &BoxElem, i: usize) -> u32 {
        let mut k = 0;
        let mut cur = b.clone();
        while let Some(next) = cur.e(i) {
            cur = next;
            k += 1;
        }
        k
    }

    fn count_f(b: &BoxElem, i: usize) -> u32 {
        let mut k = 0;
        let mut cur = b.clone();
        while let Some(next) = cur.f(i) {
            cur = next;
            k += 1;
        }
        k
    }

    #[test]
    fn sl2_level2_chain() {
        let b = |x: u32, y: u32| BoxElem::new(vec![x, y]);
        assert_eq!(b(2, 0).f(1), Some(b(1, 1)));
        assert_eq!(b(1, 1).f(1), Some(b(0, 2)));
        assert_eq!(b(0, 2).f(1), None);
        assert_eq!(b(0, 2).f(0), Some(b(1, 1)));
        assert_eq!(b(1, 0).e(0), Some(b(0, 1)));
        assert_eq!(BoxElem::new(vec![0, 0, 3]).f(0), Some(BoxElem::new(vec![1, 0, 2])));
    }

    #[test]
    fn eps_phi_formulas() {
        let b = BoxElem::new(vec![1, 1]);
        assert_eq!(b.epsilon(), ClassicalWeight(vec![1, 1]));
        assert_eq!(b.varphi(), ClassicalWeight(vec![1, 1]));
        let t = BoxElem::top(4, 3);
        assert_eq!(t.epsilon(), ClassicalWeight(vec![3, 0, 0, 0]));
        assert_eq!(t.varphi(), ClassicalWeight(vec![0, 3, 0, 0]));
        for n in 2..=3 {
            for l in 1..=3 {
                for b in SymTensor::new(n, l).elements() {
                    for i in 0..n {
                        assert_eq!(b.eps(i), count_e(&b, i));
                        assert_eq!(b.phi(i), count_f(&b, i));
                        assert_eq!(b.epsilon().pair(i), i64::from(b.eps(i)));
                        assert_eq!(b.varphi().pair(i), i64::from(b.phi(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn cardinality_is_multiset_coefficient() {
        for n in 2..=4 {
            for l in 1..=4 {
                let b = SymTensor::new(n, l);
                assert_eq!(b.elements().len(), b.cardinality());
                assert_eq!(b.cardinality(), binomial(l as usize + n - 1, n - 1));
            }
        }
    }

    #[test]
    fn b_of_examples_and_uniqueness() {
        let b2 = SymTensor::new(2, 2);
        assert_eq!(b2.b_of(&ClassicalWeight(vec![2, 0])).unwrap(), BoxElem::new(vec![0, 2]));
        for n in 2..=4 {
            let b = SymTensor::new(n, 3);
            let mut lam = vec![0; n];
            lam[0] = 3;
            let mut expect = vec![0; n];
            expect[n - 1] = 3;
            assert_eq!(b.b_of(&ClassicalWeight(lam)).unwrap(), BoxElem::new(expect));
        }
        for n in 2..=3 {
            for l in 1..=3 {
                let b = SymTensor::new(n, l);
                for lam in ClassicalWeight::dominant_of_level(n, l) {
                    let hits: Vec<BoxElem> = b.elements().into_iter().filter(|x| x.varphi() == lam).collect();
                    assert_eq!(hits.len(), 1);
                    assert_eq!(hits[0], b.b_of(&lam).unwrap());
                }
            }
        }
    }

    #[test]
    fn b_of_errors() {
        let b = SymTensor::new(2, 2);
        assert!(matches!(b.b_of(&ClassicalWeight(vec![1, 0])), Err(SymTensorError::LevelMismatch { .. })));
        assert!(matches!(b.b_of(&ClassicalWeight(vec![3, -1])), Err(SymTensorError::NotDominant(_))));
        assert!(matches!(BoxElem::in_level(vec![1, 2], 2), Err(SymTensorError::LevelMismatch { .. })));
    }

    #[test]
    fn sigma_intertwines() {
        assert_eq!(BoxElem::new(vec![1, 0, 0]).sigma(), BoxElem::new(vec![0, 0, 1]));
        for n in 2..=3 {
            for l in 1..=3 {
                for b in SymTensor::new(n, l).elements() {
                    let mut s = b.clone();
                    for _ in 0..n {
                        s = s.sigma();
                    }
                    assert_eq!(s, b);
                    for i in 0..n {
                        let si = (i + n - 1) % n;
                        assert_eq!(b.sigma().e(si), b.e(i).map(|x| x.sigma()));
                        assert_eq!(b.sigma().f(si), b.f(i).map(|x| x.sigma()));
                    }
                }
            }
        }
    }

    #[test]
    fn ground_elements() {
        let b = SymTensor::new(2, 2);
        let lam = ClassicalWeight(vec![2, 0]);
        for k in 1..=6 {
            let g = b.ground_elem(k, &lam).unwrap();
            let expect = if k % 2 == 1 { vec![0, 2] } else { vec![2, 0] };
            assert_eq!(g.coords(), expect.as_slice());
        }
        // λ = lΛ_0: the l sits at coordinate ≡ -k
        for n in 2..=4 {
            let b = SymTensor::new(n, 2);
            let lam = ClassicalWeight::fundamental(0, n);
            let lam = ClassicalWeight(lam.0.iter().map(|m| 2 * m).collect());
            for k in 1..=2 * n {
                let g = b.ground_elem(k, &lam).unwrap();
                let pos = (n * k - k) % n;
                assert_eq!(g.coords()[pos], 2, "n={n} k={k}");
                // wt b̄_k = λ_{k-1} - λ_k
                assert_eq!(g.weight(), &lam.sigma_pow(k - 1) - &lam.sigma_pow(k));
            }
        }
    }

    #[test]
    fn classical_component_is_everything() {
        for n in 2..=4 {
            for l in 1..=3 {
                let b = SymTensor::new(n, l);
                let ops: Vec<Op> = (1..n).map(Op::F).collect();
                let comp = enumerate([TensorWord::singleton(BoxElem::top(n, l))], &ops, 10_000).unwrap();
                assert_eq!(comp.len(), b.cardinality());
            }
        }
    }

    #[test]
    fn perfectness() {
        for n in 2..=3 {
            for l in 1..=3 {
                let r = perfect_check(n, l);
                assert!(r.passed(), "{r:?}");
            }
        }
        let r = perfect_check(2, 1);
        assert_eq!((r.minimal_elements, r.dominant_weights), (2, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(BoxElem::parse("01", 2).unwrap(), BoxElem::new(vec![1, 1]));
        assert_eq!(BoxElem::parse("11", 2).unwrap(), BoxElem::new(vec![0, 2]));
        assert_eq!(BoxElem::parse("[1,0,2]", 3).unwrap(), BoxElem::new(vec![1, 0, 2]));
        assert!(BoxElem::parse("1,0", 3).is_err());
        assert_eq!(BoxElem::new(vec![1, 1]).row_string(), "01");
    }
}
