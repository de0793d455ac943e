//! Energy function on `B^l ⊗ B^l`, truncated paths and their affine weights.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::crystal::{CrystalElem, CrystalError, TensorWord};
use crate::lattice::{AffineWeight, ClassicalWeight};
use crate::symtensor::{BoxElem, SymTensor, SymTensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnergyError {
    #[error("energy recursion is inconsistent on the edge {from} -> {to} (color {node}): {have} vs {want}")]
    InconsistentPropagation { from: String, to: String, node: usize, have: i64, want: i64 },
    #[error("B^l ⊗ B^l is not connected: reached {reached} of {total} pairs")]
    Disconnected { reached: usize, total: usize },
}

/// `H : B^l ⊗ B^l → Z`, normalized at `H((l,0,…,0) ⊗ (l,0,…,0)) = anchor_value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyTable {
    pub n: usize,
    pub l: u32,
    pub anchor: (BoxElem, BoxElem),
    pub anchor_value: i64,
    entries: BTreeMap<(BoxElem, BoxElem), i64>,
}

/// Change of `H` along `ẽ_i` applied to `b ⊗ b'` (when defined).
fn e_step(b: &BoxElem, b2: &BoxElem, i: usize) -> i64 {
    match i {
        0 if b.phi(0) >= b2.eps(0) => 1,
        0 => -1,
        _ => 0,
    }
}

impl EnergyTable {
    pub fn build(n: usize, l: u32) -> Result<Self, EnergyError> {
        Self::build_anchored(n, l, 0)
    }

    /// Propagate the defining recursion breadth first from the anchor and
    /// re-check every edge met along the way.
    pub fn build_anchored(n: usize, l: u32, anchor_value: i64) -> Result<Self, EnergyError> {
        let crystal = SymTensor::new(n, l);
        let top = BoxElem::top(n, l);
        let anchor = (top.clone(), top);
        let mut entries = BTreeMap::new();
        entries.insert(anchor.clone(), anchor_value);
        let mut queue = VecDeque::from([anchor.clone()]);

        while let Some((b, b2)) = queue.pop_front() {
            let h = entries[&(b.clone(), b2.clone())];
            let w = TensorWord::new(vec![b.clone(), b2.clone()]);
            for i in 0..n {
                // H(e_i w) = H(w) + step(w)
                let mut moves = Vec::with_capacity(2);
                if let Some(up) = w.tensor_e(i) {
                    moves.push((up, h + e_step(&b, &b2, i)));
                }
                // f_i w = v with e_i v = w, so H(v) = H(w) - step(v)
                if let Some(down) = w.tensor_f(i).expect("headless") {
                    let step = e_step(&down.factors[0], &down.factors[1], i);
                    moves.push((down, h - step));
                }
                for (next, want) in moves {
                    let key = (next.factors[0].clone(), next.factors[1].clone());
                    match entries.get(&key) {
                        Some(&have) if have != want => {
                            return Err(EnergyError::InconsistentPropagation {
                                from: w.to_string(),
                                to: next.to_string(),
                                node: i,
                                have,
                                want,
                            });
                        }
                        Some(_) => {}
                        None => {
                            entries.insert(key.clone(), want);
                            queue.push_back(key);
                        }
                    }
                }
            }
        }

        let total = crystal.cardinality().pow(2);
        if entries.len() != total {
            return Err(EnergyError::Disconnected { reached: entries.len(), total });
        }
        Ok(EnergyTable { n, l, anchor, anchor_value, entries })
    }

    pub fn get(&self, b: &BoxElem, b2: &BoxElem) -> i64 {
        *self
            .entries
            .get(&(b.clone(), b2.clone()))
            .unwrap_or_else(|| panic!("no energy entry for {b} ⊗ {b2}"))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(BoxElem, BoxElem), &i64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_value(&self) -> i64 {
        self.entries.values().copied().min().unwrap_or(0)
    }

    pub fn max_value(&self) -> i64 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Export<'a> {
            n: usize,
            l: u32,
            anchor: [&'a BoxElem; 2],
            entries: Vec<([&'a BoxElem; 2], i64)>,
        }
        let export = Export {
            n: self.n,
            l: self.l,
            anchor: [&self.anchor.0, &self.anchor.1],
            entries: self.entries.iter().map(|((a, b), &h)| ([a, b], h)).collect(),
        };
        serde_json::to_value(export).expect("energy table serializes")
    }
}

/// Path realization of `B(λ)` in `B^l`: ground-state data and truncated
/// paths `u_{λ_k} ⊗ p(k) ⊗ ⋯ ⊗ p(1)`.
#[derive(Clone, Debug)]
pub struct PathModel {
    pub crystal: SymTensor,
    pub lambda: ClassicalWeight,
}

pub type Path = TensorWord<BoxElem>;

impl PathModel {
    pub fn new(n: usize, l: u32, lambda: ClassicalWeight) -> Result<Self, SymTensorError> {
        let crystal = SymTensor::new(n, l);
        // validates rank, dominance and level
        crystal.b_of(&lambda)?;
        Ok(PathModel { crystal, lambda })
    }

    pub fn n(&self) -> usize {
        self.crystal.n
    }

    pub fn l(&self) -> u32 {
        self.crystal.l
    }

    /// `λ_k = σ^k λ`.
    pub fn lambda_k(&self, k: usize) -> ClassicalWeight {
        self.lambda.sigma_pow(k)
    }

    /// `b̄_k`, `k ≥ 1`.
    pub fn ground_elem(&self, k: usize) -> BoxElem {
        self.crystal.ground_elem(k, &self.lambda).expect("validated on construction")
    }

    /// `u_{λ_k} ⊗ b̄_k ⊗ ⋯ ⊗ b̄_1`.
    pub fn ground_path(&self, depth: usize) -> Path {
        let factors = (1..=depth).rev().map(|k| self.ground_elem(k)).collect();
        TensorWord::with_head(self.lambda_k(depth), factors)
    }

    /// `b̄_{j_hi} ⊗ ⋯ ⊗ b̄_{j_lo}` as a headless word.
    pub fn ground_segment(&self, j_hi: usize, j_lo: usize) -> Path {
        TensorWord::new((j_lo..=j_hi).rev().map(|k| self.ground_elem(k)).collect())
    }

    pub fn depth(&self, p: &Path) -> usize {
        p.len()
    }

    /// Add one ground factor on the left: `u_{λ_{k+1}} ⊗ b̄_{k+1} ⊗ p(k) ⊗ ⋯`.
    pub fn deepen(&self, p: &Path) -> Path {
        let k = p.len();
        let mut factors = Vec::with_capacity(k + 1);
        factors.push(self.ground_elem(k + 1));
        factors.extend(p.factors.iter().cloned());
        TensorWord::with_head(self.lambda_k(k + 1), factors)
    }

    pub fn deepen_to(&self, p: &Path, depth: usize) -> Path {
        let mut out = p.clone();
        while out.len() < depth {
            out = self.deepen(&out);
        }
        out
    }

    /// `f̃_i` on a path, deepening the truncation as often as needed.
    pub fn path_f(&self, p: &Path, i: usize) -> Option<Path> {
        let mut cur = p.clone();
        loop {
            match cur.tensor_f(i) {
                Ok(r) => return r,
                Err(CrystalError::TruncationExhausted { .. }) => cur = self.deepen(&cur),
                Err(e) => unreachable!("{e}"),
            }
        }
    }

    /// Classical weight `λ_k + Σ_{i ≤ k} wt p(i)`.
    pub fn wt_word_classical(&self, p: &Path) -> ClassicalWeight {
        let k = p.len();
        p.factors.iter().fold(self.lambda_k(k), |acc, b| &acc + &b.weight())
    }

    /// Affine weight of a truncated path:
    /// `λ + Σ_k (af wt p(k) − af wt b̄_k) − (Σ_k k (H(p(k+1)⊗p(k)) − H(b̄_{k+1}⊗b̄_k))) δ`,
    /// with `p(depth + 1) = b̄_{depth + 1}`.
    pub fn path_weight(&self, p: &Path, energy: &EnergyTable) -> AffineWeight {
        let depth = p.len();
        let mut w = self.lambda.af();
        let mut energy_sum = 0i64;
        for k in 1..=depth {
            let pk = p.component(k);
            let gk = self.ground_elem(k);
            w = &w + &(&pk.weight() - &gk.weight()).af();
            let above = if k == depth { self.ground_elem(k + 1) } else { p.component(k + 1).clone() };
            let g_above = self.ground_elem(k + 1);
            energy_sum += k as i64 * (energy.get(&above, pk) - energy.get(&g_above, &gk));
        }
        w.del -= energy_sum;
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::simple_root;

    fn b(x: &[u32]) -> BoxElem {
        BoxElem::new(x.to_vec())
    }

    #[test]
    fn sl2_level1_table() {
        let e = EnergyTable::build(2, 1).unwrap();
        let (a, bb) = (b(&[1, 0]), b(&[0, 1]));
        assert_eq!(e.get(&a, &a), 0);
        assert_eq!(e.get(&bb, &a), 0);
        assert_eq!(e.get(&bb, &bb), 0);
        assert_eq!(e.get(&a, &bb), -1);
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn tables_are_total_and_satisfy_recursion() {
        for n in 2..=3 {
            for l in 1..=3 {
                let e = EnergyTable::build(n, l).unwrap();
                let elems = SymTensor::new(n, l).elements();
                assert_eq!(e.len(), elems.len().pow(2));
                assert_eq!(e.get(&BoxElem::top(n, l), &BoxElem::top(n, l)), 0);
                for x in &elems {
                    for y in &elems {
                        let w = TensorWord::new(vec![x.clone(), y.clone()]);
                        for i in 0..n {
                            if let Some(up) = w.tensor_e(i) {
                                let want = e.get(x, y) + e_step(x, y, i);
                                assert_eq!(e.get(&up.factors[0], &up.factors[1]), want);
                            }
                            if let Some(down) = w.tensor_f(i).unwrap() {
                                let (u, v) = (&down.factors[0], &down.factors[1]);
                                assert_eq!(e.get(x, y), e.get(u, v) + e_step(u, v, i));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn anchor_shift_is_uniform() {
        let e0 = EnergyTable::build(3, 2).unwrap();
        let e7 = EnergyTable::build_anchored(3, 2, 7).unwrap();
        for ((x, y), h) in e0.entries() {
            assert_eq!(e7.get(x, y), h + 7);
        }
    }

    #[test]
    fn ground_path_level2() {
        let m = PathModel::new(2, 2, ClassicalWeight(vec![2, 0])).unwrap();
        let g = m.ground_path(5);
        assert_eq!(g.head, Some(ClassicalWeight(vec![0, 2])));
        let rows: Vec<String> = g.factors.iter().map(BoxElem::row_string).collect();
        assert_eq!(rows, vec!["11", "00", "11", "00", "11"]);
        let g0 = m.ground_path(0);
        assert_eq!(g0.head, Some(m.lambda.clone()));
        assert!(g0.factors.is_empty());
        for k in 0..=4 {
            assert_eq!(m.ground_path(k).head.unwrap(), m.lambda.sigma_pow(k));
        }
    }

    #[test]
    fn ground_weight_is_lambda() {
        let e = EnergyTable::build(2, 2).unwrap();
        let m = PathModel::new(2, 2, ClassicalWeight(vec![2, 0])).unwrap();
        for depth in 0..6 {
            let g = m.ground_path(depth);
            assert_eq!(m.path_weight(&g, &e), m.lambda.af());
            assert_eq!(m.wt_word_classical(&g), m.lambda);
        }
    }

    #[test]
    fn f0_on_lambda0_level1() {
        // p(1) = f_0 b̄_1 with b̄_1 = (0,1); the pairings of the result are φ − ε of the word
        let e = EnergyTable::build(2, 1).unwrap();
        let m = PathModel::new(2, 1, ClassicalWeight(vec![1, 0])).unwrap();
        let g = m.ground_path(1);
        let p = m.path_f(&g, 0).unwrap();
        assert_eq!(p.factors, vec![b(&[1, 0])]);
        let w = m.path_weight(&p, &e);
        assert_eq!(w, &m.lambda.af() - &simple_root(0, 2));
        for i in 0..2 {
            let deep = m.deepen_to(&p, 4);
            let phi = deep.phi(i) as i64;
            let eps = deep.eps(i) as i64;
            assert_eq!(w.pair(i), phi - eps);
        }
    }

    #[test]
    fn json_export_is_canonical() {
        let e = EnergyTable::build(2, 1).unwrap();
        let j = e.to_json();
        assert_eq!(j["anchor"], serde_json::json!([[1, 0], [1, 0]]));
        assert_eq!(j["entries"][0], serde_json::json!([[[0, 1], [0, 1]], 0]));
        assert_eq!(j["entries"].as_array().unwrap().len(), 4);
    }
}
