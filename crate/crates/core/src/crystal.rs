//! Crystal interface, tensor words and the signature rule.
//!
//! A [`TensorWord`] is printed and stored left to right exactly as the
//! tensor product is written: `u_λ ⊗ p(k) ⊗ ⋯ ⊗ p(1)`. Components are
//! numbered from the right end starting at 1; the optional highest-weight
//! head is component `k + 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::ClassicalWeight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    /// `f̃_i` wants to act on the highest-weight head; the word has to be
    /// truncated deeper.
    #[error("f_{node} acts on the head of the truncated word; deepen the truncation")]
    TruncationExhausted { node: usize },
    #[error("closure exceeded the element cap of {cap}")]
    BudgetExceeded { cap: usize },
}

/// An element of a crystal over affine sl_n.
///
/// Implementors must satisfy `eps(i) = max{k : e_i^k b ≠ 0}`,
/// `phi(i) = max{k : f_i^k b ≠ 0}` and `f_i b = b'` iff `e_i b' = b`.
pub trait CrystalElem: Clone + Eq + Ord + Hash + fmt::Debug {
    fn rank(&self) -> usize;
    fn e(&self, i: usize) -> Option<Self>;
    fn f(&self, i: usize) -> Option<Self>;
    fn eps(&self, i: usize) -> u32;
    fn phi(&self, i: usize) -> u32;

    /// Classical weight `Σ_i (φ_i − ε_i) Λ_i`.
    fn weight(&self) -> ClassicalWeight {
        ClassicalWeight(
            (0..self.rank())
                .map(|i| i64::from(self.phi(i)) - i64::from(self.eps(i)))
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sign {
    pub plus: bool,
    /// 1-based component index counted from the right end.
    pub component: usize,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", if self.plus { '+' } else { '-' }, self.component)
    }
}

/// A sequence of signs, each tagged with the component it came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Sign>);

impl Signature {
    /// Cancel `(+, −)` pairs until the shape is `−^a +^b`.
    ///
    /// Deleting the leftmost adjacent pair repeatedly yields the same
    /// survivors as the usual bracket matching, which runs in one pass.
    pub fn reduce(&self) -> Signature {
        let mut out: Vec<Sign> = Vec::with_capacity(self.0.len());
        for &s in &self.0 {
            if !s.plus && out.last().is_some_and(|t| t.plus) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Signature(out)
    }

    pub fn plus_count(&self) -> usize {
        self.0.iter().filter(|s| s.plus).count()
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|s| !s.plus).count()
    }

    /// Component of the rightmost `−`, where `e_i` acts.
    pub fn e_site(&self) -> Option<usize> {
        self.0.iter().rev().find(|s| !s.plus).map(|s| s.component)
    }

    /// Component of the leftmost `+`, where `f_i` acts.
    pub fn f_site(&self) -> Option<usize> {
        self.0.iter().find(|s| s.plus).map(|s| s.component)
    }

    pub fn signs(&self) -> String {
        self.0.iter().map(|s| if s.plus { '+' } else { '-' }).collect()
    }

    /// Grouped per component, e.g. `(++,--,-+)`.
    pub fn grouped(&self) -> String {
        let mut groups: Vec<(usize, String)> = Vec::new();
        for s in &self.0 {
            let c = if s.plus { '+' } else { '-' };
            match groups.last_mut() {
                Some((comp, g)) if *comp == s.component => g.push(c),
                _ => groups.push((s.component, c.to_string())),
            }
        }
        let parts: Vec<String> = groups.into_iter().map(|(_, g)| g).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Sign::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// `u_λ ⊗ b_k ⊗ ⋯ ⊗ b_1`, with an optional highest-weight head `u_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorWord<E> {
    pub head: Option<ClassicalWeight>,
    pub factors: Vec<E>,
}

impl<E: CrystalElem> TensorWord<E> {
    pub fn new(factors: Vec<E>) -> Self {
        TensorWord { head: None, factors }
    }

    pub fn with_head(head: ClassicalWeight, factors: Vec<E>) -> Self {
        TensorWord { head: Some(head), factors }
    }

    pub fn singleton(b: E) -> Self {
        TensorWord::new(vec![b])
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factor at 1-based component `j` counted from the right.
    pub fn component(&self, j: usize) -> &E {
        &self.factors[self.factors.len() - j]
    }

    /// `self ⊗ rhs`; the right operand must be headless.
    pub fn concat(&self, rhs: &TensorWord<E>) -> TensorWord<E> {
        assert!(rhs.head.is_none(), "right tensor operand carries a head");
        let mut factors = self.factors.clone();
        factors.extend(rhs.factors.iter().cloned());
        TensorWord { head: self.head.clone(), factors }
    }

    pub fn signature(&self, i: usize) -> Signature {
        let k = self.factors.len();
        let mut signs = Vec::new();
        if let Some(h) = &self.head {
            let m = h.pair(i);
            debug_assert!(m >= 0, "head weight must be dominant");
            signs.extend((0..m.max(0)).map(|_| Sign { plus: true, component: k + 1 }));
        }
        for (idx, b) in self.factors.iter().enumerate() {
            let component = k - idx;
            signs.extend((0..b.eps(i)).map(|_| Sign { plus: false, component }));
            signs.extend((0..b.phi(i)).map(|_| Sign { plus: true, component }));
        }
        Signature(signs)
    }

    pub fn reduced_signature(&self, i: usize) -> Signature {
        self.signature(i).reduce()
    }

    fn replaced(&self, component: usize, b: E) -> Self {
        let mut out = self.clone();
        let idx = out.factors.len() - component;
        out.factors[idx] = b;
        out
    }

    /// `ẽ_i` by the signature rule.
    pub fn tensor_e(&self, i: usize) -> Option<Self> {
        let j = self.reduced_signature(i).e_site()?;
        // the head carries no minus signs, so j never points at it
        let b = self
            .component(j)
            .e(i)
            .expect("reduced signature places e_i on a factor with eps_i > 0");
        Some(self.replaced(j, b))
    }

    /// `f̃_i` by the signature rule.
    pub fn tensor_f(&self, i: usize) -> Result<Option<Self>, CrystalError> {
        let Some(j) = self.reduced_signature(i).f_site() else {
            return Ok(None);
        };
        if j > self.factors.len() {
            return Err(CrystalError::TruncationExhausted { node: i });
        }
        let b = self
            .component(j)
            .f(i)
            .expect("reduced signature places f_i on a factor with phi_i > 0");
        Ok(Some(self.replaced(j, b)))
    }

    /// Classical weight of the word including the head.
    pub fn classical_weight(&self) -> ClassicalWeight {
        let mut acc = self.head.clone();
        for b in &self.factors {
            let w = b.weight();
            acc = Some(match acc {
                None => w,
                Some(a) => &a + &w,
            });
        }
        acc.unwrap_or_else(|| ClassicalWeight(Vec::new()))
    }

    pub fn word_rank(&self) -> usize {
        self.head
            .as_ref()
            .map(ClassicalWeight::rank)
            .or_else(|| self.factors.first().map(CrystalElem::rank))
            .unwrap_or(0)
    }
}

/// Headless words are crystal elements in their own right, which is what
/// makes nested groupings such as `(B ⊗ B) ⊗ B` expressible.
///
/// # Panics
///
/// `f` panics on a word that carries a head and would act on it.
impl<E: CrystalElem> CrystalElem for TensorWord<E> {
    fn rank(&self) -> usize {
        self.word_rank()
    }

    fn e(&self, i: usize) -> Option<Self> {
        self.tensor_e(i)
    }

    fn f(&self, i: usize) -> Option<Self> {
        self.tensor_f(i).expect("f_i on a headless tensor word")
    }

    fn eps(&self, i: usize) -> u32 {
        self.reduced_signature(i).minus_count() as u32
    }

    fn phi(&self, i: usize) -> u32 {
        self.reduced_signature(i).plus_count() as u32
    }

    fn weight(&self) -> ClassicalWeight {
        self.classical_weight()
    }
}

impl<E: fmt::Display> fmt::Display for TensorWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::with_capacity(self.factors.len() + 1);
        if let Some(h) = &self.head {
            parts.push(format!("u({h})"));
        }
        parts.extend(self.factors.iter().map(ToString::to_string));
        if parts.is_empty() {
            return f.write_str("()");
        }
        f.write_str(&parts.join(" ⊗ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    E(usize),
    F(usize),
}

impl Op {
    pub fn apply<E: CrystalElem>(self, w: &TensorWord<E>) -> Result<Option<TensorWord<E>>, CrystalError> {
        match self {
            Op::E(i) => Ok(w.tensor_e(i)),
            Op::F(i) => w.tensor_f(i),
        }
    }
}

/// Least superset of `seed` closed under `ops`, breadth first.
pub fn enumerate<E, I>(seed: I, ops: &[Op], cap: usize) -> Result<BTreeSet<TensorWord<E>>, CrystalError>
where
    E: CrystalElem,
    I: IntoIterator<Item = TensorWord<E>>,
{
    let mut seen: BTreeSet<TensorWord<E>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for w in seed {
        if seen.insert(w.clone()) {
            queue.push_back(w);
        }
    }
    if seen.len() > cap {
        return Err(CrystalError::BudgetExceeded { cap });
    }
    while let Some(w) = queue.pop_front() {
        for &op in ops {
            if let Some(next) = op.apply(&w)? {
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    if seen.len() > cap {
                        return Err(CrystalError::BudgetExceeded { cap });
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// `⋃_{m ≥ 0} f̃_i^m S \ {0}`.
pub fn f_string_closure<E: CrystalElem>(
    seed: &BTreeSet<TensorWord<E>>,
    i: usize,
    cap: usize,
) -> Result<BTreeSet<TensorWord<E>>, CrystalError> {
    enumerate(seed.iter().cloned(), &[Op::F(i)], cap)
}

/// Words killed by every `ẽ_i` with `i ≠ 0`, paired with their classical
/// weight.
pub fn classical_highest<'a, E, I>(words: I) -> Vec<(TensorWord<E>, ClassicalWeight)>
where
    E: CrystalElem + 'a,
    I: IntoIterator<Item = &'a TensorWord<E>>,
{
    words
        .into_iter()
        .filter(|w| (1..w.word_rank()).all(|i| w.tensor_e(i).is_none()))
        .map(|w| (w.clone(), w.classical_weight()))
        .collect()
}

/// All headless words of the given length over `alphabet`, leftmost factor
/// varying slowest.
pub fn all_words<E: CrystalElem>(alphabet: &[E], len: usize) -> Vec<TensorWord<E>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<E>| {
                alphabet.iter().map(move |b| {
                    let mut v = prefix.clone();
                    v.push(b.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(TensorWord::new).collect()
}
